//! Codes for tries, nested lists, the advice envelope, and advice files.

use super::tree::{decode_raw, encode_raw, PortTree, UpLink};
use super::{
    bin_int, concat, decode, decode_exact, decode_labeled_tree, encode_labeled_tree,
    malformed, parse_int, BitString, EncodingError,
};
use crate::oracle::{DepthTries, NestedList, Trie};

// Port at a trie child leading to its parent: leaves have a single port 0,
// internal nodes use 0/1 for their children and 2 for the parent.
const LEAF_UP: usize = 0;
const INNER_UP: usize = 2;

fn trie_to_tree(t: &Trie) -> PortTree<BitString> {
    let mut labels = Vec::new();
    let mut links = Vec::new();
    fn walk(t: &Trie, up: Option<UpLink>, labels: &mut Vec<BitString>, links: &mut Vec<Option<UpLink>>) {
        let me = labels.len();
        links.push(up);
        match t {
            Trie::Leaf => labels.push(bin_int(0)),
            Trie::Node { query, left, right } => {
                labels.push(concat([bin_int(query.0), bin_int(query.1)]));
                for (port, child) in [(0, left), (1, right)] {
                    let child_port = if child.is_leaf() { LEAF_UP } else { INNER_UP };
                    walk(
                        child,
                        Some(UpLink {
                            parent: me,
                            parent_port: port,
                            child_port,
                        }),
                        labels,
                        links,
                    );
                }
            }
        }
    }
    walk(t, None, &mut labels, &mut links);
    PortTree::from_links(0, labels, &links).0
}

fn tree_to_trie(t: &PortTree<BitString>, i: usize) -> Result<Trie, EncodingError> {
    let node = t.node(i);
    if node.children.is_empty() {
        if node.label != bin_int(0) {
            return Err(malformed("trie leaf not labeled (0)"));
        }
        if node.up.is_some_and(|u| u.child_port != LEAF_UP) {
            return Err(malformed("trie leaf with a parent port other than 0"));
        }
        return Ok(Trie::Leaf);
    }
    if node.children.len() != 2 {
        return Err(malformed("trie node without exactly two children"));
    }
    if node.up.is_some_and(|u| u.child_port != INNER_UP) {
        return Err(malformed("internal trie node with a parent port other than 2"));
    }
    let q = decode_exact(&node.label, 2, "trie query")?;
    let query = (parse_int(&q[0])?, parse_int(&q[1])?);
    let (l, r) = (node.children[0], node.children[1]);
    if t.node(l).up.unwrap().parent_port != 0 || t.node(r).up.unwrap().parent_port != 1 {
        return Err(malformed("trie children not on ports 0 and 1"));
    }
    Ok(Trie::node(query, tree_to_trie(t, l)?, tree_to_trie(t, r)?))
}

/// Labeled-tree code of a trie; leaves carry `(0)`, internal nodes `Concat(bin a, bin b)`.
pub fn encode_trie(t: &Trie) -> BitString {
    encode_raw(&trie_to_tree(t))
}

pub fn decode_trie(s: &BitString) -> Result<Trie, EncodingError> {
    tree_to_trie(&decode_raw(s)?, 0)
}

fn decode_pairs(s: &BitString, what: &str) -> Result<Vec<(u64, BitString)>, EncodingError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let parts = decode(s)?;
    if parts.len() % 2 != 0 {
        return Err(malformed(format!("{what}: odd number of parts")));
    }
    parts
        .chunks(2)
        .map(|c| Ok((parse_int(&c[0])?, c[1].clone())))
        .collect()
}

/// `bin(L) = Concat(bin a_1, bin L_1, ...)` with `bin L_i = Concat(bin b_1, bin T_1, ...)`.
pub fn encode_nested_list(l: &NestedList) -> BitString {
    concat(l.0.iter().flat_map(|e| {
        let inner = concat(
            e.tries
                .iter()
                .flat_map(|(b, t)| [bin_int(*b), encode_trie(t)]),
        );
        [bin_int(e.depth), inner]
    }))
}

pub fn decode_nested_list(s: &BitString) -> Result<NestedList, EncodingError> {
    decode_pairs(s, "nested list")?
        .into_iter()
        .map(|(depth, inner)| {
            let tries = decode_pairs(&inner, "inner list")?
                .into_iter()
                .map(|(b, t)| Ok((b, decode_trie(&t)?)))
                .collect::<Result<_, EncodingError>>()?;
            Ok(DepthTries { depth, tries })
        })
        .collect::<Result<_, _>>()
        .map(NestedList)
}

/// The parts of an advice string as a node recovers them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedAdvice {
    pub phi: u64,
    pub e1: Trie,
    pub e2: NestedList,
    pub tree: PortTree<u64>,
}

/// `Concat(bin φ, Concat(bin E1, bin E2), bin T)`.
pub fn encode_advice(phi: u64, e1: &Trie, e2: &NestedList, tree: &PortTree<u64>) -> BitString {
    let a1 = concat([encode_trie(e1), encode_nested_list(e2)]);
    concat([bin_int(phi), a1, encode_labeled_tree(tree)])
}

pub fn decode_advice(s: &BitString) -> Result<DecodedAdvice, EncodingError> {
    let parts = decode_exact(s, 3, "advice")?;
    let phi = parse_int(&parts[0])?;
    let a1 = decode_exact(&parts[1], 2, "advice part A1")?;
    Ok(DecodedAdvice {
        phi,
        e1: decode_trie(&a1[0])?,
        e2: decode_nested_list(&a1[1])?,
        tree: decode_labeled_tree(&parts[2])?,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AdviceFormat {
    #[default]
    Bits,
    Hex,
}

/// `advice-bits <count>` or `advice-hex <count>`, then the payload line.
pub fn write_advice_file(advice: &BitString, format: AdviceFormat) -> String {
    match format {
        AdviceFormat::Bits => format!("advice-bits {}\n{}\n", advice.len(), advice),
        AdviceFormat::Hex => format!("advice-hex {}\n{}\n", advice.len(), advice.to_hex()),
    }
}

pub fn read_advice_file(text: &str) -> Result<BitString, EncodingError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| malformed("empty advice file"))?;
    let payload = lines.next().unwrap_or("").trim();
    let mut fields = header.split_whitespace();
    let kind = fields.next().unwrap_or("");
    let count: usize = fields
        .next()
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| malformed("advice header lacks a bit count"))?;
    let bits = match kind {
        "advice-bits" => payload.parse::<BitString>()?,
        "advice-hex" => BitString::from_hex(payload, count)?,
        other => return Err(malformed(format!("unknown advice header `{other}`"))),
    };
    if bits.len() != count {
        return Err(malformed(format!(
            "header says {count} bits, payload has {}",
            bits.len()
        )));
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_trie() -> Trie {
        Trie::node(
            (0, 3),
            Trie::Leaf,
            Trie::node((1, 12), Trie::Leaf, Trie::Leaf),
        )
    }

    #[test]
    fn single_leaf_trie_is_one_node_labeled_zero() {
        let code = encode_trie(&Trie::Leaf);
        assert_eq!(code, encode_raw(&PortTree::single(bin_int(0))));
        assert_eq!(decode_trie(&code).unwrap(), Trie::Leaf);
    }

    #[test]
    fn trie_roundtrip() {
        let t = Trie::node((0, 3), Trie::Leaf, Trie::Leaf);
        assert_eq!(decode_trie(&encode_trie(&t)).unwrap(), t);
        let t = sample_trie();
        assert_eq!(decode_trie(&encode_trie(&t)).unwrap(), t);
    }

    #[test]
    fn nested_list_roundtrip() {
        let empty = NestedList::default();
        assert!(encode_nested_list(&empty).is_empty());
        assert_eq!(decode_nested_list(&BitString::new()).unwrap(), empty);
        let l = NestedList(vec![
            DepthTries {
                depth: 2,
                tries: vec![(1, Trie::Leaf)],
            },
            DepthTries {
                depth: 3,
                tries: vec![],
            },
            DepthTries {
                depth: 4,
                tries: vec![(2, sample_trie()), (5, Trie::Leaf)],
            },
        ]);
        assert_eq!(decode_nested_list(&encode_nested_list(&l)).unwrap(), l);
    }

    #[test]
    fn envelope_roundtrip() {
        let links = [
            None,
            Some(UpLink {
                parent: 0,
                parent_port: 1,
                child_port: 0,
            }),
        ];
        let tree = PortTree::from_links(0, vec![1u64, 2], &links).0;
        let e2 = NestedList(vec![DepthTries {
            depth: 2,
            tries: vec![(1, sample_trie())],
        }]);
        let adv = encode_advice(2, &sample_trie(), &e2, &tree);
        let d = decode_advice(&adv).unwrap();
        assert_eq!(d.phi, 2);
        assert_eq!(d.e1, sample_trie());
        assert_eq!(d.e2, e2);
        assert_eq!(d.tree, tree);
    }

    #[test]
    fn advice_files() {
        let b: BitString = "1011001".parse().unwrap();
        for f in [AdviceFormat::Bits, AdviceFormat::Hex] {
            assert_eq!(read_advice_file(&write_advice_file(&b, f)).unwrap(), b);
        }
        assert!(read_advice_file("advice-bits 3\n10\n").is_err());
    }
}
