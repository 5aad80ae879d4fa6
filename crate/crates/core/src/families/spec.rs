//! Flat `key=value` family specs.
//!
//! One pair per line, or several pairs on one line separated by spaces or
//! commas; `#` starts a comment. List entries are separated by `,` or `;`
//! (use `;` when pairs on the same line are comma separated), e.g.
//! `family=necklace,k=4,x=3,phi=2,code=0;0;0;0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::certify::{certify_hairy_ring, certify_necklace, certify_ring_cliques, certify_stretch};
use super::cliques::{clique, gen_ring_cliques};
use super::hairy::{close_with_hub, gamma_stretch, gen_hairy_ring, HairyRingSpec};
use super::necklace::{gen_necklace, NecklaceSpec};
use super::FamilyError;
use crate::graph::PortGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Member `C_t` of `F(x)`.
    Clique { x: usize, t: u64 },
    /// `perm` permutes `2..=k`; empty means the identity.
    RingCliques { k: usize, x: usize, perm: Vec<usize> },
    Necklace(NecklaceSpec),
    HairyRing(HairyRingSpec),
    /// A `gamma`-stretch of a hairy ring cut at ring node `w`, closed by a
    /// hub with `hub` leaves.
    Stretch {
        ring: HairyRingSpec,
        w: usize,
        gamma: usize,
        hub: usize,
    },
}

pub const FAMILIES: &[&str] = &["clique", "ring-cliques", "necklace", "hairy-ring", "stretch"];

struct Pairs(BTreeMap<String, (usize, String)>);

impl Pairs {
    fn get(&self, key: &str) -> Result<&str, FamilyError> {
        self.0
            .get(key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| FamilyError::Param(format!("missing key `{key}`")))
    }

    fn num<T: FromStr>(&self, key: &str) -> Result<T, FamilyError> {
        let (line, v) = self
            .0
            .get(key)
            .ok_or_else(|| FamilyError::Param(format!("missing key `{key}`")))?;
        v.parse().map_err(|_| FamilyError::Spec {
            line: *line,
            msg: format!("`{key}` is not a number: {v:?}"),
        })
    }

    fn num_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, FamilyError> {
        if self.0.contains_key(key) {
            self.num(key)
        } else {
            Ok(default)
        }
    }

    fn list(&self, key: &str) -> Result<Vec<usize>, FamilyError> {
        let (line, v) = self
            .0
            .get(key)
            .ok_or_else(|| FamilyError::Param(format!("missing key `{key}`")))?;
        v.split([',', ';'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse().map_err(|_| FamilyError::Spec {
                    line: *line,
                    msg: format!("`{key}` has a non-numeric entry {s:?}"),
                })
            })
            .collect()
    }
}

fn split_pairs(text: &str) -> Result<Pairs, FamilyError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        // a single line may hold several space separated pairs
        let items: Vec<&str> = if line.matches('=').count() > 1 {
            line.split_whitespace()
                .flat_map(|w| {
                    if w.matches('=').count() > 1 {
                        w.split(',').collect()
                    } else {
                        vec![w]
                    }
                })
                .collect()
        } else {
            vec![line]
        };
        for item in items {
            let (k, v) = item.split_once('=').ok_or_else(|| FamilyError::Spec {
                line: i + 1,
                msg: format!("expected key=value, got {item:?}"),
            })?;
            let k = k.trim().to_string();
            if map.insert(k.clone(), (i + 1, v.trim().to_string())).is_some() {
                return Err(FamilyError::Spec {
                    line: i + 1,
                    msg: format!("duplicate key `{k}`"),
                });
            }
        }
    }
    Ok(Pairs(map))
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl FamilySpec {
    /// Parses a spec; `family` overrides (and must agree with) a `family=` key.
    pub fn parse(family: Option<&str>, text: &str) -> Result<Self, FamilyError> {
        let p = split_pairs(text)?;
        let name = match (family, p.0.get("family")) {
            (Some(f), Some((_, g))) if f != g => {
                return Err(FamilyError::Param(format!(
                    "family {f:?} conflicts with spec family {g:?}"
                )))
            }
            (Some(f), _) => f.to_string(),
            (None, Some(_)) => p.get("family")?.to_string(),
            (None, None) => return Err(FamilyError::Param("missing key `family`".into())),
        };
        let stars = || p.list("stars").map(|stars| HairyRingSpec { stars });
        Ok(match name.as_str() {
            "clique" => FamilySpec::Clique {
                x: p.num("x")?,
                t: p.num_or("t", 1)?,
            },
            "ring-cliques" => FamilySpec::RingCliques {
                k: p.num("k")?,
                x: p.num("x")?,
                perm: if p.0.contains_key("perm") {
                    p.list("perm")?
                } else {
                    Vec::new()
                },
            },
            "necklace" => FamilySpec::Necklace(NecklaceSpec {
                k: p.num("k")?,
                x: p.num("x")?,
                phi: p.num("phi")?,
                code: p.list("code")?,
            }),
            "hairy-ring" => FamilySpec::HairyRing(stars()?),
            "stretch" => {
                let ring = stars()?;
                let max = ring.stars.iter().copied().max().unwrap_or(0);
                FamilySpec::Stretch {
                    w: p.num_or("w", 0)?,
                    gamma: p.num("gamma")?,
                    hub: p.num_or("hub", max + 1)?,
                    ring,
                }
            }
            other => {
                return Err(FamilyError::Param(format!(
                    "unknown family {other:?} (expected one of {})",
                    FAMILIES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Clique { .. } => "clique",
            FamilySpec::RingCliques { .. } => "ring-cliques",
            FamilySpec::Necklace(_) => "necklace",
            FamilySpec::HairyRing(_) => "hairy-ring",
            FamilySpec::Stretch { .. } => "stretch",
        }
    }

    pub fn generate(&self) -> Result<PortGraph, FamilyError> {
        match self {
            FamilySpec::Clique { x, t } => clique(*x, *t),
            FamilySpec::RingCliques { k, x, perm } => {
                let perm = if perm.is_empty() { (2..=*k).collect() } else { perm.clone() };
                Ok(gen_ring_cliques(*k, *x, &perm)?.graph)
            }
            FamilySpec::Necklace(s) => Ok(gen_necklace(s)?.graph),
            FamilySpec::HairyRing(s) => Ok(gen_hairy_ring(s)?.graph),
            FamilySpec::Stretch { ring, w, gamma, hub } => {
                let h = gen_hairy_ring(ring)?;
                let s = gamma_stretch(&h, *w, *gamma)?;
                Ok(close_with_hub(&s.fragment, *hub)?.0)
            }
        }
    }

    /// Generates the graph and checks the property its family is built for.
    pub fn generate_certified(&self) -> Result<PortGraph, FamilyError> {
        match self {
            FamilySpec::Clique { .. } => self.generate(),
            FamilySpec::RingCliques { k, x, perm } => {
                let perm = if perm.is_empty() { (2..=*k).collect() } else { perm.clone() };
                let r = gen_ring_cliques(*k, *x, &perm)?;
                certify_ring_cliques(&r)?;
                Ok(r.graph)
            }
            FamilySpec::Necklace(s) => {
                let n = gen_necklace(s)?;
                certify_necklace(s, &n)?;
                Ok(n.graph)
            }
            FamilySpec::HairyRing(s) => {
                let h = gen_hairy_ring(s)?;
                certify_hairy_ring(&h)?;
                Ok(h.graph)
            }
            FamilySpec::Stretch { ring, w, gamma, hub } => {
                let h = gen_hairy_ring(ring)?;
                let s = gamma_stretch(&h, *w, *gamma)?;
                let (g, hub_node) = close_with_hub(&s.fragment, *hub)?;
                certify_stretch(&h, *w, &s, &g, hub_node)?;
                Ok(g)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family={}", self.name())?;
        match self {
            FamilySpec::Clique { x, t } => write!(f, "x={x}\nt={t}\n"),
            FamilySpec::RingCliques { k, x, perm } => {
                write!(f, "k={k}\nx={x}\n")?;
                if !perm.is_empty() {
                    writeln!(f, "perm={}", join(perm))?;
                }
                Ok(())
            }
            FamilySpec::Necklace(s) => write!(
                f,
                "k={}\nx={}\nphi={}\ncode={}\n",
                s.k,
                s.x,
                s.phi,
                join(&s.code)
            ),
            FamilySpec::HairyRing(s) => writeln!(f, "stars={}", join(&s.stars)),
            FamilySpec::Stretch { ring, w, gamma, hub } => write!(
                f,
                "stars={}\nw={w}\ngamma={gamma}\nhub={hub}\n",
                join(&ring.stars)
            ),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilySpec::parse(None, s)
    }
}
