//! Parameters and time bounds of the large-time election variants.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetError {
    #[error("variant must be 1, 2, 3 or 4, got {0}")]
    Variant(u8),
    #[error("constant c must be at least 2, got {0}")]
    Constant(u64),
    #[error("parameter for variant {variant} overflows 64 bits")]
    Overflow { variant: u8 },
}

pub fn floor_log2(v: u64) -> u64 {
    assert!(v > 0);
    63 - v.leading_zeros() as u64
}

/// `⌊log log v⌋`, taken as 0 for `v = 1` where the logarithm is undefined.
pub fn floor_log_log(v: u64) -> u64 {
    let l = floor_log2(v);
    if l == 0 {
        0
    } else {
        floor_log2(l)
    }
}

/// `tower(k) = 2^2^...^2` with `k` twos; `tower(0) = 1`. `None` past `u128`.
pub fn tower(k: u64) -> Option<u128> {
    let mut t: u128 = 1;
    for _ in 0..k {
        if t >= 128 {
            return None;
        }
        t = 1u128 << t;
    }
    Some(t)
}

/// Number of base-2 logarithms needed to bring `v` to at most 1.
pub fn log_star(v: u64) -> u64 {
    // v <= tower(k) exactly when k iterations suffice
    (0..).find(|&k| tower(k).is_none_or(|t| v as u128 <= t)).unwrap()
}

/// The integer each variant ships as advice.
pub fn advice_value(variant: u8, phi: u64) -> Result<u64, BudgetError> {
    match variant {
        1 => Ok(phi),
        2 => Ok(floor_log2(phi)),
        3 => Ok(floor_log_log(phi)),
        4 => Ok(log_star(phi)),
        v => Err(BudgetError::Variant(v)),
    }
}

/// The depth `P_i` a node derives from its advice value.
pub fn parameter(variant: u8, value: u64) -> Result<u64, BudgetError> {
    let overflow = BudgetError::Overflow { variant };
    let p: u128 = match variant {
        1 => value as u128,
        2 => {
            let e = value.checked_add(1).filter(|&e| e < 128).ok_or(overflow.clone())?;
            (1u128 << e) - 1
        }
        3 => {
            let e = value.checked_add(1).filter(|&e| e < 7).ok_or(overflow.clone())?;
            (1u128 << (1u32 << e)) - 1
        }
        4 => tower(value.saturating_add(1)).ok_or(overflow.clone())? - 1,
        v => return Err(BudgetError::Variant(v)),
    };
    u64::try_from(p).map_err(|_| overflow)
}

/// Which algorithm a run used, with its time bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    MinTime,
    DPhi,
    Generic(u64),
    Election { i: u8, c: u64 },
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::MinTime => f.write_str("elect"),
            Variant::DPhi => f.write_str("d+phi"),
            Variant::Generic(x) => write!(f, "generic({x})"),
            Variant::Election { i, c } => write!(f, "election{i}(c={c})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TimeBudget {
    pub variant: Variant,
    /// Rounds allowed; `None` when the bound exceeds `u128`.
    pub bound: Option<u128>,
}

impl TimeBudget {
    /// `φ`; `D+φ`; `D+x+1`; and `T_1 = D+φ+c`, `T_2 = D+cφ`, `T_3 = D+φ^c`, `T_4 = D+c^φ`.
    pub fn new(variant: Variant, diameter: u64, phi: u64) -> Result<Self, BudgetError> {
        let (d, p) = (diameter as u128, phi as u128);
        let bound = match variant {
            Variant::MinTime => Some(p),
            Variant::DPhi => Some(d + p),
            Variant::Generic(x) => Some(d + x as u128 + 1),
            Variant::Election { i, c } => {
                if c < 2 {
                    return Err(BudgetError::Constant(c));
                }
                let c = c as u128;
                let pow = |b: u128, e: u128| u32::try_from(e).ok().and_then(|e| b.checked_pow(e));
                match i {
                    1 => Some(d + p + c),
                    2 => Some(d + c * p),
                    3 => pow(p, c).and_then(|v| v.checked_add(d)),
                    4 => pow(c, p).and_then(|v| v.checked_add(d)),
                    v => return Err(BudgetError::Variant(v)),
                }
            }
        };
        Ok(TimeBudget { variant, bound })
    }

    pub fn allows(&self, rounds: usize) -> bool {
        self.bound.is_none_or(|b| rounds as u128 <= b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(variant: u8, phi: u64) -> u64 {
        parameter(variant, advice_value(variant, phi).unwrap()).unwrap()
    }

    #[test]
    fn parameters_at_five() {
        assert_eq!([p(1, 5), p(2, 5), p(3, 5), p(4, 5)], [5, 7, 15, 65535]);
    }

    #[test]
    fn parameters_at_one() {
        assert_eq!(p(2, 1), 1);
        assert_eq!(p(1, 1), 1);
    }

    #[test]
    fn parameters_cover_phi() {
        for phi in 1..=300u64 {
            for v in 1..=3 {
                assert!(p(v, phi) >= phi, "variant {v} phi {phi}");
            }
        }
        for phi in 1..=16u64 {
            assert!(p(4, phi) >= phi);
        }
        assert!(parameter(4, advice_value(4, 17).unwrap()).is_err());
    }

    #[test]
    fn iterated_logs() {
        let ls: Vec<u64> = [1, 2, 3, 4, 5, 16, 17, 65536, 65537].iter().map(|&v| log_star(v)).collect();
        assert_eq!(ls, vec![0, 1, 2, 2, 3, 3, 4, 4, 5]);
        assert_eq!(floor_log_log(1), 0);
        assert_eq!(floor_log_log(3), 0);
        assert_eq!(floor_log_log(4), 1);
        assert_eq!(floor_log_log(16), 2);
        assert_eq!(floor_log_log(15), 1);
    }

    #[test]
    fn bounds() {
        let b = |i, c| TimeBudget::new(Variant::Election { i, c }, 4, 3).unwrap().bound;
        assert_eq!(b(1, 2), Some(9));
        assert_eq!(b(2, 3), Some(13));
        assert_eq!(b(3, 2), Some(13));
        assert_eq!(b(4, 2), Some(12));
        assert!(TimeBudget::new(Variant::Election { i: 1, c: 1 }, 4, 3).is_err());
    }
}
