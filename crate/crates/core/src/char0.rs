//! Characteristic 0: Weyl group exponents and the adjoint Jordan blocks of
//! distinguished nilpotent elements.
//!
//! For a distinguished nilpotent `X` let `n` be the largest `i` with
//! `g(2i) != 0` in the grading attached to `X`. When exactly one adjoint block
//! has size 3, the adjoint partition contains blocks `2 f_i + 1` with
//! `f_i = -e_i mod (n + 1)` in `1..=n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::{validate_classical_partition, ClassicalType};
use crate::error::{Error, Result};
use crate::field::{next_prime, PrimeField};
use crate::law::GeneralizedLaw;
use crate::multilinear::{sym_partition, wedge_partition};
use crate::partition::Partition;
use crate::ring::{cg_tensor, RingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylTypeData {
    pub family: Family,
    pub rank: usize,
    pub exponents: Vec<usize>,
}

impl WeylTypeData {
    pub fn positive_roots(&self) -> usize {
        self.exponents.iter().sum()
    }

    /// `dim g = sum (2 e_i + 1)`.
    pub fn dim(&self) -> usize {
        self.exponents.iter().map(|e| 2 * e + 1).sum()
    }

    /// `|W| = prod (e_i + 1)`.
    pub fn weyl_order(&self) -> u128 {
        self.exponents.iter().map(|&e| e as u128 + 1).product()
    }

    /// Coxeter number `h = e_max + 1`.
    pub fn coxeter_number(&self) -> usize {
        self.exponents.iter().max().map_or(1, |e| e + 1)
    }
}

impl fmt::Display for WeylTypeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A | Family::B | Family::C | Family::D => write!(f, "{:?}{}", self.family, self.rank),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Parses `A3`, `B2`, `D4`, `G2`, `E8`, ...
impl FromStr for WeylTypeData {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownType(s.to_string());
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let rank: usize = tail.parse().map_err(|_| unknown())?;
        let family = match (head.to_ascii_uppercase().as_str(), rank) {
            ("A", _) => Family::A,
            ("B", _) => Family::B,
            ("C", _) => Family::C,
            ("D", _) => Family::D,
            ("E", 6) => Family::E6,
            ("E", 7) => Family::E7,
            ("E", 8) => Family::E8,
            ("F", 4) => Family::F4,
            ("G", 2) => Family::G2,
            _ => return Err(unknown()),
        };
        exponents(family, rank)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Built-in exponents, checked against the number of positive roots and `|W|`.
pub fn exponents(family: Family, rank: usize) -> Result<WeylTypeData> {
    let r = rank;
    let bad = || Error::UnknownType(format!("{family:?}{rank}"));
    let (exps, roots, order): (Vec<usize>, usize, u128) = match family {
        Family::A if r >= 1 => ((1..=r).collect(), r * (r + 1) / 2, factorial(r + 1)),
        Family::B | Family::C if r >= 1 => ((1..=r).map(|i| 2 * i - 1).collect(), r * r, (1u128 << r) * factorial(r)),
        Family::D if r >= 2 => {
            let mut e: Vec<usize> = (1..r).map(|i| 2 * i - 1).collect();
            e.push(r - 1);
            e.sort_unstable();
            (e, r * (r - 1), (1u128 << (r - 1)) * factorial(r))
        }
        Family::G2 if r == 2 => (vec![1, 5], 6, 12),
        Family::F4 if r == 4 => (vec![1, 5, 7, 11], 24, 1152),
        Family::E6 if r == 6 => (vec![1, 4, 5, 7, 8, 11], 36, 51_840),
        Family::E7 if r == 7 => (vec![1, 5, 7, 9, 11, 13, 17], 63, 2_903_040),
        Family::E8 if r == 8 => (vec![1, 7, 11, 13, 17, 19, 23, 29], 120, 696_729_600),
        _ => return Err(bad()),
    };
    let data = WeylTypeData { family, rank, exponents: exps };
    if data.positive_roots() != roots || data.weyl_order() != order {
        return Err(Error::UnknownType(format!("{data}: exponent data fails its identities")));
    }
    Ok(data)
}

/// `dim g(2i)` for `i = 0..=n`, read off an all-odd adjoint partition: a block
/// of size `2k + 1` meets `g(2i)` exactly when `k >= i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingProfile {
    pub n: usize,
    pub dims: Vec<usize>,
}

impl GradingProfile {
    pub fn from_adjoint(ad: &Partition) -> Result<Self> {
        if ad.parts().iter().any(|k| k % 2 == 0) {
            return Err(Error::BlocksNotAllOdd);
        }
        let n = (ad.largest().max(1) - 1) / 2;
        let dims = (0..=n).map(|i| ad.parts().iter().filter(|&&k| k > 2 * i).count()).collect();
        Ok(Self { n, dims })
    }
}

fn exterior_square_char0(n: usize, kind: ClassicalType) -> Result<RingElement> {
    let f = PrimeField::new(next_prime(2 * n as u64))?;
    let add = GeneralizedLaw::additive(&f);
    let lambda = Partition::repeated(n, 1);
    let part = match kind {
        ClassicalType::Sp => sym_partition(&lambda, 2, &add)?,
        _ => wedge_partition(&lambda, 2, &add)?,
    };
    Ok(RingElement::from_partition(&part))
}

/// Adjoint partition over a field of characteristic 0, assembled from
/// Clebsch-Gordan products and the squares of single blocks.
pub fn ad_partition_char0(kind: ClassicalType, lambda: &Partition) -> Result<Partition> {
    if !validate_classical_partition(kind, lambda) {
        return Err(Error::InvalidPartition(format!("{lambda} does not label a nilpotent class of {kind}")));
    }
    let parts = lambda.parts();
    let mut total = RingElement::zero();
    match kind {
        ClassicalType::GL => {
            for &a in parts {
                for &b in parts {
                    total = total.add(&cg_tensor(a, b));
                }
            }
        }
        ClassicalType::Sp | ClassicalType::SO => {
            for (i, &a) in parts.iter().enumerate() {
                total = total.add(&exterior_square_char0(a, kind)?);
                for &b in &parts[i + 1..] {
                    total = total.add(&cg_tensor(a, b));
                }
            }
        }
    }
    Ok(total.to_partition().expect("non-negative"))
}

/// `ad` on `sl(V)`: the `GL` partition with one trivial block removed.
pub fn sl_ad_partition_char0(lambda: &Partition) -> Result<Partition> {
    ad_partition_char0(ClassicalType::GL, lambda)?.difference(&Partition::repeated(1, 1))
}

/// All blocks odd and exactly one of size 3, i.e. `dim g(4) = dim g(2) - 1`.
pub fn springer_condition(ad: &Partition) -> Result<bool> {
    let profile = GradingProfile::from_adjoint(ad)?;
    Ok(profile.dims.len() > 1 && profile.dims[1] == profile.dims.get(2).copied().unwrap_or(0) + 1)
}

/// Blocks `2 f_i + 1` with `f_i = -e_i mod (n + 1)`.
pub fn predict_blocks(exponents: &[usize], n: usize) -> Result<Partition> {
    let modulus = n + 1;
    let mut blocks = Vec::with_capacity(exponents.len());
    for &e in exponents {
        if e % modulus == 0 {
            return Err(Error::ExponentDivisible { exponent: e, modulus });
        }
        let f = modulus - e % modulus;
        blocks.push(2 * f + 1);
    }
    Ok(Partition::from_unsorted(blocks))
}

/// Distinguished classes: one block for `GL`, distinct even parts for `Sp`,
/// distinct odd parts for `SO`.
pub fn is_distinguished(kind: ClassicalType, lambda: &Partition) -> bool {
    let distinct = lambda.parts().windows(2).all(|w| w[0] != w[1]);
    match kind {
        ClassicalType::GL => lambda.len() == 1,
        ClassicalType::Sp => distinct && lambda.parts().iter().all(|k| k % 2 == 0),
        ClassicalType::SO => distinct && lambda.parts().iter().all(|k| k % 2 == 1),
    }
}

/// Weyl type of the simple group of `kind` acting on a space of dimension `d`
/// (`SL_d` for `GL`).
pub fn weyl_type(kind: ClassicalType, d: usize) -> Result<WeylTypeData> {
    match kind {
        ClassicalType::GL => exponents(Family::A, d.saturating_sub(1)),
        ClassicalType::Sp => exponents(Family::C, d / 2),
        ClassicalType::SO if d % 2 == 1 => exponents(Family::B, d / 2),
        ClassicalType::SO => exponents(Family::D, d / 2),
    }
}

/// Regular nilpotent partition on the natural module of a classical type.
pub fn regular_nilpotent(family: Family, rank: usize) -> Result<(ClassicalType, Partition)> {
    let unknown = || Error::UnknownType(format!("{family:?}{rank}"));
    match family {
        Family::A if rank >= 1 => Ok((ClassicalType::GL, Partition::repeated(rank + 1, 1))),
        Family::B if rank >= 2 => Ok((ClassicalType::SO, Partition::repeated(2 * rank + 1, 1))),
        Family::C if rank >= 2 => Ok((ClassicalType::Sp, Partition::repeated(2 * rank, 1))),
        Family::D if rank >= 3 => Ok((ClassicalType::SO, Partition::new(vec![2 * rank - 1, 1])?)),
        _ => Err(unknown()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Char0Report {
    #[serde(rename = "type")]
    pub weyl: String,
    pub lambda: Option<Partition>,
    pub exponents: Vec<usize>,
    pub n: usize,
    pub gate: bool,
    pub predicted: Option<Partition>,
    pub ad: Partition,
    pub contained: Option<bool>,
}

impl Char0Report {
    /// The predicted blocks are present, or the gate does not apply.
    pub fn consistent(&self) -> bool {
        !self.gate || self.contained == Some(true)
    }
}

/// Evaluate the prediction against a known adjoint partition.
pub fn check_prediction(weyl: &WeylTypeData, ad: &Partition) -> Result<Char0Report> {
    let profile = GradingProfile::from_adjoint(ad)?;
    let gate = springer_condition(ad)?;
    let (predicted, contained) = if gate {
        let p = predict_blocks(&weyl.exponents, profile.n)?;
        let c = ad.contains(&p);
        (Some(p), Some(c))
    } else {
        (None, None)
    };
    Ok(Char0Report {
        weyl: weyl.to_string(),
        lambda: None,
        exponents: weyl.exponents.clone(),
        n: profile.n,
        gate,
        predicted,
        ad: ad.clone(),
        contained,
    })
}

/// Run the predictor on a distinguished class of a classical group.
pub fn check_theorem(kind: ClassicalType, lambda: &Partition) -> Result<Char0Report> {
    if !is_distinguished(kind, lambda) {
        return Err(Error::NotDistinguished(lambda.to_string()));
    }
    let ad = match kind {
        ClassicalType::GL => sl_ad_partition_char0(lambda)?,
        _ => ad_partition_char0(kind, lambda)?,
    };
    let weyl = weyl_type(kind, lambda.dim())?;
    let mut report = check_prediction(&weyl, &ad)?;
    report.weyl = match kind {
        ClassicalType::GL => format!("SL{}", lambda.dim()),
        _ => kind.to_string(),
    };
    report.lambda = Some(lambda.clone());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn exponent_tables() {
        assert_eq!(exponents(Family::A, 2).unwrap().exponents, vec![1, 2]);
        assert_eq!(exponents(Family::G2, 2).unwrap().exponents, vec![1, 5]);
        let b2 = exponents(Family::B, 2).unwrap();
        assert_eq!(b2.exponents, vec![1, 3]);
        assert_eq!(b2.positive_roots(), 4);
        assert_eq!(exponents(Family::D, 4).unwrap().exponents, vec![1, 3, 3, 5]);
        for t in ["E6", "E7", "E8", "F4", "G2", "A7", "B5", "C6", "D6"] {
            let w: WeylTypeData = t.parse().unwrap();
            assert_eq!(w.to_string(), t);
        }
        assert!(exponents(Family::E6, 5).is_err());
        assert!("X3".parse::<WeylTypeData>().is_err());
    }

    #[test]
    fn char0_adjoint_partitions() {
        assert_eq!(sl_ad_partition_char0(&part(&[3])).unwrap(), part(&[5, 3]));
        assert_eq!(ad_partition_char0(ClassicalType::GL, &part(&[4])).unwrap(), part(&[7, 5, 3, 1]));
        assert_eq!(ad_partition_char0(ClassicalType::Sp, &part(&[2])).unwrap(), part(&[3]));
        assert_eq!(ad_partition_char0(ClassicalType::SO, &part(&[5, 3])).unwrap().dim(), 28);
        assert_eq!(ad_partition_char0(ClassicalType::SO, &part(&[7])).unwrap(), part(&[11, 7, 3]));
    }

    #[test]
    fn gates_and_predictions() {
        assert!(springer_condition(&part(&[5, 3])).unwrap());
        assert!(!springer_condition(&part(&[5, 3, 3, 3])).unwrap());
        assert!(springer_condition(&part(&[3])).unwrap());
        assert_eq!(springer_condition(&part(&[4, 3])), Err(Error::BlocksNotAllOdd));

        assert_eq!(predict_blocks(&[1, 2], 2).unwrap(), part(&[5, 3]));
        assert_eq!(predict_blocks(&[1, 5], 5).unwrap(), part(&[11, 3]));
        assert_eq!(predict_blocks(&[1], 1).unwrap(), part(&[3]));
        assert_eq!(predict_blocks(&[1, 3], 2), Err(Error::ExponentDivisible { exponent: 3, modulus: 3 }));
    }

    #[test]
    fn theorem_reports() {
        let r = check_theorem(ClassicalType::GL, &part(&[4])).unwrap();
        assert_eq!(r.predicted, Some(r.ad.clone()));
        let r = check_theorem(ClassicalType::Sp, &part(&[2])).unwrap();
        assert_eq!(r.predicted, Some(part(&[3])));
        let r = check_theorem(ClassicalType::Sp, &part(&[6, 2])).unwrap();
        assert!(r.consistent());
        assert_eq!(r.ad.dim(), 36);
        assert!(matches!(check_theorem(ClassicalType::Sp, &part(&[2, 2])), Err(Error::NotDistinguished(_))));
    }

    #[test]
    fn grading_profile() {
        let g = GradingProfile::from_adjoint(&part(&[11, 3])).unwrap();
        assert_eq!(g.n, 5);
        assert_eq!(g.dims, vec![2, 2, 1, 1, 1, 1]);
    }
}
