//! Partitions: weakly decreasing sequences of Jordan block sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that `parts` is weakly decreasing with positive entries.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `count` copies of `part`.
    pub fn repeated(part: usize, count: usize) -> Self {
        Self::from_unsorted(vec![part; count])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let n = self.largest();
        Self((1..=n).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_unsorted(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Multiset difference `self \ other`.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        let mut counts = self.multiplicities();
        for (part, k) in other.multiplicities() {
            match counts.get_mut(&part) {
                Some(c) if *c >= k => *c -= k,
                _ => {
                    return Err(Error::NotContained { sub: other.to_string(), sup: self.to_string() });
                }
            }
        }
        Ok(Self::from_unsorted(counts.into_iter().flat_map(|(p, c)| std::iter::repeat_n(p, c)).collect()))
    }

    /// Multiset containment `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.difference(other).is_ok()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

/// Exponent notation, e.g. `(8^2,5)` or `(3,2^4,1^3)`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups = Vec::new();
        for (part, count) in self.multiplicities().into_iter().rev() {
            if count == 1 {
                groups.push(part.to_string());
            } else {
                groups.push(format!("{part}^{count}"));
            }
        }
        write!(f, "({})", groups.join(","))
    }
}

/// Accepts `4,4,2`, `[4,4,2]`, `(4^2,2)`; parts may come in any order.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let mut parts = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::Parse(format!("bad partition token {tok:?}"));
            let (part, count) = match tok.split_once('^') {
                Some((p, c)) => (p.trim().parse::<usize>().map_err(|_| bad())?, c.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok.parse::<usize>().map_err(|_| bad())?, 1),
            };
            if part == 0 {
                return Err(Error::InvalidPartition(format!("zero part in {s:?}")));
            }
            parts.extend(std::iter::repeat_n(part, count));
        }
        Ok(Self::from_unsorted(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn union_and_difference() {
        assert_eq!(p(&[3, 1]).union(&p(&[2])), p(&[3, 2, 1]));
        assert_eq!(p(&[5, 3, 3, 3, 3, 3, 1]).difference(&p(&[3, 3, 1])).unwrap(), p(&[5, 3, 3, 3]));
        assert_eq!(p(&[4, 2]).difference(&p(&[4, 2])).unwrap(), Partition::empty());
        assert!(matches!(p(&[4, 2]).difference(&p(&[3])), Err(Error::NotContained { .. })));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn display_and_parse() {
        let x = p(&[3, 2, 2, 2, 2, 1, 1, 1]);
        assert_eq!(x.to_string(), "(3,2^4,1^3)");
        assert_eq!("(3,2^4,1^3)".parse::<Partition>().unwrap(), x);
        assert_eq!("1,3,2".parse::<Partition>().unwrap(), p(&[3, 2, 1]));
        assert_eq!(serde_json::to_string(&p(&[8, 8, 5])).unwrap(), "[8,8,5]");
    }

    #[test]
    fn conjugate_is_involution() {
        let x = p(&[5, 3, 3, 1]);
        assert_eq!(x.conjugate(), p(&[4, 3, 3, 1, 1]));
        assert_eq!(x.conjugate().conjugate(), x);
    }
}
