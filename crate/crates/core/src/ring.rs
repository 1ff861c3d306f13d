//! The representation ring `R_F`: integer combinations of Jordan classes `[J_n]`
//! with product induced by the `F`-tensor of nilpotent operators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::Field;
use crate::law::{FormalGroupLaw, GeneralizedLaw};
use crate::partition::Partition;
use crate::tensor::tensor_partition;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RingJson", into = "RingJson")]
pub struct RingElement(BTreeMap<usize, i64>);

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis class `[J_n]`.
    pub fn class(n: usize) -> Self {
        Self::from_terms([(n, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out = Self::zero();
        for (n, a) in terms {
            out.add_term(n, a);
        }
        out
    }

    pub fn from_partition(lambda: &Partition) -> Self {
        Self::from_terms(lambda.parts().iter().map(|&n| (n, 1)))
    }

    fn add_term(&mut self, n: usize, a: i64) {
        assert!(n >= 1, "block sizes start at 1");
        let slot = self.0.entry(n).or_insert(0);
        *slot += a;
        if *slot == 0 {
            self.0.remove(&n);
        }
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.0.get(&n).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().map(|(&n, &a)| (n, a))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `dim(sum a_n [J_n]) = sum a_n n`.
    pub fn dim(&self) -> i64 {
        self.terms().map(|(n, a)| n as i64 * a).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, a) in other.terms() {
            out.add_term(n, a);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(n, a)| (n, a * k)))
    }

    /// The partition of an honest object, if every multiplicity is non-negative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.terms().any(|(_, a)| a < 0) {
            return None;
        }
        Some(Partition::from_unsorted(self.terms().flat_map(|(n, a)| std::iter::repeat_n(n, a as usize)).collect()))
    }
}

/// `6·J8 + J1`, largest blocks first.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (n, a)) in self.0.iter().rev().enumerate() {
            let sign = if *a < 0 { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            match a.unsigned_abs() {
                1 => write!(f, "J{n}")?,
                k => write!(f, "{k}·J{n}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    terms: Vec<RingTerm>,
}

#[derive(Serialize, Deserialize)]
struct RingTerm {
    n: usize,
    a: i64,
}

impl From<RingJson> for RingElement {
    fn from(j: RingJson) -> Self {
        Self::from_terms(j.terms.into_iter().map(|t| (t.n, t.a)))
    }
}

impl From<RingElement> for RingJson {
    fn from(x: RingElement) -> Self {
        RingJson { terms: x.0.iter().rev().map(|(&n, &a)| RingTerm { n, a }).collect() }
    }
}

/// Class of `J_n ⊗_F J_m` for any law with invertible linear part.
pub fn tensor_class<F: Field>(n: usize, m: usize, law: &GeneralizedLaw<F>) -> Result<RingElement> {
    let lambda = tensor_partition(&Partition::repeated(n, 1), &Partition::repeated(m, 1), law)?;
    Ok(RingElement::from_partition(&lambda))
}

/// Structure constants `[J_n][J_m] = sum_i a^i_{n,m} [J_i]`.
pub fn structure_constants<F: Field>(n: usize, m: usize, law: &FormalGroupLaw<F>) -> Result<RingElement> {
    tensor_class(n, m, law)
}

pub fn ring_multiply<F: Field>(x: &RingElement, y: &RingElement, law: &FormalGroupLaw<F>) -> Result<RingElement> {
    multiply_with(x, y, |n, m| structure_constants(n, m, law))
}

fn multiply_with(x: &RingElement, y: &RingElement, mut constants: impl FnMut(usize, usize) -> Result<RingElement>) -> Result<RingElement> {
    let mut out = RingElement::zero();
    for (n, a) in x.terms() {
        for (m, b) in y.terms() {
            out = out.add(&constants(n, m)?.scale(a * b));
        }
    }
    Ok(out)
}

/// Clebsch-Gordan rule: `[J_n][J_m] = sum_{i < min(n,m)} [J_{n+m-1-2i}]`.
pub fn cg_tensor(n: usize, m: usize) -> RingElement {
    RingElement::from_terms((0..n.min(m)).map(|i| (n + m - 1 - 2 * i, 1)))
}

/// Memo table for structure-constant sweeps, keyed by `(n, m, law fingerprint, p)`.
/// Safe to share across threads; concurrent writers store identical values.
#[derive(Debug, Default)]
pub struct StructureCache {
    table: RwLock<HashMap<(usize, usize, u64, u64), RingElement>>,
}

impl StructureCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tensor_class<F: Field>(&self, n: usize, m: usize, law: &GeneralizedLaw<F>) -> Result<RingElement> {
        let key = (n, m, law.fingerprint(), law.field().characteristic());
        if let Some(hit) = self.table.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let value = tensor_class(n, m, law)?;
        self.table.write().expect("cache lock").insert(key, value.clone());
        Ok(value)
    }

    pub fn structure_constants<F: Field>(&self, n: usize, m: usize, law: &FormalGroupLaw<F>) -> Result<RingElement> {
        self.tensor_class(n, m, law)
    }

    pub fn multiply<F: Field>(&self, x: &RingElement, y: &RingElement, law: &FormalGroupLaw<F>) -> Result<RingElement> {
        multiply_with(x, y, |n, m| self.structure_constants(n, m, law))
    }
}
