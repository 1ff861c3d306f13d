//! Explicit algebra automorphisms carrying multiplication by `y + z` (or by
//! `Y_1 + ... + Y_m`) to multiplication by a law's series. Their existence is
//! why tensor partitions do not depend on the law.

use serde::{Deserialize, Serialize};

use crate::automorphism::{algebra_map_matrix, multiplication_matrix, permutation_matrix, symmetric_split};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::law::{iterated_tensor_series, FormalGroupLaw, GeneralizedLaw};
use crate::matrix::Matrix;
use crate::series::{elementary_symmetric, TruncatedPoly};

/// Outcome of checking an intertwiner's defining properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwinerCheck {
    pub intertwines: bool,
    pub invertible: bool,
    /// `None` when there is no symmetric-group action to respect.
    pub equivariant: Option<bool>,
}

impl IntertwinerCheck {
    pub fn passed(&self) -> bool {
        self.intertwines && self.invertible && self.equivariant.unwrap_or(true)
    }
}

/// `Lambda` on `k[y,z]/(y^n, z^m)` with `Lambda ∘ mu_{y+z} = mu_{F(y,z)} ∘ Lambda`.
#[derive(Clone, Debug)]
pub struct PairIntertwiner<F: Field> {
    pub images: [TruncatedPoly<F>; 2],
    pub matrix: Matrix<F>,
    pub source: Matrix<F>,
    pub target: Matrix<F>,
}

/// Split `F - xi1 u - xi2 v = H1 u + H2 v` (terms with a `u` go to `H1`) and
/// set `Lambda(y) = y (xi1 + H1(y,z))`, `Lambda(z) = z (xi2 + H2(y,z))`.
pub fn build_intertwiner_pair<F: Field>(n: usize, m: usize, law: &GeneralizedLaw<F>) -> Result<PairIntertwiner<F>> {
    let f = law.field();
    if f.is_zero(&law.xi1()) || f.is_zero(&law.xi2()) {
        return Err(Error::ZeroLinearScalar);
    }
    law.ensure_precision((n + m).saturating_sub(2))?;
    let t = [n, m];
    let mut h1 = TruncatedPoly::zero(f, &t);
    let mut h2 = TruncatedPoly::zero(f, &t);
    for (&(a, b), c) in law.terms() {
        if a + b < 2 {
            continue;
        }
        if a >= 1 {
            h1.add_term(vec![a - 1, b], c.clone());
        } else {
            h2.add_term(vec![a, b - 1], c.clone());
        }
    }
    let y = TruncatedPoly::var(f, &t, 0);
    let z = TruncatedPoly::var(f, &t, 1);
    let f1 = y.mul(&h1.add(&TruncatedPoly::constant(f, &t, law.xi1()))?)?;
    let f2 = z.mul(&h2.add(&TruncatedPoly::constant(f, &t, law.xi2()))?)?;
    let matrix = algebra_map_matrix(&[f1.clone(), f2.clone()])?;
    let source = multiplication_matrix(&y.add(&z)?)?;
    let target = multiplication_matrix(&law.evaluate(&y, &z)?)?;
    Ok(PairIntertwiner { images: [f1, f2], matrix, source, target })
}

impl<F: Field> PairIntertwiner<F> {
    pub fn verify(&self) -> Result<IntertwinerCheck> {
        let left = self.matrix.mul(&self.source)?;
        let right = self.target.mul(&self.matrix)?;
        Ok(IntertwinerCheck {
            intertwines: left == right,
            invertible: self.matrix.rank() == self.matrix.rows(),
            equivariant: None,
        })
    }
}

/// `Lambda` on `k[Y_1..Y_m]/(Y_i^n)` with `Lambda(Y_i) = f_i`, where the `f_i`
/// are the symmetric split of `⊗^m_F`.
#[derive(Clone, Debug)]
pub struct SymmetricIntertwiner<F: Field> {
    pub images: Vec<TruncatedPoly<F>>,
    pub matrix: Matrix<F>,
    pub source: Matrix<F>,
    pub target: Matrix<F>,
    pub generators: Vec<Matrix<F>>,
}

pub fn build_symmetric_intertwiner<F: Field>(n: usize, m: usize, law: &FormalGroupLaw<F>) -> Result<SymmetricIntertwiner<F>> {
    let f = law.field();
    let t = vec![n; m];
    let series = iterated_tensor_series(law, m, &t)?;
    let images = symmetric_split(&series)?;
    let matrix = algebra_map_matrix(&images)?;
    let source = multiplication_matrix(&elementary_symmetric(f, &t, 1))?;
    let target = multiplication_matrix(&series)?;
    let generators = (0..m.saturating_sub(1))
        .map(|k| {
            let mut sigma: Vec<usize> = (0..m).collect();
            sigma.swap(k, k + 1);
            permutation_matrix(f, &t, &sigma)
        })
        .collect();
    Ok(SymmetricIntertwiner { images, matrix, source, target, generators })
}

impl<F: Field> SymmetricIntertwiner<F> {
    pub fn verify(&self) -> Result<IntertwinerCheck> {
        let intertwines = self.matrix.mul(&self.source)? == self.target.mul(&self.matrix)?;
        let mut equivariant = true;
        for g in &self.generators {
            equivariant &= self.matrix.mul(g)? == g.mul(&self.matrix)?;
        }
        Ok(IntertwinerCheck {
            intertwines,
            invertible: self.matrix.rank() == self.matrix.rows(),
            equivariant: Some(equivariant),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::law::{random_formal_group_law, random_generalized_law};

    #[test]
    fn additive_gives_identity() {
        let f3 = PrimeField::new(3).unwrap();
        let pair = build_intertwiner_pair(3, 2, &GeneralizedLaw::additive(&f3)).unwrap();
        assert!(pair.matrix.is_identity());
        assert!(pair.verify().unwrap().passed());
        let sym = build_symmetric_intertwiner(3, 2, &FormalGroupLaw::additive(&Rationals)).unwrap();
        assert!(sym.matrix.is_identity());
    }

    #[test]
    fn multiplicative_pair() {
        let f3 = PrimeField::new(3).unwrap();
        let pair = build_intertwiner_pair(2, 2, &GeneralizedLaw::multiplicative(&f3)).unwrap();
        assert_eq!(pair.matrix.rows(), 4);
        let y = TruncatedPoly::var(&f3, &[2, 2], 0);
        let yz = TruncatedPoly::monomial(&f3, &[2, 2], vec![1, 1], 1);
        assert_eq!(pair.images[0], y.add(&yz).unwrap());
        assert!(pair.verify().unwrap().passed());
    }

    #[test]
    fn random_pair() {
        let f5 = PrimeField::new(5).unwrap();
        let law = random_generalized_law(11, 6, &f5);
        let check = build_intertwiner_pair(4, 4, &law).unwrap().verify().unwrap();
        assert!(check.intertwines && check.invertible);
        assert_eq!(check.equivariant, None);
    }

    #[test]
    fn symmetric_cases() {
        let q = Rationals;
        let s = build_symmetric_intertwiner(3, 2, &FormalGroupLaw::multiplicative(&q)).unwrap();
        assert!(s.verify().unwrap().passed());
        let f5 = PrimeField::new(5).unwrap();
        let s = build_symmetric_intertwiner(3, 3, &FormalGroupLaw::multiplicative(&f5)).unwrap();
        assert!(s.verify().unwrap().passed());
        let law = random_formal_group_law(2, 6, &f5);
        assert!(build_symmetric_intertwiner(3, 3, &law).unwrap().verify().unwrap().passed());
    }

    #[test]
    fn symmetric_needs_invertible_factorial() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(matches!(
            build_symmetric_intertwiner(2, 2, &FormalGroupLaw::multiplicative(&f2)),
            Err(Error::FactorialNotInvertible { .. })
        ));
    }
}
