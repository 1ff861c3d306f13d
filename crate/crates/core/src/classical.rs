//! Adjoint partitions for `GL(V)`, `Sp(V)` and `SO(V)`.
//!
//! The adjoint module is `V ⊗ V^∨`, `Sym^2 V` or `⋀^2 V`. A nilpotent `X` acts
//! through the additive law and a unipotent `u = 1 + X` through the
//! multiplicative one. `V^∨` is realized by the transpose.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::jordan::{apply_series, jordan_partition, nilpotent_from_partition};
use crate::law::GeneralizedLaw;
use crate::matrix::Matrix;
use crate::multilinear::{induced_operator, Power};
use crate::partition::Partition;
use crate::series::TruncatedPoly;
use crate::tensor::tensor_operator;
use crate::with_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassicalType {
    GL,
    Sp,
    SO,
}

impl ClassicalType {
    pub const ALL: [ClassicalType; 3] = [ClassicalType::GL, ClassicalType::Sp, ClassicalType::SO];

    /// Bad primes: 2 for the symplectic and orthogonal groups, none for `GL`.
    pub fn is_good_prime(self, p: u64) -> bool {
        match self {
            ClassicalType::GL => true,
            ClassicalType::Sp | ClassicalType::SO => p != 2,
        }
    }

    /// Dimension of the adjoint module for `dim V = d`.
    pub fn adjoint_dim(self, d: usize) -> usize {
        match self {
            ClassicalType::GL => d * d,
            ClassicalType::Sp => d * (d + 1) / 2,
            ClassicalType::SO => d * d.saturating_sub(1) / 2,
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassicalType::GL => "GL",
            ClassicalType::Sp => "Sp",
            ClassicalType::SO => "SO",
        };
        f.write_str(s)
    }
}

impl FromStr for ClassicalType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(ClassicalType::GL),
            "sp" => Ok(ClassicalType::Sp),
            "so" | "o" => Ok(ClassicalType::SO),
            _ => Err(Error::UnknownType(s.to_string())),
        }
    }
}

/// Partitions carried by nilpotent classes: for `Sp` odd parts occur with even
/// multiplicity, for `SO` even parts do.
pub fn validate_classical_partition(kind: ClassicalType, lambda: &Partition) -> bool {
    let bad_parity = match kind {
        ClassicalType::GL => return true,
        ClassicalType::Sp => 1,
        ClassicalType::SO => 0,
    };
    lambda.multiplicities().into_iter().all(|(part, count)| part % 2 != bad_parity || count % 2 == 0)
}

/// Partition of `ad X` on the adjoint module, `X` nilpotent of type `lambda`.
pub fn nilpotent_adjoint_partition<F: Field>(kind: ClassicalType, lambda: &Partition, field: &F) -> Result<Partition> {
    let x = nilpotent_from_partition(field, lambda);
    let add = GeneralizedLaw::additive(field);
    let op = match kind {
        ClassicalType::GL => tensor_operator(&x, &x.transpose(), &add)?,
        ClassicalType::Sp => induced_operator(&x, 2, &add, Power::Symmetric)?,
        ClassicalType::SO => induced_operator(&x, 2, &add, Power::Exterior)?,
    };
    jordan_partition(&op)
}

/// Partition of `Ad u - 1` for `u = 1 + X`, `X` nilpotent of type `lambda`.
pub fn unipotent_adjoint_partition<F: Field>(kind: ClassicalType, lambda: &Partition, field: &F) -> Result<Partition> {
    let x = nilpotent_from_partition(field, lambda);
    let d = x.rows();
    let op = match kind {
        ClassicalType::GL => {
            let id = Matrix::identity(field, d);
            id.add(&x)?.kron(&id.add(&x.transpose())?).sub(&Matrix::identity(field, d * d))?
        }
        ClassicalType::Sp => induced_operator(&x, 2, &GeneralizedLaw::multiplicative(field), Power::Symmetric)?,
        ClassicalType::SO => induced_operator(&x, 2, &GeneralizedLaw::multiplicative(field), Power::Exterior)?,
    };
    jordan_partition(&op)
}

/// As [`unipotent_adjoint_partition`] with `u = 1 + eps(X)` for a Springer-type
/// series `eps`. For `GL` this is `u ⊗ (u^{-1})^T - 1`; otherwise the
/// multiplicative square of `u - 1` on `Sym^2` or `⋀^2`.
pub fn unipotent_adjoint_partition_via<F: Field>(kind: ClassicalType, lambda: &Partition, eps: &TruncatedPoly<F>) -> Result<Partition> {
    let field = eps.field();
    let x = nilpotent_from_partition(field, lambda);
    let u = springer_image(eps, &x)?;
    let d = x.rows();
    let op = match kind {
        ClassicalType::GL => u.kron(&u.inverse()?.transpose()).sub(&Matrix::identity(field, d * d))?,
        ClassicalType::Sp | ClassicalType::SO => {
            let shifted = u.sub(&Matrix::identity(field, d))?;
            let power = if kind == ClassicalType::Sp { Power::Symmetric } else { Power::Exterior };
            induced_operator(&shifted, 2, &GeneralizedLaw::multiplicative(field), power)?
        }
    };
    jordan_partition(&op)
}

/// Cayley transform `(1 - t)(1 + t)^{-1} - 1 = 2 sum_{i >= 1} (-1)^i t^i` in `k[t]/(t^n)`.
pub fn cayley_series<F: Field>(field: &F, n: usize) -> Result<TruncatedPoly<F>> {
    if field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    let coeffs: Vec<F::Elem> = (0..n)
        .map(|i| match i {
            0 => field.zero(),
            _ if i % 2 == 0 => field.from_i64(2),
            _ => field.from_i64(-2),
        })
        .collect();
    Ok(TruncatedPoly::univariate(field, n.max(1), &coeffs))
}

/// `1 + eps(X)`; a unipotent with the same partition as `X`.
/// Over `k[t]/(t)` (so `X = 0`) there is no linear term to check.
pub fn springer_image<F: Field>(eps: &TruncatedPoly<F>, x: &Matrix<F>) -> Result<Matrix<F>> {
    let f = eps.field();
    if eps.num_vars() != 1 {
        return Err(Error::ShapeMismatch("a Springer series has one variable".into()));
    }
    if !f.is_zero(&eps.constant_term()) {
        return Err(Error::NonzeroConstantTerm);
    }
    if eps.trunc()[0] > 1 && f.is_zero(&eps.coeff1(1)) {
        return Err(Error::NotInvertibleLinearPart);
    }
    Matrix::identity(f, x.rows()).add(&apply_series(eps, x)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    #[serde(rename = "type")]
    pub kind: ClassicalType,
    pub lambda: Partition,
    pub p: u64,
    pub ad: Partition,
    #[serde(rename = "Ad")]
    pub unipotent: Partition,
    pub equal: bool,
    /// Set in bad characteristic, where the `Sym^2` / `⋀^2` model is still
    /// computed but need not be the group's adjoint module.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub bad_characteristic: bool,
}

/// Both adjoint partitions of `lambda` and whether they agree.
pub fn good_char_report(kind: ClassicalType, lambda: &Partition, field: FieldSpec) -> Result<ClassicalReport> {
    if !validate_classical_partition(kind, lambda) {
        return Err(Error::InvalidPartition(format!("{lambda} does not label a nilpotent class of {kind}")));
    }
    let p = field.characteristic();
    let (ad, unipotent) = with_field!(field, |f| (
        nilpotent_adjoint_partition(kind, lambda, &f)?,
        unipotent_adjoint_partition(kind, lambda, &f)?
    ));
    Ok(ClassicalReport {
        kind,
        lambda: lambda.clone(),
        p,
        equal: ad == unipotent,
        ad,
        unipotent,
        bad_characteristic: p != 0 && !kind.is_good_prime(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::jordan::{jordan_block, unipotent_partition};

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parity_rules() {
        assert!(validate_classical_partition(ClassicalType::Sp, &part(&[4])));
        assert!(!validate_classical_partition(ClassicalType::Sp, &part(&[3, 1])));
        assert!(validate_classical_partition(ClassicalType::Sp, &part(&[3, 3, 2])));
        assert!(validate_classical_partition(ClassicalType::SO, &part(&[7])));
        assert!(!validate_classical_partition(ClassicalType::SO, &part(&[4, 1])));
        assert!(validate_classical_partition(ClassicalType::GL, &part(&[4, 1])));
    }

    #[test]
    fn bad_characteristic_cells() {
        let f2 = PrimeField::new(2).unwrap();
        let sp = ClassicalType::Sp;
        assert_eq!(nilpotent_adjoint_partition(sp, &part(&[4]), &f2).unwrap(), part(&[4, 4, 1, 1]));
        assert_eq!(unipotent_adjoint_partition(sp, &part(&[4]), &f2).unwrap(), part(&[4, 4, 2]));
        assert_eq!(nilpotent_adjoint_partition(sp, &part(&[6]), &f2).unwrap(), part(&[8, 8, 2, 1, 1, 1]));
        assert_eq!(unipotent_adjoint_partition(sp, &part(&[6]), &f2).unwrap(), part(&[8, 8, 4, 1]));
        let so = ClassicalType::SO;
        assert_eq!(nilpotent_adjoint_partition(so, &part(&[7]), &f2).unwrap(), part(&[7, 7, 7]));
        assert_eq!(unipotent_adjoint_partition(so, &part(&[7]), &f2).unwrap(), part(&[8, 8, 5]));
    }

    #[test]
    fn gl_in_char_zero() {
        let q = Rationals;
        assert_eq!(nilpotent_adjoint_partition(ClassicalType::GL, &part(&[2]), &q).unwrap(), part(&[3, 1]));
        assert_eq!(unipotent_adjoint_partition(ClassicalType::GL, &part(&[4]), &q).unwrap(), part(&[7, 5, 3, 1]));
    }

    #[test]
    fn cayley() {
        let q = Rationals;
        let c = cayley_series(&q, 4).unwrap();
        let want = TruncatedPoly::univariate(&q, 4, &[q.zero(), q.from_i64(-2), q.from_i64(2), q.from_i64(-2)]);
        assert_eq!(c, want);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(cayley_series(&f3, 4).unwrap(), TruncatedPoly::univariate(&f3, 4, &[0, 1, 2, 1]));
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(cayley_series(&f2, 4), Err(Error::CharTwo));
    }

    #[test]
    fn springer_images() {
        let f5 = PrimeField::new(5).unwrap();
        let j3 = jordan_block(&f5, 3);
        let t = TruncatedPoly::univariate(&f5, 3, &[0, 1]);
        assert_eq!(springer_image(&t, &j3).unwrap(), Matrix::identity(&f5, 3).add(&j3).unwrap());
        let u = springer_image(&cayley_series(&f5, 3).unwrap(), &j3).unwrap();
        assert_eq!(unipotent_partition(&u).unwrap(), part(&[3]));
        let flat = TruncatedPoly::univariate(&f5, 3, &[0, 0, 1]);
        assert_eq!(springer_image(&flat, &j3), Err(Error::NotInvertibleLinearPart));
    }

    #[test]
    fn series_route_matches() {
        let f5 = PrimeField::new(5).unwrap();
        let c = cayley_series(&f5, 8).unwrap();
        for kind in ClassicalType::ALL {
            let lambda = part(&[4, 2]);
            let direct = unipotent_adjoint_partition(kind, &lambda, &f5).unwrap();
            assert_eq!(unipotent_adjoint_partition_via(kind, &lambda, &c).unwrap(), direct, "{kind}");
        }
    }

    #[test]
    fn reports() {
        let r = good_char_report(ClassicalType::Sp, &part(&[4, 2]), FieldSpec::new(5).unwrap()).unwrap();
        assert!(r.equal && !r.bad_characteristic);
        let r = good_char_report(ClassicalType::Sp, &part(&[4]), FieldSpec::new(2).unwrap()).unwrap();
        assert!(!r.equal && r.bad_characteristic);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"type":"Sp","lambda":[4],"p":2,"ad":[4,4,1,1],"Ad":[4,4,2],"equal":false,"bad_characteristic":true}"#
        );
        let r = good_char_report(ClassicalType::GL, &part(&[3, 1]), FieldSpec::new(2).unwrap()).unwrap();
        assert!(r.equal);
        assert!(good_char_report(ClassicalType::Sp, &part(&[3, 1]), FieldSpec::new(5).unwrap()).is_err());
    }
}
