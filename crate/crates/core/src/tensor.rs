//! Tensor products of nilpotent operators through a law: `F(phi ⊗ 1, 1 ⊗ psi)`.

use crate::error::Result;
use crate::field::Field;
use crate::jordan::{jordan_partition, nilpotency_degree, nilpotent_from_partition};
use crate::law::GeneralizedLaw;
use crate::matrix::Matrix;
use crate::partition::Partition;

/// `sum c_ab phi^a ⊗ psi^b`. Only terms with `a < deg phi` and `b < deg psi`
/// survive, so the law needs precision `deg phi + deg psi - 2`.
pub fn tensor_operator<F: Field>(phi: &Matrix<F>, psi: &Matrix<F>, law: &GeneralizedLaw<F>) -> Result<Matrix<F>> {
    let n1 = nilpotency_degree(phi)?;
    let n2 = nilpotency_degree(psi)?;
    law.ensure_precision((n1 + n2).saturating_sub(2))?;
    let pa = phi.powers_until_zero(n1.max(1))?;
    let pb = psi.powers_until_zero(n2.max(1))?;
    let f = law.field();
    let dim = phi.rows() * psi.rows();
    let mut out = Matrix::zeros(f, dim, dim);
    for (&(a, b), c) in law.terms() {
        if let (Some(x), Some(y)) = (pa.get(a), pb.get(b)) {
            out.add_scaled_assign(c, &x.kron(y));
        }
    }
    Ok(out)
}

/// Jordan partition of `phi_lambda ⊗_F phi_mu`.
pub fn tensor_partition<F: Field>(lambda: &Partition, mu: &Partition, law: &GeneralizedLaw<F>) -> Result<Partition> {
    let f = law.field();
    let op = tensor_operator(&nilpotent_from_partition(f, lambda), &nilpotent_from_partition(f, mu), law)?;
    jordan_partition(&op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::jordan::jordan_block;
    use crate::law::random_generalized_law;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_products() {
        let f2 = PrimeField::new(2).unwrap();
        let add = GeneralizedLaw::additive(&f2);
        assert_eq!(tensor_partition(&part(&[2]), &part(&[2]), &add).unwrap(), part(&[2, 2]));

        let mul = GeneralizedLaw::multiplicative(&f2);
        assert_eq!(tensor_partition(&part(&[4]), &part(&[4]), &mul).unwrap(), part(&[4, 4, 4, 4]));
        assert_eq!(tensor_partition(&part(&[5]), &part(&[5]), &mul).unwrap(), part(&[8, 8, 4, 4, 1]));

        let f7 = PrimeField::new(7).unwrap();
        let add7 = GeneralizedLaw::additive(&f7);
        assert_eq!(tensor_partition(&part(&[3]), &part(&[3]), &add7).unwrap(), part(&[5, 3, 1]));
        assert_eq!(tensor_partition(&part(&[2]), &part(&[2]), &add7).unwrap(), part(&[3, 1]));
    }

    #[test]
    fn unit_class() {
        let q = Rationals;
        let mul = GeneralizedLaw::multiplicative(&q);
        let psi = nilpotent_from_partition(&q, &part(&[3, 1]));
        let op = tensor_operator(&jordan_block(&q, 1), &psi, &mul).unwrap();
        assert_eq!(op, psi);
    }

    #[test]
    fn precision_is_checked() {
        let f5 = PrimeField::new(5).unwrap();
        let law = random_generalized_law(1, 3, &f5);
        let j3 = jordan_block(&f5, 3);
        let j2 = jordan_block(&f5, 2);
        assert!(tensor_operator(&j3, &j2, &law).is_ok());
        let j4 = jordan_block(&f5, 4);
        assert_eq!(
            tensor_operator(&j4, &j3, &law),
            Err(crate::Error::TruncationTooShort { needed: 5, available: 3 })
        );
    }
}
