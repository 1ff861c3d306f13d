//! Linear maps on truncated algebras `A_r = k[Y]/(Y_i^{r_i})`, the algebra
//! automorphisms `Y_i -> Y_i (xi_i + f_i)`, and the symmetric split of a
//! symmetric series into per-variable pieces.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::series::{elementary_symmetric, subsets, TruncatedPoly};

/// Monomials of `A_r` in mixed-radix order, last variable fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    trunc: Vec<usize>,
}

impl MonomialBasis {
    pub fn new(trunc: &[usize]) -> Self {
        Self { trunc: trunc.to_vec() }
    }

    pub fn trunc(&self) -> &[usize] {
        &self.trunc
    }

    pub fn len(&self) -> usize {
        self.trunc.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, exp: &[usize]) -> usize {
        exp.iter().zip(&self.trunc).fold(0, |acc, (a, r)| acc * r + a)
    }

    pub fn exponent(&self, mut idx: usize) -> Vec<usize> {
        let mut e = vec![0; self.trunc.len()];
        for i in (0..self.trunc.len()).rev() {
            e[i] = idx % self.trunc[i];
            idx /= self.trunc[i];
        }
        e
    }

    pub fn coordinates<F: Field>(&self, g: &TruncatedPoly<F>) -> Vec<F::Elem> {
        let mut v = vec![g.field().zero(); self.len()];
        for (e, c) in g.terms() {
            v[self.index(e)] = c.clone();
        }
        v
    }

    pub fn element<F: Field>(&self, field: &F, v: &[F::Elem]) -> TruncatedPoly<F> {
        TruncatedPoly::from_terms(field, &self.trunc, v.iter().enumerate().map(|(i, c)| (self.exponent(i), c.clone())))
    }
}

/// Matrix of the algebra endomorphism `Y_i -> images[i]`.
pub fn algebra_map_matrix<F: Field>(images: &[TruncatedPoly<F>]) -> Result<Matrix<F>> {
    let first = images.first().ok_or_else(|| Error::ShapeMismatch("no images".into()))?;
    let field = first.field();
    let basis = MonomialBasis::new(first.trunc());
    if images.len() != basis.trunc().len() {
        return Err(Error::ShapeMismatch(format!("{} images for {} variables", images.len(), basis.trunc().len())));
    }
    let mut cols = Vec::with_capacity(basis.len());
    for idx in 0..basis.len() {
        let mono = TruncatedPoly::monomial(field, basis.trunc(), basis.exponent(idx), field.one());
        cols.push(basis.coordinates(&mono.substitute(images)?));
    }
    Ok(Matrix::from_columns(field, basis.len(), &cols))
}

/// Matrix of multiplication by `g`.
pub fn multiplication_matrix<F: Field>(g: &TruncatedPoly<F>) -> Result<Matrix<F>> {
    let field = g.field();
    let basis = MonomialBasis::new(g.trunc());
    let mut cols = Vec::with_capacity(basis.len());
    for idx in 0..basis.len() {
        let mono = TruncatedPoly::monomial(field, basis.trunc(), basis.exponent(idx), field.one());
        cols.push(basis.coordinates(&g.mul(&mono)?));
    }
    Ok(Matrix::from_columns(field, basis.len(), &cols))
}

/// Matrix of `g -> g.act(sigma)`; requires equal truncations.
pub fn permutation_matrix<F: Field>(field: &F, trunc: &[usize], sigma: &[usize]) -> Matrix<F> {
    let basis = MonomialBasis::new(trunc);
    let mut m = Matrix::zeros(field, basis.len(), basis.len());
    for idx in 0..basis.len() {
        let e = basis.exponent(idx);
        let image: Vec<usize> = (0..e.len()).map(|j| e[sigma[j]]).collect();
        m.set(basis.index(&image), idx, field.one());
    }
    m
}

/// The automorphism `Y_i -> Y_i (xi_i + f_i)` as a matrix on the monomial basis.
pub fn build_automorphism<F: Field>(xi: &[F::Elem], f: &[TruncatedPoly<F>]) -> Result<Matrix<F>> {
    let images = automorphism_images(xi, f)?;
    algebra_map_matrix(&images)
}

pub fn automorphism_images<F: Field>(xi: &[F::Elem], f: &[TruncatedPoly<F>]) -> Result<Vec<TruncatedPoly<F>>> {
    if xi.len() != f.len() || f.is_empty() {
        return Err(Error::ShapeMismatch(format!("{} scalars for {} series", xi.len(), f.len())));
    }
    let field = f[0].field();
    let trunc = f[0].trunc();
    let mut images = Vec::with_capacity(f.len());
    for (i, (x, fi)) in xi.iter().zip(f).enumerate() {
        if field.is_zero(x) {
            return Err(Error::ZeroLinearScalar);
        }
        if !field.is_zero(&fi.constant_term()) {
            return Err(Error::NonzeroConstantTerm);
        }
        let factor = fi.add(&TruncatedPoly::constant(field, trunc, x.clone()))?;
        images.push(TruncatedPoly::var(field, trunc, i).mul(&factor)?);
    }
    Ok(images)
}

/// `H_i = (1/j) sum_{|I| = j, i in I} Y_I`, so that `sum H_i = s_j`.
pub fn elementary_symmetric_split<F: Field>(field: &F, j: usize, trunc: &[usize]) -> Result<Vec<TruncatedPoly<F>>> {
    let m = trunc.len();
    if j == 0 || j > m {
        return Err(Error::ShapeMismatch(format!("need 1 <= j <= {m}, got {j}")));
    }
    let inv_j = field.inv(&field.from_i64(j as i64)).ok_or(Error::JNotInvertible { j, p: field.characteristic() })?;
    let mut out = vec![TruncatedPoly::zero(field, trunc); m];
    for subset in subsets(m, j) {
        let mut e = vec![0; m];
        for &i in &subset {
            e[i] = 1;
        }
        for &i in &subset {
            out[i].add_term(e.clone(), inv_j.clone());
        }
    }
    Ok(out)
}

/// Write a symmetric `f` as a combination of products `s_{j_1} ... s_{j_k}`
/// (multi-sets `j_1 <= ... <= j_k`) in the untruncated polynomial ring, up to
/// the total degree visible in `A_r`.
pub fn elementary_symmetric_coordinates<F: Field>(f: &TruncatedPoly<F>) -> Result<Vec<(Vec<usize>, F::Elem)>> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let field = f.field();
    let m = f.num_vars();
    let max_deg: usize = f.trunc().iter().map(|r| r - 1).sum();
    let lift = vec![max_deg + 1; m];
    let mut rest = f.retruncate(&lift);
    let s: Vec<TruncatedPoly<F>> = (0..=m).map(|j| elementary_symmetric(field, &lift, j)).collect();
    let mut out = Vec::new();
    loop {
        let Some((lead, c)) = rest.terms().next_back().map(|(e, c)| (e.clone(), c.clone())) else {
            break;
        };
        // A symmetric polynomial's lex-leading exponent is weakly decreasing;
        // it is the leading exponent of prod_j s_j^{a_j - a_{j+1}}.
        let mut factors = Vec::new();
        let mut product = TruncatedPoly::one(field, &lift);
        for j in 1..=m {
            let next = if j < m { lead[j] } else { 0 };
            let k = lead[j - 1].checked_sub(next).ok_or(Error::NotSymmetric)?;
            for _ in 0..k {
                factors.push(j);
                product = product.mul(&s[j])?;
            }
        }
        rest = rest.sub(&product.scale(&c))?;
        if rest.coeff(&lead) != field.zero() {
            return Err(Error::NotSymmetric);
        }
        out.push((factors, c));
    }
    Ok(out)
}

/// Split a symmetric `f = Y_1 + ... + Y_m + (higher)` as `f = f_1 + ... + f_m`
/// with `f_i = Y_i + (higher)`, `Y_i | f_i` and `sigma f_i = f_{sigma^{-1}(i)}`.
///
/// Each product `s_{j_1} s_{j_2} ... ` is split through its smallest factor:
/// `H_i(s_{j_1}) * s_{j_2} ...`. The four conditions are checked before returning.
pub fn symmetric_split<F: Field>(f: &TruncatedPoly<F>) -> Result<Vec<TruncatedPoly<F>>> {
    let field = f.field();
    let m = f.num_vars();
    let p = field.characteristic();
    if (2..=m).any(|j| !field.is_unit_int(j as u64)) {
        return Err(Error::FactorialNotInvertible { n: m, p });
    }
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let trunc = f.trunc().to_vec();
    if f.drop_above_degree(1) != elementary_symmetric(field, &trunc, 1) {
        return Err(Error::SplitPostcondition("input is not Y_1 + ... + Y_m modulo degree 2".into()));
    }

    let coords = elementary_symmetric_coordinates(f)?;
    let max_deg: usize = trunc.iter().map(|r| r - 1).sum();
    let lift = vec![max_deg + 1; m];
    let splits: Vec<Vec<TruncatedPoly<F>>> =
        (1..=m).map(|j| elementary_symmetric_split(field, j, &lift)).collect::<Result<_>>()?;
    let mut parts = vec![TruncatedPoly::zero(field, &lift); m];
    for (factors, c) in coords {
        let (&first, others) = factors.split_first().ok_or(Error::NonzeroConstantTerm)?;
        let mut tail = TruncatedPoly::constant(field, &lift, c);
        for &j in others {
            tail = tail.mul(&elementary_symmetric(field, &lift, j))?;
        }
        for (i, part) in parts.iter_mut().enumerate() {
            *part = part.add(&splits[first - 1][i].mul(&tail)?)?;
        }
    }
    let parts: Vec<_> = parts.into_iter().map(|g| g.retruncate(&trunc)).collect();
    check_split(f, &parts)?;
    Ok(parts)
}

fn check_split<F: Field>(f: &TruncatedPoly<F>, parts: &[TruncatedPoly<F>]) -> Result<()> {
    let field = f.field();
    let trunc = f.trunc();
    let m = parts.len();
    let mut sum = TruncatedPoly::zero(field, trunc);
    for (i, g) in parts.iter().enumerate() {
        if g.drop_above_degree(1) != TruncatedPoly::var(field, trunc, i) {
            return Err(Error::SplitPostcondition(format!("f_{} is not Y_{} modulo degree 2", i + 1, i + 1)));
        }
        if !g.divisible_by_var(i) {
            return Err(Error::SplitPostcondition(format!("Y_{} does not divide f_{}", i + 1, i + 1)));
        }
        sum = sum.add(g)?;
    }
    // adjacent transpositions generate the symmetric group
    for k in 0..m.saturating_sub(1) {
        let mut sigma: Vec<usize> = (0..m).collect();
        sigma.swap(k, k + 1);
        for i in 0..m {
            if parts[i].act(&sigma) != parts[sigma[i]] {
                return Err(Error::SplitPostcondition(format!("equivariance fails for f_{} under ({} {})", i + 1, k + 1, k + 2)));
            }
        }
    }
    if sum != *f {
        return Err(Error::SplitPostcondition("pieces do not sum to f".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::law::{iterated_tensor_series, GeneralizedLaw};
    use num_rational::BigRational;

    fn half() -> BigRational {
        Rationals.inv(&Rationals.from_i64(2)).unwrap()
    }

    #[test]
    fn basis_indexing() {
        let b = MonomialBasis::new(&[2, 3]);
        assert_eq!(b.len(), 6);
        assert_eq!(b.exponent(4), vec![1, 1]);
        for i in 0..6 {
            assert_eq!(b.index(&b.exponent(i)), i);
        }
    }

    #[test]
    fn one_variable_examples() {
        let q = Rationals;
        let y = TruncatedPoly::var(&q, &[3], 0);
        let lam = build_automorphism(&[q.one()], std::slice::from_ref(&y)).unwrap();
        let want = Matrix::from_i64_rows(&q, &[&[1, 0, 0], &[0, 1, 0], &[0, 1, 1]]).unwrap();
        assert_eq!(lam, want);

        let f5 = PrimeField::new(5).unwrap();
        let lam = build_automorphism(&[2], &[TruncatedPoly::zero(&f5, &[3])]).unwrap();
        let want = Matrix::from_i64_rows(&f5, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]]).unwrap();
        assert_eq!(lam, want);

        assert_eq!(build_automorphism(&[0], &[TruncatedPoly::zero(&f5, &[3])]), Err(Error::ZeroLinearScalar));
    }

    #[test]
    fn automorphism_is_invertible_for_multiplicative_pieces() {
        let f3 = PrimeField::new(3).unwrap();
        let t = [3, 3];
        let y2 = TruncatedPoly::var(&f3, &t, 1);
        let lam = build_automorphism(&[1, 1], &[y2, TruncatedPoly::zero(&f3, &t)]).unwrap();
        assert_eq!(lam.rank(), 9);
    }

    #[test]
    fn permutation_matrix_matches_action() {
        let q = Rationals;
        let t = [2, 2, 2];
        let g = TruncatedPoly::from_terms(&q, &t, [(vec![1, 0, 1], q.from_i64(3)), (vec![0, 1, 0], q.one())]);
        let sigma = [2, 0, 1];
        let b = MonomialBasis::new(&t);
        let p = permutation_matrix(&q, &t, &sigma);
        assert_eq!(p.mul_vec(&b.coordinates(&g)), b.coordinates(&g.act(&sigma)));
    }

    #[test]
    fn elementary_splits() {
        let q = Rationals;
        let h = elementary_symmetric_split(&q, 1, &[3, 3]).unwrap();
        assert_eq!(h[0], TruncatedPoly::var(&q, &[3, 3], 0));
        let h = elementary_symmetric_split(&q, 2, &[3, 3]).unwrap();
        let y1y2 = TruncatedPoly::monomial(&q, &[3, 3], vec![1, 1], half());
        assert_eq!(h, vec![y1y2.clone(), y1y2]);

        let t = [3, 3, 3];
        let h = elementary_symmetric_split(&q, 2, &t).unwrap();
        let want = TruncatedPoly::from_terms(&q, &t, [(vec![1, 1, 0], half()), (vec![1, 0, 1], half())]);
        assert_eq!(h[0], want);
        let sum = h.iter().fold(TruncatedPoly::zero(&q, &t), |acc, x| acc.add(x).unwrap());
        assert_eq!(sum, elementary_symmetric(&q, &t, 2));

        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(elementary_symmetric_split(&f2, 2, &[2, 2]), Err(Error::JNotInvertible { j: 2, p: 2 }));
    }

    #[test]
    fn split_of_multiplicative_law() {
        let q = Rationals;
        let t = [3, 3];
        let f = GeneralizedLaw::multiplicative(&q).to_series(3, 3);
        let parts = symmetric_split(&f).unwrap();
        let y1y2 = TruncatedPoly::monomial(&q, &t, vec![1, 1], half());
        assert_eq!(parts[0], TruncatedPoly::var(&q, &t, 0).add(&y1y2).unwrap());
        assert_eq!(parts[1], TruncatedPoly::var(&q, &t, 1).add(&y1y2).unwrap());

        let s1 = elementary_symmetric(&q, &t, 1);
        assert_eq!(symmetric_split(&s1).unwrap(), vec![TruncatedPoly::var(&q, &t, 0), TruncatedPoly::var(&q, &t, 1)]);
    }

    #[test]
    fn split_of_triple_multiplicative_series_p5() {
        let f5 = PrimeField::new(5).unwrap();
        let f = iterated_tensor_series(&GeneralizedLaw::multiplicative(&f5), 3, &[3, 3, 3]).unwrap();
        let parts = symmetric_split(&f).unwrap();
        assert_eq!(parts.len(), 3);
    }

    #[test]
    fn split_errors() {
        let f3 = PrimeField::new(3).unwrap();
        let f = iterated_tensor_series(&GeneralizedLaw::multiplicative(&f3), 3, &[2, 2, 2]).unwrap();
        assert_eq!(symmetric_split(&f), Err(Error::FactorialNotInvertible { n: 3, p: 3 }));
        let q = Rationals;
        let lopsided = TruncatedPoly::from_terms(&q, &[3, 3], [(vec![1, 0], q.one()), (vec![0, 1], q.one()), (vec![2, 0], q.one())]);
        assert_eq!(symmetric_split(&lopsided), Err(Error::NotSymmetric));
    }

    #[test]
    fn coordinates_reconstruct() {
        let q = Rationals;
        let t = [4, 4, 4];
        let f = iterated_tensor_series(&GeneralizedLaw::multiplicative(&q), 3, &t).unwrap();
        let coords = elementary_symmetric_coordinates(&f).unwrap();
        let mut rebuilt = TruncatedPoly::zero(&q, &[10, 10, 10]);
        for (factors, c) in &coords {
            let mut term = TruncatedPoly::constant(&q, &[10, 10, 10], c.clone());
            for &j in factors {
                term = term.mul(&elementary_symmetric(&q, &[10, 10, 10], j)).unwrap();
            }
            rebuilt = rebuilt.add(&term).unwrap();
        }
        assert_eq!(rebuilt.retruncate(&t), f);
    }
}
