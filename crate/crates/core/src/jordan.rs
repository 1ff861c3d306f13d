//! Jordan partitions of nilpotent and unipotent operators.
//!
//! Only the partition is ever needed, so nothing here builds a similarity
//! transform. The partition of a nilpotent `N` is read off the rank sequence
//! `rank N^k`: the number of blocks of size at least `k` is
//! `rank N^{k-1} - rank N^k`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Matrix};
use crate::partition::Partition;
use crate::series::TruncatedPoly;

/// Ranks `[rank N^0, rank N^1, ..., 0]` of a nilpotent matrix.
///
/// Computed by pushing an echelon basis of `im N^k` through `N` once per step,
/// which costs far less than forming the powers.
pub fn rank_sequence<F: Field>(n: &Matrix<F>) -> Result<Vec<usize>> {
    n.require_square()?;
    let d = n.rows();
    let f = n.field();
    let sparse_cols: Vec<Vec<(usize, F::Elem)>> = (0..d)
        .map(|j| (0..d).filter(|&i| !f.is_zero(n.get(i, j))).map(|i| (i, n.get(i, j).clone())).collect())
        .collect();
    let apply = |v: &[F::Elem]| -> Vec<F::Elem> {
        let mut out = vec![f.zero(); d];
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (i, a) in &sparse_cols[j] {
                out[*i] = f.add(&out[*i], &f.mul(x, a));
            }
        }
        out
    };

    let mut ranks = vec![d];
    let mut image = Echelon::new(f, d);
    for col in n.columns() {
        image.insert(col);
    }
    while !image.is_empty() {
        let r = image.len();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
        let mut next = Echelon::new(f, d);
        for v in image.vectors() {
            next.insert(apply(v));
        }
        image = next;
    }
    ranks.push(0);
    Ok(ranks)
}

pub fn jordan_partition<F: Field>(n: &Matrix<F>) -> Result<Partition> {
    let ranks = rank_sequence(n)?;
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&c| c > 0).collect();
    Ok(Partition::new(at_least)?.conjugate())
}

pub fn unipotent_partition<F: Field>(u: &Matrix<F>) -> Result<Partition> {
    u.require_square()?;
    let shifted = u.sub(&Matrix::identity(u.field(), u.rows()))?;
    jordan_partition(&shifted).map_err(|e| match e {
        Error::NotNilpotent => Error::NotUnipotent,
        other => other,
    })
}

/// Smallest `d` with `N^d = 0`.
pub fn nilpotency_degree<F: Field>(n: &Matrix<F>) -> Result<usize> {
    Ok(jordan_partition(n)?.largest())
}

/// Single `n x n` nilpotent Jordan block, ones on the superdiagonal.
pub fn jordan_block<F: Field>(field: &F, n: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, field.one());
    }
    m
}

pub fn nilpotent_from_partition<F: Field>(field: &F, lambda: &Partition) -> Matrix<F> {
    let blocks: Vec<_> = lambda.parts().iter().map(|&k| jordan_block(field, k)).collect();
    Matrix::block_diagonal(field, &blocks)
}

/// `sum_i f_i N^i` for a univariate series `f`.
pub fn apply_series<F: Field>(series: &TruncatedPoly<F>, n: &Matrix<F>) -> Result<Matrix<F>> {
    if series.num_vars() != 1 {
        return Err(Error::ShapeMismatch("apply_series needs a univariate series".into()));
    }
    let degree = nilpotency_degree(n)?;
    let available = series.trunc()[0];
    if available < degree {
        return Err(Error::TruncationTooShort { needed: degree, available });
    }
    let powers = n.powers_until_zero(degree.max(1))?;
    let mut out = Matrix::zeros(n.field(), n.rows(), n.cols());
    for (exp, c) in series.terms() {
        if let Some(p) = powers.get(exp[0]) {
            out.add_scaled_assign(c, p);
        }
    }
    Ok(out)
}

/// `sum_{k<d} N^k / k!` where `d` is the nilpotency degree of `N`.
pub fn exp_nilpotent<F: Field>(n: &Matrix<F>) -> Result<Matrix<F>> {
    let f = n.field();
    let degree = nilpotency_degree(n)?;
    let p = f.characteristic();
    if p != 0 && degree as u64 > p {
        return Err(Error::FactorialNotInvertible { n: degree - 1, p });
    }
    let powers = n.powers_until_zero(degree.max(1))?;
    let mut out = Matrix::zeros(f, n.rows(), n.cols());
    for (k, pk) in powers.iter().enumerate() {
        let c = f.inv(&f.factorial(k)).expect("k < p");
        out.add_scaled_assign(&c, pk);
    }
    Ok(out)
}
