//! Dense matrices over an exact [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>, // row-major
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.field.format(self.get(i, j))).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Integer entries reduced into the field.
    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        let t = self.transpose();
        t.data.chunks(t.cols.max(1)).take(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn from_columns(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Entries flattened row-major; used to treat a matrix as a vector.
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.field, self.rows)
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Self { data, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Self { data, ..self.clone_shape() })
    }

    /// `self += c * other`, shapes assumed equal.
    pub fn add_scaled_assign(&mut self, c: &F::Elem, other: &Self) {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        if self.field.is_zero(c) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !self.field.is_zero(b) {
                *a = self.field.add(a, &self.field.mul(c, b));
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self { data: self.data.iter().map(|a| f.mul(c, a)).collect(), ..self.clone_shape() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    fn clone_shape(&self) -> Self {
        Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data: Vec::new() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let base = i * out.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !f.is_zero(b) {
                        let slot = &mut out.data[base + j];
                        *slot = f.add(slot, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn pow(&self, mut e: usize) -> Result<Self> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Successive powers `[I, A, A^2, ...]` up to (excluding) the first zero power,
    /// or `max_len` entries, whichever comes first.
    pub fn powers_until_zero(&self, max_len: usize) -> Result<Vec<Self>> {
        self.require_square()?;
        let mut out = vec![Self::identity(&self.field, self.rows)];
        while out.len() < max_len {
            let next = out.last().unwrap().mul(self)?;
            if next.is_zero() {
                break;
            }
            out.push(next);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; the left factor indexes the slow coordinate.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !f.is_zero(b) {
                            out.set(i * other.rows + k, j * other.cols + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diagonal(field: &F, blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !f.is_zero(a.get(r, col))).ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let pinv = f.inv(a.get(col, col)).expect("pivot is nonzero");
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r != col && !f.is_zero(a.get(r, col)) {
                    let factor = f.neg(a.get(r, col));
                    a.add_row_multiple(r, col, &factor);
                    inv.add_row_multiple(r, col, &factor);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(r, j), c);
            self.set(r, j, v);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !self.field.is_zero(s) {
                let v = self.field.add(self.get(dst, j), &self.field.mul(c, s));
                self.set(dst, j, v);
            }
        }
    }

    pub fn map_to<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

/// Incrementally built row-echelon basis of a subspace of `F^dim`.
///
/// Each stored vector has a leading 1 at its pivot and zeros at the pivots of
/// all earlier vectors, so reducing a new vector against the basis in
/// insertion order is exact. Optionally tracks, for every stored vector, its
/// expression in terms of the originally inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    basis: Vec<(usize, Vec<F::Elem>)>,
    track: Option<Vec<Vec<F::Elem>>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, dim: usize) -> Self {
        Self { field: field.clone(), dim, basis: Vec::new(), track: None, inserted: 0 }
    }

    pub fn with_tracking(field: &F, dim: usize) -> Self {
        Self { track: Some(Vec::new()), ..Self::new(field, dim) }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.basis.iter().map(|(_, v)| v.as_slice())
    }

    /// Reduce `v` against the basis; returns the residual and the combination
    /// (over stored basis vectors) that was subtracted.
    fn reduce(&self, mut v: Vec<F::Elem>) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.basis.len()];
        for (k, (pivot, b)) in self.basis.iter().enumerate() {
            let c = v[*pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            coeffs[k] = c;
        }
        (v, coeffs)
    }

    /// Insert a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let idx = self.inserted;
        self.inserted += 1;
        let (mut r, coeffs) = self.reduce(v);
        let f = self.field.clone();
        let Some(pivot) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let pinv = f.inv(&r[pivot]).expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = f.mul(x, &pinv);
        }
        if let Some(track) = self.track.as_mut() {
            // new = (orig_idx - sum_k coeffs_k * stored_k) * pinv, in original coordinates
            let mut expr = vec![f.zero(); idx + 1];
            expr[idx] = f.one();
            for (k, c) in coeffs.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                for (i, t) in track[k].iter().enumerate() {
                    expr[i] = f.sub(&expr[i], &f.mul(c, t));
                }
            }
            for x in expr.iter_mut() {
                *x = f.mul(x, &pinv);
            }
            track.push(expr);
        }
        self.basis.push((pivot, r));
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let (r, _) = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` with respect to the inserted vectors (dependent
    /// insertions get coefficient 0). Requires tracking; `None` if `v` is not
    /// in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let track = self.track.as_ref().expect("coordinates need a tracking echelon");
        let f = &self.field;
        let (r, coeffs) = self.reduce(v.to_vec());
        if !r.iter().all(|x| f.is_zero(x)) {
            return None;
        }
        let mut out = vec![f.zero(); self.inserted];
        for (k, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (i, t) in track[k].iter().enumerate() {
                out[i] = f.add(&out[i], &f.mul(c, t));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn inverse_roundtrip() {
        let q = Rationals;
        let a = Matrix::from_i64_rows(&q, &[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let s = Matrix::from_i64_rows(&q, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(Matrix::from_i64_rows(&Rationals, rows).unwrap().rank(), 2);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(Matrix::from_i64_rows(&f2, rows).unwrap().rank(), 1);
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let f = PrimeField::new(3).unwrap();
        let k = Matrix::identity(&f, 2).kron(&Matrix::identity(&f, 3));
        assert!(k.is_identity());
    }

    #[test]
    fn echelon_coordinates() {
        let q = Rationals;
        let mut e = Echelon::with_tracking(&q, 3);
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        assert!(e.insert(v(&[1, 1, 0])));
        assert!(e.insert(v(&[0, 1, 1])));
        assert!(!e.insert(v(&[1, 2, 1])));
        let c = e.coordinates(&v(&[2, 5, 3])).unwrap();
        assert_eq!(c, v(&[2, 3, 0]));
        assert!(e.coordinates(&v(&[0, 0, 1])).is_none());
    }
}
