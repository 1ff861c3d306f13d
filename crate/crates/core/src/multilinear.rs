//! Tensor powers `⊗^m_F(phi)` on `V^{⊗m}` and the induced operators on the
//! quotients `⋀^m V` and `Sym^m V`.
//!
//! Tensor basis words `(i_1, ..., i_m)` are indexed with the first factor
//! slowest, matching [`Matrix::kron`].

use std::collections::BTreeMap;

use crate::error::Result;
use crate::field::Field;
use crate::jordan::{jordan_partition, nilpotency_degree, nilpotent_from_partition};
use crate::law::{iterated_tensor_series, GeneralizedLaw};
use crate::matrix::Matrix;
use crate::partition::Partition;
use crate::series::TruncatedPoly;

/// Which quotient of `V^{⊗m}` to induce onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Power {
    Exterior,
    Symmetric,
}

struct TensorPower<F: Field> {
    field: F,
    d: usize,
    series: TruncatedPoly<F>,
    powers: Vec<Matrix<F>>,
}

impl<F: Field> TensorPower<F> {
    fn new(phi: &Matrix<F>, m: usize, law: &GeneralizedLaw<F>) -> Result<Self> {
        let n = nilpotency_degree(phi)?.max(1);
        let series = iterated_tensor_series(law, m, &vec![n; m])?;
        Ok(Self { field: law.field().clone(), d: phi.rows(), series, powers: phi.powers_until_zero(n)? })
    }

    /// `⊗^m_F(phi)` applied to `e_{w_1} ⊗ ... ⊗ e_{w_m}`, as a sparse map on words.
    fn image(&self, word: &[usize]) -> BTreeMap<Vec<usize>, F::Elem> {
        let f = &self.field;
        let mut out: BTreeMap<Vec<usize>, F::Elem> = BTreeMap::new();
        let columns: Vec<Vec<Vec<(usize, F::Elem)>>> = self
            .powers
            .iter()
            .map(|p| word.iter().map(|&w| (0..self.d).filter(|&i| !f.is_zero(p.get(i, w))).map(|i| (i, p.get(i, w).clone())).collect()).collect())
            .collect();
        for (e, c) in self.series.terms() {
            let mut partial: Vec<(Vec<usize>, F::Elem)> = vec![(Vec::with_capacity(word.len()), c.clone())];
            for (k, &a) in e.iter().enumerate() {
                let Some(col) = columns.get(a) else {
                    partial.clear();
                    break;
                };
                let mut next = Vec::with_capacity(partial.len() * col[k].len());
                for (w, x) in &partial {
                    for (i, y) in &col[k] {
                        let mut w2 = w.clone();
                        w2.push(*i);
                        next.push((w2, f.mul(x, y)));
                    }
                }
                partial = next;
            }
            for (w, x) in partial {
                accumulate(f, &mut out, w, x);
            }
        }
        out
    }

    fn index(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    fn word(&self, mut idx: usize, m: usize) -> Vec<usize> {
        let mut w = vec![0; m];
        for k in (0..m).rev() {
            w[k] = idx % self.d;
            idx /= self.d;
        }
        w
    }
}

fn accumulate<F: Field>(f: &F, map: &mut BTreeMap<Vec<usize>, F::Elem>, key: Vec<usize>, x: F::Elem) {
    match map.get_mut(&key) {
        Some(slot) => {
            *slot = f.add(slot, &x);
            if f.is_zero(slot) {
                map.remove(&key);
            }
        }
        None if !f.is_zero(&x) => {
            map.insert(key, x);
        }
        None => {}
    }
}

/// `⊗^m_F(phi)`: substitute `Y_k -> 1 ⊗ .. ⊗ phi ⊗ .. ⊗ 1` into the iterated series.
pub fn power_operator<F: Field>(phi: &Matrix<F>, m: usize, law: &GeneralizedLaw<F>) -> Result<Matrix<F>> {
    let tp = TensorPower::new(phi, m, law)?;
    let dim = tp.d.pow(m as u32);
    let mut out = Matrix::zeros(law.field(), dim, dim);
    for col in 0..dim {
        for (w, x) in tp.image(&tp.word(col, m)) {
            out.set(tp.index(&w), col, x);
        }
    }
    Ok(out)
}

/// Adjacent transpositions `(k, k+1)` acting on `(k^d)^{⊗m}` by swapping tensor factors.
pub fn sigma_matrices<F: Field>(field: &F, m: usize, d: usize) -> Vec<Matrix<F>> {
    let dim = d.pow(m as u32);
    (0..m.saturating_sub(1))
        .map(|k| {
            let mut s = Matrix::zeros(field, dim, dim);
            for col in 0..dim {
                let mut w = vec![0; m];
                let mut idx = col;
                for slot in (0..m).rev() {
                    w[slot] = idx % d;
                    idx /= d;
                }
                w.swap(k, k + 1);
                let row = w.iter().fold(0, |acc, &i| acc * d + i);
                s.set(row, col, field.one());
            }
            s
        })
        .collect()
}

/// Strictly increasing (exterior) or weakly increasing (symmetric) words.
pub fn quotient_basis(d: usize, m: usize, kind: Power) -> Vec<Vec<usize>> {
    fn rec(d: usize, m: usize, strict: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let start = match cur.last() {
            Some(&x) if strict => x + 1,
            Some(&x) => x,
            None => 0,
        };
        for i in start..d {
            cur.push(i);
            rec(d, m, strict, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, m, kind == Power::Exterior, &mut Vec::new(), &mut out);
    out
}

/// Sort a word into basis form. `None` for a repeated index in the exterior
/// power; otherwise the sorted word and whether the sort was odd.
fn straighten(mut word: Vec<usize>, kind: Power) -> Option<(Vec<usize>, bool)> {
    let mut odd = false;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if kind == Power::Exterior && word.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((word, kind == Power::Exterior && odd))
}

/// The operator induced by `⊗^m_F(phi)` on `⋀^m V` or `Sym^m V`.
pub fn induced_operator<F: Field>(phi: &Matrix<F>, m: usize, law: &GeneralizedLaw<F>, kind: Power) -> Result<Matrix<F>> {
    let f = law.field();
    let tp = TensorPower::new(phi, m, law)?;
    let basis = quotient_basis(tp.d, m, kind);
    let position: BTreeMap<&[usize], usize> = basis.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut out = Matrix::zeros(f, basis.len(), basis.len());
    for (col, w) in basis.iter().enumerate() {
        let mut coords: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (word, x) in tp.image(w) {
            if let Some((sorted, odd)) = straighten(word, kind) {
                let row = position[sorted.as_slice()];
                let x = if odd { f.neg(&x) } else { x };
                let slot = coords.entry(row).or_insert_with(|| f.zero());
                *slot = f.add(slot, &x);
            }
        }
        for (row, x) in coords {
            out.set(row, col, x);
        }
    }
    Ok(out)
}

pub fn wedge_partition<F: Field>(lambda: &Partition, m: usize, law: &GeneralizedLaw<F>) -> Result<Partition> {
    let phi = nilpotent_from_partition(law.field(), lambda);
    jordan_partition(&induced_operator(&phi, m, law, Power::Exterior)?)
}

pub fn sym_partition<F: Field>(lambda: &Partition, m: usize, law: &GeneralizedLaw<F>) -> Result<Partition> {
    let phi = nilpotent_from_partition(law.field(), lambda);
    jordan_partition(&induced_operator(&phi, m, law, Power::Symmetric)?)
}

/// Partition of `⊗^m_F(phi_lambda)` on the full tensor power.
pub fn tensor_power_partition<F: Field>(lambda: &Partition, m: usize, law: &GeneralizedLaw<F>) -> Result<Partition> {
    let phi = nilpotent_from_partition(law.field(), lambda);
    jordan_partition(&power_operator(&phi, m, law)?)
}
