//! `G_2` inside `SO_7` for `p > 3`, realized on its 7-dimensional module.
//!
//! The basis of `V` is labelled `(1, 2, 3, 0, -3, -2, -1)`; `e_i` has weight
//! `eps_i`, `e_{-i}` weight `-eps_i`. The form pairs `e_i` with `e_{-i}` and
//! `e_0` with itself. The simple roots of `B_3` are
//! `gamma_1 = eps_1 - eps_2`, `gamma_2 = eps_2 - eps_3`, `gamma_3 = eps_3`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, Field, PrimeField};
use crate::jordan::{exp_nilpotent, jordan_partition, unipotent_partition};
use crate::law::GeneralizedLaw;
use crate::matrix::{Echelon, Matrix};
use crate::multilinear::{induced_operator, Power};
use crate::partition::Partition;

pub const LABELS: [i64; 7] = [1, 2, 3, 0, -3, -2, -1];

/// An `eps`-weight written in the basis `eps_1, eps_2, eps_3`.
pub type Weight = [i64; 3];

pub const GAMMA1: Weight = [1, -1, 0];
pub const GAMMA2: Weight = [0, 1, -1];
pub const GAMMA3: Weight = [0, 0, 1];

fn label_weight(label: i64) -> Weight {
    let mut w = [0; 3];
    if label != 0 {
        w[(label.unsigned_abs() - 1) as usize] = label.signum();
    }
    w
}

fn index_of(label: i64) -> usize {
    LABELS.iter().position(|&l| l == label).expect("valid label")
}

fn add_weights(a: Weight, b: Weight) -> Weight {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Nilpotent orbits of `g_2` other than zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum G2Orbit {
    A1,
    A1tilde,
    G2a1,
    G2reg,
}

impl G2Orbit {
    pub const ALL: [G2Orbit; 4] = [G2Orbit::A1, G2Orbit::A1tilde, G2Orbit::G2a1, G2Orbit::G2reg];

    /// Partition on the 7-dimensional module; it separates the four orbits.
    pub fn v_partition(self) -> Partition {
        let parts = match self {
            G2Orbit::A1 => vec![2, 2, 1, 1, 1],
            G2Orbit::A1tilde => vec![3, 2, 2],
            G2Orbit::G2a1 => vec![3, 3, 1],
            G2Orbit::G2reg => vec![7],
        };
        Partition::new(parts).expect("valid")
    }

    /// Expected adjoint partition at `p > 3`.
    pub fn adjoint_partition(self, p: u64) -> Partition {
        let parts = match self {
            G2Orbit::A1 => vec![3, 2, 2, 2, 2, 1, 1, 1],
            G2Orbit::A1tilde => vec![4, 4, 3, 1, 1, 1],
            G2Orbit::G2a1 => vec![5, 3, 3, 3],
            G2Orbit::G2reg if p == 7 => vec![7, 7],
            G2Orbit::G2reg => vec![11, 3],
        };
        Partition::new(parts).expect("valid")
    }
}

impl fmt::Display for G2Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            G2Orbit::A1 => "A1",
            G2Orbit::A1tilde => "A1tilde",
            G2Orbit::G2a1 => "G2a1",
            G2Orbit::G2reg => "G2reg",
        };
        f.write_str(s)
    }
}

impl FromStr for G2Orbit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        G2Orbit::ALL
            .into_iter()
            .find(|o| o.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownType(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Nilpotent,
    Unipotent,
}

#[derive(Clone, Debug)]
pub struct SO7Model {
    field: PrimeField,
    gram: Matrix<PrimeField>,
    y: [Matrix<PrimeField>; 3],
    y_neg: [Matrix<PrimeField>; 3],
    g2_basis: Vec<Matrix<PrimeField>>,
}

/// `E(i, j)`: sends `e_j` to `e_i`, indices given by label.
fn elementary(field: &PrimeField, i: i64, j: i64) -> Matrix<PrimeField> {
    let mut m = Matrix::zeros(field, 7, 7);
    m.set(index_of(i), index_of(j), field.one());
    m
}

pub fn build_so7_model(p: u64) -> Result<SO7Model> {
    if !is_prime(p) {
        return Err(Error::InvalidCharacteristic(p));
    }
    if p <= 3 {
        return Err(Error::BadPrime(p));
    }
    let f = PrimeField::new(p)?;
    let mut gram = Matrix::zeros(&f, 7, 7);
    for i in 0..7 {
        gram.set(i, 6 - i, f.one());
    }
    let e = |i, j| elementary(&f, i, j);
    let y = [e(1, 2).sub(&e(-2, -1))?, e(2, 3).sub(&e(-3, -2))?, e(3, 0).sub(&e(0, -3))?];
    let y_neg = [sl2_partner(&y[0])?, sl2_partner(&y[1])?, sl2_partner(&y[2])?];

    let x_a1 = y[0].add(&y[2])?;
    let x_a2 = y[1].clone();
    let x_ma1 = y_neg[0].add(&y_neg[2])?;
    let x_ma2 = y_neg[1].clone();
    let g2_basis = lie_closure(&[x_a1, x_a2, x_ma1, x_ma2])?;

    let model = SO7Model { field: f, gram, y, y_neg, g2_basis };
    for m in model.y.iter().chain(&model.y_neg) {
        if !model.in_so7(m)? {
            return Err(Error::DimensionMismatch("root vector outside so7".into()));
        }
    }
    Ok(model)
}

/// `c * y^T` scaled so that `h = [y, c y^T]` satisfies `[h, y] = 2y`.
fn sl2_partner(y: &Matrix<PrimeField>) -> Result<Matrix<PrimeField>> {
    let f = y.field();
    let t = y.transpose();
    let hy = y.commutator(&t)?.commutator(y)?;
    for i in 0..7 {
        for j in 0..7 {
            if !f.is_zero(y.get(i, j)) {
                let ratio = f.mul(y.get(i, j), &f.inv(hy.get(i, j)).ok_or(Error::Singular)?);
                return Ok(t.scale(&f.mul(&f.from_i64(2), &ratio)));
            }
        }
    }
    Err(Error::Singular)
}

/// Basis of the Lie algebra generated by `generators` under commutators.
pub fn lie_closure<F: Field>(generators: &[Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    let Some(first) = generators.first() else {
        return Ok(Vec::new());
    };
    let (f, n) = (first.field().clone(), first.rows());
    let mut span = Echelon::new(&f, n * n);
    let mut basis: Vec<Matrix<F>> = Vec::new();
    let mut queue: Vec<Matrix<F>> = generators.to_vec();
    while let Some(g) = queue.pop() {
        if !span.insert(g.entries().to_vec()) {
            continue;
        }
        for b in &basis {
            queue.push(b.commutator(&g)?);
        }
        basis.push(g);
    }
    Ok(basis)
}

/// Eigen-decomposition of a matrix under the diagonal torus.
pub fn weight_components(m: &Matrix<PrimeField>) -> BTreeMap<Weight, Matrix<PrimeField>> {
    let f = m.field();
    let mut out: BTreeMap<Weight, Matrix<PrimeField>> = BTreeMap::new();
    for i in 0..7 {
        for j in 0..7 {
            let x = m.get(i, j);
            if f.is_zero(x) {
                continue;
            }
            let wj = label_weight(LABELS[j]);
            let w = add_weights(label_weight(LABELS[i]), [-wj[0], -wj[1], -wj[2]]);
            out.entry(w).or_insert_with(|| Matrix::zeros(f, 7, 7)).set(i, j, *x);
        }
    }
    out
}

impl SO7Model {
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn gram(&self) -> &Matrix<PrimeField> {
        &self.gram
    }

    /// `y_{gamma_i}` for `i = 1, 2, 3`.
    pub fn y(&self, i: usize) -> &Matrix<PrimeField> {
        &self.y[i - 1]
    }

    pub fn y_neg(&self, i: usize) -> &Matrix<PrimeField> {
        &self.y_neg[i - 1]
    }

    /// Basis of `g_2`, the Lie algebra generated by `x_{±alpha_1}, x_{±alpha_2}`.
    pub fn g2_basis(&self) -> &[Matrix<PrimeField>] {
        &self.g2_basis
    }

    /// `y^T G + G y = 0`.
    pub fn in_so7(&self, y: &Matrix<PrimeField>) -> Result<bool> {
        Ok(y.transpose().mul(&self.gram)?.add(&self.gram.mul(y)?)?.is_zero())
    }

    /// `u^T G u = G`.
    pub fn preserves_form(&self, u: &Matrix<PrimeField>) -> Result<bool> {
        Ok(u.transpose().mul(&self.gram)?.mul(u)? == self.gram)
    }

    pub fn in_g2(&self, m: &Matrix<PrimeField>) -> bool {
        let mut span = Echelon::new(&self.field, 49);
        for b in &self.g2_basis {
            span.insert(b.entries().to_vec());
        }
        span.contains(m.entries())
    }

    pub fn x_alpha1(&self) -> Matrix<PrimeField> {
        self.y[0].add(&self.y[2]).expect("same shape")
    }

    pub fn x_alpha2(&self) -> Matrix<PrimeField> {
        self.y[1].clone()
    }

    /// `[y_1, y_2] + [y_2, y_3] + [y_3, [y_2, y_3]]`: one vector in each of the
    /// weight spaces `gamma_1 + gamma_2`, `gamma_2 + gamma_3`, `gamma_2 + 2 gamma_3`.
    /// It lies in `so_7` but not in `g_2`.
    pub fn three_component_element(&self) -> Matrix<PrimeField> {
        let [y1, y2, y3] = &self.y;
        let y23 = y2.commutator(y3).expect("square");
        y1.commutator(y2)
            .and_then(|a| a.add(&y23))
            .and_then(|a| a.add(&y3.commutator(&y23)?))
            .expect("square")
    }

    pub fn nilpotent_rep(&self, orbit: G2Orbit) -> Matrix<PrimeField> {
        let xa1 = self.x_alpha1();
        let xa2 = self.x_alpha2();
        match orbit {
            G2Orbit::A1 => xa2,
            G2Orbit::A1tilde => xa1,
            // x_{alpha_1 + alpha_2} + x_{2 alpha_1 + alpha_2}, a Richardson element
            G2Orbit::G2a1 => {
                let x12 = xa1.commutator(&xa2).expect("square");
                let x212 = xa1.commutator(&x12).expect("square");
                x12.add(&x212).expect("same shape")
            }
            G2Orbit::G2reg => xa1.add(&xa2).expect("same shape"),
        }
    }

    pub fn unipotent_rep(&self, orbit: G2Orbit) -> Result<Matrix<PrimeField>> {
        let [y1, y2, y3] = &self.y;
        match orbit {
            G2Orbit::A1 => exp_nilpotent(y2),
            G2Orbit::A1tilde => exp_nilpotent(y1)?.mul(&exp_nilpotent(y3)?),
            G2Orbit::G2a1 => exp_nilpotent(&self.nilpotent_rep(G2Orbit::G2a1)),
            G2Orbit::G2reg => exp_nilpotent(y1)?.mul(&exp_nilpotent(y3)?)?.mul(&exp_nilpotent(y2)?),
        }
    }

    /// Partition of `ad a` (or `Ad a - 1`) on `g_2`; fails with
    /// [`Error::DoesNotStabilize`] if `a` does not normalize `g_2`.
    pub fn adjoint_partition_direct(&self, a: &Matrix<PrimeField>, mode: Mode) -> Result<Partition> {
        let mut coords = Echelon::with_tracking(&self.field, 49);
        for b in &self.g2_basis {
            coords.insert(b.entries().to_vec());
        }
        let a_inv = match mode {
            Mode::Unipotent => Some(a.inverse()?),
            Mode::Nilpotent => None,
        };
        let mut cols = Vec::with_capacity(self.g2_basis.len());
        for b in &self.g2_basis {
            let image = match &a_inv {
                None => a.commutator(b)?,
                Some(inv) => a.mul(b)?.mul(inv)?.sub(b)?,
            };
            cols.push(coords.coordinates(image.entries()).ok_or(Error::DoesNotStabilize)?);
        }
        jordan_partition(&Matrix::from_columns(&self.field, self.g2_basis.len(), &cols))
    }

    /// `⋀^2 V = V ⊕ g_2`: the partition on `⋀^2 V` with that of `V` removed.
    pub fn wedge_route_adjoint(&self, a: &Matrix<PrimeField>, mode: Mode) -> Result<Partition> {
        let f = &self.field;
        let (on_wedge, on_v) = match mode {
            Mode::Nilpotent => (induced_operator(a, 2, &GeneralizedLaw::additive(f), Power::Exterior)?, jordan_partition(a)?),
            Mode::Unipotent => {
                let shifted = a.sub(&Matrix::identity(f, 7))?;
                (induced_operator(&shifted, 2, &GeneralizedLaw::multiplicative(f), Power::Exterior)?, unipotent_partition(a)?)
            }
        };
        jordan_partition(&on_wedge)?.difference(&on_v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G2Row {
    pub orbit: G2Orbit,
    pub p: u64,
    #[serde(rename = "V")]
    pub v: Partition,
    #[serde(rename = "V_unipotent")]
    pub v_unipotent: Partition,
    pub adjoint_nilpotent: Partition,
    pub adjoint_unipotent: Partition,
    pub routes_agree: bool,
    /// Whether the representatives normalize the 14-dimensional closure.
    pub stabilizes: bool,
    pub expected_v: Partition,
    pub expected_adjoint: Partition,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G2Table {
    pub p: u64,
    pub g2_dim: usize,
    pub rows: Vec<G2Row>,
}

impl G2Table {
    pub fn all_match(&self) -> bool {
        self.g2_dim == 14 && self.rows.iter().all(|r| r.matches)
    }
}

/// Every orbit in both modes by both routes, compared with the expected table.
pub fn g2_table(p: u64) -> Result<G2Table> {
    let model = build_so7_model(p)?;
    let mut rows = Vec::new();
    for orbit in G2Orbit::ALL {
        let x = model.nilpotent_rep(orbit);
        let u = model.unipotent_rep(orbit)?;
        let wedge_nil = model.wedge_route_adjoint(&x, Mode::Nilpotent)?;
        let wedge_uni = model.wedge_route_adjoint(&u, Mode::Unipotent)?;
        let direct = model
            .adjoint_partition_direct(&x, Mode::Nilpotent)
            .and_then(|a| Ok((a, model.adjoint_partition_direct(&u, Mode::Unipotent)?)));
        let (stabilizes, adjoint_nilpotent, adjoint_unipotent, routes_agree) = match direct {
            Ok((dn, du)) => {
                let agree = dn == wedge_nil && du == wedge_uni;
                (true, dn, du, agree)
            }
            Err(Error::DoesNotStabilize) => (false, wedge_nil, wedge_uni, false),
            Err(e) => return Err(e),
        };
        let v = jordan_partition(&x)?;
        let v_unipotent = unipotent_partition(&u)?;
        let expected_v = orbit.v_partition();
        let expected_adjoint = orbit.adjoint_partition(p);
        let matches = stabilizes
            && routes_agree
            && v == expected_v
            && v_unipotent == expected_v
            && adjoint_nilpotent == expected_adjoint
            && adjoint_unipotent == expected_adjoint;
        rows.push(G2Row {
            orbit,
            p,
            v,
            v_unipotent,
            adjoint_nilpotent,
            adjoint_unipotent,
            routes_agree,
            stabilizes,
            expected_v,
            expected_adjoint,
            matches,
        });
    }
    Ok(G2Table { p, g2_dim: model.g2_basis().len(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn model_invariants() {
        let m = build_so7_model(5).unwrap();
        for i in 1..=3 {
            assert!(m.in_so7(m.y(i)).unwrap());
        }
        let comps = weight_components(m.y(1));
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![GAMMA1]);
        assert_eq!(weight_components(m.y(2)).keys().copied().collect::<Vec<_>>(), vec![GAMMA2]);
        assert_eq!(weight_components(m.y(3)).keys().copied().collect::<Vec<_>>(), vec![GAMMA3]);
        // y_{gamma_1} e_2 is a multiple of e_1
        let e2: Vec<_> = (0..7).map(|i| if i == index_of(2) { 1 } else { 0 }).collect();
        let img = m.y(1).mul_vec(&e2);
        assert!(img.iter().enumerate().all(|(i, &x)| (x != 0) == (i == index_of(1))));
        assert!(m.y(1).commutator(m.y(3)).unwrap().is_zero());
    }

    #[test]
    fn bad_primes() {
        assert!(matches!(build_so7_model(3), Err(Error::BadPrime(3))));
        assert!(matches!(build_so7_model(2), Err(Error::BadPrime(2))));
        assert!(matches!(build_so7_model(9), Err(Error::InvalidCharacteristic(9))));
    }

    #[test]
    fn closures() {
        let m = build_so7_model(5).unwrap();
        assert_eq!(lie_closure(&[m.y(2).clone()]).unwrap().len(), 1);
        assert_eq!(lie_closure(&[m.y(1).clone(), m.y_neg(1).clone()]).unwrap().len(), 3);
        assert_eq!(m.g2_basis().len(), 14);
        assert!(m.g2_basis().iter().all(|b| m.in_so7(b).unwrap()));
    }

    #[test]
    fn representatives() {
        let m = build_so7_model(7).unwrap();
        for orbit in G2Orbit::ALL {
            let x = m.nilpotent_rep(orbit);
            assert!(m.in_g2(&x), "{orbit}");
            assert_eq!(jordan_partition(&x).unwrap(), orbit.v_partition(), "{orbit}");
            let u = m.unipotent_rep(orbit).unwrap();
            assert!(m.preserves_form(&u).unwrap());
            assert_eq!(unipotent_partition(&u).unwrap(), orbit.v_partition(), "{orbit}");
        }
    }

    #[test]
    fn g2a1_weight_components() {
        let m = build_so7_model(11).unwrap();
        let named = [add_weights(GAMMA1, GAMMA2), add_weights(GAMMA2, GAMMA3), add_weights(GAMMA2, add_weights(GAMMA3, GAMMA3))];
        let three = m.three_component_element();
        assert_eq!(weight_components(&three).keys().copied().collect::<Vec<_>>().len(), 3);
        assert!(named.iter().all(|w| weight_components(&three).contains_key(w)));
        assert_eq!(jordan_partition(&three).unwrap(), part(&[3, 3, 1]));
        assert!(!m.in_g2(&three));

        let x = m.nilpotent_rep(G2Orbit::G2a1);
        let comps = weight_components(&x);
        assert!(named.iter().all(|w| comps.contains_key(w)));
        assert!(comps.contains_key(&[1, 0, 0]));
        assert_eq!(comps.len(), 4);
    }

    #[test]
    fn direct_examples() {
        let m = build_so7_model(11).unwrap();
        let a1 = m.nilpotent_rep(G2Orbit::A1);
        assert_eq!(m.adjoint_partition_direct(&a1, Mode::Nilpotent).unwrap(), part(&[3, 2, 2, 2, 2, 1, 1, 1]));
        let zero = Matrix::zeros(m.field(), 7, 7);
        assert_eq!(m.adjoint_partition_direct(&zero, Mode::Nilpotent).unwrap(), Partition::repeated(1, 14));
        let outside = m.three_component_element();
        assert_eq!(m.adjoint_partition_direct(&outside, Mode::Nilpotent), Err(Error::DoesNotStabilize));

        let m7 = build_so7_model(7).unwrap();
        let u = m7.unipotent_rep(G2Orbit::G2reg).unwrap();
        assert_eq!(m7.adjoint_partition_direct(&u, Mode::Unipotent).unwrap(), part(&[7, 7]));
    }

    #[test]
    fn wedge_examples() {
        let m5 = build_so7_model(5).unwrap();
        assert_eq!(m5.wedge_route_adjoint(&m5.nilpotent_rep(G2Orbit::G2a1), Mode::Nilpotent).unwrap(), part(&[5, 3, 3, 3]));
        assert_eq!(m5.wedge_route_adjoint(&m5.nilpotent_rep(G2Orbit::G2reg), Mode::Nilpotent).unwrap(), part(&[11, 3]));
        let m7 = build_so7_model(7).unwrap();
        assert_eq!(m7.wedge_route_adjoint(&m7.nilpotent_rep(G2Orbit::A1tilde), Mode::Nilpotent).unwrap(), part(&[4, 4, 3, 1, 1, 1]));
    }

    #[test]
    fn table_rows_serialize() {
        let t = g2_table(7).unwrap();
        assert!(t.all_match(), "{t:#?}");
        let row = serde_json::to_value(&t.rows[3]).unwrap();
        assert_eq!(row["orbit"], "G2reg");
        assert_eq!(row["adjoint_nilpotent"], serde_json::json!([7, 7]));
    }
}
