//! Truncated power series: elements of `k[[Y_1..Y_m]] / (Y_1^{r_1}, ..., Y_m^{r_m})`.
//!
//! Coefficients are stored sparsely, keyed by exponent vector. Every binary
//! operation requires both operands to carry the same truncation vector;
//! nothing is ever re-truncated implicitly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedPoly<F: Field> {
    field: F,
    trunc: Vec<usize>,
    terms: BTreeMap<Vec<usize>, F::Elem>,
}

impl<F: Field> TruncatedPoly<F> {
    /// The zero element. Panics on an empty or zero truncation vector.
    pub fn zero(field: &F, trunc: &[usize]) -> Self {
        assert!(!trunc.is_empty() && trunc.iter().all(|&r| r > 0), "truncation must be positive");
        Self { field: field.clone(), trunc: trunc.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, trunc: &[usize], c: F::Elem) -> Self {
        let mut out = Self::zero(field, trunc);
        out.add_term(vec![0; trunc.len()], c);
        out
    }

    pub fn one(field: &F, trunc: &[usize]) -> Self {
        Self::constant(field, trunc, field.one())
    }

    /// The variable `Y_i` (0-based).
    pub fn var(field: &F, trunc: &[usize], i: usize) -> Self {
        let mut e = vec![0; trunc.len()];
        e[i] = 1;
        Self::monomial(field, trunc, e, field.one())
    }

    pub fn monomial(field: &F, trunc: &[usize], exp: Vec<usize>, c: F::Elem) -> Self {
        let mut out = Self::zero(field, trunc);
        out.add_term(exp, c);
        out
    }

    pub fn from_terms(field: &F, trunc: &[usize], terms: impl IntoIterator<Item = (Vec<usize>, F::Elem)>) -> Self {
        let mut out = Self::zero(field, trunc);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Univariate series `sum c_i t^i` in `k[t]/(t^r)`.
    pub fn univariate(field: &F, r: usize, coeffs: &[F::Elem]) -> Self {
        Self::from_terms(field, &[r], coeffs.iter().enumerate().map(|(i, c)| (vec![i], c.clone())))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn trunc(&self) -> &[usize] {
        &self.trunc
    }

    pub fn num_vars(&self) -> usize {
        self.trunc.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<usize>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[usize]) -> F::Elem {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn in_range(&self, exp: &[usize]) -> bool {
        exp.len() == self.trunc.len() && exp.iter().zip(&self.trunc).all(|(a, r)| a < r)
    }

    /// Accumulate `c * Y^exp`; monomials outside the truncation vanish.
    pub fn add_term(&mut self, exp: Vec<usize>, c: F::Elem) {
        assert_eq!(exp.len(), self.trunc.len(), "exponent length");
        if !self.in_range(&exp) || self.field.is_zero(&c) {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot = f.add(slot, &c);
                if f.is_zero(slot) {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.trunc == other.trunc {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("truncation {:?} vs {:?}", self.trunc, other.trunc)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::from_terms(f, &self.trunc, self.terms.iter().map(|(e, x)| (e.clone(), f.mul(c, x))))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.mul_bounded(other, usize::MAX))
    }

    /// Product with every monomial of total degree above `max_degree` discarded.
    pub fn mul_graded(&self, other: &Self, max_degree: usize) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.mul_bounded(other, max_degree))
    }

    fn mul_bounded(&self, other: &Self, max_degree: usize) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, &self.trunc);
        for (ea, ca) in &self.terms {
            let da: usize = ea.iter().sum();
            for (eb, cb) in &other.terms {
                let db: usize = eb.iter().sum();
                if da + db > max_degree {
                    continue;
                }
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if self.in_range(&e) {
                    out.add_term(e, f.mul(ca, cb));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.field, &self.trunc);
        for _ in 0..e {
            acc = acc.mul_bounded(self, usize::MAX);
        }
        acc
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coeff(&vec![0; self.trunc.len()])
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Smallest `k` with `self^k = 0` in the truncated algebra, if any.
    pub fn nilpotency(&self) -> Option<usize> {
        if !self.field.is_zero(&self.constant_term()) {
            return None;
        }
        let bound: usize = self.trunc.iter().map(|r| r - 1).sum::<usize>() + 1;
        let mut power = Self::one(&self.field, &self.trunc);
        for k in 1..=bound {
            power = power.mul_bounded(self, usize::MAX);
            if power.is_zero() {
                return Some(k);
            }
        }
        unreachable!("augmentation ideal is nilpotent")
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        Self::from_terms(
            &self.field,
            &self.trunc,
            self.terms.iter().filter(|(e, _)| e.iter().sum::<usize>() == d).map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn drop_above_degree(&self, d: usize) -> Self {
        Self::from_terms(
            &self.field,
            &self.trunc,
            self.terms.iter().filter(|(e, _)| e.iter().sum::<usize>() <= d).map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Re-embed into another truncation; monomials that no longer fit are dropped.
    pub fn retruncate(&self, trunc: &[usize]) -> Self {
        assert_eq!(trunc.len(), self.trunc.len());
        Self::from_terms(&self.field, trunc, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    /// `Y_i` divides every term.
    pub fn divisible_by_var(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] >= 1)
    }

    /// Action of a permutation `sigma` (with `sigma[i]` the image of `i`):
    /// `Y_i -> Y_{sigma^{-1}(i)}`.
    pub fn act(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.num_vars());
        let mut trunc = vec![0; sigma.len()];
        for j in 0..sigma.len() {
            trunc[j] = self.trunc[sigma[j]];
        }
        Self::from_terms(
            &self.field,
            &trunc,
            self.terms.iter().map(|(e, c)| ((0..e.len()).map(|j| e[sigma[j]]).collect(), c.clone())),
        )
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut sigma: Vec<usize> = (0..self.num_vars()).collect();
        sigma.swap(i, j);
        self.act(&sigma)
    }

    /// Invariance under all permutations of the variables.
    pub fn is_symmetric(&self) -> bool {
        let m = self.num_vars();
        if self.trunc.iter().any(|&r| r != self.trunc[0]) {
            return false;
        }
        (0..m.saturating_sub(1)).all(|i| self.swap_vars(i, i + 1) == *self)
    }

    /// `self(images_1, ..., images_m)`, evaluated in the algebra the images live in.
    ///
    /// Only the stored terms of `self` are used; the caller is responsible for
    /// the images being nilpotent enough that truncated terms would vanish.
    pub fn substitute(&self, images: &[Self]) -> Result<Self> {
        self.substitute_graded(images, usize::MAX)
    }

    /// As [`substitute`](Self::substitute), discarding total degree above `max_degree`.
    pub fn substitute_graded(&self, images: &[Self], max_degree: usize) -> Result<Self> {
        if images.len() != self.num_vars() {
            return Err(Error::ShapeMismatch(format!("{} images for {} variables", images.len(), self.num_vars())));
        }
        let target = images.first().expect("at least one variable");
        for g in images {
            target.same_shape(g)?;
            if !self.field.is_zero(&g.constant_term()) {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        let f = &self.field;
        let mut powers: Vec<Vec<Self>> = images.iter().map(|g| vec![Self::one(f, &g.trunc)]).collect();
        let mut out = Self::zero(f, &target.trunc);
        for (e, c) in &self.terms {
            let mut term = Self::constant(f, &target.trunc, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul_bounded(&images[i], max_degree);
                    powers[i].push(next);
                }
                term = term.mul_bounded(&powers[i][k], max_degree);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    fn require_univariate(&self) -> Result<()> {
        if self.num_vars() == 1 {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("expected a univariate series, got {} variables", self.num_vars())))
        }
    }

    /// Coefficient of `t^i` of a univariate series.
    pub fn coeff1(&self, i: usize) -> F::Elem {
        self.coeff(&[i])
    }

    /// Compositional inverse `g` of a univariate `f` with `f(0) = 0` and invertible
    /// linear coefficient: `f(g(t)) = g(f(t)) = t` modulo the truncation.
    pub fn compose_inverse(&self) -> Result<Self> {
        self.require_univariate()?;
        let f = &self.field;
        if !f.is_zero(&self.constant_term()) {
            return Err(Error::NonzeroConstantTerm);
        }
        let lin_inv = f.inv(&self.coeff1(1)).ok_or(Error::NotInvertibleLinearPart)?;
        let r = self.trunc[0];
        let mut g = Self::zero(f, &self.trunc);
        if r > 1 {
            g.add_term(vec![1], lin_inv.clone());
        }
        for k in 2..r {
            let composed = self.substitute(std::slice::from_ref(&g))?;
            let c = composed.coeff1(k);
            g.add_term(vec![k], f.neg(&f.mul(&c, &lin_inv)));
        }
        Ok(g)
    }

    /// `t - t^2 + 2t^3` style text for a univariate series; `0` when empty.
    pub fn display_univariate(&self, var: &str) -> Result<String> {
        self.require_univariate()?;
        let f = &self.field;
        let mut out = String::new();
        for (e, c) in self.terms() {
            let text = f.format(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let mono = match e[0] {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            let body = match (mag.as_str(), mono.is_empty()) {
                ("1", false) => mono,
                (_, _) => format!("{mag}{mono}"),
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push_str(&format!("-{body}")),
                (true, false) => out.push_str(&body),
                (false, true) => out.push_str(&format!(" - {body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
            }
        }
        Ok(if out.is_empty() { "0".into() } else { out })
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.num_vars(),
            trunc: self.trunc.clone(),
            terms: self.terms.iter().map(|(e, c)| TermJson { exp: e.clone(), c: self.field.format(c) }).collect(),
        }
    }

    pub fn from_json(field: &F, json: &PolyJson) -> Result<Self> {
        if json.vars != json.trunc.len() || json.vars == 0 || json.trunc.contains(&0) {
            return Err(Error::Parse(format!("inconsistent series header: vars={} trunc={:?}", json.vars, json.trunc)));
        }
        let mut out = Self::zero(field, &json.trunc);
        for t in &json.terms {
            if t.exp.len() != json.vars {
                return Err(Error::Parse(format!("exponent {:?} has wrong length", t.exp)));
            }
            if !out.in_range(&t.exp) {
                return Err(Error::Parse(format!("exponent {:?} outside truncation {:?}", t.exp, json.trunc)));
            }
            out.add_term(t.exp.clone(), field.parse(&t.c)?);
        }
        Ok(out)
    }
}

/// Elementary symmetric polynomial `s_j` in `m` variables.
pub fn elementary_symmetric<F: Field>(field: &F, trunc: &[usize], j: usize) -> TruncatedPoly<F> {
    let m = trunc.len();
    let mut out = TruncatedPoly::zero(field, trunc);
    for subset in subsets(m, j) {
        let mut e = vec![0; m];
        for i in subset {
            e[i] = 1;
        }
        out.add_term(e, field.one());
    }
    out
}

/// All `j`-element subsets of `0..m`, in lexicographic order.
pub fn subsets(m: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, j, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub trunc: Vec<usize>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<usize>,
    pub c: String,
}
