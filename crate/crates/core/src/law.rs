//! One-dimensional formal group laws and generalized two-variable laws.
//!
//! A law is a bivariate series `F(u,v) = sum c_ab u^a v^b` known up to a
//! total-degree `precision` (or exactly, for the polynomial built-ins).
//! Substituting commuting nilpotents into a law only ever touches finitely
//! many coefficients, so a truncated law gives exact results as long as its
//! precision covers the operands' nilpotency degrees.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::series::TruncatedPoly;

/// Bivariate series with zero constant term and invertible linear part
/// `xi1 * u + xi2 * v`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedLaw<F: Field> {
    field: F,
    precision: Option<usize>,
    coeffs: BTreeMap<(usize, usize), F::Elem>,
}

impl<F: Field> GeneralizedLaw<F> {
    /// `precision = None` declares the coefficients to be a complete polynomial.
    pub fn new(field: &F, precision: Option<usize>, coeffs: impl IntoIterator<Item = ((usize, usize), F::Elem)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((a, b), c) in coeffs {
            if field.is_zero(&c) {
                continue;
            }
            if a + b == 0 {
                return Err(Error::InvalidLaw("nonzero constant term".into()));
            }
            if let Some(n) = precision {
                if a + b > n {
                    return Err(Error::InvalidLaw(format!("coefficient of u^{a} v^{b} lies beyond precision {n}")));
                }
            }
            map.insert((a, b), c);
        }
        if precision == Some(0) {
            return Err(Error::InvalidLaw("precision must be at least 1".into()));
        }
        let law = Self { field: field.clone(), precision, coeffs: map };
        if law.field.is_zero(&law.xi1()) || law.field.is_zero(&law.xi2()) {
            return Err(Error::ZeroLinearScalar);
        }
        Ok(law)
    }

    pub fn additive(field: &F) -> Self {
        Self::new(field, None, [((1, 0), field.one()), ((0, 1), field.one())]).expect("valid")
    }

    /// `u + v + c uv`; `c = 0` is the additive law.
    pub fn scaled_multiplicative(field: &F, c: F::Elem) -> Self {
        Self::new(field, None, [((1, 0), field.one()), ((0, 1), field.one()), ((1, 1), c)]).expect("valid")
    }

    pub fn multiplicative(field: &F) -> Self {
        Self::scaled_multiplicative(field, field.one())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn precision(&self) -> Option<usize> {
        self.precision
    }

    pub fn coeff(&self, a: usize, b: usize) -> F::Elem {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn xi1(&self) -> F::Elem {
        self.coeff(1, 0)
    }

    pub fn xi2(&self) -> F::Elem {
        self.coeff(0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &F::Elem)> {
        self.coeffs.iter()
    }

    /// Fails unless every coefficient of total degree `<= needed` is known.
    pub fn ensure_precision(&self, needed: usize) -> Result<()> {
        match self.precision {
            Some(n) if n < needed => Err(Error::TruncationTooShort { needed, available: n }),
            _ => Ok(()),
        }
    }

    /// The law as an element of `k[u,v]/(u^r1, v^r2)`.
    pub fn to_series(&self, r1: usize, r2: usize) -> TruncatedPoly<F> {
        TruncatedPoly::from_terms(&self.field, &[r1, r2], self.coeffs.iter().map(|(&(a, b), c)| (vec![a, b], c.clone())))
    }

    /// `F(g1, g2)` for two elements of a truncated algebra with zero constant term.
    pub fn evaluate(&self, g1: &TruncatedPoly<F>, g2: &TruncatedPoly<F>) -> Result<TruncatedPoly<F>> {
        let n1 = g1.nilpotency().ok_or(Error::NonzeroConstantTerm)?;
        let n2 = g2.nilpotency().ok_or(Error::NonzeroConstantTerm)?;
        self.ensure_precision((n1 + n2).saturating_sub(2))?;
        self.to_series(n1.max(1), n2.max(1)).substitute(&[g1.clone(), g2.clone()])
    }

    /// `F(g1, g2)` keeping only total degree `<= max_degree`; needs precision `>= max_degree`.
    pub fn evaluate_graded(&self, g1: &TruncatedPoly<F>, g2: &TruncatedPoly<F>, max_degree: usize) -> Result<TruncatedPoly<F>> {
        self.ensure_precision(max_degree)?;
        let r = max_degree + 1;
        self.to_series(r, r).drop_above_degree(max_degree).substitute_graded(&[g1.clone(), g2.clone()], max_degree)
    }

    /// Stable hash of the coefficient data, used to key memo tables.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.characteristic().hash(&mut h);
        self.precision.hash(&mut h);
        for (k, c) in &self.coeffs {
            k.hash(&mut h);
            self.field.format(c).hash(&mut h);
        }
        h.finish()
    }

    /// Human-readable form, e.g. `u + v + 3uv`.
    pub fn describe(&self) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (&(a, b), c) in &self.coeffs {
            let mono = match (a, b) {
                (0, _) => var_pow("v", b),
                (_, 0) => var_pow("u", a),
                _ => format!("{}{}", var_pow("u", a), var_pow("v", b)),
            };
            if f.is_one(c) {
                parts.push(mono);
            } else {
                parts.push(format!("{}{}", f.format(c), mono));
            }
        }
        let tail = match self.precision {
            Some(n) => format!(" + O(deg {})", n + 1),
            None => String::new(),
        };
        format!("{}{}", parts.join(" + "), tail)
    }

    pub fn to_file(&self) -> LawFile {
        LawFile {
            p: self.field.characteristic(),
            trunc: self.precision.unwrap_or_else(|| self.coeffs.keys().map(|(a, b)| a + b).max().unwrap_or(1)),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(a, b), c)| CoeffEntry { a, b, c: CoeffValue::Text(self.field.format(c)) })
                .collect(),
        }
    }

    /// Load from the JSON law-file schema. The linear part defaults to `u + v`
    /// unless the file lists `a=1,b=0` or `a=0,b=1` explicitly.
    pub fn from_file(field: &F, file: &LawFile) -> Result<Self> {
        if file.p != field.characteristic() {
            return Err(Error::InvalidLaw(format!(
                "law file is for characteristic {}, working in characteristic {}",
                file.p,
                field.characteristic()
            )));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 0), field.one());
        coeffs.insert((0, 1), field.one());
        for e in &file.coeffs {
            coeffs.insert((e.a, e.b), e.c.to_elem(field)?);
        }
        Self::new(field, Some(file.trunc), coeffs)
    }

    pub fn load(field: &F, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: LawFile = serde_json::from_str(&text)?;
        Self::from_file(field, &file)
    }
}

fn var_pow(v: &str, k: usize) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}

/// Outcome of checking the formal group law axioms up to a total degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub degree: usize,
    pub linear_part: bool,
    pub unit: bool,
    pub commutative: bool,
    pub associative: bool,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.linear_part && self.unit && self.commutative && self.associative
    }
}

/// Check `F = u + v mod deg 2`, `F(u,0) = u`, `F(0,v) = v`, `F(u,v) = F(v,u)` and
/// `F(F(u,v),w) = F(u,F(v,w))`.
///
/// A truncated law is checked modulo total degree `> min(degree, precision)`.
/// A polynomial law is checked exactly: both sides of associativity are
/// expanded in full and `degree` is ignored.
pub fn validate_fgl<F: Field>(law: &GeneralizedLaw<F>, degree: usize) -> ValidationReport {
    let f = law.field();
    let degree = match law.precision() {
        Some(n) => degree.min(n),
        None => {
            let d = law.terms().map(|(&(a, b), _)| a + b).max().unwrap_or(1);
            d * d
        }
    };
    let mut failures = Vec::new();

    let linear_part = f.is_one(&law.xi1()) && f.is_one(&law.xi2());
    if !linear_part {
        failures.push(format!("linear part is {}u + {}v", f.format(&law.xi1()), f.format(&law.xi2())));
    }

    let mut unit = true;
    for (&(a, b), c) in law.terms() {
        if a + b > degree || a + b < 2 {
            continue;
        }
        if b == 0 || a == 0 {
            unit = false;
            let (x, k) = if b == 0 { ("u", a) } else { ("v", b) };
            failures.push(format!("unit axiom: coefficient {} on {}", f.format(c), var_pow(x, k)));
        }
    }

    let mut commutative = true;
    for (&(a, b), c) in law.terms() {
        if a + b <= degree && law.coeff(b, a) != *c {
            commutative = false;
            failures.push(format!("commutativity: c[{a},{b}] != c[{b},{a}]"));
            break;
        }
    }

    let associative = match associativity_defect(law, degree) {
        Ok(defect) if defect.is_zero() => true,
        Ok(defect) => {
            let (e, c) = defect.terms().next().expect("nonzero defect");
            failures.push(format!("associativity: defect {} at u^{} v^{} w^{}", f.format(c), e[0], e[1], e[2]));
            false
        }
        Err(e) => {
            failures.push(format!("associativity: {e}"));
            false
        }
    };

    ValidationReport { degree, linear_part, unit, commutative, associative, failures }
}

/// `F(F(u,v),w) - F(u,F(v,w))` modulo total degree `> degree`.
fn associativity_defect<F: Field>(law: &GeneralizedLaw<F>, degree: usize) -> Result<TruncatedPoly<F>> {
    let f = law.field();
    let t = [degree + 1; 3];
    let u = TruncatedPoly::var(f, &t, 0);
    let v = TruncatedPoly::var(f, &t, 1);
    let w = TruncatedPoly::var(f, &t, 2);
    let left = law.evaluate_graded(&law.evaluate_graded(&u, &v, degree)?, &w, degree)?;
    let right = law.evaluate_graded(&u, &law.evaluate_graded(&v, &w, degree)?, degree)?;
    left.sub(&right)
}

/// A [`GeneralizedLaw`] that passed [`validate_fgl`].
#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw<F: Field>(GeneralizedLaw<F>);

impl<F: Field> FormalGroupLaw<F> {
    pub fn new(law: GeneralizedLaw<F>) -> Result<Self> {
        let report = validate_fgl(&law, law.precision().unwrap_or(0));
        if report.is_valid() {
            Ok(Self(law))
        } else {
            Err(Error::InvalidLaw(report.failures.join("; ")))
        }
    }

    pub fn additive(field: &F) -> Self {
        Self(GeneralizedLaw::additive(field))
    }

    pub fn multiplicative(field: &F) -> Self {
        Self(GeneralizedLaw::multiplicative(field))
    }

    pub fn scaled_multiplicative(field: &F, c: F::Elem) -> Self {
        Self(GeneralizedLaw::scaled_multiplicative(field, c))
    }

    pub fn law(&self) -> &GeneralizedLaw<F> {
        &self.0
    }

    pub fn into_law(self) -> GeneralizedLaw<F> {
        self.0
    }
}

impl<F: Field> std::ops::Deref for FormalGroupLaw<F> {
    type Target = GeneralizedLaw<F>;
    fn deref(&self) -> &GeneralizedLaw<F> {
        &self.0
    }
}

/// The m-fold tensor series: `Y_1`, then `F(prev, Y_k)`, in `k[[Y]]/(Y_i^{r_i})`.
pub fn iterated_tensor_series<F: Field>(law: &GeneralizedLaw<F>, m: usize, trunc: &[usize]) -> Result<TruncatedPoly<F>> {
    if m == 0 || trunc.len() != m {
        return Err(Error::ShapeMismatch(format!("need {m} truncation entries, got {}", trunc.len())));
    }
    law.ensure_precision(trunc.iter().map(|r| r - 1).sum())?;
    let f = law.field();
    let mut acc = TruncatedPoly::var(f, trunc, 0);
    for k in 1..m {
        acc = law.evaluate(&acc, &TruncatedPoly::var(f, trunc, k))?;
    }
    Ok(acc)
}

/// Random law with nonzero random `xi1, xi2` and random higher coefficients up
/// to total degree `precision`; deterministic in `seed`.
pub fn random_generalized_law<F: Field>(seed: u64, precision: usize, field: &F) -> GeneralizedLaw<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi1 = field.random_nonzero(&mut rng);
    let xi2 = field.random_nonzero(&mut rng);
    random_higher_terms(&mut rng, xi1, xi2, precision, field)
}

/// As [`random_generalized_law`] but with linear part exactly `u + v`.
/// Such laws are generally neither commutative nor associative.
pub fn random_law_unit_linear<F: Field>(seed: u64, precision: usize, field: &F) -> GeneralizedLaw<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_higher_terms(&mut rng, field.one(), field.one(), precision, field)
}

fn random_higher_terms<F: Field>(rng: &mut ChaCha8Rng, xi1: F::Elem, xi2: F::Elem, precision: usize, field: &F) -> GeneralizedLaw<F> {
    let mut coeffs = vec![((1, 0), xi1), ((0, 1), xi2)];
    for d in 2..=precision {
        for a in 0..=d {
            coeffs.push(((a, d - a), field.random(rng)));
        }
    }
    GeneralizedLaw::new(field, Some(precision.max(1)), coeffs).expect("linear part is nonzero")
}

/// Random formal group law `g^{-1}(B(g(u), g(v)))`, where `B` is the additive
/// law or `u + v + c uv` with random `c`, and `g(t) = t + ...` is a random
/// change of coordinates. The result satisfies every axiom exactly.
pub fn random_formal_group_law<F: Field>(seed: u64, precision: usize, field: &F) -> FormalGroupLaw<F> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = if rng.gen_bool(0.5) {
        GeneralizedLaw::additive(field)
    } else {
        GeneralizedLaw::scaled_multiplicative(field, field.random_nonzero(&mut rng))
    };
    let n = precision.max(1);
    let mut g_coeffs = vec![field.zero(), field.one()];
    for _ in 2..=n {
        g_coeffs.push(field.random(&mut rng));
    }
    let g = TruncatedPoly::univariate(field, n + 1, &g_coeffs);
    let g_inv = g.compose_inverse().expect("g(t) = t + ... is invertible");

    let t = [n + 1, n + 1];
    let u = TruncatedPoly::var(field, &t, 0);
    let v = TruncatedPoly::var(field, &t, 1);
    let gu = g.substitute_graded(std::slice::from_ref(&u), n).expect("zero constant term");
    let gv = g.substitute_graded(std::slice::from_ref(&v), n).expect("zero constant term");
    let inner = base.evaluate_graded(&gu, &gv, n).expect("polynomial base law");
    let conj = g_inv.substitute_graded(std::slice::from_ref(&inner), n).expect("zero constant term");
    let coeffs: Vec<_> = conj.terms().map(|(e, c)| ((e[0], e[1]), c.clone())).collect();
    let law = GeneralizedLaw::new(field, Some(n), coeffs).expect("linear part u + v");
    FormalGroupLaw::new(law).expect("conjugate of a formal group law is a formal group law")
}

/// JSON law file: `{"p": 5, "trunc": 4, "coeffs": [{"a":1,"b":1,"c":"1"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawFile {
    pub p: u64,
    pub trunc: usize,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub a: usize,
    pub b: usize,
    pub c: CoeffValue,
}

/// Coefficients may be written as JSON strings (`"1/2"`) or integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffValue {
    Int(i64),
    Text(String),
}

impl CoeffValue {
    fn to_elem<F: Field>(&self, field: &F) -> Result<F::Elem> {
        match self {
            CoeffValue::Int(n) => Ok(field.from_i64(*n)),
            CoeffValue::Text(s) => field.parse(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn builtin_laws() {
        let q = Rationals;
        let a = GeneralizedLaw::additive(&q);
        assert_eq!(a.terms().count(), 2);
        assert!(q.is_one(&a.coeff(1, 0)) && q.is_one(&a.coeff(0, 1)));
        let m = GeneralizedLaw::multiplicative(&q);
        assert!(q.is_one(&m.coeff(1, 1)));
        assert_eq!(m.describe(), "v + u + uv");
        assert_eq!(GeneralizedLaw::scaled_multiplicative(&q, q.zero()), a);
    }

    #[test]
    fn scaled_multiplicative_passes_axioms() {
        let f5 = PrimeField::new(5).unwrap();
        let law = GeneralizedLaw::scaled_multiplicative(&f5, 3);
        let report = validate_fgl(&law, 6);
        assert!(report.is_valid(), "{:?}", report.failures);
        assert!(FormalGroupLaw::new(law).is_ok());
    }

    #[test]
    fn unit_axiom_failure() {
        let q = Rationals;
        let law = GeneralizedLaw::new(&q, None, [((1, 0), q.one()), ((0, 1), q.one()), ((2, 0), q.one())]).unwrap();
        let report = validate_fgl(&law, 4);
        assert!(!report.unit);
        assert!(!report.commutative);
        assert!(matches!(FormalGroupLaw::new(law), Err(Error::InvalidLaw(_))));
    }

    #[test]
    fn quartic_perturbation_breaks_associativity_in_char_2() {
        // The two sides differ by u^2 v^2 w + u v^2 w^2 (checked by hand).
        let f2 = PrimeField::new(2).unwrap();
        let law = GeneralizedLaw::new(&f2, None, [((1, 0), 1), ((0, 1), 1), ((1, 1), 1), ((2, 2), 1)]).unwrap();
        let report = validate_fgl(&law, 4);
        assert!(report.unit && report.commutative);
        assert!(!report.associative);
        assert!(report.failures[0].contains("u^1 v^2 w^2") || report.failures[0].contains("u^2 v^2 w^1"));

        // As a degree-4 jet the same coefficients are fine: the defect sits in degree 5.
        let jet = GeneralizedLaw::new(&f2, Some(4), law.terms().map(|(k, c)| (*k, *c))).unwrap();
        assert!(validate_fgl(&jet, 4).associative);
    }

    #[test]
    fn iterated_series() {
        let q = Rationals;
        let t = [3, 3, 3];
        let add = iterated_tensor_series(&GeneralizedLaw::additive(&q), 3, &t).unwrap();
        let want = crate::series::elementary_symmetric(&q, &t, 1);
        assert_eq!(add, want);

        let mul2 = iterated_tensor_series(&GeneralizedLaw::multiplicative(&q), 2, &[3, 3]).unwrap();
        assert_eq!(mul2, GeneralizedLaw::multiplicative(&q).to_series(3, 3));

        // (1+Y1)(1+Y2)(1+Y3) - 1
        let mul3 = iterated_tensor_series(&GeneralizedLaw::multiplicative(&q), 3, &t).unwrap();
        let mut expect = TruncatedPoly::zero(&q, &t);
        for j in 1..=3 {
            expect = expect.add(&crate::series::elementary_symmetric(&q, &t, j)).unwrap();
        }
        assert_eq!(mul3, expect);
        assert!(mul3.is_symmetric());
    }

    #[test]
    fn iterated_series_needs_precision() {
        let f5 = PrimeField::new(5).unwrap();
        let law = random_formal_group_law(3, 4, &f5);
        assert!(iterated_tensor_series(&law, 2, &[3, 3]).is_ok());
        assert_eq!(
            iterated_tensor_series(&law, 3, &[3, 3, 3]).map(|_| ()),
            Err(Error::TruncationTooShort { needed: 6, available: 4 })
        );
    }

    #[test]
    fn random_laws_are_deterministic() {
        let f3 = PrimeField::new(3).unwrap();
        let a = random_generalized_law(17, 5, &f3);
        assert_eq!(a, random_generalized_law(17, 5, &f3));
        assert!([1, 2].contains(&a.xi1()) && [1, 2].contains(&a.xi2()));
        assert_ne!(a, random_generalized_law(18, 5, &f3));
        // no higher coefficients and unit linear part: the additive law
        let flat = random_law_unit_linear(5, 1, &f3);
        assert_eq!(flat.to_series(4, 4), GeneralizedLaw::additive(&f3).to_series(4, 4));
    }

    #[test]
    fn random_formal_group_laws_are_valid() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for seed in 0..5 {
                let law = random_formal_group_law(seed, 6, &f);
                assert!(validate_fgl(&law, 6).is_valid());
                let s = iterated_tensor_series(&law, 3, &[3, 3, 3]).unwrap();
                assert!(s.is_symmetric());
            }
        }
    }

    #[test]
    fn law_file_roundtrip_and_defaults() {
        let f5 = PrimeField::new(5).unwrap();
        let text = r#"{"p": 5, "trunc": 3, "coeffs": [{"a": 1, "b": 1, "c": "3"}, {"a": 2, "b": 1, "c": 2}]}"#;
        let file: LawFile = serde_json::from_str(text).unwrap();
        let law = GeneralizedLaw::from_file(&f5, &file).unwrap();
        assert_eq!(law.xi1(), 1);
        assert_eq!(law.coeff(1, 1), 3);
        assert_eq!(law.coeff(2, 1), 2);
        assert_eq!(GeneralizedLaw::from_file(&f5, &law.to_file()).unwrap(), law);

        let wrong_p = LawFile { p: 7, ..file };
        assert!(matches!(GeneralizedLaw::from_file(&f5, &wrong_p), Err(Error::InvalidLaw(_))));
    }
}
