//! Named strategies selected at runtime, e.g. `--law scaled:3` or
//! `--series random:7`. A spec is `name` or `name:arg`.

use std::collections::BTreeMap;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classical::cayley_series;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::law::{random_formal_group_law, random_generalized_law, random_law_unit_linear, GeneralizedLaw};
use crate::series::TruncatedPoly;

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self { kind, entries: BTreeMap::new() }
    }

    pub fn register(&mut self, name: &'static str, strategy: Box<T>) -> &mut Self {
        self.entries.insert(name, strategy);
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| {
            let known: Vec<_> = self.names().collect();
            Error::UnknownStrategy(format!("no {} named {name:?} (known: {})", self.kind, known.join(", ")))
        })
    }

    /// Split `name:arg` and look up `name`.
    pub fn resolve<'a>(&self, spec: &'a str) -> Result<(&T, Option<&'a str>)> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (spec.trim(), None),
        };
        Ok((self.get(name)?, arg))
    }
}

fn need_arg<'a>(name: &str, arg: Option<&'a str>) -> Result<&'a str> {
    arg.filter(|a| !a.is_empty())
        .ok_or_else(|| Error::UnknownStrategy(format!("{name} needs an argument, as in {name}:<value>")))
}

fn no_arg(name: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::UnknownStrategy(format!("{name} takes no argument, got {a:?}"))),
    }
}

fn parse_seed(name: &str, arg: Option<&str>) -> Result<u64> {
    let a = need_arg(name, arg)?;
    a.parse().map_err(|_| Error::Parse(format!("bad seed {a:?}")))
}

/// Produces a law over `F`. Random laws are built to `precision`; polynomial
/// laws ignore it.
pub trait LawStrategy<F: Field>: Send + Sync {
    fn build(&self, field: &F, arg: Option<&str>, precision: usize) -> Result<GeneralizedLaw<F>>;
    fn help(&self) -> &'static str;
}

struct Additive;
struct Multiplicative;
struct Scaled;
struct RandomFgl;
struct RandomGeneralized;
struct RandomUnit;
struct FromFile;

impl<F: Field> LawStrategy<F> for Additive {
    fn build(&self, field: &F, arg: Option<&str>, _: usize) -> Result<GeneralizedLaw<F>> {
        no_arg("additive", arg)?;
        Ok(GeneralizedLaw::additive(field))
    }
    fn help(&self) -> &'static str {
        "u + v"
    }
}

impl<F: Field> LawStrategy<F> for Multiplicative {
    fn build(&self, field: &F, arg: Option<&str>, _: usize) -> Result<GeneralizedLaw<F>> {
        no_arg("multiplicative", arg)?;
        Ok(GeneralizedLaw::multiplicative(field))
    }
    fn help(&self) -> &'static str {
        "u + v + uv"
    }
}

impl<F: Field> LawStrategy<F> for Scaled {
    fn build(&self, field: &F, arg: Option<&str>, _: usize) -> Result<GeneralizedLaw<F>> {
        let c = field.parse(need_arg("scaled", arg)?)?;
        Ok(GeneralizedLaw::scaled_multiplicative(field, c))
    }
    fn help(&self) -> &'static str {
        "scaled:c, u + v + c uv"
    }
}

impl<F: Field> LawStrategy<F> for RandomFgl {
    fn build(&self, field: &F, arg: Option<&str>, precision: usize) -> Result<GeneralizedLaw<F>> {
        Ok(random_formal_group_law(parse_seed("random", arg)?, precision, field).into_law())
    }
    fn help(&self) -> &'static str {
        "random:seed, a seeded formal group law"
    }
}

impl<F: Field> LawStrategy<F> for RandomGeneralized {
    fn build(&self, field: &F, arg: Option<&str>, precision: usize) -> Result<GeneralizedLaw<F>> {
        Ok(random_generalized_law(parse_seed("random-generalized", arg)?, precision, field))
    }
    fn help(&self) -> &'static str {
        "random-generalized:seed, seeded coefficients with nonzero linear part"
    }
}

impl<F: Field> LawStrategy<F> for RandomUnit {
    fn build(&self, field: &F, arg: Option<&str>, precision: usize) -> Result<GeneralizedLaw<F>> {
        Ok(random_law_unit_linear(parse_seed("random-unit", arg)?, precision, field))
    }
    fn help(&self) -> &'static str {
        "random-unit:seed, seeded coefficients with linear part u + v"
    }
}

impl<F: Field> LawStrategy<F> for FromFile {
    fn build(&self, field: &F, arg: Option<&str>, _: usize) -> Result<GeneralizedLaw<F>> {
        GeneralizedLaw::load(field, Path::new(need_arg("file", arg)?))
    }
    fn help(&self) -> &'static str {
        "file:path, a JSON law file"
    }
}

pub fn law_registry<F: Field>() -> Registry<dyn LawStrategy<F>> {
    let mut r: Registry<dyn LawStrategy<F>> = Registry::new("law");
    r.register("additive", Box::new(Additive))
        .register("multiplicative", Box::new(Multiplicative))
        .register("scaled", Box::new(Scaled))
        .register("random", Box::new(RandomFgl))
        .register("random-generalized", Box::new(RandomGeneralized))
        .register("random-unit", Box::new(RandomUnit))
        .register("file", Box::new(FromFile));
    r
}

pub fn resolve_law<F: Field>(spec: &str, field: &F, precision: usize) -> Result<GeneralizedLaw<F>> {
    let registry = law_registry::<F>();
    let (strategy, arg) = registry.resolve(spec)?;
    strategy.build(field, arg, precision)
}

/// Produces a series `eps(t)` in `k[t]/(t^n)` with `eps(0) = 0` and
/// `eps'(0) != 0`.
pub trait SpringerStrategy<F: Field>: Send + Sync {
    fn build(&self, field: &F, arg: Option<&str>, n: usize) -> Result<TruncatedPoly<F>>;
    fn help(&self) -> &'static str;
}

struct IdentitySeries;
struct CayleySeries;
struct ExpSeries;
struct RandomSeries;

impl<F: Field> SpringerStrategy<F> for IdentitySeries {
    fn build(&self, field: &F, arg: Option<&str>, n: usize) -> Result<TruncatedPoly<F>> {
        no_arg("identity", arg)?;
        Ok(TruncatedPoly::univariate(field, n.max(1), &[field.zero(), field.one()]))
    }
    fn help(&self) -> &'static str {
        "eps(t) = t"
    }
}

impl<F: Field> SpringerStrategy<F> for CayleySeries {
    fn build(&self, field: &F, arg: Option<&str>, n: usize) -> Result<TruncatedPoly<F>> {
        no_arg("cayley", arg)?;
        cayley_series(field, n)
    }
    fn help(&self) -> &'static str {
        "(1 - t)(1 + t)^-1 - 1, characteristic not 2"
    }
}

impl<F: Field> SpringerStrategy<F> for ExpSeries {
    fn build(&self, field: &F, arg: Option<&str>, n: usize) -> Result<TruncatedPoly<F>> {
        no_arg("exp", arg)?;
        let p = field.characteristic();
        if p != 0 && n > p as usize {
            return Err(Error::FactorialNotInvertible { n: n - 1, p });
        }
        let coeffs: Vec<F::Elem> = (0..n)
            .map(|i| if i == 0 { field.zero() } else { field.inv(&field.factorial(i)).expect("i < p") })
            .collect();
        Ok(TruncatedPoly::univariate(field, n.max(1), &coeffs))
    }
    fn help(&self) -> &'static str {
        "exp(t) - 1, needs n <= p"
    }
}

impl<F: Field> SpringerStrategy<F> for RandomSeries {
    fn build(&self, field: &F, arg: Option<&str>, n: usize) -> Result<TruncatedPoly<F>> {
        let mut rng = ChaCha8Rng::seed_from_u64(parse_seed("random", arg)?);
        let coeffs: Vec<F::Elem> = (0..n)
            .map(|i| match i {
                0 => field.zero(),
                1 => field.random_nonzero(&mut rng),
                _ => field.random(&mut rng),
            })
            .collect();
        Ok(TruncatedPoly::univariate(field, n.max(1), &coeffs))
    }
    fn help(&self) -> &'static str {
        "random:seed, seeded coefficients with nonzero linear term"
    }
}

pub fn springer_registry<F: Field>() -> Registry<dyn SpringerStrategy<F>> {
    let mut r: Registry<dyn SpringerStrategy<F>> = Registry::new("series");
    r.register("identity", Box::new(IdentitySeries))
        .register("cayley", Box::new(CayleySeries))
        .register("exp", Box::new(ExpSeries))
        .register("random", Box::new(RandomSeries));
    r
}

pub fn resolve_springer<F: Field>(spec: &str, field: &F, n: usize) -> Result<TruncatedPoly<F>> {
    let registry = springer_registry::<F>();
    let (strategy, arg) = registry.resolve(spec)?;
    strategy.build(field, arg, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::law::validate_fgl;

    #[test]
    fn laws_by_name() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(resolve_law("additive", &f5, 4).unwrap(), GeneralizedLaw::additive(&f5));
        assert_eq!(resolve_law("scaled:2", &f5, 4).unwrap(), GeneralizedLaw::scaled_multiplicative(&f5, 2));
        let q = Rationals;
        assert_eq!(resolve_law("multiplicative", &q, 4).unwrap().describe(), GeneralizedLaw::multiplicative(&q).describe());
        let r = resolve_law("random:3", &f5, 6).unwrap();
        assert!(validate_fgl(&r, 6).is_valid());
        assert_eq!(r, resolve_law("random:3", &f5, 6).unwrap());
        let u = resolve_law("random-unit:1", &f5, 5).unwrap();
        assert_eq!((u.xi1(), u.xi2()), (1, 1));
    }

    #[test]
    fn bad_specs() {
        let f5 = PrimeField::new(5).unwrap();
        assert!(matches!(resolve_law("formal", &f5, 4), Err(Error::UnknownStrategy(_))));
        assert!(matches!(resolve_law("scaled", &f5, 4), Err(Error::UnknownStrategy(_))));
        assert!(matches!(resolve_law("additive:1", &f5, 4), Err(Error::UnknownStrategy(_))));
        assert!(matches!(resolve_law("random:x", &f5, 4), Err(Error::Parse(_))));
        assert!(matches!(resolve_law("file:/nonexistent/law.json", &f5, 4), Err(Error::Io(_))));
    }

    #[test]
    fn springer_series() {
        let f5 = PrimeField::new(5).unwrap();
        let t = resolve_springer("identity", &f5, 4).unwrap();
        assert_eq!(t, TruncatedPoly::var(&f5, &[4], 0));
        assert_eq!(resolve_springer("cayley", &f5, 3).unwrap().coeff1(1), 3);
        assert_eq!(resolve_springer("exp", &f5, 3).unwrap().coeff1(2), 3);
        assert!(resolve_springer("exp", &f5, 7).is_err());
        let r = resolve_springer("random:9", &f5, 5).unwrap();
        assert_ne!(r.coeff1(1), 0);
        assert_eq!(springer_registry::<PrimeField>().names().collect::<Vec<_>>(), ["cayley", "exp", "identity", "random"]);
    }
}
