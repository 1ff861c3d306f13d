use proptest::prelude::*;

use jblocks_core::char0::predict_blocks;
use jblocks_core::jordan::{jordan_partition, nilpotent_from_partition};
use jblocks_core::law::{random_formal_group_law, random_generalized_law, validate_fgl};
use jblocks_core::multilinear::{sym_partition, wedge_partition};
use jblocks_core::registry::resolve_law;
use jblocks_core::ring::{cg_tensor, ring_multiply, tensor_class};
use jblocks_core::tensor::tensor_partition;
use jblocks_core::{Field, FormalGroupLaw, GeneralizedLaw, Partition, PrimeField, Rationals, RingElement, TruncatedPoly};

fn partition(max_part: usize, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 1..=max_len).prop_map(Partition::from_unsorted)
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partition_text_roundtrip(lambda in partition(9, 6)) {
        let back: Partition = lambda.to_string().parse().unwrap();
        prop_assert_eq!(back, lambda.clone());
        let json = serde_json::to_string(&lambda).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), lambda);
    }

    #[test]
    fn jordan_form_recovers_blocks(lambda in partition(8, 4), p in small_prime()) {
        let f = PrimeField::new(p).unwrap();
        prop_assert_eq!(jordan_partition(&nilpotent_from_partition(&f, &lambda)).unwrap(), lambda);
    }

    #[test]
    fn tensor_is_symmetric_and_conserves_dimension(lambda in partition(5, 3), mu in partition(5, 3), p in small_prime()) {
        let f = PrimeField::new(p).unwrap();
        let add = GeneralizedLaw::additive(&f);
        let a = tensor_partition(&lambda, &mu, &add).unwrap();
        prop_assert_eq!(a.dim(), lambda.dim() * mu.dim());
        prop_assert_eq!(tensor_partition(&mu, &lambda, &add).unwrap(), a);
    }

    #[test]
    fn generalized_laws_agree_with_additive(n in 1usize..7, m in 1usize..7, p in small_prime(), seed in 0u64..1000) {
        let f = PrimeField::new(p).unwrap();
        let law = random_generalized_law(seed, n + m, &f);
        prop_assert_eq!(tensor_class(n, m, &law).unwrap(), tensor_class(n, m, &GeneralizedLaw::additive(&f)).unwrap());
    }

    #[test]
    fn large_characteristic_matches_clebsch_gordan(n in 1usize..8, m in 1usize..8) {
        let f = PrimeField::new(101).unwrap();
        prop_assert_eq!(tensor_class(n, m, &GeneralizedLaw::multiplicative(&f)).unwrap(), cg_tensor(n, m));
    }

    #[test]
    fn random_formal_group_laws_are_valid(seed in 0u64..500, p in small_prime(), precision in 2usize..7) {
        let f = PrimeField::new(p).unwrap();
        let law = random_formal_group_law(seed, precision, &f);
        prop_assert!(validate_fgl(law.law(), precision).is_valid());
    }

    #[test]
    fn power_dimensions(lambda in partition(4, 3), p in prop::sample::select(vec![5u64, 7])) {
        let f = PrimeField::new(p).unwrap();
        let d = lambda.dim();
        let law = random_formal_group_law(3, 2 * d, &f);
        prop_assert_eq!(wedge_partition(&lambda, 2, &law).unwrap().dim(), d * (d - 1) / 2);
        prop_assert_eq!(sym_partition(&lambda, 2, &law).unwrap().dim(), d * (d + 1) / 2);
    }

    #[test]
    fn compositional_inverse_is_two_sided(c in prop::collection::vec(-4i64..5, 4), lead in 1i64..4) {
        let q = Rationals;
        let mut coeffs = vec![q.zero(), q.from_i64(lead)];
        coeffs.extend(c.iter().map(|&x| q.from_i64(x)));
        let f = TruncatedPoly::univariate(&q, 6, &coeffs);
        let g = f.compose_inverse().unwrap();
        let t = TruncatedPoly::var(&q, &[6], 0);
        prop_assert_eq!(f.substitute(std::slice::from_ref(&g)).unwrap(), t.clone());
        prop_assert_eq!(g.substitute(std::slice::from_ref(&f)).unwrap(), t);
        prop_assert_eq!(g.compose_inverse().unwrap(), f);
    }

    #[test]
    fn ring_product_commutes(x in prop::collection::vec((1usize..5, -2i64..3), 1..3),
                             y in prop::collection::vec((1usize..5, -2i64..3), 1..3)) {
        let f = PrimeField::new(3).unwrap();
        let law = FormalGroupLaw::multiplicative(&f);
        let (x, y) = (RingElement::from_terms(x), RingElement::from_terms(y));
        let xy = ring_multiply(&x, &y, &law).unwrap();
        prop_assert_eq!(&xy, &ring_multiply(&y, &x, &law).unwrap());
        prop_assert_eq!(xy.dim(), x.dim() * y.dim());
        let json = serde_json::to_string(&xy).unwrap();
        prop_assert_eq!(serde_json::from_str::<RingElement>(&json).unwrap(), xy);
    }

    #[test]
    fn predicted_blocks_are_odd_and_bounded(exps in prop::collection::vec(1usize..30, 1..6), n in 1usize..30) {
        if let Ok(blocks) = predict_blocks(&exps, n) {
            prop_assert_eq!(blocks.len(), exps.len());
            prop_assert!(blocks.parts().iter().all(|b| b % 2 == 1 && *b <= 2 * n + 1));
        } else {
            prop_assert!(exps.iter().any(|e| e % (n + 1) == 0));
        }
    }
}

#[test]
fn law_specs_resolve() {
    let f = PrimeField::new(7).unwrap();
    for spec in ["additive", "multiplicative", "scaled:3", "random:1", "random-generalized:2", "random-unit:3"] {
        let law = resolve_law(spec, &f, 5).unwrap();
        assert!(!f.is_zero(&law.xi1()), "{spec}");
    }
}

#[test]
fn law_file_roundtrip() {
    let f = PrimeField::new(5).unwrap();
    let law = random_formal_group_law(4, 5, &f).into_law();
    let dir = std::env::temp_dir().join(format!("jblocks-law-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("law.json");
    std::fs::write(&path, serde_json::to_string_pretty(&law.to_file()).unwrap()).unwrap();
    let back = resolve_law(&format!("file:{}", path.display()), &f, 0).unwrap();
    assert_eq!(back, law);
}
