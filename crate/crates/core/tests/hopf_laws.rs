use proptest::prelude::*;

use hopf_core::algebra::{Monomial, Tensor};
use hopf_core::dual::Functional;
use hopf_core::hopf::{HopfSchema, SchemaData};
use hopf_core::instances::{load_schema_str, rooted_tree_schema, schema_to_json};
use hopf_core::json::{element_from_json, element_to_json, functional_from_json, functional_to_json};
use hopf_core::parse::parse_element;
use hopf_core::random::Sampler;
use hopf_core::ring::{Laurent, Rational};
use hopf_core::QElement;

fn schemas() -> Vec<HopfSchema> {
    vec![HopfSchema::ladder(), rooted_tree_schema(5).unwrap()]
}

fn element(schema: &HopfSchema, seed: u64, degree: u32) -> QElement {
    Sampler::new(seed, "hopf-laws").element(schema, degree, 4).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_and_antipode_are_multiplicative(seed in any::<u64>()) {
        for s in schemas() {
            let h = element(&s, seed, 2);
            let k = element(&s, seed.wrapping_add(1), 3);
            let hk = &h * &k;
            let lhs = s.coproduct(&hk).unwrap();
            let rhs = s.coproduct(&h).unwrap().mul(&s.coproduct(&k).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            // commutative, so anti-multiplicative is multiplicative
            prop_assert_eq!(s.antipode(&hk).unwrap(), &s.antipode(&h).unwrap() * &s.antipode(&k).unwrap());
        }
    }

    #[test]
    fn antipode_inverts_the_identity(seed in any::<u64>()) {
        for s in schemas() {
            let h = element(&s, seed, 5);
            let mut acc = QElement::zero();
            for (legs, c) in s.coproduct(&h).unwrap().terms() {
                let left = s.antipode(&QElement::monomial(legs[0].clone())).unwrap();
                acc = &acc + &(&left * &QElement::monomial(legs[1].clone())).scale(c);
            }
            prop_assert_eq!(acc, QElement::constant(h.counit()));
            prop_assert_eq!(s.antipode(&s.antipode(&h).unwrap()).unwrap(), h);
        }
    }

    #[test]
    fn elements_round_trip_through_json_and_text(seed in any::<u64>()) {
        for s in schemas() {
            let h = element(&s, seed, 5);
            let back: QElement = element_from_json(&s, &element_to_json(&h)).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(parse_element(&s, &h.to_string()).unwrap(), h);
        }
    }

    #[test]
    fn laurent_characters_round_trip(seed in any::<u64>(), truncation in prop::option::of(0i32..6)) {
        let s = HopfSchema::ladder();
        let phi = Sampler::new(seed, "json").laurent_character(&s, 4, 2, truncation).unwrap();
        let back: Functional<Laurent<Rational>> = functional_from_json(&s, &functional_to_json(&phi)).unwrap();
        prop_assert_eq!(back, phi);
    }
}

#[test]
fn serialized_schemas_reload_with_the_same_coproduct() {
    for s in schemas() {
        let data = SchemaData::from_schema(&s, 5).unwrap();
        let text = serde_json::to_string(&schema_to_json(&data)).unwrap();
        let reloaded = load_schema_str(&text).unwrap();
        for m in s.basis_up_to(5).unwrap() {
            let renamed = rename(&reloaded, &m);
            let a: Tensor<Rational> = (*s.coproduct_monomial(&m).unwrap()).clone();
            let b = (*reloaded.coproduct_monomial(&renamed).unwrap()).clone();
            assert_eq!(a.to_string(), b.to_string(), "{m}");
            assert_eq!(
                s.antipode_monomial(&m).unwrap().to_string(),
                reloaded.antipode_monomial(&renamed).unwrap().to_string()
            );
        }
    }
}

fn rename(schema: &HopfSchema, m: &Monomial) -> Monomial {
    let e = parse_element(schema, &m.to_string()).unwrap();
    let m = e.terms().next().map(|(m, _)| m.clone()).unwrap_or_else(Monomial::one);
    m
}

#[test]
fn primitives_of_the_ladder_are_one_per_degree() {
    let s = HopfSchema::ladder();
    for d in 1..=5 {
        assert_eq!(
            hopf_core::hopf::verify::primitives(&s, d).unwrap().len(),
            1,
            "degree {d}"
        );
    }
}
