//! Randomized invariants: algebraic identities that must hold for every
//! admissible parameter choice, exercised away from the tabled sweeps.
//! Reversed specs are drawn here too, which the acceptance sweeps skip.

use num_traits::Signed;
use proptest::prelude::*;
use spaceform_core::eta::{eta_bruteforce, eta_closed};
use spaceform_core::exactnum::{gcd, mod_inverse, rational, sawtooth, to_f64};
use spaceform_core::groups::{closure_of, generators, Family, GroupElement, GroupSpec, Quat};
use spaceform_core::hj::{hj_expand, CyclicType};

fn coprime_pair(max_p: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max_p).prop_flat_map(|p| {
        (1..p)
            .prop_filter("coprime", move |q| gcd(*q, p) == 1)
            .prop_map(move |q| (q, p))
    })
}

/// Valid specs of modest order, reversed or not, from all seven families.
fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    let family = prop_oneof![
        coprime_pair(200).prop_map(|(q, p)| Family::Cyclic { q, p }),
        (1..50i64, 1..50i64).prop_map(|(m, n)| Family::DihedralProduct { m, n }),
        (1..16i64).prop_map(|m| Family::TetrahedralProduct { m }),
        (1..8i64).prop_map(|m| Family::OctahedralProduct { m }),
        (1..4i64).prop_map(|m| Family::IcosahedralProduct { m }),
        (1..50i64, 1..50i64).prop_map(|(m, n)| Family::IndexTwoDiagonal { m, n }),
        (1..16i64).prop_map(|m| Family::IndexThreeDiagonal { m }),
    ];
    (family, any::<bool>())
        .prop_map(|(family, reversed)| GroupSpec { family, reversed })
        .prop_filter("valid spec of modest order", |s| {
            s.validate() && s.order().is_ok_and(|o| o <= 400)
        })
}

fn unit_quat() -> impl Strategy<Value = Quat> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from the origin", |c| {
            (c.iter().map(|x| x * x).sum::<f64>()).sqrt() > 0.3
        })
        .prop_map(|[w, x, y, z]| {
            let n = (w * w + x * x + y * y + z * z).sqrt();
            Quat::new(w / n, x / n, y / n, z / n)
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn hj_string_reconstructs_its_type((q, p) in coprime_pair(2000)) {
        let string = hj_expand(&CyclicType::new(q, p).unwrap()).unwrap();
        prop_assert!(string.coefficients().iter().all(|&e| e >= 2));
        prop_assert_eq!(string.continued_fraction(), rational(p, q));
    }

    #[test]
    fn cyclic_type_reduces_mod_p((q, p) in coprime_pair(500), k in -3i64..4) {
        let shifted = CyclicType::new(q + k * p, p).unwrap();
        prop_assert_eq!(shifted, CyclicType::new(q, p).unwrap());
    }

    #[test]
    fn sawtooth_identities(num in -5000i64..5000, den in 1i64..200) {
        let x = rational(num, den);
        let one = rational(1, 1);
        prop_assert_eq!(sawtooth(&(x.clone() + one)), sawtooth(&x));
        prop_assert_eq!(sawtooth(&(-x.clone())), -sawtooth(&x));
        let half = rational(1, 2);
        prop_assert!(sawtooth(&x).abs() <= half);
        prop_assert_eq!(sawtooth(&rational(num, 1)), rational(0, 1));
    }

    #[test]
    fn inverse_mod_p_is_an_inverse((q, p) in coprime_pair(100_000)) {
        let inv = mod_inverse(q, p).unwrap();
        prop_assert!((1..=p).contains(&inv));
        prop_assert_eq!((q % p) * inv % p, 1 % p);
    }

    #[test]
    fn reversal_is_an_involution(s in spec_strategy()) {
        prop_assert_eq!(s.reverse().reverse().normalized(), s.normalized());
        prop_assert_eq!(s.reverse().order().unwrap(), s.order().unwrap());
        // reversal moves a group out of SU(2) in general (L(p-1,p) goes to
        // L(1,p)); only renaming the spec must not
        prop_assert_eq!(s.normalized().is_in_su2(), s.is_in_su2());
    }

    #[test]
    fn eta_is_antisymmetric_under_reversal(s in spec_strategy()) {
        prop_assert_eq!(eta_closed(&s.reverse()).unwrap(), -eta_closed(&s).unwrap());
    }

    #[test]
    fn canonical_representative_ignores_the_double_cover_sign(
        a in unit_quat(),
        b in unit_quat(),
    ) {
        let g = GroupElement::new(a, b);
        let h = GroupElement::new(a.neg(), b.neg());
        prop_assert_eq!(g.rotation_numbers(), h.rotation_numbers());
    }

    #[test]
    fn compose_with_inverse_is_identity(a in unit_quat(), b in unit_quat()) {
        let g = GroupElement::new(a, b);
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert!(g.inverse().compose(&g).is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(64)
    })]

    // random here covers the reversed brute-force path the sweeps skip
    #[test]
    fn brute_eta_matches_closed_form(s in spec_strategy()) {
        let closed = to_f64(&eta_closed(&s).unwrap());
        let brute = eta_bruteforce(&s).unwrap();
        prop_assert!((closed - brute).abs() < 1e-8, "{} vs {}", closed, brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(48)
    })]

    #[test]
    fn enumeration_is_closed_under_products(
        s in spec_strategy().prop_filter("small", |s| s.order().unwrap() <= 120),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let gens = generators(&s).unwrap();
        let elements = closure_of(&gens, 2000).unwrap();
        prop_assert_eq!(elements.len() as i64, s.order().unwrap());
        let product = elements[i.index(elements.len())]
            .compose(&elements[j.index(elements.len())]);
        let mut extended = gens;
        extended.push(product);
        prop_assert_eq!(closure_of(&extended, 2000).unwrap().len(), elements.len());
    }
}
