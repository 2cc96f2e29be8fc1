//! Eta invariants of the signature complex on the space forms `S³/Γ`.
//!
//! Three independent routes are implemented and cross-checked: the defining
//! cotangent sum over the enumerated group, the closed forms (cyclic case and
//! the non-cyclic `U(2)` table), and, for non-cyclic groups, the orbifold
//! signature route through the weighted projective quotient and its three
//! cyclic curve singularities.

use crate::exactnum::{integer, mod_inverse, rational, Rational};
use crate::groups::{enumerate, Family, GroupSpec, MATCH_TOL};
use crate::hj::{hj_expand, CyclicType};
use crate::topology::quotient_singularities;
use crate::{Error, Result};

/// All eta routes for one group, cross-checkable against each other.
/// `via_quotient` and `a_gamma` are present exactly for the non-cyclic
/// unreversed families, where the quotient construction and the table
/// constant `A_Γ` apply.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaReport {
    pub closed_form: Rational,
    pub brute_force: f64,
    pub via_quotient: Option<Rational>,
    pub a_gamma: Option<Rational>,
}

/// Closed form for lens spaces:
/// `η(L(q,p)) = (1/3)(Σeᵢ + (q⁻¹ + q)/p) − k`, with `q⁻¹` taken mod `p` and
/// `e₁,…,e_k` the modified Euclidean expansion of `p/q`.
pub fn eta_cyclic_closed(t: &CyclicType) -> Result<Rational> {
    if t.p() < 2 {
        return Err(Error::Domain(format!(
            "eta closed form needs p >= 2, got {t}"
        )));
    }
    let s = hj_expand(t)?;
    let qinv = mod_inverse(t.q(), t.p())?;
    Ok(rational(s.sum(), 3) + rational(qinv + t.q(), 3 * t.p()) - integer(s.length()))
}

/// The defining sum `η = (1/|Γ|) Σ_{γ≠Id} cot(r/2)·cot(s/2)` over the
/// enumerated group, with `(r,s)` the rotation numbers of `γ`. Summation
/// order is the deterministic enumeration order, so the float result is
/// reproducible bit for bit.
pub fn eta_bruteforce(spec: &GroupSpec) -> Result<f64> {
    let elements = enumerate(spec)?;
    let mut sum = 0.0;
    for g in &elements {
        if g.is_identity() {
            continue;
        }
        let (r, s) = g.rotation_numbers();
        if r < MATCH_TOL || s < MATCH_TOL {
            return Err(Error::Domain(format!(
                "{spec} does not act freely: a non-identity element fixes a plane"
            )));
        }
        sum += (0.5 * r).cos() / (0.5 * r).sin() * ((0.5 * s).cos() / (0.5 * s).sin());
    }
    Ok(sum / elements.len() as f64)
}

/// The table constant `A_Γ` of the non-cyclic closed form. Keyed by family
/// and the congruence class of `m`; a miss is a hard error because the
/// congruence columns exhaust the valid parameter space.
///
/// The dihedral-type entries are `−η(L(m mod n, n))`; the polyhedral entries
/// pair the congruence `m ≡ +1` with the negative constant, which is the
/// sign forced by agreement with the quotient route (the constant is exactly
/// `−Σᵢ η(L(qᵢ,pᵢ))` over the three curve singularities).
pub fn a_gamma(spec: &GroupSpec) -> Result<Rational> {
    if !spec.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    if spec.reversed {
        return Err(Error::Domain(format!(
            "{spec} is not a subgroup of U(2); A is defined for the unreversed families"
        )));
    }
    let miss = |c: i64, m: i64| Error::TableMiss(format!("A constant for {spec}, m = {m} mod {c}"));
    match spec.family {
        Family::Cyclic { .. } => Err(Error::Domain(format!(
            "{spec} is cyclic; the closed form has no A term"
        ))),
        Family::DihedralProduct { m, n } | Family::IndexTwoDiagonal { m, n } => {
            let t = CyclicType::new(m, n)?;
            if t.is_trivial() {
                Ok(integer(0))
            } else {
                Ok(-eta_cyclic_closed(&t)?)
            }
        }
        Family::TetrahedralProduct { m } => match m % 6 {
            1 => Ok(rational(-4, 9)),
            5 => Ok(rational(4, 9)),
            r => Err(miss(6, r)),
        },
        Family::OctahedralProduct { m } => match m % 12 {
            1 => Ok(rational(-13, 18)),
            5 => Ok(rational(-5, 18)),
            7 => Ok(rational(5, 18)),
            11 => Ok(rational(13, 18)),
            r => Err(miss(12, r)),
        },
        Family::IcosahedralProduct { m } => match m % 30 {
            1 => Ok(rational(-46, 45)),
            7 | 13 => Ok(rational(-2, 9)),
            11 => Ok(rational(-26, 45)),
            17 | 23 => Ok(rational(2, 9)),
            19 => Ok(rational(26, 45)),
            29 => Ok(rational(46, 45)),
            r => Err(miss(30, r)),
        },
        Family::IndexThreeDiagonal { .. } => Ok(integer(0)),
    }
}

/// Exact eta invariant: the cyclic closed form, or
/// `η = (2/3)(2m²+1)/|Γ| − 1 + A_Γ` for the non-cyclic `U(2)` families, or
/// the negation for reversed groups.
pub fn eta_closed(spec: &GroupSpec) -> Result<Rational> {
    if !spec.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    let s = spec.normalized();
    if s.reversed {
        return Ok(-eta_closed(&s.reverse())?);
    }
    if let Family::Cyclic { .. } = s.family {
        let t = s.cyclic_group_type().expect("cyclic family");
        return if t.is_trivial() {
            Ok(integer(0))
        } else {
            eta_cyclic_closed(&t)
        };
    }
    let m = s.m_parameter().expect("non-cyclic family");
    let lead = rational(2, 3) * (integer(2 * m) * integer(m) + integer(1)) / integer(s.order()?);
    Ok(lead - integer(1) + a_gamma(&s)?)
}

/// The orbifold signature route: `η = (1/|Γ̃|)(2m²+1)/(3m) − 1 − Σᵢ η(L(qᵢ,pᵢ))`
/// with `|Γ̃| = |Γ|/(2m)` and the three curve singularities of the weighted
/// projective quotient. Defined for the non-cyclic unreversed families only.
pub fn eta_via_quotient(spec: &GroupSpec) -> Result<Rational> {
    let sing = quotient_singularities(spec)?;
    let m = spec.m_parameter().expect("non-cyclic family");
    let cover_order = spec.order()? / (2 * m);
    let lead =
        (integer(2 * m) * integer(m) + integer(1)) / (integer(3 * m) * integer(cover_order));
    let mut eta = lead - integer(1);
    for t in &sing.curve_singularities {
        if !t.is_trivial() {
            eta -= eta_cyclic_closed(t)?;
        }
    }
    Ok(eta)
}

/// Every route for one spec. The closed and brute-force values are always
/// present; the quotient route and `A_Γ` only when the spec is a non-cyclic
/// unreversed family.
pub fn eta_report(spec: &GroupSpec) -> Result<EtaReport> {
    let closed_form = eta_closed(spec)?;
    let brute_force = eta_bruteforce(spec)?;
    let s = spec.normalized();
    let table_family = !s.reversed && !matches!(s.family, Family::Cyclic { .. });
    let (via_quotient, a) = if table_family {
        (Some(eta_via_quotient(&s)?), Some(a_gamma(&s)?))
    } else {
        (None, None)
    };
    Ok(EtaReport {
        closed_form,
        brute_force,
        via_quotient,
        a_gamma: a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::to_f64;

    fn lens(q: i64, p: i64) -> CyclicType {
        CyclicType::new(q, p).unwrap()
    }

    fn spec(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    #[test]
    fn cyclic_reference_values() {
        assert_eq!(eta_cyclic_closed(&lens(1, 2)).unwrap(), integer(0));
        assert_eq!(eta_cyclic_closed(&lens(1, 3)).unwrap(), rational(2, 9));
        assert_eq!(eta_cyclic_closed(&lens(2, 3)).unwrap(), rational(-2, 9));
        assert_eq!(eta_cyclic_closed(&lens(1, 4)).unwrap(), rational(1, 2));
        assert_eq!(eta_cyclic_closed(&lens(3, 4)).unwrap(), rational(-1, 2));
        for m in 1..=50 {
            assert_eq!(
                eta_cyclic_closed(&lens(1, 2 * m)).unwrap(),
                rational(2 * m * m + 1, 3 * m) - integer(1),
                "L(1,2m) at m={m}"
            );
        }
        for p in 3..=40 {
            assert_eq!(
                eta_cyclic_closed(&lens(p - 1, p)).unwrap(),
                rational(-(p - 1) * (p - 2), 3 * p),
                "L(p-1,p) at p={p}"
            );
        }
    }

    #[test]
    fn cyclic_reversal_antisymmetry() {
        for p in 2..=120 {
            for q in 1..p {
                if crate::exactnum::gcd(q, p) != 1 {
                    continue;
                }
                let a = eta_cyclic_closed(&lens(q, p)).unwrap();
                let b = eta_cyclic_closed(&lens(p - q, p)).unwrap();
                assert_eq!(a, -b, "L({q},{p})");
            }
        }
    }

    #[test]
    fn brute_force_hand_values() {
        // T(1) = T*: 1/12 - 1 - 2*(2/9) summed out of the quotient route.
        assert!((eta_bruteforce(&spec("T(1)")).unwrap() + 49.0 / 36.0).abs() < 1e-10);
        // D(1,2) is the quaternion group Q8.
        assert!((eta_bruteforce(&spec("D(1,2)")).unwrap() + 3.0 / 4.0).abs() < 1e-10);
        assert!((eta_bruteforce(&spec("D(1,3)")).unwrap() + 19.0 / 18.0).abs() < 1e-10);
        assert!((eta_bruteforce(&spec("L(1,3)")).unwrap() - 2.0 / 9.0).abs() < 1e-10);
        assert!((eta_bruteforce(&spec("~T(1)")).unwrap() - 49.0 / 36.0).abs() < 1e-10);
        assert!(eta_bruteforce(&spec("L(1,2)")).unwrap().abs() < 1e-12);
    }

    const SAMPLE: &[&str] = &[
        "T(1)", "T(5)", "T(7)", "O(1)", "O(5)", "O(7)", "O(11)", "O(13)", "I(1)", "I(7)",
        "I(11)", "I(13)", "I(17)", "I(19)", "I(23)", "I(29)", "I(31)", "D(1,2)", "D(1,3)",
        "D(3,2)", "D(5,2)", "D(5,3)", "D(7,3)", "D(3,4)", "D(3,1)", "I2(2,1)", "I2(2,3)",
        "I2(4,3)", "I2(2,5)", "I2(4,5)", "I3(3)", "I3(9)", "I3(15)",
    ];

    #[test]
    fn closed_matches_brute_on_samples() {
        let cyclics = ["L(1,2)", "L(2,5)", "L(3,7)", "L(4,5)", "L(7,12)", "L(1,1)"];
        for name in SAMPLE.iter().chain(cyclics.iter()) {
            let s = spec(name);
            let closed = to_f64(&eta_closed(&s).unwrap());
            let brute = eta_bruteforce(&s).unwrap();
            assert!(
                (closed - brute).abs() < 1e-9,
                "{name}: closed {closed} vs brute {brute}"
            );
            let r = s.reverse();
            let closed = to_f64(&eta_closed(&r).unwrap());
            let brute = eta_bruteforce(&r).unwrap();
            assert!(
                (closed - brute).abs() < 1e-9,
                "~{name}: closed {closed} vs brute {brute}"
            );
        }
    }

    #[test]
    fn quotient_route_is_exact() {
        for name in SAMPLE {
            let s = spec(name);
            if s.cyclic_group_type().is_some() {
                continue; // degenerate n = 1: no quotient table row
            }
            assert_eq!(
                eta_via_quotient(&s).unwrap(),
                eta_closed(&s).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn reversal_negates_closed_form() {
        for name in SAMPLE.iter().chain(["L(2,7)", "L(3,11)"].iter()) {
            let s = spec(name);
            assert_eq!(
                eta_closed(&s.reverse()).unwrap(),
                -eta_closed(&s).unwrap(),
                "{name}"
            );
        }
    }

    #[test]
    fn degenerate_products_are_lens_spaces() {
        for m in [1i64, 3, 5, 7] {
            let d = spec(&format!("D({m},1)"));
            assert_eq!(
                eta_closed(&d).unwrap(),
                eta_cyclic_closed(&lens(2 * m + 1, 4 * m)).unwrap()
            );
        }
        for m in [2i64, 4, 6] {
            let d = spec(&format!("I2({m},1)"));
            assert_eq!(
                eta_closed(&d).unwrap(),
                eta_cyclic_closed(&lens(2 * m + 1, 4 * m)).unwrap()
            );
        }
        assert_eq!(eta_closed(&spec("I2(2,1)")).unwrap(), rational(-1, 4));
    }

    #[test]
    fn a_constant_signs() {
        assert_eq!(a_gamma(&spec("T(1)")).unwrap(), rational(-4, 9));
        assert_eq!(a_gamma(&spec("T(5)")).unwrap(), rational(4, 9));
        assert_eq!(a_gamma(&spec("O(1)")).unwrap(), rational(-13, 18));
        assert_eq!(a_gamma(&spec("I(29)")).unwrap(), rational(46, 45));
        // Dihedral-type entries are -eta of the reduced lens type.
        assert_eq!(a_gamma(&spec("D(5,3)")).unwrap(), rational(2, 9));
        assert_eq!(a_gamma(&spec("D(7,3)")).unwrap(), rational(-2, 9));
        assert_eq!(a_gamma(&spec("I3(3)")).unwrap(), integer(0));
        assert_eq!(a_gamma(&spec("D(3,1)")).unwrap(), integer(0));
    }

    #[test]
    fn route_preconditions() {
        assert!(eta_via_quotient(&spec("L(1,4)")).is_err());
        assert!(eta_via_quotient(&spec("~T(1)")).is_err());
        assert!(eta_cyclic_closed(&lens(0, 1)).is_err());
        assert!(a_gamma(&spec("L(1,4)")).is_err());
    }

    #[test]
    fn report_fields_track_family() {
        let r = eta_report(&spec("T(1)")).unwrap();
        assert_eq!(r.closed_form, rational(-49, 36));
        assert_eq!(r.via_quotient.as_ref(), Some(&r.closed_form));
        assert_eq!(r.a_gamma, Some(rational(-4, 9)));
        let r = eta_report(&spec("L(1,4)")).unwrap();
        assert_eq!(r.closed_form, rational(1, 2));
        assert!(r.via_quotient.is_none() && r.a_gamma.is_none());
        let r = eta_report(&spec("~O(1)")).unwrap();
        assert!(r.via_quotient.is_none() && r.a_gamma.is_none());
    }
}
