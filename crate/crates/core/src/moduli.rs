//! Dimensions attached to the self-dual deformation complex on the quotient
//! spaces: `dim H¹` by closed form and by character averaging, the
//! scalar-flat Kähler deformation bound `d_max`, and the comparison between
//! the two (zero exactly on the SU(2) quotients).

use num_complex::Complex64;

use crate::groups::{enumerate, Family, GroupSpec};
use crate::hj::hj_data;
use crate::topology::quotient_singularities;
use crate::{Error, Result};

/// Deformation-dimension bookkeeping for one spec. The `h1_*` fields and
/// `c_const` apply to the genuinely non-cyclic families only; `d_max`,
/// `difference` and `h0_used` are always present. `difference` is
/// `dim H¹` of the compactified minimal resolution minus `d_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliReport {
    pub h1_closed: Option<i64>,
    pub h1_brute: Option<i64>,
    pub c_const: Option<i64>,
    pub d_max: i64,
    pub difference: i64,
    pub h0_used: i64,
}

/// The table constant `C_Γ` in `dim H¹ = 4b_Γ − C_Γ`, keyed by family and
/// the congruence class of `m` mod `c = |Γ|/(4m)`.
pub fn c_gamma(spec: &GroupSpec) -> Result<i64> {
    let (m, c) = spec.noncyclic_params()?;
    let r = m % c;
    match spec.normalized().family {
        Family::DihedralProduct { .. } | Family::IndexTwoDiagonal { .. } => {
            Ok(if r == 1 { 8 } else { 6 })
        }
        Family::TetrahedralProduct { .. }
        | Family::OctahedralProduct { .. }
        | Family::IndexThreeDiagonal { .. } => Ok(if r == 1 {
            8
        } else if r == c - 1 {
            4
        } else {
            6
        }),
        Family::IcosahedralProduct { .. } => match r {
            1 => Ok(8),
            7 | 11 | 13 | 19 => Ok(6),
            17 | 23 | 29 => Ok(4),
            _ => Err(Error::TableMiss(format!(
                "C constant for {spec}, m = {r} mod 30"
            ))),
        },
        Family::Cyclic { .. } => unreachable!("rejected by noncyclic_params"),
    }
}

/// Closed form `dim H¹_{SD,Γ} = 4b_Γ − C_Γ` for the genuinely non-cyclic
/// unreversed families.
pub fn h1_dim_closed(spec: &GroupSpec) -> Result<i64> {
    Ok(4 * crate::index::b_gamma(spec)? - c_gamma(spec)?)
}

/// Integer-rounded character average; hard error when the float is not
/// within this distance of an integer.
const ROUND_TOL: f64 = 1e-6;

/// `dim H¹_{SD,Γ}` by direct averaging of the character of
/// `ρ = (S^{2m−2}⊗det) ⊕ (S^{2m−4}⊗det²)` over the enumerated group:
/// `dim = (2/|Γ|)·Re Σ_γ χ_ρ(γ)`. For `m = 1` the space is the compactified
/// Eguchi-Hanson model, which is rigid; the sums are taken as void and the
/// dimension is 0.
///
/// Accepts the degenerate `n = 1` products (the average is a well-defined
/// group sum), where the closed form does not apply; see `compare` tests.
pub fn h1_dim_bruteforce(spec: &GroupSpec) -> Result<i64> {
    if !spec.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    let s = spec.normalized();
    if s.reversed {
        return Err(Error::Domain(format!(
            "{s} is not a subgroup of U(2); the representation average needs U(2) eigenvalues"
        )));
    }
    let m = s.m_parameter().ok_or_else(|| {
        Error::Domain(format!(
            "{s} is cyclic; the character average is defined for the product families"
        ))
    })?;
    if m == 1 {
        return Ok(0);
    }
    let elements = enumerate(&s)?;
    let mut total = Complex64::new(0.0, 0.0);
    for g in &elements {
        total += character_value(g, m)?;
    }
    if total.im.abs() >= ROUND_TOL {
        return Err(Error::Domain(format!(
            "character sum over {s} has imaginary part {}, beyond {ROUND_TOL}",
            total.im
        )));
    }
    let avg = 2.0 * total.re / elements.len() as f64;
    let rounded = avg.round();
    if (avg - rounded).abs() >= ROUND_TOL {
        return Err(Error::NonIntegralCharacterSum {
            value: avg,
            tol: ROUND_TOL,
        });
    }
    if rounded < 0.0 {
        return Err(Error::Domain(format!(
            "character average over {s} is negative: {rounded}"
        )));
    }
    Ok(rounded as i64)
}

/// `χ_ρ(γ)` from the eigenvalue arguments of `γ` as a U(2) matrix. The left
/// factor of every unreversed element lies on the distinguished circle
/// `e^{iα}`, so the eigenvalue pair is exactly `(α−β, α+β)` with `β` the
/// principal angle of the right factor; taking the argument of the left
/// factor directly (rather than its principal angle) keeps the pair
/// coherent across the group, which is what makes `Σχ` real instead of
/// merely having the right real part.
fn character_value(g: &crate::groups::GroupElement, m: i64) -> Result<Complex64> {
    let a = g.left();
    if a.y.abs() > 1e-9 || a.z.abs() > 1e-9 {
        return Err(Error::Domain(
            "left factor off the distinguished circle; element is not unitary \
             for the fixed complex structure"
                .into(),
        ));
    }
    let alpha = a.x.atan2(a.w);
    let beta = g.right().principal_angle();
    let (t1, t2) = (alpha - beta, alpha + beta);
    let h = |d: i64| -> Complex64 {
        (0..=d)
            .map(|p| Complex64::from_polar(1.0, ((d - p) as f64) * t1 + (p as f64) * t2))
            .sum()
    };
    let det = Complex64::from_polar(1.0, t1 + t2);
    Ok(det * h(2 * m - 2) + det * det * h(2 * m - 4))
}

/// Upper bound on infinitesimal scalar-flat Kähler deformations of the
/// minimal resolution: `Σ2eᵢ − k − 3` in the cyclic case (including the
/// degenerate products through their lens type), and
/// `Σᵢ(2Eᵢ − kᵢ) + 2b_Γ − 4` over the three orientation-reversed curve
/// singularities otherwise.
pub fn d_max(spec: &GroupSpec) -> Result<i64> {
    if !spec.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    let s = spec.normalized();
    if s.reversed {
        return Err(Error::Domain(format!(
            "{s} is not a subgroup of U(2); the Kähler count needs the complex orientation"
        )));
    }
    if let Some(t) = s.cyclic_group_type() {
        if t.is_trivial() {
            return Err(Error::Domain(
                "trivial group: nothing to resolve".into(),
            ));
        }
        let (e, k) = hj_data(&t);
        return Ok(2 * e - k - 3);
    }
    let sing = quotient_singularities(&s)?;
    let mut d = 2 * crate::index::b_gamma(&s)? - 4;
    for t in &sing.curve_singularities {
        let (e, k) = hj_data(&t.reversed());
        d += 2 * e - k;
    }
    Ok(d)
}

/// `dim H¹_SD` of the compactified minimal resolution versus `d_max`.
///
/// Non-cyclic: `dim H¹ = Σᵢ(4Eᵢ − 5kᵢ) + 4b_Γ − C_Γ − 2κ` over the reversed
/// singularity types, with `κ ∈ {0,1}` counting singularities not of type
/// `L(±1,p)`, and `dim H⁰ = 1` fixed (an explicit `h0` other than 1 is
/// rejected rather than silently ignored).
///
/// Cyclic: `dim H¹ = h0 + 4E − 5k − 5 − 2κ` with `κ = 1` iff `q = 1`. The
/// sources leave `h0` open here; the defaults are 4 when `q = 1` (the
/// compactified metric admits the full U(2) symmetry) and 2 otherwise
/// (toric), and the report records what was used.
pub fn compare_deformations(spec: &GroupSpec, h0: Option<i64>) -> Result<ModuliReport> {
    if !spec.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    let s = spec.normalized();
    if s.reversed {
        return Err(Error::Domain(format!(
            "{s} is not a subgroup of U(2); compare its reverse instead"
        )));
    }
    let dm = d_max(&s)?;
    if let Some(t) = s.cyclic_group_type() {
        let (e, k) = hj_data(&t);
        let kappa = i64::from(t.q() == 1);
        let h0_used = h0.unwrap_or(if t.q() == 1 { 4 } else { 2 });
        let h1_resolution = h0_used + 4 * e - 5 * k - 5 - 2 * kappa;
        return Ok(ModuliReport {
            h1_closed: None,
            h1_brute: None,
            c_const: None,
            d_max: dm,
            difference: h1_resolution - dm,
            h0_used,
        });
    }
    if let Some(v) = h0 {
        if v != 1 {
            return Err(Error::Domain(format!(
                "dim H0 = 1 is part of the non-cyclic statement; cannot use {v}"
            )));
        }
    }
    let c = c_gamma(&s)?;
    let sing = quotient_singularities(&s)?;
    let kappa = sing
        .curve_singularities
        .iter()
        .filter(|t| t.q() != 1 && t.q() != t.p() - 1)
        .count() as i64;
    debug_assert!(kappa <= 1, "at most one non-L(±1,p) singularity per group");
    let mut h1_resolution = 4 * crate::index::b_gamma(&s)? - c - 2 * kappa;
    for t in &sing.curve_singularities {
        let (e, k) = hj_data(&t.reversed());
        h1_resolution += 4 * e - 5 * k;
    }
    Ok(ModuliReport {
        h1_closed: Some(h1_dim_closed(&s)?),
        h1_brute: Some(h1_dim_bruteforce(&s)?),
        c_const: Some(c),
        d_max: dm,
        difference: h1_resolution - dm,
        h0_used: 1,
    })
}
