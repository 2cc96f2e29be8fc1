//! The ALE analogue of the Hitchin-Thorpe inequality,
//! `2(χ − 1/|Γ|) ≥ 3|τ − η(S³/Γ)|`, evaluated exactly, together with the
//! topology `(χ, τ)` of the minimal resolution it is fed with.

use std::cmp::Ordering;

use num_traits::Signed;

use crate::exactnum::{integer, rational, Rational};
use crate::eta::eta_closed;
use crate::groups::GroupSpec;
use crate::hj::hj_data;
use crate::topology::quotient_singularities;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Violated,
    Equality,
    StrictlySatisfied,
}

/// One exact evaluation of the inequality. `lhs` and `rhs` are the two
/// sides as rationals; the verdict is their exact comparison, with no
/// floating point involved.
#[derive(Debug, Clone, PartialEq)]
pub struct HtVerdict {
    pub lhs: Rational,
    pub rhs: Rational,
    pub verdict: Verdict,
    pub chi: i64,
    pub tau: i64,
    pub blowups: i64,
}

/// Euler characteristic and signature of the minimal resolution of `C²/Γ`:
/// `τ = −k` over the Euclidean expansion in the cyclic case (the degenerate
/// products delegate to their lens type), `τ = −1 − Σᵢ kᵢ` over the three
/// orientation-reversed curve singularities otherwise; `χ = 1 − τ` either
/// way (only the trivial group has `τ = 0, χ = 1`).
pub fn chi_tau_minres(spec: &GroupSpec) -> Result<(i64, i64)> {
    if !spec.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    let s = spec.normalized();
    if s.reversed {
        return Err(Error::Domain(format!(
            "{s} is not a subgroup of U(2); the minimal resolution needs the complex orientation"
        )));
    }
    let tau = if let Some(t) = s.cyclic_group_type() {
        if t.is_trivial() {
            0
        } else {
            -hj_data(&t).1
        }
    } else {
        let sing = quotient_singularities(&s)?;
        let mut tau = -1;
        for t in &sing.curve_singularities {
            tau -= hj_data(&t.reversed()).1;
        }
        tau
    };
    Ok((1 - tau, tau))
}

/// Exact evaluation of `2(χ + ℓ − 1/|Γ|)` against `3|τ − ℓ − η|` on the
/// minimal resolution with `ℓ` additional blow-ups (each adds 1 to `χ` and
/// subtracts 1 from `τ`).
pub fn ht_check(spec: &GroupSpec, blowups: i64) -> Result<HtVerdict> {
    if blowups < 0 {
        return Err(Error::Domain(format!(
            "blow-up count must be non-negative, got {blowups}"
        )));
    }
    let (chi, tau) = chi_tau_minres(spec)?;
    let order = spec.order()?;
    let eta = eta_closed(spec)?;
    let lhs = integer(2) * (integer(chi + blowups) - rational(1, order));
    let rhs = integer(3) * (integer(tau - blowups) - eta).abs();
    let verdict = match lhs.cmp(&rhs) {
        Ordering::Less => Verdict::Violated,
        Ordering::Equal => Verdict::Equality,
        Ordering::Greater => Verdict::StrictlySatisfied,
    };
    Ok(HtVerdict {
        lhs,
        rhs,
        verdict,
        chi,
        tau,
        blowups,
    })
}
