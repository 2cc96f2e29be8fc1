//! Static geometric data: the curve singularities of the orbifold
//! compactifications, and the signature counts of the connected-sum
//! construction.
//!
//! The quotient of C^2 by a non-cyclic U(2) group compactifies to a quotient
//! of a weighted projective plane. Besides the original singular point it
//! acquires three cyclic singularities along the curve at infinity; their
//! types depend only on the family and are tabulated here. The second half
//! of the module bookkeeps the signatures tau(X), tau(Y) of the two building
//! blocks glued in the connected-sum construction, whose negated sum is the
//! number ell of projective-plane summands.

use crate::exactnum::gcd;
use crate::groups::{Family, GroupSpec};
use crate::hj::{hj_data, CyclicType};
use crate::{Error, Result};

/// The three cyclic singularities on the curve at infinity of the orbifold
/// compactification of C^2 by the named group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularitySet {
    pub compactification_group: GroupSpec,
    pub curve_singularities: [CyclicType; 3],
}

/// Per-family table of curve singularities, with second arguments reduced.
/// Degenerate `n = 1` rows are allowed (the third singularity is then
/// trivial); the eta-via-quotient route relies on that convention.
/// Rejects cyclic and reversed specs.
pub fn quotient_singularities(spec: &GroupSpec) -> Result<SingularitySet> {
    let s = spec.normalized();
    if !s.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    if s.reversed {
        return Err(Error::Domain(format!(
            "{spec} is orientation-reversed; the compactification table covers U(2) groups"
        )));
    }
    let t = |q, p| CyclicType::new(q, p);
    let curve_singularities = match s.family {
        Family::Cyclic { .. } => {
            return Err(Error::Domain(format!(
                "{spec} is cyclic; its compactification has no curve-singularity triple"
            )))
        }
        Family::DihedralProduct { m, n } | Family::IndexTwoDiagonal { m, n } => {
            [t(1, 2)?, t(1, 2)?, t(m, n)?]
        }
        Family::TetrahedralProduct { m } => [t(1, 2)?, t(m, 3)?, t(m, 3)?],
        Family::OctahedralProduct { m } => [t(1, 2)?, t(m, 3)?, t(m, 4)?],
        Family::IcosahedralProduct { m } => [t(1, 2)?, t(m, 3)?, t(m, 5)?],
        Family::IndexThreeDiagonal { .. } => [t(1, 2)?, t(1, 3)?, t(2, 3)?],
    };
    Ok(SingularitySet {
        compactification_group: s,
        curve_singularities,
    })
}

fn check_ell_params(family_index: u8, m: i64, n: i64) -> Result<()> {
    if m < 1 || n < 1 {
        return Err(Error::Domain(format!(
            "connected-sum parameters must be positive, got m={m} n={n}"
        )));
    }
    match family_index {
        1 => {
            if gcd(m, 2 * n) != 1 {
                return Err(Error::Domain(format!(
                    "family 1 needs gcd(m,2n)=1, got m={m} n={n}"
                )));
            }
        }
        2 => {
            if m % 2 != 0 || gcd(m, n) != 1 {
                return Err(Error::Domain(format!(
                    "family 2 needs m even and gcd(m,n)=1, got m={m} n={n}"
                )));
            }
        }
        i => {
            return Err(Error::Domain(format!(
                "family index must be 1 or 2, got {i}"
            )))
        }
    }
    Ok(())
}

/// Number of projective-plane summands in the connected-sum construction:
/// `3 + k_{(n-m mod n, n)} + k_{(m-n mod m, m)}` with the degenerate
/// branches `3 + (m-1)` for `n = 1`, `3 + (n-1)` for `m = 1`, and `3` when
/// both are 1.
pub fn ell(family_index: u8, m: i64, n: i64) -> Result<i64> {
    check_ell_params(family_index, m, n)?;
    Ok(match (m > 1, n > 1) {
        (true, true) => {
            let kn = hj_data(&CyclicType::new(n - m, n)?).1;
            let km = hj_data(&CyclicType::new(m - n, m)?).1;
            3 + kn + km
        }
        (true, false) => 3 + (m - 1),
        (false, true) => 3 + (n - 1),
        (false, false) => 3,
    })
}

/// Signatures of the two glued pieces: `tau_X = -k_{(m-n mod m, m)}` (zero
/// in the degenerate m = 1 branch) and `tau_Y = -3 - k_{(n-m mod n, n)}`
/// (just `-3 = -k_{(2m+1,4m)}` when n = 1). Their negated sum is `ell`.
pub fn signature_bookkeeping(family_index: u8, m: i64, n: i64) -> Result<(i64, i64)> {
    check_ell_params(family_index, m, n)?;
    let tau_x = if m > 1 {
        -hj_data(&CyclicType::new(m - n, m)?).1
    } else {
        0
    };
    let tau_y = if n > 1 {
        -3 - hj_data(&CyclicType::new(n - m, n)?).1
    } else {
        -3
    };
    Ok((tau_x, tau_y))
}

/// Fundamental-group facts of the construction, recorded as metadata (they
/// are cited conclusions, not computed here).
pub fn pi_one_notes() -> [&'static str; 2] {
    [
        "pi_1 of each building block X_i is Z/2Z",
        "pi_1 of the glued manifold (X-hat # Y-hat) is trivial",
    ]
}
