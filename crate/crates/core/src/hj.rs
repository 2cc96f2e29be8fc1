//! The Hirzebruch-Jung modified Euclidean algorithm.
//!
//! For a cyclic quotient singularity of type L(q,p) the minimal resolution
//! has a chain of rational curves whose self-intersections `-e_1..-e_k` are
//! produced by the modified Euclidean recursion `p = e_1 q - a_1`,
//! `q = e_2 a_1 - a_2`, ... with every `e_i >= 2`. The string length `k` and
//! the coefficient sum `E = sum e_i` feed most of the closed formulas in this
//! crate.

use std::fmt;

use num_traits::Zero;

use crate::exactnum::{gcd, integer, Rational};
use crate::{Error, Result};

/// Label of a cyclic group acting on S^3 as the lens space L(q,p).
///
/// `p = 1` denotes the trivial group. For `p >= 2` the stored `q` is reduced
/// into `[1, p)` and coprime to `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicType {
    q: i64,
    p: i64,
}

impl CyclicType {
    /// Builds L(q,p), reducing `q` modulo `p`. Rejects `p < 1`, residue 0
    /// (when `p >= 2`), and parameters with a common factor.
    pub fn new(q: i64, p: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::Domain(format!("cyclic order {p} must be positive")));
        }
        if p == 1 {
            return Ok(CyclicType { q: 0, p: 1 });
        }
        let q = q.rem_euclid(p);
        if q == 0 {
            return Err(Error::Domain(format!(
                "L(q,{p}) needs q nonzero modulo {p}"
            )));
        }
        if gcd(q, p) != 1 {
            return Err(Error::Domain(format!(
                "L({q},{p}) is not a free action: gcd({q},{p}) = {}",
                gcd(q, p)
            )));
        }
        Ok(CyclicType { q, p })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    /// True for the trivial group (p = 1).
    pub fn is_trivial(&self) -> bool {
        self.p == 1
    }

    /// The orientation-reversed type L(p-q, p).
    pub fn reversed(&self) -> CyclicType {
        if self.p == 1 {
            *self
        } else {
            CyclicType {
                q: self.p - self.q,
                p: self.p,
            }
        }
    }
}

impl fmt::Display for CyclicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.q, self.p)
    }
}

/// The exceptional-divisor string e_1..e_k, each coefficient at least 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJString {
    coefficients: Vec<i64>,
}

impl HJString {
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// String length k.
    pub fn length(&self) -> i64 {
        self.coefficients.len() as i64
    }

    /// Coefficient sum E = e_1 + ... + e_k.
    pub fn sum(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    /// Evaluates the continued fraction e_1 - 1/(e_2 - 1/(... - 1/e_k))
    /// exactly; equals p/q for the string of L(q,p).
    pub fn continued_fraction(&self) -> Rational {
        // partial tails of a valid string stay >= 1, so the reciprocal is
        // only skipped at the innermost step
        let mut acc = Rational::zero();
        for &e in self.coefficients.iter().rev() {
            if acc.is_zero() {
                acc = integer(e);
            } else {
                acc = integer(e) - acc.recip();
            }
        }
        acc
    }
}

/// Runs the modified Euclidean algorithm for L(q,p). Rejects `p < 2`.
pub fn hj_expand(t: &CyclicType) -> Result<HJString> {
    if t.p < 2 {
        return Err(Error::Domain(
            "HJ string undefined for the trivial group".into(),
        ));
    }
    let mut coefficients = Vec::new();
    let (mut a, mut b) = (t.p, t.q);
    while b > 0 {
        // e = ceil(a/b) (both positive); the next remainder e*b - a is in [0, b)
        let e = (a + b - 1) / b;
        coefficients.push(e);
        (a, b) = (b, e * b - a);
    }
    debug_assert_eq!(a, 1, "recursion must terminate at a remainder of 1");
    Ok(HJString { coefficients })
}

/// Length k of the HJ string of L(q,p). Rejects `p < 2`.
pub fn hj_length(t: &CyclicType) -> Result<i64> {
    Ok(hj_expand(t)?.length())
}

/// `(E, k)` = (coefficient sum, length), with the trivial group contributing
/// `(0, 0)`. The formulas that sum HJ data over singularity lists use this
/// convention.
pub fn hj_data(t: &CyclicType) -> (i64, i64) {
    if t.is_trivial() {
        (0, 0)
    } else {
        let s = hj_expand(t).expect("nontrivial type expands");
        (s.sum(), s.length())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    #[test]
    fn constructor_reduces_and_rejects() {
        let t = CyclicType::new(7, 3).unwrap();
        assert_eq!((t.q(), t.p()), (1, 3));
        let t = CyclicType::new(-1, 5).unwrap();
        assert_eq!((t.q(), t.p()), (4, 5));
        assert!(CyclicType::new(3, 3).is_err());
        assert!(CyclicType::new(2, 4).is_err());
        assert!(CyclicType::new(0, 2).is_err());
        assert!(CyclicType::new(1, 0).is_err());
        let trivial = CyclicType::new(9, 1).unwrap();
        assert!(trivial.is_trivial());
        assert_eq!(trivial.reversed(), trivial);
    }

    #[test]
    fn hand_run_strings() {
        let s = |q, p| hj_expand(&CyclicType::new(q, p).unwrap()).unwrap();
        assert_eq!(s(1, 5).coefficients(), [5]);
        assert_eq!(s(2, 5).coefficients(), [3, 2]);
        assert_eq!(s(3, 5).coefficients(), [2, 3]);
        assert_eq!(s(4, 5).coefficients(), [2, 2, 2, 2]);
        assert_eq!(s(7, 12).coefficients(), [2, 4, 2]);
        assert_eq!(s(1, 2).coefficients(), [2]);
    }

    #[test]
    fn length_examples() {
        let k = |q, p| hj_length(&CyclicType::new(q, p).unwrap()).unwrap();
        for p in 2..40 {
            assert_eq!(k(1, p), 1);
            assert_eq!(k(p - 1, p), p - 1);
        }
        // the string of L(2m+1, 4m) is [2, m+1, 2]
        for m in 1..30 {
            let t = CyclicType::new(2 * m + 1, 4 * m).unwrap();
            let s = hj_expand(&t).unwrap();
            assert_eq!(s.coefficients(), [2, m + 1, 2]);
            assert_eq!(s.length(), 3);
        }
    }

    #[test]
    fn continued_fraction_reconstructs() {
        for p in 2..=120 {
            for q in 1..p {
                if gcd(q, p) != 1 {
                    continue;
                }
                let s = hj_expand(&CyclicType::new(q, p).unwrap()).unwrap();
                assert!(s.coefficients().iter().all(|&e| e >= 2));
                assert_eq!(s.continued_fraction(), rational(p, q), "L({q},{p})");
            }
        }
    }

    #[test]
    fn trivial_group_conventions() {
        let t = CyclicType::new(0, 1).unwrap();
        assert!(hj_expand(&t).is_err());
        assert!(hj_length(&t).is_err());
        assert_eq!(hj_data(&t), (0, 0));
        assert_eq!(hj_data(&CyclicType::new(3, 4).unwrap()), (6, 3));
    }
}
