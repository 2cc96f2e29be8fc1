//! Exact rational arithmetic and the small number-theoretic helpers the
//! closed formulas need.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (the backing type maintains both invariants on construction).
pub type Rational = num_rational::BigRational;

/// Rational from machine integers. `den` must be nonzero.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Inverse of `q` modulo `p`, in `[1, p)`.
///
/// Requires `p >= 2` and `gcd(q, p) = 1`; `q` may be any representative of
/// its class.
pub fn mod_inverse(q: i64, p: i64) -> Result<i64> {
    if p < 2 {
        return Err(Error::Domain(format!("modulus {p} must be at least 2")));
    }
    let q0 = q.rem_euclid(p);
    if gcd(q0, p) != 1 {
        return Err(Error::Domain(format!(
            "{q} is not invertible modulo {p} (gcd {})",
            gcd(q0, p)
        )));
    }
    // extended Euclid on (q0, p); old_t tracks the coefficient of q0
    let (mut r0, mut r1) = (q0, p);
    let (mut t0, mut t1) = (1i64, 0i64);
    while r1 != 0 {
        let quo = r0 / r1;
        (r0, r1) = (r1, r0 - quo * r1);
        (t0, t1) = (t1, t0 - quo * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(t0.rem_euclid(p))
}

/// Sawtooth function `((x))`: zero at integers, `x - floor(x) - 1/2`
/// otherwise. Odd, periodic with period 1.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - x.floor() - rational(1, 2)
}

/// Left-hand side of the finite Eisenstein identity
/// `sum_{j=1}^{n-1} sin(2 pi k j / n) cot(pi j / n)`,
/// evaluated in floating point. The exact value is `-2 n ((k/n))`.
///
/// Empty (zero) for `n <= 1`.
pub fn eisenstein_lhs(n: i64, k: i64) -> f64 {
    let nf = n as f64;
    (1..n)
        .map(|j| {
            let jf = j as f64;
            let s = (2.0 * std::f64::consts::PI * (k as f64) * jf / nf).sin();
            let half = std::f64::consts::PI * jf / nf;
            s * half.cos() / half.sin()
        })
        .sum()
}

/// Exact right-hand side of the Eisenstein identity: `-2 n ((k/n))`.
pub fn eisenstein_rhs(n: i64, k: i64) -> Rational {
    integer(-2 * n) * sawtooth(&rational(k, n))
}

/// True when the rational equals the given machine integer.
pub fn is_int(x: &Rational, n: i64) -> bool {
    x == &integer(n)
}

/// Nearest `f64` to the rational; adequate for the tolerances used in the
/// float/exact cross-checks (values here stay far below 2^52).
pub fn to_f64(x: &Rational) -> f64 {
    let num = x.numer();
    let den = x.denom();
    // long division with 60 bits of headroom keeps full double precision
    let (q, r) = (num / den, num % den);
    let scale = BigInt::from(1u64 << 60);
    let frac = (r * &scale) / den;
    let as_f64 = |v: &BigInt| -> f64 {
        let (sign, digits) = v.to_u64_digits();
        let mag = digits
            .iter()
            .rev()
            .fold(0.0f64, |acc, d| acc * 1.8446744073709552e19 + *d as f64);
        if sign == num_bigint::Sign::Minus {
            -mag
        } else {
            mag
        }
    };
    as_f64(&q) + as_f64(&frac) / (1u64 << 60) as f64
}
