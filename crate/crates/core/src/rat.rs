//! Small helpers around `BigRational`, shared by every module.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational from an integer.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical `"p/q"` rendering with gcd(p, q) = 1 and q > 0.
///
/// `BigRational` keeps values reduced with a positive denominator, so this
/// is just `numer/denom`, with the denominator always written out.
pub fn ratio_string(r: &BigRational) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}/{}", r.numer(), r.denom());
    s
}

/// Decimal rendering of a rational, truncated towards zero at `digits`
/// fractional digits. Trailing zeros are kept so output width is stable.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut frac = frac_part.to_string();
    while frac.len() < digits {
        frac.insert(0, '0');
    }
    let mut s = String::new();
    if digits == 0 {
        let _ = write!(s, "{sign}{int_part}");
    } else {
        let _ = write!(s, "{sign}{int_part}.{frac}");
    }
    s
}

/// True if the rational is an integer.
pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

/// Nearest `f64` (approximate; only for display and float-side checks).
pub fn to_f64(r: &BigRational) -> f64 {
    // Scale into a fixed-point i128 window to keep precision for the
    // magnitudes that occur here (all values well inside 1e12).
    let scale = BigInt::from(10u64.pow(18));
    let scaled = (r.numer() * &scale) / r.denom();
    let digits = scaled.to_string();
    digits.parse::<f64>().map(|x| x / 1e18).unwrap_or(f64::NAN)
}

/// Prime factorization of a positive integer by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub use num_rational::BigRational as Rat;

/// Zero rational.
pub fn zero() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_string_canonical() {
        assert_eq!(ratio_string(&rat(4, 8)), "1/2");
        assert_eq!(ratio_string(&rat(-3, 6)), "-1/2");
        assert_eq!(ratio_string(&int(136)), "136/1");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(1, 4), 6), "0.250000");
        assert_eq!(decimal_string(&rat(-1, 3), 5), "-0.33333");
        assert_eq!(decimal_string(&int(7), 0), "7");
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), alloc::vec![]);
        assert_eq!(factorize(12), alloc::vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), alloc::vec![(97, 1)]);
    }

    #[test]
    fn to_f64_roundtrip() {
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert!((to_f64(&int(-136)) + 136.0).abs() < 1e-12);
    }
}
