//! Special-function backends: zeta values at even integers, the Tornheim
//! double zeta and its coprime restriction, Moebius, square parts, and
//! Hurwitz class numbers.
//!
//! Series work is done in exact rational arithmetic: partial sums are
//! `BigRational`s, and the only irrational constant (pi) enters through a
//! rational interval enclosure pinned to 84 decimal digits. All tail
//! bounds are exact rationals, so an "interval contains target" check is
//! a rational comparison with no rounding anywhere.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::gcd;
use num_rational::BigRational;
use num_traits::Zero;

use crate::rat::{factorize, int, rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumbersError {
    /// zeta_even accepts even s with 2 <= s <= 12.
    BadZetaArgument(u32),
    /// square_part needs n >= 1.
    NonPositive,
    /// Window arguments must be at least 1.
    WindowTooSmall(u32),
}

impl fmt::Display for NumbersError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumbersError::BadZetaArgument(s) => {
                write!(f, "zeta_even: s = {s} not an even integer in [2, 12]")
            }
            NumbersError::NonPositive => write!(f, "argument must be a positive integer"),
            NumbersError::WindowTooSmall(w) => write!(f, "window {w} too small"),
        }
    }
}

/// pi to 84 fractional digits; the enclosure below brackets the true value
/// by one unit in the last digit.
const PI_DIGITS: &str =
    "3141592653589793238462643383279502884197169399375105820974944592307816406286208998628";
const PI_FRAC_DIGITS: u32 = 84;

/// A rational interval [lo, hi] guaranteed to contain the real value it
/// stands for. Exact arithmetic makes interval propagation rounding-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn exact(v: BigRational) -> Enclosure {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn pi() -> Enclosure {
        let numer = BigInt::from_str(PI_DIGITS).expect("pi digits parse");
        let denom = BigInt::from(10u32).pow(PI_FRAC_DIGITS);
        let lo = BigRational::new(numer.clone(), denom.clone());
        let hi = BigRational::new(numer + 1, denom);
        Enclosure { lo, hi }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Enclosure { lo, hi }
    }

    pub fn powi(&self, e: u32) -> Enclosure {
        let mut out = Enclosure::exact(int(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, r: &BigRational) -> Enclosure {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Midpoint as f64, for display only.
    pub fn to_f64(&self) -> f64 {
        crate::rat::to_f64(&((&self.lo + &self.hi) / int(2)))
    }
}

/// zeta(s) for even s in [2, 12], via the Bernoulli closed forms
/// zeta(2k) = c_{2k} * pi^{2k} with exact rational c_{2k}. The returned
/// enclosure is wider than the pi enclosure only by interval propagation,
/// far below 1e-20 relative width.
pub fn zeta_even(s: u32) -> Result<Enclosure, NumbersError> {
    let coeff = match s {
        2 => rat(1, 6),
        4 => rat(1, 90),
        6 => rat(1, 945),
        8 => rat(1, 9450),
        10 => rat(1, 93555),
        12 => BigRational::new(BigInt::from(691), BigInt::from(638_512_875u64)),
        _ => return Err(NumbersError::BadZetaArgument(s)),
    };
    Ok(Enclosure::pi().powi(s).scale(&coeff))
}

/// Enclosure of zeta(6) / 3, the limit of the full Tornheim sum.
pub fn zeta6_over_3() -> Enclosure {
    zeta_even(6).expect("6 is in range").scale(&rat(1, 3))
}

/// Rational upper bound for zeta(2) = pi^2/6 < 1.645, used in tail
/// majorants so they stay exact rationals.
fn zeta2_upper() -> BigRational {
    rat(1645, 1000)
}

/// Partial sum of a Tornheim-type window plus a proven tail majorant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TornheimResult {
    pub window: u32,
    /// Exact partial sum over 1 <= n, m <= window.
    pub partial_sum: BigRational,
    /// Exact rational tail majorant: the missing mass is at most this.
    pub tail_bound: BigRational,
}

impl TornheimResult {
    /// True if [partial, partial + tail] contains the target enclosure's
    /// value, i.e. the intervals are compatible.
    pub fn brackets(&self, target: &Enclosure) -> bool {
        self.partial_sum <= target.hi && &self.partial_sum + &self.tail_bound >= target.lo
    }

    pub fn brackets_rational(&self, target: &BigRational) -> bool {
        self.partial_sum <= *target && &self.partial_sum + &self.tail_bound >= *target
    }
}

/// Tail majorant for sum_{max(n,m) > M} 1/(n^2 m^2 (n+m)^2).
///
/// When n = max: 1/(n^2 m^2 (n+m)^2) <= 1/(n^4 m^2), so the n > M slab is
/// at most zeta(2) * sum_{n > M} n^-4 <= zeta(2) / (3 M^3); doubling
/// covers the symmetric m > M slab. The coprime-restricted sum is a
/// subsum, so the same bound applies there.
fn tornheim_tail_bound(window: u32) -> BigRational {
    let m3 = int(window as i64).pow(3);
    zeta2_upper() * rat(2, 3) / m3
}

/// Exact window sum over a fixed common denominator: every term
/// denominator n^2 m^2 (n+m)^2 divides lcm(1..2W)^6, so each term is an
/// exact integer share of that denominator and the loop is pure integer
/// arithmetic with a single reduction at the end.
fn windowed_sum(window: u32, coprime_only: bool) -> BigRational {
    let w = window as u64;
    let mut l = BigInt::from(1u32);
    for k in 2..=2 * w {
        l = num_integer::lcm(l, BigInt::from(k));
    }
    let common = l.pow(6);
    let mut acc = BigInt::from(0u32);
    for n in 1..=w {
        for m in 1..=w {
            if coprime_only && gcd(n, m) != 1 {
                continue;
            }
            let d = n * n * m * m * (n + m) * (n + m);
            acc += &common / BigInt::from(d);
        }
    }
    BigRational::new(acc, common)
}

/// Full Tornheim window sum: sum_{1 <= n, m <= W} 1/(n^2 m^2 (n+m)^2),
/// exact, with tail majorant. The limit is zeta(2,2;2) = zeta(6)/3.
pub fn tornheim_222(window: u32) -> Result<TornheimResult, NumbersError> {
    if window < 1 {
        return Err(NumbersError::WindowTooSmall(window));
    }
    Ok(TornheimResult {
        window,
        partial_sum: windowed_sum(window, false),
        tail_bound: tornheim_tail_bound(window),
    })
}

/// Coprime-restricted Tornheim window sum; the limit is exactly 1/3.
pub fn coprime_tornheim(window: u32) -> Result<TornheimResult, NumbersError> {
    if window < 1 {
        return Err(NumbersError::WindowTooSmall(window));
    }
    Ok(TornheimResult {
        window,
        partial_sum: windowed_sum(window, true),
        tail_bound: tornheim_tail_bound(window),
    })
}

/// Largest d with d^2 | n.
pub fn square_part(n: u64) -> Result<u64, NumbersError> {
    if n == 0 {
        return Err(NumbersError::NonPositive);
    }
    let mut out = 1u64;
    for (p, e) in factorize(n) {
        out *= p.pow(e / 2);
    }
    Ok(out)
}

/// Moebius function.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1);
    let fs = factorize(n);
    if fs.iter().any(|&(_, e)| e > 1) {
        0
    } else if fs.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Named convention for the Hurwitz class number. The dimension formula's
/// source does not pin the convention, so it is explicit here and the
/// integrality of the dimension formula across a grid of levels is the
/// check that the chosen convention is the right one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HurwitzConvention {
    /// H(0) = -1/12, H(k) = 0 for k = 1, 2 mod 4, weighted count of
    /// reduced positive-definite forms of discriminant -k otherwise.
    HurwitzKronecker,
}

/// Hurwitz class number H(k) under the given convention.
///
/// Reduced forms a x^2 + b x y + c y^2 with -a < b <= a <= c (and b >= 0
/// when a = c), discriminant b^2 - 4ac = -k. Weight 1/3 for the orbit of
/// a(x^2 + xy + y^2), 1/2 for a(x^2 + y^2), 1 otherwise.
pub fn hurwitz_class_number_with(convention: HurwitzConvention, k: u64) -> BigRational {
    let HurwitzConvention::HurwitzKronecker = convention;
    if k == 0 {
        return rat(-1, 12);
    }
    if k % 4 == 1 || k % 4 == 2 {
        return BigRational::zero();
    }
    let mut total = BigRational::zero();
    let mut a: i64 = 1;
    let ki = k as i64;
    while 3 * a * a <= ki {
        for b in (-a + 1)..=a {
            let num = b * b + ki;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a {
                    if a == c && b < 0 {
                        continue; // (a, -b, a) is equivalent to (a, b, a)
                    }
                    if a == b && b == c {
                        total += rat(1, 3);
                    } else if b == 0 && a == c {
                        total += rat(1, 2);
                    } else {
                        total += int(1);
                    }
                }
            }
        }
        a += 1;
    }
    total
}

/// Hurwitz class number in the default (Hurwitz-Kronecker) convention.
pub fn hurwitz_class_number(k: u64) -> BigRational {
    hurwitz_class_number_with(HurwitzConvention::HurwitzKronecker, k)
}

/// A class-number evaluation with its argument, for report tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzValue {
    pub discriminant_arg: u64,
    pub value: BigRational,
}

pub fn hurwitz_value(k: u64) -> HurwitzValue {
    HurwitzValue {
        discriminant_arg: k,
        value: hurwitz_class_number(k),
    }
}

/// The exact windowed Moebius-sieve decomposition of the full Tornheim
/// sum: sum_{n,m <= W} = sum_{d <= W} d^-6 * coprimeSum(floor(W/d)).
/// Exposed for the factorization cross-check; equality is exact because
/// n, m <= W with gcd d correspond bijectively to coprime pairs <= W/d.
pub fn tornheim_sieve_decomposition(window: u32) -> BigRational {
    let mut acc = BigRational::zero();
    let mut cache: Vec<Option<BigRational>> = alloc::vec![None; window as usize + 1];
    for d in 1..=window as u64 {
        let sub = (window as u64 / d) as u32;
        if sub == 0 {
            break;
        }
        let co = cache[sub as usize]
            .get_or_insert_with(|| {
                coprime_tornheim(sub)
                    .expect("sub window >= 1")
                    .partial_sum
            })
            .clone();
        let d6 = BigInt::from(d).pow(6);
        acc += co / BigRational::from_integer(d6);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{ratio_string, to_f64};

    #[test]
    fn pi_enclosure_tight() {
        let pi = Enclosure::pi();
        assert!(pi.contains(&rat(314159265358979324, 100000000000000000)) == false);
        assert!(pi.lo < pi.hi);
        let w = pi.width();
        assert!(w < BigRational::new(BigInt::from(2), BigInt::from(10u32).pow(84)));
        assert!((pi.to_f64() - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn zeta_values() {
        let z2 = zeta_even(2).unwrap();
        assert!((z2.to_f64() - 1.6449340668482264).abs() < 1e-14);
        let z6 = zeta_even(6).unwrap();
        assert!((z6.to_f64() - 1.0173430619844491).abs() < 1e-14);
        assert!(zeta_even(3).is_err());
        assert!(zeta_even(14).is_err());
        // zeta(2) upper bound used in tail majorants really is an upper bound.
        assert!(z2.hi < zeta2_upper());
    }

    #[test]
    fn zeta6_against_direct_summation() {
        // Independent oracle: direct summation of k^-6 to 1e6 terms.
        let mut s = 0.0f64;
        for k in (1..=1_000_000u64).rev() {
            let kf = k as f64;
            s += 1.0 / (kf * kf * kf * kf * kf * kf);
        }
        assert!((s - zeta_even(6).unwrap().to_f64()).abs() < 1e-12);
    }

    #[test]
    fn tornheim_small_windows() {
        assert_eq!(tornheim_222(1).unwrap().partial_sum, rat(1, 4));
        // The four window-2 terms: (1,1), (1,2), (2,1), (2,2).
        assert_eq!(
            tornheim_222(2).unwrap().partial_sum,
            rat(1, 4) + rat(1, 36) + rat(1, 36) + rat(1, 256)
        );
        assert_eq!(ratio_string(&tornheim_222(2).unwrap().partial_sum), "713/2304");
        assert_eq!(ratio_string(&tornheim_222(3).unwrap().partial_sum), "1520593/4665600");
    }

    #[test]
    fn tornheim_brackets_zeta6_over_3() {
        for w in [2u32, 5, 20, 60] {
            let r = tornheim_222(w).unwrap();
            assert!(r.brackets(&zeta6_over_3()), "window {w}");
        }
    }

    #[test]
    fn tornheim_monotone_and_bounded() {
        let target = zeta6_over_3();
        let mut prev = BigRational::zero();
        for w in 1..=25u32 {
            let r = tornheim_222(w).unwrap();
            assert!(r.partial_sum > prev);
            assert!(r.partial_sum < target.hi);
            prev = r.partial_sum;
        }
    }

    #[test]
    fn coprime_small_windows() {
        assert_eq!(coprime_tornheim(1).unwrap().partial_sum, rat(1, 4));
        assert_eq!(coprime_tornheim(2).unwrap().partial_sum, rat(11, 36));
    }

    #[test]
    fn coprime_brackets_one_third() {
        for w in [2u32, 10, 50] {
            let r = coprime_tornheim(w).unwrap();
            assert!(r.brackets_rational(&rat(1, 3)), "window {w}");
        }
        // Observed gap at window 50 is about 6.6e-6, inside the majorant.
        let r = coprime_tornheim(50).unwrap();
        let gap = rat(1, 3) - &r.partial_sum;
        assert!(gap < r.tail_bound);
        assert!(to_f64(&gap) < 7e-6);
    }

    #[test]
    fn sieve_decomposition_exact() {
        for w in [1u32, 2, 7, 24] {
            assert_eq!(
                tornheim_sieve_decomposition(w),
                tornheim_222(w).unwrap().partial_sum,
                "window {w}"
            );
        }
    }

    #[test]
    fn square_part_values() {
        assert_eq!(square_part(1).unwrap(), 1);
        assert_eq!(square_part(16).unwrap(), 4);
        assert_eq!(square_part(12).unwrap(), 2);
        assert!(square_part(0).is_err());
        // Brute-force oracle.
        for n in 1..=400u64 {
            let mut best = 1;
            let mut d = 1;
            while d * d <= n {
                if n % (d * d) == 0 {
                    best = d;
                }
                d += 1;
            }
            assert_eq!(square_part(n).unwrap(), best, "n = {n}");
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        // Summatory sanity: sum_{d | n} mu(d) = [n = 1].
        for n in 1..=200u64 {
            let s: i32 = (1..=n).filter(|d| n % d == 0).map(mobius).sum();
            assert_eq!(s, i32::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn hurwitz_values() {
        assert_eq!(hurwitz_class_number(0), rat(-1, 12));
        assert_eq!(hurwitz_class_number(1), int(0));
        assert_eq!(hurwitz_class_number(2), int(0));
        assert_eq!(hurwitz_class_number(3), rat(1, 3));
        assert_eq!(hurwitz_class_number(4), rat(1, 2));
        assert_eq!(hurwitz_class_number(7), int(1));
        assert_eq!(hurwitz_class_number(12), rat(4, 3));
        assert_eq!(hurwitz_class_number(16), rat(3, 2));
        assert_eq!(hurwitz_class_number(20), int(2));
        assert_eq!(hurwitz_class_number(23), int(3));
        assert_eq!(hurwitz_class_number(100), rat(5, 2));
        assert_eq!(hurwitz_class_number(200), int(7));
        assert_eq!(hurwitz_class_number(400), rat(15, 2));
    }

    #[test]
    fn factorization_identity_within_tails() {
        // In the limit, full sum = zeta(6) * coprime sum; at a finite
        // window the two enclosing intervals must overlap.
        let w = 40;
        let full = tornheim_222(w).unwrap();
        let full_iv = Enclosure {
            lo: full.partial_sum.clone(),
            hi: &full.partial_sum + &full.tail_bound,
        };
        let co = coprime_tornheim(w).unwrap();
        let co_iv = Enclosure {
            lo: co.partial_sum.clone(),
            hi: &co.partial_sum + &co.tail_bound,
        };
        let product = zeta_even(6).unwrap().mul(&co_iv);
        assert!(product.lo <= full_iv.hi && full_iv.lo <= product.hi);
    }

    #[test]
    fn square_part_pulls_out_squares() {
        for a in 1..=20u64 {
            for b in 1..=50u64 {
                if square_part(b).unwrap() == 1 {
                    assert_eq!(square_part(a * a * b).unwrap(), a * square_part(b).unwrap());
                }
            }
        }
    }

    #[test]
    fn hurwitz_value_record() {
        let v = hurwitz_value(23);
        assert_eq!(v.discriminant_arg, 23);
        assert_eq!(v.value, int(3));
    }

    #[test]
    fn hurwitz_positive_on_progression() {
        for k in (3..=1000u64).filter(|k| k % 4 == 0 || k % 4 == 3) {
            assert!(hurwitz_class_number(k) > BigRational::zero(), "k = {k}");
        }
    }
}
