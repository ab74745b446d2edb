//! Jacobi-form side: the cusp-form dimension formula and its
//! Hilbert-Samuel asymptotics, truncated Riemann theta evaluation, the
//! invariant metric with its group-invariance checks, and the exact
//! vanishing orders that feed the divisor of theta_{1,1}^8.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::numbers::{hurwitz_class_number, square_part};
use crate::rat::{int, is_integral, rat};
use crate::surface::{frac_part, Level};

#[derive(Clone, Debug, PartialEq)]
pub enum JacobiError {
    /// dim_cusp requires N | 4 ell.
    LevelDoesNotDivide { n: u32, ell: u32 },
    /// The dimension formula produced a non-integer or negative value:
    /// the Hurwitz convention in use is wrong. Never rounded over.
    ConventionViolation { n: u32, ell: u32 },
    /// vanishing_order requires 0 <= nu <= N.
    NuOutOfRange { n: u32, nu: u32 },
    /// tau must lie in the upper half-plane.
    NonPositiveEta,
    BadTolerance,
    /// eta of the (transformed) point is too small for double precision.
    EtaUnderflow,
    /// The invariance check is meaningless near a zero of theta^8.
    NearThetaZero,
    /// (a, b; c, d) must have determinant 1.
    NotUnimodular,
}

impl fmt::Display for JacobiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JacobiError::LevelDoesNotDivide { n, ell } => {
                write!(f, "dimension formula needs N | 4*ell; got N = {n}, ell = {ell}")
            }
            JacobiError::ConventionViolation { n, ell } => write!(
                f,
                "dimension formula non-integral or negative at N = {n}, ell = {ell}: \
                 class-number convention violated"
            ),
            JacobiError::NuOutOfRange { n, nu } => {
                write!(f, "nu = {nu} out of range [0, {n}]")
            }
            JacobiError::NonPositiveEta => write!(f, "tau must have positive imaginary part"),
            JacobiError::BadTolerance => write!(f, "tolerance must be positive"),
            JacobiError::EtaUnderflow => {
                write!(f, "imaginary part of tau too small for reliable evaluation")
            }
            JacobiError::NearThetaZero => {
                write!(f, "point too close to a zero of theta^8 for a relative check")
            }
            JacobiError::NotUnimodular => write!(f, "matrix must have determinant 1"),
        }
    }
}

/// A point (tau, z) with Im(tau) > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularPoint {
    pub tau: Complex64,
    pub z: Complex64,
}

impl ModularPoint {
    pub fn new(tau: Complex64, z: Complex64) -> Result<ModularPoint, JacobiError> {
        if !(tau.im > 0.0) {
            return Err(JacobiError::NonPositiveEta);
        }
        Ok(ModularPoint { tau, z })
    }

    pub fn eta(&self) -> f64 {
        self.tau.im
    }

    pub fn y(&self) -> f64 {
        self.z.im
    }
}

/// An element of SL2(Z) semidirect Z^2 acting on (tau, z).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl GroupElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64, lambda: i64, mu: i64) -> Result<GroupElement, JacobiError> {
        if a * d - b * c != 1 {
            return Err(JacobiError::NotUnimodular);
        }
        Ok(GroupElement { a, b, c, d, lambda, mu })
    }

    pub fn identity() -> GroupElement {
        GroupElement { a: 1, b: 0, c: 0, d: 1, lambda: 0, mu: 0 }
    }

    pub fn translation(lambda: i64, mu: i64) -> GroupElement {
        GroupElement { lambda, mu, ..GroupElement::identity() }
    }

    /// The inversion S = (0, -1; 1, 0).
    pub fn s() -> GroupElement {
        GroupElement { a: 0, b: -1, c: 1, d: 0, lambda: 0, mu: 0 }
    }

    /// Congruence test: a = d = 1, b = c = 0 mod N, translations in N Z.
    pub fn in_gamma(&self, level: Level) -> bool {
        let n = level.n() as i64;
        (self.a - 1) % n == 0
            && (self.d - 1) % n == 0
            && self.b % n == 0
            && self.c % n == 0
            && self.lambda % n == 0
            && self.mu % n == 0
    }

    /// tau' = (a tau + b) / (c tau + d), z' = (z + lambda tau + mu) / (c tau + d).
    pub fn apply(&self, pt: &ModularPoint) -> Result<ModularPoint, JacobiError> {
        let j = pt.tau * self.c as f64 + self.d as f64;
        let tau = (pt.tau * self.a as f64 + self.b as f64) / j;
        let z = (pt.z + pt.tau * self.lambda as f64 + self.mu as f64) / j;
        ModularPoint::new(tau, z)
    }
}

/// Weight and index; theta_{1,1}^8 has k = m = 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightIndex {
    pub k: u32,
    pub m: u32,
}

impl WeightIndex {
    pub const THETA8: WeightIndex = WeightIndex { k: 4, m: 4 };
}

/// theta_{1,1}(tau, z) = sum_n exp(pi i tau (n + 1/2)^2 + 2 pi i (z + 1/2)(n + 1/2)),
/// truncated so the geometric tail is below `tol`.
///
/// Term magnitudes are exp(-pi eta r^2 - 2 pi y s) with s = n + 1/2 and
/// r = |s|, bounded by exp(-pi eta r^2 + 2 pi |y| r); once consecutive
/// magnitudes shrink by at least a factor 2, the two-sided tail is at
/// most 4x the first dropped term.
pub fn theta11(pt: &ModularPoint, tol: f64) -> Result<Complex64, JacobiError> {
    if !(pt.eta() > 0.0) {
        return Err(JacobiError::NonPositiveEta);
    }
    if !(tol > 0.0) {
        return Err(JacobiError::BadTolerance);
    }
    let eta = pt.eta();
    let y = pt.y().abs();
    let pi = core::f64::consts::PI;
    let mut k: i64 = 1;
    loop {
        let r = k as f64 + 0.5;
        let first_dropped = (-pi * eta * (r + 1.0) * (r + 1.0) + 2.0 * pi * y * (r + 1.0)).exp();
        let ratio_halves = pi * eta * (2.0 * r + 3.0) - 2.0 * pi * y >= core::f64::consts::LN_2;
        if ratio_halves && 4.0 * first_dropped < tol {
            break;
        }
        k += 1;
        if k > 200_000 {
            return Err(JacobiError::EtaUnderflow);
        }
    }
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -k - 1..=k {
        let s = Complex64::new(n as f64, 0.0) + half;
        let expo = i * pi * pt.tau * s * s + i * 2.0 * pi * (pt.z + half) * s;
        sum += expo.exp();
    }
    Ok(sum)
}

/// theta_{1,1}^8, the weight-4 index-4 weak Jacobi form used throughout.
pub fn theta8(pt: &ModularPoint, tol: f64) -> Result<Complex64, JacobiError> {
    Ok(theta11(pt, tol)?.powu(8))
}

/// The invariant metric: |f|^2 * exp(-4 pi m y^2 / eta) * eta^k.
pub fn invariant_norm_sq(f_value: Complex64, pt: &ModularPoint, wi: WeightIndex) -> f64 {
    let eta = pt.eta();
    let y = pt.y();
    f_value.norm_sqr()
        * (-4.0 * core::f64::consts::PI * wi.m as f64 * y * y / eta).exp()
        * eta.powi(wi.k as i32)
}

/// Result of a single invariance check of ||theta^8|| under g.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvarianceReport {
    pub norm_at_point: f64,
    pub norm_at_image: f64,
    pub relative_deviation: f64,
    pub pass: bool,
}

const ETA_FLOOR: f64 = 1e-4;
const NORM_FLOOR: f64 = 1e-8;

/// Checks ||theta^8|| at g(pt) against ||theta^8|| at pt, relative.
pub fn check_invariance(
    g: &GroupElement,
    pt: &ModularPoint,
    tol: f64,
) -> Result<InvarianceReport, JacobiError> {
    let image = g.apply(pt)?;
    if image.eta() < ETA_FLOOR || pt.eta() < ETA_FLOOR {
        return Err(JacobiError::EtaUnderflow);
    }
    let theta_tol = (tol * 1e-4).min(1e-12);
    let n0 = invariant_norm_sq(theta8(pt, theta_tol)?, pt, WeightIndex::THETA8);
    let n1 = invariant_norm_sq(theta8(&image, theta_tol)?, &image, WeightIndex::THETA8);
    if n0 < NORM_FLOOR {
        return Err(JacobiError::NearThetaZero);
    }
    let relative_deviation = (n1 - n0).abs() / n0;
    Ok(InvarianceReport {
        norm_at_point: n0,
        norm_at_image: n1,
        relative_deviation,
        pass: relative_deviation <= tol,
    })
}

/// Vanishing order of theta_{1,1} along the fiber component nu: the
/// closed form N/2 (eps^2(-nu/N) - eps(-nu/N)) + N/8 - nu^2/(2N),
/// cross-checked against direct minimization over the theta exponents.
pub fn vanishing_order(level: Level, nu: u32) -> Result<BigRational, JacobiError> {
    let n = level.n();
    if nu > n {
        return Err(JacobiError::NuOutOfRange { n, nu });
    }
    let ni = n as i64;
    let v = nu as i64;
    let e = frac_part(&rat(-v, ni));
    let closed = rat(ni, 2) * (&e * &e - &e) + rat(ni, 8) - rat(v * v, 2 * ni);

    // Oracle: the order is the minimum over the series of the exponent
    // N/2 n^2 + (N/2 + nu) n + N/8 + nu/2.
    let k = 2 + (nu + n - 1) / n; // 2 + ceil(nu / N)
    let oracle = (-(k as i64)..=k as i64)
        .map(|q| rat(ni, 2) * int(q * q) + rat(ni + 2 * v, 2) * int(q) + rat(ni, 8) + rat(v, 2))
        .min()
        .expect("nonempty range");
    assert_eq!(closed, oracle, "vanishing-order closed form vs minimization");
    Ok(closed)
}

/// One row of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub level: Level,
    pub ell: u32,
    /// Non-negative integer, stored exactly.
    pub dim: BigRational,
    /// dim / (ell^2 / 2).
    pub ratio: BigRational,
}

impl DimensionReport {
    /// Distance of the ratio from the limit 16 N p_N / 3 (signed:
    /// positive when the ratio is still below the limit).
    pub fn gap(&self) -> BigRational {
        let n = self.level.n() as i64;
        let p = self.level.cusp_count() as i64;
        rat(16 * n * p, 3) - &self.ratio
    }
}

/// dim of the cusp forms J^cusp_{4 ell, 4 ell}(Gamma(N)):
/// p_N (8 N ell^2 / 3 - N ell - (N/4) Q(16 ell / N) - (N/2) sum_d H(d)),
/// where Q is the largest integer whose square divides the argument, and
/// d runs over divisors of t = 16 ell / N with squarefree cofactor.
///
/// The class-number convention is Hurwitz-Kronecker with H evaluated at
/// the positive divisor; the integrality assertion across (N, ell) grids
/// is the check that this reading is the right one.
pub fn dim_cusp(level: Level, ell: u32) -> Result<DimensionReport, JacobiError> {
    let n = level.n();
    if (4 * ell) % n != 0 {
        return Err(JacobiError::LevelDoesNotDivide { n, ell });
    }
    let t = 16 * ell as u64 / n as u64;
    let q = square_part(t).expect("t >= 1");

    let mut class_sum = crate::rat::zero();
    for d in 1..=t {
        if t % d == 0 && square_part(t / d).expect("positive") == 1 {
            class_sum += hurwitz_class_number(d);
        }
    }

    let ni = n as i64;
    let li = ell as i64;
    let p = level.cusp_count() as i64;
    let inner = rat(8 * ni * li * li, 3)
        - int(ni * li)
        - rat(ni, 4) * int(q as i64)
        - rat(ni, 2) * class_sum;
    let dim = int(p) * inner;
    if !is_integral(&dim) || dim < crate::rat::zero() {
        return Err(JacobiError::ConventionViolation { n, ell });
    }
    let ratio = &dim * rat(2, li * li);
    Ok(DimensionReport { level, ell, dim, ratio })
}

/// Hilbert-Samuel table: ratios dim / (ell^2/2) against the limit
/// 16 N p_N / 3 over an increasing list of ell.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertSamuelReport {
    pub rows: Vec<DimensionReport>,
    pub target: BigRational,
    /// Gaps strictly decrease and the last is below the documented
    /// 5 N p_N / ell bound (linear defect dominates; see README).
    pub pass: bool,
}

pub fn hilbert_samuel_check(level: Level, ells: &[u32]) -> Result<HilbertSamuelReport, JacobiError> {
    let mut rows = Vec::with_capacity(ells.len());
    for &ell in ells {
        rows.push(dim_cusp(level, ell)?);
    }
    let target = {
        let n = level.n() as i64;
        let p = level.cusp_count() as i64;
        rat(16 * n * p, 3)
    };
    let mut pass = !rows.is_empty();
    for w in rows.windows(2) {
        if w[1].gap() >= w[0].gap() {
            pass = false;
        }
    }
    if let Some(last) = rows.last() {
        let n = level.n() as i64;
        let p = level.cusp_count() as i64;
        let bound = rat(5 * n * p, last.ell as i64);
        if last.gap().abs() > bound {
            pass = false;
        }
    }
    Ok(HilbertSamuelReport { rows, target, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{ratio_string, to_f64};

    fn level(n: u32) -> Level {
        Level::new(n).unwrap()
    }

    fn pt(tau: (f64, f64), z: (f64, f64)) -> ModularPoint {
        ModularPoint::new(Complex64::new(tau.0, tau.1), Complex64::new(z.0, z.1)).unwrap()
    }

    #[test]
    fn vanishing_orders_n4() {
        let l = level(4);
        assert_eq!(vanishing_order(l, 0).unwrap(), rat(1, 2));
        assert_eq!(vanishing_order(l, 1).unwrap(), int(0));
        assert_eq!(vanishing_order(l, 2).unwrap(), rat(-1, 2));
        assert_eq!(vanishing_order(l, 3).unwrap(), int(-1));
        // Depends on nu itself, not nu mod N: at nu = N the order keeps
        // sliding down (closed form and minimization agree on -3/2).
        assert_eq!(vanishing_order(l, 4).unwrap(), rat(-3, 2));
        assert!(vanishing_order(l, 5).is_err());
    }

    #[test]
    fn vanishing_order_closed_form_vs_oracle_grid() {
        // The assertion inside vanishing_order is the check.
        for n in 3..=12 {
            for nu in 0..=n {
                vanishing_order(level(n), nu).unwrap();
            }
        }
    }

    #[test]
    fn divisor_coefficient_reconstruction() {
        // 8 * order + metric correction 4 nu^2 / N = fiber coefficient.
        for n in 3..=12i64 {
            for nu in 0..n {
                let vo = vanishing_order(level(n as u32), nu as u32).unwrap();
                let rebuilt = int(8) * vo + rat(4 * nu * nu, n);
                let coeff = int(n) - int(4 * nu) + rat(4 * nu * nu, n);
                assert_eq!(rebuilt, coeff, "N = {n}, nu = {nu}");
            }
        }
    }

    #[test]
    fn dimension_values_pinned() {
        let d = |n, l| dim_cusp(level(n), l).unwrap().dim;
        assert_eq!(d(4, 1), int(22));
        assert_eq!(d(4, 2), int(178));
        assert_eq!(d(4, 25), int(39286));
        assert_eq!(d(4, 50), int(158578));
        assert_eq!(d(4, 100), int(637210));
        assert_eq!(d(3, 3), int(225));
        assert_eq!(d(3, 6), int(1041));
        assert_eq!(d(6, 6), int(6318));
    }

    #[test]
    fn dimension_precondition_and_integrality() {
        assert_eq!(
            dim_cusp(level(3), 1),
            Err(JacobiError::LevelDoesNotDivide { n: 3, ell: 1 })
        );
        // Integrality grid: the convention oracle.
        for n in [3u32, 4, 5, 6, 8] {
            for mult in 1..=8u32 {
                let ell = n * mult; // guarantees N | 4 ell
                dim_cusp(level(n), ell).unwrap();
            }
        }
    }

    #[test]
    fn hilbert_samuel_gap_decreases() {
        let r = hilbert_samuel_check(level(4), &[4, 8, 16, 32, 64]).unwrap();
        assert_eq!(r.target, int(128));
        assert!(r.pass);
        let gaps: Vec<f64> = r.rows.iter().map(|row| to_f64(&row.gap())).collect();
        for w in gaps.windows(2) {
            assert!(w[1] < w[0]);
        }
        assert_eq!(
            ratio_string(&hilbert_samuel_check(level(3), &[3]).unwrap().target),
            "64/1"
        );
    }

    #[test]
    fn theta_is_odd_and_vanishes_at_lattice() {
        let tau = Complex64::new(0.3, 1.1);
        for z in [
            Complex64::new(0.2, 0.1),
            Complex64::new(-0.4, 0.3),
            Complex64::new(0.05, -0.2),
        ] {
            let p = ModularPoint::new(tau, z).unwrap();
            let m = ModularPoint::new(tau, -z).unwrap();
            let a = theta11(&p, 1e-12).unwrap();
            let b = theta11(&m, 1e-12).unwrap();
            assert!((a + b).norm() < 1e-11, "oddness at z = {z}");
        }
        // z = 0 and z = tau + 1 are lattice zeros.
        let origin = ModularPoint::new(tau, Complex64::new(0.0, 0.0)).unwrap();
        assert!(theta11(&origin, 1e-12).unwrap().norm() < 1e-11);
        let lat = ModularPoint::new(tau, tau + 1.0).unwrap();
        assert!(theta11(&lat, 1e-12).unwrap().norm() < 1e-10);
    }

    #[test]
    fn norm_collapses_when_y_zero_eta_one() {
        let p = pt((0.0, 1.0), (0.3, 0.0));
        let f = Complex64::new(1.5, -2.0);
        let n = invariant_norm_sq(f, &p, WeightIndex::THETA8);
        assert!((n - f.norm_sqr()).abs() < 1e-12);
        assert_eq!(
            invariant_norm_sq(Complex64::new(0.0, 0.0), &p, WeightIndex::THETA8),
            0.0
        );
    }

    #[test]
    fn invariance_examples() {
        let base = pt((0.0, 1.0), (0.3, 0.2));
        let id = check_invariance(&GroupElement::identity(), &base, 1e-9).unwrap();
        assert_eq!(id.relative_deviation, 0.0);

        let t = check_invariance(&GroupElement::translation(1, 0), &base, 1e-9).unwrap();
        assert!(t.pass, "translation deviation {}", t.relative_deviation);

        let s_pt = pt((0.0, 2.0), (0.0, 0.25));
        let s = check_invariance(&GroupElement::s(), &s_pt, 1e-9).unwrap();
        assert!(s.pass, "inversion deviation {}", s.relative_deviation);
    }

    #[test]
    fn invariance_rejects_degenerate_inputs() {
        assert_eq!(GroupElement::new(2, 0, 0, 1, 0, 0), Err(JacobiError::NotUnimodular));
        let near_zero = pt((0.3, 1.1), (0.0, 0.0));
        assert_eq!(
            check_invariance(&GroupElement::identity(), &near_zero, 1e-9),
            Err(JacobiError::NearThetaZero)
        );
    }

    #[test]
    fn gamma_membership() {
        let l = level(4);
        assert!(GroupElement::identity().in_gamma(l));
        assert!(GroupElement::new(1, 4, 4, 17, 0, 0).unwrap().in_gamma(l));
        assert!(!GroupElement::s().in_gamma(l));
    }
}
