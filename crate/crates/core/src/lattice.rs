//! Q-divisors on surface models, exact blow-up bookkeeping, the
//! Stern-Brocot recursion over singular-point types, and the convergent
//! self-intersection limit of the b-divisor, computed two independent
//! ways (scalar recursion vs. materialized lattice).
//!
//! Divisors on blown-up models live in the orthogonal pullback basis:
//! q(pi*A, pi*B) = q(A, B), q(pi*A, E) = 0, q(E, E) = -1. This keeps the
//! form block-diagonal, so intersection numbers are sums over supports and
//! no strict-transform arithmetic is needed.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::numbers::{self, NumbersError};
use crate::rat::{int, rat};
use crate::surface::{
    base_model, ComponentId, Level, ModelId, SingularPoint, SurfaceModel,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// Divisor arithmetic attempted across different models.
    ModelMismatch,
    /// A divisor mentions a component the model does not have.
    UnknownComponent,
    /// The Jacobi divisor is only defined on the unblown elliptic base.
    NotEllipticBase,
    /// blow_up was handed a point that is not in the frontier.
    PointNotInFrontier,
    /// The point's two components do not cross on the current model.
    NotCrossing,
    /// The tower would materialize more blow-ups than allowed.
    BudgetExceeded { depth: u32 },
    /// Pairing with a boundary component is rejected.
    CurveInBoundary(ComponentId),
    Numbers(NumbersError),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::ModelMismatch => write!(f, "divisors live on different models"),
            LatticeError::UnknownComponent => write!(f, "divisor mentions an unknown component"),
            LatticeError::NotEllipticBase => {
                write!(f, "operation requires the unblown elliptic base model")
            }
            LatticeError::PointNotInFrontier => write!(f, "point is not in the tower frontier"),
            LatticeError::NotCrossing => write!(f, "point's components do not cross"),
            LatticeError::BudgetExceeded { depth } => {
                write!(f, "depth {depth} exceeds the blow-up budget")
            }
            LatticeError::CurveInBoundary(c) => {
                write!(f, "pairing with boundary component {c} is not defined")
            }
            LatticeError::Numbers(e) => write!(f, "{e}"),
        }
    }
}

impl From<NumbersError> for LatticeError {
    fn from(e: NumbersError) -> LatticeError {
        LatticeError::Numbers(e)
    }
}

/// A Q-Cartier divisor: sparse exact-rational coefficients on the
/// components of one specific model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDivisor {
    pub model: ModelId,
    pub coeffs: BTreeMap<ComponentId, BigRational>,
}

impl QDivisor {
    pub fn zero(model: ModelId) -> QDivisor {
        QDivisor {
            model,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, c: ComponentId, v: BigRational) {
        if v.is_zero() {
            self.coeffs.remove(&c);
        } else {
            self.coeffs.insert(c, v);
        }
    }

    pub fn coeff(&self, c: ComponentId) -> BigRational {
        self.coeffs.get(&c).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &QDivisor) -> Result<QDivisor, LatticeError> {
        if self.model != other.model {
            return Err(LatticeError::ModelMismatch);
        }
        let mut out = self.clone();
        for (c, v) in &other.coeffs {
            let s = out.coeff(*c) + v;
            out.set(*c, s);
        }
        Ok(out)
    }

    pub fn scale(&self, r: &BigRational) -> QDivisor {
        let mut out = QDivisor::zero(self.model);
        for (c, v) in &self.coeffs {
            out.set(*c, v * r);
        }
        out
    }

    fn check_supported(&self, model: &SurfaceModel) -> Result<(), LatticeError> {
        for c in self.coeffs.keys() {
            if !model.components.contains(c) {
                return Err(LatticeError::UnknownComponent);
            }
        }
        Ok(())
    }
}

/// Bilinear extension of the model's intersection form; exact.
pub fn intersect(
    model: &SurfaceModel,
    d1: &QDivisor,
    d2: &QDivisor,
) -> Result<BigRational, LatticeError> {
    if d1.model != model.id() || d2.model != model.id() {
        return Err(LatticeError::ModelMismatch);
    }
    d1.check_supported(model)?;
    d2.check_supported(model)?;
    // The form is sparse (a few entries per component), so iterate its
    // stored pairs rather than the product of the two supports. Each
    // off-diagonal entry is stored once and contributes symmetrically.
    let mut acc = BigRational::zero();
    for ((a, b), q) in model.form.entries() {
        let (Some(c1a), Some(c2b)) = (d1.coeffs.get(a), d2.coeffs.get(b)) else {
            if a == b {
                continue;
            }
            if let (Some(c1b), Some(c2a)) = (d1.coeffs.get(b), d2.coeffs.get(a)) {
                acc += c1b * c2a * q;
            }
            continue;
        };
        acc += c1a * c2b * q;
        if a != b {
            if let (Some(c1b), Some(c2a)) = (d1.coeffs.get(b), d2.coeffs.get(a)) {
                acc += c1b * c2a * q;
            }
        }
    }
    Ok(acc)
}

/// The divisor of theta_{1,1}^8 on the base model:
/// 8 H + sum_{j,nu} (N - 4 nu + 4 nu^2 / N) Theta_{j,nu}.
pub fn jacobi_divisor(model: &SurfaceModel) -> Result<QDivisor, LatticeError> {
    let level = model.level().ok_or(LatticeError::NotEllipticBase)?;
    if !model.is_base() {
        return Err(LatticeError::NotEllipticBase);
    }
    let n = level.n() as i64;
    let p = level.cusp_count() as u32;
    let mut d = QDivisor::zero(model.id());
    d.set(ComponentId::ZeroSection, int(8));
    for j in 1..=p {
        for nu in 0..n as u32 {
            let v = nu as i64;
            let c = int(n) - int(4 * v) + rat(4 * v * v, n);
            d.set(ComponentId::Fiber { cusp: j, nu }, c);
        }
    }
    Ok(d)
}

/// Closed form for the self-intersection on the base:
/// C.C = 16 (N^2 + 1) p_N / (3N).
pub fn self_intersection_closed_form(level: Level) -> BigRational {
    let n = level.n() as i64;
    let p = level.cusp_count() as i64;
    rat(16 * (n * n + 1) * p, 3 * n)
}

/// Limit of the tower: bdv(theta_{1,1}^8)^2 = 16 N p_N / 3.
pub fn bdv_limit_closed_form(level: Level) -> BigRational {
    let n = level.n() as i64;
    let p = level.cusp_count() as i64;
    rat(16 * n * p, 3)
}

/// A node of the Stern-Brocot tree of singular-point types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SternBrocotNode {
    pub pair: (u64, u64),
    pub depth: u32,
}

impl SternBrocotNode {
    pub fn root() -> SternBrocotNode {
        SternBrocotNode {
            pair: (1, 1),
            depth: 0,
        }
    }

    /// Children in the fixed order (n+m, m), then (n, n+m).
    pub fn children(&self) -> [SternBrocotNode; 2] {
        let (n, m) = self.pair;
        [
            SternBrocotNode {
                pair: (n + m, m),
                depth: self.depth + 1,
            },
            SternBrocotNode {
                pair: (n, n + m),
                depth: self.depth + 1,
            },
        ]
    }

    /// 1 / (n^2 m^2 (n+m)^2).
    pub fn contribution(&self) -> BigRational {
        let (n, m) = self.pair;
        let d = num_bigint::BigInt::from(n * n)
            * num_bigint::BigInt::from(m * m)
            * num_bigint::BigInt::from((n + m) * (n + m));
        BigRational::new(num_bigint::BigInt::from(1), d)
    }
}

/// All nodes of depth <= depth, breadth-first, children in fixed order.
pub fn stern_brocot_nodes(depth: u32) -> Vec<SternBrocotNode> {
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    queue.push_back(SternBrocotNode::root());
    while let Some(node) = queue.pop_front() {
        out.push(node);
        if node.depth < depth {
            for c in node.children() {
                queue.push_back(c);
            }
        }
    }
    out
}

/// S(depth) = sum of contributions over all nodes of depth <= depth.
pub fn stern_brocot_sum(depth: u32) -> BigRational {
    stern_brocot_nodes(depth)
        .iter()
        .map(SternBrocotNode::contribution)
        .sum()
}

/// Scalar route: C.C - (16 p_N / N) * S(depth), no lattice involved.
pub fn recursion_self_intersection(level: Level, depth: u32) -> BigRational {
    let n = level.n() as i64;
    let p = level.cusp_count() as i64;
    self_intersection_closed_form(level) - rat(16 * p, n) * stern_brocot_sum(depth)
}

/// Hard cap on tower depth: a full generation at depth d holds 2^d
/// frontier points per seed.
const DEPTH_BUDGET: u32 = 8;

/// A blow-up tower: the current model, the tracked divisor, its
/// self-intersection (rechecked against the form after every blow-up),
/// and the frontier queue of singular points in breadth-first order.
#[derive(Clone, Debug)]
pub struct TowerState {
    pub model: SurfaceModel,
    pub div: QDivisor,
    pub self_int: BigRational,
    pub frontier: VecDeque<SingularPoint>,
    /// Transverse crossings present on the current model; the stored form
    /// is block-diagonal (pullback basis), so incidence is tracked here.
    crossings: BTreeSet<(ComponentId, ComponentId)>,
}

impl TowerState {
    fn from_parts(model: SurfaceModel, div: QDivisor) -> Result<TowerState, LatticeError> {
        let self_int = intersect(&model, &div, &div)?;
        let frontier: VecDeque<SingularPoint> = model.singular_points.iter().cloned().collect();
        let crossings = frontier.iter().map(|p| p.at).collect();
        Ok(TowerState {
            model,
            div,
            self_int,
            frontier,
            crossings,
        })
    }

    /// Full tower over the base model of E(N): all N p_N seed points.
    pub fn for_level(level: Level) -> Result<TowerState, LatticeError> {
        let model = base_model(level);
        let div = jacobi_divisor(&model)?;
        TowerState::from_parts(model, div)
    }

    /// Same model and divisor, but the frontier restricted to a single
    /// seed point; the symmetry of the N-gons makes the other seeds exact
    /// copies, so full-tower numbers follow by a closed-form multiplier.
    pub fn for_level_single_seed(level: Level) -> Result<TowerState, LatticeError> {
        let mut state = TowerState::for_level(level)?;
        let first = state.frontier.pop_front().ok_or(LatticeError::NotCrossing)?;
        state.frontier.clear();
        state.frontier.push_back(first);
        Ok(state)
    }

    /// Synthetic unit seed for the toric identity: three lines with all
    /// pairwise and self intersections 1, tracked divisor = one line, and
    /// a single type-(1,1) point of multiplicity 1 on the other two.
    pub fn toric_seed() -> Result<TowerState, LatticeError> {
        let l = |nu| ComponentId::Fiber { cusp: 1, nu };
        let components = alloc::vec![l(0), l(1), l(2)];
        let mut form = crate::surface::IntersectionForm::new();
        for a in 0..3 {
            for b in a..3 {
                form.set(l(a), l(b), int(1));
            }
        }
        let point = SingularPoint::new(l(1), l(2), (1, 1), int(1));
        let model = SurfaceModel::synthetic(components, form, alloc::vec![point]);
        let mut div = QDivisor::zero(model.id());
        div.set(l(0), int(1));
        TowerState::from_parts(model, div)
    }

    /// Number of blow-ups performed so far.
    pub fn blowups(&self) -> u32 {
        self.model.blowup_history.len() as u32
    }

    /// Blow up one singular point of the frontier.
    ///
    /// New exceptional E with q(E, E) = -1, divisor coefficients kept in
    /// the pullback basis with the new term -(mu / (n m (n+m))) E, and the
    /// point replaced by its two children of types (n+m, m) and (n, n+m)
    /// (same multiplicity), appended at the back of the queue. The cached
    /// self-intersection is rechecked against the form afterwards.
    pub fn blow_up(&mut self, point: &SingularPoint) -> Result<(), LatticeError> {
        let idx = self
            .frontier
            .iter()
            .position(|p| p == point)
            .ok_or(LatticeError::PointNotInFrontier)?;
        if !self.crossings.contains(&point.at) {
            return Err(LatticeError::NotCrossing);
        }
        self.frontier.remove(idx);
        self.crossings.remove(&point.at);

        let serial = self.model.take_serial();
        let e = ComponentId::Exceptional { serial };
        self.model.components.push(e);
        self.model.form.set(e, e, int(-1));

        let (n, m) = point.kind;
        let denom = int((n * m * (n + m)) as i64);
        let coeff = -&point.multiplicity / &denom;
        self.div.set(e, coeff.clone());
        self.model.blowup_history.push(crate::surface::BlowupRecord {
            point: point.clone(),
            exceptional_serial: serial,
        });
        // The model identity advanced one generation; the divisor moves
        // with it (its coefficients are already in the new pullback basis).
        self.div.model = self.model.id();

        // Children sit on E where it meets the two strict transforms.
        let child_a = SingularPoint::new(e, point.at.0, (n + m, m), point.multiplicity.clone());
        let child_b = SingularPoint::new(e, point.at.1, (n, n + m), point.multiplicity.clone());
        self.crossings.insert(child_a.at);
        self.crossings.insert(child_b.at);
        self.frontier.push_back(child_a);
        self.frontier.push_back(child_b);
        self.model.singular_points = self.frontier.iter().cloned().collect();

        // The drop is exactly the exceptional coefficient squared.
        self.self_int -= &coeff * &coeff;
        let check = intersect(&self.model, &self.div, &self.div)?;
        assert_eq!(check, self.self_int, "self_int invariant broken by blow_up");
        Ok(())
    }

    /// A mild blow-up: a new exceptional component appears, but the
    /// tracked divisor is its plain pullback, so nothing changes in the
    /// numbers. Exposed for completeness; towers never schedule these.
    pub fn mild_blow_up(&mut self) {
        let serial = self.model.take_serial();
        let e = ComponentId::Exceptional { serial };
        self.model.components.push(e);
        self.model.form.set(e, e, int(-1));
    }

    /// Blow up one full breadth-first generation of the frontier.
    pub fn descend_generation(&mut self) -> Result<(), LatticeError> {
        for _ in 0..self.frontier.len() {
            let p = self.frontier.front().cloned().ok_or(LatticeError::PointNotInFrontier)?;
            self.blow_up(&p)?;
        }
        Ok(())
    }
}

/// Lattice route: materialize every blow-up over a single seed point to
/// the given depth, read off intersect(div, div), and recover the full
/// tower by the N p_N symmetry multiplier.
pub fn lattice_self_intersection(level: Level, depth: u32) -> Result<BigRational, LatticeError> {
    if depth > DEPTH_BUDGET {
        return Err(LatticeError::BudgetExceeded { depth });
    }
    let mut tower = TowerState::for_level_single_seed(level)?;
    let full = tower.self_int.clone();
    for _ in 0..=depth {
        tower.descend_generation()?;
    }
    let seed_drop = &full - &tower.self_int;
    let copies = int((level.n() as u64 * level.cusp_count()) as i64);
    Ok(full - seed_drop * copies)
}

/// Windowed b-divisor self-intersection with a proven tail majorant:
/// estimate = C.C - (16 p_N / N) * coprime window sum, and the true limit
/// 16 N p_N / 3 lies in [estimate - tail_bound, estimate].
pub fn bdv_limit(
    level: Level,
    tail_m: u32,
) -> Result<(BigRational, BigRational), LatticeError> {
    if tail_m < 2 {
        return Err(LatticeError::Numbers(NumbersError::WindowTooSmall(tail_m)));
    }
    let n = level.n() as i64;
    let p = level.cusp_count() as i64;
    let scale = rat(16 * p, n);
    let window = numbers::coprime_tornheim(tail_m)?;
    let estimate = self_intersection_closed_form(level) - &scale * &window.partial_sum;
    let tail_bound = scale * window.tail_bound;
    Ok((estimate, tail_bound))
}

/// Pairing of the b-divisor with a curve class not contained in the
/// boundary. Only the zero section qualifies here: it misses every double
/// point, so the pairing already stabilizes on the base model.
pub fn curve_pairing(level: Level, curve: ComponentId) -> Result<BigRational, LatticeError> {
    match curve {
        ComponentId::ZeroSection => {}
        other => return Err(LatticeError::CurveInBoundary(other)),
    }
    let model = base_model(level);
    let c = jacobi_divisor(&model)?;
    let mut h = QDivisor::zero(model.id());
    h.set(ComponentId::ZeroSection, int(1));
    intersect(&model, &c, &h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio_string;

    fn level(n: u32) -> Level {
        Level::new(n).unwrap()
    }

    #[test]
    fn jacobi_divisor_coefficients() {
        let m = base_model(level(4));
        let d = jacobi_divisor(&m).unwrap();
        assert_eq!(d.coeff(ComponentId::ZeroSection), int(8));
        let at = |nu| d.coeff(ComponentId::Fiber { cusp: 1, nu });
        assert_eq!(at(0), int(4));
        assert_eq!(at(1), int(1));
        assert_eq!(at(2), int(0));
        assert_eq!(at(3), int(1));
    }

    #[test]
    fn intersection_examples_n4() {
        let m = base_model(level(4));
        let c = jacobi_divisor(&m).unwrap();
        assert_eq!(intersect(&m, &c, &c).unwrap(), int(136));

        let mut h = QDivisor::zero(m.id());
        h.set(ComponentId::ZeroSection, int(1));
        assert_eq!(intersect(&m, &h, &h).unwrap(), int(-2));
        assert_eq!(intersect(&m, &c, &h).unwrap(), int(8));
    }

    #[test]
    fn closed_form_matches_lattice() {
        for n in 3..=12u32 {
            let l = level(n);
            let m = base_model(l);
            let c = jacobi_divisor(&m).unwrap();
            assert_eq!(
                intersect(&m, &c, &c).unwrap(),
                self_intersection_closed_form(l),
                "N = {n}"
            );
        }
    }

    #[test]
    fn limit_identity_all_levels() {
        // C.C - 16 p_N / (3N) = 16 N p_N / 3 as pure algebra.
        for n in 3..=30u32 {
            let l = level(n);
            let p = l.cusp_count() as i64;
            let lhs = self_intersection_closed_form(l) - rat(16 * p, 3 * n as i64);
            assert_eq!(lhs, bdv_limit_closed_form(l), "N = {n}");
        }
    }

    #[test]
    fn model_mismatch_rejected() {
        let m3 = base_model(level(3));
        let m4 = base_model(level(4));
        let c3 = jacobi_divisor(&m3).unwrap();
        let c4 = jacobi_divisor(&m4).unwrap();
        assert_eq!(
            intersect(&m4, &c3, &c4),
            Err(LatticeError::ModelMismatch)
        );
        assert!(c3.add(&c4).is_err());
    }

    #[test]
    fn stern_brocot_sums_frozen() {
        assert_eq!(ratio_string(&stern_brocot_sum(0)), "1/4");
        assert_eq!(ratio_string(&stern_brocot_sum(1)), "11/36");
        assert_eq!(ratio_string(&stern_brocot_sum(2)), "193/600");
        assert_eq!(ratio_string(&stern_brocot_sum(3)), "115541/352800");
        assert_eq!(
            ratio_string(&stern_brocot_sum(4)),
            "21428150123/64929664800"
        );
        assert_eq!(
            ratio_string(&stern_brocot_sum(5)),
            "528017248628101/1593893411510400"
        );
    }

    #[test]
    fn stern_brocot_coprime_and_injective() {
        let nodes = stern_brocot_nodes(12);
        assert_eq!(nodes.len(), (1usize << 13) - 1);
        let mut seen = BTreeSet::new();
        for n in &nodes {
            assert_eq!(num_integer::gcd(n.pair.0, n.pair.1), 1);
            assert!(seen.insert(n.pair), "duplicate pair {:?}", n.pair);
        }
    }

    #[test]
    fn recursion_values_frozen() {
        assert_eq!(recursion_self_intersection(level(4), 0), int(130));
        assert_eq!(
            ratio_string(&recursion_self_intersection(level(4), 1)),
            "386/3"
        );
        assert_eq!(
            ratio_string(&recursion_self_intersection(level(4), 2)),
            "3207/25"
        );
        assert_eq!(
            ratio_string(&recursion_self_intersection(level(3), 0)),
            "592/9"
        );
    }

    #[test]
    fn recursion_is_strictly_decreasing() {
        for n in [3u32, 4] {
            let mut prev = self_intersection_closed_form(level(n));
            for d in 0..=6 {
                let v = recursion_self_intersection(level(n), d);
                assert!(v < prev, "N = {n}, depth {d}");
                assert!(v > bdv_limit_closed_form(level(n)));
                prev = v;
            }
        }
    }

    #[test]
    fn first_blowup_matches_expected_numbers() {
        let mut t = TowerState::for_level_single_seed(level(4)).unwrap();
        let before = t.self_int.clone();
        let p = t.frontier.front().cloned().unwrap();
        t.blow_up(&p).unwrap();
        // mu = 4/N = 1 at N = 4: exceptional coefficient -mu/2 = -1/2,
        // drop mu^2/4 = 1/4.
        let e = ComponentId::Exceptional { serial: 0 };
        assert_eq!(t.div.coeff(e), rat(-1, 2));
        assert_eq!(&before - &t.self_int, rat(1, 4));
        // Children of (1,1): types (2,1) then (1,2), same multiplicity.
        let kinds: Vec<_> = t.frontier.iter().rev().take(2).map(|q| q.kind).collect();
        assert_eq!(kinds, alloc::vec![(1, 2), (2, 1)]);
    }

    #[test]
    fn blowup_of_one_two_point() {
        let mut t = TowerState::toric_seed().unwrap();
        assert_eq!(t.self_int, int(1));
        let p0 = t.frontier.front().cloned().unwrap();
        t.blow_up(&p0).unwrap();
        assert_eq!(t.self_int, rat(3, 4));
        // Blow up the (1,2) child: drop 1/(1*4*9) = 1/36.
        let p12 = t
            .frontier
            .iter()
            .find(|q| q.kind == (1, 2))
            .cloned()
            .unwrap();
        let before = t.self_int.clone();
        t.blow_up(&p12).unwrap();
        assert_eq!(&before - &t.self_int, rat(1, 36));
        let kinds: Vec<_> = t.frontier.iter().map(|q| q.kind).collect();
        assert!(kinds.contains(&(3, 2)) && kinds.contains(&(1, 3)));
    }

    #[test]
    fn blow_up_rejects_stale_points() {
        let mut t = TowerState::toric_seed().unwrap();
        let p = t.frontier.front().cloned().unwrap();
        t.blow_up(&p).unwrap();
        assert_eq!(t.blow_up(&p), Err(LatticeError::PointNotInFrontier));
    }

    #[test]
    fn mild_blow_up_is_numerically_silent() {
        let mut t = TowerState::toric_seed().unwrap();
        let before = (t.div.clone(), t.self_int.clone());
        t.mild_blow_up();
        assert_eq!(t.div, before.0);
        assert_eq!(intersect(&t.model, &t.div, &t.div).unwrap(), before.1);
    }

    #[test]
    fn oracle_equivalence_small() {
        for d in 0..=3 {
            assert_eq!(
                lattice_self_intersection(level(4), d).unwrap(),
                recursion_self_intersection(level(4), d),
                "depth {d}"
            );
        }
        assert_eq!(
            lattice_self_intersection(level(3), 3).unwrap(),
            recursion_self_intersection(level(3), 3)
        );
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            lattice_self_intersection(level(3), 40),
            Err(LatticeError::BudgetExceeded { depth: 40 })
        );
    }

    #[test]
    fn toric_tower_matches_scalar_recursion() {
        let mut t = TowerState::toric_seed().unwrap();
        for d in 0..=4 {
            t.descend_generation().unwrap();
            assert_eq!(t.self_int, int(1) - stern_brocot_sum(d), "depth {d}");
        }
    }

    #[test]
    fn bdv_limit_intervals() {
        let (est4, tail4) = bdv_limit(level(4), 100).unwrap();
        let target4 = bdv_limit_closed_form(level(4));
        assert_eq!(target4, int(128));
        assert!(&est4 - &tail4 <= target4 && target4 <= est4);
        assert!(tail4 < rat(3, 100_000));

        let (est3, tail3) = bdv_limit(level(3), 50).unwrap();
        let target3 = bdv_limit_closed_form(level(3));
        assert_eq!(target3, int(64));
        assert!(&est3 - &tail3 <= target3 && target3 <= est3);

        assert!(bdv_limit(level(3), 1).is_err());
    }

    #[test]
    fn curve_pairing_examples() {
        assert_eq!(curve_pairing(level(4), ComponentId::ZeroSection).unwrap(), int(8));
        assert_eq!(curve_pairing(level(3), ComponentId::ZeroSection).unwrap(), int(4));
        assert!(matches!(
            curve_pairing(level(4), ComponentId::Fiber { cusp: 1, nu: 0 }),
            Err(LatticeError::CurveInBoundary(_))
        ));
    }

    #[test]
    fn curve_pairing_scales_bilinearly() {
        let m = base_model(level(4));
        let c = jacobi_divisor(&m).unwrap();
        let mut h = QDivisor::zero(m.id());
        h.set(ComponentId::ZeroSection, int(1));
        let two_h = h.scale(&int(2));
        assert_eq!(
            intersect(&m, &c, &two_h).unwrap(),
            intersect(&m, &c, &h).unwrap() * int(2)
        );
    }
}
