//! Combinatorial model of the universal elliptic surface E(N).
//!
//! The base model consists of the zero section H together with, over each
//! of the p_N cusps of the modular curve, an N-gon of rational curves
//! Theta_{j,nu}. The intersection form is stored as an exact sparse
//! symmetric rational form; the N * p_N double points of the boundary are
//! the singular points of the invariant metric, all of type (1,1) and
//! multiplicity 4/N on the base model.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::rat::{factorize, int, rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceError {
    /// The construction requires N >= 3 (torsion-free level group).
    LevelTooSmall(u32),
    /// A formula that must produce an integer did not; this signals an
    /// arithmetic bug and is never rounded over.
    NonIntegral(&'static str),
    /// The operation is only defined on the unblown base model.
    NotBaseModel,
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::LevelTooSmall(n) => {
                write!(f, "level N = {n} rejected: the construction requires N >= 3")
            }
            SurfaceError::NonIntegral(what) => {
                write!(f, "{what} evaluated to a non-integer; refusing to round")
            }
            SurfaceError::NotBaseModel => write!(f, "operation requires the unblown base model"),
        }
    }
}

/// The level N >= 3 with its derived modular-curve invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level {
    n: u32,
}

impl Level {
    pub fn new(n: u32) -> Result<Level, SurfaceError> {
        if n < 3 {
            return Err(SurfaceError::LevelTooSmall(n));
        }
        Ok(Level { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Index of the level subgroup in SL2(Z): N^3 * prod_{p | N} (1 - 1/p^2),
    /// computed exactly as N^3 * prod (p^2 - 1) / p^2 over distinct prime
    /// divisors. Always an integer.
    pub fn index(&self) -> u64 {
        let n = self.n as u128;
        let mut acc = n * n * n;
        for (p, _) in factorize(self.n as u64) {
            let p2 = (p as u128) * (p as u128);
            debug_assert_eq!(acc % p2, 0);
            acc = acc / p2 * (p2 - 1);
        }
        acc as u64
    }

    /// Number of cusps p_N = index / (2N).
    pub fn cusp_count(&self) -> u64 {
        let idx = self.index();
        debug_assert_eq!(idx % (2 * self.n as u64), 0);
        idx / (2 * self.n as u64)
    }

    /// Genus of the modular curve: 1 + (N - 6) * p_N / 12.
    pub fn genus(&self) -> Result<u64, SurfaceError> {
        let p = self.cusp_count() as i128;
        let num = 12 + (self.n as i128 - 6) * p;
        if num % 12 != 0 || num < 0 {
            return Err(SurfaceError::NonIntegral("genus"));
        }
        Ok((num / 12) as u64)
    }

    /// Arithmetic genus of the surface: N * p_N / 12 - 1.
    pub fn arithmetic_genus(&self) -> Result<u64, SurfaceError> {
        let np = self.n as u128 * self.cusp_count() as u128;
        if np % 12 != 0 || np < 12 {
            return Err(SurfaceError::NonIntegral("arithmetic genus"));
        }
        Ok((np / 12 - 1) as u64)
    }
}

/// Structural identity of a component of a birational model of E(N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentId {
    /// The image of the zero section, written H.
    ZeroSection,
    /// Fiber component Theta_{j, nu}: cusp j in 1..=p_N, position nu in 0..N.
    Fiber { cusp: u32, nu: u32 },
    /// Exceptional component of a blow-up, identified by its serial.
    Exceptional { serial: u32 },
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::ZeroSection => write!(f, "H"),
            ComponentId::Fiber { cusp, nu } => write!(f, "Theta/{cusp}/{nu}"),
            ComponentId::Exceptional { serial } => write!(f, "E/{serial}"),
        }
    }
}

/// Sparse symmetric intersection form with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntersectionForm {
    entries: BTreeMap<(ComponentId, ComponentId), BigRational>,
}

impl IntersectionForm {
    pub fn new() -> IntersectionForm {
        IntersectionForm::default()
    }

    fn key(a: ComponentId, b: ComponentId) -> (ComponentId, ComponentId) {
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn set(&mut self, a: ComponentId, b: ComponentId, value: BigRational) {
        if value.is_zero() {
            self.entries.remove(&Self::key(a, b));
        } else {
            self.entries.insert(Self::key(a, b), value);
        }
    }

    /// q(A, B); zero for unstored pairs. Symmetric by construction.
    pub fn q(&self, a: ComponentId, b: ComponentId) -> BigRational {
        self.entries
            .get(&Self::key(a, b))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(ComponentId, ComponentId), &BigRational)> {
        self.entries.iter()
    }
}

/// A non-mild point of the metric: a transverse crossing of two boundary
/// components, with a Stern-Brocot type (n, m) and a multiplicity mu.
///
/// On blown-up models the crossing components are to be read as strict
/// transforms; the stored ids are the structural labels of the two curves
/// through the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub at: (ComponentId, ComponentId),
    pub kind: (u64, u64),
    pub multiplicity: BigRational,
}

impl SingularPoint {
    pub fn new(
        a: ComponentId,
        b: ComponentId,
        kind: (u64, u64),
        multiplicity: BigRational,
    ) -> SingularPoint {
        assert!(a != b, "singular point needs two distinct components");
        assert!(kind.0 >= 1 && kind.1 >= 1);
        assert_eq!(num_integer::gcd(kind.0, kind.1), 1, "type must be coprime");
        assert!(multiplicity > BigRational::zero());
        let at = if a <= b { (a, b) } else { (b, a) };
        SingularPoint {
            at,
            kind,
            multiplicity,
        }
    }
}

/// Where a model came from; part of the model identity used to keep
/// divisors from mixing between models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// A model of the universal elliptic surface of the given level.
    Elliptic(Level),
    /// A hand-built model (the toric seed of the volume checks).
    Synthetic,
}

/// Lightweight identity of a model: origin plus blow-up generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelId {
    pub kind: ModelKind,
    pub blowups: u32,
}

/// One blow-up event, for replay and serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRecord {
    pub point: SingularPoint,
    pub exceptional_serial: u32,
}

/// A birational model: components, exact intersection form, current
/// singular set, and the history that produced it from the base model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub kind: ModelKind,
    pub components: Vec<ComponentId>,
    pub form: IntersectionForm,
    pub singular_points: Vec<SingularPoint>,
    pub blowup_history: Vec<BlowupRecord>,
    next_serial: u32,
}

impl SurfaceModel {
    pub fn id(&self) -> ModelId {
        ModelId {
            kind: self.kind,
            blowups: self.blowup_history.len() as u32,
        }
    }

    pub fn is_base(&self) -> bool {
        self.blowup_history.is_empty()
    }

    pub fn level(&self) -> Option<Level> {
        match self.kind {
            ModelKind::Elliptic(l) => Some(l),
            ModelKind::Synthetic => None,
        }
    }

    /// Fresh exceptional serial; used by the blow-up engine.
    pub(crate) fn take_serial(&mut self) -> u32 {
        let s = self.next_serial;
        self.next_serial += 1;
        s
    }

    /// Hand-built model for seeds outside the elliptic family. Every
    /// singular point must be a transverse crossing in the given form.
    pub fn synthetic(
        components: Vec<ComponentId>,
        form: IntersectionForm,
        singular_points: Vec<SingularPoint>,
    ) -> SurfaceModel {
        let model = SurfaceModel {
            kind: ModelKind::Synthetic,
            components,
            form,
            singular_points,
            blowup_history: Vec::new(),
            next_serial: 0,
        };
        model.check_singular_points();
        model
    }

    fn check_singular_points(&self) {
        for p in &self.singular_points {
            assert_eq!(
                self.form.q(p.at.0, p.at.1),
                int(1),
                "singular point must sit at a transverse crossing"
            );
        }
    }
}

/// The base model of E(N): H plus p_N boundary N-gons, with the standard
/// intersection table and the N * p_N type-(1,1) double points of
/// multiplicity 4/N at the crossings Theta_{j,nu} /\ Theta_{j,nu+1}.
pub fn base_model(level: Level) -> SurfaceModel {
    let n = level.n();
    let p = level.cusp_count() as u32;

    let mut components = Vec::with_capacity(1 + (n * p) as usize);
    components.push(ComponentId::ZeroSection);
    for j in 1..=p {
        for nu in 0..n {
            components.push(ComponentId::Fiber { cusp: j, nu });
        }
    }

    let mut form = IntersectionForm::new();
    // H.H = -N p_N / 12 (adjunction).
    form.set(
        ComponentId::ZeroSection,
        ComponentId::ZeroSection,
        -rat(n as i64 * p as i64, 12),
    );
    for j in 1..=p {
        // H meets each fiber exactly once, in the nu = 0 component.
        form.set(
            ComponentId::ZeroSection,
            ComponentId::Fiber { cusp: j, nu: 0 },
            int(1),
        );
        for nu in 0..n {
            let a = ComponentId::Fiber { cusp: j, nu };
            form.set(a, a, int(-2));
            // Cyclic neighbors meet once. For N = 3 the two neighbors of a
            // component are the two other components, so each unordered
            // pair is stored once with multiplicity 1; the fiber-class
            // nullity q(F, F) = 0 confirms this reading.
            let b = ComponentId::Fiber {
                cusp: j,
                nu: (nu + 1) % n,
            };
            form.set(a, b, int(1));
        }
    }

    let mu = rat(4, n as i64);
    let mut singular_points = Vec::with_capacity((n * p) as usize);
    for j in 1..=p {
        for nu in 0..n {
            singular_points.push(SingularPoint::new(
                ComponentId::Fiber { cusp: j, nu },
                ComponentId::Fiber {
                    cusp: j,
                    nu: (nu + 1) % n,
                },
                (1, 1),
                mu.clone(),
            ));
        }
    }

    let model = SurfaceModel {
        kind: ModelKind::Elliptic(level),
        components,
        form,
        singular_points,
        blowup_history: Vec::new(),
        next_serial: 0,
    };
    model.check_singular_points();
    model
}

/// epsilon(x) = x - floor(x), exact on rationals.
pub fn frac_part(x: &BigRational) -> BigRational {
    x - x.floor()
}
