//! Exact intersection theory on the universal elliptic surface of level N,
//! the blow-up tower indexed by the Stern-Brocot tree of singular-point
//! types, and the number-theoretic and analytic identities that pin down
//! the limiting self-intersection of the associated b-divisor.
//!
//! The crate is `no_std` (with `alloc`): everything here is pure
//! computation over exact rationals and `f64`, with no IO. File formats
//! and the CLI live in the companion `bdivisor-cli` crate.
//!
//! Module map:
//! - [`surface`]: the combinatorial model of E(N), its base intersection
//!   form, and the modular-curve invariants (index, cusps, genus).
//! - [`lattice`]: Q-divisors, blow-ups with exact bookkeeping, the
//!   Stern-Brocot recursion, and the convergent self-intersection limit.
//! - [`numbers`]: zeta values, Tornheim double zeta, Hurwitz class
//!   numbers, Moebius and square-part helpers.
//! - [`jacobi`]: the cusp-form dimension formula, Riemann theta
//!   evaluation, the invariant metric, and vanishing orders.
//! - [`analysis`]: the model singular functions f_{n,m}, finite-difference
//!   probes, the residue quadrature, and the toric volume checks.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod jacobi;
pub mod lattice;
pub mod numbers;
pub mod rat;
pub mod surface;
