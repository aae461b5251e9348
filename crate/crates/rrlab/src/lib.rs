//! rrlab — a desk-scale numerical laboratory for radiation reaction in one
//! dimension.
//!
//! A non-relativistic charge crosses a static, asymptotically constant
//! potential V(z). Two classical prescriptions for the radiation back-action
//! are compared along the unperturbed trajectory:
//!
//! * the Lorentz-Dirac energy rate, which contains the derivative of the
//!   acceleration and suffers from runaway and preacceleration pathologies
//!   (exhibited in [`lorentz_dirac`]), and
//! * the Larmor prescription, which deducts the instantaneous radiated power.
//!
//! Both give the same final velocity but different position shifts; the
//! difference is first order in the acceleration. A WKB treatment of photon
//! emission ([`qed_wkb`]) shows the quantum position shift is second order in
//! acceleration and converges to the Larmor-theory value in the
//! narrow-packet limit, which is the discriminating result this crate
//! reproduces numerically.
//!
//! The crate is organised bottom-up: deterministic numerical kernels in
//! [`numerics`], potentials and unperturbed trajectories in [`potentials`],
//! the two shift computations in [`classical_shifts`], frequency-domain
//! observables in [`spectral`], and the semiclassical emission amplitudes in
//! [`qed_wkb`]. [`runner`] wires everything into config-driven scenarios with
//! machine-readable reports.

pub mod classical_shifts;
pub mod error;
pub mod lorentz_dirac;
pub mod numerics;
pub mod potentials;
pub mod qed_wkb;
pub mod runner;
pub mod spectral;

pub use error::{Error, Result};
