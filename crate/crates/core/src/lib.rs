//! Ground-state energetics of one-dimensional classical particle chains.
//!
//! A chain at fixed mean spacing `A` is either equidistant (one particle per
//! unit cell) or bipartite (two interleaved sublattices with alternating gaps
//! `a`, `b` and ratio `Δ = a/b`). For pair potentials built from inverse
//! powers (Riesz components, e.g. the `(n, m)` Mie family) this crate
//! evaluates both energies in closed zeta form and by theta-function
//! quadrature, expands the bipartite energy in `ε = ln Δ`, locates the
//! continuous equidistant-to-bipartite transition and follows the order
//! parameter into the bipartite phase, with and without a hard core.
//!
//! The [`oracle`] module holds brute-force lattice sums and Richardson
//! derivatives that every fast path is checked against.

pub mod error;
pub mod fit;
pub mod hardcore;
pub mod landau;
pub mod lattice_energy;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod roots;
pub mod specfun;
pub mod transition;

pub use error::{Error, Result};
pub use fit::PowerLawFit;
pub use hardcore::{HardCoreConfig, JunctionPoint, Regime};
pub use landau::{LandauCoefficients, TransitionPoint};
pub use lattice_energy::{BipartiteChain, EnergyMethod, EnergyResult};
pub use potential::{MieParams, PotentialSpec, PotentialValue, RieszComponent};
pub use transition::{Branch, DeltaSolution};
