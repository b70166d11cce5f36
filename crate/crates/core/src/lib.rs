//! Semiclassical Casimir energies and piston forces.
//!
//! Periodic-orbit (trace-formula) vacuum energies for the cavities of
//! three piston geometries — a parallelepiped with a flat head, a
//! parallelepiped with a semi-cylindrical head, and a circular cylinder
//! with a hemispherical head — under Dirichlet, Neumann and
//! perfect-conductor boundary conditions, together with an independent
//! mode-sum oracle that cross-checks the exactly solvable box case.
//!
//! Everything is computed in ħ = c = 1 units: energies are dimensionless
//! coefficients with symbolic scale tags (ħc/R, ħc·L/R², …), forces are
//! in ħc/length². [`model::force_to_si`] converts a contact-force
//! coefficient to piconewtons.
//!
//! Series, lattice and mode sums run data-parallel under the `parallel`
//! feature (enabled by default) with a deterministic pairwise reduction:
//! results are bit-identical across thread counts and identical to the
//! sequential fallback built with `--no-default-features`.

pub mod exec;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod orbits;
pub mod piston;
pub mod semiclassical;
pub mod verify;

mod lattice;

pub use model::{
    force_to_si, BoundaryCondition, EnergyResult, EnergyScale, Error, PistonConfig, Provenance,
    Result, SeriesControl, HBAR_C_JOULE_METER,
};
pub use oracle::{
    oracle_piston_energy, regularized_energy, OracleControl, PistonEstimate, Regulator,
};
pub use orbits::{
    conjugate_point_count, maslov_updown, polygon_orbit_length, updown_orbit, HalfCavity,
    OrbitClass, OrbitKind,
};
pub use piston::{
    box_energy_periodic_orbits, halfcyl_force_profile, hemisphere_force_estimate, piston_force,
    subtracted_energy, Direction, ForceMethod, ForceResult, PistonEnergy, ProfilePoint,
};
pub use semiclassical::{
    density_updown_halfcyl, density_updown_hemisphere, em_energy, energy_cylinder,
    energy_halfcylinder, energy_hemisphere, energy_sphere, energy_updown_halfcyl,
    energy_updown_hemisphere,
};
