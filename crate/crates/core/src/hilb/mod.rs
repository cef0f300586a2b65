//! Partition combinatorics and the numerical side of the decomposition of
//! the motive of the Hilbert scheme `S^[n]` into symmetric products.
//!
//! Graded invariants of symmetric powers use the signed (super) symmetric
//! power, so odd classes anticommute. For an abelian surface and `n = 2`
//! the degree-1 part of `H^*(A^(2))` is the invariant part of
//! `H^1 ⊗ H^0 ⊕ H^0 ⊗ H^1`, which is 4-dimensional.

mod motive;
mod partition;
mod poincare;

pub use motive::{dcm_decomposition, FormalMotive, MotiveSummand};
pub use partition::{
    integer_partitions, multiplicities, orbit_representatives, orbits_by_enumeration, set_partitions,
    SetPartition,
};
pub use poincare::{
    euler_characteristic, gottsche_euler, gottsche_poincare, hilb_ck_dimensions, poincare_polynomial,
    summand_poincare, symmetric_power_poincare, Poly,
};
