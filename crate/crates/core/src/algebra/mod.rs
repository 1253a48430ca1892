//! Finite fields and quasigroups.

pub mod field;
pub mod quasigroup;

pub use field::{gf_add, gf_inv, gf_make, gf_mul, gf_of_order, is_prime, prime_factors, prime_power, FiniteField};
pub use quasigroup::{
    iterated_sum_quasigroup, quasigroup_from_mds_partition, validate_quasigroup, IteratedSum, LineViolation,
    Quasigroup, QuasigroupReport, TableQuasigroup,
};
