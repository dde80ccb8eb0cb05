//! Ground truth: brute-force enumeration, the signed brick objects with
//! their involution, and the Dyck path bijection.

mod brute;
mod dyck;
mod objects;

pub use brute::{brute_cycle_poly, brute_ncm_poly, brute_ncm_shard, brute_nm_poly, brute_nm_shard};
pub use dyck::{catalan_sequences, check_sequence, dyck_paths, phi, phi_inverse, DyckPath, Step};
pub use objects::{
    brick_tabloid_count, brick_tabloids, enumerate_objects, fixed_point_check, involution,
    partitions, theta_h, BrickTabloid, FilledObject, FixedPointCheck, Objects,
    DEFAULT_OBJECT_BOUND,
};
