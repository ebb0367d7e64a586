//! Shared fixtures for the benchmarks.

use ffdist_core::{make_field, sample_point_set, PointSet, Space};

pub fn space(q: u64, d: usize) -> Space {
    Space::new(&make_field(q).unwrap(), d).unwrap()
}

/// A random set of about `q^{(d+1)/2}` points, the scale the incidence bound is about.
pub fn threshold_set(space: &Space, seed: u64) -> PointSet {
    let size = (space.q() as f64).powf((space.dim() as f64 + 1.0) / 2.0).ceil() as usize;
    sample_point_set(space, size.min(space.size()), seed).unwrap()
}
