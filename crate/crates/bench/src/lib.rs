//! Benchmark fixtures: deterministic families at a few desk-scale sizes.

use cgframe_core::{
    random_frame_with_bounds, random_onb, GFrameFamily, LocalDims,
};

/// Square layout: `n` atoms of local dimension 1, unit weights.
pub fn scalar_dims(n: usize) -> LocalDims {
    LocalDims::new(vec![1; n]).unwrap()
}

/// Orthonormal basis on the square scalar layout.
pub fn basis(seed: u64, n: usize) -> GFrameFamily {
    random_onb(seed, n, &scalar_dims(n), &vec![1.0; n]).unwrap()
}

/// Frame with bounds (1, 4) on the square scalar layout.
pub fn frame(seed: u64, n: usize) -> GFrameFamily {
    random_frame_with_bounds(seed, n, &scalar_dims(n), &vec![1.0; n], 1.0, 4.0).unwrap()
}

/// Redundant frame: `2n` scalar atoms over an `n`-dimensional space.
pub fn redundant_frame(seed: u64, n: usize) -> GFrameFamily {
    random_frame_with_bounds(seed, n, &scalar_dims(2 * n), &vec![1.0; 2 * n], 1.0, 4.0).unwrap()
}
