//! In-place 3D FFT built from 1D rustfft passes along each axis.

use num_complex::Complex64;

use super::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Inverse,
}

/// Transform `data` (x-fastest, length `n^3`) in place.
///
/// The forward pass is scaled by `1/n^3`, so the zero mode of a constant
/// field equals the constant and the inverse pass is unscaled.
pub(crate) fn fft3(grid: &Grid, data: &mut [Complex64], dir: Direction) {
    let n = grid.n();
    let plane = n * n;
    debug_assert_eq!(data.len(), plane * n);
    let plan = match dir {
        Direction::Forward => grid.forward_plan(),
        Direction::Inverse => grid.inverse_plan(),
    };
    let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
    let mut lines = vec![Complex64::default(); plane];

    // x: rows are contiguous
    plan.process_with_scratch(data, &mut scratch);

    // y: transpose each z-plane so y becomes contiguous
    for slab in data.chunks_exact_mut(plane) {
        for j in 0..n {
            for i in 0..n {
                lines[i * n + j] = slab[j * n + i];
            }
        }
        plan.process_with_scratch(&mut lines, &mut scratch);
        for j in 0..n {
            for i in 0..n {
                slab[j * n + i] = lines[i * n + j];
            }
        }
    }

    // z: gather the n lines of each xz-plane
    for j in 0..n {
        for k in 0..n {
            let base = n * (j + n * k);
            for i in 0..n {
                lines[i * n + k] = data[base + i];
            }
        }
        plan.process_with_scratch(&mut lines, &mut scratch);
        for k in 0..n {
            let base = n * (j + n * k);
            for i in 0..n {
                data[base + i] = lines[i * n + k];
            }
        }
    }

    if dir == Direction::Forward {
        let scale = 1.0 / (plane * n) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}
