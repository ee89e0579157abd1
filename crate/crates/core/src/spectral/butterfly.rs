use crate::qalg::{pow_usize, CycloValue};
use std::ops::Range;

/// Direction of a single-coordinate character sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    /// `out[u] = Σ_t in[t] · conj(χ(u t))`
    Forward,
    /// `out[u] = Σ_t in[t] · χ(u t)` (no division)
    Backward,
}

/// Radix-`q` butterfly over the coordinates in `coords` of a table indexed by
/// `V_n` in lexicographic order. Accumulation happens in the group ring and is
/// normalized once at the end, so the result equals the naive double sum.
pub(crate) fn transform_coords(data: &mut [CycloValue], q: u32, n: usize, coords: Range<usize>, dir: Direction) {
    if coords.is_empty() || data.is_empty() {
        return;
    }
    let qu = q as usize;
    let zero = data[0].scale(0);
    let mut scratch: Vec<CycloValue> = vec![zero.clone(); qu];
    for coord in coords {
        let stride = pow_usize(q, n - 1 - coord);
        let block = stride * qu;
        for base in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (u, slot) in scratch.iter_mut().enumerate() {
                    *slot = zero.clone();
                    for t in 0..qu {
                        let e = (u * t) % qu;
                        let rot = match dir {
                            Direction::Forward => (qu - e) % qu,
                            Direction::Backward => e,
                        };
                        slot.add_rotated_raw(&data[start + t * stride], rot as u32);
                    }
                }
                for (t, v) in scratch.iter_mut().enumerate() {
                    std::mem::swap(&mut data[start + t * stride], v);
                }
            }
        }
    }
    for v in data.iter_mut() {
        v.normalize();
    }
}
