//! The gbit: the square with corners `w₁ = (1,1,1)`, `w₂ = (1,0,1)`,
//! `w₃ = (0,0,1)`, `w₄ = (0,1,1)`. The first two coordinates are the outcome
//! probabilities of the two fiducial measurements, the third is the
//! normalization.

use super::StateVector;

pub const CORNERS: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [1.0, 0.0, 1.0],
    [0.0, 0.0, 1.0],
    [0.0, 1.0, 1.0],
];

/// Corner `w_{i+1}` (zero-based index).
pub fn corner(i: usize) -> StateVector {
    StateVector::new(CORNERS[i % 4].to_vec())
}

pub fn corner_index(v: &StateVector, tol: f64) -> Option<usize> {
    CORNERS
        .iter()
        .position(|c| c.iter().zip(&v.coords).all(|(a, b)| (a - b).abs() <= tol))
}

/// Corners `i` and `j` share an edge of the square.
pub fn adjacent(i: usize, j: usize) -> bool {
    let d = (i + 4 - j) % 4;
    d == 1 || d == 3
}

/// Effect that is 1 on the edge through corners `i`, `i+1` and 0 on the
/// opposite edge. Built from the parallel supporting lines of the square.
pub fn edge_effect(i: usize) -> [f64; 3] {
    let (p, q) = (CORNERS[i % 4], CORNERS[(i + 1) % 4]);
    if p[0] == q[0] {
        // edge with constant a
        if p[0] == 1.0 {
            [1.0, 0.0, 0.0]
        } else {
            [-1.0, 0.0, 1.0]
        }
    } else if p[1] == 1.0 {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, -1.0, 1.0]
    }
}

/// Effect that is 1 on corner `i` and 0 on the adjacent corner `j`.
pub fn separating_effect(i: usize, j: usize) -> Option<[f64; 3]> {
    if !adjacent(i, j) {
        return None;
    }
    // the edge through i that avoids j
    let k = if (i + 1) % 4 == j { (i + 3) % 4 } else { i };
    Some(edge_effect(k))
}

/// If `v` lies on an edge of the square, the adjacent corner pair `(i, j)`
/// and the weight `t` with `v = t·w_i + (1−t)·w_j`.
pub fn edge_decomposition(v: &StateVector, tol: f64) -> Option<(usize, usize, f64)> {
    let (a, b, n) = (v.coords[0], v.coords[1], v.coords[2]);
    if (n - 1.0).abs() > tol || !(-tol..=1.0 + tol).contains(&a) || !(-tol..=1.0 + tol).contains(&b)
    {
        return None;
    }
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    if (a - 1.0).abs() <= tol {
        // w₁–w₂ edge
        Some((0, 1, clamp(b)))
    } else if b.abs() <= tol {
        // w₂–w₃ edge
        Some((1, 2, clamp(a)))
    } else if a.abs() <= tol {
        // w₃–w₄ edge
        Some((3, 2, clamp(b)))
    } else if (b - 1.0).abs() <= tol {
        // w₄–w₁ edge
        Some((0, 3, clamp(a)))
    } else {
        None
    }
}
