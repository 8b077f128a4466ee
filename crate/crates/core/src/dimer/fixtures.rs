//! Small hand-built models.

use super::{Arrow, DimerModel};

fn model(boundary: &[usize], vertices: usize, arrows: &[(usize, usize)], cc: &[&[usize]], cl: &[&[usize]]) -> DimerModel {
    DimerModel {
        boundary: boundary.to_vec(),
        vertices: (1..=vertices).collect(),
        arrows: arrows.iter().enumerate().map(|(i, &(src, dst))| Arrow { id: i + 1, src, dst }).collect(),
        faces_cc: cc.iter().map(|f| f.to_vec()).collect(),
        faces_cl: cl.iter().map(|f| f.to_vec()).collect(),
    }
}

/// One clockwise triangle `1 -> 2 -> 3 -> 1`.
pub fn triangle_cl() -> DimerModel {
    model(&[1, 2, 3], 3, &[(1, 2), (2, 3), (3, 1)], &[], &[&[1, 2, 3]])
}

/// One counter-clockwise triangle `1 -> 3 -> 2 -> 1`.
pub fn triangle_cc() -> DimerModel {
    model(&[1, 2, 3], 3, &[(2, 1), (3, 2), (1, 3)], &[&[3, 2, 1]], &[])
}

/// A square cut by the diagonal `3 -> 1` into a clockwise and a
/// counter-clockwise triangle.
pub fn square_with_diagonal() -> DimerModel {
    model(&[1, 2, 3, 4], 4, &[(1, 2), (2, 3), (3, 1), (1, 4), (4, 3)], &[&[3, 4, 5]], &[&[1, 2, 3]])
}

/// The diagonal of [`square_with_diagonal`] subdivided at vertex 5: both
/// faces become squares and two strands cross the halves in the same order.
pub fn two_squares_parallel_bigon() -> DimerModel {
    model(
        &[1, 2, 3, 4],
        5,
        &[(1, 2), (2, 3), (3, 5), (5, 1), (1, 4), (4, 3)],
        &[&[3, 4, 5, 6]],
        &[&[1, 2, 3, 4]],
    )
}

/// Two boundary vertices around an interior vertex, with two bigons and two
/// triangles; one strand circles the interior vertex.
pub fn interior_cycle() -> DimerModel {
    model(
        &[1, 2],
        3,
        &[(1, 3), (3, 1), (3, 2), (2, 3), (2, 1), (1, 2)],
        &[&[1, 2], &[3, 4]],
        &[&[1, 3, 5], &[6, 4, 2]],
    )
}

/// [`square_with_diagonal`] with both faces declared counter-clockwise.
pub fn two_cc_faces() -> DimerModel {
    let mut m = square_with_diagonal();
    m.faces_cc.append(&mut m.faces_cl);
    m
}

/// Four quadrilaterals around a square hole.
pub fn annulus() -> DimerModel {
    model(
        &[1, 2, 3, 4],
        8,
        &[
            (1, 2),
            (3, 2),
            (3, 4),
            (1, 4),
            (6, 5),
            (6, 7),
            (8, 7),
            (8, 5),
            (2, 6),
            (7, 3),
            (4, 8),
            (5, 1),
        ],
        &[&[9, 6, 10, 2], &[11, 8, 12, 4]],
        &[&[1, 9, 5, 12], &[10, 3, 11, 7]],
    )
}
