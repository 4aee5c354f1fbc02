//! Integer vectors in three-space and the exact linear algebra used throughout.

use crate::error::{Error, Result};
use num_integer::Integer;

pub type Vector = [i64; 3];

pub const ZERO: Vector = [0, 0, 0];
pub const E1: Vector = [1, 0, 0];
pub const E2: Vector = [0, 1, 0];
pub const E3: Vector = [0, 0, 1];
pub const BASIS: [Vector; 3] = [E1, E2, E3];

pub fn dot(a: Vector, b: Vector) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vector, b: Vector) -> Vector {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn add(a: Vector, b: Vector) -> Vector {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vector, b: Vector) -> Vector {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn neg(a: Vector) -> Vector {
    [-a[0], -a[1], -a[2]]
}

pub fn scale(k: i64, a: Vector) -> Vector {
    [k * a[0], k * a[1], k * a[2]]
}

pub fn is_zero(a: Vector) -> bool {
    a == ZERO
}

pub fn coord_sum(a: Vector) -> i64 {
    a[0] + a[1] + a[2]
}

pub fn in_octant(a: Vector) -> bool {
    a.iter().all(|&x| x >= 0)
}

/// Determinant of the matrix whose columns are `a`, `b`, `c`.
pub fn det3(a: Vector, b: Vector, c: Vector) -> i64 {
    dot(a, cross(b, c))
}

pub fn content(a: Vector) -> i64 {
    a[0].gcd(&a[1]).gcd(&a[2])
}

/// The first lattice point on the ray through `a`.
pub fn primitive(a: Vector) -> Result<Vector> {
    let g = content(a);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok([a[0] / g, a[1] / g, a[2] / g])
}

pub fn is_primitive(a: Vector) -> bool {
    content(a) == 1
}

/// Rank of a family of integer vectors, by fraction-free elimination.
pub fn rank(vs: &[Vector]) -> usize {
    let mut rows: Vec<[i128; 3]> = vs
        .iter()
        .map(|v| [v[0] as i128, v[1] as i128, v[2] as i128])
        .collect();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                for j in 0..3 {
                    row[j] = row[j] * pivot[col] - f * pivot[j];
                }
                let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
                if g > 1 {
                    for x in row.iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
    }
    r
}

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[Vector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let diffs: Vec<Vector> = rest.iter().map(|p| sub(*p, *first)).collect();
            rank(&diffs)
        }
    }
}

/// Primitive normal of the plane through the origin spanned by `a` and `b`,
/// or `None` when they are parallel.
pub fn plane_normal(a: Vector, b: Vector) -> Option<Vector> {
    let n = cross(a, b);
    primitive(n).ok()
}

pub fn format_vector(v: Vector) -> String {
    format!("({},{},{})", v[0], v[1], v[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_divides_by_content() {
        assert_eq!(primitive([6, 8, 9]).unwrap(), [6, 8, 9]);
        assert_eq!(primitive([2, 4, 6]).unwrap(), [1, 2, 3]);
        assert_eq!(primitive([0, 0, 5]).unwrap(), [0, 0, 1]);
        assert_eq!(primitive([0, -4, 6]).unwrap(), [0, -2, 3]);
        assert_eq!(primitive(ZERO), Err(Error::ZeroVector));
    }

    #[test]
    fn determinant_of_basis_is_one() {
        assert_eq!(det3(E1, E2, E3), 1);
        assert_eq!(det3(E2, E1, E3), -1);
        assert_eq!(det3(E2, E3, [6, 8, 9]), 6);
    }

    #[test]
    fn rank_counts_independent_vectors() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[E1, [2, 0, 0]]), 1);
        assert_eq!(rank(&[E1, E2, [1, 1, 0]]), 2);
        assert_eq!(rank(&[E1, E2, [1, 1, 1]]), 3);
        assert_eq!(affine_rank(&[[0, 3, 0], [1, 0, 2], [4, 0, 0]]), 2);
        assert_eq!(affine_rank(&[[1, 1, 1], [2, 2, 2], [3, 3, 3]]), 1);
    }
}
