//! Pointed rational cones: membership, extremal rays, regularity,
//! irreducible lattice points and Hilbert bases.

use crate::error::{Error, Result};
use crate::lattice::{
    self, content, coord_sum, cross, det3, dot, in_octant, is_zero, neg, primitive, rank, sub,
    Vector,
};
use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A pointed cone given by its primitive extremal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vector>", into = "Vec<Vector>")]
pub struct Cone {
    generators: Vec<Vector>,
    dim: usize,
    facets: Vec<Vector>,
    plane: Option<Vector>,
}

impl TryFrom<Vec<Vector>> for Cone {
    type Error = Error;
    fn try_from(vs: Vec<Vector>) -> Result<Self> {
        Cone::new(&vs)
    }
}

impl From<Cone> for Vec<Vector> {
    fn from(c: Cone) -> Self {
        c.generators
    }
}

impl Cone {
    /// The cone spanned by `vs`; zero vectors are ignored, the remaining
    /// vectors are reduced to primitive extremal rays.
    pub fn new(vs: &[Vector]) -> Result<Cone> {
        let generators = extremal_rays(vs)?;
        let dim = rank(&generators);
        let mut cone = Cone {
            generators,
            dim,
            facets: Vec::new(),
            plane: None,
        };
        match dim {
            3 => cone.facets = facet_normals(&cone.generators),
            2 => cone.plane = lattice::plane_normal(cone.generators[0], cone.generators[1]),
            _ => {}
        }
        Ok(cone)
    }

    /// The non-negative octant.
    pub fn octant() -> Cone {
        Cone::new(&lattice::BASIS).expect("octant is pointed")
    }

    /// Extremal generators in lexicographic order.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive inner facet normals (full-dimensional cones only).
    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn is_simplicial(&self) -> bool {
        self.generators.len() == self.dim
    }

    pub fn in_octant(&self) -> bool {
        self.generators.iter().all(|g| in_octant(*g))
    }

    pub fn contains(&self, v: Vector) -> bool {
        contains(self, v)
    }

    /// Relative-interior witness: the sum of the generators.
    pub fn ray_sum(&self) -> Vector {
        self.generators
            .iter()
            .fold(lattice::ZERO, |acc, g| lattice::add(acc, *g))
    }

    /// Generators in cyclic order around a full-dimensional cone,
    /// starting at the lexicographically smallest one and moving first
    /// towards its lexicographically smaller neighbour.
    pub fn cyclic_generators(&self) -> Vec<Vector> {
        if self.dim < 3 || self.generators.len() <= 3 {
            return self.generators.clone();
        }
        let neighbours = |g: Vector| -> Vec<Vector> {
            let mut out: Vec<Vector> = self
                .generators
                .iter()
                .copied()
                .filter(|&h| h != g && self.facets.iter().any(|n| dot(*n, g) == 0 && dot(*n, h) == 0))
                .collect();
            out.sort();
            out
        };
        let start = self.generators[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = neighbours(start)[0];
        while cur != start {
            order.push(cur);
            let next = neighbours(cur)
                .into_iter()
                .find(|&h| h != prev)
                .expect("every ray of a 3-cone has two neighbours");
            prev = cur;
            cur = next;
        }
        order
    }

    /// Faces of the cone, each given by its extremal generators, from the
    /// full cone down to the rays.
    pub fn faces(&self) -> Vec<Vec<Vector>> {
        let mut out = vec![self.generators.clone()];
        match self.dim {
            3 => {
                for n in &self.facets {
                    let mut f: Vec<Vector> = self
                        .generators
                        .iter()
                        .copied()
                        .filter(|g| dot(*n, *g) == 0)
                        .collect();
                    f.sort();
                    out.push(f);
                }
                for g in &self.generators {
                    out.push(vec![*g]);
                }
            }
            2 => {
                for g in &self.generators {
                    out.push(vec![*g]);
                }
            }
            _ => {}
        }
        out
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| lattice::format_vector(*g)).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Parses the text form `<(0,0,1),(1,0,2),(0,1,2)>` into a cone.
pub fn parse_cone(text: &str) -> Result<Cone> {
    let vs = parse_vector_list(text)?;
    if vs.is_empty() {
        return Err(Error::Malformed("cone needs at least one generator".into()));
    }
    Cone::new(&vs)
}

/// Parses a list of integer triples, optionally wrapped in `<...>` or `[...]`.
pub fn parse_vector_list(text: &str) -> Result<Vec<Vector>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .or_else(|| s.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
        .unwrap_or(&s);
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Malformed(format!("expected '(' in {text:?}")))?;
        if !rest[..open].chars().all(|c| c == ',') {
            return Err(Error::Malformed(format!("unexpected text before '(' in {text:?}")));
        }
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| Error::Malformed(format!("unclosed '(' in {text:?}")))?
            + open;
        let nums: Vec<i64> = rest[open + 1..close]
            .split(',')
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Malformed(format!("bad integer in {text:?}: {e}")))?;
        if nums.len() != 3 {
            return Err(Error::Malformed(format!("expected a triple in {text:?}")));
        }
        out.push([nums[0], nums[1], nums[2]]);
        rest = &rest[close + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    Ok(out)
}

fn facet_normals(gens: &[Vector]) -> Vec<Vector> {
    let mut out = BTreeSet::new();
    for (a, b) in gens.iter().tuple_combinations() {
        let Ok(n) = primitive(cross(*a, *b)) else {
            continue;
        };
        if gens.iter().all(|g| dot(n, *g) >= 0) {
            out.insert(n);
        } else if gens.iter().all(|g| dot(n, *g) <= 0) {
            out.insert(neg(n));
        }
    }
    out.into_iter().collect()
}

/// The minimal set of primitive vectors spanning the same cone as `vs`.
pub fn extremal_rays(vs: &[Vector]) -> Result<Vec<Vector>> {
    let prims: BTreeSet<Vector> = vs
        .iter()
        .filter(|v| !is_zero(**v))
        .map(|v| primitive(*v).expect("nonzero"))
        .collect();
    let prims: Vec<Vector> = prims.into_iter().collect();
    match rank(&prims) {
        0 => Ok(Vec::new()),
        1 => {
            let g = prims[0];
            if prims.iter().all(|v| *v == g) {
                Ok(vec![g])
            } else {
                Err(Error::NotPointed)
            }
        }
        2 => {
            let p = prims
                .iter()
                .tuple_combinations()
                .find_map(|(a, b)| lattice::plane_normal(*a, *b))
                .expect("rank two");
            let side = |a: Vector, b: Vector| dot(cross(a, b), p).signum();
            let mut left = None;
            let mut right = None;
            for &v in &prims {
                let opposite = prims.iter().any(|&u| side(v, u) == 0 && dot(u, v) < 0);
                if opposite {
                    return Err(Error::NotPointed);
                }
                if prims.iter().all(|&u| side(v, u) >= 0) {
                    left = Some(v);
                }
                if prims.iter().all(|&u| side(v, u) <= 0) {
                    right = Some(v);
                }
            }
            match (left, right) {
                (Some(a), Some(b)) if a != b => {
                    let mut out = vec![a, b];
                    out.sort();
                    Ok(out)
                }
                _ => Err(Error::NotPointed),
            }
        }
        _ => {
            let normals = facet_normals(&prims);
            if rank(&normals) < 3 {
                return Err(Error::NotPointed);
            }
            let out: Vec<Vector> = prims
                .iter()
                .copied()
                .filter(|v| {
                    let tight: Vec<Vector> =
                        normals.iter().copied().filter(|n| dot(*n, *v) == 0).collect();
                    rank(&tight) >= 2
                })
                .collect();
            Ok(out)
        }
    }
}

/// Membership of `v` in the cone, decided exactly.
pub fn contains(c: &Cone, v: Vector) -> bool {
    if is_zero(v) {
        return true;
    }
    match c.dim {
        3 => c.facets.iter().all(|n| dot(*n, v) >= 0),
        2 => {
            let p = c.plane.expect("plane of a 2-cone");
            if dot(p, v) != 0 {
                return false;
            }
            let [a, b] = [c.generators[0], c.generators[1]];
            let d = dot(cross(a, b), p);
            let la = dot(cross(v, b), p);
            let lb = dot(cross(a, v), p);
            la * d.signum() >= 0 && lb * d.signum() >= 0
        }
        1 => {
            let g = c.generators[0];
            is_zero(cross(g, v)) && dot(g, v) > 0
        }
        _ => false,
    }
}

/// Regularity: simplicial with generators extending to a lattice basis.
/// Non-simplicial cones are never regular.
pub fn is_regular(c: &Cone) -> bool {
    if !c.is_simplicial() {
        return false;
    }
    match c.dim {
        3 => det3(c.generators[0], c.generators[1], c.generators[2]).abs() == 1,
        2 => content(cross(c.generators[0], c.generators[1])) == 1,
        _ => true,
    }
}

/// Lattice multiplicity of a simplicial cone: |det| in full dimension,
/// the gcd of maximal minors in dimension two.
pub fn multiplicity(c: &Cone) -> Result<i64> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    Ok(match c.dim {
        3 => det3(c.generators[0], c.generators[1], c.generators[2]).abs(),
        2 => content(cross(c.generators[0], c.generators[1])),
        _ => 1,
    })
}

/// Exact 3x3 determinant of the matrix with columns `v1`, `v2`, `v3`.
pub fn unimodular_det(v1: Vector, v2: Vector, v3: Vector) -> i64 {
    det3(v1, v2, v3)
}

/// Whether `v` admits no decomposition into two nonzero lattice points of
/// the cone. Requires the cone to lie in the octant.
pub fn is_irreducible(c: &Cone, v: Vector) -> Result<bool> {
    if is_zero(v) {
        return Err(Error::ZeroVector);
    }
    if !c.contains(v) {
        return Err(Error::NotInCone(v));
    }
    if !c.in_octant() {
        return Err(Error::NotInOctant);
    }
    Ok(find_decomposition(c, v).is_none())
}

/// A decomposition `v = n1 + (v - n1)` with both parts nonzero lattice
/// points of the cone, searched in the box `0 <= n1 <= v`.
pub fn find_decomposition(c: &Cone, v: Vector) -> Option<(Vector, Vector)> {
    for a in 0..=v[0] {
        for b in 0..=v[1] {
            for z in 0..=v[2] {
                let n1 = [a, b, z];
                if is_zero(n1) || n1 == v {
                    continue;
                }
                let n2 = sub(v, n1);
                if c.contains(n1) && c.contains(n2) {
                    return Some((n1, n2));
                }
            }
        }
    }
    None
}

/// Splits a cone into simplicial cones by fanning around the
/// lexicographically smallest extremal ray.
pub fn triangulate(c: &Cone) -> Vec<Cone> {
    triangulate_around(c, false)
}

/// Fan-out triangulation around the smallest (or, with `reverse`, the
/// largest) extremal ray.
pub fn triangulate_around(c: &Cone, reverse: bool) -> Vec<Cone> {
    if c.is_simplicial() || c.dim < 3 {
        return vec![c.clone()];
    }
    let mut cyc = c.cyclic_generators();
    if reverse {
        let apex = *cyc.iter().max().expect("nonempty");
        let pos = cyc.iter().position(|g| *g == apex).expect("present");
        cyc.rotate_left(pos);
    }
    (1..cyc.len() - 1)
        .map(|i| Cone::new(&[cyc[0], cyc[i], cyc[i + 1]]).expect("sub-cone of a pointed cone"))
        .collect()
}

/// All lattice points of the closed parallelepiped spanned by the
/// generators of a simplicial cone, found by a bounding-box scan.
pub fn parallelepiped_points(c: &Cone) -> Result<Vec<Vector>> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let gens = &c.generators;
    if gens.is_empty() {
        return Ok(vec![lattice::ZERO]);
    }
    let mut lo = [0i64; 3];
    let mut hi = [0i64; 3];
    for g in gens {
        for i in 0..3 {
            if g[i] < 0 {
                lo[i] += g[i];
            } else {
                hi[i] += g[i];
            }
        }
    }
    let inside: Box<dyn Fn(Vector) -> bool + Sync> = match c.dim {
        3 => {
            let [a, b, g] = [gens[0], gens[1], gens[2]];
            let d = det3(a, b, g);
            let s = d.signum();
            let d = d.abs();
            Box::new(move |v| {
                [det3(v, b, g), det3(a, v, g), det3(a, b, v)]
                    .iter()
                    .all(|&x| (0..=d).contains(&(x * s)))
            })
        }
        2 => {
            let p = c.plane.expect("plane");
            let [a, b] = [gens[0], gens[1]];
            let d = dot(cross(a, b), p);
            let s = d.signum();
            let d = d.abs();
            Box::new(move |v| {
                dot(p, v) == 0
                    && [dot(cross(v, b), p), dot(cross(a, v), p)]
                        .iter()
                        .all(|&x| (0..=d).contains(&(x * s)))
            })
        }
        _ => {
            let g = gens[0];
            Box::new(move |v| is_zero(v) || v == g)
        }
    };
    let mut pts: Vec<Vector> = (lo[0]..=hi[0])
        .into_par_iter()
        .flat_map_iter(|x| {
            let inside = &inside;
            (lo[1]..=hi[1]).flat_map(move |y| {
                (lo[2]..=hi[2]).filter_map(move |z| {
                    let v = [x, y, z];
                    inside(v).then_some(v)
                })
            })
        })
        .collect();
    pts.sort();
    Ok(pts)
}

/// The Hilbert basis of a pointed cone in the octant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertBasis {
    pub cone: Cone,
    pub elements: Vec<Vector>,
}

impl HilbertBasis {
    pub fn contains(&self, v: Vector) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    pub fn as_set(&self) -> BTreeSet<Vector> {
        self.elements.iter().copied().collect()
    }
}

/// Computes the Hilbert basis: candidates come from the parallelepipeds of
/// a fan-out triangulation, and a candidate is kept when no smaller kept
/// element can be subtracted from it inside the full cone.
pub fn hilbert_basis(c: &Cone) -> Result<HilbertBasis> {
    hilbert_basis_with(c, false)
}

/// As [`hilbert_basis`], triangulating around the smallest (or largest)
/// extremal ray; the result does not depend on this choice.
pub fn hilbert_basis_with(c: &Cone, reverse: bool) -> Result<HilbertBasis> {
    if !c.in_octant() {
        return Err(Error::NotInOctant);
    }
    let mut candidates = BTreeSet::new();
    for s in triangulate_around(c, reverse) {
        for p in parallelepiped_points(&s)? {
            if !is_zero(p) {
                candidates.insert(p);
            }
        }
    }
    let mut ordered: Vec<Vector> = candidates.into_iter().collect();
    ordered.sort_by_key(|v| (coord_sum(*v), *v));
    let mut kept: Vec<Vector> = Vec::new();
    for v in ordered {
        let reducible = kept
            .iter()
            .any(|h| coord_sum(*h) < coord_sum(v) && c.contains(sub(v, *h)));
        if !reducible {
            kept.push(v);
        }
    }
    kept.sort();
    Ok(HilbertBasis {
        cone: c.clone(),
        elements: kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{E1, E2, E3};

    fn cone(vs: &[Vector]) -> Cone {
        Cone::new(vs).unwrap()
    }

    #[test]
    fn membership() {
        let s3 = cone(&[E2, E3, [6, 8, 9]]);
        assert!(s3.contains([1, 2, 2]));
        assert!(!s3.contains([1, 1, 2]));
        assert!(s3.contains([0, 0, 0]));
        let face = cone(&[E1, E2]);
        assert!(face.contains([3, 5, 0]));
        assert!(!face.contains([3, 5, 1]));
        assert!(!face.contains([-1, 5, 0]));
        let ray = cone(&[[1, 2, 3]]);
        assert!(ray.contains([2, 4, 6]));
        assert!(!ray.contains([-1, -2, -3]));
    }

    #[test]
    fn extremal_rays_drop_interior_and_primitivize() {
        assert_eq!(extremal_rays(&[E1, E2, [1, 1, 0]]).unwrap(), vec![E2, E1]);
        assert_eq!(extremal_rays(&[[2, 0, 0], [0, 3, 0]]).unwrap(), vec![E2, E1]);
        let b = [[0, 0, 1], [1, 0, 2], [0, 1, 2], [2, 7, 4]];
        assert_eq!(extremal_rays(&b).unwrap().len(), 4);
        assert_eq!(extremal_rays(&[E1, [-1, 0, 0]]), Err(Error::NotPointed));
        assert_eq!(
            extremal_rays(&[E1, E2, [-1, -1, 0], E3]),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&cone(&[E1, E2, E3])));
        assert!(!is_regular(&cone(&[E2, E3, [6, 8, 9]])));
        for s in 0..=4 {
            assert!(is_regular(&cone(&[[0, 0, 1], [1, s, 2], [1, s + 1, 2]])));
        }
        assert!(!is_regular(&cone(&[[0, 0, 1], [1, 0, 2], [0, 1, 2], [2, 7, 4]])));
        assert!(is_regular(&cone(&[E1, [1, 1, 0]])));
        assert!(!is_regular(&cone(&[E1, [1, 2, 0]])));
    }

    #[test]
    fn irreducibility() {
        let s3 = cone(&[E2, E3, [6, 8, 9]]);
        assert_eq!(is_irreducible(&s3, [1, 2, 2]), Ok(true));
        assert_eq!(is_irreducible(&s3, [2, 4, 4]), Ok(false));
        assert_eq!(is_irreducible(&Cone::octant(), [1, 1, 0]), Ok(false));
        assert_eq!(is_irreducible(&s3, [1, 1, 2]), Err(Error::NotInCone([1, 1, 2])));
        assert_eq!(is_irreducible(&s3, [0, 0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn parallelepiped_of_simple_cones() {
        let pts = parallelepiped_points(&Cone::octant()).unwrap();
        assert_eq!(pts.len(), 8);
        let pts = parallelepiped_points(&cone(&[E2, E3, [6, 8, 9]])).unwrap();
        for v in [[1, 2, 2], [2, 3, 3], [3, 4, 5]] {
            assert!(pts.contains(&v));
        }
        let pts = parallelepiped_points(&cone(&[E1, E2, [1, 1, 2]])).unwrap();
        assert!(pts.contains(&[1, 1, 1]));
        assert_eq!(pts.len(), 9);
    }

    #[test]
    fn hilbert_bases_of_elliptic_cones() {
        let h = hilbert_basis(&cone(&[E2, E3, [6, 8, 9]])).unwrap();
        let expected: BTreeSet<Vector> =
            [E2, E3, [6, 8, 9], [1, 2, 2], [2, 3, 3], [3, 4, 5]].into_iter().collect();
        assert_eq!(h.as_set(), expected);
        let h = hilbert_basis(&cone(&[E2, [3, 1, 0], [6, 8, 9]])).unwrap();
        let expected: BTreeSet<Vector> = [
            E2,
            [3, 1, 0],
            [6, 8, 9],
            [1, 1, 0],
            [2, 1, 0],
            [1, 1, 1],
            [2, 3, 3],
        ]
        .into_iter()
        .collect();
        assert_eq!(h.as_set(), expected);
        let h = hilbert_basis(&Cone::octant()).unwrap();
        assert_eq!(h.elements, vec![E3, E2, E1]);
    }

    #[test]
    fn hilbert_basis_of_plane_cone() {
        let h = hilbert_basis(&cone(&[E1, [1, 2, 0]])).unwrap();
        assert_eq!(h.elements, vec![E1, [1, 1, 0], [1, 2, 0]]);
    }

    #[test]
    fn cone_text_round_trip() {
        let c = parse_cone("<(0,0,1),(1,0,2),(0,1,2),(2,7,4)>").unwrap();
        assert_eq!(c.generators().len(), 4);
        assert_eq!(parse_cone(&c.to_string()).unwrap(), c);
        assert!(parse_cone("<(0,0,1),(1,0)>").is_err());
        assert!(parse_cone("<(0,0,1),x(1,0,2)>").is_err());
        assert!(parse_cone("<(0,0,1),(1,a,2)>").is_err());
    }

    #[test]
    fn triangulation_covers_cone() {
        let c = cone(&[[0, 0, 1], [1, 0, 2], [0, 1, 2], [2, 7, 4]]);
        let t = triangulate(&c);
        assert_eq!(t.len(), 2);
        for s in &t {
            assert!(s.generators().contains(&[0, 0, 1]));
        }
        let r = triangulate_around(&c, true);
        assert!(r.iter().all(|s| s.generators().contains(&[2, 7, 4])));
    }
}
