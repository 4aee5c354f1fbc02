//! Newton polyhedra conv(S(f) + octant) and their dual fans.

use crate::cones::Cone;
use crate::fan::Fan;
use crate::lattice::{affine_rank, cross, dot, format_vector, primitive, rank, sub, Vector, BASIS};
use crate::polyparse::Polynomial;
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeSet;

/// A facet inequality `normal . v >= value`, tight on `points`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub normal: Vector,
    pub value: i64,
    pub points: Vec<Vector>,
}

impl Facet {
    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|&w| w > 0)
    }
}

/// A bounded face, given by the vertices it contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub vertices: Vec<Vector>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolyhedron {
    pub support: Vec<Vector>,
    pub vertices: Vec<Vector>,
    pub facets: Vec<Facet>,
    pub compact_faces: Vec<Face>,
}

impl NewtonPolyhedron {
    /// Facets whose inequality is tight at `v`.
    pub fn facets_at(&self, v: Vector) -> Vec<&Facet> {
        self.facets.iter().filter(|f| dot(f.normal, v) == f.value).collect()
    }
}

/// Computes vertices, facets and bounded faces of conv(S(f) + R^3_{>=0}).
pub fn newton_polyhedron(p: &Polynomial) -> NewtonPolyhedron {
    let support = p.support_vectors();
    let mut candidates: BTreeSet<Vector> = BTreeSet::new();
    let mut push = |n: Vector| {
        if let Ok(n) = primitive(n) {
            candidates.insert(n);
            candidates.insert(crate::lattice::neg(n));
        }
    };
    for (a, b, c) in support.iter().tuple_combinations() {
        push(cross(sub(*b, *a), sub(*c, *a)));
    }
    for (a, b) in support.iter().tuple_combinations() {
        for e in BASIS {
            push(cross(sub(*b, *a), e));
        }
    }
    for (d1, d2) in BASIS.iter().tuple_combinations() {
        push(cross(*d1, *d2));
    }
    let mut facets = Vec::new();
    for n in candidates {
        if n.iter().any(|&w| w < 0) {
            continue;
        }
        let value = support.iter().map(|s| dot(n, *s)).min().expect("non-empty support");
        let points: Vec<Vector> = support.iter().copied().filter(|s| dot(n, *s) == value).collect();
        let mut spanning: Vec<Vector> = points.iter().map(|t| sub(*t, points[0])).collect();
        spanning.extend(BASIS.iter().copied().filter(|e| dot(n, *e) == 0));
        if rank(&spanning) == 2 {
            facets.push(Facet {
                normal: n,
                value,
                points,
            });
        }
    }
    facets.sort_by_key(|f| f.normal);
    let tight = |v: Vector| -> Vec<Vector> {
        facets
            .iter()
            .filter(|f| dot(f.normal, v) == f.value)
            .map(|f| f.normal)
            .collect()
    };
    let vertices: Vec<Vector> = support.iter().copied().filter(|s| rank(&tight(*s)) == 3).collect();

    let mut compact_faces: Vec<Face> = vertices
        .iter()
        .map(|v| Face {
            vertices: vec![*v],
            dim: 0,
        })
        .collect();
    for (u, v) in vertices.iter().tuple_combinations() {
        let tu = tight(*u);
        let common: Vec<Vector> = tight(*v).into_iter().filter(|n| tu.contains(n)).collect();
        if rank(&common) != 2 {
            continue;
        }
        let on_face: Vec<Vector> = support
            .iter()
            .copied()
            .filter(|s| common.iter().all(|n| tight(*s).contains(n)))
            .collect();
        if affine_rank(&on_face) == 1 {
            let mut vs: Vec<Vector> = on_face.into_iter().filter(|s| vertices.contains(s)).collect();
            vs.sort();
            compact_faces.push(Face { vertices: vs, dim: 1 });
        }
    }
    for f in facets.iter().filter(|f| f.is_compact()) {
        let mut vs: Vec<Vector> = f.points.iter().copied().filter(|s| vertices.contains(s)).collect();
        vs.sort();
        compact_faces.push(Face { vertices: vs, dim: 2 });
    }
    NewtonPolyhedron {
        support,
        vertices,
        facets,
        compact_faces,
    }
}

/// Label attached to the maximal cone selecting vertex `v`.
pub fn vertex_label(v: Vector) -> String {
    format_vector(v)
}

/// The dual fan on the octant: one maximal cone per vertex, spanned by
/// the normals of the facets through that vertex.
pub fn dual_newton_fan(p: &Polynomial) -> Fan {
    let np = newton_polyhedron(p);
    dual_fan_of(&np)
}

pub fn dual_fan_of(np: &NewtonPolyhedron) -> Fan {
    let cones = np.vertices.iter().map(|v| {
        let normals: Vec<Vector> = np.facets_at(*v).iter().map(|f| f.normal).collect();
        let cone = Cone::new(&normals).expect("normals of a vertex span a pointed cone");
        (cone, Some(vertex_label(*v)))
    });
    Fan::from_cones(cones)
}

/// The vertex of the Newton polyhedron selected by a maximal cone label.
pub fn label_vertex(label: &str) -> Option<Vector> {
    crate::cones::parse_vector_list(label).ok()?.first().copied()
}
