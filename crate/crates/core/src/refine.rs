//! Regular refinements of cones and fans by stellar subdivision, with
//! determinant certificates, covering and face-fitting checks.

use crate::cones::{self, find_decomposition, hilbert_basis, multiplicity, triangulate, Cone};
use crate::error::{Error, Result};
use crate::fan::{meet_in_common_face, Fan};
use crate::lattice::{cross, det3, dot, is_primitive, is_zero, Vector};
use crate::profile::{unit_functional, Rational};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// A simplicial cone of a refinement, by its generators in lexicographic order.
type Simplex = Vec<Vector>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Ray indices into the result fan.
    pub cone: Vec<usize>,
    pub det: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Source {
    Cone(Cone),
    Fan(Fan),
}

impl Source {
    /// The maximal cones of the source.
    pub fn cones(&self) -> Vec<Cone> {
        match self {
            Source::Cone(c) => vec![c.clone()],
            Source::Fan(f) => f.all_cones(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementReport {
    pub source: Source,
    pub result: Fan,
    pub certificates: Vec<Certificate>,
    pub covering_ok: bool,
    pub face_fitting_ok: bool,
    pub all_rays_irreducible: bool,
    pub new_rays: Vec<Vector>,
}

impl RefinementReport {
    pub fn is_regular(&self) -> bool {
        self.certificates.iter().all(|c| c.det == 1)
    }

    pub fn max_det(&self) -> i64 {
        self.certificates.iter().map(|c| c.det).max().unwrap_or(1)
    }

    pub fn ok(&self) -> bool {
        self.is_regular() && self.covering_ok && self.face_fitting_ok && self.all_rays_irreducible
    }
}

fn simplex_det(s: &[Vector]) -> i64 {
    match s.len() {
        3 => det3(s[0], s[1], s[2]).abs(),
        2 => crate::lattice::content(cross(s[0], s[1])),
        _ => 1,
    }
}

/// Signs of the barycentric coordinates of `p` in the simplex, or `None`
/// when `p` lies outside it.
fn barycentric_signs(s: &[Vector], p: Vector) -> Option<Vec<i64>> {
    let nums: Vec<i64> = match s.len() {
        3 => {
            let d = det3(s[0], s[1], s[2]).signum();
            vec![
                det3(p, s[1], s[2]) * d,
                det3(s[0], p, s[2]) * d,
                det3(s[0], s[1], p) * d,
            ]
        }
        2 => {
            let n = cross(s[0], s[1]);
            if dot(n, p) != 0 {
                return None;
            }
            vec![dot(cross(p, s[1]), n), dot(cross(s[0], p), n)]
        }
        1 => {
            if is_zero(cross(s[0], p)) && dot(s[0], p) > 0 {
                vec![1]
            } else {
                return None;
            }
        }
        _ => return None,
    };
    nums.iter().all(|&x| x >= 0).then(|| nums.iter().map(|x| x.signum()).collect())
}

/// Stellar subdivision at `p` of every simplex containing it.
fn stellar(simplices: &mut Vec<Simplex>, p: Vector) {
    let mut out = Vec::with_capacity(simplices.len() + 2);
    for s in simplices.drain(..) {
        if s.contains(&p) {
            out.push(s);
            continue;
        }
        match barycentric_signs(&s, p) {
            Some(signs) => {
                for (i, sign) in signs.iter().enumerate() {
                    if *sign > 0 {
                        let mut t = s.clone();
                        t[i] = p;
                        t.sort();
                        debug_assert!(simplex_det(&t) <= simplex_det(&s));
                        out.push(t);
                    }
                }
            }
            None => out.push(s),
        }
    }
    out.sort();
    out.dedup();
    *simplices = out;
}

fn initial_simplices(c: &Cone) -> Vec<Simplex> {
    triangulate(c).iter().map(|t| t.generators().to_vec()).collect()
}

/// The l-value of `p` in the first initial simplex containing it.
fn placing_value(initial: &[Simplex], p: Vector) -> Rational {
    initial
        .iter()
        .find(|s| barycentric_signs(s, p).is_some())
        .map(|s| {
            let cone = Cone::new(s).expect("simplex");
            unit_functional(&cone).eval(p)
        })
        .unwrap_or_else(|| Rational::from_integer(i64::MAX))
}

fn validate_rays(c: &Cone, rays: &[Vector]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for r in rays {
        if is_zero(*r) {
            return Err(Error::ZeroVector);
        }
        if !is_primitive(*r) {
            return Err(Error::Malformed(format!(
                "ray {} is not primitive",
                crate::lattice::format_vector(*r)
            )));
        }
        if !c.contains(*r) {
            return Err(Error::NotInCone(*r));
        }
        if !seen.insert(*r) {
            return Err(Error::DuplicateRay(*r));
        }
    }
    Ok(())
}

/// Lexicographic badness of a triangulation: singular simplices, then
/// total multiplicity.
fn badness(simplices: &[Simplex]) -> (usize, i64) {
    (
        simplices.iter().filter(|s| simplex_det(s) > 1).count(),
        simplices.iter().map(|s| simplex_det(s)).sum(),
    )
}

/// The two simplices replacing an adjacent pair `{a,b,c}`, `{a,b,d}` by
/// `{a,c,d}`, `{b,c,d}`, when the four rays span a convex region that
/// admits both diagonals.
fn flipped(s: &Simplex, t: &Simplex) -> Option<(Simplex, Simplex)> {
    if s.len() != 3 {
        return None;
    }
    let common: Vec<Vector> = s.iter().copied().filter(|v| t.contains(v)).collect();
    if common.len() != 2 {
        return None;
    }
    let c = *s.iter().find(|v| !common.contains(v))?;
    let d = *t.iter().find(|v| !common.contains(v))?;
    let (a, b) = (common[0], common[1]);
    if det3(c, d, a).signum() * det3(c, d, b).signum() >= 0 {
        return None;
    }
    let mut n1 = vec![a, c, d];
    let mut n2 = vec![b, c, d];
    n1.sort();
    n2.sort();
    Some((n1, n2))
}

/// Applies the most improving flip until no flip lowers the badness.
fn improve_by_flips(simplices: &mut Vec<Simplex>) {
    loop {
        let current = badness(simplices);
        if current.0 == 0 {
            return;
        }
        let mut best: Option<((usize, i64), usize, usize, Simplex, Simplex)> = None;
        for (i, j) in (0..simplices.len()).tuple_combinations() {
            let Some((n1, n2)) = flipped(&simplices[i], &simplices[j]) else {
                continue;
            };
            let delta_old = simplex_det(&simplices[i]) + simplex_det(&simplices[j]);
            let bad_old = [&simplices[i], &simplices[j]]
                .iter()
                .filter(|s| simplex_det(s) > 1)
                .count();
            let bad_new = [&n1, &n2].iter().filter(|s| simplex_det(s) > 1).count();
            let score = (
                current.0 + bad_new - bad_old,
                current.1 + simplex_det(&n1) + simplex_det(&n2) - delta_old,
            );
            if score < current && best.as_ref().is_none_or(|b| score < b.0) {
                best = Some((score, i, j, n1, n2));
            }
        }
        let Some((_, i, j, n1, n2)) = best else {
            return;
        };
        simplices.remove(j);
        simplices.remove(i);
        simplices.push(n1);
        simplices.push(n2);
        simplices.sort();
    }
}

/// Stellar insertion of the rays in (l-value, lexicographic) order, then
/// flips of interior faces towards regularity.
fn simplices_from_rays(c: &Cone, rays: &[Vector]) -> Vec<Simplex> {
    let initial = initial_simplices(c);
    let mut simplices = initial.clone();
    let mut order: Vec<(Rational, Vector)> = rays
        .iter()
        .filter(|r| !c.generators().contains(r))
        .map(|r| (placing_value(&initial, *r), *r))
        .collect();
    order.sort();
    for (_, p) in order {
        stellar(&mut simplices, p);
    }
    improve_by_flips(&mut simplices);
    simplices
}

fn regular_simplices(c: &Cone) -> Result<Vec<Simplex>> {
    let h = hilbert_basis(c)?;
    let mut simplices = simplices_from_rays(c, &h.elements);
    while let Some(tau) = simplices.iter().find(|s| simplex_det(s) > 1).cloned() {
        let tau_cone = Cone::new(&tau).expect("simplex");
        let l = unit_functional(&tau_cone);
        let p = hilbert_basis(&tau_cone)?
            .elements
            .iter()
            .filter(|p| !tau.contains(p))
            .map(|p| (l.eval(*p), *p))
            .min()
            .map(|(_, p)| p)
            .expect("a non-regular simplex has a non-generator Hilbert element");
        stellar(&mut simplices, p);
        improve_by_flips(&mut simplices);
    }
    Ok(simplices)
}

/// Face-fitting for two simplicial cones of the same dimension.
fn simplices_fit(a: &Cone, b: &Cone) -> bool {
    if a.dim() == 3 && b.dim() == 3 {
        return meet_in_common_face(a, b);
    }
    if a == b {
        return false;
    }
    let inside = |x: &Cone, y: &Cone| {
        x.generators()
            .iter()
            .any(|g| !y.generators().contains(g) && y.contains(*g))
    };
    !inside(a, b) && !inside(b, a)
}

/// Whether simplices inside `c` close up to cover it: each codimension-one
/// face on the boundary of `c` is used once, every other one twice.
fn covers(c: &Cone, simplices: &[Simplex]) -> bool {
    if simplices.is_empty() || simplices.iter().any(|s| s.len() != c.dim()) {
        return false;
    }
    if !simplices.iter().flatten().all(|v| c.contains(*v)) {
        return false;
    }
    let mut count: std::collections::BTreeMap<Simplex, usize> = std::collections::BTreeMap::new();
    for s in simplices {
        for f in s.iter().copied().combinations(s.len() - 1) {
            *count.entry(f).or_default() += 1;
        }
    }
    let on_boundary = |f: &Simplex| match c.dim() {
        3 => c.facets().iter().any(|n| f.iter().all(|g| dot(*n, *g) == 0)),
        2 => c.generators().contains(&f[0]),
        _ => true,
    };
    count
        .iter()
        .all(|(f, &k)| if on_boundary(f) { k == 1 } else { k == 2 })
}

fn build_report(source: Source, pieces: Vec<(Vec<Simplex>, Option<String>)>) -> RefinementReport {
    let source_cones = source.cones();
    let result = Fan::from_cones(pieces.iter().flat_map(|(ss, label)| {
        ss.iter()
            .map(move |s| (Cone::new(s).expect("simplex"), label.clone()))
    }));
    let certificates: Vec<Certificate> = result
        .cones
        .iter()
        .map(|fc| Certificate {
            cone: fc.rays.clone(),
            det: simplex_det(&fc.rays.iter().map(|&k| result.rays[k]).collect::<Vec<_>>()),
        })
        .collect();
    let covering_ok = source_cones
        .iter()
        .zip(&pieces)
        .all(|(c, (ss, _))| covers(c, ss));
    let result_cones = result.all_cones();
    let face_fitting_ok = result_cones
        .iter()
        .tuple_combinations()
        .collect::<Vec<_>>()
        .par_iter()
        .all(|(a, b)| simplices_fit(a, b));
    let all_rays_irreducible = rays_irreducible(&source_cones, &result.rays)
        .iter()
        .all(|r| r.irreducible);
    let extremal: BTreeSet<Vector> = source_cones
        .iter()
        .flat_map(|c| c.generators().iter().copied())
        .collect();
    let new_rays = result
        .rays
        .iter()
        .copied()
        .filter(|r| !extremal.contains(r))
        .collect();
    RefinementReport {
        source,
        result,
        certificates,
        covering_ok,
        face_fitting_ok,
        all_rays_irreducible,
        new_rays,
    }
}

/// Refines a cone into regular simplicial cones: the Hilbert basis is
/// placed first, then any simplex still singular is subdivided at its own
/// Hilbert element of least l-value.
pub fn regular_refinement(c: &Cone) -> Result<RefinementReport> {
    let simplices = regular_simplices(c)?;
    Ok(build_report(Source::Cone(c.clone()), vec![(simplices, None)]))
}

/// Triangulates a cone with ray set {extremal rays} ∪ `rays`: rays are
/// inserted in order of (l-value, lexicographic), then interior faces are
/// flipped while that reduces the singular simplices.
pub fn refinement_from_rays(c: &Cone, rays: &[Vector]) -> Result<RefinementReport> {
    validate_rays(c, rays)?;
    let simplices = simplices_from_rays(c, rays);
    Ok(build_report(Source::Cone(c.clone()), vec![(simplices, None)]))
}

/// Refines every maximal cone of a fan by the given rays lying in it.
/// Each ray must lie in at least one cone of the fan.
pub fn refine_fan_from_rays(f: &Fan, rays: &[Vector]) -> Result<RefinementReport> {
    let cones = f.all_cones();
    let mut seen = BTreeSet::new();
    for r in rays {
        if !cones.iter().any(|c| c.contains(*r)) {
            return Err(Error::NotInCone(*r));
        }
        if !seen.insert(*r) {
            return Err(Error::DuplicateRay(*r));
        }
    }
    let pieces = cones
        .par_iter()
        .zip(f.cones.par_iter())
        .map(|(c, fc)| {
            let mine: Vec<Vector> = rays.iter().copied().filter(|r| c.contains(*r)).collect();
            validate_rays(c, &mine)?;
            Ok((simplices_from_rays(c, &mine), fc.label.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(build_report(Source::Fan(f.clone()), pieces))
}

/// Refines every maximal cone of a fan by its own Hilbert basis.
pub fn hilbert_refinement(f: &Fan) -> Result<RefinementReport> {
    let cones = f.all_cones();
    let pieces = cones
        .par_iter()
        .zip(f.cones.par_iter())
        .map(|(c, fc)| {
            let h = hilbert_basis(c)?;
            Ok((simplices_from_rays(c, &h.elements), fc.label.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(build_report(Source::Fan(f.clone()), pieces))
}

/// All rays used by the cones of a fan.
pub fn refinement_rays(f: &Fan) -> BTreeSet<Vector> {
    f.cones
        .iter()
        .flat_map(|c| c.rays.iter().map(|&k| f.rays[k]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayIrreducibility {
    pub ray: Vector,
    /// Index of the source cone the check was made in.
    pub source_cone: usize,
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub rays: Vec<RayIrreducibility>,
    pub all_irreducible: bool,
    pub exceptional_curves: &'static str,
}

fn rays_irreducible(source: &[Cone], rays: &[Vector]) -> Vec<RayIrreducibility> {
    let mut out = Vec::new();
    for r in rays {
        for (i, c) in source.iter().enumerate() {
            if c.contains(*r) {
                let irreducible = c.in_octant() && find_decomposition(c, *r).is_none();
                out.push(RayIrreducibility {
                    ray: *r,
                    source_cone: i,
                    irreducible,
                });
            }
        }
    }
    out
}

/// Irreducibility of every ray of a regular refinement in each source
/// cone containing it.
pub fn check_minimal_embedded(r: &RefinementReport) -> Result<MinimalityReport> {
    if !r.is_regular() {
        return Err(Error::NotRegular);
    }
    let rays = rays_irreducible(&r.source.cones(), &r.result.rays);
    Ok(MinimalityReport {
        all_irreducible: rays.iter().all(|x| x.irreducible),
        rays,
        exceptional_curves: "not checked",
    })
}

/// Whether `v` is irreducible in `c`; re-exported for report consumers.
pub fn ray_is_irreducible(c: &Cone, v: Vector) -> Result<bool> {
    cones::is_irreducible(c, v)
}

/// Lattice multiplicity of each maximal cone of a fan.
pub fn multiplicities(f: &Fan) -> Vec<Option<i64>> {
    f.all_cones().iter().map(|c| multiplicity(c).ok()).collect()
}
