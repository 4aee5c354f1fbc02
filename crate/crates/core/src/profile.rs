//! Profiles of cones: the l-functional, bounding hyperplanes of
//! conv({0} ∪ generators), lattice points, and subprofile incidence.

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{cross, det3, dot, in_octant, is_zero, sub, Vector};
use crate::polyparse::parse_polynomial;
use itertools::Itertools;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

pub type Rational = Ratio<i64>;

/// An affine functional `c . v + d` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFunctional {
    pub coeffs: [Rational; 3],
    pub constant: Rational,
}

impl AffineFunctional {
    pub fn new(coeffs: [Rational; 3], constant: Rational) -> Self {
        AffineFunctional { coeffs, constant }
    }

    pub fn from_integers(coeffs: [i64; 3], constant: i64) -> Self {
        AffineFunctional {
            coeffs: coeffs.map(Rational::from_integer),
            constant: Rational::from_integer(constant),
        }
    }

    pub fn eval(&self, v: Vector) -> Rational {
        self.coeffs
            .iter()
            .zip(v)
            .fold(self.constant, |acc, (c, x)| acc + c * x)
    }

    /// Linear part as a vector over the rationals.
    pub fn is_zero_at(&self, v: Vector) -> bool {
        self.eval(v).is_zero()
    }

    pub fn negated(&self) -> Self {
        AffineFunctional {
            coeffs: self.coeffs.map(|c| -c),
            constant: -self.constant,
        }
    }

    pub fn shifted(&self, by: Rational) -> Self {
        AffineFunctional {
            coeffs: self.coeffs,
            constant: self.constant + by,
        }
    }

    /// The primitive integer multiple obtained by a positive scaling.
    pub fn integer_form(&self) -> ([i64; 3], i64) {
        let all = [self.coeffs[0], self.coeffs[1], self.coeffs[2], self.constant];
        let l = all.iter().fold(1i64, |l, c| l.lcm(c.denom()));
        let ints: Vec<i64> = all.iter().map(|c| (c * l).to_integer()).collect();
        let g = ints.iter().fold(0i64, |g, x| g.gcd(x)).max(1);
        ([ints[0] / g, ints[1] / g, ints[2] / g], ints[3] / g)
    }

    /// Same zero set as `other` (equal up to a nonzero scaling).
    pub fn same_hyperplane(&self, other: &AffineFunctional) -> bool {
        let (a, c) = self.integer_form();
        let (b, d) = other.integer_form();
        (a == b && c == d) || (a == b.map(|x| -x) && c == -d)
    }

    /// Orients the functional so that it is non-positive at the origin.
    pub fn oriented_to_origin(&self) -> Self {
        if self.constant.is_positive() {
            self.negated()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for AffineFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Rational, &str)> = Vec::new();
        for (c, name) in self.coeffs.iter().zip(["x", "y", "z"]) {
            if !c.is_zero() {
                parts.push((*c, name));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push((self.constant, ""));
        }
        let mut out = String::new();
        for (i, (c, name)) in parts.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let m = c.abs();
            let mag = if m.is_integer() {
                m.to_integer().to_string()
            } else {
                format!("({}/{})", m.numer(), m.denom())
            };
            if name.is_empty() {
                out.push_str(&mag);
            } else if m == Rational::from_integer(1) {
                out.push_str(name);
            } else {
                out.push_str(&format!("{mag}*{name}"));
            }
        }
        f.write_str(&out)
    }
}

impl Serialize for AffineFunctional {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses an affine expression in x, y, z with integer coefficients,
/// e.g. `"4*x - y - 1"`.
pub fn parse_affine(text: &str) -> Result<AffineFunctional> {
    let p = parse_polynomial(text)?;
    let mut coeffs = [0i64; 3];
    let mut constant = 0i64;
    for (e, c) in p.terms() {
        let c = c
            .to_i64()
            .ok_or_else(|| Error::Malformed(format!("coefficient too large in {text:?}")))?;
        match e {
            [0, 0, 0] => constant = c,
            [1, 0, 0] => coeffs[0] = c,
            [0, 1, 0] => coeffs[1] = c,
            [0, 0, 1] => coeffs[2] = c,
            _ => return Err(Error::Malformed(format!("{text:?} is not affine"))),
        }
    }
    Ok(AffineFunctional::from_integers(coeffs, constant))
}

/// The linear functional taking the value 1 on every generator of a
/// full-dimensional simplicial cone.
pub fn l_functional(c: &Cone) -> Result<AffineFunctional> {
    if !c.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    if c.dim() != 3 {
        return Err(Error::NotFullDimensional);
    }
    let g = c.generators();
    let d = det3(g[0], g[1], g[2]);
    let n = [cross(g[1], g[2]), cross(g[2], g[0]), cross(g[0], g[1])]
        .iter()
        .fold([0i64; 3], |acc, v| crate::lattice::add(acc, *v));
    Ok(AffineFunctional::new(
        n.map(|x| Rational::new(x, d)),
        Rational::zero(),
    ))
}

/// Functional equal to 1 on the generators of any simplicial cone,
/// chosen inside the span of the generators.
pub fn unit_functional(c: &Cone) -> AffineFunctional {
    let g = c.generators();
    match g.len() {
        3 => l_functional(c).expect("simplicial full-dimensional"),
        2 => {
            let (a, b) = (g[0], g[1]);
            let (aa, ab, bb) = (dot(a, a), dot(a, b), dot(b, b));
            let det = aa * bb - ab * ab;
            let alpha = Rational::new(bb - ab, det);
            let beta = Rational::new(aa - ab, det);
            let w = [0, 1, 2].map(|i| alpha * a[i] + beta * b[i]);
            AffineFunctional::new(w, Rational::zero())
        }
        _ => {
            let a = g[0];
            let n = dot(a, a);
            AffineFunctional::new(a.map(|x| Rational::new(x, n)), Rational::zero())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Simplicial,
    ConvexHull,
}

/// The region of a cone cut out by its bounding functionals, each
/// non-positive inside and zero on a facet of conv({0} ∪ generators).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub cone: Cone,
    pub bounding: Vec<AffineFunctional>,
    pub kind: ProfileKind,
}

impl Profile {
    /// The hull facets in inner-normal orientation: non-negative on
    /// conv({0} ∪ generators), zero on the facet.
    pub fn hull_facets(&self) -> Vec<AffineFunctional> {
        self.bounding.iter().map(|f| f.negated()).collect()
    }
}

pub fn profile(c: &Cone) -> Profile {
    if c.is_simplicial() {
        return Profile {
            cone: c.clone(),
            bounding: vec![unit_functional(c).shifted(Rational::from_integer(-1))],
            kind: ProfileKind::Simplicial,
        };
    }
    let gens = c.generators();
    let mut seen = BTreeSet::new();
    let mut bounding = Vec::new();
    for (a, b, g) in gens.iter().tuple_combinations() {
        let n = cross(sub(*b, *a), sub(*g, *a));
        let d = dot(n, *a);
        if d == 0 {
            continue;
        }
        let (n, d) = if d < 0 { (n.map(|x| -x), -d) } else { (n, d) };
        if gens.iter().all(|v| dot(n, *v) <= d) {
            let f = AffineFunctional::from_integers(n, -d);
            if seen.insert(f.integer_form()) {
                bounding.push(f);
            }
        }
    }
    bounding.sort_by_key(|f| f.integer_form());
    let bounding = bounding
        .into_iter()
        .map(|f| {
            let (n, d) = f.integer_form();
            AffineFunctional::from_integers(n, d)
        })
        .collect();
    Profile {
        cone: c.clone(),
        bounding,
        kind: ProfileKind::ConvexHull,
    }
}

/// Membership in the profile; points on a bounding facet are inside.
pub fn contains_point(p: &Profile, v: Vector) -> bool {
    p.cone.contains(v) && p.bounding.iter().all(|f| !f.eval(v).is_positive())
}

/// All nonzero lattice points of the profile.
pub fn profile_lattice_points(p: &Profile) -> Vec<Vector> {
    let gens = p.cone.generators();
    let mut lo = [0i64; 3];
    let mut hi = [0i64; 3];
    for g in gens {
        for i in 0..3 {
            lo[i] = lo[i].min(g[i]);
            hi[i] = hi[i].max(g[i]);
        }
    }
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let v = [x, y, z];
                if !is_zero(v) && contains_point(p, v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// A catalog hyperplane `functional = 0` inside a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub name: String,
    pub functional: AffineFunctional,
    /// Set when the stored functional replaces a printed one that fails
    /// the generator-incidence check.
    pub recomputed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<AffineFunctional>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubprofileSpec {
    pub cone: Cone,
    pub hyperplanes: Vec<Hyperplane>,
}

impl SubprofileSpec {
    /// Number of extremal generators on each hyperplane.
    pub fn incidences(&self) -> Vec<usize> {
        self.hyperplanes
            .iter()
            .map(|h| {
                self.cone
                    .generators()
                    .iter()
                    .filter(|g| h.functional.is_zero_at(**g))
                    .count()
            })
            .collect()
    }

    pub fn incidence_ok(&self) -> bool {
        self.incidences().iter().all(|&k| k >= 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorReach {
    pub vector: Vector,
    /// Indices of the hyperplanes the vector lies on.
    pub reached: Vec<usize>,
    pub inside_region: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubprofileReport {
    pub incidences: Vec<usize>,
    pub incidence_ok: bool,
    pub vectors: Vec<VectorReach>,
    pub all_reach: bool,
}

pub fn subprofile_check(spec: &SubprofileSpec, vectors: &[Vector]) -> SubprofileReport {
    let oriented: Vec<AffineFunctional> = spec
        .hyperplanes
        .iter()
        .map(|h| h.functional.oriented_to_origin())
        .collect();
    let reports: Vec<VectorReach> = vectors
        .iter()
        .map(|v| VectorReach {
            vector: *v,
            reached: spec
                .hyperplanes
                .iter()
                .enumerate()
                .filter(|(_, h)| h.functional.is_zero_at(*v))
                .map(|(i, _)| i)
                .collect(),
            inside_region: spec.cone.contains(*v)
                && oriented.iter().all(|f| !f.eval(*v).is_positive()),
        })
        .collect();
    let incidences = spec.incidences();
    SubprofileReport {
        incidence_ok: incidences.iter().all(|&k| k >= 2),
        incidences,
        all_reach: reports.iter().all(|r| !r.reached.is_empty()),
        vectors: reports,
    }
}

/// Whether every point lies in the octant; profiles here are only built
/// for cones of dual Newton fans.
pub fn all_in_octant(vs: &[Vector]) -> bool {
    vs.iter().all(|v| in_octant(*v))
}
