//! Weight orders, initial forms, Gröbner fans, tropical varieties and
//! jet-truncation polynomials of a hypersurface.

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{dot, Vector};
use crate::newton::dual_newton_fan;
use crate::polyparse::{format_terms, ExponentVector, Polynomial};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

fn exponent_vector(e: &ExponentVector) -> Vector {
    [e[0] as i64, e[1] as i64, e[2] as i64]
}

/// o_w(f): the least w-weight over the support.
pub fn w_order(p: &Polynomial, w: Vector) -> Result<i64> {
    p.terms()
        .keys()
        .map(|e| dot(w, exponent_vector(e)))
        .min()
        .ok_or(Error::EmptyPolynomial)
}

/// In_w(f): the terms of least w-weight.
pub fn initial_form(p: &Polynomial, w: Vector) -> Result<Polynomial> {
    let o = w_order(p, w)?;
    Ok(p.restrict(|e| dot(w, exponent_vector(e)) == o))
}

fn serialize_display<T: fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The closure of the set of weights with a common initial form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerCone {
    pub cone: Cone,
    #[serde(serialize_with = "serialize_display")]
    pub initial_form: Polynomial,
}

/// The Gröbner fan restricted to the octant. Each face of the dual Newton
/// fan determines an initial form at its ray sum; faces with the same
/// initial form are merged into the closed cone of weights where all of
/// those terms attain the minimum.
pub fn groebner_fan(p: &Polynomial) -> Vec<GroebnerCone> {
    let dnp = dual_newton_fan(p);
    let faces: BTreeSet<Vec<Vector>> = dnp
        .all_cones()
        .iter()
        .flat_map(|c| c.faces())
        .filter(|f| !f.is_empty())
        .collect();
    let classes: BTreeSet<Polynomial> = faces
        .par_iter()
        .map(|f| {
            let w = f.iter().fold([0i64; 3], |acc, g| crate::lattice::add(acc, *g));
            initial_form(p, w).expect("non-empty polynomial")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let mut out: Vec<GroebnerCone> = classes
        .into_iter()
        .filter_map(|form| {
            let support = form.support_vectors();
            let rays: Vec<Vector> = dnp
                .rays
                .iter()
                .copied()
                .filter(|r| {
                    let o = w_order(p, *r).expect("non-empty polynomial");
                    support.iter().all(|a| dot(*r, *a) == o)
                })
                .collect();
            if rays.is_empty() {
                return None;
            }
            Some(GroebnerCone {
                cone: Cone::new(&rays).expect("subcone of the octant"),
                initial_form: form,
            })
        })
        .collect();
    out.sort_by(|a, b| a.cone.generators().cmp(b.cone.generators()));
    out
}

/// The Gröbner cones whose initial form is not a monomial.
pub fn tropical_variety(p: &Polynomial) -> Result<Fan> {
    if p.len() < 2 {
        return Err(Error::TooFewTerms);
    }
    Ok(groebner_to_fan(
        groebner_fan(p).into_iter().filter(|g| !g.initial_form.is_monomial()),
    ))
}

/// Fan JSON form with an `initial_form` string per cone.
pub fn groebner_to_fan<I: IntoIterator<Item = GroebnerCone>>(cones: I) -> Fan {
    Fan::from_labelled(
        cones
            .into_iter()
            .map(|g| (g.cone, None, Some(g.initial_form.to_string()))),
    )
}

/// Cones of a fan not contained as a proper face in another of its cones.
pub fn maximal_cones(f: &Fan) -> BTreeSet<Vec<Vector>> {
    let all: Vec<Vec<Vector>> = (0..f.len()).map(|i| f.cone_rays(i)).collect();
    all.iter()
        .filter(|c| {
            !all.iter()
                .any(|d| d.len() > c.len() && c.iter().all(|v| d.contains(v)))
        })
        .cloned()
        .collect()
}

/// Where a vector sits in the Gröbner fan: its initial form and the closed
/// Gröbner cone containing it in its relative interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetEntry {
    pub vector: Vector,
    #[serde(serialize_with = "serialize_display")]
    pub initial_form: Polynomial,
    pub monomial: bool,
    pub cone: Cone,
}

pub fn groebner_meet(p: &Polynomial, vectors: &[Vector]) -> Vec<MeetEntry> {
    let fan = groebner_fan(p);
    vectors
        .iter()
        .filter_map(|v| {
            let form = initial_form(p, *v).ok()?;
            let cone = fan.iter().find(|g| g.initial_form == form)?.cone.clone();
            Some(MeetEntry {
                vector: *v,
                monomial: form.is_monomial(),
                initial_form: form,
                cone,
            })
        })
        .collect()
}

/// A polynomial in the jet variables x0, y0, z0, x1, y1, z1, ...
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JetPolynomial {
    pub order: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl JetPolynomial {
    fn zero(order: usize) -> Self {
        JetPolynomial {
            order,
            terms: BTreeMap::new(),
        }
    }

    fn variable(order: usize, index: usize) -> Self {
        let mut e = vec![0u32; 3 * (order + 1)];
        e[index] = 1;
        JetPolynomial {
            order,
            terms: [(e, BigInt::one())].into_iter().collect(),
        }
    }

    fn constant(order: usize, c: BigInt) -> Self {
        let mut p = Self::zero(order);
        if !c.is_zero() {
            p.terms.insert(vec![0u32; 3 * (order + 1)], c);
        }
        p
    }

    fn add_assign(&mut self, other: &JetPolynomial) {
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    fn mul(&self, other: &JetPolynomial) -> JetPolynomial {
        let mut out = JetPolynomial::zero(self.order);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variable_names(order: usize) -> Vec<String> {
        (0..=order)
            .flat_map(|j| ["x", "y", "z"].map(|v| format!("{v}{j}")))
            .collect()
    }

    /// Value at an integer point given in canonical variable order.
    pub fn evaluate(&self, point: &[i64]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (k, x)| acc * BigInt::from(*x).pow(*k))
            })
            .sum()
    }
}

impl fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::variable_names(self.order);
        f.write_str(&format_terms(
            self.terms.iter().map(|(e, c)| (&e[..], c)),
            &names,
        ))
    }
}

impl Serialize for JetPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// F_0, ..., F_m with f(x(t), y(t), z(t)) = Σ t^i F_i mod t^(m+1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetSystem {
    pub order: usize,
    pub variables: Vec<String>,
    pub equations: Vec<JetPolynomial>,
}

impl JetSystem {
    /// The F_i at a point, in canonical variable order.
    pub fn evaluate(&self, point: &[i64]) -> Vec<BigInt> {
        self.equations.iter().map(|f| f.evaluate(point)).collect()
    }
}

/// A truncated power series in t with jet-polynomial coefficients.
type Series = Vec<JetPolynomial>;

fn series_mul(a: &Series, b: &Series, m: usize) -> Series {
    (0..=m)
        .map(|k| {
            let mut acc = JetPolynomial::zero(m);
            for i in 0..=k {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                acc.add_assign(&a[i].mul(&b[k - i]));
            }
            acc
        })
        .collect()
}

fn series_one(m: usize) -> Series {
    let mut s = vec![JetPolynomial::zero(m); m + 1];
    s[0] = JetPolynomial::constant(m, BigInt::one());
    s
}

pub fn jet_equations(p: &Polynomial, m: usize) -> JetSystem {
    let arcs: Vec<Series> = (0..3)
        .map(|v| (0..=m).map(|j| JetPolynomial::variable(m, 3 * j + v)).collect())
        .collect();
    let mut powers: Vec<BTreeMap<u32, Series>> = vec![BTreeMap::new(); 3];
    let mut power = |v: usize, k: u32| -> Series {
        if let Some(s) = powers[v].get(&k) {
            return s.clone();
        }
        let mut acc = series_one(m);
        for _ in 0..k {
            acc = series_mul(&acc, &arcs[v], m);
        }
        powers[v].insert(k, acc.clone());
        acc
    };
    let mut total: Series = vec![JetPolynomial::zero(m); m + 1];
    for (e, c) in p.terms() {
        let mut term = series_one(m);
        for v in 0..3 {
            if e[v] > 0 {
                term = series_mul(&term, &power(v, e[v]), m);
            }
        }
        let coeff = JetPolynomial::constant(m, c.clone());
        for (slot, t) in total.iter_mut().zip(&term) {
            slot.add_assign(&t.mul(&coeff));
        }
    }
    JetSystem {
        order: m,
        variables: JetPolynomial::variable_names(m),
        equations: total,
    }
}

/// The point of the jet space given by the monomial arc (t^w1, t^w2, t^w3),
/// truncated at order m.
pub fn monomial_arc(w: Vector, m: usize) -> Vec<i64> {
    let mut point = vec![0i64; 3 * (m + 1)];
    for v in 0..3 {
        if let Ok(j) = usize::try_from(w[v]) {
            if j <= m {
                point[3 * j + v] = 1;
            }
        }
    }
    point
}
