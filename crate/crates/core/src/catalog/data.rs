//! Closed-form catalog data: embedded valuations, profile and subprofile
//! hyperplanes, and Gröbner-cone expectations.

use super::{equation, lookup, validate_params, Params};
use crate::error::{Error, Result};
use crate::lattice::Vector;
use crate::polyparse::Polynomial;
use crate::profile::{AffineFunctional, Hyperplane};
use serde::Serialize;
use std::collections::BTreeSet;

/// The embedded valuations of a B-type instance, deduplicated and sorted.
pub fn embedded_valuations(family: &str, p: &Params) -> Result<Vec<Vector>> {
    let f = lookup(family)?.family;
    let p = validate_params(f, p)?;
    let mut out: BTreeSet<Vector> = BTreeSet::new();
    match f {
        "B-odd" => {
            let (r, n) = (p["r"], p["n"]);
            out.extend((1..=r).map(|z| [1, 0, z]));
            out.extend((0..=2 * r).map(|z| [2, 2 * n + 3, z]));
            out.extend([[0, 1, 1], [0, 1, 2], [1, n + 2, r + 1]]);
            for s in 1..=n + 2 {
                out.extend((0..=r).map(|z| [1, s, z]));
            }
        }
        "B-even" => {
            let (r, n) = (p["r"], p["n"]);
            out.extend((1..=n + r + 2).map(|z| [1, 0, z]));
            out.extend((0..=2 * r + 1).map(|z| [2, 2 * n + 3, z]));
            out.extend([[0, 1, 1], [1, n + 2, r + 1]]);
            for s in 1..=n + 2 {
                out.extend((0..=n + r + 2 - s).map(|z| [1, s, z]));
            }
        }
        _ => {
            return Err(Error::NoData(format!(
                "{f} has no closed-form embedded valuations; use appendix_fixture"
            )))
        }
    }
    Ok(out.into_iter().collect())
}

fn plane(name: &str, coeffs: [i64; 3], constant: i64) -> Hyperplane {
    Hyperplane {
        name: name.to_string(),
        functional: AffineFunctional::from_integers(coeffs, constant),
        recomputed: false,
        printed: None,
    }
}

fn replaced(name: &str, coeffs: [i64; 3], constant: i64, printed: ([i64; 3], i64)) -> Hyperplane {
    Hyperplane {
        recomputed: true,
        printed: Some(AffineFunctional::from_integers(printed.0, printed.1)),
        ..plane(name, coeffs, constant)
    }
}

fn no_data(family: &str, what: &str) -> Error {
    Error::NoData(format!("{family} has no {what} data"))
}

fn cone_index_error(family: &str, cone: usize) -> Error {
    Error::NoData(format!("{family} has no cone sigma{cone}"))
}

/// Printed bounding hyperplanes of the profile of cone `sigma<cone>`.
///
/// The B-odd sigma1 hyperplane H1 is printed without an x term and misses
/// the generators; it is replaced by the facet of conv({0} ∪ generators)
/// through (1,0,r), (0,1,2), (2,2n+3,2r) and flagged.
pub fn profile_hyperplanes(family: &str, p: &Params, cone: usize) -> Result<Vec<Hyperplane>> {
    let f = lookup(family)?.family;
    let p = validate_params(f, p)?;
    let g = |k: &str| p[k];
    Ok(match (f, cone) {
        ("B-odd", 1) => {
            let (r, n) = (g("r"), g("n"));
            vec![
                replaced(
                    "H1",
                    [2 * n + 3 - r * n - 2 * r, -1, n + 2],
                    -(2 * n + 3),
                    ([0, -1, 2 * n + 3], (2 * n - 2 * n * r + 3 - 3 * r) - (2 * n + 3)),
                ),
                plane("H2", [n - r + 2, -1, 1], -1),
            ]
        }
        ("B-even", 1) => {
            let (r, n) = (g("r"), g("n"));
            vec![
                plane(
                    "H1",
                    [2 * n * n + 2 * n * r + 5 * n + 3 * r + 3, -(2 * n + 2), -(2 * n + 3)],
                    2 * n + 3,
                ),
                plane("H2", [r, 0, -1], 1),
            ]
        }
        ("B-odd" | "B-even", 2) => vec![plane("H", [2 * g("n") + 3, -1, 0], -(2 * g("n") + 3))],
        ("B-odd" | "B-even", 3) => vec![plane("H", [g("n") + 1, -1, 0], 1)],
        ("ELLIPTIC-1", 3) => vec![plane("H", [8, -3, -3], 3)],
        ("B-odd" | "B-even" | "ELLIPTIC-1", c) => return Err(cone_index_error(f, c)),
        _ => return Err(no_data(f, "profile")),
    })
}

/// Subprofile hyperplanes of cone `sigma<cone>`.
///
/// The B-even sigma1 hyperplane H1^(1) is printed as
/// (n²+nr+2n+r+1)x − ny − (n+1)z + (n+1), which the listed vectors
/// (1,s,n+r+2−s), 1 ≤ s ≤ n, do not satisfy; it is replaced by the plane
/// (n+r+1)x − y − z + 1 through e3 and those vectors, and flagged.
pub fn subprofile_hyperplanes(family: &str, p: &Params, cone: usize) -> Result<Vec<Hyperplane>> {
    let f = lookup(family)?.family;
    let p = validate_params(f, p)?;
    let g = |k: &str| p[k];
    Ok(match (f, cone) {
        ("B-odd", 1) => {
            let (r, n) = (g("r"), g("n"));
            vec![plane("H1^(1)", [r - 1, 0, -1], 1), plane("H2^(1)", [n - r + 2, -1, 1], -1)]
        }
        ("B-even", 1) => {
            let (r, n) = (g("r"), g("n"));
            vec![
                replaced(
                    "H1^(1)",
                    [n + r + 1, -1, -1],
                    1,
                    ([n * n + n * r + 2 * n + r + 1, -n, -(n + 1)], n + 1),
                ),
                plane("H2^(1)", [r, 0, -1], 1),
            ]
        }
        ("B-odd" | "B-even", 2) => {
            vec![plane("H1^(2)", [1, 0, 0], -1), plane("H2^(2)", [g("n") + 2, -1, 0], -1)]
        }
        ("B-odd" | "B-even", 3) => vec![plane("H", [g("n") + 1, -1, 0], 1)],
        ("ELLIPTIC-1", 3) => vec![plane("H", [8, -3, -3], 3)],
        ("B-odd" | "B-even" | "ELLIPTIC-1", c) => return Err(cone_index_error(f, c)),
        _ => return Err(no_data(f, "subprofile")),
    })
}

/// A non-monomial Gröbner cone closure and its initial form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerExpectation {
    pub rays: Vec<Vector>,
    pub initial_form: String,
}

/// The non-monomial Gröbner cone closures of a B-type instance. Initial
/// forms are the restrictions of the equation to the named monomials.
pub fn groebner_expectations(family: &str, p: &Params) -> Result<Vec<GroebnerExpectation>> {
    let f = lookup(family)?.family;
    let eq = equation(f, p)?;
    let p = validate_params(f, p)?;
    let (r, n) = match f {
        "B-odd" | "B-even" => (p["r"], p["n"]),
        _ => return Err(no_data(f, "Gröbner")),
    };
    let restrict = |keep: &[[i64; 3]]| -> Polynomial {
        eq.restrict(|e| keep.contains(&e.map(i64::from)))
    };
    let mut rays_forms: Vec<(Vec<Vector>, Polynomial)> = if f == "B-odd" {
        let top = [2, 2 * n + 3, 2 * r];
        let (a, b, c) = ([2 * n + 3, 0, 1], [r, 2, 0], [0, 2, 1]);
        vec![
            (vec![top], eq.clone()),
            (vec![[0, 1, 2], top], restrict(&[a, b])),
            (vec![[2, 2 * n + 3, 0], top], restrict(&[a, c])),
            (vec![[1, 0, r], top], restrict(&[b, c])),
        ]
    } else {
        let top = [2, 2 * n + 3, 2 * r + 1];
        let (a, b, c) = ([n + r + 2, 1, 0], [2 * n + 3, 0, 1], [0, 2, 1]);
        vec![
            (vec![top], eq.clone()),
            (vec![[0, 1, 1], top], restrict(&[a, b])),
            (vec![[2, 2 * n + 3, 0], top], restrict(&[b, c])),
            (vec![[1, 0, n + r + 2], top], restrict(&[a, c])),
        ]
    };
    for (rays, _) in rays_forms.iter_mut() {
        rays.sort();
    }
    rays_forms.sort();
    Ok(rays_forms
        .into_iter()
        .map(|(rays, form)| GroebnerExpectation {
            rays,
            initial_form: form.to_string(),
        })
        .collect())
}
