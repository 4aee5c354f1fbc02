//! The RTP-singularity catalog: parameterized equations, embedded valuation
//! formulas, subprofile hyperplanes, Gröbner expectations, determinant
//! families, Hilbert-basis fixtures and an end-to-end verification pipeline.

mod data;
mod determinants;
mod fixtures;
mod verify;

pub use data::{
    embedded_valuations, groebner_expectations, profile_hyperplanes, subprofile_hyperplanes,
    GroebnerExpectation,
};
pub use determinants::{
    determinant_families, evaluate_determinants, DeterminantFamily, DeterminantReport,
    Erratum, FamilyEvaluation,
};
pub use fixtures::{
    appendix_fixture, check_fixture, fixtures, ConeMatch, Fixture, FixtureCone, FixtureReport,
    RemovalCertificate,
};
pub use verify::{verify, ConeReport, EvReport, GroebnerReport, VerificationReport};

use crate::error::{Error, Result};
use crate::lattice::Vector;
use crate::polyparse::Polynomial;
use serde::Serialize;
use std::collections::BTreeMap;

/// Named integer parameters of a family instance.
pub type Params = BTreeMap<String, i64>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub parameters: &'static [&'static str],
    pub domain: &'static str,
    pub template: &'static str,
    pub has_ev_formula: bool,
    pub has_subprofiles: bool,
}

const ENTRIES: &[CatalogEntry] = &[
    entry("A1", &["m"], "m > 1 (k = l = m)", "y^(3m+3) + x*y^(m+1)*z - x*z^2 - z^3"),
    entry(
        "A2",
        &["k", "m"],
        "1 <= k < m (l = k)",
        "y^(k+l+m+3) + y^(2k+2)*z + y^(k+1)*z^2 + x*y^(k+1)*z + x*z^2 - z^3",
    ),
    entry(
        "A3",
        &["k", "l", "m"],
        "1 <= l < m < k; l+k > 2m, or l+k <= 2m with l+k even",
        "y^(3k) + y^(2k+m+l-2) - 2*y^(l+k)*z - x*y^k*z + y^m*z^2 + x*z^2 - z^3",
    ),
    entry(
        "A4",
        &["k", "l", "m"],
        "1 <= l < m < k; l+k <= 2m with l+k odd",
        "y^(2k+m) + y^(k+m)*z + y^(l+k)*z + x*y^k*z - y^k*z^2 + y^l*z^2 + x*z^2 - z^3",
    ),
    CatalogEntry {
        family: "B-odd",
        parameters: &["r", "n"],
        domain: "r >= 1, n >= 2 (k = 2r-1)",
        template: "x^(2n+3)*z - x^r*y^2 - y^2*z",
        has_ev_formula: true,
        has_subprofiles: true,
    },
    CatalogEntry {
        family: "B-even",
        parameters: &["r", "n"],
        domain: "r >= 1, n >= 2 (k = 2r)",
        template: "x^(n+r+2)*y - x^(2n+3)*z + y^2*z",
        has_ev_formula: true,
        has_subprofiles: true,
    },
    entry("C", &["n", "m"], "n >= 3, m >= 2", "x^(n-1)*y^(2m+2) + y^(2m+4) - x*z^2"),
    entry("D-body", &["n"], "n >= 1", "x^(2n+2)*y^2 - x^(n+3)*z + y*z^2"),
    entry("D-appendix", &["n"], "n >= 2 (labels D_(n-1))", "z^2 - x*y^2 - x^4"),
    entry("E60", &[], "none", "z^3 + y^3*z + x^2*y^2"),
    entry("E07", &[], "none", "z^3 + y^5 + x^2*y^2"),
    entry("E70", &[], "none", "z^3 + x^2*y*z + y^4"),
    entry("F", &["k"], "k >= 2 (labels F_(k-1))", "y^(2k+3) + x^2*y^(2k) - x*z^2"),
    entry("H1", &["k"], "k >= 1 (n = 3k-1)", "z^3 + x^3*y + x^2*y^k"),
    entry("H2", &["k"], "k >= 1 (n = 3k)", "z^3 + x*y^k*z + x^3*y"),
    entry("H3", &["k"], "k >= 0 (n = 3k+1)", "z^3 + x*y^(k+1)*z + x^3*y^2"),
    CatalogEntry {
        family: "ELLIPTIC-1",
        parameters: &[],
        domain: "none",
        template: "y^3 + x*z^2 - x^4",
        has_ev_formula: false,
        has_subprofiles: true,
    },
    entry("ELLIPTIC-2", &[], "none", "z^2 + y^3 + x^21"),
];

const fn entry(
    family: &'static str,
    parameters: &'static [&'static str],
    domain: &'static str,
    template: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        family,
        parameters,
        domain,
        template,
        has_ev_formula: false,
        has_subprofiles: false,
    }
}

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

/// Looks up a family; `D` is an alias for `D-body`.
pub fn lookup(family: &str) -> Result<&'static CatalogEntry> {
    let name = if family == "D" { "D-body" } else { family };
    ENTRIES
        .iter()
        .find(|e| e.family == name)
        .ok_or_else(|| Error::UnknownFamily(family.to_string()))
}

fn get(p: &Params, name: &str) -> Result<i64> {
    p.get(name)
        .copied()
        .ok_or_else(|| Error::MissingParameter(name.to_string()))
}

fn require(family: &str, ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            family: family.to_string(),
            msg: msg.to_string(),
        })
    }
}

/// Checks a parameter map against the family's domain and returns only the
/// parameters the family uses. For A2, `l` defaults to `k`.
pub fn validate_params(family: &str, p: &Params) -> Result<Params> {
    let e = lookup(family)?;
    let f = e.family;
    let mut out = Params::new();
    for name in e.parameters {
        out.insert(name.to_string(), get(p, name)?);
    }
    let v = |n: &str| out[n];
    match f {
        "A1" => require(f, v("m") > 1, "m > 1")?,
        "A2" => {
            if let Some(&l) = p.get("l") {
                require(f, l == v("k"), "l = k")?;
            }
            require(f, 1 <= v("k") && v("k") < v("m"), "1 <= k < m")?
        }
        "A3" | "A4" => {
            let (k, l, m) = (v("k"), v("l"), v("m"));
            require(f, 1 <= l && l < m && m < k, "1 <= l < m < k")?;
            let even = (l + k) % 2 == 0;
            if f == "A3" {
                require(f, l + k > 2 * m || even, "l+k > 2m, or l+k <= 2m with l+k even")?
            } else {
                require(f, l + k <= 2 * m && !even, "l+k <= 2m with l+k odd")?
            }
        }
        "B-odd" | "B-even" => require(f, v("r") >= 1 && v("n") >= 2, "r >= 1, n >= 2")?,
        "C" => require(f, v("n") >= 3 && v("m") >= 2, "n >= 3, m >= 2")?,
        "D-body" => require(f, v("n") >= 1, "n >= 1")?,
        "D-appendix" => require(f, v("n") >= 2, "n >= 2")?,
        "F" => require(f, v("k") >= 2, "k >= 2")?,
        "H1" | "H2" => require(f, v("k") >= 1, "k >= 1")?,
        "H3" => require(f, v("k") >= 0, "k >= 0")?,
        _ => {}
    }
    Ok(out)
}

fn exp(a: i64, b: i64, c: i64) -> [u32; 3] {
    [a as u32, b as u32, c as u32]
}

/// The instantiated equation of a family.
pub fn equation(family: &str, p: &Params) -> Result<Polynomial> {
    let p = validate_params(family, p)?;
    let v = |n: &str| p[n];
    let terms: Vec<([u32; 3], i64)> = match lookup(family)?.family {
        "A1" => {
            let m = v("m");
            vec![(exp(0, 3 * m + 3, 0), 1), (exp(1, m + 1, 1), 1), (exp(1, 0, 2), -1), (exp(0, 0, 3), -1)]
        }
        "A2" => {
            let (k, m) = (v("k"), v("m"));
            let l = k;
            vec![
                (exp(0, k + l + m + 3, 0), 1),
                (exp(0, 2 * k + 2, 1), 1),
                (exp(0, k + 1, 2), 1),
                (exp(1, k + 1, 1), 1),
                (exp(1, 0, 2), 1),
                (exp(0, 0, 3), -1),
            ]
        }
        "A3" => {
            let (k, l, m) = (v("k"), v("l"), v("m"));
            vec![
                (exp(0, 3 * k, 0), 1),
                (exp(0, 2 * k + m + l - 2, 0), 1),
                (exp(0, l + k, 1), -2),
                (exp(1, k, 1), -1),
                (exp(0, m, 2), 1),
                (exp(1, 0, 2), 1),
                (exp(0, 0, 3), -1),
            ]
        }
        "A4" => {
            let (k, l, m) = (v("k"), v("l"), v("m"));
            vec![
                (exp(0, 2 * k + m, 0), 1),
                (exp(0, k + m, 1), 1),
                (exp(0, l + k, 1), 1),
                (exp(1, k, 1), 1),
                (exp(0, k, 2), -1),
                (exp(0, l, 2), 1),
                (exp(1, 0, 2), 1),
                (exp(0, 0, 3), -1),
            ]
        }
        "B-odd" => {
            let (r, n) = (v("r"), v("n"));
            vec![(exp(2 * n + 3, 0, 1), 1), (exp(r, 2, 0), -1), (exp(0, 2, 1), -1)]
        }
        "B-even" => {
            let (r, n) = (v("r"), v("n"));
            vec![(exp(n + r + 2, 1, 0), 1), (exp(2 * n + 3, 0, 1), -1), (exp(0, 2, 1), 1)]
        }
        "C" => {
            let (n, m) = (v("n"), v("m"));
            vec![(exp(n - 1, 2 * m + 2, 0), 1), (exp(0, 2 * m + 4, 0), 1), (exp(1, 0, 2), -1)]
        }
        "D-body" => {
            let n = v("n");
            vec![(exp(2 * n + 2, 2, 0), 1), (exp(n + 3, 0, 1), -1), (exp(0, 1, 2), 1)]
        }
        "D-appendix" => vec![(exp(0, 0, 2), 1), (exp(1, 2, 0), -1), (exp(4, 0, 0), -1)],
        "E60" => vec![(exp(0, 0, 3), 1), (exp(0, 3, 1), 1), (exp(2, 2, 0), 1)],
        "E07" => vec![(exp(0, 0, 3), 1), (exp(0, 5, 0), 1), (exp(2, 2, 0), 1)],
        "E70" => vec![(exp(0, 0, 3), 1), (exp(2, 1, 1), 1), (exp(0, 4, 0), 1)],
        "F" => {
            let k = v("k");
            vec![(exp(0, 2 * k + 3, 0), 1), (exp(2, 2 * k, 0), 1), (exp(1, 0, 2), -1)]
        }
        "H1" => {
            let k = v("k");
            vec![(exp(0, 0, 3), 1), (exp(3, 1, 0), 1), (exp(2, k, 0), 1)]
        }
        "H2" => {
            let k = v("k");
            vec![(exp(0, 0, 3), 1), (exp(1, k, 1), 1), (exp(3, 1, 0), 1)]
        }
        "H3" => {
            let k = v("k");
            vec![(exp(0, 0, 3), 1), (exp(1, k + 1, 1), 1), (exp(3, 2, 0), 1)]
        }
        "ELLIPTIC-1" => vec![(exp(0, 3, 0), 1), (exp(1, 0, 2), 1), (exp(4, 0, 0), -1)],
        "ELLIPTIC-2" => vec![(exp(0, 0, 2), 1), (exp(0, 3, 0), 1), (exp(21, 0, 0), 1)],
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(Polynomial::from_terms(terms))
}

/// Names of the maximal DNP cones of a family, keyed by the Newton vertex
/// each cone selects. Families without named cones get `None`.
pub fn cone_names(family: &str, p: &Params) -> Result<Option<Vec<(&'static str, Vector)>>> {
    let p = validate_params(family, p)?;
    let v = |n: &str| p[n];
    Ok(match lookup(family)?.family {
        "B-odd" => Some(vec![
            ("sigma1", [v("r"), 2, 0]),
            ("sigma2", [0, 2, 1]),
            ("sigma3", [2 * v("n") + 3, 0, 1]),
        ]),
        "B-even" => Some(vec![
            ("sigma1", [v("n") + v("r") + 2, 1, 0]),
            ("sigma2", [0, 2, 1]),
            ("sigma3", [2 * v("n") + 3, 0, 1]),
        ]),
        "ELLIPTIC-1" => Some(vec![
            ("sigma1", [0, 3, 0]),
            ("sigma2", [1, 0, 2]),
            ("sigma3", [4, 0, 0]),
        ]),
        _ => None,
    })
}

/// Default verification grid: the two smallest parameter tuples in the
/// domain plus one mid-size tuple.
pub fn default_grid(family: &str) -> Result<Vec<Params>> {
    let e = lookup(family)?;
    let tuples: Vec<Vec<(&str, i64)>> = match e.family {
        "A1" => vec![vec![("m", 2)], vec![("m", 3)], vec![("m", 5)]],
        "A2" => vec![
            vec![("k", 1), ("m", 2)],
            vec![("k", 1), ("m", 3)],
            vec![("k", 5), ("m", 6)],
        ],
        "A3" => vec![
            vec![("k", 4), ("l", 1), ("m", 2)],
            vec![("k", 5), ("l", 1), ("m", 2)],
            vec![("k", 7), ("l", 3), ("m", 5)],
        ],
        "A4" => vec![
            vec![("k", 4), ("l", 1), ("m", 3)],
            vec![("k", 5), ("l", 2), ("m", 4)],
            vec![("k", 7), ("l", 2), ("m", 6)],
        ],
        "B-odd" | "B-even" => vec![
            vec![("r", 1), ("n", 2)],
            vec![("r", 2), ("n", 2)],
            vec![("r", 3), ("n", 4)],
        ],
        "C" => vec![
            vec![("n", 3), ("m", 2)],
            vec![("n", 4), ("m", 2)],
            vec![("n", 7), ("m", 2)],
        ],
        "D-body" => vec![vec![("n", 1)], vec![("n", 2)], vec![("n", 5)]],
        "D-appendix" => vec![vec![("n", 2)], vec![("n", 3)], vec![("n", 5)]],
        "F" => vec![vec![("k", 2)], vec![("k", 3)], vec![("k", 6)]],
        "H1" | "H2" => vec![vec![("k", 1)], vec![("k", 2)], vec![("k", 4)]],
        "H3" => vec![vec![("k", 0)], vec![("k", 1)], vec![("k", 2)]],
        _ => vec![vec![]],
    };
    Ok(tuples.iter().map(|t| params(t)).collect())
}

/// Human-readable form of a parameter map, e.g. `r=2,n=2`.
pub fn format_params(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}
