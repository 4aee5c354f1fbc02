//! Per-cone Hilbert-basis tables, expanded at fixed parameters and shipped
//! as data files. Each cone records the vectors as printed plus explicit
//! removals and additions; every such erratum is certified independently.

use super::{lookup, Params};
use crate::cones::{find_decomposition, Cone};
use crate::error::{Error, Result};
use crate::lattice::{format_vector, Vector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCone {
    pub name: String,
    pub listed: Vec<Vector>,
    #[serde(default)]
    pub remove: Vec<Vector>,
    #[serde(default)]
    pub add: Vec<Vector>,
}

impl FixtureCone {
    /// The listed vectors with the errata applied.
    pub fn expected(&self) -> BTreeSet<Vector> {
        let mut s: BTreeSet<Vector> = self.listed.iter().copied().collect();
        for v in &self.remove {
            s.remove(v);
        }
        s.extend(self.add.iter().copied());
        s
    }

    pub fn listed_set(&self) -> BTreeSet<Vector> {
        self.listed.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub version: u32,
    pub id: String,
    pub family: String,
    pub params: Params,
    pub cones: Vec<FixtureCone>,
}

const FILES: &[&str] = &[
    include_str!("../../data/fixtures/A1-m3.json"),
    include_str!("../../data/fixtures/A2-k5-m6.json"),
    include_str!("../../data/fixtures/C-n7-m2.json"),
    include_str!("../../data/fixtures/D-appendix-n5.json"),
    include_str!("../../data/fixtures/D-body-n5.json"),
    include_str!("../../data/fixtures/E07.json"),
    include_str!("../../data/fixtures/E60.json"),
    include_str!("../../data/fixtures/E70.json"),
    include_str!("../../data/fixtures/ELLIPTIC-1.json"),
    include_str!("../../data/fixtures/F-k6.json"),
    include_str!("../../data/fixtures/H1-k4.json"),
    include_str!("../../data/fixtures/H2-k4.json"),
    include_str!("../../data/fixtures/H3-k2.json"),
];

/// All shipped fixtures.
pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        FILES
            .iter()
            .map(|text| serde_json::from_str(text).expect("shipped fixture parses"))
            .collect()
    })
}

/// The fixture of a family at exactly these parameters.
pub fn appendix_fixture(family: &str, p: &Params) -> Result<&'static Fixture> {
    let f = lookup(family)?.family;
    let used = super::validate_params(f, p)?;
    fixtures()
        .iter()
        .find(|x| x.family == f && x.params == used)
        .ok_or_else(|| {
            Error::NoData(format!(
                "no fixture for {f} at {}",
                super::format_params(&used)
            ))
        })
}

/// Which computed cone a fixture cone was matched to, and the comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeMatch {
    pub name: String,
    pub cone_index: Option<usize>,
    pub label: Option<String>,
    pub expected: usize,
    pub computed: usize,
    pub missing: Vec<Vector>,
    pub extra: Vec<Vector>,
    pub equal: bool,
    /// The computed basis equals the printed list without errata.
    pub literal_equal: bool,
}

/// Independent evidence for a removed or added vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovalCertificate {
    pub cone: String,
    pub vector: Vector,
    pub action: &'static str,
    pub reason: String,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub cones: Vec<ConeMatch>,
    /// Fixture cones correspond one-to-one with computed cones.
    pub bijective: bool,
    pub errata: Vec<RemovalCertificate>,
    pub errata_certified: bool,
    pub literal_equal: bool,
    pub ok: bool,
}

fn certify(name: &str, cone: Option<&Cone>, v: Vector, action: &'static str) -> RemovalCertificate {
    let (reason, certified) = match (cone, action) {
        (None, _) => ("no matching cone".to_string(), false),
        (Some(c), "removed") if !c.contains(v) => ("not in the cone".to_string(), true),
        (Some(c), "removed") => match find_decomposition(c, v) {
            Some((a, b)) => (format!("= {} + {}", format_vector(a), format_vector(b)), true),
            None => ("irreducible in the cone".to_string(), false),
        },
        (Some(c), _) if !c.contains(v) => ("not in the cone".to_string(), false),
        (Some(c), _) => match find_decomposition(c, v) {
            Some((a, b)) => (format!("reducible: {} + {}", format_vector(a), format_vector(b)), false),
            None => ("in the cone and irreducible".to_string(), true),
        },
    };
    RemovalCertificate {
        cone: name.to_string(),
        vector: v,
        action,
        reason,
        certified,
    }
}

/// Compares a fixture with computed per-cone Hilbert bases. Fixture cones
/// are matched to the computed cone sharing the most expected vectors.
pub fn check_fixture(
    fixture: &Fixture,
    cones: &[Cone],
    labels: &[Option<String>],
    hilbert: &[BTreeSet<Vector>],
) -> FixtureReport {
    let mut used = BTreeSet::new();
    let mut bijective = fixture.cones.len() == cones.len();
    let mut matches = Vec::new();
    let mut errata = Vec::new();
    for fc in &fixture.cones {
        let expected = fc.expected();
        let best = hilbert
            .iter()
            .enumerate()
            .map(|(i, h)| (h.intersection(&expected).count(), std::cmp::Reverse(i)))
            .max()
            .filter(|(n, _)| *n > 0)
            .map(|(_, std::cmp::Reverse(i))| i);
        if let Some(i) = best {
            bijective &= used.insert(i);
        } else {
            bijective = false;
        }
        let computed = best.map(|i| hilbert[i].clone()).unwrap_or_default();
        let cone = best.map(|i| &cones[i]);
        for v in &fc.remove {
            errata.push(certify(&fc.name, cone, *v, "removed"));
        }
        for v in &fc.add {
            errata.push(certify(&fc.name, cone, *v, "added"));
        }
        matches.push(ConeMatch {
            name: fc.name.clone(),
            cone_index: best,
            label: best.and_then(|i| labels.get(i).cloned().flatten()),
            expected: expected.len(),
            computed: computed.len(),
            missing: expected.difference(&computed).copied().collect(),
            extra: computed.difference(&expected).copied().collect(),
            equal: best.is_some() && expected == computed,
            literal_equal: best.is_some() && fc.listed_set() == computed,
        });
    }
    let errata_certified = errata.iter().all(|e| e.certified);
    let ok = bijective && errata_certified && matches.iter().all(|m| m.equal);
    FixtureReport {
        id: fixture.id.clone(),
        literal_equal: matches.iter().all(|m| m.literal_equal),
        cones: matches,
        bijective,
        errata,
        errata_certified,
        ok,
    }
}
