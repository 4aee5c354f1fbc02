//! End-to-end verification of a catalog instance.

use super::{
    appendix_fixture, check_fixture, cone_names, embedded_valuations, equation,
    groebner_expectations, lookup, profile_hyperplanes, subprofile_hyperplanes, validate_params,
    FixtureReport, GroebnerExpectation, Params,
};
use crate::cones::{hilbert_basis, Cone};
use crate::error::Result;
use crate::fan::Fan;
use crate::lattice::{Vector, BASIS};
use crate::newton::{dual_newton_fan, label_vertex};
use crate::profile::{
    contains_point, profile, profile_lattice_points, subprofile_check, unit_functional, Hyperplane,
    Profile, SubprofileReport, SubprofileSpec,
};
use crate::refine::{hilbert_refinement, refine_fan_from_rays, refinement_from_rays, RefinementReport};
use crate::valuation::{groebner_fan, maximal_cones, tropical_variety};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

/// A Hilbert-basis element outside the profile of its cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Escape {
    pub vector: Vector,
    /// l-value of the vector when the cone is simplicial.
    pub l_value: Option<String>,
}

/// A printed profile hyperplane and whether it is a computed bounding facet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedFacet {
    pub hyperplane: Hyperplane,
    pub matches_computed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub name: Option<String>,
    pub label: Option<String>,
    pub generators: Vec<Vector>,
    pub hilbert: Vec<Vector>,
    pub refinement: RefinementReport,
    pub profile: Profile,
    pub hilbert_inside_profile: bool,
    pub escapes: Vec<Escape>,
    /// Every nonzero lattice point of the profile is a Hilbert element.
    pub profile_points_in_hilbert: bool,
    /// Embedded valuations in this cone that lie outside its profile.
    pub valuations_outside_profile: Vec<Vector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_profile: Option<Vec<PrintedFacet>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subprofile: Option<SubprofileReport>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvReport {
    pub expected: Vec<Vector>,
    /// Union of the per-cone Hilbert bases without the coordinate vectors.
    pub computed: Vec<Vector>,
    pub missing: Vec<Vector>,
    pub extra: Vec<Vector>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<GroebnerExpectation>>,
    pub computed: Vec<GroebnerExpectation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    /// Maximal cones of the tropical variety are the walls of the dual fan.
    pub tropical_is_skeleton: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub params: Params,
    pub equation: String,
    pub dnp: Fan,
    pub per_cone: Vec<ConeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ev: Option<EvReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureReport>,
    /// Fan-level refinement by the embedded valuations, or by the union of
    /// the Hilbert bases when there is no closed formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refinement: Option<RefinementReport>,
    pub groebner: GroebnerReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vector>,
    pub stages: Vec<Stage>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }
}

fn stage(name: &'static str, ok: bool, detail: Option<String>) -> Stage {
    Stage { name, ok, detail }
}

struct ConeInput<'a> {
    cone: Cone,
    name: Option<String>,
    label: Option<String>,
    family: &'a str,
    params: &'a Params,
    valuations: Option<&'a [Vector]>,
}

fn cone_report(input: ConeInput<'_>) -> Result<ConeReport> {
    let c = &input.cone;
    let h = hilbert_basis(c)?;
    let hset = h.as_set();
    let refinement = refinement_from_rays(c, &h.elements)?;
    let prof = profile(c);
    let l = c.is_simplicial().then(|| unit_functional(c));
    let escapes: Vec<Escape> = h
        .elements
        .iter()
        .filter(|v| !contains_point(&prof, **v))
        .map(|v| Escape {
            vector: *v,
            l_value: l.as_ref().map(|l| l.eval(*v).to_string()),
        })
        .collect();
    let profile_points_in_hilbert = profile_lattice_points(&prof).iter().all(|v| hset.contains(v));
    let mine: Vec<Vector> = match input.valuations {
        Some(ev) => ev.iter().copied().filter(|v| c.contains(*v)).collect(),
        None => h.elements.clone(),
    };
    let valuations_outside_profile: Vec<Vector> = match input.valuations {
        Some(_) => mine.iter().copied().filter(|v| !contains_point(&prof, *v)).collect(),
        None => Vec::new(),
    };
    let cone_number = input
        .name
        .as_deref()
        .and_then(|n| n.strip_prefix("sigma"))
        .and_then(|n| n.parse::<usize>().ok());
    let printed_profile = cone_number
        .and_then(|k| profile_hyperplanes(input.family, input.params, k).ok())
        .map(|hs| {
            hs.into_iter()
                .map(|h| PrintedFacet {
                    matches_computed: prof.bounding.iter().any(|b| b.same_hyperplane(&h.functional)),
                    hyperplane: h,
                })
                .collect()
        });
    let subprofile = cone_number
        .and_then(|k| subprofile_hyperplanes(input.family, input.params, k).ok())
        .map(|hyperplanes| {
            let spec = SubprofileSpec {
                cone: c.clone(),
                hyperplanes,
            };
            subprofile_check(&spec, &mine)
        });
    let ok = refinement.ok()
        && escapes.is_empty()
        && profile_points_in_hilbert
        && valuations_outside_profile.is_empty()
        && subprofile.as_ref().is_none_or(|s| s.all_reach && s.incidence_ok);
    Ok(ConeReport {
        name: input.name,
        label: input.label,
        generators: c.generators().to_vec(),
        hilbert: h.elements,
        refinement,
        profile: prof,
        hilbert_inside_profile: escapes.is_empty(),
        escapes,
        profile_points_in_hilbert,
        valuations_outside_profile,
        printed_profile,
        subprofile,
        ok,
    })
}

fn groebner_report(family: &str, p: &Params, eq: &crate::polyparse::Polynomial, dnp: &Fan) -> GroebnerReport {
    let mut computed: Vec<GroebnerExpectation> = groebner_fan(eq)
        .into_iter()
        .filter(|g| !g.initial_form.is_monomial())
        .map(|g| GroebnerExpectation {
            rays: g.cone.generators().to_vec(),
            initial_form: g.initial_form.to_string(),
        })
        .collect();
    computed.sort_by(|a, b| a.rays.cmp(&b.rays));
    let expected = groebner_expectations(family, p).ok();
    let matches = expected.as_ref().map(|e| {
        let a: BTreeSet<(Vec<Vector>, String)> =
            e.iter().map(|g| (g.rays.clone(), g.initial_form.clone())).collect();
        let b: BTreeSet<(Vec<Vector>, String)> = computed
            .iter()
            .map(|g| (g.rays.clone(), g.initial_form.clone()))
            .collect();
        a == b
    });
    let tropical_is_skeleton = tropical_variety(eq)
        .map(|t| maximal_cones(&t) == dnp.walls())
        .unwrap_or(false);
    GroebnerReport {
        expected,
        computed,
        matches,
        tropical_is_skeleton,
    }
}

/// Runs the full pipeline for one catalog instance: equation, dual Newton
/// fan, per-cone Hilbert bases, refinements, profiles and subprofiles,
/// comparison against embedded valuations or fixtures, and the Gröbner fan.
pub fn verify(family: &str, params: &Params) -> Result<VerificationReport> {
    let family = lookup(family)?.family;
    let params = validate_params(family, params)?;
    let eq = equation(family, &params)?;
    let dnp = dual_newton_fan(&eq);
    let names = cone_names(family, &params)?;
    let valuations = embedded_valuations(family, &params).ok();
    let inputs: Vec<ConeInput> = (0..dnp.len())
        .map(|i| {
            let label = dnp.cones[i].label.clone();
            let vertex = label.as_deref().and_then(label_vertex);
            let name = names.as_ref().and_then(|ns| {
                ns.iter()
                    .find(|(_, v)| Some(*v) == vertex)
                    .map(|(n, _)| n.to_string())
            });
            ConeInput {
                cone: dnp.cone(i),
                name,
                label,
                family,
                params: &params,
                valuations: valuations.as_deref(),
            }
        })
        .collect();
    let per_cone: Vec<ConeReport> = inputs
        .into_par_iter()
        .map(cone_report)
        .collect::<Result<Vec<_>>>()?;

    let union: BTreeSet<Vector> = per_cone.iter().flat_map(|c| c.hilbert.iter().copied()).collect();
    let ev = valuations.as_ref().map(|expected| {
        let expected_set: BTreeSet<Vector> = expected.iter().copied().collect();
        let computed: BTreeSet<Vector> = union.iter().copied().filter(|v| !BASIS.contains(v)).collect();
        EvReport {
            expected: expected.clone(),
            missing: expected_set.difference(&computed).copied().collect(),
            extra: computed.difference(&expected_set).copied().collect(),
            matches: expected_set == computed,
            computed: computed.into_iter().collect(),
        }
    });

    let fixture = appendix_fixture(family, &params).ok().map(|fx| {
        let cones: Vec<Cone> = dnp.all_cones();
        let labels: Vec<Option<String>> = dnp.cones.iter().map(|c| c.label.clone()).collect();
        let hilbert: Vec<BTreeSet<Vector>> = per_cone
            .iter()
            .map(|c| c.hilbert.iter().copied().collect())
            .collect();
        check_fixture(fx, &cones, &labels, &hilbert)
    });

    let (refinement, refinement_error) = match &valuations {
        Some(ev) => match refine_fan_from_rays(&dnp, ev) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        },
        None => match hilbert_refinement(&dnp) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        },
    };

    let groebner = groebner_report(family, &params, &eq, &dnp);
    let witness = per_cone
        .iter()
        .flat_map(|c| c.escapes.iter().map(|e| e.vector))
        .next();

    let mut stages = vec![
        stage("dnp", !dnp.is_empty(), None),
        stage(
            "cone_refinements",
            per_cone.iter().all(|c| c.refinement.ok()),
            None,
        ),
    ];
    stages.push(match (&refinement, refinement_error) {
        (Some(r), _) => stage(
            "fan_refinement",
            r.ok(),
            Some(format!("{} simplices, max det {}", r.certificates.len(), r.max_det())),
        ),
        (None, e) => stage("fan_refinement", false, e),
    });
    if let Some(ev) = &ev {
        stages.push(stage(
            "ev_match",
            ev.matches,
            (!ev.matches).then(|| format!("missing {:?}, extra {:?}", ev.missing, ev.extra)),
        ));
    }
    if let Some(fx) = &fixture {
        stages.push(stage("fixture", fx.ok, None));
    }
    stages.push(stage(
        "profile_containment",
        per_cone
            .iter()
            .all(|c| c.hilbert_inside_profile && c.valuations_outside_profile.is_empty()),
        witness.map(|w| format!("escape {}", crate::lattice::format_vector(w))),
    ));
    let reducible_in_profile: Vec<String> = per_cone
        .iter()
        .filter(|c| !c.profile_points_in_hilbert)
        .map(|c| c.label.clone().unwrap_or_default())
        .collect();
    stages.push(stage(
        "profile_points",
        reducible_in_profile.is_empty(),
        (!reducible_in_profile.is_empty())
            .then(|| format!("non-Hilbert lattice points in the profiles of {}", reducible_in_profile.join(", "))),
    ));
    if per_cone.iter().any(|c| c.subprofile.is_some()) {
        stages.push(stage(
            "subprofile",
            per_cone
                .iter()
                .filter_map(|c| c.subprofile.as_ref())
                .all(|s| s.all_reach && s.incidence_ok),
            None,
        ));
    }
    if let Some(m) = groebner.matches {
        stages.push(stage("groebner", m && groebner.tropical_is_skeleton, None));
    }
    let overall = stages.iter().all(|s| s.ok);
    Ok(VerificationReport {
        family: family.to_string(),
        params,
        equation: eq.to_string(),
        dnp,
        per_cone,
        ev,
        fixture,
        refinement,
        groebner,
        witness,
        stages,
        overall,
    })
}
