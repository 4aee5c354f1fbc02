use crate::{render, Failure, FamilyParams};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use torfan::catalog::{
    self, appendix_fixture, default_grid, embedded_valuations, entries, format_params,
    groebner_expectations, lookup, profile_hyperplanes, subprofile_hyperplanes, Params,
};
use torfan::cones::{hilbert_basis, parse_cone, parse_vector_list, Cone};
use torfan::newton::{dual_fan_of, newton_polyhedron};
use torfan::profile::{contains_point, profile as cone_profile, unit_functional};
use torfan::refine::{hilbert_refinement, refine_fan_from_rays};
use torfan::valuation::{groebner_fan, groebner_meet as meet, groebner_to_fan, jet_equations, tropical_variety};
use torfan::{parse_polynomial, Fan, Vector};

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Input(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

/// Reads a JSON list of triples or the text form "(a,b,c),(d,e,f)".
fn read_vectors(path: &Path) -> Result<Vec<Vector>, Failure> {
    let text = read_file(path)?;
    if let Ok(vs) = serde_json::from_str::<Vec<Vector>>(&text) {
        return Ok(vs);
    }
    Ok(parse_vector_list(text.trim())?)
}

fn to_params(p: &FamilyParams) -> Params {
    [("r", p.r), ("n", p.n), ("k", p.k), ("l", p.l), ("m", p.m)]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name.to_string(), v)))
        .collect()
}

/// The parameter sets to run: the given ones, or the default grid when a
/// parameterized family is called without any.
fn instances(family: &str, p: &FamilyParams) -> Result<Vec<Params>, Failure> {
    let entry = lookup(family)?;
    let given = to_params(p);
    if given.is_empty() && !entry.parameters.is_empty() {
        Ok(default_grid(entry.family)?)
    } else {
        Ok(vec![given])
    }
}

fn hilbert_bases(fan: &Fan) -> Result<Vec<Value>, Failure> {
    let cones = fan.all_cones();
    let bases = cones
        .par_iter()
        .map(hilbert_basis)
        .collect::<torfan::Result<Vec<_>>>()?;
    Ok(bases
        .into_iter()
        .zip(&fan.cones)
        .map(|(h, fc)| json!({"label": fc.label, "generators": h.cone.generators(), "hilbert_basis": h.elements}))
        .collect())
}

pub fn dnp(poly: &str, fan_only: bool, out: Option<&Path>) -> Result<(), Failure> {
    let p = parse_polynomial(poly)?;
    let np = newton_polyhedron(&p);
    let fan = dual_fan_of(&np);
    if fan_only {
        return emit(&fan, out);
    }
    let bases = hilbert_bases(&fan)?;
    emit(
        &json!({
            "polynomial": p.to_string(),
            "vertices": np.vertices,
            "fan": fan,
            "cones": bases,
        }),
        out,
    )
}

pub fn hilbert(cone: &str, out: Option<&Path>) -> Result<(), Failure> {
    let c = parse_cone(cone)?;
    let h = hilbert_basis(&c)?;
    emit(&h.elements, out)
}

pub fn resolve(poly: &str, rays: Option<&Path>, out: Option<&Path>) -> Result<(), Failure> {
    let p = parse_polynomial(poly)?;
    let fan = dual_fan_of(&newton_polyhedron(&p));
    let report = match rays {
        Some(path) => refine_fan_from_rays(&fan, &read_vectors(path)?)?,
        None => hilbert_refinement(&fan)?,
    };
    let ok = report.ok();
    let mut value = serde_json::to_value(&report).map_err(|e| Failure::Input(e.to_string()))?;
    value["regular"] = json!(report.is_regular());
    value["ok"] = json!(ok);
    emit(&value, out)?;
    if ok {
        Ok(())
    } else {
        eprintln!("refinement is not a regular embedded resolution (max det {})", report.max_det());
        Err(Failure::Verification)
    }
}

fn profile_entry(c: &Cone, label: Option<&String>, vectors: &[Vector]) -> Value {
    let prof = cone_profile(c);
    let membership: Vec<Value> = vectors
        .iter()
        .filter(|v| c.contains(**v))
        .map(|v| json!({"vector": v, "inside": contains_point(&prof, *v)}))
        .collect();
    let mut value = json!({
        "cone": c.generators(),
        "kind": prof.kind,
        "bounding": prof.bounding,
        "hull_facets": prof.hull_facets(),
    });
    if let Some(label) = label {
        value["label"] = json!(label);
    }
    if c.is_simplicial() {
        value["l"] = json!(unit_functional(c));
    }
    if !vectors.is_empty() {
        value["vectors"] = json!(membership);
    }
    value
}

pub fn profile(input: &str, vectors: Option<&Path>, out: Option<&Path>) -> Result<(), Failure> {
    let vectors = match vectors {
        Some(path) => read_vectors(path)?,
        None => Vec::new(),
    };
    if input.trim_start().starts_with('<') {
        let c = parse_cone(input)?;
        return emit(&profile_entry(&c, None, &vectors), out);
    }
    let p = parse_polynomial(input)?;
    let fan = dual_fan_of(&newton_polyhedron(&p));
    let cones: Vec<Value> = fan
        .all_cones()
        .iter()
        .zip(&fan.cones)
        .map(|(c, fc)| profile_entry(c, fc.label.as_ref(), &vectors))
        .collect();
    emit(&cones, out)
}

pub fn groebner(poly: &str, tropical: bool, out: Option<&Path>) -> Result<(), Failure> {
    let p = parse_polynomial(poly)?;
    let fan = if tropical {
        tropical_variety(&p)?
    } else {
        groebner_to_fan(groebner_fan(&p))
    };
    emit(&fan, out)
}

pub fn jets(poly: &str, order: usize, out: Option<&Path>) -> Result<(), Failure> {
    let p = parse_polynomial(poly)?;
    emit(&jet_equations(&p, order), out)
}

pub fn catalog_list(out: Option<&Path>) -> Result<(), Failure> {
    emit(&entries(), out)
}

fn per_cone<T: Serialize>(f: impl Fn(usize) -> torfan::Result<T>) -> Option<Value> {
    let found: Vec<Value> = (1..=3)
        .filter_map(|i| f(i).ok().map(|v| json!({"cone": format!("sigma{i}"), "hyperplanes": v})))
        .collect();
    (!found.is_empty()).then(|| json!(found))
}

pub fn catalog_show(family: &str, p: &FamilyParams, out: Option<&Path>) -> Result<(), Failure> {
    let entry = lookup(family)?;
    let given = to_params(p);
    let mut value = json!({"entry": entry});
    if given.is_empty() && !entry.parameters.is_empty() {
        let grid: Vec<String> = default_grid(entry.family)?.iter().map(format_params).collect();
        value["default_grid"] = json!(grid);
        return emit(&value, out);
    }
    let f = entry.family;
    value["params"] = json!(catalog::validate_params(f, &given)?);
    value["equation"] = json!(catalog::equation(f, &given)?.to_string());
    if let Some(names) = catalog::cone_names(f, &given)? {
        let names: Vec<Value> = names.iter().map(|(n, v)| json!({"name": n, "vertex": v})).collect();
        value["cones"] = json!(names);
    }
    if let Ok(ev) = embedded_valuations(f, &given) {
        value["embedded_valuations"] = json!(ev);
    }
    if let Some(h) = per_cone(|i| profile_hyperplanes(f, &given, i)) {
        value["profile_hyperplanes"] = h;
    }
    if let Some(h) = per_cone(|i| subprofile_hyperplanes(f, &given, i)) {
        value["subprofile_hyperplanes"] = h;
    }
    if let Ok(g) = groebner_expectations(f, &given) {
        value["groebner"] = json!(g);
    }
    if let Ok(fx) = appendix_fixture(f, &given) {
        value["fixture"] = json!(fx);
    }
    emit(&value, out)
}

pub fn verify(family: &str, p: &FamilyParams, out: Option<&Path>) -> Result<(), Failure> {
    let runs = instances(family, p)?;
    let reports = runs
        .iter()
        .map(|params| catalog::verify(family, params))
        .collect::<torfan::Result<Vec<_>>>()?;
    let all_ok = reports.iter().all(|r| r.overall);
    if reports.len() == 1 {
        emit(&reports[0], out)?;
    } else {
        emit(&reports, out)?;
    }
    for r in reports.iter().filter(|r| !r.overall) {
        let failed: Vec<&str> = r.stages.iter().filter(|s| !s.ok).map(|s| s.name).collect();
        let witness = r
            .witness
            .map(|w| format!(", witness ({},{},{})", w[0], w[1], w[2]))
            .unwrap_or_default();
        let at = if r.params.is_empty() {
            String::new()
        } else {
            format!(" {}", format_params(&r.params))
        };
        eprintln!("verification failed for {}{at}: {}{witness}", r.family, failed.join(", "));
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

pub fn groebner_meet(family: &str, p: &FamilyParams, out: Option<&Path>) -> Result<(), Failure> {
    let runs = instances(family, p)?;
    let mut results = Vec::new();
    for params in &runs {
        let eq = catalog::equation(family, params)?;
        let (source, vectors) = match embedded_valuations(family, params) {
            Ok(ev) => ("embedded_valuations", ev),
            Err(_) => {
                let fan = dual_fan_of(&newton_polyhedron(&eq));
                let mut union = BTreeSet::new();
                for c in fan.all_cones() {
                    union.extend(hilbert_basis(&c)?.elements);
                }
                ("hilbert_bases", union.into_iter().collect())
            }
        };
        results.push(json!({
            "family": lookup(family)?.family,
            "params": params,
            "equation": eq.to_string(),
            "source": source,
            "entries": meet(&eq, &vectors),
        }));
    }
    if results.len() == 1 {
        emit(&results[0], out)
    } else {
        emit(&results, out)
    }
}

pub fn render(fan: &Path, svg: &Path) -> Result<(), Failure> {
    let fan = Fan::from_json(&read_file(fan)?)?;
    let text = render::svg(&fan).map_err(Failure::Input)?;
    std::fs::write(svg, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", svg.display())))
}
