//! Fans of cones in the octant, with a shared ray table and JSON form.

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{cross, primitive, Vector};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanCone {
    /// Indices into the fan's ray table, ascending.
    pub rays: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_form: Option<String>,
}

/// A finite collection of cones sharing a lexicographically ordered ray table.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Fan {
    pub rays: Vec<Vector>,
    pub cones: Vec<FanCone>,
}

impl Fan {
    /// Builds a fan from cones given by their generators.
    pub fn from_cones<I>(cones: I) -> Fan
    where
        I: IntoIterator<Item = (Cone, Option<String>)>,
    {
        Self::from_labelled(cones.into_iter().map(|(c, l)| (c, l, None)))
    }

    pub fn from_labelled<I>(cones: I) -> Fan
    where
        I: IntoIterator<Item = (Cone, Option<String>, Option<String>)>,
    {
        let cones: Vec<_> = cones.into_iter().collect();
        let rays: BTreeSet<Vector> = cones
            .iter()
            .flat_map(|(c, _, _)| c.generators().iter().copied())
            .collect();
        let rays: Vec<Vector> = rays.into_iter().collect();
        let index: BTreeMap<Vector, usize> = rays.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let cones = cones
            .into_iter()
            .map(|(c, label, initial_form)| {
                let mut idx: Vec<usize> = c.generators().iter().map(|g| index[g]).collect();
                idx.sort();
                FanCone {
                    rays: idx,
                    label,
                    initial_form,
                }
            })
            .collect();
        Fan { rays, cones }
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cone_rays(&self, i: usize) -> Vec<Vector> {
        self.cones[i].rays.iter().map(|&k| self.rays[k]).collect()
    }

    pub fn cone(&self, i: usize) -> Cone {
        Cone::new(&self.cone_rays(i)).expect("fan cones are pointed")
    }

    pub fn all_cones(&self) -> Vec<Cone> {
        (0..self.cones.len()).map(|i| self.cone(i)).collect()
    }

    /// Two-dimensional faces shared by at least two full-dimensional cones,
    /// each as a sorted pair of rays.
    pub fn walls(&self) -> BTreeSet<Vec<Vector>> {
        let mut count: BTreeMap<Vec<Vector>, usize> = BTreeMap::new();
        for c in self.all_cones().iter().filter(|c| c.dim() == 3) {
            for f in c.faces() {
                if f.len() == 2 {
                    *count.entry(f).or_default() += 1;
                }
            }
        }
        count.into_iter().filter(|(_, n)| *n >= 2).map(|(f, _)| f).collect()
    }

    /// Validates ray indices and pointedness; used after deserialization.
    pub fn validate(&self) -> Result<()> {
        if self.rays.iter().tuple_windows().any(|(a, b)| a >= b) {
            return Err(Error::Malformed("rays must be strictly lexicographically ordered".into()));
        }
        for c in &self.cones {
            if c.rays.iter().any(|&k| k >= self.rays.len()) {
                return Err(Error::Malformed("cone refers to a missing ray".into()));
            }
            Cone::new(&c.rays.iter().map(|&k| self.rays[k]).collect::<Vec<_>>())?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fan serializes")
    }

    pub fn from_json(text: &str) -> Result<Fan> {
        let fan: Fan = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        fan.validate()?;
        Ok(fan)
    }
}

/// The intersection of two full-dimensional cones, as a cone.
pub fn intersection(a: &Cone, b: &Cone) -> Cone {
    let normals: Vec<Vector> = a.facets().iter().chain(b.facets()).copied().collect();
    let mut candidates: BTreeSet<Vector> = BTreeSet::new();
    for (n1, n2) in normals.iter().tuple_combinations() {
        if let Ok(d) = primitive(cross(*n1, *n2)) {
            for v in [d, crate::lattice::neg(d)] {
                if a.contains(v) && b.contains(v) {
                    candidates.insert(v);
                }
            }
        }
    }
    for g in a.generators().iter().chain(b.generators()) {
        if a.contains(*g) && b.contains(*g) {
            candidates.insert(*g);
        }
    }
    let vs: Vec<Vector> = candidates.into_iter().collect();
    Cone::new(&vs).expect("intersection of pointed cones is pointed")
}

/// Whether two full-dimensional cones meet in a common face of each.
pub fn meet_in_common_face(a: &Cone, b: &Cone) -> bool {
    let i = intersection(a, b);
    let gens = i.generators().to_vec();
    if gens.is_empty() {
        return true;
    }
    let is_face = |c: &Cone| c.faces().contains(&gens);
    is_face(a) && is_face(b)
}

/// Pairwise face-fitting of a collection of full-dimensional cones.
pub fn face_fitting(cones: &[Cone]) -> bool {
    cones
        .iter()
        .tuple_combinations()
        .all(|(a, b)| meet_in_common_face(a, b))
}
