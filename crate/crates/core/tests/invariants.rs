use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;
use torfan::cones::{find_decomposition, hilbert_basis_with, parse_cone};
use torfan::lattice::det3;
use torfan::newton::label_vertex;
use torfan::profile::{contains_point, profile};
use torfan::refine::regular_refinement;
use torfan::valuation::{initial_form, jet_equations, monomial_arc, w_order};
use torfan::{dual_newton_fan, hilbert_basis, parse_polynomial, Cone, Fan, Polynomial, Vector};

fn simplicial_cone() -> impl Strategy<Value = Cone> {
    proptest::array::uniform3(proptest::array::uniform3(0i64..=5))
        .prop_filter("full rank", |g| det3(g[0], g[1], g[2]) != 0)
        .prop_map(|g| Cone::new(&g).unwrap())
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::array::uniform3(0u32..=5), -3i64..=3), 2..6)
        .prop_map(Polynomial::from_terms)
        .prop_filter("at least two terms", |p| p.len() >= 2)
}

fn weight() -> impl Strategy<Value = Vector> {
    proptest::array::uniform3(0i64..=4).prop_filter("nonzero", |w| *w != [0, 0, 0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_elements_are_irreducible_and_include_rays(c in simplicial_cone()) {
        let h = hilbert_basis(&c).unwrap();
        for g in c.generators() {
            prop_assert!(h.contains(*g));
        }
        for v in &h.elements {
            prop_assert!(c.contains(*v));
            prop_assert!(find_decomposition(&c, *v).is_none());
        }
    }

    #[test]
    fn hilbert_basis_ignores_triangulation_choice(c in simplicial_cone()) {
        prop_assert_eq!(hilbert_basis_with(&c, false).unwrap(), hilbert_basis_with(&c, true).unwrap());
    }

    #[test]
    fn regular_refinement_is_unimodular_cover(c in simplicial_cone()) {
        let r = regular_refinement(&c).unwrap();
        prop_assert!(r.is_regular());
        prop_assert!(r.covering_ok && r.face_fitting_ok);
        for fc in &r.result.cones {
            let v: Vec<Vector> = fc.rays.iter().map(|&k| r.result.rays[k]).collect();
            prop_assert_eq!(det3(v[0], v[1], v[2]).abs(), 1);
        }
    }

    #[test]
    fn generators_lie_in_their_profile(c in simplicial_cone()) {
        let p = profile(&c);
        for g in c.generators() {
            prop_assert!(contains_point(&p, *g));
        }
        let sum = c.generators().iter().fold([0i64; 3], |a, g| [a[0] + g[0], a[1] + g[1], a[2] + g[2]]);
        prop_assert!(!contains_point(&p, sum));
    }

    #[test]
    fn polynomial_display_round_trips(p in polynomial()) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn dual_cone_of_a_weight_selects_the_initial_vertex(p in polynomial(), w in weight()) {
        let fan = dual_newton_fan(&p);
        let form = initial_form(&p, w).unwrap();
        let support: Vec<Vector> = form.support_vectors();
        let mut found = false;
        for (i, fc) in fan.cones.iter().enumerate() {
            if fan.cone(i).contains(w) {
                let v = label_vertex(fc.label.as_deref().unwrap()).unwrap();
                prop_assert!(support.contains(&v));
                found = true;
            }
        }
        prop_assert!(found);
    }

    #[test]
    fn fan_json_round_trips(p in polynomial()) {
        let fan = dual_newton_fan(&p);
        prop_assert_eq!(Fan::from_json(&fan.to_json()).unwrap(), fan);
    }

    #[test]
    fn monomial_arcs_sample_the_weighted_pieces(p in polynomial(), w in weight(), m in 0usize..=4) {
        let system = jet_equations(&p, m);
        let values = system.evaluate(&monomial_arc(w, m));
        let mut by_weight: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in p.terms() {
            let d = (0..3).map(|i| w[i] * i64::from(e[i])).sum::<i64>();
            *by_weight.entry(d).or_default() += c;
        }
        for (i, value) in values.iter().enumerate() {
            let expected = by_weight.get(&(i as i64)).cloned().unwrap_or_default();
            prop_assert_eq!(value, &expected);
        }
        let o = w_order(&p, w).unwrap();
        if (o as usize) <= m {
            let leading: BigInt = initial_form(&p, w).unwrap().terms().values().sum();
            prop_assert_eq!(&values[o as usize], &leading);
        }
    }
}

#[test]
fn example_cone_parses() {
    let c = parse_cone("<(0,1,0),(0,0,1),(6,8,9)>").unwrap();
    assert_eq!(hilbert_basis(&c).unwrap().elements.len(), 6);
}
