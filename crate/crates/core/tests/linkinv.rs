mod common;

use common::{family_switch, params, pool, t_switch};
use quatknot::field::Field;
use quatknot::linalg::Matrix;
use quatknot::linkinv::*;
use quatknot::switch::Switch;

const BASES: [&str; 3] = ["", "O1+U1+", "O1+O2+U1+U2+"];

fn triple(
    s: &Switch,
    code: &GaussCode,
    conv: CrossingConvention,
) -> (usize, Vec<quatknot::field::Poly>) {
    invariants(&presentation_from_gauss(s, code, conv).unwrap(), 2)
        .unwrap()
        .signature()
}

fn qt_switches() -> Vec<Switch> {
    let f = Field::RationalFunctions;
    vec![
        t_switch(),
        family_switch(&params(f, ["t", "2", "1", "1", "3"])),
        family_switch(&params(f, ["3", "t", "1", "0", "1"])),
    ]
}

#[test]
fn representation_relations_for_the_pool() {
    let words = [
        ("s1 s2 s1", "s2 s1 s2"),
        ("S1 S2 S1", "S2 S1 S2"),
        ("s1 S1", ""),
        ("v1 v1", ""),
        ("v1 v2 v1", "v2 v1 v2"),
        ("s1 v2 v1", "v2 v1 s2"),
        ("v1 s2 v1", "v2 s1 v2"),
    ];
    for (name, s) in pool() {
        for s in [s.clone(), s.interchanged()] {
            let rep = |w: &str| braid_rep(&s, &BraidWord::parse(w, 3).unwrap()).unwrap();
            for (l, r) in words {
                assert_eq!(rep(l), rep(r), "{name}: {l} = {r}");
            }
            assert_eq!(rep("").rows(), 6);
            assert_eq!(rep(""), Matrix::identity(s.field(), 6));
        }
    }
}

#[test]
fn move_variants_keep_the_invariants() {
    let mut switches: Vec<Switch> = pool().into_iter().map(|(_, s)| s).collect();
    switches.extend(qt_switches());
    for s in &switches {
        for base in BASES {
            let base = GaussCode::parse(base).unwrap();
            let want = triple(s, &base, CrossingConvention::default());
            let variants = base.move_variants();
            assert!(variants.len() >= 6);
            for v in variants {
                assert_eq!(
                    triple(s, &v, CrossingConvention::default()),
                    want,
                    "{base} -> {v}"
                );
            }
        }
    }
}

#[test]
fn over_first_convention_breaks_reidemeister_one() {
    let s = t_switch();
    let conv = CrossingConvention::OverFirst;
    let unknot = triple(&s, &GaussCode::unknot(), conv);
    let kink = triple(&s, &GaussCode::parse("O1+U1+").unwrap(), conv);
    assert_ne!(unknot, kink);
}

#[test]
fn under_inputs_convention_disagrees_with_braid_closures() {
    let s = t_switch();
    let w = BraidWord::parse("s1 S2 v1 s2", 3).unwrap();
    let braid = invariants(&presentation_from_braid(&s, &w).unwrap(), 2)
        .unwrap()
        .signature();
    let code = w.closure_gauss().unwrap();
    assert_ne!(triple(&s, &code, CrossingConvention::UnderInputs), braid);
    assert_eq!(triple(&s, &code, CrossingConvention::BraidLeftOver), braid);
}

#[test]
fn braid_closures_match_gauss_codes() {
    let words = [
        ("s1 s1 v1", 2),
        ("S1 S1 v1", 2),
        ("s1 v1 S1 s1 v1", 2),
        ("s1 S2 s1 S2", 3),
        ("s1 S2 v1 s2", 3),
        ("s1 v2 S1 s2", 3),
        ("", 1),
        ("v1", 2),
    ];
    for s in qt_switches() {
        for (w, n) in words {
            let w = BraidWord::parse(w, n).unwrap();
            let braid = invariants(&presentation_from_braid(&s, &w).unwrap(), 2).unwrap();
            let code = w.closure_gauss().unwrap();
            assert_eq!(
                triple(&s, &code, CrossingConvention::default()),
                braid.signature(),
                "{w}"
            );
        }
    }
}

#[test]
fn virtual_trefoil_from_both_descriptions() {
    let s = t_switch();
    let code = GaussCode::parse("O1+O2+U1+U2+").unwrap();
    let word = BraidWord::parse("s1 s1 v1", 2).unwrap();
    let g = invariants(
        &presentation_from_gauss(&s, &code, CrossingConvention::default()).unwrap(),
        2,
    )
    .unwrap();
    let b = invariants(&presentation_from_braid(&s, &word).unwrap(), 2).unwrap();
    assert_eq!(g.signature(), b.signature());
    assert_eq!(
        g.ideal(0).unwrap().to_string(),
        "t^4 + 5t^3 - t^2 - 33t - 36"
    );
}

#[test]
fn codes_round_trip_through_text() {
    for base in BASES {
        for v in GaussCode::parse(base).unwrap().move_variants() {
            assert_eq!(GaussCode::parse(&v.to_string()).unwrap(), v);
        }
    }
}
