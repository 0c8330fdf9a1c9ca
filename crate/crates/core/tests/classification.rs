use std::collections::BTreeSet;

use acm_core::classifier::{classify_all, classify_quartic, cross_check, divisor, known_divisors, Provenance};
use acm_core::picard::DivisorClass;
use acm_core::resolutions::{thm1_case_ii, CurveInvariants};

fn c(a: i64, b: i64) -> DivisorClass {
    DivisorClass::new(a, b)
}

#[test]
fn rigid_sets() {
    let want = [
        ("F1", vec![c(0, 1), c(3, -1)]),
        ("F2", vec![c(0, 1), c(2, -1)]),
        ("F3", vec![c(0, 1), c(2, -1)]),
        ("F4", vec![c(0, 1)]),
        ("F5", vec![c(0, 1), c(1, -1)]),
    ];
    for (label, classes) in want {
        let entries = classify_quartic(divisor(label).unwrap(), 4).unwrap();
        let got: BTreeSet<_> = entries
            .iter()
            .filter(|e| e.provenance == Provenance::Rigid)
            .map(|e| e.class)
            .collect();
        assert_eq!(got, classes.into_iter().collect(), "{label}");
    }
}

#[test]
fn family_closed_forms_and_classes() {
    type Form = fn(i64) -> (i64, i64);
    type Case = (&'static str, usize, Form, &'static [(i64, i64)]);
    let cases: [Case; 7] = [
        ("F4", 0, |k| (4 * k + 1, 2 * k * k + k), &[(0, 1)]),
        ("F4", 1, |k| (4 * k + 3, 2 * k * k + 3 * k + 1), &[(1, -1)]),
        ("F5", 0, |k| (4 * k + 2, 2 * k * k + 2 * k), &[(0, 1), (1, -1)]),
        ("F3", 0, |k| (4 * k, 2 * k * k - 1), &[(1, -1), (-1, 1)]),
        ("F2", 0, |k| (4 * k - 1, 2 * k * k - k - 1), &[(-1, 1)]),
        ("F2", 1, |k| (4 * k + 1, 2 * k * k + k - 1), &[(1, -1)]),
        ("F1", 0, |k| (4 * k - 2, 2 * k * k - 2 * k - 1), &[(-2, 1), (1, -1)]),
    ];
    for (label, p, form, offsets) in cases {
        let div = divisor(label).unwrap();
        let l = div.lattice();
        for k in 3..=10 {
            let t = thm1_case_ii(&div.pairs[p], k, 4).unwrap();
            let (d, g) = form(k);
            assert_eq!(t.invariants().unwrap(), CurveInvariants::new(d, g), "{label} k={k}");
            let want: BTreeSet<_> = offsets.iter().map(|&(a, b)| c(k + a, b)).collect();
            assert_eq!(l.solve_classes(2 * g - 2, d, d), want, "{label} k={k}");
        }
    }
}

#[test]
fn every_entry_cross_checks_at_k_max_ten() {
    for (label, entries) in classify_all(10).unwrap() {
        let l = divisor(&label).unwrap().lattice();
        assert!(!entries.is_empty());
        for e in &entries {
            assert!(cross_check(e, &l), "{label} {}", e.citation);
        }
    }
}

#[test]
fn parallel_and_serial_runs_agree() {
    let par = classify_all(7).unwrap();
    for (div, (label, entries)) in known_divisors().iter().zip(par) {
        assert_eq!(div.label, label);
        assert_eq!(classify_quartic(div, 7).unwrap(), entries);
    }
}

#[test]
fn residual_entries_follow_the_liaison_table() {
    let f4 = classify_quartic(divisor("F4").unwrap(), 3).unwrap();
    let residual: BTreeSet<_> = f4
        .iter()
        .filter(|e| e.provenance == Provenance::Residual)
        .map(|e| (e.class, e.invariants.degree, e.invariants.genus))
        .collect();
    let want: BTreeSet<_> = [
        (c(1, -1), 3, 1),
        (c(2, -1), 7, 6),
        (c(3, -1), 11, 15),
        (c(1, 1), 5, 3),
        (c(2, 1), 9, 10),
    ]
    .into_iter()
    .collect();
    assert_eq!(residual, want);
}

#[test]
fn entries_serialize_with_tags() {
    let e = classify_quartic(divisor("F3").unwrap(), 3).unwrap();
    let json = serde_json::to_value(&e).unwrap();
    let tags: BTreeSet<_> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["provenance"].as_str().unwrap().to_string())
        .collect();
    for t in ["RIGID", "FAMILY_II", "FAMILY_III", "RESIDUAL", "COMPLETE_INTERSECTION"] {
        assert!(tags.contains(t), "{t}");
    }
    let back: Vec<acm_core::classifier::ClassificationEntry> = serde_json::from_value(json).unwrap();
    assert_eq!(back, e);
}
