use proptest::prelude::*;

use acm_core::liaison::{link_is_involution_check, residual_invariants, CiProfile};
use acm_core::pairs::WeakAdmissiblePair;
use acm_core::picard::{DivisorClass, PicardLattice};
use acm_core::resolutions::{thm1_case_ii, thm1_case_iii, CurveInvariants};

prop_compose! {
    fn arb_pair()(t in 2usize..6)
        (a0 in -5i64..5, steps in prop::collection::vec(0i64..3, t - 1),
         gaps in prop::collection::vec(1i64..4, t),
         bumps in prop::collection::vec(0i64..3, t)) -> WeakAdmissiblePair {
        let mut a = vec![a0];
        for s in &steps {
            a.push(a.last().unwrap() + s);
        }
        let mut b: Vec<i64> = a.iter().zip(&gaps).map(|(x, g)| x + g).collect();
        for i in 1..b.len() {
            b[i] = b[i].max(b[i - 1]) + bumps[i] % 2;
        }
        WeakAdmissiblePair::new(a, b).unwrap()
    }
}

fn arb_lattice() -> impl Strategy<Value = PicardLattice> {
    (1i64..4, -8i64..9, -5i64..3).prop_filter_map("hyperbolic even lattice", |(h, hc, c)| {
        PicardLattice::new(2 * h, hc, 2 * c).ok()
    })
}

fn arb_class() -> impl Strategy<Value = DivisorClass> {
    (-30i64..30, -30i64..30).prop_map(|(a, b)| DivisorClass::new(a, b))
}

proptest! {
    #[test]
    fn dual_is_an_involution(p in arb_pair()) {
        prop_assert_eq!(p.dual().dual(), p.normalize());
    }

    #[test]
    fn dual_matrix_is_anti_transpose(p in arb_pair()) {
        prop_assert_eq!(p.dual().degree_matrix(), p.degree_matrix().anti_transpose());
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_matrix(p in arb_pair()) {
        let n = p.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert!(n.is_normalized());
        prop_assert_eq!(n.degree_matrix(), p.degree_matrix());
    }

    #[test]
    fn matrix_trace_and_lemma(p in arb_pair()) {
        let m = p.degree_matrix();
        prop_assert_eq!(m.trace(), p.degree());
        prop_assert!(m.satisfies_lemma());
        prop_assert_eq!(m.realize(), Some(p.normalize()));
    }

    #[test]
    fn tables_balance(p in arb_pair(), k in 0i64..6) {
        let d = p.degree();
        let q = p.shifted(1 - p.a()[0]);
        let t = thm1_case_ii(&q, k, d).unwrap();
        prop_assert_eq!(t.gens().iter().sum::<i64>(), t.syz().iter().sum::<i64>());
        for j0 in 1..=q.len() {
            if let Ok(t) = thm1_case_iii(&q, j0, d) {
                prop_assert_eq!(t.gens().iter().sum::<i64>(), t.syz().iter().sum::<i64>());
            }
        }
    }

    #[test]
    fn lattice_form_is_even_symmetric_bilinear(l in arb_lattice(), x in arb_class(), y in arb_class(), z in arb_class()) {
        prop_assert_eq!(l.square(x) % 2, 0);
        prop_assert_eq!(l.dot(x, y), l.dot(y, x));
        prop_assert_eq!(l.dot(x + y, z), l.dot(x, z) + l.dot(y, z));
    }

    #[test]
    fn solutions_satisfy_their_equations(l in arb_lattice(), s in -6i64..8, lo in -10i64..10, w in 0i64..6) {
        for c in l.solve_classes(s, lo, lo + w) {
            prop_assert_eq!(l.square(c), s);
            prop_assert!(lo <= l.degree(c) && l.degree(c) <= lo + w);
        }
    }

    #[test]
    fn double_link_is_identity(s in 1i64..9, t in 1i64..9, g in -3i64..40, frac in 0.0f64..1.0) {
        let total = s * t;
        prop_assume!(total > 1);
        let d = 1 + ((total - 1) as f64 * frac) as i64;
        prop_assume!(d < total);
        let c = CurveInvariants::new(d, g);
        let ci = CiProfile::new(s, t).unwrap();
        prop_assert!(link_is_involution_check(c, ci));
        let r = residual_invariants(c, ci).unwrap();
        prop_assert_eq!(r.degree + c.degree, total);
    }
}
