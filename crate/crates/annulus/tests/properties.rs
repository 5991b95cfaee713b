use std::collections::HashSet;

use annulus::arquiver::build_gamma_bar_m;
use annulus::correspondence::verify_bijection;
use annulus::geometry::{
    classify, lift, project, sigma_shift, tau, tau_inv, tau_pow, AnnulusArc, ArcClass, Boundary, Config, LiftArc,
    LiftPoint,
};
use annulus::moves::{
    elementary_sources, elementary_step, elementary_targets, evaluate_word, f_down_up_g, is_long_move, Anchor,
    MoveWord, Step, ZeroOrArc,
};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = Config> {
    (1i64..=5, 0i64..=3, 1i64..=2).prop_filter_map("g >= h", |(g, dh, m)| Config::new(g, g - dh, m).ok())
}

fn point() -> impl Strategy<Value = LiftPoint> {
    (any::<bool>(), -30i64..30).prop_map(|(outer, i)| if outer { LiftPoint::outer(i) } else { LiftPoint::inner(i) })
}

fn lift_arc() -> impl Strategy<Value = LiftArc> {
    (point(), point()).prop_filter_map("boundary segment", |(a, b)| lift(a, b).ok())
}

/// Brute-force version of the classification: search a range of lifts for
/// one satisfying the defining inequalities.
fn classify_by_lifts(a: &AnnulusArc, cfg: &Config) -> ArcClass {
    let l = a.canonical();
    let (g, h) = (cfg.g(), cfg.h());
    match (l.start().boundary, l.end().boundary) {
        (Boundary::Outer, Boundary::Outer) => ArcClass::PeripheralOuter,
        (Boundary::Inner, Boundary::Inner) => ArcClass::PeripheralInner,
        (sb, _) => {
            let hit = (-200..200).any(|t| {
                let s = sigma_shift(&l, t, cfg);
                let (x, y) = (s.start().index, s.end().index);
                let d = x + y;
                if sb == Boundary::Outer {
                    (y >= 0 && (-g..=0).contains(&d)) || (x <= 0 && (1..=h).contains(&d))
                } else {
                    (x <= -2 && (-g..=0).contains(&d)) || (y >= 2 && (1..=h).contains(&d))
                }
            });
            match (hit, sb) {
                (false, _) => ArcClass::NotAdmissible,
                (true, Boundary::Outer) => ArcClass::Preprojective,
                (true, Boundary::Inner) => ArcClass::Preinjective,
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_ignores_deck_shifts(cfg in config(), a in lift_arc(), t in -20i64..20) {
        let p = project(&a, &cfg);
        prop_assert_eq!(project(&sigma_shift(&a, t, &cfg), &cfg), p);
        prop_assert_eq!(project(&p.canonical(), &cfg), p);
        prop_assert_eq!(sigma_shift(&sigma_shift(&a, t, &cfg), -t, &cfg), a);
    }

    #[test]
    fn tau_is_invertible(cfg in config(), a in lift_arc()) {
        let p = project(&a, &cfg);
        prop_assert_eq!(tau_inv(&tau(&p, &cfg), &cfg), p);
        prop_assert_eq!(tau(&tau_inv(&p, &cfg), &cfg), p);
    }

    #[test]
    fn closed_form_classification_matches_lift_search(cfg in config(), a in lift_arc()) {
        let p = project(&a, &cfg);
        prop_assert_eq!(classify(&p, &cfg), classify_by_lifts(&p, &cfg));
    }

    #[test]
    fn elementary_moves_commute_with_deck_shifts(cfg in config(), a in lift_arc(), t in -5i64..5) {
        for an in [Anchor::StartFixed, Anchor::EndFixed] {
            let moved = elementary_step(&a, an).map(|b| sigma_shift(&b, t, &cfg));
            prop_assert_eq!(elementary_step(&sigma_shift(&a, t, &cfg), an), moved);
        }
    }

    #[test]
    fn meshes_in_the_cover(cfg in config(), a in lift_arc()) {
        let p = project(&a, &cfg);
        let t = tau(&p, &cfg);
        prop_assume!(classify(&t, &cfg).is_admissible() && classify(&p, &cfg).is_admissible());
        let out: HashSet<AnnulusArc> = elementary_targets(&t, &cfg).into_iter().map(|x| x.1).collect();
        let inc: HashSet<AnnulusArc> = elementary_sources(&p, &cfg).into_iter().map(|x| x.1).collect();
        prop_assert_eq!(out, inc);
    }

    #[test]
    fn down_up_order_does_not_matter(cfg in config(), i in -10i64..10, extra in 0i64..8, mask in any::<u32>()) {
        let g = cfg.g();
        let a = lift(LiftPoint::outer(i), LiftPoint::outer(i + g + 2 + extra)).unwrap();
        let mut downs = g;
        let mut ups = g;
        let mut steps = Vec::new();
        for k in 0..2 * g {
            let pick_down = ups == 0 || (downs > 0 && mask >> (k % 32) & 1 == 1);
            if pick_down { downs -= 1; steps.push(Step::Elementary(Anchor::StartFixed)); }
            else { ups -= 1; steps.push(Step::Elementary(Anchor::EndFixed)); }
        }
        let v = evaluate_word(&MoveWord::new(steps), &a, &cfg).unwrap();
        prop_assert_eq!(v, f_down_up_g(&a, &cfg).unwrap());
        prop_assert_eq!(v, ZeroOrArc::Arc(sigma_shift(&a, -1, &cfg)));
    }

    #[test]
    fn long_moves_reach_every_higher_arc_on_the_anchor(cfg in config(), r in 0i64..6, i in 0i64..5, lvl in 0i64..10) {
        let b = tau_pow(&annulus::geometry::projective_arc(i % (cfg.n() + 1), &cfg).unwrap(), -r, &cfg);
        let x = b.canonical().start();
        let y = b.canonical().end();
        let outer = project(&lift(x, x.offset(lvl + 2)).unwrap(), &cfg);
        let inner = project(&lift(y.offset(-lvl - 2), y).unwrap(), &cfg);
        prop_assert!(is_long_move(&b, &outer, &cfg));
        prop_assert!(is_long_move(&b, &inner, &cfg));
        for k in 1..4 {
            prop_assert!(is_long_move(&b, &project(&lift(x, x.offset(lvl + 2 + k)).unwrap(), &cfg), &cfg));
            prop_assert!(is_long_move(&b, &project(&lift(y.offset(-lvl - 2 - k), y).unwrap(), &cfg), &cfg));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn vertex_map_is_bijective_on_small_configs(g in 1i64..=4, dh in 0i64..=3) {
        prop_assume!(g - dh >= 1);
        let cfg = Config::new(g, g - dh, 1).unwrap();
        let r = verify_bijection(&cfg);
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        prop_assert_eq!(build_gamma_bar_m(&cfg).connected_components(|_| true), 1);
    }
}
