//! Independent enumerations whose results are frozen as expected values.

use std::collections::HashSet;

use annulus::arquiver::build_components;
use annulus::brustle::{build_qm_prime, connecting_labels};
use annulus::geometry::{injective_arc, lift, project, projective_arc, tau_pow, AnnulusArc, Config, LiftPoint};
use annulus::quiver::{ArrowKind, Component};

/// Distinct arcs on the first `ghm + 1` τ-orbit steps of the projective and
/// injective arcs.
fn orbit_counts(cfg: &Config) -> (usize, usize) {
    let mut p = HashSet::new();
    let mut i = HashSet::new();
    for k in 0..=cfg.n() {
        for r in 0..=cfg.ghm() {
            p.insert(tau_pow(&projective_arc(k, cfg).unwrap(), -r, cfg));
            i.insert(tau_pow(&injective_arc(k, cfg).unwrap(), r, cfg));
        }
    }
    (p.len(), i.len())
}

/// Canonical peripheral arcs below the column heights, by direct search.
fn tube_counts(cfg: &Config) -> (usize, usize) {
    let big_n = 2 * cfg.m() * (cfg.g() + cfg.h());
    let norm = |x: i64, p: i64| if x.rem_euclid(p) == 0 { p } else { x.rem_euclid(p) };
    let mut outer: HashSet<AnnulusArc> = HashSet::new();
    let mut inner: HashSet<AnnulusArc> = HashSet::new();
    for a in 0..cfg.g() {
        for b in a + 2..a + 2 + cfg.g() * big_n + cfg.g() + 1 {
            if b - a - 2 <= cfg.g() * big_n + norm(b - 2, cfg.g()) {
                outer.insert(project(&lift(LiftPoint::outer(a), LiftPoint::outer(b)).unwrap(), cfg));
            }
        }
    }
    for u in 0..cfg.h() {
        for v in u + 2..u + 2 + cfg.h() * big_n + cfg.h() + 1 {
            if v - u - 2 <= cfg.h() * big_n + norm(v, cfg.h()) {
                inner.insert(project(&lift(LiftPoint::inner(u), LiftPoint::inner(v)).unwrap(), cfg));
            }
        }
    }
    (outer.len(), inner.len())
}

fn cfg(g: i64, h: i64, m: i64) -> Config {
    Config::new(g, h, m).unwrap()
}

#[test]
fn frozen_component_sizes() {
    let expected = [
        ((2, 1, 1), [9, 9, 29, 8]),
        ((3, 2, 1), [35, 35, 99, 45]),
        ((3, 2, 2), [65, 65, 189, 85]),
        ((4, 3, 1), [91, 91, 238, 135]),
        ((5, 1, 1), [36, 36, 320, 14]),
    ];
    for ((g, h, m), sizes) in expected {
        let c = cfg(g, h, m);
        let (p, i) = orbit_counts(&c);
        let (tg, th) = tube_counts(&c);
        assert_eq!([p, i, tg, th], sizes, "oracle for {c:?}");
        let q = build_components(&c);
        let built = [
            q.count_component(Component::Preprojective),
            q.count_component(Component::Preinjective),
            q.count_component(Component::TubeOuter),
            q.count_component(Component::TubeInner),
        ];
        assert_eq!(built, sizes, "construction for {c:?}");
    }
}

#[test]
fn frozen_totals() {
    assert_eq!(build_components(&cfg(3, 2, 1)).vertex_count(), 214);
    assert_eq!(build_components(&cfg(2, 1, 1)).vertex_count(), 55);
    assert_eq!(build_qm_prime(&cfg(3, 2, 1)).vertex_count(), 214);
}

#[test]
fn connecting_arrow_count() {
    for (g, h, m) in [(2, 1, 1), (3, 2, 1), (5, 1, 1)] {
        let c = cfg(g, h, m);
        let xs: HashSet<i64> = (0..=g).collect();
        let ys: HashSet<i64> = std::iter::once(0).chain(g..g + h).collect();
        let expected = 2 * xs.len() + 2 * ys.len();
        assert_eq!(connecting_labels(&c).len(), expected);
        assert_eq!(build_qm_prime(&c).count_arrows(ArrowKind::Connecting), expected);
    }
    assert_eq!(connecting_labels(&cfg(3, 2, 1)).len(), 14);
}
