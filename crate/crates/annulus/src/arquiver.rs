//! The truncated translation quiver of admissible arcs, with and without
//! long moves.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::geometry::{
    classify, injective_arc, lift, norm_mod, preinjective_coords, preprojective_coords, project, projective_arc, tau,
    tau_pow, AnnulusArc, ArcClass, Config, LiftPoint,
};
use crate::moves::{elementary_sources, elementary_targets, long_move_anchor, Anchor, MoveKind};
use crate::quiver::{ArrowKind, Component, Quiver};
use crate::report::{CheckResult, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveLabel {
    pub kind: MoveKind,
    pub anchor: Anchor,
}

impl fmt::Display for MoveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            MoveKind::Elementary => "elementary",
            MoveKind::Long => "long",
        };
        let a = match self.anchor {
            Anchor::StartFixed => "start",
            Anchor::EndFixed => "end",
        };
        write!(f, "{k}/{a}")
    }
}

pub type ArcQuiver = Quiver<AnnulusArc, MoveLabel>;

/// Outer tube arc at level `r` in column `s`.
pub fn outer_tube_arc(r: i64, s: i64, cfg: &Config) -> AnnulusArc {
    let a = (s - r).rem_euclid(cfg.g());
    project(&lift(LiftPoint::outer(a), LiftPoint::outer(a + r + 2)).expect("peripheral"), cfg)
}

/// Inner tube arc at level `r` in column `s`.
pub fn inner_tube_arc(r: i64, s: i64, cfg: &Config) -> AnnulusArc {
    let u = (s - 2).rem_euclid(cfg.h());
    project(&lift(LiftPoint::inner(u), LiftPoint::inner(u + r + 2)).expect("peripheral"), cfg)
}

/// Component of `a` inside the truncation, or `None` if `a` is not a vertex.
pub fn truncated_component(a: &AnnulusArc, cfg: &Config) -> Option<Component> {
    let l = a.canonical();
    match classify(a, cfg) {
        ArcClass::Preprojective => {
            let (r, _) = preprojective_coords(a, cfg)?;
            (r <= cfg.ghm()).then_some(Component::Preprojective)
        }
        ArcClass::Preinjective => {
            let (r, _) = preinjective_coords(a, cfg)?;
            (r <= cfg.ghm()).then_some(Component::Preinjective)
        }
        ArcClass::PeripheralOuter => {
            let r = l.level()?;
            let s = norm_mod(l.end().index - 2, cfg.g());
            (r <= cfg.g() * cfg.big_n() + s).then_some(Component::TubeOuter)
        }
        ArcClass::PeripheralInner => {
            let r = l.level()?;
            let s = norm_mod(l.end().index, cfg.h());
            (r <= cfg.h() * cfg.big_n() + s).then_some(Component::TubeInner)
        }
        ArcClass::NotAdmissible => None,
    }
}

/// Vertices in deterministic order: component, then orbit or column, then level.
pub fn truncated_vertices(cfg: &Config) -> Vec<(AnnulusArc, Component)> {
    let mut out = Vec::new();
    for i in 0..=cfg.n() {
        let b = projective_arc(i, cfg).expect("in range");
        for r in 0..=cfg.ghm() {
            out.push((tau_pow(&b, -r, cfg), Component::Preprojective));
        }
    }
    for i in 0..=cfg.n() {
        let c = injective_arc(i, cfg).expect("in range");
        for r in 0..=cfg.ghm() {
            out.push((tau_pow(&c, r, cfg), Component::Preinjective));
        }
    }
    for s in 1..=cfg.g() {
        for r in 0.. {
            let a = outer_tube_arc(r, s, cfg);
            if truncated_component(&a, cfg).is_none() {
                break;
            }
            out.push((a, Component::TubeOuter));
        }
    }
    for s in 1..=cfg.h() {
        for r in 0.. {
            let a = inner_tube_arc(r, s, cfg);
            if truncated_component(&a, cfg).is_none() {
                break;
            }
            out.push((a, Component::TubeInner));
        }
    }
    out
}

/// The four truncated components with elementary arrows and τ, no long moves.
pub fn build_components(cfg: &Config) -> ArcQuiver {
    let mut q = ArcQuiver::new();
    for (a, c) in truncated_vertices(cfg) {
        q.add_vertex(a, c);
    }
    for v in 0..q.vertex_count() {
        let a = *q.vertex(v);
        for (anchor, t) in elementary_targets(&a, cfg) {
            if let Some(w) = q.id(&t) {
                if q.component(w) == q.component(v) {
                    q.add_arrow(v, w, ArrowKind::Elementary, MoveLabel { kind: MoveKind::Elementary, anchor });
                }
            }
        }
        if let Some(w) = q.id(&tau(&a, cfg)) {
            if q.component(w) == q.component(v) {
                q.set_tau(v, w);
            }
        }
    }
    q
}

/// [`build_components`] plus every long move between vertices.
pub fn build_gamma_bar_m(cfg: &Config) -> ArcQuiver {
    let mut q = build_components(cfg);
    let pairs = [
        (Component::Preprojective, Component::TubeOuter),
        (Component::Preprojective, Component::TubeInner),
        (Component::TubeOuter, Component::Preinjective),
        (Component::TubeInner, Component::Preinjective),
    ];
    let n = q.vertex_count();
    for u in 0..n {
        for v in 0..n {
            if !pairs.contains(&(q.component(u), q.component(v))) {
                continue;
            }
            if let Some(anchor) = long_move_anchor(q.vertex(u), q.vertex(v), cfg) {
                q.add_arrow(u, v, ArrowKind::Long, MoveLabel { kind: MoveKind::Long, anchor });
            }
        }
    }
    q
}

/// Arcs carrying their own elementary-move geometry, so meshes can be
/// checked against the ambient infinite quiver.
pub trait MeshGeometry: Clone + Eq + Hash {
    fn geometric_successors(&self, cfg: &Config) -> Vec<Self>;
    fn geometric_predecessors(&self, cfg: &Config) -> Vec<Self>;
    fn is_mouth(&self) -> bool;
}

impl MeshGeometry for AnnulusArc {
    fn geometric_successors(&self, cfg: &Config) -> Vec<Self> {
        elementary_targets(self, cfg).into_iter().map(|x| x.1).collect()
    }

    fn geometric_predecessors(&self, cfg: &Config) -> Vec<Self> {
        elementary_sources(self, cfg).into_iter().map(|x| x.1).collect()
    }

    fn is_mouth(&self) -> bool {
        self.canonical().level() == Some(0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshStats {
    pub checked: usize,
    pub skipped: usize,
    pub three_vertex: usize,
    pub four_vertex: usize,
}

/// Compares elementary predecessors of `v` with elementary successors of `τv`
/// wherever the whole geometric mesh lies in the vertex set.
pub fn mesh_check<V: MeshGeometry + fmt::Display, L>(q: &Quiver<V, L>, cfg: &Config) -> (Report, MeshStats) {
    let mut stats = MeshStats::default();
    let mut violation = None;
    let mut bad_shape = None;
    for (v, w) in q.tau_pairs() {
        let geo_mid: HashSet<V> = q.vertex(v).geometric_predecessors(cfg).into_iter().collect();
        let geo_mid2: HashSet<V> = q.vertex(w).geometric_successors(cfg).into_iter().collect();
        if geo_mid.iter().chain(geo_mid2.iter()).any(|x| !q.contains(x)) {
            stats.skipped += 1;
            continue;
        }
        stats.checked += 1;
        let pred: HashSet<usize> = q.predecessors(v, ArrowKind::Elementary).into_iter().collect();
        let succ: HashSet<usize> = q.successors(w, ArrowKind::Elementary).into_iter().collect();
        if pred != succ && violation.is_none() {
            violation = Some(format!("mesh at {} / tau {}", q.vertex(v), q.vertex(w)));
        }
        match pred.len() {
            1 => {
                stats.three_vertex += 1;
                if !(q.vertex(v).is_mouth() && q.vertex(w).is_mouth()) && bad_shape.is_none() {
                    bad_shape = Some(format!("three-vertex mesh away from a mouth at {}", q.vertex(v)));
                }
            }
            2 => {
                stats.four_vertex += 1;
                if q.vertex(v).is_mouth() && bad_shape.is_none() {
                    bad_shape = Some(format!("four-vertex mesh at mouth vertex {}", q.vertex(v)));
                }
            }
            k => {
                if bad_shape.is_none() {
                    bad_shape = Some(format!("mesh with {} middle vertices at {}", k, q.vertex(v)));
                }
            }
        }
    }
    let mut tau_hit = HashSet::new();
    let tau_dup =
        q.tau_pairs().find(|&(_, w)| !tau_hit.insert(w)).map(|(v, _)| format!("tau not injective at {}", q.vertex(v)));
    let mut r = Report::new();
    r.push(CheckResult::from_witness(
        "mesh-interior",
        format!("{} meshes checked, {} at the truncation boundary", stats.checked, stats.skipped),
        violation,
    ));
    r.push(CheckResult::from_witness(
        "mesh-shape",
        format!("{} three-vertex (tube mouths), {} four-vertex", stats.three_vertex, stats.four_vertex),
        bad_shape,
    ));
    r.push(CheckResult::from_witness("tau-injective", "", tau_dup));
    (r, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::parse_arc;

    fn counts(q: &ArcQuiver) -> [usize; 4] {
        [
            q.count_component(Component::Preprojective),
            q.count_component(Component::Preinjective),
            q.count_component(Component::TubeOuter),
            q.count_component(Component::TubeInner),
        ]
    }

    #[test]
    fn component_sizes_321() {
        let c = Config::new(3, 2, 1).unwrap();
        let q = build_components(&c);
        assert_eq!(counts(&q), [35, 35, 99, 45]);
        assert_eq!(q.vertex_count(), 214);
        assert_eq!(q.connected_components(|a| a.kind == ArrowKind::Elementary), 4);
    }

    #[test]
    fn component_sizes_211() {
        let c = Config::new(2, 1, 1).unwrap();
        assert_eq!(counts(&build_components(&c)), [9, 9, 29, 8]);
    }

    #[test]
    fn gamma_bar_is_connected_without_p_to_i() {
        let c = Config::new(2, 1, 1).unwrap();
        let q = build_gamma_bar_m(&c);
        assert_eq!(q.connected_components(|_| true), 1);
        assert!(q.arrows().iter().all(|a| {
            !(q.component(a.src) == Component::Preprojective && q.component(a.dst) == Component::Preinjective)
        }));
    }

    #[test]
    fn long_arrows_from_last_slice_fill_corays() {
        let c = Config::new(3, 2, 1).unwrap();
        let q = build_gamma_bar_m(&c);
        let u = q.id(&tau_pow(&projective_arc(0, &c).unwrap(), -c.ghm(), &c)).unwrap();
        let x = q.vertex(u).canonical().start();
        let coray = q
            .vertices()
            .iter()
            .filter(|a| classify(a, &c) == ArcClass::PeripheralOuter && q.contains(a))
            .filter(|a| a.canonical().start().residue(&c) == x.residue(&c))
            .count();
        let long_tg = q.out_arrows(u).filter(|a| q.component(a.dst) == Component::TubeOuter).count();
        assert_eq!(long_tg, coray);
    }

    #[test]
    fn tube_column_membership_is_contiguous() {
        let c = Config::new(3, 2, 1).unwrap();
        for s in 1..=c.g() {
            let top = c.g() * c.big_n() + s;
            assert!(truncated_component(&outer_tube_arc(top, s, &c), &c).is_some());
            assert!(truncated_component(&outer_tube_arc(top + 1, s, &c), &c).is_none());
        }
        assert_eq!(outer_tube_arc(33, 3, &c), parse_arc("[0o,35o]", &c).unwrap());
    }

    #[test]
    fn meshes_of_small_config() {
        let c = Config::new(2, 1, 1).unwrap();
        let (r, stats) = mesh_check(&build_components(&c), &c);
        assert!(r.passed(), "{r:?}");
        assert_eq!(stats.three_vertex, 3);
        assert!(stats.skipped > 0);
    }
}
