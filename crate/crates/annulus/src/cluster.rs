//! Unoriented arcs and the stable translation quiver with the extra η-slice.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arquiver::{build_gamma_bar_m, mesh_check, ArcQuiver, MeshGeometry, MoveLabel};
use crate::geometry::{
    classify, injective_arc, projective_arc, reverse_orientation, tau, tau_pow, AnnulusArc, ArcClass, Boundary, Config,
};
use crate::moves::{elementary_sources, elementary_targets, MoveKind};
use crate::quiver::{ArrowKind, Component, Quiver};
use crate::report::{CheckResult, Report};

/// An arc with its orientation forgotten. Bridging arcs are stored running
/// from ∂ to ∂'.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnorientedArc {
    arc: AnnulusArc,
}

impl UnorientedArc {
    pub fn representative(&self) -> AnnulusArc {
        self.arc
    }
}

impl fmt::Display for UnorientedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.arc.canonical();
        write!(f, "{{{},{}}}", l.start(), l.end())
    }
}

pub fn unorient(a: &AnnulusArc, cfg: &Config) -> UnorientedArc {
    let arc = if a.is_bridging() && a.canonical().start().boundary == Boundary::Inner {
        reverse_orientation(a, cfg).expect("bridging")
    } else {
        *a
    };
    UnorientedArc { arc }
}

pub fn tau_unoriented(a: &UnorientedArc, cfg: &Config) -> UnorientedArc {
    unorient(&tau(&a.arc, cfg), cfg)
}

pub fn tau_inv_unoriented(a: &UnorientedArc, cfg: &Config) -> UnorientedArc {
    unorient(&tau_pow(&a.arc, -1, cfg), cfg)
}

/// `η_i = τ(β_i)`, unoriented; also equal to `τ^{-1}(γ_i)`.
pub fn eta_arcs(cfg: &Config) -> Vec<UnorientedArc> {
    (0..=cfg.n())
        .map(|i| {
            let b = unorient(&projective_arc(i, cfg).expect("in range"), cfg);
            let c = unorient(&injective_arc(i, cfg).expect("in range"), cfg);
            let eta = tau_unoriented(&b, cfg);
            assert_eq!(eta, tau_inv_unoriented(&c, cfg), "η_{i} is not τ^-1 of γ_{i}");
            eta
        })
        .collect()
}

/// Elementary moves on unoriented arcs; on bridging arcs both orientations
/// give the same targets.
pub fn unoriented_targets(a: &UnorientedArc, cfg: &Config) -> Vec<(MoveLabel, UnorientedArc)> {
    elementary_targets(&a.arc, cfg)
        .into_iter()
        .map(|(anchor, t)| (MoveLabel { kind: MoveKind::Elementary, anchor }, unorient(&t, cfg)))
        .collect()
}

impl MeshGeometry for UnorientedArc {
    fn geometric_successors(&self, cfg: &Config) -> Vec<Self> {
        unoriented_targets(self, cfg).into_iter().map(|x| x.1).collect()
    }

    fn geometric_predecessors(&self, cfg: &Config) -> Vec<Self> {
        elementary_sources(&self.arc, cfg).into_iter().map(|x| unorient(&x.1, cfg)).collect()
    }

    fn is_mouth(&self) -> bool {
        self.arc.is_mouth()
    }
}

pub type ClusterQuiver = Quiver<UnorientedArc, MoveLabel>;

fn merge(c: Component) -> Component {
    match c {
        Component::Preprojective | Component::Preinjective => Component::Transjective,
        other => other,
    }
}

pub fn build_cluster_quiver_from(gamma: &ArcQuiver, cfg: &Config) -> ClusterQuiver {
    let mut q = ClusterQuiver::new();
    for (v, a) in gamma.vertices().iter().enumerate() {
        q.add_vertex(unorient(a, cfg), merge(gamma.component(v)));
    }
    for eta in eta_arcs(cfg) {
        q.add_vertex(eta, Component::Transjective);
    }
    for v in 0..q.vertex_count() {
        let a = *q.vertex(v);
        for (label, t) in unoriented_targets(&a, cfg) {
            if let Some(w) = q.id(&t) {
                if q.component(w) == q.component(v) {
                    q.add_arrow(v, w, ArrowKind::Elementary, label);
                }
            }
        }
        if let Some(w) = q.id(&tau_unoriented(&a, cfg)) {
            if q.component(w) == q.component(v) {
                q.set_tau(v, w);
            }
        }
    }
    for a in gamma.arrows().iter().filter(|a| a.kind == ArrowKind::Long) {
        let s = q.id(&unorient(gamma.vertex(a.src), cfg)).expect("vertex");
        let d = q.id(&unorient(gamma.vertex(a.dst), cfg)).expect("vertex");
        q.add_arrow(s, d, ArrowKind::Long, a.label);
    }
    q
}

pub fn build_cluster_quiver_m(cfg: &Config) -> ClusterQuiver {
    build_cluster_quiver_from(&build_gamma_bar_m(cfg), cfg)
}

/// τ injective, the meshes through the η-slice complete, interior meshes
/// correct, and the rest of the quiver a copy of the oriented one.
pub fn verify_stable_translation(q: &ClusterQuiver, cfg: &Config) -> Report {
    let (mut r, stats) = mesh_check(q, cfg);
    let etas = eta_arcs(cfg);

    let mut eta_bad = None;
    for (i, eta) in etas.iter().enumerate() {
        let b = unorient(&projective_arc(i as i64, cfg).expect("in range"), cfg);
        let c = unorient(&injective_arc(i as i64, cfg).expect("in range"), cfg);
        let (Some(e), Some(bv), Some(cv)) = (q.id(eta), q.id(&b), q.id(&c)) else {
            eta_bad.get_or_insert(format!("slice {i} missing"));
            continue;
        };
        if q.tau(bv) != Some(e) || q.tau(e) != Some(cv) {
            eta_bad.get_or_insert(format!("τ around η_{i} is not β -> η -> γ"));
            continue;
        }
        for (v, w) in [(bv, e), (e, cv)] {
            let geo: HashSet<UnorientedArc> = q.vertex(v).geometric_predecessors(cfg).into_iter().collect();
            let pred: HashSet<UnorientedArc> =
                q.predecessors(v, ArrowKind::Elementary).into_iter().map(|x| *q.vertex(x)).collect();
            let succ: HashSet<UnorientedArc> =
                q.successors(w, ArrowKind::Elementary).into_iter().map(|x| *q.vertex(x)).collect();
            if geo != pred || pred != succ || pred.is_empty() {
                eta_bad.get_or_insert(format!("incomplete mesh at {} with τ = {}", q.vertex(v), q.vertex(w)));
            }
        }
    }
    r.push(CheckResult::from_witness("eta-slice-meshes", format!("{} η arcs", etas.len()), eta_bad));

    let gamma = build_gamma_bar_m(cfg);
    let eta_set: HashSet<UnorientedArc> = etas.iter().copied().collect();
    let carried: HashSet<(UnorientedArc, UnorientedArc, ArrowKind)> = gamma
        .arrows()
        .iter()
        .map(|a| (unorient(gamma.vertex(a.src), cfg), unorient(gamma.vertex(a.dst), cfg), a.kind))
        .collect();
    let restricted: HashSet<(UnorientedArc, UnorientedArc, ArrowKind)> = q
        .arrows()
        .iter()
        .map(|a| (*q.vertex(a.src), *q.vertex(a.dst), a.kind))
        .filter(|(s, d, _)| !eta_set.contains(s) && !eta_set.contains(d))
        .collect();
    r.push(CheckResult::from_witness(
        "oriented-copy",
        format!("{} arrows off the η-slice", restricted.len()),
        carried.symmetric_difference(&restricted).next().map(|(s, d, k)| format!("{s} -> {d} ({k:?})")),
    ));

    let tau2_bad = (0..=cfg.n()).find_map(|i| {
        let b = unorient(&projective_arc(i, cfg).expect("in range"), cfg);
        let c = unorient(&injective_arc(i, cfg).expect("in range"), cfg);
        (tau_unoriented(&tau_unoriented(&b, cfg), cfg) != c).then(|| format!("index {i}"))
    });
    r.push(CheckResult::from_witness("gamma-is-tau-squared-beta", "", tau2_bad));

    let expected = gamma.vertex_count() + etas.len();
    r.push(CheckResult::from_witness(
        "vertex-count",
        format!("{} vertices", q.vertex_count()),
        (q.vertex_count() != expected).then(|| format!("expected {expected}")),
    ));
    let comps = q.connected_components(|a| a.kind == ArrowKind::Elementary);
    r.push(CheckResult::from_witness(
        "three-components",
        format!("{comps} components"),
        (comps != 3).then(|| format!("{comps} components")),
    ));

    let oriented_gap = (0..=cfg.n())
        .map(|i| tau(&projective_arc(i, cfg).expect("in range"), cfg))
        .find(|t| classify(t, cfg) != ArcClass::NotAdmissible)
        .map(|t| format!("τβ = {t} is admissible"));
    r.push(CheckResult::from_witness(
        "oriented-slice-missing",
        format!("{} meshes checked", stats.checked),
        oriented_gap,
    ));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::parse_arc;

    fn cfg() -> Config {
        Config::new(3, 2, 1).unwrap()
    }

    #[test]
    fn unorient_forgets_orientation() {
        let c = cfg();
        let b3 = projective_arc(3, &c).unwrap();
        assert_eq!(unorient(&b3, &c), unorient(&reverse_orientation(&b3, &c).unwrap(), &c));
        let g0 = injective_arc(0, &c).unwrap();
        assert_eq!(unorient(&g0, &c), unorient(&tau_pow(&projective_arc(0, &c).unwrap(), 2, &c), &c));
        assert_eq!(unorient(&parse_arc("[0o,5o]", &c).unwrap(), &c).to_string(), "{0o,5o}");
    }

    #[test]
    fn eta_slice() {
        let c = cfg();
        let etas = eta_arcs(&c);
        assert_eq!(etas.len(), 5);
        assert_eq!(etas[3], unorient(&parse_arc("[1o,-1i]", &c).unwrap(), &c));
    }

    #[test]
    fn cluster_quiver_321() {
        let c = cfg();
        let q = build_cluster_quiver_m(&c);
        assert_eq!(q.vertex_count(), 219);
        let r = verify_stable_translation(&q, &c);
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
    }
}
