//! Coordinate quiver built directly from slice and tube coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{norm_mod, Config};
use crate::quiver::{ArrowKind, Component, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BrustleVertex {
    P { r: i64, i: i64 },
    I { r: i64, i: i64 },
    Tg { r: i64, s: i64 },
    Th { r: i64, s: i64 },
}

impl BrustleVertex {
    pub fn component(&self) -> Component {
        match self {
            BrustleVertex::P { .. } => Component::Preprojective,
            BrustleVertex::I { .. } => Component::Preinjective,
            BrustleVertex::Tg { .. } => Component::TubeOuter,
            BrustleVertex::Th { .. } => Component::TubeInner,
        }
    }
}

impl fmt::Display for BrustleVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrustleVertex::P { r, i } => write!(f, "({r},{i})_P"),
            BrustleVertex::I { r, i } => write!(f, "({r},{i})_I"),
            BrustleVertex::Tg { r, s } => write!(f, "({r},{s})_g"),
            BrustleVertex::Th { r, s } => write!(f, "({r},{s})_h"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    P,
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SliceArrow {
    Beta,
    BetaPrime,
    Alpha,
    AlphaPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BrustleLabel {
    Slice { side: Side, arrow: SliceArrow, r: i64, i: i64 },
    Rho0 { r: i64, s: i64 },
    Pi0 { r: i64, s: i64 },
    RhoInf { r: i64, s: i64 },
    PiInf { r: i64, s: i64 },
    Iota0(i64),
    Kappa0(i64),
    IotaInf(i64),
    KappaInf(i64),
}

impl BrustleLabel {
    pub fn is_connecting(&self) -> bool {
        matches!(
            self,
            BrustleLabel::Iota0(_) | BrustleLabel::Kappa0(_) | BrustleLabel::IotaInf(_) | BrustleLabel::KappaInf(_)
        )
    }
}

impl fmt::Display for BrustleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrustleLabel::Slice { side, arrow, r, i } => {
                let name = match arrow {
                    SliceArrow::Beta => "beta",
                    SliceArrow::BetaPrime => "beta'",
                    SliceArrow::Alpha => "alpha",
                    SliceArrow::AlphaPrime => "alpha'",
                };
                write!(f, "({r},{name}_{i})_{side:?}")
            }
            BrustleLabel::Rho0 { r, s } => write!(f, "rho_0({r},{s})"),
            BrustleLabel::Pi0 { r, s } => write!(f, "pi_0({r},{s})"),
            BrustleLabel::RhoInf { r, s } => write!(f, "rho_inf({r},{s})"),
            BrustleLabel::PiInf { r, s } => write!(f, "pi_inf({r},{s})"),
            BrustleLabel::Iota0(x) => write!(f, "iota_0({x})"),
            BrustleLabel::Kappa0(x) => write!(f, "kappa_0({x})"),
            BrustleLabel::IotaInf(y) => write!(f, "iota_inf({y})"),
            BrustleLabel::KappaInf(y) => write!(f, "kappa_inf({y})"),
        }
    }
}

pub type BrustleQuiver = Quiver<BrustleVertex, BrustleLabel>;

/// Highest level kept in column `s` of the rank-`g` tube.
pub fn tg_height(s: i64, cfg: &Config) -> i64 {
    cfg.g() * cfg.big_n() + s
}

/// Highest level kept in column `s` of the rank-`h` tube.
pub fn th_height(s: i64, cfg: &Config) -> i64 {
    cfg.h() * cfg.big_n() + norm_mod(-s, cfg.h())
}

pub fn in_truncation(v: &BrustleVertex, cfg: &Config) -> bool {
    let n1 = cfg.n() + 1;
    match *v {
        BrustleVertex::P { r, i } | BrustleVertex::I { r, i } => (0..=cfg.ghm()).contains(&r) && (0..n1).contains(&i),
        BrustleVertex::Tg { r, s } => (1..=cfg.g()).contains(&s) && (0..=tg_height(s, cfg)).contains(&r),
        BrustleVertex::Th { r, s } => (1..=cfg.h()).contains(&s) && (0..=th_height(s, cfg)).contains(&r),
    }
}

pub fn brustle_vertices(cfg: &Config) -> Vec<BrustleVertex> {
    let mut out = Vec::new();
    for i in 0..=cfg.n() {
        out.extend((0..=cfg.ghm()).map(|r| BrustleVertex::P { r, i }));
    }
    for i in 0..=cfg.n() {
        out.extend((0..=cfg.ghm()).map(|r| BrustleVertex::I { r, i }));
    }
    for s in 1..=cfg.g() {
        out.extend((0..=tg_height(s, cfg)).map(|r| BrustleVertex::Tg { r, s }));
    }
    for s in 1..=cfg.h() {
        out.extend((0..=th_height(s, cfg)).map(|r| BrustleVertex::Th { r, s }));
    }
    out
}

/// Translation within the truncation.
pub fn brustle_tau(v: &BrustleVertex, cfg: &Config) -> Option<BrustleVertex> {
    let t = match *v {
        BrustleVertex::P { r, i } => BrustleVertex::P { r: r - 1, i },
        BrustleVertex::I { r, i } => BrustleVertex::I { r: r + 1, i },
        BrustleVertex::Tg { r, s } => BrustleVertex::Tg { r, s: norm_mod(s + 1, cfg.g()) },
        BrustleVertex::Th { r, s } => BrustleVertex::Th { r, s: norm_mod(s - 1, cfg.h()) },
    };
    in_truncation(&t, cfg).then_some(t)
}

fn slice_arrows(cfg: &Config) -> Vec<(BrustleVertex, BrustleVertex, BrustleLabel)> {
    let n1 = cfg.n() + 1;
    let mut out = Vec::new();
    for side in [Side::P, Side::I] {
        let mk = |r: i64, i: i64| match side {
            Side::P => BrustleVertex::P { r, i: i.rem_euclid(n1) },
            Side::I => BrustleVertex::I { r, i: i.rem_euclid(n1) },
        };
        for r in 0..=cfg.ghm() {
            for i in 0..n1 {
                let pairs = if i < cfg.g() {
                    [(SliceArrow::Beta, mk(r, i + 1), mk(r, i)), (SliceArrow::BetaPrime, mk(r, i), mk(r + 1, i + 1))]
                } else {
                    [(SliceArrow::Alpha, mk(r, i), mk(r, i + 1)), (SliceArrow::AlphaPrime, mk(r, i + 1), mk(r + 1, i))]
                };
                for (arrow, a, b) in pairs {
                    let (a, b) = match side {
                        Side::P => (a, b),
                        Side::I => (b, a),
                    };
                    out.push((a, b, BrustleLabel::Slice { side, arrow, r, i }));
                }
            }
        }
    }
    out
}

fn tube_arrows(cfg: &Config) -> Vec<(BrustleVertex, BrustleVertex, BrustleLabel)> {
    let mut out = Vec::new();
    for s in 1..=cfg.g() {
        for r in 0..=tg_height(s, cfg) {
            let up = norm_mod(s + 1, cfg.g());
            out.push((BrustleVertex::Tg { r: r + 1, s: up }, BrustleVertex::Tg { r, s }, BrustleLabel::Pi0 { r, s }));
            out.push((BrustleVertex::Tg { r, s }, BrustleVertex::Tg { r: r + 1, s }, BrustleLabel::Rho0 { r, s }));
        }
    }
    for s in 1..=cfg.h() {
        for r in 0..=th_height(s, cfg) {
            let dn = norm_mod(s - 1, cfg.h());
            out.push((BrustleVertex::Th { r: r + 1, s: dn }, BrustleVertex::Th { r, s }, BrustleLabel::PiInf { r, s }));
            out.push((BrustleVertex::Th { r, s }, BrustleVertex::Th { r: r + 1, s }, BrustleLabel::RhoInf { r, s }));
        }
    }
    out
}

/// Labels of the connecting arrows: `x ∈ 0..=g` and `y ∈ {0, g, .., n}`.
pub fn connecting_labels(cfg: &Config) -> Vec<BrustleLabel> {
    let xs = 0..=cfg.g();
    let ys: Vec<i64> = std::iter::once(0).chain(cfg.g()..=cfg.n()).collect();
    let mut out: Vec<BrustleLabel> = xs.clone().map(BrustleLabel::Iota0).collect();
    out.extend(xs.map(BrustleLabel::Kappa0));
    out.extend(ys.iter().map(|&y| BrustleLabel::IotaInf(y)));
    out.extend(ys.iter().map(|&y| BrustleLabel::KappaInf(y)));
    out
}

/// Distance of `y` from the top of the rank-`h` tube's ray.
pub fn inf_offset(y: i64, cfg: &Config) -> i64 {
    (cfg.n() + 1 - y).rem_euclid(cfg.n() + 1)
}

pub fn connecting_endpoints(label: &BrustleLabel, cfg: &Config) -> Option<(BrustleVertex, BrustleVertex)> {
    let (g, h, ghm) = (cfg.g(), cfg.h(), cfg.ghm());
    let (gn, hn) = (g * cfg.big_n(), h * cfg.big_n());
    Some(match *label {
        BrustleLabel::Iota0(x) => (BrustleVertex::P { r: ghm, i: x }, BrustleVertex::Tg { r: gn + g - x, s: g }),
        BrustleLabel::Kappa0(x) => {
            (BrustleVertex::Tg { r: gn + g - x, s: norm_mod(g - x, g) }, BrustleVertex::I { r: ghm, i: x })
        }
        BrustleLabel::IotaInf(y) => {
            let k = inf_offset(y, cfg);
            (BrustleVertex::P { r: ghm, i: y }, BrustleVertex::Th { r: hn + h - k, s: h })
        }
        BrustleLabel::KappaInf(y) => {
            let k = inf_offset(y, cfg);
            (BrustleVertex::Th { r: hn + h - k, s: norm_mod(k, h) }, BrustleVertex::I { r: ghm, i: y })
        }
        _ => return None,
    })
}

pub fn build_qm_prime(cfg: &Config) -> BrustleQuiver {
    let mut q = BrustleQuiver::new();
    for v in brustle_vertices(cfg) {
        q.add_vertex(v, v.component());
    }
    for (a, b, label) in slice_arrows(cfg).into_iter().chain(tube_arrows(cfg)) {
        if let (Some(x), Some(y)) = (q.id(&a), q.id(&b)) {
            q.add_arrow(x, y, ArrowKind::Elementary, label);
        }
    }
    for label in connecting_labels(cfg) {
        let (a, b) = connecting_endpoints(&label, cfg).expect("connecting label");
        let (x, y) = (q.id(&a).expect("source in truncation"), q.id(&b).expect("target in truncation"));
        q.add_arrow(x, y, ArrowKind::Connecting, label);
    }
    for v in 0..q.vertex_count() {
        if let Some(t) = brustle_tau(q.vertex(v), cfg) {
            let t = q.id(&t).expect("tau stays in truncation");
            q.set_tau(v, t);
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::new(3, 2, 1).unwrap()
    }

    #[test]
    fn sizes() {
        let c = cfg();
        let q = build_qm_prime(&c);
        assert_eq!(q.count_component(Component::Preprojective), 35);
        assert_eq!(q.count_component(Component::TubeOuter), 99);
        assert_eq!(q.count_component(Component::TubeInner), 45);
        assert_eq!(q.vertex_count(), 214);
        assert_eq!(q.count_arrows(ArrowKind::Connecting), 14);
    }

    #[test]
    fn tau_examples() {
        let c = cfg();
        assert_eq!(brustle_tau(&BrustleVertex::P { r: 1, i: 0 }, &c), Some(BrustleVertex::P { r: 0, i: 0 }));
        assert_eq!(brustle_tau(&BrustleVertex::P { r: 0, i: 2 }, &c), None);
        assert_eq!(brustle_tau(&BrustleVertex::I { r: 6, i: 2 }, &c), None);
        assert_eq!(brustle_tau(&BrustleVertex::Tg { r: 4, s: 3 }, &c), Some(BrustleVertex::Tg { r: 4, s: 1 }));
        assert_eq!(brustle_tau(&BrustleVertex::Tg { r: 33, s: 3 }, &c), None);
    }

    #[test]
    fn interior_p_vertex_has_diamond_neighbourhood() {
        let c = cfg();
        let q = build_qm_prime(&c);
        let v = q.id(&BrustleVertex::P { r: 3, i: 1 }).unwrap();
        assert_eq!(q.successors(v, ArrowKind::Elementary).len(), 2);
        assert_eq!(q.predecessors(v, ArrowKind::Elementary).len(), 2);
    }

    #[test]
    fn connecting_label_ranges() {
        let c = cfg();
        let ls = connecting_labels(&c);
        assert_eq!(ls.len(), 2 * (c.g() + 1) as usize + 2 * (c.h() + 1) as usize);
        assert!(ls.contains(&BrustleLabel::IotaInf(4)));
        assert!(!ls.contains(&BrustleLabel::IotaInf(1)));
    }
}
