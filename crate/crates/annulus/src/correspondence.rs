//! The vertex map from the arc quiver to the coordinate quiver, and the
//! checks that it is an isomorphism of translation quivers once long moves
//! are matched with connecting arrows.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::arquiver::{build_gamma_bar_m, inner_tube_arc, outer_tube_arc, truncated_component, ArcQuiver};
use crate::brustle::{
    build_qm_prime, connecting_endpoints, connecting_labels, inf_offset, BrustleLabel, BrustleVertex,
};
use crate::geometry::{
    injective_arc, lift, norm_mod, preinjective_coords, preprojective_coords, project, projective_arc, sigma_shift,
    tau_pow, AnnulusArc, Config, LiftArc, LiftPoint,
};
use crate::moves::{anchored_lift, elementary_step, elementary_step_back, long_move_anchor, Anchor, MoveKind};
use crate::quiver::{ArrowKind, Component};
use crate::report::{CheckResult, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondenceError {
    #[error("arc {0} is not a vertex of the truncated quiver")]
    NotAVertex(AnnulusArc),
    #[error("{0} is not a vertex of the coordinate quiver")]
    NotACoordinate(BrustleVertex),
    #[error("{0} is not a connecting label")]
    NotConnecting(BrustleLabel),
}

fn reflect(j: i64, cfg: &Config) -> i64 {
    (cfg.g() - j).rem_euclid(cfg.n() + 1)
}

pub fn f_vertex(a: &AnnulusArc, cfg: &Config) -> Result<BrustleVertex, CorrespondenceError> {
    let err = || CorrespondenceError::NotAVertex(*a);
    let l = a.canonical();
    Ok(match truncated_component(a, cfg).ok_or_else(err)? {
        Component::Preprojective => {
            let (r, i) = preprojective_coords(a, cfg).ok_or_else(err)?;
            BrustleVertex::P { r, i }
        }
        Component::Preinjective => {
            let (r, j) = preinjective_coords(a, cfg).ok_or_else(err)?;
            BrustleVertex::I { r, i: reflect(j, cfg) }
        }
        Component::TubeOuter => {
            BrustleVertex::Tg { r: l.level().ok_or_else(err)?, s: norm_mod(l.end().index - 2, cfg.g()) }
        }
        Component::TubeInner => {
            BrustleVertex::Th { r: l.level().ok_or_else(err)?, s: norm_mod(l.start().index + 2, cfg.h()) }
        }
        Component::Transjective => return Err(err()),
    })
}

pub fn f_inverse(v: &BrustleVertex, cfg: &Config) -> Result<AnnulusArc, CorrespondenceError> {
    if !crate::brustle::in_truncation(v, cfg) {
        return Err(CorrespondenceError::NotACoordinate(*v));
    }
    Ok(match *v {
        BrustleVertex::P { r, i } => tau_pow(&projective_arc(i, cfg).expect("in range"), -r, cfg),
        BrustleVertex::I { r, i } => tau_pow(&injective_arc(reflect(i, cfg), cfg).expect("in range"), r, cfg),
        BrustleVertex::Tg { r, s } => outer_tube_arc(r, s, cfg),
        BrustleVertex::Th { r, s } => inner_tube_arc(r, s, cfg),
    })
}

/// Anchor shared by the source and target of a connecting arrow.
pub fn connecting_anchor(label: &BrustleLabel) -> Option<Anchor> {
    match label {
        BrustleLabel::Iota0(_) | BrustleLabel::KappaInf(_) => Some(Anchor::StartFixed),
        BrustleLabel::IotaInf(_) | BrustleLabel::Kappa0(_) => Some(Anchor::EndFixed),
        _ => None,
    }
}

/// Explicit lifts of source and target of a connecting arrow.
pub fn connecting_arrow_lifts(label: &BrustleLabel, cfg: &Config) -> Result<(LiftArc, LiftArc), CorrespondenceError> {
    let (g, h, m, n1, ghm) = (cfg.g(), cfg.h(), cfg.m(), cfg.n() + 1, cfg.ghm());
    let top = g * cfg.big_n() + g + 2;
    let inner_low = -2 - h * (m * n1 + h * m);
    let inner_high = ghm + h;
    let o = LiftPoint::outer;
    let i = LiftPoint::inner;
    let mk = |a, b| lift(a, b).expect("valid lift");
    Ok(match *label {
        BrustleLabel::Iota0(x) => (mk(o(x), i(h * m * n1 + h)), mk(o(x), o(top))),
        BrustleLabel::Kappa0(x) => {
            let src = mk(o(0), o(top - x));
            let dst = injective_lift(ghm, reflect(x, cfg), cfg);
            (src, anchored_lift(&src, Anchor::EndFixed, &dst, cfg).expect("shared endpoint"))
        }
        BrustleLabel::IotaInf(y) => {
            let k = inf_offset(y, cfg);
            (mk(o(-ghm), i(inner_high - k)), mk(i(inner_low), i(inner_high - k)))
        }
        BrustleLabel::KappaInf(y) => {
            let k = inf_offset(y, cfg);
            let src = mk(i(inner_low + k), i(inner_high));
            let dst = injective_lift(ghm, reflect(y, cfg), cfg);
            (src, anchored_lift(&src, Anchor::StartFixed, &dst, cfg).expect("shared endpoint"))
        }
        other => return Err(CorrespondenceError::NotConnecting(other)),
    })
}

fn injective_lift(r: i64, j: i64, cfg: &Config) -> AnnulusArc {
    tau_pow(&injective_arc(j, cfg).expect("in range"), r, cfg)
}

pub fn connecting_arrow_endpoints(
    label: &BrustleLabel,
    cfg: &Config,
) -> Result<(AnnulusArc, AnnulusArc), CorrespondenceError> {
    let (s, d) = connecting_arrow_lifts(label, cfg)?;
    Ok((project(&s, cfg), project(&d, cfg)))
}

fn first<T>(it: impl IntoIterator<Item = T>) -> Option<T> {
    it.into_iter().next()
}

/// Sub-checks (i) to (iii): vertex bijection, elementary arrows, τ.
pub fn verify_bijection_of(q: &ArcQuiver, cfg: &Config) -> Report {
    let b = build_qm_prime(cfg);
    let mut r = Report::new();

    let mut image = HashMap::new();
    let mut bad = None;
    for (v, a) in q.vertices().iter().enumerate() {
        match f_vertex(a, cfg) {
            Ok(x) => {
                let ok = b.id(&x).is_some_and(|w| b.component(w) == q.component(v))
                    && f_inverse(&x, cfg).ok() == Some(*a)
                    && image.insert(x, v).is_none();
                if !ok && bad.is_none() {
                    bad = Some(format!("{a} -> {x}"));
                }
            }
            Err(e) => {
                bad.get_or_insert(e.to_string());
            }
        }
    }
    if bad.is_none() && image.len() != b.vertex_count() {
        bad = first(b.vertices().iter().filter(|x| !image.contains_key(x)).map(|x| format!("{x} not hit")));
    }
    r.push(CheckResult::from_witness(
        "vertex-bijection",
        format!("{} arc vertices, {} coordinate vertices", q.vertex_count(), b.vertex_count()),
        bad,
    ));

    let fid = |v: usize| b.id(&f_vertex(q.vertex(v), cfg).ok()?);
    let mapped: Option<HashSet<(usize, usize)>> = q
        .arrows()
        .iter()
        .filter(|a| a.kind == ArrowKind::Elementary)
        .map(|a| Some((fid(a.src)?, fid(a.dst)?)))
        .collect();
    let target: HashSet<(usize, usize)> =
        b.arrows().iter().filter(|a| a.kind == ArrowKind::Elementary).map(|a| (a.src, a.dst)).collect();
    let arrow_bad = match &mapped {
        None => Some("an arrow endpoint has no image".to_string()),
        Some(m) if m.len() != q.count_arrows(ArrowKind::Elementary) => Some("two arrows share an image".into()),
        Some(m) => first(m.symmetric_difference(&target).map(|&(x, y)| format!("{} -> {}", b.vertex(x), b.vertex(y)))),
    };
    r.push(CheckResult::from_witness(
        "elementary-arrows",
        format!("{} elementary arrows", q.count_arrows(ArrowKind::Elementary)),
        arrow_bad,
    ));

    let tau_bad = first((0..q.vertex_count()).filter_map(|v| {
        let lhs = q.tau(v).and_then(fid);
        let rhs = fid(v).and_then(|w| b.tau(w));
        (lhs != rhs).then(|| format!("at {}: {:?} vs {:?}", q.vertex(v), lhs, rhs))
    }));
    r.push(CheckResult::from_witness("tau-commutes", format!("{} tau pairs", q.tau_pairs().count()), tau_bad));
    r
}

pub fn verify_bijection(cfg: &Config) -> Report {
    verify_bijection_of(&build_gamma_bar_m(cfg), cfg)
}

fn family(src: Component, dst: Component) -> Option<fn(&BrustleLabel) -> bool> {
    use Component::*;
    Some(match (src, dst) {
        (Preprojective, TubeOuter) => |l| matches!(l, BrustleLabel::Iota0(_)),
        (Preprojective, TubeInner) => |l| matches!(l, BrustleLabel::IotaInf(_)),
        (TubeOuter, Preinjective) => |l| matches!(l, BrustleLabel::Kappa0(_)),
        (TubeInner, Preinjective) => |l| matches!(l, BrustleLabel::KappaInf(_)),
        _ => return None,
    })
}

/// Lifts visited by repeated anchored elementary steps inside the vertex set.
fn anchored_walk(q: &ArcQuiver, from: LiftArc, anchor: Anchor, forward: bool, cfg: &Config) -> Vec<LiftArc> {
    let comp = q.id(&project(&from, cfg)).map(|v| q.component(v));
    let mut out = vec![from];
    let mut cur = from;
    loop {
        let next = if forward { elementary_step(&cur, anchor) } else { elementary_step_back(&cur, anchor) };
        match next {
            Some(n) if q.id(&project(&n, cfg)).map(|v| q.component(v)) == comp && comp.is_some() => {
                out.push(n);
                cur = n;
            }
            _ => return out,
        }
    }
}

struct Connector {
    label: BrustleLabel,
    src: LiftArc,
    dst: LiftArc,
}

fn connectors(cfg: &Config) -> Vec<Connector> {
    connecting_labels(cfg)
        .into_iter()
        .map(|label| {
            let (src, dst) = connecting_arrow_lifts(&label, cfg).expect("connecting");
            Connector { label, src, dst }
        })
        .collect()
}

/// Moves `lift` of `c.src`'s arc across the connector, or `None` if it is another arc.
fn cross(c: &Connector, l: &LiftArc, cfg: &Config) -> Option<LiftArc> {
    if project(l, cfg) != project(&c.src, cfg) {
        return None;
    }
    let p = c.src.start();
    let period = cfg.period(p.boundary);
    let t = (l.start().index - p.index) / period;
    Some(sigma_shift(&c.dst, t, cfg))
}

/// Sub-checks (iv) and (v): connecting arrows are long moves, and long
/// arrows are exactly the anchored composites through connecting arrows.
pub fn verify_long_arrows(q: &ArcQuiver, cfg: &Config) -> Report {
    let mut r = Report::new();
    let conns = connectors(cfg);

    let conn_bad = first(conns.iter().filter_map(|c| {
        let (s, d) = (project(&c.src, cfg), project(&c.dst, cfg));
        let (bs, bd) = connecting_endpoints(&c.label, cfg)?;
        let anchor = connecting_anchor(&c.label);
        let ok = long_move_anchor(&s, &d, cfg) == anchor
            && anchor.and_then(|a| anchored_lift(&c.src, a, &d, cfg).ok()) == Some(c.dst)
            && f_vertex(&s, cfg).ok() == Some(bs)
            && f_vertex(&d, cfg).ok() == Some(bd);
        (!ok).then(|| format!("{}: {} -> {}", c.label, c.src, c.dst))
    }));
    r.push(CheckResult::from_witness("connecting-are-long", format!("{} connecting arrows", conns.len()), conn_bad));

    let long: HashSet<(usize, usize)> =
        q.arrows().iter().filter(|a| a.kind == ArrowKind::Long).map(|a| (a.src, a.dst)).collect();
    let max_len = (cfg.ghm() + cfg.n() + 1) + (cfg.g() * cfg.big_n() + cfg.g());

    let mut factor_bad = None;
    let mut longest = 0usize;
    for a in q.arrows().iter().filter(|a| a.kind == ArrowKind::Long) {
        let anchor = a.label.anchor;
        let u = q.vertex(a.src).canonical();
        let want = anchored_lift(&u, anchor, q.vertex(a.dst), cfg).expect("long arrow shares its anchor");
        let fam = family(q.component(a.src), q.component(a.dst)).expect("long arrow between components");
        let mut found = None;
        for (i, x) in anchored_walk(q, u, anchor, true, cfg).iter().enumerate() {
            for c in conns.iter().filter(|c| fam(&c.label)) {
                if let Some(y) = cross(c, x, cfg) {
                    if let Some(j) = anchored_walk(q, y, anchor, true, cfg).iter().position(|z| *z == want) {
                        found = Some(i + j);
                    }
                }
            }
            if found.is_some() {
                break;
            }
        }
        match found {
            Some(len) => longest = longest.max(len),
            None => {
                factor_bad.get_or_insert(format!("{} -> {}", q.vertex(a.src), q.vertex(a.dst)));
            }
        }
    }
    if factor_bad.is_none() && longest as i64 > 2 * max_len {
        factor_bad = Some(format!("factorisation of length {longest} exceeds {}", 2 * max_len));
    }

    let mut missing = None;
    let mut composites = 0usize;
    for c in &conns {
        let anchor = connecting_anchor(&c.label).expect("connecting");
        for x in anchored_walk(q, c.src, anchor, false, cfg) {
            for y in anchored_walk(q, c.dst, anchor, true, cfg) {
                composites += 1;
                let (u, v) = (q.id(&project(&x, cfg)), q.id(&project(&y, cfg)));
                let present = matches!((u, v), (Some(u), Some(v)) if long.contains(&(u, v)));
                if !present && missing.is_none() {
                    missing = Some(format!("{} via {} -> {} has no long arrow", x, c.label, y));
                }
            }
        }
    }
    let witness = factor_bad.or(missing);
    r.push(CheckResult::from_witness(
        "long-arrows-factor",
        format!("{} long arrows, {} anchored composites, longest path {}", long.len(), composites, longest),
        witness,
    ));
    r
}

/// Checks (i) to (v), plus a negative control that deletes one long arrow.
pub fn verify_isomorphism(cfg: &Config) -> Report {
    let q = build_gamma_bar_m(cfg);
    let mut r = verify_bijection_of(&q, cfg);
    r.extend(verify_long_arrows(&q, cfg));
    let victim = q.arrows().iter().position(|a| a.label.kind == MoveKind::Long);
    let control = victim.map(|k| {
        let broken = q.filter_arrows(|i, _| i != k);
        let rep = verify_long_arrows(&broken, cfg);
        let c = rep.get("long-arrows-factor").cloned();
        (k, c)
    });
    r.push(match control {
        Some((k, Some(c))) if !c.passed => CheckResult::pass(
            "negative-control",
            format!("deleting long arrow #{k} is detected: {}", c.witness.unwrap_or_default()),
        ),
        _ => CheckResult::fail("negative-control", "deleting a long arrow went unnoticed", format!("{victim:?}")),
    });
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
    fn vertex_examples() {
        let c = cfg();
        assert_eq!(f_vertex(&parse_arc("[-3o,0i]", &c).unwrap(), &c).unwrap(), BrustleVertex::P { r: 0, i: 0 });
        let t6 = tau_pow(&projective_arc(0, &c).unwrap(), -6, &c);
        assert_eq!(f_vertex(&t6, &c).unwrap(), BrustleVertex::P { r: 6, i: 0 });
        assert_eq!(f_vertex(&parse_arc("[0o,35o]", &c).unwrap(), &c).unwrap(), BrustleVertex::Tg { r: 33, s: 3 });
        assert!(f_vertex(&parse_arc("[0o,36o]", &c).unwrap(), &c).is_err());
    }

    #[test]
    fn connecting_lift_examples() {
        let c = cfg();
        let l = |s: &str| s.parse::<LiftArc>().unwrap();
        assert_eq!(connecting_arrow_lifts(&BrustleLabel::Iota0(0), &c).unwrap(), (l("[0o,12i]"), l("[0o,35o]")));
        assert_eq!(connecting_arrow_lifts(&BrustleLabel::IotaInf(0), &c).unwrap(), (l("[-6o,8i]"), l("[-16i,8i]")));
        let (s, d) = connecting_arrow_lifts(&BrustleLabel::Kappa0(0), &c).unwrap();
        assert_eq!(sigma_shift(&s, -2, &c), l("[-6o,29o]"));
        assert_eq!(sigma_shift(&d, -2, &c), l("[6i,29o]"));
        assert_eq!(sigma_shift(&d, -9, &c), l("[-8i,8o]"));
    }

    #[test]
    fn isomorphism_small() {
        let r = verify_isomorphism(&Config::new(2, 1, 1).unwrap());
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
    }
}
