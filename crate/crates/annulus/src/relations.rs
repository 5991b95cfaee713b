//! Rewrite rules on move words and the checks of the defining relations.
//!
//! Every rule is instantiated at a concrete source arc, so matching a window
//! of a word needs the lift reached just before the window. Words are
//! rewritten by directed strategies that follow the shape of each identity
//! rather than by searching the whole relation closure.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arquiver::{build_gamma_bar_m, ArcQuiver, MeshGeometry};
use crate::brustle::{BrustleLabel, BrustleVertex};
use crate::correspondence::{connecting_anchor, connecting_arrow_endpoints, connecting_arrow_lifts, f_inverse};
use crate::geometry::{lift, project, AnnulusArc, Config, LiftArc, LiftPoint};
use crate::moves::{
    anchored_lift, elementary_step, elementary_step_back, evaluate_word, long_move_anchor, trace_word, Anchor,
    MoveError, MoveKind, MoveWord, Step, ZeroOrArc,
};
use crate::quiver::{ArrowKind, Component};
use crate::report::{CheckResult, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiamondCase {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleKind {
    MeshSwap,
    ZeroKill,
    DiamondSwap(DiamondCase),
    /// Families 1 to 8: `2 * pair + shape`, pairs P→Tg, P→Th, Tg→I, Th→I,
    /// shape 1 elementary-then-long, shape 2 long-then-elementary.
    TriangleCollapse(u8),
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleKind::MeshSwap => write!(f, "mesh-swap"),
            RuleKind::ZeroKill => write!(f, "zero-kill"),
            RuleKind::DiamondSwap(c) => write!(f, "diamond-{c:?}"),
            RuleKind::TriangleCollapse(k) => write!(f, "triangle-{k}"),
        }
    }
}

/// `lhs` read from `source` may be replaced by `rhs`; for [`RuleKind::ZeroKill`]
/// the window is zero and `rhs` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewriteRule {
    pub kind: RuleKind,
    pub source: AnnulusArc,
    pub lhs: Vec<Step>,
    pub rhs: Vec<Step>,
}

#[derive(Debug, Clone, Default)]
pub struct RuleSet {
    rules: Vec<RewriteRule>,
    index: HashMap<(AnnulusArc, Vec<Step>), Vec<usize>>,
}

impl RuleSet {
    pub fn new(rules: Vec<RewriteRule>) -> Self {
        let mut index: HashMap<(AnnulusArc, Vec<Step>), Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            index.entry((r.source, r.lhs.clone())).or_default().push(i);
        }
        RuleSet { rules, index }
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn lookup<'a>(&'a self, source: &AnnulusArc, window: &[Step]) -> impl Iterator<Item = &'a RewriteRule> {
        self.index.get(&(*source, window.to_vec())).into_iter().flatten().map(move |&i| &self.rules[i])
    }

    pub fn count(&self, pred: impl Fn(RuleKind) -> bool) -> usize {
        self.rules.iter().filter(|r| pred(r.kind)).count()
    }
}

fn label_of(q: &ArcQuiver, src: usize, dst: usize) -> Option<Anchor> {
    q.out_arrows(src).find(|a| a.dst == dst && a.kind == ArrowKind::Elementary).map(|a| a.label.anchor)
}

/// One swap rule per direction for each complete four-vertex mesh, one
/// zero rule per complete mesh through a tube mouth.
pub fn generate_mesh_relations(q: &ArcQuiver, cfg: &Config) -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for (v, w) in q.tau_pairs() {
        let (vv, ww) = (q.vertex(v), q.vertex(w));
        let complete =
            vv.geometric_predecessors(cfg).iter().chain(ww.geometric_successors(cfg).iter()).all(|x| q.contains(x));
        if !complete {
            continue;
        }
        let mids: Vec<usize> = q
            .successors(w, ArrowKind::Elementary)
            .into_iter()
            .filter(|m| q.predecessors(v, ArrowKind::Elementary).contains(m))
            .collect();
        let paths: Vec<Vec<Step>> = mids
            .iter()
            .filter_map(|&m| Some(vec![Step::Elementary(label_of(q, w, m)?), Step::Elementary(label_of(q, m, v)?)]))
            .collect();
        match paths.as_slice() {
            [p] if ww.is_mouth() => {
                out.push(RewriteRule { kind: RuleKind::ZeroKill, source: *ww, lhs: p.clone(), rhs: vec![] })
            }
            [p1, p2] => {
                out.push(RewriteRule { kind: RuleKind::MeshSwap, source: *ww, lhs: p1.clone(), rhs: p2.clone() });
                out.push(RewriteRule { kind: RuleKind::MeshSwap, source: *ww, lhs: p2.clone(), rhs: p1.clone() });
            }
            _ => {}
        }
    }
    out
}

fn pair_index(src: Component, dst: Component) -> Option<u8> {
    use Component::*;
    match (src, dst) {
        (Preprojective, TubeOuter) => Some(0),
        (Preprojective, TubeInner) => Some(1),
        (TubeOuter, Preinjective) => Some(2),
        (TubeInner, Preinjective) => Some(3),
        _ => None,
    }
}

fn diamond_case(src: Component, dst: Component) -> Option<DiamondCase> {
    pair_index(src, dst).map(|p| [DiamondCase::A, DiamondCase::B, DiamondCase::C, DiamondCase::D][p as usize])
}

fn vertex_of(q: &ArcQuiver, l: &LiftArc, cfg: &Config) -> Option<usize> {
    q.id(&project(l, cfg))
}

/// A commuting square `X → Y1 → Z = X → Y2 → Z` with one long side pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diamond {
    pub case: DiamondCase,
    pub x: AnnulusArc,
    pub long_anchor: Anchor,
    pub elementary_anchor: Anchor,
    pub y1: AnnulusArc,
    pub y2: AnnulusArc,
    pub z: AnnulusArc,
}

impl Diamond {
    fn long_first(&self) -> Vec<Step> {
        vec![Step::Long { anchor: self.long_anchor, target: self.y1 }, Step::Elementary(self.elementary_anchor)]
    }

    fn elementary_first(&self) -> Vec<Step> {
        vec![Step::Elementary(self.elementary_anchor), Step::Long { anchor: self.long_anchor, target: self.z }]
    }
}

/// Diamonds formed by a long arrow `X → Y1` and the elementary move of the
/// other anchor applied at both ends.
pub fn find_diamonds(q: &ArcQuiver, cfg: &Config) -> Vec<Diamond> {
    let mut out = Vec::new();
    for a in q.arrows().iter().filter(|a| a.kind == ArrowKind::Long) {
        let Some(case) = diamond_case(q.component(a.src), q.component(a.dst)) else { continue };
        let la = a.label.anchor;
        let ea = la.other();
        let x = q.vertex(a.src).canonical();
        let y1 = anchored_lift(&x, la, q.vertex(a.dst), cfg).expect("long arrow");
        let (Some(z), Some(y2)) = (elementary_step(&y1, ea), elementary_step(&x, ea)) else { continue };
        let (Some(zv), Some(y2v)) = (vertex_of(q, &z, cfg), vertex_of(q, &y2, cfg)) else { continue };
        if q.component(zv) != q.component(a.dst) || q.component(y2v) != q.component(a.src) {
            continue;
        }
        if long_move_anchor(q.vertex(y2v), q.vertex(zv), cfg) != Some(la) {
            continue;
        }
        out.push(Diamond {
            case,
            x: *q.vertex(a.src),
            long_anchor: la,
            elementary_anchor: ea,
            y1: *q.vertex(a.dst),
            y2: *q.vertex(y2v),
            z: *q.vertex(zv),
        });
    }
    out
}

pub fn generate_diamond_rules(q: &ArcQuiver, cfg: &Config) -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for d in find_diamonds(q, cfg) {
        let kind = RuleKind::DiamondSwap(d.case);
        out.push(RewriteRule { kind, source: d.x, lhs: d.long_first(), rhs: d.elementary_first() });
        out.push(RewriteRule { kind, source: d.x, lhs: d.elementary_first(), rhs: d.long_first() });
    }
    out
}

/// Collapses of an anchored elementary move into an adjacent long move.
pub fn generate_triangle_rules(q: &ArcQuiver, cfg: &Config) -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for a in q.arrows().iter().filter(|a| a.kind == ArrowKind::Long) {
        let Some(p) = pair_index(q.component(a.src), q.component(a.dst)) else { continue };
        let an = a.label.anchor;
        let (u, v) = (q.vertex(a.src), q.vertex(a.dst));
        let long_uv = Step::Long { anchor: an, target: *v };
        if let Some(pre) = elementary_step_back(&u.canonical(), an).and_then(|l| vertex_of(q, &l, cfg)) {
            if q.component(pre) == q.component(a.src) && long_move_anchor(q.vertex(pre), v, cfg) == Some(an) {
                out.push(RewriteRule {
                    kind: RuleKind::TriangleCollapse(2 * p + 1),
                    source: *q.vertex(pre),
                    lhs: vec![Step::Elementary(an), long_uv],
                    rhs: vec![long_uv],
                });
            }
        }
        let vl = anchored_lift(&u.canonical(), an, v, cfg).expect("long arrow");
        if let Some(post) = elementary_step(&vl, an).and_then(|l| vertex_of(q, &l, cfg)) {
            if q.component(post) == q.component(a.dst) && long_move_anchor(u, q.vertex(post), cfg) == Some(an) {
                out.push(RewriteRule {
                    kind: RuleKind::TriangleCollapse(2 * p + 2),
                    source: *u,
                    lhs: vec![long_uv, Step::Elementary(an)],
                    rhs: vec![Step::Long { anchor: an, target: *q.vertex(post) }],
                });
            }
        }
    }
    out
}

/// A rewriting run: the final word, whether it became zero, and the applied rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub word: MoveWord,
    pub zero: bool,
    pub log: Vec<(RuleKind, usize)>,
}

impl Reduction {
    pub fn count(&self, pred: impl Fn(RuleKind) -> bool) -> usize {
        self.log.iter().filter(|(k, _)| pred(*k)).count()
    }

    pub fn witness(&self) -> String {
        let steps: Vec<String> = self.log.iter().map(|(k, i)| format!("{k}@{i}")).collect();
        format!("{} -> {}", steps.join(","), if self.zero { "0".to_string() } else { self.word.to_string() })
    }
}

fn splice(w: &MoveWord, at: usize, len: usize, rhs: &[Step]) -> MoveWord {
    let mut steps = w.steps[..at].to_vec();
    steps.extend_from_slice(rhs);
    steps.extend_from_slice(&w.steps[at + len..]);
    MoveWord::new(steps)
}

fn arcs_along(w: &MoveWord, source: &LiftArc, cfg: &Config) -> Result<Vec<Option<AnnulusArc>>, MoveError> {
    Ok(trace_word(w, source, cfg)?.into_iter().map(|z| z.arc().map(|l| project(&l, cfg))).collect())
}

/// Leftmost application of a rule accepted by `allow`, if any.
fn rewrite_once(
    w: &MoveWord,
    source: &LiftArc,
    rules: &RuleSet,
    allow: &dyn Fn(&RewriteRule, usize) -> bool,
    cfg: &Config,
) -> Result<Option<(MoveWord, RuleKind, usize)>, MoveError> {
    let arcs = arcs_along(w, source, cfg)?;
    for (i, arc) in arcs.iter().take(w.len()).enumerate() {
        let Some(src) = *arc else { break };
        for len in [2usize, 1] {
            if i + len > w.len() {
                continue;
            }
            if let Some(r) = rules.lookup(&src, &w.steps[i..i + len]).find(|r| allow(r, i)) {
                return Ok(Some((splice(w, i, len, &r.rhs), r.kind, i)));
            }
        }
    }
    Ok(None)
}

/// Applies triangle collapses until none matches. Each collapse shortens the
/// word, so this terminates.
pub fn reduce_word(w: &MoveWord, source: &LiftArc, rules: &RuleSet, cfg: &Config) -> Result<Reduction, MoveError> {
    let mut cur = w.clone();
    let mut log = Vec::new();
    let allow = |r: &RewriteRule, _| matches!(r.kind, RuleKind::TriangleCollapse(_));
    while let Some((next, kind, at)) = rewrite_once(&cur, source, rules, &allow, cfg)? {
        cur = next;
        log.push((kind, at));
    }
    Ok(Reduction { word: cur, zero: false, log })
}

/// Anchors of the upward and downward elementary moves in a tube.
fn tube_moves(c: Component) -> (Anchor, Anchor) {
    match c {
        Component::TubeOuter => (Anchor::EndFixed, Anchor::StartFixed),
        _ => (Anchor::StartFixed, Anchor::EndFixed),
    }
}

/// Moves every downward step of the tube segment left past upward steps by
/// mesh swaps; a swap requested at the mouth is a zero relation instead.
pub fn push_down(
    w: &MoveWord,
    source: &LiftArc,
    tube: Component,
    rules: &RuleSet,
    cfg: &Config,
) -> Result<Reduction, String> {
    let (up, down) = tube_moves(tube);
    let window = [Step::Elementary(up), Step::Elementary(down)];
    let mut cur = w.clone();
    let mut log = Vec::new();
    loop {
        let trace = trace_word(&cur, source, cfg).map_err(|e| e.to_string())?;
        let pos = (0..cur.len().saturating_sub(1)).find(|&i| {
            cur.steps[i..i + 2] == window && trace[i].arc().is_some_and(|l| l.start().boundary == l.end().boundary)
        });
        let Some(i) = pos else {
            return Ok(Reduction { word: cur, zero: false, log });
        };
        let l = trace[i].arc().expect("checked");
        let src = project(&l, cfg);
        let rule = rules
            .lookup(&src, &window)
            .find(|r| matches!(r.kind, RuleKind::MeshSwap | RuleKind::ZeroKill))
            .ok_or_else(|| format!("no mesh rule at {src} (level {:?})", l.level()))?;
        log.push((rule.kind, i));
        if rule.kind == RuleKind::ZeroKill {
            return Ok(Reduction { word: cur, zero: true, log });
        }
        cur = splice(&cur, i, 2, &rule.rhs);
    }
}

/// All rule families on one truncated quiver.
pub struct RelationContext {
    pub cfg: Config,
    pub quiver: ArcQuiver,
    pub mesh: RuleSet,
    pub diamonds: RuleSet,
    pub triangles: RuleSet,
}

impl RelationContext {
    pub fn new(cfg: &Config) -> Self {
        let quiver = build_gamma_bar_m(cfg);
        RelationContext::from_quiver(quiver, cfg)
    }

    pub fn from_quiver(quiver: ArcQuiver, cfg: &Config) -> Self {
        let mesh = RuleSet::new(generate_mesh_relations(&quiver, cfg));
        let diamonds = RuleSet::new(generate_diamond_rules(&quiver, cfg));
        let triangles = RuleSet::new(generate_triangle_rules(&quiver, cfg));
        RelationContext { cfg: *cfg, quiver, mesh, diamonds, triangles }
    }
}

fn conn_step(label: BrustleLabel, cfg: &Config) -> Step {
    let (_, target) = connecting_arrow_endpoints(&label, cfg).expect("connecting");
    Step::Long { anchor: connecting_anchor(&label).expect("connecting"), target }
}

fn rep(a: Anchor, k: i64) -> MoveWord {
    MoveWord::repeat(Step::Elementary(a), k as usize)
}

fn e(a: Anchor) -> MoveWord {
    rep(a, 1)
}

fn single(s: Step) -> MoveWord {
    MoveWord::new(vec![s])
}

/// The four identities relating connecting arrows with index `g` to those
/// with index `0`, each as (name, lhs label, rhs word).
pub fn c_identities(cfg: &Config) -> Vec<(&'static str, BrustleLabel, MoveWord)> {
    use Anchor::*;
    let (g, h) = (cfg.g(), cfg.h());
    let c = |l| single(conn_step(l, cfg));
    vec![
        (
            "c1-outer",
            BrustleLabel::Iota0(g),
            rep(StartFixed, h).then(c(BrustleLabel::Iota0(0))).then(rep(StartFixed, g)),
        ),
        (
            "c1-inner",
            BrustleLabel::IotaInf(g),
            rep(EndFixed, g).then(c(BrustleLabel::IotaInf(0))).then(rep(EndFixed, h)),
        ),
        ("c2-outer", BrustleLabel::Kappa0(g), rep(EndFixed, g).then(c(BrustleLabel::Kappa0(0))).then(rep(EndFixed, h))),
        (
            "c2-inner",
            BrustleLabel::KappaInf(g),
            rep(StartFixed, h).then(c(BrustleLabel::KappaInf(0))).then(rep(StartFixed, g)),
        ),
    ]
}

fn check_c_identity(ctx: &RelationContext, name: &str, lhs: BrustleLabel, rhs: &MoveWord) -> Result<String, String> {
    let cfg = &ctx.cfg;
    let (src, dst) = connecting_arrow_lifts(&lhs, cfg).map_err(|e| e.to_string())?;
    let before = evaluate_word(rhs, &src, cfg).map_err(|e| format!("{name}: rhs does not compose: {e}"))?;
    let red = reduce_word(rhs, &src, &ctx.triangles, cfg).map_err(|e| e.to_string())?;
    let expected = conn_step(lhs, cfg);
    if red.word.steps != [expected] {
        return Err(format!("{name}: reduced to {} instead of {expected}", red.word));
    }
    let collapses = red.count(|k| matches!(k, RuleKind::TriangleCollapse(_)));
    if collapses as i64 != cfg.g() + cfg.h() {
        return Err(format!("{name}: {collapses} collapses"));
    }
    if before != ZeroOrArc::Arc(dst) {
        return Err(format!("{name}: rhs lands on {before}, lhs on {dst}"));
    }
    Ok(format!("{} collapses; {}", collapses, red.witness()))
}

pub fn verify_c1_c2_with(ctx: &RelationContext) -> Report {
    let mut r = Report::new();
    for (name, lhs, rhs) in c_identities(&ctx.cfg) {
        r.push(match check_c_identity(ctx, name, lhs, &rhs) {
            Ok(d) => CheckResult::pass(name, d),
            Err(w) => CheckResult::fail(name, "", w),
        });
    }
    let (name, lhs, rhs) = c_identities(&ctx.cfg).remove(0);
    let swapped = MoveWord::new(
        rhs.steps.iter().map(|s| if s.is_long() { conn_step(BrustleLabel::Iota0(1), &ctx.cfg) } else { *s }).collect(),
    );
    r.push(match check_c_identity(ctx, name, lhs, &swapped) {
        Ok(_) => CheckResult::fail("c-negative-control", "", "substituted word still reduced"),
        Err(w) => CheckResult::pass("c-negative-control", format!("substitution rejected: {w}")),
    });
    r
}

pub fn verify_c1_c2(cfg: &Config) -> Report {
    verify_c1_c2_with(&RelationContext::new(cfg))
}

/// The two sides of the identity through the rank-`h` tube (`j` rounds) and
/// through the rank-`g` tube (`N + 1 - j` rounds).
pub fn f_sides(j: i64, cfg: &Config) -> (MoveWord, MoveWord) {
    use Anchor::*;
    let (g, h) = (cfg.g(), cfg.h());
    let inner_round = rep(EndFixed, h).then(rep(StartFixed, h));
    let outer_round = rep(StartFixed, g).then(rep(EndFixed, g));
    let mut side1 = single(conn_step(BrustleLabel::IotaInf(0), cfg));
    for _ in 0..j {
        side1 = side1.then(inner_round.clone());
    }
    side1 = side1.push(conn_step(BrustleLabel::KappaInf(0), cfg));
    let mut side2 = single(conn_step(BrustleLabel::Iota0(0), cfg));
    for _ in 0..(cfg.big_n() + 1 - j) {
        side2 = side2.then(outer_round.clone());
    }
    side2 = side2.push(conn_step(BrustleLabel::Kappa0(0), cfg));
    (side1, side2)
}

/// Shared source lift of both sides.
pub fn f_source(cfg: &Config) -> LiftArc {
    lift(LiftPoint::outer(-cfg.ghm()), LiftPoint::inner(cfg.h() + cfg.ghm())).expect("bridging")
}

/// Closed forms of the two sides' endpoints as written for the appendix
/// computation; the second is only correct up to σ.
pub fn f_closed_forms(j: i64, cfg: &Config) -> (LiftArc, LiftArc) {
    let (g, h, m, n1, ghm) = (cfg.g(), cfg.h(), cfg.m(), cfg.n() + 1, cfg.ghm());
    let one = lift(LiftPoint::inner(-2 - h * (m * n1 + h * m - j)), LiftPoint::outer(2 - ghm + j * g));
    let two = lift(LiftPoint::inner(-2 - ghm - h * j), LiftPoint::outer(2 + ghm - g * j));
    (one.expect("bridging"), two.expect("bridging"))
}

/// Evaluates both sides at `j` and returns their lifts.
pub fn f_values(j: i64, cfg: &Config) -> Result<(ZeroOrArc, ZeroOrArc), MoveError> {
    let (s1, s2) = f_sides(j, cfg);
    let src = f_source(cfg);
    Ok((evaluate_word(&s1, &src, cfg)?, evaluate_word(&s2, &src, cfg)?))
}

pub fn verify_f(cfg: &Config, j: i64) -> Report {
    let mut r = Report::new();
    let name = format!("f[j={j}]");
    let target = f_inverse(&BrustleVertex::I { r: cfg.ghm(), i: 0 }, cfg).expect("in truncation");
    let (c1, c2) = f_closed_forms(j, cfg);
    let res = match f_values(j, cfg) {
        Err(e) => Err(e.to_string()),
        Ok((ZeroOrArc::Arc(a), ZeroOrArc::Arc(b))) => {
            let (pa, pb) = (project(&a, cfg), project(&b, cfg));
            if pa != pb {
                Err(format!("sides differ: {a} vs {b}"))
            } else if pa != target {
                Err(format!("lands on {pa}, not on {target}"))
            } else if a != c1 {
                Err(format!("first side {a} differs from closed form {c1}"))
            } else if project(&c2, cfg) != pb {
                Err(format!("second side {b} not σ-equivalent to closed form {c2}"))
            } else {
                let t = (b.end().index - c2.end().index) / cfg.g();
                Ok(format!("side 1 {a}, side 2 {b}, closed form {c2} shifted by σ^{t}"))
            }
        }
        Ok((x, y)) => Err(format!("zero on a side: {x} / {y}")),
    };
    r.push(match res {
        Ok(d) => CheckResult::pass(name, d),
        Err(w) => CheckResult::fail(name, "", w),
    });
    r
}

pub fn verify_f_sweep(cfg: &Config) -> Report {
    let mut r = Report::new();
    for j in 0..=cfg.big_n() + 1 {
        r.extend(verify_f(cfg, j));
    }
    r
}

/// Which zero relation is being derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroIdentity {
    /// `(ghm, α_n)_P` before the outer connecting pair.
    AlphaP,
    /// `(ghm, α_n)_I` after the outer connecting pair.
    AlphaI,
    /// `(ghm, β_0)_P` before the inner connecting pair.
    BetaP,
    /// `(ghm, β_0)_I` after the inner connecting pair.
    BetaI,
}

impl ZeroIdentity {
    pub const ALL: [ZeroIdentity; 4] =
        [ZeroIdentity::AlphaP, ZeroIdentity::AlphaI, ZeroIdentity::BetaP, ZeroIdentity::BetaI];

    pub fn name(self) -> &'static str {
        match self {
            ZeroIdentity::AlphaP => "e-alpha-P",
            ZeroIdentity::AlphaI => "e-alpha-I",
            ZeroIdentity::BetaP => "e'-beta-P",
            ZeroIdentity::BetaI => "e'-beta-I",
        }
    }

    /// j at which the identity's pair of connecting arrows is one side of (f).
    fn f_index(self, cfg: &Config) -> i64 {
        match self {
            ZeroIdentity::AlphaP | ZeroIdentity::AlphaI => cfg.big_n() + 1,
            ZeroIdentity::BetaP | ZeroIdentity::BetaI => 0,
        }
    }

    /// The tube the rewritten word travels through.
    fn tube(self) -> Component {
        match self {
            ZeroIdentity::AlphaP | ZeroIdentity::AlphaI => Component::TubeInner,
            ZeroIdentity::BetaP | ZeroIdentity::BetaI => Component::TubeOuter,
        }
    }

    fn extra(self) -> Anchor {
        match self {
            ZeroIdentity::AlphaP | ZeroIdentity::BetaI => Anchor::StartFixed,
            ZeroIdentity::AlphaI | ZeroIdentity::BetaP => Anchor::EndFixed,
        }
    }

    fn before(self) -> bool {
        matches!(self, ZeroIdentity::AlphaP | ZeroIdentity::BetaP)
    }
}

/// Directed derivation of a zero relation: swap the short side of (f) for
/// the long side, move the extra elementary move into the tube through a
/// diamond, then push all downward steps to the left.
pub fn derive_zero(ctx: &RelationContext, id: ZeroIdentity, with_extra: bool) -> Result<Reduction, String> {
    let cfg = &ctx.cfg;
    let j = id.f_index(cfg);
    let (s1, s2) = f_sides(j, cfg);
    let (short, long) = if id.f_index(cfg) == 0 { (s1, s2) } else { (s2, s1) };
    let base = f_source(cfg);
    let extra = e(id.extra());
    let (source, original, rewritten) = match (with_extra, id.before()) {
        (false, _) => (base, short.clone(), long.clone()),
        (true, true) => {
            let s = elementary_step_back(&base, id.extra()).ok_or("no predecessor")?;
            (s, extra.clone().then(short.clone()), extra.clone().then(long.clone()))
        }
        (true, false) => (base, short.clone().then(extra.clone()), long.clone().then(extra.clone())),
    };
    let err = |e: MoveError| e.to_string();
    let v0 = evaluate_word(&original, &source, cfg).map_err(err)?;
    let v1 = evaluate_word(&rewritten, &source, cfg).map_err(err)?;
    if v0 != v1 || v0.is_zero() {
        return Err(format!("relation (f) at j={j} changes the value: {v0} vs {v1}"));
    }
    let mut log = vec![];
    let mut word = rewritten;
    if with_extra {
        let at = if id.before() { 0 } else { word.len() - 2 };
        let arcs = arcs_along(&word, &source, cfg).map_err(err)?;
        let src = arcs[at].ok_or("zero before the diamond")?;
        let rule = ctx
            .diamonds
            .lookup(&src, &word.steps[at..at + 2])
            .next()
            .ok_or_else(|| format!("no diamond at {src} for {}", MoveWord::new(word.steps[at..at + 2].to_vec())))?;
        log.push((rule.kind, at));
        word = splice(&word, at, 2, &rule.rhs);
        let v2 = evaluate_word(&word, &source, cfg).map_err(err)?;
        if v2 != v0 {
            return Err(format!("diamond changed the value: {v0} vs {v2}"));
        }
    }
    let mut red = push_down(&word, &source, id.tube(), &ctx.mesh, cfg)?;
    if !red.zero {
        let v3 = evaluate_word(&red.word, &source, cfg).map_err(err)?;
        if v3 != v0 {
            return Err(format!("mesh swaps changed the value: {v0} vs {v3}"));
        }
    }
    log.append(&mut red.log);
    red.log = log;
    Ok(red)
}

pub fn verify_e_with(ctx: &RelationContext) -> Report {
    let mut r = Report::new();
    for id in ZeroIdentity::ALL {
        r.push(match derive_zero(ctx, id, true) {
            Ok(red) if red.zero => CheckResult::pass(
                id.name(),
                format!(
                    "zero after {} mesh swaps; {}",
                    red.count(|k| k == RuleKind::MeshSwap),
                    red.log.first().map(|(k, _)| k.to_string()).unwrap_or_default()
                ),
            ),
            Ok(red) => CheckResult::fail(id.name(), "no zero relation reached", red.word.to_string()),
            Err(w) => CheckResult::fail(id.name(), "derivation failed", w),
        });
    }
    let target = f_inverse(&BrustleVertex::I { r: ctx.cfg.ghm(), i: 0 }, &ctx.cfg).expect("in truncation");
    for id in [ZeroIdentity::AlphaP, ZeroIdentity::BetaP] {
        let name = format!("{}-without-extra-move", id.name());
        r.push(match derive_zero(ctx, id, false) {
            Ok(red) if !red.zero => {
                let v = evaluate_word(&red.word, &f_source(&ctx.cfg), &ctx.cfg).ok().and_then(|z| z.arc());
                if v.map(|l| project(&l, &ctx.cfg)) == Some(target) {
                    CheckResult::pass(name, format!("nonzero, equals {target} after {} swaps", red.log.len()))
                } else {
                    CheckResult::fail(name, "nonzero but wrong value", format!("{v:?}"))
                }
            }
            Ok(red) => CheckResult::fail(name, "reached zero without the extra move", red.witness()),
            Err(w) => CheckResult::fail(name, "derivation failed", w),
        });
    }
    r
}

pub fn verify_e(cfg: &Config) -> Report {
    verify_e_with(&RelationContext::new(cfg))
}

fn endpoint_set(l: &LiftArc) -> HashSet<LiftPoint> {
    l.endpoints().into_iter().collect()
}

/// Both paths of a square agree on lifts and the four arcs form a
/// quadrilateral: `X`, `Z` disjoint, `Y1`, `Y2` disjoint, each side meeting
/// each of `X` and `Z` once.
pub fn check_square(x: &LiftArc, y1: &LiftArc, z1: &LiftArc, y2: &LiftArc, z2: &LiftArc) -> Result<(), String> {
    if z1 != z2 {
        return Err(format!("paths from {x} end at {z1} and {z2}"));
    }
    let (xs, zs, a, b) = (endpoint_set(x), endpoint_set(z1), endpoint_set(y1), endpoint_set(y2));
    let all: HashSet<LiftPoint> = xs.iter().chain(&zs).chain(&a).chain(&b).copied().collect();
    let ok = xs.is_disjoint(&zs)
        && a.is_disjoint(&b)
        && [&a, &b].iter().all(|s| s.intersection(&xs).count() == 1 && s.intersection(&zs).count() == 1)
        && all.len() == 4;
    if ok {
        Ok(())
    } else {
        Err(format!("{x}, {y1}, {y2}, {z1} do not form a quadrilateral"))
    }
}

pub fn verify_diamonds(q: &ArcQuiver, cfg: &Config) -> Report {
    let mut r = Report::new();
    let mut by_case: HashMap<DiamondCase, usize> = HashMap::new();
    let mut bad = None;
    for d in find_diamonds(q, cfg) {
        *by_case.entry(d.case).or_default() += 1;
        let x = d.x.canonical();
        let y1 = anchored_lift(&x, d.long_anchor, &d.y1, cfg).expect("long");
        let z1 = elementary_step(&y1, d.elementary_anchor).expect("diamond");
        let y2 = elementary_step(&x, d.elementary_anchor).expect("diamond");
        let z2 = anchored_lift(&y2, d.long_anchor, &d.z, cfg).expect("long");
        if let Err(w) = check_square(&x, &y1, &z1, &y2, &z2) {
            bad.get_or_insert(format!("{:?}: {w}", d.case));
        }
    }
    let mut cases: Vec<_> = by_case.into_iter().collect();
    cases.sort();
    let all_cases = cases.len() == 4;
    r.push(CheckResult::from_witness(
        "diamonds-commute",
        format!("{cases:?}"),
        bad.or_else(|| (!all_cases).then(|| "some diamond case has no instance".to_string())),
    ));

    let mut meshes = 0;
    let mut mesh_bad = None;
    for rule in generate_mesh_relations(q, cfg).iter().filter(|r| r.kind == RuleKind::MeshSwap) {
        meshes += 1;
        let x = rule.source.canonical();
        let t1 = trace_word(&MoveWord::new(rule.lhs.clone()), &x, cfg);
        let t2 = trace_word(&MoveWord::new(rule.rhs.clone()), &x, cfg);
        let res = match (t1, t2) {
            (Ok(a), Ok(b)) => match (a[1].arc(), a[2].arc(), b[1].arc(), b[2].arc()) {
                (Some(y1), Some(z1), Some(y2), Some(z2)) => check_square(&x, &y1, &z1, &y2, &z2),
                _ => Err(format!("zero inside mesh at {x}")),
            },
            _ => Err(format!("mesh at {x} does not evaluate")),
        };
        if let Err(w) = res {
            mesh_bad.get_or_insert(w);
        }
    }
    r.push(CheckResult::from_witness("mesh-squares-commute", format!("{meshes} directed mesh squares"), mesh_bad));
    r
}

/// For each long arrow `u → v`, every anchored elementary successor of `v`
/// and every anchored predecessor of `u` inside the truncation is again
/// joined by a long arrow.
pub fn verify_factoring(q: &ArcQuiver, cfg: &Config) -> Report {
    let long: HashSet<(usize, usize)> =
        q.arrows().iter().filter(|a| a.kind == ArrowKind::Long).map(|a| (a.src, a.dst)).collect();
    let mut bad = None;
    let mut checked = 0usize;
    for a in q.arrows().iter().filter(|a| a.kind == ArrowKind::Long) {
        let an = a.label.anchor;
        let u = q.vertex(a.src).canonical();
        let vl = anchored_lift(&u, an, q.vertex(a.dst), cfg).expect("long");
        let walks = [(vl, a.dst, true), (u, a.src, false)];
        for (start, comp_of, fwd) in walks {
            let comp = q.component(comp_of);
            let mut cur = start;
            loop {
                let next = if fwd { elementary_step(&cur, an) } else { elementary_step_back(&cur, an) };
                let Some(n) = next else { break };
                let Some(id) = vertex_of(q, &n, cfg).filter(|&i| q.component(i) == comp) else { break };
                checked += 1;
                let pair = if fwd { (a.src, id) } else { (id, a.dst) };
                if !long.contains(&pair) && bad.is_none() {
                    bad =
                        Some(format!("{} -> {} does not extend to {}", q.vertex(a.src), q.vertex(a.dst), q.vertex(id)));
                }
                cur = n;
            }
        }
    }
    let mut r = Report::new();
    r.push(CheckResult::from_witness(
        "long-moves-factor",
        format!("{} long arrows, {checked} extensions checked", long.len()),
        bad,
    ));
    r
}

/// Number of long arrows by kind of move, for reporting.
pub fn long_arrow_count(q: &ArcQuiver) -> usize {
    q.arrows().iter().filter(|a| a.label.kind == MoveKind::Long).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::parse_arc;

    fn ctx211() -> RelationContext {
        RelationContext::new(&Config::new(2, 1, 1).unwrap())
    }

    #[test]
    fn mouth_meshes_are_zero_rules() {
        let c = Config::new(3, 2, 1).unwrap();
        let ctx = RelationContext::new(&c);
        assert_eq!(ctx.mesh.count(|k| k == RuleKind::ZeroKill), 5);
        let mouth = parse_arc("[0o,2o]", &c).unwrap();
        let zero = ctx.mesh.lookup(&mouth, &[Step::Elementary(Anchor::EndFixed), Step::Elementary(Anchor::StartFixed)]);
        assert_eq!(zero.count(), 1);
    }

    #[test]
    fn diamond_case_a_example() {
        let c = Config::new(3, 2, 1).unwrap();
        let q = build_gamma_bar_m(&c);
        let x = parse_arc("[0o,0i]", &c).unwrap();
        let d = find_diamonds(&q, &c)
            .into_iter()
            .find(|d| d.case == DiamondCase::A && d.x == x && d.y1 == parse_arc("[0o,2o]", &c).unwrap())
            .unwrap();
        assert_eq!(d.z, parse_arc("[-1o,2o]", &c).unwrap());
        let w = MoveWord::new(d.long_first());
        assert_eq!(evaluate_word(&w, &x.canonical(), &c).unwrap(), ZeroOrArc::Arc("[-1o,2o]".parse().unwrap()));
    }

    #[test]
    fn reduce_leaves_irreducible_words() {
        let ctx = ctx211();
        let c = &ctx.cfg;
        let src = f_source(c);
        let w = single(conn_step(BrustleLabel::Iota0(0), c));
        assert_eq!(reduce_word(&w, &src, &ctx.triangles, c).unwrap().word, w);
        let el = rep(Anchor::StartFixed, 2);
        assert_eq!(reduce_word(&el, &src, &ctx.triangles, c).unwrap().word, el);
    }

    #[test]
    fn f_spot_values() {
        let c = Config::new(3, 2, 1).unwrap();
        let l = |s: &str| ZeroOrArc::Arc(s.parse().unwrap());
        let (a, b) = f_values(1, &c).unwrap();
        assert_eq!(a, l("[-14i,-1o]"));
        assert_eq!(b, a);
        let (a, _) = f_values(0, &c).unwrap();
        assert_eq!(a, l("[-16i,-4o]"));
        assert_eq!(f_closed_forms(1, &c).1.to_string(), "[-10i,5o]");
        assert_eq!(f_closed_forms(0, &c).1.to_string(), "[-8i,8o]");
    }

    #[test]
    fn small_config_relations() {
        let ctx = ctx211();
        for rep in [verify_c1_c2_with(&ctx), verify_f_sweep(&ctx.cfg), verify_e_with(&ctx)] {
            assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
        }
        assert!(verify_diamonds(&ctx.quiver, &ctx.cfg).passed());
        assert!(verify_factoring(&ctx.quiver, &ctx.cfg).passed());
    }
}
