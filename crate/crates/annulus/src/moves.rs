//! Elementary and long moves, and lift propagation along words of moves.
//!
//! A move keeps one endpoint fixed. For an elementary move the free endpoint
//! advances one marked point, `-1` on ∂ and `+1` on ∂'. Propagating a lift
//! through a move keeps the fixed endpoint's index unchanged, which makes the
//! evaluation of a word deterministic.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    classify, injective_arc, lift, project, projective_arc, tau_pow, AnnulusArc, ArcClass, Boundary, Config, Endpoint,
    LiftArc, LiftPoint,
};
use crate::report::{CheckResult, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("arc {0} is not admissible")]
    NotAdmissible(AnnulusArc),
    #[error("lift {lift} does not project to the move source {source_arc}")]
    SourceMismatch { lift: LiftArc, source_arc: AnnulusArc },
    #[error("anchored endpoint {point} does not lie under the target {target}")]
    AnchorMismatch { point: LiftPoint, target: AnnulusArc },
    #[error("no long move from {from} to {to}")]
    NotLong { from: AnnulusArc, to: AnnulusArc },
    #[error("step {index} is not composable: {reason}")]
    Composability { index: usize, reason: String },
    #[error("{0} is not peripheral on the required boundary")]
    WrongBoundary(LiftArc),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    Elementary,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Anchor {
    StartFixed,
    EndFixed,
}

impl Anchor {
    pub fn fixed(self) -> Endpoint {
        match self {
            Anchor::StartFixed => Endpoint::Start,
            Anchor::EndFixed => Endpoint::End,
        }
    }

    pub fn free(self) -> Endpoint {
        self.fixed().other()
    }

    pub fn other(self) -> Anchor {
        match self {
            Anchor::StartFixed => Anchor::EndFixed,
            Anchor::EndFixed => Anchor::StartFixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub anchor: Anchor,
    pub source: AnnulusArc,
    pub target: AnnulusArc,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            MoveKind::Elementary => "e",
            MoveKind::Long => "L",
        };
        let a = match self.anchor {
            Anchor::StartFixed => "s",
            Anchor::EndFixed => "t",
        };
        write!(f, "{}{}:{}->{}", k, a, self.source, self.target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroOrArc {
    Zero,
    Arc(LiftArc),
}

impl ZeroOrArc {
    pub fn arc(self) -> Option<LiftArc> {
        match self {
            ZeroOrArc::Zero => None,
            ZeroOrArc::Arc(a) => Some(a),
        }
    }

    pub fn is_zero(self) -> bool {
        self == ZeroOrArc::Zero
    }
}

impl fmt::Display for ZeroOrArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroOrArc::Zero => write!(f, "0"),
            ZeroOrArc::Arc(a) => a.fmt(f),
        }
    }
}

fn with_point(a: &LiftArc, which: Endpoint, p: LiftPoint) -> Option<LiftArc> {
    match which {
        Endpoint::Start => lift(p, a.end()),
        Endpoint::End => lift(a.start(), p),
    }
    .ok()
}

/// One elementary move in the cover; `None` when the result is a boundary segment.
pub fn elementary_step(a: &LiftArc, anchor: Anchor) -> Option<LiftArc> {
    let free = anchor.free();
    let p = free.of(a);
    with_point(a, free, p.offset(p.boundary.move_direction()))
}

/// Undoes [`elementary_step`]: the arc `b` with `elementary_step(b, anchor) == a`.
pub fn elementary_step_back(a: &LiftArc, anchor: Anchor) -> Option<LiftArc> {
    let free = anchor.free();
    let p = free.of(a);
    with_point(a, free, p.offset(-p.boundary.move_direction()))
}

/// All elementary moves out of `a`, regardless of admissibility of the target.
pub fn elementary_targets(a: &AnnulusArc, cfg: &Config) -> Vec<(Anchor, AnnulusArc)> {
    [Anchor::StartFixed, Anchor::EndFixed]
        .into_iter()
        .filter_map(|an| elementary_step(&a.canonical(), an).map(|l| (an, project(&l, cfg))))
        .collect()
}

pub fn elementary_sources(a: &AnnulusArc, cfg: &Config) -> Vec<(Anchor, AnnulusArc)> {
    [Anchor::StartFixed, Anchor::EndFixed]
        .into_iter()
        .filter_map(|an| elementary_step_back(&a.canonical(), an).map(|l| (an, project(&l, cfg))))
        .collect()
}

pub fn elementary_moves(a: &AnnulusArc, cfg: &Config) -> Result<Vec<Move>, MoveError> {
    if !classify(a, cfg).is_admissible() {
        return Err(MoveError::NotAdmissible(*a));
    }
    Ok(elementary_targets(a, cfg)
        .into_iter()
        .map(|(anchor, target)| Move { kind: MoveKind::Elementary, anchor, source: *a, target })
        .collect())
}

pub fn elementary_predecessors(a: &AnnulusArc, cfg: &Config) -> Vec<Move> {
    elementary_sources(a, cfg)
        .into_iter()
        .map(|(anchor, source)| Move { kind: MoveKind::Elementary, anchor, source, target: *a })
        .collect()
}

fn same_point(p: LiftPoint, q: LiftPoint, cfg: &Config) -> bool {
    p.boundary == q.boundary && p.residue(cfg) == q.residue(cfg)
}

/// Anchor of the long move `src -> dst`, if there is one.
pub fn long_move_anchor(src: &AnnulusArc, dst: &AnnulusArc, cfg: &Config) -> Option<Anchor> {
    use ArcClass::*;
    let (s, d) = (src.canonical(), dst.canonical());
    let anchor = match (classify(src, cfg), classify(dst, cfg)) {
        (Preprojective, PeripheralOuter) => Anchor::StartFixed,
        (Preprojective, PeripheralInner) => Anchor::EndFixed,
        (PeripheralOuter, Preinjective) => Anchor::EndFixed,
        (PeripheralInner, Preinjective) => Anchor::StartFixed,
        _ => return None,
    };
    let e = anchor.fixed();
    same_point(e.of(&s), e.of(&d), cfg).then_some(anchor)
}

pub fn is_long_move(src: &AnnulusArc, dst: &AnnulusArc, cfg: &Config) -> bool {
    long_move_anchor(src, dst, cfg).is_some()
}

pub fn long_move(src: &AnnulusArc, dst: &AnnulusArc, cfg: &Config) -> Result<Move, MoveError> {
    let anchor = long_move_anchor(src, dst, cfg).ok_or(MoveError::NotLong { from: *src, to: *dst })?;
    Ok(Move { kind: MoveKind::Long, anchor, source: *src, target: *dst })
}

/// The lift of `target` whose `anchor` endpoint coincides with that of `from`.
pub fn anchored_lift(from: &LiftArc, anchor: Anchor, target: &AnnulusArc, cfg: &Config) -> Result<LiftArc, MoveError> {
    let e = anchor.fixed();
    let p = e.of(from);
    if e.of(&target.canonical()).boundary != p.boundary {
        return Err(MoveError::AnchorMismatch { point: p, target: *target });
    }
    target.lift_with(e, p.index, cfg).ok_or(MoveError::AnchorMismatch { point: p, target: *target })
}

pub fn apply_move_lift(mv: &Move, source_lift: &LiftArc, cfg: &Config) -> Result<LiftArc, MoveError> {
    if project(source_lift, cfg) != mv.source {
        return Err(MoveError::SourceMismatch { lift: *source_lift, source_arc: mv.source });
    }
    anchored_lift(source_lift, mv.anchor, &mv.target, cfg)
}

/// Long moves out of `a` with tube level at most `max_level` and
/// preinjective depth at most `max_depth`.
pub fn long_moves_bounded(a: &AnnulusArc, max_level: i64, max_depth: i64, cfg: &Config) -> Vec<Move> {
    let l = a.canonical();
    let mut targets = Vec::new();
    match classify(a, cfg) {
        ArcClass::Preprojective => {
            let (x, y) = (l.start(), l.end());
            for r in 0..=max_level {
                targets.push(lift(x, x.offset(r + 2)).expect("peripheral"));
                targets.push(lift(y.offset(-r - 2), y).expect("peripheral"));
            }
        }
        ArcClass::PeripheralOuter | ArcClass::PeripheralInner => {
            for r in 0..=max_depth {
                for j in 0..=cfg.n() {
                    let g = tau_pow(&injective_arc(j, cfg).expect("in range"), r, cfg);
                    targets.push(g.canonical());
                }
            }
        }
        _ => {}
    }
    let mut out: Vec<Move> = targets.into_iter().filter_map(|t| long_move(a, &project(&t, cfg), cfg).ok()).collect();
    out.sort();
    out.dedup();
    out
}

/// One letter of a move word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Elementary(Anchor),
    Long { anchor: Anchor, target: AnnulusArc },
}

impl Step {
    pub fn anchor(&self) -> Anchor {
        match *self {
            Step::Elementary(a) => a,
            Step::Long { anchor, .. } => anchor,
        }
    }

    pub fn is_long(&self) -> bool {
        matches!(self, Step::Long { .. })
    }

    pub fn apply(&self, from: &LiftArc, cfg: &Config) -> Result<ZeroOrArc, MoveError> {
        match self {
            Step::Elementary(an) => Ok(elementary_step(from, *an).map_or(ZeroOrArc::Zero, ZeroOrArc::Arc)),
            Step::Long { anchor, target } => {
                let src = project(from, cfg);
                if long_move_anchor(&src, target, cfg) != Some(*anchor) {
                    return Err(MoveError::NotLong { from: src, to: *target });
                }
                anchored_lift(from, *anchor, target, cfg).map(ZeroOrArc::Arc)
            }
        }
    }
}

impl From<Move> for Step {
    fn from(m: Move) -> Self {
        match m.kind {
            MoveKind::Elementary => Step::Elementary(m.anchor),
            MoveKind::Long => Step::Long { anchor: m.anchor, target: m.target },
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.anchor() {
            Anchor::StartFixed => 's',
            Anchor::EndFixed => 't',
        };
        match self {
            Step::Elementary(_) => write!(f, "e{a}"),
            Step::Long { target, .. } => write!(f, "L{a}{target}"),
        }
    }
}

/// A path of moves, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveWord {
    pub steps: Vec<Step>,
}

impl MoveWord {
    pub fn new(steps: Vec<Step>) -> Self {
        MoveWord { steps }
    }

    /// Builds a word from concrete moves, checking that consecutive moves meet.
    pub fn from_moves(moves: &[Move]) -> Result<Self, MoveError> {
        for (i, w) in moves.windows(2).enumerate() {
            if w[0].target != w[1].source {
                return Err(MoveError::Composability {
                    index: i + 1,
                    reason: format!("{} ends at {}, next starts at {}", w[0], w[0].target, w[1].source),
                });
            }
        }
        Ok(MoveWord { steps: moves.iter().map(|&m| m.into()).collect() })
    }

    pub fn repeat(step: Step, k: usize) -> Self {
        MoveWord { steps: vec![step; k] }
    }

    pub fn then(mut self, other: MoveWord) -> Self {
        self.steps.extend(other.steps);
        self
    }

    pub fn push(mut self, s: Step) -> Self {
        self.steps.push(s);
        self
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn long_count(&self) -> usize {
        self.steps.iter().filter(|s| s.is_long()).count()
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Left-to-right evaluation; Zero absorbs everything after it.
pub fn evaluate_word(w: &MoveWord, source_lift: &LiftArc, cfg: &Config) -> Result<ZeroOrArc, MoveError> {
    let mut cur = ZeroOrArc::Arc(*source_lift);
    for (i, s) in w.steps.iter().enumerate() {
        cur = match cur {
            ZeroOrArc::Zero => return Ok(ZeroOrArc::Zero),
            ZeroOrArc::Arc(l) => {
                s.apply(&l, cfg).map_err(|e| MoveError::Composability { index: i, reason: e.to_string() })?
            }
        };
    }
    Ok(cur)
}

/// Every intermediate value of [`evaluate_word`], starting with the source.
pub fn trace_word(w: &MoveWord, source_lift: &LiftArc, cfg: &Config) -> Result<Vec<ZeroOrArc>, MoveError> {
    let mut out = vec![ZeroOrArc::Arc(*source_lift)];
    for (i, s) in w.steps.iter().enumerate() {
        let next = match out[out.len() - 1] {
            ZeroOrArc::Zero => ZeroOrArc::Zero,
            ZeroOrArc::Arc(l) => {
                s.apply(&l, cfg).map_err(|e| MoveError::Composability { index: i, reason: e.to_string() })?
            }
        };
        out.push(next);
    }
    Ok(out)
}

fn require_boundary(a: &LiftArc, b: Boundary) -> Result<(), MoveError> {
    if a.start().boundary == b && a.end().boundary == b {
        Ok(())
    } else {
        Err(MoveError::WrongBoundary(*a))
    }
}

/// `g` shortening moves then `g` lengthening moves on an outer peripheral lift.
pub fn f_down_up_g(a: &LiftArc, cfg: &Config) -> Result<ZeroOrArc, MoveError> {
    require_boundary(a, Boundary::Outer)?;
    let g = cfg.g() as usize;
    let w = MoveWord::repeat(Step::Elementary(Anchor::StartFixed), g)
        .then(MoveWord::repeat(Step::Elementary(Anchor::EndFixed), g));
    evaluate_word(&w, a, cfg)
}

/// `h` shortening moves then `h` lengthening moves on an inner peripheral lift.
pub fn f_up_down_h(a: &LiftArc, cfg: &Config) -> Result<ZeroOrArc, MoveError> {
    require_boundary(a, Boundary::Inner)?;
    let h = cfg.h() as usize;
    let w = MoveWord::repeat(Step::Elementary(Anchor::EndFixed), h)
        .then(MoveWord::repeat(Step::Elementary(Anchor::StartFixed), h));
    evaluate_word(&w, a, cfg)
}

/// Reachability by elementary moves: forward from β_g and backward from γ_0.
pub struct ReachabilityOracle {
    pub forward: HashSet<AnnulusArc>,
    pub backward: HashSet<AnnulusArc>,
}

fn bfs(start: AnnulusArc, depth: usize, next: impl Fn(&AnnulusArc) -> Vec<AnnulusArc>) -> HashSet<AnnulusArc> {
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((a, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for b in next(&a) {
            if seen.insert(b) {
                queue.push_back((b, d + 1));
            }
        }
    }
    seen
}

impl ReachabilityOracle {
    pub fn new(depth: usize, cfg: &Config) -> Self {
        let bg = projective_arc(cfg.g(), cfg).expect("in range");
        let g0 = injective_arc(0, cfg).expect("in range");
        let forward = bfs(bg, depth, |a| elementary_targets(a, cfg).into_iter().map(|x| x.1).collect());
        let backward = bfs(g0, depth, |a| elementary_sources(a, cfg).into_iter().map(|x| x.1).collect());
        ReachabilityOracle { forward, backward }
    }

    pub fn class(&self, a: &AnnulusArc) -> Option<ArcClass> {
        match (self.forward.contains(a), self.backward.contains(a)) {
            (true, false) => Some(ArcClass::Preprojective),
            (false, true) => Some(ArcClass::Preinjective),
            (false, false) => None,
            (true, true) => panic!("{a} reached from both ends"),
        }
    }
}

/// Canonical arcs whose end index lies in `[-w, w]`.
pub fn window_arcs(w: i64, cfg: &Config) -> Vec<AnnulusArc> {
    let mut out = Vec::new();
    for sb in [Boundary::Outer, Boundary::Inner] {
        for s in 0..cfg.period(sb) {
            for eb in [Boundary::Outer, Boundary::Inner] {
                for e in -w..=w {
                    let p = LiftPoint { boundary: sb, index: s };
                    if let Ok(l) = lift(p, LiftPoint { boundary: eb, index: e }) {
                        out.push(project(&l, cfg));
                    }
                }
            }
        }
    }
    out
}

/// Compares [`classify`] against elementary-move reachability on a window.
pub fn verify_classification(cfg: &Config) -> Report {
    let w = 4 * (cfg.n() + 1);
    let oracle = ReachabilityOracle::new(12 * (cfg.n() + 1) as usize, cfg);
    let arcs = window_arcs(w, cfg);
    let mut bad = None;
    let mut counts = [0usize; 3];
    for a in &arcs {
        let c = classify(a, cfg);
        let expected = oracle.class(a);
        let agree = match c {
            ArcClass::Preprojective | ArcClass::Preinjective => expected == Some(c),
            _ => expected.is_none(),
        };
        match c {
            ArcClass::Preprojective => counts[0] += 1,
            ArcClass::Preinjective => counts[1] += 1,
            _ => counts[2] += 1,
        }
        if !agree && bad.is_none() {
            bad = Some(format!("{a}: closed form {c:?}, reachability {expected:?}"));
        }
    }
    let mut r = Report::new();
    r.push(CheckResult::from_witness(
        "classify-vs-reachability",
        format!("{} arcs, {} preprojective, {} preinjective, {} other", arcs.len(), counts[0], counts[1], counts[2]),
        bad,
    ));
    r
}
