//! Integer model of the annulus, its universal cover and the arcs between
//! marked points.
//!
//! Marked points on the outer boundary ∂ are written `i_∂` (`"io"` in text
//! form) and points on the inner boundary ∂' are `j_∂'` (`"ji"`). The deck
//! transformation σ moves outer indices by `g` and inner indices by `h`, so an
//! arc of the annulus is a σ-orbit of lifted arcs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("need g >= h >= 1, got g={g}, h={h}")]
    BadRanks { g: i64, h: i64 },
    #[error("truncation parameter m must be >= 1, got {0}")]
    BadTruncation(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("boundary segment [{start},{end}] is not an arc (gap must be at least 2)")]
    BoundarySegment { start: LiftPoint, end: LiftPoint },
    #[error("cannot parse arc {0:?}; expected e.g. \"[0o,2i]\"")]
    Parse(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("peripheral arc {0} has no reversed orientation")]
    NotBridging(AnnulusArc),
}

/// Annulus parameters: `g` points on ∂, `h` points on ∂', truncation `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct Config {
    g: i64,
    h: i64,
    m: i64,
}

#[derive(Deserialize)]
struct RawConfig {
    g: i64,
    h: i64,
    m: i64,
}

impl TryFrom<RawConfig> for Config {
    type Error = ConfigError;
    fn try_from(raw: RawConfig) -> Result<Self, Self::Error> {
        Config::new(raw.g, raw.h, raw.m)
    }
}

impl Config {
    pub fn new(g: i64, h: i64, m: i64) -> Result<Self, ConfigError> {
        if h < 1 || g < h {
            return Err(ConfigError::BadRanks { g, h });
        }
        if m < 1 {
            return Err(ConfigError::BadTruncation(m));
        }
        Ok(Config { g, h, m })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// `n = g + h - 1`; the quiver has `n + 1` vertices.
    pub fn n(&self) -> i64 {
        self.g + self.h - 1
    }

    /// Tube truncation size `2m(n+1)`.
    pub fn big_n(&self) -> i64 {
        2 * self.m * (self.n() + 1)
    }

    /// Number of τ-steps kept in the preprojective and preinjective parts.
    pub fn ghm(&self) -> i64 {
        self.g * self.h * self.m
    }

    /// Period of the marked points on a boundary under σ.
    pub fn period(&self, b: Boundary) -> i64 {
        match b {
            Boundary::Outer => self.g,
            Boundary::Inner => self.h,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Boundary {
    Outer,
    Inner,
}

impl Boundary {
    fn suffix(self) -> char {
        match self {
            Boundary::Outer => 'o',
            Boundary::Inner => 'i',
        }
    }

    /// Direction in which an elementary move pushes a free endpoint.
    pub fn move_direction(self) -> i64 {
        match self {
            Boundary::Outer => -1,
            Boundary::Inner => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiftPoint {
    pub boundary: Boundary,
    pub index: i64,
}

impl LiftPoint {
    pub fn outer(index: i64) -> Self {
        LiftPoint { boundary: Boundary::Outer, index }
    }

    pub fn inner(index: i64) -> Self {
        LiftPoint { boundary: Boundary::Inner, index }
    }

    pub fn shifted(self, t: i64, cfg: &Config) -> Self {
        LiftPoint { index: self.index + t * cfg.period(self.boundary), ..self }
    }

    pub fn offset(self, d: i64) -> Self {
        LiftPoint { index: self.index + d, ..self }
    }

    /// The marked point of the annulus this lift sits over.
    pub fn residue(self, cfg: &Config) -> i64 {
        self.index.rem_euclid(cfg.period(self.boundary))
    }
}

impl fmt::Display for LiftPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, self.boundary.suffix())
    }
}

impl FromStr for LiftPoint {
    type Err = ArcError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ArcError::Parse(s.to_string());
        let (num, b) = s.split_at(s.len().checked_sub(1).ok_or_else(err)?);
        let boundary = match b {
            "o" => Boundary::Outer,
            "i" => Boundary::Inner,
            _ => return Err(err()),
        };
        let index = num.trim().parse::<i64>().map_err(|_| err())?;
        Ok(LiftPoint { boundary, index })
    }
}

/// An oriented arc in the universal cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLift")]
pub struct LiftArc {
    start: LiftPoint,
    end: LiftPoint,
}

#[derive(Deserialize)]
struct RawLift {
    start: LiftPoint,
    end: LiftPoint,
}

impl TryFrom<RawLift> for LiftArc {
    type Error = ArcError;
    fn try_from(raw: RawLift) -> Result<Self, Self::Error> {
        LiftArc::new(raw.start, raw.end)
    }
}

impl LiftArc {
    /// Rejects same-boundary pairs spanning fewer than two boundary steps.
    pub fn new(start: LiftPoint, end: LiftPoint) -> Result<Self, ArcError> {
        if start.boundary == end.boundary && start.index > end.index - 2 {
            return Err(ArcError::BoundarySegment { start, end });
        }
        Ok(LiftArc { start, end })
    }

    pub fn start(&self) -> LiftPoint {
        self.start
    }

    pub fn end(&self) -> LiftPoint {
        self.end
    }

    pub fn is_bridging(&self) -> bool {
        self.start.boundary != self.end.boundary
    }

    pub fn endpoints(&self) -> [LiftPoint; 2] {
        [self.start, self.end]
    }

    /// Tube level of a peripheral lift: `end - start - 2`.
    pub fn level(&self) -> Option<i64> {
        (!self.is_bridging()).then(|| self.end.index - self.start.index - 2)
    }

    fn map_points(&self, f: impl Fn(LiftPoint) -> LiftPoint) -> LiftArc {
        LiftArc { start: f(self.start), end: f(self.end) }
    }
}

impl fmt::Display for LiftArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

impl FromStr for LiftArc {
    type Err = ArcError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner =
            t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| ArcError::Parse(s.to_string()))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| ArcError::Parse(s.to_string()))?;
        LiftArc::new(a.parse()?, b.parse()?)
    }
}

/// An arc of the annulus, stored through its canonical lift: the start index
/// lies in `0..g` (outer start) or `0..h` (inner start).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AnnulusArc {
    canonical: LiftArc,
}

impl AnnulusArc {
    pub fn canonical(&self) -> LiftArc {
        self.canonical
    }

    pub fn is_bridging(&self) -> bool {
        self.canonical.is_bridging()
    }

    /// The lift whose index sum lies in `[-g, h-1]`. Only meaningful for
    /// bridging arcs, where σ changes the sum by `g + h`.
    pub fn balanced_lift(&self, cfg: &Config) -> LiftArc {
        let l = self.canonical;
        let k = l.start.index + l.end.index + cfg.g();
        let t = -k.div_euclid(cfg.n() + 1);
        sigma_shift(&l, t, cfg)
    }

    /// The lift whose endpoint on `which` side has index exactly `index`, if
    /// that index lies over the same marked point.
    pub fn lift_with(&self, which: Endpoint, index: i64, cfg: &Config) -> Option<LiftArc> {
        let p = which.of(&self.canonical);
        let period = cfg.period(p.boundary);
        let d = index - p.index;
        (d.rem_euclid(period) == 0).then(|| sigma_shift(&self.canonical, d / period, cfg))
    }
}

impl fmt::Display for AnnulusArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

/// Selects one endpoint of an oriented arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Endpoint {
    Start,
    End,
}

impl Endpoint {
    pub fn of(self, a: &LiftArc) -> LiftPoint {
        match self {
            Endpoint::Start => a.start,
            Endpoint::End => a.end,
        }
    }

    pub fn other(self) -> Endpoint {
        match self {
            Endpoint::Start => Endpoint::End,
            Endpoint::End => Endpoint::Start,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcClass {
    Preprojective,
    Preinjective,
    PeripheralOuter,
    PeripheralInner,
    NotAdmissible,
}

impl ArcClass {
    pub fn is_admissible(self) -> bool {
        self != ArcClass::NotAdmissible
    }

    pub fn is_peripheral(self) -> bool {
        matches!(self, ArcClass::PeripheralOuter | ArcClass::PeripheralInner)
    }
}

/// Representative of `x mod p` in `1..=p`.
pub fn norm_mod(x: i64, p: i64) -> i64 {
    let r = x.rem_euclid(p);
    if r == 0 {
        p
    } else {
        r
    }
}

pub fn sigma_shift(a: &LiftArc, t: i64, cfg: &Config) -> LiftArc {
    a.map_points(|p| p.shifted(t, cfg))
}

pub fn project(a: &LiftArc, cfg: &Config) -> AnnulusArc {
    let t = -a.start.index.div_euclid(cfg.period(a.start.boundary));
    AnnulusArc { canonical: sigma_shift(a, t, cfg) }
}

/// Parses `[<int><o|i>,<int><o|i>]` and projects it.
pub fn parse_arc(s: &str, cfg: &Config) -> Result<AnnulusArc, ArcError> {
    Ok(project(&s.parse()?, cfg))
}

pub fn lift(start: LiftPoint, end: LiftPoint) -> Result<LiftArc, ArcError> {
    LiftArc::new(start, end)
}

fn check_index(i: i64, cfg: &Config) -> Result<(), ArcError> {
    if (0..=cfg.n()).contains(&i) {
        Ok(())
    } else {
        Err(ArcError::IndexOutOfRange { index: i, max: cfg.n() })
    }
}

/// β_i, the arc of the i-th indecomposable projective.
pub fn projective_arc(i: i64, cfg: &Config) -> Result<AnnulusArc, ArcError> {
    check_index(i, cfg)?;
    let g = cfg.g();
    let l = if i <= g {
        LiftArc::new(LiftPoint::outer(i - g), LiftPoint::inner(0))
    } else {
        LiftArc::new(LiftPoint::outer(0), LiftPoint::inner(i - g))
    }?;
    Ok(project(&l, cfg))
}

/// γ_i, the arc of the i-th indecomposable injective.
pub fn injective_arc(i: i64, cfg: &Config) -> Result<AnnulusArc, ArcError> {
    check_index(i, cfg)?;
    let g = cfg.g();
    let l = if i <= g {
        LiftArc::new(LiftPoint::inner(-2), LiftPoint::outer(i - g + 2))
    } else {
        LiftArc::new(LiftPoint::inner(i - g - 2), LiftPoint::outer(2))
    }?;
    Ok(project(&l, cfg))
}

fn tau_step(p: LiftPoint, k: i64) -> LiftPoint {
    match p.boundary {
        Boundary::Outer => p.offset(k),
        Boundary::Inner => p.offset(-k),
    }
}

/// τ^k on lifts: outer indices move by `+k`, inner by `-k`.
pub fn tau_pow_lift(a: &LiftArc, k: i64) -> LiftArc {
    a.map_points(|p| tau_step(p, k))
}

pub fn tau(a: &AnnulusArc, cfg: &Config) -> AnnulusArc {
    project(&tau_pow_lift(&a.canonical, 1), cfg)
}

pub fn tau_inv(a: &AnnulusArc, cfg: &Config) -> AnnulusArc {
    project(&tau_pow_lift(&a.canonical, -1), cfg)
}

pub fn tau_pow(a: &AnnulusArc, k: i64, cfg: &Config) -> AnnulusArc {
    project(&tau_pow_lift(&a.canonical, k), cfg)
}

/// Swaps start and end of a bridging arc.
pub fn reverse_orientation(a: &AnnulusArc, cfg: &Config) -> Result<AnnulusArc, ArcError> {
    if !a.is_bridging() {
        return Err(ArcError::NotBridging(*a));
    }
    let l = a.canonical;
    Ok(project(&LiftArc { start: l.end, end: l.start }, cfg))
}

/// Closed-form classification. A bridging arc ∂→∂' is preprojective when its
/// balanced lift `(x, y)` has `y >= 0` (sum `<= 0`) or `x <= 0` (sum `>= 1`);
/// the preinjective test mirrors this with the shift by 2.
pub fn classify(a: &AnnulusArc, cfg: &Config) -> ArcClass {
    let l = a.canonical;
    match (l.start.boundary, l.end.boundary) {
        (Boundary::Outer, Boundary::Outer) => ArcClass::PeripheralOuter,
        (Boundary::Inner, Boundary::Inner) => ArcClass::PeripheralInner,
        (Boundary::Outer, Boundary::Inner) => {
            if preprojective_coords(a, cfg).is_some() {
                ArcClass::Preprojective
            } else {
                ArcClass::NotAdmissible
            }
        }
        (Boundary::Inner, Boundary::Outer) => {
            if preinjective_coords(a, cfg).is_some() {
                ArcClass::Preinjective
            } else {
                ArcClass::NotAdmissible
            }
        }
    }
}

/// `(r, i)` with `a = τ^{-r} β_i`, if `a` is preprojective.
pub fn preprojective_coords(a: &AnnulusArc, cfg: &Config) -> Option<(i64, i64)> {
    if a.canonical.start.boundary != Boundary::Outer || !a.is_bridging() {
        return None;
    }
    let b = a.balanced_lift(cfg);
    let (x, y) = (b.start.index, b.end.index);
    let d = x + y;
    let r = if d <= 0 { y } else { -x };
    (r >= 0).then_some((r, d + cfg.g()))
}

/// `(r, j)` with `a = τ^r γ_j`, if `a` is preinjective.
pub fn preinjective_coords(a: &AnnulusArc, cfg: &Config) -> Option<(i64, i64)> {
    if a.canonical.start.boundary != Boundary::Inner || !a.is_bridging() {
        return None;
    }
    let b = a.balanced_lift(cfg);
    let (u, v) = (b.start.index, b.end.index);
    let d = u + v;
    let r = if d <= 0 { -2 - u } else { v - 2 };
    (r >= 0).then_some((r, d + cfg.g()))
}

/// Rendering position of a marked point in the strip model of the cover.
pub fn embedding_coords(p: LiftPoint, cfg: &Config) -> (i64, i64) {
    match p.boundary {
        Boundary::Outer => (p.index * cfg.h(), 0),
        Boundary::Inner => (p.index * cfg.g(), 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg32() -> Config {
        Config::new(3, 2, 1).unwrap()
    }

    fn arc(s: &str) -> AnnulusArc {
        parse_arc(s, &cfg32()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(Config::new(1, 2, 1).is_err());
        assert!(Config::new(2, 0, 1).is_err());
        assert!(Config::new(2, 1, 0).is_err());
        let c = cfg32();
        assert_eq!((c.n(), c.big_n(), c.ghm()), (4, 10, 6));
    }

    #[test]
    fn sigma_examples() {
        let c = cfg32();
        let a: LiftArc = "[0o,0i]".parse().unwrap();
        assert_eq!(sigma_shift(&a, 1, &c).to_string(), "[3o,2i]");
        let b: LiftArc = "[-3o,0i]".parse().unwrap();
        assert_eq!(sigma_shift(&b, 1, &c).to_string(), "[0o,2i]");
        assert_eq!(sigma_shift(&b, 0, &c), b);
    }

    #[test]
    fn project_examples() {
        assert_eq!(arc("[-3o,0i]").to_string(), "[0o,2i]");
        assert_eq!(arc("[0o,5o]").to_string(), "[0o,5o]");
        assert_eq!(arc("[-2i,-1o]").to_string(), "[0i,2o]");
        assert!("[0o,1o]".parse::<LiftArc>().is_err());
        assert!("[3i,4i]".parse::<LiftArc>().is_err());
    }

    #[test]
    fn projective_and_injective_arcs() {
        let c = cfg32();
        assert_eq!(projective_arc(3, &c).unwrap(), arc("[0o,0i]"));
        assert_eq!(projective_arc(4, &c).unwrap(), arc("[0o,1i]"));
        assert_eq!(injective_arc(0, &c).unwrap(), arc("[-2i,-1o]"));
        assert!(projective_arc(5, &c).is_err());
    }

    #[test]
    fn tau_examples() {
        let c = cfg32();
        assert_eq!(tau(&arc("[0o,0i]"), &c), arc("[1o,-1i]"));
        assert_eq!(tau(&arc("[0o,5o]"), &c), arc("[1o,6o]"));
        let a = arc("[2i,9i]");
        assert_eq!(tau_inv(&tau(&a, &c), &c), a);
    }

    #[test]
    fn classify_examples() {
        let c = cfg32();
        assert_eq!(classify(&arc("[0o,0i]"), &c), ArcClass::Preprojective);
        assert_eq!(classify(&arc("[1o,-1i]"), &c), ArcClass::NotAdmissible);
        assert_eq!(classify(&arc("[5o,0i]"), &c), ArcClass::NotAdmissible);
        assert_eq!(classify(&arc("[0o,5o]"), &c), ArcClass::PeripheralOuter);
        assert_eq!(classify(&arc("[0i,2i]"), &c), ArcClass::PeripheralInner);
        assert_eq!(classify(&injective_arc(0, &c).unwrap(), &c), ArcClass::Preinjective);
    }

    #[test]
    fn coordinates_invert_tau_orbits() {
        let c = cfg32();
        for i in 0..=c.n() {
            for r in 0..8 {
                let p = tau_pow(&projective_arc(i, &c).unwrap(), -r, &c);
                assert_eq!(preprojective_coords(&p, &c), Some((r, i)));
                let q = tau_pow(&injective_arc(i, &c).unwrap(), r, &c);
                assert_eq!(preinjective_coords(&q, &c), Some((r, i)));
            }
        }
    }

    #[test]
    fn reversal_of_tau_squared_projectives() {
        let c = cfg32();
        for i in 0..=c.n() {
            let b = tau_pow(&projective_arc(i, &c).unwrap(), 2, &c);
            assert_eq!(reverse_orientation(&b, &c).unwrap(), injective_arc(i, &c).unwrap());
        }
    }

    #[test]
    fn embedding_examples() {
        let c = cfg32();
        assert_eq!(embedding_coords(LiftPoint::outer(1), &c), (2, 0));
        assert_eq!(embedding_coords(LiftPoint::inner(1), &c), (3, 1));
        assert_eq!(embedding_coords(LiftPoint::outer(0), &c), (0, 0));
    }
}
