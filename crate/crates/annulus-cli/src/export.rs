//! Serializable snapshots of the three quivers, plus DOT rendering.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use annulus::arquiver::{build_gamma_bar_m, mesh_check, ArcQuiver, MoveLabel};
use annulus::brustle::build_qm_prime;
use annulus::cluster::{build_cluster_quiver_m, verify_stable_translation};
use annulus::correspondence::{f_inverse, f_vertex, verify_bijection};
use annulus::geometry::parse_arc;
use annulus::moves::{Anchor, MoveKind};
use annulus::quiver::{ArrowKind, Component, Quiver};
use annulus::{Config, Report};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Truncated quiver of oriented arcs with long moves.
    Ar,
    /// Unoriented arcs with the extra slice.
    Cluster,
    /// Coordinate quiver with connecting arrows.
    Brustle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub g: i64,
    pub h: i64,
    pub m: i64,
    pub n: i64,
    #[serde(rename = "N")]
    pub big_n: i64,
}

impl From<&Config> for ConfigEcho {
    fn from(c: &Config) -> Self {
        ConfigEcho { g: c.g(), h: c.h(), m: c.m(), n: c.n(), big_n: c.big_n() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportVertex {
    pub id: usize,
    pub component: Component,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brustle: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportArrow {
    pub src: usize,
    pub dst: usize,
    pub kind: ArrowKind,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportDocument {
    pub mode: Mode,
    pub config: ConfigEcho,
    pub vertices: Vec<ExportVertex>,
    pub arrows: Vec<ExportArrow>,
    pub tau: Vec<(usize, usize)>,
    pub report: Report,
}

#[derive(Debug)]
pub enum ImportError {
    Json(serde_json::Error),
    Config(annulus::ConfigError),
    Vertex(usize, String),
    Label(String),
    Mode(Mode),
}

impl std::fmt::Display for ImportError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ImportError::Json(e) => write!(f, "invalid document: {e}"),
            ImportError::Config(e) => write!(f, "invalid config: {e}"),
            ImportError::Vertex(id, why) => write!(f, "vertex {id}: {why}"),
            ImportError::Label(l) => write!(f, "unknown arrow label {l:?}"),
            ImportError::Mode(m) => write!(f, "expected an ar document, got {m:?}"),
        }
    }
}

impl std::error::Error for ImportError {}

/// Vertex order: component first, then the builder's orbit/column/level order.
fn export_quiver<V: Clone + Eq + Hash, L: ToString>(
    q: &Quiver<V, L>,
    describe: impl Fn(&V) -> (Option<String>, Option<String>),
) -> (Vec<ExportVertex>, Vec<ExportArrow>, Vec<(usize, usize)>) {
    let mut order: Vec<usize> = (0..q.vertex_count()).collect();
    order.sort_by_key(|&v| (q.component(v), v));
    let mut new_id = vec![0; q.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        new_id[v] = i;
    }
    let vertices = order
        .iter()
        .enumerate()
        .map(|(id, &v)| {
            let (arc, brustle) = describe(q.vertex(v));
            ExportVertex { id, component: q.component(v), arc, brustle }
        })
        .collect();
    let mut arrows: Vec<ExportArrow> = q
        .arrows()
        .iter()
        .map(|a| ExportArrow { src: new_id[a.src], dst: new_id[a.dst], kind: a.kind, label: a.label.to_string() })
        .collect();
    arrows.sort_by(|a, b| (a.src, a.dst, a.kind, &a.label).cmp(&(b.src, b.dst, b.kind, &b.label)));
    let mut tau: Vec<(usize, usize)> = q.tau_pairs().map(|(v, w)| (new_id[v], new_id[w])).collect();
    tau.sort_unstable();
    (vertices, arrows, tau)
}

impl ExportDocument {
    pub fn build(mode: Mode, cfg: &Config) -> Self {
        let (vertices, arrows, tau, report) = match mode {
            Mode::Ar => {
                let q = build_gamma_bar_m(cfg);
                let (report, _) = mesh_check(&q, cfg);
                let (v, a, t) =
                    export_quiver(&q, |arc| (Some(arc.to_string()), f_vertex(arc, cfg).ok().map(|b| b.to_string())));
                (v, a, t, report)
            }
            Mode::Cluster => {
                let q = build_cluster_quiver_m(cfg);
                let report = verify_stable_translation(&q, cfg);
                let (v, a, t) = export_quiver(&q, |u| {
                    (Some(u.to_string()), f_vertex(&u.representative(), cfg).ok().map(|b| b.to_string()))
                });
                (v, a, t, report)
            }
            Mode::Brustle => {
                let q = build_qm_prime(cfg);
                let report = verify_bijection(cfg);
                let (v, a, t) =
                    export_quiver(&q, |b| (f_inverse(b, cfg).ok().map(|a| a.to_string()), Some(b.to_string())));
                (v, a, t, report)
            }
        };
        ExportDocument { mode, config: cfg.into(), vertices, arrows, tau, report }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, ImportError> {
        serde_json::from_str(s).map_err(ImportError::Json)
    }

    pub fn config(&self) -> Result<Config, ImportError> {
        Config::new(self.config.g, self.config.h, self.config.m).map_err(ImportError::Config)
    }

    /// Plain graph view keyed by export id.
    pub fn to_quiver(&self) -> Quiver<usize, String> {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v.id, v.component);
        }
        for a in &self.arrows {
            q.add_arrow(a.src, a.dst, a.kind, a.label.clone());
        }
        for &(v, w) in &self.tau {
            q.set_tau(v, w);
        }
        q
    }

    /// Rebuilds the arc quiver of an `ar` document, parsing every arc and label.
    pub fn to_arc_quiver(&self) -> Result<ArcQuiver, ImportError> {
        if self.mode != Mode::Ar {
            return Err(ImportError::Mode(self.mode));
        }
        let cfg = self.config()?;
        let mut q = ArcQuiver::new();
        for v in &self.vertices {
            let text = v.arc.as_deref().ok_or_else(|| ImportError::Vertex(v.id, "missing arc".into()))?;
            let arc = parse_arc(text, &cfg).map_err(|e| ImportError::Vertex(v.id, e.to_string()))?;
            if q.add_vertex(arc, v.component) != v.id {
                return Err(ImportError::Vertex(v.id, "duplicate or out-of-order vertex".into()));
            }
        }
        let n = q.vertex_count();
        let check = |id: usize| if id < n { Ok(id) } else { Err(ImportError::Vertex(id, "no such vertex".into())) };
        for a in &self.arrows {
            q.add_arrow(check(a.src)?, check(a.dst)?, a.kind, parse_label(&a.label)?);
        }
        for &(v, w) in &self.tau {
            q.set_tau(check(v)?, check(w)?);
        }
        Ok(q)
    }

    pub fn to_dot(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let mode = format!("{:?}", self.mode).to_lowercase();
        let _ = writeln!(s, "digraph \"{mode}_{}_{}_{}\" {{", c.g, c.h, c.m);
        let _ = writeln!(s, "  node [shape=plaintext];");
        for v in &self.vertices {
            let label = v.arc.as_deref().or(v.brustle.as_deref()).unwrap_or("");
            let _ = writeln!(s, "  v{} [label=\"{}\", group=\"{}\"];", v.id, escape(label), v.component.short());
        }
        for a in &self.arrows {
            let style = match a.kind {
                ArrowKind::Elementary => "solid",
                ArrowKind::Long | ArrowKind::Connecting => "dashed",
            };
            let _ = writeln!(s, "  v{} -> v{} [style={style}, label=\"{}\"];", a.src, a.dst, escape(&a.label));
        }
        for (v, w) in &self.tau {
            let _ = writeln!(s, "  v{v} -> v{w} [style=dotted, arrowhead=none, constraint=false];");
        }
        s.push_str("}\n");
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Dot => self.to_dot(),
            Format::Json => self.to_json(),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn parse_label(s: &str) -> Result<MoveLabel, ImportError> {
    let (k, a) = s.split_once('/').ok_or_else(|| ImportError::Label(s.into()))?;
    let kind = match k {
        "elementary" => MoveKind::Elementary,
        "long" => MoveKind::Long,
        _ => return Err(ImportError::Label(s.into())),
    };
    let anchor = match a {
        "start" => Anchor::StartFixed,
        "end" => Anchor::EndFixed,
        _ => return Err(ImportError::Label(s.into())),
    };
    Ok(MoveLabel { kind, anchor })
}

/// Same vertices, components, arrows and translation, id for id.
pub fn same_quiver<V: PartialEq, L: PartialEq>(a: &Quiver<V, L>, b: &Quiver<V, L>) -> bool {
    a.vertices() == b.vertices()
        && (0..a.vertex_count()).all(|v| a.component(v) == b.component(v))
        && a.arrows() == b.arrows()
        && a.tau_pairs().eq(b.tau_pairs())
}

/// Checks that `doc` rebuilds into a quiver isomorphic to `original` via arcs.
pub fn matches_arc_quiver(doc: &ExportDocument, original: &ArcQuiver) -> Result<(), String> {
    let q = doc.to_arc_quiver().map_err(|e| e.to_string())?;
    if q.vertex_count() != original.vertex_count() {
        return Err(format!("{} vertices, expected {}", q.vertex_count(), original.vertex_count()));
    }
    let mut map = HashMap::new();
    for (v, a) in q.vertices().iter().enumerate() {
        let w = original.id(a).ok_or_else(|| format!("{a} is not in the original quiver"))?;
        if original.component(w) != q.component(v) {
            return Err(format!("{a} changed component"));
        }
        map.insert(v, w);
    }
    let mut ours: Vec<_> = q.arrows().iter().map(|a| (map[&a.src], map[&a.dst], a.kind, a.label)).collect();
    let mut theirs: Vec<_> = original.arrows().iter().map(|a| (a.src, a.dst, a.kind, a.label)).collect();
    ours.sort();
    theirs.sort();
    if ours != theirs {
        return Err("arrow sets differ".into());
    }
    let mut t1: Vec<_> = q.tau_pairs().map(|(v, w)| (map[&v], map[&w])).collect();
    let mut t2: Vec<_> = original.tau_pairs().collect();
    t1.sort_unstable();
    t2.sort_unstable();
    if t1 != t2 {
        return Err("translations differ".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_parse_back() {
        for kind in [MoveKind::Elementary, MoveKind::Long] {
            for anchor in [Anchor::StartFixed, Anchor::EndFixed] {
                let l = MoveLabel { kind, anchor };
                assert_eq!(parse_label(&l.to_string()).unwrap(), l);
            }
        }
        assert!(parse_label("long").is_err());
        assert!(parse_label("long/middle").is_err());
    }

    #[test]
    fn small_document_round_trips() {
        let cfg = Config::new(2, 1, 1).unwrap();
        let doc = ExportDocument::build(Mode::Ar, &cfg);
        assert_eq!(doc.config, ConfigEcho { g: 2, h: 1, m: 1, n: 2, big_n: 6 });
        let q = doc.to_arc_quiver().unwrap();
        assert!(same_quiver(&q, &ExportDocument::from_json(&doc.to_json()).unwrap().to_arc_quiver().unwrap()));
        assert!(matches_arc_quiver(&doc, &build_gamma_bar_m(&cfg)).is_ok());
        assert!(ExportDocument::build(Mode::Brustle, &cfg).to_arc_quiver().is_err());
    }

    #[test]
    fn dot_escapes_quotes() {
        assert_eq!(escape(r#"a"b\c"#), r#"a\"b\\c"#);
    }
}
