//! Python bindings: configurations, arcs and their moves, quiver builds and
//! the verification suites.
//!
//!     from annulus_py import Config
//!     cfg = Config(3, 2, 1)
//!     beta = cfg.arc("[0o,0i]")
//!     beta.classify()            # "Preprojective"
//!     cfg.build("ar").vertex_count()  # 214

use std::collections::BTreeMap;

use annulus::correspondence::f_vertex;
use annulus::geometry::{classify, injective_arc, parse_arc, projective_arc, tau, tau_inv};
use annulus::moves::{elementary_moves, is_long_move, long_moves_bounded, Anchor, Move};
use annulus::quiver::ArrowKind;
use annulus::relations::verify_f;
use annulus::{AnnulusArc, Report};
use annulus_cli::export::{ExportDocument, Format, Mode};
use annulus_cli::suites::{run_suite, Suite};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(s: &str) -> PyResult<Mode> {
    match s {
        "ar" => Ok(Mode::Ar),
        "cluster" => Ok(Mode::Cluster),
        "brustle" => Ok(Mode::Brustle),
        _ => Err(value_err(format!("unknown mode {s:?}; expected ar, cluster or brustle"))),
    }
}

fn parse_suite(s: &str) -> PyResult<Suite> {
    Ok(match s {
        "iso" => Suite::Iso,
        "relations" => Suite::Relations,
        "mesh" => Suite::Mesh,
        "oracle" => Suite::Oracle,
        "cluster" => Suite::Cluster,
        "all" => Suite::All,
        _ => return Err(value_err(format!("unknown suite {s:?}"))),
    })
}

fn anchor_name(a: Anchor) -> &'static str {
    match a {
        Anchor::StartFixed => "start",
        Anchor::EndFixed => "end",
    }
}

/// Annulus with `g` outer and `h` inner marked points, truncated at `m`.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "annulus_py")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Config {
    inner: annulus::Config,
}

#[pymethods]
impl Config {
    #[new]
    #[pyo3(signature = (g, h, m=1))]
    fn new(g: i64, h: i64, m: i64) -> PyResult<Self> {
        annulus::Config::new(g, h, m).map(|inner| Config { inner }).map_err(value_err)
    }

    #[getter]
    fn g(&self) -> i64 {
        self.inner.g()
    }

    #[getter]
    fn h(&self) -> i64 {
        self.inner.h()
    }

    #[getter]
    fn m(&self) -> i64 {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> i64 {
        self.inner.n()
    }

    #[getter(N)]
    fn big_n(&self) -> i64 {
        self.inner.big_n()
    }

    /// Parses an arc such as "[0o,2i]".
    fn arc(&self, text: &str) -> PyResult<Arc> {
        let arc = parse_arc(text, &self.inner).map_err(value_err)?;
        Ok(Arc { arc, cfg: self.inner })
    }

    fn projective(&self, i: i64) -> PyResult<Arc> {
        let arc = projective_arc(i, &self.inner).map_err(value_err)?;
        Ok(Arc { arc, cfg: self.inner })
    }

    fn injective(&self, i: i64) -> PyResult<Arc> {
        let arc = injective_arc(i, &self.inner).map_err(value_err)?;
        Ok(Arc { arc, cfg: self.inner })
    }

    #[pyo3(signature = (mode="ar"))]
    fn build(&self, mode: &str) -> PyResult<Quiver> {
        Ok(Quiver { doc: ExportDocument::build(parse_mode(mode)?, &self.inner) })
    }

    /// Runs a suite; returns `(passed, [(name, passed, detail, witness)])`.
    #[pyo3(signature = (suite="all"))]
    fn verify(&self, py: Python<'_>, suite: &str) -> PyResult<(bool, Vec<Check>)> {
        let suite = parse_suite(suite)?;
        let cfg = self.inner;
        Ok(checks(&py.detach(move || run_suite(suite, &cfg))))
    }

    /// The two paths of the tube identity at `j`.
    fn verify_f(&self, j: i64) -> (bool, Vec<Check>) {
        checks(&verify_f(&self.inner, j))
    }

    fn __repr__(&self) -> String {
        format!("Config(g={}, h={}, m={})", self.inner.g(), self.inner.h(), self.inner.m())
    }
}

type Check = (String, bool, String, Option<String>);

fn checks(r: &Report) -> (bool, Vec<Check>) {
    let list = r.checks.iter().map(|c| (c.name.clone(), c.passed, c.detail.clone(), c.witness.clone())).collect();
    (r.passed(), list)
}

/// An arc up to isotopy, tied to its configuration.
#[pyclass(frozen, eq, hash, skip_from_py_object, module = "annulus_py")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Arc {
    arc: AnnulusArc,
    cfg: annulus::Config,
}

impl Arc {
    fn wrap(&self, arc: AnnulusArc) -> Arc {
        Arc { arc, cfg: self.cfg }
    }

    fn move_tuple(&self, mv: &Move) -> (String, Arc) {
        (anchor_name(mv.anchor).to_string(), self.wrap(mv.target))
    }
}

#[pymethods]
impl Arc {
    fn classify(&self) -> String {
        format!("{:?}", classify(&self.arc, &self.cfg))
    }

    fn is_bridging(&self) -> bool {
        self.arc.is_bridging()
    }

    fn tau(&self) -> Arc {
        self.wrap(tau(&self.arc, &self.cfg))
    }

    fn tau_inv(&self) -> Arc {
        self.wrap(tau_inv(&self.arc, &self.cfg))
    }

    /// `[(anchor, target)]` with anchor "start" or "end".
    fn elementary_moves(&self) -> PyResult<Vec<(String, Arc)>> {
        let moves = elementary_moves(&self.arc, &self.cfg).map_err(value_err)?;
        Ok(moves.iter().map(|m| self.move_tuple(m)).collect())
    }

    #[pyo3(signature = (max_level=4))]
    fn long_moves(&self, max_level: i64) -> Vec<(String, Arc)> {
        long_moves_bounded(&self.arc, max_level, max_level, &self.cfg).iter().map(|m| self.move_tuple(m)).collect()
    }

    fn is_long_move(&self, other: &Arc) -> bool {
        is_long_move(&self.arc, &other.arc, &self.cfg)
    }

    /// Coordinate label in the truncated quiver, or None outside it.
    fn brustle(&self) -> Option<String> {
        f_vertex(&self.arc, &self.cfg).ok().map(|v| v.to_string())
    }

    fn __str__(&self) -> String {
        self.arc.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Arc('{}')", self.arc)
    }
}

/// A built quiver in export form.
#[pyclass(frozen, module = "annulus_py")]
struct Quiver {
    doc: ExportDocument,
}

#[pymethods]
impl Quiver {
    fn vertex_count(&self) -> usize {
        self.doc.vertices.len()
    }

    /// Arrows of one kind ("elementary", "long", "connecting"), or all.
    #[pyo3(signature = (kind=None))]
    fn arrow_count(&self, kind: Option<&str>) -> PyResult<usize> {
        let kind = match kind {
            None => return Ok(self.doc.arrows.len()),
            Some("elementary") => ArrowKind::Elementary,
            Some("long") => ArrowKind::Long,
            Some("connecting") => ArrowKind::Connecting,
            Some(k) => return Err(value_err(format!("unknown arrow kind {k:?}"))),
        };
        Ok(self.doc.arrows.iter().filter(|a| a.kind == kind).count())
    }

    fn tau_pair_count(&self) -> usize {
        self.doc.tau.len()
    }

    fn component_sizes(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for v in &self.doc.vertices {
            *out.entry(v.component.short().to_string()).or_insert(0) += 1;
        }
        out
    }

    /// Connected components under elementary arrows.
    fn connected_components(&self) -> usize {
        self.doc.to_quiver().connected_components(|a| a.kind == ArrowKind::Elementary)
    }

    /// `[(id, component, arc, coordinate)]` in export order.
    fn vertices(&self) -> Vec<(usize, String, Option<String>, Option<String>)> {
        self.doc
            .vertices
            .iter()
            .map(|v| (v.id, v.component.short().to_string(), v.arc.clone(), v.brustle.clone()))
            .collect()
    }

    fn to_json(&self) -> String {
        self.doc.render(Format::Json)
    }

    fn to_dot(&self) -> String {
        self.doc.render(Format::Dot)
    }
}

#[pymodule]
fn annulus_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Config>()?;
    m.add_class::<Arc>()?;
    m.add_class::<Quiver>()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_map_to_modes_and_suites() {
        assert_eq!(parse_mode("cluster").unwrap(), Mode::Cluster);
        assert_eq!(parse_suite("relations").unwrap(), Suite::Relations);
        assert!(parse_mode("tubes").is_err());
        assert!(parse_suite("").is_err());
        assert_eq!(anchor_name(Anchor::EndFixed), "end");
    }
}
