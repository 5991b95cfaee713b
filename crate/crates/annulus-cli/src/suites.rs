//! Verification suites behind `annulus verify`.

use annulus::arquiver::{build_gamma_bar_m, mesh_check, ArcQuiver};
use annulus::cluster::{build_cluster_quiver_m, verify_stable_translation};
use annulus::correspondence::{verify_bijection_of, verify_isomorphism, verify_long_arrows};
use annulus::moves::verify_classification;
use annulus::relations::{
    verify_c1_c2_with, verify_diamonds, verify_e_with, verify_f_sweep, verify_factoring, RelationContext,
};
use annulus::report::CheckResult;
use annulus::{Config, Report};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Iso,
    Relations,
    Mesh,
    Oracle,
    Cluster,
    All,
}

pub fn mesh_suite(q: &ArcQuiver, cfg: &Config) -> Report {
    let (mut r, stats) = mesh_check(q, cfg);
    let mouths = (cfg.g() + cfg.h()) as usize;
    r.push(CheckResult::from_witness(
        "mouth-meshes",
        format!("{} three-vertex, {} four-vertex", stats.three_vertex, stats.four_vertex),
        (stats.three_vertex != mouths).then(|| format!("expected {mouths} three-vertex meshes")),
    ));
    r
}

pub fn relations_suite(cfg: &Config) -> Report {
    let ctx = RelationContext::new(cfg);
    let mut r = verify_c1_c2_with(&ctx);
    r.extend(verify_f_sweep(cfg));
    r.extend(verify_e_with(&ctx));
    r.extend(verify_diamonds(&ctx.quiver, cfg));
    r.extend(verify_factoring(&ctx.quiver, cfg));
    r
}

pub fn run_suite(suite: Suite, cfg: &Config) -> Report {
    match suite {
        Suite::Iso => verify_isomorphism(cfg),
        Suite::Relations => relations_suite(cfg),
        Suite::Mesh => mesh_suite(&build_gamma_bar_m(cfg), cfg),
        Suite::Oracle => verify_classification(cfg),
        Suite::Cluster => verify_stable_translation(&build_cluster_quiver_m(cfg), cfg),
        Suite::All => {
            let mut r = Report::new();
            for (s, name) in [
                (Suite::Iso, "iso"),
                (Suite::Mesh, "mesh"),
                (Suite::Oracle, "oracle"),
                (Suite::Relations, "relations"),
                (Suite::Cluster, "cluster"),
            ] {
                r.extend(run_suite(s, cfg).prefixed(&format!("{name}/")));
            }
            r
        }
    }
}

/// Structural checks on a quiver loaded from a document rather than built.
pub fn loaded_suite(q: &ArcQuiver, cfg: &Config) -> Report {
    let mut r = verify_bijection_of(q, cfg).prefixed("iso/");
    r.extend(verify_long_arrows(q, cfg).prefixed("iso/"));
    r.extend(mesh_suite(q, cfg).prefixed("mesh/"));
    r
}
