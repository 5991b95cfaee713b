//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the output.

use std::process::Command;

use annulus::arquiver::{build_gamma_bar_m, mesh_check};
use annulus::brustle::build_qm_prime;
use annulus::cluster::{build_cluster_quiver_m, tau_unoriented, unorient, verify_stable_translation};
use annulus::correspondence::verify_isomorphism;
use annulus::geometry::{injective_arc, lift, projective_arc, sigma_shift, LiftPoint};
use annulus::moves::{verify_classification, ZeroOrArc};
use annulus::relations::{
    f_closed_forms, f_values, find_diamonds, verify_c1_c2_with, verify_diamonds, verify_e_with, verify_f_sweep,
    verify_factoring, RelationContext,
};
use annulus::{Config, Report};
use annulus_cli::export::{matches_arc_quiver, same_quiver};
use annulus_cli::{ExportDocument, Mode};

const CONFIGS: [(i64, i64, i64); 5] = [(2, 1, 1), (3, 2, 1), (3, 2, 2), (4, 3, 1), (5, 1, 1)];

fn configs() -> impl Iterator<Item = Config> {
    CONFIGS.iter().map(|&(g, h, m)| Config::new(g, h, m).unwrap())
}

type Outcome = Result<String, String>;

fn require(r: &Report, cfg: &Config) -> Result<usize, String> {
    match r.failures().next() {
        None => Ok(r.checks.len()),
        Some(f) => Err(format!("{cfg:?} {}: {}", f.name, f.witness.as_deref().unwrap_or(&f.detail))),
    }
}

fn isomorphism() -> Outcome {
    let mut checks = 0;
    for cfg in configs() {
        checks += require(&verify_isomorphism(&cfg), &cfg)?;
    }
    for ((g, h, m), want) in [((3, 2, 1), 214), ((2, 1, 1), 55)] {
        let cfg = Config::new(g, h, m).unwrap();
        let (a, b) = (build_gamma_bar_m(&cfg).vertex_count(), build_qm_prime(&cfg).vertex_count());
        if a != want || b != want {
            return Err(format!("({g},{h},{m}): {a} and {b} vertices, expected {want}"));
        }
    }
    Ok(format!("{checks} checks over 5 configs; 214 and 55 vertices on both sides"))
}

fn translation_axioms() -> Outcome {
    let mut meshes = 0;
    for cfg in configs() {
        let (r, stats) = mesh_check(&build_gamma_bar_m(&cfg), &cfg);
        require(&r, &cfg)?;
        if stats.three_vertex as i64 != cfg.g() + cfg.h() {
            return Err(format!("{cfg:?}: {} three-vertex meshes", stats.three_vertex));
        }
        meshes += stats.checked;
    }
    Ok(format!("{meshes} interior meshes, mouths three-vertex, rest four-vertex"))
}

fn classification() -> Outcome {
    for cfg in configs() {
        require(&verify_classification(&cfg), &cfg)?;
    }
    Ok("closed form agrees with reachability on every window arc".into())
}

fn relation_f() -> Outcome {
    let mut checks = 0;
    for cfg in configs() {
        checks += require(&verify_f_sweep(&cfg), &cfg)?;
    }
    let cfg = Config::new(3, 2, 1).unwrap();
    let spots = [(1, (-14, -1), (-10, 5), -2), (0, (-16, -4), (-8, 8), -4)];
    for (j, one, two, shift) in spots {
        let l1 = lift(LiftPoint::inner(one.0), LiftPoint::outer(one.1)).unwrap();
        let l2 = lift(LiftPoint::inner(two.0), LiftPoint::outer(two.1)).unwrap();
        let (c1, c2) = f_closed_forms(j, &cfg);
        if (c1, c2) != (l1, l2) {
            return Err(format!("j={j}: closed forms {c1} / {c2}"));
        }
        let (a, b) = f_values(j, &cfg).map_err(|e| e.to_string())?;
        if a != ZeroOrArc::Arc(l1) || b != ZeroOrArc::Arc(sigma_shift(&l2, shift, &cfg)) {
            return Err(format!("j={j}: evaluated {a} / {b}"));
        }
    }
    Ok(format!("{checks} values of j agree up to σ; spot values j=0,1 match"))
}

fn relations_c(ctxs: &[RelationContext]) -> Outcome {
    for ctx in ctxs {
        require(&verify_c1_c2_with(ctx), &ctx.cfg)?;
    }
    Ok("four identities per config reduce by g+h triangle collapses".into())
}

fn relations_e(ctxs: &[RelationContext]) -> Outcome {
    for ctx in ctxs {
        require(&verify_e_with(ctx), &ctx.cfg)?;
    }
    Ok("four zero relations reached; controls stay nonzero".into())
}

fn diamonds(ctxs: &[RelationContext]) -> Outcome {
    let mut instances = 0;
    for ctx in ctxs.iter().filter(|c| c.cfg.m() == 1 && [(2, 1), (3, 2)].contains(&(c.cfg.g(), c.cfg.h()))) {
        require(&verify_diamonds(&ctx.quiver, &ctx.cfg), &ctx.cfg)?;
        require(&verify_factoring(&ctx.quiver, &ctx.cfg), &ctx.cfg)?;
        instances += find_diamonds(&ctx.quiver, &ctx.cfg).len();
    }
    Ok(format!("{instances} diamonds commute; every long arrow factors"))
}

fn cluster() -> Outcome {
    for cfg in configs() {
        let q = build_cluster_quiver_m(&cfg);
        require(&verify_stable_translation(&q, &cfg), &cfg)?;
        for i in 0..=cfg.n() {
            let b = unorient(&projective_arc(i, &cfg).unwrap(), &cfg);
            let c = unorient(&injective_arc(i, &cfg).unwrap(), &cfg);
            if tau_unoriented(&tau_unoriented(&b, &cfg), &cfg) != c {
                return Err(format!("{cfg:?}: index {i}"));
            }
        }
        let want = build_gamma_bar_m(&cfg).vertex_count() + (cfg.n() + 1) as usize;
        let comps = q.connected_components(|a| a.kind == annulus::quiver::ArrowKind::Elementary);
        if q.vertex_count() != want || comps != 3 {
            return Err(format!("{cfg:?}: {} vertices, {comps} components", q.vertex_count()));
        }
    }
    Ok("stable translation quiver, three components, one extra slice".into())
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_annulus");
    let run = |mode: &str, format: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(bin)
            .args(["build", "--g", "3", "--h", "2", "--m", "1", "--mode", mode, "--format", format])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("build exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    for (mode, format) in [("ar", "json"), ("cluster", "dot"), ("brustle", "json")] {
        if run(mode, format)? != run(mode, format)? {
            return Err(format!("{mode}/{format} output differs between runs"));
        }
    }
    let cfg = Config::new(3, 2, 1).unwrap();
    for mode in [Mode::Ar, Mode::Cluster, Mode::Brustle] {
        let doc = ExportDocument::build(mode, &cfg);
        let back = ExportDocument::from_json(&doc.to_json()).map_err(|e| e.to_string())?;
        if back != doc || !same_quiver(&back.to_quiver(), &doc.to_quiver()) {
            return Err(format!("{mode:?} document does not round-trip"));
        }
    }
    let text = String::from_utf8(run("ar", "json")?).map_err(|e| e.to_string())?;
    let doc = ExportDocument::from_json(&text).map_err(|e| e.to_string())?;
    matches_arc_quiver(&doc, &build_gamma_bar_m(&cfg))?;
    Ok("byte-identical builds; JSON rebuilds an isomorphic quiver".into())
}

fn main() {
    let ctxs: Vec<RelationContext> = configs().map(|c| RelationContext::new(&c)).collect();
    let results: [(&str, Outcome); 9] = [
        ("isomorphism suite", isomorphism()),
        ("translation quiver axioms", translation_axioms()),
        ("classification oracle", classification()),
        ("relation (f) sweep", relation_f()),
        ("relations (c1),(c2)", relations_c(&ctxs)),
        ("relations (e),(e')", relations_e(&ctxs)),
        ("diamond commutativity and factoring", diamonds(&ctxs)),
        ("cluster quiver", cluster()),
        ("determinism and round-trip", determinism()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
