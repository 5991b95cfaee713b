//! Command-line surface for the annulus arc model: build and export quivers,
//! run verification suites, list the moves out of an arc.
//!
//! Exit codes: 0 when everything passes, 1 on a failed check or I/O error,
//! 2 on bad flags or unparsable input.

pub mod export;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use annulus::geometry::{classify, parse_arc};
use annulus::moves::{elementary_moves, long_moves_bounded, Anchor};
use annulus::{Config, Report};
use clap::{Args, Parser, Subcommand};

pub use export::{ExportDocument, Format, Mode};
pub use suites::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "annulus", version, about = "Arcs in an annulus and their translation quivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Marked points on the outer boundary.
    #[arg(long)]
    pub g: i64,
    /// Marked points on the inner boundary (at most g).
    #[arg(long)]
    pub h: i64,
    /// Truncation parameter.
    #[arg(long, default_value_t = 1)]
    pub m: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a quiver and write it as DOT or JSON.
    Build {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value = "ar")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and emit a JSON report.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Check a previously exported `ar` document instead of building one.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Report file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify an arc and list its moves.
    ///
    /// Arcs are written `[<int><b>,<int><b>]` with b = o for the outer
    /// boundary and b = i for the inner one, e.g. "[0o,0i]".
    Moves {
        #[arg(long, default_value_t = 3)]
        g: i64,
        #[arg(long, default_value_t = 2)]
        h: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long)]
        arc: String,
        /// Highest tube level (and preinjective depth) listed for long moves.
        #[arg(long, default_value_t = 4)]
        max_level: i64,
    },
}

fn config(g: i64, h: i64, m: i64, err: &mut dyn Write) -> Result<Config, i32> {
    Config::new(g, h, m).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match out {
        Some(p) => std::fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

fn report_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Build { config: c, mode, format, out } => {
            let cfg = match config(c.g, c.h, c.m, stderr) {
                Ok(cfg) => cfg,
                Err(code) => return code,
            };
            let doc = ExportDocument::build(mode, &cfg);
            let _ = writeln!(
                stderr,
                "{} vertices, {} arrows, {} τ pairs",
                doc.vertices.len(),
                doc.arrows.len(),
                doc.tau.len()
            );
            emit(&doc.render(format), out.as_ref(), stdout, stderr)
        }
        Command::Verify { config: c, suite, input, out } => {
            let cfg = match config(c.g, c.h, c.m, stderr) {
                Ok(cfg) => cfg,
                Err(code) => return code,
            };
            let report = match input {
                None => suites::run_suite(suite, &cfg),
                Some(path) => {
                    let loaded = std::fs::read_to_string(&path)
                        .map_err(|e| e.to_string())
                        .and_then(|s| ExportDocument::from_json(&s).map_err(|e| e.to_string()))
                        .and_then(|d| {
                            Ok((d.config().map_err(|e| e.to_string())?, d.to_arc_quiver().map_err(|e| e.to_string())?))
                        });
                    match loaded {
                        Ok((doc_cfg, q)) => suites::loaded_suite(&q, &doc_cfg),
                        Err(e) => {
                            let _ = writeln!(stderr, "error: {}: {e}", path.display());
                            return EXIT_FAIL;
                        }
                    }
                }
            };
            for f in report.failures() {
                let _ = writeln!(stderr, "FAIL {}: {}", f.name, f.witness.as_deref().unwrap_or(""));
            }
            let _ = writeln!(
                stderr,
                "{}/{} checks passed",
                report.checks.len() - report.failures().count(),
                report.checks.len()
            );
            let code = emit(&report_json(&report), out.as_ref(), stdout, stderr);
            if code != EXIT_OK {
                code
            } else if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Command::Moves { g, h, m, arc, max_level } => {
            let cfg = match config(g, h, m, stderr) {
                Ok(cfg) => cfg,
                Err(code) => return code,
            };
            let a = match parse_arc(&arc, &cfg) {
                Ok(a) => a,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let elementary = match elementary_moves(&a, &cfg) {
                Ok(v) => v,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let mut s = String::new();
            s.push_str(&format!("arc {a}\nclass {:?}\n", classify(&a, &cfg)));
            s.push_str(&format!("elementary {}\n", elementary.len()));
            for mv in &elementary {
                s.push_str(&format!("  {mv}\n"));
            }
            let long = long_moves_bounded(&a, max_level, max_level, &cfg);
            for anchor in [Anchor::StartFixed, Anchor::EndFixed] {
                let these: Vec<_> = long.iter().filter(|mv| mv.anchor == anchor).collect();
                s.push_str(&format!("long {anchor:?} {}\n", these.len()));
                for mv in these {
                    s.push_str(&format!("  {mv}\n"));
                }
            }
            emit(&s, None, stdout, stderr)
        }
    }
}
