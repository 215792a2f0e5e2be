//! `crease`: command line front end.
//!
//! Exit codes: 0 success, 1 infeasible or failed check, 2 usage or format
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crease::branched::{classify, parse_diagram, BranchedDiagram};
use crease::composer::{connect_sum, five_curve_table, render_table, DecoratedClass, Model};
use crease::io::schema_of;
use crease::realization::svg::crease_svg;
use crease::realization::{extract_crease, read_obj, realize, verify_realization, write_obj};
use crease::weighting::{CurveWeight, SolveError};
use crease::{
    canonical_form, config_to_json, enumerate_configs, parse_config, solve_weighting, CreaseConfig,
};

#[derive(Parser)]
#[command(
    name = "crease",
    version,
    about = "Crease sets of generic projections of embedded spheres"
)]
struct Cli {
    /// Write a JSON run report (inputs digest, outputs, checks, timings).
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turning number weights of a configuration.
    Weight {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Configurations up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_curves: usize,
        #[arg(long, default_value_t = 0)]
        max_corners: u32,
        #[arg(long)]
        weightable_only: bool,
    },
    /// Build a mesh realizing a corner-free configuration.
    Realize {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
    /// Check what a mesh realizes against a configuration.
    Verify {
        input: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Reduce a branched diagram to its canonical model.
    Classify {
        input: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Connect sum of two three-curve models along one curve each.
    ConnectSum {
        /// saucer, mushroom or toric (or S, M, E), prefix `mirror:` to reflect;
        /// or a class file written by `--class`.
        a: String,
        b: String,
        #[arg(long, num_args = 2, value_names = ["CURVE_A", "CURVE_B"])]
        along: Vec<String>,
        /// Write the summed configuration.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the summed class with its signs, usable as an operand.
        #[arg(long)]
        class: Option<PathBuf>,
    },
    /// The five-curve sign table.
    Table2 {
        #[arg(long)]
        json: bool,
    },
    /// Projected crease curves of a realized configuration as SVG.
    Draw {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

/// A command's outcome; `Err` carries the exit code and a message.
type Outcome = Result<(), (u8, String)>;

#[derive(Serialize, Default)]
struct RunReport {
    command: String,
    inputs: Vec<InputDigest>,
    outputs: Vec<String>,
    checks: Vec<(String, bool)>,
    timings_ms: Vec<(String, u128)>,
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

struct Run {
    report: RunReport,
}

impl Run {
    fn read(&mut self, path: &Path) -> Result<String, (u8, String)> {
        let text = fs::read_to_string(path).map_err(|e| (2, format!("{}: {e}", path.display())))?;
        self.report.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(text.as_bytes())),
        });
        Ok(text)
    }

    fn write(&mut self, path: &Path, text: &str) -> Outcome {
        fs::write(path, text).map_err(|e| (2, format!("{}: {e}", path.display())))?;
        self.report.outputs.push(path.display().to_string());
        Ok(())
    }

    fn config(&mut self, path: &Path) -> Result<CreaseConfig, (u8, String)> {
        let text = self.read(path)?;
        match schema_of(&text) {
            Ok(s) if s == "crease-diagram/1" => Err((
                2,
                format!(
                    "{}: expected a configuration, got a diagram",
                    path.display()
                ),
            )),
            _ => parse_config(&text).map_err(|e| (2, format!("{}: {e}", path.display()))),
        }
    }

    fn diagram(&mut self, path: &Path) -> Result<BranchedDiagram, (u8, String)> {
        let text = self.read(path)?;
        match schema_of(&text) {
            Ok(s) if s == "crease/1" => Err((
                2,
                format!(
                    "{}: expected a diagram, got a configuration",
                    path.display()
                ),
            )),
            _ => parse_diagram(&text).map_err(|e| (2, format!("{}: {e}", path.display()))),
        }
    }

    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.report
            .timings_ms
            .push((label.into(), t.elapsed().as_millis()));
        out
    }

    fn check(&mut self, name: &str, pass: bool) {
        self.report.checks.push((name.into(), pass));
    }
}

fn weights_line(cfg: &CreaseConfig, w: &crease::Weighting) -> String {
    match w.singles(cfg) {
        Some(t) => format!(
            "t = ({})",
            t.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
        ),
        None => "t = (cornered)".into(),
    }
}

fn operand(run: &mut Run, name: &str) -> Result<DecoratedClass, (u8, String)> {
    let path = Path::new(name);
    if path.is_file() {
        let text = run.read(path)?;
        return serde_json::from_str(&text).map_err(|e| (2, format!("{name}: {e}")));
    }
    let (mirror, base) = match name.strip_prefix("mirror:") {
        Some(b) => (true, b),
        None => (false, name),
    };
    let m = match base.to_ascii_lowercase().as_str() {
        "s" | "saucer" => Model::Saucer,
        "m" | "mushroom" => Model::Mushroom,
        "e" | "toric" => Model::Toric,
        _ => return Err((2, format!("unknown model {name}"))),
    };
    let c = DecoratedClass::model(m);
    Ok(if mirror { c.mirror() } else { c })
}

fn run(cli: Cli, run: &mut Run) -> Outcome {
    match cli.command {
        Command::Weight { input, json } => {
            let cfg = run.config(&input)?;
            match run.time("solve", || solve_weighting(&cfg)) {
                Ok(w) => {
                    if json {
                        println!("{}", serde_json::to_string_pretty(&w).unwrap());
                    } else {
                        println!("{}", weights_line(&cfg, &w));
                        for e in &w.entries {
                            match &e.weight {
                                CurveWeight::Single(t) => println!("{}\t{t}", e.curve),
                                CurveWeight::Pair(p) => {
                                    println!("{}\t{}", e.curve, serde_json::to_string(p).unwrap())
                                }
                            }
                        }
                    }
                    run.check("feasible", true);
                    Ok(())
                }
                Err(e @ SolveError::Infeasible { .. }) => {
                    println!("INFEASIBLE");
                    run.check("feasible", false);
                    Err((1, e.to_string()))
                }
                Err(e) => Err((2, e.to_string())),
            }
        }
        Command::Enumerate {
            max_curves,
            max_corners,
            weightable_only,
        } => {
            let cfgs = run.time("enumerate", || {
                enumerate_configs(max_curves, max_corners, weightable_only)
            });
            for cfg in &cfgs {
                let w = solve_weighting(cfg).ok();
                let t = w.map_or("-".into(), |w| weights_line(cfg, &w));
                println!("{}\t{}\t{t}", cfg.curves.len(), canonical_form(cfg));
            }
            println!("total {}", cfgs.len());
            Ok(())
        }
        Command::Realize {
            input,
            output,
            plan,
            resolution,
        } => {
            let cfg = run.config(&input)?;
            let r = run
                .time("realize", || realize(&cfg, resolution))
                .map_err(|e| (1, e.to_string()))?;
            run.write(&output, &write_obj(&r.mesh))?;
            if let Some(p) = plan {
                let doc = serde_json::json!({ "twist": r.twist, "plan": r.plan });
                run.write(&p, &serde_json::to_string_pretty(&doc).unwrap())?;
            }
            println!(
                "{} vertices, {} faces",
                r.mesh.vertices.len(),
                r.mesh.faces.len()
            );
            Ok(())
        }
        Command::Verify { input, config } => {
            let cfg = run.config(&config)?;
            let text = run.read(&input)?;
            let mesh = read_obj(&text).map_err(|e| (2, format!("{}: {e}", input.display())))?;
            let w = solve_weighting(&cfg).map_err(|e| (1, e.to_string()))?;
            let rep = run.time("verify", || verify_realization(&cfg, &w, &mesh));
            for c in &rep.checks {
                run.check(&c.name, c.pass);
            }
            println!("{}", serde_json::to_string_pretty(&rep).unwrap());
            if rep.pass {
                Ok(())
            } else {
                Err((1, "verification failed".into()))
            }
        }
        Command::Classify { input, trace } => {
            let d = run.diagram(&input)?;
            let rep = run
                .time("classify", || classify(&d))
                .map_err(|e| (1, e.to_string()))?;
            println!("{}", rep.label);
            println!("{}  {}", rep.initial, d.word_strings().join(" "));
            for s in &rep.trace {
                println!(
                    "{} -> {}  {}  {}",
                    s.before,
                    s.after,
                    s.step.describe(),
                    s.words.join(" ")
                );
            }
            if let Some(p) = trace {
                run.write(&p, &serde_json::to_string_pretty(&rep).unwrap())?;
            }
            Ok(())
        }
        Command::ConnectSum {
            a,
            b,
            along,
            output,
            class,
        } => {
            let (ca, cb) = (operand(run, &a)?, operand(run, &b)?);
            let sum =
                connect_sum(&ca, &along[0], &cb, &along[1]).map_err(|e| (1, e.to_string()))?;
            println!("{}", sum.provenance);
            for (i, c) in sum.config.curves.iter().enumerate() {
                let t = sum
                    .weighting
                    .single(&c.id)
                    .map_or("?".into(), |t| t.to_string());
                println!("{}\t{t}\t{}", c.id, sum.signs[i]);
            }
            if let Some(p) = output {
                run.write(&p, &config_to_json(&sum.config))?;
            }
            if let Some(p) = class {
                run.write(&p, &serde_json::to_string_pretty(&sum).unwrap())?;
            }
            Ok(())
        }
        Command::Table2 { json } => {
            let rows = five_curve_table();
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                print!("{}", render_table(&rows));
            }
            Ok(())
        }
        Command::Draw {
            input,
            output,
            resolution,
        } => {
            let cfg = run.config(&input)?;
            let r = realize(&cfg, resolution).map_err(|e| (1, e.to_string()))?;
            let loops = extract_crease(&r.mesh).map_err(|e| (1, e.to_string()))?;
            run.write(&output, &crease_svg(&r.mesh, &loops))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = cli.report.clone();
    let mut r = Run {
        report: RunReport {
            command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
            ..Default::default()
        },
    };
    let outcome = run(cli, &mut r);
    if let Some(path) = report {
        if let Err(e) = fs::write(&path, serde_json::to_string_pretty(&r.report).unwrap()) {
            eprintln!("{}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("crease: {msg}");
            ExitCode::from(code)
        }
    }
}
