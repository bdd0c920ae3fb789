//! Command dispatch for the `dbv` binary. Every command produces one JSON
//! document and an exit code: 0 when the mathematics says yes, 1 when it
//! says no, 2 when the input is unusable.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dbv::dbv::spec_file::AlgebraSpec;
use dbv::dbv::{check_axioms, Dbv, DbvAlgebra, Window};
use dbv::examples;
use dbv::homology::{
    build_beta, compute_homology, compute_homology_for, degeneration_check, obstruction_grid, qdelta_lemma_check,
    CellStatus, Differential, LiftOutcome,
};
use dbv::qme::{classical_solve, observable_extend, quantum_solve, verify_solution, Flavor, SolutionFile};
use dbv::series::json::{to_records, TermRecord};
use dbv::series::Vector;
use dbv::Error;

#[derive(Debug, Parser)]
#[command(name = "dbv", version, about = "Exact computations in differential BV algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Degree window MIN:MAX for enumerating basis elements of polynomial
    /// algebras; finite algebras are always used in full.
    #[arg(long, global = true, env = "DBV_WINDOW", default_value = "-4:4", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: (i32, i32),
    /// Largest power of x enumerated for polynomial algebras.
    #[arg(long, global = true, env = "DBV_X_WINDOW", default_value_t = 8)]
    pub x_window: u32,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Load algebra files without running the axiom check.
    #[arg(long, global = true)]
    pub skip_axioms: bool,
}

impl Global {
    pub fn window(&self) -> Window {
        Window {
            degree_min: self.window.0,
            degree_max: self.window.1,
            x_degree: self.x_window,
        }
    }
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or("expected MIN:MAX")?;
    let a: i32 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: i32 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty window {a}:{b}"));
    }
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DifferentialArg {
    Q,
    Delta,
    QPlusDelta,
}

impl From<DifferentialArg> for Differential {
    fn from(d: DifferentialArg) -> Self {
        match d {
            DifferentialArg::Q => Differential::Q,
            DifferentialArg::Delta => Differential::Delta,
            DifferentialArg::QPlusDelta => Differential::QPlusDelta,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ClassicalArg {
    ClassicalDelta,
    ClassicalQPlusDelta,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FlavorArg {
    ClassicalDelta,
    ClassicalQPlusDelta,
    ClassicalQ,
    Quantum,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::ClassicalDelta => Flavor::ClassicalDelta,
            FlavorArg::ClassicalQPlusDelta => Flavor::ClassicalQPlusDelta,
            FlavorArg::ClassicalQ => Flavor::ClassicalQ,
            FlavorArg::Quantum => Flavor::Quantum,
        }
    }
}

fn t_order_arg(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 {
        return Err("t-order must be at least 1".into());
    }
    Ok(n)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify every axiom exhaustively over the window.
    CheckAxioms { spec: PathBuf },
    /// Homology classes of Q (or another differential).
    Homology {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "q")]
        differential: DifferentialArg,
    },
    /// Lift every class to a K-closed element; exit 1 on an obstruction.
    Degeneration {
        spec: PathBuf,
        /// Stop at this ħ-order instead of searching until the lifts terminate.
        #[arg(long)]
        hbar_order: Option<u32>,
    },
    /// Grid of (t-order, ħ-order) cells; exit 1 if any cell fails.
    Obstructions {
        spec: PathBuf,
        #[arg(long, default_value = "3", value_parser = t_order_arg)]
        t_order: u32,
        #[arg(long, default_value_t = 3)]
        hbar_order: u32,
    },
    /// Check the Q-Δ lemma; exit 1 if it fails.
    Qdelta { spec: PathBuf },
    /// Versal solution of the classical master equation via log.
    SolveClassical {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "classical-delta")]
        flavor: ClassicalArg,
        #[arg(long, default_value = "3", value_parser = t_order_arg)]
        t_order: u32,
    },
    /// Versal solution of the quantum master equation.
    SolveQme {
        spec: PathBuf,
        #[arg(long, default_value = "3", value_parser = t_order_arg)]
        t_order: u32,
        #[arg(long, default_value_t = 3)]
        hbar_order: u32,
    },
    /// Recheck a stored solution file.
    Verify {
        spec: PathBuf,
        solution: PathBuf,
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
    },
    /// Extend a Q-closed element to a K-closed one.
    Observable {
        spec: PathBuf,
        /// The element as a JSON object, e.g. '{"x": "1"}'.
        #[arg(long)]
        element: String,
        #[arg(long)]
        hbar_order: Option<u32>,
    },
    /// Emit a built-in algebra file.
    #[command(subcommand)]
    Example(ExampleCommand),
}

#[derive(Debug, Subcommand)]
pub enum ExampleCommand {
    /// Landau-Ginzburg model k[x, η] with the given potential.
    Lg {
        #[arg(long)]
        potential: String,
    },
    /// Three-dimensional algebra whose spectral sequence does not degenerate.
    SquareZero,
    /// Five-dimensional algebra separating the two forms of the Q-Δ lemma.
    Diamond,
    /// Seeded random finite algebra.
    RandomFinite {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
    },
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotDegenerate { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    text.expect("reports serialize")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn load_algebra(path: &Path, global: &Global, check: bool) -> Result<DbvAlgebra, Failure> {
    let alg = AlgebraSpec::from_json(&read(path)?)?.build()?;
    if check && !global.skip_axioms {
        let report = check_axioms(&alg, &global.window());
        if let Some(f) = report.first_failure() {
            return Err(usage(format!(
                "{}: axiom `{}` fails at ({}): {}",
                path.display(),
                f.axiom,
                f.witness.clone().unwrap_or_default().join(", "),
                f.defect.clone().unwrap_or_default()
            )));
        }
    }
    Ok(alg)
}

#[derive(Serialize)]
struct ObservableReport {
    status: &'static str,
    /// ħ-order to which `K O = 0` holds; `null` when exact.
    reliable_order: Option<u32>,
    observable: Vec<TermRecord>,
    obstruction_stage: Option<u32>,
    witness: Option<String>,
    witness_class: Option<String>,
}

#[derive(Serialize)]
struct Refusal {
    error: String,
    degeneration: dbv::homology::DegenerationReport,
}

/// Run one command and return its exit code and JSON body.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    let w = g.window();
    let ok = |yes: bool| if yes { 0 } else { 1 };
    let (code, body) = match &cli.command {
        Command::CheckAxioms { spec } => {
            let alg = load_algebra(spec, g, false)?;
            let r = check_axioms(&alg, &w);
            (ok(r.all_passed), render(&r, g.pretty))
        }
        Command::Homology { spec, differential } => {
            let alg = load_algebra(spec, g, true)?;
            let h = compute_homology_for(&alg, &w, (*differential).into())?;
            (0, render(&h.report(&alg), g.pretty))
        }
        Command::Degeneration { spec, hbar_order } => {
            let alg = load_algebra(spec, g, true)?;
            let h = compute_homology(&alg, &w)?;
            let (r, _) = degeneration_check(&alg, &h, *hbar_order)?;
            (ok(r.degenerate), render(&r, g.pretty))
        }
        Command::Obstructions { spec, t_order, hbar_order } => {
            let alg = load_algebra(spec, g, true)?;
            let h = compute_homology(&alg, &w)?;
            let r = obstruction_grid(&alg, &h, *t_order, *hbar_order)?;
            let fails = r.rows.iter().flatten().any(|c| c.status == CellStatus::Fails);
            (ok(!fails), render(&r, g.pretty))
        }
        Command::Qdelta { spec } => {
            let alg = load_algebra(spec, g, true)?;
            let r = qdelta_lemma_check(&alg, &w);
            (ok(r.holds), render(&r, g.pretty))
        }
        Command::SolveClassical { spec, flavor, t_order } => {
            let alg = load_algebra(spec, g, true)?;
            let flavor = match flavor {
                ClassicalArg::ClassicalDelta => Flavor::ClassicalDelta,
                ClassicalArg::ClassicalQPlusDelta => Flavor::ClassicalQPlusDelta,
            };
            let sol = classical_solve(&alg, flavor, &w, *t_order)?;
            (0, render(&SolutionFile::from_solution(&alg, &sol), g.pretty))
        }
        Command::SolveQme { spec, t_order, hbar_order } => {
            let alg = load_algebra(spec, g, true)?;
            let h = compute_homology(&alg, &w)?;
            let (report, lifts) = degeneration_check(&alg, &h, None)?;
            match build_beta(&h, &lifts) {
                Ok(beta) => {
                    let (sol, _) = quantum_solve(&alg, &h, &beta, *t_order, *hbar_order)?;
                    (0, render(&SolutionFile::from_solution(&alg, &sol), g.pretty))
                }
                Err(e @ Error::NotDegenerate { .. }) => {
                    let refusal = Refusal {
                        error: e.to_string(),
                        degeneration: report,
                    };
                    (1, render(&refusal, g.pretty))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Verify { spec, solution, flavor } => {
            let alg = load_algebra(spec, g, true)?;
            let file = SolutionFile::from_json(&read(solution)?)?;
            let flavor = flavor.map(Flavor::from).unwrap_or(file.flavor);
            let r = verify_solution(&alg, &file, flavor, &w)?;
            (ok(r.accepted), render(&r, g.pretty))
        }
        Command::Observable { spec, element, hbar_order } => {
            let alg = load_algebra(spec, g, true)?;
            let named: std::collections::BTreeMap<String, String> =
                serde_json::from_str(element).map_err(|e| usage(format!("--element: {e}")))?;
            let o0 = Vector::from_named(&named, |n| alg.index_of(n))?;
            let h = compute_homology(&alg, &w)?;
            let name = |i: usize| alg.name(i);
            let report = match observable_extend(&alg, &h, &o0, *hbar_order)? {
                LiftOutcome::Lifted(s) => ObservableReport {
                    status: "extended",
                    reliable_order: (s.hbar_order() != dbv::series::UNBOUNDED).then_some(s.hbar_order()),
                    observable: to_records(&s, name),
                    obstruction_stage: None,
                    witness: None,
                    witness_class: None,
                },
                LiftOutcome::Obstructed {
                    stage,
                    partial,
                    witness,
                    witness_class,
                } => ObservableReport {
                    status: "obstructed",
                    reliable_order: Some(partial.hbar_order()),
                    observable: to_records(&partial, name),
                    obstruction_stage: Some(stage),
                    witness: Some(alg.display(&witness)),
                    witness_class: Some(h.decomposition.display_class(&witness_class)),
                },
            };
            (ok(report.status == "extended"), render(&report, g.pretty))
        }
        Command::Example(ex) => {
            let alg = match ex {
                ExampleCommand::Lg { potential } => examples::landau_ginzburg(potential)?,
                ExampleCommand::SquareZero => examples::square_zero(),
                ExampleCommand::Diamond => examples::diamond(),
                ExampleCommand::RandomFinite { dim, seed } => examples::random_finite(*dim, *seed)?,
            };
            let spec = AlgebraSpec::from_algebra(&alg);
            (0, render(&spec, g.pretty))
        }
    };
    Ok(Outcome { code, body })
}
