//! Command-line entry points: argument parsing, field selection, and the
//! plain-text reports printed by the `mpr` binary.
//!
//! Every command reads files named on the command line, writes its report to
//! stdout, and signals the outcome through the exit code: 0 for success, 1
//! for a computation that ran and produced a negative verdict (a failed
//! verification, a filtration that is not one-critical), 2 for unusable
//! input or arguments. Reports of negative verdicts go to stdout like any
//! other result; diagnostics for unusable input go to stderr.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::chains;
use crate::degree::{Grid, Multidegree};
use crate::field::{Field, PrimeField, Rationals};
use crate::filtration::{self, MultiFiltration};
use crate::grid::{betti_numbers, GridModule};
use crate::onecrit::{self, LabelledComplexError};
use crate::render;
use crate::resolution::{
    minimize, parse_resolution, render_resolution, resolve_boundaries, resolve_chains,
    resolve_homology, resolve_module, verify_against_module, Resolution, TargetKind,
};

/// What a command run produced: the exit code and the two output streams.
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "mpr", version, about = "Multigraded resolutions of multifiltered complexes")]
struct Cli {
    /// Coefficient field: `rational` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a filtration file and report its basic shape.
    Validate { file: String },
    /// List the simplices present at one grade.
    Slice {
        file: String,
        /// The grade, written `(a1,...,ar)`.
        #[arg(long)]
        at: String,
    },
    /// List the fundamental elements of the module of n-chains.
    Chains {
        file: String,
        #[arg(short)]
        n: usize,
    },
    /// Print the monomial-ideal decomposition of the module of n-chains.
    Decompose {
        file: String,
        #[arg(short)]
        n: usize,
    },
    /// List the pairwise syzygy binomials of the n-chains.
    Syzygies {
        file: String,
        #[arg(short)]
        n: usize,
    },
    /// Tabulate the Hilbert function of a persistence module over the grid.
    Hilbert {
        file: String,
        /// Which module: chains, cycles, boundaries, or homology.
        #[arg(long)]
        module: String,
        #[arg(short)]
        n: usize,
        /// Extend the grid by this margin on every axis.
        #[arg(long)]
        pad: Option<u32>,
    },
    /// Tabulate the multigraded Betti numbers of a persistence module.
    Betti {
        file: String,
        /// Which module: chains, cycles, boundaries, or homology.
        #[arg(long)]
        module: String,
        #[arg(short)]
        n: usize,
        /// Stop the minimal resolution after this many steps.
        #[arg(long)]
        max_step: Option<usize>,
    },
    /// Compute a free resolution and print it in the exchange format.
    Resolve {
        file: String,
        /// Which module to resolve: chains, cycles, boundaries, or homology.
        #[arg(long)]
        target: String,
        #[arg(short)]
        n: usize,
        /// Minimize the resolution before printing it.
        #[arg(long)]
        minimize: bool,
        /// Use minimal resolutions of the chain modules inside mapping cones.
        #[arg(long)]
        minimal_p: bool,
    },
    /// Re-check a rendered resolution against the filtration it came from.
    Verify { filtration: String, resolution: String },
    /// Analyse a one-critical filtration through its labelled complex.
    Onecrit { file: String },
    /// Produce derived filtrations.
    #[command(subcommand)]
    Generate(GenerateCommand),
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Build the lower-star multifiltration of a vertex-labelled complex.
    LowerStar { file: String },
}

struct Failure {
    code: i32,
    message: String,
}

fn input_err(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

fn verdict(msg: impl Into<String>) -> Failure {
    Failure { code: 1, message: msg.into() }
}

enum FieldChoice {
    Rational,
    Prime(PrimeField),
}

fn parse_field_name(name: &str) -> Result<FieldChoice, String> {
    if name == "rational" {
        return Ok(FieldChoice::Rational);
    }
    if let Some(spec) = name.strip_prefix("fp:") {
        let p: u64 = spec
            .parse()
            .map_err(|_| format!("bad field `{name}`: expected `rational` or `fp:<prime>`"))?;
        return PrimeField::new(p)
            .map(FieldChoice::Prime)
            .map_err(|e| format!("bad field `{name}`: {e}"));
    }
    Err(format!("unknown field `{name}`: expected `rational` or `fp:<prime>`"))
}

fn init_threads() {
    if let Ok(val) = std::env::var("MPR_THREADS") {
        if let Ok(k) = val.parse::<usize>() {
            if k > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
        }
    }
}

/// Runs the CLI on an argv-style argument list (the first entry is the
/// program name) and returns the outcome instead of exiting.
pub fn run(args: &[String]) -> CommandResult {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult { exit_code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => CommandResult { exit_code: 2, stdout: String::new(), stderr: rendered },
            };
        }
    };
    init_threads();
    let outcome = match parse_field_name(&cli.field) {
        Ok(FieldChoice::Rational) => dispatch(Rationals, &cli.command),
        Ok(FieldChoice::Prime(fp)) => dispatch(fp, &cli.command),
        Err(msg) => Err(input_err(msg)),
    };
    match outcome {
        Ok(stdout) => CommandResult { exit_code: 0, stdout, stderr: String::new() },
        Err(Failure { code: 1, message }) => {
            CommandResult { exit_code: 1, stdout: ensure_newline(message), stderr: String::new() }
        }
        Err(Failure { code, message }) => {
            CommandResult { exit_code: code, stdout: String::new(), stderr: ensure_newline(message) }
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn dispatch<F: Field>(field: F, cmd: &Command) -> Result<String, Failure> {
    match cmd {
        Command::Validate { file } => cmd_validate(file),
        Command::Slice { file, at } => cmd_slice(file, at),
        Command::Chains { file, n } => cmd_chains(file, *n),
        Command::Decompose { file, n } => cmd_decompose(file, *n),
        Command::Syzygies { file, n } => cmd_syzygies(file, *n),
        Command::Hilbert { file, module, n, pad } => cmd_hilbert(field, file, module, *n, *pad),
        Command::Betti { file, module, n, max_step } => {
            cmd_betti(field, file, module, *n, *max_step)
        }
        Command::Resolve { file, target, n, minimize, minimal_p } => {
            cmd_resolve(field, file, target, *n, *minimize, *minimal_p)
        }
        Command::Verify { filtration, resolution } => cmd_verify(field, filtration, resolution),
        Command::Onecrit { file } => cmd_onecrit(field, file),
        Command::Generate(GenerateCommand::LowerStar { file }) => cmd_lower_star(file),
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("cannot read `{path}`: {e}")))
}

fn load_filtration(path: &str) -> Result<MultiFiltration, Failure> {
    let text = read_file(path)?;
    MultiFiltration::parse(&text).map_err(|e| input_err(format!("{path}: {e}")))
}

fn cmd_validate(path: &str) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let dim = match f.dim() {
        Some(d) => d.to_string(),
        None => "-".to_string(),
    };
    Ok(format!(
        "ok r={} simplices={} dim={} grid={} one-critical={}\n",
        f.r(),
        f.simplices().len(),
        dim,
        f.grid_bound(),
        f.is_one_critical()
    ))
}

fn cmd_slice(path: &str, at: &str) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let v = Multidegree::parse(at).map_err(input_err)?;
    if v.r() != f.r() {
        return Err(input_err(format!(
            "grade {v} has {} coordinates, the filtration has r={}",
            v.r(),
            f.r()
        )));
    }
    let mut out = String::new();
    for pos in f.slice(&v) {
        let fs = &f.simplices()[pos];
        let verts: Vec<String> = fs.simplex.vertices.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "simplex {} : {}", fs.simplex.id, verts.join(" "));
    }
    Ok(out)
}

fn cmd_chains(path: &str, n: usize) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let data = chains::fundamental_elements(&f, n);
    let mut out = String::new();
    for e in &data.elements {
        let _ = writeln!(out, "{}\t{}", e.simplex, e.degree);
    }
    Ok(out)
}

fn cmd_decompose(path: &str, n: usize) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let ideals: Vec<Vec<Multidegree>> =
        chains::decompose(&f, n).into_iter().map(|i| i.generators).collect();
    Ok(format!("{}\n", render::decomposition_line(n, &ideals)))
}

fn cmd_syzygies(path: &str, n: usize) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let mut out = String::new();
    for b in chains::syzygy_binomials(&f, n) {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", b.simplex, b.first, b.second, b.join);
    }
    Ok(out)
}

fn module_of_kind<F: Field>(
    f: &MultiFiltration,
    field: F,
    grid: &Grid,
    kind: TargetKind,
    n: usize,
) -> GridModule<F> {
    let gw = chains::gradewise_complex(f, field, grid);
    match kind {
        TargetKind::Chains => gw.chain_module(n),
        TargetKind::Cycles => gw.cycles(n).module,
        TargetKind::Boundaries => gw.boundaries_module(n).module,
        TargetKind::Homology => gw.homology(n).module,
    }
}

fn cmd_hilbert<F: Field>(
    field: F,
    path: &str,
    module: &str,
    n: usize,
    pad: Option<u32>,
) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let kind = TargetKind::from_str(module).map_err(input_err)?;
    let mut bound = f.grid_bound();
    if let Some(k) = pad {
        bound = bound.padded(k);
    }
    let grid = Grid::new(bound);
    let m = module_of_kind(&f, field, &grid, kind, n);
    let mut out = String::new();
    for (deg, dim) in m.hilbert_function() {
        let _ = writeln!(out, "{deg}\t{dim}");
    }
    Ok(out)
}

fn cmd_betti<F: Field>(
    field: F,
    path: &str,
    module: &str,
    n: usize,
    max_step: Option<usize>,
) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let kind = TargetKind::from_str(module).map_err(input_err)?;
    let grid = Grid::new(f.grid_bound());
    let m = module_of_kind(&f, field, &grid, kind, n);
    Ok(betti_numbers(&m, max_step).render_tsv())
}

fn cmd_resolve<F: Field>(
    field: F,
    path: &str,
    target: &str,
    n: usize,
    do_minimize: bool,
    minimal_p: bool,
) -> Result<String, Failure> {
    let f = load_filtration(path)?;
    let kind = TargetKind::from_str(target).map_err(input_err)?;
    let grid = Grid::new(f.grid_bound());
    let res: Resolution<F> = match kind {
        TargetKind::Chains => resolve_chains(&f, n, field, &grid),
        TargetKind::Cycles => {
            let gw = chains::gradewise_complex(&f, field.clone(), &grid);
            resolve_module(&gw.cycles(n).module)
        }
        TargetKind::Boundaries => resolve_boundaries(&f, n + 1, field, &grid, minimal_p),
        TargetKind::Homology => resolve_homology(&f, n, field, &grid, minimal_p),
    };
    let res = if do_minimize { minimize(&res) } else { res };
    Ok(render_resolution(&res, kind, n))
}

fn cmd_verify<F: Field>(field: F, filt_path: &str, res_path: &str) -> Result<String, Failure> {
    let f = load_filtration(filt_path)?;
    let text = read_file(res_path)?;
    let parsed = parse_resolution(field.clone(), &text)
        .map_err(|e| input_err(format!("{res_path}: {e}")))?;
    if parsed.r != f.r() || parsed.bound != f.grid_bound() {
        return Err(input_err(format!(
            "{res_path}: resolution over r={} grid {} does not match the filtration (r={}, grid {})",
            parsed.r,
            parsed.bound,
            f.r(),
            f.grid_bound()
        )));
    }
    let grid = Grid::new(f.grid_bound());
    let target = module_of_kind(&f, field, &grid, parsed.kind, parsed.n);
    let report = verify_against_module(&parsed.complex, &target);
    let mut out = String::new();
    let _ = writeln!(out, "target {} {}", parsed.kind, parsed.n);
    let _ = writeln!(out, "grades checked {}", report.grades_checked);
    match report.first() {
        None => {
            let _ = writeln!(out, "result pass");
            Ok(out)
        }
        Some(first) => {
            let _ = writeln!(out, "result fail at {first}");
            Err(verdict(out))
        }
    }
}

fn cmd_onecrit<F: Field>(field: F, path: &str) -> Result<String, Failure> {
    let not_one_critical = |id: u32, count: usize| {
        verdict(format!("one-critical: false (simplex {id} has {count} critical grades)"))
    };
    let x = if path.ends_with(".lsc") {
        let text = read_file(path)?;
        onecrit::parse_lsc(&text).map_err(|e| match e {
            LabelledComplexError::NotOneCritical { id, count } => not_one_critical(id, count),
            other => input_err(format!("{path}: {other}")),
        })?
    } else {
        let f = load_filtration(path)?;
        onecrit::labelled_complex(&f).map_err(|e| match e {
            LabelledComplexError::NotOneCritical { id, count } => not_one_critical(id, count),
            other => input_err(format!("{path}: {other}")),
        })?
    };
    let mut out = String::new();
    let _ = writeln!(out, "one-critical: true");
    let matches = onecrit::check_equality_with_c(x.filtration(), field.clone())
        .expect("internal: the labelled complex is one-critical by construction");
    let _ = writeln!(out, "matches chain complex: {matches}");
    for (n, h) in onecrit::acyclicity_defect(&x, field).iter().enumerate() {
        let _ = writeln!(out, "H_{n} hilbert");
        for (deg, dim) in h.hilbert_function() {
            let _ = writeln!(out, "{deg}\t{dim}");
        }
        let _ = writeln!(out, "H_{n} betti");
        out.push_str(&betti_numbers(h, Some(1)).render_tsv());
    }
    Ok(out)
}

fn cmd_lower_star(path: &str) -> Result<String, Failure> {
    let text = read_file(path)?;
    let (r, complex, values) =
        filtration::parse_star(&text).map_err(|e| input_err(format!("{path}: {e}")))?;
    let f = filtration::lower_star(r, &complex, &values)
        .map_err(|e| input_err(format!("{path}: {e}")))?;
    Ok(f.serialize())
}
