use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use ppm_core::census::{analyze, census, CensusMode, CensusOptions};
use ppm_core::constructions::star_construction;
use ppm_core::cycles::{cdc_from_ccd, find_ccd, verify_cycle_set, CycleSet};
use ppm_core::families::{blanusa_snark, flower_snark, goldberg_snark, petersen, FamilyInstance};
use ppm_core::ppm::{contract, for_each_ppm, PpmFilter, PseudoMatching};
use ppm_core::{parse_graph6, write_graph6, CubicGraph, Multigraph};

/// Perfect pseudo-matchings, cycle double covers and snark constructions.
#[derive(Parser)]
#[command(name = "ppm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member as graph6 plus its designated PPM sidecar.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        /// Graph6 output; the sidecar goes next to it with extension `.ppm`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Report snark status, PPM class, CCD and CDC for one graph.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        /// PPM sidecar; without it the best PPM found is used.
        #[arg(long)]
        ppm: Option<PathBuf>,
    },
    /// Replace every crossing of an M-avoiding drawing by a Blanusa block.
    Construct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ppm: PathBuf,
        #[arg(long)]
        emit_star: Option<PathBuf>,
        #[arg(long)]
        emit_ppm: Option<PathBuf>,
        #[arg(long)]
        emit_cdc: Option<PathBuf>,
    },
    /// Classify the best PPM of every graph in a graph6 file.
    Census {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// TSV report; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for one detail file per order.
        #[arg(long)]
        details: Option<PathBuf>,
        /// Per-graph time budget in milliseconds.
        #[arg(long, env = "PPM_CENSUS_TIMEOUT_MS")]
        timeout_ms: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Petersen,
    Blanusa,
    Flower,
    Goldberg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pm,
    Ppm,
    Both,
}

/// Input problems exit with 1; an incomplete census exits with 2.
enum Outcome {
    Done,
    Incomplete,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Incomplete) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Gen { family, n, k, j, out } => gen(family, n, k, j, &out)?,
        Command::Analyze { graph, ppm } => {
            let g = read_graph(&graph)?;
            let m = ppm.map(|p| read_ppm(&g, &p)).transpose()?;
            println!("{}", analyze(&g, m.as_ref())?);
        }
        Command::Construct { input, ppm, emit_star, emit_ppm, emit_cdc } => {
            construct(&input, &ppm, emit_star, emit_ppm, emit_cdc)?
        }
        Command::Census { input, mode, workers, out, details, timeout_ms } => {
            return run_census(&input, mode, workers, out, details, timeout_ms);
        }
    }
    Ok(Outcome::Done)
}

fn gen(family: FamilyName, n: Option<usize>, k: Option<usize>, j: Option<usize>, out: &Path) -> Result<()> {
    let need = |v: Option<usize>, name: &str| v.with_context(|| format!("this family needs --{name}"));
    let inst: FamilyInstance = match family {
        FamilyName::Petersen => petersen(),
        FamilyName::Blanusa => blanusa_snark(need(n, "n")?, need(j, "j")?)?,
        FamilyName::Flower => flower_snark(need(k, "k")?)?,
        FamilyName::Goldberg => goldberg_snark(need(k, "k")?)?,
    };
    let g = inst.graph.graph();
    write(out, &format!("{}\n", write_graph6(g)?))?;
    write(&out.with_extension("ppm"), &inst.designated_ppm.to_sidecar(g))?;
    info!("{}: {} vertices", inst.family, g.vertex_count());
    Ok(())
}

fn construct(
    input: &Path,
    ppm: &Path,
    emit_star: Option<PathBuf>,
    emit_ppm: Option<PathBuf>,
    emit_cdc: Option<PathBuf>,
) -> Result<()> {
    let g = read_graph(input)?;
    let m = read_ppm(&g, ppm)?;
    let cubic = CubicGraph::new(g.clone())?;
    let star = star_construction(&cubic, &m)?;
    println!(
        "{} crossings replaced; G* has {} vertices and {} edges",
        star.steps.len(),
        star.graph.vertex_count(),
        star.graph.edge_count()
    );
    if let Some(path) = emit_star {
        write(&path, &format!("{}\n", write_graph6(&star.graph)?))?;
    }
    if let Some(path) = emit_ppm {
        write(&path, &star.ppm.to_sidecar(&star.graph))?;
    }
    if let Some(path) = emit_cdc {
        let cdc = star.lift_cdc(&g, &input_cdc(&g, &m)?)?;
        verify_cycle_set(&star.graph, &cdc)?;
        write(&path, &cdc.to_text())?;
    }
    Ok(())
}

/// A cycle double cover of the input from a CCD of `G/M`, or of `G/M'` for
/// the first other PPM that has one.
fn input_cdc(g: &Multigraph, m: &PseudoMatching) -> Result<CycleSet> {
    if let Some(ccd) = find_ccd(&contract(g, m)?) {
        return Ok(cdc_from_ccd(g, m, &ccd)?);
    }
    warn!("G/M has no compatible decomposition; trying other PPMs");
    let mut found = None;
    for_each_ppm(g, PpmFilter::default(), |other| {
        if let Some(ccd) = contract(g, other).ok().and_then(|cg| find_ccd(&cg)) {
            found = Some(cdc_from_ccd(g, other, &ccd));
            return std::ops::ControlFlow::Break(());
        }
        std::ops::ControlFlow::Continue(())
    });
    match found {
        Some(cdc) => Ok(cdc?),
        None => bail!("no PPM of the input has a compatible cycle decomposition"),
    }
}

fn run_census(
    input: &Path,
    mode: Mode,
    workers: usize,
    out: Option<PathBuf>,
    details: Option<PathBuf>,
    timeout_ms: Option<u64>,
) -> Result<Outcome> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let options = CensusOptions {
        mode: match mode {
            Mode::Pm => CensusMode::Pm,
            Mode::Ppm => CensusMode::Ppm,
            Mode::Both => CensusMode::Both,
        },
        workers,
        timeout: timeout_ms.map(Duration::from_millis),
    };
    let report = census(&text, &options).with_context(|| format!("census of {}", input.display()))?;
    match out {
        Some(path) => write(&path, &report.to_tsv())?,
        None => print!("{}", report.to_tsv()),
    }
    if let Some(dir) = details {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for (order, body) in report.detail_files() {
            write(&dir.join(format!("order_{order}.tsv")), &body)?;
        }
    }
    eprintln!("convention: {}", report.convention());
    for d in report.non_snarks() {
        eprintln!("warning: line {} is not a snark; left out of the counts", d.line);
    }
    if report.complete() {
        Ok(Outcome::Done)
    } else {
        for d in report.undecided() {
            eprintln!("warning: line {} undecided; counts are incomplete", d.line);
        }
        Ok(Outcome::Incomplete)
    }
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .with_context(|| format!("{} is empty", path.display()))?;
    parse_graph6(line).with_context(|| format!("parsing {}", path.display()))
}

fn read_ppm(g: &Multigraph, path: &Path) -> Result<PseudoMatching> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PseudoMatching::parse_sidecar(g, &text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}
