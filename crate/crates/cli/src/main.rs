//! `czedli`: build, verify, render and sample slim planar semimodular
//! lattice diagrams.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use czedli_core::construction::{run_script, ConstructionScript, StepSummary};
use czedli_core::io::{decode, decode_raw, encode, Metadata};
use czedli_core::render::{render_svg, render_tikz, RenderOptions};
use czedli_core::{
    boundary_chains, find_corners, find_covering_s7s, random_script, signature, verify_all, verify_diagram,
    ExactDiagram, Rational, S7Mode,
};

#[derive(Parser)]
#[command(name = "czedli", version, about = "Czédli diagrams of slim planar semimodular lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a construction script and write the resulting diagram.
    Build {
        script: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every property of a diagram file.
    Verify {
        file: PathBuf,
        /// Reading of "covering S7" used for the pass/fail exit code.
        #[arg(long, default_value_t = S7Mode::Sublattice)]
        mode: S7Mode,
        /// Also write the machine-readable key=value report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Draw a diagram as SVG or TikZ.
    Render {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate, run and verify seeded random construction scripts.
    Random {
        /// Grid size as ROWSxCOLS, e.g. 4x5.
        #[arg(long)]
        grid: GridSize,
        #[arg(long, default_value_t = 0)]
        forks: usize,
        #[arg(long, default_value_t = 0)]
        removals: usize,
        #[arg(long)]
        seed: u64,
        /// Number of consecutive seeds, starting at --seed.
        #[arg(long, default_value_t = 1)]
        batch: u64,
        /// Write `seed-N.script` and `seed-N.json` for every run.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = S7Mode::Sublattice)]
        mode: S7Mode,
    },
    /// Print counts, boundary chains, corners and covering S7s.
    Stats { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Tikz,
}

#[derive(Clone, Copy, Debug)]
struct GridSize {
    rows: usize,
    cols: usize,
}

impl FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, c) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected ROWSxCOLS, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        Ok(GridSize { rows: parse(r)?, cols: parse(c)? })
    }
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<Verdict> {
    match command {
        Command::Build { script, output } => build(&script, &output),
        Command::Verify { file, mode, report } => verify(&file, mode, report.as_deref()),
        Command::Render { file, format, labels, scale, output } => {
            render(&file, format, RenderOptions { scale, labels }, &output)
        }
        Command::Random { grid, forks, removals, seed, batch, out_dir, mode } => {
            random(grid, forks, removals, seed, batch, out_dir.as_deref(), mode)
        }
        Command::Stats { file } => stats(&file),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load(path: &Path) -> Result<ExactDiagram> {
    let (d, _) = decode::<Rational>(&read(path)?).with_context(|| path.display().to_string())?;
    Ok(d)
}

fn build(script: &Path, output: &Path) -> Result<Verdict> {
    let text = read(script)?;
    let script: ConstructionScript = text.parse().with_context(|| script.display().to_string())?;
    let run = run_script::<Rational>(&script)?;
    let meta = Metadata { script: Some(script.to_string()), seed: None };
    write(output, &encode(&run.diagram, Some(meta)))?;
    for entry in &run.log {
        let what = match entry.summary {
            StepSummary::Grid => "grid".to_string(),
            StepSummary::Fork { o, i, t, left, right, .. } => {
                format!("fork [{o}, {i}] t={t} trajectories {left}+{right}")
            }
            StepSummary::Remove { corner } => format!("remove {corner}"),
        };
        println!(
            "step {}: {what}: {} elements, {} edges, {} cells",
            entry.step, entry.elements, entry.edges, entry.cells
        );
    }
    Ok(Verdict::Pass)
}

fn verify(file: &Path, mode: S7Mode, report_path: Option<&Path>) -> Result<Verdict> {
    let parsed = decode_raw::<Rational>(&read(file)?).with_context(|| file.display().to_string())?;
    let report = verify_all(&parsed.raw);
    print!("{report}");
    if let Some(path) = report_path {
        write(path, &report.to_key_values())?;
    }
    Ok(if report.accepts(mode) { Verdict::Pass } else { Verdict::Fail })
}

fn render(file: &Path, format: Format, opts: RenderOptions, output: &Path) -> Result<Verdict> {
    if !(opts.scale.is_finite() && opts.scale > 0.0) {
        return Err(anyhow!("--scale must be a positive number"));
    }
    let d = load(file)?;
    let text = match format {
        Format::Svg => render_svg(&d, &opts),
        Format::Tikz => render_tikz(&d, &opts),
    };
    write(output, &text)?;
    Ok(Verdict::Pass)
}

struct RandomRun {
    seed: u64,
    script: String,
    diagram: String,
    line: String,
    accepted: bool,
}

fn random_one(grid: GridSize, forks: usize, removals: usize, seed: u64, mode: S7Mode) -> Result<RandomRun> {
    let generated = random_script(grid.rows, grid.cols, forks, removals, seed)?;
    let run = run_script::<Rational>(&generated.script)?;
    let report = verify_diagram(&run.diagram);
    let accepted = report.accepts(mode);
    let [up, down, steep, _] = report.edge_classes;
    let mut line = format!(
        "seed={seed} elements={} edges={} steep={steep} normal={} skipped_removals={}",
        report.elements,
        up + down + steep,
        up + down,
        generated.skipped_removals.len()
    );
    for (key, status) in report.properties() {
        write!(line, " {key}={}", if status.passed() { "pass" } else { "fail" }).unwrap();
    }
    let script = generated.script.to_string();
    let meta = Metadata { script: Some(script.clone()), seed: Some(seed) };
    Ok(RandomRun { seed, script, diagram: encode(&run.diagram, Some(meta)), line, accepted })
}

fn random(
    grid: GridSize,
    forks: usize,
    removals: usize,
    seed: u64,
    batch: u64,
    out_dir: Option<&Path>,
    mode: S7Mode,
) -> Result<Verdict> {
    if batch == 0 {
        return Err(anyhow!("--batch must be at least 1"));
    }
    let end = seed.checked_add(batch).ok_or_else(|| anyhow!("seed range overflows"))?;
    let runs: Vec<RandomRun> =
        (seed..end).into_par_iter().map(|s| random_one(grid, forks, removals, s, mode)).collect::<Result<_>>()?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for run in &runs {
            write(&dir.join(format!("seed-{}.script", run.seed)), &run.script)?;
            write(&dir.join(format!("seed-{}.json", run.seed)), &run.diagram)?;
        }
    }
    if batch == 1 && out_dir.is_none() {
        print!("{}", runs[0].script);
    }
    for run in &runs {
        println!("{}", run.line);
    }
    let failed = runs.iter().filter(|r| !r.accepted).count();
    println!("{} of {} runs accepted ({mode} mode)", runs.len() - failed, runs.len());
    Ok(if failed == 0 { Verdict::Pass } else { Verdict::Fail })
}

fn stats(file: &Path) -> Result<Verdict> {
    let d = load(file)?;
    let sig = signature(&d)?;
    println!("elements      {}", sig.elements);
    println!("edges         {}", sig.edges);
    println!("  normal-up   {}", sig.normal_up);
    println!("  normal-down {}", sig.normal_down);
    println!("  steep       {}", sig.steep);
    println!("4-cells       {}", sig.cells);
    println!("S7 strict     {}", sig.s7_strict);
    println!("S7 sublattice {}", sig.s7_sublattice);
    let (left, right) = boundary_chains(&d);
    println!("left chain    {left:?}");
    println!("right chain   {right:?}");
    for c in find_corners(&d) {
        println!("corner        {} ({}, lower cover {}, upper cover {})", c.a, c.side, c.a_star, c.a_upper);
    }
    for mode in [S7Mode::Strict, S7Mode::Sublattice] {
        for s in find_covering_s7s(d.lattice(), mode) {
            let (t, i) = s.middle();
            println!("S7 {mode:<10} middle ({t}, {i}) elements {:?}", s.elements());
        }
    }
    Ok(Verdict::Pass)
}
