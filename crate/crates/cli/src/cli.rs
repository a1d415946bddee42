//! Subcommand dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use intrans_core::substrate::{evaluate_population, objective_fitness, Population};
use intrans_core::{
    itx, itx_max, replay_history, run_scatter, run_time_series, MatchMatrix, RatingVector,
    TournamentHistory,
};

use crate::config::{parse_config, Experiment, Settings, SEED_ENV};
use crate::error::{CliError, Result};
use crate::manifest::RunManifest;
use crate::report::{
    render_substrate_csv, render_timeseries_csv, write_scatter_csv, Table,
};
use crate::svg::emit_svg_scatter;

pub const MANIFEST_FILE: &str = "manifest.txt";

/// (x, y) pairs drawn after a scatter run, grouped by `p_rand`.
pub const SCATTER_PLOTS: [(&str, &str); 8] = [
    ("itx_norm", "kld_avg"),
    ("itx_norm", "ptm_sc_rt"),
    ("itx_norm", "ptm_sc_gp"),
    ("itx_avg", "crd_sc_gp"),
    ("max_sc", "crd_sc_gp"),
    ("max_gp", "crd_sc_gp"),
    ("crd_sc_rt", "crd_sc_gp"),
    ("crd_sc_gp", "ptm_sc_gp"),
];

#[derive(Debug, Parser)]
#[command(
    name = "intrans",
    version,
    about = "Intransitivity experiments on a round-robin game with tunable randomness",
    arg_required_else_help = true
)]
pub struct Cli {
    /// Flat `key = value` config file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Directory receiving CSV, SVG and manifest files.
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replay the five-player, two-round worked example.
    Table1,
    /// One tournament chain: scores, ratings and gp per instance.
    Timeseries(GameFlags),
    /// Repeated chains over a grid of player counts and randomness levels.
    Scatter(ScatterFlags),
    /// Subjective fitness of a number-game population.
    Substrate(SubstrateFlags),
    /// Render two columns of a CSV file as an SVG scatter plot.
    Plot(PlotArgs),
}

#[derive(Debug, Args, Default)]
pub struct GameFlags {
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub n_players: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p_rand: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k_factor: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub initial_rating: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub initial_spread: Option<String>,
    #[arg(long)]
    pub instances: Option<String>,
    #[arg(long)]
    pub discard: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct ScatterFlags {
    #[command(flatten)]
    pub game: GameFlags,
    #[arg(long)]
    pub reps: Option<String>,
    /// Comma-separated player counts.
    #[arg(long)]
    pub grid_n: Option<String>,
    /// Comma-separated randomness levels.
    #[arg(long)]
    pub grid_p_rand: Option<String>,
    #[arg(long)]
    pub level: Option<String>,
    /// 20 repetitions of 200 instances (40 discarded) unless overridden.
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Args, Default)]
pub struct SubstrateFlags {
    #[arg(long)]
    pub seed: Option<String>,
    /// identity, sphere or gaussian.
    #[arg(long)]
    pub landscape: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gaussian_center: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gaussian_width: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub domain_lo: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub domain_hi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub neighborhood_radius: Option<String>,
    #[arg(long)]
    pub pop_size: Option<String>,
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long)]
    pub include_self: bool,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    /// Column whose values select point style and legend entry.
    #[arg(long)]
    pub group: Option<String>,
    /// Defaults to `<out-dir>/plot.svg`.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn put(map: &mut BTreeMap<String, String>, key: &str, value: &Option<String>) {
    if let Some(v) = value {
        map.insert(key.to_string(), v.clone());
    }
}

impl GameFlags {
    fn collect(&self, map: &mut BTreeMap<String, String>) {
        put(map, "seed", &self.seed);
        put(map, "n_players", &self.n_players);
        put(map, "p_rand", &self.p_rand);
        put(map, "k_factor", &self.k_factor);
        put(map, "initial_rating", &self.initial_rating);
        put(map, "initial_spread", &self.initial_spread);
        put(map, "instances", &self.instances);
        put(map, "discard", &self.discard);
    }
}

impl ScatterFlags {
    fn collect(&self, map: &mut BTreeMap<String, String>) {
        self.game.collect(map);
        put(map, "reps", &self.reps);
        put(map, "grid_n", &self.grid_n);
        put(map, "grid_p_rand", &self.grid_p_rand);
        put(map, "level", &self.level);
        if self.fast {
            map.insert("fast".into(), "true".into());
        }
    }
}

impl SubstrateFlags {
    fn collect(&self, map: &mut BTreeMap<String, String>) {
        put(map, "seed", &self.seed);
        put(map, "landscape", &self.landscape);
        put(map, "gaussian_center", &self.gaussian_center);
        put(map, "gaussian_width", &self.gaussian_width);
        put(map, "domain_lo", &self.domain_lo);
        put(map, "domain_hi", &self.domain_hi);
        put(map, "neighborhood_radius", &self.neighborhood_radius);
        put(map, "pop_size", &self.pop_size);
        put(map, "mu", &self.mu);
        if self.include_self {
            map.insert("include_self".into(), "true".into());
        }
    }
}

impl Command {
    fn experiment(&self) -> Experiment {
        match self {
            Command::Table1 => Experiment::Table1,
            Command::Timeseries(_) => Experiment::TimeSeries,
            Command::Scatter(_) => Experiment::Scatter,
            Command::Substrate(_) => Experiment::Substrate,
            Command::Plot(_) => Experiment::Plot,
        }
    }

    fn overrides(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        match self {
            Command::Timeseries(f) => f.collect(&mut map),
            Command::Scatter(f) => f.collect(&mut map),
            Command::Substrate(f) => f.collect(&mut map),
            Command::Table1 | Command::Plot(_) => {}
        }
        map
    }
}

/// Round 0 and round 1 outcome tables of the five-player worked example.
pub fn worked_example_rounds() -> [MatchMatrix; 2] {
    let r0 = MatchMatrix::from_rows(&[
        vec![0, 1, 1, 1, 1],
        vec![0, 0, 1, 0, 1],
        vec![0, 0, 0, 1, 1],
        vec![0, 1, 0, 0, 1],
        vec![0, 0, 0, 0, 0],
    ]);
    let r1 = MatchMatrix::from_rows(&[
        vec![0, 0, 1, 1, 1],
        vec![1, 0, 1, 1, 0],
        vec![0, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 1],
        vec![0, 1, 1, 0, 0],
    ]);
    [
        r0.expect("fixed table is a valid tournament"),
        r1.expect("fixed table is a valid tournament"),
    ]
}

/// Worked example replayed from equal ratings of 1600 with `K = 15`.
pub fn worked_example_history() -> Result<TournamentHistory> {
    Ok(replay_history(
        RatingVector::uniform(5, 1600.0),
        worked_example_rounds().to_vec(),
        15.0,
        0,
    )?)
}

fn save(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(CliError::io(path))
}

#[allow(clippy::needless_range_loop)]
fn run_table1(out_dir: &Path, stdout: &mut dyn Write, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    let h = worked_example_history()?;
    let rounded: Vec<Vec<i64>> = h.ratings.iter().map(RatingVector::rounded).collect();
    let [_, _, rank_gp] = h.ranks_at(1).expect("two retained instances");
    let mut text = String::from("player  rt(0)  sc(0)  rt(1)  sc(1)  rt(2)   gp  rank\n");
    for i in 0..5 {
        text.push_str(&format!(
            "{:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>4} {:>5}\n",
            i + 1,
            rounded[0][i],
            h.scores[0].values()[i],
            rounded[1][i],
            h.scores[1].values()[i],
            rounded[2][i],
            h.metrics.gp[i],
            rank_gp.values()[i],
        ));
    }
    text.push_str(&format!(
        "itx: round 0 = {}, round 1 = {} (maximum {})\n",
        itx(&h.matrices[0]),
        itx(&h.matrices[1]),
        itx_max(5)?
    ));
    stdout
        .write_all(text.as_bytes())
        .map_err(CliError::io("<stdout>"))?;
    let path = out_dir.join("table1.csv");
    save(&path, &render_timeseries_csv(&h))?;
    artifacts.push(path);
    Ok(())
}

fn run_timeseries(
    settings: &Settings,
    out_dir: &Path,
    stdout: &mut dyn Write,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let h = run_time_series(&settings.game)?;
    let bytes = render_timeseries_csv(&h);
    let path = out_dir.join("timeseries.csv");
    save(&path, &bytes)?;
    artifacts.push(path.clone());
    let table = Table::from_bytes(&bytes, &path)?;
    for y in ["sc", "rt", "gp"] {
        let svg = out_dir.join(format!("timeseries_{y}.svg"));
        emit_svg_scatter(&table, "k", y, Some("player"), &svg)?;
        artifacts.push(svg);
    }
    let last = h.ratings.last().expect("history has ratings");
    writeln!(
        stdout,
        "{} instances, final rating spread {:.1} (initial {:.1}), gp {:?}",
        h.n_instances(),
        last.spread(),
        h.ratings[0].spread(),
        h.metrics
            .gp
            .iter()
            .map(|g| (g * 1000.0).round() / 1000.0)
            .collect::<Vec<_>>()
    )
    .map_err(CliError::io("<stdout>"))?;
    Ok(())
}

fn run_scatter_cmd(
    settings: &Settings,
    out_dir: &Path,
    stdout: &mut dyn Write,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let report = run_scatter(&settings.scatter_grid())?;
    let path = out_dir.join("scatter.csv");
    let written = write_scatter_csv(&report, &path)?;
    artifacts.extend(written);
    let table = Table::read(&path)?;
    for (x, y) in SCATTER_PLOTS {
        let svg = out_dir.join(format!("scatter_{x}_vs_{y}.svg"));
        emit_svg_scatter(&table, x, y, Some("p_rand"), &svg)?;
        artifacts.push(svg);
    }
    for cell in &report.cells {
        let itx = cell.summary_of("itx_norm").expect("known column");
        let kld = cell.summary_of("kld_avg").expect("known column");
        let crd = cell.summary_of("crd_sc_gp").expect("known column");
        writeln!(
            stdout,
            "N={:<3} p_rand={:<5} itx_norm={:.4}±{:.4} kld={:.4}±{:.4} crd(sc,gp)={:.4}±{:.4}",
            cell.n_players,
            cell.p_rand,
            itx.mean,
            itx.half_width,
            kld.mean,
            kld.half_width,
            crd.mean,
            crd.half_width
        )
        .map_err(CliError::io("<stdout>"))?;
    }
    Ok(())
}

fn run_substrate(
    settings: &Settings,
    out_dir: &Path,
    stdout: &mut dyn Write,
    artifacts: &mut Vec<PathBuf>,
) -> Result<()> {
    let landscape = settings.landscape()?;
    let sub = &settings.substrate;
    let mut rng = ChaCha8Rng::seed_from_u64(settings.game.rng_seed);
    let pop = Population::uniform(&landscape, sub.pop_size, &mut rng)?;
    let f_sub = evaluate_population(&landscape, &pop, sub.mu, sub.include_self, &mut rng)?;
    let f_obj = pop
        .members
        .iter()
        .map(|&s| objective_fitness(&landscape, s))
        .collect::<intrans_core::Result<Vec<f64>>>()?;
    let points: Vec<f64> = pop.members.iter().map(|s| s.0).collect();
    let bytes = render_substrate_csv(&points, &f_obj, &f_sub);
    let path = out_dir.join("substrate.csv");
    save(&path, &bytes)?;
    artifacts.push(path.clone());
    let table = Table::from_bytes(&bytes, &path)?;
    for y in ["f_obj", "f_sub"] {
        let svg = out_dir.join(format!("substrate_{y}.svg"));
        emit_svg_scatter(&table, "s", y, None, &svg)?;
        artifacts.push(svg);
    }
    writeln!(
        stdout,
        "{} points on the {} landscape, mu = {}, mean f_sub = {:.4}",
        pop.len(),
        landscape.kind.name(),
        sub.mu,
        f_sub.iter().sum::<f64>() / f_sub.len() as f64
    )
    .map_err(CliError::io("<stdout>"))?;
    Ok(())
}

fn run_plot(args: &PlotArgs, out_dir: &Path, artifacts: &mut Vec<PathBuf>) -> Result<()> {
    let table = Table::read(&args.input)?;
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| out_dir.join("plot.svg"));
    emit_svg_scatter(&table, &args.x, &args.y, args.group.as_deref(), &output)?;
    artifacts.push(output);
    Ok(())
}

/// Runs a parsed command line, writing artifacts and a manifest into the
/// output directory.
pub fn run(cli: &Cli, env_seed: Option<&str>, stdout: &mut dyn Write) -> Result<RunManifest> {
    let started = Instant::now();
    let experiment = cli.command.experiment();
    let settings = parse_config(
        experiment,
        cli.config.as_deref(),
        &cli.command.overrides(),
        env_seed,
    )?;
    let out_dir = cli.out_dir.as_path();
    std::fs::create_dir_all(out_dir).map_err(CliError::io(out_dir))?;
    let mut artifacts = Vec::new();
    match &cli.command {
        Command::Table1 => run_table1(out_dir, stdout, &mut artifacts)?,
        Command::Timeseries(_) => run_timeseries(&settings, out_dir, stdout, &mut artifacts)?,
        Command::Scatter(_) => run_scatter_cmd(&settings, out_dir, stdout, &mut artifacts)?,
        Command::Substrate(_) => run_substrate(&settings, out_dir, stdout, &mut artifacts)?,
        Command::Plot(args) => run_plot(args, out_dir, &mut artifacts)?,
    }
    let mut manifest = RunManifest::new(settings);
    manifest.artifacts = artifacts;
    manifest.wall_clock = started.elapsed();
    manifest.write(&out_dir.join(MANIFEST_FILE))?;
    Ok(manifest)
}

/// Parses `argv` (program name first), runs it and returns the exit status.
pub fn cli_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, env_seed.as_deref(), &mut stdout) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Usage(_) | CliError::Config { .. } => 2,
                _ => 1,
            }
        }
    }
}
