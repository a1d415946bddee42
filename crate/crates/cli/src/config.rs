//! Flat `key = value` configuration.
//!
//! One key per line, `#` starts a comment. Values are layered as
//! defaults < `INTRANS_SEED` (seed only) < config file < command-line flags.
//! Unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use intrans_core::substrate::{LandscapeKind, ObjectiveLandscape};
use intrans_core::{GameConfig, ScatterGrid};

use crate::error::{CliError, Result};

pub const SEED_ENV: &str = "INTRANS_SEED";

pub const KEYS: &[&str] = &[
    "experiment",
    "seed",
    "n_players",
    "p_rand",
    "k_factor",
    "initial_rating",
    "initial_spread",
    "instances",
    "discard",
    "reps",
    "grid_n",
    "grid_p_rand",
    "level",
    "fast",
    "landscape",
    "gaussian_center",
    "gaussian_width",
    "domain_lo",
    "domain_hi",
    "neighborhood_radius",
    "pop_size",
    "mu",
    "include_self",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Table1,
    TimeSeries,
    Scatter,
    Substrate,
    Plot,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Table1 => "table1",
            Experiment::TimeSeries => "timeseries",
            Experiment::Scatter => "scatter",
            Experiment::Substrate => "substrate",
            Experiment::Plot => "plot",
        }
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "table1" => Experiment::Table1,
            "timeseries" => Experiment::TimeSeries,
            "scatter" => Experiment::Scatter,
            "substrate" => Experiment::Substrate,
            "plot" => Experiment::Plot,
            _ => return Err(format!("unknown experiment `{s}`")),
        })
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterOptions {
    pub grid_n: Vec<usize>,
    pub grid_p_rand: Vec<f64>,
    pub reps: usize,
    pub level: f64,
    pub fast: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubstrateOptions {
    pub landscape: String,
    pub gaussian_center: f64,
    pub gaussian_width: f64,
    pub domain_lo: f64,
    pub domain_hi: f64,
    pub neighborhood_radius: f64,
    pub pop_size: usize,
    pub mu: usize,
    pub include_self: bool,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub experiment: Experiment,
    pub game: GameConfig,
    pub scatter: ScatterOptions,
    pub substrate: SubstrateOptions,
}

/// Parses `key = value` lines into a map.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "line {}: expected `key = value`, got `{line}`",
                lineno + 1
            ))
        })?;
        let key = key.trim().to_string();
        check_known(&key)?;
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn check_known(key: &str) -> Result<()> {
    if KEYS.contains(&key) {
        Ok(())
    } else {
        Err(CliError::config(key, "unknown key"))
    }
}

struct Layered<'a> {
    map: &'a BTreeMap<String, String>,
}

impl Layered<'_> {
    fn get<T: FromStr>(&self, key: &'static str, default: T) -> Result<T> {
        match self.map.get(key) {
            None => Ok(default),
            Some(raw) => raw.parse().map_err(|_| {
                CliError::config(
                    key,
                    format!("cannot parse `{raw}` as {}", std::any::type_name::<T>()),
                )
            }),
        }
    }

    fn list<T>(&self, key: &'static str, default: &[T]) -> Result<Vec<T>>
    where
        T: FromStr + Clone,
    {
        match self.map.get(key) {
            None => Ok(default.to_vec()),
            Some(raw) => raw
                .split(',')
                .map(|item| {
                    item.trim().parse().map_err(|_| {
                        CliError::config(
                            key,
                            format!(
                                "cannot parse `{}` as {}",
                                item.trim(),
                                std::any::type_name::<T>()
                            ),
                        )
                    })
                })
                .collect(),
        }
    }
}

/// Resolves settings for `experiment` from an optional config file and
/// flag overrides. `env_seed` is consulted only when neither sets `seed`.
pub fn parse_config(
    experiment: Experiment,
    file: Option<&Path>,
    overrides: &BTreeMap<String, String>,
    env_seed: Option<&str>,
) -> Result<Settings> {
    let mut map = BTreeMap::new();
    if let Some(seed) = env_seed {
        map.insert("seed".to_string(), seed.trim().to_string());
    }
    if let Some(path) = file {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        map.extend(parse_kv(&text)?);
    }
    for (k, v) in overrides {
        check_known(k)?;
        map.insert(k.clone(), v.clone());
    }
    map.insert("experiment".into(), experiment.name().into());
    settings_from_map(&map)
}

pub fn settings_from_map(map: &BTreeMap<String, String>) -> Result<Settings> {
    for key in map.keys() {
        check_known(key)?;
    }
    let l = Layered { map };
    let experiment: Experiment = match map.get("experiment") {
        Some(raw) => raw
            .parse()
            .map_err(|e: String| CliError::config("experiment", e))?,
        None => Experiment::TimeSeries,
    };
    let fast = l.get("fast", false)?;
    let (def_instances, def_discard, def_reps) = match (experiment, fast) {
        (Experiment::Scatter, false) => (1000, 200, 100),
        (Experiment::Scatter, true) => (200, 40, 20),
        _ => (20, 0, 100),
    };
    let defaults = GameConfig::default();
    let game = GameConfig {
        n_players: l.get("n_players", defaults.n_players)?,
        p_rand: l.get("p_rand", defaults.p_rand)?,
        k_factor: l.get("k_factor", defaults.k_factor)?,
        initial_rating: l.get("initial_rating", defaults.initial_rating)?,
        initial_spread: l.get("initial_spread", defaults.initial_spread)?,
        n_instances: l.get("instances", def_instances)?,
        discard_transient: l.get("discard", def_discard)?,
        rng_seed: l.get("seed", defaults.rng_seed)?,
    };
    game.validate().map_err(rename_core_keys)?;
    let scatter = ScatterOptions {
        grid_n: l.list("grid_n", &ScatterGrid::DEFAULT_N)?,
        grid_p_rand: l.list("grid_p_rand", &ScatterGrid::DEFAULT_P_RAND)?,
        reps: l.get("reps", def_reps)?,
        level: l.get("level", 0.99)?,
        fast,
    };
    let substrate = SubstrateOptions {
        landscape: l.get("landscape", "identity".to_string())?,
        gaussian_center: l.get("gaussian_center", 0.0)?,
        gaussian_width: l.get("gaussian_width", 1.0)?,
        domain_lo: l.get("domain_lo", -5.0)?,
        domain_hi: l.get("domain_hi", 5.0)?,
        neighborhood_radius: l.get("neighborhood_radius", 0.1)?,
        pop_size: l.get("pop_size", 20)?,
        mu: l.get("mu", 5)?,
        include_self: l.get("include_self", false)?,
    };
    let settings = Settings {
        experiment,
        game,
        scatter,
        substrate,
    };
    match experiment {
        Experiment::Scatter => {
            settings.scatter_grid().validate().map_err(rename_core_keys)?;
        }
        Experiment::Substrate => {
            settings.landscape()?;
            let sub = &settings.substrate;
            let pool = sub.pop_size - usize::from(!sub.include_self && sub.pop_size > 0);
            if sub.mu == 0 || sub.mu > pool {
                return Err(CliError::config(
                    "mu",
                    format!("{} must lie in [1, {pool}]", sub.mu),
                ));
            }
        }
        _ => {}
    }
    Ok(settings)
}

fn rename_core_keys(e: intrans_core::Error) -> CliError {
    match e {
        intrans_core::Error::InvalidConfig { key, reason } => {
            let key = match key {
                "n_instances" => "instances",
                "discard_transient" => "discard",
                other => other,
            };
            CliError::config(key, reason)
        }
        other => other.into(),
    }
}

impl Settings {
    pub fn scatter_grid(&self) -> ScatterGrid {
        ScatterGrid {
            n_players: self.scatter.grid_n.clone(),
            p_rand: self.scatter.grid_p_rand.clone(),
            reps: self.scatter.reps,
            instances: self.game.n_instances,
            discard: self.game.discard_transient,
            base_seed: self.game.rng_seed,
            k_factor: self.game.k_factor,
            initial_rating: self.game.initial_rating,
            initial_spread: self.game.initial_spread,
            level: self.scatter.level,
        }
    }

    pub fn landscape(&self) -> Result<ObjectiveLandscape> {
        let s = &self.substrate;
        let kind = match s.landscape.as_str() {
            "identity" => LandscapeKind::Identity,
            "sphere" => LandscapeKind::NegSphere,
            "gaussian" => LandscapeKind::Gaussian {
                center: s.gaussian_center,
                width: s.gaussian_width,
            },
            other => {
                return Err(CliError::config(
                    "landscape",
                    format!("`{other}` is not one of identity, sphere, gaussian"),
                ))
            }
        };
        if !(s.domain_lo.is_finite() && s.domain_hi.is_finite() && s.domain_lo <= s.domain_hi) {
            return Err(CliError::config(
                "domain_lo",
                format!("[{}, {}] is not a bounded interval", s.domain_lo, s.domain_hi),
            ));
        }
        Ok(ObjectiveLandscape::new(kind, s.domain_lo, s.domain_hi)
            .map_err(|e| CliError::config("landscape", e.to_string()))?
            .with_neighborhood(s.neighborhood_radius))
    }

    /// Every key with its resolved value, parseable by [`parse_kv`].
    pub fn to_config_text(&self) -> String {
        fn join<T: fmt::Display>(v: &[T]) -> String {
            v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
        }
        let g = &self.game;
        let sc = &self.scatter;
        let su = &self.substrate;
        let pairs: Vec<(&str, String)> = vec![
            ("experiment", self.experiment.to_string()),
            ("seed", g.rng_seed.to_string()),
            ("n_players", g.n_players.to_string()),
            ("p_rand", g.p_rand.to_string()),
            ("k_factor", g.k_factor.to_string()),
            ("initial_rating", g.initial_rating.to_string()),
            ("initial_spread", g.initial_spread.to_string()),
            ("instances", g.n_instances.to_string()),
            ("discard", g.discard_transient.to_string()),
            ("reps", sc.reps.to_string()),
            ("grid_n", join(&sc.grid_n)),
            ("grid_p_rand", join(&sc.grid_p_rand)),
            ("level", sc.level.to_string()),
            ("fast", sc.fast.to_string()),
            ("landscape", su.landscape.clone()),
            ("gaussian_center", su.gaussian_center.to_string()),
            ("gaussian_width", su.gaussian_width.to_string()),
            ("domain_lo", su.domain_lo.to_string()),
            ("domain_hi", su.domain_hi.to_string()),
            ("neighborhood_radius", su.neighborhood_radius.to_string()),
            ("pop_size", su.pop_size.to_string()),
            ("mu", su.mu.to_string()),
            ("include_self", su.include_self.to_string()),
        ];
        let mut out = String::new();
        for (k, v) in pairs {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}
