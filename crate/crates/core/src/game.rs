//! Players, round-robin scheduling and resolution of a single round.
//!
//! Every game of a round is either *random* (with probability `p_rand`,
//! decided by a fair coin) or *deterministic*, in which case the strictly
//! higher-rated player wins. An exact rating tie in a deterministic game is
//! also settled by a fair coin.

use rand::Rng;

use crate::error::{Error, Result};

pub const DEFAULT_INITIAL_RATING: f64 = 1600.0;
pub const DEFAULT_INITIAL_SPREAD: f64 = 5.0;
pub const DEFAULT_K_FACTOR: f64 = 15.0;

/// All tunables of one tournament run.
#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    pub n_players: usize,
    pub p_rand: f64,
    pub k_factor: f64,
    pub initial_rating: f64,
    /// Half-width of the uniform perturbation applied to `initial_rating`.
    pub initial_spread: f64,
    pub n_instances: usize,
    /// Leading instances excluded from metric averages.
    pub discard_transient: usize,
    pub rng_seed: u64,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            n_players: 6,
            p_rand: 0.01,
            k_factor: DEFAULT_K_FACTOR,
            initial_rating: DEFAULT_INITIAL_RATING,
            initial_spread: DEFAULT_INITIAL_SPREAD,
            n_instances: 20,
            discard_transient: 0,
            rng_seed: 0,
        }
    }
}

impl GameConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_players < 3 {
            return Err(Error::config(
                "n_players",
                format!("{} is below the minimum of 3", self.n_players),
            ));
        }
        if !(0.0..=1.0).contains(&self.p_rand) {
            return Err(Error::config(
                "p_rand",
                format!("{} is outside [0, 1]", self.p_rand),
            ));
        }
        if !(self.k_factor.is_finite() && self.k_factor > 0.0) {
            return Err(Error::config(
                "k_factor",
                format!("{} must be a positive real", self.k_factor),
            ));
        }
        if !self.initial_rating.is_finite() {
            return Err(Error::config("initial_rating", "must be finite"));
        }
        if !(self.initial_spread.is_finite() && self.initial_spread >= 0.0) {
            return Err(Error::config(
                "initial_spread",
                format!("{} must be a nonnegative real", self.initial_spread),
            ));
        }
        if self.n_instances == 0 {
            return Err(Error::config("n_instances", "must be positive"));
        }
        if self.discard_transient >= self.n_instances {
            return Err(Error::config(
                "discard_transient",
                format!(
                    "{} must be smaller than n_instances ({})",
                    self.discard_transient, self.n_instances
                ),
            ));
        }
        Ok(())
    }

    /// Number of instances that survive the transient cut.
    pub fn retained_instances(&self) -> usize {
        self.n_instances.saturating_sub(self.discard_transient)
    }
}

/// Elo ratings `rt_i(k)` of all players at one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingVector(Vec<f64>);

impl RatingVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite rating {bad}")));
        }
        Ok(RatingVector(values))
    }

    pub fn uniform(n: usize, rating: f64) -> Self {
        RatingVector(vec![rating; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Ratings rounded to whole Elo points, as printed in reports.
    pub fn rounded(&self) -> Vec<i64> {
        self.0.iter().map(|r| r.round() as i64).collect()
    }

    /// Max minus min rating.
    pub fn spread(&self) -> f64 {
        let max = self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = self.0.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

/// Points `sc_i(k)` each player collected in one round robin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreVector(Vec<u32>);

impl ScoreVector {
    /// Checks that the vector could come from a single round robin:
    /// every entry in `[0, n-1]` and a total of `n(n-1)/2`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "a round robin needs at least 2 players, got {n}"
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v as usize > n - 1) {
            return Err(Error::InvalidArgument(format!(
                "score {v} exceeds the {} games each player plays",
                n - 1
            )));
        }
        let total: u64 = values.iter().map(|&v| u64::from(v)).sum();
        let games = (n * (n - 1) / 2) as u64;
        if total != games {
            return Err(Error::InvalidArgument(format!(
                "scores sum to {total}, a round robin of {n} players has {games} games"
            )));
        }
        Ok(ScoreVector(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&v| f64::from(v)).collect()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&v| u64::from(v)).sum()
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Binary outcome table of one round robin: `beats(i, j)` iff `i` won
/// against `j`. Exactly one of `beats(i, j)` and `beats(j, i)` holds for
/// every `i != j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchMatrix {
    n: usize,
    wins: Vec<bool>,
}

impl MatchMatrix {
    /// Builds a matrix from 0/1 rows. Diagonal entries are ignored.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut wins = vec![false; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if v > 1 {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i}, {j}) = {v} is not a 0/1 outcome"
                    )));
                }
                wins[i * n + j] = v == 1;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if wins[i * n + j] == wins[j * n + i] {
                    return Err(Error::InvalidArgument(format!(
                        "players {i} and {j} must have exactly one winner"
                    )));
                }
            }
        }
        Ok(MatchMatrix { n, wins })
    }

    /// The transitive tournament in which player `order[a]` beats
    /// `order[b]` whenever `a < b`.
    pub fn total_order(order: &[usize]) -> Self {
        let n = order.len();
        let mut m = MatchMatrix {
            n,
            wins: vec![false; n * n],
        };
        for a in 0..n {
            for b in (a + 1)..n {
                m.set_winner(order[a], order[b]);
            }
        }
        m
    }

    fn empty(n: usize) -> Self {
        MatchMatrix {
            n,
            wins: vec![false; n * n],
        }
    }

    fn set_winner(&mut self, winner: usize, loser: usize) {
        self.wins[winner * self.n + loser] = true;
        self.wins[loser * self.n + winner] = false;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.wins[i * self.n + j]
    }

    /// Row `i` as 0/1 values with a zero diagonal.
    pub fn row(&self, i: usize) -> Vec<u8> {
        (0..self.n).map(|j| u8::from(self.beats(i, j))).collect()
    }
}

/// Every unordered pair `(i, j)` with `i < j`, once.
pub fn schedule_round_robin(n: usize) -> Result<Vec<(usize, usize)>> {
    if n < 2 {
        return Err(Error::config(
            "n_players",
            format!("a round robin needs at least 2 players, got {n}"),
        ));
    }
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    Ok(pairs)
}

/// `initial_rating + U(-spread, spread)` for every player.
pub fn initial_ratings<R: Rng + ?Sized>(config: &GameConfig, rng: &mut R) -> RatingVector {
    let values = (0..config.n_players)
        .map(|_| {
            if config.initial_spread > 0.0 {
                config.initial_rating
                    + rng.gen_range(-config.initial_spread..=config.initial_spread)
            } else {
                config.initial_rating
            }
        })
        .collect();
    RatingVector(values)
}

/// Plays one round robin among players holding `ratings`.
pub fn resolve_round<R: Rng + ?Sized>(
    ratings: &RatingVector,
    p_rand: f64,
    rng: &mut R,
) -> Result<MatchMatrix> {
    if !(0.0..=1.0).contains(&p_rand) {
        return Err(Error::config("p_rand", format!("{p_rand} is outside [0, 1]")));
    }
    let rt = ratings.values();
    let n = rt.len();
    let mut m = MatchMatrix::empty(n);
    for (i, j) in schedule_round_robin(n)? {
        let random = rng.gen_bool(p_rand);
        let i_wins = if random || rt[i] == rt[j] {
            rng.gen_bool(0.5)
        } else {
            rt[i] > rt[j]
        };
        if i_wins {
            m.set_winner(i, j);
        } else {
            m.set_winner(j, i);
        }
    }
    Ok(m)
}

/// Number of wins of each player.
pub fn scores(m: &MatchMatrix) -> ScoreVector {
    let values = (0..m.n())
        .map(|i| (0..m.n()).filter(|&j| j != i && m.beats(i, j)).count() as u32)
        .collect();
    ScoreVector(values)
}
