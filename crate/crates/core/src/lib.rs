//! Round-robin tournaments with tunable randomness, Elo ratings, and
//! measures of static (cyclic triads, log-loss) and dynamic (rank
//! mismatch) intransitivity between subjective and objective fitness.

pub mod error;
pub mod experiments;
pub mod game;
pub mod metrics;
pub mod rating;
pub mod substrate;

pub use error::{Error, Result};
pub use experiments::{
    confidence_interval, derive_seed, replay_history, run_scatter, run_time_series,
    ConfidenceInterval, MetricSeries, RepetitionMetrics, ScatterCell, ScatterGrid, ScatterReport,
    TournamentHistory,
};
pub use game::{
    initial_ratings, resolve_round, schedule_round_robin, scores, GameConfig, MatchMatrix,
    RatingVector, ScoreVector,
};
pub use metrics::{
    crd, generalization_performance, itx, itx_from_scores, itx_max, kld, ptm, rank_with_ties,
    time_average, RankVector,
};
pub use rating::{elo_update, expected_outcome, win_probability, ExpectationVector};
