//! Elo rating model.

use crate::error::{Error, Result};
use crate::game::{RatingVector, ScoreVector};

/// Expected points `ex_i(k)` of every player over one round robin.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationVector(Vec<f64>);

impl ExpectationVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Probability that a player rated `rating` beats one rated `opponent`.
#[inline]
pub fn win_probability(rating: f64, opponent: f64) -> f64 {
    1.0 / (1.0 + 10f64.powf((opponent - rating) / 400.0))
}

/// Sum of each player's win probabilities against all other players.
pub fn expected_outcome(ratings: &RatingVector) -> ExpectationVector {
    let rt = ratings.values();
    let n = rt.len();
    let mut ex = vec![0.0; n];
    // One evaluation per pair; the complement goes to the opponent.
    for i in 0..n {
        for j in (i + 1)..n {
            let p = win_probability(rt[i], rt[j]);
            ex[i] += p;
            ex[j] += 1.0 - p;
        }
    }
    ExpectationVector(ex)
}

/// `rt_i + K (sc_i - ex_i)` for every player.
pub fn elo_update(
    ratings: &RatingVector,
    scores: &ScoreVector,
    k_factor: f64,
) -> Result<RatingVector> {
    if ratings.len() != scores.len() {
        return Err(Error::Dimension {
            expected: ratings.len(),
            found: scores.len(),
        });
    }
    if !(k_factor.is_finite() && k_factor > 0.0) {
        return Err(Error::config(
            "k_factor",
            format!("{k_factor} must be a positive real"),
        ));
    }
    let ex = expected_outcome(ratings);
    let next = ratings
        .values()
        .iter()
        .zip(scores.values())
        .zip(ex.values())
        .map(|((&rt, &sc), &ex)| rt + k_factor * (f64::from(sc) - ex))
        .collect();
    RatingVector::new(next)
}
