//! Static and dynamic intransitivity measures.
//!
//! Static measures look at a single round: `itx` counts cyclic triads and
//! `kld` scores how badly the ratings predicted the outcomes. Dynamic
//! measures compare rankings by subjective fitness (scores) with rankings by
//! an objective fitness (ratings or generalization performance): `crd`
//! within one instance, `ptm` across three consecutive instances.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::game::{MatchMatrix, RatingVector, ScoreVector};
use crate::rating::win_probability;

/// Probabilities are clamped to `[EPS, 1 - EPS]` before taking logs.
pub const KLD_EPS: f64 = 1e-12;

/// Window length used by [`ptm`].
pub const PTM_WINDOW: usize = 3;

/// Tied-rank-averaged ranking, rank 1 = best.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector(Vec<f64>);

impl RankVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

fn binomial3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Maximum number of cyclic triads among `n` players, `C(n, 3)`.
pub fn itx_max(n: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "triads need at least 3 players, got {n}"
        )));
    }
    Ok(binomial3(n as u64))
}

/// Number of cyclic triads, by enumerating every triple.
pub fn itx(m: &MatchMatrix) -> u64 {
    let n = m.n();
    let mut count = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let ij = m.beats(i, j);
            for k in (j + 1)..n {
                // i->j->k->i or the reverse orientation.
                if m.beats(j, k) == ij && m.beats(k, i) == ij {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Number of cyclic triads from the score sequence alone:
/// `C(n, 3) - sum_i C(sc_i, 2)`.
pub fn itx_from_scores(scores: &[f64]) -> Result<u64> {
    let n = scores.len();
    let mut whole = Vec::with_capacity(n);
    for &s in scores {
        if !(s.is_finite() && s.fract() == 0.0 && s >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "score {s} is not a nonnegative integer"
            )));
        }
        whole.push(s as u32);
    }
    let sc = ScoreVector::new(whole)?;
    let transitive: u64 = sc
        .values()
        .iter()
        .map(|&s| u64::from(s) * u64::from(s.saturating_sub(1)) / 2)
        .sum();
    binomial3(n as u64).checked_sub(transitive).ok_or_else(|| {
        Error::InvalidArgument("score sequence is not realizable by a tournament".into())
    })
}

/// Mean per-game log-loss of the rating prediction against the result.
///
/// For a game between `i` and `j` with `p = win_probability(rt_i, rt_j)`,
/// the term is `-ln p` if `i` won and `-ln (1 - p)` otherwise.
pub fn kld(m: &MatchMatrix, ratings: &RatingVector) -> Result<f64> {
    let n = m.n();
    if ratings.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: ratings.len(),
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument("no games to evaluate".into()));
    }
    let rt = ratings.values();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let p = win_probability(rt[i], rt[j]).clamp(KLD_EPS, 1.0 - KLD_EPS);
            total -= if m.beats(i, j) { p.ln() } else { (1.0 - p).ln() };
        }
    }
    Ok(total / (n * (n - 1) / 2) as f64)
}

/// Per-player mean score over the given instances.
pub fn generalization_performance(history: &[ScoreVector]) -> Result<Vec<f64>> {
    let first = history
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty score history".into()))?;
    let n = first.len();
    let mut gp = vec![0.0; n];
    for sc in history {
        if sc.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: sc.len(),
            });
        }
        for (g, &s) in gp.iter_mut().zip(sc.values()) {
            *g += f64::from(s);
        }
    }
    let k = history.len() as f64;
    gp.iter_mut().for_each(|g| *g /= k);
    Ok(gp)
}

/// Ranks `values` so that the largest gets rank 1 (or the smallest, when
/// `higher_is_better` is false). Tied values share the mean of the
/// positions they occupy.
pub fn rank_with_ties(values: &[f64], higher_is_better: bool) -> RankVector {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    let cmp = |a: &usize, b: &usize| -> Ordering {
        let o = values[*a].total_cmp(&values[*b]);
        if higher_is_better {
            o.reverse()
        } else {
            o
        }
    };
    order.sort_by(cmp);
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start+1 ..= end share their mean.
        let shared = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = shared;
        }
        start = end;
    }
    RankVector(ranks)
}

/// Total absolute rank displacement between two fitness vectors,
/// normalized by `floor(n^2 / 2)`.
pub fn crd(sub: &[f64], obj: &[f64]) -> Result<f64> {
    if sub.len() != obj.len() {
        return Err(Error::Dimension {
            expected: sub.len(),
            found: obj.len(),
        });
    }
    let n = sub.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "ranking difference needs at least 2 players, got {n}"
        )));
    }
    let rs = rank_with_ties(sub, true);
    let ro = rank_with_ties(obj, true);
    let raw: f64 = rs
        .values()
        .iter()
        .zip(ro.values())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(raw / (n * n / 2) as f64)
}

/// Fraction of (player, window) pairs where the ranking of `window`
/// consecutive subjective values disagrees with that of the objective
/// values.
///
/// Both series are instance-major: `sub[k][i]` is player `i` at
/// instance `k`.
pub fn ptm(sub: &[Vec<f64>], obj: &[Vec<f64>], window: usize) -> Result<f64> {
    if sub.len() != obj.len() {
        return Err(Error::Dimension {
            expected: sub.len(),
            found: obj.len(),
        });
    }
    if window < 2 {
        return Err(Error::InvalidArgument(format!(
            "window must cover at least 2 instances, got {window}"
        )));
    }
    let t = sub.len();
    if t < window {
        return Err(Error::InvalidArgument(format!(
            "series of length {t} is shorter than the window of {window}"
        )));
    }
    let n = sub[0].len();
    for row in sub.iter().chain(obj) {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: row.len(),
            });
        }
    }
    if n == 0 {
        return Err(Error::InvalidArgument("no players".into()));
    }
    let windows = t - window + 1;
    let mut mismatches = 0usize;
    let mut ws = vec![0.0; window];
    let mut wo = vec![0.0; window];
    for player in 0..n {
        for start in 0..windows {
            for d in 0..window {
                ws[d] = sub[start + d][player];
                wo[d] = obj[start + d][player];
            }
            if rank_with_ties(&ws, true) != rank_with_ties(&wo, true) {
                mismatches += 1;
            }
        }
    }
    Ok(mismatches as f64 / (n * windows) as f64)
}

/// Arithmetic mean of a nonempty series.
pub fn time_average(series: &[f64]) -> Result<f64> {
    if series.is_empty() {
        return Err(Error::InvalidArgument("empty series".into()));
    }
    Ok(series.iter().sum::<f64>() / series.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{fixtures::*, scores};
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    #[test]
    fn itx_max_values() {
        assert_eq!(itx_max(5).unwrap(), 10);
        assert_eq!(itx_max(3).unwrap(), 1);
        assert_eq!(itx_max(16).unwrap(), 14 * 15 * 16 / 6);
        assert!(itx_max(2).is_err());
    }

    #[test]
    fn itx_on_worked_rounds() {
        assert_eq!(itx(&worked_round_0()), 1);
        assert_eq!(itx(&worked_round_1()), 2);
        assert_eq!(itx(&MatchMatrix::total_order(&[2, 0, 3, 1, 4, 5])), 0);
    }

    #[test]
    fn single_cyclic_triad_attains_maximum() {
        let m = MatchMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        assert_eq!(itx(&m), itx_max(3).unwrap());
    }

    #[test]
    fn itx_from_worked_scores() {
        assert_eq!(itx_from_scores(&[4.0, 2.0, 2.0, 2.0, 0.0]).unwrap(), 1);
        assert_eq!(itx_from_scores(&[3.0, 3.0, 0.0, 2.0, 2.0]).unwrap(), 2);
        assert_eq!(itx_from_scores(&[5.0, 4.0, 3.0, 2.0, 1.0, 0.0]).unwrap(), 0);
    }

    #[test]
    fn itx_from_scores_rejects_bad_sequences() {
        assert!(itx_from_scores(&[2.5, 2.0, 2.0, 2.0, 1.5]).is_err());
        assert!(itx_from_scores(&[4.0, 2.0, 2.0, 2.0, 1.0]).is_err());
        assert!(itx_from_scores(&[-1.0, 2.0, 0.0]).is_err());
    }

    #[test]
    fn kld_uniform_prediction_is_ln2() {
        let v = kld(&worked_round_0(), &RatingVector::uniform(5, 1600.0)).unwrap();
        assert!((v - LN_2).abs() < 1e-15);
    }

    #[test]
    fn kld_single_game_terms() {
        // Rating gap giving p = 0.9 for player 0.
        let gap = 400.0 * 9f64.log10();
        let rt = RatingVector::new(vec![1600.0 + gap, 1600.0]).unwrap();
        let win = MatchMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        let loss = MatchMatrix::from_rows(&[vec![0, 0], vec![1, 0]]).unwrap();
        assert!((kld(&win, &rt).unwrap() - 0.105_360_515_657_826_3).abs() < 1e-12);
        assert!((kld(&loss, &rt).unwrap() - 2.302_585_092_994_045_5).abs() < 1e-12);
    }

    #[test]
    fn kld_is_finite_for_extreme_gaps() {
        let rt = RatingVector::new(vec![1e6, 0.0]).unwrap();
        let upset = MatchMatrix::from_rows(&[vec![0, 0], vec![1, 0]]).unwrap();
        let v = kld(&upset, &rt).unwrap();
        assert!(v.is_finite() && (v + KLD_EPS.ln()).abs() < 1e-3);
    }

    #[test]
    fn gp_of_worked_example() {
        let hist = [scores(&worked_round_0()), scores(&worked_round_1())];
        assert_eq!(
            generalization_performance(&hist).unwrap(),
            vec![3.5, 2.5, 1.0, 2.0, 1.0]
        );
        assert!(generalization_performance(&[]).is_err());
        let c = ScoreVector::new(vec![2, 1, 0]).unwrap();
        assert_eq!(
            generalization_performance(&[c.clone(), c.clone(), c]).unwrap(),
            vec![2.0, 1.0, 0.0]
        );
    }

    #[test]
    fn tied_ranks() {
        let r = rank_with_ties(&[3.5, 2.5, 1.0, 2.0, 1.0], true);
        assert_eq!(r.values(), &[1.0, 2.0, 4.5, 3.0, 4.5]);
        assert_eq!(rank_with_ties(&[7.0; 4], true).values(), &[2.5; 4]);
        assert_eq!(
            rank_with_ties(&[9.0, 5.0, 1.0], true).values(),
            &[1.0, 2.0, 3.0]
        );
        assert_eq!(
            rank_with_ties(&[9.0, 5.0, 1.0], false).values(),
            &[3.0, 2.0, 1.0]
        );
    }

    #[test]
    fn crd_values() {
        assert_eq!(crd(&[3.0, 1.0, 2.0], &[30.0, 10.0, 20.0]).unwrap(), 0.0);
        assert_eq!(crd(&[2.0, 1.0], &[1.0, 2.0]).unwrap(), 1.0);
        assert_eq!(
            crd(
                &[4.0, 2.0, 2.0, 2.0, 0.0],
                &[1630.0, 1600.0, 1600.0, 1600.0, 1570.0]
            )
            .unwrap(),
            0.0
        );
        assert!(crd(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn crd_full_reversal_is_one() {
        for n in 2..12 {
            let up: Vec<f64> = (0..n).map(f64::from).collect();
            let down: Vec<f64> = up.iter().rev().copied().collect();
            assert_eq!(crd(&up, &down).unwrap(), 1.0, "n = {n}");
        }
    }

    fn column(v: &[f64]) -> Vec<Vec<f64>> {
        v.iter().map(|&x| vec![x]).collect()
    }

    #[test]
    fn ptm_worked_players() {
        let obj = column(&[1600.0, 1630.0, 1642.0]);
        assert_eq!(ptm(&column(&[4.0, 3.0, 1.0]), &obj, 3).unwrap(), 1.0);
        assert_eq!(ptm(&column(&[2.0, 3.0, 4.0]), &obj, 3).unwrap(), 0.0);
        assert!(ptm(&column(&[2.0, 3.0]), &column(&[1.0, 2.0]), 3).is_err());
    }

    #[test]
    fn ptm_counts_windows() {
        // Player 0 mismatches in the second window only; player 1 always matches.
        let sub = vec![vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0], vec![0.0, 4.0]];
        let obj = vec![vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0], vec![4.0, 4.0]];
        assert_eq!(ptm(&sub, &obj, 3).unwrap(), 0.25);
    }

    #[test]
    fn time_average_values() {
        assert_eq!(time_average(&[1.0, 2.0]).unwrap(), 1.5);
        assert_eq!(time_average(&[4.25; 7]).unwrap(), 4.25);
        assert!(time_average(&[]).is_err());
    }

    #[allow(clippy::needless_range_loop)]
    fn tournament(n: usize) -> impl Strategy<Value = MatchMatrix> {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut rows = vec![vec![0u8; n]; n];
            let mut b = bits.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    if b.next().unwrap() {
                        rows[i][j] = 1;
                    } else {
                        rows[j][i] = 1;
                    }
                }
            }
            MatchMatrix::from_rows(&rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn itx_agrees_with_score_identity(m in (3usize..13).prop_flat_map(tournament)) {
            let via_scores = itx_from_scores(&scores(&m).as_f64()).unwrap();
            prop_assert_eq!(itx(&m), via_scores);
            prop_assert!(itx(&m) <= itx_max(m.n()).unwrap());
        }

        #[test]
        fn rank_sum_is_preserved(v in prop::collection::vec(0u8..6, 1..40)) {
            let vals: Vec<f64> = v.iter().map(|&x| f64::from(x)).collect();
            let n = vals.len() as f64;
            let r = rank_with_ties(&vals, true);
            prop_assert_eq!(r.sum(), n * (n + 1.0) / 2.0);
            prop_assert!(r.values().iter().all(|&x| x >= 1.0 && x <= n));
        }

        #[test]
        fn crd_symmetric_and_rank_based(
            pairs in prop::collection::vec((0u8..8, 0u8..8), 2..20),
        ) {
            let a: Vec<f64> = pairs.iter().map(|p| f64::from(p.0)).collect();
            let b: Vec<f64> = pairs.iter().map(|p| f64::from(p.1)).collect();
            let c = crd(&a, &b).unwrap();
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert_eq!(c, crd(&b, &a).unwrap());
            let a_exp: Vec<f64> = a.iter().map(|x| (x * 0.5).exp() + 3.0).collect();
            prop_assert_eq!(c, crd(&a_exp, &b).unwrap());
        }

        #[test]
        fn ptm_monotone_invariance(
            data in (1usize..5, 3usize..9).prop_flat_map(|(n, t)| (
                prop::collection::vec(prop::collection::vec(0u8..5, n), t),
                prop::collection::vec(prop::collection::vec(0u8..5, n), t),
            )),
        ) {
            let to_f = |s: &Vec<Vec<u8>>| -> Vec<Vec<f64>> {
                s.iter().map(|r| r.iter().map(|&x| f64::from(x)).collect()).collect()
            };
            let sub = to_f(&data.0);
            let obj = to_f(&data.1);
            let p = ptm(&sub, &obj, PTM_WINDOW).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
            let obj_t: Vec<Vec<f64>> =
                obj.iter().map(|r| r.iter().map(|x| 1600.0 + 15.0 * x.powi(3)).collect()).collect();
            prop_assert_eq!(p, ptm(&sub, &obj_t, PTM_WINDOW).unwrap());
            prop_assert_eq!(ptm(&sub, &sub, PTM_WINDOW).unwrap(), 0.0);
        }

        #[test]
        fn kld_nonnegative(
            m in (2usize..9).prop_flat_map(tournament),
            seed_rt in prop::collection::vec(1000.0f64..2200.0, 9),
        ) {
            let rt = RatingVector::new(seed_rt[..m.n()].to_vec()).unwrap();
            prop_assert!(kld(&m, &rt).unwrap() >= 0.0);
        }

        #[test]
        fn gp_of_concatenation_is_weighted_mean(
            rounds in prop::collection::vec((3usize..=3).prop_flat_map(tournament), 2..10),
            split in 1usize..9,
        ) {
            let hist: Vec<ScoreVector> = rounds.iter().map(scores).collect();
            let split = split.min(hist.len() - 1);
            let (a, b) = hist.split_at(split);
            let whole = generalization_performance(&hist).unwrap();
            let ga = generalization_performance(a).unwrap();
            let gb = generalization_performance(b).unwrap();
            for i in 0..3 {
                let mixed = (ga[i] * a.len() as f64 + gb[i] * b.len() as f64) / hist.len() as f64;
                prop_assert!((whole[i] - mixed).abs() < 1e-12);
            }
        }
    }
}
