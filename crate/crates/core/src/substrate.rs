//! Number-game minimal substrate.
//!
//! Players live on the real line and carry a postulated objective fitness.
//! Their subjective fitness is the fraction of a freshly drawn evaluator
//! sample they strictly beat in objective fitness.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};

/// A point of the one-dimensional search space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchPoint(pub f64);

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<SearchPoint>,
    pub generation: usize,
}

impl Population {
    pub fn new(members: Vec<SearchPoint>, generation: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("population is empty".into()));
        }
        Ok(Population {
            members,
            generation,
        })
    }

    /// `size` points drawn uniformly from the landscape domain.
    pub fn uniform<R: Rng + ?Sized>(
        landscape: &ObjectiveLandscape,
        size: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let (lo, hi) = landscape.domain();
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidArgument(
                "uniform sampling needs a bounded domain".into(),
            ));
        }
        let members = (0..size)
            .map(|_| SearchPoint(if lo < hi { rng.gen_range(lo..=hi) } else { lo }))
            .collect();
        Population::new(members, 0)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `mu` evaluators drawn without replacement from a pool of `lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatorSample {
    pub evaluators: Vec<SearchPoint>,
    pub mu: usize,
    pub lambda: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LandscapeKind {
    /// `f(s) = s`
    Identity,
    /// `f(s) = -s^2`
    NegSphere,
    /// `f(s) = exp(-(s - center)^2 / (2 width^2))`
    Gaussian { center: f64, width: f64 },
}

impl LandscapeKind {
    pub fn name(&self) -> &'static str {
        match self {
            LandscapeKind::Identity => "identity",
            LandscapeKind::NegSphere => "sphere",
            LandscapeKind::Gaussian { .. } => "gaussian",
        }
    }
}

/// Objective fitness over a closed interval of the real line. The
/// neighborhood radius is descriptive only.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveLandscape {
    pub kind: LandscapeKind,
    lower: f64,
    upper: f64,
    pub neighborhood_radius: f64,
}

impl ObjectiveLandscape {
    pub fn new(kind: LandscapeKind, lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(Error::InvalidArgument(format!(
                "empty domain [{lower}, {upper}]"
            )));
        }
        if let LandscapeKind::Gaussian { center, width } = kind {
            if !(center.is_finite() && width.is_finite() && width > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "gaussian needs a finite center and positive width, got ({center}, {width})"
                )));
            }
        }
        Ok(ObjectiveLandscape {
            kind,
            lower,
            upper,
            neighborhood_radius: 0.0,
        })
    }

    /// Landscape over the whole real line.
    pub fn unbounded(kind: LandscapeKind) -> Result<Self> {
        Self::new(kind, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn with_neighborhood(mut self, radius: f64) -> Self {
        self.neighborhood_radius = radius;
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }
}

pub fn objective_fitness(landscape: &ObjectiveLandscape, s: SearchPoint) -> Result<f64> {
    let x = s.0;
    if !x.is_finite() || x < landscape.lower || x > landscape.upper {
        return Err(Error::Domain(x));
    }
    Ok(match landscape.kind {
        LandscapeKind::Identity => x,
        LandscapeKind::NegSphere => -x * x,
        LandscapeKind::Gaussian { center, width } => {
            let d = x - center;
            (-d * d / (2.0 * width * width)).exp()
        }
    })
}

/// Uniform sample of `mu` distinct members of `pool`.
pub fn sample_evaluators<R: Rng + ?Sized>(
    pool: &[SearchPoint],
    mu: usize,
    rng: &mut R,
) -> Result<EvaluatorSample> {
    let lambda = pool.len();
    if mu == 0 || mu > lambda {
        return Err(Error::InvalidArgument(format!(
            "sample size {mu} must lie in [1, {lambda}]"
        )));
    }
    let evaluators = index::sample(rng, lambda, mu)
        .into_iter()
        .map(|i| pool[i])
        .collect();
    Ok(EvaluatorSample {
        evaluators,
        mu,
        lambda,
    })
}

/// Fraction of evaluators whose objective fitness is strictly below that
/// of `s`.
pub fn subjective_fitness(
    landscape: &ObjectiveLandscape,
    s: SearchPoint,
    sample: &EvaluatorSample,
) -> Result<f64> {
    if sample.evaluators.is_empty() {
        return Err(Error::InvalidArgument("evaluator sample is empty".into()));
    }
    let own = objective_fitness(landscape, s)?;
    let mut wins = 0usize;
    for &e in &sample.evaluators {
        if own > objective_fitness(landscape, e)? {
            wins += 1;
        }
    }
    Ok(wins as f64 / sample.evaluators.len() as f64)
}

/// Subjective fitness of every member, each against an independent sample.
/// With `include_self == false` a member's own entry is removed from its
/// evaluator pool, so `mu` must not exceed `len - 1`.
pub fn evaluate_population<R: Rng + ?Sized>(
    landscape: &ObjectiveLandscape,
    population: &Population,
    mu: usize,
    include_self: bool,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let members = &population.members;
    let mut out = Vec::with_capacity(members.len());
    let mut pool = Vec::with_capacity(members.len());
    for (i, &s) in members.iter().enumerate() {
        pool.clear();
        pool.extend(
            members
                .iter()
                .enumerate()
                .filter(|&(j, _)| include_self || j != i)
                .map(|(_, &p)| p),
        );
        let sample = sample_evaluators(&pool, mu, rng)?;
        out.push(subjective_fitness(landscape, s, &sample)?);
    }
    Ok(out)
}
