//! Sampling walks and counting their patterns.

use std::fmt::Write as _;
use std::thread;

use ordwalk_core::perm::{factorial, pattern_of_steps};
use ordwalk_core::{EquivalenceClass, Permutation};
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{StepDistribution, StepSampler};
use crate::{Error, Result};

/// Largest pattern length for frequency tables; one counter per pattern.
pub const MAX_SIMULATION_N: usize = 9;

/// Trials per random stream. Stream `c` of a run covers trials
/// `c * CHUNK_TRIALS ..`, whichever worker draws it.
pub const CHUNK_TRIALS: u64 = 1 << 16;

/// One sampled pattern and the number of tied walks discarded on the way.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sample {
    pub pattern: Permutation,
    pub tie_rejections: u64,
}

fn draw<R: Rng + ?Sized>(
    sampler: &StepSampler,
    steps: &mut [f64],
    rng: &mut R,
) -> (Permutation, u64) {
    let mut ties = 0;
    loop {
        for x in steps.iter_mut() {
            *x = sampler.sample(rng);
        }
        match pattern_of_steps(steps) {
            Ok(pi) => return (pi, ties),
            // equal or overflowing positions: the pattern is undefined, redraw
            Err(_) => ties += 1,
        }
    }
}

/// Draws `n - 1` independent steps and returns the pattern of the walk,
/// redrawing whenever two positions coincide.
pub fn sample_pattern<R: Rng + ?Sized>(
    dist: &StepDistribution,
    n: usize,
    rng: &mut R,
) -> Result<Sample> {
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    let mut steps = vec![0.0; n - 1];
    let (pattern, tie_rejections) = draw(&dist.sampler(), &mut steps, rng);
    Ok(Sample {
        pattern,
        tie_rejections,
    })
}

/// Pattern counts from a seeded run.
#[derive(Clone, PartialEq, Debug)]
pub struct FrequencyTable {
    n: usize,
    trials: u64,
    seed: u64,
    distribution: StepDistribution,
    /// Indexed by lexicographic rank.
    counts: Vec<u64>,
    tie_rejections: u64,
}

fn count_chunk(
    dist: &StepDistribution,
    n: usize,
    seed: u64,
    chunk: u64,
    len: u64,
) -> (Vec<u64>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let sampler = dist.sampler();
    let mut counts = vec![0u64; factorial(n) as usize];
    let mut steps = vec![0.0; n - 1];
    let mut ties = 0;
    for _ in 0..len {
        let (pi, t) = draw(&sampler, &mut steps, &mut rng);
        counts[pi.rank() as usize] += 1;
        ties += t;
    }
    (counts, ties)
}

/// Counts the patterns of `trials` walks of `n` points.
///
/// Trials are cut into fixed chunks, each with its own ChaCha8 stream derived
/// from `seed`, and chunks are dealt round-robin to `workers` threads. The
/// table therefore depends on the seed but not on the number of workers.
pub fn estimate_frequencies(
    dist: &StepDistribution,
    n: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<FrequencyTable> {
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    if n > MAX_SIMULATION_N {
        return Err(Error::SizeTooLarge {
            what: "pattern length",
            size: n,
            limit: MAX_SIMULATION_N,
        });
    }
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let workers = (workers.max(1) as u64).min(chunks);
    let chunk_len = |c: u64| CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);

    let partials: Vec<(Vec<u64>, u64)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut counts = vec![0u64; factorial(n) as usize];
                    let mut ties = 0;
                    for c in (w..chunks).step_by(workers as usize) {
                        let (part, t) = count_chunk(dist, n, seed, c, chunk_len(c));
                        counts.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                        ties += t;
                    }
                    (counts, ties)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    });

    let mut counts = vec![0u64; factorial(n) as usize];
    let mut tie_rejections = 0;
    for (part, t) in partials {
        counts.iter_mut().zip(part).for_each(|(a, b)| *a += b);
        tie_rejections += t;
    }
    Ok(FrequencyTable {
        n,
        trials,
        seed,
        distribution: *dist,
        counts,
        tie_rejections,
    })
}

#[derive(Serialize, Deserialize)]
struct TableDocument {
    format: String,
    n: usize,
    trials: u64,
    seed: u64,
    distribution: StepDistribution,
    tie_rejections: u64,
    counts: std::collections::BTreeMap<String, u64>,
}

const CSV_VERSION: &str = "ordwalk-frequencies v1";

impl FrequencyTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn distribution(&self) -> &StepDistribution {
        &self.distribution
    }

    pub fn tie_rejections(&self) -> u64 {
        self.tie_rejections
    }

    /// Counts indexed by the lexicographic rank of the pattern.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, pi: &Permutation) -> u64 {
        if pi.len() != self.n {
            return 0;
        }
        self.counts[pi.rank() as usize]
    }

    pub fn frequency(&self, pi: &Permutation) -> f64 {
        self.count(pi) as f64 / self.trials as f64
    }

    /// Every pattern with its count, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Permutation, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(r, &c)| (Permutation::unrank(self.n, r as u64), c))
    }

    /// The same run metadata with replaced counts; `trials` becomes their sum.
    pub fn with_counts(&self, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != self.counts.len() {
            return Err(Error::LengthMismatch {
                expected: self.counts.len(),
                actual: counts.len(),
            });
        }
        let trials = counts.iter().sum::<u64>();
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(FrequencyTable {
            trials,
            counts,
            ..self.clone()
        })
    }

    /// One metadata comment line, then `pattern,count,frequency,class`.
    ///
    /// The class column holds the representative of the pattern's class when
    /// `classes` is given and is empty otherwise.
    pub fn to_csv(&self, classes: Option<&[EquivalenceClass]>) -> Result<String> {
        let mut out = String::new();
        writeln!(
            out,
            "# {CSV_VERSION} n={} trials={} seed={} dist={} tie_rejections={}",
            self.n, self.trials, self.seed, self.distribution, self.tie_rejections
        )
        .expect("writing to a String");
        let reps = representatives(self.n, classes)?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["pattern", "count", "frequency", "class"])?;
        for (r, (pi, c)) in self.iter().enumerate() {
            let rep = reps.as_ref().map(|v| v[r].to_string()).unwrap_or_default();
            w.write_record([
                pi.to_string(),
                c.to_string(),
                format!("{:.8}", c as f64 / self.trials as f64),
                rep,
            ])?;
        }
        let body = w.into_inner().map_err(|e| e.into_error())?;
        out.push_str(&String::from_utf8(body).expect("csv output is UTF-8"));
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = TableDocument {
            format: CSV_VERSION.to_string(),
            n: self.n,
            trials: self.trials,
            seed: self.seed,
            distribution: self.distribution,
            tie_rejections: self.tie_rejections,
            counts: self.iter().map(|(p, c)| (p.to_string(), c)).collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

/// For each rank, the representative of its class.
pub(crate) fn representatives(
    n: usize,
    classes: Option<&[EquivalenceClass]>,
) -> Result<Option<Vec<Permutation>>> {
    let Some(classes) = classes else {
        return Ok(None);
    };
    let total = factorial(n) as usize;
    let mut reps: Vec<Option<Permutation>> = vec![None; total];
    for c in classes {
        let len = c.representative().len();
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: len,
            });
        }
        for m in c.members() {
            let slot = &mut reps[m.rank() as usize];
            if slot.is_some() {
                return Err(Error::NotAPartition(format!("{m} is in two classes")));
            }
            *slot = Some(c.representative().clone());
        }
    }
    reps.into_iter()
        .enumerate()
        .map(|(r, rep)| {
            rep.ok_or_else(|| {
                Error::NotAPartition(format!(
                    "{} is in no class",
                    Permutation::unrank(n, r as u64)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}
