//! Within-class homogeneity and between-class discrimination.

use ordwalk_core::equivalence::enumerate_classes;
use ordwalk_core::perm::all_permutations;
use ordwalk_core::{EquivalenceClass, Permutation};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dist::StepDistribution;
use crate::sim::{estimate_frequencies, representatives, FrequencyTable};
use crate::{Error, Result};

/// Exact pattern probabilities of a three-point walk whose step law is
/// continuous and symmetric about zero.
///
/// The monotone patterns need both steps of one sign, probability 1/4 each.
/// Each remaining pattern fixes the signs of the two steps and which of them
/// is larger in absolute value, which by symmetry splits the remaining half
/// into four equal parts.
pub fn symmetric_n3_probability(pi: &Permutation) -> Option<f64> {
    if pi.len() != 3 {
        return None;
    }
    Some(match pi.to_string().as_str() {
        "123" | "321" => 0.25,
        _ => 0.125,
    })
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct HomogeneityConfig {
    /// A class is flagged when its statistic exceeds this quantile of the
    /// chi-square law with (class size - 1) degrees of freedom.
    pub quantile: f64,
}

impl Default for HomogeneityConfig {
    fn default() -> Self {
        HomogeneityConfig { quantile: 0.999 }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ClassRow {
    pub representative: Permutation,
    pub members: Vec<Permutation>,
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    /// Frequency of the whole class.
    pub pooled_frequency: f64,
    /// Pearson chi-square of the member counts against their mean.
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    /// Upper tail probability of `statistic`; 1 for single-member classes.
    pub p_value: f64,
    pub flagged: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub distribution: StepDistribution,
    pub config: HomogeneityConfig,
    pub classes: Vec<ClassRow>,
    /// Patterns never observed, in lexicographic order.
    pub missing_patterns: Vec<Permutation>,
}

impl ClassReport {
    pub fn any_flagged(&self) -> bool {
        self.classes.iter().any(|c| c.flagged)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &ClassRow> {
        self.classes.iter().filter(|c| c.flagged)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Tests each class for equal member frequencies.
pub fn class_report(
    freqs: &FrequencyTable,
    classes: &[EquivalenceClass],
    config: &HomogeneityConfig,
) -> Result<ClassReport> {
    if !(config.quantile > 0.0 && config.quantile < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "homogeneity quantile {} must lie in (0, 1)",
            config.quantile
        )));
    }
    // checks lengths and that the classes partition S_n
    representatives(freqs.n(), Some(classes))?;

    let trials = freqs.trials() as f64;
    let rows = classes
        .iter()
        .map(|c| {
            let counts: Vec<u64> = c.members().iter().map(|m| freqs.count(m)).collect();
            let k = counts.len();
            let total: u64 = counts.iter().sum();
            let mean = total as f64 / k as f64;
            let statistic = if total == 0 {
                0.0
            } else {
                counts
                    .iter()
                    .map(|&x| (x as f64 - mean).powi(2) / mean)
                    .sum()
            };
            let (p_value, flagged) = if k < 2 {
                (1.0, false)
            } else {
                let chi = ChiSquared::new((k - 1) as f64).expect("positive degrees of freedom");
                (
                    chi.sf(statistic),
                    statistic > chi.inverse_cdf(config.quantile),
                )
            };
            ClassRow {
                representative: c.representative().clone(),
                members: c.members().to_vec(),
                frequencies: counts.iter().map(|&x| x as f64 / trials).collect(),
                counts,
                pooled_frequency: total as f64 / trials,
                statistic,
                degrees_of_freedom: k - 1,
                p_value,
                flagged,
            }
        })
        .collect();

    Ok(ClassReport {
        n: freqs.n(),
        trials: freqs.trials(),
        seed: freqs.seed(),
        distribution: *freqs.distribution(),
        config: *config,
        classes: rows,
        missing_patterns: freqs
            .iter()
            .filter(|(_, c)| *c == 0)
            .map(|(p, _)| p)
            .collect(),
    })
}

/// Largest pattern length for the pairwise discrimination report.
pub const MAX_DISCRIMINATION_N: usize = 6;

/// Separation is declared at this many standard errors.
pub const SEPARATION_Z: f64 = 4.0;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PairEvidence {
    pub a: Permutation,
    pub b: Permutation,
    /// The law giving the largest standardized difference.
    pub best: StepDistribution,
    pub frequency_a: f64,
    pub frequency_b: f64,
    pub z: f64,
    pub separated: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct DiscriminationReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub distributions: Vec<StepDistribution>,
    pub threshold_z: f64,
    /// Every pair of patterns from different classes, `a < b`.
    pub pairs: Vec<PairEvidence>,
}

impl DiscriminationReport {
    pub fn pair(&self, a: &Permutation, b: &Permutation) -> Option<&PairEvidence> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.pairs.iter().find(|p| &p.a == a && &p.b == b)
    }

    pub fn separated_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.separated).count()
    }
}

/// For every pair of inequivalent patterns, how far apart the listed laws
/// push their frequencies. This is evidence only: a pair that no law
/// separates is reported, never treated as an error.
///
/// The difference of two cell frequencies from one multinomial sample has
/// variance `(p_a + p_b - (p_a - p_b)^2) / trials`. The plug-in estimate is
/// floored at one observation's worth, so that a pattern seen in every trial
/// against one never seen counts as separated rather than undefined.
pub fn cross_distribution_discrimination(
    n: usize,
    dists: &[StepDistribution],
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<DiscriminationReport> {
    if n > MAX_DISCRIMINATION_N {
        return Err(Error::SizeTooLarge {
            what: "pattern length",
            size: n,
            limit: MAX_DISCRIMINATION_N,
        });
    }
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    let classes = enumerate_classes(n)?;
    let reps = representatives(n, Some(&classes))?.expect("classes given");
    let tables: Vec<FrequencyTable> = dists
        .iter()
        .enumerate()
        .map(|(i, d)| estimate_frequencies(d, n, trials, seed.wrapping_add(i as u64), workers))
        .collect::<Result<_>>()?;

    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mut pairs = Vec::new();
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate().skip(i + 1) {
            if reps[i] == reps[j] {
                continue;
            }
            let mut best: Option<PairEvidence> = None;
            for t in &tables {
                let (fa, fb) = (t.frequency(a), t.frequency(b));
                let trials = t.trials() as f64;
                let var = (fa + fb - (fa - fb).powi(2)).max(1.0 / trials) / trials;
                let z = (fa - fb).abs() / var.sqrt();
                if best.as_ref().is_none_or(|e| z > e.z) {
                    best = Some(PairEvidence {
                        a: a.clone(),
                        b: b.clone(),
                        best: *t.distribution(),
                        frequency_a: fa,
                        frequency_b: fb,
                        z,
                        separated: z > SEPARATION_Z,
                    });
                }
            }
            pairs.extend(best);
        }
    }
    Ok(DiscriminationReport {
        n,
        trials,
        seed,
        distributions: dists.to_vec(),
        threshold_z: SEPARATION_Z,
        pairs,
    })
}
