//! Brute-force ground truth for the spectral formulas: dense convolution on
//! the Cayley table, direct norms, restriction to subgroups and a seeded
//! Monte Carlo sampler. Nothing here touches characters.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::OracleError;
use crate::group::{generate_group_on, GroupTable};

/// Identifies the sampler's generator and seeding scheme in report metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng(seed_from_u64(seed), stream = chain index)";

const SUM_TOL: f64 = 1e-12;

/// A probability on the group given element by element.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseProbability {
    pub per_element: Vec<f64>,
}

impl DenseProbability {
    pub fn new(per_element: Vec<f64>) -> Result<Self, OracleError> {
        if let Some(g) = per_element.iter().position(|&p| p < 0.0 || !p.is_finite()) {
            return Err(OracleError::InvalidProbability(format!(
                "value {} at element {g}",
                per_element[g]
            )));
        }
        let total: f64 = per_element.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(OracleError::InvalidProbability(format!("total mass {total}")));
        }
        Ok(Self { per_element })
    }

    pub fn uniform(order: usize) -> Self {
        Self {
            per_element: vec![1.0 / order as f64; order],
        }
    }

    pub fn point_mass(order: usize, element: usize) -> Self {
        let mut per_element = vec![0.0; order];
        per_element[element] = 1.0;
        Self { per_element }
    }

    /// `P(g) = |{h : h² = g}| / |G|`
    pub fn square_walk(group: &GroupTable) -> Self {
        let n = group.order();
        let mut per_element = vec![0.0; n];
        for h in 0..n {
            per_element[group.mul(h, h)] += 1.0 / n as f64;
        }
        Self { per_element }
    }

    pub fn order(&self) -> usize {
        self.per_element.len()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.per_element
            .iter()
            .zip(&other.per_element)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// `(P ∗ Q)(h) = Σ_g P(g) Q(g⁻¹h)`
pub fn convolve(p: &DenseProbability, q: &DenseProbability, group: &GroupTable) -> DenseProbability {
    let n = group.order();
    let mut out = vec![0.0; n];
    for (g, &pg) in p.per_element.iter().enumerate() {
        if pg == 0.0 {
            continue;
        }
        // h = g·x runs over the group as x does, with Q(g⁻¹h) = Q(x)
        for (x, &qx) in q.per_element.iter().enumerate() {
            out[group.mul(g, x)] += pg * qx;
        }
    }
    DenseProbability { per_element: out }
}

/// `P^(n)` by iterated convolution `P ∗ P^(n−1)`.
pub fn convolution_power(p: &DenseProbability, n: u32, group: &GroupTable) -> DenseProbability {
    assert!(n >= 1, "step count must be at least 1");
    let mut acc = p.clone();
    for _ in 1..n {
        acc = convolve(p, &acc, group);
    }
    acc
}

/// `P^(n)` by repeated squaring.
pub fn convolution_power_by_squaring(
    p: &DenseProbability,
    n: u32,
    group: &GroupTable,
) -> DenseProbability {
    assert!(n >= 1, "step count must be at least 1");
    let mut result: Option<DenseProbability> = None;
    let mut base = p.clone();
    let mut k = n;
    loop {
        if k & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => convolve(&r, &base, group),
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = convolve(&base, &base, group);
    }
    result.expect("n >= 1 sets at least one bit")
}

/// Every power `P^(1), …, P^(n_max)` by iterated convolution.
pub fn convolution_powers(p: &DenseProbability, n_max: u32, group: &GroupTable) -> Vec<DenseProbability> {
    let mut out = Vec::with_capacity(n_max as usize);
    let mut acc = p.clone();
    for step in 1..=n_max {
        if step > 1 {
            acc = convolve(p, &acc, group);
        }
        out.push(acc.clone());
    }
    out
}

/// `sqrt((1/|G|) Σ_g (P(g) − 1/|G|)²)`
pub fn l2_distance_to_uniform(p: &DenseProbability) -> f64 {
    let n = p.order() as f64;
    let sum: f64 = p.per_element.iter().map(|x| (x - 1.0 / n).powi(2)).sum();
    (sum / n).sqrt()
}

/// `(1/2) Σ_g |P(g) − 1/|G||`
pub fn total_variation_to_uniform(p: &DenseProbability) -> f64 {
    let n = p.order() as f64;
    0.5 * p.per_element.iter().map(|x| (x - 1.0 / n).abs()).sum::<f64>()
}

/// Re-expresses `P` on the subgroup `subgroup` (sorted element indices of
/// `group`) with the subgroup's own table.
///
/// The subgroup table is regenerated from its elements, so its index `i`
/// corresponds to `subgroup[i]`: the identity first, then the listed
/// elements in order.
pub fn restrict_to_subgroup(
    p: &DenseProbability,
    group: &GroupTable,
    subgroup: &[usize],
) -> Result<(DenseProbability, GroupTable), OracleError> {
    let mut inside = vec![false; group.order()];
    for &h in subgroup {
        inside[h] = true;
    }
    if let Some(element) = (0..group.order()).find(|&g| !inside[g] && p.per_element[g] > 0.0) {
        return Err(OracleError::SupportEscapesSubgroup { element });
    }
    let generators: Vec<_> = subgroup
        .iter()
        .filter(|&&h| h != 0)
        .map(|&h| group.element(h).clone())
        .collect();
    let table = generate_group_on(group.degree(), &generators, subgroup.len().max(1))?;
    let per_element = table
        .elements()
        .iter()
        .map(|e| {
            let g = group
                .index_of(e)
                .expect("subgroup elements come from the parent group");
            p.per_element[g]
        })
        .collect();
    Ok((DenseProbability::new(per_element)?, table))
}

/// Empirical endpoint distribution of independent walks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleResult {
    pub counts: Vec<u64>,
    pub chains: u64,
    pub steps: u32,
    pub seed: u64,
    pub rng_algorithm: &'static str,
}

impl SampleResult {
    pub fn empirical(&self) -> DenseProbability {
        DenseProbability {
            per_element: self
                .counts
                .iter()
                .map(|&c| c as f64 / self.chains as f64)
                .collect(),
        }
    }

    /// Root-mean-square L² size of the multinomial sampling error,
    /// `sqrt((1/|G|) Σ_g p̂(g)(1 − p̂(g)) / N)`.
    ///
    /// The triangle inequality bounds the error of the empirical distance by
    /// the L² norm of the sampling error, so this is a standard error for it.
    pub fn l2_standard_error(&self) -> f64 {
        let n = self.counts.len() as f64;
        let chains = self.chains as f64;
        let var: f64 = self
            .counts
            .iter()
            .map(|&c| {
                let p = c as f64 / chains;
                p * (1.0 - p) / chains
            })
            .sum();
        (var / n).sqrt()
    }
}

/// Runs `chains` independent walks of `n` steps from the identity, each step
/// left-multiplying by an element drawn from `P`.
///
/// Chain `i` draws from its own ChaCha8 stream `i`, so the counts are the same
/// whatever the thread count.
pub fn sample_walk(
    p: &DenseProbability,
    group: &GroupTable,
    n: u32,
    chains: u64,
    seed: u64,
) -> Result<SampleResult, OracleError> {
    let steps = WeightedIndex::new(&p.per_element)
        .map_err(|e| OracleError::InvalidProbability(e.to_string()))?;
    let order = group.order();
    let counts = (0..chains)
        .into_par_iter()
        .fold(
            || vec![0u64; order],
            |mut counts, chain| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(chain);
                let mut x = 0;
                for _ in 0..n {
                    x = group.mul(steps.sample(&mut rng), x);
                }
                counts[x] += 1;
                counts
            },
        )
        .reduce(
            || vec![0u64; order],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(SampleResult {
        counts,
        chains,
        steps: n,
        seed,
        rng_algorithm: RNG_ALGORITHM,
    })
}
