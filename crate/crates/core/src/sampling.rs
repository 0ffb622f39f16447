//! Random realizations.
//!
//! Two samplers: a walk down the construction tree choosing uniformly among
//! the admissible adjacency sets at each level (non-uniform over graphs, but
//! with an exactly known probability), and stub matching with restarts,
//! optionally cut short by the star-constrained test.
//!
//! Randomness comes from ChaCha8 seeded with the user seed; sample `k` of a
//! batch reads stream `k`, so a batch is reproducible whatever the thread count.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constrained::{cg_check, CgScratch};
use crate::enumeration::{focal_node, FamilyBuilder};
use crate::error::{Error, Result};
use crate::graphicality::is_graphical;
use crate::model::{DegreeSequence, LabeledGraph};

/// Generator for sample `stream` under `seed`.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationSample {
    pub graph: LabeledGraph,
    /// Exact probability that the tree walk produces `graph`.
    pub probability: BigRational,
    /// Number of admissible adjacency sets met at each level.
    pub branch_sizes: Vec<usize>,
}

impl RealizationSample {
    /// `1 / probability`, the product of the branch sizes.
    pub fn inverse_probability(&self) -> BigUint {
        self.branch_sizes
            .iter()
            .map(|&b| BigUint::from(b))
            .product()
    }
}

fn probability_of(branch_sizes: &[usize]) -> BigRational {
    let den: BigUint = branch_sizes.iter().map(|&b| BigUint::from(b)).product();
    BigRational::new(One::one(), den.into())
}

pub fn sample_weighted(d: &DegreeSequence, seed: u64) -> Result<RealizationSample> {
    sample_weighted_with(d, &mut sample_rng(seed, 0))
}

pub fn sample_weighted_with<R: Rng + ?Sized>(
    d: &DegreeSequence,
    rng: &mut R,
) -> Result<RealizationSample> {
    if !is_graphical(d) {
        return Err(Error::NotGraphical);
    }
    let n = d.len();
    let mut residual = d.to_vec();
    let mut builder = FamilyBuilder::default();
    let mut sets = Vec::new();
    let mut edges = Vec::new();
    let mut branch_sizes = Vec::new();
    while let Some(focal) = focal_node(&residual) {
        builder.build(&residual, focal, &mut sets);
        if sets.is_empty() {
            // a graphical residual always has a child
            return Err(Error::NotGraphical);
        }
        branch_sizes.push(sets.len());
        let pick = &sets[rng.gen_range(0..sets.len())];
        residual[focal] = 0;
        for &m in pick {
            residual[m] -= 1;
            edges.push((focal, m));
        }
    }
    Ok(RealizationSample {
        graph: LabeledGraph::from_index_pairs(n, edges),
        probability: probability_of(&branch_sizes),
        branch_sizes,
    })
}

/// Probability that the tree walk on `d` produces `g`, found by following
/// `g`'s own adjacency sets down the tree.
pub fn realization_probability(d: &DegreeSequence, g: &LabeledGraph) -> Result<RealizationSample> {
    if !g.realizes(d) {
        return Err(Error::InvalidGraph(
            "graph does not realize the sequence".into(),
        ));
    }
    let mut residual = d.to_vec();
    let mut builder = FamilyBuilder::default();
    let mut sets = Vec::new();
    let mut branch_sizes = Vec::new();
    while let Some(focal) = focal_node(&residual) {
        builder.build(&residual, focal, &mut sets);
        let mut wanted: Vec<usize> = g
            .neighbors(focal + 1)
            .into_iter()
            .map(|l| l - 1)
            .filter(|&k| residual[k] > 0 && k != focal)
            .collect();
        wanted.sort_unstable();
        if !sets.contains(&wanted) {
            return Err(Error::InvalidGraph("graph is not reachable".into()));
        }
        branch_sizes.push(sets.len());
        residual[focal] = 0;
        for &m in &wanted {
            residual[m] -= 1;
        }
    }
    Ok(RealizationSample {
        graph: g.clone(),
        probability: probability_of(&branch_sizes),
        branch_sizes,
    })
}

/// Samples `0..count` drawn on independent streams, in index order.
pub fn sample_weighted_batch(
    d: &DegreeSequence,
    count: usize,
    seed: u64,
    threads: usize,
) -> Result<Vec<RealizationSample>> {
    run_batch(count, threads, |k| {
        sample_weighted_with(d, &mut sample_rng(seed, k as u64))
    })
}

fn run_batch<T, F>(count: usize, threads: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    if threads <= 1 {
        return (0..count).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    /// Mean of `1 / P(G)` over the draws.
    pub mean: BigRational,
    /// Sample standard error of the mean; NaN for a single draw.
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn value(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }
}

/// Importance-sampling estimate of the number of labeled realizations.
pub fn estimate_count(d: &DegreeSequence, samples: usize, seed: u64) -> Result<Estimate> {
    estimate_count_threads(d, samples, seed, 1)
}

pub fn estimate_count_threads(
    d: &DegreeSequence,
    samples: usize,
    seed: u64,
    threads: usize,
) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::InvalidSet("at least one sample is required".into()));
    }
    let weights: Vec<BigUint> = run_batch(samples, threads, |k| {
        sample_weighted_with(d, &mut sample_rng(seed, k as u64)).map(|s| s.inverse_probability())
    })?;
    let total: BigUint = weights.iter().sum();
    let mean = BigRational::new(total.into(), BigUint::from(samples).into());
    let stderr = if samples < 2 {
        f64::NAN
    } else {
        let m = mean.to_f64().unwrap_or(f64::NAN);
        let ss: f64 = weights
            .iter()
            .map(|w| {
                let x = w.to_f64().unwrap_or(f64::INFINITY) - m;
                x * x
            })
            .sum();
        (ss / (samples as f64 - 1.0) / samples as f64).sqrt()
    };
    Ok(Estimate {
        mean,
        stderr,
        samples,
    })
}

pub const DEFAULT_STUB_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MrRunStats {
    pub restarts: u64,
    pub self_loops: u64,
    pub multi_edges: u64,
    pub cg_rejects: u64,
    pub stub_connections_made: u64,
}

impl MrRunStats {
    pub fn merge(&mut self, other: &MrRunStats) {
        self.restarts += other.restarts;
        self.self_loops += other.self_loops;
        self.multi_edges += other.multi_edges;
        self.cg_rejects += other.cg_rejects;
        self.stub_connections_made += other.stub_connections_made;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MrConfig {
    pub early_reject: bool,
    /// Stub connections allowed per sample, over all attempts.
    pub budget: u64,
}

impl Default for MrConfig {
    fn default() -> Self {
        Self {
            early_reject: false,
            budget: DEFAULT_STUB_BUDGET,
        }
    }
}

/// Whether the partial state certainly has no simple completion, judged by
/// the star-constrained test at `node` with its current neighbours forbidden.
/// `residual` holds the free stubs per node.
pub fn early_reject_at(residual: &[usize], node: usize, neighbors: &[usize]) -> bool {
    let mut scratch = CgScratch::default();
    rejects(residual, node, neighbors, &mut scratch)
}

fn rejects(residual: &[usize], node: usize, neighbors: &[usize], scratch: &mut CgScratch) -> bool {
    // too many neighbours to leave room for the free stubs also means failure
    cg_check(residual, node, neighbors, scratch) != Some(true)
}

pub fn molloy_reed_sample(
    d: &DegreeSequence,
    seed: u64,
    early_reject: bool,
) -> Result<(LabeledGraph, MrRunStats)> {
    let config = MrConfig {
        early_reject,
        ..MrConfig::default()
    };
    molloy_reed_sample_with(d, &mut sample_rng(seed, 0), config)
}

pub fn molloy_reed_sample_with<R: Rng + ?Sized>(
    d: &DegreeSequence,
    rng: &mut R,
    config: MrConfig,
) -> Result<(LabeledGraph, MrRunStats)> {
    if !is_graphical(d) {
        return Err(Error::NotGraphical);
    }
    let n = d.len();
    let stubs: Vec<usize> = d
        .iter()
        .enumerate()
        .flat_map(|(k, &deg)| std::iter::repeat(k).take(deg))
        .collect();
    let mut stats = MrRunStats::default();
    let mut scratch = CgScratch::default();
    let mut free = Vec::with_capacity(stubs.len());
    let mut residual = vec![0; n];
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(stubs.len() / 2);

    'attempt: loop {
        free.clear();
        free.extend_from_slice(&stubs);
        residual.copy_from_slice(d);
        neighbors.iter_mut().for_each(Vec::clear);
        edges.clear();

        while !free.is_empty() {
            if stats.stub_connections_made >= config.budget {
                return Err(Error::RestartBudgetExceeded { stats });
            }
            let i = free.swap_remove(rng.gen_range(0..free.len()));
            let j = free.swap_remove(rng.gen_range(0..free.len()));
            stats.stub_connections_made += 1;
            if i == j {
                stats.self_loops += 1;
                stats.restarts += 1;
                continue 'attempt;
            }
            if neighbors[i].contains(&j) {
                stats.multi_edges += 1;
                stats.restarts += 1;
                continue 'attempt;
            }
            neighbors[i].push(j);
            neighbors[j].push(i);
            residual[i] -= 1;
            residual[j] -= 1;
            edges.push((i, j));
            if config.early_reject
                && (rejects(&residual, i, &neighbors[i], &mut scratch)
                    || rejects(&residual, j, &neighbors[j], &mut scratch))
            {
                stats.cg_rejects += 1;
                stats.restarts += 1;
                continue 'attempt;
            }
        }
        return Ok((
            LabeledGraph::from_index_pairs(n, edges.iter().copied()),
            stats,
        ));
    }
}

pub fn molloy_reed_batch(
    d: &DegreeSequence,
    count: usize,
    seed: u64,
    config: MrConfig,
    threads: usize,
) -> Result<Vec<(LabeledGraph, MrRunStats)>> {
    run_batch(count, threads, |k| {
        molloy_reed_sample_with(d, &mut sample_rng(seed, k as u64), config)
    })
}

/// Mean of `1 / P(G)` over every realization weighted by `P(G)`; equals the
/// realization count. Helper for exact checks on small sequences.
pub fn exact_weighted_mean(samples: &[RealizationSample]) -> BigRational {
    samples.iter().fold(BigRational::zero(), |acc, s| {
        acc + &s.probability * BigRational::from_integer(s.inverse_probability().into())
    })
}
