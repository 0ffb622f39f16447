//! Unconstrained graphicality: Erdős–Gallai with the Tripathi–Vijay cutoff,
//! and Havel–Hakimi reduction and construction.

use crate::error::{Error, Result};
use crate::model::{DegreeSequence, LabeledGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EgReport {
    pub graphical: bool,
    pub parity_ok: bool,
    /// Smallest `k` whose inequality fails.
    pub first_violated_k: Option<usize>,
    /// Number of inequalities that had to be checked.
    pub s_bound: usize,
}

pub fn erdos_gallai_test(d: &DegreeSequence) -> EgReport {
    erdos_gallai_sorted(d)
}

/// Erdős–Gallai on any nonincreasing slice (zeros allowed).
///
/// Only `k <= s` is checked, where `s = #{k : d_k >= k}`: once `d_k < k`, the
/// right-hand side grows by `2(k-1) - d_k >= d_k` per step, so inequality `k`
/// follows from inequality `k - 1`. For the same reason the first violation,
/// if any, always lies within the cutoff.
pub fn erdos_gallai_sorted(d: &[usize]) -> EgReport {
    debug_assert!(d.windows(2).all(|w| w[0] >= w[1]), "not nonincreasing");
    let n = d.len();
    let total: usize = d.iter().sum();
    let parity_ok = total % 2 == 0;

    let s_bound = d.iter().enumerate().take_while(|&(k, &dk)| dk > k).count();

    // `p` = number of entries with d_i >= k, `tail` = sum of d[p..].
    let mut p = n;
    let mut tail = 0usize;
    let mut lhs = 0usize;
    let mut first_violated_k = None;
    for k in 1..=s_bound {
        lhs += d[k - 1];
        while p > 0 && d[p - 1] < k {
            p -= 1;
            tail += d[p];
        }
        // k <= s implies d_k >= k, hence p >= k
        let rhs = k * (k - 1) + k * (p - k) + tail;
        if lhs > rhs {
            first_violated_k = Some(k);
            break;
        }
    }

    EgReport {
        graphical: parity_ok && first_violated_k.is_none(),
        parity_ok,
        first_violated_k,
        s_bound,
    }
}

/// Erdős–Gallai checking every `k = 1..=n`, without the cutoff. The `k = n`
/// inequality only matters when some degree exceeds `n - 1`.
pub fn erdos_gallai_all_k(d: &[usize]) -> bool {
    debug_assert!(d.windows(2).all(|w| w[0] >= w[1]));
    let n = d.len();
    if d.iter().sum::<usize>() % 2 != 0 {
        return false;
    }
    (1..=n).all(|k| {
        let lhs: usize = d[..k].iter().sum();
        let rhs: usize = k * (k - 1) + d[k..].iter().map(|&di| di.min(k)).sum::<usize>();
        lhs <= rhs
    })
}

/// Sorts `degrees` nonincreasing into `out` with a counting sort.
pub(crate) fn sort_nonincreasing_into(
    degrees: impl Iterator<Item = usize> + Clone,
    out: &mut Vec<usize>,
) {
    out.clear();
    let max = degrees.clone().max().unwrap_or(0);
    let mut counts = vec![0usize; max + 1];
    for d in degrees {
        counts[d] += 1;
    }
    for (value, &count) in counts.iter().enumerate().rev() {
        out.extend(std::iter::repeat(value).take(count));
    }
}

/// Graphicality of a degree multiset given in any order.
pub fn is_graphical(degrees: &[usize]) -> bool {
    let mut sorted = Vec::with_capacity(degrees.len());
    sort_nonincreasing_into(degrees.iter().copied(), &mut sorted);
    erdos_gallai_sorted(&sorted).graphical
}

/// `d_2-1, ..., d_{d_1+1}-1, d_{d_1+2}, ..., d_n`, re-sorted nonincreasing.
pub fn havel_hakimi_reduce(d: &DegreeSequence) -> Result<DegreeSequence> {
    let n = d.len();
    let first = *d.first().ok_or(Error::NothingToReduce)?;
    if first == 0 {
        return Err(Error::NothingToReduce);
    }
    if first > n - 1 {
        return Err(Error::DegreeTooLarge { degree: first, n });
    }
    let mut rest: Vec<usize> = Vec::with_capacity(n - 1);
    for (k, &dk) in d[1..].iter().enumerate() {
        if k < first {
            rest.push(dk.checked_sub(1).ok_or(Error::NotGraphical)?);
        } else {
            rest.push(dk);
        }
    }
    rest.sort_unstable_by(|a, b| b.cmp(a));
    Ok(DegreeSequence::from_sorted_unchecked(rest))
}

/// Which node connects away all of its stubs next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeSelectionPolicy {
    /// Largest residual degree, smallest label on ties.
    MaxResidual,
    /// Smallest positive residual degree, smallest label on ties.
    MinResidual,
    /// Labels 1, 2, ..., n in order.
    FixedLabelOrder,
}

impl NodeSelectionPolicy {
    pub const ALL: [NodeSelectionPolicy; 3] = [
        NodeSelectionPolicy::MaxResidual,
        NodeSelectionPolicy::MinResidual,
        NodeSelectionPolicy::FixedLabelOrder,
    ];

    fn pick(self, residual: &[usize]) -> Option<usize> {
        let positive = residual.iter().enumerate().filter(|(_, &r)| r > 0);
        match self {
            NodeSelectionPolicy::MaxResidual => positive
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .map(|(k, _)| k),
            NodeSelectionPolicy::MinResidual => positive
                .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
                .map(|(k, _)| k),
            NodeSelectionPolicy::FixedLabelOrder => positive.map(|(k, _)| k).next(),
        }
    }
}

/// Indices with positive residual, excluding `skip`, ordered by residual
/// degree descending and index ascending. Counting sort keyed on degree.
pub(crate) fn rank_by_residual(residual: &[usize], skip: Option<usize>, out: &mut Vec<usize>) {
    out.clear();
    let max = residual.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return;
    }
    let mut starts = vec![0usize; max + 2];
    for (k, &r) in residual.iter().enumerate() {
        if r > 0 && Some(k) != skip {
            starts[max - r + 1] += 1;
        }
    }
    for b in 1..starts.len() {
        starts[b] += starts[b - 1];
    }
    let total = starts[max + 1];
    out.resize(total, 0);
    for (k, &r) in residual.iter().enumerate() {
        if r > 0 && Some(k) != skip {
            let slot = &mut starts[max - r];
            out[*slot] = k;
            *slot += 1;
        }
    }
}

/// Builds one realization of `d` (any order of labels), repeatedly picking a
/// focal node by `policy` and wiring all of its stubs to the nodes of largest
/// residual degree, smallest label first.
pub fn havel_hakimi_construct(d: &[usize], policy: NodeSelectionPolicy) -> Result<LabeledGraph> {
    let n = d.len();
    if d.iter().sum::<usize>() % 2 != 0 {
        return Err(Error::NotGraphical);
    }
    let mut residual = d.to_vec();
    let mut edges = Vec::with_capacity(d.iter().sum::<usize>() / 2);
    let mut ranked = Vec::with_capacity(n);
    while let Some(focal) = policy.pick(&residual) {
        let need = residual[focal];
        rank_by_residual(&residual, Some(focal), &mut ranked);
        if ranked.len() < need {
            return Err(Error::NotGraphical);
        }
        for &target in &ranked[..need] {
            residual[target] -= 1;
            edges.push((focal, target));
        }
        residual[focal] = 0;
    }
    Ok(LabeledGraph::from_index_pairs(n, edges))
}
