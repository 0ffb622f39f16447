//! Exhaustive construction of every labeled realization of a degree sequence.
//!
//! The construction tree fixes, level by level, the full adjacency set of the
//! surviving node with the largest residual degree (smallest label on ties).
//! Edges are only ever placed from the focal node, which is then finished, so
//! the residual degrees of the unfinished nodes are an ordinary, unconstrained
//! degree-sequence problem at every level. The children of a level are the
//! focal's adjacency sets whose reduction stays graphical.
//!
//! Within a level, candidates are ranked by residual degree (descending, label
//! ascending). Ranks play the role of labels in a sorted sequence: the
//! left-of relation and the colexicographic order are taken over ranks.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{mpsc, Mutex};

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::constrained::{cg_check, leq_sorted, CgScratch};
use crate::error::{Error, Result};
use crate::graphicality::{
    erdos_gallai_sorted, is_graphical, rank_by_residual, sort_nonincreasing_into,
};
use crate::model::{AdjacencySet, DegreeSequence, LabeledGraph};

/// Most recently accepted sets scanned for left-of dominance before paying
/// for an Erdős–Gallai test.
pub const DEFAULT_DOMINANCE_WINDOW: usize = 4;

/// Node with the largest residual degree, smallest index on ties.
pub(crate) fn focal_node(residual: &[usize]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &r) in residual.iter().enumerate() {
        if r > 0 && best.map_or(true, |b| r > residual[b]) {
            best = Some(k);
        }
    }
    best
}

/// Generates the graphicality-preserving adjacency sets of one focal node.
#[derive(Debug, Clone)]
pub(crate) struct FamilyBuilder {
    window: usize,
    ranked: Vec<usize>,
    rank_degrees: Vec<usize>,
    /// ranks fixed so far, largest first
    chosen: Vec<usize>,
    test_set: Vec<usize>,
    sorted: Vec<usize>,
    recent: VecDeque<Vec<usize>>,
    accepted: Vec<Vec<usize>>,
    pub eg_calls: u64,
    pub dominance_skips: u64,
}

impl Default for FamilyBuilder {
    fn default() -> Self {
        Self::with_window(DEFAULT_DOMINANCE_WINDOW)
    }
}

impl FamilyBuilder {
    pub fn with_window(window: usize) -> Self {
        Self {
            window,
            ranked: Vec::new(),
            rank_degrees: Vec::new(),
            chosen: Vec::new(),
            test_set: Vec::new(),
            sorted: Vec::new(),
            recent: VecDeque::new(),
            accepted: Vec::new(),
            eg_calls: 0,
            dominance_skips: 0,
        }
    }

    /// Fills `out` with the focal node's admissible adjacency sets as sorted
    /// 0-based label lists, in decreasing colexicographic order of ranks.
    ///
    /// Depth-first over the members from the largest rank down. A prefix `K`
    /// of largest members can only be completed below `min K`, and the best
    /// completion is the leftmost one, so the prefix survives iff the set
    /// `{0, .., r-1} ∪ K` reduces to a graphical sequence. Sets lying to the
    /// left of an already accepted set are graphical without testing.
    pub fn build(&mut self, residual: &[usize], focal: usize, out: &mut Vec<Vec<usize>>) {
        out.clear();
        let need = residual[focal];
        rank_by_residual(residual, Some(focal), &mut self.ranked);
        if need == 0 || need > self.ranked.len() {
            return;
        }
        self.rank_degrees.clear();
        self.rank_degrees
            .extend(self.ranked.iter().map(|&k| residual[k]));
        self.chosen.clear();
        self.recent.clear();
        self.accepted.clear();
        let top = self.ranked.len();
        self.extend(top, need);

        for ranks in &self.accepted {
            let mut labels: Vec<usize> = ranks.iter().map(|&r| self.ranked[r]).collect();
            labels.sort_unstable();
            out.push(labels);
        }
    }

    fn extend(&mut self, hi: usize, need: usize) {
        let remaining = need - self.chosen.len() - 1;
        for r in (remaining..hi).rev() {
            self.chosen.push(r);
            self.test_set.clear();
            self.test_set.extend(0..remaining);
            self.test_set.extend(self.chosen.iter().rev());
            if self.feasible() {
                if remaining == 0 {
                    let set = self.test_set.clone();
                    if self.window > 0 {
                        if self.recent.len() == self.window {
                            self.recent.pop_front();
                        }
                        self.recent.push_back(set.clone());
                    }
                    self.accepted.push(set);
                } else {
                    self.extend(r, need);
                }
            }
            self.chosen.pop();
        }
    }

    fn feasible(&mut self) -> bool {
        if self
            .recent
            .iter()
            .rev()
            .any(|accepted| leq_sorted(&self.test_set, accepted))
        {
            self.dominance_skips += 1;
            return true;
        }
        self.eg_calls += 1;
        let mut marked = self.test_set.iter().peekable();
        let reduced = self.rank_degrees.iter().enumerate().map(move |(r, &d)| {
            if marked.peek() == Some(&&r) {
                marked.next();
                d - 1
            } else {
                d
            }
        });
        sort_nonincreasing_into(reduced, &mut self.sorted);
        erdos_gallai_sorted(&self.sorted).graphical
    }
}

fn require_graphical(d: &DegreeSequence) -> Result<usize> {
    if !erdos_gallai_sorted(d).graphical {
        return Err(Error::NotGraphical);
    }
    focal_node(d).ok_or(Error::NothingToReduce)
}

/// Colex-largest admissible adjacency set of the leftmost node, built
/// greedily: join the last node, then scan leftwards keeping each tentative
/// connection that passes the star-constrained test with the kept
/// connections forbidden.
pub fn rightmost_adjacency_set(d: &DegreeSequence) -> Result<AdjacencySet> {
    let focal = require_graphical(d)?;
    let members = rightmost_for(d, focal)?;
    Ok(AdjacencySet::from_sorted_indices(focal, &members))
}

pub(crate) fn rightmost_for(residual: &[usize], focal: usize) -> Result<Vec<usize>> {
    let mut ranked = Vec::new();
    rank_by_residual(residual, Some(focal), &mut ranked);
    let need = residual[focal];
    if need == 0 || need > ranked.len() {
        return Err(Error::NotGraphical);
    }
    let mut state = residual.to_vec();
    let mut kept = Vec::with_capacity(need);
    let mut scratch = CgScratch::default();

    let last = *ranked.last().expect("nonempty");
    state[focal] -= 1;
    state[last] -= 1;
    kept.push(last);
    for &k in ranked.iter().rev().skip(1) {
        if kept.len() == need {
            break;
        }
        state[focal] -= 1;
        state[k] -= 1;
        kept.push(k);
        if cg_check(&state, focal, &kept, &mut scratch) != Some(true) {
            kept.pop();
            state[focal] += 1;
            state[k] += 1;
        }
    }
    if kept.len() < need {
        debug_assert!(false, "rightmost scan exhausted on a graphical sequence");
        return Err(Error::NotGraphical);
    }
    kept.sort_unstable();
    Ok(kept)
}

/// All adjacency sets of the leftmost node that keep the sequence graphical,
/// in decreasing colexicographic order. Empty when no node has stubs.
pub fn all_adjacency_sets(d: &DegreeSequence) -> Result<Vec<AdjacencySet>> {
    if !erdos_gallai_sorted(d).graphical {
        return Err(Error::NotGraphical);
    }
    let Some(focal) = focal_node(d) else {
        return Ok(Vec::new());
    };
    let mut sets = Vec::new();
    FamilyBuilder::default().build(d, focal, &mut sets);
    Ok(sets
        .iter()
        .map(|s| AdjacencySet::from_sorted_indices(focal, s))
        .collect())
}

#[derive(Debug)]
struct Frame {
    residual: Vec<usize>,
    focal: usize,
    sets: Vec<Vec<usize>>,
    next: usize,
    edges_len: usize,
}

/// Lazy depth-first stream of every labeled realization, each exactly once.
#[derive(Debug)]
pub struct Realizations {
    n: usize,
    stack: Vec<Frame>,
    edges: Vec<(usize, usize)>,
    builder: FamilyBuilder,
    emit_empty: bool,
}

impl Realizations {
    fn from_residual(residual: Vec<usize>, restrict_to: Option<usize>) -> Self {
        let n = residual.len();
        let mut builder = FamilyBuilder::default();
        let mut stack = Vec::new();
        let mut emit_empty = false;
        match focal_node(&residual) {
            None => emit_empty = true,
            Some(focal) => {
                let mut sets = Vec::new();
                builder.build(&residual, focal, &mut sets);
                if let Some(index) = restrict_to {
                    sets = sets.into_iter().skip(index).take(1).collect();
                }
                stack.push(Frame {
                    residual,
                    focal,
                    sets,
                    next: 0,
                    edges_len: 0,
                });
            }
        }
        Self {
            n,
            stack,
            edges: Vec::new(),
            builder,
            emit_empty,
        }
    }

    fn empty(n: usize) -> Self {
        Self {
            n,
            stack: Vec::new(),
            edges: Vec::new(),
            builder: FamilyBuilder::default(),
            emit_empty: false,
        }
    }
}

impl Iterator for Realizations {
    type Item = LabeledGraph;

    fn next(&mut self) -> Option<LabeledGraph> {
        if self.emit_empty {
            self.emit_empty = false;
            return Some(LabeledGraph::empty(self.n));
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next == frame.sets.len() {
                self.stack.pop();
                continue;
            }
            let set = &frame.sets[frame.next];
            frame.next += 1;
            self.edges.truncate(frame.edges_len);
            let mut residual = frame.residual.clone();
            residual[frame.focal] = 0;
            for &m in set {
                residual[m] -= 1;
                self.edges.push((frame.focal, m));
            }
            match focal_node(&residual) {
                None => {
                    return Some(LabeledGraph::from_index_pairs(
                        self.n,
                        self.edges.iter().copied(),
                    ))
                }
                Some(focal) => {
                    let mut sets = Vec::new();
                    self.builder.build(&residual, focal, &mut sets);
                    let edges_len = self.edges.len();
                    self.stack.push(Frame {
                        residual,
                        focal,
                        sets,
                        next: 0,
                        edges_len,
                    });
                }
            }
        }
    }
}

/// Every labeled simple graph realizing `d`; empty if `d` is not graphical.
pub fn enumerate_all(d: &DegreeSequence) -> Realizations {
    if !erdos_gallai_sorted(d).graphical {
        return Realizations::empty(d.len());
    }
    Realizations::from_residual(d.to_vec(), None)
}

/// Enumerates on `threads` workers, one top-level adjacency set at a time.
/// With `ordered`, graphs reach `sink` in exactly the single-threaded order.
/// `sink` may stop the enumeration early.
pub fn enumerate_parallel<F>(d: &DegreeSequence, threads: usize, ordered: bool, mut sink: F)
where
    F: FnMut(LabeledGraph) -> ControlFlow<()>,
{
    if threads <= 1 || !erdos_gallai_sorted(d).graphical || focal_node(d).is_none() {
        for g in enumerate_all(d) {
            if sink(g).is_break() {
                return;
            }
        }
        return;
    }
    let branches = all_adjacency_sets(d).map(|s| s.len()).unwrap_or(0);
    let next_branch = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    const BUFFER: usize = 1024;

    let (senders, receivers): (Vec<_>, Vec<_>) = (0..if ordered { branches } else { 0 })
        .map(|_| {
            let (tx, rx) = mpsc::sync_channel::<LabeledGraph>(BUFFER);
            (Mutex::new(Some(tx)), rx)
        })
        .unzip();

    std::thread::scope(|scope| {
        if ordered {
            let senders = &senders;
            for _ in 0..threads {
                scope.spawn(|| {
                    // Branches are claimed in increasing order, so the lowest
                    // unfinished branch always has a live producer.
                    loop {
                        let b = next_branch.fetch_add(1, AtomicOrdering::SeqCst);
                        if b >= branches || stop.load(AtomicOrdering::Relaxed) {
                            break;
                        }
                        let tx = senders[b]
                            .lock()
                            .expect("sender lock")
                            .take()
                            .expect("each branch is claimed once");
                        for g in Realizations::from_residual(d.to_vec(), Some(b)) {
                            if tx.send(g).is_err() {
                                break;
                            }
                        }
                    }
                });
            }
            'outer: for rx in receivers {
                for g in rx.iter() {
                    if sink(g).is_break() {
                        stop.store(true, AtomicOrdering::Relaxed);
                        break 'outer;
                    }
                }
            }
            // dropping the remaining receivers unblocks producers
        } else {
            let (tx, rx) = mpsc::sync_channel(BUFFER);
            for _ in 0..threads {
                let tx = tx.clone();
                let next_branch = &next_branch;
                let stop = &stop;
                scope.spawn(move || loop {
                    let b = next_branch.fetch_add(1, AtomicOrdering::SeqCst);
                    if b >= branches || stop.load(AtomicOrdering::Relaxed) {
                        break;
                    }
                    for g in Realizations::from_residual(d.to_vec(), Some(b)) {
                        if tx.send(g).is_err() {
                            return;
                        }
                    }
                });
            }
            drop(tx);
            for g in rx.iter() {
                if sink(g).is_break() {
                    stop.store(true, AtomicOrdering::Relaxed);
                    break;
                }
            }
        }
    });
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub count: BigUint,
    pub memo_hits: u64,
    pub memo_entries: u64,
}

trait MemoStore {
    fn lookup(&mut self, key: &[usize]) -> Option<BigUint>;
    fn store(&mut self, key: Vec<usize>, value: BigUint);
    fn entries(&self) -> u64;
}

impl MemoStore for HashMap<Vec<usize>, BigUint> {
    fn lookup(&mut self, key: &[usize]) -> Option<BigUint> {
        self.get(key).cloned()
    }

    fn store(&mut self, key: Vec<usize>, value: BigUint) {
        self.insert(key, value);
    }

    fn entries(&self) -> u64 {
        self.len() as u64
    }
}

struct SharedMemo<'a>(&'a DashMap<Vec<usize>, BigUint>);

impl MemoStore for SharedMemo<'_> {
    fn lookup(&mut self, key: &[usize]) -> Option<BigUint> {
        self.0.get(key).map(|v| v.value().clone())
    }

    fn store(&mut self, key: Vec<usize>, value: BigUint) {
        // first writer wins; every writer computes the same value
        self.0.entry(key).or_insert(value);
    }

    fn entries(&self) -> u64 {
        self.0.len() as u64
    }
}

/// Work limit exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded;

struct Counter {
    builder: FamilyBuilder,
    hits: u64,
    visited: u64,
    budget: Option<u64>,
}

impl Counter {
    fn new(budget: Option<u64>) -> Self {
        Self {
            builder: FamilyBuilder::default(),
            hits: 0,
            visited: 0,
            budget,
        }
    }

    fn charge(&mut self, sets: usize) -> std::result::Result<(), BudgetExceeded> {
        self.visited += sets as u64;
        match self.budget {
            Some(limit) if self.visited > limit => Err(BudgetExceeded),
            _ => Ok(()),
        }
    }

    fn children(
        &mut self,
        residual: &[usize],
        focal: usize,
    ) -> std::result::Result<Vec<Vec<usize>>, BudgetExceeded> {
        let mut sets = Vec::new();
        self.builder.build(residual, focal, &mut sets);
        self.charge(sets.len().max(1))?;
        Ok(sets)
    }

    /// Leaf count of the subtree under `residual`, walking the real labels.
    fn plain(&mut self, residual: &mut [usize]) -> std::result::Result<BigUint, BudgetExceeded> {
        let Some(focal) = focal_node(residual) else {
            return Ok(BigUint::one());
        };
        let degree = residual[focal];
        let mut total = BigUint::zero();
        for set in self.children(residual, focal)? {
            residual[focal] = 0;
            for &m in &set {
                residual[m] -= 1;
            }
            total += self.plain(residual)?;
            for &m in &set {
                residual[m] += 1;
            }
            residual[focal] = degree;
        }
        Ok(total)
    }

    /// Same count, but keyed on the sorted multiset of positive residuals.
    /// Relabeling nodes maps realizations bijectively onto realizations, and
    /// zero-residual nodes take no further part, so the number of completions
    /// is a function of that multiset alone.
    fn memoized<M: MemoStore>(
        &mut self,
        key: &[usize],
        memo: &mut M,
    ) -> std::result::Result<BigUint, BudgetExceeded> {
        if key.is_empty() {
            return Ok(BigUint::one());
        }
        if let Some(hit) = memo.lookup(key) {
            self.hits += 1;
            return Ok(hit);
        }
        // a sorted key has its focal node at index 0
        let sets = self.children(key, 0)?;
        let mut grouped: HashMap<Vec<usize>, u64> = HashMap::new();
        let mut child = Vec::with_capacity(key.len());
        for set in sets {
            let mut reduced = key.to_vec();
            reduced[0] = 0;
            for &m in &set {
                reduced[m] -= 1;
            }
            canonical_key(&reduced, &mut child);
            *grouped.entry(child.clone()).or_default() += 1;
        }
        let mut total = BigUint::zero();
        let mut grouped: Vec<_> = grouped.into_iter().collect();
        grouped.sort_unstable();
        for (child, multiplicity) in grouped {
            total += self.memoized(&child, memo)? * multiplicity;
        }
        memo.store(key.to_vec(), total.clone());
        Ok(total)
    }
}

fn canonical_key(residual: &[usize], out: &mut Vec<usize>) {
    sort_nonincreasing_into(residual.iter().copied().filter(|&r| r > 0), out);
}

/// Exact number of labeled realizations of `d`.
pub fn count_realizations(d: &DegreeSequence, memoize: bool) -> CountResult {
    count_with_budget(d, memoize, None).expect("no budget")
}

/// As [`count_realizations`], giving up after `budget` adjacency sets.
pub fn count_with_budget(
    d: &DegreeSequence,
    memoize: bool,
    budget: Option<u64>,
) -> std::result::Result<CountResult, BudgetExceeded> {
    if !is_graphical(d) {
        return Ok(CountResult {
            count: BigUint::zero(),
            memo_hits: 0,
            memo_entries: 0,
        });
    }
    let mut counter = Counter::new(budget);
    if memoize {
        let mut memo: HashMap<Vec<usize>, BigUint> = HashMap::new();
        let mut key = Vec::new();
        canonical_key(d, &mut key);
        let count = counter.memoized(&key, &mut memo)?;
        Ok(CountResult {
            count,
            memo_hits: counter.hits,
            memo_entries: memo.entries(),
        })
    } else {
        let mut residual = d.to_vec();
        let count = counter.plain(&mut residual)?;
        Ok(CountResult {
            count,
            memo_hits: 0,
            memo_entries: 0,
        })
    }
}

/// Memoized count with the top-level children spread over `threads` workers
/// sharing one concurrent memo table.
pub fn count_parallel(d: &DegreeSequence, threads: usize) -> CountResult {
    if threads <= 1 || !is_graphical(d) {
        return count_realizations(d, true);
    }
    let mut key = Vec::new();
    canonical_key(d, &mut key);
    if key.is_empty() {
        return count_realizations(d, true);
    }
    let memo: DashMap<Vec<usize>, BigUint> = DashMap::new();
    let hits = AtomicU64::new(0);
    let mut builder = FamilyBuilder::default();
    let mut sets = Vec::new();
    builder.build(&key, 0, &mut sets);
    let children: Vec<Vec<usize>> = sets
        .iter()
        .map(|set| {
            let mut reduced = key.clone();
            reduced[0] = 0;
            for &m in set {
                reduced[m] -= 1;
            }
            let mut child = Vec::new();
            canonical_key(&reduced, &mut child);
            child
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let count = pool.install(|| {
        children
            .par_iter()
            .map(|child| {
                let mut counter = Counter::new(None);
                let mut shared = SharedMemo(&memo);
                let c = counter.memoized(child, &mut shared).expect("no budget");
                hits.fetch_add(counter.hits, AtomicOrdering::Relaxed);
                c
            })
            .reduce(BigUint::zero, |a, b| a + b)
    });
    CountResult {
        count,
        memo_hits: hits.into_inner(),
        memo_entries: memo.len() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_enumerate, OracleQuery};
    use std::collections::BTreeSet;

    fn seq(v: &[usize]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn labels(sets: &[AdjacencySet]) -> Vec<Vec<usize>> {
        sets.iter().map(|s| s.labels()).collect()
    }

    #[test]
    fn rightmost_examples() {
        assert_eq!(
            rightmost_adjacency_set(&seq(&[1, 1])).unwrap().labels(),
            vec![2]
        );
        assert_eq!(
            rightmost_adjacency_set(&seq(&[2, 2, 2, 2]))
                .unwrap()
                .labels(),
            vec![3, 4]
        );
        assert_eq!(
            rightmost_adjacency_set(&seq(&[3, 3, 2, 2, 2, 2, 2, 2]))
                .unwrap()
                .labels(),
            vec![6, 7, 8]
        );
        assert_eq!(
            rightmost_adjacency_set(&seq(&[2, 2, 1, 1]))
                .unwrap()
                .labels(),
            vec![2, 4]
        );
        assert_eq!(
            rightmost_adjacency_set(&seq(&[3, 2, 1])),
            Err(Error::NotGraphical)
        );
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            labels(&all_adjacency_sets(&seq(&[2, 2, 2, 2])).unwrap()),
            vec![vec![3, 4], vec![2, 4], vec![2, 3]]
        );
        assert_eq!(
            labels(&all_adjacency_sets(&seq(&[2, 2, 1, 1])).unwrap()),
            vec![vec![2, 4], vec![2, 3]]
        );
        assert_eq!(
            labels(&all_adjacency_sets(&seq(&[1, 1])).unwrap()),
            vec![vec![2]]
        );
        assert_eq!(
            all_adjacency_sets(&seq(&[1, 1, 1])),
            Err(Error::NotGraphical)
        );
    }

    #[test]
    fn enumeration_examples() {
        let p4: Vec<_> = enumerate_all(&seq(&[2, 2, 1, 1])).collect();
        assert_eq!(
            p4,
            vec![
                graph(4, &[(1, 2), (1, 4), (2, 3)]),
                graph(4, &[(1, 2), (1, 3), (2, 4)]),
            ]
        );
        assert_eq!(enumerate_all(&seq(&[2, 2, 2, 2])).count(), 3);
        assert_eq!(
            enumerate_all(&seq(&[1, 1])).collect::<Vec<_>>(),
            vec![graph(2, &[(1, 2)])]
        );
        assert_eq!(enumerate_all(&seq(&[3, 2, 1])).count(), 0);
        assert_eq!(
            enumerate_all(&DegreeSequence::default()).collect::<Vec<_>>(),
            vec![LabeledGraph::empty(0)]
        );
    }

    #[test]
    fn count_examples() {
        for memo in [false, true] {
            assert_eq!(
                count_realizations(&seq(&[2, 2, 2]), memo).count,
                BigUint::from(1u32)
            );
            assert_eq!(
                count_realizations(&seq(&[3, 3, 3, 3]), memo).count,
                BigUint::from(1u32)
            );
            assert_eq!(
                count_realizations(&seq(&[1, 1, 1, 1]), memo).count,
                BigUint::from(3u32)
            );
            assert_eq!(
                count_realizations(&seq(&[3, 2, 1]), memo).count,
                BigUint::zero()
            );
        }
    }

    #[test]
    fn memo_reuses_entries() {
        let r = count_realizations(&seq(&[2, 2, 2, 2, 2, 2, 2, 2]), true);
        assert!(r.memo_hits > 0);
        assert!(r.memo_entries > 0);
        assert_eq!(
            r.count,
            count_realizations(&seq(&[2, 2, 2, 2, 2, 2, 2, 2]), false).count
        );
    }

    #[test]
    fn budget_stops_counting() {
        let d = seq(&[3, 3, 3, 3, 3, 3, 3, 3, 3, 3]);
        assert_eq!(count_with_budget(&d, false, Some(10)), Err(BudgetExceeded));
        assert!(count_with_budget(&d, true, Some(1_000_000)).is_ok());
    }

    #[test]
    fn dominance_skipping_does_not_change_family() {
        let d = [4, 3, 3, 3, 2, 2, 2, 1];
        let mut with = FamilyBuilder::default();
        let mut without = FamilyBuilder::with_window(0);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        with.build(&d, 0, &mut a);
        without.build(&d, 0, &mut b);
        assert_eq!(a, b);
        assert!(with.dominance_skips > 0);
        assert!(with.eg_calls < without.eg_calls);
    }

    #[test]
    fn unsorted_residual_family_matches_oracle() {
        // focal is node 3; node 1 is already finished
        let residual = [0, 1, 3, 2, 2, 2];
        let focal = focal_node(&residual).unwrap();
        assert_eq!(focal, 2);
        let mut sets = Vec::new();
        FamilyBuilder::default().build(&residual, focal, &mut sets);
        let mut expected = BTreeSet::new();
        for g in oracle_enumerate(&OracleQuery::new(&residual)).unwrap() {
            let mut nb: Vec<usize> = g.neighbors(focal + 1).iter().map(|l| l - 1).collect();
            nb.sort_unstable();
            expected.insert(nb);
        }
        assert_eq!(sets.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(sets[0], rightmost_for(&residual, focal).unwrap());
    }

    #[test]
    fn parallel_enumeration_preserves_order() {
        let d = seq(&[3, 3, 2, 2, 2, 2, 2, 2]);
        let serial: Vec<_> = enumerate_all(&d).collect();
        let mut ordered = Vec::new();
        enumerate_parallel(&d, 4, true, |g| {
            ordered.push(g);
            ControlFlow::Continue(())
        });
        assert_eq!(serial, ordered);

        let mut unordered = Vec::new();
        enumerate_parallel(&d, 3, false, |g| {
            unordered.push(g);
            ControlFlow::Continue(())
        });
        unordered.sort();
        let mut sorted = serial.clone();
        sorted.sort();
        assert_eq!(sorted, unordered);

        let mut first = Vec::new();
        enumerate_parallel(&d, 4, true, |g| {
            first.push(g);
            if first.len() == 5 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(first, serial[..5].to_vec());
    }

    #[test]
    fn parallel_count_matches() {
        for d in [
            vec![3, 3, 2, 2, 2, 2, 2, 2],
            vec![4, 4, 3, 3, 3, 2, 2, 1],
            vec![2, 2, 2],
        ] {
            let d = seq(&d);
            assert_eq!(
                count_parallel(&d, 4).count,
                count_realizations(&d, true).count
            );
        }
    }
}
