//! Brute-force ground truth for small instances.
//!
//! Backtracks over the lexicographic list of candidate pairs, deciding each
//! pair in or out. Shares nothing with the constructive algorithms except the
//! model types.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::model::{ForbiddenSet, LabeledGraph};

pub const ORACLE_NODE_LIMIT: usize = 10;

/// Degrees are indexed by label and need not be sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleQuery {
    pub degrees: Vec<usize>,
    pub forbidden_star: Option<ForbiddenSet>,
    /// Edges every answer must contain.
    pub fixed_partial: Option<LabeledGraph>,
}

impl OracleQuery {
    pub fn new(degrees: &[usize]) -> Self {
        Self {
            degrees: degrees.to_vec(),
            forbidden_star: None,
            fixed_partial: None,
        }
    }

    pub fn forbidding(mut self, star: ForbiddenSet) -> Self {
        self.forbidden_star = Some(star);
        self
    }

    pub fn containing(mut self, partial: LabeledGraph) -> Self {
        self.fixed_partial = Some(partial);
        self
    }
}

struct Search {
    pairs: Vec<(usize, usize)>,
    residual: Vec<usize>,
    capacity: Vec<usize>,
    demand: usize,
    chosen: Vec<(usize, usize)>,
}

impl Search {
    /// `None` when the query is trivially unsatisfiable.
    fn prepare(q: &OracleQuery) -> Result<Option<Self>> {
        let n = q.degrees.len();
        if n > ORACLE_NODE_LIMIT {
            return Err(Error::OracleTooLarge {
                n,
                limit: ORACLE_NODE_LIMIT,
            });
        }
        let mut residual = q.degrees.clone();
        let mut present = vec![vec![false; n]; n];
        let mut chosen = Vec::new();
        if let Some(partial) = &q.fixed_partial {
            if partial.node_count() != n {
                return Err(Error::InvalidGraph(format!(
                    "partial graph has {} nodes, sequence has {n}",
                    partial.node_count()
                )));
            }
            for &(u, v) in partial.edges() {
                let (a, b) = (u - 1, v - 1);
                if residual[a] == 0 || residual[b] == 0 {
                    return Ok(None);
                }
                residual[a] -= 1;
                residual[b] -= 1;
                present[a][b] = true;
                chosen.push((a, b));
            }
        }
        let mut blocked = vec![vec![false; n]; n];
        if let Some(star) = &q.forbidden_star {
            let i = star.focal().index();
            if i >= n {
                return Err(Error::InvalidLabel { label: i + 1, n });
            }
            for m in star.members() {
                let j = m.index();
                if j >= n {
                    return Err(Error::InvalidLabel { label: j + 1, n });
                }
                blocked[i][j] = true;
                blocked[j][i] = true;
                if present[i.min(j)][i.max(j)] {
                    return Ok(None);
                }
            }
        }
        let demand: usize = residual.iter().sum();
        if demand % 2 != 0 {
            return Ok(None);
        }
        let mut pairs = Vec::new();
        let mut capacity = vec![0; n];
        for u in 0..n {
            for v in u + 1..n {
                if !present[u][v] && !blocked[u][v] {
                    pairs.push((u, v));
                    capacity[u] += 1;
                    capacity[v] += 1;
                }
            }
        }
        if (0..n).any(|v| residual[v] > capacity[v]) {
            return Ok(None);
        }
        Ok(Some(Self {
            pairs,
            residual,
            capacity,
            demand,
            chosen,
        }))
    }

    fn run<F>(&mut self, p: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
    {
        if self.demand == 0 {
            return visit(&self.chosen);
        }
        if p == self.pairs.len() {
            return ControlFlow::Continue(());
        }
        let (u, v) = self.pairs[p];
        self.capacity[u] -= 1;
        self.capacity[v] -= 1;
        let mut flow = ControlFlow::Continue(());

        if self.residual[u] > 0 && self.residual[v] > 0 {
            self.residual[u] -= 1;
            self.residual[v] -= 1;
            self.demand -= 2;
            if self.residual[u] <= self.capacity[u] && self.residual[v] <= self.capacity[v] {
                self.chosen.push((u, v));
                flow = self.run(p + 1, visit);
                self.chosen.pop();
            }
            self.residual[u] += 1;
            self.residual[v] += 1;
            self.demand += 2;
        }
        if flow.is_continue()
            && self.residual[u] <= self.capacity[u]
            && self.residual[v] <= self.capacity[v]
        {
            flow = self.run(p + 1, visit);
        }

        self.capacity[u] += 1;
        self.capacity[v] += 1;
        flow
    }
}

fn search<F>(q: &OracleQuery, mut visit: F) -> Result<()>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    if let Some(mut s) = Search::prepare(q)? {
        let _ = s.run(0, &mut visit);
    }
    Ok(())
}

/// Every simple labeled graph realizing the query.
pub fn oracle_enumerate(q: &OracleQuery) -> Result<BTreeSet<LabeledGraph>> {
    let n = q.degrees.len();
    let mut out = BTreeSet::new();
    search(q, |edges| {
        out.insert(LabeledGraph::from_index_pairs(n, edges.iter().copied()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn oracle_count(q: &OracleQuery) -> Result<u64> {
    let mut count = 0u64;
    search(q, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// Stops at the first solution.
pub fn oracle_exists(q: &OracleQuery) -> Result<bool> {
    let mut found = false;
    search(q, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}
