#![allow(dead_code)]

use graphreal::oracle::{oracle_exists, OracleQuery};
use graphreal::{DegreeSequence, ForbiddenSet, LabeledGraph};

/// Every nonincreasing sequence of `n` entries drawn from `1..=max`.
pub fn sequences(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in (1..=cap).rev() {
            cur.push(d);
            go(n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

/// All positive nonincreasing sequences with `1 <= n <= max_n` and entries up to `max_d`.
pub fn family(max_n: usize, max_d: usize) -> Vec<Vec<usize>> {
    (1..=max_n).flat_map(|n| sequences(n, max_d)).collect()
}

/// Graphical members of `family(max_n, max_n - 1)`, decided by the oracle.
pub fn graphical_family(max_n: usize) -> Vec<DegreeSequence> {
    family(max_n, max_n.saturating_sub(1))
        .into_iter()
        .filter(|d| d[0] < d.len())
        .filter(|d| oracle_exists(&OracleQuery::new(d)).unwrap())
        .map(|d| DegreeSequence::new(d).unwrap())
        .collect()
}

/// Every subset of `items`.
pub fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Every subset of `items` of size `k`, increasing.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    subsets(items)
        .into_iter()
        .filter(|s| s.len() == k)
        .collect()
}

pub fn star(focal: usize, members: &[usize]) -> ForbiddenSet {
    ForbiddenSet::from_labels(focal, members).unwrap()
}

/// Every simple graph on `d.len()` nodes whose degrees stay within `d`.
pub fn partial_graphs(d: &[usize]) -> Vec<LabeledGraph> {
    let n = d.len();
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut room = d.to_vec();
    let mut chosen = Vec::new();
    fn go(
        p: usize,
        pairs: &[(usize, usize)],
        room: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        n: usize,
        out: &mut Vec<LabeledGraph>,
    ) {
        if p == pairs.len() {
            out.push(LabeledGraph::from_edges(n, chosen.iter().copied()).unwrap());
            return;
        }
        go(p + 1, pairs, room, chosen, n, out);
        let (u, v) = pairs[p];
        if room[u - 1] > 0 && room[v - 1] > 0 {
            room[u - 1] -= 1;
            room[v - 1] -= 1;
            chosen.push((u, v));
            go(p + 1, pairs, room, chosen, n, out);
            chosen.pop();
            room[u - 1] += 1;
            room[v - 1] += 1;
        }
    }
    go(0, &pairs, &mut room, &mut chosen, n, &mut out);
    out
}

/// Two degree-3 hubs among six degree-2 nodes; some realizations are out of
/// reach of every Havel–Hakimi policy.
pub fn two_hub_sequence() -> DegreeSequence {
    DegreeSequence::new(vec![3, 3, 2, 2, 2, 2, 2, 2]).unwrap()
}

/// No edge between the two degree-3 nodes and no common neighbour.
pub fn avoids_hub_link(g: &LabeledGraph) -> bool {
    let a = g.neighbors(1);
    let b = g.neighbors(2);
    !g.has_edge(1, 2) && !a.iter().any(|x| b.contains(x))
}
