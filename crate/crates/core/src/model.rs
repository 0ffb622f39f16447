//! Shared domain types.
//!
//! Node labels are 1-based throughout the public API. Internally, slices of
//! residual degrees are indexed by `label - 1`.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A nonincreasing sequence of degrees, `d[k]` belonging to node label `k + 1`.
///
/// Zeros are permitted (they can only appear at the tail). Entries above
/// `n - 1` are representable so that tests can report them as non-graphical;
/// [`validate_input_sequence`] rejects them and strips zeros from user input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        for (position, pair) in degrees.windows(2).enumerate() {
            if pair[0] < pair[1] {
                return Err(Error::InvalidSet(format!(
                    "degrees must be nonincreasing (position {})",
                    position + 2
                )));
            }
        }
        Ok(Self(degrees))
    }

    pub(crate) fn from_sorted_unchecked(degrees: Vec<usize>) -> Self {
        debug_assert!(degrees.windows(2).all(|w| w[0] >= w[1]));
        Self(degrees)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, label: NodeLabel) -> usize {
        self.0[label.index()]
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for DegreeSequence {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A user-supplied sequence after sorting and zero stripping, together with
/// the mapping back to the caller's positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedSequence {
    pub sequence: DegreeSequence,
    /// `original_positions[k]` is the 0-based input position of sorted label `k + 1`.
    pub original_positions: Vec<usize>,
    /// Length of the raw input, zeros included.
    pub original_len: usize,
}

impl ValidatedSequence {
    /// Relabels a graph on sorted labels back onto the caller's positions.
    /// Stripped zero-degree nodes reappear as isolated vertices.
    pub fn to_original(&self, graph: &LabeledGraph) -> LabeledGraph {
        let edges = graph.edges().iter().map(|&(u, v)| {
            (
                self.original_positions[u - 1] + 1,
                self.original_positions[v - 1] + 1,
            )
        });
        LabeledGraph::from_edges(self.original_len, edges).expect("relabeling preserves simplicity")
    }

    /// Maps a 1-based input position to its sorted label. `None` for a
    /// stripped zero-degree node.
    pub fn sorted_label(&self, original_label: usize) -> Result<Option<NodeLabel>> {
        if original_label == 0 || original_label > self.original_len {
            return Err(Error::InvalidLabel {
                label: original_label,
                n: self.original_len,
            });
        }
        Ok(self
            .original_positions
            .iter()
            .position(|&p| p + 1 == original_label)
            .map(|k| NodeLabel(k + 1)))
    }
}

/// Sorts `raw` into nonincreasing order (ties keep input order) and strips zeros.
pub fn validate_input_sequence(raw: &[i64]) -> Result<ValidatedSequence> {
    let v = sort_input_sequence(raw)?;
    let n = v.sequence.len();
    if let Some(&first) = v.sequence.first() {
        if first >= n {
            return Err(Error::DegreeTooLarge { degree: first, n });
        }
    }
    Ok(v)
}

/// Like [`validate_input_sequence`] but keeps degrees of `n` or more, which
/// no simple graph can realize.
pub fn sort_input_sequence(raw: &[i64]) -> Result<ValidatedSequence> {
    if raw.is_empty() {
        return Err(Error::EmptySequence);
    }
    if let Some((position, &value)) = raw.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(Error::InvalidDegree {
            position: position + 1,
            value,
        });
    }
    let mut order: Vec<usize> = (0..raw.len()).filter(|&k| raw[k] > 0).collect();
    // stable: equal degrees keep their input order
    order.sort_by(|&a, &b| raw[b].cmp(&raw[a]));
    let degrees: Vec<usize> = order.iter().map(|&k| raw[k] as usize).collect();
    Ok(ValidatedSequence {
        sequence: DegreeSequence(degrees),
        original_positions: order,
        original_len: raw.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeLabel(usize);

impl NodeLabel {
    pub fn new(label: usize) -> Result<Self> {
        if label == 0 {
            return Err(Error::InvalidLabel { label, n: 0 });
        }
        Ok(Self(label))
    }

    /// Checked against a node count.
    pub fn within(label: usize, n: usize) -> Result<Self> {
        if label == 0 || label > n {
            return Err(Error::InvalidLabel { label, n });
        }
        Ok(Self(label))
    }

    pub(crate) fn from_index(index: usize) -> Self {
        Self(index + 1)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Increasingly ordered distinct neighbours of a focal node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencySet {
    focal: NodeLabel,
    members: Vec<NodeLabel>,
}

impl AdjacencySet {
    pub fn new(focal: NodeLabel, members: Vec<NodeLabel>) -> Result<Self> {
        if members.contains(&focal) {
            return Err(Error::InvalidSet(format!(
                "focal node {focal} listed as its own neighbour"
            )));
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(
                "members must be strictly increasing".into(),
            ));
        }
        Ok(Self { focal, members })
    }

    pub fn from_labels(focal: usize, members: &[usize]) -> Result<Self> {
        let members = members
            .iter()
            .map(|&m| NodeLabel::new(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(NodeLabel::new(focal)?, members)
    }

    /// Built from 0-based indices already known to be sorted and valid.
    pub(crate) fn from_sorted_indices(focal: usize, members: &[usize]) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!members.contains(&focal));
        Self {
            focal: NodeLabel::from_index(focal),
            members: members.iter().map(|&m| NodeLabel::from_index(m)).collect(),
        }
    }

    pub fn focal(&self) -> NodeLabel {
        self.focal
    }

    pub fn members(&self) -> &[NodeLabel] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.get()).collect()
    }
}

/// Nodes the focal node must not connect to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    focal: NodeLabel,
    members: Vec<NodeLabel>,
}

impl ForbiddenSet {
    pub fn new(focal: NodeLabel, mut members: Vec<NodeLabel>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.contains(&focal) {
            return Err(Error::InvalidSet(format!(
                "focal node {focal} cannot forbid itself"
            )));
        }
        Ok(Self { focal, members })
    }

    pub fn from_labels(focal: usize, members: &[usize]) -> Result<Self> {
        let members = members
            .iter()
            .map(|&m| NodeLabel::new(m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(NodeLabel::new(focal)?, members)
    }

    pub fn empty(focal: NodeLabel) -> Self {
        Self {
            focal,
            members: Vec::new(),
        }
    }

    pub fn focal(&self) -> NodeLabel {
        self.focal
    }

    pub fn members(&self) -> &[NodeLabel] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, label: NodeLabel) -> bool {
        self.members.binary_search(&label).is_ok()
    }
}

/// Simple undirected graph on labels `1..=n`, edges stored as sorted `(u, v)`
/// pairs with `u < v`. Equality is labeled equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canonical = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            let (u, v) = (u.min(v), u.max(v));
            if u == 0 || v > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) outside 1..={n}"
                )));
            }
            canonical.push((u, v));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({},{})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self {
            n,
            edges: canonical,
        })
    }

    /// From 0-based index pairs that are known to be simple.
    pub(crate) fn from_index_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut edges: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(a, b)| (a.min(b) + 1, a.max(b) + 1))
            .collect();
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0] != w[1]));
        Self { n, edges }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Degrees indexed by `label - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0; self.n];
        for &(u, v) in &self.edges {
            degrees[u - 1] += 1;
            degrees[v - 1] += 1;
        }
        degrees
    }

    pub fn neighbors(&self, label: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == label {
                    Some(v)
                } else if v == label {
                    Some(u)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn realizes(&self, degrees: &[usize]) -> bool {
        self.n == degrees.len() && self.degrees() == degrees
    }
}

/// Per-label degrees of `g` (the residual view) and the sorted sequence.
pub fn graph_degree_sequence(g: &LabeledGraph) -> (Vec<usize>, DegreeSequence) {
    let per_label = g.degrees();
    let mut sorted = per_label.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    (per_label, DegreeSequence(sorted))
}
