//! Graphicality under a star of forbidden edges.
//!
//! A degree sequence can be realized with node `i` avoiding every node of
//! `X(i)` if and only if the sequence reduced by the leftmost restricted set
//! `L(i)` is graphical. On a nonincreasing sequence, `L(i)` is the `d_i`
//! lowest labels outside `X(i) ∪ {i}`. Residual sequences met during
//! incremental construction are not sorted, so `L(i)` is taken in residual
//! degree order instead (smallest label among equal degrees). Ties cannot
//! change the reduced multiset, and on a sorted sequence the two orders agree.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graphicality::{erdos_gallai_sorted, rank_by_residual, sort_nonincreasing_into};
use crate::model::{AdjacencySet, ForbiddenSet, NodeLabel};

/// A degree sequence after removing a focal node and one edge to every
/// member of an adjacency set. Labels never move; the focal entry becomes 0
/// and a member that had no stub left becomes -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSequence {
    residual: Vec<i64>,
    removed: NodeLabel,
}

impl ReducedSequence {
    pub fn residual(&self) -> &[i64] {
        &self.residual
    }

    pub fn removed(&self) -> NodeLabel {
        self.removed
    }

    pub fn has_negative(&self) -> bool {
        self.residual.iter().any(|&r| r < 0)
    }

    /// `None` when some entry went negative.
    pub fn to_degrees(&self) -> Option<Vec<usize>> {
        self.residual
            .iter()
            .map(|&r| usize::try_from(r).ok())
            .collect()
    }

    /// A negative entry is non-graphical outright; otherwise Erdős–Gallai on
    /// the sorted entries.
    pub fn is_graphical(&self) -> bool {
        match self.to_degrees() {
            Some(degrees) => crate::graphicality::is_graphical(&degrees),
            None => false,
        }
    }
}

fn check_range(label: NodeLabel, n: usize) -> Result<()> {
    if label.get() > n {
        return Err(Error::InvalidSet(format!("node {label} outside 1..={n}")));
    }
    Ok(())
}

pub fn reduce_by_set(d: &[usize], a: &AdjacencySet) -> Result<ReducedSequence> {
    let n = d.len();
    check_range(a.focal(), n)?;
    for &m in a.members() {
        check_range(m, n)?;
    }
    let mut residual: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    for &m in a.members() {
        residual[m.index()] -= 1;
    }
    residual[a.focal().index()] = 0;
    Ok(ReducedSequence {
        residual,
        removed: a.focal(),
    })
}

fn same_shape(a: &AdjacencySet, b: &AdjacencySet) -> Result<()> {
    if a.len() != b.len() || a.focal() != b.focal() {
        return Err(Error::Incomparable {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// `b <= a` elementwise: `b` lies to the left of `a`.
pub fn set_leq(b: &AdjacencySet, a: &AdjacencySet) -> Result<bool> {
    same_shape(a, b)?;
    Ok(leq_sorted(b.members(), a.members()))
}

/// Colexicographic order: compare at the largest position where the sets differ.
pub fn colex_less(a: &AdjacencySet, b: &AdjacencySet) -> Result<bool> {
    same_shape(a, b)?;
    Ok(colex_cmp(a.members(), b.members()) == Ordering::Less)
}

pub(crate) fn leq_sorted<T: Ord>(b: &[T], a: &[T]) -> bool {
    b.iter().zip(a).all(|(x, y)| x <= y)
}

pub(crate) fn colex_cmp<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Reusable buffers for [`cg_check`].
#[derive(Debug, Default, Clone)]
pub(crate) struct CgScratch {
    ranked: Vec<usize>,
    blocked: Vec<bool>,
    chosen: Vec<bool>,
    sorted: Vec<usize>,
}

/// Index-level star-constrained test on a residual vector. `None` when the
/// forbidden set leaves fewer than `residual[focal]` other nodes.
pub(crate) fn cg_check(
    residual: &[usize],
    focal: usize,
    forbidden: &[usize],
    scratch: &mut CgScratch,
) -> Option<bool> {
    let n = residual.len();
    let need = residual[focal];
    let CgScratch {
        ranked,
        blocked,
        chosen,
        sorted,
    } = scratch;
    blocked.clear();
    blocked.resize(n, false);
    let mut forbidden_count = 0;
    for &x in forbidden {
        if x != focal && !blocked[x] {
            blocked[x] = true;
            forbidden_count += 1;
        }
    }
    if forbidden_count + need > n.saturating_sub(1) {
        return None;
    }

    // Only positive residuals are ranked; running out of them means L(i)
    // would reach a zero-residual node and drive it to -1.
    rank_by_residual(residual, Some(focal), ranked);
    chosen.clear();
    chosen.resize(n, false);
    let mut taken = 0;
    for &k in ranked.iter() {
        if taken == need {
            break;
        }
        if !blocked[k] {
            chosen[k] = true;
            taken += 1;
        }
    }
    if taken < need {
        return Some(false);
    }
    let reduced = (0..n)
        .filter(|&k| k != focal)
        .map(|k| residual[k] - usize::from(chosen[k]));
    sort_nonincreasing_into(reduced, sorted);
    Some(erdos_gallai_sorted(sorted).graphical)
}

/// The `d_i` best-ranked nodes outside `X(i) ∪ {i}`, ranked by residual
/// degree (descending) and then label. On a nonincreasing `d` these are
/// simply the `d_i` lowest allowed labels.
pub fn leftmost_restricted(d: &[usize], i: NodeLabel, x: &ForbiddenSet) -> Result<AdjacencySet> {
    let n = d.len();
    validate_star(d, i, x)?;
    let need = d[i.index()];
    let mut allowed: Vec<usize> = (0..n)
        .filter(|&k| k != i.index() && !x.contains(NodeLabel::from_index(k)))
        .collect();
    allowed.sort_by(|&a, &b| d[b].cmp(&d[a]).then(a.cmp(&b)));
    let mut members = allowed[..need].to_vec();
    members.sort_unstable();
    Ok(AdjacencySet::from_sorted_indices(i.index(), &members))
}

fn validate_star(d: &[usize], i: NodeLabel, x: &ForbiddenSet) -> Result<()> {
    let n = d.len();
    if i.get() > n {
        return Err(Error::InvalidLabel { label: i.get(), n });
    }
    if x.focal() != i {
        return Err(Error::InvalidSet(format!(
            "forbidden set centred on {} used for node {i}",
            x.focal()
        )));
    }
    for &m in x.members() {
        if m.get() > n {
            return Err(Error::InvalidLabel { label: m.get(), n });
        }
    }
    let degree = d[i.index()];
    if x.len() + degree > n - 1 {
        return Err(Error::TooManyForbidden {
            forbidden: x.len(),
            degree,
            n,
        });
    }
    Ok(())
}

/// Whether `d` has a realization in which node `i` is adjacent to no member
/// of `x`.
pub fn cg_test(d: &[usize], i: NodeLabel, x: &ForbiddenSet) -> Result<bool> {
    validate_star(d, i, x)?;
    let forbidden: Vec<usize> = x.members().iter().map(|m| m.index()).collect();
    let mut scratch = CgScratch::default();
    Ok(cg_check(d, i.index(), &forbidden, &mut scratch).expect("validated above"))
}
