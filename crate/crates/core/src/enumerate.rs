//! Forced-point search for coverings of Z^2 by six subgroups.
//!
//! The search walks a fixed list of points `P`. At each step it takes the
//! first point of `P` not yet covered and enlarges one of the slots so that
//! it contains that point. Slots are only tried up to and including the first
//! empty (rank 0) slot, which removes most permutation duplicates. A branch is
//! dropped as soon as the enlarged slot becomes all of Z^2.
//!
//! Every covering by six proper subgroups sits above (in the order `≼`) one of
//! the recorded leaves, and any six subgroups whose union contains `P` already
//! cover Z^2. Running out of points therefore signals a logic error.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use num_traits::Zero;

use crate::lattice::{density_sum, is_cover, Subgroup, Vec2Z};
use crate::ratmat::Rat;

/// Number of slots of a covering tuple.
pub const SLOTS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("forcing list exhausted at position {0}")]
    ForcingListExhausted(usize),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

const FORCING_POINTS: [(i64, i64); 99] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (1, 2),
    (2, 1),
    (1, 3),
    (3, 1),
    (1, -3),
    (3, -1),
    (1, 4),
    (2, 3),
    (3, 2),
    (4, 1),
    (1, -4),
    (2, -3),
    (3, -2),
    (4, -1),
    (5, 1),
    (1, 5),
    (5, -1),
    (1, -5),
    (1, 6),
    (2, 5),
    (3, 4),
    (4, 3),
    (5, 2),
    (6, 1),
    (1, 7),
    (3, 5),
    (5, 3),
    (7, 1),
    (1, 8),
    (2, 7),
    (4, 5),
    (5, 4),
    (7, 2),
    (8, 1),
    (1, 9),
    (3, 7),
    (7, 3),
    (9, 1),
    (1, 10),
    (2, 9),
    (3, 8),
    (4, 7),
    (5, 6),
    (6, 5),
    (7, 4),
    (8, 3),
    (9, 2),
    (10, 1),
    (1, 11),
    (5, 7),
    (7, 5),
    (11, 1),
    (1, 12),
    (2, 11),
    (3, 8),
    (4, 7),
    (5, 8),
    (6, 7),
    (7, 6),
    (8, 5),
    (9, 4),
    (10, 3),
    (11, 2),
    (12, 1),
    (1, 13),
    (3, 11),
    (5, 9),
    (9, 5),
    (11, 3),
    (13, 1),
    (1, 14),
    (2, 13),
    (4, 11),
    (7, 8),
    (8, 7),
    (11, 4),
    (13, 2),
    (14, 1),
    (1, 15),
    (3, 13),
    (5, 11),
    (7, 9),
    (9, 7),
    (11, 5),
    (13, 3),
    (15, 1),
    (1, 16),
    (8, 9),
    (9, 8),
    (16, 1),
    (2, 15),
    (1, 30),
    (1, 17),
    (30, 1),
    (17, 1),
];

/// The forcing list `P`, in search order. It contains two repeated points,
/// `(3, 8)` and `(4, 7)`; they are kept so the traversal matches the
/// published one step for step.
pub fn forcing_points() -> Vec<Vec2Z> {
    FORCING_POINTS.iter().map(|&p| Vec2Z::from(p)).collect()
}

/// An ordered tuple of six subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CoveringTuple {
    pub slots: [Subgroup; SLOTS],
}

impl CoveringTuple {
    pub fn empty() -> Self {
        CoveringTuple::default()
    }

    /// Pads `lattices` with zero subgroups; panics on more than six.
    pub fn from_slice(lattices: &[Subgroup]) -> Self {
        assert!(lattices.len() <= SLOTS, "at most {SLOTS} slots");
        let mut t = CoveringTuple::empty();
        t.slots[..lattices.len()].copy_from_slice(lattices);
        t
    }

    pub fn is_cover(&self) -> bool {
        is_cover(&self.slots)
    }

    /// Non-zero slots, in slot order.
    pub fn nonzero(&self) -> Vec<Subgroup> {
        self.slots
            .iter()
            .filter(|s| !s.is_zero())
            .copied()
            .collect()
    }

    pub fn len_nonzero(&self) -> usize {
        self.slots.iter().filter(|s| !s.is_zero()).count()
    }
}

impl fmt::Display for CoveringTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}

/// Search parameters. `parallel_depth` is the recursion depth down to which
/// branches are farmed out to the worker pool; results are concatenated in
/// branch order, so the output never depends on scheduling.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub threads: usize,
    pub parallel_depth: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: 1,
            parallel_depth: 4,
        }
    }
}

/// Recursive search from `start` with the first `index` points of `P` assumed covered.
pub fn find_lattices(start: &CoveringTuple, index: usize) -> Result<Vec<CoveringTuple>, EnumError> {
    let points = forcing_points();
    let mut slots = start.slots;
    let mut out = Vec::new();
    search(&points, &mut slots, index, &mut out)?;
    Ok(out)
}

/// Same traversal as [`find_lattices`], with the upper levels explored by a
/// pool of `config.threads` workers.
pub fn find_lattices_parallel(
    start: &CoveringTuple,
    index: usize,
    config: SearchConfig,
) -> Result<Vec<CoveringTuple>, EnumError> {
    if config.threads <= 1 {
        return find_lattices(start, index);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| EnumError::Pool(e.to_string()))?;
    let points = forcing_points();
    pool.install(|| search_par(&points, start.slots, index, config.parallel_depth))
}

/// Advances past covered points; returns the first uncovered point's position.
fn next_uncovered(
    points: &[Vec2Z],
    slots: &[Subgroup; SLOTS],
    mut index: usize,
) -> Result<usize, EnumError> {
    loop {
        let v = *points
            .get(index)
            .ok_or(EnumError::ForcingListExhausted(index))?;
        if slots.iter().any(|s| s.contains(v)) {
            index += 1;
        } else {
            return Ok(index);
        }
    }
}

/// Position of the first rank-0 slot, or the last slot if none is empty.
fn open_slot(slots: &[Subgroup; SLOTS]) -> usize {
    slots
        .iter()
        .position(|s| s.rank() == 0)
        .unwrap_or(SLOTS - 1)
}

const E1: Vec2Z = Vec2Z::new(1, 0);
const E2: Vec2Z = Vec2Z::new(0, 1);

fn search(
    points: &[Vec2Z],
    slots: &mut [Subgroup; SLOTS],
    index: usize,
    out: &mut Vec<CoveringTuple>,
) -> Result<(), EnumError> {
    let index = next_uncovered(points, slots, index)?;
    let v = points[index];
    for i in 0..=open_slot(slots) {
        let enlarged = slots[i].adjoin(v);
        if enlarged.contains(E1) && enlarged.contains(E2) {
            continue;
        }
        let old = slots[i];
        slots[i] = enlarged;
        if is_cover(slots) {
            out.push(CoveringTuple { slots: *slots });
        } else {
            search(points, slots, index + 1, out)?;
        }
        slots[i] = old;
    }
    Ok(())
}

fn search_par(
    points: &[Vec2Z],
    slots: [Subgroup; SLOTS],
    index: usize,
    depth: usize,
) -> Result<Vec<CoveringTuple>, EnumError> {
    if depth == 0 {
        let mut slots = slots;
        let mut out = Vec::new();
        search(points, &mut slots, index, &mut out)?;
        return Ok(out);
    }
    let index = next_uncovered(points, &slots, index)?;
    let v = points[index];
    let branches: Vec<usize> = (0..=open_slot(&slots))
        .filter(|&i| {
            let e = slots[i].adjoin(v);
            !(e.contains(E1) && e.contains(E2))
        })
        .collect();
    let parts: Vec<Vec<CoveringTuple>> = branches
        .par_iter()
        .map(|&i| {
            let mut child = slots;
            child[i] = child[i].adjoin(v);
            if is_cover(&child) {
                Ok(vec![CoveringTuple { slots: child }])
            } else {
                search_par(points, child, index + 1, depth - 1)
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Greedily clears slots (in slot order) whose removal keeps the cover, then
/// moves the remaining subgroups to the front.
pub fn prune(tuple: &CoveringTuple) -> CoveringTuple {
    let mut l = tuple.slots;
    for i in 0..SLOTS {
        let old = l[i];
        l[i] = Subgroup::zero();
        if !is_cover(&l) {
            l[i] = old;
        }
    }
    let zeros = l.iter().filter(|s| **s == Subgroup::zero()).count();
    for i in 0..SLOTS - zeros {
        if l[i] == Subgroup::zero() {
            if let Some(j) = (SLOTS - zeros..SLOTS).find(|&j| l[j] != Subgroup::zero()) {
                l[i] = l[j];
                l[j] = Subgroup::zero();
            }
        }
    }
    CoveringTuple { slots: l }
}

/// `a ≼ b`: some permutation `σ` has `a[i] ⊆ b[σ(i)]` for every slot.
///
/// Zero slots of `a` fit anywhere, so the search only places the non-zero
/// slots of `a`, injectively, into slots of `b`.
pub fn precedes(a: &CoveringTuple, b: &CoveringTuple) -> bool {
    let items = a.nonzero();
    let mut used = [false; SLOTS];
    place(&items, &b.slots, &mut used)
}

fn place(items: &[Subgroup], targets: &[Subgroup; SLOTS], used: &mut [bool; SLOTS]) -> bool {
    let Some((first, rest)) = items.split_first() else {
        return true;
    };
    for j in 0..SLOTS {
        if !used[j] && first.is_subgroup_of(&targets[j]) {
            used[j] = true;
            if place(rest, targets, used) {
                used[j] = false;
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Deterministic order in which nothing can be strictly `≼`-below an
/// earlier tuple: fewer slots first, then smaller density, then the sorted
/// list of slots.
pub fn canonical_order_key(t: &CoveringTuple) -> (usize, Rat, Vec<Subgroup>) {
    let mut lattices = t.nonzero();
    lattices.sort();
    let density = density_sum(&lattices).unwrap_or_else(|_| Rat::zero());
    (lattices.len(), density, lattices)
}

/// Keeps a tuple only when no previously kept tuple precedes it, after
/// sorting the input by [`canonical_order_key`].
pub fn minimal_filter(tuples: &[CoveringTuple]) -> Vec<CoveringTuple> {
    let mut sorted: Vec<(_, CoveringTuple)> = tuples
        .iter()
        .map(|t| (canonical_order_key(t), *t))
        .collect();
    sorted.sort_by(|x, y| x.0.cmp(&y.0));
    let mut kept: Vec<CoveringTuple> = Vec::new();
    for (_, t) in &sorted {
        if !kept.iter().any(|k| precedes(k, t)) {
            kept.push(*t);
        }
    }
    kept
}

/// Output of a full enumeration run.
#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Leaves of the search, before pruning.
    pub raw: Vec<CoveringTuple>,
    /// The `≼`-minimal coverings, compacted.
    pub minimal: Vec<CoveringTuple>,
}

pub fn enumerate_minimal_coverings(config: SearchConfig) -> Result<Enumeration, EnumError> {
    let raw = find_lattices_parallel(&CoveringTuple::empty(), 0, config)?;
    let pruned: Vec<CoveringTuple> = raw.iter().map(prune).collect();
    let minimal = minimal_filter(&pruned);
    Ok(Enumeration { raw, minimal })
}
