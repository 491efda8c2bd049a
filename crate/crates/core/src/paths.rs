//! Finite windows on left maximal paths and the relations read off them.
//!
//! Vertex positions on a window with arrows `x_0 .. x_{n-1}` run `0..=n`;
//! position `i` is the source of `x_i` and position `n` the target of the
//! last arrow. Offsets are positions minus the window origin, so windows
//! grown from the same seed share one coordinate system.

use serde::Serialize;

use crate::algebra::{ArrowId, RelationId, StringAlgebra, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWindow {
    pub arrows: Vec<ArrowId>,
    /// Vertex at position 0.
    pub leftmost: VertexId,
    /// Position of the seed's first vertex.
    pub origin: usize,
    /// Whether some arrow ends at the leftmost vertex.
    pub extendable_left: bool,
}

impl PathWindow {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn vertex_at(&self, alg: &StringAlgebra, pos: usize) -> VertexId {
        if pos == 0 {
            self.leftmost
        } else if pos < self.arrows.len() {
            alg.source(self.arrows[pos])
        } else {
            alg.target(self.arrows[self.arrows.len() - 1])
        }
    }

    pub fn offset(&self, pos: usize) -> isize {
        pos as isize - self.origin as isize
    }

    pub fn position(&self, offset: isize) -> Option<usize> {
        let p = self.origin as isize + offset;
        (0..=self.arrows.len() as isize).contains(&p).then_some(p as usize)
    }

    pub fn leftmost_offset(&self) -> isize {
        -(self.origin as isize)
    }
}

/// An exact match of a generator on a window, from vertex position `start`
/// to vertex position `end = start + len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelationOccurrence {
    pub relation: RelationId,
    pub start: usize,
    pub end: usize,
}

impl RelationOccurrence {
    /// The same occurrence in the origin-relative coordinates of `w`.
    pub fn offsets(&self, w: &PathWindow) -> (isize, isize) {
        (w.offset(self.start), w.offset(self.end))
    }
}

/// Def-style left distance from vertex position `t` to an occurrence that
/// starts at or after it.
pub fn left_distance(t: usize, occ: &RelationOccurrence) -> Result<usize> {
    occ.start
        .checked_sub(t)
        .ok_or_else(|| Error::DistancePrecondition(format!("vertex {t} right of start {}", occ.start)))
}

/// Right distance from an occurrence to a vertex position at or after its end.
pub fn right_distance(occ: &RelationOccurrence, t: usize) -> Result<usize> {
    t.checked_sub(occ.end)
        .ok_or_else(|| Error::DistancePrecondition(format!("vertex {t} left of end {}", occ.end)))
}

/// Every generator occurring on the window, sorted by end then start.
pub fn relations_on(alg: &StringAlgebra, w: &PathWindow) -> Vec<RelationOccurrence> {
    let mut out = Vec::new();
    for end in 1..=w.arrows.len() {
        for (id, r) in alg.relations() {
            if r.len() <= end && &w.arrows[end - r.len()..end] == r {
                out.push(RelationOccurrence {
                    relation: id,
                    start: end - r.len(),
                    end,
                });
            }
        }
    }
    out.sort_by_key(|o| (o.end, o.start));
    out
}

/// The occurrence ending closest to `target` from the left (largest end at
/// most `target`). Two occurrences with equal end would make one a suffix of
/// the other, which a minimal generating set rules out; seeing it is an
/// invariant failure.
pub fn minimal_relation_up(
    alg: &StringAlgebra,
    w: &PathWindow,
    target: usize,
) -> Result<Option<RelationOccurrence>> {
    if target > w.arrows.len() {
        return Err(Error::DistancePrecondition(format!(
            "target {target} beyond window of length {}",
            w.arrows.len()
        )));
    }
    let mut best: Option<RelationOccurrence> = None;
    for occ in relations_on(alg, w).into_iter().filter(|o| o.end <= target) {
        match best {
            Some(b) if b.end == occ.end => {
                return Err(Error::Invariant(format!(
                    "relations {} and {} end at the same position",
                    alg.render_relation(b.relation),
                    alg.render_relation(occ.relation)
                )))
            }
            Some(b) if b.end > occ.end => {}
            _ => best = Some(occ),
        }
    }
    Ok(best)
}

/// Grows all left extensions of a seed path one arrow at a time. Each branch
/// is a reversed prefix; branching is at most two per step.
#[derive(Clone, Debug)]
pub struct LeftPathEnumerator<'a> {
    alg: &'a StringAlgebra,
    start: VertexId,
    seed: Vec<ArrowId>,
    branches: Vec<Vec<ArrowId>>,
}

impl<'a> LeftPathEnumerator<'a> {
    /// `seed` starts at `start`; an empty seed is the trivial path there.
    pub fn new(alg: &'a StringAlgebra, start: VertexId, seed: &[ArrowId]) -> Self {
        debug_assert!(seed.first().is_none_or(|&a| alg.source(a) == start));
        LeftPathEnumerator {
            alg,
            start,
            seed: seed.to_vec(),
            branches: vec![Vec::new()],
        }
    }

    fn leftmost(&self, prefix: &[ArrowId]) -> VertexId {
        prefix.last().map_or(self.start, |&a| self.alg.source(a))
    }

    /// Extends every extendable branch by one arrow.
    pub fn grow(&mut self) {
        let mut next = Vec::with_capacity(self.branches.len());
        for b in std::mem::take(&mut self.branches) {
            let ins = self.alg.in_arrows(self.leftmost(&b));
            if ins.is_empty() {
                next.push(b);
                continue;
            }
            for &a in ins {
                let mut e = b.clone();
                e.push(a);
                next.push(e);
            }
        }
        self.branches = next;
    }

    /// Extends only branch `i`; returns the indices now holding its children.
    fn grow_branch(&mut self, i: usize) -> Vec<usize> {
        let ins = self.alg.in_arrows(self.leftmost(&self.branches[i])).to_vec();
        if ins.is_empty() {
            return vec![i];
        }
        let base = self.branches[i].clone();
        let mut idx = vec![i];
        self.branches[i].push(ins[0]);
        for &a in &ins[1..] {
            let mut e = base.clone();
            e.push(a);
            self.branches.push(e);
            idx.push(self.branches.len() - 1);
        }
        idx
    }

    fn window(&self, prefix: &[ArrowId]) -> PathWindow {
        let mut arrows: Vec<ArrowId> = prefix.iter().rev().copied().collect();
        arrows.extend_from_slice(&self.seed);
        PathWindow {
            leftmost: self.leftmost(prefix),
            origin: prefix.len(),
            extendable_left: !self.alg.in_arrows(self.leftmost(prefix)).is_empty(),
            arrows,
        }
    }

    pub fn windows(&self) -> Vec<PathWindow> {
        self.branches.iter().map(|b| self.window(b)).collect()
    }

    /// Per branch, the occurrence ending closest to `target` (an offset
    /// from the origin) from the left. Each branch is grown until it hits a
    /// source or its leftmost vertex lies a full relation length left of the
    /// candidate's end, after which no later occurrence can end closer.
    pub fn minimal_relation_up(
        &mut self,
        target: isize,
    ) -> Result<Vec<(PathWindow, Option<RelationOccurrence>)>> {
        let maxlen = self.alg.max_relation_len() as isize;
        let cap = self.alg.path_cap() + 2 * self.alg.max_relation_len() + target.unsigned_abs() + 2;
        let mut done = Vec::new();
        let mut pending: Vec<usize> = (0..self.branches.len()).collect();
        let mut steps = 0;
        while let Some(i) = pending.pop() {
            let w = self.window(&self.branches[i]);
            if w.position(target).is_none() && target > w.offset(w.len()) {
                return Err(Error::DistancePrecondition(format!("target offset {target} right of seed")));
            }
            let best = match w.position(target) {
                Some(t) => minimal_relation_up(self.alg, &w, t)?,
                None => None,
            };
            let settled = match best {
                _ if !w.extendable_left => true,
                Some(o) => w.leftmost_offset() <= w.offset(o.end) + 1 - maxlen,
                None => false,
            };
            if settled {
                done.push((i, w, best));
                continue;
            }
            steps += 1;
            if steps > cap * (self.branches.len() + 1) {
                return Err(Error::Invariant("left path enumeration did not settle".into()));
            }
            pending.extend(self.grow_branch(i));
        }
        done.sort_by_key(|(i, _, _)| *i);
        Ok(done.into_iter().map(|(_, w, o)| (w, o)).collect())
    }
}

/// All windows extending `seed` leftward by exactly `min(depth, available)`
/// arrows, one per branch.
pub fn left_window(
    alg: &StringAlgebra,
    start: VertexId,
    seed: &[ArrowId],
    depth: usize,
) -> Vec<PathWindow> {
    let mut e = LeftPathEnumerator::new(alg, start, seed);
    for _ in 0..depth {
        e.grow();
    }
    e.windows()
}

/// Strict overlap: `lower` starts strictly inside `upper` and `upper` ends
/// strictly inside `lower`. Both occurrences must lie on one window.
pub fn left_intersects(upper: &RelationOccurrence, lower: &RelationOccurrence) -> bool {
    spans_left_intersect((upper.start as isize, upper.end as isize), (lower.start as isize, lower.end as isize))
}

/// [`left_intersects`] on `(start, end)` spans in any shared coordinates.
pub fn spans_left_intersect(upper: (isize, isize), lower: (isize, isize)) -> bool {
    upper.0 < lower.0 && lower.0 < upper.1 && upper.1 < lower.1
}
