//! Bound quivers with monomial relations and the validated string-algebra view.

mod parse;
mod validate;
mod vertex;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use parse::{parse_algebra, Parsed};
pub use validate::{validate_string_quiver, Axiom, ValidationReport, Violation};
pub(crate) use validate::longest_nonzero_path;
pub use vertex::{
    classify_vertex, classify_vertex_with, pair_at_vertex, vertex_profile, StrictnessReading, VertexClass,
    VertexProfile, VertexType,
};

/// Vertices are numbered `1..=n` as in the description files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub(crate) fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Position of an arrow in declaration order. Canonical string orientation
/// is decided by this order, so it is part of the observable behaviour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ArrowId(pub u32);

impl ArrowId {
    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RelationId(pub u32);

impl RelationId {
    pub(crate) fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    vertex_count: u32,
    arrows: Vec<Arrow>,
    by_label: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new(vertex_count: u32) -> Self {
        Quiver {
            vertex_count,
            ..Default::default()
        }
    }

    pub fn add_arrow(&mut self, label: &str, source: VertexId, target: VertexId) -> Result<ArrowId> {
        for v in [source, target] {
            if !self.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        if self.by_label.contains_key(label) {
            return Err(Error::Invariant(format!("duplicate arrow label {label}")));
        }
        let id = ArrowId(self.arrows.len() as u32);
        self.arrows.push(Arrow {
            label: label.to_string(),
            source,
            target,
        });
        self.by_label.insert(label.to_string(), id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.vertex_count).map(VertexId)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        v.0 >= 1 && v.0 <= self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> Result<&Arrow> {
        self.arrows.get(a.index()).ok_or(Error::UnknownArrow(a.0))
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<ArrowId> {
        self.by_label.get(label).copied()
    }

    /// Arrows ending at `v`, in id order.
    pub fn in_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrow_ids().filter(|&a| self.arrows[a.index()].target == v).collect()
    }

    /// Arrows starting at `v`, in id order.
    pub fn out_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrow_ids().filter(|&a| self.arrows[a.index()].source == v).collect()
    }

    pub fn is_composable(&self, path: &[ArrowId]) -> bool {
        path.windows(2)
            .all(|w| self.arrows[w[0].index()].target == self.arrows[w[1].index()].source)
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count as usize;
        if n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source.index()), find(&mut parent, a.target.index()));
            parent[x] = y;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }
}

/// Minimal monomial generators, each a composable path of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RelationSet {
    relations: Vec<Vec<ArrowId>>,
}

impl RelationSet {
    pub fn new(relations: Vec<Vec<ArrowId>>) -> Self {
        RelationSet { relations }
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RelationId, &[ArrowId])> {
        self.relations
            .iter()
            .enumerate()
            .map(|(i, r)| (RelationId(i as u32), r.as_slice()))
    }

    pub fn get(&self, r: RelationId) -> Option<&[ArrowId]> {
        self.relations.get(r.index()).map(Vec::as_slice)
    }

    pub fn max_len(&self) -> usize {
        self.relations.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Drops duplicates and every generator containing another as a
    /// contiguous subpath. Survivors keep their relative order; the dropped
    /// paths are returned in their original order.
    pub fn minimalize(&mut self) -> Vec<Vec<ArrowId>> {
        let rels = std::mem::take(&mut self.relations);
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (i, r) in rels.iter().enumerate() {
            let redundant = rels.iter().enumerate().any(|(j, s)| {
                j != i && contains_subpath(r, s) && (s.len() < r.len() || j < i)
            });
            if redundant {
                dropped.push(r.clone());
            } else {
                kept.push(r.clone());
            }
        }
        self.relations = kept;
        dropped
    }
}

pub(crate) fn contains_subpath(hay: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    pub name: String,
    pub quiver: Quiver,
    pub relations: RelationSet,
    pub validated: bool,
}

impl BoundQuiver {
    pub fn new(name: &str, quiver: Quiver, relations: RelationSet) -> Self {
        BoundQuiver {
            name: name.to_string(),
            quiver,
            relations,
            validated: false,
        }
    }

    pub fn render_path(&self, path: &[ArrowId]) -> String {
        path.iter()
            .map(|&a| self.quiver.arrows[a.index()].label.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_relation(&self, r: RelationId) -> String {
        self.relations.get(r).map(|p| self.render_path(p)).unwrap_or_default()
    }

    /// True iff no generator occurs as a contiguous subpath.
    pub fn is_nonzero_path(&self, path: &[ArrowId]) -> bool {
        self.relations.iter().all(|(_, r)| !contains_subpath(path, r))
    }
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {}", self.name)?;
        writeln!(f, "vertices {}", self.quiver.vertex_count)?;
        for a in &self.quiver.arrows {
            writeln!(f, "arrow {} {} {}", a.label, a.source, a.target)?;
        }
        for (_, r) in self.relations.iter() {
            writeln!(f, "relation {}", self.render_path(r))?;
        }
        Ok(())
    }
}

/// How an arm stops growing leftwards: at a source, or because each arrow
/// into its first vertex completes a generator that is a prefix of the
/// extended path. One entry per in-arrow, in id order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArmBound {
    Source,
    Relations(Vec<(ArrowId, RelationId)>),
}

impl ArmBound {
    pub fn relations(&self) -> Vec<RelationId> {
        match self {
            ArmBound::Source => Vec::new(),
            ArmBound::Relations(v) => v.iter().map(|&(_, r)| r).collect(),
        }
    }
}

/// A bound quiver that passed validation, with adjacency and relation
/// indices precomputed.
#[derive(Clone, Debug)]
pub struct StringAlgebra {
    bq: BoundQuiver,
    ins: Vec<Vec<ArrowId>>,
    outs: Vec<Vec<ArrowId>>,
    ending_with: Vec<Vec<RelationId>>,
    starting_with: Vec<Vec<RelationId>>,
    path_cap: usize,
}

impl StringAlgebra {
    /// Minimalizes the relations of `bq`, validates it and, when the report
    /// is empty, wraps it.
    pub fn new(mut bq: BoundQuiver) -> std::result::Result<Self, ValidationReport> {
        bq.relations.minimalize();
        let report = validate_string_quiver(&mut bq);
        if !report.valid() {
            return Err(report);
        }
        Ok(Self::from_validated(bq))
    }

    fn from_validated(bq: BoundQuiver) -> Self {
        let q = &bq.quiver;
        let n = q.vertex_count() as usize;
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for a in q.arrow_ids() {
            let arrow = &q.arrows()[a.index()];
            outs[arrow.source.index()].push(a);
            ins[arrow.target.index()].push(a);
        }
        let m = q.arrows().len();
        let mut ending_with = vec![Vec::new(); m];
        let mut starting_with = vec![Vec::new(); m];
        for (id, r) in bq.relations.iter() {
            ending_with[r[r.len() - 1].index()].push(id);
            starting_with[r[0].index()].push(id);
        }
        // Every nonzero path is shorter than this; used only as a loop guard.
        let path_cap = validate::longest_nonzero_path(&bq).unwrap_or(0) + 1;
        StringAlgebra {
            bq,
            ins,
            outs,
            ending_with,
            starting_with,
            path_cap,
        }
    }

    pub fn bound_quiver(&self) -> &BoundQuiver {
        &self.bq
    }

    pub fn name(&self) -> &str {
        &self.bq.name
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        self.bq.quiver.vertices()
    }

    pub fn vertex_count(&self) -> u32 {
        self.bq.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.bq.quiver.arrows().len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.bq.quiver.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_arrow(&self, a: ArrowId) -> Result<()> {
        self.bq.quiver.arrow(a).map(|_| ())
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.bq.quiver.arrows()[a.index()].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.bq.quiver.arrows()[a.index()].target
    }

    pub fn label(&self, a: ArrowId) -> &str {
        &self.bq.quiver.arrows()[a.index()].label
    }

    pub fn in_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.ins[v.index()]
    }

    pub fn out_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.outs[v.index()]
    }

    pub fn relation(&self, r: RelationId) -> &[ArrowId] {
        self.bq.relations.get(r).expect("relation id from this algebra")
    }

    pub fn relations(&self) -> impl Iterator<Item = (RelationId, &[ArrowId])> {
        self.bq.relations.iter()
    }

    pub fn max_relation_len(&self) -> usize {
        self.bq.relations.max_len()
    }

    /// Strict upper bound on the length of nonzero paths.
    pub fn path_cap(&self) -> usize {
        self.path_cap
    }

    pub fn render_path(&self, path: &[ArrowId]) -> String {
        self.bq.render_path(path)
    }

    pub fn render_relation(&self, r: RelationId) -> String {
        self.bq.render_relation(r)
    }

    /// The generator that is a suffix of `path`, if any. In a minimal set
    /// at most one generator can be a suffix.
    pub fn relation_suffix(&self, path: &[ArrowId]) -> Option<RelationId> {
        let last = *path.last()?;
        self.ending_with[last.index()]
            .iter()
            .copied()
            .find(|&r| path.ends_with(self.relation(r)))
    }

    /// The generator that is a prefix of `path`, if any.
    pub fn relation_prefix(&self, path: &[ArrowId]) -> Option<RelationId> {
        let first = *path.first()?;
        self.starting_with[first.index()]
            .iter()
            .copied()
            .find(|&r| path.starts_with(self.relation(r)))
    }

    pub fn is_nonzero(&self, path: &[ArrowId]) -> bool {
        self.bq.quiver.is_composable(path)
            && (1..=path.len()).all(|end| self.relation_suffix(&path[..end]).is_none())
    }

    /// The unique arrow `b` with `ab` composable and not a generator.
    pub fn successor(&self, a: ArrowId) -> Option<ArrowId> {
        self.out_arrows(self.target(a))
            .iter()
            .copied()
            .find(|&b| self.relation_suffix(&[a, b]).is_none())
    }

    /// The unique arrow `c` with `ca` composable and not a generator.
    pub fn predecessor(&self, a: ArrowId) -> Option<ArrowId> {
        self.in_arrows(self.source(a))
            .iter()
            .copied()
            .find(|&c| self.relation_suffix(&[c, a]).is_none())
    }

    /// Longest nonzero path starting with `first`.
    pub fn right_arm(&self, first: ArrowId) -> Vec<ArrowId> {
        let mut path = vec![first];
        while path.len() < self.path_cap {
            let Some(next) = self.successor(*path.last().unwrap()) else {
                break;
            };
            path.push(next);
            if self.relation_suffix(&path).is_some() {
                path.pop();
                break;
            }
        }
        path
    }

    /// Longest nonzero path ending with the nonzero path `seed`.
    pub fn left_arm(&self, seed: &[ArrowId]) -> Vec<ArrowId> {
        debug_assert!(!seed.is_empty() && self.is_nonzero(seed));
        let mut rev: Vec<ArrowId> = seed.iter().rev().copied().collect();
        while rev.len() < self.path_cap {
            let Some(prev) = self.predecessor(*rev.last().unwrap()) else {
                break;
            };
            rev.push(prev);
            let path: Vec<ArrowId> = rev.iter().rev().copied().collect();
            if self.relation_prefix(&path).is_some() {
                rev.pop();
                break;
            }
        }
        rev.reverse();
        rev
    }

    /// Why the left-maximal `arm` cannot grow: per in-arrow at its first
    /// vertex, the generator that becomes a prefix.
    pub fn arm_bound(&self, arm: &[ArrowId]) -> Result<ArmBound> {
        let start = self.source(arm[0]);
        let ins = self.in_arrows(start);
        if ins.is_empty() {
            return Ok(ArmBound::Source);
        }
        let mut out = Vec::with_capacity(ins.len());
        for &g in ins {
            let mut ext = Vec::with_capacity(arm.len() + 1);
            ext.push(g);
            ext.extend_from_slice(arm);
            let r = self.relation_prefix(&ext).ok_or_else(|| {
                Error::Invariant(format!(
                    "arm {} extends by {}",
                    self.render_path(arm),
                    self.label(g)
                ))
            })?;
            out.push((g, r));
        }
        Ok(ArmBound::Relations(out))
    }
}

impl std::ops::Deref for StringAlgebra {
    type Target = BoundQuiver;
    fn deref(&self) -> &BoundQuiver {
        &self.bq
    }
}
