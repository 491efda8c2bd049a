//! Effective left-intersecting sequences and injective dimensions of
//! projectives.
//!
//! The cosyzygies of `P(v)` decompose into string modules with simple
//! socle, and each of those has at most two cosyzygy summands, one per arrow
//! into its socle vertex. The distinct summands form a finite graph; a
//! chain of relations is read off a path in it, one bounding relation per
//! step. The longest path gives the chain length, and a reachable cycle an
//! infinite chain.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{ArmBound, ArrowId, RelationId, StringAlgebra, VertexId};
use crate::cosyzygy::{envelope_steps, first_cosyzygy_projective, EnvelopeData, SocleString};
use crate::error::{Error, Result};
use crate::paths::RelationOccurrence;
use crate::string::{is_injective_module, projective_arms, projective_string};

pub use crate::paths::left_intersects;

/// Cap on witnesses reported per projective; lengths are unaffected.
pub const WITNESS_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InjDim {
    Finite(usize),
    Infinite,
}

impl InjDim {
    pub fn is_finite(self) -> bool {
        matches!(self, InjDim::Finite(_))
    }
}

impl std::fmt::Display for InjDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InjDim::Finite(n) => write!(f, "{n}"),
            InjDim::Infinite => write!(f, "inf"),
        }
    }
}

/// Two occurrences on one window, `upper` left-intersecting `lower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntersectingPair {
    pub upper: RelationOccurrence,
    pub lower: RelationOccurrence,
}

impl IntersectingPair {
    pub fn new(upper: RelationOccurrence, lower: RelationOccurrence) -> Option<Self> {
        left_intersects(&upper, &lower).then_some(IntersectingPair { upper, lower })
    }

    /// `(start(lower) - start(upper), end(lower) - end(upper))`.
    pub fn offsets(&self) -> (usize, usize) {
        (self.lower.start - self.upper.start, self.lower.end - self.upper.end)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ElisConfig {
    pub state_budget: usize,
}

impl Default for ElisConfig {
    fn default() -> Self {
        ElisConfig {
            state_budget: 1_000_000,
        }
    }
}

/// A non-injective cosyzygy summand reached from `P(v)` after `depth` steps,
/// with the relations bounding those steps in chain order `r_1, r_2, ...`.
/// Steps bounded by a source carry no relation. `through` pins the next
/// step of the middle summand to one in-arrow, since the seed relation of
/// the chain depends on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElisState {
    pub summand: SocleString,
    pub chain: Vec<RelationId>,
    pub depth: usize,
    pub through: Option<ArrowId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElisOutcome {
    /// Chains of maximal length, each in order `r_n, ..., r_1`.
    Finite {
        length: usize,
        witnesses: Vec<Vec<RelationId>>,
    },
    /// Chain order: relations up to the cycle, then one turn of the cycle.
    Infinite {
        prefix: Vec<RelationId>,
        cycle: Vec<RelationId>,
        cycle_states: Vec<SocleString>,
    },
}

impl ElisOutcome {
    pub fn length(&self) -> Option<usize> {
        match self {
            ElisOutcome::Finite { length, .. } => Some(*length),
            ElisOutcome::Infinite { .. } => None,
        }
    }
}

/// How a step's relation is determined.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Link {
    Bound(Vec<RelationId>),
    /// Step into the middle summand of a two-armed projective: the relation
    /// comes from the arm matched with the in-arrow of the following step.
    Middle,
}

#[derive(Clone, Debug)]
struct Edge {
    via: ArrowId,
    relations: Vec<RelationId>,
    target: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Finite(usize),
    Infinite,
}

struct Graph<'a> {
    alg: &'a StringAlgebra,
    budget: usize,
    index: HashMap<SocleString, usize>,
    modules: Vec<SocleString>,
    edges: Vec<Option<Vec<Edge>>>,
    values: Vec<Option<Value>>,
    /// First cycle found: node sequence and the edge indices leaving each.
    cycle: Option<(Vec<usize>, Vec<usize>)>,
    /// Path of (node, edge index) from the DFS start to the cycle entry.
    cycle_prefix: Vec<(usize, usize)>,
    cycle_root_edge: Option<usize>,
}

fn bound_relations(b: &ArmBound) -> Vec<RelationId> {
    b.relations()
}

impl<'a> Graph<'a> {
    fn new(alg: &'a StringAlgebra, budget: usize) -> Self {
        Graph {
            alg,
            budget,
            index: HashMap::new(),
            modules: Vec::new(),
            edges: Vec::new(),
            values: Vec::new(),
            cycle: None,
            cycle_prefix: Vec::new(),
            cycle_root_edge: None,
        }
    }

    fn intern(&mut self, m: SocleString) -> Result<usize> {
        if let Some(&i) = self.index.get(&m) {
            return Ok(i);
        }
        if self.modules.len() >= self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        let i = self.modules.len();
        self.index.insert(m.clone(), i);
        self.modules.push(m);
        self.edges.push(None);
        self.values.push(None);
        Ok(i)
    }

    fn expand(&mut self, i: usize) -> Result<()> {
        if self.edges[i].is_some() {
            return Ok(());
        }
        let steps = envelope_steps(self.alg, &self.modules[i])?;
        let mut out = Vec::new();
        for s in steps {
            if let Some(m) = s.summand {
                let target = self.intern(m)?;
                out.push(Edge {
                    via: s.via,
                    relations: bound_relations(&s.bound),
                    target,
                });
            }
        }
        self.edges[i] = Some(out);
        Ok(())
    }

    fn out(&self, i: usize) -> &[Edge] {
        self.edges[i].as_deref().unwrap_or(&[])
    }

    /// Longest path length from `start`, or `Infinite` if a cycle is
    /// reachable. Iterative DFS; nodes on the stack are grey.
    fn evaluate(&mut self, start: usize, root_edge: usize) -> Result<Value> {
        if let Some(v) = self.values[start] {
            return Ok(v);
        }
        let mut on_stack: HashMap<usize, usize> = HashMap::new();
        // (node, next edge index, best child value so far)
        let mut stack: Vec<(usize, usize, Option<Value>)> = vec![(start, 0, None)];
        on_stack.insert(start, 0);
        while let Some(&(u, k, _)) = stack.last() {
            self.expand(u)?;
            let out_len = self.out(u).len();
            if k < out_len {
                stack.last_mut().unwrap().1 += 1;
                let t = self.out(u)[k].target;
                let child = if let Some(&pos) = on_stack.get(&t) {
                    if self.cycle.is_none() {
                        let nodes: Vec<usize> = stack[pos..].iter().map(|f| f.0).collect();
                        let edges: Vec<usize> = stack[pos..].iter().map(|f| f.1 - 1).collect();
                        self.cycle = Some((nodes, edges));
                        self.cycle_prefix = stack[..pos].iter().map(|f| (f.0, f.1 - 1)).collect();
                        self.cycle_root_edge = Some(root_edge);
                    }
                    Some(Value::Infinite)
                } else {
                    self.values[t]
                };
                match child {
                    Some(v) => {
                        let top = stack.last_mut().unwrap();
                        top.2 = Some(max_value(top.2, v));
                    }
                    None => {
                        on_stack.insert(t, stack.len());
                        stack.push((t, 0, None));
                    }
                }
            } else {
                let (u, _, best) = stack.pop().unwrap();
                on_stack.remove(&u);
                let v = match best {
                    None => Value::Finite(0),
                    Some(Value::Finite(n)) => Value::Finite(n + 1),
                    Some(Value::Infinite) => Value::Infinite,
                };
                self.values[u] = Some(v);
                if let Some(parent) = stack.last_mut() {
                    parent.2 = Some(max_value(parent.2, v));
                }
            }
        }
        Ok(self.values[start].unwrap())
    }
}

fn max_value(a: Option<Value>, b: Value) -> Value {
    match (a, b) {
        (Some(Value::Infinite), _) | (_, Value::Infinite) => Value::Infinite,
        (Some(Value::Finite(x)), Value::Finite(y)) => Value::Finite(x.max(y)),
        (None, v) => v,
    }
}

/// The first layer of cosyzygy summands of `P(v)`.
struct Root {
    envelope: Option<EnvelopeData>,
    children: Vec<(usize, Link)>,
}

/// Everything computed for one projective.
pub struct ProjectiveAnalysis<'a> {
    graph: Graph<'a>,
    root: Option<Root>,
    pub vertex: VertexId,
    pub inj_dim: InjDim,
}

fn build<'a>(alg: &'a StringAlgebra, v: VertexId, cfg: &ElisConfig) -> Result<ProjectiveAnalysis<'a>> {
    alg.check_vertex(v)?;
    let mut graph = Graph::new(alg, cfg.state_budget);
    let p = projective_string(alg, v)?;
    if is_injective_module(alg, p.word())? {
        return Ok(ProjectiveAnalysis {
            graph,
            root: None,
            vertex: v,
            inj_dim: InjDim::Finite(0),
        });
    }
    let arms = projective_arms(alg, v);
    let root = if arms.len() == 2 {
        let env = first_cosyzygy_projective(alg, v)?;
        let mut children = Vec::new();
        for o in env.overhangs.iter().filter(|o| o.side == 0) {
            children.push((graph.intern(o.summand.clone())?, Link::Bound(bound_relations(&o.bound))));
        }
        children.push((graph.intern(env.d.clone())?, Link::Middle));
        for o in env.overhangs.iter().filter(|o| o.side == 1) {
            children.push((graph.intern(o.summand.clone())?, Link::Bound(bound_relations(&o.bound))));
        }
        Root {
            envelope: Some(env),
            children,
        }
    } else {
        let m = match arms.first() {
            Some(a) => SocleString::path(alg, a),
            None => SocleString::simple(v),
        };
        let i = graph.intern(m)?;
        graph.expand(i)?;
        let children = graph
            .out(i)
            .iter()
            .map(|e| (e.target, Link::Bound(e.relations.clone())))
            .collect();
        Root {
            envelope: None,
            children,
        }
    };
    let mut best: Option<Value> = None;
    for (k, &(c, _)) in root.children.iter().enumerate() {
        let val = graph.evaluate(c, k)?;
        best = Some(max_value(best, val));
    }
    let inj_dim = match best {
        None => {
            return Err(Error::Invariant(format!(
                "non-injective P({v}) has a zero first cosyzygy"
            )))
        }
        Some(Value::Finite(n)) => InjDim::Finite(n + 1),
        Some(Value::Infinite) => InjDim::Infinite,
    };
    Ok(ProjectiveAnalysis {
        graph,
        root: Some(root),
        vertex: v,
        inj_dim,
    })
}

impl<'a> ProjectiveAnalysis<'a> {
    pub fn new(alg: &'a StringAlgebra, v: VertexId, cfg: &ElisConfig) -> Result<Self> {
        build(alg, v, cfg)
    }

    pub fn envelope(&self) -> Option<&EnvelopeData> {
        self.root.as_ref().and_then(|r| r.envelope.as_ref())
    }

    /// Number of distinct cosyzygy summands explored.
    pub fn states_explored(&self) -> usize {
        self.graph.modules.len()
    }

    fn value(&self, i: usize) -> Value {
        self.graph.values[i].expect("evaluated")
    }

    /// Candidate relations of the root step into `child` when it is
    /// followed by a step through `next_via`.
    fn root_link(&self, link: &Link, next_via: Option<ArrowId>) -> Vec<RelationId> {
        match link {
            Link::Bound(r) => r.clone(),
            Link::Middle => {
                let (Some(env), Some(via)) = (self.envelope(), next_via) else {
                    return Vec::new();
                };
                let mut out = BTreeSet::new();
                for side in env.sides_through(via) {
                    out.extend(env.first_relations(self.graph.alg, side, via));
                }
                out.into_iter().collect()
            }
        }
    }

    /// Maximal-value paths from node `i`, as lists of (edge via, candidate
    /// relations), capped at `WITNESS_CAP`.
    fn longest_paths(&self, i: usize, out: &mut Vec<Vec<(ArrowId, Vec<RelationId>)>>, acc: &mut Vec<(ArrowId, Vec<RelationId>)>) {
        if out.len() >= WITNESS_CAP {
            return;
        }
        let Value::Finite(k) = self.value(i) else { return };
        if k == 0 {
            out.push(acc.clone());
            return;
        }
        for e in self.graph.out(i) {
            if self.value(e.target) == Value::Finite(k - 1) {
                acc.push((e.via, e.relations.clone()));
                self.longest_paths(e.target, out, acc);
                acc.pop();
            }
        }
    }

    pub fn outcome(&self) -> ElisOutcome {
        let Some(root) = &self.root else {
            return ElisOutcome::Finite {
                length: 0,
                witnesses: Vec::new(),
            };
        };
        match self.inj_dim {
            InjDim::Finite(d) => {
                let length = d - 1;
                let mut witnesses = BTreeSet::new();
                for (c, link) in &root.children {
                    if self.value(*c) != Value::Finite(d - 1) {
                        continue;
                    }
                    let mut paths = Vec::new();
                    self.longest_paths(*c, &mut paths, &mut Vec::new());
                    for path in paths {
                        // Steps 1..=length; the last step lands on an injective.
                        let mut links = vec![self.root_link(link, path.first().map(|p| p.0))];
                        links.extend(path.iter().map(|p| p.1.clone()));
                        links.truncate(length);
                        for chain in expand_links(&links) {
                            witnesses.insert(chain.into_iter().rev().collect::<Vec<_>>());
                        }
                    }
                }
                let mut witnesses: Vec<Vec<RelationId>> = witnesses.into_iter().collect();
                witnesses.truncate(WITNESS_CAP);
                if length == 0 {
                    witnesses.clear();
                }
                ElisOutcome::Finite { length, witnesses }
            }
            InjDim::Infinite => self.infinite_outcome(root),
        }
    }

    fn infinite_outcome(&self, root: &Root) -> ElisOutcome {
        let g = &self.graph;
        let (nodes, edges) = g.cycle.clone().expect("infinite value implies a recorded cycle");
        let root_edge = g.cycle_root_edge.unwrap();
        let (_, link) = &root.children[root_edge];
        let mut steps: Vec<(ArrowId, Vec<RelationId>)> = g
            .cycle_prefix
            .iter()
            .map(|&(n, e)| {
                let edge = &g.out(n)[e];
                (edge.via, edge.relations.clone())
            })
            .collect();
        let cycle_steps: Vec<(ArrowId, Vec<RelationId>)> = nodes
            .iter()
            .zip(&edges)
            .map(|(&n, &e)| {
                let edge = &g.out(n)[e];
                (edge.via, edge.relations.clone())
            })
            .collect();
        let next_via = steps.first().or(cycle_steps.first()).map(|s| s.0);
        let first = self.root_link(link, next_via);
        let mut prefix: Vec<RelationId> = first.first().copied().into_iter().collect();
        prefix.extend(steps.drain(..).filter_map(|s| s.1.first().copied()));
        let cycle = cycle_steps.iter().filter_map(|s| s.1.first().copied()).collect();
        ElisOutcome::Infinite {
            prefix,
            cycle,
            cycle_states: nodes.iter().map(|&n| g.modules[n].clone()).collect(),
        }
    }

    /// Summands along one longest path (finite case) or up to and around
    /// the cycle (infinite case), with the relation bounding each step.
    pub fn trace(&self) -> Vec<TraceStep> {
        let Some(root) = &self.root else { return Vec::new() };
        let g = &self.graph;
        let alg = g.alg;
        let mut out = Vec::new();
        let mut push = |level: usize, node: usize, via: Option<ArrowId>, rels: &[RelationId]| {
            out.push(TraceStep {
                level,
                summand: g.modules[node].render(alg),
                via: via.map(|a| alg.label(a).to_string()),
                relation: rels.first().map(|&r| alg.render_relation(r)),
            });
        };
        match self.inj_dim {
            InjDim::Finite(d) => {
                let Some((c, link)) = root
                    .children
                    .iter()
                    .find(|(c, _)| self.value(*c) == Value::Finite(d - 1))
                else {
                    return out;
                };
                let mut node = *c;
                let first_via = g
                    .out(node)
                    .iter()
                    .find(|e| Some(self.value(e.target)) == (d >= 2).then(|| Value::Finite(d - 2)))
                    .map(|e| e.via);
                push(1, node, None, &self.root_link(link, first_via));
                for level in 2..=d {
                    let Some(e) = g
                        .out(node)
                        .iter()
                        .find(|e| self.value(e.target) == Value::Finite(d - level))
                    else {
                        break;
                    };
                    push(level, e.target, Some(e.via), &e.relations);
                    node = e.target;
                }
            }
            InjDim::Infinite => {
                let (nodes, edges) = g.cycle.clone().unwrap();
                let (c, link) = &root.children[g.cycle_root_edge.unwrap()];
                let next_via = g
                    .cycle_prefix
                    .first()
                    .map(|&(n, e)| g.out(n)[e].via)
                    .or_else(|| nodes.first().map(|&n| g.out(n)[edges[0]].via));
                push(1, *c, None, &self.root_link(link, next_via));
                let mut level = 1;
                let walk = g.cycle_prefix.iter().copied().chain(nodes.iter().copied().zip(edges.iter().copied()));
                for (n, e) in walk {
                    level += 1;
                    let edge = &g.out(n)[e];
                    push(level, edge.target, Some(edge.via), &edge.relations);
                }
            }
        }
        out
    }
}

/// One line of a trace: the summand of the `level`-th cosyzygy reached
/// through `via`, and the relation bounding the envelope arm that cut it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub level: usize,
    pub summand: String,
    pub via: Option<String>,
    pub relation: Option<String>,
}

/// Cartesian product of per-step candidates; relation-free steps drop out.
fn expand_links(links: &[Vec<RelationId>]) -> Vec<Vec<RelationId>> {
    let mut acc: Vec<Vec<RelationId>> = vec![Vec::new()];
    for cands in links {
        if cands.is_empty() {
            continue;
        }
        let mut next = Vec::new();
        'outer: for prefix in &acc {
            for &r in cands {
                if next.len() >= WITNESS_CAP {
                    break 'outer;
                }
                let mut p = prefix.clone();
                p.push(r);
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

pub fn elis_outcome(alg: &StringAlgebra, v: VertexId) -> Result<ElisOutcome> {
    elis_outcome_with(alg, v, &ElisConfig::default())
}

pub fn elis_outcome_with(alg: &StringAlgebra, v: VertexId, cfg: &ElisConfig) -> Result<ElisOutcome> {
    Ok(build(alg, v, cfg)?.outcome())
}

/// `0` for an injective projective, otherwise the chain length plus one.
pub fn inj_dim_projective(alg: &StringAlgebra, v: VertexId) -> Result<InjDim> {
    inj_dim_projective_with(alg, v, &ElisConfig::default())
}

pub fn inj_dim_projective_with(alg: &StringAlgebra, v: VertexId, cfg: &ElisConfig) -> Result<InjDim> {
    Ok(build(alg, v, cfg)?.inj_dim)
}

/// Supremum over all projectives; `Infinite` as soon as one is.
pub fn inj_dim_algebra(alg: &StringAlgebra) -> Result<InjDim> {
    inj_dim_algebra_with(alg, &ElisConfig::default())
}

pub fn inj_dim_algebra_with(alg: &StringAlgebra, cfg: &ElisConfig) -> Result<InjDim> {
    let mut best = InjDim::Finite(0);
    for v in alg.vertices() {
        best = best.max(inj_dim_projective_with(alg, v, cfg)?);
        if best == InjDim::Infinite {
            break;
        }
    }
    Ok(best)
}

pub fn is_self_injective(alg: &StringAlgebra) -> Result<bool> {
    for v in alg.vertices() {
        if !is_injective_module(alg, projective_string(alg, v)?.word())? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_gorenstein(alg: &StringAlgebra) -> Result<bool> {
    Ok(inj_dim_algebra(alg)?.is_finite())
}

fn non_injective(alg: &StringAlgebra, m: &SocleString) -> Result<bool> {
    Ok(envelope_steps(alg, m)?.iter().any(|s| s.summand.is_some()))
}

/// States after the first step from `P(v)`: the non-injective first
/// cosyzygy summands, each with its opening relation.
pub fn seed_states(alg: &StringAlgebra, v: VertexId) -> Result<Vec<ElisState>> {
    alg.check_vertex(v)?;
    if is_injective_module(alg, projective_string(alg, v)?.word())? {
        return Err(Error::InjectiveProjective(v));
    }
    let arms = projective_arms(alg, v);
    let mut out = Vec::new();
    let mut emit = |summand: SocleString, rels: Vec<RelationId>, through: Option<ArrowId>| {
        if rels.is_empty() {
            out.push(ElisState { summand, chain: Vec::new(), depth: 1, through });
            return;
        }
        for r in rels {
            out.push(ElisState {
                summand: summand.clone(),
                chain: vec![r],
                depth: 1,
                through,
            });
        }
    };
    if arms.len() == 2 {
        let env = first_cosyzygy_projective(alg, v)?;
        for o in &env.overhangs {
            if non_injective(alg, &o.summand)? {
                emit(o.summand.clone(), bound_relations(&o.bound), None);
            }
        }
        for s in envelope_steps(alg, &env.d)? {
            if s.summand.is_none() {
                continue;
            }
            let mut rels = BTreeSet::new();
            for side in env.sides_through(s.via) {
                rels.extend(env.first_relations(alg, side, s.via));
            }
            emit(env.d.clone(), rels.into_iter().collect(), Some(s.via));
        }
    } else {
        let m = match arms.first() {
            Some(a) => SocleString::path(alg, a),
            None => SocleString::simple(v),
        };
        for s in envelope_steps(alg, &m)? {
            if let Some(y) = s.summand {
                if non_injective(alg, &y)? {
                    emit(y, bound_relations(&s.bound), None);
                }
            }
        }
    }
    Ok(out)
}

/// Successor states: one per non-injective next summand and per candidate
/// bounding relation.
pub fn extend(alg: &StringAlgebra, state: &ElisState) -> Result<Vec<ElisState>> {
    let mut out = Vec::new();
    for s in envelope_steps(alg, &state.summand)? {
        if state.through.is_some_and(|t| t != s.via) {
            continue;
        }
        let Some(y) = s.summand else { continue };
        if !non_injective(alg, &y)? {
            continue;
        }
        let rels = bound_relations(&s.bound);
        let mk = |chain: Vec<RelationId>| ElisState {
            summand: y.clone(),
            chain,
            depth: state.depth + 1,
            through: None,
        };
        if rels.is_empty() {
            out.push(mk(state.chain.clone()));
        }
        for r in rels {
            let mut chain = state.chain.clone();
            chain.push(r);
            out.push(mk(chain));
        }
    }
    Ok(out)
}
