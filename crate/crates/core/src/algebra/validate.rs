use std::collections::HashMap;

use serde::Serialize;

use super::{ArrowId, BoundQuiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    #[serde(rename = "1")]
    Degree,
    #[serde(rename = "2")]
    RightContinuation,
    #[serde(rename = "3")]
    LeftContinuation,
    #[serde(rename = "4")]
    RelationLength,
    #[serde(rename = "admissible")]
    Admissible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.valid
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Checks the four string-quiver axioms and finite dimensionality, and sets
/// `bq.validated` iff no violation was found.
pub fn validate_string_quiver(bq: &mut BoundQuiver) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |axiom, detail: String| violations.push(Violation { axiom, detail });
    let q = &bq.quiver;

    for v in q.vertices() {
        let (i, o) = (q.in_arrows(v).len(), q.out_arrows(v).len());
        if i > 2 {
            push(Axiom::Degree, format!("vertex {v} is the target of {i} arrows"));
        }
        if o > 2 {
            push(Axiom::Degree, format!("vertex {v} is the source of {o} arrows"));
        }
    }

    let is_rel = |p: &[ArrowId]| bq.relations.iter().any(|(_, r)| r == p);
    for b in q.arrow_ids() {
        let arrow = &q.arrows()[b.index()];
        let free_after: Vec<ArrowId> = q
            .out_arrows(arrow.target)
            .into_iter()
            .filter(|&c| !is_rel(&[b, c]))
            .collect();
        if free_after.len() > 1 {
            push(
                Axiom::RightContinuation,
                format!(
                    "arrow {} has {} continuations outside I: {}",
                    arrow.label,
                    free_after.len(),
                    bq.render_path(&free_after)
                ),
            );
        }
        let free_before: Vec<ArrowId> = q
            .in_arrows(arrow.source)
            .into_iter()
            .filter(|&a| !is_rel(&[a, b]))
            .collect();
        if free_before.len() > 1 {
            push(
                Axiom::LeftContinuation,
                format!(
                    "arrow {} has {} predecessors outside I: {}",
                    arrow.label,
                    free_before.len(),
                    bq.render_path(&free_before)
                ),
            );
        }
    }

    for (id, r) in bq.relations.iter() {
        if r.len() < 2 {
            push(
                Axiom::RelationLength,
                format!("relation {} has length {}", id.0, r.len()),
            );
        }
        if !q.is_composable(r) {
            push(
                Axiom::RelationLength,
                format!("relation {} is not composable", bq.render_path(r)),
            );
        }
    }

    if longest_nonzero_path(bq).is_none() {
        push(
            Axiom::Admissible,
            "infinite-dimensional algebra: an oriented cycle avoids every relation".into(),
        );
    }

    let mut warnings = Vec::new();
    if !q.is_connected() {
        warnings.push("quiver is not connected; results are per component".to_string());
    }
    let valid = violations.is_empty();
    bq.validated = valid;
    ValidationReport {
        valid,
        violations,
        warnings,
    }
}

/// Length of the longest nonzero path, or `None` when nonzero paths are
/// unbounded. Works on the automaton whose states are the last
/// `max(1, maxlen - 1)` arrows of a nonzero path; a reachable cycle in that
/// automaton is exactly an infinite family of nonzero paths.
pub(crate) fn longest_nonzero_path(bq: &BoundQuiver) -> Option<usize> {
    let q = &bq.quiver;
    let k = bq.relations.max_len().saturating_sub(1).max(1);
    let rels: Vec<&[ArrowId]> = bq.relations.iter().map(|(_, r)| r).collect();
    let has_suffix_rel = |p: &[ArrowId]| rels.iter().any(|r| p.ends_with(r));

    let mut index: HashMap<Vec<ArrowId>, usize> = HashMap::new();
    let mut states: Vec<Vec<ArrowId>> = Vec::new();
    let mut succ: Vec<Option<Vec<usize>>> = Vec::new();
    let mut intern = |s: Vec<ArrowId>, states: &mut Vec<Vec<ArrowId>>, succ: &mut Vec<Option<Vec<usize>>>| {
        *index.entry(s.clone()).or_insert_with(|| {
            states.push(s);
            succ.push(None);
            states.len() - 1
        })
    };

    let mut roots = Vec::new();
    for a in q.arrow_ids() {
        if !has_suffix_rel(&[a]) {
            roots.push(intern(vec![a], &mut states, &mut succ));
        }
    }

    // Iterative DFS computing the longest path (in arrows) from each state.
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color: Vec<u8> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    let mut longest = 0;
    for &root in &roots {
        let mut stack = vec![(root, 0usize)];
        while let Some(&(s, next_child)) = stack.last() {
            color.resize(states.len(), WHITE);
            best.resize(states.len(), 0);
            if next_child == 0 && color[s] == BLACK {
                stack.pop();
                continue;
            }
            if succ[s].is_none() {
                let state = states[s].clone();
                let last = *state.last().unwrap();
                let mut children = Vec::new();
                for b in q.out_arrows(q.arrows()[last.index()].target) {
                    let mut p = state.clone();
                    p.push(b);
                    if has_suffix_rel(&p) {
                        continue;
                    }
                    let tail = p[p.len().saturating_sub(k)..].to_vec();
                    children.push(intern(tail, &mut states, &mut succ));
                }
                succ[s] = Some(children);
                color.resize(states.len(), WHITE);
                best.resize(states.len(), 0);
                color[s] = GREY;
            }
            let children = succ[s].as_ref().unwrap();
            if next_child < children.len() {
                let c = children[next_child];
                stack.last_mut().unwrap().1 += 1;
                match color[c] {
                    GREY => return None,
                    WHITE => stack.push((c, 0)),
                    _ => {}
                }
            } else {
                let b = children.iter().map(|&c| best[c] + 1).max().unwrap_or(0);
                best[s] = b;
                color[s] = BLACK;
                stack.pop();
            }
        }
        longest = longest.max(best[root] + 1);
    }
    Some(longest)
}
