//! Seeded random string and gentle algebras.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    longest_nonzero_path, validate_string_quiver, ArrowId, BoundQuiver, Quiver, RelationSet,
    VertexId,
};
use crate::error::{Error, Result};

const ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenLimits {
    pub max_vertices: u32,
    pub max_arrows: usize,
    pub max_relation_len: usize,
    pub seed: u64,
}

impl GenLimits {
    pub fn new(max_vertices: u32, max_arrows: usize, max_relation_len: usize, seed: u64) -> Self {
        GenLimits {
            max_vertices,
            max_arrows,
            max_relation_len,
            seed,
        }
    }

    fn check(&self) -> Result<()> {
        if self.max_vertices == 0 || self.max_relation_len < 2 {
            return Err(Error::Invariant(format!(
                "limits need at least one vertex and relation length 2, got {self:?}"
            )));
        }
        Ok(())
    }
}

impl Default for GenLimits {
    fn default() -> Self {
        GenLimits::new(6, 10, 4, 0)
    }
}

fn label(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < LETTERS.len() {
        (LETTERS[i] as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// Arrows under the degree caps of a string quiver: at most two in and two
/// out per vertex.
fn random_quiver(rng: &mut ChaCha8Rng, lim: &GenLimits) -> Quiver {
    let n = rng.gen_range(1..=lim.max_vertices);
    let mut q = Quiver::new(n);
    let target = rng.gen_range(0..=lim.max_arrows);
    let mut outs = vec![0u8; n as usize];
    let mut ins = vec![0u8; n as usize];
    for _ in 0..target * 4 {
        if q.arrows().len() == target {
            break;
        }
        let s = rng.gen_range(0..n) as usize;
        let t = rng.gen_range(0..n) as usize;
        if outs[s] == 2 || ins[t] == 2 {
            continue;
        }
        outs[s] += 1;
        ins[t] += 1;
        let l = label(q.arrows().len());
        q.add_arrow(&l, VertexId(s as u32 + 1), VertexId(t as u32 + 1))
            .expect("endpoints in range");
    }
    q
}

/// Some nonzero path longer than `len`, if one exists.
fn long_nonzero_path(bq: &BoundQuiver, len: usize) -> Option<Vec<ArrowId>> {
    let q = &bq.quiver;
    let mut stack: Vec<Vec<ArrowId>> = q.arrow_ids().map(|a| vec![a]).collect();
    while let Some(p) = stack.pop() {
        if p.len() > len {
            return Some(p);
        }
        let end = q.arrows()[p[p.len() - 1].index()].target;
        for b in q.out_arrows(end) {
            let mut e = p.clone();
            e.push(b);
            if bq.is_nonzero_path(&e) {
                stack.push(e);
            }
        }
    }
    None
}

/// Adds relations along an unbounded nonzero path until none is left.
/// `window` picks the generator to add from the offending path.
fn repair_cycles(
    bq: &mut BoundQuiver,
    mut window: impl FnMut(&BoundQuiver, &[ArrowId]) -> Option<Vec<ArrowId>>,
) -> bool {
    for _ in 0..4 * bq.quiver.arrows().len() + 4 {
        if longest_nonzero_path(bq).is_some() {
            return true;
        }
        let probe = 4 * (bq.quiver.arrows().len() + 1) * (bq.relations.max_len() + 1);
        let Some(p) = long_nonzero_path(bq, probe) else {
            return false;
        };
        let Some(r) = window(bq, &p) else { return false };
        let mut rels: Vec<Vec<ArrowId>> = bq.relations.iter().map(|(_, r)| r.to_vec()).collect();
        rels.push(r);
        bq.relations = RelationSet::new(rels);
        bq.relations.minimalize();
    }
    false
}

fn finish(mut bq: BoundQuiver) -> Option<BoundQuiver> {
    bq.relations.minimalize();
    validate_string_quiver(&mut bq).valid().then_some(bq)
}

/// A random string algebra within `lim`. At each vertex a partial matching
/// of in- to out-arrows is chosen as the nonzero compositions, every other
/// composition becomes a length-two generator, a few longer generators are
/// added along nonzero paths, and unbounded paths are cut.
pub fn random_string_algebra(lim: &GenLimits) -> Result<BoundQuiver> {
    lim.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(lim.seed);
    for _ in 0..ATTEMPTS {
        let q = random_quiver(&mut rng, lim);
        let mut rels: Vec<Vec<ArrowId>> = Vec::new();
        for v in q.vertices() {
            let mut ins = q.in_arrows(v);
            let mut outs = q.out_arrows(v);
            ins.shuffle(&mut rng);
            outs.shuffle(&mut rng);
            let mut matched = Vec::new();
            for (&a, &b) in ins.iter().zip(outs.iter()) {
                if rng.gen_bool(0.7) {
                    matched.push((a, b));
                }
            }
            for &a in &ins {
                for &b in &outs {
                    if !matched.contains(&(a, b)) {
                        rels.push(vec![a, b]);
                    }
                }
            }
        }
        let mut bq = BoundQuiver::new(
            &format!("random_{}", lim.seed),
            q,
            RelationSet::new(rels.clone()),
        );
        if lim.max_relation_len > 2 {
            let extra = rng.gen_range(0..=3);
            for _ in 0..extra {
                let len = rng.gen_range(3..=lim.max_relation_len);
                if let Some(p) = random_nonzero_path(&bq, &mut rng, len) {
                    rels.push(p);
                    bq.relations = RelationSet::new(rels.clone());
                }
            }
        }
        bq.relations.minimalize();
        let maxlen = lim.max_relation_len;
        let ok = repair_cycles(&mut bq, |_, p| {
            let len = rng.gen_range(2..=maxlen.min(p.len()));
            let start = rng.gen_range(0..=p.len() - len);
            Some(p[start..start + len].to_vec())
        });
        if !ok {
            continue;
        }
        if let Some(bq) = finish(bq) {
            return Ok(bq);
        }
    }
    Err(Error::GenerationFailed(ATTEMPTS))
}

fn random_nonzero_path(bq: &BoundQuiver, rng: &mut ChaCha8Rng, len: usize) -> Option<Vec<ArrowId>> {
    let arrows: Vec<ArrowId> = bq.quiver.arrow_ids().collect();
    let mut p = vec![*arrows.choose(rng)?];
    while p.len() < len {
        let end = bq.quiver.arrows()[p[p.len() - 1].index()].target;
        let next: Vec<ArrowId> = bq
            .quiver
            .out_arrows(end)
            .into_iter()
            .filter(|&b| {
                let mut e = p.clone();
                e.push(b);
                bq.is_nonzero_path(&e)
            })
            .collect();
        p.push(*next.choose(rng)?);
    }
    Some(p)
}

/// True iff every generator has length two and, for each arrow, at most
/// one composable arrow on each side gives a generator and at most one
/// does not.
pub fn is_gentle(bq: &BoundQuiver) -> bool {
    let q = &bq.quiver;
    if bq.relations.iter().any(|(_, r)| r.len() != 2) {
        return false;
    }
    let zero = |a: ArrowId, b: ArrowId| bq.relations.iter().any(|(_, r)| r == [a, b]);
    q.arrow_ids().all(|a| {
        let arrow = &q.arrows()[a.index()];
        let after = q.out_arrows(arrow.target);
        let before = q.in_arrows(arrow.source);
        let z_after = after.iter().filter(|&&b| zero(a, b)).count();
        let z_before = before.iter().filter(|&&c| zero(c, a)).count();
        z_after <= 1
            && after.len() - z_after <= 1
            && z_before <= 1
            && before.len() - z_before <= 1
    })
}

/// A random gentle algebra within `lim`. At each vertex the generators
/// form a matching whose complement in `in x out` is also a matching.
pub fn random_gentle_algebra(lim: &GenLimits) -> Result<BoundQuiver> {
    lim.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(lim.seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..ATTEMPTS {
        let q = random_quiver(&mut rng, lim);
        let mut rels: Vec<Vec<ArrowId>> = Vec::new();
        for v in q.vertices() {
            let ins = q.in_arrows(v);
            let outs = q.out_arrows(v);
            match (ins.len(), outs.len()) {
                (2, 2) => {
                    let flip = rng.gen_bool(0.5) as usize;
                    rels.push(vec![ins[0], outs[flip]]);
                    rels.push(vec![ins[1], outs[1 - flip]]);
                }
                (2, 1) => rels.push(vec![*ins.choose(&mut rng).unwrap(), outs[0]]),
                (1, 2) => rels.push(vec![ins[0], *outs.choose(&mut rng).unwrap()]),
                (1, 1) if rng.gen_bool(0.5) => rels.push(vec![ins[0], outs[0]]),
                _ => {}
            }
        }
        let mut bq = BoundQuiver::new(&format!("gentle_{}", lim.seed), q, RelationSet::new(rels));
        // Only a composition whose arrows carry no generator on that side
        // keeps the algebra gentle.
        let ok = repair_cycles(&mut bq, |bq, p| {
            let mut starts: Vec<usize> = (0..p.len() - 1).collect();
            starts.shuffle(&mut rng);
            starts
                .into_iter()
                .find(|&i| bq.relations.iter().all(|(_, r)| r[0] != p[i] && r[1] != p[i + 1]))
                .map(|i| vec![p[i], p[i + 1]])
        });
        if !ok {
            continue;
        }
        if let Some(bq) = finish(bq).filter(is_gentle) {
            return Ok(bq);
        }
    }
    Err(Error::GenerationFailed(ATTEMPTS))
}
