//! Combinatorial first cosyzygies: of modules with simple socle (directed
//! strings and the peak strings `X Y^-1`), and of non-directed projectives.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{pair_at_vertex, ArmBound, ArrowId, RelationId, StringAlgebra, VertexId};
use crate::error::{Error, Result};
use crate::paths::{left_window, relations_on, spans_left_intersect};
use crate::string::{
    canonical_unchecked, directed_path, injective_string, is_directed, is_valid_string,
    projective_arms, StringClass, StringWord,
};

/// A string module whose socle is the simple at `vertex`: one nonzero path
/// per used in-arrow, all ending at `vertex`. Arms are kept sorted by their
/// last arrow, so equal modules compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SocleString {
    pub vertex: VertexId,
    pub arms: Vec<Vec<ArrowId>>,
}

impl SocleString {
    pub fn new(vertex: VertexId, arms: Vec<Vec<ArrowId>>) -> Self {
        let mut arms: Vec<Vec<ArrowId>> = arms.into_iter().filter(|a| !a.is_empty()).collect();
        arms.sort_by_key(|a| *a.last().unwrap());
        SocleString { vertex, arms }
    }

    pub fn simple(vertex: VertexId) -> Self {
        SocleString {
            vertex,
            arms: Vec::new(),
        }
    }

    /// `M(p)` for a nonempty path `p`.
    pub fn path(alg: &StringAlgebra, p: &[ArrowId]) -> Self {
        SocleString {
            vertex: alg.target(p[p.len() - 1]),
            arms: vec![p.to_vec()],
        }
    }

    /// A path with its first vertex given, so the empty path is allowed.
    pub fn path_from(alg: &StringAlgebra, start: VertexId, p: &[ArrowId]) -> Self {
        if p.is_empty() {
            Self::simple(start)
        } else {
            Self::path(alg, p)
        }
    }

    pub fn is_directed(&self) -> bool {
        self.arms.len() <= 1
    }

    pub fn dimension(&self) -> usize {
        1 + self.arms.iter().map(Vec::len).sum::<usize>()
    }

    pub fn arm_ending_with(&self, a: ArrowId) -> Option<&[ArrowId]> {
        self.arms.iter().find(|p| p.last() == Some(&a)).map(Vec::as_slice)
    }

    pub fn word(&self, alg: &StringAlgebra) -> StringWord {
        match self.arms.as_slice() {
            [] => StringWord::trivial(self.vertex),
            [p] => StringWord::path(alg, p),
            [p, q] => StringWord::path(alg, p).concat(alg, &StringWord::path(alg, q).inverse(alg)),
            _ => unreachable!("at most two in-arrows"),
        }
    }

    pub fn class(&self, alg: &StringAlgebra) -> StringClass {
        canonical_unchecked(alg, &self.word(alg))
    }

    pub fn render(&self, alg: &StringAlgebra) -> String {
        self.class(alg).word().render(alg)
    }
}

/// The part of the envelope `E(vertex)` reached through one in-arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosyzygyStep {
    pub via: ArrowId,
    /// The module's own arm ending with `via`; empty if it has none.
    pub assigned: Vec<ArrowId>,
    /// Longest nonzero path ending with `assigned` (or with `via`).
    pub envelope_arm: Vec<ArrowId>,
    pub bound: ArmBound,
    /// `envelope_arm` minus `assigned`, minus its last arrow; `None` when
    /// nothing is left over.
    pub summand: Option<SocleString>,
}

/// Envelope arms and cokernel summands of a module with simple socle, one
/// step per in-arrow of the socle vertex in id order. The module is
/// injective iff every summand is `None`.
pub fn envelope_steps(alg: &StringAlgebra, m: &SocleString) -> Result<Vec<CosyzygyStep>> {
    let mut out = Vec::new();
    for &via in alg.in_arrows(m.vertex) {
        let assigned = m.arm_ending_with(via).map(<[ArrowId]>::to_vec).unwrap_or_default();
        let arm = if assigned.is_empty() {
            alg.left_arm(&[via])
        } else {
            alg.left_arm(&assigned)
        };
        let bound = alg.arm_bound(&arm)?;
        let rest = arm.len() - assigned.len();
        let summand = (rest > 0).then(|| {
            SocleString::path_from(alg, alg.source(arm[0]), &arm[..rest - 1])
        });
        out.push(CosyzygyStep {
            via,
            assigned,
            envelope_arm: arm,
            bound,
            summand,
        });
    }
    Ok(out)
}

pub fn is_injective_socle_string(alg: &StringAlgebra, m: &SocleString) -> Result<bool> {
    Ok(envelope_steps(alg, m)?.iter().all(|s| s.summand.is_none()))
}

/// First cosyzygy of a directed string module as two directed summands: the
/// one continuing the word's last arrow first, then the one through the
/// other in-arrow. A trivial word orders by in-arrow id.
pub fn cosyzygy_directed(
    alg: &StringAlgebra,
    word: &StringWord,
) -> Result<(Option<StringClass>, Option<StringClass>)> {
    if !is_valid_string(alg, word)? {
        return Err(Error::InvalidString(word.render(alg)));
    }
    if !is_directed(word) {
        return Err(Error::NotDirected);
    }
    let path = directed_path(word)?;
    let m = SocleString::path_from(alg, word.base, &path);
    let mut steps = envelope_steps(alg, &m)?;
    steps.sort_by_key(|s| s.assigned.is_empty());
    let mut it = steps.into_iter().map(|s| s.summand.map(|x| x.class(alg)));
    Ok((it.next().flatten(), it.next().flatten()))
}

/// One of the two arms of a non-directed projective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeSide {
    pub out_arrow: ArrowId,
    /// Maximal nonzero path out of the projective vertex through `out_arrow`.
    pub arm: Vec<ArrowId>,
    /// End of `arm`, a socle vertex of the projective.
    pub socle: VertexId,
    /// Longest path `X` with `X·arm` nonzero.
    pub extension: Vec<ArrowId>,
    /// Why `extension·arm` cannot grow.
    pub bound: ArmBound,
    /// In-arrow of the projective vertex matched with this side.
    pub partner: Option<ArrowId>,
}

/// Envelope part at a socle vertex beyond the projective: the arm into the
/// socle vertex through its other in-arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overhang {
    pub side: usize,
    pub via: ArrowId,
    pub path: Vec<ArrowId>,
    pub bound: ArmBound,
    pub summand: SocleString,
}

/// Envelope and first cosyzygy of a projective with two out-arrows. Side 0
/// is the lower out-arrow id (`s_c`), side 1 the other (`s_d`); the
/// extensions are `s_b = X_c` and `s_a = X_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeData {
    pub vertex: VertexId,
    pub sides: [EnvelopeSide; 2],
    pub overhangs: Vec<Overhang>,
    pub envelope: Vec<StringClass>,
    /// The middle summand `X_c X_d^-1`, socle at `vertex`.
    pub d: SocleString,
    pub d_injective: bool,
}

impl EnvelopeData {
    pub fn s_a(&self) -> &[ArrowId] {
        &self.sides[1].extension
    }

    pub fn s_b(&self) -> &[ArrowId] {
        &self.sides[0].extension
    }

    pub fn s_c(&self) -> &[ArrowId] {
        &self.sides[0].arm
    }

    pub fn s_d(&self) -> &[ArrowId] {
        &self.sides[1].arm
    }

    pub fn d_l(&self) -> Option<&SocleString> {
        self.overhangs.iter().find(|o| o.side == 0).map(|o| &o.summand)
    }

    pub fn d_r(&self) -> Option<&SocleString> {
        self.overhangs.iter().find(|o| o.side == 1).map(|o| &o.summand)
    }

    /// All cosyzygy summands: overhangs of side 0, `D`, overhangs of side 1.
    pub fn summands(&self) -> Vec<&SocleString> {
        let mut out: Vec<&SocleString> = self
            .overhangs
            .iter()
            .filter(|o| o.side == 0)
            .map(|o| &o.summand)
            .collect();
        out.push(&self.d);
        out.extend(self.overhangs.iter().filter(|o| o.side == 1).map(|o| &o.summand));
        out
    }

    /// Sides whose arm seeds a chain through the in-arrow `via`: the matched
    /// side, plus any side left without a partner.
    pub fn sides_through(&self, via: ArrowId) -> Vec<usize> {
        (0..2)
            .filter(|&i| self.sides[i].partner.is_none_or(|p| p == via))
            .collect()
    }

    /// The relations that open a chain along side `side` when the middle
    /// summand continues through `via`.
    pub fn first_relations(&self, alg: &StringAlgebra, side: usize, via: ArrowId) -> Vec<RelationId> {
        let s = &self.sides[side];
        if !s.extension.is_empty() {
            return s.bound.relations();
        }
        let mut p = vec![via];
        p.extend_from_slice(&s.arm);
        alg.relation_prefix(&p).into_iter().collect()
    }
}

/// Envelope and cosyzygy data of `P(v)` for a vertex with two out-arrows.
pub fn first_cosyzygy_projective(alg: &StringAlgebra, v: VertexId) -> Result<EnvelopeData> {
    alg.check_vertex(v)?;
    let outs = alg.out_arrows(v);
    if outs.len() != 2 {
        return Err(Error::WrongVertexType {
            vertex: v,
            found: format!("({}in,{}out)", alg.in_arrows(v).len(), outs.len()),
            expected: "(2in,2out), (1in,2out), (0in,2out)",
        });
    }
    let pairs = pair_at_vertex(alg, v);
    let arms = projective_arms(alg, v);
    let mut sides = Vec::with_capacity(2);
    for (i, arm) in arms.into_iter().enumerate() {
        let full = alg.left_arm(&arm);
        let extension = full[..full.len() - arm.len()].to_vec();
        sides.push(EnvelopeSide {
            out_arrow: outs[i],
            socle: alg.target(*arm.last().unwrap()),
            bound: alg.arm_bound(&full)?,
            partner: pairs.iter().find(|p| p.1 == outs[i]).map(|p| p.0),
            extension,
            arm,
        });
    }
    let sides: [EnvelopeSide; 2] = sides.try_into().expect("two out-arrows");

    let mut overhangs = Vec::new();
    for (i, s) in sides.iter().enumerate() {
        let last = *s.arm.last().unwrap();
        for &g in alg.in_arrows(s.socle) {
            if g == last {
                continue;
            }
            let path = alg.left_arm(&[g]);
            overhangs.push(Overhang {
                side: i,
                via: g,
                bound: alg.arm_bound(&path)?,
                summand: SocleString::path_from(alg, alg.source(path[0]), &path[..path.len() - 1]),
                path,
            });
        }
    }
    let d = SocleString::new(
        v,
        vec![sides[0].extension.clone(), sides[1].extension.clone()],
    );
    let d_injective = is_injective_socle_string(alg, &d)?;
    let envelope = vec![
        injective_string(alg, sides[0].socle)?,
        injective_string(alg, sides[1].socle)?,
    ];
    Ok(EnvelopeData {
        vertex: v,
        sides,
        overhangs,
        envelope,
        d,
        d_injective,
    })
}

/// A relation occurrence in coordinates where the projective vertex sits at
/// offset 0 and offsets grow along the arm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AnchoredRelation {
    pub relation: RelationId,
    pub start: isize,
    pub end: isize,
}

/// For a `(2in,2out)` vertex: per side, the relations ending at or before
/// the vertex on some left maximal path through the side's chain seed that
/// left-intersect the seed's bounding relation. Returned as `(R_L, R_R)`,
/// where `R_L` belongs to side 1 (`s_a s_d`) and `R_R` to side 0.
///
/// The seed of a side is `ρ X s` with `ρ` the compatible predecessor of the
/// extension `X`, or `α s` with `α` the matched in-arrow when `X` is empty.
/// A nonempty `X` without compatible predecessor is already left maximal
/// inside the middle summand and contributes nothing.
pub fn d_injectivity_sets(
    alg: &StringAlgebra,
    v: VertexId,
) -> Result<(Vec<AnchoredRelation>, Vec<AnchoredRelation>)> {
    alg.check_vertex(v)?;
    let (ins, outs) = (alg.in_arrows(v).len(), alg.out_arrows(v).len());
    if ins != 2 || outs != 2 {
        return Err(Error::WrongVertexType {
            vertex: v,
            found: format!("({ins}in,{outs}out)"),
            expected: "(2in,2out)",
        });
    }
    let env = first_cosyzygy_projective(alg, v)?;
    let mut sets = [Vec::new(), Vec::new()];
    for (i, side) in env.sides.iter().enumerate() {
        let head = if side.extension.is_empty() {
            side.partner
        } else {
            alg.predecessor(side.extension[0])
        };
        let Some(head) = head else { continue };
        let mut seed = vec![head];
        seed.extend_from_slice(&side.extension);
        seed.extend_from_slice(&side.arm);
        let r1 = alg
            .relation_prefix(&seed)
            .ok_or_else(|| Error::Invariant("chain seed carries no relation".into()))?;
        let r1_span = (0, alg.relation(r1).len() as isize);
        // Offset of the projective vertex measured from the seed's start.
        let v_off = 1 + side.extension.len() as isize;
        let mut found = BTreeSet::new();
        for w in left_window(alg, alg.source(head), &seed, alg.max_relation_len()) {
            for occ in relations_on(alg, &w) {
                let span = occ.offsets(&w);
                if span.1 <= v_off && spans_left_intersect(span, r1_span) {
                    found.insert(AnchoredRelation {
                        relation: occ.relation,
                        start: span.0 - v_off,
                        end: span.1 - v_off,
                    });
                }
            }
        }
        sets[i] = found.into_iter().collect();
    }
    let [r_r, r_l] = sets;
    Ok((r_l, r_r))
}
