use std::fmt;

use serde::Serialize;

use super::{contains_subpath, ArrowId, StringAlgebra, VertexId};
use crate::error::Result;

/// `(m^in, n^out)` with `m, n <= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VertexType {
    pub ins: u8,
    pub outs: u8,
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}in,{}out)", self.ins, self.outs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexProfile {
    pub vertex: VertexId,
    pub in_arrows: Vec<ArrowId>,
    pub out_arrows: Vec<ArrowId>,
    pub type_tag: VertexType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexClass {
    NonRelational,
    GentlyRelational,
    StrictlyRelational,
    OtherRelational,
}

/// Which compositions through a two-out vertex are tested for lying inside
/// a longer generator. The default tests the compositions that avoid `I`
/// (the paired ones); the alternative tests the crossing compositions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StrictnessReading {
    #[default]
    NonZeroCompositions,
    CrossingCompositions,
}

pub fn vertex_profile(alg: &StringAlgebra, v: VertexId) -> Result<VertexProfile> {
    alg.check_vertex(v)?;
    let in_arrows = alg.in_arrows(v).to_vec();
    let out_arrows = alg.out_arrows(v).to_vec();
    let type_tag = VertexType {
        ins: in_arrows.len() as u8,
        outs: out_arrows.len() as u8,
    };
    Ok(VertexProfile {
        vertex: v,
        in_arrows,
        out_arrows,
        type_tag,
    })
}

pub fn classify_vertex(alg: &StringAlgebra, v: VertexId) -> Result<VertexClass> {
    classify_vertex_with(alg, v, StrictnessReading::default())
}

pub fn classify_vertex_with(
    alg: &StringAlgebra,
    v: VertexId,
    reading: StrictnessReading,
) -> Result<VertexClass> {
    let p = vertex_profile(alg, v)?;
    let relational = p.in_arrows.iter().any(|&a| {
        p.out_arrows
            .iter()
            .any(|&b| alg.relation_suffix(&[a, b]).is_some())
    });
    if !relational {
        return Ok(VertexClass::NonRelational);
    }
    if p.type_tag.outs != 2 || p.type_tag.ins == 0 {
        return Ok(VertexClass::OtherRelational);
    }
    let pairs = pair_at_vertex(alg, v);
    let inside_generator =
        |a: ArrowId, b: ArrowId| alg.relations().any(|(_, r)| contains_subpath(r, &[a, b]));
    let strict = match reading {
        StrictnessReading::NonZeroCompositions => {
            pairs.iter().any(|&(a, b)| inside_generator(a, b))
        }
        StrictnessReading::CrossingCompositions => p.in_arrows.iter().any(|&a| {
            p.out_arrows
                .iter()
                .any(|&b| !pairs.contains(&(a, b)) && inside_generator(a, b))
        }),
    };
    Ok(if strict {
        VertexClass::StrictlyRelational
    } else {
        VertexClass::GentlyRelational
    })
}

/// Matches in-arrows of `v` with out-arrows. A composition outside `I`
/// forces its pair; the rest are matched crosswise in id order, so with two
/// free arrows on each side `in[0]` goes with `out[1]`.
pub fn pair_at_vertex(alg: &StringAlgebra, v: VertexId) -> Vec<(ArrowId, ArrowId)> {
    let ins = alg.in_arrows(v);
    let outs = alg.out_arrows(v);
    let mut pairs = Vec::new();
    for &a in ins {
        for &b in outs {
            if alg.relation_suffix(&[a, b]).is_none() {
                pairs.push((a, b));
            }
        }
    }
    let free_in: Vec<ArrowId> = ins
        .iter()
        .copied()
        .filter(|a| pairs.iter().all(|p| p.0 != *a))
        .collect();
    let free_out: Vec<ArrowId> = outs
        .iter()
        .copied()
        .filter(|b| pairs.iter().all(|p| p.1 != *b))
        .collect();
    for (i, &a) in free_in.iter().enumerate().take(free_out.len()) {
        pairs.push((a, free_out[free_out.len() - 1 - i]));
    }
    pairs.sort();
    pairs
}
