//! Engine against oracle, vertex by vertex.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{StringAlgebra, VertexId};
use crate::elis::{ElisConfig, ElisOutcome, InjDim, ProjectiveAnalysis};
use crate::error::Result;
use crate::oracle::{Oracle, OracleDim};

/// Longest witness for which the nonvanishing of `℧_{n+1}` is checked.
pub const WITNESS_CHECK_MAX: usize = 10;

/// Agreement rule: equal finite values, or an infinite verdict against an
/// undecided oracle. A finite engine value never matches `AtLeast`.
pub fn consistent(engine: InjDim, oracle: OracleDim) -> bool {
    match (engine, oracle) {
        (InjDim::Finite(a), OracleDim::Finite(b)) => a == b,
        (InjDim::Infinite, OracleDim::AtLeast(_)) => true,
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub vertex: VertexId,
    pub engine: InjDim,
    pub oracle_dim: OracleDim,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// `℧_{n+1}(P(v))` for a witness chain of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub vertex: VertexId,
    pub chain_len: usize,
    pub cosyzygy_dim: u64,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub algebra: String,
    pub cutoff: usize,
    pub prime: u32,
    pub vertices: Vec<VertexCheck>,
    pub witnesses: Vec<WitnessCheck>,
    pub mismatches: Vec<String>,
}

impl CrosscheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn crosscheck(
    alg: &StringAlgebra,
    cutoff: usize,
    prime: u32,
    cfg: &ElisConfig,
) -> Result<CrosscheckReport> {
    let oracle = Oracle::new(alg.bound_quiver(), prime)?;
    let mut vertices = Vec::new();
    let mut witnesses = Vec::new();
    let mut mismatches = Vec::new();
    for v in alg.vertices() {
        let analysis = ProjectiveAnalysis::new(alg, v, cfg)?;
        let p = oracle.projective_rep(v)?;
        let oracle_dim = oracle.inj_dim_upto(&p, cutoff)?;
        let matches = consistent(analysis.inj_dim, oracle_dim);
        if !matches {
            mismatches.push(format!(
                "P({v}): engine {} but oracle {:?}",
                analysis.inj_dim, oracle_dim
            ));
        }
        vertices.push(VertexCheck {
            vertex: v,
            engine: analysis.inj_dim,
            oracle_dim,
            matches,
        });
        if let ElisOutcome::Finite { witnesses: chains, .. } = analysis.outcome() {
            let lens: BTreeSet<usize> = chains
                .iter()
                .map(Vec::len)
                .filter(|&n| (1..=WITNESS_CHECK_MAX).contains(&n))
                .collect();
            let Some(&top) = lens.last() else { continue };
            let res = oracle.coresolution(&p, top + 1)?;
            for n in lens {
                let dim = res.get(n + 1).map_or(0, |r| r.total_dim());
                if dim == 0 {
                    mismatches.push(format!(
                        "P({v}): witness of length {n} but the cosyzygy at step {} vanishes",
                        n + 1
                    ));
                }
                witnesses.push(WitnessCheck {
                    vertex: v,
                    chain_len: n,
                    cosyzygy_dim: dim,
                    nonzero: dim > 0,
                });
            }
        }
    }
    Ok(CrosscheckReport {
        algebra: alg.name().to_string(),
        cutoff,
        prime,
        vertices,
        witnesses,
        mismatches,
    })
}
