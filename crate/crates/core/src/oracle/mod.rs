//! Brute-force homological algebra over a prime field.
//!
//! Everything here works from the bound quiver and explicit matrices. The
//! string calculus is used only to turn a word into positional matrices in
//! [`string_rep`]; envelopes, cosyzygies and injectivity never consult it.

mod field;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

pub use field::{is_prime, FieldElement, Matrix};

use crate::algebra::{ArrowId, BoundQuiver, VertexId};
use crate::error::{Error, Result};
use crate::string::{DimensionVector, StringWord};
use crate::StringAlgebra;

pub const DEFAULT_PRIME: u32 = 2;

/// Hard stop for path enumeration; a validated algebra stays far below it.
const PATH_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleDim {
    Finite(usize),
    AtLeast(usize),
}

/// Right module: `maps[a]` has shape `dims[s(a)] x dims[t(a)]` and sends a
/// row vector at `s(a)` to one at `t(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub p: u32,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn zero(bq: &BoundQuiver, p: u32) -> Self {
        let n = bq.quiver.vertex_count() as usize;
        let maps = bq
            .quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(0, 0, p))
            .collect();
        Representation {
            p,
            dims: vec![0; n],
            maps,
        }
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims[v.index()]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Nonzero entries only, matching the string-side dimension vectors.
    pub fn dim_vector(&self) -> DimensionVector {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (VertexId(i as u32 + 1), d))
            .collect()
    }

    /// Action of a path, `dims[start] x dims[end]`.
    pub fn path_action(&self, start: VertexId, path: &[ArrowId]) -> Matrix {
        let mut m = Matrix::identity(self.dims[start.index()], self.p);
        for &a in path {
            m = m.mul(&self.maps[a.index()]);
        }
        m
    }

    /// Splits along basis vectors that no arrow matrix connects. Each part
    /// is a direct summand; parts need not be indecomposable.
    pub fn blocks(&self, bq: &BoundQuiver) -> Vec<Representation> {
        let offset: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total = self.total_dim();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, arrow) in bq.quiver.arrows().iter().enumerate() {
            let m = &self.maps[a];
            for i in 0..m.rows {
                for j in 0..m.cols {
                    if m.get(i, j) != 0 {
                        let x = find(&mut parent, offset[arrow.source.index()] + i);
                        let y = find(&mut parent, offset[arrow.target.index()] + j);
                        parent[x] = y;
                    }
                }
            }
        }
        // Block label and position inside its vertex space, per basis vector.
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut members: Vec<Vec<Vec<usize>>> = Vec::new();
        for (v, &d) in self.dims.iter().enumerate() {
            for i in 0..d {
                let root = find(&mut parent, offset[v] + i);
                let next = label.len();
                let b = *label.entry(root).or_insert(next);
                if b == members.len() {
                    members.push(vec![Vec::new(); self.dims.len()]);
                }
                members[b][v].push(i);
            }
        }
        if members.len() <= 1 {
            return if self.is_zero() { Vec::new() } else { vec![self.clone()] };
        }
        members
            .into_iter()
            .map(|mem| {
                let dims = mem.iter().map(Vec::len).collect();
                let maps = bq
                    .quiver
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(a, arrow)| {
                        let rows = &mem[arrow.source.index()];
                        let cols = &mem[arrow.target.index()];
                        let mut m = Matrix::zeros(rows.len(), cols.len(), self.p);
                        for (i, &r) in rows.iter().enumerate() {
                            for (j, &c) in cols.iter().enumerate() {
                                m.set(i, j, self.maps[a].get(r, c));
                            }
                        }
                        m
                    })
                    .collect();
                Representation {
                    p: self.p,
                    dims,
                    maps,
                }
            })
            .collect()
    }

    fn check(self, bq: &BoundQuiver) -> Result<Self> {
        for (a, arrow) in bq.quiver.arrows().iter().enumerate() {
            let m = &self.maps[a];
            if m.rows != self.dims[arrow.source.index()] || m.cols != self.dims[arrow.target.index()] {
                return Err(Error::Invariant(format!(
                    "arrow {} has a {}x{} matrix",
                    arrow.label, m.rows, m.cols
                )));
            }
        }
        for (_, r) in bq.relations.iter() {
            let s = bq.quiver.arrows()[r[0].index()].source;
            if !self.path_action(s, r).is_zero() {
                return Err(Error::Invariant(format!(
                    "relation {} acts nonzero",
                    bq.render_path(r)
                )));
            }
        }
        Ok(self)
    }
}

/// Per-vertex matrices `dims_src[v] x dims_dst[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap {
    pub maps: Vec<Matrix>,
}

impl RepMap {
    pub fn commutes(&self, bq: &BoundQuiver, src: &Representation, dst: &Representation) -> bool {
        bq.quiver.arrows().iter().enumerate().all(|(a, arrow)| {
            let lhs = self.maps[arrow.source.index()].mul(&dst.maps[a]);
            let rhs = src.maps[a].mul(&self.maps[arrow.target.index()]);
            lhs == rhs
        })
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows)
    }
}

/// One term of a coresolution as a direct sum of distinct blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cosyzygy {
    pub blocks: Vec<(Representation, u64)>,
}

impl Cosyzygy {
    fn from_blocks(blocks: Vec<Representation>, mult: u64) -> Self {
        let mut c = Cosyzygy::default();
        for b in blocks {
            c.add(b, mult);
        }
        c
    }

    fn add(&mut self, block: Representation, mult: u64) {
        match self.blocks.iter_mut().find(|(b, _)| *b == block) {
            Some((_, m)) => *m = m.saturating_add(mult),
            None => self.blocks.push((block, mult)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Dimension at each vertex, saturating.
    pub fn dims(&self) -> Vec<u64> {
        let n = self.blocks.first().map_or(0, |(b, _)| b.dims.len());
        let mut d = vec![0u64; n];
        for (b, m) in &self.blocks {
            for (x, &y) in d.iter_mut().zip(&b.dims) {
                *x = x.saturating_add(m.saturating_mul(y as u64));
            }
        }
        d
    }

    pub fn total_dim(&self) -> u64 {
        self.dims().iter().fold(0u64, |a, &b| a.saturating_add(b))
    }
}

/// Nonzero paths of a bound quiver, bucketed by endpoints.
pub struct Oracle<'a> {
    bq: &'a BoundQuiver,
    p: u32,
    /// `paths[u][w]`: nonzero paths from `u` to `w`, trivial path first.
    paths: Vec<Vec<Vec<Vec<ArrowId>>>>,
    index: HashMap<(usize, Vec<ArrowId>), usize>,
}

impl<'a> Oracle<'a> {
    pub fn new(bq: &'a BoundQuiver, p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invariant(format!("{p} is not prime")));
        }
        let n = bq.quiver.vertex_count() as usize;
        let mut paths = vec![vec![Vec::new(); n]; n];
        let mut total = 0usize;
        for u in 0..n {
            let mut stack: Vec<(usize, Vec<ArrowId>)> = vec![(u, Vec::new())];
            while let Some((end, path)) = stack.pop() {
                total += 1;
                if total > PATH_LIMIT {
                    return Err(Error::BudgetExhausted(PATH_LIMIT));
                }
                for a in bq.quiver.out_arrows(VertexId(end as u32 + 1)) {
                    let mut next = path.clone();
                    next.push(a);
                    if bq.is_nonzero_path(&next) {
                        let t = bq.quiver.arrows()[a.index()].target.index();
                        stack.push((t, next));
                    }
                }
                paths[u][end].push(path);
            }
            for bucket in paths[u].iter_mut() {
                bucket.sort_by(|x: &Vec<ArrowId>, y| x.len().cmp(&y.len()).then(x.cmp(y)));
            }
        }
        let mut index = HashMap::new();
        for (u, row) in paths.iter().enumerate() {
            for bucket in row {
                for (i, q) in bucket.iter().enumerate() {
                    index.insert((u, q.clone()), i);
                }
            }
        }
        Ok(Oracle {
            bq,
            p,
            paths,
            index,
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn bound_quiver(&self) -> &BoundQuiver {
        self.bq
    }

    fn n(&self) -> usize {
        self.paths.len()
    }

    fn endpoints(&self, a: ArrowId) -> (usize, usize) {
        let arrow = &self.bq.quiver.arrows()[a.index()];
        (arrow.source.index(), arrow.target.index())
    }

    /// `e_v A`: basis at `u` is the nonzero paths `v -> u`; arrows act by
    /// right multiplication.
    pub fn projective_rep(&self, v: VertexId) -> Result<Representation> {
        let vi = v.index();
        let dims = (0..self.n()).map(|u| self.paths[vi][u].len()).collect::<Vec<_>>();
        let mut maps = Vec::new();
        for a in self.bq.quiver.arrow_ids() {
            let (s, t) = self.endpoints(a);
            let mut m = Matrix::zeros(dims[s], dims[t], self.p);
            for (i, q) in self.paths[vi][s].iter().enumerate() {
                let mut qa = q.clone();
                qa.push(a);
                if let Some(&j) = self.index.get(&(vi, qa)) {
                    m.set(i, j, 1);
                }
            }
            maps.push(m);
        }
        Representation { p: self.p, dims, maps }.check(self.bq)
    }

    /// `D(A e_w)`: basis at `u` is dual to the nonzero paths `u -> w`, and
    /// `a` sends the functional of `a x` to that of `x`.
    pub fn injective_rep(&self, w: VertexId) -> Result<Representation> {
        let wi = w.index();
        let dims = (0..self.n()).map(|u| self.paths[u][wi].len()).collect::<Vec<_>>();
        let mut maps = Vec::new();
        for a in self.bq.quiver.arrow_ids() {
            let (s, t) = self.endpoints(a);
            let mut m = Matrix::zeros(dims[s], dims[t], self.p);
            for (i, q) in self.paths[s][wi].iter().enumerate() {
                if q.first() == Some(&a) {
                    let j = self.index[&(t, q[1..].to_vec())];
                    m.set(i, j, 1);
                }
            }
            maps.push(m);
        }
        Representation { p: self.p, dims, maps }.check(self.bq)
    }

    /// The string module of `word`, one basis vector per position.
    pub fn string_rep(&self, alg: &StringAlgebra, word: &StringWord) -> Result<Representation> {
        if !crate::string::is_valid_string(alg, word)? {
            return Err(Error::InvalidString(word.render(alg)));
        }
        let verts = word.vertices(alg);
        let mut dims = vec![0usize; self.n()];
        let mut local = Vec::with_capacity(verts.len());
        for v in &verts {
            local.push(dims[v.index()]);
            dims[v.index()] += 1;
        }
        let mut maps: Vec<Matrix> = self
            .bq
            .quiver
            .arrow_ids()
            .map(|a| {
                let (s, t) = self.endpoints(a);
                Matrix::zeros(dims[s], dims[t], self.p)
            })
            .collect();
        for (i, l) in word.letters.iter().enumerate() {
            let (tail, head) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
            maps[l.arrow.index()].set(local[tail], local[head], 1);
        }
        Representation { p: self.p, dims, maps }.check(self.bq)
    }

    /// Common kernel of the arrows leaving each vertex, as rows.
    pub fn socle_rep(&self, rep: &Representation) -> (Representation, RepMap) {
        let mut incl = Vec::with_capacity(self.n());
        for u in 0..self.n() {
            let outs = self.bq.quiver.out_arrows(VertexId(u as u32 + 1));
            let mut stacked = Matrix::zeros(rep.dims[u], 0, self.p);
            for a in outs {
                stacked = stacked.hconcat(&rep.maps[a.index()]);
            }
            incl.push(stacked.left_kernel());
        }
        let dims = incl.iter().map(|k| k.rows).collect::<Vec<_>>();
        let maps = self
            .bq
            .quiver
            .arrow_ids()
            .map(|a| {
                let (s, t) = self.endpoints(a);
                Matrix::zeros(dims[s], dims[t], self.p)
            })
            .collect();
        (
            Representation { p: self.p, dims, maps },
            RepMap { maps: incl },
        )
    }

    fn socle_dims(&self, rep: &Representation) -> Vec<usize> {
        self.socle_rep(rep).0.dims
    }

    /// Dimension of `E(soc rep)` at each vertex.
    fn envelope_dims(&self, soc: &[usize]) -> Vec<usize> {
        (0..self.n())
            .map(|u| (0..self.n()).map(|w| soc[w] * self.paths[u][w].len()).sum())
            .collect()
    }

    /// `E(soc rep)` with an embedding extending a socle isomorphism. Each
    /// socle basis vector `s_j` at `w` gets a functional `phi_j` on `rep_w`
    /// with `phi_j(s_i) = delta_ij`; then `m` maps to `q -> phi_j(m q)` in
    /// the copy of `E(w)` belonging to `s_j`.
    pub fn envelope_embed(&self, rep: &Representation) -> Result<(Representation, RepMap)> {
        let (_, incl) = self.socle_rep(rep);
        let mut copies: Vec<(usize, Matrix)> = Vec::new();
        for (w, basis) in incl.maps.iter().enumerate() {
            if basis.rows == 0 {
                continue;
            }
            let (_, pivots) = basis.rref();
            let inv = basis
                .select_columns(&pivots)
                .inverse()
                .ok_or_else(|| Error::Invariant("socle basis not independent".into()))?;
            let mut phi = Matrix::zeros(basis.cols, basis.rows, self.p);
            for (i, &c) in pivots.iter().enumerate() {
                for j in 0..basis.rows {
                    phi.set(c, j, inv.get(i, j));
                }
            }
            for j in 0..basis.rows {
                copies.push((w, phi.select_columns(&[j])));
            }
        }
        let mut offsets = vec![Vec::with_capacity(copies.len()); self.n()];
        let mut dims = vec![0usize; self.n()];
        for &(w, _) in &copies {
            for u in 0..self.n() {
                offsets[u].push(dims[u]);
                dims[u] += self.paths[u][w].len();
            }
        }
        let injectives: HashMap<usize, Representation> = copies
            .iter()
            .map(|&(w, _)| w)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|w| Ok((w, self.injective_rep(VertexId(w as u32 + 1))?)))
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        for a in self.bq.quiver.arrow_ids() {
            let (s, t) = self.endpoints(a);
            let mut m = Matrix::zeros(dims[s], dims[t], self.p);
            for (k, &(w, _)) in copies.iter().enumerate() {
                let block = &injectives[&w].maps[a.index()];
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        m.set(offsets[s][k] + i, offsets[t][k] + j, block.get(i, j));
                    }
                }
            }
            maps.push(m);
        }
        let env = Representation { p: self.p, dims, maps }.check(self.bq)?;

        let mut emb = Vec::with_capacity(self.n());
        for u in 0..self.n() {
            let start = VertexId(u as u32 + 1);
            let mut m = Matrix::zeros(rep.dims[u], env.dims[u], self.p);
            for (k, (w, phi)) in copies.iter().enumerate() {
                for (qi, q) in self.paths[u][*w].iter().enumerate() {
                    let col = rep.path_action(start, q).mul(phi);
                    for i in 0..rep.dims[u] {
                        m.set(i, offsets[u][k] + qi, col.get(i, 0));
                    }
                }
            }
            emb.push(m);
        }
        let emb = RepMap { maps: emb };
        if !emb.commutes(self.bq, rep, &env) {
            return Err(Error::Invariant("envelope embedding does not commute".into()));
        }
        if !emb.is_injective() {
            return Err(Error::Invariant("envelope embedding is not injective".into()));
        }
        Ok((env, emb))
    }

    /// Cokernel of the envelope embedding. The quotient basis is the set of
    /// standard basis vectors of `E` outside the pivot columns of the image.
    pub fn cosyzygy_rep(&self, rep: &Representation) -> Result<Representation> {
        let (env, emb) = self.envelope_embed(rep)?;
        let mut reduced = Vec::with_capacity(self.n());
        let mut free = Vec::with_capacity(self.n());
        for u in 0..self.n() {
            let (r, pivots) = emb.maps[u].rref();
            let f: Vec<usize> = (0..env.dims[u]).filter(|c| !pivots.contains(c)).collect();
            reduced.push((r, pivots));
            free.push(f);
        }
        let reduce = |u: usize, x: &mut Vec<FieldElement>| {
            let (r, pivots) = &reduced[u];
            for (i, &c) in pivots.iter().enumerate() {
                let f = x[c];
                if f == 0 {
                    continue;
                }
                for (j, xj) in x.iter_mut().enumerate() {
                    let sub = (f as u64 * r.get(i, j) as u64 % self.p as u64) as u32;
                    *xj = (*xj + self.p - sub) % self.p;
                }
            }
        };
        let dims = free.iter().map(Vec::len).collect::<Vec<_>>();
        let mut maps = Vec::new();
        for a in self.bq.quiver.arrow_ids() {
            let (s, t) = self.endpoints(a);
            let ea = &env.maps[a.index()];
            let mut m = Matrix::zeros(dims[s], dims[t], self.p);
            for (i, &c) in free[s].iter().enumerate() {
                let mut x = ea.row(c).to_vec();
                reduce(t, &mut x);
                for (j, &fc) in free[t].iter().enumerate() {
                    m.set(i, j, x[fc]);
                }
            }
            maps.push(m);
        }
        Representation { p: self.p, dims, maps }.check(self.bq)
    }

    /// True iff `E(soc rep)` has the dimension of `rep`.
    pub fn is_injective_rep(&self, rep: &Representation) -> bool {
        self.envelope_dims(&self.socle_dims(rep)) == rep.dims
    }

    /// `℧_0 = rep` up to `℧_upto`, stopping after the first zero term.
    /// Each term is kept as distinct blocks with multiplicities.
    pub fn coresolution(&self, rep: &Representation, upto: usize) -> Result<Vec<Cosyzygy>> {
        let mut out = vec![Cosyzygy::from_blocks(rep.blocks(self.bq), 1)];
        while out.len() <= upto && !out.last().unwrap().is_zero() {
            let next = self.next_term(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    fn next_term(&self, term: &Cosyzygy) -> Result<Cosyzygy> {
        let mut next = Cosyzygy::default();
        for (block, mult) in &term.blocks {
            if self.is_injective_rep(block) {
                continue;
            }
            for b in self.cosyzygy_rep(block)?.blocks(self.bq) {
                next.add(b, *mult);
            }
        }
        Ok(next)
    }

    /// Least `n <= cutoff` with `℧_n` injective.
    pub fn inj_dim_upto(&self, rep: &Representation, cutoff: usize) -> Result<OracleDim> {
        let mut term = Cosyzygy::from_blocks(rep.blocks(self.bq), 1);
        for n in 0..=cutoff {
            if term.blocks.iter().all(|(b, _)| self.is_injective_rep(b)) {
                return Ok(OracleDim::Finite(n));
            }
            if n < cutoff {
                term = self.next_term(&term)?;
            }
        }
        Ok(OracleDim::AtLeast(cutoff))
    }

    /// Oracle inj.dim of every indecomposable projective.
    pub fn projective_dims(&self, cutoff: usize) -> Result<BTreeMap<VertexId, OracleDim>> {
        self.bq
            .quiver
            .vertices()
            .map(|v| Ok((v, self.inj_dim_upto(&self.projective_rep(v)?, cutoff)?)))
            .collect()
    }
}
