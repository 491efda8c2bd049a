//! Strings over a string algebra and the combinatorial data of their modules.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{ArrowId, StringAlgebra, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inverse(arrow: ArrowId) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn flipped(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn source(self, alg: &StringAlgebra) -> VertexId {
        if self.inverse {
            alg.target(self.arrow)
        } else {
            alg.source(self.arrow)
        }
    }

    pub fn target(self, alg: &StringAlgebra) -> VertexId {
        if self.inverse {
            alg.source(self.arrow)
        } else {
            alg.target(self.arrow)
        }
    }

    /// Total order used for canonical orientation: arrow id first, then
    /// direct before inverse.
    fn key(self) -> (ArrowId, bool) {
        (self.arrow, self.inverse)
    }
}

/// A walk of letters starting at `base`. The trivial word at `v` has no
/// letters and `base = v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StringWord {
    pub base: VertexId,
    pub letters: Vec<Letter>,
}

/// The canonical representative of `{s, s^-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct StringClass(StringWord);

impl StringClass {
    pub fn word(&self) -> &StringWord {
        &self.0
    }

    pub fn into_word(self) -> StringWord {
        self.0
    }
}

/// Dimension at each vertex, keyed by vertex id; zero entries are omitted.
pub type DimensionVector = BTreeMap<VertexId, usize>;

impl StringWord {
    pub fn trivial(v: VertexId) -> Self {
        StringWord {
            base: v,
            letters: Vec::new(),
        }
    }

    /// The direct word of a nonempty composable path.
    pub fn path(alg: &StringAlgebra, path: &[ArrowId]) -> Self {
        StringWord {
            base: alg.source(path[0]),
            letters: path.iter().map(|&a| Letter::direct(a)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for a trivial string `e_v`.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    /// Vertices at the `len + 1` basis positions.
    pub fn vertices(&self, alg: &StringAlgebra) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        out.push(self.base);
        for l in &self.letters {
            out.push(l.target(alg));
        }
        out
    }

    pub fn end(&self, alg: &StringAlgebra) -> VertexId {
        self.letters.last().map_or(self.base, |l| l.target(alg))
    }

    pub fn inverse(&self, alg: &StringAlgebra) -> StringWord {
        StringWord {
            base: self.end(alg),
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    /// Concatenation `self · other`; `other` must start where `self` ends.
    pub fn concat(&self, alg: &StringAlgebra, other: &StringWord) -> StringWord {
        debug_assert_eq!(self.end(alg), other.base);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        StringWord {
            base: self.base,
            letters,
        }
    }

    pub fn render(&self, alg: &StringAlgebra) -> String {
        if self.letters.is_empty() {
            return format!("e_{}", self.base);
        }
        self.letters
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", alg.label(l.arrow))
                } else {
                    alg.label(l.arrow).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the rendering produced by [`StringWord::render`].
    pub fn parse(alg: &StringAlgebra, text: &str) -> Result<StringWord> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            let v = v
                .parse::<u32>()
                .map(VertexId)
                .map_err(|_| Error::InvalidString(text.to_string()))?;
            alg.check_vertex(v)?;
            return Ok(StringWord::trivial(v));
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (label, inverse) = match tok.strip_suffix("^-1") {
                Some(l) => (l, true),
                None => (tok, false),
            };
            let arrow = alg
                .quiver
                .arrow_by_label(label)
                .ok_or_else(|| Error::InvalidString(format!("unknown label {label}")))?;
            letters.push(Letter { arrow, inverse });
        }
        let first = *letters
            .first()
            .ok_or_else(|| Error::InvalidString("empty word".into()))?;
        Ok(StringWord {
            base: first.source(alg),
            letters,
        })
    }
}

fn check_letters(alg: &StringAlgebra, word: &StringWord) -> Result<()> {
    alg.check_vertex(word.base)?;
    for l in &word.letters {
        alg.check_arrow(l.arrow)?;
    }
    Ok(())
}

/// Whether `word` is a string: composable, reduced, and no direct run (or
/// inverse run read backwards) contains a generator.
pub fn is_valid_string(alg: &StringAlgebra, word: &StringWord) -> Result<bool> {
    check_letters(alg, word)?;
    let Some(first) = word.letters.first() else {
        return Ok(true);
    };
    if first.source(alg) != word.base {
        return Ok(false);
    }
    for w in word.letters.windows(2) {
        if w[0].target(alg) != w[1].source(alg) {
            return Ok(false);
        }
        if w[0].arrow == w[1].arrow && w[0].inverse != w[1].inverse {
            return Ok(false);
        }
    }
    for run in direct_runs(word) {
        if !alg.is_nonzero(&run) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximal runs of equal direction, each as the path it traverses.
fn direct_runs(word: &StringWord) -> Vec<Vec<ArrowId>> {
    let mut runs = Vec::new();
    for chunk in word.letters.chunk_by(|a, b| a.inverse == b.inverse) {
        let mut path: Vec<ArrowId> = chunk.iter().map(|l| l.arrow).collect();
        if chunk[0].inverse {
            path.reverse();
        }
        runs.push(path);
    }
    runs
}

fn ensure_valid(alg: &StringAlgebra, word: &StringWord) -> Result<()> {
    if is_valid_string(alg, word)? {
        Ok(())
    } else {
        Err(Error::InvalidString(word.render(alg)))
    }
}

fn compare_letters(a: &[Letter], b: &[Letter]) -> Ordering {
    a.iter().map(|l| l.key()).cmp(b.iter().map(|l| l.key()))
}

/// Orientation-independent representative: the lexicographically smaller
/// of `word` and its inverse. A string never equals its own inverse, so the
/// choice is strict.
pub fn canonicalize(alg: &StringAlgebra, word: &StringWord) -> Result<StringClass> {
    ensure_valid(alg, word)?;
    Ok(canonical_unchecked(alg, word))
}

pub(crate) fn canonical_unchecked(alg: &StringAlgebra, word: &StringWord) -> StringClass {
    let inv = word.inverse(alg);
    if compare_letters(&inv.letters, &word.letters) == Ordering::Less {
        StringClass(inv)
    } else {
        StringClass(word.clone())
    }
}

/// The word `arm1^-1 · arm2` through `v` for two paths starting at `v`, or
/// `arm1 · arm2^-1` for two paths ending at `v`; either arm may be empty.
fn two_arm_word(alg: &StringAlgebra, v: VertexId, left: &[ArrowId], right: &[ArrowId], out: bool) -> StringWord {
    let mut w = StringWord::trivial(v);
    if out {
        if !left.is_empty() {
            w = StringWord::path(alg, left).inverse(alg);
        }
        if !right.is_empty() {
            w = w.concat(alg, &StringWord::path(alg, right));
        }
    } else {
        if !left.is_empty() {
            w = StringWord::path(alg, left);
        }
        if !right.is_empty() {
            w = w.concat(alg, &StringWord::path(alg, right).inverse(alg));
        }
    }
    w
}

/// Maximal nonzero paths out of `v`, one per out-arrow in id order.
pub fn projective_arms(alg: &StringAlgebra, v: VertexId) -> Vec<Vec<ArrowId>> {
    alg.out_arrows(v).iter().map(|&o| alg.right_arm(o)).collect()
}

/// Maximal nonzero paths into `v`, one per in-arrow in id order.
pub fn injective_arms(alg: &StringAlgebra, v: VertexId) -> Vec<Vec<ArrowId>> {
    alg.in_arrows(v).iter().map(|&a| alg.left_arm(&[a])).collect()
}

/// The string of the indecomposable projective `P(v) = e_v A`.
pub fn projective_string(alg: &StringAlgebra, v: VertexId) -> Result<StringClass> {
    alg.check_vertex(v)?;
    let arms = projective_arms(alg, v);
    let (l, r) = match arms.as_slice() {
        [] => (&[][..], &[][..]),
        [a] => (&[][..], a.as_slice()),
        [a, b] => (a.as_slice(), b.as_slice()),
        _ => unreachable!("validated degree"),
    };
    Ok(canonical_unchecked(alg, &two_arm_word(alg, v, l, r, true)))
}

/// The string of the indecomposable injective `E(v)`.
pub fn injective_string(alg: &StringAlgebra, v: VertexId) -> Result<StringClass> {
    alg.check_vertex(v)?;
    let arms = injective_arms(alg, v);
    let (l, r) = match arms.as_slice() {
        [] => (&[][..], &[][..]),
        [a] => (a.as_slice(), &[][..]),
        [a, b] => (a.as_slice(), b.as_slice()),
        _ => unreachable!("validated degree"),
    };
    Ok(canonical_unchecked(alg, &two_arm_word(alg, v, l, r, false)))
}

/// Injective iff the socle is simple, at `w`, and the word is `E(w)`.
pub fn is_injective_module(alg: &StringAlgebra, word: &StringWord) -> Result<bool> {
    ensure_valid(alg, word)?;
    let soc = socle(alg, word)?;
    if soc.len() != 1 {
        return Ok(false);
    }
    Ok(canonical_unchecked(alg, word) == injective_string(alg, soc[0])?)
}

pub fn dim_vector(alg: &StringAlgebra, word: &StringWord) -> Result<DimensionVector> {
    ensure_valid(alg, word)?;
    let mut dv = DimensionVector::new();
    for v in word.vertices(alg) {
        *dv.entry(v).or_insert(0) += 1;
    }
    Ok(dv)
}

/// Position `i` is a source when no adjacent letter points into it; arrow
/// actions send the tail position of each letter to its head.
fn position_flags(word: &StringWord) -> Vec<(bool, bool)> {
    let n = word.letters.len();
    (0..=n)
        .map(|i| {
            let mut hit = false;
            let mut leaves = false;
            if i > 0 {
                if word.letters[i - 1].inverse {
                    leaves = true;
                } else {
                    hit = true;
                }
            }
            if i < n {
                if word.letters[i].inverse {
                    hit = true;
                } else {
                    leaves = true;
                }
            }
            (!hit, !leaves)
        })
        .collect()
}

/// Vertices at the top positions, with multiplicity, in word order.
pub fn top(alg: &StringAlgebra, word: &StringWord) -> Result<Vec<VertexId>> {
    ensure_valid(alg, word)?;
    let verts = word.vertices(alg);
    Ok(position_flags(word)
        .iter()
        .zip(verts)
        .filter(|(f, _)| f.0)
        .map(|(_, v)| v)
        .collect())
}

/// Vertices at the socle positions, with multiplicity, in word order.
pub fn socle(alg: &StringAlgebra, word: &StringWord) -> Result<Vec<VertexId>> {
    ensure_valid(alg, word)?;
    let verts = word.vertices(alg);
    Ok(position_flags(word)
        .iter()
        .zip(verts)
        .filter(|(f, _)| f.1)
        .map(|(_, v)| v)
        .collect())
}

pub fn is_directed(word: &StringWord) -> bool {
    word.letters.iter().all(|l| !l.inverse) || word.letters.iter().all(|l| l.inverse)
}

/// The path traversed by a directed word, read in arrow direction.
pub fn directed_path(word: &StringWord) -> Result<Vec<ArrowId>> {
    if !is_directed(word) {
        return Err(Error::NotDirected);
    }
    let mut p: Vec<ArrowId> = word.letters.iter().map(|l| l.arrow).collect();
    if word.letters.first().is_some_and(|l| l.inverse) {
        p.reverse();
    }
    Ok(p)
}

/// All valid strings with at most `max_len` letters, each class once.
pub fn enumerate_strings(alg: &StringAlgebra, max_len: usize) -> Vec<StringClass> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut frontier: Vec<StringWord> = alg.vertices().map(StringWord::trivial).collect();
    for len in 0..=max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let c = canonical_unchecked(alg, w);
            if seen.insert(c.clone()) {
                out.push(c);
            }
            if len == max_len {
                continue;
            }
            let end = w.end(alg);
            let cands = alg
                .out_arrows(end)
                .iter()
                .map(|&a| Letter::direct(a))
                .chain(alg.in_arrows(end).iter().map(|&a| Letter::inverse(a)));
            for l in cands {
                let mut ext = w.clone();
                ext.letters.push(l);
                if is_valid_string(alg, &ext).unwrap_or(false) {
                    next.push(ext);
                }
            }
        }
        frontier = next;
    }
    out
}
