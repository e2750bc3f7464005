//! Level sets of c.l.s. at finite rank: sets of dominant `sl(n)` weights,
//! Cartan products, Gelfand–Tsetlin branching and the coherence oracle.
//!
//! Weights are stored as partitions with at most `n - 1` nonzero parts (the
//! `n`-th coordinate is 0). The degree of a weight is the size of this
//! partition; it is additive under Cartan products and never grows under
//! branching, which is what makes degree-capped enumeration of `L^∞`/`R^∞`
//! levels exact below the cap.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::cls::{Basic, ClsCanonical};
use crate::tableaux::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("E^inf has no finite level sets")]
    EInfinityNotEnumerable,
    #[error("rank must be at least {min}, got {got}")]
    RankTooSmall { min: usize, got: usize },
    #[error("weight {0:?} has more than n-1 nonzero parts or is not weakly decreasing")]
    NotDominant(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    rank: usize,
    parts: Vec<u64>,
}

impl DominantWeight {
    pub fn trivial(rank: usize) -> Self {
        DominantWeight {
            rank,
            parts: Vec::new(),
        }
    }

    /// A weight from its first `n - 1` (or all `n`) coordinates; a nonzero
    /// last coordinate is subtracted from every coordinate.
    pub fn new(rank: usize, coords: &[u64]) -> Result<Self, LevelError> {
        let not_dominant = || LevelError::NotDominant(coords.to_vec());
        if coords.len() > rank || coords.windows(2).any(|w| w[0] < w[1]) {
            return Err(not_dominant());
        }
        let shift = if coords.len() == rank {
            *coords.last().unwrap_or(&0)
        } else {
            0
        };
        let parts: Vec<u64> = coords
            .iter()
            .map(|&c| c - shift)
            .filter(|&c| c > 0)
            .collect();
        if parts.len() >= rank.max(1) {
            return Err(not_dominant());
        }
        Ok(DominantWeight { rank, parts })
    }

    /// Normalizes gl-coordinates of length `rank` (weakly decreasing, last
    /// coordinate arbitrary) by subtracting the last coordinate.
    fn from_gl(rank: usize, coords: &[u64]) -> Self {
        let last = coords.last().copied().unwrap_or(0);
        DominantWeight {
            rank,
            parts: coords
                .iter()
                .map(|&c| c - last)
                .take_while(|&c| c > 0)
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    /// All `n` gl-coordinates, the last one 0.
    pub fn coords(&self) -> Vec<u64> {
        let mut c = self.parts.clone();
        c.resize(self.rank, 0);
        c
    }

    /// Highest weight of the dual module.
    pub fn dual(&self) -> DominantWeight {
        let c = self.coords();
        let top = c[0];
        let rev: Vec<u64> = c.iter().rev().map(|&x| top - x).collect();
        DominantWeight::from_gl(self.rank, &rev)
    }

    pub fn as_partition(&self) -> Partition {
        Partition::new(self.parts.iter().map(|&p| p as usize).collect())
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        let shown: Vec<String> = c[..self.rank.saturating_sub(1).max(1).min(c.len())]
            .iter()
            .map(u64::to_string)
            .collect();
        write!(f, "({})", shown.join(","))
    }
}

pub fn cartan_mul(a: &DominantWeight, b: &DominantWeight) -> Result<DominantWeight, LevelError> {
    if a.rank != b.rank {
        return Err(LevelError::RankMismatch(a.rank, b.rank));
    }
    let (long, short) = if a.parts.len() >= b.parts.len() {
        (a, b)
    } else {
        (b, a)
    };
    let mut parts = long.parts.clone();
    for (p, q) in parts.iter_mut().zip(&short.parts) {
        *p += q;
    }
    Ok(DominantWeight {
        rank: a.rank,
        parts,
    })
}

/// A finite set of weights of one rank. A capped set is the part of degree
/// at most `cap` of a possibly infinite level set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    rank: usize,
    cap: Option<u64>,
    elems: BTreeSet<DominantWeight>,
}

impl WeightSet {
    pub fn new(
        rank: usize,
        cap: Option<u64>,
        elems: impl IntoIterator<Item = DominantWeight>,
    ) -> Result<Self, LevelError> {
        let mut set = WeightSet {
            rank,
            cap,
            elems: BTreeSet::new(),
        };
        for w in elems {
            if w.rank != rank {
                return Err(LevelError::RankMismatch(rank, w.rank));
            }
            if cap.is_none_or(|c| w.degree() <= c) {
                set.elems.insert(w);
            }
        }
        Ok(set)
    }

    pub fn trivial(rank: usize) -> Self {
        WeightSet {
            rank,
            cap: None,
            elems: BTreeSet::from([DominantWeight::trivial(rank)]),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> Option<u64> {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, w: &DominantWeight) -> bool {
        self.elems.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &DominantWeight> {
        self.elems.iter()
    }

    /// Restriction to degree at most `cap`.
    pub fn truncate(&self, cap: u64) -> WeightSet {
        WeightSet {
            rank: self.rank,
            cap: Some(self.cap.map_or(cap, |c| c.min(cap))),
            elems: self
                .elems
                .iter()
                .filter(|w| w.degree() <= cap)
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elems.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

fn min_cap(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub fn set_mul(a: &WeightSet, b: &WeightSet) -> Result<WeightSet, LevelError> {
    if a.rank != b.rank {
        return Err(LevelError::RankMismatch(a.rank, b.rank));
    }
    let cap = min_cap(a.cap, b.cap);
    let mut elems = BTreeSet::new();
    for x in &a.elems {
        for y in &b.elems {
            if cap.is_none_or(|c| x.degree() + y.degree() <= c) {
                elems.insert(cartan_mul(x, y)?);
            }
        }
    }
    Ok(WeightSet {
        rank: a.rank,
        cap,
        elems,
    })
}

fn column(rank: usize, height: usize) -> DominantWeight {
    DominantWeight::from_gl(
        rank,
        &(0..rank).map(|i| u64::from(i < height)).collect::<Vec<_>>(),
    )
}

/// Partitions with at most `rows` parts, each at most `width`.
fn box_partitions(rows: usize, width: u64) -> Vec<Vec<u64>> {
    fn go(rows: usize, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        if cur.len() == rows {
            return;
        }
        for x in 1..=max {
            cur.push(x);
            go(rows, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, width, &mut Vec::new(), &mut out);
    out
}

fn check_rank(n: usize, min: usize) -> Result<(), LevelError> {
    if n < min {
        Err(LevelError::RankTooSmall { min, got: n })
    } else {
        Ok(())
    }
}

/// Level set at rank `n` of a basic c.l.s. `L^∞`/`R^∞` levels are truncated at
/// degree `cap`; the other symbols have finite level sets and ignore `cap`.
pub fn basic_level(sym: Basic, n: usize, cap: u64) -> Result<WeightSet, LevelError> {
    check_rank(n, 2)?;
    let (cap, elems): (Option<u64>, Vec<DominantWeight>) = match sym {
        Basic::E => (None, (0..n).map(|j| column(n, j)).collect()),
        Basic::L(p) => (
            None,
            (0..=(p as usize).min(n - 1))
                .map(|j| column(n, j))
                .collect(),
        ),
        Basic::R(q) => (
            None,
            (0..=(q as usize).min(n))
                .map(|j| column(n, n - j))
                .collect(),
        ),
        Basic::LInf(p) => (
            Some(cap),
            box_partitions((p as usize).min(n - 1), cap)
                .into_iter()
                .map(|parts| DominantWeight { rank: n, parts })
                .collect(),
        ),
        Basic::RInf(q) => (
            Some(cap),
            box_partitions((q as usize).min(n - 1), cap)
                .into_iter()
                .map(|parts| DominantWeight { rank: n, parts }.dual())
                .collect(),
        ),
    };
    WeightSet::new(n, cap, elems)
}

/// Level set at rank `n`, exact for finite type and truncated at `cap` otherwise.
pub fn cls_level(q: &ClsCanonical, n: usize, cap: u64) -> Result<WeightSet, LevelError> {
    if q.is_e_infinity() {
        return Err(LevelError::EInfinityNotEnumerable);
    }
    check_rank(n, 2)?;
    let mut acc = WeightSet::trivial(n);
    for (sym, k) in q.factors() {
        let level = basic_level(sym, n, cap)?;
        for _ in 0..k {
            acc = set_mul(&acc, &level)?;
        }
    }
    Ok(acc)
}

/// Restriction from `sl(n)` to `sl(n-1)`: every interlacing pattern,
/// renormalized.
pub fn branch(w: &DominantWeight) -> Result<WeightSet, LevelError> {
    check_rank(w.rank, 3)?;
    let lam = w.coords();
    let m = w.rank - 1;
    let mut elems = BTreeSet::new();
    let mut mu = vec![0u64; m];
    fn go(i: usize, lam: &[u64], mu: &mut Vec<u64>, out: &mut BTreeSet<DominantWeight>) {
        if i == mu.len() {
            out.insert(DominantWeight::from_gl(mu.len(), mu));
            return;
        }
        for x in lam[i + 1]..=lam[i] {
            mu[i] = x;
            go(i + 1, lam, mu, out);
        }
    }
    go(0, &lam, &mut mu, &mut elems);
    Ok(WeightSet {
        rank: m,
        cap: None,
        elems,
    })
}

/// Dimension of the simple `sl(n)`-module via the hook-content formula.
pub fn weyl_dim(w: &DominantWeight) -> u128 {
    let p = w.as_partition();
    let conj = p.conjugate();
    let n = w.rank as i128;
    let (mut num, mut den) = (1i128, 1i128);
    for (i, &row) in p.parts().iter().enumerate() {
        for j in 0..row {
            let content = j as i128 - i as i128;
            let hook = (row - j) + (conj.parts()[j] - i) - 1;
            num *= n + content;
            den *= hook as i128;
        }
    }
    (num / den) as u128
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceReport {
    pub rank: usize,
    /// `None` for an exact comparison of finite level sets.
    pub cap: Option<u64>,
    pub upper_size: usize,
    pub lower_size: usize,
    /// Branching images missing from the level set at rank `n - 1`.
    pub extra: Vec<DominantWeight>,
    /// Weights of the rank `n - 1` level set that no branching image reaches.
    pub missing: Vec<DominantWeight>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty()
    }
}

impl fmt::Display for CoherenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_coherent() {
            "coherent"
        } else {
            "incoherent"
        };
        let cap = self.cap.map_or("exact".to_string(), |c| format!("cap={c}"));
        write!(
            f,
            "{verdict} n={} {cap} upper={} lower={}",
            self.rank, self.upper_size, self.lower_size
        )?;
        let list = |ws: &[DominantWeight]| {
            ws.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        if !self.extra.is_empty() {
            write!(f, " extra={{{}}}", list(&self.extra))?;
        }
        if !self.missing.is_empty() {
            write!(f, " missing={{{}}}", list(&self.missing))?;
        }
        Ok(())
    }
}

/// Compares the branching of the level set at rank `n` with the level set at
/// rank `n - 1`.
///
/// Finite type is compared exactly. Otherwise the comparison is degree-safe:
/// branching images of degree-`≤ cap` weights must lie in the capped lower
/// set, and every lower weight of degree `≤ cap` must be reached from some
/// weight of degree `≤ 2 cap` (a preimage of a degree-`d` weight under
/// branching never needs more than degree `2d` for any basic factor).
pub fn coherence_check(
    q: &ClsCanonical,
    n: usize,
    cap: u64,
) -> Result<CoherenceReport, LevelError> {
    if q.is_e_infinity() {
        return Err(LevelError::EInfinityNotEnumerable);
    }
    check_rank(n, 3)?;
    let finite = q.is_finite_type();
    let upper = cls_level(q, n, cap.saturating_mul(2))?;
    let lower = cls_level(q, n - 1, cap)?;
    let mut images = BTreeSet::new();
    let mut extra = BTreeSet::new();
    for w in upper.iter() {
        for v in branch(w)?.iter() {
            if (finite || w.degree() <= cap) && !lower.contains(v) {
                extra.insert(v.clone());
            }
            images.insert(v.clone());
        }
    }
    let missing = lower
        .iter()
        .filter(|v| !images.contains(*v))
        .cloned()
        .collect();
    Ok(CoherenceReport {
        rank: n,
        cap: (!finite).then_some(cap),
        upper_size: upper.len(),
        lower_size: lower.len(),
        extra: extra.into_iter().collect(),
        missing,
    })
}
