//! Randomized and exhaustive property sweeps.
//!
//! Every trial derives its own ChaCha stream from `(seed, trial)`, so a sweep
//! produces the same inputs and the same report whether it runs on the rayon
//! pool or sequentially.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cls::{cls_of_dominant, duflo_function, Basic, ClsCanonical};
use crate::levels::coherence_check;
use crate::orders::{BorelOrder, FunctionSpec};
use crate::scalars::{format_values, Label, ScalarValue};
use crate::tableaux::{class_rearrange, lds_oracle, modified_rs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Exec::Parallel;
        #[cfg(not(feature = "parallel"))]
        return Exec::Sequential;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn collect_failures<T, F>(exec: Exec, items: &[T], check: F) -> SweepReport
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    let failures = match exec {
        Exec::Sequential => items.iter().filter_map(check).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => items.par_iter().filter_map(check).collect(),
    };
    SweepReport {
        cases: items.len(),
        failures,
    }
}

const CLASS_LABELS: [&str; 3] = ["", "r2", "tau"];

/// Random finite input for trial `trial`: length 1..=10, one to three
/// integrality classes, integer offsets in `-4..=4`.
pub fn random_input(seed: u64, trial: u64) -> Vec<ScalarValue> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let n = rng.random_range(1..=10);
    let classes = rng.random_range(1..=CLASS_LABELS.len());
    (0..n)
        .map(|_| {
            let label = CLASS_LABELS[rng.random_range(0..classes)];
            let offset = rng.random_range(-4..=4);
            if label.is_empty() {
                ScalarValue::int(offset)
            } else {
                ScalarValue::new(Label::named(label), offset.into())
            }
        })
        .collect()
}

pub fn random_corpus(seed: u64, trials: u64) -> Vec<Vec<ScalarValue>> {
    (0..trials).map(|t| random_input(seed, t)).collect()
}

/// `corank(modified_rs(f)) == lds_oracle(f)`.
pub fn corank_sweep(corpus: &[Vec<ScalarValue>], exec: Exec) -> SweepReport {
    collect_failures(exec, corpus, |f| {
        let (corank, lds) = (modified_rs(f).corank(), lds_oracle(f));
        (corank != lds).then(|| format!("{}: corank {corank} vs lds {lds}", format_values(f)))
    })
}

/// `modified_rs(class_rearrange(f)) == modified_rs(f)`.
pub fn rearrangement_sweep(corpus: &[Vec<ScalarValue>], exec: Exec) -> SweepReport {
    collect_failures(exec, corpus, |f| {
        let (a, b) = (modified_rs(f), modified_rs(&class_rearrange(f)));
        (a != b).then(|| format!("{}: {a} vs {b}", format_values(f)))
    })
}

/// `integrality_defect(f) <= rank(modified_rs(f))`.
pub fn defect_rank_sweep(corpus: &[Vec<ScalarValue>], exec: Exec) -> SweepReport {
    collect_failures(exec, corpus, |f| {
        let defect = FunctionSpec::finite(f.clone())
            .integrality_defect()
            .size()
            .expect("finite functions have finite defect");
        let rank = modified_rs(f).rank();
        (defect > rank).then(|| format!("{}: defect {defect} > rank {rank}", format_values(f)))
    })
}

/// Factor lists for one side: none, a single index with exponent 1..=3, or
/// two distinct indices with exponent 1, indices in `1..=max_index`.
fn side_choices(max_index: u64) -> Vec<Vec<(u64, u64)>> {
    let mut out = vec![Vec::new()];
    for i in 1..=max_index {
        for k in 1..=3 {
            out.push(vec![(i, k)]);
        }
    }
    for i in 1..=max_index {
        for j in i + 1..=max_index {
            out.push(vec![(i, 1), (j, 1)]);
        }
    }
    out
}

/// Finite-type canonical forms with indices `<= 6`, exponents `<= 3` and
/// `E`-power `<= 3`.
pub fn finite_type_family() -> Vec<ClsCanonical> {
    let sides = side_choices(6);
    let mut out = Vec::new();
    for left in &sides {
        for m in 0..=3 {
            for right in &sides {
                out.push(ClsCanonical::from_parts(
                    0,
                    left.clone(),
                    m,
                    0,
                    right.clone(),
                ));
            }
        }
    }
    out
}

/// `cls_of_dominant(duflo_function(Q, o)) == Q` over `family`.
pub fn duflo_sweep(family: &[ClsCanonical], order: &BorelOrder, exec: Exec) -> SweepReport {
    collect_failures(exec, family, |q| {
        let g = match duflo_function(q, order) {
            Ok(g) => g,
            Err(e) => return Some(format!("{q} on {order}: {e}")),
        };
        match cls_of_dominant(&g) {
            Ok(back) if back == *q && g.order() == *order => None,
            Ok(back) => Some(format!("{q} on {order}: {g} gives {back}")),
            Err(e) => Some(format!("{q} on {order}: {g} rejected: {e}")),
        }
    })
}

/// Every basic c.l.s. with index `<= max_index`.
pub fn basic_family(max_index: u64) -> Vec<ClsCanonical> {
    let mut out = vec![ClsCanonical::basic(Basic::E)];
    for k in 1..=max_index {
        for b in [Basic::L(k), Basic::R(k), Basic::LInf(k), Basic::RInf(k)] {
            out.push(ClsCanonical::basic(b));
        }
    }
    out
}

/// `coherence_check(Q, n, cap)` for every `Q` in `family` and every `n` in `ranks`.
pub fn coherence_sweep(
    family: &[ClsCanonical],
    ranks: &[usize],
    cap: u64,
    exec: Exec,
) -> SweepReport {
    let cases: Vec<(&ClsCanonical, usize)> = family
        .iter()
        .flat_map(|q| ranks.iter().map(move |&n| (q, n)))
        .collect();
    collect_failures(exec, &cases, |&(q, n)| match coherence_check(q, n, cap) {
        Ok(report) if report.is_coherent() => None,
        Ok(report) => Some(format!("{q}: {report}")),
        Err(e) => Some(format!("{q} at n={n}: {e}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible() {
        assert_eq!(random_input(7, 3), random_input(7, 3));
        assert_ne!(random_corpus(7, 20), random_corpus(8, 20));
        let corpus = random_corpus(1, 500);
        assert!(corpus.iter().all(|f| (1..=10).contains(&f.len())));
        assert!(corpus
            .iter()
            .any(|f| f.iter().any(|v| !v.label().is_rational())));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(side_choices(6).len(), 34);
        assert_eq!(finite_type_family().len(), 34 * 34 * 4);
        assert_eq!(basic_family(2).len(), 9);
    }

    #[test]
    fn sequential_and_default_agree() {
        let corpus = random_corpus(11, 300);
        for sweep in [corank_sweep, rearrangement_sweep, defect_rank_sweep] {
            let a = sweep(&corpus, Exec::Sequential);
            let b = sweep(&corpus, Exec::default());
            assert_eq!(a, b);
            assert!(a.passed(), "{:?}", a.failures);
        }
    }
}
