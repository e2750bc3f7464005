//! Modified Robinson–Schensted algorithm computing the partition `p(f)` of the
//! primitive ideal `I(f)` of `U(sl(n))` for a finite weight `f`.
//!
//! The input is shifted to `f⁺ = (f(1), f(2)-1, ..., f(n)-n+1)`, split into
//! integrality classes, and each class is Schensted-inserted under the order
//! `▷`: offsets compare as usual and among equal offsets the later position
//! is larger. Insertion runs against the reversed order, so rows are strictly
//! `▷`-decreasing and the first row has the length of a longest strictly
//! decreasing subsequence. The class shapes are merged by multiset union of
//! their parts.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::parse::{Cursor, ParseError};
use crate::scalars::{ClassKey, ScalarValue};

/// Weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn corank(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.size() - self.corank()
    }

    pub fn conjugate(&self) -> Partition {
        let Some(&first) = self.0.first() else {
            return Partition::default();
        };
        Partition(
            (1..=first)
                .map(|i| self.0.iter().take_while(|&&p| p >= i).count())
                .collect(),
        )
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::new(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let p = parse_partition_from(&mut cur)?;
        cur.expect_end()?;
        Ok(p)
    }
}

/// An entry of `f⁺` remembered with its original position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedEntry {
    pub value: ScalarValue,
    pub position: usize,
}

impl TaggedEntry {
    fn key(&self) -> (Rational64, usize) {
        (self.value.offset(), self.position)
    }

    /// The order `▷` inside one integrality class.
    pub fn cmp_within_class(&self, other: &TaggedEntry) -> Ordering {
        debug_assert!(self.value.int_congruent(&other.value));
        self.key().cmp(&other.key())
    }
}

/// Insertion tableau with strictly `▷`-decreasing rows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<TaggedEntry>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<TaggedEntry>] {
        &self.rows
    }

    pub fn insert(&mut self, entry: TaggedEntry) {
        let mut carry = entry;
        for row in &mut self.rows {
            // rows are decreasing: find the leftmost entry ▷-smaller than carry
            let slot = row.partition_point(|e| e.cmp_within_class(&carry) == Ordering::Greater);
            if slot == row.len() {
                row.push(carry);
                return;
            }
            carry = std::mem::replace(&mut row[slot], carry);
        }
        self.rows.push(vec![carry]);
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect())
    }
}

pub fn f_plus(f: &[ScalarValue]) -> Vec<ScalarValue> {
    f.iter()
        .enumerate()
        .map(|(i, v)| v.shift(-(i as i64)))
        .collect()
}

pub fn f_sharp(f: &[ScalarValue]) -> Vec<ScalarValue> {
    f.iter()
        .enumerate()
        .map(|(i, v)| v.shift(i as i64))
        .collect()
}

/// Integrality classes of `g` as lists of positions, in order of first occurrence.
pub fn class_positions(g: &[ScalarValue]) -> Vec<Vec<usize>> {
    let mut index: HashMap<ClassKey, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, v) in g.iter().enumerate() {
        let slot = *index.entry(v.class_key()).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[slot].push(i);
    }
    classes
}

/// The subsequences `seq_1(g), ..., seq_t(g)`.
pub fn class_split(g: &[ScalarValue]) -> Vec<Vec<ScalarValue>> {
    class_positions(g)
        .into_iter()
        .map(|class| class.into_iter().map(|i| g[i].clone()).collect())
        .collect()
}

/// Insertion tableaux of the classes of `f⁺`, in order of first occurrence.
pub fn class_tableaux(f: &[ScalarValue]) -> Vec<Tableau> {
    let plus = f_plus(f);
    class_positions(&plus)
        .into_iter()
        .map(|class| {
            let mut t = Tableau::default();
            for position in class {
                t.insert(TaggedEntry {
                    value: plus[position].clone(),
                    position,
                });
            }
            t
        })
        .collect()
}

pub fn modified_rs(f: &[ScalarValue]) -> Partition {
    class_tableaux(f)
        .iter()
        .fold(Partition::default(), |acc, t| acc.union(&t.shape()))
}

/// Longest strictly decreasing subsequence of `f⁺` inside one integrality
/// class, by quadratic dynamic programming.
pub fn lds_oracle(f: &[ScalarValue]) -> usize {
    let plus = f_plus(f);
    let mut best = vec![1usize; plus.len()];
    for j in 0..plus.len() {
        for i in 0..j {
            if plus[i].compare(&plus[j]) == Some(Ordering::Greater)
                && plus[i].int_congruent(&plus[j])
            {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// `(seq_1(f⁺), ..., seq_t(f⁺))^#`.
pub fn class_rearrange(f: &[ScalarValue]) -> Vec<ScalarValue> {
    let concatenated: Vec<ScalarValue> = class_split(&f_plus(f)).into_iter().flatten().collect();
    f_sharp(&concatenated)
}

/// Shape of the modified RS algorithm printed as `(a,b,...) corank=c rank=r`.
pub fn rs_summary(f: &[ScalarValue]) -> String {
    let p = modified_rs(f);
    format!("{} corank={} rank={}", p, p.corank(), p.rank())
}

pub(crate) fn parse_partition_from(cur: &mut Cursor<'_>) -> Result<Partition, ParseError> {
    cur.expect("(")?;
    let mut parts = Vec::new();
    if !cur.eat(")") {
        loop {
            parts.push(cur.unsigned()? as usize);
            if cur.eat(")") {
                break;
            }
            cur.expect(",")?;
        }
    }
    Ok(Partition::new(parts))
}
