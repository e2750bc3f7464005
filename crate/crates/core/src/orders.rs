//! Finitely presented linear orders on a countable index set and weight
//! functions on them.
//!
//! A [`FunctionSpec`] is a list of blocks concatenated in the order `≺`. Each
//! block is finite, of type ω (a copy of the positive integers), or of type ω*
//! (a copy of the negative integers). Infinite blocks carry either a constant
//! tail with finitely many exceptional values next to their end point, or an
//! arithmetic progression. Arithmetic blocks exist only to represent functions
//! that are not locally constant or not almost integral.
//!
//! Dominance is read as "non-increasing along `≺`".

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::parse::{Cursor, ParseError};
use crate::scalars::{fmt_rational, format_values, parse_value_list, ClassKey, ScalarValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("dominance is only defined for integral functions")]
    NonIntegralInput,
    #[error("function is not locally constant")]
    NotLocallyConstant,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Segment {
    Fin(Vec<ScalarValue>),
    /// `head` in `≺`-increasing order, then the constant `tail` forever.
    Omega {
        head: Vec<ScalarValue>,
        tail: ScalarValue,
    },
    /// `top[0]` sits at the `≺`-greatest position; below the listed values the
    /// constant `tail` continues downward forever.
    OmegaStar {
        top: Vec<ScalarValue>,
        tail: ScalarValue,
    },
    /// `base + (k-1) step` at the k-th position of an ω block.
    OmegaArith {
        base: ScalarValue,
        step: Rational64,
    },
    /// `base + (k-1) step` at the k-th position counted from the top of an ω* block.
    OmegaStarArith {
        base: ScalarValue,
        step: Rational64,
    },
}

impl Segment {
    fn shape(&self) -> BlockShape {
        match self {
            Segment::Fin(v) => BlockShape::Fin(v.len()),
            Segment::Omega { .. } | Segment::OmegaArith { .. } => BlockShape::Omega,
            Segment::OmegaStar { .. } | Segment::OmegaStarArith { .. } => BlockShape::OmegaStar,
        }
    }

    fn is_arith(&self) -> bool {
        matches!(
            self,
            Segment::OmegaArith { .. } | Segment::OmegaStarArith { .. }
        )
    }

    /// The finitely many listed values, with their index in the stored list,
    /// enumerated in `≺` order.
    fn explicit_in_order(&self) -> Vec<(usize, &ScalarValue)> {
        match self {
            Segment::Fin(v) | Segment::Omega { head: v, .. } => v.iter().enumerate().collect(),
            Segment::OmegaStar { top, .. } => top.iter().enumerate().rev().collect(),
            _ => Vec::new(),
        }
    }

    /// Value shared by infinitely many positions, with the step for arithmetic blocks.
    fn infinite_part(&self) -> Option<(&ScalarValue, Option<Rational64>)> {
        match self {
            Segment::Fin(_) => None,
            Segment::Omega { tail, .. } | Segment::OmegaStar { tail, .. } => Some((tail, None)),
            Segment::OmegaArith { base, step } | Segment::OmegaStarArith { base, step } => {
                Some((base, Some(*step)))
            }
        }
    }
}

/// A position holding one of the explicitly listed values of a normalized
/// [`FunctionSpec`]: segment index and index into that segment's value list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub segment: usize,
    pub index: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.segment, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionSpec {
    segments: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    Finite { size: usize, witness: Vec<Position> },
    Infinite,
}

impl Defect {
    pub fn size(&self) -> Option<usize> {
        match self {
            Defect::Finite { size, .. } => Some(*size),
            Defect::Infinite => None,
        }
    }
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::Infinite => f.write_str("inf"),
            Defect::Finite { size, .. } => write!(f, "{size}"),
        }
    }
}

/// A maximal interval on which the function is constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub shape: BorelOrder,
    pub value: ScalarValue,
}

impl Piece {
    pub fn is_infinite(&self) -> bool {
        self.shape.is_infinite()
    }

    /// Number of positions of a finite piece.
    pub fn finite_len(&self) -> Option<usize> {
        self.shape.finite_len()
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.shape, self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Ext {
    NegInf,
    Val(Rational64),
    PosInf,
}

impl FunctionSpec {
    pub fn new(segments: Vec<Segment>) -> Self {
        FunctionSpec {
            segments: normalize_segments(segments),
        }
    }

    /// A function on a finite ordered set.
    pub fn finite(values: Vec<ScalarValue>) -> Self {
        FunctionSpec::new(vec![Segment::Fin(values)])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_finite(&self) -> bool {
        self.segments.iter().all(|s| matches!(s, Segment::Fin(_)))
    }

    pub fn order(&self) -> BorelOrder {
        BorelOrder::new(self.segments.iter().map(Segment::shape).collect())
    }

    fn explicit(&self) -> impl Iterator<Item = (Position, &ScalarValue)> {
        self.segments.iter().enumerate().flat_map(|(segment, s)| {
            s.explicit_in_order()
                .into_iter()
                .map(move |(index, v)| (Position { segment, index }, v))
        })
    }

    fn infinite_parts(&self) -> impl Iterator<Item = (&ScalarValue, Option<Rational64>)> {
        self.segments.iter().filter_map(Segment::infinite_part)
    }

    /// Every arithmetic block has an integer step.
    fn arith_steps_integral(&self) -> bool {
        self.infinite_parts()
            .all(|(_, step)| step.is_none_or(|s| s.is_integer()))
    }

    /// Common integrality class of all values carried by infinite blocks;
    /// `Err(())` when infinitely many positions disagree.
    fn tail_class(&self) -> Result<Option<ClassKey>, ()> {
        if !self.arith_steps_integral() {
            return Err(());
        }
        let mut keys = self.infinite_parts().map(|(v, _)| v.class_key());
        let Some(first) = keys.next() else {
            return Ok(None);
        };
        if keys.all(|k| k == first) {
            Ok(Some(first))
        } else {
            Err(())
        }
    }

    pub fn is_integral(&self) -> bool {
        let Ok(tail) = self.tail_class() else {
            return false;
        };
        let mut keys = self.explicit().map(|(_, v)| v.class_key());
        let reference = match tail {
            Some(k) => k,
            None => match keys.next() {
                Some(k) => k,
                None => return true,
            },
        };
        keys.all(|k| k == reference)
    }

    pub fn is_almost_integral(&self) -> bool {
        self.tail_class().is_ok()
    }

    pub fn is_locally_constant(&self) -> bool {
        !self.segments.iter().any(Segment::is_arith)
    }

    /// Nonvanishing criterion for the annihilator of the highest weight module.
    pub fn annihilator_nonzero(&self) -> bool {
        self.is_almost_integral() && self.is_locally_constant()
    }

    /// Non-increasing along `≺`. Only defined for integral functions.
    pub fn is_dominant(&self) -> Result<bool, OrderError> {
        if !self.is_integral() {
            return Err(OrderError::NonIntegralInput);
        }
        // integral: every value shares one label, so offsets compare directly
        let mut prev_inf: Option<Ext> = None;
        for seg in &self.segments {
            let Some((sup, inf)) = segment_bounds_if_monotone(seg) else {
                return Ok(false);
            };
            if let Some(p) = prev_inf {
                if p < sup {
                    return Ok(false);
                }
            }
            prev_inf = Some(inf);
        }
        Ok(true)
    }

    /// Minimum number of positions whose deletion leaves an integral function.
    pub fn integrality_defect(&self) -> Defect {
        let Ok(tail) = self.tail_class() else {
            return Defect::Infinite;
        };
        let keep = match tail {
            Some(k) => Some(k),
            None => largest_class(self.explicit().map(|(_, v)| v)),
        };
        let witness: Vec<Position> = self
            .explicit()
            .filter(|(_, v)| Some(v.class_key()) != keep)
            .map(|(p, _)| p)
            .collect();
        Defect::Finite {
            size: witness.len(),
            witness,
        }
    }

    /// Coarsest compatible partition into intervals on which the function is constant.
    pub fn coarsest_constant_partition(&self) -> Result<Vec<Piece>, OrderError> {
        if !self.is_locally_constant() {
            return Err(OrderError::NotLocallyConstant);
        }
        let mut runs: Vec<(BlockShape, ScalarValue)> = Vec::new();
        for seg in &self.segments {
            match seg {
                Segment::Fin(v) => runs.extend(v.iter().map(|x| (BlockShape::Fin(1), x.clone()))),
                Segment::Omega { head, tail } => {
                    runs.extend(head.iter().map(|x| (BlockShape::Fin(1), x.clone())));
                    runs.push((BlockShape::Omega, tail.clone()));
                }
                Segment::OmegaStar { top, tail } => {
                    runs.push((BlockShape::OmegaStar, tail.clone()));
                    runs.extend(top.iter().rev().map(|x| (BlockShape::Fin(1), x.clone())));
                }
                Segment::OmegaArith { .. } | Segment::OmegaStarArith { .. } => unreachable!(),
            }
        }
        let mut pieces: Vec<(Vec<BlockShape>, ScalarValue)> = Vec::new();
        for (shape, value) in runs {
            match pieces.last_mut() {
                Some((blocks, v)) if *v == value => blocks.push(shape),
                _ => pieces.push((vec![shape], value)),
            }
        }
        Ok(pieces
            .into_iter()
            .map(|(blocks, value)| Piece {
                shape: BorelOrder::new(blocks),
                value,
            })
            .collect())
    }

    /// Finite restriction in `≺` order: every listed value plus `k` positions
    /// of every infinite block (the first `k` of an ω block, the last `k` of an
    /// ω* block, adjacent to the listed values).
    pub fn materialize(&self, k: usize) -> Vec<ScalarValue> {
        let mut out = Vec::new();
        for seg in &self.segments {
            match seg {
                Segment::Fin(v) => out.extend(v.iter().cloned()),
                Segment::Omega { head, tail } => {
                    out.extend(head.iter().cloned());
                    out.extend(std::iter::repeat_n(tail.clone(), k));
                }
                Segment::OmegaStar { top, tail } => {
                    out.extend(std::iter::repeat_n(tail.clone(), k));
                    out.extend(top.iter().rev().cloned());
                }
                Segment::OmegaArith { base, step } => {
                    out.extend((0..k).map(|i| arith_term(base, *step, i)));
                }
                Segment::OmegaStarArith { base, step } => {
                    out.extend((0..k).rev().map(|i| arith_term(base, *step, i)));
                }
            }
        }
        out
    }

    /// The function with one listed value removed.
    pub fn delete(&self, pos: Position) -> Option<FunctionSpec> {
        let mut segments = self.segments.clone();
        let list = match segments.get_mut(pos.segment)? {
            Segment::Fin(v)
            | Segment::Omega { head: v, .. }
            | Segment::OmegaStar { top: v, .. } => v,
            _ => return None,
        };
        if pos.index >= list.len() {
            return None;
        }
        list.remove(pos.index);
        if matches!(&segments[pos.segment], Segment::Fin(v) if v.is_empty()) {
            segments.remove(pos.segment);
        }
        if segments.is_empty() {
            return None;
        }
        Some(FunctionSpec::new(segments))
    }

    pub fn explicit_positions(&self) -> Vec<Position> {
        self.explicit().map(|(p, _)| p).collect()
    }

    /// All distinct values of a locally constant function, `None` for arithmetic blocks.
    pub fn distinct_values(&self) -> Option<Vec<ScalarValue>> {
        if !self.is_locally_constant() {
            return None;
        }
        let mut out: Vec<ScalarValue> = Vec::new();
        let all = self
            .explicit()
            .map(|(_, v)| v)
            .chain(self.infinite_parts().map(|(v, _)| v));
        for v in all {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Some(out)
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<FunctionSpec, ParseError> {
        let mut segments = vec![parse_segment(cur)?];
        while cur.eat(";") {
            segments.push(parse_segment(cur)?);
        }
        Ok(FunctionSpec::new(segments))
    }
}

fn arith_term(base: &ScalarValue, step: Rational64, i: usize) -> ScalarValue {
    let offset = base.offset() + step * Rational64::from_integer(i as i64);
    ScalarValue::new(base.label().clone(), offset)
}

/// `(sup, inf)` of the offsets of a segment that is internally non-increasing
/// along `≺`, `None` otherwise.
fn segment_bounds_if_monotone(seg: &Segment) -> Option<(Ext, Ext)> {
    let chain_ok = |vals: &[Rational64]| vals.windows(2).all(|w| w[0] >= w[1]);
    let offsets = |v: &[ScalarValue]| v.iter().map(ScalarValue::offset).collect::<Vec<_>>();
    match seg {
        Segment::Fin(v) => {
            let seq = offsets(v);
            chain_ok(&seq).then(|| (Ext::Val(seq[0]), Ext::Val(*seq.last().unwrap())))
        }
        Segment::Omega { head, tail } => {
            let mut seq = offsets(head);
            seq.push(tail.offset());
            chain_ok(&seq).then(|| (Ext::Val(seq[0]), Ext::Val(tail.offset())))
        }
        Segment::OmegaStar { top, tail } => {
            let mut seq = vec![tail.offset()];
            seq.extend(top.iter().rev().map(ScalarValue::offset));
            chain_ok(&seq).then(|| (Ext::Val(tail.offset()), Ext::Val(*seq.last().unwrap())))
        }
        Segment::OmegaArith { base, step } => step
            .is_negative()
            .then_some((Ext::Val(base.offset()), Ext::NegInf)),
        Segment::OmegaStarArith { base, step } => step
            .is_positive()
            .then_some((Ext::PosInf, Ext::Val(base.offset()))),
    }
}

/// Class with most members, ties resolved by first occurrence.
fn largest_class<'a>(values: impl Iterator<Item = &'a ScalarValue>) -> Option<ClassKey> {
    let mut counts: Vec<(ClassKey, usize)> = Vec::new();
    for v in values {
        let k = v.class_key();
        match counts.iter_mut().find(|(c, _)| *c == k) {
            Some((_, n)) => *n += 1,
            None => counts.push((k, 1)),
        }
    }
    let best = counts.iter().map(|(_, n)| *n).max()?;
    counts.into_iter().find(|(_, n)| *n == best).map(|(k, _)| k)
}

fn normalize_segments(segments: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(segments.len());
    for seg in segments {
        let seg = match seg {
            Segment::OmegaArith { base, step } if step.is_zero() => Segment::Omega {
                head: Vec::new(),
                tail: base,
            },
            Segment::OmegaStarArith { base, step } if step.is_zero() => Segment::OmegaStar {
                top: Vec::new(),
                tail: base,
            },
            Segment::Fin(v) if v.is_empty() => continue,
            other => other,
        };
        let seg = match (out.last_mut(), seg) {
            (Some(Segment::Fin(prev)), Segment::Fin(v)) => {
                prev.extend(v);
                continue;
            }
            (Some(Segment::OmegaStar { top, .. }), Segment::Fin(v)) => {
                let mut new_top: Vec<ScalarValue> = v.into_iter().rev().collect();
                new_top.append(top);
                *top = new_top;
                continue;
            }
            (_, seg) => seg,
        };
        if let (Segment::Omega { head, tail }, Some(Segment::Fin(_))) = (&seg, out.last()) {
            let Some(Segment::Fin(mut prefix)) = out.pop() else {
                unreachable!()
            };
            prefix.extend(head.iter().cloned());
            out.push(Segment::Omega {
                head: prefix,
                tail: tail.clone(),
            });
            continue;
        }
        out.push(seg);
    }
    for seg in &mut out {
        match seg {
            Segment::Omega { head: list, tail } | Segment::OmegaStar { top: list, tail } => {
                while list.last() == Some(tail) {
                    list.pop();
                }
            }
            _ => {}
        }
    }
    out
}

fn parse_segment(cur: &mut Cursor<'_>) -> Result<Segment, ParseError> {
    if cur.eat("[") {
        let values = parse_value_list(cur)?;
        cur.expect("]")?;
        return Ok(Segment::Fin(values));
    }
    let star = if cur.eat("omega*") {
        true
    } else if cur.eat("omega") {
        false
    } else {
        return Err(cur.error("a segment ('[', 'omega(' or 'omega*(')"));
    };
    cur.expect("(")?;
    let first = ScalarValue::parse_from(cur)?;
    let seg = if cur.eat(",") {
        cur.expect("step")?;
        cur.expect("=")?;
        let step = cur.rational()?;
        if star {
            Segment::OmegaStarArith { base: first, step }
        } else {
            Segment::OmegaArith { base: first, step }
        }
    } else {
        let mut list = Vec::new();
        if cur.eat(";") {
            cur.expect(if star { "top" } else { "head" })?;
            cur.expect("=")?;
            cur.expect("[")?;
            list = parse_value_list(cur)?;
            cur.expect("]")?;
        }
        if star {
            Segment::OmegaStar {
                top: list,
                tail: first,
            }
        } else {
            Segment::Omega {
                head: list,
                tail: first,
            }
        }
    };
    cur.expect(")")?;
    Ok(seg)
}

impl FromStr for FunctionSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let f = FunctionSpec::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(f)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Fin(v) => write!(f, "[{}]", format_values(v)),
            Segment::Omega { head, tail } if head.is_empty() => write!(f, "omega({tail})"),
            Segment::Omega { head, tail } => {
                write!(f, "omega({tail};head=[{}])", format_values(head))
            }
            Segment::OmegaStar { top, tail } if top.is_empty() => write!(f, "omega*({tail})"),
            Segment::OmegaStar { top, tail } => {
                write!(f, "omega*({tail};top=[{}])", format_values(top))
            }
            Segment::OmegaArith { base, step } => {
                write!(f, "omega({base},step=")?;
                fmt_rational(step, f)?;
                f.write_str(")")
            }
            Segment::OmegaStarArith { base, step } => {
                write!(f, "omega*({base},step=")?;
                fmt_rational(step, f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{seg}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockShape {
    Fin(usize),
    Omega,
    OmegaStar,
}

/// Order type of a finite concatenation of finite, ω and ω* blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BorelOrder {
    blocks: Vec<BlockShape>,
}

impl BorelOrder {
    /// Normalizes: adjacent finite blocks merge, `fin + ω ≅ ω`, `ω* + fin ≅ ω*`.
    pub fn new(blocks: Vec<BlockShape>) -> Self {
        let mut out: Vec<BlockShape> = Vec::with_capacity(blocks.len());
        for b in blocks {
            match (out.last_mut(), b) {
                (_, BlockShape::Fin(0)) => {}
                (Some(BlockShape::Fin(k)), BlockShape::Fin(j)) => *k += j,
                (Some(BlockShape::OmegaStar), BlockShape::Fin(_)) => {}
                (Some(BlockShape::Fin(_)), BlockShape::Omega) => {
                    out.pop();
                    out.push(BlockShape::Omega);
                }
                (_, b) => out.push(b),
            }
        }
        BorelOrder { blocks: out }
    }

    pub fn blocks(&self) -> &[BlockShape] {
        &self.blocks
    }

    pub fn is_infinite(&self) -> bool {
        self.blocks.iter().any(|b| !matches!(b, BlockShape::Fin(_)))
    }

    pub fn finite_len(&self) -> Option<usize> {
        self.blocks
            .iter()
            .map(|b| match b {
                BlockShape::Fin(k) => Some(*k),
                _ => None,
            })
            .sum()
    }

    /// First block ω and last block ω*, i.e. an ideal Borel subalgebra.
    pub fn is_ideal(&self) -> bool {
        matches!(
            (self.blocks.first(), self.blocks.last()),
            (Some(BlockShape::Omega), Some(BlockShape::OmegaStar))
        )
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<BorelOrder, ParseError> {
        let mut blocks = vec![parse_block(cur)?];
        while cur.eat(";") {
            blocks.push(parse_block(cur)?);
        }
        Ok(BorelOrder::new(blocks))
    }
}

fn parse_block(cur: &mut Cursor<'_>) -> Result<BlockShape, ParseError> {
    if cur.eat("fin") {
        cur.expect("(")?;
        let at = cur.pos();
        let k = cur.unsigned()?;
        if k == 0 {
            return Err(ParseError {
                position: at,
                expected: "a positive block length".into(),
                found: "0".into(),
            });
        }
        cur.expect(")")?;
        Ok(BlockShape::Fin(k as usize))
    } else if cur.eat("omega*") {
        Ok(BlockShape::OmegaStar)
    } else if cur.eat("omega") {
        Ok(BlockShape::Omega)
    } else {
        Err(cur.error("'fin(', 'omega' or 'omega*'"))
    }
}

impl FromStr for BorelOrder {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let o = BorelOrder::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(o)
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockShape::Fin(k) => write!(f, "fin({k})"),
            BlockShape::Omega => f.write_str("omega"),
            BlockShape::OmegaStar => f.write_str("omega*"),
        }
    }
}

impl fmt::Display for BorelOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
