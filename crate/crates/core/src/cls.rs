//! Irreducible coherent local systems (c.l.s.) in canonical factored form.
//!
//! Every irreducible c.l.s. is either the absorbing `E^∞` or uniquely
//!
//! ```text
//! (L^∞_v  L_{v+1}^{x_{v+1}} ... L_n^{x_n})  E^m  (R^∞_w  R_{w+1}^{z_{w+1}} ... R_l^{z_l})
//! ```
//!
//! with `L^∞_0 = R^∞_0 = 1`. Multiplication is the Cartan product of level
//! sets. On the canonical form it adds `m` and the finite exponents, takes the
//! larger of the two `L^∞` (resp. `R^∞`) levels, and then deletes every `L_p`
//! with `p ≤ v` (resp. `R_q` with `q ≤ w`). Each of these rules is checked
//! against explicit level sets in [`crate::levels`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::orders::{BlockShape, BorelOrder, FunctionSpec, OrderError, Segment};
use crate::parse::{Cursor, ParseError};
use crate::scalars::ScalarValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClsError {
    #[error("function is not integral")]
    NotIntegral,
    #[error("function is not dominant")]
    NotDominant,
    #[error("function takes infinitely many values (c.l.s. is E^inf)")]
    InfinitelyManyValues,
    #[error("c.l.s. is not of finite type")]
    NotFiniteType,
    #[error("order is not ideal (needs a first omega block and a last omega* block)")]
    NotIdealOrder,
    #[error("malformed factor list: {0}")]
    MalformedFactorList(String),
    #[error("annihilator is zero: function is not almost integral and locally constant")]
    CriterionFails,
}

/// One of the basic c.l.s. symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basic {
    L(u64),
    LInf(u64),
    E,
    R(u64),
    RInf(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ClsCanonical {
    e_infinity: bool,
    v: u64,
    left: BTreeMap<u64, u64>,
    m: u64,
    w: u64,
    right: BTreeMap<u64, u64>,
}

impl ClsCanonical {
    pub fn identity() -> Self {
        ClsCanonical::default()
    }

    pub fn e_infinity() -> Self {
        ClsCanonical {
            e_infinity: true,
            ..ClsCanonical::default()
        }
    }

    /// Builds a canonical form, applying the absorption rules.
    pub fn from_parts(
        v: u64,
        left: impl IntoIterator<Item = (u64, u64)>,
        m: u64,
        w: u64,
        right: impl IntoIterator<Item = (u64, u64)>,
    ) -> Self {
        let mut q = ClsCanonical {
            e_infinity: false,
            v,
            left: BTreeMap::new(),
            m,
            w,
            right: BTreeMap::new(),
        };
        for (i, k) in left {
            *q.left.entry(i).or_default() += k;
        }
        for (i, k) in right {
            *q.right.entry(i).or_default() += k;
        }
        q.normalize();
        q
    }

    pub fn basic(b: Basic) -> Self {
        match b {
            Basic::L(p) => Self::from_parts(0, [(p, 1)], 0, 0, []),
            Basic::LInf(v) => Self::from_parts(v, [], 0, 0, []),
            Basic::E => Self::from_parts(0, [], 1, 0, []),
            Basic::R(q) => Self::from_parts(0, [], 0, 0, [(q, 1)]),
            Basic::RInf(w) => Self::from_parts(0, [], 0, w, []),
        }
    }

    fn normalize(&mut self) {
        let (v, w) = (self.v, self.w);
        // index 0 is Λ^0, the trivial module
        self.left.retain(|&i, k| i > v && i > 0 && *k > 0);
        self.right.retain(|&i, k| i > w && i > 0 && *k > 0);
    }

    pub fn is_e_infinity(&self) -> bool {
        self.e_infinity
    }

    pub fn is_identity(&self) -> bool {
        *self == ClsCanonical::identity()
    }

    pub fn left_level(&self) -> u64 {
        self.v
    }

    pub fn right_level(&self) -> u64 {
        self.w
    }

    pub fn e_power(&self) -> u64 {
        self.m
    }

    pub fn left_exponents(&self) -> &BTreeMap<u64, u64> {
        &self.left
    }

    pub fn right_exponents(&self) -> &BTreeMap<u64, u64> {
        &self.right
    }

    /// Finite level sets: not `E^∞` and no `L^∞`/`R^∞` factor.
    pub fn is_finite_type(&self) -> bool {
        !self.e_infinity && self.v == 0 && self.w == 0
    }

    pub fn mul(&self, other: &ClsCanonical) -> ClsCanonical {
        if self.e_infinity || other.e_infinity {
            return ClsCanonical::e_infinity();
        }
        ClsCanonical::from_parts(
            self.v.max(other.v),
            self.left.iter().chain(&other.left).map(|(&i, &k)| (i, k)),
            self.m + other.m,
            self.w.max(other.w),
            self.right.iter().chain(&other.right).map(|(&i, &k)| (i, k)),
        )
    }

    /// Basic factors with exponents in canonical printing order; empty for the
    /// identity and for `E^∞`.
    pub fn factors(&self) -> Vec<(Basic, u64)> {
        let mut out = Vec::new();
        if self.e_infinity {
            return out;
        }
        if self.v > 0 {
            out.push((Basic::LInf(self.v), 1));
        }
        out.extend(self.left.iter().map(|(&i, &k)| (Basic::L(i), k)));
        if self.m > 0 {
            out.push((Basic::E, self.m));
        }
        if self.w > 0 {
            out.push((Basic::RInf(self.w), 1));
        }
        out.extend(self.right.iter().map(|(&i, &k)| (Basic::R(i), k)));
        out
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<ClsCanonical, ParseError> {
        let mut acc = parse_term(cur)?;
        while !cur.at_end() && !cur.eat("*") && !matches!(cur.peek(), Some(')') | Some(',')) {
            acc = acc.mul(&parse_term(cur)?);
        }
        Ok(acc)
    }
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<ClsCanonical, ParseError> {
    let indexed = |cur: &mut Cursor<'_>| -> Result<u64, ParseError> {
        cur.expect("(")?;
        let n = cur.unsigned()?;
        cur.expect(")")?;
        Ok(n)
    };
    let power = |cur: &mut Cursor<'_>| -> Result<u64, ParseError> {
        if cur.eat("^") {
            cur.unsigned()
        } else {
            Ok(1)
        }
    };
    if cur.eat("Linf") {
        return Ok(ClsCanonical::basic(Basic::LInf(indexed(cur)?)));
    }
    if cur.eat("Rinf") {
        return Ok(ClsCanonical::basic(Basic::RInf(indexed(cur)?)));
    }
    if cur.eat("Einf") {
        return Ok(ClsCanonical::e_infinity());
    }
    if cur.eat("L") {
        let p = indexed(cur)?;
        let k = power(cur)?;
        return Ok(ClsCanonical::from_parts(0, [(p, k)], 0, 0, []));
    }
    if cur.eat("R") {
        let q = indexed(cur)?;
        let k = power(cur)?;
        return Ok(ClsCanonical::from_parts(0, [], 0, 0, [(q, k)]));
    }
    if cur.eat("E") {
        let k = power(cur)?;
        return Ok(ClsCanonical::from_parts(0, [], k, 0, []));
    }
    if cur.eat("1") {
        return Ok(ClsCanonical::identity());
    }
    Err(cur.error("a c.l.s. term (Linf(n), L(n)^k, E^k, Einf, Rinf(n), R(n)^k or 1)"))
}

impl FromStr for ClsCanonical {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let q = ClsCanonical::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(q)
    }
}

impl fmt::Display for Basic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basic::L(p) => write!(f, "L({p})"),
            Basic::LInf(v) => write!(f, "Linf({v})"),
            Basic::E => f.write_str("E"),
            Basic::R(q) => write!(f, "R({q})"),
            Basic::RInf(w) => write!(f, "Rinf({w})"),
        }
    }
}

impl fmt::Display for ClsCanonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e_infinity {
            return f.write_str("Einf");
        }
        let factors = self.factors();
        if factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (b, k)) in factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{b}")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    fn add(self, other: Multiplicity) -> Multiplicity {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Multiplicity::Infinite
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(k) => Some(k),
            Multiplicity::Infinite => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

/// Value histogram of an integral dominant function taking finitely many values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClsProfile {
    /// Span between the largest and the smallest value.
    pub s: usize,
    /// `d[c]` is the multiplicity of the value `min + c`.
    pub d: Vec<Multiplicity>,
    /// First and last index with infinite multiplicity; both 0 when every
    /// multiplicity is finite.
    pub p: usize,
    pub q: usize,
}

impl ClsProfile {
    fn finite_at(&self, c: usize) -> u64 {
        self.d[c]
            .finite()
            .expect("multiplicities outside [p, q] are finite")
    }
}

impl fmt::Display for ClsProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(ToString::to_string).collect();
        write!(
            f,
            "s={} d=({}) p={} q={}",
            self.s,
            d.join(","),
            self.p,
            self.q
        )
    }
}

pub fn profile_of(f: &FunctionSpec) -> Result<ClsProfile, ClsError> {
    match f.is_dominant() {
        Err(OrderError::NonIntegralInput) => return Err(ClsError::NotIntegral),
        Err(_) => unreachable!(),
        Ok(false) => return Err(ClsError::NotDominant),
        Ok(true) => {}
    }
    let mut weighted: Vec<(&ScalarValue, Multiplicity)> = Vec::new();
    for seg in f.segments() {
        match seg {
            Segment::Fin(v) => weighted.extend(v.iter().map(|x| (x, Multiplicity::Finite(1)))),
            Segment::Omega { head: v, tail } | Segment::OmegaStar { top: v, tail } => {
                weighted.extend(v.iter().map(|x| (x, Multiplicity::Finite(1))));
                weighted.push((tail, Multiplicity::Infinite));
            }
            Segment::OmegaArith { .. } | Segment::OmegaStarArith { .. } => {
                return Err(ClsError::InfinitelyManyValues)
            }
        }
    }
    let min = weighted
        .iter()
        .map(|(v, _)| v)
        .min_by(|a, b| a.compare(b).expect("integral"))
        .expect("a function has at least one value");
    let level = |v: &ScalarValue| -> usize {
        let diff = v.int_difference(min).expect("integral");
        usize::try_from(diff).expect("min is the smallest value")
    };
    let s = weighted.iter().map(|(v, _)| level(v)).max().unwrap_or(0);
    let mut d = vec![Multiplicity::Finite(0); s + 1];
    for (v, mult) in &weighted {
        let c = level(v);
        d[c] = d[c].add(*mult);
    }
    let p = d.iter().position(|m| m.is_infinite()).unwrap_or(0);
    let q = d.iter().rposition(|m| m.is_infinite()).unwrap_or(0);
    Ok(ClsProfile { s, d, p, q })
}

/// The c.l.s. of the integrable module `L(f)` for a dominant `f`; `E^∞` when
/// `f` takes infinitely many values.
pub fn cls_of_dominant(f: &FunctionSpec) -> Result<ClsCanonical, ClsError> {
    let profile = match profile_of(f) {
        Ok(p) => p,
        Err(ClsError::InfinitelyManyValues) => return Ok(ClsCanonical::e_infinity()),
        Err(e) => return Err(e),
    };
    Ok(cls_from_profile(&profile))
}

pub fn cls_from_profile(profile: &ClsProfile) -> ClsCanonical {
    let (s, p, q) = (profile.s, profile.p, profile.q);
    let mut left = Vec::new();
    let mut sum = 0;
    for c in 0..p {
        sum += profile.finite_at(c);
        left.push((sum, 1));
    }
    let mut right = Vec::new();
    let mut sum = 0;
    for c in (q + 1..=s).rev() {
        sum += profile.finite_at(c);
        right.push((sum, 1));
    }
    ClsCanonical::from_parts(0, left, (q - p) as u64, 0, right)
}

fn expanded(exponents: &BTreeMap<u64, u64>) -> Vec<u64> {
    exponents
        .iter()
        .flat_map(|(&i, &k)| std::iter::repeat_n(i, k as usize))
        .collect()
}

/// Multiplicities `d_c` read back from a finite-type canonical form: `p` is
/// the number of `L` factors, `q - p` the `E` power, `s - q` the number of `R`
/// factors; the `L` indices are the partial sums `d_0, d_0+d_1, ...` and the
/// `R` indices the partial sums `d_s, d_s+d_{s-1}, ...`.
fn multiplicities_from(q_cls: &ClsCanonical) -> Result<(Vec<u64>, usize, usize), ClsError> {
    let ls = expanded(&q_cls.left);
    let rs = expanded(&q_cls.right);
    let p = ls.len();
    let q = p + q_cls.m as usize;
    let s = q + rs.len();
    let mut d = vec![0u64; s + 1];
    let mut prev = 0;
    for (c, &idx) in ls.iter().enumerate() {
        if idx < prev || (c == 0 && idx == 0) {
            return Err(ClsError::MalformedFactorList(format!(
                "L indices must be positive and non-decreasing, got {ls:?}"
            )));
        }
        d[c] = idx - prev;
        prev = idx;
    }
    let mut prev = 0;
    for (k, &idx) in rs.iter().enumerate() {
        if idx < prev || (k == 0 && idx == 0) {
            return Err(ClsError::MalformedFactorList(format!(
                "R indices must be positive and non-decreasing, got {rs:?}"
            )));
        }
        d[s - k] = idx - prev;
        prev = idx;
    }
    Ok((d, p, q))
}

/// A dominant function on the ideal order `o` whose module has c.l.s. `q_cls`.
///
/// The first ω block receives the values `s, ..., q+1` (each `d_c` times, in
/// decreasing order) followed by the constant `q`; every middle block is
/// constantly `q`; the last ω* block is constantly `p` except for its top
/// positions, which carry `p-1, ..., 0` (each `d_c` times), the value 0 at the
/// greatest positions.
pub fn duflo_function(q_cls: &ClsCanonical, o: &BorelOrder) -> Result<FunctionSpec, ClsError> {
    if !q_cls.is_finite_type() {
        return Err(ClsError::NotFiniteType);
    }
    if !o.is_ideal() {
        return Err(ClsError::NotIdealOrder);
    }
    let (d, p, q) = multiplicities_from(q_cls)?;
    let s = d.len() - 1;
    let value = |c: usize| ScalarValue::int(c as i64);
    let repeat = |c: usize| std::iter::repeat_n(value(c), d[c] as usize);

    let blocks = o.blocks();
    let last = blocks.len() - 1;
    let mut segments = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        let seg = if i == 0 {
            Segment::Omega {
                head: (q + 1..=s).rev().flat_map(repeat).collect(),
                tail: value(q),
            }
        } else if i == last {
            Segment::OmegaStar {
                top: (0..p).flat_map(repeat).collect(),
                tail: value(p),
            }
        } else {
            match block {
                BlockShape::Fin(k) => Segment::Fin(vec![value(q); *k]),
                BlockShape::Omega => Segment::Omega {
                    head: Vec::new(),
                    tail: value(q),
                },
                BlockShape::OmegaStar => Segment::OmegaStar {
                    top: Vec::new(),
                    tail: value(q),
                },
            }
        };
        segments.push(seg);
    }
    Ok(FunctionSpec::new(segments))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundData {
    pub nint: u64,
    pub wid: u64,
    pub gamma: u64,
}

impl fmt::Display for BoundData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nint={} wid={} gamma={}",
            self.nint, self.wid, self.gamma
        )
    }
}

/// Ascent sum, descent sum (over consecutive infinite pieces of the coarsest
/// constant partition) and total size of the finite pieces.
pub fn bound_data(f: &FunctionSpec) -> Result<BoundData, ClsError> {
    if !f.annihilator_nonzero() {
        return Err(ClsError::CriterionFails);
    }
    let pieces = f
        .coarsest_constant_partition()
        .map_err(|_| ClsError::CriterionFails)?;
    let gamma = pieces.iter().filter_map(|p| p.finite_len()).sum::<usize>() as u64;
    let tails: Vec<&ScalarValue> = pieces
        .iter()
        .filter(|p| p.is_infinite())
        .map(|p| &p.value)
        .collect();
    let (mut nint, mut wid) = (0u64, 0u64);
    for pair in tails.windows(2) {
        let step = pair[1]
            .int_difference(pair[0])
            .expect("infinite pieces of an almost integral function are congruent");
        if step > 0 {
            nint += step as u64;
        } else {
            wid += step.unsigned_abs();
        }
    }
    Ok(BoundData { nint, wid, gamma })
}

/// `L^∞_{nint+γ} E^{wid}`, whose ideal is contained in the annihilator of `L(f)`.
pub fn bound_cls(f: &FunctionSpec) -> Result<ClsCanonical, ClsError> {
    let b = bound_data(f)?;
    Ok(ClsCanonical::from_parts(b.nint + b.gamma, [], b.wid, 0, []))
}

/// `L^∞_l Q R^∞_r` for a finite-type `Q`.
pub fn attach_infinite(q_cls: &ClsCanonical, l: u64, r: u64) -> Result<ClsCanonical, ClsError> {
    if !q_cls.is_finite_type() {
        return Err(ClsError::NotFiniteType);
    }
    Ok(q_cls
        .mul(&ClsCanonical::basic(Basic::LInf(l)))
        .mul(&ClsCanonical::basic(Basic::RInf(r))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> ClsCanonical {
        s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    fn f(s: &str) -> FunctionSpec {
        s.parse().unwrap()
    }

    #[test]
    fn finite_type_examples() {
        assert!(ClsCanonical::identity().is_finite_type());
        assert!(!c("Linf(1)").is_finite_type());
        assert!(c("E^3 L(2)").is_finite_type());
        assert!(!c("Einf").is_finite_type());
    }

    #[test]
    fn mul_examples() {
        let q = c("L(2)^2 E R(1)");
        assert_eq!(ClsCanonical::identity().mul(&q), q);
        assert_eq!(c("Linf(1)").mul(&c("L(1)")), c("Linf(1)"));
        assert_eq!(c("E").mul(&c("E^2")), c("E^3"));
        assert_eq!(c("Einf").mul(&q), ClsCanonical::e_infinity());
        assert_eq!(c("Linf(1)").mul(&c("Linf(1)")), c("Linf(1)"));
        assert_eq!(c("Linf(1) L(3)").mul(&c("Linf(3)")), c("Linf(3)"));
    }

    #[test]
    fn printing_is_canonical() {
        assert_eq!(
            c("R(3) E L(2) L(1) Linf(0) L(2)").to_string(),
            "L(1) L(2)^2 E R(3)"
        );
        assert_eq!(c("1").to_string(), "1");
        assert_eq!(c("L(0)").to_string(), "1");
        assert_eq!(c("E^0").to_string(), "1");
        assert_eq!(
            c("Rinf(2) R(1) R(5)^2 Linf(1)").to_string(),
            "Linf(1) Rinf(2) R(5)^2"
        );
        assert_eq!(c("E Einf").to_string(), "Einf");
        assert!("L2".parse::<ClsCanonical>().is_err());
        assert!("".parse::<ClsCanonical>().is_err());
    }

    #[test]
    fn profile_examples() {
        let show = |s: &str| profile_of(&f(s)).unwrap().to_string();
        assert_eq!(show("omega(0)"), "s=0 d=(inf) p=0 q=0");
        assert_eq!(show("[1,1]; omega(0)"), "s=1 d=(inf,2) p=0 q=0");
        assert_eq!(
            show("omega(2); [1]; omega*(0)"),
            "s=2 d=(inf,1,inf) p=0 q=2"
        );
        assert_eq!(profile_of(&f("[r2]; omega(0)")), Err(ClsError::NotIntegral));
        assert_eq!(profile_of(&f("omega(0); [1]")), Err(ClsError::NotDominant));
        assert_eq!(
            profile_of(&f("omega(0, step=-1)")),
            Err(ClsError::InfinitelyManyValues)
        );
    }

    #[test]
    fn cls_of_dominant_examples() {
        assert_eq!(
            cls_of_dominant(&f("omega(0)")),
            Ok(ClsCanonical::identity())
        );
        assert_eq!(cls_of_dominant(&f("[1,1]; omega(0)")), Ok(c("R(2)")));
        assert_eq!(
            cls_of_dominant(&f("omega(2); [1]; omega*(0)")),
            Ok(c("E^2"))
        );
        assert_eq!(
            cls_of_dominant(&f("omega(0, step=-1)")),
            Ok(ClsCanonical::e_infinity())
        );
        assert_eq!(
            cls_of_dominant(&f("omega(0); [1]")),
            Err(ClsError::NotDominant)
        );
        // all multiplicities finite: only R factors
        assert_eq!(cls_of_dominant(&f("[2,1,1,0]")), Ok(c("R(1) R(3)")));
        // L side: finitely many small values at the top of an omega* block
        assert_eq!(
            cls_of_dominant(&f("omega(3); omega*(1; top=[0,0])")),
            Ok(c("L(2) E^2"))
        );
    }

    #[test]
    fn duflo_examples() {
        let two_block: BorelOrder = "omega; omega*".parse().unwrap();
        let identity = duflo_function(&ClsCanonical::identity(), &two_block).unwrap();
        assert_eq!(identity.to_string(), "omega(0); omega*(0)");
        let r2 = duflo_function(&c("R(2)"), &two_block).unwrap();
        assert_eq!(r2.to_string(), "omega(0;head=[1,1]); omega*(0)");
        let three_block: BorelOrder = "omega; fin(1); omega*".parse().unwrap();
        let e2 = duflo_function(&c("E^2"), &three_block).unwrap();
        assert_eq!(e2.to_string(), "omega(2); [2]; omega*(0)");
        for (q, o) in [(c("R(2)"), &two_block), (c("E^2"), &three_block)] {
            let g = duflo_function(&q, o).unwrap();
            assert_eq!(g.order(), *o);
            assert_eq!(cls_of_dominant(&g), Ok(q));
        }
        assert_eq!(
            duflo_function(&c("Linf(1)"), &two_block),
            Err(ClsError::NotFiniteType)
        );
        assert_eq!(
            duflo_function(&ClsCanonical::identity(), &"omega".parse().unwrap()),
            Err(ClsError::NotIdealOrder)
        );
    }

    #[test]
    fn bound_examples() {
        let data = |s: &str| bound_data(&f(s)).unwrap();
        assert_eq!(
            data("omega(0); omega*(3)"),
            BoundData {
                nint: 3,
                wid: 0,
                gamma: 0
            }
        );
        assert_eq!(
            data("omega(5); omega*(2)"),
            BoundData {
                nint: 0,
                wid: 3,
                gamma: 0
            }
        );
        assert_eq!(
            data("omega(0)"),
            BoundData {
                nint: 0,
                wid: 0,
                gamma: 0
            }
        );
        assert_eq!(
            data("omega(1); [r2, 4]; omega(3); omega*(0)"),
            BoundData {
                nint: 2,
                wid: 3,
                gamma: 2
            }
        );
        assert_eq!(bound_cls(&f("omega(0)")), Ok(ClsCanonical::identity()));
        assert_eq!(bound_cls(&f("omega(0); omega*(3)")), Ok(c("Linf(3)")));
        assert_eq!(bound_cls(&f("[r2+3]; omega(0)")), Ok(c("Linf(1)")));
        assert_eq!(
            bound_cls(&f("omega(0, step=1)")),
            Err(ClsError::CriterionFails)
        );
        assert_eq!(
            bound_cls(&f("omega(r2); omega*(0)")),
            Err(ClsError::CriterionFails)
        );
    }

    #[test]
    fn attach_examples() {
        let id = ClsCanonical::identity();
        assert_eq!(attach_infinite(&id, 0, 0), Ok(id));
        assert_eq!(attach_infinite(&c("L(1)"), 1, 0), Ok(c("Linf(1)")));
        assert_eq!(
            attach_infinite(&c("E^2"), 1, 1).unwrap().to_string(),
            "Linf(1) E^2 Rinf(1)"
        );
        assert_eq!(
            attach_infinite(&c("Linf(2)"), 1, 1),
            Err(ClsError::NotFiniteType)
        );
    }

    pub(crate) fn arb_cls() -> impl Strategy<Value = ClsCanonical> {
        (
            prop::bool::weighted(0.05),
            0u64..3,
            prop::collection::vec((1u64..5, 1u64..3), 0..3),
            0u64..3,
            0u64..3,
            prop::collection::vec((1u64..5, 1u64..3), 0..3),
        )
            .prop_map(|(einf, v, left, m, w, right)| {
                if einf {
                    ClsCanonical::e_infinity()
                } else {
                    ClsCanonical::from_parts(v, left, m, w, right)
                }
            })
    }

    proptest! {
        #[test]
        fn monoid_laws(a in arb_cls(), b in arb_cls(), c3 in arb_cls()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c3), a.mul(&b.mul(&c3)));
            prop_assert_eq!(a.mul(&ClsCanonical::identity()), a.clone());
            prop_assert_eq!(a.mul(&ClsCanonical::e_infinity()), ClsCanonical::e_infinity());
        }

        #[test]
        fn print_parse_round_trip(a in arb_cls()) {
            prop_assert_eq!(a.to_string().parse::<ClsCanonical>().unwrap(), a);
        }

        #[test]
        fn canonical_invariants(a in arb_cls()) {
            prop_assert!(a.left_exponents().iter().all(|(&i, &k)| i > a.left_level() && k > 0));
            prop_assert!(a.right_exponents().iter().all(|(&i, &k)| i > a.right_level() && k > 0));
        }
    }
}
