//! Exact surrogate for complex weight values.
//!
//! A [`ScalarValue`] is a coset label together with a rational offset. The
//! empty label is the rational coset; any other label stands for some fixed
//! complex number `c` with `c - q` never an integer for rational `q`, and two
//! distinct labels never differ by a rational. Under this model "the
//! difference is an integer" and "compare within one integrality class" are
//! both decidable, and no floating point is ever involved.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::parse::{Cursor, ParseError};

/// Opaque coset symbol. The empty label is the rational coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Arc<str>);

impl Label {
    pub fn rational() -> Self {
        Label::default()
    }

    pub fn named(name: &str) -> Self {
        Label(Arc::from(name))
    }

    pub fn is_rational(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Default for Label {
    fn default() -> Self {
        Label(Arc::from(""))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarValue {
    label: Label,
    offset: Rational64,
}

/// Key identifying the integrality class of a value: the label together with
/// the fractional part of the offset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    label: Label,
    fraction: Rational64,
}

impl ScalarValue {
    pub fn new(label: Label, offset: Rational64) -> Self {
        ScalarValue { label, offset }
    }

    pub fn int(k: i64) -> Self {
        ScalarValue::new(Label::rational(), Rational64::from_integer(k))
    }

    pub fn rational(offset: Rational64) -> Self {
        ScalarValue::new(Label::rational(), offset)
    }

    pub fn labelled(label: &str, offset: i64) -> Self {
        ScalarValue::new(Label::named(label), Rational64::from_integer(offset))
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    pub fn offset(&self) -> Rational64 {
        self.offset
    }

    /// True iff `self - other` is an integer.
    pub fn int_congruent(&self, other: &ScalarValue) -> bool {
        self.label == other.label && (self.offset - other.offset).is_integer()
    }

    pub fn shift(&self, k: i64) -> ScalarValue {
        ScalarValue {
            label: self.label.clone(),
            offset: self.offset + Rational64::from_integer(k),
        }
    }

    pub fn class_key(&self) -> ClassKey {
        let fraction = self.offset - self.offset.floor();
        ClassKey {
            label: self.label.clone(),
            fraction,
        }
    }

    /// Ordering by offset when the labels agree; `None` for incomparable values.
    pub fn compare(&self, other: &ScalarValue) -> Option<Ordering> {
        (self.label == other.label).then(|| self.offset.cmp(&other.offset))
    }

    /// `self - other` when it is an integer.
    pub fn int_difference(&self, other: &ScalarValue) -> Option<i64> {
        if !self.int_congruent(other) {
            return None;
        }
        Some((self.offset - other.offset).to_integer())
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<ScalarValue, ParseError> {
        if cur.starts_with_digit_or_sign() {
            return Ok(ScalarValue::rational(cur.rational()?));
        }
        let Some(name) = cur.ident() else {
            return Err(cur.error("a value (`p/q` or `sym+p/q`)"));
        };
        let label = Label::named(name);
        let offset = match cur.peek() {
            Some('+') | Some('-') => cur.rational()?,
            _ => Rational64::zero(),
        };
        Ok(ScalarValue::new(label, offset))
    }
}

impl FromStr for ScalarValue {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let v = ScalarValue::parse_from(&mut cur)?;
        cur.expect_end()?;
        Ok(v)
    }
}

pub(crate) fn fmt_rational(r: &Rational64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label.is_rational() {
            return fmt_rational(&self.offset, f);
        }
        f.write_str(self.label.as_str())?;
        if self.offset.is_zero() {
            return Ok(());
        }
        if self.offset.is_negative() {
            f.write_str("-")?;
            fmt_rational(&self.offset.abs(), f)
        } else {
            f.write_str("+")?;
            fmt_rational(&self.offset, f)
        }
    }
}

/// Parses a comma separated list of values, e.g. `r2-1, 5, 9`.
pub fn parse_values(s: &str) -> Result<Vec<ScalarValue>, ParseError> {
    let mut cur = Cursor::new(s);
    let values = parse_value_list(&mut cur)?;
    cur.expect_end()?;
    Ok(values)
}

pub(crate) fn parse_value_list(cur: &mut Cursor<'_>) -> Result<Vec<ScalarValue>, ParseError> {
    let mut values = vec![ScalarValue::parse_from(cur)?];
    while cur.eat(",") {
        values.push(ScalarValue::parse_from(cur)?);
    }
    Ok(values)
}

pub fn format_values(values: &[ScalarValue]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> ScalarValue {
        s.parse().unwrap()
    }

    #[test]
    fn congruence_examples() {
        assert!(v("tau-1").int_congruent(&v("tau+3")));
        assert!(!v("tau-1").int_congruent(&v("5")));
        assert!(!v("1/2").int_congruent(&v("2")));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(v("tau-1").shift(-1), v("tau-2"));
        assert_eq!(v("5").shift(0), v("5"));
        assert_eq!(v("7").shift(-7), v("0"));
    }

    #[test]
    fn parse_and_print() {
        for text in ["r2+3", "r2-1", "5", "1/2", "-7/3", "r2", "x+1/2"] {
            assert_eq!(v(text).to_string(), text);
        }
        assert_eq!(v(" r2 + 3 "), v("r2+3"));
        assert_eq!(v("2/4"), v("1/2"));
        assert!("r2*3".parse::<ScalarValue>().is_err());
        assert!("".parse::<ScalarValue>().is_err());
    }

    #[test]
    fn class_key_matches_congruence() {
        assert_eq!(v("-1/2").class_key(), v("5/2").class_key());
        assert_ne!(v("r2").class_key(), v("0").class_key());
    }

    #[test]
    fn compare_only_within_label() {
        assert_eq!(v("r2").compare(&v("r2+1")), Some(Ordering::Less));
        assert_eq!(v("r2").compare(&v("1")), None);
        assert_eq!(v("r2+3").int_difference(&v("r2-1")), Some(4));
        assert_eq!(v("1/2").int_difference(&v("0")), None);
    }

    fn arb_value() -> impl Strategy<Value = ScalarValue> {
        (
            prop_oneof![Just(""), Just("a"), Just("b")],
            -6i64..6,
            1i64..4,
        )
            .prop_map(|(l, n, d)| {
                let label = if l.is_empty() {
                    Label::rational()
                } else {
                    Label::named(l)
                };
                ScalarValue::new(label, Rational64::new(n, d))
            })
    }

    proptest! {
        #[test]
        fn congruence_is_equivalence(a in arb_value(), b in arb_value(), c in arb_value()) {
            prop_assert!(a.int_congruent(&a));
            prop_assert_eq!(a.int_congruent(&b), b.int_congruent(&a));
            if a.int_congruent(&b) && b.int_congruent(&c) {
                prop_assert!(a.int_congruent(&c));
            }
            prop_assert_eq!(a.int_congruent(&b), a.class_key() == b.class_key());
        }

        #[test]
        fn shifts_compose(a in arb_value(), j in -20i64..20, k in -20i64..20) {
            prop_assert_eq!(a.shift(j).shift(k), a.shift(j + k));
            prop_assert!(a.int_congruent(&a.shift(k)));
        }

        #[test]
        fn display_reparses(a in arb_value()) {
            prop_assert_eq!(a.to_string().parse::<ScalarValue>().unwrap(), a);
        }
    }
}
