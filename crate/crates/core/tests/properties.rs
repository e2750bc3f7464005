use std::collections::HashMap;

use num_rational::Rational64;
use proptest::prelude::*;

use slinf::orders::{Defect, FunctionSpec, Segment};
use slinf::scalars::{Label, ScalarValue};
use slinf::tableaux::{f_sharp, modified_rs, Partition};

fn arb_value() -> impl Strategy<Value = ScalarValue> {
    (
        prop_oneof![3 => Just(""), 1 => Just("r2")],
        -3i64..4,
        prop_oneof![4 => Just(1i64), 1 => Just(2i64)],
    )
        .prop_map(|(label, n, d)| {
            let label = if label.is_empty() {
                Label::rational()
            } else {
                Label::named(label)
            };
            ScalarValue::new(label, Rational64::new(n, d))
        })
}

fn arb_step() -> impl Strategy<Value = Rational64> {
    prop_oneof![
        Just(Rational64::from_integer(1)),
        Just(Rational64::from_integer(-1)),
        Just(Rational64::from_integer(2)),
        Just(Rational64::new(1, 2)),
        Just(Rational64::new(-1, 3)),
    ]
}

fn arb_segment() -> impl Strategy<Value = Segment> {
    let list = || prop::collection::vec(arb_value(), 0..=2);
    prop_oneof![
        prop::collection::vec(arb_value(), 1..=2).prop_map(Segment::Fin),
        (list(), arb_value()).prop_map(|(head, tail)| Segment::Omega { head, tail }),
        (list(), arb_value()).prop_map(|(top, tail)| Segment::OmegaStar { top, tail }),
        (arb_value(), arb_step()).prop_map(|(base, step)| Segment::OmegaArith { base, step }),
        (arb_value(), arb_step()).prop_map(|(base, step)| Segment::OmegaStarArith { base, step }),
    ]
}

/// At most 8 listed values, so every infinite block materialized 20 times
/// outweighs them.
fn arb_function() -> impl Strategy<Value = FunctionSpec> {
    prop::collection::vec(arb_segment(), 1..=4).prop_map(FunctionSpec::new)
}

fn largest_class(values: &[ScalarValue]) -> usize {
    let mut counts = HashMap::new();
    for v in values {
        *counts.entry(v.class_key()).or_insert(0usize) += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

fn finite_defect(values: &[ScalarValue]) -> usize {
    values.len() - largest_class(values)
}

fn runs(values: &[ScalarValue]) -> usize {
    values.windows(2).filter(|w| w[0] != w[1]).count() + usize::from(!values.is_empty())
}

/// Textbook Schensted insertion with weakly increasing rows.
fn schensted_shape(word: &[i64]) -> Partition {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for &x in word {
        let mut carry = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            let slot = row.partition_point(|&y| y <= carry);
            if slot == row.len() {
                row.push(carry);
                placed = true;
                break;
            }
            carry = std::mem::replace(&mut row[slot], carry);
        }
        if !placed {
            rows.push(vec![carry]);
        }
    }
    Partition::new(rows.iter().map(Vec::len).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn criterion_matches_prefix_oracle(f in arb_function()) {
        let (short, long) = (f.materialize(20), f.materialize(60));
        let almost_integral = finite_defect(&short) == finite_defect(&long);
        let locally_constant = runs(&short) == runs(&long);
        prop_assert_eq!(f.is_almost_integral(), almost_integral, "{}", f);
        prop_assert_eq!(f.is_locally_constant(), locally_constant, "{}", f);
        prop_assert_eq!(f.annihilator_nonzero(), almost_integral && locally_constant);
    }

    #[test]
    fn defect_counts_listed_values_outside_the_tail_class(f in arb_function()) {
        match f.integrality_defect() {
            Defect::Infinite => prop_assert!(!f.is_almost_integral()),
            Defect::Finite { size, .. } => {
                prop_assert!(f.is_almost_integral());
                prop_assert_eq!(size, finite_defect(&f.materialize(20)));
            }
        }
    }

    #[test]
    fn defect_is_monotone_under_deletion(f in arb_function()) {
        let before = f.integrality_defect().size();
        for pos in f.explicit_positions() {
            if let Some(g) = f.delete(pos) {
                let after = g.integrality_defect().size();
                match (before, after) {
                    (Some(b), Some(a)) => prop_assert!(a <= b, "{} at {}: {} > {}", f, pos, a, b),
                    (Some(_), None) => prop_assert!(false, "{} at {} became infinite", f, pos),
                    (None, _) => {}
                }
            }
        }
    }

    #[test]
    fn finite_defect_equals_complement_of_largest_class(
        values in prop::collection::vec(arb_value(), 1..=10)
    ) {
        let f = FunctionSpec::finite(values.clone());
        let Defect::Finite { size, witness } = f.integrality_defect() else {
            panic!("finite function with infinite defect");
        };
        prop_assert_eq!(size, finite_defect(&values));
        let mut rest = f.clone();
        for pos in witness.iter().rev() {
            rest = rest.delete(*pos).expect("witness positions are listed");
        }
        prop_assert!(rest.is_integral());
    }

    #[test]
    fn shape_sizes_match(values in prop::collection::vec(arb_value(), 0..=10)) {
        prop_assert_eq!(modified_rs(&values).size(), values.len());
    }

    #[test]
    fn single_regular_class_is_schensted(perm in Just((0..8i64).collect::<Vec<_>>()).prop_shuffle()) {
        // f⁺ = perm, all values distinct in one class
        let plus: Vec<ScalarValue> = perm.iter().map(|&x| ScalarValue::int(x)).collect();
        let f = f_sharp(&plus);
        let ours = modified_rs(&f);
        let reversed: Vec<i64> = perm.iter().map(|&x| -x).collect();
        prop_assert_eq!(&ours, &schensted_shape(&reversed));
        prop_assert_eq!(&ours, &schensted_shape(&perm).conjugate());
    }

    #[test]
    fn rising_pairs_force_rank(r in 0usize..5, start in prop::collection::vec((-5i64..5, 1i64..4), 5)) {
        // f(2i) > f(2i-1) for i = 1..r+1
        let mut f = Vec::new();
        for &(low, gap) in start.iter().take(r + 1) {
            f.push(ScalarValue::int(low));
            f.push(ScalarValue::int(low + gap));
        }
        prop_assert!(modified_rs(&f).rank() > r, "{:?}", f);
    }
}
