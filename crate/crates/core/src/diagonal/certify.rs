//! Symbolic analysis of self-digit sequences.
//!
//! The diagonal of a list reads row n at column n. Past the prefix the rows
//! come from a generator family, so the diagonal digit at position t is
//! `generator.digit(t - prefix_len, t)`. For every closed-form family that
//! digit is determined by affine functions of t, which makes the eventual
//! behaviour decidable: this module computes, per family, a position `from`
//! and a digit word such that the self-digit sequence equals the word
//! repeated, for all t >= from. No horizon is involved; the result holds for
//! every position.

use num_integer::Integer;

use crate::digits::PeriodicDigitString;
use crate::list::{GeneratorFamily, TransfiniteList};

/// Longest period word the analysis will materialize.
const MAX_PERIOD: usize = 512;

/// An affine function of the position variable, `a * t + b`.
#[derive(Debug, Clone, Copy)]
struct Affine {
    a: i128,
    b: i128,
}

impl Affine {
    fn eval(self, t: i128) -> i128 {
        self.a * t + self.b
    }
}

/// Eventual behaviour of a self-digit sequence: for all t >= from,
/// digit(t) == digits[(t - from) % digits.len()].
#[derive(Debug, Clone)]
pub(super) struct TailPattern {
    pub(super) from: i128,
    pub(super) digits: Vec<u8>,
}

/// Certifies the tail of the self-digit sequence of `list`, before any
/// diagonal rule is applied. Returns the start position and the repeating
/// digit word, or None when the generator has no closed form (tables) or the
/// pattern is out of reach (period too long).
pub(super) fn certified_tail(list: &TransfiniteList) -> Option<TailPattern> {
    let p = list.prefix_len() as i128;
    let row = Affine { a: 1, b: -p };
    let column = Affine { a: 1, b: 0 };
    pattern(list.generator(), row, column, p + 1)
}

/// Computes the tail pattern of `g.digit(row(t), column(t))` for t >= t_min.
/// Callers guarantee row(t) >= 1 and column(t) >= 1 on that range.
fn pattern(g: &GeneratorFamily, row: Affine, column: Affine, t_min: i128) -> Option<TailPattern> {
    match g {
        GeneratorFamily::GeometricOnes => {
            // digit = 1 iff column <= row, i.e. iff row - column >= 0.
            let d = Affine {
                a: row.a - column.a,
                b: row.b - column.b,
            };
            Some(sign_pattern(d, t_min, 1, 0))
        }
        GeneratorFamily::SpacedPair => {
            // digit = 1 iff e := column - row - 1 is nonnegative and even.
            let e = Affine {
                a: column.a - row.a,
                b: column.b - row.b - 1,
            };
            Some(spaced_pattern(e, t_min))
        }
        GeneratorFamily::Spike { gap } => {
            // digit = 1 iff column - row == gap, a single affine equation.
            let d = Affine {
                a: column.a - row.a,
                b: column.b - row.b - *gap as i128,
            };
            Some(spike_pattern(d, t_min))
        }
        GeneratorFamily::Constant(value) => constant_pattern(value, column, t_min),
        GeneratorFamily::Shifted { inner, offset } => {
            let shifted = Affine {
                a: row.a,
                b: row.b + *offset as i128,
            };
            pattern(inner, shifted, column, t_min)
        }
        GeneratorFamily::Strided { inner, start, step } => {
            // Row n of the strided family is row start + (n - 1) * step of
            // the inner one.
            let inner_row = Affine {
                a: row.a * *step as i128,
                b: *start as i128 + (row.b - 1) * *step as i128,
            };
            pattern(inner, inner_row, column, t_min)
        }
        GeneratorFamily::Interleave(odd, even) => {
            interleave_pattern(odd, even, row, column, t_min)
        }
        GeneratorFamily::Table(_) => None,
    }
}

/// Pattern of the indicator [d(t) >= 0], yielding `high` when the indicator
/// holds and `low` otherwise.
fn sign_pattern(d: Affine, t_min: i128, high: u8, low: u8) -> TailPattern {
    if d.a == 0 {
        let digit = if d.b >= 0 { high } else { low };
        return TailPattern {
            from: t_min,
            digits: vec![digit],
        };
    }
    let want = d.a > 0;
    let from = settle_point(d, t_min, want);
    let digit = if want { high } else { low };
    TailPattern {
        from,
        digits: vec![digit],
    }
}

/// Pattern of [e(t) >= 0 and e(t) even].
fn spaced_pattern(e: Affine, t_min: i128) -> TailPattern {
    if e.a == 0 {
        let digit = u8::from(e.b >= 0 && e.b % 2 == 0);
        return TailPattern {
            from: t_min,
            digits: vec![digit],
        };
    }
    if e.a < 0 {
        return TailPattern {
            from: settle_point(e, t_min, false),
            digits: vec![0],
        };
    }
    let from = settle_point(e, t_min, true);
    if e.a % 2 == 0 {
        let digit = u8::from(e.eval(from) % 2 == 0);
        TailPattern {
            from,
            digits: vec![digit],
        }
    } else {
        let first = u8::from(e.eval(from) % 2 == 0);
        TailPattern {
            from,
            digits: vec![first, 1 - first],
        }
    }
}

/// Pattern of [d(t) == 0] with d non-constant treated as a single crossing.
fn spike_pattern(d: Affine, t_min: i128) -> TailPattern {
    if d.a == 0 {
        let digit = u8::from(d.b == 0);
        return TailPattern {
            from: t_min,
            digits: vec![digit],
        };
    }
    let mut from = t_min;
    if d.b % d.a == 0 {
        let crossing = -d.b / d.a;
        if crossing >= t_min {
            from = crossing + 1;
        }
    }
    TailPattern {
        from,
        digits: vec![0],
    }
}

/// Pattern of a constant row read along an affine column. Past the row's
/// preperiod the column index lands in the repeating part, so the pattern
/// period divides the row period.
fn constant_pattern(value: &PeriodicDigitString, column: Affine, t_min: i128) -> Option<TailPattern> {
    debug_assert!(column.a > 0);
    let preperiod = value.preperiod().len() as i128;
    let word = value.period();
    let period = word.len() as i128;
    let into_period = Affine {
        a: column.a,
        b: column.b - preperiod - 1,
    };
    let from = settle_point(into_period, t_min, true);
    let g = column.a.gcd(&period);
    let len = period / g;
    if len as usize > MAX_PERIOD {
        return None;
    }
    let digits = (0..len)
        .map(|i| {
            let offset = (column.eval(from + i) - preperiod - 1).rem_euclid(period);
            word[offset as usize].value()
        })
        .collect();
    Some(TailPattern { from, digits })
}

/// Pattern of an interleaved pair. When the row function preserves parity the
/// call reduces to one side; otherwise the position variable is split into
/// even and odd classes and the two class patterns are merged.
fn interleave_pattern(
    odd_side: &GeneratorFamily,
    even_side: &GeneratorFamily,
    row: Affine,
    column: Affine,
    t_min: i128,
) -> Option<TailPattern> {
    if row.a % 2 == 0 {
        return if row.b % 2 != 0 {
            let sub = Affine {
                a: row.a / 2,
                b: (row.b + 1) / 2,
            };
            pattern(odd_side, sub, column, t_min)
        } else {
            let sub = Affine {
                a: row.a / 2,
                b: row.b / 2,
            };
            pattern(even_side, sub, column, t_min)
        };
    }

    // Substituting t = 2u + r makes the row function parity-constant on each
    // class r, so each class resolves recursively over u.
    let class = |r: i128| -> Option<TailPattern> {
        let row_r = Affine {
            a: 2 * row.a,
            b: row.a * r + row.b,
        };
        let column_r = Affine {
            a: 2 * column.a,
            b: column.a * r + column.b,
        };
        let u_min = ceil_div(t_min - r, 2);
        let sub_is_odd = row_r.b.rem_euclid(2) == 1;
        let (side, sub) = if sub_is_odd {
            (
                odd_side,
                Affine {
                    a: row_r.a / 2,
                    b: (row_r.b + 1) / 2,
                },
            )
        } else {
            (
                even_side,
                Affine {
                    a: row_r.a / 2,
                    b: row_r.b / 2,
                },
            )
        };
        pattern(side, sub, column_r, u_min)
    };

    let even_class = class(0)?;
    let odd_class = class(1)?;

    let from = (2 * even_class.from).max(2 * odd_class.from + 1);
    let len_even = even_class.digits.len() as i128;
    let len_odd = odd_class.digits.len() as i128;
    let merged_len = (2 * len_even).lcm(&(2 * len_odd));
    if merged_len as usize > MAX_PERIOD {
        return None;
    }
    let digits = (0..merged_len)
        .map(|i| {
            let t = from + i;
            let r = t.rem_euclid(2);
            let u = (t - r) / 2;
            let (part, len) = if r == 0 {
                (&even_class, len_even)
            } else {
                (&odd_class, len_odd)
            };
            part.digits[(u - part.from).rem_euclid(len) as usize]
        })
        .collect();
    Some(TailPattern { from, digits })
}

/// Smallest t >= t_min from which the indicator [d(t) >= 0] equals `want`
/// permanently. Requires d.a > 0 when want is true and d.a < 0 otherwise, so
/// the indicator is eventually constant and a short scan around the crossing
/// finds the settle point.
fn settle_point(d: Affine, t_min: i128, want: bool) -> i128 {
    debug_assert!(if want { d.a > 0 } else { d.a < 0 });
    let crossing = -d.b / d.a;
    let start = t_min.max(crossing - 2);
    for t in start.. {
        if (d.eval(t) >= 0) == want {
            return t;
        }
    }
    unreachable!("affine indicator settles within two steps of its crossing")
}

fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i128::from(a.rem_euclid(b) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::digits::Digit;
    use crate::list::{ListSpec, TransfiniteList};
    use std::collections::BTreeSet;

    fn binary() -> BTreeSet<Digit> {
        [Digit::ZERO, Digit::ONE].into_iter().collect()
    }

    fn omega_list(name: &str, generator: GeneratorFamily) -> TransfiniteList {
        TransfiniteList::build(ListSpec {
            name: name.to_string(),
            base: 10,
            alphabet: binary(),
            prefix: Vec::new(),
            generator,
            tail: Vec::new(),
            horizon: 64,
        })
        .unwrap()
    }

    /// The one property that matters: the claimed pattern reproduces the
    /// actual self-digits at every checked position past `from`.
    fn assert_pattern_matches_rows(list: &TransfiniteList, span: u64) {
        let tail = certified_tail(list).expect("closed-form generator");
        assert!(tail.from >= list.prefix_len() as i128 + 1);
        assert!(!tail.digits.is_empty());
        let from = u64::try_from(tail.from).unwrap();
        let len = tail.digits.len() as u64;
        for t in from..from + span {
            let predicted = tail.digits[((t - from) % len) as usize];
            let actual = list.row_digit(t, t).unwrap().value();
            assert_eq!(predicted, actual, "self-digit at position {t}");
        }
    }

    #[test]
    fn patterns_match_rows_across_the_catalog() {
        assert_pattern_matches_rows(&catalog::ones_ladder(0).unwrap(), 300);
        assert_pattern_matches_rows(&catalog::ones_ladder(1).unwrap(), 300);
        assert_pattern_matches_rows(&catalog::ones_ladder(7).unwrap(), 300);
        assert_pattern_matches_rows(&catalog::alternating_pairs().unwrap(), 300);
        assert_pattern_matches_rows(
            &catalog::ones_ladder(3).unwrap().flatten_to_omega(),
            300,
        );
    }

    #[test]
    fn patterns_match_rows_for_reindexed_families() {
        assert_pattern_matches_rows(&omega_list("spaced", GeneratorFamily::SpacedPair), 300);
        assert_pattern_matches_rows(&omega_list("spikes", GeneratorFamily::Spike { gap: 4 }), 300);
        assert_pattern_matches_rows(
            &omega_list(
                "shifted-ladder",
                GeneratorFamily::Shifted {
                    inner: Box::new(GeneratorFamily::GeometricOnes),
                    offset: 3,
                },
            ),
            300,
        );
        assert_pattern_matches_rows(
            &omega_list(
                "strided-spikes",
                GeneratorFamily::Strided {
                    inner: Box::new(GeneratorFamily::Spike { gap: 0 }),
                    start: 1,
                    step: 2,
                },
            ),
            300,
        );
        assert_pattern_matches_rows(
            &omega_list(
                "shifted-interleave",
                GeneratorFamily::Interleave(
                    Box::new(GeneratorFamily::Shifted {
                        inner: Box::new(GeneratorFamily::GeometricOnes),
                        offset: 2,
                    }),
                    Box::new(GeneratorFamily::SpacedPair),
                ),
            ),
            300,
        );
    }

    #[test]
    fn constant_rows_follow_their_own_period_along_affine_columns() {
        let row = crate::digits::PeriodicDigitString::from_digit_values(&[0, 1], &[1, 0, 1], 10)
            .unwrap();
        let column = Affine { a: 2, b: 1 };
        let got = constant_pattern(&row, column, 1).expect("short period");
        assert!(!got.digits.is_empty());
        for i in 0..60 {
            let t = got.from + i;
            let predicted = got.digits[((t - got.from).rem_euclid(got.digits.len() as i128)) as usize];
            let actual = row.digit_at(column.eval(t) as u64).unwrap().value();
            assert_eq!(predicted, actual, "column {}", column.eval(t));
        }
    }

    #[test]
    fn settle_points_sit_exactly_on_the_sign_change() {
        let up = Affine { a: 2, b: -7 };
        assert_eq!(settle_point(up, 1, true), 4);
        assert_eq!(settle_point(up, 10, true), 10);
        let down = Affine { a: -3, b: 10 };
        assert_eq!(settle_point(down, 1, false), 4);
    }

    #[test]
    fn ceil_div_rounds_toward_positive_infinity() {
        assert_eq!(ceil_div(5, 2), 3);
        assert_eq!(ceil_div(4, 2), 2);
        assert_eq!(ceil_div(0, 2), 0);
        assert_eq!(ceil_div(-3, 2), -1);
        assert_eq!(ceil_div(-4, 2), -2);
    }
}
