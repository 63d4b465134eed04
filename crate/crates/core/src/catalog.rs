//! Ready-made lists used across documentation, tests, and the bundled
//! presets.
//!
//! All catalog lists work in base 10 over the alphabet `{0, 1}`, where the
//! digit-swap rule is fixed-point-free and every construction stays exact.

use std::collections::BTreeSet;

use crate::digits::{Digit, PeriodicDigitString};
use crate::error::Result;
use crate::list::{GeneratorFamily, ListSpec, TransfiniteList};

/// Window size that satisfies [`crate::diagonal::required_horizon`] for every
/// catalog list with generous slack.
pub const DEFAULT_HORIZON: u64 = 256;

fn binary_alphabet() -> BTreeSet<Digit> {
    [Digit::ZERO, Digit::ONE].into_iter().collect()
}

fn ones_limit() -> Result<PeriodicDigitString> {
    PeriodicDigitString::from_digit_values(&[], &[1], 10)
}

/// The ladder of ones: entry n carries ones at positions `1..=n`, with the
/// all-ones expansion as the single entry after them. `spike_rows` extra rows
/// are placed in front, each holding a single one just past its own index,
/// which shifts where every ladder entry sits without changing the diagonal.
pub fn ones_ladder(spike_rows: u64) -> Result<TransfiniteList> {
    let name = if spike_rows == 0 {
        "ones-ladder".to_string()
    } else {
        format!("spiked-ones-ladder-{spike_rows}")
    };
    let spikes = GeneratorFamily::Spike { gap: 1 };
    let prefix = (1..=spike_rows)
        .map(|i| spikes.entry(i, 10))
        .collect::<Result<Vec<_>>>()?;
    TransfiniteList::build(ListSpec {
        name,
        base: 10,
        alphabet: binary_alphabet(),
        prefix,
        generator: GeneratorFamily::GeometricOnes,
        tail: vec![ones_limit()?],
        horizon: DEFAULT_HORIZON,
    })
}

/// Spaced pairs interleaved with the ladder of ones: odd positions take the
/// spaced-pair rows in order, even positions take the ladder rows, and two
/// entries follow at the limit, the all-zero expansion and the all-ones one.
pub fn alternating_pairs() -> Result<TransfiniteList> {
    let odd = GeneratorFamily::Strided {
        inner: Box::new(GeneratorFamily::SpacedPair),
        start: 1,
        step: 2,
    };
    let generator = GeneratorFamily::Interleave(
        Box::new(odd),
        Box::new(GeneratorFamily::GeometricOnes),
    );
    TransfiniteList::build(ListSpec {
        name: "alternating-pairs".to_string(),
        base: 10,
        alphabet: binary_alphabet(),
        prefix: Vec::new(),
        generator,
        tail: vec![PeriodicDigitString::zero(10)?, ones_limit()?],
        horizon: DEFAULT_HORIZON,
    })
}
