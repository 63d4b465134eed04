//! Built-in experiment definitions.
//!
//! Each preset is an ordinary definition file embedded as text, so presets
//! exercise exactly the same parser and engines as user files do.

/// One built-in experiment: a name, a one-line summary, and its source.
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|preset| preset.name == name)
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "paper-original-set",
        summary: "all-ones ladder diagonalized in limit order and re-listed order",
        source: r#"version 1

# The ladder of finite all-ones strings with the all-ones repeater after
# them, and the same entries re-listed with the repeater moved to the front.
[list original]
generator = geometric-ones
tail = 0.[1]

[list original-relisted]
prefix = 0.[1]
generator = geometric-ones

[diagonal limit-order]
list = original

[diagonal relisted-order]
list = original-relisted
"#,
    },
    Preset {
        name: "paper-extended-set",
        summary: "five spiked entries before the ladder: diagonal recovery and partial locations",
        source: r#"version 1

# Five isolated spikes in front of the all-ones ladder, with the all-ones
# repeater at the limit position.
[list extended]
prefix = 0.01[0], 0.001[0], 0.0001[0], 0.00001[0], 0.000001[0]
generator = geometric-ones
tail = 0.[1]

[diagonal recovered]
list = extended
horizon = 256

[induction partial-locations]
list = extended
n-max = 10000
"#,
    },
    Preset {
        name: "paper-interleaved-set",
        summary: "two families alternating: diagonal lands past the first limit, locations double",
        source: r#"version 1

# Odd positions walk the two-ones family through its odd indices; even
# positions walk the all-ones ladder; two repeaters close the list.
[list interleaved]
generator = interleave(strided(spaced-pair, 1, 2), geometric-ones)
tail = 0.[0], 0.[1]

[diagonal recovered]
list = interleaved
horizon = 256

[induction partial-locations]
list = interleaved
n-max = 10000
"#,
    },
    Preset {
        name: "paper-spike-offsets",
        summary: "one, three, and seven leading spikes shift every partial location by as much",
        source: r#"version 1

# The same ladder with one, three, and seven spikes in front: the shift of
# every partial diagonal's location tracks the number of spikes exactly.
[list spiked-1]
prefix = 0.01[0]
generator = geometric-ones
tail = 0.[1]

[list spiked-3]
prefix = 0.01[0], 0.001[0], 0.0001[0]
generator = geometric-ones
tail = 0.[1]

[list spiked-7]
prefix = 0.01[0], 0.001[0], 0.0001[0], 0.00001[0], 0.000001[0], 0.0000001[0], 0.00000001[0]
generator = geometric-ones
tail = 0.[1]

[induction offset-1]
list = spiked-1
n-max = 1000

[induction offset-3]
list = spiked-3
n-max = 1000

[induction offset-7]
list = spiked-7
n-max = 1000
"#,
    },
    Preset {
        name: "paper-rat-census",
        summary: "orderings of the eight strings ending in three equal digits, walked two ways",
        source: r#"version 1

# All length-five binary strings ending in three equal digits, walked in
# every full ordering and in every ordered five-prefix; the two walks must
# agree on every count.
[stringset rat]
length = 5
where = ends-in-three-equal

[census every-ordering]
stringset = rat
mode = full

[census every-prefix]
stringset = rat
mode = prefix
"#,
    },
    Preset {
        name: "paper-rea-census",
        summary: "sampled orderings of all thirty-two length-five strings",
        source: r#"version 1

# All thirty-two length-five binary strings. The full ordering space is out
# of budget, so this samples orderings uniformly with a fixed seed.
[stringset rea]
length = 5

[census sampled-orderings]
stringset = rea
mode = sampled
samples = 100000
seed = 1
"#,
    },
    Preset {
        name: "paper-definitive-sizes",
        summary: "complete string sets always contain their diagonal, square sets never do",
        source: r#"version 1

# A complete set of length-n strings contains the diagonal of every ordering,
# and an n-element set of length-n strings never does.
[stringset full-two]
length = 2

[stringset full-three]
length = 3

[stringset square-three]
elements = 001 010 100

[census always-member]
stringset = full-two
mode = full

[census always-member-prefixes]
stringset = full-three
mode = prefix

[census never-member]
stringset = square-three
mode = full
"#,
    },
    Preset {
        name: "paper-evens-pairing",
        summary: "halving pairs the evens with the naturals while the running counts disagree",
        source: r#"version 1

# Halving pairs the evens with the naturals perfectly even though the
# running counts disagree two to one; the identity embedding instead leaves
# every odd number unpaired.
[set naturals]
members = naturals

[set evens]
members = residue(2, 0)

[pairing halve]
forward = n / 2

[pairing embed]
forward = n

[audit halving-claim]
map = halve
from = evens
to = naturals
n-max = 200

[audit identity-claim]
map = embed
from = evens
to = naturals
n-max = 200
"#,
    },
    Preset {
        name: "paper-count-profiles",
        summary: "running member counts of trimmed, halved, and square subsets of the naturals",
        source: r#"version 1

# Running member counts for three subsets of the naturals, compared against
# the naturals: a removed finite chunk stabilizes as a difference, the evens
# as a ratio, and the squares fit neither shape.
[set naturals]
members = naturals

[set trimmed]
members = remove(naturals, 1 2 3 4 5)

[set evens]
members = residue(2, 0)

[set squares]
members = squares

[profiles whole-against-trimmed]
left = naturals
right = trimmed
n-max = 10000

[profiles whole-against-evens]
left = naturals
right = evens
n-max = 10000

[profiles whole-against-squares]
left = naturals
right = squares
n-max = 10000
"#,
    },
];
