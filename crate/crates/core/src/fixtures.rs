//! Golden tables transcribed from the standard catalog of order-7
//! hyperfields (numbered `HF7^1` .. `HF7^277` in the literature).
//!
//! These are test anchors: the enumerator, the quotient construction and the
//! augmentation are all cross-checked against them. `AUGMENTED_225` is the
//! augmentation of entry 225, printed in the literature next to its
//! isomorphic catalog entry 275.

use crate::catalog::parse_table;
use crate::hyperfield::{Hyperfield, HyperStruct, Mode};

macro_rules! fixture_table {
    ($($num:literal => $file:literal),+ $(,)?) => {
        /// Catalog numbers with an embedded table, ascending.
        pub const FIXTURE_NUMBERS: &[u32] = &[$($num),+];

        /// Raw TableText for a transcribed catalog entry.
        pub fn catalog_text(num: u32) -> Option<&'static str> {
            match num {
                $($num => Some(include_str!($file)),)+
                _ => None,
            }
        }
    };
}

fixture_table! {
    1 => "fixtures/hf7_1.txt",
    2 => "fixtures/hf7_2.txt",
    3 => "fixtures/hf7_3.txt",
    4 => "fixtures/hf7_4.txt",
    5 => "fixtures/hf7_5.txt",
    6 => "fixtures/hf7_6.txt",
    9 => "fixtures/hf7_9.txt",
    11 => "fixtures/hf7_11.txt",
    13 => "fixtures/hf7_13.txt",
    61 => "fixtures/hf7_61.txt",
    81 => "fixtures/hf7_81.txt",
    95 => "fixtures/hf7_95.txt",
    96 => "fixtures/hf7_96.txt",
    101 => "fixtures/hf7_101.txt",
    110 => "fixtures/hf7_110.txt",
    137 => "fixtures/hf7_137.txt",
    141 => "fixtures/hf7_141.txt",
    142 => "fixtures/hf7_142.txt",
    143 => "fixtures/hf7_143.txt",
    160 => "fixtures/hf7_160.txt",
    225 => "fixtures/hf7_225.txt",
    234 => "fixtures/hf7_234.txt",
    245 => "fixtures/hf7_245.txt",
    246 => "fixtures/hf7_246.txt",
    258 => "fixtures/hf7_258.txt",
    267 => "fixtures/hf7_267.txt",
    271 => "fixtures/hf7_271.txt",
    275 => "fixtures/hf7_275.txt",
    276 => "fixtures/hf7_276.txt",
    277 => "fixtures/hf7_277.txt",
}

/// The augmentation of catalog entry 225 (isomorphic to entry 275).
pub const AUGMENTED_225: &str = include_str!("fixtures/hf7_aug225.txt");

/// Parsed, unverified table for a transcribed entry. Panics for numbers not
/// in [`FIXTURE_NUMBERS`].
pub fn catalog_struct(num: u32) -> HyperStruct {
    let text = catalog_text(num).unwrap_or_else(|| panic!("no fixture for catalog entry {num}"));
    parse_table(text).unwrap_or_else(|e| panic!("fixture {num} failed to parse: {e}"))
}

/// Verified hyperfield for a transcribed entry.
pub fn catalog(num: u32) -> Hyperfield {
    Hyperfield::verified(catalog_struct(num), Mode::Hyperfield)
        .unwrap_or_else(|r| panic!("fixture {num} failed to verify: {r}"))
}

pub fn augmented_225_struct() -> HyperStruct {
    parse_table(AUGMENTED_225).expect("augmented-225 fixture parses")
}

/// The subset of fixtures named by the enumeration cross-check: every one of
/// these must appear, up to isomorphism, in the enumerated order-7 catalog.
pub const GOLDEN_SET: &[u32] = &[
    2, 3, 9, 13, 61, 81, 137, 141, 142, 143, 160, 225, 234, 245, 246, 258, 267, 277,
];
