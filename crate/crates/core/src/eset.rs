//! Carrier elements and bitmask element sets.
//!
//! Carriers are indexed `0..n` with index 0 reserved for the additive
//! neutral, multiplicatively absorbing element. When the multiplicative
//! group is cyclic, index `k >= 1` denotes `a^(k-1)` for a fixed generator
//! `a`, so the elements print as `0, 1, a, b, c, ...`.

use std::fmt;
use std::ops::{BitAnd, BitOr};

/// Largest supported carrier size; keeps an [`ESet`] inside one `u16`.
pub const MAX_ORDER: usize = 16;

const LETTERS: &[u8; 14] = b"abcdefghijklmn";

/// Index of a carrier element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Printable name: `0`, `1`, then `a`, `b`, ... for the generator powers.
    pub fn name(self) -> char {
        match self.0 {
            0 => '0',
            1 => '1',
            k => LETTERS[k as usize - 2] as char,
        }
    }

    pub fn from_name(name: &str) -> Option<Elem> {
        let mut chars = name.chars();
        let c = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        match c {
            '0' => Some(Elem(0)),
            '1' => Some(Elem(1)),
            c => LETTERS
                .iter()
                .position(|&l| l as char == c)
                .map(|k| Elem(k as u8 + 2)),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl serde::Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.name())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Subset of a carrier, stored as a bitmask over element indices.
///
/// The empty set is representable for set algebra, but an empty cell in an
/// addition table is never legal and is reported by the verifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ESet {
    mask: u16,
}

impl ESet {
    pub const EMPTY: ESet = ESet { mask: 0 };

    pub fn from_mask(mask: u16) -> ESet {
        ESet { mask }
    }

    pub fn mask(self) -> u16 {
        self.mask
    }

    pub fn singleton(e: Elem) -> ESet {
        ESet { mask: 1 << e.0 }
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> ESet {
        debug_assert!(n <= MAX_ORDER);
        ESet {
            mask: if n == 16 { !0 } else { (1u16 << n) - 1 },
        }
    }

    /// The nonzero part `1..n`.
    pub fn full_nonzero(n: usize) -> ESet {
        ESet {
            mask: ESet::full(n).mask & !1,
        }
    }

    pub fn contains(self, e: Elem) -> bool {
        self.mask >> e.0 & 1 == 1
    }

    pub fn insert(&mut self, e: Elem) {
        self.mask |= 1 << e.0;
    }

    pub fn remove(&mut self, e: Elem) {
        self.mask &= !(1 << e.0);
    }

    pub fn with(self, e: Elem) -> ESet {
        ESet {
            mask: self.mask | 1 << e.0,
        }
    }

    pub fn without(self, e: Elem) -> ESet {
        ESet {
            mask: self.mask & !(1 << e.0),
        }
    }

    pub fn minus(self, other: ESet) -> ESet {
        ESet {
            mask: self.mask & !other.mask,
        }
    }

    pub fn complement(self, n: usize) -> ESet {
        ESet::full(n).minus(self)
    }

    pub fn card(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn is_subset(self, other: ESet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn intersects(self, other: ESet) -> bool {
        self.mask & other.mask != 0
    }

    /// Elements in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = Elem> {
        let mut mask = self.mask;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let k = mask.trailing_zeros() as u8;
                mask &= mask - 1;
                Some(Elem(k))
            }
        })
    }
}

impl BitOr for ESet {
    type Output = ESet;
    fn bitor(self, rhs: ESet) -> ESet {
        ESet {
            mask: self.mask | rhs.mask,
        }
    }
}

impl BitAnd for ESet {
    type Output = ESet;
    fn bitand(self, rhs: ESet) -> ESet {
        ESet {
            mask: self.mask & rhs.mask,
        }
    }
}

impl FromIterator<Elem> for ESet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> ESet {
        let mut s = ESet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in 0..MAX_ORDER as u8 {
            let e = Elem(k);
            assert_eq!(Elem::from_name(&e.name().to_string()), Some(e));
        }
        assert_eq!(Elem::from_name("z"), None);
        assert_eq!(Elem::from_name("ab"), None);
    }

    #[test]
    fn set_algebra_is_exact() {
        let a = ESet::from_iter([Elem(1), Elem(3)]);
        let b = ESet::from_iter([Elem(3), Elem(5)]);
        assert_eq!((a | b).card(), 3);
        assert_eq!(a & b, ESet::singleton(Elem(3)));
        assert_eq!(a.minus(b), ESet::singleton(Elem(1)));
        assert_eq!(a.complement(7).card(), 5);
        assert!(ESet::EMPTY.is_empty());
        assert_eq!(ESet::full(7).card(), 7);
        assert_eq!(ESet::full_nonzero(7).card(), 6);
        assert!(!ESet::full_nonzero(7).contains(Elem::ZERO));
    }

    #[test]
    fn display_uses_canonical_element_order() {
        let s = ESet::from_iter([Elem(4), Elem(0), Elem(2)]);
        assert_eq!(s.to_string(), "{0,a,c}");
    }
}
