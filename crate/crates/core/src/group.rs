//! Total multiplicative tables with an absorbing zero.
//!
//! A [`GroupTable`] stores the multiplication of a carrier `0..n`: row and
//! column 0 are identically zero, and the restriction to `1..n` is expected
//! to be a group with identity at index 1 (a semigroup is enough for
//! hyperring candidates, which bypass [`GroupTable::from_products`] checks
//! via [`GroupTable::from_products_unchecked`]).

use thiserror::Error;

use crate::eset::{ESet, Elem, MAX_ORDER};

/// Which group axiom failed, with a re-checkable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDefect {
    /// A product of nonzero elements left the carrier or hit zero.
    Closure { x: Elem, y: Elem },
    /// Index 1 is not a two-sided identity.
    Identity { x: Elem },
    /// No two-sided inverse for this element.
    Inverse { x: Elem },
    /// `(x·y)·z != x·(y·z)`.
    Associativity { x: Elem, y: Elem, z: Elem },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0:?}")]
    NotAGroup(GroupDefect),
    #[error("order {0} out of range 2..={max}", max = MAX_ORDER)]
    OrderOutOfRange(usize),
}

/// Multiplication table on `0..n` with absorbing 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupTable {
    n: usize,
    prod: Vec<Elem>,
    commutative: bool,
}

impl GroupTable {
    /// Cyclic multiplicative structure of a carrier of order `n`: index
    /// `k >= 1` is `a^(k-1)` and products add exponents mod `n-1`.
    pub fn cyclic(n: usize) -> GroupTable {
        assert!((2..=MAX_ORDER).contains(&n), "order {n} out of range");
        let m = n - 1;
        let mut prod = vec![Elem::ZERO; n * n];
        for i in 1..n {
            for j in 1..n {
                prod[i * n + j] = Elem((((i - 1) + (j - 1)) % m + 1) as u8);
            }
        }
        GroupTable {
            n,
            prod,
            commutative: true,
        }
    }

    /// Validates an explicit table on the nonzero part. `rows[i][j]` is the
    /// product of elements `i+1` and `j+1`; the zero row and column are
    /// filled in. The identity must sit at index 1.
    pub fn from_products(n: usize, rows: &[Vec<Elem>]) -> Result<GroupTable, GroupError> {
        if !(2..=MAX_ORDER).contains(&n) {
            return Err(GroupError::OrderOutOfRange(n));
        }
        assert_eq!(rows.len(), n - 1, "expected {} product rows", n - 1);
        let mut prod = vec![Elem::ZERO; n * n];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n - 1, "expected {} entries per row", n - 1);
            for (j, &v) in row.iter().enumerate() {
                let (x, y) = (Elem(i as u8 + 1), Elem(j as u8 + 1));
                if v.is_zero() || v.index() >= n {
                    return Err(GroupError::NotAGroup(GroupDefect::Closure { x, y }));
                }
                prod[(i + 1) * n + (j + 1)] = v;
            }
        }
        let g = GroupTable {
            n,
            prod,
            commutative: false,
        };
        for x in g.nonzero() {
            if g.mul(Elem::ONE, x) != x || g.mul(x, Elem::ONE) != x {
                return Err(GroupError::NotAGroup(GroupDefect::Identity { x }));
            }
        }
        for x in g.nonzero() {
            for y in g.nonzero() {
                for z in g.nonzero() {
                    if g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)) {
                        return Err(GroupError::NotAGroup(GroupDefect::Associativity {
                            x,
                            y,
                            z,
                        }));
                    }
                }
            }
        }
        for x in g.nonzero() {
            if !g
                .nonzero()
                .any(|y| g.mul(x, y) == Elem::ONE && g.mul(y, x) == Elem::ONE)
            {
                return Err(GroupError::NotAGroup(GroupDefect::Inverse { x }));
            }
        }
        let commutative = g
            .nonzero()
            .all(|x| g.nonzero().all(|y| g.mul(x, y) == g.mul(y, x)));
        Ok(GroupTable { commutative, ..g })
    }

    /// Same layout as [`GroupTable::from_products`] but without the group
    /// checks; used for semigroup (hyperring) carriers. The commutative flag
    /// is computed from the table.
    pub fn from_products_unchecked(n: usize, rows: &[Vec<Elem>]) -> GroupTable {
        assert!((2..=MAX_ORDER).contains(&n), "order {n} out of range");
        let mut prod = vec![Elem::ZERO; n * n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                prod[(i + 1) * n + (j + 1)] = v;
            }
        }
        let mut g = GroupTable {
            n,
            prod,
            commutative: false,
        };
        g.commutative = g
            .nonzero()
            .all(|x| g.nonzero().all(|y| g.mul(x, y) == g.mul(y, x)));
        g
    }

    /// The dihedral group D3 on indices 1..=6: rotations first (1, r, r²),
    /// then the three reflections.
    pub fn dihedral_3() -> GroupTable {
        let enc = |rot: usize, flip: usize| Elem((1 + rot + 3 * flip) as u8);
        let mut rows = vec![vec![Elem::ZERO; 6]; 6];
        for r1 in 0..3 {
            for f1 in 0..2 {
                for r2 in 0..3 {
                    for f2 in 0..2 {
                        // reflections conjugate rotations: s·r = r⁻¹·s
                        let rot = if f1 == 0 { (r1 + r2) % 3 } else { (r1 + 3 - r2) % 3 };
                        let x = enc(r1, f1);
                        let y = enc(r2, f2);
                        rows[x.index() - 1][y.index() - 1] = enc(rot, f1 ^ f2);
                    }
                }
            }
        }
        let g = GroupTable::from_products(7, &rows).expect("D3 table is a group");
        assert!(!g.is_commutative());
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Order of the nonzero part.
    pub fn m(&self) -> usize {
        self.n - 1
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.prod[x.index() * self.n + y.index()]
    }

    /// Elementwise product `x · A`.
    pub fn set_mul(&self, x: Elem, set: ESet) -> ESet {
        set.iter().map(|y| self.mul(x, y)).collect()
    }

    /// Elementwise product `A · x`.
    pub fn set_mul_right(&self, set: ESet, x: Elem) -> ESet {
        set.iter().map(|y| self.mul(y, x)).collect()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.n as u8).map(Elem)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.n as u8).map(Elem)
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.nonzero()
            .find(|&y| self.mul(x, y) == Elem::ONE && self.mul(y, x) == Elem::ONE)
    }

    pub fn elem_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != Elem::ONE {
            acc = self.mul(acc, x);
            k += 1;
            assert!(k <= self.m(), "element {x} does not reach the identity");
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        self.nonzero().any(|x| self.elem_order(x) == self.m())
    }

    /// Elements of full order `n-1`.
    pub fn generators(&self) -> Vec<Elem> {
        self.nonzero()
            .filter(|&x| self.elem_order(x) == self.m())
            .collect()
    }
}
