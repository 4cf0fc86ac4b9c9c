//! Explicit hyperfield constructions: augmentation, the skew families over
//! an arbitrary group, the dagger construction, and finite tropical chains.

use thiserror::Error;

use crate::eset::{ESet, Elem};
use crate::group::GroupTable;
use crate::hyperfield::{verify, Hyperfield, HyperStruct, Mode};

/// Mode a construction output should verify in: skew when the group is
/// noncommutative, plain hyperfield otherwise.
fn group_mode(g: &GroupTable) -> Mode {
    if g.is_commutative() {
        Mode::Hyperfield
    } else {
        Mode::SkewHyperfield
    }
}

fn checked(table: HyperStruct, mode: Mode, what: &str) -> Hyperfield {
    match Hyperfield::verified(table, mode) {
        Ok(h) => h,
        Err(report) => panic!("{what} must verify: {report}"),
    }
}

/// Extensive enlargement: every sum of nonzero, non-opposite elements gains
/// both addends, and opposite pairs sum to the whole carrier. Fields embed
/// as hyperfields with singleton sums, so this covers fields, hyperfields
/// and skew hyperfields alike.
pub fn augment(h: &Hyperfield) -> Hyperfield {
    let n = h.n();
    let full = ESet::full(n);
    let table = HyperStruct::from_fn(h.base().mul_table().clone(), |x, y| {
        if y == h.opposite(x) {
            full
        } else {
            h.add(x, y).with(x).with(y)
        }
    });
    checked(table, h.mode(), "augmented structure")
}

/// The three skew families over a group G on the carrier `G ∪ {0}`:
///
/// 1. `x + y = {x, y}`, `x + x = G ∪ {0}`
/// 2. `x + y = {x, y}`, `x + x = (G ∪ {0}) ∖ {x}`
/// 3. `x + y = G ∖ {x, y}`, `x + x = {0, x}`
pub fn shf_variant(g: &GroupTable, variant: u8) -> Hyperfield {
    let n = g.n();
    let full = ESet::full(n);
    let nonzero = ESet::full_nonzero(n);
    let table = HyperStruct::from_fn(g.clone(), |x, y| match (variant, x == y) {
        (1, false) | (2, false) => ESet::singleton(x).with(y),
        (1, true) => full,
        (2, true) => full.without(x),
        (3, false) => nonzero.without(x).without(y),
        (3, true) => ESet::singleton(Elem::ZERO).with(x),
        _ => panic!("variant must be 1, 2 or 3"),
    });
    checked(table, group_mode(g), "skew construction")
}

/// Doubles a group by a sign: the carrier is `G × {-1, 1} ∪ {0}` with
/// `(x, i)·(y, j) = (xy, ij)`. `(x, +)` keeps the index of x, `(x, -)` is
/// shifted up by |G|.
pub fn sign_double_group(g: &GroupTable) -> GroupTable {
    let m = g.m();
    let n = 2 * m + 1;
    let enc = |x: Elem, s: usize| Elem((x.index() + s * m) as u8);
    let mut rows = vec![vec![Elem::ZERO; n - 1]; n - 1];
    for x in g.nonzero() {
        for y in g.nonzero() {
            for sx in 0..2 {
                for sy in 0..2 {
                    rows[enc(x, sx).index() - 1][enc(y, sy).index() - 1] =
                        enc(g.mul(x, y), sx ^ sy);
                }
            }
        }
    }
    GroupTable::from_products(n, &rows).expect("sign double of a group is a group")
}

/// The two signed-double families on `G × {-1, 1} ∪ {0}`:
///
/// 4. distinct non-opposite pairs sum to the pair itself; `(x,i) + (x,-i)`
///    is the whole carrier
/// 5. distinct non-opposite pairs gain both sign mates;
///    `(x,i) + (x,i) = H ∖ {(x,i), (x,-i), 0}` and
///    `(x,i) + (x,-i) = H ∖ {(x,i), (x,-i)}`
pub fn signed_double(g: &GroupTable, variant: u8) -> Hyperfield {
    let m = g.m();
    let double = sign_double_group(g);
    let full = ESet::full(double.n());
    let mate = |x: Elem| -> Elem {
        // the same group element with the sign flipped
        if x.index() > m {
            Elem((x.index() - m) as u8)
        } else {
            Elem((x.index() + m) as u8)
        }
    };
    let table = HyperStruct::from_fn(double.clone(), |x, y| match variant {
        4 => {
            if y == mate(x) {
                full
            } else {
                ESet::singleton(x).with(y)
            }
        }
        5 => {
            if y == x {
                full.without(x).without(mate(x)).without(Elem::ZERO)
            } else if y == mate(x) {
                full.without(x).without(mate(x))
            } else {
                ESet::from_iter([x, y, mate(x), mate(y)])
            }
        }
        _ => panic!("variant must be 4 or 5"),
    });
    checked(table, group_mode(&double), "signed double")
}

/// `x + y = {x, y}` for distinct elements, `x + x = H ∖ {x}`.
pub fn h_theta(g: &GroupTable) -> Hyperfield {
    shf_variant(g, 2)
}

/// The dagger construction: `x + y = H ∖ {0, x, y}` for distinct elements,
/// `x + x = {0, x}`. Every element is self-opposite.
pub fn nakassis(g: &GroupTable) -> Hyperfield {
    shf_variant(g, 3)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("zero is not absorbing: 0·{0} != 0")]
    ZeroNotAbsorbing(Elem),
    #[error("product not associative at ({0}, {1}, {2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("product not commutative at ({0}, {1})")]
    NotCommutative(Elem, Elem),
    #[error("product not monotone: {0} <= {1} but {0}·{2} > {1}·{2}")]
    NotMonotone(Elem, Elem, Elem),
}

/// A finite chain `0 < e1 < ... < er` carrying an associative, commutative,
/// monotone product with absorbing 0. The element order is the index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedChain {
    prod: GroupTable,
}

impl OrderedChain {
    /// Validates an explicit product given by rows over the nonzero
    /// elements, as in [`GroupTable::from_products`] but without group
    /// axioms.
    pub fn new(n: usize, rows: &[Vec<Elem>]) -> Result<OrderedChain, ChainError> {
        let prod = GroupTable::from_products_unchecked(n, rows);
        for x in prod.elems() {
            if prod.mul(Elem::ZERO, x) != Elem::ZERO || prod.mul(x, Elem::ZERO) != Elem::ZERO {
                return Err(ChainError::ZeroNotAbsorbing(x));
            }
        }
        for x in prod.nonzero() {
            for y in prod.nonzero() {
                if prod.mul(x, y) != prod.mul(y, x) {
                    return Err(ChainError::NotCommutative(x, y));
                }
                for z in prod.nonzero() {
                    if prod.mul(prod.mul(x, y), z) != prod.mul(x, prod.mul(y, z)) {
                        return Err(ChainError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        for x in prod.elems() {
            for y in prod.elems() {
                if x.0 <= y.0 {
                    for z in prod.elems() {
                        if prod.mul(x, z).0 > prod.mul(y, z).0 {
                            return Err(ChainError::NotMonotone(x, y, z));
                        }
                    }
                }
            }
        }
        Ok(OrderedChain { prod })
    }

    /// The truncated chain of the given carrier size: `e_i · e_j =
    /// e_min(i+j-1, r)`, so `e1` is an identity and the top element is
    /// idempotent. For size 2 the nonzero part is the trivial group.
    pub fn truncated(size: usize) -> OrderedChain {
        assert!(size >= 2, "a chain needs at least 0 < e1");
        let r = size - 1;
        let rows: Vec<Vec<Elem>> = (1..=r)
            .map(|i| {
                (1..=r)
                    .map(|j| Elem((i + j - 1).min(r) as u8))
                    .collect()
            })
            .collect();
        OrderedChain::new(size, &rows).expect("truncated chains satisfy the chain laws")
    }

    /// The chain with annihilating products: every product of nonzero
    /// elements is 0. The only finite chain family whose strict max-plus
    /// structure distributes exactly — any product collision
    /// `x·y = x·z ≠ 0` with `y ≠ z` leaves `x·(y+z)` a nonzero singleton
    /// while `x·y + x·z` contains only smaller elements.
    pub fn annihilating(size: usize) -> OrderedChain {
        assert!(size >= 2, "a chain needs at least 0 < e1");
        let rows = vec![vec![Elem::ZERO; size - 1]; size - 1];
        OrderedChain::new(size, &rows).expect("annihilating chains satisfy the chain laws")
    }

    pub fn n(&self) -> usize {
        self.prod.n()
    }

    pub fn product_table(&self) -> &GroupTable {
        &self.prod
    }
}

/// The max-plus structure on a chain: `x + y = {max(x, y)}` for distinct
/// arguments; `x + x` is everything below x, inclusive or strict by the
/// flag (strictly below keeps x out of x - x). Returns an unverified
/// candidate: chains whose nonzero part is not a group only reach hyperring
/// mode, where distributivity holds as inclusion.
pub fn tropical_chain(chain: &OrderedChain, strict: bool) -> HyperStruct {
    HyperStruct::from_fn(chain.prod.clone(), |x, y| {
        if x != y {
            ESet::singleton(Elem(x.0.max(y.0)))
        } else {
            let below: ESet = (0..x.0 + if strict { 0 } else { 1 }).map(Elem).collect();
            if strict {
                below
            } else {
                below.with(x)
            }
        }
    })
}

/// Verified tropical chain in the strongest mode it supports.
pub fn tropical_chain_hyperfield(chain: &OrderedChain, strict: bool) -> Hyperfield {
    let table = tropical_chain(chain, strict);
    let mode = if verify(&table, Mode::Hyperfield).passed() {
        Mode::Hyperfield
    } else {
        Mode::Hyperring
    };
    checked(table, mode, "tropical chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate;
    use crate::field::prime_field_hyperfield;
    use crate::fixtures;
    use crate::iso::{are_isomorphic, canonical_key, match_catalog};

    #[test]
    fn augmented_field_matches_catalog_entry_2() {
        let z7 = prime_field_hyperfield(7).unwrap();
        let aug = augment(&z7);
        // cell-for-cell: 1 + 1 = {1} ∪ {b} and so on
        assert_eq!(aug.base(), &fixtures::catalog_struct(2));
    }

    #[test]
    fn augmentation_fixed_point() {
        let h = fixtures::catalog(277);
        assert_eq!(augment(&h).base(), h.base());
    }

    #[test]
    fn augment_143_gives_271() {
        let aug = augment(&fixtures::catalog(143));
        assert_eq!(
            canonical_key(&aug),
            canonical_key(&fixtures::catalog(271))
        );
    }

    #[test]
    fn skew_variants_over_d3_verify() {
        let d3 = GroupTable::dihedral_3();
        for v in 1..=3 {
            let h = shf_variant(&d3, v);
            assert_eq!(h.mode(), Mode::SkewHyperfield, "variant {v}");
        }
        for v in 4..=5 {
            let h = signed_double(&d3, v);
            assert_eq!(h.mode(), Mode::SkewHyperfield, "variant {v}");
            assert_eq!(h.n(), 13);
        }
    }

    #[test]
    fn skew_variants_over_z6_are_pairwise_non_isomorphic() {
        let z6 = GroupTable::cyclic(7);
        let hs: Vec<Hyperfield> = (1..=3).map(|v| shf_variant(&z6, v)).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(
                    are_isomorphic(&hs[i], &hs[j]).unwrap().is_none(),
                    "variants {} and {} collide",
                    i + 1,
                    j + 1
                );
            }
        }
    }

    #[test]
    fn h_theta_z6_is_catalog_entry_258() {
        let h = h_theta(&GroupTable::cyclic(7));
        assert_eq!(
            h.add(Elem(1), Elem(2)),
            ESet::from_iter([Elem(1), Elem(2)])
        );
        assert_eq!(canonical_key(&h), canonical_key(&fixtures::catalog(258)));
    }

    #[test]
    fn h_theta_z2_lands_in_the_order_3_catalog() {
        let h = h_theta(&GroupTable::cyclic(3));
        let catalog = enumerate(3);
        assert!(match_catalog(&h, &catalog).is_some());
    }

    #[test]
    fn nakassis_z6_cells_and_catalog_match() {
        let h = nakassis(&GroupTable::cyclic(7));
        assert_eq!(
            h.add(Elem(1), Elem(1)),
            ESet::from_iter([Elem(0), Elem(1)])
        );
        assert_eq!(
            h.add(Elem(1), Elem(2)),
            ESet::from_iter([Elem(3), Elem(4), Elem(5), Elem(6)])
        );
        for x in h.nonzero() {
            assert_eq!(h.opposite(x), x);
        }
        assert_eq!(canonical_key(&h), canonical_key(&fixtures::catalog(142)));
        // same defining formulas as skew variant 3
        assert_eq!(h.base(), shf_variant(&GroupTable::cyclic(7), 3).base());
    }

    #[test]
    fn signed_double_z3_variant_5_is_catalog_entry_81() {
        let h = signed_double(&GroupTable::cyclic(4), 5);
        assert_eq!(h.n(), 7);
        assert!(are_isomorphic(&h, &fixtures::catalog(81)).unwrap().is_some());
    }

    #[test]
    fn signed_double_variant_4_opposite_rows_cover_everything() {
        let h = signed_double(&GroupTable::cyclic(4), 4);
        let full = ESet::full(h.n());
        for x in h.nonzero() {
            assert_eq!(h.add(x, h.opposite(x)), full);
            assert_ne!(h.opposite(x), x);
        }
    }

    #[test]
    fn signed_double_of_trivial_group_is_an_order_3_hyperfield() {
        let h = signed_double(&GroupTable::cyclic(2), 4);
        assert_eq!(h.n(), 3);
        assert!(match_catalog(&h, &enumerate(3)).is_some());
    }

    #[test]
    fn nonstrict_two_chain_is_the_krasner_two_element_hyperfield() {
        let chain = OrderedChain::truncated(2);
        let h = tropical_chain_hyperfield(&chain, false);
        assert_eq!(h.mode(), Mode::Hyperfield);
        assert_eq!(h.add(Elem(1), Elem(1)), ESet::from_iter([Elem(0), Elem(1)]));
        assert!(match_catalog(&h, &enumerate(2)).is_some());
    }

    #[test]
    fn nonstrict_three_chain_verifies_as_hyperring() {
        let chain = OrderedChain::truncated(3);
        let h = tropical_chain_hyperfield(&chain, false);
        assert_eq!(h.mode(), Mode::Hyperring);
        for x in h.nonzero() {
            assert!(h.add(x, x).contains(x));
        }
    }

    #[test]
    fn strict_truncated_chain_cannot_distribute() {
        // t·(1+t) = {t} while t·1 + t·t = t + t = {0,1}: disjoint cells, so
        // no distributivity reading can hold over the truncated product
        let table = tropical_chain(&OrderedChain::truncated(3), true);
        let report = verify(&table, Mode::Hyperring);
        assert!(report.failed_axiom(crate::hyperfield::Axiom::DistributiveLeft).is_some());
    }

    #[test]
    fn strict_annihilating_chain_verifies_as_hyperring() {
        let chain = OrderedChain::annihilating(3);
        let h = tropical_chain_hyperfield(&chain, true);
        assert_eq!(h.mode(), Mode::Hyperring);
        for x in h.nonzero() {
            assert!(!h.add(x, x).contains(x), "strict diagonal keeps {x} out");
        }
    }

    #[test]
    fn invalid_chain_products_are_rejected() {
        // a non-monotone product: e1·e2 = e2 but e2·e2 = e1
        let rows = vec![
            vec![Elem(1), Elem(2)],
            vec![Elem(2), Elem(1)],
        ];
        assert!(matches!(
            OrderedChain::new(3, &rows),
            Err(ChainError::NotMonotone(..))
        ));
    }
}
