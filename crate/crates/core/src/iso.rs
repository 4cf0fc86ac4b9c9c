//! Canonical forms and isomorphism testing.
//!
//! A hyperfield isomorphism must restrict to a multiplicative-group
//! isomorphism fixing 0, so candidates are found by mapping a generating
//! tuple of one group onto tuples of the other and extending
//! multiplicatively. Canonical keys encode the group table relabeled into a
//! breadth-first normal form together with the lexicographically minimal
//! transported addition table; equal keys mean isomorphic structures.

use thiserror::Error;

use crate::eset::{ESet, Elem};
use crate::group::GroupTable;
use crate::hyperfield::{Hyperfield, HyperStruct};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IsoError {
    #[error("relabeling is not an automorphism of the multiplicative table")]
    NotAutomorphism,
    #[error("orders differ: {0} vs {1}")]
    IncompatibleOrders(usize, usize),
}

/// Bijection on the carrier fixing 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relabeling {
    perm: Vec<Elem>,
}

impl Relabeling {
    pub fn identity(n: usize) -> Relabeling {
        Relabeling {
            perm: (0..n as u8).map(Elem).collect(),
        }
    }

    pub fn from_perm(perm: Vec<Elem>) -> Relabeling {
        debug_assert_eq!(perm[0], Elem::ZERO);
        Relabeling { perm }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.perm[x.index()]
    }

    pub fn apply_set(&self, set: ESet) -> ESet {
        set.iter().map(|e| self.apply(e)).collect()
    }

    pub fn inverse(&self) -> Relabeling {
        let mut perm = vec![Elem::ZERO; self.perm.len()];
        for (i, &img) in self.perm.iter().enumerate() {
            perm[img.index()] = Elem(i as u8);
        }
        Relabeling { perm }
    }

    /// `self` after `first`: the map `x ↦ self(first(x))`.
    pub fn compose(&self, first: &Relabeling) -> Relabeling {
        Relabeling {
            perm: first.perm.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Whether this map respects the multiplicative table.
    pub fn is_automorphism(&self, g: &GroupTable) -> bool {
        self.n() == g.n()
            && g.elems().all(|x| {
                g.elems()
                    .all(|y| self.apply(g.mul(x, y)) == g.mul(self.apply(x), self.apply(y)))
            })
    }
}

/// Transports both tables of `h` along `r`: the image structure has
/// `add'(r x, r y) = r(add(x, y))` and likewise for products.
pub(crate) fn transport(h: &HyperStruct, r: &Relabeling) -> HyperStruct {
    let n = h.n();
    let mut prod_rows = vec![vec![Elem::ZERO; n - 1]; n - 1];
    for x in h.nonzero() {
        for y in h.nonzero() {
            prod_rows[r.apply(x).index() - 1][r.apply(y).index() - 1] = r.apply(h.mul(x, y));
        }
    }
    let mul = GroupTable::from_products_unchecked(n, &prod_rows);
    let mut out = HyperStruct::from_fn(mul, |_, _| ESet::EMPTY);
    for x in h.elems() {
        for y in h.elems() {
            out.set_cell(r.apply(x), r.apply(y), r.apply_set(h.add(x, y)));
        }
    }
    out
}

/// All isomorphisms from `src` to `dst` (restricted to the nonzero parts,
/// extended by 0 ↦ 0). Empty when the groups are not isomorphic.
pub fn group_isomorphisms(src: &GroupTable, dst: &GroupTable) -> Vec<Relabeling> {
    if src.n() != dst.n() {
        return Vec::new();
    }
    let gens = generating_tuple(src);
    let mut found = Vec::new();
    let mut images = vec![Elem::ZERO; gens.len()];
    extend_isomorphisms(src, dst, &gens, &mut images, 0, &mut found);
    found
}

/// A small generating tuple: greedily add the lowest element outside the
/// generated subgroup.
fn generating_tuple(g: &GroupTable) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = closure(g, &gens);
    while span.len() < g.m() {
        let next = g
            .nonzero()
            .find(|x| !span.contains(x))
            .expect("span is proper");
        gens.push(next);
        span = closure(g, &gens);
    }
    gens
}

/// Subgroup generated by `gens`, in breadth-first discovery order.
fn closure(g: &GroupTable, gens: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; g.n()];
    let mut order = vec![Elem::ONE];
    seen[1] = true;
    let mut cursor = 0;
    while cursor < order.len() {
        let x = order[cursor];
        cursor += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y.index()] {
                seen[y.index()] = true;
                order.push(y);
            }
        }
    }
    order
}

fn extend_isomorphisms(
    src: &GroupTable,
    dst: &GroupTable,
    gens: &[Elem],
    images: &mut Vec<Elem>,
    depth: usize,
    found: &mut Vec<Relabeling>,
) {
    if depth == gens.len() {
        if let Some(r) = build_hom(src, dst, gens, images) {
            found.push(r);
        }
        return;
    }
    for y in dst.nonzero() {
        // generator images must preserve element order
        if dst.elem_order(y) == src.elem_order(gens[depth]) {
            images[depth] = y;
            extend_isomorphisms(src, dst, gens, images, depth + 1, found);
        }
    }
}

/// Extends generator images to a full map and validates it as a bijective
/// homomorphism.
fn build_hom(
    src: &GroupTable,
    dst: &GroupTable,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Relabeling> {
    let n = src.n();
    let mut map = vec![None; n];
    map[0] = Some(Elem::ZERO);
    map[1] = Some(Elem::ONE);
    let mut frontier = vec![Elem::ONE];
    while let Some(x) = frontier.pop() {
        let fx = map[x.index()].unwrap();
        for (&s, &fs) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let fy = dst.mul(fx, fs);
            match map[y.index()] {
                None => {
                    map[y.index()] = Some(fy);
                    frontier.push(y);
                }
                Some(prev) if prev != fy => return None,
                Some(_) => {}
            }
        }
    }
    let perm: Vec<Elem> = map.into_iter().collect::<Option<_>>()?;
    let r = Relabeling { perm };
    let mut hit = vec![false; n];
    for &img in &r.perm {
        if std::mem::replace(&mut hit[img.index()], true) {
            return None;
        }
    }
    src.nonzero()
        .all(|x| {
            src.nonzero()
                .all(|y| r.apply(src.mul(x, y)) == dst.mul(r.apply(x), r.apply(y)))
        })
        .then_some(r)
}

/// All automorphisms of the multiplicative table, extended by 0 ↦ 0. For a
/// cyclic group of order m these are the φ(m) maps `a ↦ a^u`, gcd(u, m) = 1.
pub fn mult_automorphisms(g: &GroupTable) -> Vec<Relabeling> {
    group_isomorphisms(g, g)
}

/// Relabels a verified structure along a multiplicative automorphism.
pub fn relabel(h: &Hyperfield, r: &Relabeling) -> Result<Hyperfield, IsoError> {
    if !r.is_automorphism(h.base().mul_table()) {
        return Err(IsoError::NotAutomorphism);
    }
    let base = transport(h.base(), r);
    debug_assert_eq!(base.mul_table(), h.base().mul_table());
    Ok(Hyperfield::verified(base, h.mode()).expect("relabeled structure verifies identically"))
}

/// Canonical key: group normal form followed by the minimal addition
/// encoding. Equal keys are equivalent to the existence of an isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonKey(Vec<u8>);

impl CanonKey {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Row-major little-endian cell masks; catalog stability depends on this
/// encoding, so it is fixed here once.
fn encode_add(h: &HyperStruct) -> Vec<u8> {
    h.add_cells()
        .iter()
        .flat_map(|c| c.mask().to_le_bytes())
        .collect()
}

fn encode_mul(g: &GroupTable) -> Vec<u8> {
    let mut out = Vec::with_capacity((g.n() - 1) * (g.n() - 1));
    for x in g.nonzero() {
        for y in g.nonzero() {
            out.push(g.mul(x, y).0);
        }
    }
    out
}

/// Breadth-first normal form of the group: the minimal relabeled table over
/// all generating tuples, with every relabeling that attains it. Isomorphic
/// groups share the normal form, and the attaining relabelings differ by
/// exactly the automorphism group.
fn group_normal_form(g: &GroupTable) -> (Vec<u8>, Vec<Relabeling>) {
    let gens = generating_tuple(g);
    let arity = gens.len();
    let mut best: Option<(Vec<u8>, Vec<Relabeling>)> = None;
    let mut tuple = vec![Elem::ZERO; arity];
    let mut stack = vec![(0usize, Vec::new())];
    // depth-first over all tuples of the same arity that generate g
    while let Some((depth, chosen)) = stack.pop() {
        if depth == arity {
            for (slot, &e) in tuple.iter_mut().zip(&chosen) {
                *slot = e;
            }
            let span = closure(g, &tuple);
            if span.len() != g.m() {
                continue;
            }
            // relabel by discovery order: identity first, then new elements
            // as words in the tuple lengthen
            let mut perm = vec![Elem::ZERO; g.n()];
            for (new_index, old) in span.iter().enumerate() {
                perm[old.index()] = Elem(new_index as u8 + 1);
            }
            let r = Relabeling { perm };
            let relabeled = transport_group(g, &r);
            let code = encode_mul(&relabeled);
            match &mut best {
                None => best = Some((code, vec![r])),
                Some((bc, rs)) => {
                    if code < *bc {
                        *bc = code;
                        rs.clear();
                        rs.push(r);
                    } else if code == *bc {
                        rs.push(r);
                    }
                }
            }
            continue;
        }
        for y in g.nonzero() {
            let mut next = chosen.clone();
            next.push(y);
            stack.push((depth + 1, next));
        }
    }
    best.expect("every group has a generating tuple")
}

fn transport_group(g: &GroupTable, r: &Relabeling) -> GroupTable {
    let n = g.n();
    let mut rows = vec![vec![Elem::ZERO; n - 1]; n - 1];
    for x in g.nonzero() {
        for y in g.nonzero() {
            rows[r.apply(x).index() - 1][r.apply(y).index() - 1] = r.apply(g.mul(x, y));
        }
    }
    GroupTable::from_products_unchecked(n, &rows)
}

pub(crate) fn canonical_key_struct(h: &HyperStruct) -> CanonKey {
    canonical_form_struct(h).0
}

/// Canonical key plus the representative structure attaining it.
pub(crate) fn canonical_form_struct(h: &HyperStruct) -> (CanonKey, HyperStruct) {
    let (group_code, relabelings) = group_normal_form(h.mul_table());
    let mut best: Option<(Vec<u8>, HyperStruct)> = None;
    for r in &relabelings {
        let t = transport(h, r);
        let code = encode_add(&t);
        if best.as_ref().is_none_or(|(bc, _)| code < *bc) {
            best = Some((code, t));
        }
    }
    let (add_code, table) = best.expect("at least one relabeling");
    let mut bytes = group_code;
    bytes.extend_from_slice(&add_code);
    (CanonKey(bytes), table)
}

/// Lexicographic minimum of the addition encoding over all structure
/// relabelings compatible with the multiplicative group.
pub fn canonical_key(h: &Hyperfield) -> CanonKey {
    canonical_key_struct(h.base())
}

/// Isomorphism witness between verified structures of the same order, if
/// one exists. The witness can be re-checked with [`transport`]-style
/// relabeling: it maps `h1` cell-for-cell onto `h2`.
pub fn are_isomorphic(h1: &Hyperfield, h2: &Hyperfield) -> Result<Option<Relabeling>, IsoError> {
    if h1.n() != h2.n() {
        return Err(IsoError::IncompatibleOrders(h1.n(), h2.n()));
    }
    for psi in group_isomorphisms(h1.base().mul_table(), h2.base().mul_table()) {
        if transport(h1.base(), &psi) == *h2.base() {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

/// Index of the unique catalog entry with the same canonical key.
pub fn match_catalog(h: &Hyperfield, catalog: &[Hyperfield]) -> Option<usize> {
    let key = canonical_key(h);
    catalog.iter().position(|c| canonical_key(c) == key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hyperfield::Mode;

    /// The a ↔ e, b ↔ d interchange on an order-7 carrier.
    fn swap_relabeling() -> Relabeling {
        Relabeling::from_perm(vec![
            Elem(0),
            Elem(1),
            Elem(6),
            Elem(5),
            Elem(4),
            Elem(3),
            Elem(2),
        ])
    }

    #[test]
    fn cyclic_six_has_two_automorphisms() {
        let auts = mult_automorphisms(&GroupTable::cyclic(7));
        assert_eq!(auts.len(), 2);
        assert!(auts.contains(&Relabeling::identity(7)));
        assert!(auts.contains(&swap_relabeling()));
    }

    #[test]
    fn cyclic_four_has_two_automorphisms() {
        assert_eq!(mult_automorphisms(&GroupTable::cyclic(5)).len(), 2);
    }

    #[test]
    fn automorphism_count_matches_brute_force() {
        // every permutation of the six nonzero elements, tested directly
        // for the homomorphism property
        let g = GroupTable::cyclic(7);
        let mut perm: Vec<u8> = (1..7).collect();
        let mut count = 0;
        let mut total = 0;
        permute(&mut perm, 0, &mut |p| {
            total += 1;
            let full: Vec<Elem> = std::iter::once(Elem::ZERO)
                .chain(p.iter().map(|&v| Elem(v)))
                .collect();
            if Relabeling::from_perm(full).is_automorphism(&g) {
                count += 1;
            }
        });
        assert_eq!(total, 720);
        assert_eq!(count, mult_automorphisms(&g).len());
    }

    fn permute(items: &mut Vec<u8>, k: usize, visit: &mut impl FnMut(&[u8])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn relabel_identity_and_involution() {
        let h = fixtures::catalog(9);
        let id = Relabeling::identity(7);
        assert_eq!(relabel(&h, &id).unwrap(), h);
        let swap = swap_relabeling();
        let once = relabel(&h, &swap).unwrap();
        assert_eq!(relabel(&once, &swap).unwrap(), h);
    }

    #[test]
    fn relabel_rejects_non_automorphisms() {
        let h = fixtures::catalog(9);
        let bad = Relabeling::from_perm(vec![
            Elem(0),
            Elem(2),
            Elem(1),
            Elem(3),
            Elem(4),
            Elem(5),
            Elem(6),
        ]);
        assert_eq!(relabel(&h, &bad), Err(IsoError::NotAutomorphism));
    }

    #[test]
    fn augmented_225_interchanges_into_275() {
        let aug = Hyperfield::verified(fixtures::augmented_225_struct(), Mode::Hyperfield).unwrap();
        let swapped = relabel(&aug, &swap_relabeling()).unwrap();
        assert_eq!(swapped.base(), &fixtures::catalog_struct(275));
        assert_eq!(canonical_key(&aug), canonical_key(&fixtures::catalog(275)));
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        for &num in &[3, 9, 143, 277] {
            let h = fixtures::catalog(num);
            for r in mult_automorphisms(h.base().mul_table()) {
                let moved = relabel(&h, &r).unwrap();
                assert_eq!(canonical_key(&moved), canonical_key(&h), "entry {num}");
            }
        }
    }

    #[test]
    fn diagonal_twins_get_distinct_keys() {
        // entries 3 and 4 differ only in their diagonal cells
        assert_ne!(
            canonical_key(&fixtures::catalog(3)),
            canonical_key(&fixtures::catalog(4))
        );
    }

    #[test]
    fn isomorphism_witnesses_are_checkable() {
        let h = fixtures::catalog(9);
        let moved = relabel(&h, &swap_relabeling()).unwrap();
        let witness = are_isomorphic(&h, &moved).unwrap().expect("isomorphic");
        assert_eq!(transport(h.base(), &witness), *moved.base());
        assert!(are_isomorphic(&fixtures::catalog(3), &fixtures::catalog(4))
            .unwrap()
            .is_none());
        let this = fixtures::catalog(277);
        let id_witness = are_isomorphic(&this, &this).unwrap().unwrap();
        assert_eq!(transport(this.base(), &id_witness), *this.base());
    }

    #[test]
    fn incompatible_orders_error() {
        let k = crate::parse_table("order 2\nmul cyclic\n{0} {1}\n{1} {0,1}\n").unwrap();
        let k = Hyperfield::verified(k, Mode::Hyperfield).unwrap();
        match are_isomorphic(&k, &fixtures::catalog(9)) {
            Err(IsoError::IncompatibleOrders(2, 7)) => {}
            other => panic!("expected order mismatch, got {other:?}"),
        }
    }

    #[test]
    fn match_catalog_finds_unique_entry() {
        let catalog: Vec<_> = [3, 4, 9].iter().map(|&n| fixtures::catalog(n)).collect();
        let moved = relabel(&fixtures::catalog(9), &swap_relabeling()).unwrap();
        assert_eq!(match_catalog(&moved, &catalog), Some(2));
        assert_eq!(match_catalog(&fixtures::catalog(277), &catalog), None);
    }
}
