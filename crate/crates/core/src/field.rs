//! Prime and extension finite fields, multiplicative subgroups, and the
//! quotient hyperfield construction.
//!
//! Field elements are coded as integers `0..q` in mixed radix p (the code of
//! a polynomial is its coefficient vector read low-to-high). The quotient
//! F/G of a field by a multiplicative subgroup G relabels the cosets
//! `g^k·G ↦ a^k` for the least primitive element g, yielding a hyperfield
//! of order `index + 1` with cyclic multiplicative group.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::eset::{ESet, Elem};
use crate::group::GroupTable;
use crate::hyperfield::{verify, Hyperfield, HyperStruct, Mode};

/// Largest supported prime characteristic.
pub const MAX_PRIME: u64 = 1_000_000;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} exceeds the supported prime bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("modulus is not monic of degree >= 2")]
    BadModulus,
    #[error("modulus is reducible; factor with coefficients {factor:?}")]
    NotIrreducible { factor: Vec<u64> },
    #[error("index {index} does not divide the group order {group_order}")]
    IndexDoesNotDivide { index: u64, group_order: u64 },
}

/// A finite field `GF[p^d]`, elements coded as integers `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    d: usize,
    /// Monic modulus coefficients, low-to-high; `[0, 1]` for prime fields
    /// (the polynomial x, unused).
    modulus: Vec<u64>,
    q: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// The residue field Z_p.
pub fn make_prime_field(p: u64) -> Result<FiniteField, FieldError> {
    if p > MAX_PRIME {
        return Err(FieldError::PrimeTooLarge(p));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(FiniteField {
        p,
        d: 1,
        modulus: vec![0, 1],
        q: p,
    })
}

/// The extension `F_p[x]/(modulus)`; coefficients low-to-high, monic,
/// degree at least 2, irreducible over F_p.
pub fn make_extension_field(p: u64, modulus: &[u64]) -> Result<FiniteField, FieldError> {
    if p > MAX_PRIME {
        return Err(FieldError::PrimeTooLarge(p));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
    let d = modulus.len().saturating_sub(1);
    if d < 2 || modulus[d] != 1 {
        return Err(FieldError::BadModulus);
    }
    let q = p.checked_pow(d as u32).filter(|&q| q <= MAX_PRIME);
    let q = q.ok_or(FieldError::PrimeTooLarge(p))?;
    if let Some(factor) = reducible_witness(p, &modulus) {
        return Err(FieldError::NotIrreducible { factor });
    }
    Ok(FiniteField { p, d, modulus, q })
}

/// A monic proper factor of `modulus` over F_p, if any. Trial division by
/// every monic polynomial of degree up to deg/2; the fields here are tiny.
fn reducible_witness(p: u64, modulus: &[u64]) -> Option<Vec<u64>> {
    let d = modulus.len() - 1;
    for deg in 1..=d / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut factor: Vec<u64> = Vec::with_capacity(deg + 1);
            let mut rest = code;
            for _ in 0..deg {
                factor.push(rest % p);
                rest /= p;
            }
            factor.push(1);
            if poly_rem(p, modulus, &factor).iter().all(|&c| c == 0) {
                return Some(factor);
            }
        }
    }
    None
}

/// Remainder of polynomial division over F_p, coefficients low-to-high.
fn poly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let mut rem: Vec<u64> = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = mod_inverse(den[dd], p);
    while rem.len() > dd {
        let k = rem.len() - 1;
        let coef = rem[k] * lead_inv % p;
        if coef != 0 {
            for i in 0..=dd {
                let idx = k - dd + i;
                rem[idx] = (rem[idx] + p - coef * den[i] % p) % p;
            }
        }
        rem.pop();
    }
    rem
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p is prime here
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FiniteField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Short printable name: `Z_p` or `GF[p^d]`.
    pub fn name(&self) -> String {
        if self.d == 1 {
            format!("Z_{}", self.p)
        } else {
            format!("GF[{}^{}]", self.p, self.d)
        }
    }

    pub fn decode(&self, code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.d);
        let mut rest = code;
        for _ in 0..self.d {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c % self.p;
        }
        code
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let coeffs: Vec<u64> = self.decode(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.encode(&coeffs)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.d == 1 {
            return a % self.p * (b % self.p) % self.p;
        }
        let (ca, cb) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * self.d - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut rem = poly_rem(self.p, &prod, &self.modulus);
        rem.resize(self.d, 0);
        self.encode(&rem)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.encode(&[1]);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn one(&self) -> u64 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}

/// The least element (by code, i.e. lexicographic on coefficient vectors
/// read high-to-low) of full multiplicative order q-1.
pub fn primitive_element(field: &FiniteField) -> u64 {
    let target = field.q - 1;
    let factors = prime_factors(target);
    (1..field.q)
        .find(|&x| {
            factors
                .iter()
                .all(|&f| field.pow(x, target / f) != field.one())
        })
        .expect("the multiplicative group of a finite field is cyclic")
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative subgroup of a finite field, stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    carrier: BTreeSet<u64>,
    order: u64,
    index: u64,
}

impl Subgroup {
    pub fn carrier(&self) -> &BTreeSet<u64> {
        &self.carrier
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn contains(&self, x: u64) -> bool {
        self.carrier.contains(&x)
    }
}

/// The unique subgroup of the given index in the (cyclic) multiplicative
/// group: the image of the index-th power map.
pub fn subgroup_of_index(field: &FiniteField, index: u64) -> Result<Subgroup, FieldError> {
    let group_order = field.q - 1;
    if index == 0 || group_order % index != 0 {
        return Err(FieldError::IndexDoesNotDivide { index, group_order });
    }
    let order = group_order / index;
    let g = primitive_element(field);
    let step = field.pow(g, index);
    let mut carrier = BTreeSet::new();
    let mut acc = field.one();
    for _ in 0..order {
        carrier.insert(acc);
        acc = field.mul(acc, step);
    }
    debug_assert_eq!(carrier.len() as u64, order);
    Ok(Subgroup {
        carrier,
        order,
        index,
    })
}

/// Closed-form prediction for the difference span of an index-6 subgroup
/// of order m: `G - G = F` exactly when
///
/// - `-1 ∉ G` and `m >= 11`, or
/// - `-1 ∈ G` and the characteristic is 11 with `m >= 20`, 13 with
///   `m >= 28`, or anything else with `m >= 30`.
pub fn difference_span_predicted(field: &FiniteField, subgroup: &Subgroup) -> bool {
    debug_assert_eq!(subgroup.index(), 6, "the closed form covers index 6");
    let m = subgroup.order();
    if !subgroup.contains(field.neg(field.one())) {
        m >= 11
    } else if field.p() == 11 {
        m >= 20
    } else if field.p() == 13 {
        m >= 28
    } else {
        m >= 30
    }
}

/// Whether `{g - g' : g, g' ∈ G}` is all of F, by direct computation.
pub fn difference_span(field: &FiniteField, subgroup: &Subgroup) -> bool {
    let mut seen = vec![false; field.q as usize];
    let mut count = 0u64;
    for &a in &subgroup.carrier {
        for &b in &subgroup.carrier {
            let d = field.sub(a, b) as usize;
            if !seen[d] {
                seen[d] = true;
                count += 1;
            }
        }
    }
    count == field.q
}

/// Labels of the multiplicative cosets: 0 for the zero class, `k + 1` for
/// the coset `g^k·G` of the least primitive element g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetMap {
    labels: Vec<Elem>,
}

impl CosetMap {
    pub fn label(&self, code: u64) -> Elem {
        self.labels[code as usize]
    }
}

/// Krasner's quotient construction: classes modulo G with
/// `xG · yG = xyG` and `xG + yG = {(xp + yq)G : p, q ∈ G}`. The result is a
/// hyperfield of order `index + 1`; 0 lands in `xG + yG` exactly when
/// `-x ∈ yG`.
pub fn quotient_hyperfield(field: &FiniteField, subgroup: &Subgroup) -> (Hyperfield, CosetMap) {
    let index = subgroup.index as usize;
    let n = index + 1;
    let g = primitive_element(field);

    let mut labels = vec![Elem::ZERO; field.q as usize];
    let mut acc = field.one();
    for k in 0..field.q - 1 {
        labels[acc as usize] = Elem((k % subgroup.index) as u8 + 1);
        acc = field.mul(acc, g);
    }
    let cosets = CosetMap { labels };

    // one representative per coset: g^k
    let mut rep = vec![0u64; n];
    let mut acc = field.one();
    for _ in 0..subgroup.index {
        rep[cosets.label(acc).index()] = acc;
        acc = field.mul(acc, g);
    }

    let table = HyperStruct::from_fn(GroupTable::cyclic(n), |x, y| {
        let (rx, ry) = (rep[x.index()], rep[y.index()]);
        let mut cell = ESet::EMPTY;
        for &p in &subgroup.carrier {
            for &q in &subgroup.carrier {
                let s = field.add(field.mul(rx, p), field.mul(ry, q));
                cell.insert(cosets.label(s));
            }
        }
        cell
    });

    debug_assert!(table
        .add_cells()
        .iter()
        .all(|c| c.card() <= subgroup.order as usize + 1));
    let report = verify(&table, Mode::Hyperfield);
    assert!(report.passed(), "quotient construction must verify: {report}");
    let h = Hyperfield::verified(table, Mode::Hyperfield).expect("verified above");
    (h, cosets)
}

/// A prime field viewed as a hyperfield (all sums singletons): the quotient
/// by the trivial subgroup, relabeled along the least primitive element.
pub fn prime_field_hyperfield(p: u64) -> Result<Hyperfield, FieldError> {
    let field = make_prime_field(p)?;
    let trivial = subgroup_of_index(&field, p - 1)?;
    Ok(quotient_hyperfield(&field, &trivial).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::{are_isomorphic, canonical_key};

    fn set(vals: &[u64]) -> BTreeSet<u64> {
        vals.iter().copied().collect()
    }

    #[test]
    fn prime_field_construction() {
        assert!(make_prime_field(19).is_ok());
        assert_eq!(make_prime_field(9), Err(FieldError::NotPrime(9)));
        let z19 = make_prime_field(19).unwrap();
        assert_eq!(z19.elements().filter(|&x| x != 0).count(), 18);
    }

    #[test]
    fn extension_field_reduction_rules() {
        // GF[25] with x² = 2x + 1
        let f = make_extension_field(5, &[4, 3, 1]).unwrap();
        let x = f.encode(&[0, 1]);
        assert_eq!(f.decode(f.mul(x, x)), vec![1, 2]);
        // GF[121] with x² = 10
        let f = make_extension_field(11, &[1, 0, 1]).unwrap();
        let x = f.encode(&[0, 1]);
        assert_eq!(f.decode(f.mul(x, x)), vec![10, 0]);
    }

    #[test]
    fn reducible_modulus_is_rejected_with_a_factor() {
        match make_extension_field(5, &[4, 0, 1]) {
            // x² - 1 = (x+1)(x+4) over F5; either factor is a fine witness
            Err(FieldError::NotIrreducible { factor }) => {
                assert_eq!(factor.len(), 2);
                let f = [4u64, 3, 1];
                let rem = poly_rem(5, &[4, 0, 1], &factor);
                assert!(rem.iter().all(|&c| c == 0), "bad witness {factor:?} {f:?}");
            }
            other => panic!("expected reducible witness, got {other:?}"),
        }
    }

    #[test]
    fn primitive_elements_are_least_generators() {
        assert_eq!(primitive_element(&make_prime_field(7).unwrap()), 3);
        assert_eq!(primitive_element(&make_prime_field(19).unwrap()), 2);
        assert_eq!(primitive_element(&make_prime_field(2).unwrap()), 1);
    }

    #[test]
    fn printed_subgroups_match() {
        let cases: &[(u64, &[u64])] = &[
            (19, &[1, 7, 11]),
            (31, &[1, 2, 4, 8, 16]),
            (13, &[1, 12]),
            (37, &[1, 10, 11, 26, 27, 36]),
            (43, &[1, 4, 11, 16, 21, 35, 41]),
            (61, &[1, 3, 9, 20, 27, 34, 41, 52, 58, 60]),
            (73, &[1, 3, 8, 9, 24, 27, 46, 49, 64, 65, 70, 72]),
        ];
        for &(p, expected) in cases {
            let f = make_prime_field(p).unwrap();
            let g = subgroup_of_index(&f, 6).unwrap();
            assert_eq!(g.carrier(), &set(expected), "Z_{p}");
        }
    }

    #[test]
    fn index_must_divide() {
        let f = make_prime_field(19).unwrap();
        assert!(matches!(
            subgroup_of_index(&f, 5),
            Err(FieldError::IndexDoesNotDivide { .. })
        ));
    }

    #[test]
    fn difference_span_examples() {
        let z19 = make_prime_field(19).unwrap();
        let g = subgroup_of_index(&z19, 6).unwrap();
        assert!(!difference_span(&z19, &g));

        let z103 = make_prime_field(103).unwrap();
        let g = subgroup_of_index(&z103, 6).unwrap();
        assert!(difference_span(&z103, &g));

        let z7 = make_prime_field(7).unwrap();
        let trivial = subgroup_of_index(&z7, 6).unwrap();
        assert!(!difference_span(&z7, &trivial));
    }

    #[test]
    fn quotient_z19_is_catalog_entry_9() {
        let f = make_prime_field(19).unwrap();
        let g = subgroup_of_index(&f, 6).unwrap();
        let (h, cosets) = quotient_hyperfield(&f, &g);
        assert_eq!(cosets.label(0), Elem::ZERO);
        assert_eq!(cosets.label(7), Elem::ONE); // 7 ∈ G
        assert_eq!(canonical_key(&h), canonical_key(&fixtures::catalog(9)));
        assert!(are_isomorphic(&h, &fixtures::catalog(9)).unwrap().is_some());
    }

    #[test]
    fn quotient_by_trivial_subgroup_is_the_field_itself() {
        let h = prime_field_hyperfield(7).unwrap();
        assert_eq!(h.base(), &fixtures::catalog_struct(1));
    }

    #[test]
    fn class_products_are_well_defined_on_quotients() {
        let f = make_prime_field(31).unwrap();
        let g = subgroup_of_index(&f, 6).unwrap();
        let (_, cosets) = quotient_hyperfield(&f, &g);
        for x in 1..f.q() {
            for y in 1..f.q() {
                let direct = cosets.label(f.mul(x, y));
                // the coset of a product depends only on the cosets
                let via_reps = cosets.label(f.mul(
                    (1..f.q()).find(|&v| cosets.label(v) == cosets.label(x)).unwrap(),
                    y,
                ));
                assert_eq!(direct, via_reps);
            }
        }
    }

    #[test]
    fn quotient_sum_cardinality_is_bounded_by_subgroup_order() {
        for p in [13u64, 19, 31, 37] {
            let f = make_prime_field(p).unwrap();
            let g = subgroup_of_index(&f, 6).unwrap();
            let (h, _) = quotient_hyperfield(&f, &g);
            for x in h.elems() {
                for y in h.elems() {
                    assert!(h.add(x, y).card() as u64 <= g.order() + 1);
                }
            }
        }
    }

    #[test]
    fn difference_span_iff_full_difference_cell() {
        for p in [13u64, 19, 67, 103] {
            let f = make_prime_field(p).unwrap();
            let g = subgroup_of_index(&f, 6).unwrap();
            let (h, _) = quotient_hyperfield(&f, &g);
            let full_diff = h.difference(Elem::ONE, Elem::ONE).card() == h.n();
            assert_eq!(difference_span(&f, &g), full_diff, "p = {p}");
        }
    }
}
