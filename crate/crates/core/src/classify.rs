//! Structural predicates and certificates: difference profiles, the
//! order-7 catalog taxonomy, the canonicality hierarchy, totality, and
//! quotient obstructions.

use thiserror::Error;

use crate::eset::{ESet, Elem};
use crate::field::{
    make_extension_field, make_prime_field, quotient_hyperfield, subgroup_of_index, FiniteField,
    Subgroup,
};
use crate::hyperfield::{Axiom, Hyperfield, VerificationReport};
use crate::iso::{canonical_key, CanonKey};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the catalog taxonomy is defined for order 7, not {0}")]
    UnsupportedOrder(usize),
    #[error("profile ({self_opposite}, {diff_card}) has no catalog section")]
    UnclassifiedProfile { self_opposite: bool, diff_card: usize },
    #[error("structure is not strongly canonical")]
    PreconditionNotStronglyCanonical,
}

/// Invariants of the difference `x - x`, read off row 1: by distributivity
/// `x - x = x·(1 - 1)`, so one row determines them all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Profile {
    /// `0 ∈ 1 + 1`; equivalently every element is its own opposite.
    pub self_opposite: bool,
    /// `card(1 - 1)`.
    pub diff_card: usize,
    /// `1 ∈ 1 - 1`.
    pub x_in_diff: bool,
    /// `card(x - x) = n`: the hypercomposition is closed.
    pub closed: bool,
}

pub fn difference_profile(h: &Hyperfield) -> Profile {
    let diff = h.difference(Elem::ONE, Elem::ONE);
    Profile {
        self_opposite: h.opposite(Elem::ONE) == Elem::ONE,
        diff_card: diff.card(),
        x_in_diff: diff.contains(Elem::ONE),
        closed: diff.card() == h.n(),
    }
}

/// Sections of the order-7 catalog: class A has no self-opposite elements,
/// class B does; subsections fix `card(x-x)` and whether `x ∈ x-x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[allow(non_camel_case_types)]
pub enum Category {
    A1,
    A2i,
    A2ii,
    A3i,
    A3ii,
    A4,
    B1i,
    B1ii,
    B2i,
    B2ii,
    B3i,
    B3ii,
    B4i,
    B4ii,
    B5i,
    B5ii,
    B6,
}

impl std::fmt::Display for Category {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Maps an order-7 structure to its catalog section.
pub fn appendix_category(h: &Hyperfield) -> Result<Category, ClassifyError> {
    if h.n() != 7 {
        return Err(ClassifyError::UnsupportedOrder(h.n()));
    }
    let p = difference_profile(h);
    use Category::*;
    let split = |i: Category, ii: Category| if p.x_in_diff { i } else { ii };
    let category = match (p.self_opposite, p.diff_card) {
        (false, 1) => A1,
        (false, 3) => split(A2i, A2ii),
        (false, 5) => split(A3i, A3ii),
        (false, 7) => A4,
        (true, 2) => split(B1i, B1ii),
        (true, 3) => split(B2i, B2ii),
        (true, 4) => split(B3i, B3ii),
        (true, 5) => split(B4i, B4ii),
        (true, 6) => split(B5i, B5ii),
        (true, 7) => B6,
        (self_opposite, diff_card) => {
            return Err(ClassifyError::UnclassifiedProfile {
                self_opposite,
                diff_card,
            })
        }
    };
    Ok(category)
}

/// The additional axioms beyond canonical:
///
/// - `Absorption` (x ∈ x+y forces x+y = {x}) and `NestedSums` (intersecting
///   sums are comparable) make a structure strongly canonical;
/// - `UniformDifferences` (z, w ∈ x-y share z-z = w-w) and
///   `DifferenceChain` (x ∈ z-z, y ∉ z-z forces x-x ⊆ y-y) upgrade it to
///   superiorly canonical, which is equivalent to carrying a valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SAxiom {
    Absorption,
    NestedSums,
    UniformDifferences,
    DifferenceChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CanonLevel {
    Canonical,
    StronglyCanonical,
    SuperiorlyCanonical,
}

impl std::fmt::Display for CanonLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CanonLevel::Canonical => "canonical",
            CanonLevel::StronglyCanonical => "strongly-canonical",
            CanonLevel::SuperiorlyCanonical => "superiorly-canonical",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CanonicalityClass {
    pub level: CanonLevel,
    /// First axiom that fails above the reported level, with its witness.
    pub failure: Option<(SAxiom, Vec<Elem>)>,
}

fn absorption_witness(h: &Hyperfield) -> Option<Vec<Elem>> {
    for x in h.elems() {
        for y in h.elems() {
            let s = h.add(x, y);
            if s.contains(x) && s != ESet::singleton(x) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

fn nested_sums_witness(h: &Hyperfield) -> Option<Vec<Elem>> {
    for x in h.elems() {
        for y in h.elems() {
            let s = h.add(x, y);
            for z in h.elems() {
                for w in h.elems() {
                    let t = h.add(z, w);
                    if s.intersects(t) && !s.is_subset(t) && !t.is_subset(s) {
                        return Some(vec![x, y, z, w]);
                    }
                }
            }
        }
    }
    None
}

fn uniform_differences_witness(h: &Hyperfield) -> Option<Vec<Elem>> {
    for x in h.elems() {
        for y in h.elems() {
            if x == y {
                continue;
            }
            let d = h.difference(x, y);
            for z in d.iter() {
                for w in d.iter() {
                    if h.difference(z, z) != h.difference(w, w) {
                        return Some(vec![x, y, z, w]);
                    }
                }
            }
        }
    }
    None
}

fn difference_chain_witness(h: &Hyperfield) -> Option<Vec<Elem>> {
    for z in h.elems() {
        let dz = h.difference(z, z);
        for x in dz.iter() {
            for y in h.elems() {
                if !dz.contains(y) && !h.difference(x, x).is_subset(h.difference(y, y)) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Highest canonicality level whose axioms all hold, checked exhaustively.
/// Verified structures are canonical by definition.
pub fn canonicality_class(h: &Hyperfield) -> CanonicalityClass {
    if let Some(witness) = absorption_witness(h) {
        return CanonicalityClass {
            level: CanonLevel::Canonical,
            failure: Some((SAxiom::Absorption, witness)),
        };
    }
    if let Some(witness) = nested_sums_witness(h) {
        return CanonicalityClass {
            level: CanonLevel::Canonical,
            failure: Some((SAxiom::NestedSums, witness)),
        };
    }
    if let Some(witness) = uniform_differences_witness(h) {
        return CanonicalityClass {
            level: CanonLevel::StronglyCanonical,
            failure: Some((SAxiom::UniformDifferences, witness)),
        };
    }
    if let Some(witness) = difference_chain_witness(h) {
        return CanonicalityClass {
            level: CanonLevel::StronglyCanonical,
            failure: Some((SAxiom::DifferenceChain, witness)),
        };
    }
    CanonicalityClass {
        level: CanonLevel::SuperiorlyCanonical,
        failure: None,
    }
}

/// Whether the structure carries a valuation: an alias of superior
/// canonicality.
pub fn is_valuatable(h: &Hyperfield) -> bool {
    canonicality_class(h).level == CanonLevel::SuperiorlyCanonical
}

/// Total: every sum of two nonzero elements contains all nonzero elements.
pub fn is_total(h: &Hyperfield) -> bool {
    let nonzero = ESet::full_nonzero(h.n());
    h.nonzero()
        .all(|x| h.nonzero().all(|y| nonzero.is_subset(h.add(x, y))))
}

/// Printable reference to a finite field.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FieldRef {
    pub p: u64,
    pub degree: usize,
    /// Modulus coefficients, low-to-high; meaningful for degree > 1.
    pub modulus: Vec<u64>,
}

impl FieldRef {
    fn of(field: &FiniteField) -> FieldRef {
        FieldRef {
            p: field.p(),
            degree: field.degree(),
            modulus: field.modulus().to_vec(),
        }
    }
}

impl std::fmt::Display for FieldRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.degree == 1 {
            write!(f, "Z_{}", self.p)
        } else {
            write!(f, "GF[{}^{}]", self.p, self.degree)
        }
    }
}

/// Re-checkable verdict on quotient realizability.
///
/// The non-quotient certificates need only the table: under the disjoint
/// difference hypothesis, a quotient F/Q has every non-opposite sum of
/// cardinality card(Q) and no sum larger than card(Q). A witness names a
/// field and subgroup whose quotient is isomorphic to the structure.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum QuotientCertificate {
    NonQuotientByUnequalSums {
        pair_low: (Elem, Elem),
        card_low: usize,
        pair_high: (Elem, Elem),
        card_high: usize,
    },
    NonQuotientByDiagonalExcess {
        common_card: usize,
        pair: (Elem, Elem),
        excess_card: usize,
    },
    QuotientWitness {
        field: FieldRef,
        subgroup: Vec<u64>,
    },
    Inconclusive,
}

impl QuotientCertificate {
    pub fn is_non_quotient(&self) -> bool {
        matches!(
            self,
            QuotientCertificate::NonQuotientByUnequalSums { .. }
                | QuotientCertificate::NonQuotientByDiagonalExcess { .. }
        )
    }
}

impl std::fmt::Display for QuotientCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientCertificate::NonQuotientByUnequalSums {
                pair_low,
                card_low,
                pair_high,
                card_high,
            } => write!(
                f,
                "non-quotient-by-unequal-sums card({}+{})={card_low} card({}+{})={card_high}",
                pair_low.0, pair_low.1, pair_high.0, pair_high.1
            ),
            QuotientCertificate::NonQuotientByDiagonalExcess {
                common_card,
                pair,
                excess_card,
            } => write!(
                f,
                "non-quotient-by-diagonal-excess common={common_card} card({}+{})={excess_card}",
                pair.0, pair.1
            ),
            QuotientCertificate::QuotientWitness { field, subgroup } => {
                write!(f, "quotient-witness {field} {{")?;
                for (i, g) in subgroup.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "}}")
            }
            QuotientCertificate::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Precomputed quotients of the small fields whose index-(n-1) subgroups
/// can realize an order-n hyperfield: prime fields up to the cap and the
/// quadratic extensions of characteristic at most 13.
pub struct QuotientScan {
    order: usize,
    entries: Vec<(FieldRef, Vec<u64>, CanonKey)>,
}

/// Quadratic-extension moduli used by the scan, low-to-high coefficients.
pub const SCAN_QUADRATIC_MODULI: &[(u64, [u64; 3])] = &[
    (5, [4, 3, 1]),  // x² + 3x + 4
    (7, [1, 0, 1]),  // x² + 1
    (11, [1, 0, 1]), // x² + 1
    (13, [2, 0, 1]), // x² + 2
];

impl QuotientScan {
    pub fn build(order: usize, max_prime: u64) -> QuotientScan {
        let index = (order - 1) as u64;
        let mut entries = Vec::new();
        let mut push = |field: &FiniteField, subgroup: &Subgroup| {
            let (h, _) = quotient_hyperfield(field, subgroup);
            entries.push((
                FieldRef::of(field),
                subgroup.carrier().iter().copied().collect(),
                canonical_key(&h),
            ));
        };
        for p in 2..=max_prime {
            if (p - 1) % index == 0 {
                if let Ok(field) = make_prime_field(p) {
                    let subgroup = subgroup_of_index(&field, index).expect("index divides");
                    push(&field, &subgroup);
                }
            }
        }
        for &(p, modulus) in SCAN_QUADRATIC_MODULI {
            if (p * p - 1) % index == 0 {
                let field = make_extension_field(p, &modulus).expect("scan moduli are irreducible");
                let subgroup = subgroup_of_index(&field, index).expect("index divides");
                push(&field, &subgroup);
            }
        }
        QuotientScan { order, entries }
    }

    /// First scanned quotient isomorphic to the given key.
    fn lookup(&self, key: &CanonKey) -> Option<(FieldRef, Vec<u64>)> {
        self.entries
            .iter()
            .find(|(_, _, k)| k == key)
            .map(|(f, g, _)| (f.clone(), g.clone()))
    }
}

/// Quotient obstruction analysis.
///
/// Differences come in opposite pairs (`x - x = (-x) - (-x)`), so the
/// disjointness hypothesis ranges over one representative per pair. When it
/// holds, a quotient would force all non-opposite sums to one cardinality
/// and bound every sum by it; violations yield certificates. Otherwise (or
/// when nothing contradicts), the bounded field scan searches for a witness.
pub fn quotient_obstruction(h: &Hyperfield, scan: &QuotientScan) -> QuotientCertificate {
    assert_eq!(h.n(), scan.order, "scan order must match the structure");
    let reps: Vec<Elem> = h.nonzero().filter(|&x| x.0 <= h.opposite(x).0).collect();
    let disjoint = reps.iter().enumerate().all(|(i, &x)| {
        reps[i + 1..].iter().all(|&y| {
            (h.difference(x, x) & h.difference(y, y)) == ESet::singleton(Elem::ZERO)
        })
    });

    if disjoint {
        let mut low: Option<((Elem, Elem), usize)> = None;
        let mut high: Option<((Elem, Elem), usize)> = None;
        for x in h.nonzero() {
            for y in h.nonzero() {
                if y == x || y == h.opposite(x) {
                    continue;
                }
                let card = h.add(x, y).card();
                if low.is_none_or(|(_, c)| card < c) {
                    low = Some(((x, y), card));
                }
                if high.is_none_or(|(_, c)| card > c) {
                    high = Some(((x, y), card));
                }
            }
        }
        if let (Some((pair_low, card_low)), Some((pair_high, card_high))) = (low, high) {
            if card_low != card_high {
                return QuotientCertificate::NonQuotientByUnequalSums {
                    pair_low,
                    card_low,
                    pair_high,
                    card_high,
                };
            }
            // every sum in a quotient has cardinality at most card(Q)
            for x in h.nonzero() {
                for y in h.nonzero() {
                    let card = h.add(x, y).card();
                    if card > card_low {
                        return QuotientCertificate::NonQuotientByDiagonalExcess {
                            common_card: card_low,
                            pair: (x, y),
                            excess_card: card,
                        };
                    }
                }
            }
        }
    }

    match scan.lookup(&canonical_key(h)) {
        Some((field, subgroup)) => QuotientCertificate::QuotientWitness { field, subgroup },
        None => QuotientCertificate::Inconclusive,
    }
}

/// The exchange law of canonical hypergroups:
/// `(x+y) ∩ (z+w) ≠ ∅  ⇒  (x-z) ∩ (w-y) ≠ ∅`. Holds in every verified
/// structure; checked over all quadruples.
pub fn check_exchange_law(h: &Hyperfield) -> VerificationReport {
    let mut report = VerificationReport::default();
    for x in h.elems() {
        for y in h.elems() {
            let s = h.add(x, y);
            for z in h.elems() {
                for w in h.elems() {
                    if s.intersects(h.add(z, w))
                        && !h.difference(x, z).intersects(h.difference(w, y))
                    {
                        report.failures.push(crate::hyperfield::Failure {
                            axiom: Axiom::SumDifferenceExchange,
                            witness: vec![x, y, z, w],
                        });
                        return report;
                    }
                }
            }
        }
    }
    report
}

/// Consequences of strong canonicality, checked exhaustively:
///
/// - `(x-x) ∩ (y-x) = ∅` and `(y-y) ∩ (y-x) = ∅` for x ≠ y;
/// - `x + (x-x) = {x}`, and no nonzero x lies in `x+x` or `x-x`;
/// - for fixed a, the distinct translates `a + x` partition the carrier;
/// - the exchange law (which needs only canonicality).
pub fn strong_canonical_properties(h: &Hyperfield) -> Result<VerificationReport, ClassifyError> {
    if canonicality_class(h).level < CanonLevel::StronglyCanonical {
        return Err(ClassifyError::PreconditionNotStronglyCanonical);
    }
    let mut report = VerificationReport::default();
    let mut record = |axiom: Axiom, witness: &[Elem]| {
        report.failures.push(crate::hyperfield::Failure {
            axiom,
            witness: witness.to_vec(),
        });
    };

    'disjoint: for x in h.elems() {
        for y in h.elems() {
            if x == y {
                continue;
            }
            let yx = h.difference(y, x);
            if h.difference(x, x).intersects(yx) || h.difference(y, y).intersects(yx) {
                record(Axiom::DisjointDifferences, &[x, y]);
                break 'disjoint;
            }
        }
    }

    for x in h.elems() {
        if h.set_sum(ESet::singleton(x), h.difference(x, x)) != ESet::singleton(x) {
            record(Axiom::DifferenceAbsorption, &[x]);
            break;
        }
    }
    for x in h.nonzero() {
        if h.difference(x, x).contains(x) || h.add(x, x).contains(x) {
            record(Axiom::IrreflexiveDifference, &[x]);
            break;
        }
    }

    let full = ESet::full(h.n());
    'partition: for a in h.elems() {
        let translates: Vec<ESet> = h.elems().map(|x| h.add(a, x)).collect();
        let mut union = ESet::EMPTY;
        for s in &translates {
            union = union | *s;
        }
        if union != full {
            record(Axiom::TranslatePartition, &[a]);
            break;
        }
        for (i, s) in translates.iter().enumerate() {
            for t in &translates[i + 1..] {
                if s.intersects(*t) && s != t {
                    record(Axiom::TranslatePartition, &[a]);
                    break 'partition;
                }
            }
        }
    }

    report.failures.extend(check_exchange_law(h).failures);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{tropical_chain_hyperfield, OrderedChain};
    use crate::field::prime_field_hyperfield;
    use crate::fixtures;

    #[test]
    fn profiles_from_the_catalog_tables() {
        let p = difference_profile(&fixtures::catalog(143));
        assert_eq!(
            p,
            Profile {
                self_opposite: true,
                diff_card: 2,
                x_in_diff: false,
                closed: false
            }
        );
        let p = difference_profile(&fixtures::catalog(3));
        assert_eq!(
            p,
            Profile {
                self_opposite: false,
                diff_card: 3,
                x_in_diff: true,
                closed: false
            }
        );
        let z7 = prime_field_hyperfield(7).unwrap();
        assert_eq!(difference_profile(&z7).diff_card, 1);
    }

    #[test]
    fn closed_profile_means_extensive_sums() {
        for &num in fixtures::FIXTURE_NUMBERS {
            let h = fixtures::catalog(num);
            let closed = difference_profile(&h).closed;
            let extensive = h.nonzero().all(|x| {
                h.nonzero()
                    .all(|y| h.add(x, y).contains(x) && h.add(x, y).contains(y))
            });
            assert_eq!(closed, extensive, "entry {num}");
        }
    }

    #[test]
    fn categories_of_known_entries() {
        assert_eq!(appendix_category(&fixtures::catalog(81)), Ok(Category::A3ii));
        assert_eq!(appendix_category(&fixtures::catalog(142)), Ok(Category::B1i));
        assert_eq!(appendix_category(&fixtures::catalog(277)), Ok(Category::B6));
        assert_eq!(appendix_category(&fixtures::catalog(1)), Ok(Category::A1));
        assert_eq!(appendix_category(&fixtures::catalog(2)), Ok(Category::A4));
    }

    #[test]
    fn category_requires_order_7() {
        let k = prime_field_hyperfield(3).unwrap();
        assert_eq!(
            appendix_category(&k),
            Err(ClassifyError::UnsupportedOrder(3))
        );
    }

    #[test]
    fn canonicality_of_known_structures() {
        // entry 277 has x ∈ x+y with x+y far from {x}
        let c = canonicality_class(&fixtures::catalog(277));
        assert_eq!(c.level, CanonLevel::Canonical);
        assert_eq!(c.failure.as_ref().unwrap().0, SAxiom::Absorption);

        // fields have singleton sums: every level holds
        let z7 = prime_field_hyperfield(7).unwrap();
        assert_eq!(
            canonicality_class(&z7).level,
            CanonLevel::SuperiorlyCanonical
        );
        assert!(is_valuatable(&z7));

        let chain = OrderedChain::annihilating(3);
        let strict = tropical_chain_hyperfield(&chain, true);
        assert!(canonicality_class(&strict).level >= CanonLevel::StronglyCanonical);
    }

    #[test]
    fn totality_of_known_entries() {
        assert!(is_total(&fixtures::catalog(277)));
        assert!(is_total(&fixtures::catalog(141)));
        assert!(!is_total(&fixtures::catalog(9)));
    }

    #[test]
    fn totality_forces_a_large_difference() {
        for &num in fixtures::FIXTURE_NUMBERS {
            let h = fixtures::catalog(num);
            if is_total(&h) {
                assert!(h.diff_card() >= h.n() - 1, "entry {num}");
            }
        }
    }

    #[test]
    fn obstruction_certificates_match_the_known_proofs() {
        let scan = QuotientScan::build(7, 60);
        match quotient_obstruction(&fixtures::catalog(3), &scan) {
            QuotientCertificate::NonQuotientByDiagonalExcess {
                common_card: 4,
                excess_card: 5,
                ..
            } => {}
            other => panic!("entry 3: {other}"),
        }
        match quotient_obstruction(&fixtures::catalog(5), &scan) {
            QuotientCertificate::NonQuotientByUnequalSums {
                card_low: 4,
                card_high: 5,
                ..
            } => {}
            other => panic!("entry 5: {other}"),
        }
        match quotient_obstruction(&fixtures::catalog(9), &scan) {
            QuotientCertificate::QuotientWitness { field, subgroup } => {
                assert_eq!(field.to_string(), "Z_19");
                assert_eq!(subgroup, vec![1, 7, 11]);
            }
            other => panic!("entry 9: {other}"),
        }
    }

    #[test]
    fn exchange_law_holds_on_verified_structures() {
        for &num in &[9, 81, 143, 277] {
            assert!(check_exchange_law(&fixtures::catalog(num)).passed());
        }
    }

    #[test]
    fn strong_properties_pass_on_strict_chains() {
        for size in 2..=5 {
            let chain = OrderedChain::annihilating(size);
            let h = tropical_chain_hyperfield(&chain, true);
            let report = strong_canonical_properties(&h).expect("strongly canonical");
            assert!(report.passed(), "size {size}: {report}");
        }
    }

    #[test]
    fn strong_properties_reject_weaker_structures() {
        assert_eq!(
            strong_canonical_properties(&fixtures::catalog(277)),
            Err(ClassifyError::PreconditionNotStronglyCanonical)
        );
    }

    #[test]
    fn canonicality_levels_nest() {
        assert!(CanonLevel::Canonical < CanonLevel::StronglyCanonical);
        assert!(CanonLevel::StronglyCanonical < CanonLevel::SuperiorlyCanonical);
    }
}
