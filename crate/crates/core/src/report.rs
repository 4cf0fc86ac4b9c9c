//! Catalog reports: enumerate an order, classify and certify every entry,
//! and check the totals against the published counts.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::catalog::render_table;
use crate::classify::{
    appendix_category, canonicality_class, difference_profile, is_total, is_valuatable,
    quotient_obstruction, CanonLevel, Category, Profile, QuotientCertificate, QuotientScan,
};
use crate::enumerate::{enumerate, CountReport};
use crate::fixtures;
use crate::hyperfield::Hyperfield;
use crate::iso::{canonical_key, CanonKey};

/// Quotient/non-quotient status asserted in the published classification of
/// the order-7 catalog. Kept separate from the computed certificate: the
/// certificate records what this artifact can re-check, the published
/// status what the literature states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PublishedStatus {
    Quotient,
    NonQuotient,
}

impl std::fmt::Display for PublishedStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PublishedStatus::Quotient => "quotient",
            PublishedStatus::NonQuotient => "non-quotient",
        })
    }
}

/// Published status of an order-7 entry, by catalog section. The sections
/// with exceptions name them by catalog number; every exception is among
/// the transcribed fixtures, so a missing crosswalk means "no exception".
pub fn published_status(category: Category, catalog_number: Option<u32>) -> Option<PublishedStatus> {
    use Category::*;
    use PublishedStatus::*;
    let except = |quotients: &[u32]| {
        if catalog_number.is_some_and(|n| quotients.contains(&n)) {
            Some(Quotient)
        } else {
            Some(NonQuotient)
        }
    };
    match category {
        A1 => Some(Quotient),
        A2i | A2ii | B2i | B2ii | B3ii | B4i => Some(NonQuotient),
        A3i => except(&[13]),
        A3ii => except(&[61]),
        B1i | B1ii => Some(Quotient),
        B3i => except(&[160]),
        B4ii => except(&[225, 234]),
        B5i => except(&[245, 246]),
        B5ii => except(&[267]),
        A4 | B6 => None,
    }
}

/// One classified catalog entry.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    /// 1-based position in the sorted catalog.
    pub ord: usize,
    /// Pure function of the canonical key; stable across runs.
    pub stable_id: String,
    /// Crosswalk to the published catalog numbering, for transcribed
    /// fixtures.
    pub catalog_number: Option<u32>,
    pub profile: Profile,
    pub category: Option<Category>,
    pub canonicality: CanonLevel,
    pub valuatable: bool,
    pub total: bool,
    pub certificate: QuotientCertificate,
    pub published: Option<PublishedStatus>,
    pub canon_key: String,
    pub table: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub order: usize,
    pub counts: CountReport,
    /// Whether the counts match the published totals; absent for orders
    /// without published counts.
    pub counts_match: Option<bool>,
    pub entries: Vec<CatalogEntry>,
}

/// Published totals: order 2, 3 and 5 carry plain totals, order 7 the full
/// per-cardinality histograms.
pub struct ExpectedCounts {
    pub total: usize,
    /// (self_opposite, diff_card, count)
    pub buckets: Option<&'static [(bool, usize, usize)]>,
}

pub const ORDER7_BUCKETS: &[(bool, usize, usize)] = &[
    (false, 1, 1),
    (false, 3, 9),
    (false, 5, 77),
    (false, 7, 54),
    (true, 2, 2),
    (true, 3, 9),
    (true, 4, 40),
    (true, 5, 46),
    (true, 6, 29),
    (true, 7, 10),
];

pub fn expected_counts(order: usize) -> Option<ExpectedCounts> {
    match order {
        2 => Some(ExpectedCounts {
            total: 2,
            buckets: None,
        }),
        3 => Some(ExpectedCounts {
            total: 5,
            buckets: None,
        }),
        5 => Some(ExpectedCounts {
            total: 27,
            buckets: None,
        }),
        7 => Some(ExpectedCounts {
            total: 277,
            buckets: Some(ORDER7_BUCKETS),
        }),
        _ => None,
    }
}

pub fn counts_match(report: &CountReport) -> Option<bool> {
    expected_counts(report.order).map(|expected| {
        report.total == expected.total
            && expected.buckets.is_none_or(|buckets| {
                buckets
                    .iter()
                    .all(|&(so, dc, count)| report.bucket(so, dc) == count)
                    && report.buckets.len() == buckets.len()
            })
    })
}

/// Stable identifier for a canonical key.
pub fn stable_id(order: usize, key: &CanonKey) -> String {
    let digest = Sha256::digest(key.bytes());
    let hex: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
    format!("hf{order}-{hex}")
}

/// Crosswalk from canonical keys to the published catalog numbers of the
/// transcribed fixtures.
pub fn fixture_crosswalk() -> Vec<(CanonKey, u32)> {
    fixtures::FIXTURE_NUMBERS
        .iter()
        .map(|&num| (canonical_key(&fixtures::catalog(num)), num))
        .collect()
}

/// Catalog number of a structure, when it is isomorphic to a transcribed
/// fixture of the same order.
pub fn known_catalog_number(h: &Hyperfield) -> Option<u32> {
    if h.n() != 7 {
        return None;
    }
    let key = canonical_key(h);
    fixture_crosswalk()
        .into_iter()
        .find(|(k, _)| *k == key)
        .map(|(_, num)| num)
}

/// Scan cap for quotient witnesses; covers every field the closed-form
/// difference-span bound leaves in play, with headroom for total entries.
pub const DEFAULT_SCAN_MAX_PRIME: u64 = 200;

pub fn classify_entry(
    h: &Hyperfield,
    ord: usize,
    scan: &QuotientScan,
    crosswalk: &[(CanonKey, u32)],
) -> CatalogEntry {
    let key = canonical_key(h);
    let catalog_number = crosswalk
        .iter()
        .find(|(k, _)| *k == key)
        .map(|&(_, num)| num);
    let category = appendix_category(h).ok();
    CatalogEntry {
        ord,
        stable_id: stable_id(h.n(), &key),
        catalog_number,
        profile: difference_profile(h),
        category,
        canonicality: canonicality_class(h).level,
        valuatable: is_valuatable(h),
        total: is_total(h),
        certificate: quotient_obstruction(h, scan),
        published: category.and_then(|c| published_status(c, catalog_number)),
        canon_key: key.hex(),
        table: render_table(h.base()),
    }
}

/// Enumerates an order and classifies every canonical representative.
pub fn run_report(order: usize) -> RunReport {
    let catalog = enumerate(order);
    let counts = CountReport::from_catalog(order, &catalog);
    let scan = QuotientScan::build(order, DEFAULT_SCAN_MAX_PRIME);
    let crosswalk = if order == 7 {
        fixture_crosswalk()
    } else {
        Vec::new()
    };
    let entries = catalog
        .iter()
        .enumerate()
        .map(|(i, h)| classify_entry(h, i + 1, &scan, &crosswalk))
        .collect();
    RunReport {
        order,
        counts_match: counts_match(&counts),
        counts,
        entries,
    }
}

/// Line-oriented rendering of the counts.
pub fn render_counts(counts: &CountReport, matches: Option<bool>) -> String {
    let mut out = String::new();
    let (without, with) = counts.class_totals();
    out.push_str(&format!("order {}\n", counts.order));
    out.push_str(&format!("total {}\n", counts.total));
    out.push_str(&format!("no-self-opposite {without}\n"));
    out.push_str(&format!("self-opposite {with}\n"));
    for b in &counts.buckets {
        out.push_str(&format!(
            "bucket self-opposite={} diff-card={} count={}\n",
            b.self_opposite, b.diff_card, b.count
        ));
    }
    if let Some(m) = matches {
        out.push_str(&format!("counts-match {m}\n"));
    }
    out
}

/// Line-oriented rendering of one entry, including its TableText block.
pub fn render_entry(e: &CatalogEntry) -> String {
    let mut out = String::new();
    out.push_str(&format!("entry {}\n", e.ord));
    out.push_str(&format!("id {}\n", e.stable_id));
    if let Some(num) = e.catalog_number {
        out.push_str(&format!("catalog-number {num}\n"));
    }
    out.push_str(&format!("self-opposite {}\n", e.profile.self_opposite));
    out.push_str(&format!("diff-card {}\n", e.profile.diff_card));
    out.push_str(&format!("x-in-diff {}\n", e.profile.x_in_diff));
    out.push_str(&format!("closed {}\n", e.profile.closed));
    if let Some(c) = e.category {
        out.push_str(&format!("category {c}\n"));
    }
    out.push_str(&format!("canonicality {}\n", e.canonicality));
    out.push_str(&format!("valuatable {}\n", e.valuatable));
    out.push_str(&format!("total {}\n", e.total));
    out.push_str(&format!("certificate {}\n", e.certificate));
    if let Some(p) = e.published {
        out.push_str(&format!("published {p}\n"));
    }
    out.push_str(&format!("canon-key {}\n", e.canon_key));
    out.push_str("table\n");
    out.push_str(&e.table);
    out
}

pub fn render_report(report: &RunReport) -> String {
    let mut out = render_counts(&report.counts, report.counts_match);
    for e in &report.entries {
        out.push('\n');
        out.push_str(&render_entry(e));
    }
    out
}

/// One row of the index-6 difference-span scan over prime fields.
#[derive(Clone, Debug, Serialize)]
pub struct SpanScanRow {
    pub p: u64,
    pub subgroup_order: u64,
    pub contains_minus_one: bool,
    pub computed: bool,
    pub predicted: bool,
}

/// Compares the computed difference span `G - G = F` with the closed-form
/// prediction for every prime `p ≡ 1 (mod 6)` up to the cap, using the
/// index-6 subgroup.
pub fn difference_span_scan(max_prime: u64) -> Vec<SpanScanRow> {
    use crate::field::{
        difference_span, difference_span_predicted, is_prime, make_prime_field, subgroup_of_index,
    };
    let mut rows = Vec::new();
    for p in 7..=max_prime {
        if p % 6 != 1 || !is_prime(p) {
            continue;
        }
        let field = make_prime_field(p).expect("prime");
        let subgroup = subgroup_of_index(&field, 6).expect("6 divides p-1");
        rows.push(SpanScanRow {
            p,
            subgroup_order: subgroup.order(),
            contains_minus_one: subgroup.contains(field.neg(field.one())),
            computed: difference_span(&field, &subgroup),
            predicted: difference_span_predicted(&field, &subgroup),
        });
    }
    rows
}

pub fn render_span_scan(rows: &[SpanScanRow]) -> String {
    let mut out = String::new();
    let mut mismatches = 0;
    for r in rows {
        out.push_str(&format!(
            "prime {} subgroup-order {} minus-one-in-subgroup {} computed {} predicted {}\n",
            r.p, r.subgroup_order, r.contains_minus_one, r.computed, r.predicted
        ));
        if r.computed != r.predicted {
            mismatches += 1;
        }
    }
    let not_spanning: Vec<String> = rows
        .iter()
        .filter(|r| !r.computed)
        .map(|r| r.p.to_string())
        .collect();
    out.push_str(&format!("not-spanning {}\n", not_spanning.join(",")));
    out.push_str(&format!("mismatches {mismatches}\n"));
    out
}

/// One row of the totality scan over quotient hyperfields.
#[derive(Clone, Debug, Serialize)]
pub struct TotalityScanRow {
    pub p: u64,
    pub subgroup_order: u64,
    pub total: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TotalityScan {
    pub index: u64,
    pub rows: Vec<TotalityScanRow>,
    /// Smallest subgroup order at which every scanned quotient of that
    /// order or larger is total; absent when even the largest is not.
    pub threshold: Option<u64>,
}

/// Scans quotients of prime fields by index-`index` subgroups for
/// totality, in support of the conjecture that large enough subgroups
/// always give total quotients.
pub fn totality_scan(index: u64, max_prime: u64) -> TotalityScan {
    use crate::classify::is_total;
    use crate::field::{is_prime, make_prime_field, quotient_hyperfield, subgroup_of_index};
    let mut rows = Vec::new();
    for p in 3..=max_prime {
        if (p - 1) % index != 0 || !is_prime(p) {
            continue;
        }
        let field = make_prime_field(p).expect("prime");
        let subgroup = subgroup_of_index(&field, index).expect("index divides");
        let (h, _) = quotient_hyperfield(&field, &subgroup);
        rows.push(TotalityScanRow {
            p,
            subgroup_order: subgroup.order(),
            total: is_total(&h),
        });
    }
    let mut by_order: Vec<(u64, bool)> = rows.iter().map(|r| (r.subgroup_order, r.total)).collect();
    by_order.sort();
    let mut threshold = None;
    for &(order, _) in &by_order {
        if by_order
            .iter()
            .filter(|&&(o, _)| o >= order)
            .all(|&(_, total)| total)
        {
            threshold = Some(order);
            break;
        }
    }
    TotalityScan {
        index,
        rows,
        threshold,
    }
}

pub fn render_totality_scan(scan: &TotalityScan) -> String {
    let mut out = format!("index {}\n", scan.index);
    for r in &scan.rows {
        out.push_str(&format!(
            "prime {} subgroup-order {} total {}\n",
            r.p, r.subgroup_order, r.total
        ));
    }
    match scan.threshold {
        Some(t) => out.push_str(&format!("total-from-subgroup-order {t}\n")),
        None => out.push_str("total-from-subgroup-order none\n"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_three_report_counts() {
        let report = run_report(3);
        assert_eq!(report.counts.total, 5);
        assert_eq!(report.counts_match, Some(true));
        assert_eq!(report.entries.len(), 5);
        for e in &report.entries {
            assert!(e.category.is_none());
            assert!(e.stable_id.starts_with("hf3-"));
        }
    }

    #[test]
    fn stable_ids_are_pure_functions_of_keys() {
        let a = run_report(3);
        let b = run_report(3);
        let ids_a: Vec<&str> = a.entries.iter().map(|e| e.stable_id.as_str()).collect();
        let ids_b: Vec<&str> = b.entries.iter().map(|e| e.stable_id.as_str()).collect();
        assert_eq!(ids_a, ids_b);
    }

    #[test]
    fn text_rendering_is_deterministic() {
        let a = render_report(&run_report(2));
        let b = render_report(&run_report(2));
        assert_eq!(a, b);
        assert!(a.contains("total 2"));
    }

    #[test]
    fn published_statuses_follow_the_sections() {
        use crate::classify::Category::*;
        use PublishedStatus::*;
        assert_eq!(published_status(A1, Some(1)), Some(Quotient));
        assert_eq!(published_status(A2i, None), Some(NonQuotient));
        assert_eq!(published_status(A3i, Some(13)), Some(Quotient));
        assert_eq!(published_status(A3i, None), Some(NonQuotient));
        assert_eq!(published_status(B4ii, Some(225)), Some(Quotient));
        assert_eq!(published_status(B4ii, Some(224)), Some(NonQuotient));
        assert_eq!(published_status(B6, Some(277)), None);
    }

    #[test]
    fn json_mirror_serializes() {
        let report = run_report(2);
        let json = serde_json::to_string_pretty(&report).unwrap();
        assert!(json.contains("\"order\": 2"));
        assert!(json.contains("\"entries\""));
    }

    #[test]
    fn span_scan_matches_the_closed_form_everywhere() {
        let rows = difference_span_scan(200);
        assert_eq!(rows.len(), 21);
        for r in &rows {
            assert_eq!(r.computed, r.predicted, "p = {}", r.p);
        }
        let not_spanning: Vec<u64> = rows.iter().filter(|r| !r.computed).map(|r| r.p).collect();
        assert_eq!(not_spanning, vec![7, 13, 19, 31, 37, 43, 61, 73, 97, 109, 157]);
    }

    #[test]
    fn totality_scan_reports_a_threshold() {
        let scan = totality_scan(6, 200);
        // non-total quotients appear up to subgroup order 26 (p = 157);
        // everything from order 27 on is total in this range
        assert_eq!(scan.threshold, Some(27));
        for r in &scan.rows {
            if r.subgroup_order >= 30 {
                assert!(r.total, "p = {}", r.p);
            }
        }
    }
}
