use hyperfields::enumerate::{enumerate_counts, enumerate_with_stats};

#[test]
fn probe_counts() {
    for n in [2usize, 3, 4, 5, 6] {
        let (catalog, stats) = enumerate_with_stats(n);
        println!(
            "order {n}: {} classes (candidates {}, survivors {})",
            catalog.len(),
            stats.candidates,
            stats.survivors
        );
    }
    let cyclic5 = hyperfields::group::GroupTable::cyclic(5);
    let (catalog5, _) = enumerate_with_stats(5);
    let cyclic_count = catalog5
        .iter()
        .filter(|h| *h.base().mul_table() == cyclic5)
        .count();
    println!(
        "order 5: {} cyclic + {} klein",
        cyclic_count,
        catalog5.len() - cyclic_count
    );
    let t0 = std::time::Instant::now();
    let report = enumerate_counts(7);
    println!("order 7: total {} in {:?}", report.total, t0.elapsed());
    for b in &report.buckets {
        println!(
            "  self-opposite={} card={} -> {}",
            b.self_opposite, b.diff_card, b.count
        );
    }
}
