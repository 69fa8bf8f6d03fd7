use std::time::Instant;
use tate::bianchi::{verify_against_paper_tables, Dataset, Verdict};

fn main() {
    let dataset = Dataset::bundled();
    for ell in [3u64, 2] {
        let t = Instant::now();
        let report = verify_against_paper_tables(ell, &dataset).unwrap();
        println!("ell={ell}: {} in {:?}", report.summary(), t.elapsed());
        for r in report.mismatched().iter().take(12) {
            println!(
                "  MISMATCH m={}: expected {}, got {}",
                r.m, r.expected, r.got
            );
        }
        let overr = report
            .rows
            .iter()
            .filter(|r| r.verdict == Verdict::MatchViaOverride)
            .count();
        println!("  (matched via override: {overr})");
    }
}
