#![allow(dead_code)]

use std::sync::OnceLock;

use explicit_zeros::explicit_formula::ZeroTable;
use explicit_zeros::zeta_oracle::find_zeros;

/// Height that contains the first 100 zeros (γ₁₀₀ ≈ 236.52).
const ORACLE_HEIGHT: f64 = 240.0;

fn all_zeros() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let search = find_zeros(ORACLE_HEIGHT).expect("zero search");
        assert!(search.incomplete_warning.is_none(), "{:?}", search.incomplete_warning);
        search.table
    })
}

/// The first `n` zeros found by the oracle (n ≤ 100).
pub fn oracle_zeros(n: usize) -> ZeroTable {
    let t = all_zeros();
    assert!(t.len() >= n, "oracle found only {} zeros", t.len());
    t.first(n)
}

/// Prints one status line per criterion and fails the test when it does not hold.
pub fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} [{status}] {name}: {detail}");
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}
