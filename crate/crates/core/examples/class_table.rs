//! Checks the bundled table of 3-adic valuations of minus class numbers.

use std::collections::BTreeSet;
use std::path::Path;

use minusclass::cli::{check_records, read_records};

fn main() -> Result<(), String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/class_values_p3_r2.csv");
    let records = read_records(&path)?;
    let rows = check_records(&records, 3, 2);
    let attained: BTreeSet<u64> = records.iter().map(|r| r.ord_value).collect();
    let failing: Vec<_> = rows.iter().filter(|r| !(r.congruence && r.member)).map(|r| r.row).collect();
    println!("{} rows, attained {attained:?}, failing rows {failing:?}", rows.len());
    for r in rows.iter().filter(|r| r.record.ord_value >= 9) {
        println!("q = {:<5} d = {:<4} ord_3 h^- = {}", r.record.q, r.record.field_tag, r.record.ord_value);
    }
    Ok(())
}
