use socle::plane::MrMode;
use socle::verification::{generic_quaternary_b, run_all, Row};

const NAMES: [&str; 13] = [
    "nondegenerate quadric tables",
    "binary cubics with HF [1,2,2,1]",
    "ternary cubics: b even, generic 0, triple 2",
    "quaternary cubics: four points give b = 3",
    "quartic catalog witnesses and interior squares",
    "ternary cubic tables b = 0 and b = 2",
    "charge values",
    "even-degree cone charges",
    "m_r table and the naive discrepancy",
    "property suite on 1000 seeded socles",
    "binary Waring round trip",
    "Beilinson endpoints and integrality",
    "plane Z-diagrams",
];

fn report(k: u8, rows: &[Row]) -> bool {
    let pass = rows.iter().all(|r| r.pass);
    println!("criterion {k:>2} [{}] {}", if pass { "PASS" } else { "FAIL" }, NAMES[k as usize - 1]);
    for r in rows.iter().filter(|r| !r.pass) {
        println!("    {}: expected {}, got {}", r.name, r.expected, r.actual);
    }
    pass
}

#[test]
fn acceptance_suite() {
    let rows = run_all(MrMode::Dlp);
    let results: Vec<(u8, Vec<Row>)> = (1..=13)
        .map(|k| (k, rows.iter().filter(|r| r.criterion == k).cloned().collect()))
        .collect();
    assert!(results.iter().all(|(_, rows)| !rows.is_empty()));
    let failed: Vec<u8> = results.iter().filter(|(k, rows)| !report(*k, rows)).map(|(k, _)| *k).collect();
    println!("generic quaternary cubic: b = {}", generic_quaternary_b());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
