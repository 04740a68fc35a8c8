//! Engine output against fixtures produced by the independent Python oracles
//! in `scripts/`.

use qel_core::catalog::Catalog;
use qel_core::cremona::{classify_2n_plus_1, classify_type2d, Branch};
use qel_core::probe::{verify_model, ProbeConfig};
use serde_json::Value;

fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn catalog_matches_rank_oracle() {
    let table = fixture("catalog_oracle.json");
    let catalog = Catalog::standard();
    let cfg = ProbeConfig::with_seed(2024);
    let mut seen = 0;
    for m in catalog.entries().iter().filter(|m| m.map.is_some()) {
        let row = &table[m.name.as_str()];
        assert!(row.is_object(), "no oracle row for {}", m.name);
        let r = verify_model(m, &cfg).unwrap();
        let got = [
            i64::from(r.n.clone().unwrap()),
            i64::from(r.ambient.unwrap()),
            i64::from(r.secant_dim.clone().unwrap()),
            r.delta.clone().unwrap(),
            r.second_form_dim.clone().unwrap(),
            i64::from(r.quadrics.clone().unwrap()),
        ];
        let want = ["n", "N", "secant_dim", "delta", "second_form_dim", "quadrics"].map(|k| row[k].as_i64().unwrap());
        assert_eq!(got, want, "{}", m.name);
        assert!(r.all_match(), "{}: {:?}", m.name, r.mismatches().collect::<Vec<_>>());
        seen += 1;
    }
    assert_eq!(seen, table.as_object().unwrap().len());
}

#[test]
fn cremona_matches_scan_oracle() {
    let table = fixture("cremona_scan.json");
    let cap = u32::try_from(table["n_cap"].as_u64().unwrap()).unwrap();
    for (d, rows) in table["type2d"].as_object().unwrap() {
        let c = classify_type2d(d.parse().unwrap(), cap).unwrap();
        let got: Vec<(i64, u32, i64, &str)> = c
            .candidates
            .iter()
            .map(|r| {
                let (a, n, delta) = r.triple().unwrap();
                (a, n, delta, if r.branch == Branch::DeltaZero { "delta-zero" } else { "fano" })
            })
            .collect();
        let want: Vec<(i64, u32, i64, &str)> = rows
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                (
                    r[0].as_i64().unwrap(),
                    u32::try_from(r[1].as_u64().unwrap()).unwrap(),
                    r[2].as_i64().unwrap(),
                    r[3].as_str().unwrap(),
                )
            })
            .collect();
        assert_eq!(got, want, "d = {d}");
    }
    let sols: Vec<[u32; 3]> = classify_2n_plus_1(cap).solutions.iter().map(|s| [s.d1, s.d2, s.n]).collect();
    let want: Vec<[u32; 3]> = table["two_n_plus_one"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| [0, 1, 2].map(|i| u32::try_from(r[i].as_u64().unwrap()).unwrap()))
        .collect();
    assert_eq!(sols, want);
}
