//! Coarse feasibility scan of the default design space on the synthetic
//! coefficients, pinned as a regression fixture. Set WOLFPACK_BLESS=1 to
//! rewrite the fixture.

use std::fmt::Write;

use wolfpack::opt::Evaluation;
use wolfpack::oswec::{default_space, OswecModel};

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/oswec_scan.txt");

fn levels(lo: f64, hi: f64) -> [f64; 3] {
    [lo, 0.5 * (lo + hi), hi]
}

fn scan() -> String {
    let m = OswecModel::synthetic();
    let s = default_space();
    let (lo, hi) = (s.lower(), s.upper());
    let mut out = String::from("# H T K C -> F feasible | X rotation limit | E off coefficient grid\n");
    for h in levels(lo[0], hi[0]) {
        for t in levels(lo[1], hi[1]) {
            for k in levels(lo[2], hi[2]) {
                for c in levels(lo[3], hi[3]) {
                    let tag = match m.objective_power(&[h, t, k, c]) {
                        Evaluation::Value(_) => 'F',
                        Evaluation::Infeasible(why) if why.contains("rotation") => 'X',
                        Evaluation::Infeasible(_) => 'E',
                    };
                    writeln!(out, "{h} {t} {k} {c} {tag}").unwrap();
                }
            }
        }
    }
    out
}

#[test]
fn default_space_has_feasible_interior_and_infeasible_corner() {
    let got = scan();
    if std::env::var_os("WOLFPACK_BLESS").is_some() {
        std::fs::write(FIXTURE, &got).unwrap();
    }
    let pinned = std::fs::read_to_string(FIXTURE).expect("fixture present");
    assert_eq!(got, pinned);

    let m = OswecModel::synthetic();
    let corner_infeasible = [[5.0, 12.0, 0.0, 0.01], [5.0, 7.0, 0.0, 0.01]]
        .iter()
        .any(|x| matches!(m.objective_power(x), Evaluation::Infeasible(_)));
    assert!(corner_infeasible);
    let interior: Vec<&str> = got.lines().filter(|l| l.starts_with("2.75 7 50")).collect();
    assert!(interior.iter().any(|l| l.ends_with('F')));
}
