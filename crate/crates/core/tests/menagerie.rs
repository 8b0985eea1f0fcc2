use syzygy_core::koszul::BettiTable;
use syzygy_core::numerology::Expectation;
use syzygy_core::runner::{compute_betti, green_check, render_table, OutputFormat, RunConfig};
use syzygy_core::varieties::{menagerie, VarietySpec};

fn curves() -> Vec<VarietySpec> {
    [1, 2]
        .into_iter()
        .flat_map(menagerie)
        .filter(VarietySpec::is_canonical_curve)
        .collect()
}

#[test]
fn predictions_hold_on_every_canonical_curve() {
    for spec in curves() {
        let cfg = RunConfig {
            seed: spec.seed,
            ..Default::default()
        };
        let report = green_check(&spec, &cfg).unwrap();
        assert!(report.all_match(), "{}", report.render(OutputFormat::Pretty));
        if report.g >= 4 {
            assert!(report.rows.iter().any(|r| r.expected == Expectation::Nonzero));
        }
    }
}

#[test]
fn linear_strand_vanishing_propagates() {
    for spec in [1, 2].into_iter().flat_map(menagerie) {
        let run = compute_betti(
            &spec,
            &RunConfig {
                seed: spec.seed,
                ..Default::default()
            },
        )
        .unwrap();
        let strand = run.table.row(1);
        if let Some(k) = (1..strand.len()).find(|&p| strand[p] == 0) {
            assert!(strand[k..].iter().all(|&d| d == 0), "{}: {strand:?}", run.table.variety);
        }
    }
}

#[test]
fn runs_are_byte_identical() {
    let spec = VarietySpec::canonical(5, 9);
    let cfg = RunConfig {
        seed: 9,
        ..Default::default()
    };
    for format in [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Pretty] {
        let a = render_table(&compute_betti(&spec, &cfg).unwrap().table, format);
        let b = render_table(&compute_betti(&spec, &cfg).unwrap().table, format);
        assert_eq!(a, b);
    }
}

#[test]
fn serialized_tables_round_trip() {
    for spec in menagerie(3) {
        let table = compute_betti(
            &spec,
            &RunConfig {
                seed: 3,
                crosscheck_primes: 0,
                ..Default::default()
            },
        )
        .unwrap()
        .table;
        let back = BettiTable::from_json(&table.to_json()).unwrap();
        assert_eq!(back.entries(), table.entries());
        assert_eq!(
            (back.variety.as_str(), back.prime, back.seed),
            (table.variety.as_str(), table.prime, table.seed)
        );
        assert_eq!(&BettiTable::entries_from_csv(&table.to_csv()).unwrap(), table.entries());
    }
}
