//! Run configuration, multi-prime cross-checking and report rendering.
//!
//! A table is computed at the configured prime and again at
//! `crosscheck_primes` further primes drawn deterministically from the seed.
//! If the tables disagree one extra prime is drawn and the majority wins;
//! without a strict majority the run fails with [`Error::BadPrime`].

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::{is_prime, next_prime, DEFAULT_PRIME};
use crate::koszul::{betti_table_with_budget, BettiTable, DEFAULT_ENTRY_BUDGET};
use crate::numerology::{green_prediction, Expectation};
use crate::varieties::VarietySpec;

/// Crosscheck primes are drawn from `[CROSSCHECK_LOW, 2^31)`.
pub const CROSSCHECK_LOW: u64 = 10_007;
pub const DEFAULT_MAX_Q: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Pretty,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "pretty" => Ok(Self::Pretty),
            _ => Err(Error::InvalidInput(format!("unknown format {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub prime: u64,
    pub seed: u64,
    /// Defaults to `dim H^0(L) - 1`.
    pub max_p: Option<usize>,
    pub max_q: usize,
    pub format: OutputFormat,
    pub entry_budget: usize,
    pub crosscheck_primes: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            seed: 0,
            max_p: None,
            max_q: DEFAULT_MAX_Q,
            format: OutputFormat::Json,
            entry_budget: DEFAULT_ENTRY_BUDGET,
            crosscheck_primes: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.prime) || self.prime >= 1 << 31 {
            return Err(Error::InvalidInput(format!("{} is not a prime below 2^31", self.prime)));
        }
        if self.entry_budget == 0 {
            return Err(Error::InvalidInput("entry budget must be positive".into()));
        }
        Ok(())
    }
}

/// `count` distinct primes, none equal to `exclude`, determined by `seed`.
pub fn crosscheck_primes(seed: u64, count: usize, exclude: &[u64]) -> Vec<u64> {
    let mut rng = SplitMix64::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let p = next_prime(rng.random_range(CROSSCHECK_LOW..(1 << 31) - 1_000));
        if p < 1 << 31 && !exclude.contains(&p) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// A Betti table together with how it was obtained.
#[derive(Clone, Debug)]
pub struct BettiRun {
    pub table: BettiTable,
    /// Seed that produced a generic sample, after reseeding.
    pub seed_used: u64,
    /// Every prime whose table was computed, primary first.
    pub primes: Vec<u64>,
    /// Whether a tie-breaking prime was needed.
    pub tiebreak: bool,
}

fn table_at(spec: &VarietySpec, prime: u64, max_p: Option<usize>, cfg: &RunConfig) -> Result<(BettiTable, u64)> {
    let (ring, seed) = spec.clone().with_prime(prime).build_with_reseed()?;
    let max_p = match max_p {
        Some(m) => m,
        None => ring.dim(1)?.saturating_sub(1),
    };
    let table = betti_table_with_budget(&ring, max_p, cfg.max_q, cfg.entry_budget)?;
    Ok((table, seed))
}

/// Computes the table for `spec` under `cfg`, cross-checked across primes.
pub fn compute_betti(spec: &VarietySpec, cfg: &RunConfig) -> Result<BettiRun> {
    cfg.validate()?;
    let spec = spec.clone().with_seed(cfg.seed);
    let (primary, seed_used) = table_at(&spec, cfg.prime, cfg.max_p, cfg)?;
    let max_p = Some(primary.max_p());
    let spec = spec.with_seed(seed_used);

    let mut primes = vec![cfg.prime];
    primes.extend(crosscheck_primes(cfg.seed, cfg.crosscheck_primes, &[cfg.prime]));
    let mut tables = vec![primary];
    for &p in &primes[1..] {
        tables.push(table_at(&spec, p, max_p, cfg)?.0);
    }
    if tables.iter().all(|t| t.entries() == tables[0].entries()) {
        let table = tables.swap_remove(0);
        return Ok(BettiRun {
            table,
            seed_used,
            primes,
            tiebreak: false,
        });
    }

    let extra = crosscheck_primes(cfg.seed, cfg.crosscheck_primes + 1, &[cfg.prime])[cfg.crosscheck_primes];
    primes.push(extra);
    tables.push(table_at(&spec, extra, max_p, cfg)?.0);
    let votes = |t: &BettiTable| tables.iter().filter(|u| u.entries() == t.entries()).count();
    let winner = (0..tables.len())
        .find(|&i| 2 * votes(&tables[i]) > tables.len())
        .ok_or_else(|| Error::BadPrime { primes: primes.clone() })?;
    let table = tables.swap_remove(winner);
    Ok(BettiRun {
        table,
        seed_used,
        primes,
        tiebreak: true,
    })
}

pub fn render_table(table: &BettiTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => table.to_json(),
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Pretty => table.to_pretty(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GreenRow {
    pub p: usize,
    pub expected: Expectation,
    pub computed: usize,
    pub matches: bool,
}

/// Predicted against computed `K_{p,1}` for a canonical curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenReport {
    pub variety: String,
    pub g: usize,
    pub cliff: usize,
    pub rows: Vec<GreenRow>,
}

impl GreenReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &GreenRow> {
        self.rows.iter().filter(|r| !r.matches)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let label = |e: Expectation| serde_json::to_value(e).expect("enum serializes");
        match format {
            OutputFormat::Json => serde_json::to_string(self).expect("plain data serializes"),
            OutputFormat::Csv => {
                let mut s = String::from("p,expected,computed,matches\n");
                for r in &self.rows {
                    let _ = writeln!(
                        s,
                        "{},{},{},{}",
                        r.p,
                        label(r.expected).as_str().unwrap_or(""),
                        r.computed,
                        r.matches
                    );
                }
                s
            }
            OutputFormat::Pretty => {
                let mut s = format!("{} (g = {}, Cliff = {})\n", self.variety, self.g, self.cliff);
                for r in &self.rows {
                    let _ = writeln!(
                        s,
                        "  K_{{{},1}} = {:<4} expected {:<16} {}",
                        r.p,
                        r.computed,
                        label(r.expected).as_str().unwrap_or(""),
                        if r.matches { "ok" } else { "MISMATCH" }
                    );
                }
                s
            }
        }
    }
}

/// Compares [`green_prediction`] with the computed linear strand.
pub fn green_check(spec: &VarietySpec, cfg: &RunConfig) -> Result<GreenReport> {
    if !spec.is_canonical_curve() {
        return Err(Error::InvalidInput(format!(
            "{} is not a canonical curve",
            spec.constructor
        )));
    }
    let g = spec.genus().expect("canonical curves have a genus");
    let cliff = spec
        .clifford_index()
        .ok_or_else(|| Error::InvalidInput(format!("Clifford index of {} is unknown", spec.constructor)))?;
    let cfg = RunConfig {
        max_p: Some(g - 2),
        max_q: 1,
        ..cfg.clone()
    };
    let run = compute_betti(spec, &cfg)?;
    let rows = green_prediction(g, cliff)
        .into_iter()
        .map(|pred| {
            let computed = run.table.entry(pred.p, 1)?;
            Ok(GreenRow {
                p: pred.p,
                expected: pred.expected,
                computed,
                matches: pred.expected.is_satisfied_by(computed),
            })
        })
        .collect::<Result<_>>()?;
    Ok(GreenReport {
        variety: run.table.variety.clone(),
        g,
        cliff,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::K3Type;

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            prime: 32004,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidInput(_))));
        let bad = RunConfig {
            entry_budget: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn crosscheck_primes_are_deterministic_and_distinct() {
        let a = crosscheck_primes(7, 4, &[DEFAULT_PRIME]);
        assert_eq!(a, crosscheck_primes(7, 4, &[DEFAULT_PRIME]));
        assert_eq!(a.len(), 4);
        for (i, &p) in a.iter().enumerate() {
            assert!(is_prime(p) && (CROSSCHECK_LOW..1 << 31).contains(&p) && p != DEFAULT_PRIME);
            assert!(!a[..i].contains(&p));
        }
        // a longer draw extends a shorter one
        assert_eq!(crosscheck_primes(7, 5, &[DEFAULT_PRIME])[..4], a[..]);
    }

    #[test]
    fn rnc_default_bounds() {
        let run = compute_betti(&VarietySpec::rnc(3), &RunConfig::default()).unwrap();
        assert_eq!(run.table.row(1), vec![0, 3, 2, 0]);
        assert_eq!(run.primes.len(), 2);
        assert!(!run.tiebreak);
        let run = compute_betti(&VarietySpec::rnc(2), &RunConfig::default()).unwrap();
        let nonzero: Vec<_> = run.table.entries().iter().filter(|(_, &d)| d > 0).collect();
        assert_eq!(nonzero, vec![(&(0, 0), &1), (&(1, 1), &1)]);
    }

    #[test]
    fn budget_surfaces_as_resource_limit() {
        let cfg = RunConfig {
            entry_budget: 10,
            ..Default::default()
        };
        assert!(matches!(
            compute_betti(&VarietySpec::canonical(4, 1), &cfg),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn green_check_genus_four() {
        let report = green_check(&VarietySpec::canonical(4, 3), &RunConfig::default()).unwrap();
        assert!(report.all_match(), "{}", report.render(OutputFormat::Pretty));
        assert_eq!(
            report.rows.iter().map(|r| r.computed).collect::<Vec<_>>(),
            vec![0, 1, 0]
        );
        assert!(report
            .render(OutputFormat::Csv)
            .starts_with("p,expected,computed,matches\n0,zero,0,true"));
    }

    #[test]
    fn green_check_rejects_non_curves() {
        assert!(green_check(&VarietySpec::rnc(3), &RunConfig::default()).is_err());
        assert!(green_check(&VarietySpec::k3(K3Type::Ci23P4, 1), &RunConfig::default()).is_err());
    }
}
