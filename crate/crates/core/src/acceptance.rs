//! The acceptance suite, shared by the `acceptance` test target and the
//! `selftest` command.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::bwb::{bott, dimension_identity, verify_appendix, GrassmannWeight};
use crate::error::{Error, Result};
use crate::exactlinalg::{PrimeField, DEFAULT_PRIME};
use crate::koszul::{betti_table, complex_condition_holds, duality_check, wedge_contraction_check, BettiTable};
use crate::numerology::{corollary2_range, lm_chi};
use crate::runner::{compute_betti, crosscheck_primes, RunConfig};
use crate::varieties::{menagerie, K3Type, VarietySpec, HILBERT_CHECK_DEGREE};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "serialize_secs")]
    pub elapsed: Duration,
}

fn serialize_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2}s){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            if self.detail.is_empty() {
                String::new()
            } else {
                format!(": {}", self.detail)
            }
        )
    }
}

type Check = fn() -> Result<String>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub time_limit: Option<Duration>,
    check: Check,
}

impl Criterion {
    pub fn run(&self) -> CriterionOutcome {
        let start = Instant::now();
        let res = (self.check)();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match res {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        if let Some(limit) = self.time_limit {
            if passed && elapsed > limit {
                passed = false;
                detail = format!("took longer than {}s", limit.as_secs());
            }
        }
        CriterionOutcome {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion {
            id: 1,
            name: "K_{2,1} = 0 on (2,3) complete intersection K3s",
            time_limit: secs(60),
            check: k3_genus_four,
        },
        Criterion {
            id: 2,
            name: "hyperplane sections keep the linear strand",
            time_limit: None,
            check: hyperplane_restriction,
        },
        Criterion {
            id: 3,
            name: "genus-4 canonical table",
            time_limit: None,
            check: genus_four_table,
        },
        Criterion {
            id: 4,
            name: "rational normal curves",
            time_limit: secs(30),
            check: rational_normal_curves,
        },
        Criterion {
            id: 5,
            name: "duality on canonical curves",
            time_limit: None,
            check: duality_sweep,
        },
        Criterion {
            id: 6,
            name: "plane quintic strand",
            time_limit: None,
            check: plane_quintic,
        },
        Criterion {
            id: 7,
            name: "general genus-5 vanishing",
            time_limit: None,
            check: genus_five,
        },
        Criterion {
            id: 8,
            name: "Grassmannian cohomology sweep",
            time_limit: secs(5),
            check: appendix_sweep,
        },
        Criterion {
            id: 9,
            name: "exterior and symmetric dimension identity",
            time_limit: None,
            check: dimension_identities,
        },
        Criterion {
            id: 10,
            name: "Lazarsfeld-Mukai Euler characteristic",
            time_limit: None,
            check: lm_euler,
        },
        Criterion {
            id: 11,
            name: "gonality band parametrization",
            time_limit: None,
            check: gonality_band,
        },
        Criterion {
            id: 12,
            name: "wedge after contraction is l times identity",
            time_limit: None,
            check: wedge_contraction,
        },
        Criterion {
            id: 13,
            name: "complex, Hilbert function and prime independence",
            time_limit: None,
            check: structural,
        },
    ]
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    criteria().iter().map(Criterion::run).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::AssertionFailure(msg()))
    }
}

fn table(spec: &VarietySpec, max_p: usize, max_q: usize) -> Result<BettiTable> {
    let (ring, _) = spec.build_with_reseed()?;
    betti_table(&ring, max_p, max_q)
}

/// Graded Betti numbers of a complete intersection from the Koszul
/// resolution of its equations: `K_{p,q}` counts `p`-subsets of the degrees
/// summing to `p + q`.
pub fn complete_intersection_betti(degrees: &[usize], p: usize, q: usize) -> usize {
    let n = degrees.len();
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == p)
        .filter(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i]).sum::<usize>() == p + q)
        .count()
}

fn k3_genus_four() -> Result<String> {
    let mut checked = 0;
    for seed in 1..=5 {
        let other = crosscheck_primes(seed, 1, &[DEFAULT_PRIME])[0];
        for prime in [DEFAULT_PRIME, other] {
            let spec = VarietySpec::k3(K3Type::Ci23P4, seed).with_prime(prime);
            let k = table(&spec, 2, 1)?.entry(2, 1)?;
            ensure(k == 0, || format!("seed {seed}, prime {prime}: K_{{2,1}} = {k}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} samples"))
}

fn hyperplane_restriction() -> Result<String> {
    for kind in K3Type::ALL {
        for seed in 1..=3 {
            let surface = table(&VarietySpec::k3(kind, seed), 2, 1)?;
            let curve = table(&VarietySpec::k3_section(kind, 0, seed), 2, 1)?;
            for p in 1..=2 {
                let (s, c) = (surface.entry(p, 1)?, curve.entry(p, 1)?);
                ensure(s == c, || {
                    format!("{} seed {seed}: K_{{{p},1}} surface {s}, section {c}", kind.name())
                })?;
            }
        }
    }
    Ok(String::new())
}

fn genus_four_table() -> Result<String> {
    let t = table(&VarietySpec::canonical(4, 1), 3, 3)?;
    for ((p, q), &dim) in t.entries() {
        let want = complete_intersection_betti(&[2, 3], *p, *q);
        ensure(dim == want, || {
            format!("K_{{{p},{q}}} = {dim}, resolution gives {want}")
        })?;
    }
    let named = [((0, 2), 0), ((1, 1), 1), ((1, 2), 1), ((2, 1), 0)];
    for ((p, q), want) in named {
        let got = t.entry(p, q)?;
        ensure(got == want, || format!("K_{{{p},{q}}} = {got}, expected {want}"))?;
    }
    ensure(t.entry(1, 1)? != 0, || "K_{1,1} vanishes".into())?;
    Ok(String::new())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rational_normal_curves() -> Result<String> {
    for n in 2..=6 {
        let t = table(&VarietySpec::rnc(n), n, 2)?;
        for p in 0..=n {
            let want = p * binom(n, p + 1);
            let got = t.entry(p, 1)?;
            ensure(got == want, || format!("n = {n}: K_{{{p},1}} = {got}, expected {want}"))?;
            ensure(t.entry(p, 2)? == 0, || format!("n = {n}: K_{{{p},2}} nonzero"))?;
        }
    }
    Ok(String::new())
}

fn duality_sweep() -> Result<String> {
    let mut rows = 0;
    for g in 3..=6 {
        let t = table(&VarietySpec::canonical(g, 1), g - 2, 2)?;
        for row in duality_check(&t, g)? {
            ensure(row.equal, || {
                format!(
                    "g = {g}, p = {}: K_{{p,2}} = {}, dual K_{{g-p-2,1}} = {}",
                    row.p, row.k_p2, row.k_dual1
                )
            })?;
            rows += 1;
        }
    }
    Ok(format!("{rows} positions"))
}

fn plane_quintic() -> Result<String> {
    for seed in 1..=3 {
        let t = table(&VarietySpec::canonical(6, seed), 4, 1)?;
        let (k3, k4) = (t.entry(3, 1)?, t.entry(4, 1)?);
        ensure(k3 != 0 && k4 == 0, || {
            format!("seed {seed}: K_{{3,1}} = {k3}, K_{{4,1}} = {k4}")
        })?;
    }
    Ok(String::new())
}

fn genus_five() -> Result<String> {
    for seed in 1..=3 {
        let t = table(&VarietySpec::canonical(5, seed), 3, 1)?;
        let (k2, k3) = (t.entry(2, 1)?, t.entry(3, 1)?);
        ensure(k2 == 0 && k3 == 0, || {
            format!("seed {seed}: K_{{2,1}} = {k2}, K_{{3,1}} = {k3}")
        })?;
    }
    Ok(String::new())
}

fn appendix_sweep() -> Result<String> {
    let entries = verify_appendix(6)?;
    for k in 1..=6usize {
        let r = bott(&GrassmannWeight::appendix(k, k as i64 + 1, k as i64));
        ensure(r.degree == Some(k) && r.dimension == BigUint::from(1u8), || {
            format!("k = {k}: H at (k+1, k) is {:?} of dimension {}", r.degree, r.dimension)
        })?;
    }
    Ok(format!("{} weights", entries.len()))
}

fn dimension_identities() -> Result<String> {
    for k in 1..=100 {
        ensure(dimension_identity(k), || format!("fails at k = {k}"))?;
    }
    Ok(String::new())
}

fn lm_euler() -> Result<String> {
    for k in 1..=100u64 {
        let chi = lm_chi(k).chi;
        ensure(chi == k as i64 + 2, || format!("k = {k}: chi = {chi}"))?;
    }
    Ok(String::new())
}

fn gonality_band() -> Result<String> {
    let report = corollary2_range(200)?;
    Ok(format!("{} pairs", report.members.len()))
}

fn wedge_contraction() -> Result<String> {
    for l in 1..=5 {
        for v in l..=8 {
            ensure(wedge_contraction_check(v, l, 20, (v * 16 + l) as u64), || {
                format!("l = {l}, dim V = {v}")
            })?;
        }
    }
    Ok(String::new())
}

fn structural() -> Result<String> {
    let specs = menagerie(1);
    for spec in &specs {
        let (ring, _) = spec.build_with_reseed()?;
        ring.check_hilbert(HILBERT_CHECK_DEGREE)?;
        let v_dim = ring.dim(1)?;
        for p in 1..=v_dim {
            for q in 0..HILBERT_CHECK_DEGREE as i64 - 1 {
                ensure(complex_condition_holds(&ring, p, q)?, || {
                    format!("{}: δ∘δ ≠ 0 at (p, q) = ({p}, {q})", ring.label())
                })?;
            }
        }
    }
    let cfg = RunConfig {
        crosscheck_primes: 2,
        ..Default::default()
    };
    for spec in &specs {
        let run = compute_betti(
            spec,
            &RunConfig {
                seed: spec.seed,
                ..cfg.clone()
            },
        )?;
        ensure(!run.tiebreak, || {
            format!("{}: tables differ across {:?}", run.table.variety, run.primes)
        })?;
    }
    // PrimeField rejects composite moduli, so prime independence is not vacuous
    ensure(PrimeField::new(32001).is_err(), || "composite modulus accepted".into())?;
    Ok(format!("{} varieties", specs.len()))
}
