//! Borel–Weil–Bott on Grassmannians `G(r, n)` of r-planes.
//!
//! Bundles are Schur functors `Σ^μ ℰ` of `ℰ = S*`, the dual of the
//! tautological subbundle. Bott's algorithm: pad `μ` with zeros to length
//! `n`, add `ρ = (n-1, …, 1, 0)`; a repeated entry means all cohomology
//! vanishes, otherwise the cohomology sits in degree `#inversions` and has
//! the Weyl dimension of `sort(μ + ρ) - ρ`.
//!
//! The family `𝓛^{-q} ⊗ S^{q'} ℰ` on `G(2, k+2)` is `μ = (q' - q, -q)`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Highest weight of a homogeneous bundle `Σ^μ ℰ` on `G(r, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GrassmannWeight {
    r: usize,
    n: usize,
    mu: Vec<i64>,
}

impl GrassmannWeight {
    pub fn new(r: usize, n: usize, mu: Vec<i64>) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::InvalidInput(format!("need 0 < r < n, got r={r}, n={n}")));
        }
        if mu.len() != r {
            return Err(Error::InvalidInput(format!(
                "weight has {} entries, expected {r}",
                mu.len()
            )));
        }
        if mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("weight {mu:?} is not weakly decreasing")));
        }
        Ok(Self { r, n, mu })
    }

    /// `𝓛^{-q} ⊗ S^{q'} ℰ` on `G(2, k+2)`.
    pub fn appendix(k: usize, q: i64, q_prime: i64) -> Self {
        assert!(q_prime >= 0, "symmetric power must be non-negative");
        Self {
            r: 2,
            n: k + 2,
            mu: vec![q_prime - q, -q],
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    /// `dim G(r, n) = r (n - r)`.
    pub fn grassmannian_dim(&self) -> usize {
        self.r * (self.n - self.r)
    }

    /// Weight of `(Σ^μ ℰ)^* ⊗ K_G` with `K_G = 𝓛^{-n}`:
    /// `(-μ_r - n, …, -μ_1 - n)`.
    pub fn serre_dual(&self) -> Self {
        let n = self.n as i64;
        Self {
            r: self.r,
            n: self.n,
            mu: self.mu.iter().rev().map(|&m| -m - n).collect(),
        }
    }

    /// `μ` padded with zeros plus `ρ`.
    fn shifted(&self) -> Vec<i64> {
        let n = self.n as i64;
        (0..self.n)
            .map(|i| self.mu.get(i).copied().unwrap_or(0) + (n - 1 - i as i64))
            .collect()
    }
}

/// Cohomology of a homogeneous bundle: at most one nonzero degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub degree: Option<usize>,
    #[serde(serialize_with = "serialize_big")]
    pub dimension: BigUint,
}

fn serialize_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CohomologyResult {
    pub fn zero() -> Self {
        Self {
            degree: None,
            dimension: BigUint::zero(),
        }
    }

    /// `dim H^p`.
    pub fn dim_in_degree(&self, p: usize) -> BigUint {
        if self.degree == Some(p) {
            self.dimension.clone()
        } else {
            BigUint::zero()
        }
    }
}

/// Weyl dimension of the `GL_m` representation with weakly decreasing
/// highest weight `lambda`: `∏_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_dimension(lambda: &[i64]) -> BigUint {
    assert!(
        lambda.windows(2).all(|w| w[0] >= w[1]),
        "weight {lambda:?} is not dominant"
    );
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            let gap = (j - i) as i64;
            num *= BigUint::from((lambda[i] - lambda[j] + gap) as u64);
            den *= BigUint::from(gap as u64);
        }
    }
    num / den
}

/// Bott's algorithm.
pub fn bott(w: &GrassmannWeight) -> CohomologyResult {
    let shifted = w.shifted();
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return CohomologyResult::zero();
    }
    let inversions = (0..shifted.len())
        .flat_map(|i| (i + 1..shifted.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| shifted[i] < shifted[j])
        .count();
    let n = w.n as i64;
    let lambda: Vec<i64> = sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| v - (n - 1 - i as i64))
        .collect();
    CohomologyResult {
        degree: Some(inversions),
        dimension: weyl_dimension(&lambda),
    }
}

/// One point of the sweep over `𝓛^{-q} ⊗ S^{q'} ℰ` on `G(2, k+2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixEntry {
    pub k: usize,
    pub q: i64,
    pub q_prime: i64,
    pub result: CohomologyResult,
}

/// Sweeps `1 <= k <= k_max`, `1 <= q, q' <= 2k + 2` and checks that
/// cohomology sits in degree `k` or `2k`, that degree `k` vanishes when
/// `-q + q' + 1 < 0`, and that degree `2k` vanishes when `-q + q' >= -k - 1`.
pub fn verify_appendix(k_max: usize) -> Result<Vec<AppendixEntry>> {
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        let top = 2 * k as i64 + 2;
        let ki = k as i64;
        for q in 1..=top {
            for q_prime in 1..=top {
                let result = bott(&GrassmannWeight::appendix(k, q, q_prime));
                let fail = |why: &str| {
                    Err(Error::AssertionFailure(format!(
                        "(k, q, q') = ({k}, {q}, {q_prime}): {why}, got {:?} of dimension {}",
                        result.degree, result.dimension
                    )))
                };
                let nonzero = !result.dimension.is_zero();
                if nonzero && result.degree != Some(k) && result.degree != Some(2 * k) {
                    return fail("cohomology outside degrees k and 2k");
                }
                if -q + q_prime + 1 < 0 && !result.dim_in_degree(k).is_zero() {
                    return fail("degree k should vanish");
                }
                if -q + q_prime >= -ki - 1 && !result.dim_in_degree(2 * k).is_zero() {
                    return fail("degree 2k should vanish");
                }
                out.push(AppendixEntry { k, q, q_prime, result });
            }
        }
    }
    Ok(out)
}

/// CSV with header `k,q,q',degree,dimension`; the degree field is empty
/// when all cohomology vanishes.
pub fn appendix_csv(entries: &[AppendixEntry]) -> String {
    let mut out = String::from("k,q,q',degree,dimension\n");
    for e in entries {
        let degree = e.result.degree.map(|d| d.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{},{}", e.k, e.q, e.q_prime, degree, e.result.dimension).expect("writing to a String");
    }
    out
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

/// `dim ∧^{k+1} C^{2k+1} = dim S^k C^{k+2} = C(2k+1, k+1)`, each side
/// evaluated independently (two Weyl dimensions and a binomial).
pub fn dimension_identity(k: usize) -> bool {
    let exterior: Vec<i64> = (0..2 * k + 1).map(|i| i64::from(i <= k)).collect();
    let mut symmetric = vec![0i64; k + 2];
    symmetric[0] = k as i64;
    let b = binomial(2 * k as u64 + 1, k as u64 + 1);
    weyl_dimension(&exterior) == b && weyl_dimension(&symmetric) == b
}
