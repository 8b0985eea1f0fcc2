//! Closed-form numerology for curves and K3 surfaces.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Gonality of a Brill–Noether general curve: `floor((g + 3) / 2)`.
pub fn generic_gonality(g: usize) -> usize {
    assert!(g >= 2, "gonality is only tabulated for g >= 2");
    (g + 3) / 2
}

/// Clifford index of a Brill–Noether general curve: `gon - 2`.
pub fn generic_clifford_index(g: usize) -> usize {
    generic_gonality(g) - 2
}

/// Brill–Noether number `ρ(g, r, d) = g - (r + 1)(g - d + r)`.
pub fn brill_noether_number(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub g: usize,
    pub gon: Option<usize>,
    pub cliff: Option<usize>,
}

impl CurveClass {
    pub fn generic(g: usize) -> Self {
        Self {
            g,
            gon: Some(generic_gonality(g)),
            cliff: Some(generic_clifford_index(g)),
        }
    }

    /// `cliff <= gon - 2 <= cliff + 1` whenever both are known and `g >= 4`.
    pub fn is_consistent(&self) -> bool {
        match (self.gon, self.cliff) {
            (Some(gon), Some(cliff)) if self.g >= 4 => gon >= 2 && cliff + 2 <= gon && gon <= cliff + 3,
            _ => true,
        }
    }
}

/// Chern data and Euler characteristic of the rank-2 Lazarsfeld–Mukai
/// bundle on a K3 with `L^2 = 2g - 2`, `g = 2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LmInvariants {
    pub k: u64,
    pub c1_sq: i64,
    pub c2: i64,
    pub chi: i64,
}

/// Riemann–Roch for a rank-2 bundle on a K3: `χ = 2χ(O) + (c1² - 2c2)/2`.
pub fn lm_chi(k: u64) -> LmInvariants {
    assert!(k >= 1, "k must be positive");
    let k_i = k as i64;
    let c1_sq = 4 * k_i - 2;
    let c2 = k_i + 1;
    let diff = c1_sq - 2 * c2;
    debug_assert!(diff % 2 == 0);
    LmInvariants {
        k,
        c1_sq,
        c2,
        chi: 2 * 2 + diff / 2,
    }
}

/// Outcome of comparing the gonality band with the `(2k - δ, k + 1 - δ)`
/// parametrization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corollary2Report {
    pub g_max: usize,
    /// Pairs `(g, gon)` with `g/3 + 1 <= gon <= g/2 + 1`.
    pub members: Vec<(usize, usize)>,
}

/// `(k, δ)` with `g = 2k - δ`, `gon = k + 1 - δ`, `0 <= 2δ <= k`, found by
/// search.
pub fn corollary2_parameters(g: usize, gon: usize) -> Option<(usize, usize)> {
    (0..=2 * g + 2)
        .flat_map(|k| (0..=k / 2).map(move |d| (k, d)))
        .find(|&(k, d)| 2 * k >= d && 2 * k - d == g && k + 1 >= d && k + 1 - d == gon)
}

fn in_gonality_band(g: usize, gon: usize) -> bool {
    // g/3 + 1 <= gon  and  gon <= g/2 + 1, cleared of denominators
    g + 3 <= 3 * gon && 2 * gon <= g + 2
}

/// Checks over all `2 <= gon <= g <= g_max` that the inequality band is
/// exactly the set of parametrized pairs.
pub fn corollary2_range(g_max: usize) -> Result<Corollary2Report> {
    if g_max < 4 {
        return Err(Error::InvalidInput("g_max must be at least 4".into()));
    }
    let in_range = |&(g, gon): &(usize, usize)| (2..=g_max).contains(&g) && (2..=g).contains(&gon);
    let band: BTreeSet<(usize, usize)> = (2..=g_max)
        .flat_map(|g| (2..=g).map(move |gon| (g, gon)))
        .filter(|&(g, gon)| in_gonality_band(g, gon))
        .collect();
    let parametrized: BTreeSet<(usize, usize)> = (0..=g_max)
        .flat_map(|k| (0..=k / 2).map(move |d| (2 * k - d, k + 1 - d)))
        .filter(in_range)
        .collect();
    if let Some(&(g, gon)) = band.symmetric_difference(&parametrized).next() {
        return Err(Error::AssertionFailure(format!(
            "(g, gon) = ({g}, {gon}): band membership {} but parametrized {}",
            band.contains(&(g, gon)),
            parametrized.contains(&(g, gon))
        )));
    }
    Ok(Corollary2Report {
        g_max,
        members: band.into_iter().collect(),
    })
}

/// Expected behaviour of `K_{p,1}(C, K_C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// Vanishing is a theorem (nondegeneracy, Noether, Petri).
    Zero,
    /// Nonvanishing from special linear series.
    Nonzero,
    /// Vanishing predicted by the conjecture only.
    ConjecturedZero,
    Unknown,
}

impl Expectation {
    pub fn is_satisfied_by(self, dim: usize) -> bool {
        match self {
            Self::Zero | Self::ConjecturedZero => dim == 0,
            Self::Nonzero => dim > 0,
            Self::Unknown => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub p: usize,
    pub expected: Expectation,
}

/// Predicted vanishing of `K_{p,1}(C, K_C)` for `0 <= p <= g - 2`.
///
/// `K_{p,1}` vanishes for `p >= g - cliff - 1` and is nonzero for
/// `1 <= p <= g - cliff - 2`. The positions `p >= g - 2` (Noether) and,
/// when `cliff >= 2`, `p = g - 3` (Petri) are theorems; the rest of the
/// vanishing range is conjectural. Hyperelliptic input (`cliff = 0`),
/// `g < 3` and out-of-range indices give `Unknown` everywhere.
pub fn green_prediction(g: usize, cliff: usize) -> Vec<Prediction> {
    if g < 2 {
        return Vec::new();
    }
    let valid = g >= 3 && cliff >= 1 && 2 * cliff < g;
    (0..=g - 2)
        .map(|p| {
            let expected = if !valid {
                Expectation::Unknown
            } else if p == 0 {
                Expectation::Zero
            } else if p + cliff + 2 <= g {
                Expectation::Nonzero
            } else if p + 2 + (cliff - 1).min(1) >= g {
                Expectation::Zero
            } else {
                Expectation::ConjecturedZero
            };
            Prediction { p, expected }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gonality_values() {
        assert_eq!(generic_gonality(7), 5);
        assert_eq!(generic_gonality(8), 5);
        assert_eq!(generic_gonality(2), 2);
        assert_eq!(generic_clifford_index(5), 2);
    }

    #[test]
    fn brill_noether() {
        // a g^1_d on a general curve exists iff ρ >= 0
        assert_eq!(brill_noether_number(4, 1, 3), 0);
        assert_eq!(brill_noether_number(5, 1, 3), -1);
        assert_eq!(brill_noether_number(5, 1, 4), 1);
        for g in 2..40i64 {
            let gon = generic_gonality(g as usize) as i64;
            assert!(brill_noether_number(g, 1, gon) >= 0);
            assert!(brill_noether_number(g, 1, gon - 1) < 0);
        }
    }

    #[test]
    fn curve_class_relation() {
        for g in 4..30 {
            assert!(CurveClass::generic(g).is_consistent());
        }
        assert!(!CurveClass {
            g: 6,
            gon: Some(5),
            cliff: Some(1)
        }
        .is_consistent());
    }

    #[test]
    fn lm_values() {
        assert_eq!(
            lm_chi(2),
            LmInvariants {
                k: 2,
                c1_sq: 6,
                c2: 3,
                chi: 4
            }
        );
        assert_eq!(lm_chi(1).chi, 3);
        assert_eq!(lm_chi(100).chi, 102);
    }

    #[test]
    fn corollary2_examples() {
        assert_eq!(corollary2_parameters(8, 5), Some((4, 0)));
        assert!(corollary2_parameters(6, 4).is_some());
        assert_eq!(corollary2_parameters(9, 6), None);
        assert!(in_gonality_band(8, 5));
        assert!(in_gonality_band(6, 4));
        assert!(!in_gonality_band(9, 6));
        let r = corollary2_range(30).unwrap();
        assert!(r.members.contains(&(8, 5)));
        assert!(!r.members.contains(&(9, 6)));
        assert!(corollary2_range(3).is_err());
    }

    #[test]
    fn parameters_agree_with_band_by_search() {
        for g in 2..=60 {
            for gon in 2..=g {
                assert_eq!(
                    corollary2_parameters(g, gon).is_some(),
                    in_gonality_band(g, gon),
                    "({g},{gon})"
                );
            }
        }
    }

    fn expectations(g: usize, cliff: usize) -> Vec<Expectation> {
        green_prediction(g, cliff).into_iter().map(|p| p.expected).collect()
    }

    #[test]
    fn green_positions() {
        use Expectation::*;
        assert_eq!(expectations(4, 1), vec![Zero, Nonzero, Zero]);
        assert_eq!(expectations(6, 1), vec![Zero, Nonzero, Nonzero, Nonzero, Zero]);
        assert_eq!(expectations(5, 2), vec![Zero, Nonzero, Zero, Zero]);
        assert_eq!(expectations(3, 1), vec![Zero, Zero]);
        assert_eq!(
            expectations(9, 4)[3..],
            [Nonzero, ConjecturedZero, ConjecturedZero, Zero, Zero]
        );
        assert!(expectations(5, 0).iter().all(|&e| e == Unknown));
        assert!(expectations(5, 3).iter().all(|&e| e == Unknown));
    }

    #[test]
    fn vanishing_is_monotone_in_p() {
        for g in 3..20 {
            for cliff in 1..=(g - 1) / 2 {
                let e = expectations(g, cliff);
                let first = (1..e.len()).find(|&p| e[p] != Expectation::Nonzero).unwrap();
                assert!(e[first..]
                    .iter()
                    .all(|x| matches!(x, Expectation::Zero | Expectation::ConjecturedZero)));
            }
        }
    }
}
