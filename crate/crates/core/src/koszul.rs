//! Koszul differentials, Koszul cohomology and Betti tables.
//!
//! For a graded ring `R` generated in degree one with `V = R_1`, the
//! differential
//!
//! ```text
//! δ: ∧^p V ⊗ R_q → ∧^{p-1} V ⊗ R_{q+1}
//! δ(e_{i_1} ∧ … ∧ e_{i_p} ⊗ f) = Σ_j (-1)^{j-1} e_{i_1} ∧ … ê_{i_j} … ∧ e_{i_p} ⊗ x_{i_j} f
//! ```
//!
//! is assembled in the basis `(wedge tuple, standard monomial)` in row-major
//! order, wedge tuples strictly increasing in lexicographic order.
//! `K_{p,q}` is the cohomology at `∧^p V ⊗ R_q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{kernel_dim, rank, PrimeField, SparseMatrix};
use crate::polyring::GradedRingPresentation;

/// Largest differential (rows x cols) assembled by default.
pub const DEFAULT_ENTRY_BUDGET: usize = 50_000_000;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Basis of `∧^p V`: strictly increasing index tuples in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    v_dim: usize,
    p: usize,
    tuples: Vec<Vec<usize>>,
}

impl WedgeBasis {
    pub fn new(v_dim: usize, p: usize) -> Self {
        fn extend(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, n: usize, p: usize) {
            if cur.len() == p {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                extend(out, cur, i + 1, n, p);
                cur.pop();
            }
        }
        let mut tuples = Vec::with_capacity(binomial(v_dim, p));
        extend(&mut tuples, &mut Vec::with_capacity(p), 0, v_dim, p);
        Self { v_dim, p, tuples }
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Lexicographic rank of a strictly increasing tuple.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.p
            || tuple.windows(2).any(|w| w[0] >= w[1])
            || tuple.last().is_some_and(|&t| t >= self.v_dim)
        {
            return None;
        }
        let mut idx = 0;
        let mut next = 0;
        for (j, &c) in tuple.iter().enumerate() {
            for v in next..c {
                idx += binomial(self.v_dim - 1 - v, self.p - 1 - j);
            }
            next = c + 1;
        }
        Some(idx)
    }
}

fn check_budget(rows: usize, cols: usize, budget: usize) -> Result<()> {
    if rows.saturating_mul(cols) > budget {
        Err(Error::ResourceLimit { rows, cols, budget })
    } else {
        Ok(())
    }
}

fn piece_dim(ring: &GradedRingPresentation, q: i64) -> Result<usize> {
    if q < 0 {
        Ok(0)
    } else {
        ring.dim(q as usize)
    }
}

/// Matrix of `δ: ∧^p V ⊗ R_q → ∧^{p-1} V ⊗ R_{q+1}` (rows index the target).
pub fn koszul_differential(ring: &GradedRingPresentation, p: usize, q: i64) -> Result<SparseMatrix> {
    koszul_differential_with_budget(ring, p, q, DEFAULT_ENTRY_BUDGET)
}

pub fn koszul_differential_with_budget(
    ring: &GradedRingPresentation,
    p: usize,
    q: i64,
    budget: usize,
) -> Result<SparseMatrix> {
    let field = ring.field();
    let v_dim = ring.dim(1)?;
    let src = WedgeBasis::new(v_dim, p);
    let src_r = piece_dim(ring, q)?;
    let ncols = src.len() * src_r;
    if p == 0 || q < 0 {
        let nrows = if p == 0 {
            0
        } else {
            binomial(v_dim, p - 1) * piece_dim(ring, q + 1)?
        };
        return Ok(SparseMatrix::zeros(field, nrows, ncols));
    }
    let q = q as usize;
    let tgt = WedgeBasis::new(v_dim, p - 1);
    let linear = ring.graded_piece(1)?;
    let rq = ring.graded_piece(q)?;
    let rq1 = ring.graded_piece(q + 1)?;
    let nrows = tgt.len() * rq1.dim();
    check_budget(nrows, ncols, budget)?;

    // x_i * m for every variable and every standard monomial of R_q
    let products: Vec<Vec<&[(usize, u64)]>> = linear
        .basis_monomials()
        .map(|x| rq.basis_monomials().map(|m| rq1.normal_form(&x.mul(m))).collect())
        .collect();

    let mut triplets = Vec::new();
    let mut rest = Vec::with_capacity(p - 1);
    for (t_idx, tuple) in src.tuples().iter().enumerate() {
        for j in 0..p {
            rest.clear();
            rest.extend(tuple.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v));
            let r_idx = tgt.index_of(&rest).expect("sub-tuple of a basis tuple");
            let negate = j % 2 == 1;
            for (m, prods) in products[tuple[j]].iter().enumerate() {
                let col = t_idx * src_r + m;
                for &(k, v) in *prods {
                    let v = if negate { field.neg(v) } else { v };
                    triplets.push((r_idx * rq1.dim() + k, col, v));
                }
            }
        }
    }
    SparseMatrix::from_triplets(field, nrows, ncols, triplets)
}

/// `dim K_{p,q}` over the ring's prime field; zero for `q < 0`.
pub fn koszul_dim(ring: &GradedRingPresentation, p: usize, q: i64) -> Result<usize> {
    koszul_dim_with_budget(ring, p, q, DEFAULT_ENTRY_BUDGET)
}

pub fn koszul_dim_with_budget(ring: &GradedRingPresentation, p: usize, q: i64, budget: usize) -> Result<usize> {
    if q < 0 {
        return Ok(0);
    }
    let out = koszul_differential_with_budget(ring, p, q, budget)?;
    let inc = koszul_differential_with_budget(ring, p + 1, q - 1, budget)?;
    Ok(kernel_dim(&out) - rank(&inc))
}

/// Checks `δ_{p-1,q+1} ∘ δ_{p,q} = 0` exactly.
pub fn complex_condition_holds(ring: &GradedRingPresentation, p: usize, q: i64) -> Result<bool> {
    if p == 0 {
        return Ok(true);
    }
    let first = koszul_differential(ring, p, q)?;
    let second = koszul_differential(ring, p - 1, q + 1)?;
    Ok(second.mul(&first)?.is_zero())
}

/// Graded Betti numbers `dim K_{p,q}` with run metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub variety: String,
    pub prime: u64,
    pub seed: u64,
    pub genus: Option<usize>,
    entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiTableJson {
    variety: String,
    prime: u64,
    seed: u64,
    entries: Vec<[usize; 3]>,
}

impl BettiTable {
    pub fn new(variety: impl Into<String>, prime: u64, seed: u64, genus: Option<usize>) -> Self {
        Self {
            variety: variety.into(),
            prime,
            seed,
            genus,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, p: usize, q: usize, dim: usize) {
        self.entries.insert((p, q), dim);
    }

    pub fn get(&self, p: usize, q: usize) -> Option<usize> {
        self.entries.get(&(p, q)).copied()
    }

    /// Like [`get`](Self::get) but reports a missing cell as an error.
    pub fn entry(&self, p: usize, q: usize) -> Result<usize> {
        self.get(p, q).ok_or(Error::MissingEntry { p, q })
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.entries
    }

    pub fn max_p(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn max_q(&self) -> usize {
        self.entries.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// `dim K_{p,q}` for `p = 0..=max_p` at fixed `q`.
    pub fn row(&self, q: usize) -> Vec<usize> {
        (0..=self.max_p()).map(|p| self.get(p, q).unwrap_or(0)).collect()
    }

    pub fn to_json(&self) -> String {
        let json = BettiTableJson {
            variety: self.variety.clone(),
            prime: self.prime,
            seed: self.seed,
            entries: self.entries.iter().map(|(&(p, q), &d)| [p, q, d]).collect(),
        };
        serde_json::to_string(&json).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: BettiTableJson = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let mut t = Self::new(json.variety, json.prime, json.seed, None);
        for [p, q, d] in json.entries {
            t.insert(p, q, d);
        }
        Ok(t)
    }

    /// `p,q,dim` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,dim\n");
        for (&(p, q), &d) in &self.entries {
            writeln!(out, "{p},{q},{d}").expect("writing to a String");
        }
        out
    }

    pub fn entries_from_csv(s: &str) -> Result<BTreeMap<(usize, usize), usize>> {
        let bad = |line: &str| Error::InvalidInput(format!("bad CSV row: {line}"));
        s.lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let f: Vec<usize> = line
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| bad(line)))
                    .collect::<Result<_>>()?;
                match f[..] {
                    [p, q, d] => Ok(((p, q), d)),
                    _ => Err(bad(line)),
                }
            })
            .collect()
    }

    /// Betti diagram with rows `q` and columns `p`; zeros print as `.`.
    pub fn to_pretty(&self) -> String {
        let cols = self.max_p() + 1;
        let width = self
            .entries
            .values()
            .map(|d| d.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cols.to_string().len())
            + 1;
        let mut out = format!("{} (p = {}, seed = {})\n", self.variety, self.prime, self.seed);
        out.push_str("     ");
        for p in 0..cols {
            write!(out, "{p:>width$}").unwrap();
        }
        out.push('\n');
        for q in 0..=self.max_q() {
            write!(out, "{q:>3}: ").unwrap();
            for p in 0..cols {
                match self.get(p, q) {
                    Some(0) | None => write!(out, "{:>width$}", ".").unwrap(),
                    Some(d) => write!(out, "{d:>width$}").unwrap(),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Complete table of `dim K_{p,q}` for `0 <= p <= max_p`, `0 <= q <= max_q`.
pub fn betti_table(ring: &GradedRingPresentation, max_p: usize, max_q: usize) -> Result<BettiTable> {
    betti_table_with_budget(ring, max_p, max_q, DEFAULT_ENTRY_BUDGET)
}

pub fn betti_table_with_budget(
    ring: &GradedRingPresentation,
    max_p: usize,
    max_q: usize,
    budget: usize,
) -> Result<BettiTable> {
    // populate the cache serially so degeneracy is reported deterministically
    ring.check_hilbert(max_q + 1)?;
    let v_dim = ring.dim(1)?;

    let cells: Vec<(usize, usize)> = (0..=max_p + 1)
        .flat_map(|p| (0..=max_q).map(move |q| (p, q)))
        .filter(|&cell| cell != (max_p + 1, max_q))
        .collect();
    let ranks: BTreeMap<(usize, usize), usize> = cells
        .par_iter()
        .map(|&(p, q)| {
            let d = koszul_differential_with_budget(ring, p, q as i64, budget)?;
            Ok(((p, q), rank(&d)))
        })
        .collect::<Result<_>>()?;

    let genus = match ring.oracle() {
        Some(crate::polyring::HilbertOracle::CanonicalCurve { g }) => Some(g),
        Some(crate::polyring::HilbertOracle::K3 { g }) => Some(g),
        _ => None,
    };
    let mut table = BettiTable::new(ring.label(), ring.field().modulus(), ring.seed(), genus);
    for p in 0..=max_p {
        for q in 0..=max_q {
            let chain = binomial(v_dim, p) * ring.dim(q)?;
            let incoming = if q == 0 { 0 } else { ranks[&(p + 1, q - 1)] };
            table.insert(p, q, chain - ranks[&(p, q)] - incoming);
        }
    }
    Ok(table)
}

/// One comparison `dim K_{p,2}` against `dim K_{g-p-2,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualityRow {
    pub p: usize,
    pub k_p2: usize,
    pub k_dual1: usize,
    pub equal: bool,
}

/// Compares the two sides of `K_{p,2} ≅ K_{g-p-2,1}^*` for `0 <= p <= g-2`.
pub fn duality_check(table: &BettiTable, g: usize) -> Result<Vec<DualityRow>> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("genus {g} has no duality range")));
    }
    (0..=g - 2)
        .map(|p| {
            let k_p2 = table.entry(p, 2)?;
            let k_dual1 = table.entry(g - p - 2, 1)?;
            Ok(DualityRow {
                p,
                k_p2,
                k_dual1,
                equal: k_p2 == k_dual1,
            })
        })
        .collect()
}

/// `δ: ∧^l V → V ⊗ ∧^{l-1} V` applied to a vector in `∧^l V`.
/// Output index is `i * len(∧^{l-1}) + tuple index`.
fn contract(field: PrimeField, top: &WedgeBasis, low: &WedgeBasis, alpha: &[u64]) -> Vec<u64> {
    let mut out = vec![0; top.v_dim() * low.len()];
    let mut rest = Vec::new();
    for (t, tuple) in top.tuples().iter().enumerate() {
        if alpha[t] == 0 {
            continue;
        }
        for (j, &i) in tuple.iter().enumerate() {
            rest.clear();
            rest.extend(tuple.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v));
            let idx = i * low.len() + low.index_of(&rest).expect("sub-tuple");
            let v = if j % 2 == 1 { field.neg(alpha[t]) } else { alpha[t] };
            out[idx] = field.add(out[idx], v);
        }
    }
    out
}

/// Wedge product `V ⊗ ∧^{l-1} V → ∧^l V`.
fn wedge(field: PrimeField, top: &WedgeBasis, low: &WedgeBasis, x: &[u64]) -> Vec<u64> {
    let mut out = vec![0; top.len()];
    for i in 0..top.v_dim() {
        for (t, tuple) in low.tuples().iter().enumerate() {
            let c = x[i * low.len() + t];
            if c == 0 || tuple.contains(&i) {
                continue;
            }
            // moving e_i past the smaller indices
            let pos = tuple.iter().filter(|&&k| k < i).count();
            let mut merged = tuple.clone();
            merged.insert(pos, i);
            let idx = top.index_of(&merged).expect("merged tuple is sorted");
            let c = if pos % 2 == 1 { field.neg(c) } else { c };
            out[idx] = field.add(out[idx], c);
        }
    }
    out
}

/// Sign `s` with `∧ ∘ δ = s·l·Id` on random vectors of `∧^l V`, or `None`
/// when the identity fails or the sign is inconsistent between trials.
pub fn wedge_contraction_sign(v_dim: usize, l: usize, trials: usize, seed: u64) -> Option<i8> {
    assert!(1 <= l && l <= v_dim, "need 1 <= l <= v_dim");
    let field = PrimeField::default();
    let top = WedgeBasis::new(v_dim, l);
    let low = WedgeBasis::new(v_dim, l - 1);
    let mut rng = SplitMix64::seed_from_u64(seed);
    let scale = field.reduce(l as u64);
    let mut sign = None;
    for _ in 0..trials {
        let alpha: Vec<u64> = (0..top.len()).map(|_| rng.random_range(0..field.modulus())).collect();
        if alpha.iter().all(|&a| a == 0) {
            continue;
        }
        let back = wedge(field, &top, &low, &contract(field, &top, &low, &alpha));
        let plus: Vec<u64> = alpha.iter().map(|&a| field.mul(scale, a)).collect();
        let minus: Vec<u64> = plus.iter().map(|&a| field.neg(a)).collect();
        let s = if back == plus {
            1
        } else if back == minus {
            -1
        } else {
            return None;
        };
        if *sign.get_or_insert(s) != s {
            return None;
        }
    }
    sign
}

/// True iff `∧ ∘ δ = ±l·Id` with one consistent sign over all trials.
pub fn wedge_contraction_check(v_dim: usize, l: usize, trials: usize, seed: u64) -> bool {
    wedge_contraction_sign(v_dim, l, trials, seed).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{HilbertOracle, Monomial, Poly, RingForm};

    fn mono(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn rnc(n: usize) -> GradedRingPresentation {
        let f = PrimeField::default();
        let x = |i: usize| Monomial::var(n + 1, i);
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // x_i x_{j+1} - x_{i+1} x_j
                gens.push(
                    Poly::from_terms(f, n + 1, 2, [(x(i).mul(&x(j + 1)), 1), (x(i + 1).mul(&x(j)), -1)]).unwrap(),
                );
            }
        }
        GradedRingPresentation::new(
            f,
            n + 1,
            RingForm::Quotient { generators: gens },
            Some(HilbertOracle::RationalNormalCurve { n }),
            format!("rnc{n}"),
            0,
        )
        .unwrap()
    }

    fn fermat_genus4() -> GradedRingPresentation {
        let f = PrimeField::default();
        let quadric = Poly::from_terms(f, 4, 2, [(mono(&[1, 0, 0, 1]), 1), (mono(&[0, 1, 1, 0]), -1)]).unwrap();
        let cubic = Poly::from_terms(
            f,
            4,
            3,
            (0..4).map(|i| {
                let mut e = [0u16; 4];
                e[i] = 3;
                (mono(&e), 1)
            }),
        )
        .unwrap();
        GradedRingPresentation::new(
            f,
            4,
            RingForm::Quotient {
                generators: vec![quadric, cubic],
            },
            Some(HilbertOracle::CanonicalCurve { g: 4 }),
            "g4",
            0,
        )
        .unwrap()
    }

    #[test]
    fn wedge_basis_ranking_matches_enumeration() {
        for n in 0..7 {
            for p in 0..=n + 1 {
                let b = WedgeBasis::new(n, p);
                assert_eq!(b.len(), binomial(n, p));
                for (i, t) in b.tuples().iter().enumerate() {
                    assert_eq!(b.index_of(t), Some(i));
                }
            }
        }
        assert_eq!(WedgeBasis::new(4, 2).index_of(&[2, 1]), None);
    }

    #[test]
    fn p_zero_differential_has_no_rows() {
        let r = rnc(3);
        for q in 0..3 {
            let d = koszul_differential(&r, 0, q).unwrap();
            assert_eq!(d.nrows(), 0);
            assert_eq!(d.ncols(), r.dim(q as usize).unwrap());
        }
    }

    #[test]
    fn twisted_cubic_injective_linear_strand_start() {
        let r = rnc(3);
        let d = koszul_differential(&r, 2, 0).unwrap();
        assert_eq!((d.nrows(), d.ncols()), (16, 6));
        assert_eq!(rank(&d), 6);
    }

    #[test]
    fn twisted_cubic_cells() {
        let r = rnc(3);
        assert_eq!(koszul_dim(&r, 0, 0).unwrap(), 1);
        assert_eq!(koszul_dim(&r, 1, 1).unwrap(), 3);
        assert_eq!(koszul_dim(&r, 2, 1).unwrap(), 2);
        assert_eq!(koszul_dim(&r, 0, -1).unwrap(), 0);
    }

    #[test]
    fn twisted_cubic_table() {
        let t = betti_table(&rnc(3), 3, 2).unwrap();
        assert_eq!(t.row(1), vec![0, 3, 2, 0]);
        assert_eq!(t.row(0), vec![1, 0, 0, 0]);
        assert_eq!(t.row(2), vec![0, 0, 0, 0]);
    }

    #[test]
    fn differentials_compose_to_zero() {
        let r = fermat_genus4();
        for p in 1..5 {
            for q in 0..3 {
                assert!(complex_condition_holds(&r, p, q).unwrap(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn genus4_table_and_duality() {
        let t = betti_table(&fermat_genus4(), 4, 3).unwrap();
        assert_eq!(t.get(1, 1), Some(1));
        assert_eq!(t.get(1, 2), Some(1));
        assert_eq!(t.get(2, 1), Some(0));
        assert_eq!(t.get(0, 2), Some(0));
        let rows = duality_check(&t, 4).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.equal));
        assert_eq!(
            rows[2],
            DualityRow {
                p: 2,
                k_p2: 0,
                k_dual1: 0,
                equal: true
            }
        );
    }

    #[test]
    fn euler_characteristic_matches_hilbert_function() {
        // Σ_p (-1)^p dim K_{p,d-p} = Σ_p (-1)^p C(v,p) h(d-p) on every diagonal
        let r = fermat_genus4();
        let t = betti_table(&r, 4, 3).unwrap();
        let h = |q: usize| HilbertOracle::CanonicalCurve { g: 4 }.expected_dim(q) as i64;
        for d in 0..=3usize {
            let mut lhs = 0i64;
            let mut rhs = 0i64;
            for p in 0..=d.min(4) {
                let s = if p % 2 == 0 { 1 } else { -1 };
                lhs += s * t.get(p, d - p).unwrap() as i64;
                rhs += s * binomial(4, p) as i64 * h(d - p);
            }
            assert_eq!(lhs, rhs, "diagonal {d}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let r = rnc(3);
        let err = koszul_differential_with_budget(&r, 2, 1, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
        assert!(betti_table_with_budget(&r, 3, 2, 10).is_err());
    }

    #[test]
    fn duality_needs_entries() {
        let t = betti_table(&rnc(3), 1, 1).unwrap();
        assert!(matches!(duality_check(&t, 4), Err(Error::MissingEntry { .. })));
    }

    #[test]
    fn serialization_formats() {
        let t = betti_table(&rnc(2), 2, 1).unwrap();
        let json = t.to_json();
        assert!(json.starts_with(r#"{"variety":"rnc2","prime":32003,"seed":0,"entries":[[0,0,1]"#));
        let back = BettiTable::from_json(&json).unwrap();
        assert_eq!(back.entries(), t.entries());
        let csv = t.to_csv();
        assert!(csv.starts_with("p,q,dim\n0,0,1\n"));
        assert_eq!(&BettiTable::entries_from_csv(&csv).unwrap(), t.entries());
        assert!(t.to_pretty().contains("  1: "));
    }

    #[test]
    fn contraction_small_cases() {
        let f = PrimeField::default();
        // l = 1: δ(e_i) = e_i ⊗ 1 and the wedge gives e_i back
        let top = WedgeBasis::new(3, 1);
        let low = WedgeBasis::new(3, 0);
        let e1 = vec![0, 1, 0];
        assert_eq!(wedge(f, &top, &low, &contract(f, &top, &low, &e1)), e1);
        // l = 2 on e_1 ∧ e_2: e_1 ⊗ e_2 - e_2 ⊗ e_1 wedges to 2 e_1 ∧ e_2
        let top = WedgeBasis::new(4, 2);
        let low = WedgeBasis::new(4, 1);
        let mut a = vec![0; 6];
        a[top.index_of(&[1, 2]).unwrap()] = 1;
        let back = wedge(f, &top, &low, &contract(f, &top, &low, &a));
        assert_eq!(back, a.iter().map(|&x| 2 * x).collect::<Vec<_>>());
    }

    #[test]
    fn contraction_identity_random() {
        assert_eq!(wedge_contraction_sign(8, 5, 20, 7), Some(1));
        for l in 1..=5 {
            for v in l..=8 {
                assert!(wedge_contraction_check(v, l, 5, 11));
            }
        }
    }
}
