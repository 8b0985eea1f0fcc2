//! Homogeneous polynomials over F_p and graded presentations of section rings.
//!
//! A [`GradedRingPresentation`] computes, one degree at a time, the span of
//! the relations inside the ambient forms, puts it in reduced echelon form,
//! and keeps the non-pivot monomials as the standard basis of `R_q`. The
//! normal form of every ambient monomial is precomputed so products reduce
//! by table lookup.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{row_echelon, PrimeField, SparseMatrix};

/// Exponent vector of a monomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Self(exponents)
    }

    pub fn one(n_vars: usize) -> Self {
        Self(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded reverse lexicographic order: higher degree first, then the
/// monomial with the smaller exponent in the last differing variable wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            self.0
                .iter()
                .zip(&other.0)
                .rev()
                .find(|(a, b)| a != b)
                .map_or(Ordering::Equal, |(a, b)| b.cmp(a))
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n_vars` variables, largest first in grevlex.
pub fn monomials_of_degree(n_vars: usize, d: usize) -> Vec<Monomial> {
    fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u16>, var: usize, left: usize) {
        if var + 1 == cur.len() {
            cur[var] = left as u16;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e as u16;
            fill(out, cur, var + 1, left - e);
        }
        cur[var] = 0;
    }
    if n_vars == 0 {
        return if d == 0 { vec![Monomial(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    fill(&mut out, &mut vec![0; n_vars], 0, d);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A homogeneous polynomial with coefficients in F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n_vars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(n_vars: usize, degree: usize) -> Self {
        Self {
            n_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from signed integer coefficients.
    pub fn from_terms(
        field: PrimeField,
        n_vars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, i64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n_vars, degree);
        for (m, c) in terms {
            if m.n_vars() != n_vars || m.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "monomial {m} does not fit a degree-{degree} form in {n_vars} variables"
                )));
            }
            p.add_term(field, m, field.from_i64(c));
        }
        Ok(p)
    }

    /// Uniformly random form: every coefficient drawn from F_p.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, n_vars: usize, degree: usize, rng: &mut R) -> Self {
        let mut p = Self::zero(n_vars, degree);
        for m in monomials_of_degree(n_vars, degree) {
            let c = rng.random_range(0..field.modulus());
            p.add_term(field, m, c);
        }
        p
    }

    pub fn add_term(&mut self, field: PrimeField, m: Monomial, c: u64) {
        debug_assert_eq!(m.degree(), self.degree);
        let slot = self.terms.entry(m).or_insert(0);
        *slot = field.add(*slot, field.reduce(c));
        if *slot == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            n_vars: self.n_vars,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, &c)| (t.mul(m), c)).collect(),
        }
    }

    pub fn mul(&self, field: PrimeField, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.n_vars, self.degree + other.degree);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(field, a.mul(b), field.mul(ca, cb));
            }
        }
        out
    }

    /// Sets variable `var` to zero and drops it from the ambient ring.
    pub fn substitute_zero(&self, var: usize) -> Poly {
        assert!(var < self.n_vars, "variable index out of range");
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] == 0)
            .map(|(m, &c)| {
                let mut e = m.0.clone();
                e.remove(var);
                (Monomial(e), c)
            })
            .collect();
        Poly {
            n_vars: self.n_vars - 1,
            degree: self.degree,
            terms,
        }
    }
}

/// How the section ring is presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingForm {
    /// `R = k[x_0..x_n] / (generators)`.
    Quotient { generators: Vec<Poly> },
    /// `R_q = S_{step*q} / relation * S_{step*q - deg relation}`.
    VeroneseQuotient { step: usize, relation: Poly },
}

/// Expected Hilbert function of a constructor family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HilbertOracle {
    /// Rational normal curve of degree `n`: `nq + 1`.
    RationalNormalCurve { n: usize },
    /// Canonical curve of genus `g`: `g` in degree 1, `(2q-1)(g-1)` above.
    CanonicalCurve { g: usize },
    /// K3 surface with `L^2 = 2g - 2`: `q^2 (g-1) + 2` for `q >= 1`.
    K3 { g: usize },
}

impl HilbertOracle {
    pub fn expected_dim(&self, q: usize) -> usize {
        if q == 0 {
            return 1;
        }
        match *self {
            Self::RationalNormalCurve { n } => n * q + 1,
            Self::CanonicalCurve { g } if q == 1 => g,
            Self::CanonicalCurve { g } => (2 * q - 1) * (g - 1),
            Self::K3 { g } => q * q * (g - 1) + 2,
        }
    }
}

/// Cached data for one graded piece `R_q`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: usize,
    ambient: Vec<Monomial>,
    ambient_index: HashMap<Monomial, usize>,
    relations: SparseMatrix,
    pivots: Vec<usize>,
    basis: Vec<usize>,
    normal_forms: Vec<Vec<(usize, u64)>>,
}

impl GradedPiece {
    fn build(field: PrimeField, ambient: Vec<Monomial>, degree: usize, relation_rows: Vec<Poly>) -> Self {
        let ambient_index: HashMap<Monomial, usize> =
            ambient.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let triplets = relation_rows.iter().enumerate().flat_map(|(r, f)| {
            let ambient_index = &ambient_index;
            f.terms().map(move |(m, c)| (r, ambient_index[m], c))
        });
        let m = SparseMatrix::from_triplets(field, relation_rows.len(), ambient.len(), triplets)
            .expect("relation rows have distinct monomials");
        let (relations, pivots) = row_echelon(&m);

        let mut is_pivot = vec![false; ambient.len()];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis: Vec<usize> = (0..ambient.len()).filter(|&c| !is_pivot[c]).collect();
        let mut basis_pos = vec![usize::MAX; ambient.len()];
        for (i, &c) in basis.iter().enumerate() {
            basis_pos[c] = i;
        }

        // a pivot monomial equals minus the rest of its echelon row
        let mut normal_forms = vec![Vec::new(); ambient.len()];
        for (i, &c) in basis.iter().enumerate() {
            normal_forms[c] = vec![(i, 1)];
        }
        for (r, &pc) in pivots.iter().enumerate() {
            normal_forms[pc] = relations
                .row(r)
                .iter()
                .skip(1)
                .map(|&(c, v)| (basis_pos[c], field.neg(v)))
                .collect();
        }

        Self {
            degree,
            ambient,
            ambient_index,
            relations,
            pivots,
            basis,
            normal_forms,
        }
    }

    /// The graded degree `q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduced echelon basis of the relation space inside the ambient forms.
    pub fn relations(&self) -> &SparseMatrix {
        &self.relations
    }

    pub fn basis_monomial(&self, i: usize) -> &Monomial {
        &self.ambient[self.basis[i]]
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().map(|&c| &self.ambient[c])
    }

    /// Coordinates of an ambient monomial in the standard basis.
    pub fn normal_form(&self, m: &Monomial) -> &[(usize, u64)] {
        let idx = self
            .ambient_index
            .get(m)
            .unwrap_or_else(|| panic!("monomial {m} is not in this graded piece"));
        &self.normal_forms[*idx]
    }

    /// Dense coordinates of an ambient form.
    pub fn reduce(&self, field: PrimeField, form: &Poly) -> Vec<u64> {
        let mut out = vec![0; self.dim()];
        for (m, c) in form.terms() {
            for &(i, v) in self.normal_form(m) {
                out[i] = field.add(out[i], field.mul(c, v));
            }
        }
        out
    }
}

/// An element of `R_q` in standard-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub coords: Vec<u64>,
}

/// Graded pieces `R_q` of a section ring with multiplication.
pub struct GradedRingPresentation {
    field: PrimeField,
    n_vars: usize,
    form: RingForm,
    oracle: Option<HilbertOracle>,
    label: String,
    seed: u64,
    pieces: RwLock<BTreeMap<usize, Arc<GradedPiece>>>,
}

impl GradedRingPresentation {
    pub fn new(
        field: PrimeField,
        n_vars: usize,
        form: RingForm,
        oracle: Option<HilbertOracle>,
        label: impl Into<String>,
        seed: u64,
    ) -> Result<Self> {
        let check = |f: &Poly| {
            if f.n_vars() != n_vars || f.degree() == 0 {
                Err(Error::InvalidInput(format!(
                    "relation of degree {} in {} variables does not fit a ring in {n_vars} variables",
                    f.degree(),
                    f.n_vars()
                )))
            } else {
                Ok(())
            }
        };
        match &form {
            RingForm::Quotient { generators } => generators.iter().try_for_each(check)?,
            RingForm::VeroneseQuotient { step, relation } => {
                if *step == 0 {
                    return Err(Error::InvalidInput("Veronese step must be positive".into()));
                }
                check(relation)?;
            }
        }
        Ok(Self {
            field,
            n_vars,
            form,
            oracle,
            label: label.into(),
            seed,
            pieces: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn form(&self) -> &RingForm {
        &self.form
    }

    pub fn oracle(&self) -> Option<HilbertOracle> {
        self.oracle
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Degree of the ambient forms representing `R_q`.
    pub fn ambient_degree(&self, q: usize) -> usize {
        match &self.form {
            RingForm::Quotient { .. } => q,
            RingForm::VeroneseQuotient { step, .. } => step * q,
        }
    }

    /// Basis and reducer for `R_q`, computed once and cached.
    ///
    /// Fails with [`Error::DegenerateSample`] when the dimension disagrees
    /// with the attached Hilbert oracle.
    pub fn graded_piece(&self, q: usize) -> Result<Arc<GradedPiece>> {
        if let Some(p) = self.pieces.read().expect("cache poisoned").get(&q) {
            return Ok(Arc::clone(p));
        }
        let piece = Arc::new(self.compute_piece(q));
        if let Some(oracle) = self.oracle {
            let expected = oracle.expected_dim(q);
            if piece.dim() != expected {
                return Err(Error::DegenerateSample {
                    variety: self.label.clone(),
                    degree: q,
                    expected,
                    found: piece.dim(),
                });
            }
        }
        let mut cache = self.pieces.write().expect("cache poisoned");
        Ok(Arc::clone(cache.entry(q).or_insert(piece)))
    }

    pub fn dim(&self, q: usize) -> Result<usize> {
        Ok(self.graded_piece(q)?.dim())
    }

    /// Checks the Hilbert oracle in every degree up to `max_q`.
    pub fn check_hilbert(&self, max_q: usize) -> Result<()> {
        (0..=max_q).try_for_each(|q| self.graded_piece(q).map(drop))
    }

    fn compute_piece(&self, q: usize) -> GradedPiece {
        let d = self.ambient_degree(q);
        let ambient = monomials_of_degree(self.n_vars, d);
        let relations: Vec<&Poly> = match &self.form {
            RingForm::Quotient { generators } => generators.iter().collect(),
            RingForm::VeroneseQuotient { relation, .. } => vec![relation],
        };
        let rows = relations
            .into_iter()
            .filter(|f| f.degree() <= d)
            .flat_map(|f| {
                monomials_of_degree(self.n_vars, d - f.degree())
                    .into_iter()
                    .map(move |m| f.mul_monomial(&m))
            })
            .collect();
        GradedPiece::build(self.field, ambient, q, rows)
    }

    /// The element of `R_q` given by the `i`-th standard monomial.
    pub fn basis_element(&self, q: usize, i: usize) -> Result<RingElement> {
        let dim = self.dim(q)?;
        let mut coords = vec![0; dim];
        coords[i] = 1;
        Ok(RingElement { degree: q, coords })
    }

    /// Coordinates of an ambient form of degree `ambient_degree(q)` in `R_q`.
    pub fn element_from_form(&self, q: usize, form: &Poly) -> Result<RingElement> {
        if form.degree() != self.ambient_degree(q) || form.n_vars() != self.n_vars {
            return Err(Error::InvalidInput(format!(
                "form of degree {} does not represent an element of R_{q}",
                form.degree()
            )));
        }
        let piece = self.graded_piece(q)?;
        Ok(RingElement {
            degree: q,
            coords: piece.reduce(self.field, form),
        })
    }

    /// Product of two elements, reduced to the standard basis.
    pub fn multiply_reduce(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let f = self.field;
        let pa = self.graded_piece(a.degree)?;
        let pb = self.graded_piece(b.degree)?;
        let pc = self.graded_piece(a.degree + b.degree)?;
        if a.coords.len() != pa.dim() || b.coords.len() != pb.dim() {
            return Err(Error::InvalidInput("coordinate length mismatch".into()));
        }
        let mut out = vec![0; pc.dim()];
        for (i, &ca) in a.coords.iter().enumerate().filter(|(_, &c)| c != 0) {
            let mi = pa.basis_monomial(i);
            for (j, &cb) in b.coords.iter().enumerate().filter(|(_, &c)| c != 0) {
                let coef = f.mul(ca, cb);
                for &(k, v) in pc.normal_form(&mi.mul(pb.basis_monomial(j))) {
                    out[k] = f.add(out[k], f.mul(coef, v));
                }
            }
        }
        Ok(RingElement {
            degree: a.degree + b.degree,
            coords: out,
        })
    }
}

impl Clone for GradedRingPresentation {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            n_vars: self.n_vars,
            form: self.form.clone(),
            oracle: self.oracle,
            label: self.label.clone(),
            seed: self.seed,
            pieces: RwLock::new(self.pieces.read().expect("cache poisoned").clone()),
        }
    }
}

impl fmt::Debug for GradedRingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRingPresentation")
            .field("label", &self.label)
            .field("prime", &self.field.modulus())
            .field("seed", &self.seed)
            .field("n_vars", &self.n_vars)
            .field("form", &self.form)
            .finish()
    }
}
