//! Constructors for the test menagerie and their serializable recipes.
//!
//! Random equations are drawn coefficient by coefficient from F_p with a
//! SplitMix64 stream seeded by the recipe's seed, so a recipe always rebuilds
//! the same presentation. Genericity is only checked through the Hilbert
//! function up to [`HILBERT_CHECK_DEGREE`].

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{PrimeField, DEFAULT_PRIME};
use crate::polyring::{GradedRingPresentation, HilbertOracle, Monomial, Poly, RingForm};

/// Constructors assert their Hilbert oracle in degrees `0..=3`.
pub const HILBERT_CHECK_DEGREE: usize = 3;

/// Seeds tried on degeneracy: `seed`, `seed + 1`, `seed + 2`.
pub const RESEED_ATTEMPTS: u64 = 3;

/// Complete-intersection K3 surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum K3Type {
    /// Quartic surface in P^3 (genus 3).
    QuarticP3,
    /// Quadric ∩ cubic in P^4 (genus 4).
    Ci23P4,
    /// Three quadrics in P^5 (genus 5).
    Ci222P5,
}

impl K3Type {
    pub const ALL: [K3Type; 3] = [K3Type::QuarticP3, K3Type::Ci23P4, K3Type::Ci222P5];

    pub fn name(self) -> &'static str {
        match self {
            K3Type::QuarticP3 => "quartic_P3",
            K3Type::Ci23P4 => "ci23_P4",
            K3Type::Ci222P5 => "ci222_P5",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }

    /// Sectional genus: `L^2 = 2g - 2`.
    pub fn genus(self) -> usize {
        match self {
            K3Type::QuarticP3 => 3,
            K3Type::Ci23P4 => 4,
            K3Type::Ci222P5 => 5,
        }
    }

    pub fn n_vars(self) -> usize {
        self.equation_degrees().len() + 3
    }

    pub fn equation_degrees(self) -> &'static [usize] {
        match self {
            K3Type::QuarticP3 => &[4],
            K3Type::Ci23P4 => &[2, 3],
            K3Type::Ci222P5 => &[2, 2, 2],
        }
    }
}

impl fmt::Display for K3Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn finish(ring: GradedRingPresentation) -> Result<GradedRingPresentation> {
    ring.check_hilbert(HILBERT_CHECK_DEGREE)?;
    Ok(ring)
}

/// Degree-`n` rational normal curve in P^n cut out by the 2x2 minors of
/// the Hankel matrix `[[x_0..x_{n-1}], [x_1..x_n]]`.
pub fn rational_normal_curve(n: usize, field: PrimeField) -> Result<GradedRingPresentation> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "rational normal curve degree {n} not in 2..=8"
        )));
    }
    let x = |i: usize| Monomial::var(n + 1, i);
    let mut generators = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let minor = Poly::from_terms(field, n + 1, 2, [(x(i).mul(&x(j + 1)), 1), (x(i + 1).mul(&x(j)), -1)])?;
            generators.push(minor);
        }
    }
    finish(GradedRingPresentation::new(
        field,
        n + 1,
        RingForm::Quotient { generators },
        Some(HilbertOracle::RationalNormalCurve { n }),
        format!("rnc_n{n}"),
        0,
    )?)
}

/// Canonical curve of genus 3..=6.
///
/// Genus 3 and 6 are plane quartics and quintics presented through the
/// Veronese quotient; genus 4 is a quadric ∩ cubic in P^3 and genus 5 a
/// complete intersection of three quadrics in P^4.
pub fn canonical_curve(g: usize, seed: u64, field: PrimeField) -> Result<GradedRingPresentation> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let oracle = Some(HilbertOracle::CanonicalCurve { g });
    let label = format!("canonical_g{g}");
    let ring = match g {
        3 | 6 => {
            let d = g / 3 + 3;
            let relation = Poly::random(field, 3, d, &mut rng);
            GradedRingPresentation::new(
                field,
                3,
                RingForm::VeroneseQuotient { step: d - 3, relation },
                oracle,
                label,
                seed,
            )?
        }
        4 | 5 => {
            let degrees: &[usize] = if g == 4 { &[2, 3] } else { &[2, 2, 2] };
            let generators = degrees.iter().map(|&d| Poly::random(field, g, d, &mut rng)).collect();
            GradedRingPresentation::new(field, g, RingForm::Quotient { generators }, oracle, label, seed)?
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "no canonical curve constructor for genus {g}"
            )))
        }
    };
    finish(ring)
}

/// Complete-intersection K3 surface with random equations.
pub fn ci_k3(kind: K3Type, seed: u64, field: PrimeField) -> Result<GradedRingPresentation> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let n = kind.n_vars();
    let generators = kind
        .equation_degrees()
        .iter()
        .map(|&d| Poly::random(field, n, d, &mut rng))
        .collect();
    finish(GradedRingPresentation::new(
        field,
        n,
        RingForm::Quotient { generators },
        Some(HilbertOracle::K3 { g: kind.genus() }),
        kind.name(),
        seed,
    )?)
}

/// Intersects a K3 presentation with the hyperplane `x_{which_var} = 0`.
///
/// The variable is substituted by zero in every generator and dropped; the
/// result is checked against the canonical-curve Hilbert function.
pub fn hyperplane_section(surface: &GradedRingPresentation, which_var: usize) -> Result<GradedRingPresentation> {
    let Some(HilbertOracle::K3 { g }) = surface.oracle() else {
        return Err(Error::InvalidInput("hyperplane_section needs a K3 presentation".into()));
    };
    let RingForm::Quotient { generators } = surface.form() else {
        return Err(Error::InvalidInput(
            "hyperplane_section needs a quotient presentation".into(),
        ));
    };
    if which_var >= surface.n_vars() {
        return Err(Error::InvalidInput(format!("no variable x{which_var}")));
    }
    let generators = generators.iter().map(|f| f.substitute_zero(which_var)).collect();
    finish(GradedRingPresentation::new(
        surface.field(),
        surface.n_vars() - 1,
        RingForm::Quotient { generators },
        Some(HilbertOracle::CanonicalCurve { g }),
        format!("{}_section_x{which_var}", surface.label()),
        surface.seed(),
    )?)
}

/// Serializable recipe reproducing a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySpec {
    pub constructor: String,
    pub params: BTreeMap<String, i64>,
    pub seed: u64,
    pub prime: u64,
}

enum Recipe {
    Rnc(usize),
    Canonical(usize),
    K3(K3Type),
    Section(K3Type, usize),
}

impl VarietySpec {
    pub fn new(constructor: impl Into<String>, params: &[(&str, i64)], seed: u64) -> Self {
        Self {
            constructor: constructor.into(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            seed,
            prime: DEFAULT_PRIME,
        }
    }

    pub fn rnc(n: usize) -> Self {
        Self::new("rnc", &[("n", n as i64)], 0)
    }

    pub fn canonical(g: usize, seed: u64) -> Self {
        Self::new("canonical", &[("g", g as i64)], seed)
    }

    pub fn k3(kind: K3Type, seed: u64) -> Self {
        Self::new(kind.name(), &[], seed)
    }

    pub fn k3_section(kind: K3Type, which_var: usize, seed: u64) -> Self {
        Self::new(format!("{}_section", kind.name()), &[("var", which_var as i64)], seed)
    }

    pub fn with_prime(mut self, prime: u64) -> Self {
        self.prime = prime;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn param(&self, key: &str, default: Option<i64>) -> Result<usize> {
        let v = self
            .params
            .get(key)
            .copied()
            .or(default)
            .ok_or_else(|| Error::InvalidInput(format!("{} needs parameter {key}", self.constructor)))?;
        usize::try_from(v).map_err(|_| Error::InvalidInput(format!("parameter {key} = {v} is negative")))
    }

    fn recipe(&self) -> Result<Recipe> {
        let c = self.constructor.as_str();
        if c == "rnc" {
            return Ok(Recipe::Rnc(self.param("n", None)?));
        }
        if c == "canonical" {
            return Ok(Recipe::Canonical(self.param("g", None)?));
        }
        if let Some(kind) = K3Type::from_name(c) {
            return Ok(Recipe::K3(kind));
        }
        if let Some(kind) = c.strip_suffix("_section").and_then(K3Type::from_name) {
            return Ok(Recipe::Section(kind, self.param("var", Some(0))?));
        }
        Err(Error::InvalidInput(format!("unknown constructor {c}")))
    }

    /// Builds the presentation exactly as recorded.
    pub fn build(&self) -> Result<GradedRingPresentation> {
        let field = PrimeField::new(self.prime)?;
        match self.recipe()? {
            Recipe::Rnc(n) => rational_normal_curve(n, field),
            Recipe::Canonical(g) => canonical_curve(g, self.seed, field),
            Recipe::K3(kind) => ci_k3(kind, self.seed, field),
            Recipe::Section(kind, var) => hyperplane_section(&ci_k3(kind, self.seed, field)?, var),
        }
    }

    /// Builds with up to [`RESEED_ATTEMPTS`] consecutive seeds, returning the
    /// presentation and the seed that produced it.
    pub fn build_with_reseed(&self) -> Result<(GradedRingPresentation, u64)> {
        let mut last = None;
        for k in 0..RESEED_ATTEMPTS {
            let seed = self.seed.wrapping_add(k);
            match self.clone().with_seed(seed).build() {
                Ok(r) => return Ok((r, seed)),
                Err(e @ Error::DegenerateSample { .. }) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.expect("at least one attempt"))
    }

    /// Genus of the curve, or sectional genus of the K3.
    pub fn genus(&self) -> Option<usize> {
        match self.recipe().ok()? {
            Recipe::Rnc(_) => None,
            Recipe::Canonical(g) => Some(g),
            Recipe::K3(kind) | Recipe::Section(kind, _) => Some(kind.genus()),
        }
    }

    /// Whether the recipe yields a canonically embedded curve.
    pub fn is_canonical_curve(&self) -> bool {
        matches!(self.recipe(), Ok(Recipe::Canonical(_) | Recipe::Section(..)))
    }

    /// Clifford index of the curve the recipe produces, when known.
    ///
    /// Plane quartics and quintics have Clifford index 1; the other canonical
    /// curves are Brill–Noether general, with index `floor((g-1)/2)`.
    pub fn clifford_index(&self) -> Option<usize> {
        match self.recipe().ok()? {
            Recipe::Canonical(3 | 6) => Some(1),
            Recipe::Canonical(g) => Some((g - 1) / 2),
            Recipe::Section(kind, _) => Some((kind.genus() - 1) / 2),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}

/// Every recipe in the test menagerie at the given seed.
pub fn menagerie(seed: u64) -> Vec<VarietySpec> {
    let mut out: Vec<VarietySpec> = (2..=6).map(VarietySpec::rnc).collect();
    out.extend((3..=6).map(|g| VarietySpec::canonical(g, seed)));
    out.extend(K3Type::ALL.map(|k| VarietySpec::k3(k, seed)));
    out.extend(K3Type::ALL.map(|k| VarietySpec::k3_section(k, 0, seed)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn generator_count(r: &GradedRingPresentation) -> usize {
        match r.form() {
            RingForm::Quotient { generators } => generators.len(),
            RingForm::VeroneseQuotient { .. } => 1,
        }
    }

    #[test]
    fn rnc_generator_counts() {
        assert_eq!(generator_count(&rational_normal_curve(2, field()).unwrap()), 1);
        assert_eq!(generator_count(&rational_normal_curve(3, field()).unwrap()), 3);
        assert_eq!(generator_count(&rational_normal_curve(4, field()).unwrap()), 6);
        assert!(rational_normal_curve(1, field()).is_err());
        assert!(rational_normal_curve(9, field()).is_err());
    }

    #[test]
    fn canonical_dims() {
        let g4 = canonical_curve(4, 1, field()).unwrap();
        assert_eq!(g4.dim(1).unwrap(), 4);
        let g6 = canonical_curve(6, 1, field()).unwrap();
        assert_eq!(g6.dim(1).unwrap(), 6);
        assert!(matches!(g6.form(), RingForm::VeroneseQuotient { step: 2, .. }));
        let g5 = canonical_curve(5, 1, field()).unwrap();
        assert_eq!(g5.dim(2).unwrap(), 12);
        let g3 = canonical_curve(3, 1, field()).unwrap();
        assert!(matches!(g3.form(), RingForm::VeroneseQuotient { step: 1, .. }));
        assert!(canonical_curve(7, 1, field()).is_err());
    }

    #[test]
    fn k3_dims() {
        let s = ci_k3(K3Type::Ci23P4, 5, field()).unwrap();
        assert_eq!(s.dim(1).unwrap(), 5);
        assert_eq!(s.dim(2).unwrap(), 14);
        assert_eq!(ci_k3(K3Type::QuarticP3, 5, field()).unwrap().dim(1).unwrap(), 4);
        assert_eq!(ci_k3(K3Type::Ci222P5, 5, field()).unwrap().dim(2).unwrap(), 18);
    }

    #[test]
    fn section_of_ci23() {
        let s = ci_k3(K3Type::Ci23P4, 9, field()).unwrap();
        let c = hyperplane_section(&s, 0).unwrap();
        assert_eq!(c.n_vars(), 4);
        assert_eq!(c.dim(1).unwrap(), s.dim(1).unwrap() - 1);
        let RingForm::Quotient { generators } = c.form() else {
            panic!()
        };
        let degrees: Vec<usize> = generators.iter().map(Poly::degree).collect();
        assert_eq!(degrees, vec![2, 3]);
        assert_eq!(c.oracle(), Some(HilbertOracle::CanonicalCurve { g: 4 }));
    }

    #[test]
    fn section_rejects_non_k3() {
        let c = canonical_curve(4, 1, field()).unwrap();
        assert!(hyperplane_section(&c, 0).is_err());
    }

    #[test]
    fn spec_rebuilds_identically() {
        for spec in menagerie(17) {
            let a = spec.build().unwrap();
            let b = VarietySpec::from_json(&spec.to_json()).unwrap().build().unwrap();
            assert_eq!(a.form(), b.form(), "{}", spec.constructor);
            for q in 0..=2 {
                let pa: Vec<_> = a.graded_piece(q).unwrap().basis_monomials().cloned().collect();
                let pb: Vec<_> = b.graded_piece(q).unwrap().basis_monomials().cloned().collect();
                assert_eq!(pa, pb);
            }
        }
    }

    #[test]
    fn spec_json_shape() {
        let s = VarietySpec::canonical(4, 42);
        assert_eq!(
            s.to_json(),
            r#"{"constructor":"canonical","params":{"g":4},"seed":42,"prime":32003}"#
        );
        assert!(VarietySpec::new("nope", &[], 0).build().is_err());
        assert!(VarietySpec::canonical(4, 0).with_prime(32001).build().is_err());
    }

    #[test]
    fn metadata() {
        assert_eq!(VarietySpec::canonical(6, 0).clifford_index(), Some(1));
        assert_eq!(VarietySpec::canonical(5, 0).clifford_index(), Some(2));
        assert_eq!(VarietySpec::k3_section(K3Type::Ci23P4, 0, 0).clifford_index(), Some(1));
        assert_eq!(VarietySpec::k3(K3Type::Ci23P4, 0).clifford_index(), None);
        assert_eq!(VarietySpec::k3(K3Type::Ci23P4, 0).genus(), Some(4));
        assert!(!VarietySpec::rnc(3).is_canonical_curve());
    }

    #[test]
    fn reseed_returns_working_seed() {
        let (_, seed) = VarietySpec::k3(K3Type::Ci23P4, 100).build_with_reseed().unwrap();
        assert_eq!(seed, 100);
    }
}
