//! Laurent expansions, F-polynomials, g-vectors, coefficient
//! specializations and Euler characteristic tables from complete paths.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraError, ExponentVector, LaurentPolynomial, TropicalElement, TropicalSemifield};
use crate::arcs::{alpha_zero, crossing_band, enumerate_paths, gamma_oriented, Arc, ArcError, CompletePath, CrossingBand};
use crate::surface::{EdgeId, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expansion is not homogeneous: degrees {0:?} and {1:?}")]
    NotHomogeneous(Vec<i64>, Vec<i64>),
    #[error("g-vector {from_sets:?} from index sets disagrees with degree {from_degree:?}")]
    GVectorMismatch { from_sets: Vec<i64>, from_degree: Vec<i64> },
    #[error("{expected} coefficient assignments needed, got {got}")]
    AssignmentCount { expected: usize, got: usize },
}

/// `x(alpha)`: +1 per interior odd step, -1 per crossing.
pub fn x_weight(band: &CrossingBand, path: &CompletePath) -> ExponentVector {
    let n = band.rank();
    let mut x = vec![0i32; n];
    if band.d() == 0 {
        for s in path.steps() {
            x[s.edge - 1] += 1;
        }
        return ExponentVector::new(x, vec![0; n]);
    }
    for (i, s) in path.steps().iter().enumerate() {
        if i % 2 == 0 && s.edge <= n {
            x[s.edge - 1] += 1;
        }
    }
    for &e in band.crossed() {
        x[e - 1] -= 1;
    }
    ExponentVector::new(x, vec![0; n])
}

/// `y(alpha)`: one factor `y_{i_k}` per γ-oriented crossing.
pub fn y_weight(band: &CrossingBand, path: &CompletePath) -> ExponentVector {
    let n = band.rank();
    let mut y = vec![0u32; n];
    for (k, &e) in band.crossed().iter().enumerate() {
        if gamma_oriented(band, path, k + 1).expect("index in range") {
            y[e - 1] += 1;
        }
    }
    ExponentVector::new(vec![0; n], y)
}

fn monomial_of(band: &CrossingBand, path: &CompletePath) -> ExponentVector {
    let x = x_weight(band, path);
    let y = y_weight(band, path);
    ExponentVector::new(x.x().to_vec(), y.y().to_vec())
}

/// Sum of `x(alpha) y(alpha)` over all complete paths of a band.
pub fn expand_band(band: &CrossingBand) -> LaurentPolynomial {
    let n = band.rank();
    let terms = enumerate_paths(band).iter().map(|p| (monomial_of(band, p), BigInt::one())).collect::<Vec<_>>();
    LaurentPolynomial::from_terms(n, n, terms).expect("weights have rank n")
}

/// Degree of each term under `deg x_i = e_i`, `deg y_i = row i of B_T`.
fn term_degree(block: &[Vec<i64>], e: &ExponentVector) -> Vec<i64> {
    let mut deg: Vec<i64> = e.x().iter().map(|&v| v as i64).collect();
    for (i, &a) in e.y().iter().enumerate() {
        for (j, d) in deg.iter_mut().enumerate() {
            *d += a as i64 * block[i][j];
        }
    }
    deg
}

/// Common degree of all terms, or the first disagreement.
pub fn homogeneous_degree(block: &[Vec<i64>], p: &LaurentPolynomial) -> Result<Vec<i64>, ExpansionError> {
    let mut degs = p.terms().map(|(e, _)| term_degree(block, e));
    let first = degs.next().unwrap_or_else(|| vec![0; block.len()]);
    for d in degs {
        if d != first {
            return Err(ExpansionError::NotHomogeneous(first, d));
        }
    }
    Ok(first)
}

/// Laurent expansion of `gamma` with principal coefficients.
pub fn expand_principal(t: &Triangulation, gamma: &Arc) -> Result<LaurentPolynomial, ExpansionError> {
    let band = crossing_band(t, gamma)?;
    let p = expand_band(&band);
    if cfg!(debug_assertions) {
        homogeneous_degree(&t.exchange_block(), &p)?;
    }
    Ok(p)
}

/// `F_gamma`: the principal expansion at `x_i = 1`.
pub fn f_polynomial(t: &Triangulation, gamma: &Arc) -> Result<LaurentPolynomial, ExpansionError> {
    Ok(expand_principal(t, gamma)?.x_to_one())
}

/// A g-vector with the index multisets it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVector {
    pub entries: Vec<i64>,
    pub plus: Vec<EdgeId>,
    pub minus: Vec<EdgeId>,
}

/// Index multisets `(I+, I-)` of a band, in crossing order.
pub fn index_sets(band: &CrossingBand) -> (Vec<EdgeId>, Vec<EdgeId>) {
    let d = band.d();
    if d == 0 {
        return (band.own_edge().into_iter().collect(), Vec::new());
    }
    let s: Vec<usize> = (1..=d).map(|k| band.endpoints(k).expect("in range").0).collect();
    let at = |k: usize| -> Option<usize> {
        match k {
            0 => Some(s[0]),
            k if k <= d => Some(s[k - 1]),
            _ => None,
        }
    };
    let same = |a: usize, b: usize| match (at(a), at(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    };
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for k in 1..=d {
        if same(k - 1, k) && !same(k, k + 1) {
            minus.push(band.crossed()[k - 1]);
        }
        if (2..d).contains(&k) && !same(k - 1, k) && same(k, k + 1) {
            plus.push(band.crossed()[k - 1]);
        }
    }
    let a0 = alpha_zero(band);
    plus.insert(0, a0.steps()[0].edge);
    plus.push(a0.steps()[2 * d].edge);
    (plus, minus)
}

/// g-vector from the index sets, checked against the grading degree of the expansion.
pub fn g_vector(t: &Triangulation, gamma: &Arc) -> Result<GVector, ExpansionError> {
    let band = crossing_band(t, gamma)?;
    let n = band.rank();
    let (plus, minus) = index_sets(&band);
    let mut entries = vec![0i64; n];
    for &h in &plus {
        if h <= n {
            entries[h - 1] += 1;
        }
    }
    for &h in &minus {
        if h <= n {
            entries[h - 1] -= 1;
        }
    }
    let degree = homogeneous_degree(&t.exchange_block(), &expand_band(&band))?;
    if degree != entries {
        return Err(ExpansionError::GVectorMismatch { from_sets: entries, from_degree: degree });
    }
    Ok(GVector { entries, plus, minus })
}

/// Expansion with coefficients in `semifield`: `y_i` is replaced by
/// `yhat[i]` and the result divided by `F_gamma` evaluated in the semifield.
/// The returned polynomial has the semifield generators as its `y` block.
pub fn expand_with_coefficients(
    t: &Triangulation,
    gamma: &Arc,
    semifield: &TropicalSemifield,
    yhat: &[TropicalElement],
) -> Result<LaurentPolynomial, ExpansionError> {
    let n = t.rank();
    if yhat.len() != n {
        return Err(ExpansionError::AssignmentCount { expected: n, got: yhat.len() });
    }
    let ell = semifield.generators();
    if let Some(bad) = yhat.iter().find(|e| e.generators() != ell) {
        return Err(AlgebraError::GeneratorMismatch(ell, bad.generators()).into());
    }
    let principal = expand_principal(t, gamma)?;
    let denominator = principal.x_to_one().tropical_eval(yhat)?;
    let mut terms = Vec::with_capacity(principal.len());
    for (e, c) in principal.terms() {
        let mut u = semifield.identity();
        for (i, &a) in e.y().iter().enumerate() {
            u = u.times(&yhat[i].pow(a as i64));
        }
        let u = u.times(&denominator.inverse());
        terms.push((ExponentVector::from_signed(e.x().to_vec(), u.exponents())?, c.clone()));
    }
    Ok(LaurentPolynomial::from_terms(n, ell, terms)?)
}

/// Path counts by γ-oriented multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiTable {
    pub entries: BTreeMap<Vec<u32>, u64>,
    /// The surface is a disc or an annulus, where the counts are Euler characteristics.
    pub euler_characteristic: bool,
}

impl ChiTable {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn get(&self, e: &[u32]) -> u64 {
        self.entries.get(e).copied().unwrap_or(0)
    }
}

pub fn chi_table(t: &Triangulation, gamma: &Arc) -> Result<ChiTable, ExpansionError> {
    let band = crossing_band(t, gamma)?;
    let mut entries = BTreeMap::new();
    for p in enumerate_paths(&band) {
        *entries.entry(y_weight(&band, &p).y().to_vec()).or_insert(0) += 1;
    }
    Ok(ChiTable { entries, euler_characteristic: t.surface().is_disc_or_annulus() })
}
