//! Mutation oracle: flips the triangulation until the arc becomes one of
//! its edges, mutating a symbolic seed alongside, and reads off the
//! cluster variable at the arc's position.
//!
//! Only algebra, seeds and surface primitives are used for the value; the
//! band is consulted for crossing numbers only.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use thiserror::Error;

use crate::algebra::LaurentPolynomial;
use crate::arcs::{crossing_band, Arc, ArcError};
use crate::harness::corpus::chord_key;
use crate::seeds::{ExtendedMatrix, Seed, SeedError};
use crate::surface::{EdgeId, SurfaceError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("the oracle tracks arcs through flips and needs a polygon or annulus triangulation")]
    NeedsEmbedding,
    #[error("no crossing-decreasing flip sequence found within {budget} queued triangulations (crossings {crossings})")]
    BudgetExhausted { budget: usize, crossings: usize },
    #[error("expected {expected} coefficient rows, got {got}")]
    CoefficientRows { expected: usize, got: usize },
}

/// Value of the arc plus the flips that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: LaurentPolynomial,
    pub flip_sequence: Vec<EdgeId>,
    pub seeds_visited: usize,
    /// The search left the greedy order at least once.
    pub used_fallback: bool,
}

/// Search settings. `budget` caps the crossing-decreasing triangulations
/// queued by one fallback search; `None` means ten per crossing.
#[derive(Debug, Clone, Default)]
pub struct OracleConfig {
    pub budget: Option<usize>,
    /// Coefficient rows: row `k` lists the exponents of `u_1..u_ell` in
    /// `y_k`. `None` means principal coefficients.
    pub coefficients: Option<Vec<Vec<i64>>>,
}

fn crossings(t: &Triangulation, gamma: &Arc) -> Result<(usize, Option<EdgeId>), OracleError> {
    let band = crossing_band(t, gamma)?;
    Ok((band.d(), band.own_edge()))
}

fn initial_seed(t: &Triangulation, coefficients: Option<&Vec<Vec<i64>>>) -> Result<Seed, OracleError> {
    let n = t.rank();
    let matrix = match coefficients {
        None => t.b_matrix(),
        Some(rows) => {
            if rows.len() != n {
                return Err(OracleError::CoefficientRows { expected: n, got: rows.len() });
            }
            let ell = rows.first().map_or(0, Vec::len);
            let mut all = t.exchange_block();
            for i in 0..ell {
                all.push(rows.iter().map(|r| r.get(i).copied().unwrap_or(0)).collect());
            }
            if let Some(bad) = rows.iter().position(|r| r.len() != ell) {
                return Err(SeedError::RowLength { row: bad + 1, got: rows[bad].len(), expected: ell }.into());
            }
            ExtendedMatrix::from_rows(n, ell, &all)?
        }
    };
    Ok(Seed::initial(matrix))
}

/// Flip sequence bringing `gamma` into the triangulation, found greedily
/// (always flip the last crossed edge) with a best-first fallback that
/// only takes crossing-decreasing flips.
fn flip_plan(t: &Triangulation, gamma: &Arc, budget: Option<usize>) -> Result<(Vec<EdgeId>, EdgeId, usize, bool), OracleError> {
    let mut current = t.clone();
    let (mut d, mut own) = crossings(&current, gamma)?;
    let mut plan = Vec::new();
    let mut visited = 1;
    let mut fallback = false;
    while d > 0 {
        let band = crossing_band(&current, gamma)?;
        let k = band.crossed()[d - 1];
        let next = current.flip(k)?;
        visited += 1;
        let (d2, own2) = crossings(&next, gamma)?;
        if d2 < d {
            plan.push(k);
            current = next;
            d = d2;
            own = own2;
            continue;
        }
        fallback = true;
        let limit = budget.unwrap_or(10 * d);
        let (steps, seen, end) = search(&current, gamma, d, limit)?;
        visited += seen;
        for &k in &steps {
            current = current.flip(k)?;
        }
        plan.extend(steps);
        d = 0;
        own = Some(end);
    }
    Ok((plan, own.expect("arc is an edge once d = 0"), visited, fallback))
}

fn search(start: &Triangulation, gamma: &Arc, d: usize, limit: usize) -> Result<(Vec<EdgeId>, usize, EdgeId), OracleError> {
    let mut states = vec![(start.clone(), Vec::<EdgeId>::new())];
    let mut queue = BinaryHeap::from([Reverse((d, 0usize))]);
    let mut seen = BTreeSet::from([chord_key(start)]);
    let mut examined = 0;
    while let Some(Reverse((d, i))) = queue.pop() {
        let (t, path) = states[i].clone();
        for k in 1..=t.rank() {
            let next = t.flip(k)?;
            examined += 1;
            let (d2, own) = crossings(&next, gamma)?;
            if d2 >= d || !seen.insert(chord_key(&next)) {
                continue;
            }
            let mut p = path.clone();
            p.push(k);
            if d2 == 0 {
                return Ok((p, examined, own.expect("edge")));
            }
            if seen.len() > limit {
                return Err(OracleError::BudgetExhausted { budget: limit, crossings: d });
            }
            queue.push(Reverse((d2, states.len())));
            states.push((next, p));
        }
    }
    Err(OracleError::BudgetExhausted { budget: limit, crossings: d })
}

/// Cluster variable of `gamma` by seed mutation.
pub fn oracle_expand(t: &Triangulation, gamma: &Arc, config: &OracleConfig) -> Result<OracleResult, OracleError> {
    let seed = initial_seed(t, config.coefficients.as_ref())?;
    if let Arc::Edge(e) = gamma {
        crossing_band(t, gamma)?;
        return Ok(OracleResult { value: seed.value(*e).clone(), flip_sequence: Vec::new(), seeds_visited: 1, used_fallback: false });
    }
    if t.embedding().is_none() {
        return Err(OracleError::NeedsEmbedding);
    }
    let (plan, position, seeds_visited, used_fallback) = flip_plan(t, gamma, config.budget)?;
    let seed = seed.mutate_sequence(&plan)?;
    Ok(OracleResult { value: seed.value(position).clone(), flip_sequence: plan, seeds_visited, used_fallback })
}
