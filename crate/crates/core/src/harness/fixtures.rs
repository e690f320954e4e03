//! Built-in fixtures: the octagon and annulus examples with their known
//! expansions, g-vectors and index sets.

use num_bigint::BigInt;

use crate::algebra::ExponentVector;
use crate::arcs::{crossing_band, enumerate_paths};
use crate::expansion::{chi_table, expand_principal, g_vector};
use crate::harness::io::{parse_surface, SurfaceFile};
use crate::Error;

pub const OCTAGON: &str = include_str!("../../fixtures/octagon.cck");
pub const ANNULUS: &str = include_str!("../../fixtures/annulus.cck");

/// Expected expansion of the octagon fixture.
pub const OCTAGON_EXPANSION: &str = "x3^-1 + y3 * x1^-1 * x2 * x3^-1 * x4 * x5^-1 + y3 * y5 * x1^-1 * x2 * x5^-1 \
+ y1 * y3 * x1^-1 * x4 * x5^-1 + y1 * y3 * y5 * x1^-1 * x3 * x5^-1";

pub fn octagon() -> SurfaceFile {
    parse_surface(OCTAGON).expect("bundled fixture")
}

pub fn annulus() -> SurfaceFile {
    parse_surface(ANNULUS).expect("bundled fixture")
}

/// One fixture comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub got: String,
}

impl Check {
    fn new(name: &'static str, expected: impl ToString, got: impl ToString) -> Self {
        Self { name, expected: expected.to_string(), got: got.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort();
    v
}

/// Runs every fixture check.
pub fn selftest() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let oct = octagon();
    let (t, g) = (&oct.triangulation, oct.arc.clone().expect("fixture arc"));
    out.push(Check::new("octagon path count", 5, enumerate_paths(&crossing_band(t, &g)?).len()));
    out.push(Check::new("octagon expansion", OCTAGON_EXPANSION, expand_principal(t, &g)?));
    let gv = g_vector(t, &g)?;
    out.push(Check::new("octagon g-vector", "[0, 0, -1, 0, 0]", format!("{:?}", gv.entries)));
    out.push(Check::new("octagon I-", "[3]", format!("{:?}", sorted(gv.minus))));
    out.push(Check::new("octagon I+", "[7, 12]", format!("{:?}", sorted(gv.plus))));

    let ann = annulus();
    let (t, g) = (&ann.triangulation, ann.arc.clone().expect("fixture arc"));
    out.push(Check::new("annulus path count", 13, enumerate_paths(&crossing_band(t, &g)?).len()));
    let p = expand_principal(t, &g)?;
    let e = ExponentVector::new(vec![-2, 1, -1, 1], vec![1, 1, 1, 1]);
    out.push(Check::new("annulus multiplicity-two term", BigInt::from(2), p.coefficient(&e)));
    let gv = g_vector(t, &g)?;
    out.push(Check::new("annulus g-vector", "[0, -1, 1, -1]", format!("{:?}", gv.entries)));
    out.push(Check::new("annulus I-", "[2, 4]", format!("{:?}", sorted(gv.minus))));
    out.push(Check::new("annulus I+", "[3, 5, 8]", format!("{:?}", sorted(gv.plus))));
    let chi = chi_table(t, &g)?;
    out.push(Check::new("annulus chi(1,1,1,1)", 2, chi.get(&[1, 1, 1, 1])));
    Ok(out)
}
