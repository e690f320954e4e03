//! Extended exchange matrices, seeds of geometric type and their quivers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{AlgebraError, ExponentVector, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("mutation direction {k} out of range 1..={n}")]
    DirectionOutOfRange { k: usize, n: usize },
    #[error("matrix has {got} entries in row {row}, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("expected {expected} rows, found {got}")]
    RowCount { expected: usize, got: usize },
    #[error("exchange in direction {k} is not a Laurent polynomial: {source}")]
    NotExact { k: usize, source: AlgebraError },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

const FORMAT_TAG: &str = "cck/1";

/// An `(n + ell) x n` integer matrix: exchange block on top, coefficient rows below.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedMatrix {
    n: usize,
    ell: usize,
    entries: Vec<i64>,
}

impl ExtendedMatrix {
    pub fn zeros(n: usize, ell: usize) -> Self {
        Self { n, ell, entries: vec![0; (n + ell) * n] }
    }

    pub fn from_rows(n: usize, ell: usize, rows: &[Vec<i64>]) -> Result<Self, SeedError> {
        if rows.len() != n + ell {
            return Err(SeedError::RowCount { expected: n + ell, got: rows.len() });
        }
        let mut entries = Vec::with_capacity((n + ell) * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SeedError::RowLength { row: i + 1, got: row.len(), expected: n });
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { n, ell, entries })
    }

    /// Stacks the identity below `top`.
    pub fn principal(top: &[Vec<i64>]) -> Result<Self, SeedError> {
        let n = top.len();
        let mut rows = top.to_vec();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            rows.push(r);
        }
        Self::from_rows(n, n, &rows)
    }

    /// Replaces the coefficient rows, keeping the exchange block.
    pub fn with_coefficient_rows(&self, rows: &[Vec<i64>]) -> Result<Self, SeedError> {
        let mut all: Vec<Vec<i64>> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        all.extend_from_slice(rows);
        Self::from_rows(self.n, rows.len(), &all)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn coefficient_count(&self) -> usize {
        self.ell
    }

    /// Entry at 0-based row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n + self.ell).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn exchange_block(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Matrix mutation in direction `k` (1-based), applied to every row.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        if k == 0 || k > self.n {
            return Err(SeedError::DirectionOutOfRange { k, n: self.n });
        }
        let k = k - 1;
        let mut out = self.clone();
        for i in 0..self.n + self.ell {
            for j in 0..self.n {
                let v = if i == k || j == k {
                    -self.get(i, j)
                } else {
                    let (bik, bkj) = (self.get(i, k), self.get(k, j));
                    self.get(i, j) + (-bik).max(0) * bkj + bik * bkj.max(0)
                };
                out.set(i, j, v);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ExtendedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{FORMAT_TAG}")?;
        writeln!(f, "{} {}", self.n, self.ell)?;
        for i in 0..self.n + self.ell {
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for ExtendedMatrix {
    type Err = SeedError;

    /// Reads `cck/1`, then `n ell`, then `n + ell` rows of `n` integers.
    /// Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line, msg: &str| SeedError::Parse { line, msg: msg.to_string() };
        match lines.next() {
            Some((_, FORMAT_TAG)) => {}
            Some((line, _)) => return Err(parse_err(line, "expected version line `cck/1`")),
            None => return Err(parse_err(1, "empty input")),
        }
        let (hline, header) = lines.next().ok_or_else(|| parse_err(2, "missing `n ell` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(hline, "header must be two non-negative integers")))
            .collect::<Result<_, _>>()?;
        let [n, ell] = dims[..] else {
            return Err(parse_err(hline, "header must be `n ell`"));
        };
        let mut rows = Vec::new();
        for (line, text) in lines {
            let row: Vec<i64> = text
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(line, &format!("bad integer {t:?}"))))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(parse_err(line, &format!("expected {n} entries, found {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != n + ell {
            return Err(parse_err(hline, &format!("expected {} rows, found {}", n + ell, rows.len())));
        }
        Self::from_rows(n, ell, &rows)
    }
}

/// A seed of geometric type: exchange matrix, labels and cluster variables
/// written as Laurent polynomials in the initial cluster `x_1..x_n` with
/// coefficient variables `y_1..y_ell` (the `y` block of the polynomials).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    matrix: ExtendedMatrix,
    labels: Vec<String>,
    values: Vec<LaurentPolynomial>,
}

impl Seed {
    pub fn initial(matrix: ExtendedMatrix) -> Self {
        let (n, ell) = (matrix.rank(), matrix.coefficient_count());
        Self {
            labels: (1..=n).map(|i| format!("x{i}")).collect(),
            values: (1..=n).map(|i| LaurentPolynomial::x(n, ell, i)).collect(),
            matrix,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.values.len());
        self.labels = labels;
        self
    }

    pub fn matrix(&self) -> &ExtendedMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[LaurentPolynomial] {
        &self.values
    }

    /// Cluster variable at 1-based position `k`.
    pub fn value(&self, k: usize) -> &LaurentPolynomial {
        &self.values[k - 1]
    }

    /// Seed mutation in direction `k` (1-based). The new cluster variable is
    /// the exchange binomial divided by the old one; the division must be exact.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        let matrix = self.matrix.mutate(k)?;
        let (n, ell) = (self.matrix.rank(), self.matrix.coefficient_count());
        let col = k - 1;
        let mut plus = LaurentPolynomial::one(n, ell);
        let mut minus = LaurentPolynomial::one(n, ell);
        for i in 0..n {
            let b = self.matrix.get(i, col);
            let target = if b > 0 { &mut plus } else { &mut minus };
            if b != 0 {
                *target = target.mul(&self.values[i].pow(b.unsigned_abs() as u32)).expect("rank");
            }
        }
        let mut up = vec![0u32; ell];
        let mut down = vec![0u32; ell];
        for j in 0..ell {
            let b = self.matrix.get(n + j, col);
            if b > 0 {
                up[j] = b as u32;
            } else {
                down[j] = (-b) as u32;
            }
        }
        let plus = plus.mul_monomial(&ExponentVector::new(vec![0; n], up)).expect("rank");
        let minus = minus.mul_monomial(&ExponentVector::new(vec![0; n], down)).expect("rank");
        let numerator = plus.add(&minus).expect("rank");
        let value = numerator
            .div_exact(&self.values[col])
            .map_err(|source| SeedError::NotExact { k, source })?;
        let mut values = self.values.clone();
        values[col] = value;
        let mut labels = self.labels.clone();
        labels[col] = format!("{}'", labels[col]);
        Ok(Self { matrix, labels, values })
    }

    /// Applies mutations left to right.
    pub fn mutate_sequence(&self, directions: &[usize]) -> Result<Self, SeedError> {
        directions.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }
}

/// Arrow multiset of an extended matrix. Vertices are 1-based; vertices
/// `n+1..=n+ell` are frozen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverView {
    mutable: usize,
    frozen: usize,
    arrows: BTreeMap<(usize, usize), u32>,
}

impl QuiverView {
    pub fn of(matrix: &ExtendedMatrix) -> Self {
        let (n, ell) = (matrix.rank(), matrix.coefficient_count());
        let mut arrows = BTreeMap::new();
        for i in 0..n + ell {
            for j in 0..n {
                let b = matrix.get(i, j);
                if b > 0 {
                    *arrows.entry((i + 1, j + 1)).or_insert(0) += b as u32;
                } else if b < 0 && i >= n {
                    *arrows.entry((j + 1, i + 1)).or_insert(0) += (-b) as u32;
                }
            }
        }
        Self { mutable: n, frozen: ell, arrows }
    }

    pub fn vertex_count(&self) -> usize {
        self.mutable + self.frozen
    }

    pub fn arrows(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.arrows
    }

    pub fn arrow_count(&self, from: usize, to: usize) -> u32 {
        self.arrows.get(&(from, to)).copied().unwrap_or(0)
    }

    fn is_frozen(&self, v: usize) -> bool {
        v > self.mutable
    }

    /// Quiver mutation at mutable vertex `k`: add composite arrows through
    /// `k`, reverse arrows at `k`, cancel 2-cycles.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        if k == 0 || k > self.mutable {
            return Err(SeedError::DirectionOutOfRange { k, n: self.mutable });
        }
        let mut next: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        let incoming: Vec<(usize, u32)> =
            self.arrows.iter().filter(|((_, t), _)| *t == k).map(|((s, _), &c)| (*s, c)).collect();
        let outgoing: Vec<(usize, u32)> =
            self.arrows.iter().filter(|((s, _), _)| *s == k).map(|((_, t), &c)| (*t, c)).collect();
        for (&(s, t), &c) in &self.arrows {
            let key = if s == k || t == k { (t, s) } else { (s, t) };
            *next.entry(key).or_insert(0) += c as i64;
        }
        for &(i, a) in &incoming {
            for &(j, b) in &outgoing {
                if self.is_frozen(i) && self.is_frozen(j) {
                    continue;
                }
                *next.entry((i, j)).or_insert(0) += (a * b) as i64;
            }
        }
        let keys: Vec<(usize, usize)> = next.keys().copied().collect();
        for (s, t) in keys {
            if s < t {
                if let (Some(&a), Some(&b)) = (next.get(&(s, t)), next.get(&(t, s))) {
                    let m = a.min(b);
                    next.insert((s, t), a - m);
                    next.insert((t, s), b - m);
                }
            }
        }
        let arrows = next.into_iter().filter(|(_, c)| *c > 0).map(|(k, c)| (k, c as u32)).collect();
        Ok(Self { mutable: self.mutable, frozen: self.frozen, arrows })
    }

    /// Rebuilds the extended matrix.
    pub fn to_matrix(&self) -> ExtendedMatrix {
        let (n, ell) = (self.mutable, self.frozen);
        let mut m = ExtendedMatrix::zeros(n, ell);
        for (&(s, t), &c) in &self.arrows {
            let c = c as i64;
            if t <= n {
                m.set(s - 1, t - 1, m.get(s - 1, t - 1) + c);
            }
            if s <= n {
                m.set(t - 1, s - 1, m.get(t - 1, s - 1) - c);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn skew(n: usize, upper: &[i64]) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                m[i][j] = v;
                m[j][i] = -v;
            }
        }
        m
    }

    #[test]
    fn zero_exchange_block_flips_only_column_k() {
        let rows = vec![vec![0, 0], vec![0, 0], vec![3, -1], vec![2, 5]];
        let b = ExtendedMatrix::from_rows(2, 2, &rows).unwrap();
        let m = b.mutate(2).unwrap();
        assert_eq!(m.rows(), vec![vec![0, 0], vec![0, 0], vec![3, 1], vec![2, -5]]);
    }

    #[test]
    fn direction_out_of_range() {
        let b = ExtendedMatrix::principal(&skew(2, &[1])).unwrap();
        assert_eq!(b.mutate(0), Err(SeedError::DirectionOutOfRange { k: 0, n: 2 }));
        assert_eq!(b.mutate(3), Err(SeedError::DirectionOutOfRange { k: 3, n: 2 }));
    }

    #[test]
    fn square_exchange_relation() {
        // one diagonal in a square: both exchange monomials are trivial
        let b = ExtendedMatrix::principal(&[vec![0]]).unwrap();
        let s = Seed::initial(b).mutate(1).unwrap();
        assert_eq!(s.value(1).to_string(), "x1^-1 + y1 * x1^-1");
    }

    #[test]
    fn a2_pentagon_recurrence() {
        let b = ExtendedMatrix::principal(&skew(2, &[1])).unwrap();
        let s = Seed::initial(b).mutate(1).unwrap();
        assert_eq!(s.value(1).to_string(), "x1^-1 * x2 + y1 * x1^-1");
        let s = s.mutate(2).unwrap();
        assert_eq!(s.value(2).to_string(), "x1^-1 + y1 * x1^-1 * x2^-1 + y1 * y2 * x2^-1");
        assert!(s.mutate(2).unwrap().mutate(2).unwrap().value(2) == s.value(2));
    }

    #[test]
    fn matrix_text_round_trip_and_errors() {
        let b = ExtendedMatrix::principal(&skew(3, &[1, -1, 2])).unwrap();
        let text = b.to_string();
        assert!(text.starts_with("cck/1\n3 3\n"));
        assert_eq!(text.parse::<ExtendedMatrix>().unwrap(), b);
        assert!(matches!("3 3\n".parse::<ExtendedMatrix>(), Err(SeedError::Parse { line: 1, .. })));
        assert!(matches!("cck/1\n2 0\n0 1\n-1\n".parse::<ExtendedMatrix>(), Err(SeedError::Parse { line: 4, .. })));
        assert!(matches!("cck/1\n2 0\n0 1\n".parse::<ExtendedMatrix>(), Err(SeedError::Parse { .. })));
        assert!(matches!("cck/1\n1 0\nz\n".parse::<ExtendedMatrix>(), Err(SeedError::Parse { line: 3, .. })));
    }

    #[test]
    fn principal_quiver_has_frozen_arrows() {
        let b = ExtendedMatrix::principal(&skew(3, &[1, 0, -1])).unwrap();
        let q = QuiverView::of(&b);
        for i in 1..=3 {
            assert_eq!(q.arrow_count(3 + i, i), 1);
        }
        assert_eq!(q.arrow_count(1, 2), 1);
        assert_eq!(q.arrow_count(3, 2), 1);
        assert_eq!(q.arrows().len(), 5);
        assert_eq!(q.to_matrix(), b);
    }

    #[test]
    fn zero_matrix_quiver_is_empty() {
        assert!(QuiverView::of(&ExtendedMatrix::zeros(4, 2)).arrows().is_empty());
    }

    fn arb_matrix() -> impl Strategy<Value = ExtendedMatrix> {
        (1usize..6, 0usize..4).prop_flat_map(|(n, ell)| {
            let upper = prop::collection::vec(-2i64..3, n * (n - 1) / 2);
            let lower = prop::collection::vec(prop::collection::vec(-2i64..3, n), ell);
            (upper, lower).prop_map(move |(u, low)| {
                let mut rows = skew(n, &u);
                rows.extend(low);
                ExtendedMatrix::from_rows(n, ell, &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn mutation_is_an_involution(b in arb_matrix(), k in 1usize..6) {
            prop_assume!(k <= b.rank());
            let m = b.mutate(k).unwrap();
            prop_assert!(m.is_skew_symmetric());
            prop_assert_eq!(m.mutate(k).unwrap(), b);
        }

        #[test]
        fn quiver_mutation_matches_matrix_mutation(b in arb_matrix(), k in 1usize..6) {
            prop_assume!(k <= b.rank());
            let q = QuiverView::of(&b);
            prop_assert_eq!(q.to_matrix(), b.clone());
            prop_assert_eq!(q.mutate(k).unwrap(), QuiverView::of(&b.mutate(k).unwrap()));
        }
    }
}
