//! Unpunctured marked surfaces and their triangulations.
//!
//! A [`Triangulation`] is an abstract complex of oriented triangles glued
//! along edges. Interior edges carry ids `1..=n`, boundary edges
//! `n+1..=n+m`. Each triangle lists its three sides in the clockwise cyclic
//! order; side `j` runs from corner `j-1` to corner `j`, and gluing along an
//! interior edge reverses its direction.
//!
//! Polygons and annuli can also carry an [`cover::ChordModel`], an embedding
//! in the universal cover that is used to locate arcs given by endpoints.

pub mod cover;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::seeds::ExtendedMatrix;

pub use cover::{annulus_arc_is_valid, base_point, Chord, ChordModel, CoverKind, LiftedPoint};

/// 1-based edge label.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("surface needs at least one boundary component")]
    NoBoundary,
    #[error("boundary component {0} has no marked points")]
    EmptyBoundary(usize),
    #[error("rank 6g+3b+m-6 = {0} is not positive")]
    RankTooSmall(i64),
    #[error("expected {expected} interior edges, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("expected {expected} boundary edges, got {got}")]
    BoundaryCountMismatch { expected: usize, got: usize },
    #[error("expected {expected} triangles, got {got}")]
    TriangleCount { expected: usize, got: usize },
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("triangle {0} repeats a side")]
    RepeatedSide(usize),
    #[error("edge {edge} lies on {got} triangle sides, expected {expected}")]
    EdgeMultiplicity { edge: EdgeId, got: usize, expected: usize },
    #[error("gluing leaves {got} vertices, expected {expected} marked points")]
    VertexCount { expected: usize, got: usize },
    #[error("boundary does not close up into components {expected:?} (found {got:?})")]
    BoundaryShape { expected: Vec<usize>, got: Vec<usize> },
    #[error("edge {0} is a boundary edge and cannot be flipped")]
    BoundaryFlip(EdgeId),
    #[error("diagonals {0:?} and {1:?} cross")]
    Crossing(Chord, Chord),
    #[error("invalid chord {0}")]
    InvalidChord(String),
    #[error("chord {0:?} appears twice")]
    DuplicateChord(Chord),
    #[error("polygon needs at least 4 marked points, got {0}")]
    PolygonTooSmall(usize),
    #[error("annulus needs marked points on both boundaries")]
    AnnulusEmptyBoundary,
    #[error("chord {0:?} does not bound two triangles")]
    NotTriangulated(Chord),
}

/// Genus and marked points per boundary component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceDescriptor {
    genus: usize,
    marked: Vec<usize>,
}

impl SurfaceDescriptor {
    pub fn new(genus: usize, marked: Vec<usize>) -> Result<Self, SurfaceError> {
        if marked.is_empty() {
            return Err(SurfaceError::NoBoundary);
        }
        if let Some(i) = marked.iter().position(|&c| c == 0) {
            return Err(SurfaceError::EmptyBoundary(i + 1));
        }
        let s = Self { genus, marked };
        if s.rank() < 1 {
            return Err(SurfaceError::RankTooSmall(s.rank()));
        }
        Ok(s)
    }

    pub fn polygon(m: usize) -> Result<Self, SurfaceError> {
        Self::new(0, vec![m])
    }

    pub fn annulus(p: usize, q: usize) -> Result<Self, SurfaceError> {
        Self::new(0, vec![p, q])
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary_components(&self) -> usize {
        self.marked.len()
    }

    pub fn marked_counts(&self) -> &[usize] {
        &self.marked
    }

    pub fn marked_points(&self) -> usize {
        self.marked.iter().sum()
    }

    /// Number of arcs in any triangulation: `6g + 3b + m - 6`.
    pub fn rank(&self) -> i64 {
        6 * self.genus as i64 + 3 * self.marked.len() as i64 + self.marked_points() as i64 - 6
    }

    /// Number of triangles in any triangulation: `n - 2(g - 1) - b`.
    pub fn triangle_count(&self) -> usize {
        (self.rank() - 2 * (self.genus as i64 - 1) - self.marked.len() as i64) as usize
    }

    /// Disc or annulus, the cases where path counts are Euler characteristics.
    pub fn is_disc_or_annulus(&self) -> bool {
        self.genus == 0 && self.marked.len() <= 2
    }
}

/// Three sides in clockwise cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    sides: [EdgeId; 3],
}

impl Triangle {
    pub fn new(sides: [EdgeId; 3]) -> Self {
        Self { sides }
    }

    pub fn sides(&self) -> [EdgeId; 3] {
        self.sides
    }

    /// Same cycle, rotated to start at its smallest edge.
    pub fn canonical(&self) -> Self {
        let r = (0..3).min_by_key(|&i| self.sides[i]).unwrap();
        Self { sides: [self.sides[r], self.sides[(r + 1) % 3], self.sides[(r + 2) % 3]] }
    }

    pub fn position(&self, e: EdgeId) -> Option<usize> {
        self.sides.iter().position(|&s| s == e)
    }

    /// Rotation with `e` first.
    fn starting_at(&self, e: EdgeId) -> [EdgeId; 3] {
        let r = self.position(e).expect("edge in triangle");
        [self.sides[r], self.sides[(r + 1) % 3], self.sides[(r + 2) % 3]]
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tri {} {} {}", self.sides[0], self.sides[1], self.sides[2])
    }
}

/// Validated triangulation, triangles kept in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    surface: SurfaceDescriptor,
    interior: usize,
    triangles: Vec<Triangle>,
    embedding: Option<ChordModel>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl Triangulation {
    pub fn new(surface: SurfaceDescriptor, interior: usize, triangles: Vec<Triangle>) -> Result<Self, SurfaceError> {
        let t = Self::unchecked(surface, interior, triangles);
        t.validate()?;
        Ok(t)
    }

    fn unchecked(surface: SurfaceDescriptor, interior: usize, triangles: Vec<Triangle>) -> Self {
        let mut triangles: Vec<Triangle> = triangles.iter().map(Triangle::canonical).collect();
        triangles.sort();
        Self { surface, interior, triangles, embedding: None }
    }

    pub(crate) fn with_embedding(mut self, model: ChordModel) -> Self {
        self.embedding = Some(model);
        self
    }

    fn validate(&self) -> Result<(), SurfaceError> {
        let s = &self.surface;
        let n = self.interior;
        let m = s.marked_points();
        if s.rank() != n as i64 {
            return Err(SurfaceError::RankMismatch { expected: s.rank().max(0) as usize, got: n });
        }
        if self.triangles.len() != s.triangle_count() {
            return Err(SurfaceError::TriangleCount { expected: s.triangle_count(), got: self.triangles.len() });
        }
        let mut count = vec![0usize; n + m + 1];
        for (ti, t) in self.triangles.iter().enumerate() {
            let [a, b, c] = t.sides;
            if a == b || b == c || a == c {
                return Err(SurfaceError::RepeatedSide(ti + 1));
            }
            for e in t.sides {
                if e == 0 || e > n + m {
                    return Err(SurfaceError::EdgeOutOfRange(e));
                }
                count[e] += 1;
            }
        }
        for (e, &c) in count.iter().enumerate().skip(1) {
            let expected = if e <= n { 2 } else { 1 };
            if c != expected {
                return Err(SurfaceError::EdgeMultiplicity { edge: e, got: c, expected });
            }
        }
        // corners 3t+j; glue interior edges head to tail
        let mut uf = UnionFind::new(3 * self.triangles.len());
        let mut seen: BTreeMap<EdgeId, (usize, usize)> = BTreeMap::new();
        let mut boundary: Vec<(usize, usize)> = Vec::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            for j in 0..3 {
                let from = 3 * ti + (j + 2) % 3;
                let to = 3 * ti + j;
                let e = t.sides[j];
                if e > n {
                    boundary.push((from, to));
                } else if let Some(&(f, g)) = seen.get(&e) {
                    uf.union(f, to);
                    uf.union(g, from);
                } else {
                    seen.insert(e, (from, to));
                }
            }
        }
        let mut classes: Vec<usize> = (0..3 * self.triangles.len()).map(|c| uf.find(c)).collect();
        classes.sort();
        classes.dedup();
        if classes.len() != m {
            return Err(SurfaceError::VertexCount { expected: m, got: classes.len() });
        }
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &(f, g) in &boundary {
            let (f, g) = (uf.find(f), uf.find(g));
            if next.insert(f, g).is_some() {
                return Err(self.boundary_shape_error(vec![]));
            }
        }
        let mut lengths = Vec::new();
        let mut visited = std::collections::BTreeSet::new();
        for &start in next.keys() {
            if visited.contains(&start) {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            loop {
                if !visited.insert(v) {
                    break;
                }
                len += 1;
                match next.get(&v) {
                    Some(&w) => v = w,
                    None => return Err(self.boundary_shape_error(lengths)),
                }
            }
            if v != start {
                return Err(self.boundary_shape_error(lengths));
            }
            lengths.push(len);
        }
        lengths.sort();
        let mut expected = s.marked.clone();
        expected.sort();
        if lengths != expected || visited.len() != m {
            return Err(self.boundary_shape_error(lengths));
        }
        Ok(())
    }

    fn boundary_shape_error(&self, got: Vec<usize>) -> SurfaceError {
        let mut expected = self.surface.marked.clone();
        expected.sort();
        SurfaceError::BoundaryShape { expected, got }
    }

    pub fn surface(&self) -> &SurfaceDescriptor {
        &self.surface
    }

    /// Number of interior edges.
    pub fn rank(&self) -> usize {
        self.interior
    }

    pub fn edge_count(&self) -> usize {
        self.interior + self.surface.marked_points()
    }

    pub fn is_interior(&self, e: EdgeId) -> bool {
        (1..=self.interior).contains(&e)
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn embedding(&self) -> Option<&ChordModel> {
        self.embedding.as_ref()
    }

    /// Index of the triangle with this cyclic side sequence.
    pub fn triangle_index(&self, t: &Triangle) -> Option<usize> {
        self.triangles.binary_search(&t.canonical()).ok()
    }

    /// `(triangle index, side position)` for each occurrence of `e`.
    pub fn occurrences(&self, e: EdgeId) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (ti, t) in self.triangles.iter().enumerate() {
            if let Some(j) = t.position(e) {
                out.push((ti, j));
            }
        }
        out
    }

    /// Signed adjacency: `b[i][j]` is +1 for each triangle where `j` follows
    /// `i` counter-clockwise and -1 where it follows clockwise. Boundary
    /// edges are ignored.
    pub fn exchange_block(&self) -> Vec<Vec<i64>> {
        let n = self.interior;
        let mut b = vec![vec![0i64; n]; n];
        for t in &self.triangles {
            for j in 0..3 {
                let (a, c) = (t.sides[j], t.sides[(j + 1) % 3]);
                if a <= n && c <= n {
                    b[a - 1][c - 1] -= 1;
                    b[c - 1][a - 1] += 1;
                }
            }
        }
        b
    }

    /// Exchange block with the identity stacked below.
    pub fn b_matrix(&self) -> ExtendedMatrix {
        ExtendedMatrix::principal(&self.exchange_block()).expect("square block")
    }

    /// Replaces interior edge `k` by the other diagonal of its quadrilateral.
    /// The new diagonal keeps the id `k`.
    pub fn flip(&self, k: EdgeId) -> Result<Self, SurfaceError> {
        if !self.is_interior(k) {
            return Err(SurfaceError::BoundaryFlip(k));
        }
        let occ = self.occurrences(k);
        let (t0, t1) = (occ[0].0, occ[1].0);
        let [_, a, b] = self.triangles[t0].starting_at(k);
        let [_, c, d] = self.triangles[t1].starting_at(k);
        let mut triangles: Vec<Triangle> = self
            .triangles
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != t0 && *i != t1)
            .map(|(_, t)| *t)
            .collect();
        triangles.push(Triangle::new([b, c, k]));
        triangles.push(Triangle::new([d, a, k]));
        let mut out = Self::unchecked(self.surface.clone(), self.interior, triangles);
        if let Some(model) = &self.embedding {
            out.embedding = Some(model.flip(k)?);
        }
        Ok(out)
    }

    /// Applies flips left to right.
    pub fn flip_sequence(&self, ks: &[EdgeId]) -> Result<Self, SurfaceError> {
        ks.iter().try_fold(self.clone(), |t, &k| t.flip(k))
    }

    /// Text block in the surface file format, without a trailing arc line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("cck/1\n");
        let counts: Vec<String> = self.surface.marked.iter().map(usize::to_string).collect();
        out += &format!(
            "surface {} {} {}\n",
            self.surface.genus,
            self.surface.boundary_components(),
            counts.join(" ")
        );
        out += &format!("edges {} {}\n", self.interior, self.surface.marked_points());
        for t in &self.triangles {
            out += &format!("{t}\n");
        }
        out
    }
}

/// Convex `m`-gon with vertices `1..=m` counter-clockwise and the given diagonals.
/// Diagonal `i` gets id `i + 1`; boundary edge `(i, i+1)` gets id `n + i`.
pub fn build_polygon(m: usize, diagonals: &[(usize, usize)]) -> Result<Triangulation, SurfaceError> {
    let model = ChordModel::polygon(m, diagonals)?;
    model.triangulation()
}

/// Annulus with `p` outer and `q` inner marked points; arcs are
/// `(a, b, winding)` triples as in [`ChordModel::annulus`].
pub fn build_annulus(p: usize, q: usize, arcs: &[(usize, usize, i64)]) -> Result<Triangulation, SurfaceError> {
    let model = ChordModel::annulus(p, q, arcs)?;
    model.triangulation()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a() -> Triangulation {
        build_polygon(8, &[(2, 4), (4, 6), (2, 6), (2, 8), (6, 8)]).unwrap()
    }

    #[test]
    fn octagon_counts() {
        let t = example_a();
        assert_eq!(t.rank(), 5);
        assert_eq!(t.triangles().len(), 6);
        assert_eq!(t.surface().rank(), 5);
    }

    #[test]
    fn octagon_exchange_block() {
        let b = example_a().exchange_block();
        let expected = vec![
            vec![0, 1, -1, 0, 0],
            vec![-1, 0, 1, 0, 0],
            vec![1, -1, 0, -1, 1],
            vec![0, 0, 1, 0, -1],
            vec![0, 0, -1, 1, 0],
        ];
        assert_eq!(b, expected);
    }

    #[test]
    fn square_with_one_diagonal() {
        let t = build_polygon(4, &[(1, 3)]).unwrap();
        assert_eq!(t.triangles().len(), 2);
        assert_eq!(t.exchange_block(), vec![vec![0]]);
        assert_eq!(t.b_matrix().rows(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn flip_twice_is_identity() {
        let t = example_a();
        for k in 1..=5 {
            assert_eq!(t.flip(k).unwrap().flip(k).unwrap(), t);
        }
        assert_eq!(t.flip(6), Err(SurfaceError::BoundaryFlip(6)));
    }

    #[test]
    fn flip_matches_rebuilt_polygon() {
        // flipping (2,6) in the octagon gives diagonal (4,8)
        let t = example_a().flip(3).unwrap();
        let rebuilt = build_polygon(8, &[(2, 4), (4, 6), (4, 8), (2, 8), (6, 8)]).unwrap();
        assert_eq!(t.triangles(), rebuilt.triangles());
        assert_eq!(t.embedding(), rebuilt.embedding());
    }

    #[test]
    fn rejects_bad_complexes() {
        let s = SurfaceDescriptor::polygon(4).unwrap();
        assert!(matches!(
            Triangulation::new(s.clone(), 1, vec![Triangle::new([1, 2, 3])]),
            Err(SurfaceError::TriangleCount { .. })
        ));
        assert!(matches!(
            Triangulation::new(s.clone(), 1, vec![Triangle::new([1, 2, 2]), Triangle::new([1, 4, 5])]),
            Err(SurfaceError::RepeatedSide(_))
        ));
        assert!(matches!(
            Triangulation::new(s.clone(), 1, vec![Triangle::new([1, 2, 3]), Triangle::new([1, 4, 9])]),
            Err(SurfaceError::EdgeOutOfRange(9))
        ));
        assert!(matches!(
            Triangulation::new(s.clone(), 1, vec![Triangle::new([1, 2, 3]), Triangle::new([2, 4, 5])]),
            Err(SurfaceError::EdgeMultiplicity { .. })
        ));
        assert!(SurfaceDescriptor::new(0, vec![]).is_err());
        assert!(SurfaceDescriptor::new(0, vec![3]).is_err());
        assert!(SurfaceDescriptor::new(0, vec![2, 0]).is_err());
    }

    #[test]
    fn annulus_one_one_has_double_arrow() {
        let t = build_annulus(1, 1, &[(1, 2, 0), (1, 2, 1)]).unwrap();
        assert_eq!(t.triangles().len(), 2);
        let b = t.exchange_block();
        assert!(b.iter().flatten().any(|v| v.abs() == 2), "{b:?}");
    }

    #[test]
    fn fan_triangle_counts() {
        for m in 4..=10 {
            let diags: Vec<(usize, usize)> = (3..m).map(|j| (1, j)).collect();
            let t = build_polygon(m, &diags).unwrap();
            let s = t.surface();
            assert_eq!(t.triangles().len() as i64, s.rank() - 2 * (0 - 1) - 1);
        }
    }

    #[test]
    fn torus_with_one_hole() {
        // brute force over side assignments: some must glue to a one-holed torus
        let s = SurfaceDescriptor::new(1, vec![1]).unwrap();
        assert_eq!(s.rank(), 4);
        assert_eq!(s.triangle_count(), 3);
        let slots = [1, 1, 2, 2, 3, 3, 4, 4, 5];
        let mut found = 0;
        let mut perm = slots.to_vec();
        permute(&mut perm, 0, &mut |p| {
            let tris = vec![
                Triangle::new([p[0], p[1], p[2]]),
                Triangle::new([p[3], p[4], p[5]]),
                Triangle::new([p[6], p[7], p[8]]),
            ];
            if let Ok(t) = Triangulation::new(s.clone(), 4, tris) {
                found += 1;
                let b = t.exchange_block();
                assert!((0..4).all(|i| (0..4).all(|j| b[i][j] == -b[j][i])));
            }
        });
        assert!(found > 0);
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        let mut used = std::collections::BTreeSet::new();
        for i in k..v.len() {
            if used.insert(v[i]) {
                v.swap(k, i);
                permute(v, k + 1, f);
                v.swap(k, i);
            }
        }
    }
}
