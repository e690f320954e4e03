//! Chord model of polygons and annuli in their universal cover.
//!
//! The cover of a polygon is itself; the cover of an annulus is an infinite
//! strip whose two boundary lines carry the lifted marked points `O_k`
//! (outer) and `I_k` (inner). Going counter-clockwise around the cover, the
//! outer points appear with increasing `k` and the inner points with
//! decreasing `k`, so a single linear key orders every lifted point and two
//! chords cross exactly when their endpoints interleave.
//!
//! The deck transformation moves every `O_k` to `O_{k+p}` and every `I_k` to
//! `I_{k+q}` at once. An edge of the triangulation is an orbit of chords and
//! is stored by a canonical representative.

use std::collections::{BTreeMap, BTreeSet};

use super::{EdgeId, SurfaceDescriptor, SurfaceError, Triangle, Triangulation};

/// A marked point of the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftedPoint {
    pub inner: bool,
    pub index: i64,
}

impl LiftedPoint {
    pub fn outer(index: i64) -> Self {
        Self { inner: false, index }
    }

    pub fn inner(index: i64) -> Self {
        Self { inner: true, index }
    }

    /// Position in the counter-clockwise order around the cover.
    pub fn key(&self) -> (u8, i64) {
        if self.inner { (1, -self.index) } else { (0, self.index) }
    }
}

/// Unordered pair of lifted points, stored in key order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord(pub LiftedPoint, pub LiftedPoint);

impl Chord {
    pub fn new(a: LiftedPoint, b: LiftedPoint) -> Self {
        if a.key() <= b.key() { Self(a, b) } else { Self(b, a) }
    }

    pub fn has_endpoint(&self, v: LiftedPoint) -> bool {
        self.0 == v || self.1 == v
    }

    /// Strictly between the endpoints in key order.
    pub fn separates(&self, v: LiftedPoint) -> bool {
        self.0.key() < v.key() && v.key() < self.1.key()
    }

    /// Interior intersection: four distinct endpoints that interleave.
    pub fn crosses(&self, other: &Chord) -> bool {
        let distinct = !self.has_endpoint(other.0) && !self.has_endpoint(other.1);
        distinct && (self.separates(other.0) != self.separates(other.1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverKind {
    Polygon { m: usize },
    Annulus { p: usize, q: usize },
}

/// Triangulation embedded in the cover: one canonical chord per edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordModel {
    kind: CoverKind,
    interior: usize,
    edges: Vec<Chord>,
    index: BTreeMap<Chord, EdgeId>,
}

impl ChordModel {
    /// `m`-gon, vertices `1..=m` counter-clockwise.
    pub fn polygon(m: usize, diagonals: &[(usize, usize)]) -> Result<Self, SurfaceError> {
        if m < 4 {
            return Err(SurfaceError::PolygonTooSmall(m));
        }
        let kind = CoverKind::Polygon { m };
        let mut chords = Vec::with_capacity(diagonals.len());
        for &(a, b) in diagonals {
            let c = polygon_chord(m, a, b)?;
            if polygon_boundary_index(m, &c).is_some() {
                return Err(SurfaceError::InvalidChord(format!("({a}, {b}) is a boundary edge")));
            }
            chords.push(c);
        }
        let boundary: Vec<Chord> = (0..m as i64)
            .map(|i| Chord::new(LiftedPoint::outer(i), LiftedPoint::outer((i + 1) % m as i64)))
            .collect();
        Self::assemble(kind, chords, boundary)
    }

    /// Annulus with `p` outer points labelled `1..=p` and `q` inner points
    /// labelled `p+1..=p+q`. An arc `(a, b, w)` joins the base lift of `a` to
    /// the lift of `b` moved by `w` deck transformations.
    pub fn annulus(p: usize, q: usize, arcs: &[(usize, usize, i64)]) -> Result<Self, SurfaceError> {
        if p == 0 || q == 0 {
            return Err(SurfaceError::AnnulusEmptyBoundary);
        }
        let kind = CoverKind::Annulus { p, q };
        let mut chords = Vec::with_capacity(arcs.len());
        for &(a, b, w) in arcs {
            let c = annulus_chord(p, q, a, b, w)?;
            if peripheral_offset(p, q, &c) == Some(1) {
                return Err(SurfaceError::InvalidChord(format!("({a}, {b}, {w}) is a boundary edge")));
            }
            chords.push(c);
        }
        let mut boundary = Vec::with_capacity(p + q);
        for i in 1..=p as i64 {
            boundary.push(Chord::new(LiftedPoint::outer(i - 1), LiftedPoint::outer(i)));
        }
        for j in 1..=q as i64 {
            boundary.push(Chord::new(LiftedPoint::inner(j - 1), LiftedPoint::inner(j)));
        }
        Self::assemble(kind, chords, boundary)
    }

    fn assemble(kind: CoverKind, interior: Vec<Chord>, boundary: Vec<Chord>) -> Result<Self, SurfaceError> {
        let mut model = Self { kind, interior: interior.len(), edges: Vec::new(), index: BTreeMap::new() };
        let mut edges: Vec<Chord> = interior.iter().map(|c| model.canonical(*c)).collect();
        edges.extend(boundary.iter().map(|c| model.canonical(*c)));
        for (i, &c) in edges.iter().enumerate() {
            if model.index.insert(c, i + 1).is_some() {
                return Err(SurfaceError::DuplicateChord(c));
            }
        }
        model.edges = edges;
        for i in 0..model.interior {
            for j in i..model.interior {
                if let Some((a, b)) = model.crossing_lift(&model.edges[i], &model.edges[j]) {
                    return Err(SurfaceError::Crossing(a, b));
                }
            }
        }
        let expected = model.descriptor()?.rank() as usize;
        if model.interior != expected {
            return Err(SurfaceError::RankMismatch { expected, got: model.interior });
        }
        Ok(model)
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.interior
    }

    pub fn descriptor(&self) -> Result<SurfaceDescriptor, SurfaceError> {
        match self.kind {
            CoverKind::Polygon { m } => SurfaceDescriptor::polygon(m),
            CoverKind::Annulus { p, q } => SurfaceDescriptor::annulus(p, q),
        }
    }

    /// Canonical chord of edge `e`.
    pub fn chord(&self, e: EdgeId) -> Chord {
        self.edges[e - 1]
    }

    pub fn chords(&self) -> &[Chord] {
        &self.edges
    }

    /// Edge whose orbit contains `c`, if any.
    pub fn edge_of(&self, c: &Chord) -> Option<EdgeId> {
        self.index.get(&self.canonical(*c)).copied()
    }

    fn period(&self, inner: bool) -> Option<i64> {
        match self.kind {
            CoverKind::Polygon { .. } => None,
            CoverKind::Annulus { p, q } => Some(if inner { q as i64 } else { p as i64 }),
        }
    }

    pub fn shift(&self, v: LiftedPoint, s: i64) -> LiftedPoint {
        match self.period(v.inner) {
            None => v,
            Some(per) => LiftedPoint { inner: v.inner, index: v.index + s * per },
        }
    }

    fn shift_chord(&self, c: &Chord, s: i64) -> Chord {
        Chord::new(self.shift(c.0, s), self.shift(c.1, s))
    }

    /// Deck shift taking a point set to its fundamental-domain representative.
    fn normalizing_shift(&self, pts: &[LiftedPoint]) -> i64 {
        if let CoverKind::Polygon { .. } = self.kind {
            return 0;
        }
        let pick = |inner: bool| pts.iter().filter(|v| v.inner == inner).map(|v| v.index).min();
        match pick(false) {
            Some(i) => -i.div_euclid(self.period(false).unwrap()),
            None => -pick(true).unwrap().div_euclid(self.period(true).unwrap()),
        }
    }

    pub fn canonical(&self, c: Chord) -> Chord {
        let s = self.normalizing_shift(&[c.0, c.1]);
        self.shift_chord(&c, s)
    }

    fn canonical_triple(&self, t: [LiftedPoint; 3]) -> [LiftedPoint; 3] {
        let s = self.normalizing_shift(&t);
        let mut out = t.map(|v| self.shift(v, s));
        out.sort_by_key(LiftedPoint::key);
        out
    }

    /// A pair of crossing lifts of `a` and `b`, if the edges cross anywhere.
    fn crossing_lift(&self, a: &Chord, b: &Chord) -> Option<(Chord, Chord)> {
        let reach = match self.kind {
            CoverKind::Polygon { .. } => 0,
            CoverKind::Annulus { .. } => self.reach(a) + self.reach(b) + 2,
        };
        (-reach..=reach).map(|s| self.shift_chord(b, s)).find(|bs| a.crosses(bs)).map(|bs| (*a, bs))
    }

    /// Number of fundamental domains a chord spans, rounded up.
    fn reach(&self, c: &Chord) -> i64 {
        let (p, q) = (self.period(false).unwrap_or(1), self.period(true).unwrap_or(1));
        let span = |v: LiftedPoint| if v.inner { v.index.div_euclid(q) } else { v.index.div_euclid(p) };
        (span(c.0) - span(c.1)).abs() + 1
    }

    /// Lifted edges at `v`, as `(other endpoint, edge id)`.
    pub fn incident(&self, v: LiftedPoint) -> Vec<(LiftedPoint, EdgeId)> {
        let mut out = BTreeSet::new();
        for (i, c) in self.edges.iter().enumerate() {
            for (end, other) in [(c.0, c.1), (c.1, c.0)] {
                if end.inner != v.inner {
                    continue;
                }
                match self.period(v.inner) {
                    None if end == v => {
                        out.insert((other, i + 1));
                    }
                    Some(per) if (v.index - end.index).rem_euclid(per) == 0 => {
                        let s = (v.index - end.index) / per;
                        out.insert((self.shift(other, s), i + 1));
                    }
                    _ => {}
                }
            }
        }
        out.into_iter().collect()
    }

    /// Third vertices of the triangles on either side of the lifted edge `c`:
    /// `(inside, outside)` where inside lies between the endpoints in key order.
    pub fn apexes(&self, c: &Chord) -> Result<(Option<LiftedPoint>, Option<LiftedPoint>), SurfaceError> {
        let left: BTreeSet<LiftedPoint> = self.incident(c.0).into_iter().map(|(w, _)| w).collect();
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for (w, _) in self.incident(c.1) {
            if w != c.0 && w != c.1 && left.contains(&w) {
                if c.separates(w) { inside.push(w) } else { outside.push(w) }
            }
        }
        inside.dedup();
        outside.dedup();
        if inside.len() > 1 || outside.len() > 1 {
            return Err(SurfaceError::NotTriangulated(*c));
        }
        Ok((inside.first().copied(), outside.first().copied()))
    }

    /// Sides and corners of the lifted triangle on three points, in the
    /// clockwise cyclic order: side `j` runs from corner `j-1` to corner `j`.
    pub fn oriented_triangle(&self, pts: [LiftedPoint; 3]) -> Result<([EdgeId; 3], [LiftedPoint; 3]), SurfaceError> {
        let mut v = pts;
        v.sort_by_key(LiftedPoint::key);
        let [x, y, z] = v;
        let edge = |a: LiftedPoint, b: LiftedPoint| {
            let c = Chord::new(a, b);
            self.edge_of(&c).ok_or(SurfaceError::NotTriangulated(c))
        };
        Ok(([edge(z, y)?, edge(y, x)?, edge(x, z)?], [y, x, z]))
    }

    /// All triangles, as abstract oriented edge triples.
    pub fn triangles(&self) -> Result<Vec<Triangle>, SurfaceError> {
        let mut seen = BTreeSet::new();
        for c in &self.edges[..self.interior] {
            let (a, b) = self.apexes(c)?;
            for w in [a, b] {
                let w = w.ok_or(SurfaceError::NotTriangulated(*c))?;
                seen.insert(self.canonical_triple([c.0, c.1, w]));
            }
        }
        seen.into_iter().map(|t| self.oriented_triangle(t).map(|(s, _)| Triangle::new(s))).collect()
    }

    pub fn triangulation(&self) -> Result<Triangulation, SurfaceError> {
        let t = Triangulation::new(self.descriptor()?, self.interior, self.triangles()?)?;
        Ok(t.with_embedding(self.clone()))
    }

    /// The model with interior edge `k` replaced by the other diagonal.
    pub fn flip(&self, k: EdgeId) -> Result<Self, SurfaceError> {
        if k == 0 || k > self.interior {
            return Err(SurfaceError::BoundaryFlip(k));
        }
        let c = self.edges[k - 1];
        let (a, b) = self.apexes(&c)?;
        let (a, b) = (a.ok_or(SurfaceError::NotTriangulated(c))?, b.ok_or(SurfaceError::NotTriangulated(c))?);
        let mut out = self.clone();
        let new = self.canonical(Chord::new(a, b));
        out.index.remove(&c);
        if out.index.insert(new, k).is_some() {
            return Err(SurfaceError::DuplicateChord(new));
        }
        out.edges[k - 1] = new;
        Ok(out)
    }

    /// Lift of the polygon chord between vertices `a` and `b`.
    pub fn polygon_arc(&self, a: usize, b: usize) -> Result<Chord, SurfaceError> {
        match self.kind {
            CoverKind::Polygon { m } => polygon_chord(m, a, b),
            CoverKind::Annulus { .. } => Err(SurfaceError::InvalidChord("chord given on an annulus".into())),
        }
    }

    /// Lift of the annulus arc `(a, b, w)`.
    pub fn annulus_arc(&self, a: usize, b: usize, w: i64) -> Result<Chord, SurfaceError> {
        match self.kind {
            CoverKind::Annulus { p, q } => annulus_chord(p, q, a, b, w),
            CoverKind::Polygon { .. } => Err(SurfaceError::InvalidChord("annular arc given on a polygon".into())),
        }
    }

    /// Number of lifted edges that a lift of `gamma` crosses.
    pub fn crossing_count(&self, gamma: &Chord) -> usize {
        let mut count = 0;
        for e in &self.edges[..self.interior] {
            let reach = match self.kind {
                CoverKind::Polygon { .. } => 0,
                CoverKind::Annulus { .. } => self.reach(e) + self.reach(gamma) + 2,
            };
            count += (-reach..=reach).filter(|&s| gamma.crosses(&self.shift_chord(e, s))).count();
        }
        count
    }
}

fn polygon_chord(m: usize, a: usize, b: usize) -> Result<Chord, SurfaceError> {
    if a == 0 || b == 0 || a > m || b > m || a == b {
        return Err(SurfaceError::InvalidChord(format!("({a}, {b}) in a {m}-gon")));
    }
    Ok(Chord::new(LiftedPoint::outer(a as i64 - 1), LiftedPoint::outer(b as i64 - 1)))
}

fn polygon_boundary_index(m: usize, c: &Chord) -> Option<usize> {
    let (a, b) = (c.0.index, c.1.index);
    if b - a == 1 {
        Some(a as usize)
    } else if a == 0 && b == m as i64 - 1 {
        Some(m - 1)
    } else {
        None
    }
}

pub fn base_point(p: usize, q: usize, label: usize) -> Option<LiftedPoint> {
    if (1..=p).contains(&label) {
        Some(LiftedPoint::outer(label as i64 - 1))
    } else if (p + 1..=p + q).contains(&label) {
        Some(LiftedPoint::inner((label - p) as i64 - 1))
    } else {
        None
    }
}

/// `|i - j|` for a chord with both ends on one boundary line.
fn peripheral_offset(_p: usize, _q: usize, c: &Chord) -> Option<i64> {
    (c.0.inner == c.1.inner).then(|| (c.0.index - c.1.index).abs())
}

fn annulus_chord(p: usize, q: usize, a: usize, b: usize, w: i64) -> Result<Chord, SurfaceError> {
    let bad = |why: &str| SurfaceError::InvalidChord(format!("({a}, {b}, {w}): {why}"));
    let pa = base_point(p, q, a).ok_or_else(|| bad("unknown marked point"))?;
    let pb = base_point(p, q, b).ok_or_else(|| bad("unknown marked point"))?;
    let per = |inner: bool| if inner { q as i64 } else { p as i64 };
    let pb = LiftedPoint { inner: pb.inner, index: pb.index + w * per(pb.inner) };
    let c = Chord::new(pa, pb);
    if let Some(off) = peripheral_offset(p, q, &c) {
        if off == 0 {
            return Err(bad("contractible"));
        }
        if off > per(pa.inner) {
            return Err(bad("self-crossing"));
        }
    }
    Ok(c)
}

/// True when the annulus chord `(a, b, w)` is an arc (not a boundary edge).
pub fn annulus_arc_is_valid(p: usize, q: usize, a: usize, b: usize, w: i64) -> bool {
    match annulus_chord(p, q, a, b, w) {
        Ok(c) => peripheral_offset(p, q, &c) != Some(1),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_rule() {
        let c = |a, b| Chord::new(LiftedPoint::outer(a), LiftedPoint::outer(b));
        assert!(c(0, 2).crosses(&c(1, 3)));
        assert!(!c(0, 2).crosses(&c(2, 4)));
        assert!(!c(0, 4).crosses(&c(1, 3)));
        assert!(!c(0, 2).crosses(&c(0, 2)));
    }

    #[test]
    fn polygon_rejects_crossing_and_incomplete() {
        assert!(matches!(ChordModel::polygon(6, &[(1, 4), (2, 5), (1, 3)]), Err(SurfaceError::Crossing(..))));
        assert!(matches!(ChordModel::polygon(6, &[(1, 4), (1, 3)]), Err(SurfaceError::RankMismatch { .. })));
        assert!(matches!(ChordModel::polygon(5, &[(1, 2), (1, 3)]), Err(SurfaceError::InvalidChord(_))));
        assert!(matches!(ChordModel::polygon(5, &[(1, 3), (3, 1)]), Err(SurfaceError::DuplicateChord(_))));
        assert!(ChordModel::polygon(3, &[]).is_err());
    }

    #[test]
    fn annulus_example_lifts() {
        let m = ChordModel::annulus(2, 2, &[(1, 3, 0), (1, 4, -1), (2, 4, 0), (2, 3, 0)]).unwrap();
        assert_eq!(m.chord(1), Chord::new(LiftedPoint::outer(0), LiftedPoint::inner(0)));
        let gamma = m.annulus_arc(2, 4, -2).unwrap();
        assert_eq!(gamma, Chord::new(LiftedPoint::outer(1), LiftedPoint::inner(-3)));
        assert_eq!(m.crossing_count(&gamma), 5);
        assert_eq!(m.triangles().unwrap().len(), 4);
    }

    #[test]
    fn annulus_arc_validity() {
        assert!(annulus_arc_is_valid(2, 2, 1, 1, 1));
        assert!(!annulus_arc_is_valid(2, 2, 1, 2, 0));
        assert!(!annulus_arc_is_valid(2, 2, 1, 1, 0));
        assert!(!annulus_arc_is_valid(2, 2, 1, 2, 1));
        assert!(annulus_arc_is_valid(3, 1, 1, 3, 0));
        assert!(annulus_arc_is_valid(1, 1, 1, 2, 7));
        assert!(!annulus_arc_is_valid(1, 1, 1, 1, 1));
    }

    #[test]
    fn annulus_rejects_self_crossing_family() {
        // two bridging arcs from the same point winding apart by two cross
        assert!(matches!(ChordModel::annulus(1, 1, &[(1, 2, 0), (1, 2, 2)]), Err(SurfaceError::Crossing(..))));
    }
}
