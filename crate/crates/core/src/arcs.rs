//! Arcs, crossing bands and complete paths.
//!
//! The crossing band of an arc is the strip of triangles it passes through,
//! lifted so that every triangle has three distinct corners. Corners get
//! band-local vertex ids; the start of the arc is the corner of the first
//! triangle opposite the first crossed edge, the end is the corner of the
//! last triangle opposite the last crossed edge.
//!
//! A complete path has `2d + 1` steps. Step `2k` runs along the `k`-th
//! crossed edge in one of its two directions. Step `2k + 1` joins the end of
//! step `2k` to the start of step `2k + 2` inside the `k`-th triangle, so the
//! only constraint on the even steps is that those two vertices differ.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::surface::{base_point, Chord, ChordModel, CoverKind, EdgeId, LiftedPoint, SurfaceError, Triangle, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("bad arc spec {0:?}")]
    Parse(String),
    #[error("arc is the boundary edge {0}")]
    BoundaryArc(EdgeId),
    #[error("arcs given by endpoints need a polygon or annulus triangulation")]
    NeedsEmbedding,
    #[error("invalid band: {0}")]
    InvalidBand(String),
    #[error("crossing index {k} out of range 1..={d}")]
    IndexOutOfRange { k: usize, d: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Crossed edges and the 1-based indices of the triangles between them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BandSpec {
    pub crossed: Vec<EdgeId>,
    pub triangles: Vec<usize>,
}

/// An arc up to isotopy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Arc {
    /// Polygon diagonal between two vertices.
    Chord { a: usize, b: usize },
    /// Annulus arc from `a` to `b`, moved `winding` times around the core.
    Annular { a: usize, b: usize, winding: i64 },
    /// Band given explicitly, for surfaces without an embedding.
    Band(BandSpec),
    /// An edge of the triangulation itself.
    Edge(EdgeId),
}

impl Arc {
    /// Same arc traversed the other way.
    pub fn reversed(&self) -> Self {
        match self {
            Arc::Chord { a, b } => Arc::Chord { a: *b, b: *a },
            Arc::Annular { a, b, winding } => Arc::Annular { a: *b, b: *a, winding: -winding },
            Arc::Band(s) => Arc::Band(BandSpec {
                crossed: s.crossed.iter().rev().copied().collect(),
                triangles: s.triangles.iter().rev().copied().collect(),
            }),
            Arc::Edge(e) => Arc::Edge(*e),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        match self {
            Arc::Chord { a, b } => write!(f, "chord {a} {b}"),
            Arc::Annular { a, b, winding } => write!(f, "annarc {a} {b} {winding}"),
            Arc::Band(s) => write!(f, "band {} {} / {}", s.crossed.len(), join(&s.crossed), join(&s.triangles)),
            Arc::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

impl FromStr for Arc {
    type Err = ArcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ArcError::Parse(s.to_string());
        let toks: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| err());
        match toks.as_slice() {
            ["chord", a, b] => Ok(Arc::Chord { a: num(a)?, b: num(b)? }),
            ["annarc", a, b, w] => Ok(Arc::Annular { a: num(a)?, b: num(b)?, winding: w.parse().map_err(|_| err())? }),
            ["edge", e] => Ok(Arc::Edge(num(e)?)),
            ["band", d, rest @ ..] => {
                let d = num(d)?;
                let slash = rest.iter().position(|&t| t == "/").ok_or_else(err)?;
                let crossed = rest[..slash].iter().map(|t| num(t)).collect::<Result<Vec<_>, _>>()?;
                let triangles = rest[slash + 1..].iter().map(|t| num(t)).collect::<Result<Vec<_>, _>>()?;
                if crossed.len() != d || triangles.len() != d + 1 {
                    return Err(err());
                }
                Ok(Arc::Band(BandSpec { crossed, triangles }))
            }
            _ => Err(err()),
        }
    }
}

/// One triangle of a band: its index in the triangulation, its sides in
/// clockwise order and its band-local corners (side `j` runs from corner
/// `j-1` to corner `j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BandTriangle {
    pub triangle: usize,
    pub sides: [EdgeId; 3],
    pub corners: [usize; 3],
}

impl BandTriangle {
    fn position(&self, e: EdgeId) -> usize {
        self.sides.iter().position(|&s| s == e).expect("side of band triangle")
    }

    /// `(from, to)` of side `j` in the triangle's orientation.
    fn side_ends(&self, j: usize) -> (usize, usize) {
        (self.corners[(j + 2) % 3], self.corners[j])
    }

    /// The side joining two distinct corners, and whether `a -> b` follows
    /// the triangle's orientation.
    fn side_between(&self, a: usize, b: usize) -> Option<(EdgeId, bool)> {
        (0..3).find_map(|j| {
            let (f, t) = self.side_ends(j);
            if (f, t) == (a, b) {
                Some((self.sides[j], true))
            } else if (f, t) == (b, a) {
                Some((self.sides[j], false))
            } else {
                None
            }
        })
    }
}

/// The strip of triangles crossed by an arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingBand {
    rank: usize,
    own_edge: Option<EdgeId>,
    crossed: Vec<EdgeId>,
    triangles: Vec<BandTriangle>,
    start: usize,
    end: usize,
}

impl CrossingBand {
    fn on_edge(rank: usize, e: EdgeId) -> Self {
        Self { rank, own_edge: Some(e), crossed: Vec::new(), triangles: Vec::new(), start: 0, end: 1 }
    }

    /// Builds a band from triangles whose corners carry arbitrary labels,
    /// renumbering the labels in order of first appearance.
    fn relabel<L: Ord + Copy>(
        rank: usize,
        crossed: Vec<EdgeId>,
        raw: Vec<(usize, [EdgeId; 3], [L; 3])>,
        start: L,
        end: L,
    ) -> Self {
        let mut ids: BTreeMap<L, usize> = BTreeMap::new();
        let mut id = |l: L| {
            let next = ids.len();
            *ids.entry(l).or_insert(next)
        };
        let triangles = raw
            .into_iter()
            .map(|(triangle, sides, c)| {
                let r = (0..3).min_by_key(|&i| sides[i]).expect("three sides");
                let sides = [sides[r], sides[(r + 1) % 3], sides[(r + 2) % 3]];
                let c = [c[r], c[(r + 1) % 3], c[(r + 2) % 3]];
                BandTriangle { triangle, sides, corners: [id(c[0]), id(c[1]), id(c[2])] }
            })
            .collect();
        let (start, end) = (id(start), id(end));
        Self { rank, own_edge: None, crossed, triangles, start, end }
    }

    /// Number of crossings `d`.
    pub fn d(&self) -> usize {
        self.crossed.len()
    }

    /// Interior edge count of the ambient triangulation.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The arc's own edge when it belongs to the triangulation.
    pub fn own_edge(&self) -> Option<EdgeId> {
        self.own_edge
    }

    pub fn crossed(&self) -> &[EdgeId] {
        &self.crossed
    }

    pub fn triangles(&self) -> &[BandTriangle] {
        &self.triangles
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    fn check_index(&self, k: usize) -> Result<(), ArcError> {
        if k == 0 || k > self.d() {
            return Err(ArcError::IndexOutOfRange { k, d: self.d() });
        }
        Ok(())
    }

    /// `(s_k, t_k)`: the `k`-th crossed edge runs from `s_k` to `t_k`
    /// against the orientation of the triangle the arc enters.
    pub fn endpoints(&self, k: usize) -> Result<(usize, usize), ArcError> {
        self.check_index(k)?;
        let tri = &self.triangles[k];
        let (from, to) = tri.side_ends(tri.position(self.crossed[k - 1]));
        Ok((to, from))
    }

    /// Third sides `[g_{-1}], [g_0], [g_1], ..., [g_d], [g_{d+1}]`
    /// (length `d + 3`). Empty when `d = 0`.
    pub fn third_sides(&self) -> Vec<EdgeId> {
        let d = self.d();
        if d == 0 {
            return Vec::new();
        }
        let first = &self.triangles[0];
        let j = first.position(self.crossed[0]);
        let mut out = vec![first.sides[(j + 2) % 3], first.sides[(j + 1) % 3]];
        for k in 1..d {
            let t = &self.triangles[k];
            let third = t.sides.iter().find(|&&s| s != self.crossed[k - 1] && s != self.crossed[k]);
            out.push(*third.expect("third side"));
        }
        let last = &self.triangles[d];
        let j = last.position(self.crossed[d - 1]);
        out.push(last.sides[(j + 1) % 3]);
        out.push(last.sides[(j + 2) % 3]);
        out
    }

    /// The same band traversed from the other end.
    pub fn reversed(&self) -> Self {
        Self {
            rank: self.rank,
            own_edge: self.own_edge,
            crossed: self.crossed.iter().rev().copied().collect(),
            triangles: self.triangles.iter().rev().copied().collect(),
            start: self.end,
            end: self.start,
        }
    }

    /// Explicit spec reproducing this band.
    pub fn to_spec(&self) -> Arc {
        match self.own_edge {
            Some(e) => Arc::Edge(e),
            None => Arc::Band(BandSpec {
                crossed: self.crossed.clone(),
                triangles: self.triangles.iter().map(|t| t.triangle + 1).collect(),
            }),
        }
    }

    /// Checks the adjacency and endpoint invariants.
    pub fn validate(&self) -> Result<(), ArcError> {
        let bad = |m: String| Err(ArcError::InvalidBand(m));
        if self.d() == 0 {
            return match self.own_edge {
                Some(_) => Ok(()),
                None => bad("empty band without an edge".into()),
            };
        }
        if self.triangles.len() != self.d() + 1 {
            return bad(format!("{} triangles for {} crossings", self.triangles.len(), self.d()));
        }
        for (k, &e) in self.crossed.iter().enumerate() {
            let (a, b) = (&self.triangles[k], &self.triangles[k + 1]);
            if !a.sides.contains(&e) || !b.sides.contains(&e) {
                return bad(format!("crossing {} is not shared by its triangles", k + 1));
            }
            let (f, t) = a.side_ends(a.position(e));
            if b.side_ends(b.position(e)) != (t, f) {
                return bad(format!("crossing {} is glued with the wrong orientation", k + 1));
            }
        }
        for k in 1..self.d() {
            let (s, t) = self.endpoints(k)?;
            let (s2, t2) = self.endpoints(k + 1)?;
            if s != s2 && t != t2 {
                return bad(format!("crossings {k} and {} share no endpoint", k + 1));
            }
        }
        Ok(())
    }
}

/// Computes the band of `gamma` in `t`.
pub fn crossing_band(t: &Triangulation, gamma: &Arc) -> Result<CrossingBand, ArcError> {
    let n = t.rank();
    match gamma {
        Arc::Edge(e) => {
            if t.is_interior(*e) {
                Ok(CrossingBand::on_edge(n, *e))
            } else if *e > n && *e <= t.edge_count() {
                Err(ArcError::BoundaryArc(*e))
            } else {
                Err(ArcError::Surface(SurfaceError::EdgeOutOfRange(*e)))
            }
        }
        Arc::Chord { a, b } => {
            let model = t.embedding().ok_or(ArcError::NeedsEmbedding)?;
            let c = model.polygon_arc(*a, *b)?;
            walk(t, model, c, LiftedPoint::outer(*a as i64 - 1))
        }
        Arc::Annular { a, b, winding } => {
            let model = t.embedding().ok_or(ArcError::NeedsEmbedding)?;
            let c = model.annulus_arc(*a, *b, *winding)?;
            let CoverKind::Annulus { p, q } = model.kind() else {
                return Err(ArcError::Surface(SurfaceError::InvalidChord("annular arc given on a polygon".into())));
            };
            let from = base_point(p, q, *a).expect("validated by annulus_arc");
            walk(t, model, c, from)
        }
        Arc::Band(spec) => explicit_band(t, spec),
    }
}

/// Walks the lifted arc from one end to the other.
fn walk(t: &Triangulation, model: &ChordModel, c: Chord, from: LiftedPoint) -> Result<CrossingBand, ArcError> {
    let n = t.rank();
    if let Some(e) = model.edge_of(&c) {
        return if e > n { Err(ArcError::BoundaryArc(e)) } else { Ok(CrossingBand::on_edge(n, e)) };
    }
    let (p, q) = if from == c.0 { (c.0, c.1) } else { (c.1, c.0) };
    let gamma = Chord::new(p, q);
    let mut first = None;
    'search: for (w, _) in model.incident(p) {
        let (x, y) = model.apexes(&Chord::new(p, w))?;
        for apex in [x, y].into_iter().flatten() {
            let opposite = Chord::new(w, apex);
            if opposite.crosses(&gamma) {
                first = Some((opposite, p));
                break 'search;
            }
        }
    }
    let (mut edge, mut behind) = first.ok_or_else(|| ArcError::InvalidBand("arc leaves no triangle at its start".into()))?;
    let mut raw = Vec::new();
    let mut crossed = Vec::new();
    let limit = 64 * (model.chords().len() + 1) * (model.crossing_count(&gamma) + 1);
    loop {
        if raw.len() > limit {
            return Err(ArcError::InvalidBand("walk does not terminate".into()));
        }
        raw.push(lifted_triangle(t, model, [behind, edge.0, edge.1])?);
        crossed.push(model.edge_of(&edge).expect("lifted edge"));
        let (x, y) = model.apexes(&edge)?;
        let ahead = [x, y]
            .into_iter()
            .flatten()
            .find(|&v| v != behind)
            .ok_or_else(|| ArcError::InvalidBand("edge bounds a single triangle".into()))?;
        if ahead == q {
            raw.push(lifted_triangle(t, model, [edge.0, edge.1, q])?);
            break;
        }
        let left = Chord::new(edge.0, ahead);
        let right = Chord::new(ahead, edge.1);
        if left.crosses(&gamma) {
            behind = edge.1;
            edge = left;
        } else if right.crosses(&gamma) {
            behind = edge.0;
            edge = right;
        } else {
            return Err(ArcError::InvalidBand("arc is lost inside a triangle".into()));
        }
    }
    let band = CrossingBand::relabel(n, crossed, raw, p, q);
    debug_assert!(band.validate().is_ok());
    Ok(band)
}

fn lifted_triangle(
    t: &Triangulation,
    model: &ChordModel,
    pts: [LiftedPoint; 3],
) -> Result<(usize, [EdgeId; 3], [LiftedPoint; 3]), ArcError> {
    let (sides, corners) = model.oriented_triangle(pts)?;
    let idx = t
        .triangle_index(&Triangle::new(sides))
        .ok_or_else(|| ArcError::InvalidBand(format!("lifted triangle {sides:?} is not in the triangulation")))?;
    Ok((idx, sides, corners))
}

fn explicit_band(t: &Triangulation, spec: &BandSpec) -> Result<CrossingBand, ArcError> {
    let bad = |m: String| ArcError::InvalidBand(m);
    let d = spec.crossed.len();
    if d == 0 {
        return Err(bad("a band needs at least one crossing; use `edge e` for edges".into()));
    }
    if spec.triangles.len() != d + 1 {
        return Err(bad(format!("{d} crossings need {} triangles", d + 1)));
    }
    let tris = t.triangles();
    let get = |i: usize| -> Result<Triangle, ArcError> {
        if i == 0 || i > tris.len() {
            return Err(bad(format!("triangle {i} out of range")));
        }
        Ok(tris[i - 1])
    };
    for (k, &e) in spec.crossed.iter().enumerate() {
        if !t.is_interior(e) {
            return Err(bad(format!("crossing {} is not an interior edge", k + 1)));
        }
        if k > 0 && spec.crossed[k - 1] == e {
            return Err(bad(format!("crossings {k} and {} backtrack over edge {e}", k + 1)));
        }
        if spec.triangles[k] == spec.triangles[k + 1] {
            return Err(bad(format!("triangles {} and {} coincide", k + 1, k + 2)));
        }
    }
    let first = get(spec.triangles[0])?;
    let mut raw = vec![(spec.triangles[0] - 1, first.sides(), [0usize, 1, 2])];
    for (k, &e) in spec.crossed.iter().enumerate() {
        let (_, prev_sides, prev_corners) = raw[k];
        let j = prev_sides.iter().position(|&s| s == e).ok_or_else(|| bad(format!("edge {e} is not a side of triangle {}", spec.triangles[k])))?;
        let (from, to) = (prev_corners[(j + 2) % 3], prev_corners[j]);
        let next = get(spec.triangles[k + 1])?;
        let sides = next.sides();
        let jn = sides.iter().position(|&s| s == e).ok_or_else(|| bad(format!("edge {e} is not a side of triangle {}", spec.triangles[k + 1])))?;
        let mut corners = [usize::MAX; 3];
        corners[(jn + 2) % 3] = to;
        corners[jn] = from;
        corners[(jn + 1) % 3] = k + 3;
        raw.push((spec.triangles[k + 1] - 1, sides, corners));
    }
    let j0 = raw[0].1.iter().position(|&s| s == spec.crossed[0]).expect("checked");
    let start = raw[0].2[(j0 + 1) % 3];
    let (_, last_sides, last_corners) = raw[d];
    let jd = last_sides.iter().position(|&s| s == spec.crossed[d - 1]).expect("checked");
    let end = last_corners[(jd + 1) % 3];
    let band = CrossingBand::relabel(t.rank(), spec.crossed.clone(), raw, start, end);
    band.validate()?;
    Ok(band)
}

/// One directed traversal of an edge between band-local vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: EdgeId,
    pub from: usize,
    pub to: usize,
}

impl Step {
    pub fn reversed(&self) -> Self {
        Self { edge: self.edge, from: self.to, to: self.from }
    }
}

/// A complete path: `2d + 1` concatenated steps from the start to the end of the arc.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompletePath {
    steps: Vec<Step>,
}

impl CompletePath {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Edge ids in order.
    pub fn edges(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    /// The opposite path.
    pub fn reversed(&self) -> Self {
        Self { steps: self.steps.iter().rev().map(Step::reversed).collect() }
    }

    /// Sort key: `(edge, runs with its triangle's orientation)` per step.
    fn order_key(&self, band: &CrossingBand) -> Vec<(EdgeId, bool)> {
        if band.d() == 0 {
            return self.steps.iter().map(|s| (s.edge, true)).collect();
        }
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let tri = &band.triangles[i.div_ceil(2)];
                let along = tri.side_between(s.from, s.to).map(|(_, a)| a).unwrap_or(false);
                (s.edge, along)
            })
            .collect()
    }
}

impl fmt::Display for CompletePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.steps.iter().map(|s| s.edge.to_string()).collect();
        write!(f, "({})", e.join(", "))
    }
}

/// Whether step `2k` of `path` runs along the `k`-th crossed edge in the
/// orientation of the triangle the arc enters there.
pub fn gamma_oriented(band: &CrossingBand, path: &CompletePath, k: usize) -> Result<bool, ArcError> {
    let (s, t) = band.endpoints(k)?;
    let step = path.steps[2 * k - 1];
    debug_assert!(step.from == s && step.to == t || step.from == t && step.to == s);
    Ok(step.from == t)
}

/// Every complete path of the band, sorted by `(edge, direction)` sequence.
pub fn enumerate_paths(band: &CrossingBand) -> Vec<CompletePath> {
    let d = band.d();
    if d == 0 {
        let e = band.own_edge.expect("band on an edge");
        return vec![CompletePath { steps: vec![Step { edge: e, from: band.start, to: band.end }] }];
    }
    let ends: Vec<(usize, usize)> = (1..=d).map(|k| band.endpoints(k).expect("in range")).collect();
    let mut out = Vec::new();
    let mut even: Vec<(usize, usize)> = Vec::with_capacity(d);
    extend(band, &ends, &mut even, &mut out);
    let mut keyed: Vec<(Vec<(EdgeId, bool)>, CompletePath)> = out.into_iter().map(|p| (p.order_key(band), p)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, p)| p).collect()
}

fn extend(band: &CrossingBand, ends: &[(usize, usize)], even: &mut Vec<(usize, usize)>, out: &mut Vec<CompletePath>) {
    let k = even.len();
    if k == ends.len() {
        out.push(assemble(band, even));
        return;
    }
    let (s, t) = ends[k];
    for step in [(s, t), (t, s)] {
        if k > 0 && even[k - 1].1 == step.0 {
            continue;
        }
        even.push(step);
        extend(band, ends, even, out);
        even.pop();
    }
}

fn assemble(band: &CrossingBand, even: &[(usize, usize)]) -> CompletePath {
    let d = even.len();
    let mut steps = Vec::with_capacity(2 * d + 1);
    let link = |tri: &BandTriangle, a: usize, b: usize| Step {
        edge: tri.side_between(a, b).expect("corners of one triangle").0,
        from: a,
        to: b,
    };
    steps.push(link(&band.triangles[0], band.start, even[0].0));
    for k in 0..d {
        steps.push(Step { edge: band.crossed[k], from: even[k].0, to: even[k].1 });
        let next = if k + 1 < d { even[k + 1].0 } else { band.end };
        steps.push(link(&band.triangles[k + 1], even[k].1, next));
    }
    CompletePath { steps }
}

/// The unique complete path with no step running with the orientation of
/// the triangle the arc enters, built directly from the endpoint labels.
pub fn alpha_zero(band: &CrossingBand) -> CompletePath {
    let d = band.d();
    if d == 0 {
        return enumerate_paths(band).remove(0);
    }
    let ends: Vec<(usize, usize)> = (1..=d).map(|k| band.endpoints(k).expect("in range")).collect();
    let side = |tri: &BandTriangle, a: usize, b: usize| tri.side_between(a, b).expect("corners of one triangle").0;
    let mut steps = vec![Step { edge: side(&band.triangles[0], band.start, ends[0].0), from: band.start, to: ends[0].0 }];
    for k in 0..d {
        let (s, t) = ends[k];
        steps.push(Step { edge: band.crossed[k], from: s, to: t });
        if k + 1 < d {
            let (s2, t2) = ends[k + 1];
            if s2 == s {
                steps.push(Step { edge: band.crossed[k], from: t, to: s });
            } else {
                steps.push(Step { edge: band.crossed[k + 1], from: t2, to: s2 });
            }
        }
    }
    let t_d = ends[d - 1].1;
    steps.push(Step { edge: side(&band.triangles[d], t_d, band.end), from: t_d, to: band.end });
    CompletePath { steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{build_annulus, build_polygon};

    fn example_a() -> Triangulation {
        build_polygon(8, &[(2, 4), (4, 6), (2, 6), (2, 8), (6, 8)]).unwrap()
    }

    fn example_annulus() -> Triangulation {
        build_annulus(2, 2, &[(1, 3, 0), (1, 4, -1), (2, 4, 0), (2, 3, 0)]).unwrap()
    }

    fn lists(paths: &[CompletePath]) -> Vec<Vec<EdgeId>> {
        paths.iter().map(CompletePath::edges).collect()
    }

    #[test]
    fn octagon_band() {
        let band = crossing_band(&example_a(), &Arc::Chord { a: 3, b: 7 }).unwrap();
        assert_eq!(band.crossed(), &[1, 3, 5]);
        assert_eq!(band.third_sides(), vec![7, 8, 2, 4, 12, 11]);
    }

    #[test]
    fn octagon_paths() {
        let band = crossing_band(&example_a(), &Arc::Chord { a: 3, b: 7 }).unwrap();
        let mut got = lists(&enumerate_paths(&band));
        got.sort();
        let mut expected = vec![
            vec![8, 1, 3, 3, 3, 5, 12],
            vec![8, 1, 3, 3, 4, 5, 11],
            vec![7, 1, 2, 3, 3, 5, 12],
            vec![7, 1, 2, 3, 4, 5, 11],
            vec![7, 1, 1, 3, 5, 5, 11],
        ];
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(alpha_zero(&band).edges(), vec![7, 1, 1, 3, 5, 5, 11]);
    }

    #[test]
    fn octagon_first_path_fully_oriented() {
        let band = crossing_band(&example_a(), &Arc::Chord { a: 3, b: 7 }).unwrap();
        let paths = enumerate_paths(&band);
        let p = paths.iter().find(|p| p.edges() == vec![8, 1, 3, 3, 3, 5, 12]).unwrap();
        for k in 1..=3 {
            assert!(gamma_oriented(&band, p, k).unwrap());
        }
        let a0 = alpha_zero(&band);
        for k in 1..=3 {
            assert!(!gamma_oriented(&band, &a0, k).unwrap());
        }
        assert_eq!(gamma_oriented(&band, p, 4), Err(ArcError::IndexOutOfRange { k: 4, d: 3 }));
    }

    #[test]
    fn edge_band_has_one_path() {
        let band = crossing_band(&example_a(), &Arc::Edge(1)).unwrap();
        assert_eq!(band.d(), 0);
        assert_eq!(lists(&enumerate_paths(&band)), vec![vec![1]]);
        assert_eq!(alpha_zero(&band).edges(), vec![1]);
        let band = crossing_band(&example_a(), &Arc::Chord { a: 2, b: 4 }).unwrap();
        assert_eq!(band.own_edge(), Some(1));
        assert_eq!(crossing_band(&example_a(), &Arc::Chord { a: 3, b: 4 }), Err(ArcError::BoundaryArc(8)));
        assert_eq!(crossing_band(&example_a(), &Arc::Edge(8)), Err(ArcError::BoundaryArc(8)));
    }

    #[test]
    fn annulus_paths() {
        let t = example_annulus();
        let band = crossing_band(&t, &Arc::Annular { a: 2, b: 4, winding: -2 }).unwrap();
        assert_eq!(band.crossed(), &[1, 2, 3, 4, 1]);
        let mut got = lists(&enumerate_paths(&band));
        got.sort();
        let mut expected = vec![
            vec![4, 1, 2, 2, 2, 3, 4, 4, 4, 1, 2],
            vec![4, 1, 2, 2, 2, 3, 4, 4, 5, 1, 8],
            vec![4, 1, 2, 2, 6, 3, 7, 4, 4, 1, 2],
            vec![4, 1, 2, 2, 6, 3, 7, 4, 5, 1, 8],
            vec![4, 1, 2, 2, 6, 3, 3, 4, 1, 1, 8],
            vec![5, 1, 8, 2, 2, 3, 4, 4, 4, 1, 2],
            vec![5, 1, 8, 2, 2, 3, 4, 4, 5, 1, 8],
            vec![5, 1, 8, 2, 6, 3, 7, 4, 4, 1, 2],
            vec![5, 1, 8, 2, 6, 3, 7, 4, 5, 1, 8],
            vec![5, 1, 8, 2, 6, 3, 3, 4, 1, 1, 8],
            vec![5, 1, 1, 2, 3, 3, 7, 4, 4, 1, 2],
            vec![5, 1, 1, 2, 3, 3, 7, 4, 5, 1, 8],
            vec![5, 1, 1, 2, 3, 3, 3, 4, 1, 1, 8],
        ];
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(alpha_zero(&band).edges(), vec![5, 1, 1, 2, 3, 3, 3, 4, 1, 1, 8]);
    }

    #[test]
    fn explicit_band_matches_walk() {
        for (t, arc) in [
            (example_a(), Arc::Chord { a: 3, b: 7 }),
            (example_annulus(), Arc::Annular { a: 2, b: 4, winding: -2 }),
        ] {
            let band = crossing_band(&t, &arc).unwrap();
            let spec = band.to_spec();
            let again = crossing_band(&t, &spec).unwrap();
            assert_eq!(again, band);
            assert_eq!(spec.to_string().parse::<Arc>().unwrap(), spec);
        }
    }

    #[test]
    fn explicit_band_errors() {
        let t = example_a();
        let parse = |s: &str| s.parse::<Arc>().unwrap();
        assert!(matches!(crossing_band(&t, &parse("band 1 1 / 1 1")), Err(ArcError::InvalidBand(_))));
        assert!(matches!(crossing_band(&t, &parse("band 1 7 / 1 2")), Err(ArcError::InvalidBand(_))));
        assert!(matches!(crossing_band(&t, &parse("band 1 1 / 1 99")), Err(ArcError::InvalidBand(_))));
        assert!(matches!(crossing_band(&t, &parse("band 2 1 1 / 1 2 3")), Err(ArcError::InvalidBand(_))));
        assert!("band 2 1 / 1 2".parse::<Arc>().is_err());
        assert!("loop 1 2".parse::<Arc>().is_err());
    }

    #[test]
    fn reversed_band_gives_reversed_paths() {
        let t = example_annulus();
        let arc = Arc::Annular { a: 2, b: 4, winding: -2 };
        let band = crossing_band(&t, &arc).unwrap();
        let rev = crossing_band(&t, &arc.reversed()).unwrap();
        let mut a: Vec<Vec<EdgeId>> = enumerate_paths(&band).iter().map(|p| p.reversed().edges()).collect();
        let mut b = lists(&enumerate_paths(&rev));
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(band.reversed().crossed(), rev.crossed());
    }
}

#[cfg(test)]
mod properties {
    use proptest::prelude::*;

    use super::*;
    use crate::surface::build_polygon;

    fn polygon(m: usize, flips: &[usize]) -> Triangulation {
        let mut t = build_polygon(m, &(3..m).map(|v| (1, v)).collect::<Vec<_>>()).unwrap();
        for f in flips {
            t = t.flip(f % t.rank() + 1).unwrap();
        }
        t
    }

    fn check_paths(band: &CrossingBand) -> Result<(), TestCaseError> {
        let d = band.d();
        for path in enumerate_paths(band) {
            let steps = path.steps();
            prop_assert_eq!(steps.len(), 2 * d + 1);
            prop_assert_eq!(steps[0].from, band.start());
            prop_assert_eq!(steps[2 * d].to, band.end());
            for w in steps.windows(2) {
                prop_assert_eq!(w[0].to, w[1].from);
            }
            for k in 1..=d {
                prop_assert_eq!(steps[2 * k - 1].edge, band.crossed()[k - 1]);
            }
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn polygon_bands_and_paths(
            m in 4usize..11,
            flips in prop::collection::vec(0usize..64, 0..8),
            a in 0usize..10,
            b in 0usize..10,
        ) {
            let t = polygon(m, &flips);
            let (a, b) = (a % m + 1, b % m + 1);
            let (a, b) = (a.min(b), a.max(b));
            prop_assume!(b >= a + 2 && !(a == 1 && b == m));
            let gamma = Arc::Chord { a, b };
            let band = crossing_band(&t, &gamma).unwrap();
            prop_assert!(band.validate().is_ok());
            let model = t.embedding().unwrap();
            let chord = model.polygon_arc(a, b).unwrap();
            let expected = model.chords()[..t.rank()].iter().filter(|c| c.crosses(&chord)).count();
            prop_assert_eq!(band.d(), expected);
            check_paths(&band)?;
            let rev = crossing_band(&t, &gamma.reversed()).unwrap();
            check_paths(&rev)?;
            prop_assert_eq!(enumerate_paths(&band).len(), enumerate_paths(&rev).len());
            let zero = alpha_zero(&band);
            prop_assert!(enumerate_paths(&band).contains(&zero));
            let spec = band.to_spec();
            let again = crossing_band(&t, &spec).unwrap();
            prop_assert_eq!(again.crossed(), band.crossed());
        }
    }
}
