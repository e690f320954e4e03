//! Surface and coefficient file formats.
//!
//! Every file starts with the line `cck/1`. Blank lines and `#` comments
//! are ignored. A surface file is one of
//!
//! ```text
//! cck/1                 cck/1                 cck/1
//! polygon 8             annulus 2 2           surface 1 1 1
//! diag 2 4              annarc 1 3 0          edges 4 1
//! ...                   ...                   tri 1 2 3
//! arc chord 3 7         arc annarc 2 4 -2     ...
//! ```
//!
//! followed by an optional `arc` line. In the general form triangles list
//! their sides clockwise; ids `1..=n` are interior, `n+1..=n+m` boundary.
//! Triangle numbers in a `band` arc refer to `tri` lines in file order.
//!
//! A coefficient file holds `ell` on one line and then `n` rows of `ell`
//! integers; row `k` gives the exponents of `u_1..u_ell` in `y_k`.

use thiserror::Error;

use crate::arcs::{Arc, BandSpec};
use crate::surface::{build_annulus, build_polygon, SurfaceDescriptor, SurfaceError, Triangle, Triangulation};

const FORMAT_TAG: &str = "cck/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: SurfaceError },
}

impl InputError {
    fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Self::Syntax { line, msg: msg.into() }
    }
}

/// Parsed surface file.
#[derive(Debug, Clone)]
pub struct SurfaceFile {
    pub triangulation: Triangulation,
    pub arc: Option<Arc>,
    /// Canonical triangle index of each `tri` line, in file order.
    file_order: Vec<usize>,
}

impl SurfaceFile {
    /// Translates band triangle numbers from file order to the
    /// triangulation's canonical order.
    pub fn resolve_arc(&self, arc: &Arc) -> Arc {
        match arc {
            Arc::Band(spec) if !self.file_order.is_empty() => Arc::Band(BandSpec {
                crossed: spec.crossed.clone(),
                triangles: spec
                    .triangles
                    .iter()
                    .map(|&i| self.file_order.get(i.wrapping_sub(1)).map_or(0, |c| c + 1))
                    .collect(),
            }),
            other => other.clone(),
        }
    }
}

fn meaningful(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers<T: std::str::FromStr>(line: usize, toks: &[&str]) -> Result<Vec<T>, InputError> {
    toks.iter()
        .map(|t| t.parse().map_err(|_| InputError::syntax(line, format!("bad number {t:?}"))))
        .collect()
}

fn expect_tag<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(), InputError> {
    match lines.next() {
        Some((_, FORMAT_TAG)) => Ok(()),
        Some((line, _)) => Err(InputError::syntax(line, "expected version line `cck/1`")),
        None => Err(InputError::syntax(1, "empty input")),
    }
}

enum Header {
    Polygon(usize),
    Annulus(usize, usize),
    General { genus: usize, marked: Vec<usize> },
}

/// Parses a surface file.
pub fn parse_surface(text: &str) -> Result<SurfaceFile, InputError> {
    let mut lines = meaningful(text);
    expect_tag(&mut lines)?;
    let (hline, header) = lines.next().ok_or_else(|| InputError::syntax(2, "missing surface header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let header = match toks.as_slice() {
        ["polygon", m] => Header::Polygon(numbers(hline, &[m])?[0]),
        ["annulus", p, q] => {
            let v: Vec<usize> = numbers(hline, &[p, q])?;
            Header::Annulus(v[0], v[1])
        }
        ["surface", g, b, rest @ ..] => {
            let g: usize = numbers(hline, &[g])?[0];
            let b: usize = numbers(hline, &[b])?[0];
            let marked: Vec<usize> = numbers(hline, rest)?;
            if marked.len() != b {
                return Err(InputError::syntax(hline, format!("{b} boundary components need {b} marked counts")));
            }
            Header::General { genus: g, marked }
        }
        _ => return Err(InputError::syntax(hline, "expected `polygon m`, `annulus p q` or `surface g b m1 .. mb`")),
    };
    let invalid = |source| InputError::Invalid { line: hline, source };
    let mut arc = None;
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    let mut tris: Vec<(usize, Triangle)> = Vec::new();
    let mut edges: Option<(usize, usize)> = None;
    for (line, text) in lines {
        if arc.is_some() {
            return Err(InputError::syntax(line, "nothing may follow the arc line"));
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        match (&header, toks.as_slice()) {
            (_, ["arc", rest @ ..]) => {
                let spec = rest.join(" ");
                arc = Some(spec.parse::<Arc>().map_err(|e| InputError::syntax(line, e.to_string()))?);
            }
            (Header::Polygon(_), ["diag", a, b]) => {
                let v: Vec<usize> = numbers(line, &[a, b])?;
                pairs.push((v[0], v[1]));
            }
            (Header::Annulus(..), ["annarc", a, b, w]) => {
                let v: Vec<usize> = numbers(line, &[a, b])?;
                let w: i64 = numbers(line, &[w])?[0];
                triples.push((v[0], v[1], w));
            }
            (Header::General { .. }, ["edges", n, m]) => {
                if edges.is_some() {
                    return Err(InputError::syntax(line, "repeated `edges` line"));
                }
                let v: Vec<usize> = numbers(line, &[n, m])?;
                edges = Some((v[0], v[1]));
            }
            (Header::General { .. }, ["tri", a, b, c]) => {
                if edges.is_none() {
                    return Err(InputError::syntax(line, "`tri` before `edges`"));
                }
                let v: Vec<usize> = numbers(line, &[a, b, c])?;
                tris.push((line, Triangle::new([v[0], v[1], v[2]])));
            }
            _ => return Err(InputError::syntax(line, format!("unexpected line {text:?}"))),
        }
    }
    let (triangulation, file_order) = match header {
        Header::Polygon(m) => (build_polygon(m, &pairs).map_err(invalid)?, Vec::new()),
        Header::Annulus(p, q) => (build_annulus(p, q, &triples).map_err(invalid)?, Vec::new()),
        Header::General { genus, marked } => {
            let (n, m) = edges.ok_or_else(|| InputError::syntax(hline, "missing `edges n m` line"))?;
            let desc = SurfaceDescriptor::new(genus, marked).map_err(invalid)?;
            if desc.marked_points() != m {
                return Err(InputError::Invalid {
                    line: hline,
                    source: SurfaceError::BoundaryCountMismatch { expected: desc.marked_points(), got: m },
                });
            }
            for (line, t) in &tris {
                if let Some(&e) = t.sides().iter().find(|&&e| e == 0 || e > n + m) {
                    return Err(InputError::Invalid { line: *line, source: SurfaceError::EdgeOutOfRange(e) });
                }
            }
            let t = Triangulation::new(desc, n, tris.iter().map(|(_, t)| *t).collect()).map_err(invalid)?;
            let order = tris.iter().map(|(_, tri)| t.triangle_index(tri).expect("validated")).collect();
            (t, order)
        }
    };
    Ok(SurfaceFile { triangulation, arc, file_order })
}

/// Parses a coefficient file for a triangulation of rank `n`.
pub fn parse_coefficients(text: &str, n: usize) -> Result<Vec<Vec<i64>>, InputError> {
    let mut lines = meaningful(text);
    expect_tag(&mut lines)?;
    let (hline, header) = lines.next().ok_or_else(|| InputError::syntax(2, "missing `ell` line"))?;
    let ell: usize = header.parse().map_err(|_| InputError::syntax(hline, "expected the generator count"))?;
    let mut rows = Vec::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        let row: Vec<i64> = numbers(line, &toks)?;
        if row.len() != ell {
            return Err(InputError::syntax(line, format!("expected {ell} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(InputError::syntax(hline, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

/// Coefficient file text for the given rows.
pub fn coefficients_to_text(rows: &[Vec<i64>]) -> String {
    let ell = rows.first().map_or(0, Vec::len);
    let mut out = format!("{FORMAT_TAG}\n{ell}\n");
    for r in rows {
        out += &r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_file() {
        let f = parse_surface("cck/1\npolygon 5\ndiag 1 3\ndiag 1 4 # fan\narc chord 2 5\n").unwrap();
        assert_eq!(f.triangulation.rank(), 2);
        assert_eq!(f.arc, Some(Arc::Chord { a: 2, b: 5 }));
    }

    #[test]
    fn general_file_round_trip() {
        let t = build_polygon(6, &[(1, 3), (1, 4), (1, 5)]).unwrap();
        let f = parse_surface(&t.to_text()).unwrap();
        assert_eq!(f.triangulation.triangles(), t.triangles());
        assert!(f.triangulation.embedding().is_none());
    }

    #[test]
    fn line_numbers() {
        let err = parse_surface("cck/1\npolygon 5\ndiag 1 x\n").unwrap_err();
        assert_eq!(err, InputError::syntax(3, "bad number \"x\""));
        assert!(matches!(parse_surface("cck/2\n"), Err(InputError::Syntax { line: 1, .. })));
        assert!(matches!(parse_surface("cck/1\npolygon 5\ndiag 1 3\n"), Err(InputError::Invalid { line: 2, .. })));
        let bad = "cck/1\nsurface 0 1 4\nedges 1 4\ntri 1 2 3\ntri 1 4 9\n";
        assert!(matches!(parse_surface(bad), Err(InputError::Invalid { line: 5, .. })));
        assert!(matches!(parse_surface("cck/1\npolygon 4\ndiag 1 3\narc chord 2 4\ndiag 1 2\n"), Err(InputError::Syntax { line: 5, .. })));
    }

    #[test]
    fn band_numbers_follow_file_order() {
        let text = "cck/1\nsurface 0 1 4\nedges 1 4\ntri 1 4 5\ntri 1 2 3\narc band 1 1 / 1 2\n";
        let f = parse_surface(text).unwrap();
        let resolved = f.resolve_arc(f.arc.as_ref().unwrap());
        let Arc::Band(spec) = resolved else { panic!() };
        let tris = f.triangulation.triangles();
        assert_eq!(tris[spec.triangles[0] - 1], Triangle::new([1, 4, 5]).canonical());
    }

    #[test]
    fn coefficient_file() {
        let rows = vec![vec![1, 0], vec![0, -1]];
        assert_eq!(parse_coefficients(&coefficients_to_text(&rows), 2).unwrap(), rows);
        assert!(matches!(parse_coefficients("cck/1\n2\n1 0\n", 2), Err(InputError::Syntax { line: 2, .. })));
        assert!(matches!(parse_coefficients("cck/1\n2\n1 0 3\n0 0\n", 2), Err(InputError::Syntax { line: 3, .. })));
    }
}
