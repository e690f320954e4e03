//! Generated test corpora and the oracle comparison over them.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arcs::Arc;
use crate::expansion::expand_principal;
use crate::harness::oracle::{oracle_expand, OracleConfig};
use crate::surface::{annulus_arc_is_valid, build_annulus, build_polygon, Chord, Triangulation};

/// Triangulations and `(triangulation index, arc)` cases.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub triangulations: Vec<Triangulation>,
    pub cases: Vec<(usize, Arc)>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn extend(&mut self, other: Corpus) {
        let offset = self.triangulations.len();
        self.triangulations.extend(other.triangulations);
        self.cases.extend(other.cases.into_iter().map(|(i, a)| (i + offset, a)));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triangulation, &Arc)> {
        self.cases.iter().map(|(i, a)| (&self.triangulations[*i], a))
    }
}

/// Every triangulation of the `m`-gon as a diagonal list.
pub fn polygon_triangulations(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for apex in lo + 1..hi {
            for left in rec(lo, apex) {
                for right in rec(apex, hi) {
                    let mut d = left.clone();
                    d.extend(right.iter().copied());
                    if apex - lo > 1 {
                        d.push((lo, apex));
                    }
                    if hi - apex > 1 {
                        d.push((apex, hi));
                    }
                    out.push(d);
                }
            }
        }
        out
    }
    rec(1, m)
}

/// All polygon triangulations with `4 <= m <= max_m`, each with every chord.
pub fn polygon_corpus(max_m: usize) -> Corpus {
    let mut corpus = Corpus::default();
    for m in 4..=max_m {
        for diags in polygon_triangulations(m) {
            let t = build_polygon(m, &diags).expect("generated triangulation");
            let idx = corpus.triangulations.len();
            corpus.triangulations.push(t);
            for a in 1..=m {
                for b in a + 2..=m {
                    if !(a == 1 && b == m) {
                        corpus.cases.push((idx, Arc::Chord { a, b }));
                    }
                }
            }
        }
    }
    corpus
}

/// Staircase triangulation of the annulus: every arc joins the outer to
/// the inner boundary.
pub fn annulus_staircase(p: usize, q: usize) -> Triangulation {
    let mut arcs = Vec::new();
    let (mut i, mut j) = (0i64, 0i64);
    for step in 0..p + q {
        let (a, jj) = if i < p as i64 { (i + 1, j) } else { (1, j - q as i64) };
        let b = p as i64 + jj.rem_euclid(q as i64) + 1;
        arcs.push((a as usize, b as usize, jj.div_euclid(q as i64)));
        if (step * p) / (p + q) != ((step + 1) * p) / (p + q) {
            i += 1;
        } else {
            j += 1;
        }
    }
    build_annulus(p, q, &arcs).expect("staircase triangulation")
}

/// Sorted interior chords of the embedding; distinguishes Dehn twists.
pub fn chord_key(t: &Triangulation) -> Vec<Chord> {
    let model = t.embedding().expect("embedded triangulation");
    let mut v = model.chords()[..model.rank()].to_vec();
    v.sort();
    v
}

/// Triangulations within `depth` flips of `start`, deduplicated.
pub fn flip_neighbourhood(start: &Triangulation, depth: usize) -> Vec<Triangulation> {
    let mut seen = BTreeSet::from([chord_key(start)]);
    let mut out = vec![start.clone()];
    let mut frontier = vec![start.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for k in 1..=t.rank() {
                let f = t.flip(k).expect("interior flip");
                if seen.insert(chord_key(&f)) {
                    next.push(f.clone());
                    out.push(f);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Annulus arcs `(a, b, w)` with `|w| <= max_winding`, one per isotopy class.
pub fn annulus_arcs(t: &Triangulation, max_winding: i64) -> Vec<Arc> {
    let model = t.embedding().expect("annulus model");
    let crate::surface::CoverKind::Annulus { p, q } = model.kind() else {
        return Vec::new();
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 1..=p + q {
        for b in 1..=p + q {
            for w in -max_winding..=max_winding {
                if !annulus_arc_is_valid(p, q, a, b, w) {
                    continue;
                }
                let c = model.annulus_arc(a, b, w).expect("valid arc");
                if seen.insert(model.canonical(c)) {
                    out.push(Arc::Annular { a, b, winding: w });
                }
            }
        }
    }
    out
}

/// Annuli with `p, q >= 1`, `p + q <= max_points`, triangulations within
/// `depth` flips of the staircase, arcs with `|w| <= max_winding`.
pub fn annulus_corpus(max_points: usize, depth: usize, max_winding: i64) -> Corpus {
    let mut corpus = Corpus::default();
    for total in 2..=max_points {
        for p in 1..total {
            let q = total - p;
            for t in flip_neighbourhood(&annulus_staircase(p, q), depth) {
                let idx = corpus.triangulations.len();
                corpus.cases.extend(annulus_arcs(&t, max_winding).into_iter().map(|a| (idx, a)));
                corpus.triangulations.push(t);
            }
        }
    }
    corpus
}

/// The `p = q = 2` annulus triangulation with arcs `(1,3,0), (1,4,-1), (2,4,0), (2,3,0)`.
pub fn example_annulus() -> Triangulation {
    build_annulus(2, 2, &[(1, 3, 0), (1, 4, -1), (2, 4, 0), (2, 3, 0)]).expect("fixture")
}

/// Every arc of [`example_annulus`] with `|w| <= max_winding`.
pub fn example_annulus_corpus(max_winding: i64) -> Corpus {
    let t = example_annulus();
    let cases = annulus_arcs(&t, max_winding).into_iter().map(|a| (0, a)).collect();
    Corpus { triangulations: vec![t], cases }
}

/// Outcome of comparing path expansions with the oracle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Comparison {
    pub cases: usize,
    pub mismatches: Vec<String>,
    pub fallbacks: usize,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `expand_principal` with `oracle_expand` on every case.
pub fn compare(corpus: &Corpus, config: &OracleConfig) -> Comparison {
    let results: Vec<(Option<String>, bool)> = corpus
        .cases
        .par_iter()
        .map(|(i, arc)| {
            let t = &corpus.triangulations[*i];
            let label = || format!("{} | {arc}", t.to_text().lines().skip(1).collect::<Vec<_>>().join("; "));
            match (expand_principal(t, arc), oracle_expand(t, arc, config)) {
                (Ok(p), Ok(o)) if p == o.value => (None, o.used_fallback),
                (Ok(p), Ok(o)) => (Some(format!("{}: paths {p} vs oracle {}", label(), o.value)), o.used_fallback),
                (Err(e), _) => (Some(format!("{}: expansion failed: {e}", label())), false),
                (_, Err(e)) => (Some(format!("{}: oracle failed: {e}", label())), false),
            }
        })
        .collect();
    Comparison {
        cases: results.len(),
        fallbacks: results.iter().filter(|r| r.1).count(),
        mismatches: results.into_iter().filter_map(|r| r.0).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (4..=9).map(|m| polygon_triangulations(m).len()).collect();
        assert_eq!(counts, vec![2, 5, 14, 42, 132, 429]);
        for d in polygon_triangulations(7) {
            assert_eq!(d.len(), 4);
        }
    }

    #[test]
    fn staircases_build() {
        for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (1, 5)] {
            let t = annulus_staircase(p, q);
            assert_eq!(t.rank(), p + q);
        }
    }

    #[test]
    fn small_comparison() {
        let mut corpus = polygon_corpus(6);
        corpus.extend(example_annulus_corpus(1));
        let c = compare(&corpus, &OracleConfig::default());
        assert!(c.is_equal(), "{:?}", c.mismatches);
        assert!(c.cases > 40);
    }
}
