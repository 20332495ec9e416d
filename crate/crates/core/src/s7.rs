//! Covering `S7` detection.
//!
//! `S7` is the seven-element lattice produced by one fork in a 4-cell:
//!
//! ```text
//!         i
//!       / | \
//!      c  t  d
//!      | / \ |
//!      a     b
//!       \   /
//!         o
//! ```
//!
//! Its middle edge is `(t, i)`. Two readings of "covering S7 of L" are
//! supported, see [`S7Mode`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::lattice::{Elem, Lattice};

/// How an `S7` must sit inside the ambient lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum S7Mode {
    /// All nine edges of the `S7` are covers of the ambient lattice.
    Strict,
    /// Any `S7` sublattice whose middle pair is a cover and whose `t` has
    /// `i` as its only upper cover.
    #[default]
    Sublattice,
}

impl S7Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            S7Mode::Strict => "strict",
            S7Mode::Sublattice => "sublattice",
        }
    }
}

impl fmt::Display for S7Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for S7Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(S7Mode::Strict),
            "sublattice" => Ok(S7Mode::Sublattice),
            other => Err(format!("unknown mode {other:?} (expected strict or sublattice)")),
        }
    }
}

/// A witness `S7` inside a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringS7 {
    pub o: Elem,
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
    pub t: Elem,
    pub i: Elem,
    pub mode: S7Mode,
}

impl CoveringS7 {
    pub fn middle(&self) -> (Elem, Elem) {
        (self.t, self.i)
    }

    /// Elements in template order `o, a, b, c, d, t, i`.
    pub fn elements(&self) -> [Elem; 7] {
        [self.o, self.a, self.b, self.c, self.d, self.t, self.i]
    }

    pub fn element_set(&self) -> [Elem; 7] {
        let mut e = self.elements();
        e.sort_unstable();
        e
    }

    /// Re-checks every invariant of the witness against `lattice`.
    pub fn holds_in(&self, lattice: &Lattice) -> bool {
        is_s7(lattice, &self.elements(), self.mode)
    }
}

const O: usize = 0;
const A: usize = 1;
const B: usize = 2;
const C: usize = 3;
const D: usize = 4;
const T: usize = 5;
const I: usize = 6;

/// The nine covers of the template.
pub const S7_EDGES: [(usize, usize); 9] = [(O, A), (O, B), (A, C), (B, D), (A, T), (B, T), (T, I), (C, I), (D, I)];

struct Template {
    leq: [[bool; 7]; 7],
    join: [[usize; 7]; 7],
    meet: [[usize; 7]; 7],
}

fn template() -> &'static Template {
    static TEMPLATE: OnceLock<Template> = OnceLock::new();
    TEMPLATE.get_or_init(|| {
        let mut leq = [[false; 7]; 7];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(lo, hi) in &S7_EDGES {
            leq[lo][hi] = true;
        }
        // Transitive closure; seven elements, three rounds are plenty.
        for _ in 0..3 {
            for x in 0..7 {
                for y in 0..7 {
                    for z in 0..7 {
                        if leq[x][y] && leq[y][z] {
                            leq[x][z] = true;
                        }
                    }
                }
            }
        }
        let bound = |upper: bool, x: usize, y: usize| -> usize {
            let bounds: Vec<usize> =
                (0..7).filter(|&z| if upper { leq[x][z] && leq[y][z] } else { leq[z][x] && leq[z][y] }).collect();
            *bounds
                .iter()
                .find(|&&z| bounds.iter().all(|&w| if upper { leq[z][w] } else { leq[w][z] }))
                .expect("S7 is a lattice")
        };
        let mut join = [[0; 7]; 7];
        let mut meet = [[0; 7]; 7];
        for x in 0..7 {
            for y in 0..7 {
                join[x][y] = bound(true, x, y);
                meet[x][y] = bound(false, x, y);
            }
        }
        Template { leq, join, meet }
    })
}

/// Whether `e` (in template order) is an `S7` of `lattice` under `mode`.
pub fn is_s7(lattice: &Lattice, e: &[Elem; 7], mode: S7Mode) -> bool {
    let tpl = template();
    for p in 0..7 {
        for q in 0..7 {
            if p != q && e[p] == e[q] {
                return false;
            }
            if lattice.leq(e[p], e[q]) != tpl.leq[p][q] {
                return false;
            }
            if lattice.join(e[p], e[q]) != e[tpl.join[p][q]] || lattice.meet(e[p], e[q]) != e[tpl.meet[p][q]] {
                return false;
            }
        }
    }
    if lattice.upper_covers(e[T]) != [e[I]] {
        return false;
    }
    match mode {
        S7Mode::Strict => S7_EDGES.iter().all(|&(lo, hi)| lattice.is_cover(e[lo], e[hi])),
        S7Mode::Sublattice => true,
    }
}

/// All covering `S7`s, sorted by middle `(t, i)` and deduplicated by
/// element set.
///
/// Candidate middles are elements `t` with a single upper cover and at
/// least two lower covers; the rest of the pattern is completed from there.
pub fn find_covering_s7s(lattice: &Lattice, mode: S7Mode) -> Vec<CoveringS7> {
    let n = lattice.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |e: [Elem; 7], out: &mut Vec<CoveringS7>| {
        let mut key = e;
        key.sort_unstable();
        if seen.insert(key) {
            out.push(CoveringS7 { o: e[O], a: e[A], b: e[B], c: e[C], d: e[D], t: e[T], i: e[I], mode });
        }
    };

    for t in 0..n {
        let [i] = lattice.upper_covers(t) else {
            continue;
        };
        let i = *i;
        if lattice.lower_covers(t).len() < 2 {
            continue;
        }
        let below: Vec<Elem> = match mode {
            S7Mode::Strict => lattice.lower_covers(t).to_vec(),
            S7Mode::Sublattice => (0..n).filter(|&x| lattice.lt(x, t)).collect(),
        };
        for (k, &a) in below.iter().enumerate() {
            for &b in &below[k + 1..] {
                if lattice.comparable(a, b) || lattice.join(a, b) != t {
                    continue;
                }
                let o = lattice.meet(a, b);
                let side = |x: Elem| -> Vec<Elem> {
                    let pool: Vec<Elem> = match mode {
                        S7Mode::Strict => lattice.upper_covers(x).to_vec(),
                        S7Mode::Sublattice => (0..n).collect(),
                    };
                    pool.into_iter().filter(|&z| z != t && lattice.meet(z, t) == x && lattice.join(z, t) == i).collect()
                };
                let cs = side(a);
                if cs.is_empty() {
                    continue;
                }
                let ds = side(b);
                for &c in &cs {
                    for &d in &ds {
                        let e = [o, a, b, c, d, t, i];
                        if is_s7(lattice, &e, mode) {
                            push(e, &mut out);
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|s| (s.t, s.i, s.element_set()));
    out
}

/// Set of middle edges `(t, i)` of the covering `S7`s.
pub fn s7_middles(lattice: &Lattice, mode: S7Mode) -> BTreeSet<(Elem, Elem)> {
    find_covering_s7s(lattice, mode).iter().map(CoveringS7::middle).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s7() -> Lattice {
        Lattice::from_covers(7, &[(0, 1), (0, 2), (1, 3), (2, 4), (1, 5), (2, 5), (3, 6), (4, 6), (5, 6)]).unwrap()
    }

    fn grid(m: usize, n: usize) -> Lattice {
        let mut covers = Vec::new();
        for i in 0..m {
            for j in 0..n {
                if i + 1 < m {
                    covers.push((i * n + j, (i + 1) * n + j));
                }
                if j + 1 < n {
                    covers.push((i * n + j, i * n + j + 1));
                }
            }
        }
        Lattice::from_covers(m * n, &covers).unwrap()
    }

    #[test]
    fn template_joins() {
        let tpl = template();
        assert_eq!(tpl.join[A][B], T);
        assert_eq!(tpl.join[A][D], I);
        assert_eq!(tpl.meet[C][D], O);
        assert_eq!(tpl.meet[C][T], A);
        assert!(!tpl.leq[C][T]);
    }

    #[test]
    fn s7_has_one_covering_s7() {
        for mode in [S7Mode::Strict, S7Mode::Sublattice] {
            let found = find_covering_s7s(&s7(), mode);
            assert_eq!(found.len(), 1, "{mode}");
            assert_eq!(found[0].middle(), (5, 6));
            assert!(found[0].holds_in(&s7()));
        }
    }

    #[test]
    fn grids_have_none() {
        for (m, n) in [(2, 2), (3, 3), (2, 4)] {
            let l = grid(m, n);
            assert!(find_covering_s7s(&l, S7Mode::Strict).is_empty());
            assert!(find_covering_s7s(&l, S7Mode::Sublattice).is_empty());
        }
    }

    #[test]
    fn middle_needs_unique_upper_cover() {
        // S7 with an extra element above t only: t gets two upper covers.
        let l =
            Lattice::from_covers(8, &[(0, 1), (0, 2), (1, 3), (2, 4), (1, 5), (2, 5), (3, 6), (4, 6), (5, 7), (7, 6)]);
        // (5,6) is no longer a cover here, so nothing qualifies.
        let l = l.unwrap();
        assert!(find_covering_s7s(&l, S7Mode::Sublattice).is_empty());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("strict".parse::<S7Mode>(), Ok(S7Mode::Strict));
        assert_eq!(S7Mode::default(), S7Mode::Sublattice);
        assert!("loose".parse::<S7Mode>().is_err());
    }
}
