//! Boundary chains, 4-cells, corners and rectangularity of a diagram.

use std::fmt;

use crate::geometry::Diagram;
use crate::lattice::Elem;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("unknown side {other:?}")),
        }
    }
}

/// A quadrilateral face `o ≺ c, d ≺ i` with `c` drawn left of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FourCell {
    pub o: Elem,
    pub c: Elem,
    pub d: Elem,
    pub i: Elem,
}

/// Doubly irreducible boundary element whose lower cover is meet-reducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    pub a: Elem,
    pub a_star: Elem,
    pub a_upper: Elem,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FaceError {
    #[error("face {0:?} is not a 4-cell")]
    NotQuadrilateral(Vec<Elem>),
}

/// Left and right boundary chains, bottom to top.
pub fn boundary_chains<S: Scalar>(d: &Diagram<S>) -> (Vec<Elem>, Vec<Elem>) {
    (boundary_chain(d, Side::Left), boundary_chain(d, Side::Right))
}

pub fn boundary_chain<S: Scalar>(d: &Diagram<S>, side: Side) -> Vec<Elem> {
    let mut chain = vec![d.lattice().bottom()];
    let mut cur = d.lattice().bottom();
    loop {
        let ups = d.upper_covers(cur);
        let next = match side {
            Side::Left => ups.first(),
            Side::Right => ups.last(),
        };
        match next {
            Some(&x) => {
                chain.push(x);
                cur = x;
            }
            None => return chain,
        }
    }
}

/// Neighbours of `x` in counter-clockwise order, starting from the right.
fn rotation<S: Scalar>(d: &Diagram<S>, x: Elem) -> Vec<Elem> {
    d.upper_covers(x).iter().rev().chain(d.lower_covers(x)).copied().collect()
}

/// All bounded faces, each checked to be a 4-cell, sorted by
/// `(y(o), x(o), x(c))`.
///
/// Faces are traced on the rotation system of the drawing; a face is bounded
/// iff its boundary walk has positive signed area.
pub fn enumerate_4cells<S: Scalar>(d: &Diagram<S>) -> Result<Vec<FourCell>, FaceError> {
    let n = d.len();
    let rot: Vec<Vec<Elem>> = (0..n).map(|x| rotation(d, x)).collect();
    let mut used: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut cells = Vec::new();

    for start in 0..n {
        for k in 0..rot[start].len() {
            if used[start][k] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut from, mut slot) = (start, k);
            while !used[from][slot] {
                used[from][slot] = true;
                walk.push(from);
                let to = rot[from][slot];
                let back = rot[to].iter().position(|&y| y == from).expect("symmetric adjacency");
                let next = (back + rot[to].len() - 1) % rot[to].len();
                from = to;
                slot = next;
            }
            if signed_area2(d, &walk).is_positive() {
                cells.push(as_cell(d, &walk)?);
            }
        }
    }
    cells.sort_by(|p, q| {
        let (po, qo) = (d.pos(p.o), d.pos(q.o));
        (po.y(), po.x(), d.pos(p.c).x()).cmp(&(qo.y(), qo.x(), d.pos(q.c).x()))
    });
    Ok(cells)
}

fn signed_area2<S: Scalar>(d: &Diagram<S>, walk: &[Elem]) -> S {
    let mut acc = S::zero();
    for (k, &p) in walk.iter().enumerate() {
        let q = walk[(k + 1) % walk.len()];
        let (a, b) = (d.pos(p), d.pos(q));
        acc = acc + a.x() * b.y() - b.x() * a.y();
    }
    acc
}

fn as_cell<S: Scalar>(d: &Diagram<S>, walk: &[Elem]) -> Result<FourCell, FaceError> {
    let fail = || FaceError::NotQuadrilateral(walk.to_vec());
    if walk.len() != 4 {
        return Err(fail());
    }
    let mut vs = walk.to_vec();
    vs.sort_by(|&p, &q| d.pos(p).y().cmp(&d.pos(q).y()).then(p.cmp(&q)));
    let (o, i) = (vs[0], vs[3]);
    let (mut c, mut dd) = (vs[1], vs[2]);
    if d.pos(c).x() > d.pos(dd).x() {
        std::mem::swap(&mut c, &mut dd);
    }
    let l = d.lattice();
    let distinct = o != c && c != dd && dd != i && o != i;
    if !distinct || !(l.is_cover(o, c) && l.is_cover(o, dd) && l.is_cover(c, i) && l.is_cover(dd, i)) {
        return Err(fail());
    }
    Ok(FourCell { o, c, d: dd, i })
}

/// Corners on both boundary chains, left side first, each side bottom-up.
pub fn find_corners<S: Scalar>(d: &Diagram<S>) -> Vec<Corner> {
    let l = d.lattice();
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let mut found: Vec<Corner> = boundary_chain(d, side)
            .into_iter()
            .filter(|&a| l.is_doubly_irreducible(a))
            .filter_map(|a| {
                let a_star = l.lower_covers(a)[0];
                let a_upper = l.upper_covers(a)[0];
                (l.upper_covers(a_star).len() >= 2).then_some(Corner { a, a_star, a_upper, side })
            })
            .collect();
        found.sort_by_key(|c| d.pos(c.a).y());
        out.extend(found);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RectangularFailure {
    #[error("no doubly irreducible boundary element pair (left: {left:?}, right: {right:?})")]
    NoBoundaryPair { left: Vec<Elem>, right: Vec<Elem> },
    #[error("boundary elements {lc} and {rc} are not complementary")]
    NotComplementary { lc: Elem, rc: Elem },
}

/// Exactly one doubly irreducible element on each boundary chain, and the
/// two are complements.
pub fn check_rectangular<S: Scalar>(d: &Diagram<S>) -> Result<(Elem, Elem), RectangularFailure> {
    let l = d.lattice();
    let (left, right) = boundary_chains(d);
    let left: Vec<Elem> = left.into_iter().filter(|&x| l.is_doubly_irreducible(x)).collect();
    let right: Vec<Elem> = right.into_iter().filter(|&x| l.is_doubly_irreducible(x)).collect();
    let ([lc], [rc]) = (left.as_slice(), right.as_slice()) else {
        return Err(RectangularFailure::NoBoundaryPair { left, right });
    };
    let (lc, rc) = (*lc, *rc);
    if lc == rc {
        return Err(RectangularFailure::NoBoundaryPair { left, right });
    }
    if l.lub_glb(lc, rc) != (l.top(), l.bottom()) {
        return Err(RectangularFailure::NotComplementary { lc, rc });
    }
    Ok((lc, rc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Coord, RawDiagram};
    use crate::Rational;

    fn grid(m: usize, n: usize) -> Diagram<Rational> {
        let mut covers = Vec::new();
        let mut positions = Vec::new();
        for i in 0..m {
            for j in 0..n {
                positions.push(Coord::from_ints(j as i64, i as i64));
                if i + 1 < m {
                    covers.push((i * n + j, (i + 1) * n + j));
                }
                if j + 1 < n {
                    covers.push((i * n + j, i * n + j + 1));
                }
            }
        }
        RawDiagram { positions, covers }.into_diagram().unwrap()
    }

    fn chain(k: usize) -> Diagram<Rational> {
        let positions = (0..k).map(|x| Coord::from_ints(x as i64, x as i64)).collect();
        let covers = (1..k).map(|x| (x - 1, x)).collect();
        RawDiagram { positions, covers }.into_diagram().unwrap()
    }

    #[test]
    fn grid_boundaries() {
        let d = grid(3, 3);
        let (left, right) = boundary_chains(&d);
        // (i, j) has id 3i + j.
        assert_eq!(left, vec![0, 3, 6, 7, 8]);
        assert_eq!(right, vec![0, 1, 2, 5, 8]);
    }

    #[test]
    fn singleton_boundaries() {
        let d = chain(1);
        assert_eq!(boundary_chains(&d), (vec![0], vec![0]));
        assert!(enumerate_4cells(&d).unwrap().is_empty());
    }

    #[test]
    fn grid_cells() {
        assert_eq!(enumerate_4cells(&grid(2, 2)).unwrap(), vec![FourCell { o: 0, c: 2, d: 1, i: 3 }]);
        let cells = enumerate_4cells(&grid(3, 3)).unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0], FourCell { o: 0, c: 3, d: 1, i: 4 });
        for cell in &cells {
            let l = grid(3, 3).lattice().clone();
            assert_eq!(l.lub_glb(cell.c, cell.d), (cell.i, cell.o));
        }
        assert!(enumerate_4cells(&chain(4)).unwrap().is_empty());
    }

    #[test]
    fn pentagon_face_is_rejected() {
        let raw: RawDiagram<Rational> = RawDiagram {
            positions: vec![
                Coord::from_ints(0, 0),
                Coord::from_ints(0, 1),
                Coord::from_ints(0, 2),
                Coord::from_ints(1, 0),
                Coord::from_ints(1, 2),
            ],
            covers: vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        };
        let d = raw.into_diagram().unwrap();
        assert!(matches!(enumerate_4cells(&d), Err(FaceError::NotQuadrilateral(v)) if v.len() == 5));
    }

    #[test]
    fn corners_of_small_diagrams() {
        assert!(find_corners(&chain(4)).is_empty());
        let corners = find_corners(&grid(2, 2));
        assert_eq!(corners.len(), 2);
        assert_eq!((corners[0].a, corners[0].side), (2, Side::Left));
        assert_eq!((corners[1].a, corners[1].side), (1, Side::Right));
        assert_eq!(corners[0].a_star, 0);
        assert_eq!(corners[0].a_upper, 3);
        let corners: Vec<Elem> = find_corners(&grid(3, 3)).iter().map(|c| c.a).collect();
        assert_eq!(corners, vec![6, 2]);
    }

    #[test]
    fn rectangularity() {
        assert_eq!(check_rectangular(&grid(3, 3)), Ok((6, 2)));
        assert_eq!(check_rectangular(&grid(2, 4)), Ok((4, 3)));
        let err = check_rectangular(&chain(3)).unwrap_err();
        assert!(err.to_string().starts_with("no doubly irreducible boundary element pair"));
    }
}
