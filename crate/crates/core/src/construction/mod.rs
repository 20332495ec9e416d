//! Grids, fork extensions and corner removals.
//!
//! Every slim rectangular lattice arises from a grid by a sequence of fork
//! extensions, and every slim planar semimodular lattice from a rectangular
//! one by removing corners. The functions here perform those steps on
//! diagrams, placing new elements so the result stays a Czédli diagram.

mod random;
mod script;

use std::collections::BTreeSet;

pub use random::{random_script, RandomScript, SplitMix64};
pub use script::{
    run_script, CellRef, ConstructionScript, CornerRef, ScriptError, ScriptErrorKind, ScriptParseError, ScriptRun,
    Step, StepLog, StepSummary,
};

use crate::faces::{enumerate_4cells, find_corners, FaceError, FourCell};
use crate::geometry::{Coord, Diagram, DiagramError, EdgeClass};
use crate::lattice::{Elem, Lattice};
use crate::scalar::Scalar;

/// Old id → new id; `None` for a deleted element.
pub type IdMap = Vec<Option<Elem>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("grid dimensions must both be at least 2, got {rows}x{cols}")]
    GridTooSmall { rows: usize, cols: usize },
    #[error("({o}, {i}) is not a 4-cell of the diagram")]
    NotAFace { o: Elem, i: Elem },
    #[error("element {0} is not a corner")]
    NotACorner(Elem),
    #[error(transparent)]
    Faces(#[from] FaceError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn internal(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Internal(msg.into())
}

/// The direct product of an `m`-chain and an `n`-chain. Element `(i, j)` has
/// id `i * n + j` and sits at `u = j`, `v = i`.
pub fn grid<S: Scalar>(rows: usize, cols: usize) -> Result<Diagram<S>, ConstructionError> {
    if rows < 2 || cols < 2 {
        return Err(ConstructionError::GridTooSmall { rows, cols });
    }
    let mut covers = Vec::new();
    let mut pos = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            pos.push(Coord::from_ints(j as i64, i as i64));
            if i + 1 < rows {
                covers.push((i * cols + j, (i + 1) * cols + j));
            }
            if j + 1 < cols {
                covers.push((i * cols + j, i * cols + j + 1));
            }
        }
    }
    let lattice = Lattice::from_covers(rows * cols, &covers).map_err(|e| internal(e.to_string()))?;
    Diagram::new(lattice, pos).map_err(|e| internal(e.to_string()))
}

/// Result of one fork extension.
#[derive(Debug, Clone)]
pub struct ForkOutcome<S> {
    pub diagram: Diagram<S>,
    pub id_map: IdMap,
    pub cell: FourCell,
    /// New element inside the edge `[o, c]`.
    pub a: Elem,
    /// New element inside the edge `[o, d]`.
    pub b: Elem,
    /// New middle element, joined to `i` by a steep edge.
    pub t: Elem,
    pub left_trajectory: Vec<Elem>,
    pub right_trajectory: Vec<Elem>,
}

struct Edges(BTreeSet<(Elem, Elem)>);

impl Edges {
    fn subdivide(&mut self, lo: Elem, mid: Elem, hi: Elem) -> Result<(), ConstructionError> {
        if !self.0.remove(&(lo, hi)) {
            return Err(internal(format!("edge ({lo}, {hi}) missing during subdivision")));
        }
        self.0.insert((lo, mid));
        self.0.insert((mid, hi));
        Ok(())
    }
}

/// Smallest positive gap `key(p) - key(o)` over all elements, halved.
fn half_gap<S: Scalar>(d: &Diagram<S>, o: Elem, key: impl Fn(&Coord<S>) -> &S) -> Option<S> {
    let base = key(d.pos(o));
    d.positions().iter().map(|p| key(p).clone() - base.clone()).filter(|g| g.is_positive()).min().map(|g| g.half())
}

/// Looks up the cell with bottom `o` and top `i`.
pub fn find_cell<S: Scalar>(d: &Diagram<S>, o: Elem, i: Elem) -> Result<FourCell, ConstructionError> {
    enumerate_4cells(d)?.into_iter().find(|c| c.o == o && c.i == i).ok_or(ConstructionError::NotAFace { o, i })
}

/// Fork extension of `d` at `cell`.
///
/// `a` goes on `[o, c]` and `b` on `[o, d]`, each half the smallest positive
/// `v`- (resp. `u`-) gap above `o`, so the strip between `o` and the new
/// normal line holds no old element. `t` sits where the normal-up line
/// through `a` meets the normal-down line through `b`, and is joined to `i`
/// by a steep edge. The subdivision then runs down-left and down-right
/// through neighbouring cells until it reaches the boundary.
pub fn fork_extend<S: Scalar>(d: &Diagram<S>, cell: FourCell) -> Result<ForkOutcome<S>, ConstructionError> {
    if !enumerate_4cells(d)?.contains(&cell) {
        return Err(ConstructionError::NotAFace { o: cell.o, i: cell.i });
    }
    let FourCell { o, c, d: dd, i } = cell;
    let l = d.lattice();
    if EdgeClass::of(d.pos(o), d.pos(c)) != EdgeClass::NormalDown
        || EdgeClass::of(d.pos(o), d.pos(dd)) != EdgeClass::NormalUp
    {
        return Err(internal(format!("lower edges of cell ({o}, {i}) are not normal")));
    }

    let dv = half_gap(d, o, |p| &p.v).ok_or_else(|| internal("no element above o in v"))?;
    let du = half_gap(d, o, |p| &p.u).ok_or_else(|| internal("no element above o in u"))?;
    let (uo, vo) = (d.pos(o).u.clone(), d.pos(o).v.clone());
    let va = vo.clone() + dv;
    let ub = uo.clone() + du;

    if d.positions().iter().any(|p| p.v > vo && p.v < va) || d.positions().iter().any(|p| p.u > uo && p.u < ub) {
        return Err(internal("placement strip is not empty"));
    }

    let mut pos = d.positions().to_vec();
    let mut edges = Edges(l.covers().into_iter().collect());
    let push = |pos: &mut Vec<Coord<S>>, at: Coord<S>| {
        pos.push(at);
        pos.len() - 1
    };

    let a = push(&mut pos, Coord::new(uo.clone(), va.clone()));
    let b = push(&mut pos, Coord::new(ub.clone(), vo.clone()));
    let t = push(&mut pos, Coord::new(ub.clone(), va.clone()));
    let tp = &pos[t];
    if !(uo < tp.u && tp.u < d.pos(dd).u && vo < tp.v && tp.v < d.pos(c).v) {
        return Err(internal("fork middle is not inside the cell"));
    }
    edges.subdivide(o, a, c)?;
    edges.subdivide(o, b, dd)?;
    edges.0.insert((a, t));
    edges.0.insert((b, t));
    edges.0.insert((t, i));

    // Left: the subdivided edge [p, q] is the upper-right edge of the next cell.
    let mut left_trajectory = Vec::new();
    let (mut p, mut q, mut prev) = (o, c, a);
    loop {
        let lower = d.lower_covers(q);
        let k = lower.iter().position(|&x| x == p).ok_or_else(|| internal("trajectory lost its edge"))?;
        if k == 0 {
            break;
        }
        let x = lower[k - 1];
        let e0 = l.meet(x, p);
        if !(l.is_cover(e0, x) && l.is_cover(e0, p)) {
            return Err(internal(format!("cell below ({x}, {p}) is not cover-complete")));
        }
        if EdgeClass::of(d.pos(e0), d.pos(x)) != EdgeClass::NormalDown {
            return Err(internal(format!("steep edge ({e0}, {x}) on trajectory")));
        }
        let y = push(&mut pos, Coord::new(d.pos(e0).u.clone(), va.clone()));
        edges.subdivide(e0, y, x)?;
        edges.0.insert((y, prev));
        left_trajectory.push(y);
        (p, q, prev) = (e0, x, y);
    }

    let mut right_trajectory = Vec::new();
    let (mut p, mut q, mut prev) = (o, dd, b);
    loop {
        let lower = d.lower_covers(q);
        let k = lower.iter().position(|&x| x == p).ok_or_else(|| internal("trajectory lost its edge"))?;
        if k + 1 == lower.len() {
            break;
        }
        let x = lower[k + 1];
        let e0 = l.meet(x, p);
        if !(l.is_cover(e0, x) && l.is_cover(e0, p)) {
            return Err(internal(format!("cell below ({p}, {x}) is not cover-complete")));
        }
        if EdgeClass::of(d.pos(e0), d.pos(x)) != EdgeClass::NormalUp {
            return Err(internal(format!("steep edge ({e0}, {x}) on trajectory")));
        }
        let y = push(&mut pos, Coord::new(ub.clone(), d.pos(e0).v.clone()));
        edges.subdivide(e0, y, x)?;
        edges.0.insert((y, prev));
        right_trajectory.push(y);
        (p, q, prev) = (e0, x, y);
    }

    let covers: Vec<(Elem, Elem)> = edges.0.into_iter().collect();
    let lattice =
        Lattice::from_covers(pos.len(), &covers).map_err(|e| internal(format!("fork produced a non-lattice: {e}")))?;
    let diagram = Diagram::new(lattice, pos)
        .map_err(|e: DiagramError| internal(format!("fork produced an invalid diagram: {e}")))?;
    let id_map = (0..d.len()).map(Some).collect();
    Ok(ForkOutcome { diagram, id_map, cell, a, b, t, left_trajectory, right_trajectory })
}

/// Deletes the corner `a` and its two edges; other positions are kept and
/// ids above `a` shift down by one.
pub fn remove_corner<S: Scalar>(d: &Diagram<S>, a: Elem) -> Result<(Diagram<S>, IdMap), ConstructionError> {
    let corner = find_corners(d).into_iter().find(|c| c.a == a).ok_or(ConstructionError::NotACorner(a))?;
    let l = d.lattice();
    // a_* is meet-reducible, so a_* < z < a^* for some z other than a and
    // no new cover is needed.
    let bridged = (0..d.len()).any(|z| z != a && l.lt(corner.a_star, z) && l.lt(z, corner.a_upper));
    if !bridged {
        return Err(internal(format!("removing corner {a} would need a new cover")));
    }
    let (id_map, covers) = l.compacted_covers(a, &[]);
    let pos: Vec<Coord<S>> =
        d.positions().iter().enumerate().filter(|&(x, _)| x != a).map(|(_, p)| p.clone()).collect();
    let lattice = Lattice::from_covers(pos.len(), &covers)
        .map_err(|e| internal(format!("corner removal produced a non-lattice: {e}")))?;
    let diagram =
        Diagram::new(lattice, pos).map_err(|e| internal(format!("corner removal produced an invalid diagram: {e}")))?;
    Ok((diagram, id_map))
}
