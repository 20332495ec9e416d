//! Exact diagram geometry.
//!
//! Positions live in a rotated basis: `u` runs along the 45° direction and
//! `v` along the 135° direction, so the Cartesian point is
//! `x = u - v`, `y = u + v`. In this basis a normal-up edge has `Δv = 0`, a
//! normal-down edge has `Δu = 0`, and a steep edge has both positive.

use std::cmp::Ordering;
use std::fmt;

use crate::lattice::{Elem, Lattice, LatticeError};
use crate::scalar::{from_int, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coord<S> {
    pub u: S,
    pub v: S,
}

impl<S: Scalar> Coord<S> {
    pub fn new(u: S, v: S) -> Self {
        Coord { u, v }
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        Coord { u: from_int(u), v: from_int(v) }
    }

    pub fn x(&self) -> S {
        self.u.clone() - self.v.clone()
    }

    pub fn y(&self) -> S {
        self.u.clone() + self.v.clone()
    }

    /// Cartesian `(x, y)` as floats, for rendering only.
    pub fn cartesian_f64(&self) -> (f64, f64) {
        (self.x().approx_f64(), self.y().approx_f64())
    }
}

impl<S: fmt::Display> fmt::Display for Coord<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u={}, v={})", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeClass {
    /// Slope 45°.
    NormalUp,
    /// Slope 135°.
    NormalDown,
    /// Slope strictly between 45° and 135°.
    Steep,
    Invalid,
}

impl EdgeClass {
    pub fn of<S: Scalar>(lo: &Coord<S>, hi: &Coord<S>) -> Self {
        Self::from_deltas(hi.u.clone() - lo.u.clone(), hi.v.clone() - lo.v.clone())
    }

    fn from_deltas<S: Scalar>(du: S, dv: S) -> Self {
        match (du.is_positive(), du.is_zero(), dv.is_positive(), dv.is_zero()) {
            (true, _, _, true) => EdgeClass::NormalUp,
            (_, true, true, _) => EdgeClass::NormalDown,
            (true, _, true, _) => EdgeClass::Steep,
            _ => EdgeClass::Invalid,
        }
    }

    pub fn is_normal(self) -> bool {
        matches!(self, EdgeClass::NormalUp | EdgeClass::NormalDown)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::NormalUp => "normal-up",
            EdgeClass::NormalDown => "normal-down",
            EdgeClass::Steep => "steep",
            EdgeClass::Invalid => "invalid",
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Plain diagram data: element positions and a cover list, not yet checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDiagram<S> {
    pub positions: Vec<Coord<S>>,
    pub covers: Vec<(Elem, Elem)>,
}

impl<S: Scalar> RawDiagram<S> {
    pub fn to_lattice(&self) -> Result<Lattice, LatticeError> {
        Lattice::from_covers(self.positions.len(), &self.covers)
    }

    /// Runs the lattice check and the diagram validation.
    pub fn into_diagram(self) -> Result<Diagram<S>, DiagramError> {
        let lattice = self.to_lattice()?;
        let diagram = Diagram::new_unchecked(lattice, self.positions)?;
        validate_diagram(&diagram)?;
        Ok(diagram)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("not a lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("{positions} positions given for {elements} elements")]
    PositionCount { elements: usize, positions: usize },
    #[error("invalid diagram: {0}")]
    Invalid(#[from] DiagramReport),
    #[error("({lo}, {hi}) is not a cover")]
    NotACover { lo: Elem, hi: Elem },
}

/// A lattice together with exact positions for its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram<S> {
    lattice: Lattice,
    pos: Vec<Coord<S>>,
    upper: Vec<Vec<Elem>>,
    lower: Vec<Vec<Elem>>,
}

impl<S: Scalar> Diagram<S> {
    /// Checks the position count only; geometry is left to
    /// [`validate_diagram`].
    pub fn new_unchecked(lattice: Lattice, pos: Vec<Coord<S>>) -> Result<Self, DiagramError> {
        if pos.len() != lattice.len() {
            return Err(DiagramError::PositionCount { elements: lattice.len(), positions: pos.len() });
        }
        let n = lattice.len();
        let mut upper = Vec::with_capacity(n);
        let mut lower = Vec::with_capacity(n);
        for x in 0..n {
            let mut up = lattice.upper_covers(x).to_vec();
            up.sort_by(|&p, &q| cmp_direction(&pos[x], &pos[p], &pos[q]).then(p.cmp(&q)));
            upper.push(up);
            let mut down = lattice.lower_covers(x).to_vec();
            down.sort_by(|&p, &q| cmp_direction(&pos[x], &pos[p], &pos[q]).then(p.cmp(&q)));
            lower.push(down);
        }
        Ok(Diagram { lattice, pos, upper, lower })
    }

    /// Builds and validates.
    pub fn new(lattice: Lattice, pos: Vec<Coord<S>>) -> Result<Self, DiagramError> {
        let d = Self::new_unchecked(lattice, pos)?;
        validate_diagram(&d)?;
        Ok(d)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn pos(&self, x: Elem) -> &Coord<S> {
        &self.pos[x]
    }

    pub fn positions(&self) -> &[Coord<S>] {
        &self.pos
    }

    /// Upper covers of `x`, left to right.
    pub fn upper_covers(&self, x: Elem) -> &[Elem] {
        &self.upper[x]
    }

    /// Lower covers of `x`, left to right.
    pub fn lower_covers(&self, x: Elem) -> &[Elem] {
        &self.lower[x]
    }

    pub fn edges(&self) -> Vec<(Elem, Elem)> {
        self.lattice.covers()
    }

    pub fn to_raw(&self) -> RawDiagram<S> {
        RawDiagram { positions: self.pos.clone(), covers: self.edges() }
    }

    pub fn classify_edge(&self, lo: Elem, hi: Elem) -> Result<EdgeClass, DiagramError> {
        if lo >= self.len() || hi >= self.len() || !self.lattice.is_cover(lo, hi) {
            return Err(DiagramError::NotACover { lo, hi });
        }
        Ok(EdgeClass::of(&self.pos[lo], &self.pos[hi]))
    }

    /// Every edge with its class, in cover order.
    pub fn classified_edges(&self) -> Vec<((Elem, Elem), EdgeClass)> {
        self.edges().into_iter().map(|(lo, hi)| ((lo, hi), EdgeClass::of(&self.pos[lo], &self.pos[hi]))).collect()
    }

    /// Converts every coordinate to another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Diagram<T> {
        let pos = self.pos.iter().map(|c| Coord { u: f(&c.u), v: f(&c.v) }).collect();
        Diagram::new_unchecked(self.lattice.clone(), pos).expect("same element count")
    }
}

/// Orders the directions `from→p` and `from→q` left to right, for two
/// points on the same side (both above or both below) of `from`.
/// Compares `dx / |dy|` without dividing.
fn cmp_direction<S: Scalar>(from: &Coord<S>, p: &Coord<S>, q: &Coord<S>) -> Ordering {
    let (fx, fy) = (from.x(), from.y());
    let (px, py) = (p.x() - fx.clone(), (p.y() - fy.clone()).abs());
    let (qx, qy) = (q.x() - fx, (q.y() - fy).abs());
    (px * qy).cmp(&(qx * py))
}

/// A single diagram defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicatePosition(Elem, Elem),
    CoverNotUpward(Elem, Elem),
    EdgesCross((Elem, Elem), (Elem, Elem)),
    ElementOnEdge(Elem, (Elem, Elem)),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicatePosition(p, q) => {
                write!(f, "duplicate position: elements {p} and {q}")
            }
            Violation::CoverNotUpward(p, q) => write!(f, "cover not upward: ({p}, {q})"),
            Violation::EdgesCross(e1, e2) => {
                write!(f, "edges cross: ({}, {}) and ({}, {})", e1.0, e1.1, e2.0, e2.1)
            }
            Violation::ElementOnEdge(x, e) => {
                write!(f, "element {x} lies on edge ({}, {})", e.0, e.1)
            }
        }
    }
}

/// All violations found by [`validate_diagram`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiagramReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for DiagramReport {}

/// Checks distinct positions, upward covers and straight-line planarity.
pub fn validate_diagram<S: Scalar>(d: &Diagram<S>) -> Result<(), DiagramReport> {
    let n = d.len();
    let mut violations = Vec::new();

    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by(|&p, &q| (&d.pos[p].u, &d.pos[p].v).cmp(&(&d.pos[q].u, &d.pos[q].v)));
    for w in order.windows(2) {
        if d.pos[w[0]] == d.pos[w[1]] {
            violations.push(Violation::DuplicatePosition(w[0].min(w[1]), w[0].max(w[1])));
        }
    }

    let edges = d.edges();
    for &(lo, hi) in &edges {
        if d.pos[hi].y() <= d.pos[lo].y() {
            violations.push(Violation::CoverNotUpward(lo, hi));
        }
    }

    let pts: Vec<(S, S)> = d.pos.iter().map(|c| (c.x(), c.y())).collect();
    let approx: Vec<(f64, f64)> = d.pos.iter().map(Coord::cartesian_f64).collect();
    let boxes: Vec<BBox> = edges.iter().map(|&(p, q)| BBox::of(approx[p], approx[q])).collect();

    for (k, &e1) in edges.iter().enumerate() {
        for (l, &e2) in edges.iter().enumerate().skip(k + 1) {
            if !boxes[k].may_touch(&boxes[l]) {
                continue;
            }
            if segments_conflict(&pts, e1, e2) {
                violations.push(Violation::EdgesCross(e1, e2));
            }
        }
        for x in 0..n {
            if x == e1.0 || x == e1.1 || !boxes[k].may_touch(&BBox::of(approx[x], approx[x])) {
                continue;
            }
            if on_segment(&pts[e1.0], &pts[e1.1], &pts[x]) {
                violations.push(Violation::ElementOnEdge(x, e1));
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(DiagramReport { violations })
    }
}

/// Float bounding box used only to skip pairs that are clearly apart; the
/// padding dwarfs conversion error so no real contact is ever skipped.
struct BBox {
    lo: (f64, f64),
    hi: (f64, f64),
}

impl BBox {
    fn of(p: (f64, f64), q: (f64, f64)) -> Self {
        BBox { lo: (p.0.min(q.0), p.1.min(q.1)), hi: (p.0.max(q.0), p.1.max(q.1)) }
    }

    fn may_touch(&self, other: &BBox) -> bool {
        let pad = |a: f64, b: f64| 1e-9 * (1.0 + a.abs().max(b.abs()));
        self.lo.0 <= other.hi.0 + pad(self.lo.0, other.hi.0)
            && other.lo.0 <= self.hi.0 + pad(other.lo.0, self.hi.0)
            && self.lo.1 <= other.hi.1 + pad(self.lo.1, other.hi.1)
            && other.lo.1 <= self.hi.1 + pad(other.lo.1, self.hi.1)
    }
}

fn orient<S: Scalar>(a: &(S, S), b: &(S, S), c: &(S, S)) -> Ordering {
    let lhs = (b.0.clone() - a.0.clone()) * (c.1.clone() - a.1.clone());
    let rhs = (b.1.clone() - a.1.clone()) * (c.0.clone() - a.0.clone());
    lhs.cmp(&rhs)
}

fn within<S: Scalar>(a: &S, b: &S, x: &S) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

/// `c` lies on the closed segment `ab`.
fn on_segment<S: Scalar>(a: &(S, S), b: &(S, S), c: &(S, S)) -> bool {
    orient(a, b, c) == Ordering::Equal && within(&a.0, &b.0, &c.0) && within(&a.1, &b.1, &c.1)
}

/// Two edges meet anywhere other than at one shared endpoint.
fn segments_conflict<S: Scalar>(pts: &[(S, S)], e1: (Elem, Elem), e2: (Elem, Elem)) -> bool {
    let shared = [e1.0, e1.1].iter().filter(|x| **x == e2.0 || **x == e2.1).count();
    let (a, b, c, d) = (&pts[e1.0], &pts[e1.1], &pts[e2.0], &pts[e2.1]);
    match shared {
        0 => {
            let (o1, o2) = (orient(a, b, c), orient(a, b, d));
            let (o3, o4) = (orient(c, d, a), orient(c, d, b));
            if o1 != o2
                && o3 != o4
                && o1 != Ordering::Equal
                && o2 != Ordering::Equal
                && o3 != Ordering::Equal
                && o4 != Ordering::Equal
            {
                return true;
            }
            on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
        }
        1 => {
            // Overlap beyond the shared point only if collinear and pointing the same way.
            let (s, p, q) = if e1.0 == e2.0 || e1.0 == e2.1 {
                (a, b, if e1.0 == e2.0 { d } else { c })
            } else {
                (b, a, if e1.1 == e2.0 { d } else { c })
            };
            if orient(s, p, q) != Ordering::Equal {
                return false;
            }
            let dot = (p.0.clone() - s.0.clone()) * (q.0.clone() - s.0.clone())
                + (p.1.clone() - s.1.clone()) * (q.1.clone() - s.1.clone());
            dot.is_positive()
        }
        _ => true,
    }
}
