//! Finite bounded lattices given by their cover relation.
//!
//! A [`Lattice`] is validated once on construction and is immutable
//! afterwards. The full order relation is stored as one up-set bitset per
//! element and the join/meet tables are filled eagerly.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

/// Dense element identifier, `0..n`.
pub type Elem = usize;

/// First violated lattice invariant, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("empty element set")]
    Empty,
    #[error("cover ({lo}, {hi}) refers to an element outside 0..{n}")]
    OutOfRange { lo: Elem, hi: Elem, n: usize },
    #[error("cover relation has a cycle through cover ({lo}, {hi})")]
    Cycle { lo: Elem, hi: Elem },
    #[error("not a transitive reduction: cover ({lo}, {hi}) is implied by a longer chain")]
    NotReduced { lo: Elem, hi: Elem },
    #[error("no minimum: elements {0} and {1} are both minimal")]
    NoMinimum(Elem, Elem),
    #[error("no maximum: elements {0} and {1} are both maximal")]
    NoMaximum(Elem, Elem),
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(Elem, Elem),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(Elem, Elem),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    upper: Vec<Vec<Elem>>,
    lower: Vec<Vec<Elem>>,
    up: Vec<FixedBitSet>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice").field("n", &self.n).field("covers", &self.covers()).finish()
    }
}

/// Validates a cover relation on `0..n` and builds the lattice.
pub fn check_lattice(n: usize, covers: &[(Elem, Elem)]) -> Result<Lattice, LatticeError> {
    Lattice::from_covers(n, covers)
}

impl Lattice {
    pub fn from_covers(n: usize, covers: &[(Elem, Elem)]) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut pairs = BTreeSet::new();
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(LatticeError::OutOfRange { lo, hi, n });
            }
            if lo == hi {
                return Err(LatticeError::Cycle { lo, hi });
            }
            pairs.insert((lo, hi));
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(lo, hi) in &pairs {
            upper[lo].push(hi);
            lower[hi].push(lo);
        }

        let order = topological_order(n, &upper, &lower).map_err(|(lo, hi)| LatticeError::Cycle { lo, hi })?;

        // Up-sets, filled top-down.
        let mut up: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &upper[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }

        for &(lo, hi) in &pairs {
            if upper[lo].iter().any(|&c| c != hi && up[c].contains(hi)) {
                return Err(LatticeError::NotReduced { lo, hi });
            }
        }

        let minimal: Vec<Elem> = (0..n).filter(|&x| lower[x].is_empty()).collect();
        if minimal.len() > 1 {
            return Err(LatticeError::NoMinimum(minimal[0], minimal[1]));
        }
        let maximal: Vec<Elem> = (0..n).filter(|&x| upper[x].is_empty()).collect();
        if maximal.len() > 1 {
            return Err(LatticeError::NoMaximum(maximal[0], maximal[1]));
        }
        let bottom = minimal[0];
        let top = maximal[0];

        let up_size: Vec<usize> = up.iter().map(|s| s.count_ones(..)).collect();
        let mut down: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for (x, ups) in up.iter().enumerate() {
            for y in ups.ones() {
                down[y].insert(x);
            }
        }
        let down_size: Vec<usize> = down.iter().map(|s| s.count_ones(..)).collect();

        let join = bound_table(n, &order, &upper, &up, &up_size).map_err(|(x, y)| LatticeError::NoJoin(x, y))?;
        let rev: Vec<Elem> = order.iter().rev().copied().collect();
        let meet = bound_table(n, &rev, &lower, &down, &down_size).map_err(|(x, y)| LatticeError::NoMeet(x, y))?;

        Ok(Lattice { n, upper, lower, up, join, meet, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Upper covers of `x`, ascending by id.
    pub fn upper_covers(&self, x: Elem) -> &[Elem] {
        &self.upper[x]
    }

    /// Lower covers of `x`, ascending by id.
    pub fn lower_covers(&self, x: Elem) -> &[Elem] {
        &self.lower[x]
    }

    /// All covers `(lo, hi)` in lexicographic order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for lo in 0..self.n {
            for &hi in &self.upper[lo] {
                out.push((lo, hi));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn is_cover(&self, lo: Elem, hi: Elem) -> bool {
        self.upper[lo].binary_search(&hi).is_ok()
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.n + y]
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.n + y]
    }

    /// `(join, meet)` of the pair.
    pub fn lub_glb(&self, x: Elem, y: Elem) -> (Elem, Elem) {
        (self.join(x, y), self.meet(x, y))
    }

    /// Elements `z` with `x <= z`.
    pub fn up_set(&self, x: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.up[x].ones()
    }

    pub fn is_doubly_irreducible(&self, x: Elem) -> bool {
        self.lower[x].len() == 1 && self.upper[x].len() == 1
    }

    pub fn doubly_irreducibles(&self) -> Vec<Elem> {
        (0..self.n).filter(|&x| self.is_doubly_irreducible(x)).collect()
    }

    /// First pair violating `x∧y ≺ x ⟹ y ≺ x∨y`, if any.
    pub fn check_semimodular(&self) -> Result<(), (Elem, Elem)> {
        for x in 0..self.n {
            for y in 0..self.n {
                let (j, m) = self.lub_glb(x, y);
                if self.is_cover(m, x) && !self.is_cover(y, j) {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// An `M3` sublattice `[bottom, x, y, z, top]`, or `None` when slim.
    pub fn find_m3(&self) -> Option<[Elem; 5]> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.comparable(x, y) {
                    continue;
                }
                let (j, m) = self.lub_glb(x, y);
                for z in y + 1..self.n {
                    if !self.leq(m, z) || !self.leq(z, j) || self.comparable(x, z) || self.comparable(y, z) {
                        continue;
                    }
                    if self.lub_glb(x, z) == (j, m) && self.lub_glb(y, z) == (j, m) {
                        return Some([m, x, y, z, j]);
                    }
                }
            }
        }
        None
    }

    /// Builds the sublattice obtained by deleting `removed`, compacting ids.
    /// Returns the old→new id map alongside the cover list.
    pub(crate) fn compacted_covers(
        &self,
        removed: Elem,
        extra: &[(Elem, Elem)],
    ) -> (Vec<Option<Elem>>, Vec<(Elem, Elem)>) {
        let map: Vec<Option<Elem>> = (0..self.n)
            .map(|x| match x.cmp(&removed) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            })
            .collect();
        let covers = self
            .covers()
            .into_iter()
            .chain(extra.iter().copied())
            .filter_map(|(lo, hi)| Some((map[lo]?, map[hi]?)))
            .collect();
        (map, covers)
    }
}

/// Kahn's algorithm; on failure returns a cover lying on a cycle.
fn topological_order(n: usize, upper: &[Vec<Elem>], lower: &[Vec<Elem>]) -> Result<Vec<Elem>, (Elem, Elem)> {
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut stack: Vec<Elem> = (0..n).rev().filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in upper[x].iter().rev() {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every leftover element has a leftover lower cover; walk down until a repeat.
    let start = (0..n).find(|&x| indeg[x] > 0).expect("leftover element");
    let mut seen = vec![false; n];
    let mut cur = start;
    loop {
        seen[cur] = true;
        let prev = *lower[cur].iter().find(|&&p| indeg[p] > 0).expect("leftover lower cover");
        if seen[prev] {
            return Err((prev, cur));
        }
        cur = prev;
    }
}

/// Least-upper-bound table by dynamic programming over `order` processed
/// from the far end: `x ∨ y` is the least of `x' ∨ y` over covers `x'` of `x`.
/// Called with the dual data it produces the meet table.
fn bound_table(
    n: usize,
    order: &[Elem],
    covers_away: &[Vec<Elem>],
    reach: &[FixedBitSet],
    reach_size: &[usize],
) -> Result<Vec<Elem>, (Elem, Elem)> {
    const UNSET: Elem = Elem::MAX;
    let mut table = vec![UNSET; n * n];
    for &x in order.iter().rev() {
        for y in 0..n {
            let value = if reach[x].contains(y) {
                y
            } else if reach[y].contains(x) {
                x
            } else {
                let mut best: Option<Elem> = None;
                for &xc in &covers_away[x] {
                    let cand = table[xc * n + y];
                    if cand == UNSET {
                        return Err((x.min(y), x.max(y)));
                    }
                    best = match best {
                        Some(b) if reach_size[b] >= reach_size[cand] => Some(b),
                        _ => Some(cand),
                    };
                }
                let best = best.ok_or((x.min(y), x.max(y)))?;
                if covers_away[x].iter().any(|&xc| !reach[best].contains(table[xc * n + y])) {
                    return Err((x.min(y), x.max(y)));
                }
                best
            };
            table[x * n + y] = value;
        }
    }
    Ok(table)
}
