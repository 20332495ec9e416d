//! Brute-force reference implementations used to cross-check the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use czedli_core::Elem;

/// The full order relation, computed by transitive closure of the covers.
pub struct BruteOrder {
    n: usize,
    leq: Vec<Vec<bool>>,
}

impl BruteOrder {
    pub fn new(n: usize, covers: &[(Elem, Elem)]) -> Self {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(lo, hi) in covers {
            leq[lo][hi] = true;
        }
        for k in 0..n {
            let via = leq[k].clone();
            for row in leq.iter_mut() {
                if row[k] {
                    for (y, &reach) in via.iter().enumerate() {
                        row[y] |= reach;
                    }
                }
            }
        }
        BruteOrder { n, leq }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn is_cover(&self, x: Elem, y: Elem) -> bool {
        self.lt(x, y) && !(0..self.n).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    pub fn upper_cover_count(&self, x: Elem) -> usize {
        (0..self.n).filter(|&y| self.is_cover(x, y)).count()
    }

    /// Least upper bound, if one exists.
    pub fn lub(&self, x: Elem, y: Elem) -> Option<Elem> {
        let ub: Vec<Elem> = (0..self.n).filter(|&z| self.leq(x, z) && self.leq(y, z)).collect();
        ub.iter().copied().find(|&z| ub.iter().all(|&w| self.leq(z, w)))
    }

    pub fn glb(&self, x: Elem, y: Elem) -> Option<Elem> {
        let lb: Vec<Elem> = (0..self.n).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect();
        lb.iter().copied().find(|&z| lb.iter().all(|&w| self.leq(w, z)))
    }
}

/// Role order in the template: o, a, b, c, d, t, i.
const S7_COVERS: [(usize, usize); 9] = [(0, 1), (0, 2), (1, 3), (2, 4), (1, 5), (2, 5), (5, 6), (3, 6), (4, 6)];
const T: usize = 5;
const I: usize = 6;

/// One S7 hit: its element set and its middle edge.
pub type S7Hit = (Vec<Elem>, Elem, Elem);

/// Every 7-subset, every assignment of roles with `o` the minimum and `i` the
/// maximum, checked to be a lattice embedding of the template.
pub fn brute_s7s(order: &BruteOrder, strict: bool) -> BTreeSet<S7Hit> {
    let template = bound_tables(&BruteOrder::new(7, &S7_COVERS));
    let table = bound_tables(order);
    let n = order.len();
    let mut hits = BTreeSet::new();
    if n < 7 {
        return hits;
    }
    for subset in combinations(n, 7) {
        let Some(&o) = subset.iter().find(|&&x| subset.iter().all(|&y| order.leq(x, y))) else {
            continue;
        };
        let Some(&i) = subset.iter().find(|&&x| subset.iter().all(|&y| order.leq(y, x))) else {
            continue;
        };
        let middle: Vec<Elem> = subset.iter().copied().filter(|&x| x != o && x != i).collect();
        for perm in permutations(&middle) {
            let map = [o, perm[0], perm[1], perm[2], perm[3], perm[4], i];
            if !embeds(&template, &table, &map) {
                continue;
            }
            let (t, top) = (map[T], map[I]);
            let mode_ok = if strict {
                S7_COVERS.iter().all(|&(p, q)| order.is_cover(map[p], map[q]))
            } else {
                order.is_cover(t, top)
            };
            if mode_ok && order.upper_cover_count(t) == 1 {
                hits.insert((subset.clone(), t, top));
            }
        }
    }
    hits
}

type Bounds = Vec<Vec<(Option<Elem>, Option<Elem>)>>;

fn bound_tables(order: &BruteOrder) -> Bounds {
    (0..order.len()).map(|x| (0..order.len()).map(|y| (order.lub(x, y), order.glb(x, y))).collect()).collect()
}

fn embeds(template: &Bounds, table: &Bounds, map: &[Elem; 7]) -> bool {
    for p in 0..7 {
        for q in p + 1..7 {
            let (Some(j), Some(m)) = template[p][q] else {
                return false;
            };
            if table[map[p]][map[q]] != (Some(map[j]), Some(map[m])) {
                return false;
            }
        }
    }
    true
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn permutations(items: &[Elem]) -> Vec<Vec<Elem>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Bounded faces of a connected plane graph by Euler's formula.
pub fn euler_bounded_faces(vertices: usize, edges: usize) -> usize {
    edges + 1 - vertices
}

/// `x ∧ y ≺ x` implies `y ≺ x ∨ y`, checked pairwise.
pub fn brute_semimodular(order: &BruteOrder) -> bool {
    let n = order.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (j, m) = (order.lub(x, y).unwrap(), order.glb(x, y).unwrap());
            !order.is_cover(m, x) || order.is_cover(y, j)
        })
    })
}

/// Three pairwise incomparable elements with a common pairwise join and meet.
pub fn brute_has_m3(order: &BruteOrder) -> bool {
    let n = order.len();
    let incomparable = |x: Elem, y: Elem| !order.leq(x, y) && !order.leq(y, x);
    combinations(n, 3).into_iter().any(|v| {
        let (x, y, z) = (v[0], v[1], v[2]);
        incomparable(x, y)
            && incomparable(y, z)
            && incomparable(x, z)
            && order.lub(x, y) == order.lub(y, z)
            && order.lub(x, y) == order.lub(x, z)
            && order.glb(x, y) == order.glb(y, z)
            && order.glb(x, y) == order.glb(x, z)
    })
}

/// Every intermediate diagram of a batch of small random scripts, plus the
/// named examples, restricted to at most `max` elements.
pub fn small_suite(max: usize) -> Vec<czedli_core::ExactDiagram> {
    use czedli_core::construction::{random_script, run_script, ConstructionScript};
    let mut out = Vec::new();
    let mut push = |d: czedli_core::ExactDiagram| {
        if d.len() <= max {
            out.push(d);
        }
    };
    for m in 2..=7 {
        for n in 2..=7 {
            if m * n <= max {
                push(czedli_core::grid(m, n).unwrap());
            }
        }
    }
    let l3: ConstructionScript = "grid 2 2\nfork index 0\nfork cell 0 6\n".parse().unwrap();
    push(run_script(&l3).unwrap().diagram);
    for seed in 1..=60u64 {
        let rows = 2 + (seed % 3) as usize;
        let cols = 2 + (seed / 3 % 2) as usize;
        let script = random_script(rows, cols, 1 + (seed % 3) as usize, (seed % 4) as usize, seed).unwrap().script;
        for len in 1..=script.steps.len() {
            let prefix = ConstructionScript::new(script.steps[..len].to_vec());
            if let Ok(run) = run_script(&prefix) {
                push(run.diagram);
            }
        }
    }
    out
}
