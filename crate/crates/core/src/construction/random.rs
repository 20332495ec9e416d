//! Seeded random construction scripts.

use super::script::{CellRef, ConstructionScript, CornerRef, Step};
use super::{fork_extend, grid, remove_corner, ConstructionError};
use crate::faces::{enumerate_4cells, find_corners};
use crate::Rational;

/// SplitMix64 (Steele, Lea & Flood). Small, fast and fully specified, so
/// scripts are reproducible from the seed alone.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` by multiply-shift; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        ((u128::from(self.next_u64()) * n as u128) >> 64) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomScript {
    pub script: ConstructionScript,
    /// 1-based ordinals of removals skipped for lack of corners.
    pub skipped_removals: Vec<usize>,
}

/// A grid, then `forks` forks at uniformly chosen cells, then up to
/// `removals` removals of uniformly chosen corners.
pub fn random_script(
    rows: usize,
    cols: usize,
    forks: usize,
    removals: usize,
    seed: u64,
) -> Result<RandomScript, ConstructionError> {
    let mut rng = SplitMix64::new(seed);
    let mut diagram = grid::<Rational>(rows, cols)?;
    let mut steps = vec![Step::Grid { rows, cols }];
    for _ in 0..forks {
        let cells = enumerate_4cells(&diagram)?;
        let k = rng.below(cells.len());
        diagram = fork_extend(&diagram, cells[k])?.diagram;
        steps.push(Step::Fork(CellRef::Index(k)));
    }
    let mut skipped_removals = Vec::new();
    for r in 0..removals {
        let corners = find_corners(&diagram);
        if corners.is_empty() {
            skipped_removals.push(r + 1);
            continue;
        }
        let a = corners[rng.below(corners.len())].a;
        diagram = remove_corner(&diagram, a)?.0;
        steps.push(Step::Remove(CornerRef::Id(a)));
    }
    Ok(RandomScript { script: ConstructionScript::new(steps), skipped_removals })
}
