//! The Czédli-diagram condition: an edge is steep exactly when it is the
//! middle edge of a covering `S7`, and every other edge is normal.

use std::collections::BTreeSet;
use std::fmt;

use crate::geometry::{Diagram, EdgeClass};
use crate::lattice::Elem;
use crate::s7::{s7_middles, S7Mode};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeProblem {
    /// Steep edge that is not the middle of any covering `S7`.
    SteepNotMiddle,
    /// Middle edge of a covering `S7` drawn normal or invalid.
    MiddleNotSteep,
    /// Neither normal nor steep.
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffendingEdge {
    pub edge: (Elem, Elem),
    pub class: EdgeClass,
    pub problem: EdgeProblem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CzedliReport {
    pub mode: S7Mode,
    pub offending: Vec<OffendingEdge>,
}

impl OffendingEdge {
    pub fn expected(&self, mode: S7Mode) -> String {
        match self.problem {
            EdgeProblem::SteepNotMiddle => {
                format!("steep but not a {mode} middle; expected normal")
            }
            EdgeProblem::MiddleNotSteep => format!("{mode} middle; expected steep"),
            EdgeProblem::Invalid => "expected normal or steep".to_string(),
        }
    }
}

impl fmt::Display for CzedliReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.offending.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "edge ({}, {}) is {}: {}", e.edge.0, e.edge.1, e.class, e.expected(self.mode))?;
        }
        Ok(())
    }
}

impl std::error::Error for CzedliReport {}

/// Passes iff the steep edges are exactly the covering-`S7` middles under
/// `mode` and every other edge is normal.
pub fn check_czedli<S: Scalar>(d: &Diagram<S>, mode: S7Mode) -> Result<(), CzedliReport> {
    let middles: BTreeSet<(Elem, Elem)> = s7_middles(d.lattice(), mode);
    let mut offending = Vec::new();
    for (edge, class) in d.classified_edges() {
        let is_middle = middles.contains(&edge);
        let problem = match class {
            EdgeClass::Invalid => Some(EdgeProblem::Invalid),
            EdgeClass::Steep if !is_middle => Some(EdgeProblem::SteepNotMiddle),
            EdgeClass::NormalUp | EdgeClass::NormalDown if is_middle => Some(EdgeProblem::MiddleNotSteep),
            _ => None,
        };
        if let Some(problem) = problem {
            offending.push(OffendingEdge { edge, class, problem });
        }
    }
    if offending.is_empty() {
        Ok(())
    } else {
        Err(CzedliReport { mode, offending })
    }
}
