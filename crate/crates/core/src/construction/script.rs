//! Construction scripts: a grid followed by forks and corner removals.
//!
//! Text form, one step per line, `#` starts a comment:
//!
//! ```text
//! grid 3 3
//! fork index 0
//! fork cell 4 8
//! remove id 5
//! remove side left
//! ```

use std::fmt;
use std::str::FromStr;

use super::{find_cell, fork_extend, grid, remove_corner, ConstructionError, IdMap};
use crate::faces::{enumerate_4cells, find_corners, Side};
use crate::geometry::{Diagram, EdgeClass};
use crate::lattice::Elem;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellRef {
    /// Cell with bottom `o` and top `i`.
    Ids { o: Elem, i: Elem },
    /// Position in the sorted 4-cell list.
    Index(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CornerRef {
    Id(Elem),
    /// Bottom-most corner on that side.
    Side(Side),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Grid { rows: usize, cols: usize },
    Fork(CellRef),
    Remove(CornerRef),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Grid { rows, cols } => write!(f, "grid {rows} {cols}"),
            Step::Fork(CellRef::Ids { o, i }) => write!(f, "fork cell {o} {i}"),
            Step::Fork(CellRef::Index(k)) => write!(f, "fork index {k}"),
            Step::Remove(CornerRef::Id(a)) => write!(f, "remove id {a}"),
            Step::Remove(CornerRef::Side(side)) => write!(f, "remove side {side}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ConstructionScript {
    pub steps: Vec<Step>,
}

impl ConstructionScript {
    pub fn new(steps: Vec<Step>) -> Self {
        ConstructionScript { steps }
    }
}

/// Canonical text: one step per line, single spaces, trailing newline.
impl fmt::Display for ConstructionScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FromStr for ConstructionScript {
    type Err = ScriptParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let words: Vec<(usize, &str)> = word_columns(line);
            if words.is_empty() {
                continue;
            }
            let err = |column: usize, message: String| ScriptParseError { line: k + 1, column, message };
            let num = |idx: usize| -> Result<usize, ScriptParseError> {
                let (col, w) = words.get(idx).copied().ok_or_else(|| err(line.len() + 1, "missing number".into()))?;
                w.parse().map_err(|_| err(col, format!("expected a non-negative integer, found {w:?}")))
            };
            let arity = |n: usize| -> Result<(), ScriptParseError> {
                match words.get(n) {
                    Some(&(col, w)) => Err(err(col, format!("unexpected trailing token {w:?}"))),
                    None => Ok(()),
                }
            };
            let kw = |idx: usize| words.get(idx).map(|&(_, w)| w);
            let step = match (kw(0), kw(1)) {
                (Some("grid"), _) => {
                    arity(3)?;
                    Step::Grid { rows: num(1)?, cols: num(2)? }
                }
                (Some("fork"), Some("cell")) => {
                    arity(4)?;
                    Step::Fork(CellRef::Ids { o: num(2)?, i: num(3)? })
                }
                (Some("fork"), Some("index")) => {
                    arity(3)?;
                    Step::Fork(CellRef::Index(num(2)?))
                }
                (Some("remove"), Some("id")) => {
                    arity(3)?;
                    Step::Remove(CornerRef::Id(num(2)?))
                }
                (Some("remove"), Some("side")) => {
                    arity(3)?;
                    let (col, w) = words.get(2).copied().ok_or_else(|| err(line.len() + 1, "missing side".into()))?;
                    Step::Remove(CornerRef::Side(w.parse().map_err(|m| err(col, m))?))
                }
                (Some("fork" | "remove"), other) => {
                    let col = words.get(1).map_or(line.len() + 1, |w| w.0);
                    return Err(err(col, format!("unknown reference kind {:?}", other.unwrap_or(""))));
                }
                (Some(other), _) => return Err(err(words[0].0, format!("unknown step {other:?}"))),
                (None, _) => unreachable!("empty lines are skipped"),
            };
            steps.push(step);
        }
        Ok(ConstructionScript { steps })
    }
}

/// Whitespace-separated words with their 1-based columns.
fn word_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..idx]));
                start = None;
            }
            (false, None) => start = Some(idx),
            _ => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepSummary {
    Grid,
    Fork { o: Elem, c: Elem, d: Elem, i: Elem, a: Elem, b: Elem, t: Elem, left: usize, right: usize },
    Remove { corner: Elem },
}

/// Per-step record of a script run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepLog {
    /// 1-based step number.
    pub step: usize,
    pub summary: StepSummary,
    pub elements: usize,
    pub edges: usize,
    pub cells: usize,
    pub id_map: IdMap,
}

#[derive(Debug, Clone)]
pub struct ScriptRun<S> {
    pub diagram: Diagram<S>,
    pub log: Vec<StepLog>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptErrorKind {
    #[error("empty script")]
    Empty,
    #[error("grid-not-first")]
    GridNotFirst,
    #[error("grid may appear only once")]
    GridRepeated,
    #[error("unresolved cell reference {0:?}")]
    UnresolvedCell(CellRef),
    #[error("unresolved corner reference {0:?}")]
    UnresolvedCorner(CornerRef),
    #[error(transparent)]
    Construction(ConstructionError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {kind}")]
pub struct ScriptError {
    pub step: usize,
    pub kind: ScriptErrorKind,
}

/// Runs every step, validating each intermediate diagram.
pub fn run_script<S: Scalar>(script: &ConstructionScript) -> Result<ScriptRun<S>, ScriptError> {
    let fail = |step: usize, kind: ScriptErrorKind| ScriptError { step, kind };
    let construction =
        |step: usize| move |e: ConstructionError| ScriptError { step, kind: ScriptErrorKind::Construction(e) };

    let mut steps = script.steps.iter().enumerate().map(|(k, s)| (k + 1, s));
    let (first, mut diagram) = match steps.next() {
        None => return Err(fail(0, ScriptErrorKind::Empty)),
        Some((k, Step::Grid { rows, cols })) => (k, grid::<S>(*rows, *cols).map_err(construction(k))?),
        Some((k, _)) => return Err(fail(k, ScriptErrorKind::GridNotFirst)),
    };
    let mut log = vec![record(first, StepSummary::Grid, &diagram, (0..diagram.len()).map(Some).collect())
        .map_err(construction(first))?];

    for (k, step) in steps {
        let (next, summary, id_map) = match *step {
            Step::Grid { .. } => return Err(fail(k, ScriptErrorKind::GridRepeated)),
            Step::Fork(cref) => {
                let cell = match cref {
                    CellRef::Ids { o, i } => {
                        if o >= diagram.len() || i >= diagram.len() {
                            return Err(fail(k, ScriptErrorKind::UnresolvedCell(cref)));
                        }
                        find_cell(&diagram, o, i).map_err(|e| match e {
                            ConstructionError::NotAFace { .. } => fail(k, ScriptErrorKind::UnresolvedCell(cref)),
                            other => construction(k)(other),
                        })?
                    }
                    CellRef::Index(idx) => *enumerate_4cells(&diagram)
                        .map_err(|e| construction(k)(e.into()))?
                        .get(idx)
                        .ok_or_else(|| fail(k, ScriptErrorKind::UnresolvedCell(cref)))?,
                };
                let out = fork_extend(&diagram, cell).map_err(construction(k))?;
                let summary = StepSummary::Fork {
                    o: cell.o,
                    c: cell.c,
                    d: cell.d,
                    i: cell.i,
                    a: out.a,
                    b: out.b,
                    t: out.t,
                    left: out.left_trajectory.len(),
                    right: out.right_trajectory.len(),
                };
                (out.diagram, summary, out.id_map)
            }
            Step::Remove(cref) => {
                let corners = find_corners(&diagram);
                let a = match cref {
                    CornerRef::Id(a) => corners.iter().find(|c| c.a == a),
                    CornerRef::Side(side) => corners.iter().find(|c| c.side == side),
                }
                .ok_or_else(|| fail(k, ScriptErrorKind::UnresolvedCorner(cref)))?
                .a;
                let (next, id_map) = remove_corner(&diagram, a).map_err(construction(k))?;
                (next, StepSummary::Remove { corner: a }, id_map)
            }
        };
        check_steep_edges_kept(&diagram, &next, &id_map).map_err(construction(k))?;
        log.push(record(k, summary, &next, id_map).map_err(construction(k))?);
        diagram = next;
    }
    Ok(ScriptRun { diagram, log })
}

fn record<S: Scalar>(
    step: usize,
    summary: StepSummary,
    d: &Diagram<S>,
    id_map: IdMap,
) -> Result<StepLog, ConstructionError> {
    Ok(StepLog { step, summary, elements: d.len(), edges: d.edges().len(), cells: enumerate_4cells(d)?.len(), id_map })
}

/// Steep edges are never subdivided by a later step. A removal may still
/// delete one together with its endpoint.
fn check_steep_edges_kept<S: Scalar>(
    before: &Diagram<S>,
    after: &Diagram<S>,
    id_map: &IdMap,
) -> Result<(), ConstructionError> {
    for ((lo, hi), class) in before.classified_edges() {
        if class != EdgeClass::Steep {
            continue;
        }
        let kept = match (id_map[lo], id_map[hi]) {
            (Some(p), Some(q)) => after.classify_edge(p, q) == Ok(EdgeClass::Steep),
            _ => true,
        };
        if !kept {
            return Err(ConstructionError::Internal(format!("steep edge ({lo}, {hi}) did not survive the step")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn parse_and_print() {
        let text =
            "# demo\n  grid   2 3 \nfork index 0   # first cell\n\nfork cell 0 4\nremove id 5\nremove side left\n";
        let script: ConstructionScript = text.parse().unwrap();
        assert_eq!(
            script.steps,
            vec![
                Step::Grid { rows: 2, cols: 3 },
                Step::Fork(CellRef::Index(0)),
                Step::Fork(CellRef::Ids { o: 0, i: 4 }),
                Step::Remove(CornerRef::Id(5)),
                Step::Remove(CornerRef::Side(Side::Left)),
            ]
        );
        let canonical = script.to_string();
        assert_eq!(canonical, "grid 2 3\nfork index 0\nfork cell 0 4\nremove id 5\nremove side left\n");
        assert_eq!(canonical.parse::<ConstructionScript>().unwrap(), script);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = "grid 2 2\nfork index x\n".parse::<ConstructionScript>().unwrap_err();
        assert_eq!((err.line, err.column), (2, 12));
        let err = "grid 2 2\n  spoon 1\n".parse::<ConstructionScript>().unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!("grid 2 2 2".parse::<ConstructionScript>().is_err());
        assert!("remove side up".parse::<ConstructionScript>().is_err());
        assert!("fork".parse::<ConstructionScript>().is_err());
    }

    #[test]
    fn run_s7_script() {
        let script: ConstructionScript = "grid 2 2\nfork index 0\n".parse().unwrap();
        let run = run_script::<Rational>(&script).unwrap();
        assert_eq!(run.diagram.len(), 7);
        assert_eq!(run.log.len(), 2);
        assert_eq!((run.log[1].elements, run.log[1].edges, run.log[1].cells), (7, 9, 3));
    }

    #[test]
    fn grid_must_come_first() {
        let script: ConstructionScript = "fork index 0\n".parse().unwrap();
        let err = run_script::<Rational>(&script).unwrap_err();
        assert_eq!(err.kind, ScriptErrorKind::GridNotFirst);
        assert_eq!(err.to_string(), "step 1: grid-not-first");
        let script: ConstructionScript = "grid 2 2\ngrid 2 2\n".parse().unwrap();
        assert_eq!(run_script::<Rational>(&script).unwrap_err().kind, ScriptErrorKind::GridRepeated);
        assert_eq!(run_script::<Rational>(&ConstructionScript::default()).unwrap_err().kind, ScriptErrorKind::Empty);
    }

    #[test]
    fn unresolved_references_name_the_step() {
        let script: ConstructionScript = "grid 2 2\nfork index 3\n".parse().unwrap();
        let err = run_script::<Rational>(&script).unwrap_err();
        assert_eq!((err.step, err.kind), (2, ScriptErrorKind::UnresolvedCell(CellRef::Index(3))));
        let script: ConstructionScript = "grid 2 2\nremove id 3\n".parse().unwrap();
        assert_eq!(run_script::<Rational>(&script).unwrap_err().step, 2);
        let script: ConstructionScript = "grid 2 2\nfork cell 0 9\n".parse().unwrap();
        assert!(matches!(run_script::<Rational>(&script).unwrap_err().kind, ScriptErrorKind::UnresolvedCell(_)));
    }

    #[test]
    fn remove_by_side() {
        let script: ConstructionScript = "grid 2 2\nremove side right\n".parse().unwrap();
        let run = run_script::<Rational>(&script).unwrap();
        assert_eq!(run.log[1].summary, StepSummary::Remove { corner: 1 });
        assert_eq!(run.diagram.len(), 3);
    }
}
