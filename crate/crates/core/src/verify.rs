//! One-stop verification of a diagram.
//!
//! [`verify_all`] accepts arbitrary decoded data, runs every check it can,
//! and records a status per property instead of stopping at the first
//! failure. The key-value form written by [`VerificationReport::to_key_values`]
//! uses these stable keys:
//!
//! | key | value |
//! |-----|-------|
//! | `lattice`, `semimodular`, `slim`, `planar_valid`, `rectangular`, `czedli_strict`, `czedli_sublattice` | `pass` or `fail` |
//! | `<property>.witness` | failure detail, present only on failure |
//! | `elements`, `edges`, `edges.normal_up`, `edges.normal_down`, `edges.steep`, `edges.invalid` | counts |
//! | `cells`, `s7.strict`, `s7.sublattice`, `corners` | counts, or `n/a` when the input is not a valid diagram |

use std::fmt::{self, Write as _};

use crate::czedli::check_czedli;
use crate::faces::{check_rectangular, enumerate_4cells, find_corners, FaceError};
use crate::geometry::{validate_diagram, Diagram, DiagramReport, EdgeClass, RawDiagram};
use crate::s7::{find_covering_s7s, S7Mode};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
}

impl Status {
    pub fn passed(&self) -> bool {
        matches!(self, Status::Pass)
    }

    fn from_result<E: fmt::Display>(r: Result<impl Sized, E>) -> Self {
        match r {
            Ok(_) => Status::Pass,
            Err(e) => Status::Fail(e.to_string()),
        }
    }
}

/// Count vector of a valid diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Signature {
    pub elements: usize,
    pub edges: usize,
    pub normal_up: usize,
    pub normal_down: usize,
    pub steep: usize,
    pub invalid: usize,
    pub cells: usize,
    pub s7_strict: usize,
    pub s7_sublattice: usize,
    pub corners: usize,
}

impl Signature {
    pub fn normal(&self) -> usize {
        self.normal_up + self.normal_down
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("invalid diagram (validate_diagram): {0}")]
    Invalid(#[from] DiagramReport),
    #[error(transparent)]
    Faces(#[from] FaceError),
}

/// Counts for a valid diagram.
pub fn signature<S: Scalar>(d: &Diagram<S>) -> Result<Signature, SignatureError> {
    validate_diagram(d)?;
    let mut sig = Signature { elements: d.len(), ..Signature::default() };
    for (_, class) in d.classified_edges() {
        sig.edges += 1;
        match class {
            EdgeClass::NormalUp => sig.normal_up += 1,
            EdgeClass::NormalDown => sig.normal_down += 1,
            EdgeClass::Steep => sig.steep += 1,
            EdgeClass::Invalid => sig.invalid += 1,
        }
    }
    sig.cells = enumerate_4cells(d)?.len();
    sig.s7_strict = find_covering_s7s(d.lattice(), S7Mode::Strict).len();
    sig.s7_sublattice = find_covering_s7s(d.lattice(), S7Mode::Sublattice).len();
    sig.corners = find_corners(d).len();
    Ok(sig)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub lattice: Status,
    pub semimodular: Status,
    pub slim: Status,
    pub planar_valid: Status,
    pub rectangular: Status,
    pub czedli_strict: Status,
    pub czedli_sublattice: Status,
    pub elements: usize,
    pub edge_classes: [usize; 4],
    pub signature: Option<Signature>,
}

impl VerificationReport {
    pub fn properties(&self) -> [(&'static str, &Status); 7] {
        [
            ("lattice", &self.lattice),
            ("semimodular", &self.semimodular),
            ("slim", &self.slim),
            ("planar_valid", &self.planar_valid),
            ("rectangular", &self.rectangular),
            ("czedli_strict", &self.czedli_strict),
            ("czedli_sublattice", &self.czedli_sublattice),
        ]
    }

    /// The properties every slim planar semimodular Czédli diagram must
    /// have, with the covering-`S7` reading given by `mode`. Rectangularity
    /// is not required.
    pub fn accepts(&self, mode: S7Mode) -> bool {
        let czedli = match mode {
            S7Mode::Strict => &self.czedli_strict,
            S7Mode::Sublattice => &self.czedli_sublattice,
        };
        [&self.lattice, &self.semimodular, &self.slim, &self.planar_valid, czedli].iter().all(|s| s.passed())
    }

    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        for (key, status) in self.properties() {
            match status {
                Status::Pass => writeln!(out, "{key}=pass").unwrap(),
                Status::Fail(w) => {
                    writeln!(out, "{key}=fail").unwrap();
                    writeln!(out, "{key}.witness={w}").unwrap();
                }
            }
        }
        let [up, down, steep, invalid] = self.edge_classes;
        writeln!(out, "elements={}", self.elements).unwrap();
        writeln!(out, "edges={}", up + down + steep + invalid).unwrap();
        writeln!(out, "edges.normal_up={up}").unwrap();
        writeln!(out, "edges.normal_down={down}").unwrap();
        writeln!(out, "edges.steep={steep}").unwrap();
        writeln!(out, "edges.invalid={invalid}").unwrap();
        let na = |v: Option<usize>| v.map_or_else(|| "n/a".to_string(), |v| v.to_string());
        let sig = self.signature;
        writeln!(out, "cells={}", na(sig.map(|s| s.cells))).unwrap();
        writeln!(out, "s7.strict={}", na(sig.map(|s| s.s7_strict))).unwrap();
        writeln!(out, "s7.sublattice={}", na(sig.map(|s| s.s7_sublattice))).unwrap();
        writeln!(out, "corners={}", na(sig.map(|s| s.corners))).unwrap();
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification report")?;
        for (key, status) in self.properties() {
            match status {
                Status::Pass => writeln!(f, "  {key:<18} pass")?,
                Status::Fail(w) => writeln!(f, "  {key:<18} FAIL  {w}")?,
            }
        }
        let [up, down, steep, invalid] = self.edge_classes;
        writeln!(f, "signature")?;
        writeln!(f, "  elements           {}", self.elements)?;
        writeln!(
            f,
            "  edges              {} (normal-up {up}, normal-down {down}, steep {steep}, invalid {invalid})",
            up + down + steep + invalid
        )?;
        match self.signature {
            Some(s) => {
                writeln!(f, "  4-cells            {}", s.cells)?;
                writeln!(f, "  covering S7s       {} strict, {} sublattice", s.s7_strict, s.s7_sublattice)?;
                writeln!(f, "  corners            {}", s.corners)?;
            }
            None => writeln!(f, "  (cells, S7s and corners need a valid diagram)")?,
        }
        Ok(())
    }
}

/// Runs every check on raw diagram data.
pub fn verify_all<S: Scalar>(raw: &RawDiagram<S>) -> VerificationReport {
    let mut edge_classes = [0usize; 4];
    let n = raw.positions.len();
    for &(lo, hi) in &raw.covers {
        let class =
            if lo < n && hi < n { EdgeClass::of(&raw.positions[lo], &raw.positions[hi]) } else { EdgeClass::Invalid };
        edge_classes[class as usize] += 1;
    }
    let lattice = match raw.to_lattice() {
        Ok(l) => l,
        Err(e) => {
            let missing = || Status::Fail("not a lattice".to_string());
            return VerificationReport {
                lattice: Status::Fail(e.to_string()),
                semimodular: missing(),
                slim: missing(),
                planar_valid: missing(),
                rectangular: missing(),
                czedli_strict: missing(),
                czedli_sublattice: missing(),
                elements: n,
                edge_classes,
                signature: None,
            };
        }
    };
    let diagram =
        Diagram::new_unchecked(lattice, raw.positions.clone()).expect("position count matches by construction");
    verify_diagram_with(&diagram, edge_classes)
}

/// [`verify_all`] for an already-built diagram.
pub fn verify_diagram<S: Scalar>(d: &Diagram<S>) -> VerificationReport {
    verify_all(&d.to_raw())
}

fn verify_diagram_with<S: Scalar>(d: &Diagram<S>, edge_classes: [usize; 4]) -> VerificationReport {
    let l = d.lattice();
    let semimodular = Status::from_result(
        l.check_semimodular().map_err(|(x, y)| format!("{x}∧{y} ≺ {x} but {y} does not cover {x}∨{y}")),
    );
    let slim = match l.find_m3() {
        None => Status::Pass,
        Some(w) => Status::Fail(format!("M3 sublattice {w:?}")),
    };
    let planar = validate_diagram(d);
    let planar_valid = Status::from_result(planar.clone());
    let rectangular = if planar.is_ok() {
        Status::from_result(check_rectangular(d))
    } else {
        Status::Fail("requires a valid diagram".to_string())
    };
    let czedli_strict = Status::from_result(check_czedli(d, S7Mode::Strict));
    let czedli_sublattice = Status::from_result(check_czedli(d, S7Mode::Sublattice));
    VerificationReport {
        lattice: Status::Pass,
        semimodular,
        slim,
        planar_valid,
        rectangular,
        czedli_strict,
        czedli_sublattice,
        elements: d.len(),
        edge_classes,
        signature: signature(d).ok(),
    }
}
