//! Gate-list circuits and their text dump.
//!
//! Qubit 0 is the least significant bit of an amplitude index. The dump
//! format is one gate per line, `GATE targets [controls] [angle]`, preceded
//! by a `# qubits: m` header:
//!
//! ```text
//! # qubits: 3
//! H 0
//! CX 1 [0]
//! MCZ 2 [0,1]
//! RY 0 1.5707963267948966
//! RESET 1
//! ```

mod state;

pub use state::{StateVector, MAX_QUBITS, NORM_TOLERANCE};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    Z(usize),
    /// Rotation about Y by the angle in radians.
    Ry(usize, f64),
    Cx { control: usize, target: usize },
    Cz { control: usize, target: usize },
    Mcx { controls: Vec<usize>, target: usize },
    Mcz { controls: Vec<usize>, target: usize },
    /// Projects the qubit onto |0⟩ and renormalises.
    Reset(usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::H(_) => "H",
            Gate::Z(_) => "Z",
            Gate::Ry(..) => "RY",
            Gate::Cx { .. } => "CX",
            Gate::Cz { .. } => "CZ",
            Gate::Mcx { .. } => "MCX",
            Gate::Mcz { .. } => "MCZ",
            Gate::Reset(_) => "RESET",
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::Z(q) | Gate::Ry(q, _) | Gate::Reset(q) => q,
            Gate::Cx { target, .. }
            | Gate::Cz { target, .. }
            | Gate::Mcx { target, .. }
            | Gate::Mcz { target, .. } => target,
        }
    }

    pub fn controls(&self) -> &[usize] {
        match self {
            Gate::Cx { control, .. } | Gate::Cz { control, .. } => std::slice::from_ref(control),
            Gate::Mcx { controls, .. } | Gate::Mcz { controls, .. } => controls,
            _ => &[],
        }
    }

    /// True for gates that map basis states to signed basis states.
    pub fn is_classical(&self) -> bool {
        !matches!(self, Gate::H(_) | Gate::Ry(..))
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        let target = self.target();
        for &q in std::iter::once(&target).chain(self.controls()) {
            if q >= width {
                return Err(Error::QubitOutOfRange { index: q, width });
            }
        }
        let controls = self.controls();
        if controls.contains(&target) {
            return Err(Error::ControlOverlap(target));
        }
        for (i, c) in controls.iter().enumerate() {
            if controls[..i].contains(c) {
                return Err(Error::ControlOverlap(*c));
            }
        }
        Ok(())
    }

    /// Inverse gate. `Reset` maps to itself, which is only an inverse when the
    /// qubit is already |0⟩ (ancilla reclamation).
    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Ry(q, theta) => Gate::Ry(*q, -theta),
            g => g.clone(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.target())?;
        if matches!(self, Gate::Cx { .. } | Gate::Cz { .. } | Gate::Mcx { .. } | Gate::Mcz { .. }) {
            let list: Vec<String> = self.controls().iter().map(|c| c.to_string()).collect();
            write!(f, " [{}]", list.join(","))?;
        }
        if let Gate::Ry(_, theta) = self {
            write!(f, " {theta}")?;
        }
        Ok(())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad gate line `{line}`"));
        let mut parts = line.split_whitespace();
        let name = parts.next().ok_or_else(bad)?;
        let target: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let rest: Vec<&str> = parts.collect();
        let controls = || -> Result<Vec<usize>> {
            let list = rest.first().ok_or_else(bad)?;
            let inner = list
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(bad)?;
            if inner.is_empty() {
                return Ok(Vec::new());
            }
            inner
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| bad()))
                .collect()
        };
        let single = |v: Vec<usize>| -> Result<usize> {
            match v.as_slice() {
                [c] => Ok(*c),
                _ => Err(bad()),
            }
        };
        let gate = match name {
            "X" => Gate::X(target),
            "H" => Gate::H(target),
            "Z" => Gate::Z(target),
            "RESET" => Gate::Reset(target),
            "RY" => {
                let theta = rest.first().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Gate::Ry(target, theta)
            }
            "CX" => Gate::Cx {
                control: single(controls()?)?,
                target,
            },
            "CZ" => Gate::Cz {
                control: single(controls()?)?,
                target,
            },
            "MCX" => Gate::Mcx {
                controls: controls()?,
                target,
            },
            "MCZ" => Gate::Mcz {
                controls: controls()?,
                target,
            },
            _ => return Err(bad()),
        };
        Ok(gate)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            gates: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`, which must not be wider than `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(())
    }

    /// Gates reversed and individually inverted; see [`Gate::inverse`].
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Same gates on a wider register.
    pub fn widened(&self, width: usize) -> Result<Circuit> {
        if width < self.width {
            return Err(Error::InvalidArgument(format!(
                "cannot narrow a {}-qubit circuit to {width}",
                self.width
            )));
        }
        Ok(Circuit {
            width,
            gates: self.gates.clone(),
        })
    }

    pub fn is_classical(&self) -> bool {
        self.gates.iter().all(Gate::is_classical)
    }

    pub fn count(&self, name: &str) -> usize {
        self.gates.iter().filter(|g| g.name() == name).count()
    }

    /// Folds the gates over `state` in order.
    pub fn run(&self, state: &mut StateVector) -> Result<()> {
        if state.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: state.width(),
            });
        }
        for g in &self.gates {
            state.apply(g)?;
        }
        Ok(())
    }

    pub fn dump(&self) -> String {
        self.to_string()
    }

    pub fn parse_dump(text: &str) -> Result<Circuit> {
        let mut width = None;
        let mut gates = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(m) = comment.trim().strip_prefix("qubits:") {
                    width = Some(m.trim().parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad width line `{line}`"))
                    })?);
                }
                continue;
            }
            gates.push(line.parse::<Gate>()?);
        }
        let width = width.unwrap_or_else(|| {
            gates
                .iter()
                .flat_map(|g: &Gate| std::iter::once(g.target()).chain(g.controls().iter().copied()))
                .max()
                .map_or(0, |q| q + 1)
        });
        let mut c = Circuit::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# qubits: {}", self.width)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Runs `circuit` on `s0` and returns the final state.
pub fn run(circuit: &Circuit, s0: &StateVector) -> Result<StateVector> {
    let mut s = s0.clone();
    circuit.run(&mut s)?;
    Ok(s)
}
