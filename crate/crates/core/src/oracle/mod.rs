//! Phase oracles for the verifier `f`.
//!
//! Both backends act as `|x⟩|0…0⟩ ↦ (−1)^f(x) |x⟩|0…0⟩` on an input register
//! of `n` qubits (qubits `0..n`). The diagonal backend stores the phase table
//! computed by one classical sweep; the gate-level backend is a reversible
//! circuit over ancillas `n..width` that computes the network instance, runs
//! the protocol, checks the property, flips the phase and uncomputes.

mod builder;
mod controlplane;
mod dataplane;

use std::collections::BTreeSet;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::circuit::{Circuit, StateVector, MAX_QUBITS};
use crate::classical::{truth_table, Verifier, DEFAULT_BRUTE_FORCE_LIMIT};
use crate::error::{Error, Result};
use crate::netmodel::{Problem, Property};

use builder::Builder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Diagonal,
    #[serde(rename = "gate")]
    GateLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Reclaim scratch ancillas with mid-circuit resets instead of allocating
    /// fresh ones for every hop or round.
    pub midcircuit_reset: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            midcircuit_reset: true,
        }
    }
}

/// Instances already confirmed as solutions, to be rejected by the oracle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExclusionSet {
    seen: BTreeSet<Bits>,
}

impl ExclusionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: Bits) -> bool {
        self.seen.insert(x)
    }

    pub fn contains(&self, x: &Bits) -> bool {
        self.seen.contains(x)
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bits> {
        self.seen.iter()
    }
}

impl FromIterator<Bits> for ExclusionSet {
    fn from_iter<I: IntoIterator<Item = Bits>>(iter: I) -> Self {
        Self {
            seen: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone)]
enum Body {
    Diagonal { marked: Vec<bool> },
    GateLevel { circuit: Circuit },
}

#[derive(Debug, Clone)]
pub struct CompiledOracle {
    problem: Arc<Problem>,
    excluded: BTreeSet<u64>,
    body: Body,
}

impl CompiledOracle {
    pub fn backend(&self) -> Backend {
        match self.body {
            Body::Diagonal { .. } => Backend::Diagonal,
            Body::GateLevel { .. } => Backend::GateLevel,
        }
    }

    pub fn problem(&self) -> &Arc<Problem> {
        &self.problem
    }

    pub fn input_width(&self) -> usize {
        self.problem.width()
    }

    /// Qubits the oracle acts on, inputs first.
    pub fn width(&self) -> usize {
        match &self.body {
            Body::Diagonal { .. } => self.input_width(),
            Body::GateLevel { circuit } => circuit.width(),
        }
    }

    pub fn input_register(&self) -> Range<usize> {
        0..self.input_width()
    }

    pub fn ancilla_register(&self) -> Range<usize> {
        self.input_width()..self.width()
    }

    pub fn circuit(&self) -> Option<&Circuit> {
        match &self.body {
            Body::GateLevel { circuit } => Some(circuit),
            Body::Diagonal { .. } => None,
        }
    }

    /// Diagonal phase table, `true` where the phase is −1.
    pub fn phase_table(&self) -> Option<&[bool]> {
        match &self.body {
            Body::Diagonal { marked } => Some(marked),
            Body::GateLevel { .. } => None,
        }
    }

    pub fn excluded(&self) -> impl Iterator<Item = u64> + '_ {
        self.excluded.iter().copied()
    }

    /// The modified verifier the oracle implements: `f(x)` and not excluded.
    pub fn is_marked(&self, x: u64) -> bool {
        match &self.body {
            Body::Diagonal { marked } => marked[x as usize],
            Body::GateLevel { .. } => {
                !self.excluded.contains(&x) && Verifier::new(&self.problem).eval(x)
            }
        }
    }

    /// Number of marked inputs, by classical sweep for the gate-level backend.
    pub fn marked_count(&self) -> Result<u64> {
        match &self.body {
            Body::Diagonal { marked } => Ok(marked.iter().filter(|&&m| m).count() as u64),
            Body::GateLevel { .. } => {
                let table = truth_table(&self.problem, DEFAULT_BRUTE_FORCE_LIMIT)?;
                Ok(table
                    .iter()
                    .enumerate()
                    .filter(|&(x, &m)| m && !self.excluded.contains(&(x as u64)))
                    .count() as u64)
            }
        }
    }

    /// Applies the oracle to a state of exactly [`width`](Self::width) qubits.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.width() != self.width() {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: state.width(),
            });
        }
        match &self.body {
            Body::Diagonal { marked } => {
                state.flip_phases(|i| marked[i]);
                Ok(())
            }
            Body::GateLevel { circuit } => circuit.run(state),
        }
    }
}

/// Phase table from one classical sweep of `f`, with `excl` removed.
pub fn compile_diagonal(problem: Arc<Problem>, excl: &ExclusionSet) -> Result<CompiledOracle> {
    if problem.width() > MAX_QUBITS {
        return Err(Error::ResourceLimit {
            what: "diagonal oracle",
            requested: problem.width(),
            limit: MAX_QUBITS,
        });
    }
    let marked = truth_table(&problem, DEFAULT_BRUTE_FORCE_LIMIT)?;
    let oracle = CompiledOracle {
        problem,
        excluded: BTreeSet::new(),
        body: Body::Diagonal { marked },
    };
    add_exclusion(oracle, excl)
}

/// Gate-level oracle for any property with a circuit compiler.
pub fn compile_gate(problem: Arc<Problem>, options: OracleOptions) -> Result<CompiledOracle> {
    let circuit = match (&*problem, problem.property()) {
        (Problem::DataPlane { net, .. }, prop) => dataplane::compile(net, prop, options)?,
        (Problem::ControlPlane { net, .. }, prop @ Property::Disconnected { .. }) => {
            controlplane::compile(net, prop, options)?
        }
        (_, prop) => {
            return Err(Error::Unsupported(format!(
                "no gate-level compiler for {}; use the diagonal backend",
                prop.kind_name()
            )))
        }
    };
    Ok(CompiledOracle {
        problem,
        excluded: BTreeSet::new(),
        body: Body::GateLevel { circuit },
    })
}

/// Hop-bounded reachability (or hop-count violation) on the data plane.
pub fn compile_gate_dataplane(
    problem: Arc<Problem>,
    options: OracleOptions,
) -> Result<CompiledOracle> {
    if !matches!(&*problem, Problem::DataPlane { .. }) {
        return Err(Error::Unsupported("expected a data-plane problem".into()));
    }
    compile_gate(problem, options)
}

/// Disconnection under link failures on the control plane.
pub fn compile_gate_controlplane(
    problem: Arc<Problem>,
    options: OracleOptions,
) -> Result<CompiledOracle> {
    if !matches!(problem.property(), Property::Disconnected { .. }) {
        return Err(Error::Unsupported(
            "the control-plane gate compiler handles `disconnected` only".into(),
        ));
    }
    compile_gate(problem, options)
}

pub fn compile(
    problem: Arc<Problem>,
    backend: Backend,
    options: OracleOptions,
    excl: &ExclusionSet,
) -> Result<CompiledOracle> {
    match backend {
        Backend::Diagonal => compile_diagonal(problem, excl),
        Backend::GateLevel => add_exclusion(compile_gate(problem, options)?, excl),
    }
}

/// Rejects already-seen solutions. Non-solutions and repeats leave the
/// oracle's action unchanged.
pub fn add_exclusion(mut oracle: CompiledOracle, seen: &ExclusionSet) -> Result<CompiledOracle> {
    let n = oracle.input_width();
    for x in seen.iter() {
        x.check_width(n)?;
    }
    let f = Verifier::new(&oracle.problem);
    let fresh: Vec<u64> = seen
        .iter()
        .map(Bits::value)
        .filter(|v| !oracle.excluded.contains(v) && f.eval(*v))
        .collect();
    match &mut oracle.body {
        Body::Diagonal { marked } => {
            for &x in &fresh {
                marked[x as usize] = false;
            }
        }
        Body::GateLevel { circuit } => {
            // a second phase flip on |x⟩ cancels its mark
            let mut b = Builder::new(circuit.width());
            for &x in &fresh {
                let lits: Vec<(usize, bool)> = (0..n).map(|i| (i, (x >> i) & 1 == 1)).collect();
                b.phase_flip(&lits);
            }
            circuit.append(&b.into_circuit()?)?;
        }
    }
    oracle.excluded.extend(fresh);
    Ok(oracle)
}
