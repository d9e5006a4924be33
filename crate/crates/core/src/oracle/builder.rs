use crate::circuit::{Circuit, Gate, MAX_QUBITS};
use crate::error::{Error, Result};

/// A control literal: qubit and the value it must hold.
pub(crate) type Lit = (usize, bool);

/// Gate list with on-demand qubit allocation and an ancilla free list.
pub(crate) struct Builder {
    gates: Vec<Gate>,
    width: usize,
    free: Vec<usize>,
}

impl Builder {
    pub fn new(width: usize) -> Self {
        Self {
            gates: Vec::new(),
            width,
            free: Vec::new(),
        }
    }

    /// A fresh qubit, or a released one when `reuse` is set. Either way it is |0⟩.
    pub fn alloc(&mut self, reuse: bool) -> usize {
        if reuse {
            if let Some(q) = self.free.pop() {
                return q;
            }
        }
        self.width += 1;
        self.width - 1
    }

    pub fn alloc_many(&mut self, count: usize, reuse: bool) -> Vec<usize> {
        (0..count).map(|_| self.alloc(reuse)).collect()
    }

    /// Resets qubits already returned to |0⟩ and puts them on the free list.
    pub fn reclaim(&mut self, qubits: &[usize]) {
        for &q in qubits {
            self.gates.push(Gate::Reset(q));
        }
        // reverse so the next allocations come back in the same order
        self.free.extend(qubits.iter().rev());
    }

    pub fn mark(&self) -> usize {
        self.gates.len()
    }

    /// Appends the inverse of the gates emitted in `start..end`.
    pub fn undo_range(&mut self, start: usize, end: usize) {
        let undo: Vec<Gate> = self.gates[start..end].iter().rev().map(Gate::inverse).collect();
        self.gates.extend(undo);
    }

    pub fn x(&mut self, q: usize) {
        self.gates.push(Gate::X(q));
    }

    fn flip_negatives(&mut self, lits: &[Lit]) {
        for &(q, v) in lits {
            if !v {
                self.x(q);
            }
        }
    }

    /// Flips `target` when every literal holds.
    pub fn mcx(&mut self, controls: &[Lit], target: usize) {
        self.flip_negatives(controls);
        let gate = match controls {
            [] => Gate::X(target),
            [(c, _)] => Gate::Cx {
                control: *c,
                target,
            },
            _ => Gate::Mcx {
                controls: controls.iter().map(|&(q, _)| q).collect(),
                target,
            },
        };
        self.gates.push(gate);
        self.flip_negatives(controls);
    }

    /// Multiplies the phase by −1 when every literal holds; with no literals
    /// the flip is global.
    pub fn phase_flip(&mut self, lits: &[Lit]) {
        match lits.split_last() {
            None => {
                // XZXZ = −I on any qubit
                let q = 0;
                for g in [Gate::X(q), Gate::Z(q), Gate::X(q), Gate::Z(q)] {
                    self.gates.push(g);
                }
            }
            Some((&(target, _), rest)) => {
                self.flip_negatives(lits);
                let gate = match rest {
                    [] => Gate::Z(target),
                    [(c, _)] => Gate::Cz {
                        control: *c,
                        target,
                    },
                    _ => Gate::Mcz {
                        controls: rest.iter().map(|&(q, _)| q).collect(),
                        target,
                    },
                };
                self.gates.push(gate);
                self.flip_negatives(lits);
            }
        }
    }

    pub fn into_circuit(self) -> Result<Circuit> {
        if self.width > MAX_QUBITS {
            return Err(Error::ResourceLimit {
                what: "gate-level oracle",
                requested: self.width,
                limit: MAX_QUBITS,
            });
        }
        let mut c = Circuit::new(self.width);
        for g in self.gates {
            c.push(g)?;
        }
        Ok(c)
    }
}
