//! Reversible reachability circuit for `disconnected` under link failures.
//!
//! Input qubit `e` is 1 when edge `e` is up. Reachability from `src` is
//! expanded for `R − 1` rounds,
//!
//! ```text
//! reached'[v] = reached[v] ∨ ∨_{(u,v) = e} (reached[u] ∧ x_e)
//! ```
//!
//! with constants folded so that round one costs no qubits. A failure count
//! cutoff, when present, is a small counter over the zero inputs.

use super::builder::{Builder, Lit};
use super::OracleOptions;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::netmodel::{ceil_log2, ControlPlaneNetwork, Property, RouterId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Val {
    Const(bool),
    Q(usize),
}

struct Ctx<'a> {
    net: &'a ControlPlaneNetwork,
    /// Incident `(edge, neighbour)` pairs per vertex.
    adj: Vec<Vec<(usize, usize)>>,
    reset: bool,
}

impl Ctx<'_> {
    fn and(&self, b: &mut Builder, reached: Val, edge: usize, temps: &mut Vec<usize>) -> Val {
        match reached {
            Val::Const(false) => Val::Const(false),
            Val::Const(true) => Val::Q(edge),
            Val::Q(q) => {
                let t = b.alloc(self.reset);
                b.mcx(&[(q, true), (edge, true)], t);
                temps.push(t);
                Val::Q(t)
            }
        }
    }

    /// Value of `reached'[v]` given the previous round.
    fn expand(&self, b: &mut Builder, prev: &[Val], v: usize) -> Val {
        if prev[v] == Val::Const(true) {
            return prev[v];
        }
        let start = b.mark();
        let mut temps = Vec::new();
        let mut terms = Vec::new();
        if let Val::Q(q) = prev[v] {
            terms.push(q);
        }
        for &(edge, u) in &self.adj[v] {
            match self.and(b, prev[u], edge, &mut temps) {
                Val::Const(_) => {}
                Val::Q(q) => {
                    if !terms.contains(&q) {
                        terms.push(q);
                    }
                }
            }
        }
        match terms.as_slice() {
            [] => Val::Const(false),
            [q] => Val::Q(*q),
            _ => {
                let and_end = b.mark();
                let out = b.alloc(false);
                let negated: Vec<Lit> = terms.iter().map(|&q| (q, false)).collect();
                b.mcx(&negated, out);
                b.x(out);
                if self.reset && !temps.is_empty() {
                    // the AND temporaries only feed this OR
                    b.undo_range(start, and_end);
                    b.reclaim(&temps);
                }
                Val::Q(out)
            }
        }
    }

    fn reached(&self, b: &mut Builder, src: RouterId, dst: RouterId) -> Val {
        let r = self.net.routers().len();
        let mut cur: Vec<Val> = (0..r).map(|v| Val::Const(v == src.0)).collect();
        for round in 1..r {
            if round + 1 == r {
                return self.expand(b, &cur, dst.0);
            }
            cur = (0..r).map(|v| self.expand(b, &cur, v)).collect();
        }
        cur[dst.0]
    }
}

/// Emits a register counting the inputs that are 0 and a flag set when the
/// count is at most `max`.
fn failure_cutoff(b: &mut Builder, n: usize, max: u32) -> usize {
    let bits = ceil_log2(n as u64 + 1).max(1) as usize;
    let counter = b.alloc_many(bits, false);
    for e in 0..n {
        // increment: flip bit j when every lower bit is 1, high bits first
        for j in (0..bits).rev() {
            let mut controls: Vec<Lit> = vec![(e, false)];
            controls.extend(counter[..j].iter().map(|&q| (q, true)));
            b.mcx(&controls, counter[j]);
        }
    }
    let flag = b.alloc(false);
    // the equalities are exclusive, so XOR-ing them gives their OR
    for v in 0..=u64::from(max) {
        let lits: Vec<Lit> = counter
            .iter()
            .enumerate()
            .map(|(j, &q)| (q, (v >> j) & 1 == 1))
            .collect();
        b.mcx(&lits, flag);
    }
    flag
}

pub(super) fn compile(
    net: &ControlPlaneNetwork,
    prop: &Property,
    options: OracleOptions,
) -> Result<Circuit> {
    let Property::Disconnected {
        src,
        dst,
        max_failures,
    } = *prop
    else {
        return Err(Error::Unsupported(format!(
            "no gate-level compiler for {}",
            prop.kind_name()
        )));
    };
    let n = net.edges().len();
    let mut adj = vec![Vec::new(); net.routers().len()];
    for (e, edge) in net.edges().iter().enumerate() {
        adj[edge.a.0].push((e, edge.b.0));
        adj[edge.b.0].push((e, edge.a.0));
    }
    let ctx = Ctx {
        net,
        adj,
        reset: options.midcircuit_reset,
    };

    let mut b = Builder::new(n);
    let reached = ctx.reached(&mut b, src, dst);
    let flag = match max_failures {
        Some(m) if (m as usize) < n => Some(failure_cutoff(&mut b, n, m)),
        _ => None,
    };
    let compute_end = b.mark();
    let mut lits: Vec<Lit> = flag.map(|f| (f, true)).into_iter().collect();
    match reached {
        Val::Const(true) => {}
        Val::Const(false) => b.phase_flip(&lits),
        Val::Q(q) => {
            lits.push((q, false));
            b.phase_flip(&lits);
        }
    }
    b.undo_range(0, compute_end);
    b.into_circuit()
}
