//! Closed-form qubit counts for the data-plane and control-plane circuits,
//! and parameter sweeps over them. All logarithms are `⌈log2⌉`.
//!
//! These describe the reference circuit architecture, not the circuits the
//! gate-level compiler in this crate emits.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::netmodel::ceil_log2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DataPlaneParams {
    /// Total number of headers `n` (so `⌈log2 n⌉` header bits).
    pub headers: u64,
    pub routers: u64,
    pub rules_per_router: u64,
    /// Unique wildcard expressions `ℓ`.
    pub wildcards: u64,
    /// Unique ports `P`.
    pub ports: u64,
    pub max_hops: u64,
    pub iterates: u64,
}

impl DataPlaneParams {
    /// `ℓ = P = R·r`, `k = R`.
    pub fn sweep_convention(routers: u64, rules_per_router: u64, headers: u64, iterates: u64) -> Self {
        let unique = routers.saturating_mul(rules_per_router);
        Self {
            headers,
            routers,
            rules_per_router,
            wildcards: unique,
            ports: unique,
            max_hops: routers,
            iterates,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("headers", self.headers),
            ("routers", self.routers),
            ("rules per router", self.rules_per_router),
            ("wildcards", self.wildcards),
            ("ports", self.ports),
            ("max hops", self.max_hops),
            ("iterates", self.iterates),
        ];
        positive(&fields)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ControlPlaneParams {
    pub routers: u64,
    pub edges: u64,
    pub diameter: u64,
    pub iterates: u64,
}

impl ControlPlaneParams {
    /// `D = R − 1`, `G = R`.
    pub fn sweep_convention(routers: u64, edges: u64) -> Self {
        Self {
            routers,
            edges,
            diameter: routers.saturating_sub(1),
            iterates: routers,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("routers", self.routers),
            ("edges", self.edges),
            ("diameter", self.diameter),
            ("iterates", self.iterates),
        ];
        positive(&fields)
    }
}

fn positive(fields: &[(&str, u64)]) -> Result<()> {
    match fields.iter().find(|(_, v)| *v == 0) {
        Some((name, _)) => Err(Error::InvalidArgument(format!("{name} must be positive"))),
        None => Ok(()),
    }
}

fn narrow(total: u128) -> Result<u64> {
    u64::try_from(total).map_err(|_| Error::InvalidArgument("qubit count overflows u64".into()))
}

/// `(1+ℓ)⌈log n⌉ + (P + k + G(2k−1))⌈log P⌉ + 2max(ℓ,P) + P + ℓ`, or with
/// reset `(1+ℓ)⌈log n⌉ + (1+P)⌈log P⌉ + 2max(ℓ,P) + P + ℓ`.
pub fn dataplane_qubits(p: &DataPlaneParams, midcircuit_reset: bool) -> Result<u64> {
    p.validate()?;
    let l = u128::from(p.wildcards);
    let ports = u128::from(p.ports);
    let k = u128::from(p.max_hops);
    let g = u128::from(p.iterates);
    let log_n = u128::from(ceil_log2(p.headers));
    let log_p = u128::from(ceil_log2(p.ports));
    let port_regs = if midcircuit_reset {
        1 + ports
    } else {
        ports + k + g * (2 * k - 1)
    };
    narrow((1 + l) * log_n + port_regs * log_p + 2 * l.max(ports) + ports + l)
}

/// `⌈log R⌉ + n(R−1)D + G`, or with reset `⌈log R⌉ + n + R`.
pub fn controlplane_qubits(p: &ControlPlaneParams, midcircuit_reset: bool) -> Result<u64> {
    p.validate()?;
    let r = u128::from(p.routers);
    let n = u128::from(p.edges);
    let log_r = u128::from(ceil_log2(p.routers));
    if midcircuit_reset {
        narrow(log_r + n + r)
    } else {
        narrow(log_r + n * (r - 1) * u128::from(p.diameter) + u128::from(p.iterates))
    }
}

/// Swept variable, with the remaining parameters held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    /// Data plane over `n = 2^x` headers.
    DataPlaneHeaders { routers: u64, rules_per_router: u64, iterates: u64 },
    /// Data plane over `x` routers.
    DataPlaneRouters { rules_per_router: u64, headers: u64, iterates: u64 },
    /// Control plane over `x` edges.
    ControlPlaneEdges { routers: u64 },
    /// Control plane over `x` routers.
    ControlPlaneRouters { edges: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub x: u64,
    pub qubits: u64,
    pub variant: &'static str,
}

pub fn variant_name(midcircuit_reset: bool) -> &'static str {
    if midcircuit_reset {
        "reset"
    } else {
        "no-reset"
    }
}

pub fn sweep(kind: Sweep, from: u64, to: u64, midcircuit_reset: bool) -> Result<Vec<SweepRow>> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty sweep range {from}..={to}")));
    }
    let variant = variant_name(midcircuit_reset);
    (from..=to)
        .map(|x| {
            let qubits = match kind {
                Sweep::DataPlaneHeaders {
                    routers,
                    rules_per_router,
                    iterates,
                } => {
                    if x > 63 {
                        return Err(Error::InvalidArgument(format!("2^{x} headers overflow u64")));
                    }
                    let p = DataPlaneParams::sweep_convention(routers, rules_per_router, 1 << x, iterates);
                    dataplane_qubits(&p, midcircuit_reset)?
                }
                Sweep::DataPlaneRouters {
                    rules_per_router,
                    headers,
                    iterates,
                } => {
                    let p = DataPlaneParams::sweep_convention(x, rules_per_router, headers, iterates);
                    dataplane_qubits(&p, midcircuit_reset)?
                }
                Sweep::ControlPlaneEdges { routers } => {
                    controlplane_qubits(&ControlPlaneParams::sweep_convention(routers, x), midcircuit_reset)?
                }
                Sweep::ControlPlaneRouters { edges } => {
                    controlplane_qubits(&ControlPlaneParams::sweep_convention(x, edges), midcircuit_reset)?
                }
            };
            Ok(SweepRow { x, qubits, variant })
        })
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("x,qubits,variant\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.x, r.qubits, r.variant);
    }
    out
}
