//! Classical verifier `f` and the exhaustive baseline.
//!
//! `f` has three stages: build the network instance from the input bits,
//! run the forwarding or routing protocol on it, and check the property.
//! Everything here is a pure function of `(problem, x)`; the quantum side
//! uses it as ground truth.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::netmodel::{ControlPlaneNetwork, DataPlaneNetwork, Problem, Property, RouterId};

/// Default ceiling on `n` for exhaustive sweeps.
pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ReachedDestination,
    Stuck,
    HopBudgetExhausted,
}

/// Routers visited by a packet and the header it carried on arrival at each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    pub hops: Vec<RouterId>,
    pub headers: Vec<Bits>,
    pub terminated: Termination,
}

/// Applies the first rule at `at` matching `header`; `None` means the packet is stuck.
pub fn forward_step(net: &DataPlaneNetwork, at: RouterId, header: u64) -> Option<(RouterId, u64)> {
    net.rules_at(at)
        .find(|r| r.pattern.matches_value(header))
        .map(|r| (r.next_hop, r.rewrite.apply(header)))
}

/// Walks at most `max_hops` forwarding steps from `src`, stopping early when
/// the packet is stuck or sits at `dst`.
pub fn simulate_dataplane(
    net: &DataPlaneNetwork,
    src: RouterId,
    header: Bits,
    max_hops: u32,
    dst: Option<RouterId>,
) -> Result<PathTrace> {
    header.check_width(net.header_width())?;
    if src.0 >= net.routers().len() {
        return Err(Error::InvalidArgument(format!("unknown router index {}", src.0)));
    }
    let width = net.header_width();
    let mut hops = vec![src];
    let mut headers = vec![header];
    let terminated = walk(net, src, header.value(), max_hops, dst, |at, h| {
        hops.push(at);
        headers.push(Bits::new(width, h).expect("rewrites preserve width"));
    });
    Ok(PathTrace {
        hops,
        headers,
        terminated,
    })
}

fn walk(
    net: &DataPlaneNetwork,
    src: RouterId,
    header: u64,
    max_hops: u32,
    dst: Option<RouterId>,
    mut visit: impl FnMut(RouterId, u64),
) -> Termination {
    let (mut at, mut h) = (src, header);
    for _ in 0..max_hops {
        if Some(at) == dst {
            return Termination::ReachedDestination;
        }
        match forward_step(net, at, h) {
            Some((next, rewritten)) => {
                at = next;
                h = rewritten;
                visit(at, h);
            }
            None => return Termination::Stuck,
        }
    }
    if Some(at) == dst {
        Termination::ReachedDestination
    } else {
        Termination::HopBudgetExhausted
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NextHop {
    /// The router is the destination.
    Local,
    Via(RouterId),
    Unreachable,
}

/// Shortest-path next hops for every `(router, destination)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingTable {
    next: Vec<Vec<NextHop>>,
}

impl RoutingTable {
    pub fn next_hop(&self, at: RouterId, dst: RouterId) -> NextHop {
        self.next[at.0][dst.0]
    }

    /// Router sequence from `src` to `dst`, or `None` when unreachable.
    pub fn path(&self, src: RouterId, dst: RouterId) -> Option<Vec<RouterId>> {
        let mut path = vec![src];
        let mut at = src;
        loop {
            match self.next_hop(at, dst) {
                NextHop::Local => return Some(path),
                NextHop::Unreachable => return None,
                NextHop::Via(v) => {
                    path.push(v);
                    at = v;
                }
            }
        }
    }
}

/// Operational adjacency of a control-plane network under one failure instance.
struct Graph {
    adj: Vec<Vec<(usize, u64)>>,
}

impl Graph {
    fn new(net: &ControlPlaneNetwork, up: u64) -> Self {
        let mut adj = vec![Vec::new(); net.routers().len()];
        for (i, e) in net.edges().iter().enumerate() {
            if (up >> i) & 1 == 1 {
                adj[e.a.0].push((e.b.0, e.weight));
                adj[e.b.0].push((e.a.0, e.weight));
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { adj }
    }

    /// Dijkstra from `dst`; the graph is undirected so these are distances to `dst`.
    fn distances_to(&self, dst: usize) -> Vec<Option<u64>> {
        let mut dist = vec![None; self.adj.len()];
        let mut heap = BinaryHeap::new();
        dist[dst] = Some(0);
        heap.push(Reverse((0u64, dst)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u].is_some_and(|best| d > best) {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                let cand = d + w;
                if dist[v].is_none_or(|cur| cand < cur) {
                    dist[v] = Some(cand);
                    heap.push(Reverse((cand, v)));
                }
            }
        }
        dist
    }

    /// Lowest-numbered neighbour on a shortest path to the destination of `dist`.
    fn next_hop(&self, u: usize, dist: &[Option<u64>]) -> NextHop {
        match dist[u] {
            None => NextHop::Unreachable,
            Some(0) => NextHop::Local,
            Some(du) => self.adj[u]
                .iter()
                .find(|&&(v, w)| dist[v].is_some_and(|dv| dv + w == du))
                .map(|&(v, _)| NextHop::Via(RouterId(v)))
                .expect("a finite distance has a predecessor"),
        }
    }
}

/// Removes failed links (bit 0) and computes shortest-path routes.
///
/// Ties between equal-cost next hops go to the neighbour with the lowest
/// router encoding.
pub fn igp_routes(net: &ControlPlaneNetwork, fail: Bits) -> Result<RoutingTable> {
    fail.check_width(net.edge_count())?;
    let g = Graph::new(net, fail.value());
    let r = net.routers().len();
    let mut next = vec![vec![NextHop::Unreachable; r]; r];
    for dst in 0..r {
        let dist = g.distances_to(dst);
        for (u, row) in next.iter_mut().enumerate() {
            row[dst] = g.next_hop(u, &dist);
        }
    }
    Ok(RoutingTable { next })
}

/// `f` specialised to one problem, for repeated evaluation.
pub struct Verifier<'a> {
    problem: &'a Problem,
}

impl<'a> Verifier<'a> {
    pub fn new(problem: &'a Problem) -> Self {
        Self { problem }
    }

    pub fn width(&self) -> usize {
        self.problem.width()
    }

    /// `f(x)` on the raw input value; `x` must fit in the problem width.
    pub fn eval(&self, x: u64) -> bool {
        match self.problem {
            Problem::DataPlane { net, prop } => match *prop {
                Property::ReachWithin { src, dst, hops } => {
                    walk(net, src, x, hops, Some(dst), |_, _| {}) == Termination::ReachedDestination
                }
                Property::ExceedsHops { src, hops } => {
                    walk(net, src, x, hops, None, |_, _| {}) == Termination::HopBudgetExhausted
                }
                _ => unreachable!("problem construction pairs planes"),
            },
            Problem::ControlPlane { net, prop } => eval_controlplane(net, prop, x),
        }
    }
}

fn over_cutoff(net: &ControlPlaneNetwork, x: u64, max_failures: Option<u32>) -> bool {
    let failures = net.edge_count() as u32 - x.count_ones();
    max_failures.is_some_and(|m| failures > m)
}

fn eval_controlplane(net: &ControlPlaneNetwork, prop: &Property, x: u64) -> bool {
    match *prop {
        Property::Disconnected {
            src,
            dst,
            max_failures,
        } => {
            if over_cutoff(net, x, max_failures) {
                return false;
            }
            Graph::new(net, x).distances_to(dst.0)[src.0].is_none()
        }
        Property::AvoidsWaypoint {
            src,
            dst,
            waypoint,
            max_failures,
        } => {
            if over_cutoff(net, x, max_failures) {
                return false;
            }
            let g = Graph::new(net, x);
            let dist = g.distances_to(dst.0);
            let mut at = src.0;
            loop {
                if at == dst.0 {
                    return true;
                }
                if at == waypoint.0 {
                    return false;
                }
                match g.next_hop(at, &dist) {
                    NextHop::Via(v) => at = v.0,
                    NextHop::Unreachable => return false,
                    NextHop::Local => unreachable!("only dst is local"),
                }
            }
        }
        _ => unreachable!("problem construction pairs planes"),
    }
}

/// `f(x)`: true when instance `x` is marked by the problem's property.
pub fn evaluate(problem: &Problem, x: Bits) -> Result<bool> {
    x.check_width(problem.width())?;
    Ok(Verifier::new(problem).eval(x.value()))
}

fn check_limit(problem: &Problem, limit: usize) -> Result<usize> {
    let n = problem.width();
    if n > limit {
        return Err(Error::ResourceLimit {
            what: "exhaustive sweep",
            requested: n,
            limit,
        });
    }
    Ok(n)
}

/// `f` over the whole input domain, indexed by instance value.
pub fn truth_table(problem: &Problem, limit: usize) -> Result<Vec<bool>> {
    let n = check_limit(problem, limit)?;
    let f = Verifier::new(problem);
    Ok((0..1u64 << n).into_par_iter().map(|x| f.eval(x)).collect())
}

/// Every marked instance, ascending.
pub fn brute_force(problem: &Problem) -> Result<Vec<Bits>> {
    brute_force_with_limit(problem, DEFAULT_BRUTE_FORCE_LIMIT)
}

pub fn brute_force_with_limit(problem: &Problem, limit: usize) -> Result<Vec<Bits>> {
    let n = check_limit(problem, limit)?;
    let f = Verifier::new(problem);
    let marked: Vec<u64> = (0..1u64 << n).into_par_iter().filter(|&x| f.eval(x)).collect();
    Ok(marked
        .into_iter()
        .map(|x| Bits::new(n, x).expect("in range"))
        .collect())
}
