#![allow(dead_code)]

use std::collections::{BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qnwv::circuit::StateVector;
use qnwv::netmodel::{Mode, Problem};
use qnwv::oracle::CompiledOracle;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn bitset(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn router_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("R{i}")).collect()
}

fn pattern(rng: &mut ChaCha8Rng, width: usize, alphabet: &[char]) -> String {
    (0..width).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

/// A random data-plane network document and a hop-bounded property for it.
pub fn random_dataplane(rng: &mut ChaCha8Rng) -> (Value, Value) {
    let width = rng.gen_range(1..=5);
    let count = rng.gen_range(2..=4);
    let names = router_names(count);
    // at most two rewritable bits keeps the per-hop registers small
    let rewritable: Vec<usize> = (0..width).filter(|_| rng.gen_bool(0.3)).take(2).collect();
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(0..=6) {
        let router = names.choose(rng).unwrap();
        let next = names.choose(rng).unwrap();
        let rewrite: String = (0..width)
            .rev()
            .map(|bit| {
                if rewritable.contains(&bit) && rng.gen_bool(0.5) {
                    if rng.gen_bool(0.5) { '1' } else { '0' }
                } else {
                    '.'
                }
            })
            .collect();
        rules.push(json!({
            "router": router,
            "match": pattern(rng, width, &['0', '1', '*', '*']),
            "next_hop": next,
            "rewrite": rewrite,
        }));
    }
    let src = names.choose(rng).unwrap().clone();
    let net = json!({
        "header_width": width,
        "routers": names,
        "source": src,
        "rules": rules,
    });
    let k = rng.gen_range(1..=3);
    let prop = if rng.gen_bool(0.5) {
        json!({"kind": "reach_within", "src": src, "dst": names.choose(rng).unwrap(), "k": k})
    } else {
        json!({"kind": "exceeds_hops", "src": src, "k": k})
    };
    (net, prop)
}

/// A random connected-or-not graph with weighted edges and a reachability
/// property over it.
pub fn random_controlplane(rng: &mut ChaCha8Rng, waypoint: bool) -> (Value, Value) {
    let count = rng.gen_range(if waypoint { 3 } else { 2 }..=5);
    let names = router_names(count);
    let mut pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|a| (a + 1..count).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let n = rng.gen_range(1..=pairs.len().min(8));
    let edges: Vec<Value> = pairs[..n]
        .iter()
        .enumerate()
        .map(|(id, &(a, b))| {
            json!({"id": id, "a": names[a], "b": names[b], "weight": rng.gen_range(1..=3)})
        })
        .collect();
    let net = json!({"routers": names, "edges": edges});
    let src = rng.gen_range(0..count);
    let dst = (src + rng.gen_range(1..count)) % count;
    let mut prop = json!({"src": names[src], "dst": names[dst]});
    if rng.gen_bool(0.5) {
        prop["max_failures"] = json!(rng.gen_range(0..=n as u32));
    }
    if waypoint {
        prop["kind"] = json!("avoids_waypoint");
        let others: Vec<usize> = (0..count).filter(|&v| v != src && v != dst).collect();
        prop["waypoint"] = json!(names[*others.choose(rng).unwrap()]);
    } else {
        prop["kind"] = json!("disconnected");
    }
    (net, prop)
}

pub fn problem(mode: Mode, net: &Value, prop: &Value) -> Problem {
    Problem::from_documents(mode, &net.to_string(), &prop.to_string()).unwrap()
}

/// Applies a classical oracle circuit to one superposition in which input
/// `x` carries a distinct real amplitude, and reads back each input's phase.
/// Returns `None` unless every input came back as `±|x⟩|0⟩`; the second
/// value is the smallest probability mass found on the all-zero ancilla
/// register for any input.
pub fn tagged_phases(oracle: &CompiledOracle) -> Option<(Vec<bool>, f64)> {
    let circuit = oracle.circuit()?;
    assert!(circuit.is_classical());
    let n = oracle.input_width();
    let dim_in = 1usize << n;
    let weights: Vec<f64> = (0..dim_in).map(|x| (x + 1) as f64).collect();
    let norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << oracle.width()];
    for x in 0..dim_in {
        amps[x] = Complex64::new(weights[x] / norm, 0.0);
    }
    let mut s = StateVector::from_amplitudes(oracle.width(), amps).unwrap();
    oracle.apply(&mut s).unwrap();
    let out = s.amplitudes();
    let mut phases = Vec::with_capacity(dim_in);
    let mut worst = 1.0f64;
    for x in 0..dim_in {
        let a = out[x];
        let expected = weights[x] / norm;
        // permutations with signs keep magnitudes, so a match pins the preimage
        let ok = (a.re.abs() - expected).abs() < 1e-9 && a.im.abs() < 1e-9;
        if !ok {
            return None;
        }
        worst = worst.min(a.norm_sqr() / (expected * expected));
        phases.push(a.re < 0.0);
    }
    Some((phases, worst))
}

/// Per-input state-vector runs: phase of `x` and the probability that the
/// ancillas are all zero afterwards.
pub fn basis_phases(oracle: &CompiledOracle) -> Vec<(bool, f64)> {
    let n = oracle.input_width();
    (0..1usize << n)
        .map(|x| {
            let mut s = StateVector::basis(oracle.width(), x).unwrap();
            oracle.apply(&mut s).unwrap();
            let zero_ancilla: f64 = s.amplitudes()[..1 << n].iter().map(|a| a.norm_sqr()).sum();
            (s.amplitudes()[x].re < 0.0, zero_ancilla)
        })
        .collect()
}

// Naive evaluators written directly from the rule text, sharing no code with
// the library's classical module.

fn naive_matches(pattern: &str, header: u64) -> bool {
    let w = pattern.len();
    pattern.chars().enumerate().all(|(i, c)| {
        let bit = (header >> (w - 1 - i)) & 1;
        match c {
            '*' => true,
            '0' => bit == 0,
            '1' => bit == 1,
            _ => panic!("bad pattern"),
        }
    })
}

fn naive_rewrite(rewrite: &str, header: u64) -> u64 {
    let w = rewrite.len();
    let mut h = header;
    for (i, c) in rewrite.chars().enumerate() {
        let bit = w - 1 - i;
        match c {
            '0' => h &= !(1 << bit),
            '1' => h |= 1 << bit,
            _ => {}
        }
    }
    h
}

pub fn naive_dataplane(net: &Value, prop: &Value, header: u64) -> bool {
    let width = net["header_width"].as_u64().unwrap() as usize;
    let src = prop["src"]
        .as_str()
        .or(net["source"].as_str())
        .unwrap()
        .to_string();
    let k = prop["k"].as_u64().unwrap();
    let dst = prop["dst"].as_str().map(str::to_string);
    let rules = net["rules"].as_array().unwrap();
    let mut at = src;
    let mut h = header;
    let mut hops = 0;
    loop {
        if let Some(d) = &dst {
            if &at == d {
                return true;
            }
        }
        if hops == k {
            // k edges traversed without getting stuck
            return dst.is_none();
        }
        match step(rules, &at, h, width) {
            Some((next, nh)) => {
                at = next;
                h = nh;
                hops += 1;
            }
            None => return false,
        }
    }
}

fn step(rules: &[Value], at: &str, h: u64, width: usize) -> Option<(String, u64)> {
    rules
        .iter()
        .filter(|r| r["router"] == at)
        .find(|r| naive_matches(r["match"].as_str().unwrap(), h))
        .map(|r| {
            let rw = r["rewrite"].as_str().map_or_else(|| ".".repeat(width), str::to_string);
            (r["next_hop"].as_str().unwrap().to_string(), naive_rewrite(&rw, h))
        })
}

/// Shortest paths to `dst` with the smallest-id neighbour breaking ties;
/// returns the route from `src` or `None` when unreachable.
fn naive_route(net: &Value, up: u64, src: usize, dst: usize) -> Option<Vec<usize>> {
    let names: Vec<&str> = net["routers"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let idx = |s: &str| names.iter().position(|n| *n == s).unwrap();
    let mut edges = vec![(0usize, 0usize, 0u64); net["edges"].as_array().unwrap().len()];
    for e in net["edges"].as_array().unwrap() {
        let id = e["id"].as_u64().unwrap() as usize;
        edges[id] = (idx(e["a"].as_str().unwrap()), idx(e["b"].as_str().unwrap()), e["weight"].as_u64().unwrap());
    }
    let r = names.len();
    let mut dist = vec![u64::MAX; r];
    dist[dst] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, dst)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for (i, &(a, b, w)) in edges.iter().enumerate() {
            if (up >> i) & 1 == 0 {
                continue;
            }
            let u = if a == v { b } else if b == v { a } else { continue };
            if d + w < dist[u] {
                dist[u] = d + w;
                heap.push(Reverse((d + w, u)));
            }
        }
    }
    if dist[src] == u64::MAX {
        return None;
    }
    let mut path = vec![src];
    let mut at = src;
    while at != dst {
        let next = (0..r)
            .filter(|&u| {
                edges.iter().enumerate().any(|(i, &(a, b, w))| {
                    (up >> i) & 1 == 1
                        && ((a == at && b == u) || (b == at && a == u))
                        && dist[u] != u64::MAX
                        && dist[u] + w == dist[at]
                })
            })
            .min()
            .unwrap();
        path.push(next);
        at = next;
    }
    Some(path)
}

pub fn naive_controlplane(net: &Value, prop: &Value, up: u64) -> bool {
    let names: Vec<&str> = net["routers"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let idx = |s: &Value| names.iter().position(|n| *n == s.as_str().unwrap()).unwrap();
    let n = net["edges"].as_array().unwrap().len() as u32;
    let failures = n - up.count_ones();
    if let Some(m) = prop["max_failures"].as_u64() {
        if u64::from(failures) > m {
            return false;
        }
    }
    let (src, dst) = (idx(&prop["src"]), idx(&prop["dst"]));
    let route = naive_route(net, up, src, dst);
    match prop["kind"].as_str().unwrap() {
        "disconnected" => route.is_none(),
        "avoids_waypoint" => {
            let wp = idx(&prop["waypoint"]);
            route.is_some_and(|p| !p.contains(&wp))
        }
        other => panic!("unexpected kind {other}"),
    }
}
