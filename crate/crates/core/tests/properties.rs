mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qnwv::bits::Bits;
use qnwv::circuit::{Circuit, Gate, StateVector};
use qnwv::classical::{brute_force, evaluate, simulate_dataplane, Termination};
use qnwv::grover::{diffuser, find_all, prepare_init, search, GroverPlan, InitSpec};
use qnwv::netmodel::{
    parse_controlplane, parse_dataplane, shipped, wildcard_match, Mode, Problem, Property,
    WildcardPattern,
};
use qnwv::oracle::{add_exclusion, compile, compile_gate, Backend, ExclusionSet, OracleOptions};
use qnwv::resources::{controlplane_qubits, dataplane_qubits, ControlPlaneParams, DataPlaneParams};

use common::{naive_controlplane, naive_dataplane, problem, random_controlplane, random_dataplane};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn arb_gate(m: usize) -> impl Strategy<Value = Gate> {
    (0u8..8, 0..m, 0..m, proptest::collection::btree_set(0..m, 0..4), -6.3f64..6.3).prop_map(
        move |(kind, t, c, cs, theta)| {
            let c = if c == t { (t + 1) % m } else { c };
            let controls: Vec<usize> = cs.into_iter().filter(|&q| q != t).collect();
            match kind {
                0 => Gate::X(t),
                1 => Gate::H(t),
                2 => Gate::Z(t),
                3 => Gate::Ry(t, theta),
                4 => Gate::Cx { control: c, target: t },
                5 => Gate::Cz { control: c, target: t },
                6 => Gate::Mcx { controls, target: t },
                _ => Gate::Mcz { controls, target: t },
            }
        },
    )
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=8).prop_flat_map(|m| {
        proptest::collection::vec(arb_gate(m), 1..200).prop_map(move |gates| {
            let mut c = Circuit::new(m);
            for g in gates {
                c.push(g).unwrap();
            }
            c
        })
    })
}

fn random_state(seed: u64, m: usize) -> StateVector {
    use rand::Rng;
    let mut r = rng(seed);
    let raw: Vec<Complex64> = (0..1 << m)
        .map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(m, raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn marked(problem: &Problem) -> BTreeSet<Bits> {
    brute_force(problem).unwrap().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_preserved(c in arb_circuit(), seed in any::<u64>()) {
        let mut s = random_state(seed, c.width());
        c.run(&mut s).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn circuit_then_inverse_is_identity(c in arb_circuit(), seed in any::<u64>()) {
        let s0 = random_state(seed, c.width());
        let mut s = s0.clone();
        c.run(&mut s).unwrap();
        c.inverse().run(&mut s).unwrap();
        for (a, b) in s.amplitudes().iter().zip(s0.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn all_wildcard_matches_everything(n in 1usize..=16, h in any::<u64>()) {
        let p: WildcardPattern = "*".repeat(n).parse().unwrap();
        let h = Bits::new(n, h & ((1 << n) - 1)).unwrap();
        prop_assert!(wildcard_match(&p, h).unwrap());
    }

    #[test]
    fn dataplane_documents_round_trip(seed in any::<u64>()) {
        let (doc, _) = random_dataplane(&mut rng(seed));
        let net = parse_dataplane(&doc.to_string()).unwrap();
        let again = parse_dataplane(&net.to_json()).unwrap();
        prop_assert_eq!(&again, &net);
        for (i, name) in net.routers().names().iter().enumerate() {
            prop_assert_eq!(net.routers().id(name).unwrap().index(), i);
        }
    }

    #[test]
    fn controlplane_documents_round_trip(seed in any::<u64>()) {
        let (doc, _) = random_controlplane(&mut rng(seed), false);
        let net = parse_controlplane(&doc.to_string()).unwrap();
        prop_assert_eq!(parse_controlplane(&net.to_json()).unwrap(), net);
    }

    #[test]
    fn dataplane_matches_naive_evaluation(seed in any::<u64>()) {
        let (net, prop) = random_dataplane(&mut rng(seed));
        let p = problem(Mode::Dataplane, &net, &prop);
        for x in 0..1u64 << p.width() {
            let got = evaluate(&p, Bits::new(p.width(), x).unwrap()).unwrap();
            prop_assert_eq!(got, naive_dataplane(&net, &prop, x), "header {}", x);
        }
    }

    #[test]
    fn controlplane_matches_naive_evaluation(seed in any::<u64>(), waypoint in any::<bool>()) {
        let (net, prop) = random_controlplane(&mut rng(seed), waypoint);
        let p = problem(Mode::Controlplane, &net, &prop);
        let expected: BTreeSet<Bits> = (0..1u64 << p.width())
            .filter(|&x| naive_controlplane(&net, &prop, x))
            .map(|x| Bits::new(p.width(), x).unwrap())
            .collect();
        prop_assert_eq!(marked(&p), expected);
    }

    #[test]
    fn traces_respect_the_hop_bound(seed in any::<u64>()) {
        let (net, prop) = random_dataplane(&mut rng(seed));
        let p = problem(Mode::Dataplane, &net, &prop);
        let Problem::DataPlane { net, prop } = &p else { unreachable!() };
        let (src, dst, k) = match *prop {
            Property::ReachWithin { src, dst, hops } => (src, Some(dst), hops),
            Property::ExceedsHops { src, hops } => (src, None, hops),
            _ => unreachable!(),
        };
        for x in 0..1u64 << p.width() {
            let h = Bits::new(p.width(), x).unwrap();
            let t = simulate_dataplane(net, src, h, k, dst).unwrap();
            prop_assert!(t.hops.len() <= k as usize + 1);
            prop_assert_eq!(t.hops.len(), t.headers.len());
            if evaluate(&p, h).unwrap() && dst.is_some() {
                prop_assert_eq!(t.terminated, Termination::ReachedDestination);
                prop_assert_eq!(t.hops.last().copied(), dst);
            }
        }
    }

    #[test]
    fn gate_oracle_is_an_involution(seed in any::<u64>()) {
        let (net, prop) = random_dataplane(&mut rng(seed));
        let p = Arc::new(problem(Mode::Dataplane, &net, &prop));
        let g = match compile_gate(p, OracleOptions::default()) {
            Ok(g) if g.width() <= 14 => g,
            _ => return Ok(()),
        };
        for x in 0..1usize << g.input_width() {
            let mut s = StateVector::basis(g.width(), x).unwrap();
            g.apply(&mut s).unwrap();
            g.apply(&mut s).unwrap();
            prop_assert!((s.amplitudes()[x] - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn exclusion_removes_exactly_the_excluded(seed in any::<u64>(), pick in any::<u64>()) {
        let (net, prop) = random_controlplane(&mut rng(seed), false);
        let p = Arc::new(problem(Mode::Controlplane, &net, &prop));
        let n = p.width();
        let excl: ExclusionSet = (0..1u64 << n)
            .filter(|x| (pick >> (x % 64)) & 1 == 1)
            .map(|x| Bits::new(n, x).unwrap())
            .collect();
        let before = marked(&p);
        let expected: BTreeSet<u64> = before
            .iter()
            .filter(|x| !excl.contains(x))
            .map(Bits::value)
            .collect();
        for backend in [Backend::Diagonal, Backend::GateLevel] {
            let o = compile(p.clone(), backend, OracleOptions::default(), &ExclusionSet::new()).unwrap();
            if o.width() > 16 {
                continue;
            }
            let o = add_exclusion(o, &excl).unwrap();
            let got: BTreeSet<u64> = (0..1u64 << n).filter(|&x| o.is_marked(x)).collect();
            prop_assert_eq!(&got, &expected);
            if backend == Backend::GateLevel {
                let runs = common::basis_phases(&o);
                let phases: BTreeSet<u64> =
                    runs.iter().enumerate().filter(|(_, r)| r.0).map(|(x, _)| x as u64).collect();
                prop_assert_eq!(&phases, &expected);
            }
        }
    }

    #[test]
    fn reset_never_costs_more_under_sweep_conventions(
        routers in 2u64..200,
        rules in 1u64..60,
        log_headers in 1u32..48,
        iterates in 1u64..20,
        edges in 1u64..500,
    ) {
        let dp = DataPlaneParams::sweep_convention(routers, rules, 1 << log_headers, iterates);
        prop_assert!(dataplane_qubits(&dp, true).unwrap() <= dataplane_qubits(&dp, false).unwrap());
        let cp = ControlPlaneParams::sweep_convention(routers, edges);
        prop_assert!(controlplane_qubits(&cp, true).unwrap() <= controlplane_qubits(&cp, false).unwrap());
    }

    #[test]
    fn dataplane_reset_never_costs_more(
        headers in 1u64..1 << 40,
        wildcards in 1u64..500,
        ports in 1u64..500,
        hops in 1u64..100,
        iterates in 1u64..20,
    ) {
        let p = DataPlaneParams { headers, routers: 1, rules_per_router: 1, wildcards, ports, max_hops: hops, iterates };
        prop_assert!(dataplane_qubits(&p, true).unwrap() <= dataplane_qubits(&p, false).unwrap());
    }

    #[test]
    fn counts_are_monotone(
        base in (1u64..1 << 30, 1u64..100, 1u64..100, 1u64..50, 1u64..10),
        cp in (1u64..100, 1u64..200, 1u64..50, 1u64..50),
        which in 0usize..5,
        reset in any::<bool>(),
    ) {
        let (headers, wildcards, ports, hops, iterates) = base;
        let p = DataPlaneParams { headers, routers: 1, rules_per_router: 1, wildcards, ports, max_hops: hops, iterates };
        let mut q = p;
        match which {
            0 => q.headers += 1,
            1 => q.wildcards += 1,
            2 => q.ports += 1,
            3 => q.max_hops += 1,
            _ => q.iterates += 1,
        }
        prop_assert!(dataplane_qubits(&q, reset).unwrap() >= dataplane_qubits(&p, reset).unwrap());

        let (routers, edges, diameter, iterates) = cp;
        let c = ControlPlaneParams { routers, edges, diameter, iterates };
        let mut d = c;
        match which % 4 {
            0 => d.routers += 1,
            1 => d.edges += 1,
            2 => d.diameter += 1,
            _ => d.iterates += 1,
        }
        prop_assert!(controlplane_qubits(&d, reset).unwrap() >= controlplane_qubits(&c, reset).unwrap());
    }

    #[test]
    fn biased_start_follows_the_product_law(n in 1usize..=8, p in 0.01f64..0.99) {
        let (s, _) = prepare_init(n, InitSpec::Biased { p }).unwrap();
        for (x, a) in s.amplitudes().iter().enumerate() {
            let z = (n as u32 - (x as u32).count_ones()) as i32;
            let want = p.powi(z) * (1.0 - p).powi(n as i32 - z);
            prop_assert!((a.norm_sqr() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn one_iterate_preserves_norm(seed in any::<u64>(), p in 0.05f64..0.95, biased in any::<bool>()) {
        let (net, prop) = random_controlplane(&mut rng(seed), false);
        let pr = Arc::new(problem(Mode::Controlplane, &net, &prop));
        let o = compile(pr, Backend::Diagonal, OracleOptions::default(), &ExclusionSet::new()).unwrap();
        let init = if biased { InitSpec::Biased { p } } else { InitSpec::Uniform };
        let n = o.input_width();
        let d = diffuser(&init.circuit(n).unwrap(), n).unwrap();
        let mut s = random_state(seed, n);
        o.apply(&mut s).unwrap();
        d.run(&mut s).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
    }
}

/// Exhaustive over every graph drawn: removing an up link never reconnects.
#[test]
fn disconnection_is_monotone_in_failures() {
    let mut r = rng(12);
    let mut checked = 0;
    while checked < 40 {
        let names: Vec<String> = (0..6).map(|i| format!("V{i}")).collect();
        let mut pairs: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
        rand::seq::SliceRandom::shuffle(pairs.as_mut_slice(), &mut r);
        let n = 6 + checked % 7;
        let edges: Vec<serde_json::Value> = pairs[..n]
            .iter()
            .enumerate()
            .map(|(id, &(a, b))| serde_json::json!({"id": id, "a": names[a], "b": names[b], "weight": 1 + id % 3}))
            .collect();
        let net = serde_json::json!({"routers": names, "edges": edges});
        let prop = serde_json::json!({"kind": "disconnected", "src": "V0", "dst": "V5"});
        let p = problem(Mode::Controlplane, &net, &prop);
        let table: Vec<bool> = (0..1u64 << n)
            .map(|x| evaluate(&p, Bits::new(n, x).unwrap()).unwrap())
            .collect();
        for x in 0..1usize << n {
            if table[x] {
                for e in 0..n {
                    assert!(table[x & !(1 << e)], "failing link {e} reconnected instance {x:b}");
                }
            }
        }
        checked += 1;
    }
}

#[test]
fn find_all_matches_brute_force_on_shipped_examples() {
    for (name, p) in shipped::all() {
        let n = p.width();
        assert!(n <= 10);
        let expected = marked(&p);
        let found = find_all(Arc::new(p), 1 << n, 1000, 17).unwrap();
        assert_eq!(found.solutions, expected, "{name}");
    }
}

#[test]
fn searches_are_seed_deterministic() {
    for (name, p) in shipped::all() {
        let o = Arc::new(
            compile(Arc::new(p), Backend::Diagonal, OracleOptions::default(), &ExclusionSet::new()).unwrap(),
        );
        let plan = GroverPlan::new(o, InitSpec::Biased { p: 0.3 }, 2000, 5).unwrap();
        assert_eq!(search(&plan).unwrap(), search(&plan).unwrap(), "{name}");
    }
}

#[test]
fn evaluate_is_pure() {
    let p = shipped::square_waypoint();
    let first: Vec<bool> = (0..16).map(|x| evaluate(&p, Bits::new(4, x).unwrap()).unwrap()).collect();
    let second: Vec<bool> = (0..16).map(|x| evaluate(&p, Bits::new(4, x).unwrap()).unwrap()).collect();
    assert_eq!(first, second);
}
