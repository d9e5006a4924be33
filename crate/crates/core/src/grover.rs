//! Grover search over a compiled oracle.
//!
//! The input register is prepared by a product circuit `A` (Hadamards, or
//! `RY(θ_p)` for a biased start), and each iterate applies the oracle and
//! then the reflection `A (2|0⟩⟨0| − I) A† = 2|ψ⟩⟨ψ| − I`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_PI_4;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::circuit::{Circuit, Gate, StateVector};
use crate::classical::Verifier;
use crate::error::{Error, Result};
use crate::netmodel::Problem;
use crate::oracle::{compile, Backend, CompiledOracle, ExclusionSet, OracleOptions};

/// Attempts made at the capped BBHT window before giving up.
pub const BBHT_EXTRA_ATTEMPTS: u32 = 16;

const BBHT_GROWTH: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InitSpec {
    Uniform,
    /// Every qubit reads 0 with probability `p`.
    Biased { p: f64 },
}

impl InitSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            InitSpec::Uniform => Ok(()),
            InitSpec::Biased { p } if p > 0.0 && p < 1.0 => Ok(()),
            InitSpec::Biased { p } => Err(Error::InvalidProbability(p)),
        }
    }

    /// The preparation circuit `A` on qubits `0..n`.
    pub fn circuit(&self, n: usize) -> Result<Circuit> {
        self.validate()?;
        if n == 0 {
            return Err(Error::InvalidArgument("input register is empty".into()));
        }
        let mut a = Circuit::new(n);
        for q in 0..n {
            let g = match *self {
                InitSpec::Uniform => Gate::H(q),
                // RY(θ)|0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩
                InitSpec::Biased { p } => Gate::Ry(q, 2.0 * p.sqrt().acos()),
            };
            a.push(g)?;
        }
        Ok(a)
    }
}

/// Initial state and its preparation circuit.
pub fn prepare_init(n: usize, init: InitSpec) -> Result<(StateVector, Circuit)> {
    let a = init.circuit(n)?;
    let mut s = StateVector::new(n)?;
    a.run(&mut s)?;
    Ok((s, a))
}

/// Reflection about `A|0…0⟩`, as a circuit on the `n` qubits `A` acts on.
pub fn diffuser(a: &Circuit, n: usize) -> Result<Circuit> {
    if a.width() != n || n == 0 {
        return Err(Error::WidthMismatch {
            expected: n,
            found: a.width(),
        });
    }
    let mut d = a.inverse();
    for q in 0..n {
        d.push(Gate::X(q))?;
    }
    d.push(match n {
        1 => Gate::Z(0),
        _ => Gate::Mcz {
            controls: (0..n - 1).collect(),
            target: n - 1,
        },
    })?;
    for q in 0..n {
        d.push(Gate::X(q))?;
    }
    // X·MCZ·X is I − 2|0⟩⟨0|; RY(2π) = −I supplies the sign
    d.push(Gate::Ry(0, 2.0 * std::f64::consts::PI))?;
    d.append(a)?;
    Ok(d)
}

fn check_count(n: usize, k: u64) -> Result<()> {
    if n > 63 || k == 0 || k > 1u64 << n {
        return Err(Error::SolutionCount { n, k });
    }
    Ok(())
}

/// Iterates for a start state whose marked probability is `a`:
/// `⌊π/4 · √(1/a)⌋`, at least 1 unless `a = 1`.
fn iterates_for_fraction(a: f64) -> u64 {
    if a >= 1.0 {
        return 0;
    }
    ((FRAC_PI_4 / a.sqrt()).floor() as u64).max(1)
}

pub fn optimal_iterates(n: usize, k: u64) -> Result<u64> {
    check_count(n, k)?;
    if k == 1u64 << n {
        return Ok(0);
    }
    let ratio = (1u64 << n) as f64 / k as f64;
    Ok(((FRAC_PI_4 * ratio.sqrt()).floor() as u64).max(1))
}

/// `sin²((2G+1)θ)` with `θ = arcsin √(k/2^n)`, for a uniform start.
pub fn success_probability(n: usize, k: u64, iterates: u64) -> Result<f64> {
    check_count(n, k)?;
    let theta = (k as f64 / (1u64 << n) as f64).sqrt().asin();
    Ok(((2 * iterates + 1) as f64 * theta).sin().powi(2))
}

#[derive(Debug, Clone)]
pub struct GroverPlan {
    pub oracle: Arc<CompiledOracle>,
    pub init: InitSpec,
    pub iterates: u64,
    pub k_hint: Option<u64>,
    pub shots: u64,
    pub seed: u64,
}

impl GroverPlan {
    /// A plan whose iterate count assumes the oracle's true marked count.
    pub fn new(oracle: Arc<CompiledOracle>, init: InitSpec, shots: u64, seed: u64) -> Result<Self> {
        init.validate()?;
        let mut plan = Self {
            oracle,
            init,
            iterates: 0,
            k_hint: None,
            shots,
            seed,
        };
        let k = plan.oracle.marked_count()?;
        if k > 0 {
            plan.iterates = plan.default_iterates(k)?;
        }
        Ok(plan)
    }

    /// Uses `k` as the assumed solution count.
    pub fn with_k_hint(mut self, k: u64) -> Result<Self> {
        self.iterates = self.default_iterates(k)?;
        self.k_hint = Some(k);
        Ok(self)
    }

    pub fn with_iterates(mut self, iterates: u64) -> Self {
        self.iterates = iterates;
        self
    }

    fn default_iterates(&self, k: u64) -> Result<u64> {
        let n = self.oracle.input_width();
        check_count(n, k)?;
        match self.init {
            InitSpec::Uniform => optimal_iterates(n, k),
            InitSpec::Biased { .. } => {
                // the marked weight of the biased start plays the role of k/2^n
                let a = marked_weight(&self.oracle, self.init)?;
                if a == 0.0 {
                    optimal_iterates(n, k)
                } else {
                    Ok(iterates_for_fraction(a))
                }
            }
        }
    }
}

fn marked_weight(oracle: &CompiledOracle, init: InitSpec) -> Result<f64> {
    let n = oracle.input_width();
    let (s, _) = prepare_init(n, init)?;
    Ok(s.amplitudes()
        .iter()
        .enumerate()
        .filter(|&(x, _)| oracle.is_marked(x as u64))
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub histogram: BTreeMap<Bits, u64>,
    /// Sampled strings that pass a classical re-check (and are not excluded).
    pub confirmed: BTreeSet<Bits>,
    pub success_fraction: f64,
    /// Marked probability mass of the final state.
    pub exact_success: f64,
    pub iterates: u64,
    pub warnings: Vec<String>,
}

/// Final state after `iterates` rounds, on the oracle's full width.
pub fn evolve(oracle: &CompiledOracle, init: InitSpec, iterates: u64) -> Result<StateVector> {
    let n = oracle.input_width();
    let width = oracle.width();
    let a = init.circuit(n)?;
    let d = diffuser(&a, n)?.widened(width)?;
    let mut s = StateVector::new(width)?;
    a.widened(width)?.run(&mut s)?;
    for _ in 0..iterates {
        oracle.apply(&mut s)?;
        d.run(&mut s)?;
    }
    Ok(s)
}

fn input_probabilities(oracle: &CompiledOracle, s: &StateVector) -> Result<Vec<f64>> {
    let reg: Vec<usize> = oracle.input_register().collect();
    s.probabilities(&reg)
}

fn confirm(oracle: &CompiledOracle, x: &Bits) -> bool {
    let excluded = oracle.excluded().any(|e| e == x.value());
    !excluded && Verifier::new(oracle.problem()).eval(x.value())
}

fn sample(oracle: &CompiledOracle, s: &StateVector, shots: u64, seed: u64) -> Result<BTreeMap<Bits, u64>> {
    let reg: Vec<usize> = oracle.input_register().collect();
    s.measure_register(&reg, shots, seed)
}

pub fn search(plan: &GroverPlan) -> Result<SearchResult> {
    let oracle = &plan.oracle;
    let n = oracle.input_width();
    let mut warnings = Vec::new();
    let s = evolve(oracle, plan.init, plan.iterates)?;
    let probs = input_probabilities(oracle, &s)?;
    let exact_success: f64 = probs
        .iter()
        .enumerate()
        .filter(|&(x, _)| oracle.is_marked(x as u64))
        .map(|(_, p)| p)
        .sum();

    let histogram = sample(oracle, &s, plan.shots, plan.seed)?;
    let confirmed: BTreeSet<Bits> = histogram.keys().filter(|x| confirm(oracle, x)).copied().collect();
    let hits: u64 = confirmed.iter().map(|x| histogram[x]).sum();

    if plan.init == InitSpec::Uniform {
        if let Some(k) = plan.k_hint {
            let closed = FRAC_PI_4 * ((1u64 << n) as f64 / k as f64).sqrt();
            if closed < 1.0 && k < 1u64 << n {
                warnings.push(format!(
                    "closed-form iterate count {closed:.3} rounds to 0; using 1, which may over-rotate"
                ));
            }
        }
    }
    if exact_success < 0.5 && oracle.marked_count()? > 0 {
        warnings.push(format!(
            "success probability {exact_success:.4} after {} iterates; the iterate count does not match the solution density",
            plan.iterates
        ));
    }
    Ok(SearchResult {
        histogram,
        confirmed,
        success_fraction: hits as f64 / plan.shots as f64,
        exact_success,
        iterates: plan.iterates,
        warnings,
    })
}

/// Search for an unknown number of solutions: the iterate count is drawn
/// uniformly from a window `[0, m)` that grows by a factor 1.2 up to
/// `⌈√2^n⌉`, one shot per attempt, until a sample is confirmed.
pub fn bbht_search(plan: &GroverPlan) -> Result<SearchResult> {
    let oracle = &plan.oracle;
    let n = oracle.input_width();
    let cap = ((1u64 << n) as f64).sqrt().ceil() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut histogram = BTreeMap::new();
    let mut m = 1u64;
    let mut extra = 0;
    let mut last: (f64, u64);
    let mut attempts = 0u64;
    loop {
        let g = rng.gen_range(0..m);
        let s = evolve(oracle, plan.init, g)?;
        let probs = input_probabilities(oracle, &s)?;
        last = (
            probs
                .iter()
                .enumerate()
                .filter(|&(x, _)| oracle.is_marked(x as u64))
                .map(|(_, p)| p)
                .sum(),
            g,
        );
        let shot = sample(oracle, &s, 1, rng.gen())?;
        attempts += 1;
        let (x, _) = shot.into_iter().next().expect("one shot");
        *histogram.entry(x).or_insert(0) += 1;
        if confirm(oracle, &x) {
            break;
        }
        if m == cap {
            extra += 1;
            if extra >= BBHT_EXTRA_ATTEMPTS {
                break;
            }
        }
        m = ((m as f64 * BBHT_GROWTH).ceil() as u64).min(cap);
    }
    let confirmed: BTreeSet<Bits> = histogram.keys().filter(|x| confirm(oracle, x)).copied().collect();
    let hits: u64 = confirmed.iter().map(|x| histogram[x]).sum();
    Ok(SearchResult {
        histogram,
        confirmed,
        success_fraction: hits as f64 / attempts as f64,
        exact_success: last.0,
        iterates: last.1,
        warnings: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindAllResult {
    pub solutions: BTreeSet<Bits>,
    pub rounds: u32,
    /// One search result per round.
    pub history: Vec<SearchResult>,
}

/// Repeats the search with every confirmed solution excluded from the oracle
/// until a round finds nothing new or `budget` rounds have run. Round `i`
/// samples with seed `seed + i`.
pub fn find_all(problem: Arc<Problem>, budget: u32, shots: u64, seed: u64) -> Result<FindAllResult> {
    find_all_with(problem, budget, shots, seed, Backend::Diagonal, OracleOptions::default())
}

/// [`find_all`] on a chosen oracle backend.
pub fn find_all_with(
    problem: Arc<Problem>,
    budget: u32,
    shots: u64,
    seed: u64,
    backend: Backend,
    options: OracleOptions,
) -> Result<FindAllResult> {
    if budget == 0 {
        return Err(Error::InvalidArgument("round budget must be at least 1".into()));
    }
    let n = problem.width();
    let mut seen = ExclusionSet::new();
    let mut rounds = 0;
    let mut history = Vec::new();
    while rounds < budget {
        rounds += 1;
        let oracle = Arc::new(compile(problem.clone(), backend, options, &seen)?);
        let k = oracle.marked_count()?;
        let iterates = if k == 0 {
            0
        } else {
            // sampling the start state directly beats an over-rotated iterate
            let g = optimal_iterates(n, k)?;
            if success_probability(n, k, g)? >= success_probability(n, k, 0)? {
                g
            } else {
                0
            }
        };
        let plan = GroverPlan {
            oracle,
            init: InitSpec::Uniform,
            iterates,
            k_hint: None,
            shots,
            seed: seed.wrapping_add(u64::from(rounds - 1)),
        };
        let result = search(&plan)?;
        let mut fresh = false;
        for &x in &result.confirmed {
            fresh |= seen.insert(x);
        }
        history.push(result);
        if !fresh {
            break;
        }
    }
    Ok(FindAllResult {
        solutions: seen.iter().copied().collect(),
        rounds,
        history,
    })
}
