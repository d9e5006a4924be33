//! Dense state vector and gate kernels.
//!
//! Kernels walk amplitude pairs `(i, i | 1 << target)` with a bit mask for
//! the controls. Large states are split across rayon workers; each amplitude
//! pair is touched by exactly one worker, so results do not depend on the
//! thread count.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Gate;
use crate::bits::Bits;
use crate::error::{Error, Result};

/// Widest register the simulator will allocate (2^26 amplitudes, 1 GiB).
pub const MAX_QUBITS: usize = 26;

pub const NORM_TOLERANCE: f64 = 1e-12;

const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

fn check_width(width: usize) -> Result<()> {
    if width > MAX_QUBITS {
        return Err(Error::ResourceLimit {
            what: "state vector",
            requested: width,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// |0…0⟩ on `width` qubits.
    pub fn new(width: usize) -> Result<Self> {
        Self::basis(width, 0)
    }

    pub fn basis(width: usize, index: usize) -> Result<Self> {
        check_width(width)?;
        let dim = 1usize << width;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} outside a {width}-qubit register"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { width, amps })
    }

    pub fn from_amplitudes(width: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_width(width)?;
        if amps.len() != 1 << width {
            return Err(Error::WidthMismatch {
                expected: 1 << width,
                found: amps.len(),
            });
        }
        Ok(Self { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.width)?;
        let mask = |qs: &[usize]| qs.iter().fold(0usize, |m, &q| m | 1 << q);
        match *gate {
            Gate::X(t) => for_each_pair(&mut self.amps, t, 0, std::mem::swap),
            Gate::Cx { control, target } => {
                for_each_pair(&mut self.amps, target, 1 << control, std::mem::swap)
            }
            Gate::Mcx {
                ref controls,
                target,
            } => for_each_pair(&mut self.amps, target, mask(controls), |a, b| {
                std::mem::swap(a, b)
            }),
            Gate::H(t) => for_each_pair(&mut self.amps, t, 0, |a, b| {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }),
            Gate::Ry(t, theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                for_each_pair(&mut self.amps, t, 0, |a, b| {
                    let (x, y) = (*a, *b);
                    *a = x * c - y * s;
                    *b = x * s + y * c;
                })
            }
            Gate::Z(t) => negate_where(&mut self.amps, 1 << t),
            Gate::Cz { control, target } => {
                negate_where(&mut self.amps, 1 << control | 1 << target)
            }
            Gate::Mcz {
                ref controls,
                target,
            } => negate_where(&mut self.amps, mask(controls) | 1 << target),
            Gate::Reset(q) => self.reset(q)?,
        }
        Ok(())
    }

    fn reset(&mut self, q: usize) -> Result<()> {
        let bit = 1usize << q;
        let p0: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if p0 < NORM_TOLERANCE {
            return Err(Error::ZeroNormReset(q));
        }
        let scale = 1.0 / p0.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit == 0 {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(())
    }

    /// Multiplies every amplitude whose index satisfies `marked` by −1.
    pub fn flip_phases(&mut self, marked: impl Fn(usize) -> bool + Sync) {
        let flip = |(i, a): (usize, &mut Complex64)| {
            if marked(i) {
                *a = -*a;
            }
        };
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_iter_mut().enumerate().for_each(flip);
        } else {
            self.amps.iter_mut().enumerate().for_each(flip);
        }
    }

    /// Marginal distribution over `register`; entry `v` is the probability that
    /// qubit `register[j]` reads bit `j` of `v` for every `j`.
    pub fn probabilities(&self, register: &[usize]) -> Result<Vec<f64>> {
        for &q in register {
            if q >= self.width {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    width: self.width,
                });
            }
        }
        let mut out = vec![0.0; 1 << register.len()];
        let identity = register.iter().enumerate().all(|(j, &q)| j == q);
        for (i, a) in self.amps.iter().enumerate() {
            let v = if identity {
                i & ((1 << register.len()) - 1)
            } else {
                gather(i, register)
            };
            out[v] += a.norm_sqr();
        }
        Ok(out)
    }

    /// Samples `shots` outcomes of `register` with a ChaCha8 stream seeded by `seed`.
    pub fn measure_register(
        &self,
        register: &[usize],
        shots: u64,
        seed: u64,
    ) -> Result<BTreeMap<Bits, u64>> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        let probs = self.probabilities(register)?;
        let cdf: Vec<f64> = probs
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        let total = *cdf.last().expect("nonempty distribution");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; probs.len()];
        for _ in 0..shots {
            let u = rng.gen::<f64>() * total;
            let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            counts[idx] += 1;
        }
        Ok(counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(v, c)| (Bits::new(register.len(), v as u64).expect("fits"), c))
            .collect())
    }

    pub fn measure_all(&self, shots: u64, seed: u64) -> Result<BTreeMap<Bits, u64>> {
        let all: Vec<usize> = (0..self.width).collect();
        self.measure_register(&all, shots, seed)
    }
}

fn gather(index: usize, register: &[usize]) -> usize {
    register
        .iter()
        .enumerate()
        .fold(0, |v, (j, &q)| v | ((index >> q) & 1) << j)
}

fn for_each_pair<F>(amps: &mut [Complex64], target: usize, ctrl: usize, f: F)
where
    F: Fn(&mut Complex64, &mut Complex64) + Sync + Send,
{
    let stride = 1usize << target;
    let block = stride << 1;
    let body = |(ci, chunk): (usize, &mut [Complex64])| {
        let base = ci * block;
        let (lo, hi) = chunk.split_at_mut(stride);
        for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
            if (base + j) & ctrl == ctrl {
                f(a, b);
            }
        }
    };
    if amps.len() < PAR_THRESHOLD {
        amps.chunks_mut(block).enumerate().for_each(body);
    } else if amps.len() / block >= 64 {
        amps.par_chunks_mut(block).enumerate().for_each(body);
    } else {
        // few wide blocks: split inside each block instead
        for (ci, chunk) in amps.chunks_mut(block).enumerate() {
            let base = ci * block;
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .enumerate()
                .for_each(|(j, (a, b))| {
                    if (base + j) & ctrl == ctrl {
                        f(a, b);
                    }
                });
        }
    }
}

fn negate_where(amps: &mut [Complex64], mask: usize) {
    let neg = |(i, a): (usize, &mut Complex64)| {
        if i & mask == mask {
            *a = -*a;
        }
    };
    if amps.len() >= PAR_THRESHOLD {
        amps.par_iter_mut().enumerate().for_each(neg);
    } else {
        amps.iter_mut().enumerate().for_each(neg);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{run, Circuit};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: &StateVector, b: &StateVector, tol: f64) -> bool {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::new(1).unwrap();
        s.apply(&Gate::H(0)).unwrap();
        assert!((s.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn mcz_flips_all_ones() {
        let mut s = StateVector::basis(3, 0b111).unwrap();
        s.apply(&Gate::Mcz {
            controls: vec![0, 1],
            target: 2,
        })
        .unwrap();
        assert_eq!(s.amplitudes()[7], c(-1.0));
        let mut t = StateVector::basis(3, 0b011).unwrap();
        t.apply(&Gate::Mcz {
            controls: vec![0, 1],
            target: 2,
        })
        .unwrap();
        assert_eq!(t.amplitudes()[3], c(1.0));
    }

    #[test]
    fn ry_matches_matrix_product() {
        for p in [0.1, 0.25, 0.5, 0.9] {
            let theta = 2.0 * f64::sqrt(p).acos();
            let mut s = StateVector::new(1).unwrap();
            s.apply(&Gate::Ry(0, theta)).unwrap();
            // [[cos, -sin], [sin, cos]] (θ/2) applied to (1, 0)
            let m = [
                [(theta / 2.0).cos(), -(theta / 2.0).sin()],
                [(theta / 2.0).sin(), (theta / 2.0).cos()],
            ];
            assert!((s.amplitudes()[0].re - m[0][0]).abs() < 1e-15);
            assert!((s.amplitudes()[1].re - m[1][0]).abs() < 1e-15);
            assert!((s.amplitudes()[0].re - p.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn x_on_qubit_zero_is_least_significant() {
        let mut s = StateVector::new(3).unwrap();
        s.apply(&Gate::X(0)).unwrap();
        assert_eq!(s.amplitudes()[1], c(1.0));
    }

    #[test]
    fn run_examples() {
        let s0 = StateVector::new(3).unwrap();
        assert_eq!(run(&Circuit::new(3), &s0).unwrap(), s0);

        let mut hh = Circuit::new(3);
        hh.push(Gate::H(0)).unwrap();
        hh.push(Gate::H(0)).unwrap();
        assert!(close(&run(&hh, &s0).unwrap(), &s0, 1e-12));

        let mut all = Circuit::new(3);
        for q in 0..3 {
            all.push(Gate::H(q)).unwrap();
        }
        let s = run(&all, &s0).unwrap();
        let expect = 2f64.powf(-1.5);
        assert!(s.amplitudes().iter().all(|a| (a.re - expect).abs() < 1e-12));
    }

    #[test]
    fn run_rejects_width_mismatch() {
        let mut s = StateVector::new(2).unwrap();
        assert!(Circuit::new(3).run(&mut s).is_err());
    }

    #[test]
    fn reset_projects_and_renormalises() {
        let mut s = StateVector::new(2).unwrap();
        s.apply(&Gate::H(0)).unwrap();
        s.apply(&Gate::Reset(0)).unwrap();
        assert!(close(&s, &StateVector::new(2).unwrap(), 1e-12));

        let mut one = StateVector::basis(1, 1).unwrap();
        assert!(matches!(one.apply(&Gate::Reset(0)), Err(Error::ZeroNormReset(0))));
        assert_eq!(one, StateVector::basis(1, 1).unwrap());
    }

    #[test]
    fn probabilities_examples() {
        // qubit 0 in |+⟩, qubit 1 in |0⟩
        let mut s = StateVector::new(2).unwrap();
        s.apply(&Gate::H(0)).unwrap();
        let p = s.probabilities(&[0]).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
        let full = s.probabilities(&[0, 1]).unwrap();
        assert!((full.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        // register order decides bit order of the outcome
        let swapped = s.probabilities(&[1, 0]).unwrap();
        assert!((swapped[0b10] - 0.5).abs() < 1e-12);
        assert!(s.probabilities(&[2]).is_err());
    }

    #[test]
    fn basis_state_measures_deterministically() {
        let s = StateVector::basis(3, 0b101).unwrap();
        let h = s.measure_all(100, 7).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&"101".parse::<Bits>().unwrap()], 100);
    }

    #[test]
    fn uniform_sampling_is_within_four_sigma() {
        let mut s = StateVector::new(2).unwrap();
        s.apply(&Gate::H(0)).unwrap();
        s.apply(&Gate::H(1)).unwrap();
        let h = s.measure_all(10_000, 42).unwrap();
        assert_eq!(h.values().sum::<u64>(), 10_000);
        for count in h.values() {
            assert!(count.abs_diff(2500) <= 200, "{count}");
        }
        assert_eq!(h, s.measure_all(10_000, 42).unwrap());
        assert!(s.measure_all(0, 1).is_err());
    }

    #[test]
    fn width_ceiling() {
        assert!(matches!(
            StateVector::new(MAX_QUBITS + 1),
            Err(Error::ResourceLimit { .. })
        ));
    }

    fn naive_pair(s: &StateVector, target: usize, ctrl: usize, m: [[f64; 2]; 2]) -> Vec<Complex64> {
        let mut out = s.amplitudes().to_vec();
        for i in 0..out.len() {
            if i & (1 << target) == 0 && i & ctrl == ctrl {
                let j = i | 1 << target;
                let (a, b) = (s.amplitudes()[i], s.amplitudes()[j]);
                out[i] = a * m[0][0] + b * m[0][1];
                out[j] = a * m[1][0] + b * m[1][1];
            }
        }
        out
    }

    #[test]
    fn parallel_kernels_match_naive_reference() {
        // 16 qubits takes the parallel paths: narrow and wide blocks
        let width = 16;
        let mut s = StateVector::new(width).unwrap();
        for q in 0..width {
            s.apply(&Gate::Ry(q, 0.3 + q as f64 * 0.1)).unwrap();
        }
        let h = FRAC_1_SQRT_2;
        for (gate, target, ctrl, m) in [
            (Gate::H(15), 15, 0, [[h, h], [h, -h]]),
            (Gate::H(2), 2, 0, [[h, h], [h, -h]]),
            (
                Gate::Mcx {
                    controls: vec![0, 3],
                    target: 14,
                },
                14,
                0b1001,
                [[0.0, 1.0], [1.0, 0.0]],
            ),
            (Gate::Cx { control: 15, target: 1 }, 1, 1 << 15, [[0.0, 1.0], [1.0, 0.0]]),
        ] {
            let expect = naive_pair(&s, target, ctrl, m);
            s.apply(&gate).unwrap();
            assert!(s
                .amplitudes()
                .iter()
                .zip(&expect)
                .all(|(a, b)| (a - b).norm() < 1e-14));
        }
        assert!(s.is_normalized(1e-12));
    }
}
