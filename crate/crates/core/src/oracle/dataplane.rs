//! Reversible forwarding circuit for hop-bounded data-plane properties.
//!
//! Registers: header bits (the input), a location register holding the
//! current router encoding, and per-rule "fire" flags. One hop computes
//!
//! ```text
//! fire_i = [loc == router_i] ∧ match_i(hdr) ∧ ¬fire_j  (earlier j at the same router)
//! stay   = ¬(∨ fire_i)
//! ```
//!
//! and writes the next location (and rewritten header bits) into fresh
//! registers. Header bits that no rule rewrites are shared by all hops.

use super::builder::{Builder, Lit};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::netmodel::{BitAction, DataPlaneNetwork, Property, RouterId};

use super::OracleOptions;

struct HopState {
    loc: Vec<usize>,
    hdr: Vec<usize>,
}

struct Ctx<'a> {
    net: &'a DataPlaneNetwork,
    /// Rules that can fire; rules at an absorbing destination are dropped.
    active: Vec<usize>,
    /// Header bits some rule rewrites.
    volatile: Vec<bool>,
    loc_bits: usize,
    reset: bool,
}

fn encoding_lits(register: &[usize], router: RouterId) -> Vec<Lit> {
    register
        .iter()
        .enumerate()
        .map(|(b, &q)| (q, (router.0 >> b) & 1 == 1))
        .collect()
}

impl Ctx<'_> {
    /// Emits the fire and stay flags for the current state; returns them with
    /// `stay` last.
    fn compute_flags(&self, b: &mut Builder, st: &HopState) -> Vec<usize> {
        let flags = b.alloc_many(self.active.len() + 1, self.reset);
        let stay = *flags.last().expect("stay flag");
        let rules = self.net.rules();
        for (slot, &ri) in self.active.iter().enumerate() {
            let rule = &rules[ri];
            let mut controls = encoding_lits(&st.loc, rule.router);
            let (care, value) = (rule.pattern.care_mask(), rule.pattern.care_value());
            for (bit, &q) in st.hdr.iter().enumerate() {
                if (care >> bit) & 1 == 1 {
                    controls.push((q, (value >> bit) & 1 == 1));
                }
            }
            // first match wins: earlier rules at this router must not have fired
            for (earlier, &rj) in self.active[..slot].iter().enumerate() {
                if rules[rj].router == rule.router {
                    controls.push((flags[earlier], false));
                }
            }
            b.mcx(&controls, flags[slot]);
        }
        b.x(stay);
        for &f in &flags[..self.active.len()] {
            b.mcx(&[(f, true)], stay);
        }
        flags
    }

    fn hop(&self, b: &mut Builder, st: &HopState) -> HopState {
        let start = b.mark();
        let flags = self.compute_flags(b, st);
        let stay = *flags.last().expect("stay flag");
        let rules = self.net.rules();

        let loc = b.alloc_many(self.loc_bits, false);
        let hdr: Vec<usize> = st
            .hdr
            .iter()
            .enumerate()
            .map(|(bit, &q)| if self.volatile[bit] { b.alloc(false) } else { q })
            .collect();
        let written = b.mark();
        for (slot, &ri) in self.active.iter().enumerate() {
            let rule = &rules[ri];
            let fire = flags[slot];
            for (bit, &q) in loc.iter().enumerate() {
                if (rule.next_hop.0 >> bit) & 1 == 1 {
                    b.mcx(&[(fire, true)], q);
                }
            }
            for (bit, &q) in hdr.iter().enumerate() {
                if !self.volatile[bit] {
                    continue;
                }
                match rule.rewrite.action(bit) {
                    BitAction::Keep => b.mcx(&[(fire, true), (st.hdr[bit], true)], q),
                    BitAction::Set => b.mcx(&[(fire, true)], q),
                    BitAction::Clear => {}
                }
            }
        }
        for (&old, &new) in st.loc.iter().zip(&loc) {
            b.mcx(&[(stay, true), (old, true)], new);
        }
        for (bit, (&old, &new)) in st.hdr.iter().zip(&hdr).enumerate() {
            if self.volatile[bit] {
                b.mcx(&[(stay, true), (old, true)], new);
            }
        }
        if self.reset {
            // flags depend only on the previous hop, which is still live
            b.undo_range(start, written);
            b.reclaim(&flags);
        }
        HopState { loc, hdr }
    }
}

pub(super) fn compile(
    net: &DataPlaneNetwork,
    prop: &Property,
    options: OracleOptions,
) -> Result<Circuit> {
    let (src, hops, dst) = match *prop {
        Property::ReachWithin { src, dst, hops } => (src, hops, Some(dst)),
        Property::ExceedsHops { src, hops } => (src, hops, None),
        _ => {
            return Err(Error::Unsupported(format!(
                "{} is not a data-plane property",
                prop.kind_name()
            )))
        }
    };
    let n = net.header_width();
    let active: Vec<usize> = net
        .rules()
        .iter()
        .enumerate()
        .filter(|(_, r)| Some(r.router) != dst)
        .map(|(i, _)| i)
        .collect();
    let mut volatile = vec![false; n];
    for &ri in &active {
        let rw = net.rules()[ri].rewrite;
        for (bit, v) in volatile.iter_mut().enumerate() {
            *v |= rw.action(bit) != BitAction::Keep;
        }
    }
    let ctx = Ctx {
        net,
        active,
        volatile,
        loc_bits: net.location_bits(),
        reset: options.midcircuit_reset,
    };

    let mut b = Builder::new(n);
    let loc0 = b.alloc_many(ctx.loc_bits, false);
    for (bit, &q) in loc0.iter().enumerate() {
        if (src.0 >> bit) & 1 == 1 {
            b.x(q);
        }
    }
    let mut st = HopState {
        loc: loc0,
        hdr: (0..n).collect(),
    };

    match dst {
        Some(dst) => {
            for _ in 0..hops {
                st = ctx.hop(&mut b, &st);
            }
            let compute_end = b.mark();
            b.phase_flip(&encoding_lits(&st.loc, dst));
            b.undo_range(0, compute_end);
        }
        None => {
            for _ in 1..hops {
                st = ctx.hop(&mut b, &st);
            }
            // a packet stuck before the last hop is also stuck at it, so the
            // property holds exactly when some rule fires on the final hop
            let flags = ctx.compute_flags(&mut b, &st);
            let stay = *flags.last().expect("stay flag");
            let compute_end = b.mark();
            b.phase_flip(&[(stay, false)]);
            b.undo_range(0, compute_end);
        }
    }
    b.into_circuit()
}
