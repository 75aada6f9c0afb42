//! Brute-force reference semantics, written against ordered sets of state
//! indices with no bit tricks, cycle detection or memoization.
//!
//! Unawareness is the intersection of the first `2^n` iterates of the
//! negated knowledge map; since there are only `2^n` events that prefix
//! contains the whole pre-period and at least one full period.

#![allow(dead_code)]

use std::collections::BTreeSet;

use unaware_core::{Event, Model};

pub type Set = BTreeSet<usize>;

pub struct Oracle {
    pub n: usize,
    pub p: Vec<Set>,
}

pub fn set(xs: &[usize]) -> Set {
    xs.iter().copied().collect()
}

pub fn to_event(n: usize, s: &Set) -> Event {
    Event::from_states(n, s.iter().copied())
}

pub fn from_event(e: Event) -> Set {
    (0..e.universe_size()).filter(|&i| e.contains(i)).collect()
}

impl Oracle {
    pub fn new(p: Vec<Set>) -> Self {
        Oracle { n: p.len(), p }
    }

    pub fn from_model(m: &Model) -> Self {
        Self::new(m.correspondence().iter().map(|&e| from_event(e)).collect())
    }

    pub fn omega(&self) -> Set {
        (0..self.n).collect()
    }

    /// All events, ordered by the integer whose bit i marks state i.
    pub fn events(&self) -> Vec<Set> {
        (0..(1usize << self.n))
            .map(|mask| (0..self.n).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    }

    pub fn not(&self, e: &Set) -> Set {
        self.omega().difference(e).copied().collect()
    }

    pub fn k(&self, e: &Set) -> Set {
        (0..self.n).filter(|&s| self.p[s].is_subset(e)).collect()
    }

    fn iterate_intersection(&self, e: &Set, step: &dyn Fn(&Set) -> Set) -> Set {
        let mut acc = self.omega();
        let mut x = e.clone();
        for _ in 0..(1usize << self.n) {
            x = self.not(&step(&x));
            acc = acc.intersection(&x).copied().collect();
        }
        acc
    }

    pub fn u(&self, e: &Set) -> Set {
        self.iterate_intersection(e, &|x| self.k(x))
    }

    /// Intersection of the first `depth` iterates.
    pub fn u_prefix(&self, e: &Set, depth: usize) -> Set {
        let mut acc = self.omega();
        let mut x = e.clone();
        for _ in 0..depth {
            x = self.not(&self.k(&x));
            acc = acc.intersection(&x).copied().collect();
        }
        acc
    }

    pub fn global(&self) -> Set {
        self.events().iter().flat_map(|e| self.u(e)).collect()
    }

    pub fn a(&self, e: &Set) -> Set {
        self.not(&self.u(e))
    }

    pub fn kprime(&self, e: &Set) -> Set {
        if *e == self.omega() {
            self.not(&self.global())
        } else {
            self.k(e).difference(&self.u(e)).copied().collect()
        }
    }

    pub fn uprime(&self, e: &Set) -> Set {
        self.iterate_intersection(e, &|x| self.kprime(x))
    }

    pub fn nontrivial(&self) -> Option<Set> {
        self.events().into_iter().find(|e| !self.u(e).is_empty())
    }

    /// First event where negative introspection `¬K(E) ⊆ K(¬K(E))` fails.
    pub fn negative_introspection_witness(&self) -> Option<Set> {
        self.events().into_iter().find(|e| {
            let nk = self.not(&self.k(e));
            !nk.is_subset(&self.k(&nk))
        })
    }

    /// First event where `K(U(E)) = ∅` fails.
    pub fn ku_witness(&self) -> Option<Set> {
        self.events()
            .into_iter()
            .find(|e| !self.k(&self.u(e)).is_empty())
    }

    /// First event where `U(E) ⊆ U(U(E))` fails.
    pub fn au_witness(&self) -> Option<Set> {
        self.events()
            .into_iter()
            .find(|e| !self.u(e).is_subset(&self.u(&self.u(e))))
    }

    /// First event where `U(E) = U(¬E)` fails.
    pub fn symmetry_witness(&self) -> Option<Set> {
        self.events()
            .into_iter()
            .find(|e| self.u(e) != self.u(&self.not(e)))
    }
}

/// Every correspondence over `n` states in mixed-radix order, least
/// significant state first, as raw membership words.
pub fn all_correspondences(n: usize) -> Vec<Vec<u64>> {
    let radix = 1u64 << n;
    (0..radix.pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = i % radix;
                    i /= radix;
                    d
                })
                .collect()
        })
        .collect()
}

pub fn canonical_model(bits: &[u64]) -> Model {
    let labels = (0..bits.len()).map(|i| format!("s{i}")).collect();
    Model::from_bits(labels, bits).unwrap()
}

pub fn all_models(n: usize) -> Vec<Model> {
    all_correspondences(n)
        .iter()
        .map(|b| canonical_model(b))
        .collect()
}

pub fn all_serial_models(n: usize) -> Vec<Model> {
    all_correspondences(n)
        .iter()
        .filter(|b| !b.contains(&0))
        .map(|b| canonical_model(b))
        .collect()
}
