//! Events as bit sets over a finite state space.
//!
//! State `i` corresponds to bit `i`, so the numeric value of an event's
//! membership word is also its position in the lexicographic event order
//! used for witnesses.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest state space an [`Event`] can represent.
pub const MAX_UNIVERSE: usize = 64;

/// Bit mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_UNIVERSE);
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Event {
    bits: u64,
    universe: u8,
}

impl Event {
    /// Builds an event from a membership word. Bits at or above `universe`
    /// are discarded.
    pub fn from_bits(universe: usize, bits: u64) -> Self {
        assert!(
            (1..=MAX_UNIVERSE).contains(&universe),
            "universe size {universe} out of range"
        );
        Event {
            bits: bits & full_mask(universe),
            universe: universe as u8,
        }
    }

    pub fn empty(universe: usize) -> Self {
        Self::from_bits(universe, 0)
    }

    pub fn full(universe: usize) -> Self {
        Self::from_bits(universe, u64::MAX)
    }

    pub fn singleton(universe: usize, state: usize) -> Self {
        assert!(
            state < universe,
            "state {state} outside universe of {universe}"
        );
        Self::from_bits(universe, 1 << state)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(universe: usize, states: I) -> Self {
        let bits = states.into_iter().fold(0u64, |acc, s| {
            assert!(s < universe, "state {s} outside universe of {universe}");
            acc | (1 << s)
        });
        Self::from_bits(universe, bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe_size(self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn contains(self, state: usize) -> bool {
        state < self.universe_size() && self.bits >> state & 1 == 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == full_mask(self.universe_size())
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Member states in ascending order.
    pub fn states(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.universe_size()).filter(move |&s| bits >> s & 1 == 1)
    }

    fn check(self, other: Event) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.universe_size(),
                right: other.universe_size(),
            })
        }
    }

    /// Ω ∖ self.
    pub fn complement(self) -> Event {
        Event {
            bits: !self.bits & full_mask(self.universe_size()),
            universe: self.universe,
        }
    }

    pub fn intersect(self, other: Event) -> Result<Event> {
        self.check(other)?;
        Ok(Event {
            bits: self.bits & other.bits,
            ..self
        })
    }

    pub fn union(self, other: Event) -> Result<Event> {
        self.check(other)?;
        Ok(Event {
            bits: self.bits | other.bits,
            ..self
        })
    }

    pub fn difference(self, other: Event) -> Result<Event> {
        self.check(other)?;
        Ok(Event {
            bits: self.bits & !other.bits,
            ..self
        })
    }

    pub fn is_subset(self, other: Event) -> Result<bool> {
        self.check(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn is_proper_subset(self, other: Event) -> Result<bool> {
        Ok(self.is_subset(other)? && self.bits != other.bits)
    }

    pub fn equals(self, other: Event) -> Result<bool> {
        self.check(other)?;
        Ok(self.bits == other.bits)
    }

    /// All `2^n` events over a universe of `n` states, in bit order.
    pub fn all(universe: usize) -> impl Iterator<Item = Event> {
        assert!(
            universe < 64,
            "cannot enumerate events over {universe} states"
        );
        (0..1u64 << universe).map(move |bits| Event::from_bits(universe, bits))
    }

    /// Subset test that panics on a universe mismatch, for internal code
    /// where both events come from the same model.
    #[inline]
    pub fn le(self, other: Event) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.bits & !other.bits == 0
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event{{")?;
        for (i, s) in self.states().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}/{}", self.universe)
    }
}

// Operator forms panic on mismatched universes; use the named methods for
// a checked result.

impl BitAnd for Event {
    type Output = Event;
    fn bitand(self, rhs: Event) -> Event {
        self.intersect(rhs).expect("universe mismatch")
    }
}

impl BitOr for Event {
    type Output = Event;
    fn bitor(self, rhs: Event) -> Event {
        self.union(rhs).expect("universe mismatch")
    }
}

impl Sub for Event {
    type Output = Event;
    fn sub(self, rhs: Event) -> Event {
        self.difference(rhs).expect("universe mismatch")
    }
}

impl Not for Event {
    type Output = Event;
    fn not(self) -> Event {
        self.complement()
    }
}
