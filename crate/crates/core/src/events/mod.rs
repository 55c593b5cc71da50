//! Events over ordered quartets.
//!
//! `P{i}{j}` holds when the common prefix of `x_i, x_j` is at least as long as
//! every other pairwise common prefix of the tuple (ties allowed); `S{i}{j}` is
//! the same with suffixes. Expressions combine these atoms with intersection
//! and union only.

mod count;
mod parse;

use std::fmt;

pub use count::{
    count_agreeing_unordered, count_agreeing_unordered_extended, count_full, count_full_direct,
    count_restricted, count_restricted_binned, orbit_classify, permutations4, CountError,
    CountMethod, CountReport, FULL_DIRECT_MAX_N, RESTRICTED_MAX_N, UNORDERED_EXTENDED_MAX_N,
    UNORDERED_MAX_N,
};
pub use parse::{parse_event_expr, ExprParseError};

use crate::topology::{prefix_lengths_raw, suffix_lengths_raw, Quartet, PAIRS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    PrefixMax,
    SuffixMax,
}

/// `P_{i,j}` or `S_{i,j}` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicEvent {
    kind: EventKind,
    i: u8,
    j: u8,
}

impl AtomicEvent {
    pub fn new(kind: EventKind, i: usize, j: usize) -> Option<Self> {
        (i < j && j < 4).then_some(AtomicEvent {
            kind,
            i: i as u8,
            j: j as u8,
        })
    }

    pub fn prefix(i: usize, j: usize) -> Self {
        Self::new(EventKind::PrefixMax, i, j).expect("valid index pair")
    }

    pub fn suffix(i: usize, j: usize) -> Self {
        Self::new(EventKind::SuffixMax, i, j).expect("valid index pair")
    }

    pub fn kind(&self) -> EventKind {
        self.kind
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }

    /// Bit position in an [`AtomMask`]: prefix atoms occupy 0..6, suffix 6..12.
    fn slot(&self) -> usize {
        let pair = PAIRS
            .iter()
            .position(|&p| p == self.indices())
            .expect("i < j < 4");
        match self.kind {
            EventKind::PrefixMax => pair,
            EventKind::SuffixMax => 6 + pair,
        }
    }

    pub fn all() -> impl Iterator<Item = AtomicEvent> {
        [EventKind::PrefixMax, EventKind::SuffixMax]
            .into_iter()
            .flat_map(|k| {
                PAIRS
                    .iter()
                    .map(move |&(i, j)| AtomicEvent::new(k, i, j).unwrap())
            })
    }
}

impl fmt::Display for AtomicEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            EventKind::PrefixMax => 'P',
            EventKind::SuffixMax => 'S',
        };
        write!(f, "{c}{}{}", self.i, self.j)
    }
}

/// Which of the twelve atoms hold for one tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomMask(u16);

impl AtomMask {
    #[inline]
    pub(crate) fn from_raw(width: u32, x: &[u64; 4]) -> Self {
        let lp = prefix_lengths_raw(width, x);
        let ls = suffix_lengths_raw(width, x);
        let mp = lp.iter().copied().max().unwrap_or(0);
        let ms = ls.iter().copied().max().unwrap_or(0);
        let mut m = 0u16;
        for k in 0..6 {
            m |= ((lp[k] == mp) as u16) << k;
            m |= ((ls[k] == ms) as u16) << (6 + k);
        }
        AtomMask(m)
    }

    pub fn of(q: &Quartet) -> Self {
        Self::from_raw(q.width(), &q.raw())
    }

    pub fn holds(&self, e: AtomicEvent) -> bool {
        self.0 >> e.slot() & 1 == 1
    }
}

/// Whether the atomic event holds on the quartet (weak maximality).
pub fn atomic_holds(e: AtomicEvent, q: &Quartet) -> bool {
    let lens = match e.kind {
        EventKind::PrefixMax => q.prefix_lengths(),
        EventKind::SuffixMax => q.suffix_lengths(),
    };
    let own = lens[e.slot() % 6];
    lens.iter().all(|&l| own >= l)
}

/// Boolean combination of atomic events. `And` and `Or` hold at least one
/// operand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EventExpr {
    Atom(AtomicEvent),
    And(Vec<EventExpr>),
    Or(Vec<EventExpr>),
}

impl EventExpr {
    pub fn p(i: usize, j: usize) -> Self {
        EventExpr::Atom(AtomicEvent::prefix(i, j))
    }

    pub fn s(i: usize, j: usize) -> Self {
        EventExpr::Atom(AtomicEvent::suffix(i, j))
    }

    pub fn and(parts: impl IntoIterator<Item = EventExpr>) -> Self {
        let v: Vec<_> = parts.into_iter().collect();
        assert!(!v.is_empty(), "empty intersection");
        EventExpr::And(v)
    }

    pub fn or(parts: impl IntoIterator<Item = EventExpr>) -> Self {
        let v: Vec<_> = parts.into_iter().collect();
        assert!(!v.is_empty(), "empty union");
        EventExpr::Or(v)
    }

    /// `(P_{a,b} ∪ P_{c,d}) ∩ (S_{a,b} ∪ S_{c,d})` for the split `ab|cd`.
    fn split_agreement(a: usize, b: usize, c: usize, d: usize) -> Self {
        EventExpr::and([
            EventExpr::or([EventExpr::p(a, b), EventExpr::p(c, d)]),
            EventExpr::or([EventExpr::s(a, b), EventExpr::s(c, d)]),
        ])
    }

    pub fn event_a() -> Self {
        Self::split_agreement(0, 1, 2, 3)
    }

    pub fn event_b() -> Self {
        Self::split_agreement(0, 2, 1, 3)
    }

    pub fn event_c() -> Self {
        Self::split_agreement(0, 3, 1, 2)
    }

    pub fn event_abc() -> Self {
        EventExpr::or([Self::event_a(), Self::event_b(), Self::event_c()])
    }

    pub fn eval_mask(&self, m: AtomMask) -> bool {
        match self {
            EventExpr::Atom(a) => m.holds(*a),
            EventExpr::And(v) => v.iter().all(|e| e.eval_mask(m)),
            EventExpr::Or(v) => v.iter().any(|e| e.eval_mask(m)),
        }
    }

    pub fn truth_table(&self) -> TruthTable {
        let mut t = TruthTable([0; 64]);
        for m in 0..4096u16 {
            if self.eval_mask(AtomMask(m)) {
                t.0[m as usize >> 6] |= 1 << (m & 63);
            }
        }
        t
    }
}

pub fn eval_event(expr: &EventExpr, q: &Quartet) -> bool {
    expr.eval_mask(AtomMask::of(q))
}

impl fmt::Display for EventExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (parts, op) = match self {
            EventExpr::Atom(a) => return write!(f, "{a}"),
            EventExpr::And(v) => (v, "&"),
            EventExpr::Or(v) => (v, "|"),
        };
        for (k, e) in parts.iter().enumerate() {
            if k > 0 {
                f.write_str(op)?;
            }
            match e {
                EventExpr::Atom(_) => write!(f, "{e}")?,
                _ => write!(f, "({e})")?,
            }
        }
        Ok(())
    }
}

/// The expression's value for each of the 4096 atom masks. Two expressions
/// with equal tables count the same tuples.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable([u64; 64]);

impl TruthTable {
    #[inline]
    pub fn get(&self, m: AtomMask) -> bool {
        self.0[m.0 as usize >> 6] >> (m.0 & 63) & 1 == 1
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ones: u32 = self.0.iter().map(|w| w.count_ones()).sum();
        write!(f, "TruthTable({ones} of 4096)")
    }
}

/// The events whose counts have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalEvent {
    P01S23,
    P01S01,
    P01P23S01,
    All4,
    A,
    Abc,
}

impl CanonicalEvent {
    pub const ALL: [CanonicalEvent; 6] = [
        CanonicalEvent::P01S23,
        CanonicalEvent::P01S01,
        CanonicalEvent::P01P23S01,
        CanonicalEvent::All4,
        CanonicalEvent::A,
        CanonicalEvent::Abc,
    ];

    pub fn expr(self) -> EventExpr {
        use EventExpr as E;
        match self {
            CanonicalEvent::P01S23 => E::and([E::p(0, 1), E::s(2, 3)]),
            CanonicalEvent::P01S01 => E::and([E::p(0, 1), E::s(0, 1)]),
            CanonicalEvent::P01P23S01 => E::and([E::p(0, 1), E::p(2, 3), E::s(0, 1)]),
            CanonicalEvent::All4 => E::and([E::p(0, 1), E::p(2, 3), E::s(0, 1), E::s(2, 3)]),
            CanonicalEvent::A => E::event_a(),
            CanonicalEvent::Abc => E::event_abc(),
        }
    }

    /// Finds the canonical event counting the same tuples as `expr`.
    pub fn recognize(expr: &EventExpr) -> Option<CanonicalEvent> {
        let t = expr.truth_table();
        Self::ALL.into_iter().find(|c| c.expr().truth_table() == t)
    }
}
