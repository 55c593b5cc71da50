//! Quartet topologies in the prefix and suffix trees, read directly off the
//! labels: in the prefix tree the pair with the longest common prefix forms a
//! cherry of the induced quartet, and dually for suffixes.

use std::fmt;

use thiserror::Error;

use crate::bitlabel::{lcp_raw, lcs_raw, Label, LabelError, LeafOrder};

/// The six index pairs of a 4-tuple. Pair `k` and pair `5 - k` are disjoint.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("quartet labels must be pairwise distinct ({0} repeats)")]
    RepeatedLabel(Label),
    #[error("two pairings share the maximal score {score}; topology is undefined")]
    AmbiguousTopology { score: u32 },
}

/// One of the three splits of an ordered 4-tuple into two pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pairing {
    /// `{0,1}|{2,3}`
    Split01_23,
    /// `{0,2}|{1,3}`
    Split02_13,
    /// `{0,3}|{1,2}`
    Split03_12,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [
        Pairing::Split01_23,
        Pairing::Split02_13,
        Pairing::Split03_12,
    ];

    /// Position in [`Pairing::ALL`], which is also the index of the pair
    /// containing index 0 in [`PAIRS`].
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// The two index pairs; the first always contains index 0.
    pub fn pairs(self) -> [(usize, usize); 2] {
        let k = self.index();
        [PAIRS[k], PAIRS[5 - k]]
    }

    /// The pairing in which `i` and `j` sit on the same side.
    pub fn containing(i: usize, j: usize) -> Pairing {
        assert!(i < 4 && j < 4 && i != j, "invalid index pair ({i},{j})");
        let other = if i == 0 {
            j
        } else if j == 0 {
            i
        } else {
            6 - i - j
        };
        match other {
            1 => Pairing::Split01_23,
            2 => Pairing::Split02_13,
            _ => Pairing::Split03_12,
        }
    }

    /// Pairing of the reordered tuple `t[s] = q[perm[s]]`, given this is the
    /// pairing of `q`.
    pub fn relabel(self, perm: [usize; 4]) -> Pairing {
        let (a, b) = self.pairs()[0];
        let pos = |old: usize| {
            perm.iter()
                .position(|&p| p == old)
                .expect("perm is a permutation")
        };
        Pairing::containing(pos(a), pos(b))
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [(a, b), (c, d)] = self.pairs();
        write!(f, "{a}{b}|{c}{d}")
    }
}

/// An ordered 4-tuple of pairwise distinct labels of one width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quartet {
    labels: [Label; 4],
}

impl Quartet {
    pub fn new(labels: [Label; 4]) -> Result<Self, TopologyError> {
        let w = labels[0].width();
        for l in &labels[1..] {
            if l.width() != w {
                return Err(LabelError::WidthMismatch(w, l.width()).into());
            }
        }
        for &(i, j) in &PAIRS {
            if labels[i] == labels[j] {
                return Err(TopologyError::RepeatedLabel(labels[i]));
            }
        }
        Ok(Quartet { labels })
    }

    /// Parses four labels of equal width.
    pub fn parse(texts: [&str; 4]) -> Result<Self, TopologyError> {
        let mut out = [Label::zero(2)?; 4];
        for (slot, t) in out.iter_mut().zip(texts) {
            *slot = t.parse()?;
        }
        Quartet::new(out)
    }

    pub fn labels(&self) -> &[Label; 4] {
        &self.labels
    }

    pub fn width(&self) -> u32 {
        self.labels[0].width()
    }

    pub(crate) fn raw(&self) -> [u64; 4] {
        self.labels.map(|l| l.bits())
    }

    /// Reorders as `t[s] = self[perm[s]]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Quartet {
        Quartet {
            labels: perm.map(|p| self.labels[p]),
        }
    }

    /// Pairwise common-prefix lengths, indexed like [`PAIRS`].
    pub fn prefix_lengths(&self) -> [u32; 6] {
        prefix_lengths_raw(self.width(), &self.raw())
    }

    /// Pairwise common-suffix lengths, indexed like [`PAIRS`].
    pub fn suffix_lengths(&self) -> [u32; 6] {
        suffix_lengths_raw(self.width(), &self.raw())
    }

    /// Renders a pairing with this quartet's labels, e.g. `{0111,0110}|{1000,1001}`.
    pub fn render_pairing(&self, p: Pairing) -> String {
        let [(a, b), (c, d)] = p.pairs();
        let l = &self.labels;
        format!("{{{},{}}}|{{{},{}}}", l[a], l[b], l[c], l[d])
    }
}

#[inline]
pub(crate) fn prefix_lengths_raw(width: u32, x: &[u64; 4]) -> [u32; 6] {
    PAIRS.map(|(i, j)| lcp_raw(width, x[i], x[j]))
}

#[inline]
pub(crate) fn suffix_lengths_raw(width: u32, x: &[u64; 4]) -> [u32; 6] {
    PAIRS.map(|(i, j)| lcs_raw(width, x[i], x[j]))
}

/// Picks the pairing whose better pair has the strictly largest score.
pub fn pairing_from_scores(scores: &[u32; 6]) -> Result<Pairing, TopologyError> {
    let per_pairing = [0usize, 1, 2].map(|k| scores[k].max(scores[5 - k]));
    let best = *per_pairing.iter().max().expect("three entries");
    let mut winners = Pairing::ALL
        .iter()
        .zip(per_pairing)
        .filter(|(_, s)| *s == best);
    let (&p, _) = winners.next().expect("max is attained");
    if winners.next().is_some() {
        return Err(TopologyError::AmbiguousTopology { score: best });
    }
    Ok(p)
}

pub fn prefix_topology(q: &Quartet) -> Result<Pairing, TopologyError> {
    pairing_from_scores(&q.prefix_lengths())
}

pub fn suffix_topology(q: &Quartet) -> Result<Pairing, TopologyError> {
    pairing_from_scores(&q.suffix_lengths())
}

pub fn topology(q: &Quartet, order: LeafOrder) -> Result<Pairing, TopologyError> {
    match order {
        LeafOrder::Prefix => prefix_topology(q),
        LeafOrder::Suffix => suffix_topology(q),
    }
}

/// Whether the prefix and suffix trees induce the same split on `q`.
pub fn agree(q: &Quartet) -> Result<bool, TopologyError> {
    Ok(prefix_topology(q)? == suffix_topology(q)?)
}

/// Agreement on raw distinct values; used by the enumerators.
#[inline]
pub(crate) fn agree_raw(width: u32, x: &[u64; 4]) -> bool {
    let p = pairing_from_scores(&prefix_lengths_raw(width, x));
    let s = pairing_from_scores(&suffix_lengths_raw(width, x));
    match (p, s) {
        (Ok(p), Ok(s)) => p == s,
        _ => unreachable!("distinct labels always have a unique topology"),
    }
}
