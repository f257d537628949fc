//! Simple multiple access network model: up to three sources feed subsets of
//! N relays, each relay forwards one symbol to the destination, and up to z
//! relays are adversarial.
//!
//! Sources are 0-based in code (displayed 1-based as S1..S3); relay indices
//! are 1-based throughout, matching the evaluation point a^j of relay j.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// A subset of sources as a bitmask (bit i = source i, 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSet(u8);

impl SourceSet {
    pub const EMPTY: SourceSet = SourceSet(0);

    pub fn from_sources(sources: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = 0u8;
        for s in sources {
            debug_assert!(s < 8);
            mask |= 1 << s;
        }
        SourceSet(mask)
    }

    pub fn single(source: usize) -> Self {
        SourceSet(1 << source)
    }

    pub fn contains(self, source: usize) -> bool {
        self.0 >> source & 1 == 1
    }

    pub fn insert(&mut self, source: usize) {
        self.0 |= 1 << source;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn sources(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..8).filter(move |s| mask >> s & 1 == 1)
    }

    /// All nonempty subsets of the first `s` sources, in ascending mask order.
    pub fn nonempty_subsets(s: usize) -> impl Iterator<Item = SourceSet> {
        (1u8..1 << s).map(SourceSet)
    }

    pub fn mask(self) -> u8 {
        self.0
    }
}

impl fmt::Display for SourceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sources().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "S{}", s + 1)?;
        }
        write!(f, "}}")
    }
}

/// The partition of relays by exact adjacency set, plus the complement sets
/// Z_i of relays a source cannot reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSets {
    /// For each nonempty source subset, the relays connected to exactly that
    /// subset (ascending 1-based relay ids; possibly empty).
    pub blocks: BTreeMap<SourceSet, Vec<usize>>,
    /// zsets[i] = relays not connected to source i.
    pub zsets: Vec<Vec<usize>>,
}

impl PartitionSets {
    pub fn block(&self, set: SourceSet) -> &[usize] {
        self.blocks.get(&set).map_or(&[], |v| v.as_slice())
    }

    pub fn block_size(&self, set: SourceSet) -> usize {
        self.block(set).len()
    }
}

/// Result of the capacity-region membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionCheck {
    pub ok: bool,
    /// Source subsets whose cut-set bound is violated, ascending mask order.
    pub violated: Vec<SourceSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmanTopology {
    rates: Vec<usize>,
    z: usize,
    adjacency: Vec<Vec<bool>>,
}

impl SmanTopology {
    /// Validate and build a topology. `adjacency[i][j]` says whether source
    /// i feeds relay j+1. Every relay must be fed by at least one source.
    pub fn new(rates: Vec<usize>, z: usize, adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let s = adjacency.len();
        if s == 0 {
            return Err(Error::InvalidTopology("no sources".into()));
        }
        if s > 3 {
            return Err(Error::TooManySources(s));
        }
        if rates.len() != s {
            return Err(Error::InvalidTopology(format!(
                "{} rates for {} sources",
                rates.len(),
                s
            )));
        }
        let n = adjacency[0].len();
        if n == 0 {
            return Err(Error::InvalidTopology("no relays".into()));
        }
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTopology(format!(
                    "adjacency row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
        }
        for j in 0..n {
            if !adjacency.iter().any(|row| row[j]) {
                return Err(Error::InvalidTopology(format!(
                    "relay {} is not connected to any source",
                    j + 1
                )));
            }
        }
        Ok(SmanTopology {
            rates,
            z,
            adjacency,
        })
    }

    pub fn sources(&self) -> usize {
        self.adjacency.len()
    }

    pub fn relays(&self) -> usize {
        self.adjacency[0].len()
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn rates(&self) -> &[usize] {
        &self.rates
    }

    pub fn rate(&self, source: usize) -> usize {
        self.rates[source]
    }

    pub fn total_rate(&self) -> usize {
        self.rates.iter().sum()
    }

    /// Whether source `i` (0-based) feeds relay `j` (1-based).
    pub fn is_adjacent(&self, source: usize, relay: usize) -> bool {
        self.adjacency[source][relay - 1]
    }

    /// The exact set of sources feeding a relay (1-based relay id).
    pub fn adjacent_sources(&self, relay: usize) -> SourceSet {
        SourceSet::from_sources(
            (0..self.sources()).filter(|&i| self.adjacency[i][relay - 1]),
        )
    }

    /// Group relays by their exact adjacency set and compute the Z_i sets.
    pub fn partition(&self) -> PartitionSets {
        let s = self.sources();
        let mut blocks: BTreeMap<SourceSet, Vec<usize>> = SourceSet::nonempty_subsets(s)
            .map(|set| (set, Vec::new()))
            .collect();
        for relay in 1..=self.relays() {
            let set = self.adjacent_sources(relay);
            blocks.entry(set).or_default().push(relay);
        }
        let zsets = (0..s)
            .map(|i| {
                (1..=self.relays())
                    .filter(|&relay| !self.is_adjacent(i, relay))
                    .collect()
            })
            .collect();
        PartitionSets { blocks, zsets }
    }

    /// Number of relays adjacent to at least one source of the subset.
    pub fn cut_capacity(&self, subset: SourceSet) -> usize {
        (1..=self.relays())
            .filter(|&relay| subset.sources().any(|i| self.is_adjacent(i, relay)))
            .count()
    }

    pub fn rate_of_subset(&self, subset: SourceSet) -> usize {
        subset.sources().map(|i| self.rates[i]).sum()
    }

    /// Cut-set test over all nonempty source subsets: the rate vector is
    /// admissible iff r(S') <= C(S') - 2z for every S'.
    pub fn in_capacity_region(&self) -> RegionCheck {
        let violated: Vec<SourceSet> = SourceSet::nonempty_subsets(self.sources())
            .filter(|&s| {
                let cut = self.cut_capacity(s);
                self.rate_of_subset(s) + 2 * self.z > cut
            })
            .collect();
        RegionCheck {
            ok: violated.is_empty(),
            violated,
        }
    }

    /// Reorder sources: new source i is old source `perm[i]` (0-based).
    pub fn permute_sources(&self, perm: &[usize]) -> Result<SmanTopology> {
        let s = self.sources();
        let mut seen = vec![false; s];
        if perm.len() != s || perm.iter().any(|&p| p >= s || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Invalid(format!("{perm:?} is not a source permutation")));
        }
        Ok(SmanTopology {
            rates: perm.iter().map(|&p| self.rates[p]).collect(),
            z: self.z,
            adjacency: perm.iter().map(|&p| self.adjacency[p].clone()).collect(),
        })
    }

    /// Same topology padded with unconnected zero-rate sources up to three,
    /// so the construction can treat every network uniformly.
    pub fn padded3(&self) -> SmanTopology {
        let mut rates = self.rates.clone();
        let mut adjacency = self.adjacency.clone();
        while rates.len() < 3 {
            rates.push(0);
            adjacency.push(vec![false; self.relays()]);
        }
        SmanTopology {
            rates,
            z: self.z,
            adjacency,
        }
    }

    pub fn with_rates(&self, rates: Vec<usize>) -> Result<SmanTopology> {
        SmanTopology::new(rates, self.z, self.adjacency.clone())
    }

    pub fn adjacency_rows(&self) -> Vec<Vec<u8>> {
        self.adjacency
            .iter()
            .map(|row| row.iter().map(|&b| b as u8).collect())
            .collect()
    }
}

/// On-disk topology description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TopologyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldBlock>,
    pub z: usize,
    pub rates: Vec<usize>,
    pub adjacency: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldBlock {
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_poly: Option<u32>,
}

impl TopologyFile {
    /// Validate into a topology plus the field to build codes over. Without
    /// an explicit field block the smallest m with 2^m >= N + 1 is used.
    pub fn into_parts(self) -> Result<(SmanTopology, FieldSpec)> {
        for (i, row) in self.adjacency.iter().enumerate() {
            if let Some(bad) = row.iter().find(|&&v| v > 1) {
                return Err(Error::InvalidTopology(format!(
                    "adjacency row {} contains {}, entries must be 0 or 1",
                    i + 1,
                    bad
                )));
            }
        }
        let adjacency = self
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&v| v == 1).collect())
            .collect();
        let top = SmanTopology::new(self.rates, self.z, adjacency)?;
        let spec = match self.field {
            Some(FieldBlock {
                m,
                primitive_poly: Some(p),
            }) => FieldSpec::with_poly(m, p)?,
            Some(FieldBlock {
                m,
                primitive_poly: None,
            }) => FieldSpec::new(m)?,
            None => {
                let mut m = 1;
                while (1u32 << m) < top.relays() as u32 + 1 {
                    m += 1;
                }
                FieldSpec::new(m)?
            }
        };
        if spec.order() < top.relays() {
            return Err(Error::FieldTooSmall {
                n: top.relays(),
                q: spec.q(),
            });
        }
        Ok((top, spec))
    }
}
