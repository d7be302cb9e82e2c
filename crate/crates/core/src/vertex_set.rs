use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::VertexId;

/// A set of vertices over a fixed universe `0..universe`.
///
/// Membership is O(1); iteration is in ascending id order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    /// Builds a set from ids. Panics if an id is outside the universe.
    pub fn from_ids<I>(universe: usize, ids: I) -> Self
    where
        I: IntoIterator<Item = VertexId>,
    {
        let mut set = Self::empty(universe);
        for v in ids {
            set.insert(v);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.contains(v.index())
    }

    /// Returns true when `v` was newly inserted.
    pub fn insert(&mut self, v: VertexId) -> bool {
        assert!(
            v.index() < self.universe(),
            "vertex {v} outside universe of size {}",
            self.universe()
        );
        !self.bits.put(v.index())
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let was = self.contains(v);
        self.bits.set(v.index(), false);
        was
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones().map(VertexId::from)
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Self { bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_universe(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_universe(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_universe(other);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.bits.is_subset(&other.bits)
    }

    /// Re-homes the set into a larger universe, keeping the same ids.
    pub fn grown(&self, universe: usize) -> Self {
        assert!(universe >= self.universe());
        let mut bits = self.bits.clone();
        bits.grow(universe);
        Self { bits }
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe(),
            other.universe(),
            "vertex sets over different universes"
        );
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}
