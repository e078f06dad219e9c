//! Balanced random partitioning through virtual locations.
//!
//! To split `N` items into `L` parts, every part gets `⌈N/L⌉` free slots. Items are placed one at
//! a time, each into a slot drawn uniformly among all slots still free, so no part ever receives
//! more than `⌈N/L⌉` items.

use rand::Rng;

use crate::{seed, Error, ItemId, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPlan {
    /// Items of each part in ascending id order.
    pub parts: Vec<Vec<ItemId>>,
    pub seed: u64,
}

impl PartitionPlan {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn item_count(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }
}

/// Splits `items` into `parts` parts with the generator seeded by `seed`.
pub fn balanced_random_partition(items: &[ItemId], parts: usize, seed: u64) -> Result<PartitionPlan> {
    let mut rng = seed::rng(seed);
    let parts = partition_with_rng(items, parts, &mut rng)?;
    Ok(PartitionPlan { parts, seed })
}

pub fn partition_with_rng<R: Rng>(items: &[ItemId], parts: usize, rng: &mut R) -> Result<Vec<Vec<ItemId>>> {
    if parts == 0 {
        return Err(Error::InvalidParameter("cannot partition into 0 parts".into()));
    }
    let per_part = items.len().div_ceil(parts);
    let mut free: Vec<usize> = (0..parts * per_part).collect();
    let mut out = vec![Vec::with_capacity(per_part); parts];
    for &item in items {
        let slot = free.swap_remove(rng.random_range(0..free.len()));
        out[slot / per_part].push(item);
    }
    for part in &mut out {
        part.sort_unstable();
    }
    Ok(out)
}
