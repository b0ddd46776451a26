//! Walker/Vose alias tables over exact integer weights.
//!
//! Weights are scaled by the table length so that every bucket has capacity
//! equal to the total weight; a draw then needs one uniform index and one
//! uniform integer below the total, and the probabilities are exact.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliasTable {
    threshold: Vec<u128>,
    alias: Vec<u32>,
    total: u128,
}

impl AliasTable {
    /// Builds a table for `weights`, or `None` when every weight is zero.
    pub fn new(weights: &[u128]) -> Result<Option<Self>> {
        let len = weights.len();
        if len > u32::MAX as usize {
            return Err(Error::Argument("alias table too long".into()));
        }
        let mut total: u128 = 0;
        for &w in weights {
            total = total.checked_add(w).ok_or(Error::Overflow("alias total"))?;
        }
        if total == 0 {
            return Ok(None);
        }
        total.checked_mul(len as u128).ok_or(Error::Overflow("alias scaling"))?;
        let mut scaled: Vec<u128> = weights.iter().map(|&w| w * len as u128).collect();
        let mut threshold = vec![total; len];
        let mut alias: Vec<u32> = (0..len as u32).collect();
        let mut small = Vec::new();
        let mut large = Vec::new();
        for (i, &a) in scaled.iter().enumerate() {
            if a < total {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            threshold[s] = scaled[s];
            alias[s] = l as u32;
            scaled[l] -= total - scaled[s];
            if scaled[l] < total {
                large.pop();
                small.push(l);
            }
        }
        // With exact arithmetic every leftover bucket is exactly full.
        debug_assert!(small.iter().chain(&large).all(|&i| scaled[i] == total));
        Ok(Some(AliasTable { threshold, alias, total }))
    }

    pub fn len(&self) -> usize {
        self.alias.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alias.is_empty()
    }

    /// Sum of the weights the table was built from.
    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let i = rng.gen_range(0..self.alias.len());
        let r = rng.gen_range(0..self.total);
        if r < self.threshold[i] {
            i
        } else {
            self.alias[i] as usize
        }
    }

    /// The weight of every outcome times the table length, recovered from the
    /// buckets. Equals the scaled input weights exactly.
    pub fn scaled_weights(&self) -> Vec<u128> {
        let mut w = vec![0u128; self.len()];
        for i in 0..self.len() {
            w[i] += self.threshold[i];
            w[self.alias[i] as usize] += self.total - self.threshold[i];
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn buckets_reproduce_weights() {
        for weights in [vec![1u128], vec![0, 3, 0, 1], vec![5, 5, 5], vec![1, 2, 3, 4, 5, 6, 7], vec![u64::MAX as u128, 1]] {
            let t = AliasTable::new(&weights).unwrap().unwrap();
            let n = weights.len() as u128;
            let expect: Vec<u128> = weights.iter().map(|w| w * n).collect();
            assert_eq!(t.scaled_weights(), expect);
        }
        assert!(AliasTable::new(&[0, 0]).unwrap().is_none());
        assert!(AliasTable::new(&[]).unwrap().is_none());
    }

    #[test]
    fn zero_weights_never_drawn() {
        let t = AliasTable::new(&[0, 7, 0, 2, 0]).unwrap().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let i = t.sample(&mut rng);
            assert!(i == 1 || i == 3);
        }
    }
}
