//! Simon problem instances and the data walk that feeds the machine.
//!
//! An instance is a 2:1 vector-valued function f with f(x) = f(x⊕s) for a
//! nonzero secret s and distinct values across pairs. For widths up to 20 the
//! table is materialized; above that, pair values come from a seeded bijection
//! on n-bit words, which keeps the cross-pair injectivity exact without
//! exponential storage.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::bits::Bits;

/// Widths up to this get a dense table.
const DENSE_WIDTH_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("the all-zero secret string is not an allowed value")]
    SecretZero,
    #[error("secret width {secret} does not match n = {n}")]
    WidthMismatch { n: usize, secret: usize },
    #[error("table size {got} does not match 2^{n}")]
    TableSize { n: usize, got: usize },
    #[error("table is not 2:1 under the secret: f({0}) disagrees with its pair")]
    NotPaired(Bits),
    #[error("table values collide across pairs at {0}")]
    PairCollision(Bits),
}

#[derive(Debug)]
enum Values {
    Dense(Vec<u64>),
    Scrambled(WordBijection),
}

#[derive(Debug)]
pub struct SimonInstance {
    n: usize,
    secret: Bits,
    values: Values,
    query_count: AtomicU64,
}

impl SimonInstance {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn secret(&self) -> Bits {
        self.secret
    }

    /// The function value, without touching the query counter. Intended for
    /// reference oracles and exhaustive checks.
    pub fn f(&self, x: Bits) -> Bits {
        debug_assert_eq!(x.width(), self.n);
        let rep = x.word().min(x.word() ^ self.secret.word());
        let v = match &self.values {
            Values::Dense(table) => table[rep as usize],
            Values::Scrambled(b) => b.apply(rep),
        };
        Bits::from_word(v, self.n)
    }

    /// One counted oracle query.
    pub fn query(&self, x: Bits) -> Bits {
        self.query_count.fetch_add(1, Ordering::Relaxed);
        self.f(x)
    }

    pub fn query_count(&self) -> u64 {
        self.query_count.load(Ordering::Relaxed)
    }

    /// Builds an instance from an explicit value table (index = input word),
    /// validating the pairing and cross-pair injectivity.
    pub fn from_table(secret: Bits, table: Vec<u64>) -> Result<SimonInstance, InstanceError> {
        let n = secret.width();
        if secret.is_zero() {
            return Err(InstanceError::SecretZero);
        }
        if table.len() != 1 << n {
            return Err(InstanceError::TableSize {
                n,
                got: table.len(),
            });
        }
        let mut seen = std::collections::HashMap::new();
        for (w, &v) in table.iter().enumerate() {
            let pair = w as u64 ^ secret.word();
            if table[pair as usize] != v {
                return Err(InstanceError::NotPaired(Bits::from_word(w as u64, n)));
            }
            let rep = (w as u64).min(pair);
            if let Some(&other) = seen.get(&v) {
                if other != rep {
                    return Err(InstanceError::PairCollision(Bits::from_word(w as u64, n)));
                }
            }
            seen.insert(v, rep);
        }
        Ok(SimonInstance {
            n,
            secret,
            values: Values::Dense(table),
            query_count: AtomicU64::new(0),
        })
    }
}

/// Builds an instance whose pairs {x, x⊕secret} carry distinct seeded values.
pub fn make_instance(n: usize, secret: Bits, seed: u64) -> Result<SimonInstance, InstanceError> {
    if secret.width() != n {
        return Err(InstanceError::WidthMismatch {
            n,
            secret: secret.width(),
        });
    }
    if secret.is_zero() {
        return Err(InstanceError::SecretZero);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let values = if n <= DENSE_WIDTH_LIMIT {
        let size = 1usize << n;
        let mut pool: Vec<u64> = (0..size as u64).collect();
        pool.shuffle(&mut rng);
        let mut table = vec![0u64; size];
        let mut next = 0;
        for x in 0..size as u64 {
            if x <= x ^ secret.word() {
                let v = pool[next];
                next += 1;
                table[x as usize] = v;
                table[(x ^ secret.word()) as usize] = v;
            }
        }
        Values::Dense(table)
    } else {
        Values::Scrambled(WordBijection::new(n as u32, &mut rng))
    };
    Ok(SimonInstance {
        n,
        secret,
        values,
        query_count: AtomicU64::new(0),
    })
}

pub fn random_secret(n: usize, rng: &mut impl Rng) -> Bits {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    loop {
        let b = Bits::from_word(rng.next_u64() & full, n);
        if !b.is_zero() {
            return b;
        }
    }
}

/// One (x, f(x)) pair drawn from the problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DataElement {
    pub x: Bits,
    pub f: Bits,
}

/// How successive x values are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkMode {
    /// Exactly one input bit toggles per data element, each index exactly
    /// once per n-element epoch.
    SingleBit,
    /// A seeded random nonempty subset of bits toggles.
    General,
}

/// Walk position plus the bookkeeping of the single-bit schedule.
///
/// The single-bit walk works in epochs: every index toggles exactly once per
/// epoch, so bit frequencies are exactly equal. Within an epoch the next
/// toggle is chosen (seeded ties) to realize trailing distinct-toggle
/// interval sets that have come up least often so far. The machine fits its
/// circuits to the trailing data window, and a window whose span covers a
/// {z, z⊕s} pair always yields a valid equation set, so steering the walk
/// toward unrealized interval sets is what makes convergence reliable on
/// functions with long constant stretches.
#[derive(Clone, Debug)]
pub struct WalkState {
    pub x: Bits,
    epoch: Vec<usize>,
    run: Vec<usize>,
    realized: HashMap<u64, u32>,
}

impl WalkState {
    pub fn start(n: usize) -> WalkState {
        WalkState {
            x: Bits::zero(n),
            epoch: Vec::new(),
            run: Vec::new(),
            realized: HashMap::new(),
        }
    }

    fn mask(&self, j: usize) -> u64 {
        1u64 << (self.x.width() - 1 - j)
    }

    fn next_single_bit(&mut self, rng: &mut impl Rng) -> usize {
        let n = self.x.width();
        if self.epoch.is_empty() {
            self.epoch = (0..n).collect();
            self.epoch.shuffle(rng);
        }
        let mut best: Vec<usize> = Vec::new();
        let mut best_score = f64::NEG_INFINITY;
        for (pos, &j) in self.epoch.iter().enumerate() {
            let start = self
                .run
                .iter()
                .position(|&c| c == j)
                .map(|p| p + 1)
                .unwrap_or(0);
            let mut acc = self.mask(j);
            let mut score = 0.25f64.powi(*self.realized.get(&acc).unwrap_or(&0) as i32);
            for &c in self.run[start..].iter().rev() {
                acc |= self.mask(c);
                score += 0.25f64.powi(*self.realized.get(&acc).unwrap_or(&0) as i32);
            }
            if score > best_score + 1e-12 {
                best_score = score;
                best.clear();
                best.push(pos);
            } else if (score - best_score).abs() <= 1e-12 {
                best.push(pos);
            }
        }
        let pick = best[rng.random_range(0..best.len())];
        let j = self.epoch.swap_remove(pick);
        let start = self
            .run
            .iter()
            .position(|&c| c == j)
            .map(|p| p + 1)
            .unwrap_or(0);
        self.run.drain(..start);
        self.run.push(j);
        let mut acc = 0u64;
        for &c in self.run.iter().rev() {
            acc |= self.mask(c);
            *self.realized.entry(acc).or_insert(0) += 1;
        }
        j
    }
}

/// Advances the walk and queries f at the new point (one counted query).
/// The new x always differs from the previous one.
pub fn next_data(
    instance: &SimonInstance,
    state: &mut WalkState,
    mode: WalkMode,
    rng: &mut impl Rng,
) -> DataElement {
    let n = instance.n();
    match mode {
        WalkMode::SingleBit => {
            let j = state.next_single_bit(rng);
            state.x.toggle(j);
        }
        WalkMode::General => {
            let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let mask = loop {
                let r = rng.next_u64() & full;
                if r != 0 {
                    break r;
                }
            };
            state.x = Bits::from_word(state.x.word() ^ mask, n);
        }
    }
    DataElement {
        x: state.x,
        f: instance.query(state.x),
    }
}

/// A seeded bijection on n-bit words built from invertible word operations
/// (odd multiply, xor-shift, xor-constant), all taken modulo 2^n.
#[derive(Debug)]
struct WordBijection {
    width: u32,
    rounds: Vec<(u64, u32, u64)>,
}

impl WordBijection {
    fn new(width: u32, rng: &mut impl Rng) -> Self {
        let mask = if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        };
        let rounds = (0..6)
            .map(|_| {
                let mul = (rng.next_u64() | 1) & mask;
                let shift = rng.random_range(1..width.max(2));
                let xor = rng.next_u64() & mask;
                (mul, shift, xor)
            })
            .collect();
        WordBijection { width, rounds }
    }

    fn apply(&self, mut x: u64) -> u64 {
        let mask = if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        };
        for &(mul, shift, xor) in &self.rounds {
            x = x.wrapping_mul(mul) & mask;
            x ^= x >> shift;
            x ^= xor;
            x &= mask;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn pairing_and_two_to_one() {
        let secret = Bits::parse("1001").unwrap();
        let inst = make_instance(4, secret, 11).unwrap();
        let mut census: HashMap<u64, usize> = HashMap::new();
        for x in Bits::all(4) {
            assert_eq!(inst.f(x), inst.f(x.xor(&secret)));
            *census.entry(inst.f(x).word()).or_default() += 1;
        }
        assert_eq!(census.len(), 8);
        assert!(census.values().all(|&c| c == 2));
    }

    #[test]
    fn zero_secret_rejected() {
        assert_eq!(
            make_instance(4, Bits::zero(4), 1).unwrap_err(),
            InstanceError::SecretZero
        );
    }

    #[test]
    fn deterministic_per_seed() {
        let s = Bits::parse("101").unwrap();
        let a = make_instance(3, s, 7).unwrap();
        let b = make_instance(3, s, 7).unwrap();
        for x in Bits::all(3) {
            assert_eq!(a.f(x), b.f(x));
        }
    }

    #[test]
    fn scrambled_mode_is_two_to_one() {
        let mut secret = Bits::zero(24);
        secret.set(0, true);
        secret.set(23, true);
        let inst = make_instance(24, secret, 3).unwrap();
        // Spot-check pairing and cross-pair distinctness on a few points.
        let xs = [0u64, 1, 2, 77, 500_000, 9_000_000];
        let mut seen = HashMap::new();
        for &w in &xs {
            let x = Bits::from_word(w, 24);
            let v = inst.f(x);
            assert_eq!(v, inst.f(x.xor(&secret)));
            let rep = w.min(w ^ secret.word());
            if let Some(prev) = seen.insert(v.word(), rep) {
                assert_eq!(prev, rep, "distinct pairs must map to distinct values");
            }
        }
    }

    #[test]
    fn single_bit_walk_moves_one_bit_with_equal_frequency() {
        use rand::SeedableRng;
        let secret = Bits::parse("110").unwrap();
        let inst = make_instance(3, secret, 5).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
        let mut state = WalkState::start(3);
        let mut prev = state.x;
        let mut counts = [0u32; 3];
        for _ in 0..99 {
            let d = next_data(&inst, &mut state, WalkMode::SingleBit, &mut rng);
            let diff = prev.diff_positions(&d.x);
            assert_eq!(diff.len(), 1);
            counts[diff[0]] += 1;
            assert_eq!(d.f, inst.f(d.x));
            prev = d.x;
        }
        // Complete epochs mean exactly equal per-index counts.
        assert_eq!(counts, [33, 33, 33]);
        assert_eq!(inst.query_count(), 99);
    }

    #[test]
    fn general_walk_always_moves() {
        use rand::SeedableRng;
        let secret = Bits::parse("1100").unwrap();
        let inst = make_instance(4, secret, 5).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(2);
        let mut state = WalkState::start(4);
        let mut prev = state.x;
        for _ in 0..200 {
            let d = next_data(&inst, &mut state, WalkMode::General, &mut rng);
            assert!(!prev.diff_positions(&d.x).is_empty());
            prev = d.x;
        }
    }
}
