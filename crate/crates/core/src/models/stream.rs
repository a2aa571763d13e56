use rand_distr::{Distribution, Geometric};

use super::check_probability;
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, LabRng};

/// A consumable sequence of bits answering pair queries.
pub trait BitSource {
    /// Bits consumed so far.
    fn position(&self) -> u64;

    /// Looks at most `max` bits ahead. If a one occurs at offset `j < max`,
    /// consumes `j + 1` bits and returns `Some(j)`; otherwise consumes `max`
    /// zeros and returns `None`.
    fn next_one_within(&mut self, max: u64) -> Result<Option<u64>>;

    fn next_bit(&mut self) -> Result<bool> {
        Ok(self.next_one_within(1)?.is_some())
    }
}

/// I.i.d. Bernoulli(p) bits, generated as runs of zeros with geometric
/// lengths. The bit sequence depends only on `(p, seed)`, not on how it is
/// consumed, so bulk skipping and bit-by-bit reading agree exactly.
#[derive(Clone, Debug)]
pub struct BernoulliStream {
    p: f64,
    seed: u64,
    position: u64,
    limit: Option<u64>,
    rng: LabRng,
    geometric: Option<Geometric>,
    zeros_ahead: Option<u64>,
}

impl BernoulliStream {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        check_probability(p)?;
        let geometric = (p > 0.0).then(|| Geometric::new(p).expect("valid probability"));
        Ok(BernoulliStream {
            p,
            seed,
            position: 0,
            limit: None,
            rng: rng_from_seed(seed),
            geometric,
            zeros_ahead: None,
        })
    }

    /// Caps the stream at `len` bits; reading past it is an underflow.
    pub fn with_limit(mut self, len: u64) -> Self {
        self.limit = Some(len);
        self
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn gap(&mut self) -> u64 {
        if let Some(g) = self.zeros_ahead {
            return g;
        }
        let g = match &self.geometric {
            Some(geo) => geo.sample(&mut self.rng),
            None => u64::MAX,
        };
        self.zeros_ahead = Some(g);
        g
    }

    /// Positions (0-based) of all ones among the next `len` bits.
    pub fn ones_within(&mut self, len: u64) -> Result<Vec<u64>> {
        let end = self.position + len;
        let mut out = Vec::new();
        while self.position < end {
            let start = self.position;
            match self.next_one_within(end - start)? {
                Some(j) => out.push(start + j),
                None => break,
            }
        }
        Ok(out)
    }
}

impl BitSource for BernoulliStream {
    fn position(&self) -> u64 {
        self.position
    }

    fn next_one_within(&mut self, max: u64) -> Result<Option<u64>> {
        if max == 0 {
            return Ok(None);
        }
        let gap = self.gap();
        let hit = gap < max;
        let consumed = if hit { gap + 1 } else { max };
        if let Some(limit) = self.limit {
            if self.position + consumed > limit {
                return Err(Error::StreamUnderflow(limit));
            }
        }
        self.position += consumed;
        if hit {
            self.zeros_ahead = None;
            Ok(Some(gap))
        } else {
            if self.geometric.is_some() {
                self.zeros_ahead = Some(gap - max);
            }
            Ok(None)
        }
    }
}

/// An explicit, finite bit sequence.
#[derive(Clone, Debug, Default)]
pub struct FixedBits {
    bits: Vec<bool>,
    position: usize,
}

impl FixedBits {
    pub fn new(bits: Vec<bool>) -> Self {
        FixedBits { bits, position: 0 }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Self::new(vec![true; len])
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.position
    }
}

impl BitSource for FixedBits {
    fn position(&self) -> u64 {
        self.position as u64
    }

    fn next_one_within(&mut self, max: u64) -> Result<Option<u64>> {
        let max = max as usize;
        let window_end = self.position.saturating_add(max).min(self.bits.len());
        let window = &self.bits[self.position..window_end];
        if let Some(j) = window.iter().position(|&b| b) {
            self.position += j + 1;
            return Ok(Some(j as u64));
        }
        if self.position + max > self.bits.len() {
            return Err(Error::StreamUnderflow(self.bits.len() as u64));
        }
        self.position += max;
        Ok(None)
    }
}
