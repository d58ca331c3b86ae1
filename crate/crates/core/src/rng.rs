//! Seeded random stream with cheap independent substreams.
//!
//! Every stochastic part of the solver draws from a [`RandomStream`], so a
//! `(seed, substream)` pair fully determines a run on any platform. Batch
//! drivers give run `r` of problem `p` its own substream instead of sharing
//! one generator across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Counter-based generator: equal seeds and substream ids yield equal draw
/// sequences; distinct substream ids yield statistically independent ones.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    substream: u64,
    rng: ChaCha12Rng,
}

impl RandomStream {
    /// Stream 0 for `seed`.
    pub fn new(seed: u64) -> Self {
        Self::with_substream(seed, 0)
    }

    /// The `substream`-th independent stream derived from `seed`.
    pub fn with_substream(seed: u64, substream: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(substream);
        RandomStream {
            seed,
            substream,
            rng,
        }
    }

    /// A fresh stream derived from this stream's seed, independent of any
    /// draws already made.
    pub fn substream(&self, index: u64) -> Self {
        Self::with_substream(self.seed, index)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn substream_id(&self) -> u64 {
        self.substream
    }

    /// Uniform draw in `[lo, hi)`; `lo == hi` returns `lo`.
    pub fn uniform<R: Real>(&mut self, lo: R, hi: R) -> Result<R> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::argument("uniform bounds must be finite"));
        }
        if lo > hi {
            return Err(Error::argument(format!(
                "uniform lower bound {lo} exceeds upper bound {hi}"
            )));
        }
        if lo == hi {
            return Ok(lo);
        }
        Ok(self.rng.gen_range(lo..hi))
    }

    /// Cauchy draw with location `loc` and scale `scale > 0`, via the inverse
    /// CDF `loc + scale * tan(pi * (u - 1/2))`.
    pub fn cauchy<R: Real>(&mut self, loc: R, scale: R) -> Result<R> {
        if !(scale > R::zero()) || !scale.is_finite() || !loc.is_finite() {
            return Err(Error::argument("cauchy requires finite loc and scale > 0"));
        }
        let u = self.uniform(R::zero(), R::one())?;
        let pi = real::<R>(std::f64::consts::PI);
        let half = real::<R>(0.5);
        Ok(loc + scale * (pi * (u - half)).tan())
    }

    /// Bernoulli draw with success probability `p` in `[0, 1]`.
    pub fn bernoulli<R: Real>(&mut self, p: R) -> Result<bool> {
        if !(p >= R::zero() && p <= R::one()) {
            return Err(Error::argument("bernoulli probability must lie in [0, 1]"));
        }
        let u = self.uniform(R::zero(), R::one())?;
        Ok(u < p)
    }

    /// Uniform index in `0..n`. Panics if `n == 0`; index draws are only
    /// meaningful against non-empty collections.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index draw from empty range");
        self.rng.gen_range(0..n)
    }
}
