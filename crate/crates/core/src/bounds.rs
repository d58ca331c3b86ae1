//! Box constraints on the decision space.

use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::scalar::Real;

/// Per-dimension `[lower, upper]` box, `lower[k] <= upper[k]` for all `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds<R> {
    lower: Vec<R>,
    upper: Vec<R>,
}

impl<R: Real> Bounds<R> {
    pub fn new(lower: Vec<R>, upper: Vec<R>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::argument(
                "bounds need matching, non-empty lower and upper vectors",
            ));
        }
        for (k, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::argument(format!(
                    "bound {k} invalid: [{lo}, {hi}]"
                )));
            }
        }
        Ok(Bounds { lower, upper })
    }

    /// The same `[lo, hi]` interval in every dimension.
    pub fn uniform_box(dim: usize, lo: R, hi: R) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[R] {
        &self.lower
    }

    pub fn upper(&self) -> &[R] {
        &self.upper
    }

    /// Projects `x` onto the box, component-wise.
    pub fn clip(&self, x: &[R]) -> Result<Vec<R>> {
        if x.len() != self.dim() {
            return Err(Error::argument(format!(
                "clip dimension mismatch: point has {}, bounds have {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| {
                if v < lo {
                    lo
                } else if v > hi {
                    hi
                } else {
                    v
                }
            })
            .collect())
    }

    pub fn contains(&self, x: &[R]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    /// Uniform sample inside the box.
    pub fn sample_uniform(&self, stream: &mut RandomStream) -> Result<Vec<R>> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| stream.uniform(lo, hi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn clip_projects_outliers() {
        let b = Bounds::uniform_box(3, 0.0, 1.0).unwrap();
        assert_eq!(b.clip(&[-0.5, 0.5, 1.5]).unwrap(), vec![0.0, 0.5, 1.0]);
        // NaN never compares below/above, so it passes through; evaluators
        // reject non-finite inputs downstream.
        assert_eq!(b.clip(&[0.25, 0.75, 1.0]).unwrap(), vec![0.25, 0.75, 1.0]);
    }

    #[test]
    fn clip_rejects_dimension_mismatch() {
        let b = Bounds::uniform_box(3, 0.0, 1.0).unwrap();
        assert!(b.clip(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn constructor_validates() {
        assert!(Bounds::new(vec![0.0], vec![0.0, 1.0]).is_err());
        assert!(Bounds::new(vec![1.0], vec![0.0]).is_err());
        assert!(Bounds::new(vec![f64::NAN], vec![1.0]).is_err());
        assert!(Bounds::<f64>::new(vec![], vec![]).is_err());
        // degenerate but legal: lower == upper
        let b = Bounds::new(vec![2.0], vec![2.0]).unwrap();
        let mut s = RandomStream::new(1);
        assert_eq!(b.sample_uniform(&mut s).unwrap(), vec![2.0]);
    }

    #[test]
    fn samples_lie_inside() {
        let b = Bounds::new(vec![-1.0, 10.0], vec![1.0, 20.0]).unwrap();
        let mut s = RandomStream::new(5);
        for _ in 0..1000 {
            let x = b.sample_uniform(&mut s).unwrap();
            assert!(b.contains(&x));
        }
    }

    proptest! {
        #[test]
        fn clip_is_idempotent_and_in_bounds(
            xs in proptest::collection::vec(-100.0f64..100.0, 1..6),
        ) {
            let b = Bounds::uniform_box(xs.len(), -1.5, 2.5).unwrap();
            let once = b.clip(&xs).unwrap();
            prop_assert!(b.contains(&once));
            let twice = b.clip(&once).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn clip_fixes_interior_points(
            xs in proptest::collection::vec(0.0f64..1.0, 1..6),
        ) {
            let b = Bounds::uniform_box(xs.len(), 0.0, 1.0).unwrap();
            prop_assert_eq!(b.clip(&xs).unwrap(), xs);
        }
    }
}
