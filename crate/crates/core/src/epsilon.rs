//! Feasibility relaxation schedule.
//!
//! The tolerance starts at the worst violation in the initial population and
//! decays to zero over the evaluation budget along `eps0 * (1 - fe/max_fe)^cp`.
//! The exponent is picked so the tolerance passes `exp(-6)` exactly at half
//! budget, which normalizes the handover from exploration to strict
//! feasibility across problems with wildly different violation scales. An
//! initial tolerance already at or below `exp(-6)` collapses the schedule to
//! zero everywhere: such a population is effectively feasible from the start.

use crate::error::{Error, Result};
use crate::individual::Individual;
use crate::scalar::{real, Real};

#[derive(Debug, Clone)]
pub struct EpsilonSchedule<R> {
    eps0: R,
    cp: R,
    max_fe: usize,
    /// True when `eps0 <= exp(-6)`; the schedule is identically zero.
    collapsed: bool,
}

impl<R: Real> EpsilonSchedule<R> {
    /// Builds the schedule from the worst aggregated violation in the
    /// initial population.
    pub fn from_initial_population(population: &[Individual<R>], max_fe: usize) -> Result<Self> {
        if population.is_empty() {
            return Err(Error::argument(
                "epsilon schedule needs a non-empty initial population",
            ));
        }
        let eps0 = population
            .iter()
            .map(|ind| ind.cv)
            .fold(R::zero(), |a, b| a.max(b));
        Self::from_eps0(eps0, max_fe)
    }

    /// Builds the schedule directly from an initial tolerance.
    pub fn from_eps0(eps0: R, max_fe: usize) -> Result<Self> {
        if max_fe == 0 {
            return Err(Error::argument("max_fe must be positive"));
        }
        if !(eps0 >= R::zero()) || !eps0.is_finite() {
            return Err(Error::argument("eps0 must be finite and >= 0"));
        }
        let floor = real::<R>((-6.0f64).exp());
        if eps0 <= floor {
            return Ok(EpsilonSchedule {
                eps0,
                cp: R::zero(),
                max_fe,
                collapsed: true,
            });
        }
        // exponent solving eps0 * 0.5^cp = exp(-6)
        let cp = (-eps0.ln() - real::<R>(6.0)) / real::<R>(0.5).ln();
        Ok(EpsilonSchedule {
            eps0,
            cp,
            max_fe,
            collapsed: false,
        })
    }

    pub fn eps0(&self) -> R {
        self.eps0
    }

    pub fn cp(&self) -> R {
        self.cp
    }

    pub fn max_fe(&self) -> usize {
        self.max_fe
    }

    /// Tolerance after `fe` evaluations; `fe` must not exceed the budget.
    pub fn epsilon_at(&self, fe: usize) -> Result<R> {
        if fe > self.max_fe {
            return Err(Error::argument(format!(
                "fe {fe} exceeds budget {}",
                self.max_fe
            )));
        }
        if self.collapsed {
            return Ok(R::zero());
        }
        let frac = real::<R>(fe as f64 / self.max_fe as f64);
        Ok(self.eps0 * (R::one() - frac).powf(self.cp))
    }
}
