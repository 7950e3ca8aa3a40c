//! Run-time knobs shared by the analyses.

use crate::error::Result;
use crate::phases::{PhaseGrid, PhaseSet};
use crate::scalar::{rat, Field, Rational};

#[derive(Clone, Debug)]
pub struct Settings {
    /// Resolution `N` of the complex phase grid (`2N` points).
    pub phase_grid: usize,
    /// Finest resolution used when refining complex enclosures.
    pub max_grid: usize,
    /// Gap used in peak-function searches.
    pub margin: Rational,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { phase_grid: 64, max_grid: 1024, margin: rat(1, 1000), seed: 0 }
    }
}

impl Settings {
    pub fn with_grid(mut self, n: usize) -> Self {
        self.phase_grid = n;
        self
    }

    pub fn grid(&self) -> Result<PhaseGrid> {
        PhaseGrid::new(self.phase_grid)
    }

    pub fn phase_set(&self, field: Field) -> Result<PhaseSet> {
        Ok(match field {
            Field::Real => PhaseSet::Real,
            Field::Complex => PhaseSet::Grid(self.grid()?),
        })
    }
}
