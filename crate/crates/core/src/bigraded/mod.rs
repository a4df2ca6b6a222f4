//! Bigrades, hooks, finitely presented bigraded modules and their evaluation
//! on finite grids.

mod bigrade;
mod format;
mod grid;
mod hook;
mod presentation;

pub use bigrade::{Bigrade, INF};
pub use format::{parse_bpm, parse_bpm_with_default, to_bpm};
pub use grid::{GridBox, GridModule};
pub use hook::{Bar, Hook};
pub use presentation::Presentation;

pub(crate) use grid::{down, left, right, up};

/// `dims[d]` of the grid evaluation, computed independently of
/// [`GridModule::from_presentation`].
pub fn hilbert_function(pres: &Presentation, degree: Bigrade) -> usize {
    pres.hilbert_function(degree)
}

pub fn to_grid(pres: &Presentation, grid: GridBox) -> crate::Result<GridModule> {
    GridModule::from_presentation(pres, grid)
}
