use crate::diff::{central_derivatives, Stencil};
use crate::error::{Error, Result};
use rug::Float;

/// Values and derivatives of a function on a strictly increasing grid.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    pub grid: Vec<Float>,
    /// jets[i] = [f, f', ..., f^(order)] at grid[i]
    pub jets: Vec<Vec<Float>>,
    pub provenance: String,
}

impl SampledFunction {
    pub fn order(&self) -> usize {
        self.jets.first().map_or(0, |j| j.len().saturating_sub(1))
    }

    fn check_grid(grid: &[Float]) -> Result<()> {
        if grid.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("grid must be strictly increasing".into()));
        }
        Ok(())
    }

    /// From a function that returns its own jet.
    pub fn from_jets<F>(grid: Vec<Float>, jet: F, provenance: &str) -> Result<Self>
    where
        F: Fn(&Float) -> Result<Vec<Float>>,
    {
        Self::check_grid(&grid)?;
        let jets = grid.iter().map(jet).collect::<Result<Vec<_>>>()?;
        let order = jets[0].len();
        if jets.iter().any(|j| j.len() != order) {
            return Err(Error::InvalidParameter("inconsistent derivative orders".into()));
        }
        Ok(SampledFunction { grid, jets, provenance: provenance.to_string() })
    }

    /// From point values, derivatives by central differences.
    pub fn from_values<F>(grid: Vec<Float>, f: F, stencil: Stencil, order: usize, provenance: &str) -> Result<Self>
    where
        F: Fn(&Float) -> Result<Float>,
    {
        Self::check_grid(&grid)?;
        let mut jets = Vec::with_capacity(grid.len());
        for x in &grid {
            let mut jet = vec![f(x)?];
            jet.extend(central_derivatives(&f, x, stencil, order)?);
            jets.push(jet);
        }
        Ok(SampledFunction { grid, jets, provenance: provenance.to_string() })
    }

    /// Adds `eps` to every value (not to derivatives).
    pub fn perturbed(&self, eps: f64) -> Self {
        let mut out = self.clone();
        for j in &mut out.jets {
            j[0] += eps;
        }
        out
    }

    pub fn grid_f64(&self) -> Vec<f64> {
        self.grid.iter().map(|x| x.to_f64()).collect()
    }
}

/// Evenly spaced grid start, start+step, ..., up to stop (inclusive within
/// rounding).  Points are built as start + i*step in the working precision.
pub fn linear_grid(start: f64, stop: f64, step: f64, bits: u32) -> Vec<Float> {
    let count = ((stop - start) / step + 1e-9).floor() as i64;
    (0..=count.max(0))
        .map(|i| Float::with_val(bits, start) + Float::with_val(bits, step) * i as i32)
        .collect()
}
