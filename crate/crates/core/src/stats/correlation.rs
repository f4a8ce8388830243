use alloc::string::String;
use alloc::vec::Vec;

use super::special::regularized_incomplete_beta;
use crate::{Error, Result};

/// Significance level used to mask correlation cells by default.
pub const DEFAULT_ALPHA: f64 = 0.0001;

/// Outcome of correlating two score vectors.
///
/// In correlation mode `r_squared` is `rho * rho`; see [`r_squared_fit`] for
/// the regression route to the same number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricResult {
    pub rho: f64,
    pub r_squared: f64,
    /// Two-sided p-value of the t test on `rho` with `n - 2` degrees of freedom.
    pub p_value: f64,
    pub n: usize,
}

struct Moments {
    sxx: f64,
    syy: f64,
    sxy: f64,
    mean_x: f64,
    mean_y: f64,
}

fn moments(x: &[f64], y: &[f64]) -> Result<Moments> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() < 3 {
        return Err(Error::InsufficientSamples { needed: 3, got: x.len() });
    }
    let constant = |v: &[f64]| v.iter().all(|&a| a == v[0]);
    if constant(x) || constant(y) {
        return Err(Error::UndefinedCorrelation);
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if !(sxx > 0.0 && syy > 0.0) {
        return Err(Error::UndefinedCorrelation);
    }
    Ok(Moments { sxx, syy, sxy, mean_x, mean_y })
}

/// Sample Pearson correlation with an exact two-sided p-value.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<MetricResult> {
    let m = moments(x, y)?;
    let rho = (m.sxy / libm::sqrt(m.sxx * m.syy)).clamp(-1.0, 1.0);
    let n = x.len();
    let dof = (n - 2) as f64;
    // With t = rho * sqrt(dof / (1 - rho^2)), dof / (dof + t^2) = 1 - rho^2, so
    // the two-sided tail is I_{1 - rho^2}(dof / 2, 1 / 2).
    let p_value = regularized_incomplete_beta(dof / 2.0, 0.5, 1.0 - rho * rho).clamp(0.0, 1.0);
    Ok(MetricResult { rho, r_squared: rho * rho, p_value, n })
}

/// Coefficient of determination of the least-squares line of `truth` on `pred`.
///
/// For simple linear regression this equals the squared Pearson correlation;
/// it is computed here from residuals so the two routes can be checked
/// against each other.
pub fn r_squared_fit(pred: &[f64], truth: &[f64]) -> Result<f64> {
    let m = moments(pred, truth)?;
    let slope = m.sxy / m.sxx;
    let intercept = m.mean_y - slope * m.mean_x;
    let ss_res: f64 = pred
        .iter()
        .zip(truth)
        .map(|(&p, &t)| {
            let r = t - (intercept + slope * p);
            r * r
        })
        .sum();
    Ok(1.0 - ss_res / m.syy)
}

/// A named score column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

impl Column {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Column { name: name.into(), values }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Significant(MetricResult),
    /// Computed, but `p_value >= alpha`.
    Masked(MetricResult),
    /// Pearson could not be computed for this pair.
    Undefined(Error),
}

impl Cell {
    pub fn result(&self) -> Option<&MetricResult> {
        match self {
            Cell::Significant(m) | Cell::Masked(m) => Some(m),
            Cell::Undefined(_) => None,
        }
    }

    pub fn is_masked(&self) -> bool {
        !matches!(self, Cell::Significant(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub alpha: f64,
    /// Row-major, `rows.len() * cols.len()` cells.
    pub cells: Vec<Cell>,
}

impl CorrelationMatrix {
    pub fn get(&self, row: usize, col: usize) -> &Cell {
        &self.cells[row * self.cols.len() + col]
    }
}

/// Correlates every row column with every column column and masks cells
/// whose p-value is not below `alpha`.
pub fn correlation_matrix(rows: &[Column], cols: &[Column], alpha: f64) -> Result<CorrelationMatrix> {
    let len = rows.first().or(cols.first()).map_or(0, |c| c.values.len());
    if let Some(bad) = rows.iter().chain(cols).find(|c| c.values.len() != len) {
        return Err(Error::LengthMismatch { left: len, right: bad.values.len() });
    }
    let mut cells = Vec::with_capacity(rows.len() * cols.len());
    for r in rows {
        for c in cols {
            cells.push(match pearson(&r.values, &c.values) {
                Ok(m) if m.p_value < alpha => Cell::Significant(m),
                Ok(m) => Cell::Masked(m),
                Err(e) => Cell::Undefined(e),
            });
        }
    }
    Ok(CorrelationMatrix {
        rows: rows.iter().map(|c| c.name.clone()).collect(),
        cols: cols.iter().map(|c| c.name.clone()).collect(),
        alpha,
        cells,
    })
}
