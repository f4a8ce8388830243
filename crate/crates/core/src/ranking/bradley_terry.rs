use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::wins::WinMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BtConfig {
    /// Added to the win count of both directions of every compared pair.
    pub pseudo_count: f64,
    pub max_iter: usize,
    /// Convergence threshold on the largest change of a log-strength.
    pub tol: f64,
    /// Keep the log-likelihood after every sweep in [`StrengthVector::trace`].
    pub record_trace: bool,
}

impl Default for BtConfig {
    fn default() -> Self {
        BtConfig { pseudo_count: 0.5, max_iter: 10_000, tol: 1e-9, record_trace: false }
    }
}

/// Fitted Bradley-Terry strengths, gauge-fixed to geometric mean 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthVector {
    pub items: Vec<String>,
    pub strengths: Vec<f64>,
    pub log_likelihood: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Log-likelihood at the start and after each sweep, when requested.
    pub trace: Vec<f64>,
}

impl StrengthVector {
    pub fn log_strengths(&self) -> Vec<f64> {
        self.strengths.iter().map(|&p| libm::log(p)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolenceScore {
    pub image_id: String,
    pub score: f64,
}

/// Smoothed pair counts `(i, j, w'_ij, w'_ji)`.
fn smoothed_edges(wins: &WinMatrix, pseudo_count: f64) -> Vec<(usize, usize, f64, f64)> {
    wins.compared_pairs()
        .map(|(i, j, wij, wji)| (i, j, wij as f64 + pseudo_count, wji as f64 + pseudo_count))
        .collect()
}

/// Every item must reach every other along "beats" edges; otherwise some
/// strengths run off to zero or infinity.
fn check_strongly_connected(n: usize, edges: &[(usize, usize, f64, f64)]) -> Result<()> {
    let mut beats: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut beaten_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j, wij, wji) in edges {
        if wij > 0.0 {
            beats[i].push(j);
            beaten_by[j].push(i);
        }
        if wji > 0.0 {
            beats[j].push(i);
            beaten_by[i].push(j);
        }
    }
    for adjacency in [&beats, &beaten_by] {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(cut) = seen.iter().position(|s| !s) {
            return Err(Error::DegenerateMle(alloc::format!(
                "comparison graph is not strongly connected (item {cut} is cut off from item 0); use a positive pseudo-count or add comparisons"
            )));
        }
    }
    Ok(())
}

fn ll_of(edges: &[(usize, usize, f64, f64)], strengths: &[f64]) -> f64 {
    edges
        .iter()
        .map(|&(i, j, wij, wji)| {
            let (pi, pj) = (strengths[i], strengths[j]);
            let ln_sum = libm::log(pi + pj);
            let mut ll = 0.0;
            if wij > 0.0 {
                ll += wij * (libm::log(pi) - ln_sum);
            }
            if wji > 0.0 {
                ll += wji * (libm::log(pj) - ln_sum);
            }
            ll
        })
        .sum()
}

/// Log-likelihood of `strengths` under the smoothed counts.
pub fn log_likelihood(wins: &WinMatrix, strengths: &[f64], pseudo_count: f64) -> f64 {
    ll_of(&smoothed_edges(wins, pseudo_count), strengths)
}

/// Rescales to geometric mean 1.
fn fix_gauge(strengths: &mut [f64]) {
    let mean_log = strengths.iter().map(|&p| libm::log(p)).sum::<f64>() / strengths.len() as f64;
    let scale = libm::exp(-mean_log);
    for p in strengths {
        *p *= scale;
    }
}

/// Maximum-likelihood Bradley-Terry strengths.
///
/// Each sweep applies the minorize-maximize update
/// `pi_i <- W'_i / sum_j n'_ij / (pi_i + pi_j)` to all items at once, then
/// rescales to geometric mean 1. The log-likelihood never decreases between
/// sweeps. Iteration stops when no log-strength moves by `tol` or more, or
/// after `max_iter` sweeps.
pub fn fit_bradley_terry(wins: &WinMatrix, config: &BtConfig) -> Result<StrengthVector> {
    let n = wins.len();
    if n < 2 {
        return Err(Error::InsufficientItems { needed: 2, got: n });
    }
    if !(config.pseudo_count >= 0.0 && config.pseudo_count.is_finite()) {
        return Err(Error::Config(alloc::format!("pseudo-count must be >= 0, got {}", config.pseudo_count)));
    }
    let edges = smoothed_edges(wins, config.pseudo_count);
    check_strongly_connected(n, &edges)?;

    let mut total_wins = vec![0.0; n];
    for &(i, j, wij, wji) in &edges {
        total_wins[i] += wij;
        total_wins[j] += wji;
    }

    let mut strengths = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut denom = vec![0.0; n];
    let mut trace = Vec::new();
    if config.record_trace {
        trace.push(ll_of(&edges, &strengths));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iter {
        iterations += 1;
        denom.iter_mut().for_each(|d| *d = 0.0);
        for &(i, j, wij, wji) in &edges {
            let share = (wij + wji) / (strengths[i] + strengths[j]);
            denom[i] += share;
            denom[j] += share;
        }
        for i in 0..n {
            next[i] = total_wins[i] / denom[i];
        }
        fix_gauge(&mut next);
        let delta = strengths
            .iter()
            .zip(&next)
            .map(|(&a, &b)| libm::fabs(libm::log(b) - libm::log(a)))
            .fold(0.0, f64::max);
        core::mem::swap(&mut strengths, &mut next);
        if config.record_trace {
            trace.push(ll_of(&edges, &strengths));
        }
        if delta < config.tol {
            converged = true;
            break;
        }
    }

    let log_likelihood = ll_of(&edges, &strengths);
    Ok(StrengthVector {
        items: wins.items().to_vec(),
        strengths,
        log_likelihood,
        iterations,
        converged,
        trace,
    })
}

/// Maps log-strengths affinely onto `[0, 1]` (min to 0, max to 1). When all
/// strengths are equal every score is 0.5.
pub fn normalize_scores(fit: &StrengthVector) -> Vec<ViolenceScore> {
    let logs = fit.log_strengths();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = hi - lo;
    fit.items
        .iter()
        .zip(&logs)
        .map(|(id, &l)| ViolenceScore {
            image_id: id.clone(),
            score: if spread > 0.0 { (l - lo) / spread } else { 0.5 },
        })
        .collect()
}

/// Model probability that the item with strength `pi_i` beats the one with
/// strength `pi_j`.
pub fn predict_pair_prob(pi_i: f64, pi_j: f64) -> Result<f64> {
    for p in [pi_i, pi_j] {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidStrength(p));
        }
    }
    Ok(pi_i / (pi_i + pi_j))
}
