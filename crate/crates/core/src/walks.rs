//! Evolving arc states under the discrete walk and under the product of
//! continuous factors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::factor::{FactorizationResult, GroverWalk};
use crate::linalg::{expm_skew, ComplexMatrix};

/// Unit vector of complex amplitudes indexed by arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcState {
    amplitudes: Vec<Complex64>,
}

impl ArcState {
    /// Normalizes `amplitudes`; fails on an empty or zero vector.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = l2(&amplitudes);
        if amplitudes.is_empty() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::validation("state must be a nonzero finite vector"));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// All amplitude on one arc.
    pub fn basis(len: usize, arc: usize) -> Result<Self> {
        if arc >= len {
            return Err(Error::validation(format!("arc index {arc} out of range 0..{len}")));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        v[arc] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn uniform(len: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(1.0, 0.0); len])
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2(&self.amplitudes)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn distance(&self, other: &ArcState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn apply(&self, m: &ComplexMatrix) -> ArcState {
        ArcState {
            amplitudes: m.matvec(&self.amplitudes),
        }
    }
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_len(expected: usize, psi: &ArcState) -> Result<()> {
    if psi.len() != expected {
        return Err(Error::validation(format!(
            "state has {} amplitudes but the walk acts on {expected} arcs",
            psi.len()
        )));
    }
    Ok(())
}

/// `U^steps · ψ`
pub fn discrete_evolve(w: &GroverWalk, psi: &ArcState, steps: usize) -> Result<ArcState> {
    check_len(w.arc_count(), psi)?;
    let u = w.transition.to_complex();
    Ok((0..steps).fold(psi.clone(), |state, _| state.apply(&u)))
}

/// `Π_i exp(m t_i S(Y_i)) · ψ`; the factors commute, so m whole steps of
/// the squared walk are one exponential per distance digraph.
pub fn continuous_evolve(res: &FactorizationResult, psi: &ArcState, m: usize) -> Result<ArcState> {
    let len = res.skews.first().map_or(0, |s| s.rows());
    check_len(len, psi)?;
    let mut state = psi.clone();
    for (s, &t) in res.skews.iter().zip(&res.t).rev() {
        let factor = expm_skew(s, m as f64 * t)?;
        state = state.apply(&factor.to_complex());
    }
    Ok(state)
}

/// `‖U^{2m} ψ − continuous_evolve(ψ, m)‖₂`
pub fn compare_evolutions(
    w: &GroverWalk,
    res: &FactorizationResult,
    psi: &ArcState,
    m: usize,
) -> Result<f64> {
    let discrete = discrete_evolve(w, psi, 2 * m)?;
    let continuous = continuous_evolve(res, psi, m)?;
    Ok(discrete.distance(&continuous))
}

/// Deviations for `m = 1..=max_m` (or just `m = 0` when `max_m` is zero),
/// stepping the discrete walk incrementally.
pub fn deviation_series(
    w: &GroverWalk,
    res: &FactorizationResult,
    psi: &ArcState,
    max_m: usize,
) -> Result<Vec<(usize, f64)>> {
    if max_m == 0 {
        return Ok(vec![(0, compare_evolutions(w, res, psi, 0)?)]);
    }
    let u = w.transition.to_complex();
    let mut discrete = psi.clone();
    let mut out = Vec::with_capacity(max_m);
    for m in 1..=max_m {
        discrete = discrete.apply(&u).apply(&u);
        out.push((m, discrete.distance(&continuous_evolve(res, psi, m)?)));
    }
    Ok(out)
}
