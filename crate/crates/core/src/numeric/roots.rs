//! Simultaneous root finding by the Aberth-Ehrlich iteration.

use super::ComplexApprox;
use crate::error::{Error, Result};

const MAX_ITER: usize = 400;
const STEP_TOL: f64 = 1e-13;
const LEAD_TOL: f64 = 1e-300;

/// All roots plus the residual bound the iteration achieved.
#[derive(Debug, Clone)]
pub struct RootEstimate {
    pub roots: Vec<ComplexApprox>,
    pub max_residual: f64,
}

fn horner(coeffs: &[ComplexApprox], z: ComplexApprox) -> ComplexApprox {
    let mut acc = ComplexApprox::new(0.0, 0.0);
    for c in coeffs {
        acc = acc * z + c;
    }
    acc
}

/// Roots of the polynomial with the given coefficients, leading first.
///
/// Deterministic: initial guesses sit on a circle of the Cauchy radius with
/// a fixed angular offset, and the sweep order is fixed, so identical
/// inputs give bit-identical outputs.
pub fn univariate_roots(coeffs: &[ComplexApprox]) -> Result<RootEstimate> {
    if coeffs.is_empty() || coeffs[0].norm() <= LEAD_TOL {
        return Err(Error::LeadingCoefficientZero);
    }
    if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return Err(Error::Invalid("non-finite coefficient".into()));
    }
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(RootEstimate { roots: vec![], max_residual: 0.0 });
    }
    // monic normalization
    let lead = coeffs[0];
    let monic: Vec<ComplexApprox> = coeffs.iter().map(|c| c / lead).collect();
    let deriv: Vec<ComplexApprox> = monic[..degree]
        .iter()
        .enumerate()
        .map(|(i, c)| c * ComplexApprox::new((degree - i) as f64, 0.0))
        .collect();

    // Cauchy bound: all roots lie within 1 + max |a_i|.
    let radius = 1.0 + monic[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<ComplexApprox> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + 0.4;
            ComplexApprox::from_polar(radius, theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        let mut max_residual = 0.0f64;
        for m in 0..degree {
            let fm = horner(&monic, z[m]);
            max_residual = max_residual.max(fm.norm());
            let mut dm = horner(&deriv, z[m]);
            if dm.norm() <= LEAD_TOL {
                dm = ComplexApprox::new(LEAD_TOL.sqrt(), LEAD_TOL.sqrt());
            }
            let newton = fm / dm;
            let mut rep = ComplexApprox::new(0.0, 0.0);
            for l in 0..degree {
                if l != m {
                    let diff = z[m] - z[l];
                    if diff.norm() > LEAD_TOL {
                        rep += ComplexApprox::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = ComplexApprox::new(1.0, 0.0) - newton * rep;
            let w = if denom.norm() <= LEAD_TOL { newton } else { newton / denom };
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(Error::NoConvergence { residual: max_residual });
            }
            z[m] -= w;
            max_step = max_step.max(w.norm() / z[m].norm().max(1.0));
        }
        if max_step < STEP_TOL {
            converged = true;
            break;
        }
    }
    let max_residual = z.iter().map(|&zm| horner(&monic, zm).norm()).fold(0.0, f64::max);
    if !converged && max_residual > 1e-6 {
        return Err(Error::NoConvergence { residual: max_residual });
    }
    // canonical order: by real part, then imaginary part
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(RootEstimate { roots: z, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> ComplexApprox {
        ComplexApprox::new(re, 0.0)
    }

    #[test]
    fn quadratic_plus_minus_one() {
        // T^2 - 1
        let est = univariate_roots(&[c(1.0), c(0.0), c(-1.0)]).unwrap();
        assert!((est.roots[0] - c(-1.0)).norm() < 1e-12);
        assert!((est.roots[1] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn triple_zero() {
        let est = univariate_roots(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        for r in est.roots {
            assert!(r.norm() < 1e-4);
        }
    }

    #[test]
    fn double_root_accuracy_loss() {
        // T^2 - 2T + 1: double roots only reach about sqrt(eps) accuracy
        let est = univariate_roots(&[c(1.0), c(-2.0), c(1.0)]).unwrap();
        for r in est.roots {
            assert!((r - c(1.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn zero_leading_rejected() {
        assert_eq!(
            univariate_roots(&[c(0.0), c(1.0)]).err(),
            Some(Error::LeadingCoefficientZero)
        );
    }
}
