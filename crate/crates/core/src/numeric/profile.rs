//! Root-count profiles over a sample grid in the coefficient variables.

use super::{cluster_roots, univariate_roots, ComplexApprox};
use crate::error::Result;
use crate::scalar::{self, Scalar};
use crate::uni::UniOverJets;

/// One sampled axis: a coefficient variable swept over `[-radius, radius]`
/// with `points` equally spaced rational sample values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleAxis {
    pub var: usize,
    pub radius: Scalar,
    pub points: usize,
}

/// Region description: the sampled axes plus the escape radius for the
/// distinguished variable (the analytic root bound being probed).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRegion {
    pub axes: Vec<SampleAxis>,
    pub escape_radius: f64,
}

impl SampleRegion {
    /// Cartesian sample grid, exact coordinates, ordered lexicographically
    /// by axis then point index.
    fn grid(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut samples: Vec<Vec<(usize, Scalar)>> = vec![vec![]];
        for axis in &self.axes {
            let mut next = Vec::new();
            let values: Vec<Scalar> = if axis.points <= 1 {
                vec![scalar::int(0)]
            } else {
                (0..axis.points)
                    .map(|k| {
                        // -r + 2r * k/(points-1)
                        let t = scalar::ratio(k as i64, (axis.points - 1) as i64);
                        -&axis.radius + scalar::int(2) * &axis.radius * t
                    })
                    .collect()
            };
            for prefix in &samples {
                for v in &values {
                    let mut row = prefix.clone();
                    row.push((axis.var, v.clone()));
                    next.push(row);
                }
            }
            samples = next;
        }
        samples
    }
}

#[derive(Debug, Clone)]
pub struct ProfileSample {
    pub point: Vec<(usize, Scalar)>,
    pub distinct_roots: usize,
    pub max_modulus: f64,
    pub escaped: bool,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct RootProfile {
    pub samples: Vec<ProfileSample>,
    /// `Some(count)` when every sample shows the same distinct-root count.
    pub constant_count: Option<usize>,
    pub rel_tol: f64,
    pub escape_radius: f64,
}

/// Evaluates the coefficients of `f` on the grid, finds and clusters the
/// roots, and records counts and escape flags. Sample points are exact
/// rationals rounded once at the end, and the grid order is fixed, so the
/// profile is deterministic.
pub fn root_count_profile(
    f: &UniOverJets,
    region: &SampleRegion,
    rel_tol: f64,
) -> Result<RootProfile> {
    let arity = f.ctx().arity();
    let mut samples = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for assignment in region.grid() {
        let mut point = vec![scalar::int(0); arity];
        for (v, val) in &assignment {
            point[*v] = val.clone();
        }
        let coeffs: Vec<ComplexApprox> = f
            .coeffs()
            .iter()
            .map(|c| ComplexApprox::new(scalar::to_f64(&c.eval(&point)), 0.0))
            .collect();
        let est = univariate_roots(&coeffs)?;
        let clusters = cluster_roots(&est.roots, rel_tol);
        let max_modulus =
            est.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let sample = ProfileSample {
            point: assignment,
            distinct_roots: clusters.len(),
            max_modulus,
            escaped: max_modulus >= region.escape_radius,
            residual: est.max_residual,
        };
        counts.push(sample.distinct_roots);
        samples.push(sample);
    }
    let constant_count = match counts.first() {
        Some(&c0) if counts.iter().all(|&c| c == c0) => Some(c0),
        _ => None,
    };
    Ok(RootProfile { samples, constant_count, rel_tol, escape_radius: region.escape_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::jet::{term, Jet};
    use crate::scalar::int;
    use crate::uni::UniOverJets;

    #[test]
    fn non_constant_over_degenerate_point() {
        // F = x^2 - t over a t-grid through 0: one root at t = 0, two away.
        let ctx = VarContext::new(vec!["t".into(), "x".into()], Some(0)).unwrap();
        let fjet = term(&ctx, 8, int(1), &[0, 2]).sub(&term(&ctx, 8, int(1), &[1, 0])).unwrap();
        let f = UniOverJets::from_jet(&fjet, 1).unwrap();
        let region = SampleRegion {
            axes: vec![SampleAxis { var: 0, radius: int(1), points: 3 }],
            escape_radius: 2.0,
        };
        let profile = root_count_profile(&f, &region, 1e-8).unwrap();
        assert_eq!(profile.constant_count, None);
        let counts: Vec<usize> = profile.samples.iter().map(|s| s.distinct_roots).collect();
        assert_eq!(counts, vec![2, 1, 2]);
    }

    #[test]
    fn constant_profile() {
        // F = x(x - 1): always two distinct roots, no escapes for radius 2.
        let ctx = VarContext::new(vec!["t".into(), "x".into()], Some(0)).unwrap();
        let fjet = term(&ctx, 8, int(1), &[0, 2]).sub(&term(&ctx, 8, int(1), &[0, 1])).unwrap();
        let f = UniOverJets::from_jet(&fjet, 1).unwrap();
        let region = SampleRegion {
            axes: vec![SampleAxis { var: 0, radius: int(1), points: 5 }],
            escape_radius: 2.0,
        };
        let profile = root_count_profile(&f, &region, 1e-8).unwrap();
        assert_eq!(profile.constant_count, Some(2));
        assert!(profile.samples.iter().all(|s| !s.escaped));
    }

    #[test]
    fn shifted_family_stays_inside() {
        // F = x^2 - (1+t)x on |t| <= 1/2: roots 0 and 1 + t.
        let ctx = VarContext::new(vec!["t".into(), "x".into()], Some(0)).unwrap();
        let one_plus_t = Jet::one(ctx.clone(), 8).add(&Jet::variable(ctx.clone(), 8, 0)).unwrap();
        let f = UniOverJets::new(
            1,
            vec![Jet::one(ctx.clone(), 8), one_plus_t.neg(), Jet::zero(ctx.clone(), 8)],
        )
        .unwrap();
        let region = SampleRegion {
            axes: vec![SampleAxis { var: 0, radius: crate::scalar::ratio(1, 2), points: 5 }],
            escape_radius: 2.0,
        };
        let profile = root_count_profile(&f, &region, 1e-8).unwrap();
        assert_eq!(profile.constant_count, Some(2));
        assert!(profile.samples.iter().all(|s| !s.escaped));
    }
}
