//! Hensel/Newton lifting of graph branches: refining series solutions
//! `x_1 = G(x_2, ..., x_n)` of `F(x_1, ...) = 0` along simple roots.

use crate::error::{Error, Result};
use crate::jet::{Jet, JetOrder};
use crate::uni::UniOverJets;

/// Lifted branches, one per seed, at the lift precision.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSolution {
    pub branches: Vec<Jet>,
    pub precision: u32,
}

/// Newton iteration `G <- G - F(G)/F'(G)` carried to `target_n`.
///
/// `f` is a polynomial in the first variable with coefficients in the
/// remaining ones. Each seed must satisfy `F(G)(0) = 0` (the residual is in
/// the maximal ideal) and `F'(G)` must be a unit, i.e. the branch is
/// simple; the vanishing order of the residual then doubles every step.
pub fn hensel_lift_branches(
    f: &UniOverJets,
    seeds: &[Jet],
    target_n: u32,
) -> Result<BranchSolution> {
    if target_n == 0 {
        return Err(Error::Invalid("target precision must be >= 1".into()));
    }
    if f.degree() == 0 {
        return Err(Error::Invalid("cannot solve a constant polynomial".into()));
    }
    let var = f.var();
    // Lift the coefficients to the target precision; beyond their stored
    // precision this requires exact coefficients.
    let f_work = if f.precision() >= target_n {
        f.truncated(target_n)
    } else if f.coeffs().iter().all(|c| c.is_exact()) {
        let coeffs: Vec<Jet> = f
            .coeffs()
            .iter()
            .map(|c| {
                Jet::from_poly(c.ctx().clone(), target_n, c.body().clone())
                    .expect("same context")
            })
            .collect();
        UniOverJets::new(var, coeffs)?
    } else {
        return Err(Error::InconclusivePrecision {
            detail: format!(
                "lift target {target_n} exceeds the polynomial's precision {}",
                f.precision()
            ),
        });
    };
    let fd = f_work.derivative()?;

    let mut branches = Vec::with_capacity(seeds.len());
    for seed in seeds {
        if !seed.body().is_free_of(var) {
            return Err(Error::Invalid("seed involves the solved variable".into()));
        }
        let mut g = Jet::from_poly(seed.ctx().clone(), target_n, seed.body().clone())?
            .without_bound();
        let d0 = fd.eval_at_jet(&g)?;
        if !d0.is_unit() {
            return Err(Error::DerivativeNotUnit);
        }
        let mut residual = f_work.eval_at_jet(&g)?;
        if let JetOrder::Finite(0) = residual.order() {
            return Err(Error::SeedNotApproximate);
        }
        let mut steps = 0;
        while !residual.is_zero_at_precision() {
            if steps > 64 {
                return Err(Error::Invalid(
                    "Newton iteration failed to reach the target precision".into(),
                ));
            }
            let deriv = fd.eval_at_jet(&g)?;
            let correction = residual.mul(&deriv.invert_unit()?)?;
            g = g.sub(&correction)?;
            residual = f_work.eval_at_jet(&g)?;
            steps += 1;
        }
        branches.push(g);
    }
    Ok(BranchSolution { branches, precision: target_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::jet::term;
    use crate::scalar::{int, ratio, Scalar};

    #[test]
    fn exact_linear_branches() {
        let ctx = VarContext::xs(2);
        // F = (x1 - x2)(x1 - 2 x2)
        let x1 = Jet::variable(ctx.clone(), 10, 0);
        let x2 = Jet::variable(ctx.clone(), 10, 1);
        let fjet = x1.sub(&x2).unwrap().mul(&x1.sub(&x2.mul_scalar(&int(2))).unwrap()).unwrap();
        let f = UniOverJets::from_jet(&fjet, 0).unwrap();
        let seeds = [x2.clone(), x2.mul_scalar(&int(2))];
        let sol = hensel_lift_branches(&f, &seeds, 10).unwrap();
        assert_eq!(sol.branches[0], Jet::variable(ctx.clone(), 10, 1));
        assert_eq!(sol.branches[1], Jet::variable(ctx, 10, 1).mul_scalar(&int(2)));
    }

    #[test]
    fn square_root_branch_matches_binomial_series() {
        let ctx = VarContext::xs(2);
        let n = 10u32;
        // F = x1^2 - x2^2 - x2^3; branch x1 = x2 sqrt(1 + x2)
        let f2 = term(&ctx, n, int(1), &[2, 0]);
        let fjet = f2
            .sub(&term(&ctx, n, int(1), &[0, 2]))
            .unwrap()
            .sub(&term(&ctx, n, int(1), &[0, 3]))
            .unwrap();
        let f = UniOverJets::from_jet(&fjet, 0).unwrap();
        let seed = Jet::variable(ctx.clone(), n, 1);
        let sol = hensel_lift_branches(&f, &[seed], n).unwrap();
        // oracle: x2 * sum_k binom(1/2, k) x2^k
        let mut expect = Jet::zero(ctx.clone(), n);
        let mut coef: Scalar = int(1);
        for k in 0..n {
            if k > 0 {
                // binom(1/2, k) = binom(1/2, k-1) * (1/2 - (k-1)) / k
                let num = ratio(1, 2) - int(k as i64 - 1);
                coef = coef * num / int(k as i64);
            }
            if k + 1 < n {
                expect = expect.add(&term(&ctx, n, coef.clone(), &[0, k + 1])).unwrap();
            }
        }
        assert_eq!(sol.branches[0], expect);
        // spot values: x2 + x2^2/2 - x2^3/8 + x2^4/16 ...
        assert_eq!(expect.body().coeff_of(1, 2).constant_term(), ratio(1, 2));
        assert_eq!(expect.body().coeff_of(1, 3).constant_term(), ratio(-1, 8));
    }

    #[test]
    fn double_root_rejected() {
        let ctx = VarContext::xs(2);
        let x1 = Jet::variable(ctx.clone(), 8, 0);
        let x2 = Jet::variable(ctx.clone(), 8, 1);
        let fjet = x1.sub(&x2).unwrap().pow(2);
        let f = UniOverJets::from_jet(&fjet, 0).unwrap();
        assert_eq!(hensel_lift_branches(&f, &[x2], 8).err(), Some(Error::DerivativeNotUnit));
    }

    #[test]
    fn bad_seed_rejected() {
        let ctx = VarContext::xs(2);
        let x1 = Jet::variable(ctx.clone(), 8, 0);
        let x2 = Jet::variable(ctx.clone(), 8, 1);
        // F = x1 - 1: residual at seed x2 has a nonzero constant term.
        let fjet = x1.sub(&Jet::one(ctx.clone(), 8)).unwrap();
        let f = UniOverJets::from_jet(&fjet, 0).unwrap();
        assert_eq!(hensel_lift_branches(&f, &[x2], 8).err(), Some(Error::SeedNotApproximate));
    }

    #[test]
    fn relift_truncation_coherent() {
        let ctx = VarContext::xs(2);
        let n = 9u32;
        let fjet = term(&ctx, n + 3, int(1), &[2, 0])
            .sub(&term(&ctx, n + 3, int(1), &[0, 2]))
            .unwrap()
            .sub(&term(&ctx, n + 3, int(1), &[0, 3]))
            .unwrap();
        let f = UniOverJets::from_jet(&fjet, 0).unwrap();
        let seed = Jet::variable(ctx.clone(), n + 3, 1);
        let a = hensel_lift_branches(&f, &[seed.clone()], n).unwrap();
        let b = hensel_lift_branches(&f, &[seed], n + 3).unwrap();
        assert_eq!(b.branches[0].truncated(n), a.branches[0]);
    }
}
