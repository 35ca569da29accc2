//! Regularity analysis, generic linear coordinate changes, Weierstrass
//! preparation, and extraction of powers of the first variable.

use num::traits::Zero;

use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linear::LinearChange;
use crate::poly::MultiPoly;
use crate::scalar::{self, Scalar};
use crate::uni::UniOverJets;

/// Outcome of the regularity probe along a distinguished variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    /// The restriction to the axis has this order.
    Order(u32),
    /// The restriction vanishes at precision although the jet does not.
    NotRegular,
    /// The jet itself vanishes at precision.
    AmbiguousZero,
}

/// Order of `F(0, ..., 0, x_var)` as a one-variable jet.
pub fn regularity_order(f: &Jet, var: usize) -> Regularity {
    if f.is_zero_at_precision() {
        return Regularity::AmbiguousZero;
    }
    let axis = f.body().restrict_to_axis(var);
    match axis.order() {
        Some(d) => Regularity::Order(d),
        None => Regularity::NotRegular,
    }
}

/// Configuration for the deterministic genericity search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Largest shear-coefficient magnitude tried deterministically.
    pub height_bound: u32,
    /// Optional seeded random fallback, for stress testing only.
    pub random_seed: Option<u64>,
    /// How many random candidates the fallback draws.
    pub random_tries: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { height_bound: 3, random_seed: None, random_tries: 64 }
    }
}

/// Candidate shear vectors of sup-norm exactly `h`, in a fixed order:
/// coordinates run through 0, 1, -1, 2, -2, ... and vectors are enumerated
/// lexicographically in that per-coordinate order.
fn shear_candidates(len: usize, h: i64) -> Vec<Vec<i64>> {
    fn values(h: i64) -> Vec<i64> {
        let mut v = vec![0];
        for k in 1..=h {
            v.push(k);
            v.push(-k);
        }
        v
    }
    let vals = values(h);
    let mut out = Vec::new();
    let mut current = vec![0i64; len];
    fn rec(vals: &[i64], current: &mut Vec<i64>, pos: usize, h: i64, out: &mut Vec<Vec<i64>>) {
        if pos == current.len() {
            if current.iter().map(|c| c.abs()).max().unwrap_or(0) == h {
                out.push(current.clone());
            }
            return;
        }
        for &v in vals {
            current[pos] = v;
            rec(vals, current, pos + 1, h, out);
        }
    }
    rec(&vals, &mut current, 0, h, &mut out);
    out
}

/// Finds an invertible change on `block` (which must contain `var`) making
/// `F` regular in `var` of the least order the block allows: the order of
/// `F` with the non-block variables set to zero.
///
/// Candidates are shears `x_k <- x_k + c_k x_var`, enumerated by increasing
/// height so reruns are reproducible; a candidate is accepted when the
/// lowest homogeneous part of the restricted jet does not vanish on the
/// direction the shear gives to `x_var`.
pub fn generic_linear_change(
    f: &Jet,
    var: usize,
    block: std::ops::Range<usize>,
    cfg: &SearchConfig,
) -> Result<(LinearChange, Jet)> {
    if f.is_zero_at_precision() {
        return Err(Error::AmbiguousZero);
    }
    let lc = find_shear(f.body(), var, block, cfg)?;
    let g = lc.apply_jet(f);
    Ok((lc, g))
}

/// The search core, on a plain polynomial (a jet body or an exact referent).
pub(crate) fn find_shear(
    body: &MultiPoly,
    var: usize,
    block: std::ops::Range<usize>,
    cfg: &SearchConfig,
) -> Result<LinearChange> {
    assert!(block.contains(&var), "block must contain the distinguished variable");
    let arity = body.arity();
    let non_block: Vec<usize> = (0..arity).filter(|v| !block.contains(v)).collect();
    let restricted = body.set_vars_to_zero(&non_block);
    let Some(target_order) = restricted.order() else {
        // No block change can reach the axis: everything in sight carries a
        // non-block variable.
        return Err(Error::SearchExhausted { height_bound: cfg.height_bound });
    };
    let lowest = restricted.homogeneous_part(target_order);
    let size = block.len();
    let tpos = var - block.start;

    let accepts = |coeffs: &[i64]| -> bool {
        let mut point = vec![Scalar::zero(); arity];
        for (k, &c) in coeffs.iter().enumerate() {
            point[block.start + k] = scalar::int(c);
        }
        point[var] = scalar::int(1);
        !lowest.eval(&point).is_zero()
    };

    let build = |coeffs: &[i64]| -> LinearChange {
        let sc: Vec<Scalar> = coeffs.iter().map(|&c| scalar::int(c)).collect();
        LinearChange::shear(block.start, size, var, &sc)
    };

    // Height 0 is the identity: already regular of minimal order.
    let ident = vec![0i64; size];
    if accepts(&ident) {
        return Ok(LinearChange::identity(block.start, size));
    }
    for h in 1..=cfg.height_bound as i64 {
        for cand in shear_candidates(size, h) {
            if cand[tpos] != 0 {
                continue;
            }
            if accepts(&cand) {
                return Ok(build(&cand));
            }
        }
    }
    if let Some(seed) = cfg.random_seed {
        // Linear-congruential fallback; deterministic for a fixed seed.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 19) as i64 - 9
        };
        for _ in 0..cfg.random_tries {
            let mut cand: Vec<i64> = (0..size).map(|_| next()).collect();
            cand[tpos] = 0;
            if accepts(&cand) {
                return Ok(build(&cand));
            }
        }
    }
    Err(Error::SearchExhausted { height_bound: cfg.height_bound })
}

/// Result of Weierstrass preparation: `unit * weierstrass = F` at the
/// declared output precision; the Weierstrass polynomial is monic with
/// coefficients vanishing at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparationResult {
    pub unit: Jet,
    pub weierstrass: UniOverJets,
    pub precision: u32,
}

/// Weierstrass preparation of a jet regular in `var`.
///
/// For an exact input the solver runs at the jet's full precision and loses
/// nothing. For a truncated input the declared precision drops to
/// `min(N - p, N - d)` where `p` is the regularity order and `d` the stored
/// degree in `var`: beyond that window the division would consume
/// coefficients the truncation does not determine.
pub fn weierstrass_prepare(f: &Jet, var: usize) -> Result<PreparationResult> {
    let p = match regularity_order(f, var) {
        Regularity::Order(p) => p,
        Regularity::NotRegular => return Err(Error::NotRegular),
        Regularity::AmbiguousZero => return Err(Error::AmbiguousZero),
    };
    let n = f.precision();
    let d = f.body().degree_in(var);
    if p == 0 {
        // Unit germ: W = 1, u = F.
        return Ok(PreparationResult {
            unit: f.clone(),
            weierstrass: UniOverJets::one(var, f.ctx().clone(), n),
            precision: n,
        });
    }
    let (target, exact_input) = if f.is_exact() {
        (n, true)
    } else {
        let t = n.saturating_sub(p).min(n.saturating_sub(d));
        if t == 0 {
            return Err(Error::InconclusivePrecision {
                detail: format!(
                    "preparation of order {p}, stored degree {d}, at precision {n} certifies nothing"
                ),
            });
        }
        (t, false)
    };
    let coeffs_asc: Vec<MultiPoly> = f.body().coeff_view(var);
    let mut res = prepare_from_coeffs(f.ctx(), var, &coeffs_asc, p, target)?;
    if exact_input && d == p {
        exactify_degree_equals_order(f.ctx(), var, &coeffs_asc, p, &mut res);
    }
    Ok(res)
}

/// When the stored degree equals the order and the coefficients are exact,
/// the unit is exactly the leading coefficient and the monic coefficients
/// are exact whenever the leading coefficient divides them in the
/// polynomial ring. Upgrades the result in place when that works out.
pub(crate) fn exactify_degree_equals_order(
    ctx: &Ctx,
    var: usize,
    coeffs_asc: &[MultiPoly],
    p: u32,
    res: &mut PreparationResult,
) {
    let lead = &coeffs_asc[p as usize];
    let mut tail_exact: Vec<MultiPoly> = Vec::new();
    for k in (0..p).rev() {
        match coeffs_asc[k as usize].divide_exact_by_unit(lead) {
            Some(q) => tail_exact.push(q),
            None => return,
        }
    }
    let n = res.precision;
    let unit = Jet::from_poly(ctx.clone(), n, lead.clone()).expect("same context");
    let tail: Vec<Jet> = tail_exact
        .into_iter()
        .map(|q| Jet::from_poly(ctx.clone(), n, q).expect("same context"))
        .collect();
    if let Ok(w) = UniOverJets::monic(var, ctx.clone(), n, tail) {
        res.unit = unit;
        res.weierstrass = w;
    }
}

/// Preparation from exact ascending coefficients at a caller-chosen working
/// precision; used by the tower when re-deriving jets from exact level data.
pub fn prepare_from_exact_coeffs(
    ctx: &Ctx,
    var: usize,
    coeffs_asc: &[MultiPoly],
    precision: u32,
) -> Result<PreparationResult> {
    // regularity from the constant terms of the coefficients
    let mut p = None;
    for (k, c) in coeffs_asc.iter().enumerate() {
        if !c.constant_term().is_zero() {
            p = Some(k as u32);
            break;
        }
    }
    let Some(p) = p else {
        return Err(Error::NotRegular);
    };
    if p == 0 {
        let mut body = MultiPoly::zero(ctx.arity());
        for (k, c) in coeffs_asc.iter().enumerate() {
            body = body.add(&c.mul_var_power(var, k as u32));
        }
        return Ok(PreparationResult {
            unit: Jet::from_poly(ctx.clone(), precision, body)?,
            weierstrass: UniOverJets::one(var, ctx.clone(), precision),
            precision,
        });
    }
    prepare_from_coeffs(ctx, var, coeffs_asc, p, precision)
}

/// The order-by-order solver for `u * W = F`.
///
/// `F = sum c_k x_var^k` (ascending view, coefficients free of `x_var`),
/// regular of order `p`; `W = x_var^p + sum a_j x_var^(p-j)` and
/// `u = sum u_m x_var^m` with `m <= d - p` (monic division makes the unit a
/// polynomial in `x_var` over the coefficient ring). Grading by total degree
/// of the small variables: stage 0 reads the unit's constants off the upper
/// coefficients; each later stage solves the `p` low equations for the new
/// parts of `a` (dividing only by the scalar `u_0(0) != 0`) and then updates
/// the unit slots.
fn prepare_from_coeffs(
    ctx: &Ctx,
    var: usize,
    coeffs_asc: &[MultiPoly],
    p: u32,
    target: u32,
) -> Result<PreparationResult> {
    let d = coeffs_asc.len() as u32 - 1;
    debug_assert!(p >= 1 && d >= p);
    let pu = p as usize;
    let slots = (d - p) as usize + 1;
    let work = target;

    let c: Vec<Jet> = coeffs_asc
        .iter()
        .map(|cp| Jet::from_poly(ctx.clone(), work, cp.clone()).map(Jet::without_bound))
        .collect::<Result<_>>()?;
    for (k, ck) in c.iter().enumerate() {
        if (k as u32) < p && !ck.constant_term().is_zero() {
            return Err(Error::NotRegular);
        }
    }
    let u00 = c[pu].constant_term();
    if u00.is_zero() {
        return Err(Error::NotRegular);
    }

    let zero = || Jet::zero(ctx.clone(), work);
    let part = |j: &Jet, nu: u32| -> Jet {
        Jet::from_poly(ctx.clone(), work, j.body().homogeneous_part(nu))
            .expect("same context")
            .without_bound()
    };

    // a[j-1] accumulates a_j; u[m] accumulates the unit slot of x_var^m.
    let mut a: Vec<Jet> = vec![zero(); pu];
    let mut u: Vec<Jet> = (0..slots).map(|m| part(&c[m + pu], 0)).collect();

    let get_u = |u: &[Jet], m: i64| -> Jet {
        if m < 0 || m as usize >= slots {
            zero()
        } else {
            u[m as usize].clone()
        }
    };

    for nu in 1..work {
        // Low equations, k ascending, solve a_{p-k}.
        for k in 0..pu {
            // residual = part_nu(c_k - sum_{j} u_{k-p+j} a_j), computed with
            // the current state; the only missing piece is u_0(0) * a_{p-k}^{(nu)}.
            let mut acc = c[k].clone();
            for j in 1..=pu {
                let m = k as i64 - pu as i64 + j as i64;
                let prod = get_u(&u, m).mul(&a[j - 1])?;
                acc = acc.sub(&prod)?;
            }
            let defect = part(&acc, nu);
            if defect.is_zero_at_precision() {
                continue;
            }
            let inc = defect.mul_scalar(&(Scalar::from(scalar::int(1)) / &u00));
            a[pu - 1 - k] = a[pu - 1 - k].add(&inc)?;
        }
        // Unit slots: u_m = c_{m+p} - sum_j u_{m+j} a_j, new stage part only.
        for m in 0..slots {
            let mut rhs = c[m + pu].clone();
            for j in 1..=pu {
                let prod = get_u(&u, (m + j) as i64).mul(&a[j - 1])?;
                rhs = rhs.sub(&prod)?;
            }
            let piece = part(&rhs, nu);
            if !piece.is_zero_at_precision() {
                u[m] = u[m].add(&piece)?;
            }
        }
    }

    // Assemble outputs at the declared precision.
    let mut unit_body = MultiPoly::zero(ctx.arity());
    for (m, um) in u.iter().enumerate() {
        unit_body = unit_body.add(&um.body().mul_var_power(var, m as u32));
    }
    let unit = Jet::from_poly(ctx.clone(), work, unit_body)?.without_bound();
    let tail: Vec<Jet> = a.into_iter().collect();
    let weierstrass = UniOverJets::monic(var, ctx.clone(), work, tail)?;
    Ok(PreparationResult { unit, weierstrass, precision: work })
}

/// Maximal power of the first variable dividing `F`, and the quotient.
pub fn extract_x1_power(f: &Jet) -> Result<(u32, Jet)> {
    f.extract_var_power(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::jet::term;
    use crate::scalar::int;

    #[test]
    fn regularity_cases() {
        let ctx = VarContext::xs(2);
        // x2^2 + x1 x2 + x1^3 is x2-regular of order 2
        let f = term(&ctx, 8, int(1), &[0, 2])
            .add(&term(&ctx, 8, int(1), &[1, 1]))
            .unwrap()
            .add(&term(&ctx, 8, int(1), &[3, 0]))
            .unwrap();
        assert_eq!(regularity_order(&f, 1), Regularity::Order(2));
        let g = term(&ctx, 8, int(1), &[1, 1]);
        assert_eq!(regularity_order(&g, 1), Regularity::NotRegular);
        assert_eq!(regularity_order(&Jet::zero(ctx, 8), 1), Regularity::AmbiguousZero);
    }

    #[test]
    fn generic_change_shear() {
        let ctx = VarContext::xs(3);
        let f = term(&ctx, 6, int(1), &[0, 1, 1]); // x2 x3
        let (lc, g) = generic_linear_change(&f, 2, 1..3, &SearchConfig::default()).unwrap();
        // first accepted candidate is the +1 shear on x2
        assert_eq!(lc.matrix()[0][1], int(1));
        let expect =
            term(&ctx, 6, int(1), &[0, 0, 2]).add(&term(&ctx, 6, int(1), &[0, 1, 1])).unwrap();
        assert_eq!(g, expect);
        assert_eq!(regularity_order(&g, 2), Regularity::Order(2));

        // already regular: identity
        let f = term(&ctx, 6, int(1), &[0, 0, 2]).add(&term(&ctx, 6, int(1), &[2, 0, 0])).unwrap();
        let (lc, g) = generic_linear_change(&f, 2, 1..3, &SearchConfig::default()).unwrap();
        assert!(lc.is_identity());
        assert_eq!(g, f);

        assert_eq!(
            generic_linear_change(&Jet::zero(ctx, 6), 2, 1..3, &SearchConfig::default()).err(),
            Some(Error::AmbiguousZero)
        );
    }

    #[test]
    fn prepare_already_weierstrass() {
        let ctx = VarContext::xs(2);
        let f = term(&ctx, 8, int(1), &[0, 2])
            .add(&term(&ctx, 8, int(1), &[1, 1]))
            .unwrap()
            .add(&term(&ctx, 8, int(1), &[3, 0]))
            .unwrap();
        let res = weierstrass_prepare(&f, 1).unwrap();
        assert_eq!(res.precision, 8);
        assert_eq!(res.unit, Jet::one(ctx, 8));
        assert_eq!(res.weierstrass.to_jet(), f);
    }

    #[test]
    fn prepare_unit_times_weierstrass() {
        let ctx = VarContext::xs(2);
        // F = (1 + x1)(x2^2 - x1)
        let unit = Jet::one(ctx.clone(), 8).add(&Jet::variable(ctx.clone(), 8, 0)).unwrap();
        let w = term(&ctx, 8, int(1), &[0, 2]).add(&term(&ctx, 8, int(-1), &[1, 0])).unwrap();
        let f = unit.mul(&w).unwrap();
        let res = weierstrass_prepare(&f, 1).unwrap();
        assert_eq!(res.unit, unit);
        assert_eq!(res.weierstrass.to_jet(), w);
        // identity holds at the declared precision
        let back = res.unit.mul(&res.weierstrass.to_jet()).unwrap();
        assert_eq!(back.truncated(res.precision), f.truncated(res.precision));
    }

    #[test]
    fn prepare_not_regular() {
        let ctx = VarContext::xs(2);
        let f = term(&ctx, 8, int(1), &[1, 1]);
        assert_eq!(weierstrass_prepare(&f, 1).err(), Some(Error::NotRegular));
    }

    #[test]
    fn prepare_degree_above_order() {
        let ctx = VarContext::xs(2);
        // F = (x1 - x2)(x1 - x2 - x2^2) as a polynomial in x2: degree 3, order 2 at x1 = 0.
        let x1 = Jet::variable(ctx.clone(), 10, 0);
        let x2 = Jet::variable(ctx.clone(), 10, 1);
        let g1 = x1.sub(&x2).unwrap();
        let g2 = x1.sub(&x2).unwrap().sub(&x2.mul(&x2).unwrap()).unwrap();
        let f = g1.mul(&g2).unwrap();
        let res = weierstrass_prepare(&f, 1).unwrap();
        assert_eq!(res.weierstrass.degree(), 2);
        assert!(res.weierstrass.tail_vanishes_at_origin());
        let back = res.unit.mul(&res.weierstrass.to_jet()).unwrap();
        assert_eq!(back.truncated(res.precision), f.truncated(res.precision));
        // The two Weierstrass roots are x2 = x1 and the series solving
        // x2 + x2^2 = x1, so a_2 = product of roots (up to sign) has order 2.
        let a2 = &res.weierstrass.coeffs()[2];
        assert_eq!(a2.order(), crate::jet::JetOrder::Finite(2));
    }

    #[test]
    fn extraction() {
        let ctx = VarContext::xs(2);
        let f = term(&ctx, 8, int(1), &[2, 1]).add(&term(&ctx, 8, int(1), &[3, 0])).unwrap();
        let (q, g) = extract_x1_power(&f).unwrap();
        assert_eq!(q, 2);
        assert_eq!(g.body().min_exponent(0), 0);
        assert_eq!(extract_x1_power(&Jet::zero(ctx, 8)).err(), Some(Error::AmbiguousZero));
    }
}
