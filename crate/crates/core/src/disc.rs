//! Generalized discriminants of a univariate polynomial over jets, and the
//! distinct-root-count classifier built on their vanishing pattern.
//!
//! For monic `f` of degree `p` with roots `T_1..T_p`, the `j`-th generalized
//! discriminant is the sum over unordered `(j-1)`-subsets of removed roots
//! of the squared Vandermonde of the remaining ones. By Cauchy-Binet that
//! subset sum equals the leading principal `(p-j+1) x (p-j+1)` minor of the
//! Hankel matrix `(s_{k+l})` of Newton power sums, which is how it is
//! computed here: power sums in the coefficients, then a division-free
//! determinant. `Delta_1` is the classical discriminant and `Delta_p = p`.

use crate::error::{Error, Result};
use crate::jet::{Jet, JetOrder};
use crate::ring::{self, JetRing, Ring};
use crate::scalar::{self, Scalar};
use crate::uni::UniOverJets;

/// The sequence `Delta_1..Delta_p` of generalized discriminants.
#[derive(Debug, Clone, PartialEq)]
pub struct GDiscVector {
    entries: Vec<Jet>,
}

impl GDiscVector {
    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    /// 1-based access matching the classical numbering.
    pub fn get(&self, j: usize) -> Option<&Jet> {
        if j == 0 {
            None
        } else {
            self.entries.get(j - 1)
        }
    }

    pub fn entries(&self) -> &[Jet] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Jet> {
        self.entries
    }
}

/// Outcome of the distinct-root classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinctRootReport {
    /// The vanishing pattern is certified: exactly `count` distinct roots.
    Determined { count: usize },
    /// `Delta_first_ambiguous` is zero at the stored precision but its
    /// vanishing cannot be certified from a truncation.
    Inconclusive { first_ambiguous: usize },
}

/// Power sums `s_0..s_up_to` of the roots of a monic `f`, as jets in the
/// coefficient variables (classical Newton identities).
pub fn newton_power_sums(f: &UniOverJets, up_to: usize) -> Result<Vec<Jet>> {
    f.require_monic()?;
    let ring = JetRing { ctx: f.ctx().clone(), precision: f.precision() };
    Ok(ring::newton_power_sums(&ring, f.tail(), up_to))
}

/// All generalized discriminants `Delta_1..Delta_p` of a monic `f`.
pub fn generalized_discriminants(f: &UniOverJets) -> Result<GDiscVector> {
    f.require_monic()?;
    let p = f.degree();
    if p == 0 {
        return Ok(GDiscVector { entries: vec![] });
    }
    let ring = JetRing { ctx: f.ctx().clone(), precision: f.precision() };
    let s = ring::newton_power_sums(&ring, f.tail(), 2 * (p - 1));
    Ok(GDiscVector { entries: ring::hankel_discriminants(&ring, &s, p) })
}

/// Scans `Delta_1, Delta_2, ...` for the first provably nonzero entry.
/// Entries that vanish at precision count as zero only when certified
/// (their referent is a fully stored polynomial); otherwise the scan stops
/// with `Inconclusive`.
pub fn count_distinct_roots(f: &UniOverJets) -> Result<DistinctRootReport> {
    let discs = generalized_discriminants(f)?;
    let p = f.degree();
    if p == 0 {
        return Ok(DistinctRootReport::Determined { count: 0 });
    }
    for (idx0, d) in discs.entries().iter().enumerate() {
        let j = idx0 + 1;
        match d.order() {
            JetOrder::Finite(_) => {
                return Ok(DistinctRootReport::Determined { count: p - (j - 1) });
            }
            JetOrder::Infinite => {
                if !d.is_certified_zero() {
                    return Ok(DistinctRootReport::Inconclusive { first_ambiguous: j });
                }
            }
        }
    }
    // Unreachable for monic polynomials in characteristic zero: Delta_p = p.
    Err(Error::Invalid("all generalized discriminants vanished".into()))
}

/// Independent oracle for `Delta_1`: the classical discriminant
/// `(-1)^(p(p-1)/2) Res(f, f')` via the Sylvester determinant.
pub fn classical_discriminant_oracle(f: &UniOverJets) -> Result<Jet> {
    f.require_monic()?;
    let p = f.degree();
    let ring = JetRing { ctx: f.ctx().clone(), precision: f.precision() };
    if p == 0 {
        return Ok(ring.one());
    }
    if p == 1 {
        // Res(f, f') of a linear polynomial is 1 (f' = 1).
        return Ok(ring.one());
    }
    let fd = f.derivative()?;
    let n = p + (p - 1);
    let mut m: Vec<Vec<Jet>> = vec![vec![ring.zero(); n]; n];
    // p-1 shifted copies of f's coefficients, then p copies of f''s.
    for r in 0..p - 1 {
        for (k, c) in f.coeffs().iter().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..p {
        for (k, c) in fd.coeffs().iter().enumerate() {
            m[p - 1 + r][r + k] = c.clone();
        }
    }
    let res = ring::det(&ring, &m);
    let sign = if (p * (p - 1) / 2) % 2 == 1 { res.neg() } else { res };
    Ok(sign)
}

/// Direct evaluation of the defining subset sum on an explicit root
/// multiset: the `j`-th generalized discriminant is the sum over unordered
/// `(j-1)`-subsets of removed indices of the product of squared differences
/// of the remaining roots. Test oracle; exponential in the degree.
pub fn gdisc_from_roots_oracle(roots: &[Scalar], j: usize) -> Result<Scalar> {
    let p = roots.len();
    if j == 0 || j > p {
        return Err(Error::IndexOutOfRange { index: j, degree: p });
    }
    let remove = j - 1;
    let mut total = scalar::int(0);
    let mut chosen: Vec<usize> = Vec::with_capacity(remove);
    sum_over_subsets(roots, remove, 0, &mut chosen, &mut total);
    Ok(total)
}

fn sum_over_subsets(
    roots: &[Scalar],
    remove: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    total: &mut Scalar,
) {
    if chosen.len() == remove {
        let kept: Vec<usize> = (0..roots.len()).filter(|i| !chosen.contains(i)).collect();
        let mut prod = scalar::int(1);
        for a in 0..kept.len() {
            for b in a + 1..kept.len() {
                let d = &roots[kept[a]] - &roots[kept[b]];
                prod *= &d * &d;
            }
        }
        *total += prod;
        return;
    }
    for i in start..roots.len() {
        chosen.push(i);
        sum_over_subsets(roots, remove, i + 1, chosen, total);
        chosen.pop();
    }
}

/// Monic polynomial with the given rational roots (with multiplicity),
/// coefficients constant jets over `ctx`.
pub fn monic_from_roots(
    ctx: &crate::context::Ctx,
    precision: u32,
    var: usize,
    roots: &[Scalar],
) -> Result<UniOverJets> {
    let one = UniOverJets::one(var, ctx.clone(), precision);
    let mut acc = one;
    for r in roots {
        let lin = UniOverJets::new(
            var,
            vec![
                Jet::one(ctx.clone(), precision),
                Jet::constant(ctx.clone(), precision, -r.clone()),
            ],
        )?;
        acc = acc.mul(&lin)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::jet::term;
    use crate::scalar::int;

    /// T^2 + a1 T + a2 with a1, a2 symbolic (two-variable context).
    fn symbolic_quadratic() -> UniOverJets {
        let ctx = VarContext::new(vec!["a1".into(), "a2".into()], None).unwrap();
        let a1 = Jet::variable(ctx.clone(), 8, 0);
        let a2 = Jet::variable(ctx.clone(), 8, 1);
        UniOverJets::monic(0, ctx, 8, vec![a1, a2]).unwrap()
    }

    #[test]
    fn power_sums_by_hand() {
        // s_0 = 2, s_1 = -a1, s_2 = a1^2 - 2 a2 (Newton identities by hand)
        let f = symbolic_quadratic();
        let ctx = f.ctx().clone();
        let s = newton_power_sums(&f, 2).unwrap();
        assert_eq!(s[0], Jet::constant(ctx.clone(), 8, int(2)));
        assert_eq!(s[1], Jet::variable(ctx.clone(), 8, 0).neg());
        let expect =
            term(&ctx, 8, int(1), &[2, 0]).add(&term(&ctx, 8, int(-2), &[0, 1])).unwrap();
        assert_eq!(s[2], expect);
    }

    #[test]
    fn power_sums_all_roots_zero_and_single_root() {
        let ctx = VarContext::xs(1);
        // T^3: s_0 = 3, s_k = 0
        let f = monic_from_roots(&ctx, 6, 0, &[int(0), int(0), int(0)]).unwrap();
        let s = newton_power_sums(&f, 4).unwrap();
        assert_eq!(s[0].constant_term(), int(3));
        for k in 1..=4 {
            assert!(s[k].is_zero_at_precision());
        }
        // T - c: s_k = c^k
        let f = monic_from_roots(&ctx, 6, 0, &[int(5)]).unwrap();
        let s = newton_power_sums(&f, 3).unwrap();
        assert_eq!(s[1].constant_term(), int(5));
        assert_eq!(s[2].constant_term(), int(25));
        assert_eq!(s[3].constant_term(), int(125));
    }

    #[test]
    fn quadratic_discriminants() {
        let f = symbolic_quadratic();
        let ctx = f.ctx().clone();
        let d = generalized_discriminants(&f).unwrap();
        // Delta_1 = a1^2 - 4 a2 (Hankel det [[2, -a1], [-a1, a1^2 - 2a2]])
        let expect =
            term(&ctx, 8, int(1), &[2, 0]).add(&term(&ctx, 8, int(-4), &[0, 1])).unwrap();
        assert_eq!(d.get(1).unwrap(), &expect);
        assert_eq!(d.get(2).unwrap(), &Jet::constant(ctx, 8, int(2)));
    }

    #[test]
    fn cubic_with_double_root() {
        // f = (T-1)^2 (T+2) = T^3 - 3T + 2: Delta = [0, 18, 3]
        let ctx = VarContext::xs(1);
        let f = monic_from_roots(&ctx, 8, 0, &[int(1), int(1), int(-2)]).unwrap();
        let d = generalized_discriminants(&f).unwrap();
        assert!(d.get(1).unwrap().is_certified_zero());
        assert_eq!(d.get(2).unwrap().constant_term(), int(18));
        assert_eq!(d.get(3).unwrap().constant_term(), int(3));
        assert_eq!(
            count_distinct_roots(&f).unwrap(),
            DistinctRootReport::Determined { count: 2 }
        );
    }

    #[test]
    fn simple_roots_and_power_case() {
        let ctx = VarContext::xs(1);
        // T^3 - T: roots {0, 1, -1}: Delta_1 = 4
        let f = monic_from_roots(&ctx, 8, 0, &[int(0), int(1), int(-1)]).unwrap();
        let d = generalized_discriminants(&f).unwrap();
        assert_eq!(d.get(1).unwrap().constant_term(), int(4));
        assert_eq!(
            count_distinct_roots(&f).unwrap(),
            DistinctRootReport::Determined { count: 3 }
        );
        // T^p: all lower discriminants vanish, Delta_p = p
        for p in 1..=5usize {
            let f = monic_from_roots(&ctx, 8, 0, &vec![int(0); p]).unwrap();
            let d = generalized_discriminants(&f).unwrap();
            for j in 1..p {
                assert!(d.get(j).unwrap().is_certified_zero(), "p={p} j={j}");
            }
            assert_eq!(d.get(p).unwrap().constant_term(), int(p as i64));
            assert_eq!(
                count_distinct_roots(&f).unwrap(),
                DistinctRootReport::Determined { count: 1 }
            );
        }
    }

    #[test]
    fn sylvester_oracle() {
        let f = symbolic_quadratic();
        let ctx = f.ctx().clone();
        let d1 = classical_discriminant_oracle(&f).unwrap();
        let expect =
            term(&ctx, 8, int(1), &[2, 0]).add(&term(&ctx, 8, int(-4), &[0, 1])).unwrap();
        assert_eq!(d1, expect);

        let cx = VarContext::xs(1);
        let f = monic_from_roots(&cx, 8, 0, &[int(0), int(1), int(-1)]).unwrap();
        assert_eq!(classical_discriminant_oracle(&f).unwrap().constant_term(), int(4));
        let f = monic_from_roots(&cx, 8, 0, &[int(0), int(0)]).unwrap();
        assert!(classical_discriminant_oracle(&f).unwrap().is_zero_at_precision());
    }

    #[test]
    fn roots_oracle_values() {
        assert_eq!(gdisc_from_roots_oracle(&[int(1), int(1), int(-2)], 2).unwrap(), int(18));
        assert_eq!(gdisc_from_roots_oracle(&[int(0), int(1), int(-1)], 1).unwrap(), int(4));
        assert_eq!(gdisc_from_roots_oracle(&[int(7)], 1).unwrap(), int(1));
        assert!(gdisc_from_roots_oracle(&[int(1)], 2).is_err());
    }

    #[test]
    fn shift_invariance() {
        // Delta_j of f(T) equals Delta_j of f(T+c): squared differences are
        // shift invariant.
        let ctx = VarContext::xs(1);
        let roots = [int(1), int(1), int(-2), int(3)];
        let shifted: Vec<Scalar> = roots.iter().map(|r| r + int(5)).collect();
        let f = monic_from_roots(&ctx, 8, 0, &roots).unwrap();
        let g = monic_from_roots(&ctx, 8, 0, &shifted).unwrap();
        let df = generalized_discriminants(&f).unwrap();
        let dg = generalized_discriminants(&g).unwrap();
        assert_eq!(df, dg);
    }

    #[test]
    fn not_monic_rejected() {
        let ctx = VarContext::xs(1);
        let f = UniOverJets::new(
            0,
            vec![Jet::constant(ctx.clone(), 6, int(2)), Jet::zero(ctx, 6)],
        )
        .unwrap();
        assert_eq!(generalized_discriminants(&f).err(), Some(Error::NotMonic));
    }
}
