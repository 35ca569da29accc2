//! Polynomials in one distinguished context variable whose coefficients are
//! jets in the other variables.

use std::fmt;

use crate::context::{same_ctx, Ctx};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::MultiPoly;

/// `c_0 x_i^p + c_1 x_i^(p-1) + ... + c_p` with `c_0` the leading
/// coefficient and every `c_j` a jet not involving `x_i`.
///
/// Pseudopolynomials in a tower additionally keep their coefficients inside
/// the variable prefix below `x_i`; that stricter shape is checked by
/// [`UniOverJets::is_prefix_pseudo`], not by the constructor, because Hensel
/// lifting uses the dual orientation (distinguished first variable,
/// coefficients in the later ones).
#[derive(Debug, Clone, PartialEq)]
pub struct UniOverJets {
    var: usize,
    coeffs: Vec<Jet>,
}

impl UniOverJets {
    /// `coeffs` ordered leading-first; must be nonempty, share one context
    /// and precision, and be free of the distinguished variable.
    pub fn new(var: usize, coeffs: Vec<Jet>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Invalid("coefficient list is empty".into()));
        };
        if var >= first.ctx().arity() {
            return Err(Error::Invalid("distinguished variable out of range".into()));
        }
        let (ctx, n) = (first.ctx().clone(), first.precision());
        for c in &coeffs {
            if !same_ctx(c.ctx(), &ctx) {
                return Err(Error::ContextMismatch);
            }
            if c.precision() != n {
                return Err(Error::Invalid("coefficients have mixed precisions".into()));
            }
            if !c.body().is_free_of(var) {
                return Err(Error::Invalid(format!(
                    "coefficient involves the distinguished variable {}",
                    ctx.var_name(var)
                )));
            }
        }
        Ok(UniOverJets { var, coeffs })
    }

    /// Monic polynomial from its non-leading coefficients `a_1..a_p`.
    pub fn monic(var: usize, ctx: Ctx, precision: u32, tail: Vec<Jet>) -> Result<Self> {
        let mut coeffs = vec![Jet::one(ctx, precision)];
        coeffs.extend(tail);
        Self::new(var, coeffs)
    }

    /// The constant polynomial 1 (degree zero), living over `ctx`.
    pub fn one(var: usize, ctx: Ctx, precision: u32) -> Self {
        UniOverJets { var, coeffs: vec![Jet::one(ctx, precision)] }
    }

    /// Reads a jet as a polynomial in `var`. Fails if nothing remains (zero
    /// jet has no leading coefficient).
    pub fn from_jet(f: &Jet, var: usize) -> Result<Self> {
        if f.body().is_zero() {
            return Err(Error::AmbiguousZero);
        }
        let d = f.body().degree_in(var);
        let n = f.precision();
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        for k in (0..=d).rev() {
            let body = f.body().coeff_of(var, k);
            let mut c = Jet::from_poly(f.ctx().clone(), n, body)?;
            if f.deg_bound().is_none() {
                c = c.without_bound();
            }
            coeffs.push(c);
        }
        Ok(UniOverJets { var, coeffs })
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Leading-first coefficient slice `c_0..c_p`.
    pub fn coeffs(&self) -> &[Jet] {
        &self.coeffs
    }

    pub fn ctx(&self) -> &Ctx {
        self.coeffs[0].ctx()
    }

    pub fn precision(&self) -> u32 {
        self.coeffs[0].precision()
    }

    pub fn is_monic(&self) -> bool {
        let lead = &self.coeffs[0];
        lead.body().is_constant() && crate::scalar::is_one(&lead.constant_term())
    }

    pub fn require_monic(&self) -> Result<()> {
        if self.is_monic() {
            Ok(())
        } else {
            Err(Error::NotMonic)
        }
    }

    /// Non-leading coefficients `a_1..a_p` of a monic polynomial.
    pub fn tail(&self) -> &[Jet] {
        &self.coeffs[1..]
    }

    /// True when every coefficient lives in the prefix `x_1..x_(i-1)` below
    /// the distinguished variable.
    pub fn is_prefix_pseudo(&self) -> bool {
        self.coeffs.iter().all(|c| c.body().uses_only_first(self.var))
    }

    /// True when all non-leading coefficients vanish at the origin.
    pub fn tail_vanishes_at_origin(&self) -> bool {
        self.tail().iter().all(|c| num::traits::Zero::is_zero(&c.constant_term()))
    }

    /// The polynomial flattened back into a jet at its coefficient precision.
    /// Terms whose `x_i`-power alone reaches the precision disappear, which
    /// is the honest truncation of the flattened series.
    pub fn to_jet(&self) -> Jet {
        let ctx = self.ctx().clone();
        let n = self.precision();
        let p = self.degree();
        let mut acc = MultiPoly::zero(ctx.arity());
        let mut bound: Option<u32> = Some(0);
        for (k, c) in self.coeffs.iter().enumerate() {
            let pow = (p - k) as u32;
            acc = acc.add(&c.body().mul_var_power(self.var, pow));
            bound = match (bound, c.deg_bound()) {
                (Some(b), Some(cb)) => Some(b.max(cb + pow)),
                _ => None,
            };
        }
        Jet::from_poly(ctx, n, acc).expect("same context").with_bound(bound)
    }

    /// Product of two polynomials in the same distinguished variable.
    pub fn mul(&self, other: &UniOverJets) -> Result<UniOverJets> {
        if self.var != other.var {
            return Err(Error::Invalid("distinguished variables differ".into()));
        }
        if !same_ctx(self.ctx(), other.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let n = self.precision().min(other.precision());
        let ctx = self.ctx().clone();
        let pa = self.degree();
        let pb = other.degree();
        let mut out: Vec<Jet> = (0..=pa + pb).map(|_| Jet::zero(ctx.clone(), n)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.truncated(n).mul(&b.truncated(n))?;
                out[i + j] = out[i + j].add(&t)?;
            }
        }
        UniOverJets::new(self.var, out)
    }

    /// Derivative in the distinguished variable (degree drops by one).
    pub fn derivative(&self) -> Result<UniOverJets> {
        let p = self.degree();
        if p == 0 {
            return Err(Error::Invalid("derivative of a constant polynomial".into()));
        }
        let coeffs: Vec<Jet> = self
            .coeffs
            .iter()
            .take(p)
            .enumerate()
            .map(|(k, c)| c.mul_scalar(&crate::scalar::int((p - k) as i64)))
            .collect();
        UniOverJets::new(self.var, coeffs)
    }

    /// Evaluates at a jet substituted for the distinguished variable
    /// (Horner form). The argument must not involve `x_i` itself.
    pub fn eval_at_jet(&self, g: &Jet) -> Result<Jet> {
        if !same_ctx(self.ctx(), g.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let n = self.precision().min(g.precision());
        let mut acc = self.coeffs[0].truncated(n);
        for c in &self.coeffs[1..] {
            acc = acc.mul(&g.truncated(n))?.add(&c.truncated(n))?;
        }
        Ok(acc)
    }

    /// Re-truncates every coefficient.
    pub fn truncated(&self, precision: u32) -> UniOverJets {
        UniOverJets {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.truncated(precision)).collect(),
        }
    }
}

impl fmt::Display for UniOverJets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.ctx().var_name(self.var);
        let p = self.degree();
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_at_precision() {
                continue;
            }
            let pow = p - k;
            let cs = c.render();
            let head = if cs == "1" && pow > 0 { String::new() } else { format!("({cs})") };
            match pow {
                0 => parts.push(cs),
                1 => parts.push(format!("{head}{name}")),
                _ => parts.push(format!("{head}{name}^{pow}")),
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::jet::term;
    use crate::scalar::int;

    #[test]
    fn from_jet_and_back() {
        let ctx = VarContext::xs(2);
        // x2^2 - x1^3 as a polynomial in x2
        let f = term(&ctx, 8, int(1), &[0, 2]).add(&term(&ctx, 8, int(-1), &[3, 0])).unwrap();
        let u = UniOverJets::from_jet(&f, 1).unwrap();
        assert_eq!(u.degree(), 2);
        assert!(u.is_monic());
        assert!(u.is_prefix_pseudo());
        assert!(u.tail_vanishes_at_origin());
        assert_eq!(u.to_jet(), f);
    }

    #[test]
    fn eval_and_derivative() {
        let ctx = VarContext::xs(2);
        // f = x1^2 - x2 as polynomial in x1 (Hensel orientation)
        let f = term(&ctx, 8, int(1), &[2, 0]).add(&term(&ctx, 8, int(-1), &[0, 1])).unwrap();
        let u = UniOverJets::from_jet(&f, 0).unwrap();
        assert_eq!(u.degree(), 2);
        let g = term(&ctx, 8, int(1), &[0, 1]); // x2
        let v = u.eval_at_jet(&g).unwrap();
        // x2^2 - x2
        let expect =
            term(&ctx, 8, int(1), &[0, 2]).add(&term(&ctx, 8, int(-1), &[0, 1])).unwrap();
        assert_eq!(v, expect);
        let d = u.derivative().unwrap();
        assert_eq!(d.degree(), 1);
        assert_eq!(d.coeffs()[0].constant_term(), int(2));
    }

    #[test]
    fn rejects_mixed_precision_and_var_use() {
        let ctx = VarContext::xs(2);
        let a = Jet::one(ctx.clone(), 4);
        let b = Jet::one(ctx.clone(), 5);
        assert!(UniOverJets::new(1, vec![a.clone(), b]).is_err());
        let involves = term(&ctx, 4, int(1), &[0, 1]);
        assert!(UniOverJets::new(1, vec![a, involves]).is_err());
    }
}
