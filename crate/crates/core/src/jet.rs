//! Jets: power series truncated modulo all monomials of total degree >= N.
//!
//! A jet stores the truncation of some underlying series (the referent).
//! When the referent is known to be a polynomial of total degree <= d, the
//! jet carries `deg_bound = Some(d)`; if moreover `d < N` the stored body
//! *is* the referent and identities like "this jet is zero" become provable
//! rather than merely true-at-precision. Truncation alone can certify
//! non-vanishing, never vanishing.

use std::fmt;

use num::traits::{One, Zero};

use crate::context::{same_ctx, Ctx};
use crate::error::{Error, Result};
use crate::poly::{render_terms, Monomial, MultiPoly};
use crate::scalar::{self, Scalar};

/// Order of a jet: lowest total degree of a stored term, or `Infinite` when
/// the jet is zero at its precision (an "ambiguous zero" unless certified).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetOrder {
    Finite(u32),
    Infinite,
}

#[derive(Debug, Clone)]
pub struct Jet {
    ctx: Ctx,
    precision: u32,
    body: MultiPoly,
    deg_bound: Option<u32>,
}

/// Equality compares context, precision and body. The degree bound is
/// provenance metadata and deliberately excluded: two routes to the same
/// value may know different bounds.
impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        self.precision == other.precision
            && same_ctx(&self.ctx, &other.ctx)
            && self.body == other.body
    }
}

impl Eq for Jet {}

impl Jet {
    /// Wraps a polynomial as an exact jet: the referent is the polynomial
    /// itself, so the degree bound is its actual degree. Terms of degree
    /// >= `precision` are truncated away; if that happens the result keeps
    /// its (now >= N) bound, honestly recording a non-exact truncation.
    pub fn from_poly(ctx: Ctx, precision: u32, poly: MultiPoly) -> Result<Self> {
        if precision == 0 {
            return Err(Error::Invalid("precision must be >= 1".into()));
        }
        if poly.arity() != ctx.arity() {
            return Err(Error::ContextMismatch);
        }
        let bound = if poly.is_zero() { 0 } else { poly.total_degree() };
        Ok(Jet {
            ctx,
            precision,
            body: poly.truncated(precision),
            deg_bound: Some(bound),
        })
    }

    /// A jet with no degree-bound knowledge (referent is a general series).
    pub fn from_series_truncation(ctx: Ctx, precision: u32, body: MultiPoly) -> Result<Self> {
        let mut j = Self::from_poly(ctx, precision, body)?;
        j.deg_bound = None;
        Ok(j)
    }

    pub fn zero(ctx: Ctx, precision: u32) -> Self {
        let arity = ctx.arity();
        Jet { ctx, precision, body: MultiPoly::zero(arity), deg_bound: Some(0) }
    }

    pub fn one(ctx: Ctx, precision: u32) -> Self {
        Self::constant(ctx, precision, Scalar::one())
    }

    pub fn constant(ctx: Ctx, precision: u32, c: Scalar) -> Self {
        let arity = ctx.arity();
        Jet { ctx, precision, body: MultiPoly::constant(arity, c), deg_bound: Some(0) }
    }

    pub fn variable(ctx: Ctx, precision: u32, idx: usize) -> Self {
        let arity = ctx.arity();
        assert!(precision >= 1);
        let body = if precision > 1 { MultiPoly::var(arity, idx) } else { MultiPoly::zero(arity) };
        Jet { ctx, precision, body, deg_bound: Some(1) }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn body(&self) -> &MultiPoly {
        &self.body
    }

    pub fn deg_bound(&self) -> Option<u32> {
        self.deg_bound
    }

    /// Forgets the degree bound (used when a value is re-declared as a
    /// truncation of an unknown series).
    pub fn without_bound(mut self) -> Self {
        self.deg_bound = None;
        self
    }

    pub fn with_bound(mut self, bound: Option<u32>) -> Self {
        self.deg_bound = bound;
        self
    }

    /// True when the stored body is provably the whole referent.
    pub fn is_exact(&self) -> bool {
        self.deg_bound.map_or(false, |d| d < self.precision)
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.body.is_zero()
    }

    /// Provable vanishing: zero at precision with a certifying bound.
    pub fn is_certified_zero(&self) -> bool {
        self.body.is_zero() && self.is_exact()
    }

    /// A jet whose stored body is a nonzero constant and which provably has
    /// no hidden higher terms.
    pub fn is_certified_constant(&self) -> bool {
        self.body.is_constant() && self.is_exact()
    }

    pub fn constant_term(&self) -> Scalar {
        self.body.constant_term()
    }

    /// A unit germ: nonzero constant term (visible in the truncation).
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn order(&self) -> JetOrder {
        match self.body.order() {
            Some(d) => JetOrder::Finite(d),
            None => JetOrder::Infinite,
        }
    }

    /// Re-truncates to a lower (or equal) precision. The degree bound still
    /// describes the same referent, so it is kept.
    pub fn truncated(&self, precision: u32) -> Self {
        assert!(precision >= 1, "precision must be >= 1");
        Jet {
            ctx: self.ctx.clone(),
            precision: precision.min(self.precision),
            body: self.body.truncated(precision.min(self.precision)),
            deg_bound: self.deg_bound,
        }
    }

    fn binary_ctx(&self, other: &Jet) -> Result<(Ctx, u32)> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok((self.ctx.clone(), self.precision.min(other.precision)))
    }

    /// Coefficientwise sum at precision `min(N_a, N_b)`.
    pub fn add(&self, other: &Jet) -> Result<Jet> {
        let (ctx, n) = self.binary_ctx(other)?;
        let body = self.body.add(&other.body).truncated(n);
        let bound = match (self.deg_bound, other.deg_bound) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Ok(Jet { ctx, precision: n, body, deg_bound: bound })
    }

    pub fn neg(&self) -> Jet {
        Jet {
            ctx: self.ctx.clone(),
            precision: self.precision,
            body: self.body.neg(),
            deg_bound: self.deg_bound,
        }
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.add(&other.neg())
    }

    /// Product truncated at `min(N_a, N_b)`; exact within truncation.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        let (ctx, n) = self.binary_ctx(other)?;
        let body = self.body.mul_capped(&other.body, Some(n));
        let bound = match (self.deg_bound, other.deg_bound) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(Jet { ctx, precision: n, body, deg_bound: bound })
    }

    pub fn mul_scalar(&self, s: &Scalar) -> Jet {
        Jet {
            ctx: self.ctx.clone(),
            precision: self.precision,
            body: self.body.mul_scalar(s),
            deg_bound: if s.is_zero() { Some(0) } else { self.deg_bound },
        }
    }

    pub fn pow(&self, e: u32) -> Jet {
        let mut out = Jet::one(self.ctx.clone(), self.precision);
        for _ in 0..e {
            out = out.mul(self).expect("same context");
        }
        out
    }

    /// Multiplicative inverse of a unit, to the jet's precision.
    /// Newton iteration `b <- b(2 - ab)` doubles the valid order each step.
    pub fn invert_unit(&self) -> Result<Jet> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let n = self.precision;
        let mut b = Jet::constant(self.ctx.clone(), n, Scalar::one() / c0);
        let two = Jet::constant(self.ctx.clone(), n, scalar::int(2));
        let mut valid = 1u32;
        while valid < n {
            let t = two.sub(&self.mul(&b)?)?;
            b = b.mul(&t)?;
            valid *= 2;
        }
        // The inverse of a non-constant unit is a genuine series.
        let bound = if self.deg_bound == Some(0) { Some(0) } else { None };
        Ok(b.with_bound(bound))
    }

    /// Largest `q` with `x_idx^q` dividing every stored term, and the jet
    /// divided by it. Division by a monomial shortens what the truncation
    /// certifies, so the declared precision drops by `q`.
    pub fn extract_var_power(&self, idx: usize) -> Result<(u32, Jet)> {
        if self.body.is_zero() {
            return Err(Error::AmbiguousZero);
        }
        let q = self.body.min_exponent(idx);
        if q == 0 {
            return Ok((0, self.clone()));
        }
        if self.precision <= q && !self.is_exact() {
            return Err(Error::InconclusivePrecision {
                detail: format!("dividing by a power {q} >= precision {}", self.precision),
            });
        }
        let new_n = if self.is_exact() { self.precision } else { self.precision - q };
        Ok((
            q,
            Jet {
                ctx: self.ctx.clone(),
                precision: new_n.max(1),
                body: self.body.div_var_power(idx, q),
                deg_bound: self.deg_bound.map(|d| d.saturating_sub(q)),
            },
        ))
    }

    /// Exact evaluation of the stored body at a rational point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.body.eval(point)
    }

    /// Substitutes jets for variables: `images[i]` replaces variable `i`.
    /// All images must share one context and precision >= the output's.
    pub fn compose(&self, images: &[Jet]) -> Result<Jet> {
        if images.len() != self.ctx.arity() {
            return Err(Error::ContextMismatch);
        }
        let ctx = images[0].ctx.clone();
        let mut n = self.precision;
        for im in images {
            if !same_ctx(&im.ctx, &ctx) {
                return Err(Error::ContextMismatch);
            }
            n = n.min(im.precision);
        }
        let mut acc = Jet::zero(ctx.clone(), n);
        for (m, c) in self.body.terms() {
            let mut t = Jet::constant(ctx.clone(), n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc.with_bound(None))
    }

    /// Renders with the context's variable names.
    pub fn render(&self) -> String {
        render_terms(&self.body, self.ctx.vars())
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod deg {})", self.render(), self.precision)
    }
}

/// Constructor for tests and builders: jet of a single monomial term.
pub fn term(ctx: &Ctx, precision: u32, coeff: Scalar, exps: &[u32]) -> Jet {
    let m = Monomial(exps.to_vec());
    let p = MultiPoly::from_terms(ctx.arity(), [(m, coeff)]);
    Jet::from_poly(ctx.clone(), precision, p).expect("arity checked by caller")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::scalar::int;

    fn ctx2() -> Ctx {
        VarContext::xs(2)
    }

    #[test]
    fn add_cancellation_and_precision_min() {
        let c = ctx2();
        let x1 = Jet::variable(c.clone(), 4, 0);
        let x2 = Jet::variable(c.clone(), 4, 1);
        let s = x1.add(&x2).unwrap().add(&x1.neg()).unwrap();
        assert_eq!(s, x2);

        let a = Jet::variable(c.clone(), 3, 0);
        let b = term(&c, 5, int(1), &[2, 0]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.precision(), 3);
        assert_eq!(s.body().num_terms(), 2);

        let z = Jet::zero(c.clone(), 4);
        let f = term(&c, 4, int(7), &[1, 1]);
        assert_eq!(z.add(&f).unwrap(), f);
    }

    #[test]
    fn mul_truncates_and_is_exact_within() {
        let c = ctx2();
        let one = Jet::one(c.clone(), 3);
        let x = Jet::variable(c.clone(), 3, 0);
        let p = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
        let expect = one.sub(&x.mul(&x).unwrap()).unwrap();
        assert_eq!(p, expect);

        let x4 = Jet::variable(c.clone(), 4, 0);
        let cube = x4.pow(3);
        assert!(x4.mul(&cube).unwrap().is_zero_at_precision());
    }

    #[test]
    fn binomial_cube() {
        let c = ctx2();
        let one = Jet::one(c.clone(), 4);
        let x = Jet::variable(c.clone(), 4, 0);
        let cube = one.add(&x).unwrap().pow(3);
        // oracle: explicit binomial coefficients
        let mut expect = Jet::zero(c.clone(), 4);
        for (k, b) in [(0u32, 1i64), (1, 3), (2, 3), (3, 1)] {
            expect = expect.add(&term(&c, 4, int(b), &[k, 0])).unwrap();
        }
        assert_eq!(cube, expect);
    }

    #[test]
    fn unit_inverse_geometric() {
        let c = ctx2();
        let one = Jet::one(c.clone(), 4);
        let x = Jet::variable(c.clone(), 4, 0);
        let u = one.sub(&x).unwrap();
        let inv = u.invert_unit().unwrap();
        let mut expect = Jet::zero(c.clone(), 4);
        for k in 0..4 {
            expect = expect.add(&term(&c, 4, int(1), &[k, 0])).unwrap();
        }
        assert_eq!(inv, expect);
        assert_eq!(u.mul(&inv).unwrap(), one);

        let two = Jet::constant(c.clone(), 3, int(2));
        assert_eq!(two.invert_unit().unwrap().constant_term(), crate::scalar::ratio(1, 2));

        let x3 = Jet::variable(c.clone(), 3, 0);
        assert_eq!(x3.invert_unit(), Err(Error::NotAUnit));
    }

    #[test]
    fn order_and_extraction() {
        let c = ctx2();
        let p = term(&c, 8, int(1), &[2, 1]).add(&term(&c, 8, int(1), &[5, 0])).unwrap();
        assert_eq!(p.order(), JetOrder::Finite(3));
        assert_eq!(Jet::zero(c.clone(), 6).order(), JetOrder::Infinite);
        assert_eq!(Jet::constant(c.clone(), 6, int(5)).order(), JetOrder::Finite(0));

        let (q, g) = p.extract_var_power(0).unwrap();
        assert_eq!(q, 2);
        let expect = term(&c, 8, int(1), &[0, 1]).add(&term(&c, 8, int(1), &[3, 0])).unwrap();
        assert_eq!(g, expect);

        let free = term(&c, 8, int(1), &[0, 1]);
        assert_eq!(free.extract_var_power(0).unwrap().0, 0);
        assert_eq!(Jet::zero(c, 8).extract_var_power(0), Err(Error::AmbiguousZero));
    }

    #[test]
    fn bound_tracking() {
        let c = ctx2();
        let x = Jet::variable(c.clone(), 3, 0);
        assert!(x.is_exact());
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.deg_bound(), Some(2));
        assert!(sq.is_exact());
        let cube = sq.mul(&x).unwrap();
        // truncated away, bound 3 >= precision 3: not exact, and that is the point
        assert!(cube.is_zero_at_precision());
        assert!(!cube.is_certified_zero());
        assert!(Jet::zero(c, 5).is_certified_zero());
    }
}
