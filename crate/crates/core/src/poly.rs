//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Exponent vector, one entry per context variable.
///
/// Ordered graded-lexicographically (total degree first, then the exponent
/// vector itself), which makes map iteration — and therefore printing and
/// serialization — canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = vec![0; arity];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Highest variable-support index, if any exponent is nonzero.
    pub fn max_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Lowest variable-support index, if any exponent is nonzero.
    pub fn min_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: map from exponent vectors to nonzero scalars.
///
/// No explicit zeros are ever stored, so two polynomials are equal exactly
/// when their maps are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Scalar::one())
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(arity), c);
        }
        p
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        assert!(idx < arity, "variable index out of range");
        let mut p = Self::zero(arity);
        p.terms.insert(Monomial::var(arity, idx), Scalar::one());
        p
    }

    pub fn from_terms<I>(arity: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(arity);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::constant(self.arity))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Maximum total degree of a stored term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Minimum total degree of a stored term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Product, optionally dropping result terms of total degree >= `cap`.
    pub fn mul_capped(&self, other: &MultiPoly, cap: Option<u32>) -> MultiPoly {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = Self::zero(self.arity);
        for (ma, ca) in self.terms() {
            let da = ma.total_degree();
            if let Some(cap) = cap {
                if da >= cap {
                    continue;
                }
            }
            for (mb, cb) in other.terms() {
                if let Some(cap) = cap {
                    if da + mb.total_degree() >= cap {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.mul_capped(other, None)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.arity);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Terms of total degree < `n`.
    pub fn truncated(&self, n: u32) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() < n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        debug_assert_eq!(point.len(), self.arity);
        let mut acc = Scalar::zero();
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Sets the listed variables to zero.
    pub fn set_vars_to_zero(&self, vars: &[usize]) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only terms supported on the single variable `idx`.
    pub fn restrict_to_axis(&self, idx: usize) -> MultiPoly {
        let others: Vec<usize> = (0..self.arity).filter(|&v| v != idx).collect();
        self.set_vars_to_zero(&others)
    }

    /// True when no term involves `idx`.
    pub fn is_free_of(&self, idx: usize) -> bool {
        self.terms.keys().all(|m| m.0[idx] == 0)
    }

    /// True when every term's support lies within the first `k` variables.
    pub fn uses_only_first(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.max_var().map_or(true, |v| v < k))
    }

    /// Degree in the single variable `idx`.
    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Largest `q` such that `x_idx^q` divides every term; 0 for zero input.
    pub fn min_exponent(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).min().unwrap_or(0)
    }

    /// Divides by `x_idx^q`; every term must have exponent >= `q` there.
    pub fn div_var_power(&self, idx: usize, q: u32) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert!(m.0[idx] >= q, "term not divisible");
                    let mut e = m.0.clone();
                    e[idx] -= q;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies by `x_idx^q`.
    pub fn mul_var_power(&self, idx: usize, q: u32) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[idx] += q;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficient of `x_idx^k` as a polynomial in the remaining variables
    /// (the exponent of `idx` in the result is zero everywhere).
    pub fn coeff_of(&self, idx: usize, k: u32) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[idx] == k)
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[idx] = 0;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficient view along `idx`: entry `k` is the coefficient of
    /// `x_idx^k`. Always has `degree_in(idx) + 1` entries (at least one).
    pub fn coeff_view(&self, idx: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(idx);
        (0..=d).map(|k| self.coeff_of(idx, k)).collect()
    }

    /// Substitutes `images[i]` for variable `i`. All images share this arity.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        debug_assert_eq!(images.len(), self.arity);
        let mut out = Self::zero(self.arity);
        for (m, c) in self.terms() {
            let mut t = Self::constant(self.arity, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Exact polynomial quotient `self / divisor` when the divisor is a unit
    /// germ (nonzero constant term) and divides exactly; `None` otherwise.
    ///
    /// Runs power-series division far enough to either terminate with a
    /// polynomial quotient or prove a remainder.
    pub fn divide_exact_by_unit(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let d0 = divisor.constant_term();
        if d0.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.arity));
        }
        // deg(quotient) = deg(self) - deg(divisor) when the quotient exists.
        let ds = self.total_degree();
        let dd = divisor.total_degree();
        if dd > ds {
            return None;
        }
        let target = ds - dd;
        // Order-by-order series division up to total degree `target`.
        let mut quot = Self::zero(self.arity);
        let mut rem = self.clone();
        for deg in 0..=target {
            let part = rem.homogeneous_part(deg);
            if part.is_zero() {
                continue;
            }
            let q_part = part.mul_scalar(&(Scalar::one() / &d0));
            quot = quot.add(&q_part);
            rem = rem.sub(&q_part.mul(divisor));
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> MultiPoly {
        let mut out = Self::zero(self.arity);
        for (m, c) in self.terms() {
            let e = m.0[idx];
            if e > 0 {
                let mut me = m.0.clone();
                me[idx] = e - 1;
                out.add_term(Monomial(me), c * scalar::int(e as i64));
            }
        }
        out
    }
}

/// Determinant-free helpers live in `ring`; this displays the canonical form.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<String> = (0..self.arity).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", render_terms(self, &names))
    }
}

/// Renders a polynomial with explicit variable names, ascending grlex order.
pub fn render_terms(p: &MultiPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c < &Scalar::zero();
        let abs = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_constant() {
            factors.push(scalar::to_string(&abs));
        }
        for (vi, &e) in m.0.iter().enumerate() {
            if e == 1 {
                factors.push(names[vi].clone());
            } else if e > 1 {
                factors.push(format!("{}^{}", names[vi], e));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Validation used by constructors taking external term lists.
pub fn check_arity(m: &Monomial, arity: usize) -> Result<()> {
    if m.0.len() == arity {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "monomial has {} exponents, context has {} variables",
            m.0.len(),
            arity
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn p_xy() -> (MultiPoly, MultiPoly) {
        (MultiPoly::var(2, 0), MultiPoly::var(2, 1))
    }

    #[test]
    fn grlex_iteration_order() {
        let (x, y) = p_xy();
        // 1 + y + x + y^2 in grlex: constant, then degree-1 (x before? lex on
        // exponent vectors: (0,1) < (1,0)), then degree-2.
        let p = MultiPoly::one(2).add(&x).add(&y).add(&y.mul(&y));
        let degs: Vec<u32> = p.terms().map(|(m, _)| m.total_degree()).collect();
        assert_eq!(degs, vec![0, 1, 1, 2]);
        let first_deg1 = p.terms().nth(1).unwrap().0.clone();
        assert_eq!(first_deg1, Monomial(vec![0, 1]));
    }

    #[test]
    fn mul_and_cancel() {
        let (x, y) = p_xy();
        let a = x.add(&y);
        let b = x.sub(&y);
        let prod = a.mul(&b);
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expect);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_unit_division() {
        let (x, _) = p_xy();
        let unit = MultiPoly::one(2).add(&x); // 1 + x
        let w = x.mul(&x).sub(&MultiPoly::constant(2, int(3))); // x^2 - 3
        let prod = unit.mul(&w);
        assert_eq!(prod.divide_exact_by_unit(&unit), Some(w.clone()));
        // 1 + x does not divide x^2.
        assert_eq!(x.mul(&x).divide_exact_by_unit(&unit), None);
    }

    #[test]
    fn coeff_view_roundtrip() {
        let (x, y) = p_xy();
        // y^2 + x*y + x^3 viewed along y.
        let p = y.mul(&y).add(&x.mul(&y)).add(&x.pow(3));
        let view = p.coeff_view(1);
        assert_eq!(view.len(), 3);
        assert_eq!(view[0], x.pow(3));
        assert_eq!(view[1], x);
        assert_eq!(view[2], MultiPoly::one(2));
        let mut rebuilt = MultiPoly::zero(2);
        for (k, c) in view.iter().enumerate() {
            rebuilt = rebuilt.add(&c.mul_var_power(1, k as u32));
        }
        assert_eq!(rebuilt, p);
    }
}
