//! A minimal commutative-ring abstraction so the discriminant machinery can
//! run both on jets (truncated arithmetic) and on exact polynomials.

use crate::context::Ctx;
use crate::jet::Jet;
use crate::poly::MultiPoly;
use crate::scalar;

pub trait Ring {
    type El: Clone + PartialEq;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_int(&self, n: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }
}

/// Jets over a fixed context and precision.
pub struct JetRing {
    pub ctx: Ctx,
    pub precision: u32,
}

impl Ring for JetRing {
    type El = Jet;

    fn zero(&self) -> Jet {
        Jet::zero(self.ctx.clone(), self.precision)
    }

    fn one(&self) -> Jet {
        Jet::one(self.ctx.clone(), self.precision)
    }

    fn from_int(&self, n: i64) -> Jet {
        Jet::constant(self.ctx.clone(), self.precision, scalar::int(n))
    }

    fn add(&self, a: &Jet, b: &Jet) -> Jet {
        a.add(b).expect("ring elements share a context")
    }

    fn neg(&self, a: &Jet) -> Jet {
        a.neg()
    }

    fn mul(&self, a: &Jet, b: &Jet) -> Jet {
        a.mul(b).expect("ring elements share a context")
    }

    fn is_zero(&self, a: &Jet) -> bool {
        a.is_zero_at_precision()
    }
}

/// Exact polynomials of a fixed arity.
pub struct PolyRing {
    pub arity: usize,
}

impl Ring for PolyRing {
    type El = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.arity)
    }

    fn one(&self) -> MultiPoly {
        MultiPoly::one(self.arity)
    }

    fn from_int(&self, n: i64) -> MultiPoly {
        MultiPoly::constant(self.arity, scalar::int(n))
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }

    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
}

/// Division-free determinant by Laplace expansion with column-subset
/// memoization, processing rows in order and skipping zero entries.
///
/// Exact over any commutative ring, which matters here: jets are not an
/// integral domain, so fraction-free elimination (which divides by earlier
/// pivots) is not available. Matrices in this crate stay small (Hankel and
/// Sylvester blocks of the fixture degrees), so the 2^m memo is fine.
pub fn det<R: Ring>(ring: &R, m: &[Vec<R::El>]) -> R::El {
    use std::collections::BTreeMap;
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    for row in m {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    assert!(n <= 24, "determinant dimension too large for subset expansion");
    // layer[mask] = det of the submatrix of rows 0..popcount(mask) and the
    // column set `mask`. Layers are sparse: zero minors are dropped, which
    // keeps the degenerate (mostly-zero) Hankel blocks cheap.
    let full: u32 = (1u32 << n) - 1;
    let mut prev: BTreeMap<u32, R::El> = BTreeMap::new();
    prev.insert(0, ring.one());
    for row in 0..n {
        let mut next: BTreeMap<u32, R::El> = BTreeMap::new();
        for (mask, val) in &prev {
            let mut parity_below = 0u32;
            for col in 0..n {
                let bit = 1u32 << col;
                if mask & bit != 0 {
                    parity_below += 1;
                    continue;
                }
                let entry = &m[row][col];
                if ring.is_zero(entry) {
                    continue;
                }
                // sign = (-1)^(row + number of chosen columns below `col`)
                let sign_neg = (row as u32 + parity_below) % 2 == 1;
                let mut contrib = ring.mul(val, entry);
                if sign_neg {
                    contrib = ring.neg(&contrib);
                }
                let nmask = mask | bit;
                match next.remove(&nmask) {
                    Some(acc) => {
                        let sum = ring.add(&acc, &contrib);
                        next.insert(nmask, sum);
                    }
                    None => {
                        next.insert(nmask, contrib);
                    }
                }
            }
        }
        next.retain(|_, v| !ring.is_zero(v));
        prev = next;
    }
    prev.remove(&full).unwrap_or_else(|| ring.zero())
}

/// Newton power sums of a monic polynomial given by its non-leading
/// coefficients `a` (so the polynomial is `T^p + a[0] T^(p-1) + ... + a[p-1]`).
/// Returns `s_0..=s_up_to` with `s_k` the sum of k-th powers of the roots.
pub fn newton_power_sums<R: Ring>(ring: &R, a: &[R::El], up_to: usize) -> Vec<R::El> {
    let p = a.len();
    let mut s: Vec<R::El> = Vec::with_capacity(up_to + 1);
    s.push(ring.from_int(p as i64));
    for k in 1..=up_to {
        let mut acc = ring.zero();
        for i in 1..=k.min(p) {
            if i == k {
                break;
            }
            acc = ring.add(&acc, &ring.mul(&a[i - 1], &s[k - i]));
        }
        let mut sk = ring.neg(&acc);
        if k <= p {
            let ka = ring.mul(&ring.from_int(k as i64), &a[k - 1]);
            sk = ring.sub(&sk, &ka);
        }
        s.push(sk);
    }
    s
}

/// Power sums of the roots of a possibly non-monic `P = e T^p + c_1 T^(p-1)
/// + ... + c_p`, rescaled by the leading coefficient: the returned entry `k`
/// equals `e^k * s_k`, which is a polynomial in `(e, c)`. Requires `e` to be
/// a unit germ so all `p` roots are finite.
pub fn scaled_power_sums<R: Ring>(
    ring: &R,
    lead: &R::El,
    c_desc: &[R::El],
    up_to: usize,
) -> Vec<R::El> {
    let p = c_desc.len();
    // powers of e up to max(p, up_to) - 1
    let maxpow = p.max(up_to).max(1);
    let mut epow: Vec<R::El> = Vec::with_capacity(maxpow);
    epow.push(ring.one());
    for _ in 1..maxpow {
        let last = epow.last().unwrap().clone();
        epow.push(ring.mul(&last, lead));
    }
    let mut s: Vec<R::El> = Vec::with_capacity(up_to + 1);
    s.push(ring.from_int(p as i64));
    for k in 1..=up_to {
        let mut acc = ring.zero();
        for i in 1..=k.min(p) {
            if i == k {
                break;
            }
            let t = ring.mul(&ring.mul(&c_desc[i - 1], &epow[i - 1]), &s[k - i]);
            acc = ring.add(&acc, &t);
        }
        let mut sk = ring.neg(&acc);
        if k <= p {
            let t = ring.mul(&ring.from_int(k as i64), &ring.mul(&c_desc[k - 1], &epow[k - 1]));
            sk = ring.sub(&sk, &t);
        }
        s.push(sk);
    }
    s
}

/// Hankel-minor generalized discriminants from power sums: entry `j`
/// (1-based) is the determinant of the leading principal
/// `(p-j+1) x (p-j+1)` block of `(s_{k+l})`.
pub fn hankel_discriminants<R: Ring>(ring: &R, s: &[R::El], p: usize) -> Vec<R::El> {
    let mut out = Vec::with_capacity(p);
    for j in 1..=p {
        let m = p - j + 1;
        let matrix: Vec<Vec<R::El>> =
            (0..m).map(|r| (0..m).map(|c| s[r + c].clone()).collect()).collect();
        out.push(det(ring, &matrix));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;
    use crate::scalar::int;

    #[test]
    fn det_small_ints() {
        let ring = PolyRing { arity: 1 };
        let c = |n: i64| MultiPoly::constant(1, int(n));
        // det [[1,2],[3,4]] = -2
        let m = vec![vec![c(1), c(2)], vec![c(3), c(4)]];
        assert_eq!(det(&ring, &m), c(-2));
        // det of empty matrix is 1
        let e: Vec<Vec<MultiPoly>> = vec![];
        assert_eq!(det(&ring, &e), c(1));
        // a 3x3 with a zero row
        let m = vec![vec![c(1), c(2), c(3)], vec![c(0), c(0), c(0)], vec![c(7), c(8), c(9)]];
        assert_eq!(det(&ring, &m), c(0));
    }

    #[test]
    fn det_vandermonde_sign() {
        let ring = PolyRing { arity: 1 };
        let c = |n: i64| MultiPoly::constant(1, int(n));
        // Vandermonde on (1, 2, 4): prod of (xj - xi) for i<j = 1*3*2 = 6
        let m: Vec<Vec<MultiPoly>> =
            [1i64, 2, 4].iter().map(|&x| vec![c(1), c(x), c(x * x)]).collect();
        assert_eq!(det(&ring, &m), c(6));
    }

    #[test]
    fn power_sums_quadratic() {
        // T^2 + a1 T + a2 over the polynomial ring Q[a1, a2]
        let ring = PolyRing { arity: 2 };
        let a1 = MultiPoly::var(2, 0);
        let a2 = MultiPoly::var(2, 1);
        let s = newton_power_sums(&ring, &[a1.clone(), a2.clone()], 2);
        assert_eq!(s[0], MultiPoly::constant(2, int(2)));
        assert_eq!(s[1], a1.neg());
        assert_eq!(s[2], a1.mul(&a1).sub(&a2.mul_scalar(&int(2))));
    }

    #[test]
    fn scaled_sums_match_monic() {
        // e = 1 reduces to the monic case
        let ring = PolyRing { arity: 2 };
        let a1 = MultiPoly::var(2, 0);
        let a2 = MultiPoly::var(2, 1);
        let plain = newton_power_sums(&ring, &[a1.clone(), a2.clone()], 4);
        let scaled = scaled_power_sums(&ring, &ring.one(), &[a1, a2], 4);
        assert_eq!(plain, scaled);
    }
}
