//! Invertible linear changes of coordinates on a contiguous variable block.

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::MultiPoly;
use crate::scalar::{self, Scalar};

/// A linear substitution `x_k <- sum_l M[k][l] x_l` acting on the contiguous
/// block `block_start..block_start+size` of context variables; variables
/// outside the block are fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearChange {
    block_start: usize,
    matrix: Vec<Vec<Scalar>>,
}

impl LinearChange {
    pub fn new(block_start: usize, matrix: Vec<Vec<Scalar>>) -> Result<Self> {
        let size = matrix.len();
        if size == 0 || matrix.iter().any(|r| r.len() != size) {
            return Err(Error::Invalid("change matrix must be square and nonempty".into()));
        }
        let lc = LinearChange { block_start, matrix };
        if lc.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(lc)
    }

    pub fn identity(block_start: usize, size: usize) -> Self {
        let matrix = (0..size)
            .map(|r| (0..size).map(|c| if r == c { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        LinearChange { block_start, matrix }
    }

    /// Shear towards `target`: `x_k <- x_k + c_k * x_target` for block
    /// variables `k != target`, identity elsewhere. Unimodular by shape.
    pub fn shear(block_start: usize, size: usize, target: usize, coeffs: &[Scalar]) -> Self {
        assert!(target >= block_start && target < block_start + size);
        assert_eq!(coeffs.len(), size);
        let mut lc = Self::identity(block_start, size);
        let tcol = target - block_start;
        for (r, c) in coeffs.iter().enumerate() {
            if r != tcol {
                lc.matrix[r][tcol] = c.clone();
            }
        }
        lc
    }

    pub fn block_start(&self) -> usize {
        self.block_start
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() })
        })
    }

    /// Exact determinant by fraction-free expansion (matrices stay tiny).
    pub fn det(&self) -> Scalar {
        fn go(m: &[Vec<Scalar>], cols: &mut Vec<usize>, row: usize) -> Scalar {
            if row == m.len() {
                return Scalar::one();
            }
            let mut acc = Scalar::zero();
            for pos in 0..cols.len() {
                let col = cols[pos];
                if m[row][col].is_zero() {
                    continue;
                }
                let sign = if pos % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                cols.remove(pos);
                acc += sign * &m[row][col] * go(m, cols, row + 1);
                cols.insert(pos, col);
            }
            acc
        }
        let mut cols: Vec<usize> = (0..self.size()).collect();
        go(&self.matrix, &mut cols, 0)
    }

    /// Inverse change (Gauss-Jordan over the rationals).
    pub fn inverse(&self) -> Result<LinearChange> {
        let n = self.size();
        let mut a = self.matrix.clone();
        let mut inv = Self::identity(self.block_start, n).matrix;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] = &a[col][c] / &p;
                inv[col][c] = &inv[col][c] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let av = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - av;
                    let iv = &inv[col][c] * &f;
                    inv[r][c] = &inv[r][c] - iv;
                }
            }
        }
        LinearChange::new(self.block_start, inv)
    }

    /// Images of all `arity` context variables under this change.
    pub fn images(&self, arity: usize) -> Vec<MultiPoly> {
        let n = self.size();
        (0..arity)
            .map(|v| {
                if v < self.block_start || v >= self.block_start + n {
                    MultiPoly::var(arity, v)
                } else {
                    let r = v - self.block_start;
                    let mut img = MultiPoly::zero(arity);
                    for (c, coef) in self.matrix[r].iter().enumerate() {
                        img = img.add(&MultiPoly::var(arity, self.block_start + c).mul_scalar(coef));
                    }
                    img
                }
            })
            .collect()
    }

    pub fn apply_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.substitute(&self.images(p.arity()))
    }

    /// Applies the change to a jet. A linear substitution maps each monomial
    /// to monomials of the same total degree, so precision and degree bound
    /// carry over unchanged.
    pub fn apply_jet(&self, f: &Jet) -> Jet {
        let body = self.apply_poly(f.body());
        Jet::from_poly(f.ctx().clone(), f.precision(), body)
            .expect("arity preserved")
            .with_bound(f.deg_bound())
    }

    /// The direction vector that `x_target` acquires: entry `k` of the
    /// result is the coefficient of `x_target` in the image of `x_k`,
    /// restricted to the block (all of `v` outside the block is zero).
    pub fn target_direction(&self, target: usize) -> Vec<Scalar> {
        let tcol = target - self.block_start;
        (0..self.size()).map(|r| self.matrix[r][tcol].clone()).collect()
    }
}

impl std::fmt::Display for LinearChange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|row| {
                let entries: Vec<String> = row.iter().map(scalar::to_string).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        write!(f, "block@{} {}", self.block_start, rows.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::VarContext;
    use crate::jet::term;
    use crate::scalar::int;

    #[test]
    fn shear_substitution() {
        // x2*x3 under x2 <- x2 + x3 becomes x3^2 + x2*x3
        let ctx = VarContext::xs(3);
        let f = term(&ctx, 6, int(1), &[0, 1, 1]);
        let lc = LinearChange::shear(1, 2, 2, &[int(1), int(0)]);
        let g = lc.apply_jet(&f);
        let expect =
            term(&ctx, 6, int(1), &[0, 0, 2]).add(&term(&ctx, 6, int(1), &[0, 1, 1])).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn identity_and_inverse_roundtrip() {
        let ctx = VarContext::xs(3);
        let f = term(&ctx, 6, int(3), &[1, 2, 0]).add(&term(&ctx, 6, int(-1), &[0, 0, 2])).unwrap();
        let id = LinearChange::identity(0, 3);
        assert!(id.is_identity());
        assert_eq!(id.apply_jet(&f), f);

        let m = vec![
            vec![int(1), int(2), int(0)],
            vec![int(0), int(1), int(3)],
            vec![int(1), int(0), int(1)],
        ];
        let lc = LinearChange::new(0, m).unwrap();
        let inv = lc.inverse().unwrap();
        let roundtrip = inv.apply_jet(&lc.apply_jet(&f));
        assert_eq!(roundtrip, f);
    }

    #[test]
    fn singular_rejected() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(LinearChange::new(0, m).err(), Some(Error::SingularMatrix));
    }
}
