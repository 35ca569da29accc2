//! Normal systems of equations: recursive discriminant towers over a germ
//! (set towers) or a finite family of function germs (function towers,
//! which additionally divide out powers of the first variable), together
//! with an independent verifier and Hensel branch solving.

mod build;
mod hensel;
mod verify;

pub use build::{
    build_tower_function, build_tower_set, build_tower_set_from_germs, split_linear_parts,
};
pub use hensel::{hensel_lift_branches, BranchSolution};
pub use verify::{verify_normal_system, CheckStatus, ConditionCheck, VerificationReport};

use crate::context::Ctx;
use crate::jet::Jet;
use crate::linear::LinearChange;
use crate::poly::MultiPoly;
use crate::scalar::Scalar;
use crate::uni::UniOverJets;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerKind {
    /// The recursion for a set germ: no powers of `x_1` are extracted.
    Set,
    /// The recursion for function germs: each discriminant is divided by
    /// the maximal power of `x_1` and coordinate changes fix `x_1`.
    Function,
}

/// One level of a normal system. Level `i` holds the monic pseudopolynomial
/// `f_i` in `x_i` together with the data that produced it from the level
/// above: the index of the first non-vanishing generalized discriminant of
/// `f_{i+1}`, the unit split off by preparation, the coordinate change, and
/// the extracted power of `x_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerLevel {
    pub index: usize,
    pub poly: UniOverJets,
    pub unit: Jet,
    pub change: LinearChange,
    pub x1_power: u32,
    pub disc_index: Option<usize>,
    pub precision: u32,
    /// Exact ascending coefficients (in `x_i`) of the unprepared polynomial
    /// behind this level, kept whenever the whole chain from the inputs
    /// stayed polynomial with unit leading coefficient and degree equal to
    /// the regularity order. Judgments taken from this data are proofs, not
    /// truncation heuristics.
    pub exact_coeffs: Option<Vec<MultiPoly>>,
}

impl TowerLevel {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn is_trivial(&self) -> bool {
        self.poly.degree() == 0
    }
}

/// Where the recursion stopped: the first scan whose (extracted)
/// discriminant is a certified nonzero constant.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseData {
    pub unit: Scalar,
    pub x1_power: u32,
    pub terminal_level: usize,
    pub terminal_disc_index: usize,
}

/// The inputs a tower was built from, kept for the reconstruction check.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerInput {
    pub germs: Vec<Jet>,
    /// Function towers: the linear splitting `g_m = sum_k x_k b_{m,k}`
    /// (entry `m` lists `b_{m,2}..b_{m,n}`).
    pub splitting: Option<Vec<Vec<Jet>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalSystem {
    pub kind: TowerKind,
    pub ctx: Ctx,
    pub precision: u32,
    pub height_bound: u32,
    pub input: TowerInput,
    /// Levels from `n` down to `1`, one entry per variable.
    pub levels: Vec<TowerLevel>,
    pub base: BaseData,
    /// True when every input germ was an exactly stored polynomial.
    pub exact_inputs: bool,
}

impl NormalSystem {
    pub fn arity(&self) -> usize {
        self.ctx.arity()
    }

    pub fn level(&self, index: usize) -> Option<&TowerLevel> {
        self.levels.iter().find(|l| l.index == index)
    }

    /// Degrees `p_n, ..., p_1`.
    pub fn degree_sequence(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree()).collect()
    }

    /// Discriminant indices `j_i` keyed by the level whose scan produced
    /// them (the terminal scan included).
    pub fn disc_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut v: Vec<(usize, usize)> = self
            .levels
            .iter()
            .filter_map(|l| l.disc_index.map(|j| (l.index + 1, j)))
            .collect();
        v.sort();
        out.push((self.base.terminal_level, self.base.terminal_disc_index));
        out.extend(v);
        out.sort();
        out.dedup();
        out
    }
}
