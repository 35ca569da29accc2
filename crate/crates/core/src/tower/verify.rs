//! Independent verification of a normal system: every condition is
//! re-derived from the stored data, never trusted from builder flags.

use num::traits::Zero;

use crate::error::Result;
use crate::jet::Jet;
use crate::poly::MultiPoly;
use crate::ring::{self, PolyRing};
use crate::scalar;
use crate::uni::UniOverJets;

use super::{NormalSystem, TowerKind, TowerLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The truncation neither proves nor refutes the condition.
    Inconclusive,
    /// Analytic conditions (domain polydiscs, root bounds) that only the
    /// numeric profiler can probe.
    NumericOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionCheck {
    pub id: String,
    pub level: Option<usize>,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<ConditionCheck>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn all_symbolic_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::NumericOnly))
    }

    fn push(&mut self, id: &str, level: Option<usize>, status: CheckStatus, detail: String) {
        self.checks.push(ConditionCheck { id: id.to_string(), level, status, detail });
    }
}

/// Exact scaled discriminant `j` of the polynomial with ascending
/// coefficients `coeffs_asc` (leading coefficient a unit germ): the Hankel
/// minor of the lead-rescaled power sums, equal to `lead^(m(m-1)) Delta_j`.
fn scaled_disc(coeffs_asc: &[MultiPoly], j: usize) -> MultiPoly {
    let p = coeffs_asc.len() - 1;
    let arity = coeffs_asc[0].arity();
    let ring = PolyRing { arity };
    let lead = &coeffs_asc[p];
    let c_desc: Vec<MultiPoly> = (0..p).rev().map(|k| coeffs_asc[k].clone()).collect();
    let up_to = if p >= 1 { 2 * (p - 1) } else { 0 };
    let shat = ring::scaled_power_sums(&ring, lead, &c_desc, up_to);
    let m = p - j + 1;
    let matrix: Vec<Vec<MultiPoly>> =
        (0..m).map(|r| (0..m).map(|c| shat[r + c].clone()).collect()).collect();
    ring::det(&ring, &matrix)
}

fn flatten_exact(coeffs_asc: &[MultiPoly], var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(coeffs_asc[0].arity());
    for (k, c) in coeffs_asc.iter().enumerate() {
        acc = acc.add(&c.mul_var_power(var, k as u32));
    }
    acc
}

/// Re-derives and checks every symbolically checkable condition of a
/// normal system at its stored precisions; analytic conditions are flagged
/// numeric-only. Failures are report entries, not errors.
pub fn verify_normal_system(ns: &NormalSystem) -> Result<VerificationReport> {
    let mut report = VerificationReport { checks: Vec::new() };
    structural_checks(ns, &mut report)?;
    reconstruction_check(ns, &mut report)?;
    for pair in ns.levels.windows(2) {
        let (above, below) = (&pair[0], &pair[1]);
        level_transition_checks(ns, above, below, &mut report)?;
    }
    base_checks(ns, &mut report)?;
    report.push(
        "domain-polydiscs",
        None,
        CheckStatus::NumericOnly,
        "polydisc domains are analytic data; probe with the root-count profiler".into(),
    );
    report.push(
        "root-bound",
        None,
        CheckStatus::NumericOnly,
        "root moduli versus the escape radii are probed by the profiler".into(),
    );
    Ok(report)
}

fn structural_checks(ns: &NormalSystem, report: &mut VerificationReport) -> Result<()> {
    let n = ns.arity();
    // levels must be exactly n..1
    let idxs: Vec<usize> = ns.levels.iter().map(|l| l.index).collect();
    let expect: Vec<usize> = (1..=n).rev().collect();
    let status = if idxs == expect { CheckStatus::Pass } else { CheckStatus::Fail };
    report.push("level-chain", None, status, format!("levels {idxs:?}"));

    let mut trivial_seen = false;
    for lvl in &ns.levels {
        let status = if lvl.poly.is_monic() { CheckStatus::Pass } else { CheckStatus::Fail };
        report.push("monic", Some(lvl.index), status, format!("degree {}", lvl.degree()));

        let ok = lvl.poly.is_prefix_pseudo() && lvl.poly.var() == lvl.index - 1;
        report.push(
            "coefficient-prefix",
            Some(lvl.index),
            if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            "coefficients must live below the distinguished variable".into(),
        );

        let status =
            if lvl.poly.tail_vanishes_at_origin() { CheckStatus::Pass } else { CheckStatus::Fail };
        report.push(
            "coefficients-vanish-at-origin",
            Some(lvl.index),
            status,
            String::new(),
        );

        let status = if lvl.unit.is_unit() { CheckStatus::Pass } else { CheckStatus::Fail };
        report.push("unit-at-origin", Some(lvl.index), status, String::new());

        if ns.kind == TowerKind::Set && lvl.x1_power != 0 {
            report.push(
                "no-extraction-in-set-tower",
                Some(lvl.index),
                CheckStatus::Fail,
                format!("q = {}", lvl.x1_power),
            );
        }

        // Once a level is trivial, everything below must be (the
        // trivial-or-vanishing alternative).
        if trivial_seen && !lvl.is_trivial() {
            report.push(
                "trivial-below",
                Some(lvl.index),
                CheckStatus::Fail,
                "a nontrivial level sits below a trivial one".into(),
            );
        }
        if lvl.is_trivial() {
            trivial_seen = true;
        }

        condition_six(ns, lvl, report);
    }

    if ns.kind == TowerKind::Function {
        let status = match ns.level(1) {
            Some(l) if l.is_trivial() => CheckStatus::Pass,
            _ => CheckStatus::Fail,
        };
        report.push("function-level-one-trivial", Some(1), status, "f_1 must be 1".into());
    }
    Ok(())
}

/// Either the level is trivial or its section over the parameter axis
/// vanishes: with a flagged parameter every non-leading coefficient must
/// vanish on the parameter axis, without one the origin value suffices.
fn condition_six(ns: &NormalSystem, lvl: &TowerLevel, report: &mut VerificationReport) {
    if lvl.is_trivial() {
        report.push("trivial-or-vanishing", Some(lvl.index), CheckStatus::Pass, "level is 1".into());
        return;
    }
    let param = ns.ctx.param();
    let mut status = CheckStatus::Pass;
    let mut detail = String::new();
    match param {
        None => {
            if !lvl.poly.tail_vanishes_at_origin() {
                status = CheckStatus::Fail;
                detail = "a coefficient has a nonzero origin value".into();
            }
        }
        Some(t) => {
            let others: Vec<usize> = (0..ns.arity()).filter(|&v| v != t).collect();
            for (k, c) in lvl.poly.tail().iter().enumerate() {
                let sect = c.body().set_vars_to_zero(&others);
                if !sect.is_zero() {
                    status = CheckStatus::Fail;
                    detail = format!("coefficient a_{} is nonzero on the parameter axis", k + 1);
                    break;
                }
                if !c.is_exact() && lvl.exact_coeffs.is_none() && status == CheckStatus::Pass {
                    status = CheckStatus::Inconclusive;
                    detail = "parameter-axis vanishing seen only at truncation".into();
                }
            }
            // Exact side data settles the parameter-axis question.
            if status == CheckStatus::Inconclusive {
                if let Some(ex) = &lvl.exact_coeffs {
                    let p = ex.len() - 1;
                    let clean = (0..p).all(|k| ex[k].set_vars_to_zero(&others).is_zero());
                    if clean {
                        status = CheckStatus::Pass;
                        detail.clear();
                    }
                }
            }
        }
    }
    report.push("trivial-or-vanishing", Some(lvl.index), status, detail);
}

/// Level n must reproduce the input product through the recorded change.
fn reconstruction_check(ns: &NormalSystem, report: &mut VerificationReport) -> Result<()> {
    let Some(top) = ns.levels.first() else {
        return Ok(());
    };
    let ctx = ns.ctx.clone();
    let product = match (&ns.kind, &ns.input.splitting) {
        (TowerKind::Function, Some(split)) => {
            // Equation form: prod (x_1 - sum_k x_k b_{m,k}).
            let mut acc = Jet::one(ctx.clone(), ns.precision);
            for bs in split {
                let mut g = Jet::zero(ctx.clone(), bs[0].precision());
                for (k, b) in bs.iter().enumerate() {
                    let xk = Jet::variable(ctx.clone(), b.precision(), k + 1);
                    g = g.add(&xk.mul(b)?)?;
                }
                let x1 = Jet::variable(ctx.clone(), g.precision(), 0);
                acc = acc.mul(&x1.sub(&g)?)?;
            }
            acc
        }
        _ => {
            let mut acc = Jet::one(ctx.clone(), ns.precision);
            for g in &ns.input.germs {
                acc = acc.mul(g)?;
            }
            acc
        }
    };
    let lhs = top.change.apply_jet(&product);
    let rhs = top.unit.mul(&top.poly.to_jet())?;
    let n_check = lhs.precision().min(rhs.precision());
    let status = if lhs.truncated(n_check) == rhs.truncated(n_check) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    report.push(
        "input-product",
        Some(top.index),
        status,
        format!("checked at precision {n_check}"),
    );
    Ok(())
}

/// The discriminant conditions tying `above` (level i) to `below` (level
/// i-1): vanishing under the stored index, non-vanishing at it, and the
/// preparation identity.
fn level_transition_checks(
    ns: &NormalSystem,
    above: &TowerLevel,
    below: &TowerLevel,
    report: &mut VerificationReport,
) -> Result<()> {
    let Some(j) = below.disc_index else {
        report.push(
            "discriminant-indices",
            Some(below.index),
            CheckStatus::Fail,
            "missing discriminant index".into(),
        );
        return Ok(());
    };
    let p = above.degree();
    if p == 0 {
        // Degree-zero convention: the only scan value is the empty minor 1.
        let status = if j == 1 { CheckStatus::Pass } else { CheckStatus::Fail };
        report.push("discriminant-nonvanishing", Some(above.index), status, "empty minor".into());
        return identity_checks(ns, above, below, None, report);
    }
    if j > p {
        report.push(
            "discriminant-indices",
            Some(below.index),
            CheckStatus::Fail,
            format!("index {j} exceeds degree {p}"),
        );
        return Ok(());
    }

    if let Some(ex) = &above.exact_coeffs {
        // Exact route: the rescaled discriminants have the same vanishing
        // pattern as the monic ones.
        for k in 1..j {
            let d = scaled_disc(ex, k);
            let status = if d.is_zero() { CheckStatus::Pass } else { CheckStatus::Fail };
            report.push(
                "discriminant-vanishing",
                Some(above.index),
                status,
                format!("index {k}"),
            );
        }
        let dj = scaled_disc(ex, j);
        let status = if dj.is_zero() { CheckStatus::Fail } else { CheckStatus::Pass };
        report.push(
            "discriminant-nonvanishing",
            Some(above.index),
            status,
            format!("index {j}, exact"),
        );
        identity_checks(ns, above, below, Some(dj), report)?;
    } else {
        let discs = crate::disc::generalized_discriminants(&above.poly)?;
        for k in 1..j {
            let d = &discs.entries()[k - 1];
            let status = if !d.is_zero_at_precision() {
                CheckStatus::Fail
            } else if d.is_certified_zero() {
                CheckStatus::Pass
            } else {
                CheckStatus::Inconclusive
            };
            report.push(
                "discriminant-vanishing",
                Some(above.index),
                status,
                format!("index {k}"),
            );
        }
        let dj = &discs.entries()[j - 1];
        let status = if d_visible(dj) { CheckStatus::Pass } else { CheckStatus::Inconclusive };
        report.push(
            "discriminant-nonvanishing",
            Some(above.index),
            status,
            format!("index {j}, at precision {}", above.precision),
        );
        identity_jet_route(above, below, dj.clone(), report)?;
        return Ok(());
    }
    Ok(())
}

fn d_visible(d: &Jet) -> bool {
    !d.is_zero_at_precision()
}

/// Identity `Delta_{i,j} o L = u * x_1^q * f` in both available forms.
fn identity_checks(
    ns: &NormalSystem,
    above: &TowerLevel,
    below: &TowerLevel,
    exact_dj: Option<MultiPoly>,
    report: &mut VerificationReport,
) -> Result<()> {
    let arity = ns.arity();
    // Exact identity when both sides carry exact data.
    if let (Some(dj), Some(ex_below)) = (&exact_dj, &below.exact_coeffs) {
        let changed = below.change.apply_poly(dj);
        let rhs = flatten_exact(ex_below, below.index - 1)
            .mul_var_power(0, below.x1_power);
        let status = if changed == rhs { CheckStatus::Pass } else { CheckStatus::Fail };
        report.push(
            "discriminant-identity",
            Some(below.index),
            status,
            "exact polynomial identity".into(),
        );
    }
    // Jet identity at the joint precision.
    let n_check = above.precision.min(below.precision);
    let dj_jet = match (&exact_dj, &above.exact_coeffs) {
        (Some(dj), Some(ex)) => {
            let p = above.degree().max(1);
            let j = below.disc_index.unwrap_or(1);
            let m = p - j + 1;
            let lead = &ex[above.degree()];
            let scale = lead.pow((m * (m - 1)) as u32);
            let scale_jet = Jet::from_poly(ns.ctx.clone(), n_check, scale)?;
            let dj_jet = Jet::from_poly(ns.ctx.clone(), n_check, dj.clone())?;
            dj_jet.mul(&scale_jet.invert_unit()?)?
        }
        _ => {
            if above.degree() == 0 {
                Jet::one(ns.ctx.clone(), n_check)
            } else {
                let discs = crate::disc::generalized_discriminants(&above.poly)?;
                discs.entries()[below.disc_index.unwrap_or(1) - 1].clone()
            }
        }
    };
    identity_jet_route(above, below, dj_jet, report)
}

fn identity_jet_route(
    above: &TowerLevel,
    below: &TowerLevel,
    dj: Jet,
    report: &mut VerificationReport,
) -> Result<()> {
    let n_check = above.precision.min(below.precision);
    let lhs = below.change.apply_jet(&dj.truncated(n_check));
    let x1q = x1_power_jet(&below.unit, below.x1_power, n_check)?;
    let rhs = below.unit.truncated(n_check).mul(&below.poly.to_jet().truncated(n_check))?.mul(&x1q)?;
    let status = if lhs.truncated(n_check) == rhs.truncated(n_check) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    report.push(
        "discriminant-identity-jets",
        Some(below.index),
        status,
        format!("checked at precision {n_check}"),
    );
    // Extraction maximality: after dividing, some term must be free of x_1.
    if below.x1_power > 0 || below.exact_coeffs.is_some() {
        let status = match &below.exact_coeffs {
            Some(ex) => {
                let flat = flatten_exact(ex, below.index - 1);
                if flat.is_zero() || flat.min_exponent(0) == 0 {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
            None => {
                let flat = rhs;
                if flat.is_zero_at_precision() {
                    CheckStatus::Inconclusive
                } else if flat.body().min_exponent(0) == below.x1_power {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
        };
        report.push("x1-extraction-maximal", Some(below.index), status, String::new());
    }
    Ok(())
}

fn x1_power_jet(sample: &Jet, q: u32, precision: u32) -> Result<Jet> {
    let ctx = sample.ctx().clone();
    let x1 = Jet::variable(ctx, precision, 0);
    Ok(x1.pow(q))
}

/// The terminal scan must produce `u_0 x_1^{q_0}` exactly (set towers force
/// `q_0 = 0`, so the base is a nonzero constant).
fn base_checks(ns: &NormalSystem, report: &mut VerificationReport) -> Result<()> {
    let base = &ns.base;
    if base.unit.is_zero() {
        report.push("base-unit-nonzero", None, CheckStatus::Fail, "u_0 = 0".into());
        return Ok(());
    }
    report.push("base-unit-nonzero", None, CheckStatus::Pass, scalar::to_string(&base.unit));
    if ns.kind == TowerKind::Set && base.x1_power != 0 {
        report.push(
            "no-extraction-in-set-tower",
            None,
            CheckStatus::Fail,
            format!("q_0 = {}", base.x1_power),
        );
    }
    let Some(term) = ns.level(base.terminal_level) else {
        report.push(
            "base-terminal-level",
            None,
            CheckStatus::Fail,
            format!("terminal level {} missing", base.terminal_level),
        );
        return Ok(());
    };
    let j = base.terminal_disc_index;
    let p = term.degree();

    if p == 0 {
        let ok = j == 1 && num::traits::One::is_one(&base.unit) && base.x1_power == 0;
        report.push(
            "base-power-identity",
            Some(term.index),
            if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            "terminal level is trivial; its scan value is 1".into(),
        );
        return Ok(());
    }
    if j > p {
        report.push(
            "base-power-identity",
            Some(term.index),
            CheckStatus::Fail,
            format!("index {j} exceeds degree {p}"),
        );
        return Ok(());
    }

    if let Some(ex) = &term.exact_coeffs {
        for k in 1..j {
            let d = scaled_disc(ex, k);
            let status = if d.is_zero() { CheckStatus::Pass } else { CheckStatus::Fail };
            report.push("discriminant-vanishing", Some(term.index), status, format!("index {k}"));
        }
        let dj = scaled_disc(ex, j);
        let m = p - j + 1;
        let scale = ex[p].pow((m * (m - 1)) as u32);
        let expect = scale
            .mul_scalar(&base.unit)
            .mul_var_power(0, base.x1_power);
        let status = if dj == expect { CheckStatus::Pass } else { CheckStatus::Fail };
        report.push(
            "base-power-identity",
            Some(term.index),
            status,
            "exact: terminal discriminant is the unit times the extracted power".into(),
        );
    } else {
        let discs = crate::disc::generalized_discriminants(&term.poly)?;
        for k in 1..j {
            let d = &discs.entries()[k - 1];
            let status = if !d.is_zero_at_precision() {
                CheckStatus::Fail
            } else if d.is_certified_zero() {
                CheckStatus::Pass
            } else {
                CheckStatus::Inconclusive
            };
            report.push("discriminant-vanishing", Some(term.index), status, format!("index {k}"));
        }
        let dj = &discs.entries()[j - 1];
        let n_check = term.precision;
        let x1q = x1_power_jet(dj, base.x1_power, n_check)?;
        let expect =
            Jet::constant(ns.ctx.clone(), n_check, base.unit.clone()).mul(&x1q)?;
        let status = if dj.truncated(n_check) == expect.truncated(n_check) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        report.push(
            "base-power-identity",
            Some(term.index),
            status,
            format!("checked at precision {n_check}"),
        );
    }
    Ok(())
}
