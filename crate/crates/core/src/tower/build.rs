//! Construction of normal systems of equations.
//!
//! The recursion carries two synchronized views of each level:
//!   * the recorded jets (monic pseudopolynomial, unit, change) at the
//!     declared precision, and
//!   * when the chain from the inputs stays polynomial, an exact
//!     "unprepared" polynomial whose leading coefficient is a unit germ and
//!     whose degree in the distinguished variable equals the regularity
//!     order. Discriminants of the monic form rescale to polynomials in
//!     this data (multiply the power sums by powers of the leading
//!     coefficient), so zero/nonzero judgments become exact even where the
//!     truncation shows nothing.
//! When the exact view is unavailable, judgments fall back to the stored
//! truncations: non-vanishing needs a visible term, vanishing needs a
//! degree-bound certificate, and anything else is `InconclusivePrecision`.

use num::traits::{One, Zero};

use crate::context::{same_ctx, Ctx};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linear::LinearChange;
use crate::poly::MultiPoly;
use crate::ring::{self, PolyRing, Ring};
use crate::scalar::Scalar;
use crate::uni::UniOverJets;
use crate::weier::{
    self, exactify_degree_equals_order, find_shear, prepare_from_exact_coeffs,
    weierstrass_prepare, SearchConfig,
};

use super::{BaseData, NormalSystem, TowerInput, TowerKind, TowerLevel};

/// Splits a germ `g` with `g(0) = 0`, free of `x_1`, as
/// `g = sum_{k>=2} x_k b_k`: each monomial is assigned to its smallest
/// present variable. Returns `b_2..b_n`; reconstruction is exact on the
/// stored terms, and the declared precision drops by one (the division).
pub fn split_linear_parts(g: &Jet) -> Result<Vec<Jet>> {
    if !g.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    if !g.body().is_free_of(0) {
        return Err(Error::InvolvesX1);
    }
    let ctx = g.ctx().clone();
    let arity = ctx.arity();
    let n_out = if g.precision() > 1 { g.precision() - 1 } else { 1 };
    let mut parts: Vec<MultiPoly> = vec![MultiPoly::zero(arity); arity - 1];
    for (m, c) in g.body().terms() {
        let k = m.min_var().expect("constant term excluded above");
        debug_assert!(k >= 1);
        let mut e = m.0.clone();
        e[k] -= 1;
        parts[k - 1].add_term(crate::poly::Monomial(e), c.clone());
    }
    parts
        .into_iter()
        .map(|p| {
            let b = Jet::from_poly(ctx.clone(), n_out, p)?;
            Ok(if g.deg_bound().is_some() { b } else { b.without_bound() })
        })
        .collect()
}

/// Builds the set-germ tower from monic pseudopolynomials in the last
/// variable (coefficients in the earlier variables, vanishing at the
/// origin).
pub fn build_tower_set(pseudos: &[UniOverJets], cfg: &SearchConfig) -> Result<NormalSystem> {
    let Some(first) = pseudos.first() else {
        return Err(Error::Invalid("no input polynomials".into()));
    };
    let ctx = first.ctx().clone();
    let n = ctx.arity();
    let var = n - 1;
    let mut product = UniOverJets::one(var, ctx.clone(), first.precision());
    for g in pseudos {
        if g.var() != var {
            return Err(Error::Invalid("inputs must be polynomials in the last variable".into()));
        }
        g.require_monic()?;
        if !g.is_prefix_pseudo() || !g.tail_vanishes_at_origin() {
            return Err(Error::Invalid(
                "inputs must be pseudopolynomials with coefficients vanishing at the origin"
                    .into(),
            ));
        }
        product = product.mul(g)?;
    }
    let precision = product.precision();
    let exact = pseudos.iter().all(|g| g.coeffs().iter().all(|c| c.is_exact()));
    let exact_coeffs = exact.then(|| {
        let mut asc: Vec<MultiPoly> = product.coeffs().iter().map(|c| c.body().clone()).collect();
        asc.reverse();
        asc
    });
    let germs: Vec<Jet> = pseudos.iter().map(|g| g.to_jet()).collect();
    let product = adjust_base_bounds(product, n);
    let mut builder = Builder {
        kind: TowerKind::Set,
        ctx: ctx.clone(),
        n_global: precision,
        cfg: cfg.clone(),
        levels: Vec::new(),
    };
    builder.levels.push(TowerLevel {
        index: n,
        poly: product.clone(),
        unit: Jet::one(ctx.clone(), precision),
        change: LinearChange::identity(0, n),
        x1_power: 0,
        disc_index: None,
        precision,
        exact_coeffs: exact_coeffs.clone(),
    });
    let top = LevelState { index: n, poly: product, precision, exact: exact_coeffs };
    let base = builder.run(top)?;
    Ok(NormalSystem {
        kind: TowerKind::Set,
        ctx,
        precision,
        height_bound: cfg.height_bound,
        input: TowerInput { germs, splitting: None },
        levels: builder.levels,
        base,
        exact_inputs: exact,
    })
}

/// Builds the set-germ tower from arbitrary germ jets: their product is
/// made regular in the last variable by a generic change of all
/// coordinates, prepared, and handed to the recursion.
pub fn build_tower_set_from_germs(germs: &[Jet], cfg: &SearchConfig) -> Result<NormalSystem> {
    let Some(first) = germs.first() else {
        return Err(Error::Invalid("no input germs".into()));
    };
    let ctx = first.ctx().clone();
    let n = ctx.arity();
    let mut product = Jet::one(ctx.clone(), first.precision());
    for g in germs {
        if !same_ctx(g.ctx(), &ctx) {
            return Err(Error::ContextMismatch);
        }
        if g.is_zero_at_precision() {
            return Err(Error::ZeroGerm);
        }
        product = product.mul(g)?;
    }
    let exact = germs.iter().all(|g| g.is_exact());
    let exact_product =
        exact.then(|| germs.iter().fold(MultiPoly::one(n), |acc, g| acc.mul(g.body())));
    let mut builder = Builder {
        kind: TowerKind::Set,
        ctx: ctx.clone(),
        n_global: product.precision(),
        cfg: cfg.clone(),
        levels: Vec::new(),
    };
    let top = builder.prepare_top(product, exact_product, 0..n)?;
    let precision = builder.n_global;
    let base = builder.run(top)?;
    Ok(NormalSystem {
        kind: TowerKind::Set,
        ctx,
        precision,
        height_bound: cfg.height_bound,
        input: TowerInput { germs: germs.to_vec(), splitting: None },
        levels: builder.levels,
        base,
        exact_inputs: exact,
    })
}

/// Builds the function-germ tower: forms `prod (x_1 - g_m)`, prepares it in
/// the last variable after a change of `(x_2..x_n)`, and runs the recursion
/// that divides each discriminant by its maximal power of `x_1`.
pub fn build_tower_function(germs: &[Jet], cfg: &SearchConfig) -> Result<NormalSystem> {
    let Some(first) = germs.first() else {
        return Err(Error::Invalid("no input germs".into()));
    };
    let ctx = first.ctx().clone();
    let n = ctx.arity();
    if n < 2 {
        return Err(Error::Invalid("function towers need at least two variables".into()));
    }
    let mut splitting = Vec::with_capacity(germs.len());
    let mut product = Jet::one(ctx.clone(), first.precision());
    for g in germs {
        if !same_ctx(g.ctx(), &ctx) {
            return Err(Error::ContextMismatch);
        }
        if g.is_zero_at_precision() {
            return Err(Error::ZeroGerm);
        }
        splitting.push(split_linear_parts(g)?);
        let x1 = Jet::variable(ctx.clone(), g.precision(), 0);
        product = product.mul(&x1.sub(g)?)?;
    }
    let exact = germs.iter().all(|g| g.is_exact());
    let exact_product = exact.then(|| {
        germs.iter().fold(MultiPoly::one(n), |acc, g| {
            acc.mul(&MultiPoly::var(n, 0).sub(g.body()))
        })
    });
    let mut builder = Builder {
        kind: TowerKind::Function,
        ctx: ctx.clone(),
        n_global: product.precision(),
        cfg: cfg.clone(),
        levels: Vec::new(),
    };
    let top = builder.prepare_top(product, exact_product, 1..n)?;
    let precision = builder.n_global;
    let base = builder.run(top)?;
    Ok(NormalSystem {
        kind: TowerKind::Function,
        ctx,
        precision,
        height_bound: cfg.height_bound,
        input: TowerInput { germs: germs.to_vec(), splitting: Some(splitting) },
        levels: builder.levels,
        base,
        exact_inputs: exact,
    })
}

struct Builder {
    kind: TowerKind,
    ctx: Ctx,
    n_global: u32,
    cfg: SearchConfig,
    levels: Vec<TowerLevel>,
}

/// Working state: the current monic level plus its exact unprepared view.
struct LevelState {
    index: usize,
    poly: UniOverJets,
    precision: u32,
    exact: Option<Vec<MultiPoly>>,
}

/// What one discriminant scan produced.
struct ScanOutcome {
    j: usize,
    /// Monic-form discriminant, divided by `x_1^q`, as a jet.
    extracted_jet: Jet,
    q: u32,
    /// Exact unprepared next-level polynomial (leading-unit rescaled).
    exact_extracted: Option<MultiPoly>,
    /// Certified nonzero constant value of the extracted discriminant.
    constant: Option<Scalar>,
}

impl Builder {
    /// Prepares a product germ into the top level `f_n`.
    fn prepare_top(
        &mut self,
        product: Jet,
        exact_product: Option<MultiPoly>,
        block: std::ops::Range<usize>,
    ) -> Result<LevelState> {
        let n = self.ctx.arity();
        let var = n - 1;
        let lc = match &exact_product {
            Some(p) => find_shear(p, var, block, &self.cfg)?,
            None => {
                if product.is_zero_at_precision() {
                    return Err(Error::InconclusivePrecision {
                        detail: "input product vanishes at the working precision".into(),
                    });
                }
                find_shear(product.body(), var, block.clone(), &self.cfg)?
            }
        };
        let changed_jet = lc.apply_jet(&product);
        let changed_exact = exact_product.map(|p| lc.apply_poly(&p));
        let (res, exact_coeffs) = self.prepare_level(&changed_jet, changed_exact.as_ref(), var)?;
        let state = LevelState {
            index: n,
            poly: res.weierstrass.clone(),
            precision: res.precision,
            exact: exact_coeffs.clone(),
        };
        self.levels.push(TowerLevel {
            index: n,
            poly: res.weierstrass,
            unit: res.unit,
            change: lc,
            x1_power: 0,
            disc_index: None,
            precision: res.precision,
            exact_coeffs,
        });
        Ok(state)
    }

    /// Weierstrass preparation with the exact view when available. Returns
    /// the preparation and, when the exact polynomial has unit lead and
    /// degree equal to the order, its ascending coefficients for the next
    /// level's exact lane.
    fn prepare_level(
        &self,
        jet: &Jet,
        exact: Option<&MultiPoly>,
        var: usize,
    ) -> Result<(weier::PreparationResult, Option<Vec<MultiPoly>>)> {
        if let Some(p) = exact {
            let coeffs_asc = p.coeff_view(var);
            let mut res = prepare_from_exact_coeffs(&self.ctx, var, &coeffs_asc, self.n_global)?;
            let order = res.weierstrass.degree() as u32;
            let d = p.degree_in(var);
            if d == order {
                exactify_degree_equals_order(&self.ctx, var, &coeffs_asc, order, &mut res);
                return Ok((res, Some(coeffs_asc)));
            }
            return Ok((res, None));
        }
        let res = weierstrass_prepare(jet, var)?;
        Ok((res, None))
    }

    /// Scans the discriminants of the current level for the first
    /// non-vanishing entry and extracts the `x_1` power (function towers).
    fn scan(&self, state: &LevelState) -> Result<ScanOutcome> {
        let i = state.index;
        let p = state.poly.degree();
        let extract = self.kind == TowerKind::Function && i >= 2;
        if p == 0 {
            // Degree-zero polynomial: the empty Hankel minor is 1.
            return Ok(ScanOutcome {
                j: 1,
                extracted_jet: Jet::one(self.ctx.clone(), state.precision),
                q: 0,
                exact_extracted: Some(MultiPoly::one(self.ctx.arity())),
                constant: Some(Scalar::one()),
            });
        }
        if let Some(coeffs_asc) = &state.exact {
            return self.scan_exact(state, coeffs_asc, extract);
        }
        self.scan_jets(state, extract)
    }

    fn scan_exact(
        &self,
        state: &LevelState,
        coeffs_asc: &[MultiPoly],
        extract: bool,
    ) -> Result<ScanOutcome> {
        let p = state.poly.degree();
        debug_assert_eq!(coeffs_asc.len(), p + 1);
        let arity = self.ctx.arity();
        let ring = PolyRing { arity };
        let lead = &coeffs_asc[p];
        let c_desc: Vec<MultiPoly> = (0..p).rev().map(|k| coeffs_asc[k].clone()).collect();
        let shat = ring::scaled_power_sums(&ring, lead, &c_desc, 2 * (p - 1));
        // First non-vanishing entry; the rescaling by lead powers cannot
        // change the vanishing pattern because lead is a unit germ.
        let mut found = None;
        for j in 1..=p {
            let m = p - j + 1;
            let matrix: Vec<Vec<MultiPoly>> =
                (0..m).map(|r| (0..m).map(|c| shat[r + c].clone()).collect()).collect();
            let d = ring::det(&ring, &matrix);
            if !d.is_zero() {
                found = Some((j, d));
                break;
            }
        }
        let (j, dhat) = found.expect("the last scaled discriminant is the degree, nonzero");
        let m = p - j + 1;
        let scale = lead.pow((m * (m - 1)) as u32);
        let q = if extract { dhat.min_exponent(0) } else { 0 };
        let dhat_extracted = if q > 0 { dhat.div_var_power(0, q) } else { dhat };
        let constant = dhat_extracted
            .divide_exact_by_unit(&scale)
            .filter(|c| c.is_constant() && !c.is_zero())
            .map(|c| c.constant_term());
        // Monic-form extracted discriminant as a jet at the level precision.
        let scale_jet = Jet::from_poly(self.ctx.clone(), state.precision, scale)?;
        let dhat_jet = Jet::from_poly(self.ctx.clone(), state.precision, dhat_extracted.clone())?;
        let extracted_jet = dhat_jet.mul(&scale_jet.invert_unit()?)?;
        Ok(ScanOutcome { j, extracted_jet, q, exact_extracted: Some(dhat_extracted), constant })
    }

    fn scan_jets(&self, state: &LevelState, extract: bool) -> Result<ScanOutcome> {
        let i = state.index;
        let discs = crate::disc::generalized_discriminants(&state.poly)?;
        let mut j = None;
        for (idx0, d) in discs.entries().iter().enumerate() {
            if !d.is_zero_at_precision() {
                j = Some(idx0 + 1);
                break;
            }
            if !d.is_certified_zero() {
                return Err(Error::InconclusivePrecision {
                    detail: format!(
                        "discriminant {} of level {} vanishes at precision {} without a certificate",
                        idx0 + 1,
                        i,
                        state.precision
                    ),
                });
            }
        }
        let j = j.ok_or(Error::Invalid("all generalized discriminants vanished".into()))?;
        let d = discs.entries()[j - 1].clone();
        let (q, extracted_jet) = if extract { d.extract_var_power(0)? } else { (0, d) };
        let constant = (extracted_jet.is_certified_constant()
            && !extracted_jet.is_zero_at_precision())
        .then(|| extracted_jet.constant_term());
        Ok(ScanOutcome { j, extracted_jet, q, exact_extracted: None, constant })
    }

    /// The block of variables the coordinate change at level `lvl` may mix
    /// (it must contain the distinguished variable of that level).
    fn change_block(&self, lvl: usize) -> std::ops::Range<usize> {
        match self.kind {
            TowerKind::Set => 0..lvl,
            TowerKind::Function => {
                if lvl >= 2 {
                    1..lvl
                } else {
                    0..1
                }
            }
        }
    }

    fn trivial_level(&self, index: usize, unit: Jet, q: u32, j: Option<usize>, precision: u32,
        exact: Option<Vec<MultiPoly>>) -> TowerLevel {
        TowerLevel {
            index,
            poly: UniOverJets::one(index - 1, self.ctx.clone(), precision),
            unit,
            change: LinearChange::identity(0, 1),
            x1_power: q,
            disc_index: j,
            precision,
            exact_coeffs: exact,
        }
    }

    /// The main recursion. Consumes the top state, records the remaining
    /// levels, and returns the base data.
    fn run(&mut self, top: LevelState) -> Result<BaseData> {
        let mut state = top;
        loop {
            let i = state.index;
            let sc = self.scan(&state)?;
            if let Some(c) = &sc.constant {
                let base = BaseData {
                    unit: c.clone(),
                    x1_power: sc.q,
                    terminal_level: i,
                    terminal_disc_index: sc.j,
                };
                if i >= 2 {
                    let p_next = sc
                        .exact_extracted
                        .clone()
                        .filter(|p| p.is_free_of(i - 2))
                        .map(|p| vec![p]);
                    self.levels.push(self.trivial_level(
                        i - 1,
                        sc.extracted_jet.clone(),
                        sc.q,
                        Some(sc.j),
                        state.precision,
                        p_next,
                    ));
                    for k in (1..i - 1).rev() {
                        self.levels.push(self.trivial_level(
                            k,
                            Jet::one(self.ctx.clone(), state.precision),
                            0,
                            Some(1),
                            state.precision,
                            Some(vec![MultiPoly::one(self.ctx.arity())]),
                        ));
                    }
                }
                return Ok(base);
            }
            if i == 1 {
                // Coefficients live in the empty prefix, so the scan value
                // is structurally constant; reaching this point means its
                // constancy could not be certified, which is a precision
                // defect, not a math one.
                return Err(Error::InconclusivePrecision {
                    detail: format!(
                        "base discriminant at level 1 is not certified constant at precision {}",
                        state.precision
                    ),
                });
            }
            let v = i - 2; // distinguished variable of level i-1
            let block = self.change_block(i - 1);
            if sc.extracted_jet.is_unit() {
                // Unit germ: the Weierstrass polynomial is 1.
                let p_next =
                    sc.exact_extracted.clone().filter(|p| p.is_free_of(v)).map(|p| vec![p]);
                self.levels.push(self.trivial_level(
                    i - 1,
                    sc.extracted_jet.clone(),
                    sc.q,
                    Some(sc.j),
                    state.precision,
                    p_next.clone(),
                ));
                state = LevelState {
                    index: i - 1,
                    poly: UniOverJets::one(v, self.ctx.clone(), state.precision),
                    precision: state.precision,
                    exact: p_next,
                };
                continue;
            }

            // Genuine preparation of the next level.
            let (lc, changed_jet, changed_exact, unit_jet, res, next_exact) =
                match &sc.exact_extracted {
                    Some(p_exact) => {
                        let lc = find_shear(p_exact, v, block, &self.cfg)?;
                        let changed_exact = lc.apply_poly(p_exact);
                        let changed_jet = lc.apply_jet(&sc.extracted_jet);
                        let (res, next_exact) =
                            self.prepare_level(&changed_jet, Some(&changed_exact), v)?;
                        // The exact view is rescaled by a power of the
                        // previous leading unit; divide the unit back out so
                        // the recorded identity matches the monic form.
                        let p_prev = state.poly.degree();
                        let m = p_prev - sc.j + 1;
                        let lead_prev = state.exact.as_ref().expect("exact lane")[p_prev].clone();
                        let scale = lc.apply_poly(&lead_prev.pow((m * (m - 1)) as u32));
                        let scale_jet =
                            Jet::from_poly(self.ctx.clone(), res.precision, scale)?;
                        let unit_jet = res.unit.mul(&scale_jet.invert_unit()?)?;
                        (lc, changed_jet, Some(changed_exact), unit_jet, res, next_exact)
                    }
                    None => {
                        if sc.extracted_jet.is_zero_at_precision() {
                            return Err(Error::InconclusivePrecision {
                                detail: format!(
                                    "discriminant {} of level {} is invisible at precision {}",
                                    sc.j, i, state.precision
                                ),
                            });
                        }
                        let (lc, changed_jet) = weier::generic_linear_change(
                            &sc.extracted_jet,
                            v,
                            block,
                            &self.cfg,
                        )?;
                        let (res, next_exact) = self.prepare_level(&changed_jet, None, v)?;
                        let unit_jet = res.unit.clone();
                        (lc, changed_jet, None, unit_jet, res, next_exact)
                    }
                };
            let _ = (changed_jet, changed_exact);
            let mut poly = res.weierstrass.clone();
            if i - 1 == 1 {
                // Coefficients in the empty prefix are structurally exact
                // constants; record that so base certification succeeds.
                poly = adjust_base_bounds(poly, 1);
            }
            self.levels.push(TowerLevel {
                index: i - 1,
                poly: poly.clone(),
                unit: unit_jet,
                change: lc,
                x1_power: sc.q,
                disc_index: Some(sc.j),
                precision: res.precision,
                exact_coeffs: next_exact.clone(),
            });
            state = LevelState {
                index: i - 1,
                poly,
                precision: res.precision,
                exact: next_exact,
            };
        }
    }
}

/// Coefficients of a level with index `lvl` live in the first `lvl - 1`
/// variables. When that prefix is empty the referents are constants, so the
/// stored bodies are exact regardless of how they were computed.
fn adjust_base_bounds(poly: UniOverJets, lvl: usize) -> UniOverJets {
    if lvl != 1 {
        return poly;
    }
    let var = poly.var();
    let coeffs: Vec<Jet> = poly
        .coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.body().is_constant());
            c.clone().with_bound(Some(0))
        })
        .collect();
    UniOverJets::new(var, coeffs).expect("rebinding bounds keeps the shape")
}
