//! Assembly of the KU-local zeta function of a datum: symbolic factorization,
//! exact special values, vanishing orders, homotopy-group orders, truncated
//! Euler products, and functional-equation residuals.
//!
//! The function attached to a datum X is
//!
//!   prod_w zeta(s-w)^{e_w}  *  prod_w prod_{ell | n_w} prod_chi L(s-w, chi)
//!
//! with e_w = beta_{2w} - beta_{2w+1} and chi running over the order-ell
//! characters of conductor ell^2. Homotopy orders take denominators factor
//! by factor, never of the total: cancellation between a numerator at one
//! weight and a denominator at another (the irregular-prime phenomenon) is
//! real, and the reports keep both readings visible.

use crate::arith::{denom, pow_rational, prime_to_part, primes_up_to};
use crate::bernoulli::zeta_special_value;
use crate::characters::{dir_prime_set, DirichletCharacter, DirPrimeBlock};
use crate::error::{Error, Result};
use crate::ku::{dual, torsion_primes, Bounds, KTheoryDatum, SkeletalSplitting};
use crate::lfunctions::{completed_l_numeric, l_numeric, orbit_product, root_number};
use crate::numeric::{
    completed_zeta, cpow_real, is_half_gamma_pole, zeta_derivative_neg_even, zeta_numeric,
};
use crate::{Nat, Rational, C64};
use num::traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// The weight-w, prime-ell torsion factor: the characters whose L-functions
/// appear at shift w.
#[derive(Debug, Clone)]
pub struct TorsionBlock {
    pub weight: i64,
    pub ell: u64,
    pub characters: Vec<DirichletCharacter>,
}

/// Symbolic shape of the zeta function of a datum.
#[derive(Debug, Clone)]
pub struct ZetaFactorization {
    /// weight -> exponent e_w = beta_{2w} - beta_{2w+1}, nonzero entries only.
    pub provisional: BTreeMap<i64, i64>,
    /// One block per (weight, ell | n_w), ascending.
    pub torsion: Vec<TorsionBlock>,
}

/// Exponents e_w of the shifted Riemann zeta factors.
pub fn provisional_factorization(x: &KTheoryDatum) -> Result<BTreeMap<i64, i64>> {
    x.validate()?;
    Ok(x.cells()
        .map(|(w, c)| (w, c.beta_even as i64 - c.beta_odd as i64))
        .filter(|(_, e)| *e != 0)
        .collect())
}

/// Full factorization: shifted zeta exponents plus torsion character blocks.
pub fn factorization(x: &KTheoryDatum) -> Result<ZetaFactorization> {
    let provisional = provisional_factorization(x)?;
    let mut torsion = Vec::new();
    for (w, c) in x.cells() {
        if c.torsion_order > 1 {
            for DirPrimeBlock { ell, characters } in dir_prime_set(c.torsion_order)? {
                torsion.push(TorsionBlock { weight: w, ell, characters });
            }
        }
    }
    Ok(ZetaFactorization { provisional, torsion })
}

// ---------------------------------------------------------------------------
// Vanishing order and exact special values (provisional part)
// ---------------------------------------------------------------------------

/// Order of vanishing of the provisional factor at integer m (negative =
/// pole): -beta_{2m-2} + beta_{2m-1} + sum_{k>=1} (beta_{2m+4k} - beta_{2m+4k+1}).
pub fn vanishing_order(x: &KTheoryDatum, m: i64) -> Result<i64> {
    let Bounds { b, .. } = x.validate()?;
    let c = x.cell(m - 1);
    let mut order = -(c.beta_even as i64) + c.beta_odd as i64;
    let mut k = 1;
    while m + 2 * k <= b {
        let c = x.cell(m + 2 * k);
        order += c.beta_even as i64 - c.beta_odd as i64;
        k += 1;
    }
    Ok(order)
}

/// Exact value of one weight factor, or a zero/pole marker with its order.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorValue {
    Exact(Rational),
    ZeroOfOrder(u32),
    PoleOfOrder(u32),
}

/// Exact total across weights, or a net zero/pole marker.
#[derive(Debug, Clone, PartialEq)]
pub enum TotalValue {
    Exact(Rational),
    ZeroOfOrder(i64),
    PoleOfOrder(i64),
}

impl TotalValue {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            TotalValue::Exact(q) => Some(q),
            _ => None,
        }
    }
}

fn weight_factor_exact(argument: i64, exponent: i64, weight: i64) -> Result<FactorValue> {
    if argument >= 2 {
        return Err(Error::TranscendentalArgument { weight, argument });
    }
    if argument == 1 {
        return Ok(if exponent > 0 {
            FactorValue::PoleOfOrder(exponent as u32)
        } else {
            FactorValue::ZeroOfOrder((-exponent) as u32)
        });
    }
    let v = zeta_special_value(argument)?;
    if v.is_zero() {
        return Ok(if exponent > 0 {
            FactorValue::ZeroOfOrder(exponent as u32)
        } else {
            FactorValue::PoleOfOrder((-exponent) as u32)
        });
    }
    let q = pow_rational(&v, exponent as i32).expect("nonzero base");
    Ok(FactorValue::Exact(q))
}

/// Exact prod_w zeta(m-w)^{e_w}, or a zero/pole marker with order from the
/// vanishing-order formula. Arguments >= 2 on a live factor are rejected
/// (transcendental); exactly cancelling zero/pole pairs are rejected toward
/// the numeric limit.
pub fn provisional_special_value(x: &KTheoryDatum, m: i64) -> Result<TotalValue> {
    let exponents = provisional_factorization(x)?;
    let mut product = Rational::one();
    let mut net_order: i64 = 0;
    let mut has_marker = false;
    for (&w, &e) in &exponents {
        match weight_factor_exact(m - w, e, w)? {
            FactorValue::Exact(q) => product *= q,
            FactorValue::ZeroOfOrder(o) => {
                has_marker = true;
                net_order += o as i64;
            }
            FactorValue::PoleOfOrder(o) => {
                has_marker = true;
                net_order -= o as i64;
            }
        }
    }
    if !has_marker {
        return Ok(TotalValue::Exact(product));
    }
    match net_order.cmp(&0) {
        std::cmp::Ordering::Greater => Ok(TotalValue::ZeroOfOrder(net_order)),
        std::cmp::Ordering::Less => Ok(TotalValue::PoleOfOrder(-net_order)),
        std::cmp::Ordering::Equal => Err(Error::CancellingFactors(m)),
    }
}

// ---------------------------------------------------------------------------
// Numeric limit at cancellation points
// ---------------------------------------------------------------------------

/// How a single weight factor behaves at the limit point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitTermKind {
    /// zeta(argument) finite and nonzero; contributes zeta(argument)^e.
    Plain,
    /// argument = 1: simple pole with residue 1; contributes order -e.
    Pole,
    /// argument a trivial zero; contributes zeta'(argument)^e and order +e.
    TrivialZero,
}

#[derive(Debug, Clone)]
pub struct LimitTerm {
    pub weight: i64,
    pub argument: i64,
    pub exponent: i64,
    pub kind: LimitTermKind,
    /// Leading coefficient of this factor (already raised to the exponent).
    pub leading: f64,
}

#[derive(Debug, Clone)]
pub struct LimitReport {
    pub argument: i64,
    pub terms: Vec<LimitTerm>,
    pub value: C64,
}

/// Numeric limit of prod_w zeta(s-w)^{e_w} as s -> m, by first-order
/// expansion of each factor. Requires net vanishing order 0 at m.
pub fn provisional_limit_numeric(x: &KTheoryDatum, m: i64) -> Result<LimitReport> {
    let exponents = provisional_factorization(x)?;
    let net = vanishing_order(x, m)?;
    if net != 0 {
        return Err(Error::NetOrderNonzero { argument: m, order: net });
    }
    let mut terms = Vec::new();
    let mut value = 1.0f64;
    for (&w, &e) in &exponents {
        let t = m - w;
        let (kind, leading) = if t == 1 {
            (LimitTermKind::Pole, 1.0)
        } else if t <= -2 && t % 2 == 0 {
            let d = zeta_derivative_neg_even((-t / 2) as u32);
            (LimitTermKind::TrivialZero, d.powi(e as i32))
        } else {
            let z = if t <= 0 {
                zeta_special_value(t)?.to_f64().expect("zeta value fits f64")
            } else {
                zeta_numeric(C64::new(t as f64, 0.0))?.re
            };
            (LimitTermKind::Plain, z.powi(e as i32))
        };
        value *= leading;
        terms.push(LimitTerm { weight: w, argument: t, exponent: e, kind, leading });
    }
    Ok(LimitReport { argument: m, terms, value: C64::new(value, 0.0) })
}

// ---------------------------------------------------------------------------
// Torsion special values and the full report
// ---------------------------------------------------------------------------

/// Exact orbit product of the (w, ell) torsion factor at integer m <= w:
/// prod_chi L(m-w, chi) over the order-ell conductor-ell^2 block of n_w.
pub fn torsion_l_special_value(x: &KTheoryDatum, w: i64, ell: u64, m: i64) -> Result<Rational> {
    x.validate()?;
    let order = x.cell(w).torsion_order;
    if !order.is_multiple_of(ell) || ell == 1 || order == 1 {
        return Err(Error::NoSuchTorsionPrime { weight: w, ell, order });
    }
    if m - w > 0 {
        return Err(Error::PositiveShiftedArgument(m - w));
    }
    let block = dir_prime_set(order)?
        .into_iter()
        .find(|b| b.ell == ell)
        .expect("ell divides the torsion order");
    orbit_product(m - w, &block.characters)
}

#[derive(Debug, Clone)]
pub struct WeightFactorReport {
    pub weight: i64,
    pub exponent: i64,
    pub argument: i64,
    pub value: FactorValue,
    /// denom of the factor value; 1 for an exact zero, None at a pole.
    pub denominator: Option<Nat>,
}

#[derive(Debug, Clone)]
pub struct TorsionFactorReport {
    pub weight: i64,
    pub ell: u64,
    pub argument: i64,
    pub characters: usize,
    pub value: Rational,
    pub denominator: Nat,
}

/// Everything about the special value at one integer argument: per-factor
/// values, per-factor denominators, and the assembled total.
#[derive(Debug, Clone)]
pub struct SpecialValueReport {
    pub name: String,
    pub argument: i64,
    pub provisional: Vec<WeightFactorReport>,
    pub torsion: Vec<TorsionFactorReport>,
    pub total: TotalValue,
    /// Product of the per-factor denominators (poles excluded); this is the
    /// quantity homotopy orders are made of, and it can genuinely differ
    /// from denom(total) at irregular primes.
    pub per_factor_denominator_product: Nat,
}

impl SpecialValueReport {
    pub fn total_denominator(&self) -> Option<Nat> {
        match &self.total {
            TotalValue::Exact(q) => Some(denom(q)),
            TotalValue::ZeroOfOrder(_) => Some(Nat::one()),
            TotalValue::PoleOfOrder(_) => None,
        }
    }
}

/// Exact special value of the full zeta function of an even-concentrated
/// datum at integer m, with per-factor detail.
pub fn zeta_ku_special_value(x: &KTheoryDatum, m: i64) -> Result<SpecialValueReport> {
    x.validate()?;
    x.require_even_concentrated()?;
    let shape = factorization(x)?;

    let mut provisional = Vec::new();
    let mut denominator_product = Nat::one();
    let mut finite_product = Rational::one();
    let mut net_order: i64 = 0;
    let mut has_marker = false;
    for (&w, &e) in &shape.provisional {
        let value = weight_factor_exact(m - w, e, w)?;
        let denominator = match &value {
            FactorValue::Exact(q) => Some(denom(q)),
            FactorValue::ZeroOfOrder(_) => Some(Nat::one()),
            FactorValue::PoleOfOrder(_) => None,
        };
        match &value {
            FactorValue::Exact(q) => finite_product *= q.clone(),
            FactorValue::ZeroOfOrder(o) => {
                has_marker = true;
                net_order += *o as i64;
            }
            FactorValue::PoleOfOrder(o) => {
                has_marker = true;
                net_order -= *o as i64;
            }
        }
        if let Some(d) = &denominator {
            denominator_product *= d.clone();
        }
        provisional.push(WeightFactorReport { weight: w, exponent: e, argument: m - w, value, denominator });
    }

    let mut torsion = Vec::new();
    for block in &shape.torsion {
        let argument = m - block.weight;
        if argument > 0 {
            return Err(Error::TranscendentalArgument {
                weight: block.weight,
                argument,
            });
        }
        let value = orbit_product(argument, &block.characters)?;
        let d = denom(&value);
        denominator_product *= d.clone();
        finite_product *= value.clone();
        torsion.push(TorsionFactorReport {
            weight: block.weight,
            ell: block.ell,
            argument,
            characters: block.characters.len(),
            value,
            denominator: d,
        });
    }

    let total = if !has_marker {
        TotalValue::Exact(finite_product)
    } else {
        match net_order.cmp(&0) {
            std::cmp::Ordering::Greater => TotalValue::ZeroOfOrder(net_order),
            std::cmp::Ordering::Less => TotalValue::PoleOfOrder(-net_order),
            std::cmp::Ordering::Equal => return Err(Error::CancellingFactors(m)),
        }
    };

    Ok(SpecialValueReport {
        name: x.name.clone(),
        argument: m,
        provisional,
        torsion,
        total,
        per_factor_denominator_product: denominator_product,
    })
}

// ---------------------------------------------------------------------------
// Homotopy-group orders
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// d = 2k-1 above the top of the middle band; argument 1-k.
    Right,
    /// d = 2k-1 below the bottom of the middle band; argument k+1.
    Left,
}

#[derive(Debug, Clone)]
pub struct HomotopyOrder {
    pub degree: i64,
    /// Order of pi_d of the KU-localized dual, away from the excluded primes.
    pub order: Nat,
    /// The factorwise denominator product before stripping excluded primes.
    pub raw_product: Nat,
    pub modulo: Vec<u64>,
    pub branch: Branch,
    /// Set on even degrees, where the group is trivial in the valid range.
    pub note: Option<String>,
}

fn branch_for(d: i64, bounds: Bounds, has_torsion: bool) -> Result<Branch> {
    let right_edge = 1 - 2 * bounds.a;
    let left_edge = -2 * bounds.b - 3;
    let right_ok = if has_torsion { d > right_edge } else { d >= right_edge };
    let left_ok = if has_torsion { d < left_edge } else { d <= left_edge };
    match (right_ok, left_ok) {
        (true, _) => Ok(Branch::Right),
        (_, true) => Ok(Branch::Left),
        _ => Err(Error::MiddleBandDegree {
            degree: d,
            lo: if has_torsion { left_edge } else { left_edge + 1 },
            hi: if has_torsion { right_edge } else { right_edge - 1 },
        }),
    }
}

/// Order of pi_d of the KU-localization of the Spanier-Whitehead dual of the
/// datum, away from the excluded primes: the product over isoweight factors
/// of the denominators of their special values. Even degrees in the valid
/// range are trivial; the middle band is an error; torsion requires the
/// skeletal splitting flag to be complete.
pub fn homotopy_group_order(x: &KTheoryDatum, d: i64) -> Result<HomotopyOrder> {
    let bounds = x.validate()?;
    x.require_even_concentrated()?;
    let has_torsion = x.has_torsion();
    if has_torsion && x.skeletal_splitting != SkeletalSplitting::Complete {
        return Err(Error::SplittingUnknown);
    }
    let branch = branch_for(d, bounds, has_torsion)?;
    let modulo: Vec<u64> = x.excluded_primes.iter().copied().collect();
    if d % 2 == 0 {
        return Ok(HomotopyOrder {
            degree: d,
            order: Nat::one(),
            raw_product: Nat::one(),
            modulo,
            branch,
            note: Some("trivial".into()),
        });
    }

    let k = (d + 1) / 2;
    let shape = factorization(x)?;
    let mut raw = Nat::one();
    // the left branch reads the reflected weights: its argument k+1 pairs
    // with +w where the right branch's 1-k pairs with -w
    let weight_argument = |w: i64| match branch {
        Branch::Right => (1 - k) - w,
        Branch::Left => (k + 1) + w,
    };
    for (&w, &e) in &shape.provisional {
        let argument = weight_argument(w);
        debug_assert!(argument <= 0, "valid branches keep arguments non-positive");
        let v = zeta_special_value(argument)?;
        if v.is_zero() {
            continue; // denom(0) = 1
        }
        raw *= denom(&v).pow(e as u32);
    }
    for block in &shape.torsion {
        let argument = weight_argument(block.weight);
        let v = orbit_product(argument, &block.characters)?;
        raw *= denom(&v);
    }
    let order = prime_to_part(&raw, &modulo);
    Ok(HomotopyOrder {
        degree: d,
        order,
        raw_product: raw,
        modulo,
        branch,
        note: None,
    })
}

// ---------------------------------------------------------------------------
// Truncated Euler products
// ---------------------------------------------------------------------------

fn check_convergence_region(x: &KTheoryDatum, s: C64) -> Result<Bounds> {
    let bounds = x.validate()?;
    if s.re <= 1.0 + bounds.b as f64 {
        return Err(Error::OutOfConvergenceRegion {
            s: format!("{s}"),
            bound: 1.0 + bounds.b as f64,
        });
    }
    Ok(bounds)
}

/// Truncated Euler product over primes <= bound: free factors
/// (1 - p^{w-s})^{-e_w} at every prime, torsion factors
/// (1 - chi(p) p^{w-s})^{-1} skipping the primes dividing any torsion order.
pub fn euler_product_truncated(x: &KTheoryDatum, s: C64, bound: u64) -> Result<C64> {
    check_convergence_region(x, s)?;
    if bound < 2 {
        return Err(Error::BadTruncationBound(bound));
    }
    let shape = factorization(x)?;
    let skip = torsion_primes(x);
    let one = C64::new(1.0, 0.0);

    // evaluate characters once per block: chi(p) by residue table
    struct BlockTable {
        modulus: u64,
        value_tables: Vec<Vec<Option<u64>>>,
        orders: Vec<u64>,
    }
    let tables: Vec<BlockTable> = shape
        .torsion
        .iter()
        .map(|b| BlockTable {
            modulus: b.ell * b.ell,
            value_tables: b.characters.iter().map(|c| c.value_exponent_table()).collect(),
            orders: b.characters.iter().map(|c| c.order()).collect(),
        })
        .collect();

    let mut product = one;
    for p in primes_up_to(bound) {
        let pf = p as f64;
        for (&w, &e) in &shape.provisional {
            let factor = one - cpow_real(pf, C64::new(w as f64, 0.0) - s);
            product *= factor.powi(-(e as i32));
        }
        if skip.binary_search(&p).is_ok() {
            continue;
        }
        for (block, table) in shape.torsion.iter().zip(&tables) {
            let pw = cpow_real(pf, C64::new(block.weight as f64, 0.0) - s);
            for (tab, order) in table.value_tables.iter().zip(&table.orders) {
                if let Some(t) = tab[(p % table.modulus) as usize] {
                    let theta = 2.0 * std::f64::consts::PI * t as f64 / *order as f64;
                    let chi_p = C64::new(theta.cos(), theta.sin());
                    product *= one / (one - chi_p * pw);
                }
            }
        }
    }
    Ok(product)
}

/// The analytically continued value the truncation converges to: shifted
/// zeta and primitive L values, with the Euler factors at the skipped
/// torsion primes divided back out of each primitive L.
pub fn factorized_numeric_value(x: &KTheoryDatum, s: C64) -> Result<C64> {
    x.validate()?;
    let shape = factorization(x)?;
    let skip = torsion_primes(x);
    let one = C64::new(1.0, 0.0);
    let mut product = one;
    for (&w, &e) in &shape.provisional {
        product *= zeta_numeric(s - w as f64)?.powi(e as i32);
    }
    for block in &shape.torsion {
        let shifted = s - block.weight as f64;
        for chi in &block.characters {
            let mut l = l_numeric(shifted, chi)?;
            let modulus = block.ell * block.ell;
            let table = chi.value_exponent_table();
            let order = chi.order();
            for &p in &skip {
                if let Some(t) = table[(p % modulus) as usize] {
                    // remove the p-Euler factor the truncation never sees
                    let theta = 2.0 * std::f64::consts::PI * t as f64 / order as f64;
                    let chi_p = C64::new(theta.cos(), theta.sin());
                    l *= one - chi_p * cpow_real(p as f64, C64::new(block.weight as f64, 0.0) - s);
                }
            }
            product *= l;
        }
    }
    Ok(product)
}

// ---------------------------------------------------------------------------
// Functional equations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuncEqKind {
    /// Completed shifted-zeta product of X at s against the dual at 1-s.
    Provisional,
    /// Completed torsion L of X at s against the weight-reflected datum at
    /// 1-s (the desuspended-dual convention), sign resolved numerically.
    Torsion,
}

#[derive(Debug, Clone)]
pub struct FuncEqReport {
    pub kind: FuncEqKind,
    pub s: C64,
    pub lhs: C64,
    pub rhs: C64,
    /// +1 or -1, whichever matches better.
    pub sign: f64,
    pub residual: f64,
    /// Product of root numbers over all torsion characters (torsion case).
    pub root_number_product: Option<C64>,
}

fn completed_provisional(x: &KTheoryDatum, s: C64) -> Result<C64> {
    let shape = provisional_factorization(x)?;
    let mut product = C64::new(1.0, 0.0);
    for (&w, &e) in &shape {
        let shifted = s - w as f64;
        if is_half_gamma_pole(shifted) {
            return Err(Error::GammaPole(format!("{shifted}")));
        }
        product *= completed_zeta(shifted)?.powi(e as i32);
    }
    Ok(product)
}

fn completed_torsion(x: &KTheoryDatum, s: C64) -> Result<C64> {
    let shape = factorization(x)?;
    let mut product = C64::new(1.0, 0.0);
    for block in &shape.torsion {
        let shifted = s - block.weight as f64;
        for chi in &block.characters {
            product *= completed_l_numeric(shifted, chi)?;
        }
    }
    Ok(product)
}

/// Residual of the appropriate completed functional equation at s. Free data
/// compare X at s with the Spanier-Whitehead dual at 1-s; torsion-only data
/// compare against the weight-reflected datum (self-dual at weight 0) with
/// the sign determined numerically. Mixed data are unsupported.
pub fn functional_equation_residual(x: &KTheoryDatum, s: C64) -> Result<FuncEqReport> {
    x.validate()?;
    let has_free = x.cells().any(|(_, c)| c.beta_even > 0 || c.beta_odd > 0);
    let has_torsion = x.has_torsion();
    match (has_free, has_torsion) {
        (true, false) => {
            // the completed equation needs the dual's exponents to mirror
            // the original's, which fails when odd cells shift weights
            x.require_even_concentrated()?;
            let lhs = completed_provisional(x, s)?;
            let rhs = completed_provisional(&dual(x)?, C64::new(1.0, 0.0) - s)?;
            Ok(FuncEqReport {
                kind: FuncEqKind::Provisional,
                s,
                lhs,
                rhs,
                sign: 1.0,
                residual: (lhs - rhs).norm(),
                root_number_product: None,
            })
        }
        (false, true) => {
            // weight-reflected datum: torsion n_w moves to weight -w
            let mut reflected = x.clone();
            reflected.weights = x.weights.iter().map(|(w, c)| (-w, *c)).collect();
            let lhs = completed_torsion(x, s)?;
            let rhs = completed_torsion(&reflected, C64::new(1.0, 0.0) - s)?;
            let (sign, residual) = if (lhs - rhs).norm() <= (lhs + rhs).norm() {
                (1.0, (lhs - rhs).norm())
            } else {
                (-1.0, (lhs + rhs).norm())
            };
            let mut w_product = C64::new(1.0, 0.0);
            for block in &factorization(x)?.torsion {
                for chi in &block.characters {
                    w_product *= root_number(chi)?;
                }
            }
            Ok(FuncEqReport {
                kind: FuncEqKind::Torsion,
                s,
                lhs,
                rhs,
                sign,
                residual,
                root_number_product: Some(w_product),
            })
        }
        _ => Err(Error::MixedFunctionalEquation),
    }
}
