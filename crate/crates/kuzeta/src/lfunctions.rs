//! Dirichlet L-functions: exact special values through generalized Bernoulli
//! numbers, rational Galois-orbit products, and the numeric side (Hurwitz
//! decomposition, Gauss sums, root numbers, completed forms).
//!
//! Exact path: B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f) in
//! Q(zeta_{ord chi}), and L(1-k, chi) = -B_{k,chi}/k for primitive nontrivial
//! chi. The trivial character delegates to the Riemann zeta special values.
//! Orbit products over conjugation-closed character sets are certified
//! rational by exact coefficient inspection, never by rounding.

use crate::arith::rational;
use crate::bernoulli::{bernoulli_number, bernoulli_polynomial, zeta_special_value};
use crate::characters::DirichletCharacter;
use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use crate::numeric::{cpow_real, gamma, is_half_gamma_pole, zeta_numeric};
use crate::{Rational, C64};
use num::integer::lcm;
use num::traits::{One, Zero};
use std::f64::consts::PI;

// the numeric backbone behind l_numeric
pub use crate::numeric::hurwitz_zeta_numeric;

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    let conductor = chi.conductor();
    if conductor != chi.modulus() {
        return Err(Error::ImprimitiveCharacter {
            modulus: chi.modulus(),
            conductor,
        });
    }
    Ok(())
}

/// B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f), exact in
/// Q(zeta_{ord chi}), at the character's own modulus f. For the trivial
/// character of modulus 1 this returns B_k itself (so B_{1,triv} = -1/2,
/// keeping the shared convention with the zeta side).
pub fn generalized_bernoulli(k: u32, chi: &DirichletCharacter) -> CyclotomicElement {
    let f = chi.modulus();
    if f == 1 {
        return CyclotomicElement::from_rational(1, bernoulli_number(k as usize));
    }
    let order = chi.order();
    let table = chi.value_exponent_table();
    // bucket the rational values B_k(a/f) by the root-of-unity exponent of
    // chi(a), then assemble a single polynomial in zeta_ord and reduce once
    let mut buckets = vec![Rational::zero(); order as usize];
    for a in 1..=f {
        if let Some(t) = table[(a % f) as usize] {
            let x = Rational::new((a as i64).into(), (f as i64).into());
            buckets[t as usize] += bernoulli_polynomial(k as usize, &x);
        }
    }
    let mut acc = CyclotomicElement::zero(order);
    for (t, b) in buckets.into_iter().enumerate() {
        if !b.is_zero() {
            let term = CyclotomicElement::root_of_unity(order, t as u64).scale(&b);
            acc = acc.add(&term).expect("same modulus");
        }
    }
    let f_pow = num::pow::Pow::pow(
        Rational::from(crate::Int::from(f)),
        (k as i64) - 1,
    );
    acc.scale(&f_pow)
}

/// Exact L(m, chi) = L(1-k, chi) = -B_{k,chi}/k for m <= 0, chi primitive.
/// The trivial character (modulus 1) delegates to the zeta special values;
/// imprimitive characters are rejected.
pub fn l_special_value(m: i64, chi: &DirichletCharacter) -> Result<CyclotomicElement> {
    if m > 0 {
        return Err(Error::PositiveSpecialArgument(m));
    }
    if chi.is_trivial() && chi.modulus() == 1 {
        return Ok(CyclotomicElement::from_rational(1, zeta_special_value(m)?));
    }
    require_primitive(chi)?;
    let k = (1 - m) as u32;
    let b = generalized_bernoulli(k, chi);
    Ok(b.scale(&rational(-1, k as i64)))
}

/// Exact product of L(m, primitive_of(chi)) over a conjugation-closed list,
/// certified rational. The empty product is 1.
pub fn orbit_product(m: i64, chars: &[DirichletCharacter]) -> Result<Rational> {
    if chars.is_empty() {
        return Ok(Rational::one());
    }
    let values: Vec<CyclotomicElement> = chars
        .iter()
        .map(|chi| l_special_value(m, &chi.primitive_of()))
        .collect::<Result<_>>()?;
    let target = values.iter().map(|v| v.modulus()).fold(1, lcm);
    let mut prod = CyclotomicElement::one(target);
    for v in values {
        prod = prod.mul(&v.embed(target)?)?;
    }
    prod.as_rational()
}

// ---------------------------------------------------------------------------
// Numeric side
// ---------------------------------------------------------------------------

/// Real digamma, for the s = 1 values of L-functions of nontrivial
/// characters (where the Hurwitz poles cancel).
fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 8.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    acc + x.ln()
        - 0.5 / x
        - inv2
            * (1.0 / 12.0
                - inv2
                    * (1.0 / 120.0
                        - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
}

fn unit_root(order: u64, t: u64) -> C64 {
    let theta = 2.0 * PI * (t % order) as f64 / order as f64;
    C64::new(theta.cos(), theta.sin())
}

/// 1/Gamma(z), exactly zero at the poles of Gamma.
fn recip_gamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-12 {
        return C64::new(0.0, 0.0);
    }
    1.0 / gamma(z)
}

/// Hurwitz-decomposition route: f^{-s} sum_a chi(a) zeta(s, a/f) with exact
/// character values applied after the sums. Stable for Re(s) >= -1; deep in
/// the left half-plane the f^{-s} prefactor amplifies rounding, so callers
/// switch to the functional-equation route there.
fn l_by_hurwitz(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    let f = chi.modulus();
    let order = chi.order();
    let table = chi.value_exponent_table();
    let mut buckets = vec![C64::new(0.0, 0.0); order as usize];
    for a in 1..f {
        if let Some(t) = table[a as usize] {
            let offset = rational(a as i64, f as i64);
            buckets[t as usize] += hurwitz_zeta_numeric(s, &offset)?;
        }
    }
    let mut acc = C64::new(0.0, 0.0);
    for (t, b) in buckets.into_iter().enumerate() {
        acc += unit_root(order, t as u64) * b;
    }
    Ok(cpow_real(f as f64, -s) * acc)
}

/// L(s, chi) for primitive chi: the Hurwitz decomposition where it is
/// stable, the completed functional equation (with reciprocal Gamma, so
/// trivial zeros come out exactly zero) for Re(s) < -1. Pole only for the
/// trivial character at s = 1.
pub fn l_numeric(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    require_primitive(chi)?;
    let f = chi.modulus();
    if f == 1 {
        return zeta_numeric(s);
    }
    let order = chi.order();
    let table = chi.value_exponent_table();
    if s.re == 1.0 && s.im == 0.0 {
        // the Hurwitz poles cancel for nontrivial chi:
        // L(1, chi) = -(1/f) sum_a chi(a) psi(a/f)
        let mut acc = C64::new(0.0, 0.0);
        for a in 1..f {
            if let Some(t) = table[a as usize] {
                acc += unit_root(order, t) * digamma(a as f64 / f as f64);
            }
        }
        return Ok(-acc / f as f64);
    }
    if s.re >= -1.0 {
        return l_by_hurwitz(s, chi);
    }
    // L(s, chi) = eps(chi) (f/pi)^{(1-2s)/2} Gamma((1-s+a)/2) / Gamma((s+a)/2)
    //             * L(1-s, conj chi),  a = 0 (even) or 1 (odd),
    // with eps(chi) = tau(chi) / (i^a sqrt(f))
    let a = if chi.is_even() { 0.0 } else { 1.0 };
    let tau = gauss_sum_numeric(chi)?;
    let eps = tau / (C64::new(0.0, 1.0).powf(a) * (f as f64).sqrt());
    let one = C64::new(1.0, 0.0);
    let reflected = l_by_hurwitz(one - s, &chi.conjugate())?;
    Ok(eps
        * cpow_real(f as f64 / PI, (one - 2.0 * s) / 2.0)
        * gamma((one - s + a) / 2.0)
        * recip_gamma((s + a) / 2.0)
        * reflected)
}

/// Gauss sum tau(chi) = sum_{a=1}^{f} chi(a) e^{2 pi i a / f} for primitive
/// chi, by direct summation over the conductor.
pub fn gauss_sum_numeric(chi: &DirichletCharacter) -> Result<C64> {
    require_primitive(chi)?;
    let f = chi.modulus();
    if f == 1 {
        return Ok(C64::new(1.0, 0.0));
    }
    let order = chi.order();
    let table = chi.value_exponent_table();
    let mut acc = C64::new(0.0, 0.0);
    for a in 1..=f {
        if let Some(t) = table[(a % f) as usize] {
            let theta = 2.0 * PI * a as f64 / f as f64;
            acc += unit_root(order, t) * C64::new(theta.cos(), theta.sin());
        }
    }
    Ok(acc)
}

/// Root number W(chi) = tau(chi) / sqrt(f) for even primitive chi; |W| = 1.
pub fn root_number(chi: &DirichletCharacter) -> Result<C64> {
    require_primitive(chi)?;
    if !chi.is_even() {
        return Err(Error::OddCharacter);
    }
    Ok(gauss_sum_numeric(chi)? / (chi.modulus() as f64).sqrt())
}

/// Completed L-function Lambda(s, chi) = (f/pi)^{s/2} Gamma(s/2) L(s, chi)
/// for even primitive chi; satisfies Lambda(s, chi) = W(chi)
/// Lambda(1-s, conj chi). Gamma-pole arguments are rejected.
pub fn completed_l_numeric(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    require_primitive(chi)?;
    if !chi.is_even() {
        return Err(Error::OddCharacter);
    }
    if is_half_gamma_pole(s) {
        return Err(Error::GammaPole(format!("{s}")));
    }
    let f = chi.modulus() as f64;
    Ok(cpow_real(f / PI, s / 2.0) * gamma(s / 2.0) * l_numeric(s, chi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::denom;
    use crate::characters::{dir_prime_set, DirichletCharacter};
    use crate::Nat;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        let scale = 1.0f64.max(a.norm()).max(b.norm());
        (a - b).norm() <= tol * scale
    }

    fn conductor9_block() -> Vec<DirichletCharacter> {
        dir_prime_set(3).unwrap().remove(0).characters
    }

    #[test]
    fn generalized_bernoulli_reduces_to_ordinary() {
        let trivial = DirichletCharacter::trivial(1);
        assert_eq!(
            generalized_bernoulli(12, &trivial).as_rational().unwrap(),
            rational(-691, 2730)
        );
        assert_eq!(
            generalized_bernoulli(1, &trivial).as_rational().unwrap(),
            rational(-1, 2)
        );
    }

    #[test]
    fn l_value_of_trivial_character_is_zeta() {
        let trivial = DirichletCharacter::trivial(1);
        assert_eq!(
            l_special_value(-11, &trivial).unwrap().as_rational().unwrap(),
            rational(691, 32760)
        );
    }

    #[test]
    fn imprimitive_characters_are_rejected() {
        let lifted = DirichletCharacter::trivial(21);
        assert!(matches!(
            l_special_value(-1, &lifted),
            Err(Error::ImprimitiveCharacter { .. })
        ));
    }

    #[test]
    fn galois_equivariance_of_generalized_bernoulli() {
        for chi in conductor9_block() {
            {
                let t = 2u64;
                // chi^t corresponds to zeta -> zeta^t on the value
                let lhs = generalized_bernoulli(6, &chi.power(t));
                let rhs = generalized_bernoulli(6, &chi).galois(t);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn orbit_product_at_minus_five_for_ell_three() {
        // (2^2 * 7 * 43 * 1171) / 3
        let block = conductor9_block();
        let value = orbit_product(-5, &block).unwrap();
        assert_eq!(value, rational(4 * 7 * 43 * 1171, 3));
    }

    #[test]
    fn orbit_product_vanishes_at_zero_with_denominator_one() {
        // at m = 0 (k = 1) every even character value is 0, and denom(0) = 1
        let block = conductor9_block();
        let value = orbit_product(0, &block).unwrap();
        assert!(value.is_zero());
        assert_eq!(denom(&value), Nat::one());
        assert!(orbit_product(0, &[]).unwrap().is_one());
    }

    #[test]
    fn carlitz_denominators_for_small_ell() {
        for ell in [3u64, 5] {
            let block = dir_prime_set(ell).unwrap().remove(0).characters;
            for k in 1..=10i64 {
                let value = orbit_product(1 - k, &block).unwrap();
                let expect = if (k as u64).is_multiple_of(ell - 1) {
                    Nat::from(ell)
                } else {
                    Nat::one()
                };
                assert_eq!(denom(&value), expect, "ell = {ell}, k = {k}");
            }
        }
    }

    #[test]
    fn numeric_matches_exact_special_values() {
        for chi in conductor9_block() {
            for k in 1..=8i64 {
                let exact = l_special_value(1 - k, &chi).unwrap().to_c64();
                let numeric = l_numeric(C64::new((1 - k) as f64, 0.0), &chi).unwrap();
                assert!(
                    close(exact, numeric, 1e-9),
                    "k = {k}: exact {exact}, numeric {numeric}"
                );
            }
        }
    }

    #[test]
    fn conjugate_characters_give_conjugate_values() {
        let block = conductor9_block();
        let s = C64::new(-2.5, 0.0);
        let a = l_numeric(s, &block[0]).unwrap();
        let b = l_numeric(s, &block[1]).unwrap();
        assert!(close(a.conj(), b, 1e-10));
    }

    #[test]
    fn l_at_one_is_finite_for_nontrivial_characters() {
        // cross-check L(1, chi) against a direct partial Euler product
        let chi = &conductor9_block()[0];
        let l1 = l_numeric(C64::new(1.0, 0.0), chi).unwrap();
        let table = chi.value_exponent_table();
        let order = chi.order();
        let mut prod = C64::new(1.0, 0.0);
        for p in crate::arith::primes_up_to(2_000_000) {
            if let Some(t) = table[(p % 9) as usize] {
                prod *= 1.0 / (C64::new(1.0, 0.0) - unit_root(order, t) / p as f64);
            }
        }
        assert!(close(l1, prod, 1e-4), "L(1) = {l1}, Euler ~ {prod}");

        let trivial = DirichletCharacter::trivial(1);
        assert!(l_numeric(C64::new(1.0, 0.0), &trivial).is_err());
    }

    #[test]
    fn gauss_sum_magnitudes() {
        for chi in conductor9_block() {
            let tau = gauss_sum_numeric(&chi).unwrap();
            assert!((tau.norm() - 3.0).abs() < 1e-10, "|tau| = {}", tau.norm());
        }
        let trivial = DirichletCharacter::trivial(1);
        assert!(close(gauss_sum_numeric(&trivial).unwrap(), C64::new(1.0, 0.0), 1e-12));
    }

    #[test]
    fn gauss_sum_conjugation_identity() {
        // tau(chi) tau(conj chi) = chi(-1) f for primitive chi
        let block = conductor9_block();
        let t1 = gauss_sum_numeric(&block[0]).unwrap();
        let t2 = gauss_sum_numeric(&block[1]).unwrap();
        assert!(close(t1 * t2, C64::new(9.0, 0.0), 1e-10));
    }

    #[test]
    fn root_numbers() {
        let trivial = DirichletCharacter::trivial(1);
        assert!(close(root_number(&trivial).unwrap(), C64::new(1.0, 0.0), 1e-12));

        let block = conductor9_block();
        let w1 = root_number(&block[0]).unwrap();
        let w2 = root_number(&block[1]).unwrap();
        assert!((w1.norm() - 1.0).abs() < 1e-9);
        assert!(close(w1 * w2, C64::new(1.0, 0.0), 1e-9), "W(chi) W(conj chi) = 1");

        // odd characters are rejected
        let quad3 = crate::characters::enumerate_characters(3)
            .into_iter()
            .find(|c| c.order() == 2)
            .unwrap();
        assert!(matches!(root_number(&quad3), Err(Error::OddCharacter)));
    }

    #[test]
    fn completed_l_of_trivial_character_is_completed_zeta() {
        let trivial = DirichletCharacter::trivial(1);
        for s in [C64::new(2.3, 0.7), C64::new(0.5, 3.0), C64::new(3.0, 0.0)] {
            let a = completed_l_numeric(s, &trivial).unwrap();
            let b = crate::numeric::completed_zeta(s).unwrap();
            assert!(close(a, b, 1e-12), "{a} vs {b}");
        }
    }

    #[test]
    fn completed_functional_equation_conductor_nine() {
        let block = conductor9_block();
        let s = C64::new(2.3, 0.7);
        for (chi, conj) in [(&block[0], &block[1]), (&block[1], &block[0])] {
            let lhs = completed_l_numeric(s, chi).unwrap();
            let w = root_number(chi).unwrap();
            let rhs = w * completed_l_numeric(C64::new(1.0, 0.0) - s, conj).unwrap();
            let resid = (lhs - rhs).norm();
            assert!(resid <= 1e-8, "residual {resid}");
        }
        // gamma poles rejected
        assert!(completed_l_numeric(C64::new(-2.0, 0.0), &block[0]).is_err());
    }
}
