//! Exact arithmetic in cyclotomic fields Q(zeta_m): enough to multiply
//! character values and generalized Bernoulli numbers, and to certify that
//! Galois-orbit products are rational.
//!
//! Elements are dense rational-coefficient polynomials in zeta_m, reduced
//! modulo the m-th cyclotomic polynomial. Moduli here are tiny (ell^2 for
//! small primes ell), so the dense representation wins on simplicity.

use crate::arith::euler_phi;
use crate::error::{Error, Result};
use crate::{Int, Rational, C64};
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::fmt;

/// Coefficients of the m-th cyclotomic polynomial, ascending degree, monic.
/// Computed by exact division of x^m - 1 by Phi_d over the proper divisors d.
pub fn cyclotomic_polynomial(m: u64) -> Vec<Int> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    if m == 1 {
        return vec![Int::from(-1), Int::from(1)];
    }
    let mut quotient = x_power_minus_one(m);
    for d in 1..m {
        if m.is_multiple_of(d) {
            quotient = poly_div_exact(&quotient, &cyclotomic_polynomial(d));
        }
    }
    quotient
}

fn x_power_minus_one(m: u64) -> Vec<Int> {
    let mut p = vec![Int::zero(); m as usize + 1];
    p[0] = Int::from(-1);
    p[m as usize] = Int::one();
    p
}

/// Exact division of integer polynomials, divisor monic. Panics if a
/// remainder is left; callers only divide known multiples.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![Int::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        let shift = i - dd;
        quot[shift] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let t = dj * &c;
            rem[shift + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// Exact element of Q(zeta_m): rational polynomial in zeta_m reduced mod
/// Phi_m, coefficient vector of length phi(m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    modulus: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    pub fn zero(m: u64) -> Self {
        CyclotomicElement {
            modulus: m,
            coeffs: vec![Rational::zero(); euler_phi(m) as usize],
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u64, q: Rational) -> Self {
        let mut e = Self::zero(m);
        e.coeffs[0] = q;
        e
    }

    /// zeta_m^e as an element of Q(zeta_m).
    pub fn root_of_unity(m: u64, e: u64) -> Self {
        let e = (e % m) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::reduce(m, poly)
    }

    fn reduce(m: u64, mut poly: Vec<Rational>) -> Self {
        let phi = euler_phi(m) as usize;
        let modpoly = cyclotomic_polynomial(m);
        while poly.len() > phi {
            let top = poly.len() - 1;
            let c = poly[top].clone();
            poly.truncate(top);
            if c.is_zero() {
                continue;
            }
            // x^top = x^{top-phi} * (x^phi - Phi_m(x))
            let shift = top - phi;
            for (j, mj) in modpoly.iter().enumerate().take(phi) {
                if !mj.is_zero() {
                    poly[shift + j] -= Rational::from(mj.clone()) * &c;
                }
            }
        }
        poly.resize(phi, Rational::zero());
        CyclotomicElement { modulus: m, coeffs: poly }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicElement { modulus: self.modulus, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut prod = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        Ok(Self::reduce(self.modulus, prod))
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Image under zeta_m -> zeta_{m'}^{m'/m}; requires m | m'.
    pub fn embed(&self, target: u64) -> Result<Self> {
        if !target.is_multiple_of(self.modulus) {
            return Err(Error::NonDivisibleModulus {
                from: self.modulus,
                to: target,
            });
        }
        let step = (target / self.modulus) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Ok(Self::reduce(target, poly))
    }

    /// Galois conjugate zeta_m -> zeta_m^a for gcd(a, m) = 1.
    pub fn galois(&self, a: u64) -> Self {
        let m = self.modulus;
        let mut poly = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((i as u64 * a) % m) as usize;
                poly[idx] += c;
            }
        }
        Self::reduce(m, poly)
    }

    /// The rational value if the element lies in Q; error otherwise.
    pub fn as_rational(&self) -> Result<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NonRationalElement)
        }
    }

    /// Numeric evaluation at zeta_m = exp(2 pi i / m).
    pub fn to_c64(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * PI * i as f64 / self.modulus as f64;
            acc += c.to_f64().expect("coefficient fits f64") * C64::new(theta.cos(), theta.sin());
        }
        acc
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*z{}", self.modulus)?,
                _ => write!(f, "{mag}*z{}^{i}", self.modulus)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
