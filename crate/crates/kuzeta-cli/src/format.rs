//! Shared rendering: fraction strings, factored integers, complex values.
//! Text and structured output go through the same functions, so fraction
//! strings are identical in both.

use kuzeta::arith::{factor_integer, numer_abs};
use kuzeta::zeta::{FactorValue, TotalValue};
use kuzeta::{Nat, Rational, C64};
use num::traits::{One, Signed, Zero};

/// "n/d", or plain "n" when the denominator is 1.
pub fn fraction(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Factored rendering "2^3 * 3^2 * 5" with probable-prime annotations; falls
/// back to the plain digits if factoring gave a residual. Effort shrinks for
/// huge inputs: special-value numerators can run to thousands of digits, and
/// burning a full rho budget on them just to decorate output is pointless.
pub fn factored(n: &Nat) -> String {
    if n.is_zero() {
        return "0".into();
    }
    if n.is_one() {
        return "1".into();
    }
    let effort = if n.bits() <= 512 { 1_000_000 } else { 10_000 };
    let f = factor_integer(n, effort);
    if f.is_complete() {
        f.to_string()
    } else {
        n.to_string()
    }
}

/// "32760 = 2^3 * 3^2 * 5 * 7 * 13", or just the digits when the factored
/// form adds nothing.
pub fn with_factorization(n: &Nat) -> String {
    let plain = n.to_string();
    let fact = factored(n);
    if fact == plain {
        plain
    } else {
        format!("{plain} = {fact}")
    }
}

/// Fraction with factored numerator and denominator where that is readable.
pub fn fraction_factored(q: &Rational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let group = |s: String| {
        if s.contains(' ') {
            format!("({s})")
        } else {
            s
        }
    };
    let num = numer_abs(q);
    let den = kuzeta::arith::denom(q);
    let sign = if q.is_negative() { "-" } else { "" };
    if den.is_one() {
        format!("{sign}{}", factored(&num))
    } else {
        format!("{sign}{} / {}", group(factored(&num)), group(factored(&den)))
    }
}

pub fn factor_value(v: &FactorValue) -> String {
    match v {
        FactorValue::Exact(q) => fraction(q),
        FactorValue::ZeroOfOrder(o) => format!("0 (zero of order {o})"),
        FactorValue::PoleOfOrder(o) => format!("pole of order {o}"),
    }
}

pub fn total_value(v: &TotalValue) -> String {
    match v {
        TotalValue::Exact(q) => fraction(q),
        TotalValue::ZeroOfOrder(o) => format!("0 (zero of order {o})"),
        TotalValue::PoleOfOrder(o) => format!("pole of order {o}"),
    }
}

pub fn complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else if z.im < 0.0 {
        format!("{:.12}{:.12}i", z.re, z.im)
    } else {
        format!("{:.12}+{:.12}i", z.re, z.im)
    }
}

/// Parse "2.3+0.7i", "1.7", "-0.5i", "2-0.3i".
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || format!("cannot parse complex number \"{text}\"");
    if s.is_empty() {
        return Err(err());
    }
    if !s.ends_with('i') {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| err());
    }
    let body = &s[..s.len() - 1];
    // find the split between real and imaginary parts: the last +/- that is
    // not leading and not part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            split = Some(i);
            break;
        }
    }
    match split {
        None => {
            // purely imaginary: "i", "-i", "0.7i"
            let im = match body {
                "" => 1.0,
                "-" => -1.0,
                "+" => 1.0,
                other => other.parse::<f64>().map_err(|_| err())?,
            };
            Ok(C64::new(0.0, im))
        }
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| err())?;
            let imtext = &body[i..];
            let im = match imtext {
                "+" => 1.0,
                "-" => -1.0,
                other => other.parse::<f64>().map_err(|_| err())?,
            };
            Ok(C64::new(re, im))
        }
    }
}

/// Parse a signed inclusive degree range "lo..hi".
pub fn parse_degree_range(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("degree range must look like lo..hi, got \"{text}\""))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower degree \"{lo}\""))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper degree \"{hi}\""))?;
    if lo > hi {
        return Err(format!("empty degree range {lo}..{hi}"));
    }
    Ok((lo, hi))
}
