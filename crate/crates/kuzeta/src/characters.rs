//! Dirichlet characters: unit-group structure, enumeration, conductors,
//! primitive associates, parity, and the conductor-ell^2 order-ell character
//! blocks attached to square-free torsion orders.
//!
//! A character is stored as one exponent per fixed generator of (Z/m)*.
//! Generator choice is deterministic: the smallest primitive root for each
//! odd prime-power factor, and (-1, 5) at powers of two. Conductors and
//! conjugation then become exponent arithmetic plus small table scans.

use crate::arith::{euler_phi, is_square_free, small_prime_factors};
use crate::cyclotomic::CyclotomicElement;
use crate::error::{Error, Result};
use num::integer::{gcd, lcm};

/// Cyclic decomposition of (Z/m)*: each generator has the stated order, the
/// orders multiply to phi(m), and the generators jointly generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupStructure {
    pub modulus: u64,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let phi = euler_phi(m);
    let mut ord = phi;
    for q in small_prime_factors(phi) {
        while ord.is_multiple_of(q) && mod_pow(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

fn smallest_primitive_root(pe: u64) -> u64 {
    let phi = euler_phi(pe);
    (2..pe)
        .find(|&g| gcd(g, pe) == 1 && multiplicative_order(g, pe) == phi)
        .expect("odd prime powers have primitive roots")
}

/// CRT lift: x = g mod component, x = 1 mod (m / component).
fn crt_lift(g: u64, component: u64, m: u64) -> u64 {
    let other = m / component;
    if other == 1 {
        return g % m;
    }
    (0..other)
        .map(|t| g + component * t)
        .find(|&x| x % other == 1)
        .expect("crt solution exists")
}

/// Cyclic decomposition of (Z/m)* with the fixed generator convention.
pub fn unit_group_structure(m: u64) -> UnitGroupStructure {
    assert!(m >= 1);
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for p in small_prime_factors(m) {
        let mut pe = p;
        let mut rest = m / p;
        while rest.is_multiple_of(p) {
            pe *= p;
            rest /= p;
        }
        if p == 2 {
            match pe {
                2 => {}
                4 => {
                    generators.push(crt_lift(3, 4, m));
                    orders.push(2);
                }
                _ => {
                    generators.push(crt_lift(pe - 1, pe, m));
                    orders.push(2);
                    generators.push(crt_lift(5, pe, m));
                    orders.push(pe / 4);
                }
            }
        } else {
            generators.push(crt_lift(smallest_primitive_root(pe), pe, m));
            orders.push(euler_phi(pe));
        }
    }
    UnitGroupStructure { modulus: m, generators, orders }
}

/// Dirichlet character mod m, as exponents against the fixed generators:
/// chi(g_i) = zeta_{o_i}^{e_i}. Zero on residues not coprime to m.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: UnitGroupStructure,
    exponents: Vec<u64>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.modulus == other.group.modulus && self.exponents == other.exponents
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    pub fn trivial(m: u64) -> Self {
        let group = unit_group_structure(m);
        let exponents = vec![0; group.generators.len()];
        DirichletCharacter { group, exponents }
    }

    pub fn from_exponents(m: u64, exponents: Vec<u64>) -> Self {
        let group = unit_group_structure(m);
        assert_eq!(exponents.len(), group.generators.len());
        let exponents = exponents
            .iter()
            .zip(&group.orders)
            .map(|(e, o)| e % o)
            .collect();
        DirichletCharacter { group, exponents }
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| o / gcd(e, o))
            .fold(1, lcm)
    }

    /// chi(a) = zeta_M^{t(a)} with M the character order: t(a) for each
    /// residue a in 0..m, None where gcd(a, m) != 1 (value 0 there).
    pub fn value_exponent_table(&self) -> Vec<Option<u64>> {
        let m = self.group.modulus;
        let order = self.order();
        let l: u64 = self.group.orders.iter().copied().fold(1, lcm);
        let mut table = vec![None; m.max(1) as usize];
        // walk the whole group as an odometer over generator powers
        let r = self.group.generators.len();
        let mut ks = vec![0u64; r];
        let mut residue: u64 = 1 % m.max(1);
        let mut exponent_l: u64 = 0; // exponent of zeta_L
        loop {
            let t = if l == order {
                exponent_l
            } else {
                // chi has order M | L, so exponent_l is a multiple of L/M
                exponent_l / (l / order)
            };
            table[residue as usize] = Some(t % order.max(1));
            // advance odometer: multiply by g_i, reset completed wheels
            let mut i = 0;
            loop {
                if i == r {
                    return table;
                }
                ks[i] += 1;
                residue = ((residue as u128 * self.group.generators[i] as u128)
                    % m.max(1) as u128) as u64;
                exponent_l =
                    (exponent_l + self.exponents[i] * (l / self.group.orders[i])) % l.max(1);
                if ks[i] < self.group.orders[i] {
                    break;
                }
                // g_i^{o_i} = 1: residue and exponent already wrapped around
                ks[i] = 0;
                i += 1;
            }
        }
    }

    /// chi(a): a root of unity in Q(zeta_ord) when gcd(a, m) = 1, else 0.
    pub fn evaluate(&self, a: i64) -> CyclotomicElement {
        let m = self.group.modulus;
        let order = self.order();
        let a = a.rem_euclid(m.max(1) as i64) as u64;
        match self.value_exponent_table()[a as usize] {
            Some(t) => CyclotomicElement::root_of_unity(order, t),
            None => CyclotomicElement::zero(order),
        }
    }

    /// Even iff chi(-1) = 1.
    pub fn is_even(&self) -> bool {
        let m = self.group.modulus;
        if m <= 2 {
            return true;
        }
        self.value_exponent_table()[(m - 1) as usize] == Some(0)
    }

    /// Complex conjugate: exponent negation.
    pub fn conjugate(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| (o - e % o) % o)
            .collect();
        DirichletCharacter { group: self.group.clone(), exponents }
    }

    /// chi^t (exponent scaling).
    pub fn power(&self, t: u64) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| (e as u128 * t as u128 % o as u128) as u64)
            .collect();
        DirichletCharacter { group: self.group.clone(), exponents }
    }

    /// Smallest f | m such that chi factors through (Z/f)*.
    pub fn conductor(&self) -> u64 {
        let m = self.group.modulus;
        let table = self.value_exponent_table();
        let mut divisors: Vec<u64> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        'next: for f in divisors {
            // chi factors through (Z/f)* iff chi = 1 on a = 1 mod f, gcd(a,m) = 1
            let mut a = 1u64;
            while a <= m {
                if gcd(a, m) == 1 && table[(a % m.max(1)) as usize] != Some(0) {
                    continue 'next;
                }
                a += f;
            }
            return f;
        }
        m
    }

    /// The unique primitive character of modulus conductor(chi) inducing chi.
    pub fn primitive_of(&self) -> Self {
        let f = self.conductor();
        let m = self.group.modulus;
        if f == m {
            return self.clone();
        }
        let table = self.value_exponent_table();
        let my_order = self.order();
        let target = unit_group_structure(f);
        // chi factors through (Z/f)*: read off the exponent at each generator
        // of (Z/f)* by lifting it to a residue coprime to m
        let mut exponents = Vec::with_capacity(target.generators.len());
        for (g, o) in target.generators.iter().zip(&target.orders) {
            let lifted = (0..)
                .map(|t| g + f * t)
                .find(|&x| gcd(x % m.max(1), m) == 1)
                .expect("some lift is coprime to m");
            let t = table[(lifted % m.max(1)) as usize].expect("lift is coprime");
            // zeta_M^t = zeta_o^e with e = t * o / M
            debug_assert_eq!((t as u128 * *o as u128) % my_order as u128, 0);
            exponents.push((t as u128 * *o as u128 / my_order as u128) as u64 % *o);
        }
        DirichletCharacter { group: target, exponents }
    }

    /// Induce this character to a larger modulus m (conductor must divide m).
    pub fn induce_to(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.group.modulus) {
            return Err(Error::NonDivisibleModulus {
                from: self.group.modulus,
                to: m,
            });
        }
        let table = self.value_exponent_table();
        let my_order = self.order().max(1);
        let target = unit_group_structure(m);
        let f = self.group.modulus;
        let mut exponents = Vec::with_capacity(target.generators.len());
        for (g, o) in target.generators.iter().zip(&target.orders) {
            let t = table[(g % f.max(1)) as usize].expect("generator is coprime");
            debug_assert_eq!((t as u128 * *o as u128) % my_order as u128, 0);
            exponents.push((t as u128 * *o as u128 / my_order as u128) as u64 % *o);
        }
        Ok(DirichletCharacter { group: target, exponents })
    }
}

/// All phi(m) characters mod m, deterministic order (odometer over the fixed
/// generator exponents, first generator slowest).
pub fn enumerate_characters(m: u64) -> Vec<DirichletCharacter> {
    let group = unit_group_structure(m);
    let r = group.orders.len();
    let total: u64 = group.orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut exps = vec![0u64; r];
    loop {
        out.push(DirichletCharacter {
            group: group.clone(),
            exponents: exps.clone(),
        });
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < group.orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// One block per prime divisor of the square-free torsion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirPrimeBlock {
    pub ell: u64,
    pub characters: Vec<DirichletCharacter>,
}

/// For each prime ell | n, the ell-1 characters of modulus ell^2 with order
/// exactly ell. These are primitive of conductor ell^2, even, and closed
/// under conjugation. Requires n odd and square-free; n = 1 gives no blocks.
pub fn dir_prime_set(n: u64) -> Result<Vec<DirPrimeBlock>> {
    if n.is_multiple_of(2) || !is_square_free(n) {
        return Err(Error::NotOddSquareFree(n));
    }
    let mut blocks = Vec::new();
    for ell in small_prime_factors(n) {
        let group = unit_group_structure(ell * ell);
        debug_assert_eq!(group.orders, vec![ell * (ell - 1)]);
        let characters = (1..ell)
            .map(|j| DirichletCharacter {
                group: group.clone(),
                exponents: vec![j * (ell - 1)],
            })
            .collect();
        blocks.push(DirPrimeBlock { ell, characters });
    }
    Ok(blocks)
}
