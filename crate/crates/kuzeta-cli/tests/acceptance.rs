//! Acceptance suite: one test per criterion, each printing a pass line and
//! holding its stated runtime budget. Exact assertions carry zero tolerance;
//! numeric ones pin the tolerance stated with the criterion.

use kuzeta::arith::{denom, prime_to_part, rational};
use kuzeta::bernoulli::{bernoulli_number, von_staudt_clausen_denominator, zeta_special_value};
use kuzeta::characters::{dir_prime_set, enumerate_characters};
use kuzeta::ku::{cpn, moore, sphere, suspend, wedge, KTheoryDatum, WeightCell};
use kuzeta::lfunctions::{
    completed_l_numeric, generalized_bernoulli, l_numeric, l_special_value, orbit_product,
    root_number,
};
use kuzeta::numeric::{zeta_numeric, EULER_GAMMA};
use kuzeta::zeta::{
    euler_product_truncated, factorized_numeric_value, functional_equation_residual,
    homotopy_group_order, provisional_factorization, provisional_limit_numeric, vanishing_order,
    zeta_ku_special_value,
};
use kuzeta::{Nat, Rational, C64};
use num::traits::{One, ToPrimitive};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::str::FromStr;
use std::time::{Duration, Instant};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kuzeta"))
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn budget(t: Instant, secs: u64, label: &str) {
    let elapsed = t.elapsed();
    assert!(
        elapsed < Duration::from_secs(secs),
        "{label}: took {elapsed:?}, budget {secs}s"
    );
}

const BIG_PRIME: &str = "163933047708171216095114393777711";

#[test]
fn criterion_01_moore21_spotlight() {
    let t = Instant::now();

    // exact library values, zero tolerance
    let report = zeta_ku_special_value(&moore(21).unwrap(), -5).unwrap();
    assert_eq!(report.torsion.len(), 2);
    assert_eq!(report.torsion[0].ell, 3);
    assert_eq!(report.torsion[0].value, rational(4 * 7 * 43 * 1171, 3));
    assert_eq!(report.torsion[1].ell, 7);
    let big = num::BigInt::from_str(BIG_PRIME).unwrap();
    let expect7 = Rational::new(
        num::BigInt::from(64) * num::BigInt::from(138054547u64) * &big,
        7.into(),
    );
    assert_eq!(report.torsion[1].value, expect7);
    assert_eq!(report.total_denominator().unwrap(), Nat::from(3u32));

    // and through the CLI
    let out = run(&["value", "moore21", "--at", "-5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2^2 * 7 * 43 * 1171"));
    assert!(text.contains(&format!("2^6 * 138054547 * {BIG_PRIME}")));
    assert!(text.contains("denominator(total): 3"));

    budget(t, 5, "criterion 1");
    println!("criterion 1 (moore-21 special value at -5, exact): PASS");
}

#[test]
fn criterion_02_homotopy_order_spotlight() {
    let t = Instant::now();

    let out = run(&["orders", "moore21", "--degrees", "-13..-13"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("-13: 21 (modulo primes {2})"));

    // moore(3) over all valid odd degrees in -30..-5, against an independent
    // recomputation of the denominator rule: at degree d = 2k-1 the argument
    // is k+1 = 1-(-k), and the orbit denominator is 3 exactly when 2 | k
    let out = run(&["orders", &data("moore3.toml"), "--degrees", "-30..-5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for d in (-30i64..=-5).filter(|d| d % 2 != 0) {
        assert!(d < -3, "all odd degrees here sit in the left branch");
        let k = (d + 1) / 2;
        let expect = if k % 2 == 0 { 3u64 } else { 1 };
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("{d}: ")))
            .unwrap_or_else(|| panic!("no row for degree {d}"));
        assert!(
            line.contains(&format!("{d}: {expect} ")),
            "degree {d}: expected order {expect}, row was \"{line}\""
        );
        // library agrees
        let h = homotopy_group_order(&moore(3).unwrap(), d).unwrap();
        assert_eq!(h.order, Nat::from(expect));
    }

    budget(t, 10, "criterion 2");
    println!("criterion 2 (homotopy orders: moore-21 at -13 and the moore-3 table): PASS");
}

#[test]
fn criterion_03_sphere_adams_baird_ravenel() {
    let t = Instant::now();
    for k in 2..=20i64 {
        let d = 2 * k - 1;
        let h = homotopy_group_order(&sphere(), d).unwrap();
        let zeta_value = zeta_special_value(1 - k).unwrap();
        let expect = prime_to_part(&denom(&zeta_value), &[2]);
        assert_eq!(h.order, expect, "degree {d}");
        // von Staudt-Clausen cross-check on the underlying Bernoulli number
        if k % 2 == 0 {
            assert_eq!(
                denom(&bernoulli_number(k as usize)),
                von_staudt_clausen_denominator(k as u64),
                "B_{k}"
            );
        } else {
            assert!(zeta_value.numer().to_i64() == Some(0), "trivial zero at 1-{k}");
        }
    }
    budget(t, 2, "criterion 3");
    println!("criterion 3 (sphere orders = odd part of denom(zeta(1-k)), k = 2..20): PASS");
}

#[test]
fn criterion_04_691_cancellation() {
    let t = Instant::now();
    let x = KTheoryDatum::new("cofiber-alpha3")
        .with_cell(0, WeightCell::free(1))
        .with_cell(678, WeightCell::free(1));
    let report = zeta_ku_special_value(&x, -11).unwrap();

    // the two weight factors are zeta(-11) and zeta(-689)
    let d11 = denom(&zeta_special_value(-11).unwrap());
    let d689 = denom(&zeta_special_value(-689).unwrap());
    assert_eq!(d11, Nat::from(32760u32));
    assert_eq!(d689, Nat::from(387923085396u64));

    let per_factor = &report.per_factor_denominator_product;
    assert_eq!(*per_factor, &d11 * &d689, "product 32760 * 387923085396");

    let p691 = Nat::from(691u32);
    assert!(
        per_factor % &p691 == Nat::from(0u32),
        "per-factor product contains 691"
    );
    let total_denominator = report.total_denominator().unwrap();
    assert!(
        &total_denominator % &p691 != Nat::from(0u32),
        "691 cancels out of the total: denom(total) = {total_denominator}"
    );
    // the cancellation is exactly one factor of 691
    assert_eq!(&total_denominator * &p691, per_factor.clone());

    budget(t, 60, "criterion 4");
    println!("criterion 4 (691-cancellation on the alpha-3 cofiber at -11, exact): PASS");
}

#[test]
fn criterion_05_carlitz_suite() {
    let t = Instant::now();
    for ell in [3u64, 5, 7, 11, 13] {
        let block = dir_prime_set(ell).unwrap().remove(0).characters;
        for k in 1..=24i64 {
            let value = orbit_product(1 - k, &block).unwrap();
            let expect = if (k as u64).is_multiple_of(ell - 1) {
                Nat::from(ell)
            } else {
                Nat::one()
            };
            assert_eq!(denom(&value), expect, "ell = {ell}, k = {k}");
        }
    }
    budget(t, 30, "criterion 5");
    println!("criterion 5 (Carlitz denominator law, ell in {{3,5,7,11,13}}, k = 1..24): PASS");
}

#[test]
fn criterion_06_cpn_factorization_and_poles() {
    let t = Instant::now();
    for n in 0..=10i64 {
        let f = provisional_factorization(&cpn(n as u32)).unwrap();
        let expect: BTreeMap<i64, i64> = (0..=n).map(|w| (w, 1)).collect();
        assert_eq!(f, expect, "cpn({n})");
    }
    // the sphere's factor reproduces the zeta pole at 1 and trivial zeros
    assert_eq!(vanishing_order(&sphere(), 1).unwrap(), -1);
    for m in [-2i64, -4, -6, -8] {
        assert_eq!(vanishing_order(&sphere(), m).unwrap(), 1, "trivial zero at {m}");
    }
    // weight shifts move them
    let shifted = suspend(&sphere(), 4).unwrap();
    assert_eq!(vanishing_order(&shifted, 3).unwrap(), -1);
    assert_eq!(vanishing_order(&shifted, 0).unwrap(), 1);
    // cancellation at s = 1 for cpn(3)
    assert_eq!(vanishing_order(&cpn(3), 1).unwrap(), 0);
    budget(t, 1, "criterion 6");
    println!("criterion 6 (cpn factorization, pole/zero orders): PASS");
}

#[test]
fn criterion_07_euler_product_convergence() {
    let t = Instant::now();
    let builtins: Vec<KTheoryDatum> = vec![
        sphere(),
        cpn(1),
        cpn(2),
        cpn(3),
        moore(3).unwrap(),
        moore(7).unwrap(),
        moore(21).unwrap(),
    ];
    for x in &builtins {
        let b = x.validate().unwrap().b;
        let s = C64::new(2.0 + b as f64 + 1.0, 0.0);
        let truncated = euler_product_truncated(x, s, 100_000).unwrap();
        let reference = factorized_numeric_value(x, s).unwrap();
        let diff = (truncated - reference).norm();
        assert!(diff <= 1e-6, "{}: |difference| = {diff:e}", x.name);
    }
    budget(t, 30, "criterion 7");
    println!("criterion 7 (Euler-product truncation vs factorized value, all builtins): PASS");
}

#[test]
fn criterion_08_functional_equations() {
    let t = Instant::now();
    let grid = [
        C64::new(2.3, 0.7),
        C64::new(2.2, 0.4),
        C64::new(1.6, -0.9),
        C64::new(0.5, 1.3),
        C64::new(2.9, 0.1),
    ];
    // completed provisional equation for sphere and cpn(2)
    for x in [sphere(), cpn(2)] {
        for &s in &grid {
            let r = functional_equation_residual(&x, s).unwrap();
            assert!(r.residual <= 1e-8, "{} at {s}: residual {}", x.name, r.residual);
        }
    }
    // Lambda(s, chi) = W(chi) Lambda(1-s, conj chi) for all even primitive
    // characters of conductor 9 and 25
    for modulus in [9u64, 25] {
        let evens: Vec<_> = enumerate_characters(modulus)
            .into_iter()
            .filter(|chi| chi.is_even() && !chi.is_trivial() && chi.conductor() == modulus)
            .collect();
        assert_eq!(evens.len(), if modulus == 9 { 2 } else { 8 });
        let mut w_product = C64::new(1.0, 0.0);
        for chi in &evens {
            let w = root_number(chi).unwrap();
            w_product *= w;
            let conj = chi.conjugate();
            for &s in &grid {
                let lhs = completed_l_numeric(s, chi).unwrap();
                let rhs = w * completed_l_numeric(C64::new(1.0, 0.0) - s, &conj).unwrap();
                let resid = (lhs - rhs).norm();
                assert!(
                    resid <= 1e-8,
                    "conductor {modulus} character at {s}: residual {resid}"
                );
            }
        }
        // root-number product over the whole even primitive set
        let dist = (w_product - C64::new(1.0, 0.0))
            .norm()
            .min((w_product + C64::new(1.0, 0.0)).norm());
        assert!(dist <= 1e-8, "conductor {modulus}: product {w_product}");
    }
    // root numbers over the order-3 block multiply to +1
    let block = dir_prime_set(3).unwrap().remove(0).characters;
    let mut w = C64::new(1.0, 0.0);
    for chi in &block {
        w *= root_number(chi).unwrap();
    }
    assert!((w - C64::new(1.0, 0.0)).norm() <= 1e-8);

    budget(t, 30, "criterion 8");
    println!("criterion 8 (completed functional equations and root numbers): PASS");
}

#[test]
fn criterion_09_cpn3_limit_discrepancy_report() {
    let t = Instant::now();
    let report = provisional_limit_numeric(&cpn(3), 1).unwrap();
    let limit = report.value.re;

    let z3 = zeta_numeric(C64::new(3.0, 0.0)).unwrap().re;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let expansion = -z3 / (96.0 * pi2); // zeta'(-2) zeta(0) zeta(-1)
    let printed_with_gamma = -EULER_GAMMA * z3 / (96.0 * pi2);

    assert!(
        (limit - expansion).abs() <= 1e-6,
        "limit {limit} vs independent expansion {expansion}"
    );

    println!("criterion 9 report:");
    println!("  numeric limit of the cpn(3) factor product at s = 1: {limit:.12}");
    println!("  independent expansion  zeta'(-2) zeta(0) zeta(-1) = {expansion:.12}  (agrees to 1e-6)");
    println!(
        "  the value -gamma zeta(3)/(96 pi^2) = {printed_with_gamma:.12} differs by the factor gamma = {EULER_GAMMA:.12}"
    );
    println!("  this tool computes the limit independently and does not assert the gamma-bearing value");
    assert!(
        (limit - printed_with_gamma).abs() > 1e-4,
        "the two candidate values are visibly different; the computed limit sides with the expansion"
    );

    budget(t, 5, "criterion 9");
    println!("criterion 9 (cpn(3) limit at 1 with explicit discrepancy comparison): PASS");
}

#[test]
fn criterion_10_property_suites() {
    let t = Instant::now();

    // wedge multiplicativity of exact totals
    let m3 = moore(3).unwrap();
    let w = wedge(&sphere(), &m3).unwrap();
    for m in [-1i64, -3, -5, -7] {
        let a = zeta_ku_special_value(&sphere(), m).unwrap();
        let b = zeta_ku_special_value(&m3, m).unwrap();
        let c = zeta_ku_special_value(&w, m).unwrap();
        assert_eq!(
            c.total.exact().unwrap(),
            &(a.total.exact().unwrap() * b.total.exact().unwrap()),
            "wedge multiplicativity at {m}"
        );
    }

    // suspension shift
    let shifted = suspend(&cpn(2), 2).unwrap();
    let f = provisional_factorization(&shifted).unwrap();
    assert_eq!(f, BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
    for m in [-2i64, -4, -6] {
        assert_eq!(
            zeta_ku_special_value(&shifted, m).unwrap().total,
            zeta_ku_special_value(&cpn(2), m - 1).unwrap().total,
            "shift identity at {m}"
        );
    }

    // Galois equivariance of generalized Bernoulli numbers
    for n in [3u64, 5, 7] {
        for block in dir_prime_set(n).unwrap() {
            let chi = &block.characters[0];
            for a in 2..block.ell {
                let lhs = generalized_bernoulli(6, &chi.power(a));
                let rhs = generalized_bernoulli(6, chi).galois(a);
                assert_eq!(lhs, rhs, "ell = {}, a = {a}", block.ell);
            }
        }
    }

    // exact vs numeric L agreement
    for n in [3u64, 5, 7, 15, 21] {
        for block in dir_prime_set(n).unwrap() {
            for chi in &block.characters {
                for k in 1..=8i64 {
                    let exact = l_special_value(1 - k, &chi.primitive_of())
                        .unwrap()
                        .to_c64();
                    let numeric = l_numeric(C64::new((1 - k) as f64, 0.0), chi).unwrap();
                    let scale = 1.0f64.max(exact.norm());
                    assert!(
                        (exact - numeric).norm() <= 1e-8 * scale,
                        "n = {n}, ell = {}, k = {k}: exact {exact}, numeric {numeric}",
                        block.ell
                    );
                }
            }
        }
    }

    // von Staudt-Clausen through B_120
    for n in 1..=60u64 {
        assert_eq!(
            denom(&bernoulli_number(2 * n as usize)),
            von_staudt_clausen_denominator(2 * n),
            "B_{}",
            2 * n
        );
    }

    budget(t, 60, "criterion 10");
    println!("criterion 10 (wedge, suspension, Galois, exact-vs-numeric, von Staudt-Clausen): PASS");
}
