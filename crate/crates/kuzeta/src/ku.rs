//! The K-theory datum of a finite CW-complex and its geometric constructions:
//! validation, wedge sums, even suspensions, Spanier-Whitehead duals, and the
//! built-in examples (sphere, complex projective spaces, Moore spectra).
//!
//! The datum records, per skeletal weight w, the even and odd Betti numbers
//! beta_{2w}, beta_{2w+1} and the square-free odd order n_w of the weight-w
//! torsion in KU^0. Everything the zeta machinery needs depends only on this.

use crate::arith::{is_square_free, small_prime_factors};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Whether the skeletal filtration of the K-theoretic torsion is known to
/// split completely. This is an input flag: detecting it from space-level
/// data is out of scope, and homotopy-order formulas require `Complete`
/// whenever torsion is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkeletalSplitting {
    Complete,
    Unknown,
}

/// One skeletal weight: beta_{2w}, beta_{2w+1}, and the torsion order n_w
/// (1 = no torsion).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightCell {
    pub beta_even: u32,
    pub beta_odd: u32,
    pub torsion_order: u64,
}

impl WeightCell {
    pub fn free(beta_even: u32) -> Self {
        WeightCell { beta_even, beta_odd: 0, torsion_order: 1 }
    }

    pub fn torsion(order: u64) -> Self {
        WeightCell { beta_even: 0, beta_odd: 0, torsion_order: order }
    }

    pub fn is_zero(&self) -> bool {
        self.beta_even == 0 && self.beta_odd == 0 && self.torsion_order == 1
    }
}

/// K-theory datum of a finite CW-complex (stably; negative weights allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTheoryDatum {
    pub name: String,
    /// Primes inverted throughout; must contain 2.
    pub excluded_primes: BTreeSet<u64>,
    pub weights: BTreeMap<i64, WeightCell>,
    pub skeletal_splitting: SkeletalSplitting,
}

/// Least and greatest weights carrying a nonzero cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub a: i64,
    pub b: i64,
}

impl KTheoryDatum {
    pub fn new(name: impl Into<String>) -> Self {
        KTheoryDatum {
            name: name.into(),
            excluded_primes: BTreeSet::from([2]),
            weights: BTreeMap::new(),
            skeletal_splitting: SkeletalSplitting::Unknown,
        }
    }

    pub fn with_cell(mut self, weight: i64, cell: WeightCell) -> Self {
        self.weights.insert(weight, cell);
        self
    }

    /// Nonzero cells only, ascending weight.
    pub fn cells(&self) -> impl Iterator<Item = (i64, &WeightCell)> {
        self.weights.iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (*w, c))
    }

    pub fn cell(&self, weight: i64) -> WeightCell {
        self.weights
            .get(&weight)
            .copied()
            .unwrap_or(WeightCell { beta_even: 0, beta_odd: 0, torsion_order: 1 })
    }

    pub fn has_torsion(&self) -> bool {
        self.cells().any(|(_, c)| c.torsion_order > 1)
    }

    pub fn is_even_concentrated(&self) -> bool {
        self.cells().all(|(_, c)| c.beta_odd == 0)
    }

    /// Confirms square-freeness and oddness of torsion orders and 2 in the
    /// excluded set; returns the weight bounds a, b.
    pub fn validate(&self) -> Result<Bounds> {
        if !self.excluded_primes.contains(&2) {
            return Err(Error::MissingTwo);
        }
        for (w, cell) in self.cells() {
            if cell.torsion_order > 1 {
                if cell.torsion_order % 2 == 0 {
                    return Err(Error::EvenTorsion { weight: w, order: cell.torsion_order });
                }
                if !is_square_free(cell.torsion_order) {
                    return Err(Error::TorsionNotSquareFree {
                        weight: w,
                        order: cell.torsion_order,
                    });
                }
            }
        }
        let a = self.cells().map(|(w, _)| w).min().ok_or(Error::EmptyDatum)?;
        let b = self.cells().map(|(w, _)| w).max().unwrap();
        Ok(Bounds { a, b })
    }

    /// Require beta_odd = 0 everywhere (homotopy-order and exact special
    /// value operations need this).
    pub fn require_even_concentrated(&self) -> Result<()> {
        for (w, c) in self.cells() {
            if c.beta_odd > 0 {
                return Err(Error::NotEvenConcentrated(w));
            }
        }
        Ok(())
    }
}

/// Wedge sum: Betti numbers add cellwise, torsion orders multiply cellwise
/// (orders of direct sums). Rejected if a weight would lose square-freeness.
pub fn wedge(x: &KTheoryDatum, y: &KTheoryDatum) -> Result<KTheoryDatum> {
    if x.excluded_primes != y.excluded_primes {
        return Err(Error::ExcludedPrimesMismatch);
    }
    let mut out = KTheoryDatum::new(format!("{} v {}", x.name, y.name));
    out.excluded_primes = x.excluded_primes.clone();
    out.skeletal_splitting = match (x.skeletal_splitting, y.skeletal_splitting) {
        (SkeletalSplitting::Complete, SkeletalSplitting::Complete) => SkeletalSplitting::Complete,
        _ => SkeletalSplitting::Unknown,
    };
    let weights: BTreeSet<i64> = x
        .cells()
        .map(|(w, _)| w)
        .chain(y.cells().map(|(w, _)| w))
        .collect();
    for w in weights {
        let cx = x.cell(w);
        let cy = y.cell(w);
        let order = cx.torsion_order.checked_mul(cy.torsion_order).ok_or(
            Error::WedgeTorsionCollision { weight: w, order: u64::MAX },
        )?;
        if order > 1 && !is_square_free(order) {
            return Err(Error::WedgeTorsionCollision { weight: w, order });
        }
        out.weights.insert(
            w,
            WeightCell {
                beta_even: cx.beta_even + cy.beta_even,
                beta_odd: cx.beta_odd + cy.beta_odd,
                torsion_order: order,
            },
        );
    }
    Ok(out)
}

/// Even suspension by `shift` (topological degree): weights move by shift/2.
/// Odd shifts would move data between even and odd degrees and are rejected.
pub fn suspend(x: &KTheoryDatum, shift: i64) -> Result<KTheoryDatum> {
    if shift % 2 != 0 {
        return Err(Error::OddSuspension(shift));
    }
    let half = shift / 2;
    let mut out = x.clone();
    out.name = if shift == 0 {
        x.name.clone()
    } else {
        format!("S^{shift} {}", x.name)
    };
    out.weights = x.weights.iter().map(|(w, c)| (w + half, *c)).collect();
    Ok(out)
}

/// Spanier-Whitehead dual of torsion-free data: weights negate on the even
/// part (H^{2w} of the dual is H^{-2w}), and odd cells reflect to -w-1.
/// Torsion is rejected: dualization shifts K-theoretic torsion by one degree,
/// out of the even-concentrated world this datum describes.
pub fn dual(x: &KTheoryDatum) -> Result<KTheoryDatum> {
    if x.has_torsion() {
        return Err(Error::DualOfTorsion);
    }
    let mut out = KTheoryDatum::new(format!("D({})", x.name));
    out.excluded_primes = x.excluded_primes.clone();
    out.skeletal_splitting = x.skeletal_splitting;
    for (w, c) in x.cells() {
        if c.beta_even > 0 {
            out.weights.entry(-w).or_insert(WeightCell::free(0)).beta_even += c.beta_even;
        }
        if c.beta_odd > 0 {
            out.weights.entry(-w - 1).or_insert(WeightCell::free(0)).beta_odd += c.beta_odd;
        }
    }
    Ok(out)
}

/// The sphere: a single free cell at weight 0.
pub fn sphere() -> KTheoryDatum {
    let mut x = KTheoryDatum::new("sphere").with_cell(0, WeightCell::free(1));
    x.skeletal_splitting = SkeletalSplitting::Complete;
    x
}

/// Complex projective n-space: one free cell in each weight 0..=n.
pub fn cpn(n: u32) -> KTheoryDatum {
    let mut x = KTheoryDatum::new(format!("cpn({n})"));
    x.skeletal_splitting = SkeletalSplitting::Complete;
    for w in 0..=n {
        x.weights.insert(w as i64, WeightCell::free(1));
    }
    x
}

/// Desuspended mod-q Moore spectrum: all Betti numbers zero, torsion of
/// order q at weight 0. Its Spanier-Whitehead dual is the mod-q Moore
/// spectrum itself, which is what the homotopy-order formulas report on.
/// q must be odd and square-free.
pub fn moore(q: u64) -> Result<KTheoryDatum> {
    if q < 3 || q.is_multiple_of(2) || !is_square_free(q) {
        return Err(Error::InvalidParameter(format!(
            "moore({q}): q must be odd, square-free, and > 1"
        )));
    }
    let mut x = KTheoryDatum::new(format!("moore({q})")).with_cell(0, WeightCell::torsion(q));
    x.skeletal_splitting = SkeletalSplitting::Complete;
    Ok(x)
}

/// Prime factors of all torsion orders, ascending, deduplicated.
pub fn torsion_primes(x: &KTheoryDatum) -> Vec<u64> {
    let mut set = BTreeSet::new();
    for (_, c) in x.cells() {
        if c.torsion_order > 1 {
            set.extend(small_prime_factors(c.torsion_order));
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_is_valid_with_zero_bounds() {
        let b = sphere().validate().unwrap();
        assert_eq!((b.a, b.b), (0, 0));
    }

    #[test]
    fn square_free_enforcement() {
        let bad = KTheoryDatum::new("bad").with_cell(0, WeightCell::torsion(9));
        assert!(matches!(bad.validate(), Err(Error::TorsionNotSquareFree { .. })));
        assert!(moore(9).is_err());

        let good = moore(21).unwrap();
        assert!(good.validate().is_ok());

        let even = KTheoryDatum::new("even").with_cell(0, WeightCell::torsion(6));
        assert!(matches!(even.validate(), Err(Error::EvenTorsion { .. })));
    }

    #[test]
    fn two_must_be_excluded() {
        let mut x = sphere();
        x.excluded_primes.clear();
        assert!(matches!(x.validate(), Err(Error::MissingTwo)));
    }

    #[test]
    fn wedge_adds_betti_and_multiplies_torsion() {
        let s2 = wedge(&sphere(), &sphere()).unwrap();
        assert_eq!(s2.cell(0).beta_even, 2);

        let m = wedge(&moore(3).unwrap(), &moore(7).unwrap()).unwrap();
        assert_eq!(m.cell(0).torsion_order, 21);
        assert!(m.validate().is_ok());

        // torsion collision: 3 * 3 = 9 is not square-free
        assert!(matches!(
            wedge(&moore(3).unwrap(), &moore(3).unwrap()),
            Err(Error::WedgeTorsionCollision { .. })
        ));
    }

    #[test]
    fn wedge_is_commutative_and_associative() {
        let x = cpn(1);
        let y = moore(3).unwrap();
        let z = sphere();
        let xy = wedge(&x, &y).unwrap();
        let yx = wedge(&y, &x).unwrap();
        assert_eq!(xy.weights, yx.weights);
        let a = wedge(&wedge(&x, &y).unwrap(), &z).unwrap();
        let b = wedge(&x, &wedge(&y, &z).unwrap()).unwrap();
        assert_eq!(a.weights, b.weights);
    }

    #[test]
    fn suspension() {
        let s2 = suspend(&sphere(), 2).unwrap();
        assert_eq!(s2.cell(1).beta_even, 1);
        assert!(s2.cell(0).is_zero());

        assert_eq!(suspend(&sphere(), 0).unwrap().weights, sphere().weights);
        let back = suspend(&suspend(&cpn(2), 2).unwrap(), -2).unwrap();
        assert_eq!(back.weights, cpn(2).weights);
        assert!(matches!(suspend(&sphere(), 3), Err(Error::OddSuspension(3))));
    }

    #[test]
    fn duality() {
        assert_eq!(dual(&sphere()).unwrap().weights, sphere().weights);

        let d = dual(&cpn(2)).unwrap();
        let ws: Vec<i64> = d.cells().map(|(w, _)| w).collect();
        assert_eq!(ws, vec![-2, -1, 0]);

        let dd = dual(&d).unwrap();
        assert_eq!(dd.weights, cpn(2).weights);

        assert!(matches!(dual(&moore(3).unwrap()), Err(Error::DualOfTorsion)));
    }

    #[test]
    fn builtins() {
        let c3 = cpn(3);
        let ws: Vec<i64> = c3.cells().map(|(w, _)| w).collect();
        assert_eq!(ws, vec![0, 1, 2, 3]);
        assert!(c3.cells().all(|(_, c)| c.beta_even == 1));

        let m21 = moore(21).unwrap();
        assert_eq!(m21.cell(0).torsion_order, 21);
        assert_eq!(torsion_primes(&m21), vec![3, 7]);
    }
}
