//! Truncated polynomials in `t` with algebra coefficients.
//!
//! Euler series `Eu_t` live here: multiplicative power series with constant
//! term 1, truncated at a fixed order `T`. Arithmetic never reads beyond the
//! truncation, and because the coefficients that matter are nilpotent, any
//! sufficiently large `T` yields identical results (the truncation-stability
//! property the verify suites assert).

use crate::algebra::{Algebra, AlgebraHandle, AlgebraRef, Element, LinearMap};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct TSeries {
    /// Coefficient of `t^k` at index `k`; length is `T + 1`.
    coeffs: Vec<Element>,
}

impl TSeries {
    pub fn zero(parent: &AlgebraRef, truncation: usize) -> Self {
        TSeries {
            coeffs: (0..=truncation).map(|_| parent.zero()).collect(),
        }
    }

    pub fn one(parent: &AlgebraRef, truncation: usize) -> Self {
        let mut s = TSeries::zero(parent, truncation);
        s.coeffs[0] = parent.one();
        s
    }

    pub fn constant(value: Element, truncation: usize) -> Self {
        let mut s = TSeries::zero(value.parent(), truncation);
        s.coeffs[0] = value;
        s
    }

    /// `c0 + c1·t` padded to the truncation.
    pub fn linear(c0: Element, c1: Element, truncation: usize) -> Self {
        assert!(truncation >= 1, "linear series needs T >= 1");
        let mut s = TSeries::zero(c0.parent(), truncation);
        s.coeffs[0] = c0;
        s.coeffs[1] = c1;
        s
    }

    pub fn parent(&self) -> &AlgebraRef {
        self.coeffs[0].parent()
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Element {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, v: Element) {
        assert!(Algebra::same(v.parent(), self.parent()));
        self.coeffs[k] = v;
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == self.parent().one() && self.coeffs[1..].iter().all(Element::is_zero)
    }

    fn check_compatible(&self, rhs: &TSeries) -> Result<()> {
        if !Algebra::same(self.parent(), rhs.parent()) {
            return Err(Error::ParentMismatch("series arithmetic"));
        }
        if self.truncation() != rhs.truncation() {
            return Err(Error::TruncationMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &TSeries) -> Result<TSeries> {
        self.check_compatible(rhs)?;
        Ok(TSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// Cauchy product truncated at `T`.
    pub fn mul(&self, rhs: &TSeries) -> Result<TSeries> {
        self.check_compatible(rhs)?;
        let t = self.truncation();
        let mut out = TSeries::zero(self.parent(), t);
        for i in 0..=t {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(t - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[i].mul(&rhs.coeffs[j]);
                out.coeffs[i + j] = out.coeffs[i + j].add(&term);
            }
        }
        Ok(out)
    }

    /// Inverse of a series with constant term 1, by the usual recursion
    /// `g_k = -Σ_{j=1..k} f_j·g_{k-j}`.
    pub fn inverse(&self) -> Result<TSeries> {
        if self.coeffs[0] != self.parent().one() {
            return Err(Error::ConstantTermNotOne);
        }
        let t = self.truncation();
        let mut out = TSeries::zero(self.parent(), t);
        out.coeffs[0] = self.parent().one();
        for k in 1..=t {
            let mut acc = self.parent().zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out.coeffs[k - j]));
            }
            out.coeffs[k] = acc.neg();
        }
        Ok(out)
    }

    /// Binomial power `f^q = Σ_k binom(q,k)·(f-1)^k` for a series with
    /// constant term 1. Exact at the truncation because `f - 1` has no
    /// constant term; for integer `q` it agrees with repeated
    /// multiplication or inversion.
    pub fn frac_power(&self, q: &Rat) -> Result<TSeries> {
        if self.coeffs[0] != self.parent().one() {
            return Err(Error::ConstantTermNotOne);
        }
        let t = self.truncation();
        let mut reduced = self.clone();
        reduced.coeffs[0] = self.parent().zero(); // f - 1
        let mut power = TSeries::one(self.parent(), t); // (f-1)^k
        let mut out = TSeries::one(self.parent(), t);
        out.coeffs[0] = self.parent().one();
        for k in 1..=t {
            power = power.mul(&reduced)?;
            let b = rat::binom(q, k);
            if b.is_zero() {
                continue;
            }
            for j in 0..=t {
                if !power.coeffs[j].is_zero() {
                    let term = power.coeffs[j].scale(&b);
                    out.coeffs[j] = out.coeffs[j].add(&term);
                }
            }
        }
        Ok(out)
    }

    /// Integer power via repeated multiplication (negative through the
    /// inverse). Constant term must be 1 for negative exponents.
    pub fn int_pow(&self, n: i64) -> Result<TSeries> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut out = TSeries::one(self.parent(), self.truncation());
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// Apply a linear map coefficientwise.
    pub fn apply_map(&self, map: &LinearMap) -> Result<TSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| map.apply(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(TSeries { coeffs })
    }

    /// Substitute `t = -1` across the stored coefficients.
    pub fn eval_at_minus_one(&self) -> Element {
        let mut acc = self.parent().zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = if k % 2 == 0 { acc.add(c) } else { acc.sub(c) };
        }
        acc
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match k {
                0 => parts.push(format!("({})", c.render())),
                1 => parts.push(format!("({})*t", c.render())),
                _ => parts.push(format!("({})*t^{}", c.render(), k)),
            }
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::p1;
    use crate::rat::{rat, rint};

    fn x_series(a: &crate::algebra::AlgebraRef, scale: i64, t: usize) -> TSeries {
        // 1 + scale·x·t over Q[x]/(x²)
        TSeries::linear(a.one(), a.basis_elem(1).scale(&rint(scale)), t)
    }

    #[test]
    fn nilpotents_cancel() {
        // (1 + xt)(1 - xt) = 1 because x² = 0
        let a = p1();
        let f = x_series(&a, 1, 3);
        let g = x_series(&a, -1, 3);
        assert!(f.mul(&g).unwrap().is_one());
    }

    #[test]
    fn unit_series_is_neutral() {
        let a = p1();
        let f = x_series(&a, 2, 3);
        let one = TSeries::one(f.parent(), 3);
        assert_eq!(f.mul(&one).unwrap(), f);
    }

    #[test]
    fn truncation_drops_high_terms() {
        // (1 + t)² at T = 1 is 1 + 2t
        let a = p1();
        let f = TSeries::linear(a.one(), a.one(), 1);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.coeff(0), &a.one());
        assert_eq!(sq.coeff(1), &a.one().scale(&rint(2)));
    }

    #[test]
    fn inverse_of_geometric() {
        // (1 + 2xt)⁻¹ = 1 - 2xt
        let a = p1();
        let f = x_series(&a, 2, 4);
        assert_eq!(f.inverse().unwrap(), x_series(&a, -2, 4));
        // (1 + t)⁻¹ at T = 2 is 1 - t + t²
        let a = p1();
        let g = TSeries::linear(a.one(), a.one(), 2);
        let inv = g.inverse().unwrap();
        assert_eq!(inv.coeff(0), &a.one());
        assert_eq!(inv.coeff(1), &a.one().neg());
        assert_eq!(inv.coeff(2), &a.one());
        assert!(g.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn inverse_requires_unit_constant_term() {
        let a = p1();
        let f = TSeries::linear(a.zero(), a.one(), 2);
        assert!(matches!(f.inverse(), Err(Error::ConstantTermNotOne)));
    }

    #[test]
    fn square_root_of_line_square() {
        // (1 + 2xt)^{1/2} = 1 + xt since binom(1/2,1)·2x = x and (2xt)² = 0
        let a = p1();
        let f = x_series(&a, 2, 4);
        assert_eq!(f.frac_power(&rat(1, 2)).unwrap(), x_series(&a, 1, 4));
    }

    #[test]
    fn zeroth_power_is_one() {
        let a = p1();
        let f = x_series(&a, 2, 4);
        assert!(f.frac_power(&rint(0)).unwrap().is_one());
    }

    #[test]
    fn frac_power_minus_one_matches_inverse() {
        let a = p1();
        let f = x_series(&a, 2, 4);
        assert_eq!(f.frac_power(&rint(-1)).unwrap(), f.inverse().unwrap());
        let g = TSeries::linear(a.one(), a.one(), 5);
        assert_eq!(g.frac_power(&rint(-1)).unwrap(), g.inverse().unwrap());
    }

    #[test]
    fn int_pow_matches_frac_power() {
        let a = p1();
        let f = x_series(&a, 2, 4);
        for n in [-2i64, -1, 0, 1, 3] {
            assert_eq!(
                f.int_pow(n).unwrap(),
                f.frac_power(&rint(n)).unwrap(),
                "exponent {n}"
            );
        }
    }

    #[test]
    fn eval_at_minus_one() {
        // 1 + e·t at t = -1 is 1 - e
        let a = p1();
        let e = a.basis_elem(1);
        let f = TSeries::linear(a.one(), e.clone(), 3);
        assert_eq!(f.eval_at_minus_one(), a.one().sub(&e));
    }
}
