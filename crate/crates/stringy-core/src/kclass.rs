//! Rational K-classes on a stratum, their Euler series, and the evaluation
//! map.
//!
//! A [`KClass`] is a formal `ℚ`-combination of declared line generators on
//! one stratum (inputs arrive pre-split into lines; the engine never
//! computes Chern roots). Each [`LineGenerator`] carries its Euler datum —
//! the degree-2 class `c` with `c_t(𝓛) = 1 + c·t` in cohomology/Chow
//! flavor, or the full Euler class `e = Eu(𝓛)` in K flavor — plus a table
//! of restrictions to finer strata by generator name.
//!
//! The Euler series of a class is the product of per-line series raised to
//! the rational coefficients (binomial series for fractional powers in CH
//! flavor; K flavor insists on integers and defers fractional classes to
//! root extensions). Evaluation extracts the `t^rank` coefficient in CH
//! flavor and substitutes `t = -1` in K flavor; for an effective class both
//! recover the honest Euler class of the bundle.

use crate::algebra::{Algebra, AlgebraHandle, AlgebraRef, Element};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::series::TSeries;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerFlavor {
    /// Chern polynomial `c_t`, evaluation by coefficient extraction.
    CH,
    /// `λ_t` of the dual, evaluation at `t = -1`.
    K,
}

#[derive(Debug, Clone)]
pub struct LineGenerator {
    pub name: String,
    /// CH: the degree-2 class `c`; K: the Euler class `e = Eu(𝓛)` itself.
    pub euler_datum: Element,
    /// Finer stratum key → name of the corresponding generator there.
    pub restrictions: BTreeMap<String, String>,
}

impl LineGenerator {
    /// The line's Euler series `1 + c·t` (CH) or `1 + (1-e)·t` (K, the
    /// class of the dual line in the t-coefficient).
    pub fn euler_series(&self, flavor: EulerFlavor, truncation: usize) -> TSeries {
        let alg = self.euler_datum.parent();
        let linear = match flavor {
            EulerFlavor::CH => self.euler_datum.clone(),
            EulerFlavor::K => alg.one().sub(&self.euler_datum),
        };
        TSeries::linear(alg.one(), linear, truncation)
    }
}

/// Formal rational combination of line generators on one stratum. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KClass {
    pub stratum: String,
    terms: BTreeMap<String, Rat>,
}

impl KClass {
    pub fn zero(stratum: impl Into<String>) -> Self {
        KClass {
            stratum: stratum.into(),
            terms: BTreeMap::new(),
        }
    }

    pub fn line(stratum: impl Into<String>, name: impl Into<String>) -> Self {
        let mut k = KClass::zero(stratum);
        k.add_term(name, Rat::one());
        k
    }

    pub fn terms(&self) -> &BTreeMap<String, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, name: impl Into<String>, q: Rat) {
        if q.is_zero() {
            return;
        }
        let name = name.into();
        let entry = self.terms.entry(name.clone()).or_insert_with(Rat::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&name);
        }
    }

    /// `self + sign·scale·other` on a shared stratum.
    pub fn combine(&self, other: &KClass, sign: i64, scale: &Rat) -> Result<KClass> {
        if self.stratum != other.stratum {
            return Err(Error::StratumMismatch(
                self.stratum.clone(),
                other.stratum.clone(),
            ));
        }
        let factor = rat::rint(sign) * scale;
        let mut out = self.clone();
        for (name, q) in &other.terms {
            out.add_term(name.clone(), q * &factor);
        }
        Ok(out)
    }

    pub fn plus(&self, other: &KClass) -> Result<KClass> {
        self.combine(other, 1, &Rat::one())
    }

    pub fn minus(&self, other: &KClass) -> Result<KClass> {
        self.combine(other, -1, &Rat::one())
    }

    pub fn neg(&self) -> KClass {
        let mut out = KClass::zero(self.stratum.clone());
        for (name, q) in &self.terms {
            out.add_term(name.clone(), -q.clone());
        }
        out
    }

    /// Virtual rank `Σ qᵢ` (each line has rank 1).
    pub fn rank(&self) -> Rat {
        let mut acc = Rat::zero();
        for q in self.terms.values() {
            acc += q;
        }
        acc
    }

    /// Honest bundle test: every coefficient a nonnegative integer.
    pub fn is_effective(&self) -> bool {
        self.terms
            .values()
            .all(|q| q.is_integer() && !q.is_negative())
    }

    /// Re-tag the class onto another stratum presenting the same space
    /// (sectors of `m` and `m⁻¹` share generator names).
    pub fn retag(&self, stratum: impl Into<String>) -> KClass {
        KClass {
            stratum: stratum.into(),
            terms: self.terms.clone(),
        }
    }

    /// Push the class through the generators' restriction tables onto a
    /// finer stratum.
    pub fn restrict(
        &self,
        to_stratum: &str,
        generators: &BTreeMap<String, LineGenerator>,
    ) -> Result<KClass> {
        let mut out = KClass::zero(to_stratum.to_string());
        for (name, q) in &self.terms {
            let gen = generators
                .get(name)
                .ok_or_else(|| Error::MissingRestriction(name.clone(), to_stratum.to_string()))?;
            let target = gen
                .restrictions
                .get(to_stratum)
                .ok_or_else(|| Error::MissingRestriction(name.clone(), to_stratum.to_string()))?;
            out.add_term(target.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(name, q)| {
                if q == &Rat::one() {
                    name.clone()
                } else {
                    format!("{}*{}", rat::render(q), name)
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `Eu_t` of a class: the product over its lines of the line Euler series
/// raised to the term's coefficient. Fractional exponents go through the
/// binomial series in CH flavor and are rejected in K flavor.
pub fn eu_t(
    class: &KClass,
    generators: &BTreeMap<String, LineGenerator>,
    algebra: &AlgebraRef,
    flavor: EulerFlavor,
    truncation: usize,
) -> Result<TSeries> {
    let mut out = TSeries::one(algebra, truncation);
    for (name, q) in class.terms() {
        let gen = generators
            .get(name)
            .ok_or_else(|| Error::MissingLineData(name.clone()))?;
        if !Algebra::same(gen.euler_datum.parent(), algebra) {
            return Err(Error::ParentMismatch("euler datum"));
        }
        let line = gen.euler_series(flavor, truncation);
        let powered = if q.is_integer() {
            let n: i64 = {
                // coefficients are desk-scale; i64 is ample
                let num = q.numer();
                i64::try_from(num.clone()).map_err(|_| Error::Unsupported("coefficient overflow".into()))?
            };
            line.int_pow(n)?
        } else {
            match flavor {
                EulerFlavor::CH => line.frac_power(q)?,
                EulerFlavor::K => return Err(Error::KFlavorFractional),
            }
        };
        out = out.mul(&powered)?;
    }
    Ok(out)
}

/// The evaluation map: coefficient of `t^r` in CH flavor (integral
/// nonnegative `r` only), substitution `t = -1` in K flavor.
pub fn eval(series: &TSeries, r: &Rat, flavor: EulerFlavor) -> Result<Element> {
    match flavor {
        EulerFlavor::CH => {
            let k = rat::as_usize(r).ok_or(Error::FractionalRank)?;
            if k > series.truncation() {
                return Err(Error::RankBeyondTruncation(k, series.truncation()));
            }
            Ok(series.coeff(k).clone())
        }
        EulerFlavor::K => Ok(series.eval_at_minus_one()),
    }
}

/// Euler class of an effective class, combining the K-class first and only
/// then evaluating — `eval(eu_t(a), rank a)`.
pub fn euler_class(
    class: &KClass,
    generators: &BTreeMap<String, LineGenerator>,
    algebra: &AlgebraRef,
    flavor: EulerFlavor,
    truncation: usize,
) -> Result<Element> {
    if !class.is_effective() {
        return Err(Error::NonEffective(class.render()));
    }
    let series = eu_t(class, generators, algebra, flavor, truncation)?;
    eval(&series, &class.rank(), flavor)
}

/// The age class `S_m = ⊕_k (k/r)·W_{m,k}` from the eigen data of an
/// element of order `r`. `W_{m,0}` is ignored; indices at or above `r` are
/// rejected. The identity has empty eigen data and yields 0, and adding a
/// `W_{m,0}` entry never changes the result (stabilization invariance).
pub fn compute_s(
    order: usize,
    eigen: &BTreeMap<usize, KClass>,
    stratum: &str,
) -> Result<KClass> {
    let mut out = KClass::zero(stratum.to_string());
    for (&k, class) in eigen {
        if k == 0 {
            continue;
        }
        if k >= order {
            return Err(Error::EigenIndexOutOfRange(k, order));
        }
        if class.stratum != stratum {
            return Err(Error::StratumMismatch(
                class.stratum.clone(),
                stratum.to_string(),
            ));
        }
        let weight = Rat::new(
            num_bigint::BigInt::from(k as i64),
            num_bigint::BigInt::from(order as i64),
        );
        out = out.combine(class, 1, &weight)?;
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::algebra::fixtures::p1;
    use crate::rat::rint;

    /// The diagonal stratum of Sym²(ℙ¹): algebra ℚ[x]/(x²), one tangent
    /// line `T` with `c = 2x`.
    pub fn diagonal_stratum() -> (AlgebraRef, BTreeMap<String, LineGenerator>) {
        let a = p1();
        let mut gens = BTreeMap::new();
        gens.insert(
            "T".to_string(),
            LineGenerator {
                name: "T".to_string(),
                euler_datum: a.basis_elem(1).scale(&rint(2)),
                restrictions: BTreeMap::new(),
            },
        );
        (a, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::diagonal_stratum;
    use super::*;
    use crate::algebra::AlgebraHandle;
    use crate::rat::{rat, rint};

    fn t_class(q: Rat) -> KClass {
        let mut k = KClass::zero("σ");
        k.add_term("T", q);
        k
    }

    #[test]
    fn combine_and_rank() {
        let half = t_class(rat(1, 2));
        let full = half.combine(&half, 1, &Rat::one()).unwrap();
        assert_eq!(full, t_class(rint(1)));
        assert!(half.minus(&half).unwrap().is_zero());
        assert_eq!(
            t_class(rint(1)).combine(&KClass::zero("σ"), 1, &rat(2, 3)).unwrap(),
            t_class(rint(1))
        );
        let scaled = KClass::zero("σ").combine(&t_class(rint(1)), 1, &rat(2, 3)).unwrap();
        assert_eq!(scaled, t_class(rat(2, 3)));
        assert_eq!(half.rank(), rat(1, 2));
        assert_eq!(KClass::zero("σ").rank(), Rat::zero());
        assert_eq!(t_class(rint(2)).rank(), rint(2));
    }

    #[test]
    fn stratum_mismatch_is_rejected() {
        let a = t_class(rint(1));
        let b = KClass::line("τ", "T");
        assert!(matches!(a.plus(&b), Err(Error::StratumMismatch(_, _))));
    }

    #[test]
    fn effectivity() {
        assert!(t_class(rint(1)).is_effective());
        assert!(KClass::zero("σ").is_effective());
        assert!(!t_class(rat(1, 2)).is_effective());
        assert!(!t_class(rint(-1)).is_effective());
    }

    #[test]
    fn euler_series_of_tangent() {
        let (a, gens) = diagonal_stratum();
        // full tangent: 1 + 2xt
        let s = eu_t(&t_class(rint(1)), &gens, &a, EulerFlavor::CH, 3).unwrap();
        assert_eq!(s.coeff(0), &a.one());
        assert_eq!(s.coeff(1), &a.basis_elem(1).scale(&rint(2)));
        // half tangent: (1+2xt)^{1/2} = 1 + xt
        let h = eu_t(&t_class(rat(1, 2)), &gens, &a, EulerFlavor::CH, 3).unwrap();
        assert_eq!(h.coeff(1), &a.basis_elem(1));
        // minus tangent: inverse series 1 - 2xt
        let n = eu_t(&t_class(rint(-1)), &gens, &a, EulerFlavor::CH, 3).unwrap();
        assert_eq!(n.coeff(1), &a.basis_elem(1).scale(&rint(-2)));
        // constant term is always 1
        for series in [&s, &h, &n] {
            assert_eq!(series.coeff(0), &a.one());
        }
    }

    #[test]
    fn eu_t_is_multiplicative() {
        let (a, gens) = diagonal_stratum();
        for (qa, qb) in [(rint(1), rint(1)), (rint(2), rint(-1)), (rat(1, 2), rat(1, 2))] {
            let left = eu_t(&t_class(qa.clone()), &gens, &a, EulerFlavor::CH, 4)
                .unwrap()
                .mul(&eu_t(&t_class(qb.clone()), &gens, &a, EulerFlavor::CH, 4).unwrap())
                .unwrap();
            let combined = t_class(qa).plus(&t_class(qb)).unwrap();
            let right = eu_t(&combined, &gens, &a, EulerFlavor::CH, 4).unwrap();
            assert_eq!(left, right);
        }
        // eu_t(a)·eu_t(⊖a) = 1
        let f = eu_t(&t_class(rat(3, 2)), &gens, &a, EulerFlavor::CH, 4).unwrap();
        let g = eu_t(&t_class(rat(-3, 2)), &gens, &a, EulerFlavor::CH, 4).unwrap();
        assert!(f.mul(&g).unwrap().is_one());
    }

    #[test]
    fn k_flavor_rejects_fractional() {
        let (a, gens) = diagonal_stratum();
        assert!(matches!(
            eu_t(&t_class(rat(1, 2)), &gens, &a, EulerFlavor::K, 3),
            Err(Error::KFlavorFractional)
        ));
    }

    #[test]
    fn evaluation_map() {
        let (a, _) = diagonal_stratum();
        let f = TSeries::linear(a.one(), a.basis_elem(1).scale(&rint(2)), 3);
        // CH: coefficient extraction
        assert_eq!(
            eval(&f, &rint(1), EulerFlavor::CH).unwrap(),
            a.basis_elem(1).scale(&rint(2))
        );
        assert_eq!(eval(&f, &rint(0), EulerFlavor::CH).unwrap(), a.one());
        assert!(matches!(
            eval(&f, &rat(1, 2), EulerFlavor::CH),
            Err(Error::FractionalRank)
        ));
        // K: λ-polynomial 1 + e·t at t = -1 is 1 - e
        let e = a.basis_elem(1);
        let g = TSeries::linear(a.one(), e.clone(), 3);
        assert_eq!(
            eval(&g, &rint(1), EulerFlavor::K).unwrap(),
            a.one().sub(&e)
        );
    }

    #[test]
    fn effective_euler_class_is_homogeneous() {
        let (a, gens) = diagonal_stratum();
        for q in [rint(1), rint(2)] {
            let class = t_class(q.clone());
            let e = euler_class(&class, &gens, &a, EulerFlavor::CH, 4).unwrap();
            // zero is homogeneous of every degree (rank 2 gives (2x)² = 0)
            if !e.is_zero() {
                let expected_deg = rint(2) * class.rank();
                assert_eq!(
                    e.homogeneous_degree().map(rint),
                    Some(expected_deg),
                    "degree 2·rank for rank {q}"
                );
            }
        }
        assert!(matches!(
            euler_class(&t_class(rat(1, 2)), &gens, &a, EulerFlavor::CH, 4),
            Err(Error::NonEffective(_))
        ));
    }

    #[test]
    fn k_flavor_euler_class_of_effective_classes() {
        // Eu(𝓛) = e is recovered at t = -1, and Eu is multiplicative on
        // effective classes: Eu(2𝓛) = e²
        let dim = 2;
        let mut constants = alloc::vec![Rat::zero(); dim * dim * dim];
        let mut set = |i: usize, j: usize, k: usize| {
            constants[(i * dim + j) * dim + k] = Rat::one();
        };
        set(0, 0, 0);
        set(0, 1, 1);
        set(1, 0, 1);
        let alg = crate::algebra::Algebra::new(
            "K-ring",
            alloc::vec!["1".into(), "u".into()],
            alloc::vec![0, 0],
            0,
            constants,
            None,
        );
        let e = alg.basis_elem(1).scale(&rint(2)); // Eu(𝓛) = 2u, u² = 0
        let mut gens = BTreeMap::new();
        gens.insert(
            "L".to_string(),
            LineGenerator {
                name: "L".to_string(),
                euler_datum: e.clone(),
                restrictions: BTreeMap::new(),
            },
        );
        let line = KClass::line("s", "L");
        assert_eq!(
            euler_class(&line, &gens, &alg, EulerFlavor::K, 4).unwrap(),
            e
        );
        let double = line.plus(&line).unwrap();
        assert_eq!(
            euler_class(&double, &gens, &alg, EulerFlavor::K, 4).unwrap(),
            e.mul(&e)
        );
    }

    #[test]
    fn age_classes() {
        // identity: empty eigen data gives 0
        assert!(compute_s(1, &BTreeMap::new(), "e").unwrap().is_zero());
        // 2-cycle with W_1 = T: S = T/2
        let mut eigen = BTreeMap::new();
        eigen.insert(1, KClass::line("σ", "T"));
        let s = compute_s(2, &eigen, "σ").unwrap();
        assert_eq!(s, t_class(rat(1, 2)));
        assert_eq!(s.rank(), rat(1, 2));
        // 3-cycle with W_1 = W_2 = T: S = T, age 1
        let mut eigen = BTreeMap::new();
        eigen.insert(1, KClass::line("σ", "T"));
        eigen.insert(2, KClass::line("σ", "T"));
        let s = compute_s(3, &eigen, "σ").unwrap();
        assert_eq!(s, t_class(rint(1)));
        // W_0 is ignored (stabilization invariance)
        let mut eigen = BTreeMap::new();
        eigen.insert(0, KClass::line("σ", "T"));
        eigen.insert(1, KClass::line("σ", "T"));
        assert_eq!(compute_s(2, &eigen, "σ").unwrap(), t_class(rat(1, 2)));
        // out-of-range index
        let mut eigen = BTreeMap::new();
        eigen.insert(2, KClass::line("σ", "T"));
        assert!(matches!(
            compute_s(2, &eigen, "σ"),
            Err(Error::EigenIndexOutOfRange(2, 2))
        ));
    }

    #[test]
    fn restriction_through_tables() {
        let (a, _) = diagonal_stratum();
        let mut gens = BTreeMap::new();
        let mut restrictions = BTreeMap::new();
        restrictions.insert("m".to_string(), "T'".to_string());
        gens.insert(
            "T".to_string(),
            LineGenerator {
                name: "T".to_string(),
                euler_datum: a.basis_elem(1),
                restrictions,
            },
        );
        let class = t_class(rat(1, 2));
        let restricted = class.restrict("m", &gens).unwrap();
        assert_eq!(restricted.stratum, "m");
        assert_eq!(restricted.terms().get("T'"), Some(&rat(1, 2)));
        assert!(matches!(
            class.restrict("absent", &gens),
            Err(Error::MissingRestriction(_, _))
        ));
    }
}
