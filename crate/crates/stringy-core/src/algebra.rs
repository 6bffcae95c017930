//! Finite-dimensional graded-commutative algebras over `ℚ` with structure
//! constants, and the linear maps between them.
//!
//! An [`Algebra`] is a basis with degrees, a structure-constant tensor
//! `c[i][j][k]` (so `b_i·b_j = Σ_k c[i][j][k]·b_k`), a distinguished unit
//! basis element, and optionally a trace functional `ε` whose pairing
//! `⟨a,b⟩ = ε(ab)` is the Poincaré/fundamental-class pairing. Algebras are
//! immutable after construction and shared by reference ([`AlgebraRef`]),
//! so every element knows its parent and all operations are pure.
//!
//! [`check_algebra`] verifies the ring axioms exactly (associativity,
//! Koszul-signed commutativity, unit, degree additivity, nondegeneracy of
//! the pairing) and reports each violation with the witnessing basis tuple.
//!
//! [`adjoint_pushforward`] solves the Gram system for the map `f_!` adjoint
//! to an algebra morphism `f`: `⟨f_!(a), b⟩ = ⟨a, f(b)⟩`. That is how the
//! builders manufacture pushforwards, and how provided pushforward data can
//! be independently reproduced.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rat::{self, Rat};
use crate::report::Report;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

#[derive(Debug)]
pub struct Algebra {
    pub name: String,
    basis: Vec<String>,
    degrees: Vec<i64>,
    /// Degree additivity is enforced when set.
    pub graded: bool,
    /// Koszul-signed commutativity is enforced when set. Root extensions
    /// adjoin central roots and clear this flag.
    pub koszul: bool,
    /// Flat `dim³` tensor, index `(i·dim + j)·dim + k`.
    constants: Vec<Rat>,
    unit: usize,
    trace: Option<Vec<Rat>>,
}

pub type AlgebraRef = Arc<Algebra>;

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        degrees: Vec<i64>,
        unit: usize,
        constants: Vec<Rat>,
        trace: Option<Vec<Rat>>,
    ) -> AlgebraRef {
        let dim = basis.len();
        assert_eq!(degrees.len(), dim, "degree count");
        assert_eq!(constants.len(), dim * dim * dim, "structure constant count");
        // dim 0 is the zero ring (an empty fixed locus); its unit is its zero
        assert!(unit < dim || dim == 0, "unit index");
        if let Some(t) = &trace {
            assert_eq!(t.len(), dim, "trace length");
        }
        Arc::new(Algebra {
            name: name.into(),
            basis,
            degrees,
            graded: true,
            koszul: true,
            constants,
            unit,
            trace,
        })
    }

    /// The zero ring: the functor value of an empty fixed locus. Its unit
    /// coincides with its zero and every map through it vanishes.
    pub fn zero_ring(name: impl Into<String>) -> AlgebraRef {
        Algebra::new(name, Vec::new(), Vec::new(), 0, Vec::new(), Some(Vec::new()))
    }

    /// The ground field `ℚ` as an algebra: basis `{1}`, `ε(1) = 1`.
    pub fn rationals() -> AlgebraRef {
        Algebra::new(
            "Q",
            vec![String::from("1")],
            vec![0],
            0,
            vec![Rat::one()],
            Some(vec![Rat::one()]),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn trace_vector(&self) -> Option<&[Rat]> {
        self.trace.as_deref()
    }

    pub fn is_frobenius(&self) -> bool {
        self.trace.is_some()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.constants[(i * self.dim() + j) * self.dim() + k]
    }

    /// `b_i · b_j` as a coefficient vector.
    fn basis_product(&self, i: usize, j: usize) -> Vec<Rat> {
        let dim = self.dim();
        let start = (i * dim + j) * dim;
        self.constants[start..start + dim].to_vec()
    }

    pub fn same(a: &AlgebraRef, b: &AlgebraRef) -> bool {
        Arc::ptr_eq(a, b)
    }

    /// Structural copy with different grading/Koszul enforcement flags.
    pub(crate) fn clone_with_flags(&self, graded: bool, koszul: bool) -> Algebra {
        let mut alg = clone_algebra(self);
        alg.graded = graded;
        alg.koszul = koszul;
        alg
    }
}

/// Element-construction and arithmetic helpers live on the shared handle so
/// results can carry their parent.
pub trait AlgebraHandle {
    fn zero(&self) -> Element;
    fn one(&self) -> Element;
    fn basis_elem(&self, i: usize) -> Element;
    fn elem(&self, coeffs: Vec<Rat>) -> Element;
    fn trace(&self, a: &Element) -> Option<Rat>;
    fn gram(&self) -> Option<Matrix>;
}

impl AlgebraHandle for AlgebraRef {
    fn zero(&self) -> Element {
        Element {
            parent: self.clone(),
            coeffs: vec![Rat::zero(); self.dim()],
        }
    }

    fn one(&self) -> Element {
        if self.dim() == 0 {
            return self.zero();
        }
        self.basis_elem(self.unit)
    }

    fn basis_elem(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.coeffs[i] = Rat::one();
        e
    }

    fn elem(&self, coeffs: Vec<Rat>) -> Element {
        assert_eq!(coeffs.len(), self.dim(), "coefficient vector length");
        Element {
            parent: self.clone(),
            coeffs,
        }
    }

    fn trace(&self, a: &Element) -> Option<Rat> {
        let t = self.trace.as_ref()?;
        let mut acc = Rat::zero();
        for (c, tv) in a.coeffs.iter().zip(t) {
            if !c.is_zero() {
                acc += c * tv;
            }
        }
        Some(acc)
    }

    /// Gram matrix `G[i][j] = ε(b_i·b_j)` of the pairing, if a trace exists.
    fn gram(&self) -> Option<Matrix> {
        let t = self.trace.as_ref()?;
        let dim = self.dim();
        let mut g = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.basis_product(i, j);
                let mut acc = Rat::zero();
                for (c, tv) in prod.iter().zip(t) {
                    acc += c * tv;
                }
                g.set(i, j, acc);
            }
        }
        Some(g)
    }
}

#[derive(Debug, Clone)]
pub struct Element {
    parent: AlgebraRef,
    coeffs: Vec<Rat>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        Algebra::same(&self.parent, &other.parent) && self.coeffs == other.coeffs
    }
}

impl Eq for Element {}

impl Element {
    pub fn parent(&self) -> &AlgebraRef {
        &self.parent
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn add(&self, rhs: &Element) -> Element {
        assert!(Algebra::same(&self.parent, &rhs.parent), "element addition across algebras");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        self.parent.elem(coeffs)
    }

    pub fn sub(&self, rhs: &Element) -> Element {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, s: &Rat) -> Element {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        self.parent.elem(coeffs)
    }

    pub fn mul(&self, rhs: &Element) -> Element {
        assert!(Algebra::same(&self.parent, &rhs.parent), "element product across algebras");
        let dim = self.parent.dim();
        let mut out = vec![Rat::zero(); dim];
        for i in 0..dim {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let scale = &self.coeffs[i] * &rhs.coeffs[j];
                let prod = self.parent.basis_product(i, j);
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += c * &scale;
                    }
                }
            }
        }
        self.parent.elem(out)
    }

    /// The common degree of all nonzero components; `None` for zero or for
    /// inhomogeneous elements.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = self.parent.degree(i);
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// `x⊗1 + 3/2*x⊗x` style rendering; zero renders as `0`.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = self.parent.basis_name(i);
            if c == &Rat::one() {
                parts.push(name.into());
            } else {
                parts.push(format!("{}*{}", rat::render(c), name));
            }
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

/// A linear map between algebras: `matrix` is target-dim × source-dim.
#[derive(Debug, Clone)]
pub struct LinearMap {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub matrix: Matrix,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        Algebra::same(&self.source, &other.source)
            && Algebra::same(&self.target, &other.target)
            && self.matrix == other.matrix
    }
}

impl LinearMap {
    pub fn new(source: AlgebraRef, target: AlgebraRef, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("linear map"));
        }
        Ok(LinearMap { source, target, matrix })
    }

    pub fn identity(alg: &AlgebraRef) -> Self {
        LinearMap {
            source: alg.clone(),
            target: alg.clone(),
            matrix: Matrix::identity(alg.dim()),
        }
    }

    /// Build from the images of the source basis elements.
    pub fn from_images(source: &AlgebraRef, target: &AlgebraRef, images: &[Element]) -> Self {
        assert_eq!(images.len(), source.dim(), "one image per source basis element");
        let mut m = Matrix::zeros(target.dim(), source.dim());
        for (j, img) in images.iter().enumerate() {
            assert!(Algebra::same(img.parent(), target), "image outside target");
            m.set_column(j, img.coeffs());
        }
        LinearMap {
            source: source.clone(),
            target: target.clone(),
            matrix: m,
        }
    }

    pub fn apply(&self, v: &Element) -> Result<Element> {
        if !Algebra::same(v.parent(), &self.source) {
            return Err(Error::ParentMismatch("linear map application"));
        }
        Ok(self.target.elem(self.matrix.mul_vec(v.coeffs())))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if !Algebra::same(&self.source, &inner.target) {
            return Err(Error::ParentMismatch("map composition"));
        }
        Ok(LinearMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.matmul(&inner.matrix),
        })
    }

    /// `f(ab) = f(a)f(b)` on all basis pairs and `f(1) = 1`. Maps out of
    /// the zero ring are vacuously multiplicative and their unit condition
    /// only makes sense into the zero ring.
    pub fn is_morphism(&self) -> bool {
        if self.source.dim() == 0 {
            return self.target.dim() == 0;
        }
        let unit_img = self
            .target
            .elem(self.matrix.column(self.source.unit_index()));
        if unit_img != self.target.one() {
            return false;
        }
        let dim = self.source.dim();
        for i in 0..dim {
            let fi = self.target.elem(self.matrix.column(i));
            for j in 0..dim {
                let fj = self.target.elem(self.matrix.column(j));
                let prod = self.source.basis_elem(i).mul(&self.source.basis_elem(j));
                let lhs = self.apply(&prod).expect("same source");
                if lhs != fi.mul(&fj) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

/// Verify the algebra axioms exactly; every violation is reported with the
/// witnessing basis tuple.
pub fn check_algebra(alg: &Algebra) -> Report {
    let mut report = Report::new();
    let dim = alg.dim();
    let name = |i: usize| alg.basis_name(i);

    for (i, d) in alg.degrees.iter().enumerate() {
        report.check("algebra.degree-nonnegative", || format!("{}: deg {}", name(i), d), *d >= 0);
    }

    // unit
    let handle: AlgebraRef = Arc::new(clone_algebra(alg));
    for i in 0..dim {
        let b = handle.basis_elem(i);
        let left = handle.one().mul(&b);
        let right = b.mul(&handle.one());
        report.check("algebra.unit", || format!("1*{}", name(i)), left == b);
        report.check("algebra.unit", || format!("{}*1", name(i)), right == b);
    }

    // associativity
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let bi = handle.basis_elem(i);
                let bj = handle.basis_elem(j);
                let bk = handle.basis_elem(k);
                let lhs = bi.mul(&bj).mul(&bk);
                let rhs = bi.mul(&bj.mul(&bk));
                report.check(
                    "algebra.associativity",
                    || format!("({},{},{})", name(i), name(j), name(k)),
                    lhs == rhs,
                );
            }
        }
    }

    // graded commutativity with Koszul sign
    if alg.koszul {
        for i in 0..dim {
            for j in 0..dim {
                let bi = handle.basis_elem(i);
                let bj = handle.basis_elem(j);
                let lhs = bi.mul(&bj);
                let mut rhs = bj.mul(&bi);
                if alg.degree(i) % 2 != 0 && alg.degree(j) % 2 != 0 {
                    rhs = rhs.neg();
                }
                report.check(
                    "algebra.koszul",
                    || format!("({},{})", name(i), name(j)),
                    lhs == rhs,
                );
            }
        }
    }

    // degree additivity
    if alg.graded {
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if !alg.constant(i, j, k).is_zero() {
                        report.check(
                            "algebra.degree-additivity",
                            || {
                                format!(
                                    "({},{}) hits {} of degree {} != {}",
                                    name(i),
                                    name(j),
                                    name(k),
                                    alg.degree(k),
                                    alg.degree(i) + alg.degree(j)
                                )
                            },
                            alg.degree(k) == alg.degree(i) + alg.degree(j),
                        );
                    }
                }
            }
        }
    }

    // Frobenius pairing
    if alg.trace.is_some() {
        let nondegenerate = handle.gram().map(|g| g.rank() == dim).unwrap_or(false);
        report.check("algebra.pairing-nondegenerate", || alg.name.clone(), nondegenerate);
    }

    report
}

fn clone_algebra(alg: &Algebra) -> Algebra {
    Algebra {
        name: alg.name.clone(),
        basis: alg.basis.clone(),
        degrees: alg.degrees.clone(),
        graded: alg.graded,
        koszul: alg.koszul,
        constants: alg.constants.clone(),
        unit: alg.unit,
        trace: alg.trace.clone(),
    }
}

/// Graded tensor product `A ⊗ B` with Koszul signs.
///
/// Basis order is colexicographic — the first factor varies fastest — and
/// basis names join with `⊗`. The trace is `ε(a⊗b) = ε(a)·ε(b)` when both
/// factors carry one.
pub fn tensor(a: &AlgebraRef, b: &AlgebraRef) -> AlgebraRef {
    let da = a.dim();
    let db = b.dim();
    let dim = da * db;
    let idx = |ia: usize, ib: usize| ib * da + ia;

    let mut basis = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for ib in 0..db {
        for ia in 0..da {
            basis.push(format!("{}⊗{}", a.basis_name(ia), b.basis_name(ib)));
            degrees.push(a.degree(ia) + b.degree(ib));
        }
    }

    let mut constants = vec![Rat::zero(); dim * dim * dim];
    for ib in 0..db {
        for ia in 0..da {
            let i = idx(ia, ib);
            for jb in 0..db {
                for ja in 0..da {
                    let j = idx(ja, jb);
                    // (a_i ⊗ b_i)(a_j ⊗ b_j) = (-1)^{deg b_i · deg a_j} a_i a_j ⊗ b_i b_j
                    let sign = if b.degree(ib) % 2 != 0 && a.degree(ja) % 2 != 0 {
                        -Rat::one()
                    } else {
                        Rat::one()
                    };
                    for ka in 0..da {
                        let ca = a.constant(ia, ja, ka);
                        if ca.is_zero() {
                            continue;
                        }
                        for kb in 0..db {
                            let cb = b.constant(ib, jb, kb);
                            if cb.is_zero() {
                                continue;
                            }
                            let k = idx(ka, kb);
                            constants[(i * dim + j) * dim + k] = &sign * ca * cb;
                        }
                    }
                }
            }
        }
    }

    let trace = match (a.trace_vector(), b.trace_vector()) {
        (Some(ta), Some(tb)) => {
            let mut t = vec![Rat::zero(); dim];
            for ib in 0..db {
                for ia in 0..da {
                    t[idx(ia, ib)] = &ta[ia] * &tb[ib];
                }
            }
            Some(t)
        }
        _ => None,
    };

    let unit = idx(a.unit_index(), b.unit_index());
    let handle = Algebra::new(
        format!("{}⊗{}", a.name, b.name),
        basis,
        degrees,
        unit,
        constants,
        trace,
    );
    // tensor factors inherit the flags
    Arc::new(handle.clone_with_flags(a.graded && b.graded, a.koszul && b.koszul))
}

/// `A^{⊗k}`; `k = 0` is the ground field.
pub fn tensor_power(a: &AlgebraRef, k: usize) -> AlgebraRef {
    if k == 0 {
        return Algebra::rationals();
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = tensor(&acc, a);
    }
    acc
}

/// The Frobenius adjoint `f_!` of a morphism `f : S → T`, characterized by
/// `⟨f_!(a), b⟩_S = ⟨a, f(b)⟩_T` on all basis pairs.
///
/// Writing `F` for the matrix of `f` and `G_S`, `G_T` for the Gram matrices,
/// the condition reads `G_Sᵀ · P = Fᵀ · G_Tᵀ`; the Gram system is solved
/// exactly and fails only on a degenerate pairing.
pub fn adjoint_pushforward(f: &LinearMap) -> Result<LinearMap> {
    let gs = f
        .source
        .gram()
        .ok_or_else(|| Error::DegeneratePairing(f.source.name.clone()))?;
    let gt = f
        .target
        .gram()
        .ok_or_else(|| Error::DegeneratePairing(f.target.name.clone()))?;
    let rhs = f.matrix.transpose().matmul(&gt.transpose());
    let p = gs
        .transpose()
        .solve_columns(&rhs)
        .ok_or_else(|| Error::DegeneratePairing(f.source.name.clone()))?;
    if gs.rank() != f.source.dim() {
        return Err(Error::DegeneratePairing(f.source.name.clone()));
    }
    LinearMap::new(f.target.clone(), f.source.clone(), p)
}
