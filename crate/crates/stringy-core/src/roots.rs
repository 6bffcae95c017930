//! Monogenic root extensions `A[w]/(w^r - u)`.
//!
//! Positive fractional Euler classes become honest ring elements after
//! adjoining roots of the line Euler classes: the extension has basis
//! `{b_i·w^j : 0 ≤ j < r}` over the base, with `w` central. When `r`
//! divides `deg u` the monomials get the additive degree `deg u / r`;
//! otherwise the extension is flagged ungraded and degree bookkeeping is
//! skipped. Koszul parity is never imposed on root monomials (an odd-degree
//! `w` with `w² = u ≠ 0` would contradict it), so extensions clear the
//! `koszul` flag and are instead verified associative exhaustively.

use crate::algebra::{Algebra, AlgebraHandle, AlgebraRef, Element, LinearMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rat::Rat;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
pub struct RootExtension {
    pub base: AlgebraRef,
    /// The extension ring; equals `base` when `order = 1`.
    pub algebra: AlgebraRef,
    pub root_name: String,
    pub order: usize,
    /// `u` with `w^order = u`, an element of the base.
    pub relation_rhs: Element,
    /// The base embedded as the `w^0` slice.
    pub embed: LinearMap,
}

impl RootExtension {
    /// The adjoined root as an element of the extension; for `order = 1`
    /// the root already equals `u` in the base.
    pub fn root(&self) -> Element {
        if self.order == 1 {
            return self.relation_rhs.clone();
        }
        // the w¹ slice starts one base-dimension in
        let idx = self.base.dim() + self.base.unit_index();
        self.algebra.basis_elem(idx)
    }

    /// `w^k` in the extension.
    pub fn root_power(&self, k: usize) -> Element {
        let mut acc = self.algebra.one();
        let w = self.root();
        for _ in 0..k {
            acc = acc.mul(&w);
        }
        acc
    }
}

/// Adjoin an `r`-th root `w` of `u` to `A`. `r = 1` returns the base
/// unchanged (with `w = u`).
pub fn adjoin_root(base: &AlgebraRef, u: &Element, r: usize, root_name: &str) -> Result<RootExtension> {
    if r < 1 {
        return Err(Error::InvalidRootOrder);
    }
    if !Algebra::same(u.parent(), base) {
        return Err(Error::ParentMismatch("root relation"));
    }
    if r == 1 {
        return Ok(RootExtension {
            base: base.clone(),
            algebra: base.clone(),
            root_name: root_name.into(),
            order: 1,
            relation_rhs: u.clone(),
            embed: LinearMap::identity(base),
        });
    }

    let d = base.dim();
    let dim = d * r;
    let idx = |i: usize, j: usize| j * d + i; // w-power major, base index fastest

    let mut basis = Vec::with_capacity(dim);
    let root_degree = u.homogeneous_degree().filter(|deg| deg % (r as i64) == 0).map(|deg| deg / r as i64);
    let graded = root_degree.is_some() && base.graded;
    let mut degrees = Vec::with_capacity(dim);
    for j in 0..r {
        for i in 0..d {
            let name = match (j, base.basis_name(i)) {
                (0, b) => String::from(b),
                (1, "1") => String::from(root_name),
                (1, b) => format!("{b}·{root_name}"),
                (_, "1") => format!("{root_name}^{j}"),
                (_, b) => format!("{b}·{root_name}^{j}"),
            };
            basis.push(name);
            degrees.push(base.degree(i) + root_degree.unwrap_or(0) * j as i64);
        }
    }

    // (b_i w^j)(b_k w^l) = (b_i b_k) w^{j+l}, reducing w^{j+l} = u·w^{j+l-r}
    // once when j+l ≥ r; w is central so no Koszul signs enter.
    let mut constants = vec![Rat::zero(); dim * dim * dim];
    for j in 0..r {
        for i in 0..d {
            let row = idx(i, j);
            for l in 0..r {
                for k in 0..d {
                    let col = idx(k, l);
                    let mut prod = base.basis_elem(i).mul(&base.basis_elem(k));
                    let mut power = j + l;
                    if power >= r {
                        power -= r;
                        prod = prod.mul(u);
                    }
                    for (t, c) in prod.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            constants[(row * dim + col) * dim + idx(t, power)] = c.clone();
                        }
                    }
                }
            }
        }
    }

    let handle = Algebra::new(
        format!("{}[{}^{} = {}]", base.name, root_name, r, u.render()),
        basis,
        degrees,
        idx(base.unit_index(), 0),
        constants,
        None,
    );
    // central root: no Koszul check; degrees only when they divide out
    let algebra: AlgebraRef = alloc::sync::Arc::new(handle.clone_with_flags(graded, false));

    let mut embed_matrix = Matrix::zeros(dim, d);
    for i in 0..d {
        embed_matrix.set(idx(i, 0), i, Rat::one());
    }
    let embed = LinearMap::new(base.clone(), algebra.clone(), embed_matrix)?;

    Ok(RootExtension {
        base: base.clone(),
        algebra,
        root_name: root_name.into(),
        order: r,
        relation_rhs: u.clone(),
        embed,
    })
}
