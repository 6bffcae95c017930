//! Generators of validated presentations: point orbifolds and symmetric
//! products.
//!
//! For a symmetric product the input is a coefficient Frobenius algebra `A`
//! (the cohomology or K-theory of the underlying space) together with its
//! tangent class pre-split into lines. The sector of `σ ∈ S_n` is the
//! orbit diagonal: its ring is `A^{⊗c(σ)}` with one tensor slot per orbit
//! of `σ`, the pullbacks are the orbit-refinement multiplication maps, the
//! involution is the identity (σ and σ⁻¹ have the same orbits, and the two
//! sectors share their ring instance), pushforwards are Frobenius adjoints,
//! and sections are derived pivot lifts. An `l`-cycle inside an element of
//! order `r` acts on the tangent lines of its orbit diagonal with the
//! characters `j·r/l`, `j = 1..l-1`, which populates the eigen data; normal
//! classes count `(l-1)` tangent lines per cycle.

use crate::algebra::{
    adjoint_pushforward, tensor_power, Algebra, AlgebraHandle, AlgebraRef, Element, LinearMap,
};
use crate::error::{Error, Result};
use crate::group::{self, Group};
use crate::kclass::{EulerFlavor, KClass, LineGenerator};
use crate::linalg::Matrix;
use crate::quotient::{find_section, find_section_with_preference, Presentation, Sector, TripleData};
use crate::rat::{rint, Rat};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// Coefficient data for a symmetric product: a Frobenius algebra and its
/// tangent class split into named lines (empty for a point).
#[derive(Debug, Clone)]
pub struct FrobeniusInput {
    pub name: String,
    pub flavor: EulerFlavor,
    pub algebra: AlgebraRef,
    /// `(line name, Euler datum in `algebra`)`, one entry per line of the
    /// tangent class.
    pub tangent_lines: Vec<(String, Element)>,
}

/// The one-point space: trivial tangent class.
pub fn point_input() -> FrobeniusInput {
    FrobeniusInput {
        name: "point".into(),
        flavor: EulerFlavor::CH,
        algebra: Algebra::rationals(),
        tangent_lines: Vec::new(),
    }
}

/// `ℚ[x]/(x²)` with `deg x = 2`, `ε(x) = 1`: the cohomology of the
/// projective line.
pub fn cohomology_p1() -> AlgebraRef {
    let dim = 2;
    let mut constants = vec![Rat::zero(); dim * dim * dim];
    let mut set = |i: usize, j: usize, k: usize| {
        constants[(i * dim + j) * dim + k] = Rat::one();
    };
    set(0, 0, 0);
    set(0, 1, 1);
    set(1, 0, 1);
    Algebra::new(
        "H(P1)",
        vec!["1".into(), "x".into()],
        vec![0, 2],
        0,
        constants,
        Some(vec![Rat::zero(), Rat::one()]),
    )
}

/// The projective line in cohomology flavor: tangent line with `c₁ = 2x`.
pub fn p1_input() -> FrobeniusInput {
    let algebra = cohomology_p1();
    let tangent = algebra.basis_elem(1).scale(&rint(2));
    FrobeniusInput {
        name: "P1".into(),
        flavor: EulerFlavor::CH,
        algebra,
        tangent_lines: vec![("T".into(), tangent)],
    }
}

/// `K⁰(ℙ¹) ⊗ ℚ = ℚ[u]/(u²)` with the Euler-characteristic trace
/// `ε(1) = 1, ε(u) = 1`; the tangent line has `Eu(T) = 2u`.
pub fn k_theory_p1_input() -> FrobeniusInput {
    let dim = 2;
    let mut constants = vec![Rat::zero(); dim * dim * dim];
    let mut set = |i: usize, j: usize, k: usize| {
        constants[(i * dim + j) * dim + k] = Rat::one();
    };
    set(0, 0, 0);
    set(0, 1, 1);
    set(1, 0, 1);
    let algebra = Algebra::new(
        "K(P1)",
        vec!["1".into(), "u".into()],
        vec![0, 0],
        0,
        constants,
        Some(vec![Rat::one(), Rat::one()]),
    );
    let tangent = algebra.basis_elem(1).scale(&rint(2));
    FrobeniusInput {
        name: "P1".into(),
        flavor: EulerFlavor::K,
        algebra,
        tangent_lines: vec![("T".into(), tangent)],
    }
}

/// Point orbifold of a finite group: every sector is the ground field, all
/// maps are identities, all classes vanish, and the stringy product is the
/// group algebra.
pub fn build_point_orbifold(id: impl Into<String>, group: Group) -> Presentation {
    let q = Algebra::rationals();
    let identity = LinearMap::identity(&q);
    let n = group.order();
    let sectors: Vec<Sector> = (0..n)
        .map(|m| Sector {
            element: m,
            algebra: q.clone(),
            generators: BTreeMap::new(),
            normal_class: KClass::zero(group.name(m).to_string()),
            eigen: BTreeMap::new(),
            pullback: identity.clone(),
            involution: identity.clone(),
            pushforward: Some(identity.clone()),
            section: Some(identity.clone()),
            alt_sections: BTreeMap::from([(String::from("alt"), identity.clone())]),
        })
        .collect();
    let mut triples = BTreeMap::new();
    for m1 in 0..n {
        for m2 in 0..n {
            let key = format!("{},{}", group.name(m1), group.name(m2));
            triples.insert(
                (m1, m2),
                TripleData {
                    m1,
                    m2,
                    algebra: q.clone(),
                    generators: BTreeMap::new(),
                    pull: [identity.clone(), identity.clone(), identity.clone()],
                    push3: identity.clone(),
                    normal_in_x: KClass::zero(key.clone()),
                    normal_in_m3: KClass::zero(key),
                },
            );
        }
    }
    Presentation {
        id: id.into(),
        flavor: EulerFlavor::CH,
        group,
        sectors,
        triples,
        truncation: 2,
    }
}

/// Sorted orbits (as sorted point sets) of a permutation, fixed points
/// included.
fn orbit_partition(perm: &[usize]) -> Vec<Vec<usize>> {
    group::cycles(perm)
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect()
}

/// Orbits of the subgroup generated by two permutations.
fn joint_partition(p: &[usize], q: &[usize]) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let join = |parent: &mut [usize], a: usize, b: usize| {
        let (ra, rb) = (root(parent, a), root(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    };
    for i in 0..n {
        join(&mut parent, i, p[i]);
        join(&mut parent, i, q[i]);
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    blocks.into_values().collect()
}

fn orbit_name(block: &[usize]) -> String {
    block.iter().map(|&p| (p + 1).to_string()).collect()
}

fn block_index_of(partition: &[Vec<usize>], point: usize) -> usize {
    partition
        .iter()
        .position(|b| b.contains(&point))
        .expect("partition covers all points")
}

/// Decompose a colex tensor index into per-slot base indices.
fn tensor_tuple(index: usize, base_dim: usize, slots: usize) -> Vec<usize> {
    let mut idx = index;
    (0..slots)
        .map(|_| {
            let i = idx % base_dim;
            idx /= base_dim;
            i
        })
        .collect()
}

/// Expand a pure tensor of base elements into the tensor-power algebra.
fn tensor_expand(target: &AlgebraRef, factors: &[Element]) -> Element {
    let base_dim = factors.first().map_or(1, |f| f.coeffs().len());
    let mut coeffs = vec![Rat::zero(); target.dim()];
    for (idx, slot_indices) in (0..target.dim()).map(|i| (i, tensor_tuple(i, base_dim, factors.len())))
    {
        let mut acc = Rat::one();
        for (s, &i) in slot_indices.iter().enumerate() {
            let c = factors[s].coeff(i);
            if c.is_zero() {
                acc = Rat::zero();
                break;
            }
            acc *= c;
        }
        coeffs[idx] = acc;
    }
    target.elem(coeffs)
}

/// The orbit-refinement pullback `A^{⊗|fine|} → A^{⊗|coarse|}`: each fine
/// slot multiplies into the coarse slot containing it, with the Koszul sign
/// of the factor reordering.
fn refinement_map(
    base: &AlgebraRef,
    source: &AlgebraRef,
    target: &AlgebraRef,
    fine: &[Vec<usize>],
    coarse: &[Vec<usize>],
) -> LinearMap {
    let slot_target: Vec<usize> = fine
        .iter()
        .map(|block| block_index_of(coarse, block[0]))
        .collect();
    let d = base.dim();
    let images: Vec<Element> = (0..source.dim())
        .map(|col| {
            let tuple = tensor_tuple(col, d, fine.len());
            // Koszul sign of sorting the factor sequence by target slot
            let mut sign_odd = false;
            for s in 0..tuple.len() {
                for s2 in (s + 1)..tuple.len() {
                    if slot_target[s] > slot_target[s2]
                        && base.degree(tuple[s]) % 2 != 0
                        && base.degree(tuple[s2]) % 2 != 0
                    {
                        sign_odd = !sign_odd;
                    }
                }
            }
            let mut slot_products: Vec<Element> = (0..coarse.len()).map(|_| base.one()).collect();
            for (s, &i) in tuple.iter().enumerate() {
                let t = slot_target[s];
                slot_products[t] = slot_products[t].mul(&base.basis_elem(i));
            }
            let img = tensor_expand(target, &slot_products);
            if sign_odd {
                img.neg()
            } else {
                img
            }
        })
        .collect();
    LinearMap::from_images(source, target, &images)
}

/// Symmetric product `Sym^n` of the input space, `2 ≤ n ≤ 4`.
pub fn build_symmetric_product(input: &FrobeniusInput, n: usize) -> Result<Presentation> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(format!(
            "symmetric product needs 2 <= n <= 4, got {n}"
        )));
    }
    if !input.algebra.is_frobenius() {
        return Err(Error::DegeneratePairing(input.algebra.name.clone()));
    }
    let has_odd = input
        .algebra
        .degrees()
        .iter()
        .any(|d| d % 2 != 0);
    if n == 4 && has_odd {
        return Err(Error::Unsupported(
            "odd-degree coefficients are only supported for n <= 3".into(),
        ));
    }

    let base = &input.algebra;
    let perms = group::permutations(n);
    let group = Group::symmetric(n);
    let order = group.order();

    // one ring instance per inverse pair {σ, σ⁻¹}; σ and σ⁻¹ have the same
    // orbits, so they present the same stratum
    let mut algebras: Vec<Option<AlgebraRef>> = vec![None; order];
    for m in 0..order {
        if algebras[m].is_none() {
            let alg = tensor_power(base, orbit_partition(&perms[m]).len());
            algebras[m] = Some(alg.clone());
            let minv = group.inv(m);
            if algebras[minv].is_none() {
                algebras[minv] = Some(alg);
            }
        }
    }
    let algebras: Vec<AlgebraRef> = algebras.into_iter().map(Option::unwrap).collect();
    let untwisted = algebras[group.identity].clone();
    let singletons: Vec<Vec<usize>> = (0..n).map(|p| vec![p]).collect();

    // per-sector data, generators mutable until the restriction tables are in
    let mut sector_generators: Vec<BTreeMap<String, LineGenerator>> = Vec::with_capacity(order);
    let mut sector_partitions: Vec<Vec<Vec<usize>>> = Vec::with_capacity(order);
    for m in 0..order {
        let partition = orbit_partition(&perms[m]);
        let mut gens = BTreeMap::new();
        for block in &partition {
            let oname = orbit_name(block);
            let slot = block_index_of(&partition, block[0]);
            for (line, datum) in &input.tangent_lines {
                let name = format!("{line}@{oname}");
                let mut factors: Vec<Element> = (0..partition.len()).map(|_| base.one()).collect();
                factors[slot] = datum.clone();
                gens.insert(
                    name.clone(),
                    LineGenerator {
                        name,
                        euler_datum: tensor_expand(&algebras[m], &factors),
                        restrictions: BTreeMap::new(),
                    },
                );
            }
        }
        sector_generators.push(gens);
        sector_partitions.push(partition);
    }

    // triples: stratum of ⟨m₁, m₂⟩ with refinement pullbacks and adjoint
    // pushforward along the ě₃ leg
    let mut triples = BTreeMap::new();
    for m1 in 0..order {
        for m2 in 0..order {
            let key = format!("{},{}", group.name(m1), group.name(m2));
            let m12 = group.mul(m1, m2);
            let m3 = group.inv(m12);
            let coarse = joint_partition(&perms[m1], &perms[m2]);
            let triple_algebra = tensor_power(base, coarse.len());

            let mut generators = BTreeMap::new();
            for block in &coarse {
                let oname = orbit_name(block);
                let slot = block_index_of(&coarse, block[0]);
                for (line, datum) in &input.tangent_lines {
                    let name = format!("{line}@{oname}");
                    let mut factors: Vec<Element> =
                        (0..coarse.len()).map(|_| base.one()).collect();
                    factors[slot] = datum.clone();
                    generators.insert(
                        name.clone(),
                        LineGenerator {
                            name,
                            euler_datum: tensor_expand(&triple_algebra, &factors),
                            restrictions: BTreeMap::new(),
                        },
                    );
                }
            }

            let pull = [
                refinement_map(base, &algebras[m1], &triple_algebra, &sector_partitions[m1], &coarse),
                refinement_map(base, &algebras[m2], &triple_algebra, &sector_partitions[m2], &coarse),
                refinement_map(base, &algebras[m3], &triple_algebra, &sector_partitions[m3], &coarse),
            ];
            // ∨ is the identity on the shared ring of m₃ and m₃⁻¹ = m₁m₂,
            // so ě₃^* coincides with e₃^* and ě₃* is its Frobenius adjoint
            let push3 = adjoint_pushforward(&pull[2])?;

            // N_{X^𝐦/X}: (|O|-1) tangent lines per coarse block;
            // N_{X^𝐦/X^{m₃}}: (r_O - 1) with r_O the m₃-orbits inside O
            let mut normal_in_x = KClass::zero(key.clone());
            let mut normal_in_m3 = KClass::zero(key.clone());
            for block in &coarse {
                let oname = orbit_name(block);
                let inner: BTreeSet<usize> = block
                    .iter()
                    .map(|&p| block_index_of(&sector_partitions[m3], p))
                    .collect();
                for (line, _) in &input.tangent_lines {
                    normal_in_x.add_term(format!("{line}@{oname}"), rint(block.len() as i64 - 1));
                    normal_in_m3.add_term(format!("{line}@{oname}"), rint(inner.len() as i64 - 1));
                }
            }

            // restriction tables for every leg stratum of this triple
            let mut legs: BTreeSet<usize> = BTreeSet::new();
            legs.extend([m1, m2, m3, m12]);
            for &leg in &legs {
                let partition = sector_partitions[leg].clone();
                for block in &partition {
                    let target_block = &coarse[block_index_of(&coarse, block[0])];
                    let from = orbit_name(block);
                    let to = orbit_name(target_block);
                    for (line, _) in &input.tangent_lines {
                        if let Some(gen) = sector_generators[leg].get_mut(&format!("{line}@{from}"))
                        {
                            gen.restrictions
                                .insert(key.clone(), format!("{line}@{to}"));
                        }
                    }
                }
            }

            triples.insert(
                (m1, m2),
                TripleData {
                    m1,
                    m2,
                    algebra: triple_algebra,
                    generators,
                    pull,
                    push3,
                    normal_in_x,
                    normal_in_m3,
                },
            );
        }
    }

    // sectors: eigen data per cycle, refinement pullback from the
    // untwisted ring, identity involution on the shared pair ring
    let mut sectors = Vec::with_capacity(order);
    for m in 0..order {
        let partition = &sector_partitions[m];
        let stratum = group.name(m).to_string();
        let r = group.element_order(m);

        let mut eigen: BTreeMap<usize, KClass> = BTreeMap::new();
        let mut normal_class = KClass::zero(stratum.clone());
        for block in partition {
            let l = block.len();
            if l < 2 {
                continue;
            }
            let oname = orbit_name(block);
            for (line, _) in &input.tangent_lines {
                let gname = format!("{line}@{oname}");
                normal_class.add_term(gname.clone(), rint(l as i64 - 1));
                for j in 1..l {
                    let k = j * (r / l);
                    eigen
                        .entry(k)
                        .or_insert_with(|| KClass::zero(stratum.clone()))
                        .add_term(gname.clone(), Rat::one());
                }
            }
        }

        let pullback = refinement_map(base, &untwisted, &algebras[m], &singletons, partition);
        let involution = LinearMap {
            source: algebras[m].clone(),
            target: algebras[group.inv(m)].clone(),
            matrix: Matrix::identity(algebras[m].dim()),
        };
        let pushforward = adjoint_pushforward(&pullback)?;
        let section = find_section(&pullback)?;
        let alt = find_section_with_preference(&pullback, true)?;

        sectors.push(Sector {
            element: m,
            algebra: algebras[m].clone(),
            generators: sector_generators[m].clone(),
            normal_class,
            eigen,
            pullback,
            involution,
            pushforward: Some(pushforward),
            section: Some(section),
            alt_sections: BTreeMap::from([(String::from("alt"), alt)]),
        });
    }

    // default truncation: algebra top degree/2 plus the largest rank in
    // play, padded by one; anything larger gives identical output
    let top_degree = untwisted.degrees().iter().copied().max().unwrap_or(0);
    let max_rank = (n as i64 - 1) * input.tangent_lines.len() as i64;
    let truncation = (top_degree / 2 + max_rank + 1).max(2) as usize;

    Ok(Presentation {
        id: format!("sym{n}-{}", input.name),
        flavor: input.flavor,
        group,
        sectors,
        triples,
        truncation,
    })
}
