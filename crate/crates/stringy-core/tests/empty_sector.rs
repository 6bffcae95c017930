//! A free involution: two points swapped by ℤ/2. The twisted fixed locus
//! is empty, modeled as the zero ring, and every product through it
//! vanishes while the untwisted sector multiplies as usual.

use std::collections::BTreeMap;

use num_traits::Zero;
use stringy_core::algebra::{Algebra, AlgebraHandle, LinearMap};
use stringy_core::group::Group;
use stringy_core::kclass::{EulerFlavor, KClass};
use stringy_core::linalg::Matrix;
use stringy_core::product::{product_table, verify_axioms, verify_mainprop, Route};
use stringy_core::quotient::{find_section, Presentation, Sector, TripleData};
use stringy_core::rat::{rint, Rat};

/// `H*(two points) = ℚ[d]/(d² - 1)` with the two-point integration trace.
fn two_points() -> stringy_core::algebra::AlgebraRef {
    let dim = 2;
    let mut constants = vec![Rat::zero(); dim * dim * dim];
    let mut set = |i: usize, j: usize, k: usize| {
        constants[(i * dim + j) * dim + k] = rint(1);
    };
    set(0, 0, 0);
    set(0, 1, 1);
    set(1, 0, 1);
    set(1, 1, 0); // d² = 1
    Algebra::new(
        "H(2pts)",
        vec!["1".into(), "d".into()],
        vec![0, 0],
        0,
        constants,
        Some(vec![rint(2), Rat::zero()]),
    )
}

fn free_involution() -> Presentation {
    let group = Group::cyclic(2);
    let untwisted = two_points();
    let empty = Algebra::zero_ring("H(empty)");

    let id_e = LinearMap::identity(&untwisted);
    // everything through the empty sector is the zero map
    let to_empty = LinearMap::new(untwisted.clone(), empty.clone(), Matrix::zeros(0, 2)).unwrap();
    let on_empty = LinearMap::identity(&empty);
    let from_empty = LinearMap::new(empty.clone(), untwisted.clone(), Matrix::zeros(2, 0)).unwrap();

    let sector_e = Sector {
        element: 0,
        algebra: untwisted.clone(),
        generators: BTreeMap::new(),
        normal_class: KClass::zero("e"),
        eigen: BTreeMap::new(),
        pullback: id_e.clone(),
        involution: id_e.clone(),
        pushforward: Some(id_e.clone()),
        section: Some(id_e.clone()),
        alt_sections: BTreeMap::new(),
    };
    let sector_g = Sector {
        element: 1,
        algebra: empty.clone(),
        generators: BTreeMap::new(),
        normal_class: KClass::zero("g"),
        eigen: BTreeMap::new(),
        pullback: to_empty.clone(),
        involution: on_empty.clone(),
        pushforward: Some(from_empty.clone()),
        section: Some(find_section(&to_empty).unwrap()),
        alt_sections: BTreeMap::new(),
    };

    let mut triples = BTreeMap::new();
    for (m1, m2) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let key = if (m1, m2) == (0, 0) { "e,e" } else { "twisted" };
        // the common fixed locus is empty as soon as g is involved
        let (algebra, pull, push3) = if (m1, m2) == (0, 0) {
            (
                untwisted.clone(),
                [id_e.clone(), id_e.clone(), id_e.clone()],
                id_e.clone(),
            )
        } else {
            let legs = [m1, m2, group.inv(group.mul(m1, m2))];
            let pull_of = |m: usize| {
                if m == 0 {
                    to_empty.clone()
                } else {
                    on_empty.clone()
                }
            };
            let push3 = if group.mul(m1, m2) == 0 {
                from_empty.clone()
            } else {
                on_empty.clone()
            };
            (
                empty.clone(),
                [pull_of(legs[0]), pull_of(legs[1]), pull_of(legs[2])],
                push3,
            )
        };
        let stratum = if (m1, m2) == (0, 0) {
            "e,e".to_string()
        } else {
            format!("{},{}", group.name(m1), group.name(m2))
        };
        let _ = key;
        triples.insert(
            (m1, m2),
            TripleData {
                m1,
                m2,
                algebra,
                generators: BTreeMap::new(),
                pull,
                push3,
                normal_in_x: KClass::zero(stratum.clone()),
                normal_in_m3: KClass::zero(stratum),
            },
        );
    }

    Presentation {
        id: "free-involution".into(),
        flavor: EulerFlavor::CH,
        group,
        sectors: vec![sector_e, sector_g],
        triples,
        truncation: 2,
    }
}

#[test]
fn empty_twisted_sector_validates() {
    let p = free_involution();
    let report = p.validate();
    assert!(report.ok(), "{:?}", report.findings);
    assert!(p.verify_obstructions().ok());
}

#[test]
fn products_through_the_empty_sector_vanish() {
    let p = free_involution();
    let table = product_table(&p, Route::PullPush, None).unwrap();
    // only untwisted pairs produce entries; the zero ring has no basis
    assert_eq!(table.entries.len(), 4);
    assert!(table.entries.keys().all(|&(m1, m2, _, _)| m1 == 0 && m2 == 0));
    // d·d = 1 in the untwisted sector
    let a = &p.sector(0).algebra;
    let dd = table.entries.get(&(0, 0, 1, 1)).unwrap();
    assert_eq!(dd, &a.one());
}

#[test]
fn axioms_and_routes_hold_vacuously() {
    let p = free_involution();
    let report = verify_axioms(&p);
    assert!(report.ok(), "{:?}", report.findings);
    let report = verify_mainprop(&p);
    assert!(report.ok(), "{:?}", report.findings);
}
