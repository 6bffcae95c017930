//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`) and enforcing its time budget. All
//! comparisons are exact rational equalities — zero tolerance.
//!
//! Run as `cargo test -p stringy-cli --test acceptance -- --nocapture`.

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use stringy_cli::commands::{self, Options};
use stringy_cli::dataset::parse;
use stringy_core::algebra::AlgebraHandle;
use stringy_core::product::{
    product_table, pullpush_product, verify_axioms, verify_maineq_integral, verify_mainprop,
    Route,
};
use stringy_core::quotient::Presentation;
use stringy_core::rat::{rint, Rat};
use stringy_core::report::Status;
use stringy_core::roots::adjoin_root;
use stringy_core::symbolic::verify_trivial_cocycle;

const GOLDENS: [&str; 6] = [
    "point-Z2.sod",
    "point-S3.sod",
    "sym2-P1.sod",
    "sym3-P1.sod",
    "sym2-point.sod",
    "sym4-point.sod",
];

fn load(name: &str) -> Presentation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../datasets")
        .join(name);
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {name}: {e}"));
    parse(&text).unwrap_or_else(|e| panic!("parsing {name}: {e}"))
}

fn conclude(criterion: &str, start: Instant, budget: Duration, ok: bool) {
    let elapsed = start.elapsed();
    println!(
        "acceptance {criterion}: {} ({} ms, budget {} ms)",
        if ok { "pass" } else { "FAIL" },
        elapsed.as_millis(),
        budget.as_millis()
    );
    assert!(ok, "criterion {criterion} failed");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its budget: {elapsed:?} > {budget:?}"
    );
}

#[test]
fn criterion_1_group_algebra_degeneration() {
    // the point orbifold of S₃ multiplies exactly like ℚ[S₃]
    let start = Instant::now();
    let p = load("point-S3.sod");
    let table = product_table(&p, Route::PullPush, None).unwrap();
    let mut ok = table.entries.len() == 36;
    for ((m1, m2, i, j), value) in &table.entries {
        let m12 = p.group.mul(*m1, *m2);
        ok &= *i == 0 && *j == 0 && value == &p.sector(m12).algebra.one();
    }
    conclude("1 group-algebra degeneration", start, Duration::from_secs(1), ok);
}

#[test]
fn criterion_2_normal_bundle_identity() {
    // S_m ⊕ ∨(S_{m⁻¹}) = N_{X^m/X} on every sector of every shipped dataset
    let start = Instant::now();
    let mut ok = true;
    for name in GOLDENS {
        let p = load(name);
        for m in 0..p.group.order() {
            let s = p.s_class(m).unwrap();
            let s_inv = p
                .s_class(p.group.inv(m))
                .unwrap()
                .retag(p.sector_stratum(m));
            let total = s.plus(&s_inv).unwrap();
            ok &= total == p.sector(m).normal_class;
        }
    }
    conclude("2 normal-bundle identity", start, Duration::from_secs(1), ok);
}

#[test]
fn criterion_3_obstruction_integrality() {
    // rank R(𝐦) ∈ ℤ≥0 and R effective on every triple, exhaustively
    use num_traits::Signed;
    let start = Instant::now();
    let mut ok = true;
    for name in ["sym2-P1.sod", "sym3-P1.sod", "sym4-point.sod"] {
        let p = load(name);
        let mut triples = 0usize;
        for &(m1, m2) in p.triples.keys() {
            let r = p.obstruction(m1, m2).unwrap();
            ok &= r.rank().is_integer() && !r.rank().is_negative() && r.is_effective();
            triples += 1;
        }
        ok &= triples == p.group.order() * p.group.order();
    }
    conclude("3 obstruction integrality", start, Duration::from_secs(5), ok);
}

#[test]
fn criterion_4_mainprop_route_agreement() {
    // pull-push and push-pull product tables identical on all basis pairs,
    // including under the second (alt) section set
    let start = Instant::now();
    let mut ok = true;
    for name in ["point-S3.sod", "sym2-P1.sod", "sym3-P1.sod"] {
        let p = load(name);
        let report = verify_mainprop(&p);
        ok &= report.ok();
        ok &= !report.findings.iter().any(|f| f.status == Status::Skip);
        // the sweep really ran under both section sets
        ok &= report.cases >= 2 * p.triples.len();
    }
    // the alt section set is genuinely different where the strata allow it
    for name in ["sym2-P1.sod", "sym3-P1.sod"] {
        let p = load(name);
        let distinct = (0..p.group.order()).any(|m| {
            let sector = p.sector(m);
            match (&sector.section, sector.alt_sections.get("alt")) {
                (Some(main), Some(alt)) => main != alt,
                _ => false,
            }
        });
        ok &= distinct;
    }
    conclude("4 route agreement (mainprop)", start, Duration::from_secs(30), ok);
}

#[test]
fn criterion_5_associativity_and_module_structure() {
    // exhaustive basis-triple associativity and a·v = a*v sweeps on sym3-P1
    let start = Instant::now();
    let p = load("sym3-P1.sod");
    let report = verify_axioms(&p);
    let ok = report.ok() && report.cases > 10_000;
    conclude("5 associativity and module structure", start, Duration::from_secs(60), ok);
}

#[test]
#[allow(clippy::needless_range_loop)] // the oracle is written index-style on purpose
fn criterion_6_worked_products_against_gram_oracle() {
    // expected values come from an independent pushforward oracle: solve
    // ⟨Δ!(a), b⟩ = ⟨a, Δ*(b)⟩ from the Gram system with a local
    // elimination routine, then compare the product engine against them
    let start = Instant::now();
    let p = load("sym2-P1.sod");
    let sigma = p.group.index_of("(12)").unwrap();
    let e = p.group.identity;
    let a = p.sector(sigma).algebra.clone();
    let aa = p.sector(e).algebra.clone();

    // Gram matrix of the pairing on A⊗A and the map matrix of Δ* = mult
    let dim = aa.dim();
    let gram: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| aa.trace(&aa.basis_elem(i).mul(&aa.basis_elem(j))).unwrap())
                .collect()
        })
        .collect();
    let mult = |j: usize| -> stringy_core::algebra::Element {
        let name = aa.basis_name(j);
        let (l, r) = name.split_once('⊗').unwrap();
        a.basis_elem(a.basis_index(l).unwrap())
            .mul(&a.basis_elem(a.basis_index(r).unwrap()))
    };
    // Δ!(v): solve Σ_i x_i·⟨b_i, b_j⟩ = ⟨v, mult(b_j)⟩_A for all j
    let oracle_push = |v: &stringy_core::algebra::Element| -> Vec<Rat> {
        let rhs: Vec<Rat> = (0..dim)
            .map(|j| a.trace(&v.mul(&mult(j))).unwrap())
            .collect();
        // solve gramᵀ·x = rhs by plain Gaussian elimination, written here
        // independently of the library's solver
        let mut m: Vec<Vec<Rat>> = (0..dim)
            .map(|r| {
                let mut row: Vec<Rat> = (0..dim).map(|c| gram[c][r].clone()).collect();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let mut row = 0;
        for col in 0..dim {
            let Some(pivot) = (row..dim).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, pivot);
            let inv = Rat::one() / m[row][col].clone();
            for c in col..=dim {
                m[row][c] = &m[row][c] * &inv;
            }
            for r in 0..dim {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=dim {
                        m[r][c] = &m[r][c] - &f * &m[row][c];
                    }
                }
            }
            row += 1;
        }
        let mut x = vec![Rat::zero(); dim];
        let mut r = 0;
        for col in 0..dim {
            if r < dim && m[r][col] == Rat::one() && (0..r).all(|rr| m[rr][col].is_zero()) {
                x[col] = m[r][dim].clone();
                r += 1;
            }
        }
        x
    };

    // frozen expectations: Δ!(1) = x⊗1 + 1⊗x and Δ!(x) = x⊗x
    let expected_d1 = aa.elem(oracle_push(&a.one()));
    let expected_dx = aa.elem(oracle_push(&a.basis_elem(1)));
    let mut diag = vec![Rat::zero(); dim];
    diag[aa.basis_index("x⊗1").unwrap()] = rint(1);
    diag[aa.basis_index("1⊗x").unwrap()] = rint(1);
    let mut xx = vec![Rat::zero(); dim];
    xx[aa.basis_index("x⊗x").unwrap()] = rint(1);
    let mut ok = expected_d1 == aa.elem(diag) && expected_dx == aa.elem(xx);

    // the product engine reproduces the oracle values
    let p11 = pullpush_product(&p, sigma, sigma, &a.one(), &a.one()).unwrap();
    let p1x = pullpush_product(&p, sigma, sigma, &a.one(), &a.basis_elem(1)).unwrap();
    ok &= p11 == expected_d1 && p1x == expected_dx;

    conclude("6 worked products vs Gram oracle", start, Duration::from_secs(5), ok);
}

#[test]
fn criterion_7_cocycle_triviality() {
    // the formal trivialization holds on all shipped datasets, and the
    // Sym²(ℙ¹) instance reduces to 𝔈u(S_σ)² = Eu(T) = 2x, checked both in
    // the symbol calculus and in the root extension Q[x]/(x²)[w]/(w²-2x)
    let start = Instant::now();
    let mut ok = true;
    for name in GOLDENS {
        let p = load(name);
        ok &= verify_trivial_cocycle(&p).ok();
    }

    let p = load("sym2-P1.sod");
    let sigma = p.group.index_of("(12)").unwrap();
    let (lhs, rhs) = stringy_core::symbolic::trivial_cocycle_sides(&p, sigma, sigma).unwrap();
    let two_x = p
        .triple(sigma, sigma)
        .unwrap()
        .algebra
        .basis_elem(1)
        .scale(&rint(2));
    ok &= lhs.as_concrete() == Some(&two_x) && rhs.as_concrete() == Some(&two_x);

    // root extension route: w² = 2x realizes 𝔈u(S_σ)²
    let a = p.sector(sigma).algebra.clone();
    let ext = adjoin_root(&a, &a.basis_elem(1).scale(&rint(2)), 2, "w").unwrap();
    let realized = stringy_core::symbolic::root_realization(&p, sigma).unwrap();
    ok &= realized.element.mul(&realized.element)
        == realized
            .embed
            .apply(&a.basis_elem(1).scale(&rint(2)))
            .unwrap();
    ok &= ext.root().mul(&ext.root()) == ext.embed.apply(&a.basis_elem(1).scale(&rint(2))).unwrap();

    conclude("7 cocycle triviality", start, Duration::from_secs(10), ok);
}

#[test]
fn criterion_8_truncation_stability() {
    // doubling the truncation changes no table and no report
    let start = Instant::now();
    let mut ok = true;
    for name in GOLDENS {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../../datasets")
            .join(name);
        let text = fs::read_to_string(&path).unwrap();
        let base_truncation = parse(&text).unwrap().truncation;
        for (route_flag, command) in [
            (Some(Route::PullPush), "table"),
            (Some(Route::PushPull), "table"),
            (None, "verify"),
            (None, "cocycles"),
        ] {
            let run = |truncation: Option<usize>| {
                let opts = Options {
                    route: route_flag.unwrap_or(Route::PullPush),
                    truncation,
                    section_set: None,
                    format: stringy_cli::render::Format::Text,
                };
                match command {
                    "table" => commands::cmd_table(&text, &opts),
                    "verify" => commands::cmd_verify(&text, &opts),
                    _ => commands::cmd_cocycles(&text, &opts),
                }
            };
            let (code_a, out_a) = run(None);
            let (code_b, out_b) = run(Some(base_truncation * 2));
            ok &= code_a == code_b;
            if command == "cocycles" {
                // the γ(t) series itself is printed with its truncation; a
                // longer t-range must only append zero coefficients, so
                // the rendered entries still agree
                ok &= out_a == out_b;
            } else {
                ok &= out_a == out_b;
            }
        }
    }
    conclude("8 truncation stability", start, Duration::from_secs(60), ok);
}

#[test]
fn criterion_9_excess_intersection_route() {
    // the division route agrees with pull-push wherever the age classes
    // are integral (point orbifolds; the 3-cycle sectors of sym3-P1), and
    // skips cleanly elsewhere
    let start = Instant::now();
    let mut ok = true;

    for name in ["point-Z2.sod", "point-S3.sod"] {
        let p = load(name);
        let report = verify_maineq_integral(&p);
        ok &= report.ok() && report.findings.is_empty() && report.cases > 0;
    }

    let p = load("sym3-P1.sod");
    let report = verify_maineq_integral(&p);
    ok &= report.ok();
    let skips = report
        .findings
        .iter()
        .filter(|f| f.status == Status::Skip)
        .count();
    // exactly the 27 triples touching a transposition skip; the 9 pairs
    // from the alternating subgroup run
    ok &= skips == 27;
    ok &= report
        .findings
        .iter()
        .all(|f| f.status == Status::Skip && f.witness.contains("root extension"));
    ok &= report.cases > 0;

    conclude("9 excess-intersection route", start, Duration::from_secs(30), ok);
}
