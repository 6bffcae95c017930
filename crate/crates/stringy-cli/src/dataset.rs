//! The dataset file format: a self-contained, line-oriented text document
//! describing a quotient presentation.
//!
//! Every line is one statement, `<entity> <key> <field> <payload…>`;
//! blank lines and `#` comment lines are ignored. Rationals are written
//! `p/q` (integers without the denominator), elements as `q*basis` terms
//! joined by ` + `, and zero as `0`. Linear maps list the image of every
//! source basis vector, one `src -> expr` line each. Names must be free of
//! whitespace, `*`, `=`, and `->`.
//!
//! Parsing is strict about structure (unknown references, missing map rows,
//! and a triple without its `push3` pushforward are reported as semantic
//! errors naming the culprit) while every mathematical property is left to
//! `Presentation::validate`. Serialization is deterministic, so
//! `serialize ∘ parse` is the identity on serialized files.
//!
//! ```text
//! stringy-dataset v1
//! id sym2-P1
//! flavor CH
//! truncation 4
//! group symmetric 2
//!
//! algebra alg0 basis 1 x
//! algebra alg0 degrees 0 2
//! algebra alg0 unit 1
//! algebra alg0 trace 1 = 0
//! algebra alg0 trace x = 1
//! algebra alg0 const 1*1 = 1*1
//! ...
//! sector (12) algebra alg0
//! sector (12) normal 1*T@12
//! sector (12) eigen 1 = 1*T@12
//! sector (12) generator T@12 euler 2*x
//! sector (12) generator T@12 restrict (12),(12) -> T@12
//! sector (12) pullback 1⊗1 -> 1*1
//! ...
//! triple (12),(12) algebra alg0
//! triple (12),(12) e1 1 -> 1*1
//! triple (12),(12) push3 1 -> 1*x⊗1 + 1*1⊗x
//! triple (12),(12) normalx 1*T@12
//! triple (12),(12) normalm3 1*T@12
//! ```

use std::collections::BTreeMap;
use std::fmt;

use stringy_core::algebra::{Algebra, AlgebraHandle, AlgebraRef, Element, LinearMap};
use stringy_core::group::Group;
use stringy_core::kclass::{EulerFlavor, KClass, LineGenerator};
use stringy_core::quotient::{Presentation, Sector, TripleData};
use stringy_core::rat::{self, Rat};
use num_traits::Zero;

#[derive(Debug)]
pub enum FileError {
    /// Malformed line; carries the 1-based line number.
    Syntax { line: usize, msg: String },
    /// Structurally incomplete document.
    Semantic { msg: String },
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Syntax { line, msg } => write!(f, "line {line}: {msg}"),
            FileError::Semantic { msg } => write!(f, "{msg}"),
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FileError {
    FileError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn semantic(msg: impl Into<String>) -> FileError {
    FileError::Semantic { msg: msg.into() }
}

/// Single-assignment fields reject a second statement: conflicting
/// duplicates would make the presentation ambiguous.
fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, what: &str) -> Result<(), FileError> {
    if slot.is_some() {
        return Err(syntax(line, format!("duplicate {what}")));
    }
    *slot = Some(value);
    Ok(())
}

// ---------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------

#[derive(Default)]
struct AlgebraDraft {
    basis: Option<Vec<String>>,
    degrees: Option<Vec<i64>>,
    unit: Option<String>,
    trace: BTreeMap<String, Rat>,
    has_trace: bool,
    consts: Vec<(usize, String, String, String)>, // line, bi, bj, expr
}

/// Euler-datum line (if seen) plus restriction entries for one generator.
type GeneratorDraft = (Option<(usize, String)>, BTreeMap<String, String>);

#[derive(Default)]
struct SectorDraft {
    algebra: Option<String>,
    normal: Option<(usize, String)>,
    eigen: Vec<(usize, usize, String)>,
    generators: BTreeMap<String, GeneratorDraft>,
    pullback: Vec<(usize, String, String)>,
    involution: Vec<(usize, String, String)>,
    pushforward: Vec<(usize, String, String)>,
    sections: BTreeMap<String, Vec<(usize, String, String)>>,
}

#[derive(Default)]
struct TripleDraft {
    algebra: Option<String>,
    maps: BTreeMap<String, Vec<(usize, String, String)>>, // e1/e2/e3/push3
    normal_x: Option<(usize, String)>,
    normal_m3: Option<(usize, String)>,
    generators: BTreeMap<String, (usize, String)>,
}

#[derive(Default)]
struct GroupDraft {
    shorthand: Option<(String, usize)>,
    elements: Option<Vec<String>>,
    identity: Option<String>,
    mul: Vec<(usize, String, String, String)>,
}

pub fn parse(text: &str) -> Result<Presentation, FileError> {
    let mut id: Option<String> = None;
    let mut flavor: Option<EulerFlavor> = None;
    let mut truncation: Option<usize> = None;
    let mut group_draft = GroupDraft::default();
    let mut algebras: BTreeMap<String, AlgebraDraft> = BTreeMap::new();
    let mut sectors: BTreeMap<String, SectorDraft> = BTreeMap::new();
    let mut triples: BTreeMap<String, TripleDraft> = BTreeMap::new();
    let mut saw_header = false;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if !saw_header {
            if tokens != ["stringy-dataset", "v1"] {
                return Err(syntax(lineno, "expected header `stringy-dataset v1`"));
            }
            saw_header = true;
            continue;
        }
        match tokens[0] {
            "id" => {
                id = Some(arg(&tokens, 1, lineno, "dataset id")?.to_string());
            }
            "flavor" => {
                flavor = Some(match arg(&tokens, 1, lineno, "flavor")? {
                    "CH" => EulerFlavor::CH,
                    "K" => EulerFlavor::K,
                    other => return Err(syntax(lineno, format!("unknown flavor {other}"))),
                });
            }
            "truncation" => {
                truncation = Some(
                    arg(&tokens, 1, lineno, "truncation")?
                        .parse()
                        .map_err(|_| syntax(lineno, "truncation must be an integer"))?,
                );
            }
            "group" => match arg(&tokens, 1, lineno, "group statement")? {
                "symmetric" | "cyclic" => {
                    let n: usize = arg(&tokens, 2, lineno, "group size")?
                        .parse()
                        .map_err(|_| syntax(lineno, "group size must be an integer"))?;
                    group_draft.shorthand = Some((tokens[1].to_string(), n));
                }
                "elements" => {
                    group_draft.elements =
                        Some(tokens[2..].iter().map(|s| s.to_string()).collect());
                }
                "identity" => {
                    group_draft.identity = Some(arg(&tokens, 2, lineno, "identity")?.to_string());
                }
                "mul" => {
                    let lhs = arg(&tokens, 2, lineno, "product pair")?;
                    let (a, b) = lhs
                        .split_once('*')
                        .ok_or_else(|| syntax(lineno, "expected a*b"))?;
                    expect(&tokens, 3, "=", lineno)?;
                    let c = arg(&tokens, 4, lineno, "product value")?;
                    group_draft
                        .mul
                        .push((lineno, a.to_string(), b.to_string(), c.to_string()));
                }
                other => return Err(syntax(lineno, format!("unknown group field {other}"))),
            },
            "algebra" => {
                let aid = arg(&tokens, 1, lineno, "algebra id")?.to_string();
                let draft = algebras.entry(aid).or_default();
                match arg(&tokens, 2, lineno, "algebra field")? {
                    "basis" => {
                        draft.basis = Some(tokens[3..].iter().map(|s| s.to_string()).collect())
                    }
                    "degrees" => {
                        let mut degrees = Vec::new();
                        for t in &tokens[3..] {
                            degrees.push(
                                t.parse()
                                    .map_err(|_| syntax(lineno, "degree must be an integer"))?,
                            );
                        }
                        draft.degrees = Some(degrees);
                    }
                    "unit" => draft.unit = Some(arg(&tokens, 3, lineno, "unit name")?.to_string()),
                    "trace" => {
                        let name = arg(&tokens, 3, lineno, "basis name")?;
                        expect(&tokens, 4, "=", lineno)?;
                        let q = rat::parse(arg(&tokens, 5, lineno, "rational")?)
                            .ok_or_else(|| syntax(lineno, "bad rational"))?;
                        draft.has_trace = true;
                        if draft.trace.insert(name.to_string(), q).is_some() {
                            return Err(syntax(lineno, format!("duplicate trace entry {name}")));
                        }
                    }
                    "const" => {
                        let pair = arg(&tokens, 3, lineno, "basis pair")?;
                        let (bi, bj) = pair
                            .split_once('*')
                            .ok_or_else(|| syntax(lineno, "expected bi*bj"))?;
                        expect(&tokens, 4, "=", lineno)?;
                        let expr = tokens[5..].join(" ");
                        draft
                            .consts
                            .push((lineno, bi.to_string(), bj.to_string(), expr));
                    }
                    other => return Err(syntax(lineno, format!("unknown algebra field {other}"))),
                }
            }
            "sector" => {
                let name = arg(&tokens, 1, lineno, "sector name")?.to_string();
                let draft = sectors.entry(name).or_default();
                match arg(&tokens, 2, lineno, "sector field")? {
                    "algebra" => {
                        let id = arg(&tokens, 3, lineno, "algebra id")?.to_string();
                        set_once(&mut draft.algebra, id, lineno, "sector algebra")?;
                    }
                    "normal" => set_once(
                        &mut draft.normal,
                        (lineno, tokens[3..].join(" ")),
                        lineno,
                        "sector normal class",
                    )?,
                    "eigen" => {
                        let k: usize = arg(&tokens, 3, lineno, "eigen index")?
                            .parse()
                            .map_err(|_| syntax(lineno, "eigen index must be an integer"))?;
                        expect(&tokens, 4, "=", lineno)?;
                        draft.eigen.push((lineno, k, tokens[5..].join(" ")));
                    }
                    "generator" => {
                        let gname = arg(&tokens, 3, lineno, "generator name")?.to_string();
                        let entry = draft.generators.entry(gname).or_default();
                        match arg(&tokens, 4, lineno, "generator field")? {
                            "euler" => set_once(
                                &mut entry.0,
                                (lineno, tokens[5..].join(" ")),
                                lineno,
                                "generator euler datum",
                            )?,
                            "restrict" => {
                                let stratum = arg(&tokens, 5, lineno, "stratum")?.to_string();
                                expect(&tokens, 6, "->", lineno)?;
                                let target = arg(&tokens, 7, lineno, "target generator")?;
                                entry.1.insert(stratum, target.to_string());
                            }
                            other => {
                                return Err(syntax(
                                    lineno,
                                    format!("unknown generator field {other}"),
                                ))
                            }
                        }
                    }
                    kind @ ("pullback" | "involution" | "pushforward") => {
                        let src = arg(&tokens, 3, lineno, "source basis")?.to_string();
                        expect(&tokens, 4, "->", lineno)?;
                        let expr = tokens[5..].join(" ");
                        let rows = match kind {
                            "pullback" => &mut draft.pullback,
                            "involution" => &mut draft.involution,
                            _ => &mut draft.pushforward,
                        };
                        rows.push((lineno, src, expr));
                    }
                    "section" => {
                        let set = arg(&tokens, 3, lineno, "section set")?.to_string();
                        let src = arg(&tokens, 4, lineno, "source basis")?.to_string();
                        expect(&tokens, 5, "->", lineno)?;
                        let expr = tokens[6..].join(" ");
                        draft.sections.entry(set).or_default().push((lineno, src, expr));
                    }
                    other => return Err(syntax(lineno, format!("unknown sector field {other}"))),
                }
            }
            "triple" => {
                let key = arg(&tokens, 1, lineno, "triple key")?.to_string();
                let draft = triples.entry(key).or_default();
                match arg(&tokens, 2, lineno, "triple field")? {
                    "algebra" => {
                        let id = arg(&tokens, 3, lineno, "algebra id")?.to_string();
                        set_once(&mut draft.algebra, id, lineno, "triple algebra")?;
                    }
                    kind @ ("e1" | "e2" | "e3" | "push3") => {
                        let src = arg(&tokens, 3, lineno, "source basis")?.to_string();
                        expect(&tokens, 4, "->", lineno)?;
                        let expr = tokens[5..].join(" ");
                        draft
                            .maps
                            .entry(kind.to_string())
                            .or_default()
                            .push((lineno, src, expr));
                    }
                    "normalx" => set_once(
                        &mut draft.normal_x,
                        (lineno, tokens[3..].join(" ")),
                        lineno,
                        "triple normalx",
                    )?,
                    "normalm3" => set_once(
                        &mut draft.normal_m3,
                        (lineno, tokens[3..].join(" ")),
                        lineno,
                        "triple normalm3",
                    )?,
                    "generator" => {
                        let gname = arg(&tokens, 3, lineno, "generator name")?.to_string();
                        expect(&tokens, 4, "euler", lineno)?;
                        if draft
                            .generators
                            .insert(gname.clone(), (lineno, tokens[5..].join(" ")))
                            .is_some()
                        {
                            return Err(syntax(lineno, format!("duplicate generator {gname}")));
                        }
                    }
                    other => return Err(syntax(lineno, format!("unknown triple field {other}"))),
                }
            }
            other => return Err(syntax(lineno, format!("unknown statement {other}"))),
        }
    }

    if !saw_header {
        return Err(semantic("empty document"));
    }
    let id = id.ok_or_else(|| semantic("missing `id` statement"))?;
    let flavor = flavor.ok_or_else(|| semantic("missing `flavor` statement"))?;
    let truncation = truncation.ok_or_else(|| semantic("missing `truncation` statement"))?;

    // group
    let group = match group_draft.shorthand {
        Some((kind, n)) => {
            if kind == "symmetric" {
                Group::symmetric(n)
            } else {
                Group::cyclic(n)
            }
        }
        None => {
            let names = group_draft
                .elements
                .ok_or_else(|| semantic("missing `group elements`"))?;
            let n = names.len();
            let index = |name: &str, line: usize| {
                names
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| syntax(line, format!("unknown group element {name}")))
            };
            let mut table = vec![usize::MAX; n * n];
            for (line, a, b, c) in &group_draft.mul {
                let (i, j, k) = (index(a, *line)?, index(b, *line)?, index(c, *line)?);
                table[i * n + j] = k;
            }
            if let Some(pos) = table.iter().position(|&x| x == usize::MAX) {
                return Err(semantic(format!(
                    "group table incomplete: missing {}*{}",
                    names[pos / n],
                    names[pos % n]
                )));
            }
            Group::from_table(names, table).map_err(|e| semantic(format!("{e}")))?
        }
    };

    // algebras
    let mut algebra_refs: BTreeMap<String, AlgebraRef> = BTreeMap::new();
    for (aid, draft) in &algebras {
        let basis = draft
            .basis
            .clone()
            .ok_or_else(|| semantic(format!("algebra {aid}: missing basis")))?;
        let degrees = draft
            .degrees
            .clone()
            .ok_or_else(|| semantic(format!("algebra {aid}: missing degrees")))?;
        if degrees.len() != basis.len() {
            return Err(semantic(format!("algebra {aid}: degree count mismatch")));
        }
        let unit_name = draft
            .unit
            .clone()
            .ok_or_else(|| semantic(format!("algebra {aid}: missing unit")))?;
        let unit = basis
            .iter()
            .position(|b| b == &unit_name)
            .ok_or_else(|| semantic(format!("algebra {aid}: unknown unit {unit_name}")))?;
        let dim = basis.len();
        let index = |name: &str, line: usize| {
            basis
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| syntax(line, format!("unknown basis element {name} in {aid}")))
        };
        let mut constants = vec![Rat::zero(); dim * dim * dim];
        for (line, bi, bj, expr) in &draft.consts {
            let i = index(bi, *line)?;
            let j = index(bj, *line)?;
            for (k, q) in parse_combination(expr, *line, &|name| {
                basis.iter().position(|x| x == name)
            })? {
                constants[(i * dim + j) * dim + k] = q;
            }
        }
        let trace = if draft.has_trace {
            let mut t = vec![Rat::zero(); dim];
            for (name, q) in &draft.trace {
                let i = basis
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| semantic(format!("algebra {aid}: unknown trace entry {name}")))?;
                t[i] = q.clone();
            }
            Some(t)
        } else {
            None
        };
        algebra_refs.insert(
            aid.clone(),
            Algebra::new(aid.clone(), basis, degrees, unit, constants, trace),
        );
    }

    let lookup_algebra = |id: &Option<String>, what: &str| -> Result<AlgebraRef, FileError> {
        let id = id
            .as_ref()
            .ok_or_else(|| semantic(format!("{what}: missing algebra reference")))?;
        algebra_refs
            .get(id)
            .cloned()
            .ok_or_else(|| semantic(format!("{what}: unknown algebra {id}")))
    };

    // sectors, one per group element
    for name in sectors.keys() {
        if group.index_of(name).is_none() {
            return Err(semantic(format!("sector {name}: not a group element")));
        }
    }
    let mut sector_algebras: Vec<AlgebraRef> = Vec::with_capacity(group.order());
    for m in 0..group.order() {
        let name = group.name(m);
        let draft = sectors
            .get(name)
            .ok_or_else(|| semantic(format!("missing sector block for {name}")))?;
        sector_algebras.push(lookup_algebra(&draft.algebra, &format!("sector {name}"))?);
    }
    let untwisted = sector_algebras[group.identity].clone();

    let mut built_sectors = Vec::with_capacity(group.order());
    for m in 0..group.order() {
        let name = group.name(m).to_string();
        let draft = &sectors[&name];
        let algebra = sector_algebras[m].clone();
        let minv_algebra = sector_algebras[group.inv(m)].clone();

        let mut generators = BTreeMap::new();
        for (gname, (euler, restrictions)) in &draft.generators {
            let (line, expr) = euler.as_ref().ok_or_else(|| {
                semantic(format!("sector {name}: generator {gname} has no euler datum"))
            })?;
            generators.insert(
                gname.clone(),
                LineGenerator {
                    name: gname.clone(),
                    euler_datum: parse_element(expr, *line, &algebra)?,
                    restrictions: restrictions.clone(),
                },
            );
        }

        let normal_class = match &draft.normal {
            Some((line, expr)) => parse_kclass(expr, *line, &name)?,
            None => KClass::zero(name.clone()),
        };
        let mut eigen = BTreeMap::new();
        for (line, k, expr) in &draft.eigen {
            if eigen.insert(*k, parse_kclass(expr, *line, &name)?).is_some() {
                return Err(syntax(*line, format!("duplicate eigen index {k}")));
            }
        }

        let pullback = parse_map(&draft.pullback, &untwisted, &algebra, &format!("sector {name} pullback"))?;
        let involution = parse_map(
            &draft.involution,
            &algebra,
            &minv_algebra,
            &format!("sector {name} involution"),
        )?;
        let pushforward = if draft.pushforward.is_empty() {
            None
        } else {
            Some(parse_map(
                &draft.pushforward,
                &algebra,
                &untwisted,
                &format!("sector {name} pushforward"),
            )?)
        };
        let mut section = None;
        let mut alt_sections = BTreeMap::new();
        for (set, rows) in &draft.sections {
            let map = parse_map(
                rows,
                &algebra,
                &untwisted,
                &format!("sector {name} section {set}"),
            )?;
            if set == "main" {
                section = Some(map);
            } else {
                alt_sections.insert(set.clone(), map);
            }
        }

        built_sectors.push(Sector {
            element: m,
            algebra,
            generators,
            normal_class,
            eigen,
            pullback,
            involution,
            pushforward,
            section,
            alt_sections,
        });
    }

    // triples
    let mut built_triples = BTreeMap::new();
    for (key, draft) in &triples {
        let (name1, name2) = key
            .split_once(',')
            .ok_or_else(|| semantic(format!("triple {key}: key must be m1,m2")))?;
        let m1 = group
            .index_of(name1)
            .ok_or_else(|| semantic(format!("triple {key}: unknown element {name1}")))?;
        let m2 = group
            .index_of(name2)
            .ok_or_else(|| semantic(format!("triple {key}: unknown element {name2}")))?;
        if built_triples.contains_key(&(m1, m2)) {
            return Err(semantic(format!("triple {key}: duplicate")));
        }
        let m12 = group.mul(m1, m2);
        let m3 = group.inv(m12);
        let algebra = lookup_algebra(&draft.algebra, &format!("triple {key}"))?;

        let mut generators = BTreeMap::new();
        for (gname, (line, expr)) in &draft.generators {
            generators.insert(
                gname.clone(),
                LineGenerator {
                    name: gname.clone(),
                    euler_datum: parse_element(expr, *line, &algebra)?,
                    restrictions: BTreeMap::new(),
                },
            );
        }

        let leg = |kind: &str, source: &AlgebraRef, target: &AlgebraRef| {
            let rows = draft
                .maps
                .get(kind)
                .ok_or_else(|| semantic(format!("triple {key}: missing {kind}")))?;
            parse_map(rows, source, target, &format!("triple {key} {kind}"))
        };
        let pull = [
            leg("e1", &sector_algebras[m1], &algebra)?,
            leg("e2", &sector_algebras[m2], &algebra)?,
            leg("e3", &sector_algebras[m3], &algebra)?,
        ];
        let push3 = leg("push3", &algebra, &sector_algebras[m12])?;

        let normal_in_x = match &draft.normal_x {
            Some((line, expr)) => parse_kclass(expr, *line, key)?,
            None => KClass::zero(key.clone()),
        };
        let normal_in_m3 = match &draft.normal_m3 {
            Some((line, expr)) => parse_kclass(expr, *line, key)?,
            None => KClass::zero(key.clone()),
        };

        built_triples.insert(
            (m1, m2),
            TripleData {
                m1,
                m2,
                algebra,
                generators,
                pull,
                push3,
                normal_in_x,
                normal_in_m3,
            },
        );
    }

    Ok(Presentation {
        id,
        flavor,
        group,
        sectors: built_sectors,
        triples: built_triples,
        truncation,
    })
}

fn arg<'a>(tokens: &'a [&'a str], i: usize, line: usize, what: &str) -> Result<&'a str, FileError> {
    tokens
        .get(i)
        .copied()
        .ok_or_else(|| syntax(line, format!("missing {what}")))
}

fn expect(tokens: &[&str], i: usize, want: &str, line: usize) -> Result<(), FileError> {
    if tokens.get(i).copied() != Some(want) {
        return Err(syntax(line, format!("expected `{want}`")));
    }
    Ok(())
}

/// Parse `q*name + q*name + …` (or `0`) into index/coefficient pairs.
fn parse_combination(
    expr: &str,
    line: usize,
    index_of: &dyn Fn(&str) -> Option<usize>,
) -> Result<Vec<(usize, Rat)>, FileError> {
    let expr = expr.trim();
    if expr == "0" || expr.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in expr.split(" + ") {
        let term = term.trim();
        let (q, name) = match term.split_once('*') {
            Some((q, name)) => (
                rat::parse(q).ok_or_else(|| syntax(line, format!("bad rational {q}")))?,
                name,
            ),
            None => (rat::rint(1), term),
        };
        let idx = index_of(name)
            .ok_or_else(|| syntax(line, format!("unknown name {name}")))?;
        out.push((idx, q));
    }
    Ok(out)
}

fn parse_element(expr: &str, line: usize, algebra: &AlgebraRef) -> Result<Element, FileError> {
    let mut coeffs = vec![Rat::zero(); algebra.dim()];
    for (i, q) in parse_combination(expr, line, &|name| algebra.basis_index(name))? {
        coeffs[i] = q;
    }
    Ok(algebra.elem(coeffs))
}

fn parse_kclass(expr: &str, line: usize, stratum: &str) -> Result<KClass, FileError> {
    let expr = expr.trim();
    let mut class = KClass::zero(stratum.to_string());
    if expr == "0" || expr.is_empty() {
        return Ok(class);
    }
    for term in expr.split(" + ") {
        let term = term.trim();
        let (q, name) = match term.split_once('*') {
            Some((q, name)) => (
                rat::parse(q).ok_or_else(|| syntax(line, format!("bad rational {q}")))?,
                name,
            ),
            None => (rat::rint(1), term),
        };
        class.add_term(name.to_string(), q);
    }
    Ok(class)
}

fn parse_map(
    rows: &[(usize, String, String)],
    source: &AlgebraRef,
    target: &AlgebraRef,
    what: &str,
) -> Result<LinearMap, FileError> {
    let mut images: Vec<Option<Element>> = vec![None; source.dim()];
    for (line, src, expr) in rows {
        let idx = source
            .basis_index(src)
            .ok_or_else(|| syntax(*line, format!("{what}: unknown source basis {src}")))?;
        if images[idx].is_some() {
            return Err(syntax(*line, format!("{what}: duplicate row for {src}")));
        }
        images[idx] = Some(parse_element(expr, *line, target)?);
    }
    let images: Vec<Element> = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                semantic(format!("{what}: missing image of {}", source.basis_name(i)))
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(LinearMap::from_images(source, target, &images))
}

// ---------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------

fn render_combination(pairs: impl Iterator<Item = (String, Rat)>) -> String {
    let parts: Vec<String> = pairs
        .filter(|(_, q)| !q.is_zero())
        .map(|(name, q)| format!("{}*{}", rat::render(&q), name))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn render_element(e: &Element) -> String {
    render_combination(
        e.coeffs()
            .iter()
            .enumerate()
            .map(|(i, q)| (e.parent().basis_name(i).to_string(), q.clone())),
    )
}

fn render_kclass(k: &KClass) -> String {
    render_combination(k.terms().iter().map(|(n, q)| (n.clone(), q.clone())))
}

fn push_map_lines(out: &mut Vec<String>, prefix: &str, map: &LinearMap) {
    for j in 0..map.source.dim() {
        let img = map.target.elem(map.matrix.column(j));
        out.push(format!(
            "{prefix} {} -> {}",
            map.source.basis_name(j),
            render_element(&img)
        ));
    }
}

/// Deterministic serialization. Algebras are deduplicated structurally and
/// named `alg0, alg1, …` in first-use order (sectors in group order, then
/// triples in key order).
pub fn serialize(p: &Presentation) -> String {
    // structural key → assigned id
    let mut ids: BTreeMap<String, String> = BTreeMap::new();
    let mut ordered: Vec<(String, AlgebraRef)> = Vec::new();
    let mut assign = |alg: &AlgebraRef| -> String {
        let key = structural_key(alg);
        if let Some(id) = ids.get(&key) {
            return id.clone();
        }
        let id = format!("alg{}", ids.len());
        ids.insert(key, id.clone());
        ordered.push((id.clone(), alg.clone()));
        id
    };

    let mut sector_ids = Vec::new();
    for sector in &p.sectors {
        sector_ids.push(assign(&sector.algebra));
    }
    let mut triple_ids = BTreeMap::new();
    for (key, t) in &p.triples {
        triple_ids.insert(*key, assign(&t.algebra));
    }

    let mut out: Vec<String> = Vec::new();
    out.push("stringy-dataset v1".into());
    out.push(format!("id {}", p.id));
    out.push(format!(
        "flavor {}",
        match p.flavor {
            EulerFlavor::CH => "CH",
            EulerFlavor::K => "K",
        }
    ));
    out.push(format!("truncation {}", p.truncation));

    // groups built by the library serialize by shorthand when they match
    let n = p.group.order();
    let shorthand = [2, 3, 4]
        .into_iter()
        .find(|&k| {
            let candidate = Group::symmetric(k);
            candidate.order() == n && candidate.names == p.group.names && {
                (0..n).all(|i| (0..n).all(|j| candidate.mul(i, j) == p.group.mul(i, j)))
            }
        })
        .map(|k| format!("group symmetric {k}"))
        .or_else(|| {
            let candidate = Group::cyclic(n);
            (candidate.names == p.group.names
                && (0..n).all(|i| (0..n).all(|j| candidate.mul(i, j) == p.group.mul(i, j))))
            .then(|| format!("group cyclic {n}"))
        });
    match shorthand {
        Some(line) => out.push(line),
        None => {
            out.push(format!("group elements {}", p.group.names.join(" ")));
            out.push(format!("group identity {}", p.group.name(p.group.identity)));
            for i in 0..n {
                for j in 0..n {
                    out.push(format!(
                        "group mul {}*{} = {}",
                        p.group.name(i),
                        p.group.name(j),
                        p.group.name(p.group.mul(i, j))
                    ));
                }
            }
        }
    }
    out.push(String::new());

    for (id, alg) in &ordered {
        out.push(format!("algebra {id} basis {}", alg.basis_names().join(" ")));
        out.push(format!(
            "algebra {id} degrees {}",
            alg.degrees()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
        out.push(format!("algebra {id} unit {}", alg.basis_name(alg.unit_index())));
        if let Some(trace) = alg.trace_vector() {
            for (i, q) in trace.iter().enumerate() {
                out.push(format!(
                    "algebra {id} trace {} = {}",
                    alg.basis_name(i),
                    rat::render(q)
                ));
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let product = render_combination(
                    (0..alg.dim()).map(|k| (alg.basis_name(k).to_string(), alg.constant(i, j, k).clone())),
                );
                if product != "0" {
                    out.push(format!(
                        "algebra {id} const {}*{} = {}",
                        alg.basis_name(i),
                        alg.basis_name(j),
                        product
                    ));
                }
            }
        }
        out.push(String::new());
    }

    for (m, sector) in p.sectors.iter().enumerate() {
        let name = p.group.name(m);
        let prefix = format!("sector {name}");
        out.push(format!("{prefix} algebra {}", sector_ids[m]));
        out.push(format!("{prefix} normal {}", render_kclass(&sector.normal_class)));
        for (k, class) in &sector.eigen {
            out.push(format!("{prefix} eigen {k} = {}", render_kclass(class)));
        }
        for (gname, gen) in &sector.generators {
            out.push(format!(
                "{prefix} generator {gname} euler {}",
                render_element(&gen.euler_datum)
            ));
            for (stratum, target) in &gen.restrictions {
                out.push(format!(
                    "{prefix} generator {gname} restrict {stratum} -> {target}"
                ));
            }
        }
        push_map_lines(&mut out, &format!("{prefix} pullback"), &sector.pullback);
        push_map_lines(&mut out, &format!("{prefix} involution"), &sector.involution);
        if let Some(push) = &sector.pushforward {
            push_map_lines(&mut out, &format!("{prefix} pushforward"), push);
        }
        if let Some(section) = &sector.section {
            push_map_lines(&mut out, &format!("{prefix} section main"), section);
        }
        for (set, map) in &sector.alt_sections {
            push_map_lines(&mut out, &format!("{prefix} section {set}"), map);
        }
        out.push(String::new());
    }

    for (key, t) in &p.triples {
        let label = p.triple_stratum(key.0, key.1);
        let prefix = format!("triple {label}");
        out.push(format!("{prefix} algebra {}", triple_ids[key]));
        for (gname, gen) in &t.generators {
            out.push(format!(
                "{prefix} generator {gname} euler {}",
                render_element(&gen.euler_datum)
            ));
        }
        push_map_lines(&mut out, &format!("{prefix} e1"), &t.pull[0]);
        push_map_lines(&mut out, &format!("{prefix} e2"), &t.pull[1]);
        push_map_lines(&mut out, &format!("{prefix} e3"), &t.pull[2]);
        push_map_lines(&mut out, &format!("{prefix} push3"), &t.push3);
        out.push(format!("{prefix} normalx {}", render_kclass(&t.normal_in_x)));
        out.push(format!("{prefix} normalm3 {}", render_kclass(&t.normal_in_m3)));
        out.push(String::new());
    }

    out.join("\n")
}

fn structural_key(alg: &AlgebraRef) -> String {
    let mut parts = vec![
        alg.basis_names().join(","),
        alg.degrees()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(","),
        alg.unit_index().to_string(),
    ];
    match alg.trace_vector() {
        Some(t) => parts.push(t.iter().map(rat::render).collect::<Vec<_>>().join(",")),
        None => parts.push("no-trace".into()),
    }
    let mut consts = String::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for k in 0..alg.dim() {
                let c = alg.constant(i, j, k);
                if !c.is_zero() {
                    consts.push_str(&format!("{i},{j},{k}={};", rat::render(c)));
                }
            }
        }
    }
    parts.push(consts);
    parts.join("|")
}
