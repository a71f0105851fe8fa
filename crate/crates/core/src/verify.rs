//! Named verification suites. Each produces a [`Report`] counting the
//! individual checks and listing every violation.

use std::cmp::Ordering;

use serde::Serialize;

use crate::ar::{self, Enumeration};
use crate::bases;
use crate::coeff::{q_binomial, quantum_factorial, quantum_int, QScalar};
use crate::error::Result;
use crate::exec::Exec;
use crate::hall::Hall;
use crate::maps::MapContext;
use crate::repfq::catalog::add_vec;
use crate::repfq::{IsoClass, RepCategory};
use crate::sparse::tensor_of;

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(msg());
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

pub const SUITE_NAMES: [&str; 10] = [
    "pascal",
    "oracle",
    "bialgebra",
    "compositions",
    "serre",
    "triangular",
    "monomial",
    "characterization",
    "order",
    "arduality",
];

/// Largest `q^{dim End}` for which automorphism groups are also counted by
/// enumeration.
const BRUTE_AUT_LIMIT: u128 = 1 << 16;

/// Runs a suite by name (`"all"` runs every suite in order).
pub fn run(name: &str, cat: &RepCategory, cap: i64, exec: Exec) -> Result<Vec<Report>> {
    if name == "all" {
        let mut out = Vec::new();
        for n in SUITE_NAMES {
            out.extend(run(n, cat, cap, exec)?);
        }
        return Ok(out);
    }
    let report = match name {
        "pascal" => pascal(cat.q, 8),
        "oracle" => oracle(cat, cap)?,
        "bialgebra" => bialgebra(cat, cap, exec)?,
        "compositions" => MapContext::canonical(cat)?
            .with_exec(exec)
            .verify_compositions(cap)?,
        "serre" => MapContext::canonical(cat)?.verify_serre()?,
        "triangular" => triangular(cat, cap, exec)?,
        "monomial" => {
            let cs = ar::canonical_structures(cat)?;
            bases::verify_monomial(&Hall::with_exec(cat, exec), &cs.proj_partition, cap)?
        }
        "characterization" => {
            let cs = ar::canonical_structures(cat)?;
            bases::verify_characterization(&Hall::with_exec(cat, exec), &cs.proj_partition, cap)?
        }
        "order" => order(cat, cap, exec)?,
        "arduality" => arduality(cat)?,
        other => {
            return Err(crate::Error::Parse(format!(
                "unknown suite {other:?}; known: {}, all",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(vec![report])
}

/// Pascal identities, symmetry and the factorial recursion for `n ≤ max_n`
/// and weights 1..3.
pub fn pascal(q: u32, max_n: u32) -> Report {
    let mut r = Report::new("pascal");
    for w in 1..=3u32 {
        let vw = |k: i64| QScalar::v_pow(q, k * w as i64);
        for n in 1..=max_n {
            let fact = quantum_factorial(n, w, q);
            let rec = &quantum_int(n, w, q) * &quantum_factorial(n - 1, w, q);
            r.check(fact == rec, || {
                format!("[{n}]! recursion fails at weight {w}")
            });
            for k in 0..=n {
                let b = q_binomial(n, k, w, q).expect("k ≤ n");
                let sym = q_binomial(n, n - k, w, q).expect("k ≤ n");
                r.check(b == sym, || {
                    format!("binom({n},{k}) not symmetric at weight {w}")
                });
                if k == 0 {
                    continue;
                }
                let lhs = &vw((n - k) as i64) * &q_binomial(n - 1, k - 1, w, q).expect("k ≤ n");
                let rhs = if k < n {
                    &vw(-(k as i64)) * &q_binomial(n - 1, k, w, q).expect("k < n")
                } else {
                    QScalar::zero(q)
                };
                r.check(b == &lhs + &rhs, || {
                    format!("Pascal identity fails for n={n}, k={k}, weight {w}")
                });
            }
        }
    }
    r
}

fn classes_flat(cat: &RepCategory, cap: i64) -> Vec<IsoClass> {
    cat.classes_up_to(cap)
        .values()
        .flat_map(|v| v.iter().cloned())
        .collect()
}

/// Euler form against Hom/Ext on indecomposables, associativity of
/// filtration counts, the value `F^{S₁⊕S₁}_{S₁,S₁} = q+1`, and the
/// structural `|Aut|` against enumeration.
pub fn oracle(cat: &RepCategory, cap: i64) -> Result<Report> {
    let mut r = Report::new("oracle");
    let nu = cat.nu();
    for x in 0..nu {
        for y in 0..nu {
            let lhs = cat.hom[x][y] as i64 - cat.ext[x][y] as i64;
            let rhs = cat.euler(&cat.indec_dims[x], &cat.indec_dims[y]);
            r.check(lhs == rhs, || {
                format!(
                    "hom − ext = {lhs} but ⟨{},{}⟩ = {rhs}",
                    cat.names[x], cat.names[y]
                )
            });
        }
    }
    if cap >= 2 {
        // F_{q^{f_i}}-lines in a plane
        for i in 0..cat.n() {
            let s = cat.simple_class(i);
            let f = cat.hall_number(&s.scale(2), &s, &s)?;
            let expect = (cat.q as u64).pow(cat.rd.f[i] as u32) + 1;
            r.check(f == expect, || {
                format!("F^(2S{0})_(S{0},S{0}) = {f}, expected {expect}", i + 1)
            });
        }
    }
    let by_dim = cat.classes_up_to(cap);
    let dims: Vec<&Vec<i64>> = by_dim.keys().collect();
    let mut pairs = std::collections::BTreeSet::new();
    for l in classes_flat(cat, cap) {
        let dl = cat.dim_of(&l);
        for d1 in &dims {
            for d2 in &dims {
                let d12 = add_vec(d1, d2);
                let d3: Vec<i64> = dl.iter().zip(&d12).map(|(a, b)| a - b).collect();
                let Some(c3) = by_dim.get(&d3) else { continue };
                let d23 = add_vec(d2, &d3);
                for x1 in by_dim[*d1].iter() {
                    for x2 in by_dim[*d2].iter() {
                        for x3 in c3.iter() {
                            let direct =
                                cat.filtration_number(&l, &[x1.clone(), x2.clone(), x3.clone()])?;
                            let mut right = 0;
                            for y in cat.classes_of_dim(&d23).iter() {
                                right +=
                                    cat.hall_number(&l, x1, y)? * cat.hall_number(y, x2, x3)?;
                            }
                            let mut left = 0;
                            for z in cat.classes_of_dim(&d12).iter() {
                                left += cat.hall_number(&l, z, x3)? * cat.hall_number(z, x1, x2)?;
                            }
                            r.check(direct == right && right == left, || {
                                format!(
                                    "filtrations of {} by ({}, {}, {}): {direct}, {right}, {left}",
                                    cat.render_class(&l),
                                    cat.render_class(x1),
                                    cat.render_class(x2),
                                    cat.render_class(x3)
                                )
                            });
                        }
                    }
                }
            }
        }
        pairs.extend(cat.census(&l)?.keys().cloned());
        let total: u64 = cat.census(&l)?.values().sum();
        r.check(total > 0, || {
            format!("{} has no subrepresentations", cat.render_class(&l))
        });
        let end = cat.hom_classes(&l, &l) as u32;
        if (cat.q as u128)
            .checked_pow(end)
            .is_some_and(|s| s <= BRUTE_AUT_LIMIT)
        {
            let brute = cat.aut_size_brute(&l)?;
            let formula = cat.aut_size(&l);
            r.check(brute == formula, || {
                format!(
                    "|Aut {}|: enumeration {brute}, formula {formula}",
                    cat.render_class(&l)
                )
            });
        }
    }
    // subrepresentation census against extension counting
    for (m, n) in &pairs {
        for (l, f) in cat.extension_numbers(m, n)? {
            let census = cat.hall_number(&l, m, n)?;
            r.check(census == f, || {
                format!(
                    "F^{}_({}, {}): census {census}, extensions {f}",
                    cat.render_class(&l),
                    cat.render_class(m),
                    cat.render_class(n)
                )
            });
        }
    }
    Ok(r)
}

/// Associativity on indecomposable triples, Green's compatibility, the
/// adjointness of product and coproduct, unit and counit.
pub fn bialgebra(cat: &RepCategory, cap: i64, exec: Exec) -> Result<Report> {
    let mut r = Report::new("bialgebra");
    let hall = Hall::with_exec(cat, exec);
    let indecs: Vec<IsoClass> = (0..cat.nu())
        .map(|k| cat.indec_class(k))
        .filter(|c| cat.total_dim(c) <= cap)
        .collect();
    let kdim_limit = cat.guards.subrep_kdim;
    let unit = hall.unit();
    for x in &indecs {
        let bx = hall.basis(x);
        r.check(
            hall.mul(&unit, &bx)? == bx && hall.mul(&bx, &unit)? == bx,
            || format!("[0] is not a unit for [{}]", cat.render_class(x)),
        );
        r.check(hall.counit(&bx).is_zero(), || {
            format!("ε([{}]) ≠ 0", cat.render_class(x))
        });
    }
    r.check(hall.counit(&unit).is_one(), || "ε([0]) ≠ 1".into());

    let mut triples = Vec::new();
    for x in &indecs {
        for y in &indecs {
            for z in &indecs {
                if cat.kdim_of(x) + cat.kdim_of(y) + cat.kdim_of(z) <= kdim_limit {
                    triples.push((x.clone(), y.clone(), z.clone()));
                }
            }
        }
    }
    let assoc = exec.try_map(&triples, |(x, y, z)| {
        let (bx, by, bz) = (hall.basis(x), hall.basis(y), hall.basis(z));
        let lhs = hall.mul(&hall.mul(&bx, &by)?, &bz)?;
        let rhs = hall.mul(&bx, &hall.mul(&by, &bz)?)?;
        let graded = lhs.keys().all(|l| {
            cat.dim_of(l) == add_vec(&add_vec(&cat.dim_of(x), &cat.dim_of(y)), &cat.dim_of(z))
        });
        Ok::<_, crate::Error>(lhs == rhs && graded)
    })?;
    for ((x, y, z), ok) in triples.iter().zip(assoc) {
        r.check(ok, || {
            format!(
                "([{}]*[{}])*[{}] ≠ [{}]*([{}]*[{}])",
                cat.render_class(x),
                cat.render_class(y),
                cat.render_class(z),
                cat.render_class(x),
                cat.render_class(y),
                cat.render_class(z)
            )
        });
    }

    // simples, P1, and every indecomposable small enough for pairs
    let mut gens: Vec<IsoClass> = (0..cat.n()).map(|i| cat.simple_class(i)).collect();
    if let Some(k) = cat.names.iter().position(|n| n == "P1") {
        gens.push(cat.indec_class(k));
    }
    for x in &indecs {
        if cat.total_dim(x) * 2 <= cap && !gens.contains(x) {
            gens.push(x.clone());
        }
    }
    let mut pairs = Vec::new();
    for x in &gens {
        for y in &gens {
            if cat.kdim_of(x) + cat.kdim_of(y) <= kdim_limit {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    let outcomes = exec.try_map(&pairs, |(x, y)| {
        let (bx, by) = (hall.basis(x), hall.basis(y));
        let prod = hall.mul(&bx, &by)?;
        let green = hall.comul(&prod)? == hall.tensor_mul(&hall.comul(&bx)?, &hall.comul(&by)?)?;
        let d = add_vec(&cat.dim_of(x), &cat.dim_of(y));
        let mut adjoint = true;
        let xy = tensor_of(&bx, &by);
        for z in cat.classes_of_dim(&d).iter() {
            let bz = hall.basis(z);
            let lhs = hall.tensor_pairing(&xy, &hall.comul(&bz)?);
            let rhs = hall.pairing(&prod, &bz);
            adjoint &= lhs == rhs;
        }
        Ok::<_, crate::Error>((green, adjoint))
    })?;
    for ((x, y), (green, adjoint)) in pairs.iter().zip(outcomes) {
        let (nx, ny) = (cat.render_class(x), cat.render_class(y));
        r.check(green, || format!("Δ([{nx}]*[{ny}]) ≠ Δ[{nx}]*Δ[{ny}]"));
        r.check(adjoint, || {
            format!("([{nx}]⊗[{ny}], Δz) ≠ ([{nx}]*[{ny}], z) for some z")
        });
    }
    Ok(r)
}

/// Triangularity of `Φ∘T_w` on `𝒫_*`, together with the order condition
/// `M ∈ E(v(M), w)` and every `L` there satisfies `M ≤ₑ L`.
pub fn triangular(cat: &RepCategory, cap: i64, exec: Exec) -> Result<Report> {
    let ctx = MapContext::canonical(cat)?.with_exec(exec);
    let mut r = ctx.verify_triangular(cap)?;
    let (d, e) = ctx
        .partition
        .as_ref()
        .expect("canonical context has a partition");
    for m in classes_flat(cat, cap) {
        let a = ar::generated_vector(cat, d, &m);
        let ex = ar::exact_set(cat, &a, &ctx.word, exec)?;
        r.check(ex.contains(&m), || {
            format!("{} ∉ E(v(M), w)", cat.render_class(&m))
        });
        for l in &ex {
            r.check(ar::order_compare(e, &m, l) != Ordering::Greater, || {
                format!(
                    "{} in E(v({}), w) is below it",
                    cat.render_class(l),
                    cat.render_class(&m)
                )
            });
        }
    }
    Ok(r)
}

/// Every valid enumeration of the indecomposables (all permutations when
/// `ν ≤ 7`, otherwise the canonical one and the one from `𝒫_*`).
pub fn tested_enumerations(cat: &RepCategory) -> Result<Vec<Enumeration>> {
    let nu = cat.nu();
    if nu > 7 {
        let cs = ar::canonical_structures(cat)?;
        let from_p = ar::enumeration_from_partition(cat, &cs.proj_partition)?;
        let mut out = vec![cs.inj_enumeration];
        if from_p != out[0] {
            out.push(from_p);
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(nu);
    let mut used = vec![false; nu];
    fn rec(cat: &RepCategory, seq: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Enumeration>) {
        if seq.len() == used.len() {
            out.push(Enumeration { seq: seq.clone() });
            return;
        }
        for x in 0..used.len() {
            // x may follow everything placed so far
            if used[x]
                || seq
                    .iter()
                    .any(|&y| cat.hom[x][y] != 0 || cat.ext[y][x] != 0)
            {
                continue;
            }
            used[x] = true;
            seq.push(x);
            rec(cat, seq, used, out);
            seq.pop();
            used[x] = false;
        }
    }
    rec(cat, &mut seq, &mut used, &mut out);
    Ok(out)
}

/// Quotient compatibility: for every `Y` of total `F_q`-dimension ≤ `cap`
/// and every subrepresentation with quotient `Z`, `Z ≤ₑ Y`.
pub fn order(cat: &RepCategory, cap: i64, exec: Exec) -> Result<Report> {
    let mut r = Report::new("order");
    let enums = tested_enumerations(cat)?;
    for e in &enums {
        r.check(ar::validate_enumeration(cat, e).is_ok(), || {
            format!("invalid enumeration {:?}", e.seq)
        });
    }
    let ys: Vec<IsoClass> = classes_flat(cat, cap)
        .into_iter()
        .filter(|y| cat.kdim_of(y) as i64 <= cap)
        .collect();
    let outcomes = exec.try_map(&ys, |y| {
        let census = cat.census(y)?;
        let mut checked = 0;
        let mut bad = Vec::new();
        let mut keys: Vec<_> = census.keys().collect();
        keys.sort();
        for (z, _) in keys {
            for e in &enums {
                checked += 1;
                if ar::order_compare(e, z, y) == Ordering::Greater {
                    bad.push(format!(
                        "quotient {} of {} is above it under {:?}",
                        cat.render_class(z),
                        cat.render_class(y),
                        e.seq
                    ));
                }
            }
        }
        Ok::<_, crate::Error>((checked, bad))
    })?;
    for (c, bad) in outcomes {
        r.checked += c;
        r.violations.extend(bad);
    }
    Ok(r)
}

/// AR duality, `τ∘τ⁻¹ = id`, the slice counts and the canonical words.
pub fn arduality(cat: &RepCategory) -> Result<Report> {
    let mut r = Report::new("arduality");
    let nu = cat.nu();
    for x in 0..nu {
        match cat.tau[x] {
            Some(tx) => {
                for y in 0..nu {
                    r.check(cat.ext[x][y] == cat.hom[y][tx], || {
                        format!(
                            "Ext¹({}, {}) ≠ Hom({}, τ{})",
                            cat.names[x], cat.names[y], cat.names[y], cat.names[x]
                        )
                    });
                }
                r.check(cat.tau_inv[tx] == Some(x), || {
                    format!("τ⁻¹τ{} ≠ {}", cat.names[x], cat.names[x])
                });
            }
            None => r.check(cat.is_projective(x), || {
                format!("τ{} vanishes but it is not projective", cat.names[x])
            }),
        }
    }
    match ar::canonical_structures(cat) {
        Ok(cs) => {
            r.check(cs.proj_partition.parts.len() == cs.inj_slices.len(), || {
                "s ≠ t".into()
            });
            let report = cat.rd.weyl_word_ops(&cs.w0)?;
            r.check(
                report.reduced && report.longest && cs.w0.len() == nu,
                || {
                    format!(
                        "w0 = ({}) is not a reduced expression of the longest element",
                        crate::cartan::render_word(&cs.w0)
                    )
                },
            );
            let we = ar::word_from_enumeration(cat, &cs.inj_enumeration);
            r.check(we == cs.w0, || "w_P ≠ w_e".into());
        }
        Err(err) => {
            r.checked += 1;
            r.violations.push(err.to_string());
        }
    }
    Ok(r)
}
