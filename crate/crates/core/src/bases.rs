//! Monomial bases `E^{(M)}` and the characterization sets `S(M, 𝒟_*)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::ar::{self, DirectedPartition, Enumeration};
use crate::coeff::{quantum_factorial, QScalar};
use crate::error::{Error, Result};
use crate::hall::Hall;
use crate::qpoly::exponents_of_weight;
use crate::repfq::catalog::add_vec;
use crate::repfq::IsoClass;
use crate::sparse::Sparse;
use crate::verify::Report;

#[derive(Clone, Debug)]
pub struct MonomialDatum {
    pub class: IsoClass,
    pub part_dims: Vec<Vec<i64>>,
    /// `v^{−dim Hom(M,M)} Π v_i^{m_i}`.
    pub prefactor: QScalar,
}

/// `E_i^{[a]} = v_i^{a²−a} [S_i^a]`.
pub fn simple_divided_power(hall: &Hall, i: usize, a: u32) -> Sparse<IsoClass> {
    let f = hall.cat.rd.f[i];
    let a = a as i64;
    Sparse::single(
        hall.cat.simple_class(i).scale(a as u32),
        hall.vpow(f * (a * a - a)),
    )
}

/// `[S_i]^{*a} / [a]_i!` computed with the Hall product.
pub fn simple_divided_power_by_product(hall: &Hall, i: usize, a: u32) -> Result<Sparse<IsoClass>> {
    let s = hall.basis(&hall.cat.simple_class(i));
    let mut acc = hall.unit();
    for _ in 0..a {
        acc = hall.mul(&acc, &s)?;
    }
    let fact = quantum_factorial(a, hall.cat.rd.f[i] as u32, hall.q());
    Ok(acc.scale(&fact.inv()?))
}

/// `Π v_i^{−a_i} Σ_{dim M = a} v^{⟨M,M⟩} [M]`.
pub fn divided_power_closed(hall: &Hall, a: &[i64]) -> Sparse<IsoClass> {
    let rd = &hall.cat.rd;
    let pre: i64 = -(0..rd.n).map(|i| rd.f[i] * a[i]).sum::<i64>();
    let mut out = Sparse::zero(hall.q());
    for m in hall.cat.classes_of_dim(a).iter() {
        out.add_term(m.clone(), &hall.vpow(pre + rd.euler_form(a, a)));
    }
    out
}

/// `E^{[a]} = E_1^{[a_1]} ⋯ E_n^{[a_n]}`, checked against the closed form.
pub fn divided_power_monomial(hall: &Hall, a: &[i64]) -> Result<Sparse<IsoClass>> {
    hall.cat.rd.check_len(a)?;
    if a.iter().any(|&x| x < 0) {
        return Err(Error::Parse(format!("negative exponent in {a:?}")));
    }
    let mut acc = hall.unit();
    for (i, &ai) in a.iter().enumerate() {
        acc = hall.mul(&acc, &simple_divided_power(hall, i, ai as u32))?;
    }
    let closed = divided_power_closed(hall, a);
    if acc != closed {
        return Err(Error::Invariant(format!(
            "E^[{a:?}] = {} but the closed form gives {}",
            hall.render(&acc),
            hall.render(&closed)
        )));
    }
    Ok(acc)
}

pub fn monomial_datum(hall: &Hall, d: &DirectedPartition, m: &IsoClass) -> MonomialDatum {
    let cat = hall.cat;
    let parts = ar::partition_parts(d, m);
    let dim = cat.dim_of(m);
    let weight: i64 = (0..cat.n()).map(|i| cat.rd.f[i] * dim[i]).sum();
    MonomialDatum {
        class: m.clone(),
        part_dims: parts.iter().map(|p| cat.dim_of(p)).collect(),
        prefactor: hall.vpow(weight - cat.hom_classes(m, m) as i64),
    }
}

/// `E^{(M)}`, with the proof-level identity
/// `E^{(M)} = Σ_{dim N_k = dim M_(k)} Σ_L F^L_{N_1,…,N_s} [L]` asserted.
pub fn monomial_for_module(
    hall: &Hall,
    d: &DirectedPartition,
    m: &IsoClass,
) -> Result<Sparse<IsoClass>> {
    let cat = hall.cat;
    let datum = monomial_datum(hall, d, m);
    let mut acc = hall.unit();
    for pd in &datum.part_dims {
        acc = hall.mul(&acc, &divided_power_monomial(hall, pd)?)?;
    }
    let em = acc.scale(&datum.prefactor);

    let choices: Vec<std::sync::Arc<Vec<IsoClass>>> = datum
        .part_dims
        .iter()
        .map(|pd| cat.classes_of_dim(pd))
        .collect();
    let targets = cat.classes_of_dim(&cat.dim_of(m));
    let mut direct = Sparse::zero(hall.q());
    let mut pick = vec![0usize; choices.len()];
    loop {
        let parts: Vec<IsoClass> = pick
            .iter()
            .zip(&choices)
            .map(|(&k, c)| c[k].clone())
            .collect();
        for l in targets.iter() {
            let f = cat.filtration_number(l, &parts)?;
            direct.add_term(l.clone(), &QScalar::from_u64(f, hall.q()));
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                break;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if k == pick.len() {
            break;
        }
    }
    if em != direct {
        return Err(Error::Invariant(format!(
            "E^({}) = {} but the filtration sum gives {}",
            cat.render_class(m),
            hall.render(&em),
            hall.render(&direct)
        )));
    }
    Ok(em)
}

/// `γ^M_L` in increasing `≤ₑ` order, checked unitriangular.
pub fn monomial_expansion(
    hall: &Hall,
    d: &DirectedPartition,
    e: &Enumeration,
    m: &IsoClass,
) -> Result<Vec<(IsoClass, QScalar)>> {
    let em = monomial_for_module(hall, d, m)?;
    let mut terms: Vec<(IsoClass, QScalar)> =
        em.iter().map(|(l, c)| (l.clone(), c.clone())).collect();
    terms.sort_by(|x, y| ar::order_compare(e, &x.0, &y.0));
    let ok = terms.first().is_some_and(|(l, c)| l == m && c.is_one())
        && terms
            .iter()
            .all(|(l, _)| ar::order_compare(e, m, l) != Ordering::Greater);
    if !ok {
        return Err(Error::Invariant(format!(
            "E^({}) is not unitriangular: {}",
            hall.cat.render_class(m),
            hall.render(&em)
        )));
    }
    Ok(terms)
}

/// `S(M, 𝒟_*) = {a : F^M_{S_{i₁}^{a₁},…} ≠ 0}` along `w_{𝒟_*}`.
pub fn characterization_set(
    hall: &Hall,
    word: &[usize],
    m: &IsoClass,
) -> Result<BTreeSet<Vec<u32>>> {
    let cat = hall.cat;
    let exps = exponents_of_weight(word, &cat.dim_of(m));
    let counts = hall
        .exec
        .try_map(&exps, |a| cat.word_filtration_number(m, word, a))?;
    Ok(exps
        .into_iter()
        .zip(counts)
        .filter(|(_, c)| *c != 0)
        .map(|(a, _)| a)
        .collect())
}

/// Divided powers, the closed form of `E^{[a]}` for `Σa ≤ cap`,
/// unitriangularity of `E^{(M)}` and the Hom-dimension identity.
pub fn verify_monomial(hall: &Hall, d: &DirectedPartition, cap: i64) -> Result<Report> {
    let cat = hall.cat;
    let mut report = Report::new("monomial");
    let e = ar::enumeration_from_partition(cat, d)?;
    for i in 0..cat.n() {
        for a in 0..=cap.max(0) as u32 {
            let lhs = simple_divided_power(hall, i, a);
            let rhs = simple_divided_power_by_product(hall, i, a)?;
            report.check(lhs == rhs, || {
                format!("E_{}^[{a}] differs from [S_{}]^{a}/[{a}]!", i + 1, i + 1)
            });
        }
    }
    for dim in cat.classes_up_to(cap).keys() {
        report.checked += 1;
        match divided_power_monomial(hall, dim) {
            Ok(_) => {}
            Err(Error::Invariant(msg)) => report.violations.push(msg),
            Err(err) => return Err(err),
        }
    }
    let classes: Vec<IsoClass> = cat
        .classes_up_to(cap)
        .values()
        .flat_map(|v| v.iter().cloned())
        .collect();
    let outcomes = hall
        .exec
        .map(&classes, |m| monomial_expansion(hall, d, &e, m));
    for (m, out) in classes.iter().zip(outcomes) {
        report.checked += 1;
        match out {
            Ok(_) => {}
            Err(Error::Invariant(msg)) => report.violations.push(msg),
            Err(err) => return Err(err),
        }
        let parts = ar::partition_parts(d, m);
        let mut rhs = 0;
        for i in 0..parts.len() {
            for j in i..parts.len() {
                rhs += cat.hom_classes(&parts[i], &parts[j]);
            }
        }
        let lhs = cat.hom_classes(m, m);
        report.check(lhs == rhs, || {
            format!(
                "dim End({}) = {lhs} but the part sum is {rhs}",
                cat.render_class(m)
            )
        });
    }
    Ok(report)
}

/// Distinctness of `S(M, 𝒟_*)` within each dimension vector, `M ∈ E(v(M), w)`
/// and the mutual-membership argument.
pub fn verify_characterization(hall: &Hall, d: &DirectedPartition, cap: i64) -> Result<Report> {
    let cat = hall.cat;
    let mut report = Report::new("characterization");
    let word = ar::word_of_partition(cat, d);
    for classes in cat.classes_up_to(cap).values() {
        let sets = hall
            .exec
            .try_map(classes.as_slice(), |m| characterization_set(hall, &word, m))?;
        let vecs: Vec<Vec<u32>> = classes
            .iter()
            .map(|m| ar::generated_vector(cat, d, m))
            .collect();
        for (x, m) in classes.iter().enumerate() {
            report.check(sets[x].contains(&vecs[x]), || {
                format!("{} ∉ E(v(M), w)", cat.render_class(m))
            });
            for y in x + 1..classes.len() {
                let n = &classes[y];
                report.check(sets[x] != sets[y], || {
                    format!("S({}) = S({})", cat.render_class(m), cat.render_class(n))
                });
                let mutual = sets[y].contains(&vecs[x]) && sets[x].contains(&vecs[y]);
                report.check(!mutual, || {
                    format!(
                        "{} and {} contain each other's generated vectors",
                        cat.render_class(m),
                        cat.render_class(n)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Sum of part dimension vectors equals the total.
pub fn parts_sum(datum: &MonomialDatum, n: usize) -> Vec<i64> {
    datum
        .part_dims
        .iter()
        .fold(vec![0; n], |acc, d| add_vec(&acc, d))
}
