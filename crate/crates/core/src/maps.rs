//! The maps between the Hall algebra, the free/shuffle algebras and `P_w`:
//! `Ω : H* → F*`, `∫_w : H* → P_w`, `F_w : F → P_w`, `Φ∘T_w : P_w* → H`.

use std::cmp::Ordering;

use crate::ar::{self, DirectedPartition, Enumeration};
use crate::cartan::render_word;
use crate::coeff::QScalar;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::freealg::{phi_map, phi_word, words_of_weight, FreeAlg, FreeElement, ShuffleElement};
use crate::hall::Hall;
use crate::qpoly::{exponents_of_weight, QPoly, QPolyElement};
use crate::repfq::{IsoClass, RepCategory};
use crate::sparse::Sparse;
use crate::verify::Report;

pub struct MapContext<'a> {
    pub cat: &'a RepCategory,
    pub hall: Hall<'a>,
    pub free: FreeAlg<'a>,
    pub word: Vec<usize>,
    pub partition: Option<(DirectedPartition, Enumeration)>,
}

/// One row of the triangular expansion of `Φ∘T_w(t_{v(M)})`.
#[derive(Clone, Debug)]
pub struct TriangularRow {
    pub class: IsoClass,
    pub exponent: Vec<u32>,
    pub h: QScalar,
    /// `(L, coefficient / h)` in increasing `≤ₑ` order; the first is `(M, 1)`.
    pub terms: Vec<(IsoClass, QScalar)>,
}

impl<'a> MapContext<'a> {
    pub fn new(cat: &'a RepCategory, word: Vec<usize>) -> Result<Self> {
        for &i in &word {
            cat.rd.check_vertex(i)?;
        }
        Ok(Self {
            cat,
            hall: Hall::new(cat),
            free: FreeAlg::new(&cat.rd, cat.q),
            word,
            partition: None,
        })
    }

    pub fn with_partition(cat: &'a RepCategory, d: DirectedPartition) -> Result<Self> {
        ar::validate_partition(cat, &d)?;
        let e = ar::enumeration_from_partition(cat, &d)?;
        let word = ar::word_of_partition(cat, &d);
        let mut ctx = Self::new(cat, word)?;
        ctx.partition = Some((d, e));
        Ok(ctx)
    }

    /// Context for `𝒫_*` and `w₀`.
    pub fn canonical(cat: &'a RepCategory) -> Result<Self> {
        let cs = ar::canonical_structures(cat)?;
        Self::with_partition(cat, cs.proj_partition)
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.hall = Hall::with_exec(self.cat, exec);
        self
    }

    pub fn exec(&self) -> Exec {
        self.hall.exec
    }

    pub fn q(&self) -> u32 {
        self.cat.q
    }

    pub fn qpoly(&self) -> QPoly<'_> {
        QPoly::new(&self.cat.rd, self.cat.q, &self.word).expect("word checked at construction")
    }

    fn vpow(&self, k: i64) -> QScalar {
        QScalar::v_pow(self.q(), k)
    }

    fn euler_simple(&self, i: usize, j: usize) -> i64 {
        self.cat.rd.euler_simple(i, j)
    }

    fn partition(&self) -> Result<&(DirectedPartition, Enumeration)> {
        self.partition
            .as_ref()
            .ok_or_else(|| Error::ContextMismatch("no directed partition in context".into()))
    }

    fn check_word_cap(&self, m: &IsoClass) -> Result<()> {
        let len = self.cat.total_dim(m) as usize;
        if len > self.free.cap {
            return Err(Error::GuardExceeded {
                what: "word length",
                value: len,
                limit: self.free.cap,
            });
        }
        Ok(())
    }

    pub fn omega_basis(&self, m: &IsoClass) -> Result<ShuffleElement> {
        self.check_word_cap(m)?;
        let words = words_of_weight(&self.cat.dim_of(m));
        let coeffs = self.exec().try_map(&words, |u| {
            let ones = vec![1; u.len()];
            let f = self.cat.word_filtration_number(m, u, &ones)?;
            let mut e = 0;
            for k in 0..u.len() {
                for l in k + 1..u.len() {
                    e += self.euler_simple(u[k], u[l]);
                }
            }
            Ok::<_, Error>(&self.vpow(e) * &QScalar::from_u64(f, self.q()))
        })?;
        let mut out = Sparse::zero(self.q());
        for (u, c) in words.into_iter().zip(coeffs) {
            out.add_term(u, &c);
        }
        Ok(out)
    }

    /// `Ω` on `δ` coordinates.
    pub fn map_omega(&self, delta: &Sparse<IsoClass>) -> Result<ShuffleElement> {
        delta.try_map_linear(|m| self.omega_basis(m))
    }

    pub fn int_w_basis(&self, m: &IsoClass) -> Result<Sparse<Vec<u32>>> {
        let w = &self.word;
        let exps = exponents_of_weight(w, &self.cat.dim_of(m));
        let coeffs = self.exec().try_map(&exps, |a| {
            let f = self.cat.word_filtration_number(m, w, a)?;
            if f == 0 {
                return Ok::<_, Error>(QScalar::zero(self.q()));
            }
            let mut e = 0;
            for k in 0..a.len() {
                let ak = a[k] as i64;
                e += self.cat.rd.f[w[k]] * ak * (ak - 1) / 2;
                for l in k + 1..a.len() {
                    e += ak * a[l] as i64 * self.euler_simple(w[k], w[l]);
                }
            }
            Ok(&self.vpow(e) * &QScalar::from_u64(f, self.q()))
        })?;
        let mut out = Sparse::zero(self.q());
        for (a, c) in exps.into_iter().zip(coeffs) {
            out.add_term(a, &c);
        }
        Ok(out)
    }

    /// `∫_w` on `δ` coordinates.
    pub fn map_int_w(&self, delta: &Sparse<IsoClass>) -> Result<QPolyElement> {
        let terms = delta.try_map_linear(|m| self.int_w_basis(m))?;
        Ok(self.qpoly().element(terms, false))
    }

    /// `x_j ↦ Σ_{i_k = j} t_k`, extended multiplicatively.
    pub fn feigin_eval(&self, x: &FreeElement) -> Result<QPolyElement> {
        let p = self.qpoly();
        let images: Vec<QPolyElement> = (0..self.cat.n())
            .map(|j| {
                let mut s = Sparse::zero(self.q());
                for (k, &i) in self.word.iter().enumerate() {
                    if i == j {
                        s.add_assign(&p.var(k).terms);
                    }
                }
                p.element(s, false)
            })
            .collect();
        let mut out = Sparse::zero(self.q());
        for (u, c) in x.iter() {
            let mut acc = p.one();
            for &i in u {
                acc = p.mul(&acc, &images[i])?;
            }
            out.add_scaled(&acc.terms, c);
        }
        Ok(p.element(out, false))
    }

    /// `h_w(a) = Π v_{i_k}^{a_k(a_k−1)/2} · v^{Σ_{k<l} a_k a_l ⟨α_{i_k},α_{i_l}⟩}`.
    pub fn h_w(&self, a: &[u32]) -> QScalar {
        let w = &self.word;
        let mut e = 0;
        for k in 0..a.len() {
            let ak = a[k] as i64;
            e += self.cat.rd.f[w[k]] * ak * (ak - 1) / 2;
            for l in k + 1..a.len() {
                e += ak * a[l] as i64 * self.euler_simple(w[k], w[l]);
            }
        }
        self.vpow(e)
    }

    /// `Φ∘T_w` on a dual monomial `t_a`.
    pub fn phi_t_basis(&self, a: &[u32]) -> Result<Sparse<IsoClass>> {
        let p = self.qpoly();
        let z = p.z(a);
        Ok(phi_word(&self.hall, &p.expand(a))?.scale(&z))
    }

    pub fn phi_compose_t(&self, x: &QPolyElement) -> Result<Sparse<IsoClass>> {
        if !x.dual || x.word != self.word {
            return Err(Error::ContextMismatch(
                "Φ∘T_w takes a dual monomial combination on the context word".into(),
            ));
        }
        x.terms.try_map_linear(|a| self.phi_t_basis(a))
    }

    /// Expand `Φ∘T_w(t_{v(M)})`, normalize by `h_w(v(M))` and check the
    /// leading term is `[M]` with coefficient 1.
    pub fn triangular_expand(&self, m: &IsoClass) -> Result<TriangularRow> {
        let (d, e) = self.partition()?;
        let a = ar::generated_vector(self.cat, d, m);
        let h = self.h_w(&a);
        let img = self.phi_t_basis(&a)?;
        let mut terms: Vec<(IsoClass, QScalar)> = img
            .iter()
            .map(|(l, c)| (l.clone(), c.checked_div(&h).expect("h is a power of v")))
            .collect();
        terms.sort_by(|x, y| ar::order_compare(e, &x.0, &y.0));
        let lead_ok = terms.first().is_some_and(|(l, c)| l == m && c.is_one());
        if !lead_ok {
            return Err(Error::Invariant(format!(
                "leading term of Φ∘T_w(t_{:?}) is not [{}]",
                a,
                self.cat.render_class(m)
            )));
        }
        Ok(TriangularRow {
            class: m.clone(),
            exponent: a,
            h,
            terms,
        })
    }

    /// Checks `∫_w = S_w∘Ω`, the adjointness of `∫_w` with `Φ∘T_w`, the
    /// pairing form of `Ω`, multiplicativity of `Ω` on small pairs and the
    /// generator images of `F_w`, over all classes of total dimension ≤ `cap`.
    pub fn verify_compositions(&self, cap: i64) -> Result<Report> {
        let mut report = Report::new("compositions");
        let p = self.qpoly();
        let classes: Vec<IsoClass> = self
            .cat
            .classes_up_to(cap)
            .values()
            .flat_map(|v| v.iter().cloned())
            .collect();
        let outcomes = self.exec().try_map(&classes, |m| self.check_class(&p, m))?;
        for (checked, violations) in outcomes {
            report.checked += checked;
            report.violations.extend(violations);
        }
        if cap >= 1 {
            for j in 0..self.cat.n() {
                let fw = self.feigin_eval(&self.free.gen(j))?;
                let iw = self.map_int_w(&Sparse::basis(self.cat.simple_class(j), self.q()))?;
                report.checked += 1;
                if fw != iw {
                    report.violations.push(format!(
                        "F_w(x{}) = {} but ∫_w(δ[S{}]) = {}",
                        j + 1,
                        p.render(&fw),
                        j + 1,
                        p.render(&iw)
                    ));
                }
            }
        }
        // Ω(δ_M ⋄ δ_N) = Ω(δ_M) · Ω(δ_N) on pairs of indecomposables
        let small: Vec<IsoClass> = (0..self.cat.nu())
            .map(|k| self.cat.indec_class(k))
            .filter(|c| self.cat.total_dim(c) * 2 <= cap)
            .collect();
        for m in &small {
            for n in &small {
                let dm = Sparse::basis(m.clone(), self.q());
                let dn = Sparse::basis(n.clone(), self.q());
                let lhs = self.map_omega(&self.hall.dual_mul(&dm, &dn)?)?;
                let rhs = self
                    .free
                    .shuffle(&self.map_omega(&dm)?, &self.map_omega(&dn)?)?;
                report.checked += 1;
                if lhs != rhs {
                    report.violations.push(format!(
                        "Ω(δ[{}] ⋄ δ[{}]) ≠ Ω(δ[{}])·Ω(δ[{}])",
                        self.cat.render_class(m),
                        self.cat.render_class(n),
                        self.cat.render_class(m),
                        self.cat.render_class(n)
                    ));
                }
            }
        }
        Ok(report)
    }

    fn check_class(&self, p: &QPoly, m: &IsoClass) -> Result<(usize, Vec<String>)> {
        let name = self.cat.render_class(m);
        let delta = Sparse::basis(m.clone(), self.q());
        let mut checked = 0;
        let mut bad = Vec::new();
        let omega = self.map_omega(&delta)?;
        let int_w = self.map_int_w(&delta)?;
        checked += 1;
        let s_omega = p.map_s(&omega);
        if s_omega.terms != int_w.terms {
            bad.push(format!(
                "∫_w(δ[{name}]) = {} but S_w(Ω(δ[{name}])) = {}",
                p.render(&int_w),
                p.render(&s_omega)
            ));
        }
        for a in exponents_of_weight(&self.word, &self.cat.dim_of(m)) {
            let lhs = int_w.terms.coeff(&a);
            let rhs = self.hall.evaluate(&delta, &self.phi_t_basis(&a)?);
            checked += 1;
            if lhs != rhs {
                bad.push(format!(
                    "coefficient of t^{a:?} in ∫_w(δ[{name}]) is {lhs} but ⟨δ[{name}], Φ∘T_w(t_{a:?})⟩ = {rhs}"
                ));
            }
        }
        for u in words_of_weight(&self.cat.dim_of(m)) {
            let lhs = omega.coeff(&u);
            let rhs = self
                .hall
                .evaluate(&delta, &phi_map(&self.hall, &self.free.word(&u))?);
            checked += 1;
            if lhs != rhs {
                bad.push(format!(
                    "coefficient of y({}) in Ω(δ[{name}]) is {lhs} but ⟨δ[{name}], Φ(x({}))⟩ = {rhs}",
                    render_word(&u),
                    render_word(&u)
                ));
            }
        }
        Ok((checked, bad))
    }

    /// Triangularity of the `Φ∘T_w` image matrix, one dimension vector at a
    /// time; also checks each normalized coefficient is the filtration
    /// number `F^L_{S^{a}}`.
    pub fn verify_triangular(&self, cap: i64) -> Result<Report> {
        let mut report = Report::new("triangular");
        let (_, e) = self.partition()?;
        let by_dim = self.cat.classes_up_to(cap);
        for classes in by_dim.values() {
            let rows = self
                .exec()
                .map(classes.as_slice(), |m| self.triangular_expand(m));
            let mut exps = Vec::with_capacity(rows.len());
            for (m, row) in classes.iter().zip(rows) {
                report.checked += 1;
                let row = match row {
                    Ok(r) => r,
                    Err(Error::Invariant(msg)) => {
                        report.violations.push(msg);
                        continue;
                    }
                    Err(err) => return Err(err),
                };
                for (l, c) in &row.terms {
                    if ar::order_compare(e, m, l) == Ordering::Greater {
                        report.violations.push(format!(
                            "[{}] appears below [{}]",
                            self.cat.render_class(l),
                            self.cat.render_class(m)
                        ));
                    }
                    let f = self
                        .cat
                        .word_filtration_number(l, &self.word, &row.exponent)?;
                    if *c != QScalar::from_u64(f, self.q()) {
                        report.violations.push(format!(
                            "normalized coefficient of [{}] in row [{}] is {c}, filtration number {f}",
                            self.cat.render_class(l),
                            self.cat.render_class(m)
                        ));
                    }
                }
                exps.push(row.exponent);
            }
            // distinct generated vectors give distinct rows, so the matrix is square
            let mut sorted = exps.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != exps.len() {
                report
                    .violations
                    .push("two classes share a generated vector".into());
            }
        }
        Ok(report)
    }

    /// `F_w(serre(i,j)) = 0` for every edge in both orders.
    pub fn verify_serre(&self) -> Result<Report> {
        let mut report = Report::new("serre");
        let p = self.qpoly();
        let rd = &self.cat.rd;
        for i in 0..rd.n {
            for j in 0..rd.n {
                if i == j || rd.cartan[i][j] == 0 {
                    continue;
                }
                let s = self.free.serre_element(i, j)?;
                let img = self.feigin_eval(&s)?;
                report.checked += 1;
                if !img.terms.is_zero() {
                    report.violations.push(format!(
                        "F_w(serre({},{})) = {}",
                        i + 1,
                        j + 1,
                        p.render(&img)
                    ));
                }
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootDatum;

    fn a2() -> RepCategory {
        RepCategory::new(&RootDatum::preset("a2").unwrap(), 2).unwrap()
    }

    #[test]
    fn omega_and_int_examples() {
        let cat = a2();
        let ctx = MapContext::canonical(&cat).unwrap();
        let q = 2;
        let p1 = cat.parse_class("P1").unwrap();
        let s12 = cat.parse_class("S1+S2").unwrap();
        let vi = QScalar::v_pow(q, -1);
        let om = ctx.map_omega(&Sparse::basis(p1.clone(), q)).unwrap();
        assert_eq!(om, Sparse::single(vec![0, 1], vi.clone()));
        let om2 = ctx.map_omega(&Sparse::basis(s12.clone(), q)).unwrap();
        let mut expect = Sparse::single(vec![0, 1], vi.clone());
        expect.add_term(vec![1, 0], &QScalar::one(q));
        assert_eq!(om2, expect);
        assert_eq!(
            ctx.map_omega(&Sparse::basis(cat.simple_class(1), q))
                .unwrap(),
            Sparse::basis(vec![1], q)
        );
        let iw = ctx.map_int_w(&Sparse::basis(p1.clone(), q)).unwrap();
        assert_eq!(iw.terms, Sparse::single(vec![1, 1, 0], vi.clone()));
        let iw2 = ctx.map_int_w(&Sparse::basis(s12, q)).unwrap();
        let mut expect = Sparse::single(vec![1, 1, 0], vi.clone());
        expect.add_term(vec![0, 1, 1], &QScalar::one(q));
        assert_eq!(iw2.terms, expect);
        let iw0 = ctx.map_int_w(&Sparse::basis(cat.zero_class(), q)).unwrap();
        assert_eq!(iw0, ctx.qpoly().one());
    }

    #[test]
    fn feigin_examples() {
        let cat = a2();
        let ctx = MapContext::canonical(&cat).unwrap();
        let p = ctx.qpoly();
        let x1 = ctx.feigin_eval(&ctx.free.gen(0)).unwrap();
        assert_eq!(x1.terms, p.var(0).terms.plus(&p.var(2).terms));
        assert_eq!(ctx.feigin_eval(&ctx.free.gen(1)).unwrap(), p.var(1));
        assert_eq!(ctx.feigin_eval(&ctx.free.one()).unwrap(), p.one());
        let s = ctx.free.serre_element(0, 1).unwrap();
        assert!(ctx.feigin_eval(&s).unwrap().terms.is_zero());
    }

    #[test]
    fn phi_t_examples() {
        let cat = a2();
        let ctx = MapContext::canonical(&cat).unwrap();
        let q = 2;
        let vi = QScalar::v_pow(q, -1);
        let img = ctx.phi_t_basis(&[1, 1, 0]).unwrap();
        assert_eq!(ctx.hall.render(&img), "v^-1 [P1] + v^-1 [S1+S2]");
        assert_eq!(ctx.h_w(&[1, 1, 0]), vi);
        let p1 = cat.parse_class("P1").unwrap();
        let row = ctx.triangular_expand(&p1).unwrap();
        assert_eq!(row.terms[0], (p1, QScalar::one(q)));
        assert_eq!(
            ctx.hall.render(&ctx.phi_t_basis(&[0, 1, 1]).unwrap()),
            "[S1+S2]"
        );
        assert_eq!(ctx.h_w(&[0, 1, 1]), QScalar::one(q));
        assert_eq!(ctx.phi_t_basis(&[0, 0, 0]).unwrap(), ctx.hall.unit());
    }

    #[test]
    fn suites_on_a2() {
        let cat = a2();
        let ctx = MapContext::canonical(&cat).unwrap();
        let r = ctx.verify_compositions(2).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.checked > 0);
        assert_eq!(ctx.verify_compositions(0).unwrap().violations.len(), 0);
        let t = ctx.verify_triangular(4).unwrap();
        assert!(t.violations.is_empty(), "{:?}", t.violations);
        assert!(ctx.verify_serre().unwrap().violations.is_empty());
    }
}
