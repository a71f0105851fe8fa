//! The twisted Ringel–Hall bialgebra and its graded dual.
//!
//! Conventions: `[M]*[N] = v^{⟨M,N⟩} Σ_L F^L_{M,N} [L]` where `F^L_{M,N}`
//! counts subrepresentations `X ⊆ L` with `X ≅ N`, `L/X ≅ M`;
//! `Δ[L] = Σ v^{⟨M,N⟩} |Aut M||Aut N| / |Aut L| · F^L_{M,N} [M]⊗[N]`;
//! `([M],[N]) = δ_{MN} / |Aut M|`. The tensor square multiplies as
//! `(U₁⊗V₁)(U₂⊗V₂) = v^{(|V₁|,|U₂|)} U₁U₂ ⊗ V₁V₂`.

use serde_json::{json, Value};

use crate::coeff::QScalar;
use crate::error::Result;
use crate::exec::Exec;
use crate::repfq::catalog::add_vec;
use crate::repfq::{IsoClass, RepCategory};
use crate::sparse::{Sparse, Tensor};

/// Element of `H(Q)` in the `[M]` basis (`dual = false`) or of the graded
/// dual in the `δ_M` basis (`dual = true`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub terms: Sparse<IsoClass>,
    pub dual: bool,
}

impl HallElement {
    pub fn primal(terms: Sparse<IsoClass>) -> Self {
        Self { terms, dual: false }
    }

    pub fn dual(terms: Sparse<IsoClass>) -> Self {
        Self { terms, dual: true }
    }
}

pub type HallTensor = Tensor<IsoClass>;

#[derive(Clone, Copy)]
pub struct Hall<'a> {
    pub cat: &'a RepCategory,
    pub exec: Exec,
}

impl<'a> Hall<'a> {
    pub fn new(cat: &'a RepCategory) -> Self {
        Self {
            cat,
            exec: Exec::default(),
        }
    }

    pub fn with_exec(cat: &'a RepCategory, exec: Exec) -> Self {
        Self { cat, exec }
    }

    pub fn q(&self) -> u32 {
        self.cat.q
    }

    pub fn vpow(&self, k: i64) -> QScalar {
        QScalar::v_pow(self.q(), k)
    }

    pub fn basis(&self, c: &IsoClass) -> Sparse<IsoClass> {
        Sparse::basis(c.clone(), self.q())
    }

    pub fn unit(&self) -> Sparse<IsoClass> {
        self.basis(&self.cat.zero_class())
    }

    fn euler_classes(&self, m: &IsoClass, n: &IsoClass) -> i64 {
        self.cat.euler(&self.cat.dim_of(m), &self.cat.dim_of(n))
    }

    /// Warm the census cache for every class of the given dimension vectors.
    pub fn prefetch(&self, dims: &[Vec<i64>]) -> Result<()> {
        let mut all = Vec::new();
        for d in dims {
            all.extend(self.cat.classes_of_dim(d).iter().cloned());
        }
        self.exec
            .try_map(&all, |l| self.cat.census(l).map(|_| ()))
            .map(|_| ())
    }

    pub fn mul_basis(&self, m: &IsoClass, n: &IsoClass) -> Result<Sparse<IsoClass>> {
        let twist = self.vpow(self.euler_classes(m, n));
        let mut out = Sparse::zero(self.q());
        for (l, f) in self.cat.product_numbers(m, n)?.iter() {
            out.add_term(l.clone(), &twist.scale_int(*f as i64));
        }
        Ok(out)
    }

    pub fn mul(&self, x: &Sparse<IsoClass>, y: &Sparse<IsoClass>) -> Result<Sparse<IsoClass>> {
        let mut out = Sparse::zero(self.q());
        for (m, a) in x.iter() {
            for (n, b) in y.iter() {
                out.add_scaled(&self.mul_basis(m, n)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// `Δ[L]`.
    pub fn comul_basis(&self, l: &IsoClass) -> Result<HallTensor> {
        let census = self.cat.census(l)?;
        let aut_l = self.cat.aut_scalar(l);
        let mut out = Sparse::zero(self.q());
        for ((m, n), &f) in census.iter() {
            let c = &(&self.vpow(self.euler_classes(m, n))
                * &(&self.cat.aut_scalar(m) * &self.cat.aut_scalar(n)))
                .checked_div(&aut_l)?
                .scale_int(f as i64);
            out.add_term((m.clone(), n.clone()), c);
        }
        Ok(out)
    }

    pub fn comul(&self, x: &Sparse<IsoClass>) -> Result<HallTensor> {
        x.try_map_linear(|l| self.comul_basis(l))
    }

    pub fn counit(&self, x: &Sparse<IsoClass>) -> QScalar {
        x.coeff(&self.cat.zero_class())
    }

    /// Twisted product in `H ⊗ H`.
    pub fn tensor_mul(&self, x: &HallTensor, y: &HallTensor) -> Result<HallTensor> {
        let mut out = Sparse::zero(self.q());
        for ((u1, v1), a) in x.iter() {
            for ((u2, v2), b) in y.iter() {
                let twist = self.vpow(self.cat.sym(&self.cat.dim_of(v1), &self.cat.dim_of(u2)));
                let left = self.mul_basis(u1, u2)?;
                let right = self.mul_basis(v1, v2)?;
                let c = &(a * b) * &twist;
                for (l, cl) in left.iter() {
                    for (r, cr) in right.iter() {
                        out.add_term((l.clone(), r.clone()), &(&(&c * cl) * cr));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(x, y) = Σ_M x_M y_M / |Aut M|`.
    pub fn pairing(&self, x: &Sparse<IsoClass>, y: &Sparse<IsoClass>) -> QScalar {
        x.dot_weighted(y, |m| self.cat.aut_scalar(m).inv().expect("|Aut| > 0"))
    }

    pub fn tensor_pairing(&self, x: &HallTensor, y: &HallTensor) -> QScalar {
        x.dot_weighted(y, |(a, b)| {
            (&self.cat.aut_scalar(a) * &self.cat.aut_scalar(b))
                .inv()
                .expect("|Aut| > 0")
        })
    }

    /// `x ↦ (x, −)`, written in the `δ` basis.
    pub fn dualize(&self, x: &Sparse<IsoClass>) -> HallElement {
        let mut out = Sparse::zero(self.q());
        for (m, c) in x.iter() {
            out.add_term(m.clone(), &c.checked_div(&self.cat.aut_scalar(m)).unwrap());
        }
        HallElement::dual(out)
    }

    pub fn undualize(&self, x: &HallElement) -> Sparse<IsoClass> {
        let mut out = Sparse::zero(self.q());
        for (m, c) in x.terms.iter() {
            out.add_term(m.clone(), &(c * &self.cat.aut_scalar(m)));
        }
        out
    }

    /// Evaluation `⟨δ, x⟩ = Σ δ_M x_M`.
    pub fn evaluate(&self, delta: &Sparse<IsoClass>, x: &Sparse<IsoClass>) -> QScalar {
        delta.dot(x)
    }

    /// Product on `δ` coordinates dual to `Δ`: the coefficient of `δ_L` in
    /// `δ_M ⋄ δ_N` is the coefficient of `[M]⊗[N]` in `Δ[L]`.
    pub fn dual_mul_basis(&self, m: &IsoClass, n: &IsoClass) -> Result<Sparse<IsoClass>> {
        let d = add_vec(&self.cat.dim_of(m), &self.cat.dim_of(n));
        let cands = self.cat.classes_of_dim(&d);
        let coeffs = self.exec.try_map(&cands, |l| {
            self.comul_basis(l)
                .map(|t| t.coeff(&(m.clone(), n.clone())))
        })?;
        let mut out = Sparse::zero(self.q());
        for (l, c) in cands.iter().zip(coeffs) {
            out.add_term(l.clone(), &c);
        }
        Ok(out)
    }

    pub fn dual_mul(&self, x: &Sparse<IsoClass>, y: &Sparse<IsoClass>) -> Result<Sparse<IsoClass>> {
        let mut out = Sparse::zero(self.q());
        for (m, a) in x.iter() {
            for (n, b) in y.iter() {
                out.add_scaled(&self.dual_mul_basis(m, n)?, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn render(&self, x: &Sparse<IsoClass>) -> String {
        x.render(|c| format!("[{}]", self.cat.render_class(c)))
    }

    pub fn render_dual(&self, x: &Sparse<IsoClass>) -> String {
        x.render(|c| format!("δ[{}]", self.cat.render_class(c)))
    }

    pub fn render_tensor(&self, x: &HallTensor) -> String {
        x.render(|(a, b)| {
            format!(
                "[{}]⊗[{}]",
                self.cat.render_class(a),
                self.cat.render_class(b)
            )
        })
    }

    pub fn to_json(&self, x: &Sparse<IsoClass>) -> Value {
        x.to_json(|c| ("class", json!(c.0)))
    }

    pub fn tensor_to_json(&self, x: &HallTensor) -> Value {
        x.to_json(|(a, b)| ("classes", json!([a.0, b.0])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootDatum;

    fn cat(name: &str, q: u32) -> RepCategory {
        RepCategory::new(&RootDatum::preset(name).unwrap(), q).unwrap()
    }

    #[test]
    fn a2_products() {
        let c = cat("a2", 2);
        let h = Hall::new(&c);
        let s1 = c.parse_class("S1").unwrap();
        let s2 = c.parse_class("S2").unwrap();
        let x = h.mul_basis(&s1, &s2).unwrap();
        assert_eq!(h.render(&x), "v^-1 [P1] + v^-1 [S1+S2]");
        let y = h.mul_basis(&s2, &s1).unwrap();
        assert_eq!(h.render(&y), "[S1+S2]");
        let b = h.basis(&s1);
        assert_eq!(h.mul(&h.unit(), &b).unwrap(), b);
        assert_eq!(h.mul(&b, &h.unit()).unwrap(), b);
    }

    #[test]
    fn a2_coproducts() {
        let c = cat("a2", 2);
        let h = Hall::new(&c);
        let p1 = c.parse_class("P1").unwrap();
        let s1 = c.parse_class("S1").unwrap();
        let s2 = c.parse_class("S2").unwrap();
        let z = c.zero_class();
        let d = h.comul_basis(&p1).unwrap();
        let mut expected = Sparse::zero(2);
        expected.add_term((p1.clone(), z.clone()), &QScalar::one(2));
        expected.add_term((z.clone(), p1.clone()), &QScalar::one(2));
        expected.add_term((s1.clone(), s2.clone()), &QScalar::v_pow(2, -1));
        assert_eq!(d, expected);
        let ds1 = h.comul_basis(&s1).unwrap();
        assert_eq!(ds1.len(), 2);
        assert!(ds1.coeff(&(s1.clone(), z.clone())).is_one());
        let d0 = h.comul_basis(&z).unwrap();
        assert_eq!(d0.len(), 1);
        assert!(d0.coeff(&(z.clone(), z)).is_one());
    }

    #[test]
    fn pairing_values() {
        let c2 = cat("a2", 2);
        let h2 = Hall::new(&c2);
        let p1 = h2.basis(&c2.parse_class("P1").unwrap());
        assert!(h2.pairing(&p1, &p1).is_one());
        let s1 = h2.basis(&c2.parse_class("S1").unwrap());
        assert!(h2.pairing(&p1, &s1).is_zero());
        let c3 = cat("a2", 3);
        let h3 = Hall::new(&c3);
        let s1 = h3.basis(&c3.parse_class("S1").unwrap());
        assert_eq!(h3.pairing(&s1, &s1), QScalar::from_ratio(1, 2, 3));
        let dual = h3.dualize(&s1);
        assert_eq!(h3.undualize(&dual), s1);
    }

    #[test]
    fn green_compatibility_small() {
        for q in [2u32, 3] {
            let c = cat("a2", q);
            let h = Hall::new(&c);
            let gens: Vec<_> = ["S1", "S2", "P1"]
                .iter()
                .map(|n| h.basis(&c.parse_class(n).unwrap()))
                .collect();
            for x in &gens {
                for y in &gens {
                    let lhs = h.comul(&h.mul(x, y).unwrap()).unwrap();
                    let rhs = h
                        .tensor_mul(&h.comul(x).unwrap(), &h.comul(y).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
