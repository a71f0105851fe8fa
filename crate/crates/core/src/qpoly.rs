//! The quantum polynomial algebra `P_w` of a word `w = (i₁…i_m)` and its
//! graded dual, with the maps `T_w : P_w* → F` and `S_w : F* → P_w`.
//!
//! `t^a t^b = v^{Σ_{k<l} b_k a_l (α_{i_k},α_{i_l})} t^{a+b}`; the dual basis
//! `t_a` has `Δ(t_a) = Σ_{b+c=a} v^{Σ_{k<l} c_k b_l (α_{i_k},α_{i_l})} t_b ⊗ t_c`.

use serde_json::{json, Value};

use crate::cartan::{render_word, RootDatum};
use crate::coeff::{quantum_factorial, QScalar};
use crate::error::{Error, Result};
use crate::freealg::{FreeElement, ShuffleElement};
use crate::sparse::{Sparse, Tensor};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolyElement {
    pub word: Vec<usize>,
    pub terms: Sparse<Exponent>,
    /// `false`: coordinates on `t^a`; `true`: on the dual basis `t_a`.
    pub dual: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct QPoly<'a> {
    pub rd: &'a RootDatum,
    pub q: u32,
    pub word: &'a [usize],
}

impl<'a> QPoly<'a> {
    pub fn new(rd: &'a RootDatum, q: u32, word: &'a [usize]) -> Result<Self> {
        for &i in word {
            rd.check_vertex(i)?;
        }
        Ok(Self { rd, q, word })
    }

    pub fn m(&self) -> usize {
        self.word.len()
    }

    pub fn vpow(&self, k: i64) -> QScalar {
        QScalar::v_pow(self.q, k)
    }

    pub fn element(&self, terms: Sparse<Exponent>, dual: bool) -> QPolyElement {
        QPolyElement {
            word: self.word.to_vec(),
            terms,
            dual,
        }
    }

    pub fn monomial(&self, a: &[u32], dual: bool) -> QPolyElement {
        self.element(Sparse::basis(a.to_vec(), self.q), dual)
    }

    pub fn one(&self) -> QPolyElement {
        self.monomial(&vec![0; self.m()], false)
    }

    /// `t_k` (0-based slot).
    pub fn var(&self, k: usize) -> QPolyElement {
        let mut a = vec![0; self.m()];
        a[k] = 1;
        self.monomial(&a, false)
    }

    fn check(&self, x: &QPolyElement, dual: bool) -> Result<()> {
        if x.word != self.word {
            return Err(Error::ContextMismatch(format!(
                "element of P_({}) used with word ({})",
                render_word(&x.word),
                render_word(self.word)
            )));
        }
        if x.dual != dual {
            return Err(Error::ContextMismatch(if dual {
                "expected an element of the dual basis".into()
            } else {
                "expected an element of the monomial basis".into()
            }));
        }
        Ok(())
    }

    fn form(&self, k: usize, l: usize) -> i64 {
        self.rd.sym_simple(self.word[k], self.word[l])
    }

    pub fn mul_monomials(&self, a: &[u32], b: &[u32]) -> (Exponent, QScalar) {
        let mut e = 0i64;
        for k in 0..a.len() {
            if b[k] == 0 {
                continue;
            }
            for l in k + 1..a.len() {
                e += (b[k] * a[l]) as i64 * self.form(k, l);
            }
        }
        (a.iter().zip(b).map(|(x, y)| x + y).collect(), self.vpow(e))
    }

    pub fn mul(&self, x: &QPolyElement, y: &QPolyElement) -> Result<QPolyElement> {
        self.check(x, false)?;
        self.check(y, false)?;
        let mut out = Sparse::zero(self.q);
        for (a, ca) in x.terms.iter() {
            for (b, cb) in y.terms.iter() {
                let (s, t) = self.mul_monomials(a, b);
                out.add_term(s, &(&(ca * cb) * &t));
            }
        }
        Ok(self.element(out, false))
    }

    pub fn dual_comul_monomial(&self, a: &[u32]) -> Tensor<Exponent> {
        let mut out = Sparse::zero(self.q);
        let mut c = vec![0u32; a.len()];
        loop {
            let b: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x - y).collect();
            let mut e = 0i64;
            for k in 0..a.len() {
                if c[k] == 0 {
                    continue;
                }
                for l in k + 1..a.len() {
                    e += (c[k] * b[l]) as i64 * self.form(k, l);
                }
            }
            out.add_term((b, c.clone()), &self.vpow(e));
            let mut k = 0;
            loop {
                if k == a.len() {
                    return out;
                }
                c[k] += 1;
                if c[k] <= a[k] {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
        }
    }

    pub fn dual_comul(&self, x: &QPolyElement) -> Result<Tensor<Exponent>> {
        self.check(x, true)?;
        Ok(x.terms.map_linear(|a| self.dual_comul_monomial(a)))
    }

    /// `z_w(a) = Π v_{i_k}^{−a_k(a_k−1)/2} / Π [a_k]_{i_k}!`.
    pub fn z(&self, a: &[u32]) -> QScalar {
        let mut e = 0i64;
        let mut den = QScalar::one(self.q);
        for (k, &ak) in a.iter().enumerate() {
            let f = self.rd.f[self.word[k]];
            e -= f * (ak as i64) * (ak as i64 - 1) / 2;
            den = &den * &quantum_factorial(ak, f as u32, self.q);
        }
        self.vpow(e)
            .checked_div(&den)
            .expect("quantum factorials are nonzero")
    }

    /// Letter expansion `(i₁^{a₁} … i_m^{a_m})`.
    pub fn expand(&self, a: &[u32]) -> Vec<usize> {
        self.word
            .iter()
            .zip(a)
            .flat_map(|(&i, &n)| std::iter::repeat_n(i, n as usize))
            .collect()
    }

    /// `T_w(t_a) = z_w(a) x^a`.
    pub fn map_t(&self, x: &QPolyElement) -> Result<FreeElement> {
        self.check(x, true)?;
        Ok(x.terms
            .map_linear(|a| Sparse::single(self.expand(a), self.z(a))))
    }

    /// Exponent vectors whose expansion along `w` equals `u`.
    pub fn expansions(&self, u: &[usize]) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.m());
        self.expand_rec(u, 0, &mut cur, &mut out);
        out
    }

    fn expand_rec(&self, u: &[usize], k: usize, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if k == self.m() {
            if u.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        let run = u.iter().take_while(|&&x| x == self.word[k]).count();
        for n in 0..=run {
            cur.push(n as u32);
            self.expand_rec(&u[n..], k + 1, cur, out);
            cur.pop();
        }
    }

    /// `S_w(y_u) = Σ_{a : expansion(a) = u} z_w(a) t^a`.
    pub fn map_s(&self, y: &ShuffleElement) -> QPolyElement {
        let terms = y.map_linear(|u| {
            let mut s = Sparse::zero(self.q);
            for a in self.expansions(u) {
                let z = self.z(&a);
                s.add_term(a, &z);
            }
            s
        });
        self.element(terms, false)
    }

    /// Evaluation `⟨t_a, t^b⟩ = δ_{ab}`.
    pub fn pairing(&self, dual: &QPolyElement, primal: &QPolyElement) -> Result<QScalar> {
        self.check(dual, true)?;
        self.check(primal, false)?;
        Ok(dual.terms.dot(&primal.terms))
    }

    pub fn render(&self, x: &QPolyElement) -> String {
        x.terms.render(|a| render_exponent(a, x.dual))
    }

    pub fn to_json(&self, x: &QPolyElement) -> Value {
        let mut v = x.terms.to_json(|a| ("exponent", json!(a)));
        v["word"] = json!(x.word.iter().map(|i| i + 1).collect::<Vec<_>>());
        v["dual"] = json!(x.dual);
        v
    }
}

pub fn render_exponent(a: &[u32], dual: bool) -> String {
    let inner = a
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    if dual {
        format!("t_[{inner}]")
    } else {
        format!("t^[{inner}]")
    }
}

/// The isomorphism `P_{w₁} → P_{w₂}` for `w₂` obtained from `w₁` by swapping
/// the orthogonal letters at slots `k, k+1`: exchanges `t_k` and `t_{k+1}`.
pub fn braid_iso(
    rd: &RootDatum,
    w1: &[usize],
    w2: &[usize],
    x: &QPolyElement,
) -> Result<QPolyElement> {
    if x.word != w1 {
        return Err(Error::ContextMismatch("element does not live on w1".into()));
    }
    if w1 == w2 {
        return Ok(x.clone());
    }
    let k = (0..w1.len().saturating_sub(1))
        .find(|&k| {
            let mut s = w1.to_vec();
            s.swap(k, k + 1);
            s == w2
        })
        .ok_or_else(|| {
            Error::ContextMismatch(format!(
                "({}) and ({}) differ by more than one adjacent swap",
                render_word(w1),
                render_word(w2)
            ))
        })?;
    if rd.sym_simple(w1[k], w1[k + 1]) != 0 {
        return Err(Error::NotOrthogonal {
            pos: k + 1,
            next: k + 2,
        });
    }
    let terms = x.terms.map_linear(|a| {
        let mut b = a.clone();
        b.swap(k, k + 1);
        Sparse::basis(b, x.terms.q())
    });
    Ok(QPolyElement {
        word: w2.to_vec(),
        terms,
        dual: x.dual,
    })
}

/// Exponent vectors of length `m` with entry sum `total`, lexicographic.
pub fn exponents_of_total(m: usize, total: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for x in (0..=left).rev() {
            cur[k] = x;
            rec(k + 1, left - x, cur, out);
        }
        cur[k] = 0;
    }
    if m == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out.sort();
    out
}

/// Exponent vectors along `word` whose weight is the dimension vector `d`.
pub fn exponents_of_weight(word: &[usize], d: &[i64]) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut left = d.to_vec();
    let mut cur = Vec::with_capacity(word.len());
    fn rec(word: &[usize], left: &mut Vec<i64>, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        let k = cur.len();
        if k == word.len() {
            if left.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let i = word[k];
        // remaining slots carrying letter i must absorb what is left
        for n in 0..=left[i].max(0) {
            left[i] -= n;
            cur.push(n as u32);
            rec(word, left, cur, out);
            cur.pop();
            left[i] += n;
        }
    }
    rec(word, &mut left, &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::FreeAlg;

    fn setup() -> RootDatum {
        RootDatum::preset("a2").unwrap()
    }

    #[test]
    fn commutation_examples() {
        let rd = setup();
        let w = [0, 1, 0];
        let p = QPoly::new(&rd, 2, &w).unwrap();
        let t1t3 = p.mul(&p.var(0), &p.var(2)).unwrap();
        let t3t1 = p.mul(&p.var(2), &p.var(0)).unwrap();
        assert_eq!(t3t1.terms, t1t3.terms.scale(&QScalar::v_pow(2, 2)));
        let t1t2 = p.mul(&p.var(0), &p.var(1)).unwrap();
        let t2t1 = p.mul(&p.var(1), &p.var(0)).unwrap();
        assert_eq!(t2t1.terms, t1t2.terms.scale(&QScalar::v_pow(2, -1)));
        assert_eq!(p.mul(&p.one(), &p.var(1)).unwrap(), p.var(1));
    }

    #[test]
    fn dual_comul_examples() {
        let rd = setup();
        let w = [0, 1, 0];
        let p = QPoly::new(&rd, 2, &w).unwrap();
        let d = p.dual_comul(&p.monomial(&[1, 1, 0], true)).unwrap();
        assert_eq!(
            d.coeff(&(vec![0, 1, 0], vec![1, 0, 0])),
            QScalar::v_pow(2, -1)
        );
        let d1 = p.dual_comul(&p.monomial(&[1, 0, 0], true)).unwrap();
        assert_eq!(d1.len(), 2);
        let d0 = p.dual_comul(&p.monomial(&[0, 0, 0], true)).unwrap();
        assert_eq!(d0.len(), 1);
        assert!(p.dual_comul(&p.var(0)).is_err());
    }

    #[test]
    fn t_and_s_examples() {
        let rd = setup();
        let w = [0, 1, 0];
        let p = QPoly::new(&rd, 2, &w).unwrap();
        let fa = FreeAlg::new(&rd, 2);
        assert_eq!(
            p.map_t(&p.monomial(&[1, 1, 0], true)).unwrap(),
            fa.word(&[0, 1])
        );
        let expected = &QScalar::v_pow(2, -1) * &crate::coeff::quantum_int(2, 1, 2).inv().unwrap();
        assert_eq!(
            p.map_t(&p.monomial(&[2, 0, 0], true)).unwrap(),
            Sparse::single(vec![0, 0], expected)
        );
        assert_eq!(p.map_t(&p.monomial(&[0, 0, 0], true)).unwrap(), fa.one());
        assert_eq!(
            p.map_s(&fa.word(&[0, 1])).terms,
            Sparse::basis(vec![1, 1, 0], 2)
        );
        assert_eq!(
            p.map_s(&fa.word(&[1, 0])).terms,
            Sparse::basis(vec![0, 1, 1], 2)
        );
        assert_eq!(
            p.map_s(&fa.word(&[1, 1])).terms,
            Sparse::single(vec![0, 2, 0], p.z(&[0, 2, 0]))
        );
        assert!(p.map_s(&fa.word(&[1, 0, 1])).terms.is_zero());
    }

    #[test]
    fn braid_iso_checks() {
        let rd = RootDatum::preset("a3").unwrap();
        let w1 = [0, 2, 1, 0, 2, 1];
        let w2 = [2, 0, 1, 0, 2, 1];
        let p = QPoly::new(&rd, 2, &w1).unwrap();
        let x = p.monomial(&[1, 2, 0, 0, 0, 0], true);
        let y = braid_iso(&rd, &w1, &w2, &x).unwrap();
        assert_eq!(y.terms, Sparse::basis(vec![2, 1, 0, 0, 0, 0], 2));
        assert_eq!(braid_iso(&rd, &w2, &w1, &y).unwrap(), x);
        assert_eq!(braid_iso(&rd, &w1, &w1, &x).unwrap(), x);
        let bad = [0, 1, 2, 0, 2, 1];
        assert!(braid_iso(&rd, &w1, &bad, &x).is_err());
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents_of_total(3, 2).len(), 6);
        assert_eq!(
            exponents_of_weight(&[0, 1, 0], &[1, 1]),
            vec![vec![0, 1, 1], vec![1, 1, 0]]
        );
    }
}
