//! The free bialgebra `F` on generators `x_i` and the quantum shuffle algebra
//! `F*` with dual basis `y_u`.
//!
//! Both are stored as sparse maps from words (0-based letters) to scalars.
//! `F ⊗ F` multiplies as `(a⊗b)(c⊗d) = v^{(|b|,|c|)} ac ⊗ bd`.

use serde_json::{json, Value};

use crate::cartan::RootDatum;
use crate::coeff::{q_binomial, quantum_factorial, QScalar};
use crate::error::{Error, Result};
use crate::hall::Hall;
use crate::repfq::IsoClass;
use crate::sparse::{Sparse, Tensor};

pub type Word = Vec<usize>;
pub type FreeElement = Sparse<Word>;
pub type ShuffleElement = Sparse<Word>;

pub const DEFAULT_WORD_CAP: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct FreeAlg<'a> {
    pub rd: &'a RootDatum,
    pub q: u32,
    /// Longest word allowed in shuffle computations.
    pub cap: usize,
}

pub fn render_word_spaced(w: &[usize]) -> String {
    w.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl<'a> FreeAlg<'a> {
    pub fn new(rd: &'a RootDatum, q: u32) -> Self {
        Self {
            rd,
            q,
            cap: DEFAULT_WORD_CAP,
        }
    }

    pub fn vpow(&self, k: i64) -> QScalar {
        QScalar::v_pow(self.q, k)
    }

    pub fn weight(&self, w: &[usize]) -> Vec<i64> {
        let mut d = vec![0; self.rd.n];
        for &i in w {
            d[i] += 1;
        }
        d
    }

    pub fn one(&self) -> FreeElement {
        Sparse::basis(Vec::new(), self.q)
    }

    pub fn word(&self, w: &[usize]) -> FreeElement {
        Sparse::basis(w.to_vec(), self.q)
    }

    pub fn gen(&self, i: usize) -> FreeElement {
        self.word(&[i])
    }

    /// Concatenation product.
    pub fn product(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        let mut out = Sparse::zero(self.q);
        for (u, a) in x.iter() {
            for (w, b) in y.iter() {
                let mut uw = u.clone();
                uw.extend_from_slice(w);
                out.add_term(uw, &(a * b));
            }
        }
        out
    }

    pub fn power(&self, x: &FreeElement, n: u32) -> FreeElement {
        (0..n).fold(self.one(), |acc, _| self.product(&acc, x))
    }

    /// Twisted product in `F ⊗ F`.
    pub fn tensor_mul(&self, x: &Tensor<Word>, y: &Tensor<Word>) -> Tensor<Word> {
        let mut out = Sparse::zero(self.q);
        for ((a, b), cx) in x.iter() {
            for ((c, d), cy) in y.iter() {
                let t = self.vpow(self.rd.sym_form(&self.weight(b), &self.weight(c)));
                let mut ac = a.clone();
                ac.extend_from_slice(c);
                let mut bd = b.clone();
                bd.extend_from_slice(d);
                out.add_term((ac, bd), &(&(cx * cy) * &t));
            }
        }
        out
    }

    fn comul_gen(&self, i: usize) -> Tensor<Word> {
        let mut t = Sparse::zero(self.q);
        t.add_term((vec![i], vec![]), &QScalar::one(self.q));
        t.add_term((vec![], vec![i]), &QScalar::one(self.q));
        t
    }

    /// `Δ(x_u)` as the twisted product of the primitive generators.
    pub fn comul_word(&self, u: &[usize]) -> Tensor<Word> {
        let mut acc = Sparse::basis((vec![], vec![]), self.q);
        for &i in u {
            acc = self.tensor_mul(&acc, &self.comul_gen(i));
        }
        acc
    }

    pub fn comul(&self, x: &FreeElement) -> Tensor<Word> {
        x.map_linear(|u| self.comul_word(u))
    }

    /// Closed form for `Δ(x_{i₁}^{a₁} ⋯ x_{i_m}^{a_m})`:
    /// `Σ_{b+c=a} Π v_{i_k}^{b_k c_k} · v^{Σ_{k<l} c_k b_l (α_{i_k},α_{i_l})} · Π [a_k; c_k]_{i_k}
    /// · x^b ⊗ x^c`.
    pub fn comul_monomial_closed(&self, letters: &[usize], a: &[u32]) -> Result<Tensor<Word>> {
        let mut out = Sparse::zero(self.q);
        let mut c = vec![0u32; a.len()];
        loop {
            let b: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x - y).collect();
            let mut exp = 0i64;
            let mut coeff = QScalar::one(self.q);
            for k in 0..a.len() {
                let fi = self.rd.f[letters[k]];
                exp += fi * (b[k] * c[k]) as i64;
                coeff = &coeff * &q_binomial(a[k], c[k], fi as u32, self.q)?;
                for l in k + 1..a.len() {
                    exp += (c[k] * b[l]) as i64 * self.rd.sym_simple(letters[k], letters[l]);
                }
            }
            let expand = |e: &[u32]| -> Word {
                letters
                    .iter()
                    .zip(e)
                    .flat_map(|(&i, &n)| std::iter::repeat_n(i, n as usize))
                    .collect()
            };
            out.add_term((expand(&b), expand(&c)), &(&coeff * &self.vpow(exp)));
            let mut k = 0;
            loop {
                if k == a.len() {
                    return Ok(out);
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

    fn check_cap(&self, len: usize) -> Result<()> {
        if len > self.cap {
            Err(Error::GuardExceeded {
                what: "shuffle word length",
                value: len,
                limit: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// `y_{u₁} · y_{u₂} = Σ_{σ ∈ Σ_{r,s}} v^{s(σ)} y_{σ(u₁,u₂)}`, where `s(σ)`
    /// sums `(α, α')` over pairs with a `u₁` letter placed after a `u₂` letter.
    pub fn shuffle_words(&self, u1: &[usize], u2: &[usize]) -> Result<ShuffleElement> {
        let (r, s) = (u1.len(), u2.len());
        self.check_cap(r + s)?;
        let mut out = Sparse::zero(self.q);
        // positions of u1 letters, increasing
        let mut pos: Vec<usize> = (0..r).collect();
        loop {
            let mut word = Vec::with_capacity(r + s);
            let mut exp = 0i64;
            let (mut k, mut l) = (0, 0);
            for p in 0..r + s {
                if k < r && pos[k] == p {
                    word.push(u1[k]);
                    // u2 letters already placed precede this u1 letter
                    for &j in &u2[..l] {
                        exp += self.rd.sym_simple(u1[k], j);
                    }
                    k += 1;
                } else {
                    word.push(u2[l]);
                    l += 1;
                }
            }
            out.add_term(word, &self.vpow(exp));
            let mut t = r;
            while t > 0 && pos[t - 1] == r + s - r + t - 1 {
                t -= 1;
            }
            if t == 0 {
                return Ok(out);
            }
            pos[t - 1] += 1;
            for z in t..r {
                pos[z] = pos[z - 1] + 1;
            }
        }
    }

    pub fn shuffle(&self, x: &ShuffleElement, y: &ShuffleElement) -> Result<ShuffleElement> {
        let mut out = Sparse::zero(self.q);
        for (u, a) in x.iter() {
            for (w, b) in y.iter() {
                out.add_scaled(&self.shuffle_words(u, w)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// Deconcatenation `μ*(y_u) = Σ_{u₁u₂ = u} y_{u₁} ⊗ y_{u₂}`.
    pub fn deconcat(&self, y: &ShuffleElement) -> Tensor<Word> {
        y.map_linear(|u| {
            let mut t = Sparse::zero(self.q);
            for k in 0..=u.len() {
                t.add_term((u[..k].to_vec(), u[k..].to_vec()), &QScalar::one(self.q));
            }
            t
        })
    }

    /// `⟨y, x⟩ = Σ_u y_u x_u`.
    pub fn pairing(&self, y: &ShuffleElement, x: &FreeElement) -> QScalar {
        y.dot(x)
    }

    pub fn tensor_pairing(&self, y: &Tensor<Word>, x: &Tensor<Word>) -> QScalar {
        y.dot(x)
    }

    /// `x_i^{[r]} = x_i^r / [r]_i!`.
    pub fn divided_power(&self, i: usize, r: u32) -> Result<FreeElement> {
        let fact = quantum_factorial(r, self.rd.f[i] as u32, self.q);
        Ok(self.power(&self.gen(i), r).scale(&fact.inv()?))
    }

    /// `Σ_{r=0}^{1−c_ij} (−1)^r x_i^{[r]} x_j x_i^{[1−c_ij−r]}`.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<FreeElement> {
        self.rd.check_vertex(i)?;
        self.rd.check_vertex(j)?;
        if i == j {
            return Err(Error::Invariant(
                "Serre element needs distinct vertices".into(),
            ));
        }
        let top = (1 - self.rd.cartan[i][j]) as u32;
        let mut out = Sparse::zero(self.q);
        for r in 0..=top {
            let term = self.product(
                &self.product(&self.divided_power(i, r)?, &self.gen(j)),
                &self.divided_power(i, top - r)?,
            );
            let sign = QScalar::from_int(if r % 2 == 0 { 1 } else { -1 }, self.q);
            out.add_scaled(&term, &sign);
        }
        Ok(out)
    }

    pub fn render_free(&self, x: &FreeElement) -> String {
        x.render(|w| {
            if w.is_empty() {
                "1".into()
            } else {
                format!("x({})", render_word_spaced(w))
            }
        })
    }

    pub fn render_shuffle(&self, y: &ShuffleElement) -> String {
        y.render(|w| format!("y({})", render_word_spaced(w)))
    }

    pub fn to_json(&self, x: &FreeElement) -> Value {
        x.to_json(|w| ("word", json!(w.iter().map(|i| i + 1).collect::<Vec<_>>())))
    }
}

/// `Φ(x_u) = [S_{u₁}] * ⋯ * [S_{u_m}]`.
pub fn phi_word(hall: &Hall, u: &[usize]) -> Result<Sparse<IsoClass>> {
    let mut acc = hall.unit();
    for &i in u {
        acc = hall.mul(&acc, &hall.basis(&hall.cat.simple_class(i)))?;
    }
    Ok(acc)
}

pub fn phi_map(hall: &Hall, x: &FreeElement) -> Result<Sparse<IsoClass>> {
    x.try_map_linear(|u| phi_word(hall, u))
}

/// All words of length `len` over `n` letters, lexicographic.
pub fn all_words(n: usize, len: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut x = w.clone();
                    x.push(i);
                    x
                })
            })
            .collect();
    }
    out
}

/// Words of the given weight (letter multiplicities), lexicographic.
pub fn words_of_weight(weight: &[i64]) -> Vec<Word> {
    let mut out = Vec::new();
    let total: i64 = weight.iter().sum();
    let mut left = weight.to_vec();
    let mut cur = Vec::with_capacity(total as usize);
    fn rec(left: &mut [i64], cur: &mut Vec<usize>, out: &mut Vec<Word>, total: usize) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, out, total);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, &mut out, total.max(0) as usize);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repfq::RepCategory;

    #[test]
    fn products_and_unit() {
        let rd = RootDatum::preset("a2").unwrap();
        let fa = FreeAlg::new(&rd, 2);
        assert_eq!(fa.product(&fa.gen(0), &fa.gen(1)), fa.word(&[0, 1]));
        assert_eq!(fa.product(&fa.one(), &fa.word(&[1, 0])), fa.word(&[1, 0]));
        let s = fa.gen(0).plus(&fa.gen(1));
        assert_eq!(
            fa.product(&s, &fa.gen(0)),
            fa.word(&[0, 0]).plus(&fa.word(&[1, 0]))
        );
    }

    #[test]
    fn comul_of_square() {
        let rd = RootDatum::preset("b2").unwrap();
        let fa = FreeAlg::new(&rd, 3);
        for i in 0..2 {
            let d = fa.comul_word(&[i, i]);
            let fi = rd.f[i] as u32;
            let mid = &QScalar::v_pow(3, fi as i64) * &crate::coeff::quantum_int(2, fi, 3);
            assert_eq!(d.coeff(&(vec![i], vec![i])), mid);
            assert!(d.coeff(&(vec![i, i], vec![])).is_one());
            assert!(d.coeff(&(vec![], vec![i, i])).is_one());
            assert_eq!(d.len(), 3);
        }
        let d = fa.comul_word(&[0]);
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn closed_form_agrees_on_a2() {
        let rd = RootDatum::preset("a2").unwrap();
        let fa = FreeAlg::new(&rd, 2);
        assert_eq!(
            fa.comul_word(&[0, 1]),
            fa.comul_monomial_closed(&[0, 1], &[1, 1]).unwrap()
        );
    }

    #[test]
    fn shuffle_examples() {
        let rd = RootDatum::preset("a2").unwrap();
        let fa = FreeAlg::new(&rd, 2);
        let p = fa.shuffle_words(&[0], &[1]).unwrap();
        let mut expected = fa.word(&[0, 1]);
        expected.add_term(vec![1, 0], &QScalar::v_pow(2, -1));
        assert_eq!(p, expected);
        assert_eq!(fa.shuffle_words(&[], &[1, 0]).unwrap(), fa.word(&[1, 0]));
        let dc = fa.deconcat(&fa.word(&[0, 1]));
        assert_eq!(dc.len(), 3);
        assert!(dc.coeff(&(vec![0], vec![1])).is_one());
        assert!(fa.pairing(&fa.word(&[0, 1]), &fa.word(&[0, 1])).is_one());
        assert!(fa.pairing(&fa.word(&[0, 1]), &fa.word(&[1, 0])).is_zero());
        assert!(matches!(
            fa.shuffle_words(&[0; 5], &[1; 4]),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn adjointness_for_x12() {
        let rd = RootDatum::preset("a2").unwrap();
        let fa = FreeAlg::new(&rd, 2);
        let x = fa.word(&[0, 1]);
        let lhs = fa.tensor_pairing(&Sparse::basis((vec![0], vec![1]), 2), &fa.comul(&x));
        let rhs = fa.pairing(&fa.shuffle_words(&[0], &[1]).unwrap(), &x);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn serre_elements() {
        let rd = RootDatum::preset("a2").unwrap();
        let fa = FreeAlg::new(&rd, 2);
        let s = fa.serre_element(0, 1).unwrap();
        let inv2 = crate::coeff::quantum_int(2, 1, 2).inv().unwrap();
        let mut expected = fa.word(&[0, 0, 1]).scale(&inv2);
        expected.add_term(vec![0, 1, 0], &QScalar::from_int(-1, 2));
        expected.add_term(vec![1, 0, 0], &inv2);
        assert_eq!(s, expected);
        assert!(fa.serre_element(0, 0).is_err());

        let a3 = RootDatum::preset("a3").unwrap();
        let fa3 = FreeAlg::new(&a3, 2);
        let s13 = fa3.serre_element(0, 2).unwrap();
        assert_eq!(s13, fa3.word(&[2, 0]).minus(&fa3.word(&[0, 2])));

        let b2 = RootDatum::preset("b2").unwrap();
        let fb = FreeAlg::new(&b2, 2);
        assert_eq!(fb.serre_element(1, 0).unwrap().len(), 4);
    }

    #[test]
    fn phi_examples() {
        let rd = RootDatum::preset("a2").unwrap();
        let cat = RepCategory::new(&rd, 2).unwrap();
        let h = Hall::new(&cat);
        let fa = FreeAlg::new(&rd, 2);
        assert_eq!(
            h.render(&phi_map(&h, &fa.word(&[0, 1])).unwrap()),
            "v^-1 [P1] + v^-1 [S1+S2]"
        );
        assert_eq!(phi_map(&h, &fa.one()).unwrap(), h.unit());
        assert!(phi_map(&h, &fa.serre_element(0, 1).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(all_words(2, 2).len(), 4);
        assert_eq!(words_of_weight(&[2, 1]).len(), 3);
        assert_eq!(words_of_weight(&[0, 0]), vec![Vec::<usize>::new()]);
    }
}
