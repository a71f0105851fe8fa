//! Sparse linear combinations with [`QScalar`] coefficients.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::coeff::QScalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sparse<K: Ord> {
    q: u32,
    terms: BTreeMap<K, QScalar>,
}

pub type Tensor<K> = Sparse<(K, K)>;

impl<K: Ord + Clone> Sparse<K> {
    pub fn zero(q: u32) -> Self {
        Self {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(key: K, coeff: QScalar) -> Self {
        let mut s = Self::zero(coeff.q());
        s.add_term(key, &coeff);
        s
    }

    pub fn basis(key: K, q: u32) -> Self {
        Self::single(key, QScalar::one(q))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add_term(&mut self, key: K, coeff: &QScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &QScalar) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), &(c * s));
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &QScalar::from_int(-1, self.q));
        out
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        let mut out = Self::zero(self.q);
        out.add_scaled(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> QScalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| QScalar::zero(self.q))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &QScalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Linear extension of `f` on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Sparse<L>) -> Sparse<L> {
        let mut out = Sparse::zero(self.q);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_map_linear<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<Sparse<L>, E>,
    ) -> Result<Sparse<L>, E> {
        let mut out = Sparse::zero(self.q);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// `Σ_k a_k b_k w(k)` over common keys.
    pub fn dot_weighted(&self, other: &Self, mut w: impl FnMut(&K) -> QScalar) -> QScalar {
        let mut acc = QScalar::zero(self.q);
        for (k, a) in &self.terms {
            if let Some(b) = other.terms.get(k) {
                acc += &(&(a * b) * &w(k));
            }
        }
        acc
    }

    /// `Σ_k a_k b_k` over common keys.
    pub fn dot(&self, other: &Self) -> QScalar {
        self.dot_weighted(other, |_| QScalar::one(self.q))
    }

    pub fn render(&self, mut key: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let coeff = c.pretty();
            let (sign, body) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if body != "1" {
                out.push_str(&body);
                out.push(' ');
            }
            out.push_str(&key(k));
        }
        out
    }

    pub fn to_json(&self, mut key: impl FnMut(&K) -> (&'static str, Value)) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let (name, v) = key(k);
                let mut obj = serde_json::Map::new();
                obj.insert(name.into(), v);
                obj.insert("coeff".into(), c.to_json());
                Value::Object(obj)
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

impl<K: Ord + Clone> Sparse<(K, K)> {
    /// `Σ c · f(a) ⊗ g(b)`.
    pub fn map_tensor<L: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Sparse<L>,
        mut g: impl FnMut(&K) -> Sparse<L>,
    ) -> Tensor<L> {
        let mut out = Sparse::zero(self.q);
        for ((a, b), c) in &self.terms {
            let (fa, gb) = (f(a), g(b));
            for (x, cx) in fa.iter() {
                for (y, cy) in gb.iter() {
                    out.add_term((x.clone(), y.clone()), &(&(c * cx) * cy));
                }
            }
        }
        out
    }
}

pub fn tensor_of<K: Ord + Clone>(a: &Sparse<K>, b: &Sparse<K>) -> Tensor<K> {
    let mut out = Sparse::zero(a.q());
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_term((x.clone(), y.clone()), &(cx * cy));
        }
    }
    out
}
