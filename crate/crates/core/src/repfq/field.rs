//! Table-driven arithmetic in `GF(p^k)` for small fields.
//!
//! Elements are `u16` codes: the base-`p` digits of a code are the
//! coefficients of a polynomial in the fixed primitive element `g`'s minimal
//! polynomial basis. `0` and `1` are the field's zero and one.

use crate::coeff::prime_power;
use crate::error::{Error, Result};

pub type Elem = u16;

/// Largest supported field; keeps addition tables at a few megabytes.
pub const MAX_FIELD_SIZE: usize = 1024;

#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    k: u32,
    size: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl std::fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl GaloisField {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if prime_power(p) != Some((p, 1)) {
            return Err(Error::InvalidQ(p));
        }
        let size = (p as usize).checked_pow(k).unwrap_or(usize::MAX);
        if k == 0 || size > MAX_FIELD_SIZE {
            return Err(Error::GuardExceeded {
                what: "field size",
                value: size,
                limit: MAX_FIELD_SIZE,
            });
        }
        let pu = p as usize;
        let ku = k as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..ku)
                .map(|_| {
                    let d = x % pu;
                    x /= pu;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| -> usize { ds.iter().rev().fold(0, |acc, &d| acc * pu + d) };

        let mut add = vec![0 as Elem; size * size];
        let mut neg = vec![0 as Elem; size];
        for a in 0..size {
            let da = digits(a);
            neg[a] = encode(&da.iter().map(|&d| (pu - d) % pu).collect::<Vec<_>>()) as Elem;
            for b in 0..size {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * size + b] = encode(&s) as Elem;
            }
        }

        // search monic polynomials x^k + c_{k-1}x^{k-1} + ... + c_0 for one
        // in which x has multiplicative order size - 1
        let order = size - 1;
        let mut found = None;
        for tail in 0..size {
            let c = digits(tail);
            if ku > 0 && c[0] == 0 && size > 2 {
                continue;
            }
            let mut exp = Vec::with_capacity(order);
            let mut cur = vec![0usize; ku];
            cur[0] = 1;
            let mut ok = true;
            for step in 0..order {
                let code = encode(&cur);
                if step > 0 && code == 1 {
                    ok = false;
                    break;
                }
                exp.push(code as Elem);
                // multiply by x modulo the polynomial
                let top = cur[ku - 1];
                for i in (1..ku).rev() {
                    cur[i] = cur[i - 1];
                }
                cur[0] = 0;
                for i in 0..ku {
                    cur[i] = (cur[i] + pu * pu - top * c[i] % pu) % pu;
                }
            }
            if ok && encode(&cur) == 1 {
                found = Some(exp);
                break;
            }
        }
        let exp_half = found.ok_or_else(|| {
            Error::Invariant(format!("no primitive polynomial found for GF({p}^{k})"))
        })?;
        let mut log = vec![u32::MAX; size];
        for (i, &e) in exp_half.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut exp = exp_half.clone();
        exp.extend_from_slice(&exp_half);
        Ok(Self {
            p,
            k,
            size,
            add,
            neg,
            exp,
            log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = (self.size - 1) as u32;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    /// `g^e` for the fixed primitive element `g`.
    pub fn primitive_pow(&self, e: usize) -> Elem {
        self.exp[e % (self.size - 1)]
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Primitive element of the unique subfield of `p^m` elements.
    pub fn subfield_generator(&self, m: u32) -> Result<Elem> {
        if m == 0 || !self.k.is_multiple_of(m) {
            return Err(Error::Invariant(format!(
                "GF({}^{}) has no subfield of degree {m}",
                self.p, self.k
            )));
        }
        let sub = (self.p as usize).pow(m) - 1;
        Ok(self.primitive_pow((self.size - 1) / sub))
    }

    /// All elements of the subfield of degree `m`, zero first.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<Elem>> {
        let g = self.subfield_generator(m)?;
        let sub = (self.p as usize).pow(m) - 1;
        let mut out = vec![0];
        let mut x = 1;
        for _ in 0..sub {
            out.push(x);
            x = self.mul(x, g);
        }
        Ok(out)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }
}
