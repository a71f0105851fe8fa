//! Dimension-vector level AR combinatorics via the Coxeter transformation.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::cartan::{unit, RootDatum};
use crate::error::{Error, Result};

type Q = Ratio<i64>;

fn inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| Error::Invariant("singular Euler matrix".into()))?;
        a.swap(c, p);
        inv.swap(c, p);
        let pivot = a[c][c];
        for j in 0..n {
            a[c][j] /= pivot;
            inv[c][j] /= pivot;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let k = a[r][c];
                for j in 0..n {
                    let (x, y) = (a[c][j], inv[c][j]);
                    a[r][j] -= k * x;
                    inv[r][j] -= k * y;
                }
            }
        }
    }
    Ok(inv)
}

fn apply(m: &[Vec<Q>], v: &[i64]) -> Result<Vec<i64>> {
    m.iter()
        .map(|row| {
            let s: Q = row
                .iter()
                .zip(v)
                .map(|(a, &b)| *a * Q::from_integer(b))
                .sum();
            if s.is_integer() {
                Ok(s.to_integer())
            } else {
                Err(Error::Invariant("non-integral Coxeter image".into()))
            }
        })
        .collect()
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect()
}

fn transpose<T: Copy>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

#[derive(Debug, Clone)]
pub struct Coxeter {
    /// `Φ = −E⁻¹Eᵀ`.
    pub phi: Vec<Vec<Q>>,
    /// `Φ⁻¹ = −E⁻ᵀE`.
    pub phi_inv: Vec<Vec<Q>>,
    pub proj_dims: Vec<Vec<i64>>,
    pub inj_dims: Vec<Vec<i64>>,
}

impl Coxeter {
    pub fn new(rd: &RootDatum) -> Result<Self> {
        let e = to_q(&rd.euler);
        let e_inv = inverse(&rd.euler)?;
        let et = transpose(&e);
        let e_inv_t = transpose(&e_inv);
        let neg = |m: Vec<Vec<Q>>| -> Vec<Vec<Q>> {
            m.into_iter()
                .map(|r| r.into_iter().map(|x| -x).collect())
                .collect()
        };
        let phi = neg(mat_mul(&e_inv, &et));
        let phi_inv = neg(mat_mul(&e_inv_t, &e));
        let mut proj_dims = Vec::new();
        let mut inj_dims = Vec::new();
        for i in 0..rd.n {
            let fe: Vec<i64> = unit(rd.n, i).iter().map(|x| x * rd.f[i]).collect();
            proj_dims.push(apply(&e_inv_t, &fe)?);
            inj_dims.push(apply(&e_inv, &fe)?);
        }
        Ok(Self {
            phi,
            phi_inv,
            proj_dims,
            inj_dims,
        })
    }

    pub fn is_projective(&self, d: &[i64]) -> bool {
        self.proj_dims.iter().any(|p| p == d)
    }

    pub fn is_injective(&self, d: &[i64]) -> bool {
        self.inj_dims.iter().any(|p| p == d)
    }

    /// `dim τX` for an indecomposable of dimension `d`, `None` if projective.
    pub fn tau(&self, d: &[i64]) -> Result<Option<Vec<i64>>> {
        if self.is_projective(d) {
            return Ok(None);
        }
        apply(&self.phi, d).map(Some)
    }

    pub fn tau_inv(&self, d: &[i64]) -> Result<Option<Vec<i64>>> {
        if self.is_injective(d) {
            return Ok(None);
        }
        apply(&self.phi_inv, d).map(Some)
    }

    /// `orbits[j] = [I_j, τI_j, τ²I_j, …]` up to the last nonzero term.
    pub fn injective_orbits(&self, rd: &RootDatum) -> Result<Vec<Vec<Vec<i64>>>> {
        let mut orbits = Vec::new();
        for j in 0..rd.n {
            let mut orbit = vec![self.inj_dims[j].clone()];
            while let Some(next) = self.tau(orbit.last().unwrap())? {
                if next.iter().any(|&x| x < 0) || orbit.len() > rd.nu() {
                    return Err(Error::Invariant(format!(
                        "τ-orbit of I_{} leaves the positive roots",
                        j + 1
                    )));
                }
                orbit.push(next);
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// `orbits[j] = [P_j, τ⁻¹P_j, …]`.
    pub fn projective_orbits(&self, rd: &RootDatum) -> Result<Vec<Vec<Vec<i64>>>> {
        let mut orbits = Vec::new();
        for j in 0..rd.n {
            let mut orbit = vec![self.proj_dims[j].clone()];
            while let Some(next) = self.tau_inv(orbit.last().unwrap())? {
                if next.iter().any(|&x| x < 0) || orbit.len() > rd.nu() {
                    return Err(Error::Invariant(format!(
                        "τ⁻¹-orbit of P_{} leaves the positive roots",
                        j + 1
                    )));
                }
                orbit.push(next);
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Indecomposable dimension vectors in the order
    /// `τ^t I_n, …, τ^t I_1, …, I_n, …, I_1` with zero terms deleted.
    pub fn injective_enumeration(&self, rd: &RootDatum) -> Result<Vec<Vec<i64>>> {
        let orbits = self.injective_orbits(rd)?;
        let t = orbits.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = Vec::new();
        for p in (0..t).rev() {
            for j in (0..rd.n).rev() {
                if let Some(d) = orbits[j].get(p) {
                    out.push(d.clone());
                }
            }
        }
        if out.len() != rd.nu() {
            return Err(Error::Invariant(format!(
                "τ-orbits of injectives give {} modules but there are {} positive roots",
                out.len(),
                rd.nu()
            )));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_coxeter() {
        let rd = RootDatum::preset("a2").unwrap();
        let c = Coxeter::new(&rd).unwrap();
        assert_eq!(c.proj_dims, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(c.inj_dims, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(c.tau(&[1, 0]).unwrap(), Some(vec![0, 1]));
        assert_eq!(c.tau(&[1, 1]).unwrap(), None);
        assert_eq!(c.tau_inv(&[1, 1]).unwrap(), None);
        assert_eq!(
            c.injective_enumeration(&rd).unwrap(),
            vec![vec![0, 1], vec![1, 1], vec![1, 0]]
        );
    }

    #[test]
    fn enumerations_cover_roots() {
        for name in crate::cartan::PRESET_NAMES {
            let rd = RootDatum::preset(name).unwrap();
            let c = Coxeter::new(&rd).unwrap();
            let mut e = c.injective_enumeration(&rd).unwrap();
            e.sort();
            let mut roots = rd.positive_roots.clone();
            roots.sort();
            assert_eq!(e, roots, "{name}");
            for d in &rd.positive_roots {
                if let Some(t) = c.tau_inv(d).unwrap() {
                    assert_eq!(c.tau(&t).unwrap().as_ref(), Some(d));
                }
            }
        }
    }
}
