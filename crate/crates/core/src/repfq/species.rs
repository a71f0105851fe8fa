//! Concrete species for a valued quiver over `K = F_q`.
//!
//! Model: all fields live inside one ambient field `Ω = GF(p^{e·L})` where
//! `q = p^e` and `L = lcm(f_i)`. The vertex field `F_i` is the subfield of
//! degree `f_i` over `K`, with `K`-basis `1, θ_i, …, θ_i^{f_i-1}` for a fixed
//! primitive element `θ_i`. A representation stores `V_i = F_i^{m_i}` in
//! `K`-coordinates, where coordinate `r·f_i + s` is the `θ_i^s` component of
//! the `r`-th `F_i` entry.
//!
//! For an arrow `i → j` put `g = min(f_i, f_j)`; finite type forces
//! `g | max(f_i, f_j)` and `f_i d_ij = max(f_i, f_j)`. The bimodule is then
//! `F_{q^{max}}`, and a representation of the arrow is the same as a
//! `K`-linear map `V_i → V_j` that commutes with multiplication by the
//! subfield `F_{q^g}`. Its `K`-dimension `f_i m_i f_j m_j / g` matches
//! `dim_K(ᵢMⱼ) = f_i d_ij` per pair of basis vectors.

use std::collections::HashMap;

use super::field::{Elem, GaloisField};
use super::matrix::Mat;
use crate::cartan::RootDatum;
use crate::coeff::prime_power;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct VertexField {
    /// Degree over `K`.
    pub f: usize,
    pub theta: Elem,
    pub elements: Vec<Elem>,
    /// `K`-coordinates of every element of `F_i`, indexed by element code.
    coords: HashMap<Elem, Vec<Elem>>,
}

impl VertexField {
    pub fn coords(&self, x: Elem) -> &[Elem] {
        &self.coords[&x]
    }

    /// `K`-matrix of multiplication by `x` on the basis `θ^s`.
    pub fn mult_matrix(&self, x: Elem, field: &GaloisField) -> Mat {
        let mut m = Mat::zeros(self.f, self.f);
        let mut basis = 1;
        for s in 0..self.f {
            let img = self.coords(field.mul(x, basis));
            for (r, &c) in img.iter().enumerate() {
                m.set(r, s, c);
            }
            basis = field.mul(basis, self.theta);
        }
        m
    }

    /// Element with the given `K`-coordinates.
    pub fn element(&self, coords: &[Elem], field: &GaloisField) -> Elem {
        let mut acc = 0;
        let mut basis = 1;
        for &c in coords {
            acc = field.add(acc, field.mul(c, basis));
            basis = field.mul(basis, self.theta);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct Species {
    pub q: u32,
    pub field: GaloisField,
    /// Elements of `K = F_q` inside `Ω`, zero first.
    pub base: Vec<Elem>,
    pub vertices: Vec<VertexField>,
    pub arrows: Vec<(usize, usize)>,
    /// Degree `g` of the common subfield for each arrow.
    pub arrow_g: Vec<usize>,
    /// `K`-matrix of multiplication by a generator of `F_{q^g}` on one
    /// `F_i`-line, for the source and target of each arrow.
    gamma: Vec<(Mat, Mat)>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Species {
    pub fn new(rd: &RootDatum, q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::InvalidQ(q))?;
        let fs: Vec<usize> = rd.f.iter().map(|&x| x as usize).collect();
        let lcm = fs.iter().fold(1, |acc, &x| acc / gcd(acc, x) * x);
        let field = GaloisField::new(p, e * lcm as u32)?;
        let base = field.subfield_elements(e)?;
        let mut vertices = Vec::with_capacity(rd.n);
        for &f in &fs {
            let elements = field.subfield_elements(e * f as u32)?;
            let theta = field.subfield_generator(e * f as u32)?;
            let mut coords = HashMap::with_capacity(elements.len());
            // enumerate all K-combinations of the powers of θ
            let mut powers = vec![1 as Elem];
            for _ in 1..f {
                let last = *powers.last().unwrap();
                powers.push(field.mul(last, theta));
            }
            let total = base.len().pow(f as u32);
            for idx in 0..total {
                let mut rest = idx;
                let mut c = Vec::with_capacity(f);
                let mut acc = 0;
                for &pw in &powers {
                    let k = base[rest % base.len()];
                    rest /= base.len();
                    acc = field.add(acc, field.mul(k, pw));
                    c.push(k);
                }
                coords.insert(acc, c);
            }
            if coords.len() != elements.len() {
                return Err(Error::Invariant(
                    "powers of the vertex generator are not a K-basis".into(),
                ));
            }
            vertices.push(VertexField {
                f,
                theta,
                elements,
                coords,
            });
        }
        let mut arrow_g = Vec::new();
        let mut gamma = Vec::new();
        for &(i, j) in &rd.arrows {
            let (fi, fj) = (fs[i], fs[j]);
            let (g, big) = (fi.min(fj), fi.max(fj));
            if big % g != 0 || fi as i64 * rd.d[i][j] != big as i64 {
                return Err(Error::InvalidQuiver(format!(
                    "edge {}-{} has no species model of the form F_(q^{big}) (f = ({fi},{fj}), d = {})",
                    i + 1,
                    j + 1,
                    rd.d[i][j]
                )));
            }
            let gen = field.subfield_generator(e * g as u32)?;
            gamma.push((
                vertices[i].mult_matrix(gen, &field),
                vertices[j].mult_matrix(gen, &field),
            ));
            arrow_g.push(g);
        }
        Ok(Self {
            q,
            field,
            base,
            vertices,
            arrows: rd.arrows.clone(),
            arrow_g,
            gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn f(&self, i: usize) -> usize {
        self.vertices[i].f
    }

    /// `K`-dimension of `V_i` for `m` copies of `F_i`.
    pub fn kdim(&self, i: usize, m: usize) -> usize {
        self.f(i) * m
    }

    /// Action of the arrow's common subfield generator on `V` with `m` lines
    /// at the source (`at_target = false`) or the target.
    pub fn gamma_action(&self, arrow: usize, m: usize, at_target: bool) -> Mat {
        let g = if at_target {
            &self.gamma[arrow].1
        } else {
            &self.gamma[arrow].0
        };
        Mat::block_diag(&vec![g; m])
    }

    /// `K`-basis of species-compatible maps for `arrow` from `m_src` source
    /// lines to `m_tgt` target lines.
    pub fn compatible_basis(&self, arrow: usize, m_src: usize, m_tgt: usize) -> Vec<Mat> {
        let (i, j) = self.arrows[arrow];
        let (rows, cols) = (self.kdim(j, m_tgt), self.kdim(i, m_src));
        if self.arrow_g[arrow] == 1 {
            let mut out = Vec::with_capacity(rows * cols);
            for r in 0..rows {
                for c in 0..cols {
                    let mut m = Mat::zeros(rows, cols);
                    m.set(r, c, 1);
                    out.push(m);
                }
            }
            return out;
        }
        let gi = self.gamma_action(arrow, m_src, false);
        let gj = self.gamma_action(arrow, m_tgt, true);
        let unknowns = rows * cols;
        let mut constraint = Mat::zeros(unknowns, unknowns);
        // entries of X·Γ_i − Γ_j·X as linear forms in the entries of X
        for r in 0..rows {
            for c in 0..cols {
                let row = r * cols + c;
                for k in 0..cols {
                    let v = gi.get(k, c);
                    if v != 0 {
                        let cur = constraint.get(row, r * cols + k);
                        constraint.set(row, r * cols + k, self.field.add(cur, v));
                    }
                }
                for k in 0..rows {
                    let v = gj.get(r, k);
                    if v != 0 {
                        let cur = constraint.get(row, k * cols + c);
                        constraint.set(row, k * cols + c, self.field.sub(cur, v));
                    }
                }
            }
        }
        constraint
            .nullspace(&self.field)
            .into_iter()
            .map(|v| Mat {
                rows,
                cols,
                data: v,
            })
            .collect()
    }

    pub fn compatible_dim(&self, arrow: usize, m_src: usize, m_tgt: usize) -> usize {
        let (i, j) = self.arrows[arrow];
        self.kdim(i, m_src) * self.kdim(j, m_tgt) / self.arrow_g[arrow]
    }

    pub fn is_compatible(&self, arrow: usize, map: &Mat, m_src: usize, m_tgt: usize) -> bool {
        if self.arrow_g[arrow] == 1 {
            return true;
        }
        let gi = self.gamma_action(arrow, m_src, false);
        let gj = self.gamma_action(arrow, m_tgt, true);
        map.mul(&gi, &self.field) == gj.mul(map, &self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_and_g2_species_dimensions() {
        for (name, q) in [("b2", 2), ("b2", 3), ("g2", 2), ("a3", 4)] {
            let rd = RootDatum::preset(name).unwrap();
            let sp = Species::new(&rd, q).unwrap();
            for (a, &(i, j)) in rd.arrows.iter().enumerate() {
                let basis = sp.compatible_basis(a, 1, 1);
                assert_eq!(basis.len(), sp.compatible_dim(a, 1, 1));
                assert_eq!(basis.len() as i64, rd.f[i] * rd.d[i][j]);
                for m in &basis {
                    assert!(sp.is_compatible(a, m, 1, 1));
                }
            }
        }
    }

    #[test]
    fn equal_degree_edges_are_linear_over_the_vertex_field() {
        let rd =
            RootDatum::from_json_str(r#"{"n":2,"arrows":[[1,2]],"d":{"1,2":1,"2,1":1},"f":[2,2]}"#)
                .unwrap();
        let sp = Species::new(&rd, 2).unwrap();
        assert_eq!(sp.compatible_basis(0, 1, 1).len(), 2);
        assert_eq!(sp.compatible_basis(0, 2, 1).len(), 4);
    }

    #[test]
    fn coordinates_roundtrip() {
        let rd = RootDatum::preset("g2").unwrap();
        let sp = Species::new(&rd, 3).unwrap();
        let vf = &sp.vertices[0];
        for &x in &vf.elements {
            assert_eq!(vf.element(vf.coords(x), &sp.field), x);
        }
    }
}
