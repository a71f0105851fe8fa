//! Explicit representations and the linear algebra of morphisms between them.

use super::field::Elem;
use super::matrix::Mat;
use super::species::Species;
use crate::error::{Error, Result};

/// A representation with `m_i = dims[i]` copies of `F_i` at vertex `i` and
/// one `K`-matrix per arrow, in the species' arrow order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConcreteRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

/// Morphism data: one `K`-matrix per vertex.
pub type Morphism = Vec<Mat>;

impl ConcreteRep {
    pub fn zero(sp: &Species) -> Self {
        Self {
            dims: vec![0; sp.n()],
            maps: sp.arrows.iter().map(|_| Mat::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(sp: &Species, i: usize) -> Self {
        let mut dims = vec![0; sp.n()];
        dims[i] = 1;
        Self::with_zero_maps(sp, dims)
    }

    pub fn with_zero_maps(sp: &Species, dims: Vec<usize>) -> Self {
        let maps = sp
            .arrows
            .iter()
            .map(|&(i, j)| Mat::zeros(sp.kdim(j, dims[j]), sp.kdim(i, dims[i])))
            .collect();
        Self { dims, maps }
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&m| m as i64).collect()
    }

    /// Total dimension over `K`.
    pub fn kdim(&self, sp: &Species) -> usize {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &m)| sp.kdim(i, m))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&m| m == 0)
    }

    pub fn validate(&self, sp: &Species) -> Result<()> {
        if self.dims.len() != sp.n() {
            return Err(Error::LengthMismatch {
                expected: sp.n(),
                got: self.dims.len(),
            });
        }
        if self.maps.len() != sp.arrows.len() {
            return Err(Error::ContextMismatch(format!(
                "{} arrow maps for {} arrows",
                self.maps.len(),
                sp.arrows.len()
            )));
        }
        for (a, &(i, j)) in sp.arrows.iter().enumerate() {
            let m = &self.maps[a];
            if (m.rows, m.cols) != (sp.kdim(j, self.dims[j]), sp.kdim(i, self.dims[i])) {
                return Err(Error::ContextMismatch(format!(
                    "arrow {}->{} map has shape {}x{}",
                    i + 1,
                    j + 1,
                    m.rows,
                    m.cols
                )));
            }
            if !sp.is_compatible(a, m, self.dims[i], self.dims[j]) {
                return Err(Error::ContextMismatch(format!(
                    "arrow {}->{} map is not compatible with the species",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            dims: self
                .dims
                .iter()
                .zip(&other.dims)
                .map(|(a, b)| a + b)
                .collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| Mat::block_diag(&[a, b]))
                .collect(),
        }
    }

    pub fn direct_sum_all<'a>(sp: &Species, parts: impl IntoIterator<Item = &'a Self>) -> Self {
        parts
            .into_iter()
            .fold(Self::zero(sp), |acc, x| acc.direct_sum(x))
    }
}

/// Solution space of the intertwining equations `φ_j A_M = A_N φ_i`.
pub struct HomSpace {
    /// Number of `K`-unknowns, `Σ_i f_i m_i(M) m_i(N)`.
    pub unknowns: usize,
    pub rank: usize,
    /// Basis of morphisms, present only when requested.
    pub basis: Option<Vec<Morphism>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.unknowns - self.rank
    }
}

struct Unknown {
    vertex: usize,
    row: usize,
    col: usize,
    power: usize,
}

fn unknowns(sp: &Species, m: &ConcreteRep, n: &ConcreteRep) -> Vec<Unknown> {
    let mut out = Vec::new();
    for i in 0..sp.n() {
        for row in 0..n.dims[i] {
            for col in 0..m.dims[i] {
                for power in 0..sp.f(i) {
                    out.push(Unknown {
                        vertex: i,
                        row,
                        col,
                        power,
                    });
                }
            }
        }
    }
    out
}

/// `θ_i^s` multiplication matrices for every vertex.
fn theta_powers(sp: &Species) -> Vec<Vec<Mat>> {
    (0..sp.n())
        .map(|i| {
            let vf = &sp.vertices[i];
            let mut x = 1;
            (0..vf.f)
                .map(|_| {
                    let m = vf.mult_matrix(x, &sp.field);
                    x = sp.field.mul(x, vf.theta);
                    m
                })
                .collect()
        })
        .collect()
}

/// The `F_i`-linear map sending line `col` to `θ^power` times line `row`.
fn unknown_matrix(sp: &Species, u: &Unknown, rows_m: usize, cols_m: usize, th: &[Vec<Mat>]) -> Mat {
    let f = sp.f(u.vertex);
    let mut out = Mat::zeros(f * rows_m, f * cols_m);
    let block = &th[u.vertex][u.power];
    for a in 0..f {
        for b in 0..f {
            out.set(u.row * f + a, u.col * f + b, block.get(a, b));
        }
    }
    out
}

pub fn hom_space(sp: &Species, m: &ConcreteRep, n: &ConcreteRep, with_basis: bool) -> HomSpace {
    let fld = &sp.field;
    let us = unknowns(sp, m, n);
    let th = theta_powers(sp);
    let mut row_offsets = Vec::new();
    let mut total_rows = 0;
    for &(i, j) in &sp.arrows {
        row_offsets.push(total_rows);
        total_rows += sp.kdim(j, n.dims[j]) * sp.kdim(i, m.dims[i]);
    }
    let mut constraint = Mat::zeros(total_rows, us.len());
    for (col, u) in us.iter().enumerate() {
        let b = unknown_matrix(sp, u, n.dims[u.vertex], m.dims[u.vertex], &th);
        for (a, &(i, j)) in sp.arrows.iter().enumerate() {
            // contribution to φ_j A_M − A_N φ_i
            let contrib = if j == u.vertex {
                Some(b.mul(&m.maps[a], fld))
            } else if i == u.vertex {
                Some(n.maps[a].mul(&b, fld).scale(fld.neg(1), fld))
            } else {
                None
            };
            if let Some(c) = contrib {
                for (k, &x) in c.data.iter().enumerate() {
                    if x != 0 {
                        let r = row_offsets[a] + k;
                        let cur = constraint.get(r, col);
                        constraint.set(r, col, fld.add(cur, x));
                    }
                }
            }
        }
    }
    if !with_basis {
        return HomSpace {
            unknowns: us.len(),
            rank: constraint.rank(fld),
            basis: None,
        };
    }
    let null = constraint.nullspace(fld);
    let rank = us.len() - null.len();
    let basis = null
        .into_iter()
        .map(|coeffs| {
            let mut phi: Morphism = (0..sp.n())
                .map(|i| Mat::zeros(sp.kdim(i, n.dims[i]), sp.kdim(i, m.dims[i])))
                .collect();
            for (u, &c) in us.iter().zip(&coeffs) {
                if c != 0 {
                    let b = unknown_matrix(sp, u, n.dims[u.vertex], m.dims[u.vertex], &th);
                    phi[u.vertex] = phi[u.vertex].add(&b.scale(c, fld), fld);
                }
            }
            phi
        })
        .collect();
    HomSpace {
        unknowns: us.len(),
        rank,
        basis: Some(basis),
    }
}

pub fn hom_dim(sp: &Species, m: &ConcreteRep, n: &ConcreteRep) -> usize {
    hom_space(sp, m, n, false).dim()
}

/// `dim Ext¹(M,N)` as the cokernel of the intertwining map into the space of
/// species-compatible arrow data.
pub fn ext_dim(sp: &Species, m: &ConcreteRep, n: &ConcreteRep) -> usize {
    let hs = hom_space(sp, m, n, false);
    let target: usize = sp
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| sp.compatible_dim(a, m.dims[i], n.dims[j]))
        .sum();
    target - hs.rank
}

pub fn is_morphism(sp: &Species, m: &ConcreteRep, n: &ConcreteRep, phi: &Morphism) -> bool {
    sp.arrows
        .iter()
        .enumerate()
        .all(|(a, &(i, j))| phi[j].mul(&m.maps[a], &sp.field) == n.maps[a].mul(&phi[i], &sp.field))
}

/// Visit every endomorphism of `M` as a `K`-combination of a basis.
fn for_each_endomorphism(
    sp: &Species,
    m: &ConcreteRep,
    guard: usize,
    mut visit: impl FnMut(&Morphism) -> bool,
) -> Result<()> {
    let hs = hom_space(sp, m, m, true);
    let basis = hs.basis.unwrap();
    if basis.len() > guard {
        return Err(Error::GuardExceeded {
            what: "endomorphism dimension",
            value: basis.len(),
            limit: guard,
        });
    }
    let fld = &sp.field;
    let qn = sp.base.len();
    let mut digits = vec![0usize; basis.len()];
    loop {
        let mut phi: Morphism = (0..sp.n())
            .map(|i| Mat::zeros(sp.kdim(i, m.dims[i]), sp.kdim(i, m.dims[i])))
            .collect();
        for (b, &d) in basis.iter().zip(&digits) {
            if d == 0 {
                continue;
            }
            let c: Elem = sp.base[d];
            for (pv, bv) in phi.iter_mut().zip(b) {
                *pv = pv.add(&bv.scale(c, fld), fld);
            }
        }
        if !visit(&phi) {
            return Ok(());
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(());
            }
            digits[k] += 1;
            if digits[k] < qn {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn is_invertible(sp: &Species, phi: &Morphism) -> bool {
    phi.iter().all(|x| x.is_invertible(&sp.field))
}

fn is_nilpotent(sp: &Species, phi: &Morphism) -> bool {
    phi.iter().all(|x| x.is_nilpotent(&sp.field))
}

/// `|Aut M|` by enumerating the endomorphism space.
pub fn aut_size_brute(sp: &Species, m: &ConcreteRep, guard: usize) -> Result<u128> {
    let mut count = 0u128;
    for_each_endomorphism(sp, m, guard, |phi| {
        if is_invertible(sp, phi) {
            count += 1;
        }
        true
    })?;
    Ok(count)
}

/// Every endomorphism is invertible or nilpotent.
pub fn has_local_endomorphism_ring(sp: &Species, m: &ConcreteRep, guard: usize) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let mut local = true;
    for_each_endomorphism(sp, m, guard, |phi| {
        if !is_invertible(sp, phi) && !is_nilpotent(sp, phi) {
            local = false;
        }
        local
    })?;
    Ok(local)
}

/// `|GL_a(F_Q)|` for a field with `Q` elements.
pub fn gl_order(a: u32, big_q: u128) -> u128 {
    let qa = big_q.pow(a);
    (0..a).map(|k| qa - big_q.pow(k)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootDatum;

    fn a2(q: u32) -> Species {
        Species::new(&RootDatum::preset("a2").unwrap(), q).unwrap()
    }

    fn p1(sp: &Species) -> ConcreteRep {
        ConcreteRep {
            dims: vec![1, 1],
            maps: vec![Mat::identity(1)],
        }
        .tap_validate(sp)
    }

    trait TapValidate {
        fn tap_validate(self, sp: &Species) -> Self;
    }

    impl TapValidate for ConcreteRep {
        fn tap_validate(self, sp: &Species) -> Self {
            self.validate(sp).unwrap();
            self
        }
    }

    #[test]
    fn a2_hom_and_ext() {
        let sp = a2(2);
        let (s1, s2, p) = (
            ConcreteRep::simple(&sp, 0),
            ConcreteRep::simple(&sp, 1),
            p1(&sp),
        );
        assert_eq!(hom_dim(&sp, &p, &s1), 1);
        assert_eq!(hom_dim(&sp, &s1, &p), 0);
        assert_eq!(ext_dim(&sp, &s1, &s2), 1);
        assert_eq!(ext_dim(&sp, &s2, &s1), 0);
        assert!(hom_dim(&sp, &p, &p) >= 1);
    }

    #[test]
    fn a2_aut_sizes() {
        let sp = a2(2);
        let (s1, s2) = (ConcreteRep::simple(&sp, 0), ConcreteRep::simple(&sp, 1));
        assert_eq!(aut_size_brute(&sp, &s1, 16).unwrap(), 1);
        assert_eq!(aut_size_brute(&sp, &s1.direct_sum(&s1), 16).unwrap(), 6);
        assert_eq!(aut_size_brute(&sp, &s1.direct_sum(&s2), 16).unwrap(), 1);
        let sp3 = a2(3);
        assert_eq!(
            aut_size_brute(&sp3, &ConcreteRep::simple(&sp3, 0), 16).unwrap(),
            2
        );
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(2, 3), 48);
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let sp = Species::new(&RootDatum::preset("b2").unwrap(), 2).unwrap();
        let s1 = ConcreteRep::simple(&sp, 0);
        let m = s1.direct_sum(&ConcreteRep::simple(&sp, 1));
        let hs = hom_space(&sp, &m, &m, true);
        assert_eq!(hs.dim(), 3); // End(S1) = F_4 plus End(S2) = F_2
        for phi in hs.basis.unwrap() {
            assert!(is_morphism(&sp, &m, &m, &phi));
        }
    }

    #[test]
    fn guard_is_enforced() {
        let sp = a2(2);
        let s1 = ConcreteRep::simple(&sp, 0);
        let big = ConcreteRep::direct_sum_all(&sp, [&s1, &s1, &s1]);
        assert!(matches!(
            aut_size_brute(&sp, &big, 4),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(!has_local_endomorphism_ring(&sp, &s1.direct_sum(&s1), 16).unwrap());
        assert!(has_local_endomorphism_ring(&sp, &s1, 16).unwrap());
    }
}
