//! Enumeration of subrepresentations through reduced-echelon Grassmannians.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::field::Elem;
use super::matrix::Mat;
use super::rep::ConcreteRep;
use super::species::Species;
use crate::error::{Error, Result};

/// An `F_i`-subspace `U ⊆ F_i^m` with the `K`-linear maps needed to form the
/// induced sub and quotient representations.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub dim: usize,
    /// `V → V/U`, reading the non-pivot coordinates after reduction.
    pub proj: Mat,
    /// `V/U → V` through the non-pivot standard lines.
    pub section: Mat,
    /// `U → V`, basis `θ^s · row_t`.
    pub incl: Mat,
    /// `V → U` restricted to `U`: reads the pivot coordinates.
    pub select: Mat,
}

/// All RREF row bases (as `F_i`-vectors) of subspaces of `F^m`.
fn rref_bases(elements: &[Elem], m: usize) -> Vec<(Vec<usize>, Vec<Vec<Elem>>)> {
    let mut out = Vec::new();
    for k in 0..=m {
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free slots: row t, column c > pivot_t with c not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|t| {
                    let p = pivots.clone();
                    (p[t] + 1..m)
                        .filter(move |c| !p.contains(c))
                        .map(move |c| (t, c))
                })
                .collect();
            let mut digits = vec![0usize; free.len()];
            loop {
                let mut rows = vec![vec![0 as Elem; m]; k];
                for (t, &p) in pivots.iter().enumerate() {
                    rows[t][p] = 1;
                }
                for (&(t, c), &d) in free.iter().zip(&digits) {
                    rows[t][c] = elements[d];
                }
                out.push((pivots.clone(), rows));
                let mut idx = 0;
                while idx < digits.len() {
                    digits[idx] += 1;
                    if digits[idx] < elements.len() {
                        break;
                    }
                    digits[idx] = 0;
                    idx += 1;
                }
                if idx == digits.len() {
                    break;
                }
            }
            // next k-combination of 0..m
            let mut t = k;
            while t > 0 && pivots[t - 1] == m - k + t - 1 {
                t -= 1;
            }
            if t == 0 {
                break;
            }
            pivots[t - 1] += 1;
            for u in t..k {
                pivots[u] = pivots[u - 1] + 1;
            }
        }
    }
    out
}

fn build_subspace(
    sp: &Species,
    i: usize,
    m: usize,
    pivots: &[usize],
    rows: &[Vec<Elem>],
) -> Subspace {
    let vf = &sp.vertices[i];
    let fld = &sp.field;
    let f = vf.f;
    let k = pivots.len();
    let nonpivots: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let powers: Vec<Elem> = {
        let mut x = 1;
        (0..f)
            .map(|_| {
                let cur = x;
                x = fld.mul(x, vf.theta);
                cur
            })
            .collect()
    };

    let mut incl = Mat::zeros(f * m, f * k);
    for t in 0..k {
        for s in 0..f {
            for c in 0..m {
                let x = fld.mul(rows[t][c], powers[s]);
                for (a, &kc) in vf.coords(x).iter().enumerate() {
                    incl.set(c * f + a, t * f + s, kc);
                }
            }
        }
    }
    let mut select = Mat::zeros(f * k, f * m);
    for (t, &p) in pivots.iter().enumerate() {
        for a in 0..f {
            select.set(t * f + a, p * f + a, 1);
        }
    }
    let mut section = Mat::zeros(f * m, f * nonpivots.len());
    for (u, &c) in nonpivots.iter().enumerate() {
        for a in 0..f {
            section.set(c * f + a, u * f + a, 1);
        }
    }
    let mut proj = Mat::zeros(f * nonpivots.len(), f * m);
    for r in 0..m {
        for s in 0..f {
            let col = r * f + s;
            match pivots.iter().position(|&p| p == r) {
                Some(t) => {
                    for (u, &c) in nonpivots.iter().enumerate() {
                        let x = fld.neg(fld.mul(powers[s], rows[t][c]));
                        for (a, &kc) in vf.coords(x).iter().enumerate() {
                            proj.set(u * f + a, col, kc);
                        }
                    }
                }
                None => {
                    let u = nonpivots.iter().position(|&c| c == r).unwrap();
                    proj.set(u * f + s, col, 1);
                }
            }
        }
    }
    Subspace {
        dim: k,
        proj,
        section,
        incl,
        select,
    }
}

/// Per-(vertex, dimension) cache of Grassmannian data.
type Subspaces = Arc<Vec<Subspace>>;

#[derive(Default)]
pub struct SubspaceCache {
    inner: RwLock<HashMap<(usize, usize), Subspaces>>,
}

impl SubspaceCache {
    pub fn get(&self, sp: &Species, i: usize, m: usize) -> Arc<Vec<Subspace>> {
        if let Some(v) = self.inner.read().unwrap().get(&(i, m)) {
            return v.clone();
        }
        let built: Vec<Subspace> = rref_bases(&sp.vertices[i].elements, m)
            .iter()
            .map(|(p, rows)| build_subspace(sp, i, m, p, rows))
            .collect();
        let arc = Arc::new(built);
        self.inner.write().unwrap().insert((i, m), arc.clone());
        arc
    }
}

/// Number of `F_{Q}`-subspaces of `F_Q^m` (all dimensions).
pub fn grassmannian_total(big_q: u128, m: u32) -> u128 {
    (0..=m)
        .map(|k| {
            let mut num = 1u128;
            let mut den = 1u128;
            for t in 0..k {
                num *= big_q.pow(m - t) - 1;
                den *= big_q.pow(t + 1) - 1;
            }
            num / den
        })
        .sum()
}

/// Calls `visit(sub, quotient)` for every subrepresentation of `l`.
pub fn enumerate_subreps(
    sp: &Species,
    cache: &SubspaceCache,
    l: &ConcreteRep,
    guard: usize,
    mut visit: impl FnMut(ConcreteRep, ConcreteRep),
) -> Result<()> {
    let total = l.kdim(sp);
    if total > guard {
        return Err(Error::GuardExceeded {
            what: "total F_q-dimension for subrepresentation enumeration",
            value: total,
            limit: guard,
        });
    }
    let n = sp.n();
    let grass: Vec<Arc<Vec<Subspace>>> = (0..n).map(|i| cache.get(sp, i, l.dims[i])).collect();
    let incoming: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            sp.arrows
                .iter()
                .enumerate()
                .filter(|(_, &(_, t))| t == j)
                .map(|(a, _)| a)
                .collect()
        })
        .collect();
    let mut choice: Vec<usize> = vec![0; n];
    recurse(sp, l, &grass, &incoming, 0, &mut choice, &mut visit);
    Ok(())
}

fn recurse(
    sp: &Species,
    l: &ConcreteRep,
    grass: &[Arc<Vec<Subspace>>],
    incoming: &[Vec<usize>],
    j: usize,
    choice: &mut Vec<usize>,
    visit: &mut impl FnMut(ConcreteRep, ConcreteRep),
) {
    let fld = &sp.field;
    if j == sp.n() {
        let sub_dims: Vec<usize> = (0..j).map(|i| grass[i][choice[i]].dim).collect();
        let quo_dims: Vec<usize> = (0..j).map(|i| l.dims[i] - sub_dims[i]).collect();
        let mut sub_maps = Vec::with_capacity(sp.arrows.len());
        let mut quo_maps = Vec::with_capacity(sp.arrows.len());
        for (a, &(s, t)) in sp.arrows.iter().enumerate() {
            let us = &grass[s][choice[s]];
            let ut = &grass[t][choice[t]];
            sub_maps.push(ut.select.mul(&l.maps[a].mul(&us.incl, fld), fld));
            quo_maps.push(ut.proj.mul(&l.maps[a].mul(&us.section, fld), fld));
        }
        visit(
            ConcreteRep {
                dims: sub_dims,
                maps: sub_maps,
            },
            ConcreteRep {
                dims: quo_dims,
                maps: quo_maps,
            },
        );
        return;
    }
    'next: for c in 0..grass[j].len() {
        let uj = &grass[j][c];
        for &a in &incoming[j] {
            let (s, _) = sp.arrows[a];
            let us = &grass[s][choice[s]];
            if !uj.proj.mul(&l.maps[a].mul(&us.incl, fld), fld).is_zero() {
                continue 'next;
            }
        }
        choice[j] = c;
        recurse(sp, l, grass, incoming, j + 1, choice, visit);
    }
}
