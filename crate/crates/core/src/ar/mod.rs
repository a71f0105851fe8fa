//! Auslander–Reiten combinatorics on isoclasses.
//!
//! Indecomposables are referred to by canonical index (the order of
//! [`RepCategory::indecs`], which is the injective enumeration). On the
//! command line and in JSON, partitions use 1-based canonical indices.

pub mod coxeter;

use std::cmp::Ordering;

use serde_json::{json, Value};

use crate::cartan::{render_word, RootDatum};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::repfq::catalog::add_vec;
use crate::repfq::{IsoClass, RepCategory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub seq: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedPartition {
    pub parts: Vec<Vec<usize>>,
}

impl DirectedPartition {
    /// `"[[1,2],[3]]"`, 1-based canonical indices.
    pub fn from_json_str(text: &str, nu: usize) -> Result<Self> {
        let raw: Vec<Vec<usize>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("partition: {e}")))?;
        let mut seen = vec![false; nu];
        let mut parts = Vec::with_capacity(raw.len());
        for part in raw {
            let mut p = Vec::with_capacity(part.len());
            for x in part {
                if x == 0 || x > nu {
                    return Err(Error::Parse(format!("partition index {x} outside 1..{nu}")));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::Parse(format!("partition index {x} repeated")));
                }
                p.push(x - 1);
            }
            if !p.is_empty() {
                parts.push(p);
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::Parse(format!("partition misses index {}", k + 1)));
        }
        Ok(Self { parts })
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .parts
            .iter()
            .map(|p| p.iter().map(|x| x + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }

    pub fn part_of(&self, k: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&k))
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalStructures {
    pub inj_enumeration: Enumeration,
    /// `𝓘_k = {τ^{k−1} I_j}`.
    pub inj_slices: Vec<Vec<usize>>,
    /// `𝒫_k = {τ^{−k+1} P_j}`.
    pub proj_partition: DirectedPartition,
    pub w0: Vec<usize>,
}

/// `(i, k)` with `M ≅ τ^k I_i`.
pub fn theta_tau(cat: &RepCategory, m: usize) -> (usize, usize) {
    let mut cur = m;
    let mut steps = 0;
    while let Some(next) = cat.tau_inv[cur] {
        cur = next;
        steps += 1;
    }
    let i = cat
        .coxeter
        .inj_dims
        .iter()
        .position(|d| *d == cat.indec_dims[cur])
        .expect("τ⁻¹-orbits end at injectives");
    (i, steps)
}

pub fn canonical_structures(cat: &RepCategory) -> Result<CanonicalStructures> {
    let nu = cat.nu();
    let inj_enumeration = Enumeration {
        seq: (0..nu).collect(),
    };
    validate_enumeration(cat, &inj_enumeration)?;

    let mut inj_slices: Vec<Vec<usize>> = Vec::new();
    for k in 0..nu {
        let (_, p) = theta_tau(cat, k);
        if inj_slices.len() <= p {
            inj_slices.resize(p + 1, Vec::new());
        }
        inj_slices[p].push(k);
    }

    let mut proj_parts: Vec<Vec<usize>> = Vec::new();
    for d in &cat.coxeter.proj_dims {
        let mut cur = cat.indec_dims.iter().position(|e| e == d);
        let mut step = 0;
        while let Some(k) = cur {
            if proj_parts.len() <= step {
                proj_parts.resize(step + 1, Vec::new());
            }
            proj_parts[step].push(k);
            cur = cat.tau_inv[k];
            step += 1;
        }
    }
    for p in &mut proj_parts {
        p.sort();
    }
    let counts_p: Vec<usize> = proj_parts.iter().map(Vec::len).collect();
    let counts_i: Vec<usize> = inj_slices.iter().map(Vec::len).collect();
    if counts_p != counts_i {
        return Err(Error::Invariant(format!(
            "slice sizes differ: |P_k| = {counts_p:?}, |I_k| = {counts_i:?}"
        )));
    }
    let proj_partition = DirectedPartition { parts: proj_parts };
    validate_partition(cat, &proj_partition)?;
    let w0 = word_of_partition(cat, &proj_partition);
    let we = word_from_enumeration(cat, &inj_enumeration);
    if w0 != we {
        return Err(Error::Invariant(format!(
            "partition word ({}) differs from enumeration word ({})",
            render_word(&w0),
            render_word(&we)
        )));
    }
    Ok(CanonicalStructures {
        inj_enumeration,
        inj_slices,
        proj_partition,
        w0,
    })
}

/// `Hom(e(i), e(j)) = 0 = Ext¹(e(j), e(i))` for `j < i`.
pub fn validate_enumeration(cat: &RepCategory, e: &Enumeration) -> Result<()> {
    let mut sorted = e.seq.clone();
    sorted.sort();
    if sorted != (0..cat.nu()).collect::<Vec<_>>() {
        return Err(Error::Invariant(
            "enumeration is not a permutation of the indecomposables".into(),
        ));
    }
    for i in 0..e.seq.len() {
        for j in 0..i {
            let (x, y) = (e.seq[i], e.seq[j]);
            if cat.hom[x][y] != 0 || cat.ext[y][x] != 0 {
                return Err(Error::Invariant(format!(
                    "enumeration order fails at {} before {}",
                    cat.names[y], cat.names[x]
                )));
            }
        }
    }
    Ok(())
}

pub fn validate_partition(cat: &RepCategory, d: &DirectedPartition) -> Result<()> {
    let mut all: Vec<usize> = d.parts.iter().flatten().copied().collect();
    all.sort();
    if all != (0..cat.nu()).collect::<Vec<_>>() {
        return Err(Error::Invariant(
            "partition does not cover each indecomposable exactly once".into(),
        ));
    }
    for (k, pk) in d.parts.iter().enumerate() {
        for &u in pk {
            for &v in pk {
                if cat.ext[u][v] != 0 {
                    return Err(Error::Invariant(format!(
                        "Ext¹({}, {}) ≠ 0 inside part {}",
                        cat.names[u],
                        cat.names[v],
                        k + 1
                    )));
                }
            }
            for pl in &d.parts[k + 1..] {
                for &v in pl {
                    if cat.hom[v][u] != 0 || cat.ext[u][v] != 0 {
                        return Err(Error::Invariant(format!(
                            "{} in part {} and {} in a later part are not directed",
                            cat.names[u],
                            k + 1,
                            cat.names[v]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Parts in order, each sorted so that `Hom(later, earlier) = 0`; ties go to
/// the lowest canonical index.
pub fn enumeration_from_partition(cat: &RepCategory, d: &DirectedPartition) -> Result<Enumeration> {
    let mut seq = Vec::with_capacity(cat.nu());
    for part in &d.parts {
        let mut left: Vec<usize> = part.clone();
        left.sort();
        while !left.is_empty() {
            // a module may come next once nothing left maps into it
            let pos = left
                .iter()
                .position(|&y| left.iter().all(|&x| x == y || cat.hom[x][y] == 0))
                .ok_or_else(|| Error::Invariant("Hom relation inside a part has a cycle".into()))?;
            seq.push(left.remove(pos));
        }
    }
    let e = Enumeration { seq };
    validate_enumeration(cat, &e)?;
    Ok(e)
}

/// Supports `𝒮_k` of the parts, each increasing.
pub fn part_supports(cat: &RepCategory, d: &DirectedPartition) -> Vec<Vec<usize>> {
    d.parts
        .iter()
        .map(|p| {
            let sum = p.iter().fold(vec![0; cat.n()], |acc, &k| {
                add_vec(&acc, &cat.indec_dims[k])
            });
            (0..cat.n()).filter(|&i| sum[i] != 0).collect()
        })
        .collect()
}

pub fn word_of_partition(cat: &RepCategory, d: &DirectedPartition) -> Vec<usize> {
    part_supports(cat, d).concat()
}

/// `i_k = θ_τ(e(ν+1−k))`.
pub fn word_from_enumeration(cat: &RepCategory, e: &Enumeration) -> Vec<usize> {
    e.seq.iter().rev().map(|&m| theta_tau(cat, m).0).collect()
}

/// `M_(k) = ⊕_{U ∈ 𝒟_k} U^{μ_U(M)}`.
pub fn partition_parts(d: &DirectedPartition, m: &IsoClass) -> Vec<IsoClass> {
    d.parts
        .iter()
        .map(|p| {
            let mut c = IsoClass::zero(m.0.len());
            for &k in p {
                c.0[k] = m.0[k];
            }
            c
        })
        .collect()
}

pub fn generated_vector(cat: &RepCategory, d: &DirectedPartition, m: &IsoClass) -> Vec<u32> {
    let supports = part_supports(cat, d);
    let mut out = Vec::with_capacity(supports.iter().map(Vec::len).sum());
    for (part, supp) in partition_parts(d, m).iter().zip(&supports) {
        let dim = cat.dim_of(part);
        out.extend(supp.iter().map(|&i| dim[i] as u32));
    }
    out
}

/// `≤ₑ`: lexicographic on multiplicities read in enumeration order.
pub fn order_compare(e: &Enumeration, m: &IsoClass, n: &IsoClass) -> Ordering {
    for &k in &e.seq {
        match m.0[k].cmp(&n.0[k]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// `E(a, w)`: isoclasses `X` with `F^X_{S_{i₁}^{a₁},…} ≠ 0`.
pub fn exact_set(cat: &RepCategory, a: &[u32], w: &[usize], exec: Exec) -> Result<Vec<IsoClass>> {
    if a.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: w.len(),
            got: a.len(),
        });
    }
    let mut dim = vec![0i64; cat.n()];
    for (&i, &k) in w.iter().zip(a) {
        cat.rd.check_vertex(i)?;
        dim[i] += k as i64;
    }
    let cands = cat.classes_of_dim(&dim);
    let counts = exec.try_map(&cands, |x| cat.word_filtration_number(x, w, a))?;
    Ok(cands
        .iter()
        .zip(counts)
        .filter(|(_, c)| *c != 0)
        .map(|(x, _)| x.clone())
        .collect())
}

/// Swap letters `k, k+1` (1-based) when `(α_{i_k}, α_{i_{k+1}}) = 0`.
pub fn short_braid_move(rd: &RootDatum, w: &[usize], k: usize) -> Result<Vec<usize>> {
    if k == 0 || k >= w.len() {
        return Err(Error::Parse(format!(
            "braid position {k} outside 1..{}",
            w.len().saturating_sub(1)
        )));
    }
    if rd.sym_simple(w[k - 1], w[k]) != 0 {
        return Err(Error::NotOrthogonal {
            pos: k,
            next: k + 1,
        });
    }
    let mut out = w.to_vec();
    out.swap(k - 1, k);
    Ok(out)
}
