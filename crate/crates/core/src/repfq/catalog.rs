//! The category of representations over `F_q` for a fixed root datum:
//! canonical indecomposables, isoclass identification and Hall numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::Mat;
use super::rep::{self, ConcreteRep};
use super::species::Species;
use super::subrep::{enumerate_subreps, grassmannian_total, SubspaceCache};
use crate::ar::coxeter::Coxeter;
use crate::cartan::{unit, RootDatum};
use crate::coeff::QScalar;
use crate::error::{Error, Result};

/// Isomorphism class as multiplicities over the canonical indecomposables.
/// The derived order is lexicographic in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IsoClass(pub Vec<u32>);

impl IsoClass {
    pub fn zero(nu: usize) -> Self {
        Self(vec![0; nu])
    }

    pub fn indec(nu: usize, k: usize) -> Self {
        let mut v = vec![0; nu];
        v[k] = 1;
        Self(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn mult(&self, k: usize) -> u32 {
        self.0[k]
    }

    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, _)| k)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Guards {
    /// Maximal total `F_q`-dimension for subrepresentation enumeration.
    pub subrep_kdim: usize,
    /// Maximal `F_q`-dimension of an endomorphism space to enumerate.
    pub end_dim: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            subrep_kdim: 12,
            end_dim: 16,
        }
    }
}

/// `(quotient class, sub class) → number of subrepresentations`.
pub type Census = HashMap<(IsoClass, IsoClass), u64>;

/// `(middle class, Hall number)` for a fixed ordered pair.
type Products = Arc<Vec<(IsoClass, u64)>>;

pub struct RepCategory {
    pub rd: RootDatum,
    pub q: u32,
    pub species: Species,
    pub guards: Guards,
    pub coxeter: Coxeter,
    /// Indecomposables in canonical (injective enumeration) order.
    pub indecs: Vec<ConcreteRep>,
    pub indec_dims: Vec<Vec<i64>>,
    pub names: Vec<String>,
    /// `hom[x][y] = dim_K Hom(indec_x, indec_y)`.
    pub hom: Vec<Vec<usize>>,
    pub ext: Vec<Vec<usize>>,
    /// Canonical index of `τ(indec_k)`.
    pub tau: Vec<Option<usize>>,
    pub tau_inv: Vec<Option<usize>>,
    subspaces: SubspaceCache,
    classes: RwLock<HashMap<Vec<i64>, Arc<Vec<IsoClass>>>>,
    census: RwLock<HashMap<IsoClass, Arc<Census>>>,
    products: RwLock<HashMap<(IsoClass, IsoClass), Products>>,
}

impl fmt::Debug for RepCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RepCategory({}, q={})",
            self.rd.name.as_deref().unwrap_or("quiver"),
            self.q
        )
    }
}

const SEED: u64 = 0x5eed_f1e1d;
const MAX_ATTEMPTS: usize = 4000;
/// Largest number of gluings enumerated by [`RepCategory::extension_numbers`].
const EXTENSION_LIMIT: u128 = 1 << 22;

impl RepCategory {
    pub fn new(rd: &RootDatum, q: u32) -> Result<Self> {
        Self::with_guards(rd, q, Guards::default())
    }

    pub fn with_guards(rd: &RootDatum, q: u32, guards: Guards) -> Result<Self> {
        let species = Species::new(rd, q)?;
        let coxeter = Coxeter::new(rd)?;
        let order = coxeter.injective_enumeration(rd)?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ q as u64);
        let mut indecs = Vec::with_capacity(order.len());
        for d in &order {
            indecs.push(build_indecomposable(&species, rd, d, guards, &mut rng)?);
        }
        let nu = order.len();
        let hom: Vec<Vec<usize>> = (0..nu)
            .map(|x| {
                (0..nu)
                    .map(|y| rep::hom_dim(&species, &indecs[x], &indecs[y]))
                    .collect()
            })
            .collect();
        let ext: Vec<Vec<usize>> = (0..nu)
            .map(|x| {
                (0..nu)
                    .map(|y| rep::ext_dim(&species, &indecs[x], &indecs[y]))
                    .collect()
            })
            .collect();
        let index_of = |d: &[i64]| order.iter().position(|e| e == d);
        let mut tau = Vec::with_capacity(nu);
        let mut tau_inv = Vec::with_capacity(nu);
        for d in &order {
            tau.push(match coxeter.tau(d)? {
                Some(t) => Some(index_of(&t).ok_or_else(|| {
                    Error::Invariant(format!("τ of {d:?} is not a positive root"))
                })?),
                None => None,
            });
            tau_inv.push(match coxeter.tau_inv(d)? {
                Some(t) => Some(index_of(&t).ok_or_else(|| {
                    Error::Invariant(format!("τ⁻¹ of {d:?} is not a positive root"))
                })?),
                None => None,
            });
        }
        let names = order.iter().map(|d| indec_name(rd, &coxeter, d)).collect();
        let cat = Self {
            rd: rd.clone(),
            q,
            species,
            guards,
            coxeter,
            indecs,
            indec_dims: order,
            names,
            hom,
            ext,
            tau,
            tau_inv,
            subspaces: SubspaceCache::default(),
            classes: RwLock::new(HashMap::new()),
            census: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        };
        if let Some((x, y)) = cat.ar_duality_violation() {
            return Err(Error::Invariant(format!(
                "AR duality fails for X = {}, Y = {}",
                cat.names[x], cat.names[y]
            )));
        }
        Ok(cat)
    }

    pub fn nu(&self) -> usize {
        self.indecs.len()
    }

    pub fn n(&self) -> usize {
        self.rd.n
    }

    /// First pair `(X, Y)` with `X` non-projective and
    /// `dim Ext¹(X,Y) ≠ dim Hom(Y, τX)`.
    pub fn ar_duality_violation(&self) -> Option<(usize, usize)> {
        for x in 0..self.nu() {
            let Some(tx) = self.tau[x] else { continue };
            for y in 0..self.nu() {
                if self.ext[x][y] != self.hom[y][tx] {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_projective(&self, k: usize) -> bool {
        self.tau[k].is_none()
    }

    pub fn is_injective(&self, k: usize) -> bool {
        self.tau_inv[k].is_none()
    }

    pub fn zero_class(&self) -> IsoClass {
        IsoClass::zero(self.nu())
    }

    pub fn indec_class(&self, k: usize) -> IsoClass {
        IsoClass::indec(self.nu(), k)
    }

    pub fn simple_index(&self, i: usize) -> usize {
        let e = unit(self.n(), i);
        self.indec_dims.iter().position(|d| *d == e).unwrap()
    }

    pub fn simple_class(&self, i: usize) -> IsoClass {
        self.indec_class(self.simple_index(i))
    }

    pub fn dim_of(&self, c: &IsoClass) -> Vec<i64> {
        let mut d = vec![0; self.n()];
        for k in c.support() {
            for (i, x) in self.indec_dims[k].iter().enumerate() {
                d[i] += c.0[k] as i64 * x;
            }
        }
        d
    }

    pub fn rep_of(&self, c: &IsoClass) -> ConcreteRep {
        let mut out = ConcreteRep::zero(&self.species);
        for k in c.support() {
            for _ in 0..c.0[k] {
                out = out.direct_sum(&self.indecs[k]);
            }
        }
        out
    }

    /// Total dimension `Σ_i m_i` (over the vertex fields).
    pub fn total_dim(&self, c: &IsoClass) -> i64 {
        self.dim_of(c).iter().sum()
    }

    pub fn kdim_of(&self, c: &IsoClass) -> usize {
        self.dim_of(c)
            .iter()
            .enumerate()
            .map(|(i, &m)| self.species.kdim(i, m as usize))
            .sum()
    }

    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        self.rd.euler_form(a, b)
    }

    pub fn sym(&self, a: &[i64], b: &[i64]) -> i64 {
        self.rd.sym_form(a, b)
    }

    /// `dim_K Hom(M, N)` from the indecomposable table.
    pub fn hom_classes(&self, m: &IsoClass, n: &IsoClass) -> usize {
        let mut s = 0;
        for x in m.support() {
            for y in n.support() {
                s += (m.0[x] * n.0[y]) as usize * self.hom[x][y];
            }
        }
        s
    }

    pub fn ext_classes(&self, m: &IsoClass, n: &IsoClass) -> usize {
        let mut s = 0;
        for x in m.support() {
            for y in n.support() {
                s += (m.0[x] * n.0[y]) as usize * self.ext[x][y];
            }
        }
        s
    }

    /// `|Aut M| = q^{dim End − Σ a_k² d_k} Π_k |GL_{a_k}(F_{q^{d_k}})|` where
    /// `d_k = dim_K End(indec_k)`: the radical of `End M` has codimension
    /// `Σ a_k² d_k` and its top is `Π_k M_{a_k}(End indec_k)`.
    pub fn aut_size(&self, m: &IsoClass) -> u128 {
        let q = self.q as u128;
        let end = self.hom_classes(m, m) as u32;
        let mut semisimple = 0u32;
        let mut prod = 1u128;
        for k in m.support() {
            let a = m.0[k];
            let dk = self.hom[k][k] as u32;
            semisimple += a * a * dk;
            prod *= rep::gl_order(a, q.pow(dk));
        }
        q.pow(end - semisimple) * prod
    }

    pub fn aut_scalar(&self, m: &IsoClass) -> QScalar {
        QScalar::new(
            num_rational::BigRational::from_integer(self.aut_size(m).into()),
            num_rational::BigRational::from_integer(0.into()),
            self.q,
        )
        .expect("valid q")
    }

    /// Brute-force `|Aut M|`, guarded by the endomorphism dimension.
    pub fn aut_size_brute(&self, m: &IsoClass) -> Result<u128> {
        rep::aut_size_brute(&self.species, &self.rep_of(m), self.guards.end_dim)
    }

    /// All isoclasses with dimension vector `d`, ascending.
    pub fn classes_of_dim(&self, d: &[i64]) -> Arc<Vec<IsoClass>> {
        if let Some(v) = self.classes.read().unwrap().get(d) {
            return v.clone();
        }
        let mut out = Vec::new();
        if d.iter().all(|&x| x >= 0) {
            let mut cur = vec![0u32; self.nu()];
            self.compose(d.to_vec(), 0, &mut cur, &mut out);
        }
        out.sort();
        let arc = Arc::new(out);
        self.classes
            .write()
            .unwrap()
            .insert(d.to_vec(), arc.clone());
        arc
    }

    fn compose(&self, rest: Vec<i64>, k: usize, cur: &mut Vec<u32>, out: &mut Vec<IsoClass>) {
        if k == self.nu() {
            if rest.iter().all(|&x| x == 0) {
                out.push(IsoClass(cur.clone()));
            }
            return;
        }
        let dk = &self.indec_dims[k];
        let mut r = rest;
        let mut a = 0;
        loop {
            cur[k] = a;
            self.compose(r.clone(), k + 1, cur, out);
            for (x, y) in r.iter_mut().zip(dk) {
                *x -= y;
            }
            if r.iter().any(|&x| x < 0) {
                break;
            }
            a += 1;
        }
        cur[k] = 0;
    }

    /// Krull–Schmidt decomposition of an explicit representation, using
    /// `dim Hom(indec_X, R)` to separate candidate classes.
    pub fn identify(&self, r: &ConcreteRep) -> Result<IsoClass> {
        let d = r.dim_vector();
        let cands = self.classes_of_dim(&d);
        match cands.len() {
            0 => {
                return Err(Error::Invariant(format!(
                    "no isoclass has dimension vector {d:?}"
                )))
            }
            1 => return Ok(cands[0].clone()),
            _ => {}
        }
        let predicted = |c: &IsoClass, x: usize| -> usize {
            c.support().map(|y| c.0[y] as usize * self.hom[x][y]).sum()
        };
        let mut alive: Vec<&IsoClass> = cands.iter().collect();
        let mut used = vec![false; self.nu()];
        while alive.len() > 1 {
            // probe with the indecomposable that best splits the candidates
            let mut best = None;
            let mut best_score = 1;
            for x in 0..self.nu() {
                if used[x] {
                    continue;
                }
                let mut vals: Vec<usize> = alive.iter().map(|c| predicted(c, x)).collect();
                vals.sort_unstable();
                vals.dedup();
                if vals.len() > best_score {
                    best_score = vals.len();
                    best = Some(x);
                }
            }
            let Some(x) = best else {
                return Err(Error::Invariant(
                    "Hom counts do not separate isoclasses".into(),
                ));
            };
            used[x] = true;
            let h = rep::hom_dim(&self.species, &self.indecs[x], r);
            alive.retain(|c| predicted(c, x) == h);
        }
        alive
            .pop()
            .cloned()
            .ok_or_else(|| Error::Invariant("representation matches no isoclass".into()))
    }

    /// Counts of subrepresentations of `L` by (quotient, sub) classes.
    pub fn census(&self, l: &IsoClass) -> Result<Arc<Census>> {
        if let Some(c) = self.census.read().unwrap().get(l) {
            return Ok(c.clone());
        }
        let rep = self.rep_of(l);
        let mut out: Census = HashMap::new();
        let mut err = None;
        enumerate_subreps(
            &self.species,
            &self.subspaces,
            &rep,
            self.guards.subrep_kdim,
            |sub, quo| {
                if err.is_some() {
                    return;
                }
                match (self.identify(&quo), self.identify(&sub)) {
                    (Ok(qc), Ok(sc)) => *out.entry((qc, sc)).or_insert(0) += 1,
                    (Err(e), _) | (_, Err(e)) => err = Some(e),
                }
            },
        )?;
        if let Some(e) = err {
            return Err(e);
        }
        let arc = Arc::new(out);
        self.census.write().unwrap().insert(l.clone(), arc.clone());
        Ok(arc)
    }

    /// Hall number `F^L_{M,N}`: subrepresentations `X ⊆ L` with `X ≅ N` and
    /// `L/X ≅ M`.
    pub fn hall_number(&self, l: &IsoClass, m: &IsoClass, n: &IsoClass) -> Result<u64> {
        if self.dim_of(l) != add_vec(&self.dim_of(m), &self.dim_of(n)) {
            return Ok(0);
        }
        Ok(self
            .census(l)?
            .get(&(m.clone(), n.clone()))
            .copied()
            .unwrap_or(0))
    }

    /// `F^L_{M,N}` for every `L`, by counting extensions `0 → N → L → M → 0`:
    /// each species-compatible gluing `ζ` gives a middle term `L_ζ`, and
    /// `F^L_{M,N} = #{ζ : L_ζ ≅ L} · |Aut L| / (q^{Σ f_i m_i n_i} |Aut M| |Aut N|)`.
    pub fn extension_numbers(&self, m: &IsoClass, n: &IsoClass) -> Result<Vec<(IsoClass, u64)>> {
        let sp = &self.species;
        let fld = &sp.field;
        let (rm, rn) = (self.rep_of(m), self.rep_of(n));
        let bases: Vec<Vec<Mat>> = sp
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| sp.compatible_basis(a, rm.dims[s], rn.dims[t]))
            .collect();
        let dim_z: usize = bases.iter().map(Vec::len).sum();
        let q = self.q as u128;
        let total = q
            .checked_pow(dim_z as u32)
            .filter(|&t| t <= EXTENSION_LIMIT)
            .ok_or(Error::GuardExceeded {
                what: "extension space size (q^dim)",
                value: dim_z,
                limit: EXTENSION_LIMIT.ilog(q) as usize,
            })?;
        let mut counts: BTreeMap<IsoClass, u128> = BTreeMap::new();
        let mut digits = vec![0usize; dim_z];
        for _ in 0..total {
            let mut maps = Vec::with_capacity(sp.arrows.len());
            let mut k = 0;
            for a in 0..sp.arrows.len() {
                let (ns, nt) = (rn.maps[a].cols, rn.maps[a].rows);
                let (ms, mt) = (rm.maps[a].cols, rm.maps[a].rows);
                let mut big = Mat::zeros(nt + mt, ns + ms);
                for r in 0..nt {
                    for c in 0..ns {
                        big.set(r, c, rn.maps[a].get(r, c));
                    }
                }
                for r in 0..mt {
                    for c in 0..ms {
                        big.set(nt + r, ns + c, rm.maps[a].get(r, c));
                    }
                }
                for b in &bases[a] {
                    let coeff = sp.base[digits[k]];
                    k += 1;
                    if coeff == 0 {
                        continue;
                    }
                    for r in 0..nt {
                        for c in 0..ms {
                            let v = fld.mul(coeff, b.get(r, c));
                            big.set(r, ns + c, fld.add(big.get(r, ns + c), v));
                        }
                    }
                }
                maps.push(big);
            }
            let mid = ConcreteRep {
                dims: rn.dims.iter().zip(&rm.dims).map(|(x, y)| x + y).collect(),
                maps,
            };
            *counts.entry(self.identify(&mid)?).or_insert(0) += 1;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < self.q as usize {
                    break;
                }
                *d = 0;
            }
        }
        let (dm, dn) = (self.dim_of(m), self.dim_of(n));
        let c0: i64 = (0..self.n()).map(|i| self.rd.f[i] * dm[i] * dn[i]).sum();
        let den = q.pow(c0 as u32) * self.aut_size(m) * self.aut_size(n);
        let mut out = Vec::with_capacity(counts.len());
        for (l, c) in counts {
            let num = c * self.aut_size(&l);
            if !num.is_multiple_of(den) {
                return Err(Error::Invariant(format!(
                    "extension count for {} is not integral",
                    self.render_class(&l)
                )));
            }
            out.push((l, (num / den) as u64));
        }
        Ok(out)
    }

    /// Nonzero `F^L_{M,N}` over all `L`, by extension counting when the
    /// gluing space is smaller than the subspace lattice of `M ⊕ N`, and
    /// by subrepresentation census otherwise.
    pub fn product_numbers(&self, m: &IsoClass, n: &IsoClass) -> Result<Arc<Vec<(IsoClass, u64)>>> {
        let key = (m.clone(), n.clone());
        if let Some(v) = self.products.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let d = add_vec(&self.dim_of(m), &self.dim_of(n));
        let lattice: u128 = (0..self.n())
            .map(|i| grassmannian_total((self.q as u128).pow(self.rd.f[i] as u32), d[i] as u32))
            .fold(1u128, |a, b| a.saturating_mul(b));
        let (rm, rn) = (self.rep_of(m), self.rep_of(n));
        let dim_z: usize = self
            .species
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| self.species.compatible_dim(a, rm.dims[s], rn.dims[t]))
            .sum();
        let ext_cost = (self.q as u128)
            .checked_pow(dim_z as u32)
            .unwrap_or(u128::MAX);
        let out = if ext_cost <= lattice && ext_cost <= EXTENSION_LIMIT {
            self.extension_numbers(m, n)?
        } else {
            let mut v = Vec::new();
            for l in self.classes_of_dim(&d).iter() {
                let f = self.hall_number(l, m, n)?;
                if f > 0 {
                    v.push((l.clone(), f));
                }
            }
            v
        };
        let arc = Arc::new(out);
        self.products.write().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// `F^L_{X₁,…,X_t}`: filtrations `0 = L_t ⊂ … ⊂ L_0 = L` with
    /// `L_{k-1}/L_k ≅ X_k`.
    pub fn filtration_number(&self, l: &IsoClass, parts: &[IsoClass]) -> Result<u64> {
        let parts: Vec<&IsoClass> = parts.iter().filter(|p| !p.is_zero()).collect();
        let total = parts
            .iter()
            .fold(vec![0; self.n()], |acc, p| add_vec(&acc, &self.dim_of(p)));
        if total != self.dim_of(l) {
            return Ok(0);
        }
        self.filtration_rec(l, &parts)
    }

    fn filtration_rec(&self, l: &IsoClass, parts: &[&IsoClass]) -> Result<u64> {
        match parts.len() {
            0 => return Ok(l.is_zero() as u64),
            1 => return Ok((l == parts[0]) as u64),
            _ => {}
        }
        let census = self.census(l)?;
        let mut total = 0u64;
        for ((quo, sub), count) in census.iter() {
            if quo == parts[0] {
                total += count * self.filtration_rec(sub, &parts[1..])?;
            }
        }
        Ok(total)
    }

    /// `F^L_{S_{i₁}^{a₁},…,S_{i_m}^{a_m}}` along a word.
    pub fn word_filtration_number(&self, l: &IsoClass, word: &[usize], a: &[u32]) -> Result<u64> {
        let parts: Vec<IsoClass> = word
            .iter()
            .zip(a)
            .map(|(&i, &k)| self.simple_class(i).scale(k))
            .collect();
        self.filtration_number(l, &parts)
    }

    pub fn render_class(&self, c: &IsoClass) -> String {
        if c.is_zero() {
            return "0".into();
        }
        // components listed in positive-root order
        let mut parts = Vec::new();
        for root in &self.rd.positive_roots {
            let k = self.indec_dims.iter().position(|d| d == root).unwrap();
            match c.0[k] {
                0 => {}
                1 => parts.push(self.names[k].clone()),
                m => parts.push(format!("{m}{}", self.names[k])),
            }
        }
        parts.join("+")
    }

    pub fn parse_class(&self, text: &str) -> Result<IsoClass> {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero_class());
        }
        let mut c = self.zero_class();
        for tok in text.split('+') {
            let tok = tok.trim();
            let split = tok
                .find(|ch: char| !ch.is_ascii_digit())
                .ok_or_else(|| Error::Parse(format!("bad class token {tok:?}")))?;
            let (num, name) = tok.split_at(split);
            let mult: u32 = if num.is_empty() {
                1
            } else {
                num.parse()
                    .map_err(|_| Error::Parse(format!("bad multiplicity in {tok:?}")))?
            };
            let k = self
                .names
                .iter()
                .position(|n| n.eq_ignore_ascii_case(name))
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown indecomposable {name:?}; known: {}",
                        self.names.join(", ")
                    ))
                })?;
            c.0[k] += mult;
        }
        Ok(c)
    }

    /// Naming table: `(name, dimension vector, projective, injective)`.
    pub fn class_table(&self) -> Vec<(String, Vec<i64>, bool, bool)> {
        (0..self.nu())
            .map(|k| {
                (
                    self.names[k].clone(),
                    self.indec_dims[k].clone(),
                    self.is_projective(k),
                    self.is_injective(k),
                )
            })
            .collect()
    }

    /// Every isoclass with total dimension at most `cap`, by dimension vector.
    pub fn classes_up_to(&self, cap: i64) -> BTreeMap<Vec<i64>, Arc<Vec<IsoClass>>> {
        let mut out = BTreeMap::new();
        let mut d = vec![0i64; self.n()];
        self.dims_rec(0, cap, &mut d, &mut out);
        out
    }

    fn dims_rec(
        &self,
        i: usize,
        left: i64,
        d: &mut Vec<i64>,
        out: &mut BTreeMap<Vec<i64>, Arc<Vec<IsoClass>>>,
    ) {
        if i == self.n() {
            let cls = self.classes_of_dim(d);
            if !cls.is_empty() {
                out.insert(d.clone(), cls);
            }
            return;
        }
        for k in 0..=left {
            d[i] = k;
            self.dims_rec(i + 1, left - k, d, out);
        }
        d[i] = 0;
    }
}

pub fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn indec_name(rd: &RootDatum, cox: &Coxeter, d: &[i64]) -> String {
    let digits = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<String>();
    if let Some(i) = (0..rd.n).find(|&i| unit(rd.n, i) == d) {
        return format!("S{}", i + 1);
    }
    if let Some(i) = cox.proj_dims.iter().position(|p| p == d) {
        return format!("P{}", i + 1);
    }
    if let Some(i) = cox.inj_dims.iter().position(|p| p == d) {
        return format!("I{}", i + 1);
    }
    format!("M{}", digits(d))
}

/// Random search for a rigid representation of dimension `d` with local
/// endomorphism ring. In finite type each positive root carries exactly one
/// indecomposable, and it is the generic (rigid) representation.
fn build_indecomposable(
    sp: &Species,
    rd: &RootDatum,
    d: &[i64],
    guards: Guards,
    rng: &mut ChaCha8Rng,
) -> Result<ConcreteRep> {
    let dims: Vec<usize> = d.iter().map(|&x| x as usize).collect();
    let bases: Vec<Vec<Mat>> = sp
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| sp.compatible_basis(a, dims[i], dims[j]))
        .collect();
    let target = rd.euler_form(d, d) as usize;
    for _ in 0..MAX_ATTEMPTS {
        let maps: Vec<Mat> = sp
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(i, j))| {
                let mut m = Mat::zeros(sp.kdim(j, dims[j]), sp.kdim(i, dims[i]));
                for b in &bases[a] {
                    let c = sp.base[rng.gen_range(0..sp.base.len())];
                    if c != 0 {
                        m = m.add(&b.scale(c, &sp.field), &sp.field);
                    }
                }
                m
            })
            .collect();
        let cand = ConcreteRep {
            dims: dims.clone(),
            maps,
        };
        if rep::hom_dim(sp, &cand, &cand) != target {
            continue;
        }
        if rep::has_local_endomorphism_ring(sp, &cand, guards.end_dim)? {
            return Ok(cand);
        }
    }
    Err(Error::Construction(format!(
        "no indecomposable of dimension {d:?} found after {MAX_ATTEMPTS} attempts"
    )))
}


#[cfg(test)]
mod preset_tests {
    use super::*;

    #[test]
    fn all_presets_build_with_ar_duality() {
        for name in crate::cartan::PRESET_NAMES {
            let rd = RootDatum::preset(name).unwrap();
            for q in [2u32, 3, 4] {
                let t = std::time::Instant::now();
                let c = RepCategory::new(&rd, q).unwrap();
                assert_eq!(c.nu(), rd.nu());
                for k in 0..c.nu() {
                    assert_eq!(c.indecs[k].dim_vector(), c.indec_dims[k]);
                    assert_eq!(
                        c.hom[k][k] as i64,
                        rd.euler_form(&c.indec_dims[k], &c.indec_dims[k])
                    );
                }
                eprintln!("{name} q={q}: {:?}", t.elapsed());
            }
        }
    }
}
