//! Root data of a finite-type valued quiver.
//!
//! Vertices are 0-based internally and 1-based in every external format
//! (JSON configs, rendered words).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk quiver description, e.g.
/// `{"n":2,"arrows":[[1,2]],"d":{"1,2":1,"2,1":1},"f":[1,1]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverSpec {
    pub n: usize,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
    #[serde(default)]
    pub d: BTreeMap<String, u32>,
    pub f: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl QuiverSpec {
    pub fn from_json_str(text: &str) -> Result<Self> {
        // serde_json messages carry the line and column
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub const PRESET_NAMES: [&str; 6] = ["a1", "a2", "a3", "b2", "g2", "d4"];

pub fn preset_json(name: &str) -> Option<&'static str> {
    Some(match name.to_ascii_lowercase().as_str() {
        "a1" => include_str!("../../../presets/a1.json"),
        "a2" => include_str!("../../../presets/a2.json"),
        "a3" => include_str!("../../../presets/a3.json"),
        "b2" => include_str!("../../../presets/b2.json"),
        "g2" => include_str!("../../../presets/g2.json"),
        "d4" => include_str!("../../../presets/d4.json"),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub n: usize,
    /// Arrows `(i, j)` with `i < j`, 0-based.
    pub arrows: Vec<(usize, usize)>,
    pub d: Vec<Vec<i64>>,
    pub f: Vec<i64>,
    pub cartan: Vec<Vec<i64>>,
    pub euler: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub name: Option<String>,
}

/// Outcome of evaluating a word in the Weyl group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordReport {
    /// Column `j` is the image of `α_j`.
    pub action: Vec<Vec<i64>>,
    pub reduced: bool,
    pub longest: bool,
}

impl RootDatum {
    pub fn preset(name: &str) -> Result<Self> {
        let text = preset_json(name)
            .ok_or_else(|| Error::InvalidQuiver(format!("unknown preset {name:?}")))?;
        Self::from_spec(&QuiverSpec::from_json_str(text)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_spec(&QuiverSpec::from_json_str(text)?)
    }

    pub fn from_spec(spec: &QuiverSpec) -> Result<Self> {
        let n = spec.n;
        let bad = |msg: String| Error::InvalidQuiver(msg);
        if n == 0 {
            return Err(bad("quiver needs at least one vertex".into()));
        }
        if spec.f.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: spec.f.len(),
            });
        }
        if spec.f.contains(&0) {
            return Err(bad("symmetrizer entries must be positive".into()));
        }
        let f: Vec<i64> = spec.f.iter().map(|&x| x as i64).collect();

        let mut arrows = Vec::new();
        let mut adjacent = BTreeSet::new();
        for &[a, b] in &spec.arrows {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(bad(format!("arrow {a}->{b} has a vertex outside 1..{n}")));
            }
            if a >= b {
                return Err(bad(format!(
                    "arrow {a}->{b} violates the vertex order (every arrow i->j needs i < j)"
                )));
            }
            if !adjacent.insert((a - 1, b - 1)) {
                return Err(bad(format!(
                    "duplicate arrow {a}->{b}; encode multiplicity in d instead"
                )));
            }
            arrows.push((a - 1, b - 1));
        }

        let mut d = vec![vec![0i64; n]; n];
        for (key, &val) in &spec.d {
            let (i, j) = parse_pair(key)?;
            if i == 0 || j == 0 || i > n || j > n {
                return Err(bad(format!("valuation key {key:?} out of range")));
            }
            if i == j {
                return Err(bad(format!("valuation d_{i}{i} must be absent")));
            }
            let (lo, hi) = ((i - 1).min(j - 1), (i - 1).max(j - 1));
            if val != 0 && !adjacent.contains(&(lo, hi)) {
                return Err(bad(format!(
                    "valuation {key:?} given for non-adjacent vertices"
                )));
            }
            d[i - 1][j - 1] = val as i64;
        }
        for &(i, j) in &arrows {
            // missing valuations default to the simply-laced value
            if d[i][j] == 0 && d[j][i] == 0 {
                d[i][j] = 1;
                d[j][i] = 1;
            }
            if d[i][j] == 0 || d[j][i] == 0 {
                return Err(bad(format!(
                    "arrow {}->{} needs both d values positive",
                    i + 1,
                    j + 1
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if f[i] * d[i][j] != f[j] * d[j][i] {
                    return Err(bad(format!(
                        "not symmetrizable: f_{a} d_{a}{b} = {} but f_{b} d_{b}{a} = {}",
                        f[i] * d[i][j],
                        f[j] * d[j][i],
                        a = i + 1,
                        b = j + 1
                    )));
                }
            }
        }

        let mut cartan = vec![vec![0i64; n]; n];
        let mut euler = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            euler[i][i] = f[i];
            for j in 0..n {
                if i != j {
                    cartan[i][j] = -d[i][j];
                }
            }
        }
        for &(i, j) in &arrows {
            euler[i][j] = -f[i] * d[i][j];
        }

        let sym: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| f[i] * cartan[i][j]).collect())
            .collect();
        if !positive_definite(&sym) {
            return Err(bad(
                "symmetrized form is not positive definite (not of finite type)".into(),
            ));
        }

        let mut rd = RootDatum {
            n,
            arrows,
            d,
            f,
            cartan,
            euler,
            positive_roots: Vec::new(),
            name: spec.name.clone(),
        };
        rd.positive_roots = rd.close_roots();
        Ok(rd)
    }

    fn close_roots(&self) -> Vec<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..self.n {
            let e = unit(self.n, i);
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..self.n {
                let img = self.reflect(i, &beta);
                if img.iter().all(|&x| x >= 0) && seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut roots: Vec<_> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        roots
    }

    pub fn nu(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            })
        }
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(i + 1))
        }
    }

    /// Unchecked `αᵀ E β`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += a[i] * self.euler[i][j] * b[j];
            }
        }
        s
    }

    pub fn sym_form(&self, a: &[i64], b: &[i64]) -> i64 {
        self.euler_form(a, b) + self.euler_form(b, a)
    }

    /// `(⟨α,β⟩, (α,β))` with length validation.
    pub fn bilinear_forms(&self, a: &[i64], b: &[i64]) -> Result<(i64, i64)> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok((self.euler_form(a, b), self.sym_form(a, b)))
    }

    /// `(α_i, α_j)` on simple roots.
    pub fn sym_simple(&self, i: usize, j: usize) -> i64 {
        self.f[i] * self.cartan[i][j]
    }

    pub fn euler_simple(&self, i: usize, j: usize) -> i64 {
        self.euler[i][j]
    }

    /// Simple reflection `r_i(β) = β − (Σ_j c_ij β_j) α_i`.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let coeff: i64 = (0..self.n).map(|j| self.cartan[i][j] * beta[j]).sum();
        let mut out = beta.to_vec();
        out[i] -= coeff;
        out
    }

    /// Image of `β` under `r_{i₁} ∘ … ∘ r_{i_m}` (the rightmost letter acts first).
    pub fn apply_word(&self, word: &[usize], beta: &[i64]) -> Vec<i64> {
        word.iter()
            .rev()
            .fold(beta.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn weyl_word_ops(&self, word: &[usize]) -> Result<WordReport> {
        for &i in word {
            self.check_vertex(i)?;
        }
        let images: Vec<Vec<i64>> = (0..self.n)
            .map(|j| self.apply_word(word, &unit(self.n, j)))
            .collect();
        let mut action = vec![vec![0; self.n]; self.n];
        for (j, img) in images.iter().enumerate() {
            for i in 0..self.n {
                action[i][j] = img[i];
            }
        }
        let inversions = self
            .positive_roots
            .iter()
            .filter(|beta| self.apply_word(word, beta).iter().any(|&x| x < 0))
            .count();
        let reduced = inversions == word.len();
        let negatives: BTreeSet<Vec<i64>> = images
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        let simples: BTreeSet<Vec<i64>> = (0..self.n).map(|j| unit(self.n, j)).collect();
        let longest = reduced && negatives == simples && word.len() == self.nu();
        Ok(WordReport {
            action,
            reduced,
            longest,
        })
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == v)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        let mut d = BTreeMap::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.d[i][j] != 0 {
                    d.insert(format!("{},{}", i + 1, j + 1), self.d[i][j] as u32);
                }
            }
        }
        QuiverSpec {
            n: self.n,
            arrows: self.arrows.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            d,
            f: self.f.iter().map(|&x| x as u32).collect(),
            name: self.name.clone(),
        }
    }
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("valuation key {key:?} is not of the form \"i,j\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Sylvester's criterion with fraction-free (Bareiss) elimination.
fn positive_definite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        // a[k][k] is now the k-th leading principal minor
        if a[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    true
}

/// Parse a 1-based comma separated word such as `"1,2,1"`.
pub fn parse_word(text: &str, n: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let k: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad word letter {tok:?}")))?;
            if k == 0 || k > n {
                Err(Error::VertexOutOfRange(k))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

pub fn render_word(word: &[usize]) -> String {
    word.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_root_counts() {
        let expected = [
            ("a1", 1),
            ("a2", 3),
            ("a3", 6),
            ("b2", 4),
            ("g2", 6),
            ("d4", 12),
        ];
        for (name, nu) in expected {
            assert_eq!(RootDatum::preset(name).unwrap().nu(), nu, "{name}");
        }
    }

    #[test]
    fn a2_roots_and_forms() {
        let rd = RootDatum::preset("a2").unwrap();
        assert_eq!(rd.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rd.bilinear_forms(&[1, 0], &[0, 1]).unwrap(), (-1, -1));
        assert_eq!(rd.euler_form(&[0, 1], &[1, 0]), 0);
        assert_eq!(rd.euler_form(&[1, 1], &[1, 0]), 1);
        assert!(matches!(
            rd.bilinear_forms(&[1], &[0, 1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn b2_roots() {
        let rd = RootDatum::preset("b2").unwrap();
        assert_eq!(
            rd.positive_roots,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]
        );
        for i in 0..rd.n {
            assert_eq!(rd.euler_form(&unit(2, i), &unit(2, i)), rd.f[i]);
        }
    }

    #[test]
    fn word_predicates() {
        let rd = RootDatum::preset("a2").unwrap();
        let r = rd.weyl_word_ops(&[0, 1, 0]).unwrap();
        assert!(r.reduced && r.longest);
        assert!(!rd.weyl_word_ops(&[0, 0]).unwrap().reduced);
        let e = rd.weyl_word_ops(&[]).unwrap();
        assert!(e.reduced && !e.longest);
        assert_eq!(rd.weyl_word_ops(&[2]), Err(Error::VertexOutOfRange(3)));
    }

    #[test]
    fn rejects_invalid_quivers() {
        let kronecker = r#"{"n":2,"arrows":[[1,2]],"d":{"1,2":2,"2,1":2},"f":[1,1]}"#;
        assert!(matches!(
            RootDatum::from_json_str(kronecker),
            Err(Error::InvalidQuiver(_))
        ));
        let backwards = r#"{"n":2,"arrows":[[2,1]],"f":[1,1]}"#;
        assert!(RootDatum::from_json_str(backwards).is_err());
        let unsym = r#"{"n":2,"arrows":[[1,2]],"d":{"1,2":1,"2,1":2},"f":[1,1]}"#;
        assert!(RootDatum::from_json_str(unsym).is_err());
        assert!(matches!(
            RootDatum::from_json_str("{not json"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn reflections_permute_other_roots() {
        for name in PRESET_NAMES {
            let rd = RootDatum::preset(name).unwrap();
            for i in 0..rd.n {
                let ai = unit(rd.n, i);
                let neg: Vec<i64> = ai.iter().map(|x| -x).collect();
                assert_eq!(rd.reflect(i, &ai), neg);
                let others: BTreeSet<_> = rd
                    .positive_roots
                    .iter()
                    .filter(|r| **r != ai)
                    .cloned()
                    .collect();
                let imgs: BTreeSet<_> = others.iter().map(|r| rd.reflect(i, r)).collect();
                assert_eq!(others, imgs, "{name} r_{i}");
            }
        }
    }

    #[test]
    fn spec_roundtrip() {
        for name in PRESET_NAMES {
            let rd = RootDatum::preset(name).unwrap();
            assert_eq!(RootDatum::from_spec(&rd.to_spec()).unwrap(), rd);
        }
    }
}
