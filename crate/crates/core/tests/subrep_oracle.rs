//! Counts subrepresentations by brute force: every subspace is found as a
//! set of vectors closed under addition and vertex-field scalars, with no
//! echelon forms involved. The totals per dimension vector must agree with
//! the library census.

use std::collections::{BTreeSet, HashMap};

use feigin_core::cartan::RootDatum;
use feigin_core::repfq::field::Elem;
use feigin_core::repfq::matrix::Mat;
use feigin_core::repfq::species::Species;
use feigin_core::repfq::{IsoClass, RepCategory};

type Vector = Vec<Elem>;
type Space = BTreeSet<Vector>;

fn all_vectors(base: &[Elem], len: usize) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                base.iter().map(move |&c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Multiplication by `c ∈ F_i` on `F_i^m` written in `K`-coordinates.
fn scalar_action(sp: &Species, i: usize, m: usize, c: Elem) -> Mat {
    let block = sp.vertices[i].mult_matrix(c, &sp.field);
    let blocks: Vec<&Mat> = (0..m).map(|_| &block).collect();
    Mat::block_diag(&blocks)
}

fn add(sp: &Species, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| sp.field.add(x, y)).collect()
}

/// All `F_i`-subspaces of `F_i^m`.
fn subspaces(sp: &Species, i: usize, m: usize) -> Vec<Space> {
    let len = sp.f(i) * m;
    let vectors = all_vectors(&sp.base, len);
    let actions: Vec<Mat> = sp.vertices[i]
        .elements
        .iter()
        .map(|&c| scalar_action(sp, i, m, c))
        .collect();
    let zero: Space = [vec![0; len]].into_iter().collect();
    let mut seen: BTreeSet<Space> = [zero.clone()].into_iter().collect();
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let line: Vec<Vector> = actions.iter().map(|a| a.mul_vec(v, &sp.field)).collect();
            let grown: Space = s
                .iter()
                .flat_map(|x| line.iter().map(move |y| add(sp, x, y)))
                .collect();
            if seen.insert(grown.clone()) {
                frontier.push(grown);
            }
        }
    }
    seen.into_iter().collect()
}

fn brute_counts(cat: &RepCategory, l: &IsoClass) -> HashMap<Vec<i64>, u64> {
    let sp = &cat.species;
    let rep = cat.rep_of(l);
    let n = sp.n();
    let per_vertex: Vec<Vec<Space>> = (0..n).map(|i| subspaces(sp, i, rep.dims[i])).collect();
    let mut counts = HashMap::new();
    let mut choice = vec![0usize; n];
    loop {
        let stable = sp.arrows.iter().enumerate().all(|(a, &(s, t))| {
            per_vertex[s][choice[s]]
                .iter()
                .all(|u| per_vertex[t][choice[t]].contains(&rep.maps[a].mul_vec(u, &sp.field)))
        });
        if stable {
            let dims: Vec<i64> = (0..n)
                .map(|i| {
                    let size = per_vertex[i][choice[i]].len() as f64;
                    let kdim = size.log(sp.q as f64).round() as i64;
                    kdim / sp.f(i) as i64
                })
                .collect();
            *counts.entry(dims).or_insert(0) += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return counts;
            }
            choice[k] += 1;
            if choice[k] < per_vertex[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn census_counts(cat: &RepCategory, l: &IsoClass) -> HashMap<Vec<i64>, u64> {
    let mut counts = HashMap::new();
    for ((_, sub), &c) in cat.census(l).unwrap().iter() {
        *counts.entry(cat.dim_of(sub)).or_insert(0) += c;
    }
    counts
}

fn compare(name: &str, q: u32, max_kdim: usize) {
    let rd = RootDatum::preset(name).unwrap();
    let cat = RepCategory::new(&rd, q).unwrap();
    let mut tested = 0;
    for classes in cat.classes_up_to(4).values() {
        for l in classes.iter() {
            if cat.kdim_of(l) > max_kdim {
                continue;
            }
            assert_eq!(
                brute_counts(&cat, l),
                census_counts(&cat, l),
                "{name} q={q} class {}",
                cat.render_class(l)
            );
            tested += 1;
        }
    }
    assert!(tested > 0);
}

#[test]
fn a2_counts_agree() {
    compare("a2", 2, 4);
    compare("a2", 3, 4);
}

#[test]
fn a3_counts_agree() {
    compare("a3", 2, 4);
    compare("a3", 3, 3);
}

#[test]
fn b2_counts_agree() {
    compare("b2", 2, 4);
}

#[test]
fn semisimple_counts_are_grassmannian_products() {
    // Subrepresentations of S1^a ⊕ S2^b for A2 are pairs of subspaces.
    let rd = RootDatum::preset("a2").unwrap();
    let cat = RepCategory::new(&rd, 3).unwrap();
    let l = cat.simple_class(0).scale(2).add(&cat.simple_class(1));
    let counts = census_counts(&cat, &l);
    let gr2 = [1u64, 4, 1];
    let gr1 = [1u64, 1];
    for (i, g) in gr2.iter().enumerate() {
        for (j, h) in gr1.iter().enumerate() {
            assert_eq!(counts[&vec![i as i64, j as i64]], g * h);
        }
    }
}
