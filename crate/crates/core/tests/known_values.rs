use feigin_core::cartan::RootDatum;
use feigin_core::hall::Hall;
use feigin_core::repfq::RepCategory;

fn gl_size(n: u32, s: u128) -> u128 {
    (0..n).map(|k| s.pow(n) - s.pow(k)).product()
}

#[test]
fn positive_root_counts() {
    for (name, nu) in [
        ("a1", 1),
        ("a2", 3),
        ("a3", 6),
        ("b2", 4),
        ("g2", 6),
        ("d4", 12),
    ] {
        let rd = RootDatum::preset(name).unwrap();
        assert_eq!(rd.nu(), nu, "{name}");
        let cat = RepCategory::new(&rd, 2).unwrap();
        assert_eq!(cat.nu(), nu, "{name}");
    }
}

#[test]
fn semisimple_automorphisms_are_general_linear_groups() {
    for name in ["a2", "b2", "g2"] {
        let rd = RootDatum::preset(name).unwrap();
        for q in [2u32, 3] {
            let cat = RepCategory::new(&rd, q).unwrap();
            for i in 0..rd.n {
                let s = (q as u128).pow(rd.f[i] as u32);
                for k in 1..=2 {
                    let c = cat.simple_class(i).scale(k);
                    assert_eq!(
                        cat.aut_size(&c),
                        gl_size(k, s),
                        "{name} q={q} S{}^{k}",
                        i + 1
                    );
                }
            }
        }
    }
}

#[test]
fn split_square_of_a_simple_counts_lines() {
    // Subrepresentations of S_i ⊕ S_i isomorphic to S_i are the lines of a
    // plane over the vertex field.
    for name in ["a2", "b2", "g2"] {
        let rd = RootDatum::preset(name).unwrap();
        let cat = RepCategory::new(&rd, 2).unwrap();
        for i in 0..rd.n {
            let s = cat.simple_class(i);
            let lines = 2u64.pow(rd.f[i] as u32) + 1;
            assert_eq!(
                cat.hall_number(&s.scale(2), &s, &s).unwrap(),
                lines,
                "{name} S{}",
                i + 1
            );
        }
    }
}

#[test]
fn product_of_two_simples_in_a2() {
    let rd = RootDatum::preset("a2").unwrap();
    let cat = RepCategory::new(&rd, 2).unwrap();
    let hall = Hall::new(&cat);
    let (s1, s2) = (cat.simple_class(0), cat.simple_class(1));
    let p = hall.mul_basis(&s1, &s2).unwrap();
    assert_eq!(hall.render(&p), "v^-1 [P1] + v^-1 [S1+S2]");
    let r = hall.mul_basis(&s2, &s1).unwrap();
    assert_eq!(hall.render(&r), "[S1+S2]");
}
