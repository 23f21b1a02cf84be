use std::collections::{BTreeSet, VecDeque};

use f2curves::curves::*;
use f2curves::gf::{GfField, TruncSeries};
use f2curves::rayclass::local::{compose, poly_at};
use f2curves::rayclass::*;
use proptest::prelude::*;

fn f(m: &ArtinSchreierModel, s: &str) -> RatFunc {
    parse_function(m, s).unwrap()
}

fn pl(m: &ArtinSchreierModel, s: &str) -> Place {
    parse_place(m, s).unwrap()
}

fn series_bits(s: &TruncSeries) -> Vec<u32> {
    s.coeffs().to_vec()
}

fn expand(m: &ArtinSchreierModel, func: &str, at: &str, t: Option<&str>, prec: usize) -> Vec<u32> {
    let p = pl(m, at);
    let t = t.map(|t| f(m, t));
    let ls = local_expand(m, &f(m, func), &p.rep, t.as_ref(), prec).unwrap();
    series_bits(&ls.to_series(prec).unwrap())
}

#[test]
fn local_expansion_fixtures() {
    let c5 = c5_model();
    assert_eq!(expand(&c5, "y", "P(0,0)", Some("x"), 6), vec![0, 0, 0, 1, 0, 1]);
    assert_eq!(expand(&c5, "1/x", "P(inf)", Some("y/x^3"), 4), vec![0, 0, 1, 0]);
    assert_eq!(expand(&c5, "1/y", "P(inf)", Some("y/x^3"), 6), vec![0, 0, 0, 0, 0, 1]);
    let e = e_model();
    assert_eq!(
        expand(&e, "y", "P(1,0)", Some("x+1"), 7),
        vec![0, 0, 1, 1, 1, 0, 1]
    );
    assert_eq!(expand(&e, "y", "P(0,0)", Some("x"), 7), vec![0, 1, 1, 1, 1, 0, 1]);
    assert_eq!(expand(&e, "y", "P(0,1)", Some("x"), 7), vec![1, 1, 1, 1, 1, 0, 1]);
    // the default uniformizer at P(1,0) is x+1
    assert_eq!(expand(&e, "y", "P(1,0)", None, 7), vec![0, 0, 1, 1, 1, 0, 1]);
}

/// The expansions satisfy the curve equation: y(t)^2 + a(x(t)) y(t) + f(x(t)) = 0.
#[test]
fn expansions_satisfy_the_equation() {
    let e = e_model();
    for d in 1..=6 {
        for p in places_of_degree(&e, d).unwrap() {
            if p.is_at_infinity() {
                continue;
            }
            let prec = 12;
            let x = local_expand(&e, &f(&e, "x"), &p.rep, None, prec).unwrap().to_series(prec).unwrap();
            let y = local_expand(&e, &f(&e, "y"), &p.rep, None, prec).unwrap().to_series(prec).unwrap();
            let lhs = y
                .square()
                .add(&poly_at(e.a, &x).mul(&y).unwrap())
                .unwrap()
                .add(&poly_at(e.f, &x))
                .unwrap();
            assert!(lhs.valuation().is_none(), "{p:?}");
        }
    }
}

#[test]
fn uniformizer_errors() {
    let e = e_model();
    let p = pl(&e, "P(0,0)");
    assert!(matches!(
        local_expand(&e, &f(&e, "y"), &p.rep, Some(&f(&e, "x^2")), 4),
        Err(f2curves::Error::BadUniformizer(2))
    ));
    let ls = local_expand(&e, &f(&e, "1/x"), &p.rep, None, 4).unwrap();
    assert_eq!(ls.val, -1);
    assert!(matches!(ls.to_series(4), Err(f2curves::Error::Pole(1))));
    // series composition agrees with direct evaluation of a polynomial
    let fld = GfField::get(4).unwrap();
    let s = TruncSeries::new(&fld, vec![0, 3, 5, 1], 6).unwrap();
    let g = TruncSeries::new(&fld, vec![1, 1, 0, 1, 1], 6).unwrap();
    assert_eq!(compose(&g, &s), poly_at(F2Poly(0b11011), &s));
}

#[test]
fn unit_group_fixtures() {
    let g = unit_group_structure(1, 4).unwrap();
    assert_eq!(g.orders, vec![4, 2]);
    assert_eq!(g.describe(), "Z_4 x Z_2");
    assert_eq!(g.generator_label(0, "t"), "1+t");
    assert_eq!(g.generator_label(1, "t"), "1+t^3");
    let g6 = unit_group_structure(6, 2).unwrap();
    assert_eq!(g6.orders, vec![63, 2, 2, 2, 2, 2, 2]);
    assert_eq!(unit_group_structure(1, 2).unwrap().orders, vec![2]);
    let f2 = GfField::get(1).unwrap();
    let one_plus = |c: &[u32]| TruncSeries::new(&f2, c.to_vec(), 4).unwrap();
    assert_eq!(g.discrete_log(&one_plus(&[1, 1])).unwrap(), vec![1, 0]);
    assert_eq!(g.discrete_log(&one_plus(&[1, 0, 1])).unwrap(), vec![2, 0]);
    assert!(g.discrete_log(&one_plus(&[0, 1])).is_err());
}

fn all_units(d: u32, m: usize) -> Vec<TruncSeries> {
    let fld = GfField::get(d).unwrap();
    let q = fld.size() as u64;
    let total = (q - 1) * q.pow(m as u32 - 1);
    (0..total)
        .map(|mut k| {
            let mut c = vec![(k % (q - 1)) as u32 + 1];
            k /= q - 1;
            for _ in 1..m {
                c.push((k % q) as u32);
                k /= q;
            }
            TruncSeries::new(&fld, c, m).unwrap()
        })
        .collect()
}

fn element_order(u: &TruncSeries) -> u64 {
    let mut x = u.clone();
    let mut n = 1;
    while !x.is_one() {
        x = x.mul(u).unwrap();
        n += 1;
    }
    n
}

#[test]
fn unit_groups_match_exhaustive_enumeration() {
    for d in 1..=10u32 {
        for m in 1..=(10 / d as usize) {
            let g = unit_group_structure(d, m).unwrap();
            let units = all_units(d, m);
            assert_eq!(units.len() as u128, g.order(), "d={d} m={m}");
            let exp = units.iter().map(element_order).fold(1, num_integer::lcm);
            assert_eq!(exp, g.exponent(), "d={d} m={m}");
            if d * m as u32 <= 8 {
                for u in &units {
                    assert_eq!(&g.reconstruct(&g.discrete_log(u).unwrap()), u);
                }
            }
        }
    }
}

#[test]
fn discrete_log_round_trip_small_d1() {
    for m in 1..=6 {
        let g = unit_group_structure(1, m).unwrap();
        for u in all_units(1, m) {
            assert_eq!(g.reconstruct(&g.discrete_log(&u).unwrap()), u);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn discrete_log_round_trip_d6(c0 in 1u32..64, c1 in 0u32..64) {
        let fld = GfField::get(6).unwrap();
        let g = unit_group_structure(6, 2).unwrap();
        let u = TruncSeries::new(&fld, vec![c0, c1], 2).unwrap();
        let e = g.discrete_log(&u).unwrap();
        prop_assert_eq!(g.reconstruct(&e), u);
    }
}

/// Size of the subgroup generated by `gens` in `prod Z_{orders}`, by closure.
fn subgroup_size(orders: &[u64], gens: &[Vec<i64>]) -> u128 {
    let norm = |v: &[i64]| -> Vec<i64> {
        v.iter()
            .zip(orders)
            .map(|(&x, &o)| x.rem_euclid(o as i64))
            .collect()
    };
    let zero = vec![0i64; orders.len()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = norm(&x.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>());
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len() as u128
}

fn check_lagrange(r: &RayClassResult) {
    let orders: Vec<u64> = r.groups.iter().flat_map(|g| g.orders.clone()).collect();
    let rows: Vec<Vec<i64>> = r.images.iter().map(UnitImage::exponents).collect();
    assert_eq!(
        r.quotient.order() * subgroup_size(&orders, &rows),
        r.ambient_order()
    );
}

fn units(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn genus_two_ray_class_at_infinity_and_origin() {
    let c5 = c5_model();
    let spec = ConductorSpec::parse(&c5, "4*P(inf)", "P(0,0), P(0,1), P(1,0), P(1,1)").unwrap();
    let r = RayClassResult::compute(
        &c5,
        spec,
        &units(&[
            ("v1", "(y+x^3)/x^3"),
            ("v2", "(y+1)/y"),
            ("v3", "(x+1)/x"),
        ]),
    )
    .unwrap();
    let imgs: Vec<String> = r.images.iter().map(|i| r.format_image(&i.per_place)).collect();
    assert_eq!(imgs, vec!["(1+t)", "1", "(1+t)^2"]);
    assert_eq!(r.quotient.invariants, vec![2]);
    check_lagrange(&r);

    let spec = ConductorSpec::parse(&c5, "4*P(0,0)", "P(0,1), P(1,0), P(1,1), P(inf)").unwrap();
    let r = RayClassResult::compute(&c5, spec, &units(&[("w1", "x+1"), ("w2", "y+1")])).unwrap();
    let imgs: Vec<String> = r.images.iter().map(|i| r.format_image(&i.per_place)).collect();
    assert_eq!(imgs, vec!["(1+t)", "(1+t^3)"]);
    assert!(r.quotient.is_trivial());
    check_lagrange(&r);
}

fn degree_four_sunits() -> Vec<(String, String)> {
    units(&[
        ("u1", "x^4+x^3+x^2+x+1"),
        ("u2", "x^4+x^3+1"),
        ("u3", "x^2+x+1"),
        ("u4", "(y+x^3)(y+x^3+x^2)^2/(y(y+x)(x^2+x+1)^3)"),
        ("u5", "(y+x^3)^2(y+x^3+x^2+1)/((y+1)(y+x)(x^2+x+1)^3)"),
    ])
}

fn degree_four(e: &ArtinSchreierModel) -> Vec<Place> {
    [
        "P(a^3, a^3+a)",
        "P(a^3, a^3+a+1)",
        "P(a^3+1, a)",
        "P(a^3+1, a+1)",
        "P(a^2+a+1, a)",
    ]
    .iter()
    .map(|s| pl(e, s))
    .collect()
}

#[test]
fn unit_images_at_three_rational_points() {
    let e = e_model();
    let q = degree_four(&e);
    let split: Vec<String> = q.iter().map(|p| p.to_string()).chain(["P(inf)".into()]).collect();
    let split = split.join(", ");
    let table = [
        (
            "4*P(0,0) + 2*P(0,1) + 2*P(1,0)",
            ["(1+t1)^3(1+t2)", "(1+t1^3)(1+t3)", "(1+t1)^2(1+t1^3)(1+t2)", "(1+t3)"],
            1u128,
        ),
        (
            "2*P(0,0) + 4*P(0,1) + 2*P(1,0)",
            ["(1+t1)(1+t2)^3", "(1+t2^3)(1+t3)", "(1+t2)^3(1+t2^3)", "(1+t2^3)(1+t3)"],
            2,
        ),
        (
            "2*P(0,0) + 2*P(0,1) + 4*P(1,0)",
            ["(1+t1)(1+t2)(1+t3^3)", "(1+t3)^3", "(1+t2)", "(1+t3)^3(1+t3^3)"],
            1,
        ),
    ];
    for (cond, rows, order) in table {
        let spec = ConductorSpec::parse(&e, cond, &split).unwrap();
        let r = RayClassResult::compute(&e, spec, &degree_four_sunits()).unwrap();
        let got: Vec<String> = r
            .images
            .iter()
            .filter(|i| i.name != "u3")
            .map(|i| r.format_image(&i.per_place))
            .collect();
        assert_eq!(got, rows, "{cond}");
        assert_eq!(r.quotient.order(), order, "{cond}");
        check_lagrange(&r);
        if order == 2 {
            let u3 = r.images.iter().find(|i| i.name == "u3").unwrap();
            assert_eq!(r.format_image(&u3.per_place), "(1+t1)(1+t2)^3(1+t2^3)(1+t3)");
        }
    }
}

#[test]
fn sunit_divisors_are_supported_on_the_split_set() {
    let e = e_model();
    let q = degree_four(&e);
    let p0 = pl(&e, "P(inf)");
    let expect = [
        vec![(q[0].clone(), 1), (q[1].clone(), 1), (p0.clone(), -8)],
        vec![(q[2].clone(), 1), (q[3].clone(), 1), (p0.clone(), -8)],
        vec![(q[4].clone(), 1), (p0.clone(), -4)],
        vec![(q[0].clone(), 1), (q[2].clone(), 2), (q[4].clone(), -3)],
        vec![(q[3].clone(), 1), (q[0].clone(), 2), (q[4].clone(), -3)],
    ];
    for ((_, u), want) in degree_four_sunits().iter().zip(expect) {
        let d = divisor_of(&e, &f(&e, u)).unwrap();
        assert_eq!(d, Divisor::from_terms(want), "{u}");
        assert_eq!(d.degree(), 0);
    }
}

fn degree_six_conductor_result(e: &ArtinSchreierModel) -> RayClassResult {
    let spec = ConductorSpec::parse(
        e,
        "2*P(c, c^4+c^3+c^2+1)",
        "P(inf), P(0,0), P(0,1), P(1,0), P(1,1)",
    )
    .unwrap();
    assert_eq!(spec.terms[0].uniformizer, f(e, "x^6+x^5+1"));
    RayClassResult::compute(
        e,
        spec,
        &units(&[("x", "x"), ("x+1", "x+1"), ("y", "y"), ("y+x", "y+x")]),
    )
    .unwrap()
}

#[test]
fn degree_six_conductor() {
    let e = e_model();
    let r = degree_six_conductor_result(&e);
    assert_eq!(r.quotient.invariants, vec![2, 2]);
    check_lagrange(&r);
    for (u, g) in [
        ("x", "x+1"),
        ("x+1", "x"),
        ("y", "x^5+x^2"),
        ("y+x", "x^5+x^4+x^3+x^2"),
    ] {
        let uf = f(&e, u);
        let got = r.normalized_coeff(&e, 0, &uf, 1).unwrap();
        assert_eq!(got, parse_f2poly(g).unwrap(), "{u}");
        // u^63 directly
        let s = unit_at(&e, &r.spec, 0, &uf).unwrap().pow(63).unwrap();
        assert_eq!(s.coeff(0), 1);
        let fld = s.field().clone();
        assert_eq!(residue_poly(&fld, r.spec.terms[0].place.rep.x, s.coeff(1)).unwrap(), got);
    }
}

#[test]
fn splitting_tables_for_degree_four_and_five() {
    let e = e_model();
    let r = degree_six_conductor_result(&e);
    let selectors: Vec<Vec<i64>> = ["x^3", "x^2", "x^3+x^2"]
        .iter()
        .map(|c| r.one_unit(0, parse_f2poly(c).unwrap(), 1).unwrap())
        .collect();
    let rational = places_of_degree(&e, 1).unwrap();
    let four = [
        ("P(a^3, a^3+a)", "y+x^3", "x^5+x", 2),
        ("P(a^3, a^3+a+1)", "y+x^3+1", "x^4", 1),
        ("P(a^3+1, a)", "y+x^3+x^2", "x^5+x^3+x", 3),
        ("P(a^3+1, a+1)", "y+x^3+x^2+1", "x^4+x^2", 3),
        ("P(a^2+a+1, a)", "x^2+x+1", "x^5+x^3+x^2", 1),
    ];
    let five = [
        ("P(b, b^4)", "y+x^4", "x^3+x+1", 1),
        ("P(b, b^4+1)", "y+x^4+1", "x^5+x^4+x", 3),
        ("P(b+1, b^4+b)", "y+x^4+x", "x^4+x^3+x^2+1", 2),
        ("P(b+1, b^4+b+1)", "y+x^4+x+1", "x^5+x^4+x^3+1", 2),
    ];
    let mut split_counts = [[0i64; 3]; 2];
    for (row, table) in [four.as_slice(), five.as_slice()].iter().enumerate() {
        for &(p, u, g, h) in table.iter() {
            let place = pl(&e, p);
            let w = witness_search(&e, &place, &rational, 4).unwrap().unwrap();
            assert_eq!(w, f(&e, u), "witness at {p}");
            assert_eq!(r.normalized_coeff(&e, 0, &w, 1).unwrap(), parse_f2poly(g).unwrap());
            let verdicts: Vec<bool> = selectors
                .iter()
                .map(|s| r.artin_split_verdict(&e, std::slice::from_ref(s), &place, &w).unwrap().splits)
                .collect();
            let expected: Vec<bool> = (1..=3).map(|i| i == h).collect();
            assert_eq!(verdicts, expected, "{p}");
            for (i, &v) in verdicts.iter().enumerate() {
                split_counts[row][i] += i64::from(v);
            }
        }
    }
    // split places double; E has no places of degree 2 to become inert ones
    let a4: Vec<i64> = split_counts[0].iter().map(|c| 2 * c).collect();
    let a5: Vec<i64> = split_counts[1].iter().map(|c| 2 * c).collect();
    assert_eq!((a4[0], a4[1]), (4, 2));
    assert_eq!((a5[0], a5[1]), (2, 4));
}

#[test]
fn witness_search_fixtures() {
    let e = e_model();
    let p0 = vec![pl(&e, "P(inf)")];
    let q5 = pl(&e, "P(a^2+a+1, a)");
    assert_eq!(witness_search(&e, &q5, &p0, 3).unwrap(), Some(f(&e, "x^2+x+1")));
    let rational = places_of_degree(&e, 1).unwrap();
    let q1 = pl(&e, "P(a^3, a^3+a)");
    assert_eq!(witness_search(&e, &q1, &rational, 3).unwrap(), Some(f(&e, "y+x^3")));
    let r1 = pl(&e, "P(b, b^4)");
    assert_eq!(witness_search(&e, &r1, &rational, 4).unwrap(), Some(f(&e, "y+x^4")));
    assert_eq!(witness_search(&e, &r1, &rational, 2).unwrap(), None);
}

#[test]
fn rejects_bad_inputs() {
    let e = e_model();
    let spec = ConductorSpec::parse(&e, "2*P(0,0)", "P(inf)").unwrap();
    // x vanishes at the conductor place
    assert!(sunit_images(&e, &spec, &units(&[("x", "x")])).is_err());
    // x+1 has zeros outside the split set
    assert!(sunit_images(&e, &spec, &units(&[("x+1", "x+1")])).is_err());
    assert!(ConductorSpec::parse(&e, "2*P(0,0)", "P(0,0)").is_err());
    assert!(ConductorSpec::parse(&e, "0*P(0,0)", "").is_err());
    assert!(ConductorSpec::parse(&e, "2*Q(0,0)", "").is_err());
}
