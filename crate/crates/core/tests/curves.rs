use f2curves::curves::*;
use f2curves::gf::GfField;
use f2curves::parse::parse_gf;
use f2curves::zeta::{avector_from_h, h_from_l, l_from_h, nvector_from_l, RealWeilPoly};
use f2curves::parse::parse_int_poly;
use proptest::prelude::*;

fn rw(s: &str) -> RealWeilPoly {
    RealWeilPoly::new(parse_int_poly(s).unwrap(), 2).unwrap()
}

fn place(m: &ArtinSchreierModel, s: &str) -> Place {
    parse_place(m, s).unwrap()
}

fn places(m: &ArtinSchreierModel, v: &[&str]) -> Vec<Place> {
    v.iter().map(|s| place(m, s)).collect()
}

/// Brute-force count of affine solutions plus the points at infinity read
/// off the leading terms, independent of the chart machinery.
fn naive_count(a: &[u32], f: &[u32], n: u32, at_inf: i64) -> i64 {
    let fld = GfField::get(n).unwrap();
    let ev = |c: &[u32], x: u32| {
        c.iter()
            .rev()
            .fold(0u32, |acc, &b| fld.mul(acc, x) ^ b)
    };
    let mut cnt = 0;
    for x in 0..fld.size() {
        for y in 0..fld.size() {
            if fld.square(y) ^ fld.mul(ev(a, x), y) ^ ev(f, x) == 0 {
                cnt += 1;
            }
        }
    }
    cnt + at_inf
}

#[test]
fn point_counts() {
    let e = e_model();
    assert_eq!(e.count_points(1).unwrap(), 5);
    assert_eq!(c5_model().count_points(1).unwrap(), 5);
    let c = genus2_c_model();
    assert_eq!(c.count_points(1).unwrap(), 4);
    assert_eq!(c.count_points(2).unwrap(), 8);
    let n6 = nvector_from_l(&l_from_h(&rw("t+2")).unwrap(), 6).unwrap()[5];
    assert_eq!(e.count_points(6).unwrap(), n6);
    assert_eq!(n6, 65);
    for n in 1..=6 {
        assert_eq!(e.count_points(n).unwrap(), naive_count(&[1], &[0, 1, 0, 1], n, 1));
        assert_eq!(
            c5_model().count_points(n).unwrap(),
            naive_count(&[1], &[0, 0, 0, 1, 0, 1], n, 1)
        );
        assert_eq!(
            c.count_points(n).unwrap(),
            naive_count(&[0, 1], &[0, 1, 1, 0, 1, 1], n, 1)
        );
    }
    assert_eq!(e.points_over(1).unwrap().len(), 5);
    assert!(e.count_points(0).is_err());
    assert!(e.count_points(17).is_err());
}

#[test]
fn fitted_l_polynomials() {
    let cases = [
        (e_model(), "t+2"),
        (c5_model(), "t^2+2t-2"),
        (genus2_c_model(), "(t+2)(t-1)"),
    ];
    for (m, h) in cases {
        let l = fit_l_from_counts(&m).unwrap();
        assert_eq!(h_from_l(&l).unwrap(), rw(h), "{m}");
        let g = m.genus;
        assert_eq!(
            avector(&m, 2 * g as u32).unwrap().a,
            avector_from_fit(&m, 2 * g).unwrap().a
        );
    }
    let l = fit_l_from_counts(&e_model()).unwrap();
    assert_eq!(l.l, f2curves::algebra::IntPoly::from_i64s(&[1, 2, 2]));
    // declaring the wrong genus is caught by the recount
    for (eq, g, k) in [("y^2+y=x^3+x", 2, 2), ("y^2+y=x^5+x^3", 3, 3)] {
        let wrong = ArtinSchreierModel::from_equation(eq, g, k).unwrap();
        assert!(fit_l_from_counts(&wrong).is_err(), "{eq} as genus {g}");
    }
}

#[test]
fn e_places_match_listed_coordinates() {
    let e = e_model();
    assert_eq!(
        avector(&e, 7).unwrap().a,
        avector_from_h(&rw("t+2"), 7).unwrap().a
    );
    assert!(places_of_degree(&e, 2).unwrap().is_empty());
    assert!(places_of_degree(&e, 3).unwrap().is_empty());
    let q = places(
        &e,
        &[
            "P(a^3, a^3+a)",
            "P(a^3, a^3+a+1)",
            "P(a^3+1, a)",
            "P(a^3+1, a+1)",
            "P(a^2+a+1, a)",
        ],
    );
    let mut sorted = q.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, places_of_degree(&e, 4).unwrap());
    let r = places(&e, &["P(b, b^4)", "P(b, b^4+1)", "P(b+1, b^4+b)", "P(b+1, b^4+b+1)"]);
    let mut sorted = r.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, places_of_degree(&e, 5).unwrap());
    let t = t_places(&e);
    let mut sorted = t.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted, places_of_degree(&e, 6).unwrap());
    for p in q.iter().chain(&r).chain(&t) {
        assert_eq!(p.orbit().len() as u32, p.degree);
        let fr: Vec<_> = p.orbit().iter().map(|c| c.frobenius()).collect();
        let mut a = fr.clone();
        a.sort();
        let mut b = p.orbit();
        b.sort();
        assert_eq!(a, b);
    }
}

fn t_places(e: &ArtinSchreierModel) -> Vec<Place> {
    places(
        e,
        &[
            "P(c^5+c^3+c^2+c+1, c^5+c^4+c^3+1)",
            "P(c^5+c^3+c^2+c, c^4+c^2+c)",
            "P(c^3+c^2+1, c^3+c^2+c)",
            "P(c^3+c^2+1, c^3+c^2+c+1)",
            "P(c+1, c^4+c^3+c^2+c)",
            "P(c+1, c^4+c^3+c^2+c+1)",
            "P(c^3+c^2, c+1)",
            "P(c^3+c^2, c)",
            "P(c, c^4+c^3+c^2)",
            "P(c, c^4+c^3+c^2+1)",
        ],
    )
}

fn rational(e: &ArtinSchreierModel) -> Vec<Place> {
    places(e, &["P(inf)", "P(0,0)", "P(0,1)", "P(1,0)", "P(1,1)"])
}

#[test]
fn sigma_and_tau_cycles() {
    let e = e_model();
    let p = rational(&e);
    // P0 -> P1 -> P3 -> P4 -> P2 -> P0
    for (a, b) in [(0, 1), (1, 3), (3, 4), (4, 2), (2, 0)] {
        assert_eq!(sigma_action(&p[a]).unwrap(), p[b]);
    }
    let q = places(
        &e,
        &[
            "P(a^3, a^3+a)",
            "P(a^3, a^3+a+1)",
            "P(a^3+1, a)",
            "P(a^3+1, a+1)",
            "P(a^2+a+1, a)",
        ],
    );
    // Q1 -> Q5 -> Q2 -> Q4 -> Q3 -> Q1
    for (a, b) in [(0, 4), (4, 1), (1, 3), (3, 2), (2, 0)] {
        assert_eq!(sigma_action(&q[a]).unwrap(), q[b]);
    }
    // tau: fixes P0 and Q5, Q1 -> Q4 -> Q2 -> Q3, P1 -> P4 -> P2 -> P3
    assert_eq!(tau_action(&p[0]).unwrap(), p[0]);
    assert_eq!(tau_action(&q[4]).unwrap(), q[4]);
    for (a, b) in [(0, 3), (3, 1), (1, 2), (2, 0)] {
        assert_eq!(tau_action(&q[a]).unwrap(), q[b]);
    }
    for (a, b) in [(1, 4), (4, 2), (2, 3), (3, 1)] {
        assert_eq!(tau_action(&p[a]).unwrap(), p[b]);
    }
    let r = places(&e, &["P(b, b^4)", "P(b, b^4+1)", "P(b+1, b^4+b)", "P(b+1, b^4+b+1)"]);
    for (a, b) in [(0, 3), (3, 1), (1, 2), (2, 0)] {
        assert_eq!(tau_action(&r[a]).unwrap(), r[b]);
    }
    // tau has order 4 on every place of degree <= 6
    for d in 1..=6 {
        for pl in places_of_degree(&e, d).unwrap() {
            let mut x = pl.clone();
            for _ in 0..4 {
                x = tau_action(&x).unwrap();
            }
            assert_eq!(x, pl);
        }
    }
    let t = t_places(&e);
    let tau2 = |x: &Place| tau_action(&tau_action(x).unwrap()).unwrap();
    assert_eq!(tau2(&t[8]), t[9]);
    let mut img = tau2(&t[9]);
    for _ in 0..3 {
        img = sigma_action(&img).unwrap();
    }
    assert_eq!(img, t[9]);
    // T1 -> T9 -> T3 -> T4 -> T10 under sigma
    for (a, b) in [(0, 8), (8, 2), (2, 3), (3, 9)] {
        assert_eq!(sigma_action(&t[a]).unwrap(), t[b]);
    }
}

#[test]
fn doubling_agrees_with_sigma_cycle() {
    let p1 = EllipticPoint::new(1, 0, 0).unwrap();
    let p3 = EllipticPoint::new(1, 1, 0).unwrap();
    assert_eq!(ell_add(&p1, &p1).unwrap(), p3);
    // tangent slope recomputed from implicit differentiation: dy/dx = x^2 + 1
    let two = ell_mul(&p1, 2).unwrap();
    assert_eq!(two, p3);
    assert_eq!(ell_mul(&p1, 5).unwrap(), EllipticPoint::infinity(1));
    assert!(EllipticPoint::new(1, 0, 0).is_ok());
    assert!(EllipticPoint::new(1, 1, 1).is_ok());
    assert!(EllipticPoint::new(2, 2, 0).is_err());
}

#[test]
fn principal_divisors() {
    let e = e_model();
    let p = rational(&e);
    let d = divisor_of(&e, &parse_function(&e, "x").unwrap()).unwrap();
    assert_eq!(d, Divisor::from_terms([(p[1].clone(), 1), (p[2].clone(), 1), (p[0].clone(), -2)]));
    let d = divisor_of(&e, &parse_function(&e, "x^6+x^5+1").unwrap()).unwrap();
    let q = place(&e, "P(c, c^4+c^3+c^2+1)");
    let q2 = place(&e, "P(c, c^4+c^3+c^2)");
    assert_eq!(d, Divisor::from_terms([(q, 1), (q2, 1), (p[0].clone(), -12)]));

    let c5 = c5_model();
    let inf = place(&c5, "P(inf)");
    let (p0, p0p, p1, p1p) = (
        place(&c5, "P(0,0)"),
        place(&c5, "P(0,1)"),
        place(&c5, "P(1,0)"),
        place(&c5, "P(1,1)"),
    );
    let div = |s: &str| divisor_of(&c5, &parse_function(&c5, s).unwrap()).unwrap();
    assert_eq!(
        div("(y+x^3)/x^3"),
        Divisor::from_terms([(p0.clone(), 2), (p1p.clone(), 1), (p0p.clone(), -3)])
    );
    assert_eq!(
        div("(y+1)/y"),
        Divisor::from_terms([
            (p0p.clone(), 3),
            (p0.clone(), -3),
            (p1p.clone(), 2),
            (p1.clone(), -2)
        ])
    );
    assert_eq!(
        div("(x+1)/x"),
        Divisor::from_terms([
            (p1.clone(), 1),
            (p0.clone(), -1),
            (p1p.clone(), 1),
            (p0p.clone(), -1)
        ])
    );
    assert_eq!(
        div("x+1"),
        Divisor::from_terms([(p1.clone(), 1), (p1p.clone(), 1), (inf.clone(), -2)])
    );
    assert_eq!(
        div("y+1"),
        Divisor::from_terms([(p0p.clone(), 3), (p1p.clone(), 2), (inf.clone(), -5)])
    );
    let c = genus2_c_model();
    let d = divisor_of(&c, &parse_function(&c, "x").unwrap()).unwrap();
    assert_eq!(
        d,
        Divisor::from_terms([(place(&c, "P(0,0)"), 2), (place(&c, "P(inf)"), -2)])
    );
}

#[test]
fn family_surveys() {
    let rows = survey_family(
        "y^2 + y = x^5 + a*x^3 + b*x^2 + c",
        &['a', 'b', 'c'],
        &full_space(3),
        2,
        3,
        2,
    )
    .unwrap();
    assert_eq!(rows.len(), 8);
    let hits: Vec<_> = rows
        .iter()
        .filter(|r| r.a.as_deref() == Some(&[5, 0][..]))
        .map(|r| r.params.clone())
        .collect();
    assert_eq!(hits, vec![vec![1, 0, 0]]);

    let rows = survey_family(
        "y^2 + x*y = x^5 + a*x^3 + b*x^2 + x",
        &['a', 'b'],
        &full_space(2),
        2,
        3,
        2,
    )
    .unwrap();
    let hits: Vec<_> = rows
        .iter()
        .filter(|r| r.a.as_deref() == Some(&[4, 2][..]))
        .map(|r| r.params.clone())
        .collect();
    assert_eq!(hits, vec![vec![1, 1]]);
    let fit = fit_l_from_counts(
        &ArtinSchreierModel::from_equation("y^2 + x*y = x^5 + x^3 + x^2 + x", 2, 3).unwrap(),
    )
    .unwrap();
    assert_eq!(h_from_l(&fit).unwrap(), rw("(t+2)(t-1)"));

    assert!(survey_family("y^2+y=x^3+a", &['a'], &[], 1, 2, 2).unwrap().is_empty());
}

#[test]
fn model_files_and_errors() {
    let m = ArtinSchreierModel::parse_model_file("curve: y^2 + y = x^3 + x; genus: 1; k: 2").unwrap();
    assert_eq!(m, e_model());
    let m = ArtinSchreierModel::parse_model_file("# C\ncurve: y^2 + x*y = x^5+x^4+x^2+x\ngenus: 2\n").unwrap();
    assert_eq!(m, genus2_c_model());
    assert!(ArtinSchreierModel::parse_model_file("genus: 1").is_err());
    assert!(ArtinSchreierModel::from_equation("y^2 = x^3 + x", 1, 2).is_err());
    assert!(ArtinSchreierModel::from_equation("y^2 + y = x^7", 1, 2).is_err());
    // x*y with f(0)'=0 gives a node at the origin
    assert!(ArtinSchreierModel::from_equation("y^2 + x*y = x^3", 1, 2).is_err());
    let e = e_model();
    assert!(parse_place(&e, "P(0, a)").is_err());
    assert!(parse_place(&e, "P(1,1)").is_ok());
    assert!(matches!(
        divisor_of(&e, &parse_function(&e, "0").unwrap()),
        Err(f2curves::Error::Vanishes)
    ));
    let f16 = GfField::get(4).unwrap();
    let x = parse_gf(&f16, "a^3").unwrap();
    let y = parse_gf(&f16, "a^3+a").unwrap();
    assert!(e.on_curve(&ChartPoint::affine(4, x, y)));
}

fn monomial() -> impl Strategy<Value = String> {
    (0u32..5, 0u32..2, any::<bool>()).prop_map(|(i, j, plus_one)| {
        let base = match (i, j) {
            (0, 0) => "1".to_string(),
            (i, 0) => format!("x^{i}"),
            (0, _) => "y".to_string(),
            (i, _) => format!("x^{i}*y"),
        };
        if plus_one {
            format!("({base}+1)")
        } else {
            base
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn divisor_is_additive(f in monomial(), g in monomial()) {
        let e = e_model();
        let ff = parse_function(&e, &f).unwrap();
        let gg = parse_function(&e, &g).unwrap();
        prop_assume!(!ff.is_zero() && !gg.is_zero());
        let fg = ff.mul(&gg, &e).unwrap();
        prop_assume!(!fg.is_zero());
        let lhs = divisor_of(&e, &fg).unwrap();
        let rhs = divisor_of(&e, &ff).unwrap().add(&divisor_of(&e, &gg).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_law_associative(s in any::<u64>()) {
        let pts = e_model().points_over(6).unwrap();
        let pick = |k: u64| EllipticPoint::from_chart_point(&pts[(k % pts.len() as u64) as usize]).unwrap();
        let (a, b, c) = (pick(s), pick(s >> 16), pick(s >> 32));
        let l = ell_add(&ell_add(&a, &b).unwrap(), &c).unwrap();
        let r = ell_add(&a, &ell_add(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(ell_add(&a, &EllipticPoint::infinity(6)).unwrap(), a);
        prop_assert_eq!(ell_add(&a, &a.neg()).unwrap(), EllipticPoint::infinity(6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn associativity_200_triples(s in any::<u64>(), t in any::<u64>()) {
        let pts = e_model().points_over(6).unwrap();
        let n = pts.len() as u64;
        let p = |k: u64| EllipticPoint::from_chart_point(&pts[(k % n) as usize]).unwrap();
        let (a, b, c) = (p(s), p(t), p(s ^ t.rotate_left(17)));
        prop_assert_eq!(
            ell_add(&ell_add(&a, &b).unwrap(), &c).unwrap(),
            ell_add(&a, &ell_add(&b, &c).unwrap()).unwrap()
        );
    }
}

#[test]
fn place_counts_sum_to_point_counts() {
    for m in [e_model(), c5_model(), genus2_c_model()] {
        let a = avector(&m, 12).unwrap();
        for n in 1..=12usize {
            let s: i64 = (1..=n).filter(|d| n % d == 0).map(|d| d as i64 * a.get(d)).sum();
            assert_eq!(s, m.count_points(n as u32).unwrap(), "{m} n={n}");
        }
    }
}

#[test]
fn sigma_has_order_five() {
    let e = e_model();
    for d in [1, 4] {
        for p in places_of_degree(&e, d).unwrap() {
            let mut x = p.clone();
            for _ in 0..5 {
                x = sigma_action(&x).unwrap();
            }
            assert_eq!(x, p);
            assert_ne!(sigma_action(&p).unwrap(), p);
        }
    }
}
