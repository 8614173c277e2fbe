use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use ffzeta::algebra::{Field, Form, Poly};
use ffzeta::geometry::{Ambient, AmbientSpace, Caps};
use ffzeta::padic::{axkatz_verify, growth_report, Valuation};
use ffzeta::varieties::{decompose, TwistData, VarietySpec};
use ffzeta::zeta::{
    count_solutions, count_solutions_naive, interval_identity, wan_asymptotic, zeta_rr, CountMethod, TruncSeries,
};

fn f2() -> Field {
    Field::new(2, 1).unwrap()
}

fn binom2(k: u32) -> u32 {
    (k + 2) * (k + 1) / 2
}

/// `sum_{deg D = k} q^(n l(D))` with `l(D) = k + 1` on the line and
/// `(k+2)(k+1)/2` on the plane; the number of effective `D` of degree `k` is
/// the number of points of a projective space.
fn rr_oracle(q: u64, n: u32, k: u32, plane: bool) -> BigInt {
    let l = if plane { binom2(k) } else { k + 1 };
    let ndiv = (BigInt::from(q).pow(l) - 1) / (q - 1);
    ndiv * BigInt::from(q).pow(n * l)
}

#[test]
fn rr_zeta_of_affine_spaces() {
    for n in 1..=2u32 {
        let (z, _) = zeta_rr(&VarietySpec::affine_space(n as usize), &AmbientSpace::<Poly>::new(f2()), 4).unwrap();
        let want: Vec<BigInt> = (0..=4).map(|k| rr_oracle(2, n, k, false)).collect();
        assert_eq!(z, TruncSeries::new(want, 4), "line n={n}");
        let (z, _) = zeta_rr(&VarietySpec::affine_space(n as usize), &AmbientSpace::<Form>::new(f2()), 2).unwrap();
        let want: Vec<BigInt> = (0..=2).map(|k| rr_oracle(2, n, k, true)).collect();
        assert_eq!(z, TruncSeries::new(want, 2), "plane n={n}");
    }
}

fn differential<R: Ambient>(x: &AmbientSpace<R>, variety: &str, divisors: &[&str]) {
    let w = VarietySpec::<R>::parse(variety, x.field()).unwrap();
    for d in divisors {
        let basis = x.rr_basis(&x.parse_divisor(d).unwrap()).unwrap();
        let fast = count_solutions(&w, &basis, &x.caps()).unwrap();
        let naive = count_solutions_naive(&w, &basis, &x.caps()).unwrap();
        assert_eq!(fast.count, naive, "{variety} over L({d}) via {:?}", fast.method);
    }
}

#[test]
fn fast_counts_agree_with_naive_counts() {
    let line = AmbientSpace::<Poly>::new(f2());
    let ds = ["[]", "[(inf, 1)]", "[(inf, 2)]", "[(t, 1), (inf, 1)]", "[(t + 1, 2)]", "[(t^2 + t + 1, 1)]"];
    for v in [
        "affine:1:y1^2 + y1 + t",
        "affine:2:y1*y2 - 1",
        "affine:2:y1 + t*y2 + 1",
        "affine:2:y1 + y2; y1 + t",
        "affine:2:y1^2 + y2^3 + t",
        "affine:1:y1 + 1/t",
        "affine:2:",
    ] {
        differential(&line, v, &ds);
    }
    let f3 = AmbientSpace::<Poly>::new(Field::new(3, 1).unwrap());
    differential(&f3, "affine:2:y1^2 - y2^2 - t", &["[]", "[(inf, 1)]", "[(t, 1)]"]);
    let f4 = AmbientSpace::<Poly>::new(Field::new(2, 2).unwrap());
    differential(&f4, "affine:1:y1^2 + g*y1 + t", &["[]", "[(inf, 1)]"]);
    let plane = AmbientSpace::<Form>::new(f2());
    for v in ["affine:1:y1^2 + y1", "affine:2:y1*y2 + (x/z)", "affine:2:y1 + y2 + 1"] {
        differential(&plane, v, &["[]", "[(x, 1)]", "[(z, 1)]", "[(x*y + z^2, 1)]"]);
    }
}

#[test]
fn linear_systems_take_the_rank_path() {
    let x = AmbientSpace::<Poly>::new(f2());
    let w = VarietySpec::parse("affine:2:y1 + t*y2 + 1", f2()).unwrap();
    let c = count_solutions(&w, &x.rr_basis(&x.parse_divisor("[(inf, 3)]").unwrap()).unwrap(), &x.caps()).unwrap();
    assert_eq!(c.method, CountMethod::Linear);
    // y1 = t*y2 + 1 with deg y2 <= 2: one solution per y2
    assert_eq!(c.count, BigUint::from(8u32));
}

#[test]
fn caps_are_enforced() {
    let caps = Caps {
        max_divisors: 1_000_000,
        max_tuples: 100,
    };
    let x = AmbientSpace::<Poly>::with_caps(f2(), caps);
    let w = VarietySpec::parse("affine:2:y1^2 + y2^3 + t", f2()).unwrap();
    let err = count_solutions(&w, &x.rr_basis(&x.parse_divisor("[(inf, 4)]").unwrap()).unwrap(), &caps).unwrap_err();
    assert!(matches!(err, ffzeta::Error::CapExceeded { .. }), "{err}");
}

#[test]
fn interval_identity_on_the_pieces_of_the_line() {
    for q in [2, 3] {
        let field = Field::with_order(q).unwrap();
        let x = AmbientSpace::<Poly>::new(field);
        let pieces = decompose(&VarietySpec::projective_space(1), &TwistData::identity(field, 1)).unwrap();
        for w in &pieces {
            for row in interval_identity(w, &x, 2).unwrap() {
                assert!(row.holds(), "q={q} {row:?}");
            }
        }
    }
    let x = AmbientSpace::<Poly>::new(f2());
    let w = VarietySpec::parse("affine:2:y1*y2 + y1 + 1", f2()).unwrap();
    assert!(interval_identity(&w, &x, 2).unwrap().iter().all(|r| r.holds()));
}

#[test]
fn growth_of_valuations() {
    let plane = growth_report(&VarietySpec::affine_space(1), &AmbientSpace::<Form>::new(f2()), 3).unwrap();
    let want: Vec<Valuation> = (0..=3).map(|k| Valuation::from_int(((k + 2) * (k + 1) / 2) as i64)).collect();
    assert_eq!(plane.rows.iter().map(|r| r.ord_m.clone()).collect::<Vec<_>>(), want);
    let line = growth_report(&VarietySpec::affine_space(1), &AmbientSpace::<Poly>::new(f2()), 4).unwrap();
    let want: Vec<Valuation> = (0..=4).map(|k| Valuation::from_int(k + 1)).collect();
    assert_eq!(line.rows.iter().map(|r| r.ord_m.clone()).collect::<Vec<_>>(), want);
}

#[test]
fn wan_counts_follow_the_closed_form() {
    let r = wan_asymptotic(2, 1, 6, Caps::default()).unwrap();
    for row in &r.rows {
        // N_d = 2 * 4^d + 1 for P^1 over F_2(t)
        let n_d = BigUint::from(2u32) * BigUint::from(4u32).pow(row.d as u32) + 1u32;
        assert_eq!(row.cumulative, n_d, "d={}", row.d);
        if row.d >= 1 {
            assert_eq!(row.exact_ratio.decimal, "1.000000");
        }
    }
    let check = r.check(&BigRational::new(1.into(), 100.into()), 3);
    assert!(check.deviation_decreasing);
    assert!(!check.final_deviation_within_tolerance);
}

fn axkatz_case<R: Ambient>(x: &AmbientSpace<R>, variety: &str, divisor: &str) {
    let w = VarietySpec::<R>::parse(variety, x.field()).unwrap();
    let e = x.parse_divisor(divisor).unwrap();
    let rep = axkatz_verify(&w, x, &e).unwrap();
    assert!(rep.passed(), "{variety} over L({divisor}): {rep:?}");
    let naive = count_solutions_naive(&w, &x.rr_basis(&e).unwrap(), &x.caps()).unwrap();
    assert_eq!(rep.count_system, naive);
}

#[test]
fn axkatz_suite() {
    let line = AmbientSpace::<Poly>::new(f2());
    for (v, e) in [
        ("affine:1:y1", "[(inf, 1)]"),
        ("affine:2:y1*y2 - 1", "[]"),
        ("affine:1:y1^2 + y1 + t", "[(inf, 2)]"),
        ("affine:2:y1^2 + t*y2", "[(inf, 1)]"),
        ("affine:2:y1*y2 + y1 + 1", "[(t, 1), (inf, 1)]"),
        ("affine:2:y1^2 + y2^2 + y1", "[(t + 1, 2)]"),
        ("affine:1:y1 + 1/t", "[(t, 1)]"),
        ("affine:1:y1^2 + 1/(t+1)*y1 + t", "[(inf, 1)]"),
        ("affine:1:y1^2 + y1", "[(t^2 + t + 1, 1)]"),
    ] {
        axkatz_case(&line, v, e);
    }
    let plane = AmbientSpace::<Form>::new(f2());
    for (v, e) in [
        ("affine:1:y1^2 + (x/z)*y1", "[(z, 1)]"),
        ("affine:2:y1*y2 + 1", "[(x, 1)]"),
        ("affine:2:y1^2 + y2^2 + y1", "[(x*y + z^2, 1)]"),
        ("affine:2:y1 + y2 + y/x", "[(x, 1), (y, 1)]"),
    ] {
        axkatz_case(&plane, v, e);
    }
}
