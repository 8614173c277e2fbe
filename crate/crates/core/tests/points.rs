use ffzeta::algebra::{CoordRing, Field, FnFieldElement, Form, Poly};
use ffzeta::geometry::AmbientSpace;
use ffzeta::varieties::{
    decompose, enumerate_points, inf_of_coordinates, locate, sup_of_polar, twisted_height, ProjPoint, TwistData,
    VarietySpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_261_016;

fn f2() -> Field {
    Field::new(2, 1).unwrap()
}

fn gcd_all<R: CoordRing>(xs: &[R]) -> R {
    xs.iter().fold(R::zero(xs[0].field()), |g, x| g.gcd(x))
}

/// Points of P^n over F_q(t) of height exactly `d`: coprime tuples of maximal
/// degree `d`, counted up to the `q - 1` scalars.
fn brute_line(field: Field, n: usize, d: u32) -> usize {
    let polys: Vec<Poly> = Poly::all_up_to_degree(field, d).collect();
    let mut hits = 0;
    let total = polys.len().pow(n as u32 + 1);
    for mut idx in 0..total {
        let mut tuple = Vec::new();
        for _ in 0..=n {
            tuple.push(polys[idx % polys.len()].clone());
            idx /= polys.len();
        }
        let top = tuple.iter().filter_map(|p| p.degree().finite()).max();
        if top == Some(d) && gcd_all(&tuple).is_one() {
            hits += 1;
        }
    }
    hits / (field.q() as usize - 1)
}

fn brute_plane(field: Field, n: usize, d: u32) -> usize {
    let forms: Vec<Form> = Form::all_of_degree(field, d).collect();
    let mut hits = 0;
    for mut idx in 0..forms.len().pow(n as u32 + 1) {
        let mut tuple = Vec::new();
        for _ in 0..=n {
            tuple.push(forms[idx % forms.len()].clone());
            idx /= forms.len();
        }
        if tuple.iter().any(|f| !f.is_zero()) && gcd_all(&tuple).is_one() {
            hits += 1;
        }
    }
    hits / (field.q() as usize - 1)
}

fn by_height<R: ffzeta::geometry::Ambient>(points: &[ProjPoint<R>], d: u32) -> usize {
    points.iter().filter(|p| p.height() == d).count()
}

#[test]
fn enumeration_matches_brute_force_on_the_line() {
    for (q, n, d) in [(2, 1, 4), (2, 2, 3), (3, 1, 2), (4, 1, 2)] {
        let field = Field::with_order(q).unwrap();
        let points = enumerate_points(&AmbientSpace::<Poly>::new(field), n, d).unwrap();
        for h in 0..=d {
            assert_eq!(by_height(&points, h), brute_line(field, n, h), "q={q} n={n} h={h}");
        }
        let mut sorted = points.clone();
        sorted.sort_by_key(|p| p.to_string());
        sorted.dedup_by_key(|p| p.to_string());
        assert_eq!(sorted.len(), points.len(), "duplicates for q={q} n={n}");
    }
}

#[test]
fn enumeration_matches_brute_force_on_the_plane() {
    let points = enumerate_points(&AmbientSpace::<Form>::new(f2()), 1, 2).unwrap();
    for h in 0..=2 {
        assert_eq!(by_height(&points, h), brute_plane(f2(), 1, h), "h={h}");
    }
}

#[test]
fn enumeration_order_is_stable() {
    let x = AmbientSpace::<Poly>::new(f2());
    let a: Vec<String> = enumerate_points(&x, 2, 2).unwrap().iter().map(|p| p.to_string()).collect();
    let b: Vec<String> = enumerate_points(&x, 2, 2).unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(a, b);
    assert_eq!(a[0], "[1 : 0 : 0]");
}

fn random_fn(rng: &mut ChaCha8Rng, field: Field) -> FnFieldElement<Poly> {
    let poly = |rng: &mut ChaCha8Rng, deg: usize| {
        Poly::new(field, (0..=deg).map(|_| field.element(rng.gen_range(0..field.q()))).collect())
    };
    loop {
        let (dn, dd) = (rng.gen_range(0..4), rng.gen_range(0..3));
        let num = poly(rng, dn);
        let den = poly(rng, dd);
        if !den.is_zero() {
            return FnFieldElement::new(num, den).unwrap();
        }
    }
}

#[test]
fn height_is_scale_invariant_and_matches_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for field in [f2(), Field::new(3, 1).unwrap()] {
        for case in 0..400 {
            let n = rng.gen_range(1..=3);
            let y: Vec<_> = (0..=n).map(|_| random_fn(&mut rng, field)).collect();
            if y.iter().all(|c| c.is_zero()) {
                continue;
            }
            let p = ProjPoint::from_functions(&y).unwrap();
            let c = loop {
                let c = random_fn(&mut rng, field);
                if !c.is_zero() {
                    break c;
                }
            };
            let scaled: Vec<_> = y.iter().map(|v| v.mul(&c)).collect();
            let ps = ProjPoint::from_functions(&scaled).unwrap();
            assert_eq!(ps, p, "seed {SEED} case {case}");
            assert_eq!(p.height() as i64, p.height_by_divisors(), "seed {SEED} case {case}");
            assert_eq!(-inf_of_coordinates(&y).degree(), p.height() as i64);
            // with a coordinate equal to 1 the height is the degree of the polar part
            let normalized = p.functions();
            assert_eq!(sup_of_polar(&normalized).degree(), p.height() as i64);
            // inf (y_i) = -sup (y_i)_inf once some y_i = 1
            assert_eq!(inf_of_coordinates(&normalized), sup_of_polar(&normalized).neg());
        }
    }
}

fn shear() -> TwistData<Poly> {
    let rows = vec![vec!["1".to_string(), "1".to_string()], vec!["0".to_string(), "1".to_string()]];
    TwistData::parse(&rows, Some(vec![1, 0]), f2()).unwrap()
}

#[test]
fn chart_pieces_partition_the_points() {
    let x = AmbientSpace::<Poly>::new(f2());
    for (text, tw) in [
        ("projective:1:", TwistData::identity(f2(), 1)),
        ("projective:1:", shear()),
        ("projective:1:y0*y1 + y1^2", shear()),
    ] {
        let y = VarietySpec::<Poly>::parse(text, f2()).unwrap();
        let pieces = decompose(&y, &tw).unwrap();
        for p in enumerate_points(&x, 1, 3).unwrap() {
            let on_y = y.contains(&p.functions()).unwrap();
            let (i, coords) = locate(&p, &tw);
            assert_eq!(pieces[i].nvars(), coords.len());
            assert_eq!(pieces[i].contains(&coords).unwrap(), on_y, "{text} at {p}");
            // every piece index other than i rejects the point by construction
            let z = tw.apply(&p.functions());
            for (k, &s) in tw.sigma().iter().enumerate() {
                assert_eq!(z[s].is_zero(), k < i, "{p}");
                if k == i {
                    break;
                }
            }
        }
    }
}

#[test]
fn twisted_height_is_height_of_the_image() {
    let x = AmbientSpace::<Poly>::new(f2());
    let rows = vec![vec!["1".to_string(), "t".to_string()], vec!["0".to_string(), "1".to_string()]];
    let tw = TwistData::<Poly>::parse(&rows, None, f2()).unwrap();
    for p in enumerate_points(&x, 1, 2).unwrap() {
        let z = ProjPoint::from_functions(&tw.apply(&p.functions())).unwrap();
        assert_eq!(twisted_height(&p, &tw), z.height());
        let back = ProjPoint::from_functions(&tw.apply_inverse(&z.functions())).unwrap();
        assert_eq!(back, p);
    }
}
