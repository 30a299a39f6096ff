mod common;

use common::{p, random_invertible, random_matrix, random_poly, rng};
use ncpoly::corpus::{first_pair, unexpected_polys, unexpected_tuple};
use ncpoly::eval::{
    char_poly, evaluate, inner_rank_lower_bound, jordan_profile, norms, poly_at_matrix, refute, sample_tuple,
    Discrepancy, MatrixTuple, RefuteConfig, WitnessKind,
};
use ncpoly::linalg::Matrix;
use ncpoly::{Field, NcPoly, Scalar, UniPoly};

fn tuple(r: &mut rand_chacha::ChaCha8Rng, n: usize, k: usize) -> MatrixTuple {
    MatrixTuple::new((0..n).map(|_| random_matrix(r, k, k, 4)).collect()).unwrap()
}

#[test]
fn direct_sum_and_conjugation_axioms() {
    let mut r = rng(9);
    for _ in 0..30 {
        let f = random_poly(&mut r, 2, 3, 5, false);
        let (x, y) = (tuple(&mut r, 2, 2), tuple(&mut r, 2, 3));
        let lhs = evaluate(&f, &x.direct_sum(&y)).unwrap();
        assert_eq!(lhs, evaluate(&f, &x).unwrap().direct_sum(&evaluate(&f, &y).unwrap()));
        let s = random_invertible(&mut r, 3);
        let si = s.inverse().unwrap();
        let conj = evaluate(&f, &y.conjugate(&s, &si)).unwrap();
        assert_eq!(conj, &(&si * &evaluate(&f, &y).unwrap()) * &s);
    }
}

#[test]
fn cayley_hamilton_and_profiles() {
    let mut r = rng(10);
    for _ in 0..10 {
        let m = random_matrix(&mut r, 4, 4, 6);
        assert!(poly_at_matrix(&char_poly(&m), &m).is_zero());
    }
    assert_eq!(char_poly(&Matrix::from_ints(&[&[0, 1], &[0, 0]])), UniPoly::from_ints(&[0, 0, 1]));
    let j = jordan_profile(&Matrix::from_ints(&[&[1, 1], &[0, 1]]));
    assert_eq!(j.eigen, vec![(Scalar::one(), vec![1, 0])]);
    let z = jordan_profile(&Matrix::zeros(2, 2));
    assert_eq!(z.eigen, vec![(Scalar::zero(), vec![0])]);
    // x² + 1 has no rational root; it is kept as a cluster
    let rot = jordan_profile(&Matrix::from_ints(&[&[0, -1], &[1, 0]]));
    assert!(!rot.is_complete());
}

#[test]
fn unexpected_pair_is_similar_at_size_three() {
    let [a, b, ..] = unexpected_polys();
    let (f, g) = (&a * &b, &b * &a);
    for i in 0..10 {
        let x = sample_tuple(3, 2, &Field::rationals(), 3, 100 + i);
        let (fv, gv) = (evaluate(&f, &x).unwrap(), evaluate(&g, &x).unwrap());
        assert_eq!(jordan_profile(&fv), jordan_profile(&gv));
    }
    let x = unexpected_tuple();
    let (fv, gv) = (evaluate(&f, &x).unwrap(), evaluate(&g, &x).unwrap());
    assert_ne!(jordan_profile(&fv), jordan_profile(&gv));
}

#[test]
fn refuters() {
    let (f, g) = (p("x*y"), p("y*x"));
    let cfg = RefuteConfig::default();
    let w = refute(&f, &g, WitnessKind::Rank, &cfg, None).unwrap();
    assert_eq!(w.tuple.size(), 2);
    assert!(w.verify(&f, &g, cfg.tol));
    assert_eq!(w.discrepancy, Discrepancy::Rank { f: 1, g: 0 });

    // Frobenius norms 1 and 0 at the displayed pair
    let x = first_pair();
    let (nf, ng) = (norms(&evaluate(&f, &x).unwrap()), norms(&evaluate(&g, &x).unwrap()));
    assert!((nf.0 - 1.0).abs() < 1e-12 && ng.0 == 0.0);
    let w = refute(&f, &g, WitnessKind::Norm, &cfg, None).unwrap();
    assert!(w.verify(&f, &g, cfg.tol));

    assert!(refute(&f, &f, WitnessKind::Jordan, &RefuteConfig { max_size: 3, samples: 5, ..cfg.clone() }, None).is_none());
}

#[test]
fn witnesses_do_not_depend_on_threads() {
    let (f, g) = (p("x*y*x*y + x*y + x"), p("x*y^2*x + x*y + x"));
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| refute(&f, &g, WitnessKind::Charpoly, &RefuteConfig { seed: 11, ..Default::default() }, None))
    };
    let one = run(1).unwrap();
    assert_eq!(run(4).unwrap(), one);
    assert_eq!(run(3).unwrap(), one);
}

#[test]
fn seeds_give_distinct_tuples() {
    let q = Field::rationals();
    for k in 2..5 {
        let tuples: Vec<MatrixTuple> = (0..40).map(|s| sample_tuple(k, 2, &q, 10, s)).collect();
        for i in 0..tuples.len() {
            for j in 0..i {
                assert_ne!(tuples[i], tuples[j]);
            }
        }
        assert_eq!(sample_tuple(k, 2, &q, 10, 7), sample_tuple(k, 2, &q, 10, 7));
    }
}

#[test]
fn inner_rank_bounds() {
    let x = p("x");
    let diag = vec![vec![x.clone(), NcPoly::zero()], vec![NcPoly::zero(), x.clone()]];
    assert_eq!(inner_rank_lower_bound(&diag, &RefuteConfig::default()), 2);
    // [x y; x y] has inner rank 1
    let low = vec![vec![x.clone(), p("y")], vec![x, p("y")]];
    assert_eq!(inner_rank_lower_bound(&low, &RefuteConfig::default()), 1);
}
