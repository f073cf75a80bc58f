use brauerlift_core::coeff::mat::{self, Mat};
use brauerlift_core::coeff::poly::PolyRing;
use brauerlift_core::coeff::{
    choose_coefficient_field, field_of_size, hensel_idempotent, hensel_idempotent_fixpoint, smallest_irreducible,
    CoeffError, FieldSpec, GaloisRing, PrecisionTower,
};
use brauerlift_core::groups::named::{alternating4, borel21, cyclic, psl27};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z49() -> GaloisRing {
    GaloisRing::new(FieldSpec::prime(7), 2).unwrap()
}

#[test]
fn inverse_of_three_mod_49() {
    let r = z49();
    let inv = r.inv(r.from_i64(3)).unwrap();
    let brute = (0..49).find(|k| 3 * k % 49 == 1).unwrap();
    assert_eq!(brute, 33);
    assert_eq!(r.to_i64(inv), Some(33 - 49));
    assert_eq!(r.inv(r.one()).unwrap(), r.one());
    assert_eq!(r.inv(r.from_i64(14)), Err(CoeffError::NotAUnit));
}

#[test]
fn hensel_on_scalars_and_matrices() {
    let r = z49();
    let idems: Vec<i64> = (0..49).filter(|k| k * k % 49 == *k).collect();
    assert_eq!(idems, vec![0, 1]);
    let e = Mat::from_i64(&r, &[&[8]]);
    assert_eq!(hensel_idempotent_fixpoint(&r, &e), Mat::from_i64(&r, &[&[1]]));
    let exact = Mat::from_i64(&r, &[&[1, 0], &[0, 0]]);
    assert_eq!(hensel_idempotent(&r, &exact), exact);

    let e = Mat::from_i64(&r, &[&[8, 7], &[7, 0]]);
    let lifted = hensel_idempotent_fixpoint(&r, &e);
    assert_eq!(lifted.mul(&r, &lifted), lifted);
    let f = r.residue_field();
    assert_eq!(lifted.reduce(&r, &f), e.reduce(&r, &f));
    assert_eq!(r.to_i64(lifted.trace(&r)), Some(1));
}

#[test]
fn coefficient_field_choice() {
    assert_eq!(choose_coefficient_field(&cyclic(7), 7).unwrap().q(), 7);
    assert_eq!(choose_coefficient_field(&alternating4(), 3).unwrap().q(), 3);
    assert_eq!(choose_coefficient_field(&psl27(), 7).unwrap().q(), 49);
    assert_eq!(choose_coefficient_field(&borel21(), 7).unwrap().q(), 7);
    let f49 = choose_coefficient_field(&psl27(), 7).unwrap();
    assert_eq!(f49.f, vec![1, 0, 1]);
    assert_eq!(field_of_size(7, 7).unwrap().q(), 7);
    assert!(field_of_size(7, 50).is_err());
}

#[test]
fn irreducibles_are_irreducible() {
    for (p, d) in [(2, 2), (2, 3), (2, 6), (3, 2), (3, 6), (7, 2), (5, 4)] {
        let spec = smallest_irreducible(p, d).unwrap();
        let fp = GaloisRing::new(FieldSpec::prime(p), 1).unwrap();
        let ring = PolyRing::new(&fp);
        let poly: Vec<_> = spec.f.iter().map(|&c| fp.from_i64(c as i64)).collect();
        assert!(ring.is_irreducible(&poly));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(ring.factor(&poly, &mut rng).len(), 1);
    }
}

#[test]
fn roots_of_unity() {
    let spec = field_of_size(7, 49).unwrap();
    let r = GaloisRing::new(spec, 4).unwrap();
    let z = r.root_of_unity(8).unwrap();
    assert!(r.is_one(r.pow(z, 8)));
    assert!(!r.is_one(r.pow(z, 4)));
}

#[test]
fn factorization_multiplies_back() {
    let spec = field_of_size(3, 9).unwrap();
    let f = GaloisRing::new(spec, 1).unwrap();
    let ring = PolyRing::new(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let a: Vec<_> = (0..7).map(|_| f.random(&mut rng)).chain([f.one()]).collect();
        let b = ring.mul(&a, &a);
        let fac = ring.factor(&b, &mut rng);
        let prod = fac.iter().fold(ring.one(), |acc, (g, m)| (0..*m).fold(acc, |t, _| ring.mul(&t, g)));
        assert_eq!(prod, ring.monic(&b));
        assert!(fac.iter().all(|(g, _)| ring.is_irreducible(g)));
    }
}

#[test]
fn smith_solve_kernel() {
    let r = GaloisRing::new(FieldSpec::prime(3), 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let mut a = Mat::zeros(5, 4);
        for i in 0..5 {
            for j in 0..4 {
                a[(i, j)] = if (i + j) % 3 == 0 { r.mul_int(r.random(&mut rng), 3) } else { r.random(&mut rng) };
            }
        }
        let s = mat::smith(&r, &a);
        let d = s.u.mul(&r, &a).mul(&r, &s.v);
        for i in 0..5 {
            for j in 0..4 {
                if i != j {
                    assert!(r.is_zero(d[(i, j)]));
                }
            }
        }
        let x = Mat::from_cols(4, &[(0..4).map(|_| r.random(&mut rng)).collect()]);
        let b = a.mul(&r, &x);
        let y = mat::solve(&r, &a, &b).expect("consistent system");
        assert_eq!(a.mul(&r, &y), b);
        for k in mat::kernel(&r, &a) {
            assert!(a.mul_vec(&r, &k).iter().all(|c| r.is_zero(*c)));
        }
    }
}

fn ring_strategy() -> impl Strategy<Value = GaloisRing> {
    prop_oneof![
        Just(GaloisRing::new(FieldSpec::prime(7), 6).unwrap()),
        Just(GaloisRing::new(field_of_size(7, 49).unwrap(), 6).unwrap()),
        Just(GaloisRing::new(field_of_size(2, 8).unwrap(), 10).unwrap()),
        Just(GaloisRing::new(field_of_size(3, 27).unwrap(), 5).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (r.random(&mut rng), r.random(&mut rng), r.random(&mut rng));
        prop_assert_eq!(r.add(x, y), r.add(y, x));
        prop_assert_eq!(r.mul(x, y), r.mul(y, x));
        prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
        prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
        prop_assert_eq!(r.add(x, r.neg(x)), r.zero());
        prop_assert_eq!(r.mul(x, r.one()), x);
        let tower = PrecisionTower::new(r.clone());
        let m = 1 + (seed % r.precision() as u64) as u32;
        let low = tower.level(m).unwrap();
        let red = |a| tower.reduce(a, m).unwrap();
        prop_assert_eq!(red(r.mul(x, y)), low.mul(red(x), red(y)));
        prop_assert_eq!(red(r.add(x, y)), low.add(red(x), red(y)));
        let l = m.div_ceil(2);
        prop_assert_eq!(low.reduce_precision(red(x), l).unwrap(), r.reduce_precision(x, l).unwrap());
    }

    #[test]
    fn inverse_of_random_units(r in ring_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..2 {
            let u = r.random_unit(&mut rng);
            prop_assert!(r.is_one(r.mul(u, r.inv(u).unwrap())));
        }
    }

    #[test]
    fn hensel_converges_and_is_unique(seed in any::<u64>(), k in 1usize..4) {
        // conjugate a diagonal idempotent by a random unit matrix, perturb by p, and lift
        let r = GaloisRing::new(FieldSpec::prime(5), 6).unwrap();
        let f = r.residue_field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 4;
        let u = loop {
            let mut u = Mat::zeros(n, n);
            for i in 0..n { for j in 0..n { u[(i, j)] = r.random(&mut rng); } }
            if mat::inverse(&r, &u).is_some() { break u; }
        };
        let uinv = mat::inverse(&r, &u).unwrap();
        let mut d = Mat::zeros(n, n);
        for i in 0..k { d[(i, i)] = r.one(); }
        let e0 = u.mul(&r, &d).mul(&r, &uinv);
        let mut noise = Mat::zeros(n, n);
        for i in 0..n { for j in 0..n { noise[(i, j)] = r.mul_int(r.random(&mut rng), 5); } }
        let e = e0.add(&r, &noise);
        let lifted = hensel_idempotent_fixpoint(&r, &e);
        prop_assert_eq!(lifted.mul(&r, &lifted), lifted.clone());
        prop_assert_eq!(lifted.reduce(&r, &f), e.reduce(&r, &f));
        // a commuting lift agreeing mod p is the same lift
        let again = hensel_idempotent_fixpoint(&r, &lifted.add(&r, &lifted.mul(&r, &noise).mul(&r, &lifted).scale(&r, r.from_i64(5))));
        prop_assert_eq!(again.mul(&r, &lifted), lifted.mul(&r, &again));
        prop_assert_eq!(again, lifted);
    }

    #[test]
    fn matrix_kernels_match_entrywise_arithmetic(r in ring_strategy(), seed in any::<u64>(), n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = |rows: usize, cols: usize| {
            let mut m = Mat::zeros(rows, cols);
            for i in 0..rows { for j in 0..cols { m[(i, j)] = r.random(&mut rng); } }
            m
        };
        let (a, b) = (random(n, n + 2), random(n + 2, 3));
        let ab = a.mul(&r, &b);
        for i in 0..n {
            for j in 0..3 {
                let want = (0..n + 2).fold(r.zero(), |acc, k| r.add(acc, r.mul(a[(i, k)], b[(k, j)])));
                prop_assert_eq!(ab[(i, j)], want);
            }
        }
        let v = b.col(0);
        prop_assert_eq!(a.mul_vec(&r, &v), ab.col(0));
        let sq = random(n, n);
        match mat::inverse(&r, &sq) {
            Some(inv) => {
                prop_assert_eq!(sq.mul(&r, &inv), Mat::identity(&r, n));
                prop_assert_eq!(inv.mul(&r, &sq), Mat::identity(&r, n));
            }
            None => prop_assert!(mat::rank_mod_p(&r, &sq) < n),
        }
        let f = r.residue_field();
        let k = mat::kernel_mod_p(&r, &a);
        prop_assert_eq!(k.cols + mat::rank_mod_p(&r, &a), a.cols);
        prop_assert!(a.reduce(&r, &f).mul(&f, &k).is_zero());
    }
}
