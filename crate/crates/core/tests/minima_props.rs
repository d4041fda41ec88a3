//! Randomized checks tying the minima and covering machinery together.

use conegaps::enumerate::Family;
use conegaps::lattice::{generate_positive_basis, Lattice};
use conegaps::linalg::{rat, RationalMatrix};
use conegaps::minima::{
    construct_plus_chain, covering_radius, positive_box_point, successive_minima, verify_small_gap,
};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_lattice(rng: &mut ChaCha8Rng, d: usize) -> Lattice {
    loop {
        let rows: Vec<Vec<conegaps::Rat>> = (0..d)
            .map(|_| (0..d).map(|_| rat(rng.gen_range(-3i64..=3))).collect())
            .collect();
        let m = RationalMatrix::from_rows(rows);
        if let Ok(l) = Lattice::new(m) {
            return l;
        }
    }
}

#[test]
fn families_are_nested() {
    // lambda_1 <= lambda_1(L+) and lambda_i(L+) <= lambda_i(L+, X).
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let lattice = random_lattice(&mut rng, 2);
        let basis = generate_positive_basis(&lattice, rng.gen());
        let plain = successive_minima(&lattice, &Family::Plain, 2).unwrap();
        let plus = successive_minima(&lattice, &Family::Plus, 2).unwrap();
        if basis.is_orthogonal() {
            continue;
        }
        let gaps = successive_minima(&lattice, &Family::Gaps(&basis), 2).unwrap();
        for i in 0..2 {
            assert!(plain.values[i] <= plus.values[i]);
            assert!(plus.values[i] <= gaps.values[i]);
        }
    }
}

#[test]
fn minima_homogeneity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let lattice = random_lattice(&mut rng, 2);
        let scaled = Lattice::new(lattice.basis().scale(&rat(3))).unwrap();
        let a = successive_minima(&lattice, &Family::Plain, 2).unwrap();
        let b = successive_minima(&scaled, &Family::Plain, 2).unwrap();
        for i in 0..2 {
            assert_eq!(&a.values[i] * rat(3), b.values[i].clone());
        }
    }
}

#[test]
fn covering_radius_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..6 {
        let lattice = random_lattice(&mut rng, 2);
        let c = covering_radius(&lattice).unwrap();
        // Exact planar value sits inside the sampled/Jarnik bracket.
        assert!(
            c.sampled_lower <= c.hi,
            "sampled {} hi {}",
            c.sampled_lower,
            c.hi
        );
        assert!(c.lo <= c.jarnik_upper);
        assert!(c.lo <= c.hi);
    }
}

#[test]
fn box_point_bounds_hold_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..5 {
        let lattice = random_lattice(&mut rng, 2);
        let mu = covering_radius(&lattice).unwrap();
        let r = &mu.upper_rational;
        let b = positive_box_point(&lattice, r).unwrap();
        let hi = rat(2) * r + conegaps::Rat::one();
        for e in b.point.entries() {
            assert!(*e >= rat(1) && *e <= hi);
        }
        assert!(
            b.ball_nonempty,
            "covering property must produce a ball point"
        );
    }
}

#[test]
fn plus_chain_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..4 {
        let lattice = random_lattice(&mut rng, 2);
        let mu = covering_radius(&lattice).unwrap();
        let chain = construct_plus_chain(&lattice, &mu).unwrap();
        assert!(chain.independent);
        for p in &chain.points {
            assert!(p.point.is_nonnegative());
            assert!(p.sup_norm <= p.target_hi, "{:?}", p);
        }
    }
}

#[test]
fn small_gap_randomized_2d_and_3d() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..8 {
        let lattice = random_lattice(&mut rng, 2);
        let basis = generate_positive_basis(&lattice, rng.gen());
        let rec = verify_small_gap(&lattice, &basis).unwrap();
        assert!(rec.all_hold);
    }
    for seed in 0..3u64 {
        let lattice = Lattice::standard(3);
        let basis = generate_positive_basis(&lattice, seed);
        let rec = verify_small_gap(&lattice, &basis).unwrap();
        assert!(rec.all_hold);
    }
}

#[test]
fn minima_witnesses_attain_values() {
    let lattice = Lattice::new(RationalMatrix::from_int_rows(&[&[2, 1], &[1, 3]])).unwrap();
    let s = successive_minima(&lattice, &Family::Plain, 2).unwrap();
    for (v, w) in s.values.iter().zip(&s.witnesses) {
        assert_eq!(&w.sup_norm(), v);
        assert!(lattice
            .member(w)
            .unwrap()
            .expect("witness is a lattice point")
            .iter()
            .any(|c| c != &BigInt::from(0)));
    }
    assert!(s.values[0] <= s.values[1]);
}
