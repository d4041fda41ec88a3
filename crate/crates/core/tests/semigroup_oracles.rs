//! Oracle checks for the semigroup structure lemmas, run on randomized
//! positive bases at desk scale.

use conegaps::enumerate::{enumerate, Region};
use conegaps::lattice::{generate_positive_basis, Lattice, PositiveBasis};
use conegaps::linalg::{rat, RationalMatrix};
use conegaps::semigroup::{classify, in_cone, primitive_decompose, GapStatus};
use num_bigint::BigInt;
use num_traits::Zero;

fn skew_basis() -> PositiveBasis {
    PositiveBasis::new(
        Lattice::standard(2),
        RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]]),
    )
    .unwrap()
}

/// Cone membership and semigroup membership agree on L+: the oracle form of
/// the identity L+ ∩ C(X) = S(X).
#[test]
fn cone_equals_semigroup_on_lplus() {
    for seed in 0..8u64 {
        let lattice = Lattice::standard(2);
        let basis = generate_positive_basis(&lattice, seed);
        for p in enumerate(&lattice, &Region::Cube(rat(12))).unwrap() {
            let cert = classify(&basis, &p.point).unwrap();
            if cert.status == GapStatus::NotInLPlus {
                continue;
            }
            let inside = in_cone(&basis, &p.point).unwrap();
            assert_eq!(
                inside,
                cert.status == GapStatus::Semigroup,
                "seed {seed}, point {:?}",
                p.point
            );
        }
    }
}

#[test]
fn cone_equals_semigroup_on_lplus_3d() {
    let lattice = Lattice::standard(3);
    for seed in [0u64, 3] {
        let basis = generate_positive_basis(&lattice, seed);
        for p in enumerate(&lattice, &Region::Cube(rat(6))).unwrap() {
            let cert = classify(&basis, &p.point).unwrap();
            if cert.status == GapStatus::NotInLPlus {
                continue;
            }
            assert_eq!(
                in_cone(&basis, &p.point).unwrap(),
                cert.status == GapStatus::Semigroup
            );
        }
    }
}

/// Positive multiples of gaps are gaps, and every gap factors through a
/// primitive gap.
#[test]
fn gap_multiples_and_decomposition() {
    let basis = skew_basis();
    let lattice = basis.lattice().clone();
    for p in enumerate(&lattice, &Region::Cube(rat(8))).unwrap() {
        let cert = classify(&basis, &p.point).unwrap();
        if cert.status != GapStatus::Gap {
            continue;
        }
        for m in 2i64..=5 {
            let scaled = p.point.scale(&rat(m));
            let c = classify(&basis, &scaled).unwrap();
            assert_eq!(c.status, GapStatus::Gap, "{m} * {:?}", p.point);
        }
        let (z, m) = primitive_decompose(&basis, &p.point).unwrap();
        assert!(z.primitive);
        assert_eq!(
            z.point.scale(&conegaps::linalg::Rat::from_integer(m)),
            p.point
        );
    }
}

/// The primitive gap count grows with the radius for a non-orthogonal basis
/// (the finite proxy for the infinitude of primitive gaps).
#[test]
fn primitive_gap_counts_increase() {
    let basis = skew_basis();
    let lattice = basis.lattice().clone();
    let mut counts = Vec::new();
    for t in [5i64, 10, 15, 20] {
        let n = enumerate(&lattice, &Region::Cube(rat(t)))
            .unwrap()
            .iter()
            .filter(|p| {
                let c = classify(&basis, &p.point).unwrap();
                c.status == GapStatus::Gap && c.primitive
            })
            .count();
        counts.push(n);
    }
    for w in counts.windows(2) {
        assert!(w[0] < w[1], "counts {counts:?}");
    }
}

/// The coefficient-extension witness hits every forbidden coefficient.
#[test]
fn witness_round_trip_randomized() {
    for seed in 0..6u64 {
        let basis = generate_positive_basis(&Lattice::standard(2), seed);
        for b in [-4i64, -1, 0, 3] {
            let w = conegaps::semigroup::coeff_extend_witness(&basis, &BigInt::from(b)).unwrap();
            assert!(w.coefficients.contains(&BigInt::from(b)));
            assert!(w.point.is_nonnegative());
        }
    }
}

/// Constructed gap vectors: independent, certified gaps, exactly one
/// coefficient equal to -1, norms matching the closed form.
#[test]
fn constructed_gaps_randomized() {
    for d in [2usize, 3] {
        let lattice = Lattice::standard(d);
        for seed in 0..5u64 {
            let basis = generate_positive_basis(&lattice, seed);
            let gaps = conegaps::semigroup::construct_gap_vectors(&basis).unwrap();
            let cols: Vec<_> = gaps.iter().map(|g| g.certificate.point.clone()).collect();
            assert!(!RationalMatrix::from_columns(&cols).det().unwrap().is_zero());
            for g in &gaps {
                assert_eq!(g.certificate.status, GapStatus::Gap);
                let negs: Vec<_> = g
                    .certificate
                    .coefficients
                    .iter()
                    .filter(|c| *c < &BigInt::from(0))
                    .collect();
                assert_eq!(negs.len(), 1);
                assert_eq!(*negs[0], BigInt::from(-1));
                assert_eq!(
                    conegaps::semigroup::constructed_gap_norm_formula(&basis, g.index).unwrap(),
                    g.sup_norm
                );
            }
        }
    }
}
