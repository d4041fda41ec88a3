//! The conical semigroup S(X) of a positive basis and its gaps in L+.
//!
//! S(X) consists of the nonnegative-integer combinations of the basis; a gap
//! is a lattice point of the closed positive orthant whose (unique) integer
//! coefficient vector has a negative entry. Classification is a single exact
//! matrix-vector product with the cached inverse of X.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::PositiveBasis;
use crate::linalg::{Rat, RationalVector};

/// Membership status of a lattice point relative to S(X) and L+.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GapStatus {
    Semigroup,
    Gap,
    NotInLPlus,
}

/// A lattice point together with its exact coefficient vector in X, proving
/// its classification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapCertificate {
    pub point: RationalVector,
    #[serde(serialize_with = "crate::linalg::serde_text::bigints")]
    pub coefficients: Vec<BigInt>,
    pub status: GapStatus,
    pub primitive: bool,
}

/// Classify a lattice point: semigroup member, gap, or outside L+.
pub fn classify(basis: &PositiveBasis, v: &RationalVector) -> Result<GapCertificate> {
    if v.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: v.dim(),
        });
    }
    let coeffs = basis
        .coefficients(v)
        .to_integers()
        .ok_or(Error::NotInLattice)?;
    let status = if !v.is_nonnegative() {
        GapStatus::NotInLPlus
    } else if coeffs.iter().any(|c| c.is_negative()) {
        GapStatus::Gap
    } else {
        GapStatus::Semigroup
    };
    let primitive = coeffs
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c))
        .is_one();
    Ok(GapCertificate {
        point: v.clone(),
        coefficients: coeffs,
        status,
        primitive,
    })
}

/// Real-cone membership: v lies in C(X) iff all coordinates of X^-1 v are
/// nonnegative.
pub fn in_cone(basis: &PositiveBasis, v: &RationalVector) -> Result<bool> {
    if v.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            got: v.dim(),
        });
    }
    Ok(basis.coefficients(v).is_nonnegative())
}

/// Write a gap as m * z with z a primitive gap and m a positive integer.
pub fn primitive_decompose(
    basis: &PositiveBasis,
    g: &RationalVector,
) -> Result<(GapCertificate, BigInt)> {
    let cert = classify(basis, g)?;
    if cert.status != GapStatus::Gap {
        return Err(Error::NotAGap);
    }
    let m = cert
        .coefficients
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    debug_assert!(m.is_positive());
    let reduced: Vec<BigInt> = cert.coefficients.iter().map(|c| c / &m).collect();
    let z = basis
        .matrix()
        .mul_vec(&RationalVector::from_bigints(&reduced));
    let zcert = classify(basis, &z)?;
    debug_assert_eq!(zcert.status, GapStatus::Gap);
    debug_assert!(zcert.primitive);
    Ok((zcert, m))
}

/// A point of L+ whose coefficient on a chosen basis vector is exactly `b`,
/// witnessing that no proper coefficient set can cover L+. For b >= 0 the
/// witness is b*x_j itself; for b < 0 the remaining coefficients are the
/// smallest uniform positive integer that forces the point strictly inside
/// the orthant.
pub fn coeff_extend_witness(basis: &PositiveBasis, b: &BigInt) -> Result<GapCertificate> {
    let d = basis.dim();
    let j = select_covered_index(basis)?;
    if !b.is_negative() {
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs[j] = b.clone();
        let point = basis
            .matrix()
            .mul_vec(&RationalVector::from_bigints(&coeffs));
        return classify(basis, &point);
    }

    // For every coordinate k the complement sum s_k is positive (the chosen
    // index has covered support and X spans), so a uniform coefficient works:
    // need A * s_k > |b| * x_jk for all k.
    let xj = basis.vector(j);
    let sums: Vec<Rat> = (0..d)
        .map(|k| {
            (0..d)
                .filter(|&i| i != j)
                .map(|i| basis.matrix().at(k, i).clone())
                .sum()
        })
        .collect();
    let babs = Rat::from_integer(b.abs());
    let mut a = BigInt::one();
    for k in 0..d {
        debug_assert!(sums[k].is_positive());
        let bound = &babs * xj.at(k) / &sums[k];
        // smallest integer strictly greater than bound
        let candidate = bound.floor().to_integer() + BigInt::one();
        if candidate > a {
            a = candidate;
        }
    }
    let coeffs: Vec<BigInt> = (0..d)
        .map(|i| if i == j { b.clone() } else { a.clone() })
        .collect();
    let point = basis
        .matrix()
        .mul_vec(&RationalVector::from_bigints(&coeffs));
    debug_assert!(point.is_strictly_positive());
    classify(basis, &point)
}

/// Smallest index j with supp(x_j) contained in the union of the other
/// supports. Exists iff the basis is not orthogonal.
fn select_covered_index(basis: &PositiveBasis) -> Result<usize> {
    let d = basis.dim();
    let supports: Vec<Vec<usize>> = (0..d).map(|j| basis.vector(j).support()).collect();
    'outer: for j in 0..d {
        for &k in &supports[j] {
            let covered = (0..d).any(|i| i != j && supports[i].contains(&k));
            if !covered {
                continue 'outer;
            }
        }
        return Ok(j);
    }
    Err(Error::OrthogonalBasis)
}

/// One constructed gap per basis index, with its exact sup-norm.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructedGap {
    pub index: usize,
    #[serde(serialize_with = "crate::linalg::serde_text::bigint")]
    pub multiplier: BigInt,
    pub certificate: GapCertificate,
    /// Sup-norm of the gap vector; equals the closed-form bound exactly.
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub sup_norm: Rat,
}

/// Build the d linearly independent explicit gaps
/// z_i = a_i * sum_{j!=i} x_j - x_i, where a_i is one more than the largest
/// integer part of x_ik / sum_{j!=i} x_jk over coordinates k. Each z_i lands
/// strictly inside the orthant with coefficient -1 on x_i, so it is a
/// primitive gap, and its sup-norm is exactly
/// max_m (a_i * sum_{j!=i} x_jm - x_im).
pub fn construct_gap_vectors(basis: &PositiveBasis) -> Result<Vec<ConstructedGap>> {
    basis.check_hyperplane_condition()?;
    let d = basis.dim();
    let sums = basis.complement_coordinate_sums();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let xi = basis.vector(i);
        let mut a = BigInt::zero();
        for k in 0..d {
            let part = (xi.at(k) / &sums[i][k]).floor().to_integer();
            if part > a {
                a = part;
            }
        }
        a += BigInt::one();
        let coeffs: Vec<BigInt> = (0..d)
            .map(|j| if j == i { -BigInt::one() } else { a.clone() })
            .collect();
        let point = basis
            .matrix()
            .mul_vec(&RationalVector::from_bigints(&coeffs));
        let certificate = classify(basis, &point)?;
        debug_assert_eq!(certificate.status, GapStatus::Gap);
        let sup_norm = point.sup_norm();
        out.push(ConstructedGap {
            index: i,
            multiplier: a,
            certificate,
            sup_norm,
        });
    }
    Ok(out)
}

/// The closed-form sup-norm of the i-th constructed gap, evaluated directly.
pub fn constructed_gap_norm_formula(basis: &PositiveBasis, i: usize) -> Result<Rat> {
    basis.check_hyperplane_condition()?;
    let d = basis.dim();
    let sums = basis.complement_coordinate_sums();
    let xi = basis.vector(i);
    let mut a = BigInt::zero();
    for k in 0..d {
        let part = (xi.at(k) / &sums[i][k]).floor().to_integer();
        if part > a {
            a = part;
        }
    }
    a += BigInt::one();
    let arat = Rat::from_integer(a);
    Ok((0..d)
        .map(|m| &arat * &sums[i][m] - xi.at(m))
        .max()
        .expect("d >= 1"))
}

/// The largest of the d constructed norms: the right-hand side of the
/// restricted-minima bound for lambda_d(L+, X).
pub fn gap_norm_bound(basis: &PositiveBasis) -> Result<Rat> {
    (0..basis.dim())
        .map(|i| constructed_gap_norm_formula(basis, i))
        .try_fold(None::<Rat>, |acc, r| {
            let v = r?;
            Ok(Some(match acc {
                None => v,
                Some(a) => a.max(v),
            }))
        })
        .map(|o| o.expect("d >= 1"))
}
