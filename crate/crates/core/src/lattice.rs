//! Full-rank lattices, positive bases, and cone transport.
//!
//! A lattice is stored through a basis matrix whose *columns* are the basis
//! vectors, so `L = B * Z^d`. A positive basis is a basis contained in the
//! closed positive orthant; the generator here follows the constructive
//! proof that such bases always exist: pick a primitive lattice point in the
//! open orthant, extend it to a basis by a unimodular completion, then push
//! the remaining vectors into the orthant with multiples of the first.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{extend_primitive, gcd_vector, Rat, RationalMatrix, RationalVector};

/// A full-rank lattice in R^d, d >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    basis: RationalMatrix,
    det_abs: Rat,
    inverse: RationalMatrix,
}

impl Lattice {
    pub fn new(basis: RationalMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::NonSquare {
                rows: basis.rows(),
                cols: basis.cols(),
            });
        }
        if basis.rows() < 2 {
            return Err(Error::DimensionTooSmall(basis.rows()));
        }
        let det = basis.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inverse = basis.invert()?;
        Ok(Self {
            basis,
            det_abs: det.abs(),
            inverse,
        })
    }

    /// The integer lattice Z^d.
    pub fn standard(dim: usize) -> Self {
        Self::new(RationalMatrix::identity(dim)).expect("identity basis")
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis matrix; columns are the basis vectors.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &RationalMatrix {
        &self.inverse
    }

    pub fn det_abs(&self) -> &Rat {
        &self.det_abs
    }

    /// The lattice point with the given integer coefficients.
    pub fn point(&self, coeffs: &[BigInt]) -> RationalVector {
        self.basis.mul_vec(&RationalVector::from_bigints(coeffs))
    }

    /// Integer coefficients of `v` in this basis, if `v` is a lattice point.
    pub fn member(&self, v: &RationalVector) -> Result<Option<Vec<BigInt>>> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(self.inverse.mul_vec(v).to_integers())
    }

    /// True iff `v` is a lattice point whose coefficient vector has gcd 1.
    pub fn is_primitive(&self, v: &RationalVector) -> Result<bool> {
        let coeffs = self.member(v)?.ok_or(Error::NotInLattice)?;
        Ok(gcd_vector(&RationalVector::from_bigints(&coeffs))?.is_one())
    }

    /// Pull the lattice through the cone's generator matrix: the result is
    /// `Y^-1 L`, with determinant `det L / |det Y|`.
    pub fn transport(&self, cone: &Cone) -> Result<Lattice> {
        let basis = cone.inverse().mul(&self.basis);
        let out = Lattice::new(basis)?;
        debug_assert_eq!(
            out.det_abs,
            &self.det_abs / cone.generators().det().unwrap().abs()
        );
        Ok(out)
    }

    /// Canonical basis: the HNF of the denominator-cleared basis matrix,
    /// divided back. Two lattices are equal iff these coincide.
    pub fn canonical_basis(&self) -> RationalMatrix {
        let q = self.basis.denominator_lcm();
        let scaled = self.basis.scale(&Rat::from_integer(q.clone()));
        let (h, _) = scaled.hnf().expect("nonsingular integer matrix");
        h.scale(&Rat::new(BigInt::one(), q))
    }

    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.dim() == other.dim() && self.canonical_basis() == other.canonical_basis()
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    dim: usize,
    basis: RationalMatrix,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson {
            dim: self.dim(),
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LatticeJson::deserialize(d)?;
        if raw.basis.rows() != raw.dim {
            return Err(serde::de::Error::custom("dim does not match basis"));
        }
        Lattice::new(raw.basis).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Cones
// ---------------------------------------------------------------------------

/// A full-dimensional simplicial cone spanned by d independent generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Cone {
    generators: RationalMatrix,
    inverse: RationalMatrix,
}

impl Cone {
    pub fn new(generators: RationalMatrix) -> Result<Self> {
        if !generators.is_square() {
            return Err(Error::NonSquare {
                rows: generators.rows(),
                cols: generators.cols(),
            });
        }
        let inverse = generators.invert().map_err(|_| Error::SingularCone)?;
        Ok(Self {
            generators,
            inverse,
        })
    }

    pub fn orthant(dim: usize) -> Self {
        Self::new(RationalMatrix::identity(dim)).expect("identity generators")
    }

    pub fn dim(&self) -> usize {
        self.generators.rows()
    }

    pub fn generators(&self) -> &RationalMatrix {
        &self.generators
    }

    pub fn inverse(&self) -> &RationalMatrix {
        &self.inverse
    }

    /// Real-cone membership: all generator coordinates >= 0.
    pub fn contains(&self, v: &RationalVector) -> bool {
        self.inverse.mul_vec(v).is_nonnegative()
    }

    /// The cone spanned by the inverse generator matrix.
    pub fn inverted(&self) -> Cone {
        Cone {
            generators: self.inverse.clone(),
            inverse: self.generators.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    generators: RationalMatrix,
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeJson {
            generators: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ConeJson::deserialize(d)?;
        Cone::new(raw.generators).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Positive bases
// ---------------------------------------------------------------------------

/// A basis of the lattice contained in the closed positive orthant, with the
/// basis matrix X and its cached inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveBasis {
    lattice: Lattice,
    matrix: RationalMatrix,
    inverse: RationalMatrix,
}

impl PositiveBasis {
    pub fn new(lattice: Lattice, matrix: RationalMatrix) -> Result<Self> {
        let d = lattice.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.rows(),
            });
        }
        for i in 0..d {
            for j in 0..d {
                if matrix.at(i, j).is_negative() {
                    return Err(Error::NotPositive { row: i, col: j });
                }
            }
        }
        // The columns must be a basis: unimodular integer change of basis.
        let change = lattice.basis_inverse().mul(&matrix);
        if !change.is_integer() || change.det()?.abs() != Rat::one() {
            return Err(Error::NotABasis);
        }
        let inverse = matrix.invert().map_err(|_| Error::NotABasis)?;
        Ok(Self {
            lattice,
            matrix,
            inverse,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The positive basis matrix X; columns are the basis vectors.
    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &RationalMatrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn vector(&self, i: usize) -> RationalVector {
        self.matrix.column(i)
    }

    pub fn vectors(&self) -> Vec<RationalVector> {
        self.matrix.columns()
    }

    /// Exact coordinates of `v` with respect to this basis.
    pub fn coefficients(&self, v: &RationalVector) -> RationalVector {
        self.inverse.mul_vec(v)
    }

    /// Unimodular change-of-basis matrix from the lattice's stored basis.
    pub fn change_of_basis(&self) -> RationalMatrix {
        self.lattice.basis_inverse().mul(&self.matrix)
    }

    /// Pairwise orthogonality of the basis vectors. For a positive basis
    /// this happens exactly when every vector sits on a coordinate axis.
    pub fn is_orthogonal(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                if !self.matrix.column(i).dot(&self.matrix.column(j)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// For each (i, k): the sum over j != i of x_jk. All of these are
    /// positive exactly when no d-1 basis vectors lie in a coordinate
    /// hyperplane.
    pub fn complement_coordinate_sums(&self) -> Vec<Vec<Rat>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|k| {
                        (0..d)
                            .filter(|&j| j != i)
                            .map(|j| self.matrix.at(k, j).clone())
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks the hyperplane precondition used by the explicit gap vectors.
    pub fn check_hyperplane_condition(&self) -> Result<()> {
        let sums = self.complement_coordinate_sums();
        for (i, row) in sums.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                if s.is_zero() {
                    let _ = i;
                    return Err(Error::CoordinateHyperplane {
                        count: self.dim() - 1,
                        coord: k,
                    });
                }
            }
        }
        Ok(())
    }

    /// The positive cone spanned by this basis.
    pub fn cone(&self) -> Cone {
        Cone {
            generators: self.matrix.clone(),
            inverse: self.inverse.clone(),
        }
    }
}

/// Generate a strictly positive basis for `lattice`. The seed selects the
/// starting point among the primitive lattice points of the open orthant, so
/// different seeds generally yield different bases.
pub fn generate_positive_basis(lattice: &Lattice, seed: u64) -> PositiveBasis {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let skip = rng.gen_range(0..1024u32);
    let coeffs = find_positive_primitive_point(lattice, &mut rng, skip);
    positive_basis_from_point(lattice, &coeffs).expect("construction always succeeds")
}

/// Deterministic core of the construction: given the coefficients of a
/// primitive lattice point with strictly positive coordinates, extend it to
/// a basis and push every other vector into the open orthant by adding the
/// smallest multiple of the first that clears margin 1.
pub fn positive_basis_from_point(lattice: &Lattice, coeffs: &[BigInt]) -> Result<PositiveBasis> {
    let d = lattice.dim();
    if coeffs.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: coeffs.len(),
        });
    }
    let a = RationalVector::from_bigints(coeffs);
    let x1 = lattice.basis().mul_vec(&a);
    if !x1.is_strictly_positive() {
        return Err(Error::InvalidInput(
            "starting point must have strictly positive coordinates".into(),
        ));
    }
    let completion = extend_primitive(&a)?;
    let candidate = lattice.basis().mul(&completion);
    let one = Rat::one();

    let mut columns = candidate.columns();
    for col in columns.iter_mut().skip(1) {
        // M = max_k ceil((1 - x_k) / x1_k), clamped at >= 0.
        let mut m = BigInt::zero();
        for k in 0..d {
            let need = (&one - col.at(k)) / x1.at(k);
            let need = need.ceil().to_integer();
            if need > m {
                m = need;
            }
        }
        if !m.is_zero() {
            *col = col.add(&x1.scale(&Rat::from_integer(m)));
        }
    }
    let matrix = RationalMatrix::from_columns(&columns);
    debug_assert!(columns.iter().all(RationalVector::is_strictly_positive));
    PositiveBasis::new(lattice.clone(), matrix)
}

/// Walk sup-norm shells of coefficient space in a seed-permuted order and
/// return the coefficients of the (skip+1)-th primitive point with strictly
/// positive coordinates. The open orthant is full-dimensional, so the walk
/// terminates.
fn find_positive_primitive_point(
    lattice: &Lattice,
    rng: &mut ChaCha8Rng,
    skip: u32,
) -> Vec<BigInt> {
    let d = lattice.dim();
    let mut remaining = skip;
    for radius in 1i64.. {
        let mut shell: Vec<Vec<i64>> = Vec::new();
        collect_shell(d, radius, &mut vec![0; d], 0, &mut shell);
        shell.shuffle(rng);
        for coeffs in shell {
            let a: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
            let av = RationalVector::from_bigints(&a);
            if gcd_vector(&av).unwrap().is_one()
                && lattice.basis().mul_vec(&av).is_strictly_positive()
            {
                if remaining == 0 {
                    return a;
                }
                remaining -= 1;
            }
        }
    }
    unreachable!("shell walk covers all of Z^d");
}

/// All integer vectors with sup-norm exactly `radius`.
fn collect_shell(d: usize, radius: i64, cur: &mut Vec<i64>, pos: usize, out: &mut Vec<Vec<i64>>) {
    if pos == d {
        if cur.iter().any(|&c| c.abs() == radius) {
            out.push(cur.clone());
        }
        return;
    }
    for c in -radius..=radius {
        cur[pos] = c;
        collect_shell(d, radius, cur, pos + 1, out);
    }
}
