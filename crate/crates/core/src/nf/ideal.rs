//! Ideals of the order as lattices under the Minkowski embedding.
//!
//! An ideal is stored through an HNF-normalized integer basis matrix over
//! the integral basis. Its trace Gram matrix is exact, which turns the
//! determinant relation det(Gram) = N(I)^2 |Delta| into an integer identity.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::linalg::{extend_primitive, gcd_vector, Rat, RationalMatrix, RationalVector};
use crate::nf::{FieldElement, NumberField};

/// A full module of the order, validated to be an ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealLattice {
    basis: RationalMatrix,
    norm: BigInt,
    gram: RationalMatrix,
}

impl IdealLattice {
    /// The whole ring of integers (the order itself).
    pub fn whole_ring(field: &NumberField) -> Self {
        Self::from_basis(field, RationalMatrix::identity(field.degree()))
            .expect("identity basis is an ideal")
    }

    /// Build from an integer basis matrix (columns = generators over the
    /// integral basis). Checks closure under multiplication by the order.
    pub fn from_basis(field: &NumberField, basis: RationalMatrix) -> Result<Self> {
        let d = field.degree();
        if basis.rows() != d || basis.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: basis.rows(),
            });
        }
        if !basis.is_integer() {
            return Err(Error::NonInteger);
        }
        let det = basis.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inv = basis.invert()?;
        for t in 0..d {
            let mut e = vec![Rat::zero(); d];
            e[t] = Rat::one();
            let m = field.multiplication_matrix(&field.element(e)?);
            if !inv.mul(&m).mul(&basis).is_integer() {
                return Err(Error::NotAnIdeal);
            }
        }
        let (h, _) = basis.hnf()?;
        let norm = h.det()?.abs();
        debug_assert!(norm.denom().is_one());
        let gram = h.transpose().mul(field.trace_gram()).mul(&h);
        debug_assert!(gram.is_integer());
        Ok(Self {
            basis: h,
            norm: norm.numer().clone(),
            gram,
        })
    }

    /// The principal ideal generated by an element of the order.
    pub fn principal(field: &NumberField, gen: &FieldElement) -> Result<Self> {
        if gen.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let m = field.multiplication_matrix(gen);
        if !m.is_integer() {
            return Err(Error::NonInteger);
        }
        Self::from_basis(field, m)
    }

    /// HNF basis matrix, columns over the integral basis.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// Absolute norm [O : I].
    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    /// Exact trace Gram matrix of the ideal basis.
    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    /// The element with the given coefficients in the ideal basis.
    pub fn element(&self, field: &NumberField, coeffs: &[BigInt]) -> FieldElement {
        let v = self.basis.mul_vec(&RationalVector::from_bigints(coeffs));
        field
            .element(v.entries().to_vec())
            .expect("dimension fixed")
    }

    /// Coefficients of a field element in the ideal basis, when it belongs
    /// to the ideal.
    pub fn member(&self, el: &FieldElement) -> Option<Vec<BigInt>> {
        let inv = self.basis.invert().expect("nonsingular");
        inv.mul_vec(&RationalVector::new(el.coords().to_vec()))
            .to_integers()
    }

    /// Integer identity det(Gram) = N(I)^2 |Delta|, exact.
    pub fn det_identity_holds(&self, field: &NumberField) -> bool {
        let lhs = self.gram.det().expect("square");
        let rhs = Rat::from_integer(&self.norm * &self.norm * field.discriminant().abs());
        lhs == rhs
    }
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    basis: RationalMatrix,
}

impl Serialize for IdealLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealJson {
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

/// Ideals deserialize through a field handle, so only the raw basis form is
/// exposed here.
pub fn ideal_from_json<'de, D: Deserializer<'de>>(
    field: &NumberField,
    d: D,
) -> std::result::Result<IdealLattice, D::Error> {
    let raw = IdealJson::deserialize(d)?;
    IdealLattice::from_basis(field, raw.basis).map_err(|e| serde::de::Error::custom(e.to_string()))
}

// ---------------------------------------------------------------------------
// Totally positive ideal bases
// ---------------------------------------------------------------------------

/// A Z-basis of the ideal contained strictly inside the totally positive
/// cone, built like the lattice construction: find one strictly totally
/// positive primitive element, complete it to a basis unimodularly, then add
/// multiples of the first element to the others until all embeddings are
/// positive. The seed picks the starting element.
pub fn positive_ideal_basis(
    field: &NumberField,
    ideal: &IdealLattice,
    seed: u64,
) -> Result<Vec<FieldElement>> {
    let d = field.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let skip = rng.gen_range(0..64u32);
    let start = find_totally_positive_primitive(field, ideal, &mut rng, skip)?;

    let completion = extend_primitive(&RationalVector::from_bigints(&start))?;
    let columns = ideal.basis().mul(&completion).columns();
    let alpha1 = field.element(columns[0].entries().to_vec())?;
    debug_assert!(field.totally_positive_strict(&alpha1)?);

    let mut out = vec![alpha1.clone()];
    for col in columns.iter().skip(1) {
        let beta = field.element(col.entries().to_vec())?;
        let m = positivity_multiple(field, &beta, &alpha1)?;
        let shifted = field.add(&beta, &field.scale(&alpha1, &Rat::from_integer(m)));
        debug_assert!(field.totally_positive_strict(&shifted)?);
        out.push(shifted);
    }

    // The trace Gram of a totally positive basis has positive off-diagonal
    // entries, so the embedded basis is never orthogonal.
    let mut off_diagonal_nonzero = false;
    'outer: for i in 0..d {
        for j in i + 1..d {
            if !field.trace(&field.mul(&out[i], &out[j])).is_zero() {
                off_diagonal_nonzero = true;
                break 'outer;
            }
        }
    }
    if !off_diagonal_nonzero {
        return Err(Error::OrthogonalBasis);
    }
    Ok(out)
}

/// Smallest nonnegative integer M with beta + M alpha strictly totally
/// positive, certified through embedding intervals.
fn positivity_multiple(
    field: &NumberField,
    beta: &FieldElement,
    alpha: &FieldElement,
) -> Result<BigInt> {
    let d = field.degree();
    let mut bits = 48u32;
    loop {
        let eb = field.embeddings(beta, bits);
        let ea = field.embeddings(alpha, bits);
        let mut need = BigInt::zero();
        let mut resolved = true;
        for k in 0..d {
            if ea[k].lo.is_positive() {
                // M > -sigma_k(beta) / sigma_k(alpha).
                let ratio = eb[k].neg().div(&ea[k]);
                let cand = ratio.hi.floor().to_integer() + BigInt::one();
                if cand > need {
                    need = cand;
                }
            } else {
                resolved = false;
                break;
            }
        }
        if resolved {
            let m = need.max(BigInt::zero());
            let shifted = field.add(beta, &field.scale(alpha, &Rat::from_integer(m.clone())));
            if field.totally_positive_strict(&shifted)? {
                return Ok(m);
            }
        }
        bits *= 2;
        if bits > 4096 {
            return Err(Error::Undecided {
                bits,
                what: "positivity multiple".into(),
            });
        }
    }
}

/// Walk coefficient shells of the ideal in a seed-permuted order and return
/// the (skip+1)-th primitive element with strictly positive embeddings.
fn find_totally_positive_primitive(
    field: &NumberField,
    ideal: &IdealLattice,
    rng: &mut ChaCha8Rng,
    skip: u32,
) -> Result<Vec<BigInt>> {
    let d = field.degree();
    let mut remaining = skip;
    for radius in 1i64..=64 {
        let mut shell: Vec<Vec<i64>> = Vec::new();
        collect_shell(d, radius, &mut vec![0; d], 0, &mut shell);
        shell.shuffle(rng);
        for coeffs in shell {
            let c: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
            let cv = RationalVector::from_bigints(&c);
            if !gcd_vector(&cv)?.is_one() {
                continue;
            }
            let el = ideal.element(field, &c);
            if field.totally_positive_strict(&el)? {
                if remaining == 0 {
                    return Ok(c);
                }
                remaining -= 1;
            }
        }
    }
    Err(Error::InvalidInput(
        "no totally positive element found within the search bound".into(),
    ))
}

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

// ---------------------------------------------------------------------------
// Minkowski embedding
// ---------------------------------------------------------------------------

/// The ideal as a Euclidean lattice: certified interval coordinates next to
/// the exact Gram matrix that carries all norm computations.
#[derive(Clone, Debug)]
pub struct MinkowskiLattice {
    /// entry (i, j) encloses sigma_i(b_j).
    pub matrix: Vec<Vec<RatInterval>>,
    pub gram: RationalMatrix,
    /// Interval determinant of the embedding matrix.
    pub det: RatInterval,
}

/// Embed the ideal basis with entries of width at most 2^-bits.
pub fn minkowski_lattice(
    field: &NumberField,
    ideal: &IdealLattice,
    bits: u32,
) -> Result<MinkowskiLattice> {
    let d = field.degree();
    let mut matrix = vec![Vec::with_capacity(d); d];
    for j in 0..d {
        let mut unit = vec![BigInt::zero(); d];
        unit[j] = BigInt::one();
        let bj = ideal.element(field, &unit);
        for (i, row) in matrix.iter_mut().enumerate() {
            row.push(field.embedding(&bj, i, bits));
        }
    }
    let det = interval_det(&matrix);
    Ok(MinkowskiLattice {
        matrix,
        gram: ideal.gram().clone(),
        det,
    })
}

/// Interval determinant by cofactor expansion (dimensions here are tiny).
pub fn interval_det(m: &[Vec<RatInterval>]) -> RatInterval {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = RatInterval::point(Rat::zero());
    for j in 0..n {
        let minor: Vec<Vec<RatInterval>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m[i][k].clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&interval_det(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::nf::{init_field, parse_poly};

    fn sqrt2() -> NumberField {
        init_field(&parse_poly("x^2-2").unwrap(), None).unwrap()
    }

    #[test]
    fn whole_ring_identity() {
        let k = sqrt2();
        let o = IdealLattice::whole_ring(&k);
        assert_eq!(o.norm(), &BigInt::one());
        assert!(o.det_identity_holds(&k));
        // det(Gram) = 8 = 1^2 * |disc|.
        assert_eq!(o.gram().det().unwrap(), rat(8));
    }

    #[test]
    fn principal_ideals() {
        let k = sqrt2();
        // (sqrt2): norm 2.
        let g = k.element_from_ints(&[0, 1]);
        let i = IdealLattice::principal(&k, &g).unwrap();
        assert_eq!(i.norm(), &BigInt::from(2));
        assert!(i.det_identity_holds(&k));
        // (2 + sqrt2): norm |4 - 2| = 2.
        let g = k.element_from_ints(&[2, 1]);
        let i = IdealLattice::principal(&k, &g).unwrap();
        assert_eq!(i.norm(), &BigInt::from(2));
        // (3): norm 9.
        let g = k.element_from_ints(&[3, 0]);
        let i = IdealLattice::principal(&k, &g).unwrap();
        assert_eq!(i.norm(), &BigInt::from(9));
        assert!(i.det_identity_holds(&k));
    }

    #[test]
    fn non_ideal_rejected() {
        let k = sqrt2();
        // Z + 2 sqrt2 Z is not closed under multiplication by sqrt2.
        let m = RationalMatrix::from_int_rows(&[&[1, 0], &[0, 2]]);
        assert!(matches!(
            IdealLattice::from_basis(&k, m),
            Err(Error::NotAnIdeal)
        ));
    }

    #[test]
    fn membership() {
        let k = sqrt2();
        let two = IdealLattice::principal(&k, &k.element_from_ints(&[2, 0])).unwrap();
        assert!(two.member(&k.element_from_ints(&[2, 0])).is_some());
        assert!(two.member(&k.element_from_ints(&[0, 2])).is_some());
        assert!(two.member(&k.element_from_ints(&[1, 0])).is_none());
    }

    #[test]
    fn positive_basis_of_whole_ring() {
        let k = sqrt2();
        let o = IdealLattice::whole_ring(&k);
        let beta = positive_ideal_basis(&k, &o, 1).unwrap();
        assert_eq!(beta.len(), 2);
        for b in &beta {
            assert!(k.totally_positive_strict(b).unwrap());
        }
        // Unimodular change of basis from the HNF basis.
        let cols: Vec<RationalVector> = beta
            .iter()
            .map(|b| RationalVector::new(b.coords().to_vec()))
            .collect();
        let m = RationalMatrix::from_columns(&cols);
        let change = o.basis().invert().unwrap().mul(&m);
        assert!(change.is_integer());
        assert_eq!(change.det().unwrap().abs(), rat(1));
    }

    #[test]
    fn positive_bases_vary_with_seed() {
        let k = sqrt2();
        let o = IdealLattice::whole_ring(&k);
        let mut distinct = std::collections::HashSet::new();
        for seed in 0..6u64 {
            let beta = positive_ideal_basis(&k, &o, seed).unwrap();
            distinct.insert(format!(
                "{:?}",
                beta.iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>()
            ));
        }
        assert!(distinct.len() >= 2);
    }

    #[test]
    fn minkowski_embedding_sqrt2() {
        let k = sqrt2();
        let o = IdealLattice::whole_ring(&k);
        let mk = minkowski_lattice(&k, &o, 48).unwrap();
        // sigma(1) = (1, 1); sigma(sqrt2) = (-sqrt2, sqrt2) in root order.
        assert!(mk.matrix[0][0].contains(&rat(1)));
        assert!(mk.matrix[1][0].contains(&rat(1)));
        let s = 2f64.sqrt();
        let f = mk.matrix[0][1].to_f64();
        assert!(f.lo <= -s && -s <= f.hi);
        // |det| encloses sqrt(8).
        let d = mk.det.abs().to_f64();
        let target = 8f64.sqrt();
        assert!(d.lo <= target && target <= d.hi);
        // Norm check: ||Sigma(a)||^2 interval contains exact Tr(a^2).
        let a = k.element_from_ints(&[2, 1]);
        let embeds = k.embeddings(&a, 48);
        let norm_sq = embeds[0].mul(&embeds[0]).add(&embeds[1].mul(&embeds[1]));
        assert!(norm_sq.contains(&k.trace_of_square(&a)));
    }
}
