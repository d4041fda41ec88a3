//! Totally real number fields with certified real embeddings.
//!
//! A field is a monic irreducible integer polynomial with all roots real,
//! plus an integral basis (default: the power basis). Element arithmetic is
//! exact through the reduction table of theta-powers; traces come from
//! Newton power sums, so the trace Gram matrix and the discriminant are
//! exact integers. The embeddings are Sturm-isolated root intervals refined
//! on demand behind a lock; every sign decision refines until certain, which
//! terminates because a nonzero element has no vanishing embedding.

pub mod height;
pub mod ideal;
pub mod verify;

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::RatInterval;

use crate::linalg::{Rat, RationalMatrix, RationalVector};
use crate::poly::{
    check_irreducible_monic, count_real_roots, isolate_real_roots, refine_root, RatPoly,
    RootInterval,
};

/// Hard ceiling on refinement precision; a sign that never resolves below
/// this indicates a bug, not a close call.
const MAX_SIGN_BITS: u32 = 8192;

pub struct NumberField {
    poly: Vec<BigInt>,
    poly_rat: RatPoly,
    degree: usize,
    /// Columns are the integral basis elements in power-basis coordinates.
    integral_basis: RationalMatrix,
    basis_inv: RationalMatrix,
    /// Power sums p_k = Tr(theta^k) for k = 0 .. 2d-2.
    power_sums: Vec<BigInt>,
    /// theta^k in power-basis coordinates for k = 0 .. 2d-2.
    reduction: Vec<Vec<Rat>>,
    trace_gram: RationalMatrix,
    discriminant: BigInt,
    roots: RwLock<Vec<RootInterval>>,
}

impl std::fmt::Debug for NumberField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NumberField")
            .field("poly", &self.poly)
            .field("degree", &self.degree)
            .field("discriminant", &self.discriminant)
            .finish()
    }
}

impl Clone for NumberField {
    fn clone(&self) -> Self {
        Self {
            poly: self.poly.clone(),
            poly_rat: self.poly_rat.clone(),
            degree: self.degree,
            integral_basis: self.integral_basis.clone(),
            basis_inv: self.basis_inv.clone(),
            power_sums: self.power_sums.clone(),
            reduction: self.reduction.clone(),
            trace_gram: self.trace_gram.clone(),
            discriminant: self.discriminant.clone(),
            roots: RwLock::new(self.roots.read().unwrap().clone()),
        }
    }
}

/// An element in integral-basis coordinates; all arithmetic is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    coords: Vec<Rat>,
}

impl FieldElement {
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// Integer coordinates, when the element lies in the order.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.denom().is_one().then(|| c.numer().clone()))
            .collect()
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalVector::new(self.coords.clone()).serialize(s)
    }
}

/// Build a totally real field from a monic integer polynomial and an
/// optional integral basis (given in power-basis coordinates).
pub fn init_field(
    coeffs: &[BigInt],
    integral_basis: Option<RationalMatrix>,
) -> Result<NumberField> {
    let degree = coeffs.len().saturating_sub(1);
    if degree < 2 {
        return Err(Error::InvalidInput(
            "defining polynomial must have degree at least 2".into(),
        ));
    }
    if !coeffs[degree].is_one() {
        return Err(Error::NotMonicInteger);
    }
    let poly_rat = RatPoly::from_bigints(coeffs);
    if poly_rat.gcd(&poly_rat.derivative()).degree() != Some(0) {
        return Err(Error::Reducible("repeated factor".into()));
    }
    check_irreducible_monic(coeffs)?;
    let real = count_real_roots(&poly_rat);
    if real != degree {
        return Err(Error::NotTotallyReal { real, degree });
    }
    let mut roots = isolate_real_roots(&poly_rat);
    let width = Rat::new(BigInt::one(), BigInt::one() << 64);
    for r in roots.iter_mut() {
        *r = refine_root(&poly_rat, r, &width);
    }

    // Newton power sums p_k = Tr(theta^k).
    let mut power_sums = vec![BigInt::from(degree as i64)];
    for k in 1..=2 * degree - 2 {
        let mut s = BigInt::zero();
        for j in 1..=(k - 1).min(degree) {
            s -= &coeffs[degree - j] * &power_sums[k - j];
        }
        if k <= degree {
            s -= BigInt::from(k as i64) * &coeffs[degree - k];
        }
        power_sums.push(s);
    }

    // theta^k in power coordinates.
    let mut reduction: Vec<Vec<Rat>> = Vec::with_capacity(2 * degree - 1);
    for k in 0..degree {
        let mut row = vec![Rat::zero(); degree];
        row[k] = Rat::one();
        reduction.push(row);
    }
    for k in degree..=2 * degree - 2 {
        let prev = reduction[k - 1].clone();
        let mut row = vec![Rat::zero(); degree];
        // Multiply by theta, then reduce theta^degree.
        let top = prev[degree - 1].clone();
        for j in (1..degree).rev() {
            row[j] = prev[j - 1].clone();
        }
        for j in 0..degree {
            row[j] -= &top * Rat::from_integer(coeffs[j].clone());
        }
        reduction.push(row);
    }

    let w = integral_basis.unwrap_or_else(|| RationalMatrix::identity(degree));
    if w.rows() != degree || w.cols() != degree {
        return Err(Error::DimensionMismatch {
            expected: degree,
            got: w.rows(),
        });
    }
    let basis_inv = w.invert().map_err(|_| Error::NotABasis)?;
    let mut gram_pow = RationalMatrix::zero(degree, degree);
    for i in 0..degree {
        for j in 0..degree {
            *gram_pow.at_mut(i, j) = Rat::from_integer(power_sums[i + j].clone());
        }
    }
    let trace_gram = w.transpose().mul(&gram_pow).mul(&w);
    if !trace_gram.is_integer() {
        return Err(Error::GramNotIntegral);
    }
    let disc = trace_gram.det()?;
    debug_assert!(disc.denom().is_one());
    let discriminant = disc.numer().clone();
    if discriminant.is_zero() {
        return Err(Error::Singular);
    }

    Ok(NumberField {
        poly: coeffs.to_vec(),
        poly_rat,
        degree,
        integral_basis: w,
        basis_inv,
        power_sums,
        reduction,
        trace_gram,
        discriminant,
        roots: RwLock::new(roots),
    })
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn trace_gram(&self) -> &RationalMatrix {
        &self.trace_gram
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn integral_basis(&self) -> &RationalMatrix {
        &self.integral_basis
    }

    /// Root intervals refined to at most the given width, ascending.
    pub fn roots_refined(&self, width: &Rat) -> Vec<RootInterval> {
        {
            let roots = self.roots.read().unwrap();
            if roots.iter().all(|r| r.width() <= *width) {
                return roots.clone();
            }
        }
        let mut roots = self.roots.write().unwrap();
        for r in roots.iter_mut() {
            if r.width() > *width {
                *r = refine_root(&self.poly_rat, r, width);
            }
        }
        roots.clone()
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: coords.len(),
            });
        }
        Ok(FieldElement { coords })
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> FieldElement {
        assert_eq!(coords.len(), self.degree);
        FieldElement {
            coords: coords.iter().map(|&c| crate::linalg::rat(c)).collect(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coords: vec![Rat::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(&Rat::one())
    }

    /// The rational q as a field element.
    pub fn from_rational(&self, q: &Rat) -> FieldElement {
        let mut pow = vec![Rat::zero(); self.degree];
        pow[0] = q.clone();
        FieldElement {
            coords: self
                .basis_inv
                .mul_vec(&RationalVector::new(pow))
                .entries()
                .to_vec(),
        }
    }

    /// Power-basis coordinates of an element.
    pub fn power_coords(&self, a: &FieldElement) -> Vec<Rat> {
        self.integral_basis
            .mul_vec(&RationalVector::new(a.coords.clone()))
            .entries()
            .to_vec()
    }

    fn element_from_power_coords(&self, pow: &[Rat]) -> FieldElement {
        FieldElement {
            coords: self
                .basis_inv
                .mul_vec(&RationalVector::new(pow.to_vec()))
                .entries()
                .to_vec(),
        }
    }

    /// The element as a rational number, when it lies in Q.
    pub fn as_rational(&self, a: &FieldElement) -> Option<Rat> {
        let pow = self.power_coords(a);
        pow[1..].iter().all(Rat::is_zero).then(|| pow[0].clone())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn scale(&self, a: &FieldElement, c: &Rat) -> FieldElement {
        FieldElement {
            coords: a.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let pa = self.power_coords(a);
        let pb = self.power_coords(b);
        let d = self.degree;
        let mut prod = vec![Rat::zero(); 2 * d - 1];
        for (i, x) in pa.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in pb.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let mut pow = vec![Rat::zero(); d];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                pow[j] += c * &self.reduction[k][j];
            }
        }
        self.element_from_power_coords(&pow)
    }

    /// a / b; b must be nonzero.
    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        if b.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let mb = self.multiplication_matrix(b);
        let inv = mb.invert().map_err(|_| Error::ZeroArgument)?;
        Ok(FieldElement {
            coords: inv
                .mul_vec(&RationalVector::new(a.coords.clone()))
                .entries()
                .to_vec(),
        })
    }

    /// Matrix of multiplication by `a` on the integral basis.
    pub fn multiplication_matrix(&self, a: &FieldElement) -> RationalMatrix {
        let d = self.degree;
        let cols: Vec<RationalVector> = (0..d)
            .map(|j| {
                let mut e = vec![Rat::zero(); d];
                e[j] = Rat::one();
                let prod = self.mul(a, &FieldElement { coords: e });
                RationalVector::new(prod.coords)
            })
            .collect();
        RationalMatrix::from_columns(&cols)
    }

    /// Exact trace of an element.
    pub fn trace(&self, a: &FieldElement) -> Rat {
        let pow = self.power_coords(a);
        pow.iter()
            .enumerate()
            .map(|(k, c)| c * Rat::from_integer(self.power_sums[k].clone()))
            .sum()
    }

    /// Exact Tr(a^2), the squared Euclidean norm of the Minkowski image.
    pub fn trace_of_square(&self, a: &FieldElement) -> Rat {
        self.trace(&self.mul(a, a))
    }

    /// Certified enclosure of the i-th embedding, of width at most 2^-bits.
    pub fn embedding(&self, a: &FieldElement, index: usize, bits: u32) -> RatInterval {
        let g = RatPoly::new(self.power_coords(a));
        let target = Rat::new(BigInt::one(), BigInt::one() << bits);
        // Root width must usually be a little below the target; back off in
        // big steps when the coordinate polynomial magnifies the interval.
        let mut shift = bits + 4;
        loop {
            let width = Rat::new(BigInt::one(), BigInt::one() << shift);
            let roots = self.roots_refined(&width);
            // Cached roots may be far narrower than requested; rounding them
            // outward to the matching dyadic grid keeps the arithmetic small.
            let root_iv = crate::interval::dyadic_outward(&roots[index].to_interval(), shift + 2);
            let iv = g.eval_interval(&root_iv);
            if iv.width() <= target {
                return crate::interval::dyadic_outward(&iv, bits + 2);
            }
            shift += 16;
        }
    }

    /// All embeddings at the requested precision, ascending root order.
    pub fn embeddings(&self, a: &FieldElement, bits: u32) -> Vec<RatInterval> {
        (0..self.degree)
            .map(|i| self.embedding(a, i, bits))
            .collect()
    }

    /// Exact sign of the i-th embedding; terminates because a nonzero
    /// element has no vanishing embedding.
    pub fn embedding_sign(&self, a: &FieldElement, index: usize) -> Result<i32> {
        if a.is_zero() {
            return Ok(0);
        }
        let mut bits = 32u32;
        while bits <= MAX_SIGN_BITS {
            let iv = self.embedding(a, index, bits);
            if let Some(s) = iv.definite_sign() {
                return Ok(s);
            }
            bits *= 2;
        }
        Err(Error::Undecided {
            bits: MAX_SIGN_BITS,
            what: format!("sign of embedding {index}"),
        })
    }

    /// True when every embedding is nonnegative (zero counts).
    pub fn totally_positive(&self, a: &FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        for i in 0..self.degree {
            if self.embedding_sign(a, i)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every embedding is strictly positive.
    pub fn totally_positive_strict(&self, a: &FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        self.totally_positive(a)
    }

    /// Enclosure of the sup-norm of the Minkowski image, max_i |sigma_i(a)|.
    pub fn sup_norm_interval(&self, a: &FieldElement, bits: u32) -> RatInterval {
        let mut out: Option<RatInterval> = None;
        for iv in self.embeddings(a, bits) {
            let abs = iv.abs();
            out = Some(match out {
                None => abs,
                Some(acc) => acc.max(&abs),
            });
        }
        out.expect("degree >= 1")
    }
}

// ---------------------------------------------------------------------------
// JSON form: {"poly":[c0,...,1],"integral_basis":optional matrix}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FieldJson {
    poly: Vec<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    integral_basis: Option<RationalMatrix>,
}

impl Serialize for NumberField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let poly = self
            .poly
            .iter()
            .map(|c| {
                c.to_i128()
                    .ok_or_else(|| serde::ser::Error::custom("coefficient too large"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let basis = if self.integral_basis.is_identity() {
            None
        } else {
            Some(self.integral_basis.clone())
        };
        FieldJson {
            poly,
            integral_basis: basis,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumberField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FieldJson::deserialize(d)?;
        let coeffs: Vec<BigInt> = raw.poly.iter().map(|&c| BigInt::from(c)).collect();
        init_field(&coeffs, raw.integral_basis).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

/// Parse a compact polynomial such as "x^3-3x-1" or "x^2 - x - 1".
pub fn parse_poly(input: &str) -> Result<Vec<BigInt>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty polynomial".into()));
    }
    let mut terms: Vec<(BigInt, usize)> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff_txt = &s[start..i];
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let e_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[e_start..i]
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad exponent in {input:?}")))?;
            }
        } else if coeff_txt.is_empty() {
            return Err(Error::InvalidInput(format!("bad term in {input:?}")));
        }
        let coeff = if coeff_txt.is_empty() {
            sign
        } else {
            sign * coeff_txt
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient in {input:?}")))?
        };
        terms.push((coeff, exp));
    }
    let deg = terms.iter().map(|(_, e)| *e).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};
    use num_traits::Signed;

    fn sqrt2() -> NumberField {
        init_field(&parse_poly("x^2-2").unwrap(), None).unwrap()
    }

    fn golden() -> NumberField {
        init_field(&parse_poly("x^2-x-1").unwrap(), None).unwrap()
    }

    fn cubic() -> NumberField {
        init_field(&parse_poly("x^3-3x-1").unwrap(), None).unwrap()
    }

    #[test]
    fn parse_poly_forms() {
        assert_eq!(
            parse_poly("x^2-2").unwrap(),
            vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            parse_poly("x^3 - 3x - 1").unwrap(),
            vec![
                BigInt::from(-1),
                BigInt::from(-3),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
        assert_eq!(
            parse_poly("x^2+x+1").unwrap(),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
    }

    #[test]
    fn init_field_examples() {
        let k = sqrt2();
        assert_eq!(k.discriminant(), &BigInt::from(8));
        assert_eq!(
            k.trace_gram(),
            &RationalMatrix::from_int_rows(&[&[2, 0], &[0, 4]])
        );

        let k = golden();
        assert_eq!(k.discriminant(), &BigInt::from(5));
        assert_eq!(
            k.trace_gram(),
            &RationalMatrix::from_int_rows(&[&[2, 1], &[1, 3]])
        );

        let k = cubic();
        assert_eq!(k.discriminant(), &BigInt::from(81));
    }

    #[test]
    fn init_rejects_bad_polynomials() {
        assert!(matches!(
            init_field(&parse_poly("x^2+1").unwrap(), None),
            Err(Error::NotTotallyReal { real: 0, degree: 2 })
        ));
        assert!(matches!(
            init_field(&parse_poly("x^2-4").unwrap(), None),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            init_field(&parse_poly("x^2-2x+1").unwrap(), None),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn arithmetic_in_sqrt2() {
        let k = sqrt2();
        let a = k.element_from_ints(&[2, 1]); // 2 + sqrt2
        let b = k.element_from_ints(&[2, -1]); // 2 - sqrt2
        let p = k.mul(&a, &b); // 4 - 2 = 2
        assert_eq!(k.as_rational(&p), Some(rat(2)));
        // Traces: Tr(2 + sqrt2) = 4, Tr((2+sqrt2)^2) = Tr(6 + 4 sqrt2) = 12.
        assert_eq!(k.trace(&a), rat(4));
        assert_eq!(k.trace_of_square(&a), rat(12));
        // sigma(1): both embeddings exactly 1.
        assert_eq!(k.trace_of_square(&k.one()), rat(2));
    }

    #[test]
    fn division_round_trips() {
        let k = cubic();
        let a = k.element_from_ints(&[1, 2, -1]);
        let b = k.element_from_ints(&[3, -1, 2]);
        let q = k.div(&a, &b).unwrap();
        assert_eq!(k.mul(&q, &b), a);
        assert!(k.div(&a, &k.zero()).is_err());
    }

    #[test]
    fn embeddings_and_signs() {
        let k = sqrt2();
        // Roots ascending: -sqrt2, +sqrt2.
        let theta = k.element_from_ints(&[0, 1]);
        let e = k.embeddings(&theta, 40);
        assert!(e[0].hi.is_negative());
        assert!(e[1].lo.is_positive());

        let a = k.element_from_ints(&[2, 1]); // 2 + sqrt2: totally positive
        assert!(k.totally_positive(&a).unwrap());
        let b = k.element_from_ints(&[1, 1]); // 1 + sqrt2: 1 - sqrt2 < 0
        assert!(!k.totally_positive(&b).unwrap());
        assert!(k.totally_positive(&k.zero()).unwrap());
        assert!(!k.totally_positive_strict(&k.zero()).unwrap());
    }

    #[test]
    fn embedding_interval_contains_truth() {
        let k = sqrt2();
        let a = k.element_from_ints(&[2, 1]);
        let iv = k.embedding(&a, 1, 100);
        let truth = 2.0 + 2f64.sqrt();
        let f = iv.to_f64();
        assert!(f.lo <= truth && truth <= f.hi);
        assert!(iv.width() <= Rat::new(BigInt::one(), BigInt::one() << 100));
    }

    #[test]
    fn totally_positive_closed_under_addition() {
        let k = golden();
        let candidates: Vec<FieldElement> = (-3i64..=3)
            .flat_map(|a| (-3i64..=3).map(move |b| (a, b)))
            .map(|(a, b)| k.element_from_ints(&[a, b]))
            .filter(|e| k.totally_positive(e).unwrap())
            .collect();
        for x in &candidates {
            for y in &candidates {
                assert!(k.totally_positive(&k.add(x, y)).unwrap());
            }
        }
    }

    #[test]
    fn nonstandard_integral_basis() {
        // Q(sqrt5) with basis {1, (1+sqrt5)/2}: the maximal order, disc 5.
        let w =
            RationalMatrix::from_rows(vec![vec![rat(1), ratio(1, 2)], vec![rat(0), ratio(1, 2)]]);
        let k = init_field(&parse_poly("x^2-5").unwrap(), Some(w)).unwrap();
        assert_eq!(k.discriminant(), &BigInt::from(5));
        // Power basis of x^2-5 gives the non-maximal order Z[sqrt5], disc 20.
        let k = init_field(&parse_poly("x^2-5").unwrap(), None).unwrap();
        assert_eq!(k.discriminant(), &BigInt::from(20));
    }

    #[test]
    fn field_json_round_trip() {
        let k = sqrt2();
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"poly":[-2,0,1]}"#);
        let back: NumberField = serde_json::from_str(&s).unwrap();
        assert_eq!(back.discriminant(), &BigInt::from(8));
        assert!(serde_json::from_str::<NumberField>(r#"{"poly":[1,0,1]}"#).is_err());
    }
}
