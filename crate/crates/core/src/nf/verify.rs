//! Height bounds for ideals: sup-norm minima elements, the totally positive
//! chain, and the explicit gap elements of a positive ideal basis, each with
//! its certified inequality.
//!
//! All candidate generation runs through the exact trace form (the trace
//! ball of radius sqrt(d) t contains the sup-norm ball of radius t), so set
//! membership is an integer comparison; only the final sup-norm orderings
//! and height comparisons use certified intervals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{floor_sqrt_rat, RatInterval};
use crate::linalg::{Rat, RationalMatrix, RationalVector};
use crate::minima::RankTracker;
use crate::nf::height::{weil_height, weil_height_ratio, HeightValue};
use crate::nf::ideal::{positive_ideal_basis, IdealLattice};
use crate::nf::{FieldElement, NumberField};

const HEIGHT_BITS: u32 = 96;

/// An ideal element with its coefficients and certified sup-norm enclosure.
#[derive(Clone, Debug, Serialize)]
pub struct MinimaElement {
    pub element: FieldElement,
    #[serde(serialize_with = "crate::linalg::serde_text::bigints")]
    pub coefficients: Vec<BigInt>,
    pub sup_lo: f64,
    pub sup_hi: f64,
}

/// Sup-norm successive minima elements of the ideal under the Minkowski
/// embedding: Q-linearly independent elements of minimal sup-norm, found by
/// exhausting exact trace-form balls.
pub fn ideal_sup_minima(
    field: &NumberField,
    ideal: &IdealLattice,
    count: usize,
) -> Result<Vec<(MinimaElement, RatInterval)>> {
    let d = field.degree();
    assert!(count >= 1 && count <= d);
    let gram = ideal.gram();
    let gram_inv = gram.invert()?;
    let d_rat = Rat::from_integer(BigInt::from(d as i64));

    // Starting radius near det(L_I)^(1/d) = (N^2 |disc|)^(1/2d).
    let u = ideal.norm() * ideal.norm() * field.discriminant().abs();
    let mut t = Rat::from_integer(u.nth_root(2 * d as u32).max(BigInt::one()));

    for _ in 0..24 {
        let trace_bound = &d_rat * &t * &t;
        let candidates = trace_ball(field, ideal, gram, &gram_inv, &trace_bound, None)?;
        // Sort by certified sup-norm, coefficient order on ties; cached
        // intervals settle almost every comparison.
        let mut keyed: Vec<(RatInterval, &(Vec<BigInt>, FieldElement))> = candidates
            .iter()
            .map(|c| (field.sup_norm_interval(&c.1, 48), c))
            .collect();
        keyed.sort_by(|(ia, a), (ib, b)| {
            let ord = if ia.hi < ib.lo {
                Ordering::Less
            } else if ib.hi < ia.lo {
                Ordering::Greater
            } else {
                sup_cmp(field, &a.1, &b.1)
            };
            ord.then_with(|| a.0.cmp(&b.0))
        });

        let mut tracker = RankTracker::new();
        let mut chain = Vec::with_capacity(count);
        for (_, (coeffs, el)) in keyed {
            let v = RationalVector::from_bigints(coeffs);
            if tracker.try_add(&v) {
                let sup = field.sup_norm_interval(el, 128);
                chain.push((
                    MinimaElement {
                        element: el.clone(),
                        coefficients: coeffs.clone(),
                        sup_lo: sup.to_f64().lo,
                        sup_hi: sup.to_f64().hi,
                    },
                    sup,
                ));
                if chain.len() == count {
                    break;
                }
            }
        }
        // Accept only when the largest value is certainly inside the
        // sup-norm ball the trace ball covers.
        if chain.len() == count && chain.last().unwrap().1.hi <= t {
            return Ok(chain);
        }
        t *= Rat::from_integer(BigInt::from(2));
    }
    Err(Error::FamilyDoesNotSpan {
        needed: count,
        radius: t.to_string(),
    })
}

/// Nonzero ideal elements with quadratic-form value at most `bound`,
/// optionally shifted: Q(c) = (c - center)^T G (c - center) in coefficient
/// space knows nothing of signs, so the box bounds come from the diagonal
/// of the inverse Gram matrix.
fn trace_ball(
    field: &NumberField,
    ideal: &IdealLattice,
    gram: &RationalMatrix,
    gram_inv: &RationalMatrix,
    bound: &Rat,
    center: Option<&RationalVector>,
) -> Result<Vec<(Vec<BigInt>, FieldElement)>> {
    let d = field.degree();
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for i in 0..d {
        let radius = floor_sqrt_rat(&(bound * gram_inv.at(i, i)));
        let (l, h) = match center {
            None => (-radius.clone(), radius),
            Some(c) => {
                let ci = c.at(i);
                (
                    (ci - Rat::from_integer(radius.clone())).ceil().to_integer(),
                    (ci + Rat::from_integer(radius)).floor().to_integer(),
                )
            }
        };
        lo.push(
            l.to_i64()
                .ok_or_else(|| Error::InvalidInput("radius overflow".into()))?,
        );
        hi.push(
            h.to_i64()
                .ok_or_else(|| Error::InvalidInput("radius overflow".into()))?,
        );
    }
    let mut out = Vec::new();
    let mut cursor: Vec<i64> = lo.clone();
    'walk: loop {
        let coeffs: Vec<BigInt> = cursor.iter().map(|&c| BigInt::from(c)).collect();
        // Without a center the set is symmetric; +v and -v have the same
        // sup-norm and span, so keep one representative per sign pair.
        let keep = match center {
            Some(_) => true,
            None => cursor.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0),
        };
        if keep {
            let q = match center {
                None => quad_form(gram, &coeffs),
                Some(c) => {
                    let diff = RationalVector::from_bigints(&coeffs).sub(c);
                    quad_form_rat(gram, &diff)
                }
            };
            if q <= *bound {
                let el = ideal.element(field, &coeffs);
                out.push((coeffs, el));
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                break 'walk;
            }
            cursor[i] += 1;
            if cursor[i] <= hi[i] {
                break;
            }
            cursor[i] = lo[i];
            i += 1;
        }
    }
    Ok(out)
}

fn quad_form(gram: &RationalMatrix, c: &[BigInt]) -> Rat {
    let d = c.len();
    let mut acc = Rat::zero();
    for i in 0..d {
        for j in 0..d {
            acc += gram.at(i, j) * Rat::from_integer(&c[i] * &c[j]);
        }
    }
    acc
}

fn quad_form_rat(gram: &RationalMatrix, c: &RationalVector) -> Rat {
    let d = c.dim();
    let mut acc = Rat::zero();
    for i in 0..d {
        for j in 0..d {
            acc += gram.at(i, j) * (c.at(i) * c.at(j));
        }
    }
    acc
}

/// Certified comparison of sup-norms, falling back to Equal when the values
/// coincide to 384 bits (conjugate elements genuinely tie).
fn sup_cmp(field: &NumberField, a: &FieldElement, b: &FieldElement) -> Ordering {
    for bits in [96u32, 192, 384] {
        let sa = field.sup_norm_interval(a, bits);
        let sb = field.sup_norm_interval(b, bits);
        if sa.hi < sb.lo {
            return Ordering::Less;
        }
        if sb.hi < sa.lo {
            return Ordering::Greater;
        }
    }
    Ordering::Equal
}

// ---------------------------------------------------------------------------
// The three bound checks
// ---------------------------------------------------------------------------

/// Comparison of an interval product against an interval bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub lhs_lo: f64,
    pub lhs_hi: f64,
    pub rhs_lo: f64,
    pub rhs_hi: f64,
    /// Certified lhs <= rhs (upper end of lhs below lower end of rhs).
    pub holds: bool,
}

fn bound_check(lhs: &RatInterval, rhs: &RatInterval) -> BoundCheck {
    BoundCheck {
        lhs_lo: lhs.to_f64().lo,
        lhs_hi: lhs.to_f64().hi,
        rhs_lo: rhs.to_f64().lo,
        rhs_hi: rhs.to_f64().hi,
        holds: lhs.hi <= rhs.lo,
    }
}

/// sqrt(N^2 |disc|) as a certified interval: the determinant of the ideal
/// lattice.
fn ideal_det_interval(field: &NumberField, ideal: &IdealLattice, bits: u32) -> RatInterval {
    let u = ideal.norm() * ideal.norm() * field.discriminant().abs();
    RatInterval::point(Rat::from_integer(u)).sqrt(bits)
}

/// Part one: independent elements with height product below the lattice
/// determinant.
#[derive(Clone, Debug, Serialize)]
pub struct MinimaHeightPart {
    pub elements: Vec<MinimaElement>,
    pub heights: Vec<HeightValue>,
    pub check: BoundCheck,
}

pub fn verify_minima_heights(
    field: &NumberField,
    ideal: &IdealLattice,
) -> Result<MinimaHeightPart> {
    let d = field.degree();
    let chain = ideal_sup_minima(field, ideal, d)?;
    let mut heights = Vec::with_capacity(d);
    let mut prod = RatInterval::point(Rat::one());
    for (m, _) in &chain {
        let h = weil_height(field, &m.element, HEIGHT_BITS)?;
        prod = prod.mul(&h.interval());
        heights.push(h);
    }
    let rhs = ideal_det_interval(field, ideal, 96);
    let check = bound_check(&prod, &rhs);
    Ok(MinimaHeightPart {
        elements: chain.into_iter().map(|(m, _)| m).collect(),
        heights,
        check,
    })
}

/// Part two: a totally positive independent chain with the dimensional
/// height-product bound.
#[derive(Clone, Debug, Serialize)]
pub struct PositiveChainPart {
    pub anchor: FieldElement,
    pub elements: Vec<FieldElement>,
    pub heights: Vec<HeightValue>,
    pub independent: bool,
    pub totally_positive: bool,
    pub check: BoundCheck,
}

pub fn verify_positive_chain(
    field: &NumberField,
    ideal: &IdealLattice,
) -> Result<PositiveChainPart> {
    let chain = ideal_sup_minima(field, ideal, field.degree())?;
    verify_positive_chain_with(field, ideal, &chain)
}

fn verify_positive_chain_with(
    field: &NumberField,
    ideal: &IdealLattice,
    chain: &[(MinimaElement, RatInterval)],
) -> Result<PositiveChainPart> {
    let d = field.degree();
    let gram = ideal.gram();
    let gram_inv = gram.invert()?;

    // Jarnik upper bound on the covering radius of the ideal lattice, as an
    // exact rational: sqrt(d)/2 * sum of the sup-norm minima upper bounds.
    let sqrt_d = RatInterval::point(Rat::from_integer(BigInt::from(d as i64))).sqrt(64);
    let lambda_sum: Rat = chain.iter().map(|(_, iv)| iv.hi.clone()).sum();
    let r = sqrt_d.hi * lambda_sum / Rat::from_integer(BigInt::from(2));

    // Anchor y: an ideal element inside the trace ball of radius r around
    // (r+1) * 1, whose embeddings therefore lie in [1, 2r+1].
    let shift = field.from_rational(&(&r + Rat::one()));
    let center = ideal
        .basis()
        .invert()?
        .mul_vec(&RationalVector::new(shift.coords().to_vec()));
    let r_sq = &r * &r;
    let mut candidates = trace_ball(field, ideal, gram, &gram_inv, &r_sq, Some(&center))?;
    candidates.retain(|(_, el)| {
        let e = field.sub(el, &shift);
        field.trace_of_square(&e) <= r_sq
    });
    candidates.sort_by(|a, b| a.0.cmp(&b.0));
    let (y_coeffs, y) = candidates.into_iter().next().ok_or(Error::EmptyBox)?;

    // Index j with y outside the span of the other minima elements.
    let mut j_pick = None;
    for j in 0..d {
        let mut cols: Vec<RationalVector> = (0..d)
            .filter(|&i| i != j)
            .map(|i| RationalVector::from_bigints(&chain[i].0.coefficients))
            .collect();
        cols.push(RationalVector::from_bigints(&y_coeffs));
        if !RationalMatrix::from_columns(&cols).det()?.is_zero() {
            j_pick = Some(j);
            break;
        }
    }
    let j = j_pick.ok_or_else(|| Error::InvalidInput("anchor inside minima span".into()))?;

    let mut elements = vec![y.clone()];
    let mut coeff_cols = vec![RationalVector::from_bigints(&y_coeffs)];
    for (i, (m, sup)) in chain.iter().enumerate() {
        if i == j {
            continue;
        }
        let mult = ceil_of_sup(field, &m.element, sup)?;
        let p = field.add(&field.scale(&y, &Rat::from_integer(mult)), &m.element);
        coeff_cols.push(RationalVector::from_bigints(
            &ideal.member(&p).expect("ideal is closed under the chain"),
        ));
        elements.push(p);
    }
    let independent = !RationalMatrix::from_columns(&coeff_cols).det()?.is_zero();
    let mut totally_positive = true;
    for e in &elements {
        if !field.totally_positive(e)? {
            totally_positive = false;
        }
    }

    let mut heights = Vec::with_capacity(d);
    let mut prod = RatInterval::point(Rat::one());
    for e in &elements {
        let h = weil_height(field, e, HEIGHT_BITS)?;
        prod = prod.mul(&h.interval());
        heights.push(h);
    }
    // (3 d sqrt(d))^d (N sqrt|disc|)^(d+1)
    //   = 3^d N^(d+1) sqrt(d^(3d) |disc|^(d+1)).
    let d_big = BigInt::from(d as i64);
    let inner = d_big.pow(3 * d as u32) * field.discriminant().abs().pow(d as u32 + 1);
    let scale = Rat::from_integer(BigInt::from(3).pow(d as u32) * ideal.norm().pow(d as u32 + 1));
    let rhs = RatInterval::point(Rat::from_integer(inner))
        .sqrt(96)
        .mul_rat(&scale);
    let check = bound_check(&prod, &rhs);
    Ok(PositiveChainPart {
        anchor: y,
        elements,
        heights,
        independent,
        totally_positive,
        check,
    })
}

/// Exact ceiling of the sup-norm of an element: rational elements resolve
/// exactly, irrational sup-norms are never integers so refinement decides.
fn ceil_of_sup(field: &NumberField, el: &FieldElement, sup: &RatInterval) -> Result<BigInt> {
    if let Some(q) = field.as_rational(el) {
        return Ok(q.abs().ceil().to_integer());
    }
    let mut iv = sup.clone();
    let mut bits = 128u32;
    loop {
        let clo = iv.lo.ceil().to_integer();
        let chi = iv.hi.ceil().to_integer();
        if clo == chi {
            return Ok(clo);
        }
        bits *= 2;
        if bits > 4096 {
            return Err(Error::Undecided {
                bits,
                what: "ceiling of sup-norm".into(),
            });
        }
        iv = field.sup_norm_interval(el, bits);
    }
}

/// Part three: the explicit gaps of a positive ideal basis with their
/// per-index height bounds.
#[derive(Clone, Debug, Serialize)]
pub struct GapElementCheck {
    pub index: usize,
    #[serde(serialize_with = "crate::linalg::serde_text::bigint")]
    pub multiplier: BigInt,
    pub gap: FieldElement,
    #[serde(serialize_with = "crate::linalg::serde_text::bigints")]
    pub basis_coefficients: Vec<BigInt>,
    pub totally_positive: bool,
    pub height: HeightValue,
    pub check: BoundCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapBoundPart {
    pub beta: Vec<FieldElement>,
    pub gaps: Vec<GapElementCheck>,
    pub independent: bool,
    pub all_hold: bool,
}

pub fn verify_gap_bounds(
    field: &NumberField,
    ideal: &IdealLattice,
    beta: &[FieldElement],
) -> Result<GapBoundPart> {
    let d = field.degree();
    if beta.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: beta.len(),
        });
    }
    // Validate: a totally positive Z-basis of the ideal.
    let mut coeff_cols = Vec::with_capacity(d);
    for b in beta {
        if !field.totally_positive(b)? {
            return Err(Error::InvalidInput(
                "basis element is not totally positive".into(),
            ));
        }
        let c = ideal.member(b).ok_or(Error::NotInLattice)?;
        coeff_cols.push(RationalVector::from_bigints(&c));
    }
    let change = RationalMatrix::from_columns(&coeff_cols);
    if change.det()?.abs() != Rat::one() {
        return Err(Error::NotABasis);
    }

    let mut gaps = Vec::with_capacity(d);
    let mut gap_cols = Vec::with_capacity(d);
    for i in 0..d {
        // beta'_i = sum of the other basis elements.
        let mut bp = field.zero();
        for (j, b) in beta.iter().enumerate() {
            if j != i {
                bp = field.add(&bp, b);
            }
        }
        let a = floor_ratio_max(field, &beta[i], &bp)? + BigInt::one();
        let gap = field.sub(&field.scale(&bp, &Rat::from_integer(a.clone())), &beta[i]);
        let basis_coefficients: Vec<BigInt> = (0..d)
            .map(|j| if j == i { -BigInt::one() } else { a.clone() })
            .collect();
        let totally_positive = field.totally_positive(&gap)?;
        let height = weil_height(field, &gap, HEIGHT_BITS)?;
        // Bound: (h(beta_i / beta'_i)^d + 1) * h(beta'_i)^d.
        let hr = weil_height_ratio(field, &beta[i], &bp, HEIGHT_BITS)?;
        let hb = weil_height(field, &bp, HEIGHT_BITS)?;
        let rhs = hr
            .interval()
            .pow(d as u32)
            .add_rat(&Rat::one())
            .mul(&hb.interval().pow(d as u32));
        let check = bound_check(&height.interval(), &rhs);
        gap_cols.push(RationalVector::new(gap.coords().to_vec()));
        gaps.push(GapElementCheck {
            index: i,
            multiplier: a,
            gap,
            basis_coefficients,
            totally_positive,
            height,
            check,
        });
    }
    let independent = !RationalMatrix::from_columns(&gap_cols).det()?.is_zero();
    let all_hold = gaps.iter().all(|g| g.check.holds && g.totally_positive);
    Ok(GapBoundPart {
        beta: beta.to_vec(),
        gaps,
        independent,
        all_hold,
    })
}

/// max_k floor(sigma_k(num) / sigma_k(den)) over embeddings, decided by
/// refinement; an exact integer ratio at one embedding would force
/// num = n * den globally, impossible for independent basis elements.
fn floor_ratio_max(field: &NumberField, num: &FieldElement, den: &FieldElement) -> Result<BigInt> {
    let d = field.degree();
    let mut bits = 64u32;
    'outer: loop {
        let en = field.embeddings(num, bits);
        let ed = field.embeddings(den, bits);
        let mut best: Option<BigInt> = None;
        for k in 0..d {
            if !ed[k].lo.is_positive() {
                bits *= 2;
                if bits > 4096 {
                    return Err(Error::Undecided {
                        bits,
                        what: "denominator sign".into(),
                    });
                }
                continue 'outer;
            }
            let ratio = en[k].div(&ed[k]);
            let flo = ratio.lo.floor().to_integer();
            let fhi = ratio.hi.floor().to_integer();
            if flo != fhi {
                bits *= 2;
                if bits > 4096 {
                    return Err(Error::Undecided {
                        bits,
                        what: "integer part of embedding ratio".into(),
                    });
                }
                continue 'outer;
            }
            best = Some(match best {
                None => flo,
                Some(b) => b.max(flo),
            });
        }
        return Ok(best.expect("degree >= 1"));
    }
}

// ---------------------------------------------------------------------------
// Full record
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct IdealGapsRecord {
    pub det_identity_holds: bool,
    pub minima_part: MinimaHeightPart,
    pub chain_part: PositiveChainPart,
    pub gap_part: GapBoundPart,
    pub all_pass: bool,
}

/// Run the whole pipeline: determinant identity, minima height product,
/// totally positive chain, and per-index gap bounds. When no basis is
/// supplied one is generated from the seed.
pub fn verify_ideal_gaps(
    field: &NumberField,
    ideal: &IdealLattice,
    beta: Option<Vec<FieldElement>>,
    seed: u64,
) -> Result<IdealGapsRecord> {
    let det_identity_holds = ideal.det_identity_holds(field);
    let chain = ideal_sup_minima(field, ideal, field.degree())?;
    let mut heights = Vec::with_capacity(chain.len());
    let mut prod = RatInterval::point(Rat::one());
    for (m, _) in &chain {
        let h = weil_height(field, &m.element, HEIGHT_BITS)?;
        prod = prod.mul(&h.interval());
        heights.push(h);
    }
    let minima_part = MinimaHeightPart {
        elements: chain.iter().map(|(m, _)| m.clone()).collect(),
        heights,
        check: bound_check(&prod, &ideal_det_interval(field, ideal, 96)),
    };
    let chain_part = verify_positive_chain_with(field, ideal, &chain)?;
    let beta = match beta {
        Some(b) => b,
        None => positive_ideal_basis(field, ideal, seed)?,
    };
    let gap_part = verify_gap_bounds(field, ideal, &beta)?;
    let all_pass = det_identity_holds
        && minima_part.check.holds
        && chain_part.check.holds
        && chain_part.independent
        && chain_part.totally_positive
        && gap_part.independent
        && gap_part.all_hold;
    Ok(IdealGapsRecord {
        det_identity_holds,
        minima_part,
        chain_part,
        gap_part,
        all_pass,
    })
}
