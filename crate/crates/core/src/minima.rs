//! Successive minima, covering radii, and the constructive bounds relating
//! them to the positive semigroup.
//!
//! Minima are with respect to the centered cube (sup-norm), so their values
//! are exact rationals: the search enumerates growing cubes, sorts by norm,
//! and greedily extracts an independent chain. The covering radius is
//! Euclidean; in the plane it is computed exactly from an obtuse superbase
//! (the largest Delaunay circumradius), in higher dimensions it is bracketed
//! by a sampled lower bound and Jarnik's inequality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::enumerate::{enumerate, family_points, Family, LatticePoint, Region};
use crate::error::{Error, Result};
use crate::interval::{f64_above, f64_below, RatInterval};
use crate::lattice::{Cone, Lattice, PositiveBasis};
use crate::linalg::{Rat, RationalMatrix, RationalVector};
use crate::semigroup::gap_norm_bound;

// ---------------------------------------------------------------------------
// Successive minima
// ---------------------------------------------------------------------------

/// Values and witnesses of one family of successive minima.
#[derive(Clone, Debug, Serialize)]
pub struct MinimaSlice {
    #[serde(serialize_with = "crate::linalg::serde_text::rationals")]
    pub values: Vec<Rat>,
    pub witnesses: Vec<RationalVector>,
}

/// Report for the three families of a (lattice, positive basis) pair.
#[derive(Clone, Debug, Serialize)]
pub struct MinimaReport {
    pub lambda: MinimaSlice,
    pub lambda_plus: MinimaSlice,
    /// Absent for an orthogonal basis (the gap set is empty).
    pub lambda_gaps: Option<MinimaSlice>,
}

/// Incremental exact rank tracking by reduced elimination.
pub(crate) struct RankTracker {
    rows: Vec<RationalVector>,
    pivots: Vec<usize>,
}

impl RankTracker {
    pub(crate) fn new() -> Self {
        Self {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Returns true (and absorbs the vector) if it is independent of the
    /// current span.
    pub(crate) fn try_add(&mut self, v: &RationalVector) -> bool {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w.at(p).is_zero() {
                let f = w.at(p) / row.at(p);
                w = w.sub(&row.scale(&f));
            }
        }
        match w.entries().iter().position(|e| !e.is_zero()) {
            Some(p) => {
                self.rows.push(w);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

/// Exact successive minima of the family with respect to the sup-norm cube.
///
/// Enumerates cubes of doubling radius until `count` independent points are
/// found; the values are then exact because the final cube contains every
/// point of norm up to the largest reported value.
pub fn successive_minima(lattice: &Lattice, family: &Family, count: usize) -> Result<MinimaSlice> {
    let d = lattice.dim();
    assert!(count >= 1 && count <= d);
    if let Family::Gaps(x) | Family::ConeGaps(_, x) = family {
        if x.is_orthogonal() {
            return Err(Error::OrthogonalBasis);
        }
    }
    // Starting radius near det^(1/d), the Minkowski scale of the lattice.
    let det = lattice.det_abs();
    let t0 = det
        .numer()
        .div_ceil(det.denom())
        .nth_root(d as u32)
        .max(BigInt::one());
    let mut t = Rat::from_integer(t0);
    for _ in 0..24 {
        let mut pts = family_points(lattice, &Region::Cube(t.clone()), family)?;
        pts.sort_by(|a, b| {
            a.point
                .sup_norm()
                .cmp(&b.point.sup_norm())
                .then_with(|| a.coefficients.cmp(&b.coefficients))
        });
        let mut tracker = RankTracker::new();
        let mut values = Vec::with_capacity(count);
        let mut witnesses = Vec::with_capacity(count);
        for p in &pts {
            if tracker.try_add(&p.point) {
                values.push(p.point.sup_norm());
                witnesses.push(p.point.clone());
                if values.len() == count {
                    return Ok(MinimaSlice { values, witnesses });
                }
            }
        }
        t *= Rat::from_integer(BigInt::from(2));
    }
    Err(Error::FamilyDoesNotSpan {
        needed: count,
        radius: t.to_string(),
    })
}

/// All three minima families for a lattice with a positive basis.
pub fn minima_report(lattice: &Lattice, basis: &PositiveBasis) -> Result<MinimaReport> {
    let d = lattice.dim();
    let lambda = successive_minima(lattice, &Family::Plain, d)?;
    let lambda_plus = successive_minima(lattice, &Family::Plus, d)?;
    let lambda_gaps = if basis.is_orthogonal() {
        None
    } else {
        Some(successive_minima(lattice, &Family::Gaps(basis), d)?)
    };
    Ok(MinimaReport {
        lambda,
        lambda_plus,
        lambda_gaps,
    })
}

// ---------------------------------------------------------------------------
// Covering radius
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RadiusMethod {
    #[serde(rename = "EXACT_2D")]
    Exact2d,
    #[serde(rename = "JARNIK_UPPER")]
    JarnikUpper,
    #[serde(rename = "SAMPLED_LOWER")]
    SampledLower,
}

/// Certified bracket on the Euclidean covering radius.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringRadius {
    pub lo: f64,
    pub hi: f64,
    pub methods: Vec<RadiusMethod>,
    /// Exact squared covering radius when the planar method applies.
    #[serde(serialize_with = "crate::linalg::serde_text::optional_rational")]
    pub exact_sq: Option<Rat>,
    /// Rational bounds usable in exact comparisons downstream.
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub lower_rational: Rat,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub upper_rational: Rat,
    pub sampled_lower: f64,
    pub jarnik_upper: f64,
}

const SQRT_BITS: u32 = 64;

/// Covering radius of the lattice.
pub fn covering_radius(lattice: &Lattice) -> Result<CoveringRadius> {
    let d = lattice.dim();
    let lambda = successive_minima(lattice, &Family::Plain, d)?;

    // Jarnik: mu <= (sqrt(d)/2) * sum lambda_i, an upper bound in any case.
    let sum: Rat = lambda.values.iter().sum();
    let sqrt_d = RatInterval::point(Rat::from_integer(BigInt::from(d))).sqrt(SQRT_BITS);
    let jarnik_hi = sqrt_d.hi.clone() * &sum / Rat::from_integer(BigInt::from(2));

    // Sampled lower bound: the deepest grid point of a fundamental domain.
    let deep_sq = sampled_deep_hole_sq(lattice);
    let sampled_lo_rat = RatInterval::point(deep_sq.clone()).sqrt(SQRT_BITS).lo;

    if d == 2 {
        let mu_sq = planar_covering_radius_sq(lattice);
        let iv = RatInterval::point(mu_sq.clone()).sqrt(SQRT_BITS);
        return Ok(CoveringRadius {
            lo: f64_below(&iv.lo),
            hi: f64_above(&iv.hi),
            methods: vec![
                RadiusMethod::Exact2d,
                RadiusMethod::JarnikUpper,
                RadiusMethod::SampledLower,
            ],
            exact_sq: Some(mu_sq),
            lower_rational: iv.lo,
            upper_rational: iv.hi,
            sampled_lower: f64_below(&sampled_lo_rat),
            jarnik_upper: f64_above(&jarnik_hi),
        });
    }

    Ok(CoveringRadius {
        lo: f64_below(&sampled_lo_rat),
        hi: f64_above(&jarnik_hi),
        methods: vec![RadiusMethod::JarnikUpper, RadiusMethod::SampledLower],
        exact_sq: None,
        sampled_lower: f64_below(&sampled_lo_rat),
        jarnik_upper: f64_above(&jarnik_hi),
        lower_rational: sampled_lo_rat,
        upper_rational: jarnik_hi,
    })
}

/// Exact squared covering radius of a planar lattice: Lagrange-reduce the
/// basis, flip a sign to get an obtuse superbase, and take the circumradius
/// of the Delaunay triangle (0, v1, v1+v2). All its angles are at most pi/2,
/// so the circumcenter is a deep hole.
fn planar_covering_radius_sq(lattice: &Lattice) -> Rat {
    let mut b1 = lattice.basis().column(0);
    let mut b2 = lattice.basis().column(1);
    if b1.norm_sq() > b2.norm_sq() {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        // Nearest-integer reduction of b2 by b1.
        let m = round_rat(&(b1.dot(&b2) / b1.norm_sq()));
        if !m.is_zero() {
            b2 = b2.sub(&b1.scale(&Rat::from_integer(m)));
        }
        if b2.norm_sq() < b1.norm_sq() {
            std::mem::swap(&mut b1, &mut b2);
        } else {
            break;
        }
    }
    if b1.dot(&b2).is_positive() {
        b2 = b2.scale(&-Rat::one());
    }
    let v12 = b1.add(&b2);
    let (a2, b2n, c2) = (b1.norm_sq(), b2.norm_sq(), v12.norm_sq());
    let det = b1.at(0) * b2.at(1) - b1.at(1) * b2.at(0);
    // R^2 = a^2 b^2 c^2 / (16 * area^2), with area = |det| / 2.
    a2 * b2n * c2 / (Rat::from_integer(BigInt::from(4)) * &det * &det)
}

fn round_rat(x: &Rat) -> BigInt {
    (x + Rat::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer()
}

/// Largest certified distance from a grid of fundamental-domain points to
/// the lattice; any such distance is a lower bound on the covering radius.
fn sampled_deep_hole_sq(lattice: &Lattice) -> Rat {
    let d = lattice.dim();
    let n: i64 = if d == 2 { 8 } else { 4 };
    let mut best = Rat::zero();
    let mut fracs = vec![0i64; d];
    loop {
        let u = lattice.basis().mul_vec(&RationalVector::new(
            fracs
                .iter()
                .map(|&k| Rat::new(BigInt::from(k), BigInt::from(n)))
                .collect(),
        ));
        let dist = exact_distance_sq(lattice, &u);
        if dist > best {
            best = dist;
        }
        // Advance the mixed-radix counter.
        let mut i = 0;
        loop {
            if i == d {
                return best;
            }
            fracs[i] += 1;
            if fracs[i] < n {
                break;
            }
            fracs[i] = 0;
            i += 1;
        }
    }
}

/// Exact squared distance from `u` to the lattice: start from the rounded
/// coefficient vector, then enumerate every lattice point inside the ball of
/// that provisional distance.
fn exact_distance_sq(lattice: &Lattice, u: &RationalVector) -> Rat {
    let d = lattice.dim();
    let coeffs = lattice.basis_inverse().mul_vec(u);
    let rounded: Vec<BigInt> = coeffs.entries().iter().map(round_rat).collect();
    let p0 = lattice.point(&rounded);
    let mut best = p0.sub(u).norm_sq();
    if best.is_zero() {
        return best;
    }
    // Coefficient box guaranteed to contain every candidate nearer than the
    // provisional point: |a_i - c_i| <= r * |row_i of inverse|_2.
    let r_sq = best.clone();
    let mut offsets = Vec::with_capacity(d);
    for i in 0..d {
        let row_sq: Rat = (0..d)
            .map(|j| lattice.basis_inverse().at(i, j) * lattice.basis_inverse().at(i, j))
            .sum();
        let bound_sq = &r_sq * row_sq;
        let bound = RatInterval::point(bound_sq).sqrt(16).hi.ceil().to_integer();
        offsets.push(bound.to_i64().unwrap_or(3).min(6));
    }
    let mut cursor = vec![0i64; d];
    for i in 0..d {
        cursor[i] = -offsets[i];
    }
    loop {
        let cand: Vec<BigInt> = (0..d).map(|i| &rounded[i] + cursor[i]).collect();
        let dist = lattice.point(&cand).sub(u).norm_sq();
        if dist < best {
            best = dist;
        }
        let mut i = 0;
        loop {
            if i == d {
                return best;
            }
            cursor[i] += 1;
            if cursor[i] <= offsets[i] {
                break;
            }
            cursor[i] = -offsets[i];
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Constructive lemmas
// ---------------------------------------------------------------------------

/// A lattice point in the shifted box [1, 2r+1]^d, the lexicographically
/// smallest one. Also reports whether the inscribed ball B(r) + (r+1)*(1..1)
/// contains a lattice point, which is the covering-property certificate.
#[derive(Clone, Debug, Serialize)]
pub struct BoxPoint {
    pub point: RationalVector,
    #[serde(serialize_with = "crate::linalg::serde_text::bigints")]
    pub coefficients: Vec<BigInt>,
    pub ball_nonempty: bool,
}

pub fn positive_box_point(lattice: &Lattice, r: &Rat) -> Result<BoxPoint> {
    if !r.is_positive() {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let d = lattice.dim();
    let one = Rat::one();
    let two_r_plus_1 = Rat::from_integer(BigInt::from(2)) * r + &one;
    let center = RationalVector::new(vec![r + &one; d]);
    let r_sq = r * r;

    // The box sits inside the origin-centered cube of radius 2r+1.
    let pts = enumerate(lattice, &Region::Cube(two_r_plus_1.clone()))?;
    let mut best: Option<&LatticePoint> = None;
    let mut ball_nonempty = false;
    for p in &pts {
        let in_box = p
            .point
            .entries()
            .iter()
            .all(|e| *e >= one && *e <= two_r_plus_1);
        if !in_box {
            continue;
        }
        if !ball_nonempty && p.point.sub(&center).norm_sq() <= r_sq {
            ball_nonempty = true;
        }
        if best.is_none() {
            best = Some(p);
        }
    }
    let best = best.ok_or(Error::EmptyBox)?;
    Ok(BoxPoint {
        point: best.point.clone(),
        coefficients: best.coefficients.clone(),
        ball_nonempty,
    })
}

/// One element of the constructed chain in L+.
#[derive(Clone, Debug, Serialize)]
pub struct ChainPoint {
    pub point: RationalVector,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub sup_norm: Rat,
    /// Bound 2 lambda_i (mu + 1) from the theorem, as a rational bracket
    /// (for the anchor point the bound is 2 mu + 1).
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub target_lo: Rat,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub target_hi: Rat,
}

/// d independent points of L+ built from the box point y and minima
/// witnesses x_i: the chain {y} painted with {ceil(lambda_i) y + x_i}.
#[derive(Clone, Debug, Serialize)]
pub struct PlusChain {
    pub points: Vec<ChainPoint>,
    pub independent: bool,
}

pub fn construct_plus_chain(lattice: &Lattice, mu: &CoveringRadius) -> Result<PlusChain> {
    let d = lattice.dim();
    let r = &mu.upper_rational;
    let y = positive_box_point(lattice, r)?;
    let lambda = successive_minima(lattice, &Family::Plain, d)?;

    // Index j with y outside the span of the other witnesses.
    let mut j_found = None;
    for j in 0..d {
        let mut cols: Vec<RationalVector> = (0..d)
            .filter(|&i| i != j)
            .map(|i| lambda.witnesses[i].clone())
            .collect();
        cols.push(y.point.clone());
        if !RationalMatrix::from_columns(&cols).det()?.is_zero() {
            j_found = Some(j);
            break;
        }
    }
    let j = j_found.expect("witness spans exist");

    let two = Rat::from_integer(BigInt::from(2));
    let one = Rat::one();
    let mut points = Vec::with_capacity(d);
    points.push(ChainPoint {
        point: y.point.clone(),
        sup_norm: y.point.sup_norm(),
        target_lo: &two * &mu.lower_rational + &one,
        target_hi: &two * &mu.upper_rational + &one,
    });
    let mut cols = vec![y.point.clone()];
    for i in 0..d {
        if i == j {
            continue;
        }
        let m = lambda.values[i].ceil().to_integer();
        let p = y
            .point
            .scale(&Rat::from_integer(m))
            .add(&lambda.witnesses[i]);
        debug_assert!(p.is_nonnegative());
        points.push(ChainPoint {
            sup_norm: p.sup_norm(),
            target_lo: &two * &lambda.values[i] * (&mu.lower_rational + &one),
            target_hi: &two * &lambda.values[i] * (&mu.upper_rational + &one),
            point: p.clone(),
        });
        cols.push(p);
    }
    let independent = !RationalMatrix::from_columns(&cols).det()?.is_zero();
    Ok(PlusChain {
        points,
        independent,
    })
}

// ---------------------------------------------------------------------------
// Theorem verification
// ---------------------------------------------------------------------------

/// One verified inequality with exact rational sides (the right side may be
/// a bracket when it involves the covering radius).
#[derive(Clone, Debug, Serialize)]
pub struct Inequality {
    pub name: String,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub lhs: Rat,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub rhs_lo: Rat,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub rhs_hi: Rat,
    /// lhs <= rhs_hi, the check against the certified upper bound.
    pub holds: bool,
    /// lhs <= rhs_lo: holds even against the lower end of the bracket.
    pub holds_strongly: bool,
}

fn make_inequality(name: impl Into<String>, lhs: Rat, rhs_lo: Rat, rhs_hi: Rat) -> Inequality {
    Inequality {
        name: name.into(),
        holds: lhs <= rhs_hi,
        holds_strongly: lhs <= rhs_lo,
        lhs,
        rhs_lo,
        rhs_hi,
    }
}

/// Verification record for the restricted-minima theorem on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct SmallGapRecord {
    pub inequalities: Vec<Inequality>,
    pub minima: MinimaReport,
    pub covering: CoveringRadius,
    /// Set when the gap clause was skipped (orthogonal basis).
    pub gap_clause_skipped: Option<String>,
    pub all_hold: bool,
}

/// Check lambda_1(L+) <= 2 mu + 1, lambda_i(L+) <= 2 lambda_i (mu + 1), and
/// lambda_d(L+, X) against the exact closed-form gap bound.
pub fn verify_small_gap(lattice: &Lattice, basis: &PositiveBasis) -> Result<SmallGapRecord> {
    let d = lattice.dim();
    let minima = minima_report(lattice, basis)?;
    let covering = covering_radius(lattice)?;
    let two = Rat::from_integer(BigInt::from(2));
    let one = Rat::one();

    let mut inequalities = Vec::new();
    inequalities.push(make_inequality(
        "lambda_1(L+) <= 2 mu + 1",
        minima.lambda_plus.values[0].clone(),
        &two * &covering.lower_rational + &one,
        &two * &covering.upper_rational + &one,
    ));
    for i in 1..d {
        inequalities.push(make_inequality(
            format!("lambda_{}(L+) <= 2 lambda_{} (mu + 1)", i + 1, i + 1),
            minima.lambda_plus.values[i].clone(),
            &two * &minima.lambda.values[i] * (&covering.lower_rational + &one),
            &two * &minima.lambda.values[i] * (&covering.upper_rational + &one),
        ));
    }

    let mut gap_clause_skipped = None;
    if basis.is_orthogonal() {
        gap_clause_skipped =
            Some("basis is orthogonal: the gap set is empty and the gap bound is skipped".into());
    } else {
        basis.check_hyperplane_condition()?;
        let bound = gap_norm_bound(basis)?;
        let lambda_gaps = minima
            .lambda_gaps
            .as_ref()
            .expect("non-orthogonal basis has gaps");
        inequalities.push(make_inequality(
            format!("lambda_{d}(L+, X) <= gap-vector bound"),
            lambda_gaps.values[d - 1].clone(),
            bound.clone(),
            bound,
        ));
    }

    let all_hold = inequalities.iter().all(|i| i.holds);
    Ok(SmallGapRecord {
        inequalities,
        minima,
        covering,
        gap_clause_skipped,
        all_hold,
    })
}

/// Verification record for the general-cone transfer bounds.
#[derive(Clone, Debug, Serialize)]
pub struct GenSmallRecord {
    pub inequalities: Vec<Inequality>,
    #[serde(serialize_with = "crate::linalg::serde_text::rationals")]
    pub lambda_cone: Vec<Rat>,
    #[serde(serialize_with = "crate::linalg::serde_text::rationals")]
    pub lambda_m_plus: Vec<Rat>,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub lambda_cone_gaps_d: Rat,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub lambda_m_gaps_d: Rat,
    pub all_hold: bool,
}

/// Check the sandwich lambda_i(M+) / (d |Y^-1|) <= lambda_i(L(Y)) <=
/// d |Y| lambda_i(M+) and the gap transfer
/// lambda_d(L(Y), X) <= d |Y| lambda_d(M+, Y^-1 X). The basis `x` must be a
/// positive basis of the transported lattice M = Y^-1 L.
pub fn verify_gen_small(
    lattice: &Lattice,
    cone: &Cone,
    x: &PositiveBasis,
) -> Result<GenSmallRecord> {
    let d = lattice.dim();
    let m = lattice.transport(cone)?;
    if !m.same_lattice(x.lattice()) {
        return Err(Error::InvalidInput(
            "basis must generate the transported lattice Y^-1 L".into(),
        ));
    }
    let y_norm = cone.generators().sup_norm();
    let y_inv_norm = cone.inverse().sup_norm();
    let d_rat = Rat::from_integer(BigInt::from(d));

    let lambda_m_plus = successive_minima(&m, &Family::Plus, d)?;
    let lambda_cone = successive_minima(lattice, &Family::InCone(cone), d)?;
    let lambda_m_gaps = successive_minima(&m, &Family::Gaps(x), d)?;
    let lambda_cone_gaps = successive_minima(lattice, &Family::ConeGaps(cone, x), d)?;

    let mut inequalities = Vec::new();
    for i in 0..d {
        let lhs = &lambda_m_plus.values[i] / (&d_rat * &y_inv_norm);
        inequalities.push(make_inequality(
            format!(
                "lambda_{}(M+) / (d |Y^-1|) <= lambda_{}(L(Y))",
                i + 1,
                i + 1
            ),
            lhs,
            lambda_cone.values[i].clone(),
            lambda_cone.values[i].clone(),
        ));
        let rhs = &d_rat * &y_norm * &lambda_m_plus.values[i];
        inequalities.push(make_inequality(
            format!("lambda_{}(L(Y)) <= d |Y| lambda_{}(M+)", i + 1, i + 1),
            lambda_cone.values[i].clone(),
            rhs.clone(),
            rhs,
        ));
    }
    let rhs = &d_rat * &y_norm * &lambda_m_gaps.values[d - 1];
    inequalities.push(make_inequality(
        format!("lambda_{d}(L(Y), X) <= d |Y| lambda_{d}(M+, Y^-1 X)"),
        lambda_cone_gaps.values[d - 1].clone(),
        rhs.clone(),
        rhs,
    ));

    let all_hold = inequalities.iter().all(|i| i.holds);
    Ok(GenSmallRecord {
        inequalities,
        lambda_cone: lambda_cone.values,
        lambda_m_plus: lambda_m_plus.values,
        lambda_cone_gaps_d: lambda_cone_gaps.values[d - 1].clone(),
        lambda_m_gaps_d: lambda_m_gaps.values[d - 1].clone(),
        all_hold,
    })
}
