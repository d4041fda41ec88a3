//! Exact lattice-point enumeration and the gap-counting reports.
//!
//! Points are walked in coefficient space: bounds per coefficient come from
//! the rows of the basis inverse, the basis is cleared to integers once, and
//! every membership test (ball, cube, orthant, cone, semigroup) is an exact
//! integer comparison. Branches are pruned with reachable-box bounds and the
//! top-level coefficient range is processed in parallel for counts.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{floor_sqrt_rat, F64Interval};
use crate::lattice::{Cone, Lattice, PositiveBasis};
use crate::linalg::{Rat, RationalMatrix, RationalVector};
use crate::solid::{solid_angle, AngleMethod, SolidAngle};

/// Default cap on visited coefficient boxes, overridable through the
/// CONEGAPS_MAX_POINTS environment variable.
pub const DEFAULT_MAX_POINTS: u64 = 10_000_000;

fn max_points_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("CONEGAPS_MAX_POINTS")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_MAX_POINTS)
    })
}

/// Search region, all closed: Euclidean ball, sup-norm cube, or the part of
/// a ball inside a cone.
#[derive(Clone, Debug)]
pub enum Region {
    Ball(Rat),
    Cube(Rat),
    ConeBall(Cone, Rat),
}

impl Region {
    pub fn radius(&self) -> &Rat {
        match self {
            Region::Ball(t) | Region::Cube(t) | Region::ConeBall(_, t) => t,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.radius().is_positive() {
            return Err(Error::InvalidInput("region radius must be positive".into()));
        }
        Ok(())
    }
}

/// Which point set a count runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SetKind {
    /// All lattice points.
    Lattice,
    /// Lattice points in the closed positive orthant.
    LPlus,
    /// Nonnegative-integer combinations of the positive basis.
    Semigroup,
    /// L+ minus the semigroup.
    Gaps,
    /// Lattice points inside the context cone.
    LOfY,
    /// Points of L(Y) outside the semigroup.
    GapsInY,
}

#[derive(Clone, Debug)]
pub struct CountQuery {
    pub region: Region,
    pub set: SetKind,
}

/// Context carrying the positive basis (for semigroup/gap sets) and the
/// outer cone (for the general-cone sets).
#[derive(Clone, Copy, Default)]
pub struct CountContext<'a> {
    pub basis: Option<&'a PositiveBasis>,
    pub cone: Option<&'a Cone>,
}

/// A lattice point with its integer coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePoint {
    pub coefficients: Vec<BigInt>,
    pub point: RationalVector,
}

// ---------------------------------------------------------------------------
// Scanner
// ---------------------------------------------------------------------------

/// Condition on the coefficient vector of the point in the positive basis X.
#[derive(Clone, Copy, PartialEq)]
enum CoeffCond {
    AllNonnegative,
    SomeNegative,
}

struct Scanner {
    d: usize,
    /// Scaled integer basis columns, w_i = q * b_i.
    cols: Vec<Vec<BigInt>>,
    scale: BigInt,
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// Reachable-range per coordinate for levels >= i.
    suffix: Vec<Vec<(BigInt, BigInt)>>,
    euclidean: bool,
    /// Ball: sum w^2 * td^2 <= tn^2 * q^2; cube: |w_j| * td <= tn * q.
    ball_rhs: BigInt,
    tden_sq: BigInt,
    cube_rhs: BigInt,
    tden: BigInt,
    orthant: bool,
    /// Rows of an integer matrix D with D*a >= 0 required (cone membership).
    cone_rows: Option<Vec<Vec<BigInt>>>,
    /// Rows of the integer matrix Xinv * B with a sign condition on D*a.
    coeff_rows: Option<(Vec<Vec<BigInt>>, CoeffCond)>,
    skip_zero: bool,
}

impl Scanner {
    fn new(
        basis: &RationalMatrix,
        basis_inv: &RationalMatrix,
        region: &Region,
        nonnegative_coeffs: bool,
    ) -> Result<Self> {
        region.validate()?;
        let d = basis.rows();
        let t = region.radius();
        let q = basis.denominator_lcm();
        let scaled = basis.scale(&Rat::from_integer(q.clone()));
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|j| (0..d).map(|i| scaled.at(i, j).numer().clone()).collect())
            .collect();

        // Coefficient bounds from the rows of the inverse.
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for i in 0..d {
            let bound = match region {
                Region::Cube(_) => {
                    let row_l1: Rat = (0..d).map(|j| basis_inv.at(i, j).abs()).sum();
                    (t * row_l1).floor().to_integer()
                }
                Region::Ball(_) | Region::ConeBall(..) => {
                    let row_sq: Rat = (0..d)
                        .map(|j| basis_inv.at(i, j) * basis_inv.at(i, j))
                        .sum();
                    floor_sqrt_rat(&(t * t * row_sq))
                }
            };
            let b = bound.to_i64().ok_or_else(|| Error::PointCapExceeded {
                estimate: u128::MAX,
                cap: max_points_cap(),
            })?;
            lo.push(if nonnegative_coeffs { 0 } else { -b });
            hi.push(b);
        }

        // Enforce the global point cap before walking anything.
        let mut estimate: u128 = 1;
        for i in 0..d {
            estimate = estimate.saturating_mul((hi[i] - lo[i] + 1).max(0) as u128);
        }
        let cap = max_points_cap();
        if estimate > cap as u128 {
            return Err(Error::PointCapExceeded { estimate, cap });
        }

        // Reachable box per suffix of levels.
        let mut suffix = vec![vec![(BigInt::zero(), BigInt::zero()); d]; d + 1];
        for level in (0..d).rev() {
            for j in 0..d {
                let a = &cols[level][j] * lo[level];
                let b = &cols[level][j] * hi[level];
                let (mn, mx) = if a <= b { (a, b) } else { (b, a) };
                suffix[level][j].0 = &suffix[level + 1][j].0 + mn;
                suffix[level][j].1 = &suffix[level + 1][j].1 + mx;
            }
        }

        let tn = t.numer();
        let td = t.denom();
        let euclidean = !matches!(region, Region::Cube(_));
        Ok(Self {
            d,
            cols,
            scale: q.clone(),
            lo,
            hi,
            suffix,
            euclidean,
            ball_rhs: tn * tn * &q * &q,
            tden_sq: td * td,
            cube_rhs: tn * &q,
            tden: td.clone(),
            orthant: false,
            cone_rows: None,
            coeff_rows: None,
            skip_zero: false,
        })
    }

    fn with_cone(mut self, lattice_basis: &RationalMatrix, cone: &Cone) -> Self {
        let m = cone.inverse().mul(lattice_basis);
        self.cone_rows = Some(integer_rows(&m));
        self
    }

    fn with_coeff_condition(
        mut self,
        lattice_basis: &RationalMatrix,
        basis: &PositiveBasis,
        cond: CoeffCond,
    ) -> Self {
        let m = basis.inverse_matrix().mul(lattice_basis);
        debug_assert!(m.is_integer(), "X must be a basis of the lattice");
        self.coeff_rows = Some((integer_rows(&m), cond));
        self
    }

    fn in_region(&self, w: &[BigInt]) -> bool {
        if self.euclidean {
            let s: BigInt = w.iter().map(|x| x * x).sum();
            s * &self.tden_sq <= self.ball_rhs
        } else {
            w.iter().all(|x| x.abs() * &self.tden <= self.cube_rhs)
        }
    }

    fn accept(&self, coeffs: &[i64], w: &[BigInt]) -> bool {
        if self.skip_zero && coeffs.iter().all(|&c| c == 0) {
            return false;
        }
        if self.orthant && w.iter().any(|x| x.is_negative()) {
            return false;
        }
        if !self.in_region(w) {
            return false;
        }
        if let Some(rows) = &self.cone_rows {
            for row in rows {
                let s: BigInt = row.iter().zip(coeffs).map(|(r, &c)| r * c).sum();
                if s.is_negative() {
                    return false;
                }
            }
        }
        if let Some((rows, cond)) = &self.coeff_rows {
            let mut some_negative = false;
            for row in rows {
                let s: BigInt = row.iter().zip(coeffs).map(|(r, &c)| r * c).sum();
                if s.is_negative() {
                    some_negative = true;
                    break;
                }
            }
            match cond {
                CoeffCond::AllNonnegative if some_negative => return false,
                CoeffCond::SomeNegative if !some_negative => return false,
                _ => {}
            }
        }
        true
    }

    /// Branch can be cut when no completion fits the region (every region is
    /// inside the cube of its radius) or the orthant.
    fn prune(&self, level: usize, partial: &[BigInt]) -> bool {
        for j in 0..self.d {
            let reach_lo = &partial[j] + &self.suffix[level][j].0;
            let reach_hi = &partial[j] + &self.suffix[level][j].1;
            if &reach_lo * &self.tden > self.cube_rhs {
                return true;
            }
            if &reach_hi * &self.tden < -self.cube_rhs.clone() {
                return true;
            }
            if self.orthant && reach_hi.is_negative() {
                return true;
            }
        }
        false
    }

    fn descend<F: FnMut(&[i64], &[BigInt])>(
        &self,
        level: usize,
        coeffs: &mut [i64],
        partial: &mut [BigInt],
        visit: &mut F,
    ) {
        if level == self.d {
            if self.accept(coeffs, partial) {
                visit(coeffs, partial);
            }
            return;
        }
        if self.prune(level, partial) {
            return;
        }
        let (lo, hi) = (self.lo[level], self.hi[level]);
        for j in 0..self.d {
            partial[j] += &self.cols[level][j] * lo;
        }
        let mut a = lo;
        loop {
            coeffs[level] = a;
            self.descend(level + 1, coeffs, partial, visit);
            if a == hi {
                break;
            }
            a += 1;
            for j in 0..self.d {
                partial[j] += &self.cols[level][j];
            }
        }
        for j in 0..self.d {
            partial[j] -= &self.cols[level][j] * hi;
        }
    }

    /// Parallel count over the top-level coefficient range.
    fn count(&self) -> u64 {
        (self.lo[0]..=self.hi[0])
            .into_par_iter()
            .map(|a0| {
                let mut coeffs = vec![0i64; self.d];
                coeffs[0] = a0;
                let mut partial: Vec<BigInt> = (0..self.d).map(|j| &self.cols[0][j] * a0).collect();
                let mut n = 0u64;
                self.descend(1, &mut coeffs, &mut partial, &mut |_, _| n += 1);
                n
            })
            .sum()
    }

    fn collect(&self) -> Vec<(Vec<i64>, Vec<BigInt>)> {
        let mut out = Vec::new();
        let mut coeffs = vec![0i64; self.d];
        let mut partial = vec![BigInt::zero(); self.d];
        self.descend(0, &mut coeffs, &mut partial, &mut |c, w| {
            out.push((c.to_vec(), w.to_vec()));
        });
        out
    }
}

fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let q = m.denominator_lcm();
    let scaled = m.scale(&Rat::from_integer(q));
    (0..scaled.rows())
        .map(|i| {
            (0..scaled.cols())
                .map(|j| scaled.at(i, j).numer().clone())
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Public enumeration API
// ---------------------------------------------------------------------------

/// All lattice points in the closed region, sorted lexicographically by
/// coordinates.
pub fn enumerate(lattice: &Lattice, region: &Region) -> Result<Vec<LatticePoint>> {
    let mut scanner = Scanner::new(lattice.basis(), lattice.basis_inverse(), region, false)?;
    if let Region::ConeBall(cone, _) = region {
        scanner = scanner.with_cone(lattice.basis(), cone);
    }
    let raw = scanner.collect();
    let scale = Rat::from_integer(scanner.scale.clone());
    let mut pts: Vec<LatticePoint> = raw
        .into_iter()
        .map(|(c, w)| LatticePoint {
            coefficients: c.into_iter().map(BigInt::from).collect(),
            point: RationalVector::new(
                w.into_iter()
                    .map(|x| Rat::from_integer(x) / &scale)
                    .collect(),
            ),
        })
        .collect();
    pts.sort_by(|a, b| a.point.entries().cmp(b.point.entries()));
    Ok(pts)
}

/// Exact count of the queried set inside the region.
pub fn count(lattice: &Lattice, ctx: &CountContext, query: &CountQuery) -> Result<u64> {
    let need_basis = || {
        ctx.basis.ok_or_else(|| {
            Error::InvalidInput("query requires a positive basis in the context".into())
        })
    };
    let need_cone = || {
        ctx.cone
            .ok_or_else(|| Error::InvalidInput("query requires a cone in the context".into()))
    };
    match query.set {
        SetKind::Lattice => {
            let mut s = Scanner::new(
                lattice.basis(),
                lattice.basis_inverse(),
                &query.region,
                false,
            )?;
            if let Region::ConeBall(cone, _) = &query.region {
                s = s.with_cone(lattice.basis(), cone);
            }
            Ok(s.count())
        }
        SetKind::LPlus => {
            let mut s = Scanner::new(
                lattice.basis(),
                lattice.basis_inverse(),
                &query.region,
                false,
            )?;
            s.orthant = true;
            if let Region::ConeBall(cone, _) = &query.region {
                s = s.with_cone(lattice.basis(), cone);
            }
            Ok(s.count())
        }
        SetKind::Semigroup => {
            // Coefficient-space scan: a >= 0 with X a inside the region.
            let x = need_basis()?;
            let s = Scanner::new(x.matrix(), x.inverse_matrix(), &query.region, true)?;
            Ok(s.count())
        }
        SetKind::Gaps => {
            let lp = count(
                lattice,
                ctx,
                &CountQuery {
                    region: query.region.clone(),
                    set: SetKind::LPlus,
                },
            )?;
            let sg = count(
                lattice,
                ctx,
                &CountQuery {
                    region: query.region.clone(),
                    set: SetKind::Semigroup,
                },
            )?;
            lp.checked_sub(sg)
                .ok_or_else(|| Error::InvalidInput("semigroup count exceeds L+ count".into()))
        }
        SetKind::LOfY => {
            let cone = need_cone()?;
            let s = Scanner::new(
                lattice.basis(),
                lattice.basis_inverse(),
                &query.region,
                false,
            )?
            .with_cone(lattice.basis(), cone);
            Ok(s.count())
        }
        SetKind::GapsInY => {
            let ly = count(
                lattice,
                ctx,
                &CountQuery {
                    region: query.region.clone(),
                    set: SetKind::LOfY,
                },
            )?;
            let sg = count(
                lattice,
                ctx,
                &CountQuery {
                    region: query.region.clone(),
                    set: SetKind::Semigroup,
                },
            )?;
            ly.checked_sub(sg)
                .ok_or_else(|| Error::InvalidInput("semigroup count exceeds L(Y) count".into()))
        }
    }
}

/// Point families for restricted successive minima searches.
#[derive(Clone, Copy)]
pub enum Family<'a> {
    /// All nonzero lattice points.
    Plain,
    /// Nonzero points of L+.
    Plus,
    /// Gaps of S(X) in L+.
    Gaps(&'a PositiveBasis),
    /// Nonzero points of L inside the cone.
    InCone(&'a Cone),
    /// Gaps of S(YX) in L(Y): points inside the cone whose coefficients in
    /// the transported basis X of Y^-1 L are not all nonnegative.
    ConeGaps(&'a Cone, &'a PositiveBasis),
}

/// Nonzero family members inside the region, sorted lexicographically by
/// point coordinates.
pub fn family_points(
    lattice: &Lattice,
    region: &Region,
    family: &Family,
) -> Result<Vec<LatticePoint>> {
    let mut s = Scanner::new(lattice.basis(), lattice.basis_inverse(), region, false)?;
    s.skip_zero = true;
    match family {
        Family::Plain => {}
        Family::Plus => s.orthant = true,
        Family::Gaps(x) => {
            s.orthant = true;
            s = s.with_coeff_condition(lattice.basis(), x, CoeffCond::SomeNegative);
        }
        Family::InCone(y) => {
            s = s.with_cone(lattice.basis(), y);
        }
        Family::ConeGaps(y, x) => {
            s = s.with_cone(lattice.basis(), y);
            // Coefficients in the L-side basis YX: (YX)^-1 B = X^-1 Y^-1 B.
            let m = x.inverse_matrix().mul(&y.inverse().mul(lattice.basis()));
            debug_assert!(m.is_integer(), "YX must be a basis of the lattice");
            s.coeff_rows = Some((integer_rows(&m), CoeffCond::SomeNegative));
        }
    }
    let raw = s.collect();
    let scale = Rat::from_integer(s.scale.clone());
    let mut pts: Vec<LatticePoint> = raw
        .into_iter()
        .map(|(c, w)| LatticePoint {
            coefficients: c.into_iter().map(BigInt::from).collect(),
            point: RationalVector::new(
                w.into_iter()
                    .map(|x| Rat::from_integer(x) / &scale)
                    .collect(),
            ),
        })
        .collect();
    pts.sort_by(|a, b| a.point.entries().cmp(b.point.entries()));
    Ok(pts)
}

/// Count nonnegative-integer combinations of the generator columns inside
/// the region. This is the semigroup count for any simplicial generator
/// matrix, positive or not.
pub fn count_nonnegative_combinations(generators: &RationalMatrix, region: &Region) -> Result<u64> {
    let inv = generators.invert()?;
    let s = Scanner::new(generators, &inv, region, true)?;
    Ok(s.count())
}

/// Independent semigroup count: a point-space scan over the lattice that
/// keeps points whose X-coefficients are all nonnegative. Cross-checks the
/// coefficient-space route.
pub fn count_semigroup_pointwise(
    lattice: &Lattice,
    basis: &PositiveBasis,
    region: &Region,
) -> Result<u64> {
    let mut s = Scanner::new(lattice.basis(), lattice.basis_inverse(), region, false)?
        .with_coeff_condition(lattice.basis(), basis, CoeffCond::AllNonnegative);
    s.orthant = true;
    Ok(s.count())
}

/// Independent gap count: a point-space scan testing the sign condition on
/// the X-coefficients directly. Cross-checks the subtraction route.
pub fn count_gaps_pointwise(
    lattice: &Lattice,
    basis: &PositiveBasis,
    region: &Region,
) -> Result<u64> {
    let mut s = Scanner::new(lattice.basis(), lattice.basis_inverse(), region, false)?
        .with_coeff_condition(lattice.basis(), basis, CoeffCond::SomeNegative);
    s.orthant = true;
    Ok(s.count())
}

/// Gap count inside a general cone, pointwise route: points of L in the
/// cone whose coefficients in the basis Y * X are not all nonnegative,
/// where `transported` is a positive basis X of Y^-1 L.
pub fn count_cone_gaps_pointwise(
    lattice: &Lattice,
    cone: &Cone,
    transported: &PositiveBasis,
    region: &Region,
) -> Result<u64> {
    let mut s = Scanner::new(lattice.basis(), lattice.basis_inverse(), region, false)?
        .with_cone(lattice.basis(), cone);
    let m = transported
        .inverse_matrix()
        .mul(&cone.inverse().mul(lattice.basis()));
    debug_assert!(m.is_integer(), "Y X must be a basis of the lattice");
    s.coeff_rows = Some((integer_rows(&m), CoeffCond::SomeNegative));
    Ok(s.count())
}

// ---------------------------------------------------------------------------
// Counting reports
// ---------------------------------------------------------------------------

/// Volume of the d-dimensional unit ball as a certified interval.
pub fn unit_ball_volume(d: usize) -> F64Interval {
    let pi = F64Interval::pi();
    if d.is_multiple_of(2) {
        let k = d / 2;
        let mut v = F64Interval::point(1.0);
        for _ in 0..k {
            v = v.mul(&pi);
        }
        v.scale(1.0 / factorial(k))
    } else {
        let k = (d - 1) / 2;
        let mut v = F64Interval::point(1.0);
        for _ in 0..k {
            v = v.mul(&pi);
        }
        v.scale(2f64.powi(d as i32) * factorial(k) / factorial(d))
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub t: Rat,
    pub n_lplus: u64,
    pub n_semigroup: u64,
    pub n_gaps: u64,
    /// Gap count recomputed by the independent point-space scan.
    pub n_gaps_pointwise: u64,
    pub gap_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub lo: f64,
    pub hi: f64,
}

/// Empirical counts along a radius grid next to the leading-term predictions.
#[derive(Clone, Debug, Serialize)]
pub struct CountingReport {
    pub dim: usize,
    #[serde(serialize_with = "crate::linalg::serde_text::rational")]
    pub det: Rat,
    pub nu: SolidAngle,
    /// Solid angle of the outer cone for general-cone reports.
    pub nu_outer: Option<SolidAngle>,
    pub rows: Vec<CountRow>,
    pub predicted_gap: Prediction,
    pub predicted_lplus: Prediction,
    pub predicted_semigroup: Prediction,
    /// Least-squares leading coefficient of N_gaps(t) over (t^d, t^{d-1}).
    pub fitted_leading: f64,
    /// N_gaps / t^d at the largest grid radius.
    pub final_ratio: f64,
}

impl CountingReport {
    /// Every row satisfies the partition identity, checked against the
    /// independent pointwise scan.
    pub fn partition_identity_holds(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.n_gaps == r.n_lplus - r.n_semigroup && r.n_gaps == r.n_gaps_pointwise)
    }

    pub fn to_csv(&self) -> String {
        let mut s =
            String::from("t,N_Lplus,N_semigroup,N_gaps,gap_ratio,predicted_lo,predicted_hi\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                crate::linalg::format_rat(&r.t),
                r.n_lplus,
                r.n_semigroup,
                r.n_gaps,
                r.gap_ratio,
                self.predicted_gap.lo,
                self.predicted_gap.hi
            ));
        }
        s
    }
}

fn fit_leading(rows: &[(f64, f64)], d: usize) -> f64 {
    // Least squares for N(t) ~ c_d t^d + c_{d-1} t^{d-1}.
    if rows.len() < 2 {
        return rows
            .first()
            .map(|(t, n)| n / t.powi(d as i32))
            .unwrap_or(0.0);
    }
    let (mut s22, mut s21, mut s11, mut b2, mut b1) = (0f64, 0f64, 0f64, 0f64, 0f64);
    for &(t, n) in rows {
        let td = t.powi(d as i32);
        let td1 = t.powi(d as i32 - 1);
        s22 += td * td;
        s21 += td * td1;
        s11 += td1 * td1;
        b2 += n * td;
        b1 += n * td1;
    }
    let det = s22 * s11 - s21 * s21;
    if det.abs() < 1e-12 {
        return b2 / s22;
    }
    (b2 * s11 - b1 * s21) / det
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Count L+, S(X) and the gaps along the grid and compare the gap ratio
/// N_gaps / t^d with the leading coefficient
/// omega_d (1 - nu(X) 2^d) / (2^d det L).
pub fn verify_gap_asymptotics(
    lattice: &Lattice,
    basis: &PositiveBasis,
    t_grid: &[Rat],
) -> Result<CountingReport> {
    let d = lattice.dim();
    let method = default_angle_method(d);
    let nu = solid_angle(&basis.cone(), &method)?;
    build_report(lattice, basis, None, nu, None, t_grid)
}

/// General-cone version: gaps of S(X) in L(Y), with leading coefficient
/// omega_d (nu(Y) - nu(X)) / det L.
pub fn verify_general_cone_count(
    lattice: &Lattice,
    cone: &Cone,
    transported: &PositiveBasis,
    t_grid: &[Rat],
) -> Result<CountingReport> {
    // `transported` is a positive basis of M = Y^-1 L; the corresponding
    // basis of L inside the cone is Y * X.
    let m = lattice.transport(cone)?;
    if !m.same_lattice(transported.lattice()) {
        return Err(Error::InvalidInput(
            "basis must generate the transported lattice Y^-1 L".into(),
        ));
    }
    let image = cone.generators().mul(transported.matrix());
    for (i, x) in image.columns().iter().enumerate() {
        if !cone.contains(x) {
            return Err(Error::NotInCone { index: i });
        }
    }
    let d = lattice.dim();
    let method = default_angle_method(d);
    let image_cone = Cone::new(image)?;
    let nu_x = solid_angle(&image_cone, &method)?;
    let nu_y = solid_angle(cone, &method)?;
    build_report(lattice, transported, Some(cone), nu_x, Some(nu_y), t_grid)
}

pub fn default_angle_method(d: usize) -> AngleMethod {
    match d {
        2 => AngleMethod::Exact2d,
        3 => AngleMethod::Spherical3d,
        _ => AngleMethod::MonteCarlo {
            samples: 2_000_000,
            seed: 0x5eed,
        },
    }
}

fn build_report(
    lattice: &Lattice,
    basis: &PositiveBasis,
    cone: Option<&Cone>,
    nu: SolidAngle,
    nu_outer: Option<SolidAngle>,
    t_grid: &[Rat],
) -> Result<CountingReport> {
    let d = lattice.dim();
    let det = lattice.det_abs().clone();
    let det_f = rat_to_f64(&det);
    let omega = unit_ball_volume(d);
    let two_d = 2f64.powi(d as i32);
    let nu_iv = F64Interval::new(nu.lo, nu.hi);

    // Leading coefficients. For the orthant case:
    //   gaps: omega (1 - nu 2^d) / (2^d det); L+: omega / (2^d det);
    //   S(X): omega nu / det.
    // For a general outer cone: gaps: omega (nu_Y - nu_X)/det; L(Y): omega
    // nu_Y / det.
    let one = F64Interval::point(1.0);
    let (pred_gap, pred_lplus) = match &nu_outer {
        None => {
            let g = omega
                .mul(&one.sub(&nu_iv.scale(two_d)))
                .scale(1.0 / (two_d * det_f));
            let lp = omega.scale(1.0 / (two_d * det_f));
            (g, lp)
        }
        Some(ny) => {
            let ny_iv = F64Interval::new(ny.lo, ny.hi);
            let g = omega.mul(&ny_iv.sub(&nu_iv)).scale(1.0 / det_f);
            let lp = omega.mul(&ny_iv).scale(1.0 / det_f);
            (g, lp)
        }
    };
    let pred_semi = omega.mul(&nu_iv).scale(1.0 / det_f);

    let ctx = CountContext {
        basis: Some(basis),
        cone,
    };
    // Semigroup generators on the L side: X for the orthant, Y X for a
    // general cone.
    let generators = match cone {
        None => basis.matrix().clone(),
        Some(c) => c.generators().mul(basis.matrix()),
    };
    let mut rows = Vec::with_capacity(t_grid.len());
    for t in t_grid {
        let region = Region::Ball(t.clone());
        let n_lplus = match cone {
            None => count(
                lattice,
                &ctx,
                &CountQuery {
                    region: region.clone(),
                    set: SetKind::LPlus,
                },
            )?,
            Some(_) => count(
                lattice,
                &ctx,
                &CountQuery {
                    region: region.clone(),
                    set: SetKind::LOfY,
                },
            )?,
        };
        let n_semigroup = count_nonnegative_combinations(&generators, &region)?;
        let n_gaps = n_lplus.checked_sub(n_semigroup).ok_or_else(|| {
            Error::InvalidInput("semigroup count exceeds the ambient count".into())
        })?;
        let n_gaps_pointwise = match cone {
            None => count_gaps_pointwise(lattice, basis, &region)?,
            Some(c) => count_cone_gaps_pointwise(lattice, c, basis, &region)?,
        };
        let tf = rat_to_f64(t);
        rows.push(CountRow {
            t: t.clone(),
            n_lplus,
            n_semigroup,
            n_gaps,
            n_gaps_pointwise,
            gap_ratio: n_gaps as f64 / tf.powi(d as i32),
        });
    }

    let pairs: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (rat_to_f64(&r.t), r.n_gaps as f64))
        .collect();
    let fitted_leading = fit_leading(&pairs, d);
    let final_ratio = rows.last().map(|r| r.gap_ratio).unwrap_or(0.0);

    Ok(CountingReport {
        dim: d,
        det,
        nu,
        nu_outer,
        rows,
        predicted_gap: Prediction {
            lo: pred_gap.lo,
            hi: pred_gap.hi,
        },
        predicted_lplus: Prediction {
            lo: pred_lplus.lo,
            hi: pred_lplus.hi,
        },
        predicted_semigroup: Prediction {
            lo: pred_semi.lo,
            hi: pred_semi.hi,
        },
        fitted_leading,
        final_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::PositiveBasis;
    use crate::linalg::rat;
    use crate::semigroup::{classify, GapStatus};

    fn z2() -> Lattice {
        Lattice::standard(2)
    }

    fn xbasis() -> PositiveBasis {
        PositiveBasis::new(z2(), RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]])).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let pts = enumerate(&z2(), &Region::Ball(rat(1))).unwrap();
        assert_eq!(pts.len(), 5);
        let pts = enumerate(&z2(), &Region::Cube(rat(1))).unwrap();
        assert_eq!(pts.len(), 9);
        // Lex sorting.
        assert!(pts
            .windows(2)
            .all(|w| w[0].point.entries() <= w[1].point.entries()));
    }

    #[test]
    fn enumerate_skewed_ball_matches_brute_force() {
        let l = Lattice::new(RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]])).unwrap();
        let pts = enumerate(&l, &Region::Ball(rat(2))).unwrap();
        // Brute force over a generous coefficient box.
        let mut expect = Vec::new();
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                let v = RationalVector::from_ints(&[a + b, a + 2 * b]);
                if v.norm_sq() <= rat(4) {
                    expect.push(v);
                }
            }
        }
        expect.sort_by(|x, y| x.entries().cmp(y.entries()));
        assert_eq!(pts.len(), expect.len());
        for (p, e) in pts.iter().zip(&expect) {
            assert_eq!(&p.point, e);
        }
    }

    #[test]
    fn count_lplus_example() {
        let n = count(
            &z2(),
            &CountContext::default(),
            &CountQuery {
                region: Region::Ball(rat(2)),
                set: SetKind::LPlus,
            },
        )
        .unwrap();
        assert_eq!(n, 6); // (0,0),(1,0),(0,1),(1,1),(2,0),(0,2)
    }

    #[test]
    fn orthogonal_basis_has_zero_gap_count() {
        let x = PositiveBasis::new(z2(), RationalMatrix::identity(2)).unwrap();
        let ctx = CountContext {
            basis: Some(&x),
            cone: None,
        };
        for t in [2i64, 5, 9] {
            let n = count(
                &z2(),
                &ctx,
                &CountQuery {
                    region: Region::Ball(rat(t)),
                    set: SetKind::Gaps,
                },
            )
            .unwrap();
            assert_eq!(n, 0);
        }
    }

    #[test]
    fn semigroup_count_matches_classify_scan() {
        let x = xbasis();
        let ctx = CountContext {
            basis: Some(&x),
            cone: None,
        };
        let n = count(
            &z2(),
            &ctx,
            &CountQuery {
                region: Region::Ball(rat(3)),
                set: SetKind::Semigroup,
            },
        )
        .unwrap();
        // Independent scan: classify every lattice point in the ball.
        let mut m = 0;
        for p in enumerate(&z2(), &Region::Ball(rat(3))).unwrap() {
            if classify(&x, &p.point).unwrap().status == GapStatus::Semigroup {
                m += 1;
            }
        }
        assert_eq!(n, m);
    }

    #[test]
    fn semigroup_pointwise_route_agrees() {
        let x = xbasis();
        let ctx = CountContext {
            basis: Some(&x),
            cone: None,
        };
        for t in [4i64, 9] {
            let region = Region::Ball(rat(t));
            let by_coeff = count(
                &z2(),
                &ctx,
                &CountQuery {
                    region: region.clone(),
                    set: SetKind::Semigroup,
                },
            )
            .unwrap();
            let by_point = count_semigroup_pointwise(&z2(), &x, &region).unwrap();
            assert_eq!(by_coeff, by_point);
        }
    }

    #[test]
    fn gap_routes_agree() {
        let x = xbasis();
        let ctx = CountContext {
            basis: Some(&x),
            cone: None,
        };
        for t in [3i64, 7, 12] {
            let region = Region::Ball(rat(t));
            let by_diff = count(
                &z2(),
                &ctx,
                &CountQuery {
                    region: region.clone(),
                    set: SetKind::Gaps,
                },
            )
            .unwrap();
            let by_scan = count_gaps_pointwise(&z2(), &x, &region).unwrap();
            assert_eq!(by_diff, by_scan);
        }
    }

    #[test]
    fn counts_monotone_in_t() {
        let x = xbasis();
        let ctx = CountContext {
            basis: Some(&x),
            cone: None,
        };
        let mut prev = [0u64; 3];
        for t in 1i64..=8 {
            let region = Region::Ball(rat(t));
            let cur = [
                count(
                    &z2(),
                    &ctx,
                    &CountQuery {
                        region: region.clone(),
                        set: SetKind::LPlus,
                    },
                )
                .unwrap(),
                count(
                    &z2(),
                    &ctx,
                    &CountQuery {
                        region: region.clone(),
                        set: SetKind::Semigroup,
                    },
                )
                .unwrap(),
                count(
                    &z2(),
                    &ctx,
                    &CountQuery {
                        region,
                        set: SetKind::Gaps,
                    },
                )
                .unwrap(),
            ];
            for i in 0..3 {
                assert!(cur[i] >= prev[i]);
            }
            prev = cur;
        }
    }

    #[test]
    fn cone_restricted_counts() {
        let l = z2();
        let y = Cone::new(RationalMatrix::from_int_rows(&[&[1, 1], &[0, 1]])).unwrap();
        let ctx = CountContext {
            basis: None,
            cone: Some(&y),
        };
        let n = count(
            &l,
            &ctx,
            &CountQuery {
                region: Region::Ball(rat(2)),
                set: SetKind::LOfY,
            },
        )
        .unwrap();
        // Points v = (v1, v2) with v1 - v2 >= 0, v2 >= 0, |v| <= 2:
        // (0,0),(1,0),(2,0),(1,1),(2,2)... check by scan.
        let mut m = 0;
        for p in enumerate(&l, &Region::Ball(rat(2))).unwrap() {
            if y.contains(&p.point) {
                m += 1;
            }
        }
        assert_eq!(n, m);
    }

    #[test]
    fn report_partition_identity() {
        let x = xbasis();
        let grid: Vec<Rat> = [5i64, 10, 15].iter().map(|&t| rat(t)).collect();
        let report = verify_gap_asymptotics(&z2(), &x, &grid).unwrap();
        assert!(report.partition_identity_holds());
        let csv = report.to_csv();
        assert!(csv.starts_with("t,N_Lplus,N_semigroup,N_gaps,gap_ratio,predicted_lo,predicted_hi"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn general_cone_reduces_to_orthant() {
        // Y = identity: the general report must match the orthant report.
        let x = xbasis();
        let grid: Vec<Rat> = [6i64, 12].iter().map(|&t| rat(t)).collect();
        let orthant = verify_gap_asymptotics(&z2(), &x, &grid).unwrap();
        let general = verify_general_cone_count(&z2(), &Cone::orthant(2), &x, &grid).unwrap();
        for (a, b) in orthant.rows.iter().zip(&general.rows) {
            assert_eq!(a.n_lplus, b.n_lplus);
            assert_eq!(a.n_semigroup, b.n_semigroup);
            assert_eq!(a.n_gaps, b.n_gaps);
            assert_eq!(a.n_gaps_pointwise, b.n_gaps_pointwise);
        }
    }

    #[test]
    fn general_cone_partition_identity() {
        use crate::lattice::generate_positive_basis;
        let y = Cone::new(RationalMatrix::from_int_rows(&[&[1, 1], &[0, 1]])).unwrap();
        let m = z2().transport(&y).unwrap();
        let x = generate_positive_basis(&m, 4);
        let grid: Vec<Rat> = [8i64, 16].iter().map(|&t| rat(t)).collect();
        let report = verify_general_cone_count(&z2(), &y, &x, &grid).unwrap();
        assert!(report.partition_identity_holds());
        // Same cone as basis: zero gaps.
        let image = Cone::new(y.generators().mul(x.matrix())).unwrap();
        let m2 = z2().transport(&image).unwrap();
        let x2 = crate::lattice::PositiveBasis::new(m2.clone(), m2.basis().clone());
        if let Ok(x2) = x2 {
            if x2.matrix().columns().iter().all(|c| c.is_nonnegative()) {
                let rep = verify_general_cone_count(&z2(), &image, &x2, &grid).unwrap();
                for r in &rep.rows {
                    assert_eq!(r.n_gaps, 0);
                }
            }
        }
    }

    #[test]
    fn unit_ball_volumes() {
        let v2 = unit_ball_volume(2);
        assert!(v2.contains(std::f64::consts::PI));
        let v3 = unit_ball_volume(3);
        assert!(v3.contains(4.0 * std::f64::consts::PI / 3.0));
        assert!(v3.width() < 1e-12);
    }
}
