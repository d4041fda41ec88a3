//! Outward-rounded interval arithmetic.
//!
//! Two flavors: `RatInterval` with exact rational endpoints (used wherever a
//! quantity is algebraic and comparisons must be certified) and `F64Interval`
//! for transcendental steps (arccos, tan, pi), widened by a few ulps after
//! every operation so the true value always stays inside.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::Rat;

// ---------------------------------------------------------------------------
// Rational intervals
// ---------------------------------------------------------------------------

/// Closed interval with exact rational endpoints, lo <= hi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        Self::new(
            cands.iter().min().unwrap().clone(),
            cands.iter().max().unwrap().clone(),
        )
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_negative() {
            Self::new(&self.hi * c, &self.lo * c)
        } else {
            Self::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn add_rat(&self, c: &Rat) -> Self {
        Self::new(&self.lo + c, &self.hi + c)
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "interval contains zero"
        );
        Self::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Self::new(Rat::zero(), self.lo.abs().max(self.hi.abs()))
        }
    }

    /// max(1, x) applied to the interval; exact when the interval is on one
    /// side of 1.
    pub fn max_one(&self) -> Self {
        let one = Rat::one();
        Self::new(self.lo.clone().max(one.clone()), self.hi.clone().max(one))
    }

    pub fn max(&self, o: &Self) -> Self {
        Self::new(
            self.lo.clone().max(o.lo.clone()),
            self.hi.clone().max(o.hi.clone()),
        )
    }

    pub fn min(&self, o: &Self) -> Self {
        Self::new(
            self.lo.clone().min(o.lo.clone()),
            self.hi.clone().min(o.hi.clone()),
        )
    }

    /// Integer power, k >= 0.
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::point(Rat::one());
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Certified comparison: Some(true) when hi <= other's lo, Some(false)
    /// when lo > other's hi, None when the intervals overlap.
    pub fn certainly_le(&self, o: &Self) -> Option<bool> {
        if self.hi <= o.lo {
            Some(true)
        } else if self.lo > o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn certainly_lt(&self, o: &Self) -> Option<bool> {
        if self.hi < o.lo {
            Some(true)
        } else if self.lo >= o.hi {
            Some(false)
        } else {
            None
        }
    }

    /// Sign of every value in the interval, when definite.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Enclosure of sqrt(x); requires lo >= 0. `bits` controls endpoint
    /// precision (absolute error about 2^-bits).
    pub fn sqrt(&self, bits: u32) -> Self {
        assert!(!self.lo.is_negative(), "sqrt of a negative interval");
        Self::new(
            rat_sqrt_lower(&self.lo, bits),
            rat_nth_root_upper(&self.hi, 2, bits),
        )
    }

    /// Enclosure of x^(1/n); requires lo >= 0.
    pub fn nth_root(&self, n: u32, bits: u32) -> Self {
        assert!(!self.lo.is_negative(), "root of a negative interval");
        Self::new(
            rat_nth_root_lower(&self.lo, n, bits),
            rat_nth_root_upper(&self.hi, n, bits),
        )
    }

    pub fn to_f64(&self) -> F64Interval {
        F64Interval::new(f64_below(&self.lo), f64_above(&self.hi))
    }
}

/// Outward rounding to the dyadic grid with the given denominator scale;
/// widens by at most 2^(1-bits) while capping the entry bit-size.
pub fn dyadic_outward(iv: &RatInterval, bits: u32) -> RatInterval {
    let scale = BigInt::one() << bits;
    let scale_rat = Rat::from_integer(scale.clone());
    let lo = Rat::new((&iv.lo * &scale_rat).floor().to_integer(), scale.clone());
    let hi = Rat::new((&iv.hi * &scale_rat).ceil().to_integer(), scale);
    RatInterval::new(lo, hi)
}

/// floor(sqrt(x)) for a nonnegative rational.
pub fn floor_sqrt_rat(x: &Rat) -> BigInt {
    assert!(!x.is_negative());
    let mut s = x.numer().div_floor(x.denom()).sqrt();
    while Rat::from_integer((&s + 1u32) * (&s + 1u32)) <= *x {
        s += 1u32;
    }
    while Rat::from_integer(&s * &s) > *x {
        s -= 1u32;
    }
    s
}

/// Largest rational of the form k/2^bits that is <= sqrt(q), for q >= 0.
pub fn rat_sqrt_lower(q: &Rat, bits: u32) -> Rat {
    rat_nth_root_lower(q, 2, bits)
}

/// Dyadic lower bound on q^(1/n).
pub fn rat_nth_root_lower(q: &Rat, n: u32, bits: u32) -> Rat {
    assert!(!q.is_negative());
    if q.is_zero() {
        return Rat::zero();
    }
    let scale = BigInt::one() << bits;
    let pow = scale.pow(n);
    // floor(q * 2^(n*bits)), then integer n-th root: r <= (q)^(1/n) * 2^bits.
    let scaled = (q.numer() * &pow).div_floor(q.denom());
    let r = scaled.nth_root(n);
    Rat::new(r, scale)
}

/// Dyadic upper bound on q^(1/n).
pub fn rat_nth_root_upper(q: &Rat, n: u32, bits: u32) -> Rat {
    assert!(!q.is_negative());
    if q.is_zero() {
        return Rat::zero();
    }
    let scale = BigInt::one() << bits;
    let pow = scale.pow(n);
    let scaled = (q.numer() * &pow).div_ceil(q.denom());
    let r = scaled.nth_root(n);
    // r^n <= scaled, so (r+1)^n > scaled >= q * 2^(n*bits).
    Rat::new(r + BigInt::one(), scale)
}

/// f64 strictly at or below the rational (outward conversion).
pub fn f64_below(q: &Rat) -> f64 {
    let x = q.to_f64().unwrap_or(f64::NEG_INFINITY);
    // to_f64 rounds to nearest; one step down is always a sound lower bound.
    step_down(x)
}

/// f64 strictly at or above the rational.
pub fn f64_above(q: &Rat) -> f64 {
    let x = q.to_f64().unwrap_or(f64::INFINITY);
    step_up(x)
}

fn step_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        x
    } else {
        x.next_up()
    }
}

fn step_down(x: f64) -> f64 {
    if x.is_nan() || x == f64::NEG_INFINITY {
        x
    } else {
        x.next_down()
    }
}

// ---------------------------------------------------------------------------
// f64 intervals
// ---------------------------------------------------------------------------

/// Closed f64 interval widened outward after every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F64Interval {
    pub lo: f64,
    pub hi: f64,
}

impl F64Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Self { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    /// The f64 nearest pi, padded outward.
    pub fn pi() -> Self {
        let p = std::f64::consts::PI;
        Self::new(step_down(p), step_up(p))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(step_down(self.lo + o.lo), step_up(self.hi + o.hi))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(step_down(self.lo - o.hi), step_up(self.hi - o.lo))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Self::new(step_down(lo), step_up(hi))
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(
            o.lo > 0.0 || o.hi < 0.0,
            "division by interval containing 0"
        );
        let c = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Self::new(step_down(lo), step_up(hi))
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi, -self.lo)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.mul(&Self::point(c))
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= 0.0);
        Self::new(step_down(self.lo.sqrt()), step_up(self.hi.sqrt()))
    }

    /// arccos on [-1,1], clamped at the edges; monotone decreasing.
    pub fn acos(&self) -> Self {
        let lo_arg = self.hi.clamp(-1.0, 1.0);
        let hi_arg = self.lo.clamp(-1.0, 1.0);
        Self::new(
            step_down(step_down(lo_arg.acos())),
            step_up(step_up(hi_arg.acos())),
        )
    }

    /// tan on [0, pi/2); caller must keep the interval inside the branch.
    pub fn tan(&self) -> Self {
        assert!(self.lo >= 0.0 && self.hi < std::f64::consts::FRAC_PI_2 + 1e-9);
        Self::new(
            step_down(step_down(self.lo.tan())).max(0.0),
            step_up(step_up(self.hi.tan())),
        )
    }

    pub fn atan(&self) -> Self {
        Self::new(
            step_down(step_down(self.lo.atan())),
            step_up(step_up(self.hi.atan())),
        )
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }
}
