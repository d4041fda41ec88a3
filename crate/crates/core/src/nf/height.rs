//! Weil heights through the Mahler measure of characteristic polynomials.
//!
//! For gamma in K, the characteristic polynomial of multiplication by gamma
//! has roots sigma_1(gamma), ..., sigma_d(gamma); clearing it to a primitive
//! integer polynomial with positive leading coefficient c gives
//! h(gamma)^d = c * prod_i max(1, |sigma_i(gamma)|). For algebraic integers
//! c = 1 and this is the familiar product over the infinite places. Factors
//! with |sigma_i| < 1 are dropped exactly, which keeps the enclosure tight
//! even when the product is 1: the separation |sigma_i(gamma)| != 1 is
//! decidable because sigma_i(gamma) = ±1 at a single embedding forces
//! gamma = ±1 globally.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::linalg::Rat;
use crate::nf::{FieldElement, NumberField};
use crate::poly::{char_poly, primitive_integer_form};

/// Certified enclosure of a Weil height; lo and hi are exact rationals.
#[derive(Clone, Debug)]
pub struct HeightValue {
    pub lo: Rat,
    pub hi: Rat,
}

impl Serialize for HeightValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (lo, hi) = self.to_f64();
        let mut out = s.serialize_struct("HeightValue", 4)?;
        out.serialize_field("lo", &lo)?;
        out.serialize_field("hi", &hi)?;
        out.serialize_field("lo_exact", &crate::linalg::format_rat(&self.lo))?;
        out.serialize_field("hi_exact", &crate::linalg::format_rat(&self.hi))?;
        out.end()
    }
}

impl HeightValue {
    pub fn point(v: Rat) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            crate::interval::f64_below(&self.lo),
            crate::interval::f64_above(&self.hi),
        )
    }

    /// Natural logarithm bounds (the logarithmic height bracket).
    pub fn log(&self) -> (f64, f64) {
        let (lo, hi) = self.to_f64();
        (lo.ln().next_down(), hi.ln().next_up())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }
}

/// h(p/q) = max(|p|, |q|) for a rational in lowest terms.
fn rational_height(q: &Rat) -> Rat {
    Rat::from_integer(q.numer().abs().max(q.denom().abs()))
}

/// The d-th power of the height as an enclosure, plus the exact set of
/// embeddings with |sigma_i| > 1. Requires gamma nonzero and irrational.
fn height_power_interval(
    field: &NumberField,
    gamma: &FieldElement,
    lead: &BigInt,
    bits: u32,
) -> Result<(RatInterval, Vec<usize>)> {
    let one = Rat::one();
    let mut b = bits.max(32);
    loop {
        let embeds = field.embeddings(gamma, b);
        let mut over = Vec::new();
        let mut resolved = true;
        for (i, e) in embeds.iter().enumerate() {
            let a = e.abs();
            if a.lo > one {
                over.push(i);
            } else if a.hi >= one {
                resolved = false;
                break;
            }
        }
        if resolved {
            let mut acc = RatInterval::point(Rat::from_integer(lead.clone()));
            for &i in &over {
                acc = acc.mul(&embeds[i].abs());
            }
            return Ok((acc, over));
        }
        b *= 2;
        if b > 8192 {
            return Err(Error::Undecided {
                bits: b,
                what: "separating embeddings from 1".into(),
            });
        }
    }
}

/// Weil height of a nonzero element (integral or not).
pub fn weil_height(field: &NumberField, alpha: &FieldElement, bits: u32) -> Result<HeightValue> {
    if alpha.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if let Some(q) = field.as_rational(alpha) {
        return Ok(HeightValue::point(rational_height(&q)));
    }
    let chi = char_poly(&field.multiplication_matrix(alpha))?;
    let (_, lead) = primitive_integer_form(&chi);
    let (hd, _) = height_power_interval(field, alpha, &lead, bits)?;
    let root = hd.nth_root(field.degree() as u32, bits.max(64));
    Ok(HeightValue {
        lo: root.lo.max(Rat::one()),
        hi: root.hi,
    })
}

/// Weil height of the ratio alpha/beta.
pub fn weil_height_ratio(
    field: &NumberField,
    alpha: &FieldElement,
    beta: &FieldElement,
    bits: u32,
) -> Result<HeightValue> {
    let gamma = field.div(alpha, beta)?;
    weil_height(field, &gamma, bits)
}

// ---------------------------------------------------------------------------
// Height inequality verification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    HoldsWithEquality,
    Fails,
    Undecided,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsWithEquality)
    }
}

/// Per-element record of the chain 1 <= h(a) <= |Sigma(a)| <= h(a)^d.
#[derive(Clone, Debug, Serialize)]
pub struct HeightCheck {
    pub element: FieldElement,
    pub height: HeightValue,
    pub sup_lo: f64,
    pub sup_hi: f64,
    pub one_le_h: Verdict,
    pub h_le_sup: Verdict,
    pub sup_le_h_pow_d: Verdict,
}

impl HeightCheck {
    pub fn decided(&self) -> bool {
        self.one_le_h != Verdict::Undecided
            && self.h_le_sup != Verdict::Undecided
            && self.sup_le_h_pow_d != Verdict::Undecided
    }

    pub fn passed(&self) -> bool {
        self.one_le_h.passed() && self.h_le_sup.passed() && self.sup_le_h_pow_d.passed()
    }
}

/// Decide the three height inequalities for a nonzero algebraic integer.
///
/// Exact shortcut paths handle the tight cases: rational elements, elements
/// whose square is rational (all conjugates share one absolute value), and
/// a single dominant conjugate (where |Sigma| = h^d exactly). Everything
/// else separates strictly under interval refinement.
pub fn verify_height_element(
    field: &NumberField,
    alpha: &FieldElement,
    max_bits: u32,
) -> Result<HeightCheck> {
    if alpha.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if alpha.integer_coords().is_none() {
        return Err(Error::NonInteger);
    }
    let d = field.degree() as u32;

    // Rational integer a: everything exact.
    if let Some(q) = field.as_rational(alpha) {
        debug_assert!(q.denom().is_one());
        let habs = q.abs();
        let eq = habs.is_one();
        return Ok(HeightCheck {
            element: alpha.clone(),
            height: HeightValue::point(habs.clone()),
            sup_lo: crate::interval::f64_below(&habs),
            sup_hi: crate::interval::f64_above(&habs),
            one_le_h: if eq {
                Verdict::HoldsWithEquality
            } else {
                Verdict::Holds
            },
            h_le_sup: Verdict::HoldsWithEquality,
            sup_le_h_pow_d: if eq {
                Verdict::HoldsWithEquality
            } else {
                Verdict::Holds
            },
        });
    }

    // alpha^2 rational: all conjugates share the absolute value sqrt(r).
    let alpha_sq = field.mul(alpha, alpha);
    if let Some(r) = field.as_rational(&alpha_sq) {
        debug_assert!(r.is_positive() && r.denom().is_one());
        // r >= 2 because alpha is a nonrational integer.
        let sqrt_r = RatInterval::point(r.clone()).sqrt(max_bits.max(64));
        let height = if d.is_multiple_of(2) {
            // h = r^(1/2) exactly representable as an interval of sqrt(r).
            HeightValue {
                lo: sqrt_r.lo.clone(),
                hi: sqrt_r.hi.clone(),
            }
        } else {
            let hd = RatInterval::point(r.clone()).pow(d).sqrt(max_bits.max(64));
            let root = hd.nth_root(d, max_bits.max(64));
            HeightValue {
                lo: root.lo,
                hi: root.hi,
            }
        };
        // sup <= h^d iff r^(1/2) <= r^(d/2) iff 1 <= r^(d-1): exact.
        let strict = r.clone().pow(d as i32 - 1) > Rat::one();
        return Ok(HeightCheck {
            element: alpha.clone(),
            height,
            sup_lo: crate::interval::f64_below(&sqrt_r.lo),
            sup_hi: crate::interval::f64_above(&sqrt_r.hi),
            one_le_h: Verdict::Holds,
            h_le_sup: Verdict::HoldsWithEquality,
            sup_le_h_pow_d: if strict {
                Verdict::Holds
            } else {
                Verdict::HoldsWithEquality
            },
        });
    }

    // General case: separate every |sigma_i| from 1, then compare with
    // structure-aware shortcuts.
    let one = BigInt::one();
    let (mut hd, mut over) = height_power_interval(field, alpha, &one, 64)?;
    let mut bits = 64u32;
    let mut embeds = field.embeddings(alpha, bits);

    let height = {
        let root = hd.nth_root(d, bits.max(64));
        HeightValue {
            lo: root.lo.max(Rat::one()),
            hi: root.hi,
        }
    };
    let sup0 = field.sup_norm_interval(alpha, bits);

    // 1 <= h: certified once some embedding exceeds 1.
    let one_le_h = if over.is_empty() {
        Verdict::Undecided
    } else {
        Verdict::Holds
    };

    // sup <= h^d: structural equality when exactly one conjugate exceeds 1.
    let mut sup_le_h_pow_d = if over.len() == 1 {
        Verdict::HoldsWithEquality
    } else {
        Verdict::Undecided
    };
    // h <= sup  <=>  prod_{over} |sigma_i| <= max^d, strict here because the
    // all-equal case was handled by the rational-square path.
    let mut h_le_sup = Verdict::Undecided;

    loop {
        let sup: RatInterval = over
            .iter()
            .map(|&i| embeds[i].abs())
            .reduce(|a, b| a.max(&b))
            .expect("nonempty");
        if h_le_sup == Verdict::Undecided {
            match hd.certainly_le(&sup.pow(d)) {
                Some(true) => h_le_sup = Verdict::Holds,
                Some(false) => h_le_sup = Verdict::Fails,
                None => {}
            }
        }
        if sup_le_h_pow_d == Verdict::Undecided {
            match sup.certainly_le(&hd) {
                Some(true) => sup_le_h_pow_d = Verdict::Holds,
                Some(false) => sup_le_h_pow_d = Verdict::Fails,
                None => {}
            }
        }
        if h_le_sup != Verdict::Undecided && sup_le_h_pow_d != Verdict::Undecided {
            break;
        }
        bits *= 2;
        if bits > max_bits {
            break;
        }
        let refreshed = height_power_interval(field, alpha, &one, bits)?;
        hd = refreshed.0;
        over = refreshed.1;
        embeds = field.embeddings(alpha, bits);
    }

    Ok(HeightCheck {
        element: alpha.clone(),
        height,
        sup_lo: sup0.to_f64().lo,
        sup_hi: sup0.to_f64().hi,
        one_le_h,
        h_le_sup,
        sup_le_h_pow_d,
    })
}

/// Batch report over a sample of elements.
#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub checks: Vec<HeightCheck>,
    pub all_passed: bool,
    pub all_decided: bool,
}

pub fn verify_height_inequalities(
    field: &NumberField,
    elements: &[FieldElement],
    max_bits: u32,
) -> Result<HeightReport> {
    let mut checks = Vec::with_capacity(elements.len());
    for el in elements {
        checks.push(verify_height_element(field, el, max_bits)?);
    }
    let all_passed = checks.iter().all(HeightCheck::passed);
    let all_decided = checks.iter().all(HeightCheck::decided);
    Ok(HeightReport {
        checks,
        all_passed,
        all_decided,
    })
}

/// Deterministic sample of nonzero integral elements with coordinates in
/// [-5, 5], for randomized verification runs.
pub fn sample_elements(field: &NumberField, count: usize, seed: u64) -> Vec<FieldElement> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d = field.degree();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-5i64..=5)).collect();
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        out.push(field.element_from_ints(&coords));
    }
    out
}
