//! Solid angles of simplicial cones.
//!
//! The measure is the fraction of the unit ball cut out by the cone. In 2D
//! the angle between the two generators is computed from its exact rational
//! squared cosine; in 3D the spherical triangle excess comes from l'Huilier's
//! formula; in higher dimensions a seeded Monte Carlo estimate with a 99%
//! normal-approximation half-width stands in.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{F64Interval, RatInterval};
use crate::lattice::Cone;
use crate::linalg::RationalVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleMethod {
    Exact2d,
    Spherical3d,
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AngleMethodUsed {
    #[serde(rename = "EXACT_2D")]
    Exact2d,
    #[serde(rename = "SPHERICAL_3D")]
    Spherical3d,
    #[serde(rename = "MONTE_CARLO")]
    MonteCarlo,
}

/// Certified (or, for Monte Carlo, statistical) enclosure of the solid angle
/// measure.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolidAngle {
    pub lo: f64,
    pub hi: f64,
    pub method: AngleMethodUsed,
    /// Sample count for Monte Carlo, 0 otherwise.
    pub samples: u64,
    /// RNG seed for Monte Carlo, 0 otherwise.
    pub seed: u64,
}

impl SolidAngle {
    pub fn interval(&self) -> F64Interval {
        F64Interval::new(self.lo, self.hi)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Angle between two rational vectors as an interval, from the exact value
/// of cos^2 and the sign of the dot product.
fn angle_interval(u: &RationalVector, v: &RationalVector) -> Result<F64Interval> {
    let dot = u.dot(v);
    let nsq = u.norm_sq() * v.norm_sq();
    if nsq.is_zero() {
        return Err(Error::InvalidInput("degenerate generator".into()));
    }
    if dot.is_zero() {
        // Exact right angle.
        let q = std::f64::consts::FRAC_PI_2;
        return Ok(F64Interval::new(q.next_down(), q.next_up()));
    }
    let cos_sq = RatInterval::point(&dot * &dot / nsq);
    let cos_abs = cos_sq.sqrt(80).to_f64();
    let cos = if dot.is_positive() {
        cos_abs
    } else {
        cos_abs.neg()
    };
    Ok(cos.acos())
}

/// Solid angle of the cone by the requested method.
pub fn solid_angle(cone: &Cone, method: &AngleMethod) -> Result<SolidAngle> {
    let d = cone.dim();
    match *method {
        AngleMethod::Exact2d => {
            if d != 2 {
                return Err(Error::InvalidInput(format!(
                    "exact 2D angle requested in dimension {d}"
                )));
            }
            let g = cone.generators();
            let (y1, y2) = (g.column(0), g.column(1));
            // Orthogonal generators cut out exactly a quarter plane.
            if y1.dot(&y2).is_zero() {
                return Ok(SolidAngle {
                    lo: 0.25,
                    hi: 0.25,
                    method: AngleMethodUsed::Exact2d,
                    samples: 0,
                    seed: 0,
                });
            }
            let theta = angle_interval(&y1, &y2)?;
            let two_pi = F64Interval::pi().scale(2.0);
            let nu = theta.div(&two_pi);
            Ok(SolidAngle {
                lo: nu.lo.max(0.0),
                hi: nu.hi,
                method: AngleMethodUsed::Exact2d,
                samples: 0,
                seed: 0,
            })
        }
        AngleMethod::Spherical3d => {
            if d != 3 {
                return Err(Error::InvalidInput(format!(
                    "spherical triangle angle requested in dimension {d}"
                )));
            }
            let g = cone.generators();
            let (y1, y2, y3) = (g.column(0), g.column(1), g.column(2));
            let a = angle_interval(&y2, &y3)?;
            let b = angle_interval(&y1, &y3)?;
            let c = angle_interval(&y1, &y2)?;
            let half = F64Interval::point(0.5);
            let s = a.add(&b).add(&c).mul(&half);
            // l'Huilier: tan(E/4) = sqrt(tan(s/2) tan((s-a)/2) tan((s-b)/2)
            // tan((s-c)/2)).
            let terms = [
                s.mul(&half),
                s.sub(&a).mul(&half),
                s.sub(&b).mul(&half),
                s.sub(&c).mul(&half),
            ];
            let mut prod = F64Interval::point(1.0);
            for t in terms {
                let clamped = F64Interval::new(t.lo.max(0.0), t.hi.max(0.0));
                prod = prod.mul(&clamped.tan());
            }
            let prod = F64Interval::new(prod.lo.max(0.0), prod.hi.max(0.0));
            let excess = prod.sqrt().atan().scale(4.0);
            let four_pi = F64Interval::pi().scale(4.0);
            let nu = excess.div(&four_pi);
            Ok(SolidAngle {
                lo: nu.lo.max(0.0),
                hi: nu.hi,
                method: AngleMethodUsed::Spherical3d,
                samples: 0,
                seed: 0,
            })
        }
        AngleMethod::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidInput("sample count must be positive".into()));
            }
            let inv: Vec<Vec<f64>> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| cone.inverse().at(i, j).to_f64().unwrap_or(f64::NAN))
                        .collect()
                })
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hits = 0u64;
            for _ in 0..samples {
                let mut u = vec![0f64; d];
                loop {
                    let mut norm = 0f64;
                    for x in u.iter_mut() {
                        *x = StandardNormal.sample(&mut rng);
                        norm += *x * *x;
                    }
                    if norm > 1e-20 {
                        break;
                    }
                }
                let inside = inv
                    .iter()
                    .all(|row| row.iter().zip(&u).map(|(r, x)| r * x).sum::<f64>() >= 0.0);
                if inside {
                    hits += 1;
                }
            }
            let p = hits as f64 / samples as f64;
            // 99% CLT half-width.
            let half = 2.5758 * (p * (1.0 - p) / samples as f64).sqrt();
            Ok(SolidAngle {
                lo: (p - half).max(0.0),
                hi: (p + half).min(1.0),
                method: AngleMethodUsed::MonteCarlo,
                samples,
                seed,
            })
        }
    }
}

/// Upper bound 1/2^d that holds for any cone inside the positive orthant.
pub fn orthant_angle_bound(d: usize) -> f64 {
    0.5f64.powi(d as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RationalMatrix;

    #[test]
    fn orthant_2d_is_exact_quarter() {
        let nu = solid_angle(&Cone::orthant(2), &AngleMethod::Exact2d).unwrap();
        assert_eq!((nu.lo, nu.hi), (0.25, 0.25));
    }

    #[test]
    fn skewed_2d_matches_closed_form() {
        let c = Cone::new(RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]])).unwrap();
        let nu = solid_angle(&c, &AngleMethod::Exact2d).unwrap();
        // arctan(2) - arctan(1) over 2 pi.
        let expect = (2f64.atan() - 1f64.atan()) / (2.0 * std::f64::consts::PI);
        assert!(nu.lo <= expect && expect <= nu.hi);
        assert!((nu.midpoint() - 0.0512081).abs() < 1e-6);
        assert!(nu.hi - nu.lo < 1e-9);
    }

    #[test]
    fn orthant_3d_spherical() {
        let nu = solid_angle(&Cone::orthant(3), &AngleMethod::Spherical3d).unwrap();
        assert!(nu.lo <= 0.125 && 0.125 <= nu.hi);
        assert!(nu.hi - nu.lo < 1e-9);
    }

    #[test]
    fn monte_carlo_orthant_3d() {
        let nu = solid_angle(
            &Cone::orthant(3),
            &AngleMethod::MonteCarlo {
                samples: 200_000,
                seed: 42,
            },
        )
        .unwrap();
        assert!(nu.lo <= 0.125 && 0.125 <= nu.hi, "[{}, {}]", nu.lo, nu.hi);
    }

    #[test]
    fn monte_carlo_contains_exact_value() {
        let c = Cone::new(RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]])).unwrap();
        let exact = solid_angle(&c, &AngleMethod::Exact2d).unwrap();
        let mc = solid_angle(
            &c,
            &AngleMethod::MonteCarlo {
                samples: 400_000,
                seed: 7,
            },
        )
        .unwrap();
        assert!(mc.lo <= exact.hi && exact.lo <= mc.hi);
    }

    #[test]
    fn positive_basis_angles_below_orthant_bound() {
        use crate::lattice::{generate_positive_basis, Lattice};
        for seed in 0..8u64 {
            let pb = generate_positive_basis(&Lattice::standard(2), seed);
            let nu = solid_angle(&pb.cone(), &AngleMethod::Exact2d).unwrap();
            assert!(nu.hi <= orthant_angle_bound(2), "seed {seed}: {}", nu.hi);
        }
        for seed in 0..4u64 {
            let pb = generate_positive_basis(&Lattice::standard(3), seed);
            let nu = solid_angle(&pb.cone(), &AngleMethod::Spherical3d).unwrap();
            assert!(nu.hi <= orthant_angle_bound(3), "seed {seed}: {}", nu.hi);
        }
    }

    #[test]
    fn spherical_3d_contains_monte_carlo() {
        let c = Cone::new(RationalMatrix::from_int_rows(&[
            &[1, 1, 1],
            &[1, 2, 1],
            &[1, 1, 2],
        ]))
        .unwrap();
        let sp = solid_angle(&c, &AngleMethod::Spherical3d).unwrap();
        let mc = solid_angle(
            &c,
            &AngleMethod::MonteCarlo {
                samples: 400_000,
                seed: 11,
            },
        )
        .unwrap();
        assert!(
            mc.lo <= sp.hi && sp.lo <= mc.hi,
            "sp=[{},{}] mc=[{},{}]",
            sp.lo,
            sp.hi,
            mc.lo,
            mc.hi
        );
        // Positive-basis cone: angle strictly below the orthant bound.
        assert!(sp.hi <= orthant_angle_bound(3));
    }
}
