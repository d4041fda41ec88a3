//! Univariate polynomials over the rationals: exact division, Sturm chains,
//! real root isolation and refinement, characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::linalg::{Rat, RationalMatrix};

/// Dense polynomial, ascending coefficients, no trailing zeros (empty means
/// the zero polynomial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::linalg::rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rat::is_one)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval extension of Horner evaluation.
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(Rat::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_rat(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact Euclidean division.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if q.is_zero() {
                continue;
            }
            quot[i - dd] = q.clone();
            for j in 0..=dd {
                let t = &divisor.coeffs[j] * &q;
                rem[i - dd + j] -= t;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) if !l.is_one() => {
                let inv = l.clone().recip();
                a.scale(&inv)
            }
            _ => a,
        }
    }

    /// self / gcd(self, self'), the radical of the polynomial.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.divrem(&g).0
        }
    }

    fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    fn sign_at_pos_inf(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some(l) if l.is_positive() => 1,
            _ => -1,
        }
    }

    fn sign_at_neg_inf(&self) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Sturm chain: p, p', then negated remainders.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Cauchy bound: all real roots lie in [-M, M].
    pub fn cauchy_bound(&self) -> Rat {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let max = self
            .coeffs
            .iter()
            .rev()
            .skip(1)
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rat::zero);
        Rat::one() + max / lead
    }
}

fn variations(signs: &[i32]) -> usize {
    let mut v = 0;
    let mut last = 0i32;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Number of distinct real roots of a squarefree polynomial in (a, b].
pub fn count_roots_in(chain: &[RatPoly], a: &Rat, b: &Rat) -> usize {
    let va = variations(&chain.iter().map(|p| p.sign_at(a)).collect::<Vec<_>>());
    let vb = variations(&chain.iter().map(|p| p.sign_at(b)).collect::<Vec<_>>());
    va - vb
}

/// Number of distinct real roots on the whole line.
pub fn count_real_roots(poly: &RatPoly) -> usize {
    let chain = poly.sturm_chain();
    let v_neg = variations(
        &chain
            .iter()
            .map(|p| p.sign_at_neg_inf())
            .collect::<Vec<_>>(),
    );
    let v_pos = variations(
        &chain
            .iter()
            .map(|p| p.sign_at_pos_inf())
            .collect::<Vec<_>>(),
    );
    v_neg - v_pos
}

/// Isolating interval for one real root. `lo == hi` marks an exact rational
/// root; otherwise the polynomial changes sign across the open interval.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn to_interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }
}

/// Isolate all real roots of a squarefree polynomial, sorted ascending.
/// Exact rational roots are deflated and reported as point intervals.
pub fn isolate_real_roots(poly: &RatPoly) -> Vec<RootInterval> {
    let mut f = poly.clone();
    let mut exact = Vec::new();
    // Deflate a rational root at zero first; other rational roots found
    // during bisection are deflated as they appear.
    while !f.is_zero() && f.coeffs()[0].is_zero() {
        exact.push(Rat::zero());
        f = f.divrem(&RatPoly::from_ints(&[0, 1])).0;
    }
    let mut roots = isolate_nonzero(&f, &mut exact);
    roots.extend(exact.into_iter().map(|r| RootInterval {
        lo: r.clone(),
        hi: r,
    }));
    roots.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    roots
}

fn isolate_nonzero(f: &RatPoly, exact: &mut Vec<Rat>) -> Vec<RootInterval> {
    if f.degree().is_none_or(|d| d == 0) {
        return vec![];
    }
    if f.degree() == Some(1) {
        exact.push(-(&f.coeffs()[0] / &f.coeffs()[1]));
        return vec![];
    }
    let chain = f.sturm_chain();
    let bound = f.cauchy_bound();
    let mut stack = vec![(-bound.clone(), bound.clone())];
    let mut out = Vec::new();
    while let Some((a, b)) = stack.pop() {
        let n = count_roots_in(&chain, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if f.sign_at(&b) == 0 {
                exact.push(b.clone());
                continue;
            }
            // Shrink until the left endpoint is not a root and the interval
            // carries a sign change.
            let (mut a, mut b) = (a, b);
            loop {
                if f.sign_at(&a) != 0 && f.sign_at(&a) != f.sign_at(&b) {
                    out.push(RootInterval { lo: a, hi: b });
                    break;
                }
                let m = (&a + &b) / Rat::from_integer(BigInt::from(2));
                let s = f.sign_at(&m);
                if s == 0 {
                    exact.push(m);
                    break;
                }
                if count_roots_in(&chain, &m, &b) == 1 {
                    a = m;
                } else {
                    b = m;
                }
            }
            continue;
        }
        let m = (&a + &b) / Rat::from_integer(BigInt::from(2));
        if f.sign_at(&m) == 0 {
            // Rational root: deflate and restart on the quotient.
            exact.push(m.clone());
            let quot = f.divrem(&RatPoly::new(vec![-m.clone(), Rat::one()])).0;
            let mut rest = isolate_nonzero(&quot, exact);
            out.append(&mut rest);
            return out;
        }
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    out
}

/// Bisect a sign-change interval until it is narrower than `width`.
pub fn refine_root(f: &RatPoly, root: &RootInterval, width: &Rat) -> RootInterval {
    if root.is_exact() {
        return root.clone();
    }
    let mut lo = root.lo.clone();
    let mut hi = root.hi.clone();
    let s_lo = f.sign_at(&lo);
    debug_assert!(s_lo != 0 && s_lo != f.sign_at(&hi));
    let two = Rat::from_integer(BigInt::from(2));
    while &hi - &lo > *width {
        let m = (&lo + &hi) / &two;
        let sm = f.sign_at(&m);
        if sm == 0 {
            return RootInterval {
                lo: m.clone(),
                hi: m,
            };
        }
        if sm == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    RootInterval { lo, hi }
}

/// Characteristic polynomial of a square rational matrix by the
/// Faddeev-LeVerrier recursion; monic of degree n.
pub fn char_poly(m: &RationalMatrix) -> Result<RatPoly> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut a = m.clone();
    let mut c = Rat::one();
    for k in 1..=n {
        if k > 1 {
            // A_k = M (A_{k-1} + c_{n-k+1} I)
            let mut shifted = a.clone();
            for i in 0..n {
                *shifted.at_mut(i, i) += &c;
            }
            a = m.mul(&shifted);
        }
        let trace: Rat = (0..n).map(|i| a.at(i, i).clone()).sum();
        c = -trace / Rat::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
    }
    Ok(RatPoly::new(coeffs))
}

/// Primitive integer form: the unique integer-coefficient multiple with
/// content 1 and positive leading coefficient, returned with its leading
/// coefficient.
pub fn primitive_integer_form(p: &RatPoly) -> (Vec<BigInt>, BigInt) {
    assert!(!p.is_zero());
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x))
        .max(BigInt::one());
    let mut out: Vec<BigInt> = ints.iter().map(|x| x / &content).collect();
    if out.last().unwrap().is_negative() {
        for x in out.iter_mut() {
            *x = -x.clone();
        }
    }
    let lead = out.last().unwrap().clone();
    (out, lead)
}

// ---------------------------------------------------------------------------
// Irreducibility over Z for monic integer polynomials
// ---------------------------------------------------------------------------

/// Certify irreducibility of a monic integer polynomial.
///
/// Degrees 2 and 3 are settled completely by the rational root test. Higher
/// degrees use the sufficient criterion "irreducible modulo some prime"; if
/// no prime below the search bound certifies, the test gives up rather than
/// guess.
pub fn check_irreducible_monic(coeffs: &[BigInt]) -> Result<()> {
    let deg = coeffs.len() - 1;
    assert!(coeffs[deg].is_one());
    if deg == 0 {
        return Err(Error::Reducible("constant polynomial".into()));
    }
    if deg == 1 {
        return Ok(());
    }
    if coeffs[0].is_zero() {
        return Err(Error::Reducible("x divides the polynomial".into()));
    }
    // Monic: rational roots are integer divisors of the constant term.
    for div in divisors(&coeffs[0].abs()) {
        for r in [Rat::from_integer(div.clone()), Rat::from_integer(-div)] {
            if RatPoly::from_bigints(coeffs).eval(&r).is_zero() {
                return Err(Error::Reducible(format!("rational root {r}")));
            }
        }
    }
    if deg <= 3 {
        return Ok(());
    }
    const PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for &p in &PRIMES {
        if irreducible_mod_p(coeffs, p) {
            return Ok(());
        }
    }
    Err(Error::IrreducibilityUndetermined(deg))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += BigInt::one();
    }
    out
}

/// Rabin's test: f is irreducible over F_p iff x^(p^n) = x mod f and
/// gcd(x^(p^(n/q)) - x, f) = 1 for every prime q dividing n.
fn irreducible_mod_p(coeffs: &[BigInt], p: u64) -> bool {
    let f: Vec<u64> = coeffs
        .iter()
        .map(|c| {
            c.mod_floor(&BigInt::from(p))
                .to_string()
                .parse::<u64>()
                .unwrap()
        })
        .collect();
    if f.last() != Some(&1) {
        return false;
    }
    let n = f.len() - 1;
    let x = vec![0, 1];
    // Distinct prime divisors of the degree.
    let mut qs = Vec::new();
    let mut m = n;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            qs.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        qs.push(m);
    }
    for &q in &qs {
        let e = pow_u64(p, (n / q) as u32);
        let xq = modpoly_pow_x(&f, p, &e);
        let diff = modpoly_sub(&xq, &x, p);
        if modpoly_gcd_deg(&diff, &f, p) != 0 {
            return false;
        }
    }
    let e = pow_u64(p, n as u32);
    let xn = modpoly_pow_x(&f, p, &e);
    modpoly_sub(&xn, &x, p).iter().all(|&c| c == 0)
}

fn pow_u64(base: u64, exp: u32) -> u128 {
    (base as u128).pow(exp)
}

fn modpoly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn modpoly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = *a.get(i).unwrap_or(&0);
        let y = *b.get(i).unwrap_or(&0);
        out[i] = (x + p - y) % p;
    }
    modpoly_trim(out)
}

fn modpoly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
        }
    }
    // Reduce modulo monic f.
    let n = f.len() - 1;
    for i in (n..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..n {
            let t = (c as u128 * f[j] as u128 % p as u128) as u64;
            prod[i - n + j] = (prod[i - n + j] + p - t) % p;
        }
    }
    prod.truncate(n);
    modpoly_trim(prod)
}

/// x^e modulo (f, p) by square-and-multiply on the exponent.
fn modpoly_pow_x(f: &[u64], p: u64, e: &u128) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = vec![0u64, 1];
    let mut e = *e;
    while e > 0 {
        if e & 1 == 1 {
            result = modpoly_mulmod(&result, &base, f, p);
        }
        base = modpoly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

/// Degree of gcd(a, f) over F_p (0 means coprime).
fn modpoly_gcd_deg(a: &[u64], f: &[u64], p: u64) -> usize {
    let mut x = f.to_vec();
    let mut y = modpoly_trim(a.to_vec());
    while !y.is_empty() {
        // x mod y
        let mut r = x.clone();
        let ly = *y.last().unwrap();
        let inv = mod_inverse(ly, p);
        while r.len() >= y.len() && !r.is_empty() {
            let c = (*r.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
            let shift = r.len() - y.len();
            for (j, &yc) in y.iter().enumerate() {
                let t = (c as u128 * yc as u128 % p as u128) as u64;
                r[shift + j] = (r[shift + j] + p - t) % p;
            }
            r = modpoly_trim(r);
            if r.len() < y.len() {
                break;
            }
        }
        x = y;
        y = r;
    }
    x.len().saturating_sub(1)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn divrem_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        let d = RatPoly::from_ints(&[-1, 1]);
        let (q, r) = p.divrem(&d);
        assert_eq!(q, RatPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());

        let g = p.gcd(&RatPoly::from_ints(&[1, 1]));
        assert_eq!(g, RatPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn sturm_counts() {
        // x^2 - 2 has two real roots.
        assert_eq!(count_real_roots(&RatPoly::from_ints(&[-2, 0, 1])), 2);
        // x^2 + 1 has none.
        assert_eq!(count_real_roots(&RatPoly::from_ints(&[1, 0, 1])), 0);
        // x^3 - 3x - 1 is totally real.
        assert_eq!(count_real_roots(&RatPoly::from_ints(&[-1, -3, 0, 1])), 3);
        // x^3 - 2 has one real root.
        assert_eq!(count_real_roots(&RatPoly::from_ints(&[-2, 0, 0, 1])), 1);
    }

    #[test]
    fn isolate_sqrt2() {
        let f = RatPoly::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        let r = refine_root(&f, &roots[1], &ratio(1, 1 << 20));
        let v = 2f64.sqrt();
        let lo = r.lo.numer().to_string().parse::<f64>().unwrap()
            / r.lo.denom().to_string().parse::<f64>().unwrap();
        assert!((lo - v).abs() < 1e-5);
        assert!(r.width() <= ratio(1, 1 << 20));
    }

    #[test]
    fn isolate_with_rational_roots() {
        // (x - 2)(x + 3)(x^2 - 2): four disjoint isolating intervals.
        let f = RatPoly::from_ints(&[-2, 0, 1])
            .mul(&RatPoly::from_ints(&[-2, 1]))
            .mul(&RatPoly::from_ints(&[3, 1]));
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 4);
        for (r, expect) in roots.iter().zip([-3.0, -2f64.sqrt(), 2f64.sqrt(), 2.0]) {
            let r = refine_root(&f, r, &ratio(1, 1 << 16));
            let iv = r.to_interval().to_f64();
            assert!(iv.lo - 1e-4 <= expect && expect <= iv.hi + 1e-4);
        }
        // Linear polynomials report their root exactly.
        let roots = isolate_real_roots(&RatPoly::from_ints(&[-6, 2]));
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].lo, rat(3));
    }

    #[test]
    fn isolation_intervals_disjoint_and_ordered() {
        let f = RatPoly::from_ints(&[-1, -3, 0, 1]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 3);
        for w in roots.windows(2) {
            assert!(w[0].hi < w[1].lo || (w[0].hi <= w[1].lo));
        }
    }

    #[test]
    fn char_poly_examples() {
        // Companion-style check: char poly of [[0,2],[1,0]] is x^2 - 2.
        let m = RationalMatrix::from_int_rows(&[&[0, 2], &[1, 0]]);
        assert_eq!(char_poly(&m).unwrap(), RatPoly::from_ints(&[-2, 0, 1]));
        // Identity: (x - 1)^2.
        let m = RationalMatrix::identity(2);
        assert_eq!(char_poly(&m).unwrap(), RatPoly::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn primitive_form() {
        let p = RatPoly::new(vec![ratio(1, 2), ratio(-3, 4), rat(1)]);
        let (ints, lead) = primitive_integer_form(&p);
        assert_eq!(
            ints,
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(4)]
        );
        assert_eq!(lead, BigInt::from(4));
    }

    #[test]
    fn irreducibility_checks() {
        for f in [
            vec![-2i64, 0, 1],
            vec![-1, -1, 1],
            vec![-1, -3, 0, 1],
            // x^4 - x^3 - 4x^2 + 4x + 1, a totally real quartic.
            vec![1, 4, -4, -1, 1],
        ] {
            let coeffs: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
            assert!(check_irreducible_monic(&coeffs).is_ok(), "{f:?}");
        }
        for f in [vec![-1i64, 0, 1], vec![0, 0, 1], vec![-4, 0, 1]] {
            let coeffs: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
            assert!(check_irreducible_monic(&coeffs).is_err(), "{f:?}");
        }
        // (x^2 - 2)(x^2 - 3): no rational root but reducible; mod-p route
        // must not certify it.
        let coeffs: Vec<BigInt> = [6i64, 0, -5, 0, 1]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        assert!(check_irreducible_monic(&coeffs).is_err());
    }
}
