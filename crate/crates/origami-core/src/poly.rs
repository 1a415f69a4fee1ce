//! Dense univariate polynomials over the exact rationals, with the Sturm
//! machinery used to count real roots. Coefficients are stored in ascending
//! order and trailing zeros are always stripped, so the zero polynomial is
//! the empty coefficient list.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use crate::rational::{denominator_lcm, sign_rat};

#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    /// Coefficients given from the leading term down, as plain integers.
    pub fn from_descending_ints(coeffs: &[i64]) -> Self {
        let asc: Vec<BigRational> = coeffs
            .iter()
            .rev()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        RatPoly::new(asc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_rat(c);
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        RatPoly::new(coeffs)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        RatPoly::new(coeffs)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division. Panics on a zero divisor, which is a caller bug.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = BigRational::one() / d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (RatPoly::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut q = vec![BigRational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = dc * &c;
                    rem[k + i] -= t;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(q), RatPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => self.scale(&(BigRational::one() / l.clone())),
        }
    }

    /// The product of the distinct irreducible factors, each to the first
    /// power: self / gcd(self, self').
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) <= 1 {
            return self.monic();
        }
        let g = RatPoly::gcd(self, &self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// f(a*x + b), used to rescale and shift roots.
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> RatPoly {
        let mut acc = RatPoly::zero();
        let lin = RatPoly::new(vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin);
            acc = acc.add(&RatPoly::constant(c.clone()));
        }
        acc
    }

    /// Scales coefficients to a primitive integer polynomial with positive
    /// leading coefficient (content removed).
    pub fn primitive_integer(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let l = denominator_lcm(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num_integer::gcd(g, c.clone());
        }
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let g = g * sign;
        RatPoly::new(
            ints.iter()
                .map(|c| BigRational::from_integer(c / &g))
                .collect(),
        )
    }

    /// All real roots lie strictly inside (-B, B).
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().expect("cauchy bound of zero polynomial").abs();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        BigRational::one() + m / lead
    }

    /// Number of distinct real roots on the whole line.
    pub fn real_root_count(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(0);
        }
        let b = self.cauchy_bound();
        self.real_root_count_in(&-b.clone(), &b)
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn real_root_count_in(&self, lo: &BigRational, hi: &BigRational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if lo >= hi {
            return Ok(0);
        }
        let mut f = self.squarefree_part();
        let mut count = 0usize;
        // Peel off exact rational roots at the endpoints so the classical
        // Sturm count (which needs non-vanishing endpoints) applies. f is
        // squarefree, so each endpoint divides out at most once. The root at
        // lo is outside (lo, hi], the root at hi is inside.
        if f.degree().map_or(false, |d| d >= 1) && f.eval(lo).is_zero() {
            let (q, r) = f.div_rem(&RatPoly::new(vec![-lo.clone(), BigRational::one()]));
            debug_assert!(r.is_zero());
            f = q;
        }
        if f.degree().map_or(false, |d| d >= 1) && f.eval(hi).is_zero() {
            count += 1;
            let (q, r) = f.div_rem(&RatPoly::new(vec![-hi.clone(), BigRational::one()]));
            debug_assert!(r.is_zero());
            f = q;
        }
        if f.degree().map_or(true, |d| d == 0) {
            return Ok(count);
        }
        let chain = sturm_chain(&f);
        let va = sign_variations(&chain, lo);
        let vb = sign_variations(&chain, hi);
        Ok(count + va - vb)
    }

    /// Number of distinct real roots in (0, +inf).
    pub fn real_root_count_positive(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(0);
        }
        let b = self.cauchy_bound();
        self.real_root_count_in(&BigRational::zero(), &b)
    }
}

/// Spec-level entry point: count distinct real roots, on the whole line or
/// restricted to (lo, hi].
pub fn sturm_real_root_count(
    f: &RatPoly,
    interval: Option<(&BigRational, &BigRational)>,
) -> Result<usize> {
    match interval {
        None => f.real_root_count(),
        Some((lo, hi)) => f.real_root_count_in(lo, hi),
    }
}

fn sturm_chain(f: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(r.neg());
    }
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut prev = 0i8;
    let mut vars = 0usize;
    for p in chain {
        let s = sign_rat(&p.eval(x));
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            vars += 1;
        }
        prev = s;
    }
    vars
}
