//! Certified intervals with rational endpoints. All arithmetic is exact, so
//! every operation is automatically outward-conservative: the result interval
//! contains the exact value whenever the operands do.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A real number known to lie in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Sign of the enclosed value, when the interval decides it.
    pub fn sign(&self) -> Option<i32> {
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

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn add_rat(&self, r: &BigRational) -> Interval {
        Interval { lo: &self.lo + r, hi: &self.hi + r }
    }

    pub fn scale(&self, r: &BigRational) -> Interval {
        if r.is_negative() {
            Interval { lo: &self.hi * r, hi: &self.lo * r }
        } else {
            Interval { lo: &self.lo * r, hi: &self.hi * r }
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Largest absolute value attained on the interval.
    pub fn abs_upper(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Evaluates a rational-coefficient polynomial over the interval by
    /// Horner's rule; inclusion-monotone in the argument.
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Interval {
        let mut acc = Interval::point(BigRational::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add_rat(c);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from(n))
    }
}

/// Canonical "p/q" rendering (plain integer when the denominator is 1).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
