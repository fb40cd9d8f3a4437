//! Exact arithmetic in a monogenic number field K = Q(theta), with certified
//! real embeddings and exact sign determination.
//!
//! The field is described by a monic integer minimal polynomial. Elements are
//! rational coordinate vectors in the power basis 1, theta, ..., theta^{d-1};
//! all ring operations are exact. Real embeddings are realized as certified
//! rational intervals obtained by bisecting isolating intervals of the real
//! roots; sign queries refine until the interval excludes zero, with a
//! norm-based lower bound certifying termination.

mod interval;
mod poly;
mod roots;

pub use interval::{format_rational, parse_rational, Interval};
pub use roots::ComplexBox;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};
use poly::QPoly;
use roots::RootSlot;

/// Construction options for [`NumberField::new_with`].
#[derive(Clone, Copy, Debug)]
pub struct FieldOptions {
    /// Accept polynomials of degree > 4 whose irreducibility cannot be
    /// verified exactly here.
    pub assume_irreducible: bool,
    /// User assertion that the class number is one. Required by every
    /// module-level operation.
    pub class_number_one: bool,
}

impl Default for FieldOptions {
    fn default() -> Self {
        FieldOptions { assume_irreducible: false, class_number_one: true }
    }
}

/// A monogenic number field Q(theta) with certified root isolations.
pub struct NumberField {
    min_poly: Vec<BigInt>,
    min_poly_q: QPoly,
    degree: usize,
    r: usize,
    s: usize,
    discriminant: BigInt,
    real_roots: Vec<RootSlot>,
    complex_boxes: Vec<ComplexBox>,
    class_number_one: bool,
    power_table: Vec<Vec<BigRational>>,
    cache: Mutex<Vec<RootSlot>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("min_poly", &self.min_poly)
            .field("signature", &(self.r, self.s))
            .field("discriminant", &self.discriminant)
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// Builds the field from ascending integer coefficients of a monic
    /// minimal polynomial (constant term first, leading 1 last).
    pub fn new(coeffs: &[i64]) -> Result<Arc<Self>> {
        Self::new_with(
            &coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(),
            FieldOptions::default(),
        )
    }

    pub fn new_with(coeffs: &[BigInt], opts: FieldOptions) -> Result<Arc<Self>> {
        if coeffs.len() < 2 || coeffs.last() != Some(&BigInt::one()) {
            return Err(Error::InvalidMinPoly);
        }
        let degree = coeffs.len() - 1;
        let fq = poly::from_int(coeffs);
        if !poly::is_squarefree(&fq) {
            return Err(Error::NonSquarefree);
        }
        match verify_irreducible(coeffs)? {
            true => {}
            false if opts.assume_irreducible => {}
            false => return Err(Error::IrreducibilityUnverified(degree)),
        }
        let real_roots = roots::isolate_real_roots(&fq);
        let r = real_roots.len();
        debug_assert_eq!((degree - r) % 2, 0);
        let s = (degree - r) / 2;
        let complex_boxes = roots::isolate_complex_boxes(&fq, s);
        let disc_q = poly::disc_monic(&fq);
        debug_assert!(disc_q.denom().is_one());
        let discriminant = disc_q.to_integer();

        // theta^(d+k) reduced to the power basis, for k = 0 .. d-2.
        let mut power_table: Vec<Vec<BigRational>> = Vec::new();
        let head: Vec<BigRational> =
            coeffs[..degree].iter().map(|c| -BigRational::from(c.clone())).collect();
        power_table.push(head.clone());
        for _ in 1..degree.saturating_sub(1) {
            let prev = power_table.last().unwrap();
            let mut next = vec![BigRational::zero(); degree];
            // multiply by theta: shift, then reduce the overflow coefficient
            let top = prev[degree - 1].clone();
            for j in (1..degree).rev() {
                next[j] = prev[j - 1].clone() + &top * &head[j];
            }
            next[0] = &top * &head[0];
            power_table.push(next);
        }

        Ok(Arc::new(NumberField {
            min_poly: coeffs.to_vec(),
            min_poly_q: fq,
            degree,
            r,
            s,
            discriminant,
            cache: Mutex::new(real_roots.clone()),
            real_roots,
            complex_boxes,
            class_number_one: opts.class_number_one,
            power_table,
        }))
    }

    /// The rational field presented as Q(theta) with theta = 0.
    pub fn rationals() -> Arc<Self> {
        Self::new(&[0, 1]).expect("x is a valid minimal polynomial")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// (number of real embeddings, number of conjugate complex pairs).
    pub fn signature(&self) -> (usize, usize) {
        (self.r, self.s)
    }

    pub fn is_totally_real(&self) -> bool {
        self.s == 0
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn class_number_one(&self) -> bool {
        self.class_number_one
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    /// Initial isolating intervals of the real roots, ascending.
    pub fn root_isolations(&self) -> Vec<Interval> {
        self.real_roots.iter().map(|s| s.interval.clone()).collect()
    }

    /// Stored isolating boxes for the conjugate complex pairs.
    pub fn complex_root_boxes(&self) -> &[ComplexBox] {
        &self.complex_boxes
    }

    fn check_place(&self, place: usize) -> Result<()> {
        if place >= self.r {
            return Err(Error::PlaceOutOfRange { place, count: self.r });
        }
        Ok(())
    }

    /// A certified interval for the root at `place`, refined until it is no
    /// wider than `width`. Refinements are cached and monotone, so repeated
    /// queries nest.
    fn root_interval(&self, place: usize, width: &BigRational) -> Interval {
        let mut cache = self.cache.lock().unwrap();
        let slot = &mut cache[place];
        while !slot.is_point() && &slot.interval.width() > width {
            *slot = roots::bisect(&self.min_poly_q, slot);
        }
        slot.interval.clone()
    }

    fn refine_root(&self, place: usize) -> Interval {
        let mut cache = self.cache.lock().unwrap();
        let slot = &mut cache[place];
        if !slot.is_point() {
            *slot = roots::bisect(&self.min_poly_q, slot);
        }
        slot.interval.clone()
    }
}

/// Verifies irreducibility over Q exactly for degree <= 4.
/// Ok(false) means "could not verify" (degree > 4, or the constant term
/// resisted factoring); Err(Reducible) means a factor was found.
fn verify_irreducible(coeffs: &[BigInt]) -> Result<bool> {
    let d = coeffs.len() - 1;
    if d == 1 {
        return Ok(true);
    }
    if coeffs[0].is_zero() {
        return Err(Error::Reducible);
    }
    let Some(divs) = signed_divisors(&coeffs[0]) else {
        return Ok(false);
    };
    for t in &divs {
        if eval_int(coeffs, t).is_zero() {
            return Err(Error::Reducible);
        }
    }
    if d <= 3 {
        return Ok(true);
    }
    if d == 4 {
        // Monic quartic with no rational root factors over Q iff it splits
        // into two monic integer quadratics (x^2+ax+b)(x^2+cx+e).
        let f3 = &coeffs[3];
        let f2 = &coeffs[2];
        let f1 = &coeffs[1];
        for b in &divs {
            let e = &coeffs[0] / b;
            // a + c = f3 and ac = f2 - b - e
            let p = f2 - b - &e;
            let disc = f3 * f3 - BigInt::from(4) * &p;
            if disc.sign() == num_bigint::Sign::Minus {
                continue;
            }
            let root = disc.sqrt();
            if &root * &root != disc {
                continue;
            }
            for sr in [root.clone(), -root] {
                let two_a = f3 + &sr;
                if (&two_a % BigInt::from(2)).is_zero() {
                    let a = two_a / BigInt::from(2);
                    let c = f3 - &a;
                    if &a * &e + b * &c == *f1 {
                        return Err(Error::Reducible);
                    }
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// All positive and negative divisors of n (nonzero), or None when trial
/// division gives out before the factorization completes.
fn signed_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &p * &p <= m {
        if p > limit {
            return None;
        }
        let mut e = 0;
        while (&m % &p).is_zero() {
            m = m / &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk = &pk * &p;
            }
        }
        divs = next;
    }
    let mut out = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        out.push(-&d);
        out.push(d);
    }
    Some(out)
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// An element of K as rational coordinates in the power basis.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", format_rational(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", format_rational(&a))?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", k)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: Arc<NumberField>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::InvalidInstance(format!(
                "element needs {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement { field, coords })
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement {
            field: field.clone(),
            coords: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = q;
        FieldElement { field: field.clone(), coords }
    }

    pub fn from_integer(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from(BigInt::from(n)))
    }

    /// The generator theta.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        if field.degree() == 1 {
            // theta is the rational root itself
            coords[0] = -BigRational::from(field.min_poly[0].clone());
        } else {
            coords[1] = BigRational::one();
        }
        FieldElement { field: field.clone(), coords }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Some(q) when the element is the rational number q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "field mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement { field: self.field.clone(), coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement { field: self.field.clone(), coords }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let d = self.field.degree();
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut coords: Vec<BigRational> = conv[..d].to_vec();
        for (k, c) in conv[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, red) in self.field.power_table[k].iter().enumerate() {
                coords[j] += c * red;
            }
        }
        FieldElement { field: self.field.clone(), coords }
    }

    pub fn mul_by_theta(&self) -> Self {
        self.mul(&Self::generator(&self.field))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(&self.field, q.recip()));
        }
        // Extended Euclid over Q[x]: find t with t*g = 1 mod f.
        let f = self.field.min_poly_q.clone();
        let g = poly::trim(self.coords.clone());
        let (mut r0, mut r1) = (f, g);
        let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
        while poly::degree(&r1).map_or(false, |d| d > 0) {
            let q = poly::quo(&r0, &r1);
            let r = poly::rem(&r0, &r1);
            let t = poly::sub(&t0, &poly::mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        debug_assert!(!r1.is_empty(), "minimal polynomial must be irreducible");
        let c = r1[0].recip();
        let mut coords = vec![BigRational::zero(); self.field.degree()];
        for (k, v) in t1.iter().enumerate() {
            coords[k] = v * &c;
        }
        Some(FieldElement { field: self.field.clone(), coords })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.mul(&inv))
    }

    /// Determinant of the multiplication-by-self matrix.
    pub fn norm(&self) -> BigRational {
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        let mut xj = self.clone();
        for _ in 0..d {
            cols.push(xj.coords.clone());
            xj = xj.mul_by_theta();
        }
        // cols[j][i]: row i, column j
        let mat: Vec<Vec<BigRational>> =
            (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        crate::linalg::det(&mat)
    }

    /// Trace of the multiplication-by-self matrix.
    pub fn trace(&self) -> BigRational {
        let d = self.field.degree();
        let mut acc = BigRational::zero();
        let mut xj = self.clone();
        for j in 0..d {
            acc += xj.coords[j].clone();
            xj = xj.mul_by_theta();
        }
        acc
    }

    /// Norm through the resultant route: N(g(theta)) = Res(f, g) for monic f.
    pub fn norm_resultant(&self) -> BigRational {
        let g = poly::trim(self.coords.clone());
        if g.is_empty() {
            return BigRational::zero();
        }
        poly::resultant(&self.field.min_poly_q, &g)
    }

    /// A certified interval of width at most `width` containing the image of
    /// the element under the real embedding `place` (0-based).
    pub fn embed(&self, place: usize, width: &BigRational) -> Result<Interval> {
        self.field.check_place(place)?;
        if let Some(q) = self.as_rational() {
            return Ok(Interval::point(q.clone()));
        }
        let coeffs = &self.coords;
        let mut root = self.field.root_interval(place, width);
        loop {
            let val = root.eval_poly(coeffs);
            if &val.width() <= width {
                return Ok(val);
            }
            root = self.field.refine_root(place);
        }
    }

    /// Exact sign of the element at a real place. Zero is decided from the
    /// coordinates; otherwise the embedding interval is refined until it
    /// excludes zero, which the norm-based lower bound
    /// |sigma_v(x)| >= |N(x)| / prod_{j != v} sup|sigma_j(x)| guarantees to
    /// happen at a computable width.
    pub fn sign_at(&self, place: usize) -> Result<i32> {
        self.field.check_place(place)?;
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(poly::rat_sign(q));
        }
        let mut width = BigRational::one();
        let sixteenth = BigRational::new(BigInt::one(), BigInt::from(16));
        for _ in 0..3 {
            let iv = self.embed(place, &width)?;
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
            width *= &sixteenth;
        }
        // Certified floor for |sigma_place(x)|.
        let norm_abs = self.norm().abs();
        debug_assert!(!norm_abs.is_zero());
        let mut others = BigRational::one();
        for j in 0..self.field.r {
            if j != place {
                others *= self.embed(j, &BigRational::one())?.abs_upper();
            }
        }
        let floor = norm_abs / others;
        loop {
            let iv = self.embed(place, &width)?;
            if let Some(s) = iv.sign() {
                return Ok(s);
            }
            assert!(
                width >= floor,
                "sign must resolve once the interval is narrower than the norm floor"
            );
            width *= &sixteenth;
        }
    }

    /// The image under the nontrivial automorphism of a quadratic field
    /// (theta -> -f1 - theta); identity on Q. Unsupported above degree 2.
    pub(crate) fn galois_conjugate(&self) -> Option<Self> {
        match self.field.degree() {
            1 => Some(self.clone()),
            2 => {
                let b = BigRational::from(self.field.min_poly[1].clone());
                let coords = vec![
                    &self.coords[0] - &self.coords[1] * &b,
                    -self.coords[1].clone(),
                ];
                Some(FieldElement { field: self.field.clone(), coords })
            }
            _ => None,
        }
    }
}

/// Exact check of the product formula for nonzero x: the archimedean side
/// prod |sigma_v(x)|^{d_v} equals |N(x)|, verified by comparing the
/// multiplication-matrix norm against an independent resultant-based norm.
pub fn product_formula_check(x: &FieldElement) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::Degenerate("product formula needs x != 0".into()));
    }
    let a = x.norm().abs();
    let b = x.norm_resultant().abs();
    Ok(!a.is_zero() && a == b)
}

/// For a quadratic field, an element whose square is the discriminant.
pub(crate) fn sqrt_disc_element(field: &Arc<NumberField>) -> Option<FieldElement> {
    match field.degree() {
        1 => Some(FieldElement::one(field)),
        2 => {
            // (2 theta + f1)^2 = f1^2 - 4 f0 = disc
            let b = BigRational::from(field.min_poly[1].clone());
            let coords = vec![b, BigRational::from(BigInt::from(2))];
            Some(FieldElement { field: field.clone(), coords })
        }
        _ => None,
    }
}

/// The dual elements w_0..w_{d-1} of the power basis under the embedding
/// pairing of a totally real field: for every x in K and coordinate j,
///   coord_j(x) = sum_v sigma_v(w_j) * sigma_v(x).
/// They are the coefficients of f(t)/(t - theta) divided by f'(theta).
pub(crate) fn dual_power_basis(field: &Arc<NumberField>) -> Vec<FieldElement> {
    let d = field.degree();
    let theta = FieldElement::generator(field);
    // q_{d-1} = 1; q_{k-1} = f_k + theta * q_k
    let mut qs = vec![FieldElement::zero(field); d];
    qs[d - 1] = FieldElement::one(field);
    for k in (1..d).rev() {
        let fk = FieldElement::from_rational(field, BigRational::from(field.min_poly[k].clone()));
        qs[k - 1] = fk.add(&theta.mul(&qs[k]));
    }
    // f'(theta)
    let mut fp = FieldElement::zero(field);
    for k in 1..=d {
        let c = BigRational::from(BigInt::from(k)) * BigRational::from(field.min_poly[k].clone());
        fp = fp.add(&theta.pow(k as u32 - 1).scale(&c));
    }
    let fp_inv = fp.inverse().expect("f' (theta) is nonzero for squarefree f");
    qs.into_iter().map(|q| q.mul(&fp_inv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(&[-2, 0, 1]).unwrap()
    }

    fn sqrt5() -> Arc<NumberField> {
        NumberField::new(&[-5, 0, 1]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn constructs_the_three_example_fields() {
        let f = NumberField::new(&[-1, 1]).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.signature(), (1, 0));
        assert_eq!(f.discriminant(), &BigInt::one());

        let f = sqrt2();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.signature(), (2, 0));
        assert_eq!(f.discriminant(), &BigInt::from(8));
        assert!(f.is_totally_real());

        let f = NumberField::new(&[-2, 0, 0, 1]).unwrap();
        assert_eq!(f.signature(), (1, 1));
        assert!(!f.is_totally_real());
        assert_eq!(f.complex_root_boxes().len(), 1);
    }

    #[test]
    fn rejects_bad_minimal_polynomials() {
        assert!(matches!(NumberField::new(&[1, -2, 1]), Err(Error::NonSquarefree)));
        // x^2 - 1 = (x-1)(x+1)
        assert!(matches!(NumberField::new(&[-1, 0, 1]), Err(Error::Reducible)));
        // x^2 - x = x(x-1) is not squarefree? It is squarefree; it is reducible.
        assert!(matches!(NumberField::new(&[0, -1, 1]), Err(Error::Reducible)));
        // x^4 + 2x^2 + 1 = (x^2+1)^2
        assert!(matches!(NumberField::new(&[1, 0, 2, 0, 1]), Err(Error::NonSquarefree)));
        // x^4 + 3x^2 + 2 = (x^2+1)(x^2+2)
        assert!(matches!(NumberField::new(&[2, 0, 3, 0, 1]), Err(Error::Reducible)));
        // degree 5 requires the override
        assert!(matches!(
            NumberField::new(&[-2, 0, 0, 0, 0, 1]),
            Err(Error::IrreducibilityUnverified(5))
        ));
        let opts = FieldOptions { assume_irreducible: true, class_number_one: true };
        let coeffs: Vec<BigInt> = [-2, 0, 0, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert!(NumberField::new_with(&coeffs, opts).is_ok());
    }

    #[test]
    fn quartic_irreducibility_catches_quadratic_splits() {
        // x^4 - 10x^2 + 1 = minimal polynomial of sqrt2 + sqrt3: irreducible
        let f = NumberField::new(&[1, 0, -10, 0, 1]).unwrap();
        assert_eq!(f.signature(), (4, 0));
        // x^4 - 5x^2 + 6 = (x^2-2)(x^2-3)
        assert!(matches!(NumberField::new(&[6, 0, -5, 0, 1]), Err(Error::Reducible)));
    }

    #[test]
    fn embeds_sqrt2_with_certified_interval() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let w = q(1, 100);
        let iv = theta.embed(0, &w).unwrap();
        assert!(iv.width() <= w);
        // certificate: lo^2 <= 2 <= hi^2 for the positive root
        assert!(iv.lo() * iv.lo() <= q(2, 1));
        assert!(iv.hi() * iv.hi() >= q(2, 1));
        assert!(iv.lo().is_positive());

        // place 1 is the negative root; 1 + theta maps near -0.41421
        let x = FieldElement::one(&f).add(&theta);
        let iv2 = x.embed(1, &q(1, 1000)).unwrap();
        assert!(iv2.contains(&q(-41421, 100000)));

        // rational constants embed exactly
        let c = FieldElement::from_integer(&f, 3);
        let p = c.embed(1, &w).unwrap();
        assert_eq!(p.lo(), p.hi());
        assert_eq!(p.lo(), &q(3, 1));
    }

    #[test]
    fn embedding_intervals_nest() {
        let f = sqrt2();
        let x = FieldElement::generator(&f).add(&FieldElement::from_integer(&f, 1));
        let wide = x.embed(0, &q(1, 10)).unwrap();
        let narrow = x.embed(0, &q(1, 10_000)).unwrap();
        assert!(wide.contains_interval(&narrow));
    }

    #[test]
    fn sign_determination() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        let x = theta.sub(&one);
        assert_eq!(x.sign_at(0).unwrap(), 1);
        assert_eq!(x.sign_at(1).unwrap(), -1);
        assert_eq!(FieldElement::zero(&f).sign_at(0).unwrap(), 0);
        // theta^2 - 2 reduces to zero in coordinates
        let z = theta.mul(&theta).sub(&FieldElement::from_integer(&f, 2));
        assert!(z.is_zero());
        assert_eq!(z.sign_at(0).unwrap(), 0);
        assert_eq!(z.sign_at(1).unwrap(), 0);
    }

    #[test]
    fn norms_and_traces() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let x = FieldElement::one(&f).add(&theta);
        assert_eq!(x.norm(), q(-1, 1));
        assert_eq!(x.trace(), q(2, 1));
        let c = FieldElement::from_rational(&f, q(3, 2));
        assert_eq!(c.norm(), q(9, 4));

        let g = sqrt5();
        let t5 = FieldElement::generator(&g);
        assert_eq!(t5.norm(), q(-5, 1));
    }

    #[test]
    fn norm_is_multiplicative() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let a = theta.scale(&q(3, 2)).add(&FieldElement::from_integer(&f, 2));
        let b = theta.sub(&FieldElement::from_rational(&f, q(1, 3)));
        assert_eq!(a.norm() * b.norm(), a.mul(&b).norm());
    }

    #[test]
    fn field_axioms_round_trip() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let a = theta.scale(&q(2, 3)).add(&FieldElement::from_integer(&f, 1));
        let b = theta.add(&FieldElement::from_integer(&f, 4));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }

    #[test]
    fn product_formula_holds() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let x = FieldElement::one(&f).add(&theta);
        assert!(product_formula_check(&x).unwrap());

        let rat = NumberField::rationals();
        let seven = FieldElement::from_integer(&rat, 7);
        assert!(product_formula_check(&seven).unwrap());
        assert_eq!(seven.norm().abs(), q(7, 1));

        let g = sqrt5();
        let t5 = FieldElement::generator(&g);
        assert!(product_formula_check(&t5).unwrap());
        assert_eq!(t5.norm_resultant().abs(), q(5, 1));

        assert!(product_formula_check(&FieldElement::zero(&f)).is_err());
    }

    #[test]
    fn embedding_product_brackets_the_norm() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let x = theta.scale(&q(2, 1)).add(&FieldElement::from_integer(&f, 3));
        let w = q(1, 1_000_000);
        let p = x.embed(0, &w).unwrap().mul(&x.embed(1, &w).unwrap());
        assert!(p.contains(&x.norm()));
    }

    #[test]
    fn dual_power_basis_recovers_coordinates() {
        let f = sqrt2();
        let duals = dual_power_basis(&f);
        let theta = FieldElement::generator(&f);
        let x = theta.scale(&q(5, 3)).add(&FieldElement::from_integer(&f, 2));
        let w = q(1, 1 << 20);
        for j in 0..2 {
            let mut acc = Interval::point(BigRational::zero());
            for v in 0..2 {
                let wv = duals[j].embed(v, &w).unwrap();
                let xv = x.embed(v, &w).unwrap();
                acc = acc.add(&wv.mul(&xv));
            }
            assert!(acc.contains(&x.coords()[j]));
        }
    }

    #[test]
    fn galois_conjugate_swaps_places() {
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let x = theta.scale(&q(2, 1)).add(&FieldElement::from_integer(&f, 1));
        let c = x.galois_conjugate().unwrap();
        // sigma_0(conj x) = sigma_1(x)
        let w = q(1, 10_000);
        let a = c.embed(0, &w).unwrap();
        let b = x.embed(1, &w).unwrap();
        assert!(a.lo() <= b.hi() && b.lo() <= a.hi());
        // and the conjugate of the conjugate is x
        assert_eq!(c.galois_conjugate().unwrap(), x);
    }

    #[test]
    fn sqrt_disc_squares_to_the_discriminant() {
        for coeffs in [[-2i64, 0, 1], [-5, 0, 1], [-1, -1, 1]] {
            let f = NumberField::new(&coeffs).unwrap();
            let s = sqrt_disc_element(&f).unwrap();
            let sq = s.mul(&s);
            assert_eq!(
                sq.as_rational().unwrap(),
                &BigRational::from(f.discriminant().clone())
            );
        }
    }
}
