//! Rational polynomial helpers: evaluation, Euclidean remainders, Sturm
//! chains, resultants and discriminants. Coefficients are stored ascending,
//! with no trailing zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim(mut p: QPoly) -> QPoly {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn from_int(coeffs: &[BigInt]) -> QPoly {
    trim(coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
}

pub(crate) fn degree(p: &[BigRational]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn derivative(p: &[BigRational]) -> QPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
            .collect(),
    )
}

/// Remainder of `a` divided by `b` over Q; `b` must be nonzero.
pub(crate) fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r: QPoly = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - db;
        let q = lr / &lb;
        for (k, bc) in b.iter().enumerate() {
            let idx = k + shift;
            let t = &r[idx] - &q * bc;
            r[idx] = t;
        }
        r = trim(r);
    }
    trim(r)
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero))
            .collect(),
    )
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
            .collect(),
    )
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(out)
}

/// Quotient of the long division of `a` by `b`.
pub(crate) fn quo(a: &[BigRational], b: &[BigRational]) -> QPoly {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r: QPoly = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - db;
        let c = lr / &lb;
        q[shift] = c.clone();
        for (k, bc) in b.iter().enumerate() {
            let t = &r[k + shift] - &c * bc;
            r[k + shift] = t;
        }
        r = trim(r);
    }
    trim(q)
}

/// Squarefree part `p / gcd(p, p')`, monic.
pub(crate) fn squarefree_part(p: &[BigRational]) -> QPoly {
    let g = gcd_monic(p, &derivative(p));
    let mut sf = quo(p, &g);
    if let Some(lc) = sf.last().cloned() {
        for c in &mut sf {
            *c = &*c / &lc;
        }
    }
    sf
}

/// Monic gcd over Q.
pub(crate) fn gcd_monic(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &lc;
        }
    }
    x
}

pub(crate) fn is_squarefree(p: &[BigRational]) -> bool {
    degree(&gcd_monic(p, &derivative(p))) == Some(0)
}

/// Resultant over Q via the Euclidean remainder chain.
pub(crate) fn resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let f = trim(f.to_vec());
    let g = trim(g.to_vec());
    if f.is_empty() || g.is_empty() {
        return BigRational::zero();
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    if n == 0 {
        return pow_rat(&g[0], m as u32);
    }
    if m == 0 {
        return pow_rat(&f[0], n as u32);
    }
    if m < n {
        let s = if (m * n) % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        return s * resultant(&g, &f);
    }
    let r = rem(&f, &g);
    if r.is_empty() {
        return BigRational::zero();
    }
    let dr = r.len() - 1;
    let sign = if (m * n) % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    sign * pow_rat(g.last().unwrap(), (m - dr) as u32) * resultant(&g, &r)
}

fn pow_rat(b: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// Discriminant of a monic polynomial: (-1)^{d(d-1)/2} Res(f, f').
/// By convention the discriminant of a linear polynomial is 1.
pub(crate) fn disc_monic(f: &[BigRational]) -> BigRational {
    let d = degree(f).expect("nonzero polynomial");
    if d <= 1 {
        return BigRational::one();
    }
    let r = resultant(f, &derivative(f));
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Sturm chain of a squarefree polynomial.
pub(crate) fn sturm_chain(f: &[BigRational]) -> Vec<QPoly> {
    let mut chain = vec![trim(f.to_vec()), derivative(f)];
    loop {
        let k = chain.len();
        if chain[k - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = rem(&chain[k - 2], &chain[k - 1]);
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut prev = 0i32;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

pub(crate) fn sign_variations_at(chain: &[QPoly], x: &BigRational) -> usize {
    variations(chain.iter().map(|p| rat_sign(&eval(p, x))))
}

pub(crate) fn rat_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots in the half-open interval (a, b].
pub(crate) fn count_roots(chain: &[QPoly], a: &BigRational, b: &BigRational) -> usize {
    let va = sign_variations_at(chain, a);
    let vb = sign_variations_at(chain, b);
    va.saturating_sub(vb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn qp(coeffs: &[i64]) -> QPoly {
        trim(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn rem_of_cubic_by_quadratic() {
        // x^3 - 2 mod x^2 - 2 = 2x - 2
        let r = rem(&qp(&[-2, 0, 0, 1]), &qp(&[-2, 0, 1]));
        assert_eq!(r, qp(&[-2, 2]));
    }

    #[test]
    fn discriminants_of_quadratics_and_cubics() {
        assert_eq!(disc_monic(&qp(&[-2, 0, 1])), q(8));
        assert_eq!(disc_monic(&qp(&[-5, 0, 1])), q(20));
        assert_eq!(disc_monic(&qp(&[-3, 0, 1])), q(12));
        assert_eq!(disc_monic(&qp(&[-1, -1, 1])), q(5));
        assert_eq!(disc_monic(&qp(&[-2, 0, 0, 1])), q(-108));
        assert_eq!(disc_monic(&qp(&[7, 1])), q(1));
    }

    #[test]
    fn resultant_gives_norms() {
        // Res(x^2 - 2, x + 1) = (1 + sqrt2)(1 - sqrt2) = -1
        assert_eq!(resultant(&qp(&[-2, 0, 1]), &qp(&[1, 1])), q(-1));
        // Res(x^2 - 5, x) = -5
        assert_eq!(resultant(&qp(&[-5, 0, 1]), &qp(&[0, 1])), q(-5));
    }

    #[test]
    fn sturm_counts_roots_of_sqrt2() {
        let chain = sturm_chain(&qp(&[-2, 0, 1]));
        assert_eq!(count_roots(&chain, &q(-3), &q(3)), 2);
        assert_eq!(count_roots(&chain, &q(0), &q(3)), 1);
        assert_eq!(count_roots(&chain, &q(1), &q(2)), 1);
        assert_eq!(count_roots(&chain, &q(2), &q(3)), 0);
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&qp(&[-2, 0, 1])));
        // (x-1)^2 = x^2 - 2x + 1
        assert!(!is_squarefree(&qp(&[1, -2, 1])));
    }
}
