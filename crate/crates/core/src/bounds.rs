//! Certified verifiers for the lattice-point inequalities: the classical and
//! adelic Blichfeldt bounds, the Laguerre-weighted symmetric sharpening, the
//! symmetric strict bound, and the embedded variant. A verifier emits a
//! report only when its dimension hypothesis holds; comparisons are exact
//! whenever the volume is exact and certified-interval otherwise.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::adelic::{general_body, AdelicPolytope, MeasureConvention, Volume};
use crate::linalg;
use crate::numberfield::{format_rational, NumberField};
use crate::omodule::{KPoint, OModule};
use crate::realgeom;
use crate::{Error, Result};

/// Record of the dimension-hypothesis verification attached to a report.
#[derive(Clone, Debug)]
pub struct HypothesisRecord {
    pub description: String,
    pub observed: usize,
    pub required: usize,
}

/// Exact rational or certified interval, for report serialization.
#[derive(Clone, Debug)]
pub enum ReportValue {
    Exact(BigRational),
    Interval { lo: BigRational, hi: BigRational },
}

impl ReportValue {
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        match self {
            ReportValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            ReportValue::Interval { lo, hi } => {
                ((lo + hi) / BigRational::from(BigInt::from(2)))
                    .to_f64()
                    .unwrap_or(f64::NAN)
            }
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            ReportValue::Exact(q) => serde_json::Value::String(format_rational(q)),
            ReportValue::Interval { lo, hi } => serde_json::json!([
                format_rational(lo),
                format_rational(hi)
            ]),
        }
    }
}

/// Outcome of one bound verification.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub bound_name: String,
    pub lhs: usize,
    pub rhs: ReportValue,
    pub holds: bool,
    pub slack: ReportValue,
    pub hypothesis: HypothesisRecord,
}

impl BoundReport {
    /// One JSON line with canonical (alphabetical) key order.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({
            "bound_name": self.bound_name,
            "lhs": self.lhs,
            "rhs": self.rhs.to_json(),
            "holds": self.holds,
            "slack": self.slack.to_json(),
            "hypothesis": {
                "description": self.hypothesis.description,
                "observed": self.hypothesis.observed,
                "required": self.hypothesis.required,
            },
        })
        .to_string()
    }
}

fn report_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u8).pow(30))
}

fn to_report_value(v: &Volume) -> Result<ReportValue> {
    Ok(match v {
        Volume::Rational(q) => ReportValue::Exact(q.clone()),
        other => {
            let iv = other.to_interval(&report_width())?;
            ReportValue::Interval { lo: iv.lo().clone(), hi: iv.hi().clone() }
        }
    })
}

fn make_report(
    name: &str,
    lhs: usize,
    rhs: Volume,
    strict: bool,
    hypothesis: HypothesisRecord,
) -> Result<BoundReport> {
    let lhs_q = BigRational::from(BigInt::from(lhs));
    let cmp = rhs.cmp_rational(&lhs_q)?;
    let holds = match cmp {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => !strict,
        std::cmp::Ordering::Less => false,
    };
    let slack = rhs.scale_add(&BigRational::one(), &-lhs_q);
    Ok(BoundReport {
        bound_name: name.into(),
        lhs,
        rhs: to_report_value(&rhs)?,
        holds,
        slack: to_report_value(&slack)?,
        hypothesis,
    })
}

/// Affine dimension over K of a point configuration.
pub fn dim_over_k(points: &[KPoint]) -> usize {
    realgeom::affine_rank(points)
}

/// Affine dimension over Q of the embedded images (equivalently, of the flat
/// rational coordinate vectors).
pub fn dim_over_q(points: &[KPoint]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: linalg::QMat = points[1..]
        .iter()
        .map(|p| {
            p.flat()
                .iter()
                .zip(points[0].flat())
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    linalg::rank(&rows)
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

fn require_dim(
    bound: &str,
    description: &str,
    observed: usize,
    required: usize,
) -> Result<HypothesisRecord> {
    if observed != required {
        return Err(Error::HypothesisViolated {
            bound: bound.into(),
            detail: format!("{}: observed {}, required {}", description, observed, required),
        });
    }
    Ok(HypothesisRecord {
        description: description.into(),
        observed,
        required,
    })
}

fn require_symmetric(bound: &str, c: &AdelicPolytope) -> Result<()> {
    if !c.is_symmetric() {
        return Err(Error::HypothesisViolated {
            bound: bound.into(),
            detail: "body is not 0-symmetric".into(),
        });
    }
    Ok(())
}

/// |C cap K^n| <= (n!)^d vol(C) + n for totally real K, under
/// dim_K(C cap K^n) = n.
pub fn blichfeldt_adelic(c: &AdelicPolytope, cap: usize) -> Result<BoundReport> {
    let pts = c.lattice_points(cap)?;
    blichfeldt_adelic_with_points(c, &pts)
}

pub fn blichfeldt_adelic_with_points(c: &AdelicPolytope, pts: &[KPoint]) -> Result<BoundReport> {
    if !c.field().is_totally_real() {
        return Err(Error::NotTotallyReal(c.field().signature().1));
    }
    let n = c.n();
    let d = c.field().degree();
    let hyp = require_dim("blichfeldt_adelic", "dim_K of the lattice points", dim_over_k(pts), n)?;
    let vol = c.volume(MeasureConvention::Proof)?;
    let coef = BigRational::from(factorial(n).pow(d as u32));
    let rhs = vol.scale_add(&coef, &BigRational::from(BigInt::from(n)));
    make_report("blichfeldt_adelic", pts.len(), rhs, false, hyp)
}

/// Symmetric sharpening with the Laguerre weight:
/// |C cap K^n| <= (nd)!/2^{nd} L_{nd}(2) vol(C) / sqrt|disc|^n, under
/// dim_Q(C cap K^n) = nd.
pub fn henze_adelic(c: &AdelicPolytope, cap: usize) -> Result<BoundReport> {
    let pts = c.lattice_points(cap)?;
    henze_adelic_with_points(c, &pts)
}

pub fn henze_adelic_with_points(c: &AdelicPolytope, pts: &[KPoint]) -> Result<BoundReport> {
    require_symmetric("henze_adelic", c)?;
    let nd = c.n() * c.field().degree();
    let hyp = require_dim("henze_adelic", "dim_Q of the lattice points", dim_over_q(pts), nd)?;
    let vol = c.volume(MeasureConvention::WithDiscriminant)?;
    let coef = BigRational::from(factorial(nd))
        / BigRational::from(BigInt::from(2u8).pow(nd as u32))
        * laguerre(nd, &BigRational::from(BigInt::from(2)));
    let rhs = vol.scale_add(&coef, &BigRational::zero());
    make_report("henze_adelic", pts.len(), rhs, false, hyp)
}

/// Strict symmetric bound: |C cap K^n| < (5n)^{nd} vol(C), under
/// dim_K(C cap K^n) = n.
pub fn gaudron(c: &AdelicPolytope, cap: usize) -> Result<BoundReport> {
    let pts = c.lattice_points(cap)?;
    gaudron_with_points(c, &pts)
}

pub fn gaudron_with_points(c: &AdelicPolytope, pts: &[KPoint]) -> Result<BoundReport> {
    require_symmetric("gaudron", c)?;
    let n = c.n();
    let nd = n * c.field().degree();
    let hyp = require_dim("gaudron", "dim_K of the lattice points", dim_over_k(pts), n)?;
    let vol = c.volume(MeasureConvention::Proof)?;
    let coef = BigRational::from(BigInt::from(5 * n as u64).pow(nd as u32));
    let rhs = vol.scale_add(&coef, &BigRational::zero());
    make_report("gaudron", pts.len(), rhs, true, hyp)
}

/// Embedded Blichfeldt: |C cap K^n| <= (nd)! vol(C)/sqrt|disc|^n + nd, under
/// dim_Q(C cap K^n) = nd.
pub fn blichfeldt_embedded(c: &AdelicPolytope, cap: usize) -> Result<BoundReport> {
    let pts = c.lattice_points(cap)?;
    blichfeldt_embedded_with_points(c, &pts)
}

pub fn blichfeldt_embedded_with_points(
    c: &AdelicPolytope,
    pts: &[KPoint],
) -> Result<BoundReport> {
    let nd = c.n() * c.field().degree();
    let hyp = require_dim(
        "blichfeldt_embedded",
        "dim_Q of the lattice points",
        dim_over_q(pts),
        nd,
    )?;
    let vol = c.volume(MeasureConvention::WithDiscriminant)?;
    let coef = BigRational::from(factorial(nd));
    let rhs = vol.scale_add(&coef, &BigRational::from(BigInt::from(nd)));
    make_report("blichfeldt_embedded", pts.len(), rhs, false, hyp)
}

/// Runs every verifier applicable to the body (the symmetric ones only on
/// symmetric bodies), computing the lattice points once.
pub fn verify_all(
    c: &AdelicPolytope,
    cap: usize,
) -> Result<Vec<(String, Result<BoundReport>)>> {
    let pts = c.lattice_points(cap)?;
    let mut out = vec![
        (
            "blichfeldt".to_string(),
            blichfeldt_adelic_with_points(c, &pts),
        ),
        (
            "embedded".to_string(),
            blichfeldt_embedded_with_points(c, &pts),
        ),
    ];
    if c.is_symmetric() {
        out.push(("henze".to_string(), henze_adelic_with_points(c, &pts)));
        out.push(("gaudron".to_string(), gaudron_with_points(c, &pts)));
    }
    Ok(out)
}

fn classical_body(
    vertices: &[Vec<BigRational>],
    lattice_basis: &[Vec<BigRational>],
) -> Result<AdelicPolytope> {
    if vertices.is_empty() {
        return Err(Error::Degenerate("empty vertex list".into()));
    }
    let m = vertices[0].len();
    let field = NumberField::rationals();
    let pts: Vec<KPoint> = vertices
        .iter()
        .map(|v| KPoint::from_rationals(&field, v))
        .collect();
    let basis_pts: Vec<KPoint> = lattice_basis
        .iter()
        .map(|v| KPoint::from_rationals(&field, v))
        .collect();
    let module = OModule::from_generators(&field, m, &basis_pts)?;
    general_body(&field, m, module, &[pts])
}

/// Classical Blichfeldt over Q: |C cap L| <= m! vol(C)/det(L) + m.
pub fn blichfeldt_classical(
    vertices: &[Vec<BigRational>],
    lattice_basis: &[Vec<BigRational>],
    cap: usize,
) -> Result<BoundReport> {
    let body = classical_body(vertices, lattice_basis)?;
    let m = body.n();
    let pts = body.lattice_points(cap)?;
    let hyp = require_dim(
        "blichfeldt_classical",
        "dim of the lattice points",
        dim_over_q(&pts),
        m,
    )?;
    let vol = body.volume(MeasureConvention::Proof)?;
    let coef = BigRational::from(factorial(m));
    let rhs = vol.scale_add(&coef, &BigRational::from(BigInt::from(m)));
    make_report("blichfeldt_classical", pts.len(), rhs, false, hyp)
}

/// Classical symmetric sharpening over Q:
/// |C cap L| <= m!/2^m L_m(2) vol(C)/det(L). The vertex list is symmetrized;
/// the input must already be symmetric (C = -C).
pub fn henze_classical(
    vertices: &[Vec<BigRational>],
    lattice_basis: &[Vec<BigRational>],
    cap: usize,
) -> Result<BoundReport> {
    let (field, direct) = classical_body(vertices, lattice_basis, false)?;
    let (_, body) = classical_body(vertices, lattice_basis, true)?;
    // C = -C must already hold for the plain hull
    let _ = field;
    if direct.infinite_parts()[0] != body.infinite_parts()[0] {
        return Err(Error::HypothesisViolated {
            bound: "henze_classical".into(),
            detail: "vertex set is not 0-symmetric".into(),
        });
    }
    let m = body.n();
    let pts = body.lattice_points(cap)?;
    let hyp = require_dim(
        "henze_classical",
        "dim of the lattice points",
        dim_over_q(&pts),
        m,
    )?;
    let vol = body.volume(MeasureConvention::Proof)?;
    let coef = BigRational::from(factorial(m))
        / BigRational::from(BigInt::from(2u8).pow(m as u32))
        * laguerre(m, &BigRational::from(BigInt::from(2)));
    let rhs = vol.scale_add(&coef, &BigRational::zero());
    make_report("henze_classical", pts.len(), rhs, false, hyp)
}

/// The Laguerre-type polynomial L_m(x) = sum_k binom(m,k) x^k / k!,
/// evaluated exactly.
pub fn laguerre(m: usize, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    let mut kfact = BigInt::one();
    let mut xpow = BigRational::one();
    for k in 0..=m {
        if k > 0 {
            binom = binom * BigInt::from((m - k + 1) as u64) / BigInt::from(k as u64);
            kfact *= BigInt::from(k as u64);
            xpow *= x;
        }
        acc += BigRational::from(binom.clone()) * &xpow / BigRational::from(kfact.clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adelic::{adelic_hull, adelic_sym_hull};
    use crate::numberfield::FieldElement;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qv(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| q(v, 1)).collect()
    }

    fn z_basis(m: usize) -> Vec<Vec<BigRational>> {
        (0..m)
            .map(|i| (0..m).map(|j| q(i64::from(i == j), 1)).collect())
            .collect()
    }

    #[test]
    fn laguerre_small_values() {
        assert_eq!(laguerre(0, &q(2, 1)), q(1, 1));
        assert_eq!(laguerre(1, &q(2, 1)), q(3, 1));
        assert_eq!(laguerre(2, &q(2, 1)), q(7, 1));
    }

    #[test]
    fn laguerre_three_term_recurrence() {
        // (m+1) L_{m+1}(x) = (2m+1+x) L_m(x) - m L_{m-1}(x) for the
        // positive-coefficient variant.
        for x in [q(1, 1), q(2, 1), q(3, 1)] {
            for m in 1..=30usize {
                let lhs = q((m + 1) as i64, 1) * laguerre(m + 1, &x);
                let rhs = (q((2 * m + 1) as i64, 1) + &x) * laguerre(m, &x)
                    - q(m as i64, 1) * laguerre(m - 1, &x);
                assert_eq!(lhs, rhs, "m = {}", m);
            }
        }
    }

    #[test]
    fn dims_over_k_and_q() {
        let f = NumberField::new(&[-2, 0, 1]).unwrap();
        let theta = FieldElement::generator(&f);
        let pts = [
            KPoint::zero(&f, 1),
            KPoint::new(vec![FieldElement::one(&f)]),
            KPoint::new(vec![theta]),
        ];
        assert_eq!(dim_over_k(&pts), 1);
        assert_eq!(dim_over_q(&pts), 2);
        assert_eq!(dim_over_k(&pts[..1]), 0);
    }

    #[test]
    fn classical_sharp_family() {
        // conv{0, l e1, e2}: count = l + 2 = rhs exactly
        for l in 1..=5i64 {
            let verts = vec![qv(&[0, 0]), qv(&[l, 0]), qv(&[0, 1])];
            let rep = blichfeldt_classical(&verts, &z_basis(2), 100_000).unwrap();
            assert!(rep.holds);
            assert_eq!(rep.lhs, (l + 2) as usize);
            match &rep.slack {
                ReportValue::Exact(s) => assert!(s.is_zero(), "sharp for l = {}", l),
                _ => panic!("expected exact slack"),
            }
        }
    }

    #[test]
    fn classical_unit_cube() {
        let verts = vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[1, 1]), qv(&[0, 1])];
        let rep = blichfeldt_classical(&verts, &z_basis(2), 100_000).unwrap();
        assert_eq!(rep.lhs, 4);
        assert!(rep.holds);
        match &rep.rhs {
            ReportValue::Exact(r) => assert_eq!(r, &q(4, 1)),
            _ => panic!(),
        }
    }

    #[test]
    fn thin_box_fails_the_hypothesis() {
        // [0,5] x [0,1/10] holds six collinear lattice points
        let verts = vec![
            qv(&[0, 0]),
            qv(&[5, 0]),
            vec![q(0, 1), q(1, 10)],
            vec![q(5, 1), q(1, 10)],
        ];
        let err = blichfeldt_classical(&verts, &z_basis(2), 100_000);
        assert!(matches!(err, Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn henze_classical_examples() {
        // [-l, l] on the line
        for l in 1..=4i64 {
            let verts = vec![qv(&[l])];
            let rep = henze_classical(&verts, &z_basis(1), 100_000).unwrap();
            assert_eq!(rep.lhs, (2 * l + 1) as usize);
            match &rep.rhs {
                ReportValue::Exact(r) => assert_eq!(r, &q(3 * l, 1)),
                _ => panic!(),
            }
            assert!(rep.holds);
        }
        // [-1,1]^2: 9 <= 14
        let verts = vec![qv(&[1, 1]), qv(&[1, -1])];
        let rep = henze_classical(&verts, &z_basis(2), 100_000).unwrap();
        assert_eq!(rep.lhs, 9);
        match &rep.rhs {
            ReportValue::Exact(r) => assert_eq!(r, &q(14, 1)),
            _ => panic!(),
        }
        // doubled cross-polytope: 13 <= 28
        let verts = vec![qv(&[2, 0]), qv(&[0, 2])];
        let rep = henze_classical(&verts, &z_basis(2), 100_000).unwrap();
        assert_eq!(rep.lhs, 13);
        match &rep.rhs {
            ReportValue::Exact(r) => assert_eq!(r, &q(28, 1)),
            _ => panic!(),
        }
        // asymmetric input is rejected
        let verts = vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])];
        assert!(matches!(
            henze_classical(&verts, &z_basis(2), 100_000),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn adelic_blichfeldt_on_the_standard_simplex() {
        let f = NumberField::rationals();
        let pts = [
            KPoint::zero(&f, 2),
            KPoint::unit(&f, 2, 0),
            KPoint::unit(&f, 2, 1),
        ];
        let body = adelic_hull(&f, 2, &pts).unwrap();
        let rep = blichfeldt_adelic(&body, 100_000).unwrap();
        assert_eq!(rep.lhs, 3);
        assert!(rep.holds);
        match &rep.slack {
            ReportValue::Exact(s) => assert!(s.is_zero()),
            _ => panic!(),
        }
    }

    #[test]
    fn adelic_rhs_matches_classical_rhs_for_degree_one() {
        let f = NumberField::rationals();
        let pts = [
            KPoint::zero(&f, 2),
            KPoint::from_integers(&f, &[3, 0]),
            KPoint::from_integers(&f, &[0, 2]),
            KPoint::from_integers(&f, &[2, 2]),
        ];
        let body = adelic_hull(&f, 2, &pts).unwrap();
        let rep = blichfeldt_adelic(&body, 100_000).unwrap();
        let verts: Vec<Vec<BigRational>> = pts.iter().map(|p| p.flat()).collect();
        let rep_c = blichfeldt_classical(&verts, &z_basis(2), 100_000).unwrap();
        match (&rep.rhs, &rep_c.rhs) {
            (ReportValue::Exact(a), ReportValue::Exact(b)) => assert_eq!(a, b),
            _ => panic!(),
        }
        assert_eq!(rep.lhs, rep_c.lhs);
    }

    #[test]
    fn gaudron_on_the_unit_segment() {
        let f = NumberField::rationals();
        let one = KPoint::new(vec![FieldElement::one(&f)]);
        let body = adelic_sym_hull(&f, 1, &[one]).unwrap();
        let rep = gaudron(&body, 100_000).unwrap();
        assert_eq!(rep.lhs, 3);
        match &rep.rhs {
            ReportValue::Exact(r) => assert_eq!(r, &q(10, 1)),
            _ => panic!(),
        }
        assert!(rep.holds);
    }

    #[test]
    fn gaudron_on_the_square_body_over_sqrt2() {
        let f = NumberField::new(&[-2, 0, 1]).unwrap();
        let one = KPoint::new(vec![FieldElement::one(&f)]);
        let body = adelic_sym_hull(&f, 1, &[one]).unwrap();
        let rep = gaudron(&body, 100_000).unwrap();
        assert_eq!(rep.lhs, 3);
        match &rep.rhs {
            ReportValue::Exact(r) => assert_eq!(r, &q(100, 1)),
            _ => panic!(),
        }
        assert!(rep.holds);
    }

    #[test]
    fn henze_adelic_needs_the_q_dimension() {
        let f = NumberField::new(&[-2, 0, 1]).unwrap();
        let one = KPoint::new(vec![FieldElement::one(&f)]);
        let body = adelic_sym_hull(&f, 1, &[one]).unwrap();
        // at k = 1 the points {0, 1, -1} span Q-dimension 1 < 2
        assert!(matches!(
            henze_adelic(&body, 100_000),
            Err(Error::HypothesisViolated { .. })
        ));
        // dilating far enough brings in theta and the hypothesis holds
        let k2 = body.dilate(&q(2, 1)).unwrap();
        let rep = henze_adelic(&k2, 100_000).unwrap();
        assert!(rep.holds);
        // rhs = (2!/4) * 7 * 16 / sqrt8
        match &rep.rhs {
            ReportValue::Interval { lo, hi } => {
                let expect = 56.0 / 8f64.sqrt();
                use num_traits::ToPrimitive;
                assert!(lo.to_f64().unwrap() <= expect && expect <= hi.to_f64().unwrap());
            }
            ReportValue::Exact(_) => panic!("sqrt 8 is irrational"),
        }
    }

    #[test]
    fn report_serialization_is_canonical() {
        let f = NumberField::rationals();
        let pts = [
            KPoint::zero(&f, 2),
            KPoint::unit(&f, 2, 0),
            KPoint::unit(&f, 2, 1),
        ];
        let body = adelic_hull(&f, 2, &pts).unwrap();
        let rep = blichfeldt_adelic(&body, 100_000).unwrap();
        let line = rep.to_json_line();
        assert_eq!(line, rep.to_json_line());
        assert!(line.contains("\"bound_name\":\"blichfeldt_adelic\""));
        assert!(line.contains("\"lhs\":3"));
    }
}
