//! Adelic polytopes: one global finite part (an O-module standing for all
//! finite places) glued to one exact polytope per real place.
//!
//! Volumes multiply the finite-part volume with the per-place volumes. Two
//! normalizations are supported: the plain product of local volumes
//! ([`MeasureConvention::Proof`], the default), and the same value divided by
//! sqrt(|disc|)^n ([`MeasureConvention::WithDiscriminant`]). Whenever the
//! per-place volume elements combine to a rational or to a single field
//! element (always in degree <= 2), the result is exact; otherwise a
//! certified interval is produced.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numberfield::{sqrt_disc_element, FieldElement, Interval, NumberField};
use crate::omodule::{KPoint, OModule};
use crate::realgeom::{self, PlacePolytope, PolytopeIntersection, SimplexSet};
use crate::{exec, Error, Result};

/// Normalization of the adelic volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureConvention {
    /// Product of the local volumes with no discriminant factor.
    Proof,
    /// The product divided by sqrt(|disc|)^n.
    WithDiscriminant,
}

/// How the body was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    General,
    LatticePolytope(Vec<KPoint>),
    SymmetricLatticePolytope(Vec<KPoint>),
}

/// An adelic polytope over a totally real field: finite part plus one
/// full-dimensional polytope per real place.
#[derive(Clone, Debug)]
pub struct AdelicPolytope {
    field: Arc<NumberField>,
    n: usize,
    finite_part: OModule,
    infinite_parts: Vec<PlacePolytope>,
    provenance: Provenance,
}

impl PartialEq for AdelicPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.finite_part == other.finite_part
            && self.infinite_parts == other.infinite_parts
    }
}
impl Eq for AdelicPolytope {}

/// An adelic volume: exact rational, exact field element evaluated at the
/// first real place, or a certified interval.
#[derive(Clone, Debug)]
pub enum Volume {
    Rational(BigRational),
    Embedded(FieldElement),
    Interval(Interval),
}

impl Volume {
    fn from_element(e: FieldElement) -> Volume {
        match e.as_rational() {
            Some(q) => Volume::Rational(q.clone()),
            None => Volume::Embedded(e),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Volume::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Affine transform: scale * self + shift, staying exact when possible.
    pub fn scale_add(&self, scale: &BigRational, shift: &BigRational) -> Volume {
        match self {
            Volume::Rational(q) => Volume::Rational(q * scale + shift),
            Volume::Embedded(e) => Volume::from_element(
                e.scale(scale)
                    .add(&FieldElement::from_rational(e.field(), shift.clone())),
            ),
            Volume::Interval(iv) => Volume::Interval(iv.scale(scale).add_rat(shift)),
        }
    }

    /// Certified comparison against a rational; exact representations always
    /// resolve, intervals fail with `ComparisonUnresolved` when they straddle.
    pub fn cmp_rational(&self, q: &BigRational) -> Result<std::cmp::Ordering> {
        match self {
            Volume::Rational(v) => Ok(v.cmp(q)),
            Volume::Embedded(e) => {
                let s = e
                    .sub(&FieldElement::from_rational(e.field(), q.clone()))
                    .sign_at(0)?;
                Ok(s.cmp(&0))
            }
            Volume::Interval(iv) => {
                if iv.lo() > q {
                    Ok(std::cmp::Ordering::Greater)
                } else if iv.hi() < q {
                    Ok(std::cmp::Ordering::Less)
                } else if iv.lo() == q && iv.hi() == q {
                    Ok(std::cmp::Ordering::Equal)
                } else {
                    Err(Error::ComparisonUnresolved(
                        crate::numberfield::format_rational(&iv.width()),
                    ))
                }
            }
        }
    }

    /// A certified interval for the value, no wider than `width` for exact
    /// representations (intervals are returned as stored).
    pub fn to_interval(&self, width: &BigRational) -> Result<Interval> {
        match self {
            Volume::Rational(q) => Ok(Interval::point(q.clone())),
            Volume::Embedded(e) => e.embed(0, width),
            Volume::Interval(iv) => Ok(iv.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Volume::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            Volume::Embedded(e) => {
                let w = BigRational::new(BigInt::one(), BigInt::from(1u64 << 30));
                e.embed(0, &w).map(|iv| iv.to_f64()).unwrap_or(f64::NAN)
            }
            Volume::Interval(iv) => iv.to_f64(),
        }
    }
}

fn check_spanning(field: &Arc<NumberField>, n: usize, points: &[KPoint]) -> Result<()> {
    let rows: Vec<Vec<FieldElement>> = points.iter().map(|p| p.coords().to_vec()).collect();
    if realgeom::krank(rows) != n {
        return Err(Error::NonSpanning(format!(
            "points do not span K^{} over K",
            n
        )));
    }
    let _ = field;
    Ok(())
}

/// The adelic convex hull of points of K^n: module of the generators at the
/// finite places, plain convex hulls at the real places. Totally real only.
pub fn adelic_hull(
    field: &Arc<NumberField>,
    n: usize,
    points: &[KPoint],
) -> Result<AdelicPolytope> {
    if !field.is_totally_real() {
        return Err(Error::NotTotallyReal(field.signature().1));
    }
    check_spanning(field, n, points)?;
    let finite_part = OModule::from_generators(field, n, points)?;
    let r = field.signature().0;
    let infinite_parts = (0..r)
        .map(|v| PlacePolytope::hull(v, points))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdelicPolytope {
        field: field.clone(),
        n,
        finite_part,
        infinite_parts,
        provenance: Provenance::LatticePolytope(points.to_vec()),
    })
}

/// The symmetric adelic convex hull: hulls of the points and their negatives
/// at the real places. Computation is restricted to totally real fields.
pub fn adelic_sym_hull(
    field: &Arc<NumberField>,
    n: usize,
    points: &[KPoint],
) -> Result<AdelicPolytope> {
    if !field.is_totally_real() {
        return Err(Error::NotTotallyReal(field.signature().1));
    }
    check_spanning(field, n, points)?;
    let finite_part = OModule::from_generators(field, n, points)?;
    let r = field.signature().0;
    let infinite_parts = (0..r)
        .map(|v| PlacePolytope::sym_hull(v, points))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdelicPolytope {
        field: field.clone(),
        n,
        finite_part,
        infinite_parts,
        provenance: Provenance::SymmetricLatticePolytope(points.to_vec()),
    })
}

/// A general adelic body: an arbitrary full-rank module with arbitrary
/// per-place vertex sets (hulled at each place independently).
pub fn general_body(
    field: &Arc<NumberField>,
    n: usize,
    finite_part: OModule,
    place_vertices: &[Vec<KPoint>],
) -> Result<AdelicPolytope> {
    if !field.is_totally_real() {
        return Err(Error::NotTotallyReal(field.signature().1));
    }
    let r = field.signature().0;
    if place_vertices.len() != r {
        return Err(Error::InvalidInstance(format!(
            "need one vertex list per real place ({}), got {}",
            r,
            place_vertices.len()
        )));
    }
    let infinite_parts = place_vertices
        .iter()
        .enumerate()
        .map(|(v, pts)| PlacePolytope::hull(v, pts))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdelicPolytope {
        field: field.clone(),
        n,
        finite_part,
        infinite_parts,
        provenance: Provenance::General,
    })
}

impl AdelicPolytope {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn finite_part(&self) -> &OModule {
        &self.finite_part
    }

    pub fn infinite_parts(&self) -> &[PlacePolytope] {
        &self.infinite_parts
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_symmetric(&self) -> bool {
        self.infinite_parts.iter().all(PlacePolytope::is_symmetric)
    }

    /// Per-place volumes as field elements, each positive at its place.
    fn place_volume_elements(&self) -> Result<Vec<FieldElement>> {
        self.infinite_parts
            .iter()
            .map(PlacePolytope::volume_element)
            .collect()
    }

    /// The adelic volume under the given convention: exact whenever the
    /// per-place product collapses to a rational or (degree <= 2) to a single
    /// field element; certified interval otherwise.
    pub fn volume(&self, convention: MeasureConvention) -> Result<Volume> {
        let default_width = BigRational::new(BigInt::one(), BigInt::from(10u8).pow(35));
        self.volume_with_width(convention, &default_width)
    }

    /// As [`volume`](Self::volume), but interval fallbacks are refined to at
    /// most the given width.
    pub fn volume_with_width(
        &self,
        convention: MeasureConvention,
        width: &BigRational,
    ) -> Result<Volume> {
        let finite = self.finite_part.finite_volume();
        let ws = self.place_volume_elements()?;
        let d = self.field.degree();

        let proof: Volume = if ws.iter().all(|w| w.as_rational().is_some()) {
            let mut acc = finite.clone();
            for w in &ws {
                acc *= w.as_rational().unwrap();
            }
            Volume::Rational(acc)
        } else if d == 2 {
            let u = ws[0].mul(&ws[1].galois_conjugate().expect("degree 2"));
            debug_assert_eq!(u.sign_at(0)?, 1);
            Volume::from_element(u.scale(&finite))
        } else if ws.windows(2).all(|p| p[0] == p[1]) {
            // equal elements at every place: the product is the norm
            let nrm = ws[0].norm();
            debug_assert!(nrm.is_positive());
            Volume::Rational(finite * nrm)
        } else {
            // certified product of the embeddings
            let mut eps = width.clone();
            loop {
                let mut acc = Interval::point(finite.clone());
                for (v, w) in ws.iter().enumerate() {
                    acc = acc.mul(&w.embed(v, &eps)?);
                }
                if &acc.width() <= width {
                    break Volume::Interval(acc);
                }
                eps /= BigRational::from(BigInt::from(16));
            }
        };

        match convention {
            MeasureConvention::Proof => Ok(proof),
            MeasureConvention::WithDiscriminant => {
                self.divide_by_sqrt_disc_pow(proof, width)
            }
        }
    }

    fn divide_by_sqrt_disc_pow(&self, proof: Volume, width: &BigRational) -> Result<Volume> {
        let n = self.n as u32;
        let disc_abs = BigRational::from(self.field.discriminant().abs());
        if disc_abs.is_one() {
            return Ok(proof);
        }
        // exact when sqrt|disc| is rational
        let root = self.field.discriminant().abs().sqrt();
        if BigRational::from(root.clone() * root.clone()) == disc_abs {
            let divisor = BigRational::from(root).pow(n as i32);
            return Ok(proof.scale_add(&divisor.recip(), &BigRational::zero()));
        }
        if let Some(t) = sqrt_disc_element(&self.field) {
            // degree 2: sqrt|disc| = sigma_0 of +-(2 theta + f1)
            let t = if t.sign_at(0)? < 0 { t.neg() } else { t };
            let tp = t.pow(n);
            let inv = tp.inverse().expect("nonzero");
            return Ok(match proof {
                Volume::Rational(q) => Volume::from_element(inv.scale(&q)),
                Volume::Embedded(e) => Volume::from_element(e.mul(&inv)),
                Volume::Interval(iv) => {
                    let mut eps = width.clone();
                    loop {
                        let div = inv.embed(0, &eps)?;
                        let prod = iv.mul(&div);
                        if &prod.width() <= width {
                            break Volume::Interval(prod);
                        }
                        eps /= BigRational::from(BigInt::from(16));
                    }
                }
            });
        }
        // interval fallback for higher degrees
        let mut eps = width.clone();
        loop {
            let s = sqrt_interval(&disc_abs, &eps);
            let mut divisor = Interval::point(BigRational::one());
            for _ in 0..n {
                divisor = divisor.mul(&s);
            }
            let recip = Interval::new(divisor.hi().recip(), divisor.lo().recip());
            let iv = match &proof {
                Volume::Rational(q) => recip.scale(q),
                Volume::Embedded(e) => e.embed(0, &eps)?.mul(&recip),
                Volume::Interval(iv) => iv.mul(&recip),
            };
            if &iv.width() <= width {
                return Ok(Volume::Interval(iv));
            }
            eps /= BigRational::from(BigInt::from(16));
        }
    }

    /// The full place-major bounding box of the infinite parts.
    pub fn bounding_box(&self, slack: &BigRational) -> Result<Vec<Interval>> {
        let mut out = Vec::with_capacity(self.field.signature().0 * self.n);
        for p in &self.infinite_parts {
            out.extend(p.bounding_box(slack)?);
        }
        Ok(out)
    }

    /// All points of C intersected with K^n: module points whose embeddings
    /// lie in every place polytope. Deterministically sorted.
    pub fn lattice_points(&self, cap: usize) -> Result<Vec<KPoint>> {
        let slack = BigRational::new(BigInt::one(), BigInt::from(1024));
        let bbox = self.bounding_box(&slack)?;
        let candidates = self.finite_part.enumerate_in_box(&bbox, cap)?;
        let parts = &self.infinite_parts;
        let kept = exec::try_map_collect(candidates, |p| {
            for poly in parts {
                if poly.locate(&p)? == realgeom::Location::Outside {
                    return Ok(None);
                }
            }
            Ok(Some(p))
        })?;
        Ok(kept.into_iter().flatten().collect())
    }

    /// Independent counting route: plain box scan over the module plus
    /// triangulation-based membership per place.
    pub fn lattice_points_by_scan(&self, cap: usize) -> Result<Vec<KPoint>> {
        let slack = BigRational::new(BigInt::one(), BigInt::from(1024));
        let bbox = self.bounding_box(&slack)?;
        let candidates = self.finite_part.enumerate_in_box_scan(&bbox, cap)?;
        let tris: Vec<(SimplexSet, Vec<KPoint>)> = self
            .infinite_parts
            .iter()
            .map(|p| {
                let verts = p.vertices().to_vec();
                realgeom::triangulate(p.place(), &verts).map(|t| (t, verts))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for cand in candidates {
            let mut inside_all = true;
            for (v, (tri, verts)) in tris.iter().enumerate() {
                if !tri.contains_point(v, verts, &cand)? {
                    inside_all = false;
                    break;
                }
            }
            if inside_all {
                out.push(cand);
            }
        }
        Ok(out)
    }

    /// Scales the infinite parts only; the finite part is untouched.
    pub fn dilate(&self, lambda: &BigRational) -> Result<AdelicPolytope> {
        if lambda <= &BigRational::zero() {
            return Err(Error::NonPositiveDilation);
        }
        if lambda.is_one() {
            return Ok(self.clone());
        }
        Ok(AdelicPolytope {
            field: self.field.clone(),
            n: self.n,
            finite_part: self.finite_part.clone(),
            infinite_parts: self
                .infinite_parts
                .iter()
                .map(|p| p.dilate(lambda))
                .collect::<Result<Vec<_>>>()?,
            provenance: Provenance::General,
        })
    }

    /// Componentwise intersection: modules intersect at the finite places,
    /// polytopes at the real places. Errors when some place intersection is
    /// empty or lower-dimensional.
    pub fn intersect(&self, other: &AdelicPolytope) -> Result<AdelicPolytope> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::FieldMismatch);
        }
        let finite_part = self.finite_part.intersect(&other.finite_part)?;
        let mut infinite_parts = Vec::with_capacity(self.infinite_parts.len());
        for (v, (a, b)) in self
            .infinite_parts
            .iter()
            .zip(&other.infinite_parts)
            .enumerate()
        {
            match a.intersect(b)? {
                PolytopeIntersection::Full(p) => infinite_parts.push(p),
                _ => return Err(Error::ThinIntersection(v)),
            }
        }
        Ok(AdelicPolytope {
            field: self.field.clone(),
            n: self.n,
            finite_part,
            infinite_parts,
            provenance: Provenance::General,
        })
    }
}

/// Bisection square root enclosure of a positive rational.
fn sqrt_interval(q: &BigRational, width: &BigRational) -> Interval {
    debug_assert!(q.is_positive());
    let mut lo = BigRational::zero();
    let mut hi = q.clone().max(BigRational::one());
    let two = BigRational::from(BigInt::from(2));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= *q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

/// Closed-form volume of the symmetric adelic hull of any K-basis of K^n:
/// 2^{dn} pi^{sn} / ((n!)^r ((2n)!)^s), returned as the rational coefficient
/// together with the exponent of pi.
pub fn cross_polytope_volume(field: &NumberField, n: usize) -> (BigRational, usize) {
    let (r, s) = field.signature();
    let d = field.degree();
    let two_pow = BigRational::from(BigInt::from(2u8).pow((d * n) as u32));
    let nfact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let n2fact: BigInt = (1..=(2 * n) as u64).map(BigInt::from).product();
    let denom = BigRational::from(nfact.pow(r as u32) * n2fact.pow(s as u32));
    (two_pow / denom, s * n)
}

/// Certificate attached to a lifted triangulation.
#[derive(Clone, Debug)]
pub struct TriangulationCertificate {
    /// number of simplices produced
    pub simplex_count: usize,
    /// the required lower bound: #generators - n
    pub lower_bound: usize,
    /// every pair of lifted simplices has volume-zero intersection at the
    /// base place
    pub pairwise_volume_zero: bool,
    /// every simplex vertex lies in the body at every real place
    pub union_contained: bool,
}

/// A triangulation of an adelic lattice polytope at a chosen real place,
/// lifted back to adelic lattice simplices.
#[derive(Clone, Debug)]
pub struct AdelicTriangulation {
    pub base_place: usize,
    pub index_sets: Vec<Vec<usize>>,
    pub simplices: Vec<AdelicPolytope>,
    pub certificate: TriangulationCertificate,
}

/// Triangulates the generator configuration of a lattice polytope at the
/// place `v` and lifts every simplex to an adelic lattice simplex.
pub fn adelic_triangulation(body: &AdelicPolytope, v: usize) -> Result<AdelicTriangulation> {
    let gens = match body.provenance() {
        Provenance::LatticePolytope(g) => g.clone(),
        _ => {
            return Err(Error::InvalidInstance(
                "triangulation needs a lattice-polytope body".into(),
            ))
        }
    };
    let n = body.n();
    if gens.len() < n + 2 {
        return Err(Error::Degenerate(format!(
            "need at least n + 2 = {} generators, got {}",
            n + 2,
            gens.len()
        )));
    }
    let m = gens.len() - n;
    let tri = realgeom::triangulate(v, &gens)?;
    let simplices: Vec<AdelicPolytope> = tri
        .simplices
        .iter()
        .map(|idx| {
            let pts: Vec<KPoint> = idx.iter().map(|&i| gens[i].clone()).collect();
            adelic_hull(body.field(), n, &pts)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pairwise = true;
    'pairs: for i in 0..simplices.len() {
        for j in i + 1..simplices.len() {
            let a = &simplices[i].infinite_parts()[v];
            let b = &simplices[j].infinite_parts()[v];
            if !a.intersect(b)?.is_volume_zero() {
                pairwise = false;
                break 'pairs;
            }
        }
    }

    let mut contained = true;
    'outer: for s in &simplices {
        for place in 0..body.field().signature().0 {
            let part = &body.infinite_parts()[place];
            for vert in s.infinite_parts()[place].vertices() {
                if part.locate(vert)? == realgeom::Location::Outside {
                    contained = false;
                    break 'outer;
                }
            }
        }
    }

    let certificate = TriangulationCertificate {
        simplex_count: simplices.len(),
        lower_bound: m,
        pairwise_volume_zero: pairwise,
        union_contained: contained,
    };
    Ok(AdelicTriangulation {
        base_place: v,
        index_sets: tri.simplices,
        simplices,
        certificate,
    })
}

/// Outcome of the simplex volume bound check.
#[derive(Clone, Debug)]
pub struct SimplexVolumeReport {
    pub volume: Volume,
    pub bound: BigRational,
    pub bound_holds: bool,
    pub equality: bool,
}

/// Checks vol(S) >= 1/(n!)^d for an adelic lattice simplex, reporting
/// equality (expected whenever 0 is among the generators).
pub fn simplex_volume_check(simplex: &AdelicPolytope) -> Result<SimplexVolumeReport> {
    let gens = match simplex.provenance() {
        Provenance::LatticePolytope(g) => g,
        _ => {
            return Err(Error::InvalidInstance(
                "volume check needs a lattice simplex".into(),
            ))
        }
    };
    let n = simplex.n();
    if gens.len() != n + 1 {
        return Err(Error::InvalidInstance(format!(
            "a lattice simplex has n + 1 = {} generators, got {}",
            n + 1,
            gens.len()
        )));
    }
    let d = simplex.field().degree();
    let nfact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let bound = BigRational::new(BigInt::one(), nfact.pow(d as u32));
    let volume = simplex.volume(MeasureConvention::Proof)?;
    let cmp = volume.cmp_rational(&bound)?;
    Ok(SimplexVolumeReport {
        volume,
        bound,
        bound_holds: cmp != std::cmp::Ordering::Less,
        equality: cmp == std::cmp::Ordering::Equal,
    })
}

/// Table of dilation counts with a fitted growth exponent.
#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub rows: Vec<(u32, usize)>,
    pub exponent: f64,
}

/// Counts |kC cap K^n| for k = 1..k_max and fits the exponent by least
/// squares on the log-log pairs.
pub fn growth_experiment(body: &AdelicPolytope, k_max: u32, cap: usize) -> Result<GrowthTable> {
    if k_max < 2 {
        return Err(Error::InvalidInstance("growth experiment needs k_max >= 2".into()));
    }
    let ks: Vec<u32> = (1..=k_max).collect();
    let counts = exec::try_map_collect(ks.clone(), |k| {
        let dilated = body.dilate(&BigRational::from(BigInt::from(k)))?;
        Ok(dilated.lattice_points(cap)?.len())
    })?;
    let rows: Vec<(u32, usize)> = ks.into_iter().zip(counts).collect();
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|&(k, c)| ((k as f64).ln(), (c.max(1) as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(GrowthTable { rows, exponent: num / den })
}

impl SimplexSet {
    /// Closed membership in the union of the simplices of a configuration.
    pub fn contains_point(
        &self,
        place: usize,
        config: &[KPoint],
        x: &KPoint,
    ) -> Result<bool> {
        for s in &self.simplices {
            if realgeom::simplex_contains_point(place, config, s, x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
