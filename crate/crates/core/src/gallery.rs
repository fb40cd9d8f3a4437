//! Bundled demonstration bodies over Q[sqrt2] used by the CLI `example`
//! subcommand and by the acceptance suite: the square body whose embedded
//! picture is drawn by `example figure1`, and the two four-generator planar
//! bodies behind `example1` and `example2`, together with the witness-point
//! search for points not covered by any lifted simplex.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::adelic::{adelic_hull, adelic_sym_hull, AdelicPolytope};
use crate::numberfield::{FieldElement, NumberField};
use crate::omodule::KPoint;
use crate::realgeom::Location;
use crate::Result;

pub fn sqrt2_field() -> Arc<NumberField> {
    NumberField::new(&[-2, 0, 1]).expect("x^2 - 2 is irreducible")
}

/// The body O x [-1,1]^2 over Q[sqrt2], i.e. the symmetric adelic hull of 1.
pub fn figure1_body() -> AdelicPolytope {
    let field = sqrt2_field();
    let one = KPoint::new(vec![FieldElement::one(&field)]);
    adelic_sym_hull(&field, 1, &[one]).expect("unit body is well-formed")
}

/// Generators a = (s,1), b = (1,3), c = (2,3), d = (1,s) with s = sqrt2.
pub fn example1_points(field: &Arc<NumberField>) -> Vec<KPoint> {
    let theta = FieldElement::generator(field);
    let one = FieldElement::one(field);
    let three = FieldElement::from_integer(field, 3);
    let two = FieldElement::from_integer(field, 2);
    vec![
        KPoint::new(vec![theta.clone(), one.clone()]),
        KPoint::new(vec![one.clone(), three.clone()]),
        KPoint::new(vec![two, three]),
        KPoint::new(vec![one, theta]),
    ]
}

pub fn example1_body() -> AdelicPolytope {
    let field = sqrt2_field();
    let pts = example1_points(&field);
    adelic_hull(&field, 2, &pts).expect("example body is well-formed")
}

/// Generators a = (1,1), b = (2,1), c = (2,2), d = (1,2): the unit square at
/// both places.
pub fn example2_points(field: &Arc<NumberField>) -> Vec<KPoint> {
    let one = FieldElement::one(field);
    let two = FieldElement::from_integer(field, 2);
    vec![
        KPoint::new(vec![one.clone(), one.clone()]),
        KPoint::new(vec![two.clone(), one.clone()]),
        KPoint::new(vec![two.clone(), two.clone()]),
        KPoint::new(vec![one, two]),
    ]
}

pub fn example2_body() -> AdelicPolytope {
    let field = sqrt2_field();
    let pts = example2_points(&field);
    adelic_hull(&field, 2, &pts).expect("example body is well-formed")
}

/// The four candidate adelic lattice simplices spanned by 3-subsets of the
/// four generators, with their index sets.
pub fn candidate_simplices(
    field: &Arc<NumberField>,
    points: &[KPoint],
) -> Result<Vec<(Vec<usize>, AdelicPolytope)>> {
    let mut out = Vec::new();
    for skip in (0..points.len()).rev() {
        let idx: Vec<usize> = (0..points.len()).filter(|&i| i != skip).collect();
        let pts: Vec<KPoint> = idx.iter().map(|&i| points[i].clone()).collect();
        out.push((idx, adelic_hull(field, 2, &pts)?));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// A rational adele witness: one rational point per real place.
#[derive(Clone, Debug)]
pub struct Witness {
    pub components: Vec<Vec<BigRational>>,
}

fn grid(body_part: &crate::realgeom::PlacePolytope, step: &BigRational) -> Result<Vec<KPoint>> {
    let field = body_part.vertices()[0].field().clone();
    let slack = BigRational::new(BigInt::one(), BigInt::from(8));
    let bbox = body_part.bounding_box(&slack)?;
    let n = body_part.dim();
    let mut axes: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for iv in &bbox {
        let mut vals = Vec::new();
        let mut v = iv.lo().clone();
        while &v <= iv.hi() {
            vals.push(v.clone());
            v += step;
        }
        axes.push(vals);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let coords: Vec<BigRational> = (0..n).map(|i| axes[i][idx[i]].clone()).collect();
        out.push(KPoint::from_rationals(&field, &coords));
        for k in 0..n {
            if idx[k] + 1 < axes[k].len() {
                idx[k] += 1;
                for i in idx.iter_mut().take(k) {
                    *i = 0;
                }
                continue 'outer;
            }
        }
        break;
    }
    Ok(out)
}

/// Searches a rational grid (step 1/8, refined to 1/64) for an adele point of
/// the body not covered by any of the given simplices: a pair (z1, z2) with
/// z_v strictly inside the place-v part of the body such that no simplex
/// contains z at both places. Membership is verified exactly.
pub fn find_uncovered_witness(
    body: &AdelicPolytope,
    simplices: &[AdelicPolytope],
) -> Result<Option<Witness>> {
    assert_eq!(body.field().signature(), (2, 0), "witness search expects two real places");
    assert!(simplices.len() <= 32);
    for denom in [8u64, 64] {
        let step = BigRational::new(BigInt::one(), BigInt::from(denom));
        let g0 = grid(&body.infinite_parts()[0], &step)?;
        let g1 = grid(&body.infinite_parts()[1], &step)?;
        // For each grid point at place 1, the set of simplices it avoids.
        let mut avoid1: Vec<(KPoint, u32)> = Vec::new();
        for z in g1 {
            if body.infinite_parts()[1].locate(&z)? != Location::Inside {
                continue;
            }
            let mut mask = 0u32;
            for (j, s) in simplices.iter().enumerate() {
                if s.infinite_parts()[1].locate(&z)? == Location::Outside {
                    mask |= 1 << j;
                }
            }
            avoid1.push((z, mask));
        }
        for z0 in g0 {
            if body.infinite_parts()[0].locate(&z0)? != Location::Inside {
                continue;
            }
            let mut hit = 0u32;
            for (j, s) in simplices.iter().enumerate() {
                if s.infinite_parts()[0].locate(&z0)? != Location::Outside {
                    hit |= 1 << j;
                }
            }
            if let Some((z1, _)) = avoid1.iter().find(|(_, mask)| mask & hit == hit) {
                let c0 = z0
                    .coords()
                    .iter()
                    .map(|e| e.as_rational().expect("grid points are rational").clone())
                    .collect();
                let c1 = z1
                    .coords()
                    .iter()
                    .map(|e| e.as_rational().expect("grid points are rational").clone())
                    .collect();
                return Ok(Some(Witness { components: vec![c0, c1] }));
            }
        }
    }
    Ok(None)
}
