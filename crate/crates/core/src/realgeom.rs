//! Exact convex geometry in R^n at a single real place of the field.
//!
//! Points carry field-element coordinates; every predicate (orientation,
//! support, membership) is resolved by exact sign determination of a
//! constructed field element at the place, so results are exact for
//! arbitrary real-algebraic coordinates. Hulls are found by brute-force
//! supporting-hyperplane enumeration, which keeps degenerate configurations
//! (collinear points, facets with many vertices) exact and simple; volumes
//! come from a recursive facet-projection triangulation; point
//! configurations are triangulated by placing insertion.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use itertools::Itertools;

use crate::numberfield::{FieldElement, Interval};
use crate::omodule::KPoint;
use crate::{Error, Result};

/// Exact hulls are supported up to this ambient dimension; the subset
/// enumeration is combinatorial in n.
pub const MAX_HULL_DIM: usize = 6;

/// Halfspace `<normal, x> <= offset`, valid at the polytope's place, with
/// the indices of the vertices lying on the boundary hyperplane.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<FieldElement>,
    pub offset: FieldElement,
    pub vertex_indices: Vec<usize>,
}

/// Exact V- and H-description of a full-dimensional polytope at one place.
#[derive(Clone, Debug)]
pub struct PlacePolytope {
    place: usize,
    n: usize,
    vertices: Vec<KPoint>,
    facets: Vec<Facet>,
    symmetric: bool,
}

impl PartialEq for PlacePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.place == other.place && self.vertices == other.vertices
    }
}
impl Eq for PlacePolytope {}

/// Exact classification of a point against a polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A triangulation of a labeled point configuration: (n+1)-subsets of the
/// input labels, canonically ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexSet {
    pub n: usize,
    pub simplices: Vec<Vec<usize>>,
}

// --- exact linear algebra over K -------------------------------------------

pub(crate) fn kdet(mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let field = m[0][0].field().clone();
    let mut acc = FieldElement::one(&field);
    let mut negate = false;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return FieldElement::zero(&field);
        };
        if p != col {
            m.swap(p, col);
            negate = !negate;
        }
        let pivot = m[col][col].clone();
        acc = acc.mul(&pivot);
        let inv = pivot.inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for c in col..n {
                let t = m[r][c].sub(&factor.mul(&m[col][c]));
                m[r][c] = t;
            }
        }
    }
    if negate {
        acc.neg()
    } else {
        acc
    }
}

pub(crate) fn krank(mut m: Vec<Vec<FieldElement>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][col].inverse().expect("nonzero pivot");
        for i in r + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].mul(&inv);
            for c in col..cols {
                let t = m[i][c].sub(&factor.mul(&m[r][c]));
                m[i][c] = t;
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn ksolve(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let n = a.len();
    let mut m: Vec<Vec<FieldElement>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        let inv = m[col][col].inverse().expect("nonzero pivot");
        for c in col..=n {
            m[col][c] = m[col][c].mul(&inv);
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let t = m[r][c].sub(&factor.mul(&m[col][c]));
                    m[r][c] = t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Affine rank over K of a point configuration (place-independent).
pub(crate) fn affine_rank(points: &[KPoint]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<FieldElement>> = points[1..]
        .iter()
        .map(|p| p.sub(&points[0]).coords().to_vec())
        .collect();
    krank(rows)
}

pub(crate) fn dot(normal: &[FieldElement], p: &KPoint) -> FieldElement {
    let field = normal[0].field().clone();
    let mut acc = FieldElement::zero(&field);
    for (a, b) in normal.iter().zip(p.coords()) {
        acc = acc.add(&a.mul(b));
    }
    acc
}

/// Normal vector of the hyperplane spanned by the n points, via cofactor
/// expansion of the (n-1) x n difference matrix. All-zero when the points
/// are affinely dependent.
fn hyperplane_normal(points: &[&KPoint]) -> Vec<FieldElement> {
    let n = points[0].n();
    let field = points[0].field().clone();
    if n == 1 {
        return vec![FieldElement::one(&field)];
    }
    let diffs: Vec<Vec<FieldElement>> = points[1..]
        .iter()
        .map(|p| p.sub(points[0]).coords().to_vec())
        .collect();
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<FieldElement>> = diffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let d = kdet(minor);
            if j % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
        .collect()
}

fn dedupe_points(points: &[KPoint]) -> Vec<KPoint> {
    let mut out: Vec<KPoint> = Vec::new();
    for p in points {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

impl PlacePolytope {
    /// Exact convex hull of the images of the points at one real place:
    /// minimal vertex description plus supporting halfspaces.
    pub fn hull(place: usize, points: &[KPoint]) -> Result<Self> {
        Self::hull_inner(place, points, false)
    }

    /// Hull of the points together with their negatives.
    pub fn sym_hull(place: usize, points: &[KPoint]) -> Result<Self> {
        let mut all = points.to_vec();
        all.extend(points.iter().map(KPoint::neg));
        Self::hull_inner(place, &all, true)
    }

    fn hull_inner(place: usize, points: &[KPoint], symmetric: bool) -> Result<Self> {
        let points = dedupe_points(points);
        if points.is_empty() {
            return Err(Error::Degenerate("empty point set".into()));
        }
        let n = points[0].n();
        if n > MAX_HULL_DIM {
            return Err(Error::Degenerate(format!(
                "hull dimension {} exceeds the supported cap {}",
                n, MAX_HULL_DIM
            )));
        }
        if affine_rank(&points) != n {
            return Err(Error::Degenerate(format!(
                "points span affine dimension {} < {}",
                affine_rank(&points),
                n
            )));
        }
        // Supporting hyperplanes through n-subsets.
        let mut facets: BTreeMap<Vec<usize>, (Vec<FieldElement>, FieldElement)> = BTreeMap::new();
        for subset in (0..points.len()).combinations(n) {
            let chosen: Vec<&KPoint> = subset.iter().map(|&i| &points[i]).collect();
            let normal = hyperplane_normal(&chosen);
            if normal.iter().all(FieldElement::is_zero) {
                continue;
            }
            let offset = dot(&normal, chosen[0]);
            let mut pos = false;
            let mut neg = false;
            let mut incident = Vec::new();
            for (i, p) in points.iter().enumerate() {
                let v = dot(&normal, p).sub(&offset);
                match v.sign_at(place)? {
                    0 => incident.push(i),
                    1 => pos = true,
                    _ => neg = true,
                }
                if pos && neg {
                    break;
                }
            }
            if pos && neg {
                continue;
            }
            let (normal, offset) = if pos {
                (normal.iter().map(FieldElement::neg).collect(), offset.neg())
            } else {
                (normal, offset)
            };
            facets.entry(incident).or_insert((normal, offset));
        }

        // Vertices: points whose active facet normals span R^n.
        let mut vertex_ids = Vec::new();
        for i in 0..points.len() {
            let active: Vec<Vec<FieldElement>> = facets
                .iter()
                .filter(|(inc, _)| inc.binary_search(&i).is_ok())
                .map(|(_, (normal, _))| normal.clone())
                .collect();
            if active.len() >= n && krank(active) == n {
                vertex_ids.push(i);
            }
        }

        let mut vertices: Vec<KPoint> = vertex_ids.iter().map(|&i| points[i].clone()).collect();
        order_vertices(place, n, &mut vertices)?;

        let index_of = |p: &KPoint| vertices.iter().position(|v| v == p);
        let mut facet_list: Vec<Facet> = facets
            .into_iter()
            .map(|(inc, (normal, offset))| {
                let mut vertex_indices: Vec<usize> = inc
                    .iter()
                    .filter_map(|&i| index_of(&points[i]))
                    .collect();
                vertex_indices.sort_unstable();
                Facet { normal, offset, vertex_indices }
            })
            .collect();
        facet_list.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));

        let symmetric = symmetric
            || vertices
                .iter()
                .all(|v| vertices.contains(&v.neg()));

        let poly = PlacePolytope { place, n, vertices, facets: facet_list, symmetric };
        debug_assert!(poly
            .vertices
            .iter()
            .all(|v| poly.locate(v).map(|l| l == Location::Boundary).unwrap_or(false)));
        Ok(poly)
    }

    pub fn place(&self) -> usize {
        self.place
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[KPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Exact membership classification via the facet halfspaces.
    pub fn locate(&self, x: &KPoint) -> Result<Location> {
        let mut on_boundary = false;
        for f in &self.facets {
            let v = f.offset.sub(&dot(&f.normal, x));
            match v.sign_at(self.place)? {
                -1 => return Ok(Location::Outside),
                0 => on_boundary = true,
                _ => {}
            }
        }
        Ok(if on_boundary { Location::Boundary } else { Location::Inside })
    }

    /// The volume as an explicitly constructed field element w with
    /// sigma_place(w) = vol(P) > 0: facets opposite a fixed anchor vertex are
    /// triangulated recursively and the simplex determinants are summed with
    /// their signs resolved at the place.
    pub fn volume_element(&self) -> Result<FieldElement> {
        let field = self.vertices[0].field().clone();
        if self.n == 1 {
            let w = self.vertices.last().unwrap().coord(0).sub(self.vertices[0].coord(0));
            return Ok(if w.sign_at(self.place)? < 0 { w.neg() } else { w });
        }
        let anchor = &self.vertices[0];
        let mut total = FieldElement::zero(&field);
        for f in &self.facets {
            if f.vertex_indices.binary_search(&0).is_ok() {
                continue;
            }
            let fpoints: Vec<KPoint> =
                f.vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect();
            let axis = f
                .normal
                .iter()
                .position(|c| !c.is_zero())
                .expect("facet normal is nonzero");
            let projected: Vec<KPoint> = fpoints
                .iter()
                .map(|p| {
                    KPoint::new(
                        p.coords()
                            .iter()
                            .enumerate()
                            .filter(|(c, _)| *c != axis)
                            .map(|(_, e)| e.clone())
                            .collect(),
                    )
                })
                .collect();
            for simplex in triangulate_vertex_set(self.place, &projected)? {
                let rows: Vec<Vec<FieldElement>> = simplex[1..]
                    .iter()
                    .map(|&i| fpoints[i].sub(&fpoints[simplex[0]]).coords().to_vec())
                    .chain(std::iter::once(
                        anchor.sub(&fpoints[simplex[0]]).coords().to_vec(),
                    ))
                    .collect();
                let d = kdet(rows);
                let s = d.sign_at(self.place)?;
                debug_assert!(s != 0, "cone over a facet is full-dimensional");
                total = total.add(&if s < 0 { d.neg() } else { d });
            }
        }
        let nfact: BigInt = (1..=self.n as u64).map(BigInt::from).product();
        let w = total.scale(&BigRational::new(BigInt::one(), nfact));
        debug_assert_eq!(w.sign_at(self.place)?, 1);
        Ok(w)
    }

    /// Scales the polytope by a positive rational (vertices and offsets).
    pub fn dilate(&self, lambda: &BigRational) -> Result<Self> {
        if lambda <= &BigRational::zero() {
            return Err(Error::NonPositiveDilation);
        }
        Ok(PlacePolytope {
            place: self.place,
            n: self.n,
            vertices: self.vertices.iter().map(|v| v.scale_rat(lambda)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset.scale(lambda),
                    vertex_indices: f.vertex_indices.clone(),
                })
                .collect(),
            symmetric: self.symmetric,
        })
    }

    /// Outward rational bounding box of the polytope, one interval per
    /// coordinate, each no wider than the exact extent plus `slack`.
    pub fn bounding_box(&self, slack: &BigRational) -> Result<Vec<Interval>> {
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc: Option<Interval> = None;
            for v in &self.vertices {
                let iv = v.coord(i).embed(self.place, slack)?;
                acc = Some(match acc {
                    None => iv,
                    Some(a) => a.hull(&iv),
                });
            }
            out.push(acc.expect("nonempty vertex set"));
        }
        Ok(out)
    }

    /// Exact intersection with another polytope at the same place.
    pub fn intersect(&self, other: &PlacePolytope) -> Result<PolytopeIntersection> {
        assert_eq!(self.place, other.place, "place mismatch");
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let all_facets: Vec<&Facet> = self.facets.iter().chain(&other.facets).collect();
        let mut candidates: Vec<KPoint> = Vec::new();
        for subset in (0..all_facets.len()).combinations(n) {
            let rows: Vec<Vec<FieldElement>> =
                subset.iter().map(|&i| all_facets[i].normal.clone()).collect();
            let rhs: Vec<FieldElement> =
                subset.iter().map(|&i| all_facets[i].offset.clone()).collect();
            let Some(x) = ksolve(&rows, &rhs) else {
                continue;
            };
            let p = KPoint::new(x);
            if candidates.contains(&p) {
                continue;
            }
            let mut feasible = true;
            for f in &all_facets {
                if f.offset.sub(&dot(&f.normal, &p)).sign_at(self.place)? < 0 {
                    feasible = false;
                    break;
                }
            }
            if feasible {
                candidates.push(p);
            }
        }
        if candidates.is_empty() {
            return Ok(PolytopeIntersection::Empty);
        }
        if affine_rank(&candidates) < n {
            return Ok(PolytopeIntersection::LowerDimensional(candidates));
        }
        Ok(PolytopeIntersection::Full(Self::hull(self.place, &candidates)?))
    }
}

/// Outcome of an exact polytope intersection.
#[derive(Clone, Debug)]
pub enum PolytopeIntersection {
    Empty,
    /// Nonempty but not full-dimensional; the witness points are returned.
    LowerDimensional(Vec<KPoint>),
    Full(PlacePolytope),
}

impl PolytopeIntersection {
    pub fn is_volume_zero(&self) -> bool {
        !matches!(self, PolytopeIntersection::Full(_))
    }
}

fn compare_at(place: usize, a: &KPoint, b: &KPoint) -> Result<std::cmp::Ordering> {
    for (x, y) in a.coords().iter().zip(b.coords()) {
        match x.sub(y).sign_at(place)? {
            -1 => return Ok(std::cmp::Ordering::Less),
            1 => return Ok(std::cmp::Ordering::Greater),
            _ => {}
        }
    }
    Ok(std::cmp::Ordering::Equal)
}

/// Canonical vertex order: ascending for segments, counterclockwise from the
/// lexicographic minimum for polygons, lexicographic otherwise.
fn order_vertices(place: usize, n: usize, vertices: &mut Vec<KPoint>) -> Result<()> {
    let mut err = None;
    if n == 2 {
        let mut min_idx = 0;
        for i in 1..vertices.len() {
            if compare_at(place, &vertices[i], &vertices[min_idx])? == std::cmp::Ordering::Less {
                min_idx = i;
            }
        }
        let origin = vertices.swap_remove(min_idx);
        vertices.sort_by(|p, q| {
            if err.is_some() {
                return std::cmp::Ordering::Equal;
            }
            let dp = p.sub(&origin);
            let dq = q.sub(&origin);
            let cross = dp.coord(0).mul(dq.coord(1)).sub(&dp.coord(1).mul(dq.coord(0)));
            match cross.sign_at(place) {
                Ok(1) => std::cmp::Ordering::Less,
                Ok(-1) => std::cmp::Ordering::Greater,
                Ok(_) => std::cmp::Ordering::Equal,
                Err(e) => {
                    err = Some(e);
                    std::cmp::Ordering::Equal
                }
            }
        });
        vertices.insert(0, origin);
    } else {
        vertices.sort_by(|p, q| {
            if err.is_some() {
                return std::cmp::Ordering::Equal;
            }
            match compare_at(place, p, q) {
                Ok(o) => o,
                Err(e) => {
                    err = Some(e);
                    std::cmp::Ordering::Equal
                }
            }
        });
    }
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Triangulates the vertex set of a full-dimensional polytope (no interior
/// points) by coning a fixed anchor over recursively triangulated facets.
/// Only used for volume computation, where the cone decomposition is exact.
fn triangulate_vertex_set(place: usize, points: &[KPoint]) -> Result<Vec<Vec<usize>>> {
    let n = points[0].n();
    if n == 1 {
        debug_assert_eq!(points.len(), 2);
        return Ok(vec![vec![0, 1]]);
    }
    let hull = PlacePolytope::hull(place, points)?;
    // map hull vertices back to the caller's indexing
    let idx: Vec<usize> = hull
        .vertices()
        .iter()
        .map(|v| points.iter().position(|p| p == v).expect("vertex from input"))
        .collect();
    let anchor = 0usize;
    let anchor_pos = idx.iter().position(|&i| i == anchor);
    let mut out = Vec::new();
    for f in hull.facets() {
        if let Some(ap) = anchor_pos {
            if f.vertex_indices.binary_search(&ap).is_ok() {
                continue;
            }
        }
        let fpoints: Vec<KPoint> =
            f.vertex_indices.iter().map(|&i| hull.vertices()[i].clone()).collect();
        let axis = f.normal.iter().position(|c| !c.is_zero()).expect("nonzero normal");
        let projected: Vec<KPoint> = fpoints
            .iter()
            .map(|p| {
                KPoint::new(
                    p.coords()
                        .iter()
                        .enumerate()
                        .filter(|(c, _)| *c != axis)
                        .map(|(_, e)| e.clone())
                        .collect(),
                )
            })
            .collect();
        for sub in triangulate_vertex_set(place, &projected)? {
            let mut simplex: Vec<usize> =
                sub.iter().map(|&k| idx[f.vertex_indices[k]]).collect();
            simplex.push(anchor);
            simplex.sort_unstable();
            out.push(simplex);
        }
    }
    Ok(out)
}

// --- placing triangulation ---------------------------------------------------

/// Lifted determinant sign: orientation of the points (q_0..q_n) viewed as an
/// affine frame, at the place.
fn lifted_det(points: &[&KPoint]) -> FieldElement {
    let rows: Vec<Vec<FieldElement>> = points[1..]
        .iter()
        .map(|p| p.sub(points[0]).coords().to_vec())
        .collect();
    kdet(rows)
}

/// Placing (incremental) triangulation of a labeled point configuration in
/// input-label order: the first affinely independent n+1 points form the
/// seed simplex; every later point is inserted by splitting the simplices
/// containing it or by coning the visible boundary facets. Every distinct
/// point is used, so the simplex count is at least #points - n.
pub fn triangulate(place: usize, points: &[KPoint]) -> Result<SimplexSet> {
    if points.is_empty() {
        return Err(Error::Degenerate("empty configuration".into()));
    }
    let n = points[0].n();
    // first-occurrence labels for duplicates
    let mut labels: Vec<usize> = Vec::new();
    let mut distinct: Vec<KPoint> = Vec::new();
    for p in points {
        if !distinct.contains(p) {
            labels.push(points.iter().position(|q| q == p).unwrap());
            distinct.push(p.clone());
        }
    }
    if affine_rank(&distinct) != n {
        return Err(Error::Degenerate(format!(
            "configuration spans affine dimension {} < {}",
            affine_rank(&distinct),
            n
        )));
    }

    // Seed simplex: greedy affinely independent prefix.
    let mut seed: Vec<usize> = vec![0];
    for i in 1..distinct.len() {
        if seed.len() == n + 1 {
            break;
        }
        let mut cand: Vec<KPoint> = seed.iter().map(|&k| distinct[k].clone()).collect();
        cand.push(distinct[i].clone());
        if affine_rank(&cand) == cand.len() - 1 {
            seed.push(i);
        }
    }
    debug_assert_eq!(seed.len(), n + 1);
    let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut sorted_seed = seed.clone();
    sorted_seed.sort_unstable();
    simplices.insert(sorted_seed);

    for i in 1..distinct.len() {
        if seed.contains(&i) {
            continue;
        }
        insert_point(place, &distinct, &mut simplices, i)?;
    }

    let out: Vec<Vec<usize>> = simplices
        .into_iter()
        .map(|s| {
            let mut relabeled: Vec<usize> = s.into_iter().map(|k| labels[k]).collect();
            relabeled.sort_unstable();
            relabeled
        })
        .collect();
    debug_assert!(out.len() >= distinct.len() - n);
    Ok(SimplexSet { n, simplices: out })
}

fn insert_point(
    place: usize,
    pts: &[KPoint],
    simplices: &mut BTreeSet<Vec<usize>>,
    x: usize,
) -> Result<()> {
    // Locate: all simplices whose closed hull contains x.
    let mut containing: Vec<Vec<usize>> = Vec::new();
    for s in simplices.iter() {
        if simplex_contains(place, pts, s, x)? {
            containing.push(s.clone());
        }
    }
    let before = simplices.len();
    if !containing.is_empty() {
        for s in containing {
            simplices.remove(&s);
            // split: cone x over the facets whose affine hull misses x
            for out in 0..s.len() {
                let mut facet: Vec<usize> = s.clone();
                facet.remove(out);
                let mut frame: Vec<&KPoint> = facet.iter().map(|&k| &pts[k]).collect();
                frame.push(&pts[x]);
                if lifted_det(&frame).is_zero() {
                    continue;
                }
                let mut t = facet;
                t.push(x);
                t.sort_unstable();
                simplices.insert(t);
            }
        }
    } else {
        // exterior: cone over strictly visible boundary facets
        let mut facet_count: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for s in simplices.iter() {
            for out in 0..s.len() {
                let mut facet = s.clone();
                facet.remove(out);
                facet_count.entry(facet).or_default().push(s.clone());
            }
        }
        for (facet, owners) in facet_count {
            if owners.len() != 1 {
                continue;
            }
            let owner = &owners[0];
            let opposite = owner.iter().copied().find(|k| !facet.contains(k)).unwrap();
            let mut frame_x: Vec<&KPoint> = facet.iter().map(|&k| &pts[k]).collect();
            frame_x.push(&pts[x]);
            let mut frame_o: Vec<&KPoint> = facet.iter().map(|&k| &pts[k]).collect();
            frame_o.push(&pts[opposite]);
            let sx = lifted_det(&frame_x).sign_at(place)?;
            let so = lifted_det(&frame_o).sign_at(place)?;
            debug_assert!(so != 0);
            if sx != 0 && sx != so {
                let mut t = facet.clone();
                t.push(x);
                t.sort_unstable();
                simplices.insert(t);
            }
        }
    }
    assert!(
        simplices.len() > before,
        "inserting a distinct point must add at least one simplex"
    );
    Ok(())
}

fn simplex_contains(place: usize, pts: &[KPoint], s: &[usize], x: usize) -> Result<bool> {
    simplex_contains_point(place, pts, s, &pts[x])
}

/// Exact closed membership of x in the simplex with the given vertex labels.
pub(crate) fn simplex_contains_point(
    place: usize,
    pts: &[KPoint],
    s: &[usize],
    x: &KPoint,
) -> Result<bool> {
    let frame: Vec<&KPoint> = s.iter().map(|&k| &pts[k]).collect();
    let orient = lifted_det(&frame).sign_at(place)?;
    debug_assert!(orient != 0, "triangulation simplices are full-dimensional");
    for slot in 0..s.len() {
        let mut replaced: Vec<&KPoint> = frame.clone();
        replaced[slot] = x;
        let sgn = lifted_det(&replaced).sign_at(place)?;
        if sgn != 0 && sgn != orient {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SimplexSet {
    /// Number of full-dimensional simplices.
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Sum of the simplex volumes as a field element positive at the place.
    pub fn volume_element(&self, place: usize, points: &[KPoint]) -> Result<FieldElement> {
        let field = points[0].field().clone();
        let mut total = FieldElement::zero(&field);
        for s in &self.simplices {
            let frame: Vec<&KPoint> = s.iter().map(|&k| &points[k]).collect();
            let d = lifted_det(&frame);
            let sgn = d.sign_at(place)?;
            debug_assert!(sgn != 0);
            total = total.add(&if sgn < 0 { d.neg() } else { d });
        }
        let nfact: BigInt = (1..=self.n as u64).map(BigInt::from).product();
        Ok(total.scale(&BigRational::new(BigInt::one(), nfact)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use std::sync::Arc;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rationals() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn qpoint(f: &Arc<NumberField>, coords: &[(i64, i64)]) -> KPoint {
        KPoint::from_rationals(f, &coords.iter().map(|&(a, b)| q(a, b)).collect::<Vec<_>>())
    }

    #[test]
    fn hull_drops_interior_points() {
        let f = rationals();
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (0, 1)]),
            qpoint(&f, &[(0, 1), (1, 1)]),
            qpoint(&f, &[(1, 4), (1, 4)]),
        ];
        let hull = PlacePolytope::hull(0, &pts).unwrap();
        assert_eq!(hull.vertices().len(), 3);
        assert_eq!(hull.facets().len(), 3);
        assert!(!hull.vertices().contains(&pts[3]));
    }

    #[test]
    fn hull_rejects_degenerate_input() {
        let f = rationals();
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (1, 1)]),
            qpoint(&f, &[(2, 1), (2, 1)]),
        ];
        assert!(matches!(PlacePolytope::hull(0, &pts), Err(Error::Degenerate(_))));
    }

    #[test]
    fn segment_hull_in_one_dimension() {
        let f = rationals();
        let pts = [
            qpoint(&f, &[(3, 1)]),
            qpoint(&f, &[(-2, 1)]),
            qpoint(&f, &[(1, 1)]),
        ];
        let hull = PlacePolytope::hull(0, &pts).unwrap();
        assert_eq!(hull.vertices().len(), 2);
        let v = hull.volume_element().unwrap();
        assert_eq!(v.as_rational().unwrap(), &q(5, 1));
    }

    #[test]
    fn sym_hull_makes_cross_polytopes() {
        let f = rationals();
        let pts = [qpoint(&f, &[(1, 1), (0, 1)]), qpoint(&f, &[(0, 1), (1, 1)])];
        let hull = PlacePolytope::sym_hull(0, &pts).unwrap();
        assert_eq!(hull.vertices().len(), 4);
        assert!(hull.is_symmetric());
        let v = hull.volume_element().unwrap();
        assert_eq!(v.as_rational().unwrap(), &q(2, 1));
    }

    #[test]
    fn sym_hull_of_two_points_is_a_parallelogram_hull() {
        let f = rationals();
        let pts = [qpoint(&f, &[(1, 1), (0, 1)]), qpoint(&f, &[(1, 1), (1, 1)])];
        let hull = PlacePolytope::sym_hull(0, &pts).unwrap();
        assert_eq!(hull.vertices().len(), 4);
        assert_eq!(hull.volume_element().unwrap().as_rational().unwrap(), &q(2, 1));
    }

    #[test]
    fn membership_classification() {
        let f = rationals();
        let square = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (1, 1)]),
            qpoint(&f, &[(0, 1), (1, 1)]),
        ];
        let hull = PlacePolytope::hull(0, &square).unwrap();
        assert_eq!(hull.locate(&qpoint(&f, &[(1, 2), (1, 2)])).unwrap(), Location::Inside);
        assert_eq!(hull.locate(&qpoint(&f, &[(2, 1), (0, 1)])).unwrap(), Location::Outside);
        assert_eq!(hull.locate(&qpoint(&f, &[(1, 1), (1, 2)])).unwrap(), Location::Boundary);
    }

    #[test]
    fn unit_simplex_volume() {
        let f = rationals();
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (0, 1)]),
            qpoint(&f, &[(0, 1), (1, 1)]),
        ];
        let hull = PlacePolytope::hull(0, &pts).unwrap();
        assert_eq!(hull.volume_element().unwrap().as_rational().unwrap(), &q(1, 2));
    }

    #[test]
    fn shoelace_matches_volume_on_a_quadrilateral() {
        let f = rationals();
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(3, 1), (0, 1)]),
            qpoint(&f, &[(4, 1), (2, 1)]),
            qpoint(&f, &[(1, 1), (3, 1)]),
        ];
        let hull = PlacePolytope::hull(0, &pts).unwrap();
        // canonical order is counterclockwise, so the shoelace sum applies
        let vs = hull.vertices();
        let mut twice = q(0, 1);
        for k in 0..vs.len() {
            let a = &vs[k];
            let b = &vs[(k + 1) % vs.len()];
            let xa = a.coord(0).as_rational().unwrap().clone();
            let ya = a.coord(1).as_rational().unwrap().clone();
            let xb = b.coord(0).as_rational().unwrap().clone();
            let yb = b.coord(1).as_rational().unwrap().clone();
            twice += xa * yb - xb * ya;
        }
        let area = twice / q(2, 1);
        assert_eq!(hull.volume_element().unwrap().as_rational().unwrap(), &area);
    }

    #[test]
    fn four_dimensional_cross_polytope_volume() {
        let f = rationals();
        let pts: Vec<KPoint> = (0..4).map(|i| KPoint::unit(&f, 4, i)).collect();
        let hull = PlacePolytope::sym_hull(0, &pts).unwrap();
        assert_eq!(hull.vertices().len(), 8);
        assert_eq!(hull.facets().len(), 16);
        // 2^4 / 4!
        assert_eq!(hull.volume_element().unwrap().as_rational().unwrap(), &q(2, 3));
    }

    #[test]
    fn hull_idempotence() {
        let f = rationals();
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(2, 1), (0, 1)]),
            qpoint(&f, &[(2, 1), (2, 1)]),
            qpoint(&f, &[(0, 1), (2, 1)]),
            qpoint(&f, &[(1, 1), (1, 1)]),
        ];
        let hull = PlacePolytope::hull(0, &pts).unwrap();
        let again = PlacePolytope::hull(0, hull.vertices()).unwrap();
        assert_eq!(hull, again);
    }

    #[test]
    fn intersection_of_offset_squares() {
        let f = rationals();
        let sq = |dx: i64| {
            PlacePolytope::hull(
                0,
                &[
                    qpoint(&f, &[(dx, 2), (0, 1)]),
                    qpoint(&f, &[(dx + 2, 2), (0, 1)]),
                    qpoint(&f, &[(dx + 2, 2), (1, 1)]),
                    qpoint(&f, &[(dx, 2), (1, 1)]),
                ],
            )
            .unwrap()
        };
        let a = sq(0);
        let b = sq(1);
        match a.intersect(&b).unwrap() {
            PolytopeIntersection::Full(p) => {
                assert_eq!(p.vertices().len(), 4);
                assert_eq!(p.volume_element().unwrap().as_rational().unwrap(), &q(1, 2));
            }
            other => panic!("expected full intersection, got {:?}", other),
        }
        // offset far enough to only share an edge
        let c = sq(2);
        assert!(a.intersect(&c).unwrap().is_volume_zero());
        let d = sq(5);
        assert!(matches!(a.intersect(&d).unwrap(), PolytopeIntersection::Empty));
    }

    #[test]
    fn triangulate_minimal_configurations() {
        let f = rationals();
        let tri = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (0, 1)]),
            qpoint(&f, &[(0, 1), (1, 1)]),
        ];
        let t = triangulate(0, &tri).unwrap();
        assert_eq!(t.len(), 1);

        // square plus center: 4 simplices through the center
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (0, 1)]),
            qpoint(&f, &[(1, 1), (1, 1)]),
            qpoint(&f, &[(0, 1), (1, 1)]),
            qpoint(&f, &[(1, 2), (1, 2)]),
        ];
        let t = triangulate(0, &pts).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.simplices.iter().all(|s| s.contains(&4)));
        let vol = t.volume_element(0, &pts).unwrap();
        assert_eq!(vol.as_rational().unwrap(), &q(1, 1));
    }

    #[test]
    fn triangulation_count_bound_with_interior_and_boundary_points() {
        let f = rationals();
        // 2-simplex scaled by 3 with an edge midpoint and an interior point
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(3, 1), (0, 1)]),
            qpoint(&f, &[(0, 1), (3, 1)]),
            qpoint(&f, &[(3, 2), (0, 1)]), // on an edge
            qpoint(&f, &[(1, 2), (1, 2)]), // interior
        ];
        let t = triangulate(0, &pts).unwrap();
        assert!(t.len() >= pts.len() - 2, "k = {} < m = {}", t.len(), pts.len() - 2);
        let vol = t.volume_element(0, &pts).unwrap();
        assert_eq!(vol.as_rational().unwrap(), &q(9, 2));
    }

    #[test]
    fn triangulation_volume_matches_hull_volume() {
        let f = rationals();
        let pts = [
            qpoint(&f, &[(0, 1), (0, 1)]),
            qpoint(&f, &[(4, 1), (1, 1)]),
            qpoint(&f, &[(3, 1), (4, 1)]),
            qpoint(&f, &[(-1, 1), (2, 1)]),
            qpoint(&f, &[(1, 1), (1, 1)]),
            qpoint(&f, &[(2, 1), (2, 1)]),
        ];
        let t = triangulate(0, &pts).unwrap();
        let hull = PlacePolytope::hull(0, &pts).unwrap();
        assert_eq!(
            t.volume_element(0, &pts).unwrap(),
            hull.volume_element().unwrap()
        );
        assert!(t.len() >= 4);
    }

    #[test]
    fn sqrt2_quadrilaterals_at_both_places() {
        // the running 2-dimensional example over Q[sqrt2]
        let f = NumberField::new(&[-2, 0, 1]).unwrap();
        let theta = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        let a = KPoint::new(vec![theta.clone(), one.clone()]);
        let b = KPoint::new(vec![one.clone(), FieldElement::from_integer(&f, 3)]);
        let c = KPoint::new(vec![FieldElement::from_integer(&f, 2), FieldElement::from_integer(&f, 3)]);
        let d = KPoint::new(vec![one.clone(), theta.clone()]);
        let pts = [a.clone(), b.clone(), c.clone(), d.clone()];

        let p1 = PlacePolytope::hull(0, &pts).unwrap();
        assert_eq!(p1.vertices().len(), 4);
        // area at place 1: (4 sqrt2 - 3)/2
        let v1 = p1.volume_element().unwrap();
        let expect1 = theta.scale(&q(2, 1)).sub(&FieldElement::from_rational(&f, q(3, 2)));
        assert_eq!(v1, expect1);

        let p2 = PlacePolytope::hull(1, &pts).unwrap();
        assert_eq!(p2.vertices().len(), 4);
        // area at place 2: (8 + 5 sqrt2)/2 evaluated at theta -> -sqrt2
        let v2 = p2.volume_element().unwrap();
        let expect2 = FieldElement::from_rational(&f, q(4, 1)).sub(&theta.scale(&q(5, 2)));
        assert_eq!(v2, expect2);

        // placing triangulation in label order a, b, c, d gives the
        // diagonal through a and b at the first place
        let t = triangulate(0, &pts).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.simplices, vec![vec![0, 1, 2], vec![0, 1, 3]]);
    }
}
