//! The collection of all finite-place factors of an adelic body, held
//! globally as one finitely generated module over the ring of integers,
//! realized as a full-rank integer lattice in the rational coordinate space
//! of K^n. Requires the class-number-one assertion on the field.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg;
use crate::numberfield::{dual_power_basis, FieldElement, Interval, NumberField};
use crate::{exec, Error, Result};

/// A point of K^n: n field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoint {
    coords: Vec<FieldElement>,
}

impl KPoint {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        assert!(!coords.is_empty(), "points need at least one coordinate");
        KPoint { coords }
    }

    pub fn zero(field: &Arc<NumberField>, n: usize) -> Self {
        KPoint { coords: vec![FieldElement::zero(field); n] }
    }

    /// The standard unit point e_i (0-based).
    pub fn unit(field: &Arc<NumberField>, n: usize, i: usize) -> Self {
        let mut coords = vec![FieldElement::zero(field); n];
        coords[i] = FieldElement::one(field);
        KPoint { coords }
    }

    /// Builds a point from rational coordinates (one rational per K-coordinate).
    pub fn from_rationals(field: &Arc<NumberField>, vals: &[BigRational]) -> Self {
        KPoint {
            coords: vals.iter().map(|v| FieldElement::from_rational(field, v.clone())).collect(),
        }
    }

    pub fn from_integers(field: &Arc<NumberField>, vals: &[i64]) -> Self {
        KPoint {
            coords: vals.iter().map(|&v| FieldElement::from_integer(field, v)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.coords[0].field()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &FieldElement {
        &self.coords[i]
    }

    pub fn add(&self, other: &KPoint) -> KPoint {
        KPoint {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &KPoint) -> KPoint {
        KPoint {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> KPoint {
        KPoint { coords: self.coords.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale_rat(&self, q: &BigRational) -> KPoint {
        KPoint { coords: self.coords.iter().map(|a| a.scale(q)).collect() }
    }

    pub fn scale_elem(&self, e: &FieldElement) -> KPoint {
        KPoint { coords: self.coords.iter().map(|a| a.mul(e)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    /// Flat rational coordinates, coordinate-major: the d power-basis
    /// coordinates of x_1, then of x_2, and so on (length n*d).
    pub fn flat(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.n() * self.field().degree());
        for c in &self.coords {
            out.extend(c.coords().iter().cloned());
        }
        out
    }

    pub fn from_flat(field: &Arc<NumberField>, n: usize, flat: &[BigRational]) -> Self {
        let d = field.degree();
        assert_eq!(flat.len(), n * d);
        let coords = (0..n)
            .map(|i| {
                FieldElement::new(field.clone(), flat[i * d..(i + 1) * d].to_vec())
                    .expect("coordinate count matches the degree")
            })
            .collect();
        KPoint { coords }
    }

    /// Deterministic ordering key.
    pub fn sort_key(&self) -> Vec<BigRational> {
        self.flat()
    }
}

/// A finitely generated O-submodule of K^n of full rank nd, in canonical
/// Hermite-normal-form basis.
#[derive(Clone, Debug)]
pub struct OModule {
    field: Arc<NumberField>,
    n: usize,
    generators: Vec<KPoint>,
    z_basis: Vec<KPoint>,
    basis_mat: linalg::QMat,
    /// transpose-inverse of the basis matrix: maps flat coordinates to
    /// basis coefficients
    coeff_mat: linalg::QMat,
    index_vs_standard: BigRational,
}

impl PartialEq for OModule {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.z_basis == other.z_basis
    }
}
impl Eq for OModule {}

impl OModule {
    /// The module generated over O by the given points of K^n. The points
    /// must span K^n over K; the basis is the HNF reduction of the Z-span of
    /// {theta^j a_i}.
    pub fn from_generators(field: &Arc<NumberField>, n: usize, points: &[KPoint]) -> Result<Self> {
        if !field.class_number_one() {
            return Err(Error::ClassNumberNotOne);
        }
        if n == 0 || points.is_empty() {
            return Err(Error::NonSpanning("no generators".into()));
        }
        for p in points {
            if p.n() != n || p.field() != field {
                return Err(Error::InvalidInstance("generator shape mismatch".into()));
            }
        }
        let d = field.degree();
        let mut rows: linalg::QMat = Vec::with_capacity(points.len() * d);
        for p in points {
            let mut q = p.clone();
            for _ in 0..d {
                rows.push(q.flat());
                q = KPoint {
                    coords: q.coords.iter().map(FieldElement::mul_by_theta).collect(),
                };
            }
        }
        let basis_rows = linalg::rational_hnf(&rows);
        if basis_rows.len() != n * d {
            return Err(Error::NonSpanning(format!(
                "generators span a rank-{} sublattice of rank {}",
                basis_rows.len(),
                n * d
            )));
        }
        Self::from_basis_rows(field.clone(), n, points.to_vec(), basis_rows)
    }

    fn from_basis_rows(
        field: Arc<NumberField>,
        n: usize,
        generators: Vec<KPoint>,
        basis_rows: linalg::QMat,
    ) -> Result<Self> {
        let det = linalg::det(&basis_rows).abs();
        debug_assert!(!det.is_zero());
        let coeff_mat = linalg::invert(&linalg::transpose(&basis_rows))
            .expect("full-rank basis inverts");
        let z_basis = basis_rows
            .iter()
            .map(|row| KPoint::from_flat(&field, n, row))
            .collect::<Vec<_>>();
        let module = OModule {
            field,
            n,
            generators,
            z_basis,
            basis_mat: basis_rows,
            coeff_mat,
            index_vs_standard: det,
        };
        debug_assert!(module.is_theta_stable());
        Ok(module)
    }

    /// The standard module O^n.
    pub fn standard(field: &Arc<NumberField>, n: usize) -> Self {
        let gens: Vec<KPoint> = (0..n).map(|i| KPoint::unit(field, n, i)).collect();
        Self::from_generators(field, n, &gens).expect("unit points span")
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[KPoint] {
        &self.generators
    }

    /// Canonical Z-basis (nd points of K^n).
    pub fn z_basis(&self) -> &[KPoint] {
        &self.z_basis
    }

    /// q with det(emb(M)) = q * det(emb(O^n)).
    pub fn index_vs_standard(&self) -> &BigRational {
        &self.index_vs_standard
    }

    /// Product of the local volumes over all finite places: 1/index.
    pub fn finite_volume(&self) -> BigRational {
        self.index_vs_standard.recip()
    }

    /// Exact membership: solves the nd x nd system against the basis.
    pub fn contains(&self, x: &KPoint) -> bool {
        if x.n() != self.n || x.field() != &self.field {
            return false;
        }
        let coeffs = linalg::mat_mul_vec(&self.coeff_mat, &x.flat());
        coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Whether every module basis vector stays inside after multiplication
    /// by theta (true by construction; exposed for verification).
    pub fn is_theta_stable(&self) -> bool {
        self.z_basis.iter().all(|b| {
            let tb = KPoint {
                coords: b.coords.iter().map(FieldElement::mul_by_theta).collect(),
            };
            self.contains(&tb)
        })
    }

    /// Containment of modules: every basis vector of `other` lies in self.
    pub fn contains_module(&self, other: &OModule) -> bool {
        other.z_basis.iter().all(|b| self.contains(b))
    }

    /// Intersection of two full-rank modules over the same field.
    pub fn intersect(&self, other: &OModule) -> Result<OModule> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::FieldMismatch);
        }
        let rows = linalg::lattice_intersect(&self.basis_mat, &other.basis_mat);
        assert_eq!(rows.len(), self.n * self.field.degree(), "full-rank intersection");
        let gens = rows
            .iter()
            .map(|row| KPoint::from_flat(&self.field, self.n, row))
            .collect::<Vec<_>>();
        let m = Self::from_basis_rows(self.field.clone(), self.n, gens, rows)?;
        assert!(m.is_theta_stable(), "intersection of O-modules is an O-module");
        Ok(m)
    }

    /// Integer coefficient ranges covering every module point whose
    /// embedding lies in the box (place-major layout: bounds[v*n + i] bounds
    /// sigma_v(x_i)). Conservative superset derived from the dual power
    /// basis, exact apart from outward rounding.
    fn coefficient_ranges(&self, bounds: &[Interval]) -> Result<Vec<(i64, i64)>> {
        let field = &self.field;
        let d = field.degree();
        let n = self.n;
        let nd = n * d;
        assert_eq!(bounds.len(), nd);
        let width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 16));
        let duals = dual_power_basis(field);
        let dual_iv: Vec<Vec<Interval>> = duals
            .iter()
            .map(|w| {
                (0..d)
                    .map(|v| w.embed(v, &width).expect("real place"))
                    .collect()
            })
            .collect();
        // Power-coordinate box, coordinate-major.
        let mut pbox = Vec::with_capacity(nd);
        for i in 0..n {
            for j in 0..d {
                let mut acc = Interval::point(BigRational::zero());
                for v in 0..d {
                    acc = acc.add(&dual_iv[j][v].mul(&bounds[v * n + i]));
                }
                pbox.push(acc);
            }
        }
        // Basis coefficient box: coeffs = coeff_mat * flat.
        let mut ranges = Vec::with_capacity(nd);
        for row in &self.coeff_mat {
            let mut acc = Interval::point(BigRational::zero());
            for (c, iv) in row.iter().zip(&pbox) {
                if !c.is_zero() {
                    acc = acc.add(&iv.scale(c));
                }
            }
            let lo = acc.lo().ceil().to_integer();
            let hi = acc.hi().floor().to_integer();
            let (lo, hi) = (lo.to_i64(), hi.to_i64());
            match (lo, hi) {
                (Some(lo), Some(hi)) => ranges.push((lo, hi)),
                _ => return Err(Error::CandidateCap(usize::MAX)),
            }
        }
        Ok(ranges)
    }

    fn basis_embeddings(&self) -> Vec<Vec<Interval>> {
        let d = self.field.degree();
        let n = self.n;
        let width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 16));
        self.z_basis
            .iter()
            .map(|b| {
                let mut row = Vec::with_capacity(n * d);
                for v in 0..d {
                    for i in 0..n {
                        row.push(b.coord(i).embed(v, &width).expect("real place"));
                    }
                }
                row
            })
            .collect()
    }

    /// Exact test that the embedding of x lies in the closed box; interval
    /// arithmetic first, exact signs only on straddling coordinates.
    fn in_box_exact(&self, x: &KPoint, bounds: &[Interval]) -> bool {
        let n = self.n;
        let width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 16));
        for v in 0..self.field.degree() {
            for i in 0..n {
                let b = &bounds[v * n + i];
                let iv = x.coord(i).embed(v, &width).expect("real place");
                if b.contains_interval(&iv) {
                    continue;
                }
                if !b.intersects(&iv) {
                    return false;
                }
                let above_lo = x.coord(i).sub(&FieldElement::from_rational(&self.field, b.lo().clone()));
                let below_hi = FieldElement::from_rational(&self.field, b.hi().clone()).sub(x.coord(i));
                if above_lo.sign_at(v).expect("real place") < 0
                    || below_hi.sign_at(v).expect("real place") < 0
                {
                    return false;
                }
            }
        }
        true
    }

    /// All module points whose embedding lies in the closed box; complete by
    /// outward rounding, filtered exactly, sorted deterministically.
    /// The box is place-major: bounds[v*n + i] constrains sigma_v(x_i).
    pub fn enumerate_in_box(&self, bounds: &[Interval], cap: usize) -> Result<Vec<KPoint>> {
        if !self.field.is_totally_real() {
            return Err(Error::NotTotallyReal(self.field.signature().1));
        }
        let ranges = self.coefficient_ranges(bounds)?;
        let mut total: f64 = 1.0;
        for (lo, hi) in &ranges {
            if hi < lo {
                return Ok(Vec::new());
            }
            total *= (hi - lo + 1) as f64;
        }
        if total > 1e12 {
            return Err(Error::CandidateCap(cap));
        }
        let emb = self.basis_embeddings();
        let nd = ranges.len();
        // Hull of the remaining contribution from coordinates k.. for pruning.
        let mut suffix = vec![vec![Interval::point(BigRational::zero()); nd]; nd + 1];
        for k in (0..nd).rev() {
            let lo = BigRational::from(BigInt::from(ranges[k].0));
            let hi = BigRational::from(BigInt::from(ranges[k].1));
            let span = Interval::new(lo, hi);
            for t in 0..nd {
                suffix[k][t] = suffix[k + 1][t].add(&emb[k][t].mul(&span));
            }
        }

        let leaves = std::sync::atomic::AtomicUsize::new(0);
        let first_range = ranges[0].0..=ranges[0].1;
        let chunks: Vec<i64> = first_range.collect();
        let results = exec::try_map_collect(chunks, |c0| {
            let mut coeffs = vec![0i64; nd];
            coeffs[0] = c0;
            let mut partial = vec![Interval::point(BigRational::zero()); nd];
            let c0q = BigRational::from(BigInt::from(c0));
            for t in 0..nd {
                partial[t] = emb[0][t].scale(&c0q);
            }
            let mut found = Vec::new();
            self.dfs(1, &mut coeffs, &partial, &ranges, &emb, &suffix, bounds, cap, &leaves, &mut found)?;
            Ok(found)
        })?;
        if leaves.load(std::sync::atomic::Ordering::Relaxed) > cap {
            return Err(Error::CandidateCap(cap));
        }
        let mut out: Vec<KPoint> = results.into_iter().flatten().collect();
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        depth: usize,
        coeffs: &mut Vec<i64>,
        partial: &[Interval],
        ranges: &[(i64, i64)],
        emb: &[Vec<Interval>],
        suffix: &[Vec<Interval>],
        bounds: &[Interval],
        cap: usize,
        leaves: &std::sync::atomic::AtomicUsize,
        found: &mut Vec<KPoint>,
    ) -> Result<()> {
        let nd = ranges.len();
        for t in 0..nd {
            if !partial[t].add(&suffix[depth][t]).intersects(&bounds[t]) {
                return Ok(());
            }
        }
        if depth == nd {
            let prev = leaves.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            if prev >= cap {
                return Err(Error::CandidateCap(cap));
            }
            let x = self.point_from_coeffs(coeffs);
            if self.in_box_exact(&x, bounds) {
                found.push(x);
            }
            return Ok(());
        }
        for c in ranges[depth].0..=ranges[depth].1 {
            coeffs[depth] = c;
            let cq = BigRational::from(BigInt::from(c));
            let next: Vec<Interval> = (0..nd)
                .map(|t| partial[t].add(&emb[depth][t].scale(&cq)))
                .collect();
            self.dfs(depth + 1, coeffs, &next, ranges, emb, suffix, bounds, cap, leaves, found)?;
        }
        Ok(())
    }

    fn point_from_coeffs(&self, coeffs: &[i64]) -> KPoint {
        let mut acc = KPoint::zero(&self.field, self.n);
        for (c, b) in coeffs.iter().zip(&self.z_basis) {
            if *c != 0 {
                acc = acc.add(&b.scale_rat(&BigRational::from(BigInt::from(*c))));
            }
        }
        acc
    }

    /// Reference enumeration: plain nested loops over the coefficient
    /// ranges with purely sign-based membership, no pruning. Kept as an
    /// independent code path for cross-checking the branch-and-bound route.
    pub fn enumerate_in_box_scan(&self, bounds: &[Interval], cap: usize) -> Result<Vec<KPoint>> {
        if !self.field.is_totally_real() {
            return Err(Error::NotTotallyReal(self.field.signature().1));
        }
        let ranges = self.coefficient_ranges(bounds)?;
        let mut total = 1usize;
        for (lo, hi) in &ranges {
            if hi < lo {
                return Ok(Vec::new());
            }
            total = total
                .checked_mul((hi - lo + 1) as usize)
                .filter(|&t| t <= cap)
                .ok_or(Error::CandidateCap(cap))?;
        }
        let nd = ranges.len();
        let n = self.n;
        let mut out = Vec::new();
        let mut coeffs: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        'outer: loop {
            let x = self.point_from_coeffs(&coeffs);
            let mut inside = true;
            'check: for v in 0..self.field.degree() {
                for i in 0..n {
                    let b = &bounds[v * n + i];
                    let lo = x.coord(i).sub(&FieldElement::from_rational(&self.field, b.lo().clone()));
                    let hi = FieldElement::from_rational(&self.field, b.hi().clone()).sub(x.coord(i));
                    if lo.sign_at(v)? < 0 || hi.sign_at(v)? < 0 {
                        inside = false;
                        break 'check;
                    }
                }
            }
            if inside {
                out.push(x);
            }
            // odometer
            for k in 0..nd {
                if coeffs[k] < ranges[k].1 {
                    coeffs[k] += 1;
                    for (k2, c) in coeffs.iter_mut().enumerate().take(k) {
                        *c = ranges[k2].0;
                    }
                    continue 'outer;
                }
            }
            break;
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(&[-2, 0, 1]).unwrap()
    }

    fn rationals() -> Arc<NumberField> {
        NumberField::rationals()
    }

    #[test]
    fn standard_module_over_q() {
        let f = rationals();
        let m = OModule::standard(&f, 2);
        assert_eq!(m.index_vs_standard(), &q(1, 1));
        assert_eq!(m.finite_volume(), q(1, 1));
        assert!(m.contains(&KPoint::from_integers(&f, &[3, -4])));
        assert!(!m.contains(&KPoint::from_rationals(&f, &[q(1, 2), q(0, 1)])));
    }

    #[test]
    fn ring_of_integers_of_sqrt2() {
        let f = sqrt2();
        let m = OModule::from_generators(&f, 1, &[KPoint::unit(&f, 1, 0)]).unwrap();
        assert_eq!(m.index_vs_standard(), &q(1, 1));
        let theta = FieldElement::generator(&f);
        let x = KPoint::new(vec![FieldElement::from_integer(&f, 3).add(&theta.scale(&q(2, 1)))]);
        assert!(m.contains(&x));
        let half_theta = KPoint::new(vec![theta.scale(&q(1, 2))]);
        assert!(!m.contains(&half_theta));
        assert!(m.is_theta_stable());
    }

    #[test]
    fn fractional_module_over_q() {
        // generators {1/2, 1} over Q give (1/2)Z with index 1/2
        let f = rationals();
        let gens = [
            KPoint::from_rationals(&f, &[q(1, 2)]),
            KPoint::from_rationals(&f, &[q(1, 1)]),
        ];
        let m = OModule::from_generators(&f, 1, &gens).unwrap();
        assert_eq!(m.index_vs_standard(), &q(1, 2));
        assert_eq!(m.z_basis()[0].flat(), vec![q(1, 2)]);
        assert!(m.contains(&KPoint::from_rationals(&f, &[q(3, 2)])));
        assert!(!m.contains(&KPoint::from_rationals(&f, &[q(1, 3)])));
    }

    #[test]
    fn free_module_volume_matches_norm() {
        // (1+theta)O over Q[sqrt2]: |N(1+theta)| = 1
        let f = sqrt2();
        let theta = FieldElement::generator(&f);
        let g = FieldElement::one(&f).add(&theta);
        let m = OModule::from_generators(&f, 1, &[KPoint::new(vec![g.clone()])]).unwrap();
        assert_eq!(m.finite_volume(), q(1, 1));
        // 2O: |N(2)| = 4
        let m2 =
            OModule::from_generators(&f, 1, &[KPoint::new(vec![FieldElement::from_integer(&f, 2)])])
                .unwrap();
        assert_eq!(m2.finite_volume(), q(1, 4));
    }

    #[test]
    fn rejects_non_spanning_generators() {
        let f = rationals();
        let gens = [KPoint::from_integers(&f, &[1, 0])];
        assert!(matches!(
            OModule::from_generators(&f, 2, &gens),
            Err(Error::NonSpanning(_))
        ));
    }

    #[test]
    fn intersection_basics() {
        let f = rationals();
        let two = OModule::from_generators(&f, 1, &[KPoint::from_integers(&f, &[2])]).unwrap();
        let three = OModule::from_generators(&f, 1, &[KPoint::from_integers(&f, &[3])]).unwrap();
        let six = two.intersect(&three).unwrap();
        assert_eq!(six.z_basis()[0].flat(), vec![q(6, 1)]);

        let m = OModule::standard(&sqrt2(), 1);
        assert_eq!(m.intersect(&m).unwrap(), m);

        // O cap (1/2)O = O
        let f2 = sqrt2();
        let half = OModule::from_generators(
            &f2,
            1,
            &[KPoint::new(vec![FieldElement::from_rational(&f2, q(1, 2))])],
        )
        .unwrap();
        let o = OModule::standard(&f2, 1);
        assert_eq!(o.intersect(&half).unwrap(), o);
        assert!(half.contains_module(&o));
    }

    #[test]
    fn enumerates_integers_in_segment() {
        let f = rationals();
        let m = OModule::standard(&f, 1);
        let b = [Interval::new(q(-3, 2), q(3, 2))];
        let pts = m.enumerate_in_box(&b, 10_000).unwrap();
        let vals: Vec<BigRational> = pts.iter().map(|p| p.flat()[0].clone()).collect();
        assert_eq!(vals, vec![q(-1, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn enumerates_unit_box_in_z2() {
        let f = rationals();
        let m = OModule::standard(&f, 2);
        let b = [
            Interval::new(q(0, 1), q(1, 1)),
            Interval::new(q(0, 1), q(1, 1)),
        ];
        let pts = m.enumerate_in_box(&b, 10_000).unwrap();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn enumerates_sqrt2_integers_in_squares() {
        let f = sqrt2();
        let m = OModule::standard(&f, 1);
        // [-1,1]^2 contains exactly 0, 1, -1
        let b = [Interval::new(q(-1, 1), q(1, 1)), Interval::new(q(-1, 1), q(1, 1))];
        let pts = m.enumerate_in_box(&b, 10_000).unwrap();
        assert_eq!(pts.len(), 3);
        // [-3/2, 3/2] x [-5/2, 5/2] contains exactly {0, +-1, +-theta, +-(1-theta)}
        let b = [
            Interval::new(q(-3, 2), q(3, 2)),
            Interval::new(q(-5, 2), q(5, 2)),
        ];
        let pts = m.enumerate_in_box(&b, 10_000).unwrap();
        assert_eq!(pts.len(), 7);
        let theta = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        for e in [
            FieldElement::zero(&f),
            one.clone(),
            one.neg(),
            theta.clone(),
            theta.neg(),
            one.sub(&theta),
            theta.sub(&one),
        ] {
            assert!(pts.contains(&KPoint::new(vec![e])));
        }
    }

    #[test]
    fn branch_and_bound_matches_naive_scan() {
        let f = sqrt2();
        let m = OModule::standard(&f, 1);
        let b = [Interval::new(q(-2, 1), q(3, 1)), Interval::new(q(-5, 2), q(2, 1))];
        let fast = m.enumerate_in_box(&b, 100_000).unwrap();
        let slow = m.enumerate_in_box_scan(&b, 100_000).unwrap();
        assert_eq!(fast, slow);
        assert!(!fast.is_empty());
    }

    #[test]
    fn candidate_cap_triggers() {
        let f = rationals();
        let m = OModule::standard(&f, 1);
        let b = [Interval::new(q(-1000, 1), q(1000, 1))];
        assert!(matches!(m.enumerate_in_box(&b, 10), Err(Error::CandidateCap(_))));
    }
}
