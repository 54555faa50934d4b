//! Realization of clusters at rational points of the projective plane and
//! the exact linear algebra of linear systems through them.
//!
//! A singular point carries a local frame (u, v): two affine polynomials
//! vanishing there with independent linear parts, chosen so that the curve
//! germ becomes `u^(dp) - v^(dq)` up to the usual Newton-face latitude.
//! Clusters on the Euclidean tree T_{p,q} are realized by resolving that
//! standard model: every infinitely near point sits at a chart origin of
//! one of the two standard blow-up charts, so all charts stay rational and
//! the virtual-transform conditions on a degree-d form are exact linear
//! functionals on its coefficients.
//!
//! The module also builds the benchmark branch curves: `f_p^q + f_q^p`
//! curves with cusp-type singularities along the intersection of two
//! curves, and line arrangements with ordinary multiple points.

use crate::enriques::{build_tpq_tree, gcd, Cluster};
use crate::multiplier::SingularityType;
use crate::poly::{
    invert_map_jet, monomials_of_degree, rational_roots, resultant_x2, Poly2, Poly3, UniPoly,
};
use crate::{rat_int, Error, Rat, Result};
use num_traits::Zero;

/// Height bound for the rational-root searches behind intersection
/// detection.  Roots whose numerator or denominator exceeds this are
/// reported as non-rational.
const ROOT_SEARCH_HEIGHT: u64 = 10_000;

/// A point of the projective plane with exact rational coordinates,
/// stored with its last nonzero coordinate scaled to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: [Rat; 3],
}

impl ProjectivePoint {
    pub fn new(c0: Rat, c1: Rat, c2: Rat) -> Result<Self> {
        let mut coords = [c0, c1, c2];
        let last = (0..3).rev().find(|&i| !coords[i].is_zero());
        let Some(last) = last else {
            return Err(Error::InvalidParameter(
                "projective point needs a nonzero coordinate".into(),
            ));
        };
        let scale = coords[last].clone();
        for c in &mut coords {
            *c = &*c / &scale;
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64) -> Result<Self> {
        ProjectivePoint::new(rat_int(c0), rat_int(c1), rat_int(c2))
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.coords
    }

    /// Affine coordinates (x1/x0, x2/x0); errors when the point lies on
    /// x0 = 0.
    pub fn affine(&self) -> Result<(Rat, Rat)> {
        if self.coords[0].is_zero() {
            return Err(Error::PointAtInfinity(format!(
                "({} : {} : {})",
                self.coords[0], self.coords[1], self.coords[2]
            )));
        }
        Ok((
            &self.coords[1] / &self.coords[0],
            &self.coords[2] / &self.coords[0],
        ))
    }
}

/// Local coordinates at a plane point: two affine polynomials in the chart
/// coordinates (x, y) = (x1/x0, x2/x0), vanishing at the point, with
/// independent linear parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFrame {
    pub u: Poly2,
    pub v: Poly2,
}

impl LocalFrame {
    pub fn new(u: Poly2, v: Poly2) -> Self {
        LocalFrame { u, v }
    }

    /// Frames from the linear parts of two affine polynomials; the common
    /// case of coordinate lines through the point.
    pub fn from_lines(u: Poly2, v: Poly2) -> Self {
        LocalFrame { u, v }
    }

    /// The frame recentered at the given affine point; both components
    /// must vanish there and stay independent.
    fn shifted(&self, x: &Rat, y: &Rat) -> Result<(Poly2, Poly2)> {
        let u0 = self.u.shift(x, y);
        let v0 = self.v.shift(x, y);
        if !u0.constant_term().is_zero() || !v0.constant_term().is_zero() {
            return Err(Error::DegenerateFrame(
                "frame polynomials do not vanish at the point".into(),
            ));
        }
        let det = u0.coeff(1, 0) * v0.coeff(0, 1) - u0.coeff(0, 1) * v0.coeff(1, 0);
        if det.is_zero() {
            return Err(Error::DegenerateFrame(
                "frame linear parts are dependent at the point".into(),
            ));
        }
        Ok((u0, v0))
    }
}

/// A located, typed and framed singular point of a branch curve.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub location: ProjectivePoint,
    pub ty: SingularityType,
    pub frame: LocalFrame,
}

impl SingularPoint {
    pub fn new(location: ProjectivePoint, ty: SingularityType, frame: LocalFrame) -> Result<Self> {
        let (x, y) = location.affine()?;
        frame.shifted(&x, &y)?;
        Ok(SingularPoint {
            location,
            ty,
            frame,
        })
    }
}

/// A plane branch curve: degree, singular points, and optionally an exact
/// defining polynomial (validated against every declared point).
#[derive(Clone, Debug)]
pub struct BranchCurve {
    pub degree: u64,
    pub points: Vec<SingularPoint>,
    pub polynomial: Option<Poly3>,
}

impl BranchCurve {
    pub fn new(degree: u64, points: Vec<SingularPoint>, polynomial: Option<Poly3>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter("curve degree >= 1".into()));
        }
        for (i, p) in points.iter().enumerate() {
            for other in points.iter().skip(i + 1) {
                if p.location == other.location {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate singular point ({} : {} : {})",
                        p.location.coords()[0],
                        p.location.coords()[1],
                        p.location.coords()[2]
                    )));
                }
            }
        }
        if let Some(poly) = &polynomial {
            if poly.homogeneous_degree() != Some(degree as u32) {
                return Err(Error::InvalidParameter(format!(
                    "polynomial is not homogeneous of degree {degree}"
                )));
            }
            for point in &points {
                check_declared_type(poly, point)?;
            }
        }
        Ok(BranchCurve {
            degree,
            points,
            polynomial,
        })
    }
}

/// Local expansion of a form in the frame coordinates of a point, to the
/// inclusive total order `order`.
fn local_expansion(poly: &Poly3, point: &SingularPoint, order: u32) -> Result<Poly2> {
    let (x, y) = point.location.affine()?;
    let (u0, v0) = point.frame.shifted(&x, &y)?;
    let (g1, g2) = invert_map_jet(&u0.truncate(order + 1), &v0.truncate(order + 1), order)?;
    let affine = poly.dehomogenize_x0().shift(&x, &y);
    Ok(affine.compose_trunc(&g1, &g2, order))
}

/// Verifies that the polynomial exhibits the declared `x^(dp) - y^(dq)`
/// model at the point, in the frame coordinates, through its Newton face:
/// everything under the face vanishes, the face is a squarefree binary
/// form in (u^p, v^q), and corner conditions rule out multiple axis
/// components and excess multiplicity.
fn check_declared_type(poly: &Poly3, point: &SingularPoint) -> Result<()> {
    let t = &point.ty;
    let (p, q, d) = (t.p() as u32, t.q() as u32, t.d() as u32);
    let (dq, dpq) = (d * q, d * p * q);
    let expansion = local_expansion(poly, point, dq)?;
    for (&(i, j), _) in expansion.terms() {
        if q * i + p * j < dpq {
            return Err(Error::JetMismatch(format!(
                "coefficient of u^{i} v^{j} under the Newton face is nonzero at ({} : {} : {})",
                point.location.coords()[0],
                point.location.coords()[1],
                point.location.coords()[2]
            )));
        }
    }
    let face: Vec<Rat> = (0..=d)
        .map(|k| expansion.coeff(p * k, q * (d - k)))
        .collect();
    let face_poly = UniPoly::new(face.clone());
    let fail = |msg: &str| -> Result<()> {
        Err(Error::JetMismatch(format!(
            "{msg} at ({} : {} : {})",
            point.location.coords()[0],
            point.location.coords()[1],
            point.location.coords()[2]
        )))
    };
    if face_poly.is_zero() {
        return fail("the Newton face of the expansion vanishes");
    }
    if q >= 2 && face_poly.degree() != Some(d as usize) {
        return fail("multiplicity exceeds the declared d*p");
    }
    if p >= 2 && face[0].is_zero() {
        return fail("the v-corner of the Newton face vanishes (non-reduced axis branch)");
    }
    if !face_poly.is_squarefree() {
        return fail("the Newton face has a repeated factor");
    }
    if p == 1 && q == 1 && d as usize - face_poly.degree().unwrap() > 1 {
        return fail("a repeated tangent direction along the v-axis");
    }
    Ok(())
}

/// Chart of a single blow-up step along the resolution of the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupChart {
    /// Tangent direction {u = 0}: (u, v) = (s t, t), exceptional {t = 0}.
    FollowU,
    /// Tangent direction {v = 0}: (u, v) = (s, s t), exceptional {s = 0}.
    FollowV,
}

/// One realized cluster point: model exponents, entering chart, and the
/// geometric proximities observed along the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizedVertex {
    pub vertex: usize,
    pub chart: Option<BlowupChart>,
    pub model_exponents: (u64, u64),
    pub satellite: bool,
    pub proximate_to: Vec<usize>,
}

/// The chart chain realizing a cluster at a singular point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub vertices: Vec<RealizedVertex>,
}

/// Walks the resolution chain of the model `u^(dp) - v^(dq)`, reporting
/// for each cluster vertex the chart that reaches it and its proximities.
/// The cluster tree must be the Euclidean tree of the point's type.
pub fn realize_cluster(point: &SingularPoint, cluster: &Cluster) -> Result<Realization> {
    let t = &point.ty;
    let expected = build_tpq_tree(t.p(), t.q())?;
    if cluster.tree != expected {
        return Err(Error::InvalidParameter(
            "cluster tree does not match the Euclidean tree of the point's type".into(),
        ));
    }
    if cluster.weights.iter().any(|&w| w < 0) {
        return Err(Error::NegativeWeights);
    }
    let r = cluster.tree.vertex_count();
    let mut vertices = Vec::with_capacity(r);
    let (mut a, mut b) = (t.d() * t.p(), t.d() * t.q());
    // Which vertex's exceptional divisor the two coordinate axes belong to.
    let mut u_axis: Option<usize> = None;
    let mut v_axis: Option<usize> = None;
    let mut chart: Option<BlowupChart> = None;
    for idx in 0..r {
        let mut proximate_to = Vec::new();
        if idx > 0 {
            proximate_to.push(idx - 1);
            // The second axis through this chart origin, if exceptional.
            let other = match chart {
                Some(BlowupChart::FollowU) => u_axis,
                Some(BlowupChart::FollowV) => v_axis,
                None => None,
            };
            if let Some(v) = other {
                if v != idx - 1 {
                    proximate_to.push(v);
                }
            }
            proximate_to.sort();
        }
        let satellite = proximate_to.len() >= 2;
        debug_assert_eq!(satellite, cluster.tree.is_satellite(idx));
        debug_assert_eq!(
            proximate_to,
            (0..idx)
                .filter(|&al| cluster.tree.is_proximate(idx, al))
                .collect::<Vec<_>>(),
            "tree proximity must match the blow-up geometry"
        );
        vertices.push(RealizedVertex {
            vertex: idx,
            chart,
            model_exponents: (a, b),
            satellite,
            proximate_to,
        });
        if idx + 1 < r {
            if a < b {
                // Follow the u = 0 direction; old u-axis survives as the
                // non-exceptional axis of the new chart.
                chart = Some(BlowupChart::FollowU);
                v_axis = Some(idx);
                b -= a;
            } else if b < a {
                chart = Some(BlowupChart::FollowV);
                u_axis = Some(idx);
                a -= b;
            } else {
                return Err(Error::InvalidParameter(
                    "model resolved before the tree was exhausted".into(),
                ));
            }
        }
    }
    debug_assert_eq!(a, b, "the chain must end at equal exponents");
    Ok(Realization { vertices })
}

/// Exact matrix of the linear conditions imposed on degree-d forms by
/// clusters realized at singular points.
#[derive(Clone, Debug)]
pub struct ConditionMatrix {
    pub rows: Vec<Vec<Rat>>,
    pub degree: u64,
    /// Total colength sum of w(w+1)/2, which is also the row count.
    pub deg_z: u64,
}

impl ConditionMatrix {
    pub fn cols(&self) -> usize {
        let d = self.degree as usize;
        (d + 1) * (d + 2) / 2
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }
}

/// Condition rows of one realized cluster on degree-d forms.
fn point_condition_rows(point: &SingularPoint, cluster: &Cluster, d: u64) -> Result<Vec<Vec<Rat>>> {
    let realization = realize_cluster(point, cluster)?;
    let total: i64 = cluster.weights.iter().sum();
    if total == 0 {
        return Ok(vec![]);
    }
    let order = total as u32 + 1;
    let (x, y) = point.location.affine()?;
    let (u0, v0) = point.frame.shifted(&x, &y)?;
    let (g1, g2) = invert_map_jet(&u0.truncate(order + 1), &v0.truncate(order + 1), order)?;
    // Jets of the affine coordinate functions in the frame coordinates.
    let x_loc = Poly2::constant(x).add(&g1);
    let y_loc = Poly2::constant(y).add(&g2);
    let monos = monomials_of_degree(d as u32);
    let mut x_pow = Vec::with_capacity(d as usize + 1);
    x_pow.push(Poly2::constant(rat_int(1)));
    for _ in 0..d {
        x_pow.push(x_pow.last().unwrap().mul_trunc(&x_loc, Some(order)));
    }
    let mut y_pow = Vec::with_capacity(d as usize + 1);
    y_pow.push(Poly2::constant(rat_int(1)));
    for _ in 0..d {
        y_pow.push(y_pow.last().unwrap().mul_trunc(&y_loc, Some(order)));
    }
    let mut jets: Vec<Poly2> = monos
        .iter()
        .map(|&(_, b, c)| x_pow[b as usize].mul_trunc(&y_pow[c as usize], Some(order)))
        .collect();

    let mut rows = Vec::new();
    for rv in &realization.vertices {
        let w = cluster.weights[rv.vertex];
        if w > 0 {
            let w = w as u32;
            for i in 0..w {
                for j in 0..w - i {
                    rows.push(jets.iter().map(|jet| jet.coeff(i, j)).collect());
                }
            }
        }
        // Virtual transform into the next chart: monomial reindexing with
        // sub-threshold terms dropped (they lie in the span of the rows
        // already imposed at this vertex).
        if rv.vertex + 1 < realization.vertices.len() {
            let w = cluster.weights[rv.vertex];
            let (a, b) = rv.model_exponents;
            let chart = if a < b {
                BlowupChart::FollowU
            } else {
                BlowupChart::FollowV
            };
            jets = jets
                .iter()
                .map(|jet| {
                    let mut out = Poly2::zero();
                    for (&(i, j), coef) in jet.terms() {
                        let shifted = i as i64 + j as i64 - w;
                        if shifted < 0 {
                            continue;
                        }
                        match chart {
                            BlowupChart::FollowU => out.add_term(i, shifted as u32, coef.clone()),
                            BlowupChart::FollowV => out.add_term(shifted as u32, j, coef.clone()),
                        }
                    }
                    out
                })
                .collect();
        }
    }
    Ok(rows)
}

/// Stacks the condition rows of realized clusters over all points.
pub fn conditions_matrix(points: &[(SingularPoint, Cluster)], d: u64) -> Result<ConditionMatrix> {
    let mut rows = Vec::new();
    let mut deg_z = 0u64;
    for (point, cluster) in points {
        rows.extend(point_condition_rows(point, cluster, d)?);
        deg_z += cluster
            .weights
            .iter()
            .filter(|&&w| w > 0)
            .map(|&w| (w * (w + 1) / 2) as u64)
            .sum::<u64>();
    }
    Ok(ConditionMatrix {
        rows,
        degree: d,
        deg_z,
    })
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_of(rows: &[Vec<Rat>]) -> usize {
    let mut mat: Vec<Vec<Rat>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| primitive_row(r))
        .collect();
    if mat.is_empty() {
        return 0;
    }
    let ncols = mat[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let pivot_val = mat[rank][col].clone();
        for r in rank + 1..mat.len() {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &pivot_val;
            for c in col..ncols {
                let sub = &mat[rank][c] * &factor;
                mat[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// Scales a row to coprime integers (keeps elimination numbers small).
fn primitive_row(row: &[Rat]) -> Vec<Rat> {
    use num_bigint::BigInt;
    use num_traits::One;
    let mut den = BigInt::one();
    for c in row {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = num_integer::Integer::gcd(&content, v);
    }
    if content.is_zero() {
        return row.to_vec();
    }
    ints.into_iter()
        .map(|v| Rat::from_integer(v / &content))
        .collect()
}

/// Basis of the right null space of the matrix (as coefficient vectors of
/// length `ncols`).
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut mat: Vec<Vec<Rat>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| primitive_row(r))
        .collect();
    // Reduced row echelon form.
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let pv = mat[rank][col].clone();
        for c in col..ncols {
            mat[rank][c] = &mat[rank][c] / &pv;
        }
        for r in 0..mat.len() {
            if r != rank && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..ncols {
                    let sub = &mat[rank][c] * &factor;
                    mat[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut vec = vec![Rat::zero(); ncols];
        vec[free] = rat_int(1);
        for (row_idx, &pcol) in pivots.iter().enumerate() {
            vec[pcol] = -mat[row_idx][free].clone();
        }
        basis.push(vec);
    }
    basis
}

/// h^0 and h^1 of the ideal sheaf of the realized clusters twisted by
/// O(d).  Valid for d >= -2 (h^2 of the twist vanishes there); for
/// negative d no sections exist and h^1 is the full colength.
pub fn cohomology(points: &[(SingularPoint, Cluster)], d: i64) -> Result<(u64, u64)> {
    if d < -2 {
        return Err(Error::DegreeTooNegative(d));
    }
    let deg_z: u64 = points
        .iter()
        .map(|(_, cl)| {
            cl.weights
                .iter()
                .filter(|&&w| w > 0)
                .map(|&w| (w * (w + 1) / 2) as u64)
                .sum::<u64>()
        })
        .sum();
    if d < 0 {
        return Ok((0, deg_z));
    }
    let matrix = conditions_matrix(points, d as u64)?;
    let chi = ((d + 1) * (d + 2) / 2) as u64;
    let rank = matrix.rank() as u64;
    let h0 = chi - rank;
    let h1 = h0 + deg_z - chi;
    Ok((h0, h1))
}

/// All degree-d forms through the given points (basis of the linear
/// system), via an exact null-space computation.
pub fn forms_through_points(d: u64, points: &[ProjectivePoint]) -> Vec<Poly3> {
    let monos = monomials_of_degree(d as u32);
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|pt| {
            monos
                .iter()
                .map(|&e| Poly3::monomial(e).eval(pt.coords()))
                .collect()
        })
        .collect();
    nullspace(&rows, monos.len())
        .into_iter()
        .map(|coeffs| {
            Poly3::from_terms(
                monos
                    .iter()
                    .cloned()
                    .zip(coeffs)
                    .filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect()
}

/// All rational intersection points of two curves, requiring every
/// intersection to be rational and transverse; the total count must reach
/// deg f * deg g.
fn transverse_intersections(f: &Poly3, g: &Poly3) -> Result<Vec<ProjectivePoint>> {
    let resultant = resultant_x2(f, g)?;
    let df = f.homogeneous_degree().unwrap() as usize;
    let dg = g.homogeneous_degree().unwrap() as usize;
    let expected = df * dg;
    if resultant.is_zero() {
        return Err(Error::BadIntersection(
            "the curves share a component".into(),
        ));
    }
    if resultant.degree() != Some(expected) {
        return Err(Error::BadIntersection(
            "intersection points on the line x0 = 0; apply a coordinate change".into(),
        ));
    }
    let squarefree = resultant.squarefree_part();
    let (projections, rest) = rational_roots(&squarefree, ROOT_SEARCH_HEIGHT);
    if !rest.degree().map_or(true, |d| d == 0) {
        return Err(Error::BadIntersection(
            "not all intersection points are rational (or they exceed the search height)".into(),
        ));
    }
    let mut points = Vec::new();
    for t in &projections {
        // Fiber above the projection (1 : t : *).
        let fiber_f = specialize_x2(f, t);
        let fiber_g = specialize_x2(g, t);
        let common = fiber_f.gcd(&fiber_g);
        if common.degree().map_or(true, |d| d == 0) {
            return Err(Error::BadIntersection(
                "resultant root without a rational fiber".into(),
            ));
        }
        let (roots, rest) = rational_roots(&common, ROOT_SEARCH_HEIGHT);
        if !rest.degree().map_or(true, |d| d == 0) {
            return Err(Error::BadIntersection(
                "intersection fiber has a non-rational point".into(),
            ));
        }
        for z in roots {
            let pt = ProjectivePoint::new(rat_int(1), t.clone(), z)?;
            if !points.contains(&pt) {
                points.push(pt);
            }
        }
    }
    // Transversality at every point, via the 2x2 minors of the Jacobian.
    for pt in &points {
        if !jacobian_transverse(f, g, pt) {
            return Err(Error::BadIntersection(format!(
                "non-transverse intersection at ({} : {} : {})",
                pt.coords()[0],
                pt.coords()[1],
                pt.coords()[2]
            )));
        }
    }
    if points.len() != expected {
        return Err(Error::BadIntersection(format!(
            "found {} transverse rational intersections, expected {expected}",
            points.len()
        )));
    }
    Ok(points)
}

fn specialize_x2(f: &Poly3, t: &Rat) -> UniPoly {
    let d = f.homogeneous_degree().unwrap() as usize;
    let mut coeffs = vec![Rat::zero(); d + 1];
    for (&(_, b, c), coef) in f.terms() {
        let mut v = coef.clone();
        for _ in 0..b {
            v *= t;
        }
        coeffs[c as usize] += v;
    }
    UniPoly::new(coeffs)
}

fn jacobian_transverse(f: &Poly3, g: &Poly3, pt: &ProjectivePoint) -> bool {
    let grad_f: Vec<Rat> = (0..3).map(|i| f.derivative(i).eval(pt.coords())).collect();
    let grad_g: Vec<Rat> = (0..3).map(|i| g.derivative(i).eval(pt.coords())).collect();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let minor = &grad_f[i] * &grad_g[j] - &grad_f[j] * &grad_g[i];
        if !minor.is_zero() {
            return true;
        }
    }
    false
}

/// The branch curve `f_p^q + f_q^p` of two curves of coprime degrees p < q
/// meeting transversally in pq rational points: its singular points are
/// exactly those intersections, each of local type (p, q, 1) in the frame
/// (u, v) = (local f_q, local f_p).
pub fn oka_curve(p: u64, q: u64, f_p: &Poly3, f_q: &Poly3) -> Result<BranchCurve> {
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    if p >= q {
        return Err(Error::InvalidParameter("need p < q".into()));
    }
    if f_p.homogeneous_degree() != Some(p as u32) {
        return Err(Error::InvalidParameter(format!(
            "first form must be homogeneous of degree {p}"
        )));
    }
    if f_q.homogeneous_degree() != Some(q as u32) {
        return Err(Error::InvalidParameter(format!(
            "second form must be homogeneous of degree {q}"
        )));
    }
    let intersections = transverse_intersections(f_p, f_q)?;
    let ty = SingularityType::new(p, q, 1)?;
    let u_aff = f_q.dehomogenize_x0();
    let v_aff = f_p.dehomogenize_x0();
    let mut points = Vec::new();
    for location in intersections {
        let frame = LocalFrame::new(u_aff.clone(), v_aff.clone());
        points.push(SingularPoint::new(location, ty, frame)?);
    }
    let polynomial = f_p.pow(q as u32).add(&f_q.pow(p as u32));
    BranchCurve::new(p * q, points, Some(polynomial))
}

/// A line arrangement curve with its ordinary multiple points.
#[derive(Clone, Debug)]
pub struct LineArrangement {
    pub curve: BranchCurve,
    /// Number of triple points on each line.
    pub triple_counts: Vec<u64>,
    /// All points where at least three lines concur, with multiplicities.
    pub multiple_points: Vec<(ProjectivePoint, u64)>,
}

/// Builds the union of the given lines (coefficient triples of
/// a x0 + b x1 + c x2), listing every ordinary m-fold point with m >= 3 as
/// a singular point of type (1, 1, m).  Nodes carry no subunitary jumping
/// numbers and are dropped.  Multiple points must be finite.
pub fn line_arrangement(lines: &[[Rat; 3]]) -> Result<LineArrangement> {
    if lines.len() < 2 {
        return Err(Error::InvalidParameter("need at least two lines".into()));
    }
    for l in lines {
        if l.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidParameter("zero line form".into()));
        }
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if cross(&lines[i], &lines[j]).iter().all(|c| c.is_zero()) {
                return Err(Error::RepeatedLines);
            }
        }
    }
    // Collect distinct intersection points.
    let mut points: Vec<ProjectivePoint> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let c = cross(&lines[i], &lines[j]);
            let pt = ProjectivePoint::new(c[0].clone(), c[1].clone(), c[2].clone())?;
            if !points.contains(&pt) {
                points.push(pt);
            }
        }
    }
    let vanishes = |line: &[Rat; 3], pt: &ProjectivePoint| -> bool {
        let c = pt.coords();
        (&line[0] * &c[0] + &line[1] * &c[1] + &line[2] * &c[2]).is_zero()
    };
    let mut singular = Vec::new();
    let mut multiple_points = Vec::new();
    for pt in &points {
        let through: Vec<usize> = (0..lines.len())
            .filter(|&i| vanishes(&lines[i], pt))
            .collect();
        let m = through.len() as u64;
        if m < 3 {
            continue;
        }
        if pt.coords()[0].is_zero() {
            return Err(Error::PointAtInfinity(format!(
                "ordinary {m}-fold point ({} : {} : {})",
                pt.coords()[0],
                pt.coords()[1],
                pt.coords()[2]
            )));
        }
        multiple_points.push((pt.clone(), m));
        let ty = SingularityType::new(1, 1, m)?;
        let affine_form = |i: usize| -> Poly2 {
            let mut f = Poly2::constant(lines[i][0].clone());
            f.add_term(1, 0, lines[i][1].clone());
            f.add_term(0, 1, lines[i][2].clone());
            f
        };
        let frame = LocalFrame::new(affine_form(through[0]), affine_form(through[1]));
        singular.push(SingularPoint::new(pt.clone(), ty, frame)?);
    }
    let mut polynomial = Poly3::monomial((0, 0, 0));
    for l in lines {
        let form = Poly3::from_terms([
            ((1, 0, 0), l[0].clone()),
            ((0, 1, 0), l[1].clone()),
            ((0, 0, 1), l[2].clone()),
        ]);
        polynomial = polynomial.mul(&form);
    }
    let triple_counts: Vec<u64> = (0..lines.len())
        .map(|i| {
            multiple_points
                .iter()
                .filter(|(pt, m)| *m == 3 && vanishes(&lines[i], pt))
                .count() as u64
        })
        .collect();
    let curve = BranchCurve::new(lines.len() as u64, singular, Some(polynomial))?;
    Ok(LineArrangement {
        curve,
        triple_counts,
        multiple_points,
    })
}

fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Whether the line meets the curve in deg B distinct points, none of them
/// a listed singular point.  Returns None when the curve carries no
/// defining polynomial.
pub fn transversality_check(curve: &BranchCurve, line: &[Rat; 3]) -> Option<bool> {
    let poly = curve.polynomial.as_ref()?;
    // Two distinct points spanning the line.
    let (p, q) = span_of_line(line);
    let coeffs = poly.restrict_to_line(&p, &q);
    let restriction = UniPoly::new(coeffs);
    if restriction.is_zero() {
        return Some(false);
    }
    let b = curve.degree as usize;
    let infinity_mult = b - restriction.degree().unwrap();
    if infinity_mult > 1 || !restriction.is_squarefree() {
        return Some(false);
    }
    for pt in &curve.points {
        let c = pt.location.coords();
        if (&line[0] * &c[0] + &line[1] * &c[1] + &line[2] * &c[2]).is_zero() {
            return Some(false);
        }
    }
    Some(true)
}

fn span_of_line(line: &[Rat; 3]) -> ([Rat; 3], [Rat; 3]) {
    let zero = Rat::zero;
    let one = || rat_int(1);
    if !line[0].is_zero() {
        (
            [-&line[1] / &line[0], one(), zero()],
            [-&line[2] / &line[0], zero(), one()],
        )
    } else if !line[1].is_zero() {
        (
            [one(), -&line[0] / &line[1], zero()],
            [zero(), -&line[2] / &line[1], one()],
        )
    } else {
        (
            [one(), zero(), zero()],
            [zero(), one(), zero()],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriques::minimal_cluster;
    use crate::rat;

    fn pt(c0: i64, c1: i64, c2: i64) -> ProjectivePoint {
        ProjectivePoint::from_ints(c0, c1, c2).unwrap()
    }

    fn standard_frame() -> LocalFrame {
        LocalFrame::new(Poly2::var(0), Poly2::var(1))
    }

    fn reduced_point_at(c1: i64, c2: i64) -> (SingularPoint, Cluster) {
        // A simple base point: type (1,1,1) with weight 1.
        let ty = SingularityType::new(1, 1, 1).unwrap();
        let x = rat_int(c1);
        let y = rat_int(c2);
        let u = Poly2::var(0).sub(&Poly2::constant(x));
        let v = Poly2::var(1).sub(&Poly2::constant(y));
        let point =
            SingularPoint::new(pt(1, c1, c2), ty, LocalFrame::new(u, v)).unwrap();
        let cluster = Cluster::new(crate::enriques::build_tpq_tree(1, 1).unwrap(), vec![1]).unwrap();
        (point, cluster)
    }

    #[test]
    fn normalized_projective_points() {
        let a = ProjectivePoint::new(rat_int(2), rat_int(4), rat_int(6)).unwrap();
        let b = ProjectivePoint::new(rat_int(1), rat_int(2), rat_int(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coords()[2], rat_int(1));
        let inf = ProjectivePoint::from_ints(0, 1, 2).unwrap();
        assert!(inf.affine().is_err());
    }

    #[test]
    fn collinear_points_rank_two() {
        let pts: Vec<_> = [(0, 0), (1, 1), (2, 2)]
            .iter()
            .map(|&(a, b)| reduced_point_at(a, b))
            .collect();
        let m = conditions_matrix(&pts, 1).unwrap();
        assert_eq!(m.deg_z, 3);
        assert_eq!(m.rank(), 2);
        let (h0, h1) = cohomology(&pts, 1).unwrap();
        assert_eq!((h0, h1), (1, 1));
    }

    #[test]
    fn six_points_on_a_conic() {
        // (t : 1 : t^2) lies on x0^2 = x1 x2.
        let pts: Vec<_> = [1i64, -1, 2, -2, 3, -3]
            .iter()
            .map(|&t| {
                let ty = SingularityType::new(1, 1, 1).unwrap();
                let x = rat(1, t);
                let y = rat_int(t);
                let u = Poly2::var(0).sub(&Poly2::constant(x));
                let v = Poly2::var(1).sub(&Poly2::constant(y));
                let location = ProjectivePoint::new(rat_int(t), rat_int(1), rat_int(t * t)).unwrap();
                let point = SingularPoint::new(location, ty, LocalFrame::new(u, v)).unwrap();
                let cluster =
                    Cluster::new(crate::enriques::build_tpq_tree(1, 1).unwrap(), vec![1]).unwrap();
                (point, cluster)
            })
            .collect();
        let m = conditions_matrix(&pts, 2).unwrap();
        assert_eq!(m.rank(), 5);
        let (h0, h1) = cohomology(&pts, 2).unwrap();
        assert_eq!((h0, h1), (1, 1));
    }

    #[test]
    fn empty_input_has_no_conditions() {
        let m = conditions_matrix(&[], 3).unwrap();
        assert_eq!(m.rows.len(), 0);
        assert_eq!(m.deg_z, 0);
        let (h0, h1) = cohomology(&[], 3).unwrap();
        assert_eq!((h0, h1), (10, 0));
        assert!(cohomology(&[], -3).is_err());
    }

    #[test]
    fn realize_a5_free_chain() {
        // Type (1,3,2): the model u^2 - v^6 follows the u = 0 direction.
        let ty = SingularityType::new(1, 3, 2).unwrap();
        let point = SingularPoint::new(pt(1, 0, 0), ty, standard_frame()).unwrap();
        let cluster = minimal_cluster(1, 3, 2, 0).unwrap();
        assert_eq!(cluster.weights, vec![1, 1, 0]);
        let real = realize_cluster(&point, &cluster).unwrap();
        assert_eq!(real.vertices.len(), 3);
        assert_eq!(real.vertices[0].model_exponents, (2, 6));
        assert_eq!(real.vertices[1].chart, Some(BlowupChart::FollowU));
        assert_eq!(real.vertices[1].model_exponents, (2, 4));
        assert!(!real.vertices[1].satellite);
        assert!(!real.vertices[2].satellite);
    }

    #[test]
    fn realize_matches_tree_structure() {
        // The geometric chain reproduces the combinatorial tree for a
        // spread of (p, q): satellites, proximities, multiplicities.
        for (p, q) in [(2u64, 3u64), (2, 5), (3, 4), (3, 5), (5, 8), (4, 7), (5, 7)] {
            let ty = SingularityType::new(p, q, 1).unwrap();
            let point = SingularPoint::new(pt(1, 0, 0), ty, standard_frame()).unwrap();
            let tree = build_tpq_tree(p, q).unwrap();
            let cluster = Cluster::empty(tree.clone());
            let real = realize_cluster(&point, &cluster).unwrap();
            let data = crate::enriques::euclid_data(p, q).unwrap();
            let mults = data.multiplicity_sequence();
            for rv in &real.vertices {
                let (a, b) = rv.model_exponents;
                assert_eq!(a.min(b) as i64, mults[rv.vertex], "({p},{q})");
            }
        }
    }

    #[test]
    fn curvilinear_pair_conditions() {
        // Z^[2] at an A_5 point with frame (u, v): f = f_v = 0 at the point.
        let ty = SingularityType::new(1, 3, 2).unwrap();
        let point = SingularPoint::new(pt(1, 2, 3), ty, {
            let u = Poly2::var(0).sub(&Poly2::constant(rat_int(2)));
            let v = Poly2::var(1).sub(&Poly2::constant(rat_int(3)));
            LocalFrame::new(u, v)
        })
        .unwrap();
        let cluster = minimal_cluster(1, 3, 2, 0).unwrap();
        let rows = point_condition_rows(&point, &cluster, 2).unwrap();
        assert_eq!(rows.len(), 2);
        // Compare against evaluation and the v-directional derivative,
        // which span the same row space.
        let monos = monomials_of_degree(2);
        let coords = [rat_int(1), rat_int(2), rat_int(3)];
        let eval_row: Vec<Rat> = monos
            .iter()
            .map(|&e| Poly3::monomial(e).eval(&coords))
            .collect();
        let deriv_row: Vec<Rat> = monos
            .iter()
            .map(|&e| {
                // d/dy of the dehomogenized monomial at (2, 3)
                Poly3::monomial(e)
                    .dehomogenize_x0()
                    .derivative(1)
                    .eval(&rat_int(2), &rat_int(3))
            })
            .collect();
        let mut stacked = rows.clone();
        stacked.push(eval_row);
        stacked.push(deriv_row);
        assert_eq!(rank_of(&rows), 2);
        assert_eq!(rank_of(&stacked), 2);
    }

    #[test]
    fn unloading_preserves_row_space() {
        // Weights violating proximity impose the same conditions as their
        // unloaded form once the degree is large enough.
        let ty = SingularityType::new(2, 3, 1).unwrap();
        let point = SingularPoint::new(pt(1, 1, -1), ty, {
            let u = Poly2::var(0).sub(&Poly2::constant(rat_int(1)));
            let v = Poly2::var(1).add(&Poly2::constant(rat_int(1)));
            LocalFrame::new(u, v)
        })
        .unwrap();
        let tree = build_tpq_tree(2, 3).unwrap();
        let raw = Cluster::new(tree.clone(), vec![0, 0, 1]).unwrap();
        let unloaded = raw.unload();
        let d = 3;
        let rows_raw = point_condition_rows(&point, &raw, d).unwrap();
        let rows_unl = point_condition_rows(&point, &unloaded, d).unwrap();
        let r1 = rank_of(&rows_raw);
        let r2 = rank_of(&rows_unl);
        let mut stacked = rows_raw.clone();
        stacked.extend(rows_unl.clone());
        assert_eq!(r1, r2);
        assert_eq!(rank_of(&stacked), r1);
    }

    /// The circle of radius 5: plenty of rational points, none at infinity,
    /// and the projection center (0:0:1) is off the curve.
    fn circle() -> Poly3 {
        Poly3::from_terms([
            ((0, 2, 0), rat_int(1)),
            ((0, 0, 2), rat_int(1)),
            ((2, 0, 0), rat_int(-25)),
        ])
    }

    #[test]
    fn oka_sextic_with_six_cusps() {
        let conic = circle();
        let pts: Vec<ProjectivePoint> = [(0, 5), (3, 4), (4, 3), (5, 0), (-3, 4), (-4, 3)]
            .iter()
            .map(|&(a, b)| ProjectivePoint::from_ints(1, a, b).unwrap())
            .collect();
        let cubics = forms_through_points(3, &pts);
        assert_eq!(cubics.len(), 4);
        let curve = cubics
            .iter()
            .find_map(|f| oka_curve(2, 3, &conic, f).ok())
            .expect("a cubic giving six rational transverse intersections");
        assert_eq!(curve.degree, 6);
        assert_eq!(curve.points.len(), 6);
        for p in &curve.points {
            assert_eq!((p.ty.p(), p.ty.q(), p.ty.d()), (2, 3, 1));
        }
    }

    #[test]
    fn oka_rejects_tangent_configuration() {
        // Tangent line to the circle at (1 : 3 : 4) times two chords: the
        // sextic data has a non-transverse intersection.
        let conic = circle();
        let tangent = Poly3::from_terms([
            ((1, 0, 0), rat_int(-25)),
            ((0, 1, 0), rat_int(3)),
            ((0, 0, 1), rat_int(4)),
        ]);
        let chord1 = Poly3::from_terms([
            ((1, 0, 0), rat_int(7)),
            ((0, 1, 0), rat_int(1)),
            ((0, 0, 1), rat_int(-1)),
        ]);
        let chord2 = Poly3::from_terms([
            ((1, 0, 0), rat_int(-5)),
            ((0, 1, 0), rat_int(1)),
            ((0, 0, 1), rat_int(1)),
        ]);
        let cubic = tangent.mul(&chord1).mul(&chord2);
        assert!(oka_curve(2, 3, &conic, &cubic).is_err());
    }

    #[test]
    fn line_arrangement_examples() {
        let one = rat_int(1);
        let zero = Rat::zero();
        // Three concurrent lines through (1 : 0 : 0): x1, x2, x1 - x2.
        let lines = [
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [zero.clone(), one.clone(), -one.clone()],
        ];
        let arr = line_arrangement(&lines).unwrap();
        assert_eq!(arr.curve.points.len(), 1);
        assert_eq!(arr.curve.points[0].ty, SingularityType::new(1, 1, 3).unwrap());
        assert_eq!(arr.triple_counts, vec![1, 1, 1]);

        // Three general lines: only nodes.
        let lines = [
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [one.clone(), one.clone(), one.clone()],
        ];
        let arr = line_arrangement(&lines).unwrap();
        assert!(arr.curve.points.is_empty());
        assert_eq!(arr.triple_counts, vec![0, 0, 0]);

        // Repeated line rejected.
        let lines = [
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), rat_int(2), zero.clone()],
        ];
        assert!(matches!(
            line_arrangement(&lines),
            Err(Error::RepeatedLines)
        ));
    }

    #[test]
    fn transversality_examples() {
        let conic = Poly3::from_terms([((2, 0, 0), rat_int(1)), ((0, 1, 1), rat_int(-1))]);
        let curve = BranchCurve::new(2, vec![], Some(conic)).unwrap();
        // Generic line x1 - x2 meets it transversally.
        let generic = [Rat::zero(), rat_int(1), rat_int(-1)];
        assert_eq!(transversality_check(&curve, &generic), Some(true));
        // Tangent line at (1 : 1 : 1): 2 x0 - x1 - x2.
        let tangent = [rat_int(2), rat_int(-1), rat_int(-1)];
        assert_eq!(transversality_check(&curve, &tangent), Some(false));
        // No polynomial: indeterminate.
        let bare = BranchCurve::new(2, vec![], None).unwrap();
        assert_eq!(transversality_check(&bare, &generic), None);
    }

    #[test]
    fn jet_check_accepts_and_rejects() {
        // u^2 - v^6 at (1 : 0 : 0) as an A_5 (type (1,3,2)) in the
        // standard frame, homogenized to degree 6.
        let good = Poly3::from_terms([((4, 2, 0), rat_int(1)), ((0, 0, 6), rat_int(-1))]);
        let ty = SingularityType::new(1, 3, 2).unwrap();
        let point = SingularPoint::new(pt(1, 0, 0), ty, standard_frame()).unwrap();
        assert!(check_declared_type(&good, &point).is_ok());

        // A cusp is not an A_5.
        let cusp = Poly3::from_terms([((4, 2, 0), rat_int(1)), ((3, 0, 3), rat_int(-1))]);
        assert!(check_declared_type(&cusp, &point).is_err());

        // The cusp with its correct type passes.
        let ty_cusp = SingularityType::new(2, 3, 1).unwrap();
        let point_cusp = SingularPoint::new(pt(1, 0, 0), ty_cusp, standard_frame()).unwrap();
        assert!(check_declared_type(&cusp, &point_cusp).is_ok());

        // Line times tangent cubic germ: u * (u + v^3), also a legal A_5.
        let a5_product = Poly3::from_terms([((4, 2, 0), rat_int(1)), ((2, 1, 3), rat_int(1))]);
        assert!(check_declared_type(&a5_product, &point).is_ok());

        // Non-reduced: u^2 * unit has a repeated face root.
        let double_line = Poly3::from_terms([((4, 2, 0), rat_int(1))]);
        assert!(check_declared_type(&double_line, &point).is_err());
    }

    #[test]
    fn rank_equals_colength_in_general_position() {
        // Cusp clusters at three general points, large degree.
        let ty = SingularityType::new(2, 3, 1).unwrap();
        let positions = [(0i64, 0i64), (1, 2), (-2, 5)];
        let cluster = minimal_cluster(2, 3, 1, 1).unwrap(); // colength 4
        let pairs: Vec<_> = positions
            .iter()
            .map(|&(a, b)| {
                let u = Poly2::var(0).sub(&Poly2::constant(rat_int(a)));
                let v = Poly2::var(1).sub(&Poly2::constant(rat_int(b)));
                let point =
                    SingularPoint::new(pt(1, a, b), ty, LocalFrame::new(u, v)).unwrap();
                (point, cluster.clone())
            })
            .collect();
        let m = conditions_matrix(&pairs, 7).unwrap();
        assert_eq!(m.deg_z, 12);
        assert_eq!(m.rank(), 12);
        let (h0, h1) = cohomology(&pairs, 7).unwrap();
        assert_eq!(h0, 36 - 12);
        assert_eq!(h1, 0);
    }
}
