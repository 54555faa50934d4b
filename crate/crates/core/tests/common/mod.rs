//! Shared constructions for the integration and acceptance tests: explicit
//! rational curves with prescribed singularities.

#![allow(dead_code)]

use multiplane::linsys::forms_through_points;
use multiplane::poly::{Poly2, Poly3};
use multiplane::{
    line_arrangement, oka_curve, rat, rat_int, BranchCurve, LineArrangement, LocalFrame,
    ProjectivePoint, Rat, SingularPoint, SingularityType,
};

/// The circle x1^2 + x2^2 = 25 x0^2: full of small rational points, no
/// rational points at infinity, and off the projection center (0:0:1).
pub fn circle() -> Poly3 {
    Poly3::from_terms([
        ((0, 2, 0), rat_int(1)),
        ((0, 0, 2), rat_int(1)),
        ((2, 0, 0), rat_int(-25)),
    ])
}

/// The rational circle point of parameter t = num/den:
/// (den^2 + num^2 : 5 (den^2 - num^2) : 10 num den).
pub fn circle_point(num: i64, den: i64) -> ProjectivePoint {
    ProjectivePoint::new(
        rat_int(den * den + num * num),
        rat_int(5 * (den * den - num * num)),
        rat_int(10 * num * den),
    )
    .unwrap()
}

/// `count` distinct parameters (num, den) with small height.
pub fn circle_parameters(count: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    'outer: for den in 1i64..=6 {
        for num_abs in 0i64..=8 {
            for num in [num_abs, -num_abs] {
                if num == 0 && den > 1 {
                    continue;
                }
                if num == 0 && num_abs > 0 {
                    continue;
                }
                if num_integer::Integer::gcd(&num.abs(), &den) != 1 && !(num == 0 && den == 1) {
                    continue;
                }
                if out.contains(&(num, den)) {
                    continue;
                }
                out.push((num, den));
                if out.len() == count {
                    break 'outer;
                }
            }
        }
    }
    assert_eq!(out.len(), count, "not enough small circle parameters");
    out
}

/// Branch curve circle^q + F^2 of degree 2q with 2q singular points of
/// type (2, q, 1) on the circle, F a degree-q form through 2q rational
/// circle points.  Deterministically picks a form that satisfies every
/// transversality and rationality requirement.
pub fn oka_circle_curve(q: u64) -> BranchCurve {
    assert!(q % 2 == 1, "q must be odd and coprime to 2");
    let pts: Vec<ProjectivePoint> = circle_parameters(2 * q as usize)
        .into_iter()
        .map(|(num, den)| circle_point(num, den))
        .collect();
    let basis = forms_through_points(q, &pts);
    pick_oka_member(2, q, &circle(), &basis)
}

/// Tries small deterministic combinations of the basis members until one
/// passes all checks of the `f_p^q + f_q^p` construction.
pub fn pick_oka_member(p: u64, q: u64, f_p: &Poly3, basis: &[Poly3]) -> BranchCurve {
    assert!(!basis.is_empty(), "empty linear system");
    // Single members first, then pseudo-random small combinations.
    for member in basis {
        if let Ok(curve) = oka_curve(p, q, f_p, member) {
            return curve;
        }
    }
    let mut state = 0x9e3779b97f4a7c15u64;
    for _ in 0..200 {
        let mut candidate = Poly3::zero();
        for member in basis {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let c = ((state >> 33) % 7) as i64 - 3;
            candidate = candidate.add(&member.scale(&rat_int(c)));
        }
        if candidate.homogeneous_degree() != Some(q as u32) {
            continue;
        }
        if let Ok(curve) = oka_curve(p, q, f_p, &candidate) {
            return curve;
        }
    }
    panic!("no member of the linear system yields a transverse configuration");
}

/// The elliptic cubic y^2 + y = x^3 - x (rank one) in coordinates moved so
/// that the projection center (0:0:1) avoids it, together with twelve of
/// its rational points.
pub fn rank_one_cubic_with_points() -> (Poly3, Vec<ProjectivePoint>) {
    // Affine rational points of y^2 + y = x^3 - x.
    let affine: [(Rat, Rat); 12] = [
        (rat_int(0), rat_int(0)),
        (rat_int(0), rat_int(-1)),
        (rat_int(1), rat_int(0)),
        (rat_int(1), rat_int(-1)),
        (rat_int(-1), rat_int(0)),
        (rat_int(-1), rat_int(-1)),
        (rat_int(2), rat_int(2)),
        (rat_int(2), rat_int(-3)),
        (rat_int(6), rat_int(14)),
        (rat_int(6), rat_int(-15)),
        (rat(1, 4), rat(-3, 8)),
        (rat(1, 4), rat(-5, 8)),
    ];
    // Homogeneous form: x1^3 - x1 x0^2 - x2^2 x0 - x2 x0^2 = 0.
    let cubic = Poly3::from_terms([
        ((0, 3, 0), rat_int(1)),
        ((2, 1, 0), rat_int(-1)),
        ((1, 0, 2), rat_int(-1)),
        ((2, 0, 1), rat_int(-1)),
    ]);
    // New coordinates y0 = x0 + 2 x2 keep all twelve points finite and
    // take (0:0:1) off the curve; substitute x0 = y0 - 2 y2.
    let subs = [
        [rat_int(1), rat_int(0), rat_int(-2)],
        [rat_int(0), rat_int(1), rat_int(0)],
        [rat_int(0), rat_int(0), rat_int(1)],
    ];
    let moved = cubic.linear_substitution(&subs);
    assert!(!moved
        .eval(&[rat_int(0), rat_int(0), rat_int(1)])
        .is_zero_rat());
    let points = affine
        .iter()
        .map(|(x, y)| {
            ProjectivePoint::new(rat_int(1) + rat_int(2) * y, x.clone(), y.clone()).unwrap()
        })
        .collect();
    (moved, points)
}

/// Oka-style branch curve of degrees (3, 4): the rank-one cubic and a
/// quartic through twelve of its rational points, meeting transversally.
pub fn oka_three_four_curve() -> BranchCurve {
    let (cubic, points) = rank_one_cubic_with_points();
    for p in &points {
        assert!(cubic.eval(p.coords()).is_zero_rat());
    }
    let basis = forms_through_points(4, &points);
    assert_eq!(basis.len(), 3);
    pick_oka_member(3, 4, &cubic, &basis)
}

/// The Fermat cubic with its three rational (collinear) inflexions and
/// inflexional tangents, in coordinates keeping the three points finite:
/// a degree-6 branch curve with three A_5 points.
pub fn artal_bartolo_curve() -> BranchCurve {
    // x0^3 + x1^3 + x2^3 with x0 = y0 - 2 y1 - 3 y2.
    let subs = [
        [rat_int(1), rat_int(-2), rat_int(-3)],
        [rat_int(0), rat_int(1), rat_int(0)],
        [rat_int(0), rat_int(0), rat_int(1)],
    ];
    let cubic = Poly3::from_terms([
        ((3, 0, 0), rat_int(1)),
        ((0, 3, 0), rat_int(1)),
        ((0, 0, 3), rat_int(1)),
    ])
    .linear_substitution(&subs);
    // Inflexional tangents x0 + x1, x0 + x2, x1 + x2 in the new frame.
    let tangents = [
        [rat_int(1), rat_int(-1), rat_int(-3)],
        [rat_int(1), rat_int(-2), rat_int(-2)],
        [rat_int(0), rat_int(1), rat_int(1)],
    ];
    // Transformed inflexion points.
    let locations = [
        ProjectivePoint::from_ints(-1, -1, 0).unwrap(),
        ProjectivePoint::from_ints(-2, 0, -1).unwrap(),
        ProjectivePoint::from_ints(-1, 1, -1).unwrap(),
    ];
    let mut polynomial = cubic;
    for t in &tangents {
        polynomial = polynomial.mul(&Poly3::from_terms([
            ((1, 0, 0), t[0].clone()),
            ((0, 1, 0), t[1].clone()),
            ((0, 0, 1), t[2].clone()),
        ]));
    }
    let ty = SingularityType::new(1, 3, 2).unwrap();
    let points = locations
        .iter()
        .zip(&tangents)
        .map(|(loc, t)| {
            let (px, py) = loc.affine().unwrap();
            let mut u = Poly2::constant(t[0].clone());
            u.add_term(1, 0, t[1].clone());
            u.add_term(0, 1, t[2].clone());
            // A transverse companion line through the point.
            let v = if t[2].is_zero_rat() {
                Poly2::var(1).sub(&Poly2::constant(py))
            } else {
                Poly2::var(0).sub(&Poly2::constant(px))
            };
            SingularPoint::new(loc.clone(), ty, LocalFrame::new(u, v)).unwrap()
        })
        .collect();
    BranchCurve::new(6, points, Some(polynomial)).unwrap()
}

/// Three declared A_5 points in general position, without a defining
/// polynomial: the regular counterpart of the collinear configuration.
pub fn artal_bartolo_noncollinear_variant() -> BranchCurve {
    let ty = SingularityType::new(1, 3, 2).unwrap();
    let spots = [(0i64, 0i64), (1, 1), (2, -1)];
    let points = spots
        .iter()
        .map(|&(a, b)| {
            let u = Poly2::var(0).sub(&Poly2::constant(rat_int(a)));
            let v = Poly2::var(1).sub(&Poly2::constant(rat_int(b)));
            SingularPoint::new(
                ProjectivePoint::from_ints(1, a, b).unwrap(),
                ty,
                LocalFrame::new(u, v),
            )
            .unwrap()
        })
        .collect();
    BranchCurve::new(6, points, None).unwrap()
}

/// The nine-line arrangement with nine (s = 1) or ten (s = 2) triple
/// points, moved by y0 = x0 + x1 + 3 x2 so that every triple point is
/// finite.
pub fn nine_line_arrangement(s: i64) -> LineArrangement {
    assert!(s != -2 && s != 0, "degenerate parameter");
    let raw: Vec<[i64; 3]> = vec![
        // verticals x = -2, 0, 2
        [2, 1, 0],
        [0, 1, 0],
        [-2, 1, 0],
        // horizontals y = -2, 0, s
        [2, 0, 1],
        [0, 0, 1],
        [-s, 0, 1],
        // slants y = ((s+2)/2) x + s, y = (s/4) x + s/2, y = -x
        [-2 * s, -(s + 2), 2],
        [-2 * s, -s, 4],
        [0, 1, 1],
    ];
    // Substitute x0 = y0 - y1 - 3 y2 into a x0 + b x1 + c x2.
    let lines: Vec<[Rat; 3]> = raw
        .iter()
        .map(|&[a, b, c]| [rat_int(a), rat_int(b - a), rat_int(c - 3 * a)])
        .collect();
    line_arrangement(&lines).unwrap()
}

/// Rationals sometimes need a zero test without importing num_traits in
/// every test file.
pub trait RatExt {
    fn is_zero_rat(&self) -> bool;
}

impl RatExt for Rat {
    fn is_zero_rat(&self) -> bool {
        use num_traits::Zero;
        self.is_zero()
    }
}
