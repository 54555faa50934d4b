//! Exact polynomial arithmetic: bivariate jets, homogeneous ternary forms,
//! univariate utilities, formal inversion of plane coordinate changes, and
//! resultants by interpolation.
//!
//! Everything is over arbitrary-precision rationals.  Bivariate polynomials
//! double as truncated power series (jets): most operations take an
//! inclusive total-degree cap.

use crate::{rat_int, Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Polynomial in two affine variables, as a sparse exponent map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    /// The first or second coordinate function.
    pub fn var(i: usize) -> Self {
        let mut p = Poly2::zero();
        match i {
            0 => p.add_term(1, 0, rat_int(1)),
            1 => p.add_term(0, 1, rat_int(1)),
            _ => panic!("Poly2 has two variables"),
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow_rat(x, i) * pow_rat(y, j);
        }
        acc
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly2 {
        let mut out = Poly2::zero();
        if c.is_zero() {
            return out;
        }
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a * c);
        }
        out
    }

    /// Product truncated to total degree <= cap (None: no truncation).
    pub fn mul_trunc(&self, other: &Poly2, cap: Option<u32>) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if let Some(n) = cap {
                    if i + j > n {
                        continue;
                    }
                }
                out.add_term(i, j, c1 * c2);
            }
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        self.mul_trunc(other, None)
    }

    pub fn pow_trunc(&self, e: u32, cap: Option<u32>) -> Poly2 {
        let mut acc = Poly2::constant(rat_int(1));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, cap);
            }
        }
        acc
    }

    /// Drops all terms of total degree > cap.
    pub fn truncate(&self, cap: u32) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if i + j <= cap {
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    /// Substitutes (px, py) for the variables, truncated to total degree cap.
    pub fn compose_trunc(&self, px: &Poly2, py: &Poly2, cap: u32) -> Poly2 {
        // Horner-free: cache powers.
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut xpow = Vec::with_capacity(max_i as usize + 1);
        xpow.push(Poly2::constant(rat_int(1)));
        for _ in 0..max_i {
            let next = xpow.last().unwrap().mul_trunc(px, Some(cap));
            xpow.push(next);
        }
        let mut ypow = Vec::with_capacity(max_j as usize + 1);
        ypow.push(Poly2::constant(rat_int(1)));
        for _ in 0..max_j {
            let next = ypow.last().unwrap().mul_trunc(py, Some(cap));
            ypow.push(next);
        }
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let m = xpow[i as usize].mul_trunc(&ypow[j as usize], Some(cap));
            out = out.add(&m.scale(c));
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            match var {
                0 if i > 0 => out.add_term(i - 1, j, c * rat_int(i as i64)),
                1 if j > 0 => out.add_term(i, j - 1, c * rat_int(j as i64)),
                _ => {}
            }
        }
        out
    }

    /// Translation x -> x + a, y -> y + b (exact, no truncation).
    pub fn shift(&self, a: &Rat, b: &Rat) -> Poly2 {
        let px = Poly2::var(0).add(&Poly2::constant(a.clone()));
        let py = Poly2::var(1).add(&Poly2::constant(b.clone()));
        let cap = self.total_degree().unwrap_or(0);
        self.compose_trunc(&px, &py, cap)
    }
}

fn pow_rat(x: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Inverts a formal plane map F = (u, v) with F(0) = 0 and invertible
/// linear part, to the given jet order: returns G with F(G) = identity
/// modulo total degree > order.
pub fn invert_map_jet(u: &Poly2, v: &Poly2, order: u32) -> Result<(Poly2, Poly2)> {
    if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
        return Err(Error::DegenerateFrame(
            "frame polynomials must vanish at the base point".into(),
        ));
    }
    let a = u.coeff(1, 0);
    let b = u.coeff(0, 1);
    let c = v.coeff(1, 0);
    let d = v.coeff(0, 1);
    let det = &a * &d - &b * &c;
    if det.is_zero() {
        return Err(Error::DegenerateFrame(
            "linear parts of the frame are dependent".into(),
        ));
    }
    // J^{-1} applied to a pair of polynomials.
    let apply_jinv = |p: &Poly2, q: &Poly2| -> (Poly2, Poly2) {
        let g1 = p.scale(&(&d / &det)).add(&q.scale(&(-&b / &det)));
        let g2 = p.scale(&(-&c / &det)).add(&q.scale(&(&a / &det)));
        (g1, g2)
    };
    // Higher-order parts of the map.
    let lin_u = {
        let mut l = Poly2::zero();
        l.add_term(1, 0, a.clone());
        l.add_term(0, 1, b.clone());
        l
    };
    let lin_v = {
        let mut l = Poly2::zero();
        l.add_term(1, 0, c.clone());
        l.add_term(0, 1, d.clone());
        l
    };
    let hu = u.sub(&lin_u);
    let hv = v.sub(&lin_v);
    let x = Poly2::var(0);
    let y = Poly2::var(1);
    let (mut g1, mut g2) = apply_jinv(&x, &y);
    for _ in 0..order {
        let hu_g = hu.compose_trunc(&g1, &g2, order);
        let hv_g = hv.compose_trunc(&g1, &g2, order);
        let (p, q) = apply_jinv(&x.sub(&hu_g), &y.sub(&hv_g));
        if p == g1 && q == g2 {
            break;
        }
        g1 = p;
        g2 = q;
    }
    Ok((g1, g2))
}

/// Homogeneous (or general) polynomial in the projective coordinates
/// x0, x1, x2.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly3 {
    terms: BTreeMap<(u32, u32, u32), Rat>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn add_term(&mut self, e: (u32, u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32, u32), Rat)>) -> Self {
        let mut p = Poly3::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(e: (u32, u32, u32)) -> Self {
        Poly3::from_terms([(e, rat_int(1))])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: (u32, u32, u32)) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree when homogeneous; None when not homogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for &(a, b, c) in self.terms.keys() {
            let d = a + b + c;
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn add(&self, other: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly3 {
        let mut out = Poly3::zero();
        if c.is_zero() {
            return out;
        }
        for (&e, a) in &self.terms {
            out.add_term(e, a * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(a1, b1, c1), x) in &self.terms {
            for (&(a2, b2, c2), y) in &other.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly3 {
        let mut acc = Poly3::monomial((0, 0, 0));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b, c), coef) in &self.terms {
            acc += coef * pow_rat(&p[0], a) * pow_rat(&p[1], b) * pow_rat(&p[2], c);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly3 {
        let mut out = Poly3::zero();
        for (&(a, b, c), coef) in &self.terms {
            let e = [a, b, c][var];
            if e > 0 {
                let mut f = [a, b, c];
                f[var] = e - 1;
                out.add_term((f[0], f[1], f[2]), coef * rat_int(e as i64));
            }
        }
        out
    }

    /// Affine restriction x0 = 1, in the chart coordinates (x, y) =
    /// (x1/x0, x2/x0).
    pub fn dehomogenize_x0(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(_, b, c), coef) in &self.terms {
            out.add_term(b, c, coef.clone());
        }
        out
    }

    /// Substitutes x_i -> sum_j m[i][j] x_j (a linear change of coordinates).
    pub fn linear_substitution(&self, m: &[[Rat; 3]; 3]) -> Poly3 {
        let rows: Vec<Poly3> = (0..3)
            .map(|i| {
                Poly3::from_terms([
                    ((1, 0, 0), m[i][0].clone()),
                    ((0, 1, 0), m[i][1].clone()),
                    ((0, 0, 1), m[i][2].clone()),
                ])
            })
            .collect();
        let mut out = Poly3::zero();
        for (&(a, b, c), coef) in &self.terms {
            let term = rows[0].pow(a).mul(&rows[1].pow(b)).mul(&rows[2].pow(c));
            out = out.add(&term.scale(coef));
        }
        out
    }

    /// Restriction to the parametrized line s P + t Q, as a homogeneous
    /// binary form in (s, t) returned by its coefficient list in t
    /// (coefficient of s^(d-k) t^k at index k).
    pub fn restrict_to_line(&self, p: &[Rat; 3], q: &[Rat; 3]) -> Vec<Rat> {
        let d = self.homogeneous_degree().unwrap_or(0);
        let mut coeffs = vec![Rat::zero(); d as usize + 1];
        // Evaluate at d+1 interpolation nodes (s, t) = (1, k) and (0, 1).
        // Direct expansion is simpler: expand each coordinate as s p_i + t q_i.
        // Work in a univariate dense representation of binary forms.
        for (&(a, b, c), coef) in &self.terms {
            let fx = binom_powers(&p[0], &q[0], a);
            let fy = binom_powers(&p[1], &q[1], b);
            let fz = binom_powers(&p[2], &q[2], c);
            let xy = convolve(&fx, &fy);
            let xyz = convolve(&xy, &fz);
            for (k, v) in xyz.into_iter().enumerate() {
                coeffs[k] += coef * v;
            }
        }
        coeffs
    }
}

/// Coefficients of (p s + q t)^e as a list in t-degree.
fn binom_powers(p: &Rat, q: &Rat, e: u32) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); e as usize + 1];
    // binomial expansion
    let mut binom = Rat::one();
    for k in 0..=e {
        out[k as usize] = &binom * pow_rat(p, e - k) * pow_rat(q, k);
        binom = binom * rat_int((e - k) as i64) / rat_int((k + 1) as i64);
    }
    out
}

fn convolve(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// All exponent triples of total degree d, in descending lexicographic
/// order.  Fixes the coefficient ordering of degree-d forms.
pub fn monomials_of_degree(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push((a, b, d - a - b));
        }
    }
    out
}

/// Dense univariate polynomial over the rationals (index = degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat_int(k as i64 + 1))
                .collect(),
        )
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = rem[k].clone();
            if !c.is_zero() {
                let factor = &c / &lead;
                quot[k - dd] = factor.clone();
                for i in 0..=dd {
                    let v = &divisor.coeffs[i] * &factor;
                    rem[k - dd + i] -= v;
                }
            }
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.primitive();
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.coeffs.last().unwrap().clone();
            UniPoly::new(a.coeffs.iter().map(|c| c / &lead).collect())
        }
    }

    /// Scales to an integer polynomial with content 1 and positive lead.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = num_integer::Integer::gcd(&content, v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        UniPoly::new(
            ints.iter()
                .map(|v| Rat::from_integer(v / &content))
                .collect(),
        )
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q.primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(convolve(&self.coeffs, &other.coeffs))
    }

    /// Deflation by the root r: self / (x - r); the division must be exact.
    pub fn deflate(&self, root: &Rat) -> UniPoly {
        let divisor = UniPoly::new(vec![-root.clone(), rat_int(1)]);
        let (q, r) = self.divrem(&divisor);
        assert!(r.is_zero(), "deflation by a non-root");
        q
    }
}

/// All rational roots of the polynomial whose numerator and denominator do
/// not exceed `height`, with multiplicity, together with the deflated
/// quotient (which has no further rational roots within that height).
///
/// Candidate roots r/s have r dividing the trailing and s the leading
/// coefficient; both divisor lists are scanned once up to the height bound.
pub fn rational_roots(poly: &UniPoly, height: u64) -> (Vec<Rat>, UniPoly) {
    let mut roots = Vec::new();
    if poly.is_zero() {
        return (roots, UniPoly::zero());
    }
    let mut rest = poly.primitive();
    while !rest.coeffs.is_empty() && rest.coeffs[0].is_zero() {
        roots.push(Rat::zero());
        rest = UniPoly::new(rest.coeffs[1..].to_vec());
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let divisors_upto = |v: &BigInt| -> Vec<BigInt> {
        let v = v.abs();
        (1..=height)
            .map(BigInt::from)
            .filter(|d| num_integer::Integer::is_multiple_of(&v, d))
            .collect()
    };
    // Every rational root of a deflated quotient is a root of the original,
    // so one candidate list suffices.
    let nums = divisors_upto(&rest.coeffs[0].numer().clone());
    let dens = divisors_upto(&rest.coeffs.last().unwrap().numer().clone());
    for num in &nums {
        for den in &dens {
            if !num_integer::Integer::gcd(num, den).is_one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rat::new(num * BigInt::from(sign), den.clone());
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&cand).is_zero() {
                    rest = rest.deflate(&cand).primitive();
                    roots.push(cand.clone());
                }
            }
        }
    }
    (roots, rest)
}

/// Sylvester resultant of two univariate polynomials presented with
/// *declared* degrees (leading coefficients may be zero): this matches the
/// specialization of the resultant of polynomials with parameters.
pub fn sylvester_resultant(a: &[Rat], deg_a: usize, b: &[Rat], deg_b: usize) -> Rat {
    if deg_a == 0 {
        return pow_rat(&a[0], deg_b as u32);
    }
    if deg_b == 0 {
        return pow_rat(&b[0], deg_a as u32);
    }
    let n = deg_a + deg_b;
    let mut m = vec![vec![Rat::zero(); n]; n];
    let coeff = |c: &[Rat], k: usize| -> Rat {
        c.get(k).cloned().unwrap_or_else(Rat::zero)
    };
    for row in 0..deg_b {
        for k in 0..=deg_a {
            m[row][row + k] = coeff(a, deg_a - k);
        }
    }
    for row in 0..deg_a {
        for k in 0..=deg_b {
            m[deg_b + row][row + k] = coeff(b, deg_b - k);
        }
    }
    det(&mut m)
}

/// Determinant by fraction-free-ish Gaussian elimination over the rationals.
fn det(m: &mut [Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut sign = 1i64;
    let mut acc = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        let p = m[col][col].clone();
        acc *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let v = &m[col][c] * &factor;
                m[r][c] -= v;
            }
        }
    }
    acc * rat_int(sign)
}

/// Resultant of two homogeneous ternary forms with respect to x2, returned
/// as the univariate polynomial R(t) = Res(f(1, t, x2), g(1, t, x2)).
///
/// Requires the projection center (0:0:1) to lie on neither curve, so that
/// the x2-degrees equal the total degrees; computed by interpolation.
pub fn resultant_x2(f: &Poly3, g: &Poly3) -> Result<UniPoly> {
    let df = f
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidParameter("resultant of a non-homogeneous form".into()))?
        as usize;
    let dg = g
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidParameter("resultant of a non-homogeneous form".into()))?
        as usize;
    let one = rat_int(1);
    let zero = Rat::zero();
    if f.eval(&[zero.clone(), zero.clone(), one.clone()]).is_zero()
        || g.eval(&[zero.clone(), zero, one]).is_zero()
    {
        return Err(Error::InvalidParameter(
            "projection center (0:0:1) lies on a curve; apply a coordinate change".into(),
        ));
    }
    let n = df * dg;
    // x2-coefficient lists of f(1, t, x2) as polynomials in t.
    let specialize = |p: &Poly3, deg: usize, t: &Rat| -> Vec<Rat> {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (&(a, b, c), coef) in p.terms() {
            let _ = a;
            coeffs[c as usize] += coef * pow_rat(t, b);
        }
        coeffs
    };
    let mut nodes = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = rat_int(k as i64);
        let fa = specialize(f, df, &t);
        let gb = specialize(g, dg, &t);
        values.push(sylvester_resultant(&fa, df, &gb, dg));
        nodes.push(t);
    }
    Ok(lagrange_interpolate(&nodes, &values))
}

/// Lagrange interpolation through distinct nodes.
pub fn lagrange_interpolate(nodes: &[Rat], values: &[Rat]) -> UniPoly {
    assert_eq!(nodes.len(), values.len());
    let mut acc = UniPoly::zero();
    for (i, x_i) in nodes.iter().enumerate() {
        if values[i].is_zero() {
            continue;
        }
        let mut basis = UniPoly::new(vec![rat_int(1)]);
        let mut denom = Rat::one();
        for (j, x_j) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::new(vec![-x_j.clone(), rat_int(1)]));
            denom *= x_i - x_j;
        }
        let scale = &values[i] / denom;
        let term = UniPoly::new(basis.coeffs.iter().map(|c| c * &scale).collect());
        acc = UniPoly::new({
            let mut coeffs = acc.coeffs.clone();
            coeffs.resize(coeffs.len().max(term.coeffs.len()), Rat::zero());
            for (k, c) in term.coeffs.iter().enumerate() {
                coeffs[k] += c;
            }
            coeffs
        });
    }
    acc
}
