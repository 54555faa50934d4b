//! Jumping numbers and multiplier-ideal clusters for singularities of local
//! type `x^(dp) = y^(dq)`, and the jumping-number sets that drive the
//! irregularity formula.
//!
//! For such a singularity the subunitary jumping numbers are exactly the
//! rationals (ap + bq)/(dpq) with a, b >= 1, and the multiplier ideal at a
//! jumping number is the ideal of a minimal unloaded cluster K_{p,q}(a,b)
//! on the Euclidean tree T_{p,q}.  Everything here is exact rational
//! arithmetic; floors of dpq * xi are taken with integer division.

use crate::enriques::{build_tpq_tree, euclid_data, gcd, minimal_cluster_for_value, Cluster};
use crate::linsys::BranchCurve;
use crate::{rat_int, Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Local analytic type `x^(dp) = y^(dq)` with p <= q coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SingularityType {
    p: u64,
    q: u64,
    d: u64,
}

impl SingularityType {
    pub fn new(p: u64, q: u64, d: u64) -> Result<Self> {
        if p == 0 || q == 0 || d == 0 {
            return Err(Error::InvalidParameter(
                "singularity type needs positive p, q, d".into(),
            ));
        }
        if p > q {
            return Err(Error::InvalidParameter(format!(
                "expected p <= q, got ({p}, {q})"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(SingularityType { p, q, d })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn dpq(&self) -> u64 {
        self.d * self.p * self.q
    }

    pub fn tree(&self) -> crate::enriques::GriddedTree {
        build_tpq_tree(self.p, self.q).expect("type invariants guarantee a tree")
    }

    /// Exceptional coefficients of the pullback of the local branch:
    /// the multiplicity sequence d*r_k converted to exceptional coordinates.
    /// Its last entry is dpq.
    pub fn pullback_exceptional(&self) -> Vec<i64> {
        let data = euclid_data(self.p, self.q).expect("coprime");
        let weights: Vec<i64> = data
            .multiplicity_sequence()
            .into_iter()
            .map(|r| r * self.d as i64)
            .collect();
        let tree = self.tree();
        let cluster = Cluster::new(tree, weights).expect("length matches");
        let c = cluster.weights_to_exceptional();
        debug_assert_eq!(*c.last().unwrap(), self.dpq() as i64);
        c
    }
}

/// Label forms accepted by [`singularity_params`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeSpec {
    /// A_k double point: A_{2r-1} -> (1, r, 2) and A_{2m} -> (2, 2m+1, 1).
    A(u64),
    /// Ordinary m-fold point (m concurrent smooth branches) -> (1, 1, m).
    Ordinary(u64),
    Explicit { p: u64, q: u64, d: u64 },
}

/// Resolves a type label into (p, q, d).
pub fn singularity_params(spec: &TypeSpec) -> Result<SingularityType> {
    match *spec {
        TypeSpec::A(k) => {
            if k == 0 {
                return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
            }
            if k % 2 == 1 {
                let r = (k + 1) / 2;
                SingularityType::new(1, r, 2)
            } else {
                let m = k / 2;
                SingularityType::new(2, 2 * m + 1, 1)
            }
        }
        TypeSpec::Ordinary(m) => {
            if m == 0 {
                return Err(Error::InvalidParameter(
                    "ordinary point needs multiplicity >= 1".into(),
                ));
            }
            SingularityType::new(1, 1, m)
        }
        TypeSpec::Explicit { p, q, d } => SingularityType::new(p, q, d),
    }
}

/// A subunitary jumping number with all its (a, b) representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpingNumber {
    pub value: Rat,
    pub reps: Vec<(u64, u64)>,
}

/// Subunitary jumping numbers (ap + bq)/(dpq), a, b >= 1, sorted
/// increasingly with representations merged.
pub fn jumping_numbers(t: &SingularityType) -> Vec<JumpingNumber> {
    let (p, q, dpq) = (t.p, t.q, t.dpq());
    let mut by_value: BTreeMap<Rat, Vec<(u64, u64)>> = BTreeMap::new();
    for b in 1.. {
        if b * q + p >= dpq {
            break;
        }
        for a in 1.. {
            let num = a * p + b * q;
            if num >= dpq {
                break;
            }
            let xi = Rat::new(BigInt::from(num), BigInt::from(dpq));
            by_value.entry(xi).or_default().push((a, b));
        }
    }
    by_value
        .into_iter()
        .map(|(value, mut reps)| {
            reps.sort();
            JumpingNumber { value, reps }
        })
        .collect()
}

/// Brute-force jumping numbers: sweep xi over the grid i/(dpq) and report
/// where the colength of the unloaded multiplier cluster jumps.
///
/// The weight vector at level xi is -1 everywhere plus floor(xi * c) * Pi,
/// where c is the exceptional coefficient vector of the pulled-back branch;
/// this is the cluster of the divisor floor(xi * pullback) minus the
/// relative canonical divisor.
pub fn jumping_numbers_oracle(t: &SingularityType) -> Vec<Rat> {
    let dpq = t.dpq();
    let mut jumps = Vec::new();
    let mut prev = 0u64;
    for i in 1..dpq {
        let len = multiplier_colength_at_grid(t, i);
        if len > prev {
            jumps.push(Rat::new(BigInt::from(i), BigInt::from(dpq)));
        }
        prev = len;
    }
    jumps
}

fn multiplier_colength_at_grid(t: &SingularityType, i: u64) -> u64 {
    multiplier_cluster_by_unloading(t, &Rat::new(BigInt::from(i), BigInt::from(t.dpq())))
        .colength()
        .expect("unloaded")
}

/// Multiplier cluster computed directly from the defining divisor:
/// unload(-1 + floor(xi * c) * Pi).  Agrees with [`multiplier_cluster`];
/// kept as an independent route for cross-checks.
pub fn multiplier_cluster_by_unloading(t: &SingularityType, xi: &Rat) -> Cluster {
    let tree = t.tree();
    let c = t.pullback_exceptional();
    let floors: Vec<i64> = c.iter().map(|&ci| floor_mul(xi, ci)).collect();
    // w = floor(xi c) * Pi - (1, ..., 1)
    let scaled = Cluster::from_exceptional(tree.clone(), &floors).expect("length");
    let weights: Vec<i64> = scaled.weights.iter().map(|w| w - 1).collect();
    Cluster::new(tree, weights).expect("length").unload()
}

fn floor_mul(xi: &Rat, c: i64) -> i64 {
    let prod = xi * rat_int(c);
    prod.floor().to_integer().to_i64().expect("small floor")
}

/// The multiplier-ideal cluster of `xi * (x^(dp) = y^(dq))` for subunitary
/// xi: last exceptional coefficient floor(dpq xi) - (p + q - 1), rounded up
/// to the numerical semigroup generated by p and q, then unloaded from the
/// last point.  A nonpositive coefficient yields the empty cluster.
pub fn multiplier_cluster(t: &SingularityType, xi: &Rat) -> Result<Cluster> {
    if !(xi > &Rat::zero() && xi < &rat_int(1)) {
        return Err(Error::InvalidParameter(format!(
            "xi = {xi} must be strictly between 0 and 1"
        )));
    }
    let tree = t.tree();
    let c_raw = floor_mul(xi, t.dpq() as i64) - (t.p + t.q - 1) as i64;
    if c_raw <= 0 {
        return Ok(Cluster::empty(tree));
    }
    let c_eff = semigroup_round_up(t.p, t.q, c_raw
        as u64);
    minimal_cluster_for_value(tree, c_eff as i64)
}

/// Least element of the numerical semigroup <p, q> that is >= value.
pub fn semigroup_round_up(p: u64, q: u64, value: u64) -> u64 {
    let mut v = value;
    loop {
        if semigroup_contains(p, q, v) {
            return v;
        }
        v += 1;
    }
}

fn semigroup_contains(p: u64, q: u64, v: u64) -> bool {
    (0..=v / p).any(|a| (v - a * p) % q == 0)
}

/// The pair realizing the least alpha' p + beta' q that is at least
/// (alpha - 1) p + (beta - 1) q + 1, lexicographically least among the
/// representations of that minimum.
pub fn tilde_pair(p: u64, q: u64, alpha: u64, beta: u64) -> Result<(u64, u64)> {
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    if alpha == 0 || beta == 0 {
        return Err(Error::InvalidParameter(
            "tilde pair needs alpha, beta >= 1".into(),
        ));
    }
    let threshold = (alpha - 1) * p + (beta - 1) * q + 1;
    let value = semigroup_round_up(p, q, threshold);
    for a in 0..=value / p {
        let rest = value - a * p;
        if rest % q == 0 {
            return Ok((a, rest / q));
        }
    }
    unreachable!("value lies in the semigroup");
}

/// Jumping set J(B, n): union of the subunitary jumping numbers over the
/// singular points of B, intersected with (1/gcd(b,n)) Z.  With
/// `irreducible` set, jumping numbers whose reduced denominator is a prime
/// power are removed (the corresponding prime-power cyclic planes of an
/// irreducible branch curve are regular).
pub fn jumping_set(curve: &BranchCurve, n: u64, irreducible: bool) -> Result<Vec<Rat>> {
    if n < 2 {
        return Err(Error::InvalidParameter("covering degree n >= 2".into()));
    }
    let g = gcd(curve.degree, n);
    let mut set: Vec<Rat> = Vec::new();
    for point in &curve.points {
        for jn in jumping_numbers(&point.ty) {
            // xi lies in (1/g) Z exactly when its reduced denominator divides g.
            let denom = jn.value.denom().to_u64().expect("small denominator");
            if g % denom != 0 {
                continue;
            }
            if irreducible && is_prime_power(denom) {
                continue;
            }
            if !set.contains(&jn.value) {
                set.push(jn.value);
            }
        }
    }
    set.sort();
    Ok(set)
}

/// True for n = p^k with p prime, k >= 1.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    let mut p = 0u64;
    for cand in 2.. {
        if cand * cand > n {
            break;
        }
        if n % cand == 0 {
            p = cand;
            break;
        }
    }
    if p == 0 {
        return true; // n itself prime
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn ty(p: u64, q: u64, d: u64) -> SingularityType {
        SingularityType::new(p, q, d).unwrap()
    }

    #[test]
    fn params_examples() {
        assert_eq!(singularity_params(&TypeSpec::A(2)).unwrap(), ty(2, 3, 1));
        assert_eq!(singularity_params(&TypeSpec::A(1)).unwrap(), ty(1, 1, 2));
        assert_eq!(singularity_params(&TypeSpec::A(5)).unwrap(), ty(1, 3, 2));
        assert_eq!(singularity_params(&TypeSpec::A(4)).unwrap(), ty(2, 5, 1));
        assert_eq!(
            singularity_params(&TypeSpec::Ordinary(3)).unwrap(),
            ty(1, 1, 3)
        );
        assert!(singularity_params(&TypeSpec::A(0)).is_err());
    }

    #[test]
    fn jumping_numbers_examples() {
        let values: Vec<Rat> = jumping_numbers(&ty(2, 3, 1))
            .into_iter()
            .map(|j| j.value)
            .collect();
        assert_eq!(values, vec![rat(5, 6)]);

        let values: Vec<Rat> = jumping_numbers(&ty(1, 3, 2))
            .into_iter()
            .map(|j| j.value)
            .collect();
        assert_eq!(values, vec![rat(2, 3), rat(5, 6)]);

        let values: Vec<Rat> = jumping_numbers(&ty(1, 1, 3))
            .into_iter()
            .map(|j| j.value)
            .collect();
        assert_eq!(values, vec![rat(2, 3)]);

        // Nodes contribute nothing subunitary.
        assert!(jumping_numbers(&ty(1, 1, 2)).is_empty());
        assert!(jumping_numbers(&ty(1, 1, 1)).is_empty());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(jumping_numbers_oracle(&ty(2, 3, 1)), vec![rat(5, 6)]);
        assert_eq!(jumping_numbers_oracle(&ty(1, 1, 3)), vec![rat(2, 3)]);
    }

    #[test]
    fn oracle_matches_closed_form_small() {
        // The full dpq <= 60 sweep runs in the acceptance suite.
        for (p, q, d) in [(2, 3, 1), (1, 3, 2), (2, 5, 1), (3, 4, 1), (1, 1, 4), (2, 3, 2)] {
            let t = ty(p, q, d);
            let closed: Vec<Rat> = jumping_numbers(&t).into_iter().map(|j| j.value).collect();
            assert_eq!(jumping_numbers_oracle(&t), closed, "type ({p},{q},{d})");
        }
    }

    #[test]
    fn multiplier_cluster_examples() {
        // Cusp at 5/6: the reduced point.
        let k = multiplier_cluster(&ty(2, 3, 1), &rat(5, 6)).unwrap();
        assert_eq!(k.weights, vec![1, 0, 0]);

        // A_5 at 5/6: the curvilinear pair.
        let k = multiplier_cluster(&ty(1, 3, 2), &rat(5, 6)).unwrap();
        assert_eq!(k.weights, vec![1, 1, 0]);

        // Below the first jumping number: empty cluster.
        let k = multiplier_cluster(&ty(2, 3, 1), &rat(1, 3)).unwrap();
        assert!(k.is_empty());

        assert!(multiplier_cluster(&ty(2, 3, 1), &rat(7, 6)).is_err());
        assert!(multiplier_cluster(&ty(2, 3, 1), &rat_int(0)).is_err());
    }

    #[test]
    fn multiplier_routes_agree() {
        for (p, q, d) in [(2u64, 3u64, 1u64), (1, 3, 2), (2, 5, 1), (3, 5, 1), (1, 1, 5)] {
            let t = ty(p, q, d);
            let dpq = t.dpq();
            for i in 1..dpq {
                let xi = Rat::new(BigInt::from(i), BigInt::from(dpq));
                let direct = multiplier_cluster_by_unloading(&t, &xi);
                let closed = multiplier_cluster(&t, &xi).unwrap();
                assert_eq!(direct.weights, closed.weights, "({p},{q},{d}) at {xi}");
            }
        }
    }

    #[test]
    fn clusters_constant_between_jumps() {
        let t = ty(2, 5, 1);
        let jumps: Vec<Rat> = jumping_numbers(&t).into_iter().map(|j| j.value).collect();
        // midpoints of consecutive jump intervals give the same cluster as
        // the left endpoint
        let mut boundaries = jumps.clone();
        boundaries.push(rat_int(1));
        for w in boundaries.windows(2) {
            let left = multiplier_cluster(&t, &w[0]).unwrap();
            let mid = (&w[0] + &w[1]) / rat_int(2);
            let at_mid = multiplier_cluster(&t, &mid).unwrap();
            assert_eq!(left.weights, at_mid.weights);
        }
    }

    #[test]
    fn tilde_pair_examples() {
        assert_eq!(tilde_pair(2, 3, 1, 1).unwrap(), (1, 0));
        assert_eq!(tilde_pair(2, 3, 2, 1).unwrap(), (0, 1));
        // Threshold 1: least positive semigroup element is p.
        assert_eq!(tilde_pair(5, 7, 1, 1).unwrap(), (1, 0));
    }

    #[test]
    fn tilde_pair_matches_multiplier_cluster() {
        for (p, q, d) in [(2u64, 3, 1), (2, 5, 1), (3, 4, 1), (1, 3, 2)] {
            let t = ty(p, q, d);
            let dpq = t.dpq();
            for alpha in 1..q {
                for beta in 1..p + 1 {
                    let num = alpha * p + beta * q;
                    if num >= dpq {
                        continue;
                    }
                    let xi = Rat::new(BigInt::from(num), BigInt::from(dpq));
                    let (a, b) = tilde_pair(p, q, alpha, beta).unwrap();
                    let expected = crate::enriques::minimal_cluster(p, q, a, b).unwrap();
                    let got = multiplier_cluster(&t, &xi).unwrap();
                    assert_eq!(got.weights, expected.weights);
                }
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert!(is_prime_power(2));
        assert!(is_prime_power(9));
        assert!(is_prime_power(32));
        assert!(is_prime_power(7));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(10));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(36));
    }

    #[test]
    fn colength_monotone_in_xi() {
        let t = ty(3, 5, 1);
        let mut prev = 0;
        for i in 1..t.dpq() {
            let len = multiplier_colength_at_grid(&t, i);
            assert!(len >= prev);
            prev = len;
        }
    }
}
