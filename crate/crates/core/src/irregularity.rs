//! The irregularity pipeline: jumping set, global multiplier schemes,
//! superabundances, and the n-sweep and arrangement bounds built on it.
//!
//! For each xi in J(B, n), the subscheme Z(xi B) is the union of the local
//! multiplier clusters over the singular points of B; its ideal sheaf
//! twisted by -3 + xi b contributes h^1 to the irregularity of the
//! n-cyclic multiple plane.

use crate::linsys::{cohomology, BranchCurve, LineArrangement, SingularPoint};
use crate::multiplier::{jumping_set, multiplier_cluster};
use crate::enriques::Cluster;
use crate::{rat_int, Error, Rat, Result};
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

/// One jumping-number term of the irregularity sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermReport {
    pub xi: Rat,
    /// Twist degree -3 + xi b (an integer for xi in J(B, n)).
    pub degree: i64,
    pub deg_z: u64,
    pub h0: u64,
    pub h1: u64,
}

/// The full irregularity computation for one covering degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrregularityReport {
    pub n: u64,
    pub b: u64,
    pub q: u64,
    pub terms: Vec<TermReport>,
    pub irreducible_filter: bool,
    /// The transversality of the line at infinity is a hypothesis, not an
    /// input; it can be checked separately when a polynomial is supplied.
    pub transversality_assumed: bool,
}

/// Local multiplier clusters of xi B at every singular point, skipping the
/// points where the local multiplier ideal is still trivial.
fn global_scheme(curve: &BranchCurve, xi: &Rat) -> Result<Vec<(SingularPoint, Cluster)>> {
    let mut pairs = Vec::new();
    for point in &curve.points {
        let cluster = multiplier_cluster(&point.ty, xi)?;
        if !cluster.is_empty() {
            pairs.push((point.clone(), cluster));
        }
    }
    Ok(pairs)
}

fn term_for_xi(curve: &BranchCurve, xi: &Rat) -> Result<TermReport> {
    let degree_rat = xi * rat_int(curve.degree as i64) - rat_int(3);
    if !degree_rat.is_integer() {
        return Err(Error::InvalidParameter(format!(
            "xi = {xi} does not give an integral twist for degree {}",
            curve.degree
        )));
    }
    let degree = degree_rat.to_integer().to_i64().expect("small degree");
    let pairs = global_scheme(curve, xi)?;
    let deg_z: u64 = pairs
        .iter()
        .map(|(_, c)| c.colength().expect("multiplier clusters are unloaded"))
        .sum();
    let (h0, h1) = cohomology(&pairs, degree)?;
    Ok(TermReport {
        xi: xi.clone(),
        degree,
        deg_z,
        h0,
        h1,
    })
}

/// Irregularity of the n-cyclic multiple plane branched along the curve
/// (and a transverse line at infinity): the sum of the superabundances
/// h^1(I_{Z(xi B)}(-3 + xi b)) over xi in J(B, n).  With `irreducible`
/// set, the prime-power-denominator terms are removed first.
pub fn irregularity(curve: &BranchCurve, n: u64, irreducible: bool) -> Result<IrregularityReport> {
    if n < 2 {
        return Err(Error::InvalidParameter("covering degree n >= 2".into()));
    }
    let xi_set = jumping_set(curve, n, irreducible)?;
    let mut terms = Vec::new();
    for xi in &xi_set {
        terms.push(term_for_xi(curve, xi)?);
    }
    let q = terms.iter().map(|t| t.h1).sum();
    Ok(IrregularityReport {
        n,
        b: curve.degree,
        q,
        terms,
        irreducible_filter: irreducible,
        transversality_assumed: true,
    })
}

/// Irregularity for every n in 2..=n_max.  Each term depends only on xi,
/// so the per-xi superabundances are computed once and shared across n.
pub fn profile(curve: &BranchCurve, n_max: u64) -> Result<Vec<(u64, u64)>> {
    if n_max < 2 {
        return Err(Error::InvalidParameter("profile needs n_max >= 2".into()));
    }
    let mut cache: BTreeMap<Rat, TermReport> = BTreeMap::new();
    let mut out = Vec::new();
    for n in 2..=n_max {
        let xi_set = jumping_set(curve, n, false)?;
        let mut q = 0;
        for xi in &xi_set {
            if !cache.contains_key(xi) {
                cache.insert(xi.clone(), term_for_xi(curve, xi)?);
            }
            q += cache[xi].h1;
        }
        out.push((n, q));
    }
    Ok(out)
}

/// For a nodes-and-triple-points line arrangement: the minimum over the
/// lines of the number of triple points on that line.  The irregularity of
/// any n-cyclic plane branched along the arrangement is bounded by it (and
/// vanishes unless 3 divides both the line count and n); both facts are
/// checked before returning.
pub fn triple_point_bound(arrangement: &LineArrangement, n: u64) -> Result<u64> {
    if arrangement
        .multiple_points
        .iter()
        .any(|&(_, m)| m > 3)
    {
        return Err(Error::InvalidParameter(
            "the triple-point bound applies to arrangements with nodes and triple points only"
                .into(),
        ));
    }
    let bound = arrangement
        .triple_counts
        .iter()
        .copied()
        .min()
        .ok_or_else(|| Error::InvalidParameter("empty arrangement".into()))?;
    let report = irregularity(&arrangement.curve, n, false)?;
    let b = arrangement.curve.degree;
    if b % 3 != 0 || n % 3 != 0 {
        assert_eq!(
            report.q, 0,
            "an arrangement plane is regular unless 3 divides both b and n"
        );
    }
    assert!(
        report.q <= bound,
        "irregularity {} exceeded the triple-point bound {bound}",
        report.q
    );
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::line_arrangement;
    use crate::rat;
    use crate::Rat;
    use num_traits::Zero;

    fn concurrent_triple() -> LineArrangement {
        let one = rat_int(1);
        let zero = Rat::zero();
        line_arrangement(&[
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [zero.clone(), one.clone(), -one.clone()],
        ])
        .unwrap()
    }

    #[test]
    fn cone_over_three_concurrent_lines() {
        // B = three concurrent lines, n = 3: the triple plane is a cone
        // over a smooth plane cubic, so q = 1.  The twist degree is -1,
        // exercising the negative-degree convention.
        let arr = concurrent_triple();
        let report = irregularity(&arr.curve, 3, false).unwrap();
        assert_eq!(report.q, 1);
        assert_eq!(report.terms.len(), 1);
        assert_eq!(report.terms[0].xi, rat(2, 3));
        assert_eq!(report.terms[0].degree, -1);
        assert_eq!(report.terms[0].deg_z, 1);
        assert_eq!(report.terms[0].h1, 1);
    }

    #[test]
    fn concurrent_lines_profile() {
        let arr = concurrent_triple();
        let prof = profile(&arr.curve, 9).unwrap();
        // q = 1 exactly when 3 | n.
        for (n, q) in prof {
            assert_eq!(q, u64::from(n % 3 == 0), "n = {n}");
        }
    }

    #[test]
    fn triple_point_bound_examples() {
        let arr = concurrent_triple();
        assert_eq!(triple_point_bound(&arr, 3).unwrap(), 1);
        // Three general lines: bound 0, q 0.
        let one = rat_int(1);
        let zero = Rat::zero();
        let generic = line_arrangement(&[
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
            [one.clone(), one.clone(), one.clone()],
        ])
        .unwrap();
        assert_eq!(triple_point_bound(&generic, 3).unwrap(), 0);
    }

    #[test]
    fn irregular_only_with_valid_n() {
        let arr = concurrent_triple();
        assert!(irregularity(&arr.curve, 1, false).is_err());
        let r2 = irregularity(&arr.curve, 2, false).unwrap();
        assert_eq!(r2.q, 0);
        assert!(r2.terms.is_empty());
    }

    #[test]
    fn q_depends_on_n_through_gcd() {
        let arr = concurrent_triple();
        let prof = profile(&arr.curve, 12).unwrap();
        let by_gcd: std::collections::BTreeMap<u64, u64> = prof
            .iter()
            .map(|&(n, q)| (crate::enriques::gcd(arr.curve.degree, n), q))
            .collect();
        for &(n, q) in &prof {
            assert_eq!(q, by_gcd[&crate::enriques::gcd(arr.curve.degree, n)]);
        }
    }
}
