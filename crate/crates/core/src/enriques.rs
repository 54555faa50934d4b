//! Gridded trees, clusters, proximity matrices and the unloading procedure.
//!
//! A cluster is a finite set of infinitely near points of the plane with
//! integer weights, encoded as a gridded tree: an oriented tree whose arcs
//! are labeled slant, horizontal or vertical.  A point is a satellite
//! exactly when a horizontal or vertical arc ends at it.  Proximity is read
//! off the diagram through L-shape branches, and the proximity matrix turns
//! weights (multiplicities on total transforms) into exceptional
//! coefficients and back.
//!
//! The trees of interest here are the trees T_{p,q} of the Euclidean
//! algorithm on a coprime pair p <= q: they carry the resolution
//! combinatorics of `x^p = y^q`, and every multiplier-ideal cluster of an
//! `x^(dp) = y^(dq)` singularity is a minimal unloaded cluster K_{p,q}(a,b)
//! on such a tree.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Kind of an arc in a gridded tree.
///
/// Slant arcs end at free points; horizontal and vertical arcs end at
/// satellites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Slant,
    Horizontal,
    Vertical,
}

/// An oriented tree with grid-labeled arcs, rooted at vertex 0.
///
/// Vertices are indexed 0..r in an order that extends the partial order
/// "precedes"; every non-root vertex has exactly one incoming arc from a
/// smaller index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GriddedTree {
    parent: Vec<Option<(usize, ArcKind)>>,
}

impl GriddedTree {
    /// Builds a tree from `(from, to, kind)` arcs over `vertex_count` vertices.
    pub fn new(vertex_count: usize, arcs: &[(usize, usize, ArcKind)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::MalformedTree("no vertices".into()));
        }
        let mut parent: Vec<Option<(usize, ArcKind)>> = vec![None; vertex_count];
        for &(from, to, kind) in arcs {
            if from >= vertex_count || to >= vertex_count {
                return Err(Error::MalformedTree(format!(
                    "arc ({from}, {to}) out of range"
                )));
            }
            if from >= to {
                return Err(Error::MalformedTree(format!(
                    "arc ({from}, {to}) violates the vertex order"
                )));
            }
            if parent[to].is_some() {
                return Err(Error::MalformedTree(format!(
                    "vertex {to} has two incoming arcs"
                )));
            }
            parent[to] = Some((from, kind));
        }
        for v in 1..vertex_count {
            if parent[v].is_none() {
                return Err(Error::MalformedTree(format!(
                    "vertex {v} is a second root (no incoming arc)"
                )));
            }
        }
        Ok(GriddedTree { parent })
    }

    /// Single-vertex tree (one plane point, no arcs).
    pub fn single_vertex() -> Self {
        GriddedTree { parent: vec![None] }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Parent and incoming-arc kind of `v`, if `v` is not the root.
    pub fn incoming(&self, v: usize) -> Option<(usize, ArcKind)> {
        self.parent[v]
    }

    /// Arcs as `(from, to, kind)` triples in vertex order.
    pub fn arcs(&self) -> Vec<(usize, usize, ArcKind)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(to, p)| p.map(|(from, kind)| (from, to, kind)))
            .collect()
    }

    /// True when `alpha` strictly precedes `beta` (is a proper ancestor).
    pub fn precedes(&self, alpha: usize, beta: usize) -> bool {
        let mut v = beta;
        while let Some((parent, _)) = self.parent[v] {
            if parent == alpha {
                return true;
            }
            v = parent;
        }
        false
    }

    /// Arc kinds along the path `alpha -> beta`, or None when `alpha` does
    /// not precede `beta`.
    fn path_kinds(&self, alpha: usize, beta: usize) -> Option<Vec<ArcKind>> {
        let mut kinds = Vec::new();
        let mut v = beta;
        while v != alpha {
            let (parent, kind) = self.parent[v]?;
            kinds.push(kind);
            v = parent;
        }
        kinds.reverse();
        Some(kinds)
    }

    /// True when an L-shape branch starts at `alpha` and ends at `beta`.
    ///
    /// An L-shape branch is a chain of arcs in which all arcs after the
    /// first are horizontal, or all are vertical, the first arc being of a
    /// different kind.  A single arc always qualifies.  Proximity of points
    /// is exactly this relation.
    pub fn l_shape_branch(&self, alpha: usize, beta: usize) -> bool {
        if alpha >= beta {
            return false;
        }
        let Some(kinds) = self.path_kinds(alpha, beta) else {
            return false;
        };
        if kinds.is_empty() {
            return false;
        }
        if kinds.len() == 1 {
            return true;
        }
        let tail = kinds[1];
        if tail == ArcKind::Slant {
            return false;
        }
        kinds[0] != tail && kinds[1..].iter().all(|&k| k == tail)
    }

    /// True when `beta` is proximate to `alpha`.
    pub fn is_proximate(&self, beta: usize, alpha: usize) -> bool {
        self.l_shape_branch(alpha, beta)
    }

    /// Vertices proximate to `alpha`, in increasing order.
    pub fn proximate_to(&self, alpha: usize) -> Vec<usize> {
        (alpha + 1..self.vertex_count())
            .filter(|&beta| self.is_proximate(beta, alpha))
            .collect()
    }

    /// A point is free when it is proximate to at most one point (the root
    /// is free by convention); otherwise it is a satellite.
    pub fn is_satellite(&self, v: usize) -> bool {
        matches!(
            self.incoming(v),
            Some((_, ArcKind::Horizontal)) | Some((_, ArcKind::Vertical))
        )
    }
}

/// Segment sizes and remainders of the Euclidean algorithm on (p, q).
///
/// With r_0 = q, r_1 = p and r_{k-1} = a_k r_k + r_{k+1}, the tree T_{p,q}
/// has segments of a_1, ..., a_m vertices and the points of the k-th
/// segment carry multiplicity r_k in the resolution of `x^p = y^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidData {
    pub segments: Vec<u64>,
    pub remainders: Vec<u64>,
}

impl EuclidData {
    pub fn vertex_count(&self) -> usize {
        self.segments.iter().map(|&a| a as usize).sum()
    }

    /// Segment coordinates (k, i), 1-based, of the vertex with flat index
    /// `alpha` (0-based).  Inverse of [`EuclidData::flat_index`].
    pub fn segment_coords(&self, alpha: usize) -> (usize, usize) {
        let mut rest = alpha;
        for (k, &a) in self.segments.iter().enumerate() {
            if rest < a as usize {
                return (k + 1, rest + 1);
            }
            rest -= a as usize;
        }
        panic!("vertex index out of range");
    }

    pub fn flat_index(&self, k: usize, i: usize) -> usize {
        let before: usize = self.segments[..k - 1].iter().map(|&a| a as usize).sum();
        before + (i - 1)
    }

    /// Multiplicity r_k of the segment containing each vertex.
    pub fn multiplicity_sequence(&self) -> Vec<i64> {
        let mut seq = Vec::with_capacity(self.vertex_count());
        for (k, &a) in self.segments.iter().enumerate() {
            for _ in 0..a {
                seq.push(self.remainders[k] as i64);
            }
        }
        seq
    }
}

/// Runs the Euclidean algorithm on a coprime pair 1 <= p <= q.
pub fn euclid_data(p: u64, q: u64) -> Result<EuclidData> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be positive".into()));
    }
    if p > q {
        return Err(Error::InvalidParameter(format!(
            "expected p <= q, got p = {p}, q = {q}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let mut segments = Vec::new();
    let mut remainders = Vec::new();
    let (mut prev, mut cur) = (q, p);
    while cur > 0 {
        segments.push(prev / cur);
        remainders.push(cur);
        let next = prev % cur;
        prev = cur;
        cur = next;
    }
    Ok(EuclidData {
        segments,
        remainders,
    })
}

/// Greatest common divisor of two machine integers.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Builds the gridded tree T_{p,q} of the Euclidean algorithm.
///
/// The first segment is slanted, the following ones are alternately
/// horizontal and vertical starting with a horizontal one.  The arc
/// entering the first vertex of segment k+1 carries the kind of segment k,
/// so the first point of the second segment is free while every later
/// segment entry is a satellite.
pub fn build_tpq_tree(p: u64, q: u64) -> Result<GriddedTree> {
    let data = euclid_data(p, q)?;
    Ok(tree_from_euclid(&data))
}

pub(crate) fn tree_from_euclid(data: &EuclidData) -> GriddedTree {
    let kind_of_segment = |k: usize| -> ArcKind {
        // 1-based segment index
        if k == 1 {
            ArcKind::Slant
        } else if k % 2 == 0 {
            ArcKind::Horizontal
        } else {
            ArcKind::Vertical
        }
    };
    let mut arcs = Vec::new();
    let mut index = 0usize;
    for (k0, &a) in data.segments.iter().enumerate() {
        let k = k0 + 1;
        for i in 1..=a as usize {
            if index > 0 {
                let kind = if i == 1 {
                    kind_of_segment(k - 1)
                } else {
                    kind_of_segment(k)
                };
                arcs.push((index - 1, index, kind));
            }
            index += 1;
        }
    }
    GriddedTree::new(index, &arcs).expect("Euclidean tree is well formed")
}

/// The proximity matrix of a cluster tree.
///
/// Entries are p_{ab} = 1 on the diagonal and -1 exactly when P_b is
/// proximate to P_a; the matrix is unit upper triangular in the vertex
/// order, hence unimodular.  It decomposes strict transforms in terms of
/// total transforms: E_a = F_a - sum of F_b over b proximate to a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityMatrix {
    entries: Vec<Vec<i64>>,
}

impl ProximityMatrix {
    pub fn of_tree(tree: &GriddedTree) -> Self {
        let r = tree.vertex_count();
        let mut entries = vec![vec![0i64; r]; r];
        for a in 0..r {
            entries[a][a] = 1;
            for b in tree.proximate_to(a) {
                entries[a][b] = -1;
            }
        }
        ProximityMatrix { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, a: usize, b: usize) -> i64 {
        self.entries[a][b]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Inverse matrix; integral because the matrix is unit triangular.
    pub fn inverse(&self) -> Vec<Vec<i64>> {
        let r = self.size();
        let mut inv = vec![vec![0i64; r]; r];
        // Solve row_a(inv) * Pi = e_a by forward substitution.
        for a in 0..r {
            for b in 0..r {
                let mut acc = if a == b { 1 } else { 0 };
                for g in 0..b {
                    acc -= inv[a][g] * self.entries[g][b];
                }
                inv[a][b] = acc;
            }
        }
        inv
    }

    /// The symmetric pairing Pi * Pi^t.  Its negative is the intersection
    /// matrix of the strict transforms; the diagonal entry at a equals
    /// 1 + (number of points proximate to P_a) and the off-diagonal entry
    /// (a, b) is -1 exactly when the strict transforms E_a, E_b still meet
    /// on the blown-up surface.
    pub fn pairing(&self) -> Vec<Vec<i64>> {
        let r = self.size();
        let mut g = vec![vec![0i64; r]; r];
        for a in 0..r {
            for b in 0..r {
                g[a][b] = (0..r).map(|c| self.entries[a][c] * self.entries[b][c]).sum();
            }
        }
        g
    }

    /// Number of cluster points proximate to each vertex.
    pub fn proximate_counts(&self) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().filter(|&&e| e == -1).count() as i64)
            .collect()
    }
}

/// A weighted cluster on a gridded tree.
///
/// Weights are multiplicities on total transforms; negative values are
/// permitted transiently (the unloading procedure may pass through -1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub tree: GriddedTree,
    pub weights: Vec<i64>,
}

impl Cluster {
    pub fn new(tree: GriddedTree, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != tree.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {} vertices",
                weights.len(),
                tree.vertex_count()
            )));
        }
        Ok(Cluster { tree, weights })
    }

    /// The empty cluster on a tree: all weights zero.
    pub fn empty(tree: GriddedTree) -> Self {
        let weights = vec![0; tree.vertex_count()];
        Cluster { tree, weights }
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// Proximity sums: for each a, the sum of the weights of the points
    /// proximate to P_a.
    pub fn proximity_sums(&self) -> Vec<i64> {
        let r = self.tree.vertex_count();
        (0..r)
            .map(|a| {
                self.tree
                    .proximate_to(a)
                    .into_iter()
                    .map(|b| self.weights[b])
                    .sum()
            })
            .collect()
    }

    /// A cluster is unloaded when every proximity sum is at most the weight
    /// at that point and all weights are nonnegative.
    pub fn is_unloaded(&self) -> bool {
        if self.weights.iter().any(|&w| w < 0) {
            return false;
        }
        self.proximity_sums()
            .iter()
            .zip(&self.weights)
            .all(|(&bar, &w)| bar <= w)
    }

    /// Exceptional coefficients c with sum w_a F_a = sum c_a E_a,
    /// that is c = w * Pi^{-1}.  Exact integer roundtrip with
    /// [`Cluster::from_exceptional`].
    pub fn weights_to_exceptional(&self) -> Vec<i64> {
        let r = self.tree.vertex_count();
        let mut c = vec![0i64; r];
        for b in 0..r {
            let mut acc = self.weights[b];
            // c_b = w_b + sum of c_a over the points a to which P_b is proximate.
            for a in 0..b {
                if self.tree.is_proximate(b, a) {
                    acc += c[a];
                }
            }
            c[b] = acc;
        }
        c
    }

    /// Weights from exceptional coefficients: w = c * Pi.
    pub fn from_exceptional(tree: GriddedTree, c: &[i64]) -> Result<Self> {
        if c.len() != tree.vertex_count() {
            return Err(Error::InvalidParameter(
                "coefficient length mismatch".into(),
            ));
        }
        let r = tree.vertex_count();
        let mut w = vec![0i64; r];
        for b in 0..r {
            let mut acc = c[b];
            for a in 0..b {
                if tree.is_proximate(b, a) {
                    acc -= c[a];
                }
            }
            w[b] = acc;
        }
        Cluster::new(tree, w)
    }

    pub fn proximity_matrix(&self) -> ProximityMatrix {
        ProximityMatrix::of_tree(&self.tree)
    }

    /// Applies the unloading procedure until every proximity relation
    /// holds, processing the violated vertex of largest index first.
    ///
    /// The result defines the same subscheme, has nonnegative weights, and
    /// does not depend on the order in which violated vertices are chosen.
    pub fn unload(&self) -> Cluster {
        self.unload_with(|violated| *violated.last().expect("nonempty"))
            .expect("unloading terminates within budget")
    }

    /// Unloading with a custom choice among the violated vertices; used to
    /// check order-independence.
    pub fn unload_with(&self, mut choose: impl FnMut(&[usize]) -> usize) -> Result<Cluster> {
        let r = self.tree.vertex_count();
        let prox: Vec<Vec<usize>> = (0..r).map(|a| self.tree.proximate_to(a)).collect();
        let mut w = self.weights.clone();
        let mut budget: u64 = 1_000_000;
        loop {
            let mut violated = Vec::new();
            for a in 0..r {
                let bar: i64 = prox[a].iter().map(|&b| w[b]).sum();
                if bar > w[a] {
                    violated.push(a);
                }
            }
            if violated.is_empty() {
                break;
            }
            let a = choose(&violated);
            debug_assert!(violated.contains(&a));
            w[a] += 1;
            for &b in &prox[a] {
                w[b] -= 1;
            }
            budget -= 1;
            if budget == 0 {
                return Err(Error::BudgetExhausted("unload"));
            }
        }
        // A fully unloaded cluster never keeps a negative weight.
        debug_assert!(w.iter().all(|&x| x >= 0));
        Cluster::new(self.tree.clone(), w)
    }

    /// Degree of the subscheme defined by an unloaded cluster:
    /// sum of w(w+1)/2 over the points.
    pub fn colength(&self) -> Result<u64> {
        if !self.is_unloaded() {
            return Err(Error::NotUnloaded(
                "colength is only defined for unloaded clusters".into(),
            ));
        }
        Ok(self
            .weights
            .iter()
            .map(|&w| (w * (w + 1) / 2) as u64)
            .sum())
    }

    /// Checks the chain condition characterizing minimal unloaded clusters.
    ///
    /// For every chain of points a_1 < ... < a_{l+1} in which consecutive
    /// points are joined by a maximal L-shape branch (equivalently, their
    /// strict transforms still meet), the first l points must satisfy
    ///
    /// ```text
    ///   sum_j (w_{a_j} - wbar_{a_j})  <  sum_j p_{a_j} + 2 - l,
    /// ```
    ///
    /// where p_a counts the cluster points proximate to P_a.  Returns the
    /// violating chain as a witness when the condition fails.
    pub fn satisfies_star(&self) -> Result<StarCheck> {
        self.satisfies_star_in(&StarContext::of_tree(&self.tree))
    }

    /// Chain-condition check against a precomputed tree context; useful
    /// when sweeping many clusters on one tree.
    pub fn satisfies_star_in(&self, ctx: &StarContext) -> Result<StarCheck> {
        let r = self.tree.vertex_count();
        assert_eq!(r, ctx.prox.len(), "context built for a different tree");
        if self.weights.iter().any(|&w| w < 0) {
            return Err(Error::NotUnloaded(
                "the chain condition applies to unloaded clusters".into(),
            ));
        }
        let mut defect = Vec::with_capacity(r);
        for a in 0..r {
            let bar: i64 = ctx.prox[a].iter().map(|&b| self.weights[b]).sum();
            if bar > self.weights[a] {
                return Err(Error::NotUnloaded(
                    "the chain condition applies to unloaded clusters".into(),
                ));
            }
            defect.push(self.weights[a] - bar);
        }
        // Depth-first walk over all chains with at least one branch; the
        // running sums cover the branch-starting points only.
        fn extend(
            ctx: &StarContext,
            defect: &[i64],
            path: &mut Vec<usize>,
            defect_sum: i64,
            p_sum: i64,
        ) -> Option<Vec<usize>> {
            let last = *path.last().expect("nonempty");
            for &next in &ctx.succ[last] {
                let d = defect_sum + defect[last];
                let p = p_sum + ctx.p_counts[last];
                let l = path.len() as i64;
                path.push(next);
                if d >= p + 2 - l {
                    return Some(path.clone());
                }
                if let Some(witness) = extend(ctx, defect, path, d, p) {
                    return Some(witness);
                }
                path.pop();
            }
            None
        }
        let mut path = Vec::with_capacity(r);
        for a in 0..r {
            path.clear();
            path.push(a);
            if let Some(witness) = extend(ctx, &defect, &mut path, 0, 0) {
                return Ok(StarCheck {
                    holds: false,
                    witness: Some(witness),
                });
            }
        }
        Ok(StarCheck {
            holds: true,
            witness: None,
        })
    }
}

/// Precomputed tree data for repeated chain-condition checks: proximity
/// lists, proximate-point counts, and the successor lists of the
/// maximal-L-shape-branch adjacency.
#[derive(Clone, Debug)]
pub struct StarContext {
    prox: Vec<Vec<usize>>,
    p_counts: Vec<i64>,
    succ: Vec<Vec<usize>>,
}

impl StarContext {
    pub fn of_tree(tree: &GriddedTree) -> Self {
        let r = tree.vertex_count();
        let pi = ProximityMatrix::of_tree(tree);
        let g = pi.pairing();
        let prox: Vec<Vec<usize>> = (0..r).map(|a| tree.proximate_to(a)).collect();
        let p_counts = pi.proximate_counts();
        let succ: Vec<Vec<usize>> = (0..r)
            .map(|a| (a + 1..r).filter(|&b| g[a][b] != 0).collect())
            .collect();
        StarContext {
            prox,
            p_counts,
            succ,
        }
    }
}

/// Outcome of the chain condition, with a violating chain on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

/// All unloaded clusters on the tree whose last exceptional coefficient
/// equals `value`: the exhaustive-search oracle behind minimality checks.
///
/// Vertices are assigned in reverse order, so each proximity sum is known
/// before the weight it bounds; the last coefficient prunes the search.
/// Exponential in general; intended for small trees.
pub fn enumerate_unloaded_clusters(tree: &GriddedTree, value: i64) -> Vec<Cluster> {
    let r = tree.vertex_count();
    if value < 0 {
        return Vec::new();
    }
    let pi = ProximityMatrix::of_tree(tree);
    let inv = pi.inverse();
    // Contribution of each vertex weight to the last exceptional coefficient.
    let rho: Vec<i64> = (0..r).map(|a| inv[a][r - 1]).collect();
    assert!(
        rho.iter().all(|&x| x >= 1),
        "enumeration needs every vertex to precede the last one"
    );
    let prox: Vec<Vec<usize>> = (0..r).map(|a| tree.proximate_to(a)).collect();
    let mut out = Vec::new();
    let mut weights = vec![0i64; r];
    fn rec(
        tree: &GriddedTree,
        rho: &[i64],
        prox: &[Vec<usize>],
        weights: &mut Vec<i64>,
        idx: isize,
        remaining: i64,
        out: &mut Vec<Cluster>,
    ) {
        if idx < 0 {
            if remaining == 0 {
                out.push(Cluster::new(tree.clone(), weights.clone()).expect("length"));
            }
            return;
        }
        let a = idx as usize;
        let bar: i64 = prox[a].iter().map(|&b| weights[b]).sum();
        let mut w = bar;
        while w * rho[a] <= remaining {
            weights[a] = w;
            rec(tree, rho, prox, weights, idx - 1, remaining - w * rho[a], out);
            w += 1;
        }
        weights[a] = 0;
    }
    rec(
        tree,
        &rho,
        &prox,
        &mut weights,
        r as isize - 1,
        value,
        &mut out,
    );
    out
}

/// The minimal unloaded cluster K_{p,q}(a,b) on T_{p,q} whose last
/// exceptional coefficient is ap + bq.
///
/// It is obtained by unloading the cluster concentrated in the last point:
/// the divisor (ap+bq) E_r pushes forward to the same complete ideal, and
/// unloading produces its unique unloaded representative.
pub fn minimal_cluster(p: u64, q: u64, a: u64, b: u64) -> Result<Cluster> {
    let tree = build_tpq_tree(p, q)?;
    let value = (a * p + b * q) as i64;
    minimal_cluster_for_value(tree, value)
}

/// Minimal unloaded cluster with last exceptional coefficient `value` on a
/// given tree (`value <= 0` yields the empty cluster).
pub fn minimal_cluster_for_value(tree: GriddedTree, value: i64) -> Result<Cluster> {
    let r = tree.vertex_count();
    let mut weights = vec![0i64; r];
    if value <= 0 {
        return Cluster::new(tree, weights);
    }
    weights[r - 1] = value;
    Ok(Cluster::new(tree, weights)?.unload())
}
