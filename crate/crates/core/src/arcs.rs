//! Arc-level structure of a regular graph: incidence matrices, arc reversal,
//! the line digraph, its distance digraphs and their skew-adjacency
//! matrices. Everything here is exact integer arithmetic.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{intersection_table, DistanceMatrixSet, DrgVerdict, Graph};
use crate::linalg::IntMatrix;

/// A directed copy `(tail, head)` of an edge.
pub type Arc = (usize, usize);

/// The arcs of a graph, sorted by `(tail, head)`, with the tail and head
/// incidence matrices and the arc-reversal permutation.
#[derive(Debug, Clone)]
pub struct ArcSpace {
    graph: Graph,
    arcs: Vec<Arc>,
    index: BTreeMap<Arc, usize>,
    tail: IntMatrix,
    head: IntMatrix,
    reversal: IntMatrix,
}

pub fn build_arc_space(graph: &Graph) -> ArcSpace {
    let mut arcs = Vec::with_capacity(2 * graph.edge_count());
    for u in 0..graph.n() {
        for v in graph.neighbors(u) {
            arcs.push((u, v));
        }
    }
    let index: BTreeMap<Arc, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let n = graph.n();
    let m2 = arcs.len();
    let tail = IntMatrix::from_fn(n, m2, |u, e| i64::from(arcs[e].0 == u));
    let head = IntMatrix::from_fn(n, m2, |u, e| i64::from(arcs[e].1 == u));
    let reversal = IntMatrix::from_fn(m2, m2, |e, f| {
        let (a, b) = arcs[e];
        i64::from(arcs[f] == (b, a))
    });
    ArcSpace {
        graph: graph.clone(),
        arcs,
        index,
        tail,
        head,
        reversal,
    }
}

impl ArcSpace {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn index_of(&self, arc: Arc) -> Option<usize> {
        self.index.get(&arc).copied()
    }

    pub fn degree(&self) -> usize {
        self.graph.degree()
    }

    /// `D_t`: vertex-by-arc, 1 where the vertex is the arc's tail.
    pub fn tail_incidence(&self) -> &IntMatrix {
        &self.tail
    }

    /// `D_h`: vertex-by-arc, 1 where the vertex is the arc's head.
    pub fn head_incidence(&self) -> &IntMatrix {
        &self.head
    }

    /// `R`: maps arc (a, b) to (b, a).
    pub fn reversal(&self) -> &IntMatrix {
        &self.reversal
    }
}

/// Outcome of checking the four incidence identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncidenceReport {
    /// `D_t R = D_h`
    pub tail_reversal_is_head: bool,
    /// `D_t D_tᵀ = D_h D_hᵀ = kI`
    pub incidence_grams_are_degree: bool,
    /// `D_t D_hᵀ = D_h D_tᵀ = A(X)`
    pub cross_products_are_adjacency: bool,
    /// `D_hᵀ D_t = A(LD(X))`
    pub head_tail_is_line_digraph: bool,
}

impl IncidenceReport {
    pub fn all(&self) -> bool {
        self.tail_reversal_is_head
            && self.incidence_grams_are_degree
            && self.cross_products_are_adjacency
            && self.head_tail_is_line_digraph
    }
}

pub fn verify_incidence_identities(s: &ArcSpace) -> IncidenceReport {
    let dt = s.tail_incidence();
    let dh = s.head_incidence();
    let n = s.graph.n();
    let k_identity = IntMatrix::identity(n).scale(s.degree() as i64);
    let adjacency = s.graph.adjacency();
    IncidenceReport {
        tail_reversal_is_head: &(dt * s.reversal()) == dh,
        incidence_grams_are_degree: (dt * &dt.transpose()) == k_identity
            && (dh * &dh.transpose()) == k_identity,
        cross_products_are_adjacency: &(dt * &dh.transpose()) == adjacency
            && &(dh * &dt.transpose()) == adjacency,
        head_tail_is_line_digraph: (&dh.transpose() * dt) == line_digraph_adjacency(s),
    }
}

/// Adjacency of the line digraph from the rule (a, b) → (c, d) iff b = c.
pub fn line_digraph_adjacency(s: &ArcSpace) -> IntMatrix {
    let m2 = s.len();
    IntMatrix::from_fn(m2, m2, |e, f| i64::from(s.arcs[e].1 == s.arcs[f].0))
}

/// Distance in the line digraph from `from` to `to`, read off graph
/// distances: `dist(b, c) − 1` when the arcs coincide, `dist(b, c) + 1`
/// otherwise, where `from = (a, b)` and `to = (c, d)`.
pub fn ld_distance_formula(s: &ArcSpace, dist: &IntMatrix, from: Arc, to: Arc) -> Result<i64> {
    for arc in [from, to] {
        if s.index_of(arc).is_none() {
            return Err(Error::validation(format!("({}, {}) is not an arc", arc.0, arc.1)));
        }
    }
    let d = dist[(from.1, to.0)];
    Ok(if from == to { d - 1 } else { d + 1 })
}

/// All-pairs BFS distances in the line digraph.
pub fn line_digraph_distances(s: &ArcSpace) -> Result<IntMatrix> {
    let m2 = s.len();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); m2];
    for (e, &(_, b)) in s.arcs.iter().enumerate() {
        out_arcs[e] = s.graph.neighbors(b).map(|c| s.index[&(b, c)]).collect();
    }
    let mut dist = IntMatrix::from_fn(m2, m2, |_, _| -1);
    let mut queue = VecDeque::new();
    for src in 0..m2 {
        dist[(src, src)] = 0;
        queue.push_back(src);
        while let Some(e) = queue.pop_front() {
            for &f in &out_arcs[e] {
                if dist[(src, f)] < 0 {
                    dist[(src, f)] = dist[(src, e)] + 1;
                    queue.push_back(f);
                }
            }
        }
        if let Some(t) = (0..m2).find(|&t| dist[(src, t)] < 0) {
            let (a, b) = s.arcs[src];
            let (c, d) = s.arcs[t];
            return Err(Error::consistency(format!(
                "arc ({c}, {d}) unreachable from ({a}, {b}) in the line digraph"
            )));
        }
    }
    Ok(dist)
}

/// Distance digraphs `Y_0..Y_{d+1}` of the line digraph: adjacency and
/// skew-adjacency matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceDigraphFamily {
    pub adjacency: Vec<IntMatrix>,
    pub skews: Vec<IntMatrix>,
}

impl DistanceDigraphFamily {
    pub fn from_adjacency(adjacency: Vec<IntMatrix>) -> Self {
        let skews = adjacency.iter().map(|a| a - &a.transpose()).collect();
        Self { adjacency, skews }
    }

    /// Diameter d of the underlying graph; the family has d + 2 members.
    pub fn graph_diameter(&self) -> usize {
        self.adjacency.len() - 2
    }

    /// Line-digraph distance matrix recovered from the partition.
    pub fn distances(&self) -> IntMatrix {
        let m2 = self.adjacency[0].rows();
        IntMatrix::from_fn(m2, m2, |u, v| {
            self.adjacency
                .iter()
                .position(|a| a[(u, v)] == 1)
                .map_or(-1, |i| i as i64)
        })
    }

    /// `Σ A(Y_i) = J`
    pub fn sums_to_all_ones(&self) -> bool {
        let m2 = self.adjacency[0].rows();
        let sum = self
            .adjacency
            .iter()
            .fold(IntMatrix::zeros(m2, m2), |acc, a| &acc + a);
        sum == IntMatrix::ones(m2, m2)
    }

    /// `S(Y_0) = 0` and `Σ S(Y_i) = 0`: the concrete linear dependence.
    pub fn skews_dependent(&self) -> bool {
        let m2 = self.skews[0].rows();
        let sum = self.skews.iter().fold(IntMatrix::zeros(m2, m2), |acc, s| &acc + s);
        self.skews[0].is_zero() && sum.is_zero()
    }
}

/// Distance digraphs by BFS in the line digraph; indices `0..=d+1` where d
/// is the diameter of the graph.
pub fn distance_digraphs_bfs(s: &ArcSpace) -> Result<DistanceDigraphFamily> {
    let dist = line_digraph_distances(s)?;
    let d = s.graph.diameter();
    let top = dist.as_slice().iter().copied().max().unwrap_or(0) as usize;
    if top > d + 1 {
        return Err(Error::consistency(format!(
            "line digraph has distance {top} but graph diameter is {d}"
        )));
    }
    let m2 = s.len();
    let adjacency = (0..=d + 1)
        .map(|i| IntMatrix::from_fn(m2, m2, |u, v| i64::from(dist[(u, v)] == i as i64)))
        .collect();
    Ok(DistanceDigraphFamily::from_adjacency(adjacency))
}

/// Distance digraphs from the distance matrices of a distance-regular
/// graph: `A(Y_0) = I`, `A(Y_i) = D_hᵀ A_{i−1} D_t` for `i ≥ 1`, with `I`
/// subtracted at `i = 2`.
pub fn distance_digraphs_formula(
    dm: &DistanceMatrixSet,
    s: &ArcSpace,
    verdict: &DrgVerdict,
) -> Result<DistanceDigraphFamily> {
    if !verdict.is_drg() {
        return Err(Error::NotDistanceRegular);
    }
    if dm.get(0).rows() != s.graph.n() {
        return Err(Error::validation("distance matrices and arc space disagree on vertex count"));
    }
    let m2 = s.len();
    let identity = IntMatrix::identity(m2);
    let dh_t = s.head.transpose();
    let mut adjacency = vec![identity.clone()];
    for i in 1..=dm.diameter() + 1 {
        let a = &(&dh_t * dm.get(i - 1)) * &s.tail;
        adjacency.push(if i == 2 { &a - &identity } else { a });
    }
    Ok(DistanceDigraphFamily::from_adjacency(adjacency))
}

/// Intersection numbers `m[i][j][ℓ]` of the line digraph, `0 ≤ i,j,ℓ ≤ d+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphIntersectionNumbers {
    size: usize,
    table: Vec<i64>,
}

impl DigraphIntersectionNumbers {
    pub fn get(&self, i: usize, j: usize, l: usize) -> i64 {
        self.table[(i * self.size + j) * self.size + l]
    }

    /// Number of distance classes (d + 2).
    pub fn classes(&self) -> usize {
        self.size
    }

    pub fn is_symmetric(&self) -> bool {
        let s = self.size;
        (0..s).all(|i| (0..s).all(|j| (0..s).all(|l| self.get(i, j, l) == self.get(j, i, l))))
    }
}

/// Brute-force intersection numbers of the line digraph. Fails if the
/// counts are not constant on a distance class or are not symmetric in
/// their first two indices.
pub fn digraph_intersection_numbers(
    fam: &DistanceDigraphFamily,
) -> Result<DigraphIntersectionNumbers> {
    let dist = fam.distances();
    let (top, table) = intersection_table(&dist).map_err(|w| {
        Error::consistency(format!(
            "line digraph is not distance-regular: arcs #{} -> #{} and #{} -> #{} \
             (distance {}) have {} vs {} arcs at distances ({}, {})",
            w.reference.0, w.reference.1, w.violating.0, w.violating.1, w.distance,
            w.expected, w.found, w.i, w.j
        ))
    })?;
    // Pad to d + 2 classes if the top distance happened not to occur.
    let size = fam.adjacency.len();
    let found = top + 1;
    let mut padded = vec![0i64; size * size * size];
    for i in 0..found {
        for j in 0..found {
            for l in 0..found {
                padded[(i * size + j) * size + l] = table[(i * found + j) * found + l];
            }
        }
    }
    let m = DigraphIntersectionNumbers {
        size,
        table: padded,
    };
    if !m.is_symmetric() {
        return Err(Error::consistency(
            "line-digraph intersection numbers are not symmetric in (i, j)",
        ));
    }
    Ok(m)
}

/// True iff every pair of skew-adjacency matrices in the family commutes.
pub fn check_skew_commuting(fam: &DistanceDigraphFamily) -> bool {
    let s = &fam.skews;
    (0..s.len()).all(|i| ((i + 1)..s.len()).all(|j| (&s[i] * &s[j]) == (&s[j] * &s[i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, check_distance_regular, distance_matrices, Family};

    fn space(f: Family, p: &[i64]) -> ArcSpace {
        build_arc_space(&build_family(f, p).unwrap())
    }

    #[test]
    fn arc_counts_and_order() {
        let k3 = space(Family::Complete, &[3]);
        assert_eq!(k3.arcs(), &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
        assert_eq!(space(Family::Petersen, &[]).len(), 30);
        assert_eq!(space(Family::Hypercube, &[3]).len(), 24);
    }

    #[test]
    fn incidence_identities_hold() {
        for (f, p) in [
            (Family::Complete, vec![3]),
            (Family::Petersen, vec![]),
            (Family::Hypercube, vec![3]),
            (Family::Prism, vec![]),
        ] {
            let s = space(f, &p);
            assert!(verify_incidence_identities(&s).all(), "{f}");
            let r = s.reversal();
            assert_eq!(&(r * r), &IntMatrix::identity(s.len()));
            assert!(r.is_symmetric());
        }
    }

    #[test]
    fn line_digraph_rule() {
        let s = space(Family::Complete, &[3]);
        let a = line_digraph_adjacency(&s);
        assert!(a.row_sums().iter().all(|&x| x == 2));
        assert!(a.col_sums().iter().all(|&x| x == 2));
        let i = |arc| s.index_of(arc).unwrap();
        assert_eq!(a[(i((0, 1)), i((1, 2)))], 1);
        assert_eq!(a[(i((0, 1)), i((1, 0)))], 1);
        assert_eq!(a[(i((0, 1)), i((0, 2)))], 0);

        let p = space(Family::Petersen, &[]);
        assert!(line_digraph_adjacency(&p).row_sums().iter().all(|&x| x == 3));
    }

    #[test]
    fn distance_formula_examples() {
        let s = space(Family::Complete, &[3]);
        let dist = s.graph().distances();
        assert_eq!(ld_distance_formula(&s, &dist, (0, 1), (0, 1)).unwrap(), 0);
        assert_eq!(ld_distance_formula(&s, &dist, (0, 1), (1, 0)).unwrap(), 1);
        assert!(ld_distance_formula(&s, &dist, (0, 0), (1, 0)).is_err());

        let p = space(Family::Petersen, &[]);
        let dist = p.graph().distances();
        let bfs = line_digraph_distances(&p).unwrap();
        // (0,1) then (3,2): dist(1, 3) = 2 in the Petersen graph.
        assert_eq!(dist[(1, 3)], 2);
        let got = ld_distance_formula(&p, &dist, (0, 1), (3, 2)).unwrap();
        assert_eq!(got, 3);
        assert_eq!(bfs[(p.index_of((0, 1)).unwrap(), p.index_of((3, 2)).unwrap())], 3);
    }

    #[test]
    fn triangle_family() {
        let s = space(Family::Complete, &[3]);
        let fam = distance_digraphs_bfs(&s).unwrap();
        assert_eq!(fam.adjacency.len(), 3);
        assert_eq!(fam.adjacency[1], line_digraph_adjacency(&s));
        let total: i64 = fam.adjacency.iter().map(|a| a.as_slice().iter().sum::<i64>()).sum();
        assert_eq!(total, 36);
        assert!(fam.sums_to_all_ones());
        assert!(fam.skews_dependent());
    }

    #[test]
    fn formula_matches_bfs() {
        for (f, p) in [
            (Family::Complete, vec![3]),
            (Family::Petersen, vec![]),
            (Family::Hypercube, vec![3]),
        ] {
            let g = build_family(f, &p).unwrap();
            let s = build_arc_space(&g);
            let verdict = check_distance_regular(&g);
            let formula = distance_digraphs_formula(&distance_matrices(&g), &s, &verdict).unwrap();
            assert_eq!(formula.adjacency[1], line_digraph_adjacency(&s));
            assert_eq!(formula, distance_digraphs_bfs(&s).unwrap(), "{f}");
        }
    }

    #[test]
    fn formula_refuses_non_drg() {
        let g = build_family(Family::Prism, &[]).unwrap();
        let s = build_arc_space(&g);
        let r = distance_digraphs_formula(&distance_matrices(&g), &s, &check_distance_regular(&g));
        assert_eq!(r, Err(Error::NotDistanceRegular));
    }

    #[test]
    fn digraph_numbers() {
        let s = space(Family::Complete, &[3]);
        let m = digraph_intersection_numbers(&distance_digraphs_bfs(&s).unwrap()).unwrap();
        assert_eq!(m.get(1, 1, 2), 1);
        for j in 0..m.classes() {
            for l in 0..m.classes() {
                assert_eq!(m.get(0, j, l), i64::from(j == l));
            }
        }
        let p = space(Family::Petersen, &[]);
        let m = digraph_intersection_numbers(&distance_digraphs_bfs(&p).unwrap()).unwrap();
        assert!(m.is_symmetric());
    }

    #[test]
    fn skews_commute() {
        for (f, p) in [
            (Family::Complete, vec![3]),
            (Family::Petersen, vec![]),
            (Family::Hypercube, vec![3]),
        ] {
            let fam = distance_digraphs_bfs(&space(f, &p)).unwrap();
            assert!(check_skew_commuting(&fam), "{f}");
        }
    }
}
