//! Regular graphs, the named families used throughout, graph distances and
//! recognition of distance-regularity by direct counting.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A simple, connected, k-regular undirected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    degree: usize,
    adjacency: IntMatrix,
    family: Option<String>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, repeated
    /// edges, out-of-range endpoints, irregular degree and disconnection.
    pub fn from_edges(n: usize, edges: &[[usize; 2]]) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("graph must have at least one vertex"));
        }
        let mut adjacency = IntMatrix::zeros(n, n);
        let mut seen = BTreeSet::new();
        for &[a, b] in edges {
            if a >= n || b >= n {
                return Err(Error::validation(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::validation(format!("self-loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::validation(format!("duplicate edge ({a}, {b})")));
            }
            adjacency[(a, b)] = 1;
            adjacency[(b, a)] = 1;
        }
        Self::from_adjacency(adjacency)
    }

    pub fn from_adjacency(adjacency: IntMatrix) -> Result<Self> {
        if !adjacency.is_square() {
            return Err(Error::validation("adjacency matrix must be square"));
        }
        let n = adjacency.rows();
        for u in 0..n {
            if adjacency[(u, u)] != 0 {
                return Err(Error::validation(format!("self-loop at vertex {u}")));
            }
            for v in 0..n {
                let x = adjacency[(u, v)];
                if x != 0 && x != 1 {
                    return Err(Error::validation(format!("adjacency entry ({u}, {v}) is {x}")));
                }
                if x != adjacency[(v, u)] {
                    return Err(Error::validation(format!("adjacency not symmetric at ({u}, {v})")));
                }
            }
        }
        let degrees = adjacency.row_sums();
        let degree = degrees[0];
        if let Some(v) = degrees.iter().position(|&d| d != degree) {
            return Err(Error::validation(format!(
                "graph is not regular: vertex 0 has degree {degree}, vertex {v} has degree {}",
                degrees[v]
            )));
        }
        bfs_distances(&adjacency)?;
        Ok(Self {
            n,
            degree: degree as usize,
            adjacency,
            family: None,
        })
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = Some(family.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn family(&self) -> Option<&str> {
        self.family.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[(u, v)] == 1
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adjacency[(u, v)] == 1)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push([u, v]);
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.degree / 2
    }

    /// Hop-count distance matrix.
    pub fn distances(&self) -> IntMatrix {
        bfs_distances(&self.adjacency).expect("connectivity checked at construction")
    }

    pub fn diameter(&self) -> usize {
        self.distances().as_slice().iter().copied().max().unwrap_or(0) as usize
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)
            .map_err(|e| Error::validation(format!("malformed graph JSON: {e}")))?;
        let g = Self::from_edges(file.n, &file.edges)?;
        Ok(match file.family {
            Some(f) => g.with_family(f),
            None => g,
        })
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            edges: self.edges(),
            family: self.family.clone(),
        };
        serde_json::to_string(&file).expect("graph file serializes")
    }
}

/// On-disk graph format: vertex count plus each undirected edge once.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
}

/// All-pairs BFS. Fails on the first unreachable pair.
pub fn bfs_distances(adjacency: &IntMatrix) -> Result<IntMatrix> {
    let n = adjacency.rows();
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| adjacency[(u, v)] != 0).collect())
        .collect();
    let mut dist = IntMatrix::from_fn(n, n, |_, _| -1);
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist[(s, s)] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &neighbors[u] {
                if dist[(s, v)] < 0 {
                    dist[(s, v)] = dist[(s, u)] + 1;
                    queue.push_back(v);
                }
            }
        }
        if let Some(t) = (0..n).find(|&t| dist[(s, t)] < 0) {
            return Err(Error::Disconnected { from: s, to: t });
        }
    }
    Ok(dist)
}

/// The graph families available by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Cycle,
    Hypercube,
    Petersen,
    CompleteBipartite,
    Prism,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Complete,
        Family::Cycle,
        Family::Hypercube,
        Family::Petersen,
        Family::CompleteBipartite,
        Family::Prism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Hypercube => "hypercube",
            Family::Petersen => "petersen",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Prism => "prism",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                Error::validation(format!(
                    "unknown family {s:?} (expected one of: {})",
                    Family::ALL.map(Family::name).join(", ")
                ))
            })
    }
}

/// Builds a named graph.
///
/// Vertex orderings:
/// - `complete [n]`, n ≥ 2: vertices 0..n.
/// - `cycle [n]`, n ≥ 3: i ~ i+1 mod n.
/// - `hypercube [d]`, d ≥ 1: vertex i is the binary string of i, so the
///   order is lexicographic; adjacent when the strings differ in one bit.
/// - `petersen []`: outer 5-cycle 0..5, spokes i ~ i+5, inner pentagram
///   5+i ~ 5+(i+2 mod 5).
/// - `complete_bipartite [a]` or `[a, a]`, a ≥ 1: parts 0..a and a..2a.
///   Unequal parts are rejected as irregular.
/// - `prism []` or `[n]`, n ≥ 3 (default 3): C_n □ K_2, outer cycle 0..n,
///   inner cycle n..2n, spokes i ~ i+n.
pub fn build_family(family: Family, params: &[i64]) -> Result<Graph> {
    let bad = |msg: &str| Error::validation(format!("{family}: {msg} (got params {params:?})"));
    let one = |min: i64| -> Result<usize> {
        match params {
            [x] if *x >= min => Ok(*x as usize),
            _ => Err(bad(&format!("expects a single integer ≥ {min}"))),
        }
    };

    let (n, edges): (usize, Vec<[usize; 2]>) = match family {
        Family::Complete => {
            let n = one(2)?;
            let mut e = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    e.push([u, v]);
                }
            }
            (n, e)
        }
        Family::Cycle => {
            let n = one(3)?;
            (n, (0..n).map(|i| [i, (i + 1) % n]).collect())
        }
        Family::Hypercube => {
            let d = one(1)?;
            if d > 16 {
                return Err(bad("dimension above 16 is not supported"));
            }
            let n = 1usize << d;
            let mut e = Vec::new();
            for u in 0..n {
                for bit in 0..d {
                    let v = u ^ (1 << bit);
                    if u < v {
                        e.push([u, v]);
                    }
                }
            }
            (n, e)
        }
        Family::Petersen => {
            if !params.is_empty() {
                return Err(bad("takes no parameters"));
            }
            let mut e = Vec::new();
            for i in 0..5 {
                e.push([i, (i + 1) % 5]);
                e.push([i, i + 5]);
                e.push([5 + i, 5 + (i + 2) % 5]);
            }
            (10, e)
        }
        Family::CompleteBipartite => {
            let a = match params {
                [a] if *a >= 1 => *a as usize,
                [a, b] if *a >= 1 && a == b => *a as usize,
                [a, b] if *a >= 1 && *b >= 1 => {
                    return Err(bad("unequal parts give an irregular graph"))
                }
                _ => return Err(bad("expects [a] or [a, a] with a ≥ 1")),
            };
            let mut e = Vec::new();
            for u in 0..a {
                for v in a..2 * a {
                    e.push([u, v]);
                }
            }
            (2 * a, e)
        }
        Family::Prism => {
            let n = if params.is_empty() { 3 } else { one(3)? };
            let mut e = Vec::new();
            for i in 0..n {
                e.push([i, (i + 1) % n]);
                e.push([n + i, n + (i + 1) % n]);
                e.push([i, n + i]);
            }
            (2 * n, e)
        }
    };
    Ok(Graph::from_edges(n, &edges)?.with_family(family.name()))
}

/// Distance matrices `A_0..A_d` of a connected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrixSet {
    pub matrices: Vec<IntMatrix>,
}

impl DistanceMatrixSet {
    pub fn diameter(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn get(&self, i: usize) -> &IntMatrix {
        &self.matrices[i]
    }
}

pub fn distance_matrices(graph: &Graph) -> DistanceMatrixSet {
    let dist = graph.distances();
    let d = graph.diameter();
    let n = graph.n();
    let matrices = (0..=d)
        .map(|i| IntMatrix::from_fn(n, n, |u, v| i64::from(dist[(u, v)] == i as i64)))
        .collect();
    DistanceMatrixSet { matrices }
}

/// Intersection numbers `p[i][j][ℓ]` for `0 ≤ i, j, ℓ ≤ d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionNumbers {
    diameter: usize,
    table: Vec<i64>,
}

impl IntersectionNumbers {
    pub(crate) fn new(diameter: usize, table: Vec<i64>) -> Self {
        assert_eq!(table.len(), (diameter + 1).pow(3));
        Self { diameter, table }
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> i64 {
        let s = self.diameter + 1;
        self.table[(i * s + j) * s + l]
    }

    /// `{b_0, …, b_{d−1}; c_1, …, c_d}` with `b_i = p[1][i+1][i]` and
    /// `c_i = p[1][i−1][i]`.
    pub fn intersection_array(&self) -> (Vec<i64>, Vec<i64>) {
        let d = self.diameter;
        let b = (0..d).map(|i| self.get(1, i + 1, i)).collect();
        let c = (1..=d).map(|i| self.get(1, i - 1, i)).collect();
        (b, c)
    }
}

/// A pair of vertex pairs at the same distance whose counts disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DrgWitness {
    pub distance: usize,
    pub reference: (usize, usize),
    pub violating: (usize, usize),
    pub i: usize,
    pub j: usize,
    pub expected: i64,
    pub found: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DrgVerdict {
    DistanceRegular(IntersectionNumbers),
    NotDistanceRegular(DrgWitness),
}

impl DrgVerdict {
    pub fn is_drg(&self) -> bool {
        matches!(self, DrgVerdict::DistanceRegular(_))
    }

    pub fn numbers(&self) -> Option<&IntersectionNumbers> {
        match self {
            DrgVerdict::DistanceRegular(p) => Some(p),
            DrgVerdict::NotDistanceRegular(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&DrgWitness> {
        match self {
            DrgVerdict::DistanceRegular(_) => None,
            DrgVerdict::NotDistanceRegular(w) => Some(w),
        }
    }
}

/// Counts, for every ordered pair (u, v), the vertices at distance i from u
/// and j from v, and checks the counts only depend on dist(u, v).
pub fn check_distance_regular(graph: &Graph) -> DrgVerdict {
    match intersection_table(&graph.distances()) {
        Ok((d, table)) => DrgVerdict::DistanceRegular(IntersectionNumbers::new(d, table)),
        Err(w) => DrgVerdict::NotDistanceRegular(w),
    }
}

/// Brute-force intersection numbers of any finite distance matrix
/// (symmetric or not). Shared with the line-digraph code.
pub(crate) fn intersection_table(
    dist: &IntMatrix,
) -> std::result::Result<(usize, Vec<i64>), DrgWitness> {
    let n = dist.rows();
    let d = dist.as_slice().iter().copied().max().unwrap_or(0) as usize;
    let s = d + 1;
    let mut table = vec![0i64; s * s * s];
    let mut reference: Vec<Option<(usize, usize)>> = vec![None; s];
    let mut counts = vec![0i64; s * s];

    for u in 0..n {
        for v in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for w in 0..n {
                let i = dist[(u, w)] as usize;
                let j = dist[(w, v)] as usize;
                counts[i * s + j] += 1;
            }
            let l = dist[(u, v)] as usize;
            match reference[l] {
                None => {
                    reference[l] = Some((u, v));
                    for i in 0..s {
                        for j in 0..s {
                            table[(i * s + j) * s + l] = counts[i * s + j];
                        }
                    }
                }
                Some(r) => {
                    for i in 0..s {
                        for j in 0..s {
                            let expected = table[(i * s + j) * s + l];
                            let found = counts[i * s + j];
                            if expected != found {
                                return Err(DrgWitness {
                                    distance: l,
                                    reference: r,
                                    violating: (u, v),
                                    i,
                                    j,
                                    expected,
                                    found,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((d, table))
}

/// Checks `A_i A_j = Σ_ℓ p[i][j][ℓ] A_ℓ` exactly for all i, j.
pub fn verify_scheme_product(dm: &DistanceMatrixSet, p: &IntersectionNumbers) -> bool {
    let d = dm.diameter();
    if p.diameter() != d {
        return false;
    }
    let n = dm.get(0).rows();
    for i in 0..=d {
        for j in 0..=d {
            let lhs = dm.get(i) * dm.get(j);
            let mut rhs = IntMatrix::zeros(n, n);
            for l in 0..=d {
                rhs = &rhs + &dm.get(l).scale(p.get(i, j, l));
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(f: Family, p: &[i64]) -> Graph {
        build_family(f, p).unwrap()
    }

    #[test]
    fn family_sizes() {
        let k3 = family(Family::Complete, &[3]);
        assert_eq!((k3.n(), k3.degree(), k3.edge_count()), (3, 2, 3));
        let p = family(Family::Petersen, &[]);
        assert_eq!((p.n(), p.degree(), p.edges().len()), (10, 3, 15));
        let q3 = family(Family::Hypercube, &[3]);
        assert_eq!((q3.n(), q3.degree(), q3.edges().len()), (8, 3, 12));
        let prism = family(Family::Prism, &[]);
        assert_eq!((prism.n(), prism.degree()), (6, 3));
        let k33 = family(Family::CompleteBipartite, &[3, 3]);
        assert_eq!((k33.n(), k33.degree()), (6, 3));
    }

    #[test]
    fn invalid_family_params() {
        assert!(build_family(Family::Complete, &[1]).is_err());
        assert!(build_family(Family::Cycle, &[2]).is_err());
        assert!(build_family(Family::Petersen, &[3]).is_err());
        assert!(build_family(Family::CompleteBipartite, &[2, 3]).is_err());
        assert!(build_family(Family::Hypercube, &[]).is_err());
        assert!("wheel".parse::<Family>().is_err());
        assert_eq!("complete_bipartite".parse::<Family>().unwrap(), Family::CompleteBipartite);
    }

    #[test]
    fn distances() {
        let k3 = family(Family::Complete, &[3]);
        let d = k3.distances();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(d[(u, v)], i64::from(u != v));
            }
        }
        assert_eq!(family(Family::Petersen, &[]).diameter(), 2);
        assert_eq!(family(Family::Hypercube, &[3]).distances()[(0b000, 0b111)], 3);
    }

    #[test]
    fn distance_matrix_sets() {
        let dm = distance_matrices(&family(Family::Complete, &[3]));
        assert_eq!(dm.diameter(), 1);
        assert_eq!(dm.get(0), &IntMatrix::identity(3));
        assert_eq!(dm.get(1), &(&IntMatrix::ones(3, 3) - &IntMatrix::identity(3)));

        let p = family(Family::Petersen, &[]);
        let dm = distance_matrices(&p);
        assert_eq!(dm.diameter(), 2);
        assert_eq!(dm.get(1), p.adjacency());
        let rest = &(&IntMatrix::ones(10, 10) - &IntMatrix::identity(10)) - p.adjacency();
        assert_eq!(dm.get(2), &rest);

        let dm = distance_matrices(&family(Family::Hypercube, &[3]));
        let sums: Vec<i64> = dm.matrices.iter().map(|a| a.row_sums()[0]).collect();
        assert_eq!(sums, vec![1, 3, 3, 1]);
        for a in &dm.matrices {
            assert!(a.row_sums().iter().all(|&s| s == a.row_sums()[0]));
        }
    }

    #[test]
    fn recognizes_distance_regular() {
        let v = check_distance_regular(&family(Family::Complete, &[4]));
        assert_eq!(v.numbers().unwrap().get(1, 1, 1), 2);

        let v = check_distance_regular(&family(Family::Petersen, &[]));
        let p = v.numbers().unwrap();
        assert_eq!(p.get(1, 1, 1), 0);
        assert_eq!(p.get(1, 1, 2), 1);
        assert_eq!(p.intersection_array(), (vec![3, 2], vec![1, 1]));

        let q3 = check_distance_regular(&family(Family::Hypercube, &[3]));
        assert_eq!(q3.numbers().unwrap().intersection_array(), (vec![3, 2, 1], vec![1, 2, 3]));
    }

    #[test]
    fn prism_witness() {
        let v = check_distance_regular(&family(Family::Prism, &[]));
        let w = v.witness().expect("prism is not distance-regular");
        assert_eq!(w.distance, 1);
        assert_eq!((w.i, w.j), (1, 1));
        assert_eq!((w.expected, w.found), (1, 0));
        assert_eq!(w.reference, (0, 1));
        assert_eq!(w.violating, (0, 3));
    }

    #[test]
    fn scheme_products() {
        let k3 = family(Family::Complete, &[3]);
        let p = check_distance_regular(&k3);
        let p = p.numbers().unwrap();
        assert_eq!((p.get(1, 1, 0), p.get(1, 1, 1)), (2, 1));
        assert!(verify_scheme_product(&distance_matrices(&k3), p));

        let pet = family(Family::Petersen, &[]);
        let v = check_distance_regular(&pet);
        let p = v.numbers().unwrap();
        assert_eq!((p.get(1, 1, 0), p.get(1, 1, 1), p.get(1, 1, 2)), (3, 0, 1));
        assert!(verify_scheme_product(&distance_matrices(&pet), p));

        let q3 = family(Family::Hypercube, &[3]);
        let v = check_distance_regular(&q3);
        let p = v.numbers().unwrap();
        assert_eq!((0..=3).map(|l| p.get(1, 2, l)).collect::<Vec<_>>(), vec![0, 2, 0, 3]);
        assert!(verify_scheme_product(&distance_matrices(&q3), p));
    }

    #[test]
    fn json_rejections() {
        assert!(Graph::from_json(r#"{"n": 3, "edges": [[0,1],[1,2],[2,0]]}"#).is_ok());
        let cases = [
            r#"{"n": 3, "edges": [[0,1],[1,0],[1,2],[2,0]]}"#,
            r#"{"n": 3, "edges": [[0,0],[1,2]]}"#,
            r#"{"n": 3, "edges": [[0,1],[1,3]]}"#,
            r#"{"n": 4, "edges": [[0,1],[1,2],[2,3]]}"#,
            r#"{"n": 3, "edges": [[0,1],"#,
        ];
        for c in cases {
            assert!(matches!(Graph::from_json(c), Err(Error::Validation(_))), "{c}");
        }
        let two_triangles = r#"{"n": 6, "edges": [[0,1],[1,2],[2,0],[3,4],[4,5],[5,3]]}"#;
        assert!(matches!(
            Graph::from_json(two_triangles),
            Err(Error::Disconnected { from: 0, to: 3 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = family(Family::Petersen, &[]);
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }
}
