//! The Grover walk `U = (2/k) A(LD(X)) − R`, the real skew generator `K`
//! with `exp(K) = U²`, and the factorization of `U²` into commuting
//! exponentials `exp(t_i S(Y_i))` of the distance-digraph skew matrices.

use std::f64::consts::PI;

use crate::arcs::{
    build_arc_space, distance_digraphs_bfs, line_digraph_adjacency, ArcSpace,
    DistanceDigraphFamily,
};
use crate::error::{ensure_below, Error, Result};
use crate::graph::{check_distance_regular, Graph};
use crate::linalg::{
    expand_in_basis, expm_skew, symmetric_eig, Matrix, SpectralDecomposition, DEFAULT_CLUSTER_TOL,
};
use crate::spectral::{skew_basis, skew_lambda, walk_angle, SPAN_TOL};

/// Bound on algebraic identities (unitarity, generator, span residual).
pub const IDENTITY_TOL: f64 = 1e-9;
/// Bound on the end-to-end product `‖U² − Π exp(t_i S(Y_i))‖_F`.
pub const PRODUCT_TOL: f64 = 1e-8;
/// Eigenvalues of A(X) within this multiple of k of zero count as zero.
pub const SINGULAR_RTOL: f64 = 1e-8;
const WALK_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct GroverWalk {
    pub degree: usize,
    pub transition: Matrix,
}

impl GroverWalk {
    pub fn squared(&self) -> Matrix {
        &self.transition * &self.transition
    }

    pub fn arc_count(&self) -> usize {
        self.transition.rows()
    }
}

/// Builds `U` from the line digraph and, independently, as reversal times
/// coin `R((2/k) D_tᵀ D_t − I)`; the two must agree.
pub fn grover_walk(s: &ArcSpace) -> Result<GroverWalk> {
    let k = s.degree();
    if k < 2 {
        return Err(Error::validation(format!("Grover walk needs degree ≥ 2, got {k}")));
    }
    let scale = 2.0 / k as f64;
    let r = s.reversal().to_real();
    let from_line = &line_digraph_adjacency(s).to_real().scale(scale) - &r;

    let dt = s.tail_incidence().to_real();
    let coin = &(&dt.transpose() * &dt).scale(scale) - &Matrix::identity(s.len());
    let from_coin = &r * &coin;

    let gap = from_line.distance(&from_coin);
    if gap >= WALK_TOL {
        return Err(Error::consistency(format!(
            "line-digraph and coin forms of the walk differ by {gap:.3e}"
        )));
    }
    let unitarity = (&from_line.transpose() * &from_line).distance(&Matrix::identity(s.len()));
    if unitarity >= WALK_TOL {
        return Err(Error::consistency(format!("walk is not orthogonal (defect {unitarity:.3e})")));
    }
    Ok(GroverWalk {
        degree: k,
        transition: from_line,
    })
}

/// The eigenvalue of A(X) closest to zero, if it is zero within `1e−8·k`.
pub fn zero_eigenvalue(dec: &SpectralDecomposition, k: usize) -> Option<f64> {
    dec.pairs
        .iter()
        .map(|p| p.value)
        .filter(|v| v.abs() <= SINGULAR_RTOL * k as f64)
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
}

/// True iff A(X) has no zero eigenvalue.
pub fn invertibility_gate(graph: &Graph, dec: &SpectralDecomposition) -> bool {
    zero_eigenvalue(dec, graph.degree()).is_none()
}

/// Contribution of one eigenvalue of A(X) to the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contribution {
    pub lambda: f64,
    /// `arccos(λ/k) ∈ (0, π)`
    pub theta: f64,
    /// `2θ` reduced to `(−π, π)`: the principal argument of `e^{2iθ}`.
    pub angle: f64,
    /// `angle / (k sin θ)`; the generator is `−Σ coefficient · S_λ`.
    pub coefficient: f64,
}

#[derive(Debug, Clone)]
pub struct Generator {
    /// Real skew matrix with `exp(K) = U²`.
    pub matrix: Matrix,
    pub contributions: Vec<Contribution>,
    /// `‖exp(K) − U²‖_F`
    pub exp_defect: f64,
    /// `‖K − Log(U²)‖_F` against [`principal_log_orthogonal`].
    pub oracle_defect: f64,
}

/// Principal argument of `e^{2iθ}` for `θ ∈ (0, π)`, `θ ≠ π/2`.
pub fn principal_angle(theta: f64) -> f64 {
    let doubled = 2.0 * theta;
    if doubled > PI {
        doubled - 2.0 * PI
    } else {
        doubled
    }
}

/// Principal logarithm of `U²` assembled from the skew matrices `S_λ`:
/// `K = −Σ_{|λ|<k} (φ_λ / (k sin θ_λ)) S_λ`, where `θ_λ = arccos(λ/k)` and
/// `φ_λ ∈ (−π, π)` is the principal argument of `e^{2iθ_λ}`.
///
/// Since `F₊ − F₋ = i/(k sin θ)·S_λ`, `K` acts as `±iφ_λ` on the
/// `e^{±iθ_λ}` eigenspaces of `U` and as zero on the `±1` eigenspaces.
/// The result is checked against `U²` and against a logarithm computed
/// from `U²` alone.
pub fn build_generator(dec: &SpectralDecomposition, s: &ArcSpace, k: usize) -> Result<Generator> {
    if let Some(z) = zero_eigenvalue(dec, k) {
        return Err(Error::SingularAdjacency { eigenvalue: z });
    }
    let m2 = s.len();
    let mut matrix = Matrix::zeros(m2, m2);
    let mut contributions = Vec::new();
    for pair in &dec.pairs {
        let Ok(theta) = walk_angle(pair.value, k) else {
            continue;
        };
        let angle = principal_angle(theta);
        let coefficient = angle / (k as f64 * theta.sin());
        let sl = skew_lambda(pair, s)?;
        matrix = &matrix - &sl.matrix.scale(coefficient);
        contributions.push(Contribution {
            lambda: pair.value,
            theta,
            angle,
            coefficient,
        });
    }

    let squared = grover_walk(s)?.squared();
    let exp_defect = expm_skew(&matrix, 1.0)?.distance(&squared);
    ensure_below("exp(K) = U²", exp_defect, IDENTITY_TOL)?;
    let oracle_defect = matrix.distance(&principal_log_orthogonal(&squared)?);
    ensure_below("generator agrees with the principal logarithm", oracle_defect, IDENTITY_TOL)?;

    Ok(Generator {
        matrix,
        contributions,
        exp_defect,
        oracle_defect,
    })
}

/// Principal logarithm of a real orthogonal matrix `Q` without eigenvalue
/// −1, from a simultaneous diagonalization of its symmetric and skew
/// parts: `Σ_φ (φ / sin φ) P_φ W P_φ`, where `P_φ` projects onto the
/// `cos φ` eigenspace of `(Q + Qᵀ)/2`, `W = (Q − Qᵀ)/2` and `φ ∈ (0, π)`.
/// The eigenspace at `cos φ = 1` contributes nothing.
pub fn principal_log_orthogonal(q: &Matrix) -> Result<Matrix> {
    let qt = q.transpose();
    let sym = (q + &qt).scale(0.5);
    let skew = (q - &qt).scale(0.5);
    let dec = symmetric_eig(&sym, DEFAULT_CLUSTER_TOL)?;
    if let Some(p) = dec.pairs.iter().find(|p| p.value <= -1.0 + 1e-8) {
        return Err(Error::validation(format!(
            "matrix has eigenvalue -1 with multiplicity {}; no real principal logarithm",
            p.multiplicity
        )));
    }
    let n = q.rows();
    let mut out = Matrix::zeros(n, n);
    for pair in &dec.pairs {
        if pair.value >= 1.0 - 1e-8 {
            continue;
        }
        let phi = pair.value.acos();
        let block = &(&pair.projector * &skew) * &pair.projector;
        out = &out + &block.scale(phi / phi.sin());
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct FactorizationResult {
    /// `t_1, …, t_d`
    pub t: Vec<f64>,
    /// Rank of the Gram matrix of `{S(Y_1), …, S(Y_d)}`.
    pub gram_rank: usize,
    /// Residual of expanding `K` in the skew basis.
    pub residual: f64,
    /// `S(Y_1), …, S(Y_d)`
    pub skews: Vec<Matrix>,
    /// `exp(t_i S(Y_i))`
    pub factors: Vec<Matrix>,
    pub product_error: f64,
    /// Largest `‖F_i F_j − F_j F_i‖_F` among the factors.
    pub commutator_error: f64,
    pub generator: Generator,
}

impl FactorizationResult {
    pub fn product(&self) -> Matrix {
        product_of(self.factors.iter())
    }
}

pub(crate) fn product_of<'a>(mut it: impl Iterator<Item = &'a Matrix>) -> Matrix {
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, f| &acc * f)
}

/// Everything the factorization needs, computed once.
#[derive(Debug, Clone)]
pub struct WalkSetup {
    pub graph: Graph,
    pub decomposition: SpectralDecomposition,
    pub arc_space: ArcSpace,
    pub walk: GroverWalk,
    pub family: DistanceDigraphFamily,
}

/// Checks the hypotheses (distance-regular, invertible adjacency) and
/// builds the spectral data, arc space, walk and distance digraphs.
pub fn prepare(graph: &Graph) -> Result<WalkSetup> {
    if !check_distance_regular(graph).is_drg() {
        return Err(Error::NotDistanceRegular);
    }
    let decomposition = symmetric_eig(&graph.adjacency().to_real(), DEFAULT_CLUSTER_TOL)?;
    if let Some(z) = zero_eigenvalue(&decomposition, graph.degree()) {
        return Err(Error::SingularAdjacency { eigenvalue: z });
    }
    let arc_space = build_arc_space(graph);
    let walk = grover_walk(&arc_space)?;
    let family = distance_digraphs_bfs(&arc_space)?;
    Ok(WalkSetup {
        graph: graph.clone(),
        decomposition,
        arc_space,
        walk,
        family,
    })
}

/// Runs the factorization without the final bound on the product error,
/// so callers can apply their own tolerance.
pub fn factorize_setup(setup: &WalkSetup) -> Result<FactorizationResult> {
    let generator = build_generator(&setup.decomposition, &setup.arc_space, setup.graph.degree())?;
    let skews = skew_basis(&setup.family);
    let expansion = expand_in_basis(&generator.matrix, &skews)?;
    ensure_below("generator lies in the span of the skews", expansion.residual, SPAN_TOL)?;

    let factors = skews
        .iter()
        .zip(&expansion.coefficients)
        .map(|(s, &t)| expm_skew(s, t))
        .collect::<Result<Vec<_>>>()?;
    let product_error = product_of(factors.iter()).distance(&setup.walk.squared());

    let mut commutator_error: f64 = 0.0;
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            commutator_error = commutator_error.max((a * b).distance(&(b * a)));
        }
    }

    Ok(FactorizationResult {
        t: expansion.coefficients,
        gram_rank: expansion.rank,
        residual: expansion.residual,
        skews,
        factors,
        product_error,
        commutator_error,
        generator,
    })
}

/// Factors `U² = exp(t_1 S(Y_1)) ⋯ exp(t_d S(Y_d))` with product error
/// below `tol` and pairwise commuting factors.
pub fn factorize_with_tolerance(graph: &Graph, tol: f64) -> Result<FactorizationResult> {
    let res = factorize_setup(&prepare(graph)?)?;
    ensure_below("U² equals the product of exponentials", res.product_error, tol)?;
    ensure_below("factors commute", res.commutator_error, IDENTITY_TOL)?;
    Ok(res)
}

pub fn factorize(graph: &Graph) -> Result<FactorizationResult> {
    factorize_with_tolerance(graph, PRODUCT_TOL)
}

/// At most two factors and a product error below 1e−8. Meant for
/// distance-regular graphs of diameter two.
pub fn verify_strongly_regular_claim(graph: &Graph, res: &FactorizationResult) -> bool {
    graph.diameter() == 2 && res.t.len() <= 2 && res.product_error < PRODUCT_TOL
}
