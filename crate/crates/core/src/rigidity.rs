//! Linear deformations, non-rigidity witnesses and the rigidity classifier.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::basis::structure_constants;
use crate::cohomology::{h2_nil_graded, H2NilReport};
use crate::error::{Error, Result};
use crate::graph::{analyze, enumerate_graphs, SimpleGraph};
use crate::lie::{AlternatingMap, GradedLieAlgebra, LieAlgebra};
use crate::linalg::{Rational, SparseVec, Subspace};

/// Largest graph order accepted by [`sweep`].
pub const MAX_SWEEP_ORDER: usize = 5;
/// Largest step accepted by [`sweep`].
pub const MAX_SWEEP_STEP: usize = 4;

/// The 2-cochain `sigma(a1, a2) = y`, vanishing on all other basis pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationCocycle {
    pub a1: usize,
    pub a2: usize,
    pub y: SparseVec,
    pub sigma: AlternatingMap,
}

/// The pencil `mu_t = mu + t sigma`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedAlgebra {
    pub base: LieAlgebra,
    pub sigma: AlternatingMap,
}

impl DeformedAlgebra {
    pub fn new(base: LieAlgebra, sigma: AlternatingMap) -> Result<Self> {
        if base.dim() != sigma.dim() {
            return Err(Error::DimensionMismatch { expected: base.dim(), found: sigma.dim() });
        }
        Ok(DeformedAlgebra { base, sigma })
    }

    /// `mu_t` at a concrete parameter.
    pub fn at(&self, t: &Rational) -> LieAlgebra {
        let map = self.base.structure().add_scaled(&self.sigma, t).expect("dimensions agree");
        LieAlgebra::from_map(map)
    }
}

/// First basis triple on which a coefficient of the Jacobi identity of
/// `mu + t sigma` fails; `order` is the power of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeformViolation {
    pub order: usize,
    pub triple: (usize, usize, usize),
}

/// Checks the `t` and `t^2` coefficients of the Jacobi identity of
/// `mu + t sigma` on every basis triple:
/// `sum_cyc mu(sigma(x,y),z) + sigma(mu(x,y),z) = 0` and
/// `sum_cyc sigma(sigma(x,y),z) = 0`.
pub fn deform_check(d: &DeformedAlgebra) -> std::result::Result<(), DeformViolation> {
    let mu = d.base.structure();
    let sigma = &d.sigma;
    let n = mu.dim();
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); n];
    for ((i, j), _) in sigma.iter() {
        partners[i].push(j);
        partners[j].push(i);
    }
    // Any nonzero cyclic term involves a pair in the support of sigma, or a
    // bracket with a component paired by sigma with the third argument.
    let mut triples = BTreeSet::new();
    let mut push = |mut t: [usize; 3]| {
        t.sort_unstable();
        if t[0] < t[1] && t[1] < t[2] {
            triples.insert((t[0], t[1], t[2]));
        }
    };
    for ((i, j), _) in sigma.iter() {
        for z in 0..n {
            push([i, j, z]);
        }
    }
    for ((i, j), v) in mu.iter() {
        for p in v.indices() {
            for &z in &partners[p] {
                push([i, j, z]);
            }
        }
    }
    for (x, y, z) in triples {
        let (ex, ey, ez) = (SparseVec::unit(x), SparseVec::unit(y), SparseVec::unit(z));
        let mut first = SparseVec::new();
        let mut second = SparseVec::new();
        for (a, b, c) in [(&ex, &ey, &ez), (&ey, &ez, &ex), (&ez, &ex, &ey)] {
            let s = sigma.eval(a, b);
            first = first.add(&mu.eval(&s, c)).add(&sigma.eval(&mu.eval(a, b), c));
            second = second.add(&sigma.eval(&s, c));
        }
        if !first.is_zero() {
            return Err(DeformViolation { order: 1, triple: (x, y, z) });
        }
        if !second.is_zero() {
            return Err(DeformViolation { order: 2, triple: (x, y, z) });
        }
    }
    Ok(())
}

fn check_degree_one_pair(a: &GradedLieAlgebra, a1: usize, a2: usize) -> Result<()> {
    if a1 == a2 || a1 >= a.dim() || a2 >= a.dim() {
        return Err(Error::Precondition(format!("need two distinct basis indices, got {a1} and {a2}")));
    }
    if a.degree_of(a1) != 1 || a.degree_of(a2) != 1 {
        return Err(Error::Precondition("a1 and a2 must be degree-1 basis vectors".into()));
    }
    Ok(())
}

/// Cocycle `sigma^{a1,a2}_y`, after checking that the span `h` of the other
/// basis vectors is a subalgebra and that `y` centralizes it.
pub fn build_sigma(a: &GradedLieAlgebra, a1: usize, a2: usize, y: &SparseVec) -> Result<DeformationCocycle> {
    check_degree_one_pair(a, a1, a2)?;
    let n = a.dim();
    if y.support_end() > n {
        return Err(Error::DimensionMismatch { expected: n, found: y.support_end() });
    }
    let mu = a.algebra();
    for ((i, j), v) in mu.structure().iter() {
        let in_h = |p: usize| p != a1 && p != a2;
        if in_h(i) && in_h(j) && (v.get(a1).is_some() || v.get(a2).is_some()) {
            return Err(Error::Precondition("complement of a1, a2 is not a subalgebra".into()));
        }
    }
    for h in (0..n).filter(|&p| p != a1 && p != a2) {
        if !mu.structure().eval_left(h, y).is_zero() {
            return Err(Error::Precondition("y does not centralize the complement of a1, a2".into()));
        }
    }
    let mut sigma = AlternatingMap::new(n);
    sigma.set(a1, a2, y.clone());
    Ok(DeformationCocycle { a1, a2, y: y.clone(), sigma })
}

/// Subspaces reused while searching for graded witnesses.
struct GradedContext<'a> {
    a: &'a GradedLieAlgebra,
    g1: Subspace,
    g1g1: Subspace,
}

impl<'a> GradedContext<'a> {
    fn new(a: &'a GradedLieAlgebra) -> Self {
        let g1 = a.degree_at_least(2);
        let g1g1 = a.algebra().bracket_subspaces(&g1, &g1).expect("dimensions agree");
        GradedContext { a, g1, g1g1 }
    }

    fn certify(&self, a1: usize, a2: usize, y: &SparseVec) -> Result<bool> {
        let a = self.a;
        if check_degree_one_pair(a, a1, a2).is_err() {
            return Ok(false);
        }
        let mu = a.algebra();
        if !mu.bracket_basis(a1, a2).is_zero() || y.is_zero() {
            return Ok(false);
        }
        let top = a.degree_range(a.k());
        if y.indices().any(|l| !top.contains(&l)) {
            return Ok(false);
        }
        let n = a.dim();
        let s1 = mu.bracket_subspaces(&Subspace::coordinate(n, [a1])?, &self.g1)?;
        let s2 = mu.bracket_subspaces(&Subspace::coordinate(n, [a2])?, &self.g1)?;
        let s = self.g1g1.sum(&s1)?.sum(&s2)?;
        Ok(!s.contains_sparse(y)?)
    }
}

/// Whether `(a1, a2, y)` is a graded witness: `[a1, a2] = 0`, `y ∈ V_k` and
/// `y ∉ [g1,g1] + [a1,g1] + [a2,g1]` where `g1` is the span of degrees `>= 2`.
pub fn certify_graded_witness(a: &GradedLieAlgebra, a1: usize, a2: usize, y: &SparseVec) -> Result<bool> {
    if a.k() < 3 {
        return Err(Error::Precondition("graded witnesses need k >= 3".into()));
    }
    GradedContext::new(a).certify(a1, a2, y)
}

/// For a 2-step algebra and independent `v, w` with `[v, w] = 0`, returns the
/// first center basis vector outside `<[v, n] ∪ [w, n]>`, if that span is a
/// proper subspace of the center.
pub fn certify_2step_witness(a: &LieAlgebra, v: &SparseVec, w: &SparseVec) -> Result<Option<SparseVec>> {
    let n = a.dim();
    if v.support_end() > n || w.support_end() > n {
        return Err(Error::DimensionMismatch { expected: n, found: v.support_end().max(w.support_end()) });
    }
    if !a.is_at_most_two_step() {
        return Err(Error::Precondition("algebra is not 2-step nilpotent".into()));
    }
    let center = a.center();
    let with_v = center.sum(&Subspace::span(n, [v])?)?;
    let with_both = with_v.sum(&Subspace::span(n, [w])?)?;
    if with_both.dim() != center.dim() + 2 {
        return Err(Error::Precondition("v and w are dependent modulo the center".into()));
    }
    Ok(two_step_witness(a, &center, v, w))
}

fn two_step_witness(a: &LieAlgebra, center: &Subspace, v: &SparseVec, w: &SparseVec) -> Option<SparseVec> {
    if !a.bracket(v, w).is_zero() {
        return None;
    }
    let n = a.dim();
    let images: Vec<SparseVec> = (0..n)
        .flat_map(|i| [a.bracket(v, &SparseVec::unit(i)), a.bracket(w, &SparseVec::unit(i))])
        .filter(|x| !x.is_zero())
        .collect();
    let s = Subspace::span(n, &images).expect("images live in the algebra");
    if s.dim() >= center.dim() {
        return None;
    }
    center.basis().find(|z| !s.contains_sparse(z).expect("same ambient space")).cloned()
}

/// Certificate attached to a verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    H2NilZero,
    CitedResult { name: String },
    Abelian,
    AbelianFactor { isolated: Vec<usize> },
    GradedWitness { a1: usize, a2: usize, y: SparseVec },
    TwoStepWitness { v: usize, w: usize, z: SparseVec },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::H2NilZero => "h2_nil_zero",
            Certificate::CitedResult { .. } => "cited_result",
            Certificate::Abelian => "abelian",
            Certificate::AbelianFactor { .. } => "abelian_factor",
            Certificate::GradedWitness { .. } => "graded_witness",
            Certificate::TwoStepWitness { .. } => "two_step_witness",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Rigid(Certificate),
    NotRigid(Certificate),
    Unknown,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Rigid(_) => "rigid",
            Verdict::NotRigid(_) => "not_rigid",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Rigid(c) | Verdict::NotRigid(c) => Some(c),
            Verdict::Unknown => None,
        }
    }

    pub fn is_rigid(&self) -> bool {
        matches!(self, Verdict::Rigid(_))
    }
}

/// Verdict for `g(k, G)` with the data needed to report it.
#[derive(Clone, Debug)]
pub struct Classification {
    pub graph: SimpleGraph,
    pub k: usize,
    pub dim: usize,
    pub labels: Vec<String>,
    pub verdict: Verdict,
    pub h2_nil: Option<H2NilReport>,
}

/// Witness search over non-adjacent vertex pairs, in lexicographic order.
///
/// For `k >= 3`, `y` runs over the top-degree basis vectors, first those of
/// multidegree shape `(k-1, 1)` and then the rest. For `k = 2`, both vertices
/// must be non-isolated and the witness comes from [`certify_2step_witness`].
pub fn find_witness(g: &SimpleGraph, a: &GradedLieAlgebra, k: usize) -> Result<Option<Certificate>> {
    let m = g.order();
    if a.k() != k || a.grading().first() != Some(&m) {
        return Err(Error::Precondition("algebra does not match the graph and step".into()));
    }
    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|p| (p + 1..m).map(move |q| (p, q))).filter(|&(p, q)| !g.has_edge(p, q)).collect();
    if k >= 3 {
        let ctx = GradedContext::new(a);
        let top: Vec<usize> = a.degree_range(k).collect();
        let is_hook = |l: usize| {
            a.labels()[l].multidegree.as_ref().is_some_and(|md| md.shape() == [k - 1, 1])
        };
        let tiers = [
            top.iter().copied().filter(|&l| is_hook(l)).collect::<Vec<_>>(),
            top.iter().copied().filter(|&l| !is_hook(l)).collect(),
        ];
        for tier in &tiers {
            for &(p, q) in &pairs {
                for &l in tier {
                    let y = SparseVec::unit(l);
                    if ctx.certify(p, q, &y)? {
                        return Ok(Some(Certificate::GradedWitness { a1: p, a2: q, y }));
                    }
                }
            }
        }
        Ok(None)
    } else if k == 2 {
        let mu = a.algebra();
        let center = mu.center();
        for (p, q) in pairs {
            if g.degree(p) == 0 || g.degree(q) == 0 {
                continue;
            }
            if let Some(z) = two_step_witness(mu, &center, &SparseVec::unit(p), &SparseVec::unit(q)) {
                return Ok(Some(Certificate::TwoStepWitness { v: p, w: q, z }));
            }
        }
        Ok(None)
    } else {
        Ok(None)
    }
}

/// The deformation a witness certificate stands for: `sigma^{a1,a2}_y` for a
/// graded witness and `sigma(v, w) = z` for a 2-step witness.
pub fn witness_deformation(a: &GradedLieAlgebra, cert: &Certificate) -> Result<Option<DeformedAlgebra>> {
    let sigma = match cert {
        Certificate::GradedWitness { a1, a2, y } => build_sigma(a, *a1, *a2, y)?.sigma,
        Certificate::TwoStepWitness { v, w, z } => {
            let mut s = AlternatingMap::new(a.dim());
            s.set(*v, *w, z.clone());
            s
        }
        _ => return Ok(None),
    };
    Ok(Some(DeformedAlgebra::new(a.algebra().clone(), sigma)?))
}

/// Re-checks a witness certificate from scratch, including the deformation it
/// induces and the lower central series of `mu_1`.
pub fn verify_witness(a: &GradedLieAlgebra, cert: &Certificate) -> Result<bool> {
    let ok = match cert {
        Certificate::GradedWitness { a1, a2, y } => certify_graded_witness(a, *a1, *a2, y)?,
        Certificate::TwoStepWitness { v, w, z } => {
            let mu = a.algebra();
            let (ev, ew) = (SparseVec::unit(*v), SparseVec::unit(*w));
            let center = mu.center();
            let images: Vec<SparseVec> =
                (0..a.dim()).flat_map(|i| [mu.bracket(&ev, &SparseVec::unit(i)), mu.bracket(&ew, &SparseVec::unit(i))]).collect();
            let s = Subspace::span(a.dim(), &images)?;
            certify_2step_witness(mu, &ev, &ew)?.is_some()
                && mu.bracket(&ev, &ew).is_zero()
                && center.contains_sparse(z)?
                && !s.contains_sparse(z)?
        }
        _ => return Ok(false),
    };
    if !ok {
        return Ok(false);
    }
    let d = witness_deformation(a, cert)?.expect("witness certificates carry a deformation");
    if deform_check(&d).is_err() {
        return Ok(false);
    }
    Ok(d.at(&Rational::one()).lower_central_dims() == d.base.lower_central_dims())
}

/// Classifies `g(k, G)`:
/// 1. edgeless graphs are abelian, rigid only for two vertices;
/// 2. isolated vertices give an abelian factor, rigid only for `K2 ⊔ K1` at `k = 2`;
/// 3. a verified witness gives non-rigidity;
/// 4. for `k = 2`, vanishing nil-cohomology gives rigidity;
/// 5. complete graphs give free nilpotent algebras, which are rigid;
/// 6. anything else is unknown.
pub fn classify(g: &SimpleGraph, k: usize) -> Result<Classification> {
    let m = g.order();
    if m < 2 || k < 2 {
        return Err(Error::Precondition(format!("classification needs m >= 2 and k >= 2, got m = {m}, k = {k}")));
    }
    let a = structure_constants(g, k)?;
    let h2 = if k == 2 { Some(h2_nil_graded(&a)?) } else { None };
    let analysis = analyze(g);
    let verdict = decide(g, k, &a, h2.as_ref(), &analysis.isolated)?;
    Ok(Classification {
        graph: g.clone(),
        k,
        dim: a.dim(),
        labels: a.labels().iter().map(|l| l.label.clone()).collect(),
        verdict,
        h2_nil: h2,
    })
}

fn decide(
    g: &SimpleGraph,
    k: usize,
    a: &GradedLieAlgebra,
    h2: Option<&H2NilReport>,
    isolated: &[usize],
) -> Result<Verdict> {
    let m = g.order();
    if g.edge_count() == 0 {
        return Ok(if m == 2 {
            Verdict::Rigid(Certificate::CitedResult { name: "abelian a2 (small dimension)".into() })
        } else {
            Verdict::NotRigid(Certificate::Abelian)
        });
    }
    if !isolated.is_empty() {
        return Ok(if m == 3 && g.edge_count() == 1 && k == 2 {
            Verdict::Rigid(Certificate::CitedResult { name: "h1 + a1 exception".into() })
        } else {
            Verdict::NotRigid(Certificate::AbelianFactor { isolated: isolated.to_vec() })
        });
    }
    let h2_zero = h2.is_some_and(|r| r.h2_dim == 0);
    if let Some(cert) = find_witness(g, a, k)? {
        if !verify_witness(a, &cert)? {
            return Err(Error::Invariant(format!("witness {cert:?} failed re-verification")));
        }
        if h2_zero {
            return Err(Error::Invariant("a non-rigidity witness coexists with vanishing nil-cohomology".into()));
        }
        return Ok(Verdict::NotRigid(cert));
    }
    if h2_zero {
        return Ok(Verdict::Rigid(Certificate::H2NilZero));
    }
    if g.is_complete() {
        return Ok(Verdict::Rigid(Certificate::CitedResult { name: "free k-step nilpotent".into() }));
    }
    Ok(Verdict::Unknown)
}

/// Classifies every isomorphism class of graphs on `2..=n_max` vertices,
/// ordered by vertex count and then canonical form.
pub fn sweep(n_max: usize, k: usize) -> Result<Vec<Classification>> {
    if n_max > MAX_SWEEP_ORDER || k > MAX_SWEEP_STEP {
        return Err(Error::ResourceBound(format!(
            "sweep is limited to n_max <= {MAX_SWEEP_ORDER} and k <= {MAX_SWEEP_STEP}"
        )));
    }
    if k < 2 {
        return Err(Error::Precondition("sweep needs k >= 2".into()));
    }
    let mut graphs = Vec::new();
    for m in 2..=n_max {
        graphs.extend(enumerate_graphs(m)?);
    }
    graphs.par_iter().map(|g| classify(g, k)).collect()
}
