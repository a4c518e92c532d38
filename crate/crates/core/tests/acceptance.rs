//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphlie::basis::{
    dimension_oracle, expand_bracket_word, graded_basis, graph_algebra, trace_normal_form, BracketWord,
    MultiDegree, TraceWord,
};
use graphlie::cohomology::{delta1_matrix, delta2_matrix, eta2_matrix, h2_nil_graded};
use graphlie::graph::{analyze, canonical_form, enumerate_graphs, SimpleGraph};
use graphlie::linalg::{Echelon, SparseVec};
use graphlie::rigidity::{find_witness, sweep, witness_deformation, deform_check, Certificate, Classification, Verdict};
use graphlie::{GradedLieAlgebra, Rational};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

fn cherry() -> SimpleGraph {
    SimpleGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap()
}

/// Parses brackets written as `[v1,[v1,v2]]`.
fn parse_bracket(s: &str) -> BracketWord {
    fn go(s: &[u8], pos: &mut usize) -> BracketWord {
        while s[*pos] == b' ' {
            *pos += 1;
        }
        if s[*pos] == b'[' {
            *pos += 1;
            let l = go(s, pos);
            while s[*pos] == b' ' || s[*pos] == b',' {
                *pos += 1;
            }
            let r = go(s, pos);
            while s[*pos] == b' ' {
                *pos += 1;
            }
            assert_eq!(s[*pos], b']');
            *pos += 1;
            BracketWord::bracket(l, r)
        } else {
            assert_eq!(s[*pos], b'v');
            *pos += 1;
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let v: u8 = std::str::from_utf8(&s[start..*pos]).unwrap().parse().unwrap();
            BracketWord::leaf(v - 1)
        }
    }
    let mut pos = 0;
    go(s.as_bytes(), &mut pos)
}

const LISTED_BASES: [&[&str]; 4] = [
    &["v1", "v2", "v3"],
    &["[v1,v2]", "[v1,v3]"],
    &["[v1,[v1,v2]]", "[v1,[v1,v3]]", "[[v1,v2],v2]", "[[v1,v3],v2]", "[[v1,v3],v3]"],
    &[
        "[v1,[v1,[v1,v2]]]",
        "[v1,[v1,[v1,v3]]]",
        "[[[v1,v2],v2],v2]",
        "[[[v1,v3],v2],v2]",
        "[[[v1,v3],v3],v2]",
        "[[[v1,v3],v3],v3]",
        "[[v1,[v1,v2]],v2]",
        "[[v1,[v1,v3]],v2]",
        "[[v1,[v1,v3]],v3]",
        "[[v1,v2],[v1,v3]]",
    ],
];

/// Rank of a family of trace polynomials.
fn trace_rank(polys: &[BTreeMap<TraceWord, Rational>]) -> usize {
    let mut columns: HashMap<TraceWord, usize> = HashMap::new();
    let mut ech = Echelon::new(usize::MAX);
    for p in polys {
        let v = SparseVec::from_pairs(p.iter().map(|(w, c)| {
            let next = columns.len();
            (*columns.entry(w.clone()).or_insert(next), c.clone())
        }));
        ech.insert(&v, 0);
    }
    ech.rank()
}

fn criterion_1() -> Outcome {
    let g = cherry();
    let start = Instant::now();
    let basis = graded_basis(&g, 4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(basis.dims() == [3, 2, 5, 10], || format!("dims {:?}", basis.dims()))?;
    within(elapsed, Duration::from_secs(1), "graded_basis")?;
    // The listed brackets of each degree are independent and span the same
    // space as the constructed basis.
    for (d, listed) in LISTED_BASES.iter().enumerate() {
        let ours: Vec<_> = basis.degrees[d].iter().map(|e| e.expansion.clone()).collect();
        let theirs: Vec<_> =
            listed.iter().map(|s| expand_bracket_word(&parse_bracket(s), &g, 4).unwrap()).collect();
        let both: Vec<_> = ours.iter().chain(&theirs).cloned().collect();
        check(trace_rank(&theirs) == listed.len() && trace_rank(&both) == ours.len(), || {
            format!("listed degree-{} brackets do not form a basis of V_{}", d + 1, d + 1)
        })?;
    }
    Ok(format!("dims {:?} in {elapsed:?}; listed bases span each V_j", basis.dims()))
}

fn criterion_2() -> Outcome {
    let basis = graded_basis(&cherry(), 4).map_err(|e| e.to_string())?;
    let mut got: Vec<Vec<usize>> = basis.degrees[3].iter().map(|e| e.multidegree.0.clone()).collect();
    let mut expected: Vec<Vec<usize>> = vec![
        vec![3, 1, 0],
        vec![3, 0, 1],
        vec![1, 3, 0],
        vec![1, 2, 1],
        vec![1, 1, 2],
        vec![1, 0, 3],
        vec![2, 2, 0],
        vec![2, 1, 1],
        vec![2, 1, 1],
        vec![2, 0, 2],
    ];
    // The listed brackets themselves carry the same multiset.
    let mut listed: Vec<Vec<usize>> =
        LISTED_BASES[3].iter().map(|s| parse_bracket(s).multidegree(3).0).collect();
    got.sort();
    expected.sort();
    listed.sort();
    check(got == expected, || format!("constructed multiset {got:?}"))?;
    check(listed == expected, || format!("listed multiset {listed:?}"))?;
    Ok("degree-4 multidegree multiset matches".into())
}

struct Built {
    graph: SimpleGraph,
    k: usize,
    algebra: GradedLieAlgebra,
}

fn all_classes() -> Vec<SimpleGraph> {
    (1..=5).flat_map(|m| enumerate_graphs(m).unwrap()).collect()
}

fn criterion_3(built: &mut Vec<Built>) -> Outcome {
    let start = Instant::now();
    let classes = all_classes();
    for g in &classes {
        for k in 1..=4 {
            let (basis, algebra) = graph_algebra(g, k).map_err(|e| format!("{g:?}, k={k}: {e}"))?;
            let oracle = dimension_oracle(g, k).map_err(|e| e.to_string())?;
            check(basis.dims() == oracle, || format!("{g:?}, k={k}: {:?} vs oracle {oracle:?}", basis.dims()))?;
            built.push(Built { graph: g.clone(), k, algebra });
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "construction")?;
    Ok(format!("{} classes x k=1..4 agree with the oracle in {elapsed:?}", classes.len()))
}

fn criterion_4(built: &[Built]) -> Outcome {
    check(!built.is_empty(), || "criterion 3 produced no algebras".into())?;
    for b in built {
        let a = &b.algebra;
        let bad = a.algebra().jacobi_report();
        check(bad.is_empty(), || format!("{:?}, k={}: Jacobi fails on {:?}", b.graph, b.k, bad[0]))?;
        check(a.grading_support_check().unwrap(), || format!("{:?}, k={}: support law fails", b.graph, b.k))?;
        let mut suffix: Vec<usize> = (0..=a.k()).map(|i| a.grading()[i..].iter().sum()).collect();
        while suffix.len() > 1 && suffix[suffix.len() - 2] == 0 {
            suffix.pop();
        }
        let lcs = a.algebra().lower_central_dims();
        check(lcs == suffix, || format!("{:?}, k={}: series {lcs:?} vs {suffix:?}", b.graph, b.k))?;
    }
    Ok(format!("{} algebras: Jacobi, multidegree law and series dims hold", built.len()))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for (name, g) in [
        ("C4", SimpleGraph::cycle(4)),
        ("2K2", SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()),
    ] {
        let start = Instant::now();
        let a = graph_algebra(&g, 2).map_err(|e| e.to_string())?.1;
        let r = h2_nil_graded(&a).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(r.h2_dim == 0, || format!("h2_nil({name}) = {}", r.h2_dim))?;
        within(elapsed, Duration::from_secs(10), name)?;
        parts.push(format!("{name}: 0 in {elapsed:?}"));
    }
    Ok(parts.join(", "))
}

fn canon(g: &SimpleGraph) -> String {
    format!("{}:{}", g.order(), canonical_form(g).unwrap())
}

fn criterion_6(witnesses: &mut Vec<(GradedLieAlgebra, Certificate)>) -> Outcome {
    let report = sweep(4, 2).map_err(|e| e.to_string())?;
    let expected: BTreeSet<String> = [
        SimpleGraph::complete(2),
        SimpleGraph::complete(3),
        SimpleGraph::complete(4),
        SimpleGraph::empty(2),
        SimpleGraph::from_edges(3, &[(0, 1)]).unwrap(),
        SimpleGraph::path(3),
        SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap(),
        SimpleGraph::cycle(4),
    ]
    .iter()
    .map(canon)
    .collect();
    check(report.len() == 17, || format!("{} classes instead of 17", report.len()))?;
    let unknown = report.iter().filter(|c| c.verdict == Verdict::Unknown).count();
    check(unknown == 0, || format!("{unknown} unknown verdicts"))?;
    let rigid: BTreeSet<String> = report.iter().filter(|c| c.verdict.is_rigid()).map(|c| canon(&c.graph)).collect();
    check(rigid == expected, || format!("rigid set {rigid:?}"))?;
    collect_witnesses(&report, witnesses)?;
    Ok(format!("17 classes, rigid exactly the 8 expected, 0 unknown"))
}

fn collect_witnesses(report: &[Classification], out: &mut Vec<(GradedLieAlgebra, Certificate)>) -> Result<(), String> {
    for c in report {
        if let Verdict::NotRigid(cert @ (Certificate::GradedWitness { .. } | Certificate::TwoStepWitness { .. })) = &c.verdict {
            let a = graph_algebra(&c.graph, c.k).map_err(|e| e.to_string())?.1;
            out.push((a, cert.clone()));
        }
    }
    Ok(())
}

fn criterion_7(witnesses: &mut Vec<(GradedLieAlgebra, Certificate)>, two_step: &mut Vec<Classification>) -> Outcome {
    let start = Instant::now();
    let report = sweep(5, 2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let five: Vec<&Classification> = report.iter().filter(|c| c.graph.order() == 5).collect();
    check(five.len() == 34, || format!("{} classes on 5 vertices", five.len()))?;
    let (mut witness, mut shortcut) = (0, 0);
    for c in &five {
        if c.graph.is_complete() {
            check(c.verdict.is_rigid(), || "K5 is not classified rigid".into())?;
            continue;
        }
        let isolated = !analyze(&c.graph).isolated.is_empty();
        match &c.verdict {
            Verdict::NotRigid(Certificate::TwoStepWitness { .. }) if !isolated => witness += 1,
            Verdict::NotRigid(Certificate::AbelianFactor { .. } | Certificate::Abelian) if isolated => shortcut += 1,
            other => return Err(format!("{:?}: unexpected verdict {other:?}", c.graph)),
        }
    }
    within(elapsed, Duration::from_secs(600), "sweep(5, 2)")?;
    collect_witnesses(&report, witnesses)?;
    two_step.extend(report);
    Ok(format!(
        "K5 rigid; {witness} two-step witnesses, {shortcut} abelian-factor shortcuts; {elapsed:?}"
    ))
}

fn criterion_8(witnesses: &mut Vec<(GradedLieAlgebra, Certificate)>) -> Outcome {
    let mut count = 0;
    for k in [3, 4] {
        for m in 3..=5 {
            for g in enumerate_graphs(m).unwrap() {
                let a = graph_algebra(&g, k).map_err(|e| e.to_string())?.1;
                let found = find_witness(&g, &a, k).map_err(|e| e.to_string())?;
                if g.is_complete() {
                    check(found.is_none(), || format!("K{m}, k={k} has a witness"))?;
                    continue;
                }
                if g.edge_count() == 0 || !analyze(&g).isolated.is_empty() {
                    continue;
                }
                let Some(Certificate::GradedWitness { a1, a2, y }) = found else {
                    return Err(format!("{g:?}, k={k}: no graded witness"));
                };
                check(y.nnz() == 1, || format!("{g:?}, k={k}: y is not a basis vector"))?;
                let (l, _) = y.first().unwrap();
                let md: &MultiDegree = a.labels()[l].multidegree.as_ref().unwrap();
                check(md.shape() == [k - 1, 1], || format!("{g:?}, k={k}: y has multidegree {md:?}"))?;
                witnesses.push((a, Certificate::GradedWitness { a1, a2, y }));
                count += 1;
            }
        }
    }
    Ok(format!("{count} graded witnesses of shape (k-1,1); complete graphs have none"))
}

fn criterion_9(witnesses: &[(GradedLieAlgebra, Certificate)]) -> Outcome {
    check(!witnesses.is_empty(), || "no witnesses collected".into())?;
    for (a, cert) in witnesses {
        let d = witness_deformation(a, cert).map_err(|e| e.to_string())?.unwrap();
        if let Err(v) = deform_check(&d) {
            return Err(format!("{cert:?}: t^{} identity fails on {:?}", v.order, v.triple));
        }
        let t1 = d.at(&Rational::one()).lower_central_dims();
        let t0 = d.base.lower_central_dims();
        check(t1 == t0, || format!("{cert:?}: series {t1:?} vs {t0:?}"))?;
    }
    Ok(format!("{} deformations pass both identities and keep series dims", witnesses.len()))
}

fn criterion_10(two_step: &[Classification]) -> Outcome {
    check(!two_step.is_empty(), || "criterion 7 produced no classifications".into())?;
    let mut flags_false = 0;
    for c in two_step {
        let a = graph_algebra(&c.graph, 2).map_err(|e| e.to_string())?.1;
        let mu = a.algebra();
        let d1 = delta1_matrix(mu);
        check(delta2_matrix(mu).mul(&d1).unwrap().is_zero(), || format!("{:?}: d2 d1 != 0", c.graph))?;
        let e2 = eta2_matrix(mu).map_err(|e| e.to_string())?;
        check(e2.mul(&d1).unwrap().is_zero(), || format!("{:?}: eta2 d1 != 0", c.graph))?;
        let r = c.h2_nil.as_ref().ok_or("missing h2_nil")?;
        if !r.eta2_subset_delta2 {
            flags_false += 1;
            let alt_zero = r.dim_ker_eta2 == r.dim_im_delta1;
            check(alt_zero == (r.h2_dim == 0), || format!("{:?}: eta2 kernel changes the verdict", c.graph))?;
        }
    }
    Ok(format!("{} 2-step algebras: d2 d1 = 0, eta2 d1 = 0; eta2_subset_delta2 false for {flags_false}", two_step.len()))
}

/// Lexicographic minimum over the full commutation class, by breadth-first search.
fn bfs_min(word: &[usize], g: &SimpleGraph) -> Vec<usize> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            if a != b && !g.has_edge(a, b) {
                let mut s = w.clone();
                s.swap(i, i + 1);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
    }
    seen.into_iter().next().unwrap()
}

fn criterion_11() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let m = rng.gen_range(1..=5);
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if rng.gen_bool(0.5) {
                    edges.push((i, j));
                }
            }
        }
        let g = SimpleGraph::from_edges(m, &edges).unwrap();
        let len = rng.gen_range(0..=6);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..m)).collect();
        let got: Vec<usize> = trace_normal_form(&word, &g).unwrap().letters().iter().map(|&l| l as usize).collect();
        let expected = bfs_min(&word, &g);
        check(got == expected, || format!("trial {trial}: {word:?} on {g:?}: {got:?} vs {expected:?}"))?;
    }
    Ok("1000 random words agree with the BFS minimum".into())
}

fn run(id: usize, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => {
            println!("criterion {id:>2}: PASS ({elapsed:.2?}) {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {id:>2}: FAIL ({elapsed:.2?}) {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut built = Vec::new();
    let mut witnesses = Vec::new();
    let mut two_step = Vec::new();
    let results = [
        run(1, criterion_1),
        run(2, criterion_2),
        run(3, || criterion_3(&mut built)),
        run(4, || criterion_4(&built)),
        run(5, criterion_5),
        run(6, || criterion_6(&mut witnesses)),
        run(7, || criterion_7(&mut witnesses, &mut two_step)),
        run(8, || criterion_8(&mut witnesses)),
        run(9, || criterion_9(&witnesses)),
        run(10, || criterion_10(&two_step)),
        run(11, criterion_11),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
