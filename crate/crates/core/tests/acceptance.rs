//! The thirteen acceptance criteria, one printed line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use amply::bakry_emery::{
    closed_form_minus, closed_form_plus, determined_curvature_plus, gamma2_form, k_be_sweep, q_matrix_formula,
    q_matrix_schur, switch, ClosedFormInputs, Signature, SwitchingFunction,
};
use amply::bounds::{
    check_eigenvalue_bounds, check_isoperimetry, check_volume_growth, Analysis, AnalysisOptions, HypothesisStatus,
    Value, VerificationReport, Witness,
};
use amply::generators::random_regular;
use amply::rational::{rat, Rational};
use amply::spectra::adjacency_spectrum;
use amply::transport::{
    build_hg_with, certified_lower_bound_with, konig_decompose, lly_curvature, lly_sweep, local_wasserstein,
    matching_characterization, ollivier_p, EdgeClass, LocalMeasure,
};
use amply::{arg_params, generate, Family, Graph};

const BE_TOL: f64 = 1e-8;
const Q_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn hypercube(d: usize) -> Graph {
    generate(&Family::Hypercube(d)).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn arg_corpus() -> Vec<(String, Graph, amply::ArgParams)> {
    common::corpus()
        .into_iter()
        .map(|(name, g)| {
            let p = arg_params(&g).unwrap_or_else(|| panic!("{name} is not amply regular"));
            (name, g, p)
        })
        .collect()
}

fn hypercube_lly() -> Outcome {
    let start = Instant::now();
    for d in 3..=8 {
        let g = hypercube(d);
        for ((x, y), k) in lly_sweep(&g).map_err(|e| e.to_string())? {
            ensure!(k == rat(2, d as i64), "Q{d} edge {x}-{y}: {k}");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.1}s");
    Ok(format!("every edge 2/d for d = 3..8 in {secs:.2}s"))
}

fn hypercube_be() -> Outcome {
    for d in 3..=8 {
        let g = hypercube(d);
        let p = arg_params(&g).unwrap();
        ensure!(determined_curvature_plus(&p) == Some(Rational::from_integer(2)), "Q{d}: determined value");
        for (x, k) in k_be_sweep(&g, &Signature::all_plus(&g)).unwrap().into_iter().enumerate() {
            ensure!((k - 2.0).abs() <= BE_TOL, "Q{d} vertex {x}: {k}");
            let c = closed_form_plus(&ClosedFormInputs::new(&g, p, x).unwrap());
            ensure!(c == 2.0, "Q{d} vertex {x}: closed form {c}");
        }
    }
    Ok("K_BE(+) = 2 and closed form exactly 2 for d = 3..8".into())
}

fn constant_be(f: Family, expected: f64) -> Result<(), String> {
    let g = generate(&f).unwrap();
    for (x, k) in k_be_sweep(&g, &Signature::all_plus(&g)).unwrap().into_iter().enumerate() {
        ensure!((k - expected).abs() <= BE_TOL, "{f:?} vertex {x}: {k}, expected {expected}");
    }
    Ok(())
}

fn sharp_cases() -> Outcome {
    constant_be(Family::Shrikhande, 2.0)?;
    constant_be(Family::Rook(4), 3.0)?;
    Ok("Shrikhande 2, rook 4x4 3 at every vertex".into())
}

fn petersen() -> Outcome {
    constant_be(Family::Petersen, -1.0)?;
    Ok("K_BE(+) = -1 at every vertex".into())
}

fn closed_forms() -> Outcome {
    let mut worst: f64 = 0.0;
    for (name, g, p) in arg_corpus() {
        let plus = k_be_sweep(&g, &Signature::all_plus(&g)).unwrap();
        let minus = k_be_sweep(&g, &Signature::all_minus(&g)).unwrap();
        for x in 0..g.vertex_count() {
            let inputs = ClosedFormInputs::new(&g, p, x).unwrap();
            for (k, c, sign) in [(plus[x], closed_form_plus(&inputs), "+"), (minus[x], closed_form_minus(&inputs), "-")] {
                worst = worst.max((k - c).abs());
                ensure!((k - c).abs() <= BE_TOL, "{name} vertex {x} ({sign}): pipeline {k}, closed form {c}");
            }
        }
    }
    Ok(format!("max |pipeline - closed form| = {worst:.1e}"))
}

fn q_agree(g: &Graph, sigma: &Signature, what: &str) -> Result<(), String> {
    for x in 0..g.vertex_count() {
        let a = q_matrix_formula(g, sigma, x).map_err(|e| e.to_string())?;
        let b = q_matrix_schur(g, sigma, x).map_err(|e| e.to_string())?;
        let diff = a.max_abs_diff(&b);
        ensure!(diff <= Q_TOL, "{what} vertex {x}: entries differ by {diff}");
    }
    Ok(())
}

fn q_paths() -> Outcome {
    for (name, g) in common::corpus() {
        q_agree(&g, &Signature::all_plus(&g), &format!("{name} +"))?;
        q_agree(&g, &Signature::all_minus(&g), &format!("{name} -"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..200 {
        let n = rng.gen_range(5..=12);
        let d = loop {
            let d = rng.gen_range(2..n - 1);
            if n * d % 2 == 0 {
                break d;
            }
        };
        let g = random_regular(n, d, &mut rng).map_err(|e| e.to_string())?;
        let sigma = Signature::random(&g, &mut rng);
        q_agree(&g, &sigma, &format!("random trial {trial} (n = {n}, d = {d})"))?;
    }
    Ok("corpus x {+1, -1} and 200 random signed regular graphs".into())
}

fn certificates() -> Outcome {
    let mut edges = 0;
    for (name, g, p) in arg_corpus() {
        let Some(gain) = p.matching_gain() else { continue };
        let d = p.d as i64;
        for (x, y) in g.edges() {
            let c = certified_lower_bound_with(&g, &p, x, y).map_err(|e| format!("{name} {x}-{y}: {e}"))?;
            let mu_x = LocalMeasure::new(&g, x, rat(1, d + 1)).unwrap();
            let mu_y = LocalMeasure::new(&g, y, rat(1, d + 1)).unwrap();
            ensure!(c.plan.is_coupling(&mu_x.measure, &mu_y.measure), "{name} {x}-{y}: plan is not a coupling");
            let cost = c.plan.cost(&g).unwrap();
            ensure!(c.plan_bound == rat(d + 1, d) * (Rational::from_integer(1) - cost), "{name} {x}-{y}: plan bound");
            ensure!(c.plan_bound >= c.bound, "{name} {x}-{y}: plan bound below target");
            ensure!(c.matching.class_count(EdgeClass::E5) as i64 >= gain, "{name} {x}-{y}: |M & E5| < {gain}");
            ensure!(c.bound == rat(2 + gain, d), "{name} {x}-{y}: bound {}", c.bound);
            let k = lly_curvature(&g, x, y).unwrap();
            ensure!(k >= c.bound, "{name} {x}-{y}: kappa {k} < {}", c.bound);
            edges += 1;
        }
    }
    Ok(format!("{edges} edges certified"))
}

fn matching_equivalence() -> Outcome {
    let mut edges = 0;
    let mut forced = Vec::new();
    for (name, g, p) in arg_corpus() {
        let cor = p.beta as i64 > (p.alpha * p.alpha) as i64 - p.alpha as i64 + 1;
        for (x, y) in g.edges() {
            let m = matching_characterization(&g, x, y).map_err(|e| format!("{name} {x}-{y}: {e}"))?;
            ensure!(m.attains_max == m.matching.is_perfect(), "{name} {x}-{y}");
            ensure!(!cor || m.attains_max, "{name} {x}-{y}: forced matching missing");
            edges += 1;
        }
        if cor {
            forced.push(name);
        }
    }
    Ok(format!("{edges} edges agree; forced on {}", forced.join(", ")))
}

fn volume_sharpness() -> Outcome {
    for d in 2..=8 {
        let g = hypercube(d);
        for x in 0..g.vertex_count() {
            let sizes = g.spheres(x).sizes();
            ensure!(sizes == (0..=d).map(|i| binom(d, i)).collect::<Vec<_>>(), "Q{d} center {x}: {sizes:?}");
        }
    }
    for d in 3..=6 {
        let g = hypercube(d);
        let a = Analysis::new(&g, AnalysisOptions::default()).unwrap();
        let levels: Vec<VerificationReport> =
            check_volume_growth(&a).into_iter().filter(|r| r.bound_id == "volume.growth").collect();
        ensure!(levels.len() == d, "Q{d}: {} levels", levels.len());
        for (i, r) in levels.iter().enumerate() {
            let i = i as i64 + 1;
            let expected = rat(d as i64 - i, i + 1);
            ensure!(r.rhs == Some(Value::Exact(expected)), "Q{d} level {i}: rhs {:?}", r.rhs);
            ensure!(r.passed == Some(true) && r.tight, "Q{d} level {i} not tight: {:?}", r.lhs);
        }
    }
    Ok("|S_i| = C(d, i) for d <= 8; every level tight".into())
}

fn report<'a>(r: &'a [VerificationReport], id: &str) -> &'a VerificationReport {
    r.iter().find(|x| x.bound_id == id).unwrap_or_else(|| panic!("missing {id}"))
}

fn eigenvalues() -> Outcome {
    for d in 3..=6 {
        let g = hypercube(d);
        let s = adjacency_spectrum(&g).unwrap();
        ensure!((s.theta_second - (d as f64 - 2.0)).abs() <= BE_TOL, "Q{d}: theta_(n-1) = {}", s.theta_second);
        let r = check_eigenvalue_bounds(&Analysis::new(&g, AnalysisOptions::default()).unwrap());
        let b = report(&r, "eigen.second-largest");
        ensure!(b.passed == Some(true) && b.tight, "Q{d}: {b:?}");
    }
    let j = generate(&Family::Johnson(8, 4)).unwrap();
    let r = check_eigenvalue_bounds(&Analysis::new(&j, AnalysisOptions::default()).unwrap());
    let b = report(&r, "eigen.smallest-diameter-4");
    ensure!(b.passed == Some(true), "J(8,4): {b:?}");
    let theta = b.lhs.unwrap().to_f64();
    ensure!((theta + 4.0).abs() <= BE_TOL && b.rhs == Some(Value::int(-14)), "J(8,4): theta_1 = {theta}");

    let mut guarded = 0;
    for (name, g, _) in arg_corpus() {
        let r = check_eigenvalue_bounds(&Analysis::new(&g, AnalysisOptions::default()).unwrap());
        for id in ["eigen.lichnerowicz-be-plus", "eigen.lichnerowicz-be-minus", "eigen.laplacian-translation-plus"] {
            ensure!(report(&r, id).passed == Some(true), "{name} {id}: {:?}", report(&r, id));
        }
        let minus = report(&r, "eigen.laplacian-translation-minus");
        if g.is_bipartite() {
            ensure!(minus.hypothesis_status == HypothesisStatus::Violated, "{name}: bipartite guard inactive");
            ensure!(report(&r, "eigen.smallest-d-2").passed.is_none(), "{name}: smallest bound asserted");
            guarded += 1;
        } else {
            ensure!(minus.passed == Some(true), "{name}: {minus:?}");
        }
        ensure!(r.iter().all(|x| !x.failed()), "{name}: failing eigenvalue report");
    }
    Ok(format!("Q^d tight, J(8,4) theta_1 = -4 >= -14, {guarded} bipartite graphs guarded"))
}

fn switching_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for (name, g) in common::corpus() {
        let sigma = Signature::random(&g, &mut rng);
        let base = k_be_sweep(&g, &sigma).unwrap();
        for _ in 0..50 {
            let tau = SwitchingFunction::random(g.vertex_count(), &mut rng);
            let switched = k_be_sweep(&g, &switch(&sigma, &tau)).unwrap();
            for (x, (a, b)) in base.iter().zip(&switched).enumerate() {
                worst = worst.max((a - b).abs());
                ensure!((a - b).abs() <= BE_TOL, "{name} vertex {x}: {a} vs {b}");
            }
        }
    }
    Ok(format!("max change {worst:.1e}"))
}

/// Independent minimum of `|E(S, S^c)| / |S|` over `1 <= |S| <= n/2`.
fn brute_boundary_ratio(g: &Graph) -> Rational {
    let n = g.vertex_count();
    let mut best = Rational::from_integer(i64::MAX);
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size > n / 2 {
            continue;
        }
        let cut = g.edges().filter(|&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count();
        best = best.min(rat(cut as i64, size as i64));
    }
    best
}

fn isoperimetry() -> Outcome {
    let mut lines = Vec::new();
    for f in [Family::Hypercube(3), Family::Hypercube(4), Family::Petersen, Family::CompleteBipartite(3, 3), Family::Cycle(6)] {
        let g = generate(&f).unwrap();
        let r = check_isoperimetry(&Analysis::new(&g, AnalysisOptions::default()).unwrap());
        let weak = report(&r, "isoperimetry.edge-boundary-weak");
        if weak.hypothesis_status != HypothesisStatus::Satisfied {
            ensure!(weak.passed.is_none(), "{f:?}: asserted without hypothesis");
            lines.push(format!("{f:?} gated"));
            continue;
        }
        ensure!(r.iter().all(|x| !x.failed()), "{f:?}: violation {r:?}");
        let oracle = brute_boundary_ratio(&g);
        ensure!(weak.lhs == Some(Value::Exact(oracle)), "{f:?}: {:?} vs oracle {oracle}", weak.lhs);
        let Some(Witness::Subset { vertices }) = &weak.witness else {
            return Err(format!("{f:?}: no witness"));
        };
        lines.push(format!("{f:?} min {oracle} at {vertices:?}"));
    }
    Ok(lines.join("; "))
}

fn property_suite() -> Outcome {
    let start = Instant::now();
    let (mut plans, mut decompositions) = (0, 0);
    for (name, g, p) in arg_corpus() {
        let d = p.d as i64;
        for (x, y) in g.edges() {
            for idle in [rat(1, 2), rat(1, d + 1)] {
                let w = local_wasserstein(&g, x, y, idle).unwrap();
                let mu_x = LocalMeasure::new(&g, x, idle).unwrap();
                let mu_y = LocalMeasure::new(&g, y, idle).unwrap();
                ensure!(w.plan.is_coupling(&mu_x.measure, &mu_y.measure), "{name} {x}-{y}: marginals");
                ensure!(w.plan.cost(&g).unwrap() == w.value, "{name} {x}-{y}: plan cost");
                ensure!(w.is_certified(), "{name} {x}-{y}: dual certificate");
                plans += 1;
            }
            let half = ollivier_p(&g, x, y, rat(1, 2)).unwrap();
            let lazy = ollivier_p(&g, x, y, rat(1, d + 1)).unwrap();
            ensure!(Rational::from_integer(2) * half == rat(d + 1, d) * lazy, "{name} {x}-{y}: limit-free forms");
            if p.beta_dominates() {
                let h = build_hg_with(&g, &p, x, y).unwrap();
                let ms = konig_decompose(&h).unwrap();
                ensure!(ms.len() == p.beta - 1, "{name} {x}-{y}: {} matchings", ms.len());
                let mut used = vec![0usize; h.edges.len()];
                for m in &ms {
                    ensure!(m.units.len() == h.left.len(), "{name} {x}-{y}: matching not perfect");
                    let mut right: Vec<usize> = m.units.iter().map(|u| u.right).collect();
                    right.sort_unstable();
                    right.dedup();
                    ensure!(right.len() == h.right.len(), "{name} {x}-{y}: right side repeated");
                    for u in &m.units {
                        let i = h.edges.iter().position(|e| e.left == u.left && e.right == u.right).unwrap();
                        used[i] += 1;
                    }
                }
                ensure!(h.edges.iter().zip(&used).all(|(e, &k)| e.multiplicity == k), "{name} {x}-{y}: units not covered");
                decompositions += 1;
            }
        }
        for sigma in [Signature::all_plus(&g), Signature::all_minus(&g)] {
            for x in 0..g.vertex_count() {
                ensure!(gamma2_form(&g, &sigma, x).unwrap().s2_block_is_in_degree_diagonal(), "{name} vertex {x}: S2 block");
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(format!("{plans} certified plans, {decompositions} decompositions in {secs:.1}s"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        ("hypercube LLY", hypercube_lly),
        ("hypercube BE", hypercube_be),
        ("Shrikhande and rook sharp cases", sharp_cases),
        ("Petersen BE", petersen),
        ("closed form vs pipeline", closed_forms),
        ("Q formula vs Schur", q_paths),
        ("certified LLY lower bound", certificates),
        ("maximality vs perfect matching", matching_equivalence),
        ("hypercube volume sharpness", volume_sharpness),
        ("eigenvalue bounds", eigenvalues),
        ("switching invariance", switching_invariance),
        ("isoperimetry", isoperimetry),
        ("property suite", property_suite),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
