//! The reproduction suite: seven exact checks over the named kernels and seeded random
//! families, each reporting pass/fail, the exact values involved, and wall time.
//!
//! Random instance `i` of a check is drawn with seed `config.seed ^ i` (mixed with a
//! per-family salt), so a run is fully determined by its configuration.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::cones::{cut_norm, is_locally_dense, is_psd};
use crate::error::Result;
use crate::graphs::{
    canonical_form, clique, cycle, enumerate_classes, glue, h0, has_degree_one_vertex, is_theta,
    path, spanning_subgraphs, star, subdivide, theta, to_compact, wheel, without_isolated, GlueSpec, Graph,
};
use crate::homdensity::{
    conditioned_density, cycle_density_spectral_exact, density_dp, expansion_total,
    psd_expansion, rooted_density_kernel, Assignment,
};
use crate::kernels::{counterexample_4x4, counterexample_5x5, BlockFunction};
use crate::scalar::{
    format_decimal, format_rational, int, parse_rational, ratio, rational_pow, Rational, Scalar,
};
use crate::search::{
    certify_counterexample, gen_locally_dense, gen_psd_zero_regular, gen_regular_graphon,
    minimize_density, random_measures, random_psd, random_psd_on, random_symmetric,
    random_symmetric_on, sweep_candidates, sweep_graphs,
};
use crate::Kernel;

/// Failures kept verbatim per check; the rest are only counted.
const FAILURE_LOG: usize = 20;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Values of `p` for the four-block kernel.
    pub ps: Vec<Rational>,
    /// Values of `p` for the generated locally dense families.
    pub family_ps: Vec<Rational>,
    pub seed: u64,
    /// Kernel checked for PSD, 0-regularity and a negative 6-vertex density.
    pub kernel_5x5: Kernel,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            ps: vec![ratio(1, 10), ratio(1, 5), ratio(3, 10)],
            family_ps: vec![ratio(1, 5), ratio(1, 2)],
            seed: 0,
            kernel_5x5: counterexample_5x5(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    /// Exact values of interest, as `(label, rational string)`.
    pub values: Vec<(String, String)>,
    pub checks: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "status": self.status(),
            "checks": self.checks,
            "failures": self.failure_count,
            "failed": self.failures,
            "values": self.values.iter().map(|(k, v)| json!({"name": k, "value": v})).collect::<Vec<_>>(),
            "seconds": self.elapsed.as_secs_f64(),
        })
    }

    /// One summary line, e.g. `PASS identities  12.3s  4120 checks`.
    pub fn line(&self) -> String {
        let mut out = format!(
            "{} {:<26} {:>8.2}s  {} checks",
            self.status(),
            self.name,
            self.elapsed.as_secs_f64(),
            self.checks
        );
        if self.failure_count > 0 {
            out.push_str(&format!(", {} failed", self.failure_count));
        }
        out
    }
}

struct Recorder {
    name: &'static str,
    start: Instant,
    checks: usize,
    failures: Vec<String>,
    failure_count: usize,
    values: Vec<(String, String)>,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            start: Instant::now(),
            checks: 0,
            failures: Vec::new(),
            failure_count: 0,
            values: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < FAILURE_LOG {
                self.failures.push(what());
            }
        }
    }

    /// Records an error from a library call as a failed check.
    fn ok<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let msg = context();
                self.check(false, || format!("{msg}: {e}"));
                None
            }
        }
    }

    fn value(&mut self, label: impl Into<String>, v: &Rational) {
        self.values.push((label.into(), format_rational(v)));
    }

    fn text(&mut self, label: impl Into<String>, v: impl Into<String>) {
        self.values.push((label.into(), v.into()));
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            passed: self.failure_count == 0,
            values: self.values,
            checks: self.checks,
            failures: self.failures,
            failure_count: self.failure_count,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Four-block kernel: local density, edge density, complement densities, the tensor-square
/// witness set and the operator-power mass bound.
pub fn four_block_kernel(config: &SuiteConfig) -> SuiteResult {
    let mut r = Recorder::new("four-block-kernel");
    for p in &config.ps {
        let Some(w) = r.ok(counterexample_4x4(p), || format!("build at p={p}")) else {
            continue;
        };
        if let Some(v) = r.ok(is_locally_dense(&w, p), || format!("local density at p={p}")) {
            r.check(v.holds, || {
                format!(
                    "p={p}: not p-locally dense, min of A - pJ on the simplex is {} with witness {:?}",
                    v.value.as_ref().map(format_rational).unwrap_or_default(),
                    v.witness
                        .as_ref()
                        .map(|f| f.values().iter().map(format_rational).collect::<Vec<_>>())
                )
            });
            if let Some(m) = &v.value {
                r.value(format!("p={p} simplex minimum of A-pJ"), m);
            }
        }

        let t = density_dp(&clique(2).expect("K2"), &w);
        r.check(t == p * ratio(9, 8), || format!("p={p}: t(K2) = {t}"));
        r.value(format!("p={p} t(K2)"), &t);

        for j in 1..4 {
            let set: Vec<usize> = (0..4).filter(|&b| b != j).collect();
            if let Some(d) = r.ok(w.internal_density(&set), || "complement density".into()) {
                r.check(&d == p, || format!("p={p}: density without block {j} is {d}"));
            }
        }

        let square = w.tensor_product(&w);
        let p2 = p * p;
        if let Some(v) = r.ok(is_locally_dense(&square, &p2), || "tensor square".into()) {
            r.check(!v.holds, || format!("p={p}: tensor square is p²-locally dense"));
            if let (Some(f), Some(val)) = (&v.witness, &v.value) {
                let form = square.shift(&-&p2).quadratic_form(f);
                r.check(form.is_ok_and(|x| x.is_negative()), || {
                    format!("p={p}: tensor-square witness form is not negative")
                });
                r.value(format!("p={p} tensor square simplex minimum"), val);
            }
        }
        // blocks (0,1), (1,0), (1,1), (1,2) of the square
        let witness_set = [1, 4, 5, 6];
        if let Some(d) = r.ok(square.internal_density(&witness_set), || "witness set".into()) {
            r.check(d == &p2 * ratio(3, 4), || format!("p={p}: witness set density {d}"));
            r.value(format!("p={p} witness set density"), &d);
        }

        for (ell, expect_violation) in [(5usize, true), (4, false)] {
            let Some(power) = r.ok(w.operator_power(ell), || format!("power {ell}")) else {
                continue;
            };
            let mass = power.mass_on(&[0]);
            let coeff = rational_pow(&int(3), ell) / rational_pow(&int(4), ell + 1);
            r.check(mass == &coeff * rational_pow(p, ell), || {
                format!("p={p}: block-0 mass of W^{ell} is {mass}")
            });
            let below = coeff < ratio(1, 16);
            r.check(below == expect_violation, || {
                format!("3^{ell}/4^{} vs 1/16 has the wrong side", ell + 1)
            });
            if let Some(d) = r.ok(power.internal_density(&[0]), || "block-0 density".into()) {
                let violates = d < rational_pow(p, ell);
                r.check(violates == expect_violation, || {
                    format!("p={p}: block 0 of W^{ell} has density {d}")
                });
            }
            r.value(format!("p={p} block-0 mass of W^{ell}"), &mass);
        }
    }
    r.finish()
}

/// PSD 0-regular kernel with a negative 6-vertex density, found by exhaustive sweep.
pub fn negative_density_sweep(config: &SuiteConfig) -> SuiteResult {
    let mut r = Recorder::new("negative-density-sweep");
    let w = &config.kernel_5x5;
    let psd = is_psd(w);
    r.check(psd.holds, || {
        format!(
            "kernel is not PSD: witness {:?} value {}",
            psd.witness
                .as_ref()
                .map(|f| f.values().iter().map(format_rational).collect::<Vec<_>>()),
            psd.value.as_ref().map(format_rational).unwrap_or_default()
        )
    });
    r.check(w.is_regular(&Rational::zero()), || "kernel is not 0-regular".into());
    if let Some(rows) = r.ok(sweep_graphs(w, 6), || "sweep".into()) {
        let six: Vec<&(Graph, Rational)> = rows.iter().filter(|(g, _)| g.vertex_count() == 6).collect();
        let negatives = six.iter().filter(|(_, t)| t.is_negative()).count();
        r.text("graphs swept", rows.len().to_string());
        r.text("6-vertex graphs with negative density", negatives.to_string());
        match six.first() {
            Some((g, t)) => {
                r.check(t.is_negative(), || format!("minimum 6-vertex density {t} is not negative"));
                r.text("minimal graph", to_compact(g));
                r.value("minimal density", t);
                r.text("minimal density (decimal)", format_decimal(t, 3));
            }
            None => r.check(false, || "sweep returned no 6-vertex graphs".into()),
        }
    }
    r.finish()
}

fn graph_classes(max_vertices: usize) -> Vec<Graph> {
    (1..=max_vertices)
        .flat_map(|v| enumerate_classes(v).expect("under the cap"))
        .collect()
}

fn diamond() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]).expect("diamond")
}

/// Exact density identities on seeded random kernels.
pub fn identities(config: &SuiteConfig) -> SuiteResult {
    let mut r = Recorder::new("identities");
    let small = graph_classes(5);
    let subdividable: Vec<Graph> = graph_classes(4)
        .into_iter()
        .filter(|g| g.edge_count() > 0)
        .collect();
    let local = [clique(3).expect("K3"), cycle(4).expect("C4"), diamond(), h0()];
    for i in 0..100u64 {
        let seed = config.seed ^ i;
        let n = 1 + (i as usize % 5);
        let Some(w) = r.ok(random_symmetric(n, seed), || format!("kernel {i}")) else {
            continue;
        };

        for k in 3..=8 {
            let direct = density_dp(&cycle(k).expect("cycle"), &w);
            if let Some(spectral) = r.ok(cycle_density_spectral_exact(k, &w), || "trace".into()) {
                r.check(direct == spectral, || format!("kernel {i}: t(C{k}) != trace((DA)^{k})"));
            }
        }

        let w1 = random_symmetric(1 + (i as usize % 3), seed ^ 0x7e50_0001);
        let w2 = random_symmetric(1 + (i as usize / 3 % 3), seed ^ 0x7e50_0002);
        if let (Some(w1), Some(w2)) = (r.ok(w1, || "w1".into()), r.ok(w2, || "w2".into())) {
            let product = w1.tensor_product(&w2);
            for h in &small {
                let lhs = density_dp(h, &product);
                let rhs = density_dp(h, &w1) * density_dp(h, &w2);
                r.check(lhs == rhs, || format!("kernel {i}: tensor product on {}", to_compact(h)));
            }
        }

        for ell in 1..=3 {
            let Some(power) = r.ok(w.operator_power(ell + 1), || "power".into()) else {
                continue;
            };
            for h in &subdividable {
                let Some(sub) = r.ok(subdivide(h, ell), || "subdivide".into()) else {
                    continue;
                };
                r.check(density_dp(&sub, &w) == density_dp(h, &power), || {
                    format!("kernel {i}: {ell}-subdivision of {}", to_compact(h))
                });
            }
        }

        let p = ratio(1 + (i as i64 % 4), 5);
        for h in &local[..3] {
            if let Some(terms) = r.ok(psd_expansion(h, &p, &w), || "expansion".into()) {
                r.check(expansion_total(&terms) == density_dp(h, &w.shift(&p)), || {
                    format!("kernel {i}: expansion of {}", to_compact(h))
                });
            }
        }

        for ell in 1..=5 {
            if let Some(power) = r.ok(w.operator_power(ell), || "power".into()) {
                r.check(density_dp(&path(ell), &w) == power.mass(), || {
                    format!("kernel {i}: t(P{ell}) != mean of W^{ell}")
                });
            }
        }

        for h in &local {
            let total = density_dp(h, &w);
            let mut acc = Rational::zero();
            for b in 0..n {
                let fix = Assignment::new(vec![(0, b)]);
                if let Some(c) = r.ok(conditioned_density(h, &w, &fix), || "conditioned".into()) {
                    acc += &w.measures()[b] * c;
                }
            }
            r.check(acc == total, || format!("kernel {i}: conditioned sum on {}", to_compact(h)));
        }
    }
    r.finish()
}

/// Closure of the PSD cone, copositive plus regular implies PSD, reweight invariance, and
/// the tensor square of regular locally dense graphons.
pub fn cone_closure(config: &SuiteConfig) -> SuiteResult {
    let mut r = Recorder::new("cone-closure");
    for i in 0..100u64 {
        let seed = config.seed ^ i;
        let n = 1 + (i as usize % 5);
        let Some(w) = r.ok(random_psd(n, seed), || "psd kernel".into()) else {
            continue;
        };
        for k in 1..=3 {
            if let Some(pw) = r.ok(w.operator_power(k), || "power".into()) {
                r.check(is_psd(&pw).holds, || format!("instance {i}: W^{k} not PSD"));
            }
        }
        let small = match random_psd(1 + (i as usize % 3), seed ^ 0xc0_0001) {
            Ok(k) => k,
            Err(e) => {
                r.check(false, || format!("small psd kernel: {e}"));
                continue;
            }
        };
        let max_power = if small.blocks() <= 2 { 3 } else { 2 };
        for k in 2..=max_power {
            if let Some(tp) = r.ok(small.tensor_power(k), || "tensor power".into()) {
                r.check(is_psd(&tp).holds, || format!("instance {i}: tensor power {k} not PSD"));
            }
        }
        if let Some(other) = r.ok(random_psd_on(w.measures(), seed ^ 0xc0_0002), || "psd".into()) {
            if let Some(h) = r.ok(w.hadamard_product(&other), || "hadamard".into()) {
                r.check(is_psd(&h).holds, || format!("instance {i}: Hadamard product not PSD"));
            }
        }
        if let Some(outer) =
            r.ok(random_symmetric_on(w.measures(), seed ^ 0xc0_0003), || "outer".into())
        {
            if let Some(s) = r.ok(w.sandwich(&outer), || "sandwich".into()) {
                r.check(is_psd(&s).holds, || format!("instance {i}: sandwich not PSD"));
            }
        }
    }

    let mut regular_dense = 0usize;
    let mut squares = 0usize;
    for (pi, p) in config.family_ps.iter().enumerate() {
        for i in 0..100u64 {
            let seed = config.seed ^ i ^ ((pi as u64 + 1) << 32);
            let n = 2 + (i as usize % 3);
            let Some(w) = r.ok(gen_regular_graphon(p, n, seed), || "regular graphon".into()) else {
                continue;
            };
            let Some(verdict) = r.ok(is_locally_dense(&w, p), || "local density".into()) else {
                continue;
            };
            let weights = random_measures(n, seed ^ 0xc0_0004);
            let w_scaled: Vec<Rational> = weights.iter().map(|x| x * int(n as i64 * 7)).collect();
            if let Some(rw) = r.ok(w.reweight(&BlockFunction::new(w_scaled)), || "reweight".into()) {
                if let Some(v2) = r.ok(is_locally_dense(&rw, p), || "reweighted".into()) {
                    r.check(v2.holds == verdict.holds, || {
                        format!("p={p} instance {i}: reweight changed the verdict")
                    });
                }
            }
            if let Some(ld) = r.ok(gen_locally_dense(p, 1 + i as usize % 4, seed), || "ld".into()) {
                let weights: Vec<Rational> = (0..ld.blocks()).map(|b| int(1 + (b as i64 + i as i64) % 3)).collect();
                if let Some(rw) = r.ok(ld.reweight(&BlockFunction::new(weights)), || "reweight".into()) {
                    if let Some(v2) = r.ok(is_locally_dense(&rw, p), || "reweighted".into()) {
                        r.check(v2.holds, || format!("p={p} instance {i}: reweight lost local density"));
                    }
                }
            }
            if !verdict.holds {
                continue;
            }
            regular_dense += 1;
            r.check(is_psd(&w.shift(&-p)).holds, || {
                format!("p={p} instance {i}: W - p copositive and regular but not PSD")
            });
            if n <= 4 {
                squares += 1;
                let sq = w.tensor_product(&w);
                let p2 = p * p;
                r.check(sq.is_regular(&p2), || format!("p={p} instance {i}: square not p²-regular"));
                if let Some(v) = r.ok(is_locally_dense(&sq, &p2), || "square".into()) {
                    r.check(v.holds, || format!("p={p} instance {i}: square not p²-locally dense"));
                }
            }
        }
    }
    r.check(regular_dense > 0, || "no regular locally dense instances generated".into());
    r.text("regular locally dense instances", regular_dense.to_string());
    r.text("tensor squares checked", squares.to_string());
    r.finish()
}

/// Every theta path-length vector with at most three paths of length at most 3 (counted
/// in internal vertices), at most one of them an edge.
pub fn small_theta_shapes() -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for t in 1..=3usize {
        let mut s = vec![0usize; t];
        loop {
            if s.windows(2).all(|w| w[0] <= w[1]) && s.iter().filter(|&&x| x == 0).count() <= 1 {
                out.insert(s.clone());
            }
            let mut k = 0;
            while k < t && s[k] == 3 {
                s[k] = 0;
                k += 1;
            }
            if k == t {
                break;
            }
            s[k] += 1;
        }
    }
    out.into_iter().collect()
}

/// PSD 0-regular kernels: theta graphs, spanning subgraphs of `h0` and graphs with a
/// degree-one vertex.
pub fn psd_nonnegativity(config: &SuiteConfig) -> SuiteResult {
    let mut r = Recorder::new("psd-nonnegativity");
    let thetas: Vec<(Vec<usize>, Graph)> = small_theta_shapes()
        .into_iter()
        .filter_map(|s| theta(&s).ok().map(|g| (s, g)))
        .collect();
    let h0_subgraphs: Vec<Graph> = spanning_subgraphs(&h0()).expect("8 edges").collect();
    let pendant: Vec<Graph> = graph_classes(5)
        .into_iter()
        .filter(has_degree_one_vertex)
        .collect();
    r.text("theta graphs", thetas.len().to_string());
    r.text("h0 spanning subgraphs", h0_subgraphs.len().to_string());
    r.text("graphs with a degree-one vertex", pendant.len().to_string());
    for i in 0..50u64 {
        let seed = config.seed ^ i;
        let n = 2 + (i as usize % 4);
        let measures = random_measures(n, seed ^ 0x9d_0001);
        let Some(w) = r.ok(gen_psd_zero_regular(n, &measures, seed), || "kernel".into()) else {
            continue;
        };
        for (s, g) in &thetas {
            if let Some(k) = r.ok(rooted_density_kernel(g, 0, 1, &w), || format!("rooted {s:?}")) {
                r.check(is_psd(&k).holds, || format!("kernel {i}: theta {s:?} rooted kernel not PSD"));
            }
            let t = density_dp(g, &w);
            r.check(!t.is_negative(), || format!("kernel {i}: theta {s:?} density {t}"));
        }
        for (mask, g) in h0_subgraphs.iter().enumerate() {
            let t = density_dp(g, &w);
            r.check(!t.is_negative(), || format!("kernel {i}: h0 subgraph {mask:#x} density {t}"));
        }
        for g in &pendant {
            let t = density_dp(g, &w);
            r.check(t.is_zero(), || format!("kernel {i}: {} has density {t}", to_compact(g)));
        }
    }
    r.finish()
}

struct GlueCase {
    name: &'static str,
    host: Graph,
    spec: GlueSpec,
}

fn glue_cases() -> Vec<GlueCase> {
    let case = |name, host: Graph, set: Vec<usize>, root| GlueCase {
        name,
        host,
        spec: GlueSpec::new(set, root),
    };
    vec![
        case("K2 I={} a=1", clique(2).expect("K2"), vec![], 1),
        case("K2 I={0} a=1", clique(2).expect("K2"), vec![0], 1),
        case("diamond I={} a=0", diamond(), vec![], 0),
        case("diamond I={2} a=0", diamond(), vec![2], 0),
        case("diamond I={1,3} a=0", diamond(), vec![1, 3], 0),
        case("star3 I={1,2} a=0", star(3), vec![1, 2], 0),
        case("star3 I={0} a=1", star(3), vec![0], 1),
        case("path3 I={0,2} a=1", path(3), vec![0, 2], 1),
        case("path3 I={3} a=0", path(3), vec![3], 0),
    ]
}

/// Lower bounds for known KNRS graphs on generated locally dense graphons.
pub fn knrs_inequalities(config: &SuiteConfig) -> SuiteResult {
    let mut r = Recorder::new("knrs-inequalities");
    let mut targets: Vec<(String, Graph)> = Vec::new();
    for k in 2..=5 {
        targets.push((format!("K{k}"), clique(k).expect("clique")));
    }
    for ell in 1..=3 {
        targets.push((format!("C{}", 2 * ell + 1), cycle(2 * ell + 1).expect("cycle")));
    }
    for k in 3..=5 {
        targets.push((format!("wheel{k}"), wheel(k).expect("wheel")));
    }
    for case in glue_cases() {
        for (h2_name, h2) in [("K2", clique(2).expect("K2")), ("K3", clique(3).expect("K3"))] {
            match glue(&case.host, &case.spec, &h2) {
                Ok(g) => targets.push((format!("{} with {h2_name}", case.name), g)),
                Err(e) => r.check(false, || format!("glue {}: {e}", case.name)),
            }
        }
    }
    r.text("target graphs", targets.len().to_string());
    let c3 = cycle(3).expect("C3");
    let mut strict_checked = 0usize;
    for (pi, p) in config.family_ps.iter().enumerate() {
        for i in 0..100u64 {
            let seed = config.seed ^ i ^ ((pi as u64 + 1) << 40);
            let n = 1 + (i as usize % 4);
            let Some(w) = r.ok(gen_locally_dense(p, n, seed), || "graphon".into()) else {
                continue;
            };
            for (name, g) in &targets {
                let t = density_dp(g, &w);
                let bound = rational_pow(p, g.edge_count());
                r.check(t >= bound, || format!("p={p} instance {i}: t({name}) = {t} < {bound}"));
            }
            if let Some(c) = r.ok(cut_norm(&w.shift(&-p)), || "cut norm".into()) {
                if c.is_positive() {
                    strict_checked += 1;
                    let t = density_dp(&c3, &w);
                    r.check(t > rational_pow(p, 3), || {
                        format!("p={p} instance {i}: cut norm {c} > 0 but t(C3) = p³")
                    });
                }
            }
        }
    }
    r.text("non-constant instances (strict C3 check)", strict_checked.to_string());
    r.finish()
}

/// Local search never certifies `h0` subgraphs, does certify a 6-vertex non-theta graph,
/// and is reproducible.
pub fn search_certification(config: &SuiteConfig) -> SuiteResult {
    let mut r = Recorder::new("search-certification");
    let mut classes: Vec<(Vec<u8>, Graph)> = Vec::new();
    let mut seen = BTreeSet::new();
    for g in spanning_subgraphs(&h0()).expect("8 edges") {
        let g = without_isolated(&g);
        if g.edge_count() == 0 {
            continue;
        }
        let key = canonical_form(&g).expect("at most 6 vertices");
        if seen.insert(key.clone()) {
            classes.push((key, g));
        }
    }
    r.text("h0 subgraph classes searched", classes.len().to_string());
    for (idx, (_, g)) in classes.iter().enumerate() {
        let seed = config.seed ^ ((idx as u64) << 16);
        let Some(report) = r.ok(minimize_density(g, 5, 4, 400, seed), || "search".into()) else {
            continue;
        };
        r.check(report.best_objective >= -1e-9, || {
            format!("h0 subgraph {}: objective {}", to_compact(g), report.best_objective)
        });
        if let Some(c) = r.ok(certify_counterexample(&report), || "certify".into()) {
            r.check(!c.certified, || format!("h0 subgraph {} certified negative", to_compact(g)));
        }
    }

    // candidates ordered by their density in the five-block kernel, most negative first
    let guide = sweep_graphs(&config.kernel_5x5, 6).unwrap_or_default();
    let mut order: Vec<Graph> = guide
        .into_iter()
        .map(|(g, _)| g)
        .filter(|g| g.vertex_count() == 6 && !is_theta(g))
        .collect();
    if order.is_empty() {
        order = sweep_candidates(6)
            .unwrap_or_default()
            .into_iter()
            .filter(|g| g.vertex_count() == 6 && !is_theta(g))
            .collect();
    }
    let restarts = 40;
    let steps = 3000;
    let mut found = None;
    let mut attempts = 0;
    for g in &order {
        attempts += 1;
        let Some(report) = r.ok(minimize_density(g, 5, restarts, steps, config.seed), || "search".into()) else {
            continue;
        };
        let Some(c) = r.ok(certify_counterexample(&report), || "certify".into()) else {
            continue;
        };
        if c.certified {
            found = Some(c);
            break;
        }
    }
    r.text("graphs tried", attempts.to_string());
    match &found {
        Some(c) => {
            r.text("certified graph", to_compact(&c.graph.to_graph().expect("valid")));
            r.text("best restart", c.best_restart.to_string());
            let value = c.certified_value.clone().unwrap_or_default();
            if let Ok(v) = parse_rational(&value) {
                r.text("certified value (approx)", format!("{:.6e}", Scalar::to_f64(&v)));
            }
            r.text("certified value", value);
            r.check(c.best_restart < 200, || "certified beyond 200 restarts".into());
        }
        None => r.check(false, || "no certified negative density found".into()),
    }

    let g = order.first().cloned().unwrap_or_else(h0);
    let a = minimize_density(&g, 5, 6, 500, config.seed ^ 0xd5);
    let b = minimize_density(&g, 5, 6, 500, config.seed ^ 0xd5);
    match (a, b) {
        (Ok(a), Ok(b)) => r.check(a.to_json() == b.to_json(), || "reports differ for equal seeds".into()),
        _ => r.check(false, || "determinism runs failed".into()),
    }
    r.finish()
}

/// Every check, in criterion order.
pub const CHECKS: [fn(&SuiteConfig) -> SuiteResult; 7] = [
    four_block_kernel,
    negative_density_sweep,
    identities,
    cone_closure,
    psd_nonnegativity,
    knrs_inequalities,
    search_certification,
];

pub fn run_all(config: &SuiteConfig) -> Vec<SuiteResult> {
    CHECKS.iter().map(|check| check(config)).collect()
}

/// The 5×5 kernel with one symmetric pair of entries negated, a negative control that
/// must fail the PSD check.
pub fn corrupted_5x5() -> Kernel {
    let w = counterexample_5x5();
    let mut m = w.matrix().clone();
    m[(0, 1)] = -m[(0, 1)].clone();
    m[(1, 0)] = -m[(1, 0)].clone();
    Kernel::new(w.measures().to_vec(), m).expect("still symmetric")
}
