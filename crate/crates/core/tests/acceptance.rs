//! End-to-end checks of the headline numerical claims. Each test prints one
//! PASS/FAIL line.

mod common;

use std::time::Instant;

use rand::Rng;

use bctdcs::examples::{blackwell_channel, blackwell_sweep_hull, dof, finite_field_region, FiniteFieldSpec};
use bctdcs::outerbound::{
    brute_force_support, converse_lambdas, default_u_size, lattice_error_bound, support_outer, verify_converse,
    OuterConfig,
};
use bctdcs::regions::{
    capacity_polygon, primed_regions_with, proposition_regions, InnerSupport, RatePair, RegionPolygon,
};
use bctdcs::{ChannelSpec, OptConfig};

use common::*;

fn report(id: u8, name: &str, ok: bool, detail: &str) {
    println!("\n[{id}] {name}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
}

fn directions(n: usize) -> Vec<(f64, f64)> {
    let half = n / 2;
    let mut d: Vec<(f64, f64)> = (0..half).map(|i| (1.0, i as f64 / (half - 1) as f64)).collect();
    d.extend((0..n - half).map(|i| (i as f64 / (n - half) as f64, 1.0)));
    d
}

fn max_support_gap(a: &RegionPolygon<f64>, b: &RegionPolygon<f64>, n: usize) -> f64 {
    directions(n)
        .into_iter()
        .map(|(w1, w2)| (a.support(w1, w2) - b.support(w1, w2)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn finite_field_reproduction() {
    let ff = FiniteFieldSpec::new(2, [[1, 1], [1, 0]]).unwrap();
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    for (p1, p2) in [(0.5, 0.5), (0.7, 0.4), (1.0, 0.0)] {
        let spec = common::ff(2, p1, p2);
        let start = Instant::now();
        let poly = capacity_polygon(&spec, 64, &OptConfig::for_dimension(4)).unwrap();
        slowest = slowest.max(start.elapsed().as_secs_f64());
        let exact = finite_field_region(&ff, p1, p2).unwrap();
        worst = worst.max(poly.vertex_distance(&exact));
    }
    let ok = worst <= 5e-3 && slowest <= 30.0;
    report(1, "finite-field region", ok, &format!("max vertex error {worst:.2e} bits, slowest case {slowest:.2}s"));
    assert!(ok);
}

#[test]
fn finite_field_sum_capacity() {
    let mut worst: f64 = 0.0;
    for k in [2u64, 3] {
        for (p1, p2) in [(0.7, 0.4), (0.9, 0.2)] {
            let spec = common::ff(k, p1, p2);
            let poly = capacity_polygon(&spec, 16, &OptConfig::for_dimension(spec.input_size())).unwrap();
            let expected = (p1 + (1.0 - p2)) * (k as f64).log2();
            worst = worst.max((poly.max_sum_rate() - expected).abs());
        }
    }
    let dof_exact = dof(0.7, 0.4).unwrap() == 0.7 + (1.0 - 0.4) && dof(0.9, 0.2).unwrap() == 0.9 + (1.0 - 0.2);
    let ok = worst <= 5e-3 && dof_exact;
    report(2, "finite-field sum capacity and DoF", ok, &format!("max sum-rate error {worst:.2e} bits, dof exact: {dof_exact}"));
    assert!(ok);
}

#[test]
fn blackwell_reproduction() {
    let mut worst: f64 = 0.0;
    let mut worst_c: f64 = 0.0;
    let mut tri_err = f64::INFINITY;
    for (p1, p2) in [(0.5, 0.5), (0.7, 0.3), (1.0, 0.0)] {
        let spec = blackwell_channel(p1, p2).unwrap();
        let cfg = OptConfig::for_dimension(3);
        let poly = capacity_polygon(&spec, 64, &cfg).unwrap();
        let closed = blackwell_sweep_hull(p1, p2, 101).unwrap();
        worst = worst.max(max_support_gap(&poly, &closed, 64));
        let inner = InnerSupport::new(&spec, &cfg).unwrap();
        worst_c = worst_c
            .max((inner.c1().unwrap().value - 1.0).abs())
            .max((inner.c2().unwrap().value - 1.0).abs());
        if (p1, p2) == (0.5, 0.5) {
            let tri = RegionPolygon::from_points("t", &[RatePair::new(1.0, 0.0), RatePair::new(0.0, 1.0)]);
            tri_err = poly.vertex_distance(&tri);
        }
    }
    let ok = worst <= 5e-3 && tri_err <= 1e-3 && worst_c <= 1e-9;
    report(
        3,
        "Blackwell region",
        ok,
        &format!("support gap {worst:.2e} bits, triangle error {tri_err:.2e}, |C - 1| {worst_c:.2e}"),
    );
    assert!(ok);
}

#[test]
fn converse_certification() {
    let start = Instant::now();
    let mut specs = vec![blackwell_channel(0.7, 0.3).unwrap(), common::ff(2, 0.7, 0.4)];
    let mut r = rng(4);
    for i in 0..20 {
        let nx = 3 + i % 2;
        specs.push(random_spec(&mut r, nx, nx, true));
    }
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut samples = 0;
    for (i, spec) in specs.iter().enumerate() {
        let lambdas = converse_lambdas(spec, 8);
        let cfg = OptConfig::for_dimension(spec.input_size());
        match verify_converse(spec, &lambdas, default_u_size(spec.input_size()), 5e-3, &cfg) {
            Ok(rep) => {
                samples += rep.samples.len();
                worst = worst.max(rep.max_gap);
                if !rep.pass {
                    failures.push(format!("spec {i}: gap {:.2e}", rep.max_gap));
                }
            }
            Err(e) => failures.push(format!("spec {i}: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && secs <= 300.0;
    report(
        4,
        "converse certification",
        ok,
        &format!("{} specs, {samples} slopes, max gap {worst:.2e} bits, {secs:.1}s {failures:?}", specs.len()),
    );
    assert!(ok);
}

#[test]
fn oracle_equivalence() {
    let mut r = rng(5);
    let mut failures = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for i in 0..10 {
        let spec = random_spec(&mut r, 3, 3, true);
        let u = 3 + i % 2;
        let grid = 2 * OptConfig::<f64>::default_denominator(3 * u);
        let inner = InnerSupport::new(&spec, &OptConfig::for_dimension(3)).unwrap();
        let t = bctdcs::regions::Thresholds::of(&spec);
        let high = if t.high.is_finite() { t.high } else { 2.0 };
        let lambdas = [0.5 * t.low.min(1.0), 0.5 * (t.low.min(1.0) + 1.0), 0.5 * (1.0 + high), 2.0 * high];
        for &l in &lambdas {
            let brute = brute_force_support(&spec, l, u, grid).unwrap();
            let bound = lattice_error_bound(&spec, l, u, grid).unwrap();
            let outer = support_outer(&spec, l, u, &OuterConfig::for_dims(3, u)).unwrap().value;
            let inner_v = inner.at(l).unwrap().value;
            for (name, v) in [("inner", inner_v), ("outer", outer)] {
                let d = (v - brute).abs();
                worst_ratio = worst_ratio.max(d / (2.0 * bound));
                if d > 2.0 * bound || v < brute - 1e-9 {
                    failures.push(format!("spec {i} lambda {l:.3}: {name} {v} vs lattice {brute} (bound {bound:.2e})"));
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(5, "oracle equivalence", ok, &format!("worst gap / (2 x bound) = {worst_ratio:.3} {failures:?}"));
    assert!(ok);
}

#[test]
fn proposition_matches_primed_regions() {
    let mut specs = vec![blackwell_channel(0.7, 0.3).unwrap(), common::ff(2, 0.7, 0.4), blackwell_channel(0.5, 0.5).unwrap()];
    let mut r = rng(6);
    for _ in 0..3 {
        specs.push(random_spec(&mut r, 3, 3, true));
    }
    let mut worst: f64 = 0.0;
    let mut worst_out: f64 = 0.0;
    for spec in &specs {
        let cfg = OptConfig::for_dimension(spec.input_size());
        let props = proposition_regions(spec, 16, &cfg).unwrap();
        let extra: Vec<_> = props.p1_set.iter().chain(&props.p2_set).cloned().collect();
        let primed = primed_regions_with(spec, cfg.grid_denominator, &extra).unwrap();
        let primed_hull = RegionPolygon::hull_of("primed", primed.iter());
        worst = worst.max(max_support_gap(&props.hull(), &primed_hull, 64));
        for (a, b) in [(&props.regions[2], &primed[2]), (&props.regions[3], &primed[3])] {
            for v in a.vertices() {
                worst_out = worst_out.max(b.distance_to(*v));
            }
        }
    }
    let ok = worst <= 5e-3 && worst_out <= 1e-6;
    report(6, "proposition vs primed regions", ok, &format!("support gap {worst:.2e} bits, containment {worst_out:.2e}"));
    assert!(ok);
}

fn random_canonical(r: &mut impl Rng) -> ChannelSpec<f64> {
    let nx = r.gen_range(2..=3);
    random_spec(r, nx, 3, true)
}

#[test]
fn property_suites() {
    let mut r = rng(7);
    let mut violations = Vec::new();
    let n = 100;
    for i in 0..n {
        // Entropy identities on a random joint.
        let rows = r.gen_range(1..=4);
        let cols = r.gen_range(1..=4);
        let w = random_pmf(&mut r, rows * cols);
        let j = bctdcs::JointPmf::new(rows, cols, w).unwrap();
        let e = bctdcs::report(&j);
        if (e.h_f1 + e.h_f2_given_f1 - e.h_f2 - e.h_f1_given_f2).abs() > 1e-9
            || e.mi_f1_f2 < -1e-12
            || e.mi_f1_f2 > e.h_f1.min(e.h_f2) + 1e-9
        {
            violations.push(format!("entropy identity {i}"));
        }
        let spec = random_canonical(&mut r);
        let loose = random_spec(&mut r, spec.input_size(), 3, false);
        for check in [
            check_swap_symmetry(&loose),
            check_convex(&loose),
            check_support_curve(&spec),
        ] {
            if let Err(m) = check {
                violations.push(format!("instance {i}: {m}"));
            }
        }
        let lambda = r.gen_range(0.0..3.0);
        if let Err(m) = check_u_monotone(&spec, lambda, spec.input_size()) {
            violations.push(format!("instance {i}: {m}"));
        }
    }
    let ok = violations.is_empty();
    report(7, "property suites", ok, &format!("{n} instances per suite, violations {violations:?}"));
    assert!(ok);
}
