mod common;

use proptest::prelude::*;

use bctdcs::outerbound::{support_outer, OuterConfig, OuterObjective};
use bctdcs::regions::{capacity_region, InnerSupport, SupportCase, Thresholds};
use bctdcs::simplexopt::{for_each_lattice_point, maximize_simplex};
use bctdcs::*;

fn prob() -> impl Strategy<Value = f64> {
    prop_oneof![3 => 0.0..=1.0f64, 1 => Just(0.0), 1 => Just(1.0), 1 => Just(0.5)]
}

fn spec_with(nx: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ChannelSpec<f64>> {
    nx.prop_flat_map(|n| {
        (
            prop::collection::vec(0..3usize, n),
            prop::collection::vec(0..3usize, n),
            prob(),
            prob(),
        )
    })
    .prop_map(|(f1, f2, p1, p2)| ChannelSpec::new(f1, f2, p1, p2).unwrap())
}

fn canonical_spec(nx: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ChannelSpec<f64>> {
    spec_with(nx).prop_map(|s| canonicalize(&s).0)
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0..1.0f64], n).prop_map(|mut w| {
        if w.iter().all(|&v| v == 0.0) {
            w[0] = 1.0;
        }
        let s: f64 = w.iter().sum();
        w.iter().map(|v| v / s).collect()
    })
}

fn spec_and_px() -> impl Strategy<Value = (ChannelSpec<f64>, Vec<f64>)> {
    spec_with(1..=5).prop_flat_map(|s| {
        let n = s.input_size();
        (Just(s), weights(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn entropy_permutation_and_bound(w in (1..7usize).prop_flat_map(weights), rot in 0..7usize) {
        let h = entropy_of(&w);
        let mut r = w.clone();
        r.rotate_left(rot % w.len());
        r.reverse();
        prop_assert!((entropy_of(&r) - h).abs() < 1e-12);
        prop_assert!(h >= 0.0);
        prop_assert!(h <= (w.len() as f64).log2() + 1e-12);
        let u = vec![1.0 / w.len() as f64; w.len()];
        prop_assert!((entropy_of(&u) - (w.len() as f64).log2()).abs() < 1e-12);
    }

    #[test]
    fn report_identities((rows, cols, w) in (1..5usize, 1..5usize).prop_flat_map(|(r, c)| (Just(r), Just(c), weights(r * c)))) {
        let e = report(&JointPmf::new(rows, cols, w).unwrap());
        prop_assert!((e.h_f1 + e.h_f2_given_f1 - e.h_f2 - e.h_f1_given_f2).abs() < 1e-9);
        prop_assert!((e.mi_f1_f2 - (e.h_f1 - e.h_f1_given_f2)).abs() < 1e-12);
        prop_assert!(e.mi_f1_f2 >= -1e-12);
        prop_assert!(e.mi_f1_f2 <= e.h_f1.min(e.h_f2) + 1e-9);
    }

    #[test]
    fn induced_marginals_are_pushforwards((spec, w) in spec_and_px()) {
        let px = Pmf::new(w).unwrap();
        let j = induced_joint(&spec, &px).unwrap();
        let n = spec.output_size();
        let a = px.pushforward(spec.f1(), n).unwrap();
        let b = px.pushforward(spec.f2(), n).unwrap();
        for (x, y) in j.row_marginal().weights().iter().zip(a.weights()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        for (x, y) in j.col_marginal().weights().iter().zip(b.weights()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn receiver_rate_ignores_input_labels((spec, w) in spec_and_px(), shift in 0..5usize) {
        let n = spec.input_size();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let f1: Vec<usize> = perm.iter().map(|&i| spec.f1()[i]).collect();
        let f2: Vec<usize> = perm.iter().map(|&i| spec.f2()[i]).collect();
        let pw: Vec<f64> = perm.iter().map(|&i| w[i]).collect();
        let relabeled = ChannelSpec::new(f1, f2, spec.p1(), spec.p2()).unwrap();
        for r in [Receiver::First, Receiver::Second] {
            let a = receiver_channel_mi(&spec, &Pmf::new(w.clone()).unwrap(), r).unwrap();
            let b = receiver_channel_mi(&relabeled, &Pmf::new(pw.clone()).unwrap(), r).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn canonicalize_is_idempotent(spec in spec_with(1..=4)) {
        let (c, _) = canonicalize(&spec);
        prop_assert!(c.p1() >= c.p2());
        let (cc, swapped) = canonicalize(&c);
        prop_assert_eq!(&cc, &c);
        prop_assert!(!swapped);
        prop_assert_eq!(c.f1(), spec.f1());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lattice_dominance(spec in spec_with(2..=3), l in 0.0..1.0f64, m in 2..7usize) {
        let laws = ComponentLaws::new(&spec);
        let obj = |p: &[f64]| {
            let e = laws.report(p);
            e.h_f1 + l * e.mi_f1_f2 - 0.3 * e.h_f2_given_f1
        };
        let cfg = OptConfig::for_dimension(spec.input_size()).with_grid(m);
        let best = maximize_simplex(obj, spec.input_size(), &cfg).unwrap();
        prop_assert!((obj(best.argmax.weights()) - best.value).abs() < 1e-12);
        let mut worst = f64::NEG_INFINITY;
        for_each_lattice_point(spec.input_size(), m, |p: &[f64]| worst = worst.max(obj(p))).unwrap();
        prop_assert!(best.value >= worst - 1e-12);
        let doubled = maximize_simplex(obj, spec.input_size(), &cfg.clone().with_grid(2 * m)).unwrap();
        prop_assert!(doubled.value >= best.value - 1e-12);
    }

    #[test]
    fn entropy_maximum_is_uniform(n in 1..6usize) {
        let best = maximize_simplex(|p: &[f64]| entropy_of(p), n, &OptConfig::for_dimension(n)).unwrap();
        prop_assert!(((n as f64).log2() - best.value).abs() < 1e-4);
    }

    #[test]
    fn support_lines_touch_polygon(spec in canonical_spec(2..=3)) {
        let cfg = OptConfig::for_dimension(spec.input_size());
        let region = capacity_region(&spec, 6, &cfg).unwrap();
        let poly = &region.polygon;
        for (w1, w2, s) in &region.facets {
            for v in poly.vertices() {
                prop_assert!(v.dot(*w1, *w2) <= s.value + 1e-6);
            }
            prop_assert!((poly.support(*w1, *w2) - s.value).abs() <= 1e-3);
        }
    }

    #[test]
    fn regions_transpose_under_swap(spec in spec_with(2..=3)) {
        common::check_swap_symmetry(&spec).map_err(TestCaseError::fail)?;
        common::check_convex(&spec).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn support_curve_shape(spec in canonical_spec(2..=3)) {
        common::check_support_curve(&spec).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn outer_dominates_inner(spec in canonical_spec(2..=3), l in 0.0..4.0f64) {
        let nx = spec.input_size();
        let inner = InnerSupport::new(&spec, &OptConfig::for_dimension(nx)).unwrap().at(l).unwrap();
        let outer = support_outer(&spec, l, nx + 1, &OuterConfig::for_dims(nx, nx + 1)).unwrap();
        prop_assert!(outer.value >= inner.value - 1e-9);
        let laws = ComponentLaws::new(&spec);
        let a = laws.aux_report(outer.argmax.weights(), nx + 1);
        let t = Thresholds::of(&spec);
        match inner.case {
            SupportCase::R1 if l < t.low => {
                let o = OuterObjective::new(&spec, l).unwrap();
                let terms = (o.c_f1_given_u * a.h_f1_given_u).abs() + (o.c_f2_given_u * a.h_f2_given_u).abs();
                prop_assert!(terms <= 1e-6);
            }
            SupportCase::R3 => {
                let e = laws.report(outer.argmax.col_marginal().weights());
                let (p1, p2) = (spec.p1(), spec.p2());
                let with_f1 = p1 * e.h_f1 + (1.0 - p1) * e.mi_f1_f2 + l * (1.0 - p2) * e.h_f2_given_f1;
                prop_assert!((with_f1 - outer.value).abs() <= 1e-4);
            }
            _ => {}
        }
    }

    #[test]
    fn outer_grows_with_auxiliary(spec in canonical_spec(2..=3), l in 0.0..4.0f64) {
        common::check_u_monotone(&spec, l, spec.input_size()).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn single_precision_pipeline() {
    let spec = bctdcs::examples::blackwell_channel(0.7f32, 0.3).unwrap();
    let poly = capacity_polygon(&spec, 4, &OptConfig::<f32>::for_dimension(3)).unwrap();
    assert!(poly.is_convex(1e-5));
    assert!((poly.support(1.0, 0.0) - 1.0).abs() < 1e-4);
}
