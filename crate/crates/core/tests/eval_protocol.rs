mod common;

use common::*;
use eed_core::dataset::{cylinder_bell_funnel, LabeledDataset, LabeledSeries, Role};
use eed_core::eval::{
    classify_all, evaluate, grid_search, loocv_error, loocv_error_for, nearest, nn1_classify, summarize_errors,
    Encoding, GridSpec, PreparedSet, Representation,
};
use eed_core::sax::{symbolize, SaxParams};
use eed_core::{Metric, MetricKind};

fn words(items: &[(i64, &str)]) -> PreparedSet {
    PreparedSet::from_sequences(
        items.iter().map(|(l, _)| *l).collect(),
        items.iter().map(|(_, w)| seq(w)).collect(),
    )
    .unwrap()
}

fn raw(name: &str, rows: &[(i64, Vec<f64>)]) -> LabeledDataset {
    LabeledDataset::new(
        name,
        Role::Train,
        rows.iter()
            .map(|(label, series)| LabeledSeries {
                label: *label,
                series: series.clone(),
            })
            .collect(),
    )
}

fn query(w: &str) -> Representation {
    let set = words(&[(0, w)]);
    set.items[0].clone()
}

#[test]
fn three_instance_argmin() {
    let train = words(&[(1, "abca"), (2, "aabbcc"), (3, "adbcef")]);
    let metric = Metric::eed(1.0).unwrap();
    // By hand: abcc vs abca = 1 + 2, vs aabbcc = 2 + 2, vs adbcef = 3 + 4.
    let expected = [3.0, 4.0, 7.0];
    for ((_, w), e) in [(1, "abca"), (2, "aabbcc"), (3, "adbcef")].iter().zip(expected) {
        assert_eq!(naive_eed(&indices(&seq("abcc")), &indices(&seq(w)), 1.0), e);
    }
    let hit = nearest(&query("abcc"), &train, &metric, None).unwrap();
    assert_eq!((hit.index, hit.distance, hit.label), (0, 3.0, 1));
    assert_eq!(nn1_classify(&query("adbcef"), &train, &metric).unwrap(), 3);
}

#[test]
fn single_training_instance_always_wins() {
    let train = words(&[(7, "abc")]);
    for q in ["", "zzz", "abc", "cab"] {
        assert_eq!(nn1_classify(&query(q), &train, &Metric::Ed).unwrap(), 7);
    }
}

#[test]
fn four_instance_loocv() {
    let set = words(&[(1, "abab"), (1, "bbbb"), (2, "abba"), (2, "aaaa")]);
    // λ=1: abab->abba (2, wrong), bbbb->abab (tie 6 with abba, lowest index, right),
    // abba->abab (wrong), aaaa->abab (tie 6 with abba, wrong).
    assert_eq!(loocv_error(&set, &Metric::eed(1.0).unwrap()).unwrap(), 0.75);
    // λ=0: abab->bbbb (right), bbbb->abab (right), abba->abab, aaaa->abab (both wrong).
    assert_eq!(loocv_error(&set, &Metric::Ed).unwrap(), 0.5);

    let ws: Vec<Vec<u8>> = ["abab", "bbbb", "abba", "aaaa"]
        .iter()
        .map(|w| indices(&seq(w)))
        .collect();
    assert_eq!(naive_loocv(&ws, &set.labels, 1.0), 3);
    assert_eq!(naive_loocv(&ws, &set.labels, 0.0), 2);
}

#[test]
fn duplicated_instances_give_zero_loocv() {
    let set = words(&[(1, "abc"), (2, "cba"), (1, "abc"), (2, "cba"), (3, "bbb"), (3, "bbb")]);
    assert_eq!(loocv_error(&set, &Metric::Ed).unwrap(), 0.0);
    assert_eq!(loocv_error(&set, &Metric::eed(0.75).unwrap()).unwrap(), 0.0);
}

/// Seven level-valued series whose α=3 words make λ=0.5 the unique best.
fn lambda_half_toy() -> LabeledDataset {
    let rows: [(i64, [f64; 6]); 7] = [
        (2, [0.0, 0.0, 1.0, 1.0, 1.0, 0.0]),
        (1, [1.0, 1.0, 0.0, 1.0, 1.0, -1.0]),
        (2, [-1.0, 1.0, 0.0, 1.0, 0.0, 0.0]),
        (2, [0.0, 1.0, 0.0, 1.0, 1.0, 0.0]),
        (2, [0.0, -1.0, 0.0, 0.0, -1.0, 0.0]),
        (1, [1.0, -1.0, 0.0, 1.0, 1.0, 1.0]),
        (1, [1.0, 0.0, -1.0, 1.0, 1.0, -1.0]),
    ];
    raw("toy", &rows.iter().map(|(l, s)| (*l, s.to_vec())).collect::<Vec<_>>())
}

#[test]
fn grid_prefers_half_lambda_on_toy() {
    let ds = lambda_half_toy();
    let spec = GridSpec {
        alpha_lo: 3,
        alpha_hi: 3,
        ratio: 1,
        ..GridSpec::default()
    };
    let report = grid_search(&ds, MetricKind::Eed, &spec).unwrap();
    assert_eq!(report.best_alpha, Some(3));
    assert_eq!(report.best_lambda, Some(0.5));
    let wrong: Vec<usize> = report.grid.iter().map(|p| p.misclassified).collect();
    assert_eq!(wrong, vec![4, 3, 2, 3, 3]);
    assert_eq!(report.train_error, 2.0 / 7.0);

    // Independent route: symbolize, then brute-force LOOCV with naive kernels.
    let p = SaxParams::new(3, 6).unwrap();
    let ws: Vec<Vec<u8>> = ds
        .instances
        .iter()
        .map(|i| indices(&symbolize(&i.series, &p).unwrap().word))
        .collect();
    let labels: Vec<i64> = ds.labels().collect();
    for point in &report.grid {
        assert_eq!(naive_loocv(&ws, &labels, point.lambda.unwrap()), point.misclassified);
    }
}

#[test]
fn falling_error_extends_lambda() {
    let ds = lambda_half_toy();
    let spec = GridSpec {
        alpha_lo: 3,
        alpha_hi: 3,
        ratio: 1,
        lambdas: vec![0.0, 0.25, 0.5],
        extend_lambda: true,
    };
    let report = grid_search(&ds, MetricKind::Eed, &spec).unwrap();
    // 4 > 3 > 2 over the grid, so 0.75 is tried; it scores 3 and stops the walk.
    let lambdas: Vec<f64> = report.grid.iter().map(|p| p.lambda.unwrap()).collect();
    assert_eq!(lambdas, vec![0.0, 0.25, 0.5, 0.75]);
    assert_eq!(report.best_lambda, Some(0.5));

    let no_ext = GridSpec {
        extend_lambda: false,
        ..spec.clone()
    };
    assert_eq!(grid_search(&ds, MetricKind::Eed, &no_ext).unwrap().grid.len(), 3);
    let short = GridSpec {
        lambdas: vec![0.0, 0.25],
        ..spec
    };
    assert_eq!(grid_search(&ds, MetricKind::Eed, &short).unwrap().grid.len(), 2);
}

#[test]
fn ties_pick_smallest_alpha_and_lambda() {
    let base = [0.0, 1.0, 3.0, 2.0, 5.0, 4.0, 6.0, 7.0];
    let rev: Vec<f64> = base.iter().rev().copied().collect();
    let ds = raw(
        "dups",
        &[(1, base.to_vec()), (1, base.to_vec()), (2, rev.clone()), (2, rev)],
    );
    let report = grid_search(&ds, MetricKind::Eed, &GridSpec::alphas(4, 9)).unwrap();
    assert!(report.grid.iter().all(|p| p.error == 0.0));
    assert_eq!((report.best_alpha, report.best_lambda), (Some(4), Some(0.0)));

    let single = GridSpec {
        alpha_lo: 6,
        alpha_hi: 6,
        lambdas: vec![0.75],
        ..GridSpec::default()
    };
    let report = grid_search(&ds, MetricKind::Eed, &single).unwrap();
    assert_eq!(report.grid.len(), 1);
    assert_eq!((report.best_alpha, report.best_lambda), (Some(6), Some(0.75)));
}

#[test]
fn grid_rejects_bad_ranges() {
    let ds = lambda_half_toy();
    for spec in [GridSpec::alphas(5, 4), GridSpec::alphas(1, 4), GridSpec::alphas(3, 27)] {
        assert!(grid_search(&ds, MetricKind::Ed, &spec).is_err());
    }
    let no_lambda = GridSpec {
        lambdas: vec![],
        ..GridSpec::default()
    };
    assert!(grid_search(&ds, MetricKind::Eed, &no_lambda).is_err());
    assert!(grid_search(&ds, MetricKind::Ed, &no_lambda).is_ok());
}

#[test]
fn two_by_two_evaluation() {
    let train = raw(
        "tiny",
        &[
            (1, vec![1.0, 1.0, -1.0, -1.0, 0.0, 0.0]),
            (2, vec![-1.0, -1.0, 1.0, 1.0, 0.0, 0.0]),
        ],
    );
    let test = raw(
        "tiny",
        &[
            (1, vec![1.0, 1.0, -1.0, 0.0, -1.0, 0.0]),
            (1, vec![-1.0, -1.0, 0.0, 1.0, 0.0, 1.0]),
        ],
    );
    let p = SaxParams::new(3, 6).unwrap();
    let word = |s: &[f64]| symbolize(s, &p).unwrap().word.to_string();
    assert_eq!(word(&train.instances[0].series), "ccaabb");
    assert_eq!(word(&train.instances[1].series), "aaccbb");
    assert_eq!(word(&test.instances[0].series), "ccabab");
    assert_eq!(word(&test.instances[1].series), "aabcbc");
    // ccabab: ED 2 to ccaabb, 4 to aaccbb -> label 1 (right).
    // aabcbc: ED 2 to aaccbb, 4 to ccaabb -> label 2 (wrong).
    assert_eq!(naive_edit(b"ccabab", b"ccaabb"), 2);
    assert_eq!(naive_edit(b"ccabab", b"aaccbb"), 4);
    assert_eq!(naive_edit(b"aabcbc", b"aaccbb"), 2);
    assert_eq!(naive_edit(b"aabcbc", b"ccaabb"), 4);

    for metric in [Metric::Ed, Metric::eed(1.0).unwrap()] {
        let r = evaluate(&train, &test, &metric, Some(3), 1).unwrap();
        assert_eq!((r.misclassified, r.instances, r.test_error), (1, 2, 0.5));
        assert_eq!(r.lambda, metric.lambda());
    }
}

#[test]
fn test_subset_of_train_has_zero_error() {
    let train = cylinder_bell_funnel(4, 6, 128);
    let mut test = train.clone();
    test.instances.truncate(7);
    test.role = Role::Test;
    for metric in [Metric::Ed, Metric::eed(0.5).unwrap()] {
        let r = evaluate(&train, &test, &metric, Some(6), 4).unwrap();
        assert_eq!(r.test_error, 0.0, "{metric}");
    }
}

#[test]
fn zero_lambda_eed_predicts_like_ed() {
    let train = cylinder_bell_funnel(8, 10, 128);
    let test = cylinder_bell_funnel(9, 10, 128);
    for alpha in [3, 5, 10] {
        let enc = Encoding::for_metric(MetricKind::Ed, Some(alpha), 128, 4).unwrap();
        let tr = PreparedSet::prepare(&train, enc).unwrap();
        let te = PreparedSet::prepare(&test, enc).unwrap();
        assert_eq!(
            classify_all(&te, &tr, &Metric::Ed).unwrap(),
            classify_all(&te, &tr, &Metric::eed(0.0).unwrap()).unwrap()
        );
    }
}

#[test]
fn grid_is_deterministic_and_self_consistent() {
    let train = cylinder_bell_funnel(21, 8, 96);
    for kind in [
        MetricKind::Eed,
        MetricKind::Ed,
        MetricKind::SaxMindist,
        MetricKind::LcssSim,
        MetricKind::Euclidean,
    ] {
        let spec = GridSpec::alphas(3, 6);
        let a = grid_search(&train, kind, &spec).unwrap();
        let b = grid_search(&train, kind, &spec).unwrap();
        assert_eq!(a, b);
        let recomputed = loocv_error_for(&train, &a.best_metric().unwrap(), a.best_alpha, spec.ratio).unwrap();
        assert_eq!(recomputed, a.train_error, "{kind}");
        let min = a.grid.iter().map(|p| p.error).fold(f64::INFINITY, f64::min);
        assert_eq!(a.train_error, min);
    }
}

#[test]
fn nn1_ignores_training_order_without_ties() {
    let train = cylinder_bell_funnel(31, 6, 64);
    let test = cylinder_bell_funnel(32, 6, 64);
    let enc = Encoding::Raw;
    let tr = PreparedSet::prepare(&train, enc).unwrap();
    let te = PreparedSet::prepare(&test, enc).unwrap();
    let forward = classify_all(&te, &tr, &Metric::Euclidean).unwrap();

    let mut reversed = train.clone();
    reversed.instances.reverse();
    let tr_rev = PreparedSet::prepare(&reversed, enc).unwrap();
    assert_eq!(forward, classify_all(&te, &tr_rev, &Metric::Euclidean).unwrap());
}

#[test]
fn cbf_is_learnable() {
    let train = cylinder_bell_funnel(1, 10, 128);
    let test = cylinder_bell_funnel(2, 30, 128);
    let (tuned, report) =
        eed_core::eval::tune_and_evaluate(&train, &test, MetricKind::Eed, &GridSpec::alphas(3, 8)).unwrap();
    assert!(tuned.train_error < 0.5);
    assert!(report.test_error < 0.4, "{report:?}");
}

#[test]
fn table_two_eed_summary() {
    // EED test errors for the twenty datasets of the first experiment.
    let errors = [
        0.037, 0.06, 0.026, 0.324, 0.293, 0.365, 0.266, 0.07, 0.015, 0.008, 0.045, 0.230, 0.26, 0.19, 0.642, 0.155,
        0.149, 0.4, 0.107, 0.4,
    ];
    let s = summarize_errors(&errors).unwrap();
    assert!((s.mean - 0.202).abs() < 5e-4, "{}", s.mean);
    assert!((s.std - 0.168).abs() <= 0.02, "{}", s.std);
}
