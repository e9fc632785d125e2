use eed_demo::{explain_view, parse_series, rank_view, symbolize_view};

#[test]
fn explain_matches_worked_pair() {
    let b = explain_view("marwan", "aarwin", 1.0, 26).unwrap();
    assert_eq!((b.edit, b.divergence, b.eed, b.distinct), (2, 2, 4.0, 6));
    assert_eq!(b.lcss, 4);
    let letters: String = b.histogram.iter().map(|r| r.symbol).collect();
    assert_eq!(letters, "aimnrw");
    let m = b.histogram.iter().find(|r| r.symbol == 'm').unwrap();
    assert_eq!((m.first, m.second), (1, 0));
}

#[test]
fn explain_rejects_bad_input() {
    assert!(explain_view("abc", "abd", 1.0, 3).unwrap_err().contains("position 2"));
    assert!(explain_view("ab", "ab", -0.5, 26).is_err());
}

#[test]
fn constant_series_lands_below_the_middle_breakpoint() {
    let v = symbolize_view(&vec!["2"; 16].join(" "), 4, 4).unwrap();
    assert_eq!(v.word, "bbbb");
    assert_eq!(v.paa, vec![0.0; 4]);
    assert_eq!(v.breakpoints.len(), 3);
    assert_eq!(v.symbols, vec![1; 4]);
}

#[test]
fn symbolize_stages_have_consistent_shapes() {
    let text: Vec<String> = (0..30).map(|i| format!("{}", (i as f64 / 3.0).sin())).collect();
    let v = symbolize_view(&text.join(","), 6, 4).unwrap();
    assert_eq!(v.normalized.len(), 30);
    assert_eq!(v.paa.len(), 8);
    assert_eq!(v.word.len(), 8);
    assert!(symbolize_view("1, 2, x", 4, 4).unwrap_err().contains("value 3"));
    assert!(symbolize_view("1 2 3 4", 30, 1).is_err());
}

#[test]
fn parse_series_accepts_mixed_separators() {
    assert_eq!(parse_series("1, 2\n3\t-4.5").unwrap(), vec![1.0, 2.0, 3.0, -4.5]);
    assert!(parse_series("1 inf").is_err());
}

#[test]
fn ranking_orders_by_eed_then_position() {
    let candidates = "aarwin\n\nrarwen\nmarwan\nnawram";
    let order = |lambda: f64| -> Vec<String> {
        rank_view("marwan", candidates, lambda, 26)
            .unwrap()
            .into_iter()
            .map(|x| x.item)
            .collect()
    };
    // aarwin (2 + 2) and the anagram nawram (4 + 0) tie; the earlier line wins.
    assert_eq!(order(1.0), ["marwan", "aarwin", "nawram", "rarwen"]);
    // A heavier frequency term favours the anagram.
    assert_eq!(order(2.0), ["marwan", "nawram", "aarwin", "rarwen"]);
    let r = rank_view("marwan", candidates, 2.0, 26).unwrap();
    assert_eq!((r[1].edit, r[1].divergence, r[1].eed), (4, 0, 4.0));
    assert!(rank_view("ab", "ab\nA", 1.0, 26).unwrap_err().contains("line 2"));
}
