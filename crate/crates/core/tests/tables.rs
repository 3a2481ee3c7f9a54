use lambda_core::canonical_tables::{enumerate_modules, verify_table, CheckStatus};
use lambda_core::conjugacy::Budget;
use lambda_core::Prime;

fn pr(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

#[test]
fn full_verification_p2() {
    for n in 0..=4 {
        let v = verify_table(pr(2), n, Budget::default()).unwrap();
        assert!(v.passed(), "{v:#?}");
        assert!(!v.partial, "p=2 n={n} should be exhaustive");
    }
}

#[test]
fn verification_p3_n4() {
    let v = verify_table(pr(3), 4, Budget::default()).unwrap();
    assert!(v.passed(), "{v:#?}");
    for c in &v.checks {
        if c.shape.as_deref() == Some("Z_3^4") {
            assert_eq!(c.method, if c.name == "completeness" { "rcf class equation" } else { "rcf" });
        } else {
            assert_ne!(c.status, CheckStatus::Skipped, "{c:?}");
        }
    }
}

#[test]
fn rows_are_grouped_by_shape() {
    for p in [2, 3, 5] {
        let r = enumerate_modules(pr(p), 4).unwrap();
        let mut seen: Vec<String> = Vec::new();
        for row in &r.rows {
            let s = row.shape.to_string();
            if seen.last() != Some(&s) {
                assert!(!seen.contains(&s), "shape {s} split");
                seen.push(s);
            }
        }
        assert_eq!(seen.len(), 5);
    }
}

/// Every shape at p=5, n=4 by orbit sweep except Z_5^4, which is out of reach
/// (|GL(4, 5)| > 10^11) and goes through the class equation.
#[test]
fn verification_p5_n4_raised_budget() {
    let v = verify_table(pr(5), 4, Budget(10_000_000)).unwrap();
    assert!(v.passed(), "{v:#?}");
    assert!(v.checks.iter().all(|c| c.status == CheckStatus::Pass));
    let sweeps = v.checks.iter().filter(|c| c.method == "orbit sweep").count();
    assert_eq!(sweeps, 4);
}
