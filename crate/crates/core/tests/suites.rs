use atl::verify::{resolve_suites, VerifyConfig};

fn run(gens: usize) {
    let cfg = VerifyConfig { gens, seed: 7, samples: 10, max_len: 5, points: 3, kmax: 3 };
    let mut failed = Vec::new();
    for suite in resolve_suites("all").unwrap() {
        let start = std::time::Instant::now();
        for r in suite.run(&cfg) {
            println!("{:>5} {:<18} {} ({} cases) {:?}", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.name, r.cases, start.elapsed());
            if !r.passed {
                println!("      {:?}", r.failures);
                failed.push(r.name.clone());
            }
        }
    }
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}

#[test]
fn all_suites_rank_two() {
    run(2);
}

#[test]
fn all_suites_rank_three() {
    run(3);
}
