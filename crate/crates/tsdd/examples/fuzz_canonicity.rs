//! Random canonicity run, then the same run with one trimming rule disabled.

use tsdd::fuzz::{run, FuzzConfig};
use tsdd::Rule;

fn main() {
    let cfg = FuzzConfig {
        vars: 4,
        trials: 200,
        ..FuzzConfig::default()
    };
    let report = run(&cfg);
    for (kind, k) in &report.kinds {
        println!(
            "{kind:7} failures={} checked rewrites={}",
            k.failures, k.checked_firings
        );
    }

    let broken = FuzzConfig {
        disabled: vec![Rule::A1],
        trials: 50,
        ..cfg
    };
    let report = run(&broken);
    println!("with a1 disabled: {} failures", report.failures.len());
    if let Some(f) = report.failures.first() {
        println!(
            "first: seed={} trial={} kind={} {}",
            f.seed, f.trial, f.kind, f.reason
        );
        for line in f.trace.iter().take(5) {
            println!("  {line}");
        }
    }
}
