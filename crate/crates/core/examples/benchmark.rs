//! Times the end-to-end transfer at a few image sizes.
//!
//! ```bash
//! cargo run --release -p svdna --example benchmark
//! ```

fn main() -> svdna::Result<()> {
    for size in [64, 128, 256, 512] {
        let iterations = if size > 256 { 3 } else { 10 };
        let report = svdna::bench::run(size, iterations, 1)?;
        println!(
            "{size:>4}x{size:<4} k={:<3} median {:>8.2} ms  p95 {:>8.2} ms",
            report.k,
            report.median().as_secs_f64() * 1e3,
            report.p95().as_secs_f64() * 1e3
        );
    }
    Ok(())
}
