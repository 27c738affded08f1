//! Singular value decomposition, truncation, and block recombination on a
//! small matrix.
//!
//! ```bash
//! cargo run -p svdna --example low_rank
//! ```

use svdna::{low_rank, recombine, svd, NoiseThreshold, RealMatrix};

fn main() -> svdna::Result<()> {
    let a = RealMatrix::from_fn(6, 4, |r, c| ((r + 1) * (c + 2)) as f64 + if r == c { 3.0 } else { 0.0 });
    let f = svd(&a)?;
    println!("sigma = {:.4?}", f.sigma());

    for k in 0..=f.rank_bound() {
        let approx = low_rank(&f, NoiseThreshold::new(k))?;
        let err = a.sub(&approx)?.frobenius_norm();
        let tail = f.sigma()[k..].iter().fold(0.0, |acc, s| acc + s * s).sqrt();
        println!("k={k}  |A - A_k| = {err:.6}  (tail singular values {tail:.6})");
    }

    // content of `a`, remaining structure of a transposed-and-shifted matrix
    let b = RealMatrix::from_fn(6, 4, |r, c| (r as f64 - c as f64).abs());
    let mixed = recombine(&f, &svd(&b)?, NoiseThreshold::new(1))?;
    println!("row 0 after keeping one triplet of A: {:.3?}", mixed.row(0));
    Ok(())
}
