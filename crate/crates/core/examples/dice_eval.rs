//! Per-class dice between label masks.
//!
//! ```bash
//! cargo run -p svdna --example dice_eval
//! ```

use svdna::metrics::{dice_report, dice_report_pooled, LabelMask};

fn bands(width: usize, height: usize, edges: [usize; 2]) -> svdna::Result<LabelMask> {
    let labels = (0..height)
        .flat_map(|r| (0..width).map(move |_| (r >= edges[0]) as u32 + (r >= edges[1]) as u32))
        .collect();
    LabelMask::new(width, height, labels, 3)
}

fn main() -> svdna::Result<()> {
    let gt = bands(32, 32, [10, 20])?;
    let shifted = bands(32, 32, [11, 22])?;
    let exact = bands(32, 32, [10, 20])?;

    let report = dice_report(&shifted, &gt, &[0, 1, 2])?;
    println!("shifted layers: {:?} mean {:.4}", report.per_class, report.mean);

    let pooled = dice_report_pooled([(&shifted, &gt), (&exact, &gt)], &[1, 2])?;
    println!("pooled over two pairs, classes 1 and 2: {:?} mean {:.4}", pooled.per_class, pooled.mean);
    Ok(())
}
