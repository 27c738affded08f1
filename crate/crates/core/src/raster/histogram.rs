use super::GrayImage;

/// Intensity counts of an 8-bit image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram256 {
    counts: [u64; 256],
    total: u64,
}

impl Histogram256 {
    pub fn of(img: &GrayImage) -> Self {
        let mut counts = [0u64; 256];
        for &p in img.pixels() {
            counts[p as usize] += 1;
        }
        Self {
            counts,
            total: img.len() as u64,
        }
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Running sums; `cumulative()[255] == total()`.
    pub fn cumulative(&self) -> [u64; 256] {
        let mut cum = [0u64; 256];
        let mut acc = 0;
        for (c, &n) in cum.iter_mut().zip(&self.counts) {
            acc += n;
            *c = acc;
        }
        cum
    }

    pub fn cdf(&self) -> Cdf256 {
        let cum = self.cumulative();
        let total = self.total as f64;
        let mut values = [0.0; 256];
        for (v, &c) in values.iter_mut().zip(&cum) {
            *v = c as f64 / total;
        }
        // c == total divides to exactly 1.0
        Cdf256 { values }
    }

    /// Largest single-bin probability.
    pub fn max_pmf(&self) -> f64 {
        *self.counts.iter().max().unwrap() as f64 / self.total as f64
    }
}

/// Normalized cumulative distribution over the 256 intensities.
#[derive(Clone, Debug, PartialEq)]
pub struct Cdf256 {
    values: [f64; 256],
}

impl Cdf256 {
    pub fn values(&self) -> &[f64; 256] {
        &self.values
    }

    pub fn at(&self, v: u8) -> f64 {
        self.values[v as usize]
    }
}

/// Intensity mapping `L(v) = min { u : CDF_ref(u) >= CDF_src(v) }`.
///
/// The comparison is done on integer counts cross-multiplied by the other
/// image's pixel count, so images of different sizes compare exactly.
pub fn matching_lut(src: &Histogram256, reference: &Histogram256) -> [u8; 256] {
    let cum_src = src.cumulative();
    let cum_ref = reference.cumulative();
    let (ts, tr) = (u128::from(src.total), u128::from(reference.total));
    let mut lut = [0u8; 256];
    let mut u = 0usize;
    for (v, entry) in lut.iter_mut().enumerate() {
        let need = u128::from(cum_src[v]) * tr;
        // CDF_src is non-decreasing, so the search resumes where the last one stopped.
        while u < 255 && u128::from(cum_ref[u]) * ts < need {
            u += 1;
        }
        *entry = u as u8;
    }
    lut
}

/// Remaps `src` so its intensity distribution follows `reference`.
/// Output keeps the dimensions of `src`; the two images may differ in size.
pub fn histogram_match(src: &GrayImage, reference: &GrayImage) -> GrayImage {
    let lut = matching_lut(&Histogram256::of(src), &Histogram256::of(reference));
    let data = src.pixels().iter().map(|&p| lut[p as usize]).collect();
    GrayImage::new(src.width(), src.height(), data).expect("dimensions unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn img(w: usize, h: usize, px: &[u8]) -> GrayImage {
        GrayImage::new(w, h, px.to_vec()).unwrap()
    }

    fn random_image(rng: &mut impl Rng, w: usize, h: usize, lo: u8, hi: u8) -> GrayImage {
        GrayImage::from_fn(w, h, |_, _| rng.random_range(lo..=hi)).unwrap()
    }

    /// Oracle: empirical CDF by direct counting, inverse by linear scan.
    fn brute_force_match(src: &GrayImage, reference: &GrayImage) -> Vec<u8> {
        let cdf = |im: &GrayImage, u: u8| {
            im.pixels().iter().filter(|&&p| p <= u).count() as f64 / im.len() as f64
        };
        src.pixels()
            .iter()
            .map(|&v| {
                let target = cdf(src, v);
                (0..=255u8)
                    .find(|&u| cdf(reference, u) >= target - 1e-12)
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn histogram_counts() {
        let h = Histogram256::of(&GrayImage::filled(4, 4, 0).unwrap());
        assert_eq!(h.counts()[0], 16);
        assert_eq!(h.counts()[1..].iter().sum::<u64>(), 0);

        let h = Histogram256::of(&img(2, 2, &[0, 0, 255, 255]));
        assert_eq!(h.counts()[0], 2);
        assert_eq!(h.counts()[255], 2);
        assert_eq!(h.total(), 4);

        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        let r = random_image(&mut rng, 17, 9, 0, 255);
        assert_eq!(Histogram256::of(&r).counts().iter().sum::<u64>(), 17 * 9);
    }

    #[test]
    fn cdf_ends_at_one() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(4);
        let cdf = Histogram256::of(&random_image(&mut rng, 7, 13, 3, 200)).cdf();
        assert_eq!(cdf.values()[255], 1.0);
        assert!(cdf.values().windows(2).all(|w| w[0] <= w[1]));
        assert!(cdf.values().iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn matching_against_itself_is_identity() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        for _ in 0..20 {
            let x = random_image(&mut rng, 23, 11, 0, 255);
            assert_eq!(histogram_match(&x, &x), x);
        }
    }

    #[test]
    fn constant_reference_gives_constant_output() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(6);
        let src = random_image(&mut rng, 10, 10, 0, 255);
        let out = histogram_match(&src, &GrayImage::filled(4, 5, 77).unwrap());
        assert!(out.pixels().iter().all(|&p| p == 77));
    }

    #[test]
    fn two_level_fixture() {
        let src = img(2, 2, &[0, 85, 170, 255]);
        let reference = img(2, 2, &[10, 10, 200, 200]);
        assert_eq!(brute_force_match(&src, &reference), vec![10, 10, 200, 200]);
        assert_eq!(histogram_match(&src, &reference).pixels(), &[10, 10, 200, 200]);
    }

    #[test]
    fn agrees_with_brute_force_oracle() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        for _ in 0..30 {
            let (w1, h1) = (rng.random_range(1..12), rng.random_range(1..12));
            let (w2, h2) = (rng.random_range(1..12), rng.random_range(1..12));
            let src = random_image(&mut rng, w1, h1, 0, 40);
            let reference = random_image(&mut rng, w2, h2, 20, 90);
            assert_eq!(
                histogram_match(&src, &reference).pixels(),
                brute_force_match(&src, &reference).as_slice()
            );
        }
    }

    #[test]
    fn lut_is_monotone() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(8);
        for _ in 0..200 {
            let (w1, h1, w2, h2) = (rng.random_range(1..30), rng.random_range(1..30), rng.random_range(1..30), rng.random_range(1..30));
            let a = random_image(&mut rng, w1, h1, 0, 255);
            let lo = rng.random_range(0..=255u8);
            let b = random_image(&mut rng, w2, h2, lo, 255);
            let lut = matching_lut(&Histogram256::of(&a), &Histogram256::of(&b));
            assert!(lut.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    fn sup_cdf_gap(out: &GrayImage, reference: &GrayImage) -> f64 {
        let (cm, cb) = (Histogram256::of(out).cdf(), Histogram256::of(reference).cdf());
        (0..256)
            .map(|v| (cm.values()[v] - cb.values()[v]).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn matched_cdf_within_slack_bound() {
        // Sources with pairwise distinct intensities: max PMF(src) = 1 / (w h).
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(9);
        for _ in 0..60 {
            let (wa, ha) = (rng.random_range(1..16), rng.random_range(1..16));
            let mut levels: Vec<u8> = (0..=255).collect();
            for i in (1..levels.len()).rev() {
                levels.swap(i, rng.random_range(0..=i));
            }
            let a = GrayImage::new(wa, ha, levels[..wa * ha].to_vec()).unwrap();
            let (lo, wb, hb) = (rng.random_range(0..=200u8), rng.random_range(1..40), rng.random_range(1..40));
            let b = random_image(&mut rng, wb, hb, lo, 255);
            let sup = sup_cdf_gap(&histogram_match(&a, &b), &b);
            let bound = Histogram256::of(&b).max_pmf() + 1.0 / (wa * ha) as f64;
            assert!(sup <= bound + 1e-12, "sup {sup} > bound {bound}");
        }
    }

    #[test]
    fn matched_cdf_gap_bounded_by_source_atoms() {
        // In general the gap is limited by the largest source bin, which cannot be split.
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(10);
        for _ in 0..60 {
            let (wa, ha) = (rng.random_range(1..40), rng.random_range(1..40));
            let hi = rng.random_range(0..=255);
            let a = random_image(&mut rng, wa, ha, 0, hi);
            let (lo, wb, hb) = (rng.random_range(0..=200u8), rng.random_range(1..40), rng.random_range(1..40));
            let b = random_image(&mut rng, wb, hb, lo, 255);
            let sup = sup_cdf_gap(&histogram_match(&a, &b), &b);
            assert!(sup <= Histogram256::of(&a).max_pmf() + 1e-12);
        }
    }
}
