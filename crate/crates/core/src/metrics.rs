//! Image comparison metrics for ciphertext quality.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qimage::GrayImage;

pub const MAX_INTENSITY: f64 = 255.0;

/// Pearson correlation of pixel intensities.
pub fn correlation_coefficient(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.same_shape(b)?;
    let n = a.len() as f64;
    let mean = |img: &GrayImage| img.pixels().iter().map(|&p| p as f64).sum::<f64>() / n;
    let (ma, mb) = (mean(a), mean(b));
    let (mut cov, mut va, mut vb) = (0.0, 0.0, 0.0);
    for (&x, &y) in a.pixels().iter().zip(b.pixels()) {
        let (dx, dy) = (x as f64 - ma, y as f64 - mb);
        cov += dx * dy;
        va += dx * dx;
        vb += dy * dy;
    }
    if va == 0.0 || vb == 0.0 {
        return Err(Error::Metric("correlation of a constant image".into()));
    }
    Ok(cov / (va * vb).sqrt())
}

/// Which pixel pairs count toward NPCR.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NpcrConvention {
    /// Count positions where the two images differ.
    #[default]
    Differs,
    /// Count positions where they are equal.
    Equal,
}

/// Percentage of pixel positions counted under `convention`.
pub fn npcr_with(c1: &GrayImage, c2: &GrayImage, convention: NpcrConvention) -> Result<f64> {
    c1.same_shape(c2)?;
    let differ = c1.pixels().iter().zip(c2.pixels()).filter(|(a, b)| a != b).count();
    let counted = match convention {
        NpcrConvention::Differs => differ,
        NpcrConvention::Equal => c1.len() - differ,
    };
    Ok(100.0 * counted as f64 / c1.len() as f64)
}

pub fn npcr(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    npcr_with(c1, c2, NpcrConvention::Differs)
}

/// `100 * mean(|c1 - c2|) / 255`.
pub fn uaci(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    c1.same_shape(c2)?;
    let sum: u64 = c1
        .pixels()
        .iter()
        .zip(c2.pixels())
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum();
    Ok(100.0 * sum as f64 / (MAX_INTENSITY * c1.len() as f64))
}

/// `20 log10(MAX_I / sqrt(mse))`, `None` when `mse` is zero.
pub fn psnr_from_mse(mse: f64, max_intensity: f64) -> Option<f64> {
    (mse > 0.0).then(|| 20.0 * (max_intensity / mse.sqrt()).log10())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MseReport {
    /// Mean of squared differences.
    pub mse: f64,
    /// Mean of signed differences `a - b`, without squaring.
    pub mse_unsquared: f64,
    /// From `mse`; absent for identical images.
    pub psnr: Option<f64>,
}

pub fn mse_psnr(a: &GrayImage, b: &GrayImage) -> Result<MseReport> {
    a.same_shape(b)?;
    let n = a.len() as f64;
    let (mut sq, mut lin) = (0.0, 0.0);
    for (&x, &y) in a.pixels().iter().zip(b.pixels()) {
        let d = x as f64 - y as f64;
        sq += d * d;
        lin += d;
    }
    let mse = sq / n;
    Ok(MseReport {
        mse,
        mse_unsquared: lin / n,
        psnr: psnr_from_mse(mse, MAX_INTENSITY),
    })
}

/// Pixel-wise `|c1 - c2|`.
pub fn differential_image(c1: &GrayImage, c2: &GrayImage) -> Result<GrayImage> {
    c1.same_shape(c2)?;
    let px = c1.pixels().iter().zip(c2.pixels()).map(|(&a, &b)| a.abs_diff(b)).collect();
    GrayImage::new(c1.order(), px)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricReport {
    pub width: usize,
    pub height: usize,
    /// `None` when either image is constant.
    pub correlation: Option<f64>,
    pub npcr: f64,
    pub uaci: f64,
    pub mse: f64,
    pub mse_unsquared: f64,
    pub psnr: Option<f64>,
    pub max_intensity: f64,
}

impl MetricReport {
    pub fn compute(a: &GrayImage, b: &GrayImage) -> Result<Self> {
        a.same_shape(b)?;
        let correlation = match correlation_coefficient(a, b) {
            Ok(r) => Some(r),
            Err(Error::Metric(_)) => None,
            Err(e) => return Err(e),
        };
        let m = mse_psnr(a, b)?;
        Ok(Self {
            width: a.side(),
            height: a.side(),
            correlation,
            npcr: npcr(a, b)?,
            uaci: uaci(a, b)?,
            mse: m.mse,
            mse_unsquared: m.mse_unsquared,
            psnr: m.psnr,
            max_intensity: MAX_INTENSITY,
        })
    }

    pub const CSV_HEADER: &'static str = "width,height,correlation,npcr,uaci,mse,mse_unsquared,psnr";

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "nan".to_string(), |x| format!("{x:.6}"));
        format!(
            "{}\n{},{},{},{:.6},{:.6},{:.6},{:.6},{}\n",
            Self::CSV_HEADER,
            self.width,
            self.height,
            opt(self.correlation),
            self.npcr,
            self.uaci,
            self.mse,
            self.mse_unsquared,
            opt(self.psnr)
        )
    }

    pub fn to_table(&self) -> String {
        let opt = |v: Option<f64>, undefined: &str| v.map_or_else(|| undefined.to_string(), |x| format!("{x:.6}"));
        let mut s = String::new();
        let rows = [
            ("size", format!("{}x{}", self.width, self.height)),
            ("correlation r", opt(self.correlation, "undefined (constant image)")),
            ("NPCR %", format!("{:.6}", self.npcr)),
            ("UACI %", format!("{:.6}", self.uaci)),
            ("MSE", format!("{:.6}", self.mse)),
            ("MSE (unsquared)", format!("{:.6}", self.mse_unsquared)),
            ("PSNR dB", opt(self.psnr, "inf (identical)")),
        ];
        for (k, v) in rows {
            writeln!(s, "{k:<16} {v}").unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(px: &[u8]) -> GrayImage {
        GrayImage::new(1, px.to_vec()).unwrap()
    }

    const PLAIN: [u8; 4] = [255, 0, 200, 100];
    const CIPHER: [u8; 4] = [213, 37, 237, 78];
    const CIPHER_PIXEL: [u8; 4] = [213, 37, 237, 79];
    const CIPHER_KEY: [u8; 4] = [113, 22, 222, 234];

    // direct evaluation of the sample correlation with integer sums
    fn pearson_oracle(a: &[u8], b: &[u8]) -> f64 {
        let n = a.len() as i64;
        let sa: i64 = a.iter().map(|&x| x as i64).sum();
        let sb: i64 = b.iter().map(|&x| x as i64).sum();
        let sab: i64 = a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum();
        let saa: i64 = a.iter().map(|&x| (x as i64).pow(2)).sum();
        let sbb: i64 = b.iter().map(|&x| (x as i64).pow(2)).sum();
        let num = (n * sab - sa * sb) as f64;
        num / (((n * saa - sa * sa) * (n * sbb - sb * sb)) as f64).sqrt()
    }

    #[test]
    fn correlation_anchors() {
        let a = img(&PLAIN);
        assert!((correlation_coefficient(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        let neg = img(&PLAIN.map(|p| 255 - p));
        assert_eq!(correlation_coefficient(&a, &neg).unwrap(), -1.0);
        let r = correlation_coefficient(&a, &img(&CIPHER)).unwrap();
        assert!((r - pearson_oracle(&PLAIN, &CIPHER)).abs() < 1e-12);
        assert!((r - 0.9342866).abs() < 1e-6);
        assert!(matches!(correlation_coefficient(&a, &img(&[7; 4])), Err(Error::Metric(_))));
    }

    #[test]
    fn differential_tables() {
        let c = img(&CIPHER);
        assert_eq!(npcr(&c, &c).unwrap(), 0.0);
        assert_eq!(uaci(&c, &c).unwrap(), 0.0);
        assert_eq!(npcr(&c, &img(&CIPHER_PIXEL)).unwrap(), 25.0);
        assert!((uaci(&c, &img(&CIPHER_PIXEL)).unwrap() - 100.0 / 1020.0).abs() < 1e-12);
        assert_eq!(npcr(&c, &img(&CIPHER_KEY)).unwrap(), 100.0);
        assert!((uaci(&c, &img(&CIPHER_KEY)).unwrap() - 28600.0 / 1020.0).abs() < 1e-12);
        assert_eq!(npcr_with(&c, &img(&CIPHER_PIXEL), NpcrConvention::Equal).unwrap(), 75.0);
    }

    #[test]
    fn mse_and_psnr() {
        let m = mse_psnr(&img(&PLAIN), &img(&CIPHER)).unwrap();
        assert_eq!(m.mse, (42.0f64.powi(2) + 37.0f64.powi(2) * 2.0 + 22.0f64.powi(2)) / 4.0);
        assert_eq!(m.mse, 1246.5);
        assert_eq!(m.mse_unsquared, (42.0 - 37.0 - 37.0 + 22.0) / 4.0);
        let same = mse_psnr(&img(&PLAIN), &img(&PLAIN)).unwrap();
        assert_eq!(same.psnr, None);
        let five = mse_psnr(&img(&[10; 4]), &img(&[15; 4])).unwrap();
        assert_eq!(five.mse, 25.0);
        assert!((five.psnr.unwrap() - 34.1514).abs() < 1e-3);
        assert!(psnr_from_mse(24.0, 255.0).unwrap() > psnr_from_mse(25.0, 255.0).unwrap());
    }

    #[test]
    fn differential_images() {
        let c = img(&CIPHER);
        assert_eq!(differential_image(&c, &c).unwrap().pixels(), &[0; 4]);
        assert_eq!(differential_image(&c, &img(&CIPHER_PIXEL)).unwrap().pixels(), &[0, 0, 0, 1]);
        assert_eq!(differential_image(&c, &img(&CIPHER_KEY)).unwrap().pixels(), &[100, 15, 15, 156]);
    }

    #[test]
    fn shape_mismatch() {
        let a = GrayImage::zeros(1).unwrap();
        let b = GrayImage::zeros(2).unwrap();
        assert!(npcr(&a, &b).is_err());
        assert!(MetricReport::compute(&a, &b).is_err());
    }

    #[test]
    fn report_output() {
        let r = MetricReport::compute(&img(&CIPHER), &img(&CIPHER_PIXEL)).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with(MetricReport::CSV_HEADER));
        assert!(csv.contains(",25.000000,0.098039,"), "{csv}");
        assert!(r.to_table().contains("NPCR %"));
    }

    proptest::proptest! {
        #[test]
        fn symmetric_and_bounded(a in proptest::collection::vec(0u8.., 16), b in proptest::collection::vec(0u8.., 16)) {
            let (a, b) = (GrayImage::new(2, a).unwrap(), GrayImage::new(2, b).unwrap());
            let n = npcr(&a, &b).unwrap();
            let u = uaci(&a, &b).unwrap();
            proptest::prop_assert_eq!(n, npcr(&b, &a).unwrap());
            proptest::prop_assert_eq!(u, uaci(&b, &a).unwrap());
            proptest::prop_assert!((0.0..=100.0).contains(&n) && (0.0..=100.0).contains(&u));
            let zero_diff = differential_image(&a, &b).unwrap().pixels().iter().all(|&p| p == 0);
            proptest::prop_assert_eq!(zero_diff, n == 0.0);
        }
    }
}
