//! Preprocessing transforms: centering, square-root stabilization, binning.
//!
//! All three are pure and deterministic; covariance estimation downstream
//! assumes the caller has centered the data with one of the centering modes
//! here.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::timeseries::TimeSeries;

/// Subtract the mean from every channel.
///
/// Without a window this is global mean subtraction. With `window = Some(w)`
/// each sample has the centered moving average of its length-`w` neighborhood
/// subtracted, using reflect padding at the edges so every sample sees a
/// full-width window.
pub fn mean_center(series: &TimeSeries, window: Option<usize>) -> Result<TimeSeries> {
    let t_tot = series.len();
    let data = series.data();
    let out = match window {
        None => {
            let mut out = data.clone();
            for c in 0..data.ncols() {
                let m = data.column(c).mean();
                for r in 0..t_tot {
                    out[(r, c)] -= m;
                }
            }
            out
        }
        Some(w) => {
            if w == 0 || w > t_tot {
                return Err(Error::InvalidArgument(format!(
                    "window must be in 1..={t_tot}, got {w}"
                )));
            }
            let mut out = data.clone();
            for c in 0..data.ncols() {
                let col: Vec<f64> = data.column(c).iter().copied().collect();
                let ma = reflect_moving_average(&col, w);
                for r in 0..t_tot {
                    out[(r, c)] -= ma[r];
                }
            }
            out
        }
    };
    series.map_data(out, series.dt())
}

/// Centered moving average with numpy-style reflect padding (edge value not
/// repeated). Window offsets cover `-(w-1)/2 ..= w/2` so even widths lean one
/// step forward.
fn reflect_moving_average(x: &[f64], w: usize) -> Vec<f64> {
    let t = x.len() as isize;
    let lo = ((w as isize) - 1) / 2;
    let hi = (w as isize) / 2;
    let reflect = |i: isize| -> f64 {
        let mut i = i;
        // With w <= t, one reflection per side suffices.
        if i < 0 {
            i = -i;
        }
        if i >= t {
            i = 2 * t - 2 - i;
        }
        x[i as usize]
    };
    (0..t)
        .map(|c| {
            let sum: f64 = (c - lo..=c + hi).map(reflect).sum();
            sum / w as f64
        })
        .collect()
}

/// Elementwise square root; all entries must be nonnegative.
pub fn sqrt_transform(series: &TimeSeries) -> Result<TimeSeries> {
    let data = series.data();
    for r in 0..data.nrows() {
        for c in 0..data.ncols() {
            if data[(r, c)] < 0.0 {
                let name = series
                    .channel_names()
                    .map(|ns| ns[c].clone())
                    .unwrap_or_else(|| format!("channel {c}"));
                return Err(Error::Domain(format!(
                    "negative entry {} in {name} at time step {r}",
                    data[(r, c)]
                )));
            }
        }
    }
    series.map_data(data.map(f64::sqrt), series.dt())
}

/// How bin contents are aggregated by [`bin_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinMode {
    Sum,
    Mean,
}

/// Aggregate non-overlapping bins of `bin_width` consecutive steps.
///
/// The trailing remainder (fewer than `bin_width` samples) is dropped and the
/// output `dt` is multiplied by `bin_width`.
pub fn bin_series(series: &TimeSeries, bin_width: usize, mode: BinMode) -> Result<TimeSeries> {
    let t_tot = series.len();
    if bin_width == 0 {
        return Err(Error::InvalidArgument("bin_width must be >= 1".into()));
    }
    if bin_width > t_tot {
        return Err(Error::InvalidArgument(format!(
            "bin_width {bin_width} exceeds series length {t_tot}"
        )));
    }
    let n_bins = t_tot / bin_width;
    let n = series.n_channels();
    let data = series.data();
    let mut out = DMatrix::zeros(n_bins, n);
    for b in 0..n_bins {
        for c in 0..n {
            let mut acc = 0.0;
            for k in 0..bin_width {
                acc += data[(b * bin_width + k, c)];
            }
            out[(b, c)] = match mode {
                BinMode::Sum => acc,
                BinMode::Mean => acc / bin_width as f64,
            };
        }
    }
    series.map_data(out, series.dt() * bin_width as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn series_from(cols: usize, vals: &[f64]) -> TimeSeries {
        let rows = vals.len() / cols;
        TimeSeries::new(DMatrix::from_row_slice(rows, cols, vals), 1.0).unwrap()
    }

    #[test]
    fn constant_series_centers_to_zero_global_and_windowed() {
        let ts = series_from(2, &[3.0, -1.0, 3.0, -1.0, 3.0, -1.0, 3.0, -1.0]);
        for window in [None, Some(1), Some(3), Some(4)] {
            let out = mean_center(&ts, window).unwrap();
            assert!(out.data().amax() < 1e-12, "window {window:?}");
        }
    }

    #[test]
    fn global_center_of_ramp() {
        let ts = series_from(1, &[1.0, 2.0, 3.0]);
        let out = mean_center(&ts, None).unwrap();
        let expect = [-1.0, 0.0, 1.0];
        for (i, e) in expect.iter().enumerate() {
            assert!((out.data()[(i, 0)] - e).abs() < 1e-15);
        }
    }

    #[test]
    fn global_center_makes_column_means_tiny() {
        let vals: Vec<f64> = (0..120).map(|i| (i as f64 * 0.37).sin() + 2.0).collect();
        let ts = series_from(3, &vals);
        let out = mean_center(&ts, None).unwrap();
        for m in out.column_means() {
            assert!(m.abs() < 1e-10);
        }
    }

    /// Independent oracle: per-sample direct averaging over reflected indices.
    fn moving_average_oracle(x: &[f64], w: usize) -> Vec<f64> {
        let t = x.len() as isize;
        let lo = ((w as isize) - 1) / 2;
        let hi = (w as isize) / 2;
        let mut out = Vec::with_capacity(x.len());
        for c in 0..t {
            let mut acc = 0.0;
            for off in -lo..=hi {
                let mut idx = c + off;
                while idx < 0 || idx >= t {
                    if idx < 0 {
                        idx = -idx;
                    }
                    if idx >= t {
                        idx = 2 * t - 2 - idx;
                    }
                }
                acc += x[idx as usize];
            }
            out.push(acc / w as f64);
        }
        out
    }

    #[test]
    fn windowed_center_of_ramp_matches_oracle() {
        let ramp: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let ts = series_from(1, &ramp);
        let out = mean_center(&ts, Some(11)).unwrap();
        let ma = moving_average_oracle(&ramp, 11);
        for i in 0..100 {
            let expect = ramp[i] - ma[i];
            assert!(
                (out.data()[(i, 0)] - expect).abs() < 1e-12,
                "sample {i}: {} vs {expect}",
                out.data()[(i, 0)]
            );
        }
    }

    #[test]
    fn windowed_center_rejects_bad_windows() {
        let ts = series_from(1, &[1.0, 2.0, 3.0]);
        assert!(mean_center(&ts, Some(0)).is_err());
        assert!(mean_center(&ts, Some(4)).is_err());
    }

    #[test]
    fn sqrt_of_zeros_and_squares() {
        let ts = series_from(1, &[0.0, 4.0, 9.0]);
        let out = sqrt_transform(&ts).unwrap();
        assert_eq!(out.data()[(0, 0)], 0.0);
        assert_eq!(out.data()[(1, 0)], 2.0);
        assert_eq!(out.data()[(2, 0)], 3.0);
    }

    #[test]
    fn sqrt_rejects_negative_and_names_location() {
        let ts = TimeSeries::with_names(
            DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, -0.5]),
            1.0,
            Some(vec!["u0".into(), "u1".into()]),
        )
        .unwrap();
        let err = sqrt_transform(&ts).unwrap_err().to_string();
        assert!(err.contains("u1") && err.contains("time step 1"), "{err}");
    }

    #[test]
    fn bin_width_one_is_identity() {
        let ts = series_from(2, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let out = bin_series(&ts, 1, BinMode::Sum).unwrap();
        assert_eq!(out.data(), ts.data());
    }

    #[test]
    fn bin_sum_drops_remainder() {
        let ts = series_from(1, &[1.0, 2.0, 3.0, 4.0, 5.0]);
        let out = bin_series(&ts, 2, BinMode::Sum).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.data()[(0, 0)], 3.0);
        assert_eq!(out.data()[(1, 0)], 7.0);
        assert_eq!(out.dt(), 2.0);
    }

    #[test]
    fn bin_mean_matches_blockwise_oracle() {
        let vals: Vec<f64> = (0..60).map(|i| ((i * 7919) % 13) as f64).collect();
        let ts = series_from(2, &vals);
        let out = bin_series(&ts, 5, BinMode::Mean).unwrap();
        // Oracle: reshape to (bins, width, channels) and reduce.
        for b in 0..out.len() {
            for c in 0..2 {
                let mut acc = 0.0;
                for k in 0..5 {
                    acc += ts.data()[(b * 5 + k, c)];
                }
                assert!((out.data()[(b, c)] - acc / 5.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bin_rejects_width_beyond_length() {
        let ts = series_from(1, &[1.0, 2.0]);
        assert!(bin_series(&ts, 3, BinMode::Sum).is_err());
    }

    proptest! {
        #[test]
        fn bin_sum_conserves_total_over_covered_bins(
            vals in proptest::collection::vec(-100.0f64..100.0, 8..64),
            width in 1usize..6,
        ) {
            prop_assume!(width <= vals.len());
            let ts = series_from(1, &vals);
            let out = bin_series(&ts, width, BinMode::Sum).unwrap();
            let covered = out.len() * width;
            let total_in: f64 = vals[..covered].iter().sum();
            let total_out: f64 = out.data().iter().sum();
            prop_assert!((total_in - total_out).abs() < 1e-9);
        }

        #[test]
        fn transforms_are_deterministic(
            vals in proptest::collection::vec(0.0f64..50.0, 12..40),
        ) {
            let ts = series_from(2, &vals[..(vals.len() / 2) * 2]);
            let a = mean_center(&ts, Some(3)).unwrap();
            let b = mean_center(&ts, Some(3)).unwrap();
            prop_assert_eq!(a.data(), b.data());
            let s1 = sqrt_transform(&ts).unwrap();
            let s2 = sqrt_transform(&ts).unwrap();
            prop_assert_eq!(s1.data(), s2.data());
        }
    }
}
