//! Dense multivariate time series: the data carrier for the whole pipeline.
//!
//! A [`TimeSeries`] is a `T_tot x n` matrix (rows are time steps, columns are
//! channels) plus sampling metadata. Construction validates shape and
//! finiteness; everything downstream can assume both.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A uniformly sampled real-valued multivariate time series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    data: DMatrix<f64>,
    dt: f64,
    channel_names: Option<Vec<String>>,
}

impl TimeSeries {
    /// Build a series from a samples-by-channels matrix.
    ///
    /// Requires at least 2 time steps, at least 1 channel, finite entries and
    /// a positive `dt`.
    pub fn new(data: DMatrix<f64>, dt: f64) -> Result<Self> {
        Self::with_names(data, dt, None)
    }

    /// Like [`TimeSeries::new`], with optional channel names (length must match).
    pub fn with_names(
        data: DMatrix<f64>,
        dt: f64,
        channel_names: Option<Vec<String>>,
    ) -> Result<Self> {
        if data.nrows() < 2 {
            return Err(Error::InvalidArgument(format!(
                "time series needs at least 2 time steps, got {}",
                data.nrows()
            )));
        }
        if data.ncols() < 1 {
            return Err(Error::InvalidArgument(
                "time series needs at least 1 channel".into(),
            ));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
        }
        if let Some((r, c)) = first_nonfinite(&data) {
            return Err(Error::Domain(format!(
                "non-finite entry at time step {r}, channel {c}"
            )));
        }
        if let Some(names) = &channel_names {
            if names.len() != data.ncols() {
                return Err(Error::InvalidArgument(format!(
                    "{} channel names for {} channels",
                    names.len(),
                    data.ncols()
                )));
            }
        }
        Ok(Self { data, dt, channel_names })
    }

    /// Number of time steps.
    pub fn len(&self) -> usize {
        self.data.nrows()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees >= 2 rows
    }

    /// Number of channels.
    pub fn n_channels(&self) -> usize {
        self.data.ncols()
    }

    /// Seconds per time step.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn channel_names(&self) -> Option<&[String]> {
        self.channel_names.as_deref()
    }

    /// The samples-by-channels matrix.
    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// One time step as a column vector view row.
    pub fn row(&self, t: usize) -> nalgebra::RowDVectorView<'_, f64> {
        self.data.row(t)
    }

    /// Consume into the raw matrix.
    pub fn into_data(self) -> DMatrix<f64> {
        self.data
    }

    /// Replace the data matrix, keeping metadata (shape may change).
    pub(crate) fn map_data(&self, data: DMatrix<f64>, dt: f64) -> Result<Self> {
        Self::with_names(data, dt, self.channel_names.clone())
    }

    /// Per-channel means.
    pub fn column_means(&self) -> Vec<f64> {
        (0..self.n_channels())
            .map(|c| self.data.column(c).mean())
            .collect()
    }

    /// Per-channel sample standard deviations (denominator `T_tot - 1`).
    pub fn column_stds(&self) -> Vec<f64> {
        let t = self.len() as f64;
        (0..self.n_channels())
            .map(|c| {
                let col = self.data.column(c);
                let m = col.mean();
                (col.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (t - 1.0)).sqrt()
            })
            .collect()
    }
}

fn first_nonfinite(m: &DMatrix<f64>) -> Option<(usize, usize)> {
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if !m[(r, c)].is_finite() {
                return Some((r, c));
            }
        }
    }
    None
}
