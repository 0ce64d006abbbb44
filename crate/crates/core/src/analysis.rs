//! Measurements over finished constructions: empirical entropy of pilot
//! tables, measured vs. predicted search trials, bucket-size and load
//! profiles, and the search-time distribution. Everything can be written to
//! CSV for plotting.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use crate::builder::{expected_pilot, BucketedHashes, PilotsTable, SearchStats};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("entropy of an empty sequence is undefined")]
    EmptyInput,
    #[error("split {p2} does not divide a table of {m} entries into two non-empty parts")]
    DegenerateSplit { p2: usize, m: usize },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

/// Zero-order empirical entropy in bits per symbol.
pub fn empirical_entropy(values: &[u64]) -> Result<f64, AnalysisError> {
    if values.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    // ordered map: the float sum must not depend on hash iteration order
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    let total = values.len() as f64;
    let h = counts
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum::<f64>();
    Ok(h.max(0.0))
}

pub fn distinct_count(values: &[u64]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub whole: f64,
    pub front: f64,
    pub back: f64,
    /// Number of distinct pilot values.
    pub distinct: usize,
}

/// Entropy of the whole table and of its two parts split at `p2`.
pub fn front_back_entropy(pilots: &PilotsTable, p2: usize) -> Result<EntropyReport, AnalysisError> {
    let p = pilots.as_slice();
    if p2 == 0 || p2 >= p.len() {
        return Err(AnalysisError::DegenerateSplit { p2, m: p.len() });
    }
    Ok(EntropyReport {
        whole: empirical_entropy(p)?,
        front: empirical_entropy(&p[..p2])?,
        back: empirical_entropy(&p[p2..])?,
        distinct: distinct_count(p),
    })
}

/// One row of an entropy sweep over `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub c: f64,
    #[serde(rename = "H_all")]
    pub h_all: f64,
    #[serde(rename = "H_front")]
    pub h_front: f64,
    #[serde(rename = "H_back")]
    pub h_back: f64,
    pub r: u64,
}

impl EntropyRow {
    pub fn new(c: f64, report: &EntropyReport) -> Self {
        Self {
            c,
            h_all: report.whole,
            h_front: report.front,
            h_back: report.back,
            r: report.distinct as u64,
        }
    }
}

/// Mean trials over one 5% slice of the processing order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialChunk {
    /// Percentage of buckets processed at the end of the chunk.
    pub chunk_pct: f64,
    /// Table load factor once the chunk is placed.
    pub load_factor: f64,
    pub measured_mean: f64,
    pub predicted_mean: f64,
}

impl TrialChunk {
    pub fn relative_error(&self) -> f64 {
        if self.predicted_mean == 0.0 {
            if self.measured_mean == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.measured_mean - self.predicted_mean).abs() / self.predicted_mean
        }
    }
}

pub const TRIAL_CHUNKS: usize = 20;

/// Splits `len` items into at most `parts` consecutive ranges of equal size,
/// the last one absorbing the remainder.
fn chunk_bounds(len: usize, parts: usize) -> Vec<(usize, usize)> {
    if len == 0 {
        return Vec::new();
    }
    let parts = parts.min(len);
    let step = len / parts;
    (0..parts)
        .map(|j| (j * step, if j + 1 == parts { len } else { (j + 1) * step }))
        .collect()
}

/// Measured mean trials per 5% of processed buckets next to the mean of
/// `expected_pilot + 1` using each bucket's load factor before placement.
/// Empty buckets count as zero trials on both sides.
pub fn trial_profile(stats: &SearchStats, buckets: &BucketedHashes) -> Vec<TrialChunk> {
    let order = buckets.order();
    assert_eq!(
        stats.trials.len(),
        order.len(),
        "stats and buckets from different searches"
    );
    let n_prime = stats.n_prime as f64;
    let mut placed = 0usize;
    let mut out = Vec::with_capacity(TRIAL_CHUNKS);
    let bounds = chunk_bounds(order.len(), TRIAL_CHUNKS);
    let parts = bounds.len();
    for (j, (lo, hi)) in bounds.into_iter().enumerate() {
        let mut measured = 0.0;
        let mut predicted = 0.0;
        for (&b, &trials) in order[lo..hi].iter().zip(&stats.trials[lo..hi]) {
            let size = buckets.size(b);
            measured += trials as f64;
            if size > 0 {
                let load = placed as f64 / n_prime;
                predicted += expected_pilot(load, size).expect("load below one before placement") + 1.0;
            }
            placed += size;
        }
        let count = (hi - lo) as f64;
        out.push(TrialChunk {
            chunk_pct: 100.0 * (j + 1) as f64 / parts as f64,
            load_factor: placed as f64 / n_prime,
            measured_mean: measured / count,
            predicted_mean: predicted / count,
        });
    }
    out
}

/// Bucket sizes and load along the processing order, one row per percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BucketProfileRow {
    pub bucket_pct: f64,
    pub max_size: u64,
    pub mean_size: f64,
    pub load_factor: f64,
}

pub fn bucket_profile(buckets: &BucketedHashes, n_prime: u64) -> Vec<BucketProfileRow> {
    let order = buckets.order();
    let bounds = chunk_bounds(order.len(), 100);
    let parts = bounds.len();
    let mut placed = 0usize;
    bounds
        .into_iter()
        .enumerate()
        .map(|(j, (lo, hi))| {
            let sizes: Vec<usize> = order[lo..hi].iter().map(|&b| buckets.size(b)).collect();
            let total: usize = sizes.iter().sum();
            placed += total;
            BucketProfileRow {
                bucket_pct: 100.0 * (j + 1) as f64 / parts as f64,
                max_size: sizes.iter().copied().max().unwrap_or(0) as u64,
                mean_size: total as f64 / sizes.len() as f64,
                load_factor: placed as f64 / n_prime as f64,
            }
        })
        .collect()
}

pub fn empty_bucket_fraction(buckets: &BucketedHashes) -> f64 {
    let m = buckets.num_buckets();
    buckets.sizes().filter(|&s| s == 0).count() as f64 / m as f64
}

/// Cumulative share of search time as buckets are processed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchTimeRow {
    pub bucket_pct: f64,
    pub elapsed_secs: f64,
    pub time_fraction: f64,
}

pub fn search_time_profile(stats: &SearchStats) -> Vec<SearchTimeRow> {
    let m = stats.trials.len().max(1) as f64;
    let total = stats.checkpoints.last().map_or(0.0, |(_, d)| d.as_secs_f64());
    stats
        .checkpoints
        .iter()
        .map(|&(done, elapsed)| SearchTimeRow {
            bucket_pct: 100.0 * done as f64 / m,
            elapsed_secs: elapsed.as_secs_f64(),
            time_fraction: if total > 0.0 {
                elapsed.as_secs_f64() / total
            } else {
                0.0
            },
        })
        .collect()
}

/// Writes rows with a header line derived from the row type's field names.
pub fn emit_csv<T: Serialize>(rows: &[T], path: &Path) -> Result<(), AnalysisError> {
    let csv_err = |source| AnalysisError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| AnalysisError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, AnalysisError> {
    let csv_err = |source| AnalysisError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().collect::<Result<Vec<T>, _>>().map_err(csv_err)
}
