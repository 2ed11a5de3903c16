//! Over-squashing diagnostics from powers of the normalized augmented
//! adjacency matrix `Â = D̂^{-1/2} (A + I) D̂^{-1/2}`, with `D̂` the degree
//! matrix of `A + I`.
//!
//! The decay profile records, for every power `d`, the smallest strictly
//! positive entry of `Â^d`. Faster decay means a stronger bottleneck.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on dense power-matrix storage: 4 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

/// Minimum entries below this are flagged as likely underflow artefacts.
pub const UNDERFLOW_SUSPECT: f64 = 1e-300;

/// Sparse rows switch to dense storage above this fill fraction.
const DENSIFY_FILL: f64 = 0.5;

const SPARSE_ENTRY_BYTES: u128 = std::mem::size_of::<(usize, f64)>() as u128;

/// `Â` in compressed row form. Rows are sorted by column and include the
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedAdjacency {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl NormalizedAdjacency {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.vals[range].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(p) => self.vals[range.start + p],
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.n]; self.n];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, a) in self.row(i) {
                row[j] = a;
            }
        }
        out
    }
}

/// Builds `Â` for `g`.
pub fn normalized_augmented_adjacency(g: &Graph) -> Result<NormalizedAdjacency> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let aug_degree: Vec<f64> = (0..n).map(|v| (g.neighbors(v).len() + 1) as f64).collect();
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut cols = Vec::with_capacity(n + 2 * g.edge_count());
    let mut vals = Vec::with_capacity(cols.capacity());
    row_ptr.push(0);
    for i in 0..n {
        let nbrs = g.neighbors(i);
        let split = nbrs.partition_point(|&w| w < i);
        let entries = nbrs[..split]
            .iter()
            .copied()
            .chain([i])
            .chain(nbrs[split..].iter().copied());
        for j in entries {
            cols.push(j);
            vals.push(1.0 / (aug_degree[i] * aug_degree[j]).sqrt());
        }
        row_ptr.push(cols.len());
    }
    Ok(NormalizedAdjacency { n, row_ptr, cols, vals })
}

/// One power `Â^d`, sparse while its fill is low.
#[derive(Debug, Clone, PartialEq)]
pub enum PowerMatrix {
    Sparse { n: usize, rows: Vec<Vec<(usize, f64)>> },
    Dense { n: usize, data: Vec<f64> },
}

impl PowerMatrix {
    pub fn dimension(&self) -> usize {
        match self {
            PowerMatrix::Sparse { n, .. } | PowerMatrix::Dense { n, .. } => *n,
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, PowerMatrix::Dense { .. })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            PowerMatrix::Sparse { rows, .. } => match rows[i].binary_search_by_key(&j, |&(c, _)| c) {
                Ok(p) => rows[i][p].1,
                Err(_) => 0.0,
            },
            PowerMatrix::Dense { n, data } => data[i * n + j],
        }
    }

    /// Smallest strictly positive entry, if any.
    pub fn min_nonzero(&self) -> Option<f64> {
        let fold = |acc: Option<f64>, x: f64| {
            if x > 0.0 {
                Some(acc.map_or(x, |a| a.min(x)))
            } else {
                acc
            }
        };
        match self {
            PowerMatrix::Sparse { rows, .. } => rows.iter().flatten().map(|&(_, x)| x).fold(None, fold),
            PowerMatrix::Dense { data, .. } => data.iter().copied().fold(None, fold),
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            PowerMatrix::Sparse { rows, .. } => rows.iter().map(Vec::len).sum(),
            PowerMatrix::Dense { data, .. } => data.iter().filter(|&&x| x != 0.0).count(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dimension();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }
}

/// Successive powers `Â, Â², Â³, ...`, each computed as `Â · Â^{d-1}`.
///
/// Each output entry sums its terms in increasing order of the inner index,
/// so results do not depend on the number of worker threads.
pub struct MatrixPowers<'a> {
    adj: &'a NormalizedAdjacency,
    current: Option<PowerMatrix>,
    power: usize,
    budget: u64,
}

impl<'a> MatrixPowers<'a> {
    pub fn new(adj: &'a NormalizedAdjacency, budget: u64) -> Self {
        MatrixPowers {
            adj,
            current: None,
            power: 0,
            budget,
        }
    }

    /// Exponent of the most recently computed power (0 before the first).
    pub fn power(&self) -> usize {
        self.power
    }

    /// Computes the next power and returns it.
    pub fn advance(&mut self) -> Result<&PowerMatrix> {
        let next = match self.current.take() {
            None => self.first()?,
            Some(prev) => {
                let res = self.next_power(&prev);
                match res {
                    Ok(m) => m,
                    Err(e) => {
                        self.current = Some(prev);
                        return Err(e);
                    }
                }
            }
        };
        self.power += 1;
        Ok(self.current.insert(next))
    }

    fn check(&self, what: &'static str, required: u128) -> Result<()> {
        if required > self.budget as u128 {
            Err(Error::Resource {
                what,
                required,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn first(&self) -> Result<PowerMatrix> {
        let a = self.adj;
        self.check("sparse matrix power", a.nnz() as u128 * SPARSE_ENTRY_BYTES)?;
        Ok(PowerMatrix::Sparse {
            n: a.n,
            rows: (0..a.n).map(|i| a.row(i).collect()).collect(),
        })
    }

    fn next_power(&self, prev: &PowerMatrix) -> Result<PowerMatrix> {
        let a = self.adj;
        let n = a.n;
        let square = (n as u128) * (n as u128);
        match prev {
            PowerMatrix::Sparse { rows, .. } => {
                let nnz: usize = rows.iter().map(Vec::len).sum();
                if nnz as f64 > DENSIFY_FILL * (n as f64) * (n as f64) {
                    // previous and next power are held at once
                    self.check("dense matrix power", 2 * square * 8)?;
                    let mut data = vec![0.0; n * n];
                    for (i, row) in rows.iter().enumerate() {
                        for &(j, x) in row {
                            data[i * n + j] = x;
                        }
                    }
                    return self.next_power(&PowerMatrix::Dense { n, data });
                }
                let fill_bound: u128 = (0..n)
                    .map(|i| {
                        a.row(i)
                            .map(|(k, _)| rows[k].len() as u128)
                            .sum::<u128>()
                            .min(n as u128)
                    })
                    .sum();
                self.check("sparse matrix power", (nnz as u128 + fill_bound) * SPARSE_ENTRY_BYTES)?;
                let out: Vec<Vec<(usize, f64)>> = (0..n)
                    .into_par_iter()
                    .map_init(
                        || (vec![0.0f64; n], vec![false; n], Vec::new()),
                        |(acc, seen, touched): &mut (Vec<f64>, Vec<bool>, Vec<usize>), i| {
                            for (k, aik) in a.row(i) {
                                for &(j, x) in &rows[k] {
                                    if !seen[j] {
                                        seen[j] = true;
                                        touched.push(j);
                                    }
                                    acc[j] += aik * x;
                                }
                            }
                            touched.sort_unstable();
                            let row: Vec<(usize, f64)> = touched
                                .iter()
                                .map(|&j| {
                                    let x = acc[j];
                                    acc[j] = 0.0;
                                    seen[j] = false;
                                    (j, x)
                                })
                                .filter(|&(_, x)| x != 0.0)
                                .collect();
                            touched.clear();
                            row
                        },
                    )
                    .collect();
                Ok(PowerMatrix::Sparse { n, rows: out })
            }
            PowerMatrix::Dense { data, .. } => {
                self.check("dense matrix power", 2 * square * 8)?;
                let mut out = vec![0.0; n * n];
                out.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                    for (k, aik) in a.row(i) {
                        let src = &data[k * n..(k + 1) * n];
                        for (dst, &x) in row.iter_mut().zip(src) {
                            *dst += aik * x;
                        }
                    }
                });
                Ok(PowerMatrix::Dense { n, data: out })
            }
        }
    }
}

/// Minimum nonzero entry of `Â^d` for `d = 1..=d_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayProfile {
    pub powers: Vec<usize>,
    pub values: Vec<f64>,
}

impl DecayProfile {
    pub fn value_at(&self, power: usize) -> Option<f64> {
        self.powers.iter().position(|&p| p == power).map(|i| self.values[i])
    }

    /// Powers whose minimum is below [`UNDERFLOW_SUSPECT`].
    pub fn underflow_suspects(&self) -> Vec<usize> {
        self.powers
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v < UNDERFLOW_SUSPECT)
            .map(|(&p, _)| p)
            .collect()
    }

    /// `power,min_nonzero` CSV, values as C `%e` (`5.000000e-01`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("power,min_nonzero\n");
        for (p, v) in self.powers.iter().zip(&self.values) {
            out.push_str(&format!("{p},{}\n", format_sci(*v)));
        }
        out
    }
}

/// C `%e` formatting: six digits after the point and a signed, at least
/// two-digit exponent.
pub fn format_sci(v: f64) -> String {
    let s = format!("{v:.6e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let (sign, digits) = match exp.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exp),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

pub fn min_nonzero_powers(g: &Graph, d_max: usize) -> Result<DecayProfile> {
    min_nonzero_powers_with_budget(g, d_max, DEFAULT_MEMORY_BUDGET)
}

pub fn min_nonzero_powers_with_budget(g: &Graph, d_max: usize, budget: u64) -> Result<DecayProfile> {
    if d_max == 0 {
        return Err(Error::InvalidConfig("maximum power must be at least 1".into()));
    }
    let adj = normalized_augmented_adjacency(g)?;
    let mut powers = Vec::with_capacity(d_max);
    let mut values = Vec::with_capacity(d_max);
    let mut iter = MatrixPowers::new(&adj, budget);
    for d in 1..=d_max {
        let m = iter.advance()?;
        // the diagonal of Â^d is always positive, so a minimum exists unless it underflowed
        let Some(min) = m.min_nonzero() else {
            break;
        };
        powers.push(d);
        values.push(min);
    }
    Ok(DecayProfile { powers, values })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRatio {
    pub power: usize,
    pub before: f64,
    pub after: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileComparison {
    pub normalization: String,
    pub threshold_power: usize,
    pub ratios: Vec<PowerRatio>,
    /// `after >= before` at every compared power `>= threshold_power`.
    pub improved: bool,
}

/// Per-power `after / before` ratios.
pub fn compare_profiles(
    before: &DecayProfile,
    after: &DecayProfile,
    powers: &[usize],
    threshold_power: usize,
) -> Result<ProfileComparison> {
    let mut ratios = Vec::with_capacity(powers.len());
    let mut improved = true;
    for &power in powers {
        let (Some(b), Some(a)) = (before.value_at(power), after.value_at(power)) else {
            return Err(Error::ProfileMismatch { power });
        };
        if power >= threshold_power && a < b {
            improved = false;
        }
        ratios.push(PowerRatio {
            power,
            before: b,
            after: a,
            ratio: a / b,
        });
    }
    Ok(ProfileComparison {
        normalization: "D^-1/2 (A + I) D^-1/2".into(),
        threshold_power,
        ratios,
        improved,
    })
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn small_matrices() {
        let single = Graph::empty(1);
        let a = normalized_augmented_adjacency(&single).unwrap();
        assert_eq!(a.to_dense(), vec![vec![1.0]]);

        let k2 = normalized_augmented_adjacency(&generators::path(2)).unwrap();
        assert_eq!(k2.to_dense(), vec![vec![0.5, 0.5], vec![0.5, 0.5]]);

        let p3 = normalized_augmented_adjacency(&generators::path(3)).unwrap();
        let r6 = 1.0 / 6f64.sqrt();
        let expect = [[0.5, r6, 0.0], [r6, 1.0 / 3.0, r6], [0.0, r6, 0.5]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((p3.get(i, j) - expect[i][j]).abs() < 1e-15, "({i},{j})");
            }
        }
        assert!(matches!(
            normalized_augmented_adjacency(&Graph::empty(0)),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn idempotent_profiles() {
        let k2 = min_nonzero_powers(&generators::path(2), 40).unwrap();
        assert_eq!(k2.powers, (1..=40).collect::<Vec<_>>());
        assert!(k2.values.iter().all(|&v| (v - 0.5).abs() < 1e-15));
        let one = min_nonzero_powers(&Graph::empty(1), 10).unwrap();
        assert!(one.values.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn csv_format() {
        let p = DecayProfile {
            powers: vec![1, 2],
            values: vec![0.5, 1.42e-81],
        };
        assert_eq!(p.to_csv(), "power,min_nonzero\n1,5.000000e-01\n2,1.420000e-81\n");
        assert_eq!(format_sci(1.5e120), "1.500000e+120");
        assert_eq!(format_sci(3.0), "3.000000e+00");
    }

    #[test]
    fn densifies_and_guards_memory() {
        let g = generators::path(10);
        let adj = normalized_augmented_adjacency(&g).unwrap();
        let mut powers = MatrixPowers::new(&adj, DEFAULT_MEMORY_BUDGET);
        assert!(!powers.advance().unwrap().is_dense());
        for _ in 0..11 {
            powers.advance().unwrap();
        }
        assert_eq!(powers.power(), 12);
        assert!(powers.advance().unwrap().is_dense());
        let err = min_nonzero_powers_with_budget(&g, 20, 64).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn comparison_rules() {
        let p = DecayProfile {
            powers: vec![1, 2, 3],
            values: vec![0.5, 0.2, 0.1],
        };
        let same = compare_profiles(&p, &p, &[1, 2, 3], 1).unwrap();
        assert!(same.improved);
        assert!(same.ratios.iter().all(|r| r.ratio == 1.0));
        let q = DecayProfile {
            powers: vec![1, 2, 3],
            values: vec![0.4, 0.3, 0.2],
        };
        assert!(!compare_profiles(&p, &q, &[1, 2, 3], 1).unwrap().improved);
        assert!(compare_profiles(&p, &q, &[1, 2, 3], 2).unwrap().improved);
        assert!(matches!(
            compare_profiles(&p, &q, &[4], 1),
            Err(Error::ProfileMismatch { power: 4 })
        ));
    }
}
