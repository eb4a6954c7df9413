//! Repeated-trial experiments and Friedman average ranks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::benchmarks::BenchId;
use crate::error::{Error, Result};
use crate::gwo::Algorithm;
use crate::hill_climb::HcConfig;
use crate::opt::{run, Direction, RunConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentGrid {
    pub algorithms: Vec<Algorithm>,
    pub functions: Vec<BenchId>,
    pub repeats: usize,
    pub base_seed: u64,
    /// Seed of repeat `k` is `base_seed + k * seed_stride`.
    pub seed_stride: u64,
    pub population: usize,
    pub max_iter: usize,
    /// Hill-climbing settings for hybrid algorithms.
    #[serde(default)]
    pub hc: HcConfig,
}

impl Default for ExperimentGrid {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::COMPARED.to_vec(),
            functions: BenchId::all().collect(),
            repeats: 30,
            base_seed: 0,
            seed_stride: 1,
            population: 30,
            max_iter: 500,
            hc: HcConfig::default(),
        }
    }
}

impl ExperimentGrid {
    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() || self.functions.is_empty() {
            return Err(Error::config("experiment needs at least one algorithm and one function"));
        }
        if self.repeats < 2 {
            return Err(Error::config("repeats must be at least 2 for a standard deviation"));
        }
        self.hc.validate()?;
        RunConfig::new(self.algorithms[0], self.population, self.max_iter, 0).validate()
    }

    pub fn seed(&self, k: usize) -> u64 {
        self.base_seed.wrapping_add((k as u64).wrapping_mul(self.seed_stride))
    }
}

/// Summary of one (algorithm, function) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub algorithm: Algorithm,
    pub function: BenchId,
    pub mean: f64,
    pub std: f64,
    pub raw: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub direction: Direction,
    /// Function-major, algorithms in grid order.
    pub cells: Vec<Cell>,
}

/// Mean and sample standard deviation (divisor `n - 1`).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn run_cell(grid: &ExperimentGrid, algorithm: Algorithm, function: BenchId) -> Result<Cell> {
    let bench = function.info();
    let space = bench.space();
    let raw = (0..grid.repeats)
        .map(|k| {
            let mut cfg = RunConfig::new(algorithm, grid.population, grid.max_iter, grid.seed(k));
            cfg.hybrid = cfg.hybrid.map(|_| grid.hc.clone());
            run(bench, &space, &cfg).map(|r| r.best_fitness)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (mean, std) = mean_std(&raw);
    Ok(Cell { algorithm, function, mean, std, raw })
}

/// Runs every cell of the grid. Cells run in parallel when the `parallel`
/// feature is on; the table order does not depend on completion order.
pub fn run_experiment(grid: &ExperimentGrid) -> Result<ResultTable> {
    grid.validate()?;
    let jobs: Vec<(BenchId, Algorithm)> = grid
        .functions
        .iter()
        .flat_map(|&f| grid.algorithms.iter().map(move |&a| (f, a)))
        .collect();
    #[cfg(feature = "parallel")]
    let cells = {
        use rayon::prelude::*;
        jobs.par_iter().map(|&(f, a)| run_cell(grid, a, f)).collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let cells = jobs.iter().map(|&(f, a)| run_cell(grid, a, f)).collect::<Result<Vec<_>>>()?;
    Ok(ResultTable { direction: Direction::Minimize, cells })
}

impl ResultTable {
    pub fn algorithms(&self) -> Vec<Algorithm> {
        let mut out = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.algorithm) {
                out.push(c.algorithm);
            }
        }
        out
    }

    pub fn functions(&self) -> Vec<BenchId> {
        let mut out = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.function) {
                out.push(c.function);
            }
        }
        out
    }

    pub fn cell(&self, algorithm: Algorithm, function: BenchId) -> Option<&Cell> {
        self.cells.iter().find(|c| c.algorithm == algorithm && c.function == function)
    }

    /// `function,algorithm,mean,std` rows.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["function", "algorithm", "mean", "std"])?;
        for c in &self.cells {
            w.write_record([c.function.to_string(), c.algorithm.to_string(), c.mean.to_string(), c.std.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// One row per run: `function,algorithm,repeat,best`.
    pub fn write_raw_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["function", "algorithm", "repeat", "best"])?;
        for c in &self.cells {
            for (k, v) in c.raw.iter().enumerate() {
                w.write_record([c.function.to_string(), c.algorithm.to_string(), k.to_string(), v.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Per-function rows of cell means, in algorithm order.
    pub fn mean_matrix(&self) -> (Vec<Algorithm>, Vec<BenchId>, Vec<Vec<f64>>) {
        let algos = self.algorithms();
        let funcs = self.functions();
        let rows = funcs
            .iter()
            .map(|&f| algos.iter().map(|&a| self.cell(a, f).map_or(f64::NAN, |c| c.mean)).collect())
            .collect();
        (algos, funcs, rows)
    }
}

/// Ranks of `values` (1 = best), ties sharing the mean of their positions.
pub fn mid_ranks(values: &[f64], direction: Direction) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| direction.cmp(values[a], values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub ranks: BTreeMap<String, f64>,
    pub statistic: f64,
    /// Number of functions (blocks) that entered the ranking.
    pub n: usize,
    /// Number of algorithms.
    pub k: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub excluded: Vec<String>,
}

/// Friedman average ranks over blocks of per-algorithm scores.
///
/// Each row of `scores` is one block (function); rows containing NaN are
/// excluded and reported by name.
pub fn friedman(
    algorithms: &[String],
    blocks: &[(String, Vec<f64>)],
    direction: Direction,
) -> Result<FriedmanResult> {
    let k = algorithms.len();
    if k == 0 {
        return Err(Error::config("Friedman ranking needs at least one algorithm"));
    }
    let mut sums = vec![0.0; k];
    let mut n = 0;
    let mut excluded = Vec::new();
    for (name, row) in blocks {
        if row.len() != k {
            return Err(Error::Dimension { expected: k, got: row.len() });
        }
        if row.iter().any(|v| v.is_nan()) {
            excluded.push(name.clone());
            continue;
        }
        for (s, r) in sums.iter_mut().zip(mid_ranks(row, direction)) {
            *s += r;
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::config("Friedman ranking needs at least one function without NaN"));
    }
    let avg: Vec<f64> = sums.iter().map(|s| s / n as f64).collect();
    let (nf, kf) = (n as f64, k as f64);
    let statistic =
        12.0 * nf / (kf * (kf + 1.0)) * avg.iter().map(|r| r * r).sum::<f64>() - 3.0 * nf * (kf + 1.0);
    Ok(FriedmanResult {
        ranks: algorithms.iter().cloned().zip(avg).collect(),
        statistic,
        n,
        k,
        excluded,
    })
}

/// Friedman ranking of a result table's cell means.
pub fn friedman_ranks(table: &ResultTable) -> Result<FriedmanResult> {
    let (algos, funcs, rows) = table.mean_matrix();
    let names: Vec<String> = algos.iter().map(|a| a.to_string()).collect();
    let blocks: Vec<(String, Vec<f64>)> = funcs.iter().map(|f| f.to_string()).zip(rows).collect();
    friedman(&names, &blocks, table.direction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("a{i}")).collect()
    }

    #[test]
    fn clean_sweep_two_algorithms() {
        for n in [2usize, 5, 16] {
            let blocks: Vec<(String, Vec<f64>)> = (0..n).map(|i| (format!("F{i}"), vec![0.0, 1.0 + i as f64])).collect();
            let r = friedman(&names(2), &blocks, Direction::Minimize).unwrap();
            assert_eq!(r.ranks["a0"], 1.0);
            assert_eq!(r.ranks["a1"], 2.0);
            assert_eq!(r.statistic, n as f64);
        }
    }

    #[test]
    fn ties_share_mid_rank() {
        assert_eq!(mid_ranks(&[1.0, 1.0, 0.5], Direction::Minimize), vec![2.5, 2.5, 1.0]);
        assert_eq!(mid_ranks(&[2.0, 2.0], Direction::Minimize), vec![1.5, 1.5]);
        assert_eq!(mid_ranks(&[3.0, 1.0, 2.0], Direction::Maximize), vec![1.0, 3.0, 2.0]);
    }

    #[test]
    fn nan_rows_excluded() {
        let blocks = vec![
            ("F1".to_string(), vec![0.0, 1.0]),
            ("F2".to_string(), vec![f64::NAN, 1.0]),
            ("F3".to_string(), vec![2.0, 1.0]),
        ];
        let r = friedman(&names(2), &blocks, Direction::Minimize).unwrap();
        assert_eq!(r.n, 2);
        assert_eq!(r.excluded, vec!["F2".to_string()]);
        assert_eq!(r.ranks["a0"], 1.5);
        let all_nan = vec![("F1".to_string(), vec![f64::NAN, 1.0])];
        assert!(friedman(&names(2), &all_nan, Direction::Minimize).is_err());
    }

    #[test]
    fn single_algorithm_has_zero_statistic() {
        let blocks = vec![("F1".to_string(), vec![3.0])];
        let r = friedman(&names(1), &blocks, Direction::Minimize).unwrap();
        assert_eq!(r.ranks["a0"], 1.0);
        assert_eq!(r.statistic, 0.0);
    }

    #[test]
    fn mean_std_sample() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_std(&[7.0, 7.0]), (7.0, 0.0));
    }

    #[test]
    fn forced_identical_seeds_give_zero_std() {
        let grid = ExperimentGrid {
            algorithms: vec![Algorithm::Gwo],
            functions: vec![BenchId::new(9).unwrap()],
            repeats: 2,
            seed_stride: 0,
            population: 5,
            max_iter: 10,
            ..Default::default()
        };
        let t = run_experiment(&grid).unwrap();
        assert_eq!(t.cells[0].std, 0.0);
    }

    #[test]
    fn cell_shape_and_bounds() {
        let grid = ExperimentGrid {
            algorithms: vec![Algorithm::Mgwo],
            functions: vec![BenchId::new(10).unwrap()],
            repeats: 3,
            population: 6,
            max_iter: 20,
            ..Default::default()
        };
        let t = run_experiment(&grid).unwrap();
        let c = &t.cells[0];
        assert_eq!(c.raw.len(), 3);
        let lo = c.raw.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.raw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(c.std >= 0.0 && c.mean >= lo && c.mean <= hi);
        assert_eq!(run_experiment(&grid).unwrap(), t);
    }

    #[test]
    fn single_repeat_rejected() {
        let grid = ExperimentGrid { repeats: 1, ..Default::default() };
        assert!(run_experiment(&grid).is_err());
    }

    proptest! {
        #[test]
        fn block_ranks_sum_to_triangular(rows in proptest::collection::vec(proptest::collection::vec(-3i32..3, 5), 2..8)) {
            let k = 5;
            let blocks: Vec<(String, Vec<f64>)> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| (format!("F{i}"), r.iter().map(|&v| v as f64).collect()))
                .collect();
            for (_, row) in &blocks {
                let s: f64 = mid_ranks(row, Direction::Minimize).iter().sum();
                prop_assert_eq!(s, (k * (k + 1)) as f64 / 2.0);
            }
            let r = friedman(&names(k), &blocks, Direction::Minimize).unwrap();
            let total: f64 = r.ranks.values().sum();
            prop_assert!((total - (k * (k + 1)) as f64 / 2.0).abs() < 1e-9);
        }

        #[test]
        fn ranks_invariant_under_monotone_transform(ints in proptest::collection::vec(-100i32..100, 2..7)) {
            let row: Vec<f64> = ints.iter().map(|&v| v as f64).collect();
            let transformed: Vec<f64> = row.iter().map(|v| 4.0 * v + 7.0).collect();
            prop_assert_eq!(mid_ranks(&row, Direction::Minimize), mid_ranks(&transformed, Direction::Minimize));
        }
    }
}
