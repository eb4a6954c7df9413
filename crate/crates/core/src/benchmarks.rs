//! Multimodal (F1-F6, 30-D) and fixed-dimension multimodal (F7-F16) test
//! functions, all minimized.
//!
//! Coefficient tables (foxholes, Kowalik, Hartmann, Shekel) are the standard
//! values from the classical benchmark literature. Two reference optima are
//! normalized: F1 is `-418.9829 * n` for `n = 30`, and F16 is negative.
//! F7 keeps the canonical `0.998` rather than the rounded `1`.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opt::{Direction, Evaluation, Objective, SearchSpace};

/// Benchmark identifier `F1..=F16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BenchId(u8);

impl BenchId {
    pub fn new(n: u8) -> Result<Self> {
        if (1..=16).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::UnknownBenchmark(format!("F{n}")))
        }
    }

    pub fn all() -> impl Iterator<Item = BenchId> {
        (1..=16).map(BenchId)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn info(self) -> &'static BenchmarkFn {
        &TABLE[self.0 as usize - 1]
    }
}

impl fmt::Display for BenchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl FromStr for BenchId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix(['F', 'f']).unwrap_or(t);
        digits
            .parse::<u8>()
            .ok()
            .and_then(|n| BenchId::new(n).ok())
            .ok_or_else(|| Error::UnknownBenchmark(s.to_string()))
    }
}

impl TryFrom<String> for BenchId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BenchId> for String {
    fn from(id: BenchId) -> String {
        id.to_string()
    }
}

/// Metadata and evaluator of one benchmark.
#[derive(Debug)]
pub struct BenchmarkFn {
    pub id: BenchId,
    pub name: &'static str,
    pub dim: usize,
    pub lower: f64,
    pub upper: f64,
    pub fmin_ref: f64,
    f: fn(&[f64]) -> f64,
}

impl BenchmarkFn {
    pub fn space(&self) -> SearchSpace {
        SearchSpace::uniform(self.dim, self.lower, self.upper).expect("benchmark ranges are valid")
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: x.len() });
        }
        Ok((self.f)(x))
    }
}

impl Objective for BenchmarkFn {
    fn direction(&self) -> Direction {
        Direction::Minimize
    }

    fn evaluate(&self, x: &[f64]) -> Evaluation {
        Evaluation::Value((self.f)(x))
    }
}

pub fn eval_benchmark(id: BenchId, x: &[f64]) -> Result<f64> {
    id.info().eval(x)
}

pub fn list_benchmarks() -> &'static [BenchmarkFn] {
    &TABLE
}

macro_rules! bench {
    ($n:expr, $name:expr, $dim:expr, $lo:expr, $hi:expr, $fmin:expr, $f:expr) => {
        BenchmarkFn { id: BenchId($n), name: $name, dim: $dim, lower: $lo, upper: $hi, fmin_ref: $fmin, f: $f }
    };
}

static TABLE: [BenchmarkFn; 16] = [
    bench!(1, "schwefel", 30, -500.0, 500.0, -418.9829 * 30.0, schwefel),
    bench!(2, "rastrigin", 30, -5.12, 5.12, 0.0, rastrigin),
    bench!(3, "ackley", 30, -32.0, 32.0, 0.0, ackley),
    bench!(4, "griewank", 30, -600.0, 600.0, 0.0, griewank),
    bench!(5, "penalized-1", 30, -100.0, 100.0, 0.0, penalized1),
    bench!(6, "penalized-2", 30, -50.0, 50.0, 0.0, penalized2),
    bench!(7, "foxholes", 2, -65.0, 65.0, 0.998, foxholes),
    bench!(8, "kowalik", 4, -5.0, 5.0, 0.0003075, kowalik),
    bench!(9, "six-hump-camel", 2, -5.0, 5.0, -1.0316, six_hump_camel),
    bench!(10, "branin", 2, -5.0, 5.0, 0.398, branin),
    bench!(11, "goldstein-price", 2, -2.0, 2.0, 3.0, goldstein_price),
    bench!(12, "hartmann-3", 3, 1.0, 3.0, -3.86, hartmann3),
    bench!(13, "hartmann-6", 6, 0.0, 1.0, -3.32, hartmann6),
    bench!(14, "shekel-5", 4, 0.0, 10.0, -10.1532, shekel5),
    bench!(15, "shekel-7", 4, 0.0, 10.0, -10.4028, shekel7),
    bench!(16, "shekel-10", 4, 0.0, 10.0, -10.5363, shekel10),
];

fn schwefel(x: &[f64]) -> f64 {
    x.iter().map(|v| -v * v.abs().sqrt().sin()).sum()
}

fn rastrigin(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).sum()
}

fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    // grouped so the terms cancel exactly at the origin
    (20.0 - 20.0 * (-0.2 * sq.sqrt()).exp()) + (E - cs.exp())
}

fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
    sum - prod + 1.0
}

/// Boundary penalty `u(x, a, k, m)`.
fn u(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

fn penalized1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    let mut s = 10.0 * (PI * y[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * (PI * y[i + 1]).sin().powi(2));
    }
    s += (y[n - 1] - 1.0).powi(2);
    PI / n as f64 * s + x.iter().map(|&v| u(v, 10.0, 100.0, 4)).sum::<f64>()
}

fn penalized2(x: &[f64]) -> f64 {
    let n = x.len();
    let mut s = (3.0 * PI * x[0]).sin().powi(2);
    for i in 0..n - 1 {
        s += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
    }
    s += (x[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * x[n - 1]).sin().powi(2));
    0.1 * s + x.iter().map(|&v| u(v, 5.0, 100.0, 4)).sum::<f64>()
}

fn foxholes(x: &[f64]) -> f64 {
    const G: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];
    let mut s = 1.0 / 500.0;
    for j in 0..25 {
        let (a1, a2) = (G[j % 5], G[j / 5]);
        s += 1.0 / ((j + 1) as f64 + (x[0] - a1).powi(6) + (x[1] - a2).powi(6));
    }
    1.0 / s
}

fn kowalik(x: &[f64]) -> f64 {
    const A: [f64; 11] = [0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246];
    const INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];
    A.iter()
        .zip(INV_B)
        .map(|(a, ib)| {
            let b = 1.0 / ib;
            (a - x[0] * (b * b + x[1] * b) / (b * b + x[2] * b + x[3])).powi(2)
        })
        .sum()
}

fn six_hump_camel(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b + 4.0 * b.powi(4)
}

fn branin(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2) + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos() + 10.0
}

fn goldstein_price(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let p = 1.0 + (a + b + 1.0).powi(2) * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
    let q = 30.0
        + (2.0 * a - 3.0 * b).powi(2) * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b + 27.0 * b * b);
    p * q
}

const HARTMANN_C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];

fn hartmann<const D: usize>(x: &[f64], a: &[[f64; D]; 4], p: &[[f64; D]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let e: f64 = (0..D).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            HARTMANN_C[i] * (-e).exp()
        })
        .sum::<f64>()
}

fn hartmann3(x: &[f64]) -> f64 {
    const A: [[f64; 3]; 4] = [[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]];
    const P: [[f64; 3]; 4] = [
        [0.3689, 0.117, 0.2673],
        [0.4699, 0.4387, 0.747],
        [0.1091, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ];
    hartmann(x, &A, &P)
}

fn hartmann6(x: &[f64]) -> f64 {
    const A: [[f64; 6]; 4] = [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ];
    const P: [[f64; 6]; 4] = [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ];
    hartmann(x, &A, &P)
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    -(0..m)
        .map(|i| {
            let d: f64 = (0..4).map(|j| (x[j] - SHEKEL_A[i][j]).powi(2)).sum();
            1.0 / (d + SHEKEL_C[i])
        })
        .sum::<f64>()
}

fn shekel5(x: &[f64]) -> f64 {
    shekel(x, 5)
}

fn shekel7(x: &[f64]) -> f64 {
    shekel(x, 7)
}

fn shekel10(x: &[f64]) -> f64 {
    shekel(x, 10)
}
