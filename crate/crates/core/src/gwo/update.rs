//! Position-update rules.
//!
//! Every rule first builds the three leader-guided candidates `X1, X2, X3`
//! and then combines them. Guide draws are consumed dimension by dimension,
//! and within a dimension as `r1, r2` for alpha, beta and delta in turn.

use crate::gwo::leaders::LeaderSet;
use crate::opt::objective::Direction;
use crate::opt::rng::UnitSource;
use crate::opt::space::SearchSpace;

/// Leader-guided candidates `[X1, X2, X3]` for an agent at `position`.
pub fn guides<R: UnitSource>(
    position: &[f64],
    leaders: &LeaderSet,
    a: f64,
    rng: &mut R,
) -> [Vec<f64>; 3] {
    let dim = position.len();
    let mut out = [vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]];
    let lead = leaders.positions();
    for d in 0..dim {
        for (k, leader) in lead.iter().enumerate() {
            let r1 = rng.unit();
            let r2 = rng.unit();
            let big_a = 2.0 * a * r1 - a;
            let big_c = 2.0 * r2;
            let dist = (big_c * leader[d] - position[d]).abs();
            out[k][d] = leader[d] - big_a * dist;
        }
    }
    out
}

fn mean_of(g: &[Vec<f64>; 3]) -> Vec<f64> {
    (0..g[0].len()).map(|d| (g[0][d] + g[1][d] + g[2][d]) / 3.0).collect()
}

fn clamped(space: &SearchSpace, mut x: Vec<f64>) -> Vec<f64> {
    space.clamp_in_place(&mut x);
    x
}

/// Standard GWO: the mean of the three guides.
pub fn update_standard<R: UnitSource>(
    position: &[f64],
    leaders: &LeaderSet,
    a: f64,
    space: &SearchSpace,
    rng: &mut R,
) -> Vec<f64> {
    let g = guides(position, leaders, a, rng);
    clamped(space, mean_of(&g))
}

/// EEGWO: `b1*r3*mean(X1..X3) + b2*r4*(peer - x)`, with `r3, r4` drawn per
/// dimension after all guide draws.
#[allow(clippy::too_many_arguments)]
pub fn update_eegwo<R: UnitSource>(
    position: &[f64],
    leaders: &LeaderSet,
    peer: &[f64],
    a: f64,
    b1: f64,
    b2: f64,
    space: &SearchSpace,
    rng: &mut R,
) -> Vec<f64> {
    let g = guides(position, leaders, a, rng);
    let mean = mean_of(&g);
    let next = (0..position.len())
        .map(|d| {
            let r3 = rng.unit();
            let r4 = rng.unit();
            b1 * r3 * mean[d] + b2 * r4 * (peer[d] - position[d])
        })
        .collect();
    clamped(space, next)
}

/// Fitness-weighted combination, or the plain mean when the weights sum to zero.
pub fn combine_igwo(g: &[Vec<f64>; 3], fits: [f64; 3], weighted: bool) -> Vec<f64> {
    let total: f64 = fits.iter().sum();
    if !weighted || total == 0.0 || !total.is_finite() {
        return mean_of(g);
    }
    (0..g[0].len())
        .map(|d| (fits[0] * g[0][d] + fits[1] * g[1][d] + fits[2] * g[2][d]) / total)
        .collect()
}

/// IGWO: fitness-weighted guides when the agent is at least as fit as the
/// leaders' average fitness, plain mean otherwise.
pub fn update_igwo<R: UnitSource>(
    position: &[f64],
    fitness: f64,
    leaders: &LeaderSet,
    a: f64,
    direction: Direction,
    space: &SearchSpace,
    rng: &mut R,
) -> Vec<f64> {
    let g = guides(position, leaders, a, rng);
    let fits = leaders.fitnesses();
    let f_avg = fits.iter().sum::<f64>() / 3.0;
    let weighted = !direction.is_better(f_avg, fitness);
    clamped(space, combine_igwo(&g, fits, weighted))
}

/// Magnitude-weighted combination. Weights are the guides' Euclidean norms
/// over their sum; `literal_div3` keeps the extra division by three.
pub fn combine_ergwo(g: &[Vec<f64>; 3], literal_div3: bool) -> Vec<f64> {
    let norms = g.each_ref().map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt());
    let total: f64 = norms.iter().sum();
    if total == 0.0 || !total.is_finite() {
        return mean_of(g);
    }
    let w = norms.map(|n| n / total);
    let w_sum: f64 = w.iter().sum();
    let scale = if literal_div3 { 1.0 / (3.0 * w_sum) } else { 1.0 };
    (0..g[0].len())
        .map(|d| scale * (w[0] * g[0][d] + w[1] * g[1][d] + w[2] * g[2][d]))
        .collect()
}

pub fn update_ergwo<R: UnitSource>(
    position: &[f64],
    leaders: &LeaderSet,
    a: f64,
    literal_div3: bool,
    space: &SearchSpace,
    rng: &mut R,
) -> Vec<f64> {
    let g = guides(position, leaders, a, rng);
    clamped(space, combine_ergwo(&g, literal_div3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opt::objective::Agent;
    use crate::opt::rng::{Cycle, WolfRng};

    fn leaders_1d(a: f64, b: f64, d: f64, fits: [f64; 3]) -> LeaderSet {
        LeaderSet {
            alpha: Agent::evaluated(vec![a], fits[0]),
            beta: Agent::evaluated(vec![b], fits[1]),
            delta: Agent::evaluated(vec![d], fits[2]),
        }
    }

    fn wide() -> SearchSpace {
        SearchSpace::uniform(1, -100.0, 100.0).unwrap()
    }

    #[test]
    fn fixed_point_when_everything_coincides() {
        let space = SearchSpace::uniform(2, -10.0, 10.0).unwrap();
        let p = vec![1.25, -3.5];
        let ls = LeaderSet {
            alpha: Agent::evaluated(p.clone(), 0.0),
            beta: Agent::evaluated(p.clone(), 0.0),
            delta: Agent::evaluated(p.clone(), 0.0),
        };
        // r1 arbitrary, r2 = 0.5 gives C = 1 and D = 0
        for a in [0.0, 0.7, 2.0] {
            let mut rng = Cycle::new([0.9, 0.5]);
            assert_eq!(update_standard(&p, &ls, a, &space, &mut rng), p);
        }
    }

    #[test]
    fn standard_hand_example() {
        let ls = leaders_1d(4.0, 2.0, 0.0, [0.0; 3]);
        let mut rng = Cycle::constant(0.5);
        let x = update_standard(&[1.0], &ls, 1.3, &wide(), &mut rng);
        assert_eq!(x, vec![2.0]);
    }

    #[test]
    fn standard_clamps() {
        let ls = leaders_1d(4.0, 4.0, 4.0, [0.0; 3]);
        let space = SearchSpace::uniform(1, 0.0, 1.0).unwrap();
        let mut rng = Cycle::constant(0.5);
        assert_eq!(update_standard(&[0.5], &ls, 1.0, &space, &mut rng), vec![1.0]);
    }

    #[test]
    fn eegwo_zero_draws_give_origin() {
        let ls = leaders_1d(4.0, 2.0, 0.0, [0.0; 3]);
        // six guide draws at 0.5, then r3 = r4 = 0
        let mut rng = Cycle::new([0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0]);
        assert_eq!(update_eegwo(&[1.0], &ls, &[3.0], 1.0, 0.1, 0.9, &wide(), &mut rng), vec![0.0]);
        let space = SearchSpace::uniform(1, 1.0, 2.0).unwrap();
        let mut rng = Cycle::new([0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0]);
        assert_eq!(update_eegwo(&[1.0], &ls, &[3.0], 1.0, 0.1, 0.9, &space, &mut rng), vec![1.0]);
    }

    #[test]
    fn eegwo_hand_example() {
        // guides 4, 3, 2 -> mean 3; peer 2, x 1
        let ls = leaders_1d(4.0, 3.0, 2.0, [0.0; 3]);
        let mut rng = Cycle::new([0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1.0, 1.0]);
        let x = update_eegwo(&[1.0], &ls, &[2.0], 1.0, 0.1, 0.9, &wide(), &mut rng);
        assert!((x[0] - 1.2).abs() < 1e-12);
    }

    #[test]
    fn eegwo_reduces_to_mean() {
        let space = SearchSpace::uniform(3, -50.0, 50.0).unwrap();
        let ls = LeaderSet {
            alpha: Agent::evaluated(vec![1.0, 2.0, 3.0], 0.0),
            beta: Agent::evaluated(vec![-4.0, 0.5, 7.0], 1.0),
            delta: Agent::evaluated(vec![2.0, 2.0, -1.0], 2.0),
        };
        let x = [0.3, -0.2, 5.0];
        let mut r1 = WolfRng::new(3);
        let mean = update_standard(&x, &ls, 1.2, &space, &mut r1);
        // same guide draws, then r3 = 1 for every dimension
        let mut draws: Vec<f64> = {
            let mut r = WolfRng::new(3);
            (0..18).map(|_| r.unit()).collect()
        };
        for _ in 0..3 {
            draws.extend([1.0, 0.37]);
        }
        let mut cyc = Cycle::new(draws);
        let e = update_eegwo(&x, &ls, &[9.0, 9.0, 9.0], 1.2, 1.0, 1e-300, &space, &mut cyc);
        for d in 0..3 {
            assert!((e[d] - mean[d]).abs() < 1e-12);
        }
    }

    #[test]
    fn igwo_equal_fitness_is_mean() {
        let g = [vec![1.0], vec![2.0], vec![6.0]];
        assert_eq!(combine_igwo(&g, [5.0; 3], true), vec![3.0]);
    }

    #[test]
    fn igwo_hand_example() {
        let ls = leaders_1d(1.0, 2.0, 3.0, [1.0, 2.0, 3.0]);
        let mut rng = Cycle::constant(0.5);
        // agent fitness 1 beats f_avg = 2 under minimization
        let x = update_igwo(&[0.0], 1.0, &ls, 1.0, Direction::Minimize, &wide(), &mut rng);
        assert!((x[0] - 14.0 / 6.0).abs() < 1e-12);
        // a worse agent takes the plain mean
        let mut rng = Cycle::constant(0.5);
        let y = update_igwo(&[0.0], 9.0, &ls, 1.0, Direction::Minimize, &wide(), &mut rng);
        assert!((y[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn igwo_zero_fitness_falls_back() {
        let g = [vec![1.0], vec![2.0], vec![6.0]];
        assert_eq!(combine_igwo(&g, [0.0; 3], true), vec![3.0]);
    }

    #[test]
    fn ergwo_hand_example() {
        let g = [vec![3.0], vec![-1.0], vec![0.0]];
        let lit = combine_ergwo(&g, true);
        assert!((lit[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((combine_ergwo(&g, false)[0] - 2.0).abs() < 1e-12);
        let zero = [vec![0.0, 0.0], vec![0.0, 0.0], vec![0.0, 0.0]];
        assert_eq!(combine_ergwo(&zero, true), vec![0.0, 0.0]);
    }

    #[test]
    fn ergwo_update_matches_combination() {
        let ls = leaders_1d(3.0, -1.0, 0.0, [0.0; 3]);
        let mut rng = Cycle::constant(0.5);
        let x = update_ergwo(&[7.0], &ls, 1.5, true, &wide(), &mut rng);
        assert!((x[0] - 2.0 / 3.0).abs() < 1e-12);
    }
}
