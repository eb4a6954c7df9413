use crate::error::Result;
use crate::gwo::leaders::LeaderSet;
use crate::gwo::schedule::{VariantKind, VariantSpec};
use crate::gwo::update;
use crate::opt::objective::{Agent, Evaluator};
use crate::opt::rng::UnitSource;

/// One iteration of the selected variant.
///
/// Agents are updated in population order. For each agent the random draws
/// are, in order: the EEGWO peer index (EEGWO only), the guide draws of
/// [`update::guides`], then the EEGWO `r3, r4` pairs. After all positions
/// move, every agent is re-evaluated and the leaders are refreshed.
///
/// Returns the exploration rate used.
#[allow(clippy::too_many_arguments)]
pub fn step<R: UnitSource>(
    spec: &VariantSpec,
    population: &mut [Agent],
    leaders: &mut LeaderSet,
    t: usize,
    max_iter: usize,
    rng: &mut R,
    eval: &mut Evaluator<'_>,
) -> Result<f64> {
    let a = spec.schedule(t, max_iter)?;
    let direction = eval.direction();
    let space = eval.space().clone();
    let snapshot: Vec<Vec<f64>> = match spec.kind {
        VariantKind::Eegwo => population.iter().map(|p| p.position.clone()).collect(),
        _ => Vec::new(),
    };

    for agent in population.iter_mut() {
        let x = &agent.position;
        let next = match spec.kind {
            VariantKind::Standard | VariantKind::Mgwo | VariantKind::Egwo => {
                update::update_standard(x, leaders, a, &space, rng)
            }
            VariantKind::Eegwo => {
                let peer = &snapshot[rng.index(snapshot.len())];
                update::update_eegwo(x, leaders, peer, a, spec.b1, spec.b2, &space, rng)
            }
            VariantKind::Igwo => update::update_igwo(x, agent.fit(), leaders, a, direction, &space, rng),
            VariantKind::Ergwo => update::update_ergwo(x, leaders, a, spec.ergwo_literal_div3, &space, rng),
        };
        agent.position = next;
        agent.fitness = None;
    }
    for agent in population.iter_mut() {
        agent.fitness = Some(eval.evaluate(&agent.position));
    }
    leaders.refresh(population, direction);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opt::objective::{FnObjective, Objective};
    use crate::opt::rng::WolfRng;
    use crate::opt::space::SearchSpace;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    fn setup(n: usize, seed: u64, obj: &dyn Objective, space: &SearchSpace) -> (Vec<Agent>, LeaderSet, WolfRng) {
        let mut rng = WolfRng::new(seed);
        let mut eval = Evaluator::new(obj, space);
        let pop: Vec<Agent> = (0..n)
            .map(|_| {
                let p = space.sample(&mut rng);
                let f = eval.evaluate(&p);
                Agent::evaluated(p, f)
            })
            .collect();
        let leaders = LeaderSet::select(&pop, obj.direction());
        (pop, leaders, rng)
    }

    #[test]
    fn population_of_one() {
        let space = SearchSpace::uniform(2, -1.0, 1.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        for kind in VariantKind::ALL {
            let (mut pop, mut ls, mut rng) = setup(1, 4, &obj, &space);
            let mut eval = Evaluator::new(&obj, &space);
            step(&VariantSpec::new(kind), &mut pop, &mut ls, 1, 10, &mut rng, &mut eval).unwrap();
            assert_eq!(eval.evaluations(), 1);
            assert!(space.contains(&pop[0].position));
        }
    }

    #[test]
    fn leaders_persist_or_improve_and_stay_ordered() {
        let space = SearchSpace::uniform(3, -5.0, 5.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        for kind in VariantKind::ALL {
            let (mut pop, mut ls, mut rng) = setup(8, 11, &obj, &space);
            let mut eval = Evaluator::new(&obj, &space);
            let mut prev = ls.alpha.fit();
            for t in 1..=20 {
                step(&VariantSpec::new(kind), &mut pop, &mut ls, t, 20, &mut rng, &mut eval).unwrap();
                assert!(ls.alpha.fit() <= prev);
                assert!(ls.is_ordered(obj.direction()));
                assert!(pop.iter().all(|a| space.contains(&a.position)));
                prev = ls.alpha.fit();
            }
        }
    }

    #[test]
    fn seeded_step_is_reproducible() {
        let space = SearchSpace::uniform(4, -2.0, 2.0).unwrap();
        let obj = FnObjective::minimize(sphere);
        let run = || {
            let (mut pop, mut ls, mut rng) = setup(6, 99, &obj, &space);
            let mut eval = Evaluator::new(&obj, &space);
            step(&VariantSpec::new(VariantKind::Eegwo), &mut pop, &mut ls, 3, 10, &mut rng, &mut eval).unwrap();
            pop
        };
        assert_eq!(run(), run());
    }
}
