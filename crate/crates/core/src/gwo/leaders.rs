use crate::opt::objective::{Agent, Direction};

/// The three best agents seen so far, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct LeaderSet {
    pub alpha: Agent,
    pub beta: Agent,
    pub delta: Agent,
}

impl LeaderSet {
    /// Picks the three fittest of `candidates`. With fewer than three
    /// candidates the missing leaders copy the last one found.
    ///
    /// # Panics
    /// If `candidates` is empty.
    pub fn select<'a>(candidates: impl IntoIterator<Item = &'a Agent>, direction: Direction) -> Self {
        let mut ranked: Vec<&Agent> = candidates.into_iter().collect();
        assert!(!ranked.is_empty(), "leader selection needs at least one agent");
        ranked.sort_by(|a, b| direction.cmp(a.fit(), b.fit()));
        let pick = |k: usize| ranked[k.min(ranked.len() - 1)].clone();
        Self { alpha: pick(0), beta: pick(1), delta: pick(2) }
    }

    /// Merges the current leaders with a freshly evaluated population.
    pub fn refresh(&mut self, population: &[Agent], direction: Direction) {
        let current = [self.alpha.clone(), self.beta.clone(), self.delta.clone()];
        *self = Self::select(current.iter().chain(population), direction);
    }

    /// Installs an externally found improvement as the new alpha.
    pub fn promote(&mut self, agent: Agent) {
        self.delta = std::mem::replace(&mut self.beta, std::mem::replace(&mut self.alpha, agent));
    }

    pub fn positions(&self) -> [&[f64]; 3] {
        [&self.alpha.position, &self.beta.position, &self.delta.position]
    }

    pub fn fitnesses(&self) -> [f64; 3] {
        [self.alpha.fit(), self.beta.fit(), self.delta.fit()]
    }

    pub fn is_ordered(&self, direction: Direction) -> bool {
        let [a, b, d] = self.fitnesses();
        !direction.is_better(b, a) && !direction.is_better(d, b)
    }
}
