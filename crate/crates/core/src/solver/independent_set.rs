use super::{Bits, Solution};

/// Greedy independent set: repeatedly take the remaining vertex with the
/// fewest remaining neighbours (lowest index on ties).
pub fn greedy_independent_set<B: Bits>(vertices: &B, adjacency: &[B]) -> Vec<usize> {
    let mut remaining = vertices.clone();
    let mut chosen = Vec::new();
    while let Some(v) = remaining
        .members()
        .into_iter()
        .min_by_key(|&v| (adjacency[v].and_count(&remaining), v))
    {
        chosen.push(v);
        remaining.remove(v);
        remaining = remaining.and_not(&adjacency[v]);
    }
    chosen.sort_unstable();
    chosen
}

struct Search<'a, B> {
    /// Non-adjacency: `compat[v]` are the vertices that may join `v`.
    compat: &'a [B],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
    aborted: bool,
}

impl<B: Bits> Search<'_, B> {
    /// Greedy colouring of `p` in the compatibility graph: each colour class
    /// is pairwise incompatible, so a clique takes at most one per class.
    fn colour(&self, p: &B) -> Vec<(usize, usize)> {
        let mut order = Vec::with_capacity(p.count());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q = q.and_not(&self.compat[v]);
                uncoloured.remove(v);
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, mut p: B) {
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                self.aborted = true;
                return;
            }
        }
        let order = self.colour(&p);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = p.and(&self.compat[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            if self.aborted {
                return;
            }
            p.remove(v);
        }
    }
}

/// Maximum independent set among `vertices` in the graph given by
/// `adjacency` (symmetric, irreflexive on the vertices used).
pub fn exact_independent_set<B: Bits>(vertices: &B, adjacency: &[B], node_limit: Option<u64>) -> Solution {
    let greedy = greedy_independent_set(vertices, adjacency);
    let compat: Vec<B> = (0..adjacency.len())
        .map(|v| {
            let mut c = vertices.and_not(&adjacency[v]);
            c.remove(v);
            c
        })
        .collect();
    let mut search =
        Search { compat: &compat, best: greedy.clone(), current: Vec::new(), nodes: 0, limit: node_limit, aborted: false };
    if !vertices.is_empty() {
        search.expand(vertices.clone());
    }
    let mut chosen = search.best;
    chosen.sort_unstable();
    Solution { chosen, optimal: !search.aborted }
}
