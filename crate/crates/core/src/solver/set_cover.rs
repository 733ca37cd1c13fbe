use super::{Bits, Solution};

/// Greedy cover: repeatedly take the set covering the most uncovered
/// elements, lowest index on ties. Returns `None` if `universe` cannot be
/// covered at all.
pub fn greedy_set_cover<B: Bits>(universe: &B, sets: &[B]) -> Option<Vec<usize>> {
    let mut uncovered = universe.clone();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let (best, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.and_count(&uncovered)))
            .fold((usize::MAX, 0), |acc, (i, c)| if c > acc.1 { (i, c) } else { acc });
        if gain == 0 {
            return None;
        }
        chosen.push(best);
        uncovered = uncovered.and_not(&sets[best]);
    }
    chosen.sort_unstable();
    Some(chosen)
}

struct Search<'a, B> {
    sets: &'a [B],
    /// For each element, the sets containing it ordered by decreasing size.
    covering: Vec<Vec<usize>>,
    best: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
    aborted: bool,
}

impl<B: Bits> Search<'_, B> {
    fn run(&mut self, uncovered: &B) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                self.aborted = true;
                return;
            }
        }
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let depth = self.chosen.len();
        if depth + 1 >= self.best.len() {
            return;
        }
        let max_gain = self.sets.iter().map(|s| s.and_count(uncovered)).max().unwrap_or(0);
        if max_gain == 0 {
            return;
        }
        let need = uncovered.count().div_ceil(max_gain);
        if depth + need >= self.best.len() {
            return;
        }
        // branch on the uncovered element with fewest covering sets
        let pivot = uncovered
            .members()
            .into_iter()
            .min_by_key(|&x| (self.covering[x].len(), x))
            .expect("nonempty");
        let options = self.covering[pivot].clone();
        for s in options {
            self.chosen.push(s);
            let rest = uncovered.and_not(&self.sets[s]);
            self.run(&rest);
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

/// Minimum set cover by branch and bound. With `node_limit = None` the
/// search always completes; otherwise it may stop early and report the best
/// cover found with `optimal = false`. Returns `None` if no cover exists.
pub fn exact_set_cover<B: Bits>(universe: &B, sets: &[B], node_limit: Option<u64>) -> Option<Solution> {
    let greedy = greedy_set_cover(universe, sets)?;
    let restricted: Vec<B> = sets.iter().map(|s| s.and(universe)).collect();

    // drop sets dominated by another (keep the lowest index among equals)
    let keep: Vec<usize> = (0..restricted.len())
        .filter(|&i| {
            !restricted[i].is_empty()
                && !(0..restricted.len()).any(|j| {
                    j != i
                        && restricted[i].is_subset(&restricted[j])
                        && (restricted[i] != restricted[j] || j < i)
                })
        })
        .collect();
    let kept: Vec<B> = keep.iter().map(|&i| restricted[i].clone()).collect();

    let width = universe.members().last().map_or(0, |&m| m + 1);
    let mut covering = vec![Vec::new(); width];
    for x in universe.members() {
        let mut list: Vec<usize> = (0..kept.len()).filter(|&s| kept[s].contains(x)).collect();
        list.sort_by_key(|&s| (std::cmp::Reverse(kept[s].count()), s));
        covering[x] = list;
    }

    // sentinel: one longer than greedy so the greedy size is reachable
    let mut search = Search {
        sets: &kept,
        covering,
        best: vec![usize::MAX; greedy.len() + 1],
        chosen: Vec::new(),
        nodes: 0,
        limit: node_limit,
        aborted: false,
    };
    search.run(universe);
    let optimal = !search.aborted;
    let chosen = if search.best.len() <= greedy.len() && !search.best.contains(&usize::MAX) {
        let mut c: Vec<usize> = search.best.iter().map(|&i| keep[i]).collect();
        c.sort_unstable();
        c
    } else {
        greedy
    };
    Some(Solution { chosen, optimal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_is_not_optimal_on_classic_instance() {
        // universe 0..6; greedy picks the big middle set first
        let universe: u64 = 0b11_1111;
        let sets: Vec<u64> = vec![0b00_0111, 0b11_1000, 0b01_1110];
        let g = greedy_set_cover(&universe, &sets).unwrap();
        let e = exact_set_cover(&universe, &sets, None).unwrap();
        assert!(e.optimal);
        assert_eq!(e.chosen, vec![0, 1]);
        assert!(g.len() >= e.chosen.len());
    }

    #[test]
    fn uncoverable() {
        let universe: u64 = 0b111;
        assert!(exact_set_cover(&universe, &[0b011u64], None).is_none());
    }

    #[test]
    fn empty_universe() {
        let e = exact_set_cover(&0u64, &[0b1u64], None).unwrap();
        assert!(e.chosen.is_empty());
    }
}
