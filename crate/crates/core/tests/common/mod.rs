//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's solvers: only `mul`, `inverse` and `identity`.

#![allow(dead_code)]

use std::path::PathBuf;

use massicot::{build_group, GSet, GroupFamily, GroupTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cyc(n: usize) -> GroupFamily {
    GroupFamily::Cyclic(n)
}

pub fn prod(a: GroupFamily, b: GroupFamily) -> GroupFamily {
    GroupFamily::DirectProduct(Box::new(a), Box::new(b))
}

/// A spread of concrete groups of order at most `max_order`.
pub fn small_groups(max_order: usize) -> Vec<(String, GroupTable)> {
    let mut fams = Vec::new();
    for n in 1..=max_order.min(64) {
        fams.push(cyc(n));
    }
    for m in 2..=max_order / 2 {
        fams.push(GroupFamily::Dihedral(m));
    }
    for (a, b) in [(2, 2), (2, 4), (2, 6), (3, 3), (2, 8), (4, 4), (3, 6), (2, 10), (4, 6), (5, 5), (4, 8)] {
        fams.push(prod(cyc(a), cyc(b)));
    }
    fams.push(prod(prod(cyc(2), cyc(2)), cyc(2)));
    fams.push(prod(cyc(2), GroupFamily::Dihedral(3)));
    fams.push(prod(cyc(2), GroupFamily::Dihedral(4)));
    fams.push(prod(cyc(3), GroupFamily::Dihedral(4)));
    fams.push(GroupFamily::HeisenbergMod(3));
    fams.into_iter()
        .map(|f| (format!("{f:?}"), build_group(&f).unwrap()))
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

pub fn interval(g: &GroupTable, r: i64) -> GSet {
    let n = g.order() as i64;
    GSet::from_elements(g.order(), (-r..=r).map(|x| x.rem_euclid(n) as usize))
}

pub fn random_set(rng: &mut ChaCha8Rng, n: usize, density: f64) -> GSet {
    GSet::from_elements(n, (0..n).filter(|_| rng.random_bool(density)))
}

pub fn random_nonempty(rng: &mut ChaCha8Rng, n: usize, density: f64) -> GSet {
    let mut s = random_set(rng, n, density);
    if s.is_empty() {
        s.insert(rng.random_range(0..n));
    }
    s
}

/// Random symmetric set containing the identity.
pub fn random_symmetric(rng: &mut ChaCha8Rng, g: &GroupTable, density: f64) -> GSet {
    let mut s = GSet::singleton(g.order(), g.identity());
    for x in 0..g.order() {
        if rng.random_bool(density) {
            s.insert(x);
            s.insert(g.inverse(x));
        }
    }
    s
}

pub fn elems(s: &GSet) -> Vec<usize> {
    s.to_vec()
}

/// `{xy : x ∈ X, y ∈ Y}` by double loop.
pub fn naive_product(g: &GroupTable, x: &GSet, y: &GSet) -> GSet {
    let mut out = GSet::empty(g.order());
    for a in x.iter() {
        for b in y.iter() {
            out.insert(g.mul(a, b));
        }
    }
    out
}

/// Is `B ⊆ Δ·A`?
pub fn covers(g: &GroupTable, delta: &[usize], a: &GSet, b: &GSet) -> bool {
    b.iter().all(|x| delta.iter().any(|&d| a.contains(g.mul(g.inverse(d), x))))
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order; stops
/// when `f` returns true.
pub fn any_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if go(i + 1, n, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, n, k, &mut Vec::with_capacity(k), f)
}

/// Least `k` with `B ⊆ Δ·A` for some `Δ ⊆ G`, by enumerating all of `G`.
pub fn brute_cover(g: &GroupTable, a: &GSet, b: &GSet) -> usize {
    if b.is_empty() {
        return 0;
    }
    for k in 1..=g.order() {
        if any_combination(g.order(), k, &mut |d| covers(g, d, a, b)) {
            return k;
        }
    }
    unreachable!("G·A = G for nonempty A")
}

/// Is `F` free: no two distinct members with a quotient in `A ∪ A⁻¹`?
pub fn is_free(g: &GroupTable, a: &GSet, f: &[usize]) -> bool {
    f.iter().all(|&x| {
        f.iter().all(|&y| {
            if x == y {
                return true;
            }
            let q = g.mul(g.inverse(x), y);
            !a.contains(q) && !a.contains(g.inverse(q))
        })
    })
}

/// Largest `A`-free subset of `B`, enumerating every free subset by
/// extension.
pub fn brute_thickness(g: &GroupTable, a: &GSet, b: &GSet) -> usize {
    let members = b.to_vec();
    let clash = |x: usize, y: usize| {
        let q = g.mul(g.inverse(x), y);
        a.contains(q) || a.contains(g.inverse(q))
    };
    fn grow(start: usize, members: &[usize], chosen: &mut Vec<usize>, clash: &dyn Fn(usize, usize) -> bool) -> usize {
        let mut best = chosen.len();
        for i in start..members.len() {
            let x = members[i];
            if chosen.iter().all(|&y| !clash(x, y)) {
                chosen.push(x);
                best = best.max(grow(i + 1, members, chosen, clash));
                chosen.pop();
            }
        }
        best
    }
    grow(0, &members, &mut Vec::new(), &clash)
}

pub fn scenarios_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

pub fn corpus() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(scenarios_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
}
