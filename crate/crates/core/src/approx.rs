//! Quantitative approximate-subgroup arithmetic: covering numbers, thickness
//! numbers, approximate-subgroup constants and the S-operator.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::measure::SpaceMean;
use crate::solver::{
    exact_independent_set, exact_set_cover, greedy_independent_set, greedy_set_cover,
    LARGE_INSTANCE_NODE_LIMIT,
};
use crate::subset::{ESet, GSet, LocalSet};

/// Instances up to this many elements are always solved to optimality.
pub const EXACT_GUARANTEE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    Exact,
    Greedy,
}

/// `B ⊆ Δ·A` with `|Δ| = k`; serializes as `{"k", "delta", "exact"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub k: usize,
    pub delta: GSet,
    pub exact: bool,
}

/// A maximum (when `exact`) subset of `B` with no two members whose
/// quotient lies in `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThicknessWitness {
    pub k: usize,
    pub free_set: GSet,
    pub exact: bool,
}

enum Instance {
    Small(Vec<u64>, u64),
    Large(Vec<LocalSet>, LocalSet),
}

fn pack(width: usize, rows: Vec<Vec<usize>>) -> Instance {
    if width <= 64 {
        let rows = rows.into_iter().map(|r| r.into_iter().fold(0u64, |acc, i| acc | (1 << i))).collect();
        let all = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        Instance::Small(rows, all)
    } else {
        let rows = rows.into_iter().map(|r| LocalSet::from_elements(width, r)).collect();
        Instance::Large(rows, LocalSet::full(width))
    }
}

/// Minimal number of left translates of `A` covering `B`. Translators are
/// drawn from `B·A⁻¹`, the only elements whose translate of `A` meets `B`.
pub fn covering_number(group: &GroupTable, a: &GSet, b: &GSet, mode: SolveMode) -> Result<CoverWitness> {
    group.check_set(a)?;
    group.check_set(b)?;
    if b.is_empty() {
        return Ok(CoverWitness { k: 0, delta: group.empty_set(), exact: true });
    }
    if a.is_empty() {
        return Err(Error::EmptyCoveringSet);
    }
    let candidates: Vec<usize> = group.product_set(b, &group.inverse_set(a))?.to_vec();
    let members: Vec<usize> = b.to_vec();
    let mut local = vec![usize::MAX; group.order()];
    for (i, &x) in members.iter().enumerate() {
        local[x] = i;
    }
    let rows: Vec<Vec<usize>> = candidates
        .iter()
        .map(|&d| a.iter().map(|x| local[group.mul(d, x)]).filter(|&i| i != usize::MAX).collect())
        .collect();
    let (chosen, exact) = match (pack(members.len(), rows), mode) {
        (Instance::Small(rows, all), SolveMode::Exact) => {
            let s = exact_set_cover(&all, &rows, None).expect("translators cover B");
            (s.chosen, s.optimal)
        }
        (Instance::Large(rows, all), SolveMode::Exact) => {
            let s = exact_set_cover(&all, &rows, Some(LARGE_INSTANCE_NODE_LIMIT)).expect("translators cover B");
            (s.chosen, s.optimal)
        }
        (Instance::Small(rows, all), SolveMode::Greedy) => (greedy_set_cover(&all, &rows).expect("coverable"), false),
        (Instance::Large(rows, all), SolveMode::Greedy) => (greedy_set_cover(&all, &rows).expect("coverable"), false),
    };
    let delta = GSet::from_elements(group.order(), chosen.iter().map(|&i| candidates[i]));
    Ok(CoverWitness { k: delta.count(), delta, exact })
}

/// Covering numbers in both directions: `(translates of A covering B,
/// translates of B covering A)`.
pub fn commensurability(group: &GroupTable, a: &GSet, b: &GSet, mode: SolveMode) -> Result<(CoverWitness, CoverWitness)> {
    Ok((covering_number(group, a, b, mode)?, covering_number(group, b, a, mode)?))
}

/// Adjacency of the thickness graph on the members of `B`: `i ~ j` iff
/// `b_i⁻¹b_j ∈ A` or `b_j⁻¹b_i ∈ A`.
fn thickness_graph(group: &GroupTable, a: &GSet, members: &[usize]) -> Vec<Vec<usize>> {
    let n = members.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        let inv_i = group.inverse(members[i]);
        for j in 0..n {
            if i != j {
                let q = group.mul(inv_i, members[j]);
                if a.contains(q) || a.contains(group.inverse(q)) {
                    adj[i].push(j);
                }
            }
        }
    }
    adj
}

/// Largest size of an `A`-free subset of `B`; `A` is `k`-thick in `B`
/// exactly for `k` at least this number.
pub fn thickness_number(group: &GroupTable, a: &GSet, b: &GSet, mode: SolveMode) -> Result<ThicknessWitness> {
    group.check_set(a)?;
    group.check_set(b)?;
    let members = b.to_vec();
    if members.is_empty() {
        return Ok(ThicknessWitness { k: 0, free_set: group.empty_set(), exact: true });
    }
    let adj = thickness_graph(group, a, &members);
    let (chosen, exact) = match (pack(members.len(), adj), mode) {
        (Instance::Small(adj, all), SolveMode::Exact) => {
            let s = exact_independent_set(&all, &adj, None);
            (s.chosen, s.optimal)
        }
        (Instance::Large(adj, all), SolveMode::Exact) => {
            let s = exact_independent_set(&all, &adj, Some(LARGE_INSTANCE_NODE_LIMIT));
            (s.chosen, s.optimal)
        }
        (Instance::Small(adj, all), SolveMode::Greedy) => (greedy_independent_set(&all, &adj), false),
        (Instance::Large(adj, all), SolveMode::Greedy) => (greedy_independent_set(&all, &adj), false),
    };
    let free_set = GSet::from_elements(group.order(), chosen.iter().map(|&i| members[i]));
    Ok(ThicknessWitness { k: free_set.count(), free_set, exact })
}

/// Least `k` such that the symmetric set `A ∋ e` is a `k`-approximate
/// subgroup: the covering number of `A²` by translates of `A`.
pub fn approximate_constant(group: &GroupTable, a: &GSet) -> Result<CoverWitness> {
    group.check_set(a)?;
    if !group.is_symmetric(a) {
        return Err(Error::NotSymmetric);
    }
    if !a.contains(group.identity()) {
        return Err(Error::MissingIdentity);
    }
    let a2 = group.product_set(a, a)?;
    covering_number(group, a, &a2, SolveMode::Exact)
}

/// `S_Γ(AB) = {g ∈ ⟨Γ⟩ : m(gAB ∩ AB) > 0}`.
pub fn s_operator(group: &GroupTable, gamma: &GSet, a: &GSet, b: &ESet, m: &SpaceMean) -> Result<GSet> {
    let action = m.action();
    if action.group().order() != group.order() {
        return Err(Error::CarrierMismatch { expected: group.order(), found: action.group().order() });
    }
    let span = group.generated_subgroup(gamma)?;
    let ab = action.act_set(a, b)?;
    let mut out = group.empty_set();
    for g in &span {
        if m.is_positive(&action.act_element(g, &ab).intersection(&ab))? {
            out.insert(g);
        }
    }
    Ok(out)
}

/// Both directions of the thickness/covering correspondence on one pair.
#[derive(Debug, Clone, Serialize)]
pub struct BridgeReport {
    pub thickness: ThicknessWitness,
    /// The free set reused as translators: `B ⊆ Δ·(A ∪ A⁻¹ ∪ {e})`.
    pub delta_from_thickness: GSet,
    /// `A` is symmetric and contains the identity.
    pub a_symmetric_with_identity: bool,
    pub thick_to_cover_holds: bool,
    /// `B ⊆ Δ·A` with the same Δ; guaranteed only when `A` is symmetric
    /// and contains the identity.
    pub thick_to_cover_plain: bool,
    pub cover: Option<CoverWitness>,
    pub quotient_thickness: Option<ThicknessWitness>,
    pub cover_to_thick_holds: bool,
    pub exact: bool,
    pub failures: Vec<String>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn covered_by(group: &GroupTable, delta: &GSet, a: &GSet, b: &GSet) -> bool {
    b.iter().all(|x| delta.iter().any(|d| a.contains(group.mul(group.inverse(d), x))))
}

/// (i) an exact `A`-free set `F ⊆ B` of size `k` gives
/// `B ⊆ F·(A ∪ A⁻¹ ∪ {e})` (and `B ⊆ F·A` when `A` is symmetric and contains
/// `e`); (ii) a cover of `B` by `k`
/// translates of `A` makes `A⁻¹A` `k`-thick in `B`.
pub fn thickness_cover_bridge(group: &GroupTable, a: &GSet, b: &GSet) -> Result<BridgeReport> {
    let mut failures = Vec::new();
    let thickness = thickness_number(group, a, b, SolveMode::Exact)?;
    let delta = thickness.free_set.clone();
    let mut a_sym = a.union(&group.inverse_set(a));
    a_sym.insert(group.identity());
    let a_symmetric_with_identity = group.is_symmetric(a) && a.contains(group.identity());
    let thick_to_cover_holds = delta.count() <= thickness.k && covered_by(group, &delta, &a_sym, b);
    let thick_to_cover_plain = covered_by(group, &delta, a, b);
    if !thick_to_cover_holds {
        failures.push("free set does not cover B by translates of A ∪ A⁻¹ ∪ {e}".into());
    }
    if a_symmetric_with_identity && !thick_to_cover_plain {
        failures.push("symmetric A with identity: free set does not cover B by translates of A".into());
    }

    let (cover, quotient_thickness, cover_to_thick_holds) = if a.is_empty() && !b.is_empty() {
        (None, None, true)
    } else {
        let cover = covering_number(group, a, b, SolveMode::Exact)?;
        let q = group.quotient_set(a, a)?;
        let qt = thickness_number(group, &q, b, SolveMode::Exact)?;
        let holds = qt.k <= cover.k;
        if !holds {
            failures.push(format!("A⁻¹A has thickness {} in B but {} translates cover", qt.k, cover.k));
        }
        (Some(cover), Some(qt), holds)
    };
    let exact = thickness.exact
        && cover.as_ref().is_none_or(|c| c.exact)
        && quotient_thickness.as_ref().is_none_or(|t| t.exact);
    if !exact {
        failures.push("witnesses are not exact".into());
    }
    Ok(BridgeReport {
        thickness,
        delta_from_thickness: delta,
        a_symmetric_with_identity,
        thick_to_cover_holds,
        thick_to_cover_plain,
        cover,
        quotient_thickness,
        cover_to_thick_holds,
        exact,
        failures,
    })
}
