//! Graded largeness systems: the μ-system, the largest thick system and the
//! largest generic system, behind one membership interface.
//!
//! In a finite group the thick and generic conditions only ask for the
//! derived set to be nonempty; the constants (thickness number, covering
//! number) are extracted on demand through [`MwSystem::level_constant`].

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::approx::{covering_number, thickness_number, CoverWitness, SolveMode, ThicknessWitness};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::measure::{format_rational, GroupMean};
use crate::subset::GSet;

pub const MAX_DEPTH: usize = 6;
pub const MAX_MEMO_ENTRIES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    Mu,
    Thick,
    Generic,
}

enum Largeness {
    Mu(Arc<GroupMean>),
    Thick,
    Generic,
}

/// A graded system `ℓ = (ℓ_k)` in `Λ` relative to `Γ`.
pub struct MwSystem {
    group: Arc<GroupTable>,
    lambda: GSet,
    gamma: GSet,
    largeness: Largeness,
    depth_budget: usize,
    memo: RwLock<HashMap<(GSet, usize), bool>>,
}

impl std::fmt::Debug for MwSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MwSystem")
            .field("kind", &self.kind())
            .field("lambda", &self.lambda)
            .field("gamma", &self.gamma)
            .field("depth_budget", &self.depth_budget)
            .finish()
    }
}

/// `W` at level `k` with its derived set
/// `{g ∈ Γ : gW∩W ∈ ℓ_{k−1} or g⁻¹W∩W ∈ ℓ_{k−1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSet {
    pub w: GSet,
    pub k: usize,
    pub derived: GSet,
}

/// The constant carried by a level-`k` membership.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LevelConstant {
    /// Exact thickness number of the derived set in `Λ`.
    Thickness(ThicknessWitness),
    /// Translates of the derived set covering `Λ`.
    Cover(CoverWitness),
    /// μ-systems carry no constant.
    Positive,
}

impl MwSystem {
    fn new(group: Arc<GroupTable>, lambda: GSet, gamma: GSet, largeness: Largeness, depth_budget: usize) -> Result<Self> {
        group.check_set(&lambda)?;
        group.check_set(&gamma)?;
        if depth_budget > MAX_DEPTH {
            return Err(Error::DepthExceeded(format!("depth budget {depth_budget} exceeds the cap of {MAX_DEPTH}")));
        }
        Ok(MwSystem { group, lambda, gamma, largeness, depth_budget, memo: RwLock::new(HashMap::new()) })
    }

    /// `ℓ^μ_k = {W : μ(W) > 0}` at every level.
    pub fn mu_system(mean: Arc<GroupMean>, lambda: GSet, gamma: GSet, depth_budget: usize) -> Result<Self> {
        let group = Arc::clone(mean.carrier().group());
        Self::new(group, lambda, gamma, Largeness::Mu(mean), depth_budget)
    }

    pub fn thick_system(group: Arc<GroupTable>, lambda: GSet, gamma: GSet, depth_budget: usize) -> Result<Self> {
        Self::new(group, lambda, gamma, Largeness::Thick, depth_budget)
    }

    pub fn generic_system(group: Arc<GroupTable>, lambda: GSet, gamma: GSet, depth_budget: usize) -> Result<Self> {
        Self::new(group, lambda, gamma, Largeness::Generic, depth_budget)
    }

    /// The same kind of system relative to a new pair `(Λ, Γ)`.
    pub fn relative_to(&self, lambda: GSet, gamma: GSet) -> Result<Self> {
        let largeness = match &self.largeness {
            Largeness::Mu(m) => Largeness::Mu(Arc::clone(m)),
            Largeness::Thick => Largeness::Thick,
            Largeness::Generic => Largeness::Generic,
        };
        Self::new(Arc::clone(&self.group), lambda, gamma, largeness, self.depth_budget)
    }

    pub fn kind(&self) -> SystemKind {
        match self.largeness {
            Largeness::Mu(_) => SystemKind::Mu,
            Largeness::Thick => SystemKind::Thick,
            Largeness::Generic => SystemKind::Generic,
        }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn lambda(&self) -> &GSet {
        &self.lambda
    }

    pub fn gamma(&self) -> &GSet {
        &self.gamma
    }

    pub fn depth_budget(&self) -> usize {
        self.depth_budget
    }

    pub fn group_mean(&self) -> Option<&Arc<GroupMean>> {
        match &self.largeness {
            Largeness::Mu(m) => Some(m),
            _ => None,
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn member(&self, w: &GSet, k: usize) -> Result<bool> {
        self.group.check_set(w)?;
        if w.is_empty() {
            return Ok(false);
        }
        match &self.largeness {
            Largeness::Mu(m) => m.is_positive(w),
            Largeness::Thick | Largeness::Generic => {
                if k > self.depth_budget {
                    return Err(Error::DepthExceeded(format!("level {k} above depth budget {}", self.depth_budget)));
                }
                if k == 0 {
                    return Ok(true);
                }
                // e ∈ Γ keeps every nonempty W at every level: eW∩W = W
                if self.gamma.contains(self.group.identity()) {
                    return Ok(true);
                }
                self.recursive_member(w, k)
            }
        }
    }

    fn recursive_member(&self, w: &GSet, k: usize) -> Result<bool> {
        let key = (w.clone(), k);
        if let Some(&hit) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(hit);
        }
        let derived = self.derived_members(w, k)?;
        let value = self.lambda.is_empty() || !derived.is_empty();
        let mut memo = self.memo.write().expect("memo lock");
        if memo.len() >= MAX_MEMO_ENTRIES {
            return Err(Error::DepthExceeded(format!("memo exceeded {MAX_MEMO_ENTRIES} entries")));
        }
        memo.insert(key, value);
        Ok(value)
    }

    fn derived_members(&self, w: &GSet, k: usize) -> Result<GSet> {
        let g = &self.group;
        let ww = g.product_set(w, &g.inverse_set(w))?;
        let candidates = self.gamma.intersection(&ww.union(&g.inverse_set(&ww)));
        let mut out = g.empty_set();
        for x in &candidates {
            let forward = g.translate(x, w).intersection(w);
            if self.member(&forward, k - 1)? {
                out.insert(x);
                continue;
            }
            let backward = g.translate(g.inverse(x), w).intersection(w);
            if self.member(&backward, k - 1)? {
                out.insert(x);
            }
        }
        Ok(out)
    }

    pub fn derived_set(&self, w: &GSet, k: usize) -> Result<LevelSet> {
        if k == 0 {
            return Err(Error::InvalidParameters("derived sets start at level 1".into()));
        }
        self.group.check_set(w)?;
        let derived = if w.is_empty() { self.group.empty_set() } else { self.derived_members(w, k)? };
        Ok(LevelSet { w: w.clone(), k, derived })
    }

    /// `{g ∈ Γ : gW∩W ∈ ℓ_level or g⁻¹W∩W ∈ ℓ_level}`.
    pub fn derived_below(&self, w: &GSet, level: usize) -> Result<GSet> {
        self.group.check_set(w)?;
        if w.is_empty() {
            return Ok(self.group.empty_set());
        }
        self.derived_members(w, level + 1)
    }

    /// The constant behind a membership: thickness number of the derived set
    /// in `Λ` (thick), a cover of `Λ` by its translates (generic).
    pub fn level_constant(&self, level: &LevelSet) -> Result<Option<LevelConstant>> {
        Ok(match &self.largeness {
            Largeness::Mu(_) => Some(LevelConstant::Positive),
            Largeness::Thick => Some(LevelConstant::Thickness(thickness_number(
                &self.group,
                &level.derived,
                &self.lambda,
                SolveMode::Exact,
            )?)),
            Largeness::Generic => {
                if level.derived.is_empty() && !self.lambda.is_empty() {
                    None
                } else {
                    Some(LevelConstant::Cover(covering_number(&self.group, &level.derived, &self.lambda, SolveMode::Exact)?))
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThicknessBound {
    pub overlap_set: GSet,
    pub bound: String,
    pub thickness: ThicknessWitness,
    pub holds: bool,
}

/// Both thickness bounds for `S_μ` with their exact constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuThicknessReport {
    pub mu_c: String,
    pub mu_w: String,
    /// `{g ∈ Λ⁻¹Λ : μ(gW∩W) > 0}` against `⌊μ(C)/μ(W)⌋`.
    pub floor_bound: ThicknessBound,
    /// `{g ∈ Λ⁻¹Λ : μ(gW∩W) ≥ μ(W)²/(2μ(C))}` against `⌈2μ(C)/μ(W)⌉`.
    pub threshold: String,
    pub ceil_bound: ThicknessBound,
    /// The same two bounds with `μ(B)` in place of `μ(C)`, when `B` is given.
    pub with_b: Option<(String, bool, String, bool)>,
    pub exact: bool,
}

impl MuThicknessReport {
    pub fn passed(&self) -> bool {
        self.floor_bound.holds && self.ceil_bound.holds
    }
}

fn floor_int(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn ceil_int(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

pub fn mu_thickness_bound_check(
    lambda: &GSet,
    a: &GSet,
    c: &GSet,
    mu: &GroupMean,
    w: &GSet,
    b: Option<&GSet>,
) -> Result<MuThicknessReport> {
    let g = mu.carrier().group();
    for s in [lambda, a, c, w] {
        g.check_set(s)?;
    }
    if !g.product_set(lambda, a)?.is_subset(c) {
        return Err(Error::HypothesisViolated("ΛA is not contained in C".into()));
    }
    let mu_a = mu.mu(a)?.0;
    let mu_c = mu.mu(c)?.0;
    let mu_w = mu.mu(w)?.0;
    if mu_a <= BigRational::from_integer(0.into()) {
        return Err(Error::HypothesisViolated("μ(A) must be positive".into()));
    }
    if mu_a > mu_c {
        return Err(Error::HypothesisViolated("μ(A) exceeds μ(C)".into()));
    }
    if !w.is_subset(a) {
        return Err(Error::HypothesisViolated("W is not contained in A".into()));
    }
    if mu_w <= BigRational::from_integer(0.into()) {
        return Err(Error::HypothesisViolated("μ(W) must be positive".into()));
    }

    let quotients = g.quotient_set(lambda, lambda)?;
    let two = BigRational::from_integer(2.into());
    let threshold = &mu_w * &mu_w / (&two * &mu_c);
    let mut positive = g.empty_set();
    let mut heavy = g.empty_set();
    for x in &quotients {
        let overlap = mu.mu(&g.translate(x, w).intersection(w))?.0;
        if overlap > BigRational::from_integer(0.into()) {
            positive.insert(x);
        }
        if overlap >= threshold {
            heavy.insert(x);
        }
    }
    let t_pos = thickness_number(g, &positive, lambda, SolveMode::Exact)?;
    let t_heavy = thickness_number(g, &heavy, lambda, SolveMode::Exact)?;
    let floor_b = floor_int(&(&mu_c / &mu_w));
    let ceil_b = ceil_int(&(&two * &mu_c / &mu_w));
    let floor_holds = BigInt::from(t_pos.k) <= floor_b;
    let ceil_holds = BigInt::from(t_heavy.k) <= ceil_b;
    let with_b = match b {
        Some(b) => {
            g.check_set(b)?;
            let mu_b = mu.mu(b)?.0;
            let fb = floor_int(&(&mu_b / &mu_w));
            let cb = ceil_int(&(&two * &mu_b / &mu_w));
            Some((fb.to_string(), BigInt::from(t_pos.k) <= fb, cb.to_string(), BigInt::from(t_heavy.k) <= cb))
        }
        None => None,
    };
    let exact = t_pos.exact && t_heavy.exact;
    Ok(MuThicknessReport {
        mu_c: format_rational(&mu_c),
        mu_w: format_rational(&mu_w),
        floor_bound: ThicknessBound { overlap_set: positive, bound: floor_b.to_string(), thickness: t_pos, holds: floor_holds },
        threshold: format_rational(&threshold),
        ceil_bound: ThicknessBound { overlap_set: heavy, bound: ceil_b.to_string(), thickness: t_heavy, holds: ceil_holds },
        with_b,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::measure::GroupMean;

    fn interval(g: &GroupTable, r: i64) -> GSet {
        let n = g.order() as i64;
        GSet::from_elements(g.order(), (-r..=r).map(|x| x.rem_euclid(n) as usize))
    }

    #[test]
    fn empty_set_is_never_large() {
        let g = Arc::new(cyclic(10).unwrap());
        let lam = interval(&g, 2);
        let thick = MwSystem::thick_system(Arc::clone(&g), lam.clone(), lam.clone(), 3).unwrap();
        let mu = MwSystem::mu_system(Arc::new(GroupMean::counting_on_group(Arc::clone(&g))), lam.clone(), lam, 3).unwrap();
        for k in 0..=3 {
            assert!(!thick.member(&g.empty_set(), k).unwrap());
            assert!(!mu.member(&g.empty_set(), k).unwrap());
            assert!(mu.member(&g.set_of([7]).unwrap(), k).unwrap());
        }
    }

    #[test]
    fn thick_interval_example() {
        let g = Arc::new(cyclic(100).unwrap());
        let lam = interval(&g, 10);
        let sys = MwSystem::thick_system(Arc::clone(&g), lam.clone(), lam.clone(), 3).unwrap();
        let w = interval(&g, 5);
        assert!(sys.member(&w, 1).unwrap());
        let level = sys.derived_set(&w, 1).unwrap();
        assert_eq!(level.derived, lam);
        // {-10, 1} is free: 11 lies outside Λ
        match sys.level_constant(&level).unwrap() {
            Some(LevelConstant::Thickness(t)) => assert_eq!((t.k, t.exact), (2, true)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singleton_derived_set() {
        let g = Arc::new(cyclic(12).unwrap());
        let gamma = g.full_set();
        let sys = MwSystem::thick_system(Arc::clone(&g), gamma.clone(), gamma, 2).unwrap();
        let level = sys.derived_set(&g.set_of([5]).unwrap(), 1).unwrap();
        assert_eq!(level.derived, g.identity_set());
        let full = sys.derived_set(&g.full_set(), 1).unwrap();
        assert_eq!(full.derived, g.full_set());
    }

    #[test]
    fn recursion_without_identity_in_gamma() {
        // Γ = {±1} in Z/12: level 1 needs some g with gW∩W nonempty
        let g = Arc::new(cyclic(12).unwrap());
        let gamma = g.set_of([1, 11]).unwrap();
        let sys = MwSystem::generic_system(Arc::clone(&g), g.full_set(), gamma, 4).unwrap();
        let single = g.set_of([3]).unwrap();
        assert!(sys.member(&single, 0).unwrap());
        assert!(!sys.member(&single, 1).unwrap());
        let pair = g.set_of([3, 4]).unwrap();
        assert!(sys.member(&pair, 1).unwrap());
        assert!(!sys.member(&pair, 2).unwrap());
        let run = g.set_of([3, 4, 5, 6]).unwrap();
        assert!(sys.member(&run, 2).unwrap());
        assert!(sys.memo_len() > 0);
        assert!(matches!(sys.member(&run, 5), Err(Error::DepthExceeded(_))));
    }

    #[test]
    fn mu_thickness_examples() {
        let g = Arc::new(cyclic(100).unwrap());
        let mu = GroupMean::counting_on_group(Arc::clone(&g));
        let lam = interval(&g, 10);
        let c = interval(&g, 20);
        let w = interval(&g, 2);
        let r = mu_thickness_bound_check(&lam, &lam, &c, &mu, &w, None).unwrap();
        assert_eq!(r.floor_bound.bound, "8");
        assert_eq!(r.floor_bound.overlap_set, interval(&g, 4));
        assert_eq!(r.floor_bound.thickness.k, 5);
        assert!(r.passed() && r.exact);

        let h = g.set_of((0..100).step_by(25)).unwrap();
        let r = mu_thickness_bound_check(&h, &h, &h, &mu, &h, Some(&h)).unwrap();
        assert_eq!(r.floor_bound.bound, "1");
        assert_eq!(r.floor_bound.thickness.k, 1);
        assert!(r.passed());
        assert_eq!(r.with_b.as_ref().map(|b| b.1), Some(true));
    }

    #[test]
    fn mu_thickness_hypotheses() {
        let g = Arc::new(cyclic(20).unwrap());
        let mu = GroupMean::counting_on_group(Arc::clone(&g));
        let lam = interval(&g, 2);
        let err = mu_thickness_bound_check(&lam, &lam, &lam, &mu, &lam, None).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated(_)));
        let c = interval(&g, 4);
        let err = mu_thickness_bound_check(&lam, &lam, &c, &mu, &interval(&g, 3), None).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated(_)));
    }
}
