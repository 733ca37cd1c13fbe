//! The basic descent, the recursive chain and the finite quotient model.
//!
//! All comparisons against `λ = √(1+ε)` are done on squares of exact
//! masses, so no floating point enters a certificate.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::action::ActionTable;
use crate::approx::{covering_number, s_operator, SolveMode};
use crate::certificate::{
    ChainCertificate, ChainStep, CoverRecord, DescentCertificate, FValue, QuotientModel, SearchStats, Termination,
    SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::measure::{format_rational, SpaceMean};
use crate::subset::{ESet, GSet};
use crate::systems::MwSystem;

pub const DEFAULT_MAX_DEPTH: usize = 3;
pub const DEFAULT_MAX_CANDIDATES: usize = 512;
pub const DEFAULT_CHAIN_DEPTH: usize = 20;
const MAX_REFINEMENTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentParams {
    pub n: usize,
    pub epsilon: BigRational,
    pub lambda_sq: BigRational,
    /// Largest number of translates intersected in the search family.
    pub max_depth: usize,
    /// Cap on new family members per breadth-first level.
    pub max_candidates: usize,
    /// Fail instead of emitting a non-exact cover witness.
    pub exact_only: bool,
}

impl DescentParams {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_budget(n, DEFAULT_MAX_DEPTH, DEFAULT_MAX_CANDIDATES)
    }

    pub fn with_budget(n: usize, max_depth: usize, max_candidates: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("n must be positive".into()));
        }
        if max_candidates == 0 {
            return Err(Error::InvalidParameters("candidate budget must be positive".into()));
        }
        let epsilon = BigRational::new(BigInt::one(), BigInt::from(n));
        let lambda_sq = BigRational::one() + &epsilon;
        Ok(DescentParams { n, epsilon, lambda_sq, max_depth, max_candidates, exact_only: false })
    }

    pub fn exact_only(mut self, yes: bool) -> Self {
        self.exact_only = yes;
        self
    }

    fn with_n(&self, n: usize) -> Result<Self> {
        Ok(Self::with_budget(n, self.max_depth, self.max_candidates)?.exact_only(self.exact_only))
    }

    /// `x < λ·y` for nonnegative `x, y`.
    fn below_lambda(&self, x: &BigUint, y: &BigUint) -> bool {
        let lhs = BigInt::from(x * x) * self.lambda_sq.denom();
        let rhs = BigInt::from(y * y) * self.lambda_sq.numer();
        lhs < rhs
    }

    /// Largest `k` with `(top/bottom)² ≥ λ^{2k}`.
    pub fn k_bound(&self, top: &BigUint, bottom: &BigUint) -> usize {
        let top2 = BigInt::from(top * top);
        let bottom2 = BigInt::from(bottom * bottom);
        let (p, q) = (self.lambda_sq.numer(), self.lambda_sq.denom());
        let mut k = 0;
        let (mut pk, mut qk) = (p.clone(), q.clone());
        while &top2 * &qk >= &bottom2 * &pk {
            k += 1;
            pk *= p;
            qk *= q;
        }
        k
    }
}

struct Member {
    set: GSet,
    translators: Vec<usize>,
    mass: BigUint,
}

impl Member {
    fn key(&self) -> (usize, &GSet) {
        (self.translators.len(), &self.set)
    }
}

struct Family<'a> {
    group: &'a GroupTable,
    action: &'a ActionTable,
    b: &'a ESet,
    m: &'a SpaceMean,
    members: Vec<Member>,
    seen: HashSet<GSet>,
}

impl<'a> Family<'a> {
    fn mass(&self, set: &GSet) -> Result<BigUint> {
        let image = self.action.act_set(set, self.b)?;
        self.m.mu(&image)?;
        Ok(self.m.mass(&image))
    }

    /// Breadth-first intersections `W ∩ gA`, `g ∈ Γ` ascending.
    fn build(&mut self, a: &GSet, gamma: &GSet, params: &DescentParams) -> Result<()> {
        let e = self.group.identity();
        let root = Member { set: a.clone(), translators: vec![e], mass: self.mass(a)? };
        self.seen.insert(a.clone());
        self.members.push(root);
        let shifted: Vec<(usize, GSet)> =
            gamma.iter().filter(|&g| g != e).map(|g| (g, self.group.translate(g, a))).collect();
        let mut frontier = vec![0];
        for _ in 0..params.max_depth {
            let mut fresh: Vec<(GSet, Vec<usize>)> = Vec::new();
            'scan: for &i in &frontier {
                for (g, ga) in &shifted {
                    let set = self.members[i].set.intersection(ga);
                    if set.is_empty() || self.seen.contains(&set) {
                        continue;
                    }
                    self.seen.insert(set.clone());
                    fresh.push((set, merge(&self.members[i].translators, &[*g])));
                    if fresh.len() >= params.max_candidates {
                        break 'scan;
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            let masses: Vec<BigUint> = fresh.par_iter().map(|(s, _)| self.mass(s)).collect::<Result<_>>()?;
            let start = self.members.len();
            for ((set, translators), mass) in fresh.into_iter().zip(masses) {
                self.members.push(Member { set, translators, mass });
            }
            frontier = (start..self.members.len()).collect();
        }
        Ok(())
    }

    fn insert(&mut self, set: GSet, translators: Vec<usize>, mass: BigUint) -> bool {
        if !self.seen.insert(set.clone()) {
            return false;
        }
        self.members.push(Member { set, translators, mass });
        true
    }

    /// Index of the member of `ℓ_level` with least mass, ties by
    /// (fewest translators, least set).
    fn level_min(&self, sys: &MwSystem, level: usize) -> Result<Option<usize>> {
        let large = self.large_at(sys, level)?;
        Ok((0..self.members.len())
            .filter(|&i| large[i])
            .min_by(|&i, &j| {
                let (x, y) = (&self.members[i], &self.members[j]);
                x.mass.cmp(&y.mass).then_with(|| x.key().cmp(&y.key()))
            }))
    }

    fn large_at(&self, sys: &MwSystem, level: usize) -> Result<Vec<bool>> {
        self.members.par_iter().map(|mbr| sys.member(&mbr.set, level)).collect()
    }
}

fn merge(xs: &[usize], ys: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = xs.iter().chain(ys).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn rational(m: &SpaceMean, mass: &BigUint) -> String {
    format_rational(&m.value_of_mass(mass).0)
}

struct Selection {
    k: usize,
    f: Vec<usize>,
    w: usize,
    d: GSet,
}

/// Runs the descent: finds `k`, `W ∈ ℓ_k` and
/// `D = {g ∈ Γ : gW∩W ∈ ℓ_{k−1} or g⁻¹W∩W ∈ ℓ_{k−1}} ∪ {e}` with
/// `Dⁿ ⊆ S_Γ(AB)`.
///
/// The search starts one level early: `f(−1) = m(B)` and `ℓ_{−1} = ℓ_0`, so
/// a `k = 0` step is allowed and `k ≤ ⌊log_λ(m(AB)/m(B))⌋` always holds.
pub fn basic_descent(
    lambda: &GSet,
    gamma: &GSet,
    a: &GSet,
    b: &ESet,
    m: &SpaceMean,
    sys: &MwSystem,
    params: &DescentParams,
) -> Result<DescentCertificate> {
    let group = Arc::clone(sys.group());
    let action = Arc::clone(m.action());
    if action.group().order() != group.order() {
        return Err(Error::CarrierMismatch { expected: group.order(), found: action.group().order() });
    }
    for s in [lambda, gamma, a] {
        group.check_set(s)?;
    }
    action.check_set(b)?;
    let e = group.identity();
    if !gamma.contains(e) || !group.is_symmetric(gamma) {
        return Err(Error::HypothesisViolated("Γ must be symmetric and contain the identity".into()));
    }
    if lambda.is_empty() {
        return Err(Error::HypothesisViolated("Λ is empty".into()));
    }
    if !sys.member(a, 0)? {
        return Err(Error::HypothesisViolated("A is not in ℓ_0".into()));
    }

    let mut family = Family { group: &group, action: &action, b, m, members: Vec::new(), seen: HashSet::new() };
    m.mu(b)?;
    let mass_b = m.mass(b);
    if mass_b.is_zero() {
        return Err(Error::HypothesisViolated("m(B) = 0".into()));
    }
    family.build(a, gamma, params)?;
    let mass_ab = family.members[0].mass.clone();
    let k_bound = params.k_bound(&mass_ab, &mass_b);

    let mut refinements = 0;
    let selection = loop {
        let sel = select(&family, sys, params, &mass_b, k_bound)?;
        let level = sel.k.saturating_sub(1);
        let floor = if sel.k == 0 { mass_b.clone() } else { family.members[sel.f[sel.k - 1]].mass.clone() };
        let w = &family.members[sel.w];
        let mut lower = None;
        for g in sel.d.iter().filter(|&g| g != e) {
            let forward = group.translate(g, &w.set).intersection(&w.set);
            let (v, shift) = if sys.member(&forward, level)? {
                (forward, g)
            } else {
                let gi = group.inverse(g);
                (group.translate(gi, &w.set).intersection(&w.set), gi)
            };
            let mass = family.mass(&v)?;
            if mass < floor {
                let moved: Vec<usize> = w.translators.iter().map(|&t| group.mul(shift, t)).collect();
                lower = Some((v, merge(&w.translators, &moved), mass));
                break;
            }
        }
        match lower {
            None => break sel,
            Some((v, translators, mass)) => {
                if !family.insert(v, translators, mass) {
                    return Err(Error::Internal("refinement produced a known family member".into()));
                }
                refinements += 1;
                if refinements > MAX_REFINEMENTS {
                    return Err(Error::BudgetExhausted(format!("more than {MAX_REFINEMENTS} refinements")));
                }
            }
        }
    };

    for j in 0..=selection.k {
        if !sys.member(a, j)? {
            return Err(Error::HypothesisViolated(format!("A is not in ℓ_{j}")));
        }
    }
    let w = &family.members[selection.w];
    let cover = covering_number(&group, &selection.d, lambda, SolveMode::Exact)?;
    if params.exact_only && !cover.exact {
        return Err(Error::ExactUnavailable(lambda.count()));
    }
    let s_set = s_operator(&group, gamma, a, b, m)?;
    let dn = group.power_set(&selection.d, params.n)?;
    let power_check = dn.is_subset(&s_set);
    let wb = action.act_set(&w.set, b)?;
    let overlap_check = dn.iter().all(|g| m.positive_unchecked(&action.act_element(g, &wb).intersection(&wb)));

    let f_values = selection
        .f
        .iter()
        .enumerate()
        .map(|(level, &i)| {
            let mbr = &family.members[i];
            FValue {
                level,
                value: rational(m, &mbr.mass),
                translators: mbr.translators.clone(),
                witness: mbr.set.to_vec(),
            }
        })
        .collect();
    Ok(DescentCertificate {
        schema_version: SCHEMA_VERSION,
        kind: "descent".into(),
        system: sys.kind(),
        n: params.n,
        epsilon: format_rational(&params.epsilon),
        lambda_sq: format_rational(&params.lambda_sq),
        lambda: lambda.to_vec(),
        gamma: gamma.to_vec(),
        a: a.to_vec(),
        b: b.to_vec(),
        m_b: rational(m, &mass_b),
        m_ab: rational(m, &mass_ab),
        k: selection.k,
        k_bound,
        f_values,
        w: w.set.to_vec(),
        w_translators: w.translators.clone(),
        m_wb: rational(m, &w.mass),
        d: selection.d.to_vec(),
        cover_witness: CoverRecord::from(&cover),
        power_check,
        overlap_check,
        s_set: s_set.to_vec(),
        search: SearchStats {
            max_depth: params.max_depth,
            max_candidates: params.max_candidates,
        },
    })
}

fn select(family: &Family<'_>, sys: &MwSystem, params: &DescentParams, mass_b: &BigUint, k_bound: usize) -> Result<Selection> {
    let mut f = Vec::new();
    let mut prev = mass_b.clone();
    let mut found = None;
    for k in 0..=k_bound {
        let i = family
            .level_min(sys, k)?
            .ok_or_else(|| Error::HypothesisViolated(format!("no intersection of translates of A lies in ℓ_{k}")))?;
        f.push(i);
        let fk = &family.members[i].mass;
        if params.below_lambda(fk, &prev) {
            found = Some(k);
            break;
        }
        prev = fk.clone();
    }
    let k = found.ok_or_else(|| Error::Internal(format!("no level below the bound {k_bound} nearly stops decreasing")))?;
    let fk = &family.members[f[k]].mass;
    let large = family.large_at(sys, k)?;
    let w = (0..family.members.len())
        .filter(|&i| large[i] && params.below_lambda(&family.members[i].mass, fk))
        .min_by(|&i, &j| family.members[i].key().cmp(&family.members[j].key()))
        .expect("the minimizer of f(k) qualifies");
    let mut d = sys.derived_below(&family.members[w].set, k.saturating_sub(1))?;
    d.insert(family.group.identity());
    Ok(Selection { k, f, w, d })
}

/// Least `k ≥ 1` with `S ⊆ D^k`, or `None` past `cap` or once the powers stop
/// growing.
pub fn least_exponent(group: &GroupTable, d: &GSet, s: &GSet, cap: usize) -> Result<Option<(usize, GSet)>> {
    let mut power = d.clone();
    for k in 1..=cap {
        if s.is_subset(&power) {
            return Ok(Some((k, power)));
        }
        let next = group.product_set(&power, d)?;
        if next == power {
            return Ok(None);
        }
        power = next;
    }
    Ok(None)
}

pub fn exponent_cap(n: usize, step: usize) -> usize {
    2 * n * (step + 2)
}

fn is_closed(group: &GroupTable, x: &GSet) -> Result<bool> {
    Ok(group.product_set(x, x)? == *x)
}

/// Builds `D_0 = Λ, k_0 = n` and iterates the descent on `D_i` relative to
/// `⟨D_i⟩` with target power `2k_i`, until `D_{i+1}^{k_{i+1}} = D_i^{k_i}`
/// and that set is closed under multiplication.
#[allow(clippy::too_many_arguments)]
pub fn recursive_chain(
    lambda: &GSet,
    a: &GSet,
    b: &ESet,
    m: &SpaceMean,
    sys: &MwSystem,
    n: usize,
    depth_budget: usize,
    search: &DescentParams,
) -> Result<ChainCertificate> {
    let group = Arc::clone(sys.group());
    group.check_set(lambda)?;
    group.check_set(a)?;
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    if !lambda.contains(group.identity()) || !group.is_symmetric(lambda) {
        return Err(Error::HypothesisViolated("Λ must be symmetric and contain the identity".into()));
    }
    let s0 = s_operator(&group, lambda, a, b, m)?;
    let x0 = group.power_set(lambda, n)?;
    if !s0.is_subset(&x0) {
        return Err(Error::HypothesisViolated("S(AB) is not contained in Λⁿ".into()));
    }
    let mut steps = vec![ChainStep {
        index: 0,
        d: lambda.to_vec(),
        k: n,
        exponent_cap: exponent_cap(n, 0),
        s_set: s0.to_vec(),
        power: x0.to_vec(),
    }];
    let mut descents = Vec::new();
    let mut d_cur = lambda.clone();
    let mut k_cur = n;
    let mut x_cur = x0;
    let mut stabilized_at = None;
    for i in 0..depth_budget {
        let gamma = group.generated_subgroup(&d_cur)?;
        let sys_i = sys.relative_to(d_cur.clone(), gamma.clone())?;
        let cert = basic_descent(&d_cur, &gamma, a, b, m, &sys_i, &search.with_n(2 * k_cur)?)?;
        if !cert.power_check || !cert.overlap_check {
            return Err(Error::Internal(format!("descent at chain step {i} failed its power check")));
        }
        let d_next = group.set_of(cert.d.iter().copied())?;
        let s_next = s_operator(&group, &d_next, a, b, m)?;
        let cap = exponent_cap(n, i + 1);
        let (k_next, x_next) =
            least_exponent(&group, &d_next, &s_next, cap)?.ok_or(Error::ExponentCapExceeded { step: i + 1, cap })?;
        if !x_next.is_subset(&x_cur) {
            return Err(Error::HypothesisViolated(format!(
                "D_{}^{} is not contained in D_{}^{} (2k_{} = {})",
                i + 1,
                k_next,
                i,
                k_cur,
                i,
                2 * k_cur
            )));
        }
        steps.push(ChainStep {
            index: i + 1,
            d: d_next.to_vec(),
            k: k_next,
            exponent_cap: cap,
            s_set: s_next.to_vec(),
            power: x_next.to_vec(),
        });
        descents.push(cert);
        let stable = x_next == x_cur && is_closed(&group, &x_cur)?;
        d_cur = d_next;
        k_cur = k_next;
        x_cur = x_next;
        if stable {
            stabilized_at = Some(i);
            break;
        }
    }
    let terminal = stabilized_at.map(|i| steps[i].power.clone());
    Ok(ChainCertificate {
        schema_version: SCHEMA_VERSION,
        kind: "chain".into(),
        system: sys.kind(),
        n,
        depth_budget,
        lambda: lambda.to_vec(),
        a: a.to_vec(),
        b: b.to_vec(),
        steps,
        descents,
        termination: if stabilized_at.is_some() { Termination::Stabilized } else { Termination::BudgetExhausted },
        stabilized_at,
        terminal,
    })
}

/// Quotient of `H = ⟨Λ⟩` by the normal core of the terminal subgroup `K`;
/// `U = K / core` is an identity neighbourhood with `hom⁻¹(U) = K ⊆ Λⁿ`.
pub fn extract_model(group: &GroupTable, chain: &ChainCertificate, lambda: &GSet, n: usize) -> Result<QuotientModel> {
    if chain.termination != Termination::Stabilized {
        return Err(Error::NotStabilized);
    }
    let terminal = chain.terminal.as_ref().ok_or(Error::NotStabilized)?;
    let k = group.set_of(terminal.iter().copied())?;
    if !group.is_subgroup(&k) {
        return Err(Error::NotSubgroup(format!("terminal set of size {} is not closed", k.count())));
    }
    let lambda_n = group.power_set(lambda, n)?;
    if !k.is_subset(&lambda_n) {
        return Err(Error::NotSubgroup("terminal subgroup is not contained in Λⁿ".into()));
    }
    let h = group.generated_subgroup(lambda)?;
    if !k.is_subset(&h) {
        return Err(Error::NotSubgroup("terminal subgroup is not contained in ⟨Λ⟩".into()));
    }
    let kernel = group.normal_core(&k, &h);

    let mut coset_of = vec![usize::MAX; group.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in &h {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = kernel.iter().map(|y| group.mul(x, y)).collect();
        coset.sort_unstable();
        for &y in &coset {
            coset_of[y] = cosets.len();
        }
        cosets.push(coset);
    }
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let table: Vec<Vec<usize>> =
        reps.iter().map(|&x| reps.iter().map(|&y| coset_of[group.mul(x, y)]).collect()).collect();
    for x in &h {
        for y in &h {
            if coset_of[group.mul(x, y)] != table[coset_of[x]][coset_of[y]] {
                return Err(Error::Internal("quotient map is not a homomorphism".into()));
            }
        }
    }
    let mut u: Vec<usize> = k.iter().map(|x| coset_of[x]).collect();
    u.sort_unstable();
    u.dedup();
    let preimage = GSet::from_elements(group.order(), h.iter().filter(|&x| u.binary_search(&coset_of[x]).is_ok()));
    if preimage != k {
        return Err(Error::Internal("preimage of U differs from K".into()));
    }
    let mut lambda_image: Vec<usize> = lambda.iter().map(|x| coset_of[x]).collect();
    lambda_image.sort_unstable();
    lambda_image.dedup();
    Ok(QuotientModel {
        schema_version: SCHEMA_VERSION,
        kind: "model".into(),
        n,
        lambda: lambda.to_vec(),
        h: h.to_vec(),
        k: k.to_vec(),
        kernel: kernel.to_vec(),
        index: cosets.len(),
        k_index: h.count() / k.count(),
        hom: h.iter().map(|x| coset_of[x]).collect(),
        identity_coset: coset_of[group.identity()],
        cosets,
        table,
        u,
        lambda_image,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    fn interval(g: &GroupTable, r: i64) -> GSet {
        let n = g.order() as i64;
        GSet::from_elements(g.order(), (-r..=r).map(|x| x.rem_euclid(n) as usize))
    }

    fn regular(n: usize) -> (Arc<GroupTable>, Arc<ActionTable>, SpaceMean) {
        let g = Arc::new(cyclic(n).unwrap());
        let act = Arc::new(ActionTable::regular(Arc::clone(&g)));
        let m = SpaceMean::counting_on_space(Arc::clone(&act));
        (g, act, m)
    }

    #[test]
    fn k_bound_matches_logarithm() {
        let p = DescentParams::new(2).unwrap();
        // (21)^2 = 441 >= 1.5^k for k <= 15
        assert_eq!(p.k_bound(&BigUint::from(21u32), &BigUint::from(1u32)), 15);
        assert_eq!(p.k_bound(&BigUint::from(1u32), &BigUint::from(1u32)), 0);
        assert!(p.below_lambda(&BigUint::from(6u32), &BigUint::from(5u32)));
        assert!(!p.below_lambda(&BigUint::from(7u32), &BigUint::from(5u32)));
    }

    #[test]
    fn subgroup_fixed_point() {
        let (g, act, m) = regular(12);
        let h = g.set_of([0, 4, 8]).unwrap();
        let b = act.set_of([0]).unwrap();
        let sys = MwSystem::thick_system(Arc::clone(&g), h.clone(), h.clone(), 4).unwrap();
        let cert = basic_descent(&h, &h, &h, &b, &m, &sys, &DescentParams::new(3).unwrap()).unwrap();
        assert_eq!(cert.d, h.to_vec());
        assert!(cert.power_check && cert.overlap_check);
        assert!(cert.k <= cert.k_bound);

        let chain = recursive_chain(&h, &h, &b, &m, &sys, 3, 5, &DescentParams::new(3).unwrap()).unwrap();
        assert_eq!(chain.termination, Termination::Stabilized);
        assert_eq!(chain.stabilized_at, Some(0));
        assert_eq!(chain.terminal, Some(h.to_vec()));
        let model = extract_model(&g, &chain, &h, 3).unwrap();
        assert_eq!((model.index, model.k_index), (1, 1));
    }

    #[test]
    fn interval_descent() {
        let (g, act, m) = regular(100);
        let lam = interval(&g, 10);
        let b = act.set_of([0]).unwrap();
        let sys = MwSystem::thick_system(Arc::clone(&g), lam.clone(), lam.clone(), 4).unwrap();
        let cert = basic_descent(&lam, &lam, &lam, &b, &m, &sys, &DescentParams::new(2).unwrap()).unwrap();
        assert_eq!(cert.s_set, interval(&g, 20).to_vec());
        assert_eq!(cert.k_bound, 15);
        assert!(cert.k <= cert.k_bound);
        assert!(cert.power_check && cert.overlap_check);
        assert!(cert.cover_witness.exact);
    }

    #[test]
    fn chain_on_cyclic_64() {
        let (g, act, m) = regular(64);
        let lam = interval(&g, 16);
        let b = act.set_of([0]).unwrap();
        let sys = MwSystem::thick_system(Arc::clone(&g), lam.clone(), lam.clone(), 4).unwrap();
        let chain = recursive_chain(&lam, &lam, &b, &m, &sys, 2, 20, &DescentParams::new(2).unwrap()).unwrap();
        assert_eq!(chain.termination, Termination::Stabilized);
        let model = extract_model(&g, &chain, &lam, 2).unwrap();
        let k = g.set_of(model.k.iter().copied()).unwrap();
        assert!(g.is_subgroup(&k));
        assert!(k.is_subset(&g.power_set(&lam, 2).unwrap()));
    }

    #[test]
    fn zero_depth_budget() {
        let (g, act, m) = regular(20);
        let lam = interval(&g, 3);
        let b = act.set_of([0]).unwrap();
        let sys = MwSystem::thick_system(Arc::clone(&g), lam.clone(), lam.clone(), 4).unwrap();
        let chain = recursive_chain(&lam, &lam, &b, &m, &sys, 2, 0, &DescentParams::new(2).unwrap()).unwrap();
        assert_eq!(chain.steps.len(), 1);
        assert_eq!(chain.termination, Termination::BudgetExhausted);
        assert_eq!(extract_model(&g, &chain, &lam, 2).unwrap_err(), Error::NotStabilized);
    }

    #[test]
    fn zero_mass_base_is_rejected() {
        let g = Arc::new(cyclic(6).unwrap());
        let act = Arc::new(ActionTable::regular(Arc::clone(&g)));
        let w = |x: i64| BigRational::from_integer(x.into());
        let m = SpaceMean::weighted_on_space(Arc::clone(&act), vec![w(0); 6]).unwrap();
        let full = g.full_set();
        let sys = MwSystem::thick_system(Arc::clone(&g), full.clone(), full.clone(), 2).unwrap();
        let err = basic_descent(&full, &full, &full, &act.set_of([0]).unwrap(), &m, &sys, &DescentParams::new(2).unwrap());
        assert!(matches!(err, Err(Error::HypothesisViolated(_))));
    }
}
