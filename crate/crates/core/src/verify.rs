//! Independent certificate checker.
//!
//! Everything here is recomputed from the Cayley table, the action table and
//! the raw weights. None of the solvers, the measure layer or the descent
//! code is used, so a bug there cannot hide itself.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::action::ActionTable;
use crate::certificate::{
    Certificate, ChainCertificate, DescentCertificate, QuotientModel, Termination, SCHEMA_VERSION,
};
use crate::group::GroupTable;
use crate::measure::parse_rational;
use crate::subset::{ESet, GSet};
use crate::systems::SystemKind;

const MINIMALITY_NODE_LIMIT: u64 = 2_000_000;
const EXACT_GUARANTEE: usize = 64;

/// Raw scenario data the checker works from.
#[derive(Debug, Clone)]
pub struct VerifyContext {
    pub group: Arc<GroupTable>,
    pub action: Arc<ActionTable>,
    pub space_weights: Vec<BigRational>,
    /// Weights of the group mean; required for μ-systems.
    pub group_weights: Option<Vec<BigRational>>,
    pub system: SystemKind,
    pub lambda: GSet,
    pub gamma: GSet,
    pub a: GSet,
    pub b: ESet,
    pub n: usize,
    pub max_depth: usize,
    pub max_candidates: usize,
    pub chain_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: String,
    pub clauses: Vec<Clause>,
}

impl Verdict {
    fn new(kind: &str) -> Self {
        Verdict { kind: kind.into(), clauses: Vec::new() }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.clauses.push(Clause { name: name.into(), passed, detail: if passed { String::new() } else { detail.into() } });
        passed
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| !c.passed).collect()
    }

    fn absorb(&mut self, prefix: &str, other: Verdict) {
        for c in other.clauses {
            self.clauses.push(Clause { name: format!("{prefix}.{}", c.name), ..c });
        }
    }
}

/// Integer weights over a common denominator.
struct Weights {
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl Weights {
    fn new(raw: &[BigRational]) -> Self {
        let denom = raw.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let numer = raw.iter().map(|w| w.numer() * (&denom / w.denom())).collect();
        Weights { numer, denom }
    }

    fn mass(&self, points: impl IntoIterator<Item = usize>) -> BigInt {
        points.into_iter().map(|p| &self.numer[p]).sum()
    }

    fn positive(&self, points: impl IntoIterator<Item = usize>) -> bool {
        points.into_iter().any(|p| self.numer[p].is_positive())
    }

    fn as_rational(&self, mass: &BigInt) -> BigRational {
        BigRational::new(mass.clone(), self.denom.clone())
    }
}

struct Checker<'a> {
    ctx: &'a VerifyContext,
    g: &'a GroupTable,
    m: Weights,
    mu: Option<Weights>,
}

fn members(x: &[bool]) -> impl Iterator<Item = usize> + '_ {
    x.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
}

fn to_bits(len: usize, xs: &[usize]) -> Option<Vec<bool>> {
    let mut out = vec![false; len];
    for &x in xs {
        if x >= len {
            return None;
        }
        out[x] = true;
    }
    Some(out)
}

fn sorted_unique(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

fn subset(x: &[bool], y: &[bool]) -> bool {
    x.iter().zip(y).all(|(&a, &b)| !a || b)
}

fn list(x: &[bool]) -> Vec<usize> {
    members(x).collect()
}

impl<'a> Checker<'a> {
    fn new(ctx: &'a VerifyContext) -> Self {
        Checker {
            ctx,
            g: &ctx.group,
            m: Weights::new(&ctx.space_weights),
            mu: ctx.group_weights.as_deref().map(Weights::new),
        }
    }

    fn order(&self) -> usize {
        self.g.order()
    }

    fn gset(&self, x: &GSet) -> Vec<bool> {
        let mut out = vec![false; self.order()];
        for i in x {
            out[i] = true;
        }
        out
    }

    fn product(&self, x: &[bool], y: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.order()];
        let ys: Vec<usize> = members(y).collect();
        for a in members(x) {
            for &b in &ys {
                out[self.g.mul(a, b)] = true;
            }
        }
        out
    }

    fn power(&self, x: &[bool], n: usize) -> Vec<bool> {
        let mut acc = x.to_vec();
        for _ in 1..n {
            let next = self.product(&acc, x);
            if next == acc {
                break;
            }
            acc = next;
        }
        acc
    }

    fn inverse(&self, x: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.order()];
        for a in members(x) {
            out[self.g.inverse(a)] = true;
        }
        out
    }

    fn symmetric(&self, x: &[bool]) -> bool {
        members(x).all(|a| x[self.g.inverse(a)])
    }

    fn translate(&self, t: usize, x: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.order()];
        for a in members(x) {
            out[self.g.mul(t, a)] = true;
        }
        out
    }

    fn intersect(x: &[bool], y: &[bool]) -> Vec<bool> {
        x.iter().zip(y).map(|(&a, &b)| a && b).collect()
    }

    fn closure(&self, x: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        let e = self.g.identity();
        seen[e] = true;
        let gens: Vec<usize> = members(x).chain(members(x).map(|a| self.g.inverse(a))).collect();
        let mut stack = vec![e];
        while let Some(h) = stack.pop() {
            for &s in &gens {
                let hs = self.g.mul(h, s);
                if !seen[hs] {
                    seen[hs] = true;
                    stack.push(hs);
                }
            }
        }
        seen
    }

    /// `XB` as points of the space.
    fn act(&self, x: &[bool], b: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.ctx.action.space_size()];
        let bs: Vec<usize> = members(b).collect();
        for g in members(x) {
            for &p in &bs {
                out[self.ctx.action.act(g, p)] = true;
            }
        }
        out
    }

    fn shift(&self, g: usize, z: &[bool]) -> Vec<bool> {
        let mut out = vec![false; z.len()];
        for p in members(z) {
            out[self.ctx.action.act(g, p)] = true;
        }
        out
    }

    fn large(&self, w: &[bool]) -> bool {
        match (&self.ctx.system, &self.mu) {
            (SystemKind::Mu, Some(mu)) => mu.positive(members(w)),
            (SystemKind::Mu, None) => false,
            _ => w.iter().any(|&b| b),
        }
    }

    fn intersection_of_translates(&self, a: &[bool], translators: &[usize]) -> Option<Vec<bool>> {
        let mut acc = vec![true; self.order()];
        if translators.is_empty() || translators.iter().any(|&t| t >= self.order()) {
            return None;
        }
        for &t in translators {
            acc = Self::intersect(&acc, &self.translate(t, a));
        }
        Some(acc)
    }

    fn s_set(&self, gamma: &[bool], ab: &[bool]) -> Vec<bool> {
        let span = self.closure(gamma);
        let mut out = vec![false; self.order()];
        for g in members(&span) {
            let moved = self.shift(g, ab);
            out[g] = self.m.positive(members(&Self::intersect(&moved, ab)));
        }
        out
    }

    fn rational_eq(&self, text: &str, mass: &BigInt) -> bool {
        parse_rational(text).map(|r| r == self.m.as_rational(mass)).unwrap_or(false)
    }

    fn parse_mass(&self, text: &str) -> Option<BigInt> {
        let r = parse_rational(text).ok()?;
        let scaled = r * BigRational::from_integer(self.m.denom.clone());
        scaled.is_integer().then(|| scaled.to_integer())
    }
}

/// Whether `universe` is covered by fewer than `k` of `sets`; `None` if the
/// search hit its node limit.
fn cover_below(universe: &[bool], sets: &[Vec<bool>], k: usize) -> Option<bool> {
    fn go(uncovered: &[bool], sets: &[Vec<bool>], budget: usize, nodes: &mut u64) -> Option<bool> {
        *nodes += 1;
        if *nodes > MINIMALITY_NODE_LIMIT {
            return None;
        }
        let Some(x) = uncovered.iter().position(|&b| b) else { return Some(true) };
        if budget == 0 {
            return Some(false);
        }
        let left = uncovered.iter().filter(|&&b| b).count();
        let best = sets.iter().map(|s| s.iter().zip(uncovered).filter(|(&a, &b)| a && b).count()).max().unwrap_or(0);
        if best * budget < left {
            return Some(false);
        }
        for s in sets.iter().filter(|s| s[x]) {
            let rest: Vec<bool> = uncovered.iter().zip(s).map(|(&u, &c)| u && !c).collect();
            if go(&rest, sets, budget - 1, nodes)? {
                return Some(true);
            }
        }
        Some(false)
    }
    if k == 0 {
        return Some(false);
    }
    let mut nodes = 0;
    go(universe, sets, k - 1, &mut nodes)
}

/// Parameters one descent certificate is checked against.
pub struct DescentFrame {
    pub lambda: GSet,
    pub gamma: GSet,
    pub n: usize,
}

pub fn verify(cert: &Certificate, ctx: &VerifyContext) -> Verdict {
    match cert {
        Certificate::Descent(c) => verify_descent(
            c,
            ctx,
            &DescentFrame { lambda: ctx.lambda.clone(), gamma: ctx.gamma.clone(), n: ctx.n },
        ),
        Certificate::Chain(c) => verify_chain(c, ctx),
        Certificate::Model(c) => verify_model(c, ctx),
    }
}

pub fn verify_descent(cert: &DescentCertificate, ctx: &VerifyContext, frame: &DescentFrame) -> Verdict {
    let mut v = Verdict::new("descent");
    let ck = Checker::new(ctx);
    let order = ck.order();
    let e = ck.g.identity();

    v.check("schema", cert.schema_version == SCHEMA_VERSION && cert.kind == "descent", "schema_version or kind");
    let eps = BigRational::new(BigInt::one(), BigInt::from(frame.n.max(1)));
    let lsq = BigRational::one() + &eps;
    let params_ok = cert.n == frame.n
        && cert.system == ctx.system
        && parse_rational(&cert.epsilon).ok() == Some(eps.clone())
        && parse_rational(&cert.lambda_sq).ok() == Some(lsq.clone())
        && cert.search.max_depth == ctx.max_depth
        && cert.search.max_candidates == ctx.max_candidates;
    v.check("parameters", params_ok, "n, ε, λ², system or search budget differ from the scenario");
    let context_ok = cert.lambda == frame.lambda.to_vec()
        && cert.gamma == frame.gamma.to_vec()
        && cert.a == ctx.a.to_vec()
        && cert.b == ctx.b.to_vec();
    v.check("context", context_ok, "Λ, Γ, A or B differ from the scenario");

    let lambda = ck.gset(&frame.lambda);
    let gamma = ck.gset(&frame.gamma);
    let a = ck.gset(&ctx.a);
    let b: Vec<bool> = (0..ctx.action.space_size()).map(|p| ctx.b.contains(p)).collect();
    v.check("gamma_hypothesis", gamma[e] && ck.symmetric(&gamma), "Γ must be symmetric and contain e");

    let mass_b = ck.m.mass(members(&b));
    let ab = ck.act(&a, &b);
    let mass_ab = ck.m.mass(members(&ab));
    let masses_ok =
        mass_b.is_positive() && ck.rational_eq(&cert.m_b, &mass_b) && ck.rational_eq(&cert.m_ab, &mass_ab);
    v.check("masses", masses_ok, "m(B) or m(AB) misreported, or m(B) = 0");
    v.check("a_large", ck.large(&a), "A is not in the system");

    // largest k with (m(AB)/m(B))² ≥ (λ²)^k
    let (p, q) = (lsq.numer().clone(), lsq.denom().clone());
    let (top, bottom) = (&mass_ab * &mass_ab, &mass_b * &mass_b);
    let mut k_bound = 0usize;
    if bottom.is_positive() {
        let (mut pk, mut qk) = (p.clone(), q.clone());
        while &top * &qk >= &bottom * &pk {
            k_bound += 1;
            pk *= &p;
            qk *= &q;
        }
    }
    v.check(
        "k_bound",
        cert.k_bound == k_bound && cert.k <= k_bound,
        format!("expected bound {k_bound}, certificate has k = {} and bound {}", cert.k, cert.k_bound),
    );
    let below = |x: &BigInt, y: &BigInt| x * x * &q < y * y * &p;

    // f values
    let mut f: Vec<BigInt> = Vec::new();
    let mut f_ok = cert.f_values.len() == cert.k + 1;
    for (j, fv) in cert.f_values.iter().enumerate() {
        let witness = ck.intersection_of_translates(&a, &fv.translators);
        let listed = to_bits(order, &fv.witness);
        let value = ck.parse_mass(&fv.value);
        let ok = match (witness, listed, value) {
            (Some(wt), Some(ls), Some(val)) => {
                let mass = ck.m.mass(members(&ck.act(&wt, &b)));
                fv.level == j
                    && sorted_unique(&fv.witness)
                    && sorted_unique(&fv.translators)
                    && wt == ls
                    && subset(&wt, &a)
                    && ck.large(&wt)
                    && mass == val
                    && mass_b <= val
                    && val <= mass_ab
            }
            _ => false,
        };
        f_ok &= ok;
        f.push(ck.parse_mass(&fv.value).unwrap_or_default());
    }
    v.check("f_values", f_ok, "an f value is not attained by its listed intersection of translates of A");

    let f_at = |j: isize| -> BigInt { if j < 0 { mass_b.clone() } else { f.get(j as usize).cloned().unwrap_or_default() } };
    let k = cert.k as isize;
    let least_ok = f_ok && (0..k).all(|j| !below(&f_at(j), &f_at(j - 1))) && below(&f_at(k), &f_at(k - 1));
    v.check("least_k", least_ok, "k is not the least level with f(k) < λ·f(k−1)");

    let w = ck.intersection_of_translates(&a, &cert.w_translators);
    let listed_w = to_bits(order, &cert.w);
    let mut w_bits = None;
    let w_ok = match (w, listed_w) {
        (Some(wt), Some(ls)) if wt == ls && sorted_unique(&cert.w_translators) => {
            let mass = ck.m.mass(members(&ck.act(&wt, &b)));
            let ok = subset(&wt, &a)
                && ck.large(&wt)
                && ck.rational_eq(&cert.m_wb, &mass)
                && f_ok
                && below(&mass, &f_at(k));
            w_bits = Some(wt);
            ok
        }
        _ => false,
    };
    v.check("w", w_ok, "W is not the listed intersection, not large, or m(WB) ≥ λ·f(k)");

    let d = to_bits(order, &cert.d).filter(|_| sorted_unique(&cert.d));
    let d_ok = match (&d, &w_bits) {
        (Some(d), Some(wt)) => {
            let mut derived = vec![false; order];
            derived[e] = true;
            for g in members(&gamma) {
                let fwd = Checker::intersect(&ck.translate(g, wt), wt);
                let bwd = Checker::intersect(&ck.translate(ck.g.inverse(g), wt), wt);
                if ck.large(&fwd) || ck.large(&bwd) {
                    derived[g] = true;
                }
            }
            *d == derived
        }
        _ => false,
    };
    v.check("d_derived", d_ok, "D differs from the derived set of W together with e");

    let aa = ck.product(&a, &ck.inverse(&a));
    let shape_ok = d.as_ref().is_some_and(|d| {
        d[e] && ck.symmetric(d) && subset(d, &gamma) && subset(d, &aa)
    });
    v.check("d_shape", shape_ok, "D must be symmetric, contain e and lie in Γ ∩ AA⁻¹");

    let local_ok = match (&d, &w_bits) {
        (Some(d), Some(wt)) if f_ok => members(d).filter(|&g| g != e).all(|g| {
            let v = Checker::intersect(&ck.translate(g, wt), wt);
            ck.m.mass(members(&ck.act(&v, &b))) >= f_at(k - 1)
        }),
        _ => false,
    };
    v.check("local_inequality", local_ok, "some g in D has m((gW∩W)B) < f(k−1)");

    // cover of Λ by translates of D
    let cw = &cert.cover_witness;
    let cover_ok = match (&d, to_bits(order, &cw.delta)) {
        (Some(d), Some(delta)) => {
            let translates: Vec<Vec<bool>> = members(&delta).map(|t| ck.translate(t, d)).collect();
            let covered = members(&lambda).all(|x| translates.iter().any(|s| s[x]));
            cw.delta.len() == cw.k && sorted_unique(&cw.delta) && covered
        }
        _ => false,
    };
    v.check("cover", cover_ok, "Λ is not covered by the listed translates of D");
    let lambda_size = frame.lambda.count();
    let exact_ok = match (&d, cover_ok) {
        (Some(d), true) if cw.exact => {
            let candidates = ck.product(&lambda, &ck.inverse(d));
            let sets: Vec<Vec<bool>> =
                members(&candidates).map(|t| Checker::intersect(&ck.translate(t, d), &lambda)).collect();
            // inconclusive searches cannot refute the claim
            cover_below(&lambda, &sets, cw.k) != Some(true)
        }
        (_, true) => lambda_size > EXACT_GUARANTEE,
        _ => false,
    };
    v.check("cover_exact", exact_ok, "exact flag inconsistent with the cover size");

    let s = ck.s_set(&gamma, &ab);
    v.check("s_set", to_bits(order, &cert.s_set).as_ref() == Some(&s), "S_Γ(AB) misreported");
    let power_ok = d.as_ref().is_some_and(|d| subset(&ck.power(d, frame.n.max(1)), &s));
    v.check("power_check", power_ok && cert.power_check, "Dⁿ ⊄ S_Γ(AB)");
    let overlap_ok = match (&d, &w_bits) {
        (Some(d), Some(wt)) => {
            let wb = ck.act(wt, &b);
            members(&ck.power(d, frame.n.max(1)))
                .all(|g| ck.m.positive(members(&Checker::intersect(&ck.shift(g, &wb), &wb))))
        }
        _ => false,
    };
    v.check("overlap_check", overlap_ok && cert.overlap_check, "some g in Dⁿ has m(gWB∩WB) = 0");
    v
}

pub fn verify_chain(cert: &ChainCertificate, ctx: &VerifyContext) -> Verdict {
    let mut v = Verdict::new("chain");
    let ck = Checker::new(ctx);
    let order = ck.order();
    let e = ck.g.identity();
    let n = ctx.n;

    v.check("schema", cert.schema_version == SCHEMA_VERSION && cert.kind == "chain", "schema_version or kind");
    let ctx_ok = cert.n == n
        && cert.system == ctx.system
        && cert.depth_budget == ctx.chain_depth
        && cert.lambda == ctx.lambda.to_vec()
        && cert.a == ctx.a.to_vec()
        && cert.b == ctx.b.to_vec();
    v.check("context", ctx_ok, "n, system, depth budget, Λ, A or B differ from the scenario");
    if cert.steps.is_empty() {
        v.check("steps", false, "no steps");
        return v;
    }
    let lambda = ck.gset(&ctx.lambda);
    let a = ck.gset(&ctx.a);
    let b: Vec<bool> = (0..ctx.action.space_size()).map(|p| ctx.b.contains(p)).collect();
    let ab = ck.act(&a, &b);
    let first = &cert.steps[0];
    v.check(
        "initial_step",
        first.index == 0 && first.d == ctx.lambda.to_vec() && first.k == n,
        "D_0 must be Λ and k_0 must be n",
    );

    let mut powers: Vec<Vec<bool>> = Vec::new();
    let mut ds: Vec<Vec<bool>> = Vec::new();
    let mut s_sets: Vec<Vec<bool>> = Vec::new();
    for (i, step) in cert.steps.iter().enumerate() {
        let Some(d) = to_bits(order, &step.d).filter(|_| sorted_unique(&step.d)) else {
            v.check(&format!("step{i}.d"), false, "D out of range");
            return v;
        };
        v.check(&format!("step{i}.index"), step.index == i, "step index out of sequence");
        v.check(&format!("step{i}.d_shape"), d[e] && ck.symmetric(&d), "D_i must be symmetric with e");
        let cap = 2 * n * (i + 2);
        v.check(
            &format!("step{i}.cap"),
            step.exponent_cap == cap && step.k >= 1 && step.k <= cap,
            format!("k_{i} = {} outside 1..={cap}", step.k),
        );
        let s = ck.s_set(&d, &ab);
        v.check(&format!("step{i}.s_set"), to_bits(order, &step.s_set).as_ref() == Some(&s), "S_{D_i}(AB) misreported");
        let power = ck.power(&d, step.k.max(1));
        v.check(&format!("step{i}.power"), to_bits(order, &step.power).as_ref() == Some(&power), "D_i^{k_i} misreported");
        v.check(&format!("step{i}.s_in_power"), subset(&s, &power), format!("S ⊄ D_{i}^{}", step.k));
        if i > 0 && step.k > 1 {
            let lower = ck.power(&d, step.k - 1);
            v.check(&format!("step{i}.least_k"), !subset(&s, &lower), format!("k_{i} is not the least exponent"));
        }
        if i == 0 {
            v.check("hypothesis", subset(&s, &ck.power(&lambda, n)), "S(AB) ⊄ Λⁿ");
        }
        ds.push(d);
        powers.push(power);
        s_sets.push(s);
    }

    let t = cert.steps.len() - 1;
    v.check("descent_count", cert.descents.len() == t, "one descent certificate per chain step");
    for (i, dc) in cert.descents.iter().enumerate().take(t) {
        let gamma = ck.closure(&ds[i]);
        let frame = DescentFrame {
            lambda: GSet::from_elements(order, members(&ds[i])),
            gamma: GSet::from_elements(order, members(&gamma)),
            n: 2 * cert.steps[i].k,
        };
        v.absorb(&format!("descent{i}"), verify_descent(dc, ctx, &frame));
        v.check(&format!("step{}.from_descent", i + 1), dc.d == cert.steps[i + 1].d, "D_{i+1} differs from its descent");
        let squared = ck.power(&ds[i + 1], 2 * cert.steps[i].k);
        v.check(&format!("step{}.squared_inclusion", i + 1), subset(&squared, &s_sets[i]), "D_{i+1}^{2k_i} ⊄ S_{D_i}(AB)");
        v.check(&format!("step{}.in_span", i + 1), subset(&ds[i + 1], &gamma), "D_{i+1} ⊄ ⟨D_i⟩");
        v.check(&format!("step{}.decreasing", i + 1), subset(&powers[i + 1], &powers[i]), "chain of powers increases");
    }

    let closed = |x: &[bool]| ck.product(x, x) == x;
    let stable_at = |i: usize| i < t && powers[i + 1] == powers[i] && closed(&powers[i]);
    let early = (0..t.saturating_sub(1)).any(stable_at);
    v.check("no_early_stop", !early, "the chain stabilized before its last step");
    let term_ok = match cert.termination {
        Termination::Stabilized => {
            t >= 1
                && t <= ctx.chain_depth
                && stable_at(t - 1)
                && cert.stabilized_at == Some(t - 1)
                && cert.terminal.as_deref() == Some(list(&powers[t - 1]).as_slice())
        }
        Termination::BudgetExhausted => {
            t == ctx.chain_depth && cert.stabilized_at.is_none() && cert.terminal.is_none() && !(t >= 1 && stable_at(t - 1))
        }
    };
    v.check("termination", term_ok, "termination record inconsistent with the steps");
    v
}

pub fn verify_model(cert: &QuotientModel, ctx: &VerifyContext) -> Verdict {
    let mut v = Verdict::new("model");
    let ck = Checker::new(ctx);
    let order = ck.order();
    let e = ck.g.identity();

    v.check("schema", cert.schema_version == SCHEMA_VERSION && cert.kind == "model", "schema_version or kind");
    v.check("context", cert.n == ctx.n && cert.lambda == ctx.lambda.to_vec(), "n or Λ differ from the scenario");
    let lambda = ck.gset(&ctx.lambda);
    let h = ck.closure(&lambda);
    v.check("h", to_bits(order, &cert.h).as_ref() == Some(&h) && sorted_unique(&cert.h), "H is not ⟨Λ⟩");
    let Some(k) = to_bits(order, &cert.k).filter(|_| sorted_unique(&cert.k)) else {
        v.check("k_subgroup", false, "K out of range");
        return v;
    };
    let k_sub = k[e] && ck.symmetric(&k) && ck.product(&k, &k) == k;
    v.check("k_subgroup", k_sub, "K is not a subgroup");
    let lambda_n = ck.power(&lambda, ctx.n.max(1));
    v.check("k_in_lambda_n", subset(&k, &lambda_n) && subset(&k, &h), "K ⊄ Λⁿ ∩ H");

    let mut core = k.clone();
    for g in members(&h) {
        let gi = ck.g.inverse(g);
        let mut conj = vec![false; order];
        for x in members(&k) {
            conj[ck.g.mul(ck.g.mul(g, x), gi)] = true;
        }
        core = Checker::intersect(&core, &conj);
    }
    v.check("kernel", to_bits(order, &cert.kernel).as_ref() == Some(&core) && sorted_unique(&cert.kernel), "kernel is not the normal core of K in H");

    let mut coset_of = vec![usize::MAX; order];
    let mut cosets_ok = true;
    let mut seen_reps = Vec::new();
    for (i, coset) in cert.cosets.iter().enumerate() {
        let Some(&rep) = coset.first() else {
            cosets_ok = false;
            break;
        };
        if rep >= order || !h[rep] {
            cosets_ok = false;
            break;
        }
        let expected: Vec<usize> = {
            let mut c: Vec<usize> = members(&core).map(|y| ck.g.mul(rep, y)).collect();
            c.sort_unstable();
            c
        };
        if *coset != expected {
            cosets_ok = false;
            break;
        }
        for &x in coset {
            if coset_of[x] != usize::MAX {
                cosets_ok = false;
            }
            coset_of[x] = i;
        }
        seen_reps.push(rep);
    }
    cosets_ok &= sorted_unique(&seen_reps) && members(&h).all(|x| coset_of[x] != usize::MAX);
    v.check("cosets", cosets_ok, "cosets do not partition H into left kernel cosets");
    if !cosets_ok {
        return v;
    }
    let hs: Vec<usize> = members(&h).collect();
    let hom_ok = cert.hom.len() == hs.len() && hs.iter().zip(&cert.hom).all(|(&x, &c)| coset_of[x] == c);
    v.check("hom", hom_ok, "hom does not send elements to their cosets");
    let c = cert.cosets.len();
    let table_ok = cert.table.len() == c
        && cert.table.iter().all(|row| row.len() == c)
        && hs.iter().all(|&x| hs.iter().all(|&y| cert.table[coset_of[x]][coset_of[y]] == coset_of[ck.g.mul(x, y)]));
    v.check("homomorphism", table_ok, "hom(xy) ≠ hom(x)·hom(y) for some x, y in H");
    v.check("identity_coset", cert.identity_coset == coset_of[e], "identity coset misreported");

    let mut u: Vec<usize> = members(&k).filter(|&x| h[x]).map(|x| coset_of[x]).collect();
    u.sort_unstable();
    u.dedup();
    let preimage: Vec<bool> = (0..order).map(|x| h[x] && u.binary_search(&coset_of[x]).is_ok()).collect();
    v.check(
        "neighbourhood",
        cert.u == u && preimage == k && u.binary_search(&coset_of[e]).is_ok() && subset(&preimage, &lambda_n),
        "hom⁻¹(U) must equal K ⊆ Λⁿ",
    );
    let mut image: Vec<usize> = members(&lambda).map(|x| coset_of[x]).collect();
    image.sort_unstable();
    image.dedup();
    v.check("compact_image", cert.lambda_image == image, "hom(Λ) misreported");
    let hn = hs.len();
    let kn = members(&k).count();
    let cn = members(&core).count();
    v.check(
        "index",
        cert.index == c && cn > 0 && c * cn == hn && kn > 0 && cert.k_index * kn == hn,
        "index does not match |H|/|kernel| and |H|/|K|",
    );
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::{basic_descent, extract_model, recursive_chain, DescentParams};
    use crate::group::cyclic;
    use crate::measure::SpaceMean;
    use crate::systems::MwSystem;

    fn setup(n: usize, r: i64) -> (VerifyContext, SpaceMean, MwSystem) {
        let g = Arc::new(cyclic(n).unwrap());
        let act = Arc::new(ActionTable::regular(Arc::clone(&g)));
        let m = SpaceMean::counting_on_space(Arc::clone(&act));
        let lam = GSet::from_elements(n, (-r..=r).map(|x| x.rem_euclid(n as i64) as usize));
        let sys = MwSystem::thick_system(Arc::clone(&g), lam.clone(), lam.clone(), 4).unwrap();
        let ctx = VerifyContext {
            group: g,
            action: Arc::clone(&act),
            space_weights: vec![BigRational::one(); n],
            group_weights: None,
            system: SystemKind::Thick,
            lambda: lam.clone(),
            gamma: lam.clone(),
            a: lam,
            b: act.set_of([0]).unwrap(),
            n: 2,
            max_depth: 3,
            max_candidates: 512,
            chain_depth: 20,
        };
        (ctx, m, sys)
    }

    #[test]
    fn produced_certificates_pass() {
        let (ctx, m, sys) = setup(40, 6);
        let p = DescentParams::new(2).unwrap();
        let d = basic_descent(&ctx.lambda, &ctx.gamma, &ctx.a, &ctx.b, &m, &sys, &p).unwrap();
        let verdict = verify(&Certificate::Descent(d.clone()), &ctx);
        assert!(verdict.passed(), "{:?}", verdict.failures());

        let chain = recursive_chain(&ctx.lambda, &ctx.a, &ctx.b, &m, &sys, 2, 20, &p).unwrap();
        let verdict = verify(&Certificate::Chain(chain.clone()), &ctx);
        assert!(verdict.passed(), "{:?}", verdict.failures());

        let model = extract_model(&ctx.group, &chain, &ctx.lambda, 2).unwrap();
        let verdict = verify(&Certificate::Model(model), &ctx);
        assert!(verdict.passed(), "{:?}", verdict.failures());
    }

    #[test]
    fn enlarged_d_is_rejected() {
        let (ctx, m, sys) = setup(40, 6);
        let p = DescentParams::new(2).unwrap();
        let mut d = basic_descent(&ctx.lambda, &ctx.gamma, &ctx.a, &ctx.b, &m, &sys, &p).unwrap();
        let extra = (0..40).find(|x| !d.d.contains(x)).unwrap();
        d.d.push(extra);
        d.d.sort_unstable();
        assert!(!verify(&Certificate::Descent(d), &ctx).passed());
    }

    #[test]
    fn cover_minimality_search() {
        let universe = vec![true; 4];
        let sets = vec![vec![true, true, false, false], vec![false, false, true, true], vec![true, false, true, false]];
        assert_eq!(cover_below(&universe, &sets, 2), Some(false));
        assert_eq!(cover_below(&universe, &sets, 3), Some(true));
    }
}
