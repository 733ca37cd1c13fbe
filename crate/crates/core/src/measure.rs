//! Invariant finitely additive means with exact rational values.
//!
//! A [`MeanSpace`] assigns a nonnegative rational weight to every point of its
//! carrier (the group itself, or a space it acts on) and measures a set by
//! summing weights. Weights are kept over a common denominator so that
//! measures of different sets compare by their integer numerators.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::action::ActionTable;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::subset::{OnGroup, OnSpace, Subset};

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().map_err(|_| bad())?, q.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Formats as `"p/q"` in lowest terms, always with a denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// An exact nonnegative measure value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasureValue(pub BigRational);

impl MeasureValue {
    pub fn zero() -> Self {
        MeasureValue(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for MeasureValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MeasureValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(MeasureValue).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone)]
pub enum Carrier {
    Group(Arc<GroupTable>),
    Space(Arc<ActionTable>),
}

impl Carrier {
    pub fn size(&self) -> usize {
        match self {
            Carrier::Group(g) => g.order(),
            Carrier::Space(a) => a.space_size(),
        }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        match self {
            Carrier::Group(g) => g,
            Carrier::Space(a) => a.group(),
        }
    }

    /// Image of point `x` under `g`.
    #[inline]
    pub fn move_point(&self, g: usize, x: usize) -> usize {
        match self {
            Carrier::Group(grp) => grp.mul(g, x),
            Carrier::Space(a) => a.act(g, x),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Domain<C> {
    AllSubsets,
    /// Must contain ∅ and be closed under union and intersection.
    ExplicitLattice(Vec<Subset<C>>),
}

#[derive(Debug, Clone)]
pub struct MeanSpace<C> {
    carrier: Carrier,
    weights: Vec<BigRational>,
    numerators: Vec<BigUint>,
    small: Option<Vec<u64>>,
    denominator: BigUint,
    domain: Domain<C>,
}

pub type GroupMean = MeanSpace<OnGroup>;
pub type SpaceMean = MeanSpace<OnSpace>;

impl MeanSpace<OnGroup> {
    pub fn counting_on_group(group: Arc<GroupTable>) -> Self {
        let n = group.order();
        Self::build(Carrier::Group(group), vec![BigRational::one(); n]).expect("unit weights are valid")
    }

    pub fn weighted_on_group(group: Arc<GroupTable>, weights: Vec<BigRational>) -> Result<Self> {
        Self::build(Carrier::Group(group), weights)
    }
}

impl MeanSpace<OnSpace> {
    pub fn counting_on_space(action: Arc<ActionTable>) -> Self {
        let n = action.space_size();
        Self::build(Carrier::Space(action), vec![BigRational::one(); n]).expect("unit weights are valid")
    }

    pub fn weighted_on_space(action: Arc<ActionTable>, weights: Vec<BigRational>) -> Result<Self> {
        Self::build(Carrier::Space(action), weights)
    }

    pub fn action(&self) -> &Arc<ActionTable> {
        match &self.carrier {
            Carrier::Space(a) => a,
            Carrier::Group(_) => unreachable!("space means are built on actions"),
        }
    }
}

impl<C> MeanSpace<C> {
    fn build(carrier: Carrier, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != carrier.size() {
            return Err(Error::InvalidWeights(format!(
                "expected {} weights, found {}",
                carrier.size(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidWeights(format!("weight of point {i} is negative")));
        }
        let denominator = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
            .to_biguint()
            .expect("positive lcm");
        let den_int = BigInt::from(denominator.clone());
        let numerators: Vec<BigUint> = weights
            .iter()
            .map(|w| (w.numer() * (&den_int / w.denom())).to_biguint().expect("nonnegative"))
            .collect();
        let small = numerators.iter().map(|n| n.to_u64()).collect::<Option<Vec<u64>>>();
        Ok(MeanSpace { carrier, weights, numerators, small, denominator, domain: Domain::AllSubsets })
    }

    /// Restricts the domain to an explicit lattice of sets.
    pub fn with_lattice(mut self, lattice: Vec<Subset<C>>) -> Result<Self> {
        let n = self.carrier.size();
        if lattice.iter().any(|s| s.universe() != n) {
            return Err(Error::CarrierMismatch { expected: n, found: lattice[0].universe() });
        }
        self.domain = Domain::ExplicitLattice(lattice);
        Ok(self)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn domain(&self) -> &Domain<C> {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weight(&self, x: usize) -> &BigRational {
        &self.weights[x]
    }

    pub fn is_counting(&self) -> bool {
        self.weights.iter().all(|w| w.is_one())
    }

    /// Common denominator of all weights.
    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    fn check(&self, x: &Subset<C>) -> Result<()> {
        if x.universe() != self.size() {
            return Err(Error::CarrierMismatch { expected: self.size(), found: x.universe() });
        }
        if let Domain::ExplicitLattice(sets) = &self.domain {
            if !sets.contains(x) {
                return Err(Error::NotInDomain);
            }
        }
        Ok(())
    }

    /// Measure of `x` scaled by the common denominator. Comparisons between
    /// sets of the same space can use this directly.
    pub fn mass(&self, x: &Subset<C>) -> BigUint {
        match &self.small {
            Some(small) => {
                let total: u128 = x.iter().map(|i| small[i] as u128).sum();
                BigUint::from(total)
            }
            None => x.iter().map(|i| &self.numerators[i]).sum(),
        }
    }

    pub fn value_of_mass(&self, mass: &BigUint) -> MeasureValue {
        MeasureValue(BigRational::new(BigInt::from(mass.clone()), BigInt::from(self.denominator.clone())))
    }

    pub fn mu(&self, x: &Subset<C>) -> Result<MeasureValue> {
        self.check(x)?;
        Ok(self.value_of_mass(&self.mass(x)))
    }

    /// Whether `mu(x) > 0`, without building the rational.
    pub fn is_positive(&self, x: &Subset<C>) -> Result<bool> {
        self.check(x)?;
        Ok(self.positive_unchecked(x))
    }

    pub(crate) fn positive_unchecked(&self, x: &Subset<C>) -> bool {
        x.iter().any(|i| !self.numerators[i].is_zero())
    }

    pub fn total(&self) -> MeasureValue {
        MeasureValue(self.weights.iter().sum())
    }

    /// `gX` inside the carrier.
    pub fn shift(&self, g: usize, x: &Subset<C>) -> Subset<C> {
        let mut out = Subset::empty(x.universe());
        for p in x {
            out.insert(self.carrier.move_point(g, p));
        }
        out
    }

    /// First `(g, x)` with `weight(g·x) != weight(x)`, if any.
    pub fn invariance_witness(&self) -> Option<(usize, usize)> {
        let grp = self.carrier.group();
        (0..grp.order()).find_map(|g| {
            (0..self.size())
                .find(|&x| self.numerators[self.carrier.move_point(g, x)] != self.numerators[x])
                .map(|x| (g, x))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub empty_is_zero: bool,
    pub nonnegative: bool,
    pub lattice_closed: bool,
    pub monotone: bool,
    pub modular: bool,
    pub invariant: bool,
    pub samples: usize,
    /// Human-readable descriptions of every failure found.
    pub counterexamples: Vec<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.empty_is_zero && self.nonnegative && self.lattice_closed && self.monotone && self.modular && self.invariant
    }
}

fn random_subset<C>(rng: &mut ChaCha8Rng, n: usize) -> Subset<C> {
    let density: f64 = rng.random_range(0.05..0.95);
    Subset::from_elements(n, (0..n).filter(|_| rng.random_bool(density)))
}

/// Checks the mean axioms on `samples` seeded random pairs plus the
/// exhaustive invariance condition on weights.
pub fn check_mean_axioms<C>(space: &MeanSpace<C>, samples: usize, seed: u64) -> AxiomReport {
    let n = space.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    let empty = Subset::<C>::empty(n);

    let empty_is_zero = match space.mu(&empty) {
        Ok(v) => v.is_zero(),
        Err(_) => false,
    };
    if !empty_is_zero {
        counterexamples.push("mu(empty) != 0 or empty set missing from domain".into());
    }
    let nonnegative = space.weights.iter().all(|w| !w.is_negative());

    let mut lattice_closed = true;
    if let Domain::ExplicitLattice(sets) = &space.domain {
        for a in sets {
            for b in sets {
                if !sets.contains(&a.union(b)) || !sets.contains(&a.intersection(b)) {
                    lattice_closed = false;
                    counterexamples.push(format!("lattice not closed on {:?}, {:?}", a.to_vec(), b.to_vec()));
                }
            }
        }
    }

    let pick = |rng: &mut ChaCha8Rng| -> Subset<C> {
        match &space.domain {
            Domain::AllSubsets => random_subset(rng, n),
            Domain::ExplicitLattice(sets) => sets[rng.random_range(0..sets.len())].clone(),
        }
    };
    let (mut monotone, mut modular) = (true, true);
    for _ in 0..samples {
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let (Ok(ma), Ok(mb)) = (space.mu(&a), space.mu(&b)) else { continue };
        let (Ok(mu), Ok(mi)) = (space.mu(&a.union(&b)), space.mu(&a.intersection(&b))) else { continue };
        if mu.0.clone() + mi.0.clone() != ma.0.clone() + mb.0.clone() {
            modular = false;
            counterexamples.push(format!("modularity fails on {:?}, {:?}", a.to_vec(), b.to_vec()));
        }
        // both A∩B ⊆ A and A ⊆ A∪B are comparable pairs
        if mi > ma || ma > mu {
            monotone = false;
            counterexamples.push(format!("monotonicity fails on {:?}, {:?}", a.to_vec(), b.to_vec()));
        }
        if a.is_subset(&b) && ma > mb {
            monotone = false;
            counterexamples.push(format!("monotonicity fails on {:?} ⊆ {:?}", a.to_vec(), b.to_vec()));
        }
    }

    let witness = space.invariance_witness();
    if let Some((g, x)) = witness {
        counterexamples.push(format!("invariance fails: weight({g}·{x}) != weight({x})"));
    }
    AxiomReport {
        empty_is_zero,
        nonnegative,
        lattice_closed,
        monotone,
        modular,
        invariant: witness.is_none(),
        samples,
        counterexamples,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlapOutcome {
    /// `m(g1g2Z∩Z) > (1-ε1-ε2)·m(Z)` strictly.
    Strict,
    /// Equality: the deficits were taken exactly, so the strict form cannot hold.
    Boundary,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OverlapVerdict {
    pub m_z: MeasureValue,
    pub m_g1: MeasureValue,
    pub m_g2: MeasureValue,
    pub m_g1g2: MeasureValue,
    pub eps1: MeasureValue,
    pub eps2: MeasureValue,
    pub threshold: String,
    pub outcome: OverlapOutcome,
    /// Outcome of the same comparison with `g1·g1` in place of `g1·g2`.
    pub outcome_g1g1: OverlapOutcome,
}

fn classify(lhs: &BigRational, rhs: &BigRational) -> OverlapOutcome {
    if lhs > rhs {
        OverlapOutcome::Strict
    } else if lhs == rhs {
        OverlapOutcome::Boundary
    } else {
        OverlapOutcome::Violated
    }
}

/// Takes `εᵢ = 1 − m(gᵢZ∩Z)/m(Z)` exactly and compares `m(g1g2Z∩Z)` against
/// `(1−ε1−ε2)·m(Z)`.
pub fn overlap_inequality_check<C>(m: &MeanSpace<C>, z: &Subset<C>, g1: usize, g2: usize) -> Result<OverlapVerdict> {
    let mz = m.mu(z)?;
    if mz.is_zero() {
        return Err(Error::ZeroMeasure);
    }
    let grp = m.carrier().group().clone();
    let overlap = |g: usize| m.mu(&m.shift(g, z).intersection(z));
    let (m1, m2) = (overlap(g1)?, overlap(g2)?);
    let m12 = overlap(grp.mul(g1, g2))?;
    let m11 = overlap(grp.mul(g1, g1))?;
    let one = BigRational::one();
    let eps1 = &one - &m1.0 / &mz.0;
    let eps2 = &one - &m2.0 / &mz.0;
    let threshold = (&one - &eps1 - &eps2) * &mz.0;
    Ok(OverlapVerdict {
        outcome: classify(&m12.0, &threshold),
        outcome_g1g1: classify(&m11.0, &threshold),
        threshold: format_rational(&threshold),
        eps1: MeasureValue(eps1),
        eps2: MeasureValue(eps2),
        m_z: mz,
        m_g1: m1,
        m_g2: m2,
        m_g1g2: m12,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactCheck {
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
}

/// The overlap fact with caller-supplied `ε1, ε2`: if both
/// `m(gᵢZ∩Z) > (1−εᵢ)·m(Z)` then `m(g1g2Z∩Z) > (1−ε1−ε2)·m(Z)`.
pub fn overlap_fact_check<C>(
    m: &MeanSpace<C>,
    z: &Subset<C>,
    g1: usize,
    g2: usize,
    eps1: &BigRational,
    eps2: &BigRational,
) -> Result<FactCheck> {
    let mz = m.mu(z)?.0;
    let grp = m.carrier().group().clone();
    let overlap = |g: usize| m.mu(&m.shift(g, z).intersection(z)).map(|v| v.0);
    let one = BigRational::one();
    let hypotheses_hold = overlap(g1)? > (&one - eps1) * &mz && overlap(g2)? > (&one - eps2) * &mz;
    let conclusion_holds = overlap(grp.mul(g1, g2))? > (&one - eps1 - eps2) * &mz;
    Ok(FactCheck { hypotheses_hold, conclusion_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use crate::subset::GSet;

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&r("6/4")), "3/2");
        assert_eq!(format_rational(&r("21")), "21/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn counting_and_normalized() {
        let g = Arc::new(cyclic(100).unwrap());
        let m = GroupMean::counting_on_group(Arc::clone(&g));
        assert!(m.mu(&g.empty_set()).unwrap().is_zero());
        let a = GSet::from_elements(100, (0..=10).chain(90..100));
        assert_eq!(m.mu(&a).unwrap().to_string(), "21/1");
        let norm = GroupMean::weighted_on_group(Arc::clone(&g), vec![r("1/100"); 100]).unwrap();
        assert_eq!(norm.mu(&g.full_set()).unwrap().to_string(), "1/1");
        assert!(matches!(m.mu(&GSet::empty(5)), Err(Error::CarrierMismatch { .. })));
    }

    #[test]
    fn negative_weights_rejected() {
        let g = Arc::new(cyclic(2).unwrap());
        assert!(GroupMean::weighted_on_group(g, vec![r("1"), r("-1/2")]).is_err());
    }

    #[test]
    fn lattice_domain() {
        let g = Arc::new(cyclic(4).unwrap());
        let e = g.empty_set();
        let h = g.set_of([0, 2]).unwrap();
        let full = g.full_set();
        let m = GroupMean::counting_on_group(Arc::clone(&g)).with_lattice(vec![e, h.clone(), full]).unwrap();
        assert_eq!(m.mu(&h).unwrap().to_string(), "2/1");
        assert_eq!(m.mu(&g.set_of([1]).unwrap()).unwrap_err(), Error::NotInDomain);
        let report = check_mean_axioms(&m, 50, 3);
        assert!(report.all_pass(), "{report:?}");
        let broken = GroupMean::counting_on_group(Arc::clone(&g))
            .with_lattice(vec![g.empty_set(), g.set_of([0]).unwrap(), g.set_of([1]).unwrap()])
            .unwrap();
        assert!(!check_mean_axioms(&broken, 10, 3).lattice_closed);
    }

    #[test]
    fn counting_passes_axioms() {
        let g = Arc::new(cyclic(12).unwrap());
        let report = check_mean_axioms(&GroupMean::counting_on_group(g), 200, 1);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn non_invariant_weight_reported() {
        let g = Arc::new(cyclic(6).unwrap());
        let mut w = vec![r("1"); 6];
        w[3] = r("2");
        let m = GroupMean::weighted_on_group(g, w).unwrap();
        let report = check_mean_axioms(&m, 20, 1);
        assert!(!report.invariant);
        assert!(report.modular && report.monotone);
        assert_eq!(m.invariance_witness(), Some((1, 2)));
    }

    #[test]
    fn overlap_boundary_cases() {
        let g = Arc::new(cyclic(100).unwrap());
        let m = GroupMean::counting_on_group(Arc::clone(&g));
        let z = GSet::from_elements(100, 0..50);
        let v = overlap_inequality_check(&m, &z, 0, 0).unwrap();
        assert_eq!(v.outcome, OverlapOutcome::Boundary);
        let v = overlap_inequality_check(&m, &z, 1, 1).unwrap();
        assert_eq!(v.m_g1.to_string(), "49/1");
        assert_eq!(v.m_g1g2.to_string(), "48/1");
        assert_eq!(v.eps1.to_string(), "1/50");
        assert_eq!(v.threshold, "48/1");
        assert_eq!(v.outcome, OverlapOutcome::Boundary);
        assert_eq!(overlap_inequality_check(&m, &g.empty_set(), 1, 1).unwrap_err(), Error::ZeroMeasure);
    }

    #[test]
    fn fact_with_strict_epsilons() {
        let g = Arc::new(cyclic(100).unwrap());
        let m = GroupMean::counting_on_group(Arc::clone(&g));
        let z = GSet::from_elements(100, 0..50);
        let c = overlap_fact_check(&m, &z, 1, 1, &r("1/40"), &r("1/40")).unwrap();
        assert!(c.hypotheses_hold && c.conclusion_holds);
        let c = overlap_fact_check(&m, &z, 1, 1, &r("1/50"), &r("1/50")).unwrap();
        assert!(!c.hypotheses_hold);
    }
}
