//! Finite groups as fully materialized Cayley tables, and the set arithmetic
//! every other module is built from.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::GSet;

/// Largest group order accepted at construction.
pub const MAX_ORDER: usize = 4096;

/// Up to this order associativity is checked on every triple; above it by sampling.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 256;

/// Families of groups that can be built by [`build_group`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupFamily {
    Cyclic(usize),
    DirectProduct(Box<GroupFamily>, Box<GroupFamily>),
    Dihedral(usize),
    HeisenbergMod(usize),
    CayleyTable(RawTable),
}

/// Raw Cayley table input: `{"order": N, "mul": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTable {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    family: GroupFamily,
    generator_labels: Vec<(String, usize)>,
}

pub fn build_group(family: &GroupFamily) -> Result<GroupTable> {
    match family {
        GroupFamily::Cyclic(n) => cyclic(*n),
        GroupFamily::Dihedral(m) => dihedral(*m),
        GroupFamily::HeisenbergMod(p) => heisenberg_mod(*p),
        GroupFamily::DirectProduct(a, b) => {
            let g1 = build_group(a)?;
            let g2 = build_group(b)?;
            direct_product(&g1, &g2)
        }
        GroupFamily::CayleyTable(raw) => from_raw_table(raw),
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidParameters("group order must be positive".into()));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge { order, cap: MAX_ORDER });
    }
    Ok(())
}

fn from_fn(
    order: usize,
    identity: usize,
    family: GroupFamily,
    generator_labels: Vec<(String, usize)>,
    op: impl Fn(usize, usize) -> usize,
) -> Result<GroupTable> {
    check_order(order)?;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            mul.push(op(x, y) as u32);
        }
    }
    let mut inv = vec![0u32; order];
    for x in 0..order {
        inv[x] = (0..order)
            .find(|&y| mul[x * order + y] as usize == identity)
            .ok_or(Error::NoInverse(x))? as u32;
    }
    Ok(GroupTable { order, mul, inv, identity, family, generator_labels })
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    let labels = if n > 1 { vec![("1".to_string(), 1)] } else { vec![] };
    from_fn(n, 0, GroupFamily::Cyclic(n), labels, |x, y| (x + y) % n)
}

/// Dihedral group of order `2m`. Element `j*m + i` is `r^i s^j`; `r` rotates
/// by one step and `s` is a reflection.
pub fn dihedral(m: usize) -> Result<GroupTable> {
    if m == 0 {
        return Err(Error::InvalidParameters("dihedral(m) needs m >= 1".into()));
    }
    let labels = vec![("r".to_string(), 1 % m), ("s".to_string(), m)];
    from_fn(2 * m, 0, GroupFamily::Dihedral(m), labels, |x, y| {
        let (a, fx) = (x % m, x / m);
        let (b, fy) = (y % m, y / m);
        let rot = if fx == 0 { (a + b) % m } else { (a + m - b) % m };
        ((fx + fy) % 2) * m + rot
    })
}

/// Upper unitriangular 3x3 matrices over Z/p. `(a, b, c)` is the matrix with
/// `a` and `b` on the superdiagonal and `c` in the corner; index `a*p^2 + b*p + c`.
pub fn heisenberg_mod(p: usize) -> Result<GroupTable> {
    if p == 0 {
        return Err(Error::InvalidParameters("heisenberg_mod(p) needs p >= 1".into()));
    }
    let order = p.checked_pow(3).filter(|&o| o <= MAX_ORDER).ok_or(Error::OrderTooLarge {
        order: p.saturating_pow(3),
        cap: MAX_ORDER,
    })?;
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let labels = if p > 1 {
        vec![("x".to_string(), p * p), ("y".to_string(), p), ("z".to_string(), 1)]
    } else {
        vec![]
    };
    from_fn(order, 0, GroupFamily::HeisenbergMod(p), labels, |x, y| {
        let (a1, b1, c1) = split(x);
        let (a2, b2, c2) = split(y);
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        let c = (c1 + c2 + a1 * b2) % p;
        a * p * p + b * p + c
    })
}

/// `G1 x G2` with `(x1, x2)` at index `x1 * |G2| + x2`.
pub fn direct_product(g1: &GroupTable, g2: &GroupTable) -> Result<GroupTable> {
    let n2 = g2.order;
    let order = g1.order.checked_mul(n2).ok_or(Error::OrderTooLarge { order: usize::MAX, cap: MAX_ORDER })?;
    check_order(order)?;
    let mut labels: Vec<(String, usize)> = g1
        .generator_labels
        .iter()
        .map(|(l, x)| (format!("{l}.0"), x * n2 + g2.identity))
        .collect();
    labels.extend(g2.generator_labels.iter().map(|(l, x)| (format!("{l}.1"), g1.identity * n2 + x)));
    let family = GroupFamily::DirectProduct(Box::new(g1.family.clone()), Box::new(g2.family.clone()));
    // raw-table factors may have a nonzero identity
    let identity = g1.identity * n2 + g2.identity;
    from_fn(order, identity, family, labels, |x, y| g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2))
}

/// Validates a raw Cayley table and infers identity and inverses.
pub fn from_raw_table(raw: &RawTable) -> Result<GroupTable> {
    let order = raw.order;
    check_order(order)?;
    if raw.mul.len() != order || raw.mul.iter().any(|row| row.len() != order) {
        return Err(Error::MalformedTable(format!("expected a {order}x{order} table")));
    }
    if let Some(&bad) = raw.mul.iter().flatten().find(|&&v| v >= order) {
        return Err(Error::MalformedTable(format!("entry {bad} out of range")));
    }
    let mul: Vec<u32> = raw.mul.iter().flatten().map(|&v| v as u32).collect();
    let at = |x: usize, y: usize| mul[x * order + y] as usize;
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or(Error::NoIdentity)?;
    let mut inv = vec![0u32; order];
    for x in 0..order {
        let y = (0..order)
            .find(|&y| at(x, y) == identity && at(y, x) == identity)
            .ok_or(Error::NoInverse(x))?;
        inv[x] = y as u32;
    }
    let table = GroupTable {
        order,
        mul,
        inv,
        identity,
        family: GroupFamily::CayleyTable(raw.clone()),
        generator_labels: Vec::new(),
    };
    table.check_associativity(0)?;
    Ok(table)
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn generator_labels(&self) -> &[(String, usize)] {
        &self.generator_labels
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.generator_labels.iter().find(|(l, _)| l == name).map(|&(_, x)| x)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// Row `x` of the table: `y -> x*y`.
    pub fn row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.mul[x * self.order..(x + 1) * self.order].iter().map(|&v| v as usize)
    }

    /// Checks associativity exhaustively for small orders and on
    /// `10 * order^2` seeded random triples above that.
    pub fn check_associativity(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let assoc = |x, y, z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !assoc(x, y, z) {
                            return Err(Error::NonAssociative(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10 * n * n {
                let (x, y, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !assoc(x, y, z) {
                    return Err(Error::NonAssociative(x, y, z));
                }
            }
        }
        Ok(())
    }

    /// Verifies the identity and inverse tables against `mul`.
    pub fn check_identity_and_inverses(&self) -> Result<()> {
        let e = self.identity;
        for x in 0..self.order {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(Error::NoIdentity);
            }
            let y = self.inverse(x);
            if self.mul(x, y) != e || self.mul(y, x) != e {
                return Err(Error::NoInverse(x));
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn empty_set(&self) -> GSet {
        GSet::empty(self.order)
    }

    pub fn full_set(&self) -> GSet {
        GSet::full(self.order)
    }

    pub fn identity_set(&self) -> GSet {
        GSet::singleton(self.order, self.identity)
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, elements: I) -> Result<GSet> {
        let mut s = self.empty_set();
        for x in elements {
            if x >= self.order {
                return Err(Error::Validation {
                    field: "element".into(),
                    message: format!("{x} is out of range for a group of order {}", self.order),
                });
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn check_set(&self, x: &GSet) -> Result<()> {
        if x.universe() != self.order {
            return Err(Error::GroupMismatch(self.order, x.universe()));
        }
        Ok(())
    }

    /// `{xy : x in X, y in Y}`.
    pub fn product_set(&self, x: &GSet, y: &GSet) -> Result<GSet> {
        self.check_set(x)?;
        self.check_set(y)?;
        let mut out = self.empty_set();
        let ys: Vec<usize> = y.iter().collect();
        for a in x {
            let row = &self.mul[a * self.order..(a + 1) * self.order];
            for &b in &ys {
                out.insert(row[b] as usize);
            }
            if out.is_full() {
                break;
            }
        }
        Ok(out)
    }

    /// `X^n` for `n >= 1`.
    pub fn power_set(&self, x: &GSet, n: usize) -> Result<GSet> {
        if n == 0 {
            return Err(Error::InvalidParameters("power_set needs n >= 1".into()));
        }
        self.check_set(x)?;
        let grows = x.contains(self.identity);
        let mut acc = x.clone();
        for _ in 1..n {
            let next = self.product_set(&acc, x)?;
            // with e in X the powers are nested, so a repeat is a fixed point
            if grows && next == acc {
                break;
            }
            acc = next;
        }
        Ok(acc)
    }

    pub fn inverse_set(&self, x: &GSet) -> GSet {
        let mut out = self.empty_set();
        for a in x {
            out.insert(self.inverse(a));
        }
        out
    }

    /// `gX`.
    pub fn translate(&self, g: usize, x: &GSet) -> GSet {
        let mut out = self.empty_set();
        for a in x {
            out.insert(self.mul(g, a));
        }
        out
    }

    /// `X ∪ X⁻¹ ∪ {e}`.
    pub fn symmetrize(&self, x: &GSet) -> GSet {
        let mut out = x.union(&self.inverse_set(x));
        out.insert(self.identity);
        out
    }

    pub fn is_symmetric(&self, x: &GSet) -> bool {
        x.iter().all(|a| x.contains(self.inverse(a)))
    }

    /// `X⁻¹Y`.
    pub fn quotient_set(&self, x: &GSet, y: &GSet) -> Result<GSet> {
        self.product_set(&self.inverse_set(x), y)
    }

    /// Closure of `X ∪ X⁻¹ ∪ {e}` under multiplication.
    pub fn generated_subgroup(&self, x: &GSet) -> Result<GSet> {
        self.check_set(x)?;
        if x.is_empty() {
            return Err(Error::EmptyInput);
        }
        let gens: Vec<usize> = self.symmetrize(x).iter().collect();
        let mut seen = self.identity_set();
        let mut frontier = vec![self.identity];
        while let Some(h) = frontier.pop() {
            for &g in &gens {
                let hg = self.mul(h, g);
                if seen.insert(hg) {
                    frontier.push(hg);
                }
            }
        }
        Ok(seen)
    }

    pub fn is_subgroup(&self, x: &GSet) -> bool {
        x.contains(self.identity)
            && self.is_symmetric(x)
            && x.iter().all(|a| x.iter().all(|b| x.contains(self.mul(a, b))))
    }

    /// `⋂_{h in H} h K h⁻¹`, the largest subgroup of `K` normal in `H`.
    pub fn normal_core(&self, k: &GSet, h: &GSet) -> GSet {
        let mut core = k.clone();
        for g in h {
            let gi = self.inverse(g);
            let conj = GSet::from_elements(self.order, k.iter().map(|x| self.mul(self.mul(g, x), gi)));
            core.intersect_with(&conj);
        }
        core
    }
}
