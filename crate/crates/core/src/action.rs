//! Finite group actions `G ↷ E` stored as `order x space_size` tables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupFamily, GroupTable};
use crate::subset::{ESet, GSet};

#[derive(Debug, Clone)]
pub struct ActionTable {
    group: Arc<GroupTable>,
    space_size: usize,
    act: Vec<u32>,
}

impl ActionTable {
    /// Validates `act[g][e]` against the action axioms.
    pub fn from_table(group: Arc<GroupTable>, table: Vec<Vec<usize>>) -> Result<Self> {
        if table.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "expected {} rows, found {}",
                group.order(),
                table.len()
            )));
        }
        let space_size = table.first().map(Vec::len).unwrap_or(0);
        if space_size == 0 || table.iter().any(|row| row.len() != space_size) {
            return Err(Error::InvalidAction("rows must be nonempty and of equal length".into()));
        }
        if table.iter().flatten().any(|&v| v >= space_size) {
            return Err(Error::InvalidAction("entry out of range".into()));
        }
        let act = table.into_iter().flatten().map(|v| v as u32).collect();
        let action = ActionTable { group, space_size, act };
        action.check_axioms()?;
        Ok(action)
    }

    fn from_fn(group: Arc<GroupTable>, space_size: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut act = Vec::with_capacity(group.order() * space_size);
        for g in 0..group.order() {
            for e in 0..space_size {
                act.push(f(g, e) as u32);
            }
        }
        ActionTable { group, space_size, act }
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: Arc<GroupTable>) -> Self {
        let n = group.order();
        let g2 = Arc::clone(&group);
        Self::from_fn(group, n, move |g, x| g2.mul(g, x))
    }

    /// Dihedral group of order `2m` acting on the `m` vertices of the polygon:
    /// `r^i s^j` sends `v` to `i + (-1)^j v`.
    pub fn dihedral_vertices(group: Arc<GroupTable>) -> Result<Self> {
        let m = match group.family() {
            GroupFamily::Dihedral(m) => *m,
            _ => return Err(Error::InvalidAction("vertex action needs a dihedral group".into())),
        };
        Ok(Self::from_fn(group, m, move |g, v| {
            let (i, j) = (g % m, g / m);
            if j == 0 {
                (i + v) % m
            } else {
                (i + m - v) % m
            }
        }))
    }

    /// Left multiplication on the left cosets `gH` of a subgroup `H`. Cosets
    /// are numbered by increasing least element.
    pub fn cosets(group: Arc<GroupTable>, subgroup: &GSet) -> Result<Self> {
        group.check_set(subgroup)?;
        if !group.is_subgroup(subgroup) {
            return Err(Error::InvalidAction("coset action needs a subgroup".into()));
        }
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut count = 0;
        for x in 0..n {
            if coset_of[x] == usize::MAX {
                for h in subgroup {
                    coset_of[group.mul(x, h)] = count;
                }
                count += 1;
            }
        }
        let reps: Vec<usize> = (0..count).map(|c| coset_of.iter().position(|&k| k == c).unwrap()).collect();
        let g2 = Arc::clone(&group);
        Ok(Self::from_fn(group, count, move |g, c| coset_of[g2.mul(g, reps[c])]))
    }

    /// Disjoint union of actions of the same group; points of part `i` follow
    /// those of parts `0..i`.
    pub fn disjoint_union(parts: &[ActionTable]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidAction("empty union".into()))?;
        let group = Arc::clone(&first.group);
        if parts.iter().any(|p| !Arc::ptr_eq(&p.group, &group) && p.group.order() != group.order()) {
            return Err(Error::InvalidAction("union parts act by different groups".into()));
        }
        let offsets: Vec<usize> = parts
            .iter()
            .scan(0, |acc, p| {
                let o = *acc;
                *acc += p.space_size;
                Some(o)
            })
            .collect();
        let total = parts.iter().map(|p| p.space_size).sum();
        let mut act = Vec::with_capacity(group.order() * total);
        for g in 0..group.order() {
            for (p, &off) in parts.iter().zip(&offsets) {
                for e in 0..p.space_size {
                    act.push((p.act(g, e) + off) as u32);
                }
            }
        }
        Ok(ActionTable { group, space_size: total, act })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn space_size(&self) -> usize {
        self.space_size
    }

    #[inline]
    pub fn act(&self, g: usize, e: usize) -> usize {
        self.act[g * self.space_size + e] as usize
    }

    pub fn check_axioms(&self) -> Result<()> {
        let grp = &self.group;
        for e in 0..self.space_size {
            if self.act(grp.identity(), e) != e {
                return Err(Error::InvalidAction(format!("identity moves point {e}")));
            }
        }
        for g in 0..grp.order() {
            for h in 0..grp.order() {
                let gh = grp.mul(g, h);
                for e in 0..self.space_size {
                    if self.act(g, self.act(h, e)) != self.act(gh, e) {
                        return Err(Error::InvalidAction(format!(
                            "act({g}, act({h}, {e})) != act({gh}, {e})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty_set(&self) -> ESet {
        ESet::empty(self.space_size)
    }

    pub fn full_set(&self) -> ESet {
        ESet::full(self.space_size)
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, points: I) -> Result<ESet> {
        let mut s = self.empty_set();
        for e in points {
            if e >= self.space_size {
                return Err(Error::Validation {
                    field: "point".into(),
                    message: format!("{e} is out of range for a space of size {}", self.space_size),
                });
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub fn check_set(&self, b: &ESet) -> Result<()> {
        if b.universe() != self.space_size {
            return Err(Error::CarrierMismatch { expected: self.space_size, found: b.universe() });
        }
        Ok(())
    }

    /// `XB = {g·e : g in X, e in B}`.
    pub fn act_set(&self, x: &GSet, b: &ESet) -> Result<ESet> {
        self.group.check_set(x)?;
        self.check_set(b)?;
        let points: Vec<usize> = b.iter().collect();
        let mut out = self.empty_set();
        for g in x {
            let row = &self.act[g * self.space_size..(g + 1) * self.space_size];
            for &e in &points {
                out.insert(row[e] as usize);
            }
        }
        Ok(out)
    }

    /// `gB` for a single element.
    pub fn act_element(&self, g: usize, b: &ESet) -> ESet {
        let mut out = self.empty_set();
        for e in b {
            out.insert(self.act(g, e));
        }
        out
    }

    pub fn orbit(&self, e: usize) -> ESet {
        let mut out = self.empty_set();
        for g in 0..self.group.order() {
            out.insert(self.act(g, e));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, heisenberg_mod};

    #[test]
    fn regular_action_matches_product() {
        let g = Arc::new(cyclic(10).unwrap());
        let act = ActionTable::regular(Arc::clone(&g));
        act.check_axioms().unwrap();
        let x = g.set_of([1, 2]).unwrap();
        let y = g.set_of([0, 5]).unwrap();
        let b: ESet = y.clone().recast();
        assert_eq!(act.act_set(&x, &b).unwrap().recast(), g.product_set(&x, &y).unwrap());
        assert_eq!(act.act_set(&g.identity_set(), &b).unwrap(), b);
    }

    #[test]
    fn rotations_move_vertex_zero_everywhere() {
        let g = Arc::new(dihedral(6).unwrap());
        let act = ActionTable::dihedral_vertices(Arc::clone(&g)).unwrap();
        act.check_axioms().unwrap();
        let rotations = g.set_of(0..6).unwrap();
        let b = act.set_of([0]).unwrap();
        assert!(act.act_set(&rotations, &b).unwrap().is_full());
        // s fixes vertex 0
        assert_eq!(act.act(g.label("s").unwrap(), 0), 0);
    }

    #[test]
    fn coset_action_on_center_quotient() {
        let g = Arc::new(heisenberg_mod(3).unwrap());
        let z = g.generated_subgroup(&g.set_of([g.label("z").unwrap()]).unwrap()).unwrap();
        let act = ActionTable::cosets(Arc::clone(&g), &z).unwrap();
        assert_eq!(act.space_size(), 9);
        act.check_axioms().unwrap();
        assert!(act.orbit(0).is_full());
    }

    #[test]
    fn union_has_two_orbits() {
        let g = Arc::new(cyclic(12).unwrap());
        let h4 = g.generated_subgroup(&g.set_of([4]).unwrap()).unwrap();
        let h6 = g.generated_subgroup(&g.set_of([6]).unwrap()).unwrap();
        let u = ActionTable::disjoint_union(&[
            ActionTable::cosets(Arc::clone(&g), &h4).unwrap(),
            ActionTable::cosets(Arc::clone(&g), &h6).unwrap(),
        ])
        .unwrap();
        assert_eq!(u.space_size(), 4 + 6);
        u.check_axioms().unwrap();
        assert_eq!(u.orbit(0).count(), 4);
        assert_eq!(u.orbit(4).count(), 6);
    }

    #[test]
    fn bad_tables_rejected() {
        let g = Arc::new(cyclic(2).unwrap());
        assert!(ActionTable::from_table(Arc::clone(&g), vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(ActionTable::from_table(Arc::clone(&g), vec![vec![0, 1]]).is_err());
        let ok = ActionTable::from_table(g, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(ok.act(1, 0), 1);
    }
}
