//! Finite partial semigroups and their elementary operators.
//!
//! A [`PartialSemigroup`] is a multiplication table in which an entry may be
//! undefined. Weak associativity is not enforced at construction time; call
//! [`PartialSemigroup::validate`] to check it. Everything else here is a pure
//! function of the table.

use serde::Serialize;

use crate::error::{Error, Limits, Result};
use crate::subset::SubsetMask;

#[derive(Clone, PartialEq, Eq)]
pub struct PartialSemigroup {
    size: usize,
    table: Vec<Option<u32>>,
    names: Option<Vec<String>>,
    right: Vec<SubsetMask>,
    left: Vec<SubsetMask>,
}

impl std::fmt::Debug for PartialSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PartialSemigroup")
            .field("size", &self.size)
            .field("rows", &self.rows())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    OneSideUndefined,
    Unequal,
}

/// A triple `(x, y, z)` on which `(x∙y)∙z` and `x∙(y∙z)` disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub triple: (usize, usize, usize),
    pub kind: ViolationKind,
    /// Value of `(x∙y)∙z`, if defined.
    pub left: Option<usize>,
    /// Value of `x∙(y∙z)`, if defined.
    pub right: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// The principal one-sided and two-sided ideals generated by products with `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrincipalIdeals {
    /// `L(x)∙x`
    pub left: SubsetMask,
    /// `x∙R(x)`
    pub right: SubsetMask,
    /// Closure of `L(x)∙x ∪ x∙R(x)` under multiplication on either side.
    pub two_sided: SubsetMask,
}

impl PartialSemigroup {
    /// Builds a semigroup from a row-major table. Only the table shape and
    /// entry ranges are checked here.
    pub fn from_rows(rows: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let size = rows.len();
        let mut table = Vec::with_capacity(size * size);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Shape {
                    expected: size,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if let Some(v) = v {
                    if v >= size {
                        return Err(Error::EntryOutOfRange {
                            row: r,
                            col: c,
                            value: v,
                            size,
                        });
                    }
                }
                table.push(v.map(|v| v as u32));
            }
        }
        Ok(Self::assemble(size, table, None))
    }

    /// Builds a semigroup from a product function. Panics if `f` returns an
    /// out-of-range element.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> Option<usize>) -> Self {
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let v = f(x, y);
                if let Some(v) = v {
                    assert!(v < size, "product {x}∙{y} = {v} out of range");
                }
                table.push(v.map(|v| v as u32));
            }
        }
        Self::assemble(size, table, None)
    }

    fn assemble(size: usize, table: Vec<Option<u32>>, names: Option<Vec<String>>) -> Self {
        let mut right = vec![SubsetMask::empty(size); size];
        let mut left = vec![SubsetMask::empty(size); size];
        for x in 0..size {
            for y in 0..size {
                if table[x * size + y].is_some() {
                    right[x].insert(y);
                    left[y].insert(x);
                }
            }
        }
        PartialSemigroup {
            size,
            table,
            names,
            right,
            left,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::Shape {
                expected: self.size,
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of `x`: its name when present, its index otherwise.
    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.product(x, y)).collect())
            .collect()
    }

    /// `a∙b`, or `None` when undefined.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.size + b].map(|v| v as usize)
    }

    /// Product of principal ultrafilters at `a` and `b`; in the finite model
    /// this is the table entry.
    pub fn principal_product(&self, a: usize, b: usize) -> Result<Option<usize>> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.product(a, b))
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn defined_count(&self) -> usize {
        self.table.iter().filter(|v| v.is_some()).count()
    }

    pub fn empty_set(&self) -> SubsetMask {
        SubsetMask::empty(self.size)
    }

    pub fn full_set(&self) -> SubsetMask {
        SubsetMask::full(self.size)
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                size: self.size,
            })
        }
    }

    pub fn check_subset(&self, a: &SubsetMask) -> Result<()> {
        if a.width() == self.size {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                expected: self.size,
                found: a.width(),
            })
        }
    }

    /// Exhaustive scan of all triples for weak associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for x in 0..self.size {
            for y in 0..self.size {
                let xy = self.product(x, y);
                for z in 0..self.size {
                    let left = xy.and_then(|xy| self.product(xy, z));
                    let right = self.product(y, z).and_then(|yz| self.product(x, yz));
                    let kind = match (left, right) {
                        (Some(l), Some(r)) if l != r => ViolationKind::Unequal,
                        (Some(_), None) | (None, Some(_)) => ViolationKind::OneSideUndefined,
                        _ => continue,
                    };
                    violations.push(Violation {
                        triple: (x, y, z),
                        kind,
                        left,
                        right,
                    });
                }
            }
        }
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// `R(x) = {s : x∙s defined}`.
    pub fn right_set(&self, x: usize) -> &SubsetMask {
        &self.right[x]
    }

    /// `L(x) = {s : s∙x defined}`.
    pub fn left_set(&self, x: usize) -> &SubsetMask {
        &self.left[x]
    }

    /// `R(H)`, the intersection of `R(s)` over `s ∈ H`.
    pub fn right_set_family(&self, h: &SubsetMask) -> Result<SubsetMask> {
        self.check_subset(h)?;
        if h.is_empty() {
            return Err(Error::EmptySubset("H"));
        }
        Ok(self.right_of(h))
    }

    /// `L(H)`, the intersection of `L(s)` over `s ∈ H`.
    pub fn left_set_family(&self, h: &SubsetMask) -> Result<SubsetMask> {
        self.check_subset(h)?;
        if h.is_empty() {
            return Err(Error::EmptySubset("H"));
        }
        Ok(self.left_of(h))
    }

    /// Unchecked `R(H)`; the full set when `H` is empty.
    pub(crate) fn right_of(&self, h: &SubsetMask) -> SubsetMask {
        let mut acc = self.full_set();
        for s in h.iter() {
            acc.intersect_with(&self.right[s]);
        }
        acc
    }

    pub(crate) fn left_of(&self, h: &SubsetMask) -> SubsetMask {
        let mut acc = self.full_set();
        for s in h.iter() {
            acc.intersect_with(&self.left[s]);
        }
        acc
    }

    /// `R(H) ≠ ∅` for every nonempty `H`; by antitonicity this is `R(S) ≠ ∅`.
    pub fn is_right_adequate(&self) -> bool {
        self.size > 0 && !self.right_of(&self.full_set()).is_empty()
    }

    pub fn is_left_adequate(&self) -> bool {
        self.size > 0 && !self.left_of(&self.full_set()).is_empty()
    }

    pub fn is_adequate(&self) -> bool {
        self.is_right_adequate() && self.is_left_adequate()
    }

    /// Adequate, with at least one minimal left ideal and an idempotent in
    /// every minimal left ideal.
    ///
    /// In `βS` both facts come from compactness; a finite partial table can
    /// lack them, and the recurrence, kernel and characterization results
    /// then fail in their finite form.
    pub fn has_compact_kernel_structure(&self) -> bool {
        let mins = self.minimal_left_ideals();
        let e = self.idempotents();
        self.is_adequate() && !mins.is_empty() && mins.iter().all(|l| l.intersects(&e))
    }

    /// `δ_R S` in the finite discrete model, which is `R(S)`.
    pub fn delta_r(&self) -> SubsetMask {
        if self.size == 0 {
            return self.empty_set();
        }
        self.right_of(&self.full_set())
    }

    /// `s⁻¹A = {t ∈ R(s) : s∙t ∈ A}`.
    pub fn quotient_set(&self, s: usize, a: &SubsetMask) -> SubsetMask {
        let mut out = self.empty_set();
        for t in self.right[s].iter() {
            if a.contains(self.product(s, t).unwrap()) {
                out.insert(t);
            }
        }
        out
    }

    /// `⋃_{t∈H} t⁻¹A`.
    pub fn quotient_union(&self, h: &SubsetMask, a: &SubsetMask) -> SubsetMask {
        let mut out = self.empty_set();
        for t in h.iter() {
            out.union_with(&self.quotient_set(t, a));
        }
        out
    }

    /// `A∙B`: every defined product `a∙b` with `a ∈ A`, `b ∈ B`.
    pub fn set_product(&self, a: &SubsetMask, b: &SubsetMask) -> SubsetMask {
        let mut out = self.empty_set();
        for x in a.iter() {
            for y in b.iter() {
                if let Some(p) = self.product(x, y) {
                    out.insert(p);
                }
            }
        }
        out
    }

    /// `A∙b`
    pub fn set_times(&self, a: &SubsetMask, b: usize) -> SubsetMask {
        self.set_product(a, &SubsetMask::singleton(self.size, b))
    }

    /// `a∙B`
    pub fn times_set(&self, a: usize, b: &SubsetMask) -> SubsetMask {
        self.set_product(&SubsetMask::singleton(self.size, a), b)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.product(x, x) == Some(x)
    }

    /// `E(S)`
    pub fn idempotents(&self) -> SubsetMask {
        SubsetMask::from_indices(self.size, (0..self.size).filter(|&x| self.is_idempotent(x)))
    }

    fn nonempty(&self, i: &SubsetMask) -> Result<()> {
        self.check_subset(i)?;
        if i.is_empty() {
            Err(Error::EmptySubset("ideal candidate"))
        } else {
            Ok(())
        }
    }

    pub(crate) fn left_closed(&self, i: &SubsetMask) -> bool {
        i.iter()
            .all(|x| self.left[x].iter().all(|y| i.contains(self.product(y, x).unwrap())))
    }

    pub(crate) fn right_closed(&self, i: &SubsetMask) -> bool {
        i.iter()
            .all(|x| self.right[x].iter().all(|y| i.contains(self.product(x, y).unwrap())))
    }

    /// `y∙x ∈ I` for all `x ∈ I` and `y ∈ L(x)`.
    pub fn is_left_ideal(&self, i: &SubsetMask) -> Result<bool> {
        self.nonempty(i)?;
        Ok(self.left_closed(i))
    }

    pub fn is_right_ideal(&self, i: &SubsetMask) -> Result<bool> {
        self.nonempty(i)?;
        Ok(self.right_closed(i))
    }

    pub fn is_ideal(&self, i: &SubsetMask) -> Result<bool> {
        self.nonempty(i)?;
        Ok(self.left_closed(i) && self.right_closed(i))
    }

    pub fn principal_ideals(&self, x: usize) -> Result<PrincipalIdeals> {
        self.check_element(x)?;
        let left = self.set_times(&self.left[x], x);
        let right = self.times_set(x, &self.right[x]);
        let two_sided = self.two_sided_closure(left.union(&right));
        Ok(PrincipalIdeals {
            left,
            right,
            two_sided,
        })
    }

    /// Smallest superset of `seed` closed under left and right multiplication.
    pub fn two_sided_closure(&self, seed: SubsetMask) -> SubsetMask {
        let mut acc = seed;
        loop {
            let grown = self
                .set_product(&self.full_set(), &acc)
                .union(&self.set_product(&acc, &self.full_set()))
                .union(&acc);
            if grown == acc {
                return acc;
            }
            acc = grown;
        }
    }

    /// The smallest left ideal containing `x`: `{x} ∪ L(x)∙x`.
    pub fn left_ideal_generated(&self, x: usize) -> SubsetMask {
        let mut out = self.set_times(&self.left[x], x);
        out.insert(x);
        out
    }

    /// The smallest right ideal containing `x`: `{x} ∪ x∙R(x)`.
    pub fn right_ideal_generated(&self, x: usize) -> SubsetMask {
        let mut out = self.times_set(x, &self.right[x]);
        out.insert(x);
        out
    }

    /// All minimal left ideals, in order of their least element.
    ///
    /// Every left ideal contains the ideal generated by any of its members, so
    /// the minimal left ideals are exactly the inclusion-minimal members of
    /// `{ {x} ∪ L(x)∙x : x ∈ S }`. This relies on weak associativity.
    pub fn minimal_left_ideals(&self) -> Vec<SubsetMask> {
        let generated: Vec<SubsetMask> =
            (0..self.size).map(|x| self.left_ideal_generated(x)).collect();
        inclusion_minimal(generated)
    }

    pub fn minimal_right_ideals(&self) -> Vec<SubsetMask> {
        let generated: Vec<SubsetMask> =
            (0..self.size).map(|x| self.right_ideal_generated(x)).collect();
        inclusion_minimal(generated)
    }

    /// `K(S)`: the union of the minimal left ideals, when that union is a
    /// two-sided ideal lying inside every ideal. Partial products allow
    /// disjoint ideals, in which case there is no smallest one.
    pub fn smallest_ideal(&self) -> Option<SubsetMask> {
        let mins = self.minimal_left_ideals();
        if mins.is_empty() {
            return None;
        }
        let mut union = self.empty_set();
        for m in &mins {
            union.union_with(m);
        }
        let is_ideal = self.left_closed(&union) && self.right_closed(&union);
        // every ideal contains the ideal generated by each of its members
        let inside_all = (0..self.size)
            .all(|x| union.is_subset(&self.two_sided_closure(SubsetMask::from_indices(self.size, [x]))));
        (is_ideal && inside_all).then_some(union)
    }

    /// `E(S) ∩ K(S)`; empty when `K(S)` is absent.
    pub fn minimal_idempotents(&self) -> SubsetMask {
        match self.smallest_ideal() {
            Some(k) => k.intersection(&self.idempotents()),
            None => self.empty_set(),
        }
    }

    /// Every left ideal, by exhaustive enumeration.
    pub fn all_left_ideals(&self, limits: &Limits) -> Result<Vec<SubsetMask>> {
        limits.check_subsets("left ideal enumeration", self.size)?;
        Ok(SubsetMask::all(self.size)
            .filter(|i| !i.is_empty() && self.left_closed(i))
            .collect())
    }

    pub fn all_ideals(&self, limits: &Limits) -> Result<Vec<SubsetMask>> {
        limits.check_subsets("ideal enumeration", self.size)?;
        Ok(SubsetMask::all(self.size)
            .filter(|i| !i.is_empty() && self.left_closed(i) && self.right_closed(i))
            .collect())
    }

    /// Is `t` closed under the defined products of its members?
    pub fn is_closed(&self, t: &SubsetMask) -> bool {
        self.set_product(t, t).is_subset(t)
    }

    /// The table restricted to `t`, with elements renumbered in increasing
    /// order. Fails when a defined product of members leaves `t`.
    pub fn restrict(&self, t: &SubsetMask) -> Result<(PartialSemigroup, Vec<usize>)> {
        self.check_subset(t)?;
        let members = t.to_vec();
        let mut index = vec![usize::MAX; self.size];
        for (i, &m) in members.iter().enumerate() {
            index[m] = i;
        }
        let mut rows = Vec::with_capacity(members.len());
        for &x in &members {
            let mut row = Vec::with_capacity(members.len());
            for &y in &members {
                let v = match self.product(x, y) {
                    Some(p) if t.contains(p) => Some(index[p]),
                    Some(p) => {
                        return Err(Error::Precondition(format!(
                            "{}∙{} = {} leaves the subset",
                            x, y, p
                        )))
                    }
                    None => None,
                };
                row.push(v);
            }
            rows.push(row);
        }
        let mut sub = PartialSemigroup::from_rows(rows)?;
        if let Some(names) = &self.names {
            sub.names = Some(members.iter().map(|&m| names[m].clone()).collect());
        }
        Ok((sub, members))
    }

    /// The transposed (opposite) table: `x ∘ y = y ∙ x`.
    pub fn transpose(&self) -> PartialSemigroup {
        let t = PartialSemigroup::from_fn(self.size, |x, y| self.product(y, x));
        PartialSemigroup {
            names: self.names.clone(),
            ..t
        }
    }

    /// `S ∪ {e}` with `e` a new two-sided identity at index `size`.
    pub fn adjoin_identity(&self) -> Result<PartialSemigroup> {
        let n = self.size;
        let ext = PartialSemigroup::from_fn(n + 1, |x, y| {
            if x == n {
                Some(y)
            } else if y == n {
                Some(x)
            } else {
                self.product(x, y)
            }
        });
        let ext = match &self.names {
            Some(names) => {
                let mut names = names.clone();
                names.push("e".into());
                ext.with_names(names)?
            }
            None => ext,
        };
        let report = ext.validate();
        if !report.ok && self.validate().ok {
            return Err(Error::Verification(format!(
                "adjoined identity broke weak associativity at {:?}",
                report.violations[0].triple
            )));
        }
        Ok(ext)
    }
}

/// Keeps the distinct inclusion-minimal sets, ordered by least element.
pub(crate) fn inclusion_minimal(mut sets: Vec<SubsetMask>) -> Vec<SubsetMask> {
    sets.sort_by_key(|s| (s.count(), s.to_vec()));
    sets.dedup();
    let mut kept: Vec<SubsetMask> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort_by_key(|s| s.to_vec());
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_zero(n: usize) -> PartialSemigroup {
        PartialSemigroup::from_fn(n, |_, y| Some(y))
    }

    fn z2() -> PartialSemigroup {
        PartialSemigroup::from_fn(2, |x, y| Some((x + y) % 2))
    }

    /// `P_f({1,2})`: 0 = {1}, 1 = {2}, 2 = {1,2}.
    fn pf2() -> PartialSemigroup {
        PartialSemigroup::from_fn(3, |x, y| match (x, y) {
            (0, 1) | (1, 0) => Some(2),
            _ => None,
        })
    }

    fn set(n: usize, xs: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn structural_errors_are_distinct() {
        let err = PartialSemigroup::from_rows(vec![vec![Some(0), Some(2)], vec![None, None]]);
        assert!(matches!(err, Err(Error::EntryOutOfRange { value: 2, .. })));
        let err = PartialSemigroup::from_rows(vec![vec![Some(0)], vec![None, None]]);
        assert!(matches!(err, Err(Error::Shape { .. })));
    }

    #[test]
    fn validate_examples() {
        assert!(right_zero(3).validate().ok);
        assert!(pf2().validate().ok);
        let nil = PartialSemigroup::from_fn(2, |x, y| (x == 0 && y == 0).then_some(1));
        assert!(nil.validate().ok);
        // 0∙0 = 0, 0∙1 = 1 and nothing else: every triple agrees.
        let mono = PartialSemigroup::from_fn(2, |x, y| match (x, y) {
            (0, 0) => Some(0),
            (0, 1) => Some(1),
            _ => None,
        });
        assert!(mono.validate().ok);
        // 0∙1 = 1, 1∙0 = 0: (0∙1)∙0 = 0 but 0∙(1∙0) = 0∙0 is undefined, and so on.
        let bad = PartialSemigroup::from_fn(2, |x, y| match (x, y) {
            (0, 1) => Some(1),
            (1, 0) => Some(0),
            _ => None,
        });
        let report = bad.validate();
        assert!(!report.ok);
        let triples: Vec<_> = report.violations.iter().map(|v| v.triple).collect();
        assert_eq!(triples, vec![(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)]);
        assert_eq!(
            report.violations[1],
            Violation {
                triple: (0, 1, 0),
                kind: ViolationKind::OneSideUndefined,
                left: Some(0),
                right: None,
            }
        );
    }

    #[test]
    fn right_and_left_sets() {
        let pf = pf2();
        assert_eq!(pf.right_set(0), &set(3, &[1]));
        assert!(pf.left_set(2).is_empty());
        assert!(right_zero(3).left_set(1).is_full());
        assert!(z2().right_set(1).is_full());
    }

    #[test]
    fn family_sets_and_adequacy() {
        let pf = pf2();
        assert_eq!(pf.right_set_family(&set(3, &[0])).unwrap(), set(3, &[1]));
        assert!(matches!(
            pf.right_set_family(&SubsetMask::empty(3)),
            Err(Error::EmptySubset(_))
        ));
        assert!(!pf.is_right_adequate());
        assert!(pf.delta_r().is_empty());
        assert!(z2().is_right_adequate());
        assert!(right_zero(3).delta_r().is_full());
    }

    #[test]
    fn quotients() {
        let z = z2();
        assert_eq!(z.quotient_set(1, &set(2, &[0])), set(2, &[1]));
        assert_eq!(z.quotient_set(0, &z.full_set()), *z.right_set(0));
        assert!(z.quotient_set(0, &z.empty_set()).is_empty());
    }

    #[test]
    fn idempotents_and_ideals() {
        assert!(right_zero(3).idempotents().is_full());
        assert!(pf2().idempotents().is_empty());
        assert_eq!(z2().idempotents(), set(2, &[0]));

        let rz = right_zero(3);
        assert!(rz.is_left_ideal(&set(3, &[0])).unwrap());
        assert!(!rz.is_right_ideal(&set(3, &[0])).unwrap());
        assert!(!z2().is_left_ideal(&set(2, &[0])).unwrap());
        assert!(z2().is_ideal(&z2().full_set()).unwrap());
        assert!(rz.is_left_ideal(&SubsetMask::empty(3)).is_err());
    }

    #[test]
    fn principal_ideal_examples() {
        let p = right_zero(3).principal_ideals(1).unwrap();
        assert_eq!(p.left, set(3, &[1]));
        assert!(p.right.is_full());
        let p = z2().principal_ideals(0).unwrap();
        assert!(p.left.is_full() && p.right.is_full());
        let p = pf2().principal_ideals(2).unwrap();
        assert!(p.left.is_empty() && p.right.is_empty() && p.two_sided.is_empty());
    }

    #[test]
    fn minimal_left_ideals_and_kernel() {
        let rz = right_zero(3);
        assert_eq!(
            rz.minimal_left_ideals(),
            vec![set(3, &[0]), set(3, &[1]), set(3, &[2])]
        );
        assert_eq!(rz.smallest_ideal(), Some(rz.full_set()));
        assert_eq!(z2().minimal_left_ideals(), vec![z2().full_set()]);
        // {a, b, z} with a∙a = a, b∙b = b and every other product z.
        let sl = PartialSemigroup::from_fn(3, |x, y| Some(if x == y { x } else { 2 }));
        assert!(sl.validate().ok);
        assert_eq!(sl.smallest_ideal(), Some(set(3, &[2])));
        assert_eq!(z2().minimal_idempotents(), set(2, &[0]));
        assert!(rz.minimal_idempotents().is_full());
        assert!(pf2().minimal_idempotents().is_empty());
    }

    #[test]
    fn adjoin_identity_preserves_table() {
        let ext = pf2().adjoin_identity().unwrap();
        assert_eq!(ext.size(), 4);
        assert_eq!(ext.product(0, 1), Some(2));
        assert_eq!(ext.product(0, 0), None);
        assert_eq!(ext.product(3, 3), Some(3));
        assert_eq!(ext.product(2, 3), Some(2));
        assert!(ext.validate().ok);
    }

    #[test]
    fn restrict_requires_closure() {
        let z = z2();
        assert!(z.restrict(&set(2, &[1])).is_err());
        let (sub, members) = z.restrict(&set(2, &[0])).unwrap();
        assert_eq!(members, vec![0]);
        assert_eq!(sub.product(0, 0), Some(0));
    }
}
