//! Partial groups and the structure of minimal left ideals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::PartialSemigroup;
use crate::subset::SubsetMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    LeftIdentityLeftInverse,
    TwoSided,
    RightIdentityRightInverse,
    NotAPartialGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialGroupCertificate {
    pub kind: CertificateKind,
    pub identity: Option<usize>,
    /// `inverse_map[x]` is an inverse of `x` for `identity`.
    pub inverse_map: Vec<Option<usize>>,
    /// An element with no inverse for the first left identity found.
    pub failure_witness: Option<usize>,
}

impl PartialGroupCertificate {
    pub fn is_partial_group(&self) -> bool {
        self.kind != CertificateKind::NotAPartialGroup
    }

    /// Replays the identity and inverse axioms for the recorded kind.
    pub fn replay(&self, s: &PartialSemigroup) -> bool {
        let Some(e) = self.identity else {
            return self.kind == CertificateKind::NotAPartialGroup;
        };
        let left_id = is_left_identity_in(s, &s.full_set(), e);
        let right_id = is_right_identity_in(s, &s.full_set(), e);
        let inverses = |check: &dyn Fn(usize, usize) -> bool| {
            self.inverse_map.len() == s.size()
                && (0..s.size()).all(|x| self.inverse_map[x].is_some_and(|y| check(x, y)))
        };
        match self.kind {
            CertificateKind::TwoSided => {
                left_id
                    && right_id
                    && inverses(&|x, y| s.product(y, x) == Some(e) && s.product(x, y) == Some(e))
            }
            CertificateKind::LeftIdentityLeftInverse => {
                left_id && inverses(&|x, y| s.product(y, x) == Some(e))
            }
            CertificateKind::RightIdentityRightInverse => {
                right_id && inverses(&|x, y| s.product(x, y) == Some(e))
            }
            CertificateKind::NotAPartialGroup => match self.failure_witness {
                Some(x) => left_id && !has_left_inverse_in(s, &s.full_set(), e, x),
                None => false,
            },
        }
    }
}

/// `e` is idempotent, lies in `g`, and `e∙s = s` for every `s ∈ g`.
fn is_left_identity_in(s: &PartialSemigroup, g: &SubsetMask, e: usize) -> bool {
    g.contains(e) && s.is_idempotent(e) && g.iter().all(|x| s.product(e, x) == Some(x))
}

fn is_right_identity_in(s: &PartialSemigroup, g: &SubsetMask, e: usize) -> bool {
    g.contains(e) && s.is_idempotent(e) && g.iter().all(|x| s.product(x, e) == Some(x))
}

fn left_inverse_in(s: &PartialSemigroup, g: &SubsetMask, e: usize, x: usize) -> Option<usize> {
    g.intersection(s.left_set(x))
        .iter()
        .find(|&y| s.product(y, x) == Some(e))
}

fn has_left_inverse_in(s: &PartialSemigroup, g: &SubsetMask, e: usize, x: usize) -> bool {
    left_inverse_in(s, g, e, x).is_some()
}

fn left_identities(s: &PartialSemigroup) -> Vec<usize> {
    let full = s.full_set();
    (0..s.size()).filter(|&e| is_left_identity_in(s, &full, e)).collect()
}

fn right_identities(s: &PartialSemigroup) -> Vec<usize> {
    let full = s.full_set();
    (0..s.size()).filter(|&e| is_right_identity_in(s, &full, e)).collect()
}

/// Does `g` (closed under defined products) form a partial group with left
/// identity `e`?
pub fn is_partial_group_on(s: &PartialSemigroup, g: &SubsetMask, e: usize) -> bool {
    s.is_closed(g)
        && is_left_identity_in(s, g, e)
        && g.iter().all(|x| has_left_inverse_in(s, g, e, x))
}

pub fn partial_group_check(s: &PartialSemigroup) -> PartialGroupCertificate {
    let full = s.full_set();
    let lefts = left_identities(s);
    for &e in &lefts {
        let inverses: Vec<Option<usize>> =
            (0..s.size()).map(|x| left_inverse_in(s, &full, e, x)).collect();
        if inverses.iter().all(Option::is_some) {
            let two_sided: Vec<Option<usize>> = (0..s.size())
                .map(|x| {
                    s.left_set(x)
                        .intersection(s.right_set(x))
                        .iter()
                        .find(|&y| s.product(y, x) == Some(e) && s.product(x, y) == Some(e))
                })
                .collect();
            if is_right_identity_in(s, &full, e) && two_sided.iter().all(Option::is_some) {
                return PartialGroupCertificate {
                    kind: CertificateKind::TwoSided,
                    identity: Some(e),
                    inverse_map: two_sided,
                    failure_witness: None,
                };
            }
            return PartialGroupCertificate {
                kind: CertificateKind::LeftIdentityLeftInverse,
                identity: Some(e),
                inverse_map: inverses,
                failure_witness: None,
            };
        }
    }
    for e in right_identities(s) {
        let inverses: Vec<Option<usize>> = (0..s.size())
            .map(|x| s.right_set(x).iter().find(|&y| s.product(x, y) == Some(e)))
            .collect();
        if inverses.iter().all(Option::is_some) {
            return PartialGroupCertificate {
                kind: CertificateKind::RightIdentityRightInverse,
                identity: Some(e),
                inverse_map: inverses,
                failure_witness: None,
            };
        }
    }
    let (identity, failure_witness) = match lefts.first() {
        Some(&e) => (
            Some(e),
            (0..s.size()).find(|&x| !has_left_inverse_in(s, &full, e, x)),
        ),
        None => (None, None),
    };
    PartialGroupCertificate {
        kind: CertificateKind::NotAPartialGroup,
        identity,
        inverse_map: vec![None; s.size()],
        failure_witness,
    }
}

/// The three partial-group clauses, each evaluated by its own search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupClauses {
    /// Some left identity with left inverses for every element.
    pub a: bool,
    /// Some two-sided identity with two-sided inverses in `R(x) ∩ L(x)`.
    pub b: bool,
    /// A left identity exists and every left identity admits left inverses.
    pub c: bool,
}

impl GroupClauses {
    pub fn agree(&self) -> bool {
        self.a == self.b && self.b == self.c
    }
}

pub fn group_clauses(s: &PartialSemigroup) -> GroupClauses {
    let full = s.full_set();
    let lefts = left_identities(s);
    let inverses_for = |e: usize| (0..s.size()).all(|x| has_left_inverse_in(s, &full, e, x));
    let a = lefts.iter().any(|&e| inverses_for(e));
    let b = (0..s.size()).any(|e| {
        is_left_identity_in(s, &full, e)
            && is_right_identity_in(s, &full, e)
            && (0..s.size()).all(|x| {
                s.left_set(x)
                    .intersection(s.right_set(x))
                    .iter()
                    .any(|y| s.product(y, x) == Some(e) && s.product(x, y) == Some(e))
            })
    });
    let c = !lefts.is_empty() && lefts.iter().all(|&e| inverses_for(e));
    GroupClauses { a, b, c }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupEquivalenceReport {
    pub left: GroupClauses,
    /// Clauses evaluated on the opposite table, i.e. the right-sided forms.
    pub right: GroupClauses,
    pub agreement: bool,
}

/// Evaluates the left-sided clauses and their right-sided mirrors; the
/// mirrors must agree with each other and with partial-group status.
pub fn partial_group_equivalence(s: &PartialSemigroup) -> GroupEquivalenceReport {
    let left = group_clauses(s);
    let right = group_clauses(&s.transpose());
    let agreement = left.agree() && right.agree() && left.a == right.a;
    GroupEquivalenceReport {
        left,
        right,
        agreement,
    }
}

/// `G × Y → S`, `(g, y) ↦ g∙y`, restricted to pairs with a defined product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub identity: usize,
    pub g: SubsetMask,
    pub y: SubsetMask,
    pub phi: Vec<((usize, usize), usize)>,
}

impl Decomposition {
    pub fn phi_domain(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.phi.iter().map(|&(pair, _)| pair)
    }
}

/// Why the decomposition hypothesis fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HypothesisFailure {
    NoLeftIdentity,
    /// Every left identity has an element without a right inverse; one per
    /// left identity.
    MissingRightInverse(Vec<(usize, usize)>),
}

/// A left identity `e` with right inverses for every element.
pub fn decomposition_identity(s: &PartialSemigroup) -> std::result::Result<usize, HypothesisFailure> {
    let lefts = left_identities(s);
    if lefts.is_empty() {
        return Err(HypothesisFailure::NoLeftIdentity);
    }
    let mut missing = Vec::new();
    for e in lefts {
        match (0..s.size()).find(|&x| !s.right_set(x).iter().any(|y| s.product(x, y) == Some(e))) {
            None => return Ok(e),
            Some(x) => missing.push((e, x)),
        }
    }
    Err(HypothesisFailure::MissingRightInverse(missing))
}

/// Decomposes `S` as `G∙Y` with `G = S∙e` and `Y = E(S)`, and verifies the
/// right-zero, partial-group, bijection, and homomorphism claims.
pub fn decompose(s: &PartialSemigroup) -> Result<Decomposition> {
    let e = decomposition_identity(s).map_err(|f| match f {
        HypothesisFailure::NoLeftIdentity => Error::Hypothesis("no left identity".into()),
        HypothesisFailure::MissingRightInverse(m) => Error::Hypothesis(format!(
            "element {} has no right inverse for left identity {}",
            m[0].1, m[0].0
        )),
    })?;
    let g = s.set_times(&s.full_set(), e);
    let y = s.idempotents();
    let mut phi = Vec::new();
    for a in g.iter() {
        for b in y.iter() {
            if let Some(p) = s.product(a, b) {
                phi.push(((a, b), p));
            }
        }
    }
    let d = Decomposition {
        identity: e,
        g,
        y,
        phi,
    };
    verify_decomposition(s, &d).map_err(Error::Verification)?;
    Ok(d)
}

/// The checks behind [`decompose`], usable on any claimed decomposition.
pub fn verify_decomposition(s: &PartialSemigroup, d: &Decomposition) -> std::result::Result<(), String> {
    for a in d.y.iter() {
        for b in d.y.iter() {
            if let Some(p) = s.product(a, b) {
                if p != b {
                    return Err(format!("Y is not right zero: {a}∙{b} = {p}"));
                }
            }
        }
    }
    if !is_partial_group_on(s, &d.g, d.identity) {
        return Err("G is not a partial group".into());
    }
    let mut hit = vec![0usize; s.size()];
    for &((a, b), p) in &d.phi {
        if !d.g.contains(a) || !d.y.contains(b) || s.product(a, b) != Some(p) {
            return Err(format!("φ({a},{b}) is not g∙y"));
        }
        hit[p] += 1;
    }
    if let Some(x) = hit.iter().position(|&c| c != 1) {
        return Err(format!("φ hits {x} {} times", hit[x]));
    }
    for &((g1, y1), p1) in &d.phi {
        for &((g2, y2), p2) in &d.phi {
            let lhs = s.product(p1, p2);
            let rhs = match (s.product(g1, g2), s.product(y1, y2)) {
                (Some(g), Some(y)) => s.product(g, y),
                _ => None,
            };
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    return Err(format!("φ is not multiplicative at ({g1},{y1})∙({g2},{y2})"));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerGroup {
    /// `e∙L∙e`
    pub corner: SubsetMask,
    /// `e∙L`
    pub left_translate: SubsetMask,
    pub is_partial_group: bool,
    pub coincides: bool,
}

fn require_minimal_left_ideal(s: &PartialSemigroup, l: &SubsetMask) -> Result<()> {
    s.check_subset(l)?;
    if !s.minimal_left_ideals().contains(l) {
        return Err(Error::Precondition(format!("{l} is not a minimal left ideal")));
    }
    Ok(())
}

pub fn corner_group(s: &PartialSemigroup, l: &SubsetMask, e: usize) -> Result<CornerGroup> {
    require_minimal_left_ideal(s, l)?;
    s.check_element(e)?;
    if !l.contains(e) || !s.is_idempotent(e) {
        return Err(Error::Precondition(format!("{e} is not an idempotent of {l}")));
    }
    let left_translate = s.times_set(e, l);
    let corner = s.set_times(&left_translate, e);
    Ok(CornerGroup {
        is_partial_group: is_partial_group_on(s, &corner, e),
        coincides: corner == left_translate,
        corner,
        left_translate,
    })
}

/// `L∙a` for `a ∈ R(L)`; fails verification if the translate is not a
/// minimal left ideal.
pub fn translate_minimal_left_ideal(s: &PartialSemigroup, l: &SubsetMask, a: usize) -> Result<SubsetMask> {
    require_minimal_left_ideal(s, l)?;
    s.check_element(a)?;
    if !s.right_of(l).contains(a) {
        return Err(Error::Precondition(format!("{a} is not composable with all of {l}")));
    }
    let t = s.set_times(l, a);
    if !s.minimal_left_ideals().contains(&t) {
        return Err(Error::Verification(format!("{l}∙{a} = {t} is not a minimal left ideal")));
    }
    Ok(t)
}

/// For minimal left ideals `L` and `T` with `R(L) ∩ T ≠ ∅`: is `T = L∙a`
/// for every `a ∈ R(L) ∩ T`? Returns the offending `(L, T, a)` triples.
pub fn translation_converse_failures(s: &PartialSemigroup) -> Vec<(SubsetMask, SubsetMask, usize)> {
    let mins = s.minimal_left_ideals();
    let mut out = Vec::new();
    for l in &mins {
        let r = s.right_of(l);
        for t in &mins {
            for a in r.intersection(t).iter() {
                if s.set_times(l, a) != *t {
                    out.push((l.clone(), t.clone(), a));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub ideal: SubsetMask,
    pub identity: usize,
    /// `E(L)`
    pub x: SubsetMask,
    /// `e∙L∙e`
    pub g: SubsetMask,
    pub x_left_zero: bool,
    pub g_partial_group: bool,
    /// Elements of `L` without exactly one factorization `x∙g`.
    pub non_unique: Vec<usize>,
}

impl Factorization {
    pub fn holds(&self) -> bool {
        self.x_left_zero && self.g_partial_group && self.non_unique.is_empty()
    }
}

/// `L = X∙G` for each minimal left ideal with an idempotent, using its
/// least idempotent as `e`.
pub fn left_ideal_factorizations(s: &PartialSemigroup) -> Vec<Factorization> {
    let idem = s.idempotents();
    let mut out = Vec::new();
    for l in s.minimal_left_ideals() {
        let x = l.intersection(&idem);
        let Some(e) = x.first() else { continue };
        let g = s.set_times(&s.times_set(e, &l), e);
        let x_left_zero = x
            .iter()
            .all(|a| x.iter().all(|b| s.product(a, b).is_none_or(|p| p == a)));
        let mut count = vec![0usize; s.size()];
        for a in x.iter() {
            for b in g.iter() {
                if let Some(p) = s.product(a, b) {
                    count[p] += 1;
                }
            }
        }
        let non_unique = l.iter().filter(|&p| count[p] != 1).collect();
        out.push(Factorization {
            g_partial_group: is_partial_group_on(s, &g, e),
            ideal: l,
            identity: e,
            x,
            g,
            x_left_zero,
            non_unique,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn set(n: usize, xs: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn group_certificate() {
        let z2 = families::cyclic_group(2);
        let c = partial_group_check(&z2);
        assert_eq!(c.kind, CertificateKind::TwoSided);
        assert_eq!(c.identity, Some(0));
        assert_eq!(c.inverse_map, vec![Some(0), Some(1)]);
        assert!(c.replay(&z2));
    }

    #[test]
    fn non_groups() {
        let rz = families::right_zero(3);
        let c = partial_group_check(&rz);
        assert_eq!(c.kind, CertificateKind::NotAPartialGroup);
        assert_eq!(c.identity, Some(0));
        assert_eq!(c.failure_witness, Some(1));
        assert!(c.replay(&rz));
        let pf = families::pf_disjoint_union(2).unwrap();
        let c = partial_group_check(&pf);
        assert_eq!(c.kind, CertificateKind::NotAPartialGroup);
        assert_eq!(c.identity, None);
    }

    #[test]
    fn clause_agreement() {
        let z2 = families::cyclic_group(2);
        let r = partial_group_equivalence(&z2);
        assert!(r.agreement && r.left.a && r.left.b && r.left.c);
        let rz = families::right_zero(3);
        let r = partial_group_equivalence(&rz);
        assert!(r.agreement && !r.left.a && !r.left.b && !r.left.c);
    }

    #[test]
    fn decompose_left_group() {
        // index a*2 + i: a ∈ Z₂, i ∈ {0, 1}; (a,i)∙(b,j) = (a+b, j).
        let s = families::left_group(2, 2);
        let d = decompose(&s).unwrap();
        assert_eq!(d.identity, 0);
        assert_eq!(d.g, set(4, &[0, 2]));
        assert_eq!(d.y, set(4, &[0, 1]));
        assert_eq!(d.phi.len(), 4);
    }

    #[test]
    fn decompose_group_and_right_zero() {
        let z2 = families::cyclic_group(2);
        let d = decompose(&z2).unwrap();
        assert!(d.g.is_full());
        assert_eq!(d.y, set(2, &[0]));
        assert_eq!(d.phi, vec![((0, 0), 0), ((1, 0), 1)]);
        // e = 0 is a left identity and x∙0 = 0, so the hypothesis holds.
        let rz = families::right_zero(3);
        let d = decompose(&rz).unwrap();
        assert_eq!(d.g, set(3, &[0]));
        assert!(d.y.is_full());
    }

    #[test]
    fn decompose_hypothesis_failure() {
        let pf = families::pf_disjoint_union(2).unwrap();
        assert!(matches!(decompose(&pf), Err(Error::Hypothesis(_))));
        let lz = families::left_zero(2);
        assert!(matches!(decompose(&lz), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn corner_groups() {
        let z2 = families::cyclic_group(2);
        let c = corner_group(&z2, &z2.full_set(), 0).unwrap();
        assert!(c.is_partial_group && c.coincides && c.corner.is_full());
        let rz = families::right_zero(3);
        let c = corner_group(&rz, &set(3, &[1]), 1).unwrap();
        assert_eq!(c.corner, set(3, &[1]));
        assert!(c.is_partial_group);
        let lg = families::left_group(2, 2);
        let l = set(4, &[0, 2]);
        let c = corner_group(&lg, &l, 0).unwrap();
        assert_eq!(c.corner, l);
        assert!(c.is_partial_group);
        assert!(corner_group(&rz, &set(3, &[0, 1]), 0).is_err());
    }

    #[test]
    fn translates() {
        let rz = families::right_zero(3);
        assert_eq!(
            translate_minimal_left_ideal(&rz, &set(3, &[0]), 2).unwrap(),
            set(3, &[2])
        );
        let z2 = families::cyclic_group(2);
        assert!(translate_minimal_left_ideal(&z2, &z2.full_set(), 1)
            .unwrap()
            .is_full());
        for (m, n) in families::LEFT_GROUP_SHAPES {
            assert!(translation_converse_failures(&families::left_group(m, n)).is_empty());
        }
    }

    #[test]
    fn factorization_in_left_groups() {
        for (m, n) in families::LEFT_GROUP_SHAPES {
            let s = families::left_group(m, n);
            for f in left_ideal_factorizations(&s) {
                assert!(f.holds(), "{m}x{n}: {f:?}");
            }
        }
    }
}
