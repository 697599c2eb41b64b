//! Finite partial dynamical systems: a partial semigroup acting on a finite
//! point set by partial maps.
//!
//! The topology is discrete throughout, so every set is closed, every map is
//! continuous, and neighborhoods may be taken to be singletons.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Limits, Result};
use crate::largeness;
use crate::semigroup::{inclusion_minimal, PartialSemigroup};
use crate::subset::SubsetMask;

/// A partial self-map of `{0..carrier}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    carrier: usize,
    image: Vec<Option<u32>>,
}

/// A total self-map of `X ∪ {∞}`; `∞` is the index `carrier`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalMapInf {
    carrier: usize,
    image: Vec<u32>,
}

impl PartialMap {
    pub fn new(carrier: usize, image: Vec<Option<usize>>) -> Result<Self> {
        if image.len() != carrier {
            return Err(Error::Shape {
                expected: carrier,
                found: image.len(),
            });
        }
        let image = image
            .into_iter()
            .map(|v| match v {
                Some(v) if v >= carrier => Err(Error::IndexOutOfRange {
                    index: v,
                    size: carrier,
                }),
                v => Ok(v.map(|v| v as u32)),
            })
            .collect::<Result<_>>()?;
        Ok(PartialMap { carrier, image })
    }

    pub fn identity(carrier: usize) -> Self {
        PartialMap {
            carrier,
            image: (0..carrier as u32).map(Some).collect(),
        }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.image[x].map(|v| v as usize)
    }

    pub fn domain(&self) -> SubsetMask {
        SubsetMask::from_indices(
            self.carrier,
            (0..self.carrier).filter(|&x| self.image[x].is_some()),
        )
    }

    pub fn image_set(&self) -> SubsetMask {
        SubsetMask::from_indices(self.carrier, self.image.iter().flatten().map(|&v| v as usize))
    }

    pub fn images(&self) -> Vec<Option<usize>> {
        (0..self.carrier).map(|x| self.apply(x)).collect()
    }

    /// `self ∘ inner`: apply `inner` first. Defined at `x` when `x ∈ D_inner`
    /// and `inner(x) ∈ D_self`.
    pub fn compose(&self, inner: &PartialMap) -> PartialMap {
        assert_eq!(self.carrier, inner.carrier, "carrier mismatch");
        PartialMap {
            carrier: self.carrier,
            image: inner
                .image
                .iter()
                .map(|v| v.and_then(|y| self.image[y as usize]))
                .collect(),
        }
    }

    /// The `∞`-extension `f_∞`.
    pub fn extend(&self) -> TotalMapInf {
        let inf = self.carrier as u32;
        let mut image: Vec<u32> = self.image.iter().map(|v| v.unwrap_or(inf)).collect();
        image.push(inf);
        TotalMapInf {
            carrier: self.carrier,
            image,
        }
    }
}

impl TotalMapInf {
    pub fn new(carrier: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() != carrier + 1 {
            return Err(Error::Shape {
                expected: carrier + 1,
                found: image.len(),
            });
        }
        if let Some(&bad) = image.iter().find(|&&v| v > carrier) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: carrier + 1,
            });
        }
        Ok(TotalMapInf {
            carrier,
            image: image.into_iter().map(|v| v as u32).collect(),
        })
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn infinity(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize).collect()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &TotalMapInf) -> TotalMapInf {
        assert_eq!(self.carrier, inner.carrier, "carrier mismatch");
        TotalMapInf {
            carrier: self.carrier,
            image: inner.image.iter().map(|&y| self.image[y as usize]).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// Inverse of [`PartialMap::extend`]; rejects maps that move `∞`.
    pub fn restrict(&self) -> Result<PartialMap> {
        let inf = self.carrier as u32;
        if self.image[self.carrier] != inf {
            return Err(Error::Precondition(format!(
                "∞ is mapped to {}, not to itself",
                self.image[self.carrier]
            )));
        }
        Ok(PartialMap {
            carrier: self.carrier,
            image: self.image[..self.carrier]
                .iter()
                .map(|&v| (v != inf).then_some(v))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDynSystem {
    semigroup: PartialSemigroup,
    points: usize,
    point_names: Option<Vec<String>>,
    action: Vec<PartialMap>,
    acting: Vec<SubsetMask>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomViolationKind {
    /// `Dom(T_s)` is empty.
    EmptyDomain,
    /// No `s` acts on the point.
    UncoveredPoint,
    /// No single `s` acts on every point.
    NoCommonActor,
    /// `T_s(T_t(x))` is defined but `T_{s∙t}(x)` is not.
    CompositeUndefined,
    /// `T_{s∙t}(x)` is defined but `T_s(T_t(x))` is not.
    ProductUndefined,
    /// Both sides are defined and differ.
    Unequal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub kind: AxiomViolationKind,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub x: Option<usize>,
}

/// Outcome of checking the system axioms.
///
/// `ok` covers the composition law. Nonempty domains and the covering
/// conditions on `L(x)` are reported separately in `coverage_gaps`; finite
/// truncations of infinite examples typically fail them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PdsValidationReport {
    pub ok: bool,
    pub fully_covered: bool,
    pub violations: Vec<AxiomViolation>,
    pub coverage_gaps: Vec<AxiomViolation>,
    /// Axioms that hold automatically for finite discrete spaces.
    pub automatic: Vec<&'static str>,
}

impl PdsValidationReport {
    pub fn strict_ok(&self) -> bool {
        self.ok && self.fully_covered
    }
}

/// A point is uniformly recurrent when its return set is partially syndetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    /// Inclusion-minimal nonempty invariant sets.
    pub minimal: Vec<SubsetMask>,
    /// Invariant sets `Y` with every point's forward orbit hull equal to `Y`.
    pub orbit_minimal: Vec<SubsetMask>,
    /// Sets appearing in exactly one of the two lists.
    pub divergent: Vec<SubsetMask>,
}

impl PartialDynSystem {
    pub fn new(semigroup: PartialSemigroup, points: usize, action: Vec<PartialMap>) -> Result<Self> {
        if action.len() != semigroup.size() {
            return Err(Error::Shape {
                expected: semigroup.size(),
                found: action.len(),
            });
        }
        if let Some(m) = action.iter().find(|m| m.carrier() != points) {
            return Err(Error::Shape {
                expected: points,
                found: m.carrier(),
            });
        }
        let mut acting = vec![SubsetMask::empty(semigroup.size()); points];
        for (s, m) in action.iter().enumerate() {
            for x in m.domain().iter() {
                acting[x].insert(s);
            }
        }
        Ok(PartialDynSystem {
            semigroup,
            points,
            point_names: None,
            action,
            acting,
        })
    }

    pub fn with_point_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.points {
            return Err(Error::Shape {
                expected: self.points,
                found: names.len(),
            });
        }
        self.point_names = Some(names);
        Ok(self)
    }

    /// `X = S` with `T_s = λ_s`, i.e. `T_s(x) = s∙x` on `R(s)`.
    pub fn translation(s: &PartialSemigroup) -> Self {
        let n = s.size();
        let action = (0..n)
            .map(|a| PartialMap::new(n, (0..n).map(|x| s.product(a, x)).collect()).unwrap())
            .collect();
        let d = PartialDynSystem::new(s.clone(), n, action).unwrap();
        match s.names() {
            Some(names) => d.with_point_names(names.to_vec()).unwrap(),
            None => d,
        }
    }

    pub fn semigroup(&self) -> &PartialSemigroup {
        &self.semigroup
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn point_names(&self) -> Option<&[String]> {
        self.point_names.as_deref()
    }

    pub fn point_name(&self, x: usize) -> String {
        match &self.point_names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn map(&self, s: usize) -> &PartialMap {
        &self.action[s]
    }

    pub fn maps(&self) -> &[PartialMap] {
        &self.action
    }

    /// `T_s(x)`
    #[inline]
    pub fn act(&self, s: usize, x: usize) -> Option<usize> {
        self.action[s].apply(x)
    }

    /// `L(x) = {s : x ∈ Dom(T_s)}`.
    pub fn acting_set(&self, x: usize) -> &SubsetMask {
        &self.acting[x]
    }

    pub fn empty_points(&self) -> SubsetMask {
        SubsetMask::empty(self.points)
    }

    pub fn is_translation_system(&self) -> bool {
        let s = &self.semigroup;
        self.points == s.size()
            && (0..s.size()).all(|a| (0..s.size()).all(|x| self.act(a, x) == s.product(a, x)))
    }

    pub fn validate(&self) -> PdsValidationReport {
        let s = &self.semigroup;
        let mut violations = Vec::new();
        let mut gaps = Vec::new();
        for a in 0..s.size() {
            if self.action[a].domain().is_empty() {
                gaps.push(AxiomViolation {
                    kind: AxiomViolationKind::EmptyDomain,
                    s: Some(a),
                    t: None,
                    x: None,
                });
            }
        }
        let mut common = SubsetMask::full(s.size());
        for x in 0..self.points {
            if self.acting[x].is_empty() {
                gaps.push(AxiomViolation {
                    kind: AxiomViolationKind::UncoveredPoint,
                    s: None,
                    t: None,
                    x: Some(x),
                });
            }
            common.intersect_with(&self.acting[x]);
        }
        if self.points > 0 && common.is_empty() {
            gaps.push(AxiomViolation {
                kind: AxiomViolationKind::NoCommonActor,
                s: None,
                t: None,
                x: None,
            });
        }
        for a in 0..s.size() {
            for b in s.right_set(a).iter() {
                let ab = s.product(a, b).unwrap();
                for x in 0..self.points {
                    let composite = self.act(b, x).and_then(|y| self.act(a, y));
                    let direct = self.act(ab, x);
                    let kind = match (composite, direct) {
                        (Some(c), Some(d)) if c != d => AxiomViolationKind::Unequal,
                        (Some(_), None) => AxiomViolationKind::CompositeUndefined,
                        (None, Some(_)) => AxiomViolationKind::ProductUndefined,
                        _ => continue,
                    };
                    violations.push(AxiomViolation {
                        kind,
                        s: Some(a),
                        t: Some(b),
                        x: Some(x),
                    });
                }
            }
        }
        PdsValidationReport {
            ok: violations.is_empty(),
            fully_covered: gaps.is_empty(),
            violations,
            coverage_gaps: gaps,
            automatic: vec![
                "compact Hausdorff space",
                "compact domains",
                "continuity of each T_s",
            ],
        }
    }

    /// `Orb(x) = {T_s(x) : s ∈ L(x)}`.
    pub fn orbit(&self, x: usize) -> SubsetMask {
        SubsetMask::from_indices(
            self.points,
            self.acting[x].iter().map(|s| self.act(s, x).unwrap()),
        )
    }

    /// Points reachable from `x` by one or more maps.
    pub fn forward_hull(&self, x: usize) -> SubsetMask {
        let mut seen = self.orbit(x);
        let mut queue: VecDeque<usize> = seen.iter().collect();
        while let Some(y) = queue.pop_front() {
            for z in self.orbit(y).iter() {
                if !seen.contains(z) {
                    seen.insert(z);
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    /// `T_s(Y ∩ Dom(T_s)) ⊆ Y` for every `s`.
    pub fn is_invariant(&self, y: &SubsetMask) -> bool {
        y.iter().all(|x| self.orbit(x).is_subset(y))
    }

    /// The smallest invariant set containing `x`.
    pub fn invariant_hull(&self, x: usize) -> SubsetMask {
        let mut h = self.forward_hull(x);
        h.insert(x);
        h
    }

    /// All nonempty invariant sets, by exhaustive enumeration.
    pub fn invariant_sets(&self, limits: &Limits) -> Result<Vec<SubsetMask>> {
        limits.check_subsets("invariant set enumeration", self.points)?;
        Ok(SubsetMask::all(self.points)
            .filter(|y| !y.is_empty() && self.is_invariant(y))
            .collect())
    }

    /// Inclusion-minimal nonempty invariant sets. Each is the invariant hull
    /// of any of its points, so only hulls need comparing.
    pub fn minimal_subsystems(&self) -> Vec<SubsetMask> {
        inclusion_minimal((0..self.points).map(|x| self.invariant_hull(x)).collect())
    }

    /// Compares no-proper-subsystem minimality with the orbit-hull reading.
    pub fn minimality_report(&self) -> MinimalityReport {
        let minimal = self.minimal_subsystems();
        let mut orbit_minimal: Vec<SubsetMask> = (0..self.points)
            .map(|x| self.forward_hull(x))
            .filter(|h| !h.is_empty() && h.iter().all(|y| self.forward_hull(y) == *h))
            .collect();
        orbit_minimal.sort_by_key(|s| s.to_vec());
        orbit_minimal.dedup();
        let a: BTreeSet<Vec<usize>> = minimal.iter().map(|s| s.to_vec()).collect();
        let b: BTreeSet<Vec<usize>> = orbit_minimal.iter().map(|s| s.to_vec()).collect();
        let divergent = a
            .symmetric_difference(&b)
            .map(|v| SubsetMask::from_indices(self.points, v.iter().copied()))
            .collect();
        MinimalityReport {
            minimal,
            orbit_minimal,
            divergent,
        }
    }

    /// `{s ∈ L(y) : T_s(y) ∈ U}`.
    pub fn return_set(&self, y: usize, u: &SubsetMask) -> SubsetMask {
        SubsetMask::from_indices(
            self.semigroup.size(),
            self.acting[y]
                .iter()
                .filter(|&s| u.contains(self.act(s, y).unwrap())),
        )
    }

    /// Is the return set of `y` into `U` partially syndetic?
    pub fn returns_syndetically(&self, y: usize, u: &SubsetMask) -> bool {
        largeness::is_partially_syndetic(&self.semigroup, &self.return_set(y, u)).holds
    }

    /// `y` is uniformly recurrent: its return set into `{y}` is partially
    /// syndetic. Larger neighborhoods only enlarge the return set.
    pub fn is_uniformly_recurrent(&self, y: usize) -> bool {
        self.returns_syndetically(y, &SubsetMask::singleton(self.points, y))
    }

    pub fn uniformly_recurrent_points(&self) -> SubsetMask {
        SubsetMask::from_indices(
            self.points,
            (0..self.points).filter(|&y| self.is_uniformly_recurrent(y)),
        )
    }

    /// Some `s ∈ L(x) ∩ L(y)` with `T_s(x) = T_s(y)`.
    pub fn proximity_witness(&self, x: usize, y: usize) -> Option<usize> {
        self.acting[x]
            .intersection(&self.acting[y])
            .iter()
            .find(|&s| self.act(s, x) == self.act(s, y))
    }

    pub fn is_proximal(&self, x: usize, y: usize) -> bool {
        self.proximity_witness(x, y).is_some()
    }

    pub fn proximal_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.points {
            for y in 0..self.points {
                if self.is_proximal(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The enveloping semigroup: the closure of `{T_s}` under composition,
    /// computed on `∞`-extensions.
    pub fn enveloping(&self, limits: &Limits) -> Result<EnvelopingSemigroup> {
        EnvelopingSemigroup::close(self, limits)
    }
}

/// Closed set of `∞`-extended maps generated by the action.
#[derive(Debug, Clone)]
pub struct EnvelopingSemigroup {
    elements: Vec<TotalMapInf>,
    /// `generator_index[s]` is the position of `T_s` in `elements`.
    generator_index: Vec<usize>,
}

/// Outcome of a capped closure that gave up.
#[derive(Debug, Clone)]
pub struct PartialClosure {
    pub discovered: Vec<TotalMapInf>,
}

impl EnvelopingSemigroup {
    fn close(d: &PartialDynSystem, limits: &Limits) -> Result<Self> {
        let gens: Vec<TotalMapInf> = d.maps().iter().map(PartialMap::extend).collect();
        let mut elements: Vec<TotalMapInf> = Vec::new();
        let mut index: HashMap<TotalMapInf, usize> = HashMap::new();
        for g in &gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                elements.push(g.clone());
            }
        }
        // Right multiplication by generators reaches every product.
        let mut i = 0;
        while i < elements.len() {
            for g in &gens {
                for c in [elements[i].compose(g), g.compose(&elements[i])] {
                    if !index.contains_key(&c) {
                        if elements.len() >= limits.enveloping_cap {
                            return Err(Error::CapExceeded {
                                what: "enveloping closure",
                                size: elements.len() + 1,
                                cap: limits.enveloping_cap,
                            });
                        }
                        index.insert(c.clone(), elements.len());
                        elements.push(c);
                    }
                }
            }
            i += 1;
        }
        elements.sort();
        let index: HashMap<&TotalMapInf, usize> =
            elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let generator_index = gens.iter().map(|g| index[g]).collect();
        Ok(EnvelopingSemigroup {
            elements,
            generator_index,
        })
    }

    pub fn elements(&self) -> &[TotalMapInf] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generator_index(&self) -> &[usize] {
        &self.generator_index
    }

    pub fn position(&self, m: &TotalMapInf) -> Option<usize> {
        self.elements.binary_search(m).ok()
    }

    /// The composition table with `f∙g = f ∘ g`.
    pub fn to_semigroup(&self) -> PartialSemigroup {
        PartialSemigroup::from_fn(self.len(), |a, b| {
            self.position(&self.elements[a].compose(&self.elements[b]))
        })
    }

    pub fn is_composition_closed(&self) -> bool {
        self.elements.iter().all(|f| {
            self.elements
                .iter()
                .all(|g| self.position(&f.compose(g)).is_some())
        })
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].is_idempotent())
            .collect()
    }
}

/// Intertwining check for a point map between two systems over one semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub surjective: bool,
    /// `(s, x)` with `x ∈ Dom(T_s)`, `φ(x) ∈ Dom(R_s)` and `R_s(φ(x)) ≠ φ(T_s(x))`.
    pub mismatches: Vec<(usize, usize)>,
    /// `(s, x)` where exactly one of `x ∈ Dom(T_s)` and `φ(x) ∈ Dom(R_s)` holds.
    pub incoherent: Vec<(usize, usize)>,
}

impl HomomorphismReport {
    pub fn holds(&self) -> bool {
        self.surjective && self.mismatches.is_empty()
    }
}

/// Checks `R_s ∘ φ = φ ∘ T_s`.
pub fn verify_dynamical_homomorphism(
    source: &PartialDynSystem,
    target: &PartialDynSystem,
    phi: &[usize],
) -> Result<HomomorphismReport> {
    if source.semigroup() != target.semigroup() {
        return Err(Error::Precondition("systems act by different semigroups".into()));
    }
    if phi.len() != source.points() {
        return Err(Error::Shape {
            expected: source.points(),
            found: phi.len(),
        });
    }
    if let Some(&bad) = phi.iter().find(|&&p| p >= target.points()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: target.points(),
        });
    }
    let surjective =
        SubsetMask::from_indices(target.points(), phi.iter().copied()).is_full();
    let mut mismatches = Vec::new();
    let mut incoherent = Vec::new();
    for s in 0..source.semigroup().size() {
        for x in 0..source.points() {
            match (source.act(s, x), target.act(s, phi[x])) {
                (Some(tx), Some(r)) => {
                    if r != phi[tx] {
                        mismatches.push((s, x));
                    }
                }
                (None, None) => {}
                _ => incoherent.push((s, x)),
            }
        }
    }
    Ok(HomomorphismReport {
        surjective,
        mismatches,
        incoherent,
    })
}

/// Per-point clause values for the recurrence characterization, for one
/// minimal left ideal `L` of the acting semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceClauses {
    pub ideal: SubsetMask,
    pub point: usize,
    /// uniformly recurrent
    pub a: bool,
    /// some `u ∈ L` fixes the point
    pub b: bool,
    /// some idempotent `e ∈ L` fixes the point
    pub c: bool,
    /// the point is `T_e(y)` for an idempotent `e ∈ L`
    pub d: bool,
}

impl RecurrenceClauses {
    pub fn agree(&self) -> bool {
        self.a == self.b && self.b == self.c && self.c == self.d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub clauses: Vec<RecurrenceClauses>,
    pub agreement: bool,
}

/// Evaluates the four recurrence clauses at every point for every minimal
/// left ideal of the acting semigroup.
pub fn recurrence_check(d: &PartialDynSystem) -> Result<RecurrenceReport> {
    let s = d.semigroup();
    let ideals = s.minimal_left_ideals();
    if ideals.is_empty() {
        return Err(Error::Precondition("no minimal left ideal".into()));
    }
    let e = s.idempotents();
    let ur = d.uniformly_recurrent_points();
    let mut clauses = Vec::new();
    for l in &ideals {
        let idem = l.intersection(&e);
        for x in 0..d.points() {
            let acting = d.acting_set(x);
            let b = l.intersection(acting).iter().any(|u| d.act(u, x) == Some(x));
            let c = idem.intersection(acting).iter().any(|u| d.act(u, x) == Some(x));
            let dd = idem
                .iter()
                .any(|u| (0..d.points()).any(|y| d.act(u, y) == Some(x)));
            clauses.push(RecurrenceClauses {
                ideal: l.clone(),
                point: x,
                a: ur.contains(x),
                b,
                c,
                d: dd,
            });
        }
    }
    let agreement = clauses.iter().all(RecurrenceClauses::agree);
    Ok(RecurrenceReport { clauses, agreement })
}

/// One pair in the minimal-idempotent characterization of proximal,
/// uniformly recurrent targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub x: usize,
    pub y: usize,
    /// A minimal idempotent `u` with `x ∈ Dom(T_u)` and `T_u(x) = y`.
    pub via_idempotent: Option<usize>,
    pub proximal: bool,
    pub recurrent: bool,
}

impl PairVerdict {
    pub fn agree(&self) -> bool {
        self.via_idempotent.is_some() == (self.proximal && self.recurrent)
    }
}

/// Compares `∃ minimal idempotent u: T_u(x) = y` with `(x, y)` proximal and
/// `y` uniformly recurrent, over every pair.
pub fn minimal_idempotent_pairs(d: &PartialDynSystem) -> Vec<PairVerdict> {
    let minimal = d.semigroup().minimal_idempotents();
    let ur = d.uniformly_recurrent_points();
    let mut out = Vec::new();
    for x in 0..d.points() {
        for y in 0..d.points() {
            let via_idempotent = minimal
                .intersection(d.acting_set(x))
                .iter()
                .find(|&u| d.act(u, x) == Some(y));
            out.push(PairVerdict {
                x,
                y,
                via_idempotent,
                proximal: d.is_proximal(x, y),
                recurrent: ur.contains(y),
            });
        }
    }
    out
}

/// Invariant sets and minimal subsystems of a translation system compared
/// with left ideals and minimal left ideals of its semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub invariant_equals_left_ideals: bool,
    pub minimal_equals_minimal_left_ideals: bool,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.invariant_equals_left_ideals && self.minimal_equals_minimal_left_ideals
    }
}

pub fn left_ideal_correspondence(d: &PartialDynSystem, limits: &Limits) -> Result<CorrespondenceReport> {
    if !d.is_translation_system() {
        return Err(Error::Precondition("not a translation system".into()));
    }
    let s = d.semigroup();
    let invariant = d.invariant_sets(limits)?;
    let ideals = s.all_left_ideals(limits)?;
    Ok(CorrespondenceReport {
        invariant_equals_left_ideals: invariant == ideals,
        minimal_equals_minimal_left_ideals: d.minimal_subsystems() == s.minimal_left_ideals(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn word_index(d: &PartialDynSystem, w: &str) -> usize {
        d.point_names().unwrap().iter().position(|n| n == w).unwrap()
    }

    #[test]
    fn shift_system_composition_law_holds() {
        let d = families::bounded_words_shift_system(3).unwrap();
        let report = d.validate();
        assert!(report.ok, "{:?}", report.violations);
        // Length-one words are moved by nothing.
        assert!(!report.fully_covered);
        assert!(report
            .coverage_gaps
            .iter()
            .any(|g| g.kind == AxiomViolationKind::UncoveredPoint));
    }

    #[test]
    fn perturbed_shift_reports_composition_violation() {
        let d = families::bounded_words_shift_system(3).unwrap();
        let mut image = d.map(1).images();
        let w = word_index(&d, "011");
        image[w] = Some(word_index(&d, "0"));
        let mut maps = d.maps().to_vec();
        maps[1] = PartialMap::new(d.points(), image).unwrap();
        let broken = PartialDynSystem::new(d.semigroup().clone(), d.points(), maps).unwrap();
        let report = broken.validate();
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].x, Some(w));
        assert_eq!(report.violations[0].kind, AxiomViolationKind::Unequal);
    }

    #[test]
    fn translation_systems_validate() {
        let d = PartialDynSystem::translation(&families::cyclic_group(2));
        assert!(d.validate().strict_ok());
        assert!(d.is_translation_system());
    }

    #[test]
    fn extension_round_trip() {
        let empty = PartialMap::new(3, vec![None; 3]).unwrap();
        assert_eq!(empty.extend().images(), vec![3, 3, 3, 3]);
        let total = PartialMap::identity(3);
        assert_eq!(total.extend().images(), vec![0, 1, 2, 3]);
        assert_eq!(total.extend().restrict().unwrap(), total);
        let moves_inf = TotalMapInf::new(2, vec![0, 1, 0]).unwrap();
        assert!(moves_inf.restrict().is_err());
    }

    #[test]
    fn composition_examples() {
        let d = families::bounded_words_shift_system(3).unwrap();
        let sigma = d.map(0);
        let sigma2 = sigma.compose(sigma);
        assert_eq!(&sigma2, d.map(1));
        assert_eq!(sigma2.domain().count(), 8);
        let id = PartialMap::identity(d.points());
        assert_eq!(&id.compose(sigma), sigma);
        let f = PartialMap::new(3, vec![Some(1), None, None]).unwrap();
        let g = PartialMap::new(3, vec![Some(2), Some(2), None]).unwrap();
        assert!(f.compose(&g).domain().is_empty());
    }

    #[test]
    fn orbits() {
        let d = PartialDynSystem::translation(&families::cyclic_group(2));
        assert!(d.orbit(0).is_full());
        let shift = families::bounded_words_shift_system(3).unwrap();
        let x = word_index(&shift, "011");
        let names: Vec<String> = shift.orbit(x).iter().map(|p| shift.point_name(p)).collect();
        assert_eq!(names, vec!["1", "11"]);
    }

    #[test]
    fn invariant_sets_and_minimal_subsystems() {
        let limits = Limits::default();
        let d = PartialDynSystem::translation(&families::cyclic_group(2));
        assert_eq!(d.invariant_sets(&limits).unwrap(), vec![SubsetMask::full(2)]);
        assert_eq!(d.minimal_subsystems(), vec![SubsetMask::full(2)]);
        let shift = families::bounded_words_shift_system(3).unwrap();
        let mins: Vec<Vec<String>> = shift
            .minimal_subsystems()
            .iter()
            .map(|m| m.iter().map(|p| shift.point_name(p)).collect())
            .collect();
        assert_eq!(mins, vec![vec!["0".to_string()], vec!["1".to_string()]]);
        // Neither singleton is the forward hull of its own point.
        let report = shift.minimality_report();
        assert_eq!(report.divergent.len(), 2);
    }

    #[test]
    fn recurrence_and_proximality() {
        let z2 = PartialDynSystem::translation(&families::cyclic_group(2));
        assert!(z2.uniformly_recurrent_points().is_full());
        assert!(!z2.is_proximal(0, 1));
        assert!(z2.is_proximal(1, 1));
        let shift = families::bounded_words_shift_system(3).unwrap();
        assert!(shift.uniformly_recurrent_points().is_empty());
        assert!(shift.is_proximal(word_index(&shift, "01"), word_index(&shift, "11")));
    }

    #[test]
    fn enveloping_examples() {
        let limits = Limits::default();
        let z2 = PartialDynSystem::translation(&families::cyclic_group(2));
        let env = z2.enveloping(&limits).unwrap();
        assert_eq!(env.len(), 2);
        assert!(env.is_composition_closed());
        let rz = PartialDynSystem::translation(&families::right_zero(3));
        let env = rz.enveloping(&limits).unwrap();
        // Left translations of a right-zero semigroup are all the identity.
        assert_eq!(env.len(), 1);
        assert_eq!(env.idempotents(), vec![0]);
        let shift = families::bounded_words_shift_system(3).unwrap();
        let env = shift.enveloping(&limits).unwrap();
        assert!(env.is_composition_closed());
        // σ, σ², and the constant-∞ map σ³.
        assert_eq!(env.len(), 3);
        let tight = Limits {
            enveloping_cap: 2,
            ..limits
        };
        assert!(matches!(
            shift.enveloping(&tight),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn homomorphism_examples() {
        let d = families::bounded_words_shift_system(3).unwrap();
        let id: Vec<usize> = (0..d.points()).collect();
        assert!(verify_dynamical_homomorphism(&d, &d, &id).unwrap().holds());
        let rz = families::right_zero(2);
        let source = PartialDynSystem::translation(&rz);
        let fixed = PartialDynSystem::new(
            rz.clone(),
            1,
            vec![PartialMap::identity(1), PartialMap::identity(1)],
        )
        .unwrap();
        assert!(verify_dynamical_homomorphism(&source, &fixed, &[0, 0]).unwrap().holds());
    }

    #[test]
    fn correspondence_on_small_semigroups() {
        let limits = Limits::default();
        for s in [families::cyclic_group(2), families::right_zero(3)] {
            let d = PartialDynSystem::translation(&s);
            assert!(left_ideal_correspondence(&d, &limits).unwrap().holds());
        }
        let shift = families::bounded_words_shift_system(3).unwrap();
        assert!(left_ideal_correspondence(&shift, &limits).is_err());
    }
}
