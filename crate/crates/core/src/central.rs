//! Central sets and their dynamical witnesses.
//!
//! The witness system acts on partial 0/1-valued functions over
//! `A = S ∪ {e}`, where `e` is an identity adjoined at index `|S|`:
//! `T_s(f)(t) = f(t∙s)` for `t ∈ L_A(s)`, defined when `Dom f ⊇ L_A(s)∙s`.
//! Only the points reachable from `χ_B` are built.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::dynamics::{PartialDynSystem, PartialMap};
use crate::error::{Error, Limits, Result};
use crate::semigroup::PartialSemigroup;
use crate::subset::SubsetMask;

/// A partial function `A → {0, 1}`; `values ⊆ domain`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OmegaPoint {
    pub domain: SubsetMask,
    pub values: SubsetMask,
}

impl OmegaPoint {
    pub fn new(domain: SubsetMask, values: SubsetMask) -> Result<Self> {
        if domain.width() != values.width() {
            return Err(Error::WidthMismatch {
                expected: domain.width(),
                found: values.width(),
            });
        }
        if domain.is_empty() {
            return Err(Error::EmptySubset("point domain"));
        }
        if !values.is_subset(&domain) {
            return Err(Error::Precondition("values outside the domain".into()));
        }
        Ok(OmegaPoint { domain, values })
    }

    /// The characteristic function of `b` on all of `0..width`.
    pub fn characteristic(width: usize, b: &SubsetMask) -> Self {
        let mut values = SubsetMask::empty(width);
        for i in b.iter() {
            values.insert(i);
        }
        OmegaPoint {
            domain: SubsetMask::full(width),
            values,
        }
    }

    pub fn eval(&self, t: usize) -> Option<bool> {
        self.domain.contains(t).then(|| self.values.contains(t))
    }

    /// Renders as `{t:v,...}`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .domain
            .iter()
            .map(|t| format!("{}:{}", t, u8::from(self.values.contains(t))))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// `S` together with `A = S ∪ {e}`.
#[derive(Debug, Clone)]
pub struct OmegaAction {
    base: PartialSemigroup,
    adjoined: PartialSemigroup,
}

impl OmegaAction {
    pub fn new(s: &PartialSemigroup) -> Result<Self> {
        Ok(OmegaAction {
            base: s.clone(),
            adjoined: s.adjoin_identity()?,
        })
    }

    pub fn identity(&self) -> usize {
        self.base.size()
    }

    pub fn adjoined(&self) -> &PartialSemigroup {
        &self.adjoined
    }

    /// `L_A(s)∙s`, the domain `T_s` needs.
    pub fn required_domain(&self, s: usize) -> SubsetMask {
        self.adjoined.set_times(self.adjoined.left_set(s), s)
    }

    /// `T_s(f)`, when `Dom f ⊇ L_A(s)∙s`.
    pub fn apply(&self, s: usize, f: &OmegaPoint) -> Option<OmegaPoint> {
        if !self.required_domain(s).is_subset(&f.domain) {
            return None;
        }
        let a = &self.adjoined;
        let domain = a.left_set(s).clone();
        let values = SubsetMask::from_indices(
            a.size(),
            domain
                .iter()
                .filter(|&t| f.values.contains(a.product(t, s).unwrap())),
        );
        Some(OmegaPoint { domain, values })
    }

    /// The system on every point reachable from `seeds`.
    pub fn closure(&self, seeds: &[OmegaPoint], limits: &Limits) -> Result<OmegaSystem> {
        let mut points: Vec<OmegaPoint> = Vec::new();
        let mut index: HashMap<OmegaPoint, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for p in seeds {
            if !index.contains_key(p) {
                index.insert(p.clone(), points.len());
                queue.push_back(points.len());
                points.push(p.clone());
            }
        }
        let n = self.base.size();
        let mut images: Vec<Vec<Option<usize>>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let mut row = vec![None; n];
            for (s, slot) in row.iter_mut().enumerate() {
                if let Some(q) = self.apply(s, &points[i]) {
                    let j = match index.get(&q) {
                        Some(&j) => j,
                        None => {
                            if points.len() >= limits.enveloping_cap {
                                return Err(Error::CapExceeded {
                                    what: "Ω orbit closure",
                                    size: points.len() + 1,
                                    cap: limits.enveloping_cap,
                                });
                            }
                            let j = points.len();
                            index.insert(q.clone(), j);
                            points.push(q);
                            queue.push_back(j);
                            j
                        }
                    };
                    *slot = Some(j);
                }
            }
            if images.len() <= i {
                images.resize(i + 1, Vec::new());
            }
            images[i] = row;
        }
        let m = points.len();
        let maps = (0..n)
            .map(|s| PartialMap::new(m, (0..m).map(|i| images[i][s]).collect()))
            .collect::<Result<Vec<_>>>()?;
        let names = points.iter().map(OmegaPoint::label).collect();
        let system = PartialDynSystem::new(self.base.clone(), m, maps)?.with_point_names(names)?;
        Ok(OmegaSystem {
            points,
            index,
            system,
        })
    }
}

#[derive(Debug, Clone)]
pub struct OmegaSystem {
    pub points: Vec<OmegaPoint>,
    index: HashMap<OmegaPoint, usize>,
    pub system: PartialDynSystem,
}

impl OmegaSystem {
    pub fn position(&self, p: &OmegaPoint) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// `B ∩ E(S) ∩ K(S) ≠ ∅`.
pub fn is_central(s: &PartialSemigroup, b: &SubsetMask) -> bool {
    b.intersects(&s.minimal_idempotents())
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralWitness {
    #[serde(skip)]
    pub omega: OmegaSystem,
    pub x: usize,
    pub y: usize,
    /// The minimal idempotent with `T_u(x) = y`.
    pub u: usize,
    /// Neighborhood of `y`, as point indices.
    pub neighborhood: SubsetMask,
    pub recovered_set: SubsetMask,
}

impl CentralWitness {
    pub fn system(&self) -> &PartialDynSystem {
        &self.omega.system
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub y_in_neighborhood: bool,
    pub uniformly_recurrent: bool,
    pub proximal: bool,
    pub recovered_matches: bool,
}

impl WitnessCheck {
    pub fn holds(&self) -> bool {
        self.y_in_neighborhood && self.uniformly_recurrent && self.proximal && self.recovered_matches
    }
}

/// `{s : T_s(x) ∈ U}`.
pub fn recovered(d: &PartialDynSystem, x: usize, u: &SubsetMask) -> SubsetMask {
    SubsetMask::from_indices(
        d.semigroup().size(),
        d.acting_set(x)
            .iter()
            .filter(|&s| u.contains(d.act(s, x).unwrap())),
    )
}

/// Re-evaluates the three clauses from scratch.
pub fn check_witness(w: &CentralWitness) -> WitnessCheck {
    let d = w.system();
    WitnessCheck {
        y_in_neighborhood: w.neighborhood.contains(w.y),
        uniformly_recurrent: d.is_uniformly_recurrent(w.y),
        proximal: d.is_proximal(w.x, w.y),
        recovered_matches: recovered(d, w.x, &w.neighborhood) == w.recovered_set,
    }
}

pub fn verify_witness(w: &CentralWitness) -> bool {
    check_witness(w).holds()
}

/// The neighborhood shapes tried for a candidate idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborhoodShape {
    /// `{z : z(e) = y(e)}`
    AgreeAtIdentity,
    /// `{y}`
    Singleton,
}

fn neighborhood(omega: &OmegaSystem, e: usize, y: usize, shape: NeighborhoodShape) -> SubsetMask {
    let m = omega.points.len();
    match shape {
        NeighborhoodShape::Singleton => SubsetMask::singleton(m, y),
        NeighborhoodShape::AgreeAtIdentity => {
            let target = omega.points[y].eval(e);
            SubsetMask::from_indices(m, (0..m).filter(|&z| omega.points[z].eval(e) == target))
        }
    }
}

/// The Ω-system for `χ_B` and a witness for candidate idempotent `u`.
pub fn witness_for(
    action: &OmegaAction,
    b: &SubsetMask,
    u: usize,
    shape: NeighborhoodShape,
    limits: &Limits,
) -> Result<CentralWitness> {
    let width = action.adjoined().size();
    let chi = OmegaPoint::characteristic(width, b);
    let y_point = action
        .apply(u, &chi)
        .ok_or_else(|| Error::Precondition(format!("χ_B is outside the domain of T_{u}")))?;
    let omega = action.closure(std::slice::from_ref(&chi), limits)?;
    let x = omega.position(&chi).unwrap();
    let y = omega.position(&y_point).unwrap();
    let neighborhood = neighborhood(&omega, action.identity(), y, shape);
    let recovered_set = recovered(&omega.system, x, &neighborhood);
    Ok(CentralWitness {
        omega,
        x,
        y,
        u,
        neighborhood,
        recovered_set,
    })
}

/// Builds and verifies a witness for a central `b`, using its least
/// minimal idempotent.
pub fn build_omega_witness(s: &PartialSemigroup, b: &SubsetMask, limits: &Limits) -> Result<CentralWitness> {
    s.check_subset(b)?;
    let Some(u) = b.intersection(&s.minimal_idempotents()).first() else {
        return Err(Error::Precondition(format!("{b} contains no minimal idempotent")));
    };
    let action = OmegaAction::new(s)?;
    let w = witness_for(&action, b, u, NeighborhoodShape::AgreeAtIdentity, limits)?;
    let y_marked = w.omega.points[w.y].eval(action.identity()) == Some(true);
    let check = check_witness(&w);
    if !y_marked || !check.holds() || w.recovered_set != *b {
        return Err(Error::Verification(format!(
            "witness for {b} via u = {u}: y(e) = 1 is {y_marked}, {check:?}, recovered {}",
            w.recovered_set
        )));
    }
    Ok(w)
}

/// Outcome of the central / dynamically central comparison on one set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralityVerdict {
    pub subset: SubsetMask,
    pub central: bool,
    /// Central sets: the witness was built and verified.
    pub witness_ok: bool,
    /// Non-central sets: candidate witnesses that verified and recovered
    /// the set. Any entry is a contradiction.
    pub contradictions: Vec<(usize, NeighborhoodShape)>,
}

impl CentralityVerdict {
    pub fn consistent(&self) -> bool {
        if self.central {
            self.witness_ok
        } else {
            self.contradictions.is_empty()
        }
    }
}

/// A verified witness for `b` must come with a minimal idempotent `u` in
/// `b` carrying `x` to `y`.
fn algebraic_sufficiency(s: &PartialSemigroup, w: &CentralWitness) -> bool {
    let d = w.system();
    s.minimal_idempotents()
        .intersection(d.acting_set(w.x))
        .iter()
        .any(|u| d.act(u, w.x) == Some(w.y) && w.recovered_set.contains(u))
}

pub fn centrality_verdict(
    s: &PartialSemigroup,
    action: &OmegaAction,
    b: &SubsetMask,
    limits: &Limits,
) -> Result<CentralityVerdict> {
    let central = is_central(s, b);
    if central {
        let witness_ok = match build_omega_witness(s, b, limits) {
            Ok(_) => true,
            Err(Error::Verification(_)) => false,
            Err(e) => return Err(e),
        };
        return Ok(CentralityVerdict {
            subset: b.clone(),
            central,
            witness_ok,
            contradictions: Vec::new(),
        });
    }
    let mut contradictions = Vec::new();
    for u in s.minimal_idempotents().iter() {
        for shape in [NeighborhoodShape::AgreeAtIdentity, NeighborhoodShape::Singleton] {
            let w = match witness_for(action, b, u, shape, limits) {
                Ok(w) => w,
                Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            };
            // A verified witness recovering b would, by sufficiency, put a
            // minimal idempotent inside b.
            if w.recovered_set == *b && (verify_witness(&w) || algebraic_sufficiency(s, &w)) {
                contradictions.push((u, shape));
            }
        }
    }
    Ok(CentralityVerdict {
        subset: b.clone(),
        central,
        witness_ok: false,
        contradictions,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    pub verdicts: Vec<CentralityVerdict>,
    pub consistent: bool,
}

/// Every subset of `S`: central sets get verified witnesses and non-central
/// sets admit no candidate witness.
pub fn central_set_check(s: &PartialSemigroup, limits: &Limits) -> Result<CentralityReport> {
    limits.check_subsets("central set sweep", s.size())?;
    let action = OmegaAction::new(s)?;
    let verdicts = SubsetMask::all(s.size())
        .map(|b| centrality_verdict(s, &action, &b, limits))
        .collect::<Result<Vec<_>>>()?;
    let consistent = verdicts.iter().all(CentralityVerdict::consistent);
    Ok(CentralityReport {
        verdicts,
        consistent,
    })
}

/// For `u ∈ R(s)` and `f` in the domain of `T_u` with `s` in the domain of
/// `T_u(f)`: `T_u(f)(s) = 1` iff `s∙u ∈ {t : f(t) = 1}`. Returns the
/// counterexamples `(s, u, f)` over all partial functions `f`.
pub fn evaluation_identity_failures(
    s: &PartialSemigroup,
    limits: &Limits,
) -> Result<Vec<(usize, usize, OmegaPoint)>> {
    let action = OmegaAction::new(s)?;
    let width = action.adjoined().size();
    limits.check_subsets("partial function sweep", 2 * width)?;
    let mut out = Vec::new();
    for domain in SubsetMask::all(width).filter(|d| !d.is_empty()) {
        for values in domain.nonempty_subsets().chain([SubsetMask::empty(width)]) {
            let f = OmegaPoint {
                domain: domain.clone(),
                values,
            };
            for u in 0..s.size() {
                let Some(image) = action.apply(u, &f) else { continue };
                for t in s.left_set(u).iter() {
                    let lhs = image.eval(t);
                    let rhs = f.values.contains(s.product(t, u).unwrap());
                    if lhs != Some(rhs) {
                        out.push((t, u, f.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Transports a witness for `b` to `c ⊇ b` by enlarging the neighborhood
/// with the images of `c`. Returns the transported witness when it still
/// verifies and recovers exactly `c`.
pub fn transport_witness(w: &CentralWitness, c: &SubsetMask) -> Option<CentralWitness> {
    if !w.recovered_set.is_subset(c) {
        return None;
    }
    let d = w.system();
    let mut neighborhood = w.neighborhood.clone();
    for s in c.iter() {
        neighborhood.insert(d.act(s, w.x)?);
    }
    let recovered_set = recovered(d, w.x, &neighborhood);
    let t = CentralWitness {
        omega: w.omega.clone(),
        neighborhood,
        recovered_set,
        ..*w
    };
    (t.recovered_set == *c && verify_witness(&t)).then_some(t)
}

/// A witness for `c ⊇ b`: the transported witness when it applies,
/// otherwise a fresh one for `c`.
pub fn superset_witness(
    s: &PartialSemigroup,
    w: &CentralWitness,
    c: &SubsetMask,
    limits: &Limits,
) -> Result<CentralWitness> {
    match transport_witness(w, c) {
        Some(t) => Ok(t),
        None => build_omega_witness(s, c, limits),
    }
}
