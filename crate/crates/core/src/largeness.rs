//! The six largeness notions on a finite partial semigroup.
//!
//! Quantifiers over ultrafilters range over elements. Every notion is
//! monotone in its finite-set parameters, so each classifier tests only the
//! extremal choice (`H = L(u)`, `F = L(u)`, `H = R(s)`, `T = R(H)`); the
//! reductions are checked against naive sweeps in the test suite.
//!
//! Elements `u` with `L(u) = ∅` (or `s` with `R(s) = ∅` in the piecewise
//! notions) admit no finite parameter set and are skipped; the skipped
//! elements are listed in the witness.

use serde::Serialize;

use crate::semigroup::PartialSemigroup;
use crate::subset::SubsetMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Notion {
    PartiallySyndetic,
    Syndetic,
    PartiallyThick,
    CThick,
    PartiallyPiecewiseSyndetic,
    CPiecewiseSyndetic,
}

impl Notion {
    pub const ALL: [Notion; 6] = [
        Notion::PartiallySyndetic,
        Notion::Syndetic,
        Notion::PartiallyThick,
        Notion::CThick,
        Notion::PartiallyPiecewiseSyndetic,
        Notion::CPiecewiseSyndetic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Notion::PartiallySyndetic => "partially-syndetic",
            Notion::Syndetic => "syndetic",
            Notion::PartiallyThick => "partially-thick",
            Notion::CThick => "c-thick",
            Notion::PartiallyPiecewiseSyndetic => "partially-piecewise-syndetic",
            Notion::CPiecewiseSyndetic => "c-piecewise-syndetic",
        }
    }
}

/// One way a candidate escapes: `left∙right` is defined and lands outside
/// the target set. `candidate` is the element whose existential failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Escape {
    pub candidate: usize,
    pub point: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Every non-skipped `u` satisfies `R(L(u)) ⊆ ⋃_{t∈L(u)} t⁻¹A`.
    Covered { skipped: SubsetMask },
    /// `point ∈ R(h)` lies in no `t⁻¹A` with `t ∈ h = L(u)`.
    Uncovered { u: usize, h: SubsetMask, point: usize },
    /// `δ_R S ⊆ ⋃_{t∈h} t⁻¹A`.
    DeltaCovered { h: SubsetMask },
    /// Nothing to check: `δ_R S` is empty.
    Vacuous,
    /// `point ∈ δ_R S` lies in no `t⁻¹A`.
    DeltaGap { point: usize },
    /// `f∙t ⊆ A` with `f = L(u)` and `t ∈ R(f)`.
    Thick { u: usize, f: SubsetMask, t: usize },
    /// `p ∈ δ_R S` and `L(p)∙p ⊆ A`.
    CThick { p: usize },
    /// Every candidate of an existential fails; one escape per candidate
    /// pair. `candidates` lists the outer candidates considered.
    Refuted {
        candidates: SubsetMask,
        escapes: Vec<Escape>,
    },
    /// For each non-skipped `s`, with `H = R(s)` and `W = R(H)`, the chosen
    /// `x ∈ R(W)` has `W∙x ⊆ ⋃_{t∈H} t⁻¹A`; `None` when `W` is empty.
    PiecewiseAll {
        skipped: SubsetMask,
        choices: Vec<(usize, Option<usize>)>,
    },
    /// No `x` works for this `s`; `escapes` covers every `x ∈ R(w)`.
    PiecewiseFails {
        s: usize,
        h: SubsetMask,
        w: SubsetMask,
        escapes: Vec<Escape>,
    },
    /// `(R(s) ∩ R(h))∙x ⊆ ⋃_{t∈h} t⁻¹A` with `h = R(s)`.
    CPiecewise { s: usize, h: SubsetMask, x: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LargenessVerdict {
    pub notion: Notion,
    pub holds: bool,
    pub witness: Witness,
}

/// Elements with nonempty `L(u)`.
fn left_nonempty(s: &PartialSemigroup) -> SubsetMask {
    SubsetMask::from_indices(s.size(), (0..s.size()).filter(|&u| !s.left_set(u).is_empty()))
}

fn right_nonempty(s: &PartialSemigroup) -> SubsetMask {
    SubsetMask::from_indices(s.size(), (0..s.size()).filter(|&u| !s.right_set(u).is_empty()))
}

/// First `f ∈ from` with `f∙x` outside `target`; every product is assumed defined.
fn escape_left(
    s: &PartialSemigroup,
    candidate: usize,
    from: &SubsetMask,
    x: usize,
    target: &SubsetMask,
) -> Option<Escape> {
    from.iter().find_map(|f| {
        let p = s.product(f, x)?;
        (!target.contains(p)).then_some(Escape {
            candidate,
            point: x,
            left: f,
            right: x,
        })
    })
}

pub fn is_partially_syndetic(s: &PartialSemigroup, a: &SubsetMask) -> LargenessVerdict {
    let mut skipped = s.empty_set();
    for u in 0..s.size() {
        let h = s.left_set(u);
        if h.is_empty() {
            skipped.insert(u);
            continue;
        }
        let cover = s.quotient_union(h, a);
        if let Some(point) = s.right_of(h).difference(&cover).first() {
            return LargenessVerdict {
                notion: Notion::PartiallySyndetic,
                holds: false,
                witness: Witness::Uncovered {
                    u,
                    h: h.clone(),
                    point,
                },
            };
        }
    }
    LargenessVerdict {
        notion: Notion::PartiallySyndetic,
        holds: true,
        witness: Witness::Covered { skipped },
    }
}

pub fn is_syndetic(s: &PartialSemigroup, a: &SubsetMask) -> LargenessVerdict {
    let delta = s.delta_r();
    let (holds, witness) = if delta.is_empty() {
        (s.size() > 0, Witness::Vacuous)
    } else {
        let h = s.full_set();
        match delta.difference(&s.quotient_union(&h, a)).first() {
            Some(point) => (false, Witness::DeltaGap { point }),
            None => (true, Witness::DeltaCovered { h }),
        }
    };
    LargenessVerdict {
        notion: Notion::Syndetic,
        holds,
        witness,
    }
}

pub fn is_partially_thick(s: &PartialSemigroup, a: &SubsetMask) -> LargenessVerdict {
    let candidates = left_nonempty(s);
    let mut escapes = Vec::new();
    for u in candidates.iter() {
        let f = s.left_set(u);
        for t in s.right_of(f).iter() {
            match escape_left(s, u, f, t, a) {
                Some(e) => escapes.push(e),
                None => {
                    return LargenessVerdict {
                        notion: Notion::PartiallyThick,
                        holds: true,
                        witness: Witness::Thick {
                            u,
                            f: f.clone(),
                            t,
                        },
                    }
                }
            }
        }
    }
    LargenessVerdict {
        notion: Notion::PartiallyThick,
        holds: false,
        witness: Witness::Refuted { candidates, escapes },
    }
}

pub fn is_c_thick(s: &PartialSemigroup, a: &SubsetMask) -> LargenessVerdict {
    let candidates = s.delta_r().intersection(&left_nonempty(s));
    let mut escapes = Vec::new();
    for p in candidates.iter() {
        match escape_left(s, p, s.left_set(p), p, a) {
            Some(e) => escapes.push(e),
            None => {
                return LargenessVerdict {
                    notion: Notion::CThick,
                    holds: true,
                    witness: Witness::CThick { p },
                }
            }
        }
    }
    LargenessVerdict {
        notion: Notion::CThick,
        holds: false,
        witness: Witness::Refuted { candidates, escapes },
    }
}

pub fn is_partially_piecewise_syndetic(s: &PartialSemigroup, a: &SubsetMask) -> LargenessVerdict {
    let mut skipped = s.empty_set();
    let mut choices = Vec::new();
    for e in 0..s.size() {
        let h = s.right_set(e);
        if h.is_empty() {
            skipped.insert(e);
            continue;
        }
        let target = s.quotient_union(h, a);
        let w = s.right_of(h);
        if w.is_empty() {
            choices.push((e, None));
            continue;
        }
        let mut escapes = Vec::new();
        let mut found = None;
        for x in s.right_of(&w).iter() {
            match escape_left(s, e, &w, x, &target) {
                Some(esc) => escapes.push(esc),
                None => {
                    found = Some(x);
                    break;
                }
            }
        }
        match found {
            Some(x) => choices.push((e, Some(x))),
            None => {
                return LargenessVerdict {
                    notion: Notion::PartiallyPiecewiseSyndetic,
                    holds: false,
                    witness: Witness::PiecewiseFails {
                        s: e,
                        h: h.clone(),
                        w,
                        escapes,
                    },
                }
            }
        }
    }
    LargenessVerdict {
        notion: Notion::PartiallyPiecewiseSyndetic,
        holds: true,
        witness: Witness::PiecewiseAll { skipped, choices },
    }
}

pub fn is_c_piecewise_syndetic(s: &PartialSemigroup, a: &SubsetMask) -> LargenessVerdict {
    let candidates = right_nonempty(s);
    let mut escapes = Vec::new();
    for e in candidates.iter() {
        let h = s.right_set(e);
        let target = s.quotient_union(h, a);
        let front = h.intersection(&s.right_of(h));
        for x in s.right_of(h).iter() {
            match escape_left(s, e, &front, x, &target) {
                Some(esc) => escapes.push(esc),
                None => {
                    return LargenessVerdict {
                        notion: Notion::CPiecewiseSyndetic,
                        holds: true,
                        witness: Witness::CPiecewise {
                            s: e,
                            h: h.clone(),
                            x,
                        },
                    }
                }
            }
        }
    }
    LargenessVerdict {
        notion: Notion::CPiecewiseSyndetic,
        holds: false,
        witness: Witness::Refuted { candidates, escapes },
    }
}

pub fn verdict(s: &PartialSemigroup, a: &SubsetMask, notion: Notion) -> LargenessVerdict {
    match notion {
        Notion::PartiallySyndetic => is_partially_syndetic(s, a),
        Notion::Syndetic => is_syndetic(s, a),
        Notion::PartiallyThick => is_partially_thick(s, a),
        Notion::CThick => is_c_thick(s, a),
        Notion::PartiallyPiecewiseSyndetic => is_partially_piecewise_syndetic(s, a),
        Notion::CPiecewiseSyndetic => is_c_piecewise_syndetic(s, a),
    }
}

/// Re-checks a verdict from its witness alone, without re-running the
/// classifier's search. Negative existentials are replayed by confirming
/// each recorded escape and that the escapes exhaust the candidates.
pub fn replay(s: &PartialSemigroup, a: &SubsetMask, v: &LargenessVerdict) -> bool {
    let escapes_ok = |escapes: &[Escape], target: &SubsetMask| {
        escapes.iter().all(|e| match s.product(e.left, e.right) {
            Some(p) => !target.contains(p),
            None => false,
        })
    };
    let covers = |cand: usize, points: &SubsetMask, escapes: &[Escape]| {
        points
            .iter()
            .all(|x| escapes.iter().any(|e| e.candidate == cand && e.point == x))
    };
    match (&v.notion, &v.witness) {
        (Notion::PartiallySyndetic, Witness::Covered { skipped }) => {
            v.holds
                && (0..s.size()).all(|u| {
                    let h = s.left_set(u);
                    if h.is_empty() {
                        return skipped.contains(u);
                    }
                    s.right_of(h).is_subset(&s.quotient_union(h, a))
                })
        }
        (Notion::PartiallySyndetic, Witness::Uncovered { u, h, point }) => {
            !v.holds
                && h == s.left_set(*u)
                && !h.is_empty()
                && s.right_of(h).contains(*point)
                && !s.quotient_union(h, a).contains(*point)
        }
        (Notion::Syndetic, Witness::Vacuous) => v.holds && s.delta_r().is_empty(),
        (Notion::Syndetic, Witness::DeltaCovered { h }) => {
            v.holds && !h.is_empty() && s.delta_r().is_subset(&s.quotient_union(h, a))
        }
        (Notion::Syndetic, Witness::DeltaGap { point }) => {
            !v.holds
                && s.delta_r().contains(*point)
                && !s.quotient_union(&s.full_set(), a).contains(*point)
        }
        (Notion::PartiallyThick, Witness::Thick { u, f, t }) => {
            v.holds
                && !f.is_empty()
                && f.is_subset(s.left_set(*u))
                && *f == *s.left_set(*u)
                && s.right_of(f).contains(*t)
                && s.set_times(f, *t).is_subset(a)
        }
        (Notion::PartiallyThick, Witness::Refuted { candidates, escapes }) => {
            !v.holds
                && *candidates == left_nonempty(s)
                && escapes_ok(escapes, a)
                && candidates.iter().all(|u| {
                    let f = s.left_set(u);
                    escapes
                        .iter()
                        .filter(|e| e.candidate == u)
                        .all(|e| f.contains(e.left))
                        && covers(u, &s.right_of(f), escapes)
                })
        }
        (Notion::CThick, Witness::CThick { p }) => {
            v.holds
                && s.delta_r().contains(*p)
                && !s.left_set(*p).is_empty()
                && s.set_times(s.left_set(*p), *p).is_subset(a)
        }
        (Notion::CThick, Witness::Refuted { candidates, escapes }) => {
            !v.holds
                && *candidates == s.delta_r().intersection(&left_nonempty(s))
                && escapes_ok(escapes, a)
                && candidates.iter().all(|p| {
                    escapes
                        .iter()
                        .any(|e| e.candidate == p && e.right == p && e.point == p)
                })
        }
        (Notion::PartiallyPiecewiseSyndetic, Witness::PiecewiseAll { skipped, choices }) => {
            v.holds
                && (0..s.size()).all(|e| {
                    let h = s.right_set(e);
                    if h.is_empty() {
                        return skipped.contains(e);
                    }
                    let w = s.right_of(h);
                    match choices.iter().find(|c| c.0 == e) {
                        Some((_, None)) => w.is_empty(),
                        Some((_, Some(x))) => {
                            s.right_of(&w).contains(*x)
                                && s.set_times(&w, *x).is_subset(&s.quotient_union(h, a))
                        }
                        None => false,
                    }
                })
        }
        (Notion::PartiallyPiecewiseSyndetic, Witness::PiecewiseFails { s: e, h, w, escapes }) => {
            let target = s.quotient_union(h, a);
            !v.holds
                && h == s.right_set(*e)
                && !h.is_empty()
                && *w == s.right_of(h)
                && !w.is_empty()
                && escapes_ok(escapes, &target)
                && escapes.iter().all(|x| w.contains(x.left))
                && covers(*e, &s.right_of(w), escapes)
        }
        (Notion::CPiecewiseSyndetic, Witness::CPiecewise { s: e, h, x }) => {
            v.holds
                && h == s.right_set(*e)
                && !h.is_empty()
                && s.right_of(h).contains(*x)
                && s
                    .set_times(&h.intersection(&s.right_of(h)), *x)
                    .is_subset(&s.quotient_union(h, a))
        }
        (Notion::CPiecewiseSyndetic, Witness::Refuted { candidates, escapes }) => {
            !v.holds
                && *candidates == right_nonempty(s)
                && candidates.iter().all(|e| {
                    let h = s.right_set(e);
                    let target = s.quotient_union(h, a);
                    let front = h.intersection(&s.right_of(h));
                    let mine: Vec<Escape> =
                        escapes.iter().filter(|x| x.candidate == e).cloned().collect();
                    escapes_ok(&mine, &target)
                        && mine.iter().all(|x| front.contains(x.left))
                        && covers(e, &s.right_of(h), &mine)
                })
        }
        _ => false,
    }
}

/// One implication between notions, evaluated on a single set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationRecord {
    pub from: Notion,
    pub to: Notion,
    /// The antecedent holds.
    pub applicable: bool,
    /// The consequent holds whenever the antecedent does.
    pub held: bool,
}

/// Classical implications between the notions. They are recorded per set in
/// a [`ClassificationReport`], not asserted: in finite partial semigroups
/// only the first one holds in general.
pub const IMPLICATIONS: [(Notion, Notion); 4] = [
    (Notion::CThick, Notion::PartiallyThick),
    (Notion::PartiallyThick, Notion::CPiecewiseSyndetic),
    (Notion::Syndetic, Notion::CPiecewiseSyndetic),
    (Notion::PartiallySyndetic, Notion::PartiallyPiecewiseSyndetic),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityRecord {
    /// partially thick `A` versus partially syndetic `S∖A`.
    pub thick_vs_complement_syndetic: bool,
    /// partially syndetic `A` versus partially thick `S∖A`.
    pub syndetic_vs_complement_thick: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub subset: SubsetMask,
    pub verdicts: Vec<LargenessVerdict>,
    pub implication_audit: Vec<ImplicationRecord>,
    pub duality: DualityRecord,
}

impl ClassificationReport {
    pub fn get(&self, notion: Notion) -> &LargenessVerdict {
        self.verdicts.iter().find(|v| v.notion == notion).unwrap()
    }

    pub fn holds(&self, notion: Notion) -> bool {
        self.get(notion).holds
    }
}

pub fn classify(s: &PartialSemigroup, a: &SubsetMask) -> ClassificationReport {
    let verdicts: Vec<LargenessVerdict> = Notion::ALL.iter().map(|&n| verdict(s, a, n)).collect();
    let holds = |n: Notion| verdicts.iter().find(|v| v.notion == n).unwrap().holds;
    let implication_audit = IMPLICATIONS
        .iter()
        .map(|&(from, to)| ImplicationRecord {
            from,
            to,
            applicable: holds(from),
            held: !holds(from) || holds(to),
        })
        .collect();
    let complement = a.complement();
    let duality = DualityRecord {
        thick_vs_complement_syndetic: holds(Notion::PartiallyThick)
            != is_partially_syndetic(s, &complement).holds,
        syndetic_vs_complement_thick: holds(Notion::PartiallySyndetic)
            != is_partially_thick(s, &complement).holds,
    };
    ClassificationReport {
        subset: a.clone(),
        verdicts,
        implication_audit,
        duality,
    }
}

/// Some `p` with `L(p) ≠ ∅` and `L(p)∙p ⊆ A`.
pub fn left_orbit_inside(s: &PartialSemigroup, a: &SubsetMask) -> Option<usize> {
    (0..s.size()).find(|&p| {
        let l = s.left_set(p);
        !l.is_empty() && s.set_times(l, p).is_subset(a)
    })
}

/// Which composability set supplies `G` in the piecewise characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// `G ⊆ L(s)`
    Left,
    /// `G ⊆ R(s)`
    Right,
}

/// For every `s` with nonempty `G`-range, `⋃_{t∈G} t⁻¹A` is partially thick
/// for some nonempty `G` in the range. By upward closure the full range is
/// the only candidate needed.
pub fn quotient_thick_everywhere(s: &PartialSemigroup, a: &SubsetMask, reading: Reading) -> bool {
    (0..s.size()).all(|e| {
        let g = match reading {
            Reading::Left => s.left_set(e),
            Reading::Right => s.right_set(e),
        };
        g.is_empty() || is_partially_thick(s, &s.quotient_union(g, a)).holds
    })
}

/// The three clauses of the minimal-ideal criterion at one element `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelCriterion {
    pub u: usize,
    /// `u ∈ K(S)`
    pub in_kernel: bool,
    /// `{s : u ∈ s⁻¹A}` is partially syndetic for every `A ∋ u`.
    pub return_sets_syndetic: bool,
    /// `u ∈ (L(q)∙q)∙u` for every `q ∈ L(u)`.
    pub regenerates: bool,
}

impl KernelCriterion {
    pub fn agree(&self) -> bool {
        self.in_kernel == self.return_sets_syndetic
    }
}

/// The smallest `A ∋ u` is `{u}`, and return sets grow with `A`, so only
/// `{s ∈ L(u) : s∙u = u}` needs testing.
pub fn kernel_criterion(s: &PartialSemigroup, u: usize) -> KernelCriterion {
    let kernel = s.smallest_ideal();
    let returns = SubsetMask::from_indices(
        s.size(),
        s.left_set(u).iter().filter(|&t| s.product(t, u) == Some(u)),
    );
    let regenerates = s.left_set(u).iter().all(|q| {
        let lq = s.set_times(s.left_set(q), q);
        s.set_times(&lq, u).contains(u)
    });
    KernelCriterion {
        u,
        in_kernel: kernel.is_some_and(|k| k.contains(u)),
        return_sets_syndetic: is_partially_syndetic(s, &returns).holds,
        regenerates,
    }
}
