//! Generators for named example structures and for the seeded random corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{PartialDynSystem, PartialMap};
use crate::error::{Error, Result};
use crate::semigroup::{PartialSemigroup, ViolationKind};

/// Largest ground set accepted by the subset-indexed families.
pub const MAX_GROUND: usize = 8;
/// Largest word length accepted by the word families.
pub const MAX_WORD_LEN: usize = 8;
const RANDOM_RETRY_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Nonempty subsets of `{1..n}` under disjoint union.
    PfDisjointUnion { n: usize },
    /// Formal finite products `x_F` for `F ⊆ {1..cap}`, composable when
    /// `max F < min G`. `seq` gives `x_i` in `Z_modulus` for evaluation only.
    FpSequence {
        cap: usize,
        modulus: usize,
        seq: Vec<usize>,
    },
    /// Binary words of length `1..=k` under length-bounded concatenation.
    BoundedWords { k: usize },
    /// Shift maps `σ^j` on binary words of length `1..=k`, acted on by
    /// `{1..k-1}` under bounded addition.
    BoundedWordsShiftSystem { k: usize },
    RightZero { n: usize },
    LeftZero { n: usize },
    CyclicGroup { n: usize },
    /// Null semigroup: every product is `0`.
    ZeroSemigroup { n: usize },
    /// `Z_g × (right zero on m)`, with `(a,i)∙(b,j) = (a+b, j)`.
    LeftGroup { g: usize, m: usize },
    /// `P_f({1..n})` acting on `Z_modulus` by `T_F(s) = s + Σ_{i∈F} f(i)`.
    PfTranslationSystem {
        n: usize,
        modulus: usize,
        f: Vec<usize>,
    },
    RandomPartial { n: usize, density: f64, seed: u64 },
}

#[derive(Debug, Clone)]
pub enum Generated {
    Semigroup(PartialSemigroup),
    System(PartialDynSystem),
}

pub const FAMILY_NAMES: &[&str] = &[
    "pf-disjoint-union",
    "fp-sequence",
    "bounded-words",
    "bounded-words-shift-system",
    "right-zero",
    "left-zero",
    "cyclic-group",
    "zero-semigroup",
    "left-group",
    "pf-translation-system",
    "random-partial",
];

impl FamilySpec {
    /// Parses a family name and its positional parameters.
    pub fn parse(name: &str, params: &[String], seed: u64) -> Result<FamilySpec> {
        let ints: Vec<usize> = params
            .iter()
            .filter(|p| !p.contains('.'))
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::Family(format!("not an integer: {p}")))
            })
            .collect::<Result<_>>()?;
        let need = |k: usize| -> Result<()> {
            if ints.len() < k {
                Err(Error::Family(format!("{name} needs {k} integer parameter(s)")))
            } else {
                Ok(())
            }
        };
        let spec = match name {
            "pf-disjoint-union" => {
                need(1)?;
                FamilySpec::PfDisjointUnion { n: ints[0] }
            }
            "fp-sequence" => {
                need(1)?;
                let cap = ints[0];
                let modulus = ints.get(1).copied().unwrap_or(0);
                let seq = if ints.len() > 2 {
                    ints[2..].to_vec()
                } else {
                    (1..=cap).collect()
                };
                FamilySpec::FpSequence { cap, modulus, seq }
            }
            "bounded-words" => {
                need(1)?;
                FamilySpec::BoundedWords { k: ints[0] }
            }
            "bounded-words-shift-system" => {
                need(1)?;
                FamilySpec::BoundedWordsShiftSystem { k: ints[0] }
            }
            "right-zero" => {
                need(1)?;
                FamilySpec::RightZero { n: ints[0] }
            }
            "left-zero" => {
                need(1)?;
                FamilySpec::LeftZero { n: ints[0] }
            }
            "cyclic-group" => {
                need(1)?;
                FamilySpec::CyclicGroup { n: ints[0] }
            }
            "zero-semigroup" => {
                need(1)?;
                FamilySpec::ZeroSemigroup { n: ints[0] }
            }
            "left-group" => {
                need(2)?;
                FamilySpec::LeftGroup {
                    g: ints[0],
                    m: ints[1],
                }
            }
            "pf-translation-system" => {
                need(2)?;
                let n = ints[0];
                let modulus = ints[1];
                let f = if ints.len() > 2 {
                    ints[2..].to_vec()
                } else {
                    (1..=n).collect()
                };
                FamilySpec::PfTranslationSystem { n, modulus, f }
            }
            "random-partial" => {
                need(1)?;
                let density = match params.iter().find(|p| p.contains('.')) {
                    Some(d) => d
                        .parse::<f64>()
                        .map_err(|_| Error::Family(format!("not a density: {d}")))?,
                    None => 0.6,
                };
                FamilySpec::RandomPartial {
                    n: ints[0],
                    density,
                    seed: ints.get(1).map(|&s| s as u64).unwrap_or(seed),
                }
            }
            other => return Err(Error::Family(format!("unknown family {other}"))),
        };
        Ok(spec)
    }

    pub fn generate(&self) -> Result<Generated> {
        Ok(match self {
            FamilySpec::BoundedWordsShiftSystem { k } => {
                Generated::System(bounded_words_shift_system(*k)?)
            }
            FamilySpec::PfTranslationSystem { n, modulus, f } => {
                Generated::System(pf_translation_system(*n, *modulus, f)?)
            }
            _ => Generated::Semigroup(self.generate_semigroup()?),
        })
    }

    pub fn generate_semigroup(&self) -> Result<PartialSemigroup> {
        match *self {
            FamilySpec::PfDisjointUnion { n } => pf_disjoint_union(n),
            FamilySpec::FpSequence { cap, .. } => fp_sequence(cap),
            FamilySpec::BoundedWords { k } => bounded_words(k),
            FamilySpec::RightZero { n } => positive(n).map(|_| right_zero(n)),
            FamilySpec::LeftZero { n } => positive(n).map(|_| left_zero(n)),
            FamilySpec::CyclicGroup { n } => positive(n).map(|_| cyclic_group(n)),
            FamilySpec::ZeroSemigroup { n } => positive(n).map(|_| zero_semigroup(n)),
            FamilySpec::LeftGroup { g, m } => {
                positive(g)?;
                positive(m)?;
                Ok(left_group(g, m))
            }
            FamilySpec::RandomPartial { n, density, seed } => random_partial(n, density, seed),
            FamilySpec::BoundedWordsShiftSystem { .. } | FamilySpec::PfTranslationSystem { .. } => {
                Err(Error::Family("this family generates a dynamical system".into()))
            }
        }
    }
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Family("size must be positive".into()))
    } else {
        Ok(())
    }
}

fn set_name(bits: usize) -> String {
    let members: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Element `i` is the subset of `{1..n}` with bit pattern `i + 1`.
pub fn pf_disjoint_union(n: usize) -> Result<PartialSemigroup> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::Family(format!("pf-disjoint-union needs 1 ≤ n ≤ {MAX_GROUND}")));
    }
    let size = (1usize << n) - 1;
    let s = PartialSemigroup::from_fn(size, |x, y| {
        let (a, b) = (x + 1, y + 1);
        (a & b == 0).then(|| (a | b) - 1)
    });
    s.with_names((1..=size).map(set_name).collect())
}

/// Element `i` is the formal product over the index set with bit pattern `i + 1`.
pub fn fp_sequence(cap: usize) -> Result<PartialSemigroup> {
    if cap == 0 || cap > MAX_GROUND {
        return Err(Error::Family(format!("fp-sequence needs 1 ≤ cap ≤ {MAX_GROUND}")));
    }
    let size = (1usize << cap) - 1;
    let s = PartialSemigroup::from_fn(size, |x, y| {
        let (f, g) = (x + 1, y + 1);
        let max_f = usize::BITS - 1 - f.leading_zeros();
        let min_g = g.trailing_zeros();
        (max_f < min_g).then(|| (f | g) - 1)
    });
    let names = (1..=size)
        .map(|bits| {
            (0..cap)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| format!("x{}", i + 1))
                .collect::<String>()
        })
        .collect();
    s.with_names(names)
}

/// Evaluates each formal product of `fp_sequence(cap)` in `Z_modulus`.
pub fn fp_evaluations(cap: usize, modulus: usize, seq: &[usize]) -> Result<Vec<usize>> {
    if modulus == 0 || seq.len() < cap {
        return Err(Error::Family("fp evaluation needs a modulus and cap terms".into()));
    }
    Ok((1..(1usize << cap))
        .map(|bits| {
            (0..cap)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| seq[i])
                .sum::<usize>()
                % modulus
        })
        .collect())
}

/// Binary words of length `1..=k`, shortest first, then lexicographic.
pub fn words(k: usize) -> Vec<String> {
    let mut out = Vec::new();
    for len in 1..=k {
        for bits in 0..1usize << len {
            out.push(
                (0..len)
                    .rev()
                    .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                    .collect(),
            );
        }
    }
    out
}

pub fn bounded_words(k: usize) -> Result<PartialSemigroup> {
    if k == 0 || k > MAX_WORD_LEN {
        return Err(Error::Family(format!("bounded-words needs 1 ≤ k ≤ {MAX_WORD_LEN}")));
    }
    let ws = words(k);
    let index: std::collections::HashMap<&str, usize> =
        ws.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let s = PartialSemigroup::from_fn(ws.len(), |x, y| {
        let joined = format!("{}{}", ws[x], ws[y]);
        index.get(joined.as_str()).copied()
    });
    s.with_names(ws)
}

/// `{1..k-1}` under addition defined when the sum is at most `k - 1`.
pub fn bounded_addition(k: usize) -> Result<PartialSemigroup> {
    if k < 2 {
        return Err(Error::Family("bounded addition needs k ≥ 2".into()));
    }
    let n = k - 1;
    let s = PartialSemigroup::from_fn(n, |x, y| (x + y + 2 <= n).then_some(x + y + 1));
    s.with_names((1..=n).map(|i| i.to_string()).collect())
}

pub fn bounded_words_shift_system(k: usize) -> Result<PartialDynSystem> {
    if !(2..=MAX_WORD_LEN).contains(&k) {
        return Err(Error::Family(format!(
            "bounded-words-shift-system needs 2 ≤ k ≤ {MAX_WORD_LEN}"
        )));
    }
    let s = bounded_addition(k)?;
    let ws = words(k);
    let index: std::collections::HashMap<&str, usize> =
        ws.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
    let maps = (1..k)
        .map(|j| {
            let image = ws
                .iter()
                .map(|w| (w.len() > j).then(|| index[&w[j..]]))
                .collect();
            PartialMap::new(ws.len(), image)
        })
        .collect::<Result<Vec<_>>>()?;
    PartialDynSystem::new(s, ws.len(), maps)?.with_point_names(ws)
}

pub fn pf_translation_system(n: usize, modulus: usize, f: &[usize]) -> Result<PartialDynSystem> {
    if modulus == 0 {
        return Err(Error::Family("modulus must be positive".into()));
    }
    if f.len() < n {
        return Err(Error::Family(format!("need {n} values of f")));
    }
    let s = pf_disjoint_union(n)?;
    let maps = (1..=s.size())
        .map(|bits| {
            let shift: usize = (0..n).filter(|i| bits >> i & 1 == 1).map(|i| f[i]).sum();
            let image = (0..modulus).map(|x| Some((x + shift) % modulus)).collect();
            PartialMap::new(modulus, image)
        })
        .collect::<Result<Vec<_>>>()?;
    PartialDynSystem::new(s, modulus, maps)
}

pub fn right_zero(n: usize) -> PartialSemigroup {
    PartialSemigroup::from_fn(n, |_, y| Some(y))
}

pub fn left_zero(n: usize) -> PartialSemigroup {
    PartialSemigroup::from_fn(n, |x, _| Some(x))
}

pub fn cyclic_group(n: usize) -> PartialSemigroup {
    PartialSemigroup::from_fn(n, |x, y| Some((x + y) % n))
}

pub fn zero_semigroup(n: usize) -> PartialSemigroup {
    PartialSemigroup::from_fn(n, |_, _| Some(0))
}

/// Element `a * m + i` is `(a, i)`.
pub fn left_group(g: usize, m: usize) -> PartialSemigroup {
    PartialSemigroup::from_fn(g * m, |x, y| {
        let (a, _) = (x / m, x % m);
        let (b, j) = (y / m, y % m);
        Some(((a + b) % g) * m + j)
    })
}

/// `{a, b, …, z}` where each nonzero element is idempotent and every other
/// product is the zero `z` (the last element).
pub fn semilattice_with_zero(n: usize) -> PartialSemigroup {
    let z = n - 1;
    PartialSemigroup::from_fn(n, |x, y| Some(if x == y { x } else { z }))
}

/// Monogenic semigroup `{a, a², …}` with `a^(index+period) = a^index`.
pub fn monogenic(index: usize, period: usize) -> PartialSemigroup {
    let n = index + period - 1;
    let reduce = |k: usize| {
        if k < index {
            k
        } else {
            index + (k - index) % period
        }
    };
    // element i is a^(i+1)
    PartialSemigroup::from_fn(n, |x, y| Some(reduce(x + y + 2) - 1))
}

fn rectangular_band(r: usize, c: usize) -> PartialSemigroup {
    PartialSemigroup::from_fn(r * c, |x, y| Some((x / c) * c + y % c))
}

fn chain(n: usize) -> PartialSemigroup {
    PartialSemigroup::from_fn(n, |x, y| Some(x.min(y)))
}

/// Closure of random self-maps of a small set, as a total semigroup with
/// `f∙g = f ∘ g`. Returns `None` if the closure does not have exactly `n` maps.
fn random_transformation_semigroup(rng: &mut ChaCha8Rng, n: usize) -> Option<PartialSemigroup> {
    let points = rng.gen_range(2..=3);
    let gens = rng.gen_range(1..=2);
    let mut maps: Vec<Vec<usize>> = (0..gens)
        .map(|_| (0..points).map(|_| rng.gen_range(0..points)).collect())
        .collect();
    maps.sort();
    maps.dedup();
    let mut i = 0;
    while i < maps.len() {
        for j in 0..maps.len() {
            for (a, b) in [(i, j), (j, i)] {
                let c: Vec<usize> = (0..points).map(|p| maps[a][maps[b][p]]).collect();
                if !maps.contains(&c) {
                    maps.push(c);
                    if maps.len() > n {
                        return None;
                    }
                }
            }
        }
        i += 1;
    }
    if maps.len() != n {
        return None;
    }
    let idx = |m: &Vec<usize>| maps.iter().position(|x| x == m).unwrap();
    Some(PartialSemigroup::from_fn(n, |a, b| {
        let c: Vec<usize> = (0..points).map(|p| maps[a][maps[b][p]]).collect();
        Some(idx(&c))
    }))
}

fn random_total(rng: &mut ChaCha8Rng, n: usize) -> PartialSemigroup {
    for _ in 0..50 {
        let pick = rng.gen_range(0..9);
        let s = match pick {
            0 => Some(cyclic_group(n)),
            1 => Some(right_zero(n)),
            2 => Some(left_zero(n)),
            3 => Some(zero_semigroup(n)),
            4 => Some(chain(n)),
            5 => {
                let index = rng.gen_range(1..=n);
                Some(monogenic(index, n + 1 - index))
            }
            6 => {
                let divs: Vec<usize> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
                let g = *divs.choose(rng).unwrap();
                Some(left_group(g, n / g))
            }
            7 => {
                let divs: Vec<usize> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
                let r = *divs.choose(rng).unwrap();
                Some(rectangular_band(r, n / r))
            }
            _ => random_transformation_semigroup(rng, n),
        };
        if let Some(s) = s {
            return s;
        }
    }
    cyclic_group(n)
}

fn relabel(s: &PartialSemigroup, perm: &[usize]) -> PartialSemigroup {
    // perm[old] = new
    let mut inv = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    PartialSemigroup::from_fn(s.size(), |x, y| s.product(inv[x], inv[y]).map(|p| perm[p]))
}

/// Removes defined entries until the table is weakly associative.
fn repair(mut rows: Vec<Vec<Option<usize>>>, rng: &mut ChaCha8Rng) -> PartialSemigroup {
    loop {
        let s = PartialSemigroup::from_rows(rows.clone()).expect("entries stay in range");
        let report = s.validate();
        let Some(v) = report.violations.first() else {
            return s;
        };
        let (x, y, z) = v.triple;
        let xy = s.product(x, y);
        let yz = s.product(y, z);
        match v.kind {
            ViolationKind::OneSideUndefined if v.left.is_some() => {
                let xy = xy.unwrap();
                if rng.gen_bool(0.5) {
                    rows[xy][z] = None;
                } else {
                    rows[x][y] = None;
                }
            }
            ViolationKind::OneSideUndefined => {
                let yz = yz.unwrap();
                if rng.gen_bool(0.5) {
                    rows[x][yz] = None;
                } else {
                    rows[y][z] = None;
                }
            }
            ViolationKind::Unequal => {
                if rng.gen_bool(0.5) {
                    rows[xy.unwrap()][z] = None;
                } else {
                    rows[x][yz.unwrap()] = None;
                }
            }
        }
    }
}

/// A weakly associative partial table on `n` elements, deterministic in
/// `seed`. Half the draws restrict a random total semigroup to a random
/// domain, half start from uniformly random entries; both are repaired by
/// deleting entries until validation passes.
pub fn random_partial(n: usize, density: f64, seed: u64) -> Result<PartialSemigroup> {
    if n == 0 || n > 16 {
        return Err(Error::Family("random-partial needs 1 ≤ n ≤ 16".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Family("density must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RETRY_CAP {
        let from_total = rng.gen_bool(0.5);
        let base = from_total.then(|| random_total(&mut rng, n));
        let rows: Vec<Vec<Option<usize>>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        if !rng.gen_bool(density) {
                            return None;
                        }
                        match &base {
                            Some(b) => b.product(x, y),
                            None => Some(rng.gen_range(0..n)),
                        }
                    })
                    .collect()
            })
            .collect();
        let s = repair(rows, &mut rng);
        if s.defined_count() == 0 && n > 1 {
            continue;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        return Ok(relabel(&s, &perm));
    }
    Err(Error::Family("random generation retry cap exceeded".into()))
}

/// One labelled member of a corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub semigroup: PartialSemigroup,
}

/// Named families at sizes up to six, in a fixed order.
pub fn named_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |label: String, semigroup: PartialSemigroup| {
        out.push(CorpusEntry { label, semigroup })
    };
    for n in 1..=2 {
        push(format!("pf-disjoint-union {n}"), pf_disjoint_union(n).unwrap());
        push(format!("fp-sequence {n}"), fp_sequence(n).unwrap());
        push(format!("bounded-words {n}"), bounded_words(n).unwrap());
    }
    for n in 1..=4 {
        push(format!("right-zero {n}"), right_zero(n));
        push(format!("cyclic-group {n}"), cyclic_group(n));
    }
    for n in 2..=4 {
        push(format!("left-zero {n}"), left_zero(n));
        push(format!("zero-semigroup {n}"), zero_semigroup(n));
    }
    for n in [3, 4] {
        push(format!("bounded-addition {}", n + 1), bounded_addition(n + 1).unwrap());
    }
    push("cyclic-group 6".into(), cyclic_group(6));
    push("semilattice-with-zero 3".into(), semilattice_with_zero(3));
    push("monogenic 2 2".into(), monogenic(2, 2));
    push("monogenic 3 2".into(), monogenic(3, 2));
    for (g, m) in LEFT_GROUP_SHAPES {
        push(format!("left-group {g} {m}"), left_group(g, m));
    }
    out
}

/// The left groups used as decomposition fixtures.
pub const LEFT_GROUP_SHAPES: [(usize, usize); 6] = [(2, 2), (3, 2), (2, 3), (1, 3), (3, 1), (1, 2)];

/// Named families followed by `budget` random partial semigroups of size
/// 2 to 6. Deterministic in `seed`.
pub fn corpus(seed: u64, budget: usize) -> Vec<CorpusEntry> {
    let mut out = named_corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..budget {
        let n = rng.gen_range(2..=6);
        let density = [0.4, 0.6, 0.8, 0.9][rng.gen_range(0..4)];
        let inner: u64 = rng.gen();
        let semigroup = random_partial(n, density, inner).expect("retry cap is generous");
        out.push(CorpusEntry {
            label: format!("random-partial {n} {density} #{i}"),
            semigroup,
        });
    }
    out
}

/// Shift system on words of length ≤ 3, the translation system of `Z₂`, and
/// the translation system of the right-zero semigroup on three elements.
pub fn dynamical_fixtures() -> Vec<(String, PartialDynSystem)> {
    vec![
        (
            "bounded-words-shift-system 3".into(),
            bounded_words_shift_system(3).unwrap(),
        ),
        (
            "translation cyclic-group 2".into(),
            PartialDynSystem::translation(&cyclic_group(2)),
        ),
        (
            "translation right-zero 3".into(),
            PartialDynSystem::translation(&right_zero(3)),
        ),
    ]
}
