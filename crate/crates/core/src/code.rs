//! Systematic binary batch codes `G = [I_n | E]`.
//!
//! A code is stored as the supports of the columns of `E`: parity `t`
//! (codeword position `n + t`) is the XOR of the information bits listed in
//! `parities[t]`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::geometry::{AffinePlane, NiceCollection, Niceness};
use crate::linalg::point_count;
use crate::multiset::{multiset_count, MultisetRequest, Multisets};
use crate::{Error, Result};

/// Default cap on enumerated multisets and on conflict-scan work.
pub const DEFAULT_VERIFY_BUDGET: u64 = 10_000_000;

/// Largest code length accepted by [`VerifyMode::ExhaustiveSmall`].
pub const EXHAUSTIVE_MAX_LENGTH: usize = 24;

/// Where a code came from; written to the `meta` line of code files.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Explicit {
        q: u32,
        ell: usize,
        m: usize,
        niceness: Niceness,
    },
    Random {
        q: u32,
        k: usize,
        p1: f64,
        p2: f64,
        seed: u64,
    },
    Imported,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchCode {
    n: usize,
    parities: Vec<Vec<usize>>,
    meta: Provenance,
    // incidence[i]: parities whose support contains i, ascending
    incidence: Vec<Vec<usize>>,
}

impl BatchCode {
    pub fn new(n: usize, parities: Vec<Vec<usize>>, meta: Provenance) -> Result<BatchCode> {
        let mut incidence = vec![Vec::new(); n];
        for (t, support) in parities.iter().enumerate() {
            if support.is_empty() {
                return Err(Error::params(format!("parity {t} has an empty support")));
            }
            if support.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::params(format!(
                    "parity {t} support is not strictly increasing"
                )));
            }
            if let Some(&bad) = support.last().filter(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange {
                    index: bad as u64,
                    limit: n as u64,
                });
            }
            for &i in support {
                incidence[i].push(t);
            }
        }
        Ok(BatchCode {
            n,
            parities,
            meta,
            incidence,
        })
    }

    /// Number of information symbols.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parity checks.
    pub fn r(&self) -> usize {
        self.parities.len()
    }

    /// Code length `n + r`.
    pub fn length(&self) -> usize {
        self.n + self.r()
    }

    pub fn parities(&self) -> &[Vec<usize>] {
        &self.parities
    }

    pub fn meta(&self) -> &Provenance {
        &self.meta
    }

    /// Parities that involve information symbol `i`.
    pub fn parities_of(&self, i: usize) -> Result<&[usize]> {
        self.incidence
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: i as u64,
                limit: self.n as u64,
            })
    }

    /// Availability promised by the construction: `m / L` for explicit codes
    /// with a known niceness level, the design target `k` for random codes.
    pub fn claimed_availability(&self) -> Option<usize> {
        match &self.meta {
            Provenance::Explicit { m, niceness, .. } => {
                niceness.level().map(|l| m / (l.max(1) as usize))
            }
            Provenance::Random { k, .. } => Some(*k),
            Provenance::Imported => None,
        }
    }

    pub fn encode(&self, info: &[bool]) -> Result<Vec<bool>> {
        if info.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: info.len(),
            });
        }
        let mut word = info.to_vec();
        word.extend(
            self.parities
                .iter()
                .map(|s| s.iter().fold(false, |acc, &i| acc ^ info[i])),
        );
        Ok(word)
    }

    /// XOR of the codeword bits at the set's positions.
    pub fn read(&self, codeword: &[bool], set: &RecoveringSet) -> Result<bool> {
        if codeword.len() != self.length() {
            return Err(Error::LengthMismatch {
                expected: self.length(),
                found: codeword.len(),
            });
        }
        Ok(set
            .positions
            .iter()
            .fold(false, |acc, &p| acc ^ codeword[p]))
    }

    fn simple_set(&self, target: usize, t: usize) -> RecoveringSet {
        let mut positions: Vec<usize> = self.parities[t]
            .iter()
            .copied()
            .filter(|&x| x != target)
            .collect();
        positions.push(self.n + t);
        RecoveringSet {
            target,
            positions,
            kind: SetKind::Simple,
        }
    }

    /// One simple recovering set per parity involving `i`, in parity order.
    pub fn simple_recovering_sets(&self, i: usize) -> Result<Vec<RecoveringSet>> {
        Ok(self
            .parities_of(i)?
            .iter()
            .map(|&t| self.simple_set(i, t))
            .collect())
    }

    /// Serves a multiset request greedily.
    ///
    /// Groups are handled in index order. Each group first takes the
    /// systematic copy when singletons are allowed and still free, then the
    /// simple recovering sets in parity order that avoid every position used
    /// so far. With `avoid_requested` a parity is also skipped when its support
    /// contains another requested symbol. Failure does not show that the
    /// request is unservable.
    pub fn greedy_assign(&self, req: &MultisetRequest, opts: GreedyOptions) -> Result<Assignment> {
        if let Some(i) = req.max_index().filter(|&i| i >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: i as u64,
                limit: self.n as u64,
            });
        }
        let requested: Vec<usize> = req.groups().iter().map(|&(i, _)| i).collect();
        let mut used = vec![false; self.length()];
        let mut sets = Vec::with_capacity(req.total());
        for (group, &(i, needed)) in req.groups().iter().enumerate() {
            let mut found = 0;
            if opts.allow_singleton && !used[i] {
                used[i] = true;
                sets.push(RecoveringSet::singleton(i));
                found += 1;
            }
            for &t in &self.incidence[i] {
                if found == needed {
                    break;
                }
                let support = &self.parities[t];
                if used[self.n + t] || support.iter().any(|&x| x != i && used[x]) {
                    continue;
                }
                if opts.avoid_requested
                    && support
                        .iter()
                        .any(|&x| x != i && requested.binary_search(&x).is_ok())
                {
                    continue;
                }
                let set = self.simple_set(i, t);
                for &p in &set.positions {
                    used[p] = true;
                }
                sets.push(set);
                found += 1;
            }
            if found < needed {
                return Err(Error::GreedyExhausted {
                    group,
                    index: i,
                    found,
                    needed,
                });
            }
        }
        Ok(Assignment { sets })
    }

    /// Checks the `k`-batch property over every size-`k` multiset, in
    /// lexicographic order, stopping at the first failure.
    pub fn verify_batch(&self, k: usize, mode: VerifyMode, opts: VerifyOptions) -> Result<Verdict> {
        let count = multiset_count(self.n as u64, k as u64).unwrap_or(u128::MAX);
        if count > u128::from(opts.budget) {
            return Err(Error::BudgetExceeded {
                what: "multiset enumeration",
                needed: count,
                budget: opts.budget,
            });
        }
        match mode {
            VerifyMode::Simple => self.verify_simple(k, opts.allow_singleton),
            VerifyMode::ExhaustiveSmall => self.verify_exhaustive(k),
        }
    }

    fn verify_simple(&self, k: usize, allow_singleton: bool) -> Result<Verdict> {
        let candidates: Vec<Vec<Vec<usize>>> = (0..self.n)
            .map(|i| {
                let mut c = Vec::with_capacity(self.incidence[i].len() + 1);
                if allow_singleton {
                    c.push(vec![i]);
                }
                c.extend(
                    self.incidence[i]
                        .iter()
                        .map(|&t| self.simple_set(i, t).positions),
                );
                c
            })
            .collect();
        let mut used = vec![false; self.length()];
        let mut checked = 0;
        for tuple in Multisets::new(self.n, k) {
            checked += 1;
            if !disjoint_cover(&tuple, 0, 0, &candidates, &mut used) {
                return Ok(Verdict {
                    holds: Holds::Inconclusive,
                    checked,
                    witness: Some(tuple),
                });
            }
        }
        Ok(Verdict {
            holds: Holds::True,
            checked,
            witness: None,
        })
    }

    fn verify_exhaustive(&self, k: usize) -> Result<Verdict> {
        let len = self.length();
        if len > EXHAUSTIVE_MAX_LENGTH {
            return Err(Error::BudgetExceeded {
                what: "exhaustive recovering-set enumeration (code length)",
                needed: len as u128,
                budget: EXHAUSTIVE_MAX_LENGTH as u64,
            });
        }
        let sets = self.minimal_recovering_masks();
        let mut checked = 0;
        for tuple in Multisets::new(self.n, k) {
            checked += 1;
            if !disjoint_masks(&tuple, 0, 0, 0, &sets) {
                return Ok(Verdict {
                    holds: Holds::False,
                    checked,
                    witness: Some(tuple),
                });
            }
        }
        Ok(Verdict {
            holds: Holds::True,
            checked,
            witness: None,
        })
    }

    /// For each information symbol, the inclusion-minimal position sets
    /// whose generator columns sum to that symbol's unit vector. Any family
    /// of disjoint recovering sets shrinks to one made of minimal sets.
    fn minimal_recovering_masks(&self) -> Vec<Vec<u32>> {
        let len = self.length();
        let columns: Vec<u32> = (0..self.n)
            .map(|i| 1u32 << i)
            .chain(
                self.parities
                    .iter()
                    .map(|s| s.iter().fold(0u32, |acc, &i| acc | (1 << i))),
            )
            .collect();
        let mut all = vec![Vec::new(); self.n];
        // Gray-code walk over every subset of positions
        let (mut mask, mut value) = (0u32, 0u32);
        for step in 1u64..(1u64 << len) {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            value ^= columns[bit];
            if value.is_power_of_two() {
                all[value.trailing_zeros() as usize].push(mask);
            }
        }
        all.into_iter()
            .map(|mut masks| {
                masks.sort_by_key(|m| (m.count_ones(), *m));
                let mut kept: Vec<u32> = Vec::new();
                for m in masks {
                    if !kept.iter().any(|&s| s & !m == 0) {
                        kept.push(m);
                    }
                }
                kept
            })
            .collect()
    }

    /// Largest number of simple recovering sets of one symbol that a single
    /// simple recovering set of another symbol intersects.
    pub fn conflict_degree(&self, budget: u64) -> Result<usize> {
        let n = self.n;
        let mut offset = Vec::with_capacity(self.r() + 1);
        offset.push(0usize);
        for s in &self.parities {
            offset.push(offset.last().unwrap() + s.len());
        }
        let total_sets = *offset.last().unwrap();

        // sets containing info position z: sum over parities u with z of |S_u| - 1
        let through: Vec<u128> = (0..n)
            .map(|z| {
                self.incidence[z]
                    .iter()
                    .map(|&u| self.parities[u].len() as u128 - 1)
                    .sum()
            })
            .collect();
        let work: u128 = self
            .parities
            .iter()
            .map(|s| {
                let inner: u128 = s.iter().map(|&z| through[z]).sum();
                s.len() as u128 * (s.len() as u128 + inner)
            })
            .sum();
        if work > u128::from(budget) {
            return Err(Error::BudgetExceeded {
                what: "conflict scan",
                needed: work,
                budget,
            });
        }

        let mut stamp_of_set = vec![usize::MAX; total_sets];
        let mut hits = vec![0usize; n];
        let mut stamp_of_symbol = vec![usize::MAX; n];
        let mut worst = 0;
        let mut stamp = 0;
        for (t, support) in self.parities.iter().enumerate() {
            for &x in support {
                let mut touch = |u: usize, y: usize, idx: usize| {
                    if y == x {
                        return;
                    }
                    let id = offset[u] + idx;
                    if stamp_of_set[id] == stamp {
                        return;
                    }
                    stamp_of_set[id] = stamp;
                    if stamp_of_symbol[y] != stamp {
                        stamp_of_symbol[y] = stamp;
                        hits[y] = 0;
                    }
                    hits[y] += 1;
                    worst = worst.max(hits[y]);
                };
                // the parity position itself
                for (idx, &y) in support.iter().enumerate() {
                    touch(t, y, idx);
                }
                for &z in support.iter().filter(|&&z| z != x) {
                    for &u in &self.incidence[z] {
                        for (idx, &y) in self.parities[u].iter().enumerate() {
                            if y != z {
                                touch(u, y, idx);
                            }
                        }
                    }
                }
                stamp += 1;
            }
        }
        Ok(worst)
    }
}

fn disjoint_cover(
    tuple: &[usize],
    pos: usize,
    start: usize,
    candidates: &[Vec<Vec<usize>>],
    used: &mut [bool],
) -> bool {
    let Some(&i) = tuple.get(pos) else {
        return true;
    };
    for (c, set) in candidates[i].iter().enumerate().skip(start) {
        if set.iter().any(|&p| used[p]) {
            continue;
        }
        set.iter().for_each(|&p| used[p] = true);
        // equal symbols take candidates in increasing order
        let next_start = match tuple.get(pos + 1) {
            Some(&j) if j == i => c + 1,
            _ => 0,
        };
        let ok = disjoint_cover(tuple, pos + 1, next_start, candidates, used);
        set.iter().for_each(|&p| used[p] = false);
        if ok {
            return true;
        }
    }
    false
}

fn disjoint_masks(tuple: &[usize], pos: usize, start: usize, used: u32, sets: &[Vec<u32>]) -> bool {
    let Some(&i) = tuple.get(pos) else {
        return true;
    };
    sets[i].iter().enumerate().skip(start).any(|(c, &m)| {
        if m & used != 0 {
            return false;
        }
        let next_start = match tuple.get(pos + 1) {
            Some(&j) if j == i => c + 1,
            _ => 0,
        };
        disjoint_masks(tuple, pos + 1, next_start, used | m, sets)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    /// Exactly one parity position plus information positions.
    Simple,
    /// The target's own systematic position.
    Singleton,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetKind::Simple => "simple",
            SetKind::Singleton => "singleton",
        })
    }
}

/// Codeword positions whose XOR is the information bit `target`. Positions
/// below `n` are systematic, the rest are parities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveringSet {
    pub target: usize,
    pub positions: Vec<usize>,
    pub kind: SetKind,
}

impl RecoveringSet {
    pub fn singleton(target: usize) -> RecoveringSet {
        RecoveringSet {
            target,
            positions: vec![target],
            kind: SetKind::Singleton,
        }
    }

    /// The information positions of the set.
    pub fn info_positions(&self, n: usize) -> Vec<usize> {
        self.positions.iter().copied().filter(|&p| p < n).collect()
    }
}

impl fmt::Display for RecoveringSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.positions.iter().map(usize::to_string).collect();
        write!(
            f,
            "target={} kind={} positions={}",
            self.target,
            self.kind,
            list.join(",")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub sets: Vec<RecoveringSet>,
}

impl Assignment {
    pub fn is_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.sets
            .iter()
            .flat_map(|s| &s.positions)
            .all(|p| seen.insert(*p))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GreedyOptions {
    pub allow_singleton: bool,
    pub avoid_requested: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Backtracking over the singleton and simple recovering sets. A failure
    /// here is inconclusive.
    Simple,
    /// Backtracking over every recovering set; needs `n + r <= 24`.
    ExhaustiveSmall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Only consulted in simple mode; the exhaustive mode always considers
    /// every recovering set.
    pub allow_singleton: bool,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            allow_singleton: true,
            budget: DEFAULT_VERIFY_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Holds {
    True,
    False,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: Holds,
    /// Multisets examined, including the failing one.
    pub checked: u64,
    pub witness: Option<Vec<usize>>,
}

/// Builds the code whose parities are the cosets of the collection's
/// members: one parity per coset, members in collection order, cosets by
/// canonical shift. With `strict`, an unchecked collection is rejected.
pub fn build_explicit(c: &NiceCollection, strict: bool) -> Result<BatchCode> {
    if !c.check_pairwise() {
        return Err(Error::params(
            "collection members must be ℓ-dimensional and pairwise trivially intersecting",
        ));
    }
    if strict && c.niceness() == Niceness::Unchecked {
        return Err(Error::UncertifiedCollection);
    }
    let n = point_count(c.field(), c.ambient_dim())
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::params("ambient space too large"))?;
    let parities = c
        .subspaces()
        .iter()
        .flat_map(|s| s.cosets())
        .map(|coset| {
            coset
                .point_indices()
                .into_iter()
                .map(|p| p as usize)
                .collect()
        })
        .collect();
    let meta = Provenance::Explicit {
        q: c.field().size(),
        ell: c.ell(),
        m: c.m(),
        niceness: c.niceness(),
    };
    BatchCode::new(n, parities, meta)
}

/// `1 / sqrt(8k)`.
pub fn default_p2(k: usize) -> f64 {
    1.0 / (8.0 * k as f64).sqrt()
}

/// `36 k^(3/2) ln(n) / sqrt(n)`, unclamped. The logarithm is natural.
pub fn p1_formula(n: u64, k: usize) -> f64 {
    let n = n as f64;
    36.0 * (k as f64).powf(1.5) * n.ln() / n.sqrt()
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RandomOptions {
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    /// Accept `k >= q / 12` with a warning instead of an error.
    pub allow_large_k: bool,
}

#[derive(Clone, Debug)]
pub struct RandomBuild {
    pub code: BatchCode,
    pub p1: f64,
    pub p2: f64,
    pub warnings: Vec<String>,
}

/// Samples a code from the lines of AG(2, q): each line is kept with
/// probability `p1`, then each point of a kept line with probability `p2`.
/// Draws come from one ChaCha8 stream seeded with `seed`, in line order and
/// then point order. Empty subsets are dropped.
pub fn build_random(
    field: Arc<Field>,
    k: usize,
    seed: u64,
    opts: RandomOptions,
) -> Result<RandomBuild> {
    if k == 0 {
        return Err(Error::params("k must be at least 1"));
    }
    let q = field.size();
    let mut warnings = Vec::new();
    if k as f64 >= f64::from(q) / 12.0 {
        let msg = format!("k = {k} is not below q/12 = {:.3}", f64::from(q) / 12.0);
        if !opts.allow_large_k {
            return Err(Error::InvalidParams(msg));
        }
        warnings.push(msg);
    }
    let n = u64::from(q) * u64::from(q);
    let p2 = match opts.p2 {
        Some(p) => check_probability("p2", p)?,
        None => default_p2(k),
    };
    let p1 = match opts.p1 {
        Some(p) => check_probability("p1", p)?,
        None => {
            let raw = p1_formula(n, k);
            if raw > 1.0 {
                warnings.push(format!(
                    "p1 formula gives {raw:.4} > 1 at n = {n}; clamped to 1"
                ));
                1.0
            } else {
                raw
            }
        }
    };

    let plane = AffinePlane::new(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parities = Vec::new();
    for line in plane.lines() {
        if rng.gen::<f64>() >= p1 {
            continue;
        }
        let subset: Vec<usize> = line
            .iter()
            .copied()
            .filter(|_| rng.gen::<f64>() < p2)
            .collect();
        if !subset.is_empty() {
            parities.push(subset);
        }
    }
    let meta = Provenance::Random { q, k, p1, p2, seed };
    let code = BatchCode::new(n as usize, parities, meta)?;
    Ok(RandomBuild {
        code,
        p1,
        p2,
        warnings,
    })
}

fn check_probability(name: &str, p: f64) -> Result<f64> {
    if p > 0.0 && p <= 1.0 {
        Ok(p)
    } else {
        Err(Error::params(format!("{name} = {p} is not in (0, 1]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::construction1;

    fn example_code() -> BatchCode {
        let field = Arc::new(Field::new(3).unwrap());
        let mut c = construction1(field, 1, None, true).unwrap();
        c.certify(1000).unwrap();
        build_explicit(&c, true).unwrap()
    }

    #[test]
    fn example_shape() {
        let code = example_code();
        assert_eq!((code.n(), code.r(), code.length()), (27, 27, 54));
        assert_eq!(code.claimed_availability(), Some(3));
        // direction (1,2,1) is the second member, coset through (0,1,2)
        assert!(code.parities()[9..18].contains(&vec![5, 9, 25]));
    }

    #[test]
    fn rejects_bad_supports() {
        assert!(BatchCode::new(3, vec![vec![]], Provenance::Imported).is_err());
        assert!(BatchCode::new(3, vec![vec![2, 1]], Provenance::Imported).is_err());
        assert!(BatchCode::new(3, vec![vec![1, 1]], Provenance::Imported).is_err());
        assert!(matches!(
            BatchCode::new(3, vec![vec![0, 3]], Provenance::Imported),
            Err(Error::IndexOutOfRange { index: 3, limit: 3 })
        ));
    }

    #[test]
    fn strict_needs_niceness() {
        let field = Arc::new(Field::new(3).unwrap());
        let c = construction1(field, 1, None, true)
            .unwrap()
            .with_niceness(Niceness::Unchecked);
        assert_eq!(build_explicit(&c, true), Err(Error::UncertifiedCollection));
        assert!(build_explicit(&c, false).is_ok());
    }

    #[test]
    fn encode_basics() {
        let code = example_code();
        assert!(code.encode(&[false; 27]).unwrap().iter().all(|&b| !b));
        let mut info = vec![false; 27];
        info[5] = true;
        let word = code.encode(&info).unwrap();
        let set_parities: Vec<usize> = (0..27).filter(|&t| word[27 + t]).collect();
        assert_eq!(set_parities, code.parities_of(5).unwrap());
        assert_eq!(set_parities.len(), 3);
        assert!(code.encode(&[false; 26]).is_err());
    }

    #[test]
    fn singleton_and_uncovered() {
        let code = BatchCode::new(3, vec![vec![0, 1]], Provenance::Imported).unwrap();
        assert!(code.simple_recovering_sets(2).unwrap().is_empty());
        assert!(code.simple_recovering_sets(3).is_err());
        let req = MultisetRequest::from_indices(&[2]);
        let opts = GreedyOptions {
            allow_singleton: true,
            ..Default::default()
        };
        let a = code.greedy_assign(&req, opts).unwrap();
        assert_eq!(a.sets, vec![RecoveringSet::singleton(2)]);
        assert!(matches!(
            code.greedy_assign(&req, GreedyOptions::default()),
            Err(Error::GreedyExhausted {
                found: 0,
                needed: 1,
                ..
            })
        ));
    }

    #[test]
    fn avoid_requested_skips_requested_points() {
        // one parity through both requested symbols, one through 0 alone
        let code = BatchCode::new(
            3,
            vec![vec![0, 1], vec![0, 2], vec![1]],
            Provenance::Imported,
        )
        .unwrap();
        let req = MultisetRequest::from_indices(&[0, 1]);
        let loose = code.greedy_assign(&req, GreedyOptions::default()).unwrap();
        assert_eq!(loose.sets[0].positions, vec![1, 3]);
        let strict = GreedyOptions {
            avoid_requested: true,
            ..Default::default()
        };
        let a = code.greedy_assign(&req, strict).unwrap();
        assert_eq!(a.sets[0].positions, vec![2, 4]);
        assert_eq!(a.sets[1].positions, vec![5]);
    }

    #[test]
    fn trivial_verdicts() {
        let code = BatchCode::new(4, vec![], Provenance::Imported).unwrap();
        let v = code
            .verify_batch(1, VerifyMode::Simple, VerifyOptions::default())
            .unwrap();
        assert_eq!(v.holds, Holds::True);
        assert_eq!(v.checked, 4);
        let v = code
            .verify_batch(2, VerifyMode::ExhaustiveSmall, VerifyOptions::default())
            .unwrap();
        assert_eq!(v.holds, Holds::False);
        assert_eq!(v.witness, Some(vec![0, 0]));
        let tight = VerifyOptions {
            budget: 5,
            ..Default::default()
        };
        assert!(matches!(
            code.verify_batch(2, VerifyMode::Simple, tight),
            Err(Error::BudgetExceeded { needed: 10, .. })
        ));
    }

    #[test]
    fn conflict_of_single_parity() {
        let code = BatchCode::new(4, vec![vec![0, 1, 2]], Provenance::Imported).unwrap();
        assert_eq!(code.conflict_degree(DEFAULT_VERIFY_BUDGET).unwrap(), 1);
        assert!(matches!(
            code.conflict_degree(1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn random_parameters() {
        assert!((default_p2(3) - 0.204_124_145).abs() < 1e-8);
        let raw = p1_formula(2401, 3);
        assert!((raw - 36.0 * 3f64.powf(1.5) * 2401f64.ln() / 49.0).abs() < 1e-12);
        assert!(raw > 1.0);

        let field = Arc::new(Field::new(49).unwrap());
        let b = build_random(field.clone(), 3, 1, RandomOptions::default()).unwrap();
        assert_eq!(b.p1, 1.0);
        assert_eq!(b.warnings.len(), 1);

        let full = RandomOptions {
            p1: Some(1.0),
            p2: Some(1.0),
            ..Default::default()
        };
        let b = build_random(field.clone(), 3, 9, full).unwrap();
        let plane = AffinePlane::new(field.clone());
        assert_eq!(b.code.parities(), plane.lines());

        assert!(build_random(field.clone(), 5, 1, RandomOptions::default()).is_err());
        let bad = RandomOptions {
            p1: Some(0.0),
            ..Default::default()
        };
        assert!(build_random(field, 1, 1, bad).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let field = Arc::new(Field::new(25).unwrap());
        let opts = RandomOptions {
            p1: Some(0.3),
            ..Default::default()
        };
        let a = build_random(field.clone(), 2, 11, opts).unwrap().code;
        let b = build_random(field.clone(), 2, 11, opts).unwrap().code;
        let c = build_random(field, 2, 12, opts).unwrap().code;
        assert_eq!(a, b);
        assert_ne!(a.parities(), c.parities());
    }
}
