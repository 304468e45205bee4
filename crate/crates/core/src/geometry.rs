//! Finite-geometry objects behind the codes: the affine plane AG(2, q) and
//! collections of ℓ-dimensional subspaces of GF(q)^(2ℓ+1) whose off-origin
//! cosets meet few other members ("L-nice" collections).

use std::fmt;
use std::sync::Arc;

use crate::field::{Elem, Field};
use crate::linalg::{point_count, vector_index, AffineSubspace, Subspace};
use crate::{Error, Result};

/// Default cap on `q^(2ℓ+1)` for brute-force niceness checks.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// Default cap on search nodes for [`max_nice_collection`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 20;

/// AG(2, q). Points are indexed as `x * q + y`.
#[derive(Clone, Debug)]
pub struct AffinePlane {
    field: Arc<Field>,
    lines: Vec<Vec<usize>>,
}

impl AffinePlane {
    /// Lines `y = a x + b` ordered by `(a, b)`, followed by the vertical
    /// lines `x = c` ordered by `c`. Each line is a sorted point list.
    pub fn new(field: Arc<Field>) -> AffinePlane {
        let q = field.size() as usize;
        let mut lines = Vec::with_capacity(q * q + q);
        for a in field.elements() {
            for b in field.elements() {
                let mut line: Vec<usize> = field
                    .elements()
                    .map(|x| {
                        let y = field.add(field.mul(a, x), b);
                        x.code() as usize * q + y.code() as usize
                    })
                    .collect();
                line.sort_unstable();
                lines.push(line);
            }
        }
        for c in 0..q {
            lines.push((0..q).map(|y| c * q + y).collect());
        }
        AffinePlane { field, lines }
    }

    pub fn with_order(q: u64) -> Result<AffinePlane> {
        Ok(AffinePlane::new(Arc::new(Field::new(q)?)))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.size() as usize
    }

    pub fn point_count(&self) -> usize {
        self.order() * self.order()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }
}

/// How far a collection's niceness level can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Niceness {
    Unchecked,
    /// Asserted by construction but not verified.
    Claimed(u32),
    /// Exact value from exhaustive coset enumeration.
    BruteForce(u32),
}

impl Niceness {
    pub fn level(self) -> Option<u32> {
        match self {
            Niceness::Unchecked => None,
            Niceness::Claimed(l) | Niceness::BruteForce(l) => Some(l),
        }
    }

    pub fn is_brute_force(self) -> bool {
        matches!(self, Niceness::BruteForce(_))
    }
}

impl fmt::Display for Niceness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Niceness::Unchecked => write!(f, "unchecked"),
            Niceness::Claimed(l) => write!(f, "{l} (claimed)"),
            Niceness::BruteForce(l) => write!(f, "{l} (brute force)"),
        }
    }
}

/// A list of ℓ-dimensional subspaces of GF(q)^(2ℓ+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceCollection {
    field: Arc<Field>,
    ell: usize,
    subspaces: Vec<Subspace>,
    niceness: Niceness,
}

impl NiceCollection {
    pub fn new(field: Arc<Field>, ell: usize, subspaces: Vec<Subspace>) -> Result<NiceCollection> {
        if ell == 0 {
            return Err(Error::params("ell must be at least 1"));
        }
        for s in &subspaces {
            if s.field().size() != field.size() {
                return Err(Error::params("member subspace over a different field"));
            }
            if s.ambient_dim() != 2 * ell + 1 {
                return Err(Error::DimensionMismatch {
                    expected: 2 * ell + 1,
                    found: s.ambient_dim(),
                });
            }
        }
        Ok(NiceCollection {
            field,
            ell,
            subspaces,
            niceness: Niceness::Unchecked,
        })
    }

    pub fn with_niceness(mut self, niceness: Niceness) -> NiceCollection {
        self.niceness = niceness;
        self
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.ell + 1
    }

    pub fn m(&self) -> usize {
        self.subspaces.len()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn niceness(&self) -> Niceness {
        self.niceness
    }

    /// The first `m` members. A niceness level of the whole collection
    /// stays a valid upper bound for any sub-collection.
    pub fn truncated(&self, m: usize) -> Result<NiceCollection> {
        if m > self.m() {
            return Err(Error::params(format!(
                "asked for {m} members of a collection of {}",
                self.m()
            )));
        }
        Ok(NiceCollection {
            subspaces: self.subspaces[..m].to_vec(),
            ..self.clone()
        })
    }

    /// Every member has dimension ℓ and every pair meets only in the origin.
    pub fn check_pairwise(&self) -> bool {
        if self.subspaces.iter().any(|s| s.dim() != self.ell) {
            return false;
        }
        for (i, a) in self.subspaces.iter().enumerate() {
            for b in &self.subspaces[i + 1..] {
                match a.intersect(b) {
                    Ok(s) if s.dim() == 0 => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Runs [`check_niceness`] and records the result as brute-force certified.
    pub fn certify(&mut self, budget: u64) -> Result<u32> {
        let level = check_niceness(self, budget)?;
        self.niceness = Niceness::BruteForce(level);
        Ok(level)
    }
}

/// Reed–Solomon style collection: member `i` is spanned by the moment
/// vectors `(1, t, t^2, ..., t^(2ℓ))` at `t = alpha^(ℓi + j)`, `j < ℓ`.
///
/// The default size is `(q - 1) / ℓ`, the most blocks for which all
/// evaluation points are distinct. With `include_zero_block` (ℓ = 1 only)
/// the line through `(1, 0, ..., 0)` is appended as an extra member.
pub fn construction1(
    field: Arc<Field>,
    ell: usize,
    m_requested: Option<usize>,
    include_zero_block: bool,
) -> Result<NiceCollection> {
    if ell == 0 {
        return Err(Error::params("ell must be at least 1"));
    }
    if include_zero_block && ell != 1 {
        return Err(Error::params(
            "the zero evaluation block is only defined for ell = 1",
        ));
    }
    let capacity = (field.size() as usize - 1) / ell;
    let m = m_requested.unwrap_or(capacity);
    if m > capacity {
        return Err(Error::params(format!(
            "{m} blocks requested but GF({}) has room for {capacity} with ell = {ell}",
            field.size()
        )));
    }
    if m == 0 && !include_zero_block {
        return Err(Error::params(format!(
            "construction over GF({}) with ell = {ell} has no members",
            field.size()
        )));
    }
    let d = 2 * ell + 1;
    let mut subspaces = Vec::with_capacity(m + usize::from(include_zero_block));
    for i in 0..m {
        let rows: Vec<Vec<Elem>> = (0..ell)
            .map(|j| {
                let t = field.alpha_pow((ell * i + j) as u64);
                (0..d).map(|e| field.pow(t, e as u64)).collect()
            })
            .collect();
        subspaces.push(Subspace::span(field.clone(), &rows)?);
    }
    if include_zero_block {
        let mut e0 = vec![Elem::ZERO; d];
        e0[0] = Elem::ONE;
        subspaces.push(Subspace::span(field.clone(), &[e0])?);
    }
    Ok(NiceCollection::new(field, ell, subspaces)?.with_niceness(Niceness::Claimed(ell as u32)))
}

fn enumeration_size(field: &Field, dim: usize, budget: u64) -> Result<usize> {
    match point_count(field, dim) {
        Some(n) if n <= budget => Ok(n as usize),
        n => Err(Error::BudgetExceeded {
            what: "coset enumeration",
            needed: n.map_or(u128::MAX, u128::from),
            budget,
        }),
    }
}

/// Exact niceness level: the largest number of members met by a coset
/// `v + V_i` with `v` outside `V_i`. Requires [`NiceCollection::check_pairwise`].
pub fn check_niceness(c: &NiceCollection, budget: u64) -> Result<u32> {
    let total = enumeration_size(&c.field, c.ambient_dim(), budget)?;
    if !c.check_pairwise() {
        return Err(Error::params(
            "collection members must be ℓ-dimensional and pairwise trivially intersecting",
        ));
    }
    // Nonzero points belong to at most one member.
    const NONE: u32 = u32::MAX;
    let mut owner = vec![NONE; total];
    for (j, s) in c.subspaces.iter().enumerate() {
        for p in AffineSubspace::through_origin(s.clone()).point_indices() {
            if p != 0 {
                owner[p as usize] = j as u32;
            }
        }
    }
    let mut seen = vec![usize::MAX; c.m()];
    let mut stamp = 0;
    let mut worst = 0;
    for s in &c.subspaces {
        for coset in s.cosets().iter().skip(1) {
            let mut hits = 0;
            for p in coset.point_indices() {
                let j = owner[p as usize];
                if j != NONE && seen[j as usize] != stamp {
                    seen[j as usize] = stamp;
                    hits += 1;
                }
            }
            worst = worst.max(hits);
            stamp += 1;
        }
    }
    Ok(worst)
}

/// Every ℓ-dimensional subspace of GF(q)^d, via reduced echelon forms.
pub fn all_subspaces(field: &Arc<Field>, dim: usize, ambient_dim: usize) -> Vec<Subspace> {
    let q = field.size();
    let mut out = Vec::new();
    for pivots in combinations(ambient_dim, dim) {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let slots: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| {
                let piv = &pivots;
                (piv[r] + 1..ambient_dim)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = (q as u64).pow(slots.len() as u32);
        for t in 0..count {
            let mut rows = vec![vec![Elem::ZERO; ambient_dim]; dim];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = Elem::ONE;
            }
            let mut rest = t;
            for &(r, c) in &slots {
                rows[r][c] = Elem::from_code_unchecked((rest % q as u64) as u32);
                rest /= q as u64;
            }
            out.push(
                Subspace::span_in(field.clone(), ambient_dim, &rows)
                    .expect("echelon rows are well formed"),
            );
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

struct Search {
    level: u32,
    compatible: Vec<Vec<bool>>,
    // hits[i][j]: canonical-shift indices of off-origin cosets of candidate i meeting candidate j
    hits: Vec<Vec<Vec<usize>>>,
    counts: Vec<Vec<u32>>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn try_add(&mut self, c: usize) -> bool {
        let mut ok = true;
        for &i in &self.chosen {
            for &k in &self.hits[i][c] {
                self.counts[i][k] += 1;
                ok &= self.counts[i][k] <= self.level;
            }
            for &k in &self.hits[c][i] {
                self.counts[c][k] += 1;
                ok &= self.counts[c][k] <= self.level;
            }
        }
        ok
    }

    fn undo_add(&mut self, c: usize) {
        for &i in &self.chosen {
            for &k in &self.hits[i][c] {
                self.counts[i][k] -= 1;
            }
            for &k in &self.hits[c][i] {
                self.counts[c][k] -= 1;
            }
        }
    }

    fn run(&mut self, start: usize) -> Result<()> {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let total = self.compatible.len();
        for c in start..total {
            if self.chosen.len() + (total - c) <= self.best.len() {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    what: "nice collection search",
                    needed: u128::from(self.nodes),
                    budget: self.budget,
                });
            }
            if !self.chosen.iter().all(|&i| self.compatible[i][c]) {
                continue;
            }
            if self.try_add(c) {
                self.chosen.push(c);
                self.run(c + 1)?;
                self.chosen.pop();
            }
            self.undo_add(c);
        }
        Ok(())
    }
}

/// Largest L-nice collection of ℓ-dimensional subspaces of GF(q)^(2ℓ+1),
/// found by branch and bound over all candidate subspaces. The witness is
/// brute-force certified.
pub fn max_nice_collection(
    field: Arc<Field>,
    ell: usize,
    level: u32,
    budget: u64,
) -> Result<(usize, NiceCollection)> {
    if ell == 0 {
        return Err(Error::params("ell must be at least 1"));
    }
    let d = 2 * ell + 1;
    let total = enumeration_size(&field, d, budget)?;
    let candidates = all_subspaces(&field, ell, d);
    let count = candidates.len();
    if (count as u64).saturating_mul(total as u64) > budget.saturating_mul(16) {
        return Err(Error::BudgetExceeded {
            what: "nice collection search tables",
            needed: count as u128 * total as u128,
            budget,
        });
    }

    let mut compatible = vec![vec![false; count]; count];
    for i in 0..count {
        for j in i + 1..count {
            let ok = candidates[i].intersect(&candidates[j])?.dim() == 0;
            compatible[i][j] = ok;
            compatible[j][i] = ok;
        }
    }
    let point_sets: Vec<Vec<Vec<Elem>>> = candidates.iter().map(Subspace::points).collect();
    let mut hits = vec![vec![Vec::new(); count]; count];
    for i in 0..count {
        for j in 0..count {
            if !compatible[i][j] {
                continue;
            }
            let mut ks: Vec<usize> = point_sets[j]
                .iter()
                .map(|p| {
                    let shift = candidates[i].reduce(p).expect("matching dimensions");
                    vector_index(&field, &shift) as usize
                })
                .filter(|&k| k != 0)
                .collect();
            ks.sort_unstable();
            ks.dedup();
            hits[i][j] = ks;
        }
    }

    let mut search = Search {
        level,
        compatible,
        hits,
        counts: vec![vec![0; total]; count],
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
    };
    search.run(0)?;

    let members = search.best.iter().map(|&i| candidates[i].clone()).collect();
    let mut witness = NiceCollection::new(field, ell, members)?;
    witness.certify(budget)?;
    Ok((witness.m(), witness))
}
