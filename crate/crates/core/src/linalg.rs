//! Vectors, matrices and subspaces over GF(q).
//!
//! Vectors are plain slices of [`Elem`]. Points of GF(q)^d are numbered by
//! reading the coordinate codes as a big-endian base-q number, so the point
//! `(0, 1, 2)` over GF(3) has index 5.

use std::sync::Arc;

use crate::field::{Elem, Field};
use crate::{Error, Result};

/// `q^dim` as a `u64`, if it fits.
pub fn point_count(field: &Field, dim: usize) -> Option<u64> {
    u64::from(field.size()).checked_pow(u32::try_from(dim).ok()?)
}

pub fn vector_index(field: &Field, v: &[Elem]) -> u64 {
    let q = u64::from(field.size());
    v.iter().fold(0, |acc, x| acc * q + u64::from(x.code()))
}

pub fn index_vector(field: &Field, dim: usize, index: u64) -> Result<Vec<Elem>> {
    let limit = point_count(field, dim).unwrap_or(u64::MAX);
    if index >= limit {
        return Err(Error::IndexOutOfRange { index, limit });
    }
    let q = u64::from(field.size());
    let mut v = vec![Elem::ZERO; dim];
    let mut rest = index;
    for slot in v.iter_mut().rev() {
        *slot = field.elem((rest % q) as u32)?;
        rest /= q;
    }
    Ok(v)
}

fn check_rows(rows: &[Vec<Elem>], width: usize) -> Result<()> {
    match rows.iter().find(|r| r.len() != width) {
        Some(r) => Err(Error::DimensionMismatch {
            expected: width,
            found: r.len(),
        }),
        None => Ok(()),
    }
}

/// Reduced row echelon form, zero rows dropped. Returns the rows together
/// with their pivot columns.
pub fn row_reduce(field: &Field, rows: &[Vec<Elem>]) -> Result<(Vec<Vec<Elem>>, Vec<usize>)> {
    let width = rows.first().map_or(0, Vec::len);
    check_rows(rows, width)?;
    let mut m = rows.to_vec();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        let Some(found) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next, found);
        let scale = field.inv(m[next][col])?;
        for x in m[next].iter_mut() {
            *x = field.mul(*x, scale);
        }
        let pivot_row = m[next].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        pivots.push(col);
        next += 1;
        if next == m.len() {
            break;
        }
    }
    m.truncate(next);
    Ok((m, pivots))
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> Result<usize> {
    Ok(row_reduce(field, rows)?.1.len())
}

/// A linear subspace of GF(q)^d, held in reduced row echelon form so that
/// equal subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Arc<Field>,
    ambient_dim: usize,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Arc<Field>, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The span of a nonempty list of equal-length vectors.
    pub fn span(field: Arc<Field>, vectors: &[Vec<Elem>]) -> Result<Subspace> {
        let Some(first) = vectors.first() else {
            return Err(Error::params(
                "cannot infer the ambient dimension of an empty span",
            ));
        };
        let ambient_dim = first.len();
        Self::span_in(field, ambient_dim, vectors)
    }

    /// The span of a possibly empty list of vectors in GF(q)^ambient_dim.
    pub fn span_in(
        field: Arc<Field>,
        ambient_dim: usize,
        vectors: &[Vec<Elem>],
    ) -> Result<Subspace> {
        check_rows(vectors, ambient_dim)?;
        if let Some(bad) = vectors.iter().flatten().find(|x| x.code() >= field.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad.code().into(),
                limit: field.size().into(),
            });
        }
        let (basis, pivots) = row_reduce(&field, vectors)?;
        Ok(Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field.size() != other.field.size() {
            return Err(Error::params(format!(
                "subspaces over GF({}) and GF({})",
                self.field.size(),
                other.field.size()
            )));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Subtracts multiples of the basis rows so that `v` vanishes on every
    /// pivot column. The result is the smallest point of `v + self`.
    pub fn reduce(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            let c = out[col];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in out.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span_in(self.field.clone(), self.ambient_dim, &rows)
    }

    /// Intersection via the Zassenhaus algorithm: row-reduce `[a | a]` over
    /// `[b | 0]`; rows with a vanishing left half span the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let d = self.ambient_dim;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field.clone(), d));
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for a in &self.basis {
            rows.push(a.iter().chain(a).copied().collect::<Vec<_>>());
        }
        for b in &other.basis {
            let mut row = b.clone();
            row.resize(2 * d, Elem::ZERO);
            rows.push(row);
        }
        let (reduced, _) = row_reduce(&self.field, &rows)?;
        let inter: Vec<_> = reduced
            .into_iter()
            .filter(|r| r[..d].iter().all(|x| x.is_zero()))
            .map(|r| r[d..].to_vec())
            .collect();
        Subspace::span_in(self.field.clone(), d, &inter)
    }

    /// All linear combinations of the basis added to `shift`, unsorted.
    fn combinations(&self, shift: &[Elem]) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let mut out = vec![shift.to_vec()];
        for row in &self.basis {
            let mut next = Vec::with_capacity(out.len() * f.size() as usize);
            for c in f.elements() {
                for p in &out {
                    next.push(
                        p.iter()
                            .zip(row)
                            .map(|(&x, &y)| f.add(x, f.mul(c, y)))
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }

    /// Every point of the subspace, sorted by index.
    pub fn points(&self) -> Vec<Vec<Elem>> {
        AffineSubspace::through_origin(self.clone()).points()
    }

    /// All `q^(d - dim)` cosets, partitioning the ambient space, sorted by
    /// canonical shift. The first coset is the subspace itself.
    pub fn cosets(&self) -> Vec<AffineSubspace> {
        let free: Vec<usize> = (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let q = self.field.size();
        let count = (q as usize).pow(free.len() as u32);
        let mut out = Vec::with_capacity(count);
        let mut shift = vec![Elem::ZERO; self.ambient_dim];
        for t in 0..count {
            let mut rest = t as u32;
            for &c in free.iter().rev() {
                shift[c] = Elem::from_code_unchecked(rest % q);
                rest /= q;
            }
            out.push(AffineSubspace {
                direction: self.clone(),
                shift: shift.clone(),
            });
        }
        out
    }
}

/// A coset `shift + direction`, with `shift` its smallest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    direction: Subspace,
    shift: Vec<Elem>,
}

impl AffineSubspace {
    pub fn new(direction: Subspace, point: &[Elem]) -> Result<AffineSubspace> {
        let shift = direction.reduce(point)?;
        Ok(AffineSubspace { direction, shift })
    }

    pub fn through_origin(direction: Subspace) -> AffineSubspace {
        let shift = vec![Elem::ZERO; direction.ambient_dim()];
        AffineSubspace { direction, shift }
    }

    pub fn direction(&self) -> &Subspace {
        &self.direction
    }

    pub fn shift(&self) -> &[Elem] {
        &self.shift
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        Ok(self.direction.reduce(v)? == self.shift)
    }

    /// The `q^dim` points of the coset, sorted by index.
    pub fn points(&self) -> Vec<Vec<Elem>> {
        let f = self.direction.field.clone();
        let mut pts = self.direction.combinations(&self.shift);
        pts.sort_by_cached_key(|p| vector_index(&f, p));
        pts
    }

    pub fn point_indices(&self) -> Vec<u64> {
        let f = &self.direction.field;
        let mut idx: Vec<u64> = self
            .direction
            .combinations(&self.shift)
            .iter()
            .map(|p| vector_index(f, p))
            .collect();
        idx.sort_unstable();
        idx
    }
}
