//! Multisets of information indices: requests, enumeration and sampling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::{Error, Result};

/// Number of size-`k` multisets over `n` symbols, `C(n + k - 1, k)`, or
/// `None` on overflow.
pub fn multiset_count(n: u64, k: u64) -> Option<u128> {
    if k == 0 {
        return Some(1);
    }
    if n == 0 {
        return Some(0);
    }
    let top = u128::from(n) + u128::from(k) - 1;
    let mut acc: u128 = 1;
    for i in 0..u128::from(k) {
        acc = acc.checked_mul(top - i)? / (i + 1);
    }
    Some(acc)
}

/// Iterates over all non-decreasing `k`-tuples from `[0, n)` in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct Multisets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(n: usize, k: usize) -> Multisets {
        let current = (n > 0 || k == 0).then(|| vec![0; k]);
        Multisets { n, current }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if let Some(pos) = next.iter().rposition(|&x| x + 1 < self.n) {
            let v = next[pos] + 1;
            next[pos..].iter_mut().for_each(|x| *x = v);
            self.current = Some(next);
        }
        Some(out)
    }
}

/// A uniformly random size-`k` multiset over `[0, n)`, as a sorted tuple.
///
/// Draws a `k`-subset of `[0, n + k - 1)` and maps it through the
/// stars-and-bars bijection.
pub fn sample_multiset<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    assert!(n > 0, "cannot sample from an empty alphabet");
    let mut picked = rand::seq::index::sample(rng, n + k - 1, k).into_vec();
    picked.sort_unstable();
    picked.iter().enumerate().map(|(j, &x)| x - j).collect()
}

/// A multiset of requested information symbols grouped as
/// `(index, multiplicity)` with strictly increasing indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetRequest {
    items: Vec<(usize, usize)>,
}

impl MultisetRequest {
    /// Groups the given indices, which may repeat and come in any order.
    pub fn from_indices(indices: &[usize]) -> MultisetRequest {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        let mut items: Vec<(usize, usize)> = Vec::new();
        for i in sorted {
            match items.last_mut() {
                Some((last, count)) if *last == i => *count += 1,
                _ => items.push((i, 1)),
            }
        }
        MultisetRequest { items }
    }

    pub fn from_groups(items: Vec<(usize, usize)>) -> Result<MultisetRequest> {
        if items.iter().any(|&(_, k)| k == 0) {
            return Err(Error::params("request multiplicities must be positive"));
        }
        if items.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::params("request indices must be strictly increasing"));
        }
        Ok(MultisetRequest { items })
    }

    pub fn groups(&self) -> &[(usize, usize)] {
        &self.items
    }

    pub fn total(&self) -> usize {
        self.items.iter().map(|&(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.items.last().map(|&(i, _)| i)
    }

    /// The request flattened back into a sorted tuple.
    pub fn to_indices(&self) -> Vec<usize> {
        self.items
            .iter()
            .flat_map(|&(i, k)| std::iter::repeat_n(i, k))
            .collect()
    }
}

impl FromStr for MultisetRequest {
    type Err = Error;

    /// Parses comma-separated indices such as `5,5,9`.
    fn from_str(s: &str) -> Result<MultisetRequest> {
        if s.trim().is_empty() {
            return Err(Error::Parse {
                line: 1,
                msg: "empty request".into(),
            });
        }
        let indices = s
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|e| Error::Parse {
                    line: 1,
                    msg: format!("bad index {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultisetRequest::from_indices(&indices))
    }
}

impl fmt::Display for MultisetRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_indices().iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts() {
        assert_eq!(multiset_count(27, 3), Some(3654));
        assert_eq!(multiset_count(5, 0), Some(1));
        assert_eq!(multiset_count(0, 2), Some(0));
        assert_eq!(multiset_count(1, 10), Some(1));
    }

    #[test]
    fn enumeration_order() {
        let all: Vec<_> = Multisets::new(3, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 1],
                vec![1, 2],
                vec![2, 2]
            ]
        );
        assert_eq!(Multisets::new(27, 3).count(), 3654);
        assert_eq!(Multisets::new(0, 2).count(), 0);
        assert_eq!(
            Multisets::new(4, 0).collect::<Vec<_>>(),
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn sampling_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = sample_multiset(&mut rng, 4, 3);
            assert_eq!(m.len(), 3);
            assert!(m.windows(2).all(|w| w[0] <= w[1]));
            assert!(m.iter().all(|&x| x < 4));
        }
    }

    #[test]
    fn parse_requests() {
        let r: MultisetRequest = "9,5,5".parse().unwrap();
        assert_eq!(r.groups(), &[(5, 2), (9, 1)]);
        assert_eq!(r.total(), 3);
        assert_eq!(r.to_string(), "5,5,9");
        assert!("".parse::<MultisetRequest>().is_err());
        assert!("1,,2".parse::<MultisetRequest>().is_err());
        assert!("a".parse::<MultisetRequest>().is_err());
        assert!(MultisetRequest::from_groups(vec![(3, 1), (2, 1)]).is_err());
        assert!(MultisetRequest::from_groups(vec![(3, 0)]).is_err());
    }
}
