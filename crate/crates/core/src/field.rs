//! Arithmetic in GF(q) for prime powers q.
//!
//! Elements are integer codes in `[0, q)`. The base-p digits of a code,
//! least significant first, are the coefficients of the representing
//! polynomial (constant term first), reduced modulo the field's monic
//! irreducible modulus. Code 0 is zero and code 1 is one.

use std::fmt;

use crate::{Error, Result};

/// Largest supported field size; log/antilog tables are kept in memory.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// A field element, stored as its canonical code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) const fn from_code_unchecked(code: u32) -> Elem {
        Elem(code)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field GF(p^deg).
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    q: u32,
    p: u32,
    deg: u32,
    modulus: Vec<u32>,
    alpha: Elem,
    // exp[e] = alpha^e for e in [0, q-1); log[a] inverts it for a != 0.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("deg", &self.deg)
            .field("modulus", &self.modulus)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl Field {
    /// Builds GF(q). The modulus is the lexicographically smallest monic
    /// irreducible polynomial of the right degree (coefficients compared
    /// constant term first) and `alpha` is the smallest primitive code.
    pub fn new(q: u64) -> Result<Field> {
        let (p, deg) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::params(format!(
                "field size {q} exceeds the supported maximum {MAX_FIELD_SIZE}"
            )));
        }
        let (p, deg, q) = (p as u32, deg, q as u32);
        let modulus = smallest_irreducible(p, deg);
        let mut field = Field {
            q,
            p,
            deg,
            modulus,
            alpha: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };

        let group_order = u64::from(q - 1);
        let factors = prime_factors(group_order);
        let alpha = (1..q)
            .map(Elem)
            .find(|&a| {
                factors
                    .iter()
                    .all(|&r| field.pow_slow(a, group_order / r) != Elem::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        field.alpha = alpha;

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = Elem::ONE;
        for e in 0..q - 1 {
            exp.push(x.0);
            log[x.0 as usize] = e;
            x = field.mul_slow(x, alpha);
        }
        debug_assert_eq!(x, Elem::ONE);
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The canonical primitive element.
    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.q {
            Ok(Elem(code))
        } else {
            Err(Error::IndexOutOfRange {
                index: code.into(),
                limit: self.q.into(),
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Base-p digits of an element, constant coefficient first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut c = a.0;
        (0..self.deg)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        Elem(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.deg == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.deg == 1 {
            return Elem((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        if self.deg == 1 {
            return Elem(((u64::from(a.0) * u64::from(b.0)) % u64::from(self.p)) as u32);
        }
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % (self.q - 1);
        Elem(self.exp[e as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e = (self.q - 1 - self.log[a.0 as usize]) % (self.q - 1);
        Ok(Elem(self.exp[e as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = u64::from(self.q - 1);
        let l = (u64::from(self.log[a.0 as usize]) * (e % order)) % order;
        Elem(self.exp[l as usize])
    }

    /// `alpha^e` for any exponent.
    pub fn alpha_pow(&self, e: u64) -> Elem {
        Elem(self.exp[(e % u64::from(self.q - 1)) as usize])
    }

    /// Multiplicative order: the least `e >= 1` with `a^e = 1`.
    pub fn order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut e = u64::from(self.q - 1);
        for r in prime_factors(e) {
            while e % r == 0 && self.pow(a, e / r) == Elem::ONE {
                e /= r;
            }
        }
        Ok(e)
    }

    // Polynomial multiplication modulo the modulus; used to bootstrap the
    // log tables before they exist.
    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        if self.deg == 1 {
            return Elem(((u64::from(a.0) * u64::from(b.0)) % u64::from(p)) as u32);
        }
        // deg >= 2 implies p < 2^12, so digit products fit in u32
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.deg as usize];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, p);
        let mut digits = rem;
        digits.resize(self.deg as usize, 0);
        self.from_digits(&digits)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut base, mut acc) = (a, Elem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Splits `q` as `p^deg` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let (mut rest, mut deg) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        deg += 1;
    }
    (rest == 1).then_some((p, deg))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_prime(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p
    let (mut base, mut e, mut acc) = (u64::from(a), p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `b` over GF(p); `b` must be nonzero.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_prime(b[db], p);
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let factor = (r[r.len() - 1] * lead_inv) % p;
        for (i, &bi) in b.iter().enumerate() {
            let t = &mut r[shift + i];
            *t = (*t + p - (factor * bi) % p) % p;
        }
        r = trim(r);
    }
    r
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        // every monic divisor candidate of degree d
        let count = u64::from(p).pow(d as u32);
        for c in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = c;
            for _ in 0..d {
                div.push((x % u64::from(p)) as u32);
                x /= u64::from(p);
            }
            div.push(1);
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, deg: u32) -> Vec<u32> {
    let count = u64::from(p).pow(deg);
    for t in 0..count {
        // constant coefficient is the most significant digit of t
        let mut coeffs = vec![0u32; deg as usize + 1];
        let mut x = t;
        for i in (0..deg as usize).rev() {
            coeffs[i] = (x % u64::from(p)) as u32;
            x /= u64::from(p);
        }
        coeffs[deg as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f3 = Field::new(3).unwrap();
        assert_eq!((f3.characteristic(), f3.degree()), (3, 1));
        assert_eq!(f3.alpha(), Elem(2));
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.alpha(), Elem::ONE);
        assert_eq!(Field::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(Field::new(1).unwrap_err(), Error::NotPrimePower(1));
        assert_eq!(Field::new(0).unwrap_err(), Error::NotPrimePower(0));
    }

    #[test]
    fn gf3_ops() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f.inv(Elem(2)).unwrap(), Elem(2));
        assert_eq!(f.inv(Elem(0)), Err(Error::DivisionByZero));
        assert_eq!(f.order(Elem(1)).unwrap(), 1);
        assert_eq!(f.order(Elem(2)).unwrap(), 2);
        assert_eq!(f.order(Elem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf5_order() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.order(Elem(2)).unwrap(), 4);
        assert_eq!(f.order(Elem(4)).unwrap(), 2);
    }

    #[test]
    fn moduli() {
        assert_eq!(Field::new(4).unwrap().modulus(), &[1, 1, 1]);
        // x^3 + x^2 + 1 precedes x^3 + x + 1 when compared constant-first
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 0, 1, 1]);
        // x^2 + 1 is irreducible over GF(3)
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(7).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_alpha_squared() {
        let f = Field::new(4).unwrap();
        let a = f.alpha();
        assert_eq!(f.digits(a), vec![0, 1]);
        let sq = f.mul(a, a);
        assert_eq!(f.digits(sq), vec![1, 1]);
        assert_eq!(sq, Elem(3));
    }

    #[test]
    fn pow_edges() {
        let f = Field::new(9).unwrap();
        assert_eq!(f.pow(Elem::ZERO, 0), Elem::ONE);
        assert_eq!(f.pow(Elem::ZERO, 5), Elem::ZERO);
        assert_eq!(f.pow(f.alpha(), 8), Elem::ONE);
        assert_eq!(f.alpha_pow(9), f.alpha());
    }

    #[test]
    fn elem_range() {
        let f = Field::new(5).unwrap();
        assert!(f.elem(4).is_ok());
        assert!(matches!(f.elem(5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
