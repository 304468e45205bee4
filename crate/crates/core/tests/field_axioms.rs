use batchgeo::field::{Elem, Field};

const SMALL: [u64; 11] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 27];

fn all(f: &Field) -> Vec<Elem> {
    f.elements().collect()
}

/// Schoolbook product of digit vectors reduced by the monic modulus,
/// independent of the field's log tables.
fn oracle_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * deg];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (deg..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (k, &m) in modulus.iter().enumerate() {
            let slot = top - deg + k;
            prod[slot] = (prod[slot] + p * p - c * m) % p;
        }
    }
    prod.truncate(deg);
    prod
}

#[test]
fn multiplication_matches_polynomial_oracle() {
    for q in [4, 8, 9, 16, 25, 27, 32] {
        let f = Field::new(q).unwrap();
        for a in all(&f) {
            for b in all(&f) {
                let expect =
                    oracle_mul(f.characteristic(), f.modulus(), &f.digits(a), &f.digits(b));
                assert_eq!(f.digits(f.mul(a, b)), expect, "q={q} a={a} b={b}");
            }
        }
    }
}

#[test]
fn addition_is_digitwise() {
    for q in [4, 8, 9, 27] {
        let f = Field::new(q).unwrap();
        let p = f.characteristic();
        for a in all(&f) {
            for b in all(&f) {
                let expect: Vec<u32> = f
                    .digits(a)
                    .iter()
                    .zip(f.digits(b))
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                assert_eq!(f.digits(f.add(a, b)), expect);
            }
        }
    }
}

#[test]
fn field_axioms_exhaustive() {
    for q in SMALL.into_iter().filter(|&q| q <= 16) {
        let f = Field::new(q).unwrap();
        let els = all(&f);
        for &a in &els {
            assert_eq!(f.add(a, Elem::ZERO), a);
            assert_eq!(f.mul(a, Elem::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn frobenius_fixes_everything() {
    for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
        let f = Field::new(q).unwrap();
        for a in all(&f) {
            assert_eq!(f.pow(a, q), a, "q={q}");
        }
    }
}

#[test]
fn alpha_is_smallest_primitive() {
    for q in SMALL {
        let f = Field::new(q).unwrap();
        assert_eq!(f.order(f.alpha()).unwrap(), q - 1);
        // brute-force orders by repeated multiplication
        let brute_order = |a: Elem| {
            let mut x = a;
            let mut e = 1;
            while x != Elem::ONE {
                x = f.mul(x, a);
                e += 1;
            }
            e
        };
        for a in all(&f).into_iter().skip(1) {
            let e = brute_order(a);
            assert_eq!(f.order(a).unwrap(), e);
            assert_eq!((q - 1) % e, 0);
            if a < f.alpha() {
                assert!(
                    e < q - 1,
                    "q={q}: {a} is primitive but alpha is {}",
                    f.alpha()
                );
            }
        }
    }
}

#[test]
fn modulus_is_smallest_irreducible() {
    // degrees 2 and 3: irreducible iff no roots in GF(p)
    for (q, p, deg) in [
        (4u64, 2u32, 2usize),
        (8, 2, 3),
        (9, 3, 2),
        (25, 5, 2),
        (27, 3, 3),
        (49, 7, 2),
    ] {
        let f = Field::new(q).unwrap();
        let eval = |c: &[u32], x: u32| c.iter().rev().fold(0, |acc, &k| (acc * x + k) % p);
        let no_roots = |c: &[u32]| (0..p).all(|x| eval(c, x) != 0);
        let mut candidates: Vec<Vec<u32>> = Vec::new();
        let count = (p as usize).pow(deg as u32);
        for t in 0..count {
            let mut c = vec![0u32; deg + 1];
            let mut rest = t;
            for slot in c.iter_mut().take(deg) {
                *slot = (rest % p as usize) as u32;
                rest /= p as usize;
            }
            c[deg] = 1;
            candidates.push(c);
        }
        candidates.sort();
        let expect = candidates.into_iter().find(|c| no_roots(c)).unwrap();
        assert_eq!(f.modulus(), &expect[..], "q={q}");
    }
}
