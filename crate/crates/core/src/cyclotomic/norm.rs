//! Exact algebraic norm through the subresultant polynomial remainder
//! sequence over big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomials are coefficient vectors, lowest degree first, with no
/// trailing zeros (the zero polynomial is empty).
fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn degree(p: &[BigInt]) -> usize {
    p.len() - 1
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn divide_exact(p: &mut [BigInt], d: &BigInt) {
    if d.is_one() {
        return;
    }
    for c in p.iter_mut() {
        debug_assert!((&*c % d).is_zero());
        *c /= d;
    }
}

/// Pseudo-remainder: lc(b)^{deg a − deg b + 1}·a mod b.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b);
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = degree(a) - db + 1;
    while !r.is_empty() && degree(&r) >= db {
        let dr = degree(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        r = trim(r);
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lb.clone(), e);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Resultant of two integer polynomials (lowest degree first).
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    if degree(&b) == 0 {
        return num_traits::pow(b[0].clone(), degree(&a));
    }
    if degree(&a) == 0 {
        return num_traits::pow(a[0].clone(), degree(&b));
    }
    let mut negate = false;
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            negate = true;
        }
    }
    let ca = content(&a);
    let cb = content(&b);
    divide_exact(&mut a, &ca);
    divide_exact(&mut b, &cb);
    let t = num_traits::pow(ca, degree(&b)) * num_traits::pow(cb, degree(&a));

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = degree(&a);
        let db = degree(&b);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_remainder(&a, &b);
        a = b;
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r;
        divide_exact(&mut b, &divisor);
        g = a[degree(&a)].clone();
        if delta > 0 {
            h = num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1);
        }
        if b.is_empty() {
            return BigInt::zero();
        }
        if degree(&b) == 0 {
            break;
        }
    }
    let da = degree(&a);
    let h = num_traits::pow(b[0].clone(), da) / num_traits::pow(h, da - 1);
    let res = t * h;
    if negate {
        -res
    } else {
        res
    }
}

/// N(g) for g = Σ_{i=1}^{N−1} coeffs[i−1] ζ^i.
///
/// Equal to Res(Φ_N, g(x)). The factor x carried by the basis has
/// Res(Φ_N, x) = 1, so it is divided out before the PRS runs.
pub fn algebraic_norm_of_coeffs(coeffs: &[BigInt]) -> BigInt {
    let n = coeffs.len() + 1;
    let phi = vec![BigInt::one(); n];
    let reduced = trim(coeffs.to_vec());
    if reduced.is_empty() {
        return BigInt::zero();
    }
    let r = resultant(&phi, &reduced);
    debug_assert!(!r.is_negative());
    r
}
