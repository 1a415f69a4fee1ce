//! Factorization of monic squarefree rational polynomials into monic
//! irreducible rational factors, via the classical route: reduce mod a good
//! small prime, Berlekamp-factor there, Hensel-lift the modular factors to a
//! precision beyond the Mignotte coefficient bound, then recombine subsets
//! and trial-divide over the integers.
//!
//! This is internal plumbing for deciding whether adjoining a root actually
//! extends a tower; it is only ever called on minimal polynomials over the
//! rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::RatPoly;
use crate::rational::denominator_lcm;

/// Factors a monic squarefree rational polynomial into monic irreducible
/// rational factors, sorted by (degree, coefficients) for determinism.
pub(crate) fn factor_monic_squarefree(f: &RatPoly) -> Vec<RatPoly> {
    assert!(f.is_monic(), "factor_monic_squarefree needs a monic input");
    let n = f.degree().unwrap();
    if n <= 1 {
        return vec![f.clone()];
    }
    debug_assert!(
        RatPoly::gcd(f, &f.derivative()).degree() == Some(0),
        "factor_monic_squarefree needs a squarefree input"
    );
    // Scale roots by the denominator lcm D: G(y) = D^n f(y/D) is integer
    // monic with the same factorization shape.
    let d = denominator_lcm(f.coeffs().iter());
    let drat = BigRational::from_integer(d.clone());
    let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
    let mut scale = BigRational::one();
    let mut scales = vec![BigRational::one(); n + 1];
    for i in (0..=n).rev() {
        scales[i] = scale.clone();
        scale *= &drat;
    }
    for i in 0..=n {
        let c = f.coeff(i) * &scales[i];
        debug_assert!(c.is_integer());
        g.push(c.to_integer());
    }
    let int_factors = factor_monic_int(&g);
    // Map back: a factor h(y) of degree m becomes h(D x) / D^m.
    let mut out: Vec<RatPoly> = int_factors
        .into_iter()
        .map(|h| {
            let m = h.len() - 1;
            let coeffs: Vec<BigRational> = h
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let mut r = BigRational::from_integer(c.clone());
                    if i < m {
                        r /= BigRational::from_integer(d.pow((m - i) as u32));
                    }
                    r
                })
                .collect();
            RatPoly::new(coeffs)
        })
        .collect();
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    out
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
];

/// Factors a monic squarefree integer polynomial (coefficient vector
/// ascending, leading 1) into monic integer irreducible factors.
fn factor_monic_int(g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.to_vec()];
    }
    let (p, modular) = {
        let mut found = None;
        for &p in PRIMES {
            let gp = reduce_mod(g, p);
            if gp.len() != n + 1 {
                continue; // leading coefficient vanished, impossible for monic
            }
            let dgp = mp_derivative(&gp, p);
            let gc = mp_gcd(&gp, &dgp, p);
            if mp_deg(&gc) == 0 {
                found = Some((p, berlekamp(&gp, p)));
                break;
            }
        }
        found.expect("no usable prime found for a squarefree integer polynomial")
    };
    if modular.len() == 1 {
        return vec![g.to_vec()];
    }
    // Mignotte-style bound: coefficients of any monic factor are below
    // 2^n * (|g|_2 + 1).
    let norm2: BigInt = g.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound: BigInt = (BigInt::one() << n) * norm2;
    let mut pk = BigInt::from(p);
    while pk <= &bound * 2 {
        pk *= p;
    }
    let lifted = lift_tree(g, &modular, p, &pk);
    recombine(g, lifted, &pk)
}

// ---- arithmetic mod a small prime ----

type ModPoly = Vec<u64>;

fn reduce_mod(g: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = g
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            let digits = r.to_u64_digits().1;
            if digits.is_empty() {
                0
            } else {
                digits[0]
            }
        })
        .collect();
    mp_trim(&mut out);
    out
}

fn mp_trim(a: &mut ModPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mp_deg(a: &ModPoly) -> usize {
    if a.is_empty() {
        0
    } else {
        a.len() - 1
    }
}

fn mp_is_zero(a: &ModPoly) -> bool {
    a.is_empty()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat inverse, p prime.
    pow_mod_u(a % p, p - 2, p)
}

fn pow_mod_u(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mp_mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    mp_trim(&mut out);
    out
}

fn mp_sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    mp_trim(&mut out);
    out
}

fn mp_scale(a: &ModPoly, k: u64, p: u64) -> ModPoly {
    let mut out: Vec<u64> = a.iter().map(|&c| c * k % p).collect();
    mp_trim(&mut out);
    out
}

fn mp_divrem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "mod-p division by zero");
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let linv = inv_mod(*b.last().unwrap(), p);
    let mut rem = a.clone();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + b.len() - 1] * linv % p;
        q[k] = c;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - bc * c % p) % p;
            }
        }
    }
    rem.truncate(b.len() - 1);
    mp_trim(&mut rem);
    mp_trim(&mut q);
    (q, rem)
}

fn mp_gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !mp_is_zero(&b) {
        let (_, r) = mp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        let linv = inv_mod(*a.last().unwrap(), p);
        mp_scale(&a, linv, p)
    }
}

fn mp_derivative(a: &ModPoly, p: u64) -> ModPoly {
    if a.len() <= 1 {
        return vec![];
    }
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * (i as u64 % p) % p)
        .collect();
    mp_trim(&mut out);
    out
}

/// Extended Euclid mod p: returns (s, t) with s*a + t*b = 1 for coprime a, b.
fn mp_bezout(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !mp_is_zero(&r1) {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(mp_deg(&r0), 0, "bezout of non-coprime polynomials");
    let linv = inv_mod(r0[0], p);
    (mp_scale(&s0, linv, p), mp_scale(&t0, linv, p))
}

// ---- Berlekamp factorization mod p ----

fn berlekamp(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let n = mp_deg(f);
    // Frobenius images x^(p*i) mod f for i = 0..n.
    let xp = {
        let x = vec![0u64, 1u64];
        mp_powmod(&x, p, f, p)
    };
    let mut cols: Vec<ModPoly> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        cols.push(cur.clone());
        cur = mp_divrem(&mp_mul(&cur, &xp, p), f, p).1;
    }
    // Kernel of (A - I) where A maps coefficient vectors through Frobenius.
    let mut m = vec![vec![0u64; n]; n];
    for (i, col) in cols.iter().enumerate() {
        for r in 0..n {
            m[r][i] = col.get(r).copied().unwrap_or(0);
        }
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    let basis = nullspace(m, p);
    let r = basis.len();
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    'vectors: for v in &basis {
        let mut vpoly = v.clone();
        mp_trim(&mut vpoly);
        if mp_deg(&vpoly) == 0 {
            continue;
        }
        loop {
            let mut split_happened = false;
            let mut i = 0;
            while i < factors.len() {
                if mp_deg(&factors[i]) <= 1 {
                    i += 1;
                    continue;
                }
                for s in 0..p {
                    let mut shifted = vpoly.clone();
                    if shifted.is_empty() {
                        shifted = vec![(p - s) % p];
                    } else {
                        shifted[0] = (shifted[0] + p - s) % p;
                    }
                    mp_trim(&mut shifted);
                    if shifted.is_empty() {
                        continue;
                    }
                    let d = mp_gcd(&factors[i], &shifted, p);
                    let dd = mp_deg(&d);
                    if dd > 0 && dd < mp_deg(&factors[i]) {
                        let (q, rem) = mp_divrem(&factors[i], &d, p);
                        debug_assert!(mp_is_zero(&rem));
                        factors[i] = d;
                        factors.push(q);
                        split_happened = true;
                        break;
                    }
                }
                i += 1;
            }
            if factors.len() == r {
                break 'vectors;
            }
            if !split_happened {
                break;
            }
        }
    }
    for f in &mut factors {
        let linv = inv_mod(*f.last().unwrap(), p);
        *f = mp_scale(f, linv, p);
    }
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    factors
}

fn mp_powmod(base: &ModPoly, mut e: u64, f: &ModPoly, p: u64) -> ModPoly {
    let mut acc = vec![1u64];
    let mut b = mp_divrem(base, f, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mp_divrem(&mp_mul(&acc, &b, p), f, p).1;
        }
        b = mp_divrem(&mp_mul(&b, &b, p), f, p).1;
        e >>= 1;
    }
    acc
}

fn nullspace(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0usize;
    for col in 0..n {
        let mut pivot = None;
        for r in row..n {
            if m[r][col] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for c in 0..n {
            m[row][c] = m[row][c] * inv % p;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let k = m[r][col];
                for c in 0..n {
                    m[r][c] = (m[r][c] + p - k * m[row][c] % p) % p;
                }
            }
        }
        pivot_col_of_row[row] = col;
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let mut basis = vec![];
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            // pivot row r reads: x_pc + sum over free columns = 0
            v[pc] = (p - m[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

// ---- Hensel lifting ----

fn big_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn big_poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
            x - y
        })
        .collect()
}

fn sym_reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    let mut out: Vec<BigInt> = a
        .iter()
        .map(|c| {
            let mut r = ((c % m) + m) % m;
            if r > half {
                r -= m;
            }
            r
        })
        .collect();
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn lift_sym(a: &ModPoly, p: u64) -> Vec<BigInt> {
    let half = p / 2;
    a.iter()
        .map(|&c| {
            if c > half {
                BigInt::from(c) - BigInt::from(p)
            } else {
                BigInt::from(c)
            }
        })
        .collect()
}

/// Lifts a two-factor splitting g0*h0 of a (mod p) up to modulus pk, one
/// linear step at a time. All inputs monic, output monic.
fn hensel2(
    a: &[BigInt],
    g0: &ModPoly,
    h0: &ModPoly,
    p: u64,
    pk: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = mp_bezout(g0, h0, p);
    let mut g = lift_sym(g0, p);
    let mut h = lift_sym(h0, p);
    let mut modulus = BigInt::from(p);
    while &modulus < pk {
        let prod = big_poly_mul(&g, &h);
        let e_int = big_poly_sub(a, &prod);
        let e: ModPoly = {
            let mut v: Vec<u64> = e_int
                .iter()
                .map(|c| {
                    let q = c / &modulus;
                    debug_assert_eq!(c, &(&q * &modulus));
                    let pb = BigInt::from(p);
                    let r = ((q % &pb) + &pb) % &pb;
                    let digs = r.to_u64_digits().1;
                    if digs.is_empty() {
                        0
                    } else {
                        digs[0]
                    }
                })
                .collect();
            mp_trim(&mut v);
            v
        };
        if !mp_is_zero(&e) {
            let te = mp_mul(&t, &e, p);
            let (_, dg) = mp_divrem(&te, g0, p);
            let num = mp_sub(&e, &mp_mul(&dg, h0, p), p);
            let (dh, rem) = mp_divrem(&num, g0, p);
            debug_assert!(mp_is_zero(&rem), "hensel correction must divide exactly");
            let _ = &s; // bezout t is used directly; s kept for clarity of the identity
            let dg_b = lift_sym(&dg, p);
            let dh_b = lift_sym(&dh, p);
            for (i, c) in dg_b.iter().enumerate() {
                if g.len() <= i {
                    g.resize(i + 1, BigInt::zero());
                }
                g[i] += c * &modulus;
            }
            for (i, c) in dh_b.iter().enumerate() {
                if h.len() <= i {
                    h.resize(i + 1, BigInt::zero());
                }
                h[i] += c * &modulus;
            }
        }
        modulus *= p;
        let g2 = sym_reduce(&g, &modulus);
        let h2 = sym_reduce(&h, &modulus);
        g = g2;
        h = h2;
    }
    (g, h)
}

fn lift_tree(a: &[BigInt], leaves: &[ModPoly], p: u64, pk: &BigInt) -> Vec<Vec<BigInt>> {
    if leaves.len() == 1 {
        return vec![sym_reduce(a, pk)];
    }
    let mid = leaves.len() / 2;
    let mut left = vec![1u64];
    for l in &leaves[..mid] {
        left = mp_mul(&left, l, p);
    }
    let mut right = vec![1u64];
    for l in &leaves[mid..] {
        right = mp_mul(&right, l, p);
    }
    let (ga, gb) = hensel2(a, &left, &right, p, pk);
    let mut out = lift_tree(&ga, &leaves[..mid], p, pk);
    out.extend(lift_tree(&gb, &leaves[mid..], p, pk));
    out
}

// ---- recombination ----

fn big_poly_divides(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    // den monic; exact integer division or None.
    if num.len() < den.len() {
        return None;
    }
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    debug_assert!(den.last().unwrap().is_one());
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (i, dc) in den.iter().enumerate() {
                let t = dc * &c;
                rem[k + i] -= t;
            }
        }
        q[k] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn recombine(g: &[BigInt], lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    assert!(
        lifted.len() <= 28,
        "modular factor count too large for subset recombination"
    );
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current: Vec<BigInt> = g.to_vec();
    let mut out = vec![];
    let mut d = 1usize;
    while 2 * d <= remaining.len() {
        let mut found = false;
        let subsets = combinations(remaining.len(), d);
        for subset in subsets {
            let mut prod = vec![BigInt::one()];
            for &si in &subset {
                prod = sym_reduce(&big_poly_mul(&prod, &lifted[remaining[si]]), pk);
            }
            if let Some(q) = big_poly_divides(&current, &prod) {
                out.push(prod);
                current = q;
                let kill: Vec<usize> = subset.iter().map(|&si| remaining[si]).collect();
                remaining.retain(|i| !kill.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![0usize; k];
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, start: usize, depth: usize, n: usize) {
        let k = cur.len();
        if depth == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=(n - (k - depth)) {
            cur[depth] = i;
            rec(out, cur, i + 1, depth + 1, n);
        }
    }
    if k == 0 || k > n {
        return out;
    }
    rec(&mut out, &mut cur, 0, 0, n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn monic(coeffs_desc: &[i64]) -> RatPoly {
        RatPoly::from_descending_ints(coeffs_desc).monic()
    }

    #[test]
    fn irreducibles_come_back_whole() {
        for f in [
            monic(&[1, 0, -2]),
            monic(&[1, 0, -4, 0, 2]),
            monic(&[1, 1, 1, 1, 1]),
            monic(&[8, 4, -4, -1]),
        ] {
            let fs = factor_monic_squarefree(&f);
            assert_eq!(fs.len(), 1, "{f:?} should be irreducible");
            assert_eq!(fs[0], f);
        }
    }

    #[test]
    fn split_products_are_recovered() {
        let a = monic(&[1, 0, -2]);
        let b = monic(&[1, 0, -3]);
        let f = a.mul(&b);
        let fs = factor_monic_squarefree(&f);
        assert_eq!(fs, vec![b, a]);
    }

    #[test]
    fn linear_factors_are_found() {
        // (x-1)(x-2)(x-3)
        let f = monic(&[1, -6, 11, -6]);
        let fs = factor_monic_squarefree(&f);
        assert_eq!(fs.len(), 3);
        for (i, root) in [1i64, 2, 3].iter().enumerate() {
            assert!(fs[i].eval(&rat(*root)).is_zero() || fs.iter().any(|g| g.eval(&rat(*root)).is_zero()));
        }
    }

    #[test]
    fn rational_coefficients_are_handled() {
        // (x - 1/2)(x^2 - 1/3)
        let a = RatPoly::new(vec![ratio(-1, 2), rat(1)]);
        let b = RatPoly::new(vec![ratio(-1, 3), rat(0), rat(1)]);
        let f = a.mul(&b);
        let fs = factor_monic_squarefree(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0], a);
        assert_eq!(fs[1], b);
    }

    #[test]
    fn six_linear_factors() {
        // (x-1)...(x-6)
        let mut f = RatPoly::one();
        for r in 1..=6i64 {
            f = f.mul(&RatPoly::new(vec![rat(-r), rat(1)]));
        }
        let fs = factor_monic_squarefree(&f);
        assert_eq!(fs.len(), 6);
    }

    #[test]
    fn mixed_degree_product() {
        // (x^2 + x + 1)(x - 5)(x^3 - 2)
        let f = monic(&[1, 1, 1])
            .mul(&monic(&[1, -5]))
            .mul(&monic(&[1, 0, 0, -2]));
        let fs = factor_monic_squarefree(&f);
        let degs: Vec<usize> = fs.iter().map(|g| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2, 3]);
    }
}
