//! Prime fields, polynomials over them, and finite fields `F_p[x]/(g)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::{residue, Q};

pub fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

pub fn fp_pow(a: u64, mut e: u64, p: u64) -> u64 {
    let mut b = a % p;
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn fp_from_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Polynomial over `F_p`, coefficients low to high, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpPoly {
    pub p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> FpPoly {
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_i64s(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c.iter().map(|&x| fp_from_i64(x, p)).collect())
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::constant(p, 1)
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, a: u64) -> FpPoly {
        FpPoly::new(p, vec![a])
    }

    /// `x - a`.
    pub fn linear(p: u64, a: u64) -> FpPoly {
        FpPoly::new(p, vec![(p - a % p) % p, 1])
    }

    /// Reduction of a p-integral rational polynomial.
    pub fn reduce(p: u64, coeffs: &[Q]) -> FpPoly {
        FpPoly::new(p, coeffs.iter().map(|c| residue(c, p)).collect())
    }

    /// The polynomial whose base-`p` digits are `n` (enumeration order).
    pub fn from_index(p: u64, mut n: u64) -> FpPoly {
        let mut c = vec![];
        while n > 0 {
            c.push(n % p);
            n /= p;
        }
        FpPoly::new(p, c)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + o.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c.iter().map(|&a| (self.p - a) % self.p).collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&x| mulm(x, a, self.p)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + mulm(a, b, p)) % p;
            }
        }
        FpPoly::new(p, r)
    }

    pub fn shift(&self, k: usize) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        FpPoly::new(self.p, c)
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial over F_p");
        let p = self.p;
        let dd = d.c.len() - 1;
        let inv = fp_inv(d.lc(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = mulm(r[i + dd], inv, p);
            if f != 0 {
                for j in 0..=dd {
                    r[i + j] = (r[i + j] + p - mulm(f, d.c[j], p)) % p;
                }
            }
            q[i] = f;
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn divides(&self, f: &FpPoly) -> bool {
        f.rem(self).is_zero()
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(fp_inv(self.lc(), self.p))
    }

    pub fn gcd(a: &FpPoly, b: &FpPoly) -> FpPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fp_inv(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = (mulm(acc, x, self.p) + a) % self.p;
        }
        acc
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulm(a, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> FpPoly {
        let mut r = FpPoly::one(self.p);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn powmod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut b = self.rem(m);
        let mut r = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        r
    }

    /// `x^d f(1/x)` for `d >= deg f`.
    pub fn reversed_to(&self, d: usize) -> FpPoly {
        let mut c = self.c.clone();
        c.resize(d + 1, 0);
        c.reverse();
        FpPoly::new(self.p, c)
    }

    /// `f(x + a)`.
    pub fn shift_arg(&self, a: u64) -> FpPoly {
        let lin = FpPoly::new(self.p, vec![a % self.p, 1]);
        let mut acc = FpPoly::zero(self.p);
        for &c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&FpPoly::constant(self.p, c));
        }
        acc
    }

    /// Exponent of the irreducible `pi` in nonzero `self`.
    pub fn val_at(&self, pi: &FpPoly) -> u32 {
        assert!(!self.is_zero());
        let mut k = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.divrem(pi);
            if !r.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }

    /// Square root if `self` is the square of a polynomial.
    pub fn sqrt(&self) -> Option<FpPoly> {
        let p = self.p;
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.deg();
        if d % 2 != 0 {
            return None;
        }
        let k = (d / 2) as usize;
        let lc_root = fp_sqrt(self.lc(), p)?;
        let mut g = vec![0u64; k + 1];
        g[k] = lc_root;
        let inv2g = fp_inv(mulm(2, lc_root, p), p);
        for i in (0..k).rev() {
            let mut s = self.coeff(k + i);
            for j in (i + 1)..k {
                s = (s + p - mulm(g[j], g[k + i - j], p)) % p;
            }
            g[i] = mulm(s, inv2g, p);
        }
        let r = FpPoly::new(p, g);
        if r.mul(&r) == *self {
            Some(r)
        } else {
            None
        }
    }

    pub fn is_irreducible(&self) -> bool {
        if self.deg() < 1 {
            return false;
        }
        let f = self.monic();
        let fac = factor(&f);
        fac.factors.len() == 1 && fac.factors[0].1 == 1
    }

    pub fn fmt_var(&self, v: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let m = match i {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{}^{}", v, i),
            };
            parts.push(if i == 0 {
                a.to_string()
            } else if a == 1 {
                m
            } else {
                format!("{}*{}", a, m)
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

/// Square root in `F_p` (smallest representative), brute force for small `p`, Tonelli-Shanks otherwise.
pub fn fp_sqrt(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p < 1000 {
        return (1..p).find(|x| mulm(*x, *x, p) == a);
    }
    if fp_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let fq = Fq::prime(p);
    fq.sqrt(&FpPoly::constant(p, a)).map(|r| {
        let r = r.coeff(0);
        r.min(p - r)
    })
}

pub fn fp_is_square(a: u64, p: u64) -> bool {
    a.is_multiple_of(p) || fp_pow(a, (p - 1) / 2, p) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

/// Factorization into monic irreducibles, factors sorted.
pub fn factor(f: &FpPoly) -> Factorization {
    assert!(!f.is_zero());
    let p = f.p;
    let unit = f.lc();
    let mut out: Vec<(FpPoly, u32)> = vec![];
    for (g, m) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, p) {
                out.push((irr, m));
            }
        }
    }
    out.sort();
    let mut merged: Vec<(FpPoly, u32)> = vec![];
    for (g, m) in out {
        if let Some(last) = merged.last_mut() {
            if last.0 == g {
                last.1 += m;
                continue;
            }
        }
        merged.push((g, m));
    }
    Factorization {
        unit,
        factors: merged,
    }
}

fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut res = vec![];
    if f.deg() <= 0 {
        return res;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f = g(x^p) = g^(p) for its p-th root
        let root = pth_root(f);
        for (g, m) in squarefree(&root) {
            res.push((g, m * p as u32));
        }
        return res;
    }
    let mut c = FpPoly::gcd(f, &fp);
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = FpPoly::gcd(&w, &c);
        let z = w.divrem(&y).0;
        if z.deg() > 0 {
            res.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.deg() > 0 {
        let root = pth_root(&c);
        for (g, m) in squarefree(&root) {
            res.push((g, m * p as u32));
        }
    }
    res
}

fn pth_root(f: &FpPoly) -> FpPoly {
    let p = f.p as usize;
    FpPoly::new(f.p, f.c.iter().step_by(p).copied().collect())
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut res = vec![];
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut d = 1u32;
    while rest.deg() >= 2 * d as i64 {
        h = h.powmod(p as u128, &rest);
        let g = FpPoly::gcd(&h.sub(&x), &rest);
        if g.deg() > 0 {
            res.push((g.clone(), d));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dd = rest.deg() as u32;
        res.push((rest.monic(), dd));
    }
    res
}

/// Cantor-Zassenhaus split with a deterministic sequence of trial polynomials.
fn equal_degree(f: &FpPoly, d: u32, p: u64) -> Vec<FpPoly> {
    if f.deg() as u32 == d {
        return vec![f.monic()];
    }
    let n = f.deg() as u64;
    let q = (p as u128).pow(d);
    let e = (q - 1) / 2;
    let mut idx = p;
    loop {
        idx += 1;
        let a = FpPoly::from_index(p, idx);
        if a.deg() < 1 || a.deg() as u64 >= n {
            if a.deg() as u64 >= n {
                idx = p;
            }
            continue;
        }
        let b = a.powmod(e, f).sub(&FpPoly::one(p));
        let g = FpPoly::gcd(&b, f);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.divrem(&g).0.monic();
            let mut r = equal_degree(&g, d, p);
            r.extend(equal_degree(&h, d, p));
            r.sort();
            return r;
        }
    }
}

/// All monic irreducible polynomials of degree `d` over `F_p`.
pub fn irreducibles(p: u64, d: u32) -> Vec<FpPoly> {
    let count = p.pow(d);
    (0..count)
        .map(|i| FpPoly::from_index(p, i).add(&FpPoly::one(p).shift(d as usize)))
        .filter(|g| g.is_irreducible())
        .collect()
}

/// The finite field `F_p[x]/(g)` with `g` monic irreducible; `g = x` gives `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fq {
    pub p: u64,
    pub g: FpPoly,
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g.deg() <= 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}[x]/({})", self.p, self.g.fmt_var("x"))
        }
    }
}

impl Fq {
    pub fn prime(p: u64) -> Fq {
        Fq { p, g: FpPoly::x(p) }
    }

    pub fn ext(g: FpPoly) -> Fq {
        let g = g.monic();
        Fq { p: g.p, g }
    }

    pub fn degree(&self) -> u32 {
        self.g.deg() as u32
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.degree())
    }

    pub fn zero(&self) -> FpPoly {
        FpPoly::zero(self.p)
    }

    pub fn one(&self) -> FpPoly {
        FpPoly::one(self.p)
    }

    pub fn elem(&self, a: u64) -> FpPoly {
        FpPoly::constant(self.p, a)
    }

    pub fn reduce(&self, a: &FpPoly) -> FpPoly {
        a.rem(&self.g)
    }

    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b)
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.sub(b)
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b).rem(&self.g)
    }

    pub fn inv(&self, a: &FpPoly) -> Option<FpPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = FpPoly::ext_gcd(&a, &self.g);
        debug_assert!(g.is_one());
        Some(s.rem(&self.g))
    }

    pub fn pow(&self, a: &FpPoly, e: u128) -> FpPoly {
        a.powmod(e, &self.g)
    }

    pub fn is_square(&self, a: &FpPoly) -> bool {
        let a = self.reduce(a);
        a.is_zero() || self.pow(&a, (self.order() - 1) / 2).is_one()
    }

    /// Element with enumeration index `i < q`.
    pub fn element(&self, i: u64) -> FpPoly {
        FpPoly::from_index(self.p, i)
    }

    pub fn index_of(&self, a: &FpPoly) -> u64 {
        let a = self.reduce(a);
        a.coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c)
    }

    /// Square root with the smallest enumeration index among the two roots.
    pub fn sqrt(&self, a: &FpPoly) -> Option<FpPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Some(a);
        }
        if !self.is_square(&a) {
            return None;
        }
        let q = self.order();
        let mut s = 0u32;
        let mut t = q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = (2..)
            .map(|i| self.element(i))
            .find(|z| !self.is_square(z))
            .expect("non-residue exists");
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(&a, t);
        let mut r = self.pow(&a, t.div_ceil(2));
        while !tt.is_one() {
            let mut i = 0u32;
            let mut t2 = tt.clone();
            while !t2.is_one() {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        let other = r.neg();
        if self.index_of(&other) < self.index_of(&r) {
            Some(other)
        } else {
            Some(r)
        }
    }

    pub fn fmt_elem(&self, a: &FpPoly) -> String {
        if self.degree() == 1 {
            a.coeff(0).to_string()
        } else {
            format!("[{}]", a.fmt_var("x"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let f = FpPoly::from_i64s(3, &[-1, 0, 1]);
        let fac = factor(&f);
        assert_eq!(
            fac.factors,
            vec![
                (FpPoly::from_i64s(3, &[1, 1]), 1),
                (FpPoly::from_i64s(3, &[2, 1]), 1)
            ]
        );
        let g = FpPoly::from_i64s(3, &[1, 0, 1]);
        assert!(g.is_irreducible());
        let h = g.mul(&g).mul(&FpPoly::x(3));
        let fac = factor(&h);
        assert_eq!(fac.factors, vec![(FpPoly::x(3), 1), (g, 2)]);
    }

    #[test]
    fn factor_pth_powers() {
        let f = FpPoly::from_i64s(3, &[1, 1]).pow(3).mul(&FpPoly::x(3));
        let fac = factor(&f);
        assert_eq!(
            fac.factors,
            vec![(FpPoly::x(3), 1), (FpPoly::from_i64s(3, &[1, 1]), 3)]
        );
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducibles(3, 2).len(), 3);
        assert_eq!(irreducibles(5, 2).len(), 10);
        assert_eq!(irreducibles(3, 3).len(), 8);
    }

    #[test]
    fn field_sqrt() {
        let f9 = Fq::ext(FpPoly::from_i64s(3, &[1, 0, 1]));
        for i in 0..9 {
            let a = f9.element(i);
            let sq = f9.mul(&a, &a);
            let r = f9.sqrt(&sq).unwrap();
            assert_eq!(f9.mul(&r, &r), sq);
        }
        assert!(f9.is_square(&f9.elem(2)));
        assert!(!Fq::prime(3).is_square(&FpPoly::constant(3, 2)));
    }

    #[test]
    fn poly_sqrt() {
        let g = FpPoly::from_i64s(5, &[2, 3, 1]);
        assert_eq!(g.mul(&g).sqrt().map(|r| r.mul(&r)), Some(g.mul(&g)));
        assert_eq!(FpPoly::from_i64s(5, &[0, 1]).sqrt(), None);
    }
}
