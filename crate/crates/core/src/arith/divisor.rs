use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ff::{factor as factor_fp, FpPoly};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{fmt_q, qb, qi, Q};
use crate::error::{Error, Result};

pub const MAX_FACTOR_DEGREE: usize = 8;

/// A closed point of the projective line over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClosedPoint {
    Rational(Q),
    /// Monic irreducible of degree at least 2.
    Poly(Poly),
    Infinity,
}

impl ClosedPoint {
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Poly(g) => g.degree().unwrap(),
            _ => 1,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ClosedPoint::Rational(_) => 0,
            ClosedPoint::Poly(_) => 1,
            ClosedPoint::Infinity => 2,
        }
    }
}

impl PartialOrd for ClosedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClosedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ClosedPoint::Rational(a), ClosedPoint::Rational(b)) => a.cmp(b),
            (ClosedPoint::Poly(a), ClosedPoint::Poly(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Rational(a) => write!(f, "{}", fmt_q(a)),
            ClosedPoint::Poly(g) => write!(f, "({})", g),
            ClosedPoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    pub terms: Vec<(ClosedPoint, i64)>,
}

impl Divisor {
    pub fn from_terms(mut terms: Vec<(ClosedPoint, i64)>) -> Divisor {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(ClosedPoint, i64)> = vec![];
        for (pt, m) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == pt {
                    last.1 += m;
                    continue;
                }
            }
            out.push((pt, m));
        }
        out.retain(|(_, m)| *m != 0);
        Divisor { terms: out }
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Divisor::from_terms(t)
    }

    pub fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(pt, m)| m * pt.degree() as i64)
            .sum()
    }

    pub fn support(&self) -> Vec<ClosedPoint> {
        self.terms.iter().map(|(p, _)| p.clone()).collect()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, m)| format!("{}:{:+}", p, m))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Divisor of a nonzero rational function on the projective line over `Q`.
pub fn divisor(f: &RatFunc) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::Zero("divisor of zero"));
    }
    let mut terms = vec![];
    for (g, m) in factor_q(f.num())? {
        terms.push((point_of(&g), m as i64));
    }
    for (g, m) in factor_q(f.den())? {
        terms.push((point_of(&g), -(m as i64)));
    }
    let inf = f.den().deg() - f.num().deg();
    terms.push((ClosedPoint::Infinity, inf));
    let d = Divisor::from_terms(terms);
    debug_assert_eq!(d.degree(), 0);
    Ok(d)
}

fn point_of(g: &Poly) -> ClosedPoint {
    if g.deg() == 1 {
        ClosedPoint::Rational(-g.coeff(0))
    } else {
        ClosedPoint::Poly(g.clone())
    }
}

/// Factorization of a nonconstant-or-constant polynomial into monic irreducibles over `Q`.
pub fn factor_q(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::Zero("factor of zero polynomial"));
    }
    if f.deg() > MAX_FACTOR_DEGREE as i64 {
        return Err(Error::DegreeTooLarge(f.deg() as usize));
    }
    let mut out = vec![];
    for (g, m) in squarefree_q(&f.monic()) {
        for h in factor_squarefree(&g)? {
            out.push((h, m));
        }
    }
    out.sort_by_key(|a| point_of(&a.0));
    Ok(out)
}

fn squarefree_q(f: &Poly) -> Vec<(Poly, u32)> {
    let mut res = vec![];
    if f.deg() < 1 {
        return res;
    }
    let mut a = Poly::gcd(f, &f.derivative());
    let mut b = f.divrem(&a).0;
    let mut i = 1;
    while b.deg() > 0 {
        let c = Poly::gcd(&a, &b);
        let y = b.divrem(&c).0;
        if y.deg() > 0 {
            res.push((y.monic(), i));
        }
        a = a.divrem(&c).0;
        b = c;
        i += 1;
    }
    res
}

fn factor_squarefree(g: &Poly) -> Result<Vec<Poly>> {
    let mut out = vec![];
    let mut rest = g.monic();
    for r in rational_roots(&rest)? {
        out.push(Poly::linear(&r));
        rest = rest.divrem(&Poly::linear(&r)).0;
    }
    let mut stack = vec![rest];
    while let Some(h) = stack.pop() {
        if h.deg() < 1 {
            continue;
        }
        match find_factor(&h)? {
            None => out.push(h.monic()),
            Some(f1) => {
                let f2 = h.divrem(&f1).0;
                stack.push(f1.monic());
                stack.push(f2.monic());
            }
        }
    }
    Ok(out)
}

fn int_limit() -> BigInt {
    BigInt::from(10u64).pow(12)
}

/// Positive divisors of a nonzero integer by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n > int_limit() {
        return Err(Error::Unsupported(format!(
            "coefficient {} too large to factor",
            n
        )));
    }
    let n = n.to_u64().unwrap();
    let mut small = vec![];
    let mut large = vec![];
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small.into_iter().map(BigInt::from).collect())
}

fn rational_roots(f: &Poly) -> Result<Vec<Q>> {
    let mut roots = vec![];
    let (_, prim) = f.primitive_part();
    let low = prim.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Q::zero());
    }
    let c0 = &prim[low];
    let cd = prim.last().unwrap();
    if prim.len() - low <= 1 {
        return Ok(roots);
    }
    let nums = divisors(c0)?;
    let dens = divisors(cd)?;
    let mut cands = vec![];
    for r in &nums {
        for s in &dens {
            if r.gcd(s).is_one() {
                cands.push(Q::new(r.clone(), s.clone()));
                cands.push(Q::new(-r.clone(), s.clone()));
            }
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands {
        if f.eval(&c).is_zero() {
            roots.push(c);
        }
    }
    Ok(roots)
}

/// Degrees of possible proper factors, intersected over several good reductions.
fn possible_degrees(prim: &[BigInt]) -> Vec<usize> {
    let n = prim.len() - 1;
    let mut allowed: Vec<bool> = vec![true; n + 1];
    let mut used = 0;
    for &l in &[3u64, 5, 7, 11, 13, 17, 19, 23] {
        if used >= 4 {
            break;
        }
        if (prim[n].mod_floor(&BigInt::from(l))).is_zero() {
            continue;
        }
        let fl = FpPoly::new(
            l,
            prim.iter()
                .map(|c| c.mod_floor(&BigInt::from(l)).to_u64().unwrap())
                .collect(),
        );
        let fac = factor_fp(&fl);
        if fac.factors.iter().any(|(_, m)| *m > 1) {
            continue;
        }
        used += 1;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (g, _) in &fac.factors {
            let d = g.deg() as usize;
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for k in 0..=n {
            allowed[k] &= sums[k];
        }
    }
    (2..=n / 2).filter(|&k| allowed[k]).collect()
}

/// A proper factor of a squarefree polynomial without rational roots, by Kronecker's method.
fn find_factor(h: &Poly) -> Result<Option<Poly>> {
    let n = h.deg() as usize;
    if n <= 3 {
        return Ok(None);
    }
    let (_, prim) = h.primitive_part();
    let hz = Poly::from_bigints(&prim);
    for k in possible_degrees(&prim) {
        let mut pts: Vec<(i64, BigInt, usize)> = vec![];
        for i in 0..(4 * k as i64 + 8) {
            let x = if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 };
            let v = hz.eval(&qi(x)).to_integer();
            if v.is_zero() {
                continue;
            }
            let nd = divisors(&v)?.len();
            pts.push((x, v, nd));
        }
        pts.sort_by_key(|t| t.2);
        pts.truncate(k + 1);
        let xs: Vec<i64> = pts.iter().map(|t| t.0).collect();
        let divs: Vec<Vec<BigInt>> = pts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let d = divisors(&t.1)?;
                if i == 0 {
                    Ok(d)
                } else {
                    Ok(d.iter().flat_map(|x| [x.clone(), -x.clone()]).collect())
                }
            })
            .collect::<Result<_>>()?;
        let mut idx = vec![0usize; k + 1];
        loop {
            let ys: Vec<BigInt> = (0..=k).map(|i| divs[i][idx[i]].clone()).collect();
            if let Some(g) = interpolate(&xs, &ys) {
                if g.deg() == k as i64
                    && g.coeffs().iter().all(|c| c.is_integer())
                    && g.divides(&hz)
                {
                    return Ok(Some(g));
                }
            }
            let mut j = 0;
            loop {
                if j > k {
                    break;
                }
                idx[j] += 1;
                if idx[j] < divs[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j > k {
                break;
            }
        }
    }
    Ok(None)
}

fn interpolate(xs: &[i64], ys: &[BigInt]) -> Option<Poly> {
    let n = xs.len();
    let mut coef: Vec<Q> = ys.iter().cloned().map(qb).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let d = qi(xs[i] - xs[i - j]);
            coef[i] = (&coef[i] - &coef[i - 1]) / d;
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear(&qi(xs[i]))) + &Poly::constant(coef[i].clone());
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = divisor(&RatFunc::t()).unwrap();
        assert_eq!(
            d.terms,
            vec![
                (ClosedPoint::Rational(qi(0)), 1),
                (ClosedPoint::Infinity, -1)
            ]
        );
        let f = RatFunc::new(Poly::from_ints(&[3, 1]), Poly::t()).unwrap();
        let d = divisor(&f).unwrap();
        assert_eq!(
            d.terms,
            vec![
                (ClosedPoint::Rational(qi(-3)), 1),
                (ClosedPoint::Rational(qi(0)), -1)
            ]
        );
        let g = RatFunc::poly(Poly::from_ints(&[1, 0, 1]));
        let d = divisor(&g).unwrap();
        assert_eq!(
            d.terms,
            vec![
                (ClosedPoint::Poly(Poly::from_ints(&[1, 0, 1])), 1),
                (ClosedPoint::Infinity, -2)
            ]
        );
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::from_ints(&[2, 0, 1]);
        let f = &a * &b;
        let fac = factor_q(&f).unwrap();
        assert_eq!(fac, vec![(a, 1), (b, 1)]);
        let irr = Poly::from_ints(&[2, 0, 0, 0, 1]);
        assert_eq!(factor_q(&irr).unwrap(), vec![(irr, 1)]);
        let sq = Poly::from_ints(&[1, 0, 1]).pow(2);
        assert_eq!(
            factor_q(&sq).unwrap(),
            vec![(Poly::from_ints(&[1, 0, 1]), 2)]
        );
    }

    #[test]
    fn rejects_high_degree() {
        assert!(factor_q(&Poly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1])).is_err());
    }
}
