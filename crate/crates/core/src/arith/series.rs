use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::{fmt_q, fmt_shift, qi, Q};

/// Expansion point: a rational center or infinity (local coordinate `1/T`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Center {
    Finite(Q),
    Infinity,
}

impl Center {
    /// The local coordinate `u` as a rational function of `T`.
    pub fn coordinate(&self) -> RatFunc {
        match self {
            Center::Finite(c) => RatFunc::poly(Poly::linear(c)),
            Center::Infinity => RatFunc::t().inv().unwrap(),
        }
    }

    /// `f` rewritten as a function of the local coordinate `u`.
    pub fn localize(&self, f: &RatFunc) -> RatFunc {
        match self {
            Center::Finite(c) => f.compose_affine(c, &Q::one()),
            Center::Infinity => f.flip(),
        }
    }

    /// Inverse of `localize`: a function of `u` back to a function of `T`.
    pub fn globalize(&self, g: &RatFunc) -> RatFunc {
        match self {
            Center::Finite(c) => g.compose_affine(&-c, &Q::one()),
            Center::Infinity => g.flip(),
        }
    }

    pub fn var_name(&self) -> String {
        match self {
            Center::Finite(c) if c.is_zero() => "T".into(),
            Center::Finite(c) => format!("({})", fmt_shift("T", c)),
            Center::Infinity => "(1/T)".into(),
        }
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Finite(c) => write!(f, "{}", fmt_q(c)),
            Center::Infinity => write!(f, "inf"),
        }
    }
}

/// Truncated Laurent series `sum_i coeffs[i] u^(order + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub center: Center,
    pub order: i64,
    pub coeffs: Vec<Q>,
}

impl Laurent {
    pub fn of_ratfunc(f: &RatFunc, center: &Center, n: usize) -> Laurent {
        let g = center.localize(f);
        if g.is_zero() {
            return Laurent {
                center: center.clone(),
                order: 0,
                coeffs: vec![Q::zero(); n + 1],
            };
        }
        let (kn, num) = strip_low(g.num());
        let (kd, den) = strip_low(g.den());
        let coeffs = series_div(&num, &den, n + 1);
        Laurent {
            center: center.clone(),
            order: kn as i64 - kd as i64,
            coeffs,
        }
    }

    pub fn leading(&self) -> &Q {
        &self.coeffs[0]
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.center.var_name();
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.order + i as i64;
            let m = match e {
                0 => String::new(),
                1 => format!("*{}", u),
                _ => format!("*{}^{}", u, e),
            };
            parts.push(format!("{}{}", fmt_q(c), m));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(
                f,
                "{} + O({}^{})",
                parts.join(" + "),
                u,
                self.order + self.coeffs.len() as i64
            )
        }
    }
}

/// Splits `p = u^k * q` with `q(0) != 0`, returning `(k, coeffs of q)`.
pub fn strip_low(p: &Poly) -> (usize, Vec<Q>) {
    let c = p.coeffs();
    let k = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    (k, c[k..].to_vec())
}

pub fn coeff_or_zero(a: &[Q], i: usize) -> Q {
    a.get(i).cloned().unwrap_or_else(Q::zero)
}

/// First `n` coefficients of `a/b` with `b[0] != 0`.
pub fn series_div(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    assert!(!b[0].is_zero());
    let mut out: Vec<Q> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = coeff_or_zero(a, k);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            s -= &b[j] * &out[k - j];
        }
        out.push(s / &b[0]);
    }
    out
}

pub fn series_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Square root of `g` to `n` terms with prescribed constant term `c0` (`c0^2` need only approximate `g[0]`).
///
/// The result `y` satisfies `y^2 = g - g[0] + c0^2` exactly up to order `n`.
pub fn series_sqrt(g: &[Q], c0: &Q, n: usize) -> Vec<Q> {
    assert!(!c0.is_zero());
    let mut c = vec![c0.clone()];
    let two_c0 = c0 * qi(2);
    for k in 1..n {
        let mut s = coeff_or_zero(g, k);
        for i in 1..k {
            s -= &c[i] * &c[k - i];
        }
        c.push(s / &two_c0);
    }
    c
}
