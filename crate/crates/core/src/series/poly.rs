//! Sparse multivariate polynomials over exact rationals, in the fixed
//! marker alphabet `t, u, v, w, x, y, p, q, s`.
//!
//! The alphabet is closed: variables are an enum, so an unknown marker
//! cannot be introduced at all, which keeps the statistics marked by
//! different generating functions from silently mixing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Number of marker variables (the series variable `z` lives in
/// [`super::truncated::TruncatedSeries`], not here).
pub const NUM_VARS: usize = 9;

/// A marker variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    U,
    V,
    W,
    X,
    Y,
    P,
    Q,
    S,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [
        Var::T,
        Var::U,
        Var::V,
        Var::W,
        Var::X,
        Var::Y,
        Var::P,
        Var::Q,
        Var::S,
    ];

    pub fn index(self) -> usize {
        match self {
            Var::T => 0,
            Var::U => 1,
            Var::V => 2,
            Var::W => 3,
            Var::X => 4,
            Var::Y => 5,
            Var::P => 6,
            Var::Q => 7,
            Var::S => 8,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Var::T => 't',
            Var::U => 'u',
            Var::V => 'v',
            Var::W => 'w',
            Var::X => 'x',
            Var::Y => 'y',
            Var::P => 'p',
            Var::Q => 'q',
            Var::S => 's',
        }
    }
}

/// Exponent vector of one monomial. `Ord` is lexicographic in the
/// declaration order of [`Var::ALL`], which fixes every printed order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    exps: [u8; NUM_VARS],
}

impl Mono {
    pub fn one() -> Mono {
        Mono {
            exps: [0; NUM_VARS],
        }
    }

    pub fn var(v: Var) -> Mono {
        Mono::one().times_var(v, 1)
    }

    pub fn times_var(mut self, v: Var, k: usize) -> Mono {
        let slot = &mut self.exps[v.index()];
        *slot = slot
            .checked_add(u8::try_from(k).expect("exponent fits in u8"))
            .expect("exponent overflow");
        self
    }

    /// Builds a monomial from `(variable, exponent)` powers.
    pub fn from_powers(powers: &[(Var, usize)]) -> Mono {
        powers
            .iter()
            .fold(Mono::one(), |m, &(v, k)| m.times_var(v, k))
    }

    pub fn exp(self, v: Var) -> usize {
        self.exps[v.index()] as usize
    }

    pub fn is_one(self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    pub fn mul(self, other: Mono) -> Mono {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Mono { exps }
    }

    pub fn pow(self, k: usize) -> Mono {
        (0..k).fold(Mono::one(), |acc, _| acc.mul(self))
    }

    /// Componentwise division; `None` when some exponent would go
    /// negative.
    pub fn try_div(self, other: Mono) -> Option<Mono> {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps) {
            *a = a.checked_sub(b)?;
        }
        Some(Mono { exps })
    }

    fn render_parts(self) -> Vec<String> {
        Var::ALL
            .iter()
            .filter(|v| self.exp(**v) > 0)
            .map(|v| {
                let e = self.exp(*v);
                if e == 1 {
                    v.symbol().to_string()
                } else {
                    format!("{}^{}", v.symbol(), e)
                }
            })
            .collect()
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.render_parts();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A sparse polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::int(1)
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn constant(c: BigRational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::monomial(Mono::var(v), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Mono::one())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `Some(c)` iff the polynomial is the constant `c` (possibly 0).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn max_degree(&self, v: Var) -> usize {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Adds `c` to the coefficient of `m`, dropping the term if it
    /// cancels to zero.
    pub fn add_term(&mut self, m: Mono, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` when any term is not
    /// divisible.
    pub fn div_mono_exact(&self, m: Mono) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.try_div(m)?, c.clone());
        }
        Some(MultiPoly { terms })
    }

    pub fn pow(&self, k: usize) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `v` by `replacement` everywhere.
    pub fn substitute(&self, v: Var, replacement: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        let mut rep_pows: Vec<MultiPoly> = vec![MultiPoly::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v);
            while rep_pows.len() <= e {
                let next = &rep_pows[rep_pows.len() - 1] * replacement;
                rep_pows.push(next);
            }
            let stripped = m
                .try_div(Mono::var(v).pow(e))
                .expect("stripping v's own exponent cannot fail");
            let partial = rep_pows[e].mul_mono(stripped).scale(c);
            out = &out + &partial;
        }
        out
    }

    /// Exchanges two variables everywhere.
    pub fn swap_vars(&self, a: Var, b: Var) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let ea = m.exp(a);
                let eb = m.exp(b);
                let swapped = m
                    .try_div(Mono::var(a).pow(ea))
                    .and_then(|m| m.try_div(Mono::var(b).pow(eb)))
                    .expect("stripping own exponents cannot fail")
                    .times_var(a, eb)
                    .times_var(b, ea);
                (swapped, c.clone())
            })
            .collect();
        MultiPoly { terms }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &(-c.clone()));
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(var: Var) -> MultiPoly {
        MultiPoly::var(var)
    }

    #[test]
    fn ring_basics() {
        let a = &v(Var::X) + &MultiPoly::int(1); // x + 1
        let b = &v(Var::X) - &MultiPoly::int(1); // x - 1
        let prod = &a * &b;
        let x2 = MultiPoly::monomial(Mono::var(Var::X).pow(2), num_traits::One::one());
        assert_eq!(prod, &x2 - &MultiPoly::int(1));
        assert_eq!(&a - &a, MultiPoly::zero());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_and_swap() {
        // (u + v^2) with u := 1 gives 1 + v^2.
        let p = &v(Var::U) + &(&v(Var::V) * &v(Var::V));
        let at_one = p.substitute(Var::U, &MultiPoly::int(1));
        assert_eq!(
            at_one,
            &MultiPoly::int(1) + &(&v(Var::V) * &v(Var::V))
        );
        // Swapping twice is the identity.
        assert_eq!(p.swap_vars(Var::U, Var::V).swap_vars(Var::U, Var::V), p);
        // u <-> v sends u + v^2 to v + u^2.
        assert_eq!(
            p.swap_vars(Var::U, Var::V),
            &v(Var::V) + &(&v(Var::U) * &v(Var::U))
        );
    }

    #[test]
    fn monomial_division() {
        let m = Mono::from_powers(&[(Var::U, 2), (Var::Y, 1)]);
        let p = MultiPoly::monomial(m, BigRational::from_integer(6.into()));
        let q = p.div_mono_exact(Mono::var(Var::U)).unwrap();
        assert_eq!(
            q,
            MultiPoly::monomial(
                Mono::from_powers(&[(Var::U, 1), (Var::Y, 1)]),
                BigRational::from_integer(6.into())
            )
        );
        assert!(p.div_mono_exact(Mono::var(Var::X)).is_none());
    }

    #[test]
    fn display_is_deterministic() {
        let p = &(&v(Var::X) * &v(Var::X)) - &v(Var::U);
        assert_eq!(p.to_string(), "x^2 - u");
        let half = MultiPoly::constant(BigRational::new(1.into(), 2.into()));
        let q = &(&half * &v(Var::W)) + &MultiPoly::int(-3);
        assert_eq!(q.to_string(), "-3 + 1/2*w");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }
}
