//! Truncated formal power series in `z` with [`MultiPoly`] coefficients.
//!
//! Arithmetic is exact through the truncation order; binary operations
//! propagate the minimum of the operand orders. Reciprocals and square
//! roots run Newton refinement that doubles the correct order per step
//! and end with a residual assertion — a nonzero residual is a bug and
//! aborts rather than degrading silently.

use super::poly::{Mono, MultiPoly, Var};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::json;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term is not an invertible rational")]
    NonInvertibleConstantTerm,
    #[error("constant term is not 1")]
    ConstantTermNotOne,
    #[error("coefficient of z^{power} is nonzero; checked shift refused")]
    NonzeroLowOrderCoefficient { power: usize },
    #[error("coefficient not divisible by the requested monomial")]
    IndivisibleCoefficient,
    #[error("fixed-point iteration failed to converge")]
    FixedPointDivergence,
}

/// A power series truncated after `z^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> TruncatedSeries {
        TruncatedSeries::constant(order, MultiPoly::one())
    }

    pub fn constant(order: usize, c: MultiPoly) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series directly from coefficients; the order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> TruncatedSeries {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn int(order: usize, n: i64) -> TruncatedSeries {
        TruncatedSeries::constant(order, MultiPoly::int(n))
    }

    /// `poly * z^power`.
    pub fn term(order: usize, poly: MultiPoly, power: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        if power <= order {
            s.coeffs[power] = poly;
        }
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> TruncatedSeries {
        TruncatedSeries::term(order, MultiPoly::one(), 1)
    }

    pub fn var(order: usize, v: Var) -> TruncatedSeries {
        TruncatedSeries::constant(order, MultiPoly::var(v))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies by `z^k`, truncating at the current order.
    pub fn mul_z(&self, k: usize) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= self.order() {
                out.coeffs[i + k] = c.clone();
            }
        }
        out
    }

    /// Checked division by `z^k`: the low-order coefficients must
    /// vanish. The order drops by `k`.
    pub fn div_z_exact(&self, k: usize) -> Result<TruncatedSeries, SeriesError> {
        assert!(k <= self.order());
        for power in 0..k {
            if !self.coeffs[power].is_zero() {
                return Err(SeriesError::NonzeroLowOrderCoefficient { power });
            }
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Exact coefficientwise division by a monomial.
    pub fn div_mono_exact(&self, m: Mono) -> Result<TruncatedSeries, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_mono_exact(m).ok_or(SeriesError::IndivisibleCoefficient))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplicative inverse. The constant coefficient must be a
    /// nonzero rational. Newton refinement; the final residual check is
    /// an assertion.
    pub fn reciprocal(&self) -> Result<TruncatedSeries, SeriesError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or(SeriesError::NonInvertibleConstantTerm)?;
        let order = self.order();
        let mut inv = TruncatedSeries::constant(order, MultiPoly::constant(c0.recip()));
        let mut correct = 0usize;
        while correct < order {
            correct = (2 * correct + 1).min(order);
            // X <- X * (2 - a * X), exact through z^correct.
            let ax = &(&self.truncate(correct) * &inv.truncate(correct));
            let two_minus = &TruncatedSeries::int(correct, 2) - ax;
            inv = (&inv.truncate(correct) * &two_minus).pad_to(order);
        }
        let residual = &(self * &inv) - &TruncatedSeries::one(order);
        assert!(residual.is_zero(), "reciprocal residual is nonzero");
        Ok(inv)
    }

    pub fn divide(&self, denominator: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        Ok(self * &denominator.reciprocal()?)
    }

    /// Square root of a series with constant coefficient exactly 1,
    /// via Newton refinement of the inverse square root. The result
    /// squares back to the input; that residual is an assertion.
    pub fn sqrt1p(&self) -> Result<TruncatedSeries, SeriesError> {
        if self.coeffs[0] != MultiPoly::one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let order = self.order();
        let half = BigRational::new(1.into(), 2.into());
        let mut inv_root = TruncatedSeries::one(order);
        let mut correct = 0usize;
        while correct < order {
            correct = (2 * correct + 1).min(order);
            // V <- V * (3 - a * V^2) / 2, exact through z^correct.
            let v = inv_root.truncate(correct);
            let av2 = &(&self.truncate(correct) * &v) * &v;
            let three_minus = &TruncatedSeries::int(correct, 3) - &av2;
            inv_root = (&v * &three_minus).scale(&half).pad_to(order);
        }
        let root = self * &inv_root;
        let residual = &(&root * &root) - self;
        assert!(residual.is_zero(), "sqrt residual is nonzero");
        Ok(root)
    }

    fn pad_to(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, MultiPoly::zero());
        TruncatedSeries { coeffs }
    }

    /// Replaces a marker variable by a polynomial in every coefficient.
    pub fn substitute(&self, v: Var, replacement: &MultiPoly) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.substitute(v, replacement))
                .collect(),
        }
    }

    pub fn subst_int(&self, v: Var, value: i64) -> TruncatedSeries {
        self.substitute(v, &MultiPoly::int(value))
    }

    pub fn swap_vars(&self, a: Var, b: Var) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.swap_vars(a, b)).collect(),
        }
    }

    /// Substitutes `z -> m * z`: the coefficient of `z^k` picks up
    /// `m^k`.
    pub fn subst_z_mono(&self, m: Mono) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.mul_mono(m.pow(k)))
                .collect(),
        }
    }

    pub fn max_degree(&self, v: Var) -> usize {
        self.coeffs.iter().map(|c| c.max_degree(v)).max().unwrap_or(0)
    }

    /// JSON dump with one entry per nonzero monomial, `z` power folded
    /// into the monomial string and values rendered as `num/den`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for (k, poly) in self.coeffs.iter().enumerate() {
            for (mono, value) in poly.terms() {
                let mut name = String::new();
                if !mono.is_one() {
                    name.push_str(&mono.to_string());
                }
                if k > 0 {
                    if !name.is_empty() {
                        name.push('*');
                    }
                    if k == 1 {
                        name.push('z');
                    } else {
                        name.push_str(&format!("z^{k}"));
                    }
                }
                if name.is_empty() {
                    name.push('1');
                }
                entries.push(json!({
                    "monomial": name,
                    "value": format!("{}/{}", value.numer(), value.denom()),
                }));
            }
        }
        json!({ "order": self.order(), "coeffs": entries })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, poly) in self.coeffs.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            let body = poly.to_string();
            let needs_parens = poly.num_terms() > 1
                || body.contains(' ')
                || (k > 0 && poly.as_constant().map_or(false, |c| c.is_negative()));
            if k == 0 {
                write!(f, "{body}")?;
            } else {
                let z = if k == 1 {
                    "z".to_string()
                } else {
                    format!("z^{k}")
                };
                if poly == &MultiPoly::one() {
                    write!(f, "{z}")?;
                } else if needs_parens {
                    write!(f, "({body})*{z}")?;
                } else {
                    write!(f, "{body}*{z}")?;
                }
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn geometric(order: usize) -> TruncatedSeries {
        // 1 + z + z^2 + ...
        let coeffs = vec![MultiPoly::one(); order + 1];
        TruncatedSeries { coeffs }
    }

    #[test]
    fn product_of_conjugates() {
        let order = 4;
        let one = TruncatedSeries::one(order);
        let z = TruncatedSeries::z(order);
        let prod = &(&one + &z) * &(&one - &z);
        let mut expected = TruncatedSeries::one(order);
        expected.coeffs[2] = MultiPoly::int(-1);
        assert_eq!(prod, expected);
    }

    #[test]
    fn mul_by_zero() {
        let s = geometric(5);
        assert!((&s * &TruncatedSeries::zero(5)).is_zero());
    }

    #[test]
    fn geometric_telescopes() {
        let order = 7;
        let s = geometric(order);
        let one_minus_z = &TruncatedSeries::one(order) - &TruncatedSeries::z(order);
        assert_eq!(&s * &one_minus_z, TruncatedSeries::one(order));
    }

    #[test]
    fn reciprocal_of_one_minus_z() {
        let order = 6;
        let one_minus_z = &TruncatedSeries::one(order) - &TruncatedSeries::z(order);
        assert_eq!(one_minus_z.reciprocal().unwrap(), geometric(order));
    }

    #[test]
    fn reciprocal_of_one_minus_uz() {
        let order = 5;
        let uz = TruncatedSeries::term(order, MultiPoly::var(Var::U), 1);
        let s = &TruncatedSeries::one(order) - &uz;
        let inv = s.reciprocal().unwrap();
        for k in 0..=order {
            assert_eq!(
                inv.coeff(k),
                &MultiPoly::monomial(Mono::var(Var::U).pow(k), num_traits::One::one())
            );
        }
    }

    #[test]
    fn reciprocal_needs_constant_unit() {
        let z = TruncatedSeries::z(4);
        assert_eq!(
            z.reciprocal().err(),
            Some(SeriesError::NonInvertibleConstantTerm)
        );
        let u = TruncatedSeries::var(4, Var::U);
        assert_eq!(
            u.reciprocal().err(),
            Some(SeriesError::NonInvertibleConstantTerm)
        );
    }

    #[test]
    fn sqrt_of_one() {
        let one = TruncatedSeries::one(5);
        assert_eq!(one.sqrt1p().unwrap(), one);
    }

    #[test]
    fn sqrt_of_one_minus_4z_matches_binomial_oracle() {
        // Independent oracle: (1/2 choose k) * (-4)^k.
        let order = 8;
        let mut expected = Vec::new();
        for k in 0..=order {
            let mut coeff = BigRational::one();
            for j in 0..k {
                let term = &BigRational::new(1.into(), 2.into())
                    - &BigRational::from_integer(BigInt::from(j as i64));
                coeff *= term;
            }
            for j in 1..=k {
                coeff /= BigRational::from_integer(BigInt::from(j as i64));
            }
            coeff *= BigRational::from_integer(BigInt::from(-4i64)).pow(k as i32);
            expected.push(coeff);
        }
        let s = &TruncatedSeries::one(order)
            - &TruncatedSeries::term(order, MultiPoly::int(4), 1);
        let root = s.sqrt1p().unwrap();
        for k in 0..=order {
            assert_eq!(
                root.coeff(k).as_constant().unwrap(),
                expected[k],
                "coefficient of z^{k}"
            );
        }
        // Spot values: 1, -2, -2, -4, -10.
        assert_eq!(root.coeff(1).as_constant().unwrap(), BigRational::from_integer((-2).into()));
        assert_eq!(root.coeff(4).as_constant().unwrap(), BigRational::from_integer((-10).into()));
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let order = 6;
        let one_plus_z = &TruncatedSeries::one(order) + &TruncatedSeries::z(order);
        let square = &one_plus_z * &one_plus_z;
        assert_eq!(square.sqrt1p().unwrap(), one_plus_z);
    }

    #[test]
    fn sqrt_requires_unit_constant_term() {
        let s = TruncatedSeries::int(4, 2);
        assert_eq!(s.sqrt1p().err(), Some(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn checked_shift() {
        let z2 = TruncatedSeries::term(5, MultiPoly::one(), 2);
        let shifted = z2.div_z_exact(2).unwrap();
        assert_eq!(shifted, TruncatedSeries::one(3));
        let one = TruncatedSeries::one(5);
        assert_eq!(
            one.div_z_exact(1).err(),
            Some(SeriesError::NonzeroLowOrderCoefficient { power: 0 })
        );
    }

    #[test]
    fn orders_propagate_to_minimum() {
        let a = TruncatedSeries::one(8);
        let b = TruncatedSeries::one(3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn json_dump_shape() {
        let s = &TruncatedSeries::one(2)
            + &TruncatedSeries::term(2, MultiPoly::var(Var::X), 1);
        let dump = s.to_json();
        assert_eq!(dump["order"], 2);
        assert_eq!(dump["coeffs"][0]["monomial"], "1");
        assert_eq!(dump["coeffs"][0]["value"], "1/1");
        assert_eq!(dump["coeffs"][1]["monomial"], "x*z");
        assert_eq!(dump["coeffs"][1]["value"], "1/1");
    }

    #[test]
    fn display_round_trip_examples() {
        let s = &TruncatedSeries::one(2)
            + &TruncatedSeries::term(2, MultiPoly::var(Var::X), 2);
        assert_eq!(s.to_string(), "1 + x*z^2 + O(z^3)");
    }
}
