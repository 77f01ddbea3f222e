//! The enumeration oracle: ground-truth series built by summing a
//! requested monomial over every object of each size. Every closed form
//! in [`super::gf`] is checked against one of these sums.

use super::poly::{Mono, MultiPoly, Var};
use super::truncated::TruncatedSeries;
use crate::dyck::{enumerate_paths_capped, CapExceeded, DyckPath};
use crate::perm::{self, avoiders, avoiders_naive, PermError, Permutation};
use crate::stats::{self, StatProfile};
use num_rational::BigRational;
use num_traits::One;

/// `x^ct u^lt v^rt w^cmt` for one path.
pub fn tunnel_profile_mono(d: &DyckPath) -> Mono {
    let p = StatProfile::of(d);
    Mono::from_powers(&[
        (Var::X, p.ct),
        (Var::U, p.lt),
        (Var::V, p.rt),
        (Var::W, p.cmt),
    ])
}

/// `t^h u^odr v^er w^ret` for one path.
pub fn hill_profile_mono(d: &DyckPath) -> Mono {
    let p = StatProfile::of(d);
    Mono::from_powers(&[
        (Var::T, p.h),
        (Var::U, p.odr),
        (Var::V, p.er),
        (Var::W, p.ret),
    ])
}

/// Tunnel classification against `x = n + r`, with `y` marking `r`:
/// `t^at u^<=line v^>line w^multitunnels_at y^r`.
pub fn region_profile_mono(d: &DyckPath, r: usize) -> Mono {
    let counts = stats::tunnel_counts_at(d, r).expect("r <= n by construction");
    let cmt = stats::cmt_at(d, r).expect("r <= n by construction");
    Mono::from_powers(&[
        (Var::T, counts.at),
        (Var::U, counts.left_le),
        (Var::V, counts.right),
        (Var::W, cmt),
        (Var::Y, r),
    ])
}

/// `x^fp v^exc` for one permutation.
pub fn fp_exc_mono(pi: &Permutation) -> Mono {
    let s = perm::stats(pi);
    Mono::from_powers(&[(Var::X, s.fp), (Var::V, s.exc)])
}

/// `x^fp v^exc p^(des+1)` for a nonempty permutation, 1 for the empty
/// one.
pub fn fp_exc_des_mono(pi: &Permutation) -> Mono {
    if pi.is_empty() {
        return Mono::one();
    }
    let s = perm::stats(pi);
    Mono::from_powers(&[(Var::X, s.fp), (Var::V, s.exc), (Var::P, s.des + 1)])
}

/// Sum of `monomial(d)` over all Dyck paths of each semilength through
/// `order`.
pub fn dyck_series<F>(order: usize, cap: usize, monomial: F) -> Result<TruncatedSeries, CapExceeded>
where
    F: Fn(&DyckPath) -> Mono,
{
    let one = BigRational::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut poly = MultiPoly::zero();
        for d in enumerate_paths_capped(n, cap)? {
            poly.add_term(monomial(&d), &one);
        }
        coeffs.push(poly);
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// Triple sum: over semilength, over every path, over every offset
/// `r in 0..=n`. The closure sees the path and `r` and is responsible
/// for marking `r` itself.
pub fn dyck_offset_series<F>(
    order: usize,
    cap: usize,
    monomial: F,
) -> Result<TruncatedSeries, CapExceeded>
where
    F: Fn(&DyckPath, usize) -> Mono,
{
    let one = BigRational::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut poly = MultiPoly::zero();
        for d in enumerate_paths_capped(n, cap)? {
            for r in 0..=n {
                poly.add_term(monomial(&d, r), &one);
            }
        }
        coeffs.push(poly);
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

/// Sum of `monomial(pi)` over all `pattern`-avoiding permutations of
/// each size through `order`. With `naive` set the filter walks all
/// `n!` permutations; otherwise the bijective generators serve the
/// patterns that have them.
pub fn avoider_series<F>(
    order: usize,
    cap: usize,
    pattern: &Permutation,
    naive: bool,
    monomial: F,
) -> Result<TruncatedSeries, PermError>
where
    F: Fn(&Permutation) -> Mono,
{
    let one = BigRational::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let perms = if naive {
            avoiders_naive(n, pattern, cap)?
        } else {
            avoiders(n, pattern, cap)?
        };
        let mut poly = MultiPoly::zero();
        for pi in &perms {
            poly.add_term(monomial(pi), &one);
        }
        coeffs.push(poly);
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn trivial_monomial_counts_catalan() {
        let s = dyck_series(5, 16, |_| Mono::one()).unwrap();
        for (k, expected) in [1i64, 1, 2, 5, 14, 42].iter().enumerate() {
            assert_eq!(
                s.coeff(k).as_constant().unwrap(),
                BigRational::from_integer((*expected).into())
            );
        }
    }

    #[test]
    fn cap_is_honored() {
        assert!(dyck_series(17, 16, |_| Mono::one()).is_err());
    }

    #[test]
    fn avoider_series_counts_catalan() {
        let pattern = Permutation::parse("132").unwrap();
        let s = avoider_series(5, 10, &pattern, true, |_| Mono::one()).unwrap();
        for (k, expected) in [1i64, 1, 2, 5, 14, 42].iter().enumerate() {
            assert_eq!(
                s.coeff(k).as_constant().unwrap(),
                BigRational::from_integer((*expected).into())
            );
        }
    }
}
