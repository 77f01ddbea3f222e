//! Closed-form generating functions, expanded exactly.
//!
//! Marker conventions, consistent across the crate:
//! - `tunnel_profile_series` counts Dyck paths by centered (`x`), left
//!   (`u`), right (`v`) tunnels and centered multitunnels (`w`);
//! - `hill_profile_series` counts by hills (`t`), odd rises (`u`), even
//!   rises (`v`) and returns (`w`);
//! - `region_profile_series` adds the diagonal offset `r` marked by `y`
//!   on top of the tunnel classification against the line `x = n + r`;
//! - `fp_exc_series` / `fp_exc_des_series` count 132-avoiding
//!   permutations by fixed points (`x`), excedances (`v`) and, for the
//!   latter, descents plus one (`p`);
//! - `window_series` counts nonempty Dyck paths by hills (`x`),
//!   initial/final hills (`t`/`s`), odd/even rises (`u`/`v`) and
//!   up-any-down windows (`q`).

use super::poly::{Mono, MultiPoly, Var};
use super::truncated::{SeriesError, TruncatedSeries};
use num_rational::BigRational;

fn p_int(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

fn pvar(v: Var) -> MultiPoly {
    MultiPoly::var(v)
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// The Catalan series: coefficients 1, 1, 2, 5, 14, ... It satisfies
/// `C = 1 + z C^2` and arises here as `(1 - sqrt(1 - 4z)) / (2z)` with
/// a checked shift for the `z` division.
pub fn catalan_series(order: usize) -> TruncatedSeries {
    let work = order + 1;
    let inner = &TruncatedSeries::one(work) - &TruncatedSeries::term(work, p_int(4), 1);
    let root = inner.sqrt1p().expect("constant term is 1");
    let numer = &TruncatedSeries::one(work) - &root;
    numer
        .div_z_exact(1)
        .expect("numerator vanishes at z^0")
        .scale(&half())
}

/// `sqrt(1 - 2(u+v)z + (v-u)^2 z^2)`, the radical shared by the tunnel
/// and hill profiles.
pub fn tunnel_radical(order: usize) -> TruncatedSeries {
    let u = pvar(Var::U);
    let v = pvar(Var::V);
    let lin = (&u + &v).scale(&BigRational::from_integer((-2).into()));
    let quad = (&v - &u).pow(2);
    let inner = &(&TruncatedSeries::one(order) + &TruncatedSeries::term(order, lin, 1))
        + &TruncatedSeries::term(order, quad, 2);
    inner.sqrt1p().expect("constant term is 1")
}

/// Shared denominator shape `2 - w + c w z + w * radical`, reciprocated
/// into `2 / (...)`.
fn two_over(order: usize, linear: MultiPoly) -> TruncatedSeries {
    let w = pvar(Var::W);
    let radical = tunnel_radical(order);
    let denom = &(&(&TruncatedSeries::constant(order, &p_int(2) - &w)
        + &TruncatedSeries::term(order, &linear * &w, 1))
        + &radical.scale_poly(&w));
    TruncatedSeries::int(order, 2)
        .divide(denom)
        .expect("denominator has constant term 2")
}

/// Dyck paths by centered/left/right tunnels and centered multitunnels
/// (`x`, `u`, `v`, `w`): `2 / (2 - w + (v+u-2x)wz + w*radical)`.
pub fn tunnel_profile_series(order: usize) -> TruncatedSeries {
    let linear = &(&pvar(Var::V) + &pvar(Var::U)) - &pvar(Var::X).scale(&BigRational::from_integer(2.into()));
    two_over(order, linear)
}

/// Dyck paths by hills, odd rises, even rises, returns (`t`, `u`, `v`,
/// `w`): `2 / (2 - w + (v+u-2tu)wz + w*radical)`.
pub fn hill_profile_series(order: usize) -> TruncatedSeries {
    let tu = &pvar(Var::T) * &pvar(Var::U);
    let linear = &(&pvar(Var::V) + &pvar(Var::U)) - &tu.scale(&BigRational::from_integer(2.into()));
    two_over(order, linear)
}

/// The pair of one-variable-deep specializations of the hill profile:
/// odd/even rises only, and the same with the roles of `u` and `v`
/// exchanged. They satisfy `G1 = 1 + u z H1 G1` and `H1 = 1 + v z G1 H1`.
pub fn rise_pair_series(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let g1 = hill_profile_series(order)
        .subst_int(Var::T, 1)
        .subst_int(Var::W, 1);
    let h1 = g1.swap_vars(Var::U, Var::V);
    (g1, h1)
}

/// Dyck paths classified against the sliding line `x = n + r`
/// (`t` = tunnels at the line, `u` = at or left, `v` = right, `w` =
/// multitunnels at the line, `y` = r): the rational form
/// `C(uyz) G / (1 - y u^2 z^2 C(uyz)^2 G1 H1)`.
pub fn region_profile_series(order: usize) -> TruncatedSeries {
    let uy = Mono::from_powers(&[(Var::U, 1), (Var::Y, 1)]);
    let c_uyz = catalan_series(order).subst_z_mono(uy);
    let g = hill_profile_series(order);
    let (g1, h1) = rise_pair_series(order);
    let u2y = MultiPoly::monomial(
        Mono::from_powers(&[(Var::U, 2), (Var::Y, 1)]),
        BigRational::from_integer(1.into()),
    );
    let c_squared = &c_uyz * &c_uyz;
    let tail = (&(&c_squared * &g1) * &h1).scale_poly(&u2y).mul_z(2);
    let denom = &TruncatedSeries::one(order) - &tail;
    (&c_uyz * &g)
        .divide(&denom)
        .expect("denominator has constant term 1")
}

/// The same series in its radical form, built from
/// `A = radical - 1` and `B = sqrt(1 - 4uyz) - 1`:
/// `2B(2+(v-u)z+A) / ([2+(u+v-2tu)wz+wA][(A+(v-u)z)B-4uyz])`,
/// with the common factor `uyz` of `B` cancelled exactly.
pub fn region_profile_series_radical(order: usize) -> TruncatedSeries {
    let work = order + 1;
    let u = pvar(Var::U);
    let v = pvar(Var::V);
    let w = pvar(Var::W);
    let uy = Mono::from_powers(&[(Var::U, 1), (Var::Y, 1)]);

    let a = &tunnel_radical(work) - &TruncatedSeries::one(work);
    let b_inner = &TruncatedSeries::one(work)
        - &TruncatedSeries::term(
            work,
            MultiPoly::monomial(uy, BigRational::from_integer(4.into())),
            1,
        );
    let b = &b_inner.sqrt1p().expect("constant term is 1") - &TruncatedSeries::one(work);
    // b = uyz * bhat with bhat starting at -2.
    let bhat = b
        .div_z_exact(1)
        .expect("B vanishes at z^0")
        .div_mono_exact(uy)
        .expect("every coefficient of B/z carries uy");

    let vu_z = TruncatedSeries::term(work, &v - &u, 1);
    let numer = (&bhat * &(&(&TruncatedSeries::int(work, 2) + &vu_z) + &a))
        .scale(&BigRational::from_integer(2.into()));

    let tu = &pvar(Var::T) * &u;
    let lin = &(&(&u + &v) - &tu.scale(&BigRational::from_integer(2.into()))) * &w;
    let left = &(&TruncatedSeries::int(work, 2) + &TruncatedSeries::term(work, lin, 1))
        + &a.scale_poly(&w);
    let right = &(&(&a + &vu_z) * &bhat) - &TruncatedSeries::int(order, 4);

    numer
        .divide(&(&left * &right))
        .expect("denominator has constant term -8")
        .truncate(order)
}

/// 132-avoiding permutations by fixed points (`x`) and excedances
/// (`v`): `2 / (1 + (1+v-2x)z + sqrt(1 - 2(1+v)z + (1-v)^2 z^2))`.
pub fn fp_exc_series(order: usize) -> TruncatedSeries {
    let v = pvar(Var::V);
    let x = pvar(Var::X);
    let one_plus_v = &p_int(1) + &v;
    let lin = &one_plus_v - &x.scale(&BigRational::from_integer(2.into()));
    let inner = &(&TruncatedSeries::one(order)
        + &TruncatedSeries::term(
            order,
            one_plus_v.scale(&BigRational::from_integer((-2).into())),
            1,
        ))
        + &TruncatedSeries::term(order, (&p_int(1) - &v).pow(2), 2);
    let denom = &(&TruncatedSeries::one(order) + &TruncatedSeries::term(order, lin, 1))
        + &inner.sqrt1p().expect("constant term is 1");
    TruncatedSeries::int(order, 2)
        .divide(&denom)
        .expect("denominator has constant term 2")
}

/// 132-avoiding permutations by fixed points (`x`), excedances (`v`)
/// and descents plus one (`p`), as `2(1 + xz(p-1))` over
/// `1 + (1+v-2x)z - vz^2(p-1)^2 + sqrt(f1)` with the printed quartic
/// `f1`.
pub fn fp_exc_des_series(order: usize) -> TruncatedSeries {
    let v = pvar(Var::V);
    let x = pvar(Var::X);
    let p = pvar(Var::P);
    let pm1 = &p - &p_int(1);
    let pm1_sq = pm1.pow(2);
    let one_plus_v = &p_int(1) + &v;

    // f1 = 1 - 2(1+v)z + [(1-v)^2 - 2v(p-1)(p+3)]z^2
    //        - 2v(1+v)(p-1)^2 z^3 + v^2 (p-1)^4 z^4
    let z2_coeff = &(&p_int(1) - &v).pow(2)
        - &(&(&v * &pm1) * &(&p + &p_int(3))).scale(&BigRational::from_integer(2.into()));
    let z3_coeff = (&(&v * &one_plus_v) * &pm1_sq).scale(&BigRational::from_integer((-2).into()));
    let z4_coeff = &v.pow(2) * &pm1.pow(4);
    let f1 = &(&(&(&TruncatedSeries::one(order)
        + &TruncatedSeries::term(
            order,
            one_plus_v.scale(&BigRational::from_integer((-2).into())),
            1,
        ))
        + &TruncatedSeries::term(order, z2_coeff, 2))
        + &TruncatedSeries::term(order, z3_coeff, 3))
        + &TruncatedSeries::term(order, z4_coeff, 4);

    let lin = &(&p_int(1) + &v) - &x.scale(&BigRational::from_integer(2.into()));
    let denom = &(&(&TruncatedSeries::one(order) + &TruncatedSeries::term(order, lin, 1))
        - &TruncatedSeries::term(order, &v * &pm1_sq, 2))
        + &f1.sqrt1p().expect("constant term is 1");

    let numer = (&TruncatedSeries::one(order)
        + &TruncatedSeries::term(order, &x * &pm1, 1))
        .scale(&BigRational::from_integer(2.into()));
    numer
        .divide(&denom)
        .expect("denominator has constant term 2")
}

/// The quadratic's series root `K` with `K(0) = 0`:
/// `uz K^2 - [1 - (u+v)z + uv(1-q)^2 z^2] K + q^2 vz = 0`, solved by
/// fixed-point iteration. Returns the root after asserting that the
/// quadratic's residual vanishes.
pub fn window_series_root(order: usize) -> Result<TruncatedSeries, SeriesError> {
    let u = pvar(Var::U);
    let v = pvar(Var::V);
    let q = pvar(Var::Q);
    let bracket = window_quadratic_bracket(order);
    let bracket_inv = bracket.reciprocal()?;
    let q2vz = TruncatedSeries::term(order, &q.pow(2) * &v, 1);
    let uz = TruncatedSeries::term(order, u, 1);

    let mut k = TruncatedSeries::zero(order);
    for _ in 0..=order + 1 {
        let next = &(&q2vz + &(&uz * &(&k * &k))) * &bracket_inv;
        if next == k {
            let residual = &(&(&uz * &(&k * &k)) - &(&bracket * &k)) + &q2vz;
            assert!(residual.is_zero(), "quadratic residual is nonzero");
            return Ok(k);
        }
        k = next;
    }
    Err(SeriesError::FixedPointDivergence)
}

/// `1 - (u+v)z + uv(1-q)^2 z^2`, the middle coefficient of the
/// quadratic satisfied by [`window_series_root`].
pub fn window_quadratic_bracket(order: usize) -> TruncatedSeries {
    let u = pvar(Var::U);
    let v = pvar(Var::V);
    let q = pvar(Var::Q);
    &(&TruncatedSeries::one(order)
        - &TruncatedSeries::term(order, &u + &v, 1))
        + &TruncatedSeries::term(order, &(&u * &v) * &(&p_int(1) - &q).pow(2), 2)
}

/// Nonempty Dyck paths by hills (`x`), initial hill (`t`), final hill
/// (`s`), odd rises (`u`), even rises (`v`) and up-any-down windows
/// (`q`): `uz[xts + (1 - xu(1-t)(1-s)z)K] / (1 - xuz - uzK)`.
pub fn window_series(order: usize) -> TruncatedSeries {
    let u = pvar(Var::U);
    let x = pvar(Var::X);
    let t = pvar(Var::T);
    let s = pvar(Var::S);
    let k = window_series_root(order).expect("fixed point converges");

    let xts = &(&x * &t) * &s;
    let deflect = &(&x * &u) * &(&(&p_int(1) - &t) * &(&p_int(1) - &s));
    let factor = &TruncatedSeries::one(order) - &TruncatedSeries::term(order, deflect, 1);
    let numer = (&TruncatedSeries::constant(order, xts) + &(&factor * &k))
        .mul_z(1)
        .scale_poly(&u);
    let xu = &x * &u;
    let denom = &(&TruncatedSeries::one(order) - &TruncatedSeries::term(order, xu, 1))
        - &k.mul_z(1).scale_poly(&u);
    numer
        .divide(&denom)
        .expect("denominator has constant term 1")
}
