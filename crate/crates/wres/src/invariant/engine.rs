//! Recursion engine behind the resolution invariant.
//!
//! The invariant of an ideal `J` at the origin is computed level by level:
//! the first entry is `b = ord(J)`; a maximal-contact hypersurface `V(x_1)`
//! is selected from `D^{<= b-1} J`; and the remaining entries come from the
//! next-level ideal
//!
//! ```text
//!   J_2 = sum_{i=0}^{b-1} (D^{<= i} J |_{V(x_1)})^{b!/(b-i)}
//! ```
//!
//! whose own entries are divided by `(b-1)!` before being appended.  The
//! orders at deeper levels grow factorially, so `J_2` is *not* materialized
//! eagerly.  Instead each level is carried as a formal sum of powers
//! `sum_j B_j^{e_j}` ("parts") and the recursion dispatches on shape:
//!
//! * one ambient variable: the level is terminal and only its order is
//!   needed, `min_j e_j * ord(B_j)`;
//! * a common factor `g` of all exponents: every valuation of the sum is
//!   `g` times a valuation of the reduced sum, so the invariant scales by
//!   `g` and the recursion continues with exponents `e_j / g`;
//! * two ambient variables with monomial parts: a closed form (below)
//!   produces both remaining entries without expanding anything;
//! * otherwise, if the expansion is small, the parts are multiplied out and
//!   the dense recursion continues.
//!
//! Every path is exact; when none applies the engine reports a budget
//! error rather than approximate.

use crate::algebra::poly::OrdVal;
use crate::algebra::{Poly, PolyMap, Rat, Ring};
use crate::error::{Error, Result};
use crate::groebner::{self, Order};
use crate::ideal::{Ideal, ZeroStatus};
use num::bigint::BigInt;
use num::{BigUint, Integer, One, ToPrimitive, Zero};
use std::sync::Arc;

/// Dense levels above this order are refused (the derivative ladder would
/// have that many rungs).
const DENSE_ORD_CAP: u64 = 3_000;
/// Largest exponent a part may carry into explicit expansion.
const EXPAND_EXP_CAP: u64 = 5_000;
/// Cap on the estimated number of generator-by-term products an expansion
/// may produce.
const EXPAND_SIZE_CAP: u128 = 150_000;
/// Canonicalizing a derivative ideal by Groebner basis is attempted only
/// below these sizes; otherwise the raw generators are used.
const CANON_MAX_GENS: usize = 48;
const CANON_MAX_DEG: u64 = 64;

/// One level of the maximal-contact tower: the selected hypersurface
/// section, and which ambient variable its linear part eliminates.  The
/// polynomial lives in that level's ring; because each coordinate change
/// only rewrites its own pivot variable, the expression lifts verbatim to
/// the ambient ring of any earlier level.
#[derive(Clone, Debug)]
pub(crate) struct LevelParam {
    pub param: Poly,
    pub pivot_name: String,
}

/// Order of a formal sum of powers, with the same jet semantics as
/// [`OrdVal`] but at unbounded scale.
enum BigOrd {
    Exact(BigUint),
    AtLeast(BigUint),
    Infinity,
}

fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

fn big_to_rat(b: &BigUint) -> Rat {
    Rat::from_integer(BigInt::from(b.clone()))
}

fn clamp_i64(b: &BigUint) -> i64 {
    b.to_i64().unwrap_or(i64::MAX)
}

/// Entry point: entries of the invariant of `ideal` at the origin (already
/// normalized level by level) plus the maximal-contact data per level.
pub(crate) fn invariant_entries(ideal: &Ideal) -> Result<(Vec<Rat>, Vec<LevelParam>)> {
    inv_dense(ideal.clone())
}

/// Invariant of an explicitly given ideal.
fn inv_dense(ideal: Ideal) -> Result<(Vec<Rat>, Vec<LevelParam>)> {
    match ideal.zero_status() {
        ZeroStatus::Zero => return Ok((Vec::new(), Vec::new())),
        ZeroStatus::ZeroUpTo(p) => {
            return Err(Error::TruncationTooSmall {
                have: p,
                need: p.saturating_add(1),
            })
        }
        ZeroStatus::NonZero => {}
    }
    let ring = ideal.ring().clone();
    let b = ideal.ord_origin().exact()?;
    if b == 0 {
        return Err(Error::UnitIdeal);
    }
    if ring.nvars() == 1 {
        // Terminal level: restricting to the vanishing locus of the only
        // coordinate leaves nothing, so the invariant is just the order.
        return Ok((
            vec![Rat::from_integer(BigInt::from(b))],
            vec![LevelParam {
                param: Poly::var(&ring, 0),
                pivot_name: ring.var_name(0).to_string(),
            }],
        ));
    }
    if b > DENSE_ORD_CAP {
        return Err(Error::Budget(format!(
            "derivative ladder of height {b} exceeds the dense budget"
        )));
    }
    if let Some(n) = ring.truncation() {
        if (n as u64) < b {
            // The contact selection below needs faithful linear parts in
            // `D^{<= b-1}`, which costs `b - 1` derivative steps.
            return Err(Error::TruncationTooSmall {
                have: n as i64,
                need: b as i64,
            });
        }
    }

    let tower = ideal.derivative_tower((b - 1) as u32)?;
    let (pivot, param) = select_contact(&tower[(b - 1) as usize])?;

    // Straighten the contact hypersurface to the coordinate `x_pivot = 0`.
    let is_plain_var = param == Poly::var(&ring, pivot);

    // A generator lying in `(param)` restricts to exactly zero on the
    // contact hypersurface.  Certifying that by polynomial division keeps
    // the strips independent of the straightening inverse, which for a
    // parameter like `z + x*z^4` is a genuine power series: without the
    // certificate an exact ring would refuse and a jet ring would keep
    // asking for more precision to confirm a zero that is already provable.
    let mut kept_gens: Vec<Vec<Poly>> = Vec::with_capacity(tower.len());
    if is_plain_var {
        for level in &tower {
            kept_gens.push(level.gens().to_vec());
        }
    } else {
        let exact_ring = ring.exact();
        let bridge = PolyMap::renaming(&ring, &exact_ring)?;
        let divisor = if param.is_exact() {
            Some(Ideal::new(&exact_ring, vec![bridge.apply(&param)?])?)
        } else {
            None
        };
        // When the pivot variable divides the parameter, the cofactor has
        // constant term 1 (the linear part of the parameter is the pivot),
        // so near the origin the parameter cuts out the same hypersurface
        // as the pivot and divisibility by the pivot is already a zero
        // certificate.
        let pivot_cuts_param = param.is_exact() && param.var_order(pivot) >= 1;
        for level in &tower {
            let mut keep = Vec::new();
            for gen in level.gens() {
                if gen.is_exact_zero() {
                    continue;
                }
                if gen.is_exact() {
                    if pivot_cuts_param && gen.var_order(pivot) >= 1 {
                        continue;
                    }
                    if let Some(div) = &divisor {
                        if div.contains(&bridge.apply(gen)?)? {
                            continue;
                        }
                    }
                }
                keep.push(gen.clone());
            }
            kept_gens.push(keep);
        }
    }

    let sigma = if is_plain_var || kept_gens.iter().all(|k| k.is_empty()) {
        None
    } else {
        Some(elementary_map(&ring, pivot, &param)?.invert()?)
    };

    let restricted = ring.removing(pivot)?;
    let bfac = factorial(b);
    let mut parts: Vec<(Ideal, BigUint)> = Vec::new();
    for (i, keep) in kept_gens.iter().enumerate() {
        if keep.is_empty() {
            continue;
        }
        let level = Ideal::new(&ring, keep.clone())?;
        let moved = match &sigma {
            None => level,
            Some(s) => level.map(s)?,
        };
        let strip = moved.restrict(&[pivot])?;
        if matches!(strip.zero_status(), ZeroStatus::Zero) {
            continue;
        }
        let e = &bfac / BigUint::from(b - i as u64);
        parts.push((strip, e));
    }

    let this_level = LevelParam {
        param,
        pivot_name: ring.var_name(pivot).to_string(),
    };
    if parts.is_empty() {
        return Ok((vec![Rat::from_integer(BigInt::from(b))], vec![this_level]));
    }

    let (tail, tail_levels) = inv_lazy(parts, &restricted)?;
    let fac = big_to_rat(&factorial(b - 1));
    let mut entries = Vec::with_capacity(tail.len() + 1);
    entries.push(Rat::from_integer(BigInt::from(b)));
    entries.extend(tail.into_iter().map(|t| t / &fac));
    let mut levels = Vec::with_capacity(tail_levels.len() + 1);
    levels.push(this_level);
    levels.extend(tail_levels);
    Ok((entries, levels))
}

/// Invariant of a formal sum of powers `sum_j B_j^{e_j}` in `ring`.
fn inv_lazy(parts: Vec<(Ideal, BigUint)>, ring: &Arc<Ring>) -> Result<(Vec<Rat>, Vec<LevelParam>)> {
    let parts: Vec<(Ideal, BigUint)> = parts
        .into_iter()
        .filter(|(b, _)| !matches!(b.zero_status(), ZeroStatus::Zero))
        .collect();
    if parts.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    for (base, _) in &parts {
        if base.has_unit_generator() {
            return Err(Error::UnitIdeal);
        }
    }

    let b = match lazy_ord(&parts) {
        BigOrd::Infinity => return Ok((Vec::new(), Vec::new())),
        BigOrd::AtLeast(m) => {
            return Err(Error::TruncationTooSmall {
                have: clamp_i64(&m).saturating_sub(1),
                need: clamp_i64(&m),
            })
        }
        BigOrd::Exact(b) => b,
    };

    if ring.nvars() == 1 {
        return Ok((
            vec![big_to_rat(&b)],
            vec![LevelParam {
                param: Poly::var(ring, 0),
                pivot_name: ring.var_name(0).to_string(),
            }],
        ));
    }

    // Deeper levels would need the hidden tail of a class that is zero to
    // its precision; only the terminal branch above can ignore it.
    for (base, _) in &parts {
        if let ZeroStatus::ZeroUpTo(p) = base.zero_status() {
            return Err(Error::TruncationTooSmall {
                have: p,
                need: p.saturating_add(1),
            });
        }
    }

    // Common exponent factor: the sum is (up to integral closure, which the
    // invariant does not see) the g-th power of the reduced sum.
    let g = parts
        .iter()
        .fold(BigUint::zero(), |acc, (_, e)| acc.gcd(e));
    if g > BigUint::one() {
        let reduced: Vec<(Ideal, BigUint)> =
            parts.iter().map(|(b, e)| (b.clone(), e / &g)).collect();
        let (tail, levels) = inv_lazy(reduced, ring)?;
        let gr = big_to_rat(&g);
        return Ok((tail.into_iter().map(|t| t * &gr).collect(), levels));
    }

    if ring.nvars() == 2 && parts.iter().all(|(base, _)| is_monomial_ideal(base)) {
        return two_var_closed_form(&parts, &b, ring);
    }

    if let Some(dense) = expand_parts(&parts, ring)? {
        return inv_dense(dense);
    }

    Err(Error::Budget(format!(
        "no exact path for a level of order {b} in {} variables",
        ring.nvars()
    )))
}

/// Order of `sum_j B_j^{e_j}`: the minimum of `e_j * ord(B_j)`.
fn lazy_ord(parts: &[(Ideal, BigUint)]) -> BigOrd {
    let mut best_exact: Option<BigUint> = None;
    let mut best_bound: Option<BigUint> = None;
    for (base, e) in parts {
        match base.ord_origin() {
            OrdVal::Exact(d) => {
                let cand = e * BigUint::from(d);
                if best_exact.as_ref().map_or(true, |b| cand < *b) {
                    best_exact = Some(cand);
                }
            }
            OrdVal::AtLeast(d) => {
                let cand = e * BigUint::from(d);
                if best_bound.as_ref().map_or(true, |b| cand < *b) {
                    best_bound = Some(cand);
                }
            }
            OrdVal::Infinity => {}
        }
    }
    match (best_exact, best_bound) {
        (Some(d), Some(m)) if d <= m => BigOrd::Exact(d),
        (Some(_), Some(m)) => BigOrd::AtLeast(m),
        (Some(d), None) => BigOrd::Exact(d),
        (None, Some(m)) => BigOrd::AtLeast(m),
        (None, None) => BigOrd::Infinity,
    }
}

fn is_monomial_ideal(ideal: &Ideal) -> bool {
    ideal
        .gens()
        .iter()
        .all(|g| g.is_exact() && g.is_monomial())
}

/// Estimate-then-expand: multiply the parts out if the result stays small.
/// `Ok(None)` means "too large" (including a budget error during the
/// attempt); real failures propagate.
fn expand_parts(parts: &[(Ideal, BigUint)], ring: &Arc<Ring>) -> Result<Option<Ideal>> {
    let mut est: u128 = 0;
    for (base, e) in parts {
        let e64 = match e.to_u64() {
            Some(v) if v <= EXPAND_EXP_CAP => v,
            _ => return Ok(None),
        };
        let gens = base.gens().len() as u128;
        let max_terms = base
            .gens()
            .iter()
            .map(|g| g.num_terms())
            .max()
            .unwrap_or(1) as u128;
        let gen_count = multiset_count(gens, e64 as u128);
        let term_count = multiset_count(max_terms, e64 as u128);
        est = est.saturating_add(gen_count.saturating_mul(term_count));
        if est > EXPAND_SIZE_CAP {
            return Ok(None);
        }
    }
    let mut acc = Ideal::zero(ring);
    for (base, e) in parts {
        let e64 = e.to_u64().unwrap();
        let term = match base.power(e64) {
            Ok(t) => t,
            Err(Error::Budget(_)) => return Ok(None),
            Err(other) => return Err(other),
        };
        acc = match acc.sum(&term) {
            Ok(s) => s,
            Err(Error::Budget(_)) => return Ok(None),
            Err(other) => return Err(other),
        };
    }
    Ok(Some(acc))
}

/// Number of degree-`e` monomials in `g` symbols, saturating.
fn multiset_count(g: u128, e: u128) -> u128 {
    // C(g + e - 1, g - 1), computed factor by factor.
    if g == 0 {
        return 0;
    }
    let k = (g - 1).min(e);
    let n = g + e - 1;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i);
        if acc > u128::MAX / 2 {
            return u128::MAX;
        }
        acc /= i + 1;
    }
    acc
}

/// Closed form for a sum of powers of monomial ideals in two variables.
///
/// Write the sum as `J` with `b = ord(J)` and pivot variable `v` (the
/// earliest variable dividing a minimal-degree monomial of an
/// order-achieving part; such a monomial yields `v` itself inside
/// `D^{<= b-1} J`, so `v = 0` is a valid maximal-contact hypersurface).
/// For a monomial `mu = v^s w^t` of `J`, the restricted derivative orders
/// satisfy `ord(D^{<= i} J |_{v=0}) = min over mu with s <= i of
/// (deg mu - i)`, and the ratio `(deg mu - i)/(b - i)` is non-decreasing
/// in `i`, so each monomial contributes exactly `t / (b - s)` (when
/// `s <= b - 1`) to
///
/// ```text
///   next entry of the invariant = b * min_mu  t(mu) / (b - s(mu)).
/// ```
///
/// The minimum over the monomials of a power `B^e` is attained either at a
/// pure power of one generator or on the segment mixing two generators at
/// the boundary `s <= b - 1`; along such a segment the objective is
/// monotone, so only integer endpoints need testing.
fn two_var_closed_form(
    parts: &[(Ideal, BigUint)],
    b: &BigUint,
    ring: &Arc<Ring>,
) -> Result<(Vec<Rat>, Vec<LevelParam>)> {
    // Staircases as (exponent of var 0, exponent of var 1) pairs.
    let mut stairs: Vec<(Vec<(u64, u64)>, BigUint)> = Vec::new();
    for (base, e) in parts {
        let mut gens: Vec<(u64, u64)> = Vec::new();
        for g in base.gens() {
            let (m, _) = g.lead().expect("nonzero monomial generator");
            gens.push((m.0[0] as u64, m.0[1] as u64));
        }
        stairs.push((gens, e.clone()));
    }

    // Pivot: earliest variable appearing in a minimal-degree generator of a
    // part whose scaled order achieves b.
    let mut pivot = 1usize;
    'outer: for (gens, e) in &stairs {
        let ord = gens.iter().map(|(s, t)| s + t).min().unwrap();
        if &(e * BigUint::from(ord)) != b {
            continue;
        }
        for (s, t) in gens {
            if s + t == ord && *s >= 1 {
                pivot = 0;
                break 'outer;
            }
        }
    }
    let other = 1 - pivot;

    let b_int = BigInt::from(b.clone());
    let bm1 = b - BigUint::one();
    let mut best: Option<Rat> = None;
    let mut consider = |vexp: BigUint, wexp: BigUint| {
        if vexp > bm1 {
            return;
        }
        let ratio = Rat::new(BigInt::from(wexp), b_int.clone() - BigInt::from(vexp));
        if best.as_ref().map_or(true, |m| ratio < *m) {
            best = Some(ratio);
        }
    };
    for (gens, e) in &stairs {
        let oriented: Vec<(u64, u64)> = gens
            .iter()
            .map(|&(s, t)| if pivot == 0 { (s, t) } else { (t, s) })
            .collect();
        // Pure powers of a single generator.
        for &(s, t) in &oriented {
            consider(e * BigUint::from(s), e * BigUint::from(t));
        }
        // Mixtures of two generators, capped at the pivot-degree boundary.
        for &(sh, th) in &oriented {
            for &(sl, tl) in &oriented {
                if sh <= sl {
                    continue;
                }
                let lo_total = e * BigUint::from(sl);
                if lo_total > bm1 {
                    continue;
                }
                let room = (&bm1 - &lo_total) / BigUint::from(sh - sl);
                let c_max = room.min(e.clone());
                for back in 0..2u32 {
                    if c_max < BigUint::from(back) {
                        continue;
                    }
                    let c = &c_max - BigUint::from(back);
                    let rest = e - &c;
                    consider(
                        &c * BigUint::from(sh) + &rest * BigUint::from(sl),
                        &c * BigUint::from(th) + &rest * BigUint::from(tl),
                    );
                }
            }
        }
    }

    let first = LevelParam {
        param: Poly::var(ring, pivot),
        pivot_name: ring.var_name(pivot).to_string(),
    };
    match best {
        None => Ok((vec![big_to_rat(b)], vec![first])),
        Some(ratio) => {
            let second = LevelParam {
                param: Poly::var(ring, other),
                pivot_name: ring.var_name(other).to_string(),
            };
            Ok((
                vec![big_to_rat(b), big_to_rat(b) * ratio],
                vec![first, second],
            ))
        }
    }
}

/// Pick the maximal-contact element of a derivative ideal: canonicalize
/// the generators when cheap, then take the first generator whose linear
/// part hits the earliest possible variable, scaled so that the pivot
/// coefficient is 1.
pub(crate) fn select_contact(derived: &Ideal) -> Result<(usize, Poly)> {
    let canon = canonical_generators(derived)?;
    let gens: &[Poly] = if canon.is_empty() {
        derived.gens()
    } else {
        &canon
    };
    let n = derived.ring().nvars();
    for v in 0..n {
        for g in gens {
            let lin = g.linear_part();
            if let Some((_, c)) = lin.iter().find(|(i, _)| *i == v) {
                let inv = Rat::one() / c.clone();
                return Ok((v, g.scale(&inv)));
            }
        }
    }
    Err(Error::Unsupported(
        "no generator with a nonzero linear part; cannot select a maximal-contact hypersurface"
            .into(),
    ))
}

/// Groebner-canonicalized generators, or empty when canonicalization is
/// skipped (jet ring, size, or budget).  Canonicalization matters: a raw
/// generator like `x*(1 + x^2)` hides the local generator `x` that the
/// reduced basis exposes.
fn canonical_generators(ideal: &Ideal) -> Result<Vec<Poly>> {
    if ideal.ring().is_jet() {
        return Ok(Vec::new());
    }
    if ideal.gens().len() > CANON_MAX_GENS {
        return Ok(Vec::new());
    }
    if ideal
        .gens()
        .iter()
        .any(|g| g.degree().unwrap_or(0) > CANON_MAX_DEG)
    {
        return Ok(Vec::new());
    }
    match groebner::buchberger(ideal.gens(), Order::GrLex) {
        Ok(gb) => Ok(gb.gens().to_vec()),
        Err(Error::Budget(_)) | Err(Error::ExactOnly(_)) => Ok(Vec::new()),
        Err(other) => Err(other),
    }
}

/// The coordinate change sending the pivot variable to `param` and fixing
/// every other variable.
pub(crate) fn elementary_map(ring: &Arc<Ring>, pivot: usize, param: &Poly) -> Result<PolyMap> {
    let images = (0..ring.nvars())
        .map(|i| {
            if i == pivot {
                param.clone()
            } else {
                Poly::var(ring, i)
            }
        })
        .collect();
    PolyMap::new(ring.clone(), ring.clone(), images)
}
