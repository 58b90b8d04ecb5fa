//! Brute-force cross-checks for the test suite.
//!
//! Each function re-derives, by literal enumeration with no shortcuts, a
//! result the library computes through reductions (vertex forms, lazy
//! valuation queries, stratum analysis).  They share only the base
//! polynomial arithmetic, so agreement between the two routes is a genuine
//! check rather than the same code run twice.  Everything here is
//! exponential-time on purpose and guarded to tiny inputs.

use num::{One, Zero};

use crate::algebra::{Poly, Rat};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::invariant::{invariant_at, Center, Invariant};

/// Admissibility of a weighted center `(z_1^{a_1}, ..., z_k^{a_k})` for an
/// ideal, decided by rewriting every generator into the flag coordinates
/// and testing `Σ α_i / a_i ≥ 1` on **every** visible term of every
/// generator — full support enumeration, no vertex reduction, no early
/// pruning.
pub fn brute_admissible(center: &Center, ideal: &Ideal) -> Result<bool> {
    let flag = center.flag();
    let to = flag.to_flag();
    for g in ideal.gens() {
        let h = to.apply(g)?;
        if !h.is_exact() {
            return Err(Error::ExactOnly(
                "brute-force admissibility needs exact generators".into(),
            ));
        }
        for (mono, _) in h.terms() {
            let mut weighted = Rat::zero();
            for (&pivot, a) in flag.pivots().iter().zip(center.exponents()) {
                let e = Rat::from_integer(mono.0[pivot].into());
                weighted += e / a;
            }
            if weighted < Rat::one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The coefficient ideal `G_{a!}` materialized literally: the sum of all
/// products `I^{b_0} (D^{≤1}I)^{b_1} ⋯ (D^{≤a-1}I)^{b_{a-1}}` over tuples
/// with `Σ (a−i)·b_i` in `[a!, a!+a)`.  (Tuples with larger weighted degree
/// are multiples of these, so the window generates the same ideal.)
/// Guarded to `a ≤ 3`; the generator count explodes beyond that.
pub fn full_coefficient_ideal(ideal: &Ideal, a: u32) -> Result<Ideal> {
    if a == 0 {
        return Err(Error::Input("coefficient ideal needs a >= 1".into()));
    }
    if a > 3 {
        return Err(Error::Budget(format!(
            "literal coefficient-ideal enumeration is limited to a <= 3, got {a}"
        )));
    }
    let tower = ideal.derivative_tower(a - 1)?;
    let fact: u32 = (1..=a).product();
    let mut tuples: Vec<Vec<u32>> = Vec::new();
    collect_tuples(a, fact, 0, 0, &mut vec![0; a as usize], &mut tuples);
    let mut gens: Vec<Poly> = Vec::new();
    for b in &tuples {
        let mut prod = Ideal::unit(ideal.ring());
        for (i, &bi) in b.iter().enumerate() {
            if bi > 0 {
                prod = prod.product(&tower[i].power(bi as u64)?)?;
            }
        }
        gens.extend(prod.gens().iter().cloned());
    }
    Ideal::new(ideal.ring(), gens)
}

fn collect_tuples(
    a: u32,
    fact: u32,
    i: u32,
    sum: u32,
    b: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if i == a {
        if sum >= fact && sum < fact + a {
            out.push(b.clone());
        }
        return;
    }
    let weight = a - i;
    let mut bi = 0;
    while sum + weight * bi < fact + a {
        b[i as usize] = bi;
        collect_tuples(a, fact, i + 1, sum + weight * bi, b, out);
        bi += 1;
    }
    b[i as usize] = 0;
}

/// Exhaustive search over rational points with numerator and denominator
/// bounded by `bound`: the best invariant attained on the vanishing locus,
/// with the lexicographically smallest witness.  Points where the exact
/// evaluation is unavailable are skipped, so the result is a lower bound
/// for the true maximum — the production scan must never report less.
pub fn grid_maxinv(ideal: &Ideal, bound: u32) -> Result<(Vec<Rat>, Invariant)> {
    let ring = ideal.ring();
    if ring.is_jet() {
        return Err(Error::ExactOnly("grid search needs an exact ring".into()));
    }
    let n = ring.nvars();
    if n > 4 {
        return Err(Error::Budget(format!(
            "grid search is limited to 4 variables, got {n}"
        )));
    }
    let values = grid_values(bound);
    let mut best: Option<(Vec<Rat>, Invariant)> = None;
    let mut idx = vec![0usize; n];
    loop {
        let point: Vec<Rat> = idx.iter().map(|&i| values[i].clone()).collect();
        let on_locus = ideal
            .gens()
            .iter()
            .try_fold(true, |acc, g| Ok::<_, Error>(acc && g.eval(&point)?.is_zero()))?;
        if on_locus {
            if let Ok(inv) = point_invariant(ideal, &point) {
                let better = match &best {
                    None => true,
                    Some((bp, binv)) => {
                        inv > *binv || (inv == *binv && point < *bp)
                    }
                };
                if better {
                    best = Some((point, inv));
                }
            }
        }
        // Odometer over the value grid.
        let mut k = 0;
        loop {
            if k == n {
                return best.ok_or_else(|| {
                    Error::Input(
                        "no grid point on the vanishing locus could be evaluated".into(),
                    )
                });
            }
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Invariant at a grid point: exact first, then translated into a jet ring
/// when the coordinate change needs power series (smooth points of curved
/// hypersurfaces always do).  Jet retries are limited to two variables —
/// dense higher-dimensional jet arithmetic at every grid point is minutes
/// of work, and a skipped point only weakens the reported lower bound.
fn point_invariant(ideal: &Ideal, point: &[Rat]) -> Result<Invariant> {
    match invariant_at(ideal, point) {
        Ok((inv, _)) => Ok(inv),
        Err(e @ (Error::ExactOnly(_) | Error::TruncationTooSmall { .. }))
            if point.len() > 2 =>
        {
            Err(e)
        }
        Err(Error::ExactOnly(_) | Error::TruncationTooSmall { .. }) => {
            let local = ideal.translate(point)?;
            let mut last = Error::Budget("jet retry did not run".into());
            for order in [8u32, 16, 32] {
                let jet = local.to_ring(&local.ring().jet(order))?;
                match invariant_at(&jet, &vec![Rat::zero(); point.len()]) {
                    Ok((inv, _)) => return Ok(inv),
                    Err(e @ (Error::ExactOnly(_) | Error::TruncationTooSmall { .. })) => last = e,
                    Err(e) => return Err(e),
                }
            }
            Err(last)
        }
        Err(e) => Err(e),
    }
}

/// All reduced rationals `p/q` with `|p| <= bound`, `1 <= q <= bound`,
/// sorted ascending.
fn grid_values(bound: u32) -> Vec<Rat> {
    let mut set = std::collections::BTreeSet::new();
    for q in 1..=bound.max(1) as i64 {
        for p in -(bound as i64)..=bound as i64 {
            set.insert(Rat::new(p.into(), q.into()));
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::ideal::Ideal;
    use crate::invariant::is_admissible;
    use std::sync::Arc;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn rq(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn center(ring: &Arc<Ring>, parts: &[(&str, Rat)]) -> Center {
        Center::from_params(
            ring,
            parts
                .iter()
                .map(|(t, a)| (Poly::parse(ring, t).unwrap(), a.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn brute_admissibility_matches_the_reference_verdicts() {
        let ring = Ring::new(&["x1", "x2"]).unwrap();
        let monomial = Ideal::parse(&ring, "x1^3*x2^3").unwrap();
        let c66 = center(&ring, &[("x1", r(6)), ("x2", r(6))]);
        assert!(brute_admissible(&c66, &monomial).unwrap());
        assert!(is_admissible(&c66, &monomial).unwrap());

        let curve = Ideal::parse(&ring, "x1^5 + x1^3*x2^3 + x2^8").unwrap();
        let c = center(&ring, &[("x1", r(5)), ("x2", rq(15, 2))]);
        assert!(brute_admissible(&c, &curve).unwrap());
        assert!(is_admissible(&c, &curve).unwrap());

        let square = Ideal::parse(&ring, "x1^2").unwrap();
        let c3 = center(&ring, &[("x1", r(3))]);
        assert!(!brute_admissible(&c3, &square).unwrap());
        assert!(!is_admissible(&c3, &square).unwrap());
    }

    #[test]
    fn literal_coefficient_ideal_is_the_identity_for_order_one() {
        let ring = Ring::new(&["x", "y"]).unwrap();
        let ideal = Ideal::parse(&ring, "x + y^2").unwrap();
        let g = full_coefficient_ideal(&ideal, 1).unwrap();
        assert_eq!(g.gens().len(), 1);
        assert_eq!(g.gens()[0], ideal.gens()[0].monic());
    }

    #[test]
    fn literal_coefficient_ideal_is_guarded() {
        let ring = Ring::new(&["x"]).unwrap();
        let ideal = Ideal::parse(&ring, "x^4").unwrap();
        assert!(matches!(
            full_coefficient_ideal(&ideal, 4),
            Err(Error::Budget(_))
        ));
        assert!(matches!(
            full_coefficient_ideal(&ideal, 0),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn grid_search_confirms_the_product_quadric_and_cusp_maxima() {
        let ring = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let quadric = Ideal::parse(&ring, "x^2 - y1*y2*y3").unwrap();
        let (point, inv) = grid_maxinv(&quadric, 2).unwrap();
        assert_eq!(point, vec![r(0), r(0), r(0), r(0)]);
        assert_eq!(inv.entries(), &[r(2), r(3), r(3), r(3)]);

        let ring3 = Ring::new(&["x", "y", "z"]).unwrap();
        let prod = Ideal::parse(&ring3, "x^2*y*z + y*z^4").unwrap();
        let (point, inv) = grid_maxinv(&prod, 2).unwrap();
        assert_eq!(point, vec![r(0), r(0), r(0)]);
        assert_eq!(inv.entries(), &[r(4), r(4), r(4)]);
    }

    #[test]
    fn grid_search_sees_smooth_conics_as_smooth() {
        let ring = Ring::new(&["x", "y"]).unwrap();
        let conic = Ideal::parse(&ring, "x^2 + y^2 - 1").unwrap();
        let (_, inv) = grid_maxinv(&conic, 2).unwrap();
        assert_eq!(inv.entries(), &[r(1)]);
    }
}
