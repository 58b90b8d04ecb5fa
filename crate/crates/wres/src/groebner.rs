//! A minimal Buchberger engine over the rationals.
//!
//! Supplies ideal membership, triviality (`1 ∈ I`), lex elimination, and
//! rational-point extraction for zero-dimensional loci. Smoothness
//! certificates and maximal-locus searches are built on these.
//!
//! Determinism: S-pairs are processed in normal strategy (smallest lcm
//! first, ties by graded-lex), and the final basis is auto-reduced and
//! monic, hence the unique reduced Gröbner basis for the chosen order.

use crate::algebra::{Mono, Poly, Rat, Ring};
use crate::error::{Error, Result};
use num::{BigInt, One, Signed, Zero};
use std::cmp::Ordering;
use std::sync::Arc;

/// Monomial orders: graded-lex for general work, pure lex (earlier ring
/// variables largest) for elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    GrLex,
    Lex,
}

impl Order {
    pub fn cmp(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            Order::GrLex => a.cmp(b),
            Order::Lex => a.0.cmp(&b.0),
        }
    }
}

/// Leading term of `p` under `order`.
fn lead<'a>(p: &'a Poly, order: Order) -> Option<(&'a Mono, &'a Rat)> {
    match order {
        Order::GrLex => p.lead(),
        Order::Lex => p.terms().max_by(|(a, _), (b, _)| order.cmp(a, b)),
    }
}

/// A reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GBasis {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    order: Order,
}

/// Hard ceilings keeping degenerate inputs from running away.
const MAX_PAIRS: usize = 200_000;
const MAX_BASIS: usize = 4_000;
const MAX_DEGREE: u64 = 3_000;

impl GBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_trivial_basis(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_unit_constant()
    }

    pub fn is_zero_basis(&self) -> bool {
        self.gens.is_empty()
    }

    /// Fully reduce `p` modulo the basis.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        normal_form(p, &self.gens, self.order)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

fn normal_form(p: &Poly, basis: &[Poly], order: Order) -> Result<Poly> {
    let mut rem = Poly::zero(p.ring());
    let mut cur = p.clone();
    let mut steps: usize = 0;
    'outer: while !cur.is_zero() {
        steps += 1;
        if steps > MAX_PAIRS {
            return Err(Error::Budget("normal form did not terminate in budget".into()));
        }
        let (lm, lc) = lead(&cur, order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        for g in basis {
            let (gm, gc) = match lead(g, order) {
                Some(x) => x,
                None => continue,
            };
            if let Some(q) = gm.div_into(&lm) {
                let factor = Poly::monomial(cur.ring(), q, &lc / gc);
                cur = cur.sub(&factor.mul(g)?)?;
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        let t = Poly::monomial(cur.ring(), lm.clone(), lc.clone());
        rem = rem.add(&t)?;
        cur = cur.sub(&t)?;
    }
    Ok(rem)
}

/// Compute the reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly], order: Order) -> Result<GBasis> {
    let ring = gens
        .first()
        .map(|p| p.ring().clone())
        .ok_or_else(|| Error::Input("empty generator list".into()))?;
    if ring.is_jet() {
        return Err(Error::ExactOnly("Groebner bases need an exact ring".into()));
    }
    for g in gens {
        if !g.is_exact() {
            return Err(Error::ExactOnly("Groebner bases need exact inputs".into()));
        }
    }
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let c = lead(g, order).unwrap().1.clone();
            basis.push(g.scale(&(Rat::one() / c)));
        }
    }
    if basis.is_empty() {
        return Ok(GBasis {
            ring,
            gens: basis,
            order,
        });
    }

    // Pair queue; `None` marks processed/discarded entries.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > MAX_PAIRS || basis.len() > MAX_BASIS {
            return Err(Error::Budget("Groebner basis computation exceeded budget".into()));
        }
        // Normal strategy: smallest lcm under `order`, ties graded-lex.
        let mut best = 0usize;
        let mut best_lcm: Option<Mono> = None;
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            let l = lead(&basis[i], order).unwrap().0.lcm(lead(&basis[j], order).unwrap().0);
            let better = match &best_lcm {
                None => true,
                Some(cur) => match order.cmp(&l, cur) {
                    Ordering::Less => true,
                    Ordering::Equal => l.cmp(cur) == Ordering::Less,
                    Ordering::Greater => false,
                },
            };
            if better {
                best = idx;
                best_lcm = Some(l);
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let (mi, _) = lead(&basis[i], order).unwrap();
        let (mj, _) = lead(&basis[j], order).unwrap();
        if mi.coprime(mj) {
            continue; // Buchberger's first criterion.
        }
        let l = mi.lcm(mj);
        let fi = Poly::monomial(&ring, mi.div_into(&l).unwrap(), Rat::one());
        let fj = Poly::monomial(&ring, mj.div_into(&l).unwrap(), Rat::one());
        let s = basis[i].mul(&fi)?.sub(&basis[j].mul(&fj)?)?;
        let r = normal_form(&s, &basis, order)?;
        if r.is_zero() {
            continue;
        }
        if r.degree().unwrap_or(0) > MAX_DEGREE {
            return Err(Error::Budget("Groebner basis degree exceeded budget".into()));
        }
        let c = lead(&r, order).unwrap().1.clone();
        let r = r.scale(&(Rat::one() / c));
        let new_idx = basis.len();
        basis.push(r);
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
    }

    // Inter-reduce to the unique reduced basis.
    loop {
        let mut changed = false;
        let mut next: Vec<Poly> = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others: Vec<Poly> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = normal_form(&basis[i], &others, order)?;
            if r != basis[i] {
                changed = true;
            }
            if !r.is_zero() {
                let c = lead(&r, order).unwrap().1.clone();
                next.push(r.scale(&(Rat::one() / c)));
            }
        }
        // Deduplicate identical elements.
        next.sort_by(|a, b| order.cmp(lead(a, order).unwrap().0, lead(b, order).unwrap().0));
        next.dedup();
        basis = next;
        if !changed {
            break;
        }
    }
    Ok(GBasis {
        ring,
        gens: basis,
        order,
    })
}

/// Does the ideal generated by `gens` contain 1?
pub fn is_trivial(gens: &[Poly]) -> Result<bool> {
    // A visible unit settles it without any basis work.
    if gens.iter().any(|g| g.is_unit_constant()) {
        return Ok(true);
    }
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(false);
    }
    Ok(buchberger(gens, Order::GrLex)?.is_trivial_basis())
}

/// Generators of the elimination ideal using only variables with index
/// `>= keep_from` (lex basis filtered to the tail variables).
pub fn eliminate(gens: &[Poly], keep_from: usize) -> Result<Vec<Poly>> {
    let gb = buchberger(gens, Order::Lex)?;
    Ok(gb
        .gens()
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m.0[..keep_from].iter().all(|&e| e == 0)))
        .cloned()
        .collect())
}

/// Is `V(gens)` finite? Criterion: for every variable some leading monomial
/// of the basis is a pure power of it.
pub fn is_zero_dimensional(gb: &GBasis) -> bool {
    if gb.is_trivial_basis() {
        return true; // empty locus
    }
    if gb.is_zero_basis() {
        return false;
    }
    let n = gb.ring().nvars();
    (0..n).all(|i| {
        gb.gens().iter().any(|g| {
            let (m, _) = lead(g, gb.order).unwrap();
            m.0.iter().enumerate().all(|(j, &e)| e == 0 || j == i)
        })
    })
}

/// All rational points of a zero-dimensional locus, plus a flag telling
/// whether irrational points exist as well.
///
/// Points are returned sorted coordinate-lexicographically.
pub fn rational_points_zero_dim(gens: &[Poly]) -> Result<(Vec<Vec<Rat>>, bool)> {
    let ring = gens
        .first()
        .map(|p| p.ring().clone())
        .ok_or_else(|| Error::Input("empty generator list".into()))?;
    let gb = buchberger(gens, Order::Lex)?;
    if gb.is_trivial_basis() {
        return Ok((Vec::new(), false));
    }
    if !is_zero_dimensional(&gb) {
        return Err(Error::Unsupported("locus is not zero-dimensional".into()));
    }
    let mut all_rational = true;
    let points = extract_points(gb.gens(), &ring, &mut all_rational)?;
    let mut points: Vec<Vec<Rat>> = points;
    points.sort();
    points.dedup();
    Ok((points, all_rational))
}

fn extract_points(
    gens: &[Poly],
    ring: &Arc<Ring>,
    all_rational: &mut bool,
) -> Result<Vec<Vec<Rat>>> {
    let n = ring.nvars();
    let last = n - 1;
    // Univariate generator in the last variable: lex basis elements whose
    // support uses only it; take the lowest-degree one.
    let uni: Option<&Poly> = gens
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m.0[..last].iter().all(|&e| e == 0)))
        .min_by_key(|g| g.degree().unwrap_or(0));
    let uni = match uni {
        Some(u) => u,
        None => {
            return Err(Error::Unsupported(
                "no univariate elimination generator (locus not zero-dimensional)".into(),
            ))
        }
    };
    let coeffs: Vec<Rat> = {
        let d = uni.degree().unwrap_or(0) as usize;
        let mut c = vec![Rat::zero(); d + 1];
        for (m, coef) in uni.terms() {
            c[m.0[last] as usize] = coef.clone();
        }
        c
    };
    let (roots, complete) = rational_roots(&coeffs)?;
    if !complete {
        *all_rational = false;
    }
    let mut out = Vec::new();
    for r in roots {
        if n == 1 {
            out.push(vec![r]);
            continue;
        }
        // Substitute the root and recurse on the remaining variables.
        let sub_ring = ring.removing(last)?;
        let mut reduced: Vec<Poly> = Vec::new();
        let mut inconsistent = false;
        for g in gens {
            let mut acc = Poly::zero(ring);
            for (m, c) in g.terms() {
                let e = m.0[last];
                let mut m2 = m.clone();
                m2.0[last] = 0;
                let mut coef = c.clone();
                for _ in 0..e {
                    coef *= &r;
                }
                acc = acc.add(&Poly::monomial(ring, m2, coef))?;
            }
            let proj = acc.project_removing(last, &sub_ring)?;
            if proj.is_unit_constant() {
                inconsistent = true;
                break;
            }
            if !proj.is_zero() {
                reduced.push(proj);
            }
        }
        if inconsistent {
            continue;
        }
        if reduced.is_empty() {
            return Err(Error::Unsupported(
                "substituted system vanished; locus not zero-dimensional".into(),
            ));
        }
        let sub_gb = buchberger(&reduced, Order::Lex)?;
        if sub_gb.is_trivial_basis() {
            continue;
        }
        for mut p in extract_points(sub_gb.gens(), &sub_ring, all_rational)? {
            p.push(r.clone());
            out.push(p);
        }
    }
    Ok(out)
}

/// Rational roots of a univariate polynomial given by coefficients
/// (index = exponent). Returns distinct roots and whether they account for
/// the full degree (with multiplicity).
pub fn rational_roots(coeffs: &[Rat]) -> Result<(Vec<Rat>, bool)> {
    // Clear denominators.
    let mut den = BigInt::one();
    for c in coeffs {
        den = num::integer::lcm(den, c.denom().clone());
    }
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * &den / c.denom())
        .collect();
    while ints.last().map(|c| c.is_zero()).unwrap_or(false) {
        ints.pop();
    }
    if ints.is_empty() {
        return Err(Error::Unsupported("zero polynomial has every root".into()));
    }
    if ints.len() == 1 {
        return Ok((Vec::new(), true)); // nonzero constant
    }
    let mut roots = Vec::new();
    let mut remaining = ints.clone();
    // Factor out x^v first: root 0.
    let mut val = 0usize;
    while remaining[0].is_zero() {
        remaining.remove(0);
        val += 1;
    }
    if val > 0 {
        roots.push(Rat::zero());
    }
    // Candidates p/q with p | remaining[0], q | leading.
    let a0 = remaining[0].abs();
    let alead = remaining.last().unwrap().abs();
    let p_divs = divisors(&a0)?;
    let q_divs = divisors(&alead)?;
    let mut degree_left = remaining.len() - 1;
    'cand: for p in &p_divs {
        for q in &q_divs {
            for sign in [1i32, -1] {
                if degree_left == 0 {
                    break 'cand;
                }
                let cand = Rat::new(p * BigInt::from(sign), q.clone());
                // Deflate repeatedly while cand is a root.
                while degree_left > 0 && eval_int_poly(&remaining, &cand).is_zero() {
                    remaining = deflate(&remaining, &cand);
                    degree_left -= 1;
                    if !roots.contains(&cand) {
                        roots.push(cand.clone());
                    }
                }
            }
        }
    }
    Ok((roots, degree_left == 0))
}

fn eval_int_poly(coeffs: &[BigInt], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + Rat::from_integer(c.clone());
    }
    acc
}

/// Synthetic division by (x - r); exact because r is a root.
fn deflate(coeffs: &[BigInt], r: &Rat) -> Vec<BigInt> {
    let rat_coeffs: Vec<Rat> = coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let mut out: Vec<Rat> = vec![Rat::zero(); coeffs.len() - 1];
    let mut carry = Rat::zero();
    for i in (0..out.len()).rev() {
        carry = rat_coeffs[i + 1].clone() + carry * r;
        out[i] = carry.clone();
    }
    // Clear denominators again (may appear for fractional roots).
    let mut den = BigInt::one();
    for c in &out {
        den = num::integer::lcm(den, c.denom().clone());
    }
    out.iter().map(|c| c.numer() * &den / c.denom()).collect()
}

/// All positive divisors; refuses to factor numbers beyond the trial budget.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Ok(vec![BigInt::one()]);
    }
    let n_u: u128 = n
        .abs()
        .try_into()
        .map_err(|_| Error::Budget("constant too large for rational root search".into()))?;
    if n_u > 1_000_000_000_000u128 {
        return Err(Error::Budget("constant too large for rational root search".into()));
    }
    let mut small = Vec::new();
    let mut big = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n_u {
        if n_u % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n_u {
                big.push(BigInt::from(n_u / d));
            }
        }
        d += 1;
        if d > 2_000_000 {
            return Err(Error::Budget("divisor enumeration exceeded budget".into()));
        }
    }
    big.reverse();
    small.extend(big);
    Ok(small)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_from_str;

    fn p(r: &Arc<Ring>, s: &str) -> Poly {
        Poly::parse(r, s).unwrap()
    }

    #[test]
    fn basis_of_a_basis_is_itself() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let gb = buchberger(&[p(&r, "x"), p(&r, "y")], Order::GrLex).unwrap();
        assert_eq!(gb.gens().len(), 2);
        assert!(gb.contains(&p(&r, "x^2 + y")).unwrap());
        assert!(!gb.contains(&p(&r, "x + 1")).unwrap());
    }

    #[test]
    fn textbook_pair_produces_y2_minus_x() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let gb = buchberger(&[p(&r, "x^2 - y"), p(&r, "x*y - 1")], Order::GrLex).unwrap();
        let target = p(&r, "y^2 - x");
        assert!(
            gb.gens().iter().any(|g| *g == target),
            "basis {:?} should contain y^2 - x",
            gb.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn triviality_detection() {
        let r = Ring::new(&["x"]).unwrap();
        assert!(is_trivial(&[p(&r, "x"), p(&r, "1 + x")]).unwrap());
        assert!(is_trivial(&[p(&r, "1")]).unwrap());
        let r4 = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        assert!(!is_trivial(&[p(&r4, "x^2 - y1*y2*y3")]).unwrap());
    }

    #[test]
    fn smooth_hypersurface_jacobian_is_trivial() {
        // 1 + y'^3 + u*y'^8 together with its partials has empty vanishing
        // locus, so the Jacobian ideal is the unit ideal.
        let r = Ring::new(&["u", "y'"]).unwrap();
        let f = p(&r, "1 + y'^3 + u*y'^8");
        let gens = vec![f.clone(), f.derivative(0), f.derivative(1)];
        assert!(is_trivial(&gens).unwrap());
    }

    #[test]
    fn elimination_and_points() {
        let r = Ring::new(&["x", "y"]).unwrap();
        // V(x^2 - 1, y - x) = {(1,1), (-1,-1)}.
        let gens = vec![p(&r, "x^2 - 1"), p(&r, "y - x")];
        let (pts, all_rat) = rational_points_zero_dim(&gens).unwrap();
        assert!(all_rat);
        let expect: Vec<Vec<Rat>> = vec![
            vec![rat_from_str("-1").unwrap(), rat_from_str("-1").unwrap()],
            vec![rat_from_str("1").unwrap(), rat_from_str("1").unwrap()],
        ];
        assert_eq!(pts, expect);
    }

    #[test]
    fn irrational_points_are_flagged() {
        let r = Ring::new(&["x"]).unwrap();
        let (pts, all_rat) = rational_points_zero_dim(&[p(&r, "x^3 - 2*x")]).unwrap();
        assert_eq!(pts, vec![vec![Rat::zero()]]);
        assert!(!all_rat, "x^2 = 2 has irrational solutions");
    }

    #[test]
    fn fractional_roots_found() {
        let r = Ring::new(&["x"]).unwrap();
        let (pts, all_rat) = rational_points_zero_dim(&[p(&r, "2*x^2 - 3*x + 1")]).unwrap();
        assert!(all_rat);
        assert_eq!(
            pts,
            vec![
                vec![rat_from_str("1/2").unwrap()],
                vec![rat_from_str("1").unwrap()]
            ]
        );
    }

    #[test]
    fn empty_locus_gives_no_points() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let (pts, _) = rational_points_zero_dim(&[p(&r, "x"), p(&r, "x + 1")]).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn jet_rings_are_rejected() {
        let r = Ring::new(&["x"]).unwrap().jet(5);
        let f = Poly::parse(&r, "x^2").unwrap();
        assert!(matches!(
            buchberger(&[f], Order::GrLex),
            Err(Error::ExactOnly(_))
        ));
    }
}
