//! Weighted blowup charts with cyclic group actions, and transforms of
//! ideals through them.
//!
//! A reduced center `(z_1^{w_1}, ..., z_k^{w_k})` with coprime integer
//! weights determines a weighted blowup covered by `k` affine charts, one
//! per flag level.  In the chart that inverts level `i` the substitution is
//!
//! ```text
//! z_i = u^{w_i},        z_j = u^{w_j} * z_j'   (j <= k, j != i),
//! ```
//!
//! with every coordinate outside the flag left untouched, the whole map
//! pre-composed with the flag automorphism that turns the center's
//! parameters into coordinates.  The chart carries a faithful action of the
//! cyclic group of order `w_i`: a generator scales `u` by a primitive root
//! of unity and each `z_j'` by the `(-w_j mod w_i)`-th power of that root,
//! so that the substitution is equivariant and the quotient glues into the
//! blown-up space.  An optional root factor `c` replaces every `w_j` by
//! `c * w_j`, which extracts a `c`-th root of the exceptional divisor
//! without moving any other geometry.
//!
//! Transforms of an ideal `I` through a chart:
//!
//! * the **total transform** substitutes the chart map into every
//!   generator;
//! * the **weak transform** divides each generator of the total transform
//!   by a prescribed power `u^m` exactly — for an admissible center with
//!   `m = a_1 * w_1 * c` the division is guaranteed, and a failure means
//!   the center was not admissible after all;
//! * the **proper transform** divides each generator by the largest power
//!   of `u` it admits.  For a principal ideal this is the ideal-theoretic
//!   proper transform; for several generators it is the generator-wise
//!   approximation of it.
//!
//! Chart coordinates keep their parent positions: the exceptional variable
//! sits where the inverted pivot sat, and untouched coordinates keep their
//! names.  A rescaled coordinate gains a prime (`y` to `y'`) when its
//! weight is at least 2 and a chart-index suffix (`y` to `y3` in chart 3)
//! when its weight is 1; the exceptional variable keeps the pivot's name
//! when its weight is 1 and otherwise takes the first fresh letter from
//! `u, v, w, t, s, r, q` not already claimed by an earlier chart.

use crate::algebra::{same_ring, Poly, PolyMap, Rat, Ring};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::invariant::ReducedCenter;
use num::{BigInt, ToPrimitive};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Fresh exceptional-variable letters, claimed in chart order.
const EXCEPTIONAL_LETTERS: [&str; 7] = ["u", "v", "w", "t", "s", "r", "q"];

/// One affine chart of a weighted blowup, together with its cyclic group
/// action.
#[derive(Clone, Debug)]
pub struct Chart {
    parent: Arc<Ring>,
    ring: Arc<Ring>,
    substitution: PolyMap,
    exceptional: usize,
    level: usize,
    group_order: u64,
    action_weights: Vec<u64>,
}

impl Chart {
    /// Ring the blown-up ideal lives in.
    pub fn parent(&self) -> &Arc<Ring> {
        &self.parent
    }

    /// Coordinate ring of the chart.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// The full substitution parent ring -> chart ring (flag automorphism
    /// followed by the weighted monomial map).
    pub fn substitution(&self) -> &PolyMap {
        &self.substitution
    }

    /// Index of the exceptional variable in the chart ring.
    pub fn exceptional(&self) -> usize {
        self.exceptional
    }

    /// Name of the exceptional variable.
    pub fn exceptional_name(&self) -> &str {
        self.ring.var_name(self.exceptional)
    }

    /// Flag level (0-based) this chart inverts.
    pub fn level(&self) -> usize {
        self.level
    }

    /// Order of the cyclic group acting on the chart.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Action weight of each chart variable, reduced modulo the group
    /// order: the generator scales variable `v` by `zeta^{weight(v)}`.
    pub fn action_weights(&self) -> &[u64] {
        &self.action_weights
    }

    /// Common action weight of a semi-invariant polynomial, or `None` when
    /// the terms transform with different characters.
    pub fn action_weight_of(&self, p: &Poly) -> Option<u64> {
        if self.group_order <= 1 {
            return Some(0);
        }
        let mut seen: Option<u64> = None;
        for (m, _) in p.terms() {
            let mut acc: u64 = 0;
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let contribution = (self.action_weights[v] * e as u64) % self.group_order;
                    acc = (acc + contribution) % self.group_order;
                }
            }
            match seen {
                None => seen = Some(acc),
                Some(w) if w == acc => {}
                Some(_) => return None,
            }
        }
        // The zero polynomial is invariant.
        Some(seen.unwrap_or(0))
    }
}

/// A weighted blowup: the reduced center it inverts, the root factor, and
/// one chart per flag level.
#[derive(Clone, Debug)]
pub struct Blowup {
    center: ReducedCenter,
    root_factor: u64,
    charts: Vec<Chart>,
}

impl Blowup {
    pub fn center(&self) -> &ReducedCenter {
        &self.center
    }

    pub fn root_factor(&self) -> u64 {
        self.root_factor
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart(&self, i: usize) -> &Chart {
        &self.charts[i]
    }

    /// Cyclic group orders, one per chart.
    pub fn group_orders(&self) -> Vec<u64> {
        self.charts.iter().map(|c| c.group_order).collect()
    }

    /// The exceptional multiplicity `a_1 * w_1 * c = ell * c` used by the
    /// weak transform.  Always an integer because `a_1` and `w_1` are.
    pub fn weak_multiplicity(&self) -> Result<u32> {
        let m = self.center.ell() * Rat::from_integer(BigInt::from(self.root_factor));
        if !m.is_integer() {
            return Err(Error::Unsupported(format!(
                "exceptional multiplicity {m} is not an integer"
            )));
        }
        m.to_integer().to_u32().ok_or_else(|| {
            Error::Budget("exceptional multiplicity exceeds the exponent range".into())
        })
    }
}

/// Build the charts of the weighted blowup along `center`, with every
/// weight scaled by `root_factor` (1 for the plain blowup).
pub fn blowup_charts(center: &ReducedCenter, root_factor: u64) -> Result<Blowup> {
    if root_factor == 0 {
        return Err(Error::Input("root factor must be at least 1".into()));
    }
    let flag = center.flag();
    let parent = flag.ring().clone();
    let pivots = flag.pivots();
    let k = center.weights().len();
    let scaled: Vec<u64> = center
        .weights()
        .iter()
        .map(|w| {
            w.checked_mul(root_factor)
                .ok_or_else(|| Error::Budget("blowup weight overflows".into()))
        })
        .collect::<Result<Vec<u64>>>()?;
    let exponents: Vec<u32> = scaled
        .iter()
        .map(|w| {
            w.to_u32()
                .ok_or_else(|| Error::Budget("blowup weight exceeds the exponent range".into()))
        })
        .collect::<Result<Vec<u32>>>()?;

    let mut used_letters: BTreeSet<String> = BTreeSet::new();
    let mut charts = Vec::with_capacity(k);
    for i in 0..k {
        let mut names: Vec<String> = parent.vars().to_vec();
        let mut taken: BTreeSet<String> = names
            .iter()
            .enumerate()
            .filter(|(p, _)| !pivots.contains(p))
            .map(|(_, n)| n.clone())
            .collect();
        for (j, &pj) in pivots.iter().enumerate() {
            if j == i {
                continue;
            }
            let base = parent.var_name(pj);
            let mut name = if scaled[j] >= 2 {
                format!("{base}'")
            } else {
                format!("{base}{}", i + 1)
            };
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            names[pj] = name;
        }
        let exc_name = if scaled[i] == 1 {
            let mut name = parent.var_name(pivots[i]).to_string();
            while taken.contains(&name) {
                name.push('\'');
            }
            name
        } else {
            let mut found = None;
            for round in 0.. {
                let mut candidate =
                    EXCEPTIONAL_LETTERS[round % EXCEPTIONAL_LETTERS.len()].to_string();
                for _ in 0..round / EXCEPTIONAL_LETTERS.len() {
                    candidate.push('\'');
                }
                if !used_letters.contains(&candidate) && !taken.contains(&candidate) {
                    found = Some(candidate);
                    break;
                }
            }
            let name = found.expect("letter supply is unbounded");
            used_letters.insert(name.clone());
            name
        };
        names[pivots[i]] = exc_name;

        let chart_ring = Ring::with_truncation(names, parent.truncation())?;
        let mut images = Vec::with_capacity(parent.nvars());
        for p in 0..parent.nvars() {
            let image = match pivots.iter().position(|&q| q == p) {
                Some(j) if j == i => Poly::var(&chart_ring, pivots[i]).pow(exponents[i] as u64)?,
                Some(j) => Poly::var(&chart_ring, pivots[i])
                    .pow(exponents[j] as u64)?
                    .mul(&Poly::var(&chart_ring, p))?,
                None => Poly::var(&chart_ring, p),
            };
            images.push(image);
        }
        let weighted = PolyMap::new(parent.clone(), chart_ring.clone(), images)?;
        let substitution = flag.to_flag().then(&weighted)?;

        let order = scaled[i];
        let mut action = vec![0u64; parent.nvars()];
        action[pivots[i]] = 1 % order;
        for (j, &pj) in pivots.iter().enumerate() {
            if j != i {
                action[pj] = (order - scaled[j] % order) % order;
            }
        }
        charts.push(Chart {
            parent: parent.clone(),
            ring: chart_ring,
            substitution,
            exceptional: pivots[i],
            level: i,
            group_order: order,
            action_weights: action,
        });
    }
    Ok(Blowup {
        center: center.clone(),
        root_factor,
        charts,
    })
}

/// Pull an ideal back through the chart substitution.
pub fn total_transform(ideal: &Ideal, chart: &Chart) -> Result<Ideal> {
    same_ring(ideal.ring(), &chart.parent)?;
    ideal.map(&chart.substitution)
}

/// Total transform with every generator divided by `u^m` exactly.
///
/// For an admissible center and `m` equal to the exceptional multiplicity
/// the division always succeeds; a divisibility failure therefore reports
/// the center as inadmissible rather than returning a partial answer.
pub fn weak_transform(ideal: &Ideal, chart: &Chart, m: u32) -> Result<Ideal> {
    let total = total_transform(ideal, chart)?;
    let gens = total
        .gens()
        .iter()
        .map(|g| {
            g.divide_by_var_power(chart.exceptional, m).map_err(|_| {
                Error::Unsupported(format!(
                    "weak transform: a generator is not divisible by {}^{}; \
                     the center is not admissible for this ideal",
                    chart.exceptional_name(),
                    m
                ))
            })
        })
        .collect::<Result<Vec<Poly>>>()?;
    Ideal::new(chart.ring(), gens)
}

/// Total transform with each generator divided by the largest power of the
/// exceptional variable it admits.  Exact for principal ideals; otherwise a
/// generator-wise approximation of the proper transform.
pub fn proper_transform(ideal: &Ideal, chart: &Chart) -> Result<Ideal> {
    let total = total_transform(ideal, chart)?;
    let gens = total
        .gens()
        .iter()
        .map(|g| {
            let m = g.var_order(chart.exceptional);
            g.divide_by_var_power(chart.exceptional, m)
        })
        .collect::<Result<Vec<Poly>>>()?;
    Ideal::new(chart.ring(), gens)
}

/// Verify that the charts at root factor `c` are exactly the charts at
/// root factor 1 followed by extracting a `c`-th root of the exceptional
/// variable (`u = t^c`), variable by variable.
pub fn root_stack_check(center: &ReducedCenter, c: u64) -> Result<bool> {
    let base = blowup_charts(center, 1)?;
    let rooted = blowup_charts(center, c)?;
    for (plain, root) in base.charts().iter().zip(rooted.charts()) {
        let bridge_images = (0..plain.ring().nvars())
            .map(|p| {
                if p == plain.exceptional {
                    Poly::var(root.ring(), p).pow(c)
                } else {
                    Ok(Poly::var(root.ring(), p))
                }
            })
            .collect::<Result<Vec<Poly>>>()?;
        let bridge = PolyMap::new(plain.ring().clone(), root.ring().clone(), bridge_images)?;
        let factored = plain.substitution.then(&bridge)?;
        if factored.images() != root.substitution.images() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{center_from_invariant, invariant_at, Center};
    use num::Zero;

    fn origin(n: usize) -> Vec<Rat> {
        vec![Rat::zero(); n]
    }

    fn reduced_center_of(ideal: &Ideal) -> ReducedCenter {
        let (inv, flag) = invariant_at(ideal, &origin(ideal.ring().nvars())).unwrap();
        center_from_invariant(&inv, &flag)
            .unwrap()
            .reduce()
            .unwrap()
    }

    fn parse_ideal(ring: &Arc<Ring>, gens: &[&str]) -> Ideal {
        let gens = gens
            .iter()
            .map(|g| Poly::parse(ring, g).unwrap())
            .collect();
        Ideal::new(ring, gens).unwrap()
    }

    #[test]
    fn weighted_chart_on_the_first_level() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let ideal = parse_ideal(&r, &["x^5 + x^3*y^3 + y^8"]);
        let bl = blowup_charts(&reduced_center_of(&ideal), 1).unwrap();
        assert_eq!(bl.charts().len(), 2);
        assert_eq!(bl.weak_multiplicity().unwrap(), 15);

        let ch = bl.chart(0);
        assert_eq!(ch.ring().vars(), &["u".to_string(), "y'".to_string()]);
        assert_eq!(ch.exceptional(), 0);
        assert_eq!(ch.group_order(), 3);
        assert_eq!(ch.action_weights(), &[1, 1]);
        assert_eq!(
            ch.substitution().images(),
            &[
                Poly::parse(ch.ring(), "u^3").unwrap(),
                Poly::parse(ch.ring(), "u^2*y'").unwrap()
            ]
        );

        let total = total_transform(&ideal, ch).unwrap();
        assert_eq!(
            total.gens()[0],
            Poly::parse(ch.ring(), "u^15*(1 + y'^3 + u*y'^8)").unwrap()
        );
        let weak = weak_transform(&ideal, ch, 15).unwrap();
        assert_eq!(
            weak.gens()[0],
            Poly::parse(ch.ring(), "1 + y'^3 + u*y'^8").unwrap()
        );
        assert_eq!(ch.action_weight_of(&weak.gens()[0]), Some(0));
    }

    #[test]
    fn weighted_chart_on_the_second_level() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let ideal = parse_ideal(&r, &["x^5 + x^3*y^3 + y^9"]);
        let bl = blowup_charts(&reduced_center_of(&ideal), 1).unwrap();
        let ch = bl.chart(1);
        assert_eq!(ch.ring().vars(), &["x'".to_string(), "v".to_string()]);
        assert_eq!(ch.exceptional(), 1);
        assert_eq!(ch.group_order(), 2);
        assert_eq!(ch.action_weights(), &[1, 1]);

        let weak = weak_transform(&ideal, ch, 15).unwrap();
        let expected = Poly::parse(ch.ring(), "x'^5 + x'^3 + v^3").unwrap();
        assert_eq!(weak.gens()[0], expected);
        let proper = proper_transform(&ideal, ch).unwrap();
        assert_eq!(proper.gens()[0], expected);
    }

    #[test]
    fn coprime_weights_give_the_advertised_actions() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let ideal = parse_ideal(&r, &["x^5 + x^3*y^3 + y^7"]);
        let rc = reduced_center_of(&ideal);
        assert_eq!(rc.weights(), &[7, 5]);
        let bl = blowup_charts(&rc, 1).unwrap();
        assert_eq!(bl.weak_multiplicity().unwrap(), 35);

        let ch0 = bl.chart(0);
        assert_eq!(ch0.group_order(), 7);
        // u gets weight 1, y' gets -5 mod 7 = 2.
        assert_eq!(ch0.action_weights(), &[1, 2]);
        let weak0 = weak_transform(&ideal, ch0, 35).unwrap();
        assert_eq!(
            weak0.gens()[0],
            Poly::parse(ch0.ring(), "1 + u*y'^3 + y'^7").unwrap()
        );
        assert_eq!(ch0.action_weight_of(&weak0.gens()[0]), Some(0));

        let ch1 = bl.chart(1);
        assert_eq!(ch1.group_order(), 5);
        // x' gets -7 mod 5 = 3, v gets 1.
        assert_eq!(ch1.action_weights(), &[3, 1]);
        let weak1 = weak_transform(&ideal, ch1, 35).unwrap();
        assert_eq!(
            weak1.gens()[0],
            Poly::parse(ch1.ring(), "x'^5 + x'^3*v + 1").unwrap()
        );
    }

    #[test]
    fn weight_one_charts_keep_the_pivot_name_and_suffix_the_rest() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let ideal = parse_ideal(&r, &["x^2*y*z + y*z^4"]);
        let rc = reduced_center_of(&ideal);
        assert_eq!(rc.weights(), &[1, 1, 1]);
        let bl = blowup_charts(&rc, 1).unwrap();
        assert_eq!(bl.weak_multiplicity().unwrap(), 4);
        assert_eq!(bl.group_orders(), vec![1, 1, 1]);

        let ch2 = bl.chart(2);
        assert_eq!(
            ch2.ring().vars(),
            &["x3".to_string(), "y3".to_string(), "z".to_string()]
        );
        assert_eq!(ch2.exceptional(), 2);
        let weak = weak_transform(&ideal, ch2, 4).unwrap();
        assert_eq!(
            weak.gens()[0],
            Poly::parse(ch2.ring(), "y3*(x3^2 + z)").unwrap()
        );

        let ch0 = bl.chart(0);
        assert_eq!(
            ch0.ring().vars(),
            &["x".to_string(), "y1".to_string(), "z1".to_string()]
        );
        let weak0 = weak_transform(&ideal, ch0, 4).unwrap();
        assert_eq!(
            weak0.gens()[0],
            Poly::parse(ch0.ring(), "y1*z1*(1 + x*z1^3)").unwrap()
        );
    }

    #[test]
    fn four_variable_center_last_chart() {
        let r = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let ideal = parse_ideal(&r, &["x^2 - y1*y2*y3"]);
        let rc = reduced_center_of(&ideal);
        assert_eq!(rc.weights(), &[3, 2, 2, 2]);
        let bl = blowup_charts(&rc, 1).unwrap();
        assert_eq!(bl.weak_multiplicity().unwrap(), 6);

        // Fresh letters go u, v, w to the first three charts; the last
        // chart's exceptional variable is t.
        let ch = bl.chart(3);
        assert_eq!(
            ch.ring().vars(),
            &[
                "x'".to_string(),
                "y1'".to_string(),
                "y2'".to_string(),
                "t".to_string()
            ]
        );
        let e = Poly::var(ch.ring(), ch.exceptional());
        let total = total_transform(&ideal, ch).unwrap();
        let cofactor = Poly::parse(ch.ring(), "x'^2 - y1'*y2'").unwrap();
        assert_eq!(total.gens()[0], e.pow(6).unwrap().mul(&cofactor).unwrap());
        let weak = weak_transform(&ideal, ch, 6).unwrap();
        assert_eq!(weak.gens()[0], cofactor);
        let proper = proper_transform(&ideal, ch).unwrap();
        assert_eq!(proper.gens()[0], cofactor);
        assert_eq!(ch.group_order(), 2);
        assert_eq!(ch.action_weights(), &[1, 0, 0, 1]);
    }

    #[test]
    fn ordinary_blowup_reproduces_the_same_equation() {
        // With all weights 1 the blowup is the classical one, and the
        // proper transform of x^2 - y1*y2*y3 in the last chart is the same
        // equation again (rename the chart variables back positionally).
        let r = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let ideal = parse_ideal(&r, &["x^2 - y1*y2*y3"]);
        let center = Center::from_params(
            &r,
            (0..4)
                .map(|i| (Poly::var(&r, i), Rat::from_integer(BigInt::from(1))))
                .collect(),
        )
        .unwrap()
        .reduce()
        .unwrap();
        assert_eq!(center.weights(), &[1, 1, 1, 1]);
        let bl = blowup_charts(&center, 1).unwrap();
        let ch = bl.chart(3);
        assert_eq!(ch.group_order(), 1);
        let proper = proper_transform(&ideal, ch).unwrap();
        let back = PolyMap::renaming(ch.ring(), &r).unwrap();
        assert_eq!(proper.map(&back).unwrap().gens(), ideal.gens());
    }

    #[test]
    fn weak_times_exceptional_power_recovers_total() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let ideal = parse_ideal(&r, &["x^5 + x^3*y^3 + y^8"]);
        let bl = blowup_charts(&reduced_center_of(&ideal), 1).unwrap();
        for ch in bl.charts() {
            let total = total_transform(&ideal, ch).unwrap();
            let weak = weak_transform(&ideal, ch, 15).unwrap();
            let upow = Poly::var(ch.ring(), ch.exceptional()).pow(15).unwrap();
            for (w, t) in weak.gens().iter().zip(total.gens()) {
                assert_eq!(w.mul(&upow).unwrap(), *t);
            }
        }
    }

    #[test]
    fn proper_transform_keeps_a_generator_off_the_exceptional_divisor() {
        let r = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let ideal = parse_ideal(&r, &["x^2 - y1*y2*y3"]);
        let bl = blowup_charts(&reduced_center_of(&ideal), 1).unwrap();
        for ch in bl.charts() {
            let proper = proper_transform(&ideal, ch).unwrap();
            assert!(proper
                .gens()
                .iter()
                .any(|g| g.var_order(ch.exceptional()) == 0));
        }
    }

    #[test]
    fn root_factor_scales_weights_and_factors_through_the_cover() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let ideal = parse_ideal(&r, &["x^5 + x^3*y^3 + y^8"]);
        let rc = reduced_center_of(&ideal);
        let bl2 = blowup_charts(&rc, 2).unwrap();
        let ch = bl2.chart(0);
        assert_eq!(ch.group_order(), 6);
        assert_eq!(ch.action_weights(), &[1, 2]);
        assert_eq!(
            ch.substitution().images(),
            &[
                Poly::parse(ch.ring(), "u^6").unwrap(),
                Poly::parse(ch.ring(), "u^4*y'").unwrap()
            ]
        );
        assert_eq!(bl2.weak_multiplicity().unwrap(), 30);

        assert!(root_stack_check(&rc, 2).unwrap());
        assert!(root_stack_check(&rc, 3).unwrap());

        let seven_five = parse_ideal(&r, &["x^5 + x^3*y^3 + y^7"]);
        assert!(root_stack_check(&reduced_center_of(&seven_five), 2).unwrap());
        assert!(root_stack_check(&reduced_center_of(&seven_five), 3).unwrap());
    }

    #[test]
    fn inadmissible_division_is_reported() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let ideal = parse_ideal(&r, &["x^2"]);
        // A center demanding order 3 along x is not admissible for (x^2).
        let center = Center::from_params(
            &r,
            vec![(Poly::var(&r, 0), Rat::from_integer(BigInt::from(3)))],
        )
        .unwrap()
        .reduce()
        .unwrap();
        let bl = blowup_charts(&center, 1).unwrap();
        let err = weak_transform(&ideal, bl.chart(0), 3).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn transforms_commute_with_the_flag_automorphism() {
        // Center (x + y^2)^2, y^4: the flag straightens x + y^2 first; the
        // substitution must therefore send x to u^2 - u^4*y'^2-style images
        // rather than touching x alone.
        let r = Ring::new(&["x", "y"]).unwrap();
        let ideal = parse_ideal(&r, &["(x + y^2)^2 + y^5"]);
        let rc = reduced_center_of(&ideal);
        assert_eq!(rc.weights(), &[5, 2]);
        let bl = blowup_charts(&rc, 1).unwrap();
        let ch = bl.chart(0);
        // x + y^2 pulls back to exactly u^5 (the flag coordinate).
        let straightened = ch
            .substitution()
            .apply(&Poly::parse(&r, "x + y^2").unwrap())
            .unwrap();
        assert_eq!(straightened, Poly::parse(ch.ring(), "u^5").unwrap());
        let weak = weak_transform(&ideal, ch, 10).unwrap();
        assert_eq!(ch.action_weight_of(&weak.gens()[0]), Some(0));
    }
}
