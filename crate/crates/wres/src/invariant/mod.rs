//! The local resolution invariant, maximal-contact flags, and weighted
//! centers.
//!
//! For an ideal `I` at a point `p` (moved to the origin), the invariant is a
//! finite sequence of rationals `(a_1, ..., a_k)` computed recursively:
//! `b_1 = ord(I)` is the first entry; a hypersurface of maximal contact
//! `V(x_1)` is chosen with `x_1` in `D^{<= b_1 - 1} I`; the next-level ideal
//!
//! ```text
//!   I_2 = sum_{i < b_1} (D^{<= i} I |_{V(x_1)})^{b_1!/(b_1 - i)}
//! ```
//!
//! is processed the same way, and its entries are divided by `(b_1 - 1)!`.
//! The recursion stops when a level vanishes.  Entries are non-decreasing,
//! each `a_i` has bounded denominator by construction, and the sequence
//! does not depend on the choices made along the way.
//!
//! Sequences compare lexicographically with the convention that ending
//! earlier is *larger* (a shorter sequence truncates an infinite tail), so
//! the empty invariant of the zero ideal is the largest of all.
//!
//! The exponents of the invariant turn the flag into a weighted center
//! `(x_1^{a_1}, ..., x_k^{a_k})`, which [`Center::reduce`] rewrites with
//! integer weights `(w_1, ..., w_k)` and a common degree `ell` so that
//! `a_i = ell / w_i`.  Admissibility of a center for `I` means every
//! generator of `I`, rewritten in flag coordinates, has monomial valuation
//! at least 1, where the valuation of a monomial charges `1/a_i` per power
//! of `x_i` and 0 to the remaining variables.

mod engine;

use crate::algebra::{rat_to_string, same_ring, Mono, Poly, PolyMap, Rat, Ring};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, ZeroStatus};
use engine::LevelParam;
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub(crate) use engine::elementary_map;

/// The resolution invariant: a non-decreasing sequence of positive
/// rationals, empty exactly for the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    entries: Vec<Rat>,
}

impl Invariant {
    /// Build from entries, validating positivity and monotonicity.
    pub fn from_entries(entries: Vec<Rat>) -> Result<Invariant> {
        for pair in entries.windows(2) {
            if pair[1] < pair[0] {
                return Err(Error::Unsupported(format!(
                    "invariant entries must be non-decreasing; got {} after {}",
                    rat_to_string(&pair[1]),
                    rat_to_string(&pair[0])
                )));
            }
        }
        if entries.iter().any(|e| !e.is_positive()) {
            return Err(Error::Unsupported(
                "invariant entries must be positive".into(),
            ));
        }
        Ok(Invariant { entries })
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Empty exactly for the zero ideal; compares above everything else.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entrywise multiple (used by the `I^k` scaling law).
    pub fn scaled(&self, k: &Rat) -> Invariant {
        Invariant {
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }
}

impl PartialOrd for Invariant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Invariant {
    /// Lexicographic, with the convention that when one sequence is a
    /// prefix of the other, the *shorter* one is larger: ending at level
    /// `k` means the level-`k+1` ideal vanished, which dominates any
    /// finite continuation.
    fn cmp(&self, other: &Self) -> Ordering {
        compare_entries(&self.entries, &other.entries)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rat_to_string(e))?;
        }
        write!(f, ")")
    }
}

/// Three-way comparison of invariants (see [`Invariant::cmp`]).
pub fn compare(a: &Invariant, b: &Invariant) -> Ordering {
    a.cmp(b)
}

/// The raw comparison rule on entry sequences: lexicographic, and when one
/// sequence is a proper prefix of the other the shorter one is larger
/// (ending at level `k` means the level-`k+1` ideal vanished, which
/// dominates any finite continuation).  Exposed on slices so hypothetical
/// sequences — not necessarily monotone, hence not [`Invariant`]s — can be
/// ranked by the same rule.
pub fn compare_entries(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    b.len().cmp(&a.len())
}

/// A flag of maximal-contact elements at the origin: parameters
/// `z_1, ..., z_k` with independent linear parts, each eliminating one
/// ambient variable (its pivot).  `to_flag` rewrites a polynomial into
/// coordinates where `z_i` *is* its pivot variable; `from_flag` undoes it.
#[derive(Clone, Debug)]
pub struct ContactFlag {
    ring: Arc<Ring>,
    params: Vec<Poly>,
    pivots: Vec<usize>,
    to_flag: PolyMap,
    from_flag: PolyMap,
}

impl ContactFlag {
    /// The empty flag (for the zero ideal).
    pub fn identity(ring: &Arc<Ring>) -> ContactFlag {
        ContactFlag {
            ring: ring.clone(),
            params: Vec::new(),
            pivots: Vec::new(),
            to_flag: PolyMap::identity(ring),
            from_flag: PolyMap::identity(ring),
        }
    }

    /// Build a flag from explicit parameters, choosing for each the
    /// earliest ambient variable with a nonzero linear coefficient that is
    /// not already claimed.
    pub fn from_params(ring: &Arc<Ring>, params: Vec<Poly>) -> Result<ContactFlag> {
        let mut pairs = Vec::with_capacity(params.len());
        let mut used = vec![false; ring.nvars()];
        for p in &params {
            same_ring(p.ring(), ring)?;
            let lin = p.linear_part();
            let pivot = lin
                .iter()
                .map(|(i, _)| *i)
                .find(|i| !used[*i])
                .ok_or(Error::SingularLinearPart)?;
            used[pivot] = true;
            pairs.push((pivot, p.clone()));
        }
        Self::assemble(ring, pairs)
    }

    fn from_levels(ring: &Arc<Ring>, levels: Vec<LevelParam>) -> Result<ContactFlag> {
        let mut pairs = Vec::with_capacity(levels.len());
        for level in levels {
            // Each level's parameter involves neither its own pivot's
            // predecessors nor any eliminated variable, so it lifts to the
            // ambient ring verbatim.
            let param = level.param.into_ring_by_names(ring)?;
            let pivot = ring.var_index(&level.pivot_name).ok_or_else(|| {
                Error::Unsupported(format!(
                    "pivot `{}` is not an ambient variable",
                    level.pivot_name
                ))
            })?;
            pairs.push((pivot, param));
        }
        Self::assemble(ring, pairs)
    }

    fn assemble(ring: &Arc<Ring>, pairs: Vec<(usize, Poly)>) -> Result<ContactFlag> {
        let mut to_flag = PolyMap::identity(ring);
        let mut from_flag = PolyMap::identity(ring);
        let mut params = Vec::with_capacity(pairs.len());
        let mut pivots = Vec::with_capacity(pairs.len());
        for (pivot, param) in pairs {
            let tau = elementary_map(ring, pivot, &param)?;
            if param != Poly::var(ring, pivot) {
                let sigma = tau.invert()?;
                to_flag = to_flag.then(&sigma)?;
                from_flag = tau.then(&from_flag)?;
            }
            params.push(param);
            pivots.push(pivot);
        }
        Ok(ContactFlag {
            ring: ring.clone(),
            params,
            pivots,
            to_flag,
            from_flag,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Maximal-contact parameters in ambient coordinates, outermost first.
    pub fn params(&self) -> &[Poly] {
        &self.params
    }

    /// The ambient variable each parameter eliminates.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Rewrite into flag coordinates (each parameter becomes its pivot
    /// variable).
    pub fn to_flag(&self) -> &PolyMap {
        &self.to_flag
    }

    /// Rewrite back into ambient coordinates.
    pub fn from_flag(&self) -> &PolyMap {
        &self.from_flag
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// False when the coordinate change had to be computed in a jet ring
    /// and is only faithful up to the truncation degree.
    pub fn is_exact(&self) -> bool {
        !self.to_flag.is_inexact() && !self.from_flag.is_inexact()
    }

    /// First `k` levels of the flag.
    pub fn truncated(&self, k: usize) -> Result<ContactFlag> {
        if k > self.len() {
            return Err(Error::Input(format!(
                "flag has {} levels, cannot keep {k}",
                self.len()
            )));
        }
        let pairs = self
            .pivots
            .iter()
            .cloned()
            .zip(self.params.iter().cloned())
            .take(k)
            .collect();
        Self::assemble(&self.ring, pairs)
    }
}

/// The monomial valuation attached to a weighted center: a monomial pays
/// `1/a_i` per power of the `i`-th flag coordinate and nothing for the
/// remaining variables.
#[derive(Clone, Debug)]
pub struct MonomialValuation {
    pivots: Vec<usize>,
    exponents: Vec<Rat>,
}

impl MonomialValuation {
    pub fn new(pivots: Vec<usize>, exponents: Vec<Rat>) -> Result<MonomialValuation> {
        if pivots.len() != exponents.len() {
            return Err(Error::Input(
                "one exponent per flag coordinate is required".into(),
            ));
        }
        if exponents.iter().any(|a| !a.is_positive()) {
            return Err(Error::Input("center exponents must be positive".into()));
        }
        Ok(MonomialValuation { pivots, exponents })
    }

    /// Valuation of a single monomial (in flag coordinates).
    pub fn value_mono(&self, m: &Mono) -> Rat {
        let mut acc = Rat::zero();
        for (p, a) in self.pivots.iter().zip(&self.exponents) {
            let e = m.0[*p];
            if e > 0 {
                acc += Rat::from_integer(BigInt::from(e)) / a;
            }
        }
        acc
    }

    /// Minimum over the visible support; `None` for a polynomial with no
    /// stored terms.
    pub fn value_poly(&self, p: &Poly) -> Option<Rat> {
        p.terms().map(|(m, _)| self.value_mono(m)).min()
    }
}

/// A weighted center `(z_1^{a_1}, ..., z_k^{a_k})` given by a contact flag
/// and the (possibly fractional, non-decreasing) invariant exponents.
#[derive(Clone, Debug)]
pub struct Center {
    flag: ContactFlag,
    exponents: Vec<Rat>,
}

impl Center {
    pub fn new(flag: ContactFlag, exponents: Vec<Rat>) -> Result<Center> {
        if flag.len() != exponents.len() {
            return Err(Error::Input(format!(
                "flag has {} parameters but {} exponents were given",
                flag.len(),
                exponents.len()
            )));
        }
        if exponents.iter().any(|a| !a.is_positive()) {
            return Err(Error::Input("center exponents must be positive".into()));
        }
        Ok(Center { flag, exponents })
    }

    /// Convenience constructor from `(parameter, exponent)` pairs.
    pub fn from_params(ring: &Arc<Ring>, parts: Vec<(Poly, Rat)>) -> Result<Center> {
        let (params, exponents): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
        Center::new(ContactFlag::from_params(ring, params)?, exponents)
    }

    pub fn flag(&self) -> &ContactFlag {
        &self.flag
    }

    pub fn exponents(&self) -> &[Rat] {
        &self.exponents
    }

    pub fn valuation(&self) -> MonomialValuation {
        MonomialValuation {
            pivots: self.flag.pivots.clone(),
            exponents: self.exponents.clone(),
        }
    }

    /// Integer-weight form: weights `(w_1, ..., w_k)` and degree `ell`
    /// with `a_i = ell / w_i`, weights coprime as a tuple.
    pub fn reduce(&self) -> Result<ReducedCenter> {
        if self.exponents.is_empty() {
            return Err(Error::Input("cannot reduce an empty center".into()));
        }
        let lcm_num = self
            .exponents
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.numer()));
        let scaled: Vec<BigInt> = self
            .exponents
            .iter()
            .map(|a| &lcm_num * a.denom() / a.numer())
            .collect();
        let d = scaled.iter().fold(BigInt::zero(), |acc, w| acc.gcd(w));
        let weights = scaled
            .iter()
            .map(|w| {
                (w / &d).to_u64().ok_or_else(|| {
                    Error::Budget("center weights exceed the machine-integer range".into())
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        let ell = Rat::new(lcm_num, d);
        Ok(ReducedCenter {
            flag: self.flag.clone(),
            weights,
            ell,
        })
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, a)) in self.flag.params().iter().zip(&self.exponents).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_powered(f, p, a)?;
        }
        write!(f, ")")
    }
}

/// A center in integer-weight form: parameters from the flag, weights
/// `w_i`, and degree `ell`, related to the exponents by `a_i = ell / w_i`.
#[derive(Clone, Debug)]
pub struct ReducedCenter {
    flag: ContactFlag,
    weights: Vec<u64>,
    ell: Rat,
}

impl ReducedCenter {
    pub fn flag(&self) -> &ContactFlag {
        &self.flag
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Common degree: `ell = a_i * w_i` for every level.
    pub fn ell(&self) -> &Rat {
        &self.ell
    }

    /// The fractional exponents this reduced form represents.
    pub fn exponents(&self) -> Vec<Rat> {
        self.weights
            .iter()
            .map(|w| &self.ell / Rat::from_integer(BigInt::from(*w)))
            .collect()
    }

    /// Back to a [`Center`] with the same flag.
    pub fn center(&self) -> Result<Center> {
        Center::new(self.flag.clone(), self.exponents())
    }
}

impl fmt::Display for ReducedCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, w)) in self.flag.params().iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_powered(f, p, &Rat::from_integer(BigInt::from(*w)))?;
        }
        write!(f, ")")
    }
}

fn write_powered(f: &mut fmt::Formatter<'_>, base: &Poly, exp: &Rat) -> fmt::Result {
    if base.num_terms() > 1 {
        write!(f, "({base})")?;
    } else {
        write!(f, "{base}")?;
    }
    if exp == &Rat::one() {
        return Ok(());
    }
    if exp.denom() == &BigInt::one() {
        write!(f, "^{}", exp.numer())
    } else {
        write!(f, "^({})", rat_to_string(exp))
    }
}

/// The invariant of `ideal` at `point`, together with the maximal-contact
/// flag that realizes it (in coordinates translated so that `point` is the
/// origin).
///
/// Errors: [`Error::UnitIdeal`] if the ideal does not vanish at the point;
/// [`Error::TruncationTooSmall`] when a jet ring hides the answer;
/// [`Error::ExactOnly`] when a coordinate change would need infinitely many
/// terms (retry in a jet ring); [`Error::Budget`] when no exact evaluation
/// path fits the size limits.
pub fn invariant_at(ideal: &Ideal, point: &[Rat]) -> Result<(Invariant, ContactFlag)> {
    let ring = ideal.ring().clone();
    if point.len() != ring.nvars() {
        return Err(Error::Input(format!(
            "point has {} coordinates, ring has {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    let local = if point.iter().all(|c| c.is_zero()) {
        ideal.clone()
    } else {
        ideal.translate(point)?
    };
    match local.zero_status() {
        ZeroStatus::Zero => {
            return Ok((Invariant { entries: Vec::new() }, ContactFlag::identity(&ring)))
        }
        ZeroStatus::ZeroUpTo(p) => {
            return Err(Error::TruncationTooSmall {
                have: p,
                need: p.saturating_add(1),
            })
        }
        ZeroStatus::NonZero => {}
    }
    let (entries, levels) = engine::invariant_entries(&local)?;
    debug_assert_eq!(entries.len(), levels.len());
    let inv = Invariant::from_entries(entries)?;
    let flag = ContactFlag::from_levels(&ring, levels)?;
    Ok((inv, flag))
}

/// The center attached to an invariant: the flag parameters raised to the
/// invariant entries.
pub fn center_from_invariant(inv: &Invariant, flag: &ContactFlag) -> Result<Center> {
    if inv.is_empty() {
        return Err(Error::Input(
            "the zero ideal has no center to blow up".into(),
        ));
    }
    Center::new(flag.truncated(inv.len())?, inv.entries.to_vec())
}

/// A maximal-contact element for `ideal` at order `a`: an element of
/// `D^{<= a-1} ideal` with nonzero linear part, canonicalized so that its
/// pivot variable has coefficient 1.  For the unit ideal every coordinate
/// qualifies and the first ring variable is returned.
pub fn maximal_contact(ideal: &Ideal, a: u64) -> Result<Poly> {
    if a == 0 {
        return Err(Error::Input(
            "maximal contact requires a positive order".into(),
        ));
    }
    let ring = ideal.ring();
    if ideal.is_zero_ideal() {
        return Err(Error::Unsupported(
            "the zero ideal admits no maximal-contact element".into(),
        ));
    }
    let derived = ideal.derivative_power((a - 1) as u32)?;
    if derived.has_unit_generator() {
        return Ok(Poly::var(ring, 0));
    }
    let (_, param) = engine::select_contact(&derived)?;
    Ok(param)
}

/// The order-`a` coefficient ideal
/// `sum_{i=0}^{a-1} (D^{<= i} I)^{a!/(a-i)}`, materialized.  Factorials
/// grow fast, so this is only for small `a`; larger levels flow through
/// [`invariant_at`], which never expands them.
pub fn coefficient_ideal(ideal: &Ideal, a: u64) -> Result<Ideal> {
    if a == 0 {
        return Err(Error::Input(
            "the coefficient ideal needs a positive order".into(),
        ));
    }
    if a > 12 {
        return Err(Error::Budget(format!(
            "coefficient ideal at order {a} would need exponents up to {a}!"
        )));
    }
    let mut fact: u64 = 1;
    for k in 2..=a {
        fact *= k;
    }
    let tower = ideal.derivative_tower((a - 1) as u32)?;
    let mut acc = Ideal::zero(ideal.ring());
    for (i, level) in tower.iter().enumerate().take(a as usize) {
        acc = acc.sum(&level.power(fact / (a - i as u64))?)?;
    }
    Ok(acc)
}

/// Order of the coefficient ideal after restriction to the vanishing locus
/// of the listed variables, computed without materializing it:
/// `ord(C(I, a)|_H) = a! * min_i ord(D^{<= i} I |_H) / (a - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientOrder {
    Finite(Rat),
    Infinite,
}

impl fmt::Display for CoefficientOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientOrder::Finite(r) => write!(f, "{}", rat_to_string(r)),
            CoefficientOrder::Infinite => write!(f, "infinity"),
        }
    }
}

/// See [`CoefficientOrder`]; `kill` lists the variable indices set to zero.
pub fn restricted_coefficient_order(
    ideal: &Ideal,
    a: u64,
    kill: &[usize],
) -> Result<CoefficientOrder> {
    if a == 0 {
        return Err(Error::Input(
            "the coefficient ideal needs a positive order".into(),
        ));
    }
    if a > 100_000 {
        return Err(Error::Budget(format!(
            "derivative ladder of height {a} exceeds the budget"
        )));
    }
    let tower = ideal.derivative_tower((a - 1) as u32)?;
    let mut afact = BigInt::one();
    for k in 2..=a {
        afact *= BigInt::from(k);
    }
    let mut best: Option<Rat> = None;
    for (i, level) in tower.iter().enumerate().take(a as usize) {
        let strip = level.restrict(kill)?;
        match strip.ord_origin() {
            crate::algebra::OrdVal::Infinity => continue,
            ord => {
                let d = ord.exact()?;
                let cand = Rat::new(&afact * BigInt::from(d), BigInt::from(a - i as u64));
                if best.as_ref().map_or(true, |m| cand < *m) {
                    best = Some(cand);
                }
            }
        }
    }
    Ok(match best {
        Some(r) => CoefficientOrder::Finite(r),
        None => CoefficientOrder::Infinite,
    })
}

/// Is `center` admissible for `ideal`: in flag coordinates, does every
/// visible monomial of every generator have valuation at least 1?
///
/// A `false` is always conclusive (visible terms are faithful).  A `true`
/// is conclusive when the rewritten generators are exact; with truncated
/// generators it is certified only when the flag uses every ambient
/// variable and the truncation degree `N` satisfies `N + 1 >= max a_i`
/// (hidden monomials then have valuation `>= (N+1)/max a_i >= 1`).
/// Otherwise the call errs with [`Error::Indeterminate`] rather than
/// guessing.
pub fn is_admissible(center: &Center, ideal: &Ideal) -> Result<bool> {
    same_ring(ideal.ring(), center.flag.ring())?;
    let rewritten = ideal.map(center.flag.to_flag())?;
    let val = center.valuation();
    let one = Rat::one();
    let mut min_prec: Option<i64> = None;
    for g in rewritten.gens() {
        if let Some(p) = g.prec() {
            min_prec = Some(min_prec.map_or(p, |m: i64| m.min(p)));
        }
        for (m, _) in g.terms() {
            if val.value_mono(m) < one {
                return Ok(false);
            }
        }
    }
    match min_prec {
        None => Ok(true),
        Some(p) => {
            let full_flag = center.flag.len() == ideal.ring().nvars();
            let max_a = self::max_exponent(&center.exponents);
            if full_flag && Rat::from_integer(BigInt::from(p + 1)) >= max_a {
                Ok(true)
            } else {
                Err(Error::Indeterminate(
                    "admissibility cannot be certified at this truncation; raise the jet degree"
                        .into(),
                ))
            }
        }
    }
}

fn max_exponent(exponents: &[Rat]) -> Rat {
    exponents
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(Rat::one)
}

enum Tri {
    True,
    False,
    Unknown,
}

/// Does the valuation of `a` dominate `b`:
/// `v_a(q_j^{b_j}) >= 1` for every parameter `q_j` of `b`?
fn dominates(a: &Center, b: &Center) -> Result<Tri> {
    let val = a.valuation();
    let mut unknown = false;
    for (q, beta) in b.flag.params().iter().zip(&b.exponents) {
        let rewritten = a.flag.to_flag().apply(q)?;
        if let Some(v) = val.value_poly(&rewritten) {
            if v * beta < Rat::one() {
                return Ok(Tri::False);
            }
        }
        if let Some(p) = rewritten.prec() {
            // Hidden terms have degree > p; they are covered only when the
            // flag charges every variable enough.
            let full_flag = a.flag.len() == a.flag.ring().nvars();
            let bound = Rat::from_integer(BigInt::from(p + 1)) / max_exponent(&a.exponents);
            if !(full_flag && bound * beta >= Rat::one()) {
                unknown = true;
            }
        }
    }
    Ok(if unknown { Tri::Unknown } else { Tri::True })
}

/// Do two centers on the same ring define the same weighted blowup?  True
/// exactly when each center's valuation is bounded below by the other's:
/// every parameter power of one has valuation at least 1 under the other.
pub fn center_equality(a: &Center, b: &Center) -> Result<bool> {
    same_ring(a.flag.ring(), b.flag.ring())?;
    let ab = dominates(a, b)?;
    if matches!(ab, Tri::False) {
        return Ok(false);
    }
    let ba = dominates(b, a)?;
    if matches!(ba, Tri::False) {
        return Ok(false);
    }
    match (ab, ba) {
        (Tri::True, Tri::True) => Ok(true),
        _ => Err(Error::Indeterminate(
            "center comparison cannot be certified at this truncation".into(),
        )),
    }
}
