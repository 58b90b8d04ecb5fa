//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomial
//! order, so iteration, printing, and pivot selection are deterministic.
//! In jet rings every operation truncates above the ring bound and each
//! polynomial tracks `prec`, the degree up to which its stored terms are a
//! faithful representative; order queries on a truncated zero report a lower
//! bound instead of lying.

use super::{rat_to_string, same_ring, Rat, Ring};
use crate::error::{Error, Result};
use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Pairwise product count above which multiplication refuses to run.
const MUL_BUDGET: u128 = 30_000_000;

/// Exponent vector; `Ord` is graded lexicographic (total degree first, then
/// lexicographic in ring variable order).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Mono {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn deg(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Mono) -> Result<Mono> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            e.push(
                a.checked_add(*b)
                    .ok_or_else(|| Error::Budget("monomial exponent overflow".into()))?,
            );
        }
        Ok(Mono(e))
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div_into(&self, other: &Mono) -> Option<Mono> {
        if self.divides(other) {
            Some(Mono(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::cmp::Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.deg()
            .cmp(&other.deg())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Order of vanishing at the origin.
///
/// `AtLeast` appears only in jet mode, when the truncation hides whether
/// higher terms exist; callers that need a definite value surface
/// [`Error::TruncationTooSmall`] through [`OrdVal::exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdVal {
    Exact(u64),
    AtLeast(u64),
    Infinity,
}

impl OrdVal {
    pub fn exact(self) -> Result<u64> {
        match self {
            OrdVal::Exact(d) => Ok(d),
            OrdVal::AtLeast(d) => Err(Error::TruncationTooSmall {
                have: d as i64 - 1,
                need: d as i64,
            }),
            OrdVal::Infinity => Err(Error::Unsupported(
                "order of the zero polynomial is infinite".into(),
            )),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, OrdVal::Infinity)
    }
}

/// Sparse polynomial over an [`Arc<Ring>`].
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Mono, Rat>,
    /// `None`: stored terms are the true element. `Some(p)`: faithful only
    /// through total degree `p`; anything above was lost to truncation.
    prec: Option<i64>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms && self.prec == other.prec
    }
}

impl Eq for Poly {}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(p), Some(q)) => Some(p.min(q)),
    }
}

impl Poly {
    fn finish(ring: Arc<Ring>, mut terms: BTreeMap<Mono, Rat>, mut prec: Option<i64>) -> Poly {
        terms.retain(|_, c| !c.is_zero());
        if let Some(n) = ring.truncation() {
            let before = terms.len();
            terms.retain(|m, _| m.deg() <= n as u64);
            if terms.len() != before {
                prec = min_prec(prec, Some(n as i64));
            }
        }
        if let Some(p) = prec {
            // Terms above the faithful degree are noise; drop them.
            terms.retain(|m, _| (m.deg() as i64) <= p);
        }
        Poly { ring, terms, prec }
    }

    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
            prec: None,
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(ring.nvars()), c);
        }
        Poly::finish(ring.clone(), terms, None)
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, Rat::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(ring.nvars(), i), Rat::one());
        Poly::finish(ring.clone(), terms, None)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Mono, c: Rat) -> Poly {
        assert_eq!(m.0.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly::finish(ring.clone(), terms, None)
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Mono, Rat)>) -> Poly {
        let mut map: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars());
            let entry = map.entry(m).or_insert_with(Rat::zero);
            *entry += c;
        }
        Poly::finish(ring.clone(), map, None)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Definitely zero as a true element (not merely zero up to truncation).
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter().rev()
    }

    /// Leading term in graded-lex order.
    pub fn lead(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::one(self.ring.nvars()))
    }

    /// Degree-one coefficients as `(variable index, coefficient)` pairs.
    pub fn linear_part(&self) -> Vec<(usize, Rat)> {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for i in 0..n {
            let c = self.coeff(&Mono::var(n, i));
            if !c.is_zero() {
                out.push((i, c));
            }
        }
        out
    }

    /// Maximal stored total degree.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.deg()).max()
    }

    /// Order of vanishing at the origin.
    pub fn ord(&self) -> OrdVal {
        match self.terms.keys().map(|m| m.deg()).min() {
            Some(d) => OrdVal::Exact(d),
            None => match self.prec {
                None => OrdVal::Infinity,
                Some(p) => OrdVal::AtLeast((p + 1).max(0) as u64),
            },
        }
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly::finish(self.ring.clone(), terms, self.prec)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        same_ring(&self.ring, &other.ring)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        Ok(Poly::finish(
            self.ring.clone(),
            terms,
            min_prec(self.prec, other.prec),
        ))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            let mut z = Poly::zero(&self.ring);
            z.prec = self.prec;
            return z;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, k)| (m.clone(), k * c))
            .collect();
        Poly::finish(self.ring.clone(), terms, self.prec)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        same_ring(&self.ring, &other.ring)?;
        let work = (self.terms.len() as u128) * (other.terms.len() as u128);
        if work > MUL_BUDGET {
            return Err(Error::Budget(format!(
                "product of {} x {} terms",
                self.terms.len(),
                other.terms.len()
            )));
        }
        // In a jet ring the product is faithful only through min(prec)
        // of the factors (orders at the origin could sharpen this; the
        // conservative bound is enough for every caller here).
        let mut prec = min_prec(self.prec, other.prec);
        let cap: Option<u64> = match (self.ring.truncation(), prec) {
            (Some(n), Some(p)) => Some((n as i64).min(p).max(-1) as u64),
            (Some(n), None) => Some(n as u64),
            (None, Some(p)) => Some(p.max(-1) as u64),
            (None, None) => None,
        };
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        let mut dropped = false;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(cap) = cap {
                    if ma.deg() + mb.deg() > cap {
                        dropped = true;
                        continue;
                    }
                }
                let m = ma.checked_mul(mb)?;
                let entry = terms.entry(m).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        if dropped {
            prec = min_prec(prec, cap.map(|c| c as i64));
        }
        Ok(Poly::finish(self.ring.clone(), terms, prec))
    }

    pub fn pow(&self, e: u64) -> Result<Poly> {
        if e == 0 {
            return Ok(Poly::one(&self.ring));
        }
        let mut base = self.clone();
        let mut acc: Option<Poly> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(acc.unwrap())
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            let entry = terms.entry(m2).or_insert_with(Rat::zero);
            *entry += c * Rat::from_integer(BigInt::from(e));
        }
        // Differentiation loses one degree of faithfulness in jet mode.
        let prec = self.prec.map(|p| p - 1);
        Poly::finish(self.ring.clone(), terms, prec)
    }

    /// Substitute `0` for variable `i` (terms using it vanish).
    pub fn set_var_zero(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] == 0)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly::finish(self.ring.clone(), terms, self.prec)
    }

    /// Move to the ring with variable `i` removed; requires that no stored
    /// term uses it (typically preceded by [`Poly::set_var_zero`]).
    pub fn project_removing(&self, i: usize, target: &Arc<Ring>) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] != 0 {
                return Err(Error::Input(format!(
                    "cannot project: term still uses `{}`",
                    self.ring.var_name(i)
                )));
            }
            let mut e = m.0.clone();
            e.remove(i);
            terms.insert(Mono(e), c.clone());
        }
        Ok(Poly::finish(target.clone(), terms, self.prec))
    }

    /// Re-interpret in `target`, matching variables by name. Fails if a used
    /// variable is missing from the target.
    pub fn into_ring_by_names(&self, target: &Arc<Ring>) -> Result<Poly> {
        let mut idx = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            idx.push(target.var_index(v));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (j, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match idx[j] {
                    Some(t) => e[t] = exp,
                    None => {
                        return Err(Error::UnknownVar(self.ring.var_name(j).to_string()));
                    }
                }
            }
            terms.insert(Mono(e), c.clone());
        }
        Ok(Poly::finish(target.clone(), terms, self.prec))
    }

    /// Cast into a ring with identical variables but different truncation.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Poly> {
        if self.ring.vars() != target.vars() {
            return Err(Error::RingMismatch);
        }
        if !target.is_jet() && !self.is_exact() {
            return Err(Error::ExactOnly(
                "cannot promote a truncated polynomial to an exact ring".into(),
            ));
        }
        Ok(Poly::finish(
            target.clone(),
            self.terms.clone(),
            self.prec,
        ))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Input("point length does not match ring".into()));
        }
        if !self.is_exact() {
            return Err(Error::ExactOnly("evaluation of a truncated polynomial".into()));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `p(x + point)`: move `point` to the origin. Exact rings only, since a
    /// translation mixes all degrees.
    pub fn translate(&self, point: &[Rat]) -> Result<Poly> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Input("point length does not match ring".into()));
        }
        if self.ring.is_jet() || !self.is_exact() {
            return Err(Error::ExactOnly("translation in a jet ring".into()));
        }
        let mut cur = self.clone();
        for (i, a) in point.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            cur = cur.shift_var(i, a)?;
        }
        Ok(cur)
    }

    /// Single-variable shift `x_i -> x_i + a` via binomial expansion.
    fn shift_var(&self, i: usize, a: &Rat) -> Result<Poly> {
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            // (x+a)^e = sum_k C(e,k) a^(e-k) x^k
            let mut binom = BigInt::one();
            let mut apow = Rat::one();
            // k from e down to 0; C(e,k) built incrementally.
            for k in (0..=e).rev() {
                let mut m2 = m.clone();
                m2.0[i] = k;
                let coeff = c * Rat::from_integer(binom.clone()) * &apow;
                let entry = terms.entry(m2).or_insert_with(Rat::zero);
                *entry += coeff;
                if k > 0 {
                    // C(e,k-1) = C(e,k) * k / (e-k+1)
                    binom = binom * BigInt::from(k) / BigInt::from(e - k + 1);
                    apow *= a;
                }
            }
        }
        Ok(Poly::finish(self.ring.clone(), terms, self.prec))
    }

    /// Largest `m` with `x_i^m` dividing the polynomial (0 for the zero
    /// polynomial).
    pub fn var_order(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)
    }

    /// Exact division by `x_i^m`; every term must be divisible.
    pub fn divide_by_var_power(&self, i: usize, m: u32) -> Result<Poly> {
        let mut terms = BTreeMap::new();
        for (mono, c) in &self.terms {
            if mono.0[i] < m {
                return Err(Error::Input(format!(
                    "not divisible by {}^{}",
                    self.ring.var_name(i),
                    m
                )));
            }
            let mut e = mono.clone();
            e.0[i] -= m;
            terms.insert(e, c.clone());
        }
        let prec = self.prec.map(|p| p - m as i64);
        Ok(Poly::finish(self.ring.clone(), terms, prec))
    }

    /// Scale so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    /// Parse-friendly constructor used throughout the tests.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Poly> {
        super::parser::parse_poly(ring, text)
    }
}

/// Rebuild `p` with its faithful degree capped at `prec` (never raised).
pub(crate) fn with_prec(p: Poly, prec: Option<i64>) -> Poly {
    let combined = min_prec(p.prec, prec);
    Poly::finish(p.ring.clone(), p.terms, combined)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(rat_to_string(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.var_name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.var_name(i), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
