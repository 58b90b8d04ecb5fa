//! Ring homomorphisms given by variable images, including exact or
//! truncated inversion of automorphisms.

use super::{same_ring, Poly, Rat, Ring};
use crate::error::{Error, Result};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A map `source -> target` sending each source variable to a polynomial in
/// the target ring; applied to polynomials by composition.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<Poly>,
}

impl PolyMap {
    pub fn new(source: Arc<Ring>, target: Arc<Ring>, images: Vec<Poly>) -> Result<PolyMap> {
        if images.len() != source.nvars() {
            return Err(Error::Input(
                "one image per source variable is required".into(),
            ));
        }
        for im in &images {
            same_ring(im.ring(), &target)?;
        }
        Ok(PolyMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(ring: &Arc<Ring>) -> PolyMap {
        let images = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
        PolyMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    /// Identity-by-position map between rings that differ only in names
    /// and/or truncation.
    pub fn renaming(source: &Arc<Ring>, target: &Arc<Ring>) -> Result<PolyMap> {
        if source.nvars() != target.nvars() {
            return Err(Error::RingMismatch);
        }
        let images = (0..target.nvars()).map(|i| Poly::var(target, i)).collect();
        PolyMap::new(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn is_inexact(&self) -> bool {
        self.images.iter().any(|p| !p.is_exact())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, p)| *p == Poly::var(&self.target, i))
    }

    /// Apply to a polynomial in the source ring.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        same_ring(p.ring(), &self.source)?;
        if !p.is_exact() {
            // A truncated class only maps well along filtration-preserving
            // maps: every used image must vanish at the origin.
            for (m, _) in p.terms() {
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 && !self.images[i].constant_term().is_zero() {
                        return Err(Error::ExactOnly(
                            "substituting a constant-shift map into a truncated class".into(),
                        ));
                    }
                }
            }
        }
        let mut pow_cache: Vec<BTreeMap<u32, Poly>> = vec![BTreeMap::new(); self.images.len()];
        let mut acc = Poly::zero(&self.target);
        for (m, c) in p.terms() {
            let mut t = Poly::constant(&self.target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !pow_cache[i].contains_key(&e) {
                    let v = self.images[i].pow(e as u64)?;
                    pow_cache[i].insert(e, v);
                }
                t = t.mul(&pow_cache[i][&e])?;
            }
            acc = acc.add(&t)?;
        }
        if let Some(p_prec) = p.prec() {
            acc = clamp_prec(acc, p_prec);
        }
        Ok(acc)
    }

    /// Composition `self` then `next` (as ring maps: apply `self`'s images
    /// through `next`).
    pub fn then(&self, next: &PolyMap) -> Result<PolyMap> {
        same_ring(&self.target, &next.source)?;
        let images = self
            .images
            .iter()
            .map(|im| next.apply(im))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(self.source.clone(), next.target.clone(), images)
    }

    /// Invert an automorphism (same variable list on both sides, zero
    /// constant terms, invertible linear part).
    ///
    /// Triangular maps invert exactly; in a jet ring the inverse is correct
    /// modulo the truncation. In an exact ring a genuinely non-triangular
    /// map reports that jet mode is required instead of looping forever.
    pub fn invert(&self) -> Result<PolyMap> {
        if self.source != self.target {
            return Err(Error::Unsupported(
                "inverse of a map between different rings".into(),
            ));
        }
        let ring = &self.source;
        let n = ring.nvars();
        for im in &self.images {
            if !im.constant_term().is_zero() {
                return Err(Error::Unsupported(
                    "inverse of a map with constant terms".into(),
                ));
            }
        }
        // Linear part and its inverse.
        let mut a = vec![vec![Rat::zero(); n]; n];
        for (i, im) in self.images.iter().enumerate() {
            for (j, c) in im.linear_part() {
                a[i][j] = c;
            }
        }
        let b = invert_matrix(&a).ok_or(Error::SingularLinearPart)?;

        // An elementary map `x_p -> x_p + g` has a polynomial inverse iff
        // `g` is linear in `x_p` with a constant coefficient there: the
        // inverse solves `h + g(x, h) = x_p`, and any higher `x_p`-degree
        // (or a non-constant linear coefficient) forces `h` into a genuine
        // power series. Detecting that up front avoids Newton iterations
        // whose degrees explode before the cap triggers.
        if !ring.is_jet() {
            let mut diffs = self.images.iter().enumerate().filter_map(|(i, im)| {
                let g = im.sub(&Poly::var(ring, i)).ok()?;
                (!g.is_zero()).then_some((i, g))
            });
            let first = diffs.next();
            let second = diffs.next();
            if let (Some((p, g)), None) = (first, second) {
                let series_inverse = g.terms().any(|(mono, _)| {
                    let ep = mono.0[p];
                    ep >= 2 || (ep == 1 && mono.0.iter().sum::<u32>() > 1)
                });
                if series_inverse {
                    return Err(Error::ExactOnly(
                        "non-triangular automorphism inversion; use a jet ring".into(),
                    ));
                }
            }
        }

        // Initial guess: inverse of the linear part.
        let mut g: Vec<Poly> = (0..n)
            .map(|i| {
                let mut acc = Poly::zero(ring);
                for (j, item) in b[i].iter().enumerate() {
                    acc = acc.add(&Poly::var(ring, j).scale(item)).unwrap();
                }
                acc
            })
            .collect();

        let max_iter = match ring.truncation() {
            Some(t) => (t as usize) + 2,
            None => n + 2,
        };
        // A polynomial automorphism inverse has degree at most d^(n-1)
        // (Bass-Connell-Wright); an iterate beyond that bound can only
        // belong to a genuine power series, so stop before the degrees
        // explode.
        let degree_cap: u64 = if ring.is_jet() {
            u64::MAX
        } else {
            let d = self
                .images
                .iter()
                .filter_map(|im| im.degree())
                .max()
                .unwrap_or(1)
                .max(1);
            (0..n.saturating_sub(1) as u32)
                .try_fold(1u64, |acc, _| acc.checked_mul(d))
                .unwrap_or(u64::MAX)
        };
        for _ in 0..max_iter {
            if g.iter().any(|gj| gj.degree().unwrap_or(0) > degree_cap) {
                return Err(Error::ExactOnly(
                    "non-triangular automorphism inversion; use a jet ring".into(),
                ));
            }
            let gmap = PolyMap::new(ring.clone(), ring.clone(), g.clone())?;
            let errs: Vec<Poly> = (0..n)
                .map(|i| {
                    let composed = gmap.apply(&self.images[i])?;
                    composed.sub(&Poly::var(ring, i))
                })
                .collect::<Result<Vec<_>>>()?;
            if errs.iter().all(|e| e.is_zero()) {
                return Ok(gmap);
            }
            for (j, gj) in g.iter_mut().enumerate() {
                let mut delta = Poly::zero(ring);
                for (k, err) in errs.iter().enumerate() {
                    if !b[j][k].is_zero() {
                        delta = delta.add(&err.scale(&b[j][k]))?;
                    }
                }
                *gj = gj.sub(&delta)?;
            }
        }
        if ring.is_jet() {
            // Check the final iterate once more; a fixpoint modulo the
            // truncation is a valid (inexact) inverse.
            let gmap = PolyMap::new(ring.clone(), ring.clone(), g.clone())?;
            let ok = (0..n).try_fold(true, |acc, i| -> Result<bool> {
                let composed = gmap.apply(&self.images[i])?;
                Ok(acc && composed.sub(&Poly::var(ring, i))?.is_zero())
            })?;
            if ok {
                return Ok(gmap);
            }
            Err(Error::Budget("automorphism inversion did not converge".into()))
        } else {
            Err(Error::ExactOnly(
                "non-triangular automorphism inversion; use a jet ring".into(),
            ))
        }
    }
}

/// Cap a polynomial's faithful degree (used after substituting a truncated
/// class through a filtration-preserving map).
fn clamp_prec(p: Poly, cap: i64) -> Poly {
    super::poly::with_prec(p, Some(cap))
}

/// Gauss-Jordan inversion over the rationals.
fn invert_matrix(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let t = &m[col][j] * &f;
                m[r][j] -= t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, im)| format!("{v} = {im}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}
