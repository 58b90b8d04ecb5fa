//! Resolution driver.
//!
//! Given an ideal, the driver locates rational points where the invariant is
//! maximal, extracts the unique admissible center at the worst point, blows
//! it up with weighted stack charts, transforms the ideal into every chart,
//! and recurses until each leaf is finished: smooth for an embedded
//! hypersurface, trivial for principalization.
//!
//! Exactness policy: analysis stays in the exact polynomial ring whenever
//! possible.  A point whose contact flag needs a power-series coordinate
//! change falls back to jet rings of order 8, 16, 32, 64; invariant entries
//! computed through a jet ring are still exact rationals.  A node living in a
//! jet ring analyses the germ at its chart origin only, and its notes record
//! that reduced scope.
//!
//! Honesty policy: the driver never claims more than it can certify.  The
//! `certified` flag on a node is true only when the locus of maximal order
//! was proven zero-dimensional with all points rational; otherwise candidate
//! points come from hints and deterministic probes and a note says so.
//! Leaves that cannot be finished within the configured budget are reported
//! with [`Status::BudgetExceeded`], never silently dropped.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::algebra::{Mono, OrdVal, Poly, PolyMap, Rat, Ring};
use crate::blowup::{blowup_charts, proper_transform, weak_transform, Blowup, Chart};
use crate::error::{Error, Result};
use crate::groebner::{self, Order};
use crate::ideal::{Ideal, ZeroStatus};
use crate::invariant::{
    center_from_invariant, invariant_at, is_admissible, Invariant, ReducedCenter,
};

/// Environment variable holding an optional probe-shuffle seed.
///
/// The candidate list is fully sorted before use, so the seed never changes
/// any result; it only permutes the evaluation order of probe points.
pub const SEED_ENV: &str = "WRES_SEED";

/// Jet orders tried, in order, when an exact computation needs a series
/// coordinate change.
const JET_LADDER: [u32; 4] = [8, 16, 32, 64];

/// Most probe points taken from a positive-dimensional locus scan.
const MAX_PROBES: usize = 48;

/// What a finished run means.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Iterate weak transforms until every chart ideal is the unit ideal.
    Principalize,
    /// Iterate proper transforms of a single hypersurface equation until
    /// every chart is smooth.
    EmbedHypersurface,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "principalize" => Ok(Mode::Principalize),
            "embed" | "embed-hypersurface" => Ok(Mode::EmbedHypersurface),
            other => Err(Error::Input(format!(
                "unknown mode `{other}` (expected `principalize` or `embed`)"
            ))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Principalize => write!(f, "principalize"),
            Mode::EmbedHypersurface => write!(f, "embed"),
        }
    }
}

/// Driver configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub mode: Mode,
    /// Pin all analysis to one jet order instead of the exact-first ladder.
    pub truncation: Option<u32>,
    /// Maximum tree depth (number of successive blowups along any branch).
    pub max_steps: u32,
    /// Extra candidate points to test at every node.
    pub hints: Vec<Vec<Rat>>,
    /// Root the exceptional divisor to this multiple of the natural weights.
    pub root_factor: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            mode: Mode::EmbedHypersurface,
            truncation: None,
            max_steps: 64,
            hints: Vec::new(),
            root_factor: 1,
        }
    }
}

impl Config {
    pub fn with_mode(mode: Mode) -> Config {
        Config {
            mode,
            ..Config::default()
        }
    }
}

/// Per-node outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Interior node (already blown up) or an honest dead end.
    Active,
    Smooth,
    Principalized,
    BudgetExceeded,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Active => write!(f, "active"),
            Status::Smooth => write!(f, "smooth"),
            Status::Principalized => write!(f, "principalized"),
            Status::BudgetExceeded => write!(f, "budget-exceeded"),
        }
    }
}

/// Edge of the resolution tree: the chart that produced a child.
#[derive(Clone, Debug)]
pub struct ChildEdge {
    chart: Chart,
    node: ResolutionNode,
}

impl ChildEdge {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn node(&self) -> &ResolutionNode {
        &self.node
    }
}

/// One node of the resolution tree.
#[derive(Clone, Debug)]
pub struct ResolutionNode {
    ideal: Ideal,
    depth: u32,
    points: Vec<(Vec<Rat>, Invariant)>,
    certified: bool,
    center: Option<ReducedCenter>,
    center_point: Option<Vec<Rat>>,
    weak_multiplicity: Option<u32>,
    children: Vec<ChildEdge>,
    status: Status,
    notes: Vec<String>,
}

impl ResolutionNode {
    fn leaf(
        ideal: Ideal,
        depth: u32,
        status: Status,
        points: Vec<(Vec<Rat>, Invariant)>,
        notes: Vec<String>,
        certified: bool,
    ) -> ResolutionNode {
        ResolutionNode {
            ideal,
            depth,
            points,
            certified,
            center: None,
            center_point: None,
            weak_multiplicity: None,
            children: Vec::new(),
            status,
            notes,
        }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Candidate points with their invariants, worst first.
    pub fn points(&self) -> &[(Vec<Rat>, Invariant)] {
        &self.points
    }

    /// Invariant at the worst located point, if any point vanishes.
    pub fn maxinv(&self) -> Option<&Invariant> {
        self.points.first().map(|(_, inv)| inv)
    }

    /// True when the maximal locus was proven zero-dimensional with every
    /// point rational, so the reported maximum is a certificate.
    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn center(&self) -> Option<&ReducedCenter> {
        self.center.as_ref()
    }

    /// Point (in this node's coordinates) that was moved to the origin
    /// before the center was extracted.
    pub fn center_point(&self) -> Option<&[Rat]> {
        self.center_point.as_deref()
    }

    /// Exponent of the exceptional variable divided out of the weak
    /// transform at this node.
    pub fn weak_multiplicity(&self) -> Option<u32> {
        self.weak_multiplicity
    }

    pub fn children(&self) -> &[ChildEdge] {
        &self.children
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// All leaves below (or at) this node, depth-first.
    pub fn leaves(&self) -> Vec<&ResolutionNode> {
        let mut out = Vec::new();
        fn walk<'a>(node: &'a ResolutionNode, out: &mut Vec<&'a ResolutionNode>) {
            if node.children.is_empty() {
                out.push(node);
            } else {
                for edge in &node.children {
                    walk(&edge.node, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Result of a single blowup step, for callers that drive one stage at a
/// time instead of a whole tree.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    /// The ideal as analysed (possibly recast into a jet ring).
    pub ideal: Ideal,
    /// The worst candidate point, in the coordinates of `ideal`.
    pub point: Vec<Rat>,
    pub invariant: Invariant,
    pub certified: bool,
    pub blowup: Blowup,
    pub weak_multiplicity: u32,
    /// One transform per chart: weak in principalization mode, proper in
    /// embedded mode.
    pub transforms: Vec<Ideal>,
    pub notes: Vec<String>,
}

struct Scan {
    points: Vec<(Vec<Rat>, Invariant)>,
    certified: bool,
    notes: Vec<String>,
}

struct StepData {
    invariant: Invariant,
    blowup: Blowup,
    weak_multiplicity: u32,
    transforms: Vec<Ideal>,
    notes: Vec<String>,
}

fn validate(cfg: &Config, ideal: &Ideal) -> Result<()> {
    if cfg.max_steps < 1 {
        return Err(Error::Input("max-steps must be at least 1".into()));
    }
    if cfg.root_factor < 1 {
        return Err(Error::Input("root factor must be at least 1".into()));
    }
    let n = ideal.ring().nvars();
    for h in &cfg.hints {
        if h.len() != n {
            return Err(Error::Input(format!(
                "hint point has {} coordinates, ring has {n} variables",
                h.len()
            )));
        }
    }
    Ok(())
}

fn jet_ladder(cfg: &Config) -> Vec<u32> {
    match cfg.truncation {
        Some(n) => vec![n],
        None => JET_LADDER.to_vec(),
    }
}

fn origin(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

fn is_origin(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn point_str(p: &[Rat]) -> String {
    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

/// Recast an exact ideal into the jet ring of the given order.
fn to_jet(ideal: &Ideal, order: u32) -> Result<Ideal> {
    ideal.to_ring(&ideal.ring().jet(order))
}

/// Replace truncated generators of the form `monomial * unit germ` by their
/// exact monomial part.
///
/// A class whose visible terms are all divisible by `x^alpha`, with a
/// cofactor whose constant term is nonzero, generates the same germ ideal at
/// the origin as the exact monomial `x^alpha`.  The exact monomial carries
/// no precision debt, so downstream analysis does not stall on truncation.
/// Exact generators are left verbatim.  Each replacement is recorded in
/// `notes`.
fn normalize_germ_gens(ideal: &Ideal, notes: &mut Vec<String>) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    if !ring.is_jet() {
        return Ok(ideal.clone());
    }
    let n = ring.nvars();
    let mut changed = false;
    let mut gens = Vec::new();
    for g in ideal.gens() {
        if g.is_exact() || g.is_zero() {
            gens.push(g.clone());
            continue;
        }
        let mut alpha = vec![u32::MAX; n];
        for (m, _) in g.terms() {
            for i in 0..n {
                alpha[i] = alpha[i].min(m.0[i]);
            }
        }
        if alpha.iter().any(|a| *a == u32::MAX) {
            gens.push(g.clone());
            continue;
        }
        let cofactor_constant = g
            .terms()
            .find(|(m, _)| m.0 == alpha)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero);
        if cofactor_constant.is_zero() {
            gens.push(g.clone());
            continue;
        }
        let mono = Poly::monomial(&ring, Mono(alpha), Rat::one());
        notes.push(format!(
            "unit-cofactor germ normalization: generator {g} replaced by {mono}"
        ));
        gens.push(mono);
        changed = true;
    }
    if changed {
        Ideal::new(&ring, gens)
    } else {
        Ok(ideal.clone())
    }
}

/// Unit test for an ideal, with germ semantics in jet rings: a jet class
/// whose constant term is nonzero is a unit in the local ring at the origin.
fn ideal_is_unit(ideal: &Ideal) -> Result<bool> {
    if ideal.ring().is_jet() {
        return Ok(ideal
            .gens()
            .iter()
            .any(|g| !g.constant_term().is_zero()));
    }
    if ideal.has_unit_generator() {
        return Ok(true);
    }
    match ideal.zero_status() {
        ZeroStatus::Zero => Ok(false),
        _ => groebner::is_trivial(ideal.gens()),
    }
}

/// Smoothness certificate for a hypersurface.
///
/// In an exact ring this is global: the equation together with all of its
/// partial derivatives generates the unit ideal exactly when the vanishing
/// locus (over the algebraic closure) has no singular point.  In a jet ring
/// only the germ at the origin is visible: a unit germ (empty locus) or a
/// germ of order one is smooth.
pub fn is_smooth_hypersurface(ideal: &Ideal) -> Result<bool> {
    let gens = ideal.gens();
    if gens.len() != 1 {
        return Err(Error::Unsupported(
            "smoothness certificate requires a single defining equation".into(),
        ));
    }
    let f = &gens[0];
    if ideal.ring().is_jet() || !f.is_exact() {
        return match f.ord() {
            OrdVal::Exact(0) | OrdVal::Exact(1) | OrdVal::Infinity => Ok(true),
            OrdVal::Exact(_) => Ok(false),
            OrdVal::AtLeast(_) => Err(Error::Indeterminate(
                "the class vanishes to its full precision; its order is unknown".into(),
            )),
        };
    }
    if f.is_zero() {
        return Ok(true);
    }
    let mut jac = vec![f.clone()];
    for i in 0..ideal.ring().nvars() {
        jac.push(f.derivative(i));
    }
    groebner::is_trivial(&jac)
}

enum StratumScan {
    /// Zero-dimensional locus: all its points, and whether every point of
    /// the locus is rational (true makes the enumeration a certificate).
    Finite(Vec<Vec<Rat>>, bool),
    /// Positive-dimensional locus: deterministic probe points lying on it.
    Positive(Vec<Vec<Rat>>),
}

/// Points of maximal vanishing order, from the common zeros of the
/// derivatives below the origin order.
fn stratum_points(stratum: &Ideal) -> Result<StratumScan> {
    if stratum.has_unit_generator() {
        return Ok(StratumScan::Finite(Vec::new(), true));
    }
    let gb = groebner::buchberger(stratum.gens(), Order::Lex)?;
    if gb.is_trivial_basis() {
        return Ok(StratumScan::Finite(Vec::new(), true));
    }
    if groebner::is_zero_dimensional(&gb) {
        let (pts, all_rational) = groebner::rational_points_zero_dim(stratum.gens())?;
        return Ok(StratumScan::Finite(pts, all_rational));
    }
    // Positive-dimensional: probe coordinate subspaces.  A probe sets one
    // subset of variables to zero and the rest to 1 (or -1), and is kept
    // only if every generator of the stratum actually vanishes there.
    let n = stratum.ring().nvars();
    if n > 12 {
        return Ok(StratumScan::Positive(Vec::new()));
    }
    let mono_supports: Vec<BTreeSet<usize>> = gb
        .gens()
        .iter()
        .filter(|g| g.is_monomial())
        .filter_map(|g| {
            g.terms().next().map(|(m, _)| {
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, _)| i)
                    .collect()
            })
        })
        .collect();
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut probes = Vec::new();
    'mask: for mask in masks {
        if probes.len() >= MAX_PROBES {
            break;
        }
        let zero_set: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        for sup in &mono_supports {
            if !sup.iter().any(|v| zero_set.contains(v)) {
                continue 'mask;
            }
        }
        for free in [Rat::one(), -Rat::one()] {
            let p: Vec<Rat> = (0..n)
                .map(|i| {
                    if zero_set.contains(&i) {
                        Rat::zero()
                    } else {
                        free.clone()
                    }
                })
                .collect();
            let on_stratum = stratum
                .gens()
                .iter()
                .all(|g| g.eval(&p).map(|v| v.is_zero()).unwrap_or(false));
            if on_stratum {
                probes.push(p);
            }
        }
    }
    Ok(StratumScan::Positive(probes))
}

/// Invariant of `working` at `p`, with a per-point jet fallback when the
/// contact flag needs a series coordinate change.  `Ok(None)` means the
/// ideal does not vanish at `p` (or the point had to be skipped; a note
/// records that).
fn point_invariant(
    working: &Ideal,
    p: &[Rat],
    ladder: &[u32],
    notes: &mut Vec<String>,
) -> Result<Option<Invariant>> {
    match invariant_at(working, p) {
        Ok((inv, _)) => Ok(Some(inv)),
        Err(Error::UnitIdeal) => Ok(None),
        Err(err @ (Error::ExactOnly(_) | Error::TruncationTooSmall { .. })) => {
            if working.ring().is_jet() {
                if !is_origin(p) {
                    notes.push(format!(
                        "candidate {} skipped: outside the faithful neighbourhood of a jet chart",
                        point_str(p)
                    ));
                    return Ok(None);
                }
                return Err(err);
            }
            let local = if is_origin(p) {
                working.clone()
            } else {
                working.translate(p)?
            };
            for &order in ladder {
                let jideal = to_jet(&local, order)?;
                match invariant_at(&jideal, &origin(jideal.ring().nvars())) {
                    Ok((inv, _)) => return Ok(Some(inv)),
                    Err(Error::UnitIdeal) => return Ok(None),
                    Err(
                        Error::ExactOnly(_)
                        | Error::TruncationTooSmall { .. }
                        | Error::Budget(_),
                    ) => continue,
                    Err(e) => return Err(e),
                }
            }
            notes.push(format!(
                "invariant at {} not computable within the jet budget; candidate skipped",
                point_str(p)
            ));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Collect candidate points, evaluate the invariant at each, and sort them
/// worst-first (ties: origin first, then coordinate-lexicographic).
fn candidate_scan(working: &Ideal, cfg: &Config) -> Result<Scan> {
    let ring = working.ring();
    let n = ring.nvars();
    let mut notes: Vec<String> = Vec::new();
    let mut certified = false;
    let mut raw: Vec<Vec<Rat>> = vec![origin(n)];
    raw.extend(cfg.hints.iter().cloned());

    let exact_ring = !ring.is_jet() && working.gens().iter().all(|g| g.is_exact());
    if exact_ring {
        if let OrdVal::Exact(b0) = working.ord_origin() {
            if b0 >= 1 {
                match u32::try_from(b0)
                    .map_err(|_| Error::Budget("vanishing order exceeds u32".into()))
                    .and_then(|b| working.derivative_power(b - 1))
                    .and_then(|stratum| stratum_points(&stratum))
                {
                    Ok(StratumScan::Finite(pts, all_rational)) => {
                        raw.extend(pts);
                        certified = all_rational;
                        if !all_rational {
                            notes.push(
                                "maxinv locus not certified: the maximal-order locus has \
                                 irrational points"
                                    .into(),
                            );
                        }
                    }
                    Ok(StratumScan::Positive(probes)) => {
                        raw.extend(probes);
                        notes.push(
                            "maxinv locus not certified: the maximal-order locus is \
                             positive-dimensional; deterministic probes used"
                                .into(),
                        );
                    }
                    Err(e) => {
                        notes.push(format!(
                            "maxinv locus not certified: stratum analysis unavailable ({e})"
                        ));
                    }
                }
            } else {
                notes.push(
                    "the ideal does not vanish at the origin; candidates limited to hints \
                     and probes"
                        .into(),
                );
            }
        }
    } else {
        notes.push(
            "jet-ring analysis inspects the germ at the chart origin; candidates away \
             from it are limited"
                .into(),
        );
    }

    if n <= 2 {
        let vals = [
            Rat::zero(),
            Rat::one(),
            -Rat::one(),
            Rat::from_integer(2.into()),
            -Rat::from_integer(2.into()),
            Rat::new(1.into(), 2.into()),
            -Rat::new(1.into(), 2.into()),
        ];
        if n == 1 {
            for v in &vals {
                raw.push(vec![v.clone()]);
            }
        } else {
            for a in &vals {
                for b in &vals {
                    raw.push(vec![a.clone(), b.clone()]);
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    raw.retain(|p| seen.insert(p.clone()));
    shuffle_candidates(&mut raw, seed_from_env());

    let ladder = jet_ladder(cfg);
    let mut points = Vec::new();
    for p in raw {
        // Cheap rejection: a point where some exact generator visibly does
        // not vanish carries no invariant.
        if !is_origin(&p) {
            let visibly_nonzero = working
                .gens()
                .iter()
                .any(|g| g.is_exact() && g.eval(&p).map(|v| !v.is_zero()).unwrap_or(false));
            if visibly_nonzero {
                continue;
            }
        }
        if let Some(inv) = point_invariant(working, &p, &ladder, &mut notes)? {
            points.push((p, inv));
        }
    }
    points.sort_by(|a, b| {
        b.1.cmp(&a.1).then_with(|| {
            match (is_origin(&a.0), is_origin(&b.0)) {
                (true, false) => std::cmp::Ordering::Less,
                (false, true) => std::cmp::Ordering::Greater,
                _ => a.0.cmp(&b.0),
            }
        })
    });
    Ok(Scan {
        points,
        certified,
        notes,
    })
}

fn seed_from_env() -> Option<u64> {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
}

/// Deterministically permute the probe evaluation order.  Results do not
/// depend on this: the scan sorts its output.
fn shuffle_candidates(points: &mut [Vec<Rat>], seed: Option<u64>) {
    if let Some(seed) = seed {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        points.shuffle(&mut rng);
    }
}

/// One blowup at the origin of `local`: invariant, center, charts,
/// transforms.  Fails with `ExactOnly`/`TruncationTooSmall` when the flag
/// needs a series change the current ring cannot express.
fn try_step(local: &Ideal, cfg: &Config) -> Result<StepData> {
    let (inv, flag) = invariant_at(local, &origin(local.ring().nvars()))?;
    let center = center_from_invariant(&inv, &flag)?;
    let mut notes = Vec::new();
    match is_admissible(&center, local) {
        Ok(true) => {}
        Ok(false) => {
            return Err(Error::Unsupported(
                "computed center failed its own admissibility certificate; \
                 please report this as a bug"
                    .into(),
            ))
        }
        Err(Error::Indeterminate(m)) => {
            notes.push(format!("admissibility certificate indeterminate: {m}"));
        }
        Err(Error::ExactOnly(m)) => {
            notes.push(format!(
                "admissibility certificate unavailable in this ring: {m}"
            ));
        }
        Err(Error::TruncationTooSmall { have, need }) => {
            notes.push(format!(
                "admissibility certificate needs jet order {need}, have {have}"
            ));
        }
        Err(e) => return Err(e),
    }
    let reduced = center.reduce()?;
    let blowup = blowup_charts(&reduced, cfg.root_factor)?;
    let m = blowup.weak_multiplicity()?;
    let transforms = blowup
        .charts()
        .iter()
        .map(|chart| match cfg.mode {
            Mode::Principalize => weak_transform(local, chart, m),
            Mode::EmbedHypersurface => proper_transform(local, chart),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StepData {
        invariant: inv,
        blowup,
        weak_multiplicity: m,
        transforms,
        notes,
    })
}

/// Blow up at `point`, retrying through the jet ladder when the exact ring
/// cannot express the needed coordinate change.
fn step_at(working: &Ideal, point: &[Rat], cfg: &Config) -> Result<StepData> {
    let base = if is_origin(point) {
        working.clone()
    } else {
        working.translate(point)?
    };
    let mut attempts: Vec<Option<u32>> = vec![None];
    if !base.ring().is_jet() {
        attempts.extend(jet_ladder(cfg).into_iter().map(Some));
    }
    let last = attempts.len() - 1;
    for (k, t) in attempts.iter().enumerate() {
        let local = match t {
            None => base.clone(),
            Some(order) => to_jet(&base, *order)?,
        };
        match try_step(&local, cfg) {
            Ok(mut sd) => {
                if let Some(order) = t {
                    sd.notes.push(format!(
                        "series coordinate change required; step analysed at jet order {order}"
                    ));
                }
                return Ok(sd);
            }
            Err(Error::ExactOnly(_) | Error::TruncationTooSmall { .. }) if k < last => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!("the attempt list is never empty");
}

/// Candidate points with invariants, worst first, plus a certification flag
/// for the reported maximum.
pub fn maxinv_candidates(
    ideal: &Ideal,
    cfg: &Config,
) -> Result<(Vec<(Vec<Rat>, Invariant)>, bool)> {
    validate(cfg, ideal)?;
    let working = match cfg.truncation {
        Some(order) if !ideal.ring().is_jet() => to_jet(ideal, order)?,
        _ => ideal.clone(),
    };
    let scan = candidate_scan(&working, cfg)?;
    Ok((scan.points, scan.certified))
}

/// Run a single stage: locate the worst point, blow it up, transform.
pub fn step(ideal: &Ideal, cfg: &Config) -> Result<StepOutcome> {
    validate(cfg, ideal)?;
    let working = match cfg.truncation {
        Some(order) if !ideal.ring().is_jet() => to_jet(ideal, order)?,
        _ => ideal.clone(),
    };
    let scan = candidate_scan(&working, cfg)?;
    let Some((point, _)) = scan.points.first().cloned() else {
        return Err(Error::Unsupported(
            "no vanishing rational candidate located; nothing to blow up".into(),
        ));
    };
    let sd = step_at(&working, &point, cfg)?;
    let mut notes = scan.notes;
    notes.extend(sd.notes);
    Ok(StepOutcome {
        ideal: working,
        point,
        invariant: sd.invariant,
        certified: scan.certified,
        blowup: sd.blowup,
        weak_multiplicity: sd.weak_multiplicity,
        transforms: sd.transforms,
        notes,
    })
}

fn resolve_node(
    ideal: Ideal,
    cfg: &Config,
    depth: u32,
    parent: Option<(&Invariant, usize)>,
) -> Result<ResolutionNode> {
    let mut notes = Vec::new();
    let ideal = normalize_germ_gens(&ideal, &mut notes)?;

    // A chart that already meets the goal is a finished leaf, whatever the
    // remaining budget.
    match cfg.mode {
        Mode::Principalize => {
            if ideal_is_unit(&ideal)? {
                return Ok(ResolutionNode::leaf(
                    ideal,
                    depth,
                    Status::Principalized,
                    Vec::new(),
                    notes,
                    true,
                ));
            }
        }
        Mode::EmbedHypersurface => match is_smooth_hypersurface(&ideal) {
            Ok(true) => {
                return Ok(ResolutionNode::leaf(
                    ideal,
                    depth,
                    Status::Smooth,
                    Vec::new(),
                    notes,
                    true,
                ))
            }
            Ok(false) => {}
            Err(Error::Indeterminate(m)) => {
                notes.push(format!("smoothness undecidable at this precision: {m}"));
                return Ok(ResolutionNode::leaf(
                    ideal,
                    depth,
                    Status::BudgetExceeded,
                    Vec::new(),
                    notes,
                    false,
                ));
            }
            Err(e) => return Err(e),
        },
    }

    let working = match cfg.truncation {
        Some(order) if !ideal.ring().is_jet() => to_jet(&ideal, order)?,
        _ => ideal,
    };
    let scan = match candidate_scan(&working, cfg) {
        Ok(s) => s,
        Err(e @ (Error::Budget(_) | Error::TruncationTooSmall { .. } | Error::ExactOnly(_))) => {
            notes.push(format!("candidate analysis aborted: {e}"));
            return Ok(ResolutionNode::leaf(
                working,
                depth,
                Status::BudgetExceeded,
                Vec::new(),
                notes,
                false,
            ));
        }
        Err(e) => return Err(e),
    };
    notes.extend(scan.notes);

    // The invariant must drop strictly on the exceptional divisor of the
    // blowup that created this chart.
    if let Some((parent_inv, exc)) = parent {
        for (q, qinv) in &scan.points {
            if q[exc].is_zero() && qinv >= parent_inv {
                return Err(Error::Unsupported(format!(
                    "invariant did not drop on the exceptional locus: {qinv} at {} \
                     (parent had {parent_inv}); please report this as a bug",
                    point_str(q)
                )));
            }
        }
    }

    if scan.points.is_empty() {
        notes.push(
            "no vanishing rational candidate located; this locus is left unresolved".into(),
        );
        return Ok(ResolutionNode::leaf(
            working,
            depth,
            Status::Active,
            Vec::new(),
            notes,
            false,
        ));
    }
    let (top_point, top_inv) = scan.points[0].clone();
    if cfg.mode == Mode::EmbedHypersurface
        && top_inv.entries().len() == 1
        && top_inv.entries()[0].is_one()
    {
        notes.push(
            "every located rational point is a smooth point; remaining singularities \
             lie outside the candidate set"
                .into(),
        );
        return Ok(ResolutionNode::leaf(
            working,
            depth,
            Status::Active,
            scan.points,
            notes,
            false,
        ));
    }
    if depth >= cfg.max_steps {
        notes.push("step budget exhausted before this locus was finished".into());
        return Ok(ResolutionNode::leaf(
            working,
            depth,
            Status::BudgetExceeded,
            scan.points,
            notes,
            scan.certified,
        ));
    }

    let sd = match step_at(&working, &top_point, cfg) {
        Ok(sd) => sd,
        Err(e @ (Error::ExactOnly(_) | Error::TruncationTooSmall { .. })) => {
            notes.push(format!("blowup step unavailable at this precision: {e}"));
            return Ok(ResolutionNode::leaf(
                working,
                depth,
                Status::BudgetExceeded,
                scan.points,
                notes,
                scan.certified,
            ));
        }
        Err(e) => return Err(e),
    };
    let mut children = Vec::new();
    for (chart, transform) in sd.blowup.charts().iter().zip(&sd.transforms) {
        let child = resolve_node(
            transform.clone(),
            cfg,
            depth + 1,
            Some((&sd.invariant, chart.exceptional())),
        )?;
        children.push(ChildEdge {
            chart: chart.clone(),
            node: child,
        });
    }
    notes.extend(sd.notes);
    Ok(ResolutionNode {
        ideal: working,
        depth,
        points: scan.points,
        certified: scan.certified,
        center: Some(sd.blowup.center().clone()),
        center_point: Some(top_point),
        weak_multiplicity: Some(sd.weak_multiplicity),
        children,
        status: Status::Active,
        notes,
    })
}

/// Resolve until every leaf is finished or the budget runs out.
pub fn resolve(ideal: &Ideal, cfg: &Config) -> Result<ResolutionNode> {
    validate(cfg, ideal)?;
    if matches!(ideal.zero_status(), ZeroStatus::Zero) {
        return match cfg.mode {
            Mode::EmbedHypersurface => Ok(ResolutionNode::leaf(
                ideal.clone(),
                0,
                Status::Smooth,
                Vec::new(),
                vec!["the zero ideal defines the ambient space, which is smooth".into()],
                true,
            )),
            Mode::Principalize => Err(Error::Unsupported(
                "cannot principalize the zero ideal".into(),
            )),
        };
    }
    resolve_node(ideal.clone(), cfg, 0, None)
}

/// Check that adjoining a fresh variable `x0` and passing to `(x0) + I`
/// prepends a 1 to the invariant and `x0` to the flag, leaving the rest
/// unchanged.
pub fn reembedding_check(ideal: &Ideal) -> Result<bool> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut fresh = String::from("x0");
    while ring.vars().iter().any(|v| v == &fresh) {
        fresh.push('\'');
    }
    let mut names = vec![fresh];
    names.extend(ring.vars().iter().cloned());
    let big = Ring::with_truncation(names, ring.truncation())?;
    let images: Vec<Poly> = (0..n).map(|i| Poly::var(&big, i + 1)).collect();
    let embed = PolyMap::new(ring.clone(), big.clone(), images)?;
    let mut gens = vec![Poly::var(&big, 0)];
    for g in ideal.gens() {
        gens.push(embed.apply(g)?);
    }
    let extended = Ideal::new(&big, gens)?;

    let inv_old = invariant_at(ideal, &origin(n))?.0;
    let (inv_new, flag_new) = invariant_at(&extended, &origin(n + 1))?;

    let mut expected = vec![Rat::one()];
    expected.extend(inv_old.entries().iter().cloned());
    let entries_ok = inv_new.entries() == &expected[..];
    let flag_ok = !flag_new.params().is_empty()
        && flag_new.params()[0] == Poly::var(&big, 0)
        && flag_new.pivots()[0] == 0;
    Ok(entries_ok && flag_ok)
}

/// Cyclic stabilizer orders per chart, with the cumulative product along
/// each branch.  Entries are `(path, chart order, product along the path)`
/// in depth-first order; paths look like `root/2/1`.
pub fn stabilizer_report(root: &ResolutionNode) -> Vec<(String, u64, u64)> {
    fn walk(node: &ResolutionNode, path: &str, product: u64, out: &mut Vec<(String, u64, u64)>) {
        for (i, edge) in node.children().iter().enumerate() {
            let label = format!("{path}/{}", i + 1);
            let order = edge.chart().group_order();
            let prod = product.saturating_mul(order);
            out.push((label.clone(), order, prod));
            walk(edge.node(), &label, prod, out);
        }
    }
    let mut out = Vec::new();
    walk(root, "root", 1, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn rq(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn ring2() -> Arc<Ring> {
        Ring::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn smoothness_certificate_is_global_in_exact_rings() {
        let ring = ring2();
        // Singular at the origin.
        let cone = Ideal::parse(&ring, "x^2 + y^2").unwrap();
        assert!(!is_smooth_hypersurface(&cone).unwrap());
        // Graph of a function: everywhere smooth.
        let graph = Ideal::parse(&ring, "y - x^3").unwrap();
        assert!(is_smooth_hypersurface(&graph).unwrap());
        // Unit: empty vanishing locus, vacuously smooth.
        let unit = Ideal::parse(&ring, "1 + x^2").unwrap();
        assert!(is_smooth_hypersurface(&unit).unwrap());
        // Smooth at every rational point but singular at two conjugate
        // points: the certificate must see them.
        let hidden = Ideal::parse(&ring, "y^2 - (x^2+1)^2").unwrap();
        assert!(!is_smooth_hypersurface(&hidden).unwrap());
    }

    #[test]
    fn candidates_for_the_product_cusp_are_certified() {
        let ring = Ring::new(&["x", "y", "z"]).unwrap();
        let ideal = Ideal::parse(&ring, "x^2*y*z + y*z^4").unwrap();
        let cfg = Config::with_mode(Mode::Principalize);
        let (points, certified) = maxinv_candidates(&ideal, &cfg).unwrap();
        assert!(certified);
        assert_eq!(points[0].0, vec![r(0), r(0), r(0)]);
        assert_eq!(points[0].1.entries(), &[r(4), r(4), r(4)][..]);
    }

    #[test]
    fn candidates_track_the_whole_singular_locus_of_the_product_quadric() {
        let ring = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let ideal = Ideal::parse(&ring, "x^2 - y1*y2*y3").unwrap();
        let cfg = Config::default();
        let (points, certified) = maxinv_candidates(&ideal, &cfg).unwrap();
        // The singular locus contains three lines, so the maximum cannot be
        // certified by point enumeration.
        assert!(!certified);
        assert_eq!(points[0].0, vec![r(0); 4]);
        assert_eq!(points[0].1.entries(), &[r(2), r(3), r(3), r(3)][..]);
        // Probe points on the singular lines carry the strictly smaller
        // line invariant.
        assert!(points
            .iter()
            .any(|(p, inv)| !is_origin(p) && inv.entries() == &[r(2), r(2), r(2)][..]));
    }

    #[test]
    fn resolve_product_quadric_in_two_rounds() {
        let ring = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let ideal = Ideal::parse(&ring, "x^2 - y1*y2*y3").unwrap();
        let tree = resolve(&ideal, &Config::default()).unwrap();

        assert_eq!(tree.status(), Status::Active);
        assert_eq!(tree.maxinv().unwrap().entries(), &[r(2), r(3), r(3), r(3)][..]);
        let center = tree.center().unwrap();
        assert_eq!(center.weights(), &[3, 2, 2, 2][..]);
        assert_eq!(tree.children().len(), 4);

        // First chart: the transform is already smooth.
        let first = &tree.children()[0];
        assert_eq!(first.chart().group_order(), 3);
        assert_eq!(first.node().status(), Status::Smooth);
        assert_eq!(first.node().depth(), 1);

        // Last chart: proper transform is again a product quadric, one
        // variable fewer under the product.
        let last = &tree.children()[3];
        let cring = last.chart().ring();
        let expected = Poly::parse(cring, "x'^2 - y1'*y2'").unwrap();
        assert_eq!(last.node().ideal().gens(), &[expected][..]);

        // Every leaf is smooth, and no branch needs more than two rounds.
        for leaf in tree.leaves() {
            assert_eq!(leaf.status(), Status::Smooth);
            assert!(leaf.depth() <= 2, "leaf at depth {}", leaf.depth());
        }
        assert!(tree.leaves().iter().any(|l| l.depth() == 2));
    }

    #[test]
    fn resolve_quasihomogeneous_curve_in_one_round() {
        let ring = ring2();
        let ideal = Ideal::parse(&ring, "x^5 + x^3*y^3 + y^7").unwrap();
        let tree = resolve(&ideal, &Config::default()).unwrap();
        assert_eq!(tree.maxinv().unwrap().entries(), &[r(5), r(7)][..]);
        assert_eq!(tree.center().unwrap().weights(), &[7, 5][..]);
        assert_eq!(tree.children().len(), 2);
        for leaf in tree.leaves() {
            assert_eq!(leaf.status(), Status::Smooth);
            assert_eq!(leaf.depth(), 1);
        }
    }

    #[test]
    fn resolve_near_cusp_needs_exactly_two_rounds_when_k_is_nine() {
        let ring = ring2();
        let ideal = Ideal::parse(&ring, "x^5 + x^3*y^3 + y^9").unwrap();
        let tree = resolve(&ideal, &Config::default()).unwrap();
        assert_eq!(tree.maxinv().unwrap().entries(), &[r(5), rq(15, 2)][..]);

        // The x-chart is smooth at once; the y-chart carries a residual
        // singularity with invariant (3, 3).
        let xchart = &tree.children()[0];
        assert_eq!(xchart.node().status(), Status::Smooth);
        let ychart = &tree.children()[1];
        assert_eq!(ychart.node().status(), Status::Active);
        assert_eq!(ychart.node().maxinv().unwrap().entries(), &[r(3), r(3)][..]);

        let mut depths: Vec<u32> = tree.leaves().iter().map(|l| l.depth()).collect();
        depths.sort_unstable();
        assert_eq!(depths.last(), Some(&2));
        for leaf in tree.leaves() {
            assert_eq!(leaf.status(), Status::Smooth);
        }
    }

    #[test]
    fn principalize_monomial_times_regular_full_tree() {
        let ring = Ring::new(&["x", "y", "z"]).unwrap();
        let ideal = Ideal::parse(&ring, "x^2*y*z + y*z^4").unwrap();
        let cfg = Config::with_mode(Mode::Principalize);
        let tree = resolve(&ideal, &cfg).unwrap();

        assert!(tree.certified());
        assert_eq!(tree.maxinv().unwrap().entries(), &[r(4), r(4), r(4)][..]);
        assert_eq!(tree.center().unwrap().weights(), &[1, 1, 1][..]);
        assert_eq!(tree.children().len(), 3);

        // The z-chart carries the traced weak transform y3*(x3^2 + z) and
        // its next stage has invariant (2, 2) with the parabola as center.
        let zchart = &tree.children()[2];
        let zring = zchart.chart().ring();
        let expected = Poly::parse(zring, "y3*(x3^2 + z)").unwrap();
        assert_eq!(zchart.node().ideal().gens(), &[expected][..]);
        assert_eq!(zchart.node().maxinv().unwrap().entries(), &[r(2), r(2)][..]);
        let flag = zchart.node().center().unwrap().flag();
        let params: Vec<String> = flag.params().iter().map(|p| p.to_string()).collect();
        assert!(params.contains(&"y3".to_string()), "params {params:?}");
        assert!(params.contains(&"x3^2 + z".to_string()), "params {params:?}");

        // The whole z-subtree principalizes.
        for leaf in zchart.node().leaves() {
            assert_eq!(leaf.status(), Status::Principalized);
        }
        // The x-subtree needs series charts (jet rings) but also finishes.
        for leaf in tree.children()[0].node().leaves() {
            assert_eq!(leaf.status(), Status::Principalized);
        }
        // No leaf anywhere runs out of budget; dead ends are honest.
        for leaf in tree.leaves() {
            assert!(
                matches!(leaf.status(), Status::Principalized | Status::Active),
                "unexpected status {:?}",
                leaf.status()
            );
        }
    }

    #[test]
    fn budget_is_reported_not_hidden() {
        let ring = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let ideal = Ideal::parse(&ring, "x^2 - y1*y2*y3").unwrap();
        let cfg = Config {
            max_steps: 1,
            ..Config::default()
        };
        let tree = resolve(&ideal, &cfg).unwrap();
        let leaves = tree.leaves();
        assert!(leaves.iter().any(|l| l.status() == Status::Smooth));
        assert!(leaves.iter().any(|l| l.status() == Status::BudgetExceeded));
    }

    #[test]
    fn reembedding_prepends_a_unit_entry() {
        let ring = ring2();
        for text in ["x^5 + x^3*y^3 + y^8", "x", "x^2 - y^3"] {
            let ideal = Ideal::parse(&ring, text).unwrap();
            assert!(reembedding_check(&ideal).unwrap(), "failed for {text}");
        }
        // Explicit shape for the curve: (5, 15/2) becomes (1, 5, 15/2).
        let curve = Ideal::parse(&ring, "x^5 + x^3*y^3 + y^8").unwrap();
        let inv = invariant_at(&curve, &origin(2)).unwrap().0;
        assert_eq!(inv.entries(), &[r(5), rq(15, 2)][..]);
    }

    #[test]
    fn stabilizer_report_lists_chart_orders_and_products() {
        let ring = ring2();
        let ideal = Ideal::parse(&ring, "x^5 + x^3*y^3 + y^8").unwrap();
        let tree = resolve(&ideal, &Config::default()).unwrap();
        let report = stabilizer_report(&tree);
        assert_eq!(
            report,
            vec![("root/1".to_string(), 3, 3), ("root/2".to_string(), 2, 2)]
        );
    }

    #[test]
    fn probe_shuffle_never_changes_the_scan_result() {
        let ring = Ring::new(&["x", "y1", "y2", "y3"]).unwrap();
        let ideal = Ideal::parse(&ring, "x^2 - y1*y2*y3").unwrap();
        let cfg = Config::default();
        let baseline = maxinv_candidates(&ideal, &cfg).unwrap();
        let mut pts: Vec<Vec<Rat>> = vec![
            vec![r(0), r(0), r(0), r(1)],
            vec![r(0), r(0), r(1), r(0)],
            vec![r(0), r(1), r(0), r(0)],
        ];
        let before = pts.clone();
        shuffle_candidates(&mut pts, Some(42));
        assert_ne!(pts, before, "a seed should actually permute");
        let again = maxinv_candidates(&ideal, &cfg).unwrap();
        assert_eq!(baseline.0, again.0);
        assert_eq!(baseline.1, again.1);
    }

    #[test]
    fn zero_ideal_is_smooth_but_cannot_be_principalized() {
        let ring = ring2();
        let zero = Ideal::new(&ring, vec![Poly::zero(&ring)]).unwrap();
        let tree = resolve(&zero, &Config::default()).unwrap();
        assert_eq!(tree.status(), Status::Smooth);
        let err = resolve(&zero, &Config::with_mode(Mode::Principalize)).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn step_outcome_matches_the_first_tree_level() {
        let ring = ring2();
        let ideal = Ideal::parse(&ring, "x^5 + x^3*y^3 + y^8").unwrap();
        let out = step(&ideal, &Config::default()).unwrap();
        assert_eq!(out.point, origin(2));
        assert_eq!(out.invariant.entries(), &[r(5), rq(15, 2)][..]);
        assert_eq!(out.weak_multiplicity, 15);
        assert_eq!(out.transforms.len(), 2);
        assert!(out.certified);
        // In embedded mode the transforms are the proper transforms.
        let xring = out.blowup.charts()[0].ring();
        let expected = Poly::parse(xring, "1 + y'^3 + u*y'^8").unwrap();
        assert_eq!(out.transforms[0].gens(), &[expected][..]);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let ring = ring2();
        let ideal = Ideal::parse(&ring, "x^2 - y^3").unwrap();
        let cfg = Config {
            max_steps: 0,
            ..Config::default()
        };
        assert!(matches!(resolve(&ideal, &cfg), Err(Error::Input(_))));
        let cfg = Config {
            hints: vec![vec![r(1)]],
            ..Config::default()
        };
        assert!(matches!(resolve(&ideal, &cfg), Err(Error::Input(_))));
    }

    #[test]
    fn hint_points_join_the_candidate_set() {
        let ring = ring2();
        // A cusp far from the origin: the ideal is a unit germ at the origin
        // and at every small grid point, so the hint is the only way in.
        let ideal = Ideal::parse(&ring, "(x-7)^2 - (y-5)^3").unwrap();
        let cfg = Config {
            hints: vec![vec![r(7), r(5)]],
            ..Config::default()
        };
        let (points, certified) = maxinv_candidates(&ideal, &cfg).unwrap();
        assert!(!certified);
        assert_eq!(points[0].0, vec![r(7), r(5)]);
        assert_eq!(
            points[0].1.entries(),
            &[r(2), r(3)],
            "the hint point carries the cusp invariant"
        );
        // Without the hint nothing vanishes anywhere the scan looks.
        let (bare, _) = maxinv_candidates(&ideal, &Config::default()).unwrap();
        assert!(bare.is_empty());
    }
}
