//! Pointwise verification of the linear-equivalence decompositions
//! `f = rho o g o eta` for `r = Q + R + S`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::proper_divisors;
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtFieldCtx};
use crate::pentanomial::{
    assemble_f, build_bz, check_ctx, select_beta, PentanomialSpec, SparsePoly, Theorem,
};

use super::oracle::DEFAULT_ORACLE_CAP;

/// Default number of random points when the field exceeds the cap.
pub const DEFAULT_SAMPLE: usize = 10_000;

/// Largest `q^2` for which the engine keeps `eta` of every point in memory.
const ETA_CACHE_CAP: u64 = 1 << 22;

/// Log of zero in the log-domain evaluation.
const NO_LOG: u32 = u32::MAX;

/// The residue of `q` mod 3, which selects the shape of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QClass {
    OneMod3,
    TwoMod3,
}

impl QClass {
    pub fn of(q: u64) -> Self {
        if q % 3 == 1 {
            QClass::OneMod3
        } else {
            QClass::TwoMod3
        }
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QClass::OneMod3 => "q≡1",
            QClass::TwoMod3 => "q≡2",
        })
    }
}

/// A vector in F_{q^2} or in F_q x F_q (both viewed inside F_{q^2}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vector {
    Ext(ExtElem),
    Pair(ExtElem, ExtElem),
}

impl Vector {
    fn add(self, ctx: &ExtFieldCtx, other: Vector) -> Vector {
        match (self, other) {
            (Vector::Ext(a), Vector::Ext(b)) => Vector::Ext(ctx.add(a, b)),
            (Vector::Pair(a, b), Vector::Pair(c, d)) => Vector::Pair(ctx.add(a, c), ctx.add(b, d)),
            _ => panic!("mixed vector spaces"),
        }
    }

    fn neg(self, ctx: &ExtFieldCtx) -> Vector {
        match self {
            Vector::Ext(a) => Vector::Ext(ctx.neg(a)),
            Vector::Pair(a, b) => Vector::Pair(ctx.neg(a), ctx.neg(b)),
        }
    }

    /// Scalar action of `lambda` in F_q, componentwise on pairs.
    fn scale(self, ctx: &ExtFieldCtx, lambda: ExtElem) -> Vector {
        match self {
            Vector::Ext(a) => Vector::Ext(ctx.mul(lambda, a)),
            Vector::Pair(a, b) => Vector::Pair(ctx.mul(lambda, a), ctx.mul(lambda, b)),
        }
    }

    fn is_zero(self) -> bool {
        match self {
            Vector::Ext(a) => a.is_zero(),
            Vector::Pair(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    fn in_pair_space(self, ctx: &ExtFieldCtx) -> bool {
        match self {
            Vector::Ext(_) => false,
            Vector::Pair(a, b) => ctx.in_subfield_q(a) && ctx.in_subfield_q(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Space {
    Ext,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Middle {
    /// `x -> x^e` on F_{q^2}.
    Power(u128),
    /// `(u, v) -> (u^e, v^e)`.
    PairPower(u128),
    /// `(u, v) -> (u^s v^t, u^t v^s)`.
    PairMixed(u128, u128),
}

/// The maps `rho`, `g`, `eta` for one spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearMapSpec {
    pub case: QClass,
    pub theorem: Theorem,
    pub z: u8,
    omega: ExtElem,
    /// `beta^-1` when `q = 1 mod 3`, `beta^-1 omega^-(Q+R+S)` otherwise.
    rho_scale: ExtElem,
    middle: Middle,
}

impl LinearMapSpec {
    /// Requires `r = Q + R + S`.
    pub fn new(spec: &PentanomialSpec, ctx: &ExtFieldCtx, omega: ExtElem) -> Result<Self> {
        check_ctx(spec, ctx)?;
        let t = spec.degree_sum();
        if spec.r != t {
            return Err(Error::Precondition(format!(
                "the decomposition needs r = Q+R+S = {t}, got r = {}",
                spec.r
            )));
        }
        let case = QClass::of(ctx.q());
        let beta_inv = ctx.inv(select_beta(spec, ctx, omega)?)?;
        let (q, r, s) = (spec.big_q(), spec.big_r(), spec.big_s());
        let (rho_scale, middle) = match (case, spec.theorem) {
            (QClass::OneMod3, Theorem::T1) => (beta_inv, Middle::Power(t)),
            (QClass::OneMod3, Theorem::T2) => {
                let e = (ctx.q() as u128)
                    .checked_mul(r)
                    .and_then(|v| v.checked_add(q + s))
                    .ok_or(Error::LimitExceeded {
                        what: "exponent Q+qR+S",
                        size: u128::MAX,
                        cap: u128::MAX,
                    })?;
                (beta_inv, Middle::Power(e))
            }
            (QClass::TwoMod3, theorem) => {
                let w_t = ctx.inv(ctx.pow(omega, t % 3))?;
                let middle = match theorem {
                    Theorem::T1 => Middle::PairPower(t),
                    Theorem::T2 => Middle::PairMixed(q + s, r),
                };
                (ctx.mul(beta_inv, w_t), middle)
            }
        };
        Ok(Self {
            case,
            theorem: spec.theorem,
            z: spec.z,
            omega,
            rho_scale,
            middle,
        })
    }

    fn middle_space(&self) -> Space {
        match self.case {
            QClass::OneMod3 => Space::Ext,
            QClass::TwoMod3 => Space::Pair,
        }
    }

    pub fn eta(&self, ctx: &ExtFieldCtx, x: ExtElem) -> Vector {
        let w = self.omega;
        match self.case {
            QClass::OneMod3 => Vector::Ext(ctx.add(ctx.mul(w, ctx.frob_q(x)), x)),
            QClass::TwoMod3 => {
                let trace = |y: ExtElem| ctx.add(y, ctx.frob_q(y));
                Vector::Pair(trace(ctx.mul(ctx.frob_q(w), x)), trace(ctx.mul(w, x)))
            }
        }
    }

    pub fn g(&self, ctx: &ExtFieldCtx, v: Vector) -> Vector {
        match (self.middle, v) {
            (Middle::Power(e), Vector::Ext(x)) => Vector::Ext(ctx.pow(x, e)),
            (Middle::PairPower(e), Vector::Pair(u, v)) => {
                Vector::Pair(ctx.pow(u, e), ctx.pow(v, e))
            }
            (Middle::PairMixed(s, t), Vector::Pair(u, v)) => Vector::Pair(
                ctx.mul(ctx.pow(u, s), ctx.pow(v, t)),
                ctx.mul(ctx.pow(u, t), ctx.pow(v, s)),
            ),
            _ => panic!("g applied to a vector of the wrong space"),
        }
    }

    pub fn rho(&self, ctx: &ExtFieldCtx, v: Vector) -> ExtElem {
        let w = self.omega;
        let inner = match (self.case, v) {
            (QClass::OneMod3, Vector::Ext(y)) => {
                let yq = ctx.frob_q(y);
                if self.z == 1 {
                    ctx.sub(y, ctx.mul(w, yq))
                } else {
                    ctx.sub(yq, ctx.mul(w, y))
                }
            }
            (QClass::TwoMod3, Vector::Pair(x, y)) => {
                if self.z == 1 {
                    ctx.sub(y, ctx.mul(w, x))
                } else {
                    ctx.sub(x, ctx.mul(w, y))
                }
            }
            _ => panic!("rho applied to a vector of the wrong space"),
        };
        ctx.mul(self.rho_scale, inner)
    }

    pub fn apply(&self, ctx: &ExtFieldCtx, x: ExtElem) -> ExtElem {
        self.rho(ctx, self.g(ctx, self.eta(ctx, x)))
    }

    /// Human-readable formulas for the three maps.
    pub fn describe(&self) -> String {
        let eta = match self.case {
            QClass::OneMod3 => "eta(x) = w x^q + x".to_string(),
            QClass::TwoMod3 => "eta(x) = (w^q x + (w^q x)^q, w x + (w x)^q)".to_string(),
        };
        let g = match self.middle {
            Middle::Power(e) => format!("g(x) = x^{e}"),
            Middle::PairPower(e) => format!("g(x, y) = (x^{e}, y^{e})"),
            Middle::PairMixed(s, t) => format!("g(x, y) = (x^{s} y^{t}, x^{t} y^{s})"),
        };
        let rho = match (self.case, self.z) {
            (QClass::OneMod3, 1) => "rho(y) = beta^-1 (-w y^q + y)",
            (QClass::OneMod3, _) => "rho(y) = beta^-1 (y^q - w y)",
            (QClass::TwoMod3, 1) => "rho(x, y) = beta^-1 w^-(Q+R+S) (-w x + y)",
            (QClass::TwoMod3, _) => "rho(x, y) = beta^-1 w^-(Q+R+S) (x - w y)",
        };
        format!("{eta}; {g}; {rho}")
    }
}

/// Options for [`verify_decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionOptions {
    /// Largest `q^2` checked exhaustively; above it a random sample is used.
    pub exhaustive_cap: u64,
    pub sample: usize,
    pub seed: u64,
    /// Also check that `eta` and `rho` are F_q-linear bijections.
    pub check_maps: bool,
}

impl Default for DecompositionOptions {
    fn default() -> Self {
        Self {
            exhaustive_cap: DEFAULT_ORACLE_CAP,
            sample: DEFAULT_SAMPLE,
            seed: 0,
            check_maps: true,
        }
    }
}

/// Outcome of the linearity and bijectivity checks on one map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub exhaustive: bool,
    pub points: u64,
    pub additive: bool,
    pub homogeneous: bool,
    /// Trivial kernel, which for an additive map between spaces of equal
    /// size means bijective.
    pub injective: bool,
    /// Every image lies in the stated codomain.
    pub into_codomain: bool,
}

impl LinearityReport {
    pub fn holds(&self) -> bool {
        self.additive && self.homogeneous && self.injective && self.into_codomain
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub spec: PentanomialSpec,
    pub case: QClass,
    pub maps: String,
    pub exhaustive: bool,
    /// Seed of the sample, when sampling was used.
    pub seed: Option<u64>,
    pub points: u64,
    pub mismatches: u64,
    pub eta: Option<LinearityReport>,
    pub rho: Option<LinearityReport>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.mismatches == 0
            && self.eta.map_or(true, |r| r.holds())
            && self.rho.map_or(true, |r| r.holds())
    }
}

/// Verifies decompositions over one field, caching the map checks, which
/// depend only on the field, `omega`, `z` and the scalar in `rho`.
pub struct DecompositionEngine<'a> {
    ctx: &'a ExtFieldCtx,
    omega: ExtElem,
    opts: DecompositionOptions,
    fq_gen: ExtElem,
    eta_cache: Mutex<HashMap<QClass, LinearityReport>>,
    rho_cache: Mutex<HashMap<(u8, ExtElem), LinearityReport>>,
    /// Logs of `eta(g^L)` for every `L`; `eta` depends only on the field
    /// and `omega`.
    eta_logs: OnceLock<Vec<[u32; 2]>>,
}

impl<'a> DecompositionEngine<'a> {
    pub fn new(ctx: &'a ExtFieldCtx, omega: ExtElem, opts: DecompositionOptions) -> Self {
        Self {
            ctx,
            omega,
            opts,
            fq_gen: subfield_generator(ctx),
            eta_cache: Mutex::new(HashMap::new()),
            rho_cache: Mutex::new(HashMap::new()),
            eta_logs: OnceLock::new(),
        }
    }

    fn exhaustive(&self) -> bool {
        self.ctx.q2() <= self.opts.exhaustive_cap
    }

    pub fn verify(&self, spec: &PentanomialSpec) -> Result<DecompositionReport> {
        let ctx = self.ctx;
        let maps = LinearMapSpec::new(spec, ctx, self.omega)?;
        let f = assemble_f(spec, &build_bz(spec, ctx, self.omega)?)?;
        let order = ctx.q2() as u128 - 1;
        let terms: Vec<(u128, ExtElem)> = f.terms().map(|(e, c)| (e % order, c)).collect();
        let f_at = |x: ExtElem| {
            if x.is_zero() {
                return f.coeff(0);
            }
            terms.iter().fold(ExtElem::ZERO, |s, &(e, c)| {
                ctx.add(s, ctx.mul(c, ctx.pow(x, e)))
            })
        };
        let mismatch = |x: ExtElem| f_at(x) != maps.apply(ctx, x);

        let (points, mismatches, seed) = if self.exhaustive() {
            let bad = if ctx.has_tables() {
                self.walk_mismatches(&maps, &f)
            } else {
                ctx.elements().filter(|&x| mismatch(x)).count() as u64
            };
            (ctx.q2(), bad, None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
            let bad = (0..self.opts.sample)
                .filter(|_| mismatch(ctx.random(&mut rng)))
                .count() as u64;
            (self.opts.sample as u64, bad, Some(self.opts.seed))
        };

        let (eta, rho) = if self.opts.check_maps {
            (Some(self.eta_report(&maps)), Some(self.rho_report(&maps)))
        } else {
            (None, None)
        };
        Ok(DecompositionReport {
            spec: *spec,
            case: maps.case,
            maps: maps.describe(),
            exhaustive: seed.is_none(),
            seed,
            points,
            mismatches,
            eta,
            rho,
        })
    }

    /// Exhaustive comparison along `x = g^L`. Each term `c x^e` of `f` is
    /// `g^(log c + L e)`, so its log advances by `e` per step; `rho o g` is
    /// evaluated on the logs of `eta(x)`, which are cached per field.
    fn walk_mismatches(&self, maps: &LinearMapSpec, f: &SparsePoly) -> u64 {
        let ctx = self.ctx;
        let t = ctx.tables().expect("caller ensures tables");
        let m = t.order();
        let log = |x: ExtElem| {
            if x.is_zero() {
                NO_LOG
            } else {
                t.log_of(x) as u32
            }
        };
        let eta_logs = |l: u64| match maps.eta(ctx, t.exp_of(l)) {
            Vector::Ext(y) => [log(y), NO_LOG],
            Vector::Pair(u, v) => [log(u), log(v)],
        };
        let cached = (ctx.q2() <= ETA_CACHE_CAP)
            .then(|| self.eta_logs.get_or_init(|| (0..m).map(eta_logs).collect()));

        let wrap = |x: u64| if x >= m { x - m } else { x };
        let reduce = |e: u128| (e % m as u128) as u64;
        let ls = t.log_of(maps.rho_scale);
        let lws = wrap(t.log_of(maps.omega) + ls);
        // `g^(l + shift)`, zero for a zero argument.
        let term = |l: u32, shift: u64| {
            if l == NO_LOG {
                ExtElem::ZERO
            } else {
                t.exp_of(wrap(l as u64 + shift))
            }
        };
        let times = |l: u32, e: u64| {
            if l == NO_LOG {
                NO_LOG
            } else {
                (l as u64 * e % m) as u32
            }
        };
        let q = ctx.q();
        // Every exponent of g is positive, so g(0) = 0 componentwise.
        let rho_g = |[a, b]: [u32; 2]| -> ExtElem {
            let (x, y) = match maps.middle {
                Middle::Power(e) => {
                    let l = times(a, reduce(e));
                    (times(l, q), l)
                }
                Middle::PairPower(e) => (times(a, reduce(e)), times(b, reduce(e))),
                Middle::PairMixed(e1, e2) => {
                    if a == NO_LOG || b == NO_LOG {
                        (NO_LOG, NO_LOG)
                    } else {
                        let (e1, e2) = (reduce(e1), reduce(e2));
                        let mix = |u: u64, v: u64| wrap(u * e1 % m + v * e2 % m) as u32;
                        (mix(a as u64, b as u64), mix(b as u64, a as u64))
                    }
                }
            };
            // Both shapes of rho are `scale (first - w second)`; for
            // `q = 1 mod 3`, x and y hold `g(.)^q` and `g(.)`.
            let (first, second) = match (maps.case, maps.z) {
                (QClass::OneMod3, 1) | (QClass::TwoMod3, 1) => (y, x),
                _ => (x, y),
            };
            ctx.sub(term(first, ls), term(second, lws))
        };

        let mut acc: Vec<(u64, u64)> = f.terms().map(|(e, c)| (reduce(e), t.log_of(c))).collect();
        let mut bad = u64::from(f.coeff(0) != maps.apply(ctx, ExtElem::ZERO));
        for l in 0..m {
            let mut fx = ExtElem::ZERO;
            for (step, a) in acc.iter_mut() {
                fx = ctx.add(fx, t.exp_of(*a));
                *a = wrap(*a + *step);
            }
            let logs = match cached {
                Some(v) => v[l as usize],
                None => eta_logs(l),
            };
            if fx != rho_g(logs) {
                bad += 1;
            }
        }
        bad
    }

    fn eta_report(&self, maps: &LinearMapSpec) -> LinearityReport {
        if let Some(r) = self.eta_cache.lock().unwrap().get(&maps.case) {
            return *r;
        }
        let ctx = self.ctx;
        let codomain = maps.middle_space();
        let report = self.check_linear(
            Space::Ext,
            |v| match v {
                Vector::Ext(x) => maps.eta(ctx, x),
                Vector::Pair(..) => unreachable!(),
            },
            |w| codomain == Space::Ext || w.in_pair_space(ctx),
        );
        self.eta_cache.lock().unwrap().insert(maps.case, report);
        report
    }

    fn rho_report(&self, maps: &LinearMapSpec) -> LinearityReport {
        let key = (maps.z, maps.rho_scale);
        if let Some(r) = self.rho_cache.lock().unwrap().get(&key) {
            return *r;
        }
        let ctx = self.ctx;
        let report = self.check_linear(
            maps.middle_space(),
            |v| Vector::Ext(maps.rho(ctx, v)),
            |_| true,
        );
        self.rho_cache.lock().unwrap().insert(key, report);
        report
    }

    /// Checks additivity, F_q-homogeneity, trivial kernel and codomain
    /// membership of `map` on `domain`.
    fn check_linear(
        &self,
        domain: Space,
        map: impl Fn(Vector) -> Vector,
        in_codomain: impl Fn(Vector) -> bool,
    ) -> LinearityReport {
        let ctx = self.ctx;
        let gamma = self.fq_gen;
        let mut report = LinearityReport {
            exhaustive: self.exhaustive(),
            points: 0,
            additive: true,
            homogeneous: true,
            injective: true,
            into_codomain: true,
        };
        let visit = |v: Vector, image: Vector, report: &mut LinearityReport| {
            report.points += 1;
            if map(v.scale(ctx, gamma)) != image.scale(ctx, gamma) {
                report.homogeneous = false;
            }
            if image.is_zero() && !v.is_zero() {
                report.injective = false;
            }
            if !in_codomain(image) {
                report.into_codomain = false;
            }
        };

        if report.exhaustive {
            // Walk the domain in reflected Gray order: consecutive points
            // differ by +-b for a basis vector b, so checking
            // map(v +- b) = map(v) +- map(b) at every step proves additivity.
            let basis = domain_basis(ctx, domain, gamma);
            let images: Vec<Vector> = basis.iter().map(|&b| map(b)).collect();
            let mut v = zero_vector(domain);
            let mut image = map(v);
            if !image.is_zero() {
                report.additive = false;
            }
            visit(v, image, &mut report);
            let p = ctx.p() as i64;
            let mut digits = vec![0i64; basis.len()];
            let mut dirs = vec![1i64; basis.len()];
            loop {
                let Some(i) = (0..digits.len()).find(|&i| (0..p).contains(&(digits[i] + dirs[i])))
                else {
                    break;
                };
                for j in 0..i {
                    dirs[j] = -dirs[j];
                }
                digits[i] += dirs[i];
                let (step, step_image) = if dirs[i] == 1 {
                    (basis[i], images[i])
                } else {
                    (basis[i].neg(ctx), images[i].neg(ctx))
                };
                v = v.add(ctx, step);
                let next = map(v);
                if next != image.add(ctx, step_image) {
                    report.additive = false;
                }
                image = next;
                visit(v, image, &mut report);
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
            for _ in 0..self.opts.sample {
                let v = random_vector(ctx, domain, &mut rng);
                let w = random_vector(ctx, domain, &mut rng);
                let image = map(v);
                if map(v.add(ctx, w)) != image.add(ctx, map(w)) {
                    report.additive = false;
                }
                visit(v, image, &mut report);
            }
        }
        report
    }
}

/// Convenience wrapper building a one-off [`DecompositionEngine`].
pub fn verify_decomposition(
    spec: &PentanomialSpec,
    ctx: &ExtFieldCtx,
    omega: ExtElem,
    opts: DecompositionOptions,
) -> Result<DecompositionReport> {
    DecompositionEngine::new(ctx, omega, opts).verify(spec)
}

fn zero_vector(space: Space) -> Vector {
    match space {
        Space::Ext => Vector::Ext(ExtElem::ZERO),
        Space::Pair => Vector::Pair(ExtElem::ZERO, ExtElem::ZERO),
    }
}

/// An F_p-basis: `X^i` for F_{q^2}, and `(gamma^i, 0), (0, gamma^i)` for
/// F_q x F_q where `gamma` generates F_q over F_p.
fn domain_basis(ctx: &ExtFieldCtx, space: Space, gamma: ExtElem) -> Vec<Vector> {
    match space {
        Space::Ext => (0..ctx.n()).map(|i| Vector::Ext(ctx.basis(i))).collect(),
        Space::Pair => {
            let powers: Vec<ExtElem> = (0..ctx.k()).map(|i| ctx.pow(gamma, i as u128)).collect();
            let left = powers.iter().map(|&g| Vector::Pair(g, ExtElem::ZERO));
            let right = powers.iter().map(|&g| Vector::Pair(ExtElem::ZERO, g));
            left.chain(right).collect()
        }
    }
}

fn random_fq(ctx: &ExtFieldCtx, rng: &mut ChaCha8Rng) -> ExtElem {
    // The trace to F_q is onto with fibres of equal size.
    let x = ctx.random(rng);
    ctx.add(x, ctx.frob_q(x))
}

fn random_vector(ctx: &ExtFieldCtx, space: Space, rng: &mut ChaCha8Rng) -> Vector {
    match space {
        Space::Ext => Vector::Ext(ctx.random(rng)),
        Space::Pair => Vector::Pair(random_fq(ctx, rng), random_fq(ctx, rng)),
    }
}

/// An element of F_q lying in no proper subfield, so that F_p(gamma) = F_q.
/// Searched among norms, which cover F_q^*.
fn subfield_generator(ctx: &ExtFieldCtx) -> ExtElem {
    let divisors = proper_divisors(ctx.k());
    (1..ctx.q2())
        .map(|c| ctx.norm(ExtElem::from_encoding(c)))
        .find(|&y| divisors.iter().all(|&d| ctx.frobenius(y, d) != y))
        .expect("F_q has a generator over F_p")
}
