//! Certification of the k-polarization property.
//!
//! For each multidegree `beta` (scanned by total degree, then ascending
//! lexicographic order) the dimension of `C[kV]^G_beta` is compared with the
//! dimension of the part of the polarization subalgebra in that degree, or an
//! upper bound for it. A strict deficit certifies failure.

use crate::charalg::{frobenius_indicator, invariant_dim, GradedInvariants};
use crate::error::{Error, Result};
use crate::fingrp::FiniteGroup;
use crate::int::Int;
use crate::polyops::{
    compositions, mulmod, polarize, rank_mod, EchelonBasis, Polynomial, Rational,
};
use crate::rep::{RepGroup, ResolvedRep};
use crate::sampler::{first_moving_sample, GroupSampler};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Random elements used to check invariance under a connected group.
pub const INVARIANCE_SAMPLES: usize = 20;
const MODULUS: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Paper,
    CatalogExternal,
    Computed,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Paper => "paper",
            Provenance::CatalogExternal => "catalog-external",
            Provenance::Computed => "computed",
        }
    }
}

/// Degrees of a minimal generating set of `C[V]^G`, optionally with the
/// generators themselves.
///
/// The table lists every minimal generator of degree at most
/// `complete_through`, or of every degree when that is `None`. For computed
/// upper-bound tables a degree may be listed more often than the true
/// generator count, which keeps the polarization bound sound.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    pub degrees: Vec<u32>,
    pub explicit: Option<Vec<Polynomial>>,
    pub provenance: Vec<Provenance>,
    pub complete_through: Option<u32>,
}

impl GeneratorTable {
    pub fn from_degrees(degrees: Vec<u32>, provenance: Provenance, complete_through: Option<u32>) -> Self {
        let provenance = vec![provenance; degrees.len()];
        GeneratorTable {
            degrees,
            explicit: None,
            provenance,
            complete_through,
        }
    }

    pub fn from_polynomials(
        polys: Vec<Polynomial>,
        provenance: Provenance,
        complete_through: Option<u32>,
    ) -> Result<Self> {
        let mut degrees = Vec::with_capacity(polys.len());
        for p in &polys {
            if p.shape().copies != 1 {
                return Err(Error::invalid("generators must be polynomials on one copy of V"));
            }
            match p.homogeneous_degree() {
                Some(d) if d > 0 => degrees.push(d),
                _ => return Err(Error::invalid(format!("generator {p} is not homogeneous of positive degree"))),
            }
        }
        Ok(GeneratorTable {
            provenance: vec![provenance; polys.len()],
            degrees,
            explicit: Some(polys),
            complete_through,
        })
    }

    pub fn covers(&self, d: u32) -> bool {
        self.complete_through.is_none_or(|c| d <= c)
    }

    /// Minimal generators of a finite group's invariants up to `max_degree`.
    pub fn computed_for_finite(group: &FiniteGroup, max_degree: u32) -> Result<Self> {
        let gens = group.minimal_generators(max_degree)?;
        Self::from_polynomials(gens, Provenance::Computed, Some(max_degree))
    }

    /// Upper bounds on generator counts from `I(d)`: in a domain, multiplying
    /// by a generator of degree `a < d` embeds `I(d - a)` into the
    /// decomposables of degree `d`.
    pub fn computed_upper_bound(dims: &[Int], max_degree: u32) -> Self {
        let mut degrees = Vec::new();
        for d in 1..=max_degree as usize {
            let best = degrees
                .iter()
                .map(|&a: &u32| dims[d - a as usize].clone())
                .max()
                .unwrap_or(Int::ZERO);
            let mut extra = dims[d].clone();
            extra -= &best;
            let count = if extra.is_positive() { extra.to_u64().unwrap_or(0) } else { 0 };
            for _ in 0..count {
                degrees.push(d as u32);
            }
        }
        Self::from_degrees(degrees, Provenance::Computed, Some(max_degree))
    }
}

/// Multisets of pairs (generator index, nonzero alpha) with `|alpha|` equal
/// to the generator degree and alphas summing to `beta`.
fn pair_items(degrees: &[u32], beta: &[u32]) -> Vec<(usize, Vec<u32>)> {
    let mut items = Vec::new();
    for (j, &d) in degrees.iter().enumerate() {
        for alpha in compositions(d, beta.len()) {
            if alpha.iter().zip(beta).all(|(a, b)| a <= b) {
                items.push((j, alpha));
            }
        }
    }
    items
}

/// `N(beta)`: the number of factorization multisets; an upper bound for the
/// dimension of the polarization subalgebra in degree `beta`.
pub fn pol_upper_bound(table: &GeneratorTable, beta: &[u32]) -> u128 {
    let k = beta.len();
    let radix: Vec<usize> = beta.iter().map(|&b| b as usize + 1).collect();
    let size: usize = radix.iter().product();
    let index = |g: &[u32]| -> usize {
        g.iter()
            .zip(&radix)
            .fold(0, |acc, (&x, &r)| acc * r + x as usize)
    };
    let mut dp = vec![0u128; size];
    dp[0] = 1;
    let items = pair_items(&table.degrees, beta);
    let mut gamma = vec![0u32; k];
    for (_, alpha) in &items {
        // increasing mixed-radix order visits gamma - alpha before gamma
        for idx in 0..size {
            let mut rest = idx;
            for i in (0..k).rev() {
                gamma[i] = (rest % radix[i]) as u32;
                rest /= radix[i];
            }
            if gamma.iter().zip(alpha).all(|(g, a)| g >= a) {
                let prev: Vec<u32> = gamma.iter().zip(alpha).map(|(g, a)| g - a).collect();
                let add = dp[index(&prev)];
                dp[idx] = dp[idx].saturating_add(add);
            }
        }
    }
    dp[size - 1]
}

fn factorizations(items: &[(usize, Vec<u32>)], beta: &[u32]) -> Vec<Vec<usize>> {
    fn rec(
        items: &[(usize, Vec<u32>)],
        start: usize,
        rest: &mut Vec<u32>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.iter().all(|&r| r == 0) {
            out.push(chosen.clone());
            return;
        }
        for i in start..items.len() {
            let alpha = &items[i].1;
            if alpha.iter().zip(rest.iter()).all(|(a, r)| a <= r) {
                for (r, a) in rest.iter_mut().zip(alpha) {
                    *r -= a;
                }
                chosen.push(i);
                rec(items, i, rest, chosen, out);
                chosen.pop();
                for (r, a) in rest.iter_mut().zip(alpha) {
                    *r += a;
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(items, 0, &mut beta.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Polarizations of explicit generators into `k` copies, with the products
/// that span the polarization subalgebra in each multidegree.
pub struct PolarizedGenerators {
    k: usize,
    degrees: Vec<u32>,
    pieces: Vec<BTreeMap<Vec<u32>, Polynomial>>,
    points: Mutex<Vec<Vec<u64>>>,
    seed: u64,
}

impl PolarizedGenerators {
    pub fn new(gens: &[Polynomial], k: usize) -> Result<Self> {
        let mut pieces = Vec::with_capacity(gens.len());
        let mut degrees = Vec::with_capacity(gens.len());
        for g in gens {
            degrees.push(g.homogeneous_degree().ok_or(Error::NotHomogeneous)?);
            pieces.push(polarize(g, k)?);
        }
        Ok(PolarizedGenerators {
            k,
            degrees,
            pieces,
            points: Mutex::new(Vec::new()),
            seed: 0x9e37_79b9,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn items(&self, beta: &[u32]) -> Vec<(usize, Vec<u32>)> {
        pair_items(&self.degrees, beta)
    }

    /// All products of polarized generators of multidegree `beta`.
    pub fn products(&self, beta: &[u32]) -> Vec<Polynomial> {
        let items = self.items(beta);
        let shape = self
            .pieces
            .first()
            .and_then(|m| m.values().next())
            .map(|p| p.shape());
        let Some(shape) = shape else { return Vec::new() };
        factorizations(&items, beta)
            .into_par_iter()
            .map(|f| {
                f.iter().fold(Polynomial::one(shape), |acc, &i| {
                    let (j, alpha) = &items[i];
                    acc.mul(&self.pieces[*j][alpha])
                })
            })
            .filter(|p| !p.is_zero())
            .collect()
    }

    fn ensure_points(&self, count: usize, nvars: usize) -> Vec<Vec<u64>> {
        let mut pts = self.points.lock().expect("points lock");
        if pts.len() < count {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ pts.len() as u64);
            while pts.len() < count {
                pts.push((0..nvars).map(|_| rng.gen_range(1..MODULUS)).collect());
            }
        }
        pts[..count].to_vec()
    }

    /// Lower bound on the span dimension from values at random points modulo
    /// a prime; `None` when a coefficient is not defined mod the prime.
    pub fn span_lower_bound(&self, beta: &[u32], columns: usize) -> Option<usize> {
        let items = self.items(beta);
        let facts = factorizations(&items, beta);
        if facts.is_empty() {
            return Some(0);
        }
        let shape = self.pieces.first()?.values().next()?.shape();
        let points = self.ensure_points(columns.max(1), shape.num_vars());
        // values[item][point]
        let mut values = Vec::with_capacity(items.len());
        for (j, alpha) in &items {
            let p = &self.pieces[*j][alpha];
            let row: Option<Vec<u64>> = points.iter().map(|pt| p.evaluate_mod(pt, MODULUS)).collect();
            values.push(row?);
        }
        let rows: Vec<Vec<u64>> = facts
            .iter()
            .map(|f| {
                (0..points.len())
                    .map(|c| f.iter().fold(1u64, |acc, &i| mulmod(acc, values[i][c], MODULUS)))
                    .collect()
            })
            .collect();
        Some(rank_mod(rows, MODULUS))
    }

    /// Exact dimension of the span of the products.
    pub fn exact_span(&self, beta: &[u32]) -> (usize, EchelonBasis) {
        let mut basis = EchelonBasis::new();
        for p in self.products(beta) {
            basis.insert(&p);
        }
        (basis.rank(), basis)
    }
}

/// Exact dimension of the polarization subalgebra in degree `beta`.
pub fn exact_pol_span(gens: &[Polynomial], beta: &[u32]) -> Result<usize> {
    let pg = PolarizedGenerators::new(gens, beta.len())?;
    Ok(pg.exact_span(beta).0)
}

/// Dimensions of `C[kV]^G` by multidegree.
pub trait InvariantDims: Send + Sync {
    fn k(&self) -> usize;
    fn dim(&self, beta: &[u32]) -> Result<Int>;
}

pub struct CharacterDims {
    k: usize,
    graded: GradedInvariants,
}

impl CharacterDims {
    pub fn new(rep: &ResolvedRep, k: usize) -> Result<Self> {
        let chi = rep
            .character()
            .ok_or_else(|| Error::invalid("representation has no character"))?;
        Ok(CharacterDims {
            k,
            graded: GradedInvariants::copies(chi, k),
        })
    }
}

impl InvariantDims for CharacterDims {
    fn k(&self) -> usize {
        self.k
    }

    fn dim(&self, beta: &[u32]) -> Result<Int> {
        self.graded.dim(beta)
    }
}

pub struct MolienDims {
    k: usize,
    group: Arc<FiniteGroup>,
}

impl MolienDims {
    pub fn new(group: Arc<FiniteGroup>, k: usize) -> Self {
        MolienDims { k, group }
    }
}

impl InvariantDims for MolienDims {
    fn k(&self) -> usize {
        self.k
    }

    fn dim(&self, beta: &[u32]) -> Result<Int> {
        Ok(Int::from(self.group.molien_dim(beta)?))
    }
}

pub fn invariant_dims_for(rep: &ResolvedRep, k: usize) -> Result<Box<dyn InvariantDims>> {
    match &rep.group {
        RepGroup::Finite(g) => Ok(Box::new(MolienDims::new(g.clone(), k))),
        _ => Ok(Box::new(CharacterDims::new(rep, k)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    HoldsUpTo(u32),
    FailsAt {
        beta: Vec<u32>,
        dim_invariants: Int,
        pol_dim: u128,
        witness: Option<Polynomial>,
    },
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// `exact`, `bound`, or `criterion(<name>)`.
    pub backend: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::HoldsUpTo(d) => write!(f, "holds up to degree {d} ({})", self.backend),
            Status::FailsAt {
                beta,
                dim_invariants,
                pol_dim,
                ..
            } => write!(
                f,
                "fails at {beta:?}: invariants {dim_invariants}, polarizations {pol_dim} ({})",
                self.backend
            ),
            Status::Inconclusive(r) => write!(f, "inconclusive: {r} ({})", self.backend),
        }
    }
}

/// What a backend needs beyond the dimensions.
pub struct CheckContext<'a> {
    pub rep: &'a ResolvedRep,
    pub k: usize,
    pub max_degree: u32,
    pub generators: Option<&'a GeneratorTable>,
    pub sampler: Option<&'a dyn GroupSampler>,
}

/// Per-run state prepared by a backend.
pub trait PreparedBackend: Send + Sync {
    /// Dimension (or upper bound) of the polarization subalgebra at `beta`;
    /// `target` is the invariant dimension there.
    fn pol_dim(&self, beta: &[u32], target: &Int) -> Result<u128>;
    /// Invariant of degree `beta` outside the polarization subalgebra.
    fn witness(&self, _beta: &[u32]) -> Result<Option<Polynomial>> {
        Ok(None)
    }
}

/// A strategy for the polarization side of the comparison.
pub trait PolBackend: Send + Sync {
    fn name(&self) -> &'static str;
    /// Whether agreement in every degree certifies the property up to `D`.
    fn certifies_holds(&self) -> bool;
    /// `Err(reason)` makes the verdict inconclusive.
    fn prepare(&self, ctx: &CheckContext<'_>) -> std::result::Result<Box<dyn PreparedBackend>, String>;
}

pub struct ExactBackend;
pub struct BoundBackend;

struct PreparedExact {
    polarized: PolarizedGenerators,
    group: Option<Arc<FiniteGroup>>,
}

impl PreparedBackend for PreparedExact {
    fn pol_dim(&self, beta: &[u32], target: &Int) -> Result<u128> {
        let target = target.to_u64().unwrap_or(u64::MAX) as usize;
        if let Some(lb) = self.polarized.span_lower_bound(beta, target + 2) {
            if lb >= target {
                // the polarization subalgebra lies inside the invariants
                return Ok(target as u128);
            }
        }
        Ok(self.polarized.exact_span(beta).0 as u128)
    }

    fn witness(&self, beta: &[u32]) -> Result<Option<Polynomial>> {
        let Some(group) = &self.group else { return Ok(None) };
        let (_, basis) = self.polarized.exact_span(beta);
        for b in group.invariant_basis(beta)? {
            if !basis.contains(&b) {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }
}

fn verify_invariance(ctx: &CheckContext<'_>, gens: &[Polynomial]) -> std::result::Result<(), String> {
    if gens.is_empty() {
        return Ok(());
    }
    for (i, g) in gens.iter().enumerate() {
        if g.shape().dim != ctx.rep.dim {
            return Err(format!(
                "generator {} lives on a space of dimension {}, the module has dimension {}",
                i + 1,
                g.shape().dim,
                ctx.rep.dim
            ));
        }
    }
    match (&ctx.rep.group, ctx.sampler) {
        (RepGroup::Finite(group), _) => {
            for (i, g) in gens.iter().enumerate() {
                if &group.reynolds(g) != g {
                    return Err(format!("generator {} is not Reynolds-fixed", i + 1));
                }
            }
            Ok(())
        }
        (_, Some(sampler)) => {
            if sampler.dim() != ctx.rep.dim {
                return Err(format!(
                    "sampler {} acts on dimension {}, the module has dimension {}",
                    sampler.name(),
                    sampler.dim(),
                    ctx.rep.dim
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for (i, g) in gens.iter().enumerate() {
                if first_moving_sample(g, sampler, INVARIANCE_SAMPLES, &mut rng).is_some() {
                    return Err(format!("generator {} is moved by a sampled group element", i + 1));
                }
            }
            Ok(())
        }
        (_, None) => Err("invariance of the explicit generators cannot be verified (no group sampler)".into()),
    }
}

impl PolBackend for ExactBackend {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn certifies_holds(&self) -> bool {
        true
    }

    fn prepare(&self, ctx: &CheckContext<'_>) -> std::result::Result<Box<dyn PreparedBackend>, String> {
        let computed;
        let table = match (ctx.generators, ctx.rep.finite_group()) {
            (Some(t), _) if t.explicit.is_some() => t,
            (_, Some(group)) => {
                computed = GeneratorTable::computed_for_finite(group, ctx.max_degree)
                    .map_err(|e| e.to_string())?;
                &computed
            }
            _ => return Err("no explicit generators available for the exact backend".into()),
        };
        let gens = table.explicit.as_ref().expect("explicit generators");
        verify_invariance(ctx, gens)?;
        let polarized = PolarizedGenerators::new(gens, ctx.k).map_err(|e| e.to_string())?;
        Ok(Box::new(PreparedExact {
            polarized,
            group: ctx.rep.finite_group().cloned(),
        }))
    }
}

struct PreparedBound(GeneratorTable);

impl PreparedBackend for PreparedBound {
    fn pol_dim(&self, beta: &[u32], _target: &Int) -> Result<u128> {
        Ok(pol_upper_bound(&self.0, beta))
    }
}

impl PolBackend for BoundBackend {
    fn name(&self) -> &'static str {
        "bound"
    }

    fn certifies_holds(&self) -> bool {
        false
    }

    fn prepare(&self, ctx: &CheckContext<'_>) -> std::result::Result<Box<dyn PreparedBackend>, String> {
        match ctx.generators {
            Some(t) => Ok(Box::new(PreparedBound(t.clone()))),
            None => Err("no generator degrees available for the bound backend".into()),
        }
    }
}

/// Backends selectable by name.
pub struct BackendRegistry {
    backends: Vec<Box<dyn PolBackend>>,
}

impl Default for BackendRegistry {
    fn default() -> Self {
        let mut r = BackendRegistry { backends: Vec::new() };
        r.register(Box::new(ExactBackend));
        r.register(Box::new(BoundBackend));
        r
    }
}

impl BackendRegistry {
    pub fn register(&mut self, b: Box<dyn PolBackend>) {
        self.backends.retain(|x| x.name() != b.name());
        self.backends.push(b);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.backends.iter().map(|b| b.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn PolBackend> {
        self.backends.iter().find(|b| b.name() == name).map(|b| b.as_ref())
    }

    /// `auto`: exact when explicit generators exist (always for finite
    /// groups), otherwise the degree bound.
    pub fn resolve(&self, name: &str, ctx: &CheckContext<'_>) -> Result<&dyn PolBackend> {
        if name == "auto" {
            let exact = ctx.rep.finite_group().is_some()
                || ctx.generators.is_some_and(|t| t.explicit.is_some());
            return self
                .get(if exact { "exact" } else { "bound" })
                .ok_or_else(|| Error::invalid("backend not registered"));
        }
        self.get(name).ok_or_else(|| {
            Error::invalid(format!(
                "unknown backend '{name}'; available: auto, {}",
                self.names().join(", ")
            ))
        })
    }
}

/// Multidegrees with `|beta| = d`, ascending lexicographically.
pub fn multidegrees_of_total(d: u32, k: usize) -> Vec<Vec<u32>> {
    let mut v = compositions(d, k);
    v.reverse();
    v
}

/// Scans every `beta` with `|beta| <= max_degree` and reports the first
/// strict deficit.
pub fn check_k_polarization(
    ctx: &CheckContext<'_>,
    dims: &dyn InvariantDims,
    backend: &dyn PolBackend,
) -> Result<Verdict> {
    if dims.k() != ctx.k {
        return Err(Error::invalid("dimension source built for a different k"));
    }
    let name = backend.name().to_string();
    let inconclusive = |reason: String| Verdict {
        status: Status::Inconclusive(reason),
        backend: name.clone(),
    };
    if ctx.k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let prepared = match backend.prepare(ctx) {
        Ok(p) => p,
        Err(reason) => return Ok(inconclusive(reason)),
    };
    for d in 1..=ctx.max_degree {
        if let Some(t) = ctx.generators {
            if !t.covers(d) && (backend.name() != "exact" || ctx.rep.finite_group().is_none()) {
                return Ok(inconclusive(format!(
                    "generator table is complete only through degree {}",
                    t.complete_through.unwrap_or(0)
                )));
            }
        }
        let layer = multidegrees_of_total(d, ctx.k);
        let results: Vec<Result<(Int, u128)>> = layer
            .par_iter()
            .map(|beta| {
                let dim = dims.dim(beta)?;
                if dim.is_zero() {
                    return Ok((dim, 0));
                }
                let pol = prepared.pol_dim(beta, &dim)?;
                Ok((dim, pol))
            })
            .collect();
        for (beta, r) in layer.iter().zip(results) {
            let (dim, pol) = r?;
            let dim_u = dim.to_u64().map(u128::from).unwrap_or(u128::MAX);
            if backend.certifies_holds() && pol > dim_u {
                return Err(Error::consistency(format!(
                    "polarization span {pol} exceeds the invariant dimension {dim} at {beta:?}"
                )));
            }
            if pol < dim_u {
                let witness = prepared.witness(beta)?;
                return Ok(Verdict {
                    status: Status::FailsAt {
                        beta: beta.clone(),
                        dim_invariants: dim,
                        pol_dim: pol,
                        witness,
                    },
                    backend: name,
                });
            }
        }
    }
    if backend.certifies_holds() {
        Ok(Verdict {
            status: Status::HoldsUpTo(ctx.max_degree),
            backend: name,
        })
    } else {
        Ok(inconclusive(format!(
            "bound met through degree {}; no exact span available",
            ctx.max_degree
        )))
    }
}

/// One row of the generator ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRow {
    pub beta: Vec<u32>,
    pub dim: Int,
    /// Lower bound on the number of minimal generators in this degree.
    pub generators_at_least: Int,
}

/// `dim A_beta` minus an upper bound on the decomposables: the sum over
/// unordered splits `beta' + beta''` of `dim A_beta' * dim A_beta''`, with
/// `n(n+1)/2` for a split into two equal halves.
pub fn generator_lower_bound(dims: &dyn Fn(&[u32]) -> Result<Int>, beta: &[u32]) -> Result<Int> {
    let total = dims(beta)?;
    let mut decomposable = Int::ZERO;
    let mut part = vec![0u32; beta.len()];
    loop {
        // advance part through all 0 <= part <= beta in mixed radix
        let mut i = 0;
        loop {
            if i == beta.len() {
                let lb = total - decomposable;
                return Ok(if lb.is_positive() { lb } else { Int::ZERO });
            }
            if part[i] < beta[i] {
                part[i] += 1;
                break;
            }
            part[i] = 0;
            i += 1;
        }
        let other: Vec<u32> = beta.iter().zip(&part).map(|(b, p)| b - p).collect();
        if other.iter().all(|&x| x == 0) || part > other {
            continue;
        }
        let a = dims(&part)?;
        if a.is_zero() {
            continue;
        }
        if part == other {
            let mut sq = &a * &a;
            sq += &a;
            decomposable += sq.div_exact(2).expect("n(n+1) is even");
        } else {
            decomposable.add_mul(&a, &dims(&other)?);
        }
    }
}

/// `I(d)` and generator lower bounds for `d <= max_degree` on one copy.
pub fn generator_ledger(rep: &ResolvedRep, max_degree: u32) -> Result<Vec<LedgerRow>> {
    let src = invariant_dims_for(rep, 1)?;
    let dims = |b: &[u32]| src.dim(b);
    (1..=max_degree)
        .map(|d| {
            let beta = vec![d];
            Ok(LedgerRow {
                dim: dims(&beta)?,
                generators_at_least: generator_lower_bound(&dims, &beta)?,
                beta,
            })
        })
        .collect()
}

/// Bigraded ledger for a split `V = V_1 + V_2` of the module into two
/// isotypic parts.
pub fn bigraded_ledger(rep: &ResolvedRep, first: usize, second: usize, max_degree: u32) -> Result<Vec<LedgerRow>> {
    let graded = GradedInvariants::blocks(&[rep.isotypic_character(first)?, rep.isotypic_character(second)?])?;
    let dims = |b: &[u32]| graded.dim(b);
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for beta in multidegrees_of_total(d, 2) {
            out.push(LedgerRow {
                dim: dims(&beta)?,
                generators_at_least: generator_lower_bound(&dims, &beta)?,
                beta,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Fired(String),
    NotFired(String),
    NotEvaluable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub name: &'static str,
    pub outcome: Outcome,
}

/// Data a criterion may need that is not derivable from the module.
#[derive(Clone, Debug, Default)]
pub struct CriteriaInput {
    pub max_degree: u32,
    pub generator_degrees: Option<Vec<u32>>,
    pub krull_dim_two_copies: Option<u64>,
    /// `false` when the Krull dimension is only a lower bound.
    pub krull_is_exact: bool,
    pub two_copies_coregular: Option<bool>,
}

pub trait Criterion: Send + Sync {
    fn name(&self) -> &'static str;
    fn evaluate(&self, rep: &ResolvedRep, input: &CriteriaInput) -> Result<Outcome>;
}

/// An `SL_2` module containing `R_j` with `j` odd.
pub struct OddSl2Summand;
/// A balanced `C^*` module with `q(V) >= 2`.
pub struct BalancedTorus;
/// A module of a rank-one simple group with `q(V) >= 3`.
pub struct RankOneQ3;
/// An irreducible symplectic summand whose invariants have only even degrees.
pub struct SymplecticSummand;
/// A positive lower bound on minimal generators of bidegree `(a, b)`,
/// `ab >= 2`, for a split into two isotypic components.
pub struct BihomogeneousGenerator;
/// `sum (m_i + 1)` below the Krull dimension of `C[2V]^G`, or equal to it
/// with `2V` not coregular.
pub struct GeneratorCount;

fn is_a1(rep: &ResolvedRep) -> bool {
    rep.root_system().is_some_and(|rs| rs.letter() == 'A' && rs.rank() == 1)
}

impl Criterion for OddSl2Summand {
    fn name(&self) -> &'static str {
        "odd-sl2-summand"
    }

    fn evaluate(&self, rep: &ResolvedRep, _: &CriteriaInput) -> Result<Outcome> {
        if !is_a1(rep) {
            return Ok(Outcome::NotFired("group is not A1".into()));
        }
        Ok(match rep.summands.iter().find(|s| s.weight[0] % 2 == 1) {
            Some(s) => Outcome::Fired(format!("summand R{} has odd highest weight", s.weight[0])),
            None => Outcome::NotFired("all summands have even highest weight".into()),
        })
    }
}

impl Criterion for BalancedTorus {
    fn name(&self) -> &'static str {
        "balanced-torus"
    }

    fn evaluate(&self, rep: &ResolvedRep, _: &CriteriaInput) -> Result<Outcome> {
        if !matches!(rep.group, RepGroup::Torus(1)) {
            return Ok(Outcome::NotFired("group is not a one-dimensional torus".into()));
        }
        let chi = rep.character().expect("torus character");
        for (w, m) in chi.terms() {
            if chi.multiplicity(&-w) != *m {
                return Ok(Outcome::NotFired(format!("weight {} is not balanced", w[0])));
            }
        }
        let q = rep.q_value().unwrap_or(0);
        Ok(if q >= 2 {
            Outcome::Fired(format!("balanced with q(V) = {q}"))
        } else {
            Outcome::NotFired(format!("balanced with q(V) = {q} < 2"))
        })
    }
}

impl Criterion for RankOneQ3 {
    fn name(&self) -> &'static str {
        "rank-one-q3"
    }

    fn evaluate(&self, rep: &ResolvedRep, _: &CriteriaInput) -> Result<Outcome> {
        if !rep.root_system().is_some_and(|rs| rs.rank() == 1) {
            return Ok(Outcome::NotFired("group is not simple of rank one".into()));
        }
        let q = rep.q_value().unwrap_or(0);
        Ok(if q >= 3 {
            Outcome::Fired(format!("q(V) = {q}"))
        } else {
            Outcome::NotFired(format!("q(V) = {q} < 3"))
        })
    }
}

impl Criterion for SymplecticSummand {
    fn name(&self) -> &'static str {
        "symplectic-summand"
    }

    fn evaluate(&self, rep: &ResolvedRep, input: &CriteriaInput) -> Result<Outcome> {
        let Some(rs) = rep.root_system() else {
            return Ok(match rep.group {
                RepGroup::Torus(_) => Outcome::NotFired("torus modules have no symplectic irreducible summand".into()),
                _ => Outcome::NotEvaluable("no character for a finite group".into()),
            });
        };
        if rs.rank() == 1 {
            return Ok(Outcome::NotFired("rank one: decided by odd-sl2-summand".into()));
        }
        for s in &rep.summands {
            if s.weight.is_zero() {
                continue;
            }
            let chi = crate::rootsys::irrep_character(rs, &s.weight)?;
            if frobenius_indicator(&chi)? != -1 {
                continue;
            }
            let odd = (1..=input.max_degree)
                .step_by(2)
                .find(|&d| invariant_dim(&chi, d as usize).map(|x| !x.is_zero()).unwrap_or(true));
            match odd {
                None => {
                    return Ok(Outcome::Fired(format!(
                        "summand {} is symplectic with no invariants of odd degree <= {}",
                        s.weight, input.max_degree
                    )))
                }
                Some(d) => {
                    return Ok(Outcome::NotFired(format!(
                        "symplectic summand {} has invariants in odd degree {d}",
                        s.weight
                    )))
                }
            }
        }
        Ok(Outcome::NotFired("no symplectic irreducible summand".into()))
    }
}

impl Criterion for BihomogeneousGenerator {
    fn name(&self) -> &'static str {
        "bihomogeneous-generator"
    }

    fn evaluate(&self, rep: &ResolvedRep, input: &CriteriaInput) -> Result<Outcome> {
        if rep.finite_group().is_some() {
            return Ok(Outcome::NotEvaluable("no isotypic split for a finite group".into()));
        }
        let parts = rep.nontrivial_summands();
        if parts.len() != 2 {
            return Ok(Outcome::NotFired(format!(
                "{} nontrivial isotypic components, the criterion needs exactly two",
                parts.len()
            )));
        }
        for row in bigraded_ledger(rep, parts[0], parts[1], input.max_degree)? {
            let (a, b) = (row.beta[0], row.beta[1]);
            if a * b >= 2 && row.generators_at_least.is_positive() {
                return Ok(Outcome::Fired(format!(
                    "at least {} minimal generator(s) of bidegree ({a},{b})",
                    row.generators_at_least
                )));
            }
        }
        Ok(Outcome::NotFired(format!(
            "no positive generator lower bound with ab >= 2 through degree {}",
            input.max_degree
        )))
    }
}

impl Criterion for GeneratorCount {
    fn name(&self) -> &'static str {
        "generator-count"
    }

    fn evaluate(&self, _rep: &ResolvedRep, input: &CriteriaInput) -> Result<Outcome> {
        let (Some(degs), Some(krull)) = (&input.generator_degrees, input.krull_dim_two_copies) else {
            return Ok(Outcome::NotEvaluable(
                "needs catalog generator degrees and the Krull dimension of C[2V]^G".into(),
            ));
        };
        let s: u64 = degs.iter().map(|&m| m as u64 + 1).sum();
        Ok(if s < krull {
            Outcome::Fired(format!("sum (m_i + 1) = {s} < {krull}"))
        } else if s == krull && input.krull_is_exact && input.two_copies_coregular == Some(false) {
            Outcome::Fired(format!("sum (m_i + 1) = {s} = {krull} and 2V is not coregular"))
        } else {
            Outcome::NotFired(format!("sum (m_i + 1) = {s}, Krull dimension {krull}"))
        })
    }
}

pub struct CriteriaRegistry {
    criteria: Vec<Box<dyn Criterion>>,
}

impl Default for CriteriaRegistry {
    fn default() -> Self {
        CriteriaRegistry {
            criteria: vec![
                Box::new(OddSl2Summand),
                Box::new(BalancedTorus),
                Box::new(RankOneQ3),
                Box::new(SymplecticSummand),
                Box::new(BihomogeneousGenerator),
                Box::new(GeneratorCount),
            ],
        }
    }
}

impl CriteriaRegistry {
    pub fn register(&mut self, c: Box<dyn Criterion>) {
        self.criteria.retain(|x| x.name() != c.name());
        self.criteria.push(c);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.criteria.iter().map(|c| c.name()).collect()
    }

    /// Every criterion concerns the 2-polarization property, whose failure
    /// implies failure for all larger `k`; nothing is evaluated for `k < 2`.
    pub fn evaluate(&self, rep: &ResolvedRep, k: usize, input: &CriteriaInput) -> Result<Vec<CriterionResult>> {
        self.criteria
            .iter()
            .map(|c| {
                let outcome = if k < 2 {
                    Outcome::NotFired("every module has the 1-polarization property".into())
                } else {
                    c.evaluate(rep, input)?
                };
                Ok(CriterionResult { name: c.name(), outcome })
            })
            .collect()
    }
}

pub fn quick_criteria(rep: &ResolvedRep, k: usize, input: &CriteriaInput) -> Result<Vec<CriterionResult>> {
    CriteriaRegistry::default().evaluate(rep, k, input)
}

fn exact_fail_degree(v: &Verdict) -> Option<u32> {
    match &v.status {
        Status::FailsAt { beta, .. } if v.backend == "exact" || v.backend == "bound" => Some(beta.iter().sum()),
        _ => None,
    }
}

/// A submodule failing in degree `<= D` while the whole module holds up to
/// `D` is impossible.
pub fn check_submodule_consistency(sub: &Verdict, full: &Verdict) -> Result<()> {
    if let (Some(d), Status::HoldsUpTo(bound)) = (exact_fail_degree(sub), &full.status) {
        if full.backend == "exact" && d <= *bound {
            return Err(Error::consistency(format!(
                "submodule fails in degree {d} but the module holds up to degree {bound}"
            )));
        }
    }
    Ok(())
}

/// Failure at `k` forces failure at `k + 1` in the same degree window.
pub fn check_k_monotonicity(at_k: &Verdict, at_next: &Verdict) -> Result<()> {
    if let (Some(d), Status::HoldsUpTo(bound)) = (exact_fail_degree(at_k), &at_next.status) {
        if at_next.backend == "exact" && d <= *bound {
            return Err(Error::consistency(format!(
                "fails at k in degree {d} but holds up to degree {bound} at k + 1"
            )));
        }
    }
    Ok(())
}

/// Scalar-multiple-free helper for reports: rescales a witness to have
/// coprime integer coefficients with positive leading term.
pub fn normalize_witness(p: &Polynomial) -> Polynomial {
    use num_integer::Integer;
    let Some(lead) = p.terms().values().next_back() else { return p.clone() };
    let lcm = p
        .terms()
        .values()
        .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let scaled = p.scale(&Rational::from_integer(lcm));
    let g = scaled
        .terms()
        .values()
        .fold(num_bigint::BigInt::from(0), |acc, c| acc.gcd(c.numer()));
    let sign = if lead.numer() < &num_bigint::BigInt::from(0) { -1 } else { 1 };
    scaled.scale(&Rational::new(num_bigint::BigInt::from(sign), g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::{builtin_group, DEFAULT_GROUP_CAP};
    use crate::rep::{parse_repspec, resolve};
    use crate::sampler::{named_polynomial, sampler_by_name};

    fn rep(s: &str) -> ResolvedRep {
        resolve(&parse_repspec(s).unwrap()).unwrap()
    }

    #[test]
    fn bound_examples() {
        let t = GeneratorTable::from_degrees(vec![2, 8], Provenance::Paper, Some(8));
        assert_eq!(pol_upper_bound(&t, &[2, 2]), 2);
        let t = GeneratorTable::from_degrees(vec![12, 18], Provenance::Paper, Some(18));
        assert_eq!(pol_upper_bound(&t, &[3, 3]), 0);
        let t = GeneratorTable::from_degrees(vec![2], Provenance::Paper, None);
        assert_eq!(pol_upper_bound(&t, &[4, 0]), 1);
        assert_eq!(pol_upper_bound(&t, &[0, 0]), 1);
    }

    #[test]
    fn bound_matches_enumeration() {
        let t = GeneratorTable::from_degrees(vec![2, 3, 3, 4], Provenance::Computed, None);
        for beta in [vec![2, 2], vec![3, 3], vec![4, 2], vec![2, 2, 2], vec![3, 1, 2]] {
            let items = pair_items(&t.degrees, &beta);
            assert_eq!(pol_upper_bound(&t, &beta), factorizations(&items, &beta).len() as u128);
        }
    }

    #[test]
    fn exact_span_examples() {
        let det = named_polynomial("det(2)").unwrap();
        assert_eq!(exact_pol_span(&[det.clone()], &[1, 1]).unwrap(), 1);
        let q = named_polynomial("quadratic_form(5)").unwrap();
        let q_table = GeneratorTable::from_degrees(vec![2], Provenance::Paper, None);
        assert_eq!(pol_upper_bound(&q_table, &[2, 2]), 2);
        assert_eq!(exact_pol_span(&[q.clone()], &[2, 2]).unwrap(), 2);
        assert_eq!(exact_pol_span(&[q], &[2, 0]).unwrap(), 1);
        assert_eq!(exact_pol_span(&[det], &[2, 0]).unwrap(), 1);
    }

    #[test]
    fn example_pair_of_vectors_fails() {
        let r = rep("A1: R1+R1");
        let table =
            GeneratorTable::from_polynomials(vec![named_polynomial("det(2)").unwrap()], Provenance::Paper, None)
                .unwrap();
        let sampler = sampler_by_name("sl(2)x2").unwrap();
        let ctx = CheckContext {
            rep: &r,
            k: 2,
            max_degree: 4,
            generators: Some(&table),
            sampler: Some(sampler.as_ref()),
        };
        let dims = invariant_dims_for(&r, 2).unwrap();
        let v = check_k_polarization(&ctx, dims.as_ref(), &ExactBackend).unwrap();
        assert_eq!(
            v.status,
            Status::FailsAt {
                beta: vec![1, 1],
                dim_invariants: Int::from(4),
                pol_dim: 1,
                witness: None
            }
        );
        // without a sampler the explicit generators cannot be trusted
        let ctx = CheckContext { sampler: None, ..ctx };
        let v = check_k_polarization(&ctx, dims.as_ref(), &ExactBackend).unwrap();
        assert!(matches!(v.status, Status::Inconclusive(_)));
    }

    #[test]
    fn orthogonal_plane_holds() {
        let r = rep("B2: phi1");
        let table = GeneratorTable::from_polynomials(
            vec![named_polynomial("quadratic_form(5)").unwrap()],
            Provenance::Paper,
            None,
        )
        .unwrap();
        let sampler = sampler_by_name("so(5)").unwrap();
        let ctx = CheckContext {
            rep: &r,
            k: 2,
            max_degree: 6,
            generators: Some(&table),
            sampler: Some(sampler.as_ref()),
        };
        let dims = invariant_dims_for(&r, 2).unwrap();
        let v = check_k_polarization(&ctx, dims.as_ref(), &ExactBackend).unwrap();
        assert_eq!(v.status, Status::HoldsUpTo(6));
        let v = check_k_polarization(&ctx, dims.as_ref(), &BoundBackend).unwrap();
        assert!(matches!(v.status, Status::Inconclusive(_)));
    }

    #[test]
    fn finite_group_exact_is_within_bound() {
        let r = rep("finite(weyl(B,2)): phi1");
        let g = r.finite_group().unwrap();
        let table = GeneratorTable::computed_for_finite(g, 6).unwrap();
        assert_eq!(table.degrees, vec![2, 4]);
        let pg = PolarizedGenerators::new(table.explicit.as_ref().unwrap(), 2).unwrap();
        for d in 1..=6 {
            for beta in multidegrees_of_total(d, 2) {
                let exact = pg.exact_span(&beta).0 as u128;
                assert!(exact <= pol_upper_bound(&table, &beta));
                assert_eq!(pg.span_lower_bound(&beta, exact as usize + 2), Some(exact as usize));
            }
        }
    }

    #[test]
    fn criteria_battery() {
        let fired = |s: &str| -> Vec<&'static str> {
            let input = CriteriaInput {
                max_degree: 8,
                ..Default::default()
            };
            quick_criteria(&rep(s), 2, &input)
                .unwrap()
                .into_iter()
                .filter(|c| matches!(c.outcome, Outcome::Fired(_)))
                .map(|c| c.name)
                .collect()
        };
        assert_eq!(fired("A1: R3"), vec!["odd-sl2-summand"]);
        assert_eq!(fired("torus(1): [1,-1,2,-2]"), vec!["balanced-torus"]);
        assert_eq!(fired("A1: R6"), vec!["rank-one-q3"]);
        assert_eq!(fired("B2: phi1"), Vec::<&str>::new());
        assert_eq!(fired("C3: phi3"), vec!["symplectic-summand"]);
        assert_eq!(fired("A1: R2+R4"), vec!["rank-one-q3", "bihomogeneous-generator"]);
    }

    #[test]
    fn ledger_examples() {
        let rows = generator_ledger(&rep("A3: [3,0,0]"), 8).unwrap();
        for r in &rows[..7] {
            assert!(r.dim.is_zero() && r.generators_at_least.is_zero());
        }
        assert_eq!(rows[7].generators_at_least, Int::ONE);
        let two = rep("B2: phi1*2");
        assert_eq!(two.nontrivial_summands().len(), 1);
        let torus = rep("torus(1): [1,-1]");
        let led = bigraded_ledger(&torus, 0, 1, 2).unwrap();
        let row = led.iter().find(|r| r.beta == vec![1, 1]).unwrap();
        assert_eq!(row.generators_at_least, Int::ONE);
    }

    #[test]
    fn consistency_faults() {
        let fail = Verdict {
            status: Status::FailsAt {
                beta: vec![1, 1],
                dim_invariants: Int::from(4),
                pol_dim: 1,
                witness: None,
            },
            backend: "exact".into(),
        };
        let holds = Verdict {
            status: Status::HoldsUpTo(4),
            backend: "exact".into(),
        };
        assert!(check_submodule_consistency(&fail, &holds).is_err());
        assert!(check_k_monotonicity(&fail, &holds).is_err());
        assert!(check_submodule_consistency(&holds, &fail).is_ok());
        let short = Verdict {
            status: Status::HoldsUpTo(1),
            backend: "exact".into(),
        };
        assert!(check_k_monotonicity(&fail, &short).is_ok());
    }

    #[test]
    fn d4_generators_and_witness_machinery() {
        let g = builtin_group("weyl(D,4)", DEFAULT_GROUP_CAP).unwrap();
        let t = GeneratorTable::computed_for_finite(&g, 6).unwrap();
        assert_eq!(t.degrees, vec![2, 4, 4, 6]);
    }
}
