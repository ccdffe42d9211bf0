//! Randomized cross-checks of the engine against brute-force oracles.
//!
//! Every suite draws its instances from a seeded ChaCha stream, so a run is
//! reproducible from `(seed, instances)`.

use crate::charalg::{
    decompose, decompose_by_alternation, ext_power, invariant_dim, sym_power, tensor, FormalCharacter,
    GradedInvariants,
};
use crate::error::Result;
use crate::fingrp::{builtin_group, generate_group, FiniteGroup, RatMatrix, DEFAULT_GROUP_CAP};
use crate::int::Int;
use crate::polyops::{
    coalgebra_check, monomials_of_multidegree, polarize, restitute, span_dimension, Monomial, Polynomial,
    Rational, VarShape,
};
use crate::rootsys::{build_root_system, irrep_character};
use crate::weight::Weight;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

/// Symmetric-power implementation under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SymPowerImpl {
    #[default]
    Newton,
    /// Newton recursion with the alternating sign of the exterior recursion;
    /// used for fault injection.
    FlippedSign,
}

impl SymPowerImpl {
    pub fn apply(self, chi: &FormalCharacter, d: usize) -> Result<FormalCharacter> {
        match self {
            SymPowerImpl::Newton => sym_power(chi, d),
            SymPowerImpl::FlippedSign => ext_power(chi, d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub instances: usize,
    /// Descriptions of failing instances (at most a few are kept).
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

type Instance = fn(&mut ChaCha8Rng, SymPowerImpl) -> Result<Option<String>>;

const SUITES: &[(&str, Instance)] = &[
    ("restitution", restitution_instance),
    ("coalgebra", coalgebra_instance),
    ("polarization-injectivity", injectivity_instance),
    ("molien-reynolds", molien_reynolds_instance),
    ("newton-plethysm", plethysm_instance),
    ("alternation-decompose", alternation_instance),
    ("torus-lattice-points", torus_instance),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(name: &str, instances: usize, seed: u64, sym: SymPowerImpl) -> Option<SuiteOutcome> {
    let (name, f) = SUITES.iter().find(|(n, _)| *n == name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut failure_count = 0;
    for i in 0..instances {
        let outcome = match f(&mut rng, sym) {
            Ok(None) => continue,
            Ok(Some(msg)) => msg,
            Err(e) => format!("error: {e}"),
        };
        failure_count += 1;
        if failures.len() < 3 {
            failures.push(format!("instance {i}: {outcome}"));
        }
    }
    Some(SuiteOutcome {
        name,
        instances,
        failures,
        failure_count,
    })
}

pub fn run_all(instances: usize, seed: u64, sym: SymPowerImpl) -> Vec<SuiteOutcome> {
    suite_names()
        .into_iter()
        .map(|n| run_suite(n, instances, seed, sym).expect("known suite"))
        .collect()
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> Monomial {
    let mut e: SmallVec<[u16; 16]> = SmallVec::from_elem(0, nvars);
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial(e)
}

/// Nonzero homogeneous polynomial on one copy of `C^dim`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, dim: usize, degree: u32) -> Polynomial {
    let shape = VarShape::new(1, dim);
    loop {
        let mut p = Polynomial::zero(shape);
        for _ in 0..rng.gen_range(1..=4) {
            let c = rng.gen_range(-3i64..=3);
            p.add_term(random_monomial(rng, dim, degree), Rational::from_integer(c.into()));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|_| {
            (0..dim)
                .map(|_| Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()))
                .collect()
        })
        .collect()
}

fn restitution_instance(rng: &mut ChaCha8Rng, _: SymPowerImpl) -> Result<Option<String>> {
    let dim = rng.gen_range(1..=3);
    let d = rng.gen_range(1..=4);
    let f = random_polynomial(rng, dim, d);
    let k = rng.gen_range(1..=3);
    let pieces = polarize(&f, k)?;
    let report = restitute(&f, &pieces, &random_points(rng, dim, 3));
    Ok((!report.passed()).then(|| format!("f = {f}, k = {k}, failing {:?}", report.failures)))
}

fn coalgebra_instance(rng: &mut ChaCha8Rng, _: SymPowerImpl) -> Result<Option<String>> {
    let dim = rng.gen_range(1..=3);
    let (df, dg) = (rng.gen_range(1..=3), rng.gen_range(1..=2));
    let f = random_polynomial(rng, dim, df);
    let g = random_polynomial(rng, dim, dg);
    let k = rng.gen_range(1..=3);
    let report = coalgebra_check(&f, &g, k)?;
    Ok((!report.passed()).then(|| format!("f = {f}, g = {g}, k = {k}")))
}

fn injectivity_instance(rng: &mut ChaCha8Rng, _: SymPowerImpl) -> Result<Option<String>> {
    let dim = rng.gen_range(1..=3);
    let d = rng.gen_range(1..=4);
    let f = random_polynomial(rng, dim, d);
    let g = if rng.gen_bool(0.25) {
        f.clone()
    } else {
        random_polynomial(rng, dim, d)
    };
    let k = d as usize;
    let (pf, pg) = (polarize(&f, k)?, polarize(&g, k)?);
    let full = vec![1u32; k];
    if pf[&full].is_zero() {
        return Ok(Some(format!("full polarization of {f} vanishes")));
    }
    let same_full = pf[&full] == pg[&full];
    Ok((same_full != (f == g)).then(|| format!("f = {f}, g = {g}: full polarizations equal = {same_full}")))
}

fn random_signed_permutation(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rows = vec![vec![Rational::from_integer(0.into()); n]; n];
    for (i, &j) in perm.iter().enumerate() {
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        rows[i][j] = Rational::from_integer(s.into());
    }
    RatMatrix::from_rows(rows).expect("square")
}

fn random_small_group(rng: &mut ChaCha8Rng) -> Result<FiniteGroup> {
    const NAMED: [&str; 5] = ["sym(2)", "sym(3)", "weyl(B,2)", "weyl(D,3)", "weyl(A,2)"];
    if rng.gen_bool(0.5) {
        builtin_group(NAMED[rng.gen_range(0..NAMED.len())], DEFAULT_GROUP_CAP)
    } else {
        let n = rng.gen_range(2..=3);
        let gens: Vec<RatMatrix> = (0..rng.gen_range(1..=2))
            .map(|_| random_signed_permutation(rng, n))
            .collect();
        generate_group(&gens, DEFAULT_GROUP_CAP)
    }
}

fn molien_reynolds_instance(rng: &mut ChaCha8Rng, _: SymPowerImpl) -> Result<Option<String>> {
    let group = random_small_group(rng)?;
    let k = rng.gen_range(1..=2);
    let total = rng.gen_range(0..=3u32);
    let mut beta = vec![0u32; k];
    for _ in 0..total {
        beta[rng.gen_range(0..k)] += 1;
    }
    let shape = VarShape::new(k, group.dim());
    let images: Vec<Polynomial> = monomials_of_multidegree(shape, &beta)
        .into_iter()
        .map(|m| group.reynolds(&Polynomial::from_terms(shape, [(m, Rational::from_integer(1.into()))])))
        .filter(|p| !p.is_zero())
        .collect();
    let span = span_dimension(&images, &beta)? as u64;
    let molien = group.molien_dim(&beta)?;
    Ok((span != molien).then(|| format!("group of order {} at {beta:?}: Molien {molien}, Reynolds span {span}", group.order())))
}

/// Torus character or a small irreducible of A1/A2.
fn random_character(rng: &mut ChaCha8Rng) -> Result<FormalCharacter> {
    match rng.gen_range(0..3) {
        0 => {
            let rank = rng.gen_range(1..=2);
            let ws: Vec<Weight> = (0..rng.gen_range(1..=4))
                .map(|_| Weight::from_slice(&(0..rank).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>()))
                .collect();
            FormalCharacter::torus(rank, &ws)
        }
        1 => irrep_character(&build_root_system('A', 1)?, &Weight::from_slice(&[rng.gen_range(1..=3)])),
        _ => {
            let w = [[1, 0], [0, 1], [1, 1], [2, 0]][rng.gen_range(0..4)];
            irrep_character(&build_root_system('A', 2)?, &Weight::from_slice(&w))
        }
    }
}

fn expanded_weights(chi: &FormalCharacter) -> Vec<Weight> {
    let mut out = Vec::new();
    for (w, m) in chi.sorted_terms() {
        for _ in 0..m.to_u64().expect("small multiplicity") {
            out.push(w.clone());
        }
    }
    out
}

/// Characters of `S^d` (repeats allowed) or `Lambda^d` by enumerating index
/// tuples.
fn brute_power(chi: &FormalCharacter, d: usize, strict: bool) -> FormalCharacter {
    let ws = expanded_weights(chi);
    let rank = chi.tag().lattice_rank();
    let mut out = FormalCharacter::empty(chi.tag().clone());
    fn rec(
        ws: &[Weight],
        start: usize,
        left: usize,
        strict: bool,
        acc: &Weight,
        out: &mut FormalCharacter,
    ) {
        if left == 0 {
            out.add_term(acc.clone(), Int::ONE);
            return;
        }
        for i in start..ws.len() {
            let next = acc + &ws[i];
            rec(ws, if strict { i + 1 } else { i }, left - 1, strict, &next, out);
        }
    }
    rec(&ws, 0, d, strict, &Weight::zero(rank), &mut out);
    out
}

fn plethysm_instance(rng: &mut ChaCha8Rng, sym: SymPowerImpl) -> Result<Option<String>> {
    let chi = random_character(rng)?;
    let d = rng.gen_range(1..=4);
    let s = sym.apply(&chi, d)?;
    if s.sorted_terms() != brute_power(&chi, d, false).sorted_terms() {
        return Ok(Some(format!("S^{d} of a {}-dimensional character", chi.dimension())));
    }
    let e = ext_power(&chi, d)?;
    if e.sorted_terms() != brute_power(&chi, d, true).sorted_terms() {
        return Ok(Some(format!("Lambda^{d} of a {}-dimensional character", chi.dimension())));
    }
    Ok(None)
}

fn alternation_instance(rng: &mut ChaCha8Rng, _: SymPowerImpl) -> Result<Option<String>> {
    let (letter, rank, top) = [('A', 1, 3), ('A', 2, 2), ('B', 2, 2), ('G', 2, 1), ('A', 3, 1)][rng.gen_range(0..5)];
    let rs = build_root_system(letter, rank)?;
    let mut weight = || Weight::from_slice(&(0..rank).map(|_| rng.gen_range(0..=top)).collect::<Vec<_>>());
    let (a, b) = (weight(), weight());
    let chi = tensor(&irrep_character(&rs, &a)?, &irrep_character(&rs, &b)?)?;
    let mut x = decompose(&chi)?;
    let mut y = decompose_by_alternation(&chi)?;
    x.sort();
    y.sort();
    Ok((x != y).then(|| format!("{letter}{rank}: {a} (x) {b}")))
}

fn torus_instance(rng: &mut ChaCha8Rng, _: SymPowerImpl) -> Result<Option<String>> {
    let rank = rng.gen_range(1..=2);
    let ws: Vec<Weight> = (0..rng.gen_range(1..=4))
        .map(|_| Weight::from_slice(&(0..rank).map(|_| rng.gen_range(-2..=2)).collect::<Vec<_>>()))
        .collect();
    let chi = FormalCharacter::torus(rank, &ws)?;
    let zero = Weight::zero(rank);
    // lattice points: monomials of each degree by weight
    let layer = |d: usize| brute_power(&chi, d, false);
    let d = rng.gen_range(0..=4);
    let brute = layer(d).multiplicity(&zero);
    let got = invariant_dim(&chi, d)?;
    if got != brute {
        return Ok(Some(format!("weights {ws:?}, degree {d}: {got} vs {brute}")));
    }
    let (a, b) = (rng.gen_range(0..=3usize), rng.gen_range(0..=3usize));
    let (la, lb) = (layer(a), layer(b));
    let mut pairs = Int::ZERO;
    for (w, m) in la.terms() {
        pairs.add_mul(m, &lb.multiplicity(&-w));
    }
    let graded = GradedInvariants::copies(&chi, 2).dim(&[a as u32, b as u32])?;
    Ok((graded != pairs).then(|| format!("weights {ws:?}, bidegree ({a},{b}): {graded} vs {pairs}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_a_short_run() {
        for s in run_all(20, 7, SymPowerImpl::Newton) {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures);
        }
    }

    #[test]
    fn flipped_newton_sign_is_caught() {
        let s = run_suite("newton-plethysm", 40, 7, SymPowerImpl::FlippedSign).unwrap();
        assert!(!s.passed());
    }
}
