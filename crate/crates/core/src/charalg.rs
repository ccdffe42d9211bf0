//! Formal characters and the invariant dimensions derived from them.
//!
//! A character is a sparse map from weights to positive multiplicities.
//! Symmetric and exterior powers are computed with the Newton recursion over
//! Adams operations; signed intermediate values are allowed only inside that
//! recursion and any negative multiplicity escaping it is a hard fault.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::rootsys::{irrep_character, RootSystem};
use crate::weight::Weight;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Entries below this size are convolved on the calling thread.
const PARALLEL_THRESHOLD: usize = 20_000;

#[derive(Clone)]
pub enum GroupTag {
    Simple(Arc<RootSystem>),
    Torus(usize),
}

impl GroupTag {
    pub fn lattice_rank(&self) -> usize {
        match self {
            GroupTag::Simple(rs) => rs.rank(),
            GroupTag::Torus(r) => *r,
        }
    }

    pub fn root_system(&self) -> Option<&Arc<RootSystem>> {
        match self {
            GroupTag::Simple(rs) => Some(rs),
            GroupTag::Torus(_) => None,
        }
    }
}

impl PartialEq for GroupTag {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupTag::Simple(a), GroupTag::Simple(b)) => a.letter() == b.letter() && a.rank() == b.rank(),
            (GroupTag::Torus(a), GroupTag::Torus(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Simple(rs) => write!(f, "{}", rs.name()),
            GroupTag::Torus(r) => write!(f, "torus({r})"),
        }
    }
}

impl fmt::Debug for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone)]
pub struct FormalCharacter {
    tag: GroupTag,
    terms: FxHashMap<Weight, Int>,
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalCharacter<{}>{{", self.tag)?;
        for (i, (w, m)) in self.sorted_terms().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}:{m}")?;
        }
        write!(f, "}}")
    }
}

impl PartialEq for FormalCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag && self.terms == other.terms
    }
}

impl FormalCharacter {
    pub fn empty(tag: GroupTag) -> Self {
        FormalCharacter {
            tag,
            terms: FxHashMap::default(),
        }
    }

    /// Character of the one-dimensional trivial module.
    pub fn trivial(tag: GroupTag) -> Self {
        let mut c = FormalCharacter::empty(tag.clone());
        c.terms.insert(Weight::zero(tag.lattice_rank()), Int::ONE);
        c
    }

    /// Torus character from a list of weights, repeated weights adding up.
    pub fn torus(rank: usize, weights: &[Weight]) -> Result<Self> {
        let mut c = FormalCharacter::empty(GroupTag::Torus(rank));
        for w in weights {
            if w.len() != rank {
                return Err(Error::WeightLength {
                    weight: w.to_string(),
                    got: w.len(),
                    expected: rank,
                });
            }
            c.add_term(w.clone(), Int::ONE);
        }
        Ok(c)
    }

    pub fn tag(&self) -> &GroupTag {
        &self.tag
    }

    /// Adds `m > 0` copies of weight `w`.
    pub fn add_term(&mut self, w: Weight, m: Int) {
        assert!(m.is_positive(), "characters store positive multiplicities only");
        *self.terms.entry(w).or_default() += &m;
    }

    pub fn multiplicity(&self, w: &Weight) -> Int {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn dimension(&self) -> Int {
        self.terms.values().cloned().sum()
    }

    /// Number of distinct weights.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Int)> {
        self.terms.iter()
    }

    /// Terms in a deterministic order.
    pub fn sorted_terms(&self) -> Vec<(Weight, Int)> {
        let mut v: Vec<(Weight, Int)> = self.terms.iter().map(|(w, m)| (w.clone(), m.clone())).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }

    /// Direct sum.
    pub fn sum(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.same_tag(other)?;
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_term(w.clone(), m.clone());
        }
        Ok(out)
    }

    /// `m` copies of this character.
    pub fn times(&self, m: u32) -> FormalCharacter {
        let mut out = FormalCharacter::empty(self.tag.clone());
        if m == 0 {
            return out;
        }
        let f = Int::from(m as i64);
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c * &f);
        }
        out
    }

    fn same_tag(&self, other: &FormalCharacter) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag.to_string(), other.tag.to_string()));
        }
        Ok(())
    }

    fn from_signed(tag: GroupTag, terms: FxHashMap<Weight, Int>, what: &str) -> Result<FormalCharacter> {
        let mut out = FxHashMap::default();
        for (w, m) in terms {
            if m.is_negative() {
                return Err(Error::consistency(format!("{what}: negative multiplicity {m} at weight {w}")));
            }
            if !m.is_zero() {
                out.insert(w, m);
            }
        }
        Ok(FormalCharacter { tag, terms: out })
    }

    /// `true` when multiplicities are invariant under every simple
    /// reflection. Torus characters are trivially symmetric.
    pub fn is_weyl_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<Weight> {
        let GroupTag::Simple(rs) = &self.tag else { return None };
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(b.0));
        for (w, m) in sorted {
            for i in 0..rs.rank() {
                let mut v = w.clone();
                rs.reflect_in_place(&mut v, i);
                if self.terms.get(&v) != Some(m) {
                    return Some(w.clone());
                }
            }
        }
        None
    }
}

fn merge_into(acc: &mut FxHashMap<Weight, Int>, other: FxHashMap<Weight, Int>) {
    for (w, m) in other {
        *acc.entry(w).or_default() += &m;
    }
}

/// Convolution of two weight multisets; the smaller operand is the outer loop.
fn convolve(a: &FxHashMap<Weight, Int>, b: &FxHashMap<Weight, Int>) -> FxHashMap<Weight, Int> {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let small: Vec<(&Weight, &Int)> = small.iter().collect();
    let big: Vec<(&Weight, &Int)> = big.iter().collect();
    let kernel = |chunk: &[(&Weight, &Int)]| {
        let mut out: FxHashMap<Weight, Int> = FxHashMap::default();
        out.reserve(chunk.len() * 2);
        for (u, x) in &small {
            for (v, y) in chunk {
                let s = *u + *v;
                out.entry(s).or_default().add_mul(x, y);
            }
        }
        out
    };
    if small.len() * big.len() < PARALLEL_THRESHOLD || rayon::current_num_threads() == 1 {
        return kernel(&big);
    }
    let chunk = big.len().div_ceil(rayon::current_num_threads() * 2).max(1);
    big.par_chunks(chunk)
        .map(kernel)
        .reduce(FxHashMap::default, |mut a, b| {
            if a.len() < b.len() {
                let mut b = b;
                merge_into(&mut b, a);
                return b;
            }
            merge_into(&mut a, b);
            a
        })
}

/// Weights negated.
pub fn dualize(chi: &FormalCharacter) -> FormalCharacter {
    FormalCharacter {
        tag: chi.tag.clone(),
        terms: chi.terms.iter().map(|(w, m)| (-w, m.clone())).collect(),
    }
}

pub fn tensor(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter> {
    a.same_tag(b)?;
    let mut terms = convolve(&a.terms, &b.terms);
    terms.retain(|_, m| !m.is_zero());
    Ok(FormalCharacter {
        tag: a.tag.clone(),
        terms,
    })
}

/// Every weight scaled by `m`.
pub fn adams(chi: &FormalCharacter, m: i64) -> Result<FormalCharacter> {
    if m <= 0 {
        return Err(Error::invalid(format!("Adams operation needs m >= 1, got {m}")));
    }
    let m = i32::try_from(m).map_err(|_| Error::invalid("Adams degree too large"))?;
    let mut out = FormalCharacter::empty(chi.tag.clone());
    for (w, c) in &chi.terms {
        out.add_term(w.scaled(m), c.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    Symmetric,
    Exterior,
}

/// Lazily extended sequence of symmetric (or exterior) powers of one
/// character, computed by the Newton recursion
/// `d * P^d = sum_{m=1..d} sign(m) * adams(chi, m) * P^{d-m}`.
pub struct PowerTower {
    kind: PowerKind,
    base: FormalCharacter,
    adams: Vec<FormalCharacter>,
    levels: Vec<Arc<FormalCharacter>>,
}

impl PowerTower {
    pub fn new(base: FormalCharacter, kind: PowerKind) -> Self {
        let trivial = FormalCharacter::trivial(base.tag.clone());
        PowerTower {
            kind,
            base,
            adams: Vec::new(),
            levels: vec![Arc::new(trivial)],
        }
    }

    pub fn base(&self) -> &FormalCharacter {
        &self.base
    }

    pub fn get(&mut self, d: usize) -> Result<Arc<FormalCharacter>> {
        while self.levels.len() <= d {
            self.extend()?;
        }
        Ok(Arc::clone(&self.levels[d]))
    }

    fn extend(&mut self) -> Result<()> {
        let d = self.levels.len();
        if self.adams.len() < d {
            let m = self.adams.len() + 1;
            self.adams.push(adams(&self.base, m as i64)?);
        }
        let mut acc: FxHashMap<Weight, Int> = FxHashMap::default();
        for m in 1..=d {
            let prev = &self.levels[d - m];
            if prev.is_empty() {
                continue;
            }
            let part = convolve(&self.adams[m - 1].terms, &prev.terms);
            let negate = self.kind == PowerKind::Exterior && m % 2 == 0;
            for (w, c) in part {
                let e = acc.entry(w).or_default();
                if negate {
                    *e -= &c;
                } else {
                    *e += &c;
                }
            }
        }
        let mut divided = FxHashMap::default();
        for (w, c) in acc {
            if c.is_zero() {
                continue;
            }
            let q = c.div_exact(d as i64).ok_or_else(|| {
                Error::consistency(format!("Newton recursion: {c} at {w} not divisible by {d}"))
            })?;
            divided.insert(w, q);
        }
        let what = match self.kind {
            PowerKind::Symmetric => "symmetric power",
            PowerKind::Exterior => "exterior power",
        };
        let level = FormalCharacter::from_signed(self.base.tag.clone(), divided, what)?;
        self.levels.push(Arc::new(level));
        Ok(())
    }
}

pub fn sym_power(chi: &FormalCharacter, d: usize) -> Result<FormalCharacter> {
    let mut t = PowerTower::new(chi.clone(), PowerKind::Symmetric);
    Ok((*t.get(d)?).clone())
}

pub fn ext_power(chi: &FormalCharacter, d: usize) -> Result<FormalCharacter> {
    let mut t = PowerTower::new(chi.clone(), PowerKind::Exterior);
    Ok((*t.get(d)?).clone())
}

/// Sum of signed contributions of `chi` at weights in the `rho`-shifted
/// orbit of `target`; skips the symmetry check.
fn alternation_coefficient(rs: &RootSystem, chi: &FormalCharacter, target: &Weight) -> Int {
    let entries: Vec<(&Weight, &Int)> = chi.terms.iter().collect();
    let fold = |chunk: &[(&Weight, &Int)]| {
        let mut acc = Int::ZERO;
        for (w, m) in chunk {
            if let Some((nu, odd)) = rs.dot_to_dominant(w) {
                if &nu == target {
                    if odd {
                        acc -= *m;
                    } else {
                        acc += *m;
                    }
                }
            }
        }
        acc
    };
    if entries.len() < PARALLEL_THRESHOLD {
        return fold(&entries);
    }
    entries.par_chunks(4096).map(fold).reduce(|| Int::ZERO, |a, b| a + b)
}

/// Multiplicity of the trivial module. For simple groups this is the signed
/// alternation over weights whose `rho`-shift reflects onto `rho`; for tori
/// it is the multiplicity of the zero weight.
pub fn trivial_multiplicity(chi: &FormalCharacter) -> Result<Int> {
    match &chi.tag {
        GroupTag::Torus(r) => Ok(chi.multiplicity(&Weight::zero(*r))),
        GroupTag::Simple(rs) => {
            if let Some(w) = chi.first_asymmetry() {
                return Err(Error::NotWeylSymmetric(w.to_string()));
            }
            let m = alternation_coefficient(rs, chi, &Weight::zero(rs.rank()));
            if m.is_negative() {
                return Err(Error::consistency(format!("negative trivial multiplicity {m}")));
            }
            Ok(m)
        }
    }
}

fn trivial_multiplicity_unchecked(chi: &FormalCharacter) -> Int {
    match &chi.tag {
        GroupTag::Torus(r) => chi.multiplicity(&Weight::zero(*r)),
        GroupTag::Simple(rs) => alternation_coefficient(rs, chi, &Weight::zero(rs.rank())),
    }
}

/// Irreducible decomposition by iterated highest-weight extraction.
pub fn decompose(chi: &FormalCharacter) -> Result<Vec<(Weight, Int)>> {
    match &chi.tag {
        GroupTag::Torus(_) => {
            let mut v = chi.sorted_terms();
            v.reverse();
            Ok(v)
        }
        GroupTag::Simple(rs) => {
            if let Some(w) = chi.first_asymmetry() {
                return Err(Error::NotWeylSymmetric(w.to_string()));
            }
            let mut remaining = chi.terms.clone();
            let mut out = Vec::new();
            while !remaining.is_empty() {
                let (top, m) = remaining
                    .iter()
                    .max_by(|a, b| {
                        rs.height_numerator(a.0)
                            .cmp(&rs.height_numerator(b.0))
                            .then_with(|| a.0.cmp(b.0))
                    })
                    .map(|(w, m)| (w.clone(), m.clone()))
                    .expect("nonempty");
                if !top.is_dominant() || m.is_negative() {
                    return Err(Error::consistency(format!(
                        "decomposition: leading term {top} with multiplicity {m}"
                    )));
                }
                let irr = irrep_character(rs, &top)?;
                for (w, c) in irr.terms {
                    let e = remaining.entry(w.clone()).or_default();
                    e.add_mul(&c, &-m.clone());
                    if e.is_negative() {
                        return Err(Error::consistency(format!(
                            "decomposition: negative remainder at {w} after removing V({top})"
                        )));
                    }
                    if e.is_zero() {
                        remaining.remove(&w);
                    }
                }
                out.push((top, m));
            }
            out.sort_by(|a, b| b.0.cmp(&a.0));
            Ok(out)
        }
    }
}

/// Irreducible decomposition by reflecting every `rho`-shifted weight into
/// the dominant chamber. Agrees with [`decompose`]; much cheaper on large
/// characters because no irreducible characters are expanded.
pub fn decompose_by_alternation(chi: &FormalCharacter) -> Result<Vec<(Weight, Int)>> {
    let GroupTag::Simple(rs) = &chi.tag else {
        return decompose(chi);
    };
    let entries: Vec<(&Weight, &Int)> = chi.terms.iter().collect();
    let fold = |chunk: &[(&Weight, &Int)]| {
        let mut acc: FxHashMap<Weight, Int> = FxHashMap::default();
        for (w, m) in chunk {
            if let Some((nu, odd)) = rs.dot_to_dominant(w) {
                let e = acc.entry(nu).or_default();
                if odd {
                    *e -= *m;
                } else {
                    *e += *m;
                }
            }
        }
        acc
    };
    let acc = if entries.len() < PARALLEL_THRESHOLD {
        fold(&entries)
    } else {
        entries.par_chunks(4096).map(fold).reduce(FxHashMap::default, |mut a, b| {
            merge_into(&mut a, b);
            a
        })
    };
    let mut out = Vec::new();
    for (w, m) in acc {
        if m.is_negative() {
            return Err(Error::consistency(format!("alternation: negative multiplicity of V({w})")));
        }
        if !m.is_zero() {
            out.push((w, m));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out)
}

/// Dimension of degree-`d` invariants: trivial multiplicity in `S^d(V*)`.
pub fn invariant_dim(v: &FormalCharacter, d: usize) -> Result<Int> {
    let s = sym_power(&dualize(v), d)?;
    trivial_multiplicity(&s)
}

/// Dimension of the multidegree-`beta` invariants of `k` copies of `V`.
pub fn multidegree_invariant_dim(v: &FormalCharacter, beta: &[u32]) -> Result<Int> {
    GradedInvariants::copies(v, beta.len()).dim(beta)
}

/// Same quantity as [`multidegree_invariant_dim`] computed as the trivial
/// multiplicity of the full tensor product. Quadratic in character size; used
/// to cross-check the pairing route.
pub fn multidegree_invariant_dim_direct(v: &FormalCharacter, beta: &[u32]) -> Result<Int> {
    let vd = dualize(v);
    let mut tower = PowerTower::new(vd.clone(), PowerKind::Symmetric);
    let mut acc = FormalCharacter::trivial(vd.tag.clone());
    for &b in beta {
        let s = tower.get(b as usize)?;
        acc = tensor(&acc, &s)?;
    }
    trivial_multiplicity(&acc)
}

/// +1 orthogonal, -1 symplectic, 0 not self-dual; for irreducible `chi`.
pub fn frobenius_indicator(chi: &FormalCharacter) -> Result<i32> {
    if trivial_multiplicity(&ext_power(chi, 2)?)? == Int::ONE {
        return Ok(-1);
    }
    if trivial_multiplicity(&sym_power(chi, 2)?)? == Int::ONE {
        return Ok(1);
    }
    Ok(0)
}

/// Invariant dimensions of `V_1 + ... + V_k` graded by the blocks, with
/// memoized symmetric powers and decompositions. With `k` identical blocks
/// this is the multigrading of `C[kV]^G` by copies.
pub struct GradedInvariants {
    tag: GroupTag,
    /// block index -> index of its distinct dual character
    block_kind: Vec<usize>,
    towers: Vec<Mutex<PowerTower>>,
    decompositions: Mutex<FxHashMap<(usize, usize), Arc<FxHashMap<Weight, Int>>>>,
    trivial: Mutex<FxHashMap<(usize, usize), Int>>,
}

impl GradedInvariants {
    pub fn copies(v: &FormalCharacter, k: usize) -> Self {
        GradedInvariants {
            tag: v.tag.clone(),
            block_kind: vec![0; k],
            towers: vec![Mutex::new(PowerTower::new(dualize(v), PowerKind::Symmetric))],
            decompositions: Mutex::new(FxHashMap::default()),
            trivial: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn blocks(blocks: &[FormalCharacter]) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::invalid("at least one block is required"));
        };
        let mut kinds: Vec<&FormalCharacter> = Vec::new();
        let mut block_kind = Vec::new();
        for b in blocks {
            first.same_tag(b)?;
            match kinds.iter().position(|k| *k == b) {
                Some(i) => block_kind.push(i),
                None => {
                    block_kind.push(kinds.len());
                    kinds.push(b);
                }
            }
        }
        Ok(GradedInvariants {
            tag: first.tag.clone(),
            block_kind,
            towers: kinds
                .iter()
                .map(|c| Mutex::new(PowerTower::new(dualize(c), PowerKind::Symmetric)))
                .collect(),
            decompositions: Mutex::new(FxHashMap::default()),
            trivial: Mutex::new(FxHashMap::default()),
        })
    }

    pub fn num_blocks(&self) -> usize {
        self.block_kind.len()
    }

    fn power(&self, kind: usize, d: usize) -> Result<Arc<FormalCharacter>> {
        self.towers[kind].lock().expect("tower poisoned").get(d)
    }

    fn isotypic(&self, kind: usize, d: usize) -> Result<Arc<FxHashMap<Weight, Int>>> {
        if let Some(x) = self.decompositions.lock().expect("poisoned").get(&(kind, d)) {
            return Ok(Arc::clone(x));
        }
        let p = self.power(kind, d)?;
        let map: FxHashMap<Weight, Int> = match &self.tag {
            GroupTag::Torus(_) => p.terms.clone(),
            GroupTag::Simple(_) => decompose_by_alternation(&p)?.into_iter().collect(),
        };
        let map = Arc::new(map);
        self.decompositions
            .lock()
            .expect("poisoned")
            .insert((kind, d), Arc::clone(&map));
        Ok(map)
    }

    fn dual_of(&self, w: &Weight) -> Weight {
        match &self.tag {
            GroupTag::Torus(_) => -w,
            GroupTag::Simple(rs) => rs.dual_weight(w),
        }
    }

    /// Dimension of invariants of block-multidegree `beta`.
    pub fn dim(&self, beta: &[u32]) -> Result<Int> {
        if beta.len() != self.block_kind.len() {
            return Err(Error::invalid(format!(
                "multidegree {beta:?} has {} parts, expected {}",
                beta.len(),
                self.block_kind.len()
            )));
        }
        let mut parts: Vec<(usize, usize)> = beta
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (self.block_kind[i], d as usize))
            .collect();
        match parts.len() {
            0 => Ok(Int::ONE),
            1 => {
                let key = parts[0];
                if let Some(x) = self.trivial.lock().expect("poisoned").get(&key) {
                    return Ok(x.clone());
                }
                let p = self.power(key.0, key.1)?;
                let m = trivial_multiplicity_unchecked(&p);
                if m.is_negative() {
                    return Err(Error::consistency("negative trivial multiplicity"));
                }
                self.trivial.lock().expect("poisoned").insert(key, m.clone());
                Ok(m)
            }
            _ => {
                // pair the largest factor against the product of the rest
                parts.sort_by_key(|&(kind, d)| (d, kind));
                let (last_kind, last_d) = parts.pop().expect("nonempty");
                let last = self.isotypic(last_kind, last_d)?;
                let rest: FxHashMap<Weight, Int> = if parts.len() == 1 {
                    (*self.isotypic(parts[0].0, parts[0].1)?).clone()
                } else {
                    let mut acc = (*self.power(parts[0].0, parts[0].1)?).clone();
                    for &(kind, d) in &parts[1..] {
                        acc = tensor(&acc, &*self.power(kind, d)?)?;
                    }
                    match &self.tag {
                        GroupTag::Torus(_) => acc.terms,
                        GroupTag::Simple(_) => decompose_by_alternation(&acc)?.into_iter().collect(),
                    }
                };
                let mut total = Int::ZERO;
                let mut keys: Vec<&Weight> = rest.keys().collect();
                keys.sort();
                for w in keys {
                    if let Some(m2) = last.get(&self.dual_of(w)) {
                        total.add_mul(&rest[w], m2);
                    }
                }
                Ok(total)
            }
        }
    }
}

impl RootSystem {
    /// Linear functional strictly increasing along the dominance order:
    /// the sum of simple-root coordinates, scaled by the Cartan determinant.
    pub fn height_numerator(&self, w: &Weight) -> i64 {
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| self.inverse_cartan_numerator()[i][j] * w[j] as i64)
                    .sum::<i64>()
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn w(v: &[i32]) -> Weight {
        Weight::from_slice(v)
    }

    fn a1_irrep(j: i32) -> FormalCharacter {
        let rs = build_root_system('A', 1).unwrap();
        irrep_character(&rs, &w(&[j])).unwrap()
    }

    fn a1_weights(chi: &FormalCharacter) -> Vec<(i32, i64)> {
        let mut v: Vec<(i32, i64)> = chi.terms().map(|(w, m)| (w[0], m.to_i64().unwrap())).collect();
        v.sort();
        v
    }

    #[test]
    fn r4_weight_string() {
        assert_eq!(
            a1_weights(&a1_irrep(4)),
            vec![(-4, 1), (-2, 1), (0, 1), (2, 1), (4, 1)]
        );
    }

    #[test]
    fn dualize_examples() {
        let r2 = a1_irrep(2);
        assert_eq!(dualize(&r2), r2);
        let a2 = build_root_system('A', 2).unwrap();
        let v = irrep_character(&a2, &w(&[1, 0])).unwrap();
        let vs = irrep_character(&a2, &w(&[0, 1])).unwrap();
        assert_eq!(dualize(&v), vs);
        let t = FormalCharacter::torus(1, &[w(&[1]), w(&[1]), w(&[-3])]).unwrap();
        let td = dualize(&t);
        assert_eq!(td.multiplicity(&w(&[-1])), Int::from(2));
        assert_eq!(td.multiplicity(&w(&[3])), Int::ONE);
        assert_eq!(td.support_size(), 2);
    }

    #[test]
    fn tensor_examples() {
        let r1 = a1_irrep(1);
        assert_eq!(a1_weights(&tensor(&r1, &r1).unwrap()), vec![(-2, 1), (0, 2), (2, 1)]);
        let empty = FormalCharacter::empty(r1.tag().clone());
        assert!(tensor(&r1, &empty).unwrap().is_empty());
        let t = FormalCharacter::torus(1, &[w(&[1])]).unwrap();
        assert!(matches!(tensor(&r1, &t), Err(Error::TagMismatch(..))));
    }

    #[test]
    fn adams_examples() {
        let r1 = a1_irrep(1);
        assert_eq!(a1_weights(&adams(&r1, 2).unwrap()), vec![(-2, 1), (2, 1)]);
        let r3 = a1_irrep(3);
        assert_eq!(adams(&r3, 1).unwrap(), r3);
        assert_eq!(adams(&adams(&r3, 2).unwrap(), 3).unwrap(), adams(&r3, 6).unwrap());
        assert!(adams(&r3, 0).is_err());
        assert!(adams(&r3, -1).is_err());
    }

    #[test]
    fn sym_and_ext_examples() {
        let r2 = a1_irrep(2);
        let s2 = sym_power(&r2, 2).unwrap();
        let expect = a1_irrep(4).sum(&a1_irrep(0)).unwrap();
        assert_eq!(s2, expect);
        let r1 = a1_irrep(1);
        assert_eq!(a1_weights(&ext_power(&r1, 2).unwrap()), vec![(0, 1)]);
        assert!(ext_power(&r1, 3).unwrap().is_empty());
        let a3 = build_root_system('A', 3).unwrap();
        let v = irrep_character(&a3, &w(&[3, 0, 0])).unwrap();
        assert_eq!(sym_power(&v, 1).unwrap(), v);
        assert_eq!(sym_power(&v, 0).unwrap(), FormalCharacter::trivial(v.tag().clone()));
    }

    #[test]
    fn trivial_multiplicity_examples() {
        let r2 = a1_irrep(2);
        assert_eq!(trivial_multiplicity(&tensor(&r2, &r2).unwrap()).unwrap(), Int::ONE);
        assert_eq!(trivial_multiplicity(&a1_irrep(0)).unwrap(), Int::ONE);
        let rs = build_root_system('A', 1).unwrap();
        let mut lopsided = FormalCharacter::empty(GroupTag::Simple(rs));
        lopsided.add_term(w(&[2]), Int::ONE);
        assert!(matches!(trivial_multiplicity(&lopsided), Err(Error::NotWeylSymmetric(_))));
    }

    #[test]
    fn decompose_examples() {
        let r1 = a1_irrep(1);
        let d = decompose(&tensor(&r1, &r1).unwrap()).unwrap();
        assert_eq!(d, vec![(w(&[2]), Int::ONE), (w(&[0]), Int::ONE)]);
        let b2 = build_root_system('B', 2).unwrap();
        let v = irrep_character(&b2, &w(&[1, 0])).unwrap();
        let l2 = ext_power(&v, 2).unwrap();
        assert_eq!(l2.dimension(), Int::from(10));
        // adjoint of B2 has highest weight [0,2] in Bourbaki labels
        assert_eq!(decompose(&l2).unwrap(), vec![(w(&[0, 2]), Int::ONE)]);
        assert_eq!(decompose_by_alternation(&l2).unwrap(), vec![(w(&[0, 2]), Int::ONE)]);
    }

    #[test]
    fn invariant_dim_examples() {
        let r1 = a1_irrep(1);
        for d in 1..6 {
            assert_eq!(invariant_dim(&r1, d).unwrap(), Int::ZERO);
        }
        let b2 = build_root_system('B', 2).unwrap();
        let v = irrep_character(&b2, &w(&[1, 0])).unwrap();
        assert_eq!(invariant_dim(&v, 2).unwrap(), Int::ONE);
        assert_eq!(multidegree_invariant_dim(&r1, &[1, 1]).unwrap(), Int::ONE);
        assert_eq!(multidegree_invariant_dim(&v, &[2]).unwrap(), invariant_dim(&v, 2).unwrap());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_indicator(&a1_irrep(1)).unwrap(), -1);
        assert_eq!(frobenius_indicator(&a1_irrep(2)).unwrap(), 1);
        let a2 = build_root_system('A', 2).unwrap();
        let v = irrep_character(&a2, &w(&[1, 0])).unwrap();
        assert_eq!(frobenius_indicator(&v).unwrap(), 0);
    }

    #[test]
    fn graded_blocks_torus() {
        let t1 = FormalCharacter::torus(1, &[w(&[1])]).unwrap();
        let t2 = FormalCharacter::torus(1, &[w(&[-1])]).unwrap();
        let g = GradedInvariants::blocks(&[t1, t2]).unwrap();
        assert_eq!(g.dim(&[1, 1]).unwrap(), Int::ONE);
        assert_eq!(g.dim(&[1, 0]).unwrap(), Int::ZERO);
        assert_eq!(g.dim(&[3, 3]).unwrap(), Int::ONE);
        assert_eq!(g.dim(&[2, 3]).unwrap(), Int::ZERO);
    }
}
