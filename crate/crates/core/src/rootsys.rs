//! Root systems of simple types A–G, their Weyl groups, and irreducible
//! characters.
//!
//! Simple roots are numbered as in Bourbaki's tables. In particular the spin
//! representations are `phi n` of `B n`, and `phi (n-1)`, `phi n` of `D n`;
//! for `E` the branch node is `phi 2`; for `G2` the short simple root is
//! `alpha 1` (so `phi 1` is the 7-dimensional module); for `F4` the long
//! simple roots are `alpha 1`, `alpha 2` (so `phi 4` is the 26-dimensional
//! module).
//!
//! Weights are stored in fundamental-weight coordinates. The Cartan matrix
//! convention is `cartan[i][j] = <alpha_i^vee, alpha_j>`, so column `j` holds
//! the fundamental-weight coordinates of the simple root `alpha_j`.

use crate::charalg::{FormalCharacter, GroupTag};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::weight::Weight;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, RwLock};

/// Default cap on explicit Weyl-orbit and Weyl-group enumeration.
pub const DEFAULT_WEYL_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the basis of simple roots.
    pub simple: Vec<i32>,
    /// Coordinates in the basis of fundamental weights.
    pub weight: Weight,
}

impl Root {
    pub fn height(&self) -> i32 {
        self.simple.iter().sum()
    }
}

/// Dominant part of an irreducible character: multiplicities of the dominant
/// weights of `V(highest)`, ordered by depth below the highest weight.
#[derive(Clone, Debug)]
pub struct DominantCharacter {
    pub highest: Weight,
    pub dominant: Vec<(Weight, Int)>,
}

pub struct RootSystem {
    letter: char,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    /// Squared lengths of the simple roots in an integral normalization.
    root_norms: Vec<i64>,
    positive_roots: Vec<Root>,
    rho: Weight,
    weyl_order: BigInt,
    /// Gram matrix of the fundamental weights, scaled to integers.
    weight_form: Vec<Vec<i64>>,
    /// `inv_cartan_num / inv_cartan_den` is the inverse Cartan matrix.
    inv_cartan_num: Vec<Vec<i64>>,
    inv_cartan_den: i64,
    orbit_cap: usize,
    freudenthal_cache: RwLock<FxHashMap<Weight, Arc<DominantCharacter>>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &format_args!("{}{}", self.letter, self.rank))
            .field("positive_roots", &self.positive_roots.len())
            .field("weyl_order", &self.weyl_order)
            .finish()
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.letter == other.letter && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

fn validate(letter: char, rank: usize) -> Result<()> {
    let ok = match letter {
        'A' => rank >= 1,
        'B' => rank >= 2,
        'C' => rank >= 3,
        'D' => rank >= 3,
        'E' => (6..=8).contains(&rank),
        'F' => rank == 4,
        'G' => rank == 2,
        _ => {
            return Err(Error::InvalidRootSystem {
                letter,
                rank,
                reason: "type letter must be one of A,B,C,D,E,F,G".into(),
            })
        }
    };
    if ok {
        Ok(())
    } else {
        let reason = match letter {
            'A' => "A needs rank >= 1",
            'B' => "B needs rank >= 2",
            'C' => "C needs rank >= 3 (C2 is B2)",
            'D' => "D needs rank >= 3",
            'E' => "E exists only in ranks 6, 7, 8",
            'F' => "F exists only in rank 4",
            _ => "G exists only in rank 2",
        };
        Err(Error::InvalidRootSystem {
            letter,
            rank,
            reason: reason.into(),
        })
    }
}

/// Gram matrix of the simple roots (Bourbaki numbering), integral.
fn simple_gram(letter: char, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match letter {
        'A' => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        'B' => {
            for i in 0..n {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 1;
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        'C' => {
            for i in 0..n {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 4;
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 2, n - 1, -2);
        }
        'D' => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        'E' => {
            for i in 0..n {
                g[i][i] = 2;
            }
            // 1-3-4-5-6-7-8 with 2 attached to 4
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        'F' => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        'G' => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
        _ => unreachable!("validated"),
    }
    g
}

fn weyl_order_formula(letter: char, n: usize) -> BigInt {
    let fact = |m: usize| -> BigInt { (1..=m).fold(BigInt::one(), |acc, i| acc * i) };
    match letter {
        'A' => fact(n + 1),
        'B' | 'C' => fact(n) * (BigInt::one() << n),
        'D' => fact(n) * (BigInt::one() << (n - 1)),
        'E' => match n {
            6 => BigInt::from(51_840u64),
            7 => BigInt::from(2_903_040u64),
            _ => BigInt::from(696_729_600u64),
        },
        'F' => BigInt::from(1152),
        _ => BigInt::from(12),
    }
}

/// Inverse of a small integer matrix as (numerator matrix, common denominator).
fn rational_inverse(m: &[Vec<i32>]) -> (Vec<Vec<i64>>, i64) {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&v| Ratio::from_integer(v as i64)).collect();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let t = a[col][c] * f;
                    a[r][c] -= t;
                }
            }
        }
    }
    let den = a
        .iter()
        .flat_map(|row| row[n..].iter().map(|v| *v.denom()))
        .fold(1i64, |acc, d| acc.lcm(&d));
    let num = a
        .iter()
        .map(|row| row[n..].iter().map(|v| (*v * den).to_integer()).collect())
        .collect();
    (num, den)
}

/// Build the root system of the given simple type.
pub fn build_root_system(letter: char, rank: usize) -> Result<Arc<RootSystem>> {
    RootSystem::new(letter, rank, DEFAULT_WEYL_CAP).map(Arc::new)
}

impl RootSystem {
    pub fn new(letter: char, rank: usize, orbit_cap: usize) -> Result<RootSystem> {
        let letter = letter.to_ascii_uppercase();
        validate(letter, rank)?;
        let gram = simple_gram(letter, rank);
        let n = rank;
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|j| (2 * gram[i][j] / gram[i][i]) as i32).collect())
            .collect();
        let root_norms: Vec<i64> = (0..n).map(|i| gram[i][i]).collect();

        let positive_roots = generate_positive_roots(&cartan);
        let (inv_num, inv_den) = rational_inverse(&cartan);

        // (omega_i, omega_k) = inv[k][i] * |alpha_k|^2 / 2
        let mut form_rat = vec![vec![Ratio::<i64>::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                form_rat[i][k] = Ratio::new(inv_num[k][i] * root_norms[k], 2 * inv_den);
            }
        }
        let scale = form_rat
            .iter()
            .flatten()
            .map(|r| *r.denom())
            .fold(1i64, |acc, d| acc.lcm(&d));
        let weight_form: Vec<Vec<i64>> = form_rat
            .iter()
            .map(|row| row.iter().map(|r| (*r * scale).to_integer()).collect())
            .collect();

        Ok(RootSystem {
            letter,
            rank,
            cartan,
            root_norms,
            positive_roots,
            rho: Weight::from(vec![1; n]),
            weyl_order: weyl_order_formula(letter, n),
            weight_form,
            inv_cartan_num: inv_num,
            inv_cartan_den: inv_den,
            orbit_cap,
            freudenthal_cache: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn letter(&self) -> char {
        self.letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.letter, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn weyl_order(&self) -> &BigInt {
        &self.weyl_order
    }

    pub fn orbit_cap(&self) -> usize {
        self.orbit_cap
    }

    /// Numerator of the inverse Cartan matrix; see [`Self::inverse_cartan_denominator`].
    pub fn inverse_cartan_numerator(&self) -> &[Vec<i64>] {
        &self.inv_cartan_num
    }

    pub fn inverse_cartan_denominator(&self) -> i64 {
        self.inv_cartan_den
    }

    /// Fundamental-weight coordinates of the simple root `alpha_i`.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from((0..self.rank).map(|k| self.cartan[k][i]).collect::<Vec<_>>())
    }

    fn check_len(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::WeightLength {
                weight: w.to_string(),
                got: w.len(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    /// Invariant bilinear form on weights, scaled by a fixed positive integer.
    pub fn inner(&self, x: &Weight, y: &Weight) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            let mut t = 0i64;
            for j in 0..self.rank {
                t += self.weight_form[i][j] * y[j] as i64;
            }
            s += x[i] as i64 * t;
        }
        s
    }

    /// Simple reflection `s_i` applied in place.
    #[inline]
    pub fn reflect_in_place(&self, w: &mut Weight, i: usize) {
        let c = w[i];
        if c != 0 {
            for k in 0..self.rank {
                w[k] -= c * self.cartan[k][i];
            }
        }
    }

    /// Dominant Weyl conjugate of `w`, with the parity of the number of
    /// simple reflections used (`true` for odd).
    pub fn to_dominant(&self, w: &Weight) -> (Weight, bool) {
        let mut v = w.clone();
        let mut odd = false;
        loop {
            match v.0.iter().position(|&c| c < 0) {
                Some(i) => {
                    self.reflect_in_place(&mut v, i);
                    odd = !odd;
                }
                None => return (v, odd),
            }
        }
    }

    /// Coordinates of `w` in the simple-root basis if `w` lies in the root
    /// lattice.
    pub fn root_coordinates(&self, w: &Weight) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let s: i64 = (0..self.rank).map(|j| self.inv_cartan_num[i][j] * w[j] as i64).sum();
            if s % self.inv_cartan_den != 0 {
                return None;
            }
            out.push(s / self.inv_cartan_den);
        }
        Some(out)
    }

    /// `mu <= lambda` in the dominance order (difference a nonnegative
    /// integral combination of simple roots).
    pub fn precedes(&self, mu: &Weight, lambda: &Weight) -> bool {
        match self.root_coordinates(&(lambda - mu)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Highest weight of the dual of `V(lambda)`.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        self.to_dominant(&-lambda).0
    }

    /// Weyl orbit of a dominant weight, generated by simple reflections.
    pub fn orbit(&self, dominant: &Weight) -> Result<Vec<Weight>> {
        self.check_len(dominant)?;
        if !dominant.is_dominant() {
            return Err(Error::NotDominant(dominant.to_string()));
        }
        let mut seen: FxHashSet<Weight> = FxHashSet::default();
        let mut out = vec![dominant.clone()];
        let mut queue = VecDeque::from([dominant.clone()]);
        seen.insert(dominant.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                if w[i] > 0 {
                    let mut v = w.clone();
                    self.reflect_in_place(&mut v, i);
                    if seen.insert(v.clone()) {
                        if seen.len() > self.orbit_cap {
                            return Err(Error::invalid(format!(
                                "Weyl orbit of {dominant} exceeds the cap of {}",
                                self.orbit_cap
                            )));
                        }
                        out.push(v.clone());
                        queue.push_back(v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Dimension of `V(lambda)` by the Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigInt> {
        self.check_len(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        // (mu, alpha) is proportional to sum_j c_j mu_j |alpha_j|^2.
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            let mut a = 0i64;
            let mut b = 0i64;
            for j in 0..self.rank {
                let c = root.simple[j] as i64 * self.root_norms[j];
                a += c * (lambda[j] as i64 + 1);
                b += c;
            }
            num *= a;
            den *= b;
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "Weyl dimension of {lambda} is not integral"
            )));
        }
        Ok(q)
    }

    /// Dominant weights of `V(lambda)` in order of increasing depth.
    fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: FxHashSet<Weight> = FxHashSet::default();
        seen.insert(lambda.clone());
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(mu) = queue.pop_front() {
            for root in &self.positive_roots {
                let nu = &mu - &root.weight;
                let (dom, _) = self.to_dominant(&nu);
                if self.precedes(&dom, lambda) && seen.insert(dom.clone()) {
                    queue.push_back(dom);
                }
            }
        }
        let mut list: Vec<(i64, Weight)> = seen
            .into_iter()
            .map(|w| {
                let depth: i64 = self
                    .root_coordinates(&(lambda - &w))
                    .expect("weights below lambda lie in its root-lattice coset")
                    .iter()
                    .sum();
                (depth, w)
            })
            .collect();
        list.sort();
        list.into_iter().map(|(_, w)| w).collect()
    }

    /// Freudenthal's recursion on the dominant weights of `V(lambda)`.
    /// Results are memoized per highest weight.
    pub fn dominant_character(&self, lambda: &Weight) -> Result<Arc<DominantCharacter>> {
        self.check_len(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        if let Some(c) = self.freudenthal_cache.read().expect("cache poisoned").get(lambda) {
            return Ok(Arc::clone(c));
        }
        let computed = Arc::new(self.freudenthal(lambda)?);
        let mut cache = self.freudenthal_cache.write().expect("cache poisoned");
        Ok(Arc::clone(cache.entry(lambda.clone()).or_insert(computed)))
    }

    fn freudenthal(&self, lambda: &Weight) -> Result<DominantCharacter> {
        let order = self.dominant_weights_below(lambda);
        let lr = lambda + &self.rho;
        let top = self.inner(&lr, &lr);
        let mut mult: FxHashMap<Weight, Int> = FxHashMap::default();
        let mut out = Vec::with_capacity(order.len());
        for mu in order {
            let m = if &mu == lambda {
                Int::ONE
            } else {
                let mut acc = Int::ZERO;
                for root in &self.positive_roots {
                    let mut k = 1;
                    loop {
                        let nu = mu.add_scaled(&root.weight, k);
                        let (dom, _) = self.to_dominant(&nu);
                        let Some(m_nu) = mult.get(&dom) else { break };
                        let ip = self.inner(&nu, &root.weight);
                        acc.add_mul(m_nu, &Int::from(2 * ip));
                        k += 1;
                    }
                }
                let mr = &mu + &self.rho;
                let den = top - self.inner(&mr, &mr);
                if den <= 0 {
                    return Err(Error::consistency(format!(
                        "Freudenthal denominator vanishes at {mu} below {lambda}"
                    )));
                }
                acc.div_exact(den).ok_or_else(|| {
                    Error::consistency(format!("non-integral multiplicity at {mu} in V({lambda})"))
                })?
            };
            if m.is_negative() {
                return Err(Error::consistency(format!("negative multiplicity at {mu}")));
            }
            if !m.is_zero() {
                mult.insert(mu.clone(), m.clone());
                out.push((mu, m));
            }
        }
        Ok(DominantCharacter {
            highest: lambda.clone(),
            dominant: out,
        })
    }
}

fn generate_positive_roots(cartan: &[Vec<i32>]) -> Vec<Root> {
    let n = cartan.len();
    let to_weight = |c: &[i32]| -> Weight {
        Weight::from((0..n).map(|k| (0..n).map(|j| cartan[k][j] * c[j]).sum()).collect::<Vec<i32>>())
    };
    let mut roots: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut set: FxHashSet<Vec<i32>> = roots.iter().cloned().collect();
    let mut start = 0;
    while start < roots.len() {
        let end = roots.len();
        for r in start..end {
            let beta = roots[r].clone();
            for i in 0..n {
                // q: how far the alpha_i-string extends downward
                let mut q = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if set.contains(&down) {
                        q += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                let p = q - pairing;
                if p > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        roots.push(up);
                    }
                }
            }
        }
        start = end;
    }
    roots.sort_by_key(|c| (c.iter().sum::<i32>(), c.clone()));
    roots
        .into_iter()
        .map(|c| Root {
            weight: to_weight(&c),
            simple: c,
        })
        .collect()
}

/// Dimension of `V(lambda)`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<BigInt> {
    rs.weyl_dimension(lambda)
}

/// Full weight multiplicity function of `V(lambda)`.
pub fn irrep_character(rs: &Arc<RootSystem>, lambda: &Weight) -> Result<FormalCharacter> {
    let dom = rs.dominant_character(lambda)?;
    let mut chi = FormalCharacter::empty(GroupTag::Simple(Arc::clone(rs)));
    for (mu, m) in &dom.dominant {
        for w in rs.orbit(mu)? {
            chi.add_term(w, m.clone());
        }
    }
    Ok(chi)
}

/// Number of positive roots for the classical count check.
pub fn expected_positive_root_count(letter: char, n: usize) -> usize {
    match letter {
        'A' => n * (n + 1) / 2,
        'B' | 'C' => n * n,
        'D' => n * (n - 1),
        'E' => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        'F' => 24,
        _ => 6,
    }
}

impl RootSystem {
    /// `true` when `dim V(lambda)` fits the given bound; avoids BigInt
    /// plumbing at call sites that enumerate small modules.
    pub fn dimension_at_most(&self, lambda: &Weight, bound: u64) -> Result<bool> {
        Ok(self.weyl_dimension(lambda)?.to_u64().is_some_and(|d| d <= bound))
    }

    pub fn is_simply_laced(&self) -> bool {
        self.root_norms.iter().all(|&l| l == self.root_norms[0])
    }

    /// Sign of the alternation term for a weight whose `rho`-shift is
    /// regular: the dominant chamber representative minus `rho`, and the
    /// sign of the Weyl element used. `None` when `mu + rho` lies on a wall.
    pub fn dot_to_dominant(&self, mu: &Weight) -> Option<(Weight, bool)> {
        let shifted = mu + &self.rho;
        let (dom, odd) = self.to_dominant(&shifted);
        if dom.0.iter().any(|&c| c == 0) {
            return None;
        }
        Some((&dom - &self.rho, odd))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Weight {
        Weight::from_slice(v)
    }

    #[test]
    fn rejects_invalid_pairs() {
        for (l, r) in [('A', 0), ('B', 1), ('C', 2), ('D', 2), ('E', 5), ('E', 9), ('F', 3), ('G', 3), ('H', 3)] {
            assert!(build_root_system(l, r).is_err(), "{l}{r} should be rejected");
        }
    }

    #[test]
    fn cartan_shape_and_root_counts() {
        for (l, r) in [
            ('A', 1), ('A', 4), ('B', 2), ('B', 5), ('C', 3), ('C', 4), ('D', 4), ('D', 8),
            ('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2),
        ] {
            let rs = build_root_system(l, r).unwrap();
            let a = rs.cartan_matrix();
            for i in 0..r {
                assert_eq!(a[i][i], 2);
                for j in 0..r {
                    if i != j {
                        assert!(a[i][j] <= 0);
                        assert_eq!(a[i][j] == 0, a[j][i] == 0);
                    }
                }
            }
            assert_eq!(rs.positive_roots().len(), expected_positive_root_count(l, r), "{l}{r}");
            assert!(rs.rho().0.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for (l, r) in [('A', 3), ('B', 3), ('C', 3), ('D', 5), ('F', 4), ('G', 2), ('E', 6)] {
            let rs = build_root_system(l, r).unwrap();
            let mut sum = Weight::zero(r);
            for root in rs.positive_roots() {
                sum = &sum + &root.weight;
            }
            assert_eq!(sum, rs.rho().scaled(2), "{l}{r}");
        }
    }

    #[test]
    fn small_examples() {
        let a1 = build_root_system('A', 1).unwrap();
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.weyl_order(), &BigInt::from(2));
        assert_eq!(a1.weyl_dimension(&w(&[1])).unwrap(), BigInt::from(2));

        let g2 = build_root_system('G', 2).unwrap();
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.weyl_order(), &BigInt::from(12));
        assert_eq!(g2.weyl_dimension(&w(&[1, 0])).unwrap(), BigInt::from(7));
        assert_eq!(g2.weyl_dimension(&w(&[0, 1])).unwrap(), BigInt::from(14));

        let a3 = build_root_system('A', 3).unwrap();
        assert_eq!(a3.weyl_dimension(&w(&[3, 0, 0])).unwrap(), BigInt::from(20));
    }

    #[test]
    fn weyl_dimension_rejects_non_dominant() {
        let a2 = build_root_system('A', 2).unwrap();
        assert!(matches!(a2.weyl_dimension(&w(&[1, -1])), Err(Error::NotDominant(_))));
        assert!(irrep_character(&a2, &w(&[-1, 0])).is_err());
    }

    #[test]
    fn bourbaki_labels_of_small_modules() {
        let f4 = build_root_system('F', 4).unwrap();
        assert_eq!(f4.weyl_dimension(&w(&[0, 0, 0, 1])).unwrap(), BigInt::from(26));
        assert_eq!(f4.weyl_dimension(&w(&[1, 0, 0, 0])).unwrap(), BigInt::from(52));
        let b3 = build_root_system('B', 3).unwrap();
        assert_eq!(b3.weyl_dimension(&w(&[0, 0, 1])).unwrap(), BigInt::from(8));
        let e6 = build_root_system('E', 6).unwrap();
        assert_eq!(e6.weyl_dimension(&w(&[1, 0, 0, 0, 0, 0])).unwrap(), BigInt::from(27));
        assert_eq!(e6.weyl_dimension(&w(&[0, 1, 0, 0, 0, 0])).unwrap(), BigInt::from(78));
        let c3 = build_root_system('C', 3).unwrap();
        assert_eq!(c3.weyl_dimension(&w(&[0, 1, 0])).unwrap(), BigInt::from(14));
        assert_eq!(c3.weyl_dimension(&w(&[0, 0, 1])).unwrap(), BigInt::from(14));
    }

    #[test]
    fn dual_weights() {
        let a2 = build_root_system('A', 2).unwrap();
        assert_eq!(a2.dual_weight(&w(&[1, 0])), w(&[0, 1]));
        let d5 = build_root_system('D', 5).unwrap();
        assert_eq!(d5.dual_weight(&w(&[0, 0, 0, 1, 0])), w(&[0, 0, 0, 0, 1]));
        let d4 = build_root_system('D', 4).unwrap();
        assert_eq!(d4.dual_weight(&w(&[0, 0, 0, 1])), w(&[0, 0, 0, 1]));
    }

    #[test]
    fn cached_freudenthal_is_shared() {
        let b2 = build_root_system('B', 2).unwrap();
        let a = b2.dominant_character(&w(&[1, 1])).unwrap();
        let b = b2.dominant_character(&w(&[1, 1])).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
