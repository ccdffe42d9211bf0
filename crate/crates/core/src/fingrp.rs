//! Finite groups of rational matrices: closure, multigraded Molien
//! dimensions, Reynolds averaging and invariant bases.

use crate::error::{Error, Result};
use crate::polyops::{
    compositions, monomials_of_multidegree, EchelonBasis, Monomial, Polynomial, Rational, VarShape,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, RwLock};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl RatMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        RatMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square and nonempty"));
        }
        Ok(RatMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = &self.data[i * n + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[l * n + j];
                    if !b.is_zero() {
                        data[i * n + j] += a * b;
                    }
                }
            }
        }
        RatMatrix { n, data }
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.data[i * self.n + i].clone()).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMatrix::identity(self.n)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m = self.rows();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[rank][col];
                    for c in col..n {
                        let delta = &f * &m[rank][c];
                        m[r][c] -= delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = RatMatrix::identity(n).rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let piv = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &piv;
                inv[col][c] /= &piv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n {
                        let d1 = &f * &a[col][c];
                        a[r][c] -= d1;
                        let d2 = &f * &inv[col][c];
                        inv[r][c] -= d2;
                    }
                }
            }
        }
        RatMatrix::from_rows(inv).ok()
    }

    /// `rank(g - 1) = 1`.
    pub fn is_reflection(&self) -> bool {
        let mut d = self.clone();
        for i in 0..self.n {
            d.data[i * self.n + i] -= Rational::one();
        }
        d.rank() == 1
    }
}

/// A finite matrix group with its full element list.
pub struct FiniteGroup {
    name: String,
    generators: Vec<RatMatrix>,
    elements: Vec<RatMatrix>,
    molien: RwLock<Option<Arc<MolienTable>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("dim", &self.dim())
            .finish()
    }
}

/// Breadth-first closure from the identity; each new element is `gen * elem`.
pub fn generate_group(gens: &[RatMatrix], cap: usize) -> Result<FiniteGroup> {
    generate_named("custom", gens, cap)
}

pub fn generate_named(name: &str, gens: &[RatMatrix], cap: usize) -> Result<FiniteGroup> {
    let n = match gens.first() {
        Some(g) => g.size(),
        None => return Err(Error::invalid("at least one generator is required")),
    };
    for (i, g) in gens.iter().enumerate() {
        if g.size() != n {
            return Err(Error::invalid(format!(
                "generator {} has size {} but generator 1 has size {n}",
                i + 1,
                g.size()
            )));
        }
        if g.inverse().is_none() {
            return Err(Error::NotInvertible(i + 1));
        }
    }
    let id = RatMatrix::identity(n);
    let mut seen: FxHashSet<RatMatrix> = FxHashSet::default();
    seen.insert(id.clone());
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let h = g.mul(&elements[i]);
            if !seen.contains(&h) {
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(h.clone());
                elements.push(h);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(FiniteGroup {
        name: name.to_string(),
        generators: gens.to_vec(),
        elements,
        molien: RwLock::new(None),
    })
}

fn permutation_matrix(perm: &[usize]) -> RatMatrix {
    let n = perm.len();
    let mut m = RatMatrix {
        n,
        data: vec![Rational::zero(); n * n],
    };
    for (j, &i) in perm.iter().enumerate() {
        m.data[i * n + j] = Rational::one();
    }
    m
}

fn transposition(n: usize, i: usize) -> RatMatrix {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, i + 1);
    permutation_matrix(&p)
}

/// Generators of a named built-in group: `sym(n)`, `alt(n)`, `cyclic(n)`
/// (an `n`-cycle permuting coordinates), `neg(n)` (`-1` on `C^n`) and
/// `weyl(X,n)`.
///
/// `weyl(A,n)` is the symmetric group on `n+1` letters permuting
/// coordinates of `C^(n+1)`; `weyl(B,n)` and `weyl(C,n)` are signed
/// permutations of `C^n`; `weyl(D,n)` keeps an even number of sign changes.
pub fn builtin_generators(name: &str) -> Result<Vec<RatMatrix>> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::invalid(format!("unknown group '{name}'; expected sym(n), alt(n), cyclic(n), neg(n) or weyl(A|B|C|D,n)"));
    let inner = |prefix: &str| -> Option<String> {
        compact
            .strip_prefix(prefix)
            .and_then(|s| s.strip_suffix(')'))
            .map(str::to_string)
    };
    if let Some(arg) = inner("sym(") {
        let n: usize = arg.parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(Error::invalid("sym(n) needs n >= 2"));
        }
        return Ok((0..n - 1).map(|i| transposition(n, i)).collect());
    }
    if let Some(arg) = inner("alt(") {
        let n: usize = arg.parse().map_err(|_| bad())?;
        if n < 3 {
            return Err(Error::invalid("alt(n) needs n >= 3"));
        }
        return Ok((2..n)
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(0, 1);
                p.swap(1, i);
                permutation_matrix(&p)
            })
            .collect());
    }
    if let Some(arg) = inner("cyclic(") {
        let n: usize = arg.parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(Error::invalid("cyclic(n) needs n >= 2"));
        }
        let p: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        return Ok(vec![permutation_matrix(&p)]);
    }
    if let Some(arg) = inner("neg(") {
        let n: usize = arg.parse().map_err(|_| bad())?;
        if n < 1 {
            return Err(Error::invalid("neg(n) needs n >= 1"));
        }
        let mut m = RatMatrix::identity(n);
        for i in 0..n {
            m.data[i * n + i] = -Rational::one();
        }
        return Ok(vec![m]);
    }
    let arg = inner("weyl(").ok_or_else(bad)?;
    let (letter, n) = arg.split_once(',').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    match letter {
        "A" if n >= 1 => builtin_generators(&format!("sym({})", n + 1)),
        "B" | "C" if n >= 2 => {
            let mut gens: Vec<RatMatrix> = (0..n - 1).map(|i| transposition(n, i)).collect();
            let mut s = RatMatrix::identity(n);
            s.data[n * n - 1] = -Rational::one();
            gens.push(s);
            Ok(gens)
        }
        "D" if n >= 2 => {
            let mut gens: Vec<RatMatrix> = (0..n - 1).map(|i| transposition(n, i)).collect();
            let mut s = RatMatrix::identity(n);
            let (a, b) = (n - 2, n - 1);
            s.data[a * n + a] = Rational::zero();
            s.data[b * n + b] = Rational::zero();
            s.data[a * n + b] = -Rational::one();
            s.data[b * n + a] = -Rational::one();
            gens.push(s);
            Ok(gens)
        }
        _ => Err(bad()),
    }
}

pub fn builtin_group(name: &str, cap: usize) -> Result<FiniteGroup> {
    let gens = builtin_generators(name)?;
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    generate_named(&compact, &gens, cap)
}

/// Per-element complete homogeneous traces `h_g(d) = tr S^d(g)` for
/// `d <= max_degree`.
pub struct MolienTable {
    max_degree: u32,
    h: Vec<Vec<Rational>>,
}

impl MolienTable {
    pub fn new(group: &FiniteGroup, max_degree: u32) -> Self {
        let h = group
            .elements
            .par_iter()
            .map(|g| complete_traces(g, max_degree))
            .collect();
        MolienTable { max_degree, h }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn element_traces(&self, index: usize) -> &[Rational] {
        &self.h[index]
    }

    /// `(1/|G|) sum_g prod_a h_g(beta_a)`.
    pub fn dim(&self, beta: &[u32]) -> Result<u64> {
        if let Some(&b) = beta.iter().find(|&&b| b > self.max_degree) {
            return Err(Error::invalid(format!(
                "degree {b} exceeds the Molien table bound {}",
                self.max_degree
            )));
        }
        let total: Rational = self
            .h
            .par_iter()
            .map(|h| {
                beta.iter()
                    .fold(Rational::one(), |acc, &b| acc * &h[b as usize])
            })
            .reduce(Rational::zero, |a, b| a + b);
        let avg = total / Rational::from_integer(BigInt::from(self.h.len()));
        if !avg.is_integer() {
            return Err(Error::consistency(format!(
                "Molien average {avg} for {beta:?} is not an integer"
            )));
        }
        use num_traits::ToPrimitive;
        avg.to_integer()
            .to_u64()
            .ok_or_else(|| Error::consistency(format!("Molien average {avg} out of range")))
    }
}

/// Power sums `tr(g^m)` turned into `h_g(d)` by Newton's identities.
pub fn complete_traces(g: &RatMatrix, max_degree: u32) -> Vec<Rational> {
    let mut p = Vec::with_capacity(max_degree as usize + 1);
    p.push(Rational::zero());
    let mut power = g.clone();
    for m in 1..=max_degree {
        if m > 1 {
            power = power.mul(g);
        }
        p.push(power.trace());
    }
    let mut h = vec![Rational::one()];
    for d in 1..=max_degree as usize {
        let mut s = Rational::zero();
        for m in 1..=d {
            s += &p[m] * &h[d - m];
        }
        h.push(s / Rational::from_integer(BigInt::from(d)));
    }
    h
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.elements[0].size()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[RatMatrix] {
        &self.elements
    }

    pub fn contains(&self, g: &RatMatrix) -> bool {
        self.elements.contains(g)
    }

    pub fn is_generated_by_reflections(&self) -> bool {
        let refl: Vec<RatMatrix> = self
            .elements
            .iter()
            .filter(|g| g.is_reflection())
            .cloned()
            .collect();
        if refl.is_empty() {
            return self.order() == 1;
        }
        match generate_group(&refl, self.order() + 1) {
            Ok(sub) => sub.order() == self.order(),
            Err(_) => false,
        }
    }

    /// Cached Molien table covering at least `max_degree`.
    pub fn molien_table(&self, max_degree: u32) -> Arc<MolienTable> {
        if let Some(t) = self.molien.read().expect("molien lock").as_ref() {
            if t.max_degree >= max_degree {
                return t.clone();
            }
        }
        let t = Arc::new(MolienTable::new(self, max_degree));
        *self.molien.write().expect("molien lock") = Some(t.clone());
        t
    }

    /// `dim C[kV]^G` in multidegree `beta` (`k = beta.len()`).
    pub fn molien_dim(&self, beta: &[u32]) -> Result<u64> {
        let top = beta.iter().copied().max().unwrap_or(0);
        self.molien_table(top).dim(beta)
    }

    /// Average of `p(g v_1, ..., g v_k)` over the group.
    pub fn reynolds(&self, p: &Polynomial) -> Polynomial {
        if p.is_zero() {
            return p.clone();
        }
        let images: Vec<Polynomial> = self
            .elements
            .par_iter()
            .map(|g| p.substitute_linear(&g.rows()))
            .collect();
        let mut sum = Polynomial::zero(p.shape());
        for q in &images {
            sum = sum.add(q);
        }
        sum.scale(&Rational::new(BigInt::one(), BigInt::from(self.order())))
    }

    fn is_monomial_group(&self) -> bool {
        self.generators.iter().all(|g| {
            g.rows()
                .iter()
                .all(|r| r.iter().filter(|x| !x.is_zero()).count() == 1)
        })
    }

    /// Basis of the invariants of multidegree `beta` on `beta.len()` copies,
    /// from Reynolds images of monomials in ascending term order.
    pub fn invariant_basis(&self, beta: &[u32]) -> Result<Vec<Polynomial>> {
        let target = self.molien_dim(beta)? as usize;
        let shape = VarShape::new(beta.len(), self.dim());
        let mut basis = EchelonBasis::new();
        let mut out = Vec::new();
        if target == 0 {
            return Ok(out);
        }
        let monomial = self.is_monomial_group();
        let mut covered: FxHashSet<Monomial> = FxHashSet::default();
        for m in monomials_of_multidegree(shape, beta) {
            if covered.contains(&m) {
                continue;
            }
            let p = Polynomial::from_terms(shape, [(m.clone(), Rational::one())]);
            if monomial {
                // images of orbit members are proportional to this one
                for g in &self.elements {
                    let img = p.substitute_linear(&g.rows());
                    covered.extend(img.terms().keys().cloned());
                }
            }
            let r = self.reynolds(&p);
            if basis.insert(&r) {
                out.push(r);
                if out.len() == target {
                    return Ok(out);
                }
            }
        }
        Err(Error::consistency(format!(
            "invariant basis for {beta:?} has {} elements but the Molien dimension is {target}",
            out.len()
        )))
    }

    /// Minimal homogeneous generators of `C[V]^G` of degree at most
    /// `max_degree`: at each degree, invariant basis vectors not already in
    /// the span of products of lower generators.
    pub fn minimal_generators(&self, max_degree: u32) -> Result<Vec<Polynomial>> {
        let shape = VarShape::new(1, self.dim());
        let mut gens: Vec<(u32, Polynomial)> = Vec::new();
        for d in 1..=max_degree {
            let decomposables = products_of_degree(&gens, d, shape);
            let mut span = EchelonBasis::new();
            for p in &decomposables {
                span.insert(p);
            }
            for b in self.invariant_basis(&[d])? {
                if span.insert(&b) {
                    gens.push((d, b));
                }
            }
        }
        Ok(gens.into_iter().map(|(_, p)| p).collect())
    }
}

/// All products of at least two generators (with repetition) of total degree `d`.
fn products_of_degree(gens: &[(u32, Polynomial)], d: u32, shape: VarShape) -> Vec<Polynomial> {
    fn rec(
        gens: &[(u32, Polynomial)],
        start: usize,
        remaining: u32,
        count: usize,
        acc: &Polynomial,
        out: &mut Vec<Polynomial>,
    ) {
        if remaining == 0 {
            if count >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        for i in start..gens.len() {
            let (deg, g) = &gens[i];
            if *deg <= remaining {
                rec(gens, i, remaining - deg, count + 1, &acc.mul(g), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, d, 0, &Polynomial::one(shape), &mut out);
    out
}

/// Total-degree dimension of `C[kV]^G` from a single grading: `kV` as one
/// module of dimension `k n` with the block-diagonal action.
pub fn molien_total_dim(group: &FiniteGroup, k: usize, d: u32) -> Result<u64> {
    let diag: Vec<RatMatrix> = group
        .elements()
        .iter()
        .map(|g| {
            let n = g.size();
            let mut m = RatMatrix {
                n: n * k,
                data: vec![Rational::zero(); n * n * k * k],
            };
            for b in 0..k {
                for i in 0..n {
                    for j in 0..n {
                        m.data[(b * n + i) * n * k + b * n + j] = g.get(i, j).clone();
                    }
                }
            }
            m
        })
        .collect();
    let total: Rational = diag
        .par_iter()
        .map(|g| complete_traces(g, d)[d as usize].clone())
        .reduce(Rational::zero, |a, b| a + b);
    let avg = total / Rational::from_integer(BigInt::from(group.order()));
    if !avg.is_integer() {
        return Err(Error::consistency("non-integral Molien average"));
    }
    use num_traits::ToPrimitive;
    Ok(avg.to_integer().to_u64().unwrap_or(0))
}

/// Degrees of `C[kV]^G` graded by `|beta| = d`, summed over compositions.
pub fn molien_sum_over_compositions(group: &FiniteGroup, k: usize, d: u32) -> Result<u64> {
    let mut s = 0;
    for beta in compositions(d, k) {
        s += group.molien_dim(&beta)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::parse_polynomial;

    fn poly(s: &str, copies: usize, dim: usize) -> Polynomial {
        parse_polynomial(s, Some(VarShape::new(copies, dim))).unwrap()
    }

    #[test]
    fn orders_of_builtins() {
        let cap = DEFAULT_GROUP_CAP;
        assert_eq!(builtin_group("sym(3)", cap).unwrap().order(), 6);
        assert_eq!(builtin_group("weyl(B,2)", cap).unwrap().order(), 8);
        assert_eq!(builtin_group("weyl(C,3)", cap).unwrap().order(), 48);
        assert_eq!(builtin_group("weyl(D,4)", cap).unwrap().order(), 192);
        assert_eq!(builtin_group("weyl(A,2)", cap).unwrap().order(), 6);
        assert!(builtin_group("weyl(E,6)", cap).is_err());
        assert_eq!(builtin_group("alt(4)", cap).unwrap().order(), 12);
        assert_eq!(builtin_group("alt(5)", cap).unwrap().order(), 60);
        assert_eq!(builtin_group("cyclic(4)", cap).unwrap().order(), 4);
        assert_eq!(builtin_group("neg(3)", cap).unwrap().order(), 2);
        assert!(!builtin_group("alt(4)", cap).unwrap().is_generated_by_reflections());
        assert!(builtin_group("alt(1)", cap).is_err());
    }

    #[test]
    fn closure_errors() {
        let half = RatMatrix::from_rows(vec![vec![Rational::new(1.into(), 2.into())]]).unwrap();
        assert!(matches!(
            generate_group(&[half], 50),
            Err(Error::GroupTooLarge { cap: 50 })
        ));
        let singular = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]).unwrap();
        assert!(matches!(
            generate_group(&[singular], 50),
            Err(Error::NotInvertible(1))
        ));
    }

    #[test]
    fn molien_examples() {
        let s3 = builtin_group("sym(3)", DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(s3.molien_dim(&[2]).unwrap(), 2);
        assert_eq!(s3.molien_dim(&[0, 0, 0]).unwrap(), 1);
        let b2 = builtin_group("weyl(B,2)", DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(b2.molien_dim(&[4]).unwrap(), 2);
        assert_eq!(b2.molien_dim(&[1, 1]).unwrap(), 1);
    }

    #[test]
    fn second_complete_trace_formula() {
        let d4 = builtin_group("weyl(D,4)", DEFAULT_GROUP_CAP).unwrap();
        let two = Rational::from_integer(2.into());
        for g in d4.elements() {
            let h = complete_traces(g, 2);
            let t = g.trace();
            assert_eq!(h[2], (&t * &t + g.mul(g).trace()) / &two);
        }
    }

    #[test]
    fn reynolds_examples() {
        let s3 = builtin_group("sym(3)", DEFAULT_GROUP_CAP).unwrap();
        let r = s3.reynolds(&poly("x[1][1]^2", 1, 3));
        assert_eq!(r, poly("1/3*x[1][1]^2 + 1/3*x[1][2]^2 + 1/3*x[1][3]^2", 1, 3));
        assert_eq!(s3.reynolds(&r), r);
        let b2 = builtin_group("weyl(B,2)", DEFAULT_GROUP_CAP).unwrap();
        assert!(b2.reynolds(&poly("x[1][1]*x[1][2]", 1, 2)).is_zero());
    }

    #[test]
    fn invariant_basis_examples() {
        let s3 = builtin_group("sym(3)", DEFAULT_GROUP_CAP).unwrap();
        let b = s3.invariant_basis(&[1]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], poly("1/3*x[1][1] + 1/3*x[1][2] + 1/3*x[1][3]", 1, 3));
        let d4 = builtin_group("weyl(D,4)", DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(d4.invariant_basis(&[2]).unwrap().len(), 1);
        let b2 = builtin_group("weyl(B,2)", DEFAULT_GROUP_CAP).unwrap();
        let b = b2.invariant_basis(&[1, 1]).unwrap();
        assert_eq!(b, vec![poly("1/2*x[1][1]*x[2][1] + 1/2*x[1][2]*x[2][2]", 2, 2)]);
    }

    #[test]
    fn basic_degrees() {
        let degs = |name: &str, d: u32| -> Vec<u32> {
            let g = builtin_group(name, DEFAULT_GROUP_CAP).unwrap();
            g.minimal_generators(d)
                .unwrap()
                .iter()
                .map(|p| p.homogeneous_degree().unwrap())
                .collect()
        };
        assert_eq!(degs("sym(3)", 6), vec![1, 2, 3]);
        assert_eq!(degs("weyl(B,2)", 8), vec![2, 4]);
        assert_eq!(degs("weyl(D,4)", 8), vec![2, 4, 4, 6]);
    }

    #[test]
    fn reflection_generation() {
        assert!(builtin_group("weyl(D,4)", DEFAULT_GROUP_CAP)
            .unwrap()
            .is_generated_by_reflections());
        let minus = RatMatrix::from_ints(&[&[-1, 0], &[0, -1]]).unwrap();
        let g = generate_group(&[minus], 10).unwrap();
        assert!(!g.is_generated_by_reflections());
    }
}
