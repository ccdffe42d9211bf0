//! Exact multivariate polynomials over the rationals on `k` copies of a
//! vector space, polarization and restitution, and exact span computations.
//!
//! Variable `x[i][j]` is coordinate `j` of copy `i` (both 1-based in text).
//! Monomials are ordered graded-lexicographically; that order fixes pivot
//! choice in elimination and term order in printed output.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Rational = BigRational;

/// Shape of the variable set: `copies` blocks of `dim` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarShape {
    pub copies: usize,
    pub dim: usize,
}

impl VarShape {
    pub fn new(copies: usize, dim: usize) -> Self {
        VarShape { copies, dim }
    }

    pub fn num_vars(&self) -> usize {
        self.copies * self.dim
    }

    pub fn index(&self, copy: usize, coord: usize) -> usize {
        copy * self.dim + coord
    }
}

/// Exponent vector, packed copy by copy.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn multidegree(&self, shape: VarShape) -> Vec<u32> {
        self.0
            .chunks(shape.dim.max(1))
            .map(|c| c.iter().map(|&e| e as u32).sum())
            .take(shape.copies)
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    shape: VarShape,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(shape: VarShape) -> Self {
        Polynomial {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(shape: VarShape, c: Rational) -> Self {
        let mut p = Polynomial::zero(shape);
        p.add_term(Monomial::one(shape.num_vars()), c);
        p
    }

    pub fn one(shape: VarShape) -> Self {
        Polynomial::constant(shape, Rational::one())
    }

    /// The coordinate function `x[copy][coord]`, 0-based.
    pub fn var(shape: VarShape, copy: usize, coord: usize) -> Self {
        let mut m = Monomial::one(shape.num_vars());
        m.0[shape.index(copy, coord)] = 1;
        let mut p = Polynomial::zero(shape);
        p.add_term(m, Rational::one());
        p
    }

    pub fn from_terms(shape: VarShape, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(shape);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn shape(&self) -> VarShape {
        self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.shape.num_vars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.shape, other.shape, "shape mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.shape);
        }
        Polynomial {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.shape, other.shape, "shape mismatch");
        let mut out = Polynomial::zero(self.shape);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.shape);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Total degree if homogeneous (the zero polynomial has none).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Per-copy degrees if multihomogeneous.
    pub fn multidegree(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|m| m.multidegree(self.shape));
        let d = it.next()?;
        for e in it {
            if e != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.shape.num_vars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Value modulo the prime `p` at a point of residues; `None` when a
    /// coefficient denominator vanishes mod `p`.
    pub fn evaluate_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        assert_eq!(point.len(), self.shape.num_vars());
        let pb = BigInt::from(p);
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let num = residue(c.numer(), &pb);
            let den = residue(c.denom(), &pb);
            if den == 0 {
                return None;
            }
            let mut t = mulmod(num, powmod(den, p - 2, p), p);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = mulmod(t, powmod(point[i], e as u64, p), p);
                }
            }
            total = (total + t) % p;
        }
        Some(total)
    }

    /// Re-embeds a polynomial on one copy into copy `copy` of a `k`-copy shape.
    pub fn embed_in_copy(&self, copies: usize, copy: usize) -> Polynomial {
        assert_eq!(self.shape.copies, 1);
        let shape = VarShape::new(copies, self.shape.dim);
        let mut out = Polynomial::zero(shape);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(shape.num_vars());
            for j in 0..self.shape.dim {
                e.0[shape.index(copy, j)] = m.0[j];
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// `p(g v_1, ..., g v_k)`: substitutes `x[c][j] -> sum_l g[j][l] x[c][l]`
    /// in every copy.
    pub fn substitute_linear(&self, g: &[Vec<Rational>]) -> Polynomial {
        let n = self.shape.dim;
        assert_eq!(g.len(), n, "matrix size must match the copy dimension");
        if let Some(perm) = monomial_pattern(g) {
            let mut out = Polynomial::zero(self.shape);
            for (m, c) in &self.terms {
                let mut e = Monomial::one(self.shape.num_vars());
                let mut coeff = c.clone();
                for copy in 0..self.shape.copies {
                    for j in 0..n {
                        let a = m.0[self.shape.index(copy, j)];
                        if a > 0 {
                            let (l, ref s) = perm[j];
                            e.0[self.shape.index(copy, l)] += a;
                            coeff *= num_traits::pow(s.clone(), a as usize);
                        }
                    }
                }
                out.add_term(e, coeff);
            }
            return out;
        }
        let mut images: Vec<Polynomial> = Vec::with_capacity(self.shape.num_vars());
        for copy in 0..self.shape.copies {
            for row in g.iter() {
                let mut lin = Polynomial::zero(self.shape);
                for (l, a) in row.iter().enumerate() {
                    if !a.is_zero() {
                        let mut e = Monomial::one(self.shape.num_vars());
                        e.0[self.shape.index(copy, l)] = 1;
                        lin.add_term(e, a.clone());
                    }
                }
                images.push(lin);
            }
        }
        let mut powers: BTreeMap<(usize, u16), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(self.shape);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.shape, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let p = powers
                        .entry((i, e))
                        .or_insert_with(|| images[i].pow(e as u32));
                    t = t.mul(p);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Integer row vector with the same span: coefficients cleared of
    /// denominators and divided by their content, leading coefficient positive.
    fn primitive_row(&self) -> BTreeMap<Monomial, BigInt> {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut row: BTreeMap<Monomial, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), (c * Rational::from_integer(lcm.clone())).to_integer()))
            .collect();
        normalize_row(&mut row);
        row
    }
}

fn residue(x: &BigInt, p: &BigInt) -> u64 {
    let r = x.mod_floor(p);
    r.to_u64().expect("residue below modulus")
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Rank of a dense matrix over the prime field `F_p`.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = powmod(rows[rank][col], p - 2, p);
        for r in rank + 1..rows.len() {
            let f = mulmod(rows[r][col], inv, p);
            if f != 0 {
                for c in col..ncols {
                    let sub = mulmod(f, rows[rank][c], p);
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn normalize_row(row: &mut BTreeMap<Monomial, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return;
    }
    let lead_negative = row.values().next().is_some_and(|c| c.is_negative());
    let g = if lead_negative { -g } else { g };
    if !g.is_one() {
        for c in row.values_mut() {
            *c = &*c / &g;
        }
    }
}

/// For a monomial matrix, the image column and coefficient of each row.
fn monomial_pattern(g: &[Vec<Rational>]) -> Option<Vec<(usize, Rational)>> {
    let mut out = Vec::with_capacity(g.len());
    for row in g {
        let mut nz = row.iter().enumerate().filter(|(_, a)| !a.is_zero());
        let (l, a) = nz.next()?;
        if nz.next().is_some() {
            return None;
        }
        out.push((l, a.clone()));
    }
    Some(out)
}

fn multinomial(parts: &[u32]) -> BigInt {
    let mut total = 0u32;
    let mut out = BigInt::one();
    for &p in parts {
        for i in 1..=p {
            total += 1;
            out = out * BigInt::from(total) / BigInt::from(i);
        }
    }
    out
}

/// All compositions of `d` into `k` nonnegative parts, lexicographically
/// descending (so `(d,0,...,0)` comes first).
pub fn compositions(d: u32, k: usize) -> Vec<Vec<u32>> {
    fn rec(d: u32, k: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(d - a, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, k, &mut Vec::new(), &mut out);
    out
}

/// Polarizations `f_alpha` of a homogeneous polynomial on `V`, indexed by
/// `alpha` with `|alpha| = deg f`; `f(s_1 v_1 + ... + s_k v_k) = sum s^alpha f_alpha`.
pub fn polarize(f: &Polynomial, k: usize) -> Result<BTreeMap<Vec<u32>, Polynomial>> {
    if f.shape.copies != 1 {
        return Err(Error::invalid("polarize expects a polynomial on a single copy"));
    }
    if k == 0 {
        return Err(Error::invalid("polarize needs k >= 1"));
    }
    let shape = VarShape::new(k, f.shape.dim);
    let d = match f.homogeneous_degree() {
        Some(d) => d,
        None if f.is_zero() => 0,
        None => return Err(Error::NotHomogeneous),
    };
    let mut out: BTreeMap<Vec<u32>, Polynomial> = compositions(d, k)
        .into_iter()
        .map(|a| (a, Polynomial::zero(shape)))
        .collect();
    for (m, c) in &f.terms {
        // (alpha, exponents on kV, integer coefficient)
        let mut partial: Vec<(Vec<u32>, Monomial, BigInt)> =
            vec![(vec![0; k], Monomial::one(shape.num_vars()), BigInt::one())];
        for j in 0..f.shape.dim {
            let e = m.0[j];
            if e == 0 {
                continue;
            }
            let mut next = Vec::new();
            for split in compositions(e as u32, k) {
                let coeff = multinomial(&split);
                for (alpha, mono, c0) in &partial {
                    let mut a = alpha.clone();
                    let mut mm = mono.clone();
                    for (i, &s) in split.iter().enumerate() {
                        a[i] += s;
                        mm.0[shape.index(i, j)] += s as u16;
                    }
                    next.push((a, mm, c0 * &coeff));
                }
            }
            partial = next;
        }
        for (alpha, mono, coeff) in partial {
            out.get_mut(&alpha)
                .expect("alpha has |alpha| = d")
                .add_term(mono, c * Rational::from_integer(coeff));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checked: usize,
    /// Labels of the checks that failed, e.g. the offending `alpha`.
    pub failures: Vec<String>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `f_alpha(v, ..., v) = multinomial(d; alpha) f(v)` at each point.
pub fn restitute(
    f: &Polynomial,
    pieces: &BTreeMap<Vec<u32>, Polynomial>,
    points: &[Vec<Rational>],
) -> ConsistencyReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (alpha, piece) in pieces {
        let k = alpha.len();
        let factor = Rational::from_integer(multinomial(alpha));
        let mut ok = true;
        for v in points {
            checked += 1;
            let repeated: Vec<Rational> = (0..k).flat_map(|_| v.iter().cloned()).collect();
            if piece.evaluate(&repeated) != &factor * f.evaluate(v) {
                ok = false;
            }
        }
        if !ok {
            failures.push(format!("{alpha:?}"));
        }
    }
    ConsistencyReport { checked, failures }
}

/// Checks `(fg)_alpha = sum_{a' + a'' = alpha} f_{a'} g_{a''}` exactly.
pub fn coalgebra_check(f: &Polynomial, g: &Polynomial, k: usize) -> Result<ConsistencyReport> {
    let fg = polarize(&f.mul(g), k)?;
    let pf = polarize(f, k)?;
    let pg = polarize(g, k)?;
    let mut failures = Vec::new();
    for (alpha, lhs) in &fg {
        let mut rhs = Polynomial::zero(lhs.shape());
        for (a1, p1) in &pf {
            if a1.iter().zip(alpha).any(|(x, y)| x > y) {
                continue;
            }
            let a2: Vec<u32> = alpha.iter().zip(a1).map(|(y, x)| y - x).collect();
            if let Some(p2) = pg.get(&a2) {
                rhs = rhs.add(&p1.mul(p2));
            }
        }
        if &rhs != lhs {
            failures.push(format!("{alpha:?}"));
        }
    }
    Ok(ConsistencyReport {
        checked: fg.len(),
        failures,
    })
}

/// Incremental row echelon form over the integers (fraction-free).
///
/// Each stored row is primitive with a positive coefficient at its pivot,
/// the smallest monomial in the row; pivots are pairwise distinct.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<Monomial, BTreeMap<Monomial, BigInt>>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_row(&self, mut row: BTreeMap<Monomial, BigInt>) -> BTreeMap<Monomial, BigInt> {
        loop {
            let hit = row
                .iter()
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((pivot, c)) = hit else { return row };
            let basis_row = &self.rows[&pivot];
            let p = &basis_row[&pivot];
            let g = p.gcd(&c);
            let (fr, fb) = (p / &g, &c / &g);
            for v in row.values_mut() {
                *v *= &fr;
            }
            for (m, b) in basis_row {
                let e = row.entry(m.clone()).or_insert_with(BigInt::zero);
                *e -= b * &fb;
                if e.is_zero() {
                    row.remove(m);
                }
            }
            normalize_row(&mut row);
        }
    }

    /// Adds `p` to the span; returns `true` when it was independent.
    pub fn insert(&mut self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return false;
        }
        let row = self.reduce_row(p.primitive_row());
        match row.keys().next().cloned() {
            None => false,
            Some(pivot) => {
                let mut row = row;
                normalize_row(&mut row);
                self.rows.insert(pivot, row);
                true
            }
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        p.is_zero() || self.reduce_row(p.primitive_row()).is_empty()
    }
}

/// Rank of the coefficient matrix of multihomogeneous polynomials of
/// multidegree `beta`.
pub fn span_dimension(polys: &[Polynomial], beta: &[u32]) -> Result<usize> {
    let mut basis = EchelonBasis::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        match p.multidegree() {
            Some(md) if md == beta => {}
            Some(md) => {
                return Err(Error::MixedMultidegree {
                    got: md,
                    expected: beta.to_vec(),
                })
            }
            None => {
                return Err(Error::MixedMultidegree {
                    got: vec![],
                    expected: beta.to_vec(),
                })
            }
        }
        basis.insert(p);
    }
    Ok(basis.rank())
}

/// All monomials of the given per-copy multidegree, ascending in term order.
pub fn monomials_of_multidegree(shape: VarShape, beta: &[u32]) -> Vec<Monomial> {
    assert_eq!(beta.len(), shape.copies);
    let mut out = vec![Monomial::one(shape.num_vars())];
    for (copy, &b) in beta.iter().enumerate() {
        let mut next = Vec::new();
        for exps in compositions(b, shape.dim) {
            for m in &out {
                let mut mm = m.clone();
                for (j, &e) in exps.iter().enumerate() {
                    mm.0[shape.index(copy, j)] = e as u16;
                }
                next.push(mm);
            }
        }
        out = next;
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Text syntax: `3/2 * x[1][2]^2 * x[2][1] - x[1][1]`

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<BigInt>().map_err(|e| self.err(e.to_string()))
    }

    fn small(&mut self) -> Result<usize> {
        let n = self.number()?;
        n.to_usize().ok_or_else(|| self.err("index out of range"))
    }
}

/// Parses a polynomial; the shape is the smallest covering every variable
/// unless `shape` is given.
pub fn parse_polynomial(text: &str, shape: Option<VarShape>) -> Result<Polynomial> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    // (coefficient, [(copy, coord, exp)])
    let mut raw: Vec<(Rational, Vec<(usize, usize, u16)>)> = Vec::new();
    let mut first = true;
    loop {
        let mut sign = Rational::one();
        match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some(b'+') => {
                lx.pos += 1;
            }
            Some(b'-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(format!("unexpected '{}'", c as char))),
        }
        first = false;
        let mut coeff = sign;
        let mut vars = Vec::new();
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.number()?;
                    let mut q = Rational::from_integer(num);
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let den = lx.number()?;
                        if den.is_zero() {
                            return Err(lx.err("zero denominator"));
                        }
                        q /= Rational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some(b'x') => {
                    lx.pos += 1;
                    lx.expect(b'[')?;
                    let i = lx.small()?;
                    lx.expect(b']')?;
                    lx.expect(b'[')?;
                    let j = lx.small()?;
                    lx.expect(b']')?;
                    if i == 0 || j == 0 {
                        return Err(lx.err("variable indices are 1-based"));
                    }
                    let mut e = 1u16;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        e = u16::try_from(lx.small()?).map_err(|_| lx.err("exponent too large"))?;
                    }
                    vars.push((i - 1, j - 1, e));
                }
                _ => return Err(lx.err("expected a coefficient or a variable x[i][j]")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        raw.push((coeff, vars));
    }
    let needed = raw.iter().flat_map(|(_, v)| v.iter()).fold((1, 1), |(c, d), &(i, j, _)| {
        (c.max(i + 1), d.max(j + 1))
    });
    let shape = match shape {
        Some(s) => {
            if needed.0 > s.copies || needed.1 > s.dim {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!(
                        "variable index exceeds shape {} copies x {} coordinates",
                        s.copies, s.dim
                    ),
                });
            }
            s
        }
        None => VarShape::new(needed.0, needed.1),
    };
    let mut p = Polynomial::zero(shape);
    for (c, vars) in raw {
        let mut m = Monomial::one(shape.num_vars());
        for (i, j, e) in vars {
            m.0[shape.index(i, j)] += e;
        }
        p.add_term(m, c);
    }
    Ok(p)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.degree() == 0;
            if !a.is_one() || is_const {
                factors.push(a.to_string());
            }
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (i, j) = (idx / self.shape.dim + 1, idx % self.shape.dim + 1);
                if e == 1 {
                    factors.push(format!("x[{i}][{j}]"));
                } else {
                    factors.push(format!("x[{i}][{j}]^{e}"));
                }
            }
            write!(f, "{}", factors.join(" * "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, None).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f = parse_polynomial("3/2 * x[1][2]^2 * x[2][1] - x[1][1]", None).unwrap();
        assert_eq!(f.shape(), VarShape::new(2, 2));
        assert_eq!(f.to_string(), "3/2 * x[1][2]^2 * x[2][1] - x[1][1]");
        let g = parse_polynomial(&f.to_string(), Some(f.shape())).unwrap();
        assert_eq!(f, g);
        assert!(parse_polynomial("x[0][1]", None).is_err());
        assert!(parse_polynomial("x[1][1] +", None).is_err());
        assert!(parse_polynomial("", None).is_err());
        match parse_polynomial("x[1][1] * y", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn polarize_cube() {
        let f = p("x[1][1]^3");
        let pol = polarize(&f, 2).unwrap();
        assert_eq!(pol[&vec![2, 1]], p("3 * x[1][1]^2 * x[2][1]"));
        assert_eq!(pol[&vec![3, 0]], f.embed_in_copy(2, 0));
    }

    #[test]
    fn polarize_quadratic_form() {
        let f = p("x[1][1]^2 + x[1][2]^2 + x[1][3]^2");
        let pol = polarize(&f, 2).unwrap();
        let expect = parse_polynomial(
            "2*x[1][1]*x[2][1] + 2*x[1][2]*x[2][2] + 2*x[1][3]*x[2][3]",
            Some(VarShape::new(2, 3)),
        )
        .unwrap();
        assert_eq!(pol[&vec![1, 1]], expect);
    }

    #[test]
    fn polarize_determinant_of_two_vectors() {
        // V = C^2 + C^2 with coordinates (v1, v2, w1, w2), f = det(v, w)
        let f = p("x[1][1]*x[1][4] - x[1][2]*x[1][3]");
        let pol = polarize(&f, 2).unwrap();
        // det(v, w') + det(v', w)
        let expect = parse_polynomial(
            "x[1][1]*x[2][4] - x[1][2]*x[2][3] + x[2][1]*x[1][4] - x[2][2]*x[1][3]",
            Some(VarShape::new(2, 4)),
        )
        .unwrap();
        assert_eq!(pol[&vec![1, 1]], expect);
        assert!(polarize(&p("x[1][1] + x[1][2]^2"), 2).is_err());
    }

    #[test]
    fn restitution_of_examples() {
        let point = vec![vec![q(1), q(2), q(3), q(4)]];
        for (f, k) in [
            ("x[1][1]^3", 2),
            ("x[1][1]^2 + x[1][2]^2 + x[1][3]^2", 2),
            ("x[1][1]*x[1][4] - x[1][2]*x[1][3]", 2),
        ] {
            let f = p(f);
            let v: Vec<Rational> = point[0][..f.shape().dim].to_vec();
            let rep = restitute(&f, &polarize(&f, k).unwrap(), &[v]);
            assert!(rep.passed(), "{f}");
        }
        let c = Polynomial::constant(VarShape::new(1, 2), q(5));
        let pieces = polarize(&c, 3).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[&vec![0, 0, 0]], Polynomial::constant(VarShape::new(3, 2), q(5)));
    }

    #[test]
    fn restitution_flags_tampered_piece() {
        let f = p("x[1][1]^2*x[1][2]");
        let mut pieces = polarize(&f, 2).unwrap();
        let bad = pieces[&vec![1, 2]].scale(&q(2));
        pieces.insert(vec![1, 2], bad);
        let rep = restitute(&f, &pieces, &[vec![q(1), q(3)]]);
        assert_eq!(rep.failures, vec!["[1, 2]".to_string()]);
    }

    #[test]
    fn span_examples() {
        let a = p("x[1][1]^2");
        assert_eq!(span_dimension(&[a.clone(), a.scale(&q(2))], &[2]).unwrap(), 1);
        let s = VarShape::new(2, 2);
        let u = parse_polynomial("x[1][1]*x[2][2] + x[1][2]*x[2][1]", Some(s)).unwrap();
        let v = parse_polynomial("x[1][1]*x[2][2] - x[1][2]*x[2][1]", Some(s)).unwrap();
        assert_eq!(span_dimension(&[u.clone(), v], &[1, 1]).unwrap(), 2);
        assert!(matches!(
            span_dimension(&[u, a.embed_in_copy(2, 0)], &[1, 1]),
            Err(Error::MixedMultidegree { .. })
        ));
    }

    #[test]
    fn coalgebra_examples() {
        let x = p("x[1][1]");
        assert!(coalgebra_check(&x, &x, 2).unwrap().passed());
        let s = VarShape::new(1, 2);
        let f = parse_polynomial("x[1][1]^2", Some(s)).unwrap();
        let g = parse_polynomial("x[1][2]^3", Some(s)).unwrap();
        assert!(coalgebra_check(&f, &g, 2).unwrap().passed());
        let h = p("x[1][1]^2 + x[1][2]^2 + x[1][3]^2");
        assert!(coalgebra_check(&h, &h, 3).unwrap().passed());
    }

    #[test]
    fn echelon_membership() {
        let s = VarShape::new(1, 2);
        let mut b = EchelonBasis::new();
        assert!(b.insert(&parse_polynomial("x[1][1]^2 + x[1][2]^2", Some(s)).unwrap()));
        assert!(b.insert(&parse_polynomial("x[1][1]*x[1][2]", Some(s)).unwrap()));
        assert!(b.contains(&parse_polynomial("3*x[1][1]^2 + 3*x[1][2]^2 - 1/2*x[1][1]*x[1][2]", Some(s)).unwrap()));
        assert!(!b.contains(&parse_polynomial("x[1][1]^2", Some(s)).unwrap()));
        assert_eq!(b.rank(), 2);
    }

    fn apply(g: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        g.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn substitution_matches_evaluation() {
        let f = p("x[1][1]^2*x[1][2] - 2*x[1][2]^3");
        let v = vec![q(2), q(-5)];
        let monomial = vec![vec![q(0), q(-1)], vec![q(3), q(0)]];
        let shear = vec![vec![q(1), q(2)], vec![q(0), q(1)]];
        for g in [monomial, shear] {
            let h = f.substitute_linear(&g);
            assert_eq!(h.evaluate(&v), f.evaluate(&apply(&g, &v)));
        }
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_multidegree(VarShape::new(2, 3), &[2, 1]);
        assert_eq!(ms.len(), 6 * 3);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }
}
