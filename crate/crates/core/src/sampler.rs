//! Random rational elements of classical groups, for invariance checks of
//! explicit generators, and named generator polynomials in matching
//! coordinates.
//!
//! Sampler names: `so(n)`, `sl(n)`, `sl(n):sym2`, `sl(n):ext2`, each
//! optionally followed by `xM` for `M` diagonal copies (e.g. `sl(2)x2`).
//! `sym2` coordinates are the entries `X[i][j]`, `i <= j`, of a symmetric
//! matrix in lexicographic order; `ext2` uses `i < j` of an antisymmetric one.
//! The group acts by `X -> g X g^T`.

use crate::error::{Error, Result};
use crate::fingrp::RatMatrix;
use crate::polyops::{Monomial, Polynomial, Rational, VarShape};
use crate::rep::block_diagonal;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub trait GroupSampler: Send + Sync {
    fn name(&self) -> String;
    /// Dimension of the module acted on.
    fn dim(&self) -> usize;
    fn sample(&self, rng: &mut ChaCha8Rng) -> RatMatrix;
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)))
}

fn nonzero_small(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::from_integer(BigInt::from(v))
}

/// Cayley transform `(1 - A)^{-1} (1 + A)` of a random antisymmetric `A`.
struct SpecialOrthogonal(usize);

impl GroupSampler for SpecialOrthogonal {
    fn name(&self) -> String {
        format!("so({})", self.0)
    }

    fn dim(&self) -> usize {
        self.0
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> RatMatrix {
        let n = self.0;
        let mut a = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = small(rng) / Rational::from_integer(BigInt::from(rng.gen_range(1i64..=2)));
                a[j][i] = -v.clone();
                a[i][j] = v;
            }
        }
        let id = RatMatrix::identity(n).rows();
        let plus: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| &id[i][j] + &a[i][j]).collect())
            .collect();
        let minus: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| &id[i][j] - &a[i][j]).collect())
            .collect();
        let minus = RatMatrix::from_rows(minus).expect("square");
        let inv = minus
            .inverse()
            .expect("1 - A is invertible for antisymmetric rational A");
        inv.mul(&RatMatrix::from_rows(plus).expect("square"))
    }
}

/// Unipotent upper times unipotent lower times a determinant-one diagonal.
struct SpecialLinear(usize);

fn random_sl(n: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut upper = RatMatrix::identity(n).rows();
    let mut lower = RatMatrix::identity(n).rows();
    for i in 0..n {
        for j in i + 1..n {
            upper[i][j] = small(rng);
            lower[j][i] = small(rng);
        }
    }
    let mut diag = RatMatrix::identity(n).rows();
    let mut prod = Rational::one();
    for (i, row) in diag.iter_mut().enumerate().take(n - 1) {
        row[i] = nonzero_small(rng);
        prod *= &row[i];
    }
    diag[n - 1][n - 1] = Rational::one() / prod;
    let u = RatMatrix::from_rows(upper).expect("square");
    let l = RatMatrix::from_rows(lower).expect("square");
    let d = RatMatrix::from_rows(diag).expect("square");
    u.mul(&l).mul(&d)
}

impl GroupSampler for SpecialLinear {
    fn name(&self) -> String {
        format!("sl({})", self.0)
    }

    fn dim(&self) -> usize {
        self.0
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> RatMatrix {
        random_sl(self.0, rng)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Square {
    Sym,
    Ext,
}

fn square_coords(n: usize, kind: Square) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if kind == Square::Sym || i < j {
                out.push((i, j));
            }
        }
    }
    out
}

/// `X -> g X g^T` on symmetric or antisymmetric matrices.
struct InducedSquare {
    n: usize,
    kind: Square,
}

impl GroupSampler for InducedSquare {
    fn name(&self) -> String {
        match self.kind {
            Square::Sym => format!("sl({}):sym2", self.n),
            Square::Ext => format!("sl({}):ext2", self.n),
        }
    }

    fn dim(&self) -> usize {
        square_coords(self.n, self.kind).len()
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> RatMatrix {
        let g = random_sl(self.n, rng);
        induced_square(&g, self.kind)
    }
}

fn induced_square(g: &RatMatrix, kind: Square) -> RatMatrix {
    let n = g.size();
    let coords = square_coords(n, kind);
    let sign = match kind {
        Square::Sym => Rational::one(),
        Square::Ext => -Rational::one(),
    };
    let m = coords.len();
    let mut rows = vec![vec![Rational::zero(); m]; m];
    for (col, &(a, b)) in coords.iter().enumerate() {
        // image of the basis matrix E_ab + sign E_ba; read entries (i, j)
        for (row, &(i, j)) in coords.iter().enumerate() {
            let v = g.get(i, a) * g.get(j, b) + &sign * g.get(i, b) * g.get(j, a);
            rows[row][col] = if kind == Square::Sym && a == b {
                g.get(i, a) * g.get(j, a)
            } else {
                v
            };
        }
    }
    RatMatrix::from_rows(rows).expect("square")
}

struct Copies {
    inner: Box<dyn GroupSampler>,
    copies: usize,
}

impl GroupSampler for Copies {
    fn name(&self) -> String {
        format!("{}x{}", self.inner.name(), self.copies)
    }

    fn dim(&self) -> usize {
        self.inner.dim() * self.copies
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> RatMatrix {
        block_diagonal(&self.inner.sample(rng), self.copies)
    }
}

pub fn sampler_by_name(name: &str) -> Result<Box<dyn GroupSampler>> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::invalid(format!("unknown sampler '{name}'"));
    let (base, copies) = match compact.rsplit_once(")x") {
        Some((b, m)) => (format!("{b})"), m.parse::<usize>().map_err(|_| bad())?),
        None => match compact.rsplit_once("x") {
            Some((b, m)) if b.ends_with("sym2") || b.ends_with("ext2") => {
                (b.to_string(), m.parse::<usize>().map_err(|_| bad())?)
            }
            _ => (compact.clone(), 1),
        },
    };
    let (group, induced) = match base.split_once(':') {
        Some((g, i)) => (g.to_string(), Some(i.to_string())),
        None => (base.clone(), None),
    };
    let arg = |prefix: &str| -> Option<usize> {
        group
            .strip_prefix(prefix)
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.parse().ok())
    };
    let inner: Box<dyn GroupSampler> = match (arg("so("), arg("sl("), induced.as_deref()) {
        (Some(n), None, None) if n >= 2 => Box::new(SpecialOrthogonal(n)),
        (None, Some(n), None) if n >= 2 => Box::new(SpecialLinear(n)),
        (None, Some(n), Some("sym2")) if n >= 2 => Box::new(InducedSquare { n, kind: Square::Sym }),
        (None, Some(n), Some("ext2")) if n >= 2 => Box::new(InducedSquare { n, kind: Square::Ext }),
        _ => return Err(bad()),
    };
    if copies == 0 {
        return Err(bad());
    }
    Ok(if copies == 1 {
        inner
    } else {
        Box::new(Copies { inner, copies })
    })
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Named generator polynomials on one copy of `V`:
/// `quadratic_form(n)`, `det(n)` (n vectors of `C^n` laid out one after
/// another), `sym_det(n)` and `pfaffian(n)` in the sampler coordinates.
pub fn named_polynomial(name: &str) -> Result<Polynomial> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::invalid(format!("unknown named polynomial '{name}'"));
    let (head, arg) = compact
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(bad)?;
    let n: usize = arg.parse().map_err(|_| bad())?;
    if n == 0 || n > 8 {
        return Err(bad());
    }
    let monomial = |dim: usize, vars: &[usize]| {
        let mut m = Monomial::one(dim);
        for &v in vars {
            m.0[v] += 1;
        }
        m
    };
    match head {
        "quadratic_form" => {
            let shape = VarShape::new(1, n);
            Ok(Polynomial::from_terms(
                shape,
                (0..n).map(|i| (monomial(n, &[i]).mul(&monomial(n, &[i])), q(1))),
            ))
        }
        "det" => {
            let dim = n * n;
            let shape = VarShape::new(1, dim);
            Ok(Polynomial::from_terms(
                shape,
                permutations_with_sign(n).into_iter().map(|(p, s)| {
                    let vars: Vec<usize> = (0..n).map(|v| v * n + p[v]).collect();
                    (monomial(dim, &vars), q(s))
                }),
            ))
        }
        "sym_det" => {
            let coords = square_coords(n, Square::Sym);
            let dim = coords.len();
            let index = |i: usize, j: usize| {
                let key = if i <= j { (i, j) } else { (j, i) };
                coords.iter().position(|&c| c == key).expect("coordinate")
            };
            let shape = VarShape::new(1, dim);
            Ok(Polynomial::from_terms(
                shape,
                permutations_with_sign(n).into_iter().map(|(p, s)| {
                    let vars: Vec<usize> = (0..n).map(|i| index(i, p[i])).collect();
                    (monomial(dim, &vars), q(s))
                }),
            ))
        }
        "pfaffian" if n % 2 == 0 => {
            let coords = square_coords(n, Square::Ext);
            let dim = coords.len();
            let index = |i: usize, j: usize| coords.iter().position(|&c| c == (i, j)).expect("coordinate");
            let shape = VarShape::new(1, dim);
            // sum over perfect matchings with the sign of the flattened permutation
            fn matchings(rest: Vec<usize>) -> Vec<Vec<(usize, usize)>> {
                if rest.is_empty() {
                    return vec![Vec::new()];
                }
                let a = rest[0];
                let mut out = Vec::new();
                for t in 1..rest.len() {
                    let b = rest[t];
                    let remaining: Vec<usize> =
                        rest.iter().enumerate().filter(|&(i, _)| i != 0 && i != t).map(|(_, &v)| v).collect();
                    for mut m in matchings(remaining) {
                        m.insert(0, (a, b));
                        out.push(m);
                    }
                }
                out
            }
            let mut terms = Vec::new();
            for m in matchings((0..n).collect()) {
                let flat: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
                let mut inv = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if flat[i] > flat[j] {
                            inv += 1;
                        }
                    }
                }
                let vars: Vec<usize> = m.iter().map(|&(a, b)| index(a, b)).collect();
                terms.push((monomial(dim, &vars), q(if inv % 2 == 0 { 1 } else { -1 })));
            }
            Ok(Polynomial::from_terms(shape, terms))
        }
        _ => Err(bad()),
    }
}

/// Checks `f(g v) = f(v)` for `samples` random elements; returns the index
/// of the first element moving `f`.
pub fn first_moving_sample(
    f: &Polynomial,
    sampler: &dyn GroupSampler,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Option<usize> {
    (0..samples).find(|_| {
        let g = sampler.sample(rng);
        &f.substitute_linear(&g.rows()) != f
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn det(m: &RatMatrix) -> Rational {
        let n = m.size();
        permutations_with_sign(n)
            .into_iter()
            .map(|(p, s)| (0..n).fold(q(s), |acc, i| acc * m.get(i, p[i])))
            .sum()
    }

    #[test]
    fn samples_lie_in_their_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let g = sampler_by_name("so(4)").unwrap().sample(&mut rng);
            let gt = RatMatrix::from_rows(
                (0..4).map(|i| (0..4).map(|j| g.get(j, i).clone()).collect()).collect(),
            )
            .unwrap();
            assert!(g.mul(&gt).is_identity());
            assert_eq!(det(&g), q(1));
            let h = sampler_by_name("sl(3)").unwrap().sample(&mut rng);
            assert_eq!(det(&h), q(1));
        }
    }

    #[test]
    fn named_generators_are_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (poly, sampler) in [
            ("quadratic_form(5)", "so(5)"),
            ("det(2)", "sl(2)x2"),
            ("det(3)", "sl(3)x3"),
            ("sym_det(3)", "sl(3):sym2"),
            ("pfaffian(4)", "sl(4):ext2"),
        ] {
            let f = named_polynomial(poly).unwrap();
            let s = sampler_by_name(sampler).unwrap();
            assert_eq!(s.dim(), f.shape().dim, "{poly}");
            assert_eq!(first_moving_sample(&f, s.as_ref(), 5, &mut rng), None, "{poly}");
        }
        // a non-invariant polynomial is caught
        let f = named_polynomial("quadratic_form(3)").unwrap();
        let s = sampler_by_name("sl(3)").unwrap();
        assert!(first_moving_sample(&f, s.as_ref(), 5, &mut rng).is_some());
    }

    #[test]
    fn named_polynomial_shapes() {
        assert_eq!(named_polynomial("det(2)").unwrap().to_string(), "x[1][1] * x[1][4] - x[1][2] * x[1][3]");
        assert_eq!(named_polynomial("pfaffian(6)").unwrap().num_terms(), 15);
        assert_eq!(named_polynomial("sym_det(3)").unwrap().num_terms(), 5);
        assert!(named_polynomial("pfaffian(5)").is_err());
        assert!(sampler_by_name("sp(4)").is_err());
        assert_eq!(sampler_by_name("sl(6):ext2").unwrap().dim(), 15);
        assert_eq!(sampler_by_name("sl(2)x2").unwrap().dim(), 4);
    }
}
