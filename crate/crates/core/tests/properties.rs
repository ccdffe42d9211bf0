use polaris::charalg::{
    decompose, decompose_by_alternation, ext_power, invariant_dim, sym_power, tensor, FormalCharacter, GradedInvariants,
};
use polaris::fingrp::{builtin_group, generate_group, FiniteGroup, RatMatrix, DEFAULT_GROUP_CAP};
use polaris::polcheck::{exact_pol_span, pol_upper_bound, GeneratorTable};
use polaris::polyops::{
    coalgebra_check, monomials_of_multidegree, polarize, restitute, span_dimension, Monomial, Polynomial, Rational,
    VarShape,
};
use polaris::rootsys::{build_root_system, irrep_character};
use polaris::{Int, Weight};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(128)
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Homogeneous polynomial of degree `deg` on one copy of `C^dim`; may be zero.
fn poly(dim: usize, deg: u32, terms: &[(Vec<usize>, i64)]) -> Polynomial {
    let shape = VarShape::new(1, dim);
    let mut p = Polynomial::zero(shape);
    for (picks, c) in terms {
        let mut m = Monomial::one(dim);
        for &i in picks.iter().take(deg as usize) {
            m.0[i % dim] += 1;
        }
        p.add_term(m, rat(*c, 1));
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    (1usize..=3, 1u32..=4)
        .prop_flat_map(|(dim, deg)| {
            let term = (proptest::collection::vec(0usize..3, deg as usize), -3i64..=3);
            (Just(dim), Just(deg), proptest::collection::vec(term, 1..=4))
        })
        .prop_map(|(dim, deg, terms)| poly(dim, deg, &terms))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Two nonzero polynomials on the same space. With `same_degree` the second
/// is sometimes a copy of the first.
fn pair_strategy(same_degree: bool) -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (1usize..=3, 1u32..=4, 1u32..=2)
        .prop_flat_map(move |(dim, d1, d2)| {
            let d2 = if same_degree { d1 } else { d2 };
            let t1 = (proptest::collection::vec(0usize..3, d1 as usize), -3i64..=3);
            let t2 = (proptest::collection::vec(0usize..3, d2 as usize), -3i64..=3);
            (
                Just((dim, d1, d2)),
                proptest::collection::vec(t1, 1..=4),
                proptest::collection::vec(t2, 1..=4),
                0u8..4,
            )
        })
        .prop_map(|((dim, d1, d2), a, b, copy)| {
            let f = poly(dim, d1, &a);
            let g = if copy == 0 && d1 == d2 { f.clone() } else { poly(dim, d2, &b) };
            (f, g)
        })
        .prop_filter("nonzero", |(f, g)| !f.is_zero() && !g.is_zero())
}

fn points(dim: usize, raw: &[(i64, i64)]) -> Vec<Vec<Rational>> {
    raw.chunks(dim)
        .filter(|c| c.len() == dim)
        .map(|c| c.iter().map(|&(n, d)| rat(n, d)).collect())
        .collect()
}

fn small_group(choice: usize, perm_seed: &[(usize, bool)]) -> FiniteGroup {
    const NAMED: [&str; 6] = ["sym(2)", "sym(3)", "weyl(B,2)", "weyl(D,3)", "cyclic(3)", "alt(4)"];
    if choice < NAMED.len() {
        return builtin_group(NAMED[choice], DEFAULT_GROUP_CAP).unwrap();
    }
    // A signed permutation matrix on C^3 built from the seed.
    let mut order: Vec<usize> = (0..3).collect();
    for (i, &(j, _)) in perm_seed.iter().enumerate().take(3) {
        order.swap(i, j % 3);
    }
    let mut rows = vec![vec![0i64; 3]; 3];
    for (i, &j) in order.iter().enumerate() {
        rows[i][j] = if perm_seed[i].1 { -1 } else { 1 };
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    generate_group(&[RatMatrix::from_ints(&refs).unwrap()], DEFAULT_GROUP_CAP).unwrap()
}

fn character(kind: usize, rank: usize, weights: &[Vec<i32>], top: i32) -> FormalCharacter {
    match kind {
        0 => {
            let ws: Vec<Weight> = weights.iter().map(|w| Weight::from_slice(&w[..rank])).collect();
            FormalCharacter::torus(rank, &ws).unwrap()
        }
        1 => irrep_character(&build_root_system('A', 1).unwrap(), &Weight::from_slice(&[top])).unwrap(),
        _ => irrep_character(&build_root_system('A', 2).unwrap(), &Weight::from_slice(&[top.min(2), 1])).unwrap(),
    }
}

/// Character of `S^d` or `Lambda^d` by enumerating index multisets or subsets.
fn brute_power(chi: &FormalCharacter, d: usize, strict: bool) -> Vec<(Weight, Int)> {
    let mut ws = Vec::new();
    for (w, m) in chi.sorted_terms() {
        for _ in 0..m.to_u64().unwrap() {
            ws.push(w.clone());
        }
    }
    let rank = chi.tag().lattice_rank();
    let mut out = FormalCharacter::empty(chi.tag().clone());
    let mut stack = vec![(0usize, 0usize, Weight::zero(rank))];
    while let Some((start, used, acc)) = stack.pop() {
        if used == d {
            out.add_term(acc, Int::ONE);
            continue;
        }
        for i in start..ws.len() {
            stack.push((if strict { i + 1 } else { i }, used + 1, &acc + &ws[i]));
        }
    }
    out.sorted_terms()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn restitution_identity(f in poly_strategy(), k in 1usize..=3, raw in proptest::collection::vec((-5i64..=5, 1i64..=4), 9)) {
        let dim = f.shape().num_vars();
        let pieces = polarize(&f, k).unwrap();
        let report = restitute(&f, &pieces, &points(dim, &raw));
        prop_assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn coalgebra_law((f, g) in pair_strategy(false), k in 1usize..=3) {
        let report = coalgebra_check(&f, &g, k).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn full_polarization_is_injective((f, g) in pair_strategy(true)) {
        let d = f.homogeneous_degree().unwrap();
        let full = vec![1u32; d as usize];
        let pf = polarize(&f, d as usize).unwrap();
        let pg = polarize(&g, d as usize).unwrap();
        prop_assert!(!pf[&full].is_zero());
        prop_assert_eq!(pf[&full] == pg[&full], f == g);
    }

    #[test]
    fn molien_matches_reynolds_span(
        choice in 0usize..8,
        seed in proptest::collection::vec((0usize..3, any::<bool>()), 3),
        k in 1usize..=2,
        beta_raw in proptest::collection::vec(0u32..=2, 2),
    ) {
        let group = small_group(choice, &seed);
        let beta: Vec<u32> = beta_raw[..k].to_vec();
        let shape = VarShape::new(k, group.dim());
        let images: Vec<Polynomial> = monomials_of_multidegree(shape, &beta)
            .into_iter()
            .map(|m| group.reynolds(&Polynomial::from_terms(shape, [(m, rat(1, 1))])))
            .filter(|p| !p.is_zero())
            .collect();
        let span = span_dimension(&images, &beta).unwrap() as u64;
        prop_assert_eq!(span, group.molien_dim(&beta).unwrap());
    }

    #[test]
    fn newton_plethysm_matches_enumeration(
        kind in 0usize..3,
        rank in 1usize..=2,
        weights in proptest::collection::vec(proptest::collection::vec(-2i32..=2, 2), 1..=4),
        top in 1i32..=3,
        d in 1usize..=4,
    ) {
        let chi = character(kind, rank, &weights, top);
        prop_assert_eq!(sym_power(&chi, d).unwrap().sorted_terms(), brute_power(&chi, d, false));
        prop_assert_eq!(ext_power(&chi, d).unwrap().sorted_terms(), brute_power(&chi, d, true));
    }

    #[test]
    fn alternation_matches_decompose(
        system in 0usize..5,
        a in proptest::collection::vec(0i32..=2, 3),
        b in proptest::collection::vec(0i32..=2, 3),
    ) {
        let (letter, rank, top) = [('A', 1, 3), ('A', 2, 2), ('B', 2, 2), ('G', 2, 1), ('A', 3, 1)][system];
        let clip = |v: &[i32]| Weight::from_slice(&v[..rank].iter().map(|&x| x.min(top)).collect::<Vec<_>>());
        let rs = build_root_system(letter, rank).unwrap();
        let chi = tensor(&irrep_character(&rs, &clip(&a)).unwrap(), &irrep_character(&rs, &clip(&b)).unwrap()).unwrap();
        let mut x = decompose(&chi).unwrap();
        let mut y = decompose_by_alternation(&chi).unwrap();
        x.sort();
        y.sort();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn torus_invariants_count_lattice_points(
        rank in 1usize..=2,
        weights in proptest::collection::vec(proptest::collection::vec(-2i32..=2, 2), 1..=4),
        d in 0usize..=4,
        a in 0usize..=3,
        b in 0usize..=3,
    ) {
        let chi = character(0, rank, &weights, 0);
        let zero = Weight::zero(rank);
        let at = |terms: &[(Weight, Int)], w: &Weight| terms.iter().find(|(x, _)| x == w).map(|(_, m)| m.clone()).unwrap_or(Int::ZERO);
        prop_assert_eq!(invariant_dim(&chi, d).unwrap(), at(&brute_power(&chi, d, false), &zero));
        let (la, lb) = (brute_power(&chi, a, false), brute_power(&chi, b, false));
        let mut pairs = Int::ZERO;
        for (w, m) in &la {
            pairs.add_mul(m, &at(&lb, &-w));
        }
        let graded = GradedInvariants::copies(&chi, 2).dim(&[a as u32, b as u32]).unwrap();
        prop_assert_eq!(graded, pairs);
    }

    #[test]
    fn bound_dominates_exact_span(
        choice in 0usize..8,
        seed in proptest::collection::vec((0usize..3, any::<bool>()), 3),
        beta in proptest::collection::vec(0u32..=3, 2),
    ) {
        let group = small_group(choice, &seed);
        let table = GeneratorTable::computed_for_finite(&group, 6).unwrap();
        let gens = table.explicit.clone().unwrap();
        let exact = exact_pol_span(&gens, &beta).unwrap() as u128;
        prop_assert!(exact <= pol_upper_bound(&table, &beta));
        prop_assert!(exact as u64 <= group.molien_dim(&beta).unwrap());
    }
}
