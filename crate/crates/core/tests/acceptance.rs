//! One test per acceptance criterion. Each prints a single PASS/FAIL line.

use polaris::charalg::{invariant_dim, multidegree_invariant_dim, FormalCharacter, GradedInvariants};
use polaris::oracle::{run_all, SymPowerImpl};
use polaris::polcheck::{pol_upper_bound, quick_criteria, CriteriaInput, GeneratorTable, Outcome, Provenance, Status};
use polaris::polyops::compositions;
use polaris::rep::{parse_repspec, resolve, ResolvedRep};
use polaris::report::{run_check, CheckOptions, GeneratorOverride, Report};
use polaris::Int;
use std::time::{Duration, Instant};

struct Item {
    id: u32,
    failures: Vec<String>,
    start: Instant,
}

impl Item {
    fn new(id: u32) -> Self {
        Item {
            id,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(mut self, budget: Duration) {
        let elapsed = self.start.elapsed();
        self.expect(elapsed < budget, format!("runtime {elapsed:?} over {budget:?}"));
        if self.failures.is_empty() {
            println!("ACCEPTANCE {:>2} PASS ({elapsed:.2?})", self.id);
        } else {
            println!("ACCEPTANCE {:>2} FAIL: {}", self.id, self.failures.join("; "));
            panic!("acceptance {} failed", self.id);
        }
    }
}

fn rep(s: &str) -> ResolvedRep {
    resolve(&parse_repspec(s).unwrap()).unwrap()
}

fn chi(s: &str) -> FormalCharacter {
    rep(s).character().unwrap().clone()
}

fn check(text: &str, k: usize, d: u32, backend: &str) -> Report {
    let opts = CheckOptions {
        k,
        max_degree: Some(d),
        backend: backend.into(),
        deterministic: true,
        generators: None,
    };
    run_check(text, &opts).unwrap()
}

fn fails_at(r: &Report, beta: &[u32]) -> bool {
    r.verdict.status == "fails_at" && r.verdict.multidegree.as_deref() == Some(beta)
}

fn holds_to(r: &Report, d: u32) -> bool {
    r.verdict.status == "holds_up_to" && r.verdict.degree_bound == Some(d)
}

fn fired(text: &str) -> Vec<&'static str> {
    let input = CriteriaInput {
        max_degree: 8,
        ..Default::default()
    };
    quick_criteria(&rep(text), 2, &input)
        .unwrap()
        .into_iter()
        .filter(|c| matches!(c.outcome, Outcome::Fired(_)))
        .map(|c| c.name)
        .collect()
}

const MIN: Duration = Duration::from_secs(60);

#[test]
fn acceptance_01_two_vectors() {
    let mut it = Item::new(1);
    let r = check("A1: R1+R1", 2, 4, "exact");
    it.expect(fails_at(&r, &[1, 1]), format!("verdict {:?}", r.verdict.multidegree));
    it.expect(r.verdict.dim_invariants == Some(4), format!("dim {:?}", r.verdict.dim_invariants));
    it.expect(r.verdict.pol_dim == Some(1), format!("span {:?}", r.verdict.pol_dim));
    let g = GradedInvariants::copies(&chi("A1: R1"), 4);
    let total = compositions(2, 4).iter().fold(Int::ZERO, |acc, b| acc + g.dim(b).unwrap());
    it.expect(total == Int::from(6), format!("degree 2 on 4C^2: {total}"));
    it.finish(Duration::from_secs(5));
}

#[test]
fn acceptance_02_sl4_cubics() {
    let mut it = Item::new(2);
    let v = chi("A3: [3,0,0]");
    for d in 1..=8 {
        let x = invariant_dim(&v, d).unwrap();
        it.expect(x == Int::from(if d == 8 { 1 } else { 0 }), format!("I({d}) = {x}"));
    }
    let b = multidegree_invariant_dim(&v, &[2, 6]).unwrap();
    it.expect(b == Int::from(2), format!("dim (2,6) = {b}"));
    let r = check("A3: [3,0,0]", 2, 8, "bound");
    it.expect(
        fails_at(&r, &[2, 6]) && r.verdict.pol_dim == Some(1),
        format!("verdict {:?} N = {:?}", r.verdict.multidegree, r.verdict.pol_dim),
    );
    it.finish(10 * MIN);
}

#[test]
fn acceptance_03_half_spin_d8() {
    let mut it = Item::new(3);
    let v = chi("D8: phi8");
    let i2 = invariant_dim(&v, 2).unwrap();
    it.expect(i2 == Int::ONE, format!("I(2) = {i2}"));
    let b = multidegree_invariant_dim(&v, &[2, 2]).unwrap();
    it.expect(b == Int::from(3), format!("dim (2,2) = {b}"));
    let n = pol_upper_bound(&GeneratorTable::from_degrees(vec![2, 8], Provenance::Paper, Some(8)), &[2, 2]);
    it.expect(n == 2, format!("N((2,2)) = {n}"));
    let r = check("D8: phi8", 2, 4, "bound");
    it.expect(fails_at(&r, &[2, 2]), format!("verdict {:?}", r.verdict.multidegree));
    it.finish(30 * MIN);
}

#[test]
fn acceptance_04_cubics_a8() {
    let mut it = Item::new(4);
    let v = chi("A8: phi3");
    for d in 1..=6 {
        let x = invariant_dim(&v, d).unwrap();
        it.expect(x.is_zero(), format!("I({d}) = {x}"));
    }
    let b = multidegree_invariant_dim(&v, &[3, 3]).unwrap();
    it.expect(b.is_positive(), format!("dim (3,3) = {b}"));
    let n = pol_upper_bound(&GeneratorTable::from_degrees(vec![12, 18], Provenance::Paper, Some(18)), &[3, 3]);
    it.expect(n == 0, format!("N((3,3)) = {n}"));
    let r = check("A8: phi3", 2, 6, "bound");
    it.expect(
        fails_at(&r, &[3, 3]),
        format!("first deficit at {:?}, expected [3, 3]", r.verdict.multidegree),
    );
    it.finish(60 * MIN);
}

#[test]
fn acceptance_05_weyl_positives() {
    let mut it = Item::new(5);
    for g in ["sym(3)", "weyl(B,2)"] {
        for k in [2, 3] {
            let r = check(&format!("finite({g}): phi1"), k, 8, "exact");
            it.expect(holds_to(&r, 8), format!("{g} k={k}: {}", r.verdict.status));
        }
    }
    it.finish(2 * MIN);
}

#[test]
fn acceptance_06_weyl_d4() {
    let mut it = Item::new(6);
    let text = "finite(weyl(D,4)): phi1";
    let r = check(text, 2, 12, "exact");
    match &r.scan.status {
        Status::FailsAt { beta, witness, .. } => {
            it.expect(beta.iter().sum::<u32>() <= 12, format!("fails at {beta:?}"));
            it.expect(r.verdict.witness.is_some(), "witness missing from report");
            let resolved = rep(text);
            let group = resolved.finite_group().unwrap();
            match witness {
                Some(w) => {
                    println!("witness at {beta:?}: {w}");
                    it.expect(!w.is_zero() && &group.reynolds(w) == w, "witness not Reynolds-fixed");
                }
                None => it.expect(false, "no witness"),
            }
        }
        other => it.expect(false, format!("status {other:?}")),
    }
    it.finish(10 * MIN);
}

#[test]
fn acceptance_07_orthogonal_b2() {
    let mut it = Item::new(7);
    for k in [2, 3, 4] {
        let r = check("B2: phi1", k, 8, "exact");
        it.expect(holds_to(&r, 8), format!("k={k}: {}", r.verdict.status));
    }
    let r = check("B2: phi1", 5, 8, "exact");
    it.expect(fails_at(&r, &[1, 1, 1, 1, 1]), format!("k=5: {:?}", r.verdict.multidegree));
    it.finish(5 * MIN);
}

#[test]
fn acceptance_08_binary_quartic() {
    let mut it = Item::new(8);
    let opts = CheckOptions {
        k: 2,
        max_degree: Some(4),
        backend: "bound".into(),
        deterministic: true,
        generators: Some(GeneratorOverride {
            degrees: Some(vec![2, 3]),
            ..Default::default()
        }),
    };
    let r = run_check("A1: R4", &opts).unwrap();
    let dim = multidegree_invariant_dim(&chi("A1: R4"), &[2, 2]).unwrap();
    it.expect(dim == Int::from(3), format!("dim (2,2) = {dim}"));
    it.expect(
        fails_at(&r, &[2, 2]) && r.verdict.pol_dim == Some(2) && r.verdict.dim_invariants == Some(3),
        format!("{:?}: N = {:?}", r.verdict.multidegree, r.verdict.pol_dim),
    );
    it.finish(MIN);
}

#[test]
fn acceptance_09_criteria_battery() {
    let mut it = Item::new(9);
    for (text, name) in [
        ("A1: R3", "odd-sl2-summand"),
        ("torus(1): [1,-1,2,-2]", "balanced-torus"),
        ("A1: R6", "rank-one-q3"),
    ] {
        let got = fired(text);
        it.expect(got == vec![name], format!("{text}: {got:?}"));
    }
    it.finish(Duration::from_secs(1));
}

#[test]
fn acceptance_10_property_suites() {
    let mut it = Item::new(10);
    let suites = run_all(100, 7, SymPowerImpl::Newton);
    it.expect(suites.len() == 7, format!("{} suites", suites.len()));
    for s in suites {
        it.expect(s.instances >= 100, format!("{}: {} instances", s.name, s.instances));
        it.expect(s.passed(), format!("{}: {:?}", s.name, s.failures));
    }
    it.finish(5 * MIN);
}
