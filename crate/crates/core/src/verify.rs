//! Reproduction suite: the headline computations plus every desk-scale
//! catalog claim.

use crate::catalog::{Catalog, CatalogEntry, Claim, Expect};
use crate::charalg::{invariant_dim, multidegree_invariant_dim, GradedInvariants};
use crate::error::Result;
use crate::oracle::{run_all, SymPowerImpl};
use crate::polcheck::{pol_upper_bound, quick_criteria, CriteriaInput, GeneratorTable, Outcome, Provenance, Status};
use crate::polyops::compositions;
use crate::rep::{parse_repspec, resolve, ResolvedRep};
use crate::report::{run_check, CheckOptions, GeneratorOverride, Report};
use crate::Int;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Extended,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub property_instances: usize,
    pub seed: u64,
    pub sym_power: SymPowerImpl,
}

impl VerifyOptions {
    pub fn standard() -> Self {
        VerifyOptions {
            property_instances: 100,
            seed: 2024,
            sym_power: SymPowerImpl::Newton,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyRow {
    pub id: String,
    pub title: String,
    /// `pass`, `fail`, `unchecked: scale` or `skipped: extended`.
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.status == "fail").count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out += &format!("{:<18} {:<40} {}", r.status.to_uppercase(), r.id, r.title);
            if !r.detail.is_empty() {
                out += &format!("  [{}]", r.detail);
            }
            out += "\n";
        }
        let pass = self.rows.iter().filter(|r| r.status == "pass").count();
        out += &format!("{pass} passed, {} failed, {} rows\n", self.failures(), self.rows.len());
        out
    }
}

/// Outcome of one check: failures are collected, not thrown.
#[derive(Default)]
pub struct Checks {
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

impl Checks {
    pub fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn detail(&self) -> String {
        if self.passed() {
            self.notes.join("; ")
        } else {
            self.failures.join("; ")
        }
    }
}

fn check_rep(rep: &str, k: usize, d: u32, backend: &str) -> Result<Report> {
    run_check(
        rep,
        &CheckOptions {
            k,
            max_degree: Some(d),
            backend: backend.into(),
            deterministic: true,
            generators: None,
        },
    )
}

fn fails_at(r: &Report, beta: &[u32]) -> bool {
    r.verdict.status == "fails_at" && r.verdict.multidegree.as_deref() == Some(beta)
}

fn join(xs: &[Int]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn rep(s: &str) -> Result<ResolvedRep> {
    resolve(&parse_repspec(s)?)
}

fn char_of(s: &str) -> Result<crate::charalg::FormalCharacter> {
    Ok(rep(s)?.character().expect("connected group").clone())
}

pub fn item_two_vectors() -> Result<Checks> {
    let mut c = Checks::default();
    let r = check_rep("A1: R1+R1", 2, 4, "exact")?;
    c.expect(
        fails_at(&r, &[1, 1]) && r.verdict.dim_invariants == Some(4) && r.verdict.pol_dim == Some(1),
        format!("2C^2, k=2: {:?} {:?}/{:?}", r.verdict.multidegree, r.verdict.dim_invariants, r.verdict.pol_dim),
    );
    let g = GradedInvariants::copies(&char_of("A1: R1")?, 4);
    let mut total = Int::ZERO;
    for beta in compositions(2, 4) {
        total += g.dim(&beta)?;
    }
    c.expect(total == Int::from(6), format!("degree-2 invariants of 4C^2: {total}"));
    Ok(c)
}

pub fn item_sl4_cubics() -> Result<Checks> {
    let mut c = Checks::default();
    let v = char_of("A3: [3,0,0]")?;
    let dims: Vec<Int> = (1..=8).map(|d| invariant_dim(&v, d)).collect::<Result<_>>()?;
    let expected: Vec<Int> = (1..=8).map(|d| Int::from(if d == 8 { 1 } else { 0 })).collect();
    c.expect(dims == expected, format!("I(1..8) = {}", join(&dims)));
    let b = multidegree_invariant_dim(&v, &[2, 6])?;
    c.expect(b == Int::from(2), format!("dim (2,6) = {b}"));
    let r = check_rep("A3: [3,0,0]", 2, 8, "bound")?;
    c.expect(
        fails_at(&r, &[2, 6]) && r.verdict.pol_dim == Some(1),
        format!("bound verdict {:?} N = {:?}", r.verdict.multidegree, r.verdict.pol_dim),
    );
    Ok(c)
}

pub fn item_case_a() -> Result<Checks> {
    let mut c = Checks::default();
    let v = char_of("D8: phi8")?;
    let i2 = invariant_dim(&v, 2)?;
    c.expect(i2 == Int::ONE, format!("I(2) = {i2}"));
    let b = multidegree_invariant_dim(&v, &[2, 2])?;
    c.expect(b == Int::from(3), format!("dim (2,2) = {b}"));
    let n = pol_upper_bound(&GeneratorTable::from_degrees(vec![2, 8], Provenance::Paper, Some(8)), &[2, 2]);
    c.expect(n == 2, format!("N((2,2)) = {n}"));
    let r = check_rep("D8: phi8", 2, 4, "bound")?;
    c.expect(fails_at(&r, &[2, 2]), format!("verdict at {:?}", r.verdict.multidegree));
    Ok(c)
}

pub fn item_case_b() -> Result<Checks> {
    let mut c = Checks::default();
    let v = char_of("A8: phi3")?;
    let dims: Vec<Int> = (1..=6).map(|d| invariant_dim(&v, d)).collect::<Result<_>>()?;
    c.expect(dims.iter().all(|x| x.is_zero()), format!("I(1..6) = {}", join(&dims)));
    let b = multidegree_invariant_dim(&v, &[3, 3])?;
    c.expect(b.is_positive(), format!("dim (3,3) = {b}"));
    let n = pol_upper_bound(&GeneratorTable::from_degrees(vec![12, 18], Provenance::Paper, Some(18)), &[3, 3]);
    c.expect(n == 0, format!("N((3,3)) = {n}"));
    let r = check_rep("A8: phi3", 2, 6, "bound")?;
    c.expect(
        fails_at(&r, &[3, 3]),
        format!("first deficit at {:?} (expected (3,3))", r.verdict.multidegree),
    );
    Ok(c)
}

pub fn item_weyl_positive() -> Result<Checks> {
    let mut c = Checks::default();
    for g in ["sym(3)", "weyl(B,2)"] {
        for k in [2, 3] {
            let r = check_rep(&format!("finite({g}): phi1"), k, 8, "exact")?;
            c.expect(
                r.verdict.status == "holds_up_to" && r.verdict.degree_bound == Some(8),
                format!("{g} k={k}: {}", r.verdict.status),
            );
        }
    }
    Ok(c)
}

pub fn item_weyl_d4() -> Result<Checks> {
    let mut c = Checks::default();
    let text = "finite(weyl(D,4)): phi1";
    let r = check_rep(text, 2, 12, "exact")?;
    let Status::FailsAt { beta, witness, .. } = &r.scan.status else {
        c.expect(false, format!("W(D4) k=2: {}", r.verdict.status));
        return Ok(c);
    };
    c.expect(beta.iter().sum::<u32>() <= 12, format!("fails at {beta:?}"));
    let group = rep(text)?;
    let group = group.finite_group().expect("finite group");
    match witness {
        Some(w) => c.expect(&group.reynolds(w) == w && !w.is_zero(), format!("witness {} is Reynolds-fixed", w)),
        None => c.expect(false, "no witness"),
    }
    Ok(c)
}

pub fn item_orthogonal() -> Result<Checks> {
    let mut c = Checks::default();
    for k in [2, 3, 4] {
        let r = check_rep("B2: phi1", k, 8, "exact")?;
        c.expect(
            r.verdict.status == "holds_up_to" && r.verdict.degree_bound == Some(8),
            format!("k={k}: {}", r.verdict.status),
        );
    }
    let r = check_rep("B2: phi1", 5, 6, "exact")?;
    c.expect(fails_at(&r, &[1, 1, 1, 1, 1]), format!("k=5: {:?}", r.verdict.multidegree));
    Ok(c)
}

pub fn item_binary_quartic() -> Result<Checks> {
    let mut c = Checks::default();
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
    let r = run_check("A1: R4", &opts)?;
    c.expect(
        fails_at(&r, &[2, 2]) && r.verdict.pol_dim == Some(2) && r.verdict.dim_invariants == Some(3),
        format!("{:?}: N = {:?}, dim = {:?}", r.verdict.multidegree, r.verdict.pol_dim, r.verdict.dim_invariants),
    );
    Ok(c)
}

/// Names of the fired criteria for a module at `k = 2`.
pub fn fired_criteria(text: &str) -> Result<Vec<&'static str>> {
    let input = CriteriaInput {
        max_degree: 8,
        ..Default::default()
    };
    Ok(quick_criteria(&rep(text)?, 2, &input)?
        .into_iter()
        .filter(|c| matches!(c.outcome, Outcome::Fired(_)))
        .map(|c| c.name)
        .collect())
}

pub fn item_criteria() -> Result<Checks> {
    let mut c = Checks::default();
    for (text, name) in [
        ("A1: R3", "odd-sl2-summand"),
        ("torus(1): [1,-1,2,-2]", "balanced-torus"),
        ("A1: R6", "rank-one-q3"),
    ] {
        let fired = fired_criteria(text)?;
        c.expect(fired == vec![name], format!("{text}: {fired:?}"));
    }
    Ok(c)
}

pub fn item_properties(opts: &VerifyOptions) -> Result<Checks> {
    let mut c = Checks::default();
    for s in run_all(opts.property_instances, opts.seed, opts.sym_power) {
        c.expect(
            s.passed(),
            format!("{} {}/{}{}", s.name, s.instances - s.failure_count, s.instances, if s.passed() { String::new() } else { format!(" {:?}", s.failures) }),
        );
    }
    Ok(c)
}

type Item = fn(&VerifyOptions) -> Result<Checks>;

/// The headline items: id, title, extended-only, runner.
pub fn items() -> Vec<(&'static str, &'static str, bool, Item)> {
    vec![
        ("two-vectors", "2C^2 under SL2 fails at (1,1), 4 vs 1", false, |_| item_two_vectors()),
        ("sl4-cubics", "S^3 C^4 under SL4 fails at (2,6)", false, |_| item_sl4_cubics()),
        ("case-a", "(phi8, D8) fails at (2,2), 3 vs 2", true, |_| item_case_a()),
        ("case-b", "(phi3, A8) fails at (3,3)", true, |_| item_case_b()),
        ("weyl-positive", "S3 and W(B2) hold to degree 8, k = 2, 3", false, |_| item_weyl_positive()),
        ("weyl-d4", "W(D4) fails for k = 2 with a Reynolds-fixed witness", false, |_| item_weyl_d4()),
        ("orthogonal", "(phi1, B2) holds for k <= 4, fails at k = 5", false, |_| item_orthogonal()),
        ("binary-quartic", "R4 under SL2 fails at (2,2) with degrees {2,3}", false, |_| item_binary_quartic()),
        ("criteria", "quick criteria battery", false, |_| item_criteria()),
        ("properties", "randomized oracle suites", false, item_properties),
    ]
}

/// Checks one catalog claim.
pub fn check_claim(entry: &CatalogEntry, claim: &Claim) -> Result<Checks> {
    let mut c = Checks::default();
    let target = if claim.via_slice {
        let leaf = entry
            .slice_chain
            .as_ref()
            .and_then(|ch| ch.last())
            .expect("validated slice chain");
        c.notes.push(format!("slice leaf {}", leaf.rep));
        leaf.rep.as_str()
    } else {
        claim.rep.as_str()
    };
    let r = check_rep(
        target,
        claim.k,
        claim.max_degree.unwrap_or(4),
        claim.backend.as_deref().unwrap_or("auto"),
    )?;
    match claim.expect {
        Expect::Holds => c.expect(r.verdict.status == "holds_up_to", format!("{}: {}", r.backend, r.verdict.status)),
        Expect::Fails => {
            c.expect(r.verdict.status == "fails_at", format!("{}: {}", r.backend, r.verdict.status));
            if let Some(beta) = &claim.multidegree {
                c.expect(
                    r.verdict.multidegree.as_ref() == Some(beta),
                    format!("first deficit {:?}", r.verdict.multidegree),
                );
            }
            if let Some(name) = &claim.criterion {
                c.expect(
                    r.verdict.criteria.iter().any(|x| &x.name == name),
                    format!("criterion {name} fired"),
                );
            }
        }
    }
    Ok(c)
}

fn row(id: String, title: String, extended_only: bool, suite: Suite, run: impl FnOnce() -> Result<Checks>) -> VerifyRow {
    if extended_only && suite == Suite::Core {
        return VerifyRow {
            id,
            title,
            status: "skipped: extended".into(),
            detail: String::new(),
        };
    }
    let (status, detail) = match run() {
        Ok(c) if c.passed() => ("pass", c.detail()),
        Ok(c) => ("fail", c.detail()),
        Err(e) => ("fail", format!("error: {e}")),
    };
    VerifyRow {
        id,
        title,
        status: status.into(),
        detail,
    }
}

pub fn verify_paper(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let mut rows = Vec::new();
    for (id, title, extended, f) in items() {
        rows.push(row(id.into(), title.into(), extended, suite, || f(opts)));
    }
    for entry in &Catalog::builtin().entries {
        for (i, claim) in entry.claims.iter().enumerate() {
            let id = format!("catalog:{}#{}", entry.id, i + 1);
            let title = format!(
                "{} k={} {}",
                claim.rep,
                claim.k,
                if claim.expect == Expect::Holds { "holds" } else { "fails" }
            );
            if claim.check == "unchecked: scale" {
                rows.push(VerifyRow {
                    id,
                    title,
                    status: "unchecked: scale".into(),
                    detail: claim.note.clone().unwrap_or_default(),
                });
                continue;
            }
            let extended = claim.check == "extended";
            rows.push(row(id, title, extended, suite, || check_claim(entry, claim)));
        }
    }
    VerifyReport {
        suite: match suite {
            Suite::Core => "core",
            Suite::Extended => "extended",
        },
        rows,
    }
}
