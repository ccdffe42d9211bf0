//! `check` runs: generator lookup, backend selection, the scan, the quick
//! criteria, and the JSON/text report.

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::polcheck::{
    check_k_polarization, invariant_dims_for, normalize_witness, quick_criteria, BackendRegistry, CheckContext,
    CriteriaInput, CriterionResult, GeneratorTable, Outcome, Provenance, Status, Verdict,
};
use crate::polyops::Polynomial;
use crate::rep::{parse_repspec, resolve, ResolvedRep};
use crate::sampler::{sampler_by_name, GroupSampler};
use serde::Serialize;
use std::time::Instant;

pub const DEFAULT_MAX_DEGREE: u32 = 8;

/// Generators supplied on the command line instead of the catalog.
#[derive(Clone, Debug, Default)]
pub struct GeneratorOverride {
    pub polynomials: Option<Vec<Polynomial>>,
    pub degrees: Option<Vec<u32>>,
    pub sampler: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub k: usize,
    pub max_degree: Option<u32>,
    pub backend: String,
    /// Zeroes `timing_ms` so reruns are byte-identical.
    pub deterministic: bool,
    pub generators: Option<GeneratorOverride>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            k: 2,
            max_degree: None,
            backend: "auto".into(),
            deterministic: false,
            generators: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CriterionJson {
    pub name: String,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerdictJson {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_invariants: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pol_dim: Option<u64>,
    pub criteria: Vec<CriterionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rep: String,
    pub k: usize,
    pub backend: String,
    pub verdict: VerdictJson,
    pub timing_ms: u64,
    /// Scan verdict before criteria are folded in.
    #[serde(skip)]
    pub scan: Verdict,
    #[serde(skip)]
    pub criteria: Vec<CriterionResult>,
    #[serde(skip)]
    pub generator_source: String,
}

impl Report {
    pub fn is_inconclusive(&self) -> bool {
        self.verdict.status == "inconclusive"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let v = &self.verdict;
        let mut out = format!("{}  k={}  backend={}\n", self.rep, self.k, self.backend);
        out += &format!("generators: {}\n", self.generator_source);
        match v.status {
            "holds_up_to" => out += &format!("verdict: holds up to degree {}\n", v.degree_bound.unwrap_or(0)),
            "fails_at" => {
                out += "verdict: fails";
                if let Some(b) = &v.multidegree {
                    out += &format!(
                        " at {:?}: dim invariants {}, polarization dim {}",
                        b,
                        v.dim_invariants.unwrap_or(0),
                        v.pol_dim.unwrap_or(0)
                    );
                }
                out += "\n";
            }
            _ => out += &format!("verdict: inconclusive ({})\n", v.reason.as_deref().unwrap_or("")),
        }
        if let Some(w) = &v.witness {
            out += &format!("witness: {w}\n");
        }
        for c in &self.criteria {
            let (tag, why) = match &c.outcome {
                Outcome::Fired(s) => ("fired", s),
                Outcome::NotFired(s) => ("not fired", s),
                Outcome::NotEvaluable(s) => ("not evaluable", s),
            };
            out += &format!("  {:<24} {tag}: {why}\n", c.name);
        }
        out += &format!("time: {} ms\n", self.timing_ms);
        out
    }
}

/// Generator data chosen for a run.
pub struct Generators {
    pub table: Option<GeneratorTable>,
    pub sampler: Option<Box<dyn GroupSampler>>,
    pub criteria: CriteriaInput,
    pub source: String,
}

/// Override, then catalog, then (connected groups only) a computed
/// upper-bound table from `I(d)`, `d <= max_degree`. Finite groups need no
/// table: the exact backend computes minimal generators itself.
pub fn generators_for(
    rep: &ResolvedRep,
    max_degree: u32,
    catalog: &Catalog,
    over: Option<&GeneratorOverride>,
) -> Result<Generators> {
    let mut criteria = CriteriaInput {
        max_degree,
        ..Default::default()
    };
    if let Some(o) = over {
        let sampler = o.sampler.as_deref().map(sampler_by_name).transpose()?;
        let table = match (&o.polynomials, &o.degrees) {
            (Some(p), _) => GeneratorTable::from_polynomials(p.clone(), Provenance::CatalogExternal, None)?,
            (None, Some(d)) => GeneratorTable::from_degrees(d.clone(), Provenance::CatalogExternal, None),
            (None, None) => return Err(Error::invalid("generator override without generators")),
        };
        criteria.generator_degrees = Some(table.degrees.clone());
        return Ok(Generators {
            table: Some(table),
            sampler,
            criteria,
            source: "command line".into(),
        });
    }
    if let Some(t) = catalog.generators_for(&rep.spec)? {
        let criteria = t.criteria_input(max_degree);
        let source = format!("catalog, degrees {:?}", t.table.degrees);
        return Ok(Generators {
            table: Some(t.table),
            sampler: t.sampler,
            criteria,
            source,
        });
    }
    if let Some(g) = rep.finite_group() {
        return Ok(Generators {
            table: None,
            sampler: None,
            criteria,
            source: format!("computed minimal generators of {}", g.name()),
        });
    }
    let dims = invariant_dims_for(rep, 1)?;
    let mut series = Vec::with_capacity(max_degree as usize + 1);
    for d in 0..=max_degree {
        series.push(dims.dim(&[d])?);
    }
    let table = GeneratorTable::computed_upper_bound(&series, max_degree);
    let source = format!(
        "computed upper bound from I(d), d <= {max_degree}: degrees {:?}",
        table.degrees
    );
    Ok(Generators {
        table: Some(table),
        sampler: None,
        criteria,
        source,
    })
}

fn to_u64(x: &crate::Int) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::invalid(format!("dimension {x} does not fit the report format")))
}

/// Runs one check against the bundled catalog.
pub fn run_check(rep_text: &str, opts: &CheckOptions) -> Result<Report> {
    run_check_with(rep_text, opts, Catalog::builtin(), &BackendRegistry::default())
}

pub fn run_check_with(
    rep_text: &str,
    opts: &CheckOptions,
    catalog: &Catalog,
    registry: &BackendRegistry,
) -> Result<Report> {
    let start = Instant::now();
    if opts.k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let rep = resolve(&parse_repspec(rep_text)?)?;
    let max_degree = opts.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    let gens = generators_for(&rep, max_degree, catalog, opts.generators.as_ref())?;
    let ctx = CheckContext {
        rep: &rep,
        k: opts.k,
        max_degree,
        generators: gens.table.as_ref(),
        sampler: gens.sampler.as_deref(),
    };
    let backend = registry.resolve(&opts.backend, &ctx)?;
    let dims = invariant_dims_for(&rep, opts.k)?;
    let scan = check_k_polarization(&ctx, dims.as_ref(), backend)?;
    let criteria = quick_criteria(&rep, opts.k, &gens.criteria)?;
    let fired: Vec<CriterionJson> = criteria
        .iter()
        .filter(|c| matches!(c.outcome, Outcome::Fired(_)))
        .map(|c| CriterionJson {
            name: c.name.to_string(),
            citation: catalog.citation(c.name).unwrap_or("").to_string(),
        })
        .collect();

    let mut verdict = VerdictJson {
        status: "inconclusive",
        degree_bound: None,
        multidegree: None,
        dim_invariants: None,
        pol_dim: None,
        criteria: fired.clone(),
        reason: None,
        witness: None,
    };
    let mut backend_name = scan.backend.clone();
    match &scan.status {
        Status::FailsAt {
            beta,
            dim_invariants,
            pol_dim,
            witness,
        } => {
            verdict.status = "fails_at";
            verdict.multidegree = Some(beta.clone());
            verdict.dim_invariants = Some(to_u64(dim_invariants)?);
            verdict.pol_dim = Some(u64::try_from(*pol_dim).unwrap_or(u64::MAX));
            verdict.witness = witness.as_ref().map(|w| normalize_witness(w).to_string());
        }
        _ if !fired.is_empty() => {
            verdict.status = "fails_at";
            backend_name = format!("criterion({})", fired[0].name);
            if let Status::HoldsUpTo(d) = scan.status {
                verdict.degree_bound = Some(d);
            }
        }
        Status::HoldsUpTo(d) => {
            verdict.status = "holds_up_to";
            verdict.degree_bound = Some(*d);
        }
        Status::Inconclusive(reason) => verdict.reason = Some(reason.clone()),
    }
    let timing_ms = if opts.deterministic {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    Ok(Report {
        rep: rep.spec.to_string(),
        k: opts.k,
        backend: backend_name,
        verdict,
        timing_ms,
        scan,
        criteria,
        generator_source: gens.source,
    })
}
