//! The bundled catalog: classification entries with their claims and
//! citations, generator tables for known modules, and slice chains.
//!
//! Generator tables match a module by root system and highest weight. Text
//! fields may contain `{expr}` templates in the rank `n`, such as `{2n+1}`.

use crate::error::{Error, Result};
use crate::polcheck::{CriteriaInput, GeneratorTable, Provenance};
use crate::rep::{parse_repspec, GroupSpec, RepSpec, TermKind};
use crate::sampler::{named_polynomial, sampler_by_name, GroupSampler};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub criteria: Vec<CriterionCitation>,
    pub generator_tables: Vec<TableSpec>,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionCitation {
    pub name: String,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableMatch {
    pub letter: char,
    pub min_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rank: Option<usize>,
    /// Highest weight as (fundamental index, coefficient) pairs.
    pub weight: Vec<(usize, i32)>,
    /// Largest number of copies covered, as a rank expression; one if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_copies: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_copies: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_parity: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KrullData {
    pub value: u64,
    /// `false` when `value` is only a lower bound.
    pub exact: bool,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableSpec {
    #[serde(rename = "match")]
    pub matcher: TableMatch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<String>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_through: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub krull_dim_2v: Option<KrullData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_copies_coregular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Holds,
    Fails,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Claim {
    pub rep: String,
    pub k: usize,
    pub expect: Expect,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    /// The quick criterion expected to fire.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criterion: Option<String>,
    /// Decided by the leaf of the entry's slice chain.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub via_slice: bool,
    /// `desk`, `extended` or `unchecked: scale`.
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceNode {
    pub point: String,
    pub rep: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub title: String,
    pub rep: String,
    pub citation: String,
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice_chain: Option<Vec<SliceNode>>,
}

/// Generator data resolved for one concrete module.
pub struct ResolvedTable {
    pub table: GeneratorTable,
    pub sampler: Option<Box<dyn GroupSampler>>,
    pub krull_dim_2v: Option<KrullData>,
    pub two_copies_coregular: Option<bool>,
}

impl ResolvedTable {
    pub fn criteria_input(&self, max_degree: u32) -> CriteriaInput {
        CriteriaInput {
            max_degree,
            generator_degrees: Some(self.table.degrees.clone()),
            krull_dim_two_copies: self.krull_dim_2v.as_ref().map(|k| k.value),
            krull_is_exact: self.krull_dim_2v.as_ref().is_some_and(|k| k.exact),
            two_copies_coregular: self.two_copies_coregular,
        }
    }
}

/// Evaluates `a*n+b` style expressions (`n`, `n+1`, `2n`, `2n+1`, `n-1`, `7`).
pub fn eval_rank_expr(expr: &str, n: usize) -> Result<usize> {
    let e: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Catalog(format!("bad rank expression '{expr}'"));
    let (lin, rest) = match e.find('n') {
        Some(pos) => {
            let coef = if pos == 0 { 1 } else { e[..pos].parse::<i64>().map_err(|_| bad())? };
            (coef, &e[pos + 1..])
        }
        None => (0, e.as_str()),
    };
    let constant = if rest.is_empty() {
        0
    } else if lin == 0 {
        rest.parse::<i64>().map_err(|_| bad())?
    } else {
        let (sign, digits) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => return Err(bad()),
        };
        sign * digits.parse::<i64>().map_err(|_| bad())?
    };
    let v = lin * n as i64 + constant;
    usize::try_from(v).map_err(|_| bad())
}

/// Replaces every `{expr}` in `text`.
pub fn expand_template(text: &str, n: usize) -> Result<String> {
    let mut out = String::new();
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| Error::Catalog(format!("unclosed template in '{text}'")))?;
        out.push_str(&rest[..open]);
        out.push_str(&eval_rank_expr(&rest[open + 1..open + close], n)?.to_string());
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

impl TableMatch {
    fn matches(&self, spec: &RepSpec) -> Result<bool> {
        let GroupSpec::Simple { letter, rank } = spec.group else { return Ok(false) };
        if letter != self.letter || rank < self.min_rank || self.max_rank.is_some_and(|m| rank > m) {
            return Ok(false);
        }
        match self.rank_parity.as_deref() {
            Some("odd") if rank % 2 == 0 => return Ok(false),
            Some("even") if rank % 2 == 1 => return Ok(false),
            _ => {}
        }
        let Some(term) = spec.terms.first() else { return Ok(false) };
        if spec.terms.iter().any(|t| t.kind != term.kind) {
            return Ok(false);
        }
        let copies: usize = spec.terms.iter().map(|t| t.copies as usize).sum();
        let mut target = vec![0i32; rank];
        for &(i, c) in &self.weight {
            if i == 0 || i > rank {
                return Ok(false);
            }
            target[i - 1] = c;
        }
        let weight: Vec<i32> = match &term.kind {
            TermKind::Phi(i) => {
                let mut w = vec![0; rank];
                w[*i - 1] = 1;
                w
            }
            TermKind::R(m) => vec![*m as i32],
            TermKind::Weights(w) => w.clone(),
        };
        if weight != target {
            return Ok(false);
        }
        let max_copies = match &self.max_copies {
            Some(e) => eval_rank_expr(e, rank)?,
            None => 1,
        };
        let min_copies = match &self.min_copies {
            Some(e) => eval_rank_expr(e, rank)?,
            None => 1,
        };
        Ok((min_copies..=max_copies).contains(&copies))
    }
}

impl Catalog {
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("bundled catalog is valid"))
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let c: Catalog = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for e in &self.entries {
            parse_repspec(&e.rep)?;
            for c in &e.claims {
                parse_repspec(&c.rep)?;
                if !matches!(c.check.as_str(), "desk" | "extended" | "unchecked: scale") {
                    return Err(Error::Catalog(format!("{}: unknown check '{}'", e.id, c.check)));
                }
                if let Some(name) = &c.criterion {
                    self.citation(name)
                        .ok_or_else(|| Error::Catalog(format!("{}: unknown criterion '{name}'", e.id)))?;
                }
                if c.via_slice && e.slice_chain.is_none() {
                    return Err(Error::Catalog(format!("{}: slice claim without a chain", e.id)));
                }
            }
            for node in e.slice_chain.iter().flatten() {
                parse_repspec(&node.rep)?;
            }
        }
        for t in &self.generator_tables {
            parse_provenance(&t.provenance)?;
        }
        Ok(())
    }

    pub fn entry(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn citation(&self, criterion: &str) -> Option<&str> {
        self.criteria
            .iter()
            .find(|c| c.name == criterion)
            .map(|c| c.citation.as_str())
    }

    pub fn table_spec(&self, spec: &RepSpec) -> Result<Option<&TableSpec>> {
        for t in &self.generator_tables {
            if t.matcher.matches(spec)? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    /// Generator table, sampler and criterion data for a module, if listed.
    pub fn generators_for(&self, spec: &RepSpec) -> Result<Option<ResolvedTable>> {
        let Some(t) = self.table_spec(spec)? else { return Ok(None) };
        let rank = match spec.group {
            GroupSpec::Simple { rank, .. } => rank,
            _ => unreachable!("tables only match simple groups"),
        };
        let provenance = parse_provenance(&t.provenance)?;
        let mut table = match &t.named {
            Some(names) => {
                let polys = names
                    .iter()
                    .map(|n| named_polynomial(&expand_template(n, rank)?))
                    .collect::<Result<Vec<_>>>()?;
                GeneratorTable::from_polynomials(polys, provenance, t.complete_through)?
            }
            _ => GeneratorTable::from_degrees(t.degrees.clone().unwrap_or_default(), provenance, t.complete_through),
        };
        if let Some(d) = &t.degrees {
            if table.explicit.is_some() && &table.degrees != d {
                return Err(Error::Catalog(format!(
                    "degrees {d:?} disagree with the named generators {:?}",
                    table.degrees
                )));
            }
        }
        // no invariants at all: the empty generator list is explicit
        if table.degrees.is_empty() {
            table.explicit = Some(Vec::new());
        }
        let sampler = match &t.sampler {
            Some(s) => Some(sampler_by_name(&expand_template(s, rank)?)?),
            None => None,
        };
        Ok(Some(ResolvedTable {
            table,
            sampler,
            krull_dim_2v: t.krull_dim_2v.clone(),
            two_copies_coregular: t.two_copies_coregular,
        }))
    }

    /// Every module string appearing in the catalog.
    pub fn all_reps(&self) -> Vec<&str> {
        let mut v = Vec::new();
        for e in &self.entries {
            v.push(e.rep.as_str());
            v.extend(e.claims.iter().map(|c| c.rep.as_str()));
            v.extend(e.slice_chain.iter().flatten().map(|n| n.rep.as_str()));
        }
        v
    }
}

fn parse_provenance(s: &str) -> Result<Provenance> {
    match s {
        "paper" => Ok(Provenance::Paper),
        "catalog-external" => Ok(Provenance::CatalogExternal),
        "computed" => Ok(Provenance::Computed),
        _ => Err(Error::Catalog(format!("unknown provenance '{s}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyops::VarShape;

    #[test]
    fn rank_expressions() {
        assert_eq!(eval_rank_expr("n", 4).unwrap(), 4);
        assert_eq!(eval_rank_expr("2n+1", 2).unwrap(), 5);
        assert_eq!(eval_rank_expr("n-1", 3).unwrap(), 2);
        assert_eq!(eval_rank_expr("7", 3).unwrap(), 7);
        assert!(eval_rank_expr("n-5", 3).is_err());
        assert_eq!(expand_template("so({2n})", 4).unwrap(), "so(8)");
    }

    #[test]
    fn bundled_catalog_loads() {
        let c = Catalog::builtin();
        assert!(c.entry("theorem-4").is_some());
        assert!(c.entry("case-c").unwrap().slice_chain.is_some());
        assert_eq!(c.criteria.len(), 6);
    }

    #[test]
    fn table_lookup() {
        let c = Catalog::builtin();
        let t = c.generators_for(&parse_repspec("B2: phi1").unwrap()).unwrap().unwrap();
        assert_eq!(t.table.degrees, vec![2]);
        assert_eq!(t.table.explicit.as_ref().unwrap()[0].shape(), VarShape::new(1, 5));
        assert_eq!(t.sampler.unwrap().name(), "so(5)");
        let t = c.generators_for(&parse_repspec("A5: phi2").unwrap()).unwrap().unwrap();
        assert_eq!(t.table.degrees, vec![3]);
        let t = c.generators_for(&parse_repspec("A4: phi2").unwrap()).unwrap().unwrap();
        assert!(t.table.explicit.unwrap().is_empty());
        let t = c.generators_for(&parse_repspec("A4: phi1*2").unwrap()).unwrap().unwrap();
        assert!(t.table.degrees.is_empty());
        let t = c.generators_for(&parse_repspec("A4: phi1*5").unwrap()).unwrap().unwrap();
        assert_eq!(t.table.degrees, vec![5]);
        assert!(c.generators_for(&parse_repspec("A4: phi1*6").unwrap()).unwrap().is_none());
        let t = c.generators_for(&parse_repspec("F4: phi1").unwrap()).unwrap().unwrap();
        assert_eq!(t.krull_dim_2v.unwrap().value, 8);
        assert!(c.generators_for(&parse_repspec("A3: [3,0,0]").unwrap()).unwrap().is_none());
        let t = c.generators_for(&parse_repspec("A1: R1+R1").unwrap()).unwrap().unwrap();
        assert_eq!(t.table.degrees, vec![2]);
        assert_eq!(t.sampler.unwrap().dim(), 4);
    }

    #[test]
    fn catalog_round_trips_through_the_parser() {
        for r in Catalog::builtin().all_reps() {
            let spec = parse_repspec(r).unwrap();
            assert_eq!(parse_repspec(&spec.to_string()).unwrap(), spec, "{r}");
        }
    }
}
