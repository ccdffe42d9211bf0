//! Representation descriptors: the text grammar, canonical printing, and
//! resolution to characters or matrix groups.
//!
//! ```text
//! repspec := group ":" module
//! group   := TYPE RANK | "torus(" INT ")" | "finite(" NAME ")"
//! module  := term ("+" term)*
//! term    := ("phi" INT | "R" INT | "[" int-list "]") ("*" INT)?
//! ```
//!
//! `* m` always means `m` copies. For a torus of rank `r` a bracket list is
//! read as consecutive weights of length `r`, so `torus(1): [1,-1,2,-2]` has
//! four one-dimensional summands. For a finite group the only module term is
//! `phi1`, the defining action.

use crate::charalg::{FormalCharacter, GroupTag};
use crate::error::{Error, Result};
use crate::fingrp::{builtin_group, generate_named, FiniteGroup, RatMatrix, DEFAULT_GROUP_CAP};
use crate::int::Int;
use crate::polyops::Rational;
use crate::rootsys::{build_root_system, irrep_character, RootSystem};
use crate::weight::Weight;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Simple { letter: char, rank: usize },
    Torus(usize),
    Finite(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Phi(usize),
    R(u32),
    Weights(Vec<i32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub copies: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSpec {
    pub group: GroupSpec,
    pub terms: Vec<Term>,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Simple { letter, rank } => write!(f, "{letter}{rank}"),
            GroupSpec::Torus(r) => write!(f, "torus({r})"),
            GroupSpec::Finite(name) => write!(f, "finite({name})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TermKind::Phi(i) => write!(f, "phi{i}")?,
            TermKind::R(j) => write!(f, "R{j}")?,
            TermKind::Weights(ws) => {
                let s: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "[{}]", s.join(","))?;
            }
        }
        if self.copies != 1 {
            write!(f, "*{}", self.copies)?;
        }
        Ok(())
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.group)?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected '{lit}'"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        match text.parse::<i64>() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("integer out of range")
            }
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.ws();
        let at = self.pos;
        let v = self.int()?;
        if v < 0 {
            self.pos = at;
            return self.err("expected a nonnegative integer");
        }
        Ok(v as u64)
    }
}

pub fn parse_repspec(text: &str) -> Result<RepSpec> {
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: 0,
    };
    let group = if c.eat("torus(") {
        let r = c.uint()? as usize;
        if r == 0 {
            return c.err("torus rank must be positive");
        }
        c.expect(")")?;
        GroupSpec::Torus(r)
    } else if c.eat("finite(") {
        let start = c.pos;
        let mut depth = 1;
        while c.pos < c.s.len() {
            match c.s[c.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            c.pos += 1;
        }
        if depth != 0 {
            return c.err("unbalanced parentheses in group name");
        }
        let name: String = std::str::from_utf8(&c.s[start..c.pos])
            .expect("ascii")
            .chars()
            .filter(|ch| !ch.is_whitespace())
            .collect();
        if name.is_empty() {
            return c.err("empty group name");
        }
        c.pos += 1;
        GroupSpec::Finite(name)
    } else {
        match c.peek() {
            Some(l @ b'A'..=b'G') => {
                c.pos += 1;
                let at = c.pos;
                let rank = c.uint()? as usize;
                let letter = l as char;
                if let Err(e) = build_root_system(letter, rank) {
                    c.pos = at;
                    return c.err(e.to_string());
                }
                GroupSpec::Simple { letter, rank }
            }
            _ => return c.err("expected a group: type and rank (e.g. B3), torus(r) or finite(name)"),
        }
    };
    c.expect(":")?;
    let mut terms = Vec::new();
    loop {
        let kind = if c.eat("phi") {
            let at = c.pos;
            let i = c.uint()? as usize;
            if i == 0 {
                c.pos = at;
                return c.err("fundamental weights are numbered from 1");
            }
            TermKind::Phi(i)
        } else if c.eat("R") {
            TermKind::R(u32::try_from(c.uint()?).map_err(|_| Error::Parse {
                pos: c.pos,
                msg: "R index too large".into(),
            })?)
        } else if c.eat("[") {
            let mut ws = Vec::new();
            if c.peek() != Some(b']') {
                loop {
                    let at = c.pos;
                    let v = c.int()?;
                    match i32::try_from(v) {
                        Ok(v) => ws.push(v),
                        Err(_) => {
                            c.pos = at;
                            return c.err("weight coordinate out of range");
                        }
                    }
                    if !c.eat(",") {
                        break;
                    }
                }
            }
            c.expect("]")?;
            TermKind::Weights(ws)
        } else {
            return c.err("expected a module term: phiN, RN or [weights]");
        };
        let mut copies = 1;
        if c.eat("*") {
            let at = c.pos;
            let m = c.uint()?;
            if m == 0 || m > u32::MAX as u64 {
                c.pos = at;
                return c.err("copy count must be a positive integer");
            }
            copies = m as u32;
        }
        let term = Term { kind, copies };
        check_term(&group, &term).or_else(|msg| c.err(msg))?;
        terms.push(term);
        match c.peek() {
            Some(b'+') => c.pos += 1,
            None => break,
            Some(_) => return c.err("expected '+' or end of input"),
        }
    }
    Ok(RepSpec { group, terms })
}

fn check_term(group: &GroupSpec, term: &Term) -> std::result::Result<(), String> {
    match (group, &term.kind) {
        (GroupSpec::Simple { rank, .. }, TermKind::Phi(i)) if *i > *rank => {
            Err(format!("phi{i} exceeds the rank {rank}"))
        }
        (GroupSpec::Simple { letter, rank }, TermKind::R(_)) if (*letter, *rank) != ('A', 1) => {
            Err("R<j> is only defined for A1".into())
        }
        (GroupSpec::Simple { rank, .. }, TermKind::Weights(ws)) => {
            if ws.len() != *rank {
                Err(format!("highest weight has {} coordinates, expected {rank}", ws.len()))
            } else if ws.iter().any(|&w| w < 0) {
                Err("highest weights must be dominant (nonnegative)".into())
            } else {
                Ok(())
            }
        }
        (GroupSpec::Torus(_), TermKind::Phi(_) | TermKind::R(_)) => {
            Err("torus modules are given as weight lists".into())
        }
        (GroupSpec::Torus(r), TermKind::Weights(ws)) if ws.is_empty() || ws.len() % r != 0 => Err(
            format!("torus weight list length {} is not a positive multiple of the rank {r}", ws.len()),
        ),
        (GroupSpec::Finite(_), TermKind::Phi(1)) => Ok(()),
        (GroupSpec::Finite(_), _) => Err("finite groups take the defining action phi1".into()),
        _ => Ok(()),
    }
}

/// One isotypic summand: highest weight (or torus weight) and copy count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub weight: Weight,
    pub copies: u32,
}

#[derive(Clone)]
pub enum RepGroup {
    Simple(Arc<RootSystem>),
    Torus(usize),
    Finite(Arc<FiniteGroup>),
}

/// A representation ready for computation.
#[derive(Clone)]
pub struct ResolvedRep {
    pub spec: RepSpec,
    pub group: RepGroup,
    /// Isotypic components in order of first appearance.
    pub summands: Vec<Summand>,
    pub dim: usize,
    character: Option<FormalCharacter>,
}

impl fmt::Debug for ResolvedRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResolvedRep({}, dim {})", self.spec, self.dim)
    }
}

fn term_weights(rank: usize, t: &Term) -> Vec<Weight> {
    match &t.kind {
        TermKind::Phi(i) => vec![Weight::fundamental(rank, i - 1)],
        TermKind::R(j) => vec![Weight::from_slice(&[*j as i32])],
        TermKind::Weights(ws) => ws.chunks(rank).map(Weight::from_slice).collect(),
    }
}

pub fn resolve(spec: &RepSpec) -> Result<ResolvedRep> {
    resolve_with_cap(spec, DEFAULT_GROUP_CAP)
}

pub fn resolve_with_cap(spec: &RepSpec, cap: usize) -> Result<ResolvedRep> {
    let mut summands: Vec<Summand> = Vec::new();
    let mut push = |w: Weight, m: u32| match summands.iter_mut().find(|s| s.weight == w) {
        Some(s) => s.copies += m,
        None => summands.push(Summand { weight: w, copies: m }),
    };
    match &spec.group {
        GroupSpec::Simple { letter, rank } => {
            let rs = build_root_system(*letter, *rank)?;
            for t in &spec.terms {
                for w in term_weights(*rank, t) {
                    push(w, t.copies);
                }
            }
            let mut chi = FormalCharacter::empty(GroupTag::Simple(rs.clone()));
            for s in &summands {
                chi = chi.sum(&irrep_character(&rs, &s.weight)?.times(s.copies))?;
            }
            let dim = chi
                .dimension()
                .to_u64()
                .ok_or_else(|| Error::invalid("module dimension too large"))? as usize;
            Ok(ResolvedRep {
                spec: spec.clone(),
                group: RepGroup::Simple(rs),
                summands,
                dim,
                character: Some(chi),
            })
        }
        GroupSpec::Torus(r) => {
            let mut all = Vec::new();
            for t in &spec.terms {
                for w in term_weights(*r, t) {
                    for _ in 0..t.copies {
                        all.push(w.clone());
                    }
                    push(w, t.copies);
                }
            }
            let chi = FormalCharacter::torus(*r, &all)?;
            Ok(ResolvedRep {
                spec: spec.clone(),
                group: RepGroup::Torus(*r),
                summands,
                dim: all.len(),
                character: Some(chi),
            })
        }
        GroupSpec::Finite(name) => {
            let copies: u32 = spec.terms.iter().map(|t| t.copies).sum();
            let base = builtin_group(name, cap)?;
            let group = if copies == 1 {
                base
            } else {
                let gens: Vec<RatMatrix> = base
                    .generators()
                    .iter()
                    .map(|g| block_diagonal(g, copies as usize))
                    .collect();
                generate_named(&format!("{name}x{copies}"), &gens, cap)?
            };
            push(Weight::fundamental(1, 0), copies);
            Ok(ResolvedRep {
                spec: spec.clone(),
                dim: group.dim(),
                group: RepGroup::Finite(Arc::new(group)),
                summands,
                character: None,
            })
        }
    }
}

/// `copies` diagonal blocks of `g`.
pub fn block_diagonal(g: &RatMatrix, copies: usize) -> RatMatrix {
    let n = g.size();
    let mut rows = vec![vec![Rational::zero(); n * copies]; n * copies];
    for b in 0..copies {
        for i in 0..n {
            for j in 0..n {
                rows[b * n + i][b * n + j] = g.get(i, j).clone();
            }
        }
    }
    RatMatrix::from_rows(rows).expect("square")
}

impl ResolvedRep {
    pub fn character(&self) -> Option<&FormalCharacter> {
        self.character.as_ref()
    }

    pub fn finite_group(&self) -> Option<&Arc<FiniteGroup>> {
        match &self.group {
            RepGroup::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub fn root_system(&self) -> Option<&Arc<RootSystem>> {
        match &self.group {
            RepGroup::Simple(rs) => Some(rs),
            _ => None,
        }
    }

    /// Character of one isotypic component.
    pub fn isotypic_character(&self, index: usize) -> Result<FormalCharacter> {
        let s = &self.summands[index];
        match &self.group {
            RepGroup::Simple(rs) => Ok(irrep_character(rs, &s.weight)?.times(s.copies)),
            RepGroup::Torus(r) => {
                let ws = vec![s.weight.clone(); s.copies as usize];
                FormalCharacter::torus(*r, &ws)
            }
            RepGroup::Finite(_) => Err(Error::invalid("finite groups carry no character")),
        }
    }

    /// Nontrivial isotypic components (trivial summands split off).
    pub fn nontrivial_summands(&self) -> Vec<usize> {
        (0..self.summands.len())
            .filter(|&i| !self.summands[i].weight.is_zero() || self.finite_group().is_some())
            .collect()
    }

    /// Half the number of nonzero weights counted with multiplicity, when
    /// that count is even.
    pub fn q_value(&self) -> Option<u64> {
        let chi = self.character.as_ref()?;
        let mut nonzero = Int::ZERO;
        for (w, m) in chi.terms() {
            if !w.is_zero() {
                nonzero += m;
            }
        }
        let n = nonzero.to_u64()?;
        (n % 2 == 0).then_some(n / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let r = parse_repspec("A1: R4").unwrap();
        assert_eq!(r.group, GroupSpec::Simple { letter: 'A', rank: 1 });
        assert_eq!(r.terms, vec![Term { kind: TermKind::R(4), copies: 1 }]);
        let b = parse_repspec("B3: phi3").unwrap();
        assert_eq!(resolve(&b).unwrap().dim, 8);
        let t = parse_repspec("torus(1): [1,-1,2,-2]").unwrap();
        let rt = resolve(&t).unwrap();
        assert_eq!(rt.dim, 4);
        assert_eq!(rt.summands.len(), 4);
        assert_eq!(rt.q_value(), Some(2));
    }

    #[test]
    fn canonical_round_trip() {
        for (text, canon) in [
            ("A4: phi1 * 2", "A4: phi1*2"),
            ("A1:R1 + R1", "A1: R1+R1"),
            ("A2: [2, 0]", "A2: [2,0]"),
            ("torus(2): [1,0,-1,0]*3", "torus(2): [1,0,-1,0]*3"),
            ("finite( weyl(D, 4) ): phi1", "finite(weyl(D,4)): phi1"),
        ] {
            let r = parse_repspec(text).unwrap();
            assert_eq!(r.to_string(), canon);
            assert_eq!(parse_repspec(canon).unwrap(), r);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases = [
            ("A1 R4", 3),
            ("B1: phi1", 1),
            ("A2: phi3", 8),
            ("A2: R2", 6),
            ("torus(2): [1,2,3]", 17),
            ("A1: R1 - R1", 7),
            ("A2: phi0", 7),
            ("A1: R2*0", 7),
        ];
        for (text, pos) in cases {
            match parse_repspec(text) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn resolved_dimensions() {
        let dim = |s: &str| resolve(&parse_repspec(s).unwrap()).unwrap().dim;
        assert_eq!(dim("A1: R1+R1"), 4);
        assert_eq!(dim("A3: [3,0,0]"), 20);
        assert_eq!(dim("D8: phi8"), 128);
        assert_eq!(dim("A4: phi1*2"), 10);
        assert_eq!(dim("finite(weyl(B,2)): phi1*2"), 4);
        let r = resolve(&parse_repspec("A1: R1+R1").unwrap()).unwrap();
        assert_eq!(r.summands, vec![Summand { weight: Weight::from_slice(&[1]), copies: 2 }]);
        assert_eq!(resolve(&parse_repspec("A1: R6").unwrap()).unwrap().q_value(), Some(3));
    }
}
