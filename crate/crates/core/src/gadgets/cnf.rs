//! Formulas of the unordered CNF game and a brute-force solver.
//!
//! Text format: a line `k K`, then one clause per line with literals such as
//! `x1`, `~x2` or `-y1`. `#` starts a comment.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest `k` accepted by [`solve_unordered_cnf`].
pub const CNF_SOLVE_LIMIT: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("k must be at least 2, got {0}")]
    SmallK(usize),
    #[error("clause {0} has no Y variable")]
    NoYVariable(usize),
    #[error("variable index {index} outside 1..={k}")]
    BadIndex { index: usize, k: usize },
    #[error("k = {k} exceeds the brute-force limit {limit}")]
    TooLarge { k: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    X,
    Y,
}

/// A literal over variable `index` (0-based) of one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Literal {
    pub side: Side,
    pub index: usize,
    pub negated: bool,
}

impl Literal {
    pub fn new(side: Side, index: usize, negated: bool) -> Self {
        Literal { side, index, negated }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.side == Side::X { 'x' } else { 'y' };
        write!(f, "{}{}{}", if self.negated { "~" } else { "" }, name, self.index + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnorderedCnf {
    pub k: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl UnorderedCnf {
    pub fn new(k: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        if k < 2 {
            return Err(CnfError::SmallK(k));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if let Some(l) = clause.iter().find(|l| l.index >= k) {
                return Err(CnfError::BadIndex { index: l.index + 1, k });
            }
            if !clause.iter().any(|l| l.side == Side::Y) {
                return Err(CnfError::NoYVariable(i + 1));
            }
        }
        Ok(UnorderedCnf { k, clauses })
    }

    pub fn parse(text: &str) -> Result<Self, CnfError> {
        let mut k = None;
        let mut clauses = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            if k.is_none() {
                match toks[..] {
                    ["k", n] => {
                        k = Some(n.parse().map_err(|_| CnfError::Syntax { line, msg: format!("bad k {n:?}") })?)
                    }
                    _ => return Err(CnfError::Syntax { line, msg: "expected \"k K\"".into() }),
                }
                continue;
            }
            let clause = toks.iter().map(|t| parse_literal(t, line)).collect::<Result<Vec<_>, _>>()?;
            clauses.push(clause);
        }
        let k = k.ok_or(CnfError::Syntax { line: 0, msg: "missing \"k K\" line".into() })?;
        Self::new(k, clauses)
    }

    pub fn satisfied_by(&self, x: &[bool], y: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|l| {
                let v = if l.side == Side::X { x[l.index] } else { y[l.index] };
                v != l.negated
            })
        })
    }
}

impl fmt::Display for UnorderedCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k {}", self.k)?;
        for clause in &self.clauses {
            let lits: Vec<String> = clause.iter().map(Literal::to_string).collect();
            writeln!(f, "{}", lits.join(" "))?;
        }
        Ok(())
    }
}

fn parse_literal(tok: &str, line: usize) -> Result<Literal, CnfError> {
    let bad = || CnfError::Syntax { line, msg: format!("bad literal {tok:?}") };
    let (negated, rest) = match tok.strip_prefix(['~', '-', '!']) {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let side = match rest.chars().next() {
        Some('x') => Side::X,
        Some('y') => Side::Y,
        _ => return Err(bad()),
    };
    let index: usize = rest[1..].parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    Ok(Literal { side, index: index - 1, negated })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    Satisfier,
    Falsifier,
}

/// Exact minimax; Falsifier picks an X variable first, then the players
/// alternate until every variable is set.
pub fn solve_unordered_cnf(phi: &UnorderedCnf) -> Result<Winner, CnfError> {
    if phi.k > CNF_SOLVE_LIMIT {
        return Err(CnfError::TooLarge { k: phi.k, limit: CNF_SOLVE_LIMIT });
    }
    // 0 = unset, 1 = true, 2 = false; X variables first
    let mut memo = HashMap::new();
    let state = vec![0u8; 2 * phi.k];
    Ok(if satisfier_wins(phi, state, 0, &mut memo) { Winner::Satisfier } else { Winner::Falsifier })
}

fn satisfier_wins(phi: &UnorderedCnf, state: Vec<u8>, moves: usize, memo: &mut HashMap<Vec<u8>, bool>) -> bool {
    let k = phi.k;
    if moves == 2 * k {
        let x: Vec<bool> = state[..k].iter().map(|&s| s == 1).collect();
        let y: Vec<bool> = state[k..].iter().map(|&s| s == 1).collect();
        return phi.satisfied_by(&x, &y);
    }
    if let Some(&w) = memo.get(&state) {
        return w;
    }
    let falsifier = moves.is_multiple_of(2);
    let range = if falsifier { 0..k } else { k..2 * k };
    let mut outcomes = range.filter(|&i| state[i] == 0).flat_map(|i| [(i, 1u8), (i, 2u8)]).map(|(i, val)| {
        let mut next = state.clone();
        next[i] = val;
        satisfier_wins(phi, next, moves + 1, memo)
    });
    let w = if falsifier { outcomes.all(|s| s) } else { outcomes.any(|s| s) };
    memo.insert(state, w);
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let phi = UnorderedCnf::parse("k 2\nx1 ~y1\n-x1 x2 y2 # clause two\n").unwrap();
        assert_eq!(phi.clauses.len(), 2);
        assert_eq!(phi.clauses[1][0], Literal::new(Side::X, 0, true));
        assert_eq!(UnorderedCnf::parse(&phi.to_string()).unwrap(), phi);
        assert_eq!(UnorderedCnf::parse("k 2\nx1 x2"), Err(CnfError::NoYVariable(1)));
        assert_eq!(UnorderedCnf::parse("k 1\ny1"), Err(CnfError::SmallK(1)));
        assert!(matches!(UnorderedCnf::parse("k 2\nz1"), Err(CnfError::Syntax { line: 2, .. })));
        assert_eq!(UnorderedCnf::parse("k 2\ny3"), Err(CnfError::BadIndex { index: 3, k: 2 }));
    }

    #[test]
    fn winners() {
        let phi = UnorderedCnf::parse("k 2\ny1\ny2").unwrap();
        assert_eq!(solve_unordered_cnf(&phi), Ok(Winner::Satisfier));
        let phi = UnorderedCnf::parse("k 2\nx1 y1\n~x1 y1\n~y1 y2\n~y1 ~y2").unwrap();
        assert_eq!(solve_unordered_cnf(&phi), Ok(Winner::Falsifier));
        let phi = UnorderedCnf::parse("k 2\ny1 ~y1\ny2 ~y2").unwrap();
        assert_eq!(solve_unordered_cnf(&phi), Ok(Winner::Satisfier));
        let big = UnorderedCnf::new(5, vec![]).unwrap();
        assert!(matches!(solve_unordered_cnf(&big), Err(CnfError::TooLarge { .. })));
    }
}
