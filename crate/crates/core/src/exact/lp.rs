//! Reader for the LP text subset the emitter writes: one objective, linear
//! constraints, a binary section. Used to check emitted files independently
//! of the in-memory model.

use std::collections::HashMap;

use super::milp::{Constraint, Sense};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub maximize: bool,
    /// Binary variables in declaration order.
    pub names: Vec<String>,
    pub objective: Vec<(usize, f64)>,
    pub constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn objective_value(&self, values: &[bool]) -> f64 {
        self.objective.iter().filter(|&&(v, _)| values[v]).map(|&(_, c)| c).sum()
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Start,
    Objective,
    Constraints,
    Binary,
    End,
}

struct PendingRow {
    line: usize,
    name: Option<String>,
    terms: Vec<(String, f64)>,
    sense: Option<Sense>,
}

/// Parse LP text. Every variable used in the objective or a constraint must be
/// listed in the binary section.
pub fn parse_lp(text: &str) -> Result<LpProblem> {
    let mut section = Section::Start;
    let mut maximize = true;
    let mut objective: Option<PendingRow> = None;
    let mut rows: Vec<(PendingRow, f64)> = Vec::new();
    let mut current: Option<PendingRow> = None;
    let mut names: Vec<String> = Vec::new();
    let mut sign = 1.0;
    let mut coef: Option<f64> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('\\').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        let header = match lower.as_str() {
            "maximize" | "maximum" | "max" => Some((Section::Objective, true)),
            "minimize" | "minimum" | "min" => Some((Section::Objective, false)),
            "subject to" | "such that" | "st" | "s.t." => Some((Section::Constraints, maximize)),
            "binary" | "binaries" | "bin" => Some((Section::Binary, maximize)),
            "end" => Some((Section::End, maximize)),
            _ => None,
        };
        if let Some((next, max)) = header {
            if current.is_some() {
                return Err(Error::parse(line_no, "constraint not terminated before section header"));
            }
            if next == Section::Objective {
                if section != Section::Start {
                    return Err(Error::parse(line_no, "objective section must come first"));
                }
                maximize = max;
            }
            section = next;
            continue;
        }
        match section {
            Section::Start => return Err(Error::parse(line_no, "expected an objective section")),
            Section::End => return Err(Error::parse(line_no, "text after End")),
            Section::Binary => names.extend(line.split_whitespace().map(str::to_string)),
            Section::Objective | Section::Constraints => {
                for tok in line.split_whitespace() {
                    let row = match section {
                        Section::Objective => &mut objective,
                        _ => &mut current,
                    };
                    let row = row.get_or_insert_with(|| PendingRow {
                        line: line_no,
                        name: None,
                        terms: Vec::new(),
                        sense: None,
                    });
                    if let Some(label) = tok.strip_suffix(':') {
                        if row.name.is_some() || !row.terms.is_empty() {
                            return Err(Error::parse(line_no, format!("unexpected label {tok}")));
                        }
                        row.name = Some(label.to_string());
                        continue;
                    }
                    if row.sense.is_some() {
                        let rhs: f64 = tok
                            .parse()
                            .map_err(|_| Error::parse(line_no, format!("bad right-hand side {tok}")))?;
                        let done = current.take().expect("constraint row");
                        rows.push((done, rhs));
                        continue;
                    }
                    match tok {
                        "+" => sign = 1.0,
                        "-" => sign = -1.0,
                        "<=" | "=<" | ">=" | "=>" | "=" => {
                            if section == Section::Objective {
                                return Err(Error::parse(line_no, "comparison in objective"));
                            }
                            if coef.is_some() {
                                return Err(Error::parse(line_no, "dangling coefficient"));
                            }
                            row.sense = Some(match tok {
                                "<=" | "=<" => Sense::Le,
                                ">=" | "=>" => Sense::Ge,
                                _ => Sense::Eq,
                            });
                            sign = 1.0;
                        }
                        _ => {
                            if let Ok(c) = tok.parse::<f64>() {
                                if coef.is_some() {
                                    return Err(Error::parse(line_no, "two coefficients in a row"));
                                }
                                coef = Some(c);
                            } else if is_name(tok) {
                                row.terms.push((tok.to_string(), sign * coef.take().unwrap_or(1.0)));
                                sign = 1.0;
                            } else {
                                return Err(Error::parse(line_no, format!("bad token {tok}")));
                            }
                        }
                    }
                }
            }
        }
    }
    if section != Section::End {
        return Err(Error::parse(text.lines().count(), "missing End"));
    }
    if let Some(row) = current {
        return Err(Error::parse(row.line, "unterminated constraint"));
    }

    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != names.len() {
        return Err(Error::parse(0, "binary variable declared twice"));
    }
    let resolve = |row: &PendingRow| -> Result<Vec<(usize, f64)>> {
        let mut merged: Vec<(usize, f64)> = Vec::new();
        for (name, c) in &row.terms {
            let v = *index
                .get(name.as_str())
                .ok_or_else(|| Error::parse(row.line, format!("variable {name} is not declared binary")))?;
            match merged.iter_mut().find(|(u, _)| *u == v) {
                Some(slot) => slot.1 += c,
                None => merged.push((v, *c)),
            }
        }
        Ok(merged)
    };
    let objective = match &objective {
        Some(row) => resolve(row)?,
        None => Vec::new(),
    };
    let constraints = rows
        .iter()
        .enumerate()
        .map(|(i, (row, rhs))| {
            Ok(Constraint {
                name: row.name.clone().unwrap_or_else(|| format!("R{}", i + 1)),
                terms: resolve(row)?,
                sense: row.sense.expect("terminated row"),
                rhs: *rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LpProblem {
        maximize,
        names,
        objective,
        constraints,
    })
}

fn is_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || "_.[]".contains(c))
}
