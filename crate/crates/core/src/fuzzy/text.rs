//! Line-oriented rule-base format.
//!
//! ```text
//! RULEBASE 1
//! INPUT intensity 0.0 255.0
//! REGION R0 TRI 0.0 0.0 18.214285714285715
//! ...
//! OUTPUT target 0.0 255.0
//! REGION R0 TRI 0.0 0.0 18.214285714285715
//! ...
//! IF intensity=R3 AND local_mean=R4 THEN target=R3 [0.72]
//! ```
//!
//! `REGION` lines belong to the nearest preceding `INPUT`/`OUTPUT` line.
//! Numbers use Rust's shortest round-trip formatting, so parsing restores
//! every parameter and degree bit-for-bit. Blank lines and `#` comments are
//! ignored.

use std::fmt::Write as _;

use super::{FuzzyRegion, FuzzyRule, MembershipFunction, Partition, RuleBase, Variable};
use crate::error::{Error, Result};

const MAGIC: &str = "RULEBASE 1";

fn write_variable(out: &mut String, kind: &str, v: &Variable) {
    let p = &v.partition;
    let _ = writeln!(out, "{kind} {} {:?} {:?}", v.name, p.lo(), p.hi());
    for r in p.regions() {
        let _ = match r.mf {
            MembershipFunction::Triangular { a, b, c } => {
                writeln!(out, "REGION {} TRI {a:?} {b:?} {c:?}", r.label)
            }
            MembershipFunction::Trapezoidal { a, b, c, d } => {
                writeln!(out, "REGION {} TRAP {a:?} {b:?} {c:?} {d:?}", r.label)
            }
            MembershipFunction::Gaussian { peak, fuzzifier } => {
                writeln!(out, "REGION {} GAUSS {peak:?} {fuzzifier:?}", r.label)
            }
        };
    }
}

pub fn to_text(rb: &RuleBase) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    for v in rb.inputs() {
        write_variable(&mut out, "INPUT", v);
    }
    write_variable(&mut out, "OUTPUT", rb.output());
    for rule in rb.rules() {
        out.push_str("IF ");
        for (k, (v, &r)) in rb.inputs().iter().zip(&rule.antecedent).enumerate() {
            if k > 0 {
                out.push_str(" AND ");
            }
            let _ = write!(out, "{}={}", v.name, v.partition.regions()[r].label);
        }
        let out_var = rb.output();
        let _ = writeln!(
            out,
            " THEN {}={} [{:?}]",
            out_var.name,
            out_var.partition.regions()[rule.consequent].label,
            rule.degree
        );
    }
    out
}

struct VarDraft {
    name: String,
    lo: f64,
    hi: f64,
    regions: Vec<FuzzyRegion>,
}

fn num(tok: Option<&str>, line: usize) -> Result<f64> {
    let tok = tok.ok_or(Error::Parse {
        line,
        msg: "missing number".into(),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad number {tok:?}"),
    })
}

fn parse_region(
    mut toks: std::str::SplitWhitespace<'_>,
    line: usize,
    universe: (f64, f64),
) -> Result<FuzzyRegion> {
    let label = toks
        .next()
        .ok_or(Error::Parse {
            line,
            msg: "missing region label".into(),
        })?
        .to_string();
    let mf = match toks.next() {
        Some("TRI") => MembershipFunction::Triangular {
            a: num(toks.next(), line)?,
            b: num(toks.next(), line)?,
            c: num(toks.next(), line)?,
        },
        Some("TRAP") => MembershipFunction::Trapezoidal {
            a: num(toks.next(), line)?,
            b: num(toks.next(), line)?,
            c: num(toks.next(), line)?,
            d: num(toks.next(), line)?,
        },
        Some("GAUSS") => MembershipFunction::Gaussian {
            peak: num(toks.next(), line)?,
            fuzzifier: num(toks.next(), line)?,
        },
        other => {
            return Err(Error::Parse {
                line,
                msg: format!("unknown membership shape {other:?}"),
            })
        }
    };
    Ok(FuzzyRegion {
        label,
        mf,
        universe,
    })
}

fn finish(draft: VarDraft, line: usize) -> Result<Variable> {
    let partition =
        Partition::from_regions(draft.lo, draft.hi, draft.regions).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
    Ok(Variable::new(draft.name, partition))
}

fn parse_term(tok: &str, var: &Variable, line: usize) -> Result<usize> {
    let (name, label) = tok.split_once('=').ok_or(Error::Parse {
        line,
        msg: format!("expected name=label, got {tok:?}"),
    })?;
    if name != var.name {
        return Err(Error::Parse {
            line,
            msg: format!("expected variable {}, got {name}", var.name),
        });
    }
    var.partition
        .regions()
        .iter()
        .position(|r| r.label == label)
        .ok_or(Error::Parse {
            line,
            msg: format!("unknown region {label} for {name}"),
        })
}

pub fn from_text(text: &str) -> Result<RuleBase> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, MAGIC)) => {}
        other => {
            return Err(Error::Parse {
                line: other.map_or(1, |(line, _)| line),
                msg: format!("expected {MAGIC:?} header"),
            })
        }
    }
    let mut inputs = Vec::new();
    let mut output: Option<Variable> = None;
    let mut draft: Option<(bool, VarDraft)> = None;
    let mut rules = Vec::new();
    let mut last_line = 1;

    for (line, l) in lines {
        last_line = line;
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some(kind @ ("INPUT" | "OUTPUT")) => {
                if let Some((is_out, d)) = draft.take() {
                    let v = finish(d, line)?;
                    if is_out {
                        output = Some(v);
                    } else {
                        inputs.push(v);
                    }
                }
                if output.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "variables after the output variable".into(),
                    });
                }
                let name = toks.next().ok_or(Error::Parse {
                    line,
                    msg: "missing variable name".into(),
                })?;
                draft = Some((
                    kind == "OUTPUT",
                    VarDraft {
                        name: name.to_string(),
                        lo: num(toks.next(), line)?,
                        hi: num(toks.next(), line)?,
                        regions: Vec::new(),
                    },
                ));
            }
            Some("REGION") => {
                let (_, d) = draft.as_mut().ok_or(Error::Parse {
                    line,
                    msg: "REGION outside a variable block".into(),
                })?;
                let r = parse_region(toks, line, (d.lo, d.hi))?;
                d.regions.push(r);
            }
            Some("IF") => {
                if let Some((is_out, d)) = draft.take() {
                    let v = finish(d, line)?;
                    if is_out {
                        output = Some(v);
                    } else {
                        inputs.push(v);
                    }
                }
                let out_var = output.as_ref().ok_or(Error::Parse {
                    line,
                    msg: "rule before OUTPUT block".into(),
                })?;
                rules.push((line, parse_rule(l, &inputs, out_var, line)?));
            }
            Some(other) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown directive {other:?}"),
                })
            }
            None => {}
        }
    }
    if let Some((is_out, d)) = draft.take() {
        let v = finish(d, last_line)?;
        if is_out {
            output = Some(v);
        } else {
            inputs.push(v);
        }
    }
    let output = output.ok_or(Error::Parse {
        line: last_line,
        msg: "missing OUTPUT block".into(),
    })?;
    let mut rb = RuleBase::new(inputs, output);
    for (line, rule) in rules {
        let key = rule.antecedent.clone();
        if rb.lookup(&key).is_some() {
            return Err(Error::Parse {
                line,
                msg: "duplicate antecedent".into(),
            });
        }
        rb.insert(rule).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(rb)
}

fn parse_rule(l: &str, inputs: &[Variable], output: &Variable, line: usize) -> Result<FuzzyRule> {
    let body = l.strip_prefix("IF ").unwrap_or(l);
    let (lhs, rhs) = body.split_once(" THEN ").ok_or(Error::Parse {
        line,
        msg: "missing THEN".into(),
    })?;
    let terms: Vec<&str> = lhs.split(" AND ").map(str::trim).collect();
    if terms.len() != inputs.len() {
        return Err(Error::Parse {
            line,
            msg: format!(
                "{} antecedent terms for {} inputs",
                terms.len(),
                inputs.len()
            ),
        });
    }
    let antecedent = terms
        .iter()
        .zip(inputs)
        .map(|(t, v)| parse_term(t, v, line))
        .collect::<Result<Vec<_>>>()?;
    let mut rtoks = rhs.split_whitespace();
    let consequent = parse_term(
        rtoks.next().ok_or(Error::Parse {
            line,
            msg: "missing consequent".into(),
        })?,
        output,
        line,
    )?;
    let degree_tok = rtoks.next().ok_or(Error::Parse {
        line,
        msg: "missing [degree]".into(),
    })?;
    let degree = degree_tok
        .strip_prefix('[')
        .and_then(|d| d.strip_suffix(']'))
        .ok_or(Error::Parse {
            line,
            msg: format!("degree must be bracketed, got {degree_tok:?}"),
        })?;
    Ok(FuzzyRule {
        antecedent,
        consequent,
        degree: num(Some(degree), line)?,
    })
}
