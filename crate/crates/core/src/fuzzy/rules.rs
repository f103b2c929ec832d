//! Wang–Mendel rule generation: one candidate rule per datum, conflicts
//! settled by rule degree.

use std::collections::BTreeMap;

use super::Partition;
use crate::error::{Error, Result};

/// A named linguistic variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub name: String,
    pub partition: Partition,
}

impl Variable {
    pub fn new(name: impl Into<String>, partition: Partition) -> Self {
        Variable {
            name: name.into(),
            partition,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyRule {
    /// Region index per input variable.
    pub antecedent: Vec<usize>,
    pub consequent: usize,
    /// Product of the memberships that produced the rule, in `[0, 1]`.
    pub degree: f64,
}

/// One labelled example: input values (one per variable) and the target.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingPair {
    pub inputs: Vec<f64>,
    pub output: f64,
}

impl TrainingPair {
    pub fn new(inputs: Vec<f64>, output: f64) -> Self {
        TrainingPair { inputs, output }
    }
}

/// Rule base with at most one rule per antecedent combination.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleBase {
    inputs: Vec<Variable>,
    output: Variable,
    rules: BTreeMap<Vec<usize>, (usize, f64)>,
}

impl RuleBase {
    pub fn new(inputs: Vec<Variable>, output: Variable) -> Self {
        RuleBase {
            inputs,
            output,
            rules: BTreeMap::new(),
        }
    }

    pub fn inputs(&self) -> &[Variable] {
        &self.inputs
    }

    pub fn output(&self) -> &Variable {
        &self.output
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    #[inline]
    pub fn lookup(&self, antecedent: &[usize]) -> Option<(usize, f64)> {
        self.rules.get(antecedent).copied()
    }

    /// Rules in antecedent order.
    pub fn rules(&self) -> impl Iterator<Item = FuzzyRule> + '_ {
        self.rules.iter().map(|(a, &(c, d))| FuzzyRule {
            antecedent: a.clone(),
            consequent: c,
            degree: d,
        })
    }

    /// Adds a candidate, keeping the stronger rule on conflict. Equal
    /// degrees keep the lower consequent index, so the result does not
    /// depend on insertion order.
    pub fn insert(&mut self, rule: FuzzyRule) -> Result<bool> {
        self.validate(&rule)?;
        let entry = self.rules.entry(rule.antecedent);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((rule.consequent, rule.degree));
                Ok(true)
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let (c, d) = *o.get();
                let wins = rule.degree > d || (rule.degree == d && rule.consequent < c);
                if wins {
                    o.insert((rule.consequent, rule.degree));
                }
                Ok(wins)
            }
        }
    }

    fn validate(&self, rule: &FuzzyRule) -> Result<()> {
        if rule.antecedent.len() != self.inputs.len() {
            return Err(Error::InvalidParameter(format!(
                "rule has {} antecedent terms for {} variables",
                rule.antecedent.len(),
                self.inputs.len()
            )));
        }
        for (v, &r) in self.inputs.iter().zip(&rule.antecedent) {
            if r >= v.partition.len() {
                return Err(Error::InvalidParameter(format!(
                    "region {r} out of range for {}",
                    v.name
                )));
            }
        }
        if rule.consequent >= self.output.partition.len() {
            return Err(Error::InvalidParameter(format!(
                "consequent {} out of range",
                rule.consequent
            )));
        }
        if !(0.0..=1.0).contains(&rule.degree) {
            return Err(Error::InvalidParameter(format!(
                "degree {} outside [0, 1]",
                rule.degree
            )));
        }
        Ok(())
    }

    /// Merges another rule base over the same variables (max-degree merge).
    pub fn merge(&mut self, other: RuleBase) -> Result<()> {
        for rule in other.rules() {
            self.insert(rule)?;
        }
        Ok(())
    }
}

/// The rule a single datum proposes: every value snapped to its
/// maximal-membership region, degree = product of those memberships.
pub fn candidate_rule(
    pair: &TrainingPair,
    inputs: &[Variable],
    output: &Variable,
) -> Result<FuzzyRule> {
    if pair.inputs.len() != inputs.len() {
        return Err(Error::InvalidParameter(format!(
            "datum has {} inputs, rule base has {}",
            pair.inputs.len(),
            inputs.len()
        )));
    }
    let mut degree = 1.0;
    let mut antecedent = Vec::with_capacity(inputs.len());
    for (v, &x) in inputs.iter().zip(&pair.inputs) {
        if !v.partition.contains(x) {
            return Err(Error::InvalidParameter(format!(
                "{} = {x} outside its universe",
                v.name
            )));
        }
        let (r, m) = v.partition.best_region(x);
        antecedent.push(r);
        degree *= m;
    }
    if !output.partition.contains(pair.output) {
        return Err(Error::InvalidParameter(format!(
            "{} = {} outside its universe",
            output.name, pair.output
        )));
    }
    let (consequent, m) = output.partition.best_region(pair.output);
    Ok(FuzzyRule {
        antecedent,
        consequent,
        degree: degree * m,
    })
}

pub fn generate_rules(
    data: &[TrainingPair],
    inputs: Vec<Variable>,
    output: Variable,
) -> Result<RuleBase> {
    if data.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let mut rb = RuleBase::new(inputs, output);
    for pair in data {
        let rule = candidate_rule(pair, &rb.inputs, &rb.output)?;
        rb.insert(rule)?;
    }
    Ok(rb)
}
