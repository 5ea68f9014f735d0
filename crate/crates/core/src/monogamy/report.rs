use serde::{Deserialize, Serialize};

/// Outcome of one monogamy check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Violated,
    PremisesUnmet,
}

/// How `lhs` is compared against the weighted right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// lhs ≥ rhs; reverse inequalities are stored with the sides swapped.
    GreaterEq,
    /// lhs = rhs.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhsTerm {
    pub label: String,
    pub value: f64,
    pub coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Premise {
    pub condition: String,
    pub satisfied: bool,
}

impl Premise {
    pub fn new(condition: impl Into<String>, satisfied: bool) -> Self {
        Self {
            condition: condition.into(),
            satisfied,
        }
    }
}

/// One instance of an equality or inequality with its residual and verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    /// Which relation, e.g. `thm32`, `lemma21-sum`, `c-power`.
    pub id: String,
    pub suite: String,
    /// Partition, focus and parameters that identify the instance.
    pub instance: String,
    pub relation: Relation,
    pub lhs_label: String,
    pub lhs: f64,
    pub rhs_terms: Vec<RhsTerm>,
    pub rhs: f64,
    /// lhs − Σ coefficient·value.
    pub residual: f64,
    pub premises: Vec<Premise>,
    pub verdict: Verdict,
    pub tolerance: f64,
    /// False when any term came from the convex-roof optimizer.
    pub exact: bool,
    /// Auxiliary named values (alternative bounds, reference constants, …).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extras: Vec<(String, f64)>,
}

impl MonogamyReport {
    /// Computes rhs, residual and verdict from the parts.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: impl Into<String>,
        suite: impl Into<String>,
        instance: impl Into<String>,
        relation: Relation,
        lhs_label: impl Into<String>,
        lhs: f64,
        rhs_terms: Vec<RhsTerm>,
        premises: Vec<Premise>,
        tolerance: f64,
        exact: bool,
    ) -> Self {
        let rhs = rhs_terms
            .iter()
            .fold(0.0, |acc, t| acc + t.coefficient * t.value);
        let residual = lhs - rhs;
        let within = match relation {
            Relation::GreaterEq => residual >= -tolerance,
            Relation::Equal => residual.abs() <= tolerance,
        };
        let verdict = if !premises.iter().all(|p| p.satisfied) {
            Verdict::PremisesUnmet
        } else if within {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        Self {
            id: id.into(),
            suite: suite.into(),
            instance: instance.into(),
            relation,
            lhs_label: lhs_label.into(),
            lhs,
            rhs_terms,
            rhs,
            residual,
            premises,
            verdict,
            tolerance,
            exact,
            extras: Vec::new(),
        }
    }

    pub fn with_extra(mut self, name: impl Into<String>, value: f64) -> Self {
        self.extras.push((name.into(), value));
        self
    }
}

pub(crate) fn term(label: impl Into<String>, value: f64, coefficient: f64) -> RhsTerm {
    RhsTerm {
        label: label.into(),
        value,
        coefficient,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rules() {
        let r = MonogamyReport::new(
            "x",
            "s",
            "i",
            Relation::GreaterEq,
            "L",
            1.0,
            vec![term("a", 0.5, 2.0)],
            vec![],
            1e-9,
            true,
        );
        assert_eq!(r.residual, 0.0);
        assert_eq!(r.verdict, Verdict::Holds);

        let r = MonogamyReport::new(
            "x",
            "s",
            "i",
            Relation::GreaterEq,
            "L",
            0.9,
            vec![term("a", 1.0, 1.0)],
            vec![],
            1e-9,
            true,
        );
        assert_eq!(r.verdict, Verdict::Violated);

        let r = MonogamyReport::new(
            "x",
            "s",
            "i",
            Relation::Equal,
            "L",
            1.1,
            vec![term("a", 1.0, 1.0)],
            vec![],
            1e-9,
            true,
        );
        assert_eq!(r.verdict, Verdict::Violated);

        let r = MonogamyReport::new(
            "x",
            "s",
            "i",
            Relation::GreaterEq,
            "L",
            0.0,
            vec![term("a", 1.0, 1.0)],
            vec![Premise::new("p", false)],
            1e-9,
            true,
        );
        assert_eq!(r.verdict, Verdict::PremisesUnmet);
    }

    #[test]
    fn json_shape() {
        let r = MonogamyReport::new(
            "thm32",
            "thm32",
            "{A}{B}{C}",
            Relation::GreaterEq,
            "L",
            1.0,
            vec![term("a", 0.5, 1.0)],
            vec![],
            5e-3,
            false,
        )
        .with_extra("k", 2.0);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "holds");
        assert_eq!(v["relation"], "greater-eq");
        assert_eq!(v["rhs_terms"][0]["coefficient"], 1.0);
        let back: MonogamyReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
