//! Exact two-phase simplex over the rationals, used as an independent oracle.
//!
//! Problems are solved in canonical form `min c·x  s.t.  A x = b, x >= 0`.
//! [`GeneralLp`] covers mixed `<=`/`>=`/`=` constraints and sign-free
//! variables and is reduced to canonical form by [`to_standard_form`].
//! Pivoting follows Bland's rule in both phases, so the method terminates
//! without any tolerances.

use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::rational::{parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid LP document: {0}")]
    Parse(String),
    #[error("internal solver error: {0}")]
    Internal(String),
}

/// `min c·x` subject to `A x = b`, `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardLp {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl StandardLp {
    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.c.len()
    }

    fn check(&self) -> Result<(), LpError> {
        if self.b.len() != self.a.len() {
            return Err(LpError::Dimension(format!(
                "{} rows but {} right-hand sides",
                self.a.len(),
                self.b.len()
            )));
        }
        if let Some((r, row)) = self.a.iter().enumerate().find(|(_, row)| row.len() != self.c.len()) {
            return Err(LpError::Dimension(format!(
                "row {} has {} entries, objective has {}",
                r + 1,
                row.len(),
                self.c.len()
            )));
        }
        Ok(())
    }

    /// True iff `x >= 0` and `A x = b` hold exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.cols()
            && x.iter().all(|v| !v.is_negative())
            && self.a.iter().zip(&self.b).all(|(row, rhs)| dot(row, x) == *rhs)
    }

    pub fn objective(&self, x: &[Rational]) -> Rational {
        dot(&self.c, x)
    }

    /// Reads `{"a": [[..]], "b": [..], "c": [..]}` with rationals as strings
    /// or integers.
    pub fn from_json(text: &str) -> Result<Self, LpError> {
        #[derive(Deserialize)]
        struct Doc {
            a: Vec<Vec<serde_json::Value>>,
            b: Vec<serde_json::Value>,
            c: Vec<serde_json::Value>,
        }
        fn entry(v: &serde_json::Value) -> Result<Rational, LpError> {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(LpError::Parse(format!("bad entry {other}"))),
            };
            parse_rational(&text).ok_or_else(|| LpError::Parse(format!("bad rational {text:?}")))
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| LpError::Parse(e.to_string()))?;
        let lp = Self {
            a: doc
                .a
                .iter()
                .map(|row| row.iter().map(entry).collect())
                .collect::<Result<_, _>>()?,
            b: doc.b.iter().map(entry).collect::<Result<_, _>>()?,
            c: doc.c.iter().map(entry).collect::<Result<_, _>>()?,
        };
        lp.check()?;
        Ok(lp)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .fold(Rational::zero(), |acc, v| acc + v)
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry holds minus the objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width - 1]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = self.rows[pr][pc].recip();
        for v in &mut self.rows[pr] {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let support: Vec<usize> = (0..self.width).filter(|&j| !self.rows[pr][j].is_zero()).collect();
        let pivot_row = self.rows[pr].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        if !self.cost[pc].is_zero() {
            let factor = self.cost[pc].clone();
            for &j in &support {
                self.cost[j] -= &factor * &pivot_row[j];
            }
        }
        self.basis[pr] = pc;
    }

    /// One Bland step over columns `0..limit`.
    fn step(&mut self, limit: usize) -> Step {
        let Some(enter) = (0..limit).find(|&j| self.cost[j].is_negative()) else {
            return Step::Optimal;
        };
        let mut best: Option<(Rational, usize, usize)> = None;
        for r in 0..self.rows.len() {
            let coef = &self.rows[r][enter];
            if !coef.is_positive() {
                continue;
            }
            let ratio = self.rhs(r) / coef;
            let better = match &best {
                None => true,
                Some((q, _, var)) => ratio < *q || (ratio == *q && self.basis[r] < *var),
            };
            if better {
                best = Some((ratio, r, self.basis[r]));
            }
        }
        match best {
            None => Step::Unbounded,
            Some((_, r, _)) => {
                self.pivot(r, enter);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, limit: usize) -> Step {
        loop {
            match self.step(limit) {
                Step::Pivoted => continue,
                done => return done,
            }
        }
    }

    fn reprice(&mut self, costs: &[Rational]) {
        let mut cost: Vec<Rational> = (0..self.width)
            .map(|j| costs.get(j).cloned().unwrap_or_else(Rational::zero))
            .collect();
        for (r, &var) in self.basis.iter().enumerate() {
            let cb = costs.get(var).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.width {
                if !self.rows[r][j].is_zero() {
                    cost[j] -= &cb * &self.rows[r][j];
                }
            }
        }
        self.cost = cost;
    }
}

/// Two-phase simplex with Bland's rule.
pub fn solve(lp: &StandardLp) -> Result<LpOutcome, LpError> {
    lp.check()?;
    let m = lp.rows();
    let n = lp.cols();
    let width = n + m + 1;

    // phase I: artificial identity basis on rows with b >= 0
    let mut rows = Vec::with_capacity(m);
    for (r, (arow, rhs)) in lp.a.iter().zip(&lp.b).enumerate() {
        let flip = rhs.is_negative();
        let mut row = vec![Rational::zero(); width];
        for (j, v) in arow.iter().enumerate() {
            row[j] = if flip { -v } else { v.clone() };
        }
        row[n + r] = Rational::one();
        row[width - 1] = if flip { -rhs } else { rhs.clone() };
        rows.push(row);
    }
    let mut tab = Tableau {
        rows,
        cost: Vec::new(),
        basis: (n..n + m).collect(),
        width,
    };
    let phase_one: Vec<Rational> = (0..width - 1)
        .map(|j| if j >= n { Rational::one() } else { Rational::zero() })
        .collect();
    tab.reprice(&phase_one);
    match tab.run(n + m) {
        Step::Optimal => {}
        _ => return Err(LpError::Internal("phase I is bounded below by zero".into())),
    }
    if !tab.cost[width - 1].is_zero() {
        return Ok(LpOutcome::Infeasible);
    }

    // drive remaining artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for row in &mut tab.rows {
        for v in &mut row[n..width - 1] {
            *v = Rational::zero();
        }
    }

    // phase II
    tab.reprice(&lp.c);
    match tab.run(n) {
        Step::Unbounded => return Ok(LpOutcome::Unbounded),
        Step::Optimal => {}
        Step::Pivoted => unreachable!(),
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &var) in tab.basis.iter().enumerate() {
        x[var] = tab.rhs(r).clone();
    }
    let value = -tab.cost[width - 1].clone();
    if !lp.is_feasible(&x) || lp.objective(&x) != value {
        return Err(LpError::Internal("returned basis failed the exact feasibility check".into()));
    }
    Ok(LpOutcome::Optimal { value, x })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// LP with mixed constraints and optionally sign-free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralLp {
    pub objective: Vec<Rational>,
    pub maximize: bool,
    pub constraints: Vec<Constraint>,
    /// `free[i]` lifts the `x_i >= 0` bound.
    pub free: Vec<bool>,
}

impl GeneralLp {
    /// `min objective·x` over non-negative variables, no constraints yet.
    pub fn minimize(objective: Vec<Rational>) -> Self {
        let free = vec![false; objective.len()];
        Self {
            objective,
            maximize: false,
            constraints: Vec::new(),
            free,
        }
    }

    pub fn maximize(objective: Vec<Rational>) -> Self {
        Self {
            maximize: true,
            ..Self::minimize(objective)
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn set_free(&mut self, var: usize, free: bool) -> &mut Self {
        self.free[var] = free;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Solves and maps the optimizer back to the original variables. The
    /// reported value is in the original sense (max or min).
    pub fn solve(&self) -> Result<LpOutcome, LpError> {
        let (standard, map) = to_standard_form(self)?;
        Ok(match solve(&standard)? {
            LpOutcome::Optimal { value, x } => LpOutcome::Optimal {
                value: if self.maximize { -value } else { value },
                x: map.recover(&x),
            },
            other => other,
        })
    }
}

/// Column layout of a standardized [`GeneralLp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMap {
    /// Per original variable: positive part column and, if split, the
    /// negative part column.
    pub columns: Vec<(usize, Option<usize>)>,
    /// Per constraint: its slack or surplus column, if any.
    pub slacks: Vec<Option<usize>>,
}

impl VariableMap {
    pub fn recover(&self, x: &[Rational]) -> Vec<Rational> {
        self.columns
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &x[pos] - &x[neg],
                None => x[pos].clone(),
            })
            .collect()
    }
}

/// Splits free variables into differences of non-negative parts and adds a
/// slack (`<=`) or surplus (`>=`) column per inequality. Maximization is
/// turned into minimization of the negated objective.
pub fn to_standard_form(lp: &GeneralLp) -> Result<(StandardLp, VariableMap), LpError> {
    let nv = lp.num_vars();
    if lp.free.len() != nv {
        return Err(LpError::Dimension(format!(
            "{} free flags for {nv} variables",
            lp.free.len()
        )));
    }
    if let Some((idx, c)) = lp.constraints.iter().enumerate().find(|(_, c)| c.coeffs.len() != nv) {
        return Err(LpError::Dimension(format!(
            "constraint {} has {} coefficients, expected {nv}",
            idx + 1,
            c.coeffs.len()
        )));
    }

    let mut columns = Vec::with_capacity(nv);
    let mut next = 0;
    for &free in &lp.free {
        if free {
            columns.push((next, Some(next + 1)));
            next += 2;
        } else {
            columns.push((next, None));
            next += 1;
        }
    }
    let mut slacks = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        if c.relation == Relation::Eq {
            slacks.push(None);
        } else {
            slacks.push(Some(next));
            next += 1;
        }
    }
    let total = next;

    let sign = if lp.maximize { -Rational::one() } else { Rational::one() };
    let mut cost = vec![Rational::zero(); total];
    for (v, &(pos, neg)) in columns.iter().enumerate() {
        cost[pos] = &lp.objective[v] * &sign;
        if let Some(neg) = neg {
            cost[neg] = -&cost[pos];
        }
    }
    let mut a = Vec::with_capacity(lp.constraints.len());
    let mut b = Vec::with_capacity(lp.constraints.len());
    for (c, slack) in lp.constraints.iter().zip(&slacks) {
        let mut row = vec![Rational::zero(); total];
        for (v, &(pos, neg)) in columns.iter().enumerate() {
            row[pos] = c.coeffs[v].clone();
            if let Some(neg) = neg {
                row[neg] = -&c.coeffs[v];
            }
        }
        if let Some(s) = *slack {
            row[s] = match c.relation {
                Relation::Le => Rational::one(),
                Relation::Ge => -Rational::one(),
                Relation::Eq => unreachable!(),
            };
        }
        a.push(row);
        b.push(c.rhs.clone());
    }
    Ok((StandardLp { a, b, c: cost }, VariableMap { columns, slacks }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = GeneralLp::minimize(ints(&[-1, -1]));
        lp.constrain(ints(&[1, 2]), Relation::Le, int(4))
            .constrain(ints(&[3, 1]), Relation::Le, int(6));
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, frac(-14, 5));
                assert_eq!(x, vec![frac(8, 5), frac(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_equalities_are_infeasible() {
        let mut lp = GeneralLp::minimize(ints(&[0]));
        lp.constrain(ints(&[1]), Relation::Eq, int(0))
            .constrain(ints(&[1]), Relation::Eq, int(1));
        assert_eq!(lp.solve().unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_below() {
        let lp = GeneralLp::minimize(ints(&[-1]));
        assert_eq!(lp.solve().unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn single_le_gets_one_slack() {
        let mut lp = GeneralLp::minimize(ints(&[1]));
        lp.constrain(ints(&[1]), Relation::Le, int(1));
        let (std, map) = to_standard_form(&lp).unwrap();
        assert_eq!(std.cols(), 2);
        assert_eq!(std.c, ints(&[1, 0]));
        assert_eq!(map.columns, vec![(0, None)]);
        assert_eq!(map.slacks, vec![Some(1)]);
    }

    #[test]
    fn equalities_add_no_slacks() {
        let mut lp = GeneralLp::minimize(ints(&[1, 1]));
        lp.constrain(ints(&[1, 1]), Relation::Eq, int(1));
        let (std, _) = to_standard_form(&lp).unwrap();
        assert_eq!(std.cols(), 2);
        let empty = GeneralLp::minimize(ints(&[1, 2, 3]));
        assert_eq!(to_standard_form(&empty).unwrap().0.cols(), 3);
    }

    #[test]
    fn free_variables_and_maximization() {
        // max x  s.t.  x <= -2, x free
        let mut lp = GeneralLp::maximize(ints(&[1]));
        lp.constrain(ints(&[1]), Relation::Le, int(-2)).set_free(0, true);
        assert_eq!(lp.solve().unwrap().value(), Some(&int(-2)));
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let mut lp = GeneralLp::minimize(ints(&[1, 2]));
        lp.constrain(ints(&[1, 1]), Relation::Eq, int(2))
            .constrain(ints(&[2, 2]), Relation::Eq, int(4));
        assert_eq!(lp.solve().unwrap().value(), Some(&int(2)));
    }

    #[test]
    fn dimension_errors() {
        let mut lp = GeneralLp::minimize(ints(&[1, 2]));
        lp.constrain(ints(&[1]), Relation::Eq, int(2));
        assert!(matches!(to_standard_form(&lp), Err(LpError::Dimension(_))));
        let bad = StandardLp {
            a: vec![ints(&[1, 1])],
            b: vec![],
            c: ints(&[1, 1]),
        };
        assert!(matches!(solve(&bad), Err(LpError::Dimension(_))));
    }

    /// Beale's example cycles under the textbook largest-coefficient rule.
    #[test]
    fn bland_rule_terminates_on_degenerate_cycling_example() {
        let q = |n, d| frac(n, d);
        let lp = StandardLp {
            a: vec![
                vec![q(1, 4), int(-8), int(-1), int(9), int(1), int(0), int(0)],
                vec![q(1, 2), int(-12), q(-1, 2), int(3), int(0), int(1), int(0)],
                vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
            ],
            b: ints(&[0, 0, 1]),
            c: vec![q(-3, 4), int(20), q(-1, 2), int(6), int(0), int(0), int(0)],
        };
        assert_eq!(solve(&lp).unwrap().value(), Some(&q(-5, 4)));
    }

    #[test]
    fn json_document() {
        let lp = StandardLp::from_json(r#"{"a": [["1", 1]], "b": ["3/2"], "c": [1, "2"]}"#).unwrap();
        assert_eq!(solve(&lp).unwrap().value(), Some(&frac(3, 2)));
        assert!(StandardLp::from_json(r#"{"a": [[1]], "b": [], "c": [1]}"#).is_err());
    }
}
