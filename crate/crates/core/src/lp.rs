//! Exact two-phase simplex method on rational data.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, ties in the
//! ratio test broken by the lowest basic index), so every run terminates and
//! is fully deterministic. Each outcome carries a certificate that the
//! `verify_*` helpers re-check from scratch.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{rational_vec_serde, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarKind {
    NonNeg,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(with = "rational_vec_serde")]
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    #[serde(with = "crate::scalar::rational_serde")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub vars: Vec<VarKind>,
    pub constraints: Vec<Constraint>,
    #[serde(with = "rational_vec_serde")]
    pub objective: Vec<Rational>,
    pub sense: Sense,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// One multiplier per constraint; see [`verify_dual`] for sign conventions.
    pub duals: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// Farkas multipliers `y` proving that no feasible point exists.
    Infeasible(Vec<Rational>),
    /// A feasible point and a direction along which the objective improves without bound.
    Unbounded { point: Vec<Rational>, direction: Vec<Rational> },
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible(_))
    }
}

impl LinearProgram {
    pub fn new(vars: Vec<VarKind>, sense: Sense, objective: Vec<Rational>) -> Self {
        assert_eq!(vars.len(), objective.len());
        LinearProgram { vars, constraints: Vec::new(), objective, sense }
    }

    /// Pure feasibility problem with a zero objective.
    pub fn feasibility(vars: Vec<VarKind>) -> Self {
        let n = vars.len();
        LinearProgram::new(vars, Sense::Minimize, vec![Rational::zero(); n])
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.vars.len());
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        lp_solve(self)
    }
}

fn lhs(c: &Constraint, x: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, v) in c.coeffs.iter().zip(x) {
        if !a.is_zero() && !v.is_zero() {
            acc += a * v;
        }
    }
    acc
}

/// Exact primal feasibility check.
pub fn verify_feasible(lp: &LinearProgram, x: &[Rational]) -> bool {
    if x.len() != lp.num_vars() {
        return false;
    }
    let signs_ok = lp.vars.iter().zip(x).all(|(k, v)| *k == VarKind::Free || !v.is_negative());
    signs_ok
        && lp.constraints.iter().all(|c| {
            let l = lhs(c, x);
            match c.rel {
                Relation::Le => l <= c.rhs,
                Relation::Ge => l >= c.rhs,
                Relation::Eq => l == c.rhs,
            }
        })
}

fn combined_columns(lp: &LinearProgram, y: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); lp.num_vars()];
    for (c, w) in lp.constraints.iter().zip(y) {
        if w.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(&c.coeffs) {
            if !a.is_zero() {
                *o += w * a;
            }
        }
    }
    out
}

/// Checks a Farkas certificate: `Σ yᵢaᵢ` is ≤ 0 on non-negative variables and 0 on
/// free ones, `yᵢ ≤ 0` on `≤` rows, `yᵢ ≥ 0` on `≥` rows, and `Σ yᵢbᵢ > 0`.
pub fn verify_farkas(lp: &LinearProgram, y: &[Rational]) -> bool {
    if y.len() != lp.constraints.len() {
        return false;
    }
    let rows_ok = lp.constraints.iter().zip(y).all(|(c, w)| match c.rel {
        Relation::Le => !w.is_positive(),
        Relation::Ge => !w.is_negative(),
        Relation::Eq => true,
    });
    let cols = combined_columns(lp, y);
    let cols_ok = lp.vars.iter().zip(&cols).all(|(k, v)| match k {
        VarKind::NonNeg => !v.is_positive(),
        VarKind::Free => v.is_zero(),
    });
    let rhs: Rational = lp.constraints.iter().zip(y).map(|(c, w)| w * &c.rhs).sum();
    rows_ok && cols_ok && rhs.is_positive()
}

/// Checks dual feasibility of `y` and that its value equals `value`.
///
/// For minimization: reduced costs `c − Aᵀy` are ≥ 0 on non-negative variables and 0 on
/// free ones, `y ≤ 0` on `≤` rows and `y ≥ 0` on `≥` rows. Maximization flips every sign.
pub fn verify_dual(lp: &LinearProgram, y: &[Rational], value: &Rational) -> bool {
    if y.len() != lp.constraints.len() {
        return false;
    }
    let flip = lp.sense == Sense::Maximize;
    let cols = combined_columns(lp, y);
    let cols_ok = lp.vars.iter().zip(lp.objective.iter().zip(&cols)).all(|(k, (c, a))| {
        let r = c - a;
        let r = if flip { -r } else { r };
        match k {
            VarKind::NonNeg => !r.is_negative(),
            VarKind::Free => r.is_zero(),
        }
    });
    let rows_ok = lp.constraints.iter().zip(y).all(|(c, w)| {
        let w = if flip { -w.clone() } else { w.clone() };
        match c.rel {
            Relation::Le => !w.is_positive(),
            Relation::Ge => !w.is_negative(),
            Relation::Eq => true,
        }
    });
    let dual_value: Rational = lp.constraints.iter().zip(y).map(|(c, w)| w * &c.rhs).sum();
    cols_ok && rows_ok && &dual_value == value
}

/// Checks an unboundedness certificate.
pub fn verify_ray(lp: &LinearProgram, point: &[Rational], direction: &[Rational]) -> bool {
    if !verify_feasible(lp, point) || direction.len() != lp.num_vars() {
        return false;
    }
    let signs_ok = lp
        .vars
        .iter()
        .zip(direction)
        .all(|(k, v)| *k == VarKind::Free || !v.is_negative());
    let rows_ok = lp.constraints.iter().all(|c| {
        let l = lhs(c, direction);
        match c.rel {
            Relation::Le => !l.is_positive(),
            Relation::Ge => !l.is_negative(),
            Relation::Eq => l.is_zero(),
        }
    });
    let gain: Rational = lp.objective.iter().zip(direction).map(|(c, d)| c * d).sum();
    let improving = match lp.sense {
        Sense::Minimize => gain.is_negative(),
        Sense::Maximize => gain.is_positive(),
    };
    signs_ok && rows_ok && improving
}

struct Tableau {
    /// rows × (cols + 1); the last entry is the right-hand side.
    t: Vec<Vec<Rational>>,
    /// Reduced-cost row (length cols + 1; last entry is minus the objective value).
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let inv = Rational::one() / &self.t[r][e];
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let prow = std::mem::take(&mut self.t[r]);
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                row[j] -= d;
            }
        }
        if !self.obj[e].is_zero() {
            let f = self.obj[e].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.obj[j] -= d;
            }
        }
        self.t[r] = prow;
        self.basis[r] = e;
    }

    fn reset_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.t.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o -= cb * v;
                }
            }
        }
        self.obj = obj;
    }

    /// Runs Bland-rule pivots to optimality. Returns the unbounded entering column, if any.
    fn optimize(&mut self) -> Option<usize> {
        loop {
            let entering = (0..self.cols).find(|&j| self.allowed[j] && self.obj[j].is_negative());
            let Some(e) = entering else {
                return None;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[e];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Some(e),
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }
}

/// Solves a linear program exactly.
pub fn lp_solve(lp: &LinearProgram) -> LpOutcome {
    let nrows = lp.constraints.len();
    // Standard-form columns: original variables (free ones split), then slacks, then artificials.
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::new();
    let mut ncols = 0;
    for k in &lp.vars {
        match k {
            VarKind::NonNeg => {
                col_of.push((ncols, None));
                ncols += 1;
            }
            VarKind::Free => {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
    }
    let mut slack_of = vec![None; nrows];
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.rel != Relation::Eq {
            slack_of[i] = Some(ncols);
            ncols += 1;
        }
    }
    let struct_cols = ncols;
    let art0 = ncols;
    let total = ncols + nrows;

    let mut signs = vec![Rational::one(); nrows];
    let mut t = vec![vec![Rational::zero(); total + 1]; nrows];
    for (i, c) in lp.constraints.iter().enumerate() {
        let row = &mut t[i];
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (p, m) = col_of[j];
            row[p] = a.clone();
            if let Some(m) = m {
                row[m] = -a.clone();
            }
        }
        if let Some(s) = slack_of[i] {
            row[s] = if c.rel == Relation::Le { Rational::one() } else { -Rational::one() };
        }
        row[total] = c.rhs.clone();
        if c.rhs.is_negative() {
            signs[i] = -Rational::one();
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = -v.clone();
                }
            }
        }
        row[art0 + i] = Rational::one();
    }

    let mut tab = Tableau {
        t,
        obj: Vec::new(),
        basis: (0..nrows).map(|i| art0 + i).collect(),
        cols: total,
        allowed: (0..total).map(|j| j < struct_cols).collect(),
    };

    // Phase 1.
    let mut cost1 = vec![Rational::zero(); total];
    for c in cost1.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    tab.reset_objective(&cost1);
    tab.optimize();
    let phase1_value = -tab.obj[total].clone();
    if phase1_value.is_positive() {
        let y: Vec<Rational> = (0..nrows)
            .map(|i| {
                let ystd: Rational = (0..nrows)
                    .filter(|&k| !tab.t[k][art0 + i].is_zero())
                    .map(|k| &cost1[tab.basis[k]] * &tab.t[k][art0 + i])
                    .sum();
                &signs[i] * ystd
            })
            .collect();
        return LpOutcome::Infeasible(y);
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..nrows {
        if tab.basis[r] >= art0 {
            if let Some(e) = (0..struct_cols).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, e);
            }
        }
    }

    // Phase 2.
    let flip = lp.sense == Sense::Maximize;
    let mut cost2 = vec![Rational::zero(); total];
    for (j, c) in lp.objective.iter().enumerate() {
        let c = if flip { -c.clone() } else { c.clone() };
        let (p, m) = col_of[j];
        if let Some(m) = m {
            cost2[m] = -c.clone();
        }
        cost2[p] = c;
    }
    tab.reset_objective(&cost2);
    let unbounded = tab.optimize();

    let mut xstd = vec![Rational::zero(); total];
    for (row, &b) in tab.t.iter().zip(&tab.basis) {
        xstd[b] = row[total].clone();
    }
    let to_orig = |v: &[Rational]| -> Vec<Rational> {
        col_of
            .iter()
            .map(|&(p, m)| match m {
                Some(m) => &v[p] - &v[m],
                None => v[p].clone(),
            })
            .collect()
    };
    let x = to_orig(&xstd);

    if let Some(e) = unbounded {
        let mut d = vec![Rational::zero(); total];
        d[e] = Rational::one();
        for (row, &b) in tab.t.iter().zip(&tab.basis) {
            if !row[e].is_zero() {
                d[b] = -row[e].clone();
            }
        }
        return LpOutcome::Unbounded { point: x, direction: to_orig(&d) };
    }

    let min_value = -tab.obj[total].clone();
    let duals: Vec<Rational> = (0..nrows)
        .map(|i| {
            let ystd: Rational = (0..nrows)
                .filter(|&k| !tab.t[k][art0 + i].is_zero())
                .map(|k| &cost2[tab.basis[k]] * &tab.t[k][art0 + i])
                .sum();
            let y = &signs[i] * ystd;
            if flip {
                -y
            } else {
                y
            }
        })
        .collect();
    let value = if flip { -min_value } else { min_value };
    LpOutcome::Optimal(LpSolution { value, x, duals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn q(n: i64) -> Rational {
        rat_int(n)
    }

    #[test]
    fn minimize_with_lower_bound() {
        let mut lp = LinearProgram::new(vec![VarKind::Free], Sense::Minimize, vec![q(1)]);
        lp.add(vec![q(1)], Relation::Ge, q(3));
        let sol = lp.solve().optimal().unwrap();
        assert_eq!(sol.value, q(3));
        assert_eq!(sol.x, vec![q(3)]);
        assert!(verify_dual(&lp, &sol.duals, &sol.value));
    }

    #[test]
    fn unbounded_maximization() {
        let mut lp = LinearProgram::new(vec![VarKind::NonNeg], Sense::Maximize, vec![q(1)]);
        lp.add(vec![q(1)], Relation::Ge, q(0));
        match lp.solve() {
            LpOutcome::Unbounded { point, direction } => assert!(verify_ray(&lp, &point, &direction)),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        let mut lp = LinearProgram::feasibility(vec![VarKind::NonNeg, VarKind::Free]);
        lp.add(vec![q(1), q(1)], Relation::Le, q(1));
        lp.add(vec![q(1), q(1)], Relation::Ge, q(2));
        match lp.solve() {
            LpOutcome::Infeasible(y) => assert!(verify_farkas(&lp, &y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn small_production_problem() {
        // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3
        let mut lp = LinearProgram::new(vec![VarKind::NonNeg; 2], Sense::Maximize, vec![q(3), q(2)]);
        lp.add(vec![q(1), q(1)], Relation::Le, q(4));
        lp.add(vec![q(1), q(3)], Relation::Le, q(6));
        lp.add(vec![q(1), q(0)], Relation::Le, q(3));
        let sol = lp.solve().optimal().unwrap();
        assert_eq!(sol.value, q(11));
        assert!(verify_feasible(&lp, &sol.x));
        assert!(verify_dual(&lp, &sol.duals, &sol.value));
    }

    #[test]
    fn degenerate_redundant_equalities() {
        let mut lp = LinearProgram::new(vec![VarKind::NonNeg; 3], Sense::Minimize, vec![q(1), q(2), q(3)]);
        lp.add(vec![q(1), q(1), q(1)], Relation::Eq, q(1));
        lp.add(vec![q(2), q(2), q(2)], Relation::Eq, q(2));
        lp.add(vec![q(1), q(-1), q(0)], Relation::Eq, rat(1, 2));
        let sol = lp.solve().optimal().unwrap();
        assert_eq!(sol.value, rat(5, 4));
        assert!(verify_feasible(&lp, &sol.x));
        assert!(verify_dual(&lp, &sol.duals, &sol.value));
    }
}
