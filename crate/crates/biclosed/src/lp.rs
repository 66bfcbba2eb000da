//! Exact linear-programming feasibility by Fourier–Motzkin elimination.
//!
//! Every system here is of the form `A·θ ≥ b` over an ordered field, with
//! few variables (the linear rank of a root system, ≤ 8) and modestly many
//! rows. Elimination keeps, for every derived row, the nonnegative
//! combination of original rows that produced it, so an infeasible system
//! yields a Farkas witness `y ≥ 0` with `yᵀA = 0` and `yᵀb > 0` — and a
//! feasible one yields a concrete point by back-substitution. Both outcomes
//! are therefore self-certifying and re-verified exactly.
//!
//! Strict inequalities enter through the margin-1 normalization: the systems
//! are homogeneous in θ, so `⟨θ, β⟩ > 0` is feasible iff `⟨θ, β⟩ ≥ 1` is.

use std::collections::HashMap;

use crate::exactnum::Scalar;

/// One row `coeffs · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub rhs: S,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(coeffs: Vec<S>, rhs: S) -> Self {
        Constraint { coeffs, rhs }
    }

    pub fn eval(&self, point: &[S]) -> S {
        dot(&self.coeffs, point)
    }

    pub fn satisfied_by(&self, point: &[S]) -> bool {
        !(self.eval(point) < self.rhs)
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Nonnegative multipliers over original rows combining to `0 ≥ positive`.
#[derive(Clone, Debug)]
pub struct FarkasWitness<S> {
    pub multipliers: Vec<(usize, S)>,
}

impl<S: Scalar> FarkasWitness<S> {
    /// Exact check: multipliers are nonnegative, the combined coefficient
    /// vector vanishes, and the combined right-hand side is positive.
    pub fn verify(&self, dim: usize, rows: &[Constraint<S>]) -> bool {
        let mut combined = vec![S::zero(); dim];
        let mut rhs = S::zero();
        for (idx, y) in &self.multipliers {
            if y.is_negative() {
                return false;
            }
            let row = &rows[*idx];
            for (c, rc) in combined.iter_mut().zip(&row.coeffs) {
                *c = c.clone() + y.clone() * rc.clone();
            }
            rhs = rhs + y.clone() * row.rhs.clone();
        }
        combined.iter().all(|c| c.is_zero()) && rhs.is_positive()
    }
}

#[derive(Clone, Debug)]
pub enum LpResult<S> {
    Feasible(Vec<S>),
    Infeasible(FarkasWitness<S>),
}

impl<S> LpResult<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpResult::Feasible(_))
    }
}

#[derive(Clone, Debug)]
struct Row<S> {
    coeffs: Vec<S>,
    rhs: S,
    /// Provenance: this row equals Σ combo·(original rows), all multipliers ≥ 0.
    combo: Vec<(usize, S)>,
}

impl<S: Scalar> Row<S> {
    fn scale(&mut self, by: &S) {
        debug_assert!(by.is_positive());
        for c in &mut self.coeffs {
            *c = c.clone() * by.clone();
        }
        self.rhs = self.rhs.clone() * by.clone();
        for (_, y) in &mut self.combo {
            *y = y.clone() * by.clone();
        }
    }

    /// Divide through by the leading coefficient's magnitude so that equal
    /// halfspaces become identical rows.
    fn normalize(&mut self) {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()) {
            let inv = lead.abs();
            for c in &mut self.coeffs {
                *c = c.clone() / inv.clone();
            }
            self.rhs = self.rhs.clone() / inv.clone();
            for (_, y) in &mut self.combo {
                *y = y.clone() / inv.clone();
            }
        }
    }
}

fn merge_combos<S: Scalar>(
    a: &[(usize, S)],
    sa: &S,
    b: &[(usize, S)],
    sb: &S,
) -> Vec<(usize, S)> {
    let mut out: Vec<(usize, S)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push((a[i].0, a[i].1.clone() * sa.clone()));
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.clone() * sb.clone()));
            j += 1;
        } else {
            out.push((a[i].0, a[i].1.clone() * sa.clone() + b[j].1.clone() * sb.clone()));
            i += 1;
            j += 1;
        }
    }
    out
}

/// Decide feasibility of `rows · x ≥ rhs` over `dim` variables.
pub fn solve<S: Scalar>(dim: usize, constraints: &[Constraint<S>]) -> LpResult<S> {
    let mut rows: Vec<Row<S>> = Vec::with_capacity(constraints.len());
    for (i, c) in constraints.iter().enumerate() {
        debug_assert_eq!(c.coeffs.len(), dim);
        let mut row = Row { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), combo: vec![(i, S::one())] };
        row.normalize();
        rows.push(row);
    }

    // snapshot of the rows touching each eliminated variable, for back-substitution
    let mut levels: Vec<(usize, Vec<Row<S>>)> = Vec::with_capacity(dim);
    let mut remaining: Vec<usize> = (0..dim).collect();

    loop {
        // Trivial rows: all-zero coefficients decide or disappear.
        let mut kept = Vec::with_capacity(rows.len());
        for row in rows {
            if row.coeffs.iter().all(|c| c.is_zero()) {
                if row.rhs.is_positive() {
                    return LpResult::Infeasible(FarkasWitness { multipliers: row.combo });
                }
            } else {
                kept.push(row);
            }
        }
        rows = kept;

        // Dominance dedup: identical normalized coefficients keep the largest rhs.
        let mut best: HashMap<Vec<S>, usize> = HashMap::new();
        let mut deduped: Vec<Row<S>> = Vec::with_capacity(rows.len());
        for row in rows {
            match best.get(&row.coeffs) {
                Some(&at) if deduped[at].rhs >= row.rhs => {}
                Some(&at) => deduped[at] = row,
                None => {
                    best.insert(row.coeffs.clone(), deduped.len());
                    deduped.push(row);
                }
            }
        }
        rows = deduped;

        if remaining.is_empty() {
            break;
        }

        // Fewest-products heuristic: eliminate the variable minimizing
        // (#lower bounds) × (#upper bounds); ties go to the smallest index.
        let var = *remaining
            .iter()
            .min_by_key(|&&v| {
                let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (pos * neg, v)
            })
            .expect("remaining is nonempty");
        remaining.retain(|&v| v != var);

        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for row in rows {
            match row.coeffs[var].sign() {
                crate::exactnum::Sign::Pos => pos.push(row),
                crate::exactnum::Sign::Neg => neg.push(row),
                crate::exactnum::Sign::Zero => rest.push(row),
            }
        }

        let eliminated_so_far = levels.len();
        let mut touching = pos.clone();
        touching.extend(neg.iter().cloned());

        for p in &pos {
            for n in &neg {
                let sp = -n.coeffs[var].clone(); // > 0
                let sn = p.coeffs[var].clone(); // > 0
                let mut coeffs = Vec::with_capacity(p.coeffs.len());
                for (pc, nc) in p.coeffs.iter().zip(&n.coeffs) {
                    coeffs.push(pc.clone() * sp.clone() + nc.clone() * sn.clone());
                }
                debug_assert!(coeffs[var].is_zero());
                let rhs = p.rhs.clone() * sp.clone() + n.rhs.clone() * sn.clone();
                let combo = merge_combos(&p.combo, &sp, &n.combo, &sn);
                // Imbert's acceleration: a derived row drawing on more than
                // k+1 original rows after k eliminations is redundant.
                if combo.len() > eliminated_so_far + 2 {
                    continue;
                }
                let mut row = Row { coeffs, rhs, combo };
                row.normalize();
                rest.push(row);
            }
        }

        levels.push((var, touching));
        rows = rest;
    }

    // Feasible: walk the elimination stack backwards, assigning each variable
    // the midpoint of its interval (or bound ± 1 on rays).
    let mut point = vec![S::zero(); dim];
    let mut assigned = vec![false; dim];
    for (var, level_rows) in levels.iter().rev() {
        let mut lower: Option<S> = None; // x ≥ lower
        let mut upper: Option<S> = None; // x ≤ upper
        for row in level_rows {
            let c = &row.coeffs[*var];
            debug_assert!(!c.is_zero());
            let mut residual = row.rhs.clone();
            for (j, cj) in row.coeffs.iter().enumerate() {
                if j != *var && !cj.is_zero() {
                    debug_assert!(assigned[j], "back-substitution ordering violated");
                    residual = residual - cj.clone() * point[j].clone();
                }
            }
            let bound = residual / c.clone();
            if c.is_positive() {
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        point[*var] = match (lower, upper) {
            (Some(l), Some(u)) => {
                debug_assert!(l <= u, "feasible system produced empty interval");
                (l + u) / S::from_int(2)
            }
            (Some(l), None) => l + S::one(),
            (None, Some(u)) => u - S::one(),
            (None, None) => S::zero(),
        };
        assigned[*var] = true;
    }

    debug_assert!(
        constraints.iter().all(|c| c.satisfied_by(&point)),
        "back-substituted point violates an original row"
    );
    LpResult::Feasible(point)
}

/// Exact membership of `target` in the nonnegative span of `generators`.
///
/// Decided through the dual: the cone misses `target` iff some functional θ
/// is nonnegative on every generator and strictly negative on `target`
/// (Farkas). On membership the witness multipliers convert directly into the
/// cone coefficients, which are re-verified before returning.
pub fn cone_membership<S: Scalar>(
    dim: usize,
    generators: &[Vec<S>],
    target: &[S],
) -> Option<Vec<(usize, S)>> {
    let mut rows: Vec<Constraint<S>> = Vec::with_capacity(generators.len() + 1);
    for g in generators {
        rows.push(Constraint::new(g.clone(), S::zero()));
    }
    rows.push(Constraint::new(
        target.iter().map(|c| -c.clone()).collect(),
        S::one(),
    ));
    match solve(dim, &rows) {
        LpResult::Feasible(_) => None,
        LpResult::Infeasible(witness) => {
            let target_row = generators.len();
            let scale = witness
                .multipliers
                .iter()
                .find(|(i, _)| *i == target_row)
                .map(|(_, y)| y.clone())
                .expect("witness must involve the strict row");
            debug_assert!(scale.is_positive());
            let coeffs: Vec<(usize, S)> = witness
                .multipliers
                .iter()
                .filter(|(i, _)| *i != target_row)
                .map(|(i, y)| (*i, y.clone() / scale.clone()))
                .collect();
            // re-verify: Σ cᵢ·gᵢ = target, cᵢ ≥ 0
            let mut sum = vec![S::zero(); dim];
            for (i, c) in &coeffs {
                assert!(!c.is_negative());
                for (s, gc) in sum.iter_mut().zip(&generators[*i]) {
                    *s = s.clone() + c.clone() * gc.clone();
                }
            }
            assert!(
                sum.iter().zip(target).all(|(s, t)| s == t),
                "cone coefficients failed exact re-verification"
            );
            Some(coeffs)
        }
    }
}
