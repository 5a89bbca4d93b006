//! Recursive builders that output a verified witness for every target the
//! structure theorems prove realizable, together with a replayable trace.
//!
//! Every constructor re-verifies its output: the witness's exact integer
//! spectrum must equal the target expansion, or it panics (a bug, not an
//! input error). Routes conditioned on open conjectures are present as
//! explicit rejections.

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::graph::{Family, Graph};
use crate::spectrum::integer_spectrum;
use crate::targets::{
    self, all_obstructions, theorem_realizable, SpecTarget, TheoremVerdict,
};

/// One applied rule: which theorem case fired, for which target, and the
/// composition expression it produced.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub rule: String,
    pub target: String,
    pub expression: String,
}

/// Provenance of a constructed witness. Evaluating `expression` through the
/// graph operations reproduces the witness graph exactly.
#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
    pub expression: Expr,
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub target: SpecTarget,
    pub graph: Graph,
    pub trace: ConstructionTrace,
}

impl Construction {
    pub fn expression_string(&self) -> String {
        self.trace.expression.to_string()
    }
}

/// Base witnesses at orders <= 5, where the recursions bottom out.
/// Entries are (i, n, canonical graph6, composition expression); the graph6
/// literals are frozen from an exhaustive search at these orders and a
/// regeneration test in the search module re-derives them.
pub(crate) const SIN_BASE: &[(usize, usize, &str, &str)] = &[
    (1, 1, "@", "K1"),
    (1, 2, "A_", "K2"),
    (2, 3, "BW", "P3"),
    (2, 4, "CN", "K1 v (K1 u K2)"),
    (1, 5, "DNw", "2K1 v (K1 u K2)"),
    (3, 5, "DB{", "K1 v (K1 u P3)"),
];

/// Same, for the doubled targets: (i, j, n, m, canonical graph6, expression).
pub(crate) const SIJM_BASE: &[(usize, usize, usize, usize, &str, &str)] = &[
    (1, 2, 3, 3, "Bw", "K3"),
    (1, 3, 4, 2, "C]", "2K1 v 2K1"),
    (1, 3, 4, 4, "C^", "K2 v 2K1"),
    (2, 3, 4, 1, "CF", "K1 v 3K1"),
    (2, 3, 5, 4, "DJ{", "K1 v (K1 u K3)"),
    (1, 3, 5, 5, "DN{", "K2 v (K1 u K2)"),
    (2, 4, 5, 3, "DK{", "K1 v 2K2"),
    (1, 4, 5, 2, "DFw", "K2,3"),
    (2, 4, 5, 1, "D@{", "K1 v (K2 u 2K1)"),
];

fn k1() -> Expr {
    Expr::family(Family::Complete(1))
}

fn k2() -> Expr {
    Expr::family(Family::Complete(2))
}

fn step(rule: &str, target: &SpecTarget, expression: &Expr) -> TraceStep {
    TraceStep {
        rule: rule.to_string(),
        target: target.label(),
        expression: expression.to_string(),
    }
}

fn reject(t: &SpecTarget) -> Error {
    let obstructions = all_obstructions(t);
    let reasons = if obstructions.is_empty() {
        "ruled out by the structure theorems".to_string()
    } else {
        obstructions
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    Error::NotRealizable {
        target: t.label(),
        reasons,
    }
}

fn finish(target: SpecTarget, expression: Expr, steps: Vec<TraceStep>) -> Result<Construction> {
    let graph = expression.eval()?;
    let spectrum = integer_spectrum(&graph);
    assert_eq!(
        spectrum.as_ref(),
        Some(&target.expand()),
        "constructed witness for {} fails spectral verification",
        target.label()
    );
    assert!(graph.is_connected(), "constructed witness must be connected");
    Ok(Construction {
        target,
        graph,
        trace: ConstructionTrace { steps, expression },
    })
}

/// Witness for the simple target {0,..,n}\{i}.
pub fn construct_sin(i: usize, n: usize) -> Result<Construction> {
    let target = SpecTarget::sin(i, n)?;
    match theorem_realizable(&target) {
        TheoremVerdict::Realizable => {}
        TheoremVerdict::NotRealizable => return Err(reject(&target)),
        TheoremVerdict::Unknown => {
            return Err(Error::ConjectureDependent {
                target: target.label(),
                detail: "existence is open for all-simple targets with i = n".to_string(),
            })
        }
    }
    let (expression, steps) = build_sin(i, n)?;
    finish(target, expression, steps)
}

fn build_sin(i: usize, n: usize) -> Result<(Expr, Vec<TraceStep>)> {
    let target = SpecTarget::sin(i, n)?;
    if n <= 5 {
        let (.., expr_str) = SIN_BASE
            .iter()
            .find(|&&(bi, bn, ..)| (bi, bn) == (i, n))
            .expect("classification guarantees a base entry");
        let expression = expr::parse(expr_str)?;
        let steps = vec![step("base table", &target, &expression)];
        return Ok((expression, steps));
    }
    let (rule, expression, sub_steps) = if i == 1 {
        // 2K1 v (K1 u G1) with G1 realizing the (n-4, n-3) target; the
        // alternative K1 v H needs an all-simple i = n witness and is
        // conjecture-dependent, so it is never taken.
        let (inner, sub) = build_sin(n - 4, n - 3)?;
        (
            "simple i=1: 2K1 ∨ (K1 ∪ G1)",
            Expr::join(Expr::family(Family::Empty(2)), Expr::union(k1(), inner)),
            sub,
        )
    } else if i <= n - 2 {
        let (inner, sub) = build_sin(i - 1, n - 2)?;
        (
            "simple 2<=i<=n-2: K1 ∨ (K1 ∪ H)",
            Expr::join(k1(), Expr::union(k1(), inner)),
            sub,
        )
    } else {
        // i = n-1; the alternative route needs an (n-2, n-2) witness and is
        // conjecture-dependent, so it is never taken.
        let (inner, sub) = build_sin(2, n - 3)?;
        (
            "simple i=n-1: K1 ∨ (K2 ∪ G1)",
            Expr::join(k1(), Expr::union(k2(), inner)),
            sub,
        )
    };
    let mut steps = vec![step(rule, &target, &expression)];
    steps.extend(sub_steps);
    Ok((expression, steps))
}

/// Witness for the doubled target S_{{1,j}_n^n}.
pub fn construct_sijm_m_eq_n(j: usize, n: usize) -> Result<Construction> {
    let target = SpecTarget::sijm(1, j, n, n)?;
    match theorem_realizable(&target) {
        TheoremVerdict::Realizable => {}
        _ => return Err(reject(&target)),
    }
    let (expression, steps) = build_sijm_m_eq_n(j, n)?;
    finish(target, expression, steps)
}

fn build_sijm_m_eq_n(j: usize, n: usize) -> Result<(Expr, Vec<TraceStep>)> {
    let target = SpecTarget::sijm(1, j, n, n)?;
    if n <= 4 {
        let (.., expr_str) = SIJM_BASE
            .iter()
            .find(|&&(bi, bj, bn, bm, ..)| (bi, bj, bn, bm) == (1, j, n, n))
            .expect("classification guarantees a base entry");
        let expression = expr::parse(expr_str)?;
        let steps = vec![step("base table", &target, &expression)];
        return Ok((expression, steps));
    }
    let (rule, expression, sub_steps) = if j == 2 {
        // the alternative K2 v H needs an all-simple i = n witness on n-2
        // vertices and is conjecture-dependent, so it is never taken.
        let (inner, sub) = build_sin(n - 5, n - 4)?;
        (
            "doubled n, j=2: P3 ∨ (K1 ∪ H)",
            Expr::join(Expr::family(Family::Path(3)), Expr::union(k1(), inner)),
            sub,
        )
    } else if j <= n - 2 {
        let (inner, sub) = build_sin(j - 2, n - 3)?;
        (
            "doubled n, 3<=j<=n-2: K2 ∨ (K1 ∪ H)",
            Expr::join(k2(), Expr::union(k1(), inner)),
            sub,
        )
    } else {
        // j = n-1; the alternative K2 v (K1 u H) route is conjecture-dependent.
        let (inner, sub) = build_sin(2, n - 4)?;
        (
            "doubled n, j=n-1: K2 ∨ (K2 ∪ H)",
            Expr::join(k2(), Expr::union(k2(), inner)),
            sub,
        )
    };
    let mut steps = vec![step(rule, &target, &expression)];
    steps.extend(sub_steps);
    Ok((expression, steps))
}

/// Witness for the doubled target S_{{2,j}_n^{n-1}}.
pub fn construct_sijm_m_eq_n_minus_1_i2(j: usize, n: usize) -> Result<Construction> {
    let target = SpecTarget::sijm(2, j, n, n - 1)?;
    match theorem_realizable(&target) {
        TheoremVerdict::Realizable => {}
        TheoremVerdict::NotRealizable => return Err(reject(&target)),
        TheoremVerdict::Unknown => {
            return Err(Error::ConjectureDependent {
                target: target.label(),
                detail: "the j = n case is part of the open j = n conjecture".to_string(),
            })
        }
    }
    let (expression, steps) = build_sijm_i2(j, n)?;
    finish(target, expression, steps)
}

fn build_sijm_i2(j: usize, n: usize) -> Result<(Expr, Vec<TraceStep>)> {
    let target = SpecTarget::sijm(2, j, n, n - 1)?;
    if n <= 5 {
        let (.., expr_str) = SIJM_BASE
            .iter()
            .find(|&&(bi, bj, bn, bm, ..)| (bi, bj, bn, bm) == (2, j, n, n - 1))
            .expect("classification guarantees a base entry");
        let expression = expr::parse(expr_str)?;
        let steps = vec![step("base table", &target, &expression)];
        return Ok((expression, steps));
    }
    let (inner, sub) = build_sijm_m_eq_n(j - 1, n - 2)?;
    let expression = Expr::join(k1(), Expr::union(k1(), inner));
    let mut steps = vec![step("doubled n-1, i=2: K1 ∨ (K1 ∪ H)", &target, &expression)];
    steps.extend(sub);
    Ok((expression, steps))
}

/// Witness for the unique realizable S_{{1,j}_n^{n-1}} at order n >= 6
/// (j = 2 when n = 0,1 mod 4, j = 3 when n = 2,3 mod 4).
pub fn construct_sijm_m_eq_n_minus_1_i1(n: usize) -> Result<Construction> {
    if n < 6 {
        return Err(Error::InvalidTarget(format!(
            "no S_{{{{1,j}}_{n}^{}}} target is realizable below order 6",
            n.saturating_sub(1)
        )));
    }
    let j = targets::i1_m_eq_n_minus_1_admissible_j(n);
    let target = SpecTarget::sijm(1, j, n, n - 1)?;
    let (rule, expression, sub) = if n % 4 <= 1 {
        let (inner, sub) = build_sin(n - 6, n - 4)?;
        (
            "doubled n-1, i=1, j=2: (K1 ∪ K2) ∨ (K1 ∪ H)",
            Expr::join(Expr::union(k1(), k2()), Expr::union(k1(), inner)),
            sub,
        )
    } else {
        // the alternative K1 v F route needs a witness for a doubled target
        // of kind j = n and is conjecture-dependent, so it is never taken.
        let (inner, sub) = build_sijm_m_eq_n(n - 4, n - 3)?;
        (
            "doubled n-1, i=1, j=3: 2K1 ∨ (K1 ∪ H)",
            Expr::join(Expr::family(Family::Empty(2)), Expr::union(k1(), inner)),
            sub,
        )
    };
    let mut steps = vec![step(rule, &target, &expression)];
    steps.extend(sub);
    finish(target, expression, steps)
}

/// Dispatch on the target shape; rejects targets the theorems rule out and
/// reports `Unclassified` where only a search can decide.
pub fn construct(t: &SpecTarget) -> Result<Construction> {
    match *t {
        SpecTarget::Sin { i, n } => construct_sin(i, n),
        SpecTarget::Sijm { i, j, n, m } => {
            if n <= 5 {
                return construct_small_sijm(i, j, n, m);
            }
            if m == n {
                if i == 1 {
                    construct_sijm_m_eq_n(j, n)
                } else {
                    Err(reject(t))
                }
            } else if m + 1 == n && j < n {
                match i {
                    1 => {
                        if j == targets::i1_m_eq_n_minus_1_admissible_j(n) {
                            construct_sijm_m_eq_n_minus_1_i1(n)
                        } else {
                            Err(reject(t))
                        }
                    }
                    2 => construct_sijm_m_eq_n_minus_1_i2(j, n),
                    _ => Err(reject(t)),
                }
            } else if !all_obstructions(t).is_empty() {
                Err(reject(t))
            } else {
                Err(Error::Unclassified { target: t.label() })
            }
        }
    }
}

fn construct_small_sijm(i: usize, j: usize, n: usize, m: usize) -> Result<Construction> {
    let target = SpecTarget::sijm(i, j, n, m)?;
    match SIJM_BASE
        .iter()
        .find(|&&(bi, bj, bn, bm, ..)| (bi, bj, bn, bm) == (i, j, n, m))
    {
        Some((.., expr_str)) => {
            let expression = expr::parse(expr_str)?;
            let steps = vec![step("base table", &target, &expression)];
            finish(target, expression, steps)
        }
        None => Err(reject(&target)),
    }
}

/// The lift K1 ∨ (K1 ∪ g): sends a witness of S_{{i,j}_n^m} to a witness
/// of S_{{i+1,j+1}_{n+2}^{m+1}}.
pub fn lift_join_union(g: &Graph) -> Result<Graph> {
    let k1 = Graph::named(&Family::Complete(1))?;
    Graph::join(&k1, &Graph::disjoint_union(&k1, g)?)
}

/// The cone K1 ∨ g: sends a witness of S_{j,n} to a witness of
/// S_{{1,j+1}_{n+1}^{n+1}}.
pub fn cone(g: &Graph) -> Result<Graph> {
    Graph::join(&Graph::named(&Family::Complete(1))?, g)
}
