//! Binary program for choosing `S_B` optimally, written in LP text format.
//!
//! Rounds `r = 0..=R` (default `R = n`) are unrolled. Per node and round the
//! model carries seven binaries:
//!
//! | name        | meaning                                                     |
//! |-------------|-------------------------------------------------------------|
//! | `A_u_r`     | `u` is final A after round `r`                              |
//! | `B_u_r`     | `u` is final B after round `r`                              |
//! | `T_u_r`     | `u` has been activated by round `r` (`A_u_r + B_u_r`)       |
//! | `T1_u_r`    | A-leaning: A weight `>= theta1`; neutral: total `>= theta1` |
//! | `T2_u_r`    | A-leaning: B weight `>= theta1 + theta2`                    |
//! | `T3_u_r`    | B-leaning: B weight `>= theta1`                             |
//! | `T4_u_r`    | B-leaning: A weight `>= theta1 + theta2`                    |
//!
//! Incoming weights are `K(A, u) = sum_v W(v,u) A_v_{r-1}` and likewise for B.
//! Unused threshold indicators are fixed to zero. Auxiliary binaries
//! `z_<tag>_u_r` linearize the logic:
//!
//! - `z_tmp`: OR of the two threshold indicators of a leaning node,
//! - `z_new`: AND of "inactive before round r" and the temporary condition,
//! - `z_cmp`: comparison indicator (`K(B) >= K(A)` for A-leaning nodes,
//!   `K(A) >= K(B)` for B-leaning and neutral nodes),
//! - `z_sw`: AND of `z_cmp` and the opposing-threshold indicator,
//! - `z_nb` / `z_na`: newly final B (resp. A) nodes.
//!
//! Threshold indicators `y = [e >= c]` on an expression `e` bounded by
//! `[L, U]` use the pair `e - (c - L) y >= L` and `e - (U - c + gap) y <= c - gap`,
//! so `y` is forced both ways; `U` is the node's total incoming weight.
//! ANDs use `z <= x`, `z <= y`, `z >= x + y - 1`.
//!
//! The objective maximizes `sum_{u not in S_A} B_u_R + eps * sum_u A_u_R`
//! with `eps = 1 / (2n)`, so B's spread takes strict priority.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::diffusion::{incoming_weights, reaches, ActivationState, Status, Thresholds};
use crate::error::{Error, Result};
use crate::graph::{NodeId, Tendency, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

/// How many B seeds the budget constraint admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BudgetSense {
    #[default]
    AtMost,
    Exactly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuxVar {
    pub var: usize,
    pub tag: String,
    pub node: NodeId,
    pub round: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MilpConfig {
    /// Largest graph the emitter accepts.
    pub node_cap: usize,
    /// Number of unrolled rounds; `None` means `n`.
    pub horizon: Option<usize>,
    /// Separation used to encode strict `<` in threshold indicators. Must be
    /// smaller than the distance from any threshold to the nearest achievable
    /// incoming-weight sum below it.
    pub strict_gap: f64,
    pub budget: BudgetSense,
}

impl Default for MilpConfig {
    fn default() -> Self {
        MilpConfig {
            node_cap: 200,
            horizon: None,
            strict_gap: 1e-6,
            budget: BudgetSense::AtMost,
        }
    }
}

/// An all-binary linear model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MilpModel {
    pub names: Vec<String>,
    /// Maximized.
    pub objective: Vec<(usize, f64)>,
    pub constraints: Vec<Constraint>,
    pub aux: Vec<AuxVar>,
    pub horizon: usize,
    pub header: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmissionSummary {
    pub variables: usize,
    pub constraints: usize,
    pub auxiliaries: usize,
}

const FAMILIES: [&str; 7] = ["A", "B", "T", "T1", "T2", "T3", "T4"];

#[derive(Default)]
struct Lin(BTreeMap<usize, f64>);

impl Lin {
    fn var(v: usize) -> Self {
        Lin::default().plus(v, 1.0)
    }

    fn plus(mut self, v: usize, c: f64) -> Self {
        *self.0.entry(v).or_insert(0.0) += c;
        self
    }

    fn add(mut self, other: &Lin, scale: f64) -> Self {
        for (&v, &c) in &other.0 {
            *self.0.entry(v).or_insert(0.0) += c * scale;
        }
        self
    }

    fn terms(self) -> Vec<(usize, f64)> {
        self.0.into_iter().filter(|&(_, c)| c != 0.0).collect()
    }
}

/// A 0/1 quantity `constant + sum`, e.g. `1 - A - B`.
struct Literal {
    constant: f64,
    expr: Lin,
}

impl Literal {
    fn var(v: usize) -> Self {
        Literal {
            constant: 0.0,
            expr: Lin::var(v),
        }
    }

    fn not_var(v: usize) -> Self {
        Literal {
            constant: 1.0,
            expr: Lin::default().plus(v, -1.0),
        }
    }
}

struct Builder {
    model: MilpModel,
    index: BTreeMap<String, usize>,
    gap: f64,
}

impl Builder {
    fn declare(&mut self, name: String) -> usize {
        let id = self.model.names.len();
        self.index.insert(name.clone(), id);
        self.model.names.push(name);
        id
    }

    fn id(&self, family: &str, u: NodeId, r: usize) -> usize {
        self.index[&format!("{family}_{u}_{r}")]
    }

    fn aux(&mut self, tag: &str, u: NodeId, r: usize) -> usize {
        let var = self.declare(format!("z_{tag}_{u}_{r}"));
        self.model.aux.push(AuxVar {
            var,
            tag: tag.to_string(),
            node: u,
            round: r,
        });
        var
    }

    fn push(&mut self, name: String, expr: Lin, sense: Sense, rhs: f64) {
        self.model.constraints.push(Constraint {
            name,
            terms: expr.terms(),
            sense,
            rhs,
        });
    }

    fn fix(&mut self, name: String, v: usize, value: f64) {
        self.push(name, Lin::var(v), Sense::Eq, value);
    }

    /// `y = [expr >= c]` for `expr` within `[lo, hi]`.
    fn indicator(&mut self, name: &str, y: usize, expr: &Lin, lo: f64, hi: f64, c: f64) {
        if c <= lo {
            self.fix(format!("{name}_on"), y, 1.0);
        } else if c > hi {
            self.fix(format!("{name}_off"), y, 0.0);
        } else {
            let gap = self.gap.min((c - lo) / 2.0);
            self.push(
                format!("{name}_ge"),
                Lin::default().add(expr, 1.0).plus(y, -(c - lo)),
                Sense::Ge,
                lo,
            );
            self.push(
                format!("{name}_lt"),
                Lin::default().add(expr, 1.0).plus(y, -(hi - c + gap)),
                Sense::Le,
                c - gap,
            );
        }
    }

    /// `z = x AND y` for 0/1 literals.
    fn and(&mut self, name: &str, z: usize, x: Literal, y: Literal) {
        self.push(
            format!("{name}_x"),
            Lin::var(z).add(&x.expr, -1.0),
            Sense::Le,
            x.constant,
        );
        self.push(
            format!("{name}_y"),
            Lin::var(z).add(&y.expr, -1.0),
            Sense::Le,
            y.constant,
        );
        self.push(
            format!("{name}_xy"),
            Lin::var(z).add(&x.expr, -1.0).add(&y.expr, -1.0),
            Sense::Ge,
            x.constant + y.constant - 1.0,
        );
    }

    /// `z = x OR y`.
    fn or(&mut self, name: &str, z: usize, x: usize, y: usize) {
        self.push(format!("{name}_x"), Lin::var(z).plus(x, -1.0), Sense::Ge, 0.0);
        self.push(format!("{name}_y"), Lin::var(z).plus(y, -1.0), Sense::Ge, 0.0);
        self.push(
            format!("{name}_xy"),
            Lin::var(z).plus(x, -1.0).plus(y, -1.0),
            Sense::Le,
            0.0,
        );
    }
}

/// Build the model for choosing at most (or exactly) `k` B seeds against `s_a`.
pub fn build_milp(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    k: usize,
    config: &MilpConfig,
) -> Result<MilpModel> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::Domain("cannot build a model for an empty graph".into()));
    }
    if n > config.node_cap {
        return Err(Error::CapExceeded {
            what: "node count",
            actual: n as u128,
            limit: config.node_cap as u128,
        });
    }
    if !(config.strict_gap > 0.0) {
        return Err(Error::Config(format!("strict gap {} must be positive", config.strict_gap)));
    }
    let mut in_s_a = vec![false; n];
    for &u in s_a {
        if u >= n {
            return Err(Error::Precondition(format!("seed {u} is not a node (n = {n})")));
        }
        in_s_a[u] = true;
    }
    let s_a_count = in_s_a.iter().filter(|&&b| b).count();
    let horizon = config.horizon.unwrap_or(n);
    let (theta1, opposing) = (thresholds.theta1(), thresholds.opposing());

    let header = format!(
        "n={n} m={} |S_A|={s_a_count} k={k} theta1={theta1} theta2={} horizon={horizon} budget={:?}",
        graph.arc_count(),
        thresholds.theta2(),
        config.budget,
    );
    let mut b = Builder {
        model: MilpModel {
            names: Vec::new(),
            objective: Vec::new(),
            constraints: Vec::new(),
            aux: Vec::new(),
            horizon,
            header,
        },
        index: BTreeMap::new(),
        gap: config.strict_gap,
    };

    for r in 0..=horizon {
        for u in 0..n {
            for fam in FAMILIES {
                b.declare(format!("{fam}_{u}_{r}"));
            }
        }
    }

    // Seeds and budgets.
    for u in (0..n).filter(|&u| in_s_a[u]) {
        for r in 0..=horizon {
            let (a, bv) = (b.id("A", u, r), b.id("B", u, r));
            b.fix(format!("seedA_{u}_{r}"), a, 1.0);
            b.fix(format!("seedB_{u}_{r}"), bv, 0.0);
        }
    }
    let sum_a0 = (0..n).fold(Lin::default(), |e, u| e.plus(b.id("A", u, 0), 1.0));
    b.push("budgetA".into(), sum_a0, Sense::Le, s_a_count as f64);
    let sum_b0 = (0..n)
        .filter(|&u| !in_s_a[u])
        .fold(Lin::default(), |e, u| e.plus(b.id("B", u, 0), 1.0));
    let budget_sense = match config.budget {
        BudgetSense::AtMost => Sense::Le,
        BudgetSense::Exactly => Sense::Eq,
    };
    b.push("budgetB".into(), sum_b0, budget_sense, k as f64);
    for u in 0..n {
        let (a, bv, t) = (b.id("A", u, 0), b.id("B", u, 0), b.id("T", u, 0));
        b.push(
            format!("active_{u}_0"),
            Lin::var(t).plus(a, -1.0).plus(bv, -1.0),
            Sense::Eq,
            0.0,
        );
        for fam in ["T1", "T2", "T3", "T4"] {
            let v = b.id(fam, u, 0);
            b.fix(format!("fix{fam}_{u}_0"), v, 0.0);
        }
    }

    for r in 1..=horizon {
        for u in 0..n {
            let p = r - 1;
            let mut k_a = Lin::default();
            let mut k_b = Lin::default();
            for &(v, w) in graph.in_neighbors(u) {
                k_a = k_a.plus(b.id("A", v, p), w);
                k_b = k_b.plus(b.id("B", v, p), w);
            }
            let total_in = graph.in_weight(u);
            let (a_prev, b_prev) = (b.id("A", u, p), b.id("B", u, p));
            let (a_now, b_now, t_now) = (b.id("A", u, r), b.id("B", u, r), b.id("T", u, r));
            let [t1, t2, t3, t4] = ["T1", "T2", "T3", "T4"].map(|f| b.id(f, u, r));
            let inactive = || Literal {
                constant: 1.0,
                expr: Lin::default().plus(a_prev, -1.0).plus(b_prev, -1.0),
            };
            let z_new = b.aux("new", u, r);
            let z_cmp = b.aux("cmp", u, r);

            let tendency = graph.tendency(u);
            // (newly A, newly B) expressed through the new-activation aux.
            let (new_a, new_b) = match tendency {
                Tendency::A | Tendency::B => {
                    let (own, opp, t_own, t_opp, idle) = if tendency == Tendency::A {
                        (&k_a, &k_b, t1, t2, [t3, t4])
                    } else {
                        (&k_b, &k_a, t3, t4, [t1, t2])
                    };
                    b.indicator(&format!("own_{u}_{r}"), t_own, own, 0.0, total_in, theta1);
                    b.indicator(&format!("opp_{u}_{r}"), t_opp, opp, 0.0, total_in, opposing);
                    for v in idle {
                        let name = format!("fix{}", &b.model.names[v]);
                        b.fix(name, v, 0.0);
                    }
                    let z_tmp = b.aux("tmp", u, r);
                    b.or(&format!("tmp_{u}_{r}"), z_tmp, t_own, t_opp);
                    b.and(&format!("new_{u}_{r}"), z_new, inactive(), Literal::var(z_tmp));
                    let diff = Lin::default().add(opp, 1.0).add(own, -1.0);
                    b.indicator(&format!("cmp_{u}_{r}"), z_cmp, &diff, -total_in, total_in, 0.0);
                    let z_sw = b.aux("sw", u, r);
                    b.and(&format!("sw_{u}_{r}"), z_sw, Literal::var(z_cmp), Literal::var(t_opp));
                    if tendency == Tendency::A {
                        let z_nb = b.aux("nb", u, r);
                        b.and(&format!("nb_{u}_{r}"), z_nb, Literal::var(z_new), Literal::var(z_sw));
                        (Lin::var(z_new).plus(z_nb, -1.0), Lin::var(z_nb))
                    } else {
                        let z_na = b.aux("na", u, r);
                        b.and(&format!("na_{u}_{r}"), z_na, Literal::var(z_new), Literal::var(z_sw));
                        (Lin::var(z_na), Lin::var(z_new).plus(z_na, -1.0))
                    }
                }
                Tendency::Neutral => {
                    let both = Lin::default().add(&k_a, 1.0).add(&k_b, 1.0);
                    b.indicator(&format!("tot_{u}_{r}"), t1, &both, 0.0, total_in, theta1);
                    for v in [t2, t3, t4] {
                        let name = format!("fix{}", &b.model.names[v]);
                        b.fix(name, v, 0.0);
                    }
                    b.and(&format!("new_{u}_{r}"), z_new, inactive(), Literal::var(t1));
                    let diff = Lin::default().add(&k_a, 1.0).add(&k_b, -1.0);
                    b.indicator(&format!("cmp_{u}_{r}"), z_cmp, &diff, -total_in, total_in, 0.0);
                    let z_nb = b.aux("nb", u, r);
                    b.and(&format!("nb_{u}_{r}"), z_nb, Literal::var(z_new), Literal::not_var(z_cmp));
                    (Lin::var(z_new).plus(z_nb, -1.0), Lin::var(z_nb))
                }
            };

            b.push(
                format!("stepA_{u}_{r}"),
                Lin::var(a_now).plus(a_prev, -1.0).add(&new_a, -1.0),
                Sense::Eq,
                0.0,
            );
            b.push(
                format!("stepB_{u}_{r}"),
                Lin::var(b_now).plus(b_prev, -1.0).add(&new_b, -1.0),
                Sense::Eq,
                0.0,
            );
            b.push(
                format!("active_{u}_{r}"),
                Lin::var(t_now).plus(a_now, -1.0).plus(b_now, -1.0),
                Sense::Eq,
                0.0,
            );
        }
    }

    let eps = 1.0 / (2.0 * n as f64);
    let mut objective = Lin::default();
    for u in 0..n {
        if !in_s_a[u] {
            objective = objective.plus(b.id("B", u, horizon), 1.0);
        }
        objective = objective.plus(b.id("A", u, horizon), eps);
    }
    b.model.objective = objective.terms();
    Ok(b.model)
}

fn fmt_coef(c: f64) -> String {
    format!("{c}")
}

fn write_terms(out: &mut String, names: &[String], terms: &[(usize, f64)]) {
    for (i, &(v, c)) in terms.iter().enumerate() {
        if i > 0 && i % 8 == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0.0 { "-" } else { "+" };
        let mag = c.abs();
        if i == 0 && sign == "+" {
            if mag == 1.0 {
                let _ = write!(out, " {}", names[v]);
            } else {
                let _ = write!(out, " {} {}", fmt_coef(mag), names[v]);
            }
        } else if mag == 1.0 {
            let _ = write!(out, " {sign} {}", names[v]);
        } else {
            let _ = write!(out, " {sign} {} {}", fmt_coef(mag), names[v]);
        }
    }
}

impl MilpModel {
    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    pub fn summary(&self) -> EmissionSummary {
        EmissionSummary {
            variables: self.names.len(),
            constraints: self.constraints.len(),
            auxiliaries: self.aux.len(),
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Render the model in LP text format.
    pub fn to_lp_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "\\ UDCIM seed selection model");
        let _ = writeln!(out, "\\ {}", self.header);
        out.push_str("Maximize\n obj:");
        write_terms(&mut out, &self.names, &self.objective);
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let _ = write!(out, " {}:", c.name);
            write_terms(&mut out, &self.names, &c.terms);
            let _ = writeln!(out, " {} {}", c.sense.symbol(), fmt_coef(c.rhs));
        }
        out.push_str("Binary\n");
        for chunk in self.names.chunks(10) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
        out.push_str("End\n");
        out
    }

    pub fn write_lp<W: Write>(&self, mut out: W) -> Result<EmissionSummary> {
        out.write_all(self.to_lp_string().as_bytes())?;
        Ok(self.summary())
    }

    /// Check an assignment (indexed like `names`) against every constraint.
    /// Returns the names of violated constraints.
    pub fn violations(&self, values: &[bool], tol: f64) -> Vec<&str> {
        self.constraints
            .iter()
            .filter(|c| {
                let lhs: f64 = c
                    .terms
                    .iter()
                    .map(|&(v, a)| if values[v] { a } else { 0.0 })
                    .sum();
                match c.sense {
                    Sense::Le => lhs > c.rhs + tol,
                    Sense::Ge => lhs < c.rhs - tol,
                    Sense::Eq => (lhs - c.rhs).abs() > tol,
                }
            })
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Build the model and write it to `out`.
pub fn emit_milp<W: Write>(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    k: usize,
    config: &MilpConfig,
    out: W,
) -> Result<EmissionSummary> {
    build_milp(graph, thresholds, s_a, k, config)?.write_lp(out)
}

/// Values of every model variable implied by a diffusion trace
/// (`trace[r]` is the state after round `r`; later rounds repeat the last state).
/// Computed directly from the diffusion rules, not from the constraints.
pub fn induced_assignment(
    model: &MilpModel,
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    trace: &[ActivationState],
) -> BTreeMap<String, bool> {
    let n = graph.node_count();
    let state_at = |r: usize| &trace[r.min(trace.len() - 1)];
    let mut values = BTreeMap::new();
    let (theta1, opposing) = (thresholds.theta1(), thresholds.opposing());
    for r in 0..=model.horizon {
        let now = state_at(r);
        for u in 0..n {
            let s = now.get(u);
            values.insert(format!("A_{u}_{r}"), s == Status::FinalA);
            values.insert(format!("B_{u}_{r}"), s == Status::FinalB);
            values.insert(format!("T_{u}_{r}"), s.is_final());
            let mut t = [false; 4];
            if r > 0 {
                let prev = state_at(r - 1);
                let (ka, kb) = incoming_weights(graph, prev, u);
                let was_inactive = !prev.get(u).is_final();
                let tendency = graph.tendency(u);
                let (tmp, cmp, sw);
                match tendency {
                    Tendency::A => {
                        t[0] = reaches(ka, theta1);
                        t[1] = reaches(kb, opposing);
                        tmp = t[0] || t[1];
                        cmp = reaches(kb, ka);
                        sw = cmp && t[1];
                    }
                    Tendency::B => {
                        t[2] = reaches(kb, theta1);
                        t[3] = reaches(ka, opposing);
                        tmp = t[2] || t[3];
                        cmp = reaches(ka, kb);
                        sw = cmp && t[3];
                    }
                    Tendency::Neutral => {
                        t[0] = reaches(ka + kb, theta1);
                        tmp = t[0];
                        cmp = reaches(ka, kb);
                        sw = false;
                    }
                }
                let new = was_inactive && tmp;
                values.insert(format!("z_new_{u}_{r}"), new);
                values.insert(format!("z_cmp_{u}_{r}"), cmp);
                match tendency {
                    Tendency::A => {
                        values.insert(format!("z_tmp_{u}_{r}"), tmp);
                        values.insert(format!("z_sw_{u}_{r}"), sw);
                        values.insert(format!("z_nb_{u}_{r}"), new && sw);
                    }
                    Tendency::B => {
                        values.insert(format!("z_tmp_{u}_{r}"), tmp);
                        values.insert(format!("z_sw_{u}_{r}"), sw);
                        values.insert(format!("z_na_{u}_{r}"), new && sw);
                    }
                    Tendency::Neutral => {
                        values.insert(format!("z_nb_{u}_{r}"), new && !cmp);
                    }
                }
            }
            for (i, fam) in ["T1", "T2", "T3", "T4"].iter().enumerate() {
                values.insert(format!("{fam}_{u}_{r}"), t[i]);
            }
        }
    }
    values
}
