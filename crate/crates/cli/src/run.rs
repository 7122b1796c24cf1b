//! Query execution and report rendering.

use arcsub_core::arith::rational::fmt_exponent;
use arcsub_core::geometry::{is_singular_at, slice_branches, verify_arc_on_variety};
use arcsub_core::puiseux::newton_puiseux_with;
use arcsub_core::substitution::{
    arc_limit, discontinuity_witness, lift_arc, lojasiewicz_probe, point_lift, rational_along_arc,
    zero_containment_evidence, AlongArc, Containment, Side,
};
use arcsub_core::{
    Arc, Branch, Error, Exponent, Limit, MultiPoly, NewtonOptions, Order, RealAlgebraic, Relation,
    SliceSpec, Variety, WitnessOptions, WitnessOutcome,
};
use serde_json::{json, Value};

use crate::syntax::{ArcRef, Item, Query, RelRef, Session, Setting};

/// Version tag of the machine-readable records.
pub const SCHEMA: &str = "arcsub-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub order: i64,
    pub budget: usize,
    pub tower_depth: usize,
    /// Witness search threads; `0` uses the global pool.
    pub workers: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order: 16,
            budget: 20,
            tower_depth: 3,
            workers: 0,
        }
    }
}

impl Options {
    fn newton(&self) -> NewtonOptions {
        NewtonOptions {
            order: Exponent::from_integer(self.order),
            tower_depth: self.tower_depth,
        }
    }
}

/// One query's result.
#[derive(Clone, Debug)]
pub struct Block {
    pub index: usize,
    pub echo: String,
    pub lines: Vec<String>,
    pub ok: bool,
    pub result: Value,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub blocks: Vec<Block>,
}

impl Report {
    pub fn any_error(&self) -> bool {
        self.blocks.iter().any(|b| !b.ok)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            out.push_str(&format!("[{}] {}\n", b.index, b.echo));
            for l in &b.lines {
                out.push_str(&format!("  {l}\n"));
            }
            out.push('\n');
        }
        out
    }

    /// One JSON record per block, each carrying its text lines as well.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            let rec = json!({
                "schema": SCHEMA,
                "index": b.index,
                "query": b.echo,
                "status": if b.ok { "ok" } else { "error" },
                "result": b.result,
                "text": b.lines,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out
    }
}

struct Out {
    lines: Vec<String>,
    result: Value,
}

impl Out {
    fn new(kind: &str) -> Self {
        Out {
            lines: Vec::new(),
            result: json!({ "kind": kind }),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn set(&mut self, key: &str, v: Value) {
        self.result[key] = v;
    }
}

/// Execute every query in order; a failing query only affects its own block.
pub fn run_session(s: &Session, base: Options) -> Report {
    let variety = Variety::new(s.vars.clone(), s.variety.clone()).expect("parser checks arities");
    let mut opts = base;
    let mut report = Report::default();
    for item in &s.items {
        let q = match item {
            Item::Set(Setting::Order(n)) => {
                opts.order = *n;
                continue;
            }
            Item::Set(Setting::Budget(k)) => {
                opts.budget = *k;
                continue;
            }
            Item::Set(Setting::TowerDepth(d)) => {
                opts.tower_depth = *d;
                continue;
            }
            Item::Query(q) => q,
            _ => continue,
        };
        let index = report.blocks.len() + 1;
        let echo = s.fmt_query(q);
        let block = match run_query(s, &variety, q, opts) {
            Ok(out) => Block {
                index,
                echo,
                lines: out.lines,
                ok: true,
                result: out.result,
            },
            Err(e) => Block {
                index,
                echo,
                lines: vec![format!("error: {e}")],
                ok: false,
                result: json!({ "kind": "error", "message": e.to_string() }),
            },
        };
        report.blocks.push(block);
    }
    report
}

fn resolve_arc(s: &Session, a: &ArcRef) -> Result<Arc, Error> {
    match a {
        ArcRef::Named(n) => Arc::new(s.arc(n).expect("resolved by the parser").to_vec()),
        ArcRef::Inline(c) => Arc::new(c.clone()),
    }
}

fn resolve_rel(s: &Session, r: &RelRef) -> Result<Relation, Error> {
    let p: &MultiPoly = match r {
        RelRef::Named(n) => s.relation(n).expect("resolved by the parser"),
        RelRef::Inline(p) => p,
    };
    Relation::from_poly(p, s.vars.len())
}

fn order_text(o: &Order) -> String {
    match o {
        Order::Finite(e) => fmt_exponent(e),
        Order::Infinite => "inf".into(),
        Order::AtLeast(e) => format!(">= {}", fmt_exponent(e)),
    }
}

fn limit_json(l: &Limit) -> Value {
    match l {
        Limit::Finite(c) => json!({ "kind": "FINITE", "value": c.to_string() }),
        Limit::Diverges(s) => json!({ "kind": "DIVERGES", "sign": s }),
        Limit::PoleArc => json!({ "kind": "POLE-ARC" }),
    }
}

fn branch_line(b: &Branch) -> String {
    format!(
        "{}  [ord {}, ramification {}, residual {}, integral {}]",
        b.series,
        order_text(&b.order()),
        b.series.ramification_index(),
        b.residual,
        if b.integral_up_to_order() {
            "yes"
        } else {
            "no"
        }
    )
}

fn branch_json(b: &Branch) -> Value {
    json!({
        "series": b.series.to_string(),
        "ord": order_text(&b.order()),
        "denominators": b.series.exponent_denominators().into_iter().collect::<Vec<_>>(),
        "residual": b.residual.to_string(),
        "integral": b.integral_up_to_order(),
    })
}

fn values_text(vs: &[RealAlgebraic]) -> String {
    format!(
        "{{{}}}",
        vs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn run_query(s: &Session, v: &Variety, q: &Query, opts: Options) -> Result<Out, Error> {
    let n = opts.newton();
    match q {
        Query::Limit { f, arc } => {
            let arc = resolve_arc(s, arc)?;
            let mut out = Out::new("limit");
            match rational_along_arc(f, &arc, n.order)? {
                AlongArc::PoleArc => {
                    out.line("value: POLE-ARC (the arc lies in the zero set of the denominator)");
                    out.set("value", json!("POLE-ARC"));
                }
                AlongArc::Series(ser) => {
                    out.line(format!("value: {ser}"));
                    out.set("value", json!(ser.to_string()));
                }
            }
            let lim = arc_limit(f, &arc, n.order)?;
            out.line(format!("limit: {lim}"));
            out.set("limit", limit_json(&lim));
            Ok(out)
        }
        Query::Lift { rel, arc } => {
            let rel = resolve_rel(s, rel)?;
            let arc = resolve_arc(s, arc)?;
            let r = lift_arc(&rel, &arc, n)?;
            let mut out = Out::new("lift");
            out.line(format!("liftings: {}", r.liftings.len()));
            for b in &r.liftings {
                out.line(format!("  {}", branch_line(b)));
            }
            out.line(format!("non-liftings: {}", r.non_liftings.len()));
            for b in &r.non_liftings {
                out.line(format!("  {}", branch_line(b)));
            }
            out.line(format!("order: {}", opts.order));
            if r.squarefree_reduced {
                out.line("note: repeated factors were removed before expansion");
            }
            out.set("liftings", r.liftings.iter().map(branch_json).collect());
            out.set(
                "non_liftings",
                r.non_liftings.iter().map(branch_json).collect(),
            );
            out.set("order", json!(opts.order));
            out.set("squarefree_reduced", json!(r.squarefree_reduced));
            Ok(out)
        }
        Query::PointLift { rel, point } => {
            let rel = resolve_rel(s, rel)?;
            let roots = point_lift(&rel, point)?;
            let mut out = Out::new("pointlift");
            out.line(format!("liftings: {}", roots.len()));
            out.line(format!("values: {}", values_text(&roots)));
            out.set(
                "values",
                roots.iter().map(|r| json!(r.to_string())).collect(),
            );
            Ok(out)
        }
        Query::Witness { f, point, budget } => {
            let budget = budget.unwrap_or(opts.budget);
            let r = discontinuity_witness(
                f,
                v,
                point,
                WitnessOptions {
                    newton: n,
                    budget,
                    workers: opts.workers,
                },
            )?;
            let mut out = Out::new("witness");
            let side = |sd: &Side| match sd {
                Side::Arc(a) => a.to_string(),
                Side::Point => "value at the point".to_string(),
            };
            match &r.outcome {
                WitnessOutcome::TwoLimits {
                    first,
                    second,
                    l1,
                    l2,
                } => {
                    out.line("outcome: TWO-LIMITS");
                    out.line(format!("  {} -> {l1}", side(first)));
                    out.line(format!("  {} -> {l2}", side(second)));
                    out.line("note: certificate of discontinuity");
                    out.set("outcome", json!("TWO-LIMITS"));
                    out.set(
                        "witnesses",
                        json!([{ "arc": side(first), "limit": l1.to_string() }, { "arc": side(second), "limit": l2.to_string() }]),
                    );
                }
                WitnessOutcome::Diverges { arc, sign } => {
                    out.line("outcome: DIVERGES");
                    out.line(format!(
                        "  {arc} -> {}inf",
                        if *sign > 0 { "+" } else { "-" }
                    ));
                    out.line("note: certificate of discontinuity");
                    out.set("outcome", json!("DIVERGES"));
                    out.set(
                        "witnesses",
                        json!([{ "arc": arc.to_string(), "sign": sign }]),
                    );
                }
                WitnessOutcome::PoleArc { arc } => {
                    out.line("outcome: POLE-ARC");
                    out.line(format!("  {arc}"));
                    out.line("note: every arc found lies in the zero set of the denominator");
                    out.set("outcome", json!("POLE-ARC"));
                    out.set("witnesses", json!([{ "arc": arc.to_string() }]));
                }
                WitnessOutcome::NoneFound { limits } => {
                    out.line("outcome: NONE-FOUND");
                    out.line(format!("limits: {}", values_text(limits)));
                    out.line("note: evidence only, continuity is not proved");
                    out.set("outcome", json!("NONE-FOUND"));
                    out.set(
                        "limits",
                        limits.iter().map(|l| json!(l.to_string())).collect(),
                    );
                }
            }
            if let Some(val) = &r.value_at_point {
                out.line(format!("value at the point: {val}"));
            }
            out.line(format!(
                "planes: {} of {budget}; arcs: {}; pole arcs: {}; planes inside V: {}; undecided: {}",
                r.planes, r.arcs, r.pole_arcs, r.planes_in_variety, r.undecided
            ));
            out.set(
                "value_at_point",
                json!(r.value_at_point.as_ref().map(|x| x.to_string())),
            );
            out.set("planes", json!(r.planes));
            out.set("budget", json!(budget));
            out.set("arcs", json!(r.arcs));
            out.set("pole_arcs", json!(r.pole_arcs));
            out.set("undecided", json!(r.undecided));
            Ok(out)
        }
        Query::Branches { poly, order } => {
            let no = NewtonOptions {
                order: Exponent::from_integer(order.unwrap_or(opts.order)),
                ..n
            };
            let set = newton_puiseux_with(poly, 0, 1, no)?;
            let mut out = Out::new("branches");
            out.line(format!("branches: {} (degree {})", set.len(), set.degree));
            for b in &set.branches {
                out.line(format!("  {}", branch_line(b)));
            }
            out.line(format!("order: {}", fmt_exponent(&set.order)));
            if set.squarefree_reduced {
                out.line("note: repeated factors were removed before expansion");
            }
            out.set("branches", set.branches.iter().map(branch_json).collect());
            out.set("degree", json!(set.degree));
            out.set("order", json!(fmt_exponent(&set.order)));
            out.set("squarefree_reduced", json!(set.squarefree_reduced));
            Ok(out)
        }
        Query::Verify { arc } => {
            let mut arc = resolve_arc(s, arc)?;
            let r = verify_arc_on_variety(&mut arc, v, n.order)?;
            let mut out = Out::new("verify");
            for (p, res) in v.polys().iter().zip(&r.residuals) {
                out.line(format!("{}: {res}", p.fmt_with(&s.vars)));
            }
            out.line(format!("result: {}", if r.pass { "PASS" } else { "FAIL" }));
            out.set(
                "residuals",
                r.residuals.iter().map(|x| json!(x.to_string())).collect(),
            );
            out.set("pass", json!(r.pass));
            out.set("order", json!(opts.order));
            Ok(out)
        }
        Query::LojProbe {
            f,
            point,
            arcs,
            via,
        } => {
            let arcs: Vec<Arc> = arcs
                .iter()
                .map(|a| resolve_arc(s, a))
                .collect::<Result<_, _>>()?;
            let via = via.as_ref().map(|r| resolve_rel(s, r)).transpose()?;
            let r = lojasiewicz_probe(f, point, &arcs, via.as_ref(), n)?;
            let mut out = Out::new("lojprobe");
            out.line(format!("f(x0): {}", r.f0));
            let ord =
                |o: &Option<Exponent>| o.map(|e| fmt_exponent(&e)).unwrap_or_else(|| "inf".into());
            let mut entries = Vec::new();
            for e in &r.entries {
                out.line(format!(
                    "arc {}: {}{}  ord(f - f(x0)) = {}, ord(rho) = {}",
                    e.arc + 1,
                    e.value,
                    if e.via_lifting { " (lifting)" } else { "" },
                    ord(&e.ord_f),
                    ord(&e.ord_rho)
                ));
                entries.push(json!({
                    "arc": e.arc + 1,
                    "value": e.value.to_string(),
                    "via_lifting": e.via_lifting,
                    "ord_f": ord(&e.ord_f),
                    "ord_rho": ord(&e.ord_rho),
                }));
            }
            out.line(format!("N: {}", r.bound));
            out.set("f0", json!(r.f0.to_string()));
            out.set("entries", Value::Array(entries));
            out.set("bound", json!(r.bound.to_string()));
            Ok(out)
        }
        Query::Slice { point, d1, d2 } => {
            let spec = SliceSpec::from_integers(point.clone(), d1, d2)?;
            let r = slice_branches(v, &spec, n)?;
            let mut out = Out::new("slice");
            out.line(format!("arcs: {}", r.arcs.len()));
            for a in &r.arcs {
                out.line(format!("  {a}"));
            }
            if r.plane_in_variety {
                out.line("note: the plane lies in V");
            }
            out.line(format!("skipped branches: {}", r.skipped));
            out.set(
                "arcs",
                r.arcs.iter().map(|a| json!(a.to_string())).collect(),
            );
            out.set("plane_in_variety", json!(r.plane_in_variety));
            out.set("skipped", json!(r.skipped));
            Ok(out)
        }
        Query::Singular { point } => {
            if !v.contains(point)? {
                return Err(Error::Invalid("the point is not on the variety".into()));
            }
            let sing = is_singular_at(v, point)?;
            let mut out = Out::new("singular");
            out.line(format!("singular: {}", if sing { "yes" } else { "no" }));
            out.set("singular", json!(sing));
            Ok(out)
        }
        Query::ZeroCheck { f, arcs } => {
            let arcs: Vec<Arc> = arcs
                .iter()
                .map(|a| resolve_arc(s, a))
                .collect::<Result<_, _>>()?;
            let r = zero_containment_evidence(&f.p, &f.q, v, &arcs, n.order)?;
            let mut out = Out::new("zerocheck");
            match r {
                Containment::Pass { checked } => {
                    out.line("result: PASS");
                    out.line(format!("arcs checked: {checked}"));
                    out.set("result", json!("PASS"));
                }
                Containment::Violation { index } => {
                    out.line(format!(
                        "result: VIOLATION at arc {}: {}",
                        index + 1,
                        arcs[index]
                    ));
                    out.set("result", json!("VIOLATION"));
                    out.set("arc", json!(index + 1));
                }
            }
            Ok(out)
        }
    }
}

/// Render a whole session file as text; the flag reports query errors.
/// Parse failures render as a single diagnostic line.
pub fn render(
    text: &str,
    opts: Options,
    machine: bool,
) -> Result<(String, bool), crate::syntax::Diagnostic> {
    let s = crate::syntax::parse_session(text)?;
    let r = run_session(&s, opts);
    Ok((if machine { r.machine() } else { r.text() }, r.any_error()))
}
