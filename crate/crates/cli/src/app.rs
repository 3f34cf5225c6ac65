//! Command implementations. Each returns the text for standard output.

use std::fmt::Write as _;
use std::fs;

use extensia_core::domains::Universe;
use extensia_core::engine::{least_model, resolve_kappa, EngineConfig, KappaChoice, SolveResult};
use extensia_core::oracle::{brute_min_model, default_budget, well_founded};
use extensia_core::semantics::{Interpretation, Semantics, State};
use extensia_core::syntax::{parse_core_expr, typecheck_expr, TypedProgram};
use extensia_core::{load, Type};
use serde_json::{json, Value};

use crate::args::{Command, Common, SolveFlags};
use crate::exit::Failure;

pub fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Check(common) => check(&common),
        Command::Solve { common, solve } => solve_cmd(&common, &solve),
        Command::Query {
            common,
            expr,
            solve,
            table,
        } => query(&common, &expr, &solve, table),
        Command::Wfs(common) => wfs(&common),
        Command::OracleMin {
            common,
            kappa,
            collapse,
            budget,
        } => oracle_min(&common, kappa.0, collapse, budget),
    }
}

fn read(common: &Common) -> Result<String, Failure> {
    fs::read_to_string(&common.input)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", common.input.display())))
}

fn program(common: &Common) -> Result<TypedProgram, Failure> {
    Ok(load(&read(common)?, common.wadge)?)
}

fn engine_config(flags: &SolveFlags) -> EngineConfig {
    EngineConfig {
        kappa: flags.kappa.0,
        trace: flags.trace,
        strict_kappa: flags.strict_kappa,
        ..EngineConfig::default()
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn check(common: &Common) -> Result<String, Failure> {
    let p = program(common)?;
    let sig = p.signature();
    let universe = if p.has_function_symbols() {
        None
    } else {
        Some(Universe::from_signature(sig)?)
    };
    if common.json {
        let preds: serde_json::Map<String, Value> = sig
            .predicates
            .iter()
            .map(|(n, t)| (n.clone(), Value::String(t.to_string())))
            .collect();
        let universe = universe.map(|u| json!(u.names()));
        return Ok(json_text(&json!({
            "predicates": preds,
            "clauses": p.clauses.len(),
            "universe": universe,
        })));
    }
    let mut out = String::new();
    for (name, ty) in &sig.predicates {
        let _ = writeln!(out, "{name} : {ty}");
    }
    let universe = match universe {
        Some(u) => format!("{{{}}}", u.names().join(", ")),
        None => "infinite".into(),
    };
    let _ = writeln!(
        out,
        "ok: {} predicates, {} clauses, universe {universe}",
        sig.predicates.len(),
        p.clauses.len()
    );
    Ok(out)
}

fn solve(p: &TypedProgram, flags: &SolveFlags) -> Result<SolveResult, Failure> {
    let r = least_model(p, &engine_config(flags))?;
    for event in &r.trace {
        eprintln!("{event}");
    }
    Ok(r)
}

fn model_text(m: &Interpretation, collapse: bool) -> String {
    let mut out = String::new();
    for (p, c) in m.cells() {
        let label = m.space().cell_label(p, c);
        let v = m.get(p, c);
        let _ = if collapse {
            writeln!(out, "{label} = {}", v.three_valued())
        } else {
            writeln!(out, "{label} = {v}")
        };
    }
    out
}

fn model_json(m: &Interpretation, stats: Value) -> Value {
    json!({
        "model": m.to_json(),
        "collapsed": m.to_collapsed_json(),
        "stats": stats,
    })
}

fn solve_cmd(common: &Common, flags: &SolveFlags) -> Result<String, Failure> {
    let p = program(common)?;
    let r = solve(&p, flags)?;
    if common.json {
        let stats = json!({ "stages": r.stages_used, "cells": r.cells(), "kappa": r.kappa.get() });
        return Ok(json_text(&model_json(&r.model, stats)));
    }
    Ok(model_text(&r.model, flags.collapse))
}

fn query(common: &Common, expr: &str, flags: &SolveFlags, table: bool) -> Result<String, Failure> {
    let p = program(common)?;
    let sig = p.signature();
    let e = parse_core_expr(expr, sig).map_err(extensia_core::Error::from)?;
    let e = typecheck_expr(&e, sig, &[]).map_err(extensia_core::Error::from)?;
    if e.ty != Type::O && !table {
        return Err(Failure::usage(format!(
            "the query has type {}; pass --table to print it",
            e.ty
        )));
    }
    let r = solve(&p, flags)?;
    let sem = Semantics::new(&p, r.kappa)?;
    let d = sem.eval_forced(&e, &r.model, &State::new())?;
    let universe = sem.space().universe();
    if let Some(v) = d.truth() {
        let v = if flags.collapse { v.collapse() } else { v };
        if common.json {
            let value = if flags.collapse {
                json!(v.three_valued().label())
            } else {
                json!(v)
            };
            return Ok(json_text(
                &json!({ "query": expr, "type": e.ty.to_string(), "value": value }),
            ));
        }
        return Ok(if flags.collapse {
            format!("{}\n", v.three_valued())
        } else {
            format!("{v}\n")
        });
    }
    let rel = d
        .table()
        .ok_or_else(|| Failure::usage("the query denotes an individual"))?;
    let rel = if flags.collapse {
        rel.map(|v| v.collapse())
    } else {
        rel
    };
    if common.json {
        return Ok(json_text(
            &json!({ "query": expr, "type": e.ty.to_string(), "value": rel.to_nested_json(universe) }),
        ));
    }
    Ok(format!("{}\n", rel.render(universe)))
}

fn wfs(common: &Common) -> Result<String, Failure> {
    if common.wadge {
        return Err(Failure::usage("--wadge does not apply to wfs"));
    }
    let m = well_founded(&read(common)?)?;
    if common.json {
        return Ok(json_text(&json!({ "collapsed": m.to_json() })));
    }
    let mut out = String::new();
    for (atom, v) in &m.values {
        let _ = writeln!(out, "{atom} = {v}");
    }
    Ok(out)
}

fn oracle_min(
    common: &Common,
    kappa: KappaChoice,
    collapse: bool,
    budget: Option<u64>,
) -> Result<String, Failure> {
    let p = program(common)?;
    let cfg = EngineConfig {
        kappa,
        ..EngineConfig::default()
    };
    let k = resolve_kappa(&p, &cfg)?;
    let m = brute_min_model(&p, k, budget.unwrap_or_else(default_budget))?;
    if common.json {
        let stats = json!({ "cells": m.space().total_cells(), "kappa": k.get() });
        return Ok(json_text(&model_json(&m, stats)));
    }
    Ok(model_text(&m, collapse))
}
