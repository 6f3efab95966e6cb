//! JSON and CSV renderings. Every JSON document carries `"format": 1`.

use std::f64::consts::PI;

use gbwalk_core::{
    FanCell, GroebnerBasis, GroebnerFan, MonomialOrder, Polynomial, Rational, StarCheckReport, VariableContext,
    WalkOutcome, WeightVector,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub const FORMAT: u32 = 1;

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn weight(w: &WeightVector) -> Value {
    Value::Array(w.entries().iter().map(|x| Value::String(x.to_string())).collect())
}

fn polys(ps: &[Polynomial], ctx: &VariableContext, order: &MonomialOrder) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_text(ctx, order))).collect())
}

fn variables(ctx: &VariableContext) -> Value {
    json!({ "x": ctx.x_vars(), "u": ctx.u_vars() })
}

pub fn gb_json(basis: &GroebnerBasis, ctx: &VariableContext) -> Value {
    json!({
        "format": FORMAT,
        "variables": variables(ctx),
        "order": basis.order().to_text(ctx),
        "gb": basis.to_text(ctx),
    })
}

fn cell_json(id: usize, cell: &FanCell, ctx: &VariableContext) -> Value {
    json!({
        "id": id,
        "key": cell.key,
        "gb": cell.basis.to_text(ctx),
        "order": cell.basis.order().to_text(ctx),
        "ieo": cell.is_ieo,
        "boundary_class": cell.boundary.as_str(),
        "normals": Value::Array(cell.cone.normals().iter().map(|v| ints(v)).collect()),
        "rays": Value::Array(cell.cone.extreme_rays().iter().map(|v| ints(v)).collect()),
    })
}

pub fn fan_json(fan: &GroebnerFan) -> Value {
    let ctx = fan.context();
    let ev: Vec<&str> = fan.ev_region().iter().map(|c| c.key.as_str()).collect();
    json!({
        "format": FORMAT,
        "variables": variables(ctx),
        "cells": Value::Array(fan.cells().iter().enumerate().map(|(i, c)| cell_json(i, c, ctx)).collect()),
        "ev_region": ev,
    })
}

pub fn walk_json(outcome: &WalkOutcome, ctx: &VariableContext) -> Value {
    let trace = &outcome.trace;
    let last = trace.last();
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "k": s.k,
                "omega": weight(&s.omega),
                "t": s.t.to_string(),
                "order": s.order.to_text(ctx),
                "gb": s.basis.to_text(ctx),
                "is_ieo": s.is_ieo,
                "tight_normals": Value::Array(s.tight_normals.iter().map(|v| ints(v)).collect()),
                "non_generic": s.non_generic,
            })
        })
        .collect();
    json!({
        "format": FORMAT,
        "variables": variables(ctx),
        "mode": trace.mode.as_str(),
        "elimination_basis": polys(&outcome.elimination_basis, ctx, &last.order),
        "stop_reason": trace.stop_reason.as_str(),
        "conversions": trace.conversions,
        "steps": steps,
    })
}

pub fn star_json(report: &StarCheckReport) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "sigma": weight(&v.sigma),
                "tau": weight(&v.tau),
                "omega": weight(&v.omega),
                "witness": v.witness,
            })
        })
        .collect();
    json!({
        "format": FORMAT,
        "seed": report.seed,
        "samples_tested": report.samples_tested,
        "violations": violations,
    })
}

/// Cells cut by the hyperplane `sum(w) = 1`, one row per polygon vertex.
///
/// Vertices are the normalized extreme rays. With three variables each
/// cell's vertices are listed cyclically so they can be drawn as closed
/// polygons; otherwise they are sorted.
pub fn section_csv(fan: &GroebnerFan) -> String {
    let ctx = fan.context();
    let mut out = String::from("cell,vertex,ieo");
    for name in ctx.names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (id, cell) in fan.cells().iter().enumerate() {
        let mut verts: Vec<Vec<Rational>> = cell
            .cone
            .extreme_rays()
            .iter()
            .map(|r| {
                let s: BigInt = r.iter().sum();
                r.iter().map(|x| Rational::new(x.clone(), s.clone())).collect()
            })
            .collect();
        order_around_centroid(&mut verts);
        for (k, v) in verts.iter().enumerate() {
            out.push_str(&format!("{id},{k},{}", cell.is_ieo));
            for x in v {
                out.push_str(&format!(",{x}"));
            }
            out.push('\n');
        }
    }
    out
}

fn order_around_centroid(verts: &mut [Vec<Rational>]) {
    if verts.len() < 3 || verts[0].len() != 3 {
        verts.sort();
        return;
    }
    let n = verts.len() as f64;
    let f = |x: &Rational| x.to_f64().unwrap_or(0.0);
    let cx: f64 = verts.iter().map(|v| f(&v[0])).sum::<f64>() / n;
    let cy: f64 = verts.iter().map(|v| f(&v[1])).sum::<f64>() / n;
    let angle = |v: &Vec<Rational>| {
        // (w0, w1) is an affine chart of the plane sum = 1
        let a = (f(&v[1]) - cy).atan2(f(&v[0]) - cx);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    };
    verts.sort_by(|a, b| angle(a).total_cmp(&angle(b)).then_with(|| a.cmp(b)));
}
