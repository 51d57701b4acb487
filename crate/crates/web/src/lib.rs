//! wasm-bindgen exports for the browser demo. Each export takes text input
//! (a generator spec or JSON/DIMACS) and returns a JSON string; failures come
//! back as `{"error": "..."}` so the page never has to catch exceptions.

use serde_json::{json, Value};
use threshold_core::alpha::compute_alpha_exact_with;
use threshold_core::graphic::{alpha_graph_with, build_gadget, decide_alpha_at_most_with, mwis_exact_with};
use threshold_core::minnorm::{min_norm_point_with, strengthened_bound, tightness_check_with, DEFAULT_TOLERANCE};
use threshold_core::rational::{self, int};
use threshold_core::spec::{parse_game, parse_graph};
use threshold_core::{Error, Limits, Result};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive: exhaustive routines stay at desk scale.
const DEMO_PLAYERS: usize = 12;
const DEMO_VERTICES: usize = 16;

fn demo_limits() -> Limits {
    Limits {
        enumeration_players: DEMO_PLAYERS,
        hull_players: DEMO_PLAYERS,
        order_players: DEMO_PLAYERS,
        ..Limits::default()
    }
}

fn respond(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn vertex_cap(n: usize) -> Result<()> {
    if n > DEMO_VERTICES {
        return Err(Error::Budget { what: "demo graph size", limit: DEMO_VERTICES, got: n });
    }
    Ok(())
}

/// α, an optimal payoff, the certified min-norm point and the tightness verdict.
#[wasm_bindgen]
pub fn analyze_game(input: &str, seed: u32) -> String {
    respond(analyze_game_inner(input, seed))
}

fn analyze_game_inner(input: &str, seed: u32) -> Result<Value> {
    let limits = demo_limits();
    let game = parse_game(input, seed as u64)?;
    let cert = compute_alpha_exact_with(&game, &limits)?;
    let (point, mn) = min_norm_point_with(&game, DEFAULT_TOLERANCE, &limits)?;
    let tight = tightness_check_with(&game, &limits)?.tight;
    Ok(json!({
        "n": game.n(),
        "minimal_winning": game.minimal_winning(),
        "alpha": rational::format(&cert.alpha),
        "alpha_value": rational::to_f64(&cert.alpha),
        "quarter_n": rational::format(&rational::ratio(game.n() as i64, 4)),
        "weighted": cert.alpha < rational::one(),
        "payoff": cert.payoff,
        "tight_losing": cert.tight_losing,
        "min_norm": {
            "point": mn.point,
            "gap": mn.gap,
            "certified": mn.certified,
            "strengthened_bound": rational::format(&strengthened_bound(&game, &point)?),
        },
        "tight": tight,
    }))
}

/// α_G with its payoff, and optionally the decision `α_G ≤ a` (skipped when `a` is blank).
#[wasm_bindgen]
pub fn analyze_graph(input: &str, a: &str, seed: u32) -> String {
    respond(analyze_graph_inner(input, a, seed))
}

fn analyze_graph_inner(input: &str, a: &str, seed: u32) -> Result<Value> {
    let g = parse_graph(input, seed as u64)?;
    vertex_cap(g.n())?;
    let limits = Limits::default();
    let cert = alpha_graph_with(&g, &limits)?;
    let decision = match a.trim() {
        "" => Value::Null,
        text => {
            let d = decide_alpha_at_most_with(&g, &rational::parse(text)?, &limits)?;
            let mut v = serde_json::to_value(&d).expect("serializes");
            if let Some(alpha) = d.alpha() {
                v["alpha"] = json!(rational::format(alpha));
            }
            v
        }
    };
    Ok(json!({
        "n": g.n(),
        "edges": g.edges(),
        "bipartite": g.is_bipartite(),
        "alpha": rational::format(&cert.alpha),
        "payoff": cert.payoff,
        "payoff_values": cert.payoff.to_f64(),
        "tight_losing": cert.tight_losing,
        "decision": decision,
    }))
}

/// The doubled graph `G*`, its α and the independence number of `G`.
#[wasm_bindgen]
pub fn gadget(input: &str, seed: u32) -> String {
    respond(gadget_inner(input, seed))
}

fn gadget_inner(input: &str, seed: u32) -> Result<Value> {
    let g = parse_graph(input, seed as u64)?;
    vertex_cap(g.n())?;
    let limits = Limits::default();
    let star = build_gadget(&g)?;
    let independent = mwis_exact_with(&g, &vec![int(1); g.n()], &limits)?;
    let cert = alpha_graph_with(&star, &limits)?;
    Ok(json!({
        "graph": { "n": g.n(), "edges": g.edges() },
        "gadget": { "n": star.n(), "edges": star.edges() },
        "independence_number": rational::format(&independent.weight),
        "maximum_independent_set": independent.vertices,
        "alpha_gadget": rational::format(&cert.alpha),
        "payoff_values": cert.payoff.to_f64(),
    }))
}
