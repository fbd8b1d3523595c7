use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::cache::{lookup_or_compute, Cache, CacheEntry};
use super::input::{parse_graph, parse_pattern, parse_rational, parse_set, read_colouring};
use super::{Command, Context, Outcome, EXIT_BUDGET, EXIT_OK};
use crate::absorb::{build_local_absorber, build_switcher, build_template, toy_triangle_absorber, verify_absorber, verify_switcher, verify_template, AbsorberVerdict, TemplateMode};
use crate::bitset::VertexSet;
use crate::budget::DEFAULT_NODES;
use crate::constructions::{build_hk, lower_bound_colouring, prop1_colouring, prop1_structural_check, Partition};
use crate::density::{dependent_random_choice, is_bi_dense, is_dense, DensityMode};
use crate::embed::{Embedding, Search};
use crate::error::{Error, Result};
use crate::graph::{Colour, TwoColouring};
use crate::iso::derived_families;
use crate::ledger::param_ledger;
use crate::pattern::PatternGraph;
use crate::ramsey::{
    colouring_avoids, ramsey_search, verify_critical_structure, CriticalOptions, EdgeOrder, RamseyQuery, RamseyStatus, Target,
};
use crate::ties::{check_ladder, clique_ladder, find_tie, is_tie, TieMode, TieOptions};
use crate::tiling::find_disjoint_mono;

/// Default node budget of the `ramsey` command.
pub const RAMSEY_NODES: u64 = 10_000_000_000;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn set_json(s: VertexSet) -> Value {
    json!(s.to_vec())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn dispatch(ctx: &Context, cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Ramsey(a) => ramsey(ctx, a),
        Command::Verify(a) => verify(ctx, a),
        Command::Construct(a) => construct(ctx, a),
        Command::Tie(a) => tie(ctx, a),
        Command::Absorber(a) => absorber(ctx, a),
        Command::Embed(a) => embed(ctx, a),
        Command::Density(a) => density(ctx, a),
        Command::Params(a) => params(a),
    }
}

// ---------------------------------------------------------------- ramsey

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// Remove a maximal independent set.
    D,
    /// Remove a maximum independent set.
    DPrime,
    /// Components of `D`.
    Dc,
    /// Components of `D'`.
    DcPrime,
}

#[derive(Args, Debug)]
pub struct RamseyArgs {
    /// Pattern for both colours.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Number of disjoint copies for both colours.
    #[arg(long, default_value_t = 1)]
    pub copies: usize,
    #[arg(long)]
    pub red: Option<String>,
    #[arg(long)]
    pub red_copies: Option<usize>,
    /// Use the derived family of the red pattern instead.
    #[arg(long, value_enum)]
    pub red_family: Option<FamilyKind>,
    #[arg(long)]
    pub blue: Option<String>,
    #[arg(long)]
    pub blue_copies: Option<usize>,
    #[arg(long, value_enum)]
    pub blue_family: Option<FamilyKind>,
    #[arg(long)]
    pub lo: Option<usize>,
    #[arg(long)]
    pub hi: Option<usize>,
    #[arg(long, value_enum, default_value_t = OrderArg::Colex)]
    pub edge_order: OrderArg,
    /// Where to write the lower witness colouring.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Recompute cached exact values and compare.
    #[arg(long)]
    pub recheck: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Colex,
    Lex,
}

fn target(pattern: &str, copies: usize, family: Option<FamilyKind>) -> Result<Target> {
    if copies == 0 {
        return Err(Error::Precondition("copies must be at least 1".into()));
    }
    let g = parse_graph(pattern)?;
    match family {
        None => Ok(Target::packing(PatternGraph::new(g)?, copies)),
        Some(kind) => {
            if copies != 1 {
                return Err(Error::Precondition("family targets take no copy count".into()));
            }
            let d = derived_families(&g);
            Target::family(match kind {
                FamilyKind::D => d.d,
                FamilyKind::DPrime => d.d_prime,
                FamilyKind::Dc => d.d_c,
                FamilyKind::DcPrime => d.d_c_prime,
            })
        }
    }
}

fn ramsey(ctx: &Context, a: RamseyArgs) -> Result<Outcome> {
    let red_p = a.red.clone().or(a.pattern.clone());
    let blue_p = a.blue.clone().or(a.pattern.clone());
    let (Some(red_p), Some(blue_p)) = (red_p, blue_p) else {
        return Err(Error::Precondition("give --pattern or both --red and --blue".into()));
    };
    let red = target(&red_p, a.red_copies.unwrap_or(a.copies), a.red_family)?;
    let blue = target(&blue_p, a.blue_copies.unwrap_or(a.copies), a.blue_family)?;
    let mut q = RamseyQuery::new(red, blue);
    let lo = a.lo.unwrap_or(q.lo);
    let hi = a.hi.unwrap_or(q.hi);
    q = q.with_range(lo, hi).with_order(match a.edge_order {
        OrderArg::Colex => EdgeOrder::Colex,
        OrderArg::Lex => EdgeOrder::Lex,
    });
    let key = q.key();
    let inputs = json!({"red": red_p, "blue": blue_p, "key": key, "lo": lo, "hi": hi, "edge_order": format!("{:?}", a.edge_order).to_lowercase()});
    let budget = ctx.budget(RAMSEY_NODES);
    let mut records = Value::Null;
    let mut nodes = 0u64;
    let mut witness_text: Option<String> = None;
    let witness_path = a.witness.clone().or_else(|| {
        ctx.global
            .cache
            .as_ref()
            .map(|c| PathBuf::from(format!("{}.{}.col", c.display(), &super::key_digest(&key)[..16])))
    });
    let mut compute = || -> Result<CacheEntry> {
        let r = ramsey_search(&q, &budget)?;
        records = to_value(&r.verdicts().records);
        nodes = r.nodes();
        let mut path = None;
        if let Some(w) = &r.lower_witness {
            let text = w.to_text();
            if let Some(p) = &witness_path {
                write_file(p, &text)?;
                path = Some(p.display().to_string());
            }
            witness_text = Some(text);
        }
        Ok(CacheEntry::new(&key, "ramsey", r.value, r.lo, r.hi, path))
    };
    let (entry, from_cache) = match &ctx.global.cache {
        Some(path) => {
            let mut cache = Cache::open(path)?;
            lookup_or_compute(&mut cache, &key, "ramsey", a.recheck, &mut compute)?
        }
        None => (compute()?, false),
    };
    if from_cache && witness_text.is_none() {
        if let Some(p) = &entry.witness {
            witness_text = std::fs::read_to_string(p).ok();
        }
    }
    let status = if entry.is_exact() { RamseyStatus::Exact } else { RamseyStatus::Bracketed };
    Ok(Outcome {
        inputs,
        verdicts: json!({
            "value": entry.value,
            "lo": entry.lo,
            "hi": entry.hi,
            "status": to_value(&status),
            "from_cache": from_cache,
            "orders": records,
        }),
        witnesses: json!({"lower_witness_path": entry.witness, "lower_witness": witness_text}),
        stats: json!({"nodes": nodes}),
        exit: if entry.is_exact() { EXIT_OK } else { EXIT_BUDGET },
    })
}

// ---------------------------------------------------------------- verify

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub colouring: PathBuf,
    #[arg(long)]
    pub pattern: String,
    #[arg(long, default_value_t = 1)]
    pub copies: usize,
    /// Check the critical-colouring structure for the partition given by
    /// --r, --b and --e instead of avoidance.
    #[arg(long)]
    pub critical: bool,
    #[arg(long, default_value = "")]
    pub r: String,
    #[arg(long, default_value = "")]
    pub b: String,
    #[arg(long, default_value = "")]
    pub e: String,
    /// Known value of r(H) for the size bullet.
    #[arg(long)]
    pub ramsey_h: Option<usize>,
}

fn avoidance_json(col: &TwoColouring, t: &Target, budget: &crate::budget::Budget) -> Result<(Value, Value)> {
    let mut verdicts = serde_json::Map::new();
    let mut witnesses = serde_json::Map::new();
    for c in Colour::BOTH {
        let name = format!("{c:?}").to_lowercase();
        let av = colouring_avoids(col, t, c, budget)?;
        verdicts.insert(name.clone(), json!(av.avoids));
        witnesses.insert(name, to_value(&av.witness));
    }
    Ok((Value::Object(verdicts), Value::Object(witnesses)))
}

fn verify(ctx: &Context, a: VerifyArgs) -> Result<Outcome> {
    let col = read_colouring(&a.colouring)?;
    let h = parse_pattern(&a.pattern)?;
    let budget = ctx.budget(DEFAULT_NODES);
    let inputs = json!({"colouring": a.colouring.display().to_string(), "order": col.order(), "pattern": a.pattern, "copies": a.copies});
    if a.critical {
        let part = Partition {
            r: parse_set(&a.r)?,
            b: parse_set(&a.b)?,
            e: parse_set(&a.e)?,
        };
        let opts = CriticalOptions {
            ramsey_h: a.ramsey_h,
            ..Default::default()
        };
        let rep = verify_critical_structure(&col, &part, &h, &opts, &budget)?;
        return Ok(Outcome {
            inputs,
            verdicts: json!({"ok": rep.ok, "bullets": to_value(&rep.bullets), "ramsey_h": rep.ramsey_h}),
            witnesses: json!({"tie": to_value(&rep.tie)}),
            stats: json!({"tie_candidates": rep.tie_candidates, "nodes": budget.used()}),
            exit: EXIT_OK,
        });
    }
    let t = Target::packing(h, a.copies);
    let (verdicts, witnesses) = avoidance_json(&col, &t, &budget)?;
    Ok(Outcome {
        inputs,
        verdicts,
        witnesses,
        stats: json!({"nodes": budget.used()}),
        exit: EXIT_OK,
    })
}

// ---------------------------------------------------------------- construct

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// Red clique R, blue clique B, red between.
    LowerBound {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        write: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Colouring with a blue clique E attached.
    Prop1 {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        write: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// The pattern H_k with k = 3ℓ + 4.
    Hk {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

fn emit_colouring(col: &TwoColouring, sidecar: &Value, write: &Option<PathBuf>) -> Result<Value> {
    match write {
        Some(p) => {
            write_file(p, &col.to_text())?;
            let side = PathBuf::from(format!("{}.json", p.display()));
            write_file(&side, &serde_json::to_string_pretty(sidecar).expect("json"))?;
            Ok(json!({"colouring_path": p.display().to_string(), "spec_path": side.display().to_string()}))
        }
        None => Ok(json!({"colouring": col.to_text()})),
    }
}

fn construct(ctx: &Context, a: ConstructArgs) -> Result<Outcome> {
    let budget = ctx.budget(DEFAULT_NODES);
    match a.kind {
        ConstructKind::LowerBound { pattern, n, write, verify } => {
            let h = parse_pattern(&pattern)?;
            let (col, part, spec) = lower_bound_colouring(&h, n)?;
            let sidecar = json!({"spec": to_value(&spec), "partition": to_value(&part)});
            let witnesses = emit_colouring(&col, &sidecar, &write)?;
            let mut verdicts = json!({"order": col.order(), "spec": to_value(&spec), "partition": to_value(&part)});
            if verify {
                let (v, _) = avoidance_json(&col, &Target::packing(h, n), &budget)?;
                verdicts["avoids"] = v;
            }
            Ok(Outcome {
                inputs: json!({"kind": "lower_bound", "pattern": pattern, "n": n}),
                verdicts,
                witnesses,
                stats: json!({"nodes": budget.used()}),
                exit: EXIT_OK,
            })
        }
        ConstructKind::Prop1 { ell, n, write, verify } => {
            let (col, part, spec) = prop1_colouring(ell, n)?;
            let h = build_hk(ell)?;
            let sidecar = json!({"spec": to_value(&spec), "partition": to_value(&part)});
            let witnesses = emit_colouring(&col, &sidecar, &write)?;
            let mut verdicts = json!({"order": col.order(), "spec": to_value(&spec), "partition": to_value(&part)});
            if verify {
                let structural = prop1_structural_check(&col, &part, &h, n);
                let mut exhaustive = serde_json::Map::new();
                for c in Colour::BOTH {
                    let found = find_disjoint_mono(&col, &h, n, c, &budget)?;
                    exhaustive.insert(format!("{c:?}").to_lowercase(), json!(found.is_none()));
                }
                let clean = exhaustive.values().all(|v| v == &json!(true));
                verdicts["structural"] = to_value(&structural);
                verdicts["exhaustive_avoids"] = Value::Object(exhaustive);
                verdicts["verdict"] = json!(if clean {
                    format!("no monochromatic {}H_{}", if n == 1 { String::new() } else { n.to_string() }, h.k)
                } else {
                    format!("monochromatic {n}H_{} found", h.k)
                });
            }
            Ok(Outcome {
                inputs: json!({"kind": "prop1", "ell": ell, "n": n}),
                verdicts,
                witnesses,
                stats: json!({"nodes": budget.used()}),
                exit: EXIT_OK,
            })
        }
        ConstructKind::Hk { ell, write } => {
            let h = build_hk(ell)?;
            let witnesses = match &write {
                Some(p) => {
                    write_file(p, &h.graph.to_text())?;
                    json!({"graph_path": p.display().to_string()})
                }
                None => json!({"graph": h.graph.to_text()}),
            };
            Ok(Outcome {
                inputs: json!({"kind": "hk_pattern", "ell": ell}),
                verdicts: json!({"k": h.k, "max_degree": h.max_degree, "alpha": h.alpha, "edges": h.graph.edge_count()}),
                witnesses,
                stats: Value::Null,
                exit: EXIT_OK,
            })
        }
    }
}

// ---------------------------------------------------------------- tie

#[derive(Args, Debug)]
pub struct TieArgs {
    #[command(subcommand)]
    pub action: TieAction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Direct,
    Guided,
}

#[derive(Subcommand, Debug)]
pub enum TieAction {
    /// Search for a tie with red part in R and blue part in B.
    Find {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
        mode: ModeArg,
        /// Minimum |R| and |B| (default 4k).
        #[arg(long)]
        floor: Option<usize>,
    },
    /// Check whether a vertex set is a tie.
    Check {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        set: String,
    },
    /// Run the clique ladder on R and B.
    Ladder {
        #[arg(long)]
        colouring: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        b: String,
    },
}

fn tie(ctx: &Context, a: TieArgs) -> Result<Outcome> {
    let budget = ctx.budget(DEFAULT_NODES);
    match a.action {
        TieAction::Find { colouring, pattern, r, b, mode, floor } => {
            let col = read_colouring(&colouring)?;
            let h = parse_pattern(&pattern)?;
            let (rs, bs) = (parse_set(&r)?, parse_set(&b)?);
            let mode = match mode {
                ModeArg::Direct => TieMode::Direct,
                ModeArg::Guided => TieMode::Guided,
            };
            let inputs = json!({"colouring": colouring.display().to_string(), "pattern": pattern, "r": set_json(rs), "b": set_json(bs), "mode": to_value(&mode)});
            match find_tie(&col, rs, bs, &h, mode, TieOptions { floor }, &budget) {
                Ok(found) => Ok(Outcome {
                    inputs,
                    verdicts: json!({"found": true, "source": to_value(&found.source)}),
                    witnesses: json!({"tie": to_value(&found.tie)}),
                    stats: json!({"nodes": budget.used()}),
                    exit: EXIT_OK,
                }),
                Err(Error::NoneFound) => Ok(Outcome {
                    inputs,
                    verdicts: json!({"found": false}),
                    witnesses: Value::Null,
                    stats: json!({"nodes": budget.used()}),
                    exit: EXIT_OK,
                }),
                Err(e) => Err(e),
            }
        }
        TieAction::Check { colouring, pattern, set } => {
            let col = read_colouring(&colouring)?;
            let h = parse_pattern(&pattern)?;
            let s = parse_set(&set)?;
            let res = is_tie(&col, s, &h, &budget)?;
            let (verdicts, witnesses) = match res {
                Ok(t) => (json!({"tie": true}), json!({"tie": to_value(&t)})),
                Err(why) => (json!({"tie": false, "reason": why.to_string()}), Value::Null),
            };
            Ok(Outcome {
                inputs: json!({"colouring": colouring.display().to_string(), "pattern": pattern, "set": set_json(s)}),
                verdicts,
                witnesses,
                stats: json!({"nodes": budget.used()}),
                exit: EXIT_OK,
            })
        }
        TieAction::Ladder { colouring, pattern, r, b } => {
            let col = read_colouring(&colouring)?;
            let h = parse_pattern(&pattern)?;
            let (rs, bs) = (parse_set(&r)?, parse_set(&b)?);
            let l = clique_ladder(&col, rs, bs, &h, &budget)?;
            Ok(Outcome {
                inputs: json!({"colouring": colouring.display().to_string(), "pattern": pattern, "r": set_json(rs), "b": set_json(bs)}),
                verdicts: json!({"valid": check_ladder(&col, rs, bs, &l)}),
                witnesses: json!({"ladder": to_value(&l)}),
                stats: json!({"nodes": budget.used()}),
                exit: EXIT_OK,
            })
        }
    }
}

// ---------------------------------------------------------------- absorber

#[derive(Args, Debug)]
pub struct AbsorberArgs {
    #[command(subcommand)]
    pub action: AbsorberAction,
}

#[derive(Subcommand, Debug)]
pub enum AbsorberAction {
    /// Exhaustively verify A as an absorber for reservoir U in a graph.
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        radius: usize,
        /// Omit the per-subset tilings from the report.
        #[arg(long)]
        elide: bool,
    },
    /// The built-in triangle absorber on 25 vertices, verified.
    Toy {
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Build and verify a switcher gadget.
    Switcher {
        #[arg(long)]
        pattern: String,
    },
    /// Build and verify a local absorber.
    Local {
        #[arg(long)]
        pattern: String,
    },
    /// Build and verify a bipartite template.
    Template {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[arg(long)]
        complete: bool,
    },
}

fn absorber_outcome(inputs: Value, v: AbsorberVerdict, elide: bool, nodes: u64) -> Outcome {
    let (verdicts, witnesses) = match v {
        AbsorberVerdict::Certified(mut c) => {
            if elide {
                c.elide_witnesses();
            }
            (json!({"certified": true, "subsets_checked": c.subsets_checked}), json!({"certificate": to_value(&c)}))
        }
        AbsorberVerdict::Failed { subset, subsets_checked } => (
            json!({"certified": false, "subsets_checked": subsets_checked, "failing_subset": set_json(subset)}),
            Value::Null,
        ),
    };
    Outcome {
        inputs,
        verdicts,
        witnesses,
        stats: json!({"nodes": nodes}),
        exit: EXIT_OK,
    }
}

fn absorber(ctx: &Context, a: AbsorberArgs) -> Result<Outcome> {
    let budget = ctx.budget(DEFAULT_NODES);
    match a.action {
        AbsorberAction::Verify { graph, pattern, a: aset, u, radius, elide } => {
            let g = parse_graph(&graph)?;
            let h = parse_pattern(&pattern)?;
            let (aa, uu) = (parse_set(&aset)?, parse_set(&u)?);
            let v = verify_absorber(&g, aa, uu, radius, &h, &budget)?;
            let inputs = json!({"graph": graph, "pattern": pattern, "a": set_json(aa), "u": set_json(uu), "radius": radius});
            Ok(absorber_outcome(inputs, v, elide, budget.used()))
        }
        AbsorberAction::Toy { radius } => {
            let (g, aa, uu) = toy_triangle_absorber();
            let v = verify_absorber(&g, aa, uu, radius, &PatternGraph::complete(3), &budget)?;
            let mut out = absorber_outcome(json!({"toy": "triangle", "radius": radius}), v, true, budget.used());
            out.witnesses["graph"] = json!(g.to_text());
            Ok(out)
        }
        AbsorberAction::Switcher { pattern } => {
            let h = parse_pattern(&pattern)?;
            let s = build_switcher(&h, &budget)?;
            let again = verify_switcher(&s.graph, s.u, s.v, &h, &budget)?;
            Ok(Outcome {
                inputs: json!({"pattern": pattern}),
                verdicts: json!({"ok": again.ok, "order": s.graph.order(), "u": s.u, "v": s.v}),
                witnesses: json!({"switcher": to_value(&s)}),
                stats: json!({"nodes": budget.used()}),
                exit: EXIT_OK,
            })
        }
        AbsorberAction::Local { pattern } => {
            let h = parse_pattern(&pattern)?;
            let la = build_local_absorber(&h, &budget)?;
            Ok(Outcome {
                inputs: json!({"pattern": pattern}),
                verdicts: json!({"ok": true, "order": la.graph.order(), "core": la.core.len(), "external": la.external.len()}),
                witnesses: json!({"local_absorber": to_value(&la)}),
                stats: json!({"nodes": budget.used()}),
                exit: EXIT_OK,
            })
        }
        AbsorberAction::Template { ell, cap, complete } => {
            let mode = if complete { TemplateMode::Complete } else { TemplateMode::Random };
            let t = build_template(ell, cap, ctx.global.seed, mode)?;
            let v = verify_template(&t)?;
            Ok(Outcome {
                inputs: json!({"ell": ell, "cap": cap, "mode": to_value(&mode)}),
                verdicts: json!({"ok": v.ok, "subsets_checked": v.subsets_checked, "max_degree": t.max_degree()}),
                witnesses: json!({"template": to_value(&t)}),
                stats: Value::Null,
                exit: EXIT_OK,
            })
        }
    }
}

// ---------------------------------------------------------------- embed

#[derive(Args, Debug)]
pub struct EmbedArgs {
    /// Host graph (shorthand or @file); ignored with --colouring.
    #[arg(long)]
    pub host: Option<String>,
    /// Search a colour class of this colouring instead.
    #[arg(long)]
    pub colouring: Option<PathBuf>,
    #[arg(long, default_value = "red")]
    pub colour: String,
    #[arg(long)]
    pub pattern: String,
    /// Count all embeddings instead of finding one.
    #[arg(long)]
    pub count: bool,
}

fn embed(ctx: &Context, a: EmbedArgs) -> Result<Outcome> {
    let budget = ctx.budget(DEFAULT_NODES);
    let h = parse_pattern(&a.pattern)?;
    let (host, colour) = match (&a.colouring, &a.host) {
        (Some(p), _) => {
            let c: Colour = a.colour.parse()?;
            (read_colouring(p)?.class(c).clone(), Some(c))
        }
        (None, Some(g)) => (parse_graph(g)?, None),
        (None, None) => return Err(Error::Precondition("give --host or --colouring".into())),
    };
    let inputs = json!({"host": a.host, "colouring": a.colouring.as_ref().map(|p| p.display().to_string()), "colour": colour.map(|c| to_value(&c)), "pattern": a.pattern});
    if a.count {
        let n = Search::new(&host, &h.graph).symmetry(false).count(&budget)?;
        return Ok(Outcome {
            inputs,
            verdicts: json!({"embeddings": n}),
            witnesses: Value::Null,
            stats: json!({"nodes": budget.used()}),
            exit: EXIT_OK,
        });
    }
    let found = Search::new(&host, &h.graph).first_parallel(&budget)?;
    Ok(Outcome {
        inputs,
        verdicts: json!({"found": found.is_some()}),
        witnesses: json!({"embedding": found.map(|m| to_value(&Embedding::new(m, colour)))}),
        stats: json!({"nodes": budget.used()}),
        exit: EXIT_OK,
    })
}

// ---------------------------------------------------------------- density

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(subcommand)]
    pub action: DensityAction,
}

#[derive(Subcommand, Debug)]
pub enum DensityAction {
    /// (Bi-)density check of a graph.
    Check {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        gamma: String,
        /// Check bi-density (pairs of disjoint sets) instead of density.
        #[arg(long)]
        bi: bool,
        /// Sample this many sets instead of checking exhaustively.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Dependent random choice.
    Drc {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 64)]
        attempts: u32,
    },
}

fn density(ctx: &Context, a: DensityArgs) -> Result<Outcome> {
    match a.action {
        DensityAction::Check { graph, eps, gamma, bi, samples } => {
            let g = parse_graph(&graph)?;
            let (e, gm) = (parse_rational(&eps)?, parse_rational(&gamma)?);
            let mode = match samples {
                Some(s) => DensityMode::Sampled { samples: s, seed: ctx.global.seed },
                None => DensityMode::Exact,
            };
            let v = if bi { is_bi_dense(&g, e, gm, mode)? } else { is_dense(&g, e, gm, mode)? };
            Ok(Outcome {
                inputs: json!({"graph": graph, "eps": eps, "gamma": gamma, "bi": bi, "mode": to_value(&mode)}),
                verdicts: json!({"holds": v.holds}),
                witnesses: json!({"sparse": to_value(&v.witness)}),
                stats: Value::Null,
                exit: EXIT_OK,
            })
        }
        DensityAction::Drc { graph, t, r, m, a: size, attempts } => {
            let g = parse_graph(&graph)?;
            let u = dependent_random_choice(&g, t, r, m, size, ctx.global.seed, attempts)?;
            Ok(Outcome {
                inputs: json!({"graph": graph, "t": t, "r": r, "m": m, "a": size, "attempts": attempts}),
                verdicts: json!({"size": u.len()}),
                witnesses: json!({"u": set_json(u)}),
                stats: Value::Null,
                exit: EXIT_OK,
            })
        }
    }
}

// ---------------------------------------------------------------- params

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[arg(long)]
    pub delta: u64,
    #[arg(long)]
    pub k: u64,
}

fn params(a: ParamsArgs) -> Result<Outcome> {
    let l = param_ledger(a.delta, a.k)?;
    Ok(Outcome {
        inputs: json!({"delta": a.delta, "k": a.k}),
        verdicts: json!({"ledger": to_value(&l)}),
        witnesses: Value::Null,
        stats: Value::Null,
        exit: EXIT_OK,
    })
}
