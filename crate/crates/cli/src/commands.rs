//! The commands, their JSON and text reports, and cached dispatch.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use brauerlift_core::algebra::{self, Algebra};
use brauerlift_core::burnside::{
    completed_basis, dress_idempotents, two_sided, BurnsideRing, SpanComposer, SpanKind, SpanSpace,
};
use brauerlift_core::coeff::{choose_coefficient_field, field_of_size, FieldSpec, GaloisRing};
use brauerlift_core::galgebra::chars::{block_partition, BoundTable, CharacterTable};
use brauerlift_core::galgebra::{brauer_correspondent, Blocks, GroupAlgebra};
use brauerlift_core::groups::perm::format_cycles;
use brauerlift_core::groups::{GSet, GroupLimits, PermGroup, Subgroup};
use brauerlift_core::idemlift::{
    burnside_witness, burnside_witnesses, left_multiplication_matrix, lift_idempotent, lift_primitive_idempotent,
    BurnsideWitness, DoubleBurnside, Surjection,
};
use brauerlift_core::modrep::pims::{block_pims, constituent_labels, lattice_constituents};
use brauerlift_core::modrep::tree::brauer_tree;
use brauerlift_core::rouquier::{self, build_complex, verify_tilting, BlockPair, HomLattice, RouquierError, Strategy, TwoTermComplex};
use clap::{Subcommand, ValueEnum};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde_json::{json, Value};

use crate::input::{self, FIXTURES};
use crate::json::{self as js, LiftInput, RingJson};
use crate::{cache, CliError, Report, RunConfig, SCHEMA_VERSION};

/// A block: the principal one or an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockSel {
    Principal,
    Index(usize),
    All,
}

impl FromStr for BlockSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "principal" => Ok(BlockSel::Principal),
            "all" => Ok(BlockSel::All),
            _ => s.parse().map(BlockSel::Index).map_err(|_| format!("expected `principal`, `all` or an index, found `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpanSet {
    /// Spans of the one-point G-set: the Burnside ring.
    Point,
    /// Spans of `G` as a `G × G`-set: the double Burnside algebra.
    Regular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Explicit,
    Search,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum BurnsideOp {
    /// Table of marks.
    Marks,
    /// Dress idempotents of the p-local Burnside ring.
    Idempotents,
    /// Basis of the completed Burnside ring.
    Basis,
    /// Composition of two spans given by integer coordinates on the orbit basis.
    Compose {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        left: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        right: Vec<i64>,
        #[arg(long, value_enum, default_value = "point")]
        set: SpanSet,
        /// Restrict to spans through p-subgroups.
        #[arg(long)]
        completed: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum RouquierOp {
    /// Builds a two-term complex for a block and its Brauer correspondent and
    /// verifies that it is tilting.
    Verify {
        #[arg(long, value_enum, default_value = "search")]
        strategy: StrategyArg,
        /// Index of the projective of the block (explicit strategy).
        #[arg(long = "P", alias = "big-pim")]
        big_pim: Option<usize>,
        /// Index of the projective of the correspondent (explicit strategy).
        #[arg(long = "Q", alias = "local-pim")]
        local_pim: Option<usize>,
        #[arg(long, default_value = "principal")]
        block: BlockSel,
        /// Replace the differential `d` by `p·d`, which is never surjective.
        #[arg(long)]
        degenerate: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum FixturesOp {
    /// Names, degrees and orders of the fixtures.
    List,
    /// Parses every fixture and checks orders and character tables.
    Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Block idempotents of the group algebra over GR(q, N).
    Blocks,
    /// Defect and defect group of a block.
    DefectGroup {
        #[arg(long, default_value = "principal")]
        block: BlockSel,
    },
    /// Brauer correspondent in the normalizer of the defect group.
    Correspondent {
        #[arg(long, default_value = "principal")]
        block: BlockSel,
    },
    /// Brauer tree of a block with cyclic defect group.
    BrauerTree {
        #[arg(long, default_value = "principal")]
        block: BlockSel,
    },
    /// Tables of marks, Dress idempotents and span composition.
    Burnside {
        #[command(subcommand)]
        op: BurnsideOp,
    },
    /// Lifts an idempotent along a surjection of algebras read from JSON.
    LiftIdem {
        #[arg(long)]
        input: PathBuf,
        /// Require and certify a primitive idempotent.
        #[arg(long)]
        primitive: bool,
    },
    /// Burnside-level idempotents linearizing to block idempotents of (Z/p^N)[G].
    Witness {
        #[arg(long, default_value = "all")]
        block: BlockSel,
    },
    /// Two-term tilting complexes between a block and its Brauer correspondent.
    Rouquier {
        #[command(subcommand)]
        op: RouquierOp,
    },
    /// The built-in groups and character tables.
    Fixtures {
        #[command(subcommand)]
        op: FixturesOp,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Blocks => "blocks",
            Command::DefectGroup { .. } => "defect-group",
            Command::Correspondent { .. } => "correspondent",
            Command::BrauerTree { .. } => "brauer-tree",
            Command::Burnside { op: BurnsideOp::Marks } => "burnside marks",
            Command::Burnside { op: BurnsideOp::Idempotents } => "burnside idempotents",
            Command::Burnside { op: BurnsideOp::Basis } => "burnside basis",
            Command::Burnside { op: BurnsideOp::Compose { .. } } => "burnside compose",
            Command::LiftIdem { .. } => "lift-idem",
            Command::Witness { .. } => "witness",
            Command::Rouquier { .. } => "rouquier verify",
            Command::Fixtures { op: FixturesOp::List } => "fixtures list",
            Command::Fixtures { op: FixturesOp::Check } => "fixtures check",
        }
    }
}

/// Runs a command, reading and writing the cache when a cache directory is set.
pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    let Some(dir) = cache::resolve_dir(cfg.cache_dir.as_deref()) else {
        return compute(cmd, cfg);
    };
    let Some(key) = cache_key(cmd, cfg)? else {
        return compute(cmd, cfg);
    };
    if let Some(hit) = cache::load(&dir, &key) {
        return Ok(hit);
    }
    let report = compute(cmd, cfg)?;
    cache::store(&dir, &key, &report)?;
    Ok(report)
}

/// Hash of every input that determines the report; `None` for commands not cached.
fn cache_key(cmd: &Command, cfg: &RunConfig) -> Result<Option<String>, CliError> {
    let op = format!("{cmd:?}|p={:?}|N={}|q={:?}|seed={}", cfg.p, cfg.precision, cfg.q, cfg.seed);
    match cmd {
        Command::Fixtures { .. } => Ok(None),
        Command::LiftIdem { input, .. } => {
            let text = std::fs::read_to_string(input).map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
            Ok(Some(cache::key(&text, None, &op)))
        }
        _ => {
            let src = input::load_sources(cfg.group()?, cfg.table.as_deref())?;
            Ok(Some(cache::key(&src.group, src.table.as_ref().map(|t| t.1.as_str()), &format!("{}|{op}", src.name))))
        }
    }
}

fn compute(cmd: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    let out = match cmd {
        Command::Fixtures { op } => return fixtures(op),
        Command::LiftIdem { input, primitive } => lift_idem(input, *primitive, cfg)?,
        _ => {
            let ctx = Context::load(cfg)?;
            match cmd {
                Command::Blocks => blocks(&ctx)?,
                Command::DefectGroup { block } => defect(&ctx, *block)?,
                Command::Correspondent { block } => correspondent(&ctx, *block)?,
                Command::BrauerTree { block } => tree(&ctx, *block)?,
                Command::Burnside { op } => burnside(&ctx, op)?,
                Command::Witness { block } => witness(&ctx, *block)?,
                Command::Rouquier { op } => rouquier_verify(&ctx, op)?,
                Command::LiftIdem { .. } | Command::Fixtures { .. } => unreachable!(),
            }
        }
    };
    Ok(envelope(cmd, cfg, out))
}

/// A command's result before it is wrapped with the configuration.
struct Outcome {
    result: Value,
    text: String,
    verdict: Option<bool>,
}

fn envelope(cmd: &Command, cfg: &RunConfig, out: Outcome) -> Report {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cmd.name(),
        "config": {
            "group": cfg.group,
            "p": cfg.p,
            "precision": cfg.precision,
            "q": cfg.q,
            "seed": cfg.seed,
        },
        "result": out.result,
    });
    let mut json = serde_json::to_string_pretty(&doc).expect("values serialize");
    json.push('\n');
    let mut text = out.text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Report { json, text, verdict: out.verdict }
}

fn compute_err(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

/// The group, its table and the working parameters of one run.
struct Context {
    cfg: RunConfig,
    name: String,
    group: Arc<PermGroup>,
    table: Option<CharacterTable>,
    p: u32,
}

impl Context {
    fn load(cfg: &RunConfig) -> Result<Self, CliError> {
        let p = cfg.prime()?;
        let src = input::load_sources(cfg.group()?, cfg.table.as_deref())?;
        let group = input::parse_group(&src.name, &src.group)?;
        let table = match &src.table {
            Some((file, csv)) => Some(input::parse_table(file, csv, group.degree())?),
            None => None,
        };
        Ok(Context { cfg: cfg.clone(), name: src.name, group, table, p })
    }

    /// `GR(q, N)`: `q` from the override, else the prime field or a splitting field.
    fn ring(&self, splitting: bool) -> Result<GaloisRing, CliError> {
        let spec = match self.cfg.q {
            Some(q) => field_of_size(self.p, q).map_err(compute_err)?,
            None if splitting => choose_coefficient_field(&self.group, self.p).map_err(compute_err)?,
            None => FieldSpec::prime(self.p),
        };
        GaloisRing::new(spec, self.cfg.precision).map_err(compute_err)
    }

    fn blocks(&self) -> Result<Blocks, CliError> {
        Blocks::new(&GroupAlgebra::new(self.ring(true)?, self.group.clone())).map_err(compute_err)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed)
    }

    fn bound<'a>(&self, table: &'a CharacterTable, blocks: &Blocks) -> Result<BoundTable<'a>, CliError> {
        BoundTable::new(table, &self.group, &blocks.center, blocks.algebra.ring()).map_err(compute_err)
    }
}

fn select(sel: BlockSel, blocks: &Blocks) -> Result<usize, CliError> {
    match sel {
        BlockSel::Principal => Ok(blocks.principal().index),
        BlockSel::Index(i) if i < blocks.blocks.len() => Ok(i),
        BlockSel::Index(i) => Err(CliError::Config(format!("block {i} does not exist ({} blocks)", blocks.blocks.len()))),
        BlockSel::All => Err(CliError::Config("this command needs a single block".into())),
    }
}

fn gens_of(g: &PermGroup, h: &Subgroup) -> Vec<String> {
    h.generating_set().iter().map(|&x| format_cycles(g.element(x))).collect()
}

fn ring_label(r: &GaloisRing) -> String {
    format!("GR({}^{}, {})", r.p(), r.precision(), r.degree())
}

fn blocks(ctx: &Context) -> Result<Outcome, CliError> {
    let blocks = ctx.blocks()?;
    let partition = match &ctx.table {
        Some(t) => Some(block_partition(&blocks, &ctx.bound(t, &blocks)?).map_err(compute_err)?),
        None => None,
    };
    let r = blocks.algebra.ring();
    let n = blocks.blocks.len();
    let mut text = format!("{n} block{} of {}[{}], |G| = {}\n", if n == 1 { "" } else { "s" }, ring_label(r), ctx.name, ctx.group.order());
    let mut list = Vec::new();
    for b in &blocks.blocks {
        let order = b.defect_group.as_ref().map(|d| d.order());
        let chars = partition.as_ref().map(|p| p[b.index].clone());
        list.push(json!({
            "index": b.index,
            "is_principal": b.is_principal,
            "defect": b.defect,
            "defect_group_order": order,
            "idempotent_support_size": b.support_size(&blocks.center),
            "dimension": b.dimension,
            "characters": chars,
        }));
        let _ = write!(
            text,
            "  block {}{}: defect {}, |D| = {}, rank {}",
            b.index,
            if b.is_principal { " (principal)" } else { "" },
            b.defect.map_or("?".into(), |d| d.to_string()),
            order.map_or("?".into(), |d| d.to_string()),
            b.dimension
        );
        if let Some(c) = chars {
            let _ = write!(text, ", characters {}", c.join(", "));
        }
        text.push('\n');
    }
    Ok(Outcome { result: json!({ "ring": js::ring_value(r), "group_order": ctx.group.order(), "blocks": list }), text, verdict: None })
}

fn defect_group_of(blocks: &Blocks, b: usize) -> Result<Subgroup, CliError> {
    blocks.blocks[b].defect_group.clone().ok_or_else(|| CliError::Compute(format!("block {b} has no defect group")))
}

fn defect(ctx: &Context, sel: BlockSel) -> Result<Outcome, CliError> {
    let blocks = ctx.blocks()?;
    let b = select(sel, &blocks)?;
    let d = defect_group_of(&blocks, b)?;
    let g = &ctx.group;
    let cyclic = d.elements().iter().any(|&x| g.element_order(x) as usize == d.order());
    let gens = gens_of(g, &d);
    let defect = blocks.blocks[b].defect;
    let text = format!(
        "block {b}: defect {}, defect group of order {}{}, generated by {}\n",
        defect.map_or("?".into(), |d| d.to_string()),
        d.order(),
        if cyclic { " (cyclic)" } else { "" },
        if gens.is_empty() { "()".to_string() } else { gens.join(", ") }
    );
    let result = json!({ "block": b, "defect": defect, "order": d.order(), "is_cyclic": cyclic, "generators": gens });
    Ok(Outcome { result, text, verdict: None })
}

fn correspondent(ctx: &Context, sel: BlockSel) -> Result<Outcome, CliError> {
    let blocks = ctx.blocks()?;
    let b = select(sel, &blocks)?;
    let d = defect_group_of(&blocks, b)?;
    let c = brauer_correspondent(&blocks, b, &d).map_err(compute_err)?;
    let local = &c.local.blocks[c.index];
    let text = format!(
        "block {b}: N_G(D) has order {} and {} blocks; the correspondent is block {} (defect {}, rank {})\n",
        c.normalizer.order(),
        c.local.blocks.len(),
        c.index,
        local.defect.map_or("?".into(), |d| d.to_string()),
        local.dimension
    );
    let result = json!({
        "block": b,
        "defect_group_order": d.order(),
        "normalizer_order": c.normalizer.order(),
        "normalizer_generators": gens_of(&ctx.group, &c.normalizer),
        "local_blocks": c.local.blocks.len(),
        "correspondent": {
            "index": c.index,
            "is_principal": local.is_principal,
            "defect": local.defect,
            "dimension": local.dimension,
        },
    });
    Ok(Outcome { result, text, verdict: None })
}

fn tree(ctx: &Context, sel: BlockSel) -> Result<Outcome, CliError> {
    let blocks = ctx.blocks()?;
    let b = select(sel, &blocks)?;
    let d = defect_group_of(&blocks, b)?;
    let r = blocks.algebra.ring();
    let res = blocks.algebra.residue();
    let e = algebra::reduce_vec(r, res.ring(), &blocks.idempotent(b));
    let pims = block_pims(&res, &e, &mut ctx.rng()).map_err(compute_err)?;
    let mut tree = brauer_tree(&ctx.group, &d, &pims.cartan).map_err(compute_err)?;
    let heads = pims.head_dims();
    let mut constituents = None;
    if let Some(t) = &ctx.table {
        let bound = ctx.bound(t, &blocks)?;
        let cons = pims
            .classes
            .iter()
            .map(|c| lattice_constituents(&blocks.algebra, &bound, &c.idempotent).map(|m| constituent_labels(&bound, &m)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(compute_err)?;
        let norm_of = |l: &str| t.rows.iter().position(|row| row.label == l).map_or(1, |i| bound.norms[i]);
        tree.label(&cons, norm_of).map_err(compute_err)?;
        constituents = Some(cons);
    }
    let shape = if tree.is_path() {
        "path"
    } else if tree.star_center().is_some() {
        "star"
    } else {
        "tree"
    };
    let pim_list: Vec<Value> = pims
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "index": i, "dim": c.dim(), "head": heads[i], "constituents": constituents.as_ref().map(|cs| cs[i].clone()) }))
        .collect();
    let mut text = format!(
        "block {b}: Brauer tree is a {shape} with {} edge{}, multiplicity {}, exceptional vertex {}\n",
        tree.edges.len(),
        if tree.edges.len() == 1 { "" } else { "s" },
        tree.multiplicity,
        tree.exceptional_vertex.map_or("none".into(), |v| v.to_string())
    );
    for &(v, w, k) in &tree.edges {
        let name = |x: usize| match tree.labels.as_ref().map(|l| l[x].join("+")) {
            Some(l) if !l.is_empty() => l,
            Some(_) => "∅".into(),
            None => format!("v{x}"),
        };
        let _ = writeln!(text, "  {} -- {}  (projective {k}: dim {}, head {})", name(v), name(w), pims.classes[k].dim(), heads[k]);
    }
    let result = json!({
        "block": b,
        "defect_group_order": d.order(),
        "shape": shape,
        "vertices": tree.vertices,
        "edges": tree.edges,
        "exceptional_vertex": tree.exceptional_vertex,
        "multiplicity": tree.multiplicity,
        "labels": tree.labels,
        "canonical_form": tree.canonical_form(),
        "cartan": pims.cartan.0,
        "pims": pim_list,
        "dot": tree.to_dot(),
    });
    Ok(Outcome { result, text, verdict: None })
}

fn burnside(ctx: &Context, op: &BurnsideOp) -> Result<Outcome, CliError> {
    let limits = GroupLimits::default();
    let g = &ctx.group;
    let p = ctx.p;
    match op {
        BurnsideOp::Marks => {
            let burn = BurnsideRing::new(g.clone(), &limits).map_err(compute_err)?;
            let t = &burn.table;
            let width = t.subgroup_labels.iter().map(|l| l.chars().count()).max().unwrap_or(1).max(4);
            let mut text = format!("table of marks of {} ({} subgroup classes)\n", ctx.name, t.len());
            for (l, row) in t.subgroup_labels.iter().zip(&t.matrix) {
                let _ = write!(text, "{l:>width$} |");
                for m in row {
                    let _ = write!(text, " {m:>4}");
                }
                text.push('\n');
            }
            let result = json!({ "subgroup_labels": t.subgroup_labels, "matrix": t.matrix });
            Ok(Outcome { result, text, verdict: None })
        }
        BurnsideOp::Idempotents => {
            let burn = BurnsideRing::new(g.clone(), &limits).map_err(compute_err)?;
            let r = ctx.ring(false)?;
            let es = dress_idempotents(&burn, p, &r).map_err(compute_err)?;
            let labels = &burn.table.subgroup_labels;
            let mut sum = algebra::zero(burn.rank());
            let mut orthogonal = true;
            for (i, a) in es.iter().enumerate() {
                sum = algebra::add(&r, &sum, &a.coefficients);
                for (j, b) in es.iter().enumerate() {
                    let prod = burn.product_gr(&r, &a.coefficients, &b.coefficients);
                    orthogonal &= if i == j { prod == a.coefficients } else { algebra::is_zero(&prod) };
                }
            }
            let sum_is_one = sum == burn.one_gr(&r);
            let p_integral = es.iter().all(|e| e.rational.iter().all(|q| q.denom() % p as i128 != 0));
            let list: Vec<Value> = es
                .iter()
                .map(|e| {
                    json!({
                        "perfect_class": labels[e.perfect_class],
                        "rational": e.rational.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                        "coefficients": js::vector(&r, &e.coefficients),
                    })
                })
                .collect();
            let text = format!(
                "{} Dress idempotents of the {p}-local Burnside ring of {} over {}: orthogonal {orthogonal}, sum to 1 {sum_is_one}, {p}-integral {p_integral}\n  perfect classes: {}\n",
                es.len(),
                ctx.name,
                ring_label(&r),
                es.iter().map(|e| labels[e.perfect_class].as_str()).collect::<Vec<_>>().join(", ")
            );
            let result = json!({
                "ring": js::ring_value(&r),
                "basis_labels": labels,
                "idempotents": list,
                "orthogonal": orthogonal,
                "sum_is_one": sum_is_one,
                "p_integral": p_integral,
            });
            Ok(Outcome { result, text, verdict: None })
        }
        BurnsideOp::Basis => {
            let burn = BurnsideRing::new(g.clone(), &limits).map_err(compute_err)?;
            let r = ctx.ring(false)?;
            let basis = completed_basis(&burn, p, &r).map_err(compute_err)?;
            let p_classes = g.p_subgroup_classes(p).len();
            let text = format!(
                "completed Burnside ring of {} at {p}: rank {} on {}\n",
                ctx.name,
                basis.rank(),
                basis.labels.iter().map(|l| format!("[G/{l}]")).collect::<Vec<_>>().join(", ")
            );
            let result = json!({
                "rank": basis.rank(),
                "basis_labels": basis.labels,
                "classes": basis.classes,
                "p_subgroup_classes": p_classes,
            });
            Ok(Outcome { result, text, verdict: None })
        }
        BurnsideOp::Compose { left, right, set, completed } => {
            let x = match set {
                SpanSet::Point => GSet::point(g),
                SpanSet::Regular => {
                    let (gamma, x) = two_sided(g).map_err(compute_err)?;
                    return compose(ctx, Arc::new(gamma), &x, left, right, *completed);
                }
            };
            compose(ctx, g.clone(), &x, left, right, *completed)
        }
    }
}

fn compose(ctx: &Context, g: Arc<PermGroup>, x: &GSet, a: &[i64], b: &[i64], completed: bool) -> Result<Outcome, CliError> {
    let kind = if completed { SpanKind::Completed(ctx.p) } else { SpanKind::Integral };
    let space = SpanSpace::new(g, x, x, kind, &GroupLimits::default()).map_err(compute_err)?;
    let n = space.dim();
    if a.len() != n || b.len() != n {
        return Err(CliError::Config(format!("spans need {n} coordinates on the basis {}", space.labels().join(", "))));
    }
    let composer = SpanComposer::new(&space, &space, &space).map_err(compute_err)?;
    let c = composer.compose_int(a, b);
    let (la, lb, lc) = (space.linearize_int(a), space.linearize_int(b), space.linearize_int(&c));
    let product: Vec<Vec<i64>> =
        lb.iter().map(|row| (0..la[0].len()).map(|j| (0..la.len()).map(|k| row[k] * la[k][j]).sum()).collect()).collect();
    let commutes = lc == product;
    let text = format!(
        "composite {:?} on the basis {}; linearization commutes with composition: {commutes}\n",
        c,
        space.labels().join(", ")
    );
    let result = json!({
        "basis_labels": space.labels(),
        "left": a,
        "right": b,
        "coefficients": c,
        "linearization_commutes": commutes,
    });
    Ok(Outcome { result, text, verdict: Some(commutes) })
}

fn lift_idem(path: &PathBuf, primitive: bool, _cfg: &RunConfig) -> Result<Outcome, CliError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{file}: {e}")))?;
    let spec: LiftInput = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse { file: file.clone(), line: e.line(), msg: e.to_string() })?;
    let r = spec.ring.ring()?;
    let source = spec.source.algebra(&r)?;
    let target = spec.target.algebra(&r)?;
    let m = js::to_mat(&r, &spec.map, source.dim())?;
    let goal = js::to_vector(&r, &spec.idempotent)?;
    let f = Surjection::new(&source, &target, m).map_err(compute_err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(_cfg.seed);
    let w = if primitive { lift_primitive_idempotent(&f, &goal, &mut rng) } else { lift_idempotent(&f, &goal, &mut rng) }
        .map_err(compute_err)?;
    let maps_to_target = f.apply(&w.idempotent) == goal;
    let idempotent = algebra::is_idempotent(&source, &w.idempotent);
    let text = format!(
        "lifted idempotent {:?}; idempotent {idempotent}, maps to the target {maps_to_target}\n{}",
        w.idempotent.iter().map(|&x| r.format(x)).collect::<Vec<_>>(),
        w.steps.iter().map(|s| format!("  {s}\n")).collect::<String>()
    );
    let result = json!({
        "ring": RingJson::of(&r),
        "idempotent": js::vector(&r, &w.idempotent),
        "unit": w.unit.as_ref().map(|u| js::vector(&r, u)),
        "steps": w.steps,
        "is_idempotent": idempotent,
        "maps_to_target": maps_to_target,
    });
    Ok(Outcome { result, text, verdict: Some(idempotent && maps_to_target) })
}

fn witness(ctx: &Context, sel: BlockSel) -> Result<Outcome, CliError> {
    let r = ctx.ring(false)?;
    let g = &ctx.group;
    let blocks = Blocks::new(&GroupAlgebra::new(r.clone(), g.clone())).map_err(compute_err)?;
    let which: Vec<usize> = match sel {
        BlockSel::All => (0..blocks.blocks.len()).collect(),
        s => vec![select(s, &blocks)?],
    };
    let mats: Vec<_> = which.iter().map(|&b| left_multiplication_matrix(g, &r, &blocks.idempotent(b))).collect();
    let limits = GroupLimits::default();
    let (gamma, x) = two_sided(g).map_err(compute_err)?;
    let space = SpanSpace::new(Arc::new(gamma), &x, &x, SpanKind::Completed(ctx.p), &limits).map_err(compute_err)?;
    let db = DoubleBurnside::new(space, &r, &limits).map_err(compute_err)?;
    let mut rng = ctx.rng();
    let ws: Vec<BurnsideWitness> = if mats.len() == 1 {
        vec![burnside_witness(&db, &mats[0], &mut rng).map_err(compute_err)?]
    } else {
        burnside_witnesses(&db, &mats, &mut rng).map_err(compute_err)?
    };
    let mut all_ok = true;
    let mut list = Vec::new();
    let mut text = format!("Burnside witnesses over {} for {} block(s) of {}\n", ring_label(&r), ws.len(), ctx.name);
    for (k, w) in ws.iter().enumerate() {
        let round_trip = db.space.linearize(&r, &w.coefficients) == mats[k];
        let idempotent = db.composer.compose_gr(&r, &w.coefficients, &w.coefficients) == w.coefficients;
        let orthogonal = ws
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .all(|(_, v)| algebra::is_zero(&db.composer.compose_gr(&r, &w.coefficients, &v.coefficients)));
        all_ok &= round_trip && idempotent && orthogonal;
        let _ = writeln!(
            text,
            "  block {}: linearizes to the block idempotent {round_trip}, idempotent {idempotent}, orthogonal to the others {orthogonal}",
            which[k]
        );
        list.push(json!({
            "block": which[k],
            "basis_labels": w.labels,
            "coefficients": js::vector(&r, &w.coefficients),
            "round_trip": round_trip,
            "idempotent": idempotent,
            "orthogonal": orthogonal,
            "steps": w.lift.steps,
        }));
    }
    let result = json!({ "ring": js::ring_value(&r), "span_basis_size": db.space.dim(), "witnesses": list });
    Ok(Outcome { result, text, verdict: Some(all_ok) })
}

fn rouquier_verify(ctx: &Context, op: &RouquierOp) -> Result<Outcome, CliError> {
    let RouquierOp::Verify { strategy, big_pim, local_pim, block, degenerate } = op;
    let blocks = ctx.blocks()?;
    let b = select(*block, &blocks)?;
    let mut rng = ctx.rng();
    let pair = BlockPair::new(&blocks, b, &mut rng).map_err(compute_err)?;
    let split = rouquier::extract_n0(&pair, &mut rng).map_err(compute_err)?;
    let strategy = match strategy {
        StrategyArg::Trivial => Strategy::Trivial,
        StrategyArg::Search => Strategy::Search,
        StrategyArg::Explicit => match (big_pim, local_pim) {
            (Some(i), Some(j)) => Strategy::Explicit { big_pim: *i, local_pim: *j },
            _ => return Err(CliError::Config("the explicit strategy needs --P and --Q".into())),
        },
    };
    let pims = |ps: &[rouquier::PimData]| ps.iter().enumerate().map(|(i, q)| json!({ "index": i, "dim": q.dim, "head": q.head })).collect::<Vec<_>>();
    let mut result = json!({
        "block": b,
        "defect_group_order": pair.defect_group.order(),
        "normalizer_order": pair.n().order(),
        "big_pims": pims(&pair.big_pims),
        "local_pims": pims(&pair.local_pims),
        "n0_rank": split.n0_rank,
        "summands": split.summands,
        "strategy": strategy,
    });
    let seed = ctx.cfg.seed;
    let cx = match build_complex(&pair, &split, strategy, seed) {
        Ok(cx) => cx,
        Err(RouquierError::NoCandidateFound { log }) => {
            result["complex"] = Value::Null;
            result["log"] = json!(log);
            result["verdict"] = json!(false);
            let text = format!("no two-term complex passed verification ({} candidates tried)\n", log.len());
            return Ok(Outcome { result, text, verdict: Some(false) });
        }
        Err(e) => return Err(compute_err(e)),
    };
    let cx = if *degenerate { scaled_by_p(&pair, &split, cx)? } else { cx };
    let report = verify_tilting(&cx, seed).map_err(compute_err)?;
    let hom_rank = match &cx.part {
        Some(part) => Some(HomLattice::new(&pair, &split.z, part.big_pim, part.local_pim).map_err(compute_err)?.rank()),
        None => None,
    };
    result["complex"] = json!({
        "big_pim": cx.part.as_ref().map(|p| p.big_pim),
        "local_pim": cx.part.as_ref().map(|p| p.local_pim),
        "hom_lattice_rank": hom_rank,
        "degenerate": degenerate,
    });
    result["log"] = json!(cx.log);
    result["report"] = serde_json::to_value(&report).expect("report serializes");
    result["verdict"] = json!(report.verdict);
    let side = |name: &str, s: &rouquier::SideReport| {
        format!(
            "  {name}: terms {:?}, d² = 0 {}, homology lengths {:?}, H₀ rank {} of {}, H₀ ≅ block {}\n",
            s.term_ranks,
            s.differential_squares_to_zero,
            s.homology_lengths,
            s.h0_rank.map_or("-".into(), |h| h.to_string()),
            s.block_rank,
            s.h0_is_block
        )
    };
    let shape = match &cx.part {
        Some(p) => format!("P{} ⊗ Q{} → N₀ (Hom rank {})", p.big_pim, p.local_pim, hom_rank.unwrap_or(0)),
        None => "N₀".into(),
    };
    let text = format!(
        "{}: block {b} of {} at precision {}, complex {shape}{}\n{}{}",
        if report.verdict { "TILTING" } else { "NOT TILTING" },
        ctx.name,
        report.precision,
        if *degenerate { " with d replaced by p·d" } else { "" },
        side("M ⊗ M^∨", &report.big_side),
        side("M^∨ ⊗ M", &report.local_side)
    );
    Ok(Outcome { result, text, verdict: Some(report.verdict) })
}

/// The same complex with differential `p·d`.
fn scaled_by_p(pair: &BlockPair, split: &rouquier::InductionSplit, cx: TwoTermComplex) -> Result<TwoTermComplex, CliError> {
    let part = cx.part.as_ref().ok_or_else(|| CliError::Config("--degenerate needs a complex with a projective term".into()))?;
    let lattice = HomLattice::new(pair, &split.z, part.big_pim, part.local_pim).map_err(compute_err)?;
    let r = &pair.ring;
    let x = algebra::scale(r, &part.x, r.from_i64(r.p() as i64));
    let mut out = TwoTermComplex::from_element(&lattice, pair, split, x);
    out.log = cx.log;
    out.log.push("differential multiplied by p".into());
    Ok(out)
}

fn fixtures(op: &FixturesOp) -> Result<Report, CliError> {
    let cmd = Command::Fixtures { op: op.clone() };
    let cfg = RunConfig { group: None, p: None, ..RunConfig::new("", 2) };
    let mut list = Vec::new();
    let mut text = String::new();
    let mut all_ok = true;
    for f in FIXTURES {
        let g = input::parse_group(f.name, f.group);
        match op {
            FixturesOp::List => {
                let g = g?;
                let _ = writeln!(text, "{:<8} degree {:<2} order {:<4} table {}", f.name, g.degree(), g.order(), f.table.is_some());
                list.push(json!({ "name": f.name, "degree": g.degree(), "order": g.order(), "has_table": f.table.is_some() }));
            }
            FixturesOp::Check => {
                let problem = check_fixture(f, g).err();
                all_ok &= problem.is_none();
                let _ = writeln!(text, "{:<8} {}", f.name, problem.as_deref().unwrap_or("ok"));
                list.push(json!({ "name": f.name, "ok": problem.is_none(), "problem": problem }));
            }
        }
    }
    let verdict = (*op == FixturesOp::Check).then_some(all_ok);
    Ok(envelope(&cmd, &cfg, Outcome { result: json!({ "fixtures": list }), text, verdict }))
}

fn check_fixture(f: &input::Fixture, g: Result<Arc<PermGroup>, CliError>) -> Result<(), String> {
    let g = g.map_err(|e| e.to_string())?;
    if g.order() != f.order {
        return Err(format!("order {} ≠ {}", g.order(), f.order));
    }
    if let Some(csv) = f.table {
        let t = input::parse_table(&format!("{}.csv", f.name), csv, g.degree()).map_err(|e| e.to_string())?;
        t.check(g.order() as u64).map_err(|e| e.to_string())?;
        t.match_classes(&g, &g.conjugacy_classes()).map_err(|e| e.to_string())?;
    }
    Ok(())
}
