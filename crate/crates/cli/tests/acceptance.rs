//! Acceptance run: every criterion is checked in order and reported on one
//! line as PASS or FAIL together with its running time and limit.

use std::panic::{self, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use brauerlift::input::{fixture, parse_group, parse_table};
use brauerlift_core::algebra::{self, Algebra};
use brauerlift_core::burnside::{
    completed_basis, dress_idempotents, table_of_marks, two_sided, BurnsideRing, SpanComposer, SpanKind, SpanSpace,
};
use brauerlift_core::coeff::mat::{self, Mat};
use brauerlift_core::coeff::{
    choose_coefficient_field, field_of_size, hensel_idempotent_fixpoint, FieldSpec, GaloisRing, Gr, PrecisionTower,
};
use brauerlift_core::galgebra::chars::{block_partition, BoundTable, CharacterTable};
use brauerlift_core::galgebra::{brauer_correspondent, Blocks, GroupAlgebra};
use brauerlift_core::groups::{GSet, GroupLimits, PermGroup};
use brauerlift_core::idemlift::{burnside_witnesses, left_multiplication_matrix, DoubleBurnside};
use brauerlift_core::modrep::pims::{block_pims, constituent_labels, lattice_constituents};
use brauerlift_core::modrep::tree::brauer_tree;
use brauerlift_core::modrep::{self, RepModule};
use brauerlift_core::rouquier::{
    self, build_complex, verify_tilting, BlockPair, HomLattice, InductionSplit, Strategy as Construction,
    TwoTermComplex,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

const CASES: u32 = 500;

fn group(name: &str) -> Arc<PermGroup> {
    let f = fixture(name).unwrap();
    parse_group(name, f.group).unwrap()
}

fn table(name: &str, g: &PermGroup) -> CharacterTable {
    let f = fixture(name).unwrap();
    parse_table(name, f.table.unwrap(), g.degree()).unwrap()
}

fn splitting(g: &Arc<PermGroup>, p: u32, n: u32) -> GroupAlgebra {
    GroupAlgebra::new(GaloisRing::new(choose_coefficient_field(g, p).unwrap(), n).unwrap(), g.clone())
}

fn zp(p: u32, n: u32) -> GaloisRing {
    GaloisRing::new(FieldSpec::prime(p), n).unwrap()
}

fn sorted(v: &[String]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn strings(v: &[&str]) -> Vec<String> {
    sorted(&v.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

/// The fixtures with the primes they are checked at.
const FIXTURE_PRIMES: &[(&str, u32)] =
    &[("psl27", 7), ("borel21", 7), ("c7", 7), ("s3", 3), ("s3", 2), ("a4", 3), ("a4", 2), ("trivial", 5)];

type Outcome = Result<String, String>;

type Suite = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let g = group("psl27");
    let ga = splitting(&g, 7, 6);
    let blocks = Blocks::new(&ga).map_err(|e| e.to_string())?;
    ensure(blocks.blocks.len() == 2, || format!("{} blocks", blocks.blocks.len()))?;
    ensure(blocks.are_orthogonal_and_complete(), || "block idempotents not orthogonal and complete".into())?;
    let t = table("psl27", &g);
    let bound = BoundTable::new(&t, &g, &blocks.center, ga.ring()).map_err(|e| e.to_string())?;
    let mut parts: Vec<Vec<String>> = block_partition(&blocks, &bound).map_err(|e| e.to_string())?.iter().map(|p| sorted(p)).collect();
    parts.sort();
    let mut want = vec![strings(&["1", "8", "6", "3·3̄"]), strings(&["7"])];
    want.sort();
    ensure(parts == want, || format!("partition {parts:?}"))?;
    let shown: Vec<String> = parts.iter().map(|p| format!("{{{}}}", p.join(", "))).collect();
    Ok(format!("2 blocks over GR({}, 6), characters {}", ga.ring().q(), shown.join(" and ")))
}

fn criterion_2() -> Outcome {
    let g = group("psl27");
    let blocks = Blocks::new(&splitting(&g, 7, 6)).map_err(|e| e.to_string())?;
    let principal = blocks.principal();
    let st = blocks.blocks.iter().find(|b| !b.is_principal).ok_or("no second block")?;
    let (d0, d1) = (st.defect_group.clone().ok_or("no defect group")?, principal.defect_group.clone().ok_or("no defect group")?);
    ensure(st.defect == Some(0) && d0.order() == 1, || format!("Steinberg block: defect {:?}, |D| = {}", st.defect, d0.order()))?;
    ensure(principal.defect == Some(1) && d1.order() == 7, || format!("principal block: defect {:?}, |D| = {}", principal.defect, d1.order()))?;
    let cyclic = d1.elements().iter().any(|&x| g.element_order(x) as usize == 7);
    ensure(cyclic, || "principal defect group is not cyclic".into())?;
    let corr = brauer_correspondent(&blocks, principal.index, &d1).map_err(|e| e.to_string())?;
    ensure(corr.normalizer.order() == 21, || format!("|N_G(D)| = {}", corr.normalizer.order()))?;
    Ok("defects 0 and 1, defect groups 1 and C7, |N_G(C7)| = 21".into())
}

fn criterion_3() -> Outcome {
    let b = group("borel21");
    let ga = GroupAlgebra::new(GaloisRing::new(field_of_size(7, 7).unwrap(), 6).unwrap(), b.clone());
    let blocks = Blocks::new(&ga).map_err(|e| e.to_string())?;
    ensure(blocks.blocks.len() == 1, || format!("{} blocks", blocks.blocks.len()))?;
    ensure(blocks.principal().defect == Some(1), || format!("defect {:?}", blocks.principal().defect))?;
    Ok("Z_7[B] has a single block, of defect 1".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = group("psl27");
    let ga = splitting(&g, 7, 1);
    let blocks = Blocks::new(&ga).map_err(|e| e.to_string())?;
    let p = blocks.principal();
    let d = p.defect_group.clone().ok_or("no defect group")?;
    let pims = block_pims(&ga, &blocks.idempotent(p.index), &mut rng).map_err(|e| e.to_string())?;
    let tree = brauer_tree(&g, &d, &pims.cartan).map_err(|e| e.to_string())?;
    let ex = tree.exceptional_vertex.ok_or("no exceptional vertex")?;
    ensure(tree.is_path() && tree.edges.len() == 3, || format!("G tree edges {:?}", tree.edges))?;
    ensure(tree.degree(ex) == 1, || "exceptional vertex of the G tree is not an end".into())?;
    // m = (|D| − 1)/e for a cyclic defect group
    ensure(tree.multiplicity == 2 && tree.multiplicity as usize * tree.edges.len() == d.order() - 1, || format!("G multiplicity {}", tree.multiplicity))?;

    let b = group("borel21");
    let ba = splitting(&b, 7, 1);
    let bblocks = Blocks::new(&ba).map_err(|e| e.to_string())?;
    let bd = bblocks.principal().defect_group.clone().ok_or("no defect group")?;
    let bpims = block_pims(&ba, &bblocks.idempotent(0), &mut rng).map_err(|e| e.to_string())?;
    let btree = brauer_tree(&b, &bd, &bpims.cartan).map_err(|e| e.to_string())?;
    ensure(btree.edges.len() == 3, || format!("B tree edges {:?}", btree.edges))?;
    ensure(btree.star_center().is_some() && btree.star_center() == btree.exceptional_vertex, || "B tree is not a star with exceptional center".into())?;
    ensure(btree.multiplicity == 2 && btree.multiplicity as usize * btree.edges.len() == bd.order() - 1, || format!("B multiplicity {}", btree.multiplicity))?;
    Ok("G: path with 3 edges, exceptional end, m = 2; B: 3-edge star, exceptional center, m = 2".into())
}

fn criterion_5() -> Outcome {
    let g = group("psl27");
    let lattice = splitting(&g, 7, 4);
    let blocks = Blocks::new(&lattice).map_err(|e| e.to_string())?;
    let res = lattice.residue();
    let t = table("psl27", &g);
    let bound = BoundTable::new(&t, &g, &blocks.center, lattice.ring()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut found = Vec::new();
    for b in 0..blocks.blocks.len() {
        let e = algebra::reduce_vec(lattice.ring(), res.ring(), &blocks.idempotent(b));
        let pims = block_pims(&res, &e, &mut rng).map_err(|e| e.to_string())?;
        let heads = pims.head_dims();
        for (c, head) in pims.classes.iter().zip(heads) {
            let m = lattice_constituents(&lattice, &bound, &c.idempotent).map_err(|e| e.to_string())?;
            found.push((head, sorted(&constituent_labels(&bound, &m))));
        }
    }
    found.sort();
    let mut want =
        vec![(7, strings(&["7"])), (1, strings(&["1", "6"])), (5, strings(&["6", "8"])), (3, strings(&["8", "3·3̄"]))];
    want.sort();
    ensure(found == want, || format!("PIMs {found:?}"))?;
    let shown: Vec<String> = found.iter().map(|(h, c)| format!("{h} ↔ {{{}}}", c.join(", "))).collect();
    Ok(format!("head ↔ constituents: {}", shown.join("; ")))
}

struct Psl27Pair {
    pair: BlockPair,
    split: InductionSplit,
    big_pim: usize,
}

/// The principal block of PSL2(7) at p = 7, N = 4 with its correspondent, and
/// the head-5 projective.
fn psl27_pair() -> &'static Psl27Pair {
    static CELL: OnceLock<Psl27Pair> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = group("psl27");
        let blocks = Blocks::new(&splitting(&g, 7, 4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pair = BlockPair::new(&blocks, blocks.principal().index, &mut rng).unwrap();
        let split = rouquier::extract_n0(&pair, &mut rng).unwrap();
        let big_pim = pair.big_pims.iter().position(|p| p.head == 5).unwrap();
        Psl27Pair { pair, split, big_pim }
    })
}

/// The explicit complex `P ⊗ Q → N₀`: the rank-5 choices of `Q` in index order,
/// keeping the first that verifies. Returns the complex and its report.
fn explicit_complex() -> &'static Result<(TwoTermComplex, usize), String> {
    static CELL: OnceLock<Result<(TwoTermComplex, usize), String>> = OnceLock::new();
    CELL.get_or_init(|| {
        let s = psl27_pair();
        let mut tried = Vec::new();
        for q in 0..s.pair.local_pims.len() {
            let rank = HomLattice::new(&s.pair, &s.split.z, s.big_pim, q).map_err(|e| e.to_string())?.rank();
            if rank != 5 {
                continue;
            }
            let strategy = Construction::Explicit { big_pim: s.big_pim, local_pim: q };
            match build_complex(&s.pair, &s.split, strategy, 0) {
                Ok(cx) if verify_tilting(&cx, 0).map_err(|e| e.to_string())?.verdict => return Ok((cx, q)),
                Ok(_) => tried.push(format!("Q{q}: not tilting")),
                Err(e) => tried.push(format!("Q{q}: {e}")),
            }
        }
        Err(format!("no rank-5 choice of Q verifies ({})", tried.join("; ")))
    })
}

/// `GR[G]·e` as a left module.
fn pim_module(ga: &GroupAlgebra, e: &[Gr]) -> RepModule {
    let vecs: Vec<_> = (0..ga.dim() as u32).map(|g| ga.left_by(g, e)).collect();
    let keep = mat::independent_cols_mod_p(ga.ring(), &Mat::from_cols(ga.dim(), &vecs));
    let basis: Vec<_> = keep.iter().map(|&i| vecs[i].clone()).collect();
    RepModule::left_ideal(ga, &basis).unwrap()
}

fn criterion_6() -> Outcome {
    let s = psl27_pair();
    let (_, q) = explicit_complex().as_ref().map_err(Clone::clone)?;
    let lattice = HomLattice::new(&s.pair, &s.split.z, s.big_pim, *q).map_err(|e| e.to_string())?;
    let res = pim_module(&s.pair.big, &s.pair.big_pims[s.big_pim].idempotent).restrict(s.pair.local.group_arc(), &s.pair.embedding);
    let homs = modrep::hom(&res, &pim_module(&s.pair.local, &s.pair.local_pims[*q].idempotent)).map_err(|e| e.to_string())?;
    ensure(lattice.rank() == 5, || format!("lattice rank {}", lattice.rank()))?;
    ensure(homs.len() == 5, || format!("Hom over the residue field has dimension {}", homs.len()))?;
    Ok(format!("rank Hom_B(Res P, Q{q}) = 5 by lattice and by modules, with Q{q} the tilting choice"))
}

fn criterion_7() -> Outcome {
    let limits = GroupLimits::default();
    let mut ranks = Vec::new();
    for &(name, p) in FIXTURE_PRIMES {
        let g = group(name);
        let burn = BurnsideRing::new(g.clone(), &limits).map_err(|e| e.to_string())?;
        let r = zp(p, 4);
        let es = dress_idempotents(&burn, p, &r).map_err(|e| e.to_string())?;
        let mut sum = algebra::zero(burn.rank());
        for (i, a) in es.iter().enumerate() {
            sum = algebra::add(&r, &sum, &a.coefficients);
            ensure(a.rational.iter().all(|x| x.denom() % p as i128 != 0), || format!("{name}@{p}: idempotent {i} is not {p}-integral"))?;
            for (j, b) in es.iter().enumerate() {
                let prod = burn.product_gr(&r, &a.coefficients, &b.coefficients);
                let ok = if i == j { prod == a.coefficients } else { algebra::is_zero(&prod) };
                ensure(ok, || format!("{name}@{p}: idempotents {i}, {j} fail orthogonality"))?;
            }
        }
        ensure(sum == burn.one_gr(&r), || format!("{name}@{p}: idempotents do not sum to 1"))?;
        if matches!((name, p), ("psl27", 7) | ("s3", 3)) {
            let rank = completed_basis(&burn, p, &r).map_err(|e| e.to_string())?.rank();
            let oracle = g.p_subgroup_classes(p).len();
            ensure(rank == 2 && rank == oracle, || format!("{name}@{p}: completed rank {rank}, {oracle} classes of {p}-subgroups"))?;
            ranks.push(format!("{name}@{p}: {rank}"));
        }
    }
    Ok(format!("completed ranks {}; Dress idempotents orthogonal, p-integral and summing to 1 on all fixtures", ranks.join(", ")))
}

fn criterion_8() -> Outcome {
    let limits = GroupLimits::default();
    let mut count = 0;
    for &(name, p) in FIXTURE_PRIMES {
        let g = group(name);
        let r = zp(p, 4);
        let blocks = Blocks::new(&GroupAlgebra::new(r.clone(), g.clone())).map_err(|e| e.to_string())?;
        let mats: Vec<Mat> = (0..blocks.blocks.len()).map(|b| left_multiplication_matrix(&g, &r, &blocks.idempotent(b))).collect();
        let (gamma, x) = two_sided(&g).map_err(|e| e.to_string())?;
        let space = SpanSpace::new(Arc::new(gamma), &x, &x, SpanKind::Completed(p), &limits).map_err(|e| e.to_string())?;
        let db = DoubleBurnside::new(space, &r, &limits).map_err(|e| e.to_string())?;
        for seed in 1..=3 {
            let ws = burnside_witnesses(&db, &mats, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(|e| format!("{name}@{p}: {e}"))?;
            for (a, w) in ws.iter().enumerate() {
                ensure(db.space.linearize(&r, &w.coefficients) == mats[a], || format!("{name}@{p} block {a}: no round trip"))?;
                for (b, v) in ws.iter().enumerate() {
                    let prod = db.composer.compose_gr(&r, &w.coefficients, &v.coefficients);
                    let ok = if a == b { prod == w.coefficients } else { algebra::is_zero(&prod) };
                    ensure(ok, || format!("{name}@{p}: witnesses {a}, {b} fail orthogonality"))?;
                }
            }
        }
        count += mats.len();
    }
    Ok(format!("{count} block witnesses round trip at N = 4 for seeds 1 to 3"))
}

fn criterion_9() -> Outcome {
    let s = psl27_pair();
    let (cx, q) = explicit_complex().as_ref().map_err(Clone::clone)?;
    let part = cx.part.as_ref().ok_or("explicit complex has no projective term")?;
    ensure(verify_tilting(cx, 1).map_err(|e| e.to_string())?.verdict, || "explicit complex does not verify".into())?;
    let searched = build_complex(&s.pair, &s.split, Construction::Search, 0).map_err(|e| format!("search: {e}"))?;
    let found = verify_tilting(&searched, 0).map_err(|e| e.to_string())?;
    ensure(found.verdict, || "search returned a complex that does not verify".into())?;
    let lattice = HomLattice::new(&s.pair, &s.split.z, part.big_pim, part.local_pim).map_err(|e| e.to_string())?;
    let r = &s.pair.ring;
    let bad = TwoTermComplex::from_element(&lattice, &s.pair, &s.split, algebra::scale(r, &part.x, r.from_i64(r.p() as i64)));
    let control = verify_tilting(&bad, 0).map_err(|e| e.to_string())?;
    ensure(!control.verdict, || "negative control p·x verified".into())?;
    let shape = searched.part.as_ref().map_or("N₀".to_string(), |p| format!("P{} ⊗ Q{}", p.big_pim, p.local_pim));
    Ok(format!("explicit P{} ⊗ Q{q} tilting, search found {shape} tilting, p·x not tilting", part.big_pim))
}

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm))
}

fn suite<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner().run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn ring_pool() -> Vec<GaloisRing> {
    vec![
        zp(7, 6),
        GaloisRing::new(field_of_size(7, 49).unwrap(), 6).unwrap(),
        GaloisRing::new(field_of_size(2, 8).unwrap(), 10).unwrap(),
        GaloisRing::new(field_of_size(3, 27).unwrap(), 5).unwrap(),
    ]
}

fn galois_ring_axioms() -> Result<(), String> {
    let rings = ring_pool();
    suite("Galois-ring axioms", (0..rings.len(), any::<u64>()), |(k, seed)| {
        let r = &rings[k];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (r.random(&mut rng), r.random(&mut rng), r.random(&mut rng));
        prop_assert_eq!(r.add(x, y), r.add(y, x));
        prop_assert_eq!(r.mul(x, y), r.mul(y, x));
        prop_assert_eq!(r.add(r.add(x, y), z), r.add(x, r.add(y, z)));
        prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
        prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
        prop_assert_eq!(r.add(x, r.neg(x)), r.zero());
        prop_assert_eq!(r.mul(x, r.one()), x);
        let u = r.random_unit(&mut rng);
        prop_assert!(r.is_one(r.mul(u, r.inv(u).unwrap())));
        let tower = PrecisionTower::new(r.clone());
        let m = 1 + (seed % r.precision() as u64) as u32;
        let low = tower.level(m).unwrap();
        let red = |a| tower.reduce(a, m).unwrap();
        prop_assert_eq!(red(r.mul(x, y)), low.mul(red(x), red(y)));
        prop_assert_eq!(red(r.add(x, y)), low.add(red(x), red(y)));
        Ok(())
    })
}

fn hensel_lifting() -> Result<(), String> {
    let r = zp(5, 6);
    let f = r.residue_field();
    suite("Hensel convergence and uniqueness", (any::<u64>(), 1usize..4), |(seed, k)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 4;
        let mut random = |scale: i64| {
            let mut m = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = r.mul_int(r.random(&mut rng), scale);
                }
            }
            m
        };
        let (u, uinv) = loop {
            let u = random(1);
            if let Some(inv) = mat::inverse(&r, &u) {
                break (u, inv);
            }
        };
        let mut d = Mat::zeros(n, n);
        for i in 0..k {
            d[(i, i)] = r.one();
        }
        let noise = random(5);
        let e = u.mul(&r, &d).mul(&r, &uinv).add(&r, &noise);
        let lifted = hensel_idempotent_fixpoint(&r, &e);
        prop_assert_eq!(lifted.mul(&r, &lifted), lifted.clone());
        prop_assert_eq!(lifted.reduce(&r, &f), e.reduce(&r, &f));
        prop_assert_eq!(mat::rank_mod_p(&r, &lifted), k);
        let nearby = lifted.add(&r, &lifted.mul(&r, &noise).mul(&r, &lifted));
        prop_assert_eq!(hensel_idempotent_fixpoint(&r, &nearby), lifted);
        Ok(())
    })
}

fn krull_schmidt() -> Result<(), String> {
    let fp = |p| zp(p, 1);
    let (s3, a4, psl, b) = (group("s3"), group("a4"), group("psl27"), group("borel21"));
    let pool = [RepModule::regular(fp(3), s3.clone()),
        RepModule::regular(fp(2), s3),
        RepModule::permutation(fp(3), a4.clone(), &GSet::natural(&a4)),
        RepModule::permutation(fp(2), a4.clone(), &GSet::natural(&a4)),
        RepModule::permutation(fp(7), psl.clone(), &GSet::natural(&psl)),
        RepModule::permutation(fp(7), b.clone(), &GSet::natural(&b)),
        RepModule::regular(fp(7), group("c7"))];
    suite("Krull–Schmidt reproducibility", (0..pool.len(), any::<u64>(), any::<u64>()), |(k, s1, s2)| {
        let m = &pool[k];
        let a = modrep::decompose(m, &mut ChaCha8Rng::seed_from_u64(s1)).unwrap();
        let b = modrep::decompose(m, &mut ChaCha8Rng::seed_from_u64(s2)).unwrap();
        prop_assert_eq!(a.class_profile(), b.class_profile());
        prop_assert_eq!(a.summands.iter().map(|s| s.module.dim()).sum::<usize>(), m.dim());
        let mut rng = ChaCha8Rng::seed_from_u64(s1 ^ s2);
        let mut used = vec![false; b.summands.len()];
        for x in &a.summands {
            let hit = (0..b.summands.len())
                .find(|&j| !used[j] && modrep::module_iso(&x.module, &b.summands[j].module, &mut rng).unwrap().is_some());
            prop_assert!(hit.is_some());
            used[hit.unwrap()] = true;
        }
        Ok(())
    })
}

fn marks_multiplicativity() -> Result<(), String> {
    let limits = GroupLimits::default();
    let pool: Vec<BurnsideRing> =
        ["s3", "a4", "borel21", "psl27"].iter().map(|n| BurnsideRing::new(group(n), &limits).unwrap()).collect();
    suite("marks multiplicativity", (0..pool.len(), proptest::collection::vec(-4i64..5, 32)), |(k, seed)| {
        let burn = &pool[k];
        let n = burn.rank();
        let s: Vec<i64> = (0..n).map(|i| seed[i % 32]).collect();
        let t: Vec<i64> = (0..n).map(|i| seed[(i + 11) % 32]).collect();
        let (ms, mt) = (burn.table.marks(&s), burn.table.marks(&t));
        let rhs: Vec<i64> = ms.iter().zip(&mt).map(|(a, b)| a * b).collect();
        prop_assert_eq!(burn.table.marks(&burn.product(&s, &t)), rhs);
        Ok(())
    })
}

fn cosets_of_order(g: &PermGroup, order: usize) -> GSet {
    let t = table_of_marks(g, &GroupLimits::default()).unwrap();
    GSet::cosets(g, &t.classes.iter().find(|c| c.rep.order() == order).unwrap().rep)
}

fn span_composition() -> Result<(), String> {
    let limits = GroupLimits::default();
    let (s3, a4) = (group("s3"), group("a4"));
    let sets = vec![
        (s3.clone(), cosets_of_order(&s3, 2), GSet::regular(&s3), cosets_of_order(&s3, 3)),
        (s3.clone(), GSet::point(&s3), cosets_of_order(&s3, 2), cosets_of_order(&s3, 2)),
        (a4.clone(), GSet::natural(&a4), cosets_of_order(&a4, 2), cosets_of_order(&a4, 3)),
        (a4.clone(), cosets_of_order(&a4, 4), GSet::natural(&a4), GSet::point(&a4)),
    ];
    let pool: Vec<(SpanSpace, SpanSpace, SpanSpace, SpanComposer)> = sets
        .into_iter()
        .map(|(g, x, y, z)| {
            let first = SpanSpace::new(g.clone(), &x, &y, SpanKind::Integral, &limits).unwrap();
            let second = SpanSpace::new(g.clone(), &y, &z, SpanKind::Integral, &limits).unwrap();
            let target = SpanSpace::new(g, &x, &z, SpanKind::Integral, &limits).unwrap();
            let composer = SpanComposer::new(&first, &second, &target).unwrap();
            (first, second, target, composer)
        })
        .collect();
    suite("span composition vs matrix product", (0..pool.len(), proptest::collection::vec(-3i64..4, 64)), |(k, seed)| {
        let (first, second, target, composer) = &pool[k];
        let a: Vec<i64> = (0..first.dim()).map(|i| seed[i % 64]).collect();
        let b: Vec<i64> = (0..second.dim()).map(|i| seed[(i + 31) % 64]).collect();
        let (la, lb) = (first.linearize_int(&a), second.linearize_int(&b));
        let product: Vec<Vec<i64>> =
            lb.iter().map(|row| (0..la[0].len()).map(|j| (0..la.len()).map(|i| row[i] * la[i][j]).sum()).collect()).collect();
        prop_assert_eq!(target.linearize_int(&composer.compose_int(&a, &b)), product);
        Ok(())
    })
}

fn small_pair(name: &str, p: u32) -> (BlockPair, InductionSplit) {
    let g = group(name);
    let blocks = Blocks::new(&splitting(&g, p, 3)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pair = BlockPair::new(&blocks, blocks.principal().index, &mut rng).unwrap();
    let split = rouquier::extract_n0(&pair, &mut rng).unwrap();
    (pair, split)
}

fn precision_monotonicity() -> Result<(), String> {
    let pool = [small_pair("a4", 3), small_pair("c7", 7), small_pair("s3", 3)];
    let strategy = (0..pool.len(), 0usize..4, 0usize..4, proptest::collection::vec(-9i64..10, 1..6), any::<u64>());
    suite("precision monotonicity", strategy, |(k, i, j, coeffs, seed)| {
        let (pair, split) = &pool[k];
        let (i, j) = (i % pair.big_pims.len(), j % pair.local_pims.len());
        let lattice = HomLattice::new(pair, &split.z, i, j).unwrap();
        let cx = if lattice.rank() == 0 {
            TwoTermComplex::trivial(pair, split)
        } else {
            let r = &pair.ring;
            let c: Vec<_> = (0..lattice.rank()).map(|t| r.from_i64(coeffs[t % coeffs.len()])).collect();
            TwoTermComplex::from_element(&lattice, pair, split, lattice.element(r, &c))
        };
        let top = verify_tilting(&cx, seed).unwrap();
        for m in 1..cx.precision() {
            prop_assert!(!top.verdict || verify_tilting(&cx.at_precision(m), seed).unwrap().verdict);
        }
        Ok(())
    })?;
    let (cx, _) = explicit_complex().as_ref().map_err(Clone::clone)?;
    for m in 1..=cx.precision() {
        ensure(verify_tilting(&cx.at_precision(m), 0).map_err(|e| e.to_string())?.verdict, || format!("PSL2(7) complex fails at precision {m}"))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let suites: [(&str, Suite); 6] = [
        ("ring axioms", galois_ring_axioms),
        ("Hensel", hensel_lifting),
        ("Krull–Schmidt", krull_schmidt),
        ("marks", marks_multiplicativity),
        ("spans", span_composition),
        ("precision", precision_monotonicity),
    ];
    let mut times = Vec::new();
    for (name, check) in suites {
        let t = Instant::now();
        check()?;
        times.push(format!("{name} {:.1} s", t.elapsed().as_secs_f64()));
    }
    Ok(format!("6 suites at {CASES} cases ({})", times.join(", ")))
}

fn run(n: usize, limit: Duration, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = panic::catch_unwind(AssertUnwindSafe(check))
        .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())));
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let ok = outcome.is_ok() && in_time;
    let detail = match outcome {
        Ok(d) if in_time => d,
        Ok(d) => format!("over the time limit; {d}"),
        Err(e) => e,
    };
    println!(
        "criterion {n}: {} ({:.1} s of {} s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn main() {
    panic::set_hook(Box::new(|_| {}));
    let secs = Duration::from_secs;
    let results = [
        run(1, secs(10), criterion_1),
        run(2, secs(30), criterion_2),
        run(3, secs(5), criterion_3),
        run(4, secs(120), criterion_4),
        run(5, secs(120), criterion_5),
        run(6, secs(60), criterion_6),
        run(7, secs(60), criterion_7),
        run(8, secs(300), criterion_8),
        run(9, secs(1800), criterion_9),
        run(10, secs(600), criterion_10),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed} of {} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
