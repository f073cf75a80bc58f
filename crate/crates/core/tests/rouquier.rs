mod common;

use std::sync::OnceLock;

use brauerlift_core::algebra::{self, Algebra};
use brauerlift_core::coeff::mat::{self, Mat};
use brauerlift_core::coeff::Gr;
use brauerlift_core::galgebra::{Blocks, GroupAlgebra};
use brauerlift_core::modrep::{self, RepModule};
use brauerlift_core::rouquier::{
    self, build_complex, dualize_complex, stable_equiv_check, verify_tilting, Bimodule, BlockPair, HomLattice,
    InductionSplit, RouquierError, SideReport, Strategy, TwoTermComplex,
};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use common::*;

fn setup(text: &str, p: u32, n: u32) -> (BlockPair, InductionSplit) {
    let g = group(text);
    let ga = algebra(&g, p, n);
    let blocks = Blocks::new(&ga).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b = blocks.principal().index;
    let pair = BlockPair::new(&blocks, b, &mut rng).unwrap();
    let split = rouquier::extract_n0(&pair, &mut rng).unwrap();
    (pair, split)
}

fn psl27() -> &'static (BlockPair, InductionSplit) {
    static CELL: OnceLock<(BlockPair, InductionSplit)> = OnceLock::new();
    CELL.get_or_init(|| setup(PSL27, 7, 4))
}

fn a4() -> &'static (BlockPair, InductionSplit) {
    static CELL: OnceLock<(BlockPair, InductionSplit)> = OnceLock::new();
    CELL.get_or_init(|| setup(A4, 3, 3))
}

fn c7() -> &'static (BlockPair, InductionSplit) {
    static CELL: OnceLock<(BlockPair, InductionSplit)> = OnceLock::new();
    CELL.get_or_init(|| setup(C7, 7, 3))
}

fn s3() -> &'static (BlockPair, InductionSplit) {
    static CELL: OnceLock<(BlockPair, InductionSplit)> = OnceLock::new();
    CELL.get_or_init(|| setup(S3, 3, 3))
}

/// `GR[G]·e` as a left module.
fn pim_module(ga: &GroupAlgebra, e: &[Gr]) -> RepModule {
    let vecs: Vec<_> = (0..ga.dim() as u32).map(|g| ga.left_by(g, e)).collect();
    let keep = mat::independent_cols_mod_p(ga.ring(), &Mat::from_cols(ga.dim(), &vecs));
    let basis: Vec<_> = keep.iter().map(|&i| vecs[i].clone()).collect();
    RepModule::left_ideal(ga, &basis).unwrap()
}

/// The head-5 projective of the principal block (the 6–8 edge of its tree).
fn six_eight_pim(pair: &BlockPair) -> usize {
    pair.big_pims.iter().position(|p| p.head == 5).unwrap()
}

fn the_explicit_complex() -> &'static TwoTermComplex {
    static CELL: OnceLock<TwoTermComplex> = OnceLock::new();
    CELL.get_or_init(|| {
        let (pair, split) = psl27();
        let p = six_eight_pim(pair);
        let passing: Vec<TwoTermComplex> = (0..pair.local_pims.len())
            .filter(|&q| HomLattice::new(pair, &split.z, p, q).unwrap().rank() == 5)
            .filter_map(|q| build_complex(pair, split, Strategy::Explicit { big_pim: p, local_pim: q }, 0).ok())
            .filter(|cx| verify_tilting(cx, 0).unwrap().verdict)
            .collect();
        assert_eq!(passing.len(), 1, "exactly one of the two rank-5 choices of Q is tilting");
        passing.into_iter().next().unwrap()
    })
}

#[test]
fn induction_bimodule_rank_matches_trace() {
    let (pair, _) = psl27();
    let m = rouquier::induction_bimodule(pair).unwrap();
    let expected =
        brauerlift_core::galgebra::bimodule_rank_by_trace(&pair.big, &pair.block, &pair.local_block, &pair.embedding);
    assert_eq!(m.rank as i64, expected);
    assert!(m.left_projective && m.right_projective);
}

#[test]
fn equal_groups_give_the_whole_block() {
    for (pair, split) in [c7(), s3()] {
        assert_eq!(pair.g().order(), pair.n().order());
        let block_rank = split.summands.iter().map(|s| s.0).sum::<usize>();
        assert_eq!(split.summands, vec![(block_rank, false)]);
        assert_eq!(split.n0_rank, block_rank);
        let cx = build_complex(pair, split, Strategy::Search, 0).unwrap();
        assert!(cx.part.is_none());
        let rep = verify_tilting(&cx, 0).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.big_side.h0_rank, Some(block_rank));
    }
}

#[test]
fn n0_matches_krull_schmidt_of_the_bimodule() {
    for (pair, split) in [a4(), c7(), s3()] {
        let m = rouquier::induction_bimodule(pair).unwrap().as_module().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dec = modrep::decompose(&m, &mut rng).unwrap();
        let mut oracle: Vec<(usize, bool)> =
            dec.summands.iter().map(|s| (s.module.dim(), modrep::is_projective_by_norm(&s.module))).collect();
        oracle.sort_unstable();
        assert_eq!(oracle, split.summands);
    }
}

#[test]
fn a4_search_returns_a_verified_complex() {
    let (pair, split) = a4();
    assert_eq!(pair.n().order(), 3);
    assert_eq!(split.summands.iter().filter(|s| !s.1).count(), 1);
    let cx = build_complex(pair, split, Strategy::Search, 0).unwrap();
    let rep = verify_tilting(&cx, 0).unwrap();
    assert!(rep.verdict);
    assert_eq!(rep.local_side.h0_rank, Some(rep.local_side.block_rank));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    assert!(stable_equiv_check(pair, &mut rng).unwrap().passes);
}

#[test]
fn psl27_pieces() {
    let (pair, split) = psl27();
    assert_eq!(pair.n().order(), 21);
    assert_eq!(split.summands.iter().filter(|s| !s.1).count(), 1);
    let mut big: Vec<(usize, usize)> = pair.big_pims.iter().map(|p| (p.dim, p.head)).collect();
    big.sort_unstable();
    assert_eq!(big, vec![(7, 1), (14, 3), (14, 5)]);
    assert!(pair.local_pims.iter().all(|q| q.dim == 7 && q.head == 1));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let stable = stable_equiv_check(pair, &mut rng).unwrap();
    assert!(stable.passes);
    assert_eq!(stable.non_projective, 1);
}

#[test]
fn psl27_hom_lattice_ranks_match_module_homs() {
    let (pair, split) = psl27();
    let p = six_eight_pim(pair);
    let res = pim_module(&pair.big, &pair.big_pims[p].idempotent).restrict(pair.local.group_arc(), &pair.embedding);
    let mut ranks = Vec::new();
    for (q, data) in pair.local_pims.iter().enumerate() {
        let lattice = HomLattice::new(pair, &split.z, p, q).unwrap();
        let oracle = modrep::hom(&res, &pim_module(&pair.local, &data.idempotent)).unwrap();
        assert_eq!(lattice.rank(), oracle.len());
        ranks.push(lattice.rank());
    }
    ranks.sort_unstable();
    assert_eq!(ranks, vec![4, 5, 5]);
}

#[test]
fn psl27_explicit_complex_is_tilting() {
    let (pair, _) = psl27();
    let cx = the_explicit_complex();
    let rep = verify_tilting(cx, 0).unwrap();
    assert!(rep.verdict);
    assert_eq!(rep.big_side.h0_rank, Some(rep.big_side.block_rank));
    assert_eq!(rep.local_side.h0_rank, Some(rep.local_side.block_rank));
    assert_eq!(rep.local_side.block_rank, 21);
    let part = cx.part.as_ref().unwrap();
    assert_eq!(pair.big_pims[part.big_pim].head, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    assert!(stable_equiv_check(pair, &mut rng).unwrap().passes);
}

#[test]
fn psl27_non_surjective_differential_fails() {
    let (pair, split) = psl27();
    let part = the_explicit_complex().part.as_ref().unwrap();
    let lattice = HomLattice::new(pair, &split.z, part.big_pim, part.local_pim).unwrap();
    let r = &pair.ring;
    let x = algebra::scale(r, &part.x, r.from_i64(r.p() as i64));
    assert!(lattice.contains(r, &x));
    assert!(!lattice.is_surjective(pair, &x));
    let bad = TwoTermComplex::from_element(&lattice, pair, split, x);
    let rep = verify_tilting(&bad, 0).unwrap();
    assert!(!rep.verdict);
    let outer = |s: &SideReport| s.homology_lengths[0] + s.homology_lengths[2];
    assert!(outer(&rep.big_side) > 0 || outer(&rep.local_side) > 0);
}

#[test]
fn psl27_trivial_complex_is_not_tilting() {
    let (pair, split) = psl27();
    let rep = verify_tilting(&TwoTermComplex::trivial(pair, split), 0).unwrap();
    assert!(!rep.verdict);
}

#[test]
fn psl27_verdict_holds_at_lower_precision() {
    let cx = the_explicit_complex();
    for m in 1..cx.precision() {
        assert!(verify_tilting(&cx.at_precision(m), 0).unwrap().verdict, "precision {m}");
    }
}

#[test]
fn explicit_strategy_rejects_non_surjective_pairs() {
    let (pair, split) = psl27();
    let p = six_eight_pim(pair);
    let q = (0..pair.local_pims.len()).find(|&q| HomLattice::new(pair, &split.z, p, q).unwrap().rank() == 4).unwrap();
    let err = build_complex(pair, split, Strategy::Explicit { big_pim: p, local_pim: q }, 0).unwrap_err();
    assert_eq!(err, RouquierError::NotSurjective);
    let err = build_complex(pair, split, Strategy::Explicit { big_pim: 9, local_pim: 0 }, 0).unwrap_err();
    assert_eq!(err, RouquierError::BadPim(9));
}

#[test]
fn dual_of_the_explicit_complex() {
    let cx = the_explicit_complex().at_precision(1);
    let m = cx.bimodules().unwrap();
    assert!(m.is_chain_map());
    let d = dualize_complex(&m).unwrap();
    assert!(d.is_chain_map());
    assert_eq!(d.upper_degree, 0);
    assert_eq!(d.upper.left.order(), cx.pair.n().order());
    let dd = dualize_complex(&d).unwrap();
    assert_eq!(dd.upper_degree, m.upper_degree);
    assert_eq!(dd.differential, m.differential);
    assert_eq!(dd.upper.left_gens, m.upper.left_gens);
    assert_eq!(dd.lower.right_gens, m.lower.right_gens);
}

#[test]
fn dual_of_the_regular_complex_is_the_transpose() {
    let (pair, split) = c7();
    let m = TwoTermComplex::trivial(pair, split).bimodules().unwrap();
    let d = dualize_complex(&m).unwrap();
    assert_eq!(d.upper.rank, m.lower.rank);
    assert_eq!(d.lower.rank, 0);
    let t: Vec<Mat> = m.lower.right_gens.iter().map(Mat::transpose).collect();
    assert_eq!(d.upper.left_gens, t);
    let t: Vec<Mat> = m.lower.left_gens.iter().map(Mat::transpose).collect();
    assert_eq!(d.upper.right_gens, t);
}

#[test]
fn dual_needs_projective_terms() {
    let (pair, split) = c7();
    let mut m = TwoTermComplex::trivial(pair, split).bimodules().unwrap();
    let r = pair.ring.clone();
    let g = pair.big.group_arc();
    let one = vec![Mat::identity(&r, 1); g.gens().len()];
    m.lower = Bimodule::new(r, g.clone(), pair.local.group_arc(), one.clone(), one).unwrap();
    assert!(!m.lower.left_projective);
    assert_eq!(dualize_complex(&m).unwrap_err(), RouquierError::FlagMissing);
}

fn small_cases() -> [&'static (BlockPair, InductionSplit); 3] {
    [a4(), c7(), s3()]
}

/// A complex from a pair of projectives and a lattice element given by `coeffs`.
fn random_complex(which: usize, i: usize, j: usize, coeffs: &[i64]) -> TwoTermComplex {
    let (pair, split) = small_cases()[which];
    let i = i % pair.big_pims.len();
    let j = j % pair.local_pims.len();
    let lattice = HomLattice::new(pair, &split.z, i, j).unwrap();
    if lattice.rank() == 0 {
        return TwoTermComplex::trivial(pair, split);
    }
    let r = &pair.ring;
    let c: Vec<_> = (0..lattice.rank()).map(|k| r.from_i64(coeffs[k % coeffs.len()])).collect();
    TwoTermComplex::from_element(&lattice, pair, split, lattice.element(r, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn verdicts_are_monotone_in_precision(
        which in 0usize..3,
        i in 0usize..4,
        j in 0usize..4,
        coeffs in proptest::collection::vec(-9i64..10, 1..6),
        seed in any::<u64>(),
    ) {
        let cx = random_complex(which, i, j, &coeffs);
        let top = verify_tilting(&cx, seed).unwrap();
        for m in 1..cx.precision() {
            let low = verify_tilting(&cx.at_precision(m), seed).unwrap();
            prop_assert!(!top.verdict || low.verdict);
        }
        if top.verdict {
            prop_assert_eq!(top.big_side.h0_rank, Some(top.big_side.block_rank));
            prop_assert_eq!(top.local_side.h0_rank, Some(top.local_side.block_rank));
        }
    }

    #[test]
    fn reports_are_reproducible(
        which in 0usize..3,
        i in 0usize..4,
        j in 0usize..4,
        coeffs in proptest::collection::vec(-9i64..10, 1..6),
        seed in any::<u64>(),
    ) {
        let cx = random_complex(which, i, j, &coeffs);
        prop_assert_eq!(verify_tilting(&cx, seed).unwrap(), verify_tilting(&cx, seed).unwrap());
    }

    #[test]
    fn differentials_square_to_zero_and_duals_are_chain_maps(
        which in 0usize..3,
        i in 0usize..4,
        j in 0usize..4,
        coeffs in proptest::collection::vec(-9i64..10, 1..6),
    ) {
        let cx = random_complex(which, i, j, &coeffs);
        let rep = verify_tilting(&cx, 0).unwrap();
        prop_assert!(rep.big_side.differential_squares_to_zero && rep.local_side.differential_squares_to_zero);
        let m = cx.bimodules().unwrap();
        prop_assert!(m.is_chain_map());
        prop_assert!(dualize_complex(&m).unwrap().is_chain_map());
    }
}

#[test]
fn verified_small_complexes_are_stable_equivalences() {
    for (pair, split) in small_cases() {
        let cx = build_complex(pair, split, Strategy::Search, 0).unwrap();
        assert!(verify_tilting(&cx, 0).unwrap().verdict);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert!(stable_equiv_check(pair, &mut rng).unwrap().passes);
    }
}
