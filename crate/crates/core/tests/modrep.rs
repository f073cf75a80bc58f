mod common;

use std::sync::Arc;

use brauerlift_core::algebra::{self, Algebra, FiniteAlgebra};
use brauerlift_core::coeff::mat::{self, Mat};
use brauerlift_core::coeff::{FieldSpec, GaloisRing};
use brauerlift_core::galgebra::chars::BoundTable;
use brauerlift_core::galgebra::{Blocks, GroupAlgebra};
use brauerlift_core::groups::{named, GSet, PermGroup};
use brauerlift_core::modrep::pims::{self, CartanMatrix};
use brauerlift_core::modrep::tree::{brauer_tree, BrauerTree};
use brauerlift_core::modrep::{self, RepModule};
use common::*;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn fp(p: u32) -> GaloisRing {
    GaloisRing::new(FieldSpec::prime(p), 1).unwrap()
}

fn as_finite(ga: &GroupAlgebra) -> FiniteAlgebra {
    let n = ga.dim();
    let r = ga.ring().clone();
    FiniteAlgebra::from_products(r.clone(), n, ga.one(), |i, j| {
        ga.mul(&algebra::basis_vector(&r, n, i), &algebra::basis_vector(&r, n, j))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn equal_up_to_order(c: &CartanMatrix, expected: &[Vec<i64>]) -> bool {
    permutations(c.size()).iter().any(|o| c.permuted(o).0 == expected)
}

#[test]
fn radical_of_cyclic_group_algebra() {
    let c7 = group(C7);
    let ga = GroupAlgebra::new(fp(7), c7.clone());
    let rad = algebra::radical(&as_finite(&ga));
    assert_eq!(rad.len(), 6);
    // the augmentation ideal is spanned by g^k − 1, and (g − 1)^7 = 0
    let r = ga.ring();
    let x = algebra::sub(r, &ga.element(c7.gen_indices()[0]), &ga.one());
    assert!(algebra::is_zero(&algebra::pow(&ga, &x, 7, &ga.one())));
    let mut ech = algebra::Echelon::new(r);
    for v in &rad {
        ech.insert(v);
    }
    for g in 1..7 {
        assert!(ech.contains(&algebra::sub(r, &ga.element(g), &ga.one())));
    }
    let m = RepModule::regular(fp(7), c7);
    assert_eq!(modrep::module_radical(&m).unwrap().len(), 6);
}

#[test]
fn radical_of_s3_mod_3() {
    let s3 = group(S3);
    let ga = GroupAlgebra::new(fp(3), s3.clone());
    let fa = as_finite(&ga);
    let rad = algebra::radical(&fa);
    // oracle: the ideal generated by c − 1 for the 3-cycle c is nilpotent with quotient F_3 × F_3
    let c = (0..6u32).find(|&g| s3.element_order(g) == 3).unwrap();
    let r = ga.ring();
    let x = algebra::sub(r, &ga.element(c), &ga.one());
    let ideal = algebra::span_basis(r, 6, &(0..6u32).map(|g| ga.mul(&ga.element(g), &x)).collect::<Vec<_>>());
    assert_eq!(ideal.len(), 4);
    for a in &ideal {
        for b in &ideal {
            for d in &ideal {
                assert!(algebra::is_zero(&ga.mul(&ga.mul(a, b), d)));
            }
        }
    }
    assert_eq!(rad.len(), 4);
    let mut ech = algebra::Echelon::new(r);
    for v in &rad {
        ech.insert(v);
    }
    assert!(ideal.iter().all(|v| ech.contains(v)));
    assert_eq!(modrep::module_radical(&RepModule::regular(fp(3), s3)).unwrap().len(), 4);
}

#[test]
fn semisimple_radical_is_zero() {
    let s3 = group(S3);
    let ga = GroupAlgebra::new(fp(5), s3.clone());
    assert!(algebra::radical(&as_finite(&ga)).is_empty());
    assert!(modrep::module_radical(&RepModule::regular(fp(5), s3)).unwrap().is_empty());
}

#[test]
fn s3_regular_module_has_two_pim_classes() {
    let s3 = group(S3);
    let m = RepModule::regular(fp(3), s3.clone());
    let d = modrep::decompose(&m, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!(d.class_count, 2);
    assert_eq!(d.class_profile(), vec![(3, 1), (3, 1)]);

    // oracle: enumerate all idempotents of F_3[S_3], keep the primitive ones, and sort
    // them by the pair (trivial character, sign character), which names the head
    let ga = GroupAlgebra::new(fp(3), s3.clone());
    let r = ga.ring();
    let all: Vec<Vec<_>> = (0..729u32)
        .map(|k| (0..6).map(|i| r.from_i64(((k / 3u32.pow(i)) % 3) as i64)).collect::<Vec<_>>())
        .filter(|v: &Vec<_>| !algebra::is_zero(v) && algebra::is_idempotent(&ga, v))
        .collect();
    let primitive: Vec<&Vec<_>> = all
        .iter()
        .filter(|e| {
            !all.iter().any(|f| f != *e && ga.mul(e, f) == *f && ga.mul(f, e) == *f)
        })
        .collect();
    let sign = |g: u32| if s3.element_order(g) == 2 { -1 } else { 1 };
    let heads: std::collections::BTreeSet<(i64, i64)> = primitive
        .iter()
        .map(|e| {
            let t = r.to_i64(ga.augmentation(e)).unwrap();
            let s = r.to_i64(e.iter().enumerate().fold(r.zero(), |acc, (g, &c)| r.add(acc, r.mul_int(c, sign(g as u32))))).unwrap();
            (t, s)
        })
        .collect();
    assert_eq!(heads.len(), 2);
    for s in &d.summands {
        assert!(s.module.satisfies_relations(8, &mut ChaCha8Rng::seed_from_u64(0)));
        let end = modrep::EndRing::new(&s.module).unwrap();
        assert!(algebra::is_local(&end.algebra));
    }
}

#[test]
fn simple_module_is_its_own_decomposition() {
    let a4 = group(A4);
    let m = RepModule::permutation(fp(5), a4, &GSet::natural(&group(A4)));
    let d = modrep::decompose(&m, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert_eq!(d.class_profile(), vec![(1, 1), (3, 1)]);
    let triv = RepModule::trivial(fp(5), group(A4));
    let d = modrep::decompose(&triv, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert_eq!(d.summands.len(), 1);
}

#[test]
fn module_isomorphism() {
    let c2 = Arc::new(PermGroup::new(2, vec![vec![1, 0]]).unwrap());
    let f = fp(3);
    let triv = RepModule::trivial(f.clone(), c2.clone());
    let sign = RepModule::new(f.clone(), c2.clone(), 1, vec![Mat::from_i64(&f, &[&[-1]])]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    assert!(modrep::hom(&triv, &sign).unwrap().is_empty());
    assert!(modrep::module_iso(&triv, &sign, &mut rng).unwrap().is_none());
    let w = modrep::module_iso(&triv, &triv, &mut rng).unwrap().unwrap();
    assert_eq!(mat::rank_mod_p(&f, &w), 1);

    // a permuted-basis copy of the natural PSL(2,7)-module is isomorphic to it
    let g = group(PSL27);
    let m = RepModule::permutation(fp(7), g.clone(), &GSet::natural(&g));
    let mut perm = Mat::zeros(8, 8);
    for i in 0..8 {
        perm[(i, (3 * i + 1) % 8)] = fp(7).one();
    }
    let pinv = mat::inverse(&fp(7), &perm).unwrap();
    let gens = m.gens().iter().map(|x| perm.mul(&fp(7), x).mul(&fp(7), &pinv)).collect();
    let n = RepModule::new(fp(7), g.clone(), 8, gens).unwrap();
    let w = modrep::module_iso(&m, &n, &mut rng).unwrap().unwrap();
    assert!(m.is_hom_to(&n, &w));
    assert_eq!(mat::rank_mod_p(&fp(7), &w), 8);
    assert!(modrep::module_iso(&m, &m.dual(), &mut rng).unwrap().is_some());
}

#[test]
fn deterministic_iso_fallback_agrees() {
    // many pairwise non-isomorphic summands over F_2 make random isomorphisms rare
    let s3 = group(S3);
    let m = RepModule::regular(fp(2), s3.clone());
    let sum = m.direct_sum(&m).unwrap();
    let d = modrep::decompose(&sum, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    let mut rebuilt = d.summands[0].module.clone();
    for s in &d.summands[1..] {
        rebuilt = rebuilt.direct_sum(&s.module).unwrap();
    }
    let w = modrep::module_iso(&sum, &rebuilt, &mut ChaCha8Rng::seed_from_u64(5)).unwrap().unwrap();
    assert!(sum.is_hom_to(&rebuilt, &w));
    assert_eq!(mat::rank_mod_p(&fp(2), &w), 12);
    for (i, x) in d.summands.iter().enumerate() {
        for y in &d.summands[i + 1..] {
            let iso = modrep::indecomposable_iso(&x.module, &y.module).unwrap().is_some();
            assert_eq!(iso, x.class == y.class);
        }
    }
}

#[test]
fn projectivity_routes_agree() {
    let c7 = group(C7);
    let f = fp(7);
    let ga = GroupAlgebra::new(f.clone(), c7.clone());
    let pims = pims::block_pims(&ga, &ga.one(), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    assert_eq!(pims.classes.len(), 1);
    assert_eq!(pims.classes[0].dim(), 7);
    let pim_modules = pims.modules(&ga).unwrap();
    let triv = RepModule::trivial(f.clone(), c7.clone());
    let reg = RepModule::regular(f.clone(), c7.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    assert!(!modrep::is_projective(&triv, &pim_modules, &mut rng).unwrap());
    assert!(!modrep::is_projective_by_norm(&triv));
    assert!(modrep::is_projective(&reg, &pim_modules, &mut rng).unwrap());
    assert!(modrep::is_projective_by_norm(&reg));
    assert!(modrep::is_projective(&pim_modules[0], &pim_modules, &mut rng).unwrap());

    let s3 = group(S3);
    let ga = GroupAlgebra::new(fp(3), s3.clone());
    let pims = pims::block_pims(&ga, &ga.one(), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    let pm = pims.modules(&ga).unwrap();
    let natural = RepModule::permutation(fp(3), s3.clone(), &GSet::natural(&s3));
    let two_points = RepModule::permutation(fp(3), s3.clone(), &GSet::cosets(&s3, &s3.closure(&[s3.gen_indices()[0]])));
    for m in [natural, two_points, RepModule::regular(fp(3), s3.clone()), RepModule::trivial(fp(3), s3.clone())] {
        assert_eq!(modrep::is_projective(&m, &pm, &mut rng).unwrap(), modrep::is_projective_by_norm(&m));
    }
}

#[test]
fn psl27_pims_and_cartan() {
    let g = group(PSL27);
    let ga = algebra(&g, 7, 1);
    let blocks = Blocks::new(&algebra(&g, 7, 1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let principal = pims::block_pims(&ga, &blocks.idempotent(0), &mut rng).unwrap();
    let dims: Vec<usize> = principal.classes.iter().map(|c| c.dim()).collect();
    assert_eq!(dims, vec![7, 14, 14]);
    assert_eq!(principal.head_dims(), vec![1, 3, 5]);
    assert_eq!(principal.head_dims_from_cartan().unwrap(), vec![1, 3, 5]);
    assert_eq!(principal.total_dim(), 119);
    assert!(principal.cartan.is_symmetric());
    assert!(equal_up_to_order(&principal.cartan, &[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 3]]));

    let st = pims::block_pims(&ga, &blocks.idempotent(1), &mut rng).unwrap();
    assert_eq!(st.classes.len(), 1);
    assert_eq!(st.classes[0].dim(), 7);
    assert_eq!(st.head_dims(), vec![7]);
    assert_eq!(st.cartan.0, vec![vec![1]]);

    // constituents of the projective lattices, by idempotent values and by traces
    let lattice = algebra(&g, 7, 4);
    let lblocks = Blocks::new(&lattice).unwrap();
    let t = table(PSL27_CSV, 8);
    let bound = BoundTable::new(&t, &g, &lblocks.center, lattice.ring()).unwrap();
    let mut found = Vec::new();
    let mut decomposition = Vec::new();
    for c in principal.classes.iter().chain(&st.classes) {
        let m = pims::lattice_constituents(&lattice, &bound, &c.idempotent).unwrap();
        let r = lattice.ring();
        let e = algebra::lift_idempotent(&lattice, &algebra::lift_vec(&ga.ring().clone(), r, &c.idempotent));
        let ae: Vec<_> = {
            let trans = lattice.left_translates(&e);
            let cols = mat::independent_cols_mod_p(r, &Mat::from_cols(g.order(), &trans));
            cols.iter().map(|&j| trans[j].clone()).collect()
        };
        let module = RepModule::left_ideal(&lattice, &ae).unwrap();
        assert_eq!(module.dim(), c.dim());
        assert_eq!(pims::lattice_char_decomposition(&module, &bound, &lblocks.center.classes).unwrap(), m);
        let mut labels = pims::constituent_labels(&bound, &m);
        labels.sort();
        found.push(labels);
        decomposition.push(m);
    }
    let mut expected: Vec<Vec<String>> = [vec!["7"], vec!["1", "6"], vec!["6", "8"], vec!["3·3̄", "8"]]
        .iter()
        .map(|v| v.iter().map(|s| s.to_string()).collect())
        .collect();
    expected.sort();
    found.sort();
    assert_eq!(found, expected);

    // Cartan = Dᵀ·D with D the decomposition matrix, counting merged rows by orbit length
    let n = principal.classes.len();
    for i in 0..n {
        for j in 0..n {
            let dtd: i64 = (0..t.rows.len())
                .map(|row| (decomposition[i][row] * decomposition[j][row] * bound.norms[row]) as i64)
                .sum();
            assert_eq!(principal.cartan.0[i][j], dtd);
        }
    }

    let d = lblocks.principal().defect_group.clone().unwrap();
    let mut tree = brauer_tree(&g, &d, &principal.cartan).unwrap();
    assert!(tree.is_path());
    assert_eq!(tree.edges.len(), 3);
    assert_eq!(tree.multiplicity, 2);
    let ex = tree.exceptional_vertex.unwrap();
    assert_eq!(tree.degree(ex), 1);
    let norm_of = |l: &str| bound.norms[t.rows.iter().position(|r| r.label == l).unwrap()];
    let cons: Vec<Vec<String>> = decomposition[..n].iter().map(|m| pims::constituent_labels(&bound, m)).collect();
    tree.label(&cons, norm_of).unwrap();
    assert_eq!(tree.labels.as_ref().unwrap()[ex], vec!["3·3̄".to_string()]);
    assert!(tree.to_dot().contains("style=filled"));
}

#[test]
fn borel_tree_is_a_star() {
    let b = group(BOREL21);
    let ga = algebra(&b, 7, 1);
    let pims = pims::block_pims(&ga, &ga.one(), &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    assert_eq!(pims.classes.len(), 3);
    assert_eq!(pims.cartan.0, vec![vec![3, 2, 2], vec![2, 3, 2], vec![2, 2, 3]]);
    let tree = BrauerTree::from_cartan(&pims.cartan).unwrap();
    assert_eq!(tree.star_center(), tree.exceptional_vertex);
    assert_eq!(tree.multiplicity, 2);
    assert_eq!(tree.edges.len(), 3);
}

#[test]
fn a4_principal_block_mod_3() {
    let a4 = group(A4);
    let ga = algebra(&a4, 3, 1);
    let blocks = Blocks::new(&ga).unwrap();
    let p = pims::block_pims(&ga, &blocks.idempotent(0), &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    assert_eq!(p.cartan.0, vec![vec![3]]);
    let tree = BrauerTree::from_cartan(&p.cartan).unwrap();
    assert_eq!(tree.edges.len(), 1);
    assert_eq!(tree.multiplicity, 2);
    assert!(tree.exceptional_vertex.is_some());
}

#[test]
fn tree_reconstruction_rules() {
    let single = BrauerTree::from_cartan(&CartanMatrix(vec![vec![1]])).unwrap();
    assert_eq!((single.edges.len(), single.multiplicity, single.exceptional_vertex), (1, 1, None));
    let path = BrauerTree::from_cartan(&CartanMatrix(vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 3]])).unwrap();
    let star = BrauerTree::from_cartan(&CartanMatrix(vec![vec![3, 2, 2], vec![2, 3, 2], vec![2, 2, 3]])).unwrap();
    assert!(!path.is_isomorphic(&star));
    let reordered = BrauerTree::from_cartan(&CartanMatrix(vec![vec![3, 1, 0], vec![1, 2, 1], vec![0, 1, 2]])).unwrap();
    assert!(path.is_isomorphic(&reordered));
    assert!(BrauerTree::from_cartan(&CartanMatrix(vec![vec![2, 1], vec![0, 2]])).is_err());
    assert!(BrauerTree::from_cartan(&CartanMatrix(vec![vec![2, 0], vec![0, 2]])).is_err());
    // a cyclic defect group is required
    let a4 = group(A4);
    let v4 = a4.sylow_subgroup(2);
    assert!(brauer_tree(&a4, &v4, &CartanMatrix(vec![vec![4]])).is_err());
}

fn ks_pool() -> Vec<RepModule> {
    let s3 = group(S3);
    let a4 = group(A4);
    let psl = Arc::new(named::psl27());
    let b = group(BOREL21);
    vec![
        RepModule::regular(fp(3), s3.clone()),
        RepModule::regular(fp(2), s3.clone()),
        RepModule::permutation(fp(3), a4.clone(), &GSet::natural(&a4)),
        RepModule::permutation(fp(2), a4.clone(), &GSet::natural(&a4)),
        RepModule::permutation(fp(7), psl.clone(), &GSet::natural(&psl)),
        RepModule::permutation(fp(7), b.clone(), &GSet::natural(&b)),
        RepModule::regular(fp(7), group(C7)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn krull_schmidt_reproducible(which in 0usize..7, s1 in any::<u64>(), s2 in any::<u64>()) {
        let pool = ks_pool();
        let m = &pool[which];
        let a = modrep::decompose(m, &mut ChaCha8Rng::seed_from_u64(s1)).unwrap();
        let b = modrep::decompose(m, &mut ChaCha8Rng::seed_from_u64(s2)).unwrap();
        prop_assert_eq!(a.class_profile(), b.class_profile());
        prop_assert_eq!(a.summands.iter().map(|s| s.module.dim()).sum::<usize>(), m.dim());
        let mut rng = ChaCha8Rng::seed_from_u64(s1 ^ s2);
        let mut used = vec![false; b.summands.len()];
        for x in &a.summands {
            let hit = b.summands.iter().enumerate().position(|(j, y)| {
                !used[j] && modrep::module_iso(&x.module, &y.module, &mut rng).unwrap().is_some()
            });
            prop_assert!(hit.is_some());
            used[hit.unwrap()] = true;
        }
    }
}
