use brauerlift_core::groups::named::{alternating4, borel21, cyclic, psl27, symmetric};
use brauerlift_core::groups::{GSet, GroupLimits};

#[test]
fn orders_and_classes() {
    let g = psl27();
    assert_eq!(g.order(), 168);
    let cc = g.conjugacy_classes();
    let sizes: Vec<usize> = cc.classes.iter().map(|c| c.elements.len()).collect();
    let orders: Vec<u32> = cc.classes.iter().map(|c| g.element_order(c.rep)).collect();
    assert_eq!(orders, vec![1, 2, 3, 4, 7, 7]);
    assert_eq!(sizes, vec![1, 21, 56, 42, 24, 24]);
    assert_eq!(borel21().conjugacy_classes().len(), 5);
    assert_eq!(symmetric(3).order(), 6);
    assert_eq!(alternating4().conjugacy_classes().len(), 4);
}

#[test]
fn subgroup_class_counts() {
    let lim = GroupLimits::default();
    assert_eq!(symmetric(3).subgroup_classes(&lim).unwrap().len(), 4);
    assert_eq!(alternating4().subgroup_classes(&lim).unwrap().len(), 5);
    assert_eq!(symmetric(4).subgroup_classes(&lim).unwrap().len(), 11);
    assert_eq!(psl27().subgroup_classes(&lim).unwrap().len(), 15);
    assert_eq!(cyclic(12).subgroup_classes(&lim).unwrap().len(), 6);
}

#[test]
fn sylow_and_normalizers() {
    let g = psl27();
    let d = g.sylow_subgroup(7);
    assert_eq!(d.order(), 7);
    assert_eq!(g.normalizer(&d).order(), 21);
    assert_eq!(g.centralizer(&d).order(), 7);
    assert_eq!(g.sylow_subgroup(2).order(), 8);
    assert_eq!(g.p_subgroup_classes(7).len(), 2);
    assert_eq!(g.p_subgroup_classes(2).len(), 6);
    assert!(g.is_p_perfect(&g.whole(), 7));
    assert!(!g.is_p_perfect(&d, 7));
}

#[test]
fn gset_stabilizers() {
    let g = psl27();
    let x = GSet::natural(&g);
    assert_eq!(x.orbits().len(), 1);
    let st = x.stabilizer(&g, 7);
    assert_eq!(st.order(), 21);
    let y = x.product(&x);
    assert_eq!(y.orbits().len(), 2);
    let b = g.normalizer(&g.sylow_subgroup(7));
    let cos = GSet::cosets(&g, &b);
    assert_eq!(cos.size, 8);
    assert!(cos.respects_relations(&g, &[(3, 5), (17, 100), (44, 12)]));
}
