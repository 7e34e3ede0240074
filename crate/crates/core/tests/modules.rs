use std::collections::BTreeSet;

use wpi_core::exact_arith::{frac, int, Scalar, UniPoly};
use wpi_core::gt_module::{
    admissibility_oracle, cyclicity_probe, enumerate_basis, is_irreducible, oracle_seeds, probe_irreducible,
    verify_defining_relations, BasisWindow, Family, GeneratorSymbol, GtModule, ModuleVector, VerifyOptions,
};
use wpi_core::pyramid::Pyramid;
use wpi_core::relations::{is_admissible, Relation, RelationSet};
use wpi_core::tableau::{Tableau, TableauDelta, TriIndex};
use wpi_core::Error;

fn t(k: usize, i: usize, j: usize) -> TriIndex {
    TriIndex::new(k, i, j)
}

fn gl2() -> Pyramid {
    Pyramid::gl(2).unwrap()
}

/// gl_2 tableau with top row `(2, −1)` and bottom entry `x`.
fn gl2_seed(x: i64) -> Tableau {
    Tableau::from_values(gl2(), &[int(x), int(2), int(-1)]).unwrap()
}

fn standard_gl2() -> RelationSet {
    RelationSet::standard(gl2())
}

fn delta(p: &Pyramid, entries: &[(TriIndex, i64)]) -> TableauDelta {
    TableauDelta::from_sparse(p, &entries.iter().copied().collect()).unwrap()
}

fn unit(z: &TableauDelta) -> ModuleVector {
    ModuleVector::from([(z.clone(), int(1))])
}

fn generic(p: Pyramid) -> Tableau {
    let n = p.num_cells();
    Tableau::symbolic(p, &(0..n).collect::<Vec<_>>(), &vec![0; n]).unwrap()
}

#[test]
fn standard_window_of_gl2() {
    let w = enumerate_basis(&standard_gl2(), &gl2_seed(1), 2, 1, 8).unwrap();
    let bottoms: BTreeSet<Scalar> = w
        .members()
        .iter()
        .map(|z| w.module().values_at(z)[0].clone())
        .collect();
    assert_eq!(bottoms, BTreeSet::from([int(0), int(1), int(2)]));
}

#[test]
fn radius_zero_and_monotonicity() {
    let c = RelationSet::empty(gl2());
    let l = generic(gl2());
    let w0 = enumerate_basis(&c, &l, 0, 1, 8).unwrap();
    assert_eq!(w0.members(), &[TableauDelta::zero(&gl2())]);
    for r in 0..3 {
        let small: BTreeSet<_> = enumerate_basis(&c, &l, r, 1, 8).unwrap().members().iter().cloned().collect();
        let large: BTreeSet<_> = enumerate_basis(&c, &l, r + 1, 1, 8).unwrap().members().iter().cloned().collect();
        assert!(small.is_subset(&large));
    }
}

#[test]
fn a_eigenvalues() {
    let m = GtModule::instantiate(&standard_gl2(), &gl2_seed(1), 1, 8).unwrap();
    let zero = TableauDelta::zero(&gl2());
    assert_eq!(m.a_poly(1, &zero), UniPoly::linear(int(1)));
    // (u + 2)(u − 1) = u² + u − 2
    assert_eq!(m.a_poly(2, &zero), UniPoly::new(vec![int(-2), int(1), int(1)]));

    let p = Pyramid::new(vec![1, 2]).unwrap();
    let vals = [frac(1, 3), frac(1, 2), frac(2, 5), frac(-3, 7)];
    let swapped = [frac(1, 3), frac(-3, 7), frac(1, 2), frac(2, 5)];
    let c = RelationSet::empty(p.clone());
    let a = GtModule::new(&c, &generic(p.clone()), vals.to_vec(), 4).unwrap();
    let b = GtModule::new(&c, &generic(p.clone()), swapped.to_vec(), 4).unwrap();
    let z = TableauDelta::zero(&p);
    assert_eq!(a.a_poly(2, &z), b.a_poly(2, &z));
    for r in 1..=2 {
        assert_eq!(a.a_poly(r, &z).degree(), Some((1..=r).map(|i| p.p(i)).sum()));
    }
    // coefficients are elementary symmetric functions of row 2
    let row: Vec<&Scalar> = vals[1..].iter().collect();
    let e1: Scalar = row.iter().copied().sum();
    let e2 = row[0] * row[1] + row[0] * row[2] + row[1] * row[2];
    let e3 = row[0] * row[1] * row[2];
    assert_eq!(a.a_poly(2, &z).coeffs(), &[e3, e2, e1, int(1)]);
}

fn inverse_linear_expansion(a: i64, order: usize) -> Vec<Scalar> {
    // 1/(u + a) = Σ_{k≥1} (−a)^{k−1} u^{−k}
    let mut out = vec![int(0)];
    let mut x = int(1);
    for _ in 1..=order {
        out.push(x.clone());
        x *= int(-a);
    }
    out
}

#[test]
fn d_series_of_gl2() {
    let m = GtModule::instantiate(&standard_gl2(), &gl2_seed(1), 1, 6).unwrap();
    let zero = TableauDelta::zero(&gl2());
    // d_1(u) = (u + 1)/u
    let d1 = m.d_series(1, &zero).unwrap();
    assert_eq!(d1.coeffs()[..3], [int(1), int(1), int(0)]);
    // d_2(u) = A_2(u + 1)/(u A_1(u + 1)) = (u + 3)/(u + 2) = 1 + 1/(u + 2)
    let d2 = m.d_series(2, &zero).unwrap();
    let mut expect = inverse_linear_expansion(2, 6);
    expect[0] = int(1);
    assert_eq!(d2.coeffs(), &expect[..]);
    let prod = &d2 * &m.dprime_series(2, &zero).unwrap();
    assert_eq!(prod.coeffs()[0], int(1));
    assert!(prod.coeffs()[1..].iter().all(|x| *x == int(0)));
}

#[test]
fn b_at_root_isolates_one_cell() {
    let p = Pyramid::gl(3).unwrap();
    let l = generic(p.clone());
    let m = GtModule::instantiate(&RelationSet::empty(p.clone()), &l, 3, 4).unwrap();
    let z = TableauDelta::zero(&p);
    let vals = m.values_at(&z);
    let cell = p.index_of(&t(1, 2, 1)).unwrap();
    let out = m.bc_at(2, &-vals[cell].clone(), Family::B, &z).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].0, z.bumped(cell, 1));
    // −Π_a (l_{3a} − l_{21}) / (l_{22} − l_{21}) times the interpolation factor (−l_{21} + l_{22})
    let x = &vals[cell];
    let numer: Scalar = p.row_range(3).map(|a| &vals[a] - x).product();
    let other = &vals[p.index_of(&t(1, 2, 2)).unwrap()];
    let expect = -(numer / (other - x)) * (other - x);
    assert_eq!(out[0].1, expect);
}

#[test]
fn lowering_stops_at_strict_boundary() {
    let w = enumerate_basis(&standard_gl2(), &gl2_seed(0), 2, 1, 8).unwrap();
    let zero = TableauDelta::zero(&gl2());
    for u0 in [int(0), int(3), frac(1, 2)] {
        assert!(w.act_bc_at(1, &u0, Family::C, &unit(&zero)).unwrap().is_empty());
    }
    let f = GeneratorSymbol::new(Family::F, 1, 1);
    assert!(w.act_series(&f, &unit(&zero)).unwrap().is_empty());
}

#[test]
fn leading_coefficients_and_degree_bound() {
    let p = Pyramid::new(vec![1, 2]).unwrap();
    let vals = vec![frac(1, 3), frac(1, 2), frac(2, 5), frac(-3, 7)];
    let c = RelationSet::empty(p.clone());
    let m = GtModule::new(&c, &generic(p.clone()), vals.clone(), 6).unwrap();
    let w = BasisWindow::new(m, 2);
    let z = TableauDelta::zero(&p);
    let low = GeneratorSymbol::new(Family::E, 1, 1);
    assert!(matches!(
        w.act_series(&low, &unit(&z)),
        Err(Error::SuperscriptTooSmall { superscript: 1, min: 2, .. })
    ));
    let e = w.act_series(&GeneratorSymbol::new(Family::E, 1, 2), &unit(&z)).unwrap();
    let up = z.bumped(0, 1);
    let ratio: Scalar = -vals[1..].iter().map(|a| a - &vals[0]).product::<Scalar>();
    assert_eq!(e, ModuleVector::from([(up, ratio)]));
    let f = w.act_series(&GeneratorSymbol::new(Family::F, 1, 1), &unit(&z)).unwrap();
    assert_eq!(f, ModuleVector::from([(z.bumped(0, -1), int(1))]));
}

#[test]
fn actions_stay_inside_the_relation_set() {
    let w = enumerate_basis(&standard_gl2(), &gl2_seed(1), 3, 1, 8).unwrap();
    for z in w.interior() {
        for family in [Family::E, Family::F] {
            for s in 1..=3 {
                let out = w.act_series(&GeneratorSymbol::new(family, 1, s), &unit(&z)).unwrap();
                assert!(out.keys().all(|y| w.module().member(y)));
            }
        }
    }
}

#[test]
fn leaving_the_window_is_an_error() {
    let c = RelationSet::empty(gl2());
    let w = enumerate_basis(&c, &generic(gl2()), 1, 1, 8).unwrap();
    let edge = delta(&gl2(), &[(t(1, 1, 1), 1)]);
    let e = GeneratorSymbol::new(Family::E, 1, 1);
    assert!(matches!(w.act_series(&e, &unit(&edge)), Err(Error::WindowOverflow(_))));
}

#[test]
fn critical_seed_is_rejected() {
    let l = Tableau::from_values(Pyramid::gl(3).unwrap(), &[int(0), int(1), int(1), int(3), int(2), int(0)]).unwrap();
    let c = RelationSet::empty(Pyramid::gl(3).unwrap());
    assert!(matches!(enumerate_basis(&c, &l, 1, 1, 8), Err(Error::Critical { .. })));
}

#[test]
fn standard_and_empty_sets_verify() {
    let opts = VerifyOptions::default();
    let report = verify_defining_relations(&standard_gl2(), &gl2_seed(1), &opts).unwrap();
    assert!(report.passed);
    assert_eq!(report.families.len(), 12);
    let c = RelationSet::empty(gl2());
    assert!(verify_defining_relations(&c, &generic(gl2()), &opts).unwrap().passed);
    assert!(matches!(
        verify_defining_relations(&standard_gl2(), &generic(gl2()), &opts),
        Err(Error::SeedViolatesRelations)
    ));
}

#[test]
fn first_pattern_violates_ef() {
    let p = Pyramid::gl(3).unwrap();
    let c = RelationSet::new(
        p,
        [Relation::gt(t(1, 2, 1), t(1, 3, 2)), Relation::geq(t(1, 3, 2), t(1, 2, 2))],
    )
    .unwrap();
    let opts = VerifyOptions {
        radius: 3,
        budget: 2,
        instantiations: 1,
        seed: 1,
    };
    let failing = oracle_seeds(&c)
        .unwrap()
        .iter()
        .filter_map(|l| verify_defining_relations(&c, l, &opts).unwrap().first_violation)
        .next()
        .expect("some seed violates a relation");
    assert_eq!(failing.family, "ef");
}

fn light() -> VerifyOptions {
    VerifyOptions {
        radius: 2,
        budget: 2,
        instantiations: 1,
        seed: 1,
    }
}

#[test]
fn oracle_on_gl3_sets() {
    let p = Pyramid::gl(3).unwrap();
    let cases = [
        (
            vec![
                Relation::gt(t(1, 2, 1), t(1, 3, 1)),
                Relation::geq(t(1, 3, 1), t(1, 3, 2)),
                Relation::geq(t(1, 3, 2), t(1, 2, 2)),
            ],
            true,
        ),
        (
            vec![
                Relation::gt(t(1, 2, 1), t(1, 3, 1)),
                Relation::geq(t(1, 3, 3), t(1, 2, 2)),
                Relation::geq(t(1, 2, 1), t(1, 1, 1)),
                Relation::gt(t(1, 1, 1), t(1, 2, 2)),
            ],
            false,
        ),
        (vec![Relation::geq(t(1, 2, 1), t(1, 1, 1))], true),
        (vec![Relation::gt(t(1, 2, 1), t(1, 3, 2)), Relation::geq(t(1, 3, 2), t(1, 2, 2))], false),
    ];
    for (edges, expect) in cases {
        let c = RelationSet::new(p.clone(), edges).unwrap();
        let verdict = is_admissible(&c);
        assert_eq!(verdict.admissible, expect, "{c}");
        assert!(verdict.revalidate(&c));
        let oracle = admissibility_oracle(&c, &light()).unwrap();
        assert_eq!(oracle.passed, expect, "{c}: {oracle:?}");
    }
}

#[test]
fn relabelled_top_row_certificate_revalidates() {
    let p = Pyramid::new(vec![1, 2]).unwrap();
    let c = RelationSet::new(
        p,
        [
            Relation::gt(t(1, 1, 1), t(2, 2, 2)),
            Relation::geq(t(1, 2, 1), t(1, 2, 2)),
            Relation::geq(t(2, 2, 2), t(1, 2, 1)),
        ],
    )
    .unwrap();
    let v = is_admissible(&c);
    assert!(v.admissible);
    assert!(v.revalidate(&c));
    assert!(admissibility_oracle(&c, &light()).unwrap().passed);
}

#[test]
fn irreducibility_examples() {
    let l = gl2_seed(0);
    assert!(is_irreducible(&standard_gl2(), &l).unwrap());
    let partial = RelationSet::new(gl2(), [Relation::geq(t(1, 2, 1), t(1, 1, 1))]).unwrap();
    assert!(!is_irreducible(&partial, &l).unwrap());
    assert!(is_irreducible(&RelationSet::empty(gl2()), &generic(gl2())).unwrap());
}

#[test]
fn probe_examples() {
    let l = gl2_seed(0);
    let w = enumerate_basis(&standard_gl2(), &l, 3, 1, 8).unwrap();
    let start = delta(&gl2(), &[(t(1, 1, 1), 1)]);
    assert_eq!(cyclicity_probe(&w, &start, 3).unwrap().len(), 3);
    assert_eq!(cyclicity_probe(&w, &start, 0).unwrap(), BTreeSet::from([start.clone()]));
    assert!(probe_irreducible(&w, 3).unwrap().is_none());

    let partial = RelationSet::new(gl2(), [Relation::geq(t(1, 2, 1), t(1, 1, 1))]).unwrap();
    let w = enumerate_basis(&partial, &l, 3, 1, 8).unwrap();
    assert!(probe_irreducible(&w, 3).unwrap().is_some());
}
