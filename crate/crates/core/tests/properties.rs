use proptest::prelude::*;

use leibhom::algebras::{check_leibniz, LeibnizAlgebra};
use leibhom::exactla::{rank, Matrix, Q};
use leibhom::gmodules::{hom_space, invert, LeibModule, Representation};
use leibhom::lpcomplexes::{leibniz_cohomology, leibniz_homology};
use leibhom::session::{corpus, corpus_session, dense, ModuleSpec, Session, SessionFile};

fn names() -> Vec<&'static str> {
    corpus().into_iter().map(|(n, _)| n).collect()
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| {
            Matrix::from_dense(n, n, &v.into_iter().map(Q::from_int).collect::<Vec<_>>())
        })
        .prop_filter("singular", move |p| rank(p) == n)
}

fn session_and_basis() -> impl Strategy<Value = (Session, Matrix)> {
    proptest::sample::select(names()).prop_flat_map(|name| {
        let s = corpus_session(name).unwrap();
        let d = s.algebra.dim();
        (Just(s), invertible(d))
    })
}

/// The algebra in the basis given by the columns of `p`.
fn rebase(g: &LeibnizAlgebra, p: &Matrix) -> LeibnizAlgebra {
    let inv = invert(p).unwrap();
    let d = g.dim();
    let c = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| inv.mul_vec(&g.mul(&p.column(i), &p.column(j))))
                .collect()
        })
        .collect();
    check_leibniz(g.names().to_vec(), c).unwrap()
}

fn series(g: leibhom::complexes::GradedDims, d: usize) -> Vec<usize> {
    g.series(d as i64).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn algebra_invariants_survive_a_change_of_basis((s, p) in session_and_basis()) {
        let g = &s.algebra;
        let h = std::sync::Arc::new(rebase(g, &p));
        prop_assert_eq!(h.is_lie(), g.is_lie());
        prop_assert_eq!(h.lie().dim(), g.lie().dim());
        let d = 2;
        prop_assert_eq!(
            series(leibniz_homology(&LeibModule::trivial(&h), d).unwrap(), d),
            series(leibniz_homology(&LeibModule::trivial(g), d).unwrap(), d)
        );
        prop_assert_eq!(
            series(leibniz_cohomology(&LeibModule::adjoint(&h), d).unwrap(), d),
            series(leibniz_cohomology(&LeibModule::adjoint(g), d).unwrap(), d)
        );
    }

    #[test]
    fn module_homology_is_invariant_and_additive(name in proptest::sample::select(names()), seed in any::<u64>()) {
        let s = corpus_session(name).unwrap();
        let mods: Vec<&LeibModule> = s.leibniz.values().collect();
        let a = mods[(seed % mods.len() as u64) as usize];
        let b = mods[((seed >> 8) % mods.len() as u64) as usize];
        let d = 2;
        let ha = series(leibniz_homology(a, d).unwrap(), d);
        let hb = series(leibniz_homology(b, d).unwrap(), d);
        let sum = a.direct_sum(b);
        let hs = series(leibniz_homology(&sum, d).unwrap(), d);
        prop_assert_eq!(hs.clone(), ha.iter().zip(&hb).map(|(x, y)| x + y).collect::<Vec<_>>());
        let p = Matrix::from_fn(sum.dim(), sum.dim(), |i, j| {
            Q::from_int(if i == j { 1 } else if j == (i + 1) % sum.dim() { (seed % 3) as i64 - 1 } else { 0 })
        });
        if let Ok(moved) = sum.change_basis(&p) {
            prop_assert_eq!(series(leibniz_homology(&moved, d).unwrap(), d), hs);
            prop_assert_eq!(hom_space(&moved, &sum).len(), hom_space(&sum, &sum).len());
        }
    }

    #[test]
    fn sessions_round_trip_through_json((s, p) in session_and_basis()) {
        let mut file = s.file.clone();
        let adj = LeibModule::adjoint(&s.algebra).change_basis(&p).unwrap();
        file.modules.insert(
            "moved".into(),
            ModuleSpec::Leibniz {
                dim: adj.dim(),
                left: adj.left().iter().map(dense).collect(),
                right: adj.right().iter().map(dense).collect(),
            },
        );
        let text = file.to_json();
        let back = SessionFile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &file);
        let again = Session::new(back).unwrap();
        prop_assert_eq!(&again.leibniz["moved"], &adj);
    }
}
