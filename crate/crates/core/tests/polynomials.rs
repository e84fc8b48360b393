use pencil_core::constructions::indicator_poly;
use pencil_core::poly::{all_lines_product, expand, linear_combination, PolyExpr, SparsePoly, DEFAULT_TERM_GUARD};
use pencil_core::{Elem, Error, FieldCtx, Plane};

fn z_power(q: u32) -> PolyExpr {
    PolyExpr::pow(PolyExpr::linear([Elem(0), Elem(0), Elem(1)]), q - 1).unwrap()
}

#[test]
fn evaluation_examples() {
    let pl = Plane::over(5, 1).unwrap();
    let f = pl.field();
    let zq = z_power(5);
    assert_eq!(zq.eval_at(f, &pl.point_from_raw([0, 1, 1]).unwrap()), Elem::ONE);
    assert_eq!(zq.eval_at(f, &pl.point_from_raw([1, 1, 0]).unwrap()), Elem::ZERO);
    assert!(PolyExpr::coordinate(2).is_zero_at(f, &pl.point_from_raw([1, 0, 0]).unwrap()));
    assert!(pl.points().iter().all(|p| !PolyExpr::scalar(Elem::ONE).is_zero_at(f, p)));
    let l = PolyExpr::linear([Elem(1), Elem(2), Elem(3)]);
    assert_eq!(pl.points().iter().filter(|p| l.is_zero_at(f, p)).count(), 6);
}

#[test]
fn scaled_representatives_agree_when_q_minus_1_divides_degree() {
    let pl = Plane::over(2, 2).unwrap();
    let f = pl.field();
    let e =
        PolyExpr::product(vec![z_power(4), PolyExpr::pow(PolyExpr::linear([Elem(1), Elem(2), Elem(3)]), 3).unwrap()])
            .unwrap();
    assert_eq!(e.degree() % 3, 0);
    for p in pl.points() {
        let base = e.eval(f, p.coords());
        for lambda in f.elements().filter(|c| !c.is_zero()) {
            let v = p.coords().map(|c| f.mul(lambda, c));
            assert_eq!(e.eval(f, v), base);
        }
    }
    assert!(e.is_well_defined_function(f));
}

#[test]
fn linear_combinations() {
    let pl = Plane::over(3, 1).unwrap();
    let f = pl.field();
    let a = PolyExpr::monomial([2, 0, 0]);
    let b = PolyExpr::sum(vec![PolyExpr::monomial([0, 1, 1]), PolyExpr::smul(Elem(2), PolyExpr::monomial([0, 0, 2]))])
        .unwrap();
    for s in f.elements() {
        for t in f.elements() {
            let Ok(c) = linear_combination(s, t, &a, &b) else {
                assert!(s.is_zero() && t.is_zero());
                continue;
            };
            for p in pl.points() {
                let expect = f.add(f.mul(s, a.eval_at(f, p)), f.mul(t, b.eval_at(f, p)));
                assert_eq!(c.eval_at(f, p), expect);
            }
        }
    }
    assert!(matches!(
        linear_combination(Elem(1), Elem(1), &a, &PolyExpr::coordinate(0)),
        Err(Error::DegreeMismatch { .. })
    ));
}

#[test]
fn product_of_all_lines_vanishes() {
    for (p, n, d) in [(2, 1, 7), (3, 1, 13), (2, 2, 21)] {
        let pl = Plane::over(p, n).unwrap();
        let h = all_lines_product(&pl);
        assert_eq!(h.degree(), d);
        assert!(pl.points().iter().all(|pt| h.is_zero_at(pl.field(), pt)));
    }
}

#[test]
fn expansion() {
    let f2 = FieldCtx::new(2, 1).unwrap();
    let sq = PolyExpr::pow(PolyExpr::linear([Elem(1), Elem(1), Elem(0)]), 2).unwrap();
    let x2y2 = SparsePoly::from_terms(&f2, 2, [([2, 0, 0], Elem(1)), ([0, 2, 0], Elem(1))]).unwrap();
    assert_eq!(expand(&f2, &sq, DEFAULT_TERM_GUARD).unwrap(), x2y2);

    let pl = Plane::over(2, 1).unwrap();
    for qp in pl.points() {
        let s = indicator_poly(&pl, qp);
        let e = expand(pl.field(), &s, DEFAULT_TERM_GUARD).unwrap();
        for p in pl.points() {
            assert_eq!(e.eval(pl.field(), p.coords()), s.eval_at(pl.field(), p));
        }
    }

    let f31 = FieldCtx::new(31, 1).unwrap();
    let factors = (1..=21u32).map(|i| PolyExpr::linear([Elem(i), Elem(1), Elem((3 * i) % 31)])).collect();
    let big = PolyExpr::product(factors).unwrap();
    assert!(matches!(expand(&f31, &big, 1_000), Err(Error::TermGuard { guard: 1_000 })));
}

#[test]
fn sums_must_be_homogeneous() {
    let r = PolyExpr::sum(vec![PolyExpr::coordinate(0), PolyExpr::monomial([1, 1, 0])]);
    assert!(matches!(r, Err(Error::DegreeMismatch { left: 1, right: 2 })));
    assert!(PolyExpr::pow(PolyExpr::coordinate(0), 0).is_err());
    assert!(PolyExpr::product(Vec::new()).is_err());
}
