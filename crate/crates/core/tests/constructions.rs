mod common;

use std::sync::Arc;

use common::{gcd, naive_blocking, naive_profile};
use pencil_core::blocking::classify;
use pencil_core::constructions::{
    baer_partition, blocking_curve_pencil, blocking_curve_shift, extremal_pencil, indicator_poly, interpolate,
    interpolate_excluding, realize_cover, realize_partition, CoverSpec,
};
use pencil_core::pencil::PartitionJson;
use pencil_core::poly::PointFunction;
use pencil_core::random::{random_partition, random_point_function, seeded_rng};
use pencil_core::{classify_pencil, Elem, Error, Partition, Plane, PointSet};

fn plane(p: u32, n: u32) -> Arc<Plane> {
    Arc::new(Plane::over(p, n).unwrap())
}

#[test]
fn indicators() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let pl = plane(p, n);
        for (j, qp) in pl.points().iter().enumerate() {
            let s = indicator_poly(&pl, qp);
            assert_eq!(s.degree(), 3 * (pl.q() - 1));
            for (i, pt) in pl.points().iter().enumerate() {
                assert_eq!(s.eval_at(pl.field(), pt), Elem((i == j) as u32));
            }
        }
    }
}

#[test]
fn interpolation() {
    let pl = plane(2, 2);
    let f = pl.field();
    let single = interpolate(&pl, &PointFunction::indicator(&pl, 4)).unwrap();
    let s4 = indicator_poly(&pl, &pl.point(4));
    assert!(pl.points().iter().all(|p| single.eval_at(f, p) == s4.eval_at(f, p)));

    let mut rng = seeded_rng(17);
    for _ in 0..10 {
        let g = random_point_function(&pl, &mut rng);
        let r = interpolate(&pl, &g).unwrap();
        assert_eq!(r.degree(), 9);
        assert!((0..21).all(|i| r.eval_at(f, &pl.point(i)) == g.value(i)));
    }
    let zero = PointFunction::new(&pl, vec![Elem::ZERO; 21]).unwrap();
    assert!(matches!(interpolate(&pl, &zero), Err(Error::ZeroFunction)));

    let excluded = PointSet::from_indices(21, [0, 5, 20]);
    let g = random_point_function(&pl, &mut rng);
    let r = interpolate_excluding(&pl, &g, &excluded).unwrap();
    for i in 0..21 {
        let expect = if excluded.contains(i) { Elem::ZERO } else { g.value(i) };
        assert_eq!(r.eval_at(f, &pl.point(i)), expect);
    }
}

#[test]
fn realize_small_partition() {
    let pl = plane(2, 1);
    let set = |pts: &[[u32; 3]]| pl.set_of(&pts.iter().map(|&v| pl.point_from_raw(v).unwrap()).collect::<Vec<_>>());
    let json = PartitionJson {
        q: 2,
        parts: vec![vec![[1, 0, 0], [0, 1, 0], [1, 1, 0]], vec![[0, 0, 1], [0, 1, 1]], vec![[1, 0, 1], [1, 1, 1]]],
        common: None,
    };
    let partition = json.to_partition(&pl).unwrap();
    assert_eq!(partition.parts()[0], set(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]));
    let pencil = realize_partition(pl.clone(), &partition).unwrap();
    assert_eq!(pencil.degree(), 3);
    assert_eq!(pencil.induced_partition().unwrap(), partition);
    let back = PartitionJson::from_sets(&pl, partition.parts(), None);
    assert_eq!(back.parts[0], vec![[1, 0, 0], [1, 1, 0], [0, 1, 0]]);
    assert_eq!(back.to_partition(&pl).unwrap(), partition);
}

#[test]
fn realize_degenerate_partition() {
    let pl = plane(5, 1);
    let mut parts = vec![pl.empty_set(); 6];
    parts[2] = pl.full_set();
    let partition = Partition::new(&pl, parts).unwrap();
    let report = classify_pencil(&realize_partition(pl.clone(), &partition).unwrap());
    assert_eq!(report.members[2].count, 31);
    assert_eq!(report.nonblocking, 5);
    assert_eq!(report.base_locus_size, 0);
}

#[test]
fn random_round_trips() {
    for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let pl = plane(p, n);
        let mut rng = seeded_rng(100 + pl.q() as u64);
        for _ in 0..10 {
            let part = random_partition(&pl, &mut rng);
            let pencil = realize_partition(pl.clone(), &part).unwrap();
            assert_eq!(pencil.degree(), 3 * (pl.q() - 1));
            assert_eq!(pencil.induced_partition().unwrap(), part);
        }
    }
}

#[test]
fn covers() {
    let pl = plane(3, 1);
    let mut rng = seeded_rng(31);
    let part = random_partition(&pl, &mut rng);
    let spec = CoverSpec::new(&pl, part.parts().to_vec(), pl.empty_set()).unwrap();
    let a = realize_cover(pl.clone(), &spec).unwrap();
    let b = realize_partition(pl.clone(), &part).unwrap();
    assert_eq!(a.member_point_sets(), b.member_point_sets());

    let center = pl.point_index(&pl.point_from_raw([0, 0, 1]).unwrap());
    let lines: Vec<PointSet> =
        pl.lines_through_index(center).iter().map(|&l| pl.line_points(l as usize).clone()).collect();
    let common = PointSet::from_indices(pl.size(), [center]);
    let spec = CoverSpec::new(&pl, lines.clone(), common.clone()).unwrap();
    let pencil = realize_cover(pl.clone(), &spec).unwrap();
    assert_eq!(pencil.degree(), 6);
    assert_eq!(pencil.member_point_sets(), lines);
    assert!(pencil.base_locus_points().is_subset(&common));

    let json = spec.to_json(&pl);
    assert_eq!(CoverSpec::from_json(&pl, &json).unwrap(), spec);

    let mut bad = lines.clone();
    let extra = lines[2].iter().find(|&i| i != center).unwrap();
    bad[1].insert(extra);
    assert!(matches!(CoverSpec::new(&pl, bad, common.clone()), Err(Error::InvalidCover(_))));
    assert!(matches!(CoverSpec::new(&pl, lines[..3].to_vec(), common), Err(Error::InvalidCover(_))));
}

#[test]
fn blocking_curve_pencils() {
    for (p, n, m, d) in [(2, 1, 0, 7), (3, 1, 0, 13), (5, 1, 2, 33)] {
        let pl = plane(p, n);
        let q = pl.q();
        assert_eq!(blocking_curve_shift(q), m);
        assert_eq!(gcd(q as u64 - 1, d as u64), 1);
        let pencil = blocking_curve_pencil(pl.clone()).unwrap();
        assert_eq!(pencil.degree(), d);
        assert_eq!(pl.points_of(&pencil.base_locus_points()), vec![pl.point_from_raw([1, 0, 0]).unwrap()]);
        for s in pencil.member_point_sets() {
            assert!(naive_blocking(&pl, &s).0);
            assert!(classify(&pl, &s).is_blocking());
        }
    }
}

#[test]
fn baer_partitions() {
    for (p, n, parts, size, root) in [(2, 2, 3, 7, 2), (3, 2, 7, 13, 3), (2, 4, 13, 21, 4)] {
        let pl = plane(p, n);
        let baer = baer_partition(&pl).unwrap();
        assert_eq!(baer.len(), parts);
        let mut union = pl.empty_set();
        for s in &baer {
            assert_eq!(s.len(), size);
            assert!(!union.intersects(s));
            union = union.union(s);
            let t = naive_profile(&pl, s);
            let nonzero: Vec<usize> = (0..t.len()).filter(|&i| t[i] > 0).collect();
            assert_eq!(nonzero, vec![1, root + 1]);
        }
        assert_eq!(union.len(), pl.size());
    }
    assert!(matches!(baer_partition(&plane(2, 3)), Err(Error::NotSquare(8))));
}

#[test]
fn extremal_pencils() {
    for (p, n, root) in [(2, 2, 2usize), (3, 2, 3)] {
        let pl = plane(p, n);
        let pencil = extremal_pencil(pl.clone()).unwrap();
        let q = pl.q() as usize;
        assert_eq!(pencil.degree() as usize, 3 * (q - 1));
        let report = classify_pencil(&pencil);
        assert_eq!(report.nonblocking, root);
        assert_eq!(report.nontrivially_blocking(), q - root + 1);
        assert_eq!(report.base_locus_size, 0);
    }
    assert!(matches!(extremal_pencil(plane(3, 1)), Err(Error::NotSquare(3))));
}
