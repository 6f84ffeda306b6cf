//! Independent oracles and randomized property suites shared by the
//! `properties` and `acceptance` test targets.

#![allow(clippy::needless_range_loop)]

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use zacyclic::collapse::{greedy_collapse, CollapseStrategy};
use zacyclic::constructions::{cone_over_graph, dunce_hat};
use zacyclic::geometry::{
    linking_number, orientation, simplex_pair_test, verify_embedding, Coordinates, GeomSimplex, Point,
    PolygonalCurve, VerifyOptions,
};
use zacyclic::homology::{boundary_matrix, homology, is_z_acyclic};
use zacyclic::pi1::{abelianization, edge_path_presentation};
use zacyclic::snf::{invariant_factors, smith_normal_form, IntegerMatrix};
use zacyclic::{Simplex, SimplicialComplex, VertexLabel};

pub const CASES: u32 = 128;

pub fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn v(i: usize) -> VertexLabel {
    VertexLabel::new(format!("v{i}")).unwrap()
}

pub fn complex_from(facets: &[BTreeSet<usize>]) -> SimplicialComplex {
    SimplicialComplex::from_simplices(facets.iter().map(|f| Simplex::new(f.iter().map(|&i| v(i))).unwrap()))
}

// ---------------------------------------------------------------- oracles

/// Fraction-free (Bareiss) determinant.
pub fn bareiss_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as ratios of determinantal divisors (gcds of all minors).
pub fn invariant_factors_by_minors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut divisors = vec![BigInt::one()];
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| BigInt::from(a[i][j])).collect()).collect();
                g = g.gcd(&bareiss_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

/// Feasibility of `{A x = b, x >= 0}` by elimination of the equalities and
/// Fourier–Motzkin elimination of the remaining variables.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let piv = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= &piv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=n {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return false;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // inequalities  coeffs · y <= rhs  over the free variables y
    let mut ineqs: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for (i, _) in pivots.iter().enumerate() {
        // basic = rhs - N y >= 0   <=>   N y <= rhs
        ineqs.push((free.iter().map(|&f| m[i][f].clone()).collect(), m[i][n].clone()));
    }
    for k in 0..free.len() {
        let mut c = vec![BigRational::zero(); free.len()];
        c[k] = -BigRational::one();
        ineqs.push((c, BigRational::zero()));
    }
    for k in 0..free.len() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (c, r) in ineqs {
            if c[k].is_positive() {
                pos.push((c, r));
            } else if c[k].is_negative() {
                neg.push((c, r));
            } else {
                rest.push((c, r));
            }
        }
        for (cp, rp) in &pos {
            for (cn, rn) in &neg {
                let (sp, sn) = (-&cn[k], cp[k].clone());
                let c: Vec<BigRational> = cp.iter().zip(cn).map(|(x, y)| x * &sp + y * &sn).collect();
                rest.push((c, rp * &sp + rn * &sn));
            }
        }
        rest.sort();
        rest.dedup();
        ineqs = rest;
    }
    ineqs.iter().all(|(_, r)| !r.is_negative())
}

/// Independent decision of `conv(σ) ∩ conv(τ) = conv(shared)`: a common point
/// putting positive weight on a non-shared vertex of σ exists iff the cone
/// system with that weight normalized to one is feasible.
pub fn pair_ok_oracle(p: &[Point], qs: &[Point], shared: &[(usize, usize)]) -> bool {
    let d = p[0].dim();
    let (m, n) = (p.len(), qs.len());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..d {
        rows.push(p.iter().map(|x| x.coords()[k].clone()).chain(qs.iter().map(|x| -&x.coords()[k])).collect::<Vec<_>>());
        rhs.push(q(0));
    }
    rows.push((0..m + n).map(|j| if j < m { q(1) } else { q(-1) }).collect());
    rhs.push(q(0));
    let non_shared: Vec<bool> = (0..m).map(|i| !shared.iter().any(|&(a, _)| a == i)).collect();
    if !non_shared.iter().any(|&x| x) {
        return true;
    }
    rows.push((0..m + n).map(|j| if j < m && non_shared[j] { q(1) } else { q(0) }).collect());
    rhs.push(q(1));
    !feasible(&rows, &rhs)
}

/// Signed intersections of `c2` with the fan of `c1` from its first waypoint;
/// `None` when some intersection is not transversal.
pub fn linking_by_fan(c1: &PolygonalCurve, c2: &PolygonalCurve) -> Option<i64> {
    let p = c1.points();
    let s = c2.points();
    let mut total = 0;
    for i in 1..p.len() - 1 {
        let (a, b, c) = (&p[0], &p[i], &p[i + 1]);
        for j in 0..s.len() {
            let (x, y) = (&s[j], &s[(j + 1) % s.len()]);
            let ox = orientation(&[a.clone(), b.clone(), c.clone(), x.clone()]).unwrap();
            let oy = orientation(&[a.clone(), b.clone(), c.clone(), y.clone()]).unwrap();
            if ox == 0 || oy == 0 {
                return None;
            }
            if ox == oy {
                continue;
            }
            let e1 = orientation(&[x.clone(), y.clone(), a.clone(), b.clone()]).unwrap();
            let e2 = orientation(&[x.clone(), y.clone(), b.clone(), c.clone()]).unwrap();
            let e3 = orientation(&[x.clone(), y.clone(), c.clone(), a.clone()]).unwrap();
            if e1 == 0 || e2 == 0 || e3 == 0 {
                if (e1 >= 0 && e2 >= 0 && e3 >= 0) || (e1 <= 0 && e2 <= 0 && e3 <= 0) {
                    return None;
                }
                continue;
            }
            if e1 == e2 && e2 == e3 {
                total += i64::from(oy);
            }
        }
    }
    Some(total)
}

// ------------------------------------------------------------ generators

pub fn arb_complex(max_vertices: usize, max_dim: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0..max_vertices, 1..=max_dim + 1), 1..10)
        .prop_map(|facets| complex_from(&facets))
}

pub fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// Connected complexes on at most 10 vertices: a path through all vertices
/// plus random faces.
pub fn arb_connected_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=10).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 2..=3), 0..14).prop_map(move |mut facets| {
            facets.extend((1..n).map(|i| BTreeSet::from([i - 1, i])));
            complex_from(&facets)
        })
    })
}

/// Collapsible 2-complexes grown by elementary expansions from a triangle,
/// occasionally joined to a dunce hat (acyclic but not collapsible).
pub fn arb_acyclic_2complex() -> impl Strategy<Value = SimplicialComplex> {
    (prop::collection::vec((0u8..3, any::<u16>()), 0..12), any::<bool>()).prop_map(|(ops, hat)| {
        let mut facets: Vec<BTreeSet<usize>> = vec![BTreeSet::from([0, 1, 2])];
        let mut next = 3;
        for (op, pick) in ops {
            let k = complex_from(&facets);
            let index = |l: &VertexLabel| l.as_str()[1..].parse::<usize>().unwrap();
            match op {
                0 => {
                    let edges = k.faces_of_dim(1);
                    let e = &edges[pick as usize % edges.len()];
                    facets.push(BTreeSet::from([index(&e.vertices()[0]), index(&e.vertices()[1]), next]));
                    next += 1;
                }
                1 => {
                    let vs: Vec<&VertexLabel> = k.vertices().iter().collect();
                    facets.push(BTreeSet::from([index(vs[pick as usize % vs.len()]), next]));
                    next += 1;
                }
                _ => {
                    // fill a path a-b-c whose chord a-c is missing
                    let adj = k.adjacency();
                    let mut paths = Vec::new();
                    for (b, ns) in &adj {
                        for a in ns {
                            for c in ns {
                                if a < c && !adj[a].contains(c) {
                                    paths.push([index(a), index(b), index(c)]);
                                }
                            }
                        }
                    }
                    if !paths.is_empty() {
                        facets.push(paths[pick as usize % paths.len()].into_iter().collect());
                    }
                }
            }
        }
        let k = complex_from(&facets);
        if hat {
            let h = dunce_hat().unwrap();
            let hv = h.vertices().iter().next().unwrap().clone();
            k.wedge(&h, &v(0), &hv).unwrap()
        } else {
            k
        }
    })
}

/// Random graphs: a random tree on `n` vertices, plus extra edges half the time.
pub fn arb_graph() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=10).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<u16>(), n - 1),
            prop::collection::vec((0..n, 0..n), 0..3),
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(move |(parents, extra, add_extra, isolated)| {
                let mut facets: Vec<BTreeSet<usize>> = vec![BTreeSet::from([0])];
                for (i, p) in parents.iter().enumerate() {
                    facets.push(BTreeSet::from([*p as usize % (i + 1), i + 1]));
                }
                if add_extra {
                    facets.extend(extra.iter().filter(|(a, b)| a != b).map(|&(a, b)| BTreeSet::from([a, b])));
                }
                if isolated {
                    facets.push(BTreeSet::from([n]));
                }
                complex_from(&facets)
            })
    })
}

fn arb_point_in(dim: usize, r: i64) -> impl Strategy<Value = Point> {
    prop::collection::vec(-r..=r, dim).prop_map(|c| Point::from_ints(&c))
}

fn arb_point(dim: usize) -> impl Strategy<Value = Point> {
    arb_point_in(dim, 3)
}

/// Two simplices drawn from a common pool of points, sharing the points they both use.
pub fn arb_simplex_pair() -> impl Strategy<Value = (Vec<Point>, Vec<Point>, Vec<(usize, usize)>)> {
    (2usize..=3).prop_flat_map(|dim| {
        (
            prop::collection::vec(arb_point_in(dim, if dim == 2 { 2 } else { 1 }), 6),
            prop::collection::btree_set(0usize..6, 1..=dim + 1),
            prop::collection::btree_set(0usize..6, 1..=dim + 1),
        )
            .prop_map(|(pool, s, t)| {
                let s: Vec<usize> = s.into_iter().collect();
                let t: Vec<usize> = t.into_iter().collect();
                let shared = s
                    .iter()
                    .enumerate()
                    .filter_map(|(i, x)| t.iter().position(|y| y == x).map(|j| (i, j)))
                    .collect();
                (s.iter().map(|&i| pool[i].clone()).collect(), t.iter().map(|&i| pool[i].clone()).collect(), shared)
            })
    })
}

fn arb_curve() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(arb_point(3), 3..=5)
}

/// Orientation-preserving integer affine maps of `R^3`.
fn arb_affine() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
    (prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3), prop::collection::vec(-5i64..=5, 3))
}

fn apply_affine(m: &[Vec<i64>], t: &[i64], p: &Point) -> Point {
    Point::new(
        (0..3)
            .map(|i| (0..3).map(|j| q(m[i][j]) * &p.coords()[j]).sum::<BigRational>() + q(t[i]))
            .collect(),
    )
}

fn det3(m: &[Vec<i64>]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn hopf_pair() -> (PolygonalCurve, PolygonalCurve) {
    let c = |pts: &[[i64; 3]]| PolygonalCurve::new(pts.iter().map(|p| Point::from_ints(p)).collect()).unwrap();
    (c(&[[2, 0, 0], [0, 2, 0], [-2, 0, 0], [0, -2, 0]]), c(&[[0, 1, 1], [0, 1, -1], [4, 1, 1]]))
}

// ------------------------------------------------------------ suites

type Suite = Result<(), String>;

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Suite
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

pub fn boundary_squares_to_zero() -> Suite {
    run(arb_complex(7, 3), |k| {
        let top = k.dim().unwrap();
        for d in 2..=top {
            let prod = boundary_matrix(&k, d - 1).unwrap().mul(&boundary_matrix(&k, d).unwrap());
            prop_assert!(prod.is_zero(), "∂{}∂{} != 0", d - 1, d);
        }
        Ok(())
    })
}

pub fn snf_invariants() -> Suite {
    run(arb_matrix(), |rows| {
        let a = IntegerMatrix::from_rows(&rows);
        let r = smith_normal_form(&a);
        prop_assert_eq!(r.u.mul(&a).mul(&r.v), r.diagonal_matrix());
        let dense = |m: &IntegerMatrix| -> Vec<Vec<BigInt>> {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect()).collect()
        };
        prop_assert_eq!(bareiss_det(&dense(&r.u)).abs(), BigInt::one());
        prop_assert_eq!(bareiss_det(&dense(&r.v)).abs(), BigInt::one());
        for w in r.diagonal.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {:?}", r.diagonal);
        }
        prop_assert!(r.diagonal.iter().all(|d| d.is_positive()));
        prop_assert_eq!(&r.diagonal, &invariant_factors_by_minors(&rows));
        // permuting rows and columns leaves the invariant factors unchanged
        let mut permuted = rows.clone();
        permuted.reverse();
        for row in permuted.iter_mut() {
            row.rotate_left(1);
        }
        prop_assert_eq!(invariant_factors(&IntegerMatrix::from_rows(&permuted)), r.diagonal);
        Ok(())
    })
}

pub fn abelianization_is_h1() -> Suite {
    run(arb_connected_complex(), |k| {
        let base = k.vertices().iter().next().unwrap().clone();
        let p = edge_path_presentation(&k, &base).unwrap();
        prop_assert_eq!(abelianization(&p), homology(&k, 1).unwrap());
        Ok(())
    })
}

pub fn sums_of_acyclic_are_acyclic() -> Suite {
    run((arb_acyclic_2complex(), arb_acyclic_2complex(), any::<u16>(), any::<u16>()), |(a, b, i, j)| {
        prop_assert!(is_z_acyclic(&a) && is_z_acyclic(&b));
        let va: Vec<&VertexLabel> = a.vertices().iter().collect();
        let vb: Vec<&VertexLabel> = b.vertices().iter().collect();
        let w = a.wedge(&b, va[i as usize % va.len()], vb[j as usize % vb.len()]).unwrap();
        prop_assert!(is_z_acyclic(&w), "wedge not acyclic");
        let ta: Vec<Simplex> = a.facets().iter().filter(|f| f.dim() == 2).cloned().collect();
        let tb: Vec<Simplex> = b.facets().iter().filter(|f| f.dim() == 2).cloned().collect();
        let s = a.connected_sum(&ta[i as usize % ta.len()], &b, &tb[j as usize % tb.len()]).unwrap();
        prop_assert!(is_z_acyclic(&s), "connected sum not acyclic");
        prop_assert_eq!(s.euler_characteristic(), 1);
        Ok(())
    })
}

pub fn acyclic_graphs_are_collapsible_trees() -> Suite {
    let acyclic_seen = std::cell::Cell::new(0u32);
    let r = run(arb_graph(), |g| {
        let acyclic = is_z_acyclic(&g);
        prop_assert_eq!(acyclic, g.is_tree().unwrap());
        if acyclic {
            acyclic_seen.set(acyclic_seen.get() + 1);
            prop_assert!(greedy_collapse(&g, &CollapseStrategy::Lexicographic).collapsed_to_point);
        }
        Ok(())
    });
    r?;
    expect_some("acyclic graphs", acyclic_seen.get())
}

pub fn pair_test_symmetric_and_matches_oracle() -> Suite {
    let violations = std::cell::Cell::new(0u32);
    run(arb_simplex_pair(), |(p, t, shared)| {
        let (Ok(s1), Ok(s2)) = (GeomSimplex::new(p.clone()), GeomSimplex::new(t.clone())) else {
            return Ok(());
        };
        let flipped: Vec<(usize, usize)> = shared.iter().map(|&(a, b)| (b, a)).collect();
        let ab = simplex_pair_test(&s1, &s2, &shared).unwrap().is_ok();
        let ba = simplex_pair_test(&s2, &s1, &flipped).unwrap().is_ok();
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(ab, pair_ok_oracle(&p, &t, &shared));
        violations.set(violations.get() + u32::from(!ab));
        Ok(())
    })?;
    expect_some("violating pairs", violations.get())
}

fn expect_some(what: &str, seen: u32) -> Suite {
    if seen < CASES / 8 {
        return Err(format!("only {seen} {what} generated"));
    }
    Ok(())
}

pub fn prefilter_is_sound() -> Suite {
    let strategy = (arb_complex(6, 2), prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 6));
    run(strategy, |(k, pts)| {
        let coords = Coordinates::new(3, k.vertices().iter().enumerate().map(|(i, l)| (l.clone(), Point::from_ints(&pts[i]))).collect())
            .unwrap();
        let on = verify_embedding(&k, &coords, VerifyOptions { prefilter: true, parallel: false }).unwrap();
        let off = verify_embedding(&k, &coords, VerifyOptions { prefilter: false, parallel: true }).unwrap();
        prop_assert!(on.same_verdict(&off), "{:?} vs {:?}", on, off);
        Ok(())
    })
}

pub fn linking_invariances() -> Suite {
    let (h1, h2) = hopf_pair();
    let convention = linking_by_fan(&h1, &h2).ok_or("fan oracle degenerate on the Hopf pair")?
        * linking_number(&h1, &h2).map_err(|e| e.to_string())?;
    if convention.abs() != 1 {
        return Err("fan oracle disagrees on the Hopf pair".into());
    }
    let compared = std::cell::Cell::new(0u32);
    let strategy = (prop_oneof![Just(None), (arb_curve(), arb_curve()).prop_map(Some)], arb_affine(), 0usize..5);
    run(strategy, |(curves, (m, t), rot)| {
        let (c1, c2) = match curves {
            None => hopf_pair(),
            Some((a, b)) => match (PolygonalCurve::new(a), PolygonalCurve::new(b)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Ok(()),
            },
        };
        let Ok(lk) = linking_number(&c1, &c2) else { return Ok(()) };
        prop_assert_eq!(linking_number(&c2, &c1).unwrap(), lk);
        prop_assert_eq!(linking_number(&c1.reversed(), &c2.reversed()).unwrap(), lk);
        prop_assert_eq!(linking_number(&c1, &c2.reversed()).unwrap(), -lk);
        if let Some(fan) = linking_by_fan(&c1, &c2) {
            prop_assert_eq!(fan * convention, lk);
            compared.set(compared.get() + 1);
        }
        let mut pts = c1.points().to_vec();
        let len = pts.len();
        pts.rotate_left(rot % len);
        prop_assert_eq!(linking_number(&PolygonalCurve::new(pts).unwrap(), &c2).unwrap(), lk);
        if det3(&m) > 0 {
            let map = |c: &PolygonalCurve| PolygonalCurve::new(c.points().iter().map(|p| apply_affine(&m, &t, p)).collect()).unwrap();
            prop_assert_eq!(linking_number(&map(&c1), &map(&c2)).unwrap(), lk);
        }
        Ok(())
    })?;
    expect_some("fan comparisons", compared.get())
}

pub fn cone_complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![("cone-K5", cone_over_graph("K5").unwrap()), ("cone-K33", cone_over_graph("K33").unwrap())]
}
