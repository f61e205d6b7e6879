//! Hand-built valid fibers shared by the integration suites.

use fiberlat::{CurveClass, Edge, FiberConfiguration};

fn edge(a: usize, b: usize, intersection: i64) -> Edge {
    Edge { a, b, intersection }
}

fn minus_two(id: usize, n: i64, mult: i64) -> CurveClass {
    CurveClass::new(id, n, -2 * n, 0, mult)
}

/// Irreducible reduced fiber of genus `g`.
pub fn irreducible(g: i64) -> FiberConfiguration {
    FiberConfiguration::new(vec![CurveClass::new(0, 1, 0, 2 * g - 2, 1)], &[], 0, true).unwrap()
}

/// Irreducible multiple fiber `X_0 = r Y` with `K.Y = 2`.
pub fn multiple_irreducible(r: i64) -> FiberConfiguration {
    FiberConfiguration::new(vec![CurveClass::new(0, 1, 0, 2, r)], &[], 0, true).unwrap()
}

/// Two components with `K.C = 2` each, meeting twice.
pub fn two_components_double_edge() -> FiberConfiguration {
    FiberConfiguration::new(
        vec![
            CurveClass::new(0, 1, -2, 2, 1),
            CurveClass::new(1, 1, -2, 2, 1),
        ],
        &[edge(0, 1, 2)],
        0,
        true,
    )
    .unwrap()
}

/// Two genus-one components meeting once (a genus-2 degeneration).
pub fn two_elliptic() -> FiberConfiguration {
    FiberConfiguration::new(
        vec![
            CurveClass::new(0, 1, -1, 1, 1),
            CurveClass::new(1, 1, -1, 1, 1),
        ],
        &[edge(0, 1, 1)],
        0,
        true,
    )
    .unwrap()
}

/// A positive component in a cycle with an A2 chain of (-2)-curves.
pub fn triangle(multiplicity: i64) -> FiberConfiguration {
    FiberConfiguration::new(
        vec![
            CurveClass::new(0, 1, -2, 2, multiplicity),
            minus_two(1, 1, multiplicity),
            minus_two(2, 1, multiplicity),
        ],
        &[edge(0, 1, 1), edge(1, 2, 1), edge(0, 2, 1)],
        0,
        true,
    )
    .unwrap()
}

/// A fiber whose positive component has dualizing degree zero and meets the
/// rest in a single point: `C` with `[k':k] = 2`, `C^2 = -2`, `K.C = 2`, plus
/// one (-2)-curve met with multiplicity 2.
pub fn genus_one_component_fiber() -> FiberConfiguration {
    FiberConfiguration::new(
        vec![CurveClass::new(0, 2, -2, 2, 1), minus_two(1, 1, 1)],
        &[edge(0, 1, 2)],
        0,
        true,
    )
    .unwrap()
}

fn central_curve(id: usize, m: i64, mult: i64) -> CurveClass {
    CurveClass::new(id, m, -3 * m, m, mult)
}

/// A-chain (3,2,1) with the central curve on the 3-end, `m = 4n`.
pub fn a_end_5b(n: i64) -> FiberConfiguration {
    let m = 4 * n;
    FiberConfiguration::new(
        vec![
            minus_two(0, n, 3),
            minus_two(1, n, 2),
            minus_two(2, n, 1),
            central_curve(3, m, 1),
        ],
        &[edge(0, 1, n), edge(1, 2, n), edge(0, 3, m)],
        2,
        true,
    )
    .unwrap()
}

/// A-chain (1,2,3,2,1) with the central curve on the center, `m = 2n`.
pub fn a_center_5b(n: i64) -> FiberConfiguration {
    let m = 2 * n;
    FiberConfiguration::new(
        vec![
            minus_two(0, n, 1),
            minus_two(1, n, 2),
            minus_two(2, n, 3),
            minus_two(3, n, 2),
            minus_two(4, n, 1),
            central_curve(5, m, 1),
        ],
        &[
            edge(0, 1, n),
            edge(1, 2, n),
            edge(2, 3, n),
            edge(3, 4, n),
            edge(2, 5, m),
        ],
        2,
        true,
    )
    .unwrap()
}

/// D-shaped chain (1,2,3,4,3 with branch 2), central curve on the 3-end,
/// `m = 2n`.
pub fn d_chain_5b(n: i64) -> FiberConfiguration {
    let m = 2 * n;
    FiberConfiguration::new(
        vec![
            minus_two(0, n, 1),
            minus_two(1, n, 2),
            minus_two(2, n, 3),
            minus_two(3, n, 4),
            minus_two(4, n, 2),
            minus_two(5, n, 3),
            central_curve(6, m, 1),
        ],
        &[
            edge(0, 1, n),
            edge(1, 2, n),
            edge(2, 3, n),
            edge(3, 4, n),
            edge(3, 5, n),
            edge(5, 6, m),
        ],
        2,
        true,
    )
    .unwrap()
}

/// E7-shaped chain (2,4,6,5,4,3 with branch 3), central curve on the 3-end,
/// `m = 2n`.
pub fn e_chain_5b(n: i64) -> FiberConfiguration {
    let m = 2 * n;
    FiberConfiguration::new(
        vec![
            minus_two(0, n, 2),
            minus_two(1, n, 4),
            minus_two(2, n, 6),
            minus_two(3, n, 5),
            minus_two(4, n, 4),
            minus_two(5, n, 3),
            minus_two(6, n, 3),
            central_curve(7, m, 1),
        ],
        &[
            edge(0, 1, n),
            edge(1, 2, n),
            edge(2, 3, n),
            edge(3, 4, n),
            edge(4, 5, n),
            edge(2, 6, n),
            edge(5, 7, m),
        ],
        2,
        true,
    )
    .unwrap()
}

/// B-chain (2n:1, 2n:2, n:3), central curve on the degree-n end, `m = 2n`.
pub fn b_short_5b(n: i64) -> FiberConfiguration {
    let m = 2 * n;
    FiberConfiguration::new(
        vec![
            minus_two(0, 2 * n, 1),
            minus_two(1, 2 * n, 2),
            minus_two(2, n, 3),
            central_curve(3, m, 1),
        ],
        &[edge(0, 1, 2 * n), edge(1, 2, 2 * n), edge(2, 3, m)],
        2,
        true,
    )
    .unwrap()
}

/// B-chain (2n:1, 2n:2, 2n:3, [2n:3 ...,] n:3), central curve on the third
/// node; `tail` counts the optional (2n:3) run.
pub fn b_long_5b(n: i64, tail: usize) -> FiberConfiguration {
    let m = 2 * n;
    let mut curves = vec![
        minus_two(0, 2 * n, 1),
        minus_two(1, 2 * n, 2),
        minus_two(2, 2 * n, 3),
    ];
    let mut edges = vec![edge(0, 1, 2 * n), edge(1, 2, 2 * n)];
    let mut prev = 2;
    for _ in 0..tail {
        let id = curves.len();
        curves.push(minus_two(id, 2 * n, 3));
        edges.push(edge(prev, id, 2 * n));
        prev = id;
    }
    let end = curves.len();
    curves.push(minus_two(end, n, 3));
    edges.push(edge(prev, end, 2 * n));
    let c = curves.len();
    curves.push(central_curve(c, m, 1));
    edges.push(edge(2, c, m));
    FiberConfiguration::new(curves, &edges, 2, true).unwrap()
}

/// C-chain (n:1..n:5, 2n:3), central curve on the degree-2n end, `m = 2n`.
pub fn c_long_5b(n: i64) -> FiberConfiguration {
    let m = 2 * n;
    FiberConfiguration::new(
        vec![
            minus_two(0, n, 1),
            minus_two(1, n, 2),
            minus_two(2, n, 3),
            minus_two(3, n, 4),
            minus_two(4, n, 5),
            minus_two(5, 2 * n, 3),
            central_curve(6, m, 1),
        ],
        &[
            edge(0, 1, n),
            edge(1, 2, n),
            edge(2, 3, n),
            edge(3, 4, n),
            edge(4, 5, 2 * n),
            edge(5, 6, m),
        ],
        2,
        true,
    )
    .unwrap()
}

/// C-chain (n:2, n:4, 2n:3), central curve on the degree-2n end, `m = 4n`.
pub fn c_short_5b(n: i64) -> FiberConfiguration {
    let m = 4 * n;
    FiberConfiguration::new(
        vec![
            minus_two(0, n, 2),
            minus_two(1, n, 4),
            minus_two(2, 2 * n, 3),
            central_curve(3, m, 1),
        ],
        &[edge(0, 1, n), edge(1, 2, 2 * n), edge(2, 3, m)],
        2,
        true,
    )
    .unwrap()
}

/// The full corpus: reduced, multiple and degenerate-branch fibers.
pub fn corpus() -> Vec<(&'static str, FiberConfiguration)> {
    vec![
        ("irreducible genus 2", irreducible(2)),
        ("irreducible genus 3", irreducible(3)),
        ("double irreducible", multiple_irreducible(2)),
        ("triple irreducible", multiple_irreducible(3)),
        ("quadruple irreducible", multiple_irreducible(4)),
        ("two components, double edge", two_components_double_edge()),
        ("two elliptic components", two_elliptic()),
        (
            "genus-one component + (-2)-curve",
            genus_one_component_fiber(),
        ),
        ("triangle", triangle(1)),
        ("double triangle", triangle(2)),
        ("A(3,2,1) + central", a_end_5b(1)),
        ("A(1,2,3,2,1) + central", a_center_5b(1)),
        ("D(1,2,3,4,3;2) + central", d_chain_5b(1)),
        ("E(2,4,6,5,4,3;3) + central", e_chain_5b(1)),
        ("B(1,2,3) + central", b_short_5b(1)),
        ("B(1,2,3,3,3) + central", b_long_5b(1, 1)),
        ("C(1,2,3,4,5,3) + central", c_long_5b(1)),
        ("C(2,4,3) + central", c_short_5b(1)),
    ]
}
