//! Adjunction and Riemann-Roch degree bookkeeping, and the decidable degree
//! criteria built on it: cohomology vanishing, global generation, conic
//! detection, Koszul index duality and the generation-degree bound for the
//! canonical ring of a fiber.
//!
//! The vanishing and generation predicates are one-directional certificates:
//! `true` means the degree criterion is met (so the conclusion holds), while
//! `false` only means the criterion failed, never that cohomology is nonzero.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CurveClass, Divisor, FiberConfiguration};

/// A point twist contributes a fixed degree to every divisor containing the
/// named component. Only degrees enter the criteria here, so a point is
/// modeled by its component and its signed degree over `k` (a multiple of the
/// residue degree of the point).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointTwist {
    pub component: usize,
    pub degree: i64,
}

/// Formal integer combination `a.K + sum b_i C_i` of the relative canonical
/// class and fiber components, plus optional point twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineBundleClass {
    pub canonical_power: i64,
    pub component_twist: Vec<i64>,
    pub point_twists: Vec<PointTwist>,
}

impl LineBundleClass {
    pub fn trivial(len: usize) -> Self {
        LineBundleClass {
            canonical_power: 0,
            component_twist: vec![0; len],
            point_twists: Vec::new(),
        }
    }

    /// `omega^{a}` as a divisor class.
    pub fn omega_power(a: i64, len: usize) -> Self {
        LineBundleClass {
            canonical_power: a,
            component_twist: vec![0; len],
            point_twists: Vec::new(),
        }
    }

    /// `omega^{a}(-D)`.
    pub fn omega_power_minus(a: i64, d: &Divisor) -> Self {
        LineBundleClass {
            canonical_power: a,
            component_twist: d.coeffs().iter().map(|&c| -c).collect(),
            point_twists: Vec::new(),
        }
    }

    /// Add a point twist of the given signed degree on a component.
    pub fn with_point(mut self, component: usize, degree: i64) -> Self {
        self.point_twists.push(PointTwist { component, degree });
        self
    }
}

/// Degree of the class restricted to `D`:
/// `a (K.D) + (sum b_i C_i).D + point contributions`.
pub fn degree_on(cfg: &FiberConfiguration, l: &LineBundleClass, d: &Divisor) -> Result<i64> {
    if l.component_twist.len() != cfg.len() {
        return Err(Error::IndexMismatch {
            divisor: l.component_twist.len(),
            curves: cfg.len(),
        });
    }
    let twist = Divisor::new(l.component_twist.clone());
    let mut deg = l.canonical_power * cfg.canonical_pairing(d)? + cfg.pairing(&twist, d)?;
    for pt in &l.point_twists {
        if pt.component >= cfg.len() {
            return Err(Error::IndexMismatch {
                divisor: pt.component,
                curves: cfg.len(),
            });
        }
        if d.coeff(pt.component) >= 1 {
            deg += pt.degree;
        }
    }
    Ok(deg)
}

/// Degree of `omega^{m}(-Y')|_C` for a component `C` of `Y`, `Y' = Y - C`,
/// computed two ways and checked against itself:
/// `deg(omega_C) + (m-1) K.C - Y.C  =  m K.C - Y.C + C^2`.
pub fn twist_degree_formula(
    cfg: &FiberConfiguration,
    m: i64,
    c: usize,
    y: &Divisor,
) -> Result<i64> {
    if c >= cfg.len() {
        return Err(Error::IndexMismatch {
            divisor: c,
            curves: cfg.len(),
        });
    }
    if y.coeff(c) < 1 {
        return Err(Error::Precondition(format!(
            "curve {c} does not occur in the divisor"
        )));
    }
    let unit = Divisor::unit(cfg.len(), c);
    let curve = cfg.curve(c);
    let omega_c = curve.dualizing_degree();
    let yc = cfg.pairing(y, &unit)?;
    let adjunction_route = omega_c + (m - 1) * curve.canonical_deg - yc;

    let y_prime = y.sub(&unit);
    let l = LineBundleClass::omega_power_minus(m, &y_prime);
    let bundle_route = degree_on(cfg, &l, &unit)?;
    assert_eq!(
        adjunction_route, bundle_route,
        "the two forms of the twist degree must agree"
    );
    Ok(adjunction_route)
}

/// Sufficient criterion for `H^1(D, L|_D) = 0`: every subcurve `0 < B <= D`
/// satisfies `deg(L|_B) > deg(omega_B) = B^2 + K.B`.
pub fn h1_vanishing_predicate(
    cfg: &FiberConfiguration,
    l: &LineBundleClass,
    d: &Divisor,
    cap: u128,
) -> Result<bool> {
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    for b in cfg.subcurves(d, cap)? {
        let lhs = degree_on(cfg, l, &b)?;
        let omega_b = cfg.pairing(&b, &b)? + cfg.canonical_pairing(&b)?;
        if lhs <= omega_b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Euler-characteristic dimension count under certified vanishing:
/// `h^0 = deg(L|_D) - (D^2 + K.D)/2` when the `H^1` criterion holds,
/// `None` ("unknown") otherwise.
pub fn h0_under_vanishing(
    cfg: &FiberConfiguration,
    l: &LineBundleClass,
    d: &Divisor,
    cap: u128,
) -> Result<Option<i64>> {
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    let adjunction = cfg.pairing(d, d)? + cfg.canonical_pairing(d)?;
    if adjunction % 2 != 0 {
        return Err(Error::Configuration(format!(
            "D^2 + K.D = {adjunction} is odd; invalid configuration"
        )));
    }
    if !h1_vanishing_predicate(cfg, l, d, cap)? {
        return Ok(None);
    }
    Ok(Some(degree_on(cfg, l, d)? - adjunction / 2))
}

/// Global-generation criterion on an integral curve:
/// `deg(L|_C) >= deg(omega_C) + 2 [k':k]`.
pub fn gg_criterion(cfg: &FiberConfiguration, l: &LineBundleClass, c: usize) -> Result<bool> {
    if c >= cfg.len() {
        return Err(Error::IndexMismatch {
            divisor: c,
            curves: cfg.len(),
        });
    }
    let unit = Divisor::unit(cfg.len(), c);
    let curve = cfg.curve(c);
    Ok(degree_on(cfg, l, &unit)? >= curve.dualizing_degree() + 2 * curve.field_degree)
}

/// Outcome of the conic criterion on an integral curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConicTest {
    /// `deg(omega_C) < 0`: the curve is an irreducible conic in the plane
    /// over its constant field.
    pub is_conic: bool,
    /// `deg(omega_C)` divided by the constant-field degree; equals -2 for a
    /// conic.
    pub omega_degree_over_constant_field: i64,
    /// For a conic the Picard group is infinite cyclic, so a degree-zero
    /// restriction of the canonical class is trivial.
    pub omega_restriction_trivial: bool,
}

pub fn conic_test(curve: &CurveClass) -> ConicTest {
    let omega = curve.dualizing_degree();
    let is_conic = omega < 0;
    ConicTest {
        is_conic,
        omega_degree_over_constant_field: omega / curve.field_degree,
        omega_restriction_trivial: is_conic && curve.canonical_deg == 0,
    }
}

/// Index of a Koszul cohomology group `K_{i,j}` attached to a generating
/// space of dimension `r + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KoszulIndex {
    pub i: i64,
    pub j: i64,
    pub r: i64,
}

impl KoszulIndex {
    pub fn new(i: i64, j: i64, r: i64) -> Result<Self> {
        if r < 0 {
            return Err(Error::Precondition(format!("r must be >= 0, got {r}")));
        }
        if i < 0 || i > r {
            return Err(Error::KoszulIndexRange { i, max: r });
        }
        Ok(KoszulIndex { i, j, r })
    }
}

/// Duality on Koszul indices: `(i, j) <-> (r-1-i, 2-j)`. Defined for
/// `0 <= i <= r-1` and involutive there.
pub fn koszul_dual_index(idx: KoszulIndex) -> Result<KoszulIndex> {
    if idx.i < 0 || idx.i > idx.r - 1 {
        return Err(Error::KoszulIndexRange {
            i: idx.i,
            max: idx.r - 1,
        });
    }
    Ok(KoszulIndex {
        i: idx.r - 1 - idx.i,
        j: 2 - idx.j,
        r: idx.r,
    })
}

/// Vanishing test for a Koszul group from the dimension of the twisted
/// sections: the group vanishes when `h^0 = 0`, or when `h^0 = 1` and the
/// twisted bundle is trivial.
pub fn koszul_vanishing(_idx: KoszulIndex, h0: i64, is_trivial_bundle: bool) -> Result<bool> {
    if h0 < 0 {
        return Err(Error::Precondition(format!("negative h^0: {h0}")));
    }
    Ok(h0 == 0 || (h0 == 1 && is_trivial_bundle))
}

/// Generation-degree bound for the canonical ring of the fiber: 4 when the
/// full fiber divisor is 1-connected, 5 otherwise (multiple fibers).
pub fn generation_degree_bound(cfg: &FiberConfiguration, cap: u128) -> Result<u32> {
    if !cfg.is_full_fiber() {
        return Err(Error::Precondition(
            "generation bound is defined for validated full fibers".into(),
        ));
    }
    let fiber = cfg.fiber_divisor();
    Ok(if cfg.is_one_connected(&fiber, cap)? {
        4
    } else {
        5
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{CurveClass, Edge};
    use crate::DEFAULT_SUBCURVE_CAP;

    fn minus_two(id: usize, n: i64) -> CurveClass {
        CurveClass::new(id, n, -2 * n, 0, 1)
    }

    /// Cycle fiber: one positive component (self -2, K = 2) meeting an
    /// A2-chain of (-2)-curves in a triangle; multiplicities all 1.
    fn triangle_fiber() -> FiberConfiguration {
        FiberConfiguration::new(
            vec![
                CurveClass::new(0, 1, -2, 2, 1),
                minus_two(1, 1),
                minus_two(2, 1),
            ],
            &[
                Edge {
                    a: 0,
                    b: 1,
                    intersection: 1,
                },
                Edge {
                    a: 1,
                    b: 2,
                    intersection: 1,
                },
                Edge {
                    a: 0,
                    b: 2,
                    intersection: 1,
                },
            ],
            0,
            true,
        )
        .unwrap()
    }

    #[test]
    fn degree_of_trivial_class() {
        let cfg = triangle_fiber();
        let l = LineBundleClass::trivial(3);
        assert_eq!(degree_on(&cfg, &l, &cfg.fiber_divisor()).unwrap(), 0);
    }

    #[test]
    fn degree_of_omega_square() {
        let cfg = triangle_fiber();
        let l = LineBundleClass::omega_power(2, 3);
        // K.F = 2
        assert_eq!(degree_on(&cfg, &l, &cfg.fiber_divisor()).unwrap(), 4);
    }

    #[test]
    fn twist_formula_on_minus_two_curve() {
        let cfg = triangle_fiber();
        let f = cfg.fiber_divisor();
        // (-2)-curve with Y.C = 0 and m = 2: degree -2n
        assert_eq!(twist_degree_formula(&cfg, 2, 1, &f).unwrap(), -2);
    }

    #[test]
    fn twist_formula_degenerate_branch_shapes() {
        // deg omega_C = 0, K.C = n', Y.C = 0, m = 2  ->  n'
        let cfg = FiberConfiguration::subconfiguration(
            vec![CurveClass::new(0, 1, -1, 1, 1), minus_two(1, 1)],
            &[Edge {
                a: 0,
                b: 1,
                intersection: 1,
            }],
            0,
        )
        .unwrap();
        let y = Divisor::new(vec![1, 1]);
        assert_eq!(cfg.pairing(&y, &Divisor::unit(2, 0)).unwrap(), 0);
        assert_eq!(twist_degree_formula(&cfg, 2, 0, &y).unwrap(), 1);

        // deg omega_C = -2n', K.C = n', Y.C = 0, m = 2  ->  -n'
        let cfg = FiberConfiguration::subconfiguration(
            vec![CurveClass::new(0, 1, -3, 1, 1), minus_two(1, 1)],
            &[Edge {
                a: 0,
                b: 1,
                intersection: 1,
            }],
            0,
        )
        .unwrap();
        let y = Divisor::new(vec![1, 3]);
        assert_eq!(cfg.pairing(&y, &Divisor::unit(2, 0)).unwrap(), 0);
        assert_eq!(twist_degree_formula(&cfg, 2, 0, &y).unwrap(), -1);
    }

    #[test]
    fn twist_formula_requires_membership() {
        let cfg = triangle_fiber();
        let y = Divisor::new(vec![0, 1, 1]);
        assert!(twist_degree_formula(&cfg, 2, 0, &y).is_err());
    }

    #[test]
    fn h1_criterion_for_pluricanonical_restrictions() {
        let cfg = triangle_fiber();
        let f = cfg.fiber_divisor();
        for m in 2..=6 {
            let l = LineBundleClass::omega_power_minus(m, &f);
            assert!(
                h1_vanishing_predicate(&cfg, &l, &f, DEFAULT_SUBCURVE_CAP).unwrap(),
                "criterion must hold for m = {m}"
            );
        }
    }

    #[test]
    fn h1_criterion_trivial_bundle_on_minus_two_curve() {
        let cfg = triangle_fiber();
        let l = LineBundleClass::trivial(3);
        let d = Divisor::unit(3, 1);
        assert!(h1_vanishing_predicate(&cfg, &l, &d, DEFAULT_SUBCURVE_CAP).unwrap());
    }

    #[test]
    fn h0_of_structure_sheaf_on_minus_two_curve() {
        let cfg = triangle_fiber();
        let l = LineBundleClass::trivial(3);
        let d = Divisor::unit(3, 1);
        assert_eq!(
            h0_under_vanishing(&cfg, &l, &d, DEFAULT_SUBCURVE_CAP).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn gg_criterion_threshold() {
        // curve with deg omega = 2, n = 1: bound is 4
        let cfg =
            FiberConfiguration::subconfiguration(vec![CurveClass::new(0, 1, 0, 2, 1)], &[], 0)
                .unwrap();
        let four = LineBundleClass::omega_power(2, 1);
        assert!(gg_criterion(&cfg, &four, 0).unwrap());
        let three = LineBundleClass::omega_power(2, 1).with_point(0, -1);
        assert!(!gg_criterion(&cfg, &three, 0).unwrap());
    }

    #[test]
    fn conic_detection() {
        let c = minus_two(0, 2);
        let t = conic_test(&c);
        assert!(t.is_conic);
        assert_eq!(t.omega_degree_over_constant_field, -2);
        assert!(t.omega_restriction_trivial);

        // genus-1 component: deg omega = 0
        let e = CurveClass::new(0, 1, -1, 1, 1);
        assert!(!conic_test(&e).is_conic);

        // positive canonical degree with negative self-intersection
        let c2 = CurveClass::new(0, 1, -3, 1, 1);
        let t2 = conic_test(&c2);
        assert!(t2.is_conic);
        assert!(!t2.omega_restriction_trivial);
    }

    #[test]
    fn koszul_duality_arithmetic() {
        let idx = KoszulIndex::new(0, 3, 4).unwrap();
        let dual = koszul_dual_index(idx).unwrap();
        assert_eq!((dual.i, dual.j, dual.r), (3, -1, 4));
        let back = koszul_dual_index(dual).unwrap();
        assert_eq!(back, idx);

        // i = r is outside the duality range
        let edge = KoszulIndex::new(4, 0, 4).unwrap();
        assert!(koszul_dual_index(edge).is_err());
    }

    #[test]
    fn koszul_vanishing_cases() {
        let idx = KoszulIndex::new(0, 2, 3).unwrap();
        assert!(koszul_vanishing(idx, 0, false).unwrap());
        assert!(koszul_vanishing(idx, 1, true).unwrap());
        assert!(!koszul_vanishing(idx, 1, false).unwrap());
        assert!(!koszul_vanishing(idx, 2, true).unwrap());
        assert!(koszul_vanishing(idx, -1, false).is_err());
    }

    #[test]
    fn generation_bound_reduced_vs_multiple() {
        let cfg = triangle_fiber();
        assert_eq!(
            generation_degree_bound(&cfg, DEFAULT_SUBCURVE_CAP).unwrap(),
            4
        );

        // irreducible multiple fiber X_0 = 2Y
        let double =
            FiberConfiguration::new(vec![CurveClass::new(0, 1, 0, 2, 2)], &[], 0, true).unwrap();
        assert_eq!(
            generation_degree_bound(&double, DEFAULT_SUBCURVE_CAP).unwrap(),
            5
        );

        // irreducible reduced fiber
        let simple =
            FiberConfiguration::new(vec![CurveClass::new(0, 1, 0, 2, 1)], &[], 0, true).unwrap();
        assert_eq!(
            generation_degree_bound(&simple, DEFAULT_SUBCURVE_CAP).unwrap(),
            4
        );
    }
}
