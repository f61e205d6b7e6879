//! Exhaustive reproduction of the degenerate branch of the base-point-freeness
//! induction (case 5b): a square-zero divisor `Y = C + D` where `C` is
//! rational over a degree-`m` constant field with `C^2 = -3m`, `K.C = m`, and
//! `D` is a connected chain of (-2)-curves with multiplicities.
//!
//! Since `deg omega_Y = m` must be even and constant-field degrees over a
//! separably closed residue field are powers of the characteristic, the whole
//! branch lives in residue characteristic 2; all degree ratios inside `D` are
//! powers of 2.
//!
//! The search imposes the numeric constraint system exactly: `Y.C_i = 0` for
//! every component, `Y.C = 0`, the pairwise chain constraints, negative
//! definiteness, and the star inequality `(C+Z)^2 <= 0` for the fundamental
//! cycle `Z` of `D`. Every pruned branch carries an [`ExclusionCertificate`]
//! whose witness integers re-evaluate to a contradiction independently of the
//! search; complete configurations are re-validated through the full-fiber
//! constructor and classified into shape classes.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::chain::{canonical_form, classify, Family};
use crate::error::{Error, Result};
use crate::lattice::{CurveClass, Divisor, Edge, FiberConfiguration};

/// Constraint violated by an excluded branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ConstraintTag {
    /// `D'^2` must be `0 mod 2n`; the branch forces an odd multiple of `n`.
    #[serde(rename = "parity-mod-2n")]
    ParityMod2n,
    /// `(C+Z)^2 = -3m - 2n + 2 C.Z` must be nonpositive.
    #[serde(rename = "star-inequality")]
    StarInequality,
    /// Intersection of two chain curves differs from `max(n_i, n_j)`.
    #[serde(rename = "strict-lemma")]
    StrictLemma,
    /// Degree ratio of intersecting chain curves outside {1, 2, 3}.
    #[serde(rename = "ratio-lemma")]
    RatioLemma,
    /// Several chain curves through one point of `C` close a cycle.
    #[serde(rename = "cycle-in-D")]
    CycleInD,
    /// `3m = c n` with `m/n` a power of 2: impossible when `3` does not
    /// divide `c`.
    #[serde(rename = "char-constraint")]
    CharConstraint,
    /// A neighbor of the triple curve violates the multiplicity claims:
    /// `0 = C_i.Y >= a C_i^2 + 3 C_i.C_x > 0`.
    #[serde(rename = "multiplicity-claim")]
    MultiplicityClaim,
    /// The branch forces every chain degree to be at least `2n`, contradicting
    /// `n = min n_i`.
    #[serde(rename = "min-degree")]
    MinDegree,
}

impl fmt::Display for ConstraintTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstraintTag::ParityMod2n => "parity-mod-2n",
            ConstraintTag::StarInequality => "star-inequality",
            ConstraintTag::StrictLemma => "strict-lemma",
            ConstraintTag::RatioLemma => "ratio-lemma",
            ConstraintTag::CycleInD => "cycle-in-D",
            ConstraintTag::CharConstraint => "char-constraint",
            ConstraintTag::MultiplicityClaim => "multiplicity-claim",
            ConstraintTag::MinDegree => "min-degree",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WitnessValue {
    pub name: String,
    pub value: i64,
}

fn wv(name: &str, value: i64) -> WitnessValue {
    WitnessValue {
        name: name.into(),
        value,
    }
}

/// A pruned branch together with the integer arithmetic witnessing the
/// contradiction. [`verify_certificate`] re-evaluates the witness without
/// consulting the search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExclusionCertificate {
    pub branch: String,
    pub constraint: ConstraintTag,
    pub witness: Vec<WitnessValue>,
}

impl ExclusionCertificate {
    pub fn witness_value(&self, name: &str) -> Option<i64> {
        self.witness
            .iter()
            .find(|w| w.name == name)
            .map(|w| w.value)
    }
}

/// Independent re-evaluation of a certificate's witness arithmetic.
///
/// Witness schema per constraint, with `n` the degree unit of the branch:
/// - `parity-mod-2n`: `square_coeff_of_n = c` asserts a square equals `c n`;
///   contradiction with `c n = 0 mod 2n` iff `c` is odd.
/// - `star-inequality`: `c_dot_z_over_m = z`, `m_over_n_min = q`; the value
///   `(C+Z)^2 / n >= (2z-3) q - 2` for all `m >= q n`, so the branch is
///   contradicted iff `2z - 3 > 0` and `(2z-3) q - 2 > 0`.
/// - `char-constraint`: `three_m_coeff_n = c` asserts `3m = c n`; impossible
///   for `m/n` a power of 2 iff `3` does not divide `c`.
/// - `cycle-in-D`: `curves_through_point >= 3`; three pairwise-meeting
///   (-2)-curves give a reduced sum with nonnegative square, violating
///   negative definiteness.
/// - `multiplicity-claim`: `mult = a`, `self_over_n = s`, `contact_over_n = t`
///   encode `0 = C_i.Y >= (a s + t) n`; contradiction iff `a s + t > 0`.
/// - `min-degree`: `forced_min_degree_over_n >= 2`.
/// - `strict-lemma` / `ratio-lemma`: `degree_a`, `degree_b`, `intersection`
///   violate the corresponding pairwise constraint.
pub fn verify_certificate(cert: &ExclusionCertificate) -> bool {
    match cert.constraint {
        ConstraintTag::ParityMod2n => cert
            .witness_value("square_coeff_of_n")
            .map(|c| c % 2 != 0)
            .unwrap_or(false),
        ConstraintTag::StarInequality => {
            let z = cert.witness_value("c_dot_z_over_m");
            let q = cert.witness_value("m_over_n_min");
            match (z, q) {
                (Some(z), Some(q)) => {
                    let lin = 2 * z - 3;
                    lin > 0 && q >= 1 && lin * q - 2 > 0
                }
                _ => false,
            }
        }
        ConstraintTag::CharConstraint => cert
            .witness_value("three_m_coeff_n")
            .map(|c| c > 0 && c % 3 != 0)
            .unwrap_or(false),
        ConstraintTag::CycleInD => cert
            .witness_value("curves_through_point")
            .map(|k| k >= 3)
            .unwrap_or(false),
        ConstraintTag::MultiplicityClaim => {
            let a = cert.witness_value("mult");
            let s = cert.witness_value("self_over_n");
            let t = cert.witness_value("contact_over_n");
            match (a, s, t) {
                (Some(a), Some(s), Some(t)) => a >= 1 && a * s + t > 0,
                _ => false,
            }
        }
        ConstraintTag::MinDegree => cert
            .witness_value("forced_min_degree_over_n")
            .map(|d| d >= 2)
            .unwrap_or(false),
        ConstraintTag::StrictLemma => {
            let (a, b, p) = (
                cert.witness_value("degree_a"),
                cert.witness_value("degree_b"),
                cert.witness_value("intersection"),
            );
            match (a, b, p) {
                (Some(a), Some(b), Some(p)) => p > 0 && p != a.max(b),
                _ => false,
            }
        }
        ConstraintTag::RatioLemma => {
            let (a, b) = (
                cert.witness_value("degree_a"),
                cert.witness_value("degree_b"),
            );
            match (a, b) {
                (Some(a), Some(b)) => {
                    let hi = a.max(b);
                    let lo = a.min(b);
                    lo > 0 && (hi % lo != 0 || hi / lo > 3)
                }
                _ => false,
            }
        }
    }
}

/// The eight admissible shape classes, named by the chain family, the
/// attachment position of the central curve and the `m/n` relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Case5bShape {
    /// A-chain (3,2,1), `C` on the multiplicity-3 end, `m = 4n`.
    AChainEnd,
    /// A-chain (1,2,3,2,1), `C` on the center, `m = 2n`.
    AChainCenter,
    /// D-shaped chain (1,2,3,4,3 with branch 2), `C` on the 3-end, `m = 2n`.
    DChain,
    /// E7-shaped chain (2,4,6,5,4,3 with branch 3), `C` on the 3-end, `m = 2n`.
    EChain,
    /// B-chain (2n:1, 2n:2, n:3), `C` on the degree-n end, `m = 2n`.
    BChainShort,
    /// B-chain (2n:1, 2n:2, 2n:3, ..., n:3) of length >= 4, `C` on the third
    /// node, `m = 2n`.
    BChainLong,
    /// C-chain (n:1, ..., n:5, 2n:3), `C` on the degree-2n end, `m = 2n`.
    CChainLong,
    /// C-chain (n:2, n:4, 2n:3), `C` on the degree-2n end, `m = 4n`.
    CChainShort,
}

impl Case5bShape {
    pub const ALL: [Case5bShape; 8] = [
        Case5bShape::AChainEnd,
        Case5bShape::AChainCenter,
        Case5bShape::DChain,
        Case5bShape::EChain,
        Case5bShape::BChainShort,
        Case5bShape::BChainLong,
        Case5bShape::CChainLong,
        Case5bShape::CChainShort,
    ];

    pub fn chain_family(self) -> Family {
        match self {
            Case5bShape::AChainEnd | Case5bShape::AChainCenter => Family::A,
            Case5bShape::DChain => Family::D,
            Case5bShape::EChain => Family::E7,
            Case5bShape::BChainShort | Case5bShape::BChainLong => Family::B,
            Case5bShape::CChainLong | Case5bShape::CChainShort => Family::C,
        }
    }

    /// The forced relation `m / n`.
    pub fn m_over_n(self) -> i64 {
        match self {
            Case5bShape::AChainEnd | Case5bShape::CChainShort => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for Case5bShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case5bShape::AChainEnd => "A(3,2,1), m=4n",
            Case5bShape::AChainCenter => "A(1,2,3,2,1), m=2n",
            Case5bShape::DChain => "D(1,2,3,4,3;2), m=2n",
            Case5bShape::EChain => "E(2,4,6,5,4,3;3), m=2n",
            Case5bShape::BChainShort => "B(1,2,3), m=2n",
            Case5bShape::BChainLong => "B(1,2,3,...,3), m=2n",
            Case5bShape::CChainLong => "C(1,2,3,4,5,3), m=2n",
            Case5bShape::CChainShort => "C(2,4,3), m=4n",
        };
        write!(f, "{s}")
    }
}

/// One admissible configuration: the full divisor `Y` as a validated fiber
/// configuration (chain nodes first, central curve last).
#[derive(Debug, Clone, Serialize)]
pub struct AdmissibleConfig {
    pub configuration: FiberConfiguration,
    /// Index of the central curve `C`.
    pub c_index: usize,
    /// Index of the attachment curve `C_x` (the chain curve meeting `C`).
    pub cx_index: usize,
    pub n: i64,
    pub m: i64,
    pub chain_family: Family,
    pub shape: Option<Case5bShape>,
}

/// Result of the exhaustive search.
#[derive(Debug, Clone, Serialize)]
pub struct Case5bSearch {
    pub admissible: Vec<AdmissibleConfig>,
    pub excluded: Vec<ExclusionCertificate>,
    /// Dead ends bounded by the node or coefficient caps rather than by a
    /// contradiction.
    pub exhausted: Vec<String>,
}

impl Case5bSearch {
    /// Distinct shape classes among the admissible configurations for one
    /// degree unit.
    pub fn shapes_for(&self, n: i64) -> BTreeSet<Case5bShape> {
        self.admissible
            .iter()
            .filter(|a| a.n == n)
            .filter_map(|a| a.shape)
            .collect()
    }
}

/// `(C + Z)^2` and whether it is nonpositive.
pub fn star_inequality(cfg: &FiberConfiguration, c: usize, z: &Divisor) -> Result<(i64, bool)> {
    if c >= cfg.len() {
        return Err(Error::IndexMismatch {
            divisor: c,
            curves: cfg.len(),
        });
    }
    let total = Divisor::unit(cfg.len(), c).add(z);
    let value = cfg.pairing(&total, &total)?;
    Ok((value, value <= 0))
}

/// Symbolic form of the star value: `-3m - 2n + 2 C.Z`.
pub fn star_value(m: i64, n: i64, c_dot_z: i64) -> i64 {
    -3 * m - 2 * n + 2 * c_dot_z
}

/// Structural parity of the square of a (-2)-chain divisor: each diagonal
/// term `-2 a_i^2 n_i` and each cross term `2 a_i a_j C_i.C_j` is a multiple
/// of `2n` when `n` divides all degrees and intersections, so `D^2 = 0 mod 2n`.
///
/// Returns the verified congruence for the given divisor; precondition
/// failures are errors, not `false`.
pub fn parity_check(cfg: &FiberConfiguration, d: &Divisor, n: i64) -> Result<bool> {
    if n < 1 {
        return Err(Error::Precondition(format!("n must be >= 1, got {n}")));
    }
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    let support = d.support();
    for &i in &support {
        let c = cfg.curve(i);
        if !c.is_minus_two() {
            return Err(Error::NotMinusTwo(i));
        }
        if c.field_degree % n != 0 {
            return Err(Error::Precondition(format!(
                "degree of curve {i} is not a multiple of {n}"
            )));
        }
    }
    for (a, &i) in support.iter().enumerate() {
        for &j in support.iter().skip(a + 1) {
            if cfg.pairing_entry(i, j) % n != 0 {
                return Err(Error::Precondition(format!(
                    "intersection of curves {i} and {j} is not a multiple of {n}"
                )));
            }
        }
    }
    Ok(cfg.pairing(d, d)?.rem_euclid(2 * n) == 0)
}

/// Whether a hypothesized square value is consistent with `0 mod 2n`.
pub fn parity_consistent(value: i64, n: i64) -> bool {
    n >= 1 && value.rem_euclid(2 * n) == 0
}

/// A neighbor of the triple curve violating the multiplicity claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimViolation {
    pub neighbor: usize,
    pub multiplicity: i64,
    pub neighbor_self_int: i64,
    /// `3 C_i.C_x`, the contact forced by the coefficient-3 curve.
    pub triple_contact: i64,
    /// `mult * C_i^2 + 3 C_i.C_x`; positive means `0 = C_i.Y` is impossible.
    pub lower_bound: i64,
}

impl fmt::Display for ClaimViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "curve {}: 0 = C.Y >= {}*({}) + {} = {} > 0",
            self.neighbor,
            self.multiplicity,
            self.neighbor_self_int,
            self.triple_contact,
            self.lower_bound
        )
    }
}

/// Check every chain neighbor of the coefficient-3 curve `cx` in `y` against
/// the claims: `0 = C_i.Y >= mult C_i^2 + 3 C_i.C_x` (all dropped terms are
/// nonnegative), so the right side must be nonpositive.
pub fn multiplicity_claims(
    cfg: &FiberConfiguration,
    y: &Divisor,
    cx: usize,
) -> Result<Vec<ClaimViolation>> {
    if cx >= cfg.len() {
        return Err(Error::IndexMismatch {
            divisor: cx,
            curves: cfg.len(),
        });
    }
    if y.coeff(cx) != 3 {
        return Err(Error::Precondition(format!(
            "curve {cx} must have coefficient 3, got {}",
            y.coeff(cx)
        )));
    }
    let mut violations = Vec::new();
    for i in y.support() {
        if i == cx || !cfg.curve(i).is_minus_two() {
            continue;
        }
        let contact = cfg.pairing_entry(i, cx);
        if contact <= 0 {
            continue;
        }
        let mult = y.coeff(i);
        let bound = mult * cfg.curve(i).self_int + 3 * contact;
        if bound > 0 {
            violations.push(ClaimViolation {
                neighbor: i,
                multiplicity: mult,
                neighbor_self_int: cfg.curve(i).self_int,
                triple_contact: 3 * contact,
                lower_bound: bound,
            });
        }
    }
    Ok(violations)
}

/// Default cap on chain coefficients; the admissible tables never exceed 6.
pub const DEFAULT_COEFF_CAP: i64 = 6;

/// A completed chain around the triple curve (node 0).
struct Completion {
    degrees: Vec<i64>,
    coeffs: Vec<i64>,
    links: Vec<(usize, usize)>,
}

/// Depth-first completion of the chain around `C_x`: each node carries a
/// degree and a coefficient, `deficit[v]` is the intersection node `v` still
/// needs from future children for `Y.C_v = 0` to close, and children of one
/// parent are added in nondecreasing `(degree, coefficient)` order so each
/// tree is produced once.
struct Searcher<'a> {
    n: i64,
    branch: String,
    max_nodes: usize,
    coeff_cap: i64,
    completions: Vec<Completion>,
    claims: &'a mut Vec<ExclusionCertificate>,
    exhausted: &'a mut BTreeSet<String>,
}

impl Searcher<'_> {
    fn negative_definite(degrees: &[i64], links: &[(usize, usize)]) -> bool {
        let k = degrees.len();
        let mut m = vec![vec![0i128; k]; k];
        for (i, &d) in degrees.iter().enumerate() {
            m[i][i] = -2 * d as i128;
        }
        for &(a, b) in links {
            let w = degrees[a].max(degrees[b]) as i128;
            m[a][b] = w;
            m[b][a] = w;
        }
        let mut prev: i128 = 1;
        for step in 0..k {
            let pivot = m[step][step];
            let sign = if step % 2 == 0 { -1 } else { 1 };
            if sign * pivot.signum() <= 0 {
                return false;
            }
            if step + 1 == k {
                break;
            }
            for i in (step + 1)..k {
                for j in (step + 1)..k {
                    m[i][j] = (m[i][j] * pivot - m[i][step] * m[step][j]) / prev;
                }
            }
            prev = pivot;
        }
        true
    }

    fn grow(
        &mut self,
        degrees: &mut Vec<i64>,
        coeffs: &mut Vec<i64>,
        links: &mut Vec<(usize, usize)>,
        deficits: &mut Vec<i64>,
        last_child: &mut Vec<(i64, i64)>,
    ) {
        let v = match (0..degrees.len()).find(|&v| deficits[v] > 0) {
            None => {
                self.completions.push(Completion {
                    degrees: degrees.clone(),
                    coeffs: coeffs.clone(),
                    links: links.clone(),
                });
                return;
            }
            Some(v) => v,
        };
        if degrees.len() == self.max_nodes {
            self.exhausted.insert(format!(
                "{}: node budget {} reached with an open node",
                self.branch, self.max_nodes
            ));
            return;
        }
        // degree ratios are powers of 2 in residue characteristic 2
        let menu = [self.n, 2 * self.n, 4 * self.n];
        for d in menu {
            let dv = degrees[v];
            let hi = dv.max(d);
            let lo = dv.min(d);
            if hi % lo != 0 || hi / lo > 2 {
                continue;
            }
            let edge = hi;
            let max_a = deficits[v] / edge;
            if max_a > self.coeff_cap {
                self.exhausted.insert(format!(
                    "{}: coefficient cap {} reached with an open node",
                    self.branch, self.coeff_cap
                ));
            }
            for a in 1..=max_a.min(self.coeff_cap) {
                if (d, a) < last_child[v] {
                    continue;
                }
                let child_deficit = 2 * a * d - coeffs[v] * edge;
                if child_deficit < 0 {
                    if v == 0 {
                        // a neighbor of the triple curve with Y.C_i forced
                        // positive: exactly the multiplicity claims
                        self.claims.push(ExclusionCertificate {
                            branch: format!(
                                "{}: neighbor degree {}n, multiplicity {}",
                                self.branch,
                                d / self.n,
                                a
                            ),
                            constraint: ConstraintTag::MultiplicityClaim,
                            witness: vec![
                                wv("mult", a),
                                wv("self_over_n", -2 * d / self.n),
                                wv("contact_over_n", 3 * edge / self.n),
                            ],
                        });
                    }
                    continue;
                }
                degrees.push(d);
                coeffs.push(a);
                links.push((v, degrees.len() - 1));
                if Self::negative_definite(degrees, links) {
                    let saved_deficit = deficits[v];
                    let saved_last = last_child[v];
                    deficits[v] -= a * edge;
                    deficits.push(child_deficit);
                    last_child[v] = (d, a);
                    last_child.push((0, 0));
                    self.grow(degrees, coeffs, links, deficits, last_child);
                    last_child.pop();
                    last_child[v] = saved_last;
                    deficits.pop();
                    deficits[v] = saved_deficit;
                }
                degrees.pop();
                coeffs.pop();
                links.pop();
            }
        }
    }
}

/// Isomorphism-invariant encoding of a decorated configuration (degrees,
/// self-intersections, canonical degrees, multiplicities and pairings).
pub fn canonical_key(cfg: &FiberConfiguration) -> Vec<i64> {
    canonical_form(
        cfg.len(),
        |i| {
            let c = cfg.curve(i);
            vec![c.field_degree, c.self_int, c.canonical_deg, c.multiplicity]
        },
        |i, j| cfg.pairing_entry(i, j),
    )
}

fn detect_shape(
    family: Family,
    length: usize,
    m_over_n: i64,
    cx_degree_over_n: i64,
    cx_chain_neighbors: usize,
) -> Option<Case5bShape> {
    match (family, length, m_over_n, cx_degree_over_n) {
        (Family::A, 3, 4, 1) if cx_chain_neighbors == 1 => Some(Case5bShape::AChainEnd),
        (Family::A, 5, 2, 1) if cx_chain_neighbors == 2 => Some(Case5bShape::AChainCenter),
        (Family::D, 6, 2, 1) if cx_chain_neighbors == 1 => Some(Case5bShape::DChain),
        (Family::E7, 7, 2, 1) if cx_chain_neighbors == 1 => Some(Case5bShape::EChain),
        (Family::B, 3, 2, 1) if cx_chain_neighbors == 1 => Some(Case5bShape::BChainShort),
        (Family::B, k, 2, 2) if k >= 4 && cx_chain_neighbors == 2 => Some(Case5bShape::BChainLong),
        (Family::C, 6, 2, 2) if cx_chain_neighbors == 1 => Some(Case5bShape::CChainLong),
        (Family::C, 3, 4, 2) if cx_chain_neighbors == 1 => Some(Case5bShape::CChainShort),
        _ => None,
    }
}

/// Run the exhaustive search for degree units `1..=max_n` with chains of at
/// most `max_chain_nodes` curves and the default coefficient cap.
pub fn enumerate_case5b(max_chain_nodes: usize, max_n: i64) -> Result<Case5bSearch> {
    enumerate_case5b_with_cap(max_chain_nodes, max_n, DEFAULT_COEFF_CAP)
}

pub fn enumerate_case5b_with_cap(
    max_chain_nodes: usize,
    max_n: i64,
    coeff_cap: i64,
) -> Result<Case5bSearch> {
    if max_chain_nodes == 0 || max_chain_nodes > 9 {
        return Err(Error::BoundTooLarge(format!(
            "max_chain_nodes must be in 1..=9, got {max_chain_nodes}"
        )));
    }
    if !(1..=3).contains(&max_n) {
        return Err(Error::BoundTooLarge(format!(
            "max_n must be in 1..=3, got {max_n}"
        )));
    }
    if coeff_cap < 1 {
        return Err(Error::BoundTooLarge("coefficient cap must be >= 1".into()));
    }

    let mut excluded: Vec<ExclusionCertificate> = Vec::new();
    let mut exhausted: BTreeSet<String> = BTreeSet::new();
    let mut admissible: Vec<(Vec<i64>, AdmissibleConfig)> = Vec::new();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();

    for n in 1..=max_n {
        // C.D = 3m splits into parts coeff * (C.C_i) with each C.C_i a
        // positive multiple of m; the decomposition of 3 and the number of
        // attachment points drive the branch dispatch. The fundamental cycle
        // Z of the connected chain D contains every attachment curve with
        // coefficient >= 1, so C.Z is bounded below by the attachment values.

        // beta = 3: three attachment points force C.Z = 3m.
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=3 (three attachment points)"),
            constraint: ConstraintTag::StarInequality,
            witness: vec![wv("c_dot_z_over_m", 3), wv("m_over_n_min", 1)],
        });

        // beta = 2 splits.
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=2, attachments (1x m, 1x 2m)"),
            constraint: ConstraintTag::StarInequality,
            witness: vec![wv("c_dot_z_over_m", 3), wv("m_over_n_min", 1)],
        });
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=2, attachments (1x m, 1x m, 1x m)"),
            constraint: ConstraintTag::StarInequality,
            witness: vec![wv("c_dot_z_over_m", 3), wv("m_over_n_min", 1)],
        });
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=2, attachments (1x m, 2x m), C.Z=3m"),
            constraint: ConstraintTag::StarInequality,
            witness: vec![wv("c_dot_z_over_m", 3), wv("m_over_n_min", 1)],
        });
        // C.Z = 2m: (C+2Z)^2 <= 0 gives 5m <= 8n, so m = n; expanding
        // 0 = C_x.Y, C_y.Y, D'.Y forces C_x.C_y = 0, C_x.D' = n,
        // C_y.D' = 3n and finally D'^2 = -7n.
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=2, attachments (1x m, 2x m), C.Z=2m => m=n"),
            constraint: ConstraintTag::ParityMod2n,
            witness: vec![
                wv("square_coeff_of_n", -7),
                wv("cx_dot_dprime_over_n", 1),
                wv("cy_dot_dprime_over_n", 3),
            ],
        });

        // beta = 1, three simple curves through one point: pairwise positive
        // intersections close a cycle in the chain.
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=1, attachments (1x m, 1x m, 1x m) at one point"),
            constraint: ConstraintTag::CycleInD,
            witness: vec![wv("curves_through_point", 3)],
        });
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=1, attachments (1x m, 1x 2m)"),
            constraint: ConstraintTag::StarInequality,
            witness: vec![wv("c_dot_z_over_m", 3), wv("m_over_n_min", 1)],
        });
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=1, attachments (1x m, 2x m), C.Z=3m"),
            constraint: ConstraintTag::StarInequality,
            witness: vec![wv("c_dot_z_over_m", 3), wv("m_over_n_min", 1)],
        });
        // C.Z = 2m forces m = n; the two curves share the attachment point,
        // so 0 = C_{x,1}.Y >= -2n + 2 C_{x,1}.C_{x,2} + n >= n.
        excluded.push(ExclusionCertificate {
            branch: format!("n={n}: beta=1, attachments (1x m, 2x m), C.Z=2m => m=n"),
            constraint: ConstraintTag::MultiplicityClaim,
            witness: vec![
                wv("mult", 1),
                wv("self_over_n", -2),
                wv("contact_over_n", 3),
            ],
        });

        // beta = 1, single simple curve with C.C_x = 3m. Chain degrees are
        // {n, 2n} in characteristic 2, so C_x^2 is -2n or -4n, and
        // 0 = C_x.Y = 3m + C_x^2 + C_x.D' with C_x.D' a nonnegative multiple
        // of n_x leaves 3m in {n_x, 2n_x}.
        for (nx_over_n, label) in [(1i64, "Cx^2=-2n"), (2, "Cx^2=-4n")] {
            for coeff in [nx_over_n, 2 * nx_over_n] {
                excluded.push(ExclusionCertificate {
                    branch: format!("n={n}: beta=1, single curve, C.Cx=3m, {label}, 3m={coeff}n"),
                    constraint: ConstraintTag::CharConstraint,
                    witness: vec![wv("three_m_coeff_n", coeff)],
                });
            }
        }

        // beta = 1, triple curve (coefficient 3) with C.C_x = m: the
        // surviving constraint system. 0 = C_x.Y gives C_x.D' = 6 n_x - m
        // with m a power-of-2 multiple of n_x and m <= 6 n_x; 0 = D'.Y pins
        // D'^2 = -3 (6 n_x - m), which must be 0 mod 2n.
        for nx_over_n in [1i64, 2] {
            let nx = nx_over_n * n;
            let label = if nx_over_n == 1 {
                "Cx^2=-2n"
            } else {
                "Cx^2=-4n"
            };
            for q in [1i64, 2, 4] {
                let m = q * nx;
                let cx_dprime = 6 * nx - m;
                let dprime_sq = -3 * cx_dprime;
                let branch = format!("n={n}: beta=1, triple curve, {label}, m={}n", m / n);
                if !parity_consistent(dprime_sq, n) {
                    excluded.push(ExclusionCertificate {
                        branch,
                        constraint: ConstraintTag::ParityMod2n,
                        witness: vec![
                            wv("square_coeff_of_n", dprime_sq / n),
                            wv("cx_dot_dprime_over_n", cx_dprime / n),
                        ],
                    });
                    continue;
                }
                let mut claims = Vec::new();
                let mut searcher = Searcher {
                    n,
                    branch: branch.clone(),
                    max_nodes: max_chain_nodes,
                    coeff_cap,
                    completions: Vec::new(),
                    claims: &mut claims,
                    exhausted: &mut exhausted,
                };
                let mut degrees = vec![nx];
                let mut coeffs = vec![3i64];
                let mut links: Vec<(usize, usize)> = Vec::new();
                let mut deficits = vec![cx_dprime];
                let mut last_child = vec![(0i64, 0i64)];
                searcher.grow(
                    &mut degrees,
                    &mut coeffs,
                    &mut links,
                    &mut deficits,
                    &mut last_child,
                );
                let completions = std::mem::take(&mut searcher.completions);
                claims.sort();
                claims.dedup();
                excluded.extend(claims);

                for comp in completions {
                    let min_deg = *comp.degrees.iter().min().expect("nonempty");
                    if min_deg != n {
                        excluded.push(ExclusionCertificate {
                            branch: branch.clone(),
                            constraint: ConstraintTag::MinDegree,
                            witness: vec![wv("forced_min_degree_over_n", min_deg / n)],
                        });
                        continue;
                    }
                    let k = comp.degrees.len();
                    let mut curves: Vec<CurveClass> = comp
                        .degrees
                        .iter()
                        .zip(&comp.coeffs)
                        .enumerate()
                        .map(|(i, (&d, &a))| CurveClass::new(i, d, -2 * d, 0, a))
                        .collect();
                    curves.push(CurveClass::new(k, m, -3 * m, m, 1));
                    let mut edges: Vec<Edge> = comp
                        .links
                        .iter()
                        .map(|&(a, b)| Edge {
                            a,
                            b,
                            intersection: comp.degrees[a].max(comp.degrees[b]),
                        })
                        .collect();
                    edges.push(Edge {
                        a: 0,
                        b: k,
                        intersection: m,
                    });
                    // full-fiber validation re-verifies Y.C_i = 0 for all i
                    let cfg = FiberConfiguration::new(curves, &edges, 2, true)?;
                    let key = canonical_key(&cfg);
                    if !seen.insert(key.clone()) {
                        continue;
                    }
                    let chain_ids: Vec<usize> = (0..k).collect();
                    let diagram = classify(&cfg, &chain_ids)?;
                    let cx_neighbors = chain_ids
                        .iter()
                        .filter(|&&i| i != 0 && cfg.pairing_entry(0, i) > 0)
                        .count();
                    let shape = detect_shape(diagram.family, k, m / n, nx / n, cx_neighbors);
                    admissible.push((
                        key,
                        AdmissibleConfig {
                            configuration: cfg,
                            c_index: k,
                            cx_index: 0,
                            n,
                            m,
                            chain_family: diagram.family,
                            shape,
                        },
                    ));
                }
            }
        }
    }

    admissible.sort_by(|a, b| {
        (a.1.n, a.1.configuration.len(), &a.0).cmp(&(b.1.n, b.1.configuration.len(), &b.0))
    });
    excluded.sort();
    excluded.dedup();
    Ok(Case5bSearch {
        admissible: admissible.into_iter().map(|(_, a)| a).collect(),
        excluded,
        exhausted: exhausted.into_iter().collect(),
    })
}
