//! Validation and classification of connected (-2)-chains.
//!
//! A connected chain of (-2)-curves inside a genus >= 2 fiber satisfies two
//! pairwise constraints: intersecting components meet in exactly
//! `max(n_i, n_j)` points counted over `k`, and the larger constant-field
//! degree is 1, 2 or 3 times the smaller. Together with negative definiteness
//! the associated pairing `<C_i,C_j> = -2 C_i.C_j / C_i^2` behaves like a
//! Cartan matrix, which pins the possible decorated dual graphs down to nine
//! parameterized families.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CurveClass, Divisor, Edge, FiberConfiguration};

/// The nine decorated diagram families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::F4,
        Family::G2,
    ];

    /// Families of fixed rank return it; A/B/C/D are unbounded.
    pub fn fixed_length(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    /// Smallest rank at which the family is distinct from the earlier ones
    /// (B2 covers the two-node double-bond chain, D3 coincides with A3).
    pub fn min_length(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
            other => other.fixed_length().unwrap(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        };
        write!(f, "{s}")
    }
}

/// Characteristics in which a family can occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CharacteristicSet {
    Any,
    Only(u32),
}

impl CharacteristicSet {
    pub fn admits(&self, characteristic: u32) -> bool {
        match self {
            CharacteristicSet::Any => true,
            CharacteristicSet::Only(p) => characteristic == *p,
        }
    }
}

/// B, C and F4 chains force residue characteristic 2; G2 forces 3.
pub fn admissible_characteristics(family: Family) -> CharacteristicSet {
    match family {
        Family::B | Family::C | Family::F4 => CharacteristicSet::Only(2),
        Family::G2 => CharacteristicSet::Only(3),
        _ => CharacteristicSet::Any,
    }
}

/// A classified chain: family tag, node count, common degree unit `n` and the
/// node degrees in template order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynkinDiagram {
    pub family: Family,
    pub length: usize,
    pub base_degree: i64,
    pub node_degrees: Vec<i64>,
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.fixed_length() {
            Some(_) => write!(f, "{}, n={}", self.family, self.base_degree),
            None => write!(f, "{}{}, n={}", self.family, self.length, self.base_degree),
        }
    }
}

/// Generalized Cartan matrix attached to a chain: diagonal 2, off-diagonal
/// `-2 C_i.C_j / |C_i^2|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// Intersecting pair with `C_i.C_j != max(n_i, n_j)`.
    StrictIntersection,
    /// Intersecting pair whose degree ratio is not 1, 2 or 3.
    DegreeRatio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseViolation {
    pub a: usize,
    pub b: usize,
    pub kind: ViolationKind,
    pub degree_a: i64,
    pub degree_b: i64,
    pub intersection: i64,
}

impl fmt::Display for PairwiseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::StrictIntersection => write!(
                f,
                "curves {} and {}: intersection {} != max({}, {})",
                self.a, self.b, self.intersection, self.degree_a, self.degree_b
            ),
            ViolationKind::DegreeRatio => write!(
                f,
                "curves {} and {}: degree ratio {}:{} is not 1, 2 or 3",
                self.a, self.b, self.degree_a, self.degree_b
            ),
        }
    }
}

fn require_minus_two(cfg: &FiberConfiguration, chain: &[usize]) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::Precondition("empty chain".into()));
    }
    let mut seen = BTreeSet::new();
    for &i in chain {
        if i >= cfg.len() {
            return Err(Error::IndexMismatch {
                divisor: i,
                curves: cfg.len(),
            });
        }
        if !seen.insert(i) {
            return Err(Error::Precondition(format!("curve {i} repeated in chain")));
        }
        if !cfg.curve(i).is_minus_two() {
            return Err(Error::NotMinusTwo(i));
        }
    }
    Ok(())
}

/// Check every intersecting pair of a (-2)-chain against the two pairwise
/// constraints. The empty list certifies the chain locally.
pub fn validate_pairwise(
    cfg: &FiberConfiguration,
    chain: &[usize],
) -> Result<Vec<PairwiseViolation>> {
    require_minus_two(cfg, chain)?;
    let mut violations = Vec::new();
    for (pos, &i) in chain.iter().enumerate() {
        for &j in chain.iter().skip(pos + 1) {
            let p = cfg.pairing_entry(i, j);
            if p <= 0 {
                continue;
            }
            let ni = cfg.curve(i).field_degree;
            let nj = cfg.curve(j).field_degree;
            let hi = ni.max(nj);
            let lo = ni.min(nj);
            if p != hi {
                violations.push(PairwiseViolation {
                    a: i,
                    b: j,
                    kind: ViolationKind::StrictIntersection,
                    degree_a: ni,
                    degree_b: nj,
                    intersection: p,
                });
            }
            if hi % lo != 0 || hi / lo > 3 {
                violations.push(PairwiseViolation {
                    a: i,
                    b: j,
                    kind: ViolationKind::DegreeRatio,
                    degree_a: ni,
                    degree_b: nj,
                    intersection: p,
                });
            }
        }
    }
    Ok(violations)
}

/// The pairing `<C_i,C_j>` of the chain, normalized to diagonal 2 and
/// nonpositive off-diagonal entries.
pub fn cartan_matrix(cfg: &FiberConfiguration, chain: &[usize]) -> Result<CartanMatrix> {
    require_minus_two(cfg, chain)?;
    let k = chain.len();
    let mut entries = vec![vec![0i64; k]; k];
    for a in 0..k {
        entries[a][a] = 2;
        let diag = cfg.pairing_entry(chain[a], chain[a]).abs();
        for b in 0..k {
            if a == b {
                continue;
            }
            let p = cfg.pairing_entry(chain[a], chain[b]);
            if (2 * p) % diag != 0 {
                return Err(Error::CartanDivisibility {
                    i: chain[a],
                    j: chain[b],
                    pairing: p,
                    diagonal: diag,
                });
            }
            entries[a][b] = -(2 * p) / diag;
        }
    }
    Ok(CartanMatrix { entries })
}

/// Lexicographically minimal decorated-adjacency encoding.
///
/// The stream interleaves, per placed node, its label tuple and its pairings
/// with previously placed nodes; the minimum is taken over node orders whose
/// prefixes stay connected (any order when the graph is disconnected at that
/// point). Equal encodings are exactly label-and-pairing isomorphism.
pub(crate) fn canonical_form<L, A>(n: usize, label: L, adj: A) -> Vec<i64>
where
    L: Fn(usize) -> Vec<i64>,
    A: Fn(usize, usize) -> i64,
{
    let labels: Vec<Vec<i64>> = (0..n).map(&label).collect();
    let mut best: Option<Vec<i64>> = None;
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut stream: Vec<i64> = Vec::new();

    fn recurse(
        n: usize,
        labels: &[Vec<i64>],
        adj: &dyn Fn(usize, usize) -> i64,
        placed: &mut Vec<usize>,
        used: &mut Vec<bool>,
        stream: &mut Vec<i64>,
        best: &mut Option<Vec<i64>>,
    ) {
        if placed.len() == n {
            match best {
                Some(b) if stream.as_slice() >= b.as_slice() => {}
                _ => *best = Some(stream.clone()),
            }
            return;
        }
        let connected_candidates: Vec<usize> = (0..n)
            .filter(|&v| !used[v] && placed.iter().any(|&p| adj(v, p) > 0))
            .collect();
        let candidates: Vec<usize> = if placed.is_empty() || connected_candidates.is_empty() {
            (0..n).filter(|&v| !used[v]).collect()
        } else {
            connected_candidates
        };
        for v in candidates {
            let before = stream.len();
            stream.extend_from_slice(&labels[v]);
            for &p in placed.iter() {
                stream.push(adj(v, p));
            }
            let prune = match best {
                Some(b) => stream.as_slice() > &b[..stream.len()],
                None => false,
            };
            if !prune {
                placed.push(v);
                used[v] = true;
                recurse(n, labels, adj, placed, used, stream, best);
                used[v] = false;
                placed.pop();
            }
            stream.truncate(before);
        }
    }

    recurse(
        n,
        &labels,
        &adj,
        &mut placed,
        &mut used,
        &mut stream,
        &mut best,
    );
    best.unwrap_or_default()
}

/// Canonical encoding of a chain inside a configuration, using constant-field
/// degrees as node labels and the intersection numbers as edge weights.
pub(crate) fn chain_canonical_form(cfg: &FiberConfiguration, chain: &[usize]) -> Vec<i64> {
    canonical_form(
        chain.len(),
        |a| vec![cfg.curve(chain[a]).field_degree],
        |a, b| cfg.pairing_entry(chain[a], chain[b]),
    )
}

/// Build the decorated template for `family` with `length` nodes and degree
/// unit `n`, as a standalone configuration of (-2)-curves.
pub fn template(family: Family, length: usize, n: i64) -> Result<FiberConfiguration> {
    if n < 1 {
        return Err(Error::Precondition(format!(
            "degree unit must be >= 1, got {n}"
        )));
    }
    if let Some(k) = family.fixed_length() {
        if length != k {
            return Err(Error::Precondition(format!(
                "family {family} has exactly {k} nodes, got {length}"
            )));
        }
    }
    if length < family.min_length() {
        return Err(Error::Precondition(format!(
            "family {family} needs at least {} nodes, got {length}",
            family.min_length()
        )));
    }
    let degrees: Vec<i64> = match family {
        Family::A | Family::D | Family::E6 | Family::E7 | Family::E8 => vec![n; length],
        Family::B => {
            let mut d = vec![2 * n; length - 1];
            d.push(n);
            d
        }
        Family::C => {
            let mut d = vec![n; length - 1];
            d.push(2 * n);
            d
        }
        Family::F4 => vec![n, n, 2 * n, 2 * n],
        Family::G2 => vec![3 * n, n],
    };
    // path edges along the spine, plus the branch for D/E types
    let mut links: Vec<(usize, usize)> = Vec::new();
    match family {
        Family::D => {
            for i in 0..length - 2 {
                links.push((i, i + 1));
            }
            links.push((length - 3, length - 1));
        }
        Family::E6 | Family::E7 | Family::E8 => {
            for i in 0..length - 2 {
                links.push((i, i + 1));
            }
            links.push((2, length - 1));
        }
        _ => {
            for i in 0..length - 1 {
                links.push((i, i + 1));
            }
        }
    }
    let curves: Vec<CurveClass> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| CurveClass::new(i, d, -2 * d, 0, 1))
        .collect();
    let edges: Vec<Edge> = links
        .iter()
        .map(|&(a, b)| Edge {
            a,
            b,
            intersection: degrees[a].max(degrees[b]),
        })
        .collect();
    let characteristic = match admissible_characteristics(family) {
        CharacteristicSet::Only(p) => p,
        CharacteristicSet::Any => 0,
    };
    FiberConfiguration::subconfiguration(curves, &edges, characteristic)
}

/// Classify a connected validated chain into its unique decorated family.
pub fn classify(cfg: &FiberConfiguration, chain: &[usize]) -> Result<DynkinDiagram> {
    require_minus_two(cfg, chain)?;
    let mut coeffs = vec![0i64; cfg.len()];
    for &i in chain {
        coeffs[i] = 1;
    }
    let indicator = Divisor::new(coeffs);
    if !cfg.is_connected(&indicator)? {
        return Err(Error::Precondition("chain is not connected".into()));
    }
    if !validate_pairwise(cfg, chain)?.is_empty() {
        return Err(Error::Unclassifiable);
    }
    let encoding = chain_canonical_form(cfg, chain);
    let k = chain.len();
    let n = chain
        .iter()
        .map(|&i| cfg.curve(i).field_degree)
        .min()
        .expect("nonempty chain");
    for family in Family::ALL {
        if let Some(fixed) = family.fixed_length() {
            if fixed != k {
                continue;
            }
        }
        if k < family.min_length() {
            continue;
        }
        let t = template(family, k, n)?;
        let all: Vec<usize> = (0..k).collect();
        if chain_canonical_form(&t, &all) == encoding {
            return Ok(DynkinDiagram {
                family,
                length: k,
                base_degree: n,
                node_degrees: t.curves().iter().map(|c| c.field_degree).collect(),
            });
        }
    }
    Err(Error::Unclassifiable)
}

/// Exhaustively enumerate the valid connected (-2)-chains with at most
/// `max_nodes` nodes and degree unit up to `max_base_degree`.
///
/// Chains are grown one leaf at a time (valid chains are closed under
/// removing a leaf), pruned by the pairwise constraints and exact negative
/// definiteness, and deduplicated by canonical form. Output is sorted by
/// node count then canonical encoding; every emitted configuration carries
/// the characteristic its family forces.
pub fn enumerate_valid_chains(
    max_nodes: usize,
    max_base_degree: i64,
) -> Result<Vec<FiberConfiguration>> {
    if max_nodes == 0 || max_nodes > 9 {
        return Err(Error::BoundTooLarge(format!(
            "max_nodes must be in 1..=9, got {max_nodes}"
        )));
    }
    if !(1..=3).contains(&max_base_degree) {
        return Err(Error::BoundTooLarge(format!(
            "max_base_degree must be in 1..=3, got {max_base_degree}"
        )));
    }

    #[derive(Clone)]
    struct Proto {
        degrees: Vec<i64>,
        links: Vec<(usize, usize)>,
    }

    fn proto_config(p: &Proto) -> FiberConfiguration {
        let curves: Vec<CurveClass> = p
            .degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| CurveClass::new(i, d, -2 * d, 0, 1))
            .collect();
        let edges: Vec<Edge> = p
            .links
            .iter()
            .map(|&(a, b)| Edge {
                a,
                b,
                intersection: p.degrees[a].max(p.degrees[b]),
            })
            .collect();
        FiberConfiguration::subconfiguration(curves, &edges, 0)
            .expect("enumerated chains are structurally valid")
    }

    fn proto_key(p: &Proto) -> Vec<i64> {
        let cfg = proto_config(p);
        let all: Vec<usize> = (0..p.degrees.len()).collect();
        chain_canonical_form(&cfg, &all)
    }

    let mut results: Vec<(usize, Vec<i64>, FiberConfiguration)> = Vec::new();
    let mut emitted: BTreeSet<Vec<i64>> = BTreeSet::new();

    for n in 1..=max_base_degree {
        let menu = [n, 2 * n, 3 * n];
        let mut level: Vec<Proto> = menu
            .iter()
            .map(|&d| Proto {
                degrees: vec![d],
                links: vec![],
            })
            .collect();
        for size in 1..=max_nodes {
            // harvest chains whose degree unit is exactly n
            for p in &level {
                if p.degrees.iter().min() != Some(&n) {
                    continue;
                }
                let key = proto_key(p);
                if emitted.insert(key.clone()) {
                    let cfg = proto_config(p);
                    let all: Vec<usize> = (0..cfg.len()).collect();
                    let diagram = classify(&cfg, &all)?;
                    let characteristic = match admissible_characteristics(diagram.family) {
                        CharacteristicSet::Only(c) => c,
                        CharacteristicSet::Any => 0,
                    };
                    let rebuilt = FiberConfiguration::subconfiguration(
                        cfg.curves().to_vec(),
                        &cfg.edges(),
                        characteristic,
                    )?;
                    results.push((size, key, rebuilt));
                }
            }
            if size == max_nodes {
                break;
            }
            let mut next: Vec<Proto> = Vec::new();
            let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
            for p in &level {
                for attach in 0..p.degrees.len() {
                    for &d in &menu {
                        let da = p.degrees[attach];
                        let hi = da.max(d);
                        let lo = da.min(d);
                        if hi % lo != 0 || hi / lo > 3 {
                            continue;
                        }
                        let mut q = p.clone();
                        q.degrees.push(d);
                        q.links.push((attach, q.degrees.len() - 1));
                        let cfg = proto_config(&q);
                        let all: Vec<usize> = (0..q.degrees.len()).collect();
                        if !cfg.is_negative_definite(&all)? {
                            continue;
                        }
                        let key = proto_key(&q);
                        if seen.insert(key) {
                            next.push(q);
                        }
                    }
                }
            }
            level = next;
        }
    }

    results.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(results.into_iter().map(|(_, _, cfg)| cfg).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_cfg(degrees: &[i64], links: &[(usize, usize)]) -> FiberConfiguration {
        let curves: Vec<CurveClass> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| CurveClass::new(i, d, -2 * d, 0, 1))
            .collect();
        let edges: Vec<Edge> = links
            .iter()
            .map(|&(a, b)| Edge {
                a,
                b,
                intersection: degrees[a].max(degrees[b]),
            })
            .collect();
        FiberConfiguration::subconfiguration(curves, &edges, 0).unwrap()
    }

    #[test]
    fn pairwise_accepts_simple_pair() {
        let cfg = chain_cfg(&[1, 1], &[(0, 1)]);
        assert!(validate_pairwise(&cfg, &[0, 1]).unwrap().is_empty());
    }

    #[test]
    fn pairwise_rejects_double_intersection() {
        let cfg = FiberConfiguration::subconfiguration(
            vec![
                CurveClass::new(0, 1, -2, 0, 1),
                CurveClass::new(1, 1, -2, 0, 1),
            ],
            &[Edge {
                a: 0,
                b: 1,
                intersection: 2,
            }],
            0,
        )
        .unwrap();
        let v = validate_pairwise(&cfg, &[0, 1]).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::StrictIntersection);
    }

    #[test]
    fn pairwise_rejects_ratio_four() {
        let cfg = FiberConfiguration::subconfiguration(
            vec![
                CurveClass::new(0, 4, -8, 0, 1),
                CurveClass::new(1, 1, -2, 0, 1),
            ],
            &[Edge {
                a: 0,
                b: 1,
                intersection: 4,
            }],
            0,
        )
        .unwrap();
        let v = validate_pairwise(&cfg, &[0, 1]).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::DegreeRatio);
    }

    #[test]
    fn pairwise_rejects_non_minus_two() {
        let cfg =
            FiberConfiguration::subconfiguration(vec![CurveClass::new(0, 1, -2, 2, 1)], &[], 0)
                .unwrap();
        assert!(matches!(
            validate_pairwise(&cfg, &[0]),
            Err(Error::NotMinusTwo(0))
        ));
    }

    #[test]
    fn cartan_g2() {
        let cfg = chain_cfg(&[3, 1], &[(0, 1)]);
        let m = cartan_matrix(&cfg, &[0, 1]).unwrap();
        assert_eq!(m.rows(), &[vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn cartan_a2_and_single() {
        let cfg = chain_cfg(&[2, 2], &[(0, 1)]);
        let m = cartan_matrix(&cfg, &[0, 1]).unwrap();
        assert_eq!(m.rows(), &[vec![2, -1], vec![-1, 2]]);

        let single = chain_cfg(&[1], &[]);
        let m = cartan_matrix(&single, &[0]).unwrap();
        assert_eq!(m.rows(), &[vec![2]]);
    }

    #[test]
    fn classify_examples() {
        let a3 = chain_cfg(&[1, 1, 1], &[(0, 1), (1, 2)]);
        let d = classify(&a3, &[0, 1, 2]).unwrap();
        assert_eq!((d.family, d.length, d.base_degree), (Family::A, 3, 1));

        let g2 = chain_cfg(&[3, 1], &[(0, 1)]);
        let d = classify(&g2, &[0, 1]).unwrap();
        assert_eq!((d.family, d.length, d.base_degree), (Family::G2, 2, 1));

        let b3 = chain_cfg(&[2, 2, 1], &[(0, 1), (1, 2)]);
        let d = classify(&b3, &[0, 1, 2]).unwrap();
        assert_eq!((d.family, d.length, d.base_degree), (Family::B, 3, 1));
    }

    #[test]
    fn classify_is_order_invariant() {
        // same B3 chain presented with scrambled ids
        let cfg = chain_cfg(&[1, 2, 2], &[(0, 2), (1, 2)]);
        let d = classify(&cfg, &[2, 0, 1]).unwrap();
        assert_eq!((d.family, d.length, d.base_degree), (Family::B, 3, 1));
    }

    #[test]
    fn two_node_double_bond_reports_b2() {
        let cfg = chain_cfg(&[2, 1], &[(0, 1)]);
        let d = classify(&cfg, &[0, 1]).unwrap();
        assert_eq!((d.family, d.length), (Family::B, 2));
    }

    #[test]
    fn affine_extension_unclassifiable() {
        // three (-2)-curves in a cycle: pairwise fine, not negative definite
        let cfg = chain_cfg(&[1, 1, 1], &[(0, 1), (1, 2), (0, 2)]);
        assert!(matches!(
            classify(&cfg, &[0, 1, 2]),
            Err(Error::Unclassifiable)
        ));
    }

    #[test]
    fn characteristic_sets() {
        assert!(admissible_characteristics(Family::E8).admits(0));
        assert!(admissible_characteristics(Family::E8).admits(5));
        assert_eq!(
            admissible_characteristics(Family::F4),
            CharacteristicSet::Only(2)
        );
        assert_eq!(
            admissible_characteristics(Family::G2),
            CharacteristicSet::Only(3)
        );
        assert!(!admissible_characteristics(Family::B).admits(3));
    }

    #[test]
    fn enumerate_single_nodes() {
        let out = enumerate_valid_chains(1, 3).unwrap();
        assert_eq!(out.len(), 3);
        for (i, cfg) in out.iter().enumerate() {
            let d = classify(cfg, &[0]).unwrap();
            assert_eq!((d.family, d.length), (Family::A, 1));
            assert_eq!(d.base_degree, i as i64 + 1);
        }
    }

    #[test]
    fn enumerate_two_nodes() {
        let out = enumerate_valid_chains(2, 3).unwrap();
        let mut shapes: Vec<(Family, i64)> = out
            .iter()
            .filter(|cfg| cfg.len() == 2)
            .map(|cfg| {
                let d = classify(cfg, &[0, 1]).unwrap();
                (d.family, d.base_degree)
            })
            .collect();
        shapes.sort();
        assert_eq!(
            shapes,
            vec![
                (Family::A, 1),
                (Family::A, 2),
                (Family::A, 3),
                (Family::B, 1),
                (Family::B, 2),
                (Family::B, 3),
                (Family::G2, 1),
                (Family::G2, 2),
                (Family::G2, 3),
            ]
        );
    }

    #[test]
    fn enumerate_rejects_large_bounds() {
        assert!(enumerate_valid_chains(10, 1).is_err());
        assert!(enumerate_valid_chains(3, 4).is_err());
    }

    #[test]
    fn template_round_trip_small() {
        for family in Family::ALL {
            let lengths: Vec<usize> = match family.fixed_length() {
                Some(k) => vec![k],
                None => (family.min_length()..=9).collect(),
            };
            for k in lengths {
                for n in 1..=2 {
                    let t = template(family, k, n).unwrap();
                    let all: Vec<usize> = (0..k).collect();
                    let d = classify(&t, &all).unwrap();
                    assert_eq!(
                        (d.family, d.length, d.base_degree),
                        (family, k, n),
                        "round trip failed for {family} k={k} n={n}"
                    );
                }
            }
        }
    }
}
