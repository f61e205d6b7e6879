//! Fundamental cycles of connected (-2)-chains.
//!
//! The fundamental cycle of a connected negative definite chain is the
//! smallest nonzero effective divisor `Z` supported on the chain with
//! `Z.C_i <= 0` for every chain component. It is computed by the increment
//! algorithm (start at a single component, repeatedly add a component that
//! still pairs positively) and certified by a brute-force minimality oracle.
//! Every fundamental cycle satisfies `Z^2 = -2 min(n_i)`.

use serde::Serialize;

use crate::chain::validate_pairwise;
use crate::error::{Error, Result};
use crate::lattice::{Divisor, FiberConfiguration};

/// Per-curve coefficient cap for the increment algorithm. On valid chains the
/// coefficients never exceed 6; hitting the cap diagnoses a pairing that is
/// not negative definite.
pub const COEFFICIENT_CAP: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalCycle {
    /// The cycle itself, indexed over the ambient configuration.
    pub cycle: Divisor,
    /// Chain members (ambient curve ids) the cycle is supported on.
    pub chain: Vec<usize>,
    /// Smallest constant-field degree on the chain.
    pub min_degree: i64,
}

fn check_chain(cfg: &FiberConfiguration, chain: &[usize]) -> Result<()> {
    let violations = validate_pairwise(cfg, chain)?;
    if let Some(v) = violations.first() {
        return Err(Error::Precondition(format!(
            "chain violates the pairwise constraints: {v}"
        )));
    }
    let mut coeffs = vec![0i64; cfg.len()];
    for &i in chain {
        coeffs[i] = 1;
    }
    if !cfg.is_connected(&Divisor::new(coeffs))? {
        return Err(Error::Precondition("chain is not connected".into()));
    }
    Ok(())
}

fn increment_from(cfg: &FiberConfiguration, chain: &[usize], start: usize) -> Result<Divisor> {
    let mut coeffs = vec![0i64; cfg.len()];
    coeffs[start] = 1;
    loop {
        let z = Divisor::new(coeffs.clone());
        let mut bump = None;
        for &i in chain {
            if cfg.pairing(&z, &Divisor::unit(cfg.len(), i))? > 0 {
                bump = Some(i);
                break;
            }
        }
        match bump {
            None => return Ok(z),
            Some(i) => {
                coeffs[i] += 1;
                if coeffs[i] > COEFFICIENT_CAP {
                    return Err(Error::NotNegativeDefinite {
                        subset: chain.to_vec(),
                    });
                }
            }
        }
    }
}

/// Compute the fundamental cycle by the increment algorithm, starting from
/// the lowest-index component and always bumping the lowest-index component
/// that still pairs positively.
///
/// The minimal cycle on a connected negative definite chain is unique; the
/// computation re-runs from every start and errors on any disagreement
/// instead of silently picking one.
pub fn compute_fundamental_cycle(
    cfg: &FiberConfiguration,
    chain: &[usize],
) -> Result<FundamentalCycle> {
    check_chain(cfg, chain)?;
    let mut sorted = chain.to_vec();
    sorted.sort_unstable();
    let z = increment_from(cfg, &sorted, sorted[0])?;
    for &start in sorted.iter().skip(1) {
        let other = increment_from(cfg, &sorted, start)?;
        if other != z {
            return Err(Error::DispatchGap(format!(
                "two distinct minimal cycles found from starts {} and {start}",
                sorted[0]
            )));
        }
    }
    let min_degree = sorted
        .iter()
        .map(|&i| cfg.curve(i).field_degree)
        .min()
        .expect("nonempty chain");
    Ok(FundamentalCycle {
        cycle: z,
        chain: sorted,
        min_degree,
    })
}

/// Same increment algorithm started from an arbitrary chain member; on a
/// negative definite chain the result does not depend on the start.
pub fn compute_fundamental_cycle_from(
    cfg: &FiberConfiguration,
    chain: &[usize],
    start: usize,
) -> Result<Divisor> {
    check_chain(cfg, chain)?;
    if !chain.contains(&start) {
        return Err(Error::Precondition(format!(
            "start curve {start} is not on the chain"
        )));
    }
    let mut sorted = chain.to_vec();
    sorted.sort_unstable();
    increment_from(cfg, &sorted, start)
}

/// Brute-force oracle: `Z` pairs nonpositively with every chain component,
/// has full support on the chain, and no strictly smaller divisor does.
pub fn verify_minimality(
    cfg: &FiberConfiguration,
    z: &Divisor,
    chain: &[usize],
    cap: u128,
) -> Result<bool> {
    check_chain(cfg, chain)?;
    if !z.is_effective() {
        return Err(Error::NotEffective);
    }
    for i in 0..cfg.len() {
        if z.coeff(i) != 0 && !chain.contains(&i) {
            return Err(Error::Precondition(format!(
                "divisor has support outside the chain at curve {i}"
            )));
        }
    }
    let nonpositive = |d: &Divisor| -> Result<bool> {
        for &i in chain {
            if cfg.pairing(d, &Divisor::unit(cfg.len(), i))? > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let full_support = |d: &Divisor| chain.iter().all(|&i| d.coeff(i) > 0);
    if !full_support(z) || !nonpositive(z)? {
        return Ok(false);
    }
    // any strictly smaller candidate with the defining property disproves
    // minimality; candidates without full support cannot satisfy it on a
    // connected chain but are checked anyway
    for b in cfg.subcurves(z, cap)? {
        if b == *z {
            continue;
        }
        if nonpositive(&b)? && full_support(&b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The self-intersection identity `Z^2 = -2 min(n_i)`.
pub fn check_self_intersection(cfg: &FiberConfiguration, fc: &FundamentalCycle) -> Result<bool> {
    let z2 = cfg.pairing(&fc.cycle, &fc.cycle)?;
    Ok(z2 == -2 * fc.min_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{template, Family};

    fn whole(cfg: &FiberConfiguration) -> Vec<usize> {
        (0..cfg.len()).collect()
    }

    #[test]
    fn a_chain_cycle_is_all_ones() {
        for k in 1..=5 {
            let cfg = template(Family::A, k, 2).unwrap();
            let fc = compute_fundamental_cycle(&cfg, &whole(&cfg)).unwrap();
            assert_eq!(fc.cycle.coeffs(), vec![1; k]);
            assert!(check_self_intersection(&cfg, &fc).unwrap());
        }
    }

    #[test]
    fn g2_cycle() {
        let cfg = template(Family::G2, 2, 1).unwrap();
        let fc = compute_fundamental_cycle(&cfg, &[0, 1]).unwrap();
        assert_eq!(fc.cycle.coeffs(), &[1, 2]);
        assert_eq!(fc.min_degree, 1);
        assert!(check_self_intersection(&cfg, &fc).unwrap());
    }

    #[test]
    fn e8_cycle() {
        let cfg = template(Family::E8, 8, 1).unwrap();
        let fc = compute_fundamental_cycle(&cfg, &whole(&cfg)).unwrap();
        // spine then branch node
        assert_eq!(fc.cycle.coeffs(), &[2, 4, 6, 5, 4, 3, 2, 3]);
        assert!(check_self_intersection(&cfg, &fc).unwrap());
    }

    #[test]
    fn d4_cycle_verified_minimal() {
        let cfg = template(Family::D, 4, 1).unwrap();
        let fc = compute_fundamental_cycle(&cfg, &whole(&cfg)).unwrap();
        assert_eq!(fc.cycle.coeffs(), &[1, 2, 1, 1]);
        assert!(verify_minimality(&cfg, &fc.cycle, &fc.chain, 1 << 20).unwrap());
    }

    #[test]
    fn a2_minimality_oracle() {
        let cfg = template(Family::A, 2, 1).unwrap();
        assert!(verify_minimality(&cfg, &Divisor::new(vec![1, 1]), &[0, 1], 1 << 10).unwrap());
        assert!(!verify_minimality(&cfg, &Divisor::new(vec![2, 2]), &[0, 1], 1 << 10).unwrap());
    }

    #[test]
    fn f4_cycle_is_2321() {
        // the minimal divisor with Z.C_i <= 0 on the F4 chain (n,n,2n,2n)
        let cfg = template(Family::F4, 4, 1).unwrap();
        let fc = compute_fundamental_cycle(&cfg, &whole(&cfg)).unwrap();
        assert_eq!(fc.cycle.coeffs(), &[2, 3, 2, 1]);
        assert!(check_self_intersection(&cfg, &fc).unwrap());
        assert!(verify_minimality(&cfg, &fc.cycle, &fc.chain, 1 << 20).unwrap());
    }

    #[test]
    fn f4_vector_1221_is_not_a_fundamental_cycle() {
        // (1,2,2,1) has square -2n but pairs positively with the second node,
        // so it fails the defining property outright
        let cfg = template(Family::F4, 4, 1).unwrap();
        let v = Divisor::new(vec![1, 2, 2, 1]);
        assert_eq!(cfg.pairing(&v, &v).unwrap(), -2);
        assert_eq!(
            cfg.pairing(&v, &Divisor::unit(4, 1)).unwrap(),
            1,
            "the vector pairs positively with node 1"
        );
        assert!(!verify_minimality(&cfg, &v, &[0, 1, 2, 3], 1 << 20).unwrap());
    }

    #[test]
    fn start_independence_on_e6() {
        let cfg = template(Family::E6, 6, 1).unwrap();
        let chain = whole(&cfg);
        let reference = compute_fundamental_cycle(&cfg, &chain).unwrap().cycle;
        for &start in &chain {
            let z = compute_fundamental_cycle_from(&cfg, &chain, start).unwrap();
            assert_eq!(z, reference);
        }
    }

    #[test]
    fn cap_diagnoses_indefinite_pairing() {
        // two (-2)-curves meeting twice: the increment loop would never stop
        let cfg = FiberConfiguration::subconfiguration(
            vec![
                crate::lattice::CurveClass::new(0, 1, -2, 0, 1),
                crate::lattice::CurveClass::new(1, 1, -2, 0, 1),
            ],
            &[crate::lattice::Edge {
                a: 0,
                b: 1,
                intersection: 2,
            }],
            0,
        )
        .unwrap();
        // pairwise validation already rejects this chain
        assert!(compute_fundamental_cycle(&cfg, &[0, 1]).is_err());
    }
}
