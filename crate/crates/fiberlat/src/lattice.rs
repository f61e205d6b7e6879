//! Exact-integer model of a special fiber's dual graph and intersection pairing.
//!
//! A [`FiberConfiguration`] stores the irreducible components of a (candidate)
//! special fiber as [`CurveClass`] records together with the symmetric
//! intersection matrix over the residue field `k`. All intersection numbers
//! are plain integers measured over `k`; per-curve constant-field degrees are
//! kept separately so divisibility constraints stay visible.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of subdivisors an enumeration is allowed to visit.
pub const DEFAULT_SUBCURVE_CAP: u128 = 1_000_000;

/// One irreducible component of a fiber.
///
/// `field_degree` is `[k_i : k]` for the constant field `k_i` of the curve;
/// `self_int` and `canonical_deg` are measured over `k` and are therefore
/// multiples of `field_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub id: usize,
    pub field_degree: i64,
    pub self_int: i64,
    pub canonical_deg: i64,
    pub multiplicity: i64,
}

impl CurveClass {
    pub fn new(
        id: usize,
        field_degree: i64,
        self_int: i64,
        canonical_deg: i64,
        multiplicity: i64,
    ) -> Self {
        CurveClass {
            id,
            field_degree,
            self_int,
            canonical_deg,
            multiplicity,
        }
    }

    /// Degree of the dualizing sheaf over `k`: `C^2 + K.C`.
    pub fn dualizing_degree(&self) -> i64 {
        self.self_int + self.canonical_deg
    }

    /// A (-2)-curve has trivial canonical degree and `C^2 = -2 [k_i:k]`.
    pub fn is_minus_two(&self) -> bool {
        self.canonical_deg == 0 && self.self_int == -2 * self.field_degree
    }

    /// A (-d)-curve in the sense `C^2 = -d [k_i:k]` with rational geometry,
    /// i.e. dualizing degree `-2 [k_i:k]`.
    pub fn is_minus_d(&self, d: i64) -> bool {
        self.self_int == -d * self.field_degree && self.dualizing_degree() == -2 * self.field_degree
    }

    fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::CurveInvariant {
            id: self.id,
            reason,
        };
        if self.field_degree < 1 {
            return Err(fail(format!(
                "field_degree must be >= 1, got {}",
                self.field_degree
            )));
        }
        if self.multiplicity < 1 {
            return Err(fail(format!(
                "multiplicity must be >= 1, got {}",
                self.multiplicity
            )));
        }
        if self.self_int % self.field_degree != 0 {
            return Err(fail(format!(
                "field degree {} does not divide self-intersection {}",
                self.field_degree, self.self_int
            )));
        }
        if self.canonical_deg % self.field_degree != 0 {
            return Err(fail(format!(
                "field degree {} does not divide canonical degree {}",
                self.field_degree, self.canonical_deg
            )));
        }
        let omega = self.dualizing_degree() / self.field_degree;
        if omega % 2 != 0 {
            return Err(fail(format!(
                "dualizing degree over the constant field must be even, got {omega}"
            )));
        }
        if omega < -2 {
            return Err(fail(format!(
                "dualizing degree over the constant field must be >= -2, got {omega}"
            )));
        }
        if self.canonical_deg < 0 {
            return Err(fail(format!(
                "canonical degree {} < 0 is excluded by relative minimality",
                self.canonical_deg
            )));
        }
        Ok(())
    }
}

/// Integer coefficient vector indexed by the curve ids of a fixed configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Divisor {
    coeffs: Vec<i64>,
}

impl Divisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Divisor { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Divisor {
            coeffs: vec![0; len],
        }
    }

    /// Reduced divisor of a single component.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut coeffs = vec![0; len];
        coeffs[index] = 1;
        Divisor { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Effective and nonzero.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && !self.is_zero()
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        assert_eq!(self.len(), other.len());
        Divisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        assert_eq!(self.len(), other.len());
        Divisor {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Divisor) -> bool {
        self.len() == other.len() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }
}

impl From<Vec<i64>> for Divisor {
    fn from(coeffs: Vec<i64>) -> Self {
        Divisor { coeffs }
    }
}

/// An explicit intersection between two distinct components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub intersection: i64,
}

/// Weighted dual graph of a fiber (or of a subconfiguration of one).
///
/// Invariants checked at construction: the pairing matrix is symmetric with
/// the self-intersections on the diagonal and nonnegative entries elsewhere;
/// every curve satisfies the divisibility and dualizing-degree constraints;
/// when the configuration is declared a full fiber, the fiber class pairs to
/// zero with every component, components are connected, the canonical degree
/// of the whole fiber is positive, and every proper subconfiguration is
/// negative definite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberConfiguration {
    curves: Vec<CurveClass>,
    pairing: Vec<Vec<i64>>,
    characteristic: u32,
    is_full_fiber: bool,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiberConfiguration {
    pub fn new(
        curves: Vec<CurveClass>,
        edges: &[Edge],
        characteristic: u32,
        is_full_fiber: bool,
    ) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::Configuration("empty curve list".into()));
        }
        for (i, c) in curves.iter().enumerate() {
            if c.id != i {
                return Err(Error::Configuration(format!(
                    "curve ids must be dense from 0; position {i} has id {}",
                    c.id
                )));
            }
            c.validate()?;
        }
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::Configuration(format!(
                "characteristic must be 0 or a prime, got {characteristic}"
            )));
        }
        let n = curves.len();
        let mut pairing = vec![vec![0i64; n]; n];
        for (i, c) in curves.iter().enumerate() {
            pairing[i][i] = c.self_int;
        }
        for e in edges {
            if e.a >= n || e.b >= n {
                return Err(Error::EdgeInvariant {
                    a: e.a,
                    b: e.b,
                    reason: "edge references an unknown curve id".into(),
                });
            }
            if e.a == e.b {
                return Err(Error::EdgeInvariant {
                    a: e.a,
                    b: e.b,
                    reason: "self-edges are not allowed; self-intersections live on the curve"
                        .into(),
                });
            }
            if e.intersection < 1 {
                return Err(Error::EdgeInvariant {
                    a: e.a,
                    b: e.b,
                    reason: format!("intersection must be >= 1, got {}", e.intersection),
                });
            }
            if pairing[e.a][e.b] != 0 {
                return Err(Error::EdgeInvariant {
                    a: e.a,
                    b: e.b,
                    reason: "duplicate edge".into(),
                });
            }
            pairing[e.a][e.b] = e.intersection;
            pairing[e.b][e.a] = e.intersection;
        }
        let cfg = FiberConfiguration {
            curves,
            pairing,
            characteristic,
            is_full_fiber,
        };
        if is_full_fiber {
            cfg.validate_full_fiber()?;
        }
        Ok(cfg)
    }

    fn validate_full_fiber(&self) -> Result<()> {
        let fiber = self.fiber_divisor();
        if !self.is_connected(&fiber)? {
            return Err(Error::Configuration(
                "a full fiber must have connected support".into(),
            ));
        }
        for i in 0..self.len() {
            let v = self.pairing(&fiber, &Divisor::unit(self.len(), i))?;
            if v != 0 {
                return Err(Error::RadicalViolation { id: i, value: v });
            }
        }
        let kf = self.canonical_pairing(&fiber)?;
        if kf < 2 {
            return Err(Error::Configuration(format!(
                "canonical degree of the fiber must be >= 2 (genus >= 2), got {kf}"
            )));
        }
        self.validate_proper_subconfigurations()?;
        Ok(())
    }

    /// Negative definiteness of every proper nonempty subconfiguration.
    ///
    /// Checking the maximal proper subsets suffices: principal submatrices of
    /// a negative definite matrix are negative definite.
    pub fn validate_proper_subconfigurations(&self) -> Result<()> {
        if self.len() == 1 {
            return Ok(());
        }
        for drop in 0..self.len() {
            let subset: Vec<usize> = (0..self.len()).filter(|&i| i != drop).collect();
            if !self.is_negative_definite(&subset)? {
                return Err(Error::NotNegativeDefinite { subset });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curve(&self, i: usize) -> &CurveClass {
        &self.curves[i]
    }

    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_full_fiber(&self) -> bool {
        self.is_full_fiber
    }

    pub fn pairing_entry(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }

    /// Explicit edges (i < j with positive pairing).
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.pairing[i][j] != 0 {
                    out.push(Edge {
                        a: i,
                        b: j,
                        intersection: self.pairing[i][j],
                    });
                }
            }
        }
        out
    }

    /// The full fiber divisor `F = sum r_i C_i`.
    pub fn fiber_divisor(&self) -> Divisor {
        Divisor::new(self.curves.iter().map(|c| c.multiplicity).collect())
    }

    fn check_len(&self, d: &Divisor) -> Result<()> {
        if d.len() != self.len() {
            return Err(Error::IndexMismatch {
                divisor: d.len(),
                curves: self.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the intersection matrix: `D.E` over `k`.
    pub fn pairing(&self, d: &Divisor, e: &Divisor) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        let mut total = 0i64;
        for i in 0..self.len() {
            if d.coeff(i) == 0 {
                continue;
            }
            for j in 0..self.len() {
                if e.coeff(j) != 0 {
                    total += d.coeff(i) * e.coeff(j) * self.pairing[i][j];
                }
            }
        }
        Ok(total)
    }

    /// `K.D` extended linearly from the per-curve canonical degrees.
    pub fn canonical_pairing(&self, d: &Divisor) -> Result<i64> {
        self.check_len(d)?;
        Ok(d.coeffs()
            .iter()
            .zip(&self.curves)
            .map(|(&a, c)| a * c.canonical_deg)
            .sum())
    }

    /// Degree of the dualizing sheaf of an effective divisor: `D^2 + K.D`.
    pub fn dualizing_degree(&self, d: &Divisor) -> Result<i64> {
        self.check_len(d)?;
        if !d.is_effective() {
            return Err(Error::NotEffective);
        }
        Ok(self.pairing(d, d)? + self.canonical_pairing(d)?)
    }

    /// All divisors `0 < B <= D`, in ascending lexicographic coefficient order.
    pub fn subcurves(&self, d: &Divisor, cap: u128) -> Result<Subcurves> {
        self.check_len(d)?;
        if !d.is_effective() {
            return Err(Error::NotEffective);
        }
        let mut total: u128 = 1;
        for &c in d.coeffs() {
            total = total.saturating_mul(c as u128 + 1);
            if total > cap {
                return Err(Error::CapExceeded(format!(
                    "configuration too large: subcurve count exceeds cap {cap}"
                )));
            }
        }
        Ok(Subcurves {
            bound: d.clone(),
            state: None,
            done: false,
        })
    }

    /// Connectivity of the support of `D` under strictly positive pairings.
    pub fn is_connected(&self, d: &Divisor) -> Result<bool> {
        self.check_len(d)?;
        if !d.is_effective() {
            return Err(Error::NotEffective);
        }
        let support = d.support();
        let mut seen = vec![false; self.len()];
        let mut stack = vec![support[0]];
        seen[support[0]] = true;
        while let Some(v) = stack.pop() {
            for &w in &support {
                if !seen[w] && self.pairing[v][w] > 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(support.iter().all(|&v| seen[v]))
    }

    /// Leading principal minors of the pairing restricted to `subset`,
    /// via fraction-free (Bareiss) elimination in `i128`.
    ///
    /// Stops after the first zero minor; the truncated vector ends with that 0.
    pub fn leading_principal_minors(&self, subset: &[usize]) -> Result<Vec<i128>> {
        if subset.is_empty() {
            return Err(Error::Precondition("empty subset".into()));
        }
        for &i in subset {
            if i >= self.len() {
                return Err(Error::IndexMismatch {
                    divisor: i,
                    curves: self.len(),
                });
            }
        }
        let k = subset.len();
        let mut m: Vec<Vec<i128>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.pairing[subset[i]][subset[j]] as i128)
                    .collect()
            })
            .collect();
        let mut minors = Vec::with_capacity(k);
        let mut prev: i128 = 1;
        for step in 0..k {
            let pivot = m[step][step];
            minors.push(pivot);
            if pivot == 0 {
                return Ok(minors);
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
        Ok(minors)
    }

    /// Exact negative-definiteness test: `(-1)^k det_k > 0` for all leading
    /// principal minors of the restricted pairing.
    pub fn is_negative_definite(&self, subset: &[usize]) -> Result<bool> {
        let minors = self.leading_principal_minors(subset)?;
        if minors.len() < subset.len() {
            return Ok(false);
        }
        Ok(minors.iter().enumerate().all(|(idx, &d)| {
            let sign = if idx % 2 == 0 { -1 } else { 1 };
            sign * d.signum() > 0
        }))
    }

    /// 1-connectedness: every decomposition `D = D1 + D2` into nonzero
    /// effective divisors has `D1.D2 >= 1`.
    pub fn is_one_connected(&self, d: &Divisor, cap: u128) -> Result<bool> {
        self.check_len(d)?;
        if !d.is_effective() {
            return Err(Error::NotEffective);
        }
        for b in self.subcurves(d, cap)? {
            if b == *d {
                continue;
            }
            let rest = d.sub(&b);
            if self.pairing(&b, &rest)? < 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Construct without full-fiber validation but with per-curve and edge
    /// checks; used by enumerators that assemble non-fiber subconfigurations.
    pub fn subconfiguration(
        curves: Vec<CurveClass>,
        edges: &[Edge],
        characteristic: u32,
    ) -> Result<Self> {
        Self::new(curves, edges, characteristic, false)
    }
}

/// Iterator over all nonzero `B <= D`, ascending lexicographic.
pub struct Subcurves {
    bound: Divisor,
    state: Option<Vec<i64>>,
    done: bool,
}

impl Iterator for Subcurves {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        if self.done {
            return None;
        }
        let n = self.bound.len();
        let state = match &mut self.state {
            None => {
                let mut first = vec![0i64; n];
                // smallest nonzero vector: increment from zero
                let mut i = n;
                loop {
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    if self.bound.coeff(i) > 0 {
                        first[i] = 1;
                        break;
                    }
                }
                self.state = Some(first);
                self.state.as_mut().unwrap()
            }
            Some(s) => {
                // odometer increment, last coordinate fastest
                let mut i = n;
                loop {
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    if s[i] < self.bound.coeff(i) {
                        s[i] += 1;
                        for x in s.iter_mut().skip(i + 1) {
                            *x = 0;
                        }
                        break;
                    }
                }
                s
            }
        };
        Some(Divisor::new(state.clone()))
    }
}
