//! Linear-code semantics over a finite field: duality, puncturing and
//! shortening, exact minimum distance by two independent engines, MDS
//! tests, locality verification, admissible puncturing patterns, and the
//! two maximal-recoverability oracles.
//!
//! Every exhaustive oracle is guarded by explicit resource caps
//! ([`Limits`]) and fails loudly when an enumeration would exceed them;
//! nothing is ever sampled silently. Failing verdicts carry the first
//! violating subset or pattern in deterministic (lexicographic) order.

use crate::combi::{binomial, subsets_up_to, Combinations, MixedRadix};
use crate::gf::{Field, GfError};
use crate::linalg::{LinalgError, Matrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("malformed locality structure: {0}")]
    BadLocality(String),
    #[error("invalid puncture pattern: {0}")]
    BadPattern(String),
    #[error("infeasible at desk scale: {operation} needs {needed} steps, limit {limit}")]
    ResourceGuard {
        operation: String,
        needed: u128,
        limit: u64,
    },
}

/// Caps on the two enumeration axes: codeword counts (q^k-type scans) and
/// column-subset counts (C(n, w)-type scans).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Limits {
    pub max_codewords: u64,
    pub max_subsets: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_codewords: 1 << 22,
            max_subsets: 1 << 22,
        }
    }
}

fn guard(operation: &str, needed: u128, limit: u64) -> Result<(), CodeError> {
    if needed > limit as u128 {
        Err(CodeError::ResourceGuard {
            operation: operation.to_string(),
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}

/// An [n, k] linear code with both generator and parity-check matrices.
///
/// Invariants: `G` is k x n of rank k, `H` is (n-k) x n of rank n-k, and
/// `G H^T = 0`.
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    generator: Matrix,
    parity: Matrix,
}

impl LinearCode {
    /// From a full-row-rank generator; the parity check is derived.
    pub fn from_generator(g: Matrix) -> Result<LinearCode, CodeError> {
        let k = g.rows();
        let n = g.cols();
        if n == 0 {
            return Err(CodeError::InvalidCode("block length zero".into()));
        }
        let red = g.reduce();
        if red.rank != k {
            return Err(CodeError::InvalidCode(format!(
                "generator has rank {} but {} rows",
                red.rank, k
            )));
        }
        let parity = red.nullspace;
        Ok(LinearCode {
            field: g.field().clone(),
            n,
            k,
            generator: g,
            parity,
        })
    }

    /// From a full-row-rank parity-check matrix; the generator is derived.
    pub fn from_parity(h: Matrix) -> Result<LinearCode, CodeError> {
        let n = h.cols();
        if n == 0 {
            return Err(CodeError::InvalidCode("block length zero".into()));
        }
        let red = h.reduce();
        if red.rank != h.rows() {
            return Err(CodeError::InvalidCode(format!(
                "parity check has rank {} but {} rows",
                red.rank,
                h.rows()
            )));
        }
        let generator = red.nullspace;
        let k = generator.rows();
        Ok(LinearCode {
            field: h.field().clone(),
            n,
            k,
            generator,
            parity: h,
        })
    }

    /// From matching generator and parity-check matrices; all invariants
    /// (full ranks, orthogonality) are validated, not assumed.
    pub fn from_parts(g: Matrix, h: Matrix) -> Result<LinearCode, CodeError> {
        if g.cols() != h.cols() {
            return Err(CodeError::InvalidCode(
                "generator and parity check disagree on block length".into(),
            ));
        }
        if g.field() != h.field() {
            return Err(GfError::FieldMismatch.into());
        }
        let n = g.cols();
        let k = g.rows();
        if n == 0 {
            return Err(CodeError::InvalidCode("block length zero".into()));
        }
        if g.rank() != k {
            return Err(CodeError::InvalidCode("generator is rank-deficient".into()));
        }
        if h.rows() != n - k || h.rank() != n - k {
            return Err(CodeError::InvalidCode(format!(
                "parity check must have full rank n-k = {}",
                n - k
            )));
        }
        if !g.matmul(&h.transpose()).is_zero() {
            return Err(CodeError::InvalidCode(
                "generator and parity check are not orthogonal".into(),
            ));
        }
        Ok(LinearCode {
            field: g.field().clone(),
            n,
            k,
            generator: g,
            parity: h,
        })
    }

    /// From any spanning set of codewords: rows are compressed to a basis,
    /// so the dimension is whatever the row space supports.
    pub fn from_row_space(g: Matrix) -> Result<LinearCode, CodeError> {
        let red = g.reduce();
        let basis = red.rref.select_rows(&(0..red.rank).collect::<Vec<_>>());
        let n = g.cols();
        if n == 0 {
            return Err(CodeError::InvalidCode("block length zero".into()));
        }
        let parity = basis.reduce().nullspace;
        Ok(LinearCode {
            field: g.field().clone(),
            n,
            k: red.rank,
            generator: basis,
            parity,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    /// Swap the generator and parity-check roles.
    pub fn dual(&self) -> LinearCode {
        LinearCode {
            field: self.field.clone(),
            n: self.n,
            k: self.n - self.k,
            generator: self.parity.clone(),
            parity: self.generator.clone(),
        }
    }

    /// All q^k codewords as packed-value vectors (small codes only).
    pub fn codewords(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let q = self.field.q() as usize;
        MixedRadix::new(vec![q; self.k]).map(move |msg| self.encode_raw(&msg))
    }

    fn encode_raw(&self, msg: &[usize]) -> Vec<u64> {
        let f = &self.field;
        let mut out = vec![0u64; self.n];
        for (i, &m) in msg.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add_raw(*o, f.mul_raw(m as u64, self.generator.at(i, j)));
            }
        }
        out
    }

    /// Delete coordinates from all codewords. The dimension is recomputed
    /// from the projected row space and may drop; callers that need the
    /// dimension preserved must compare `k()` before and after.
    pub fn puncture(&self, pattern: &PuncturePattern) -> Result<LinearCode, CodeError> {
        let coords = pattern.validate_for(self.n)?;
        if coords.len() >= self.n {
            return Err(CodeError::BadPattern(
                "puncturing would leave zero length".into(),
            ));
        }
        let keep: Vec<usize> = (0..self.n).filter(|c| !coords.contains(c)).collect();
        LinearCode::from_row_space(self.generator.select_cols(&keep))
    }

    /// Keep codewords that vanish on the coordinates, then delete them.
    pub fn shorten(&self, pattern: &PuncturePattern) -> Result<LinearCode, CodeError> {
        let coords = pattern.validate_for(self.n)?;
        if coords.len() >= self.n {
            return Err(CodeError::BadPattern(
                "shortening would leave zero length".into(),
            ));
        }
        let keep: Vec<usize> = (0..self.n).filter(|c| !coords.contains(c)).collect();
        // messages x with (xG) zero on the shortened coordinates
        let coord_list: Vec<usize> = coords.iter().copied().collect();
        let restricted = self.generator.select_cols(&coord_list);
        let x = restricted.transpose().nullspace();
        let shortened = x.matmul(&self.generator).select_cols(&keep);
        LinearCode::from_row_space(shortened)
    }

    /// Exact minimum distance; engine chosen by cost estimate.
    pub fn min_distance(&self, limits: &Limits) -> Result<usize, CodeError> {
        if self.k == 0 {
            return Err(CodeError::BadParameters(
                "minimum distance needs dimension at least 1".into(),
            ));
        }
        let enum_cost = self.enumeration_cost();
        let rank_cost = self.rank_engine_cost();
        let enum_ok = enum_cost <= limits.max_codewords as u128;
        let rank_ok = rank_cost <= limits.max_subsets as u128;
        match (enum_ok, rank_ok) {
            (true, true) => {
                if enum_cost <= rank_cost {
                    self.min_distance_by_enumeration(limits)
                } else {
                    self.min_distance_by_column_rank(limits)
                }
            }
            (true, false) => self.min_distance_by_enumeration(limits),
            (false, true) => self.min_distance_by_column_rank(limits),
            (false, false) => Err(CodeError::ResourceGuard {
                operation: "min_distance (both engines)".into(),
                needed: enum_cost.min(rank_cost),
                limit: limits.max_codewords.min(limits.max_subsets),
            }),
        }
    }

    fn enumeration_cost(&self) -> u128 {
        // projective codeword count (q^k - 1) / (q - 1)
        let q = self.field.q() as u128;
        let mut qk: u128 = 1;
        for _ in 0..self.k {
            qk = qk.saturating_mul(q);
        }
        (qk - 1) / (q - 1)
    }

    fn rank_engine_cost(&self) -> u128 {
        subsets_up_to(self.n as u64, (self.n - self.k) as u64)
    }

    /// Scan one codeword per projective message class and take the minimum
    /// weight.
    pub fn min_distance_by_enumeration(&self, limits: &Limits) -> Result<usize, CodeError> {
        if self.k == 0 {
            return Err(CodeError::BadParameters("dimension zero".into()));
        }
        guard(
            "min_distance codeword enumeration",
            self.enumeration_cost(),
            limits.max_codewords,
        )?;
        let q = self.field.q() as usize;
        let mut best = self.n + 1;
        for lead in 0..self.k {
            for suffix in MixedRadix::new(vec![q; self.k - lead - 1]) {
                let mut msg = vec![0usize; self.k];
                msg[lead] = 1;
                msg[lead + 1..].copy_from_slice(&suffix);
                let w = self.encode_raw(&msg).iter().filter(|&&v| v != 0).count();
                if w < best {
                    best = w;
                    if best == 1 {
                        return Ok(1);
                    }
                }
            }
        }
        Ok(best)
    }

    /// Smallest w such that some w columns of H are linearly dependent.
    /// Any (n-k+1)-subset is dependent, so only sizes up to n-k are scanned.
    pub fn min_distance_by_column_rank(&self, limits: &Limits) -> Result<usize, CodeError> {
        if self.k == 0 {
            return Err(CodeError::BadParameters("dimension zero".into()));
        }
        guard(
            "min_distance column-rank scan",
            self.rank_engine_cost(),
            limits.max_subsets,
        )?;
        for w in 1..=self.n - self.k {
            for subset in Combinations::new(self.n, w) {
                if self.parity.select_cols(&subset).rank() < w {
                    return Ok(w);
                }
            }
        }
        Ok(self.n - self.k + 1)
    }

    /// d = n - k + 1, by whichever engine is cheaper.
    pub fn is_mds(&self, limits: &Limits) -> Result<bool, CodeError> {
        let minors_cost = binomial(self.n as u64, self.k as u64);
        let dist_cost = self.enumeration_cost().min(self.rank_engine_cost());
        if minors_cost <= dist_cost {
            self.is_mds_by_minors(limits)
        } else {
            Ok(self.min_distance(limits)? == self.n - self.k + 1)
        }
    }

    /// Every k columns of G linearly independent.
    pub fn is_mds_by_minors(&self, limits: &Limits) -> Result<bool, CodeError> {
        if self.k == 0 {
            return Err(CodeError::BadParameters("dimension zero".into()));
        }
        guard(
            "MDS minor scan",
            binomial(self.n as u64, self.k as u64),
            limits.max_subsets,
        )?;
        for subset in Combinations::new(self.n, self.k) {
            if self.generator.select_cols(&subset).rank() < self.k {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// d == n - k + 1 via the distance engines.
    pub fn is_mds_by_distance(&self, limits: &Limits) -> Result<bool, CodeError> {
        Ok(self.min_distance(limits)? == self.n - self.k + 1)
    }
}

/// Right side of the minimum-distance bound for [n, k] codes of locality r:
/// `(n - k + 1) - (ceil(k / r) - 1)`.
pub fn dmin_bound(n: usize, k: usize, r: usize) -> Result<i64, CodeError> {
    if k == 0 || k > n || r == 0 {
        return Err(CodeError::BadParameters(format!(
            "dmin_bound needs 1 <= k <= n and r >= 1, got n={n} k={k} r={r}"
        )));
    }
    let ceil_kr = k.div_ceil(r) as i64;
    Ok((n as i64 - k as i64 + 1) - (ceil_kr - 1))
}

/// Recovery sets L_i over the coordinate set, with locality parameter r.
///
/// Each set has size at most r+1, and no set is contained in the union of
/// the others (violations are rejected, not normalised).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityStructure {
    r: usize,
    sets: Vec<Vec<usize>>,
}

impl LocalityStructure {
    pub fn new(r: usize, sets: Vec<Vec<usize>>) -> Result<LocalityStructure, CodeError> {
        if r == 0 {
            return Err(CodeError::BadLocality("locality r must be positive".into()));
        }
        if sets.is_empty() {
            return Err(CodeError::BadLocality("no recovery sets".into()));
        }
        let mut cleaned = Vec::with_capacity(sets.len());
        for s in &sets {
            let mut t = s.clone();
            t.sort_unstable();
            t.dedup();
            if t.len() != s.len() {
                return Err(CodeError::BadLocality(
                    "recovery set has repeated coordinates".into(),
                ));
            }
            if t.is_empty() {
                return Err(CodeError::BadLocality("empty recovery set".into()));
            }
            if t.len() > r + 1 {
                return Err(CodeError::BadLocality(format!(
                    "recovery set of size {} exceeds r+1 = {}",
                    t.len(),
                    r + 1
                )));
            }
            cleaned.push(t);
        }
        // non-containment: each set keeps a private coordinate
        for i in 0..cleaned.len() {
            let private = cleaned[i]
                .iter()
                .any(|c| !cleaned.iter().enumerate().any(|(j, s)| j != i && s.contains(c)));
            if !private {
                return Err(CodeError::BadLocality(format!(
                    "recovery set {i} is contained in the union of the others"
                )));
            }
        }
        Ok(LocalityStructure { r, sets: cleaned })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn validate_for(&self, n: usize) -> Result<(), CodeError> {
        for s in &self.sets {
            if s.iter().any(|&c| c >= n) {
                return Err(CodeError::BadLocality(format!(
                    "coordinate out of range for block length {n}"
                )));
            }
        }
        Ok(())
    }

    /// Does every coordinate of [0, n) belong to some recovery set?
    pub fn covers(&self, n: usize) -> bool {
        (0..n).all(|c| self.sets.iter().any(|s| s.contains(&c)))
    }

    /// Coordinates of each set private to it (in no other set), sorted.
    pub fn private_coords(&self) -> Vec<Vec<usize>> {
        (0..self.sets.len())
            .map(|i| {
                self.sets[i]
                    .iter()
                    .copied()
                    .filter(|c| {
                        !self
                            .sets
                            .iter()
                            .enumerate()
                            .any(|(j, s)| j != i && s.contains(c))
                    })
                    .collect()
            })
            .collect()
    }
}

/// An ordered set of distinct coordinates to puncture, one per recovery
/// set when used as an admissible pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuncturePattern(Vec<usize>);

impl PuncturePattern {
    pub fn new(coords: Vec<usize>) -> Result<PuncturePattern, CodeError> {
        let mut sorted = coords.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != coords.len() {
            return Err(CodeError::BadPattern("repeated coordinates".into()));
        }
        Ok(PuncturePattern(coords))
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    fn validate_for(&self, n: usize) -> Result<std::collections::BTreeSet<usize>, CodeError> {
        if self.0.iter().any(|&c| c >= n) {
            return Err(CodeError::BadPattern(format!(
                "coordinate out of range for block length {n}"
            )));
        }
        Ok(self.0.iter().copied().collect())
    }

    /// Is this pattern admissible for the structure: exactly one private
    /// coordinate per recovery set, in set order?
    pub fn is_admissible(&self, loc: &LocalityStructure) -> bool {
        let private = loc.private_coords();
        self.0.len() == private.len()
            && self
                .0
                .iter()
                .zip(&private)
                .all(|(c, p)| p.contains(c))
    }
}

/// Every admissible puncturing pattern (one private coordinate per
/// recovery set), in lexicographic order. Empty when some set has no
/// private coordinate.
pub fn admissible_patterns(loc: &LocalityStructure) -> Vec<PuncturePattern> {
    let private = loc.private_coords();
    if private.iter().any(|p| p.is_empty()) {
        return Vec::new();
    }
    MixedRadix::new(private.iter().map(|p| p.len()).collect())
        .map(|choice| {
            PuncturePattern(
                choice
                    .iter()
                    .zip(&private)
                    .map(|(&i, p)| p[i])
                    .collect(),
            )
        })
        .collect()
}

/// Is the code locally repairable with structure `loc`: for every
/// coordinate, some dual codeword supported inside a recovery set
/// containing it is nonzero there (weight automatically <= r+1).
pub fn verify_locality(code: &LinearCode, loc: &LocalityStructure) -> Result<bool, CodeError> {
    loc.validate_for(code.n())?;
    if !loc.covers(code.n()) {
        return Ok(false);
    }
    let mut covered = vec![false; code.n()];
    for set in loc.sets() {
        // dual codewords supported in `set`: null space of G restricted
        let restricted = code.generator().select_cols(set);
        let ns = restricted.nullspace();
        for (pos, &coord) in set.iter().enumerate() {
            if (0..ns.rows()).any(|i| ns.at(i, pos) != 0) {
                covered[coord] = true;
            }
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Verdict of the generic maximal-recoverability oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MrVerdict {
    pub passed: bool,
    /// first k-subset independent in G0 but dependent in G
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: u64,
}

/// Generic MR oracle: with G0 generating the null space of the topology
/// H0, every k-subset of columns independent in G0 must stay independent
/// in G. Exhaustive over all C(n, k) subsets, lexicographic order.
pub fn is_mr(g: &Matrix, h0: &Matrix, limits: &Limits) -> Result<MrVerdict, CodeError> {
    if g.cols() != h0.cols() {
        return Err(CodeError::BadParameters(format!(
            "G has {} columns but H0 has {}",
            g.cols(),
            h0.cols()
        )));
    }
    if g.field() != h0.field() {
        return Err(GfError::FieldMismatch.into());
    }
    let k = g.rows();
    if g.rank() != k {
        return Err(CodeError::InvalidCode(
            "G must have full row rank".into(),
        ));
    }
    let n = g.cols();
    guard(
        "MR k-subset scan",
        binomial(n as u64, k as u64),
        limits.max_subsets,
    )?;
    let g0 = h0.nullspace();
    let mut checked = 0u64;
    for subset in Combinations::new(n, k) {
        checked += 1;
        if g0.select_cols(&subset).rank() == k && g.select_cols(&subset).rank() < k {
            return Ok(MrVerdict {
                passed: false,
                witness: Some(subset),
                subsets_checked: checked,
            });
        }
    }
    Ok(MrVerdict {
        passed: true,
        witness: None,
        subsets_checked: checked,
    })
}

/// How an admissible-puncture MDS check failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum PunctureFailure {
    /// puncturing dropped the dimension below k
    DimensionDrop { got: usize },
    /// some k columns of the punctured code are dependent
    /// (witness in original coordinates)
    DependentColumns { subset: Vec<usize> },
}

/// Verdict of the admissible-puncture MDS oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PunctureMrVerdict {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(PuncturePattern, PunctureFailure)>,
    pub patterns_checked: u64,
}

/// Independent MR oracle for locality topologies: every admissible
/// puncturing pattern must leave an MDS code of unchanged dimension k.
/// Passes vacuously when no admissible pattern exists.
pub fn mr_via_punctures(
    code: &LinearCode,
    loc: &LocalityStructure,
    limits: &Limits,
) -> Result<PunctureMrVerdict, CodeError> {
    loc.validate_for(code.n())?;
    let patterns = admissible_patterns(loc);
    let k = code.k();
    let m = loc.sets().len();
    let per_pattern = binomial((code.n() - m) as u64, k as u64);
    guard(
        "admissible-puncture MDS scan",
        (patterns.len() as u128).saturating_mul(per_pattern),
        limits.max_subsets,
    )?;
    let mut checked = 0u64;
    for pattern in patterns {
        checked += 1;
        let punctured = code.puncture(&pattern)?;
        if punctured.k() != k {
            return Ok(PunctureMrVerdict {
                passed: false,
                witness: Some((pattern, PunctureFailure::DimensionDrop { got: punctured.k() })),
                patterns_checked: checked,
            });
        }
        let removed: std::collections::BTreeSet<usize> = pattern.coords().iter().copied().collect();
        let keep: Vec<usize> = (0..code.n()).filter(|c| !removed.contains(c)).collect();
        for subset in Combinations::new(punctured.n(), k) {
            if punctured.generator().select_cols(&subset).rank() < k {
                let original: Vec<usize> = subset.iter().map(|&j| keep[j]).collect();
                return Ok(PunctureMrVerdict {
                    passed: false,
                    witness: Some((pattern, PunctureFailure::DependentColumns { subset: original })),
                    patterns_checked: checked,
                });
            }
        }
    }
    Ok(PunctureMrVerdict {
        passed: true,
        witness: None,
        patterns_checked: checked,
    })
}

/// Verdict of the partial-maximal-recoverability check for one pattern.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmrVerdict {
    pub passed: bool,
    pub min_distance: usize,
    pub distance_bound: i64,
    pub punctured_dimension: usize,
    pub punctured_mds: bool,
}

/// PMR check: the code is distance-optimal for its locality (equality in
/// the bound) and puncturing at the given admissible pattern yields an
/// MDS code of unchanged dimension.
pub fn is_pmr(
    code: &LinearCode,
    loc: &LocalityStructure,
    pattern: &PuncturePattern,
    limits: &Limits,
) -> Result<PmrVerdict, CodeError> {
    loc.validate_for(code.n())?;
    if !pattern.is_admissible(loc) {
        return Err(CodeError::BadPattern(
            "pattern is not admissible for the locality structure".into(),
        ));
    }
    let d = code.min_distance(limits)?;
    let bound = dmin_bound(code.n(), code.k(), loc.r())?;
    let punctured = code.puncture(pattern)?;
    let dim_ok = punctured.k() == code.k();
    let mds = dim_ok && punctured.is_mds(limits)?;
    Ok(PmrVerdict {
        passed: d as i64 == bound && mds,
        min_distance: d,
        distance_bound: bound,
        punctured_dimension: punctured.k(),
        punctured_mds: mds,
    })
}
