//! Newton-polyhedron interior tests and klt certificates.
//!
//! A perturbed family is klt at a head coordinate point when the all-ones
//! point lies in the interior of the Newton polyhedron of the
//! dehomogenized equation, that is, of conv(support) + R_{>=0}^4.
//! [`interior_test`] decides this by an exact rational linear program;
//! [`explicit_lambda_witness`] produces the same conclusion from a
//! closed-form convex combination. Certificates carry both and they must
//! agree.

use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::core::{Check, Rat};
use crate::smoothness::{HypersurfaceFamily, Perturbation};
use crate::structure::StructuredWeights;

/// Errors from witness construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    /// A hypothesis of the closed-form construction fails.
    #[error("hypothesis failed: {check}")]
    HypothesisFailed { check: Check },
}

/// The two head coordinate charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// The affine chart z0 = 1, with coordinates (z1, z2, z3, z4).
    #[serde(rename = "z0")]
    Z0,
    /// The affine chart z1 = 1, with coordinates (z0, z2, z3, z4).
    #[serde(rename = "z1")]
    Z1,
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Chart::Z0 => write!(f, "z0"),
            Chart::Z1 => write!(f, "z1"),
        }
    }
}

/// Exponent vectors of the dehomogenized support in one head chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineSupport {
    /// Which coordinate was set to 1.
    pub chart: Chart,
    /// The exponent vectors in the four remaining coordinates, sorted.
    pub points: Vec<[u64; 4]>,
}

/// Dehomogenizes the family support in the given chart.
pub fn affine_support(family: &HypersurfaceFamily, chart: Chart) -> AffineSupport {
    let drop = match chart {
        Chart::Z0 => 0,
        Chart::Z1 => 1,
    };
    let mut points: Vec<[u64; 4]> = family
        .support
        .iter()
        .map(|m| {
            let e = m.exponents();
            let mut p = [0u64; 4];
            let mut idx = 0;
            for (j, &ej) in e.iter().enumerate() {
                if j != drop {
                    p[idx] = ej;
                    idx += 1;
                }
            }
            p
        })
        .collect();
    points.sort_unstable();
    points.dedup();
    AffineSupport { chart, points }
}

/// The singular charts of a perturbed head, with the head exponent that
/// controls each chart: z1 with exponent beta0 for both kinds, and
/// additionally z0 with exponent alpha1 for kind B when alpha1 >= 2.
pub fn chart_exponents(p: &Perturbation) -> Vec<(Chart, u64)> {
    match *p {
        Perturbation::A { beta0, .. } => vec![(Chart::Z1, beta0)],
        Perturbation::B { alpha1, beta0, .. } => {
            let mut charts = vec![(Chart::Z1, beta0)];
            if alpha1 >= 2 {
                charts.push((Chart::Z0, alpha1));
            }
            charts
        }
    }
}

/// One point of a convex combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    /// The support point.
    pub point: Vec<u64>,
    /// Its strictly positive coefficient.
    pub coefficient: Rat,
}

/// A convex combination of support points strictly dominated by a target
/// point, certifying that the target is interior to the Newton
/// polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteriorWitness {
    /// The participating points and coefficients (zeros omitted).
    pub combination: Vec<WitnessEntry>,
    /// The value of the combination, coordinate by coordinate.
    pub combined: Vec<Rat>,
    /// The largest ratio combined_j / target_j, strictly below 1.
    pub max_ratio: Rat,
}

impl InteriorWitness {
    /// Re-verifies the witness against a target: coefficients positive
    /// and summing to 1, and the combination strictly below the target in
    /// every coordinate.
    pub fn dominates(&self, target: &[Rat]) -> bool {
        if self.combination.is_empty() {
            return false;
        }
        let n = target.len();
        let mut sum = Rat::zero();
        let mut combined = vec![Rat::zero(); n];
        for entry in &self.combination {
            if !entry.coefficient.is_positive() || entry.point.len() != n {
                return false;
            }
            sum = sum + entry.coefficient.clone();
            for j in 0..n {
                combined[j] = combined[j].clone()
                    + entry.coefficient.clone() * Rat::from(entry.point[j]);
            }
        }
        sum == Rat::one()
            && combined == self.combined
            && (0..n).all(|j| combined[j] < target[j])
    }
}

/// Exact Gaussian elimination; `None` when the matrix is singular.
fn solve_square(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = m[col][col].clone();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for c in col..n {
                    let sub = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &sub;
                }
                let sub = &f * &rhs[col];
                rhs[r] = &rhs[r] - &sub;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            recurse(i + 1, n, k, current, out);
            current.pop();
        }
    }
    recurse(0, n, k, &mut current, &mut out);
    out
}

/// Decides whether `target` lies strictly inside conv(points) + R_{>=0}^n
/// and returns an optimal witness when it does.
///
/// The decision minimizes t subject to: lambda is a convex combination of
/// the points whose value is at most t * target coordinate-wise. The
/// optimum is attained at a basic solution where some k coefficients and
/// k tight coordinates (k <= n) determine lambda and t by a square linear
/// system, so enumerating those systems and taking the best feasible
/// solution is exact. The target is interior precisely when t < 1.
pub fn interior_test(points: &[Vec<u64>], target: &[Rat]) -> Option<InteriorWitness> {
    let n = target.len();
    if points.is_empty() || n == 0 {
        return None;
    }
    assert!(points.iter().all(|p| p.len() == n), "point dimension mismatch");
    if target.iter().any(|t| !t.is_positive()) {
        return None;
    }
    let m = points.len();
    let kmax = m.min(n);
    let one = BigRational::one();
    let mut best: Option<(BigRational, Vec<BigRational>)> = None;
    for k in 1..=kmax {
        for basis in combinations(m, k) {
            for tight in combinations(n, k) {
                // Unknowns: lambda over the basis, then t.
                // Rows: sum lambda = 1; for j tight: sum lambda_s s_j = t * target_j.
                let mut mat = vec![vec![BigRational::zero(); k + 1]; k + 1];
                let mut rhs = vec![BigRational::zero(); k + 1];
                for c in 0..k {
                    mat[0][c] = one.clone();
                }
                rhs[0] = one.clone();
                for (row, &j) in tight.iter().enumerate() {
                    for (c, &s) in basis.iter().enumerate() {
                        mat[row + 1][c] = BigRational::from_integer(points[s][j].into());
                    }
                    mat[row + 1][k] = -target[j].inner().clone();
                }
                let Some(sol) = solve_square(mat, rhs) else { continue };
                let (lambda, t) = (&sol[..k], &sol[k]);
                if lambda.iter().any(|l| l.is_negative()) {
                    continue;
                }
                // Global feasibility: every coordinate within t * target.
                let feasible = (0..n).all(|j| {
                    let mut v = BigRational::zero();
                    for (c, &s) in basis.iter().enumerate() {
                        v += &lambda[c] * BigRational::from_integer(points[s][j].into());
                    }
                    v <= t * target[j].inner()
                });
                if !feasible {
                    continue;
                }
                if best.as_ref().map_or(true, |(bt, _)| t < bt) {
                    let mut full = vec![BigRational::zero(); m];
                    for (c, &s) in basis.iter().enumerate() {
                        full[s] = lambda[c].clone();
                    }
                    best = Some((t.clone(), full));
                }
            }
        }
    }
    let (t, lambda) = best?;
    if t >= one {
        return None;
    }
    let combination: Vec<WitnessEntry> = (0..m)
        .filter(|&s| lambda[s].is_positive())
        .map(|s| WitnessEntry { point: points[s].clone(), coefficient: Rat::from(lambda[s].clone()) })
        .collect();
    let combined: Vec<Rat> = (0..n)
        .map(|j| {
            let mut v = BigRational::zero();
            for s in 0..m {
                v += &lambda[s] * BigRational::from_integer(points[s][j].into());
            }
            Rat::from(v)
        })
        .collect();
    Some(InteriorWitness { combination, combined, max_ratio: Rat::from(t) })
}

/// Builds the closed-form interior witness for the all-ones point in a
/// head chart whose lowest head exponent is `e`.
///
/// Requires 1 <= index, index < w0 + w1 and e < d / (w0 + w1 - index).
/// Writing q = w0 + w1 - d/e, the witness takes eps strictly between
/// max(q, index - 1) and index, puts weight (w0 + w1 - eps)/d on the head
/// point (e,0,0,0) and weight (t_i - delta)/d on each cycle vertex, with
/// delta = (index - eps)/3 and t_i the cycle vertex weights.
pub fn explicit_lambda_witness(
    s: &StructuredWeights,
    e: u64,
) -> Result<InteriorWitness, NewtonError> {
    let w = s.weights.weights();
    let head_sum = u128::from(w[0]) + u128::from(w[1]);
    let index = s.index;
    let degree = s.degree;
    let fail = |check: Check| Err(NewtonError::HypothesisFailed { check });

    let c = Check::at_least("index >= 1", Rat::from(index), Rat::one());
    if !c.holds {
        return fail(c);
    }
    let c = Check::less("index < w0 + w1", Rat::from(index), Rat::from(head_sum));
    if !c.holds {
        return fail(c);
    }
    let c = Check::at_least("head exponent >= 1", Rat::from(e), Rat::one());
    if !c.holds {
        return fail(c);
    }
    let gap = Rat::from(head_sum) - Rat::from(index);
    let bound = Rat::from(degree) / gap;
    let c = Check::less("head exponent < d / (w0 + w1 - index)", Rat::from(e), bound);
    if !c.holds {
        return fail(c);
    }

    let d = Rat::from(degree);
    let q = Rat::from(head_sum) - d.clone() / Rat::from(e);
    let lo = q.max(Rat::from(index) - Rat::one());
    let eps = (lo + Rat::from(index)) / Rat::from(2u64);
    let delta = (Rat::from(index) - eps.clone()) / Rat::from(3u64);
    let lambda_head = (Rat::from(head_sum) - eps) / d.clone();
    let t = s.cycle_vertex_weights();
    let [a2, a3, a4] = s.a;
    let points: [[u64; 4]; 4] = [
        [e, 0, 0, 0],
        [0, a2, 0, 1],
        [0, 1, a3, 0],
        [0, 0, 1, a4],
    ];
    let coefficients = [
        lambda_head,
        (Rat::from(t[0]) - delta.clone()) / d.clone(),
        (Rat::from(t[1]) - delta.clone()) / d.clone(),
        (Rat::from(t[2]) - delta) / d,
    ];
    let combination: Vec<WitnessEntry> = points
        .iter()
        .zip(coefficients.iter())
        .map(|(p, c)| WitnessEntry { point: p.to_vec(), coefficient: c.clone() })
        .collect();
    let combined: Vec<Rat> = (0..4)
        .map(|j| {
            combination
                .iter()
                .fold(Rat::zero(), |acc, entry| {
                    acc + entry.coefficient.clone() * Rat::from(entry.point[j])
                })
        })
        .collect();
    let max_ratio = combined.iter().cloned().max().expect("four coordinates");
    let witness = InteriorWitness { combination, combined, max_ratio };
    debug_assert!(witness.dominates(&[Rat::one(), Rat::one(), Rat::one(), Rat::one()]));
    Ok(witness)
}

/// Verdict of the klt certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KltVerdict {
    /// All hypotheses hold and every singular chart has agreeing
    /// interior witnesses.
    #[serde(rename = "klt")]
    Klt,
    /// Some hypothesis failed.
    #[serde(rename = "hypothesis-not-met")]
    HypothesisNotMet,
}

impl std::fmt::Display for KltVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KltVerdict::Klt => write!(f, "klt"),
            KltVerdict::HypothesisNotMet => write!(f, "hypothesis-not-met"),
        }
    }
}

/// Interior witnesses for one singular chart: the closed-form one and the
/// independent linear-program one.
#[derive(Debug, Clone, Serialize)]
pub struct ChartCertificate {
    /// Which chart.
    pub chart: Chart,
    /// The controlling head exponent in this chart.
    pub head_exponent: u64,
    /// The dehomogenized support.
    pub support: AffineSupport,
    /// The closed-form witness.
    pub explicit: InteriorWitness,
    /// The linear-program witness; `None` would mean the routes disagree.
    pub lp: Option<InteriorWitness>,
}

/// A klt certificate for a perturbed family.
#[derive(Debug, Clone, Serialize)]
pub struct KltCertificate {
    /// Named hypothesis checks.
    pub hypotheses: Vec<Check>,
    /// Witnesses per singular chart.
    pub charts: Vec<ChartCertificate>,
    /// The verdict.
    pub verdict: KltVerdict,
}

/// Certifies that the perturbed family is klt by exhibiting interior
/// witnesses at every singular head chart, computed by two independent
/// routes.
pub fn certify_klt(family: &HypersurfaceFamily) -> KltCertificate {
    let s = &family.structure;
    let w = s.weights.weights();
    let head_sum = u128::from(w[0]) + u128::from(w[1]);
    let mut hypotheses = vec![
        Check::at_least("index >= 1", Rat::from(s.index), Rat::one()),
        Check::less("index < w0 + w1", Rat::from(s.index), Rat::from(head_sum)),
    ];
    let gap_positive = Rat::from(s.index) < Rat::from(head_sum);
    let charts_e = chart_exponents(&family.perturbation);
    if gap_positive {
        let bound = Rat::from(s.degree) / (Rat::from(head_sum) - Rat::from(s.index));
        for (chart, e) in &charts_e {
            hypotheses.push(Check::less(
                format!("chart {chart}: head exponent < d / (w0 + w1 - index)"),
                Rat::from(*e),
                bound.clone(),
            ));
        }
    }
    let all_ok = hypotheses.iter().all(|c| c.holds);
    let mut charts = Vec::new();
    if all_ok {
        let target = vec![Rat::one(); 4];
        for (chart, e) in charts_e {
            let support = affine_support(family, chart);
            let explicit = explicit_lambda_witness(s, e)
                .expect("verified hypotheses admit the closed-form witness");
            let points: Vec<Vec<u64>> = support.points.iter().map(|p| p.to_vec()).collect();
            let lp = interior_test(&points, &target);
            debug_assert!(explicit.dominates(&target));
            charts.push(ChartCertificate { chart, head_exponent: e, support, explicit, lp });
        }
    }
    let verdict = if all_ok && !charts.is_empty() && charts.iter().all(|c| c.lp.is_some()) {
        KltVerdict::Klt
    } else {
        KltVerdict::HypothesisNotMet
    };
    KltCertificate { hypotheses, charts, verdict }
}
