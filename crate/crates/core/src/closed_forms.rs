//! Closed-form Gutman indices of the Mycielskian `μ(G)` and of its
//! complement `μ̄(G)`, evaluated verbatim from their printed expressions,
//! together with the per-pair-class sums measured on the constructed graphs.
//!
//! Nothing here corrects a printed expression. The audit places the printed
//! values next to brute force and reports exact differences.
//!
//! Arithmetic is exact: integers are `i128` and half-integer terms go through
//! `Ratio<i128>`. Every expression is at most quartic in `n`, so `i128` cannot
//! overflow for any graph that fits in memory; release builds keep overflow
//! checks enabled regardless.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::formats::write_graph6;
use crate::graph::{Graph, Target};
use crate::laws::{require_base, LawError};
use crate::metrics::{distance_matrix, gutman, index_report, IndexReport, MetricsError};

type Q = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error(transparent)]
    Precondition(#[from] LawError),
    #[error("closed form needs at least 2 vertices, got {0}")]
    TooSmall(i128),
    #[error("{what} evaluated to the non-integer {value}; parameters do not come from a graph")]
    NonIntegral { what: &'static str, value: String },
}

impl From<MetricsError> for ClosedFormError {
    fn from(e: MetricsError) -> Self {
        ClosedFormError::Precondition(e.into())
    }
}

fn integral(value: Q, what: &'static str) -> Result<i128, ClosedFormError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(ClosedFormError::NonIntegral {
            what,
            value: value.to_string(),
        })
    }
}

fn half(x: i128) -> Q {
    Q::new(x, 2)
}

/// The parameter tuple of a base graph consumed by every closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphParameters {
    pub n: i128,
    pub m: i128,
    pub m1: i128,
    pub m2: i128,
    pub dd: i128,
    pub gutman: i128,
    pub wiener: i128,
}

impl From<IndexReport> for GraphParameters {
    fn from(r: IndexReport) -> Self {
        GraphParameters {
            n: r.n.into(),
            m: r.m.into(),
            m1: r.m1.into(),
            m2: r.m2.into(),
            dd: r.dd.into(),
            gutman: r.gutman.into(),
            wiener: r.wiener.into(),
        }
    }
}

impl GraphParameters {
    /// Parameters of a connected graph.
    pub fn of(g: &Graph) -> Result<Self, MetricsError> {
        index_report(g).map(Self::from)
    }
}

/// The six disjoint kinds of vertex pairs in a graph on `V ∪ X ∪ {x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    /// apex with a shadow
    ApexShadow,
    /// apex with an original
    ApexOriginal,
    ShadowShadow,
    OriginalOriginal,
    /// `v_i` with its own shadow `x_i`
    Twin,
    /// `v_i` with `x_j`, `i != j`
    CrossDistinct,
}

impl PairClass {
    /// In case order 1..=6.
    pub const ALL: [PairClass; 6] = [
        PairClass::ApexShadow,
        PairClass::ApexOriginal,
        PairClass::ShadowShadow,
        PairClass::OriginalOriginal,
        PairClass::Twin,
        PairClass::CrossDistinct,
    ];

    /// Zero-based case position.
    pub fn position(self) -> usize {
        self as usize
    }

    /// Class of the unordered pair `{u, v}` of distinct vertex ids in a
    /// `(2n + 1)`-vertex graph labeled originals, shadows, apex.
    pub fn of_pair(n: usize, u: usize, v: usize) -> PairClass {
        let (a, b) = (u.min(v), u.max(v));
        debug_assert!(a != b && b <= 2 * n);
        if b == 2 * n {
            if a >= n {
                PairClass::ApexShadow
            } else {
                PairClass::ApexOriginal
            }
        } else if a >= n {
            PairClass::ShadowShadow
        } else if b < n {
            PairClass::OriginalOriginal
        } else if b - n == a {
            PairClass::Twin
        } else {
            PairClass::CrossDistinct
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case{}", self.position() + 1)
    }
}

/// Gutman-index contributions split by pair class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseBreakdown {
    pub target: Target,
    /// Indexed by [`PairClass::position`].
    pub subtotals: [i128; 6],
    pub total: i128,
}

impl CaseBreakdown {
    pub fn new(target: Target, subtotals: [i128; 6]) -> Self {
        CaseBreakdown {
            target,
            subtotals,
            total: subtotals.iter().sum(),
        }
    }

    pub fn subtotal(&self, class: PairClass) -> i128 {
        self.subtotals[class.position()]
    }
}

/// Sum of `deg(u) + deg(v)` over unordered pairs, next to `(n - 1) * 2m`.
pub fn lemma_degree_sum(g: &Graph) -> Result<(i128, i128), ClosedFormError> {
    let n = g.order();
    if n < 2 {
        return Err(ClosedFormError::TooSmall(n as i128));
    }
    let deg = g.degrees();
    let mut lhs = 0i128;
    for u in 0..n {
        for v in u + 1..n {
            lhs += (deg[u] + deg[v]) as i128;
        }
    }
    let rhs = (n as i128 - 1) * 2 * g.size() as i128;
    Ok((lhs, rhs))
}

/// Sum of `deg(u) * deg(v)` over unordered pairs, next to `2m² - M1/2`.
pub fn lemma_degree_product(g: &Graph) -> Result<(i128, Ratio<i128>), ClosedFormError> {
    let n = g.order();
    if n < 2 {
        return Err(ClosedFormError::TooSmall(n as i128));
    }
    let deg = g.degrees();
    let mut lhs = 0i128;
    for u in 0..n {
        for v in u + 1..n {
            lhs += deg[u] as i128 * deg[v] as i128;
        }
    }
    let m = g.size() as i128;
    let m1: i128 = deg.iter().map(|&d| (d * d) as i128).sum();
    Ok((lhs, Q::from_integer(2 * m * m) - half(m1)))
}

/// The printed closed form for `Gut(μ(G))`, stated for diameter-2 graphs:
/// `6 Gut + 3 M1 + DD + 2(m+n)(2m+n) + n(6m-1) + 6m`.
pub fn thm5_printed(p: &GraphParameters) -> i128 {
    let GraphParameters {
        n,
        m,
        m1,
        dd,
        gutman,
        ..
    } = *p;
    6 * gutman + 3 * m1 + dd + 2 * (m + n) * (2 * m + n) + n * (6 * m - 1) + 6 * m
}

/// The six case values exactly as the `Gut(μ)` derivation prints them.
///
/// The cross-pair case keeps its displayed outer factor: `2 (DD + 2 Gut)`.
pub fn thm5_cases_printed(p: &GraphParameters) -> CaseBreakdown {
    let GraphParameters {
        n,
        m,
        m1,
        dd,
        gutman,
        ..
    } = *p;
    CaseBreakdown::new(
        Target::Mu,
        [
            n * n + 2 * m,
            8 * n * m,
            n * (n - 1) + 4 * (n - 1) * m + 4 * m * m - m1,
            4 * gutman,
            4 * (2 * m + m1),
            2 * (dd + 2 * gutman),
        ],
    )
}

/// The printed closed form for `Gut(μ̄(G))`:
/// `4 M2 - (10n + 5/2) M1 + 8n⁴ - 2n³ + (n² - n)/2 - 4nm(2n² - 2n + 3)
///  + 2m(n + 1) + 26m²`.
pub fn thm6_printed(p: &GraphParameters) -> Result<i128, ClosedFormError> {
    let GraphParameters { n, m, m1, m2, .. } = *p;
    let q = Q::from_integer;
    let value = q(4 * m2) - (q(10 * n) + Q::new(5, 2)) * q(m1)
        + q(8 * n.pow(4) - 2 * n.pow(3))
        + half(n * n - n)
        - q(4 * n * m * (2 * n * n - 2 * n + 3))
        + q(2 * m * (n + 1) + 26 * m * m);
    integral(value, "complement closed form")
}

/// The six case values exactly as the `Gut(μ̄)` derivation prints them.
///
/// Original pairs are the unordered-pair bracket plus the edge bracket.
/// Cross pairs are the ordered-pair bracket plus the edge bracket, whose last
/// term is printed as `4(2m² - M1/2)`.
pub fn thm6_cases_printed(p: &GraphParameters) -> Result<CaseBreakdown, ClosedFormError> {
    let GraphParameters { n, m, m1, m2, .. } = *p;
    if n < 2 {
        return Err(ClosedFormError::TooSmall(n));
    }
    let q = Q::from_integer;
    let pairs_n = half(n * (n - 1));
    let degree_products = q(2 * m * m) - half(m1);

    let apex_shadow = q(2 * n * ((2 * n - 1) * n - 2 * m));
    let apex_original = q(2 * n * (n * n - 2 * m));
    let shadow_shadow =
        pairs_n * q((2 * n - 1).pow(2)) - q((2 * n - 1) * (n - 1) * 2 * m) + degree_products;
    let original_original = q(4 * n * n) * pairs_n - q(4 * n * (n - 1) * 2 * m)
        + q(4) * degree_products
        + q(4 * n * n * m - 4 * n * m1 + 4 * m2);
    let twin = q(2 * n * n * (2 * n - 1) - (6 * n - 2) * 2 * m + 2 * m1);
    let cross = q(2 * n * (2 * n - 1) * n * (n - 1)
        - 2 * n * (n - 1) * 2 * m
        - 2 * (2 * n - 1) * (n - 1) * 2 * m)
        + q(4) * degree_products
        + q(2 * n * (2 * n - 1) * 2 * m - 2 * n * m1 - 2 * (2 * n - 1) * m1)
        + q(4) * degree_products;

    let what = "complement case expression";
    Ok(CaseBreakdown::new(
        Target::MuBar,
        [
            integral(apex_shadow, what)?,
            integral(apex_original, what)?,
            integral(shadow_shadow, what)?,
            integral(original_original, what)?,
            integral(twin, what)?,
            integral(cross, what)?,
        ],
    ))
}

/// Per-class sums of `d(u,v) deg(u) deg(v)` measured on the constructed
/// target graph.
pub fn direct_class_sums(g: &Graph, target: Target) -> Result<CaseBreakdown, ClosedFormError> {
    require_base(g)?;
    let n = g.order();
    let derived = target.build(g);
    let dm = distance_matrix(&derived).map_err(|e| match e {
        MetricsError::Disconnected { .. } => LawError::TargetDisconnected(target),
        other => other.into(),
    })?;
    let deg = derived.degrees();
    let mut subtotals = [0i128; 6];
    for (u, v, d) in dm.pairs() {
        let class = PairClass::of_pair(n, u, v);
        subtotals[class.position()] += i128::from(d) * deg[u] as i128 * deg[v] as i128;
    }
    Ok(CaseBreakdown::new(target, subtotals))
}

/// One graph's confrontation of printed formulas with brute force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    /// graph6 encoding of the base graph.
    pub graph_id: String,
    pub params: GraphParameters,
    pub target: Target,
    /// Gutman index of the constructed target graph.
    pub brute_force: i128,
    pub direct_cases: CaseBreakdown,
    pub printed_cases: CaseBreakdown,
    pub printed_theorem: i128,
    /// `brute_force - printed_theorem`.
    pub delta: i128,
    /// `direct - printed` per class.
    pub case_deltas: [i128; 6],
    /// For `mu`, whether the base graph has diameter exactly 2. Always true
    /// for `mu_bar`, whose closed form has no diameter hypothesis.
    pub diameter_ok: bool,
    pub base_diameter: u64,
}

pub fn audit(g: &Graph, target: Target) -> Result<AuditRecord, ClosedFormError> {
    require_base(g)?;
    let report = index_report(g)?;
    let params = GraphParameters::from(report);

    let derived = target.build(g);
    let derived_dm = distance_matrix(&derived).map_err(|e| match e {
        MetricsError::Disconnected { .. } => LawError::TargetDisconnected(target),
        other => other.into(),
    })?;
    let brute_force = i128::from(gutman(&derived, &derived_dm)?);
    let direct_cases = direct_class_sums(g, target)?;

    let (printed_cases, printed_theorem) = match target {
        Target::Mu => (thm5_cases_printed(&params), thm5_printed(&params)),
        Target::MuBar => (thm6_cases_printed(&params)?, thm6_printed(&params)?),
    };
    let case_deltas =
        std::array::from_fn(|i| direct_cases.subtotals[i] - printed_cases.subtotals[i]);

    Ok(AuditRecord {
        graph_id: write_graph6(g),
        params,
        target,
        brute_force,
        direct_cases,
        printed_cases,
        printed_theorem,
        delta: brute_force - printed_theorem,
        case_deltas,
        diameter_ok: match target {
            Target::Mu => report.diameter == 2,
            Target::MuBar => true,
        },
        base_diameter: report.diameter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn fam(f: Family, n: usize) -> Graph {
        generate(f, n).unwrap()
    }

    fn params(n: i128, m: i128, m1: i128, m2: i128, dd: i128, gutman: i128) -> GraphParameters {
        GraphParameters {
            n,
            m,
            m1,
            m2,
            dd,
            gutman,
            wiener: 0,
        }
    }

    #[test]
    fn lemmas_on_small_graphs() {
        assert_eq!(lemma_degree_sum(&fam(Family::Path, 3)).unwrap(), (8, 8));
        assert_eq!(
            lemma_degree_sum(&fam(Family::Complete, 4)).unwrap(),
            (36, 36)
        );
        assert_eq!(lemma_degree_sum(&Graph::empty(3)).unwrap(), (0, 0));

        let int = Q::from_integer;
        assert_eq!(
            lemma_degree_product(&fam(Family::Path, 3)).unwrap(),
            (5, int(5))
        );
        assert_eq!(
            lemma_degree_product(&fam(Family::Complete, 4)).unwrap(),
            (54, int(54))
        );
        assert_eq!(
            lemma_degree_product(&fam(Family::Complete, 2)).unwrap(),
            (1, int(1))
        );
        assert!(lemma_degree_sum(&Graph::empty(1)).is_err());
    }

    #[test]
    fn thm5_printed_values() {
        assert_eq!(thm5_printed(&params(3, 2, 6, 4, 10, 6)), 179);
        assert_eq!(thm5_printed(&params(4, 4, 16, 16, 32, 32)), 580);
        // 90 + 36 + 24 + 140 + 68 + 18
        assert_eq!(thm5_printed(&params(4, 3, 12, 9, 24, 15)), 376);
    }

    #[test]
    fn thm5_printed_cases() {
        let p3 = thm5_cases_printed(&params(3, 2, 6, 4, 10, 6));
        assert_eq!(p3.subtotals, [13, 48, 32, 24, 40, 44]);
        assert_eq!(p3.total, 201);
        let c4 = thm5_cases_printed(&params(4, 4, 16, 16, 32, 32));
        assert_eq!(c4.subtotals, [24, 128, 108, 128, 96, 192]);
        // K2 has diameter 1; the evaluator still answers
        let k2 = thm5_cases_printed(&params(2, 1, 2, 1, 2, 1));
        assert_eq!(k2.subtotal(PairClass::ApexShadow), 6);
    }

    #[test]
    fn thm6_printed_values() {
        assert_eq!(thm6_printed(&params(2, 1, 2, 1, 0, 0)), Ok(48));
        assert_eq!(thm6_printed(&params(3, 2, 6, 4, 0, 0)), Ok(178));
        assert_eq!(thm6_printed(&params(1, 0, 0, 0, 0, 0)), Ok(6));
        // odd M1 cannot come from a graph
        assert!(matches!(
            thm6_printed(&params(2, 1, 1, 1, 0, 0)),
            Err(ClosedFormError::NonIntegral { .. })
        ));
    }

    #[test]
    fn thm6_printed_cases() {
        let k2 = thm6_cases_printed(&params(2, 1, 2, 1, 0, 0)).unwrap();
        assert_eq!(k2.subtotals, [16, 8, 4, 8, 8, 16]);
        let p3 = thm6_cases_printed(&params(3, 2, 6, 4, 0, 0)).unwrap();
        assert_eq!(p3.subtotals, [66, 30, 40, 48, 38, 116]);
        let star = thm6_cases_printed(&params(4, 3, 12, 9, 0, 0)).unwrap();
        assert_eq!(star.subtotals, [176, 80, 180, 180, 116, 444]);
        assert_eq!(
            thm6_cases_printed(&params(1, 0, 0, 0, 0, 0)),
            Err(ClosedFormError::TooSmall(1))
        );
    }

    #[test]
    fn pair_classes_partition() {
        let n = 4;
        let mut counts = [0usize; 6];
        for u in 0..2 * n + 1 {
            for v in u + 1..2 * n + 1 {
                counts[PairClass::of_pair(n, u, v).position()] += 1;
            }
        }
        assert_eq!(
            counts,
            [n, n, n * (n - 1) / 2, n * (n - 1) / 2, n, n * (n - 1)]
        );
    }

    #[test]
    fn direct_sums() {
        let p3 = fam(Family::Path, 3);
        let mu = direct_class_sums(&p3, Target::Mu).unwrap();
        assert_eq!(mu.subtotals, [21, 48, 32, 24, 40, 44]);
        assert_eq!(mu.total, 209);
        let bar = direct_class_sums(&p3, Target::MuBar).unwrap();
        assert_eq!(bar.subtotals, [66, 30, 40, 48, 38, 112]);
        assert_eq!(bar.total, 334);
        let k2 = direct_class_sums(&fam(Family::Complete, 2), Target::MuBar).unwrap();
        assert_eq!(k2.subtotals, [16, 8, 4, 8, 8, 16]);
        assert_eq!(k2.total, 60);
    }

    #[test]
    fn audits() {
        let a = audit(&fam(Family::Path, 3), Target::Mu).unwrap();
        assert_eq!((a.brute_force, a.printed_theorem, a.delta), (209, 179, 30));
        assert_eq!(a.case_deltas, [8, 0, 0, 0, 0, 0]);
        assert!(a.diameter_ok);
        assert_eq!(a.graph_id, "Bg");

        let a = audit(&fam(Family::Cycle, 4), Target::Mu).unwrap();
        assert_eq!((a.brute_force, a.printed_theorem), (700, 580));

        let a = audit(&fam(Family::Complete, 2), Target::MuBar).unwrap();
        assert_eq!((a.brute_force, a.printed_theorem), (60, 48));
        assert_eq!(a.printed_cases.total, 60);
        assert_eq!(a.case_deltas, [0; 6]);

        let a = audit(&fam(Family::Path, 4), Target::Mu).unwrap();
        assert!(!a.diameter_ok);
        assert_eq!(a.base_diameter, 3);
    }

    #[test]
    fn audit_preconditions() {
        assert!(matches!(
            audit(&Graph::empty(1), Target::Mu),
            Err(ClosedFormError::Precondition(LawError::TooSmall(1)))
        ));
        assert!(matches!(
            direct_class_sums(&Graph::empty(3), Target::Mu),
            Err(ClosedFormError::Precondition(LawError::Disconnected))
        ));
    }
}
