//! Construction of distributed Reed-Solomon codes.
//!
//! Given an admissible rate vector on a network of up to three sources, this
//! module classifies the instance into one of four cases, picks a column
//! order that groups relays by their exact adjacency set, and builds a
//! transformation matrix T row by row from vanishing polynomials so that
//! G = T * G_RS respects the adjacency mask: a source's rows are zero at
//! every relay it does not feed. The resulting G spans a subcode of the
//! constituent Reed-Solomon code with full rank equal to the total rate, so
//! relays encode locally while the destination sees ordinary RS codewords.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::rs::RSCode;
use crate::sman::{SmanTopology, SourceSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseLabel {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::Case1 => "Case1",
            CaseLabel::Case2 => "Case2",
            CaseLabel::Case3 => "Case3",
            CaseLabel::Case4 => "Case4",
        };
        f.write_str(s)
    }
}

/// Source permutations in lexicographic order; classification tries them in
/// this order so results are reproducible.
const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Masks over virtual (permuted) sources.
const V1: u8 = 0b001;
const V2: u8 = 0b010;
const V3: u8 = 0b100;
const V12: u8 = 0b011;
const V13: u8 = 0b101;
const V23: u8 = 0b110;
const V123: u8 = 0b111;

/// Block layouts per case: the order in which adjacency groups are laid out
/// as canonical columns. Cases 1 and 2 put the blocks shared with source 3
/// right after N_{1,2} so overflow pivots land on source-3-adjacent columns;
/// case 3 prefers pairwise-shared blocks over the triple-shared one; case 4
/// groups the exclusive blocks first.
fn block_order(case: CaseLabel) -> [u8; 7] {
    match case {
        CaseLabel::Case1 | CaseLabel::Case2 => [V1, V2, V12, V23, V123, V3, V13],
        CaseLabel::Case3 => [V1, V13, V2, V12, V23, V3, V123],
        CaseLabel::Case4 => [V1, V2, V3, V12, V13, V23, V123],
    }
}

/// How a classified instance will be laid out: the case, the source
/// relabeling, and the canonical column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasePlan {
    pub case: CaseLabel,
    /// Virtual source v is actual source `source_perm[v]` (0-based).
    pub source_perm: [usize; 3],
    /// Blocks in canonical order: virtual source subset and its relay ids
    /// (ascending). Concatenating the relay lists gives `column_order`.
    pub blocks: Vec<(SourceSet, Vec<usize>)>,
    /// Canonical position p (1-based; index p-1) holds this relay id.
    pub column_order: Vec<usize>,
}

/// X-set record for cases 2 and 3: canonical positions in shared blocks that
/// earlier sources claim as pivots and later sources must therefore zero out.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct XSets {
    pub x1_13: Vec<usize>,
    pub x2_23: Vec<usize>,
    pub x1_123: Vec<usize>,
    pub x2_123: Vec<usize>,
}

/// Derived quantities of a case-4 build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFourPlan {
    /// Total size of the exclusive blocks N_1, N_2, N_3.
    pub nbar: usize,
    /// Excess rate per source: r_i - n_i.
    pub rprime: Vec<usize>,
    /// Sum of the excess rates.
    pub total_excess: usize,
    /// Degree of the shifted root polynomial, k - nbar - 1.
    pub t: usize,
    pub c_roots: Vec<usize>,
    pub p_roots: Vec<usize>,
    /// Argument-scaling exponents per source; pairwise disjoint.
    pub jsets: Vec<Vec<usize>>,
}

/// Build-time byproducts kept for inspection; absent on bundles loaded from
/// disk.
#[derive(Debug, Clone)]
pub struct BuildDetails {
    pub plan: CasePlan,
    /// Canonical pivot position per row; `None` for case-4 excess rows.
    pub row_pivot: Vec<Option<usize>>,
    pub xsets: Option<XSets>,
    pub case4: Option<CaseFourPlan>,
}

/// A constructed distributed Reed-Solomon code: the transformation T, the
/// masked generator G = T * G_RS in canonical column order, and the
/// bookkeeping to route per-source messages through it.
#[derive(Debug, Clone)]
pub struct Construction {
    code: RSCode,
    topology: SmanTopology,
    case: CaseLabel,
    column_order: Vec<usize>,
    t_mat: Matrix,
    g_mat: Matrix,
    /// Actual (0-based) source owning each row.
    row_owner: Vec<usize>,
    details: Option<BuildDetails>,
}

/// One entry of a verification report.
#[derive(Debug, Clone)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&VerifyCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for check in &self.checks {
            writeln!(
                f,
                "{:<12} {:<4} {}",
                check.name,
                if check.pass { "pass" } else { "FAIL" },
                check.detail
            )?;
        }
        Ok(())
    }
}

/// Geometry of a planned layout: canonical position ranges per block and the
/// permuted topology the row constructions consult.
struct Layout {
    vtop: SmanTopology,
    plan: CasePlan,
    /// mask -> (first canonical position, length); positions are 1-based.
    spans: Vec<(u8, usize, usize)>,
}

impl Layout {
    fn new(padded: &SmanTopology, case: CaseLabel, perm: [usize; 3]) -> Result<Layout> {
        let vtop = padded.permute_sources(&perm)?;
        let parts = vtop.partition();
        let mut blocks = Vec::with_capacity(7);
        let mut spans = Vec::with_capacity(7);
        let mut column_order = Vec::with_capacity(vtop.relays());
        let mut next = 1usize;
        for mask in block_order(case) {
            let set = SourceSet::from_sources((0..3).filter(|s| mask >> s & 1 == 1));
            let relays = parts.block(set).to_vec();
            spans.push((mask, next, relays.len()));
            next += relays.len();
            column_order.extend(relays.iter().copied());
            blocks.push((set, relays));
        }
        let plan = CasePlan {
            case,
            source_perm: perm,
            blocks,
            column_order,
        };
        Ok(Layout { vtop, plan, spans })
    }

    fn n(&self, mask: u8) -> usize {
        self.spans.iter().find(|(m, _, _)| *m == mask).unwrap().2
    }

    /// Ascending canonical positions of a block.
    fn positions(&self, mask: u8) -> Vec<usize> {
        let &(_, start, len) = self.spans.iter().find(|(m, _, _)| *m == mask).unwrap();
        (start..start + len).collect()
    }

    fn relay_at(&self, pos: usize) -> usize {
        self.plan.column_order[pos - 1]
    }

    /// Canonical positions not adjacent to virtual source v.
    fn z_positions(&self, v: usize) -> Vec<usize> {
        (1..=self.vtop.relays())
            .filter(|&p| !self.vtop.is_adjacent(v, self.relay_at(p)))
            .collect()
    }

    fn rate(&self, v: usize) -> usize {
        self.vtop.rate(v)
    }
}

fn take_pivots(pool: &[usize], count: usize) -> Result<Vec<usize>> {
    if pool.len() < count {
        return Err(Error::Invalid(format!(
            "pivot pool has {} positions but {} are needed",
            pool.len(),
            count
        )));
    }
    Ok(pool[..count].to_vec())
}

/// Classify an admissible instance. All six source permutations are tried in
/// lexicographic order for case 1, then case 2, then case 3; anything left
/// must satisfy the case-4 conditions (r_i > n_i and r_i <= n_i + n_{i,j}
/// for all pairs), which is checked rather than assumed.
pub fn classify(top: &SmanTopology) -> Result<CasePlan> {
    let region = top.in_capacity_region();
    if !region.ok {
        return Err(Error::NotInCapacityRegion(region.violated));
    }
    let padded = top.padded3();
    for case in [CaseLabel::Case1, CaseLabel::Case2, CaseLabel::Case3] {
        for perm in PERMS {
            let vtop = padded.permute_sources(&perm)?;
            let parts = vtop.partition();
            let r1 = vtop.rate(0);
            let r2 = vtop.rate(1);
            let n1 = parts.block_size(SourceSet::single(0));
            let n2 = parts.block_size(SourceSet::single(1));
            let n12 = parts.block_size(SourceSet::from_sources([0, 1]));
            let hit = match case {
                CaseLabel::Case1 => r1 <= n1 && r2 <= n2 + n12,
                CaseLabel::Case2 => r1 <= n1 && r2 > n2 + n12,
                CaseLabel::Case3 => r1 > n1 && r2 > n2 + n12,
                CaseLabel::Case4 => unreachable!(),
            };
            if hit {
                return Ok(Layout::new(&padded, case, perm)?.plan);
            }
        }
    }
    let parts = padded.partition();
    for i in 0..3 {
        let ni = parts.block_size(SourceSet::single(i));
        if padded.rate(i) <= ni {
            return Err(Error::CaseClassificationFailure);
        }
        for j in 0..3 {
            if i == j {
                continue;
            }
            let nij = parts.block_size(SourceSet::from_sources([i, j]));
            if padded.rate(i) > ni + nij {
                return Err(Error::CaseClassificationFailure);
            }
        }
    }
    Ok(Layout::new(&padded, CaseLabel::Case4, [0, 1, 2])?.plan)
}

/// Cases 1-3: every row is a vanishing polynomial over the owner's forbidden
/// positions plus the sibling pivots, normalized to 1 at its own pivot, so G
/// carries a unit diagonal on the pivot columns.
pub fn build_case123(
    top: &SmanTopology,
    spec: &FieldSpec,
    plan: &CasePlan,
) -> Result<Construction> {
    let padded = top.padded3();
    let layout = Layout::new(&padded, plan.case, plan.source_perm)?;
    debug_assert_eq!(&layout.plan, plan);
    let code = RSCode::new(spec.clone(), top.relays(), top.z())?;
    let k = code.k();

    let n1 = layout.n(V1);
    let n2 = layout.n(V2);
    let n12 = layout.n(V12);
    let r: [usize; 3] = [layout.rate(0), layout.rate(1), layout.rate(2)];

    let mut pivots: [Vec<usize>; 3] = Default::default();
    let mut extras: [Vec<usize>; 3] = Default::default();
    let mut xsets = None;

    match plan.case {
        CaseLabel::Case1 => {
            pivots[0] = (1..=r[0]).collect();
            pivots[1] = (n1 + 1..=n1 + r[1]).collect();
            let base = n1 + n2 + n12;
            pivots[2] = (base + 1..=base + r[2]).collect();
        }
        CaseLabel::Case2 => {
            pivots[0] = (1..=r[0]).collect();
            pivots[1] = (n1 + 1..=n1 + r[1]).collect();
            let x2 = r[1] - (n2 + n12);
            let base = n1 + n2 + n12;
            let xset: Vec<usize> = (base + 1..=base + x2).collect();
            pivots[2] = (base + x2 + 1..=base + x2 + r[2]).collect();
            extras[2] = xset.clone();
            let n23 = layout.positions(V23);
            let n123 = layout.positions(V123);
            xsets = Some(XSets {
                x2_23: xset.iter().copied().filter(|p| n23.contains(p)).collect(),
                x2_123: xset.iter().copied().filter(|p| n123.contains(p)).collect(),
                ..Default::default()
            });
        }
        CaseLabel::Case3 => {
            // Source 1 draws pivots from its adjacent blocks minus N_{1,2},
            // exhausting N_{1,3} before N_{1,2,3}.
            let pool1: Vec<usize> = [V1, V13, V123]
                .iter()
                .flat_map(|&m| layout.positions(m))
                .collect();
            pivots[0] = take_pivots(&pool1, r[0])?;
            let in_block = |pivs: &[usize], mask: u8| -> Vec<usize> {
                let block = layout.positions(mask);
                pivs.iter().copied().filter(|p| block.contains(p)).collect()
            };
            let x1_13 = in_block(&pivots[0], V13);
            let x1_123 = in_block(&pivots[0], V123);

            let pool2: Vec<usize> = [V2, V12, V23, V123]
                .iter()
                .flat_map(|&m| layout.positions(m))
                .filter(|p| !x1_123.contains(p))
                .collect();
            pivots[1] = take_pivots(&pool2, r[1])?;
            let x2_23 = in_block(&pivots[1], V23);
            let x2_123 = in_block(&pivots[1], V123);
            extras[1] = x1_123.clone();

            let mut claimed: Vec<usize> = x1_13
                .iter()
                .chain(&x2_23)
                .chain(&x1_123)
                .chain(&x2_123)
                .copied()
                .collect();
            claimed.sort_unstable();
            let pool3: Vec<usize> = [V13, V23, V3, V123]
                .iter()
                .flat_map(|&m| layout.positions(m))
                .filter(|p| !claimed.contains(p))
                .collect();
            pivots[2] = take_pivots(&pool3, r[2])?;
            extras[2] = claimed;
            xsets = Some(XSets {
                x1_13,
                x2_23,
                x1_123,
                x2_123,
            });
        }
        CaseLabel::Case4 => {
            return Err(Error::Invalid(
                "build_case123 called with a case-4 plan".into(),
            ))
        }
    }

    let total: usize = r.iter().sum();
    let mut t_mat = Matrix::zeros(total, k);
    let mut row_owner = Vec::with_capacity(total);
    let mut row_pivot = Vec::with_capacity(total);
    let mut row = 0;
    for v in 0..3 {
        let zset = layout.z_positions(v);
        for &pivot in &pivots[v] {
            debug_assert!(layout.vtop.is_adjacent(v, layout.relay_at(pivot)));
            let mut roots: BTreeSet<usize> = zset.iter().copied().collect();
            roots.extend(extras[v].iter().copied());
            roots.extend(pivots[v].iter().copied().filter(|&p| p != pivot));
            if roots.len() > k - 1 {
                return Err(Error::DegreeBoundViolation {
                    owner: plan.source_perm[v] + 1,
                    roots: roots.len(),
                    bound: k - 1,
                });
            }
            let poly = Polynomial::vanishing(roots, spec).normalize_at(pivot, spec)?;
            for (col, &coef) in poly.coeff_vector(k)?.iter().enumerate() {
                t_mat.set(row, col, coef);
            }
            row_owner.push(plan.source_perm[v]);
            row_pivot.push(Some(pivot));
            row += 1;
        }
    }
    debug_assert_eq!(row, total);

    finish(top, code, plan.clone(), t_mat, row_owner, row_pivot, xsets, None)
}

/// Case 4: identity rows pin the exclusive blocks, and the excess rows are
/// coefficient vectors of c(x) p(a^j x), where c vanishes on all exclusive
/// positions and the argument scaling slides p's root window over whichever
/// shared block the owning source must zero out.
pub fn build_case4(top: &SmanTopology, spec: &FieldSpec, plan: &CasePlan) -> Result<Construction> {
    if plan.case != CaseLabel::Case4 {
        return Err(Error::Invalid("build_case4 called with a non-case-4 plan".into()));
    }
    let padded = top.padded3();
    let layout = Layout::new(&padded, plan.case, plan.source_perm)?;
    debug_assert_eq!(&layout.plan, plan);
    let code = RSCode::new(spec.clone(), top.relays(), top.z())?;
    let k = code.k();

    let n: [usize; 3] = [layout.n(V1), layout.n(V2), layout.n(V3)];
    let n12 = layout.n(V12);
    let n13 = layout.n(V13);
    let r: [usize; 3] = [layout.rate(0), layout.rate(1), layout.rate(2)];
    let nbar: usize = n.iter().sum();
    let rprime: Vec<usize> = (0..3).map(|i| r[i] - n[i]).collect();
    let total_excess: usize = rprime.iter().sum();
    let total = nbar + total_excess;

    let Some(t_deg) = (k - 1).checked_sub(nbar) else {
        return Err(Error::Invalid(format!(
            "exclusive blocks occupy {nbar} columns, leaving no room in dimension k = {k}"
        )));
    };
    let c_roots: Vec<usize> = (1..=nbar).collect();
    let p_roots: Vec<usize> = (n12 + n13 + nbar + 1..=n12 + n13 + k - 1).collect();
    debug_assert_eq!(p_roots.len(), t_deg);
    let jsets: Vec<Vec<usize>> = vec![
        (0..rprime[0]).collect(),
        (n13..n13 + rprime[1]).collect(),
        (n13 + n12..n13 + n12 + rprime[2]).collect(),
    ];
    for a in 0..3 {
        for b in a + 1..3 {
            if jsets[a].iter().any(|j| jsets[b].contains(j)) {
                return Err(Error::Invalid(format!(
                    "shift sets for sources {} and {} overlap: {:?} vs {:?}",
                    a + 1,
                    b + 1,
                    jsets[a],
                    jsets[b]
                )));
            }
        }
    }

    let c_poly = Polynomial::vanishing(c_roots.iter().copied(), spec);
    let p_poly = Polynomial::vanishing(p_roots.iter().copied(), spec);

    let mut t_mat = Matrix::zeros(total, k);
    let mut row_owner = Vec::with_capacity(total);
    let mut row_pivot = Vec::with_capacity(total);
    let mut row = 0;

    // Identity block: one normalized vanishing row per exclusive position.
    for v in 0..3 {
        let zset = layout.z_positions(v);
        let own_positions = layout.positions(V1 << v);
        for &pivot in &own_positions {
            let mut roots: BTreeSet<usize> = zset.iter().copied().collect();
            roots.extend(own_positions.iter().copied().filter(|&p| p != pivot));
            if roots.len() > k - 1 {
                return Err(Error::DegreeBoundViolation {
                    owner: plan.source_perm[v] + 1,
                    roots: roots.len(),
                    bound: k - 1,
                });
            }
            let poly = Polynomial::vanishing(roots, spec).normalize_at(pivot, spec)?;
            for (col, &coef) in poly.coeff_vector(k)?.iter().enumerate() {
                t_mat.set(row, col, coef);
            }
            row_owner.push(plan.source_perm[v]);
            row_pivot.push(Some(pivot));
            row += 1;
        }
    }
    // Excess block: the shifted products all have degree exactly k - 1.
    for (v, jset) in jsets.iter().enumerate() {
        for &j in jset {
            let shifted = p_poly.scale_arg(spec.element_from_power(j), spec)?;
            let v_poly = c_poly.mul(&shifted, spec);
            debug_assert_eq!(v_poly.degree(), Some(k - 1));
            for (col, &coef) in v_poly.coeff_vector(k)?.iter().enumerate() {
                t_mat.set(row, col, coef);
            }
            row_owner.push(plan.source_perm[v]);
            row_pivot.push(None);
            row += 1;
        }
    }
    debug_assert_eq!(row, total);

    let case4 = CaseFourPlan {
        nbar,
        rprime,
        total_excess,
        t: t_deg,
        c_roots,
        p_roots,
        jsets,
    };
    finish(top, code, plan.clone(), t_mat, row_owner, row_pivot, None, Some(case4))
}

/// Assemble G, enforce the mask and rank requirements, and wrap everything
/// up. The mask is checked against the original topology through the column
/// order, so a wrap-around alias that lands a stray nonzero where a zero is
/// required surfaces here instead of producing a silently broken code.
#[allow(clippy::too_many_arguments)]
fn finish(
    top: &SmanTopology,
    code: RSCode,
    plan: CasePlan,
    t_mat: Matrix,
    row_owner: Vec<usize>,
    row_pivot: Vec<Option<usize>>,
    xsets: Option<XSets>,
    case4: Option<CaseFourPlan>,
) -> Result<Construction> {
    let g_mat = t_mat.mul(&code.generator_matrix(), code.spec())?;
    for (row, &owner) in row_owner.iter().enumerate() {
        for pos in 1..=top.relays() {
            let relay = plan.column_order[pos - 1];
            if !top.is_adjacent(owner, relay) && !g_mat.get(row, pos - 1).is_zero() {
                return Err(Error::MaskViolation { row: row + 1, col: pos });
            }
        }
    }
    let total = row_owner.len();
    let rank = g_mat.rank(code.spec());
    if rank != total {
        return Err(Error::RankDeficient {
            expected: total,
            found: rank,
        });
    }
    Ok(Construction {
        code,
        topology: top.clone(),
        case: plan.case,
        column_order: plan.column_order.clone(),
        t_mat,
        g_mat,
        row_owner,
        details: Some(BuildDetails {
            plan,
            row_pivot,
            xsets,
            case4,
        }),
    })
}

/// Classify, build, and verify in one step, failing loudly if any
/// verification check does not hold.
pub fn build(top: &SmanTopology, spec: &FieldSpec) -> Result<Construction> {
    let plan = classify(top)?;
    let cons = match plan.case {
        CaseLabel::Case4 => build_case4(top, spec, &plan)?,
        _ => build_case123(top, spec, &plan)?,
    };
    let report = cons.verify();
    if !report.passed() {
        let summary = report
            .failures()
            .iter()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::VerifyFailed(summary));
    }
    Ok(cons)
}

impl Construction {
    pub fn code(&self) -> &RSCode {
        &self.code
    }

    pub fn spec(&self) -> &FieldSpec {
        self.code.spec()
    }

    pub fn topology(&self) -> &SmanTopology {
        &self.topology
    }

    pub fn case(&self) -> CaseLabel {
        self.case
    }

    pub fn column_order(&self) -> &[usize] {
        &self.column_order
    }

    /// Canonical position (1-based) of a physical relay id.
    pub fn position_of_relay(&self, relay: usize) -> Option<usize> {
        self.column_order.iter().position(|&r| r == relay).map(|i| i + 1)
    }

    pub fn t(&self) -> &Matrix {
        &self.t_mat
    }

    pub fn g(&self) -> &Matrix {
        &self.g_mat
    }

    /// Actual (0-based) source owning each row of T and G.
    pub fn row_owner(&self) -> &[usize] {
        &self.row_owner
    }

    /// Row indices owned by a source, in row order.
    pub fn rows_of_source(&self, source: usize) -> Vec<usize> {
        self.row_owner
            .iter()
            .enumerate()
            .filter(|(_, &o)| o == source)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn total_rate(&self) -> usize {
        self.row_owner.len()
    }

    pub fn details(&self) -> Option<&BuildDetails> {
        self.details.as_ref()
    }

    /// Structured verification: the subcode identity, the adjacency mask,
    /// the rank, the interpolated degree of every row (an independent route
    /// through Lagrange interpolation rather than T), and the row weights.
    pub fn verify(&self) -> VerifyReport {
        let spec = self.spec();
        let mut checks = Vec::new();

        let subcode = match self.t_mat.mul(&self.code.generator_matrix(), spec) {
            Ok(prod) => prod == self.g_mat,
            Err(_) => false,
        };
        checks.push(VerifyCheck {
            name: "subcode",
            pass: subcode,
            detail: "G == T * G_RS".into(),
        });

        let mut mask_fail = None;
        for (row, &owner) in self.row_owner.iter().enumerate() {
            for pos in 1..=self.topology.relays() {
                let relay = self.column_order[pos - 1];
                if !self.topology.is_adjacent(owner, relay)
                    && !self.g_mat.get(row, pos - 1).is_zero()
                {
                    mask_fail = Some((row + 1, pos));
                }
            }
        }
        checks.push(VerifyCheck {
            name: "mask",
            pass: mask_fail.is_none(),
            detail: match mask_fail {
                None => "required zeros hold".into(),
                Some((row, pos)) => format!("nonzero at masked row {row}, column {pos}"),
            },
        });

        let rank = self.g_mat.rank(spec);
        let t_rank = self.t_mat.rank(spec);
        checks.push(VerifyCheck {
            name: "rank",
            pass: rank == self.total_rate() && t_rank == self.total_rate(),
            detail: format!("rank(G) = {rank}, rank(T) = {t_rank}, total rate = {}", self.total_rate()),
        });

        let mut degree_ok = true;
        for row in 0..self.g_mat.rows() {
            match Polynomial::interpolate(self.code.eval_points(), self.g_mat.row(row), spec) {
                Ok(p) => {
                    if p.degree().is_some_and(|d| d >= self.code.k()) {
                        degree_ok = false;
                    }
                }
                Err(_) => degree_ok = false,
            }
        }
        checks.push(VerifyCheck {
            name: "row-degree",
            pass: degree_ok,
            detail: format!("interpolated degree < k = {}", self.code.k()),
        });

        let min_weight = (0..self.g_mat.rows())
            .map(|row| {
                self.g_mat
                    .row(row)
                    .iter()
                    .filter(|e| !e.is_zero())
                    .count()
            })
            .min();
        let needed = self.code.distance();
        let weight_ok = min_weight.is_none_or(|w| w >= needed);
        checks.push(VerifyCheck {
            name: "row-weight",
            pass: weight_ok,
            detail: match min_weight {
                Some(w) => format!("minimum row weight {w}, need >= {needed}"),
                None => "no rows".into(),
            },
        });

        VerifyReport { checks }
    }
}

/// On-disk form of a construction.
#[derive(Debug, Serialize, Deserialize)]
struct CodeBundle {
    field: crate::gf::FieldDescriptor,
    #[serde(rename = "N")]
    n: usize,
    k: usize,
    z: usize,
    case: CaseLabel,
    column_order: Vec<usize>,
    #[serde(rename = "T")]
    t: Vec<Vec<u16>>,
    #[serde(rename = "G")]
    g: Vec<Vec<u16>>,
    /// 1-based source id per row.
    row_owner: Vec<usize>,
    adjacency: Vec<Vec<u8>>,
}

impl Construction {
    pub fn to_json(&self) -> String {
        let to_ints =
            |m: &Matrix| m.to_row_vecs().iter().map(|r| r.iter().map(|e| e.value()).collect()).collect();
        let bundle = CodeBundle {
            field: self.spec().clone().into(),
            n: self.code.n(),
            k: self.code.k(),
            z: self.code.z(),
            case: self.case,
            column_order: self.column_order.clone(),
            t: to_ints(&self.t_mat),
            g: to_ints(&self.g_mat),
            row_owner: self.row_owner.iter().map(|&o| o + 1).collect(),
            adjacency: self.topology.adjacency_rows(),
        };
        serde_json::to_string_pretty(&bundle).expect("bundle serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Construction> {
        let bundle: CodeBundle =
            serde_json::from_str(json).map_err(|e| Error::Parse(format!("bundle JSON: {e}")))?;
        let spec = FieldSpec::try_from(bundle.field)?;
        let code = RSCode::new(spec.clone(), bundle.n, bundle.z)?;
        if code.k() != bundle.k {
            return Err(Error::Invalid(format!(
                "bundle says k = {}, but N - 2z = {}",
                bundle.k,
                code.k()
            )));
        }
        let sources = bundle.adjacency.len();
        if sources == 0 || sources > 3 {
            return Err(Error::Invalid(format!("{sources} adjacency rows")));
        }
        let mut rates = vec![0usize; sources];
        for &owner in &bundle.row_owner {
            if owner == 0 || owner > sources {
                return Err(Error::Invalid(format!("row owner {owner} out of range")));
            }
            rates[owner - 1] += 1;
        }
        let adjacency: Vec<Vec<bool>> = bundle
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&v| v == 1).collect())
            .collect();
        let topology = SmanTopology::new(rates, bundle.z, adjacency)?;
        if topology.relays() != bundle.n {
            return Err(Error::Invalid(format!(
                "adjacency has {} relays, bundle says N = {}",
                topology.relays(),
                bundle.n
            )));
        }
        let mut seen = vec![false; bundle.n];
        for &relay in &bundle.column_order {
            if relay == 0 || relay > bundle.n || std::mem::replace(&mut seen[relay - 1], true) {
                return Err(Error::Invalid("column_order is not a permutation of 1..=N".into()));
            }
        }
        if bundle.column_order.len() != bundle.n {
            return Err(Error::Invalid("column_order length != N".into()));
        }
        let rows = bundle.row_owner.len();
        let read_matrix = |vals: &Vec<Vec<u16>>, cols: usize, name: &str| -> Result<Matrix> {
            if vals.len() != rows {
                return Err(Error::Invalid(format!("{name} has {} rows, expected {rows}", vals.len())));
            }
            let mut out = Matrix::zeros(rows, cols);
            for (i, r) in vals.iter().enumerate() {
                if r.len() != cols {
                    return Err(Error::Invalid(format!("{name} row {i} has {} entries, expected {cols}", r.len())));
                }
                for (j, &v) in r.iter().enumerate() {
                    out.set(i, j, spec.element(v as u64)?);
                }
            }
            Ok(out)
        };
        let t_mat = read_matrix(&bundle.t, bundle.k, "T")?;
        let g_mat = read_matrix(&bundle.g, bundle.n, "G")?;
        Ok(Construction {
            code,
            topology,
            case: bundle.case,
            column_order: bundle.column_order,
            t_mat,
            g_mat,
            row_owner: bundle.row_owner.iter().map(|&o| o - 1).collect(),
            details: None,
        })
    }
}
