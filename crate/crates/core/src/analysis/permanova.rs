use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::distance::DistanceMatrix;
use super::AnalysisError;

/// Relative slack under which a permuted statistic counts as a tie with the
/// observed one.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PermanovaResult {
    /// Pseudo-F; infinite when within-group scatter is zero and between-group
    /// scatter is not.
    pub f: f64,
    pub p: f64,
    pub n_perm: u32,
    pub seed: u64,
    pub ss_total: f64,
    pub ss_within: f64,
    pub ss_between: f64,
    pub df_between: usize,
    pub df_within: usize,
    /// Within-group sum of squares is zero.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseResult<G> {
    pub a: G,
    pub b: G,
    pub f: f64,
    pub p_raw: f64,
    pub p_adjusted: f64,
}

/// Squared distances of the upper triangle plus group codes.
struct Design {
    n: usize,
    sq: Vec<f64>,
    codes: Vec<usize>,
    groups: usize,
}

impl Design {
    fn new<G: Ord>(d: &DistanceMatrix, labels: &[G]) -> Result<Self, AnalysisError> {
        let n = d.len();
        if labels.len() != n {
            return Err(AnalysisError::LabelCount {
                labels: labels.len(),
                n,
            });
        }
        let mut index: BTreeMap<&G, usize> = BTreeMap::new();
        for g in labels {
            let next = index.len();
            index.entry(g).or_insert(next);
        }
        let groups = index.len();
        if groups < 2 {
            return Err(AnalysisError::TooFewGroups(groups));
        }
        if n <= groups {
            return Err(AnalysisError::NoWithinGroupFreedom { n, groups });
        }
        let codes = labels.iter().map(|g| index[g]).collect();
        let sq = d.pairs().map(|(i, j)| d.get(i, j) * d.get(i, j)).collect();
        Ok(Self {
            n,
            sq,
            codes,
            groups,
        })
    }

    fn ss_total(&self) -> f64 {
        self.sq.iter().sum::<f64>() / self.n as f64
    }

    fn ss_within(&self, codes: &[usize], sizes: &[usize], acc: &mut Vec<f64>) -> f64 {
        acc.clear();
        acc.resize(self.groups, 0.0);
        let mut k = 0;
        for i in 0..self.n {
            let gi = codes[i];
            for &gj in &codes[i + 1..] {
                if gi == gj {
                    acc[gi] += self.sq[k];
                }
                k += 1;
            }
        }
        acc.iter().zip(sizes).map(|(s, &m)| s / m as f64).sum()
    }

    fn pseudo_f(&self, ss_total: f64, ss_within: f64) -> f64 {
        let ss_between = (ss_total - ss_within).max(0.0);
        if ss_within == 0.0 {
            return if ss_between > 0.0 { f64::INFINITY } else { 0.0 };
        }
        let df_b = (self.groups - 1) as f64;
        let df_w = (self.n - self.groups) as f64;
        (ss_between / df_b) / (ss_within / df_w)
    }
}

fn at_least(f_perm: f64, f_obs: f64) -> bool {
    if f_obs.is_infinite() {
        f_perm.is_infinite()
    } else {
        f_perm >= f_obs - TIE_TOLERANCE * f_obs.abs()
    }
}

/// One-way PERMANOVA on a distance matrix with unrestricted label
/// permutation.
///
/// Permutation `k` shuffles the original labels with a ChaCha8 generator
/// seeded by `seed` on stream `k`, so every replicate is reproducible on its
/// own and the result does not depend on evaluation order.
pub fn permanova<G: Ord>(
    d: &DistanceMatrix,
    labels: &[G],
    n_perm: u32,
    seed: u64,
) -> Result<PermanovaResult, AnalysisError> {
    let design = Design::new(d, labels)?;
    let mut sizes = alloc::vec![0usize; design.groups];
    for &c in &design.codes {
        sizes[c] += 1;
    }
    let mut acc = Vec::new();
    let ss_total = design.ss_total();
    let ss_within = design.ss_within(&design.codes, &sizes, &mut acc);
    let f = design.pseudo_f(ss_total, ss_within);

    let mut exceed = 0u32;
    let mut perm = design.codes.clone();
    for k in 0..n_perm {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(k));
        perm.copy_from_slice(&design.codes);
        perm.shuffle(&mut rng);
        let fk = design.pseudo_f(ss_total, design.ss_within(&perm, &sizes, &mut acc));
        if at_least(fk, f) {
            exceed += 1;
        }
    }

    Ok(PermanovaResult {
        f,
        p: f64::from(1 + exceed) / f64::from(1 + n_perm),
        n_perm,
        seed,
        ss_total,
        ss_within,
        ss_between: ss_total - ss_within,
        df_between: design.groups - 1,
        df_within: design.n - design.groups,
        degenerate: ss_within == 0.0,
    })
}

/// PERMANOVA for every pair of groups on the corresponding sub-matrix, with
/// Holm-adjusted p-values. Pairs follow the sorted group order; pair `i` uses
/// seed `seed + i`.
pub fn pairwise_permanova_holm<G: Ord + Clone>(
    d: &DistanceMatrix,
    labels: &[G],
    n_perm: u32,
    seed: u64,
) -> Result<Vec<PairwiseResult<G>>, AnalysisError> {
    // Validates label count, group count and degrees of freedom up front.
    Design::new(d, labels)?;
    let mut members: BTreeMap<&G, Vec<usize>> = BTreeMap::new();
    for (i, g) in labels.iter().enumerate() {
        members.entry(g).or_default().push(i);
    }
    let groups: Vec<(&G, &Vec<usize>)> = members.iter().map(|(g, m)| (*g, m)).collect();

    let mut out = Vec::new();
    for (ia, (ga, ra)) in groups.iter().enumerate() {
        for (gb, rb) in &groups[ia + 1..] {
            let rows: Vec<usize> = ra.iter().chain(rb.iter()).copied().collect();
            let sub_labels: Vec<&G> = rows.iter().map(|&r| &labels[r]).collect();
            let res = permanova(
                &d.submatrix(&rows),
                &sub_labels,
                n_perm,
                seed.wrapping_add(out.len() as u64),
            )?;
            out.push(PairwiseResult {
                a: (*ga).clone(),
                b: (*gb).clone(),
                f: res.f,
                p_raw: res.p,
                p_adjusted: res.p,
            });
        }
    }
    let raw: Vec<f64> = out.iter().map(|r| r.p_raw).collect();
    for (r, adj) in out.iter_mut().zip(holm_adjust(&raw)) {
        r.p_adjusted = adj;
    }
    Ok(out)
}

/// Holm step-down adjustment, returned in the input order. Ties in `p` keep
/// their input order.
pub fn holm_adjust(p: &[f64]) -> Vec<f64> {
    let m = p.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p[a].total_cmp(&p[b]));
    let mut out = alloc::vec![0.0; m];
    let mut running = 0.0f64;
    for (rank, &i) in order.iter().enumerate() {
        let scaled = ((m - rank) as f64 * p[i]).min(1.0);
        running = running.max(scaled);
        out[i] = running;
    }
    out
}
