//! The five subcommands as library functions returning serializable
//! reports. Permutations are 1-based throughout.

use std::path::Path;

use serde::Serialize;
use wisdom_core::dynamics::{
    centrality, classify_pap, corollary1_check, corollary2_check, corollary3_check, simulate,
    stationary_social_power, Corollary1Verdict, Corollary2Verdict, Corollary3Verdict, InfluenceNetwork,
    Matrix, NetworkKind, PapGrade, Population,
};
use wisdom_core::orderings::{
    enumerate_improving_orderings, MpgState, PermutationOrdering, DEFAULT_ENUMERATION_CAP,
};
use wisdom_core::profile::SUM_TOL;
use wisdom_core::stochastics::{Distribution, EstimateModel, GATE_SIGMAS};
use wisdom_core::{
    baseline_variance, classify_consistency_with_tol, classify_membership, collective_variance,
    optimal_allocation, Allocation,
};

use crate::error::{CliError, Result};
use crate::export::export_region_csv;
use crate::instance::{locate, Instance};
use crate::parallel;

fn one_based(tau: &PermutationOrdering) -> Vec<usize> {
    tau.to_one_based()
}

fn weights(x: &Allocation) -> Vec<f64> {
    x.weights().to_vec()
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub sigma2: Vec<f64>,
    pub x: Vec<f64>,
    pub tol: f64,
    pub membership: &'static str,
    pub consistency: &'static str,
    pub collective_variance: f64,
    pub baseline_variance: f64,
    pub optimal_allocation: Vec<f64>,
    pub optimal_variance: f64,
}

pub fn analyze(inst: &Instance, tol: f64) -> Result<AnalyzeReport> {
    let x = inst.require_x()?;
    let s = &inst.sigma2;
    let (xstar, estar) = optimal_allocation(s);
    Ok(AnalyzeReport {
        n: s.len(),
        sigma2: s.values().to_vec(),
        x: weights(x),
        tol,
        membership: classify_membership(x, s, tol)?.as_str(),
        consistency: classify_consistency_with_tol(x, s, tol)?.as_str(),
        collective_variance: collective_variance(x, s)?,
        baseline_variance: baseline_variance(s),
        optimal_allocation: weights(&xstar),
        optimal_variance: estar,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub orderings: Vec<Vec<usize>>,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MpgReport {
    pub n: usize,
    pub arithmetic: &'static str,
    /// Labels sorted by ascending variance; MPG runs on this relabelling.
    pub ascending_order: Vec<usize>,
    pub candidate_count: Option<u128>,
    /// Improving orderings in the original labels, lexicographic.
    pub orderings: Vec<Vec<usize>>,
    pub count: usize,
    pub oracle: Option<OracleReport>,
}

impl MpgReport {
    pub fn passed(&self) -> bool {
        self.oracle.as_ref().is_none_or(|o| o.agrees)
    }
}

/// MPG on the ascending relabelling of `sigma2`, reported in the original
/// labels. With `oracle` the brute-force enumeration is run as well.
pub fn mpg(inst: &Instance, oracle: bool) -> Result<MpgReport> {
    let (order, candidate_count, found, reference) = if inst.rational {
        let exact = inst.exact_profile()?;
        let order = exact.ascending_order();
        let state = exact.relabel(&order)?.mpg_state()?;
        let reference = if oracle {
            Some(exact.enumerate_improving_orderings(DEFAULT_ENUMERATION_CAP)?)
        } else {
            None
        };
        (
            order,
            state.candidate_count(),
            state.improving_orderings(),
            reference,
        )
    } else {
        let (sorted, order) = inst.sigma2.sorted_ascending();
        let state = MpgState::new(&sorted)?;
        let reference = if oracle {
            Some(enumerate_improving_orderings(
                &inst.sigma2,
                DEFAULT_ENUMERATION_CAP,
            )?)
        } else {
            None
        };
        (
            order,
            state.candidate_count(),
            state.improving_orderings(),
            reference,
        )
    };
    let mut mapped = found
        .iter()
        .map(|tau| order.compose(tau))
        .collect::<wisdom_core::Result<Vec<_>>>()?;
    mapped.sort();
    let oracle = reference.map(|r| OracleReport {
        agrees: r == mapped,
        orderings: r.iter().map(one_based).collect(),
    });
    Ok(MpgReport {
        n: inst.len(),
        arithmetic: if inst.rational { "rational" } else { "float" },
        ascending_order: one_based(&order),
        candidate_count,
        count: mapped.len(),
        orderings: mapped.iter().map(one_based).collect(),
        oracle,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelCounts<T> {
    pub improves: T,
    pub undermines: T,
    pub neutral: T,
    pub ordering_consistent: T,
    pub gap_consistent: T,
    pub gap_polytope: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub sigma2: Vec<f64>,
    pub resolution: usize,
    pub points: usize,
    pub csv: String,
    pub counts: LabelCounts<usize>,
    pub fractions: LabelCounts<f64>,
    pub baseline_variance: f64,
    pub optimum: Vec<f64>,
    pub optimal_variance: f64,
    pub interior_points: bool,
    pub gap_inclusion_violations: usize,
    /// Only computed on request: quadratic in the number of improving points.
    pub convexity_violations: Option<usize>,
    pub warnings: Vec<String>,
}

impl RegionReport {
    pub fn passed(&self) -> bool {
        self.gap_inclusion_violations == 0 && self.convexity_violations.unwrap_or(0) == 0
    }
}

/// Labels the lattice of `Δ_3` and writes the CSV to `out`.
pub fn region(inst: &Instance, resolution: usize, out: &Path, check_convexity: bool) -> Result<RegionReport> {
    if inst.len() != 3 {
        return Err(CliError::schema(
            "sigma2",
            format!("region maps need exactly 3 individuals, found {}", inst.len()),
        ));
    }
    let map = parallel::region_map(&inst.sigma2, resolution)?;
    export_region_csv(&map, out)?;
    let mut warnings = Vec::new();
    if !map.has_interior_points() {
        warnings.push(format!(
            "resolution {resolution} has no interior lattice points; only the boundary is labelled"
        ));
    }
    let sum = map.summary();
    let counts = LabelCounts {
        improves: sum.improves,
        undermines: sum.undermines,
        neutral: sum.neutral,
        ordering_consistent: sum.ordering_consistent,
        gap_consistent: sum.gap_consistent,
        gap_polytope: sum.gap_polytope,
    };
    let fractions = LabelCounts {
        improves: sum.fraction(sum.improves),
        undermines: sum.fraction(sum.undermines),
        neutral: sum.fraction(sum.neutral),
        ordering_consistent: sum.fraction(sum.ordering_consistent),
        gap_consistent: sum.fraction(sum.gap_consistent),
        gap_polytope: sum.fraction(sum.gap_polytope),
    };
    Ok(RegionReport {
        sigma2: inst.sigma2.values().to_vec(),
        resolution,
        points: sum.points,
        csv: out.display().to_string(),
        counts,
        fractions,
        baseline_variance: map.baseline,
        optimum: weights(&map.optimum),
        optimal_variance: map.optimal_variance,
        interior_points: map.has_interior_points(),
        gap_inclusion_violations: map.gap_inclusion_violations(),
        convexity_violations: check_convexity.then(|| map.convexity_violations()),
        warnings,
    })
}

/// Outcome of one corollary test.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryOutcome {
    pub verdict: &'static str,
    pub clause: Option<&'static str>,
    pub ordering: Option<Vec<usize>>,
}

impl CorollaryOutcome {
    fn new(
        verdict: &'static str,
        clause: Option<&'static str>,
        ordering: Option<&PermutationOrdering>,
    ) -> Self {
        Self {
            verdict,
            clause,
            ordering: ordering.map(one_based),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NetworkOutcome {
    /// `"democratic"` or `"autocratic"`.
    pub kind: &'static str,
    /// 1-based centre of a star.
    pub center: Option<usize>,
    pub verdict: &'static str,
    pub pap_sufficient: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerCheck {
    pub k: u64,
    pub column_averages: Vec<f64>,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub steps: usize,
    pub y0: Vec<f64>,
    pub y_final: Vec<f64>,
    /// `Σ x_i y_i(0)`, the consensus value.
    pub limit: f64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FdReport {
    pub n: usize,
    pub sigma2: Vec<f64>,
    pub gamma: Vec<f64>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<f64>>,
    pub centrality: Vec<f64>,
    pub social_power: Vec<f64>,
    pub collective_variance: f64,
    pub baseline_variance: f64,
    pub membership: &'static str,
    pub consistency: &'static str,
    pub optimal_allocation: Vec<f64>,
    pub pap: &'static str,
    /// Strongest conclusion among the corollaries: `"Optimal"`,
    /// `"Improves"`, `"Undermines"` or `"NoConclusion"`.
    pub verdict: &'static str,
    pub corollary1: CorollaryOutcome,
    pub corollary2: Option<NetworkOutcome>,
    pub corollary3: CorollaryOutcome,
    pub power: Option<PowerCheck>,
    pub trajectory: Option<Trajectory>,
}

fn pap_name(p: PapGrade) -> &'static str {
    match p {
        PapGrade::NotPap => "NotPap",
        PapGrade::Pap => "Pap",
        PapGrade::StrongPap => "StrongPap",
        PapGrade::MaximalPap => "MaximalPap",
    }
}

/// Democratic if `C` is doubly stochastic, autocratic if every row but one
/// points entirely at that one.
pub fn detect_network_kind(c: &Matrix) -> Option<NetworkKind> {
    let n = c.dim();
    let tol = SUM_TOL * n as f64;
    if c.column_sums().iter().all(|s| (s - 1.0).abs() <= tol) {
        return Some(NetworkKind::Democratic);
    }
    (0..n)
        .find(|&l| (0..n).filter(|&i| i != l).all(|i| c[(i, l)] == 1.0))
        .map(|center| NetworkKind::Autocratic { center })
}

/// Builds `W`, its social power and centrality, and runs the corollary
/// tests. `steps` simulates from initial estimates drawn with the instance
/// seed; `power` reports the column averages of `W^power`.
pub fn fd(inst: &Instance, steps: Option<usize>, power: Option<u64>) -> Result<FdReport> {
    let gamma = inst.require_gamma()?.to_vec();
    let c = inst.require_interaction()?;
    let key = inst.network_key();
    let net = InfluenceNetwork::new(c.clone(), gamma.clone()).map_err(|e| match e {
        wisdom_core::Error::InvalidSusceptibility { .. } | wisdom_core::Error::NoSelfWeight => {
            locate("gamma", e)
        }
        e => locate(key, e),
    })?;
    let x = stationary_social_power(&net).map_err(|e| match e {
        wisdom_core::Error::Reducible { sink_components } => CliError::Reducible(
            sink_components
                .into_iter()
                .map(|c| c.into_iter().map(|i| i + 1).collect())
                .collect(),
        ),
        e => e.into(),
    })?;
    let cv = centrality(&c)?;
    let s = &inst.sigma2;
    let p = Population::new(s.clone(), gamma.clone()).map_err(|e| locate("gamma", e))?;

    let c1 = match corollary1_check(&p, &cv)? {
        Corollary1Verdict::ImprovesByGap => CorollaryOutcome::new("Improves", Some("gap"), None),
        Corollary1Verdict::OptimalDemocraticMaxPap => {
            CorollaryOutcome::new("Optimal", Some("democratic-maximal-pap"), None)
        }
        Corollary1Verdict::ImprovesByOrdering(tau) => {
            CorollaryOutcome::new("Improves", Some("ordering"), Some(&tau))
        }
        Corollary1Verdict::NoConclusion => CorollaryOutcome::new("NoConclusion", None, None),
    };
    let c3 = match corollary3_check(&p, &cv)? {
        Corollary3Verdict::Undermines => CorollaryOutcome::new("Undermines", Some("accuracy-reversed"), None),
        Corollary3Verdict::UnderminesByReversedOrdering(tau) => {
            CorollaryOutcome::new("Undermines", Some("reversed-ordering"), Some(&tau))
        }
        Corollary3Verdict::NoConclusion => CorollaryOutcome::new("NoConclusion", None, None),
    };
    let c2 = match detect_network_kind(&c) {
        Some(kind) => {
            let r = corollary2_check(&p, &net, kind)?;
            let (kind_name, center) = match kind {
                NetworkKind::Democratic => ("democratic", None),
                NetworkKind::Autocratic { center } => ("autocratic", Some(center + 1)),
            };
            Some(NetworkOutcome {
                kind: kind_name,
                center,
                verdict: match r.verdict {
                    Corollary2Verdict::Optimal => "Optimal",
                    Corollary2Verdict::Improves => "Improves",
                    Corollary2Verdict::NoConclusion => "NoConclusion",
                },
                pap_sufficient: r.pap_sufficient,
            })
        }
        None => None,
    };
    let verdicts = [Some(c1.verdict), c2.as_ref().map(|o| o.verdict), Some(c3.verdict)];
    let verdict = ["Optimal", "Improves", "Undermines"]
        .into_iter()
        .find(|v| verdicts.contains(&Some(*v)))
        .unwrap_or("NoConclusion");

    let power = power.map(|k| {
        let avg = net.w().pow(k).column_averages();
        let max_deviation = avg
            .iter()
            .zip(x.weights())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        PowerCheck {
            k,
            column_averages: avg,
            max_deviation,
        }
    });
    let trajectory = match steps {
        Some(k) => {
            let model = EstimateModel::new(inst.mu, s.clone(), Distribution::Gaussian, inst.seed);
            let y0 = model.draw_trial(0);
            let y_final = simulate(&net, &y0, k)?
                .pop()
                .expect("simulate returns k + 1 states");
            let limit: f64 = x.weights().iter().zip(&y0).map(|(a, b)| a * b).sum();
            let max_deviation = y_final.iter().map(|v| (v - limit).abs()).fold(0.0, f64::max);
            Some(Trajectory {
                steps: k,
                y0,
                y_final,
                limit,
                max_deviation,
            })
        }
        None => None,
    };

    Ok(FdReport {
        n: s.len(),
        sigma2: s.values().to_vec(),
        gamma,
        w: net.w().rows(),
        centrality: cv.values().to_vec(),
        social_power: weights(&x),
        collective_variance: collective_variance(&x, s)?,
        baseline_variance: baseline_variance(s),
        membership: classify_membership(&x, s, wisdom_core::DEFAULT_TOL)?.as_str(),
        consistency: classify_consistency_with_tol(&x, s, wisdom_core::DEFAULT_TOL)?.as_str(),
        optimal_allocation: weights(&optimal_allocation(s).0),
        pap: pap_name(classify_pap(&p)),
        verdict,
        corollary1: c1,
        corollary2: c2,
        corollary3: c3,
        power,
        trajectory,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct McCliReport {
    pub trials: usize,
    pub distribution: &'static str,
    pub seed: u64,
    pub mu: f64,
    pub x: Vec<f64>,
    pub sigma2: Vec<f64>,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub analytic_variance: f64,
    pub stderr_of_mean: f64,
    pub stderr_of_variance: f64,
    pub mean_z: f64,
    pub variance_z: f64,
    pub gate_sigmas: f64,
    pub passed: bool,
}

pub fn mc(inst: &Instance, trials: usize, distribution: Distribution) -> Result<McCliReport> {
    let x = inst.require_x()?;
    let model = EstimateModel::new(inst.mu, inst.sigma2.clone(), distribution, inst.seed);
    let r = parallel::mc_collective_variance(x, &model, trials)?;
    Ok(McCliReport {
        trials: r.trials,
        distribution: match distribution {
            Distribution::Gaussian => "gaussian",
            Distribution::UniformMatched => "uniform",
        },
        seed: inst.seed,
        mu: inst.mu,
        x: weights(x),
        sigma2: inst.sigma2.values().to_vec(),
        empirical_mean: r.empirical_mean,
        empirical_variance: r.empirical_variance,
        analytic_variance: r.analytic_variance,
        stderr_of_mean: r.stderr_of_mean,
        stderr_of_variance: r.stderr_of_variance,
        mean_z: r.mean_z(),
        variance_z: r.variance_z(),
        gate_sigmas: GATE_SIGMAS,
        passed: r.passes(),
    })
}
