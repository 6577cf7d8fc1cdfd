//! Named verification suites. Each instance draws from its own RNG stream,
//! so results do not depend on the number of workers.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::ExperimentConfig;
use super::generate::{
    error_caps, generate_series, plant_pair, plant_witness, q_caps, random_matrix, random_poly,
    random_poly_of_degree, random_series, random_tuple, sample_plane_matrix, PlantParams,
    SeriesSpec,
};
use super::output::{InstanceRecord, NamedProfile, SuiteReport};
use super::rng::instance_rng;
use crate::algebra::{Field, FieldSpec, LaurentSeries, MatrixF, Polynomial};
use crate::approx::{
    best_error, dirichlet_solve, verify_dirichlet, DirichletMode, DirichletOutcome,
    DirichletTarget, Method, Witness,
};
use crate::error::{Error, Result};
use crate::exponents::{estimate, profile, ExponentValue, ProfileKind};
use crate::limsup::{
    audit_grid, intersection_check, plane_identity_check, prop_backward_check, prop_forward_check,
    tau0, tset_enumerate, tset_oracle, ForwardParams, TsetMode, TsetParams,
};
use crate::rational::{self, int, Rational};
use crate::report::{CheckReport, Severity, Status};
use crate::transference::{
    check_bz, check_chain, check_dirichlet_bound, check_dyson, check_mult_dominance,
};

pub const SUITES: &[&str] = &[
    "dirichlet",
    "oracle",
    "dirichlet-bound",
    "dominance",
    "generic",
    "vwa",
    "tset",
    "proposition",
    "intersection",
    "plane",
    "transference",
];

/// Shared state for one run: the config, the configured field and a worker pool.
pub struct Runner<'a> {
    pub cfg: &'a ExperimentConfig,
    pub field: Arc<Field>,
    pool: rayon::ThreadPool,
}

impl<'a> Runner<'a> {
    pub fn new(cfg: &'a ExperimentConfig) -> Result<Self> {
        let field = Field::new(FieldSpec::parse(&cfg.field)?)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
        Ok(Runner { cfg, field, pool })
    }

    /// Runs `body` for indices `0..count` on the pool, keeping index order.
    fn instances<F>(&self, suite: &str, count: usize, body: F) -> Vec<InstanceRecord>
    where
        F: Fn(usize, &mut ChaCha8Rng) -> Result<InstanceRecord> + Sync,
    {
        let seed = self.cfg.seed;
        self.pool.install(|| {
            (0..count)
                .into_par_iter()
                .map(|i| {
                    let mut rng = instance_rng(seed, suite, i as u64);
                    body(i, &mut rng).unwrap_or_else(|e| InstanceRecord::failed(i, &e))
                })
                .collect()
        })
    }

    pub fn run(&self, suite: &str) -> Result<SuiteReport> {
        match suite {
            "dirichlet" => Ok(self.dirichlet()),
            "oracle" => Ok(self.oracle()),
            "dirichlet-bound" => Ok(self.dirichlet_bound()),
            "dominance" => Ok(self.dominance()),
            "generic" => Ok(self.generic()),
            "vwa" => self.vwa(),
            "tset" => Ok(self.tset()),
            "proposition" => Ok(self.proposition()),
            "intersection" => Ok(self.intersection()),
            "plane" => Ok(self.plane()),
            "transference" => Ok(self.transference()),
            other => Err(Error::InvalidInput(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            ))),
        }
    }

    fn dirichlet(&self) -> SuiteReport {
        let s = &self.cfg.dirichlet;
        let mode = match self.cfg.mode {
            super::config::ModeName::Strict => DirichletMode::Strict,
            super::config::ModeName::Relaxed => DirichletMode::Relaxed,
        };
        let records = self.instances("dirichlet", s.count, |i, rng| {
            let p = s.primes[rng.gen_range(0..s.primes.len())];
            let f = Field::prime(p)?;
            let m = rng.gen_range(1..=s.max_dim);
            let n = rng.gen_range(1..=s.max_dim);
            let half = rng.gen_range(0..=s.max_sigma / 2);
            let mut t = split(half, m, rng);
            t.extend(split(half, n, rng));
            let target = DirichletTarget::new(t.clone(), m, n)?;
            let y = random_matrix(m, n, &f, s.floor, rng);
            let outcome = dirichlet_solve(&y, &target, mode, &f)?;
            let (solved, verified, data) = match &outcome {
                DirichletOutcome::Solved { witness, errors, strict } => {
                    let ok = verify_dirichlet(&y, &target, mode, witness, &f)?;
                    (true, ok, json!({"p": p, "t": t, "witness": witness, "errors": errors, "strict": strict}))
                }
                DirichletOutcome::NoSolution => (false, false, json!({"p": p, "t": t})),
            };
            Ok(InstanceRecord::new(
                i,
                vec![
                    CheckReport::exact("dirichlet_solved", solved),
                    CheckReport::exact("dirichlet_verified", verified),
                ],
                data,
            ))
        });
        SuiteReport::new(
            "dirichlet",
            "every solve returns a witness that re-verifies",
            records,
        )
    }

    fn oracle(&self) -> SuiteReport {
        let s = &self.cfg.oracle;
        let f = &self.field;
        let records = self.instances("oracle", s.count, |i, rng| {
            let y = random_matrix(1, 1, f, s.floor, rng);
            let theta = vec![LaurentSeries::zero()];
            let mut checks = Vec::new();
            for t in 1..=s.t_max {
                let k = best_error(&y, &theta, t, Method::Kernel, f)?;
                let b = best_error(&y, &theta, t, Method::Brute, f)?;
                let same = k.b == b.b && k.errors == b.errors;
                checks.push(
                    CheckReport::exact("kernel_matches_brute", same)
                        .sides(k.b.to_string(), b.b.to_string())
                        .detail(format!("T={t}")),
                );
            }
            Ok(InstanceRecord::new(i, checks, Value::Null))
        });
        SuiteReport::new(
            "oracle",
            "kernel and brute force agree on B and the error degree",
            records,
        )
    }

    fn dirichlet_bound(&self) -> SuiteReport {
        let s = &self.cfg.dirichlet_bound;
        let f = &self.field;
        const DIMS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let records = self.instances("dirichlet-bound", s.count, |i, rng| {
            let (m, n) = DIMS[i % DIMS.len()];
            let y = random_matrix(m, n, f, s.floor, rng);
            let zero = vec![LaurentSeries::zero(); m];
            let p = profile(&y, &zero, s.t_max, ProfileKind::Standard, f)?;
            let check = check_dirichlet_bound(&p)?;
            Ok(InstanceRecord::new(i, vec![check], json!({"m": m, "n": n})))
        });
        SuiteReport::new(
            "dirichlet-bound",
            "-B(T) >= T + m - mn at every uncensored T",
            records,
        )
    }

    fn dominance(&self) -> SuiteReport {
        let s = &self.cfg.dominance;
        let f = &self.field;
        let records = self.instances("dominance", s.count, |i, rng| {
            let n = 1 + i % 2;
            let y = random_matrix(1, n, f, s.floor, rng);
            let theta = if i % 4 < 2 {
                vec![random_series(f, s.floor, rng)]
            } else {
                vec![LaurentSeries::zero()]
            };
            let std = profile(&y, &theta, s.t_max, ProfileKind::Standard, f)?;
            let mult = profile(&y, &theta, s.t_max, ProfileKind::Multiplicative, f)?;
            let check = check_mult_dominance(&std, &mult)?;
            Ok(InstanceRecord::new(
                i,
                vec![check],
                json!({"n": n, "inhomogeneous": !theta[0].is_exact_zero()}),
            ))
        });
        SuiteReport::new("dominance", "B_x(T) <= B(T) pointwise", records)
    }

    fn generic(&self) -> SuiteReport {
        let s = &self.cfg.generic;
        let f = &self.field;
        let records = self.instances("generic", s.count, |i, rng| {
            let y = random_matrix(1, 1, f, s.floor, rng);
            let zero = vec![LaurentSeries::zero()];
            let p = profile(&y, &zero, s.t_max, ProfileKind::Standard, f)?;
            let bound = check_dirichlet_bound(&p)?;
            let est = estimate(&p)?;
            let one = ExponentValue::Finite(int(1));
            let in_range = one <= est.omega_proxy
                && est.omega_proxy <= ExponentValue::Finite(s.omega_max)
                && one <= est.omega_hat_proxy
                && est.omega_hat_proxy <= ExponentValue::Finite(s.omega_hat_max);
            let range = CheckReport::new(
                "generic_range",
                Severity::Diagnostic,
                if in_range {
                    Status::Holds
                } else {
                    Status::Fails
                },
            )
            .sides(
                format!("{} ; {}", est.omega_proxy, est.omega_hat_proxy),
                format!(
                    "[1, {}] ; [1, {}]",
                    rational::display(s.omega_max),
                    rational::display(s.omega_hat_max)
                ),
            );
            let range = if est.censored {
                range.with_note("window has censored entries")
            } else {
                range
            };
            Ok(InstanceRecord::new(
                i,
                vec![bound, range],
                json!({"estimate": est}),
            ))
        });
        let hits = records
            .iter()
            .filter(|r| r.check_holds("generic_range"))
            .count();
        let report = SuiteReport::new(
            "generic",
            format!(
                "omega and omega_hat proxies in range for at least {} instances",
                s.required
            ),
            records,
        );
        let passed = report.passed && hits >= s.required;
        report
            .with_summary(json!({"in_range": hits, "required": s.required}))
            .with_passed(passed)
    }

    fn vwa(&self) -> Result<SuiteReport> {
        let s = &self.cfg.vwa;
        let f = &self.field;
        let spec = SeriesSpec::Lacunary(s.base);
        let mut rng = instance_rng(self.cfg.seed, "vwa", 0);
        let y = MatrixF::from_rows(vec![vec![generate_series(&spec, f, s.floor, &mut rng)?]])?;
        let zero = vec![LaurentSeries::zero()];
        let p = profile(&y, &zero, s.t_max, ProfileKind::Standard, f)?;
        let est = estimate(&p)?;
        let ok = est.omega_proxy >= ExponentValue::Finite(s.omega_min);
        let check = CheckReport::exact("vwa_lower_bound", ok)
            .sides(est.omega_proxy, rational::display(s.omega_min));
        let record = InstanceRecord::new(0, vec![check], json!({"base": s.base, "estimate": est}));
        let mut report = SuiteReport::new(
            "vwa",
            "lacunary omega proxy at least omega_min",
            vec![record],
        );
        report.profiles.push(NamedProfile {
            name: format!("lacunary_{}", s.base),
            profile: p,
        });
        Ok(report)
    }

    fn tset(&self) -> SuiteReport {
        let s = &self.cfg.tset;
        let combos: Vec<([usize; 2], Rational)> = s
            .dims
            .iter()
            .flat_map(|d| s.etas.iter().map(move |e| (*d, *e)))
            .collect();
        let eps = self.cfg.epsilon;
        let records = self.instances("tset", combos.len(), |i, _| {
            let ([m, n], eta) = combos[i];
            let params = TsetParams::new(m, n, eta, TsetMode::Multiplicative)?;
            tset_record(i, &params, s.grid, s.sigma_bound, eps)
        });
        SuiteReport::new(
            "tset",
            "sigma inequalities hold on the grid and enumeration matches brute force",
            records,
        )
    }

    fn proposition(&self) -> SuiteReport {
        let s = &self.cfg.proposition;
        let cfg = self.cfg;
        let f = &self.field;
        let records = self.instances("proposition", s.count, |i, rng| {
            let [m, n] = s.dims[i % s.dims.len()];
            let params = PlantParams {
                m,
                n,
                eta: cfg.eta,
                eps: cfg.epsilon,
                horizon: rng.gen_range(s.horizons[0]..=s.horizons[1]),
                floor: s.floor,
                exact_hit: i % 10 == 0,
            };
            let planted = plant_witness(&params, f, rng)?;
            let tp = TsetParams::new(m, n, cfg.eta, TsetMode::Multiplicative)?;
            let tau = cfg.tau.unwrap_or(tau0(cfg.epsilon, &tp)? / int(2));
            let fp = ForwardParams {
                horizon: planted.horizon,
                eta: cfg.eta,
                eps: cfg.epsilon,
                tau,
                sigma_threshold: cfg.sigma_threshold,
            };
            let fwd = prop_forward_check(&planted.y, &planted.theta, &planted.alpha, &fp, f)?;
            let mut checks = vec![fwd.report.clone()];
            let standard = fwd.standard.as_ref().is_some_and(|s| s.member);
            let mut backward = Value::Null;
            if let (Some(t), true) = (&fwd.tuple, standard) {
                let b = prop_backward_check(&planted.y, &planted.theta, t, &planted.alpha, tau, cfg.eta, f)?;
                backward = json!({"T_prime": rational::display(b.t_prime), "eps_prime": rational::display(b.eps_prime)});
                checks.push(b.report);
            }
            Ok(InstanceRecord::new(
                i,
                checks,
                json!({
                    "m": m,
                    "n": n,
                    "T": planted.horizon,
                    "exact_hit": params.exact_hit,
                    "u": fwd.u,
                    "v": fwd.v,
                    "t": fwd.tuple.as_ref().map(|t| &t.t),
                    "standard": standard,
                    "shifted": fwd.shifted.as_ref().is_some_and(|s| s.member),
                    "backward": backward,
                }),
            ))
        });
        SuiteReport::new(
            "proposition",
            "planted witnesses land in the Delta set and map back",
            records,
        )
    }

    fn intersection(&self) -> SuiteReport {
        let s = &self.cfg.intersection;
        let cfg = self.cfg;
        let f = &self.field;
        let records = self.instances("intersection", s.count, |i, rng| {
            let [m, n] = s.dims[i % s.dims.len()];
            let pair = plant_pair(m, n, cfg.eta, cfg.epsilon, s.floor, f, rng)?;
            let c = intersection_check(
                &pair.y,
                &pair.theta,
                &pair.t,
                &pair.alpha,
                &pair.alpha2,
                pair.tau,
                f,
            )?;
            Ok(InstanceRecord::new(
                i,
                vec![c.report],
                json!({"m": m, "n": n, "t": pair.t.t, "outcome": c.outcome}),
            ))
        });
        SuiteReport::new(
            "intersection",
            "the difference of two members is a homogeneous member",
            records,
        )
    }

    fn plane(&self) -> SuiteReport {
        let s = &self.cfg.plane;
        let cfg = self.cfg;
        let f = &self.field;
        let records = self.instances("plane", s.count, |i, rng| {
            let [m, n] = s.dims[i % s.dims.len()];
            let params = TsetParams::new(m, n, cfg.eta, TsetMode::Multiplicative)?;
            let tau = cfg.tau.unwrap_or(tau0(cfg.epsilon, &params)? / int(2));
            let t = random_tuple(&params, tau, rng)?;
            let caps = q_caps(&t, m, tau);
            let ecaps = error_caps(&t, m, tau);
            let k = (0..n).find(|&j| caps[j] >= 0).unwrap();
            let empty_gate =
                s.empty_gate_every > 0 && i % s.empty_gate_every == s.empty_gate_every - 1;
            let mut q: Vec<Polynomial> = caps
                .iter()
                .map(|&c| random_poly(f, c.min(3), rng))
                .collect();
            q[k] = if empty_gate {
                random_poly_of_degree(f, (caps[k] + 1) as usize, rng)
            } else {
                random_poly_of_degree(f, rng.gen_range(0..=caps[k].min(3)) as usize, rng)
            };
            let p: Vec<Polynomial> = (0..m).map(|_| random_poly(f, 1, rng)).collect();
            let alpha = Witness::new(p, q);
            let theta: Vec<LaurentSeries> =
                (0..m).map(|_| random_series(f, s.floor, rng)).collect();
            let (mut agree, mut members, mut gate) = (0usize, 0usize, true);
            let mut disagreements = Vec::new();
            for k in 0..s.samples {
                let y = if k % 2 == 0 {
                    let tops: Vec<i64> = ecaps.iter().map(|&c| c + rng.gen_range(-2..=1)).collect();
                    sample_plane_matrix(&alpha, &theta, Some(&tops), s.floor, f, rng)?
                } else {
                    sample_plane_matrix(&alpha, &theta, None, s.floor, f, rng)?
                };
                let c = plane_identity_check(&y, &theta, &t, &alpha, tau, f)?;
                gate = c.gate;
                members += c.via_delta as usize;
                if c.report.holds() {
                    agree += 1;
                } else {
                    disagreements.push(k);
                }
            }
            let check = CheckReport::exact("plane_identity", agree == s.samples)
                .sides(agree, s.samples)
                .detail(format!(
                    "members {members}, non-members {}",
                    s.samples - members
                ));
            let check = if disagreements.is_empty() {
                check
            } else {
                check.detail(format!("disagreeing samples {disagreements:?}"))
            };
            Ok(InstanceRecord::new(
                i,
                vec![check],
                json!({
                    "m": m,
                    "n": n,
                    "t": t.t,
                    "gate": gate,
                    "members": members,
                    "non_members": s.samples - members,
                }),
            ))
        });
        let gates_closed = records
            .iter()
            .filter(|r| r.data.get("gate") == Some(&Value::Bool(false)))
            .count();
        SuiteReport::new(
            "plane",
            "Delta membership and plane membership agree on every sample",
            records,
        )
        .with_summary(json!({"empty_gate_instances": gates_closed}))
    }

    fn transference(&self) -> SuiteReport {
        let s = &self.cfg.transference;
        let cfg = self.cfg;
        let f = &self.field;
        let records = self.instances("transference", s.count, |i, rng| {
            let y = random_matrix(s.m, s.n, f, s.floor, rng);
            let theta: Vec<LaurentSeries> =
                (0..s.m).map(|_| random_series(f, s.floor, rng)).collect();
            let checks = vec![
                check_bz(&y, &theta, s.t_max, cfg.tol, f)?,
                check_dyson(&y, s.t_max, cfg.dyson_tol, f)?,
                check_chain(&y, &theta, s.chain_t_max, cfg.tol, f)?,
            ];
            Ok(InstanceRecord::new(i, checks, Value::Null))
        });
        let hits = records
            .iter()
            .filter(|r| r.check_holds("bugeaud_zhang") && r.check_holds("dyson"))
            .count();
        let report = SuiteReport::new(
            "transference",
            format!(
                "Bugeaud-Zhang and Dyson diagnostics hold for at least {} instances",
                s.required
            ),
            records,
        );
        let passed = report.passed && hits >= s.required;
        report
            .with_summary(json!({"both_hold": hits, "required": s.required}))
            .with_passed(passed)
    }
}

/// Grid audit of the σ inequalities plus enumeration against brute force.
pub fn tset_record(
    index: usize,
    params: &TsetParams,
    grid: i64,
    sigma_bound: i64,
    eps: Rational,
) -> Result<InstanceRecord> {
    let (m, n) = (params.m, params.n);
    let a = audit_grid(params, grid)?;
    let weighted = CheckReport::exact("weighted_bound", a.weighted == 0)
        .sides(a.weighted, 0)
        .detail(format!("{} of {} pairs violate", a.weighted, a.pairs));
    let weighted = if m < n {
        weighted.with_note("fails whenever m < n; the bound needs slack max(0, n - m)")
    } else {
        weighted
    };
    let tau = tau0(eps, params)?;
    let e = tset_enumerate(params, sigma_bound, tau)?;
    let near = tset_oracle(params, sigma_bound, 2 * sigma_bound + 2)?;
    let far = tset_oracle(params, sigma_bound, 4 * sigma_bound + 4)?;
    let checks = vec![
        CheckReport::exact("sigma_sandwich", a.v_side == 0 && a.u_side == 0)
            .sides(a.v_side + a.u_side, 0),
        CheckReport::exact("sigma_nonnegative", a.negative == 0).sides(a.negative, 0),
        weighted,
        CheckReport::exact("weighted_bound_with_slack", a.weighted_with_slack == 0)
            .sides(a.weighted_with_slack, 0),
        CheckReport::exact(
            "oracle_equivalence",
            e.multiplicities() == near && near == far,
        )
        .sides(e.tuples.len(), near.len()),
    ];
    Ok(InstanceRecord::new(
        index,
        checks,
        json!({
            "m": m,
            "n": n,
            "eta": rational::display(params.eta),
            "mode": params.mode,
            "audit": a,
            "level_counts": e.level_counts,
        }),
    ))
}

/// A uniformly random split of `total` into `parts` non-negative integers.
fn split(total: i64, parts: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let mut cuts: Vec<i64> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(total - prev);
    out
}
