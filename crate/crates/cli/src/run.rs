//! Subcommand drivers.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use su3_bethe::integral::limits::{infinity_limit_check_with, LimitKind};
use su3_bethe::integral::recursion::eval_recursion;
use su3_bethe::integral::{eval_multiple_integral_with, IntegralOptions, IntegralStats};
use su3_bethe::kernel::genericity_check;
use su3_bethe::lattice::{action_residual, direct_scalar_product, with_chain_rtable, Action};
use su3_bethe::partition_functions::z_residue_gap;
use su3_bethe::scalar_sum::{collision_residue, residue_identity_gap, scalar_product_sum};
use su3_bethe::{Error, RKind, RTable, Rat, Result, SPInput, VarSet};

use crate::case::{CaseFile, Suite};
use crate::report::{CaseReport, CheckResult, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Sum,
    Rec,
    Int1,
    Int3,
    Oracle,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Sum => "sum",
            Route::Rec => "rec",
            Route::Int1 => "int1",
            Route::Int3 => "int3",
            Route::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Command {
    Compute,
    CheckRoutes,
    OracleCompare,
    LimitsCheck,
    Identities,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Compute => "compute",
            Command::CheckRoutes => "check-routes",
            Command::OracleCompare => "oracle-compare",
            Command::LimitsCheck => "limits-check",
            Command::Identities => "identities",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub route: Route,
    pub seed: u64,
    /// Overrides the per-case integral size limit.
    pub max_lm: Option<usize>,
    /// Worker threads; 0 or 1 runs sequentially.
    pub parallel: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { route: Route::Sum, seed: 0, max_lm: None, parallel: 1 }
    }
}

fn integral_options(case: &CaseFile, opts: &RunOptions) -> IntegralOptions {
    IntegralOptions { max_size: opts.max_lm.unwrap_or(case.limits.max_size), ..Default::default() }
}

fn stats_counts(c: &mut CheckResult, prefix: &str, st: &IntegralStats) {
    c.count(format!("{prefix}.residues"), st.residues);
    c.count(format!("{prefix}.skipped"), st.skipped);
    c.count(format!("{prefix}.max_terms"), st.max_terms);
}

fn need_onshell(case: &CaseFile, route: Route) -> Result<()> {
    if case.onshell_b {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("route {} needs on-shell B-data", route.name())))
    }
}

/// The value of one route, recording work counters in `c`.
pub fn eval_route(route: Route, case: &CaseFile, opts: &RunOptions, c: &mut CheckResult) -> Result<Rat> {
    match route {
        Route::Sum => scalar_product_sum(&case.input()?),
        Route::Rec => {
            need_onshell(case, route)?;
            eval_recursion(case.limits.recursion_order, &case.input()?)
        }
        Route::Int1 | Route::Int3 => {
            need_onshell(case, route)?;
            let kind = if route == Route::Int1 { RKind::R1 } else { RKind::R3 };
            let (v, st) = eval_multiple_integral_with(kind, &case.input()?, &integral_options(case, opts))?;
            stats_counts(c, route.name(), &st);
            Ok(v)
        }
        Route::Oracle => direct_scalar_product(&off_shell(case)?, &case.chain_spec()?),
    }
}

fn off_shell(case: &CaseFile) -> Result<SPInput> {
    SPInput::new(
        VarSet::new(case.mu_b.clone()),
        VarSet::new(case.lam_b.clone()),
        VarSet::new(case.lam_c.clone()),
        VarSet::new(case.mu_c.clone()),
        RTable::new(),
    )
}

fn compute(case: &CaseFile, opts: &RunOptions) -> Vec<CheckResult> {
    vec![CheckResult::timed(opts.route.name(), |c| {
        let v = eval_route(opts.route, case, opts, c)?;
        c.value(opts.route.name(), &v);
        Ok(true)
    })]
}

fn check_routes(case: &CaseFile, opts: &RunOptions) -> Vec<CheckResult> {
    vec![CheckResult::timed("routes", |c| {
        for r in [Route::Sum, Route::Rec, Route::Int1, Route::Int3] {
            let v = eval_route(r, case, opts, c)?;
            c.value(r.name(), &v);
        }
        Ok(c.all_equal())
    })]
}

fn oracle_compare(case: &CaseFile) -> Vec<CheckResult> {
    vec![CheckResult::timed("oracle", |c| {
        let chain = case.chain_spec()?;
        let s = off_shell(case)?;
        let direct = direct_scalar_product(&s, &chain)?;
        let sum = scalar_product_sum(&with_chain_rtable(&s, &chain)?)?;
        c.value("oracle", &direct).value("sum", &sum).count("sites", chain.sites()).count("dim", chain.dim());
        c.note = Some("r-values of both sides come from the chain".into());
        Ok(direct == sum)
    })]
}

fn limits_check(case: &CaseFile) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (kind, n, name) in [(LimitKind::MuBToInf, case.m, "mu_b-to-infinity"), (LimitKind::LamBToInf, case.l, "lam_b-to-infinity")] {
        if n == 0 {
            continue;
        }
        out.push(CheckResult::timed(name, |c| {
            let r = infinity_limit_check_with(kind, &case.input()?, case.limits.limit_order)?;
            c.value("lhs", &r.lhs)
                .value("rhs", &r.rhs)
                .value("lhs_sequential", &r.lhs_sequential)
                .value("modified_sequential", &r.modified_sequential)
                .value("slavnov", &r.slavnov)
                .count("n", r.n);
            c.note = Some(format!(
                "calibration: sequential limits scaled by 1/{}! on both sides; dropping the factor on the left only {}",
                r.n,
                if r.unnormalized_agrees() { "also agrees" } else { "disagrees" }
            ));
            Ok(r.passed())
        }));
    }
    out
}

fn case_rng(case: &CaseFile, seed: u64) -> ChaCha8Rng {
    let h = case.id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-60..=60), rng.gen_range(1..=9))
}

/// A point generic with respect to `against`.
fn generic_point(rng: &mut ChaCha8Rng, against: &[Rat]) -> Result<Rat> {
    for _ in 0..10_000 {
        let z = random_rat(rng);
        let mut all = against.to_vec();
        all.push(z.clone());
        if genericity_check(&all).is_empty() {
            return Ok(z);
        }
    }
    Err(Error::Genericity("no generic point found".into()))
}

fn wants(case: &CaseFile, s: Suite) -> bool {
    case.checks.is_empty() || case.checks.contains(&s)
}

fn identities(case: &CaseFile, opts: &RunOptions) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = case_rng(case, opts.seed);
    let (l, m) = (case.l, case.m);
    if wants(case, Suite::Residues) {
        for (kind, n, name) in [(RKind::R1, l, "residue-lambda"), (RKind::R3, m, "residue-mu")] {
            if n > 0 {
                out.push(CheckResult::timed(name, |c| {
                    let g = residue_identity_gap(kind, &case.input()?)?;
                    c.value("gap", &g);
                    Ok(g.is_zero())
                }));
            }
        }
    }
    if wants(case, Suite::ZResidues) {
        for (which, n, name) in [(1u8, l, "z-residue-lambda"), (2u8, m, "z-residue-v")] {
            if n > 0 {
                out.push(CheckResult::timed(name, |c| {
                    let g = z_residue_gap(which, &case.lam_c, &case.mu_b, &case.lam_b, &case.mu_c)?;
                    c.value("gap", &g);
                    Ok(g.is_zero())
                }));
            }
        }
    }
    if wants(case, Suite::Collisions) && l > 0 && m > 0 {
        out.push(CheckResult::timed("collisions", |c| {
            let s = case.input()?;
            let mut ok = true;
            for i in 0..l {
                for j in 0..m {
                    let a = collision_residue(RKind::R1, i, j, &s)?;
                    let b = collision_residue(RKind::R3, i, j, &s)?;
                    ok &= a.is_zero() && b.is_zero();
                    c.value(format!("lam_c{i}~mu_b{j}"), &a).value(format!("mu_c{j}~lam_b{i}"), &b);
                }
            }
            Ok(ok)
        }));
    }
    if wants(case, Suite::Fill) && case.onshell_b {
        let fills = [random_rat(&mut rng), random_rat(&mut rng)];
        for (kind, n, name) in [(RKind::R1, m, "fill-r1-at-mu_b"), (RKind::R3, l, "fill-r3-at-lam_b")] {
            if n == 0 {
                continue;
            }
            out.push(CheckResult::timed(name, |c| {
                let s = case.input()?;
                let mut vals = Vec::new();
                for (k, fill) in [Rat::zero(), fills[0].clone(), fills[1].clone()].into_iter().enumerate() {
                    let o = IntegralOptions { fill: fill.clone(), ..integral_options(case, opts) };
                    let (v, _) = eval_multiple_integral_with(kind, &s, &o)?;
                    c.value(format!("fill{k}"), &fill).value(format!("value{k}"), &v);
                    vals.push(v);
                }
                Ok(vals.iter().all(|v| *v == vals[0]))
            }));
        }
    }
    if wants(case, Suite::Actions) && case.chain.is_some() {
        let z = case.chain_spec().and_then(|_| generic_point(&mut rng, &case.params()));
        for a in Action::ALL {
            let name = format!("action-{}", serde_json::to_value(a).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default());
            out.push(CheckResult::timed(name, |c| {
                let z = z.clone()?;
                let res = action_residual(a, &z, &case.lam_c, &case.mu_c, &case.chain_spec()?)?;
                let nonzero = res.entries.iter().filter(|e| !e.is_zero()).count();
                c.value("z", &z).count("dim", res.entries.len()).count("nonzero", nonzero);
                Ok(nonzero == 0)
            }));
        }
    }
    out
}

/// Runs one command on one case. Genericity is checked before anything else.
pub fn run_case(cmd: Command, case: &CaseFile, opts: &RunOptions) -> CaseReport {
    let violations = case.genericity();
    let mut rep = CaseReport {
        id: case.id.clone(),
        l: case.l,
        m: case.m,
        genericity: violations.iter().map(|v| v.to_string()).collect(),
        ..Default::default()
    };
    if !violations.is_empty() && !case.allow_nongeneric {
        rep.passed = false;
        return rep;
    }
    rep.checks = match cmd {
        Command::Compute => compute(case, opts),
        Command::CheckRoutes => check_routes(case, opts),
        Command::OracleCompare => oracle_compare(case),
        Command::LimitsCheck => limits_check(case),
        Command::Identities => identities(case, opts),
    };
    rep.passed = rep.checks.iter().all(|c| c.passed);
    rep
}

pub fn run(cmd: Command, cases: &[CaseFile], opts: &RunOptions) -> Report {
    let reps: Vec<CaseReport> = if opts.parallel > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(opts.parallel).build() {
            Ok(pool) => pool.install(|| cases.par_iter().map(|c| run_case(cmd, c, opts)).collect()),
            Err(_) => cases.iter().map(|c| run_case(cmd, c, opts)).collect(),
        }
    } else {
        cases.iter().map(|c| run_case(cmd, c, opts)).collect()
    };
    Report::assemble(cmd.name(), reps)
}
