//! Verification suites. Each suite returns one check per compared quantity,
//! in bipartition order.

use std::collections::HashSet;

use nilcone::combinatorics::{enumerate_bipartitions, enumerate_partitions, shape_data, Bipartition, Partition};
use nilcone::enhanced::{self, build_levi_h, enumerate_h, ker_psi_count, psi_image, representative};
use nilcone::exotic::{
    self, build_levi_htilde, enumerate_htilde, exotic_orbit, exotic_representative, is_symplectic,
    ker_psi_tilde_count, ker_psi_tilde_dim, make_space, psi_tilde_image, sp_generators,
};
use nilcone::gf::{make_field, Field, FqElem};
use nilcone::groups::{group_closure, Orbit};
use nilcone::linalg::{
    commutant_basis, commutant_conditions_check, condition_commutant_basis, det_factorization_check, BasisIndex,
    MatF,
};
use nilcone::qcount::{
    enhanced_orbit_size, enhanced_stab_order, exotic_orbit_size, exotic_stab_order, gl_order, ordinary_orbit_size,
    ordinary_stab_order, sp_order, QPoly,
};
use nilcone::Error;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::{
    states, CliError, Options, Suite, COMMUTANT_MAX_N, ENHANCED_MAX_STATES, EXOTIC_MAX_STATES, LEVI_MAX_STATES,
    SYMBOLIC_MAX_N,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this input; does not count as a failure.
    Skip,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub observed: String,
    pub expected: String,
}

impl Check {
    fn compare(name: impl Into<String>, observed: impl ToString, expected: impl ToString) -> Self {
        let (observed, expected) = (observed.to_string(), expected.to_string());
        let status = if observed == expected { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, observed, expected }
    }

    fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::compare(name, ok, true)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub n: usize,
    pub q: usize,
    pub checks: Vec<Check>,
    /// Suite-specific totals, in insertion order.
    pub summary: Vec<(&'static str, Value)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.to_string(),
            "n": self.n,
            "q": self.q,
            "pass": self.passed(),
            "summary": Value::Object(self.summary.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<Map<_, _>>()),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.name(),
                "observed": c.observed,
                "expected": c.expected,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let summary: Vec<String> = self.summary.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!("{verdict} {} n={} q={} {}\n", self.suite, self.n, self.q, summary.join(" "));
        for c in &self.checks {
            out += &format!("{} {}: observed {} expected {}\n", c.status.name(), c.name, c.observed, c.expected);
        }
        out
    }
}

pub fn verify(suite: Suite, n: usize, q: usize, opts: &Options) -> Result<VerifyReport, CliError> {
    let (checks, summary) = match suite {
        Suite::Symbolic => symbolic(n, opts)?,
        Suite::EnhancedBfs => enhanced_bfs(n, q, opts)?,
        Suite::ExoticBfs => exotic_bfs(n, q, opts)?,
        Suite::Fini => fini(n, q, opts)?,
        Suite::Levi => levi(n, q, opts)?,
        Suite::Commutant => commutant(n, q, opts)?,
    };
    Ok(VerifyReport { suite, n, q, checks, summary })
}

type SuiteResult = Result<(Vec<Check>, Vec<(&'static str, Value)>), CliError>;

/// Orbit sums and `stab × orbit = group order` for every size up to `n`.
fn symbolic(n: usize, opts: &Options) -> SuiteResult {
    opts.bound(n <= SYMBOLIC_MAX_N, format!("symbolic suite at n={n} exceeds the default bound n <= {SYMBOLIC_MAX_N}"))?;
    let per_size: Vec<Vec<Check>> = (0..=n)
        .into_par_iter()
        .map(|k| -> Result<Vec<Check>, CliError> {
            let mut bad = Vec::new();
            let (mut enh, mut exo, mut ord) = (QPoly::zero(), QPoly::zero(), QPoly::zero());
            for bp in enumerate_bipartitions(k) {
                let (eo, xo) = (enhanced_orbit_size(&bp)?, exotic_orbit_size(&bp)?);
                if &eo * &enhanced_stab_order(&bp)? != gl_order(k) {
                    bad.push(format!("enhanced {bp}"));
                }
                if &xo * &exotic_stab_order(&bp)? != sp_order(k) {
                    bad.push(format!("exotic {bp}"));
                }
                enh = enh + eo;
                exo = exo + xo;
            }
            for lambda in enumerate_partitions(k) {
                let o = ordinary_orbit_size(&lambda)?;
                if &o * &ordinary_stab_order(&lambda) != gl_order(k) {
                    bad.push(format!("ordinary {lambda}"));
                }
                ord = ord + o;
            }
            Ok(vec![
                Check::compare(format!("enhanced orbit sum n={k}"), enh, QPoly::monomial(1, k * k)),
                Check::compare(format!("exotic orbit sum n={k}"), exo, QPoly::monomial(1, 2 * k * k)),
                Check::compare(format!("ordinary orbit sum n={k}"), ord, QPoly::monomial(1, k * k - k)),
                Check::compare(format!("stab x orbit = group order n={k}"), bad.join(" "), ""),
            ])
        })
        .collect::<Result<_, _>>()?;
    let checks: Vec<Check> = per_size.into_iter().flatten().collect();
    Ok((checks, vec![("sizes", json!(n + 1))]))
}

fn bfs_bound(opts: &Options, cone: &str, n: usize, q: usize, e: usize, max: u128) -> Result<(), CliError> {
    opts.bound(
        states(q, e).is_some_and(|s| s <= max),
        format!("{cone} BFS at n={n} q={q} walks q^{e} states, over the default bound {max}"),
    )
}

/// Per-orbit checks against the closed form, then disjointness and the total.
fn orbit_checks(
    bps: &[Bipartition],
    orbits: &[Orbit],
    expected: impl Fn(&Bipartition) -> Result<BigInt, CliError>,
    total_expected: BigInt,
) -> SuiteResult {
    let mut checks = Vec::new();
    let mut union = HashSet::new();
    let mut total = 0usize;
    for (bp, orbit) in bps.iter().zip(orbits) {
        checks.push(Check::compare(format!("orbit {bp}"), orbit.size(), expected(bp)?));
        total += orbit.size();
        union.extend(orbit.keys().iter().copied());
    }
    checks.push(Check::compare("orbits disjoint (size of union)", union.len(), total));
    checks.push(Check::compare("total", total, &total_expected));
    Ok((checks, vec![("orbits", json!(bps.len())), ("total", json!(total))]))
}

fn enhanced_bfs(n: usize, q: usize, opts: &Options) -> SuiteResult {
    bfs_bound(opts, "enhanced", n, q, n * n, ENHANCED_MAX_STATES)?;
    let f = make_field(q)?;
    let bps = enumerate_bipartitions(n);
    let orbits: Vec<Orbit> =
        bps.par_iter().map(|bp| enhanced::orbit(&representative(bp, &f), opts.budget)).collect::<Result<_, _>>()?;
    let expected = |bp: &Bipartition| Ok(enhanced_orbit_size(bp)?.eval_u64(q as u64));
    orbit_checks(&bps, &orbits, expected, BigInt::from(q).pow((n * n) as u32))
}

fn exotic_bfs(n: usize, q: usize, opts: &Options) -> SuiteResult {
    bfs_bound(opts, "exotic", n, q, 2 * n * n, EXOTIC_MAX_STATES)?;
    let f = make_field(q)?;
    let bps = enumerate_bipartitions(n);
    let orbits: Vec<Orbit> = bps
        .par_iter()
        .map(|bp| exotic_orbit(&exotic_representative(bp, &f), opts.budget))
        .collect::<Result<_, _>>()?;
    let expected = |bp: &Bipartition| Ok(exotic_orbit_size(bp)?.eval_u64(q as u64));
    let (mut checks, summary) = orbit_checks(&bps, &orbits, expected, BigInt::from(q).pow((2 * n * n) as u32))?;
    if n > 0 {
        let space = make_space(&enumerate_partitions(n)[0], &f);
        let closure = group_closure(&sp_generators(&space), opts.budget)?;
        checks.push(Check::compare(format!("transvection closure = |Sp_{}|", 2 * n), closure, sp_order(n).eval_u64(q as u64)));
    }
    Ok((checks, summary))
}

/// Exotic orbits over `F_q` against enhanced orbits over `F_{q²}`.
fn fini(n: usize, q: usize, opts: &Options) -> SuiteResult {
    bfs_bound(opts, "exotic", n, q, 2 * n * n, EXOTIC_MAX_STATES)?;
    let f = make_field(q)?;
    let f2 = make_field(q * q)?;
    let bps = enumerate_bipartitions(n);
    let pairs: Vec<(Orbit, Orbit)> = bps
        .par_iter()
        .map(|bp| -> Result<_, Error> {
            let exo = exotic_orbit(&exotic_representative(bp, &f), opts.budget)?;
            let enh = enhanced::orbit(&representative(bp, &f2), opts.budget)?;
            Ok((exo, enh))
        })
        .collect::<Result<_, _>>()?;
    let mut checks = Vec::new();
    for (bp, (exo, enh)) in bps.iter().zip(&pairs) {
        checks.push(Check::compare(
            format!("polynomial {bp}"),
            exotic_orbit_size(bp)?,
            enhanced_orbit_size(bp)?.substitute_square(),
        ));
        checks.push(Check::compare(format!("orbit {bp} (exotic q={q} vs enhanced q={})", q * q), exo.size(), enh.size()));
    }
    Ok((checks, vec![("orbits", json!(bps.len()))]))
}

fn enhanced_levi(bp: &Bipartition, f: &Field, budget: usize) -> Result<Vec<Check>, CliError> {
    let pt = representative(bp, f);
    let shape = shape_data(bp);
    let h = enumerate_h(bp, f, budget)?;
    let kernel = ker_psi_count(bp, f, budget)?;
    let stab = enhanced::brute_stabiliser(&pt, budget)?.len();
    let mut images = HashSet::new();
    let mut section = true;
    for g in &h {
        let image = psi_image(g, &shape, f)?;
        section &= pt.is_fixed_by(g) && build_levi_h(bp, f, &image)? == *g;
        images.insert(image);
    }
    let levi: BigInt = shape.levi_ranks().iter().map(|&r| gl_order(r).eval_u64(f.order() as u64)).product();
    Ok(vec![
        Check::compare(format!("enhanced |H||ker Psi| {bp}"), h.len() * kernel, stab),
        Check::holds(format!("enhanced H stabilises and is a section {bp}"), section),
        Check::compare(format!("enhanced Psi(H) {bp}"), images.len(), levi),
    ])
}

fn exotic_levi(bp: &Bipartition, f: &Field, budget: usize) -> Result<Vec<Check>, CliError> {
    let q = f.order();
    let pt = exotic_representative(bp, f);
    let shape = shape_data(bp);
    let kernel = ker_psi_tilde_count(bp, f, budget)?;
    let stab = exotic::exotic_stabiliser_count(&pt, budget)?;
    let levi: BigInt = shape.levi_ranks().iter().map(|&r| sp_order(r).eval_u64(q as u64)).product();
    let mut checks = vec![
        Check::compare(format!("exotic |ker Psi~| {bp}"), kernel, BigInt::from(q).pow(ker_psi_tilde_dim(bp) as u32)),
        Check::compare(format!("exotic |ker Psi~| x |Levi| {bp}"), BigInt::from(kernel) * &levi, &stab),
    ];
    match enumerate_htilde(bp, f, budget) {
        Ok(h) => {
            let mut section = true;
            for g in &h {
                section &= is_symplectic(g, &pt.space)
                    && pt.is_fixed_by(g)
                    && build_levi_htilde(bp, f, &psi_tilde_image(g, &shape, &pt.space)?)? == *g;
            }
            checks.push(Check::compare(format!("exotic |H~||ker Psi~| {bp}"), h.len() * kernel, &stab));
            checks.push(Check::holds(format!("exotic H~ symplectic, stabilises, is a section {bp}"), section));
        }
        Err(Error::Completion(_, why)) => checks.push(Check {
            name: format!("exotic H~ {bp}"),
            status: Status::Skip,
            observed: format!("symplectic completion {why}"),
            expected: "completion".into(),
        }),
        Err(e) => return Err(e.into()),
    }
    Ok(checks)
}

fn levi(n: usize, q: usize, opts: &Options) -> SuiteResult {
    opts.bound(
        states(q, n * n).is_some_and(|s| s <= LEVI_MAX_STATES),
        format!("Levi suite at n={n} q={q} exceeds the default bound q^(n^2) <= {LEVI_MAX_STATES}"),
    )?;
    bfs_bound(opts, "exotic", n, q, 2 * n * n, EXOTIC_MAX_STATES)?;
    let f = make_field(q)?;
    let bps = enumerate_bipartitions(n);
    let per_bp: Vec<Vec<Check>> = bps
        .par_iter()
        .map(|bp| -> Result<_, CliError> {
            let mut checks = enhanced_levi(bp, &f, opts.budget)?;
            checks.extend(exotic_levi(bp, &f, opts.budget)?);
            Ok(checks)
        })
        .collect::<Result<_, _>>()?;
    let checks: Vec<Check> = per_bp.into_iter().flatten().collect();
    let skipped = checks.iter().filter(|c| c.status == Status::Skip).count();
    Ok((checks, vec![("bipartitions", json!(bps.len())), ("skipped", json!(skipped))]))
}

const DET_SAMPLES: usize = 100;

fn commutant(n: usize, q: usize, opts: &Options) -> SuiteResult {
    opts.bound(n <= COMMUTANT_MAX_N, format!("commutant suite at n={n} exceeds the default bound n <= {COMMUTANT_MAX_N}"))?;
    let f = make_field(q)?;
    let lambdas = enumerate_partitions(n);
    let per_lambda: Vec<Vec<Check>> = lambdas
        .par_iter()
        .enumerate()
        .map(|(k, lambda)| commutant_checks(lambda, &f, 0x5eed + k as u64))
        .collect::<Result<_, _>>()?;
    Ok((per_lambda.into_iter().flatten().collect(), vec![("partitions", json!(lambdas.len()))]))
}

fn commutant_checks(lambda: &Partition, f: &Field, seed: u64) -> Result<Vec<Check>, CliError> {
    let basis = BasisIndex::enhanced(lambda);
    let x = basis.jordan_matrix(f);
    let by_conditions = condition_commutant_basis(&basis, f);
    let by_commuting = commutant_basis(&x);
    let expected = lambda.weight() + 2 * lambda.n_invariant();
    let commute = by_conditions.iter().all(|y| x.mul(y) == y.mul(&x));
    let mut conditions = true;
    for y in &by_commuting {
        conditions &= commutant_conditions_check(&basis, &x, y)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = basis.dim();
    let mut factorised = 0;
    for _ in 0..DET_SAMPLES {
        let y = by_conditions.iter().fold(MatF::zeros(f, dim, dim), |acc, b| {
            acc.add(&b.scale(FqElem(rng.gen_range(0..f.order()) as u8)))
        });
        factorised += det_factorization_check(&basis, &x, &y)? as usize;
    }
    Ok(vec![
        Check::compare(format!("condition commutant dim {lambda}"), by_conditions.len(), expected),
        Check::compare(format!("commuting matrices dim {lambda}"), by_commuting.len(), expected),
        Check::holds(format!("condition solutions commute {lambda}"), commute),
        Check::holds(format!("commuting matrices satisfy conditions {lambda}"), conditions),
        Check::compare(format!("determinant factorisation {lambda}"), factorised, DET_SAMPLES),
    ])
}
