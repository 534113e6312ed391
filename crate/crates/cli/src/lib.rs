//! Census tables, verification suites and point classification on top of
//! the `nilcone` library.

pub mod report;
pub mod verify;

use std::fmt;

use clap::ValueEnum;
use nilcone::enhanced::{classify, invariant_classify};
use nilcone::exotic::{exotic_classify, exotic_invariant_classify};
use nilcone::groups::DEFAULT_BUDGET;
use nilcone::pointfile::{parse_point_file, PointFile};

pub use report::{census, Census, OrbitReport};
pub use verify::{verify, Check, Status, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Cone {
    Ordinary,
    Enhanced,
    Exotic,
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Symbolic,
    EnhancedBfs,
    ExoticBfs,
    Fini,
    Levi,
    Commutant,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// Largest `n` for symbolic census and the symbolic suite.
pub const SYMBOLIC_MAX_N: usize = 12;
/// Largest state space `q^{n²}` walked by enhanced BFS by default.
pub const ENHANCED_MAX_STATES: u128 = 1 << 16;
/// Largest state space `q^{2n²}` walked by exotic BFS by default.
pub const EXOTIC_MAX_STATES: u128 = 1 << 18;
/// Largest `q^{n²}` for brute-force enhanced stabilisers in the Levi suite.
pub const LEVI_MAX_STATES: u128 = 19683;
/// Largest `n` for the commutant suite.
pub const COMMUTANT_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// State budget for every search.
    pub budget: usize,
    /// Run past the default bounds.
    pub force: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { budget: DEFAULT_BUDGET, force: false }
    }
}

impl Options {
    /// Accepts `ok`, or warns and continues when forced.
    pub(crate) fn bound(&self, ok: bool, what: impl Into<String>) -> Result<(), CliError> {
        let what = what.into();
        match (ok, self.force) {
            (true, _) => Ok(()),
            (false, true) => {
                eprintln!("warning: {what}; continuing because of --force, memory use may be large");
                Ok(())
            }
            (false, false) => Err(CliError::Bound(what)),
        }
    }
}

/// `q^e` when it fits, for comparing state counts against bounds.
pub(crate) fn states(q: usize, e: usize) -> Option<u128> {
    u32::try_from(e).ok().and_then(|e| (q as u128).checked_pow(e))
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments or input files.
    Input(String),
    /// A default bound would be exceeded.
    Bound(String),
    Core(nilcone::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Bound(msg) => write!(f, "{msg} (pass --force to run anyway)"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<nilcone::Error> for CliError {
    fn from(e: nilcone::Error) -> Self {
        CliError::Core(e)
    }
}

/// Classifies the point in a point file by its linear-algebra invariants
/// and reports on its orbit at the file's `q`. Within the default BFS
/// bounds the class is also found by orbit search and `bfs_verified` records
/// whether the two agree.
pub fn orbit_of(text: &str, opts: &Options) -> Result<(Cone, OrbitReport), CliError> {
    match parse_point_file(text)? {
        PointFile::Enhanced(pt) => {
            let q = pt.field().order();
            let bp = invariant_classify(&pt)?;
            let mut report = OrbitReport::enhanced(&bp, &[q])?;
            if states(q, pt.dim() * pt.dim()).is_some_and(|s| s <= ENHANCED_MAX_STATES) {
                report.bfs_verified = Some(classify(&pt, opts.budget)? == bp);
            }
            Ok((Cone::Enhanced, report))
        }
        PointFile::Exotic(pt) => {
            let q = pt.field().order();
            let n = pt.dim() / 2;
            let bp = exotic_invariant_classify(&pt)?;
            let mut report = OrbitReport::exotic(&bp, &[q])?;
            if states(q, 2 * n * n).is_some_and(|s| s <= EXOTIC_MAX_STATES) {
                report.bfs_verified = Some(exotic_classify(&pt, opts.budget)? == bp);
            }
            Ok((Cone::Exotic, report))
        }
    }
}
