//! Orbit reports and census tables.

use nilcone::combinatorics::{
    b_invariant, enumerate_bipartitions, enumerate_partitions, shape_data, Bipartition, Partition,
};
use nilcone::gf::make_field;
use nilcone::qcount::{
    enhanced_orbit_size, enhanced_stab_order, enhanced_unipotent_dim, exotic_orbit_size, exotic_stab_order,
    exotic_unipotent_dim, ordinary_orbit_size, ordinary_stab_order, ordinary_unipotent_dim, QPoly,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::{CliError, Cone, Options, SYMBOLIC_MAX_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeviKind {
    Gl,
    Sp,
}

impl LeviKind {
    fn name(self) -> &'static str {
        match self {
            LeviKind::Gl => "GL",
            LeviKind::Sp => "Sp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// `None` for ordinary nilpotent orbits.
    pub mu: Option<Partition>,
    pub nu: Option<Partition>,
    pub lambda: Partition,
    /// Codimension of the orbit: `n² - deg` (enhanced, ordinary) or half of it (exotic).
    pub b: usize,
    /// 1-based block labels.
    pub j: Vec<usize>,
    pub levi: Vec<(LeviKind, usize)>,
    pub unipotent_dim: usize,
    pub orbit_poly: QPoly,
    pub stab_poly: QPoly,
    pub counts: Vec<(usize, BigInt)>,
    pub bfs_verified: Option<bool>,
}

fn eval_all(poly: &QPoly, qs: &[usize]) -> Vec<(usize, BigInt)> {
    qs.iter().map(|&q| (q, poly.eval_u64(q as u64))).collect()
}

impl OrbitReport {
    pub fn ordinary(lambda: &Partition, qs: &[usize]) -> Result<Self, CliError> {
        let orbit_poly = ordinary_orbit_size(lambda)?;
        Ok(OrbitReport {
            mu: None,
            nu: None,
            lambda: lambda.clone(),
            b: lambda.weight() + 2 * lambda.n_invariant(),
            j: Vec::new(),
            levi: lambda.exponent_form().iter().map(|&(_, m)| (LeviKind::Gl, m)).collect(),
            unipotent_dim: ordinary_unipotent_dim(lambda),
            counts: eval_all(&orbit_poly, qs),
            orbit_poly,
            stab_poly: ordinary_stab_order(lambda),
            bfs_verified: None,
        })
    }

    fn from_bipartition(
        bp: &Bipartition,
        kind: LeviKind,
        unipotent_dim: usize,
        orbit_poly: QPoly,
        stab_poly: QPoly,
        qs: &[usize],
    ) -> Self {
        let shape = shape_data(bp);
        OrbitReport {
            mu: Some(bp.mu.clone()),
            nu: Some(bp.nu.clone()),
            lambda: bp.lambda(),
            b: b_invariant(bp),
            j: shape.j_labels(),
            levi: shape.levi_ranks().into_iter().map(|r| (kind, r)).collect(),
            unipotent_dim,
            counts: eval_all(&orbit_poly, qs),
            orbit_poly,
            stab_poly,
            bfs_verified: None,
        }
    }

    pub fn enhanced(bp: &Bipartition, qs: &[usize]) -> Result<Self, CliError> {
        Ok(Self::from_bipartition(
            bp,
            LeviKind::Gl,
            enhanced_unipotent_dim(bp)?,
            enhanced_orbit_size(bp)?,
            enhanced_stab_order(bp)?,
            qs,
        ))
    }

    pub fn exotic(bp: &Bipartition, qs: &[usize]) -> Result<Self, CliError> {
        Ok(Self::from_bipartition(
            bp,
            LeviKind::Sp,
            exotic_unipotent_dim(bp)?,
            exotic_orbit_size(bp)?,
            exotic_stab_order(bp)?,
            qs,
        ))
    }

    pub fn bipartition(&self) -> Option<Bipartition> {
        Some(Bipartition::new(self.mu.clone()?, self.nu.clone()?))
    }

    pub fn to_json(&self) -> Value {
        let parts = |p: &Option<Partition>| p.as_ref().map_or(Value::Null, |p| json!(p.parts()));
        json!({
            "mu": parts(&self.mu),
            "nu": parts(&self.nu),
            "lambda": self.lambda.parts(),
            "b": self.b,
            "J": self.j,
            "levi": self.levi.iter().map(|&(k, r)| json!({"kind": k.name(), "rank": r})).collect::<Vec<_>>(),
            "unipotent_dim": self.unipotent_dim,
            "orbit_poly": poly_json(&self.orbit_poly),
            "stab_poly": poly_json(&self.stab_poly),
            "counts": counts_json(&self.counts),
            "bfs_verified": self.bfs_verified,
        })
    }

    /// Plain-text summary, one field per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(bp) = self.bipartition() {
            out += &format!("bipartition {bp}\n");
        }
        out += &format!("lambda {}\n", self.lambda);
        out += &format!("b {}\n", self.b);
        out += &format!("J {}\n", join(&self.j));
        out += &format!("levi {}\n", self.levi_text());
        out += &format!("unipotent_dim {}\n", self.unipotent_dim);
        out += &format!("orbit_poly {}\n", self.orbit_poly);
        out += &format!("stab_poly {}\n", self.stab_poly);
        for (q, c) in &self.counts {
            out += &format!("count q={q} {c}\n");
        }
        if let Some(agree) = self.bfs_verified {
            out += &format!("bfs_verified {agree}\n");
        }
        out
    }

    fn levi_text(&self) -> String {
        self.levi.iter().map(|&(k, r)| format!("{}{r}", k.name())).collect::<Vec<_>>().join(" ")
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub(crate) fn big_json(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse().expect("integers are valid JSON numbers"))
}

/// Ascending coefficient array.
pub fn poly_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(big_json).collect())
}

fn counts_json(counts: &[(usize, BigInt)]) -> Value {
    Value::Object(counts.iter().map(|(q, c)| (q.to_string(), big_json(c))).collect::<Map<_, _>>())
}

fn poly_text(p: &QPoly) -> String {
    serde_json::to_string(&poly_json(p)).expect("serialising a JSON value")
}

#[derive(Clone, Debug)]
pub struct Census {
    pub cone: Cone,
    pub n: usize,
    pub qs: Vec<usize>,
    pub rows: Vec<OrbitReport>,
    pub total: QPoly,
    /// `q^{n²-n}`, `q^{n²}` or `q^{2n²}`.
    pub expected: QPoly,
}

/// One report per partition or bipartition of `n`, in enumeration order.
pub fn census(cone: Cone, n: usize, qs: &[usize], opts: &Options) -> Result<Census, CliError> {
    opts.bound(n <= SYMBOLIC_MAX_N, format!("census at n={n} exceeds the default bound n <= {SYMBOLIC_MAX_N}"))?;
    for &q in qs {
        make_field(q)?;
    }
    let (rows, expected) = match cone {
        Cone::Ordinary => (
            enumerate_partitions(n).iter().map(|l| OrbitReport::ordinary(l, qs)).collect::<Result<Vec<_>, _>>()?,
            QPoly::monomial(1, n * n - n),
        ),
        Cone::Enhanced => (
            enumerate_bipartitions(n).iter().map(|bp| OrbitReport::enhanced(bp, qs)).collect::<Result<_, _>>()?,
            QPoly::monomial(1, n * n),
        ),
        Cone::Exotic => (
            enumerate_bipartitions(n).iter().map(|bp| OrbitReport::exotic(bp, qs)).collect::<Result<_, _>>()?,
            QPoly::monomial(1, 2 * n * n),
        ),
    };
    let total = rows.iter().map(|r| r.orbit_poly.clone()).sum();
    Ok(Census { cone, n, qs: qs.to_vec(), rows, total, expected })
}

impl Census {
    pub fn matches(&self) -> bool {
        self.total == self.expected
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cone": self.cone.to_string(),
            "n": self.n,
            "q": self.qs,
            "rows": self.rows.iter().map(OrbitReport::to_json).collect::<Vec<_>>(),
            "footer": {
                "total_poly": poly_json(&self.total),
                "expected_poly": poly_json(&self.expected),
                "total_counts": counts_json(&eval_all(&self.total, &self.qs)),
                "expected_counts": counts_json(&eval_all(&self.expected, &self.qs)),
                "match": self.matches(),
            },
        })
    }

    /// Rows followed by `total` and `expected` footer rows.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> =
            ["mu", "nu", "lambda", "b", "J", "levi", "unipotent_dim", "orbit_poly"].map(String::from).to_vec();
        header.extend(self.qs.iter().map(|q| format!("q={q}")));
        let io = |e: csv::Error| CliError::Input(e.to_string());
        w.write_record(&header).map_err(io)?;
        for r in &self.rows {
            let part = |p: &Option<Partition>| p.as_ref().map_or(String::new(), Partition::to_string);
            let mut rec = vec![
                part(&r.mu),
                part(&r.nu),
                r.lambda.to_string(),
                r.b.to_string(),
                join(&r.j),
                r.levi_text(),
                r.unipotent_dim.to_string(),
                poly_text(&r.orbit_poly),
            ];
            rec.extend(r.counts.iter().map(|(_, c)| c.to_string()));
            w.write_record(&rec).map_err(io)?;
        }
        for (label, poly) in [("total", &self.total), ("expected", &self.expected)] {
            let mut rec = vec![label.to_string(), String::new(), String::new(), String::new()];
            rec.extend([String::new(), String::new(), String::new(), poly_text(poly)]);
            rec.extend(self.qs.iter().map(|&q| poly.eval_u64(q as u64).to_string()));
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }
}
