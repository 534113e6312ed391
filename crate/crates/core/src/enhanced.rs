//! The enhanced nilpotent cone `V × N` under `GL(V)`: normal forms,
//! brute-force orbits and stabilisers, the map `Ψ` and the Levi section `H`.

use num_bigint::BigInt;

use crate::combinatorics::{enumerate_bipartitions, shape_data, Bipartition, LeviCase, ShapeData};
use crate::error::{Error, Result};
use crate::gf::{Field, FqElem};
use crate::groups::{enumerate_gl, find_in_orbit, orbit_bfs, GeneratorSet, Orbit};
use crate::linalg::{commutant_basis, stabiliser_system, BasisIndex, MatF};
use crate::qcount::gl_order;

/// A pair `(v, x)` with `x` nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedPoint {
    pub v: Vec<FqElem>,
    pub x: MatF,
}

impl EnhancedPoint {
    pub fn new(v: Vec<FqElem>, x: MatF) -> Result<Self> {
        if !x.is_square() || x.rows() != v.len() {
            return Err(Error::Dimension(format!("vector of length {} with a {}x{} matrix", v.len(), x.rows(), x.cols())));
        }
        if !x.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        Ok(EnhancedPoint { v, x })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    /// `g·(v, x) = (gv, gxg⁻¹)`.
    pub fn transform(&self, g: &MatF) -> Result<Self> {
        let inv = g.inverse().ok_or_else(|| Error::Dimension("transforming by a singular matrix".into()))?;
        Ok(EnhancedPoint { v: g.mul_vec(&self.v), x: g.mul(&self.x).mul(&inv) })
    }

    pub fn is_fixed_by(&self, g: &MatF) -> bool {
        g.mul_vec(&self.v) == self.v && g.mul(&self.x) == self.x.mul(g)
    }
}

/// Normal form: `x = J_λ` and `v = Σ_h v_{i(h), j_h}` over blocks with `j_h > 0`.
pub fn representative(bp: &Bipartition, field: &Field) -> EnhancedPoint {
    let shape = shape_data(bp);
    let basis = BasisIndex::enhanced(&shape.lambda);
    let mut v = vec![FqElem::ZERO; basis.dim()];
    for b in shape.blocks.iter().filter(|b| b.mu_part > 0) {
        v[basis.pos(b.first(), b.mu_part - 1)] = FqElem::ONE;
    }
    EnhancedPoint { v, x: basis.jordan_matrix(field) }
}

/// The unreduced normal form `v = Σ_i v_{i, μ_i}`.
pub fn full_representative(bp: &Bipartition, field: &Field) -> EnhancedPoint {
    let lambda = bp.lambda();
    let basis = BasisIndex::enhanced(&lambda);
    let mut v = vec![FqElem::ZERO; basis.dim()];
    for (i, &m) in bp.mu.parts().iter().enumerate() {
        v[basis.pos(i, m - 1)] = FqElem::ONE;
    }
    EnhancedPoint { v, x: basis.jordan_matrix(field) }
}

pub fn generators(field: &Field, n: usize) -> GeneratorSet {
    GeneratorSet::gl(field, n)
}

pub fn orbit(pt: &EnhancedPoint, budget: usize) -> Result<Orbit> {
    orbit_bfs(&pt.v, &pt.x, &generators(pt.field(), pt.dim()), budget)
}

pub(crate) fn exact_quotient(order: BigInt, size: usize, what: &str) -> Result<BigInt> {
    let size = BigInt::from(size);
    if &order % &size != BigInt::from(0) {
        return Err(Error::InexactDivision(what.to_string()));
    }
    Ok(order / size)
}

/// `|GL_n(F_q)| / |orbit|`.
pub fn stabiliser_count(pt: &EnhancedPoint, budget: usize) -> Result<BigInt> {
    let size = orbit(pt, budget)?.size();
    exact_quotient(gl_order(pt.dim()).eval_u64(pt.field().order() as u64), size, "enhanced stabiliser order")
}

/// Stabiliser elements, enumerated as invertible points of the affine space
/// `{g : gx = xg, gv = v}`.
pub fn brute_stabiliser(pt: &EnhancedPoint, budget: usize) -> Result<Vec<MatF>> {
    let n = pt.dim();
    let space = stabiliser_system(&pt.x, &pt.v).solve().expect("the identity is a solution");
    let mut out = Vec::new();
    space.for_each_point(budget, |g| {
        let m = MatF::from_vec(pt.field(), n, n, g.to_vec()).expect("n² entries");
        if m.is_invertible() {
            out.push(m);
        }
    })?;
    Ok(out)
}

/// Stabiliser order by scanning all of `GL_n(F_q)`.
pub fn direct_stabiliser_count(pt: &EnhancedPoint, budget: usize) -> Result<usize> {
    Ok(enumerate_gl(pt.field(), pt.dim(), budget)?.iter().filter(|g| pt.is_fixed_by(g)).count())
}

/// The bipartition whose normal form shares an orbit with `pt`.
pub fn classify(pt: &EnhancedPoint, budget: usize) -> Result<Bipartition> {
    let lambda = pt.x.jordan_type()?;
    let candidates: Vec<Bipartition> =
        enumerate_bipartitions(pt.dim()).into_iter().filter(|bp| bp.lambda() == lambda).collect();
    let targets: Vec<(Vec<FqElem>, MatF)> = candidates
        .iter()
        .map(|bp| {
            let r = representative(bp, pt.field());
            (r.v, r.x)
        })
        .collect();
    match find_in_orbit(&pt.v, &pt.x, &targets, &generators(pt.field(), pt.dim()), budget)? {
        Some(i) => Ok(candidates[i].clone()),
        None => Err(Error::Unclassified),
    }
}

/// Classification without search: `x` has Jordan type `μ` on `E^x v`, the
/// span of `y v` over the commutant `E^x` of `x`, and type `ν` on `V / E^x v`.
pub fn invariant_classify(pt: &EnhancedPoint) -> Result<Bipartition> {
    let lambda = pt.x.jordan_type()?;
    let span: Vec<Vec<FqElem>> = commutant_basis(&pt.x).iter().map(|y| y.mul_vec(&pt.v)).collect();
    let (mu, nu) = pt.x.sub_and_quotient_types(&span)?;
    let bp = Bipartition::new(mu, nu);
    if bp.lambda() != lambda {
        return Err(Error::Unclassified);
    }
    Ok(bp)
}

/// Chains indexing the Levi block of `h`: `I_h`, less `i(h)` when `h ∈ J`.
pub fn levi_chains(shape: &ShapeData, h: usize) -> Vec<usize> {
    let rows = shape.blocks[h].rows.clone();
    if shape.in_j(h) {
        rows.skip(1).collect()
    } else {
        rows.collect()
    }
}

/// `Ψ(g)`: one block `(c_{iλ_i}^{rλ_r}(g))` per `h`.
pub fn psi_image(g: &MatF, shape: &ShapeData, field: &Field) -> Result<Vec<MatF>> {
    let pt = representative(&shape.reconstruct(), field);
    if g.rows() != pt.dim() || !g.is_invertible() || !pt.is_fixed_by(g) {
        return Err(Error::NotStabiliser);
    }
    let basis = BasisIndex::enhanced(&shape.lambda);
    Ok((0..shape.num_blocks()).map(|h| basis.top_block(g, &levi_chains(shape, h))).collect())
}

/// `b(μ;ν) − Σ_h (rank of Levi factor h)²`.
pub fn ker_psi_dim(bp: &Bipartition) -> usize {
    crate::qcount::enhanced_unipotent_dim(bp).expect("Levi ranks never exceed b")
}

/// Brute count of stabiliser elements with `Ψ(g) = 1`.
pub fn ker_psi_count(bp: &Bipartition, field: &Field, budget: usize) -> Result<usize> {
    let pt = representative(bp, field);
    let shape = shape_data(bp);
    let basis = BasisIndex::enhanced(&shape.lambda);
    let n = pt.dim();
    let mut sys = stabiliser_system(&pt.x, &pt.v);
    for h in 0..shape.num_blocks() {
        let chains = levi_chains(&shape, h);
        for &r in &chains {
            for &i in &chains {
                let value = if r == i { FqElem::ONE } else { FqElem::ZERO };
                sys.fix(basis.top(r) * n + basis.top(i), value);
            }
        }
    }
    let space = sys.solve().expect("the identity is a solution");
    let mut count = 0;
    space.for_each_point(budget, |g| {
        if MatF::from_vec(field, n, n, g.to_vec()).expect("n² entries").is_invertible() {
            count += 1;
        }
    })?;
    Ok(count)
}

pub(crate) fn check_assignment(ranks: &[usize], assignment: &[MatF], symplectic: Option<&[MatF]>) -> Result<()> {
    if assignment.len() != ranks.len() {
        return Err(Error::BadAssignment(format!("{} blocks for {} Levi factors", assignment.len(), ranks.len())));
    }
    for (h, (block, &rank)) in assignment.iter().zip(ranks).enumerate() {
        if block.rows() != rank || block.cols() != rank {
            return Err(Error::BadAssignment(format!(
                "block {} is {}x{}, expected {rank}x{rank}",
                h + 1,
                block.rows(),
                block.cols()
            )));
        }
        let ok = match symplectic {
            Some(forms) => block.transpose().mul(&forms[h]).mul(block) == forms[h],
            None => block.is_invertible(),
        };
        if !ok {
            return Err(Error::SingularBlock { h: h + 1 });
        }
    }
    Ok(())
}

/// Chain-coefficient entries shared by `H` and `H̃`: the assigned Levi blocks
/// and the run corrections, for rows in `rows_of(h)`.
pub(crate) fn fill_levi_rows(
    a: &mut MatF,
    shape: &ShapeData,
    h: usize,
    rows: &[usize],
    first_of: impl Fn(usize) -> usize,
    keep: &[usize],
    block: &MatF,
) {
    let f = a.field().clone();
    for (x, &r) in keep.iter().enumerate() {
        for (y, &i) in keep.iter().enumerate() {
            a.set(r, i, block.get(x, y));
        }
    }
    let ih = first_of(h);
    let correction = match shape.levi_case(h) {
        LeviCase::RightRun { t } => Some(first_of(h + t)),
        LeviCase::LeftRun { t } => Some(first_of(h - t)),
        LeviCase::Distinguished | LeviCase::ZeroMu => None,
    };
    if let Some(col) = correction {
        for &r in rows {
            let delta = if r == ih { FqElem::ONE } else { FqElem::ZERO };
            a.set(r, col, f.sub(delta, a.get(r, ih)));
        }
    }
    if shape.in_j(h) {
        a.set(ih, ih, FqElem::ONE);
    }
}

/// The element of `H` with `Ψ`-image `assignment`.
pub fn build_levi_h(bp: &Bipartition, field: &Field, assignment: &[MatF]) -> Result<MatF> {
    let shape = shape_data(bp);
    check_assignment(&shape.levi_ranks(), assignment, None)?;
    let basis = BasisIndex::enhanced(&shape.lambda);
    let l = basis.num_chains();
    let mut a = MatF::zeros(field, l, l);
    for h in 0..shape.num_blocks() {
        let rows: Vec<usize> = shape.blocks[h].rows.clone().collect();
        let keep = levi_chains(&shape, h);
        fill_levi_rows(&mut a, &shape, h, &rows, |k| shape.blocks[k].first(), &keep, &assignment[h]);
    }
    let g = basis.from_chain_coefficients(&a);
    let pt = representative(bp, field);
    if !g.is_invertible() || !pt.is_fixed_by(&g) {
        return Err(Error::NotStabiliser);
    }
    Ok(g)
}

/// All Levi-block assignments, as a cartesian product in lexicographic order.
pub(crate) fn assignments(factors: &[Vec<MatF>]) -> Vec<Vec<MatF>> {
    factors.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect()
    })
}

/// Every element of `H`.
pub fn enumerate_h(bp: &Bipartition, field: &Field, budget: usize) -> Result<Vec<MatF>> {
    let shape = shape_data(bp);
    let factors = shape
        .levi_ranks()
        .iter()
        .map(|&r| enumerate_gl(field, r, budget))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = factors.iter().map(Vec::len).product();
    if total > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    assignments(&factors).iter().map(|asg| build_levi_h(bp, field, asg)).collect()
}
