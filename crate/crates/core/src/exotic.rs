//! The exotic nilpotent cone `W × 𝔑₀` under `Sp(W)`, `W = V ⊕ V*`.

use num_bigint::BigInt;

use crate::combinatorics::{enumerate_bipartitions, shape_data, Bipartition, Partition, ShapeData};
use crate::enhanced::{
    assignments, check_assignment, exact_quotient, fill_levi_rows, invariant_classify, EnhancedPoint,
};
use crate::error::{Error, Result};
use crate::gf::{Field, FqElem};
use crate::groups::{find_in_orbit, group_elements, orbit_bfs, GeneratorSet, Orbit};
use crate::linalg::{stabiliser_system, BasisIndex, LinearSystem, MatF};
use crate::qcount::sp_order;

/// `W` with basis `w_{ij}` and the form `⟨(v,f),(v',f')⟩ = f'(v) − f(v')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    basis: BasisIndex,
    gram: MatF,
}

pub fn make_space(lambda: &Partition, field: &Field) -> SymplecticSpace {
    let basis = BasisIndex::exotic(lambda);
    let mut gram = MatF::zeros(field, basis.dim(), basis.dim());
    let minus_one = field.neg(FqElem::ONE);
    for i in 0..lambda.length() {
        let len = basis.chain_len(i);
        for j in 0..len {
            let a = basis.pos(i, j);
            let b = basis.pos(basis.mirror(i), len - 1 - j);
            gram.set(a, b, FqElem::ONE);
            gram.set(b, a, minus_one);
        }
    }
    SymplecticSpace { basis, gram }
}

impl SymplecticSpace {
    pub fn lambda(&self) -> &Partition {
        self.basis.lambda()
    }

    pub fn basis(&self) -> &BasisIndex {
        &self.basis
    }

    pub fn gram(&self) -> &MatF {
        &self.gram
    }

    pub fn field(&self) -> &Field {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `⟨u, u'⟩ = uᵀ·gram·u'`.
    pub fn pair(&self, u: &[FqElem], u2: &[FqElem]) -> FqElem {
        let f = self.field();
        let gu = self.gram.mul_vec(u2);
        u.iter().zip(&gu).fold(FqElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// The form induced on `W_h` in the basis of chain tops `w'_{iλ_i}`, `i ∈ chains`.
    pub fn levi_form(&self, chains: &[usize]) -> MatF {
        let rows: Vec<usize> = chains.iter().map(|&i| self.basis.top(i)).collect();
        let cols: Vec<usize> = chains.iter().map(|&i| self.basis.pos(i, 0)).collect();
        self.gram.submatrix(&rows, &cols)
    }
}

/// `y` nilpotent with `⟨yu, u⟩ = 0` for all `u`, tested by polarisation.
pub fn is_in_n0(y: &MatF, space: &SymplecticSpace) -> bool {
    if y.rows() != space.dim() || !y.is_square() || !y.is_nilpotent() {
        return false;
    }
    let f = space.field();
    // ⟨y e_i, e_j⟩ = (yᵀ·gram)[i][j]
    let m = y.transpose().mul(&space.gram);
    (0..m.rows()).all(|i| m.get(i, i).is_zero() && (i + 1..m.rows()).all(|j| f.add(m.get(i, j), m.get(j, i)).is_zero()))
}

pub fn is_symplectic(g: &MatF, space: &SymplecticSpace) -> bool {
    g.rows() == space.dim() && g.is_square() && g.transpose().mul(&space.gram).mul(g) == space.gram
}

/// A pair `(w, y)` with `y ∈ 𝔑₀` for the form of `space`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExoticPoint {
    pub w: Vec<FqElem>,
    pub y: MatF,
    pub space: SymplecticSpace,
}

impl ExoticPoint {
    pub fn new(w: Vec<FqElem>, y: MatF, space: SymplecticSpace) -> Result<Self> {
        if w.len() != space.dim() || y.rows() != space.dim() || !y.is_square() {
            return Err(Error::Dimension(format!("point of size {} in a space of dimension {}", w.len(), space.dim())));
        }
        if !is_in_n0(&y, &space) {
            return Err(Error::NotInN0);
        }
        Ok(ExoticPoint { w, y, space })
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn transform(&self, g: &MatF) -> Result<Self> {
        if !is_symplectic(g, &self.space) {
            return Err(Error::NotSymplectic);
        }
        let inv = g.inverse().expect("symplectic matrices are invertible");
        Ok(ExoticPoint { w: g.mul_vec(&self.w), y: g.mul(&self.y).mul(&inv), space: self.space.clone() })
    }

    pub fn is_fixed_by(&self, g: &MatF) -> bool {
        g.mul_vec(&self.w) == self.w && g.mul(&self.y) == self.y.mul(g)
    }
}

/// Normal form: `y` the Jordan matrix of `λ ∪ λ` in the `w_{ij}` basis and
/// `w = Σ_h w_{i(h), j_h}` over blocks with `j_h > 0`.
pub fn exotic_representative(bp: &Bipartition, field: &Field) -> ExoticPoint {
    let shape = shape_data(bp);
    let space = make_space(&shape.lambda, field);
    let mut w = vec![FqElem::ZERO; space.dim()];
    for b in shape.blocks.iter().filter(|b| b.mu_part > 0) {
        w[space.basis.pos(b.first(), b.mu_part - 1)] = FqElem::ONE;
    }
    let y = space.basis.jordan_matrix(field);
    ExoticPoint { w, y, space }
}

pub fn sp_generators(space: &SymplecticSpace) -> GeneratorSet {
    GeneratorSet::symplectic(space.field(), &space.gram)
}

pub fn exotic_orbit(pt: &ExoticPoint, budget: usize) -> Result<Orbit> {
    orbit_bfs(&pt.w, &pt.y, &sp_generators(&pt.space), budget)
}

/// `|Sp_2n(F_q)| / |orbit|`.
pub fn exotic_stabiliser_count(pt: &ExoticPoint, budget: usize) -> Result<BigInt> {
    let size = exotic_orbit(pt, budget)?.size();
    let order = sp_order(pt.dim() / 2).eval_u64(pt.field().order() as u64);
    exact_quotient(order, size, "exotic stabiliser order")
}

/// Stabiliser order as the number of symplectic points of `{g : gy = yg, gw = w}`.
pub fn brute_exotic_stabiliser_count(pt: &ExoticPoint, budget: usize) -> Result<usize> {
    count_symplectic(stabiliser_system(&pt.y, &pt.w), &pt.space, budget)
}

fn count_symplectic(sys: LinearSystem, space: &SymplecticSpace, budget: usize) -> Result<usize> {
    let n = space.dim();
    let sol = sys.solve().expect("the identity is a solution");
    let mut count = 0;
    sol.for_each_point(budget, |g| {
        if is_symplectic(&MatF::from_vec(space.field(), n, n, g.to_vec()).expect("n² entries"), space) {
            count += 1;
        }
    })?;
    Ok(count)
}

/// The bipartition whose normal form shares an `Sp(W)`-orbit with `pt`.
pub fn exotic_classify(pt: &ExoticPoint, budget: usize) -> Result<Bipartition> {
    let lambda = pt.space.lambda().clone();
    let candidates: Vec<Bipartition> =
        enumerate_bipartitions(lambda.weight()).into_iter().filter(|bp| bp.lambda() == lambda).collect();
    let targets: Vec<(Vec<FqElem>, MatF)> = candidates
        .iter()
        .map(|bp| {
            let r = exotic_representative(bp, pt.field());
            (r.w, r.y)
        })
        .collect();
    match find_in_orbit(&pt.w, &pt.y, &targets, &sp_generators(&pt.space), budget)? {
        Some(i) => Ok(candidates[i].clone()),
        None => Err(Error::Unclassified),
    }
}

/// Classification without search: the `GL(W)`-class of `(w, y)` is
/// `(μ∪μ; ν∪ν)`, which determines `(μ;ν)`.
pub fn exotic_invariant_classify(pt: &ExoticPoint) -> Result<Bipartition> {
    let doubled = invariant_classify(&EnhancedPoint::new(pt.w.clone(), pt.y.clone())?)?;
    let mu = doubled.mu.halve_multiplicities().ok_or(Error::Unclassified)?;
    let nu = doubled.nu.halve_multiplicities().ok_or(Error::Unclassified)?;
    Ok(Bipartition::new(mu, nu))
}

/// Chains of `I_h` in `W` (first-half rows and their mirrors), ascending.
pub fn block_chains(space: &SymplecticSpace, h: usize) -> Vec<usize> {
    space.basis.block_chains(h)
}

/// `I_h`, less `i(h)` and `j(h) = ī(h)` when `h ∈ J`.
pub fn levi_chains_tilde(shape: &ShapeData, space: &SymplecticSpace, h: usize) -> Vec<usize> {
    let chains = block_chains(space, h);
    if shape.in_j(h) {
        let ih = shape.blocks[h].first();
        let jh = space.basis.mirror(ih);
        chains.into_iter().filter(|&c| c != ih && c != jh).collect()
    } else {
        chains
    }
}

/// Induced forms for every Levi block, in block order.
pub fn levi_forms(shape: &ShapeData, space: &SymplecticSpace) -> Vec<MatF> {
    (0..shape.num_blocks()).map(|h| space.levi_form(&levi_chains_tilde(shape, space, h))).collect()
}

/// `Ψ̃(g)`: one block `(b_{iλ_i}^{rλ_r}(g))` per `h`.
pub fn psi_tilde_image(g: &MatF, shape: &ShapeData, space: &SymplecticSpace) -> Result<Vec<MatF>> {
    let pt = exotic_representative(&shape.reconstruct(), space.field());
    if !is_symplectic(g, space) || !pt.is_fixed_by(g) {
        return Err(Error::NotStabiliser);
    }
    Ok((0..shape.num_blocks()).map(|h| space.basis.top_block(g, &levi_chains_tilde(shape, space, h))).collect())
}

pub fn ker_psi_tilde_dim(bp: &Bipartition) -> usize {
    crate::qcount::exotic_unipotent_dim(bp).expect("Levi ranks never exceed the stabiliser dimension")
}

/// Brute count of stabiliser elements with `Ψ̃(g) = 1`.
pub fn ker_psi_tilde_count(bp: &Bipartition, field: &Field, budget: usize) -> Result<usize> {
    let pt = exotic_representative(bp, field);
    let shape = shape_data(bp);
    let n = pt.dim();
    let basis = &pt.space.basis;
    let mut sys = stabiliser_system(&pt.y, &pt.w);
    for h in 0..shape.num_blocks() {
        let chains = levi_chains_tilde(&shape, &pt.space, h);
        for &r in &chains {
            for &i in &chains {
                let value = if r == i { FqElem::ONE } else { FqElem::ZERO };
                sys.fix(basis.top(r) * n + basis.top(i), value);
            }
        }
    }
    count_symplectic(sys, &pt.space, budget)
}

/// The element of `H̃` with `Ψ̃`-image `assignment`; the `s`-entries in the
/// rows `j(h)`, `h ∈ J`, are solved from `gᵀ·gram·g = gram` and `gw = w`.
pub fn build_levi_htilde(bp: &Bipartition, field: &Field, assignment: &[MatF]) -> Result<MatF> {
    let shape = shape_data(bp);
    let pt = exotic_representative(bp, field);
    let space = &pt.space;
    let basis = &space.basis;
    let ranks: Vec<usize> = (0..shape.num_blocks()).map(|h| levi_chains_tilde(&shape, space, h).len()).collect();
    check_assignment(&ranks, assignment, Some(&levi_forms(&shape, space)))?;

    let chains = basis.num_chains();
    let mut a = MatF::zeros(field, chains, chains);
    let mut unknowns = Vec::new();
    for h in 0..shape.num_blocks() {
        let rows = block_chains(space, h);
        let keep = levi_chains_tilde(&shape, space, h);
        fill_levi_rows(&mut a, &shape, h, &rows, |k| shape.blocks[k].first(), &keep, &assignment[h]);
        if shape.in_j(h) {
            let jh = basis.mirror(shape.blocks[h].first());
            a.set(jh, jh, FqElem::ONE);
            unknowns.extend((0..chains).filter(|i| !rows.contains(i)).map(|i| (jh, i)));
        }
    }

    if !unknowns.is_empty() {
        solve_s_entries(bp, &pt, &mut a, &unknowns)?;
    }
    let g = basis.from_chain_coefficients(&a);
    if !is_symplectic(&g, space) || !pt.is_fixed_by(&g) {
        return Err(Error::Completion(bp.to_string(), "not a symplectic stabiliser after solving"));
    }
    Ok(g)
}

/// Residuals of the symplectic and stabilisation equations, flattened.
fn residual(pt: &ExoticPoint, a: &MatF) -> Vec<FqElem> {
    let g = pt.space.basis.from_chain_coefficients(a);
    let form = g.transpose().mul(&pt.space.gram).mul(&g).sub(&pt.space.gram);
    let f = pt.field();
    let fixed = g.mul_vec(&pt.w).iter().zip(&pt.w).map(|(&x, &y)| f.sub(x, y)).collect::<Vec<_>>();
    form.data().iter().copied().chain(fixed).collect()
}

/// The residual is affine in the `s`-entries (they pair only with the
/// unit rows `i(h)`), so one solve per assignment determines them.
fn solve_s_entries(bp: &Bipartition, pt: &ExoticPoint, a: &mut MatF, unknowns: &[(usize, usize)]) -> Result<()> {
    let f = pt.field().clone();
    let base = residual(pt, a);
    let columns: Vec<Vec<FqElem>> = unknowns
        .iter()
        .map(|&(r, i)| {
            let mut probe = a.clone();
            probe.set(r, i, FqElem::ONE);
            residual(pt, &probe).iter().zip(&base).map(|(&x, &y)| f.sub(x, y)).collect()
        })
        .collect();
    let mut sys = LinearSystem::new(&f, unknowns.len());
    for (row, &b) in base.iter().enumerate() {
        sys.push(columns.iter().map(|c| c[row]).collect(), f.neg(b));
    }
    let sol = sys.solve().ok_or_else(|| Error::Completion(bp.to_string(), "inconsistent"))?;
    if sol.dim() != 0 {
        return Err(Error::Completion(bp.to_string(), "underdetermined"));
    }
    for (&(r, i), &s) in unknowns.iter().zip(&sol.particular) {
        a.set(r, i, s);
    }
    Ok(())
}

/// Every element of `H̃`.
pub fn enumerate_htilde(bp: &Bipartition, field: &Field, budget: usize) -> Result<Vec<MatF>> {
    let shape = shape_data(bp);
    let space = make_space(&shape.lambda, field);
    let factors = levi_forms(&shape, &space)
        .iter()
        .map(|form| group_elements(&GeneratorSet::symplectic(field, form), budget))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = factors.iter().map(Vec::len).product();
    if total > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    assignments(&factors).iter().map(|asg| build_levi_htilde(bp, field, asg)).collect()
}

/// `(v, x) ↦ ((v, 0), (x, xᵗ))`, with `xᵗ` acting on `V*` written in the
/// `w_{ij}` coordinates of the second half.
pub fn embed_enhanced(pt: &EnhancedPoint) -> Result<ExoticPoint> {
    let lambda = pt.x.jordan_type()?;
    let field = pt.field();
    let space = make_space(&lambda, field);
    let basis = &space.basis;
    let n = pt.dim();
    let l = lambda.length();
    // v*_{r,s} sits at w_{r̄, λ_r − s + 1}
    let dual: Vec<usize> = (0..n)
        .map(|p| {
            let (r, s) = basis.coords(p);
            basis.pos(2 * l - 1 - r, lambda.parts()[r] - 1 - s)
        })
        .collect();
    let mut y = MatF::zeros(field, 2 * n, 2 * n);
    let mut w = vec![FqElem::ZERO; 2 * n];
    for a in 0..n {
        w[a] = pt.v[a];
        for b in 0..n {
            y.set(a, b, pt.x.get(a, b));
            y.set(dual[a], dual[b], pt.x.get(b, a));
        }
    }
    ExoticPoint::new(w, y, space)
}
