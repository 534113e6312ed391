//! Dense matrices over `F_q`, Jordan bases for nilpotent elements, and the
//! commutant of a nilpotent Jordan matrix.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::gf::{Field, FqElem};

#[derive(Clone)]
pub struct MatF {
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
    field: Field,
}

impl PartialEq for MatF {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.field == other.field
    }
}

impl Eq for MatF {}

impl Hash for MatF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for MatF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatF {}x{} over F_{}", self.rows, self.cols, self.field.order())?;
        write!(f, "{}", self.to_text())
    }
}

impl MatF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatF { rows, cols, data: vec![FqElem::ZERO; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = MatF::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FqElem::ONE);
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<FqElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|e| e.index() >= field.order()) {
            return Err(Error::Dimension("entry outside the field".into()));
        }
        Ok(MatF { rows, cols, data, field: field.clone() })
    }

    /// Builds from small integer indices, e.g. `[[1, 0], [0, 1]]`.
    pub fn from_rows(field: &Field, rows: &[Vec<u8>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        MatF::from_vec(field, r, c, rows.iter().flatten().map(|&e| FqElem(e)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[FqElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FqElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FqElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FqElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> MatF {
        let mut t = MatF::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatF) -> MatF {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = MatF::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FqElem]) -> Vec<FqElem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(FqElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn add(&self, other: &MatF) -> MatF {
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        MatF { data, ..self.clone() }
    }

    pub fn sub(&self, other: &MatF) -> MatF {
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        MatF { data, ..self.clone() }
    }

    pub fn scale(&self, s: FqElem) -> MatF {
        let f = &self.field;
        MatF { data: self.data.iter().map(|&a| f.mul(a, s)).collect(), ..self.clone() }
    }

    pub fn pow(&self, e: usize) -> MatF {
        (0..e).fold(MatF::identity(&self.field, self.rows), |acc, _| acc.mul(self))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatF {
        let mut m = MatF::zeros(&self.field, rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(a, b, self.get(r, c));
            }
        }
        m
    }

    /// Row-reduces in place (first nonzero pivot); returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = f.inv(self.get(row, col));
            for c in 0..self.cols {
                self.set(row, c, f.mul(self.get(row, c), inv));
            }
            for r in 0..self.rows {
                let factor = self.get(r, col);
                if r != row && !factor.is_zero() {
                    for c in 0..self.cols {
                        let v = f.sub(self.get(r, c), f.mul(factor, self.get(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Determinant by elimination with tracked row swaps.
    pub fn det(&self) -> FqElem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = FqElem::ONE;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return FqElem::ZERO;
            };
            if p != col {
                m.swap_rows(p, col);
                det = f.neg(det);
            }
            let pivot = m.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot);
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if !factor.is_zero() {
                    for c in col..n {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(col, c)));
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<MatF> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = MatF::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, FqElem::ONE);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.submatrix(&(0..n).collect::<Vec<_>>(), &cols))
    }

    /// Basis of `{u : self · u = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<FqElem>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FqElem::ZERO; self.cols];
                v[fc] = FqElem::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// Dimensions of `ker x^i` for `i = 1, 2, ..` until the kernel stops growing.
    pub fn kernel_dims_of_powers(&self) -> Vec<usize> {
        assert!(self.is_square());
        let mut dims = Vec::new();
        let mut power = self.clone();
        let mut prev = 0;
        for _ in 0..self.rows {
            let d = power.nullity();
            if d == prev {
                break;
            }
            dims.push(d);
            prev = d;
            power = power.mul(self);
        }
        dims
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows).is_zero()
    }

    /// Jordan type of a nilpotent matrix, read off its kernel flag.
    pub fn jordan_type(&self) -> Result<Partition> {
        let dims = self.kernel_dims_of_powers();
        if dims.last().copied().unwrap_or(0) != self.rows {
            return Err(Error::NotNilpotent);
        }
        let mut conj = Vec::with_capacity(dims.len());
        let mut prev = 0;
        for d in dims {
            conj.push(d - prev);
            prev = d;
        }
        Ok(Partition::new(conj).expect("kernel increments are non-increasing").conjugate())
    }

    /// Jordan types of a nilpotent matrix on an invariant subspace `U`
    /// (spanned by `span`, not necessarily independent) and on `V/U`.
    pub fn sub_and_quotient_types(&self, span: &[Vec<FqElem>]) -> Result<(Partition, Partition)> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n * span.len());
        for r in 0..n {
            cols.extend(span.iter().map(|u| u[r]));
        }
        let b = MatF::from_vec(&self.field, n, span.len(), cols)?;
        let dim_u = b.rank();
        if self.mul(&b).hstack(&b).rank() != dim_u {
            return Err(Error::Dimension("subspace is not invariant".into()));
        }
        // ranks of x^k on U and on V/U, for k = 0, 1, ...
        let (mut sub, mut quot) = (vec![dim_u], vec![n - dim_u]);
        let mut power = MatF::identity(&self.field, n);
        while sub.last() != Some(&0) || quot.last() != Some(&0) {
            if sub.len() > n {
                return Err(Error::NotNilpotent);
            }
            power = power.mul(self);
            let image = power.mul(&b);
            sub.push(image.rank());
            quot.push(power.hstack(&b).rank() - dim_u);
        }
        let from_ranks =
            |r: &[usize]| Partition::from_unsorted(r.windows(2).map(|w| w[0] - w[1]).collect()).conjugate();
        Ok((from_ranks(&sub), from_ranks(&quot)))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &MatF) -> MatF {
        assert_eq!(self.rows, other.rows, "hstack of matrices with different row counts");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        MatF::from_vec(&self.field, self.rows, cols, data).expect("row lengths add up")
    }

    /// One row per line, base-10 field indices separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<MatF> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            rows.push(parse_vector(field, line, i + 1)?);
        }
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse { line: 0, msg: "ragged matrix rows".into() });
        }
        MatF::from_vec(field, r, c, rows.concat())
    }
}

/// Parses one line of space-separated field indices.
pub fn parse_vector(field: &Field, line: &str, lineno: usize) -> Result<Vec<FqElem>> {
    line.split_whitespace()
        .map(|tok| {
            let v: usize = tok.parse().map_err(|_| Error::Parse { line: lineno, msg: format!("bad entry {tok:?}") })?;
            field.elem(v).ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("entry {v} outside F_{}", field.order()),
            })
        })
        .collect()
}

/// Solution set `{particular + Σ c_k directions[k]}` of a linear system.
#[derive(Clone, Debug)]
pub struct AffineSpace {
    pub particular: Vec<FqElem>,
    pub directions: Vec<Vec<FqElem>>,
    field: Field,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// `q^dim`, saturating.
    pub fn count(&self) -> u128 {
        (self.field.order() as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    pub fn point(&self, coords: &[FqElem]) -> Vec<FqElem> {
        let f = &self.field;
        let mut p = self.particular.clone();
        for (c, d) in coords.iter().zip(&self.directions) {
            if !c.is_zero() {
                for (x, &y) in p.iter_mut().zip(d) {
                    *x = f.add(*x, f.mul(*c, y));
                }
            }
        }
        p
    }

    /// Visits every point (odometer order); refuses more than `budget` points.
    pub fn for_each_point(&self, budget: usize, mut visit: impl FnMut(&[FqElem])) -> Result<()> {
        if self.count() > budget as u128 {
            return Err(Error::BudgetExceeded { budget });
        }
        let f = &self.field;
        let q = f.order();
        let d = self.dim();
        let mut coords = vec![0usize; d];
        let mut p = self.particular.clone();
        loop {
            visit(&p);
            let mut k = 0;
            loop {
                if k == d {
                    return Ok(());
                }
                let old = FqElem(coords[k] as u8);
                coords[k] = (coords[k] + 1) % q;
                let delta = f.sub(FqElem(coords[k] as u8), old);
                for (x, &y) in p.iter_mut().zip(&self.directions[k]) {
                    *x = f.add(*x, f.mul(delta, y));
                }
                if coords[k] != 0 {
                    break;
                }
                k += 1;
            }
        }
    }
}

/// Solves `a · u = b`; `None` when inconsistent.
pub fn solve_affine(a: &MatF, b: &[FqElem]) -> Option<AffineSpace> {
    assert_eq!(a.rows(), b.len());
    let f = a.field().clone();
    let n = a.cols();
    let mut aug = MatF::zeros(&f, a.rows(), n + 1);
    for r in 0..a.rows() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, n, b[r]);
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![FqElem::ZERO; n];
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug.get(row, n);
    }
    let directions = a.nullspace();
    Some(AffineSpace { particular, directions, field: f })
}

/// Accumulates linear equations over a fixed set of unknowns.
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    rows: Vec<Vec<FqElem>>,
    rhs: Vec<FqElem>,
}

impl LinearSystem {
    pub fn new(field: &Field, unknowns: usize) -> Self {
        LinearSystem { field: field.clone(), unknowns, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<FqElem>, rhs: FqElem) {
        debug_assert_eq!(coeffs.len(), self.unknowns);
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    /// Adds `u[var] = value`.
    pub fn fix(&mut self, var: usize, value: FqElem) {
        let mut row = vec![FqElem::ZERO; self.unknowns];
        row[var] = FqElem::ONE;
        self.push(row, value);
    }

    pub fn matrix(&self) -> MatF {
        MatF::from_vec(&self.field, self.rows.len(), self.unknowns, self.rows.concat()).expect("consistent sizes")
    }

    pub fn solve(&self) -> Option<AffineSpace> {
        solve_affine(&self.matrix(), &self.rhs)
    }
}

/// Equations `xg = gx` and `gv = v` on the row-major entries of an `n × n` matrix `g`.
pub fn stabiliser_system(x: &MatF, v: &[FqElem]) -> LinearSystem {
    let n = x.rows();
    let f = x.field();
    let mut sys = LinearSystem::new(f, n * n);
    let comm = commutator_system(x);
    for r in 0..comm.rows() {
        if comm.row(r).iter().any(|e| !e.is_zero()) {
            sys.push(comm.row(r).to_vec(), FqElem::ZERO);
        }
    }
    for r in 0..n {
        let mut row = vec![FqElem::ZERO; n * n];
        row[r * n..(r + 1) * n].copy_from_slice(v);
        sys.push(row, v[r]);
    }
    sys
}

/// Which cone a basis is laid out for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisMode {
    /// `v_{ij}`, `i = 1..l(λ)`, dimension `|λ|`.
    Enhanced,
    /// `w_{ij}`, `i = 1..2l(λ)`, dimension `2|λ|`, with `λ_i = λ_{ī}` past `l(λ)`.
    Exotic,
}

/// Coordinates of a Jordan basis: chain `i` (0-based), level `j` (0-based,
/// so level 0 is the kernel vector and level `len-1` the top of the chain),
/// ordered lexicographically by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisIndex {
    lambda: Partition,
    mode: BasisMode,
    lens: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl BasisIndex {
    pub fn new(lambda: &Partition, mode: BasisMode) -> Self {
        let mut lens = lambda.parts().to_vec();
        if mode == BasisMode::Exotic {
            lens.extend(lambda.parts().iter().rev());
        }
        let mut offsets = Vec::with_capacity(lens.len());
        let mut dim = 0;
        for &l in &lens {
            offsets.push(dim);
            dim += l;
        }
        BasisIndex { lambda: lambda.clone(), mode, lens, offsets, dim }
    }

    pub fn enhanced(lambda: &Partition) -> Self {
        BasisIndex::new(lambda, BasisMode::Enhanced)
    }

    pub fn exotic(lambda: &Partition) -> Self {
        BasisIndex::new(lambda, BasisMode::Exotic)
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mode(&self) -> BasisMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_chains(&self) -> usize {
        self.lens.len()
    }

    pub fn chain_len(&self, i: usize) -> usize {
        self.lens[i]
    }

    pub fn chain_lens(&self) -> &[usize] {
        &self.lens
    }

    #[inline]
    pub fn pos(&self, chain: usize, level: usize) -> usize {
        debug_assert!(level < self.lens[chain]);
        self.offsets[chain] + level
    }

    pub fn top(&self, chain: usize) -> usize {
        self.pos(chain, self.lens[chain] - 1)
    }

    /// Inverse of [`pos`](Self::pos).
    pub fn coords(&self, position: usize) -> (usize, usize) {
        let chain = self.offsets.partition_point(|&o| o <= position) - 1;
        (chain, position - self.offsets[chain])
    }

    /// `ī = 2l(λ) - i + 1` in 0-based form (exotic mode only).
    pub fn mirror(&self, chain: usize) -> usize {
        debug_assert_eq!(self.mode, BasisMode::Exotic);
        self.lens.len() - 1 - chain
    }

    /// Chains in block `I_h` (0-based `h`), ascending.
    pub fn block_chains(&self, h: usize) -> Vec<usize> {
        let l = self.lambda.length();
        let mut start = 0;
        for (k, (_, m)) in self.lambda.exponent_form().into_iter().enumerate() {
            if k == h {
                let mut chains: Vec<usize> = (start..start + m).collect();
                if self.mode == BasisMode::Exotic {
                    chains.extend((start..start + m).rev().map(|i| 2 * l - 1 - i));
                }
                return chains;
            }
            start += m;
        }
        panic!("block {h} out of range");
    }

    pub fn num_blocks(&self) -> usize {
        self.lambda.exponent_form().len()
    }

    /// `x v_{ij} = v_{i,j-1}`, `x v_{i1} = 0`.
    pub fn jordan_matrix(&self, field: &Field) -> MatF {
        let mut x = MatF::zeros(field, self.dim, self.dim);
        for (i, &len) in self.lens.iter().enumerate() {
            for j in 1..len {
                x.set(self.pos(i, j - 1), self.pos(i, j), FqElem::ONE);
            }
        }
        x
    }

    /// Row of the "aligned" coefficient of chain `r` in the image of the top of chain `i`:
    /// `v_{r, min(λ_i, λ_r)}`.
    pub fn aligned_row(&self, r: usize, i: usize) -> usize {
        self.pos(r, self.lens[i].min(self.lens[r]) - 1)
    }

    /// Commutant element with `g v_{i,λ_i} = Σ_r a[r][i] v_{r, min(λ_i, λ_r)}`.
    pub fn from_chain_coefficients(&self, a: &MatF) -> MatF {
        let f = a.field();
        let mut g = MatF::zeros(f, self.dim, self.dim);
        for i in 0..self.num_chains() {
            for r in 0..self.num_chains() {
                let c = a.get(r, i);
                if c.is_zero() {
                    continue;
                }
                let (li, lr) = (self.lens[i], self.lens[r]);
                let top = li.min(lr);
                // level s of chain i lands on level top-(li-s) of chain r
                for s in li.saturating_sub(top)..li {
                    g.set(self.pos(r, top + s - li), self.pos(i, s), c);
                }
            }
        }
        g
    }

    /// Inverse of [`from_chain_coefficients`](Self::from_chain_coefficients) on its image.
    pub fn chain_coefficients(&self, g: &MatF) -> MatF {
        let n = self.num_chains();
        let mut a = MatF::zeros(g.field(), n, n);
        for i in 0..n {
            for r in 0..n {
                a.set(r, i, g.get(self.aligned_row(r, i), self.top(i)));
            }
        }
        a
    }

    /// `(c_{iλ_i}^{rλ_r}(y))_{r,i ∈ chains}`: rows indexed by `r`, columns by `i`.
    pub fn top_block(&self, y: &MatF, chains: &[usize]) -> MatF {
        let rows: Vec<usize> = chains.iter().map(|&r| self.top(r)).collect();
        y.submatrix(&rows, &rows)
    }
}

/// Linear map `y -> xy - yx` as an `n² × n²` matrix on row-major `y`.
pub fn commutator_system(x: &MatF) -> MatF {
    let f = x.field();
    let n = x.rows();
    let mut sys = MatF::zeros(f, n * n, n * n);
    for r in 0..n {
        for c in 0..n {
            let eq = r * n + c;
            for k in 0..n {
                let a = x.get(r, k);
                if !a.is_zero() {
                    let u = k * n + c;
                    sys.set(eq, u, f.add(sys.get(eq, u), a));
                }
                let b = x.get(k, c);
                if !b.is_zero() {
                    let u = r * n + k;
                    sys.set(eq, u, f.sub(sys.get(eq, u), b));
                }
            }
        }
    }
    sys
}

fn vec_to_square(field: &Field, n: usize, v: Vec<FqElem>) -> MatF {
    MatF::from_vec(field, n, n, v).expect("n² entries")
}

pub fn commutant_basis(x: &MatF) -> Vec<MatF> {
    let n = x.rows();
    commutator_system(x).nullspace().into_iter().map(|v| vec_to_square(x.field(), n, v)).collect()
}

pub fn commutant_dim(x: &MatF) -> usize {
    commutator_system(x).nullity()
}

/// The linear conditions (i)-(iii) on `c_{ij}^{rs}(y)` describing the
/// commutant of a Jordan matrix, as rows over row-major `y`.
pub fn jordan_commutant_conditions(basis: &BasisIndex, field: &Field) -> MatF {
    let n = basis.dim();
    let f = field;
    let mut rows: Vec<Vec<FqElem>> = Vec::new();
    let unit = |a: usize| {
        let mut v = vec![FqElem::ZERO; n * n];
        v[a] = FqElem::ONE;
        v
    };
    // c_{ij}^{rs}(y) sits at row (r,s), column (i,j); levels here are 1-based.
    let at = |i: usize, j: usize, r: usize, s: usize| basis.pos(r, s - 1) * n + basis.pos(i, j - 1);
    let chains = basis.num_chains();
    for i in 0..chains {
        let li = basis.chain_len(i);
        for r in 0..chains {
            let lr = basis.chain_len(r);
            for j in 1..=li {
                for s in 1..=lr {
                    if s > j {
                        rows.push(unit(at(i, j, r, s)));
                    }
                    if s == lr && j != li {
                        rows.push(unit(at(i, j, r, s)));
                    }
                    for m in 1..s.min(j) {
                        let mut v = unit(at(i, j, r, s));
                        let u = at(i, j - m, r, s - m);
                        v[u] = f.sub(v[u], FqElem::ONE);
                        rows.push(v);
                    }
                }
            }
        }
    }
    let len = rows.len();
    MatF::from_vec(f, len, n * n, rows.concat()).expect("consistent sizes")
}

/// Basis of the commutant as cut out by the Jordan-basis conditions.
pub fn condition_commutant_basis(basis: &BasisIndex, field: &Field) -> Vec<MatF> {
    let n = basis.dim();
    jordan_commutant_conditions(basis, field)
        .nullspace()
        .into_iter()
        .map(|v| vec_to_square(field, n, v))
        .collect()
}

/// Whether `y` satisfies conditions (i)-(iii) relative to the Jordan matrix `x`.
pub fn commutant_conditions_check(basis: &BasisIndex, x: &MatF, y: &MatF) -> Result<bool> {
    if *x != basis.jordan_matrix(x.field()) {
        return Err(Error::NotJordan(basis.lambda().to_string()));
    }
    let f = x.field();
    let n = basis.dim();
    let flat = y.data();
    let cond = jordan_commutant_conditions(basis, f);
    Ok((0..cond.rows()).all(|r| {
        cond.row(r).iter().zip(flat).fold(FqElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))).is_zero()
    }) && y.rows() == n)
}

/// `det(y) = ∏_h det((c_{iλ_i}^{rλ_r}(y))_{i,r∈I_h})^{l_h}` for `y` in the commutant.
pub fn det_factorization_check(basis: &BasisIndex, x: &MatF, y: &MatF) -> Result<bool> {
    if x.mul(y) != y.mul(x) {
        return Err(Error::NotInCommutant);
    }
    let f = x.field();
    let mut rhs = FqElem::ONE;
    for (h, (l, _)) in basis.lambda().exponent_form().into_iter().enumerate() {
        let block = basis.top_block(y, &basis.block_chains(h));
        rhs = f.mul(rhs, f.pow(block.det(), l as u64));
    }
    Ok(y.det() == rhs)
}
