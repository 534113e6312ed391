//! Generators of `GL_n(F_q)` and `Sp_2n(F_q)`, and breadth-first orbit
//! enumeration for the action `g·(v, x) = (gv, gxg⁻¹)`.

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldDesc, FqElem};
use crate::linalg::MatF;

/// Default cap on the number of states a single search may visit.
pub const DEFAULT_BUDGET: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `I + c·E_{row,col}`, `row ≠ col`.
    Elementary { row: usize, col: usize, c: FqElem },
    /// The identity with `c` at `(index, index)`.
    Scale { index: usize, c: FqElem },
    /// `u ↦ u + c⟨u,a⟩a`, stored as `I + c·a·φᵀ` with `φ = gram·a`.
    Transvection { a: Vec<FqElem>, phi: Vec<FqElem>, c: FqElem },
}

impl Generator {
    pub fn matrix(&self, field: &Field, dim: usize) -> MatF {
        let mut g = MatF::identity(field, dim);
        match self {
            Generator::Elementary { row, col, c } => g.set(*row, *col, *c),
            Generator::Scale { index, c } => g.set(*index, *index, *c),
            Generator::Transvection { a, phi, c } => {
                for r in 0..dim {
                    for s in 0..dim {
                        let v = field.add(g.get(r, s), field.mul(*c, field.mul(a[r], phi[s])));
                        g.set(r, s, v);
                    }
                }
            }
        }
        g
    }

    pub fn act_vec(&self, f: &FieldDesc, v: &mut [FqElem]) {
        match self {
            Generator::Elementary { row, col, c } => v[*row] = f.add(v[*row], f.mul(*c, v[*col])),
            Generator::Scale { index, c } => v[*index] = f.mul(v[*index], *c),
            Generator::Transvection { a, phi, c } => {
                let t = f.mul(*c, dot(f, phi, v));
                if !t.is_zero() {
                    for (x, &ai) in v.iter_mut().zip(a) {
                        *x = f.add(*x, f.mul(t, ai));
                    }
                }
            }
        }
    }

    /// `m ← g·m` for a row-major `n × n` matrix.
    pub fn left_mul(&self, f: &FieldDesc, m: &mut [FqElem], n: usize) {
        match self {
            Generator::Elementary { row, col, c } => {
                for k in 0..n {
                    m[row * n + k] = f.add(m[row * n + k], f.mul(*c, m[col * n + k]));
                }
            }
            Generator::Scale { index, c } => {
                for k in 0..n {
                    m[index * n + k] = f.mul(m[index * n + k], *c);
                }
            }
            Generator::Transvection { a, phi, c } => {
                // m + c·a·(φᵀm)
                for k in 0..n {
                    let t = f.mul(*c, (0..n).fold(FqElem::ZERO, |acc, r| f.add(acc, f.mul(phi[r], m[r * n + k]))));
                    if !t.is_zero() {
                        for r in 0..n {
                            m[r * n + k] = f.add(m[r * n + k], f.mul(t, a[r]));
                        }
                    }
                }
            }
        }
    }

    /// `m ← m·g⁻¹`.
    fn right_mul_inverse(&self, f: &FieldDesc, m: &mut [FqElem], n: usize) {
        match self {
            Generator::Elementary { row, col, c } => {
                for k in 0..n {
                    m[k * n + col] = f.sub(m[k * n + col], f.mul(*c, m[k * n + row]));
                }
            }
            Generator::Scale { index, c } => {
                let ci = f.inv(*c);
                for k in 0..n {
                    m[k * n + index] = f.mul(m[k * n + index], ci);
                }
            }
            Generator::Transvection { a, phi, c } => {
                // m - c·(m a)·φᵀ
                for k in 0..n {
                    let row = &mut m[k * n..(k + 1) * n];
                    let t = f.mul(*c, dot(f, row, a));
                    if !t.is_zero() {
                        for (x, &p) in row.iter_mut().zip(phi) {
                            *x = f.sub(*x, f.mul(t, p));
                        }
                    }
                }
            }
        }
    }

    /// `m ← g·m·g⁻¹`.
    pub fn conjugate(&self, f: &FieldDesc, m: &mut [FqElem], n: usize) {
        self.left_mul(f, m, n);
        self.right_mul_inverse(f, m, n);
    }
}

fn dot(f: &FieldDesc, a: &[FqElem], b: &[FqElem]) -> FqElem {
    a.iter().zip(b).fold(FqElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    field: Field,
    dim: usize,
    gens: Vec<Generator>,
}

impl GeneratorSet {
    /// Elementary transvections `I + cE_{ij}` (`c ≠ 0`) plus `diag(g, 1, .., 1)`.
    pub fn gl(field: &Field, n: usize) -> Self {
        let mut gens = Vec::new();
        for row in 0..n {
            for col in 0..n {
                if row != col {
                    gens.extend(field.units().map(|c| Generator::Elementary { row, col, c }));
                }
            }
        }
        if n > 0 && field.order() > 2 {
            gens.push(Generator::Scale { index: 0, c: field.primitive_element() });
        }
        GeneratorSet { field: field.clone(), dim: n, gens }
    }

    /// Symplectic transvections along every vector with at most two nonzero
    /// coordinates (first one normalised to 1), for every `c ≠ 0`.
    pub fn symplectic(field: &Field, gram: &MatF) -> Self {
        let dim = gram.rows();
        let mut vectors = Vec::new();
        for i in 0..dim {
            let mut a = vec![FqElem::ZERO; dim];
            a[i] = FqElem::ONE;
            vectors.push(a.clone());
            for j in i + 1..dim {
                for b in field.units() {
                    let mut a2 = a.clone();
                    a2[j] = b;
                    vectors.push(a2);
                }
            }
        }
        let mut gens = Vec::new();
        for a in vectors {
            let phi = gram.mul_vec(&a);
            for c in field.units() {
                gens.push(Generator::Transvection { a: a.clone(), phi: phi.clone(), c });
            }
        }
        GeneratorSet { field: field.clone(), dim, gens }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn matrices(&self) -> Vec<MatF> {
        self.gens.iter().map(|g| g.matrix(&self.field, self.dim)).collect()
    }
}

/// Packs a vector and a square matrix into one `u128` of base-`q` digits.
#[derive(Clone, Debug)]
pub struct StateCodec {
    q: usize,
    bits: Option<u32>,
    vec_len: usize,
    dim: usize,
}

impl StateCodec {
    pub fn new(q: usize, vec_len: usize, dim: usize) -> Result<Self> {
        let digits = vec_len + dim * dim;
        let fits = (q as f64).log2() * digits as f64 <= 127.999;
        if !fits {
            return Err(Error::StateTooWide { digits, q });
        }
        let bits = q.is_power_of_two().then(|| q.trailing_zeros());
        Ok(StateCodec { q, bits, vec_len, dim })
    }

    pub fn encode(&self, vec: &[FqElem], mat: &[FqElem]) -> u128 {
        let mut key = 0u128;
        let digits = vec.iter().chain(mat);
        match self.bits {
            Some(b) => digits.for_each(|d| key = (key << b) | d.0 as u128),
            None => digits.for_each(|d| key = key * self.q as u128 + d.0 as u128),
        }
        key
    }

    pub fn decode(&self, mut key: u128) -> (Vec<FqElem>, Vec<FqElem>) {
        let total = self.vec_len + self.dim * self.dim;
        let mut digits = vec![FqElem::ZERO; total];
        for d in digits.iter_mut().rev() {
            match self.bits {
                Some(b) => {
                    *d = FqElem((key & ((1u128 << b) - 1)) as u8);
                    key >>= b;
                }
                None => {
                    *d = FqElem((key % self.q as u128) as u8);
                    key /= self.q as u128;
                }
            }
        }
        let mat = digits.split_off(self.vec_len);
        (digits, mat)
    }
}

/// How generators act on a packed state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Action {
    /// `(v, x) ↦ (gv, gxg⁻¹)`.
    Point,
    /// `m ↦ gm` (vector part unused).
    LeftRegular,
}

/// An enumerated orbit with constant-time membership.
#[derive(Clone, Debug)]
pub struct Orbit {
    codec: StateCodec,
    keys: FxHashSet<u128>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.keys.len()
    }

    pub fn contains(&self, vec: &[FqElem], mat: &MatF) -> bool {
        vec.len() == self.codec.vec_len
            && mat.rows() == self.codec.dim
            && self.keys.contains(&self.codec.encode(vec, mat.data()))
    }

    pub fn keys(&self) -> &FxHashSet<u128> {
        &self.keys
    }
}

enum SearchOutcome {
    Complete(FxHashSet<u128>),
    Hit(usize),
}

fn search(
    start: u128,
    codec: &StateCodec,
    gens: &GeneratorSet,
    action: Action,
    budget: usize,
    targets: Option<&FxHashMap<u128, usize>>,
) -> Result<SearchOutcome> {
    let f: &FieldDesc = &gens.field;
    let n = codec.dim;
    if let Some(&t) = targets.and_then(|t| t.get(&start)) {
        return Ok(SearchOutcome::Hit(t));
    }
    let mut seen = FxHashSet::default();
    seen.insert(start);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let next: Vec<u128> = frontier
            .par_iter()
            .flat_map_iter(|&key| {
                let (vec, mat) = codec.decode(key);
                let seen = &seen;
                gens.gens.iter().filter_map(move |g| {
                    let mut v = vec.clone();
                    let mut m = mat.clone();
                    match action {
                        Action::Point => {
                            g.act_vec(f, &mut v);
                            g.conjugate(f, &mut m, n);
                        }
                        Action::LeftRegular => g.left_mul(f, &mut m, n),
                    }
                    let k = codec.encode(&v, &m);
                    (!seen.contains(&k)).then_some(k)
                })
            })
            .collect();
        frontier.clear();
        for k in next {
            if seen.insert(k) {
                if let Some(&t) = targets.and_then(|t| t.get(&k)) {
                    return Ok(SearchOutcome::Hit(t));
                }
                frontier.push(k);
            }
        }
        if seen.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
    }
    Ok(SearchOutcome::Complete(seen))
}

fn check_shapes(vec: &[FqElem], mat: &MatF, gens: &GeneratorSet) -> Result<()> {
    if mat.rows() != gens.dim || mat.cols() != gens.dim || !(vec.is_empty() || vec.len() == gens.dim) {
        return Err(Error::Dimension(format!(
            "point of size {}/{}x{} for generators of degree {}",
            vec.len(),
            mat.rows(),
            mat.cols(),
            gens.dim
        )));
    }
    Ok(())
}

/// Orbit of `(vec, mat)` under `g·(v, x) = (gv, gxg⁻¹)`.
pub fn orbit_bfs(vec: &[FqElem], mat: &MatF, gens: &GeneratorSet, budget: usize) -> Result<Orbit> {
    check_shapes(vec, mat, gens)?;
    let codec = StateCodec::new(gens.field.order(), vec.len(), gens.dim)?;
    let start = codec.encode(vec, mat.data());
    match search(start, &codec, gens, Action::Point, budget, None)? {
        SearchOutcome::Complete(keys) => Ok(Orbit { codec, keys }),
        SearchOutcome::Hit(_) => unreachable!("no targets supplied"),
    }
}

/// Searches the orbit of `(vec, mat)` for the first of `targets`; returns its index.
pub fn find_in_orbit(
    vec: &[FqElem],
    mat: &MatF,
    targets: &[(Vec<FqElem>, MatF)],
    gens: &GeneratorSet,
    budget: usize,
) -> Result<Option<usize>> {
    check_shapes(vec, mat, gens)?;
    let codec = StateCodec::new(gens.field.order(), vec.len(), gens.dim)?;
    let map: FxHashMap<u128, usize> =
        targets.iter().enumerate().map(|(i, (v, m))| (codec.encode(v, m.data()), i)).collect();
    let start = codec.encode(vec, mat.data());
    match search(start, &codec, gens, Action::Point, budget, Some(&map))? {
        SearchOutcome::Complete(_) => Ok(None),
        SearchOutcome::Hit(i) => Ok(Some(i)),
    }
}

/// Order of the group generated by `gens`.
pub fn group_closure(gens: &GeneratorSet, budget: usize) -> Result<usize> {
    let codec = StateCodec::new(gens.field.order(), 0, gens.dim)?;
    let id = MatF::identity(&gens.field, gens.dim);
    match search(codec.encode(&[], id.data()), &codec, gens, Action::LeftRegular, budget, None)? {
        SearchOutcome::Complete(keys) => Ok(keys.len()),
        SearchOutcome::Hit(_) => unreachable!("no targets supplied"),
    }
}

/// Elements of the group generated by `gens`, in increasing key order.
pub fn group_elements(gens: &GeneratorSet, budget: usize) -> Result<Vec<MatF>> {
    let codec = StateCodec::new(gens.field.order(), 0, gens.dim)?;
    let id = MatF::identity(&gens.field, gens.dim);
    let SearchOutcome::Complete(keys) =
        search(codec.encode(&[], id.data()), &codec, gens, Action::LeftRegular, budget, None)?
    else {
        unreachable!("no targets supplied")
    };
    let mut keys: Vec<u128> = keys.into_iter().collect();
    keys.sort_unstable();
    keys.into_iter()
        .map(|k| MatF::from_vec(&gens.field, gens.dim, gens.dim, codec.decode(k).1))
        .collect()
}

/// Every invertible `n × n` matrix, by exhaustive scan.
pub fn enumerate_gl(field: &Field, n: usize, budget: usize) -> Result<Vec<MatF>> {
    let q = field.order();
    let total = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; n * n];
    'outer: loop {
        let m = MatF::from_vec(field, n, n, digits.iter().map(|&d| FqElem(d as u8)).collect())?;
        if m.is_invertible() {
            out.push(m);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    Ok(out)
}
