//! Dense exact linear algebra over a [`FieldSpec`].

mod echelon;
mod subspace;

pub(crate) use echelon::TrackedEchelon;
pub use subspace::Subspace;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{MultiPoly, UniPoly};

pub type Vector = Vec<FieldElement>;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged matrix: row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        if let Some(bad) = rows.iter().flatten().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Self::from_rows_unchecked(field, rows, cols))
    }

    pub(crate) fn from_rows_unchecked(field: FieldSpec, rows: Vec<Vector>, cols: usize) -> Self {
        let n = rows.len();
        Matrix { field, rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    /// Integer entries mapped into `field`. Panics on ragged input.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal, minus
    /// the low coefficients in the last column. Its characteristic and
    /// minimal polynomial are `q`.
    pub fn companion(q: &UniPoly) -> Result<Self> {
        if !q.is_monic() {
            return Err(Error::Precondition(format!("companion matrix of non-monic {q}")));
        }
        let n = q.degree().unwrap_or(0);
        let field = q.field();
        let mut m = Self::zeros(field, n, n);
        for i in 1..n {
            m.set(i, i - 1, field.one());
        }
        for i in 0..n {
            m.set(i, n - 1, -&q.coeff(i));
        }
        Ok(m)
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch(field, b.field));
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(m)
    }

    /// Kronecker product: block `(i, j)` is `self[i][j] * other`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut m = Self::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Matrix { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        m.data[idx] = &m.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn pow(&self, mut exp: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form by Gauss-Jordan elimination, with the pivot
    /// column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let y = m.get(r, j);
                    if !y.is_zero() {
                        let x = m.get(i, j) - &(&f * y);
                        m.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Span of the rows.
    pub fn row_space(&self) -> Subspace {
        let (r, pivots) = self.rref();
        Subspace::from_rref(self.field, self.cols, &r, &pivots)
    }

    /// Span of the columns.
    pub fn image(&self) -> Subspace {
        self.transpose().row_space()
    }

    /// Right null space.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors: Vec<Vector> = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect();
        Subspace::span(self.field, self.cols, &vectors).expect("kernel vectors are well-formed")
    }

    /// `det(x I - self)` via reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("charpoly of a non-square matrix".into()));
        }
        let n = self.rows;
        let field = self.field;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            h.swap_rows(i, j + 1);
            h.swap_cols(i, j + 1);
            let inv = h.get(j + 1, j).inv().expect("nonzero pivot");
            for k in j + 2..n {
                let u = h.get(k, j) * &inv;
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = h.get(k, c) - &(&u * h.get(j + 1, c));
                    h.set(k, c, x);
                }
                for r in 0..n {
                    let x = h.get(r, j + 1) + &(&u * h.get(r, k));
                    h.set(r, j + 1, x);
                }
            }
        }
        let x = UniPoly::x(field);
        let mut p: Vec<UniPoly> = vec![UniPoly::one(field)];
        for m in 1..=n {
            let diag = UniPoly::constant(h.get(m - 1, m - 1).clone());
            let mut next = &(&x - &diag) * &p[m - 1];
            let mut t = field.one();
            for i in (1..m).rev() {
                t = &t * h.get(i, i - 1);
                if t.is_zero() {
                    break;
                }
                let c = h.get(i - 1, m - 1) * &t;
                next = &next - &p[i - 1].scale(&c);
            }
            p.push(next);
        }
        Ok(p.pop().expect("nonempty"))
    }

    /// Monic annihilating polynomial of least degree, as the lcm of the
    /// annihilators of the Krylov chains of the unit vectors.
    pub fn minimal_polynomial(&self) -> Result<UniPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("minimal polynomial of a non-square matrix".into()));
        }
        let field = self.field;
        let n = self.rows;
        let mut acc = UniPoly::one(field);
        let mut covered = Subspace::zero(field, n);
        for i in 0..n {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            if covered.contains(&e) {
                continue;
            }
            let mut chain = TrackedEchelon::new(field);
            let mut power = e;
            let mut krylov = Vec::new();
            let annihilator = loop {
                match chain.insert(&power) {
                    Some(comb) => {
                        let k = chain.generators();
                        let mut coeffs: Vec<FieldElement> = comb.iter().map(|c| -c).collect();
                        coeffs.truncate(k);
                        coeffs.push(field.one());
                        break UniPoly::new(field, coeffs)?;
                    }
                    None => {
                        krylov.push(power.clone());
                        power = self.mul_vec(&power);
                    }
                }
            };
            acc = acc.lcm(&annihilator)?;
            covered = covered.sum(&Subspace::span(field, n, &krylov)?)?;
        }
        Ok(acc)
    }
}

/// `q(m)` by Horner's rule.
pub fn eval_uni_at_matrix(q: &UniPoly, m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("evaluation at a non-square matrix".into()));
    }
    if q.field() != m.field() {
        return Err(Error::FieldMismatch(q.field(), m.field()));
    }
    let n = m.rows();
    let mut acc = Matrix::zeros(m.field(), n, n);
    for c in q.coeffs().iter().rev() {
        acc = &acc * m;
        for i in 0..n {
            let x = acc.get(i, i) + c;
            acc.set(i, i, x);
        }
    }
    Ok(acc)
}

/// `q(m_1, ..., m_n)` for pairwise commuting square matrices of one size.
pub fn eval_poly_at_matrix(q: &MultiPoly, ms: &[Matrix]) -> Result<Matrix> {
    if ms.len() != q.nvars() {
        return Err(Error::ArityMismatch { expected: q.nvars(), found: ms.len() });
    }
    let field = q.field();
    let dim = ms.first().map_or(0, Matrix::rows);
    for m in ms {
        if m.field() != field {
            return Err(Error::FieldMismatch(field, m.field()));
        }
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch("matrices of different sizes".into()));
        }
    }
    let mut powers: Vec<Vec<Matrix>> = vec![vec![Matrix::identity(field, dim)]; ms.len()];
    let mut acc = Matrix::zeros(field, dim, dim);
    for (mono, c) in q.terms() {
        let mut term = Matrix::identity(field, dim);
        for (i, &e) in mono.exponents().iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = &powers[i][powers[i].len() - 1] * &ms[i];
                powers[i].push(next);
            }
            if e > 0 {
                term = &term * &powers[i][e as usize];
            }
        }
        acc = &acc + &term.scale(c);
    }
    Ok(acc)
}

/// Matrix text: `[[a,b];[c,d]]`, and `[[]]` for the empty matrix.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 {
            return f.write_str("[[]]");
        }
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{}", self.field, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_multi;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }
    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    /// Leibniz expansion of `det(x I - m)` over polynomial entries.
    fn charpoly_leibniz(m: &Matrix) -> UniPoly {
        let n = m.rows();
        let field = m.field();
        let entry = |i: usize, j: usize| {
            let c = UniPoly::constant(-m.get(i, j));
            if i == j { &c + &UniPoly::x(field) } else { c }
        };
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = UniPoly::zero(field);
        permutations(&mut perm, 0, &mut |p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = UniPoly::one(field);
            for (i, &j) in p.iter().enumerate() {
                term = &term * &entry(i, j);
            }
            total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
        });
        total
    }

    fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            visit(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permutations(p, k + 1, visit);
            p.swap(k, i);
        }
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(q(), 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = Matrix::zeros(q(), 2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rref(), (Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]), vec![0]));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(q(), 3).kernel_basis().is_zero());
        assert_eq!(Matrix::zeros(q(), 3, 3).kernel_basis().dim(), 3);
        let j = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        let k = j.kernel_basis();
        assert_eq!(k.basis(), &[vec![q().one(), q().zero()]]);
    }

    #[test]
    fn charpoly_examples() {
        let x2 = UniPoly::from_i64s(q(), &[0, 0, 1]);
        assert_eq!(Matrix::zeros(q(), 2, 2).charpoly().unwrap(), x2);
        let c = UniPoly::from_i64s(q(), &[3, -1, 0, 2, 1]);
        assert_eq!(Matrix::companion(&c).unwrap().charpoly().unwrap(), c);
        let j = Matrix::from_i64(q(), &[&[1, 1], &[0, 1]]);
        assert_eq!(j.charpoly().unwrap(), UniPoly::from_i64s(q(), &[-1, 1]).pow(2));
        assert!(Matrix::zeros(q(), 2, 3).charpoly().is_err());
        assert!(Matrix::zeros(q(), 0, 0).charpoly().unwrap().is_one());
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(Matrix::zeros(q(), 3, 3).minimal_polynomial().unwrap(), UniPoly::x(q()));
        assert_eq!(
            Matrix::identity(q(), 3).minimal_polynomial().unwrap(),
            UniPoly::from_i64s(q(), &[-1, 1])
        );
        let d = Matrix::from_i64(q(), &[&[0, 0], &[0, 1]]);
        assert_eq!(d.minimal_polynomial().unwrap(), UniPoly::from_i64s(q(), &[0, -1, 1]));
        assert!(Matrix::zeros(q(), 1, 2).minimal_polynomial().is_err());
    }

    #[test]
    fn evaluation_examples() {
        let a = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let t = parse_multi("t", q(), 1).unwrap();
        assert_eq!(eval_poly_at_matrix(&t, &[a.clone()]).unwrap(), a);
        let b = &(&a * &a) + &Matrix::identity(q(), 2);
        let t1t2 = parse_multi("t1*t2", q(), 2).unwrap();
        assert_eq!(eval_poly_at_matrix(&t1t2, &[a.clone(), b.clone()]).unwrap(), &a * &b);
        let c = UniPoly::from_i64s(q(), &[1, 0, 1]);
        let comp = Matrix::companion(&c).unwrap();
        assert!(eval_uni_at_matrix(&c, &comp).unwrap().is_zero());
        assert!(eval_poly_at_matrix(&t1t2, &[a.clone()]).is_err());
    }

    #[test]
    fn rendering() {
        let m = Matrix::from_i64(f(3), &[&[0, -1], &[1, 0]]);
        assert_eq!(m.to_string(), "[[0,2];[1,0]]");
        assert_eq!(Matrix::zeros(q(), 0, 0).to_string(), "[[]]");
    }

    fn matrix_strategy(field: FieldSpec, max_dim: usize) -> impl Strategy<Value = Matrix> {
        (0..=max_dim).prop_flat_map(move |d| {
            proptest::collection::vec(-3i64..4, d * d).prop_map(move |v| {
                let rows: Vec<Vector> =
                    v.chunks(d.max(1)).take(d).map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
                if d == 0 { Matrix::zeros(field, 0, 0) } else { Matrix::from_rows(field, rows).unwrap() }
            })
        })
    }

    fn any_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![Just(q()), Just(f(2)), Just(f(3)), Just(f(5)), Just(f(7))]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn cayley_hamilton(m in any_field().prop_flat_map(|fl| matrix_strategy(fl, 6))) {
            let c = m.charpoly().unwrap();
            prop_assert!(c.is_monic());
            prop_assert_eq!(c.degree().unwrap(), m.rows());
            prop_assert!(eval_uni_at_matrix(&c, &m).unwrap().is_zero());
            let mp = m.minimal_polynomial().unwrap();
            prop_assert!(eval_uni_at_matrix(&mp, &m).unwrap().is_zero());
            prop_assert!(mp.divides(&c).unwrap());
            prop_assert_eq!(mp.squarefree_part().unwrap(), c.squarefree_part().unwrap());
        }

        #[test]
        fn charpoly_matches_leibniz(m in any_field().prop_flat_map(|fl| matrix_strategy(fl, 4))) {
            prop_assert_eq!(m.charpoly().unwrap(), charpoly_leibniz(&m));
        }

        #[test]
        fn rref_and_kernel(m in any_field().prop_flat_map(|fl| matrix_strategy(fl, 5))) {
            let (r, piv) = m.rref();
            prop_assert_eq!(r.rref(), (r.clone(), piv.clone()));
            let k = m.kernel_basis();
            prop_assert_eq!(k.dim(), m.cols() - piv.len());
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).iter().all(FieldElement::is_zero));
            }
        }
    }
}
