//! Evolution algebras given by a structure matrix in a natural basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldError, Scalar};
use crate::linalg::{self, Matrix, Subspace};

/// Coordinates in the natural basis.
pub type Element = Vec<Scalar>;

/// An evolution algebra with natural basis `e_1..e_n` and
/// `e_i^2 = sum_k a[i][k] e_k`, `e_i e_j = 0` for `i != j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EvolutionAlgebra {
    field: Field,
    dim: usize,
    a: Vec<Scalar>,
}

impl EvolutionAlgebra {
    pub fn new(field: Field, rows: Vec<Vec<Scalar>>) -> Result<EvolutionAlgebra> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch);
        }
        let a: Vec<Scalar> = rows.into_iter().flatten().collect();
        if a.iter().any(|x| x.field() != field) {
            return Err(FieldError::FieldMismatch.into());
        }
        Ok(EvolutionAlgebra { field, dim: n, a })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Result<EvolutionAlgebra> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        EvolutionAlgebra::new(field, rows)
    }

    pub fn zero(field: Field, n: usize) -> EvolutionAlgebra {
        EvolutionAlgebra { field, dim: n, a: vec![field.zero(); n * n] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn constant(&self, i: usize, k: usize) -> &Scalar {
        &self.a[i * self.dim + k]
    }

    pub fn set_constant(&mut self, i: usize, k: usize, value: Scalar) {
        assert_eq!(value.field(), self.field);
        self.a[i * self.dim + k] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.a[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Matrix {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Scalar::is_zero)
    }

    /// Indices `k != i` with `a[i][k] != 0`.
    pub fn support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(move |&k| !self.constant(i, k).is_zero())
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        let mut v = self.zero_element();
        v[i] = self.field.one();
        v
    }

    pub fn zero_element(&self) -> Element {
        vec![self.field.zero(); self.dim]
    }

    /// `e_i^2`.
    pub fn basis_square(&self, i: usize) -> Element {
        self.row(i).to_vec()
    }

    fn check_element(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        if x.iter().any(|s| s.field() != self.field) {
            return Err(FieldError::FieldMismatch.into());
        }
        Ok(())
    }

    /// `xy`, with `(xy)_k = sum_i x_i y_i a[i][k]`.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let mut z = self.zero_element();
        for i in 0..self.dim {
            if x[i].is_zero() || y[i].is_zero() {
                continue;
            }
            let w = &x[i] * &y[i];
            for (k, zk) in z.iter_mut().enumerate() {
                let c = self.constant(i, k);
                if !c.is_zero() {
                    *zk = &*zk + &(&w * c);
                }
            }
        }
        z
    }

    /// `x e_j = x_j e_j^2`.
    pub(crate) fn mul_basis(&self, x: &[Scalar], j: usize) -> Element {
        if x[j].is_zero() {
            return self.zero_element();
        }
        self.row(j).iter().map(|c| &x[j] * c).collect()
    }

    pub fn square(&self, x: &[Scalar]) -> Result<Element> {
        self.multiply(x, x)
    }

    /// Left-normed principal power: `x^1 = x`, `x^(k+1) = x^k x`.
    pub fn principal_power(&self, x: &[Scalar], k: u32) -> Result<Element> {
        self.check_element(x)?;
        if k == 0 {
            return Err(Error::InternalConsistency("principal powers start at 1".into()));
        }
        let mut p = x.to_vec();
        for _ in 1..k {
            p = self.mul(&p, x);
        }
        Ok(p)
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Element> {
        let l = self.multiply(&self.multiply(x, y)?, z)?;
        let r = self.multiply(x, &self.multiply(y, z)?)?;
        Ok(sub(&l, &r))
    }

    /// `span { uv : u in U, v in V }`.
    pub fn product_subspace(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        for s in [u, v] {
            if s.ambient() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: s.ambient() });
            }
            if s.field() != self.field {
                return Err(FieldError::FieldMismatch.into());
            }
        }
        let mut products = Vec::new();
        for x in u.basis() {
            for y in v.basis() {
                let p = self.mul(x, y);
                if p.iter().any(|c| !c.is_zero()) {
                    products.push(p);
                }
            }
        }
        Subspace::span(self.field, self.dim, &products)
    }

    /// `E^k` with `E^1 = E` and `E^(k+1) = E^k E`.
    pub fn power_subspace(&self, k: u32) -> Subspace {
        let mut p = Subspace::full(self.field, self.dim);
        for _ in 1..k {
            let mut products = Vec::new();
            for x in p.basis() {
                for j in 0..self.dim {
                    if x[j].is_zero() || self.is_zero_row(j) {
                        continue;
                    }
                    products.push(self.mul_basis(x, j));
                }
            }
            p = Subspace::span(self.field, self.dim, &products).expect("products stay in the algebra");
            if p.is_zero() {
                break;
            }
        }
        p
    }

    /// `E^2 E^2`.
    pub fn plenary_square(&self) -> Subspace {
        let e2 = self.power_subspace(2);
        self.product_subspace(&e2, &e2).expect("same algebra")
    }

    /// Structure matrix in a new natural basis given in old coordinates.
    pub fn rebase(&self, basis: &[Element]) -> Result<EvolutionAlgebra> {
        if basis.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: basis.len() });
        }
        for v in basis {
            self.check_element(v)?;
        }
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.mul(&basis[i], &basis[j]).iter().any(|c| !c.is_zero()) {
                    return Err(Error::NotNaturalBasis);
                }
            }
        }
        let p = linalg::transpose(basis);
        let pinv = linalg::inverse(self.field, &p)?;
        let rows = basis.iter().map(|f| linalg::mat_vec(self.field, &pinv, &self.mul(f, f))).collect();
        EvolutionAlgebra::new(self.field, rows)
    }

    /// The structure matrix restricted to `indices`, in the given order.
    /// Only meaningful when `span{e_i : i in indices}` is a subalgebra.
    pub fn restrict(&self, indices: &[usize]) -> EvolutionAlgebra {
        let rows = indices.iter().map(|&i| indices.iter().map(|&k| self.constant(i, k).clone()).collect()).collect();
        EvolutionAlgebra::new(self.field, rows).expect("square restriction")
    }

    pub fn is_closed_on(&self, indices: &[usize]) -> bool {
        indices.iter().all(|&i| self.support(i).all(|k| indices.contains(&k)))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(parts: &[EvolutionAlgebra]) -> Result<EvolutionAlgebra> {
        let field = parts.first().ok_or(Error::ShapeMismatch)?.field;
        if parts.iter().any(|p| p.field != field) {
            return Err(FieldError::FieldMismatch.into());
        }
        let n: usize = parts.iter().map(|p| p.dim).sum();
        let mut out = EvolutionAlgebra::zero(field, n);
        let mut off = 0;
        for p in parts {
            for i in 0..p.dim {
                for k in 0..p.dim {
                    out.a[(off + i) * n + off + k] = p.constant(i, k).clone();
                }
            }
            off += p.dim;
        }
        Ok(out)
    }
}

impl fmt::Debug for EvolutionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvolutionAlgebra({}; ", self.field)?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, " | ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, ")")
    }
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Element {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Element {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &Scalar, x: &[Scalar]) -> Element {
    x.iter().map(|a| c * a).collect()
}

pub fn is_zero(x: &[Scalar]) -> bool {
    x.iter().all(Scalar::is_zero)
}

pub fn format_element(x: &[Scalar]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
