use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{group_from_relations, FgAbGroup};
use super::matrix::IntegerMatrix;
use super::snf::smith_form;
use crate::error::{Error, Result};

/// A homomorphism between groups in canonical form. Column `j` of the matrix
/// is the image of the `j`-th domain generator (free generators first, then
/// torsion generators by increasing order) in codomain coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntegerMatrix,
}

impl Homomorphism {
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntegerMatrix) -> Result<Self> {
        if matrix.cols() != domain.generator_count() || matrix.rows() != codomain.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "map {domain} -> {codomain} needs a {}x{} matrix, got {}x{}",
                codomain.generator_count(),
                domain.generator_count(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let f = Self {
            domain,
            codomain,
            matrix,
        };
        f.check_well_defined()?;
        Ok(f)
    }

    pub fn zero(domain: FgAbGroup, codomain: FgAbGroup) -> Self {
        let matrix = IntegerMatrix::zeros(codomain.generator_count(), domain.generator_count());
        Self {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(g: FgAbGroup) -> Self {
        let matrix = IntegerMatrix::identity(g.generator_count());
        Self {
            domain: g.clone(),
            codomain: g,
            matrix,
        }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    fn check_well_defined(&self) -> Result<()> {
        let r = self.domain.free_rank();
        for (i, d) in self.domain.invariant_factors().iter().enumerate() {
            let d = BigInt::from(d.clone());
            let col = self.matrix.column(r + i);
            let image: Vec<BigInt> = col.iter().map(|x| x * &d).collect();
            if !in_codomain_relations(&self.codomain, &image) {
                return Err(Error::IllDefinedHomomorphism(format!(
                    "generator {} of order {d} maps to {col:?}, whose {d}-fold multiple is nonzero",
                    r + i
                )));
            }
        }
        Ok(())
    }

    /// `{x : f(x) = 0}`.
    pub fn kernel(&self) -> FgAbGroup {
        let n_g = self.domain.generator_count();
        let n_h = self.codomain.generator_count();
        let rel_h = self.codomain.relation_columns();
        // [M | -E_H] (x, y) = 0  <=>  M x lies in the codomain relation lattice
        let mut wide = IntegerMatrix::zeros(n_h, n_g + rel_h.len());
        for i in 0..n_h {
            for j in 0..n_g {
                wide[(i, j)] = self.matrix[(i, j)].clone();
            }
            for (j, col) in rel_h.iter().enumerate() {
                wide[(i, n_g + j)] = -col[i].clone();
            }
        }
        let preimage: Vec<Vec<BigInt>> = nullspace(&wide)
            .into_iter()
            .map(|v| v[..n_g].to_vec())
            .collect();
        lattice_quotient(n_g, &preimage, &self.domain.relation_columns())
    }

    /// `f(G)` as an abstract group.
    pub fn image(&self) -> FgAbGroup {
        let n_h = self.codomain.generator_count();
        let rel_h = self.codomain.relation_columns();
        let mut span: Vec<Vec<BigInt>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        span.extend(rel_h.iter().cloned());
        lattice_quotient(n_h, &span, &rel_h)
    }

    /// `H / f(G)`.
    pub fn cokernel(&self) -> FgAbGroup {
        let n_h = self.codomain.generator_count();
        let mut rows: Vec<Vec<BigInt>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        rows.extend(self.codomain.relation_columns());
        let rel = IntegerMatrix::from_columns(n_h, &rows)
            .expect("columns have codomain length")
            .transpose();
        group_from_relations(n_h, &rel).expect("relation width matches generators")
    }
}

pub fn hom_kernel(f: &Homomorphism) -> FgAbGroup {
    f.kernel()
}

pub fn hom_image(f: &Homomorphism) -> FgAbGroup {
    f.image()
}

pub fn hom_cokernel(f: &Homomorphism) -> FgAbGroup {
    f.cokernel()
}

fn in_codomain_relations(h: &FgAbGroup, v: &[BigInt]) -> bool {
    let r = h.free_rank();
    v[..r].iter().all(Zero::is_zero)
        && h
            .invariant_factors()
            .iter()
            .zip(&v[r..])
            .all(|(d, x)| x.is_multiple_of(&BigInt::from(d.clone())))
}

/// Integer basis of `{v : a v = 0}`.
fn nullspace(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_form(a);
    (s.rank()..a.cols()).map(|j| s.v.column(j)).collect()
}

/// Basis of the lattice spanned by `gens` inside `Z^dim`, together with a
/// function giving coordinates of lattice members in that basis.
struct LatticeBasis {
    basis_len: usize,
    u: IntegerMatrix,
    d: Vec<BigInt>,
}

impl LatticeBasis {
    fn new(dim: usize, gens: &[Vec<BigInt>]) -> Self {
        let a = IntegerMatrix::from_columns(dim, gens).expect("generators have lattice dimension");
        // a = u_inv d v_inv, so the span is generated by d_i * u_inv[:, i]
        let s = smith_form(&a);
        let d = s.invariant_factors();
        Self {
            basis_len: d.len(),
            u: s.u,
            d,
        }
    }

    fn coordinates(&self, w: &[BigInt]) -> Vec<BigInt> {
        let uw = self.u.mul_vec(w).expect("vector has lattice dimension");
        debug_assert!(uw[self.basis_len..].iter().all(Zero::is_zero));
        (0..self.basis_len)
            .map(|i| {
                let (q, r) = uw[i].div_rem(&self.d[i]);
                debug_assert!(r.is_zero(), "vector outside the lattice");
                q
            })
            .collect()
    }
}

/// `span(outer) / span(inner)` for lattices in `Z^dim` with `inner ⊆ outer`.
fn lattice_quotient(dim: usize, outer: &[Vec<BigInt>], inner: &[Vec<BigInt>]) -> FgAbGroup {
    let basis = LatticeBasis::new(dim, outer);
    let rows: Vec<Vec<BigInt>> = inner.iter().map(|w| basis.coordinates(w)).collect();
    let rel = IntegerMatrix::from_columns(basis.basis_len, &rows)
        .expect("coordinates have basis length")
        .transpose();
    group_from_relations(basis.basis_len, &rel).expect("relation width matches basis")
}
