//! Artin–Ihara L-functions of edge-free quotients: representations of the
//! Galois group, Artinized matrices, the two- and three-term determinant
//! formulas, and the factorization and divisibility verdicts.

use num_complex::Complex64;

use crate::covering::Covering;
use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::matrix::{complex_linear_pencil, complex_pencil, det_complex, Mat};
use crate::poly::{
    cseries_mul, cseries_reciprocal, divides, round_to_int_poly, rounding_residual, ComplexPoly,
    IntPoly, EPS_DET, EPS_ZERO, ROUND_TOL,
};
use crate::zeta::zeta_gog_two_term;

fn cmat_identity(d: usize) -> Mat<Complex64> {
    Mat::from_fn(d, d, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
}

fn cmat_mul(a: &Mat<Complex64>, b: &Mat<Complex64>) -> Mat<Complex64> {
    assert_eq!(a.cols(), b.rows());
    Mat::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).map(|t| a.at(i, t) * b.at(t, j)).sum()
    })
}

fn cmat_add(a: &Mat<Complex64>, b: &Mat<Complex64>) -> Mat<Complex64> {
    Mat::from_fn(a.rows(), a.cols(), |i, j| a.at(i, j) + b.at(i, j))
}

fn cmat_approx_eq(a: &Mat<Complex64>, b: &Mat<Complex64>, tol: f64) -> bool {
    a.rows() == b.rows()
        && a.cols() == b.cols()
        && (0..a.rows())
            .all(|i| (0..a.cols()).all(|j| (a.at(i, j) - b.at(i, j)).norm() <= tol))
}

fn cmat_trace(a: &Mat<Complex64>) -> Complex64 {
    (0..a.rows()).map(|i| *a.at(i, i)).sum()
}

/// A complex matrix representation of a group action's element set, one
/// matrix per element id, validated as a homomorphism within [`EPS_ZERO`].
#[derive(Clone, Debug)]
pub struct Representation {
    name: String,
    dim: usize,
    matrices: Vec<Mat<Complex64>>,
}

impl Representation {
    /// Builds from explicit matrices for every element.
    pub fn from_element_matrices(
        action: &crate::action::GroupAction,
        matrices: Vec<Mat<Complex64>>,
        name: impl Into<String>,
    ) -> Result<Representation> {
        let name = name.into();
        if matrices.len() != action.order() {
            return Err(Error::InvalidRepresentation(format!(
                "representation {name:?} needs {} matrices, got {}",
                action.order(),
                matrices.len()
            )));
        }
        let dim = matrices[0].rows();
        for m in &matrices {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRepresentation(format!(
                    "representation {name:?} has inconsistent dimensions"
                )));
            }
        }
        let rep = Representation {
            name,
            dim,
            matrices,
        };
        rep.validate(action)?;
        Ok(rep)
    }

    /// Builds from matrices on a generating set, extended through the
    /// multiplication table.
    pub fn from_generator_matrices(
        action: &crate::action::GroupAction,
        generators: &[(usize, Mat<Complex64>)],
        name: impl Into<String>,
    ) -> Result<Representation> {
        let name = name.into();
        let d = action.order();
        let dim = generators
            .first()
            .map(|(_, m)| m.rows())
            .unwrap_or(1);
        let mut matrices: Vec<Option<Mat<Complex64>>> = vec![None; d];
        matrices[0] = Some(cmat_identity(dim));
        for (el, m) in generators {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidRepresentation(format!(
                    "representation {name:?} has inconsistent generator dimensions"
                )));
            }
            if *el >= d {
                return Err(Error::InvalidRepresentation(format!(
                    "generator element {el} out of range"
                )));
            }
            matrices[*el] = Some(m.clone());
        }
        let gen_ids: Vec<usize> = generators.iter().map(|(el, _)| *el).collect();
        loop {
            let mut progressed = false;
            for a in 0..d {
                if matrices[a].is_none() {
                    continue;
                }
                for &g in &gen_ids {
                    let target = action.mul(g, a);
                    if matrices[target].is_none() {
                        let m = cmat_mul(
                            matrices[g].as_ref().unwrap(),
                            matrices[a].as_ref().unwrap(),
                        );
                        matrices[target] = Some(m);
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        let matrices: Vec<Mat<Complex64>> = matrices
            .into_iter()
            .enumerate()
            .map(|(el, m)| {
                m.ok_or_else(|| {
                    Error::InvalidRepresentation(format!(
                        "generators do not reach element {}",
                        action.element_name(el)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Representation::from_element_matrices(action, matrices, name)
    }

    fn validate(&self, action: &crate::action::GroupAction) -> Result<()> {
        if !cmat_approx_eq(&self.matrices[0], &cmat_identity(self.dim), EPS_ZERO) {
            return Err(Error::InvalidRepresentation(format!(
                "representation {:?} does not send the identity to I",
                self.name
            )));
        }
        for a in 0..self.matrices.len() {
            for b in 0..self.matrices.len() {
                let prod = cmat_mul(&self.matrices[a], &self.matrices[b]);
                if !cmat_approx_eq(&prod, &self.matrices[action.mul(a, b)], 1e-8) {
                    return Err(Error::InvalidRepresentation(format!(
                        "representation {:?} is not a homomorphism at ({}, {})",
                        self.name,
                        action.element_name(a),
                        action.element_name(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The one-dimensional all-ones representation.
    pub fn trivial(action: &crate::action::GroupAction) -> Representation {
        Representation {
            name: "trivial".into(),
            dim: 1,
            matrices: vec![cmat_identity(1); action.order()],
        }
    }

    /// The right regular representation: `rho(g)` permutes the element basis
    /// by right multiplication with `g^-1`, so the character is `d` at the
    /// identity and 0 elsewhere.
    pub fn regular(action: &crate::action::GroupAction) -> Representation {
        let d = action.order();
        let matrices = (0..d)
            .map(|g| {
                let ginv = action.inverse_of(g);
                Mat::from_fn(d, d, |row, col| {
                    if action.mul(col, ginv) == row {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::default()
                    }
                })
            })
            .collect();
        Representation {
            name: "regular".into(),
            dim: d,
            matrices,
        }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(self.matrices.len(), other.matrices.len());
        let dim = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                Mat::from_fn(dim, dim, |i, j| {
                    if i < self.dim && j < self.dim {
                        *a.at(i, j)
                    } else if i >= self.dim && j >= self.dim {
                        *b.at(i - self.dim, j - self.dim)
                    } else {
                        Complex64::default()
                    }
                })
            })
            .collect();
        Representation {
            name: format!("{}+{}", self.name, other.name),
            dim,
            matrices,
        }
    }

    /// Conjugated representation `M^-1 rho M` (callers supply both factors).
    pub fn conjugated(
        &self,
        m: &Mat<Complex64>,
        m_inv: &Mat<Complex64>,
        action: &crate::action::GroupAction,
    ) -> Result<Representation> {
        let matrices = self
            .matrices
            .iter()
            .map(|r| cmat_mul(m_inv, &cmat_mul(r, m)))
            .collect();
        Representation::from_element_matrices(action, matrices, format!("{}^M", self.name))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, el: usize) -> &Mat<Complex64> {
        &self.matrices[el]
    }

    pub fn character(&self, el: usize) -> Complex64 {
        cmat_trace(&self.matrices[el])
    }
}

/// The Artinized matrices of a covering at a representation: scalar entries
/// of the vertex- and half-edge-indexed matrices replaced by `d x d` blocks.
#[derive(Clone, Debug)]
pub struct Artinized {
    pub a_rho: Mat<Complex64>,
    pub q_rho: Mat<Complex64>,
    pub c_rho: Mat<Complex64>,
    pub w_rho: Mat<Complex64>,
    /// Total number of +1 eigenvalues over all `rho(F(l))`, legs `l`.
    pub leg_plus: usize,
    /// Total number of -1 eigenvalues.
    pub leg_minus: usize,
}

/// Builds the Artinized adjacency, valency, charge, and half-edge matrices,
/// and counts the leg eigenvalues via traces (each `rho(F(l))` squares to
/// the identity, so its trace is `plus - minus`).
pub fn build_artinized(cov: &Covering, rho: &Representation) -> Result<Artinized> {
    let x = cov.quotient().graph();
    let stabs = cov.quotient().stabilizers().ok_or(Error::MissingStabilizers)?;
    let n = x.vertex_count();
    let k = x.half_edge_count();
    let d = rho.dim();

    let charge_block = |v: usize| -> Mat<Complex64> {
        stabs[v]
            .iter()
            .fold(Mat::from_fn(d, d, |_, _| Complex64::default()), |acc, &el| {
                cmat_add(&acc, rho.matrix(el))
            })
    };
    let charge_blocks: Vec<Mat<Complex64>> = (0..n).map(charge_block).collect();

    let zero = Mat::from_fn(d, d, |_, _| Complex64::default());
    let mut a_blocks: Vec<Vec<Mat<Complex64>>> = vec![vec![zero.clone(); n]; n];
    for h in 0..k {
        let u = x.root(h);
        let v = x.root(x.involution(h));
        a_blocks[u][v] = cmat_add(&a_blocks[u][v], rho.matrix(cov.frobenius_of_half_edge(h)));
    }

    let blockify = |blocks: &dyn Fn(usize, usize) -> Mat<Complex64>, count: usize| {
        Mat::from_fn(count * d, count * d, |i, j| {
            *blocks(i / d, j / d).at(i % d, j % d)
        })
    };

    let a_rho = blockify(&|u, v| a_blocks[u][v].clone(), n);
    let q_rho = Mat::from_fn(n * d, n * d, |i, j| {
        if i == j {
            Complex64::new(x.valency(i / d) as f64, 0.0)
        } else {
            Complex64::default()
        }
    });
    let c_rho = blockify(
        &|u, v| {
            if u == v {
                charge_blocks[u].clone()
            } else {
                zero.clone()
            }
        },
        n,
    );

    let identity = cmat_identity(d);
    let w_rho = Mat::from_fn(k * d, k * d, |i, j| {
        let (h, hp) = (i / d, j / d);
        let far = x.root(x.involution(h));
        if x.root(hp) != far {
            return Complex64::default();
        }
        let frob = rho.matrix(cov.frobenius_of_half_edge(hp));
        let coupling = if hp == x.involution(h) {
            let mut c = charge_blocks[far].clone();
            for t in 0..d {
                *c.at_mut(t, t) -= identity.at(t, t);
            }
            cmat_mul(&c, frob)
        } else {
            cmat_mul(&charge_blocks[far], frob)
        };
        *coupling.at(i % d, j % d)
    });

    let mut leg_plus = 0usize;
    let mut leg_minus = 0usize;
    for h in 0..k {
        if !x.is_leg(h) {
            continue;
        }
        let m = rho.matrix(cov.frobenius_of_half_edge(h));
        if !cmat_approx_eq(&cmat_mul(m, m), &identity, 1e-8) {
            return Err(Error::InvalidRepresentation(format!(
                "rho(F(l)) does not square to the identity at leg {}",
                x.half_edge_name(h)
            )));
        }
        let t = cmat_trace(m);
        let plus = (d as f64 + t.re) / 2.0;
        if t.im.abs() > 1e-6 || (plus - plus.round()).abs() > 1e-6 {
            return Err(Error::InvalidRepresentation(format!(
                "trace of rho(F(l)) is not an integer at leg {}",
                x.half_edge_name(h)
            )));
        }
        leg_plus += plus.round() as usize;
        leg_minus += d - plus.round() as usize;
    }
    debug_assert_eq!(leg_plus + leg_minus, x.leg_count() * d);

    Ok(Artinized {
        a_rho,
        q_rho,
        c_rho,
        w_rho,
        leg_plus,
        leg_minus,
    })
}

/// An L-function reciprocal: the raw complex polynomial, its rounding to an
/// integer polynomial when every coefficient is close enough to an integer,
/// and the worst rounding residual either way.
#[derive(Clone, Debug)]
pub struct LReciprocal {
    pub complex: ComplexPoly,
    pub rounded: Option<IntPoly>,
    pub residual: f64,
}

impl LReciprocal {
    fn from_complex(complex: ComplexPoly) -> LReciprocal {
        let residual = rounding_residual(&complex);
        let rounded = round_to_int_poly(&complex, ROUND_TOL).ok();
        LReciprocal {
            complex,
            rounded,
            residual,
        }
    }

    /// The rounded polynomial, or an error carrying the worst offender.
    pub fn require_integer(&self) -> Result<IntPoly> {
        round_to_int_poly(&self.complex, ROUND_TOL)
    }
}

/// Two-term L-function reciprocal `det(I_kd - W_rho u)`.
pub fn l_function_two_term(cov: &Covering, rho: &Representation) -> Result<LReciprocal> {
    let art = build_artinized(cov, rho)?;
    let det = det_complex(&complex_linear_pencil(&art.w_rho))?;
    Ok(LReciprocal::from_complex(det))
}

/// Three-term L-function reciprocal
/// `(1-u^2)^((b1-1)d) (1+u)^(l+) (1-u)^(l-) det(I_nd - C A u + (C Q - I) u^2)`,
/// with the negative even-prefactor exponent handled by exact division.
pub fn l_function_three_term(cov: &Covering, rho: &Representation) -> Result<LReciprocal> {
    let art = build_artinized(cov, rho)?;
    let x = cov.quotient().graph();
    let d = rho.dim();
    let nd = art.a_rho.rows();
    let ca = cmat_mul(&art.c_rho, &art.a_rho);
    let mut cq_minus_i = cmat_mul(&art.c_rho, &art.q_rho);
    for t in 0..nd {
        *cq_minus_i.at_mut(t, t) -= Complex64::new(1.0, 0.0);
    }
    let det = det_complex(&complex_pencil(&ca, &cq_minus_i))?;
    let with_legs = det
        .mul(&ComplexPoly::from(&IntPoly::from_i64(&[1, 1]).pow(art.leg_plus)))
        .mul(&ComplexPoly::from(&IntPoly::from_i64(&[1, -1]).pow(art.leg_minus)));
    let e = (x.betti() - 1) * d as i64;
    let one_minus_u2 = IntPoly::from_i64(&[1, 0, -1]);
    let result = if e >= 0 {
        with_legs.mul(&ComplexPoly::from(&one_minus_u2.pow(e as usize)))
    } else {
        with_legs.div_exact_by_int(&one_minus_u2.pow((-e) as usize), EPS_DET)?
    };
    Ok(LReciprocal::from_complex(result))
}

/// Outcome of checking the L-function Euler product against the determinant
/// series.
#[derive(Clone, Debug)]
pub struct LEulerReport {
    pub order: usize,
    pub ok: bool,
    pub max_deviation: f64,
    pub primes_used: usize,
}

/// Verifies `L^-1`'s series against the truncated product
/// `prod_q det(I_d - rho(F(Q)) u^len(Q))^-1` over enumerated primes of the
/// quotient, one representative per prime.
pub fn l_euler_verify(
    cov: &Covering,
    rho: &Representation,
    order: usize,
    allow_big: bool,
) -> Result<LEulerReport> {
    let l_inv = l_function_two_term(cov, rho)?;
    let primes = cov.quotient().enumerate_primes(order, allow_big)?;
    let mut product = vec![Complex64::default(); order + 1];
    product[0] = Complex64::new(1.0, 0.0);
    for prime in &primes {
        let len = prime.length();
        if len > order {
            continue;
        }
        let frob = cov.frobenius_of_path(prime.representative())?;
        // det(I_d - rho(F) x), then x = u^len.
        let pencil = complex_linear_pencil(rho.matrix(frob));
        let char_poly = det_complex(&pencil)?;
        let mut factor = vec![Complex64::default(); order + 1];
        for (j, c) in char_poly.coeffs().iter().enumerate() {
            if j * len <= order {
                factor[j * len] = *c;
            }
        }
        let factor_inv = cseries_reciprocal(&factor, order)?;
        product = cseries_mul(&product, &factor_inv, order);
    }
    let series = cseries_reciprocal(
        &(0..=order).map(|i| l_inv.complex.coeff(i)).collect::<Vec<_>>(),
        order,
    )?;
    let scale = series
        .iter()
        .map(|c| c.norm())
        .fold(1.0_f64, f64::max);
    let max_deviation = series
        .iter()
        .zip(&product)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max)
        / scale;
    Ok(LEulerReport {
        order,
        ok: max_deviation <= EPS_DET,
        max_deviation,
        primes_used: primes.len(),
    })
}

/// Outcome of the regular-representation factorization check.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    /// Sum of squared dimensions equals the group order.
    pub dims_ok: bool,
    pub zeta_cover_inv: IntPoly,
    pub zeta_quotient_inv: IntPoly,
    /// `prod L(rho)^(-dim rho)` over the supplied irreducibles.
    pub product_inv: IntPoly,
    pub product_matches: bool,
    /// Quotient of `zeta_cover_inv / zeta_quotient_inv` when divisible.
    pub divisibility_quotient: Option<IntPoly>,
    pub per_rep: Vec<(String, usize, IntPoly)>,
}

impl FactorizationReport {
    pub fn all_ok(&self) -> bool {
        self.dims_ok && self.product_matches && self.divisibility_quotient.is_some()
    }
}

/// Checks `zeta(Y) = prod_rho L(u, rho)^(dim rho)` over a full irreducible
/// list, and the divisibility of `zeta(Y)^-1` by `zeta(X)^-1`.
pub fn factorization_check(cov: &Covering, irreps: &[Representation]) -> Result<FactorizationReport> {
    let d: usize = irreps.iter().map(|r| r.dim() * r.dim()).sum();
    let dims_ok = d == cov.action().order();
    let zeta_cover_inv =
        zeta_gog_two_term(&GraphOfGroups::from_graph(cov.cover_graph().clone()));
    let zeta_quotient_inv = zeta_gog_two_term(cov.quotient());
    let mut product_inv = IntPoly::one();
    let mut per_rep = Vec::new();
    for rho in irreps {
        let l_inv = l_function_two_term(cov, rho)?.require_integer()?;
        product_inv = product_inv.mul(&l_inv.pow(rho.dim()));
        per_rep.push((rho.name().to_string(), rho.dim(), l_inv));
    }
    let product_matches = dims_ok && product_inv == zeta_cover_inv;
    let divisibility_quotient = divides(&zeta_quotient_inv, &zeta_cover_inv)?;
    Ok(FactorizationReport {
        dims_ok,
        zeta_cover_inv,
        zeta_quotient_inv,
        product_inv,
        product_matches,
        divisibility_quotient,
        per_rep,
    })
}
