//! The zeta determinant formulas and Euler-product verification.
//!
//! All outputs are reciprocals: the zeta function itself is not a polynomial,
//! but its reciprocal is, and the truncated series of the zeta function is
//! recovered on demand. The two-term formula is `det(I_k - W u)` over the
//! half-edge adjacency matrix; the three-term formula is
//! `(1 - u^2)^(b1 - 1) (1 + u)^l det(I_n - C A u + (C Q - I_n) u^2)`, where a
//! negative prefactor exponent is an exact polynomial division.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::Graph;
use crate::matrix::{det_int, int_linear_pencil, int_pencil, Mat};
use crate::poly::{div_exact, euler_product_from_counts, series_reciprocal, IntPoly};

/// Reciprocal zeta function of a graph without legs, by the three-term
/// determinant formula. Graphs with legs are handled by the graph-of-groups
/// formulas with unit charges.
pub fn zeta_graph(graph: &Graph) -> Result<IntPoly> {
    if graph.leg_count() > 0 {
        return Err(Error::InvalidGraph(
            "the three-term graph formula requires a graph without legs; \
             use the graph-of-groups formulas with unit charges"
                .into(),
        ));
    }
    let a = graph.adjacency_matrix();
    let q = graph.valency_matrix();
    let n = graph.vertex_count();
    let q_minus_i = Mat::from_fn(n, n, |i, j| q.at(i, j) - i64::from(i == j));
    let det = det_int(&int_pencil(&a, &q_minus_i))?;
    Ok(apply_even_prefactor(det, graph.betti() - 1))
}

/// Two-term reciprocal zeta of a graph of groups: `det(I_k - W u)`.
pub fn zeta_gog_two_term(x: &GraphOfGroups) -> IntPoly {
    det_int(&int_linear_pencil(&x.half_edge_matrix())).expect("W is square")
}

/// Three-term reciprocal zeta of a graph of groups:
/// `(1 - u^2)^(b1 - 1) (1 + u)^l det(I_n - C A u + (C Q - I_n) u^2)`.
pub fn zeta_gog_three_term(x: &GraphOfGroups) -> IntPoly {
    let graph = x.graph();
    let n = graph.vertex_count();
    let a = graph.adjacency_matrix();
    let q = graph.valency_matrix();
    let c = x.charge_matrix();
    let ca = Mat::from_fn(n, n, |i, j| c.at(i, i) * a.at(i, j));
    let cq_minus_i = Mat::from_fn(n, n, |i, j| c.at(i, i) * q.at(i, j) - i64::from(i == j));
    let det = det_int(&int_pencil(&ca, &cq_minus_i)).expect("pencil is square");
    let with_legs = det.mul(&IntPoly::from_i64(&[1, 1]).pow(graph.leg_count()));
    apply_even_prefactor(with_legs, graph.betti() - 1)
}

/// Multiplies by `(1 - u^2)^e`, dividing exactly when `e` is negative.
fn apply_even_prefactor(poly: IntPoly, e: i64) -> IntPoly {
    let one_minus_u2 = IntPoly::from_i64(&[1, 0, -1]);
    if e >= 0 {
        poly.mul(&one_minus_u2.pow(e as usize))
    } else {
        div_exact(&poly, &one_minus_u2.pow((-e) as usize))
    }
}

/// Three-term formula with arbitrary rational (possibly negative or zero)
/// charge weights. Enumeration makes no sense here, but the determinant
/// expression stays a polynomial identically in the charges: each pencil
/// row is scaled by the charge's denominator, the determinant is taken
/// exactly over the integers, and the result is rescaled. Returns the
/// coefficients of the reciprocal zeta polynomial.
pub fn zeta_three_term_rational(graph: &Graph, charges: &[BigRational]) -> Result<Vec<BigRational>> {
    if charges.len() != graph.vertex_count() {
        return Err(Error::InvalidGog(format!(
            "expected {} charges, got {}",
            graph.vertex_count(),
            charges.len()
        )));
    }
    let n = graph.vertex_count();
    let a = graph.adjacency_matrix();
    let q = graph.valency_matrix();
    // Row i of I - CAu + (CQ - I)u^2 scaled by denom(c_i) has entries
    // q_i d_ij - p_i A_ij u + (p_i Q_ij - q_i d_ij) u^2, all integers.
    let pencil = Mat::from_fn(n, n, |i, j| {
        let p = charges[i].numer();
        let qi = charges[i].denom();
        let delta = if i == j { qi.clone() } else { num_bigint::BigInt::from(0) };
        IntPoly::new(vec![
            delta.clone(),
            -(p * a.at(i, j)),
            p * q.at(i, j) - delta,
        ])
    });
    let det = det_int(&pencil)?;
    let with_legs = det.mul(&IntPoly::from_i64(&[1, 1]).pow(graph.leg_count()));
    let scaled = apply_even_prefactor(with_legs, graph.betti() - 1);
    let denom: num_bigint::BigInt = charges.iter().map(|c| c.denom()).product();
    let degree = scaled.degree().map_or(0, |d| d + 1);
    Ok((0..degree)
        .map(|i| BigRational::new(scaled.coeff(i), denom.clone()))
        .collect())
}

/// Symbolic prefactors of the three-term formula, for factored reports:
/// `(1 - u^2)^(b1 - 1) (1 + u)^l` and the expanded determinant part.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredZeta {
    pub even_exponent: i64,
    pub leg_exponent: usize,
    pub determinant_part: IntPoly,
}

impl FactoredZeta {
    pub fn of_gog(x: &GraphOfGroups) -> FactoredZeta {
        let graph = x.graph();
        let n = graph.vertex_count();
        let a = graph.adjacency_matrix();
        let q = graph.valency_matrix();
        let c = x.charge_matrix();
        let ca = Mat::from_fn(n, n, |i, j| c.at(i, i) * a.at(i, j));
        let cq_minus_i = Mat::from_fn(n, n, |i, j| c.at(i, i) * q.at(i, j) - i64::from(i == j));
        FactoredZeta {
            even_exponent: graph.betti() - 1,
            leg_exponent: graph.leg_count(),
            determinant_part: det_int(&int_pencil(&ca, &cq_minus_i)).expect("pencil is square"),
        }
    }

    pub fn expanded(&self) -> IntPoly {
        let with_legs = self
            .determinant_part
            .mul(&IntPoly::from_i64(&[1, 1]).pow(self.leg_exponent));
        apply_even_prefactor(with_legs, self.even_exponent)
    }

    /// Symbolic prefactors as `(factor, exponent)` pairs, nonzero exponents
    /// only.
    pub fn factor_pairs(&self) -> Vec<(String, i64)> {
        let mut pairs = Vec::new();
        if self.even_exponent != 0 {
            pairs.push(("1-u^2".to_string(), self.even_exponent));
        }
        if self.leg_exponent != 0 {
            pairs.push(("1+u".to_string(), self.leg_exponent as i64));
        }
        pairs
    }

    /// Text such as `(1-u^2)^2 (1+u) (1 - 3*u + 2*u^2)`.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        match self.even_exponent {
            0 => {}
            1 => parts.push("(1-u^2)".to_string()),
            e => parts.push(format!("(1-u^2)^{e}")),
        }
        match self.leg_exponent {
            0 => {}
            1 => parts.push("(1+u)".to_string()),
            e => parts.push(format!("(1+u)^{e}")),
        }
        if parts.is_empty() || !self.determinant_part.is_one() {
            parts.push(format!("({})", self.determinant_part));
        }
        parts.join(" ")
    }
}

/// Outcome of comparing the determinant series with the Euler product over
/// enumerated primes.
#[derive(Clone, Debug)]
pub struct EulerReport {
    pub order: usize,
    pub ok: bool,
    /// First mismatching coefficient index with (series, product) values.
    pub first_mismatch: Option<(usize, BigRational, BigRational)>,
    /// Number of primes per length that entered the product.
    pub prime_counts: Vec<BigInt>,
}

/// Verifies the Euler-product identity through `u^order`: the reciprocal
/// series of the determinant formula must match the truncated product
/// `prod (1 - u^len)^-count` over brute-force prime counts.
pub fn verify_euler(x: &GraphOfGroups, order: usize, allow_big: bool) -> Result<EulerReport> {
    let zeta_inv = zeta_gog_two_term(x);
    let series = series_reciprocal(&zeta_inv, order)?;
    let counts = x.prime_length_counts(order, allow_big)?;
    let count_pairs: Vec<(usize, BigInt)> = (1..=order)
        .map(|len| (len, counts[len].clone()))
        .filter(|(_, c)| !num_traits::Zero::is_zero(c))
        .collect();
    let product = euler_product_from_counts(&count_pairs, order);
    let first_mismatch = series
        .iter()
        .zip(&product)
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| (i, a.clone(), b.clone()));
    Ok(EulerReport {
        order,
        ok: first_mismatch.is_none(),
        first_mismatch,
        prime_counts: counts[1..].to_vec(),
    })
}
