use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPolynomial;
use crate::{Error, Result};

/// The `d` with `c_i = c_{d-i}` for every `i`, namely lowest plus highest
/// exponent, if the coefficients are symmetric. `None` for the zero polynomial.
pub fn palindromic_center(p: &IntPolynomial) -> Option<usize> {
    let d = p.low_degree()? + p.degree()?;
    is_palindromic(p, d).then_some(d)
}

/// `c_i = c_{d-i}` for all `0 <= i <= d`, and `deg p <= d`.
pub fn is_palindromic(p: &IntPolynomial, d: usize) -> bool {
    match p.degree() {
        None => true,
        Some(deg) if deg > d => false,
        Some(_) => (0..=d).all(|i| p.coeff(i) == p.coeff(d - i)),
    }
}

/// `γ` with `p = Σ γ_i t^i (1+t)^{d-2i}` where `d` is the palindromic center.
pub fn gamma_vector(p: &IntPolynomial) -> Result<Vec<BigInt>> {
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let d = palindromic_center(p).ok_or_else(|| Error::NotPalindromic(p.to_string()))?;
    let one_plus_t = IntPolynomial::from_i64(&[1, 1]);
    let mut rest = p.clone();
    let mut gamma = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = rest.coeff(i);
        if !g.is_zero() {
            let basis = (0..d - 2 * i).fold(IntPolynomial::one(), |acc, _| &acc * &one_plus_t);
            rest = &rest - &(&IntPolynomial::monomial(g.clone(), i) * &basis);
        }
        gamma.push(g);
    }
    if !rest.is_zero() {
        return Err(Error::NotPalindromic(p.to_string()));
    }
    Ok(gamma)
}

/// Coefficients weakly increase and then weakly decrease.
pub fn is_unimodal(p: &IntPolynomial) -> bool {
    let c = p.coeffs();
    let mut i = 1;
    while i < c.len() && c[i - 1] <= c[i] {
        i += 1;
    }
    while i < c.len() && c[i - 1] >= c[i] {
        i += 1;
    }
    i >= c.len()
}

/// `c_i^2 >= c_{i-1} c_{i+1}` and no zero strictly between nonzero coefficients.
pub fn is_log_concave(p: &IntPolynomial) -> bool {
    let Some(low) = p.low_degree() else {
        return true;
    };
    let c = &p.coeffs()[low..];
    if c.iter().any(Zero::is_zero) {
        return false;
    }
    c.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}
