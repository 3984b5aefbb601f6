//! Univariate series data `b(t) = Σ b_k t^k`, used for substitutions such as `b(y_i)`.

use crate::scalar::Scalar;

use super::RingError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniSeries<S> {
    /// Arbitrary coefficients; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniSeries { coeffs }
    }

    /// The constant series 1.
    pub fn one() -> Self {
        UniSeries { coeffs: vec![S::one()] }
    }

    /// `1 + t`.
    pub fn one_plus() -> Self {
        UniSeries { coeffs: vec![S::one(), S::one()] }
    }

    /// `Σ_{k ≤ len} t^k / k!`. Panics if some `k!` is zero in the field.
    pub fn exp(len: u32) -> Self {
        let mut coeffs = vec![S::one()];
        let mut c = S::one();
        for k in 1..=len as i64 {
            c = c.mul_ref(&S::from_i64(k).inv().expect("factorial invertible in this field"));
            coeffs.push(c.clone());
        }
        UniSeries { coeffs }
    }

    /// `exp` that reports failure instead of panicking.
    pub fn try_exp(len: u32) -> Result<Self, RingError> {
        for k in 1..=len as i64 {
            if S::from_i64(k).is_zero() {
                return Err(RingError::BadContext(format!(
                    "exp series needs {k} invertible; field has characteristic {}",
                    S::characteristic()
                )));
            }
        }
        Ok(Self::exp(len))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Compositional inverse up to `t^len`: the `g` with `self(g(t)) = t`.
    /// Needs zero constant term and an invertible linear coefficient.
    pub fn reversion(&self, len: u32) -> Option<Self> {
        if !self.coeff(0).is_zero() {
            return None;
        }
        let a1inv = self.coeff(1).inv()?;
        let len = len as usize;
        let mut g = vec![S::zero(), a1inv.clone()];
        for k in 2..=len {
            g.push(S::zero());
            // coefficient of t^k in self(g) with g_k = 0, then solve a_1 g_k + c = 0
            let c = compose_coeffs(&self.coeffs, &g, k)[k].clone();
            g[k] = S::zero().sub_ref(&c.mul_ref(&a1inv));
        }
        g.truncate(len + 1);
        Some(UniSeries::new(g))
    }

    /// True for series of the form `1 + t + O(t²)`.
    pub fn is_normalized(&self) -> bool {
        self.coeff(0).is_one() && self.coeff(1).is_one()
    }
}

/// Coefficients of `f(g(t))` up to `t^len`, for `g` with zero constant term.
fn compose_coeffs<S: Scalar>(f: &[S], g: &[S], len: usize) -> Vec<S> {
    let mul = |a: &[S], b: &[S]| {
        let mut out = vec![S::zero(); len + 1];
        for (i, x) in a.iter().enumerate().take(len + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len + 1 - i) {
                out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
            }
        }
        out
    };
    let mut acc = vec![S::zero(); len + 1];
    for c in f.iter().rev() {
        acc = mul(&acc, g);
        acc[0] = acc[0].add_ref(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    #[test]
    fn exp_coefficients() {
        let e = UniSeries::<Rational>::exp(3);
        assert_eq!(e.coeff(3), Rational::new(1, 6));
        assert!(e.is_normalized());
        assert!(UniSeries::<Fp<3>>::try_exp(4).is_err());
        assert!(UniSeries::<Rational>::new(vec![Rational::from_i64(1), Rational::from_i64(0)]).coeffs().len() == 1);
    }

    #[test]
    fn reversion_of_exp_minus_one_is_log() {
        let mut e = UniSeries::<Rational>::exp(5).coeffs().to_vec();
        e[0] = Rational::from_i64(0);
        let g = UniSeries::new(e).reversion(5).unwrap();
        // log(1 + t) = t − t²/2 + t³/3 − …
        assert_eq!(g.coeff(2), Rational::new(-1, 2));
        assert_eq!(g.coeff(3), Rational::new(1, 3));
        assert_eq!(g.coeff(5), Rational::new(1, 5));
        let t = UniSeries::<Fp<7>>::new(vec![Fp::from_i64(0), Fp::from_i64(1)]);
        assert_eq!(t.reversion(4).unwrap(), t);
    }
}
