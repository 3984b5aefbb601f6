//! The spectrum graph `U` with edges `u → q·u`.

use crate::scalar::Scalar;

use super::ParamError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamGraph<S> {
    q: S,
    labels: Vec<S>,
    /// Directed edges `(a, b)` with `labels[b] = q·labels[a]`.
    edges: Vec<(usize, usize)>,
    /// Multiplicative order of `q`; `None` for infinite order.
    order: Option<u64>,
}

impl<S: Scalar> ParamGraph<S> {
    pub fn new(q: S, labels: Vec<S>) -> Result<Self, ParamError> {
        if q.is_zero() || q.is_one() {
            return Err(ParamError::InvalidQ(q.to_wire()));
        }
        for (i, u) in labels.iter().enumerate() {
            if u.is_zero() {
                return Err(ParamError::ZeroLabel);
            }
            if labels[..i].contains(u) {
                return Err(ParamError::DuplicateSpectrum(u.to_wire()));
            }
        }
        let mut edges = Vec::new();
        for (a, u) in labels.iter().enumerate() {
            let qu = q.mul_ref(u);
            if let Some(b) = labels.iter().position(|v| *v == qu) {
                edges.push((a, b));
            }
        }
        let p = S::characteristic();
        let bound = if p > 0 { p - 1 } else { (labels.len() * labels.len()).max(2) as u64 };
        let mut order = None;
        let mut pw = q.clone();
        for k in 1..=bound {
            if pw.is_one() {
                order = Some(k);
                break;
            }
            pw = pw.mul_ref(&q);
        }
        Ok(ParamGraph { q, labels, edges, order })
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn labels(&self) -> &[S] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &S {
        &self.labels[i]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn order(&self) -> Option<u64> {
        self.order
    }

    pub fn index_of(&self, u: &S) -> Option<usize> {
        self.labels.iter().position(|v| v == u)
    }

    /// `labels[b] = q·labels[a]`.
    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    /// Edges joining `a` and `b` in either direction (`a ≠ b`).
    pub fn edges_between(&self, a: usize, b: usize) -> usize {
        if a == b {
            return 0;
        }
        self.edges.iter().filter(|&&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)).count()
    }

    /// Cartan-style pairing: `2` on the diagonal, minus the edge count otherwise.
    pub fn cartan(&self, a: usize, b: usize) -> i64 {
        if a == b {
            2
        } else {
            -(self.edges_between(a, b) as i64)
        }
    }

    /// Same spectrum with `q` replaced by `q⁻¹` (edges reversed).
    pub fn inverse(&self) -> Self {
        let qi = self.q.inv().expect("q nonzero");
        ParamGraph::new(qi, self.labels.clone()).expect("inverse of a valid graph is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    #[test]
    fn examples() {
        type F = Fp<7>;
        let g = ParamGraph::new(F::from_i64(2), vec![F::from_i64(1), F::from_i64(2), F::from_i64(4)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(g.order(), Some(3));

        let g = ParamGraph::new(Rational::from_i64(2), vec![Rational::from_i64(1), Rational::from_i64(3)]).unwrap();
        assert!(g.edges().is_empty());
        assert_eq!(g.order(), None);

        assert!(matches!(
            ParamGraph::new(Rational::from_i64(1), vec![Rational::from_i64(1)]),
            Err(ParamError::InvalidQ(_))
        ));
        assert!(matches!(
            ParamGraph::new(Rational::from_i64(2), vec![Rational::from_i64(1), Rational::from_i64(1)]),
            Err(ParamError::DuplicateSpectrum(_))
        ));
    }

    #[test]
    fn minus_one_has_double_edges() {
        let g = ParamGraph::new(Rational::from_i64(-1), vec![Rational::from_i64(1), Rational::from_i64(-1)]).unwrap();
        assert_eq!(g.order(), Some(2));
        assert_eq!(g.edges_between(0, 1), 2);
        assert_eq!(g.cartan(0, 1), -2);
    }
}
