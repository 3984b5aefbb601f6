//! Loadings, red-line data and weightings.

use crate::scalar::{Rational, Scalar, Zero};

use super::ParamError;

/// Strictly increasing positions, optionally labelled by indices into the spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Loading {
    positions: Vec<Rational>,
    labels: Option<Vec<usize>>,
}

impl Loading {
    pub fn new(positions: Vec<Rational>, labels: Option<Vec<usize>>) -> Result<Self, ParamError> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ParamError::Loading("positions must be strictly increasing".into()));
        }
        if let Some(l) = &labels {
            if l.len() != positions.len() {
                return Err(ParamError::Loading("label count differs from position count".into()));
            }
        }
        Ok(Loading { positions, labels })
    }

    /// Positions `0, 1, …, n−1` scaled by `gap`.
    pub fn evenly_spaced(n: usize, gap: &Rational, labels: Option<Vec<usize>>) -> Self {
        let positions = (0..n as i64).map(|k| Rational::from_i64(k).mul_ref(gap)).collect();
        Loading::new(positions, labels).expect("evenly spaced positions increase")
    }

    pub fn positions(&self) -> &[Rational] {
        &self.positions
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// One red line: position `theta`, label index `q` into the spectrum, deformation variable `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RedLine {
    pub theta: Rational,
    pub q: usize,
    pub z: usize,
}

/// Red lines sorted by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RedData {
    lines: Vec<RedLine>,
}

impl RedData {
    pub fn new(mut lines: Vec<RedLine>) -> Result<Self, ParamError> {
        lines.sort_by(|a, b| a.theta.cmp(&b.theta));
        if lines.windows(2).any(|w| w[0].theta == w[1].theta) {
            return Err(ParamError::Reds("two red lines share a position".into()));
        }
        let mut zs: Vec<usize> = lines.iter().map(|r| r.z).collect();
        zs.sort_unstable();
        if zs != (0..lines.len()).collect::<Vec<_>>() {
            return Err(ParamError::Reds("z indices must be distinct and cover 1..=l".into()));
        }
        Ok(RedData { lines })
    }

    pub fn lines(&self) -> &[RedLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn thetas(&self) -> Vec<Rational> {
        self.lines.iter().map(|r| r.theta.clone()).collect()
    }
}

/// Ghost offset `κ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weighting {
    kappa: Rational,
}

impl Weighting {
    pub fn new(kappa: Rational) -> Result<Self, ParamError> {
        if kappa.is_zero() {
            return Err(ParamError::Kappa);
        }
        Ok(Weighting { kappa })
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn is_negative(&self) -> bool {
        self.kappa.is_negative()
    }
}

/// Exchange entries `r` and `r+1` (0-based).
pub fn seq_swap<T: Clone>(u: &[T], r: usize) -> Result<Vec<T>, ParamError> {
    if r + 1 >= u.len() {
        return Err(ParamError::Index(r));
    }
    let mut v = u.to_vec();
    v.swap(r, r + 1);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_examples() {
        assert_eq!(seq_swap(&[1, 2, 4], 0).unwrap(), vec![2, 1, 4]);
        assert_eq!(seq_swap(&[7, 7, 3], 0).unwrap(), vec![7, 7, 3]);
        let once = seq_swap(&[1, 2, 4], 1).unwrap();
        assert_eq!(seq_swap(&once, 1).unwrap(), vec![1, 2, 4]);
        assert!(seq_swap(&[1, 2], 1).is_err());
    }

    #[test]
    fn validation() {
        let r = |n| Rational::from_i64(n);
        assert!(Loading::new(vec![r(1), r(1)], None).is_err());
        assert!(Loading::new(vec![r(0), r(1)], Some(vec![0])).is_err());
        assert!(Weighting::new(r(0)).is_err());
        let bad = vec![RedLine { theta: r(0), q: 0, z: 1 }];
        assert!(RedData::new(bad).is_err());
    }
}
