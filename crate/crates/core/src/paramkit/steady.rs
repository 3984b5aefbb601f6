//! The steadiness predicate for weighted loadings with red lines.

use crate::scalar::{Rational, Scalar};

/// A loading is unsteady when its black strands split into a non-empty left group
/// and a right group such that every right-group strand lies more than `|κ|` to the
/// right of every left-group strand, and every red line lies to the right of the
/// left group.
///
/// The gap is measured between black strands only; red lines just have to sit in
/// the right-hand group. An empty right group is allowed.
pub fn unsteady(positions: &[Rational], reds: &[Rational], kappa: &Rational) -> bool {
    let mut xs = positions.to_vec();
    xs.sort();
    let gap = kappa.abs();
    let min_red = reds.iter().min();
    for k in 1..=xs.len() {
        let left_max = &xs[k - 1];
        let strands_ok = match xs.get(k) {
            Some(r) => r.sub_ref(left_max) > gap,
            None => true,
        };
        let reds_ok = match min_red {
            Some(m) => m > left_max,
            None => true,
        };
        if strands_ok && reds_ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        Rational::parse_wire(s).unwrap()
    }

    fn v(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| r(s)).collect()
    }

    #[test]
    fn scale_free_examples() {
        let k = r("1/2");
        assert!(unsteady(&v(&["0", "5"]), &v(&["4"]), &k));
        assert!(!unsteady(&v(&["3", "5"]), &v(&["1"]), &k));
        assert!(unsteady(&v(&["-3", "5"]), &v(&["4"]), &k));
    }

    #[test]
    fn figure_classification() {
        // strand x-coordinates, red at .35, ghosts drawn at offset -.6
        let k = r("-3/5");
        let red = v(&["7/20"]);
        assert!(!unsteady(&v(&["1/20", "1/2"]), &red, &k));
        assert!(!unsteady(&v(&["1/2", "5/4"]), &red, &k));
        assert!(unsteady(&v(&["-1/4", "1/2"]), &red, &k));
        assert!(unsteady(&v(&["-1/4", "1/5"]), &red, &k));
    }
}
