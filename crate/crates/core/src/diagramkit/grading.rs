//! Degrees of KLR-side diagrams.
//!
//! Dots, `h` and `z_s` have degree 2. A strand crossing has degree `−a(u, v)` in
//! the ordinary families and `−2`/`0` (equal/different labels) in the weighted
//! ones. A strand crossing the ghost of a strand with `u_strand = q·u_owner` has
//! degree 1, and a strand crossing red line `s` has degree 1 when its label is `Q_s`.

use crate::paramkit::ParamGraph;
use crate::ringkit::TruncSeries;
use crate::scalar::Scalar;

use super::{DiagError, DiagExpr, Diagram, Event};

pub fn grading<S: Scalar>(d: &Diagram, graph: &ParamGraph<S>, red_labels: &[usize]) -> Result<i64, DiagError> {
    if !d.family.is_klr() {
        return Err(DiagError::Malformed(format!("no grading on {}", d.family)));
    }
    let mut labels = d.bottom.labels().map(|l| l.to_vec()).unwrap_or_default();
    let weighted = d.family.has_ghosts();
    let mut deg = 0i64;
    for e in &d.events {
        let bad = || DiagError::BadIndex(e.to_string());
        match e {
            Event::SS(i) => {
                let (a, b) = (*labels.get(*i).ok_or_else(bad)?, *labels.get(i + 1).ok_or_else(bad)?);
                deg += if weighted {
                    if a == b {
                        -2
                    } else {
                        0
                    }
                } else {
                    -graph.cartan(a, b)
                };
                labels.swap(*i, i + 1);
            }
            Event::SG { i, j, .. } => {
                let (a, b) = (*labels.get(*i).ok_or_else(bad)?, *labels.get(*j).ok_or_else(bad)?);
                if graph.is_edge(b, a) {
                    deg += 1;
                }
            }
            Event::SR { i, j, .. } => {
                let a = *labels.get(*i).ok_or_else(bad)?;
                if red_labels.get(*j).ok_or_else(bad)? == &a {
                    deg += 1;
                }
            }
            Event::Dot(_) => deg += 2,
            Event::Sq(..) => return Err(DiagError::EventNotAllowed(e.to_string(), d.family)),
        }
    }
    Ok(deg)
}

/// Twice the total `(h, z)` degree when the coefficient is homogeneous.
fn coef_degree<S: Scalar>(c: &TruncSeries<S>) -> Result<Option<i64>, DiagError> {
    if !c.is_y_free() {
        return Err(DiagError::Malformed("diagram coefficients may not involve y".into()));
    }
    let mut degs = c.terms().map(|(m, _)| m.degree());
    let Some(first) = degs.next() else { return Ok(None) };
    if degs.any(|d| d != first) {
        return Err(DiagError::NotHomogeneous);
    }
    Ok(Some(2 * first as i64))
}

/// Common degree of all nonzero terms; `None` for the zero expression.
pub fn grading_expr<S: Scalar>(e: &DiagExpr<S>, graph: &ParamGraph<S>, red_labels: &[usize]) -> Result<Option<i64>, DiagError> {
    let mut deg = None;
    for (c, d) in &e.terms {
        let Some(cd) = coef_degree(c)? else { continue };
        let t = cd + grading(d, graph, red_labels)?;
        match deg {
            None => deg = Some(t),
            Some(x) if x != t => return Err(DiagError::NotHomogeneous),
            _ => {}
        }
    }
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagramkit::Family;
    use crate::paramkit::Loading;
    use crate::ringkit::VarCtx;
    use crate::scalar::{Fp, Rational};

    type F = Fp<7>;

    fn graph() -> ParamGraph<F> {
        ParamGraph::new(F::from_i64(2), vec![F::from_i64(1), F::from_i64(2), F::from_i64(4)]).unwrap()
    }

    fn lo(l: Vec<usize>) -> Loading {
        let n = l.len() as i64;
        Loading::new((0..n).map(Rational::from_i64).collect(), Some(l)).unwrap()
    }

    #[test]
    fn crossing_degrees() {
        let g = graph();
        let same = Diagram::from_word(Family::Klr, lo(vec![0, 0]), vec![Event::SS(0)]).unwrap();
        assert_eq!(grading(&same, &g, &[]).unwrap(), -2);
        let edge = Diagram::from_word(Family::Klr, lo(vec![0, 1]), vec![Event::SS(0)]).unwrap();
        assert_eq!(grading(&edge, &g, &[]).unwrap(), 1);
        let dots = Diagram::from_word(Family::Klr, lo(vec![0, 0]), vec![Event::Dot(0), Event::Dot(1)]).unwrap();
        assert_eq!(grading(&dots, &g, &[]).unwrap(), 4);
        let w = Diagram::from_word(Family::Wklr, lo(vec![0, 1]), vec![Event::SS(0)]).unwrap();
        assert_eq!(grading(&w, &g, &[]).unwrap(), 0);
    }

    #[test]
    fn mixed_coefficients_are_rejected() {
        let g = graph();
        let ctx = VarCtx::new(2, 0, 3).unwrap();
        let id = Diagram::identity(Family::Klr, lo(vec![0, 0]));
        let one_plus_h = &TruncSeries::<F>::one(ctx) + &TruncSeries::h(ctx);
        let e = DiagExpr::term(one_plus_h, id.clone());
        assert_eq!(grading_expr(&e, &g, &[]), Err(DiagError::NotHomogeneous));
        let e = DiagExpr::term(TruncSeries::h(ctx), id);
        assert_eq!(grading_expr(&e, &g, &[]).unwrap(), Some(2));
    }
}
