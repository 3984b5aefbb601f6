//! Diagrams from piecewise-linear strand motions.

use crate::paramkit::{sweep, GeomKind, Loading, SweepOpts};
use crate::scalar::{Rational, Scalar};

use super::{DiagError, Diagram, Event, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decor {
    Dot,
    Sq(i8),
}

/// Keyframes indexed by strand id. Decorations sit on a strand at a keyframe time;
/// static strands keep one position throughout.
#[derive(Clone, Debug)]
pub struct Keyframes {
    family: Family,
    frames: Vec<Vec<Rational>>,
    labels: Option<Vec<usize>>,
    statics: Vec<(Rational, Option<usize>)>,
    decor: Vec<(usize, usize, Decor)>,
    kappa: Option<Rational>,
    reds: Vec<Rational>,
}

impl Keyframes {
    pub fn new(family: Family, frames: Vec<Vec<Rational>>) -> Self {
        Keyframes { family, frames, labels: None, statics: Vec::new(), decor: Vec::new(), kappa: None, reds: Vec::new() }
    }

    pub fn labels(mut self, l: Vec<usize>) -> Self {
        self.labels = Some(l);
        self
    }

    pub fn kappa(mut self, k: Option<Rational>) -> Self {
        self.kappa = k;
        self
    }

    /// Red line positions (sorted by the caller's red order).
    pub fn reds(mut self, r: Vec<Rational>) -> Self {
        self.reds = r;
        self
    }

    pub fn add_static(mut self, x: Rational, label: Option<usize>) -> Self {
        self.statics.push((x, label));
        self
    }

    pub fn decorate(mut self, frame: usize, id: usize, d: Decor) -> Self {
        self.decor.push((frame, id, d));
        self
    }

    pub fn build(&self) -> Result<Diagram, DiagError> {
        if self.frames.is_empty() {
            return Err(DiagError::Malformed("no keyframes".into()));
        }
        let frames: Vec<Vec<Rational>> = self
            .frames
            .iter()
            .map(|f| f.iter().cloned().chain(self.statics.iter().map(|s| s.0.clone())).collect())
            .collect();
        let m = frames[0].len();
        let labels: Option<Vec<usize>> = if self.family.is_klr() {
            let local = self.labels.clone().ok_or_else(|| DiagError::Malformed("KLR diagrams need labels".into()))?;
            let mut all = local;
            for (_, l) in &self.statics {
                all.push(l.ok_or_else(|| DiagError::Malformed("static strand without label".into()))?);
            }
            if all.len() != m {
                return Err(DiagError::Malformed("label count differs from strand count".into()));
            }
            Some(all)
        } else {
            None
        };
        if self.family.has_ghosts() && self.kappa.is_none() {
            return Err(DiagError::Malformed("ghost families need κ".into()));
        }
        let opts = SweepOpts {
            kappa: if self.family.has_ghosts() { self.kappa.clone() } else { None },
            reds: if self.family.has_reds() { self.reds.clone() } else { Vec::new() },
        };
        let geo = sweep(&frames, &opts)?;

        let sorted_ids = |f: &[Rational]| {
            let mut ids: Vec<usize> = (0..m).collect();
            ids.sort_by(|&a, &b| f[a].cmp(&f[b]));
            ids
        };
        let mut order = sorted_ids(&frames[0]);
        let pos = |order: &[usize], id: usize| order.iter().position(|&x| x == id).unwrap();
        let mut decor = self.decor.clone();
        decor.sort_by_key(|d| d.0);
        let mut di = 0;
        let mut events = Vec::new();
        let flush = |order: &[usize], upto: Option<&Rational>, di: &mut usize, events: &mut Vec<Event>| {
            while *di < decor.len() && upto.is_none_or(|t| Rational::from_i64(decor[*di].0 as i64) < *t) {
                let (_, id, d) = decor[*di];
                let p = pos(order, id);
                events.push(match d {
                    Decor::Dot => Event::Dot(p),
                    Decor::Sq(e) => Event::Sq(p, e),
                });
                *di += 1;
            }
        };
        for g in &geo {
            flush(&order, Some(&g.t), &mut di, &mut events);
            match &g.kind {
                GeomKind::StrandStrand { left, right } => {
                    let p = pos(&order, *left);
                    if order.get(p + 1) != Some(right) {
                        return Err(DiagError::Malformed("crossing of non-adjacent strands".into()));
                    }
                    order.swap(p, p + 1);
                    events.push(Event::SS(p));
                }
                GeomKind::StrandGhost { strand, owner, dir } => {
                    events.push(Event::SG { i: pos(&order, *strand), j: pos(&order, *owner), dir: *dir });
                }
                GeomKind::StrandRed { strand, red, dir } => {
                    events.push(Event::SR { i: pos(&order, *strand), j: *red, dir: *dir });
                }
            }
        }
        flush(&order, None, &mut di, &mut events);
        let last = frames.last().unwrap();
        if order != sorted_ids(last) {
            return Err(DiagError::Malformed("final strand order disagrees with the last keyframe".into()));
        }
        let loading = |f: &[Rational], ord: &[usize]| {
            Loading::new(ord.iter().map(|&i| f[i].clone()).collect(), labels.as_ref().map(|l| ord.iter().map(|&i| l[i]).collect()))
        };
        let bottom = loading(&frames[0], &sorted_ids(&frames[0]))?;
        let top = loading(last, &order)?;
        let d = Diagram { family: self.family, bottom, top, events };
        d.validate(&opts.reds)?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paramkit::Dir;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn triple_bulges_give_both_braid_words() {
        let f0 = vec![r(0, 1), r(1, 4), r(1, 2)];
        let left = Keyframes::new(Family::HeckeOMinus, vec![f0.clone(), vec![r(1, 2), r(-1, 4), r(0, 1)], vec![r(1, 2), r(1, 4), r(0, 1)]]);
        let right = Keyframes::new(Family::HeckeOMinus, vec![f0, vec![r(1, 2), r(3, 4), r(0, 1)], vec![r(1, 2), r(1, 4), r(0, 1)]]);
        assert_eq!(left.build().unwrap().events, vec![Event::SS(0), Event::SS(1), Event::SS(0)]);
        assert_eq!(right.build().unwrap().events, vec![Event::SS(1), Event::SS(0), Event::SS(1)]);
    }

    #[test]
    fn ghost_bigon_and_decorations() {
        let k = Keyframes::new(Family::Waha, vec![vec![r(0, 1), r(3, 2)], vec![r(1, 1), r(3, 2)], vec![r(0, 1), r(3, 2)]])
            .kappa(Some(r(-1, 1)))
            .decorate(2, 1, Decor::Sq(1))
            .decorate(0, 0, Decor::Sq(-1));
        let d = k.build().unwrap();
        assert_eq!(
            d.events,
            vec![
                Event::Sq(0, -1),
                Event::SG { i: 0, j: 1, dir: Dir::LeftToRight },
                Event::SG { i: 0, j: 1, dir: Dir::RightToLeft },
                Event::Sq(1, 1)
            ]
        );
    }

    #[test]
    fn labels_follow_strands() {
        let d = Keyframes::new(Family::Klr, vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]])
            .labels(vec![2, 0])
            .add_static(r(5, 1), Some(1))
            .build()
            .unwrap();
        assert_eq!(d.bottom.labels(), Some(&[2, 0, 1][..]));
        assert_eq!(d.top.labels(), Some(&[0, 2, 1][..]));
    }

    #[test]
    fn red_crossings_are_positional() {
        let d = Keyframes::new(Family::FHecke, vec![vec![r(-1, 1), r(1, 1)], vec![r(2, 1), r(1, 1)]])
            .reds(vec![r(0, 1)])
            .build()
            .unwrap();
        assert_eq!(d.events, vec![Event::SR { i: 0, j: 0, dir: Dir::LeftToRight }, Event::SS(0)]);
    }
}
