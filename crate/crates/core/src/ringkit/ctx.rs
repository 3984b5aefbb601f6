//! Variable contexts and exponent vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::RingError;

/// Upper bound on `n + 1 + ℓ` (strand variables, `h`, deformation variables).
pub const MAX_VARS: usize = 12;
/// Upper bound on the strand count `n`.
pub const MAX_STRANDS: usize = 8;
/// Upper bound on the cutoff; exponents are stored as `u8`.
pub const MAX_CUTOFF: u32 = 120;

/// Variable layout `y_1..y_n, h, z_1..z_ℓ` together with the truncation cutoff `N`.
///
/// All indices taken by the accessors here are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarCtx {
    n: u8,
    l: u8,
    cutoff: u32,
}

impl VarCtx {
    pub fn new(n: usize, l: usize, cutoff: u32) -> Result<Self, RingError> {
        if n == 0 || n > MAX_STRANDS {
            return Err(RingError::BadContext(format!("strand count {n} outside 1..={MAX_STRANDS}")));
        }
        if n + 1 + l > MAX_VARS {
            return Err(RingError::BadContext(format!("n + 1 + l = {} exceeds {MAX_VARS}", n + 1 + l)));
        }
        if cutoff > MAX_CUTOFF {
            return Err(RingError::BadContext(format!("cutoff {cutoff} exceeds {MAX_CUTOFF}")));
        }
        Ok(VarCtx { n: n as u8, l: l as u8, cutoff })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn l(&self) -> usize {
        self.l as usize
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn nvars(&self) -> usize {
        self.n as usize + 1 + self.l as usize
    }

    pub fn y(&self, i: usize) -> usize {
        assert!(i < self.n(), "y index {i} out of range");
        i
    }

    pub fn h(&self) -> usize {
        self.n()
    }

    pub fn z(&self, s: usize) -> usize {
        assert!(s < self.l(), "z index {s} out of range");
        self.n() + 1 + s
    }

    pub fn is_y(&self, var: usize) -> bool {
        var < self.n()
    }

    pub fn var_name(&self, var: usize) -> String {
        if var < self.n() {
            format!("y{}", var + 1)
        } else if var == self.n() {
            "h".to_string()
        } else {
            format!("z{}", var - self.n())
        }
    }

    /// Parse a variable name such as `y2`, `h` or `z1`.
    pub fn var_by_name(&self, name: &str) -> Option<usize> {
        if name == "h" {
            return Some(self.h());
        }
        let (head, tail) = name.split_at(1.min(name.len()));
        let k: usize = tail.parse().ok()?;
        match head {
            "y" if (1..=self.n()).contains(&k) => Some(k - 1),
            "z" if (1..=self.l()).contains(&k) => Some(self.n() + k),
            _ => None,
        }
    }

    pub fn with_cutoff(&self, cutoff: u32) -> Result<Self, RingError> {
        VarCtx::new(self.n(), self.l(), cutoff)
    }
}

impl fmt::Display for VarCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ctx(n={}, l={}, N={})", self.n, self.l, self.cutoff)
    }
}

/// Exponent vector over the variables of a [`VarCtx`].
///
/// Ordered by total degree first, so map iteration visits homogeneous parts in order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono {
    deg: u16,
    e: [u8; MAX_VARS],
}

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(k: usize) -> Self {
        let mut m = Mono::default();
        m.e[k] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Mono::default();
        m.e[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&x| x as u16).sum();
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exp(&self, k: usize) -> u8 {
        self.e[k]
    }

    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.e
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for k in 0..MAX_VARS {
            m.e[k] += o.e[k];
        }
        m.deg += o.deg;
        m
    }

    /// Remove one factor of variable `k`; `None` if absent.
    pub fn div_var(&self, k: usize) -> Option<Mono> {
        if self.e[k] == 0 {
            return None;
        }
        let mut m = *self;
        m.e[k] -= 1;
        m.deg -= 1;
        Some(m)
    }

    /// Apply `y_i ↦ y_{w[i]}` for `i < w.len()`.
    pub fn permute(&self, w: &[usize]) -> Mono {
        let mut m = *self;
        for (i, &wi) in w.iter().enumerate() {
            m.e[wi] = self.e[i];
        }
        m
    }

    pub fn swap(&self, a: usize, b: usize) -> Mono {
        let mut m = *self;
        m.e.swap(a, b);
        m
    }

    /// True when every variable with `mask[k]` has exponent zero.
    pub fn avoids(&self, mask: &[bool]) -> bool {
        mask.iter().enumerate().all(|(k, &on)| !on || self.e[k] == 0)
    }

    pub fn render(&self, ctx: &VarCtx) -> String {
        let mut parts = Vec::new();
        for k in 0..ctx.nvars() {
            match self.e[k] {
                0 => {}
                1 => parts.push(ctx.var_name(k)),
                p => parts.push(format!("{}^{}", ctx.var_name(k), p)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}
