use std::fmt;
use std::ops::Not;

/// A propositional variable, 1-based as in DIMACS.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// Largest variable index that still has a DIMACS (`i32`) literal.
    pub const MAX: u32 = i32::MAX as u32;

    /// Panics on 0 or on indices beyond [`Var::MAX`].
    pub fn new(index: u32) -> Var {
        assert!((1..=Self::MAX).contains(&index), "variable index {index} out of range");
        Var(index)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Index into per-variable arrays sized `num_vars + 1`.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn lit(self, positive: bool) -> Lit {
        Lit((self.0 << 1) | (!positive) as u32)
    }

    #[inline]
    pub fn pos(self) -> Lit {
        self.lit(true)
    }

    // a Var is not a Lit, so `std::ops::Neg` would be misleading here
    #[allow(clippy::should_implement_trait)]
    #[inline]
    pub fn neg(self) -> Lit {
        self.lit(false)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal. Externally it behaves like a nonzero DIMACS integer; internally
/// it is packed as `var << 1 | negated` so it can index watch lists directly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    /// `None` for 0 and for `i32::MIN`, which has no positive counterpart.
    pub fn from_dimacs(value: i32) -> Option<Lit> {
        if value == 0 || value == i32::MIN {
            return None;
        }
        Some(Var(value.unsigned_abs()).lit(value > 0))
    }

    #[inline]
    pub fn dimacs(self) -> i32 {
        let magnitude = (self.0 >> 1) as i32;
        if self.is_negative() {
            -magnitude
        } else {
            magnitude
        }
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        !self.is_negative()
    }

    /// Dense index for per-literal arrays sized `2 * (num_vars + 1)`.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Same polarity, different variable.
    #[inline]
    pub fn with_var(self, var: Var) -> Lit {
        var.lit(self.is_positive())
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dimacs())
    }
}
