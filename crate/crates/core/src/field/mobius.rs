use super::ext::{ExtElem, ExtFieldCtx};
use crate::error::{Error, Result};

/// A point of the projective line over F_{q^2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(ExtElem),
    Infinity,
}

impl ProjPoint {
    pub fn finite(self) -> Option<ExtElem> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    /// Every point of P^1(F_{q^2}): the field elements, then infinity.
    pub fn all(ctx: &ExtFieldCtx) -> impl Iterator<Item = ProjPoint> + '_ {
        ctx.elements()
            .map(ProjPoint::Finite)
            .chain(std::iter::once(ProjPoint::Infinity))
    }

    /// Membership in P^1(F_q) = F_q together with infinity.
    pub fn in_p1_subfield(self, ctx: &ExtFieldCtx) -> bool {
        match self {
            ProjPoint::Finite(x) => ctx.in_subfield_q(x),
            ProjPoint::Infinity => true,
        }
    }

    /// Membership in the roots of unity of order dividing q+1.
    pub fn in_mu(self, ctx: &ExtFieldCtx) -> bool {
        match self {
            ProjPoint::Finite(x) => ctx.in_mu(x),
            ProjPoint::Infinity => false,
        }
    }
}

impl From<ExtElem> for ProjPoint {
    fn from(x: ExtElem) -> Self {
        ProjPoint::Finite(x)
    }
}

/// The fractional linear map `X -> (aX + b) / (cX + d)`, nondegenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MobiusMap {
    a: ExtElem,
    b: ExtElem,
    c: ExtElem,
    d: ExtElem,
}

impl MobiusMap {
    pub fn new(ctx: &ExtFieldCtx, a: ExtElem, b: ExtElem, c: ExtElem, d: ExtElem) -> Result<Self> {
        let det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c));
        if det.is_zero() {
            return Err(Error::DegenerateMobius);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: ExtElem::ONE,
            b: ExtElem::ZERO,
            c: ExtElem::ZERO,
            d: ExtElem::ONE,
        }
    }

    pub fn coefficients(&self) -> [ExtElem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn eval(&self, ctx: &ExtFieldCtx, x: ProjPoint) -> ProjPoint {
        match x {
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(ctx.div(self.a, self.c).expect("c != 0"))
                }
            }
            ProjPoint::Finite(x) => {
                let den = ctx.add(ctx.mul(self.c, x), self.d);
                if den.is_zero() {
                    return ProjPoint::Infinity;
                }
                let num = ctx.add(ctx.mul(self.a, x), self.b);
                ProjPoint::Finite(ctx.div(num, den).expect("den != 0"))
            }
        }
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, ctx: &ExtFieldCtx, other: &MobiusMap) -> MobiusMap {
        let m = |x: ExtElem, y: ExtElem| ctx.mul(x, y);
        MobiusMap {
            a: ctx.add(m(self.a, other.a), m(self.b, other.c)),
            b: ctx.add(m(self.a, other.b), m(self.b, other.d)),
            c: ctx.add(m(self.c, other.a), m(self.d, other.c)),
            d: ctx.add(m(self.c, other.b), m(self.d, other.d)),
        }
    }
}
