//! Truncated Laurent series with complex coefficients.
//!
//! A series is tied to an expansion point at the type level. About the
//! origin ([`AtOrigin`]) the coefficients are known up to some power and every
//! higher power is unknown. About infinity ([`AtInfinity`]) the coefficients
//! are known down to some power and every lower power is unknown. This is the
//! natural form of the momentum expansions `b₁x + b₂x⁻¹ + b₃x⁻³ + …` valid
//! outside the turning points.
//!
//! Unknown coefficients are never confused with zeros: every operation
//! propagates the truncation order it can prove, and [`LaurentSeries::residue`]
//! refuses to read a coefficient that is not known.
//!
//! Internally the bookkeeping is done in terms of *depth*, the distance of a
//! power from the expansion point (`depth = power` about the origin and
//! `depth = -power` about infinity). Known coefficients are those with depth at
//! most the truncation depth.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative size below which a coefficient is treated as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// Number of powers kept beyond the residue term by default.
pub const DEFAULT_EXTRA_POWERS: usize = 8;

pub trait ExpansionPoint: Copy + Clone + Default + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// True when the series runs in descending powers (expansion about infinity).
    const DESCENDING: bool;
    const NAME: &'static str;

    fn depth(power: i32) -> i32 {
        if Self::DESCENDING {
            -power
        } else {
            power
        }
    }

    fn power(depth: i32) -> i32 {
        Self::depth(depth)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AtOrigin;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AtInfinity;

impl ExpansionPoint for AtOrigin {
    const DESCENDING: bool = false;
    const NAME: &'static str = "0";
}

impl ExpansionPoint for AtInfinity {
    const DESCENDING: bool = true;
    const NAME: &'static str = "infinity";
}

#[derive(Clone, PartialEq)]
pub struct LaurentSeries<P: ExpansionPoint = AtOrigin> {
    coeffs: BTreeMap<i32, Complex64>,
    /// Deepest known depth; `None` means the series is exact.
    known_depth: Option<i32>,
    _point: PhantomData<P>,
}

impl<P: ExpansionPoint> LaurentSeries<P> {
    /// The exact zero series.
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
            known_depth: None,
            _point: PhantomData,
        }
    }

    /// Builds a series from `(power, coefficient)` pairs.
    ///
    /// `order` is the last known power (`None` for an exact series); pairs past
    /// it are discarded.
    pub fn from_terms<I>(terms: I, order: Option<i32>) -> Self
    where
        I: IntoIterator<Item = (i32, Complex64)>,
    {
        let mut s = Self {
            coeffs: BTreeMap::new(),
            known_depth: order.map(P::depth),
            _point: PhantomData,
        };
        for (power, c) in terms {
            if s.is_known(power) && c != Complex64::new(0.0, 0.0) {
                *s.coeffs.entry(power).or_default() += c;
            }
        }
        s.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        s
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real<I>(terms: I, order: Option<i32>) -> Self
    where
        I: IntoIterator<Item = (i32, f64)>,
    {
        Self::from_terms(
            terms.into_iter().map(|(p, c)| (p, Complex64::new(c, 0.0))),
            order,
        )
    }

    pub fn monomial(coeff: Complex64, power: i32) -> Self {
        Self::from_terms([(power, coeff)], None)
    }

    pub fn constant(coeff: Complex64) -> Self {
        Self::monomial(coeff, 0)
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The zero series whose coefficients are only known through `order`.
    pub fn zero_through(order: i32) -> Self {
        Self::from_terms(std::iter::empty(), Some(order))
    }

    /// Declares every power past `order` unknown.
    pub fn truncated(mut self, order: i32) -> Self {
        let depth = P::depth(order);
        let depth = self.known_depth.map_or(depth, |d| d.min(depth));
        self.known_depth = Some(depth);
        self.coeffs.retain(|&p, _| P::depth(p) <= depth);
        self
    }

    /// Last known power, or `None` when the series is exact.
    pub fn truncation_order(&self) -> Option<i32> {
        self.known_depth.map(P::power)
    }

    pub fn is_exact(&self) -> bool {
        self.known_depth.is_none()
    }

    pub fn is_known(&self, power: i32) -> bool {
        self.known_depth.is_none_or(|d| P::depth(power) <= d)
    }

    /// Smallest stored power.
    pub fn min_power(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Largest stored power.
    pub fn max_power(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// No stored coefficients.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^power`: `None` when the truncation hides it.
    pub fn coeff(&self, power: i32) -> Option<Complex64> {
        if self.is_known(power) {
            Some(self.coeffs.get(&power).copied().unwrap_or_default())
        } else {
            None
        }
    }

    /// Stored `(power, coefficient)` pairs in ascending power order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.coeffs.iter().map(|(&p, &c)| (p, c))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when every stored coefficient is below `ZERO_TOLERANCE * scale`.
    pub fn is_negligible(&self, scale: f64) -> bool {
        self.max_abs() <= ZERO_TOLERANCE * scale
    }

    /// Depth of the dominant term at the expansion point. For a series with no
    /// stored terms this is one past the known depth.
    fn leading_depth(&self) -> Option<i32> {
        let stored = if P::DESCENDING {
            self.max_power()
        } else {
            self.min_power()
        };
        stored.map(P::depth).or(self.known_depth.map(|d| d + 1))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_terms(
            self.coeffs.iter().map(|(&p, &c)| (p, c * factor)),
            self.truncation_order(),
        )
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self::from_terms(
            self.coeffs.iter().map(|(&p, &c)| (p + shift, c)),
            self.truncation_order().map(|k| k + shift),
        )
    }

    /// Termwise power-rule derivative. The truncation order drops by one.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(&p, &c)| (p - 1, c * f64::from(p))),
            self.truncation_order().map(|k| k - 1),
        )
    }

    /// Coefficient of `z⁻¹`. The circle integral `(1/2π)∮ s dz` taken
    /// counterclockwise equals `i` times this value.
    pub fn residue(&self) -> Result<Complex64> {
        self.coeff(-1).ok_or(Error::OrderInsufficient {
            requested: -1,
            known: self.truncation_order().unwrap_or(i32::MAX),
        })
    }

    /// Sum of the stored terms at `z`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(&p, &c)| c * z.powi(p)).sum()
    }

    /// Raises to a non-negative integer power by repeated multiplication.
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<P: ExpansionPoint> Default for LaurentSeries<P> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<P: ExpansionPoint> fmt::Debug for LaurentSeries<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries@{}[", P::NAME)?;
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})z^{p}")?;
        }
        match self.truncation_order() {
            Some(k) if P::DESCENDING => write!(f, " + O(z^{})]", k - 1),
            Some(k) => write!(f, " + O(z^{})]", k + 1),
            None => write!(f, "]"),
        }
    }
}

fn tighter(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<P: ExpansionPoint> Add for &LaurentSeries<P> {
    type Output = LaurentSeries<P>;

    fn add(self, rhs: Self) -> LaurentSeries<P> {
        let depth = tighter(self.known_depth, rhs.known_depth);
        LaurentSeries::from_terms(
            self.terms().chain(rhs.terms()),
            depth.map(P::power),
        )
    }
}

impl<P: ExpansionPoint> Sub for &LaurentSeries<P> {
    type Output = LaurentSeries<P>;

    fn sub(self, rhs: Self) -> LaurentSeries<P> {
        self + &(-rhs)
    }
}

impl<P: ExpansionPoint> Neg for &LaurentSeries<P> {
    type Output = LaurentSeries<P>;

    fn neg(self) -> LaurentSeries<P> {
        self.scale_real(-1.0)
    }
}

impl<P: ExpansionPoint> Mul for &LaurentSeries<P> {
    type Output = LaurentSeries<P>;

    /// Cauchy product. A term of `a` at depth `dₐ` times the unknown tail of
    /// `b` (beyond depth `K_b`) lands beyond `dₐ + K_b`, so the product is
    /// known through `min(lead_a + K_b, lead_b + K_a)`.
    fn mul(self, rhs: Self) -> LaurentSeries<P> {
        let bound = |lead: Option<i32>, known: Option<i32>| match (lead, known) {
            (Some(l), Some(k)) => Some(l.saturating_add(k)),
            _ => None,
        };
        let depth = tighter(
            bound(self.leading_depth(), rhs.known_depth),
            bound(rhs.leading_depth(), self.known_depth),
        );
        // Exact zero factor: the product is exactly zero.
        let depth = if (self.is_zero() && self.is_exact()) || (rhs.is_zero() && rhs.is_exact()) {
            None
        } else {
            depth
        };
        let mut out = BTreeMap::<i32, Complex64>::new();
        for (&pa, &ca) in &self.coeffs {
            for (&pb, &cb) in &rhs.coeffs {
                *out.entry(pa + pb).or_default() += ca * cb;
            }
        }
        LaurentSeries::from_terms(out, depth.map(P::power))
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<P: ExpansionPoint> $tr for LaurentSeries<P> {
            type Output = LaurentSeries<P>;
            fn $m(self, rhs: Self) -> LaurentSeries<P> {
                (&self).$m(&rhs)
            }
        }
        impl<P: ExpansionPoint> $tr<&LaurentSeries<P>> for LaurentSeries<P> {
            type Output = LaurentSeries<P>;
            fn $m(self, rhs: &LaurentSeries<P>) -> LaurentSeries<P> {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<P: ExpansionPoint> Neg for LaurentSeries<P> {
    type Output = LaurentSeries<P>;

    fn neg(self) -> LaurentSeries<P> {
        -&self
    }
}

/// Coefficients `c_j` of `√(1−u) = Σ c_j u^j`: 1, −½, −⅛, −1/16, −5/128, …
pub fn sqrt_binomial_coeffs(n: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n);
    let mut cj = 1.0;
    for j in 0..n {
        if j > 0 {
            cj *= (j as f64 - 1.5) / j as f64;
        }
        c.push(cj);
    }
    c
}

/// `Σ_{j=0..order} c_j u^j`, the binomial expansion of `√(1−u)`.
///
/// `u` must vanish at the expansion point. The omitted remainder starts at
/// `u^{order+1}`, which caps the truncation order of the result.
pub fn binomial_sqrt<P: ExpansionPoint>(u: &LaurentSeries<P>, order: usize) -> Result<LaurentSeries<P>> {
    if u.is_zero() && u.is_exact() {
        return Ok(LaurentSeries::one());
    }
    let lead = u.leading_depth().unwrap_or(1);
    if lead < 1 {
        return Err(Error::InvalidExpansionPoint(format!(
            "u has a term at power {} about {}",
            P::power(lead),
            P::NAME
        )));
    }
    let coeffs = sqrt_binomial_coeffs(order + 1);
    let mut sum = LaurentSeries::one();
    let mut power = LaurentSeries::one();
    for &c in &coeffs[1..] {
        power = &power * u;
        sum = &sum + &power.scale_real(c);
    }
    let remainder_depth = (order as i32 + 1).saturating_mul(lead);
    Ok(sum.truncated(P::power(remainder_depth - 1)))
}

/// Residue of `outer · inner` in the annulus where `outer` converges outside
/// a circle and `inner` inside a larger one: `Σ_k outer_k · inner_{−1−k}` over
/// the stored terms. The accuracy is set by how many terms each factor holds.
pub fn annulus_residue(outer: &LaurentSeries<AtInfinity>, inner: &LaurentSeries<AtOrigin>) -> Complex64 {
    outer
        .terms()
        .filter_map(|(k, a)| inner.coeffs.get(&(-1 - k)).map(|b| a * b))
        .sum()
}
