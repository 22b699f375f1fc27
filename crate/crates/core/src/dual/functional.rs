use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Element, Generator, Monomial};
use crate::error::{HopfError, Result};
use crate::hopf::HopfSchema;
use crate::ring::{CoefficientRing, Rational};

/// A linear form on H in one of three closed forms.
///
/// `limit` bounds the degrees on which the form is known; evaluating above it
/// is an error rather than a silent zero. Generators missing from a value
/// table evaluate to zero.
#[derive(Clone, Debug, PartialEq)]
pub enum Functional<R> {
    /// Explicit values on monomials, zero elsewhere.
    Table {
        values: BTreeMap<Monomial, R>,
        limit: Option<u32>,
    },
    /// Generator values extended multiplicatively, with value 1 on the unit.
    Character {
        values: BTreeMap<Generator, R>,
        limit: Option<u32>,
    },
    /// Generator values, zero on the unit and on every product of two or
    /// more generators.
    Infinitesimal {
        values: BTreeMap<Generator, R>,
        limit: Option<u32>,
    },
}

impl<R: CoefficientRing> Functional<R> {
    /// The counit `ε`, the unit of the convolution product.
    pub fn counit() -> Self {
        Functional::Character {
            values: BTreeMap::new(),
            limit: None,
        }
    }

    pub fn zero() -> Self {
        Functional::Table {
            values: BTreeMap::new(),
            limit: None,
        }
    }

    pub fn character(values: impl IntoIterator<Item = (Generator, R)>) -> Self {
        Functional::Character {
            values: clean(values),
            limit: None,
        }
    }

    pub fn infinitesimal(values: impl IntoIterator<Item = (Generator, R)>) -> Self {
        Functional::Infinitesimal {
            values: clean(values),
            limit: None,
        }
    }

    pub fn table(values: impl IntoIterator<Item = (Monomial, R)>) -> Self {
        Functional::Table {
            values: values.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            limit: None,
        }
    }

    pub fn with_limit(mut self, max_degree: u32) -> Self {
        match &mut self {
            Functional::Table { limit, .. }
            | Functional::Character { limit, .. }
            | Functional::Infinitesimal { limit, .. } => *limit = Some(max_degree),
        }
        self
    }

    pub fn limit(&self) -> Option<u32> {
        match self {
            Functional::Table { limit, .. }
            | Functional::Character { limit, .. }
            | Functional::Infinitesimal { limit, .. } => *limit,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Functional::Table { .. } => "table",
            Functional::Character { .. } => "character",
            Functional::Infinitesimal { .. } => "infinitesimal",
        }
    }

    /// Generator values of a character or infinitesimal character.
    pub fn generator_values(&self) -> Option<&BTreeMap<Generator, R>> {
        match self {
            Functional::Character { values, .. } | Functional::Infinitesimal { values, .. } => Some(values),
            Functional::Table { .. } => None,
        }
    }

    pub fn value_at(&self, g: &Generator) -> R {
        match self {
            Functional::Character { values, .. } | Functional::Infinitesimal { values, .. } => {
                values.get(g).cloned().unwrap_or_else(R::zero)
            }
            Functional::Table { values, .. } => values
                .get(&Monomial::generator(g.clone()))
                .cloned()
                .unwrap_or_else(R::zero),
        }
    }

    pub fn eval_monomial(&self, m: &Monomial) -> Result<R> {
        if let Some(limit) = self.limit() {
            if m.y_degree() > limit {
                return Err(HopfError::CutoffExceeded {
                    what: format!("{} evaluated on {m}", self.kind()),
                    requested: m.y_degree(),
                    limit,
                });
            }
        }
        Ok(match self {
            Functional::Table { values, .. } => values.get(m).cloned().unwrap_or_else(R::zero),
            Functional::Character { values, .. } => {
                let mut acc = R::one();
                for (g, e) in m.factors() {
                    match values.get(g) {
                        Some(v) => acc = acc * v.pow(*e),
                        None => return Ok(R::zero()),
                    }
                }
                acc
            }
            Functional::Infinitesimal { values, .. } => match m.as_generator() {
                Some(g) => values.get(g).cloned().unwrap_or_else(R::zero),
                None => R::zero(),
            },
        })
    }

    /// `⟨f, h⟩` for `h` with rational coefficients.
    pub fn eval(&self, h: &Element<Rational>) -> Result<R> {
        let mut acc = R::zero();
        for (m, c) in h.terms() {
            let v = self.eval_monomial(m)?;
            if !v.is_zero() {
                acc = acc + v * R::from_rational(c);
            }
        }
        Ok(acc)
    }

    /// Maps every stored value, keeping the closed form.
    pub fn map_values<S: CoefficientRing>(&self, f: impl Fn(&R) -> S) -> Functional<S> {
        match self {
            Functional::Table { values, limit } => Functional::Table {
                values: values
                    .iter()
                    .map(|(m, v)| (m.clone(), f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
                limit: *limit,
            },
            Functional::Character { values, limit } => Functional::Character {
                values: clean(values.iter().map(|(g, v)| (g.clone(), f(v)))),
                limit: *limit,
            },
            Functional::Infinitesimal { values, limit } => Functional::Infinitesimal {
                values: clean(values.iter().map(|(g, v)| (g.clone(), f(v)))),
                limit: *limit,
            },
        }
    }

    /// Rescales each value by a function of the degree of its key. Keeps
    /// characters multiplicative only when `f` is itself multiplicative in
    /// the degree (as for `e^{nz}`).
    pub fn scale_by_degree(&self, f: impl Fn(u32) -> R) -> Self {
        match self {
            Functional::Table { values, limit } => Functional::Table {
                values: values
                    .iter()
                    .map(|(m, v)| (m.clone(), v.clone() * f(m.y_degree())))
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
                limit: *limit,
            },
            Functional::Character { values, limit } => Functional::Character {
                values: clean(values.iter().map(|(g, v)| (g.clone(), v.clone() * f(g.degree())))),
                limit: *limit,
            },
            Functional::Infinitesimal { values, limit } => Functional::Infinitesimal {
                values: clean(values.iter().map(|(g, v)| (g.clone(), v.clone() * f(g.degree())))),
                limit: *limit,
            },
        }
    }

    /// Checks that every generator named in the functional belongs to `schema`.
    pub fn check_schema(&self, schema: &HopfSchema) -> Result<()> {
        match self {
            Functional::Table { values, .. } => values.keys().try_for_each(|m| schema.check_monomial(m)),
            Functional::Character { values, .. } | Functional::Infinitesimal { values, .. } => {
                values.keys().try_for_each(|g| schema.contains(g))
            }
        }
    }

    pub fn into_expr(self) -> Expr<R> {
        Expr::Leaf(Arc::new(self))
    }
}

fn clean<R: CoefficientRing>(values: impl IntoIterator<Item = (Generator, R)>) -> BTreeMap<Generator, R> {
    values.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl<R: CoefficientRing> fmt::Display for Functional<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = match self {
            Functional::Table { values, .. } => values.iter().map(|(m, v)| format!("{m} -> {v}")).collect(),
            Functional::Character { values, .. } | Functional::Infinitesimal { values, .. } => {
                values.iter().map(|(g, v)| format!("{g} -> {v}")).collect()
            }
        };
        write!(f, "{} {{{}}}", self.kind(), entries.join(", "))
    }
}

/// Multiplier applied to the degree-`n` component.
#[derive(Clone)]
pub enum DegreeScale<R> {
    /// `Y`: multiply by `n`.
    Y,
    /// `Y^{-1}` on H⁺: divide by `n`; zero on the unit.
    YInverse,
    Custom(Arc<dyn Fn(u32) -> R + Send + Sync>),
}

impl<R: CoefficientRing> DegreeScale<R> {
    pub fn factor(&self, n: u32) -> R {
        match self {
            DegreeScale::Y => R::from_int(n as i64),
            DegreeScale::YInverse => {
                if n == 0 {
                    R::zero()
                } else {
                    R::from_rational(&Rational::new(1.into(), n.into()))
                }
            }
            DegreeScale::Custom(f) => f(n),
        }
    }
}

impl<R> fmt::Debug for DegreeScale<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeScale::Y => f.write_str("Y"),
            DegreeScale::YInverse => f.write_str("Y^-1"),
            DegreeScale::Custom(_) => f.write_str("custom"),
        }
    }
}

/// A formal expression in functionals, evaluated lazily on elements through
/// iterated coproducts. Nothing is materialized until a closed form is asked
/// for explicitly.
#[derive(Clone, Debug)]
pub enum Expr<R> {
    Leaf(Arc<Functional<R>>),
    /// `f1 ∗ f2 ∗ ... ∗ fn`; the empty product is the counit.
    Convolution(Vec<Expr<R>>),
    /// `Σ c_i f_i`
    Sum(Vec<(R, Expr<R>)>),
    /// The transpose of a degree multiplier (`Y_*`, `θ_*`, ...).
    DegreeScaled(Box<Expr<R>>, DegreeScale<R>),
    /// `f ∘ S`
    Antipode(Box<Expr<R>>),
}

impl<R: CoefficientRing> Expr<R> {
    pub fn leaf(f: Functional<R>) -> Self {
        Expr::Leaf(Arc::new(f))
    }

    pub fn counit() -> Self {
        Expr::Convolution(Vec::new())
    }

    pub fn convolve(self, other: Expr<R>) -> Self {
        let mut parts = match self {
            Expr::Convolution(v) => v,
            e => vec![e],
        };
        match other {
            Expr::Convolution(v) => parts.extend(v),
            e => parts.push(e),
        }
        Expr::Convolution(parts)
    }

    pub fn power(self, n: usize) -> Self {
        Expr::Convolution(vec![self; n])
    }

    pub fn scaled(self, c: R) -> Self {
        Expr::Sum(vec![(c, self)])
    }

    pub fn minus(self, other: Expr<R>) -> Self {
        Expr::Sum(vec![(R::one(), self), (-R::one(), other)])
    }

    pub fn plus(self, other: Expr<R>) -> Self {
        Expr::Sum(vec![(R::one(), self), (R::one(), other)])
    }

    pub fn y_star(self) -> Self {
        Expr::DegreeScaled(Box::new(self), DegreeScale::Y)
    }

    pub fn y_star_inverse(self) -> Self {
        Expr::DegreeScaled(Box::new(self), DegreeScale::YInverse)
    }

    pub fn degree_scaled(self, f: impl Fn(u32) -> R + Send + Sync + 'static) -> Self {
        Expr::DegreeScaled(Box::new(self), DegreeScale::Custom(Arc::new(f)))
    }

    pub fn compose_antipode(self) -> Self {
        Expr::Antipode(Box::new(self))
    }
}
