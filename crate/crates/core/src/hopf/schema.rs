use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::algebra::{Element, Generator, Monomial, Tensor};
use crate::error::{HopfError, Result, SchemaViolation};
use crate::instances::trees;
use crate::ring::{int, Rational};

/// Which family a schema belongs to. Only affects name resolution and the
/// degree cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaKind {
    /// Generators `t1, t2, ...` in every degree.
    Ladder,
    /// Rooted trees up to a vertex count; requests beyond it are errors.
    RootedTrees { max_vertices: u32 },
    /// A finite generator table read from JSON.
    Custom,
}

#[derive(Clone, Debug, Default)]
struct GeneratorTable {
    by_name: HashMap<String, Generator>,
    by_degree: BTreeMap<u32, Vec<Generator>>,
    reduced: HashMap<Generator, Tensor<Rational>>,
}

type TensorMemo<K> = RwLock<HashMap<K, Arc<Tensor<Rational>>>>;

#[derive(Debug, Default)]
pub(crate) struct Caches {
    pub(crate) coproduct: TensorMemo<Monomial>,
    pub(crate) antipode_right: RwLock<HashMap<Monomial, Arc<Element<Rational>>>>,
    pub(crate) antipode_left: RwLock<HashMap<Monomial, Arc<Element<Rational>>>>,
    pub(crate) iterated: TensorMemo<(Monomial, usize)>,
    pub(crate) reduced_iterated: TensorMemo<(Monomial, usize)>,
}

/// Generators with positive degrees plus the reduced coproduct of each
/// generator, whose right legs are single generators. Together these define a
/// graded connected commutative Hopf algebra on the free polynomial algebra.
///
/// Memo tables for coproducts and antipodes live inside the schema; they are
/// filled idempotently, so a shared schema behaves as an immutable value.
#[derive(Debug)]
pub struct HopfSchema {
    kind: SchemaKind,
    table: GeneratorTable,
    pub(crate) caches: Caches,
}

impl Clone for HopfSchema {
    fn clone(&self) -> Self {
        HopfSchema {
            kind: self.kind.clone(),
            table: self.table.clone(),
            caches: Caches::default(),
        }
    }
}

/// Raw data for a table-driven schema, before validation.
#[derive(Clone, Debug, Default)]
pub struct SchemaData {
    /// `(name, degree)`
    pub generators: Vec<(String, u32)>,
    /// generator name -> list of `(left monomial factors, right leg, coeff)`
    pub reduced: Vec<(String, Vec<ReducedTerm>)>,
}

#[derive(Clone, Debug)]
pub struct ReducedTerm {
    pub left: Vec<(String, u32)>,
    /// The right leg as a monomial; valid schemas have a single generator here.
    pub right: Vec<(String, u32)>,
    pub coeff: Rational,
}

impl HopfSchema {
    /// Generators `t_n` of degree `n`, reduced coproduct `Σ_{k=1}^{n-1} t_k ⊗ t_{n-k}`.
    pub fn ladder() -> Self {
        HopfSchema {
            kind: SchemaKind::Ladder,
            table: GeneratorTable::default(),
            caches: Caches::default(),
        }
    }

    /// Builds a table-driven schema and validates every structural invariant.
    /// With `check_coassociativity` the induced coproduct is also checked on
    /// all generators.
    pub fn from_data(kind: SchemaKind, data: &SchemaData, check_coassociativity: bool) -> Result<Self> {
        let mut violations = Vec::new();
        let mut table = GeneratorTable::default();
        for (i, (name, degree)) in data.generators.iter().enumerate() {
            let loc = format!("generators[{i}] ({name})");
            if *degree == 0 {
                violations.push(SchemaViolation {
                    invariant: "generator degree must be >= 1",
                    location: loc,
                    detail: "degree 0 generators would break connectedness".into(),
                });
                continue;
            }
            if name.is_empty() {
                violations.push(SchemaViolation {
                    invariant: "generator names must be nonempty",
                    location: loc,
                    detail: String::new(),
                });
                continue;
            }
            if table.by_name.contains_key(name) {
                violations.push(SchemaViolation {
                    invariant: "generator names must be unique",
                    location: loc,
                    detail: format!("`{name}` declared twice"),
                });
                continue;
            }
            let g = Generator::new(name, *degree);
            table.by_name.insert(name.clone(), g.clone());
            table.by_degree.entry(*degree).or_default().push(g);
        }
        for gens in table.by_degree.values_mut() {
            gens.sort();
        }

        for (gname, terms) in &data.reduced {
            let Some(x) = table.by_name.get(gname).cloned() else {
                violations.push(SchemaViolation {
                    invariant: "coproduct keys must be declared generators",
                    location: format!("reducedCoproduct.{gname}"),
                    detail: format!("`{gname}` is not a generator"),
                });
                continue;
            };
            let mut tensor = Tensor::zero(2);
            for (i, term) in terms.iter().enumerate() {
                let loc = format!("reducedCoproduct.{gname}[{i}]");
                let mut resolve = |factors: &[(String, u32)]| -> Option<Monomial> {
                    let mut out = Vec::new();
                    for (n, e) in factors {
                        match table.by_name.get(n) {
                            Some(g) => out.push((g.clone(), *e)),
                            None => {
                                violations.push(SchemaViolation {
                                    invariant: "coproduct legs must use declared generators",
                                    location: loc.clone(),
                                    detail: format!("`{n}` is not a generator"),
                                });
                                return None;
                            }
                        }
                    }
                    Some(Monomial::from_factors(out))
                };
                let (Some(left), Some(right)) = (resolve(&term.left), resolve(&term.right)) else {
                    continue;
                };
                if right.as_generator().is_none() {
                    violations.push(SchemaViolation {
                        invariant: "right leg not a generator (reduced coproduct must lie in H ⊗ V)",
                        location: loc,
                        detail: format!("right leg is `{right}`"),
                    });
                    continue;
                }
                if left.is_one() {
                    violations.push(SchemaViolation {
                        invariant: "coproduct not progressive (left leg must have positive degree)",
                        location: loc,
                        detail: "left leg is the unit".into(),
                    });
                    continue;
                }
                if left.y_degree() + right.y_degree() != x.degree() {
                    violations.push(SchemaViolation {
                        invariant: "coproduct not graded (leg degrees must add up to the generator degree)",
                        location: loc,
                        detail: format!("{} + {} != {}", left.y_degree(), right.y_degree(), x.degree()),
                    });
                    continue;
                }
                tensor.add_term(vec![left, right], term.coeff.clone());
            }
            if !tensor.is_zero() {
                table.reduced.insert(x, tensor);
            }
        }

        if !violations.is_empty() {
            return Err(HopfError::InvalidSchema(violations));
        }
        let schema = HopfSchema {
            kind,
            table,
            caches: Caches::default(),
        };
        if check_coassociativity {
            let top = schema.table.by_degree.keys().next_back().copied().unwrap_or(0);
            let v = schema.coassociativity_violations(top)?;
            if !v.is_empty() {
                return Err(HopfError::InvalidSchema(v));
            }
        }
        Ok(schema)
    }

    /// Generators whose coproduct is not coassociative, up to `max_degree`.
    pub fn coassociativity_violations(&self, max_degree: u32) -> Result<Vec<SchemaViolation>> {
        let mut out = Vec::new();
        for g in self.generators_up_to(max_degree)? {
            let m = Monomial::generator(g.clone());
            let delta = self.coproduct_monomial(&m)?;
            let left = delta.expand_leg(0, |x| Ok((*self.coproduct_monomial(x)?).clone()))?;
            let right = delta.expand_leg(1, |x| Ok((*self.coproduct_monomial(x)?).clone()))?;
            let diff = left.sub(&right)?;
            if !diff.is_zero() {
                out.push(SchemaViolation {
                    invariant: "coassociativity",
                    location: format!("generator {g}"),
                    detail: format!("(Δ⊗id)Δ - (id⊗Δ)Δ = {diff}"),
                });
            }
        }
        Ok(out)
    }

    pub fn kind(&self) -> &SchemaKind {
        &self.kind
    }

    /// `ladder`, `trees:<n>` or `custom`.
    pub fn label(&self) -> String {
        match self.kind {
            SchemaKind::Ladder => "ladder".into(),
            SchemaKind::RootedTrees { max_vertices } => format!("trees:{max_vertices}"),
            SchemaKind::Custom => "custom".into(),
        }
    }

    /// Degree beyond which the schema cannot answer (trees only).
    pub fn degree_limit(&self) -> Option<u32> {
        match self.kind {
            SchemaKind::RootedTrees { max_vertices } => Some(max_vertices),
            _ => None,
        }
    }

    pub(crate) fn check_degree(&self, degree: u32, what: impl FnOnce() -> String) -> Result<()> {
        if let Some(limit) = self.degree_limit() {
            if degree > limit {
                return Err(HopfError::CutoffExceeded {
                    what: what(),
                    requested: degree,
                    limit,
                });
            }
        }
        Ok(())
    }

    /// Looks a generator up by name. Tree names are canonicalized first.
    pub fn resolve(&self, name: &str) -> Result<Generator> {
        match self.kind {
            SchemaKind::Ladder => {
                let n: u32 = name
                    .strip_prefix('t')
                    .and_then(|s| s.parse().ok())
                    .filter(|n| *n >= 1 && !name[1..].starts_with('0'))
                    .ok_or_else(|| HopfError::UnknownGenerator(name.to_string()))?;
                Ok(Generator::new(name, n))
            }
            SchemaKind::RootedTrees { .. } => {
                let tree = trees::RootedTree::parse(name)?;
                self.check_degree(tree.vertex_count(), || format!("tree {name}"))?;
                self.table
                    .by_name
                    .get(tree.encoding())
                    .cloned()
                    .ok_or_else(|| HopfError::UnknownGenerator(name.to_string()))
            }
            SchemaKind::Custom => self
                .table
                .by_name
                .get(name)
                .cloned()
                .ok_or_else(|| HopfError::UnknownGenerator(name.to_string())),
        }
    }

    /// Checks that a generator built elsewhere belongs to this schema.
    pub fn contains(&self, g: &Generator) -> Result<()> {
        let found = self.resolve(g.name())?;
        if found != *g {
            return Err(HopfError::UnknownGenerator(format!(
                "{} (degree {})",
                g.name(),
                g.degree()
            )));
        }
        Ok(())
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        m.generators().try_for_each(|g| self.contains(g))
    }

    pub fn generators_of_degree(&self, degree: u32) -> Result<Vec<Generator>> {
        if degree == 0 {
            return Ok(Vec::new());
        }
        self.check_degree(degree, || "generator enumeration".into())?;
        Ok(match self.kind {
            SchemaKind::Ladder => vec![Generator::new(&format!("t{degree}"), degree)],
            _ => self.table.by_degree.get(&degree).cloned().unwrap_or_default(),
        })
    }

    pub fn generators_up_to(&self, max_degree: u32) -> Result<Vec<Generator>> {
        let mut out = Vec::new();
        for d in 1..=max_degree {
            out.extend(self.generators_of_degree(d)?);
        }
        Ok(out)
    }

    /// The reduced coproduct `Δx - x⊗1 - 1⊗x` of a generator.
    pub fn generator_reduced_coproduct(&self, g: &Generator) -> Result<Tensor<Rational>> {
        self.contains(g)?;
        Ok(match self.kind {
            SchemaKind::Ladder => {
                let n = g.degree();
                let mut t = Tensor::zero(2);
                for k in 1..n {
                    let a = Generator::new(&format!("t{k}"), k);
                    let b = Generator::new(&format!("t{}", n - k), n - k);
                    t.add_term(vec![Monomial::generator(a), Monomial::generator(b)], int(1));
                }
                t
            }
            _ => self.table.reduced.get(g).cloned().unwrap_or_else(|| Tensor::zero(2)),
        })
    }

    /// All monomials of y-degree exactly `degree`, in basis order.
    pub fn basis(&self, degree: u32) -> Result<Vec<Monomial>> {
        if degree == 0 {
            return Ok(vec![Monomial::one()]);
        }
        let gens = self.generators_up_to(degree)?;
        let mut out = Vec::new();
        let mut current: Vec<(Generator, u32)> = Vec::new();
        fill_basis(&gens, 0, degree, &mut current, &mut out);
        out.sort();
        Ok(out)
    }

    /// All monomials of y-degree `<= max_degree`, in basis order.
    pub fn basis_up_to(&self, max_degree: u32) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            out.extend(self.basis(d)?);
        }
        Ok(out)
    }

    /// Element `x` for a generator name.
    pub fn generator_element(&self, name: &str) -> Result<Element<Rational>> {
        Ok(Element::generator(self.resolve(name)?))
    }
}

fn fill_basis(
    gens: &[Generator],
    start: usize,
    remaining: u32,
    current: &mut Vec<(Generator, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_factors(current.iter().cloned()));
        return;
    }
    for i in start..gens.len() {
        let d = gens[i].degree();
        if d > remaining {
            continue;
        }
        let max_e = remaining / d;
        for e in (1..=max_e).rev() {
            current.push((gens[i].clone(), e));
            fill_basis(gens, i + 1, remaining - e * d, current, out);
            current.pop();
        }
    }
}

impl SchemaData {
    /// The data of a schema, as it would be serialized. Ladder schemas are
    /// materialized up to `max_degree`.
    pub fn from_schema(schema: &HopfSchema, max_degree: u32) -> Result<Self> {
        let gens = schema.generators_up_to(max_degree)?;
        let mut data = SchemaData::default();
        for g in &gens {
            data.generators.push((g.name().to_string(), g.degree()));
        }
        for g in &gens {
            let t = schema.generator_reduced_coproduct(g)?;
            if t.is_zero() {
                continue;
            }
            let mut terms = Vec::new();
            for (legs, c) in t.terms() {
                if c.is_zero() {
                    continue;
                }
                let f = |m: &Monomial| m.factors().iter().map(|(g, e)| (g.name().to_string(), *e)).collect();
                terms.push(ReducedTerm {
                    left: f(&legs[0]),
                    right: f(&legs[1]),
                    coeff: c.clone(),
                });
            }
            data.reduced.push((g.name().to_string(), terms));
        }
        Ok(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_resolves_names() {
        let s = HopfSchema::ladder();
        assert_eq!(s.resolve("t3").unwrap().degree(), 3);
        assert!(matches!(s.resolve("x3"), Err(HopfError::UnknownGenerator(_))));
        assert!(matches!(s.resolve("t0"), Err(HopfError::UnknownGenerator(_))));
        assert!(matches!(s.resolve("t01"), Err(HopfError::UnknownGenerator(_))));
    }

    #[test]
    fn ladder_basis_counts_are_partition_numbers() {
        let s = HopfSchema::ladder();
        let counts: Vec<usize> = (0..=7).map(|d| s.basis(d).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn degree_zero_generator_rejected() {
        let data = SchemaData {
            generators: vec![("x0".into(), 0), ("x1".into(), 1)],
            reduced: vec![],
        };
        let err = HopfSchema::from_data(SchemaKind::Custom, &data, true).unwrap_err();
        let HopfError::InvalidSchema(v) = err else { panic!() };
        assert_eq!(v.len(), 1);
        assert!(v[0].invariant.contains("degree must be >= 1"));
    }

    #[test]
    fn ungraded_coproduct_rejected() {
        let data = SchemaData {
            generators: vec![("x1".into(), 1), ("x2".into(), 2)],
            reduced: vec![(
                "x2".into(),
                vec![ReducedTerm {
                    left: vec![("x2".into(), 1)],
                    right: vec![("x1".into(), 1)],
                    coeff: int(1),
                }],
            )],
        };
        let HopfError::InvalidSchema(v) = HopfSchema::from_data(SchemaKind::Custom, &data, true).unwrap_err() else {
            panic!()
        };
        assert!(v[0].invariant.contains("not graded"));
        assert_eq!(v[0].location, "reducedCoproduct.x2[0]");
    }

    #[test]
    fn right_leg_must_be_generator() {
        let data = SchemaData {
            generators: vec![("x1".into(), 1), ("x3".into(), 3)],
            reduced: vec![(
                "x3".into(),
                vec![ReducedTerm {
                    left: vec![("x1".into(), 1)],
                    right: vec![("x1".into(), 2)],
                    coeff: int(1),
                }],
            )],
        };
        let HopfError::InvalidSchema(v) = HopfSchema::from_data(SchemaKind::Custom, &data, true).unwrap_err() else {
            panic!()
        };
        assert!(v[0].invariant.contains("right leg not a generator"));
    }
}
