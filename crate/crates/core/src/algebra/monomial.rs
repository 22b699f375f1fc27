use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A generator of the polynomial algebra, with its grading degree.
///
/// Generators are ordered by `(degree, name)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    degree: u32,
    name: Arc<str>,
}

impl Generator {
    /// `degree` must be positive; schemas validate this before building one.
    pub fn new(name: &str, degree: u32) -> Self {
        debug_assert!(degree >= 1, "generator `{name}` of degree 0");
        Generator {
            degree,
            name: Arc::from(name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A commutative word in the generators: sorted `(generator, exponent)` pairs
/// with positive exponents. The empty word is the unit.
///
/// Monomials are ordered by degree, then by number of factors, then
/// lexicographically on the factors; this is the basis order used throughout.
#[derive(Clone, Debug)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
    y_degree: u32,
    poly_degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            factors: Vec::new(),
            y_degree: 0,
            poly_degree: 0,
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: Generator, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Monomial {
            y_degree: g.degree() * exp,
            poly_degree: exp,
            factors: vec![(g, exp)],
        }
    }

    /// Sorts and merges arbitrary factors; zero exponents are dropped.
    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut v: Vec<(Generator, u32)> = factors.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Generator, u32)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match merged.last_mut() {
                Some((last, le)) if *last == g => *le += e,
                _ => merged.push((g, e)),
            }
        }
        Self::from_sorted(merged)
    }

    fn from_sorted(factors: Vec<(Generator, u32)>) -> Self {
        let y_degree = factors.iter().map(|(g, e)| g.degree() * e).sum();
        let poly_degree = factors.iter().map(|(_, e)| e).sum();
        Monomial {
            factors,
            y_degree,
            poly_degree,
        }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.factors.iter().map(|(g, _)| g)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of `exponent * degree(generator)`.
    pub fn y_degree(&self) -> u32 {
        self.y_degree
    }

    /// Sum of exponents.
    pub fn poly_degree(&self) -> u32 {
        self.poly_degree
    }

    /// The generator, if this monomial is a single generator to the first power.
    pub fn as_generator(&self) -> Option<&Generator> {
        match self.factors.as_slice() {
            [(g, 1)] => Some(g),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            factors: out,
            y_degree: self.y_degree + other.y_degree,
            poly_degree: self.poly_degree + other.poly_degree,
        }
    }

    pub fn pow(&self, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(g, e)| (g.clone(), e * exp)).collect(),
            y_degree: self.y_degree * exp,
            poly_degree: self.poly_degree * exp,
        }
    }

    /// All ways of writing `self = a * b`, as (a, b) pairs with multiplicity
    /// counted once per distinct pair.
    pub fn splittings(&self) -> Vec<(Monomial, Monomial)> {
        let mut out = vec![(Vec::new(), Vec::new())];
        for (g, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for (l, r) in &out {
                for k in 0..=*e {
                    let mut l2: Vec<(Generator, u32)> = l.clone();
                    let mut r2: Vec<(Generator, u32)> = r.clone();
                    if k > 0 {
                        l2.push((g.clone(), k));
                    }
                    if k < *e {
                        r2.push((g.clone(), e - k));
                    }
                    next.push((l2, r2));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(l, r)| (Monomial::from_sorted(l), Monomial::from_sorted(r)))
            .collect()
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.y_degree
            .cmp(&other.y_degree)
            .then(self.poly_degree.cmp(&other.poly_degree))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}
