//! Seeded property suites for the convolution calculus and for the
//! renormalization machinery. Each property becomes one [`AxiomCheck`] with
//! the first failing case as counterexample.
//!
//! [`AxiomCheck`]: crate::hopf::AxiomCheck

use num_traits::{One, Zero};

use crate::algebra::{Element, Generator, Monomial};
use crate::dual::{
    character_witness, evaluate, evaluate_monomial, exp_star, infinitesimal_witness, lie_bracket, log_star,
    materialize_character, metric_distance, Expr, Functional,
};
use crate::error::Result;
use crate::hopf::{AxiomReport, HopfSchema};
use crate::random::Sampler;
use crate::renorm::{
    birkhoff_decompose, build_special_loop, dn_recursive, dn_simplex, reconstruction_witness, required_truncation,
    rg_limit_check, rota_baxter_t, scattering_check, verify_birkhoff, BirkhoffPair,
};
use crate::ring::{CoefficientRing, Laurent, Rational};

/// Case counts of the seeded suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_degree: u32,
    pub nilpotence_tuples: usize,
    pub permanent_tuples: usize,
    pub round_trips: usize,
    pub group_cases: usize,
    pub rota_baxter_pairs: usize,
    pub birkhoff_characters: usize,
    pub beta_cases: usize,
    /// `eps` order through which the renormalization-group limit is computed.
    pub eps_order: i32,
}

impl SuiteConfig {
    pub fn new(seed: u64, max_degree: u32) -> Self {
        SuiteConfig {
            seed,
            max_degree,
            nilpotence_tuples: 50,
            permanent_tuples: 50,
            round_trips: 25,
            group_cases: 5,
            rota_baxter_pairs: 100,
            birkhoff_characters: 25,
            beta_cases: 10,
            eps_order: 4,
        }
    }
}

type Q = Rational;
type L = Laurent<Rational>;

fn leaf<R: CoefficientRing>(f: &Functional<R>) -> Expr<R> {
    Expr::leaf(f.clone())
}

fn compare_on<R: CoefficientRing>(
    schema: &HopfSchema,
    basis: &[Monomial],
    lhs: &Expr<R>,
    rhs: &Expr<R>,
) -> Result<Option<String>> {
    for m in basis {
        let a = evaluate_monomial(schema, lhs, m)?;
        let b = evaluate_monomial(schema, rhs, m)?;
        if !a.agrees(&b) {
            return Ok(Some(format!("on {m}: {a}  !=  {b}")));
        }
    }
    Ok(None)
}

fn generator_list(m: &Monomial) -> Vec<Generator> {
    m.factors()
        .iter()
        .flat_map(|(g, e)| std::iter::repeat_n(g.clone(), *e as usize))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// `Σ_σ Π_j Z_{σ(j)}(x_j)` for the generators `x_j` of a product.
fn permanent(zs: &[Functional<Q>], gens: &[Generator]) -> Q {
    let mut acc = Q::zero();
    for sigma in permutations(zs.len()) {
        let mut term = Q::one();
        for (j, g) in gens.iter().enumerate() {
            term *= zs[sigma[j]].value_at(g);
        }
        acc += term;
    }
    acc
}

/// A product of forms dual to the generators of `m` that is nonzero on `h`,
/// tried for each monomial of `h` in turn.
fn separating_product(schema: &HopfSchema, h: &Element<Q>) -> Result<Option<Monomial>> {
    for (m, _) in h.terms() {
        let factors: Vec<Expr<Q>> = generator_list(m)
            .into_iter()
            .map(|g| Expr::leaf(Functional::infinitesimal([(g, Q::one())])))
            .collect();
        let product = if factors.is_empty() {
            Expr::counit()
        } else {
            Expr::Convolution(factors)
        };
        if !evaluate(schema, &product, h)?.is_zero() {
            return Ok(Some(m.clone()));
        }
    }
    Ok(None)
}

/// Convolution-calculus properties: group laws, brackets, nilpotence, the
/// permanent formula, exponential and logarithm, separation, the transposed
/// grading and the metric.
pub fn dual_suite(schema: &HopfSchema, cfg: &SuiteConfig) -> Result<AxiomReport> {
    let d = cfg.max_degree.min(5);
    let basis = schema.basis_up_to(d)?;
    let mut r = AxiomReport::default();
    let seed = cfg.seed;

    let mut rng = Sampler::new(seed, "character-triples");
    let triples = (0..cfg.group_cases)
        .map(|_| {
            Ok([
                rng.character(schema, d)?,
                rng.character(schema, d)?,
                rng.character(schema, d)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let case = |i: &(usize, &[Functional<Q>; 3])| format!("seed {seed}, character triple {}", i.0);
    r.run(
        "convolution-associative",
        "(χ1 ∗ χ2) ∗ χ3 = χ1 ∗ (χ2 ∗ χ3) with each inner product materialized",
        d,
        triples.iter().enumerate(),
        case,
        |(_, [a, b, c])| {
            let ab = materialize_character(schema, &leaf(a).convolve(leaf(b)), d)?;
            let bc = materialize_character(schema, &leaf(b).convolve(leaf(c)), d)?;
            compare_on(
                schema,
                &basis,
                &leaf(&ab).convolve(leaf(c)),
                &leaf(a).convolve(leaf(&bc)),
            )
        },
    );
    r.run(
        "convolution-unit",
        "χ ∗ ε = ε ∗ χ = χ",
        d,
        triples.iter().enumerate(),
        case,
        |(_, [a, _, _])| {
            let left = compare_on(schema, &basis, &leaf(a).convolve(Expr::counit()), &leaf(a))?;
            Ok(left.or(compare_on(schema, &basis, &Expr::counit().convolve(leaf(a)), &leaf(a))?))
        },
    );
    r.run(
        "character-inverse",
        "(χ ∘ S) ∗ χ = χ ∗ (χ ∘ S) = ε",
        d,
        triples.iter().enumerate(),
        case,
        |(_, [a, _, _])| {
            let inv = leaf(a).compose_antipode();
            let left = compare_on(schema, &basis, &inv.clone().convolve(leaf(a)), &Expr::counit())?;
            Ok(left.or(compare_on(schema, &basis, &leaf(a).convolve(inv), &Expr::counit())?))
        },
    );
    r.run(
        "character-product-multiplicative",
        "χ1 ∗ χ2 (ab) = (χ1 ∗ χ2)(a) (χ1 ∗ χ2)(b)",
        d,
        triples.iter().enumerate(),
        case,
        |(_, [a, b, _])| {
            let e = leaf(a).convolve(leaf(b));
            character_witness(schema, |m: &Monomial| evaluate_monomial(schema, &e, m), d)
        },
    );
    r.run(
        "antipode-transpose-antimultiplicative",
        "(ξ ∗ η) ∘ S = (η ∘ S) ∗ (ξ ∘ S)",
        d,
        triples.iter().enumerate(),
        case,
        |(_, [a, b, _])| {
            let lhs = leaf(a).convolve(leaf(b)).compose_antipode();
            let rhs = leaf(b).compose_antipode().convolve(leaf(a).compose_antipode());
            compare_on(schema, &basis, &lhs, &rhs)
        },
    );

    let mut rng = Sampler::new(seed, "infinitesimal-triples");
    let ztriples = (0..cfg.group_cases)
        .map(|_| {
            Ok([
                rng.infinitesimal(schema, d)?,
                rng.infinitesimal(schema, d)?,
                rng.infinitesimal(schema, d)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let zcase = |i: &(usize, &[Functional<Q>; 3])| format!("seed {seed}, infinitesimal triple {}", i.0);
    r.run(
        "bracket-infinitesimal",
        "Z1 ∗ Z2 − Z2 ∗ Z1 vanishes on 1 and on products",
        d,
        ztriples.iter().enumerate(),
        zcase,
        |(_, [a, b, _])| {
            let e = leaf(a).convolve(leaf(b)).minus(leaf(b).convolve(leaf(a)));
            infinitesimal_witness(schema, |m: &Monomial| evaluate_monomial(schema, &e, m), d)
        },
    );
    r.run(
        "bracket-antisymmetric",
        "[Z1, Z2] = −[Z2, Z1]",
        d,
        ztriples.iter().enumerate(),
        zcase,
        |(_, [a, b, _])| {
            let ab = lie_bracket(schema, a, b, d)?;
            let ba = lie_bracket(schema, b, a, d)?;
            compare_on(schema, &basis, &leaf(&ab), &leaf(&ba).scaled(-Q::one()))
        },
    );
    r.run(
        "bracket-jacobi",
        "[Z1, [Z2, Z3]] + [Z2, [Z3, Z1]] + [Z3, [Z1, Z2]] = 0",
        d,
        ztriples.iter().enumerate(),
        zcase,
        |(_, [a, b, c])| {
            let mut sum = Expr::Sum(Vec::new());
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                let inner = lie_bracket(schema, y, z, d)?;
                sum = sum.plus(leaf(&lie_bracket(schema, x, &inner, d)?));
            }
            compare_on(schema, &basis, &sum, &Expr::Sum(Vec::new()))
        },
    );
    r.run(
        "dual-y-derivation",
        "Y_*(ξ ∗ η) = Y_*ξ ∗ η + ξ ∗ Y_*η",
        d,
        ztriples.iter().enumerate(),
        zcase,
        |(_, [a, b, _])| {
            let lhs = leaf(a).convolve(leaf(b)).y_star();
            let rhs = leaf(a)
                .y_star()
                .convolve(leaf(b))
                .plus(leaf(a).convolve(leaf(b).y_star()));
            compare_on(schema, &basis, &lhs, &rhs)
        },
    );

    let max_n = d.min(4) as usize;
    let mut rng = Sampler::new(seed, "nilpotence");
    let tuples = (0..cfg.nilpotence_tuples)
        .map(|i| {
            let n = 1 + i % max_n;
            (0..=n)
                .map(|_| rng.infinitesimal(schema, d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    r.run(
        "nilpotence",
        "Z1 ∗ ... ∗ Z_{n+1} vanishes on every h of degree <= n",
        max_n as u32,
        tuples.iter().enumerate(),
        |(i, zs)| format!("seed {seed}, tuple {i} of {} factors", zs.len()),
        |(_, zs)| {
            let n = zs.len() as u32 - 1;
            let e = Expr::Convolution(zs.iter().map(leaf).collect());
            for m in schema.basis_up_to(n)? {
                let v = evaluate_monomial(schema, &e, &m)?;
                if !v.is_zero() {
                    return Ok(Some(format!("value {v} on {m}")));
                }
            }
            Ok(None)
        },
    );

    let mut rng = Sampler::new(seed, "permanent");
    let tuples = (0..cfg.permanent_tuples)
        .map(|i| {
            let n = 1 + i % max_n;
            (0..n).map(|_| rng.infinitesimal(schema, d)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let describe = |(i, zs): &(usize, &Vec<Functional<Q>>)| format!("seed {seed}, tuple {i} of {} factors", zs.len());
    r.run(
        "permanent-formula",
        "⟨Z1 ∗ ... ∗ Zn, x1 ... xn⟩ = Σ_σ Π_j Z_σ(j)(x_j)",
        d,
        tuples.iter().enumerate(),
        describe,
        |(_, zs)| {
            let e = Expr::Convolution(zs.iter().map(leaf).collect());
            for m in basis.iter().filter(|m| m.poly_degree() as usize == zs.len()) {
                let lhs = evaluate_monomial(schema, &e, m)?;
                let rhs = permanent(zs, &generator_list(m));
                if lhs != rhs {
                    return Ok(Some(format!("on {m}: coproduct pairing {lhs}, permanent {rhs}")));
                }
            }
            Ok(None)
        },
    );
    r.run(
        "permanent-vanishing",
        "Z1 ∗ ... ∗ Zn vanishes on products of more than n generators",
        d,
        tuples.iter().enumerate(),
        describe,
        |(_, zs)| {
            let e = Expr::Convolution(zs.iter().map(leaf).collect());
            for m in basis.iter().filter(|m| m.poly_degree() as usize > zs.len()) {
                let v = evaluate_monomial(schema, &e, m)?;
                if !v.is_zero() {
                    return Ok(Some(format!("value {v} on {m}")));
                }
            }
            Ok(None)
        },
    );

    let gens = schema.generators_up_to(d)?;
    let mut rng = Sampler::new(seed, "exp-log");
    let zs = (0..cfg.round_trips)
        .map(|_| rng.infinitesimal(schema, d))
        .collect::<Result<Vec<_>>>()?;
    let chis = (0..cfg.round_trips)
        .map(|_| rng.character(schema, d))
        .collect::<Result<Vec<_>>>()?;
    r.run(
        "log-exp-round-trip",
        "log_∗(e^{∗Z}) = Z",
        d,
        zs.iter().enumerate(),
        |(i, _)| format!("seed {seed}, infinitesimal {i}"),
        |(_, z)| {
            let back = log_star(schema, &exp_star(schema, z, d)?, d)?;
            Ok(gens
                .iter()
                .find(|g| back.value_at(g) != z.value_at(g))
                .map(|g| format!("on {g}: {} instead of {}", back.value_at(g), z.value_at(g))))
        },
    );
    r.run(
        "exp-log-round-trip",
        "e^{∗ log_∗ χ} = χ",
        d,
        chis.iter().enumerate(),
        |(i, _)| format!("seed {seed}, character {i}"),
        |(_, chi)| {
            let back = exp_star(schema, &log_star(schema, chi, d)?, d)?;
            Ok(gens
                .iter()
                .find(|g| back.value_at(g) != chi.value_at(g))
                .map(|g| format!("on {g}: {} instead of {}", back.value_at(g), chi.value_at(g))))
        },
    );

    let sd = d.min(4);
    let mut rng = Sampler::new(seed, "separation");
    let mut elements: Vec<Element<Q>> = schema.basis_up_to(sd)?.into_iter().map(Element::monomial).collect();
    for _ in 0..cfg.round_trips {
        let h = rng.element(schema, sd, 4)?;
        if !h.is_zero() {
            elements.push(h);
        }
    }
    r.run(
        "separation",
        "every nonzero h is detected by a product of forms dual to generators",
        sd,
        elements.iter(),
        |h| h.to_string(),
        |h| {
            Ok(separating_product(schema, h)?
                .is_none()
                .then(|| "no separating product found".to_string()))
        },
    );

    let mut rng = Sampler::new(seed, "metric");
    let tables = (0..cfg.group_cases)
        .map(|_| Ok([rng.table(schema, d)?, rng.table(schema, d)?, rng.table(schema, d)?]))
        .collect::<Result<Vec<_>>>()?;
    let terms = basis.len().min(24);
    r.run(
        "metric",
        "d(ξ, η) = d(η, ξ), d(ξ, ξ) = 0 and d(ξ, ζ) <= d(ξ, η) + d(η, ζ)",
        d,
        tables.iter().enumerate(),
        |(i, _)| format!("seed {seed}, table triple {i}"),
        |(_, [a, b, c])| {
            let dist = |x: &Functional<Q>, y: &Functional<Q>| metric_distance(schema, &leaf(x), &leaf(y), terms);
            let (ab, _) = dist(a, b)?;
            let (ba, _) = dist(b, a)?;
            let (aa, _) = dist(a, a)?;
            let (bc, _) = dist(b, c)?;
            let (ac, _) = dist(a, c)?;
            if ab != ba {
                return Ok(Some(format!("asymmetric: {ab} vs {ba}")));
            }
            if !aa.is_zero() {
                return Ok(Some(format!("d(ξ, ξ) = {aa}")));
            }
            Ok((ac > &ab + &bc).then(|| format!("triangle: {ac} > {ab} + {bc}")))
        },
    );
    Ok(r)
}

fn degree_one_generator(schema: &HopfSchema) -> Result<Option<Generator>> {
    Ok(schema.generators_of_degree(1)?.into_iter().next())
}

/// Renormalization properties: the Rota–Baxter identity, Birkhoff
/// decomposition of random loops, the `d_n` tower, the closed loop through
/// the renormalization-group limit, scattering limits and the negative
/// controls.
pub fn renorm_suite(schema: &HopfSchema, cfg: &SuiteConfig) -> Result<AxiomReport> {
    let seed = cfg.seed;
    let mut r = AxiomReport::default();

    let mut rng = Sampler::new(seed, "rota-baxter");
    let pairs: Vec<(L, L)> = (0..cfg.rota_baxter_pairs)
        .map(|_| (rng.laurent(3, 3, None), rng.laurent(3, 3, None)))
        .collect();
    r.run(
        "rota-baxter",
        "T(ab) + T(a)T(b) = T(T(a) b + a T(b)), T² = T",
        0,
        pairs.iter(),
        |(a, b)| format!("a = {a}, b = {b}"),
        |(a, b)| {
            let t = rota_baxter_t;
            let lhs = t(&(a.clone() * b.clone())) + t(a) * t(b);
            let rhs = t(&(t(a) * b.clone() + a.clone() * t(b)));
            if lhs != rhs {
                return Ok(Some(format!("{lhs}  !=  {rhs}")));
            }
            Ok((t(&t(a)) != t(a)).then(|| format!("T(T(a)) = {} but T(a) = {}", t(&t(a)), t(a))))
        },
    );

    let bd = cfg.max_degree.min(5);
    let mut rng = Sampler::new(seed, "birkhoff");
    let required = required_truncation(bd, 2);
    let loops = (0..cfg.birkhoff_characters)
        .map(|i| {
            let truncation = (i % 2 == 1).then_some(required);
            rng.laurent_character(schema, bd, 2, truncation)
        })
        .collect::<Result<Vec<_>>>()?;
    let decompositions: Vec<Result<BirkhoffPair<Q>>> =
        loops.iter().map(|phi| birkhoff_decompose(schema, phi, bd)).collect();
    let reports = decompositions
        .iter()
        .zip(&loops)
        .map(|(p, phi)| match p {
            Ok(p) => verify_birkhoff(schema, phi, p).map(Some),
            Err(_) => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    for (name, law) in [
        ("reconstruction", "φ = (φ₋∘S) ∗ φ₊ on every basis monomial"),
        ("minus-range", "φ₋ takes values in the pole parts on H⁺"),
        ("plus-range", "φ₊ takes regular values"),
        (
            "minus-multiplicative",
            "φ₋ is multiplicative on products within the cutoff",
        ),
        (
            "plus-multiplicative",
            "φ₊ is multiplicative on products within the cutoff",
        ),
    ] {
        r.run(
            &format!("birkhoff-{name}"),
            law,
            bd,
            0..loops.len(),
            |i| format!("seed {seed}, loop {i}: {}", loops[*i]),
            |i| {
                decompositions[*i].as_ref().map_err(Clone::clone)?;
                let report = reports[*i]
                    .as_ref()
                    .expect("report exists when decomposition succeeded");
                let check = report.checks.iter().find(|c| c.axiom == name).expect("check present");
                Ok(check
                    .counterexample
                    .as_ref()
                    .map(|c| format!("on {}: {}", c.input, c.detail)))
            },
        );
    }
    let gens = schema.generators_up_to(bd)?;
    r.run(
        "birkhoff-uniqueness",
        "adding a pole term to φ₋ on one generator breaks the reconstruction",
        bd,
        0..loops.len(),
        |i| format!("seed {seed}, loop {i}"),
        |i| {
            if gens.is_empty() {
                return Ok(None);
            }
            let pair = decompositions[*i].as_ref().map_err(Clone::clone)?;
            let g = gens[Sampler::new(seed, &format!("perturb-{i}")).below(gens.len())].clone();
            let Functional::Table { mut values, limit } = pair.minus.clone() else {
                return Ok(Some("φ₋ is not a table".into()));
            };
            let slot = values.entry(Monomial::generator(g.clone())).or_insert_with(L::zero);
            *slot = slot.clone() + L::monomial(Q::one(), -1);
            let perturbed = Functional::Table { values, limit };
            let broken = reconstruction_witness(schema, &loops[*i], &perturbed, &pair.plus, bd)?;
            Ok(broken
                .is_none()
                .then(|| format!("perturbing φ₋({g}) left the reconstruction intact")))
        },
    );

    if let Some(g1) = degree_one_generator(schema)? {
        let deficient = Functional::character([(g1.clone(), L::truncated([(-2, Q::one())], 0))]);
        r.run(
            "birkhoff-budget",
            "under-resolved loops are rejected with the order they need",
            3,
            [()],
            |_| format!("{g1} -> {}", L::truncated([(-2, Q::one())], 0)),
            |_| match birkhoff_decompose(schema, &deficient, 3.min(cfg.max_degree.max(2))) {
                Err(crate::HopfError::InsufficientTruncation { .. }) => Ok(None),
                Err(e) => Ok(Some(format!("unexpected error {e}"))),
                Ok(_) => Ok(Some("accepted an under-resolved loop".into())),
            },
        );
    }
    if matches!(schema.kind(), crate::hopf::SchemaKind::Ladder) && cfg.max_degree >= 2 {
        let t1 = schema.resolve("t1")?;
        let t2 = schema.resolve("t2")?;
        let phi = Functional::character([(t1, L::monomial(Q::one(), -1)), (t2.clone(), L::monomial(Q::one(), -2))]);
        r.run(
            "birkhoff-worked-example",
            "φ(t1) = 1/eps, φ(t2) = 1/eps² gives φ₋(t2) = 0 and reconstructs 1/eps² on t2",
            2,
            [()],
            |_| "t2".into(),
            |_| {
                let pair = birkhoff_decompose(schema, &phi, 2)?;
                let m2 = Monomial::generator(t2.clone());
                let minus = pair.minus.eval_monomial(&m2)?;
                if !minus.is_zero() {
                    return Ok(Some(format!("φ₋(t2) = {minus}")));
                }
                reconstruction_witness(schema, &phi, &pair.minus, &pair.plus, 2)
            },
        );
    }

    let dd = cfg.max_degree.min(5);
    let mut rng = Sampler::new(seed, "dn");
    let betas = (0..cfg.beta_cases)
        .map(|_| rng.infinitesimal(schema, dd))
        .collect::<Result<Vec<_>>>()?;
    let basis = schema.basis_up_to(dd)?;
    r.run(
        "dn-simplex-recursion",
        "d_n by the simplex weights equals d_n by the recursion, n <= 4",
        dd,
        betas.iter().enumerate(),
        |(i, _)| format!("seed {seed}, β {i}"),
        |(_, beta)| {
            for n in 1..=4 {
                let a = dn_recursive(schema, beta, n, dd)?;
                let b = dn_simplex(schema, beta, n, dd)?;
                for m in &basis {
                    let (x, y) = (a.eval_monomial(m)?, b.eval_monomial(m)?);
                    if x != y {
                        return Ok(Some(format!("d_{n} on {m}: recursion {x}, simplex {y}")));
                    }
                }
            }
            Ok(None)
        },
    );

    let rd = cfg.max_degree.min(4);
    let mut rng = Sampler::new(seed, "closed-loop");
    let betas = (0..cfg.beta_cases)
        .map(|_| rng.infinitesimal(schema, rd))
        .collect::<Result<Vec<_>>>()?;
    let rgens = schema.generators_up_to(rd)?;
    r.run(
        "rg-closed-loop",
        "the loop built from β is special, F_t = e^{∗tβ} satisfies F_{t+s} = F_t ∗ F_s and β is recovered",
        rd,
        betas.iter().enumerate(),
        |(i, _)| format!("seed {seed}, β {i}"),
        |(_, beta)| {
            let phi = build_special_loop(schema, beta, rd as usize, rd)?;
            let report = rg_limit_check(schema, &phi, rd, cfg.eps_order)?;
            if !report.special {
                let witness = report.witness.map(|w| w.to_string()).unwrap_or_default();
                return Ok(Some(format!("not special: {witness}")));
            }
            if let Some(c) = report.checks.failures().next() {
                let detail = c
                    .counterexample
                    .as_ref()
                    .map(|x| format!("{}: {}", x.input, x.detail))
                    .unwrap_or_default();
                return Ok(Some(format!("{} failed on {detail}", c.axiom)));
            }
            let got = report.beta.expect("special loops carry β");
            Ok(rgens.iter().find(|g| got.value_at(g) != beta.value_at(g)).map(|g| {
                format!(
                    "β({g}) recovered as {} instead of {}",
                    got.value_at(g),
                    beta.value_at(g)
                )
            }))
        },
    );
    r.run(
        "scattering-limit",
        "finite-time simplex integrals decay to d_n, n <= 3",
        rd,
        betas.iter().enumerate(),
        |(i, _)| format!("seed {seed}, β {i}"),
        |(_, beta)| {
            let report = scattering_check(schema, beta, 3, rd)?;
            let failure = report.checks.failures().next().map(|c| {
                let detail = c
                    .counterexample
                    .as_ref()
                    .map(|x| format!("{}: {}", x.input, x.detail))
                    .unwrap_or_default();
                format!("{} failed on {detail}", c.axiom)
            });
            Ok(failure)
        },
    );
    if let Some(g1) = degree_one_generator(schema)? {
        let phi = Functional::character([(g1.clone(), L::monomial(Q::one(), -2))]);
        r.run(
            "rg-detects-nonspecial",
            "a double pole on a degree-one generator leaves a pole in the limit",
            rd,
            [()],
            |_| format!("{g1} -> eps^-2"),
            |_| {
                let report = rg_limit_check(schema, &phi, rd.max(1), cfg.eps_order)?;
                Ok(match (report.special, report.witness) {
                    (false, Some(w)) if w.monomial == Monomial::generator(g1.clone()) => None,
                    (special, w) => Some(format!("special = {special}, witness {w:?}")),
                })
            },
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::rooted_tree_schema;

    fn small(seed: u64, d: u32) -> SuiteConfig {
        SuiteConfig {
            nilpotence_tuples: 8,
            permanent_tuples: 8,
            round_trips: 3,
            group_cases: 2,
            rota_baxter_pairs: 10,
            birkhoff_characters: 4,
            beta_cases: 2,
            ..SuiteConfig::new(seed, d)
        }
    }

    #[test]
    fn suites_pass_on_ladder_and_trees() {
        for s in [HopfSchema::ladder(), rooted_tree_schema(4).unwrap()] {
            let cfg = small(3, 4);
            let a = dual_suite(&s, &cfg).unwrap();
            assert!(a.all_passed(), "{:?}", a.failures().collect::<Vec<_>>());
            let b = renorm_suite(&s, &cfg).unwrap();
            assert!(b.all_passed(), "{:?}", b.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn permanent_of_a_square() {
        let g = Generator::new("t1", 1);
        let z1 = Functional::infinitesimal([(g.clone(), Q::from_integer(3.into()))]);
        let z2 = Functional::infinitesimal([(g.clone(), Q::from_integer(5.into()))]);
        assert_eq!(permanent(&[z1, z2], &[g.clone(), g]), Q::from_integer(30.into()));
        assert_eq!(permutations(3).len(), 6);
    }
}
