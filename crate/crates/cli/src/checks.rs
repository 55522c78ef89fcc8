//! The property suites behind the `verify` command.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tccore::generators::{
    decompose_with, evaluate_unbounded, generator_polynomial, iota, power_map, principal_sum, DecomposeOptions,
    GenError, GeneratorExpr,
};
use tccore::polyring::rational::{frac, int};
use tccore::polyring::{two_var_power_sum, Family, Monomial, Polynomial, Rational};
use tccore::quotient::{ideal_for_group, IdealSpec};
use tccore::weyl::{enumerate_group, parity, symmetrize, GroupKind, GroupSpec, Parity};

use crate::report::Check;
use crate::CliError;

/// Exhaustive symmetrization sweeps larger than this many monomial-element
/// pairs fall back to random sampling.
const EXHAUSTIVE_BUDGET: u128 = 4_000_000;

pub struct VerifyConfig {
    pub spec: GroupSpec,
    pub max_degree: u32,
    pub cases: usize,
    pub seed: u64,
    pub options: DecomposeOptions,
}

fn random_poly(rng: &mut ChaCha8Rng, rank: usize, families: &[Family], max_degree: u32, max_terms: usize) -> Polynomial {
    let terms = rng.gen_range(0..=max_terms);
    let mut p = Polynomial::zero(rank);
    for _ in 0..terms {
        let mut e = [vec![0u32; rank], vec![0u32; rank], vec![0u32; rank]];
        for _ in 0..rng.gen_range(0..=max_degree) {
            let f = families[rng.gen_range(0..families.len())];
            let slot = Family::ALL.iter().position(|&g| g == f).expect("known family");
            e[slot][rng.gen_range(0..rank)] += 1;
        }
        let c = frac(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        p = &p + &Polynomial::term(rank, Monomial::from_exponents(&e[0], &e[1], &e[2]), c);
    }
    p
}

fn nonzero_k(rng: &mut ChaCha8Rng) -> i64 {
    let k = rng.gen_range(1..=3);
    if rng.gen() {
        k
    } else {
        -k
    }
}

fn sweep(name: &str, cases: usize, mut case: impl FnMut(usize) -> Result<Option<String>, CliError>) -> Result<Check, CliError> {
    for i in 0..cases {
        if let Some(why) = case(i)? {
            return Ok(Check::new(name, false, i + 1).with_detail(why));
        }
    }
    Ok(Check::new(name, true, cases))
}

fn ring_laws(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Check, CliError> {
    let n = cfg.spec.rank;
    sweep("ring-laws", cfg.cases, |_| {
        let [a, b, c] = [0; 3].map(|_| random_poly(rng, n, &[Family::X, Family::Y], 3, 4));
        let ok = &a + &b == &b + &a
            && &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && (&a - &a).is_zero();
        Ok((!ok).then(|| format!("fails for a = {a}, b = {b}, c = {c}")))
    })
}

fn iota_homomorphism(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Check, CliError> {
    let n = cfg.spec.rank;
    sweep("iota-homomorphism", cfg.cases, |_| {
        let [p, q] = [0; 2].map(|_| random_poly(rng, n, &[Family::Z], 3, 3));
        let ok = iota(&(&p * &q))? == &iota(&p)? * &iota(&q)? && iota(&(&p + &q))? == &iota(&p)? + &iota(&q)?;
        Ok((!ok).then(|| format!("fails for p = {p}, q = {q}")))
    })
}

fn power_map_laws(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Check, CliError> {
    let n = cfg.spec.rank;
    sweep("power-map-homomorphism-and-composition", cfg.cases, |_| {
        let [p, q] = [0; 2].map(|_| random_poly(rng, n, &[Family::X, Family::Y], 3, 3));
        let (k, l) = (nonzero_k(rng), nonzero_k(rng));
        let ok = power_map(k, &(&p * &q))? == &power_map(k, &p)? * &power_map(k, &q)?
            && power_map(k, &(&p + &q))? == &power_map(k, &p)? + &power_map(k, &q)?
            && power_map(k, &power_map(l, &p)?)? == power_map(k * l, &p)?;
        Ok((!ok).then(|| format!("fails for k = {k}, l = {l}, p = {p}, q = {q}")))
    })
}

fn degrees(cfg: &VerifyConfig) -> impl Iterator<Item = (u32, u32)> + '_ {
    (1..=cfg.max_degree).flat_map(|m| (0..=m).map(move |b| (m - b, b)))
}

fn eigenvalue_law(cfg: &VerifyConfig) -> Result<Check, CliError> {
    let n = cfg.spec.rank;
    let mut cases = 0;
    for (a, b) in degrees(cfg) {
        let p = two_var_power_sum(a, b, n)?;
        for k in -3i64..=3 {
            cases += 1;
            let scale = (0..b).fold(int(1), |acc, _| acc * int(k));
            if power_map(k, &p)? != p.scale(&scale) {
                return Ok(Check::new("eigenvalue-law", false, cases).with_detail(format!("Φ^{k}(P_{a},{b})")));
            }
        }
    }
    Ok(Check::new("eigenvalue-law", true, cases))
}

fn binomial(m: u32, j: u32) -> Rational {
    (0..j).fold(int(1), |acc, i| acc * int(i64::from(m - i)) / int(i64::from(i + 1)))
}

/// `Φ^k(ι(p_m)) = Σ_j k^j C(m,j) P_{m−j,j}` exactly, and `ι(p_m)` is
/// congruent to the sum without its `j = 0` term whenever `P_{m,0}` lies
/// in the ideal (always for U and SU, even `m` for Sp).
fn binomial_identity(cfg: &VerifyConfig, ideal: &IdealSpec) -> Result<Check, CliError> {
    let n = cfg.spec.rank;
    let mut cases = 0;
    for m in 1..=cfg.max_degree {
        for k in [-3i64, -2, -1, 1, 2, 3] {
            cases += 1;
            let mut sum = Polynomial::zero(n);
            let mut kj = int(1);
            for j in 0..=m {
                sum = &sum + &two_var_power_sum(m - j, j, n)?.scale(&(kj.clone() * binomial(m, j)));
                kj = kj * int(k);
            }
            if generator_polynomial(k, m, n)? != sum {
                return Ok(Check::new("binomial-identity", false, cases).with_detail(format!("k = {k}, m = {m}")));
            }
        }
        if cfg.spec.kind == GroupKind::Sp && m % 2 == 1 {
            continue;
        }
        cases += 1;
        if !ideal.equal_mod(&generator_polynomial(1, m, n)?, &principal_sum(m, n)?)? {
            return Ok(Check::new("binomial-identity", false, cases).with_detail(format!("principal sum, m = {m}")));
        }
    }
    Ok(Check::new("binomial-identity", true, cases))
}

fn exponent_vectors(len: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max_degree - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Odd-parity monomials symmetrize to zero under sign changes; every other
/// symmetrization is a nonzero sum with positive coefficients.
fn symmetrization(cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Check, CliError> {
    let spec = &cfg.spec;
    let n = spec.rank;
    let name = if spec.kind.has_signs() { "mu-vanishing" } else { "symmetrization-positivity" };
    let order = enumerate_group(spec)?.len() as u128;
    let monomials = binomial_u128(2 * n as u128 + u128::from(cfg.max_degree), u128::from(cfg.max_degree));
    let exhaustive = monomials * order <= EXHAUSTIVE_BUDGET;
    let exps: Vec<Vec<u32>> = if exhaustive {
        exponent_vectors(2 * n, cfg.max_degree)
    } else {
        (0..cfg.cases)
            .map(|_| {
                let mut v = vec![0u32; 2 * n];
                for _ in 0..rng.gen_range(0..=cfg.max_degree) {
                    v[rng.gen_range(0..2 * n)] += 1;
                }
                v
            })
            .collect()
    };
    for (idx, e) in exps.iter().enumerate() {
        let (i, j) = e.split_at(n);
        let mono = Polynomial::term(n, Monomial::from_exponents(i, j, &vec![0; n]), int(1));
        let sym = symmetrize(&mono, spec)?;
        let odd = spec.kind.has_signs() && parity(i, j)? == Parity::Odd;
        let ok = if odd { sym.is_zero() } else { !sym.is_zero() && sym.terms().all(|(_, c)| c.is_positive()) };
        if !ok {
            return Ok(Check::new(name, false, idx + 1).with_detail(format!("x^{i:?} y^{j:?}")));
        }
    }
    let check = Check::new(name, true, exps.len());
    Ok(if exhaustive { check.with_detail("exhaustive") } else { check.with_detail("sampled") })
}

fn certification_sweep(cfg: &VerifyConfig) -> Result<Check, CliError> {
    let top = cfg.max_degree.min(cfg.options.max_degree(&cfg.spec));
    let mut cases = 0;
    for (a, b) in (1..=top).flat_map(|m| (0..=m).map(move |b| (m - b, b))) {
        if cfg.spec.kind == GroupKind::Sp && (a + b) % 2 == 1 {
            continue;
        }
        cases += 1;
        let r = decompose_with(&cfg.spec, a, b, &cfg.options)?;
        if !r.certified {
            return Ok(Check::new("certification-sweep", false, cases).with_detail(format!("P_{a},{b}")));
        }
    }
    Ok(Check::new("certification-sweep", true, cases))
}

fn expr(items: &[(Rational, i64, u32)]) -> Result<GeneratorExpr, GenError> {
    GeneratorExpr::linear(items.iter().cloned())
}

/// Hand-derived low-rank identities, each `P_{a,b} ≡ expression`.
fn reference_identities(spec: &GroupSpec) -> Result<Vec<(String, Polynomial, Polynomial)>, CliError> {
    let n = spec.rank;
    let p = |a, b| two_var_power_sum(a, b, n);
    let ev = |e: GeneratorExpr| evaluate_unbounded(&e, n);
    let half = frac(1, 2);
    let mut out = Vec::new();
    match (spec.kind, n) {
        (GroupKind::U, 2) => {
            out.push(("ι(p1) ≡ P_0,1".into(), p(0, 1)?, ev(expr(&[(int(1), 1, 1)])?)?));
            out.push(("P_0,2 ≡ (ι(p2) + Φ^-1ι(p2))/2".into(), p(0, 2)?, ev(expr(&[(half.clone(), 1, 2), (half, -1, 2)])?)?));
            out.push((
                "P_1,1 ≡ (ι(p2) − Φ^-1ι(p2))/4".into(),
                p(1, 1)?,
                ev(expr(&[(frac(1, 4), 1, 2), (frac(-1, 4), -1, 2)])?)?,
            ));
        }
        (GroupKind::U, 3) => {
            let p12 = expr(&[(frac(1, 6), 1, 3), (frac(1, 6), -1, 3)])?;
            // X = ι(p3) − 3 P_1,2 ≡ 3 P_2,1 + P_0,3, and Φ²X − 2X ≡ 6 P_0,3
            let x = expr(&[(int(1), 1, 3)])?.sub(&p12.scale(&int(3)));
            let p03 = x.apply_power(2)?.sub(&x.scale(&int(2))).scale(&frac(1, 6));
            let p21 = x.sub(&p03).scale(&frac(1, 3));
            out.push(("P_0,1 ≡ ι(p1)".into(), p(0, 1)?, ev(expr(&[(int(1), 1, 1)])?)?));
            out.push(("P_0,2 ≡ (ι(p2) + Φ^-1ι(p2))/2".into(), p(0, 2)?, ev(expr(&[(half.clone(), 1, 2), (half, -1, 2)])?)?));
            out.push((
                "P_1,1 ≡ (ι(p2) − P_0,2)/2".into(),
                p(1, 1)?,
                (&ev(expr(&[(int(1), 1, 2)])?)? - &p(0, 2)?).scale(&frac(1, 2)),
            ));
            out.push(("P_1,2 ≡ (ι(p3) + Φ^-1ι(p3))/6".into(), p(1, 2)?, ev(p12)?));
            out.push(("6 P_0,3 ≡ Φ²X − 2X".into(), p(0, 3)?, ev(p03)?));
            out.push(("P_2,1 ≡ (ι(p3) − 3P_1,2 − P_0,3)/3".into(), p(2, 1)?, ev(p21)?));
        }
        (GroupKind::SU, _) => {
            out.push(("P_0,1 ≡ 0".into(), p(0, 1)?, Polynomial::zero(n)));
        }
        _ => {}
    }
    Ok(out)
}

fn identities(spec: &GroupSpec, ideal: &IdealSpec) -> Result<Option<Check>, CliError> {
    let list = reference_identities(spec)?;
    if list.is_empty() {
        return Ok(None);
    }
    for (i, (name, lhs, rhs)) in list.iter().enumerate() {
        if !ideal.equal_mod(lhs, rhs)? {
            return Ok(Some(Check::new("reference-identities", false, i + 1).with_detail(name.clone())));
        }
    }
    let names: Vec<&str> = list.iter().map(|(n, _, _)| n.as_str()).collect();
    Ok(Some(Check::new("reference-identities", true, list.len()).with_detail(names.join("; "))))
}

pub fn run_checks(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ideal = ideal_for_group(&cfg.spec)?;
    let mut checks = vec![
        ring_laws(cfg, &mut rng)?,
        iota_homomorphism(cfg, &mut rng)?,
        power_map_laws(cfg, &mut rng)?,
        eigenvalue_law(cfg)?,
        binomial_identity(cfg, &ideal)?,
        symmetrization(cfg, &mut rng)?,
        certification_sweep(cfg)?,
    ];
    checks.extend(identities(&cfg.spec, &ideal)?);
    Ok(checks)
}
