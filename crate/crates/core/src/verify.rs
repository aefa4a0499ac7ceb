//! Reproduction battery: each check recomputes one published value or
//! structural fact and compares it with the expected literal.

use std::time::Instant;

use serde::Serialize;

use crate::catalog::{
    self, embed_pattern, golay2_quad_matrix, golay3_quad_matrix, hamming_quad_matrix,
    quadratic_root, GOLAY2_PATTERN,
};
use crate::census::{self, TABLE1_EXPONENTS, TABLE1_MIRRORED};
use crate::code::{
    mds_exact, mds_sampled, CyclicCode, CyclicRing, Extension, Monomial, DEFAULT_BUDGET,
};
use crate::error::Result;
use crate::gfp::factor_cyclotomic;
use crate::hensel::{lift_by_pth_powers, lift_factorization};
use crate::matrix::ZqMatrix;
use crate::poly::Poly;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub limit_ms: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Run the exhaustive 12 x 12 Golay minor check instead of sampling.
    pub full: bool,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            full: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

pub const LAMBDA_DIGITS: &str = "0110010111111001110011011000110";
pub const NU_DIGITS: &str = "0101011110010010110010000110000";

/// Lifted cubic of `X^7 - 1` at precisions 1..=5, constant term first.
pub const HAMMING_TOWER: [[i64; 4]; 5] = [
    [1, 1, 0, 1],
    [-1, 1, 2, 1],
    [-1, -3, -2, 1],
    [-1, 5, 6, 1],
    [-1, 5, 6, 1],
];

/// `(number, type, ideal, d(d*))` for the printed rows of the length-7 table.
pub const TABLE1_EXPECTED: [(usize, &str, &str, &str); 18] = [
    (1, "1^0", "0=P0^2P1^2P2^2", "-(-)"),
    (2, "2^1", "(2f1f2)=P0P1^2P2^2", "14(16)"),
    (3, "2^3", "(2f0f1)=P0^2P1^2P2", "8(8)"),
    (5, "2^4", "(2f1)=P0P1^2P2", "6(8)"),
    (7, "2^6", "(2f0)=P0^2P1P2", "4(4)"),
    (8, "2^7", "(2)=P0P1P2", "2(4)"),
    (9, "1^7", "(1)=1", "1(2)"),
    (10, "1^6", "(f0)=P0^2", "2(2)"),
    (11, "1^6 2^1", "(f0,2)=P0", "2(2)"),
    (12, "1^4", "(f1)=P1^2", "4(6)"),
    (14, "1^4 2^3", "(f1,2)=P1", "2(4)"),
    (16, "1^3", "(f0f1)=P0^2P1^2", "6(6)"),
    (18, "1^3 2^4", "(f0f1,2)=P0P1", "2(4)"),
    (20, "1^3 2^3", "(f0f1,2f0)=P0^2P1", "4(4)"),
    (22, "1^3 2^1", "(f0f1,2f1)=P0P1^2", "4(6)"),
    (24, "1^1", "(f1f2)=P1^2P2^2", "7(8)"),
    (25, "1^1 2^6", "(f1f2,2)=P1P2", "2(4)"),
    (26, "1^1 2^3", "(f1f2,2f1)=P1^2P2", "6(8)"),
];

pub const HAMMING_LEE: [u64; 6] = [4, 6, 8, 12, 14, 18];
pub const LEE_TRACE: [u64; 6] = [0, 2, 2, 6, 6, 26];

/// `(n, p)` pairs on which the two lifting methods are compared.
pub const METHOD_MATRIX: [(usize, u64); 5] = [(7, 2), (23, 2), (11, 3), (15, 2), (13, 3)];
pub const METHOD_PRECISIONS: [u32; 6] = [1, 2, 3, 5, 8, 13];

type Outcome = Result<(bool, String)>;

struct Check {
    id: u32,
    title: &'static str,
    limit_ms: f64,
    run: fn(&VerifyOptions) -> Outcome,
}

const CHECKS: [Check; 14] = [
    Check {
        id: 1,
        title: "lambda digits",
        limit_ms: 1.0,
        run: lambda_digits,
    },
    Check {
        id: 2,
        title: "Hamming lift tower",
        limit_ms: 10.0,
        run: hamming_tower,
    },
    Check {
        id: 3,
        title: "nu digits and Golay divisor pattern",
        limit_ms: 100.0,
        run: golay_pattern,
    },
    Check {
        id: 4,
        title: "census of length 7 over Z/4",
        limit_ms: 5_000.0,
        run: census_table,
    },
    Check {
        id: 5,
        title: "octacode",
        limit_ms: 1_000.0,
        run: octacode,
    },
    Check {
        id: 6,
        title: "Hamming tower distances",
        limit_ms: 120_000.0,
        run: hamming_distances,
    },
    Check {
        id: 7,
        title: "Lee weight trace of lambda",
        limit_ms: 1.0,
        run: lee_trace,
    },
    Check {
        id: 8,
        title: "MDS minors over Z[w]",
        limit_ms: 30_000.0,
        run: mds_minors,
    },
    Check {
        id: 9,
        title: "Golay projections",
        limit_ms: 120_000.0,
        run: golay_projections,
    },
    Check {
        id: 10,
        title: "duality battery",
        limit_ms: 10_000.0,
        run: duality,
    },
    Check {
        id: 11,
        title: "ideal structure",
        limit_ms: 60_000.0,
        run: ideal_structure,
    },
    Check {
        id: 12,
        title: "quadratic-residue codes",
        limit_ms: 30_000.0,
        run: quadratic_residue,
    },
    Check {
        id: 13,
        title: "automorphisms",
        limit_ms: 1_000.0,
        run: automorphisms,
    },
    Check {
        id: 14,
        title: "lifting methods agree",
        limit_ms: 5_000.0,
        run: methods_agree,
    },
];

pub fn check_count() -> usize {
    CHECKS.len()
}

/// Runs check `id` (1-based). A check passes when its values match and it
/// finishes within its time limit; `--full` lifts the limit of check 8.
pub fn run_check(id: u32, opts: &VerifyOptions) -> Option<CheckResult> {
    let c = CHECKS.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let outcome = (c.run)(opts);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let limit_ms = if opts.full && c.id == 8 {
        1_800_000.0
    } else {
        c.limit_ms
    };
    let (ok, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let in_time = elapsed_ms <= limit_ms;
    if !in_time {
        detail.push_str(&format!("; over time limit {limit_ms} ms"));
    }
    Some(CheckResult {
        id: c.id,
        title: c.title,
        passed: ok && in_time,
        detail,
        elapsed_ms,
        limit_ms,
    })
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter_map(|c| run_check(c.id, opts))
        .collect()
}

fn digit_string(d: &[u64]) -> String {
    d.iter().map(|x| x.to_string()).collect()
}

fn lambda_digits(_: &VerifyOptions) -> Outcome {
    let got = digit_string(&quadratic_root(2, 2, 31)?.digits());
    Ok((got == LAMBDA_DIGITS, got))
}

fn hamming_tower(_: &VerifyOptions) -> Outcome {
    let base = factor_cyclotomic(7, 2)?;
    let mut got = Vec::new();
    let mut ok = true;
    for (prec, want) in (1..=5).zip(HAMMING_TOWER) {
        let f = lift_factorization(&base, prec)?[1].clone();
        ok &= f == Poly::from_i64s(f.ring(), &want);
        got.push(f.to_string());
    }
    Ok((ok, got.join(" | ")))
}

fn golay_pattern(_: &VerifyOptions) -> Outcome {
    let nu = quadratic_root(2, 6, 31)?;
    let digits = digit_string(&nu.digits());
    let expected = embed_pattern(GOLAY2_PATTERN, &nu)?;
    let lifted = lift_factorization(&factor_cyclotomic(23, 2)?, 31)?;
    let found = lifted.contains(&expected);
    Ok((
        digits == NU_DIGITS && found,
        format!("nu = {digits}, pattern factor present: {found}"),
    ))
}

fn census_table(opts: &VerifyOptions) -> Outcome {
    let all = census::all_codes(7, 2, 2, false, opts.budget)?;
    let mats: Vec<ZqMatrix> = all
        .iter()
        .map(|e| e.code.generator_matrix())
        .collect::<Result<_>>()?;
    let mut distinct = true;
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            distinct &= !mats[i].same_span(&mats[j]);
        }
    }
    let table = census::table1()?;
    let mut mismatches = Vec::new();
    for (row, want) in table.rows.iter().zip(TABLE1_EXPECTED) {
        let got = (
            row.number,
            row.type_string.as_str(),
            row.ideal.as_str(),
            row.distance.as_str(),
        );
        if got != want {
            mismatches.push(format!("row {}: {:?}", row.number, got));
        }
    }
    let ok = all.len() == 27 && distinct && table.rows.len() == 18 && mismatches.is_empty();
    Ok((
        ok,
        format!(
            "{} codes, distinct: {distinct}, {} rows, mismatches: [{}]",
            all.len(),
            table.rows.len(),
            mismatches.join("; ")
        ),
    ))
}

fn octacode(opts: &VerifyOptions) -> Outcome {
    let ring = CyclicRing::new(7, 2, 2, false)?;
    let code = CyclicCode::from_exponents(&ring, &TABLE1_EXPONENTS[11])?;
    let zero_sum = code.extend(&Extension::ZeroSum)?;
    let append = code.extend(&Extension::AppendConstant(ring.zq().one()))?;
    let d = code.distances(opts.budget)?;
    let ds = zero_sum.distances(opts.budget)?;
    let tp = code.type_profile().to_string();
    let ideal = code.ideal_exponents().to_string();
    let same = zero_sum.same_code(&append);
    let ok = tp == "1^4" && ideal == "P1^2" && d.lee == Some(4) && ds.lee == Some(6) && same;
    Ok((
        ok,
        format!(
            "type {tp}, ideal {ideal}, d_Lee {:?}, d*_Lee {:?}, modes agree: {same}",
            d.lee, ds.lee
        ),
    ))
}

fn hamming_distances(opts: &VerifyOptions) -> Outcome {
    let t = catalog::lee_tables(6, opts.budget)?;
    let lee: Vec<u64> = t.rows.iter().map(|r| r.lee).collect();
    let ham: Vec<u32> = t.rows.iter().map(|r| r.hamming).collect();
    Ok((
        lee == HAMMING_LEE && ham.iter().all(|&h| h == 4),
        format!("Hamming {ham:?}, Lee {lee:?}"),
    ))
}

fn lee_trace(_: &VerifyOptions) -> Outcome {
    let t = catalog::lee_weight_trace(6)?;
    Ok((
        t.direct == LEE_TRACE && t.direct == t.recurrence,
        format!("direct {:?}, recurrence {:?}", t.direct, t.recurrence),
    ))
}

fn mds_minors(opts: &VerifyOptions) -> Outcome {
    let lambda = quadratic_root(2, 2, 20)?;
    let h = mds_exact(&hamming_quad_matrix(), Some(&lambda));
    let theta = quadratic_root(3, 3, 20)?;
    let t = mds_exact(&golay3_quad_matrix(), Some(&theta));
    let nu = quadratic_root(2, 6, 20)?;
    let g = if opts.full {
        mds_exact(&golay2_quad_matrix(), Some(&nu))
    } else {
        mds_sampled(&golay2_quad_matrix(), 10_000, 0, Some(&nu))
    };
    let g_count = if opts.full { 2_704_156 } else { 10_000 };
    let ok = h.is_mds
        && h.checked == 70
        && t.is_mds
        && t.checked == 924
        && g.is_mds
        && g.checked == g_count
        && h.embedding_consistent
        && t.embedding_consistent
        && g.embedding_consistent;
    Ok((
        ok,
        format!(
            "H: {}/{} nonzero (d = {}), T: {}/{} (d = {}), G: {}/{} (d = {})",
            h.checked - h.witness.is_some() as u64,
            h.checked,
            if h.is_mds { "5" } else { "<5" },
            t.checked - t.witness.is_some() as u64,
            t.checked,
            if t.is_mds { "7" } else { "<7" },
            g.checked - g.witness.is_some() as u64,
            g.checked,
            if g.is_mds { "13" } else { "<13" },
        ),
    ))
}

fn golay_projections(opts: &VerifyOptions) -> Outcome {
    let g2 = catalog::golay_2adic(1)?.extended.distances(opts.budget)?;
    let g4 = catalog::golay_2adic(2)?.extended.distances(opts.budget)?;
    Ok((
        g2.hamming == Some(8) && g4.hamming == Some(8),
        format!("d_H(G_2) = {:?}, d_H(G_4) = {:?}", g2.hamming, g4.hamming),
    ))
}

fn duality(_: &VerifyOptions) -> Outcome {
    let ring = CyclicRing::new(7, 2, 2, false)?;
    let mut bad = Vec::new();
    for (i, exps) in TABLE1_EXPONENTS.iter().enumerate() {
        let c = CyclicCode::from_exponents(&ring, exps)?;
        let d = c.dual()?;
        let ok = c.size_exp() + d.size_exp() == 14
            && d.dual()? == c
            && d.type_profile() == c.type_profile().complement()
            && c.verify_dual(&d)?;
        if !ok {
            bad.push(i + 1);
        }
    }
    let h4 = catalog::hamming_2adic(2)?.extended.is_self_dual();
    let g = catalog::golay_2adic(2)?.extended.is_self_dual();
    let t = catalog::golay_3adic(2)?.extended.is_self_dual();
    Ok((
        bad.is_empty() && h4 && g && t,
        format!("failing rows {bad:?}; self-dual H_4 {h4}, G_4 {g}, T_9 {t}"),
    ))
}

/// Row span of every cyclic shift of `gens`.
fn shift_span(ring: &CyclicRing, gens: &[Poly]) -> Result<ZqMatrix> {
    let n = ring.n();
    let rows: Vec<Poly> = gens
        .iter()
        .flat_map(|g| (0..n).map(move |s| g.shift(s).rem_xn(n)))
        .collect();
    ZqMatrix::from_polys(ring.zq(), n, &rows)
}

fn ideal_structure(_: &VerifyOptions) -> Outcome {
    let r3 = CyclicRing::new(7, 2, 3, false)?;
    let z = r3.zq();
    let mut powers_ok = true;
    for (i, pi) in r3.factors().iter().enumerate() {
        for k in 1..=3u32 {
            // (pi, p)^k = (pi, p^k)
            let prods: Vec<Poly> = (0..=k)
                .map(|t| {
                    let mut f = Poly::from_i64s(z, &[1 << (k - t)]);
                    for _ in 0..t {
                        f = &f * pi;
                    }
                    f
                })
                .collect();
            let target = [pi.clone(), Poly::from_i64s(z, &[1 << k])];
            powers_ok &= shift_span(&r3, &prods)?.same_span(&shift_span(&r3, &target)?);
            let code = CyclicCode::canonicalize(&r3, &target)?;
            let mut expect = vec![0; 3];
            expect[i] = k;
            powers_ok &= code.exponents() == expect.as_slice();
        }
    }
    let mut round_trips = 0;
    for exps in census::exponent_vectors(3, 3) {
        let c = CyclicCode::from_exponents(&r3, &exps)?;
        let chain: Vec<Poly> = c.chain().iter().map(|e| e.f.scale_int(1 << e.m)).collect();
        if CyclicCode::canonicalize(&r3, &chain)? == c {
            round_trips += 1;
        }
    }
    let r2 = CyclicRing::new(7, 2, 2, false)?;
    let mut principal = 0;
    for exps in census::exponent_vectors(2, 3) {
        let c = CyclicCode::from_exponents(&r2, &exps)?;
        if shift_span(&r2, &[c.principal_generator()])?.same_span(&c.generator_matrix()?) {
            principal += 1;
        }
    }
    Ok((
        powers_ok && round_trips == 64 && principal == 27,
        format!(
            "prime powers: {powers_ok}, round trips {round_trips}/64, principal {principal}/27"
        ),
    ))
}

fn quadratic_residue(_: &VerifyOptions) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [7, 23] {
        let qr = catalog::qr_code(n, 1, 8)?;
        let named = if n == 7 {
            catalog::hamming_2adic(8)?
        } else {
            catalog::golay_2adic(8)?
        };
        let same = qr
            .code
            .generator_matrix()?
            .same_span(&named.code.generator_matrix()?);
        let idem1 = catalog::is_idempotent(&qr.idempotent, n)?;
        let qr2 = catalog::qr_code(n, 2, 8)?;
        let idem2 = catalog::is_idempotent(&qr2.idempotent, n)?;
        ok &= same && idem1 && idem2;
        parts.push(format!(
            "n = {n}: same code {same}, e^2 = e {idem1}/{idem2}"
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn automorphisms(_: &VerifyOptions) -> Outcome {
    let h = catalog::hamming_2adic(20)?;
    let layout = h.extended.printed_layout();
    let monos = catalog::hamming_automorphisms();
    let source = monos.iter().all(|m| crate::code::invariant(&layout, m));
    let target = monos
        .iter()
        .all(|m| crate::code::invariant(&layout, &m.with_target_signs()));
    let ring = CyclicRing::new(7, 2, 2, false)?;
    let swap = Monomial::new((0..7).map(|j| (7 - j) % 7).collect(), vec![1; 7])?;
    let mut swaps = 0;
    for (r, m) in TABLE1_MIRRORED {
        let a = CyclicCode::from_exponents(&ring, &TABLE1_EXPONENTS[r - 1])?.generator_matrix()?;
        let b = CyclicCode::from_exponents(&ring, &TABLE1_EXPONENTS[m - 1])?.generator_matrix()?;
        let rows: Vec<Vec<u128>> = a
            .rows()
            .iter()
            .map(|w| swap.apply(w, a.modulus()))
            .collect();
        if ZqMatrix::new(2, 2, 7, rows)?.same_span(&b) {
            swaps += 1;
        }
    }
    Ok((
        source && target && swaps == TABLE1_MIRRORED.len(),
        format!("monomials (source signs {source}, target signs {target}), swap pairs {swaps}/9"),
    ))
}

fn methods_agree(_: &VerifyOptions) -> Outcome {
    let mut cases = 0;
    let mut bad = Vec::new();
    for (n, p) in METHOD_MATRIX {
        let base = factor_cyclotomic(n, p)?;
        for prec in METHOD_PRECISIONS {
            cases += 1;
            if lift_factorization(&base, prec)? != lift_by_pth_powers(&base, prec)? {
                bad.push(format!("({n},{p},{prec})"));
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("{cases} cases, disagreements: [{}]", bad.join(" ")),
    ))
}
