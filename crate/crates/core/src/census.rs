//! Enumeration of every cyclic code of length `n` over `Z/p^a`, the length-7
//! table over `Z/4`, and the 24 generator shapes for three prime factors.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{CyclicCode, CyclicRing, Distances, Extension, IdealExponents};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Summary of one code. Distance fields are filled only when requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub exponents: Vec<u32>,
    pub generators: String,
    pub ideal: String,
    #[serde(rename = "type")]
    pub type_string: String,
    pub dual_type: String,
    pub size_exp: u64,
    pub rows: usize,
    pub distances: Option<Distances>,
    /// Distances of the extended code (zero-sum in the census).
    pub extended_distances: Option<Distances>,
    /// Meets the Singleton bound `d = n - log_q |C| + 1`.
    pub mds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub exponents: IdealExponents,
    pub code: CyclicCode,
    pub report: CodeReport,
}

/// Builds the report. Distances are enumerated only when `budget` is given,
/// and extended distances only when `extension` is given too.
pub fn report(
    code: &CyclicCode,
    extension: Option<&Extension>,
    budget: Option<u64>,
) -> Result<CodeReport> {
    let tp = code.type_profile();
    let dual_type = match code.dual() {
        Ok(d) => d.type_profile().to_string(),
        Err(Error::InfiniteModeUnsupported) => "-".into(),
        Err(e) => return Err(e),
    };
    let distances = budget.map(|b| code.distances(b)).transpose()?;
    let extended_distances = match (extension, budget) {
        (Some(mode), Some(b)) => Some(code.extend(mode)?.distances(b)?),
        _ => None,
    };
    let a = code.ring().prec() as u64;
    let size_exp = tp.size_exp();
    let mds = distances
        .and_then(|d| d.hamming)
        .map(|d| size_exp.is_multiple_of(a) && d as u64 + size_exp / a == code.n() as u64 + 1);
    Ok(CodeReport {
        exponents: code.exponents().to_vec(),
        generators: code.generator_string(),
        ideal: code.ideal_exponents().to_string(),
        type_string: tp.to_string(),
        dual_type,
        size_exp,
        rows: tp.k_total(),
        distances,
        extended_distances,
        mds,
    })
}

/// All `(a+1)^A` codes, ordered lexicographically by exponent vector.
/// `budget` bounds both the number of codes and, when `distances` is set,
/// each codeword enumeration.
pub fn all_codes(
    n: usize,
    p: u64,
    a: u32,
    distances: bool,
    budget: u64,
) -> Result<Vec<CensusEntry>> {
    let ring = CyclicRing::new(n, p, a, false)?;
    let count = factor_count_power(a, ring.factor_count());
    if count.is_none_or(|c| c > budget) {
        return Err(Error::BudgetExceeded {
            attempted: format!("{}^{}", a + 1, ring.factor_count()),
            budget,
        });
    }
    exponent_vectors(a, ring.factor_count())
        .into_par_iter()
        .map(|exps| {
            let code = CyclicCode::from_exponents(&ring, &exps)?;
            let report = report(
                &code,
                Some(&Extension::ZeroSum),
                distances.then_some(budget),
            )?;
            Ok(CensusEntry {
                exponents: code.ideal_exponents(),
                code,
                report,
            })
        })
        .collect()
}

fn factor_count_power(a: u32, count: usize) -> Option<u64> {
    (a as u64 + 1).checked_pow(u32::try_from(count).ok()?)
}

/// Every vector in `{0..=a}^len`, lexicographic.
pub fn exponent_vectors(a: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=a).map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
    }
    out
}

/// Exponents `(m_0, m_1, m_2)` of the 27 codes of length 7 over `Z/4`, in
/// the customary row order `1..=27`.
pub const TABLE1_EXPONENTS: [[u32; 3]; 27] = [
    [2, 2, 2],
    [1, 2, 2],
    [2, 2, 1],
    [2, 1, 2],
    [1, 2, 1],
    [1, 1, 2],
    [2, 1, 1],
    [1, 1, 1],
    [0, 0, 0],
    [2, 0, 0],
    [1, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [0, 1, 0],
    [0, 0, 1],
    [2, 2, 0],
    [2, 0, 2],
    [1, 1, 0],
    [1, 0, 1],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 0, 2],
    [0, 2, 2],
    [0, 1, 1],
    [0, 2, 1],
    [0, 1, 2],
];

/// Rows left out of the printed table and the row each one mirrors.
pub const TABLE1_MIRRORED: [(usize, usize); 9] = [
    (4, 3),
    (6, 5),
    (13, 12),
    (15, 14),
    (17, 16),
    (19, 18),
    (21, 20),
    (23, 22),
    (27, 26),
];

/// Row number of an exponent vector of length 7 over `Z/4`.
pub fn table1_row(exps: &[u32]) -> Option<usize> {
    TABLE1_EXPONENTS
        .iter()
        .position(|e| e == exps)
        .map(|i| i + 1)
}

/// The row reached by exchanging `f1` and `f2`.
pub fn swap_partner(row: usize) -> usize {
    let [a, b, c] = TABLE1_EXPONENTS[row - 1];
    table1_row(&[a, c, b]).expect("closed under the swap")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub number: usize,
    /// Generator vectors, leading coefficient first, with the zero-sum digit.
    pub generators: Vec<(String, String)>,
    #[serde(rename = "type")]
    pub type_string: String,
    pub ideal: String,
    pub distance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1 {
    pub rows: Vec<Table1Row>,
    pub mirrored: Vec<(usize, usize)>,
}

/// Coefficients of `f` from the leading one down, right-padded to `n`.
pub fn leading_first(f: &Poly, n: usize, q: &BigUint) -> String {
    let mut v: Vec<BigUint> = f.to_vector(n);
    let len = f.degree().map_or(1, |d| d + 1);
    v[..len].reverse();
    render_digits(&v, q)
}

fn render_digits(v: &[BigUint], q: &BigUint) -> String {
    if q <= &BigUint::from(10u32) {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

fn distance_string(d: &Distances, ext: &Distances) -> String {
    match (d.lee, ext.lee) {
        (Some(x), Some(y)) => format!("{x}({y})"),
        _ => "-(-)".into(),
    }
}

/// Rows of the length-7 table over `Z/4`, one per code up to the `f1 <-> f2`
/// swap. Distances are Lee distances found by exhaustive enumeration.
pub fn table1() -> Result<Table1> {
    let ring = CyclicRing::new(7, 2, 2, false)?;
    let q = ring.zq().modulus().clone();
    let q128 = q.to_u128().expect("q = 4");
    let mirrored: Vec<usize> = TABLE1_MIRRORED.iter().map(|&(r, _)| r).collect();
    let rows = (1..=27usize)
        .filter(|r| !mirrored.contains(r))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|number| {
            let code = CyclicCode::from_exponents(&ring, &TABLE1_EXPONENTS[number - 1])?;
            let chain = code.chain();
            let generators = if chain.is_empty() {
                vec![("0".repeat(7), "0".into())]
            } else {
                chain
                    .iter()
                    .map(|e| {
                        let g = e.f.scale_int(2u64.pow(e.m));
                        let sum = g
                            .to_vector(7)
                            .iter()
                            .fold(0u128, |s, x| (s + x.to_u128().expect("below q")) % q128);
                        let digit = (q128 - sum) % q128;
                        (leading_first(&g, 7, &q), digit.to_string())
                    })
                    .collect()
            };
            let d = code.distances(1 << 20)?;
            let ext = code.extend(&Extension::ZeroSum)?.distances(1 << 20)?;
            Ok(Table1Row {
                number,
                generators,
                type_string: code.type_profile().to_string(),
                ideal: code.ideal_string(),
                distance: distance_string(&d, &ext),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table1 {
        rows,
        mirrored: TABLE1_MIRRORED.to_vec(),
    })
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let parts: Vec<String> = r
                    .generators
                    .iter()
                    .map(|(g, d)| format!("{g} ({d})"))
                    .collect();
                parts.join(", ")
            })
            .collect();
        let wg = gens
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max("generators".len());
        let wt = self
            .rows
            .iter()
            .map(|r| r.type_string.len())
            .max()
            .unwrap_or(0)
            .max(4);
        let wi = self
            .rows
            .iter()
            .map(|r| r.ideal.len())
            .max()
            .unwrap_or(0)
            .max(5);
        writeln!(
            f,
            " # | {:wg$} | {:wt$} | {:wi$} | d(d*)",
            "generators", "type", "ideal"
        )?;
        for (r, g) in self.rows.iter().zip(&gens) {
            writeln!(
                f,
                "{:>2} | {g:wg$} | {:wt$} | {:wi$} | {}",
                r.number, r.type_string, r.ideal, r.distance
            )?;
        }
        let pairs: Vec<String> = self
            .mirrored
            .iter()
            .map(|(a, b)| format!("{a}~{b}"))
            .collect();
        writeln!(f, "f1<->f2 swap: {}", pairs.join(" "))
    }
}

/// One generator `p^{m_t} g` of a shape; `power` is the index `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeTerm {
    pub power: usize,
    pub factors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeShape {
    pub p: u64,
    pub terms: Vec<ShapeTerm>,
}

/// The 24 generator shapes of codes when `X^n - 1` has three prime factors
/// `f0, f1, f2` mod `p`, with `0 <= m0 < m1 < m2`.
pub fn type_shapes_three_factor(p: u64) -> Vec<TypeShape> {
    let singles: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2]];
    let pairs: Vec<Vec<usize>> = vec![vec![0, 1], vec![0, 2], vec![1, 2]];
    let g0_all: Vec<Vec<usize>> = singles.iter().chain(&pairs).cloned().collect();
    let term = |power: usize, factors: &[usize]| ShapeTerm {
        power,
        factors: factors.to_vec(),
    };
    let mut out = Vec::new();
    for g0 in &g0_all {
        out.push(vec![term(0, g0)]);
    }
    for g0 in &g0_all {
        out.push(vec![term(0, g0), term(1, &[])]);
    }
    for g0 in &pairs {
        for &i in g0 {
            out.push(vec![term(0, g0), term(1, &[i])]);
        }
    }
    for g0 in &pairs {
        for &i in g0 {
            out.push(vec![term(0, g0), term(1, &[i]), term(2, &[])]);
        }
    }
    out.into_iter()
        .map(|terms| TypeShape { p, terms })
        .collect()
}

impl TypeShape {
    /// The code generated with `m_t = ms[t]`; terms with `m_t >= a` vanish.
    pub fn specialize(&self, ring: &CyclicRing, ms: &[u32]) -> Result<CyclicCode> {
        if ring.factor_count() != 3 || ring.p() != self.p {
            return Err(Error::InvalidArgument(
                "shape needs three factors over the same p".into(),
            ));
        }
        let gens = self
            .terms
            .iter()
            .map(|t| {
                let m = *ms
                    .get(t.power)
                    .ok_or_else(|| Error::InvalidArgument(format!("missing m{}", t.power)))?;
                Ok(ring
                    .product(t.factors.iter().copied())
                    .scale(&ring.zq().from_u64(self.p).pow(m as u64)))
            })
            .collect::<Result<Vec<Poly>>>()?;
        CyclicCode::canonicalize(ring, &gens)
    }
}

impl fmt::Display for TypeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let g: String = t.factors.iter().map(|i| format!("f{i}")).collect();
                format!("{}^m{}{g}", self.p, t.power)
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_BUDGET;
    use std::collections::HashSet;

    #[test]
    fn census_sizes() {
        assert_eq!(all_codes(7, 2, 2, false, DEFAULT_BUDGET).unwrap().len(), 27);
        assert_eq!(all_codes(7, 2, 1, false, DEFAULT_BUDGET).unwrap().len(), 8);
        for a in 1..4 {
            assert_eq!(
                all_codes(1, 3, a, false, DEFAULT_BUDGET).unwrap().len(),
                a as usize + 1
            );
        }
        assert!(matches!(
            all_codes(7, 2, 2, false, 26),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(all_codes(14, 2, 2, false, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn census_is_lexicographic_with_complementary_duals() {
        let all = all_codes(7, 2, 2, false, DEFAULT_BUDGET).unwrap();
        let exps: Vec<_> = all.iter().map(|e| e.exponents.exponents.clone()).collect();
        let mut sorted = exps.clone();
        sorted.sort();
        assert_eq!(exps, sorted);
        for e in &all {
            let dual = e.code.dual().unwrap();
            assert_eq!(dual.type_profile(), e.code.type_profile().complement());
            assert_eq!(e.report.dual_type, dual.type_profile().to_string());
        }
    }

    #[test]
    fn table_exponents_cover_every_code_once() {
        let set: HashSet<_> = TABLE1_EXPONENTS.iter().collect();
        assert_eq!(set.len(), 27);
        for (r, m) in TABLE1_MIRRORED {
            assert_eq!(swap_partner(r), m);
            assert_eq!(swap_partner(m), r);
        }
    }

    #[test]
    fn twenty_four_shapes() {
        let shapes = type_shapes_three_factor(2);
        assert_eq!(shapes.len(), 24);
        let distinct: HashSet<String> = shapes.iter().map(|s| s.to_string()).collect();
        assert_eq!(distinct.len(), 24);
        assert_eq!(shapes[3].to_string(), "(2^m0f0f1)");
    }

    #[test]
    fn shapes_specialize_to_the_unit_led_codes() {
        let ring = CyclicRing::new(7, 2, 2, false).unwrap();
        let got: HashSet<Vec<u32>> = type_shapes_three_factor(2)
            .iter()
            .map(|s| {
                s.specialize(&ring, &[0, 1, 2])
                    .unwrap()
                    .exponents()
                    .to_vec()
            })
            .collect();
        // codes with a unit-multiple generator other than the whole ring
        let want: HashSet<Vec<u32>> = exponent_vectors(2, 3)
            .into_iter()
            .filter(|e| e.contains(&0) && e.iter().any(|&m| m > 0))
            .collect();
        assert_eq!(got, want);
        assert_eq!(got.len(), 18);
    }

    #[test]
    fn leading_first_rendering() {
        let ring = CyclicRing::new(7, 2, 2, false).unwrap();
        let q = ring.zq().modulus().clone();
        assert_eq!(leading_first(&ring.factors()[1], 7, &q), "1213000");
        assert_eq!(leading_first(&ring.product([0, 1]), 7, &q), "1132100");
        assert_eq!(leading_first(&Poly::one(ring.zq()), 7, &q), "1000000");
    }
}
