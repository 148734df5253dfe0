//! The principal-block column method.
//!
//! Let `L` be the unknown values of the principal `p`-block characters of `G`
//! on a chosen list of classes. If `N·M` is integral for the `H`-table
//! values `N` on those classes, then `K = L·M` is an integer matrix whose
//! column inner products follow from the centraliser orders. Enumerating the
//! possible `K` and mapping back gives every candidate for `L`; block
//! theoretic filters and degree arithmetic then whittle them down.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::chartable::{CharacterTable, Congruence};
use crate::error::{Error, Result};
use crate::exact::{parse_scalar_at, rat_int, rational_to_i64, Rational, Scalar};
use crate::gram::{self, DecompositionLimits};
use crate::linalg::Matrix;

/// Where an `H`-class value of a restricted `G`-row comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSource {
    /// The identity class: the (sign-carrying) degree.
    Degree,
    /// The class fuses to the given column of `L`.
    Column(usize),
    /// Not determined by `L`; carried as a named unknown.
    Unknown(String),
}

/// A row of the surviving `L`, identified up to sign by its values.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpec {
    pub label: String,
    pub values: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExclusionSpec {
    pub row: String,
    pub value: i64,
    /// `(display name, values on the H-classes)` of the test characters.
    pub characters: Vec<(String, Vec<Scalar>)>,
}

/// A degree `±1` row whose values at `columns` all equal its degree would
/// be a linear character with those classes in its kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub row: String,
    pub value: i64,
    pub columns: Vec<usize>,
}

/// `weight · α_{abc}` with `α^G_{abc} = numerator / |G|`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaTerm {
    pub columns: [usize; 3],
    pub weight: Rational,
    pub numerator: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndgameSpec {
    pub terms: Vec<AlphaTerm>,
    pub frobenius_modulus: u64,
    /// `1/|C_G(x)|` for the non-identity classes of `p`-elements.
    pub frobenius_terms: Vec<Rational>,
    pub square_rows: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ColumnMethodInstance {
    pub table: Arc<CharacterTable>,
    /// `H`-class index of each column.
    pub columns: Vec<usize>,
    pub m: Matrix,
    pub gram_k: Vec<Vec<i64>>,
    pub first_row: Vec<i64>,
    pub max_rows: usize,
    pub pcentral: usize,
    pub parity: (usize, usize),
    pub congruence_pairs: Vec<(usize, usize, i64)>,
    /// One entry per `H`-class.
    pub sources: Vec<ClassSource>,
    pub rows: Vec<RowSpec>,
    /// `(row label, H-character index)`.
    pub congruences: Vec<(String, usize)>,
    pub exclusions: Vec<ExclusionSpec>,
    pub kernels: Vec<KernelSpec>,
    pub endgame: Option<EndgameSpec>,
    pub assumptions: Vec<String>,
    /// Number of candidates a reference enumeration reported.
    pub expected_candidates: Option<usize>,
    pub golden: Vec<GoldenCandidate>,
}

/// A reference `K` (and its stated `L`) to locate among the candidates.
#[derive(Clone, Debug)]
pub struct GoldenCandidate {
    pub name: String,
    pub k: Vec<Vec<i64>>,
    pub l: Matrix,
}

impl GoldenCandidate {
    /// Document with a `K` section followed by an `L` section.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut k = Vec::new();
        let mut l = Vec::new();
        let mut section = None;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            match line {
                "" => continue,
                "K" | "L" => {
                    section = Some(line == "K");
                    continue;
                }
                _ => {}
            }
            match section {
                Some(true) => k.push(line.split_whitespace().map(|t| parse_i64(t, ln)).collect::<Result<Vec<_>>>()?),
                Some(false) => l.push(
                    line.split_whitespace()
                        .map(|t| parse_scalar_at(t, ln))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => return Err(perr(ln, "expected a `K` header")),
            }
        }
        if k.is_empty() || k.len() != l.len() {
            return Err(perr(0, format!("{}: K and L must have the same positive row count", name)));
        }
        Ok(GoldenCandidate {
            name: name.to_string(),
            k,
            l: Matrix::from_rows(l)?,
        })
    }
}

impl ColumnMethodInstance {
    pub fn column_names(&self) -> Vec<String> {
        self.columns
            .iter()
            .map(|&c| self.table.classes()[c].name.clone())
            .collect()
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        let k = self.table.class_index(name)?;
        self.columns
            .iter()
            .position(|&c| c == k)
            .ok_or_else(|| Error::UnknownLabel(format!("class `{}` is not a column", name)))
    }

    /// `N = (ψ_i(x_j))`.
    pub fn n_matrix(&self) -> Matrix {
        let t = &self.table;
        Matrix::from_rows(
            (0..t.characters().len())
                .map(|i| self.columns.iter().map(|&c| t.value(i, c).clone()).collect())
                .collect(),
        )
        .expect("rows have equal length")
    }

    pub fn row_spec(&self, label: &str) -> Result<&RowSpec> {
        self.rows
            .iter()
            .find(|r| r.label == label)
            .ok_or_else(|| Error::UnknownLabel(format!("row `{}`", label)))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, &base)
    }

    /// Parses an instance document; the table path is resolved against
    /// `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        InstanceParser::default().run(text, base)
    }
}

/// `true` iff every entry of `N·M` is a rational integer.
pub fn verify_integer_transfer(n: &Matrix, m: &Matrix) -> Result<bool> {
    Ok(n.checked_mul(m)?.is_integral())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pending,
    Rejected(String),
    Surviving,
}

impl Status {
    pub fn is_rejected(&self) -> bool {
        matches!(self, Status::Rejected(_))
    }
}

#[derive(Clone, Debug)]
pub struct CandidateK {
    pub k: Vec<Vec<i64>>,
    pub l: Matrix,
    pub status: Status,
    /// Verdicts of every filter, evaluated independently.
    pub verdicts: Vec<(String, Option<String>)>,
}

impl CandidateK {
    pub fn rows(&self) -> usize {
        self.k.len()
    }
}

/// Sign-normalises rows `2..m` and sorts them in descending order.
pub fn canonical_k(k: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![k[0].clone()];
    out.extend(gram::canonicalize(&k[1..]));
    out
}

/// `L = K·M⁻¹`.
pub fn recover_l(k: &[Vec<i64>], m_inverse: &Matrix) -> Result<Matrix> {
    Matrix::from_i64_rows(k)?.checked_mul(m_inverse)
}

/// All `K` with the prescribed column Gram matrix and first row, at most
/// `max_rows` rows and no zero row, up to permuting and negating rows
/// `2..m`.
pub fn enumerate_k(inst: &ColumnMethodInstance) -> Result<Vec<CandidateK>> {
    let cols = inst.gram_k.len();
    if inst.first_row.len() != cols || inst.m.rows() != cols || inst.m.cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "gram is {}x{}, first row has {} entries, M is {}x{}",
            cols,
            cols,
            inst.first_row.len(),
            inst.m.rows(),
            inst.m.cols()
        )));
    }
    if inst.max_rows == 0 {
        return Err(Error::InfeasibleInstance("max_rows is zero".into()));
    }
    if !gram::is_psd(&inst.gram_k) {
        return Err(Error::InfeasibleInstance("column Gram matrix is not positive semidefinite".into()));
    }
    let residual = gram::residual(&inst.gram_k, &inst.first_row);
    let sols = gram::decompose(
        &residual,
        DecompositionLimits {
            max_terms: inst.max_rows - 1,
        },
    )
    .map_err(|e| match e {
        Error::InfeasibleGram(msg) => Error::InfeasibleInstance(msg),
        other => other,
    })?;
    if sols.is_empty() {
        return Err(Error::InfeasibleInstance(format!(
            "no integer matrix with at most {} rows fits the column inner products",
            inst.max_rows
        )));
    }
    let m_inv = inst.m.inverse()?;
    sols.into_par_iter()
        .map(|rows| {
            let mut k = vec![inst.first_row.clone()];
            k.extend(rows);
            let l = recover_l(&k, &m_inv)?;
            Ok(CandidateK {
                k,
                l,
                status: Status::Pending,
                verdicts: Vec::new(),
            })
        })
        .collect()
}

/// Candidate count when zero rows are allowed: a candidate with `m` rows
/// can be padded with up to `max_rows − m` zero rows.
pub fn count_allowing_zero_rows(candidates: &[CandidateK], max_rows: usize) -> usize {
    candidates.iter().map(|c| max_rows + 1 - c.rows()).sum()
}

/// Rejects `L` if some row vanishes on the `p`-central column.
pub fn filter_pcentral_nonvanishing(l: &Matrix, column: usize) -> Option<String> {
    (0..l.rows())
        .find(|&i| l[(i, column)].is_zero())
        .map(|i| format!("row {} vanishes on the p-central column", i + 1))
}

/// With `χ(x) = c₁ + c₂` and `χ(y) = c₁ − c₂` for integers `c₁, c₂`, the
/// values at `x` and `y` must have even sum.
pub fn filter_decomposition_parity(l: &Matrix, pair: (usize, usize)) -> Result<Option<String>> {
    for i in 0..l.rows() {
        let a = l[(i, pair.0)].expect_i64()?;
        let b = l[(i, pair.1)].expect_i64()?;
        if (a + b).rem_euclid(2) != 0 {
            return Ok(Some(format!(
                "row {} has values ({}, {}) with odd sum: c₁ = {}/2 is not an integer",
                i + 1,
                a,
                b,
                a + b
            )));
        }
    }
    Ok(None)
}

/// Values at two `p`-power-related classes agree modulo `p`.
pub fn filter_congruence_pair(l: &Matrix, a: usize, b: usize, modulus: i64) -> Result<Option<String>> {
    for i in 0..l.rows() {
        let x = l[(i, a)].expect_i64()?;
        let y = l[(i, b)].expect_i64()?;
        if (x - y).rem_euclid(modulus) != 0 {
            return Ok(Some(format!(
                "row {} has values {} and {} not congruent mod {}",
                i + 1,
                x,
                y,
                modulus
            )));
        }
    }
    Ok(None)
}

/// Runs every filter on every candidate. A candidate's status becomes the
/// first rejection, or `Surviving` if none applies; rejected candidates
/// stay rejected.
pub fn apply_filters(candidates: &mut [CandidateK], inst: &ColumnMethodInstance) -> Result<()> {
    let names = inst.column_names();
    for cand in candidates.iter_mut() {
        let mut verdicts = vec![(
            format!("nonvanishing on {}", names[inst.pcentral]),
            filter_pcentral_nonvanishing(&cand.l, inst.pcentral),
        )];
        // the value-based filters need integer entries; a candidate already
        // rejected above may legitimately have other entries
        let parity = filter_decomposition_parity(&cand.l, inst.parity);
        verdicts.push((
            format!("parity of {} and {}", names[inst.parity.0], names[inst.parity.1]),
            match parity {
                Ok(v) => v,
                Err(e) => Some(e.to_string()),
            },
        ));
        for &(a, b, p) in &inst.congruence_pairs {
            let v = filter_congruence_pair(&cand.l, a, b, p);
            verdicts.push((
                format!("{} ≡ {} (mod {})", names[a], names[b], p),
                match v {
                    Ok(v) => v,
                    Err(e) => Some(e.to_string()),
                },
            ));
        }
        if !cand.status.is_rejected() {
            cand.status = match verdicts.iter().find(|(_, v)| v.is_some()) {
                Some((name, Some(reason))) => Status::Rejected(format!("{}: {}", name, reason)),
                _ => Status::Surviving,
            };
        }
        cand.verdicts = verdicts;
    }
    Ok(())
}

/// `a·d + constant + Σ unknown coefficients`, the inner product of a
/// restricted row with an `H`-character.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub degree: Rational,
    pub constant: Rational,
    pub unknowns: BTreeMap<String, Rational>,
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.degree.is_zero() {
            parts.push(format!("({})·d", self.degree));
        }
        for (name, c) in &self.unknowns {
            parts.push(format!("({})·{}", c, name));
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn rational_of(s: &Scalar, what: &str) -> Result<Rational> {
    s.to_rational()
        .ok_or_else(|| Error::NonIntegerValue(format!("{} is irrational ({})", what, s)))
}

/// `(row|_H, χ)_H` as a linear form in the degree and the unknown values.
pub fn restricted_inner_product(inst: &ColumnMethodInstance, row: &[Scalar], chi: &[Scalar]) -> Result<LinearForm> {
    let t = &inst.table;
    let order = rat_int(t.group_order() as i64);
    let mut degree = Scalar::zero();
    let mut constant = Scalar::zero();
    let mut unknowns: BTreeMap<String, Scalar> = BTreeMap::new();
    for (k, source) in inst.sources.iter().enumerate() {
        if chi[k].is_zero() {
            continue;
        }
        let w = chi[k].scale(&(rat_int(t.class_size(k) as i64) / &order));
        match source {
            ClassSource::Degree => degree += w,
            ClassSource::Column(j) => constant += &row[*j] * &w,
            ClassSource::Unknown(name) => *unknowns.entry(name.clone()).or_insert_with(Scalar::zero) += w,
        }
    }
    Ok(LinearForm {
        degree: rational_of(&degree, "degree coefficient")?,
        constant: rational_of(&constant, "known part of the inner product")?,
        unknowns: unknowns
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| Ok((k, rational_of(&v, "unknown coefficient")?)))
            .collect::<Result<_>>()?,
    })
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DegreeCongruence {
    pub row: String,
    pub character: String,
    /// The inner product written as `(a·d + b)/c` in lowest terms.
    pub numerator: (i64, i64),
    pub denominator: i64,
    pub congruence: Congruence,
}

impl fmt::Display for DegreeCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.numerator;
        let d = format!("d{}", self.row.trim_start_matches('d'));
        let lead = if a == 1 { d.clone() } else { format!("{}{}", a, d) };
        let tail = match b.cmp(&0) {
            std::cmp::Ordering::Less => format!("{}-{}", lead, -b),
            std::cmp::Ordering::Equal => lead,
            std::cmp::Ordering::Greater => format!("{}+{}", lead, b),
        };
        write!(
            f,
            "({}|H, {}) = ({})/{}  ⇒  {} {}",
            self.row, self.character, tail, self.denominator, d, self.congruence
        )
    }
}

fn int(r: &num_bigint::BigInt) -> i64 {
    i64::try_from(r.clone()).expect("value fits in 64 bits")
}

/// Integrality of `(a·d + b)` gives a congruence on `d`.
pub fn congruence_from_form(form: &LinearForm) -> Result<((i64, i64), i64, Congruence)> {
    if !form.unknowns.is_empty() {
        return Err(Error::UnderdeterminedSystem(format!(
            "inner product depends on unknown value(s) {}",
            form.unknowns.keys().cloned().collect::<Vec<_>>().join(", ")
        )));
    }
    if form.degree.is_zero() {
        return Err(Error::UnderdeterminedSystem("inner product does not involve the degree".into()));
    }
    let l = form.degree.denom().lcm(form.constant.denom());
    let a = int(&(&form.degree * Rational::from_integer(l.clone())).to_integer());
    let b = int(&(&form.constant * Rational::from_integer(l.clone())).to_integer());
    let l = int(&l);
    // a·d + b ≡ 0 (mod l)
    let g = a.gcd(&l);
    if b % g != 0 {
        return Err(Error::InfeasibleInstance(format!(
            "{}·d + {} ≡ 0 (mod {}) has no solution",
            a, b, l
        )));
    }
    let (a2, b2, m) = (a / g, b / g, l / g);
    let residue = if a2.rem_euclid(m) == 1 % m {
        -b2
    } else {
        let inv = mod_inverse(a2, m).expect("coprime after dividing by the gcd");
        (-b2 * inv).rem_euclid(m)
    };
    Ok(((a2, b2), m, Congruence::new(residue, m)))
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Finds the row of `l` equal to `±values`; returns its index and sign.
pub fn find_row(l: &Matrix, values: &[Scalar]) -> Option<(usize, i64)> {
    let neg: Vec<Scalar> = values.iter().map(|v| -v.clone()).collect();
    (0..l.rows()).find_map(|i| {
        if l.row(i) == values {
            Some((i, 1))
        } else if l.row(i) == neg.as_slice() {
            Some((i, -1))
        } else {
            None
        }
    })
}

pub fn degree_congruence(inst: &ColumnMethodInstance, row: &str, character: usize) -> Result<DegreeCongruence> {
    let spec = inst.row_spec(row)?;
    let chi: Vec<Scalar> = inst.table.characters()[character].values.clone();
    let form = restricted_inner_product(inst, &spec.values, &chi)?;
    let (numerator, denominator, congruence) = congruence_from_form(&form)?;
    Ok(DegreeCongruence {
        row: row.to_string(),
        character: inst.table.characters()[character].name.clone(),
        numerator,
        denominator,
        congruence,
    })
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ExclusionStep {
    pub character: String,
    /// `(constant, coefficient of the unknown)` of the inner product.
    pub form: (String, String),
    pub rendered: String,
    pub constraint: String,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ExclusionReport {
    pub row: String,
    pub value: i64,
    pub unknown: Option<String>,
    pub steps: Vec<ExclusionStep>,
    pub excluded: bool,
    pub conclusion: String,
}

/// Assumes `d = value` and tests the integrality and sign of the inner
/// products with genuine `H`-characters: `d < 0` means the row is `−χ` so
/// every such inner product is `≤ 0`, and `d > 0` makes them `≥ 0`.
pub fn exclude_degree_with_unknown(inst: &ColumnMethodInstance, spec: &ExclusionSpec) -> Result<ExclusionReport> {
    let row = inst.row_spec(&spec.row)?;
    let d = rat_int(spec.value);
    let sign = spec.value.signum();
    if sign == 0 {
        return Err(Error::InfeasibleInstance("a degree cannot be zero".into()));
    }
    let mut unknown: Option<String> = None;
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    // integrality: n ≡ r (mod q) constraints, combined as a list
    let mut residues: Vec<(Rational, Rational)> = Vec::new();
    let mut steps = Vec::new();
    let mut fixed_violation = None;
    for (name, chi) in &spec.characters {
        let form = restricted_inner_product(inst, &row.values, chi)?;
        let constant = &form.degree * &d + &form.constant;
        if form.unknowns.len() > 1 {
            return Err(Error::UnderdeterminedSystem(format!(
                "({}|H, {}) involves several unknowns",
                spec.row, name
            )));
        }
        let (u, coef) = match form.unknowns.iter().next() {
            Some((u, c)) => (Some(u.clone()), c.clone()),
            None => (None, Rational::zero()),
        };
        if let Some(u) = &u {
            match &unknown {
                Some(prev) if prev != u => {
                    return Err(Error::UnderdeterminedSystem(format!(
                        "test characters involve both `{}` and `{}`",
                        prev, u
                    )))
                }
                _ => unknown = Some(u.clone()),
            }
        }
        let var = u.clone().unwrap_or_else(|| "n".into());
        let rendered = render_affine(&constant, &coef, &var);
        let rel = if sign < 0 { "≤" } else { "≥" };
        let constraint;
        if coef.is_zero() {
            let ok = constant.is_integer() && (constant.signum() * rat_int(sign)) >= Rational::zero();
            constraint = format!("{} {} 0 {}", constant, rel, if ok { "holds" } else { "fails" });
            if !ok {
                fixed_violation = Some(format!("({}|H, {}) = {} violates the sign or integrality", spec.row, name, constant));
            }
        } else {
            // sign·(constant + coef·n) ≥ 0
            let bound = -&constant / &coef;
            let n_upper = (coef.is_positive()) == (sign < 0);
            if n_upper {
                let b = bound.floor();
                hi = Some(hi.map_or(b.clone(), |h: Rational| h.min(b.clone())));
                constraint = format!("{} {} 0 ⇒ {} ≤ {}", rendered, rel, var, b);
            } else {
                let b = bound.ceil();
                lo = Some(lo.map_or(b.clone(), |l: Rational| l.max(b.clone())));
                constraint = format!("{} {} 0 ⇒ {} ≥ {}", rendered, rel, var, b);
            }
            residues.push((constant.clone(), coef.clone()));
        }
        steps.push(ExclusionStep {
            character: name.clone(),
            form: (constant.to_string(), coef.to_string()),
            rendered,
            constraint,
        });
    }
    let var = unknown.clone().unwrap_or_else(|| "n".into());
    let (excluded, conclusion) = if let Some(v) = fixed_violation {
        (true, v)
    } else if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            (true, format!("{} ≥ {} and {} ≤ {} conflict, so d{} ≠ {}", var, l, var, h, spec.row.trim_start_matches('d'), spec.value))
        } else {
            // look for an integer n in range satisfying every integrality condition
            let li = rational_to_i64(l).expect("bound fits");
            let hi_i = rational_to_i64(h).expect("bound fits");
            let found = (li..=hi_i).find(|&n| {
                residues
                    .iter()
                    .all(|(c, k)| (c + k * rat_int(n)).is_integer())
            });
            match found {
                None => (true, format!("no integer {} in [{}, {}] makes every inner product integral", var, l, h)),
                Some(n) => (false, format!("{} = {} is consistent; no exclusion", var, n)),
            }
        }
    } else {
        (false, format!("{} is only bounded on one side; no exclusion", var))
    };
    Ok(ExclusionReport {
        row: spec.row.clone(),
        value: spec.value,
        unknown,
        steps,
        excluded,
        conclusion,
    })
}

fn render_affine(constant: &Rational, coef: &Rational, var: &str) -> String {
    if coef.is_zero() {
        return constant.to_string();
    }
    // (a + b·n)/c with a common denominator
    let l = constant.denom().lcm(coef.denom());
    let a = (constant * Rational::from_integer(l.clone())).to_integer();
    let b = (coef * Rational::from_integer(l.clone())).to_integer();
    let bpart = if b.is_one() {
        var.to_string()
    } else if b == -num_bigint::BigInt::one() {
        format!("-{}", var)
    } else {
        format!("{}{}", b, var)
    };
    let body = if a.is_zero() {
        bpart
    } else if b.is_negative() {
        format!("{}{}", a, bpart)
    } else {
        format!("{}+{}", a, bpart)
    };
    if l.is_one() {
        body
    } else {
        format!("({})/{}", body, l)
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct KernelReport {
    pub row: String,
    pub value: i64,
    pub excluded: bool,
    pub conclusion: String,
}

/// A row of degree `±1` is `±λ` for a linear character `λ`; if it takes
/// the value `d` on every listed column, those classes lie in `ker λ`.
/// The instance assumes no proper normal subgroup contains all of them.
pub fn exclude_linear_kernel(inst: &ColumnMethodInstance, spec: &KernelSpec) -> Result<KernelReport> {
    let row = inst.row_spec(&spec.row)?;
    let names = inst.column_names();
    let d = Scalar::from_int(spec.value);
    let excluded = spec.value.abs() == 1 && spec.columns.iter().all(|&c| row.values[c] == d);
    let cols: Vec<&str> = spec.columns.iter().map(|&c| names[c].as_str()).collect();
    let conclusion = if excluded {
        format!(
            "d = {} makes the row a linear character trivial on {}; its kernel is a proper normal subgroup containing them, so {} ≠ {}",
            spec.value,
            cols.join(", "),
            spec.row,
            spec.value
        )
    } else {
        "the row is not constant on the listed classes; no exclusion".into()
    };
    Ok(KernelReport {
        row: spec.row.clone(),
        value: spec.value,
        excluded,
        conclusion,
    })
}

/// Admissible sign-carrying degrees `d ≡ r (mod m)`, `d ≠ 0`, minus
/// excluded values.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeDomain {
    pub congruence: Congruence,
    pub excluded: Vec<i64>,
}

impl DegreeDomain {
    fn admissible(&self, d: i64) -> bool {
        d != 0 && self.congruence.contains(d) && !self.excluded.contains(&d)
    }

    /// Largest admissible negative value.
    pub fn largest_negative(&self) -> i64 {
        let m = self.congruence.modulus;
        let mut d = self.congruence.canonical_residue() - m;
        while !self.admissible(d) {
            d -= m;
        }
        d
    }

    /// Smallest admissible positive value.
    pub fn smallest_positive(&self) -> i64 {
        let m = self.congruence.modulus;
        let mut d = self.congruence.canonical_residue();
        if d == 0 {
            d = m;
        }
        while !self.admissible(d) {
            d += m;
        }
        d
    }

    pub fn smallest_absolute(&self) -> i64 {
        let (n, p) = (self.largest_negative(), self.smallest_positive());
        if -n < p {
            n
        } else {
            p
        }
    }

    /// `min w/d` over the domain.
    pub fn minimum_of_reciprocal(&self, w: &Rational) -> (Rational, i64) {
        if w.is_positive() {
            let d = self.largest_negative();
            (w / rat_int(d), d)
        } else {
            let d = self.smallest_positive();
            (w / rat_int(d), d)
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct EndgameTerm {
    pub row: String,
    pub weight: String,
    pub degree: Option<i64>,
    pub minimiser: Option<i64>,
    pub minimum: String,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct EndgameReport {
    pub equation: String,
    pub target_numerator: String,
    pub terms: Vec<EndgameTerm>,
    pub lower_bound: String,
    pub order_bound: Option<u64>,
    pub frobenius: String,
    pub frobenius_orders: Vec<u64>,
    pub square_checks: Vec<(u64, u64)>,
    pub square_rows: Vec<(String, i64)>,
    pub contradiction: bool,
    pub conclusion: String,
}

/// Bounds `|G|` from a structure-constant identity, pins it with the
/// Frobenius count and compares with a sum of squared degrees.
pub fn order_endgame(
    inst: &ColumnMethodInstance,
    l: &Matrix,
    domains: &BTreeMap<String, DegreeDomain>,
) -> Result<EndgameReport> {
    let spec = inst
        .endgame
        .as_ref()
        .ok_or_else(|| Error::UnderdeterminedSystem("instance has no endgame section".into()))?;
    let names = inst.column_names();
    let h_order = inst.table.group_order();
    let target: Rational = spec.terms.iter().map(|t| &t.weight * &t.numerator).sum();
    let ones = vec![Scalar::one(); l.cols()];
    let mut terms = Vec::new();
    let mut lower = Rational::zero();
    let mut rendered = Vec::new();
    for i in 0..l.rows() {
        let row = l.row(i);
        let w: Scalar = spec
            .terms
            .iter()
            .map(|t| {
                let [a, b, c] = t.columns;
                (&(&row[a] * &row[b]) * &row[c]).scale(&t.weight)
            })
            .sum();
        if w.is_zero() {
            continue;
        }
        let w = rational_of(&w, "structure-constant weight")?;
        if row == ones.as_slice() {
            rendered.push(w.to_string());
            lower += &w;
            terms.push(EndgameTerm {
                row: "1".into(),
                weight: w.to_string(),
                degree: Some(1),
                minimiser: None,
                minimum: w.to_string(),
            });
            continue;
        }
        let spec_row = inst
            .rows
            .iter()
            .find(|r| find_row_in(row, &r.values).is_some())
            .ok_or_else(|| {
                Error::UnderdeterminedSystem(format!("row {} carries weight {} but has no degree information", i + 1, w))
            })?;
        // w is invariant under negating the row together with its degree
        let domain = domains.get(&spec_row.label).ok_or_else(|| {
            Error::UnderdeterminedSystem(format!("no degree congruence for row `{}`", spec_row.label))
        })?;
        let (min, d) = domain.minimum_of_reciprocal(&w);
        rendered.push(format!("{}/{}", w, spec_row.label));
        lower += &min;
        terms.push(EndgameTerm {
            row: spec_row.label.clone(),
            weight: w.to_string(),
            degree: None,
            minimiser: Some(d),
            minimum: min.to_string(),
        });
    }
    let equation = format!("{} = {}/|G|", rendered.join(" + "), target);
    let mut report = EndgameReport {
        equation,
        target_numerator: target.to_string(),
        terms,
        lower_bound: lower.to_string(),
        order_bound: None,
        frobenius: String::new(),
        frobenius_orders: Vec::new(),
        square_checks: Vec::new(),
        square_rows: Vec::new(),
        contradiction: false,
        conclusion: String::new(),
    };
    if !lower.is_positive() || !target.is_positive() {
        report.conclusion = format!("left side is bounded below only by {}; |G| is not bounded", lower);
        return Ok(report);
    }
    let bound = (&target / &lower).floor();
    let bound = u64::try_from(bound.to_integer()).expect("order bound fits");
    report.order_bound = Some(bound);
    let s: Rational = spec.frobenius_terms.iter().cloned().sum();
    let modulus = spec.frobenius_modulus;
    let mut orders = Vec::new();
    let mut j = 1u64;
    while j * h_order <= bound {
        let g = j * h_order;
        let count = Rational::one() + rat_int(g as i64) * &s;
        if count.is_integer() && count.to_integer() % num_bigint::BigInt::from(modulus) == num_bigint::BigInt::zero() {
            orders.push(g);
        }
        j += 1;
    }
    report.frobenius = format!(
        "1 + |G|·{} ≡ 0 (mod {}) over |G| = {}·j ≤ {} ({} multiples)",
        s,
        modulus,
        h_order,
        bound,
        j - 1
    );
    report.frobenius_orders = orders.clone();
    let mut square_sum = 0u64;
    for label in &spec.square_rows {
        let domain = domains
            .get(label)
            .ok_or_else(|| Error::UnderdeterminedSystem(format!("no degree congruence for row `{}`", label)))?;
        let d = domain.smallest_absolute();
        square_sum += (d * d) as u64;
        report.square_rows.push((label.clone(), d));
    }
    report.square_checks = orders.iter().map(|&g| (g, square_sum)).collect();
    let survivors: Vec<u64> = orders.iter().copied().filter(|&g| square_sum <= g).collect();
    report.contradiction = survivors.is_empty();
    let squares: Vec<String> = report.square_rows.iter().map(|(_, d)| format!("{}²", d.abs())).collect();
    report.conclusion = if orders.is_empty() {
        "no order satisfies the Frobenius congruence".into()
    } else if report.contradiction {
        format!(
            "|G| ∈ {:?} but |G| ≥ {} = {} > {}",
            orders,
            squares.join(" + "),
            square_sum,
            orders.iter().max().expect("non-empty")
        )
    } else {
        let _ = names;
        format!("orders {:?} survive the degree-square bound {}", survivors, square_sum)
    };
    Ok(report)
}

fn find_row_in(row: &[Scalar], values: &[Scalar]) -> Option<i64> {
    if row == values {
        Some(1)
    } else if row.iter().zip(values).all(|(a, b)| *a == -b.clone()) {
        Some(-1)
    } else {
        None
    }
}

/// Everything the pipeline derives for one instance.
#[derive(Clone, Debug)]
pub struct BlocksReport {
    pub integer_transfer: bool,
    pub candidates: Vec<CandidateK>,
    pub count_with_zero_rows: usize,
    pub congruences: Vec<DegreeCongruence>,
    pub exclusions: Vec<ExclusionReport>,
    pub kernels: Vec<KernelReport>,
    pub endgame: Option<EndgameReport>,
    pub golden: Vec<GoldenMatch>,
    /// Candidates matched by no reference matrix (empty without references).
    pub extras: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GoldenMatch {
    pub name: String,
    /// Index of the canonical candidate it reduces to.
    pub candidate: Option<usize>,
    /// Whether the reference K reproduces the reference L exactly.
    pub l_consistent: bool,
    pub gram_consistent: bool,
}

/// Locates each reference matrix among the canonical candidates.
pub fn match_golden(inst: &ColumnMethodInstance, candidates: &[CandidateK]) -> Result<(Vec<GoldenMatch>, Vec<usize>)> {
    let m_inv = inst.m.inverse()?;
    let mut matches = Vec::new();
    for g in &inst.golden {
        let canon = canonical_k(&g.k);
        let candidate = candidates.iter().position(|c| c.k == canon);
        let l_consistent = recover_l(&g.k, &m_inv)? == g.l;
        let gram_consistent = gram::outer_sum(&g.k, inst.gram_k.len()) == inst.gram_k;
        matches.push(GoldenMatch {
            name: g.name.clone(),
            candidate,
            l_consistent,
            gram_consistent,
        });
    }
    let extras = if inst.golden.is_empty() {
        Vec::new()
    } else {
        (0..candidates.len())
            .filter(|i| !matches.iter().any(|m| m.candidate == Some(*i)))
            .collect()
    };
    Ok((matches, extras))
}

impl BlocksReport {
    /// Whether the enumeration agrees with the reference count and every
    /// reference matrix was found exactly once.
    pub fn matches_reference(&self) -> bool {
        let mut seen: Vec<usize> = self.golden.iter().filter_map(|g| g.candidate).collect();
        let found = seen.len() == self.golden.len();
        seen.sort_unstable();
        seen.dedup();
        found && seen.len() == self.golden.len() && self.extras.is_empty()
    }

    pub fn survivors(&self) -> Vec<usize> {
        (0..self.candidates.len())
            .filter(|&i| self.candidates[i].status == Status::Surviving)
            .collect()
    }
}

/// Enumerates, filters and, for a unique survivor, runs the degree and
/// order arithmetic.
pub fn run(inst: &ColumnMethodInstance, filters: bool) -> Result<BlocksReport> {
    let integer_transfer = verify_integer_transfer(&inst.n_matrix(), &inst.m)?;
    if !integer_transfer {
        return Err(Error::InfeasibleInstance("N·M is not an integer matrix".into()));
    }
    let mut candidates = enumerate_k(inst)?;
    let count_with_zero_rows = count_allowing_zero_rows(&candidates, inst.max_rows);
    if filters {
        apply_filters(&mut candidates, inst)?;
    }
    let (golden, extras) = match_golden(inst, &candidates)?;
    let mut report = BlocksReport {
        golden,
        extras,
        integer_transfer,
        candidates,
        count_with_zero_rows,
        congruences: Vec::new(),
        exclusions: Vec::new(),
        kernels: Vec::new(),
        endgame: None,
    };
    let survivors = report.survivors();
    if survivors.len() != 1 {
        return Ok(report);
    }
    let l = report.candidates[survivors[0]].l.clone();
    for spec in &inst.rows {
        if find_row(&l, &spec.values).is_none() {
            return Err(Error::InfeasibleInstance(format!(
                "row `{}` does not occur in the surviving candidate",
                spec.label
            )));
        }
    }
    for (row, chi) in &inst.congruences {
        report.congruences.push(degree_congruence(inst, row, *chi)?);
    }
    for spec in &inst.exclusions {
        report.exclusions.push(exclude_degree_with_unknown(inst, spec)?);
    }
    for spec in &inst.kernels {
        report.kernels.push(exclude_linear_kernel(inst, spec)?);
    }
    let mut domains: BTreeMap<String, DegreeDomain> = BTreeMap::new();
    for c in &report.congruences {
        domains.insert(
            c.row.clone(),
            DegreeDomain {
                congruence: c.congruence.clone(),
                excluded: Vec::new(),
            },
        );
    }
    let proven = report
        .exclusions
        .iter()
        .filter(|e| e.excluded)
        .map(|e| (e.row.clone(), e.value))
        .chain(report.kernels.iter().filter(|k| k.excluded).map(|k| (k.row.clone(), k.value)));
    for (row, value) in proven {
        if let Some(d) = domains.get_mut(&row) {
            d.excluded.push(value);
        }
    }
    if inst.endgame.is_some() {
        report.endgame = Some(order_endgame(inst, &l, &domains)?);
    }
    Ok(report)
}

#[derive(Default)]
struct InstanceParser {
    table: Option<Arc<CharacterTable>>,
    columns: Vec<usize>,
    m: Option<Matrix>,
    gram: Option<Vec<Vec<i64>>>,
    first_row: Option<Vec<i64>>,
    max_rows: Option<usize>,
    pcentral: Option<usize>,
    parity: Option<(usize, usize)>,
    congruence_pairs: Vec<(usize, usize, i64)>,
    fusions: Vec<(usize, usize)>,
    unknowns: Vec<(usize, String)>,
    rows: Vec<RowSpec>,
    congruences: Vec<(String, usize)>,
    exclusions: Vec<ExclusionSpec>,
    kernels: Vec<KernelSpec>,
    terms: Vec<AlphaTerm>,
    frobenius: Option<(u64, Vec<Rational>)>,
    square_rows: Vec<String>,
    assumptions: Vec<String>,
    expected: Option<usize>,
    golden: Vec<GoldenCandidate>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: msg.into(),
    }
}

fn parse_i64(tok: &str, line: usize) -> Result<i64> {
    tok.parse().map_err(|_| perr(line, format!("expected an integer, found `{}`", tok)))
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational> {
    parse_scalar_at(tok, line)?
        .to_rational()
        .ok_or_else(|| perr(line, format!("expected a rational, found `{}`", tok)))
}

impl InstanceParser {
    fn table(&self, line: usize) -> Result<&Arc<CharacterTable>> {
        self.table
            .as_ref()
            .ok_or_else(|| perr(line, "`table` must come first"))
    }

    fn column(&self, name: &str, line: usize) -> Result<usize> {
        let t = self.table(line)?;
        let k = t.class_index(name).map_err(|_| perr(line, format!("unknown class `{}`", name)))?;
        self.columns
            .iter()
            .position(|&c| c == k)
            .ok_or_else(|| perr(line, format!("class `{}` is not a column", name)))
    }

    fn run(mut self, text: &str, base: &Path) -> Result<ColumnMethodInstance> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut idx = 0;
        while idx < lines.len() {
            let (ln, line) = lines[idx];
            idx += 1;
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match key {
                "table" => {
                    let path: PathBuf = base.join(rest);
                    self.table = Some(Arc::new(CharacterTable::load(&path)?));
                }
                "assume" => self.assumptions.push(rest.to_string()),
                "columns" => {
                    let t = self.table(ln)?.clone();
                    self.columns = toks
                        .iter()
                        .map(|n| t.class_index(n).map_err(|_| perr(ln, format!("unknown class `{}`", n))))
                        .collect::<Result<_>>()?;
                }
                "M" | "gram" => {
                    let n = self.columns.len();
                    if n == 0 {
                        return Err(perr(ln, "`columns` must precede matrices"));
                    }
                    let mut rows = Vec::new();
                    for _ in 0..n {
                        let (rl, row) = *lines.get(idx).ok_or_else(|| perr(ln, "matrix is truncated"))?;
                        idx += 1;
                        let vals: Vec<&str> = row.split_whitespace().collect();
                        if vals.len() != n {
                            return Err(perr(rl, format!("expected {} entries, found {}", n, vals.len())));
                        }
                        rows.push((rl, vals));
                    }
                    if key == "M" {
                        let m = rows
                            .iter()
                            .map(|(rl, v)| v.iter().map(|t| parse_scalar_at(t, *rl)).collect())
                            .collect::<Result<Vec<Vec<Scalar>>>>()?;
                        self.m = Some(Matrix::from_rows(m)?);
                    } else {
                        self.gram = Some(
                            rows.iter()
                                .map(|(rl, v)| v.iter().map(|t| parse_i64(t, *rl)).collect())
                                .collect::<Result<_>>()?,
                        );
                    }
                }
                "first_row" => self.first_row = Some(toks.iter().map(|t| parse_i64(t, ln)).collect::<Result<_>>()?),
                "max_rows" => {
                    let v = parse_i64(rest, ln)?;
                    if v < 1 {
                        return Err(perr(ln, "max_rows must be positive"));
                    }
                    self.max_rows = Some(v as usize);
                }
                "pcentral" => self.pcentral = Some(self.column(rest, ln)?),
                "parity" => {
                    if toks.len() != 2 {
                        return Err(perr(ln, "parity takes two classes"));
                    }
                    self.parity = Some((self.column(toks[0], ln)?, self.column(toks[1], ln)?));
                }
                "congruence_pair" => {
                    if toks.len() != 3 {
                        return Err(perr(ln, "congruence_pair takes two classes and a modulus"));
                    }
                    let p = parse_i64(toks[2], ln)?;
                    self.congruence_pairs
                        .push((self.column(toks[0], ln)?, self.column(toks[1], ln)?, p));
                }
                "fuse" => {
                    if toks.len() != 2 {
                        return Err(perr(ln, "fuse takes an H-class and a column class"));
                    }
                    let t = self.table(ln)?;
                    let k = t.class_index(toks[0]).map_err(|_| perr(ln, format!("unknown class `{}`", toks[0])))?;
                    self.fusions.push((k, self.column(toks[1], ln)?));
                }
                "unknown" => {
                    if toks.len() != 2 {
                        return Err(perr(ln, "unknown takes a class and a name"));
                    }
                    let t = self.table(ln)?;
                    let k = t.class_index(toks[0]).map_err(|_| perr(ln, format!("unknown class `{}`", toks[0])))?;
                    self.unknowns.push((k, toks[1].to_string()));
                }
                "row" => {
                    let (label, vals) = rest
                        .split_once('=')
                        .ok_or_else(|| perr(ln, "expected `row <label> = <values>`"))?;
                    let values = vals
                        .split_whitespace()
                        .map(|t| parse_scalar_at(t, ln))
                        .collect::<Result<Vec<_>>>()?;
                    if values.len() != self.columns.len() {
                        return Err(perr(ln, "row length differs from the column count"));
                    }
                    self.rows.push(RowSpec {
                        label: label.trim().to_string(),
                        values,
                    });
                }
                "congruence" => {
                    if toks.len() != 2 {
                        return Err(perr(ln, "congruence takes a row label and a character"));
                    }
                    let t = self.table(ln)?;
                    let chi = t
                        .character_index(toks[1])
                        .map_err(|_| perr(ln, format!("unknown character `{}`", toks[1])))?;
                    self.congruences.push((toks[0].to_string(), chi));
                }
                "exclude" => {
                    // exclude <row> <value> <combination> ; <combination> ...
                    let mut parts = rest.splitn(3, char::is_whitespace);
                    let row = parts.next().unwrap_or("").to_string();
                    let value = parse_i64(parts.next().unwrap_or(""), ln)?;
                    let t = self.table(ln)?.clone();
                    let characters = parts
                        .next()
                        .unwrap_or("")
                        .split(';')
                        .map(|c| {
                            let coeffs = t.parse_combination(c).map_err(|e| perr(ln, e.to_string()))?;
                            Ok((c.split_whitespace().collect::<String>(), t.combine(&coeffs)))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    self.exclusions.push(ExclusionSpec { row, value, characters });
                }
                "kernel" => {
                    if toks.len() < 3 {
                        return Err(perr(ln, "kernel takes a row, a degree and classes"));
                    }
                    let columns = toks[2..].iter().map(|c| self.column(c, ln)).collect::<Result<_>>()?;
                    self.kernels.push(KernelSpec {
                        row: toks[0].to_string(),
                        value: parse_i64(toks[1], ln)?,
                        columns,
                    });
                }
                "alpha" => {
                    if toks.len() != 5 {
                        return Err(perr(ln, "alpha takes three classes, a weight and a numerator"));
                    }
                    self.terms.push(AlphaTerm {
                        columns: [self.column(toks[0], ln)?, self.column(toks[1], ln)?, self.column(toks[2], ln)?],
                        weight: parse_rational(toks[3], ln)?,
                        numerator: parse_rational(toks[4], ln)?,
                    });
                }
                "frobenius" => {
                    if toks.len() < 2 {
                        return Err(perr(ln, "frobenius takes a modulus and class terms"));
                    }
                    let modulus = parse_i64(toks[0], ln)?;
                    if modulus < 1 {
                        return Err(perr(ln, "modulus must be positive"));
                    }
                    let terms = toks[1..].iter().map(|t| parse_rational(t, ln)).collect::<Result<_>>()?;
                    self.frobenius = Some((modulus as u64, terms));
                }
                "square_bound" => self.square_rows = toks.iter().map(|s| s.to_string()).collect(),
                "expect_candidates" => self.expected = Some(parse_i64(rest, ln)?.max(0) as usize),
                "golden" => {
                    for t in &toks {
                        let path = base.join(t);
                        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
                            path: path.display().to_string(),
                            message: e.to_string(),
                        })?;
                        let name = Path::new(t)
                            .file_stem()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_else(|| t.to_string());
                        self.golden.push(GoldenCandidate::parse(&name, &text)?);
                    }
                }
                other => return Err(perr(ln, format!("unknown keyword `{}`", other))),
            }
        }
        let table = self.table.clone().ok_or_else(|| perr(0, "missing `table`"))?;
        let missing = |what: &str| perr(0, format!("missing `{}`", what));
        let mut sources: Vec<ClassSource> = table
            .classes()
            .iter()
            .map(|c| ClassSource::Unknown(c.name.clone()))
            .collect();
        sources[0] = ClassSource::Degree;
        for (j, &c) in self.columns.iter().enumerate() {
            sources[c] = ClassSource::Column(j);
        }
        for &(k, j) in &self.fusions {
            sources[k] = ClassSource::Column(j);
        }
        for (k, name) in &self.unknowns {
            sources[*k] = ClassSource::Unknown(name.clone());
        }
        let endgame = if self.terms.is_empty() {
            None
        } else {
            let (frobenius_modulus, frobenius_terms) = self.frobenius.clone().ok_or_else(|| missing("frobenius"))?;
            Some(EndgameSpec {
                terms: self.terms.clone(),
                frobenius_modulus,
                frobenius_terms,
                square_rows: self.square_rows.clone(),
            })
        };
        Ok(ColumnMethodInstance {
            table,
            columns: self.columns,
            m: self.m.ok_or_else(|| missing("M"))?,
            gram_k: self.gram.ok_or_else(|| missing("gram"))?,
            first_row: self.first_row.ok_or_else(|| missing("first_row"))?,
            max_rows: self.max_rows.ok_or_else(|| missing("max_rows"))?,
            pcentral: self.pcentral.ok_or_else(|| missing("pcentral"))?,
            parity: self.parity.ok_or_else(|| missing("parity"))?,
            congruence_pairs: self.congruence_pairs,
            sources,
            rows: self.rows,
            congruences: self.congruences,
            exclusions: self.exclusions,
            kernels: self.kernels,
            endgame,
            assumptions: self.assumptions,
            expected_candidates: self.expected,
            golden: self.golden,
        })
    }
}
