//! Character tables, class functions and the classical formulas built on
//! them: inner products, orthogonality, class-algebra structure constants
//! and Frobenius' solution count.
//!
//! Document format, one record per line (`#` starts a comment):
//!
//! ```text
//! name H
//! group_order 648
//! class C1 order=1 centralizer=648
//! char psi1 1 1 1 1 1 1 1 1 1 1 1 1 1 1
//! ```

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{parse_scalar_at, rat, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub name: String,
    pub element_order: u64,
    pub centralizer_order: u64,
}

impl ConjClass {
    pub fn size(&self, group_order: u64) -> u64 {
        group_order / self.centralizer_order
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub name: String,
    pub values: Vec<Scalar>,
}

impl Character {
    pub fn degree(&self) -> &Scalar {
        &self.values[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    name: String,
    group_order: u64,
    classes: Vec<ConjClass>,
    characters: Vec<Character>,
}

impl CharacterTable {
    /// Builds a table after checking every structural invariant. Orthogonality
    /// is checked separately by [`CharacterTable::validate_orthogonality`].
    pub fn new(
        name: impl Into<String>,
        group_order: u64,
        classes: Vec<ConjClass>,
        characters: Vec<Character>,
    ) -> Result<Self> {
        let table = CharacterTable {
            name: name.into(),
            group_order,
            classes,
            characters,
        };
        table.check_structure()?;
        Ok(table)
    }

    fn check_structure(&self) -> Result<()> {
        let structure = |m: String| Err(Error::Structure(m));
        if self.group_order == 0 {
            return structure("group order must be positive".into());
        }
        let Some(first) = self.classes.first() else {
            return structure("table has no classes".into());
        };
        if first.element_order != 1 || first.centralizer_order != self.group_order {
            return structure(format!(
                "first class `{}` must be the identity (order 1, centralizer {})",
                first.name, self.group_order
            ));
        }
        let mut total = 0u64;
        for c in &self.classes {
            if c.centralizer_order == 0 || !self.group_order.is_multiple_of(c.centralizer_order) {
                return structure(format!(
                    "centralizer order {} of class `{}` does not divide {}",
                    c.centralizer_order, c.name, self.group_order
                ));
            }
            if c.element_order == 0 || c.centralizer_order % c.element_order != 0 {
                return structure(format!(
                    "element order {} of class `{}` does not divide its centralizer order",
                    c.element_order, c.name
                ));
            }
            total += c.size(self.group_order);
        }
        if total != self.group_order {
            return structure(format!(
                "class sizes sum to {} instead of {}",
                total, self.group_order
            ));
        }
        if self.characters.len() != self.classes.len() {
            return structure(format!(
                "{} characters for {} classes",
                self.characters.len(),
                self.classes.len()
            ));
        }
        for ch in &self.characters {
            if ch.values.len() != self.classes.len() {
                return structure(format!(
                    "character `{}` has {} values for {} classes",
                    ch.name,
                    ch.values.len(),
                    self.classes.len()
                ));
            }
            let deg = ch.degree();
            if !deg.is_rational_integer() || !deg.is_positive() {
                return structure(format!(
                    "degree of `{}` is {}, not a positive integer",
                    ch.name, deg
                ));
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = String::from("G");
        let mut group_order = None;
        let mut classes = Vec::new();
        let mut characters = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let keyword = tokens.next().unwrap_or_default();
            match keyword {
                "name" => {
                    name = tokens
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "name needs a value"))?
                        .to_string();
                }
                "group_order" => {
                    let v = tokens
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "group_order needs a value"))?;
                    group_order = Some(parse_u64(v, line_no)?);
                }
                "class" => {
                    let cname = tokens
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "class needs a name"))?;
                    let mut order = None;
                    let mut cent = None;
                    for t in tokens {
                        match t.split_once('=') {
                            Some(("order", v)) => order = Some(parse_u64(v, line_no)?),
                            Some(("centralizer", v)) => cent = Some(parse_u64(v, line_no)?),
                            _ => {
                                return Err(Error::parse(line_no, format!("unexpected `{}`", t)))
                            }
                        }
                    }
                    classes.push(ConjClass {
                        name: cname.to_string(),
                        element_order: order
                            .ok_or_else(|| Error::parse(line_no, "class needs order="))?,
                        centralizer_order: cent
                            .ok_or_else(|| Error::parse(line_no, "class needs centralizer="))?,
                    });
                }
                "char" => {
                    let cname = tokens
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "char needs a name"))?;
                    let values = tokens
                        .map(|t| parse_scalar_at(t, line_no))
                        .collect::<Result<Vec<_>>>()?;
                    characters.push(Character {
                        name: cname.to_string(),
                        values,
                    });
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown keyword `{}`", other)))
                }
            }
        }
        let group_order =
            group_order.ok_or_else(|| Error::parse(0, "missing group_order line"))?;
        CharacterTable::new(name, group_order, classes, characters)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        CharacterTable::parse(&text)
    }

    /// Serialises back into the document format.
    pub fn to_document(&self) -> String {
        let mut out = format!("name {}\ngroup_order {}\n", self.name, self.group_order);
        for c in &self.classes {
            out.push_str(&format!(
                "class {} order={} centralizer={}\n",
                c.name, c.element_order, c.centralizer_order
            ));
        }
        for ch in &self.characters {
            let vals: Vec<String> = ch.values.iter().map(ToString::to_string).collect();
            out.push_str(&format!("char {} {}\n", ch.name, vals.join(" ")));
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self, k: usize) -> u64 {
        self.classes[k].size(self.group_order)
    }

    pub fn value(&self, character: usize, class: usize) -> &Scalar {
        &self.characters[character].values[class]
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn character_index(&self, name: &str) -> Result<usize> {
        self.characters
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    /// Index of the trivial character (all values 1), if present.
    pub fn trivial_character(&self) -> Option<usize> {
        self.characters
            .iter()
            .position(|c| c.values.iter().all(|v| *v == Scalar::one()))
    }

    /// Coefficient vector of an integer combination of characters written
    /// as `psi1 + psi2 - 2psi3`.
    pub fn parse_combination(&self, text: &str) -> Result<Vec<Scalar>> {
        let bad = |msg: String| Error::Structure(format!("combination `{}`: {}", text, msg));
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(bad("empty".into()));
        }
        let mut coeffs = vec![Scalar::zero(); self.characters.len()];
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("expected `+` or `-`".into()));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coef: i64 = if i == start {
                1
            } else {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad("coefficient too large".into()))?
            };
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            let name_start = i;
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                i += 1;
            }
            let name: String = chars[name_start..i].iter().collect();
            if name.is_empty() {
                return Err(bad("missing character name".into()));
            }
            let j = self.character_index(&name)?;
            coeffs[j] += Scalar::from_int(sign * coef);
        }
        Ok(coeffs)
    }

    /// Values of `Σ coeffs[j]·χ_j` on every class.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        (0..self.classes.len())
            .map(|k| {
                coeffs
                    .iter()
                    .zip(&self.characters)
                    .map(|(c, ch)| c * &ch.values[k])
                    .sum()
            })
            .collect()
    }

    /// `Σ_k f_k g_k / |C(x_k)|` over the classes of this table.
    pub fn inner_product_values(&self, f: &[Scalar], g: &[Scalar]) -> Scalar {
        self.classes
            .iter()
            .zip(f.iter().zip(g))
            .map(|(c, (a, b))| {
                (a * &b.complex_conjugate()).scale(&rat(1, c.centralizer_order as i64))
            })
            .sum()
    }

    pub fn validate_orthogonality(&self) -> OrthogonalityReport {
        let mut report = OrthogonalityReport::default();
        let n = self.characters.len();
        for i in 0..n {
            for j in i..n {
                let ip = self.inner_product_values(
                    &self.characters[i].values,
                    &self.characters[j].values,
                );
                let expected = if i == j { Scalar::one() } else { Scalar::zero() };
                if ip != expected {
                    report.row_failures.push(PairFailure {
                        first: self.characters[i].name.clone(),
                        second: self.characters[j].name.clone(),
                        found: ip,
                        expected,
                    });
                }
            }
        }
        let k = self.classes.len();
        for a in 0..k {
            for b in a..k {
                let s: Scalar = self
                    .characters
                    .iter()
                    .map(|ch| &ch.values[a] * &ch.values[b].complex_conjugate())
                    .sum();
                let expected = if a == b {
                    Scalar::from_int(self.classes[a].centralizer_order as i64)
                } else {
                    Scalar::zero()
                };
                if s != expected {
                    report.column_failures.push(PairFailure {
                        first: self.classes[a].name.clone(),
                        second: self.classes[b].name.clone(),
                        found: s,
                        expected,
                    });
                }
            }
        }
        report.degree_square_sum = self
            .characters
            .iter()
            .map(|c| c.degree() * c.degree())
            .sum();
        report.group_order = self.group_order;
        report
    }

    /// `α_xyz = Σ_χ χ(x)χ(y)χ̄(z)/χ(1)`.
    pub fn structure_constant_alpha(&self, x: usize, y: usize, z: usize) -> Scalar {
        self.characters
            .iter()
            .map(|ch| {
                let num = &(&ch.values[x] * &ch.values[y]) * &ch.values[z].complex_conjugate();
                num.checked_div(ch.degree()).expect("degrees are non-zero")
            })
            .sum()
    }

    /// Number of pairs `(a, b) ∈ xᴳ × yᴳ` with `ab = z`, from the table.
    pub fn structure_constant_a(&self, x: usize, y: usize, z: usize) -> Result<Rational> {
        let alpha = self.structure_constant_alpha(x, y, z);
        let alpha = alpha.to_rational().ok_or_else(|| {
            Error::NonIntegerValue(format!("structure constant sum {} is irrational", alpha))
        })?;
        let prefactor = rat(
            self.group_order as i64,
            (self.classes[x].centralizer_order * self.classes[y].centralizer_order) as i64,
        );
        Ok(prefactor * alpha)
    }

    /// `1 + Σ |class|` over non-identity classes whose element order divides `m`.
    pub fn frobenius_count(&self, m: u64) -> u64 {
        1 + self
            .classes
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| m.is_multiple_of(c.element_order))
            .map(|(k, _)| self.class_size(k))
            .sum::<u64>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFailure {
    pub first: String,
    pub second: String,
    pub found: Scalar,
    pub expected: Scalar,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub row_failures: Vec<PairFailure>,
    pub column_failures: Vec<PairFailure>,
    pub degree_square_sum: Scalar,
    pub group_order: u64,
}

impl OrthogonalityReport {
    pub fn is_valid(&self) -> bool {
        self.row_failures.is_empty()
            && self.column_failures.is_empty()
            && self.degree_square_sum == Scalar::from_int(self.group_order as i64)
    }
}

impl fmt::Display for OrthogonalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.row_failures {
            writeln!(
                f,
                "first orthogonality fails: ({}, {}) = {} (expected {})",
                p.first, p.second, p.found, p.expected
            )?;
        }
        for p in &self.column_failures {
            writeln!(
                f,
                "second orthogonality fails: columns ({}, {}) give {} (expected {})",
                p.first, p.second, p.found, p.expected
            )?;
        }
        writeln!(
            f,
            "sum of squared degrees = {} (group order {})",
            self.degree_square_sum, self.group_order
        )
    }
}

fn parse_u64(token: &str, line: usize) -> Result<u64> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a positive integer, got `{}`", token)))
}

/// A class function bound to one specific table.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    table: Arc<CharacterTable>,
    values: Vec<Scalar>,
}

impl ClassFunction {
    pub fn new(table: Arc<CharacterTable>, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != table.class_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} classes",
                values.len(),
                table.class_count()
            )));
        }
        Ok(ClassFunction { table, values })
    }

    pub fn character(table: &Arc<CharacterTable>, index: usize) -> Self {
        ClassFunction {
            values: table.characters[index].values.clone(),
            table: Arc::clone(table),
        }
    }

    /// `Σ_j coeffs[j]·ψ_j` over the irreducible characters of the table.
    pub fn from_coefficients(table: &Arc<CharacterTable>, coeffs: &[Scalar]) -> Result<Self> {
        if coeffs.len() != table.characters.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} characters",
                coeffs.len(),
                table.characters.len()
            )));
        }
        let mut values = vec![Scalar::zero(); table.class_count()];
        for (c, ch) in coeffs.iter().zip(&table.characters) {
            if c.is_zero() {
                continue;
            }
            for (v, x) in values.iter_mut().zip(&ch.values) {
                *v += c * x;
            }
        }
        Ok(ClassFunction {
            table: Arc::clone(table),
            values,
        })
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Scalar {
        &self.values[class]
    }

    pub fn same_table(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
    }

    pub fn inner_product(&self, other: &ClassFunction) -> Result<Scalar> {
        inner_product(self, other)
    }
}

/// `(f, g) = Σ_k f(x_k)·ḡ(x_k)/|C(x_k)|`; both functions must share a table.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Scalar> {
    if !f.same_table(g) {
        return Err(Error::TableMismatch);
    }
    Ok(f.table.inner_product_values(&f.values, &g.values))
}

/// `degree ≡ residue (mod modulus)`, with the residue kept as the
/// representative that arose from the derivation.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Congruence {
    pub modulus: i64,
    pub residue: i64,
}

impl Congruence {
    pub fn new(residue: i64, modulus: i64) -> Self {
        Congruence { modulus, residue }
    }

    pub fn contains(&self, value: i64) -> bool {
        (value - self.residue).rem_euclid(self.modulus) == 0
    }

    pub fn canonical_residue(&self) -> i64 {
        self.residue.rem_euclid(self.modulus)
    }

    pub fn is_vacuous(&self) -> bool {
        self.modulus == 1
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "≡ {} (mod {})", self.residue, self.modulus)
    }
}

/// For a `p`-element class on which the character takes the integer
/// `value`, the degree satisfies `χ(1) ≡ value (mod p)`.
pub fn mod_p_degree_congruence(value: &Scalar, p: i64) -> Result<Congruence> {
    let v = value.expect_i64()?;
    Ok(Congruence::new(v.rem_euclid(p), p))
}

/// Sign convention attached to a row of a partial table.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RowSign {
    /// The row is a genuine character (possibly with a resolved sign ±1).
    Fixed(i8),
    /// The row equals `±param · values` for a free sign parameter.
    Param { param: usize, negated: bool },
    /// The row is `ε·χ` with the unknown sign folded into a signed degree.
    Absorbed,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Degree {
    Known(i64),
    Unknown(String),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Known(d) => write!(f, "{}", d),
            Degree::Unknown(s) => write!(f, "{}", s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnLabel {
    pub name: String,
    pub element_order: Option<u64>,
    pub centralizer_order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRow {
    pub label: String,
    pub degree: Degree,
    pub sign: RowSign,
    pub values: Vec<Scalar>,
}

/// Some columns of an ambient group's character table whose degrees may be
/// unknown symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColumnSet {
    pub table_of: String,
    pub columns: Vec<ColumnLabel>,
    pub rows: Vec<PartialRow>,
}

impl PartialColumnSet {
    pub fn new(table_of: impl Into<String>, columns: Vec<ColumnLabel>) -> Self {
        PartialColumnSet {
            table_of: table_of.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: PartialRow) -> Result<()> {
        if row.values.len() != self.columns.len() {
            return Err(Error::DimensionMismatch(format!(
                "row `{}` has {} values for {} columns",
                row.label,
                row.values.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn unknown_degrees(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter_map(|r| match &r.degree {
                Degree::Unknown(s) => Some(s.clone()),
                Degree::Known(_) => None,
            })
            .collect()
    }
}

impl fmt::Display for PartialColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        writeln!(f, "{:>10} | {:>6} | {}", "", "1", header.join("\t"))?;
        for r in &self.rows {
            // a negated parameter is folded into the displayed values
            let (sign, flip) = match &r.sign {
                RowSign::Fixed(1) | RowSign::Absorbed => (String::new(), false),
                RowSign::Fixed(s) => (format!("({})", s), false),
                RowSign::Param { param, negated } => (format!("s{}·", param + 1), *negated),
            };
            let vals: Vec<String> = r
                .values
                .iter()
                .map(|v| if flip { (-v).to_string() } else { v.to_string() })
                .collect();
            writeln!(
                f,
                "{:>10} | {:>6} | {}{}",
                r.label,
                r.degree.to_string(),
                sign,
                vals.join("\t")
            )?;
        }
        Ok(())
    }
}

/// Rational integer check used by the structure-constant invariant.
pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && *r >= Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    const TRIVIAL: &str = "group_order 1\nclass C1 order=1 centralizer=1\nchar one 1\n";

    const S3: &str = "name S3
group_order 6
class C1 order=1 centralizer=6
class C2 order=2 centralizer=2
class C3 order=3 centralizer=3
char triv 1 1 1
char sign 1 -1 1
char std 2 0 -1
";

    #[test]
    fn trivial_group_table() {
        let t = CharacterTable::parse(TRIVIAL).unwrap();
        assert_eq!(t.class_count(), 1);
        assert!(t.validate_orthogonality().is_valid());
        assert_eq!(t.structure_constant_a(0, 0, 0).unwrap(), rat_int(1));
        assert_eq!(t.structure_constant_alpha(0, 0, 0), Scalar::one());
        assert_eq!(t.frobenius_count(5), 1);
    }

    #[test]
    fn structural_errors() {
        let bad = "group_order 6\nclass C1 order=1 centralizer=6\nclass C2 order=2 centralizer=4\nclass C3 order=3 centralizer=3\n";
        assert!(matches!(CharacterTable::parse(bad), Err(Error::Structure(_))));
        let missing = "group_order 6\nclass C1 order=1 centralizer=6\nclass C2 order=2 centralizer=2\nclass C3 order=3 centralizer=3\nchar triv 1 1 1\n";
        assert!(matches!(CharacterTable::parse(missing), Err(Error::Structure(_))));
        let syntax = "group_order six\n";
        assert!(matches!(CharacterTable::parse(syntax), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn s3_structure_constants() {
        let t = CharacterTable::parse(S3).unwrap();
        assert!(t.validate_orthogonality().is_valid());
        // transposition * transposition lands on a 3-cycle in 3 ways
        assert_eq!(t.structure_constant_a(1, 1, 2).unwrap(), rat_int(3));
        assert_eq!(t.structure_constant_a(1, 1, 0).unwrap(), rat_int(3));
        assert_eq!(t.structure_constant_a(2, 2, 2).unwrap(), rat_int(1));
        assert_eq!(t.frobenius_count(2), 4);
        assert_eq!(t.frobenius_count(3), 3);
    }

    #[test]
    fn class_functions_refuse_mixed_tables() {
        let a = Arc::new(CharacterTable::parse(S3).unwrap());
        let b = Arc::new(CharacterTable::parse(S3).unwrap());
        let f = ClassFunction::character(&a, 0);
        let g = ClassFunction::character(&b, 0);
        assert_eq!(inner_product(&f, &g), Err(Error::TableMismatch));
        assert_eq!(inner_product(&f, &f).unwrap(), Scalar::one());
    }

    #[test]
    fn degree_congruences_mod_p() {
        assert_eq!(
            mod_p_degree_congruence(&Scalar::from_int(1), 3).unwrap(),
            Congruence::new(1, 3)
        );
        assert_eq!(
            mod_p_degree_congruence(&Scalar::from_int(-3), 3).unwrap(),
            Congruence::new(0, 3)
        );
        assert!(matches!(
            mod_p_degree_congruence(&Scalar::sqrt3(), 3),
            Err(Error::NonIntegerValue(_))
        ));
    }

    #[test]
    fn document_round_trip() {
        let t = CharacterTable::parse(S3).unwrap();
        assert_eq!(CharacterTable::parse(&t.to_document()).unwrap(), t);
    }
}
