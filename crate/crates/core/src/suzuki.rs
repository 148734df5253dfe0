//! Suzuki's method of special classes.
//!
//! Given a set `S` of classes of `H`, the class functions vanishing off `S`
//! form an `n`-dimensional space `W` (`n = |S|`). Inducing a basis `λ_i` of
//! `W` to an overgroup preserves inner products, so the Gram matrix of the
//! `μ_i = λ_i^G` is known and their decompositions into irreducibles of `G`
//! can be enumerated. Writing `γ_i = Σ_k C[i][k]·λ_k` for the column
//! functions `γ_i = Σ_j ψ_j(x_i)ψ_j`, the product `C·B` of `C` with the
//! decomposition matrix `B` gives the values of `G`'s characters on `S`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chartable::{CharacterTable, ClassFunction, ColumnLabel, Degree, PartialColumnSet, PartialRow, RowSign};
use crate::error::{Error, Result};
use crate::exact::{parse_scalar_at, rat_int, rational_to_i64, Rational, Scalar};
use crate::gram::{self, DecompositionLimits};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct SpecialClassSet {
    pub table: Arc<CharacterTable>,
    pub classes: Vec<usize>,
    /// Conditions on the overgroup that cannot be read off the table and are
    /// taken on trust.
    pub assumptions: Vec<String>,
}

impl SpecialClassSet {
    pub fn new(table: Arc<CharacterTable>, classes: Vec<usize>, assumptions: Vec<String>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Structure("special class set is empty".into()));
        }
        for (i, &c) in classes.iter().enumerate() {
            if c >= table.class_count() {
                return Err(Error::Structure(format!("class index {} out of range", c)));
            }
            if classes[..i].contains(&c) {
                return Err(Error::Structure(format!(
                    "class `{}` listed twice",
                    table.classes()[c].name
                )));
            }
        }
        Ok(SpecialClassSet {
            table,
            classes,
            assumptions,
        })
    }

    pub fn from_names(table: Arc<CharacterTable>, names: &[&str], assumptions: Vec<String>) -> Result<Self> {
        let classes = names
            .iter()
            .map(|n| table.class_index(n))
            .collect::<Result<Vec<_>>>()?;
        SpecialClassSet::new(table, classes, assumptions)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.classes
            .iter()
            .map(|&c| self.table.classes()[c].name.clone())
            .collect()
    }
}

/// A basis `λ_1..λ_n` of the class functions vanishing off the special
/// classes, stored as the `n × r` matrix `A` of ψ-coefficients.
#[derive(Clone, Debug)]
pub struct VanishingBasis {
    pub set: SpecialClassSet,
    pub coefficients: Matrix,
}

/// Canonical basis: reduced echelon form of the class indicators, each row
/// then scaled to a primitive integer vector when it is rational.
pub fn vanishing_basis(set: &SpecialClassSet) -> VanishingBasis {
    let t = &set.table;
    let r = t.characters().len();
    let mut d = Matrix::zeros(set.len(), r);
    for (i, &c) in set.classes.iter().enumerate() {
        let cent = rat_int(t.classes()[c].centralizer_order as i64);
        for j in 0..r {
            d[(i, j)] = t.value(j, c).scale(&cent.recip());
        }
    }
    let (red, pivots) = d.rref();
    let mut rows = Vec::with_capacity(pivots.len());
    for i in 0..pivots.len() {
        let mut row = red.row(i).to_vec();
        if row.iter().all(Scalar::is_rational) {
            let rats: Vec<Rational> = row.iter().map(|x| x.to_rational().expect("rational")).collect();
            let lcm = rats.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<num_bigint::BigInt> = rats
                .iter()
                .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
                .collect();
            let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
            let scale = Rational::new(lcm, g);
            row = row.iter().map(|x| x.scale(&scale)).collect();
        }
        rows.push(row);
    }
    VanishingBasis {
        set: set.clone(),
        coefficients: Matrix::from_rows(rows).expect("rows have equal length"),
    }
}

impl VanishingBasis {
    /// Wraps a user-supplied basis after checking that every function
    /// vanishes off the special classes and that there are `n` independent
    /// functions.
    pub fn from_coefficients(set: &SpecialClassSet, coefficients: Matrix) -> Result<Self> {
        let t = &set.table;
        if coefficients.cols() != t.characters().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients per function for {} characters",
                coefficients.cols(),
                t.characters().len()
            )));
        }
        if coefficients.rows() != set.len() {
            return Err(Error::SingularBasis(format!(
                "{} functions supplied for {} special classes",
                coefficients.rows(),
                set.len()
            )));
        }
        let basis = VanishingBasis {
            set: set.clone(),
            coefficients,
        };
        for (i, f) in basis.functions().iter().enumerate() {
            for (c, v) in f.values().iter().enumerate() {
                if !set.classes.contains(&c) && !v.is_zero() {
                    return Err(Error::SingularBasis(format!(
                        "function {} takes value {} on non-special class `{}`",
                        i + 1,
                        v,
                        t.classes()[c].name
                    )));
                }
            }
        }
        if basis.coefficients.rank() != set.len() {
            return Err(Error::SingularBasis("functions are linearly dependent".into()));
        }
        Ok(basis)
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.rows()
    }

    pub fn functions(&self) -> Vec<ClassFunction> {
        (0..self.dimension())
            .map(|i| {
                ClassFunction::from_coefficients(&self.set.table, self.coefficients.row(i))
                    .expect("coefficient count matches the table")
            })
            .collect()
    }

    /// `X` with `other.A = X · self.A`.
    pub fn change_of_basis_to(&self, other: &VanishingBasis) -> Result<Matrix> {
        self.coefficients.solve_left(&other.coefficients)
    }

    /// The matrix `C` with `γ_i = Σ_k C[i][k]·λ_k`, verified against
    /// `(C·A)[i][j] = ψ_j(x_i)`.
    pub fn gamma_expansion(&self) -> Result<Matrix> {
        let gamma = self.gamma_coefficients();
        let c = self.coefficients.solve_left(&gamma)?;
        if &c * &self.coefficients != gamma {
            return Err(Error::SingularBasis("γ expansion does not reproduce ψ_j(x_i)".into()));
        }
        Ok(c)
    }

    /// Rows `(ψ_j(x_i))_j` for each special class `x_i`.
    pub fn gamma_coefficients(&self) -> Matrix {
        let t = &self.set.table;
        Matrix::from_rows(
            self.set
                .classes
                .iter()
                .map(|&c| (0..t.characters().len()).map(|j| t.value(j, c).clone()).collect())
                .collect(),
        )
        .expect("rows have equal length")
    }

    /// `(λ_a, λ_b)_H`, which equals `(λ_a^G, λ_b^G)_G`.
    pub fn induced_gram(&self) -> Matrix {
        let fs = self.functions();
        let n = fs.len();
        let mut g = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                g[(a, b)] = fs[a].inner_product(&fs[b]).expect("same table");
            }
        }
        g
    }

    /// `(λ_i, 1_H)_H`, the multiplicity of the trivial character in `μ_i`.
    pub fn trivial_column(&self) -> Result<Vec<Scalar>> {
        let t = &self.set.table;
        let triv = t
            .trivial_character()
            .ok_or_else(|| Error::Structure("table has no trivial character".into()))?;
        let one = ClassFunction::character(t, triv);
        self.functions().iter().map(|f| f.inner_product(&one)).collect()
    }

    /// `λ_i(1)`.
    pub fn degrees(&self) -> Vec<Scalar> {
        self.functions().iter().map(|f| f.value(0).clone()).collect()
    }
}

/// `B = [trivial | columns]`: `μ_i = t_i·θ_1 + Σ_j columns[j][i]·θ_{j+2}`.
/// Columns are sign-normalised and in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decomposition {
    pub trivial: Vec<i64>,
    pub columns: Vec<Vec<i64>>,
}

impl Decomposition {
    pub fn rows(&self) -> usize {
        self.trivial.len()
    }

    /// `B` as an `n × s` matrix, trivial column first.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rows())
            .map(|i| {
                std::iter::once(self.trivial[i])
                    .chain(self.columns.iter().map(|c| c[i]))
                    .collect()
            })
            .collect()
    }

    /// `B·Bᵀ`.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let mut all = self.columns.clone();
        all.push(self.trivial.clone());
        gram::outer_sum(&all, self.rows())
    }

    pub fn canonical(&self) -> Decomposition {
        Decomposition {
            trivial: self.trivial.clone(),
            columns: gram::canonicalize(&self.columns),
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.matrix() {
            let cells: Vec<String> = row.iter().map(|x| format!("{:>3}", x)).collect();
            writeln!(f, "[{} ]", cells.join(""))?;
        }
        Ok(())
    }
}

/// All `B` with integer entries, `B·Bᵀ = gram` and first column `trivial`, up
/// to permuting and negating the non-trivial columns. The number of
/// non-trivial columns is bounded by the trace of the residual Gram matrix.
pub fn enumerate_decompositions(gram_matrix: &[Vec<i64>], trivial: &[i64]) -> Result<Vec<Decomposition>> {
    let n = gram_matrix.len();
    if trivial.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "trivial column has {} entries for a {}x{} Gram matrix",
            trivial.len(),
            n,
            n
        )));
    }
    let residual = gram::residual(gram_matrix, trivial);
    let trace: i64 = (0..n).map(|i| residual[i][i]).sum();
    let sols = gram::decompose(
        &residual,
        DecompositionLimits {
            max_terms: trace.max(0) as usize,
        },
    )?;
    if sols.is_empty() {
        return Err(Error::InfeasibleGram("no integer decomposition exists".into()));
    }
    Ok(sols
        .into_iter()
        .map(|columns| Decomposition {
            trivial: trivial.to_vec(),
            columns,
        })
        .collect())
}

/// `constant + Σ coefficient·s_param·d_column = 0`, from a row whose
/// induced function has degree zero.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeRelation {
    pub row: usize,
    pub constant: i64,
    /// `(column, coefficient, sign parameter)`; columns index the family's
    /// shared columns.
    pub terms: Vec<(usize, i64, usize)>,
}

impl DegreeRelation {
    pub fn render(&self, column_names: &[String], param_names: &[String]) -> String {
        let mut out = String::new();
        if self.constant != 0 {
            out.push_str(&self.constant.to_string());
        }
        for &(col, coef, param) in &self.terms {
            let mag = coef.abs();
            let sign = if coef < 0 { "-" } else { "+" };
            if out.is_empty() {
                if coef < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {} ", sign));
            }
            if mag != 1 {
                out.push_str(&format!("{}·", mag));
            }
            out.push_str(&format!("{}·d{}", param_names[param], column_names[col]));
        }
        out.push_str(" = 0");
        out
    }
}

/// Decompositions that agree outside the open row's private columns.
///
/// Columns supported only on the open row do not enter any structure
/// constant whose classes include one where the open row has zero weight,
/// so only their total norm matters. Each family carries one free sign per
/// orbit of columns linked by two-term degree relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFamily {
    pub trivial: Vec<i64>,
    /// Columns with support outside the open row.
    pub shared: Vec<Vec<i64>>,
    pub open_row: Option<usize>,
    /// Norm carried by columns private to the open row.
    pub private_norm: i64,
    /// Indices into the decomposition list of the members.
    pub members: Vec<usize>,
    /// Sign parameter of each shared column, as `(orbit, negated)`.
    pub signs: Vec<(usize, bool)>,
    pub orbit_count: usize,
    pub relations: Vec<DegreeRelation>,
}

impl CandidateFamily {
    pub fn column_names(&self) -> Vec<String> {
        (0..self.shared.len()).map(|j| format!("{}", j + 2)).collect()
    }

    pub fn param_names(&self) -> Vec<String> {
        (0..self.orbit_count).map(|k| format!("s{}", k + 1)).collect()
    }

    /// `ε_j`, the sign of shared column `j` under the given parameter values.
    pub fn column_sign(&self, j: usize, params: &[i64]) -> i64 {
        let (orbit, neg) = self.signs[j];
        if neg {
            -params[orbit]
        } else {
            params[orbit]
        }
    }

    /// The coefficient vector `μ_i = Σ b_ij θ_j` for the open row, shared
    /// columns only, rendered with sign parameters.
    pub fn describe(&self) -> String {
        let names = self.param_names();
        let mut lines = Vec::new();
        for i in 0..self.trivial.len() {
            let mut terms: Vec<(i64, String)> = Vec::new();
            if self.trivial[i] != 0 {
                terms.push((self.trivial[i], "θ1".into()));
            }
            for (j, col) in self.shared.iter().enumerate() {
                if col[i] == 0 {
                    continue;
                }
                let (orbit, neg) = self.signs[j];
                let c = if neg { -col[i] } else { col[i] };
                terms.push((c, format!("{}·θ{}", names[orbit], j + 2)));
            }
            let mut out = String::new();
            for (k, (c, t)) in terms.iter().enumerate() {
                let sign = match (k, *c < 0) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => " - ",
                    (_, false) => " + ",
                };
                let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
                out.push_str(&format!("{}{}{}", sign, mag, t));
            }
            if Some(i) == self.open_row && self.private_norm > 0 {
                out.push_str(&format!(" + (private columns of norm {})", self.private_norm));
            }
            lines.push(format!("μ{} = {}", i + 1, out));
        }
        lines.join("\n")
    }
}

/// Groups decompositions into families and derives sign orbits and degree
/// relations. `degrees[i]` is `μ_i(1)` when known (only rows with a known
/// degree give relations).
pub fn group_families(
    decompositions: &[Decomposition],
    open_row: Option<usize>,
    degrees: &[Option<i64>],
) -> Vec<CandidateFamily> {
    let mut grouped: BTreeMap<(Vec<i64>, Vec<Vec<i64>>), (i64, Vec<usize>)> = BTreeMap::new();
    for (idx, d) in decompositions.iter().enumerate() {
        let (mut shared, mut private_norm) = (Vec::new(), 0i64);
        for col in &d.columns {
            let private = open_row.is_some_and(|o| col.iter().enumerate().all(|(i, &x)| i == o || x == 0));
            if private {
                private_norm += col.iter().map(|x| x * x).sum::<i64>();
            } else {
                shared.push(col.clone());
            }
        }
        let entry = grouped
            .entry((d.trivial.clone(), shared))
            .or_insert((private_norm, Vec::new()));
        entry.1.push(idx);
    }
    let mut families: Vec<CandidateFamily> = grouped
        .into_iter()
        .map(|((trivial, shared), (private_norm, members))| {
            build_family(trivial, shared, open_row, private_norm, members, degrees)
        })
        .collect();
    families.sort_by(|a, b| b.shared.cmp(&a.shared));
    families
}

fn build_family(
    trivial: Vec<i64>,
    shared: Vec<Vec<i64>>,
    open_row: Option<usize>,
    private_norm: i64,
    members: Vec<usize>,
    degrees: &[Option<i64>],
) -> CandidateFamily {
    let m = shared.len();
    // union-find carrying the relative sign to the parent
    let mut parent: Vec<usize> = (0..m).collect();
    let mut flip = vec![false; m];
    fn find(parent: &mut Vec<usize>, flip: &mut Vec<bool>, x: usize) -> (usize, bool) {
        if parent[x] == x {
            return (x, false);
        }
        let (root, f) = find(parent, flip, parent[x]);
        parent[x] = root;
        flip[x] ^= f;
        (root, flip[x])
    }
    let rows = trivial.len();
    for i in 0..rows {
        if Some(i) == open_row {
            continue;
        }
        let Some(deg) = degrees[i] else { continue };
        let support: Vec<usize> = (0..m).filter(|&j| shared[j][i] != 0).collect();
        if support.len() != 2 {
            continue;
        }
        let (a, b) = (support[0], support[1]);
        let (ba, bb) = (shared[a][i], shared[b][i]);
        let c = deg - trivial[i];
        // both contributions with the same sign σ need σ·c ≥ |b_a| + |b_b|
        let same_sign_possible = c.abs() >= ba.abs() + bb.abs();
        if same_sign_possible {
            continue;
        }
        // opposite signed contributions: ε_a·b_a and ε_b·b_b differ in sign
        let relative = (ba > 0) == (bb > 0);
        let (ra, fa) = find(&mut parent, &mut flip, a);
        let (rb, fb) = find(&mut parent, &mut flip, b);
        if ra != rb {
            parent[rb] = ra;
            flip[rb] = fa ^ fb ^ relative;
        }
    }
    let mut orbit_of_root = BTreeMap::new();
    let mut signs = Vec::with_capacity(m);
    // the first column of each orbit carries the parameter with sign +
    let mut root_flip = BTreeMap::new();
    for j in 0..m {
        let (root, f) = find(&mut parent, &mut flip, j);
        let next = orbit_of_root.len();
        let orbit = *orbit_of_root.entry(root).or_insert(next);
        let base = *root_flip.entry(root).or_insert(f);
        signs.push((orbit, f ^ base));
    }
    let orbit_count = orbit_of_root.len();
    let mut relations = Vec::new();
    for i in 0..rows {
        if Some(i) == open_row {
            continue;
        }
        let Some(deg) = degrees[i] else { continue };
        let terms: Vec<(usize, i64, usize)> = (0..m)
            .filter(|&j| shared[j][i] != 0)
            .map(|j| {
                let (orbit, neg) = signs[j];
                let coef = if neg { -shared[j][i] } else { shared[j][i] };
                (j, coef, orbit)
            })
            .collect();
        relations.push(DegreeRelation {
            row: i,
            constant: trivial[i] - deg,
            terms,
        });
    }
    CandidateFamily {
        trivial,
        shared,
        open_row,
        private_norm,
        members,
        signs,
        orbit_count,
        relations,
    }
}

/// `(C·B)ᵀ`: the values of the family's characters on the special classes,
/// one row per column of `B` (trivial first), signs kept symbolic.
pub fn reconstruct_partial_table(
    set: &SpecialClassSet,
    c: &Matrix,
    family: &CandidateFamily,
) -> Result<PartialColumnSet> {
    let n = set.len();
    if c.rows() != n || c.cols() != family.trivial.len() {
        return Err(Error::DimensionMismatch(format!(
            "C is {}x{} but the family has {} rows",
            c.rows(),
            c.cols(),
            family.trivial.len()
        )));
    }
    let t = &set.table;
    let columns = set
        .classes
        .iter()
        .map(|&k| ColumnLabel {
            name: t.classes()[k].name.clone(),
            element_order: Some(t.classes()[k].element_order),
            centralizer_order: Some(t.classes()[k].centralizer_order),
        })
        .collect();
    let mut out = PartialColumnSet::new("G", columns);
    let apply = |v: &[i64]| -> Vec<Scalar> {
        (0..n)
            .map(|i| {
                (0..v.len())
                    .map(|k| &c[(i, k)] * &Scalar::from_int(v[k]))
                    .sum()
            })
            .collect()
    };
    out.push_row(PartialRow {
        label: "θ1".into(),
        degree: Degree::Known(1),
        sign: RowSign::Fixed(1),
        values: apply(&family.trivial),
    })?;
    for (j, col) in family.shared.iter().enumerate() {
        let (param, negated) = family.signs[j];
        out.push_row(PartialRow {
            label: format!("θ{}", j + 2),
            degree: Degree::Unknown(format!("d{}", j + 2)),
            sign: RowSign::Param { param, negated },
            values: apply(col),
        })?;
    }
    Ok(out)
}

/// Right-hand side of a structure-constant equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaTarget {
    Constant(Rational),
    /// `numerator / |G|`.
    OverGroupOrder(Rational),
}

/// `α_{abc} = target` with `a, b, c` positions in the special class list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaEquation {
    pub classes: [usize; 3],
    pub labels: [String; 3],
    pub target: AlphaTarget,
}

#[derive(Clone, Debug)]
pub struct EliminationConfig {
    pub equations: Vec<AlphaEquation>,
    pub order_ratio_bound: i64,
    pub subgroup_order: u64,
}

/// Affine form `Σ coeffs[v]·d_v + constant` in the free degree unknowns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Affine {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl Affine {
    fn constant(m: usize, c: Rational) -> Self {
        Affine {
            coeffs: vec![Rational::zero(); m],
            constant: c,
        }
    }

    fn variables(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&v| !self.coeffs[v].is_zero()).collect()
    }

    fn eval_at(&self, var: usize, x: &Rational) -> Affine {
        let mut out = self.clone();
        out.constant += &out.coeffs[var] * x;
        out.coeffs[var] = Rational::zero();
        out
    }

    fn as_constant(&self) -> Option<&Rational> {
        self.coeffs.iter().all(Zero::is_zero).then_some(&self.constant)
    }
}

/// Polynomial with rational coefficients, lowest degree first.
fn poly_mul_linear(p: &[Rational], a: &Rational, b: &Rational) -> Vec<Rational> {
    // p · (a·x + b)
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k] += c * b;
        out[k + 1] += c * a;
    }
    out
}

fn poly_add(p: &mut Vec<Rational>, q: &[Rational]) {
    if q.len() > p.len() {
        p.resize(q.len(), Rational::zero());
    }
    for (k, c) in q.iter().enumerate() {
        p[k] += c;
    }
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive_integer_poly(p: &[Rational]) -> Vec<i64> {
    let mut p = p.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return Vec::new();
    }
    let lcm = p.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().expect("non-empty").is_negative() {
        g = -g;
    }
    ints.iter()
        .map(|c| {
            let q = c / &g;
            i64::try_from(q).expect("polynomial coefficients fit in 64 bits")
        })
        .collect()
}

fn poly_eval(p: &[i64], x: i64) -> i128 {
    p.iter().rev().fold(0i128, |acc, &c| acc * x as i128 + c as i128)
}

/// Positive integer roots of an integer polynomial.
fn positive_integer_roots(p: &[i64]) -> Vec<i64> {
    if p.is_empty() {
        return Vec::new();
    }
    // strip factors of x, whose root 0 is not positive
    let start = p.iter().position(|&c| c != 0).expect("non-zero polynomial");
    let q = &p[start..];
    if q.len() == 1 {
        return Vec::new();
    }
    let a0 = q[0].unsigned_abs();
    let mut roots = Vec::new();
    let mut d = 1u64;
    while d * d <= a0 {
        if a0.is_multiple_of(d) {
            for r in [d, a0 / d] {
                let r = r as i64;
                if poly_eval(q, r) == 0 && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        d += 1;
    }
    roots.sort_unstable();
    roots
}

pub fn render_poly(p: &[i64], var: &str) -> String {
    let mut out = String::new();
    for k in (0..p.len()).rev() {
        let c = p[k];
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let body = match k {
            0 => mag.to_string(),
            1 => format!("{}{}", if mag == 1 { String::new() } else { mag.to_string() }, var),
            _ => format!("{}{}^{}", if mag == 1 { String::new() } else { mag.to_string() }, var, k),
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Result of solving one `α = constant` equation in a single unknown.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RootStep {
    pub equation: String,
    pub variable: String,
    /// Primitive integer polynomial, lowest degree first.
    pub polynomial: Vec<i64>,
    pub rendered: String,
    pub roots: Vec<i64>,
}

/// Outcome of the `α = T/|G|` equation once the other unknowns are fixed.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct OrderStep {
    pub equation: String,
    /// `α = p + q/d` with `q = q_sym · s` for the sign parameter `s` of `d`.
    pub variable: Option<String>,
    pub constant: String,
    pub coefficient: String,
    /// `|G| = order_numerator · d / (d·den_coef + den_const)`, reduced.
    pub order_formula: String,
    /// Normalised bound `lhs · d ≤ rhs`, with rhs written in terms of the sign.
    pub bound: Option<(i64, i64)>,
    pub bound_rendered: String,
    pub feasible_range: Option<(i64, Option<i64>)>,
    pub eliminated: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RootBranch {
    pub degrees: Vec<(String, i64)>,
    pub order: OrderStep,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SignBranch {
    pub signs: Vec<(String, i64)>,
    pub relations_consistent: bool,
    pub root_steps: Vec<RootStep>,
    pub outcomes: Vec<RootBranch>,
    pub eliminated: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EliminationReport {
    pub branches: Vec<SignBranch>,
    pub eliminated: bool,
}

impl EliminationReport {
    /// Pairs `(d_a, d_b)` of the first two shared columns over surviving
    /// phase-one roots.
    pub fn root_pairs(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = self
            .branches
            .iter()
            .flat_map(|b| b.outcomes.iter())
            .filter_map(|o| {
                let a = o.degrees.iter().find(|(n, _)| n == "d2")?.1;
                let b = o.degrees.iter().find(|(n, _)| n == "d3")?.1;
                Some((a, b))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn scalar_rational(s: &Scalar) -> Result<Rational> {
    s.to_rational()
        .ok_or_else(|| Error::NonIntegerValue(format!("irrational value {} in C", s)))
}

/// Runs the structure-constant elimination for every sign branch of a
/// family: the `α = 0` equations fix the degrees tied by the closed
/// relations, then `α = T/|G|` is solved for `|G|` and tested against
/// `|G| ≥ bound·|H|`.
pub fn case1_eliminate(
    family: &CandidateFamily,
    c: &Matrix,
    config: &EliminationConfig,
) -> Result<EliminationReport> {
    let m = family.shared.len();
    let n = family.trivial.len();
    // values of each shared column on the special classes: C·v
    let values: Vec<Vec<Rational>> = family
        .shared
        .iter()
        .map(|v| {
            (0..c.rows())
                .map(|i| {
                    (0..n).try_fold(Rational::zero(), |acc, k| {
                        Ok::<_, Error>(acc + scalar_rational(&c[(i, k)])? * rat_int(v[k]))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let trivial_values: Vec<Rational> = (0..c.rows())
        .map(|i| {
            (0..n).try_fold(Rational::zero(), |acc, k| {
                Ok::<_, Error>(acc + scalar_rational(&c[(i, k)])? * rat_int(family.trivial[k]))
            })
        })
        .collect::<Result<_>>()?;
    if let Some(open) = family.open_row {
        if family.private_norm > 0 {
            for eq in &config.equations {
                let killed = eq
                    .classes
                    .iter()
                    .any(|&k| scalar_rational(&c[(k, open)]).map(|x| x.is_zero()).unwrap_or(false));
                if !killed {
                    return Err(Error::UnderdeterminedSystem(format!(
                        "columns private to row {} do not vanish in α_{}{}{}",
                        open + 1,
                        eq.labels[0],
                        eq.labels[1],
                        eq.labels[2]
                    )));
                }
            }
        }
    }
    let names = family.param_names();
    let mut branches = Vec::new();
    for mask in 0..(1u32 << family.orbit_count) {
        let params: Vec<i64> = (0..family.orbit_count)
            .map(|k| if mask >> k & 1 == 1 { -1 } else { 1 })
            .collect();
        let signs: Vec<(String, i64)> = names.iter().cloned().zip(params.iter().copied()).collect();
        let eps: Vec<i64> = (0..m).map(|j| family.column_sign(j, &params)).collect();
        branches.push(eliminate_branch(family, config, &values, &trivial_values, &eps, signs)?);
    }
    let eliminated = branches.iter().all(|b| b.eliminated);
    Ok(EliminationReport { branches, eliminated })
}

/// Solves the closed degree relations; free unknowns are the earliest
/// columns.
fn solve_relations(family: &CandidateFamily, eps: &[i64]) -> Option<Vec<Affine>> {
    let m = family.shared.len();
    // columns in reverse order so pivots land on the later columns
    let rows: Vec<Vec<Scalar>> = family
        .relations
        .iter()
        .map(|rel| {
            let mut row = vec![Scalar::zero(); m + 1];
            for &(j, _, _) in &rel.terms {
                row[m - 1 - j] = Scalar::from_int(eps[j] * family.shared[j][rel.row]);
            }
            row[m] = Scalar::from_int(-rel.constant);
            row
        })
        .collect();
    if rows.is_empty() {
        return Some(
            (0..m)
                .map(|j| {
                    let mut a = Affine::constant(m, Rational::zero());
                    a.coeffs[j] = Rational::one();
                    a
                })
                .collect(),
        );
    }
    let (red, pivots) = Matrix::from_rows(rows).expect("equal rows").rref();
    if pivots.contains(&m) {
        return None;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&p| m - 1 - p).collect();
    let mut forms: Vec<Affine> = (0..m)
        .map(|j| {
            let mut a = Affine::constant(m, Rational::zero());
            a.coeffs[j] = Rational::one();
            a
        })
        .collect();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        let mut a = Affine::constant(m, red[(r, m)].to_rational().expect("rational"));
        for j in 0..m {
            if pivot_cols.contains(&j) {
                continue;
            }
            let coef = red[(r, m - 1 - j)].to_rational().expect("rational");
            a.coeffs[j] = -coef;
        }
        forms[pc] = a;
    }
    Some(forms)
}

fn alpha_terms(
    eq: &AlphaEquation,
    values: &[Vec<Rational>],
    trivial_values: &[Rational],
    eps: &[i64],
    forms: &[Affine],
) -> (Rational, BTreeMap<Affine, Rational>) {
    let mut constant: Rational = eq.classes.iter().map(|&k| trivial_values[k].clone()).product();
    let mut groups: BTreeMap<Affine, Rational> = BTreeMap::new();
    for (j, vals) in values.iter().enumerate() {
        let prod: Rational = eq.classes.iter().map(|&k| vals[k].clone()).product();
        if prod.is_zero() {
            continue;
        }
        // (ε v)(a)(ε v)(b)(ε v)(c) = ε·v(a)v(b)v(c)
        let w = prod * rat_int(eps[j]);
        if let Some(k) = forms[j].as_constant() {
            constant += w / k;
        } else {
            *groups.entry(forms[j].clone()).or_insert_with(Rational::zero) += w;
        }
    }
    groups.retain(|_, w| !w.is_zero());
    (constant, groups)
}

fn eliminate_branch(
    family: &CandidateFamily,
    config: &EliminationConfig,
    values: &[Vec<Rational>],
    trivial_values: &[Rational],
    eps: &[i64],
    signs: Vec<(String, i64)>,
) -> Result<SignBranch> {
    let m = family.shared.len();
    let mut branch = SignBranch {
        signs,
        relations_consistent: true,
        root_steps: Vec::new(),
        outcomes: Vec::new(),
        eliminated: true,
        note: String::new(),
    };
    let Some(forms) = solve_relations(family, eps) else {
        branch.relations_consistent = false;
        branch.note = "degree relations are inconsistent".into();
        return Ok(branch);
    };
    let eq_label = |eq: &AlphaEquation| format!("α({},{},{})", eq.labels[0], eq.labels[1], eq.labels[2]);
    // each state is a set of affine forms with some unknowns fixed
    let mut states = vec![forms];
    for eq in config.equations.iter().filter(|e| matches!(e.target, AlphaTarget::Constant(_))) {
        let AlphaTarget::Constant(target) = &eq.target else { unreachable!() };
        let mut next = Vec::new();
        for forms in states {
            if !degrees_admissible(&forms) {
                continue;
            }
            let (constant, groups) = alpha_terms(eq, values, trivial_values, eps, &forms);
            let constant = constant - target;
            let vars: Vec<usize> = {
                let mut v: Vec<usize> = groups.keys().flat_map(Affine::variables).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            match vars.len() {
                0 => {
                    if constant.is_zero() {
                        next.push(forms);
                    }
                }
                1 => {
                    let x = vars[0];
                    let dens: Vec<&Affine> = groups.keys().collect();
                    // constant·Π D + Σ w_g Π_{h≠g} D_h
                    let mut num = vec![constant.clone()];
                    for d in &dens {
                        num = poly_mul_linear(&num, &d.coeffs[x], &d.constant);
                    }
                    for (g, (_, w)) in groups.iter().enumerate() {
                        let mut term = vec![w.clone()];
                        for (h, d) in dens.iter().enumerate() {
                            if h != g {
                                term = poly_mul_linear(&term, &d.coeffs[x], &d.constant);
                            }
                        }
                        poly_add(&mut num, &term);
                    }
                    let poly = primitive_integer_poly(&num);
                    let var_name = format!("d{}", x + 2);
                    let roots: Vec<i64> = positive_integer_roots(&poly)
                        .into_iter()
                        .filter(|&r| {
                            let fixed: Vec<Affine> = forms.iter().map(|f| f.eval_at(x, &rat_int(r))).collect();
                            degrees_admissible(&fixed)
                        })
                        .collect();
                    branch.root_steps.push(RootStep {
                        equation: format!("{} = {}", eq_label(eq), target),
                        rendered: format!("{} = 0", render_poly(&poly, &var_name)),
                        variable: var_name,
                        polynomial: poly,
                        roots: roots.clone(),
                    });
                    for r in roots {
                        next.push(forms.iter().map(|f| f.eval_at(x, &rat_int(r))).collect());
                    }
                }
                _ => {
                    return Err(Error::UnderdeterminedSystem(format!(
                        "{} involves {} independent degrees",
                        eq_label(eq),
                        vars.len()
                    )))
                }
            }
        }
        states = next;
    }
    if states.is_empty() {
        branch.note = "no admissible positive integer degrees".into();
        return Ok(branch);
    }
    let order_eq = config
        .equations
        .iter()
        .find(|e| matches!(e.target, AlphaTarget::OverGroupOrder(_)))
        .ok_or_else(|| Error::UnderdeterminedSystem("no α = T/|G| equation configured".into()))?;
    let AlphaTarget::OverGroupOrder(numer) = &order_eq.target else { unreachable!() };
    for forms in states {
        let degrees: Vec<(String, i64)> = forms
            .iter()
            .enumerate()
            .filter_map(|(j, f)| f.as_constant().map(|c| (format!("d{}", j + 2), rational_to_i64(c).unwrap_or(0))))
            .collect();
        let (p, groups) = alpha_terms(order_eq, values, trivial_values, eps, &forms);
        let order = order_step(order_eq, &eq_label(order_eq), numer, p, &groups, &forms, eps, family, config, m)?;
        if !order.eliminated {
            branch.eliminated = false;
        }
        branch.outcomes.push(RootBranch { degrees, order });
    }
    Ok(branch)
}

fn degrees_admissible(forms: &[Affine]) -> bool {
    forms.iter().all(|f| match f.as_constant() {
        Some(c) => c.is_integer() && *c >= Rational::one(),
        None => true,
    })
}

fn ceil_div(a: &Rational) -> i64 {
    rational_to_i64(&a.ceil()).expect("bound fits")
}

fn floor_div(a: &Rational) -> i64 {
    rational_to_i64(&a.floor()).expect("bound fits")
}

#[allow(clippy::too_many_arguments)]
fn order_step(
    eq: &AlphaEquation,
    label: &str,
    numer: &Rational,
    p: Rational,
    groups: &BTreeMap<Affine, Rational>,
    forms: &[Affine],
    eps: &[i64],
    family: &CandidateFamily,
    config: &EliminationConfig,
    m: usize,
) -> Result<OrderStep> {
    let bound = rat_int(config.order_ratio_bound) * rat_int(config.subgroup_order as i64);
    let equation = format!("{} = {}/|G|", label, numer);
    let _ = eq;
    if groups.is_empty() {
        // α is a constant: |G| = T/α
        let (eliminated, reason) = if !p.is_positive() {
            (true, format!("α = {} is not positive", p))
        } else if numer / &p < bound {
            (true, format!("|G| = {} < {}", numer / &p, bound))
        } else {
            (false, format!("|G| = {} meets the bound", numer / &p))
        };
        return Ok(OrderStep {
            equation,
            variable: None,
            constant: p.to_string(),
            coefficient: "0".into(),
            order_formula: format!("|G| = {}", if p.is_zero() { "∞".into() } else { (numer / &p).to_string() }),
            bound: None,
            bound_rendered: String::new(),
            feasible_range: None,
            eliminated,
            reason,
        });
    }
    if groups.len() != 1 {
        return Err(Error::UnderdeterminedSystem(format!(
            "{} has {} distinct degree denominators",
            label,
            groups.len()
        )));
    }
    let (den, q) = groups.iter().next().expect("one group");
    let vars = den.variables();
    if vars.len() != 1 || !den.coeffs[vars[0]].is_one() || !den.constant.is_zero() {
        return Err(Error::UnderdeterminedSystem(format!(
            "{} is not of the form p + q/d",
            label
        )));
    }
    let x = vars[0];
    let var = format!("d{}", x + 2);
    let sign = eps[x];
    let param = &family.param_names()[family.signs[x].0];
    let param_sign = if family.signs[x].1 { -sign } else { sign };
    let q_sym = q * rat_int(param_sign);
    // |G| = T·d / (p·d + q); reduce by the content of (T, p, q)
    let order_formula = {
        let l = [numer, &p, q].iter().fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let li = |r: &Rational| (r * Rational::from_integer(l.clone())).to_integer();
        let (tn, pn, qn) = (li(numer), li(&p), li(&q_sym));
        let g = pn.gcd(&qn);
        let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
        let g2 = tn.gcd(&g);
        format!(
            "|G| = {}·{} / ({}{} {} {}·{})",
            &tn / &g2,
            var,
            if (&pn / &g2).is_one() { String::new() } else { (&pn / &g2).to_string() },
            var,
            if qn.is_negative() { "-" } else { "+" },
            (&qn / &g2).abs(),
            param
        )
    };
    // |G|/|H| ≥ B with p·d + q > 0:  (T − B|H|p)·d ≥ B|H|q
    let a = numer - &bound * &p;
    let c = &bound * q;
    let c_sym = &bound * &q_sym;
    let (lhs, rhs) = {
        let l = [&a, &c_sym].iter().fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ai = (&a * Rational::from_integer(l.clone())).to_integer();
        let ci = (&c_sym * Rational::from_integer(l)).to_integer();
        let g = ai.gcd(&ci);
        let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
        let (ai, ci) = (&ai / &g, &ci / &g);
        // a·d ≥ c  ⇔  (−a)·d ≤ −c
        let (l2, r2) = if ai.is_negative() { (-ai, -ci) } else { (ai, ci) };
        (
            i64::try_from(l2).expect("fits"),
            i64::try_from(r2).expect("fits"),
        )
    };
    let lead = if lhs == 1 { String::new() } else { lhs.to_string() };
    let bound_rendered = if a.is_negative() {
        format!("{}{} ≤ {}·{}", lead, var, rhs, param)
    } else {
        format!("{}{} ≥ {}·{}", lead, var, rhs, param)
    };
    // integer d with d ≥ 1, p·d + q > 0 and a·d ≥ c
    let mut lo: i64 = 1;
    let mut hi: Option<i64> = None;
    let mut empty = false;
    let tighten_hi = |hi: &mut Option<i64>, v: i64| *hi = Some(hi.map_or(v, |h| h.min(v)));
    if p.is_positive() {
        lo = lo.max(floor_div(&(-q / &p)) + 1);
    } else if p.is_negative() {
        tighten_hi(&mut hi, ceil_div(&(-q / &p)) - 1);
    } else if !q.is_positive() {
        empty = true;
    }
    if a.is_positive() {
        lo = lo.max(ceil_div(&(&c / &a)));
    } else if a.is_negative() {
        tighten_hi(&mut hi, floor_div(&(&c / &a)));
    } else if c.is_positive() {
        empty = true;
    }
    // other degrees expressed through d must stay positive integers
    for f in forms {
        if f.as_constant().is_some() || f.variables() != vec![x] {
            continue;
        }
        let k = &f.coeffs[x];
        let need = (Rational::one() - &f.constant) / k;
        if k.is_positive() {
            lo = lo.max(ceil_div(&need));
        } else {
            tighten_hi(&mut hi, floor_div(&need));
        }
    }
    if hi.is_some_and(|h| h < lo) {
        empty = true;
    }
    let _ = m;
    let (eliminated, reason, feasible_range) = if empty {
        let mut why = format!(
            "no integer {} ≥ 1 satisfies {} with {} > 0",
            var,
            bound_rendered.replace(param.as_str(), &format!("({})", param_sign)),
            format!("{}·{} + {}", p, var, q)
        );
        why = why.replace("+ -", "- ");
        (true, why, None)
    } else {
        (
            false,
            format!(
                "{} ∈ [{}, {}] is consistent with |G| ≥ {}·|H|",
                var,
                lo,
                hi.map_or("∞".to_string(), |h| h.to_string()),
                config.order_ratio_bound
            ),
            Some((lo, hi)),
        )
    };
    Ok(OrderStep {
        equation,
        variable: Some(var),
        constant: p.to_string(),
        coefficient: format!("{}·{}", q_sym, param),
        order_formula,
        bound: Some((lhs, rhs)),
        bound_rendered,
        feasible_range,
        eliminated,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "name S3
group_order 6
class C1 order=1 centralizer=6
class C2 order=2 centralizer=2
class C3 order=3 centralizer=3
char triv 1 1 1
char sign 1 -1 1
char std 2 0 -1
";

    fn s3() -> Arc<CharacterTable> {
        Arc::new(CharacterTable::parse(S3).unwrap())
    }

    #[test]
    fn single_class_basis() {
        let set = SpecialClassSet::from_names(s3(), &["C3"], Vec::new()).unwrap();
        let vb = vanishing_basis(&set);
        assert_eq!(vb.dimension(), 1);
        for f in vb.functions() {
            assert!(f.value(0).is_zero());
            assert!(f.value(1).is_zero());
        }
        let c = vb.gamma_expansion().unwrap();
        assert_eq!((c.rows(), c.cols()), (1, 1));
    }

    #[test]
    fn whole_space_basis() {
        let set = SpecialClassSet::from_names(s3(), &["C1", "C2", "C3"], Vec::new()).unwrap();
        let vb = vanishing_basis(&set);
        assert_eq!(vb.dimension(), 3);
        assert!(vb.induced_gram().is_symmetric());
    }

    #[test]
    fn decompositions_of_small_grams() {
        let one = enumerate_decompositions(&[vec![1]], &[1]).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].columns.is_empty());
        let two = enumerate_decompositions(&[vec![2]], &[0]).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].columns, vec![vec![1], vec![1]]);
        assert!(matches!(
            enumerate_decompositions(&[vec![0]], &[1]),
            Err(Error::InfeasibleGram(_))
        ));
    }

    #[test]
    fn polynomial_roots() {
        // x² − 2x + 1
        assert_eq!(positive_integer_roots(&[1, -2, 1]), vec![1]);
        // x² − 8x + 16
        assert_eq!(positive_integer_roots(&[16, -8, 1]), vec![4]);
        // x² + 2x + 1 has only the root −1
        assert!(positive_integer_roots(&[1, 2, 1]).is_empty());
        assert_eq!(render_poly(&[1, -2, 1], "d"), "d^2 - 2d + 1");
    }

    #[test]
    fn primitive_polynomial_normalisation() {
        let p = vec![rat_int(-2), rat_int(4), rat_int(-2)];
        assert_eq!(primitive_integer_poly(&p), vec![1, -2, 1]);
    }
}

/// A special-class pipeline read from a configuration document.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub set: SpecialClassSet,
    /// Explicit basis as ψ-coefficient rows; the canonical basis otherwise.
    pub basis: Option<Matrix>,
    pub open_row: Option<usize>,
    pub elimination: EliminationConfig,
}

impl PipelineConfig {
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text, path.parent().unwrap_or(std::path::Path::new("")))
    }

    /// Keywords: `table`, `special`, `assume`, `basis`, `open_row`, `let`,
    /// `alpha`, `order_ratio_bound`.
    pub fn parse(text: &str, base: &std::path::Path) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut table: Option<Arc<CharacterTable>> = None;
        let mut special: Vec<String> = Vec::new();
        let mut assumptions = Vec::new();
        let mut basis_rows: Vec<(usize, String)> = Vec::new();
        let mut open_row = None;
        let mut bindings: BTreeMap<String, String> = BTreeMap::new();
        let mut alphas: Vec<(usize, Vec<String>, String)> = Vec::new();
        let mut bound = None;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "table" => table = Some(Arc::new(CharacterTable::load(base.join(rest))?)),
                "special" => special = rest.split_whitespace().map(str::to_string).collect(),
                "assume" => assumptions.push(rest.to_string()),
                "basis" => basis_rows.push((ln, rest.to_string())),
                "open_row" => {
                    let r: usize = rest
                        .parse()
                        .map_err(|_| perr(ln, format!("bad row number `{}`", rest)))?;
                    if r == 0 {
                        return Err(perr(ln, "rows are numbered from 1".into()));
                    }
                    open_row = Some(r - 1);
                }
                "let" => {
                    let (name, class) = rest
                        .split_once('=')
                        .ok_or_else(|| perr(ln, "expected `let <name> = <class>`".into()))?;
                    bindings.insert(name.trim().to_string(), class.trim().to_string());
                }
                "alpha" => {
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| perr(ln, "expected `alpha x y z = <target>`".into()))?;
                    let names: Vec<String> = lhs.split_whitespace().map(str::to_string).collect();
                    if names.len() != 3 {
                        return Err(perr(ln, "alpha takes three classes".into()));
                    }
                    alphas.push((ln, names, rhs.trim().to_string()));
                }
                "order_ratio_bound" => {
                    bound = Some(
                        rest.parse::<i64>()
                            .map_err(|_| perr(ln, format!("bad bound `{}`", rest)))?,
                    )
                }
                other => return Err(perr(ln, format!("unknown keyword `{}`", other))),
            }
        }
        let table = table.ok_or_else(|| perr(0, "missing `table`".into()))?;
        let names: Vec<&str> = special.iter().map(String::as_str).collect();
        let set = SpecialClassSet::from_names(table.clone(), &names, assumptions)?;
        let basis = if basis_rows.is_empty() {
            None
        } else {
            let rows = basis_rows
                .iter()
                .map(|(ln, text)| table.parse_combination(text).map_err(|e| perr(*ln, e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            Some(Matrix::from_rows(rows)?)
        };
        let mut equations = Vec::new();
        for (ln, labels, rhs) in alphas {
            let mut classes = [0usize; 3];
            for (slot, label) in labels.iter().enumerate() {
                let class = bindings.get(label).map(String::as_str).unwrap_or(label);
                let k = table.class_index(class).map_err(|_| perr(ln, format!("unknown class `{}`", class)))?;
                classes[slot] = set
                    .classes
                    .iter()
                    .position(|&c| c == k)
                    .ok_or_else(|| perr(ln, format!("class `{}` is not special", class)))?;
            }
            let compact: String = rhs.split_whitespace().collect();
            let target = if let Some(num) = compact.strip_suffix("/|G|") {
                AlphaTarget::OverGroupOrder(
                    parse_scalar_at(num, ln)?
                        .to_rational()
                        .ok_or_else(|| perr(ln, "target must be rational".into()))?,
                )
            } else {
                AlphaTarget::Constant(
                    parse_scalar_at(&compact, ln)?
                        .to_rational()
                        .ok_or_else(|| perr(ln, "target must be rational".into()))?,
                )
            };
            equations.push(AlphaEquation {
                classes,
                labels: [labels[0].clone(), labels[1].clone(), labels[2].clone()],
                target,
            });
        }
        Ok(PipelineConfig {
            elimination: EliminationConfig {
                equations,
                order_ratio_bound: bound.ok_or_else(|| perr(0, "missing `order_ratio_bound`".into()))?,
                subgroup_order: table.group_order(),
            },
            set,
            basis,
            open_row,
        })
    }
}

#[derive(Clone, Debug)]
pub enum FamilyOutcome {
    Eliminated(EliminationReport),
    Surviving(EliminationReport),
    Underdetermined(String),
}

impl FamilyOutcome {
    pub fn is_eliminated(&self) -> bool {
        matches!(self, FamilyOutcome::Eliminated(_))
    }
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub canonical: VanishingBasis,
    pub basis: VanishingBasis,
    /// `X` with `basis = X · canonical`, present when a basis was supplied.
    pub change_of_basis: Option<Matrix>,
    pub c: Matrix,
    pub gram: Vec<Vec<i64>>,
    pub trivial: Vec<i64>,
    pub decompositions: Vec<Decomposition>,
    pub families: Vec<CandidateFamily>,
    pub partial_tables: Vec<PartialColumnSet>,
    pub outcomes: Vec<FamilyOutcome>,
}

impl PipelineReport {
    pub fn all_eliminated(&self) -> bool {
        self.outcomes.iter().all(FamilyOutcome::is_eliminated)
    }
}

fn integer_entries(m: &Matrix, what: &str) -> Result<Vec<Vec<i64>>> {
    m.to_i64_rows()
        .map_err(|_| Error::NonIntegerValue(format!("{} has non-integer entries", what)))
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineReport> {
    let canonical = vanishing_basis(&cfg.set);
    let (basis, change_of_basis) = match &cfg.basis {
        Some(a) => {
            let vb = VanishingBasis::from_coefficients(&cfg.set, a.clone())?;
            let x = canonical.change_of_basis_to(&vb)?;
            (vb, Some(x))
        }
        None => (canonical.clone(), None),
    };
    let c = basis.gamma_expansion()?;
    let gram = integer_entries(&basis.induced_gram(), "induced Gram matrix")?;
    let trivial = basis
        .trivial_column()?
        .iter()
        .map(Scalar::expect_i64)
        .collect::<Result<Vec<_>>>()?;
    let degrees: Vec<Option<i64>> = basis.degrees().iter().map(Scalar::to_i64).collect();
    let decompositions = enumerate_decompositions(&gram, &trivial)?;
    let families = group_families(&decompositions, cfg.open_row, &degrees);
    let mut partial_tables = Vec::new();
    let mut outcomes = Vec::new();
    for fam in &families {
        partial_tables.push(reconstruct_partial_table(&cfg.set, &c, fam)?);
        outcomes.push(match case1_eliminate(fam, &c, &cfg.elimination) {
            Ok(rep) if rep.eliminated => FamilyOutcome::Eliminated(rep),
            Ok(rep) => FamilyOutcome::Surviving(rep),
            Err(Error::UnderdeterminedSystem(msg)) => FamilyOutcome::Underdetermined(msg),
            Err(e) => return Err(e),
        });
    }
    Ok(PipelineReport {
        canonical,
        basis,
        change_of_basis,
        c,
        gram,
        trivial,
        decompositions,
        families,
        partial_tables,
        outcomes,
    })
}
