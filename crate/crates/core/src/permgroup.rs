//! Small permutation groups with fully materialised element sets: closure,
//! conjugacy classes, brute-force class multiplication counts and the
//! Burnside–Dixon character table over a prime field.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use crate::chartable::{Character, CharacterTable, ConjClass};
use crate::error::{Error, Result};
use crate::exact::Scalar;

pub const DEFAULT_CAP: usize = 1_000_000;

/// A bijection on `{0, .., n-1}`; printed and parsed 1-based in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "images {:?} do not form a bijection",
                    images
                )));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Parses cycle notation such as `(1,4)(2,5,3,6)` on `degree` points.
    /// `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in &cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} outside 1..={}",
                        p, degree
                    )));
                }
                if touched[p - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated in `{}`",
                        p, text
                    )));
                }
                touched[p - 1] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other` (maps `x` to `other(self(x))`).
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = order.lcm(&len);
        }
        order
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.images[x] as usize;
            }
            write!(f, "({})", cycle.join(","))?;
            any = true;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cycles = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::InvalidPermutation(format!("expected `(` in `{}`", text)));
        };
        let close = body
            .find(')')
            .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in `{}`", text)))?;
        let inner = &body[..close];
        if !inner.is_empty() {
            let pts = inner
                .split(',')
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!("bad point `{}` in `{}`", t, text))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(pts);
        }
        rest = &body[close + 1..];
    }
    Ok(cycles)
}

/// Largest point mentioned in a cycle-notation string.
fn max_point(text: &str) -> Result<usize> {
    Ok(parse_cycle_list(text)?
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0))
}

/// Reads a generator document: one permutation per line in cycle notation,
/// `#` comments, and an optional `degree N` line. Without one, the degree is
/// the largest point mentioned (at least 1).
pub fn parse_generators(text: &str) -> Result<Vec<Perm>> {
    let mut degree = None;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(v) = line.strip_prefix("degree") {
            let d = v
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(idx + 1, format!("bad degree `{}`", v.trim())))?;
            degree = Some(d);
        } else {
            lines.push(line.to_string());
        }
    }
    let degree = match degree {
        Some(d) => d,
        None => lines
            .iter()
            .map(|l| max_point(l))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0)
            .max(1),
    };
    lines.iter().map(|l| Perm::parse_cycles(l, degree)).collect()
}

/// Conjugacy class data with the lexicographically least representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub representative: Perm,
    pub size: u64,
    pub element_order: u64,
    pub centralizer_order: u64,
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    classes: Vec<ClassInfo>,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl PermGroup {
    /// Closes `gens` under composition. An empty list gives the trivial group
    /// on `degree` points (`degree` is ignored otherwise).
    pub fn from_generators(gens: Vec<Perm>, degree: usize, cap: usize) -> Result<Self> {
        let degree = gens.first().map_or(degree.max(1), Perm::degree);
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {} has degree {} instead of {}",
                g,
                g.degree(),
                degree
            )));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in &gens {
                let h = elements[k].then(g);
                if !index.contains_key(&h) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    index.insert(h.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let mut group = PermGroup {
            degree,
            generators: gens,
            elements,
            index,
            classes: Vec::new(),
            class_of: Vec::new(),
            members: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.elements.len();
        let inverses: Vec<Perm> = self.generators.iter().map(Perm::inverse).collect();
        let mut raw_class = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut orbit = vec![start as u32];
            raw_class[start] = id;
            let mut head = 0;
            while head < orbit.len() {
                let x = &self.elements[orbit[head] as usize];
                head += 1;
                for (g, gi) in self.generators.iter().zip(&inverses) {
                    let y = gi.then(x).then(g);
                    let k = self.index[&y] as usize;
                    if raw_class[k] == u32::MAX {
                        raw_class[k] = id;
                        orbit.push(k as u32);
                    }
                }
            }
            orbits.push(orbit);
        }
        let order = n as u64;
        let mut infos: Vec<(ClassInfo, Vec<u32>)> = orbits
            .into_iter()
            .map(|orbit| {
                let rep = orbit
                    .iter()
                    .map(|&k| &self.elements[k as usize])
                    .min()
                    .expect("orbits are non-empty")
                    .clone();
                let size = orbit.len() as u64;
                let info = ClassInfo {
                    element_order: rep.order(),
                    representative: rep,
                    size,
                    centralizer_order: order / size,
                };
                (info, orbit)
            })
            .collect();
        infos.sort_by(|(a, _), (b, _)| {
            a.element_order
                .cmp(&b.element_order)
                .then(b.centralizer_order.cmp(&a.centralizer_order))
                .then(a.representative.cmp(&b.representative))
        });
        self.class_of = vec![0; n];
        for (c, (_, orbit)) in infos.iter().enumerate() {
            for &k in orbit {
                self.class_of[k as usize] = c as u32;
            }
        }
        self.members = infos.iter().map(|(_, o)| o.clone()).collect();
        self.classes = infos.into_iter().map(|(i, _)| i).collect();
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn conjugacy_classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_names(&self) -> Vec<String> {
        (1..=self.classes.len()).map(|k| format!("C{}", k)).collect()
    }

    pub fn class_index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).map(|&k| self.class_of[k as usize] as usize)
    }

    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .fold(1u64, |e, c| e.lcm(&c.element_order))
    }

    /// Class of `g^t` for `g` in class `k`.
    pub fn power_class(&self, k: usize, t: u64) -> usize {
        let p = self.classes[k].representative.pow(t);
        self.class_index_of(&p).expect("powers stay in the group")
    }

    /// Number of elements with `x^m = 1`, counted element by element.
    pub fn count_mth_roots_of_unity(&self, m: u64) -> u64 {
        self.elements
            .par_iter()
            .filter(|g| m.is_multiple_of(g.order()))
            .count() as u64
    }

    /// Pairs `(a, b)` with `a` in class `x`, `b` in class `y` and `ab` equal to
    /// the representative of class `z`, by direct enumeration.
    pub fn structure_constant_bruteforce(&self, x: usize, y: usize, z: usize) -> u64 {
        let target = &self.classes[z].representative;
        let ys: Vec<&Perm> = self.members[y]
            .iter()
            .map(|&k| &self.elements[k as usize])
            .collect();
        self.members[x]
            .iter()
            .map(|&k| {
                let a = &self.elements[k as usize];
                ys.iter().filter(|b| a.then(b) == *target).count() as u64
            })
            .sum()
    }

    /// Class multiplication coefficients `c[i][j][k]`: the number of `a` in
    /// class `i` with `a⁻¹·z_k` in class `j`.
    pub fn class_multiplication_coefficients(&self) -> Vec<Vec<Vec<u64>>> {
        let r = self.classes.len();
        let per_k: Vec<Vec<Vec<u64>>> = (0..r)
            .into_par_iter()
            .map(|k| {
                let z = &self.classes[k].representative;
                let mut c = vec![vec![0u64; r]; r];
                for (i, members) in self.members.iter().enumerate() {
                    for &a in members {
                        let b = self.elements[a as usize].inverse().then(z);
                        let j = self.class_of[self.index[&b] as usize] as usize;
                        c[i][j] += 1;
                    }
                }
                c
            })
            .collect();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).map(|k| per_k[k][i][j]).collect())
                    .collect()
            })
            .collect()
    }

    /// Character table via Dixon's algorithm. Classes are named `C1..` in the
    /// canonical class order; characters are sorted by degree then values and
    /// named `chi1..`.
    pub fn dixon_character_table(&self) -> Result<CharacterTable> {
        dixon::character_table(self)
    }
}

mod dixon {
    use super::*;

    fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    /// Smallest prime `p ≡ 1 (mod e)` with `p ≥ 2⌈√order⌉`.
    pub(super) fn choose_prime(order: u64, e: u64) -> u64 {
        let mut s = (order as f64).sqrt() as u64;
        while s * s < order {
            s += 1;
        }
        let floor = 2 * s;
        let mut p = e + 1;
        while p < floor || !is_prime(p) {
            p += e;
        }
        p
    }

    fn primitive_root_of_order(e: u64, p: u64) -> u64 {
        let mut factors = Vec::new();
        let mut m = e;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (1..p)
            .map(|g| pow_mod(g, (p - 1) / e, p))
            .find(|&z| factors.iter().all(|&q| pow_mod(z, e / q, p) != 1))
            .expect("p ≡ 1 mod e has a primitive e-th root")
    }

    /// Basis (as columns) of the kernel of the `rows × cols` matrix `a` mod `p`.
    fn kernel(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, pr);
            let inv = inv_mod(a[r][c], p);
            for x in a[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[row][f]) % p;
                }
                v
            })
            .collect()
    }

    /// Splits `F_p^r` into common eigenspaces of the class matrices.
    fn split(mats: &[Vec<Vec<u64>>], r: usize, p: u64) -> Result<Vec<Vec<u64>>> {
        let identity: Vec<Vec<u64>> = (0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
            .collect();
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
        for m in mats {
            let mut next = Vec::new();
            for basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                // image of each basis vector under m
                let images: Vec<Vec<u64>> = basis
                    .iter()
                    .map(|v| {
                        (0..r)
                            .map(|j| (0..r).fold(0, |s, k| (s + m[j][k] * v[k]) % p))
                            .collect()
                    })
                    .collect();
                let d = basis.len();
                let mut pieces = Vec::new();
                for lambda in 0..p {
                    // (m - λ) B x = 0 as an r × d system
                    let a: Vec<Vec<u64>> = (0..r)
                        .map(|j| {
                            (0..d)
                                .map(|c| (images[c][j] + p - lambda * basis[c][j] % p) % p)
                                .collect()
                        })
                        .collect();
                    let ker = kernel(a, d, p);
                    if !ker.is_empty() {
                        let vecs: Vec<Vec<u64>> = ker
                            .iter()
                            .map(|x| {
                                (0..r)
                                    .map(|j| (0..d).fold(0, |s, c| (s + x[c] * basis[c][j]) % p))
                                    .collect()
                            })
                            .collect();
                        pieces.push(vecs);
                    }
                }
                if pieces.iter().map(Vec::len).sum::<usize>() != d {
                    return Err(Error::Structure(
                        "class matrix is not diagonalisable over the chosen field".into(),
                    ));
                }
                next.extend(pieces);
            }
            spaces = next;
        }
        if spaces.iter().any(|s| s.len() != 1) {
            return Err(Error::Structure(
                "class matrices do not separate the characters".into(),
            ));
        }
        Ok(spaces.into_iter().map(|mut s| s.remove(0)).collect())
    }

    fn cyclotomic(n: u64) -> Vec<i64> {
        // coefficients, lowest degree first
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                num = divide_exact(&num, &cyclotomic(d));
            }
        }
        num
    }

    fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        let lead = *den.last().expect("non-empty");
        let qlen = rem.len() - dd;
        let mut q = vec![0i64; qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dd] / lead;
            q[k] = c;
            for (t, &dv) in den.iter().enumerate() {
                rem[k + t] -= c * dv;
            }
        }
        q
    }

    fn reduce_mod(mut poly: Vec<i64>, phi: &[i64]) -> Vec<i64> {
        let dd = phi.len() - 1;
        while poly.len() > dd {
            let top = poly.pop().expect("non-empty");
            if top != 0 {
                let shift = poly.len() - dd;
                for (t, &c) in phi[..dd].iter().enumerate() {
                    poly[shift + t] -= top * c;
                }
            }
        }
        poly.resize(dd, 0);
        poly
    }

    /// `Σ m_l ζ_o^l` as an element of Z[√3], if it lies there.
    pub(super) fn lift_to_scalar(mult: &[i64], o: u64) -> Result<Scalar> {
        let phi = cyclotomic(o);
        let r = reduce_mod(mult.to_vec(), &phi);
        if r.iter().skip(1).all(|&c| c == 0) {
            return Ok(Scalar::from_int(r.first().copied().unwrap_or(0)));
        }
        if o.is_multiple_of(12) {
            let mut s = vec![0i64; o as usize];
            s[(o / 12) as usize] += 1;
            s[(o - o / 12) as usize] += 1;
            let s = reduce_mod(s, &phi);
            let k = (1..s.len())
                .find(|&k| s[k] != 0)
                .expect("√3 is irrational");
            if r[k] % s[k] == 0 {
                let b = r[k] / s[k];
                let diff: Vec<i64> = r.iter().zip(&s).map(|(x, y)| x - b * y).collect();
                if diff.iter().skip(1).all(|&c| c == 0) {
                    return Ok(Scalar::new(
                        crate::exact::rat_int(diff[0]),
                        crate::exact::rat_int(b),
                    ));
                }
            }
        }
        Err(Error::ValueOutsideRing(format!(
            "Σ m_l ζ_{}^l with m = {:?}",
            o, mult
        )))
    }

    pub(super) fn character_table(g: &PermGroup) -> Result<CharacterTable> {
        let order = g.order();
        let r = g.classes.len();
        let e = g.exponent();
        let p = choose_prime(order, e);
        let coeffs = g.class_multiplication_coefficients();
        // (M_i)_{jk} = c_ijk; common eigenvectors are central characters
        let mats: Vec<Vec<Vec<u64>>> = coeffs
            .iter()
            .map(|ci| ci.iter().map(|row| row.iter().map(|&x| x % p).collect()).collect())
            .collect();
        let vectors = split(&mats[1..], r, p)?;
        let inverse_class: Vec<usize> = g
            .classes
            .iter()
            .map(|c| {
                g.class_index_of(&c.representative.inverse())
                    .expect("inverse in group")
            })
            .collect();
        let z = primitive_root_of_order(e, p);
        let mut characters = Vec::with_capacity(r);
        for v in vectors {
            let n0 = inv_mod(v[0], p);
            let omega: Vec<u64> = v.iter().map(|x| x * n0 % p).collect();
            let s = (0..r).fold(0u64, |acc, k| {
                let term = omega[k] * omega[inverse_class[k]] % p * inv_mod(g.classes[k].size % p, p) % p;
                (acc + term) % p
            });
            let deg_sq = (order % p) * inv_mod(s, p) % p;
            let degree = (1..=p / 2)
                .find(|d| d * d % p == deg_sq && order.is_multiple_of(*d))
                .ok_or_else(|| Error::Structure("no integral degree for eigenvector".into()))?;
            let values_mod_p: Vec<u64> = (0..r)
                .map(|k| omega[k] * degree % p * inv_mod(g.classes[k].size % p, p) % p)
                .collect();
            let mut values = Vec::with_capacity(r);
            for k in 0..r {
                let o = g.classes[k].element_order;
                let zo = pow_mod(z, e / o, p);
                let o_inv = inv_mod(o % p, p);
                let mult: Vec<i64> = (0..o)
                    .map(|l| {
                        let sum = (0..o).fold(0u64, |acc, t| {
                            let chi = values_mod_p[g.power_class(k, t)];
                            let root = pow_mod(zo, (o - (l * t) % o) % o, p);
                            (acc + chi * root) % p
                        });
                        (sum * o_inv % p) as i64
                    })
                    .collect();
                values.push(lift_to_scalar(&mult, o)?);
            }
            characters.push(values);
        }
        characters.sort_by(|a, b| a[0].cmp(&b[0]).then_with(|| b.cmp(a)));
        let classes = g
            .classes
            .iter()
            .zip(g.class_names())
            .map(|(c, name)| ConjClass {
                name,
                element_order: c.element_order,
                centralizer_order: c.centralizer_order,
            })
            .collect();
        let characters = characters
            .into_iter()
            .enumerate()
            .map(|(i, values)| Character {
                name: format!("chi{}", i + 1),
                values,
            })
            .collect();
        CharacterTable::new("G", order, classes, characters)
    }
}

/// A column bijection and row bijection identifying two tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMatch {
    /// `columns[k]` is the column of the second table matched to column `k`.
    pub columns: Vec<usize>,
    /// `rows[i]` is the row of the second table matched to row `i`.
    pub rows: Vec<usize>,
}

/// Finds bijections of columns (respecting element and centralizer orders)
/// and rows under which the two tables coincide.
pub fn match_tables(a: &CharacterTable, b: &CharacterTable) -> Option<TableMatch> {
    let r = a.class_count();
    if a.group_order() != b.group_order() || r != b.class_count() {
        return None;
    }
    let key = |c: &ConjClass| (c.element_order, c.centralizer_order);
    let mut columns = vec![usize::MAX; r];
    let mut used = vec![false; r];
    fn rows_for(a: &CharacterTable, b: &CharacterTable, columns: &[usize]) -> Option<Vec<usize>> {
        let mut taken = vec![false; b.characters().len()];
        let mut rows = Vec::new();
        for ch in a.characters() {
            let j = b.characters().iter().enumerate().position(|(j, other)| {
                !taken[j]
                    && columns
                        .iter()
                        .enumerate()
                        .all(|(k, &c)| ch.values[k] == other.values[c])
            })?;
            taken[j] = true;
            rows.push(j);
        }
        Some(rows)
    }
    fn go(
        k: usize,
        a: &CharacterTable,
        b: &CharacterTable,
        columns: &mut Vec<usize>,
        used: &mut Vec<bool>,
        key: &dyn Fn(&ConjClass) -> (u64, u64),
    ) -> Option<TableMatch> {
        if k == columns.len() {
            return rows_for(a, b, columns).map(|rows| TableMatch {
                columns: columns.clone(),
                rows,
            });
        }
        for c in 0..columns.len() {
            if used[c] || key(&a.classes()[k]) != key(&b.classes()[c]) {
                continue;
            }
            // prune: multiset of partial rows must agree on this column
            let mut left: Vec<&Scalar> = a.characters().iter().map(|ch| &ch.values[k]).collect();
            let mut right: Vec<&Scalar> = b.characters().iter().map(|ch| &ch.values[c]).collect();
            left.sort();
            right.sort();
            if left != right {
                continue;
            }
            used[c] = true;
            columns[k] = c;
            if let Some(m) = go(k + 1, a, b, columns, used, key) {
                return Some(m);
            }
            used[c] = false;
        }
        None
    }
    go(0, a, b, &mut columns, &mut used, &key)
}
