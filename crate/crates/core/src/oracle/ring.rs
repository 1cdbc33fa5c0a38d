use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::lattice::FlatsLattice;
use super::linalg::{dense_rank, Echelon, Q};
use crate::boolean::HilbertSeries;
use crate::ground::Subset;
use crate::poly::IntPolynomial;
use crate::rewrite::g_expand;
use crate::{Error, Result};

/// Default cap on the number of chain monomials in one graded slice.
pub const DEFAULT_COLUMN_LIMIT: usize = 150_000;

/// A formal linear combination of monomials in the generators `x_F`.
///
/// Keys are multisets of flats, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XPolynomial {
    terms: BTreeMap<Vec<Subset>, Q>,
}

impl XPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), Q::one())
    }

    /// `x_F`.
    pub fn x(f: Subset) -> Self {
        Self::term(vec![f], Q::one())
    }

    /// `c · ∏ x_F`.
    pub fn term(mut flats: Vec<Subset>, c: Q) -> Self {
        flats.sort();
        let mut out = Self::zero();
        out.add_term(flats, c);
        out
    }

    fn add_term(&mut self, key: Vec<Subset>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Subset], &Q)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms; `None` for the zero expression.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut degrees = self.terms.keys().map(Vec::len);
        let Some(d) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    /// Full expansion without any reduction.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, va) in &self.terms {
            for (b, vb) in &other.terms {
                let mut key = a.clone();
                key.extend_from_slice(b);
                key.sort();
                out.add_term(key, va * vb);
            }
        }
        out
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{v}")?;
            for s in k {
                write!(f, "*x{s}")?;
            }
        }
        Ok(())
    }
}

/// An element of `CH^d`, as coordinates in the fixed monomial basis of the slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    degree: usize,
    coords: Vec<Q>,
}

impl RingElement {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Inhomogeneous);
        }
        Ok(Self {
            degree: self.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self {
            degree: self.degree,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }
}

/// Degree-`d` quotient of the chain monomials by the linear relations.
struct Slice {
    columns: Vec<Vec<u16>>,
    column_index: HashMap<Vec<u16>, u32>,
    echelon: Echelon,
    /// Non-pivot columns, increasing.
    basis: Vec<u32>,
    /// Basis position of each non-pivot column.
    basis_pos: Vec<Option<usize>>,
}

impl Slice {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a column's class, sparse over basis positions.
    fn column_coords(&self, c: u32) -> Vec<(usize, Q)> {
        match self.echelon.row(c) {
            None => vec![(self.basis_pos[c as usize].expect("non-pivot"), Q::one())],
            Some(row) => row[1..]
                .iter()
                .map(|(cc, v)| (self.basis_pos[*cc as usize].expect("reduced row"), -v.clone()))
                .collect(),
        }
    }
}

/// The Chow ring of a loopless matroid, given by its lattice of flats.
///
/// Slice `d` has the chain monomials of degree `d` as columns (monomials whose
/// support is not a chain lie in the incomparability ideal) and the products
/// of the linear relations with chain monomials of degree `d - 1` as rows.
/// The basis is the set of non-pivot columns, with columns ordered so that
/// monomials on large flats come first.
pub struct ChowRing {
    lattice: FlatsLattice,
    /// Nonempty flats; generator `j` is `x_{gens[j]}`.
    gens: Vec<Subset>,
    column_limit: usize,
    slices: Vec<OnceLock<Option<Slice>>>,
}

impl ChowRing {
    pub fn new(lattice: FlatsLattice) -> Self {
        Self::with_column_limit(lattice, DEFAULT_COLUMN_LIMIT)
    }

    pub fn with_column_limit(lattice: FlatsLattice, column_limit: usize) -> Self {
        let gens = lattice.nonempty_flats().to_vec();
        let slices = (0..=lattice.rank()).map(|_| OnceLock::new()).collect();
        Self {
            lattice,
            gens,
            column_limit,
            slices,
        }
    }

    pub fn lattice(&self) -> &FlatsLattice {
        &self.lattice
    }

    fn gen_index(&self, f: Subset) -> Result<u16> {
        match self.lattice.index_of(f) {
            Some(i) if i > 0 => Ok((i - 1) as u16),
            _ => Err(Error::NotAFlat(f.to_string())),
        }
    }

    /// Chain monomials of degree `d`: nondecreasing generator indices whose flats are nested.
    fn chain_monomials(&self, d: usize) -> Result<Vec<Vec<u16>>> {
        fn walk(
            gens: &[Subset],
            start: usize,
            left: usize,
            last: Subset,
            cur: &mut Vec<u16>,
            out: &mut Vec<Vec<u16>>,
            limit: usize,
        ) -> bool {
            if left == 0 {
                out.push(cur.clone());
                return out.len() <= limit;
            }
            for i in start..gens.len() {
                if last.is_subset_of(gens[i]) {
                    cur.push(i as u16);
                    let ok = walk(gens, i, left - 1, gens[i], cur, out, limit);
                    cur.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        let mut out = Vec::new();
        if !walk(&self.gens, 0, d, Subset::EMPTY, &mut Vec::new(), &mut out, self.column_limit) {
            return Err(Error::TooLarge {
                what: format!("degree-{d} slice of the Chow ring"),
                limit: self.column_limit,
            });
        }
        Ok(out)
    }

    fn build_slice(&self, d: usize) -> Result<Slice> {
        let mut columns = self.chain_monomials(d)?;
        // large flats first, so that basis monomials favor them
        columns.sort_by(|a, b| b.cmp(a));
        let column_index: HashMap<Vec<u16>, u32> = columns
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let mut echelon = Echelon::new(columns.len());
        if d > 0 {
            for m in self.chain_monomials(d - 1)? {
                let support: Vec<Subset> = m.iter().map(|&j| self.gens[j as usize]).collect();
                for label in self.lattice.ground().labels() {
                    let row = self.gens.iter().enumerate().filter_map(|(j, &f)| {
                        if !f.contains(*label) || !support.iter().all(|g| g.is_comparable(f)) {
                            return None;
                        }
                        let mut key = m.clone();
                        let pos = key.partition_point(|&x| x <= j as u16);
                        key.insert(pos, j as u16);
                        Some((column_index[&key], Q::one()))
                    });
                    echelon.insert(row.collect::<Vec<_>>());
                }
            }
            echelon.back_substitute();
        }
        let mut basis = Vec::new();
        let mut basis_pos = vec![None; columns.len()];
        for c in 0..columns.len() as u32 {
            if !echelon.is_pivot(c) {
                basis_pos[c as usize] = Some(basis.len());
                basis.push(c);
            }
        }
        Ok(Slice {
            columns,
            column_index,
            echelon,
            basis,
            basis_pos,
        })
    }

    fn slice(&self, d: usize) -> Result<&Slice> {
        let cell = self
            .slices
            .get(d)
            .ok_or_else(|| Error::Precondition(format!("degree {d} exceeds the rank")))?;
        // the only way a build fails is the column limit
        cell.get_or_init(|| self.build_slice(d).ok())
            .as_ref()
            .ok_or_else(|| self.too_large(d))
    }

    fn too_large(&self, d: usize) -> Error {
        Error::TooLarge {
            what: format!("degree-{d} slice of the Chow ring"),
            limit: self.column_limit,
        }
    }

    /// The slice holding degree `d`, or `None` when a slice of degree `<= d`
    /// vanishes; the ring is generated in degree 1, so everything above is zero.
    fn live_slice(&self, d: usize) -> Result<Option<&Slice>> {
        let rank = self.lattice.rank();
        for e in 1..=d.min(rank) {
            if self.slice(e)?.dim() == 0 {
                return Ok(None);
            }
        }
        if d > rank {
            return Err(Error::Precondition(format!(
                "degree {d} exceeds the rank and CH^{rank} does not vanish"
            )));
        }
        self.slice(d).map(Some)
    }

    /// `dim CH^d`.
    pub fn dim(&self, d: usize) -> Result<usize> {
        Ok(self.live_slice(d)?.map_or(0, Slice::dim))
    }

    /// Graded dimensions in degrees `0..=rank`, each slice reduced independently.
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let dims = (0..=self.lattice.rank())
            .into_par_iter()
            .map(|d| self.slice(d).map(|s| s.dim() as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::from_counts(&dims))
    }

    fn zero_element(&self, d: usize) -> Result<RingElement> {
        Ok(RingElement {
            degree: d,
            coords: vec![Q::zero(); self.dim(d)?],
        })
    }

    /// Adds `c` times the class of the monomial `m` (sorted generator indices).
    fn accumulate(&self, slice: &Slice, coords: &mut [Q], m: &[u16], c: &Q) {
        let chain = m
            .windows(2)
            .all(|w| self.gens[w[0] as usize].is_subset_of(self.gens[w[1] as usize]));
        if !chain {
            return;
        }
        let col = slice.column_index[m];
        for (pos, v) in slice.column_coords(col) {
            coords[pos] += c * v;
        }
    }

    /// Coordinates of a homogeneous expression in the quotient basis.
    pub fn canonical_form(&self, expr: &XPolynomial) -> Result<RingElement> {
        let d = expr.degree()?.unwrap_or(0);
        let mut keys = Vec::new();
        for (flats, c) in expr.terms() {
            let mut key = flats
                .iter()
                .map(|&f| self.gen_index(f))
                .collect::<Result<Vec<_>>>()?;
            key.sort_unstable();
            keys.push((key, c));
        }
        let mut out = self.zero_element(d)?;
        if let Some(slice) = self.live_slice(d)? {
            for (key, c) in keys {
                self.accumulate(slice, &mut out.coords, &key, c);
            }
        }
        Ok(out)
    }

    /// The basis monomials of degree `d`, as multisets of flats.
    pub fn basis_monomials(&self, d: usize) -> Result<Vec<Vec<Subset>>> {
        let Some(slice) = self.live_slice(d)? else {
            return Ok(Vec::new());
        };
        Ok(slice
            .basis
            .iter()
            .map(|&c| {
                slice.columns[c as usize]
                    .iter()
                    .map(|&j| self.gens[j as usize])
                    .collect()
            })
            .collect())
    }

    /// `Σ coords · basis monomial`.
    pub fn to_expression(&self, a: &RingElement) -> Result<XPolynomial> {
        let monomials = self.basis_monomials(a.degree)?;
        let mut out = XPolynomial::zero();
        for (m, c) in monomials.into_iter().zip(&a.coords) {
            out = out.add(&XPolynomial::term(m, c.clone()));
        }
        Ok(out)
    }

    /// Product in the ring, reducing monomial by monomial.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let d = a.degree + b.degree;
        let mut out = self.zero_element(d)?;
        let Some(target) = self.live_slice(d)? else {
            return Ok(out);
        };
        let (sa, sb) = match (self.live_slice(a.degree)?, self.live_slice(b.degree)?) {
            (Some(x), Some(y)) => (x, y),
            _ => return Ok(out),
        };
        for (ia, ca) in a.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let ma = &sa.columns[sa.basis[ia] as usize];
            for (ib, cb) in b.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mb = &sb.columns[sb.basis[ib] as usize];
                let mut key = ma.clone();
                key.extend_from_slice(mb);
                key.sort_unstable();
                self.accumulate(target, &mut out.coords, &key, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn one(&self) -> Result<RingElement> {
        self.canonical_form(&XPolynomial::one())
    }

    /// Product of several elements, left to right.
    pub fn product(&self, factors: &[RingElement]) -> Result<RingElement> {
        factors
            .iter()
            .try_fold(self.one()?, |acc, f| self.mul(&acc, f))
    }

    pub fn x_element(&self, f: Subset) -> Result<RingElement> {
        self.canonical_form(&XPolynomial::x(f))
    }

    /// `h_F = Σ_{G ⊇ F} x_G` as an expression.
    pub fn h_expression(&self, f: Subset) -> Result<XPolynomial> {
        self.gen_index(f)?;
        Ok(self
            .gens
            .iter()
            .filter(|g| f.is_subset_of(**g))
            .fold(XPolynomial::zero(), |acc, &g| acc.add(&XPolynomial::x(g))))
    }

    pub fn h_element(&self, f: Subset) -> Result<RingElement> {
        self.canonical_form(&self.h_expression(f)?)
    }

    /// `g_F = Σ_{S ⊆ E_{>max F}} x_{F ∪ S}`; boolean lattices only.
    pub fn g_expression(&self, f: Subset) -> Result<XPolynomial> {
        if !self.lattice.is_boolean() {
            return Err(Error::Precondition(
                "g-generators are only defined here for boolean lattices".into(),
            ));
        }
        self.gen_index(f)?;
        Ok(g_expand(f, self.lattice.ground())?
            .into_iter()
            .fold(XPolynomial::zero(), |acc, g| acc.add(&XPolynomial::x(g))))
    }

    pub fn g_element(&self, f: Subset) -> Result<RingElement> {
        self.canonical_form(&self.g_expression(f)?)
    }

    /// `a · expr` for a homogeneous expression, without reducing `expr` first.
    pub fn mul_expression(&self, a: &RingElement, expr: &XPolynomial) -> Result<RingElement> {
        let d = a.degree + expr.degree()?.unwrap_or(0);
        let mut keys = Vec::new();
        for (flats, c) in expr.terms() {
            let key = flats
                .iter()
                .map(|&f| self.gen_index(f))
                .collect::<Result<Vec<_>>>()?;
            keys.push((key, c));
        }
        let mut out = self.zero_element(d)?;
        let (Some(target), Some(source)) = (self.live_slice(d)?, self.live_slice(a.degree)?) else {
            return Ok(out);
        };
        for (ia, ca) in a.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let ma = &source.columns[source.basis[ia] as usize];
            for (key, c) in &keys {
                let mut merged = ma.clone();
                merged.extend_from_slice(key);
                merged.sort_unstable();
                self.accumulate(target, &mut out.coords, &merged, &(ca * *c));
            }
        }
        Ok(out)
    }

    /// `∏ h_S`.
    pub fn h_monomial(&self, parts: &[Subset]) -> Result<RingElement> {
        parts.iter().try_fold(self.one()?, |acc, &s| {
            self.mul_expression(&acc, &self.h_expression(s)?)
        })
    }

    /// `∏ g_S`.
    pub fn g_monomial(&self, parts: &[Subset]) -> Result<RingElement> {
        parts.iter().try_fold(self.one()?, |acc, &s| {
            self.mul_expression(&acc, &self.g_expression(s)?)
        })
    }

    /// Graded dimensions of the principal ideal `(h_E^m)`: in each degree, the
    /// rank of multiplication by `h_E^m` from the slice `m` degrees below.
    pub fn principal_ideal_hilbert(&self, m: usize) -> Result<HilbertSeries> {
        let top = self.lattice.ground().as_subset();
        let h_top = self.h_element(top)?;
        let power = self.product(&vec![h_top; m])?;
        let mut dims = vec![0u64; self.lattice.rank() + 1];
        for (d, slot) in dims.iter_mut().enumerate().skip(m) {
            let source = d - m;
            let images = (0..self.dim(source)?)
                .map(|i| {
                    let mut coords = vec![Q::zero(); self.dim(source)?];
                    coords[i] = Q::one();
                    let unit = RingElement {
                        degree: source,
                        coords,
                    };
                    Ok(self.mul(&power, &unit)?.coords)
                })
                .collect::<Result<Vec<_>>>()?;
            *slot = dense_rank(&images) as u64;
        }
        Ok(IntPolynomial::from_counts(&dims))
    }
}
