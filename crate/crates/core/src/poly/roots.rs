//! Exact real-root counting with Sturm sequences, root isolation by
//! bisection with rational endpoints, and interlacing.
//!
//! Interlacing convention: with roots listed in decreasing order and with
//! multiplicity, `p` interlaces `q` when `deg q ∈ {deg p, deg p + 1}` and
//! `β_1 >= α_1 >= β_2 >= α_2 >= ...` where `α` are the roots of `p` and `β`
//! those of `q`. The largest root belongs to `q`. The zero polynomial
//! interlaces, and is interlaced by, everything.

use std::ops::Bound;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::{Error, Result};

/// Rational polynomial used internally for Euclidean remainders.
#[derive(Debug, Clone, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_int(p: &IntPolynomial) -> Self {
        Self(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn monic(&self) -> Self {
        let lc = self.lead().clone();
        Self(self.0.iter().map(|c| c / &lc).collect())
    }

    fn derivative(&self) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trim()
    }

    fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let mut rem = self.0.clone();
        let dd = d.degree();
        if self.0.len() < d.0.len() {
            return (Self(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.0.len() - dd];
        let lc = d.lead();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lc;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dj;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self(quot).trim(), Self(rem).trim())
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Yun's algorithm: monic squarefree, pairwise coprime `f_1, f_2, ...`
/// with `p = c ∏ f_i^i`.
fn squarefree_decomposition(p: &RatPoly) -> Vec<RatPoly> {
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = sub(&c, &b.derivative());
    while b.degree() > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = sub(&c, &b.derivative());
        out.push(a);
    }
    out
}

fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let len = a.0.len().max(b.0.len());
    let zero = BigRational::zero();
    RatPoly(
        (0..len)
            .map(|i| a.0.get(i).unwrap_or(&zero) - b.0.get(i).unwrap_or(&zero))
            .collect(),
    )
    .trim()
}

/// Sturm sequence of a squarefree polynomial.
struct Sturm {
    seq: Vec<RatPoly>,
}

impl Sturm {
    fn new(f: &RatPoly) -> Self {
        let mut seq = vec![f.clone()];
        let mut next = f.derivative();
        while !next.is_zero() {
            let r = seq.last().expect("nonempty").div_rem(&next).1.neg();
            seq.push(next);
            next = r;
        }
        Self { seq }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn sign(x: &BigRational) -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    fn at(&self, x: &BigRational) -> usize {
        Self::variations(self.seq.iter().map(|f| Self::sign(&f.eval(x))))
    }

    fn at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|f| Self::sign(f.lead())))
    }

    fn at_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|f| {
            let s = Self::sign(f.lead());
            if f.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots of the squarefree base polynomial in the interval.
    fn count(&self, lo: Bound<&BigRational>, hi: Bound<&BigRational>) -> usize {
        let f = &self.seq[0];
        if f.degree() == 0 {
            return 0;
        }
        // V(a) - V(b) counts roots in (a, b]
        let (v_lo, lo_root) = match lo {
            Bound::Unbounded => (self.at_neg_inf(), false),
            Bound::Included(a) => (self.at(a), f.eval(a).is_zero()),
            Bound::Excluded(a) => (self.at(a), false),
        };
        let (v_hi, hi_drop) = match hi {
            Bound::Unbounded => (self.at_pos_inf(), false),
            Bound::Included(b) => (self.at(b), false),
            Bound::Excluded(b) => (self.at(b), f.eval(b).is_zero()),
        };
        if let (Some(a), Some(b)) = (bound_value(lo), bound_value(hi)) {
            if a > b || (a == b && !(matches!(lo, Bound::Included(_)) && matches!(hi, Bound::Included(_)))) {
                return 0;
            }
            if a == b {
                return usize::from(f.eval(a).is_zero());
            }
        }
        (v_lo + usize::from(lo_root)).saturating_sub(v_hi) - usize::from(hi_drop)
    }
}

fn bound_value(b: Bound<&BigRational>) -> Option<&BigRational> {
    match b {
        Bound::Included(x) | Bound::Excluded(x) => Some(x),
        Bound::Unbounded => None,
    }
}

/// `p` as squarefree factors with their multiplicities, each paired with its Sturm sequence.
struct Factored {
    factors: Vec<(usize, Sturm)>,
}

impl Factored {
    fn new(p: &IntPolynomial) -> Self {
        let rp = RatPoly::from_int(p);
        let factors = squarefree_decomposition(&rp)
            .into_iter()
            .enumerate()
            .filter(|(_, f)| f.degree() > 0)
            .map(|(i, f)| (i + 1, Sturm::new(&f)))
            .collect();
        Self { factors }
    }

    fn count(&self, lo: Bound<&BigRational>, hi: Bound<&BigRational>) -> usize {
        self.factors.iter().map(|(m, s)| m * s.count(lo, hi)).sum()
    }
}

/// Real roots of a nonzero `p` in an interval, counted with multiplicity.
pub fn real_root_count(
    p: &IntPolynomial,
    lo: Bound<&BigRational>,
    hi: Bound<&BigRational>,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Precondition("real_root_count of the zero polynomial".into()));
    }
    Ok(Factored::new(p).count(lo, hi))
}

/// Every root is real. Constants and the zero polynomial count as real-rooted.
pub fn is_real_rooted(p: &IntPolynomial) -> bool {
    match p.degree() {
        None | Some(0) => true,
        Some(d) => Factored::new(p).count(Bound::Unbounded, Bound::Unbounded) == d,
    }
}

/// A half-open interval `(lo, hi]` holding exactly one distinct real root.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

/// Disjoint isolating intervals in increasing order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootIsolation {
    pub roots: Vec<IsolatedRoot>,
}

impl RootIsolation {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Cauchy bound: every root has absolute value below it.
fn root_bound(f: &RatPoly) -> BigRational {
    let lc = f.lead().abs();
    f.0.iter()
        .map(|c| c.abs() / &lc)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
        + BigRational::one()
}

/// Isolating intervals for the distinct roots of a squarefree `f`.
fn isolate_squarefree(f: &RatPoly) -> Vec<(BigRational, BigRational)> {
    if f.degree() == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(f);
    let b = root_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(Bound::Excluded(&lo), Bound::Included(&hi)) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Exact root isolation of a nonzero polynomial, with multiplicities.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::Precondition("isolate_real_roots of the zero polynomial".into()));
    }
    let rp = RatPoly::from_int(p);
    let sqf = rp.div_rem(&rp.gcd(&rp.derivative())).0;
    let factored = Factored::new(p);
    let roots = isolate_squarefree(&sqf)
        .into_iter()
        .map(|(lo, hi)| {
            let multiplicity = factored.count(Bound::Excluded(&lo), Bound::Included(&hi));
            IsolatedRoot { lo, hi, multiplicity }
        })
        .collect();
    Ok(RootIsolation { roots })
}

/// Roots of `p` and of `q` as ranks in their common decreasing order, with multiplicity.
fn merged_root_ranks(p: &IntPolynomial, q: &IntPolynomial) -> (Vec<usize>, Vec<usize>) {
    let prod = p * q;
    let rp = RatPoly::from_int(&prod);
    let sqf = rp.div_rem(&rp.gcd(&rp.derivative())).0;
    let mut intervals = isolate_squarefree(&sqf);
    intervals.reverse();
    let (fp, fq) = (Factored::new(p), Factored::new(q));
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for (rank, (lo, hi)) in intervals.iter().enumerate() {
        let range = (Bound::Excluded(lo), Bound::Included(hi));
        alpha.extend(std::iter::repeat_n(rank, fp.count(range.0, range.1)));
        beta.extend(std::iter::repeat_n(rank, fq.count(range.0, range.1)));
    }
    (alpha, beta)
}

/// Whether `p` interlaces `q`; see the module documentation for the convention.
pub fn interlaces(p: &IntPolynomial, q: &IntPolynomial) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Ok(true);
    }
    for f in [p, q] {
        if !is_real_rooted(f) {
            return Err(Error::NotRealRooted(f.to_string()));
        }
    }
    let (dp, dq) = (p.degree().expect("nonzero"), q.degree().expect("nonzero"));
    if dq != dp && dq != dp + 1 {
        return Ok(false);
    }
    // ranks grow as roots decrease, so `x >= y` as reals is `rank x <= rank y`
    let (alpha, beta) = merged_root_ranks(p, q);
    let ok = alpha.iter().enumerate().all(|(i, a)| {
        beta[i] <= *a && beta.get(i + 1).is_none_or(|b| a <= b)
    });
    Ok(ok)
}

/// `interlaces(ps[i], ps[j])` for every `i < j`.
pub fn is_interlacing_sequence(ps: &[IntPolynomial]) -> Result<bool> {
    Ok(interlacing_matrix(ps)?
        .iter()
        .enumerate()
        .all(|(i, row)| row[i + 1..].iter().all(|&b| b)))
}

/// `m[i][j] = interlaces(ps[i], ps[j])` for `i != j`; the diagonal is `true`.
pub fn interlacing_matrix(ps: &[IntPolynomial]) -> Result<Vec<Vec<bool>>> {
    for f in ps {
        if !is_real_rooted(f) {
            return Err(Error::NotRealRooted(f.to_string()));
        }
    }
    let n = ps.len();
    let mut m = vec![vec![true; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = interlaces(&ps[i], &ps[j])?;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn lin(shifts: &[i64]) -> IntPolynomial {
        IntPolynomial::from_linear_factors(shifts)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn real_rootedness_examples() {
        assert!(!is_real_rooted(&p(&[1, 0, 1])));
        assert!(is_real_rooted(&p(&[1, 4, 1])));
        assert!(is_real_rooted(&p(&[0, 1, 7, 1])));
        assert!(is_real_rooted(&lin(&[1, 1, 1, 2])));
        assert!(!is_real_rooted(&(&p(&[1, 0, 1]) * &lin(&[3]))));
    }

    #[test]
    fn counts_respect_bounds_and_multiplicity() {
        // (t+1)^2 (t-2) t
        let f = &(&lin(&[1, 1]) * &lin(&[-2])) * &p(&[0, 1]);
        let all = real_root_count(&f, Bound::Unbounded, Bound::Unbounded).unwrap();
        assert_eq!(all, 4);
        let (m1, z, two) = (q(-1, 1), q(0, 1), q(2, 1));
        assert_eq!(real_root_count(&f, Bound::Included(&m1), Bound::Included(&m1)).unwrap(), 2);
        assert_eq!(real_root_count(&f, Bound::Excluded(&m1), Bound::Included(&z)).unwrap(), 1);
        assert_eq!(real_root_count(&f, Bound::Included(&m1), Bound::Excluded(&z)).unwrap(), 2);
        assert_eq!(real_root_count(&f, Bound::Excluded(&z), Bound::Excluded(&two)).unwrap(), 0);
        assert_eq!(real_root_count(&f, Bound::Excluded(&z), Bound::Unbounded).unwrap(), 1);
        assert_eq!(real_root_count(&f, Bound::Included(&two), Bound::Included(&m1)).unwrap(), 0);
        assert!(real_root_count(&IntPolynomial::zero(), Bound::Unbounded, Bound::Unbounded).is_err());
    }

    #[test]
    fn isolation_separates_close_roots() {
        // 100 t^2 - 1 and t: roots -1/10, 0, 1/10
        let f = &p(&[-1, 0, 100]) * &p(&[0, 1]);
        let iso = isolate_real_roots(&f).unwrap();
        assert_eq!(iso.roots.len(), 3);
        assert!(iso.roots.windows(2).all(|w| w[0].hi <= w[1].lo));
        for (r, x) in iso.roots.iter().zip([q(-1, 10), q(0, 1), q(1, 10)]) {
            assert!(r.lo < x && x <= r.hi);
            assert_eq!(r.multiplicity, 1);
        }
        let g = &lin(&[2, 2, 2]) * &p(&[1, 0, 1]);
        let iso = isolate_real_roots(&g).unwrap();
        assert_eq!(iso.roots.len(), 1);
        assert_eq!(iso.roots[0].multiplicity, 3);
        assert_eq!(iso.total_multiplicity(), 3);
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&lin(&[2]), &lin(&[1, 3])).unwrap());
        assert!(!interlaces(&lin(&[4]), &lin(&[1, 2])).unwrap());
        assert!(interlaces(&lin(&[1]), &lin(&[1])).unwrap());
        assert!(interlaces(&p(&[0, 1]), &p(&[0, 0, 1])).unwrap());
        assert!(!interlaces(&p(&[0, 0, 1]), &p(&[0, 1])).unwrap());
        assert!(interlaces(&IntPolynomial::zero(), &lin(&[1, 3])).unwrap());
        assert!(interlaces(&lin(&[1, 3]), &IntPolynomial::zero()).unwrap());
        assert!(matches!(
            interlaces(&p(&[1, 0, 1]), &lin(&[1, 2])),
            Err(Error::NotRealRooted(_))
        ));
        // degree gap of two
        assert!(!interlaces(&p(&[1]), &lin(&[1, 2])).unwrap());
        // same degree, largest root must belong to q
        assert!(interlaces(&lin(&[2, 4]), &lin(&[1, 3])).unwrap());
        assert!(!interlaces(&lin(&[1, 3]), &lin(&[2, 4])).unwrap());
    }

    #[test]
    fn interlacing_sequences() {
        assert!(is_interlacing_sequence(&[lin(&[1, 3])]).unwrap());
        assert!(is_interlacing_sequence(&[lin(&[2]), lin(&[1, 3])]).unwrap());
        assert!(!is_interlacing_sequence(&[lin(&[1, 3]), lin(&[2])]).unwrap());
        assert!(is_interlacing_sequence(&[p(&[0, 1]), p(&[0, 0, 1])]).unwrap());
        assert!(is_interlacing_sequence(&[]).unwrap());
    }
}
