//! Exact integer Laplacian characteristic polynomials, integer spectra,
//! spanning-tree counts, and the closed-form composition spectra.
//!
//! Everything here is exact big-integer arithmetic; there is no floating
//! point and no tolerance anywhere in the verification path.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Monic integer characteristic polynomial of a Laplacian, degree = order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    /// Coefficients c_0..c_n of det(xI - L), with c_n = 1.
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_string_pretty(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = match (k, mag == BigInt::one()) {
                (0, _) => format!("{mag}"),
                (1, true) => "x".to_string(),
                (1, false) => format!("{mag}x"),
                (_, true) => format!("x^{k}"),
                (_, false) => format!("{mag}x^{k}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{term}") } else { term });
            } else {
                parts.push(format!("{} {term}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Sorted multiset of non-negative integer Laplacian eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum {
    entries: Vec<usize>,
}

impl Spectrum {
    pub fn new(entries: Vec<usize>) -> Result<Spectrum> {
        if entries.is_empty() {
            return Err(Error::InvalidSpectrum("spectrum must be nonempty".into()));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpectrum("entries must be sorted".into()));
        }
        if entries[0] != 0 {
            return Err(Error::InvalidSpectrum("first entry must be 0".into()));
        }
        let n = entries.len();
        if *entries.last().unwrap() > n {
            return Err(Error::InvalidSpectrum(format!(
                "largest entry exceeds the order {n}"
            )));
        }
        Ok(Spectrum { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Second-smallest eigenvalue; positive iff the graph is connected.
    pub fn algebraic_connectivity(&self) -> usize {
        if self.entries.len() > 1 {
            self.entries[1]
        } else {
            0
        }
    }

    /// Multiplicity of an eigenvalue.
    pub fn multiplicity(&self, value: usize) -> usize {
        self.entries.iter().filter(|&&e| e == value).count()
    }

    pub fn contains(&self, value: usize) -> bool {
        self.entries.binary_search(&value).is_ok()
    }
}

impl std::fmt::Display for Spectrum {
    /// Comma-separated ascending integers in braces, e.g. `{0,1,1,4}`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

fn laplacian(g: &Graph) -> Vec<Vec<BigInt>> {
    let n = g.order();
    let mut l = vec![vec![BigInt::zero(); n]; n];
    for v in 0..n {
        l[v][v] = BigInt::from(g.degree(v));
    }
    for (u, v) in g.edges() {
        l[u][v] = BigInt::from(-1);
        l[v][u] = BigInt::from(-1);
    }
    l
}

/// Exact char poly of the Laplacian by the Faddeev-LeVerrier recursion.
pub fn laplacian_char_poly(g: &Graph) -> CharPoly {
    let n = g.order();
    let l = laplacian(g);
    // p(x) = x^n + a_{n-1} x^{n-1} + ... + a_0
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M starts as L; a_{n-k} = -tr(M_k)/k; M_{k+1} = L (M_k + a_{n-k} I)
    let mut m = l.clone();
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| m[i][i].clone()).sum();
        let a = -tr / k;
        coeffs[n - k] = a.clone();
        if k == n {
            break;
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &a;
        }
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for (t, mrow) in m.iter().enumerate() {
                    if !l[i][t].is_zero() && !mrow[j].is_zero() {
                        acc += &l[i][t] * &mrow[j];
                    }
                }
                next[i][j] = acc;
            }
        }
        m = next;
    }
    debug_assert!(coeffs[0].is_zero(), "Laplacian char poly must have root 0");
    CharPoly { coeffs }
}

/// Exact synthetic division of `poly` by (x - r); returns the quotient iff
/// the remainder is zero.
fn divide_out_root(coeffs: &[BigInt], r: usize) -> Option<Vec<BigInt>> {
    let r = BigInt::from(r);
    let mut quotient = vec![BigInt::zero(); coeffs.len() - 1];
    let mut carry = BigInt::zero();
    for k in (0..coeffs.len()).rev() {
        let value = &coeffs[k] + &carry * &r;
        if k == 0 {
            if value.is_zero() {
                return Some(quotient);
            }
            return None;
        }
        quotient[k - 1] = value.clone();
        carry = value;
    }
    unreachable!()
}

/// Full integer spectrum iff the char poly splits over the integers,
/// otherwise `None`. Never returns a partial multiset.
pub fn integer_spectrum(g: &Graph) -> Option<Spectrum> {
    let poly = laplacian_char_poly(g);
    integer_roots(&poly)
}

/// Factor a monic char poly over the candidate roots 0..=degree.
pub fn integer_roots(poly: &CharPoly) -> Option<Spectrum> {
    let n = poly.degree();
    let mut coeffs = poly.coeffs.clone();
    let mut roots = Vec::with_capacity(n);
    for r in 0..=n {
        while coeffs.len() > 1 {
            match divide_out_root(&coeffs, r) {
                Some(q) => {
                    roots.push(r);
                    coeffs = q;
                }
                None => break,
            }
        }
    }
    if roots.len() == n {
        Some(Spectrum::new(roots).expect("roots of a Laplacian char poly form a spectrum"))
    } else {
        None
    }
}

/// Multiset union of two spectra.
pub fn spectrum_of_union(sa: &Spectrum, sb: &Spectrum) -> Spectrum {
    let mut entries: Vec<usize> = sa.entries.iter().chain(&sb.entries).copied().collect();
    entries.sort_unstable();
    Spectrum { entries }
}

/// {0} together with n - mu for every non-first eigenvalue mu, sorted.
pub fn spectrum_of_complement(s: &Spectrum) -> Result<Spectrum> {
    let n = s.order();
    let mut entries: Vec<usize> = std::iter::once(0)
        .chain(s.entries.iter().skip(1).map(|&mu| n - mu))
        .collect();
    entries.sort_unstable();
    Spectrum::new(entries)
}

/// Kelmans join spectrum: {0, m+mu_i (i>=2), n+lambda_j (j>=2), n+m}.
pub fn spectrum_of_join(sa: &Spectrum, sb: &Spectrum) -> Result<Spectrum> {
    let (n, m) = (sa.order(), sb.order());
    let mut entries = vec![0];
    entries.extend(sa.entries.iter().skip(1).map(|&mu| m + mu));
    entries.extend(sb.entries.iter().skip(1).map(|&l| n + l));
    entries.push(n + m);
    entries.sort_unstable();
    Spectrum::new(entries)
}

/// All pairwise sums.
pub fn spectrum_of_cartesian(sa: &Spectrum, sb: &Spectrum) -> Spectrum {
    let mut entries: Vec<usize> = sa
        .entries
        .iter()
        .flat_map(|&a| sb.entries.iter().map(move |&b| a + b))
        .collect();
    entries.sort_unstable();
    Spectrum { entries }
}

/// Number of spanning trees as the principal cofactor det of L with row and
/// column 0 removed, by fraction-free Bareiss elimination.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    let n = g.order();
    if n == 1 {
        return BigInt::one();
    }
    let l = laplacian(g);
    let mut m: Vec<Vec<BigInt>> = (1..n)
        .map(|i| (1..n).map(|j| l[i][j].clone()).collect())
        .collect();
    let d = n - 1;
    let mut denom = BigInt::one();
    let mut sign = 1i32;
    for k in 0..d {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..d).find(|&p| !m[p][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &denom; // exact by Bareiss
            }
        }
        denom = m[k][k].clone();
    }
    let det = m[d - 1][d - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
