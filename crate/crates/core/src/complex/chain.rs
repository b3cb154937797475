use std::fmt::Write as _;

use num_traits::Zero;

use super::complex::SimplicialComplex;
use super::simplex::{Simplex, Vertex};
use crate::error::{Error, Result};
use crate::scalar::{Integer, Ring};

/// Integer `k`-chain, one coefficient per `k`-simplex in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    coefficients: Vec<Integer>,
}

impl Chain {
    pub fn new(degree: usize, coefficients: Vec<Integer>) -> Self {
        Chain { degree, coefficients }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coefficients
    }

    pub fn negate(&self) -> Chain {
        Chain::new(self.degree, self.coefficients.iter().map(|c| -c).collect())
    }

    pub fn boundary(&self, k: &SimplicialComplex) -> Chain {
        if self.degree == 0 {
            return Chain::new(0, vec![Integer::zero(); k.count(0)]);
        }
        let mut out = vec![Integer::zero(); k.count(self.degree - 1)];
        for (c, col) in self.coefficients.iter().zip(k.boundary_columns(self.degree)) {
            if c.is_zero() {
                continue;
            }
            for (i, s) in col {
                out[i] += c * s;
            }
        }
        Chain::new(self.degree - 1, out)
    }
}

/// A `k`-cochain with values in `R`, indexed by the `k`-simplices of a
/// complex in canonical order. Relative cochains are ordinary cochains that
/// vanish on the subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain<R> {
    degree: usize,
    values: Vec<R>,
}

impl<R: Ring> Cochain<R> {
    pub fn new(degree: usize, values: Vec<R>) -> Self {
        Cochain { degree, values }
    }

    pub fn zero(k: &SimplicialComplex, degree: usize) -> Self {
        Cochain { degree, values: vec![R::zero(); k.count(degree)] }
    }

    /// The indicator cochain of one simplex.
    pub fn indicator(k: &SimplicialComplex, s: &Simplex) -> Result<Self> {
        let i = k.index_of(s).ok_or_else(|| Error::Mismatch(format!("{s} is not a simplex of the complex")))?;
        let mut c = Self::zero(k, s.dim());
        c.values[i] = R::one();
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn value(&self, k: &SimplicialComplex, s: &Simplex) -> R {
        k.index_of(s).map_or_else(R::zero, |i| self.values[i].clone())
    }

    pub fn add(&self, other: &Cochain<R>) -> Cochain<R> {
        assert_eq!(self.degree, other.degree, "adding cochains of different degrees");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone()).collect();
        Cochain::new(self.degree, values)
    }

    pub fn scale(&self, c: &R) -> Cochain<R> {
        Cochain::new(self.degree, self.values.iter().map(|v| v.clone() * c.clone()).collect())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Cochain<S> {
        Cochain::new(self.degree, self.values.iter().map(f).collect())
    }

    /// `(δf)(τ) = Σ (-1)^i f(τ_i)`.
    pub fn coboundary(&self, k: &SimplicialComplex) -> Cochain<R> {
        let mut out = vec![R::zero(); k.count(self.degree + 1)];
        for (j, col) in k.boundary_columns(self.degree + 1).into_iter().enumerate() {
            let mut acc = R::zero();
            for (i, s) in col {
                if !self.values[i].is_zero() {
                    acc = acc + self.values[i].clone() * R::from_i64(s);
                }
            }
            out[j] = acc;
        }
        Cochain::new(self.degree + 1, out)
    }

    pub fn vanishes_on(&self, k: &SimplicialComplex, sub: &SimplicialComplex) -> bool {
        sub.simplices(self.degree).iter().all(|s| self.value(k, s).is_zero())
    }

    /// Alexander–Whitney product in the integer vertex order:
    /// `(z ∪ w)[v_0..v_{p+q}] = z[v_0..v_p] · w[v_p..v_{p+q}]`.
    pub fn cup(&self, other: &Cochain<R>, k: &SimplicialComplex) -> Cochain<R> {
        let (p, q) = (self.degree, other.degree);
        let values = k
            .simplices(p + q)
            .iter()
            .map(|s| {
                let a = &self.values[k.index_of(&s.front(p)).expect("faces are present")];
                if a.is_zero() {
                    return R::zero();
                }
                let b = &other.values[k.index_of(&s.back(p)).expect("faces are present")];
                a.clone() * b.clone()
            })
            .collect();
        Cochain::new(p + q, values)
    }

    pub fn evaluate(&self, c: &Chain) -> R {
        assert_eq!(self.degree, c.degree, "evaluating a cochain on a chain of another degree");
        let mut acc = R::zero();
        for (v, x) in self.values.iter().zip(c.coefficients()) {
            if !v.is_zero() && !x.is_zero() {
                acc = acc + v.clone() * R::from_integer(x);
            }
        }
        acc
    }

    /// Parses the `.cyc` format: `value v0 .. vk c` lines; unlisted simplices
    /// are zero.
    pub fn parse(text: &str, k: &SimplicialComplex, degree: usize) -> Result<Self> {
        let mut c = Self::zero(k, degree);
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: no + 1, message };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] != "value" {
                return Err(err(format!("expected 'value', found '{}'", tokens[0])));
            }
            if tokens.len() != degree + 3 {
                return Err(err(format!("expected {} vertices and a value", degree + 1)));
            }
            let verts: Vec<Vertex> = tokens[1..=degree + 1]
                .iter()
                .map(|t| t.parse().map_err(|_| err(format!("invalid vertex '{t}'"))))
                .collect::<Result<_>>()?;
            let value: Integer =
                tokens[degree + 2].parse().map_err(|_| err(format!("invalid value '{}'", tokens[degree + 2])))?;
            if R::CHARACTERISTIC == 2 && value != Integer::zero() && value != Integer::from(1) {
                return Err(err(format!("mod-2 value must be 0 or 1, found {value}")));
            }
            let s = Simplex::new(verts.iter().copied())?;
            let i = k.index_of(&s).ok_or_else(|| err(format!("{s} is not a simplex of the complex")))?;
            // value lines are written with the vertices in any order; the
            // stored value is for the increasing orientation
            let value = if permutation_is_odd(&verts) { -value } else { value };
            c.values[i] = R::from_integer(&value);
        }
        Ok(c)
    }

    /// Writes the nonzero values in `.cyc` format.
    pub fn to_cyc(&self, k: &SimplicialComplex) -> String {
        let mut out = String::new();
        for (s, v) in k.simplices(self.degree).iter().zip(&self.values) {
            if v.is_zero() {
                continue;
            }
            let verts: Vec<String> = s.vertices().iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "value {} {}", verts.join(" "), v.to_integer());
        }
        out
    }
}

/// Parity of the permutation sorting `v` (entries assumed distinct).
pub(crate) fn permutation_is_odd(v: &[Vertex]) -> bool {
    let mut inversions = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}
