//! Exact rational arithmetic and sparse multivariate polynomials in named
//! commuting formal variables.
//!
//! Polynomials live over a small, explicit [`VarSet`] (at most the four
//! variables `∂`, `λ`, `μ`, `x` are ever needed). Terms are kept in a
//! `BTreeMap` from exponent vector to coefficient, so iteration order, and
//! hence printing, is canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Exact rational scalar. Always reduced to lowest terms with a positive
/// denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical name of the module derivation variable.
pub const DEL: &str = "∂";
/// Canonical name of the bracket parameter.
pub const LAM: &str = "λ";
/// Canonical name of the inner bracket parameter used in Jacobi expansions.
pub const MU: &str = "μ";
/// Canonical name of the matrix variable of `gc_{n|m}`.
pub const XVAR: &str = "x";

/// An ordered set of variable names, fixed per polynomial context.
#[derive(Clone, PartialEq, Eq)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        assert!(
            v.iter().collect::<std::collections::BTreeSet<_>>().len() == v.len(),
            "duplicate variable name"
        );
        VarSet(Arc::new(v))
    }

    /// The `(∂, λ)` context of bracket tables.
    pub fn dl() -> Self {
        VarSet::new(&[DEL, LAM])
    }

    /// The `(∂, λ, μ)` context of Jacobi expansions.
    pub fn dlm() -> Self {
        VarSet::new(&[DEL, LAM, MU])
    }

    /// The `(∂, λ, μ, x)` context of `gc_{n|m}` computations.
    pub fn dlmx() -> Self {
        VarSet::new(&[DEL, LAM, MU, XVAR])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn check_same(&self, other: &VarSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VarSetMismatch(format!("{self:?}"), format!("{other:?}")))
        }
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

/// Sparse polynomial with exact rational coefficients over a fixed [`VarSet`].
///
/// Invariant: no zero coefficient is ever stored, and every exponent vector
/// has exactly `vars.len()` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalPoly {
    vars: VarSet,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl FormalPoly {
    pub fn zero(vars: &VarSet) -> Self {
        FormalPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        let mut p = FormalPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        FormalPoly::constant(vars, Rational::one())
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let idx = vars.index_of(name)?;
        let mut exp = vec![0; vars.len()];
        exp[idx] = 1;
        let mut p = FormalPoly::zero(vars);
        p.terms.insert(exp, Rational::one());
        Ok(p)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let idx = self.vars.index_of(name)?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    fn add_term(&mut self, exp: Vec<u32>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &FormalPoly) -> Result<FormalPoly> {
        self.vars.check_same(&other.vars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormalPoly) -> Result<FormalPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FormalPoly {
        FormalPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> FormalPoly {
        if c.is_zero() {
            return FormalPoly::zero(&self.vars);
        }
        FormalPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Exact product. Commutative and associative.
    pub fn mul(&self, other: &FormalPoly) -> Result<FormalPoly> {
        self.vars.check_same(&other.vars)?;
        let mut out = FormalPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> FormalPoly {
        let mut out = FormalPoly::one(&self.vars);
        for _ in 0..n {
            out = out.mul(self).expect("same varset");
        }
        out
    }

    /// Substitute `name := expr` simultaneously in every term; other
    /// variables are untouched. `expr` must live over the same variable set.
    pub fn substitute(&self, name: &str, expr: &FormalPoly) -> Result<FormalPoly> {
        self.vars.check_same(&expr.vars)?;
        let idx = self.vars.index_of(name)?;
        let max_pow = self.terms.keys().map(|e| e[idx]).max().unwrap_or(0);
        // precompute expr^0..expr^max
        let mut powers = Vec::with_capacity(max_pow as usize + 1);
        powers.push(FormalPoly::one(&self.vars));
        for k in 1..=max_pow {
            let next = powers[(k - 1) as usize].mul(expr)?;
            powers.push(next);
        }
        let mut out = FormalPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[idx];
            rest[idx] = 0;
            for (pe, pc) in &powers[k as usize].terms {
                let exp: Vec<u32> = rest.iter().zip(pe).map(|(a, b)| a + b).collect();
                out.add_term(exp, &(c * pc));
            }
        }
        Ok(out)
    }

    /// Re-express the polynomial over a larger variable set. `map[i]` gives
    /// the index in `target` of source variable `i`; this also performs
    /// variable renaming.
    pub fn embed(&self, target: &VarSet, map: &[usize]) -> FormalPoly {
        assert_eq!(map.len(), self.vars.len());
        let mut out = FormalPoly::zero(target);
        for (e, c) in &self.terms {
            let mut exp = vec![0u32; target.len()];
            for (i, &p) in e.iter().enumerate() {
                exp[map[i]] += p;
            }
            out.add_term(exp, c);
        }
        out
    }

    /// Embed matching variables by name; every source variable must exist in
    /// `target`.
    pub fn lift(&self, target: &VarSet) -> Result<FormalPoly> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect::<Result<_>>()?;
        Ok(self.embed(target, &map))
    }

    /// Coefficient of a given exponent vector (zero if absent).
    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Evaluate with rational values for every variable.
    pub fn eval(&self, vals: &[Rational]) -> Rational {
        assert_eq!(vals.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        acc
    }
}

fn fmt_monomial(names: &[String], exp: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &p) in exp.iter().enumerate() {
        match p {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], p)),
        }
    }
    parts.join("*")
}

fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest term first for readability
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono = fmt_monomial(self.vars.names(), e);
            let abs = c.abs();
            let coef = if abs.is_one() && !mono.is_empty() {
                String::new()
            } else {
                fmt_rational(&abs)
            };
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono.clone(),
                (false, true) => coef,
                (false, false) => format!("{coef}*{mono}"),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Spec-surface product with variable-set checking.
pub fn poly_mul(p: &FormalPoly, q: &FormalPoly) -> Result<FormalPoly> {
    p.mul(q)
}

/// Spec-surface substitution with variable-name checking.
pub fn poly_substitute(p: &FormalPoly, var: &str, expr: &FormalPoly) -> Result<FormalPoly> {
    p.substitute(var, expr)
}

/// A vector of polynomials indexed by a basis of a finite-dimensional space.
/// All components share one variable set.
#[derive(Clone, PartialEq, Eq)]
pub struct VecPoly {
    vars: VarSet,
    comps: Vec<FormalPoly>,
}

impl VecPoly {
    pub fn zero(vars: &VarSet, dim: usize) -> Self {
        VecPoly { vars: vars.clone(), comps: vec![FormalPoly::zero(vars); dim] }
    }

    pub fn from_components(vars: &VarSet, comps: Vec<FormalPoly>) -> Result<Self> {
        for c in &comps {
            vars.check_same(c.vars())?;
        }
        Ok(VecPoly { vars: vars.clone(), comps })
    }

    /// Unit vector `e_i` with polynomial coefficient 1.
    pub fn unit(vars: &VarSet, dim: usize, i: usize) -> Self {
        let mut v = VecPoly::zero(vars, dim);
        v.comps[i] = FormalPoly::one(vars);
        v
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, i: usize) -> &FormalPoly {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[FormalPoly] {
        &self.comps
    }

    pub fn set_comp(&mut self, i: usize, p: FormalPoly) {
        assert!(self.vars == *p.vars());
        self.comps[i] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &VecPoly) -> Result<VecPoly> {
        self.vars.check_same(&other.vars)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), other.dim())));
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(VecPoly { vars: self.vars.clone(), comps })
    }

    pub fn sub(&self, other: &VecPoly) -> Result<VecPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VecPoly {
        VecPoly { vars: self.vars.clone(), comps: self.comps.iter().map(|p| p.neg()).collect() }
    }

    pub fn scale(&self, c: &Rational) -> VecPoly {
        VecPoly { vars: self.vars.clone(), comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiply every component by a scalar polynomial.
    pub fn mul_poly(&self, p: &FormalPoly) -> Result<VecPoly> {
        let comps = self.comps.iter().map(|c| c.mul(p)).collect::<Result<_>>()?;
        Ok(VecPoly { vars: self.vars.clone(), comps })
    }

    /// Componentwise substitution.
    pub fn substitute(&self, name: &str, expr: &FormalPoly) -> Result<VecPoly> {
        let comps = self.comps.iter().map(|c| c.substitute(name, expr)).collect::<Result<_>>()?;
        Ok(VecPoly { vars: self.vars.clone(), comps })
    }

    pub fn embed(&self, target: &VarSet, map: &[usize]) -> VecPoly {
        VecPoly {
            vars: target.clone(),
            comps: self.comps.iter().map(|c| c.embed(target, map)).collect(),
        }
    }

    pub fn lift(&self, target: &VarSet) -> Result<VecPoly> {
        let comps = self.comps.iter().map(|c| c.lift(target)).collect::<Result<_>>()?;
        Ok(VecPoly { vars: target.clone(), comps })
    }

    /// Render with basis names, e.g. `(∂ + 2*λ)*v`.
    pub fn display_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.comps.len());
        let mut parts = Vec::new();
        for (i, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if p.num_terms() == 1 {
                let (e, c) = p.terms().next().unwrap();
                let mono = fmt_monomial(self.vars.names(), e);
                let mut s = String::new();
                if c.is_one() && !mono.is_empty() {
                    s.push_str(&mono);
                } else if *c == -Rational::one() && !mono.is_empty() {
                    s.push('-');
                    s.push_str(&mono);
                } else {
                    s.push_str(&fmt_rational(c));
                    if !mono.is_empty() {
                        s.push('*');
                        s.push_str(&mono);
                    }
                }
                if s == "1" {
                    parts.push(names[i].clone());
                } else if s == "-1" {
                    parts.push(format!("-{}", names[i]));
                } else {
                    parts.push(format!("{}*{}", s, names[i]));
                }
            } else {
                parts.push(format!("({})*{}", p, names[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

impl fmt::Debug for VecPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim()).map(|i| format!("e{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

/// Basis of the solution space of `Σ c_j * vecs[j] = 0` over the rationals.
///
/// Each `VecPoly` is flattened over (component, exponent) pairs, so the
/// system is an exact linear system in the unknown coefficients `c_j`. The
/// returned basis rows are primitive integer vectors with positive leading
/// entry, in a deterministic order.
pub fn vecpoly_linsolve(vecs: &[VecPoly]) -> Result<Vec<Vec<Rational>>> {
    if vecs.is_empty() {
        return Ok(Vec::new());
    }
    let vars = vecs[0].vars().clone();
    let dim = vecs[0].dim();
    for v in vecs {
        vars.check_same(v.vars())?;
        if v.dim() != dim {
            return Err(Error::DimensionMismatch(format!("{} vs {}", v.dim(), dim)));
        }
    }
    // collect all (component, exponent) coordinates that appear
    let mut coords: std::collections::BTreeSet<(usize, Vec<u32>)> = Default::default();
    for v in vecs {
        for (i, p) in v.comps().iter().enumerate() {
            for (e, _) in p.terms() {
                coords.insert((i, e.clone()));
            }
        }
    }
    let coords: Vec<_> = coords.into_iter().collect();
    let cols: Vec<Vec<Rational>> = vecs
        .iter()
        .map(|v| coords.iter().map(|(i, e)| v.comp(*i).coeff(e)).collect())
        .collect();
    Ok(crate::linalg::kernel_of_columns(&cols))
}
