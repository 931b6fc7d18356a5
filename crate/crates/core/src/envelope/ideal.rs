//! The defining ideal of the universal enveloping differential (Poisson)
//! algebra, computed exactly inside a truncation window.
//!
//! The ideal is generated by `x·d(y) − x∘y` (and, in free-Poisson mode, by
//! `{x,y} − [x,y]`) for generators `x, y`. Its window intersection is
//! computed in two tiers:
//!
//! 1. a saturation of the generators under `d` and brackets with single
//!    derivative-generators (`Q`-rows), and
//! 2. all products `m · q` of a window monomial with a `Q`-row that stay
//!    entirely inside the window.
//!
//! Tier 2 is closed under multiplication by construction and under `d` and
//! brackets by the Leibniz rule, so per weight it is the fixpoint of the
//! ideal operations restricted to the window. Everything inserted is a
//! genuine ideal element — the computation under-approximates the ideal
//! near the window boundary but never over-approximates, which is what
//! makes a nonzero kernel a certificate.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::error::Error;
use crate::exactpoly::{rat_int, Rational};
use crate::gdcore::{check_gd, check_novikov, AxiomReport, Parity, SuperAlgebra};
use crate::linalg::{Echelon, IntRow};
use crate::Result;

use super::monomial::{sort_letters, Atom, DiffMonomial, EnvElement, Letter};
use super::{bracket_elements, BracketRule, Mode, Truncation};

/// One weight-homogeneous layer of the window together with the ideal rows
/// that land in it.
#[derive(Clone, Debug)]
pub struct WeightComponent {
    pub weight: i64,
    /// Window monomials of this weight, ascending by (degree, letters);
    /// pivot selection prefers the last (highest-degree) columns.
    pub monomials: Vec<DiffMonomial>,
    /// Exact row-space basis of the ideal intersection, as sparse rows of
    /// rational coefficients over `monomials`.
    pub relation_rows: Vec<Vec<(u32, Rational)>>,
    /// Representatives of the quotient: the non-pivot monomials.
    pub quotient_basis: Vec<DiffMonomial>,
}

impl WeightComponent {
    pub fn window_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rows.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }
}

/// The defining ideal restricted to a window, with per-weight echelon rows
/// and lazily computed weight components.
pub struct IdealWindow {
    algebra: SuperAlgebra,
    parities: Vec<Parity>,
    trunc: Truncation,
    mode: Mode,
    atoms: Vec<Atom>,
    /// All window monomials per weight, ascending by (degree, letters).
    columns: BTreeMap<i64, Vec<DiffMonomial>>,
    index: BTreeMap<DiffMonomial, (i64, u32)>,
    qrows: Vec<EnvElement>,
    tier2: BTreeMap<i64, Echelon>,
}

const MAX_WINDOW_MONOMIALS: usize = 4_000_000;

impl IdealWindow {
    pub fn new(algebra: &SuperAlgebra, trunc: Truncation, mode: Mode) -> Result<IdealWindow> {
        let parities = algebra.basis.parities().to_vec();
        let letters = window_letters(parities.len(), &parities, &trunc, mode)?;
        let atoms: Vec<Atom> = letters
            .iter()
            .filter_map(|l| match l {
                Letter::Atom(a) => Some(*a),
                _ => None,
            })
            .collect();
        let columns = enumerate_monomials(&letters, &parities, &trunc)?;
        let mut index = BTreeMap::new();
        for (&w, monos) in &columns {
            for (i, m) in monos.iter().enumerate() {
                index.insert(m.clone(), (w, i as u32));
            }
        }
        let mut window = IdealWindow {
            algebra: algebra.clone(),
            parities,
            trunc,
            mode,
            atoms,
            columns,
            index,
            qrows: Vec::new(),
            tier2: BTreeMap::new(),
        };
        window.saturate_q();
        Ok(window)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn monomials(&self, weight: i64) -> &[DiffMonomial] {
        self.columns.get(&weight).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Generators of the ideal: `x·d(y) − x∘y` for all generator pairs and,
    /// in free mode, `{x,y} − [x,y]`.
    fn seeds(&self) -> Vec<EnvElement> {
        let dim = self.algebra.dim();
        let circ = self.algebra.circ.as_ref().expect("circ tensor");
        let mut out = Vec::new();
        for u in 0..dim {
            for v in 0..dim {
                // x_u · d(x_v) − x_u ∘ x_v
                let mut e = EnvElement::zero();
                if let Some((mono, sign)) = sort_letters(
                    vec![Letter::Atom(Atom::new(u, 0)), Letter::Atom(Atom::new(v, 1))],
                    &self.parities,
                ) {
                    e.add_term(mono, sign);
                }
                for k in 0..dim {
                    let c = &circ[u][v][k];
                    if !c.is_zero() {
                        e.add_term(DiffMonomial::single(Letter::Atom(Atom::new(k, 0))), -c.clone());
                    }
                }
                if !e.is_zero() {
                    out.push(e);
                }
            }
        }
        if self.mode == Mode::Free {
            let br = self.algebra.bracket.as_ref().expect("bracket tensor");
            for u in 0..dim {
                for v in 0..dim {
                    let mut e = bracket_elements(
                        &EnvElement::atom(u, 0),
                        &EnvElement::atom(v, 0),
                        &BracketRule::Free,
                        &self.parities,
                    );
                    for k in 0..dim {
                        let c = &br[u][v][k];
                        if !c.is_zero() {
                            e.add_term(
                                DiffMonomial::single(Letter::Atom(Atom::new(k, 0))),
                                -c.clone(),
                            );
                        }
                    }
                    if !e.is_zero() {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    /// Close the seed set under `d` and brackets with window atoms.
    fn saturate_q(&mut self) {
        let mut q_ech: BTreeMap<i64, Echelon> = BTreeMap::new();
        let mut queue: VecDeque<EnvElement> = VecDeque::new();
        let seeds = self.seeds();
        for s in seeds {
            if self.trunc.element_ok(&s, self.mode) {
                if self.insert_q(&mut q_ech, &s) {
                    queue.push_back(s);
                }
            }
        }
        while let Some(q) = queue.pop_front() {
            let d = q.d(&self.parities);
            if !d.is_zero() && self.trunc.element_ok(&d, self.mode) && self.insert_q(&mut q_ech, &d)
            {
                queue.push_back(d);
            }
            for a in self.atoms.clone() {
                let b = bracket_elements(
                    &EnvElement::from_monomial(DiffMonomial::single(Letter::Atom(a))),
                    &q,
                    &BracketRule::of(self.mode),
                    &self.parities,
                );
                if !b.is_zero()
                    && self.trunc.element_ok(&b, self.mode)
                    && self.insert_q(&mut q_ech, &b)
                {
                    queue.push_back(b);
                }
            }
        }
    }

    fn insert_q(&mut self, q_ech: &mut BTreeMap<i64, Echelon>, e: &EnvElement) -> bool {
        let Some(w) = homogeneous_weight(e) else {
            panic!("ideal rows must be weight-homogeneous");
        };
        let row = self.to_int_row(e);
        if q_ech.entry(w).or_default().insert(row) {
            self.qrows.push(e.clone());
            true
        } else {
            false
        }
    }

    fn to_int_row(&self, e: &EnvElement) -> IntRow {
        IntRow::from_rational(e.terms.iter().map(|(m, c)| {
            let (_, col) = self.index.get(m).unwrap_or_else(|| {
                panic!("monomial missing from window enumeration: {m:?}");
            });
            (*col, c.clone())
        }))
    }

    /// Tier-2 echelon of the ideal at one weight: all in-window products of
    /// a window monomial with a `Q`-row.
    pub fn relations_at(&mut self, weight: i64) -> &Echelon {
        if !self.tier2.contains_key(&weight) {
            let mut ech = Echelon::new();
            for qi in 0..self.qrows.len() {
                let q = self.qrows[qi].clone();
                let wq = homogeneous_weight(&q).unwrap();
                let need = weight - wq;
                let Some(ms) = self.columns.get(&need) else { continue };
                let min_deg = q.terms.keys().map(|m| m.degree()).min().unwrap_or(0);
                for m in ms.clone() {
                    if m.degree() + min_deg > self.trunc.max_degree {
                        continue;
                    }
                    let prod = EnvElement::from_monomial(m).mul(&q, &self.parities);
                    if prod.is_zero() || !self.trunc.element_ok(&prod, self.mode) {
                        continue;
                    }
                    let row = self.to_int_row(&prod);
                    ech.insert(row);
                }
            }
            self.tier2.insert(weight, ech);
        }
        &self.tier2[&weight]
    }

    /// The weight component with its relation rows and quotient basis.
    pub fn component(&mut self, weight: i64) -> WeightComponent {
        self.relations_at(weight);
        let ech = &self.tier2[&weight];
        let monomials = self.columns.get(&weight).cloned().unwrap_or_default();
        let mut relation_rows = Vec::new();
        for row in ech.rows() {
            relation_rows.push(
                row.cols
                    .iter()
                    .map(|(c, v)| (*c, Rational::from_integer(v.clone())))
                    .collect::<Vec<_>>(),
            );
        }
        let quotient_basis: Vec<DiffMonomial> = monomials
            .iter()
            .enumerate()
            .filter(|(i, _)| !ech.contains_pivot(*i as u32))
            .map(|(_, m)| m.clone())
            .collect();
        WeightComponent { weight, monomials, relation_rows, quotient_basis }
    }

    /// Normal form of an element modulo the window ideal; requires the
    /// element (not necessarily weight-homogeneous) to be inside the window.
    pub fn reduce(&mut self, e: &EnvElement) -> Result<EnvElement> {
        self.trunc.check_element(e, self.mode, "reduce")?;
        let mut out = EnvElement::zero();
        for (w, part) in split_by_weight(e) {
            self.relations_at(w);
            let ech = &self.tier2[&w];
            let vec: BTreeMap<u32, Rational> = part
                .terms
                .iter()
                .map(|(m, c)| (self.index.get(m).map(|(_, i)| *i).unwrap(), c.clone()))
                .collect();
            let red = ech.reduce(&vec);
            let cols = &self.columns[&w];
            for (col, c) in red {
                out.add_term(cols[col as usize].clone(), c);
            }
        }
        Ok(out)
    }

    /// Coordinates of the normal form of a weight-homogeneous element over
    /// the quotient basis of the given component.
    pub fn quotient_coords(
        &mut self,
        e: &EnvElement,
        comp: &WeightComponent,
    ) -> Result<Vec<Rational>> {
        let red = self.reduce(e)?;
        let mut coords = vec![Rational::zero(); comp.quotient_basis.len()];
        let pos: BTreeMap<&DiffMonomial, usize> =
            comp.quotient_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for (m, c) in &red.terms {
            let Some(&i) = pos.get(m) else {
                return Err(Error::DimensionMismatch(format!(
                    "normal form leaves the weight-{} quotient (monomial of weight {})",
                    comp.weight,
                    m.weight()
                )));
            };
            coords[i] = c.clone();
        }
        Ok(coords)
    }
}

fn homogeneous_weight(e: &EnvElement) -> Option<i64> {
    let mut it = e.terms.keys().map(|m| m.weight());
    let first = it.next()?;
    if it.all(|w| w == first) {
        Some(first)
    } else {
        None
    }
}

fn split_by_weight(e: &EnvElement) -> BTreeMap<i64, EnvElement> {
    let mut out: BTreeMap<i64, EnvElement> = BTreeMap::new();
    for (m, c) in &e.terms {
        out.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
    }
    out
}

fn window_letters(
    dim: usize,
    parities: &[Parity],
    trunc: &Truncation,
    mode: Mode,
) -> Result<Vec<Letter>> {
    let mut atoms: Vec<Atom> = Vec::new();
    for g in 0..dim {
        for o in 0..=trunc.max_diff_order {
            atoms.push(Atom::new(g, o));
        }
    }
    let mut letters: Vec<Letter> = atoms.iter().map(|a| Letter::Atom(*a)).collect();
    if mode == Mode::Free && trunc.max_bracket_depth >= 1 {
        let max_len = (trunc.max_bracket_depth + 1).min(trunc.max_degree) as usize;
        // Lyndon words of length 2..=max_len over the atom alphabet
        let mut stack: Vec<Vec<Atom>> = atoms.iter().map(|a| vec![*a]).collect();
        for _ in 2..=max_len {
            let mut next = Vec::new();
            for w in &stack {
                for a in &atoms {
                    let mut nw = w.clone();
                    nw.push(*a);
                    next.push(nw);
                }
            }
            for w in &next {
                if super::lie::is_lyndon(w) {
                    letters.push(Letter::Lie { word: w.clone(), square: false });
                }
            }
            stack = next;
            if stack.len() > 1_000_000 {
                return Err(Error::BadTruncation(
                    "bracket-word alphabet too large for this window".into(),
                ));
            }
        }
        // squares [w,w] of odd Lyndon words
        let plain: Vec<Vec<Atom>> = letters
            .iter()
            .filter_map(|l| match l {
                Letter::Atom(a) => Some(vec![*a]),
                Letter::Lie { word, square: false } => Some(word.clone()),
                _ => None,
            })
            .collect();
        for w in plain {
            let parity = w.iter().fold(Parity::Even, |p, a| p.plus(parities[a.gen as usize]));
            let sq = Letter::Lie { word: w, square: true };
            if parity.is_odd()
                && sq.depth() <= trunc.max_bracket_depth
                && sq.degree() <= trunc.max_degree
            {
                letters.push(sq);
            }
        }
    }
    letters.sort();
    Ok(letters)
}

fn enumerate_monomials(
    letters: &[Letter],
    parities: &[Parity],
    trunc: &Truncation,
) -> Result<BTreeMap<i64, Vec<DiffMonomial>>> {
    let mut all: Vec<DiffMonomial> = Vec::new();
    let mut current: Vec<Letter> = Vec::new();
    fn rec(
        letters: &[Letter],
        parities: &[Parity],
        max_deg: u32,
        start: usize,
        deg: u32,
        current: &mut Vec<Letter>,
        all: &mut Vec<DiffMonomial>,
    ) -> Result<()> {
        all.push(DiffMonomial { letters: current.clone() });
        if all.len() > MAX_WINDOW_MONOMIALS {
            return Err(Error::BadTruncation("window monomial count exceeds limit".into()));
        }
        for (i, l) in letters.iter().enumerate().skip(start) {
            let ld = l.degree();
            if deg + ld > max_deg {
                continue;
            }
            // a repeated odd letter vanishes
            if l.parity(parities).is_odd() && current.last() == Some(l) {
                continue;
            }
            current.push(l.clone());
            rec(letters, parities, max_deg, i, deg + ld, current, all)?;
            current.pop();
        }
        Ok(())
    }
    rec(letters, parities, trunc.max_degree, 0, 0, &mut current, &mut all)?;
    let mut buckets: BTreeMap<i64, Vec<DiffMonomial>> = BTreeMap::new();
    for m in all {
        buckets.entry(m.weight()).or_default().push(m);
    }
    for monos in buckets.values_mut() {
        monos.sort_by(|a, b| a.column_key().cmp(&b.column_key()));
    }
    Ok(buckets)
}

/// One weight component of the defining ideal, with the quotient basis of
/// `U_n = F_n / (I_V ∩ F_n)` inside the window.
pub fn ideal_component(
    algebra: &SuperAlgebra,
    weight: i64,
    trunc: Truncation,
    mode: Mode,
) -> Result<WeightComponent> {
    match mode {
        Mode::Defined => {
            let rep = check_novikov(algebra)?;
            if !rep.passed {
                return Err(Error::PrerequisiteFailed {
                    check: "novikov",
                    detail: format!("{} violation(s)", rep.violations.len()),
                });
            }
        }
        Mode::Free => {
            let rep = check_gd(algebra)?;
            if !rep.passed {
                return Err(Error::PrerequisiteFailed {
                    check: "gd",
                    detail: format!("{} violation(s)", rep.violations.len()),
                });
            }
        }
    }
    let mut window = IdealWindow::new(algebra, trunc, mode)?;
    Ok(window.component(weight))
}

/// The exceptionality certificate: generators of `V` whose image lies in
/// the window intersection of the defining ideal of the free differential
/// Poisson envelope. A nonzero kernel proves the GD-superalgebra embeds in
/// no differential Poisson superalgebra; a zero kernel is inconclusive
/// (windows only grow the certificate).
pub fn speciality_kernel(
    algebra: &SuperAlgebra,
    trunc: Truncation,
) -> Result<Vec<Vec<Rational>>> {
    let rep = check_gd(algebra)?;
    if !rep.passed {
        return Err(Error::PrerequisiteFailed {
            check: "gd",
            detail: format!("{} violation(s)", rep.violations.len()),
        });
    }
    if trunc.max_bracket_depth < 1 {
        return Err(Error::BadTruncation("speciality test needs bracket depth ≥ 1".into()));
    }
    let mut window = IdealWindow::new(algebra, trunc, Mode::Free)?;
    kernel_in_window(&mut window, algebra.dim())
}

fn kernel_in_window(window: &mut IdealWindow, dim: usize) -> Result<Vec<Vec<Rational>>> {
    // residues of the generators modulo the weight −1 relations
    let mut residues: Vec<BTreeMap<u32, Rational>> = Vec::new();
    window.relations_at(-1);
    for g in 0..dim {
        let e = EnvElement::atom(g, 0);
        let red = window.reduce(&e)?;
        let vec: BTreeMap<u32, Rational> = red
            .terms
            .iter()
            .map(|(m, c)| (window.index.get(m).map(|(_, i)| *i).unwrap(), c.clone()))
            .collect();
        residues.push(vec);
    }
    // kernel of c ↦ Σ c_g residue_g
    let mut coords: Vec<u32> = residues.iter().flat_map(|r| r.keys().copied()).collect();
    coords.sort_unstable();
    coords.dedup();
    let cols: Vec<Vec<Rational>> = residues
        .iter()
        .map(|r| coords.iter().map(|c| r.get(c).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    Ok(crate::linalg::kernel_of_columns(&cols))
}

/// Handle on the truncated universal enveloping differential algebra
/// `U(V)` of a Novikov superalgebra, with normal forms modulo the window
/// ideal.
pub struct NovikovEnvelope {
    window: IdealWindow,
    /// Verification that generator brackets reduce to super-commutators
    /// and `x·d(y)` reduces to `x∘y`.
    pub verification: AxiomReport,
}

impl NovikovEnvelope {
    pub fn generator(&self, i: usize) -> EnvElement {
        EnvElement::atom(i, 0)
    }

    pub fn product(&mut self, u: &EnvElement, v: &EnvElement) -> Result<EnvElement> {
        let prod = u.mul(v, &self.window.parities.clone());
        self.window.reduce(&prod)
    }

    pub fn d(&mut self, e: &EnvElement) -> Result<EnvElement> {
        let de = e.d(&self.window.parities.clone());
        self.window.reduce(&de)
    }

    /// The defined-mode bracket followed by reduction.
    pub fn bracket(&mut self, u: &EnvElement, v: &EnvElement) -> Result<EnvElement> {
        let b = bracket_elements(u, v, &BracketRule::Defined, &self.window.parities.clone());
        self.window.reduce(&b)
    }

    pub fn reduce(&mut self, e: &EnvElement) -> Result<EnvElement> {
        self.window.reduce(e)
    }

    pub fn component(&mut self, weight: i64) -> WeightComponent {
        self.window.component(weight)
    }

    pub fn parities(&self) -> Vec<Parity> {
        self.window.parities.clone()
    }
}

/// Build the truncated `U(V)` for a Novikov superalgebra and verify on all
/// generator pairs that `{x,y}` reduces to `x∘y − (−1)^{|x||y|} y∘x` and
/// `x·d(y)` reduces to `x∘y`.
pub fn build_novikov_envelope(
    algebra: &SuperAlgebra,
    trunc: Truncation,
) -> Result<NovikovEnvelope> {
    let rep = check_novikov(algebra)?;
    if !rep.passed {
        return Err(Error::PrerequisiteFailed {
            check: "novikov",
            detail: format!("{} violation(s)", rep.violations.len()),
        });
    }
    let window = IdealWindow::new(algebra, trunc, Mode::Defined)?;
    let mut env = NovikovEnvelope { window, verification: AxiomReport::new("envelope-generators") };
    let dim = algebra.dim();
    let circ = algebra.circ.as_ref().unwrap();
    let names = algebra.basis.names().to_vec();
    for u in 0..dim {
        for v in 0..dim {
            // x·d(y) ≡ x∘y
            let gen_u = EnvElement::atom(u, 0);
            let dv = EnvElement::atom(v, 1);
            let prod = env.product(&gen_u, &dv)?;
            let mut want = EnvElement::zero();
            for k in 0..dim {
                if !circ[u][v][k].is_zero() {
                    want.add_term(
                        DiffMonomial::single(Letter::Atom(Atom::new(k, 0))),
                        circ[u][v][k].clone(),
                    );
                }
            }
            if prod != want {
                env.verification.record(
                    "product-reduction",
                    format!("({},{})", names[u], names[v]),
                    prod.display(&names),
                );
            }
            // {x,y} ≡ x∘y − (−1)^{|x||y|} y∘x
            let gen_v = EnvElement::atom(v, 0);
            let br = env.bracket(&gen_u, &gen_v)?;
            let sign = algebra.basis.parity(u).koszul(algebra.basis.parity(v));
            let mut comm = EnvElement::zero();
            for k in 0..dim {
                let c = &circ[u][v][k] - rat_int(sign as i64) * &circ[v][u][k];
                if !c.is_zero() {
                    comm.add_term(DiffMonomial::single(Letter::Atom(Atom::new(k, 0))), c);
                }
            }
            if br != comm {
                env.verification.record(
                    "bracket-reduction",
                    format!("({},{})", names[u], names[v]),
                    br.display(&names),
                );
            }
        }
    }
    Ok(env)
}

/// Truncated universal enveloping differential Poisson superalgebra
/// `P_d(V)` of a special GD-superalgebra, delivered as the weight −1 and 0
/// quotients together with the exact structure maps the finite conformal
/// module construction consumes.
pub struct PdEnvelope {
    pub algebra: SuperAlgebra,
    pub truncation: Truncation,
    pub umin1: WeightComponent,
    pub u0: WeightComponent,
    /// `mult[a][u]`: coordinates in `U_{−1}` of `x_a · u_rep`; `None` when
    /// the product leaves the window.
    pub mult: Vec<Vec<Option<Vec<Rational>>>>,
    /// `brk[a][u]`: coordinates in `U_0` of `{x_a, u_rep}`.
    pub brk: Vec<Vec<Option<Vec<Rational>>>>,
    /// `d_umin1[i]`: coordinates in `U_0` of `d(rep_i)` for the `U_{−1}` basis.
    pub d_umin1: Vec<Vec<Rational>>,
    /// `dmult[a][u]`: coordinates in `U_0` of `d(x_a) · u_rep`.
    pub dmult: Vec<Vec<Option<Vec<Rational>>>>,
    /// `dof_mult[a][u]`: coordinates in `U_0` of `d(x_a · u_rep)`.
    pub dof_mult: Vec<Vec<Option<Vec<Rational>>>>,
}

/// Build the truncated `P_d(V)`. Fails with a certificate-sized error when
/// the speciality kernel is nonzero, and with a stabilization error when
/// the weight −1 quotient does not reproduce the generators.
pub fn build_pd_envelope(algebra: &SuperAlgebra, trunc: Truncation) -> Result<PdEnvelope> {
    let kernel = speciality_kernel(algebra, trunc)?;
    if !kernel.is_empty() {
        return Err(Error::NonzeroKernel(kernel.len()));
    }
    let mut window = IdealWindow::new(algebra, trunc, Mode::Free)?;
    let umin1 = window.component(-1);
    let u0 = window.component(0);
    let dim = algebra.dim();
    // the weight −1 quotient must be represented by the generators, in order
    let expected: Vec<DiffMonomial> =
        (0..dim).map(|g| DiffMonomial::single(Letter::Atom(Atom::new(g, 0)))).collect();
    if umin1.quotient_basis != expected {
        return Err(Error::NotStabilized(format!(
            "weight −1 quotient basis is {:?}, not the generator images",
            umin1.quotient_basis.len()
        )));
    }
    let parities = window.parities().to_vec();
    let mut mult = Vec::with_capacity(dim);
    let mut brk = Vec::with_capacity(dim);
    let mut dmult = Vec::with_capacity(dim);
    let mut dof_mult = Vec::with_capacity(dim);
    for a in 0..dim {
        let gen = EnvElement::atom(a, 0);
        let dgen = EnvElement::atom(a, 1);
        let mut mrow = Vec::new();
        let mut brow = Vec::new();
        let mut dmrow = Vec::new();
        let mut dofrow = Vec::new();
        for u in &u0.quotient_basis {
            let urep = EnvElement::from_monomial(u.clone());
            let prod = gen.mul(&urep, &parities);
            let prod_ok = window.trunc.element_ok(&prod, Mode::Free);
            mrow.push(if prod_ok {
                Some(window.quotient_coords(&prod, &umin1)?)
            } else {
                None
            });
            let b = bracket_elements(&gen, &urep, &BracketRule::Free, &parities);
            brow.push(if window.trunc.element_ok(&b, Mode::Free) {
                Some(window.quotient_coords(&b, &u0)?)
            } else {
                None
            });
            let dm = dgen.mul(&urep, &parities);
            dmrow.push(if window.trunc.element_ok(&dm, Mode::Free) {
                Some(window.quotient_coords(&dm, &u0)?)
            } else {
                None
            });
            let dp = prod.d(&parities);
            dofrow.push(if prod_ok && window.trunc.element_ok(&dp, Mode::Free) {
                Some(window.quotient_coords(&dp, &u0)?)
            } else {
                None
            });
        }
        mult.push(mrow);
        brk.push(brow);
        dmult.push(dmrow);
        dof_mult.push(dofrow);
    }
    let mut d_umin1 = Vec::with_capacity(dim);
    for rep in &umin1.quotient_basis {
        let d = EnvElement::from_monomial(rep.clone()).d(&parities);
        window.trunc.check_element(&d, Mode::Free, "d of U_{−1}")?;
        d_umin1.push(window.quotient_coords(&d, &u0)?);
    }
    Ok(PdEnvelope {
        algebra: algebra.clone(),
        truncation: trunc,
        umin1,
        u0,
        mult,
        brk,
        d_umin1,
        dmult,
        dof_mult,
    })
}
