//! λ-bracket engine on free `k[∂]`-modules.
//!
//! A bracket table stores, for each ordered pair of module generators, the
//! value `[x λ y]` as a vector of polynomials in `(∂, λ)`. Sesquilinearity
//! (`[∂x λ y] = −λ[x λ y]`, `[x λ ∂y] = (∂+λ)[x λ y]`) extends the table to
//! the whole module; all identity checks expand both sides exactly in
//! `k[∂,λ,μ]` and compare coefficients.
//!
//! Tables may be partial: an entry of `None` means "outside the truncation
//! window" and every identity touching it is skipped, not asserted.

use crate::error::Error;
use crate::exactpoly::{FormalPoly, Rational, VarSet, VecPoly, DEL, LAM, MU};
use crate::gdcore::{check_gd, AxiomReport, Parity, SuperAlgebra, SuperBasis, Tensor};
use crate::Result;
use num_traits::Zero;

/// Any sesquilinear bracket-like operation on a free module, indexed by
/// generator pairs. `None` marks an entry outside a truncation window.
pub trait LambdaTable {
    fn basis(&self) -> &SuperBasis;
    /// `[e_i λ e_j]` over `VarSet::dl()`, with `basis().dim()` components.
    fn entry(&self, i: usize, j: usize) -> Option<VecPoly>;
}

/// A sesquilinear action `L ⊗ M → M[λ]` of one generator set on another.
pub trait ActionTable {
    fn alg_basis(&self) -> &SuperBasis;
    fn mod_basis(&self) -> &SuperBasis;
    /// `ρ_λ(a_i, u_j)` over `VarSet::dl()`, with `mod_basis().dim()` components.
    fn entry(&self, a: usize, u: usize) -> Option<VecPoly>;
}

/// View a bracket table as the action of the module on itself.
struct SelfAction<'a, T: LambdaTable + ?Sized>(&'a T);

impl<'a, T: LambdaTable + ?Sized> ActionTable for SelfAction<'a, T> {
    fn alg_basis(&self) -> &SuperBasis {
        self.0.basis()
    }
    fn mod_basis(&self) -> &SuperBasis {
        self.0.basis()
    }
    fn entry(&self, a: usize, u: usize) -> Option<VecPoly> {
        self.0.entry(a, u)
    }
}

/// Total λ-bracket table on a free module.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaBracketTable {
    basis: SuperBasis,
    entries: Vec<Vec<VecPoly>>,
}

impl LambdaBracketTable {
    pub fn new(basis: SuperBasis, entries: Vec<Vec<VecPoly>>) -> Result<Self> {
        let d = basis.dim();
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch("bracket table".into()));
        }
        let vs = VarSet::dl();
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.vars() != &vs || e.dim() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "entry ({i},{j}) has wrong shape"
                    )));
                }
                let want = basis.parity(i).plus(basis.parity(j));
                for k in 0..d {
                    if !e.comp(k).is_zero() && basis.parity(k) != want {
                        return Err(Error::ParityViolation(format!(
                            "[{} λ {}] has a {} component",
                            basis.name(i),
                            basis.name(j),
                            basis.name(k)
                        )));
                    }
                }
            }
        }
        Ok(LambdaBracketTable { basis, entries })
    }

    pub fn zero(basis: SuperBasis) -> Self {
        let d = basis.dim();
        let vs = VarSet::dl();
        LambdaBracketTable { entries: vec![vec![VecPoly::zero(&vs, d); d]; d], basis }
    }

    pub fn basis(&self) -> &SuperBasis {
        &self.basis
    }

    pub fn entry_ref(&self, i: usize, j: usize) -> &VecPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<VecPoly>> {
        &self.entries
    }

    /// Restrict to a sub-list of generators, requiring bracket closure.
    pub fn subtable(&self, sub: &[usize]) -> Result<LambdaBracketTable> {
        let names: Vec<(String, Parity)> = sub
            .iter()
            .map(|&i| (self.basis.name(i).to_string(), self.basis.parity(i)))
            .collect();
        let sub_basis = SuperBasis::mixed(names)?;
        let vs = VarSet::dl();
        let mut entries = Vec::new();
        for &i in sub {
            let mut row = Vec::new();
            for &j in sub {
                let full = &self.entries[i][j];
                for k in 0..self.basis.dim() {
                    if !full.comp(k).is_zero() && !sub.contains(&k) {
                        return Err(Error::NotClosed(format!(
                            "[{} λ {}] involves {}",
                            self.basis.name(i),
                            self.basis.name(j),
                            self.basis.name(k)
                        )));
                    }
                }
                let comps: Vec<FormalPoly> = sub.iter().map(|&k| full.comp(k).clone()).collect();
                row.push(VecPoly::from_components(&vs, comps)?);
            }
            entries.push(row);
        }
        LambdaBracketTable::new(sub_basis, entries)
    }
}

impl LambdaTable for LambdaBracketTable {
    fn basis(&self) -> &SuperBasis {
        &self.basis
    }
    fn entry(&self, i: usize, j: usize) -> Option<VecPoly> {
        Some(self.entries[i][j].clone())
    }
}

/// Bracket table with window gaps.
#[derive(Clone, Debug)]
pub struct PartialTable {
    pub basis: SuperBasis,
    pub entries: Vec<Vec<Option<VecPoly>>>,
}

impl LambdaTable for PartialTable {
    fn basis(&self) -> &SuperBasis {
        &self.basis
    }
    fn entry(&self, i: usize, j: usize) -> Option<VecPoly> {
        self.entries[i][j].clone()
    }
}

/// The quadratic λ-bracket of a GD-superalgebra on the free module it
/// generates: `[a λ b] = [a,b] + (−1)^{|a||b|}(∂+λ)(b∘a) + λ(a∘b)`.
pub fn quadratic_bracket(alg: &SuperAlgebra) -> Result<LambdaBracketTable> {
    let gd = check_gd(alg)?;
    if !gd.passed {
        return Err(Error::PrerequisiteFailed {
            check: "gd",
            detail: format!("{} violation(s)", gd.violations.len()),
        });
    }
    quadratic_bracket_unchecked(alg)
}

/// The same construction without the GD precondition; used for
/// oracle-equivalence experiments on arbitrary two-product structures.
pub fn quadratic_bracket_unchecked(alg: &SuperAlgebra) -> Result<LambdaBracketTable> {
    let circ = alg.circ.as_ref().ok_or(Error::MissingTensor("circ"))?;
    let br = alg.bracket.as_ref().ok_or(Error::MissingTensor("bracket"))?;
    let d = alg.dim();
    let vs = VarSet::dl();
    let del = FormalPoly::var(&vs, DEL)?;
    let lam = FormalPoly::var(&vs, LAM)?;
    let del_lam = del.add(&lam)?;
    let mut entries = Vec::with_capacity(d);
    for i in 0..d {
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            let sign = alg.basis.parity(i).koszul(alg.basis.parity(j));
            let mut comps = Vec::with_capacity(d);
            for k in 0..d {
                let mut p = FormalPoly::constant(&vs, br[i][j][k].clone());
                let back = &circ[j][i][k];
                if !back.is_zero() {
                    let c = crate::exactpoly::rat_int(sign as i64) * back;
                    p = p.add(&del_lam.scale(&c))?;
                }
                if !circ[i][j][k].is_zero() {
                    p = p.add(&lam.scale(&circ[i][j][k]))?;
                }
                comps.push(p);
            }
            row.push(VecPoly::from_components(&vs, comps)?);
        }
        entries.push(row);
    }
    LambdaBracketTable::new(alg.basis.clone(), entries)
}

/// `[f(∂)x λ g(∂)y] = f(−λ) g(∂+λ) [x λ y]`.
pub fn bracket_eval(
    table: &LambdaBracketTable,
    f: &FormalPoly,
    x: usize,
    g: &FormalPoly,
    y: usize,
) -> Result<VecPoly> {
    let vs = VarSet::dl();
    if f.vars() != &vs || g.vars() != &vs {
        return Err(Error::VarSetMismatch("(∂,λ)".into(), "coefficients".into()));
    }
    if f.degree_in(LAM)? > 0 || g.degree_in(LAM)? > 0 {
        return Err(Error::Usage("module coefficients must be polynomials in ∂ only".into()));
    }
    if x >= table.basis.dim() || y >= table.basis.dim() {
        return Err(Error::DimensionMismatch("generator index out of range".into()));
    }
    let del = FormalPoly::var(&vs, DEL)?;
    let lam = FormalPoly::var(&vs, LAM)?;
    let f_sub = f.substitute(DEL, &lam.neg())?;
    let g_sub = g.substitute(DEL, &del.add(&lam)?)?;
    table.entries[x][y].mul_poly(&f_sub.mul(&g_sub)?)
}

// --- exact expansion helpers in k[∂,λ,μ] ------------------------------------

fn lift_entry_renamed(e: &VecPoly, nu: &str) -> VecPoly {
    // entry over (∂,λ): embed into (∂,λ,μ) sending λ to `nu`
    let vs3 = VarSet::dlm();
    let nu_idx = vs3.index_of(nu).expect("nu in dlm");
    e.embed(&vs3, &[0, nu_idx])
}

/// `ρ_ν(a, Σ_w f_w(∂,λ,μ)·w) = Σ_w f_w(∂ ↦ ∂+ν) · ρ_ν(a, w)` where the
/// table entry's λ is read as ν.
fn act_outer<T: ActionTable + ?Sized>(t: &T, a: usize, arg: &VecPoly, nu: &str) -> Option<VecPoly> {
    let vs3 = VarSet::dlm();
    let del = FormalPoly::var(&vs3, DEL).unwrap();
    let nu_var = FormalPoly::var(&vs3, nu).unwrap();
    let shift = del.add(&nu_var).unwrap();
    let mdim = t.mod_basis().dim();
    let mut out = VecPoly::zero(&vs3, mdim);
    for w in 0..mdim {
        let f = arg.comp(w);
        if f.is_zero() {
            continue;
        }
        let e = t.entry(a, w)?;
        let e3 = lift_entry_renamed(&e, nu);
        let f_shift = f.substitute(DEL, &shift).unwrap();
        out = out.add(&e3.mul_poly(&f_shift).unwrap()).unwrap();
    }
    Some(out)
}

/// `ρ_ν(Σ_c g_c(∂,λ,μ)·c, u) = Σ_c g_c(∂ ↦ −ν) · ρ(c,u)|_{λ:=ν}` for a
/// polynomial evaluation parameter `ν` (typically `λ+μ`).
fn act_first_poly<T: ActionTable + ?Sized>(
    t: &T,
    coefs: &VecPoly,
    u: usize,
    nu_poly: &FormalPoly,
) -> Option<VecPoly> {
    let vs3 = VarSet::dlm();
    let mdim = t.mod_basis().dim();
    let mut out = VecPoly::zero(&vs3, mdim);
    for c in 0..t.alg_basis().dim() {
        let g = coefs.comp(c);
        if g.is_zero() {
            continue;
        }
        let e = t.entry(c, u)?;
        let e3 = e.lift(&vs3).unwrap();
        let e_sub = e3.substitute(LAM, nu_poly).unwrap();
        let g_sub = g.substitute(DEL, &nu_poly.neg()).unwrap();
        out = out.add(&e_sub.mul_poly(&g_sub).unwrap()).unwrap();
    }
    Some(out)
}

fn unit3(dim: usize, k: usize) -> VecPoly {
    VecPoly::unit(&VarSet::dlm(), dim, k)
}

fn lam_plus_mu() -> FormalPoly {
    let vs3 = VarSet::dlm();
    FormalPoly::var(&vs3, LAM).unwrap().add(&FormalPoly::var(&vs3, MU).unwrap()).unwrap()
}

fn record_vec(
    report: &mut AxiomReport,
    axiom: &str,
    witness: String,
    residual: &VecPoly,
    names: &[String],
) {
    if !residual.is_zero() {
        report.record(axiom, witness, residual.display_with(names));
    }
}

/// Conformal skew-symmetry in the anti-symmetric convention
/// `[x λ y] = −(−1)^{|x||y|}[y_{−∂−λ} x]`; the substitution `λ ↦ −∂−λ` is a
/// plain polynomial substitution in `k[∂,λ]`.
pub fn check_skew<T: LambdaTable + ?Sized>(t: &T) -> AxiomReport {
    let mut report = AxiomReport::new("skew");
    let basis = t.basis();
    let d = basis.dim();
    let vs = VarSet::dl();
    let minus = FormalPoly::var(&vs, DEL)
        .unwrap()
        .neg()
        .sub(&FormalPoly::var(&vs, LAM).unwrap())
        .unwrap();
    let names: Vec<String> = basis.names().to_vec();
    for i in 0..d {
        for j in 0..d {
            let (Some(eij), Some(eji)) = (t.entry(i, j), t.entry(j, i)) else {
                report.skipped += 1;
                continue;
            };
            let sub = eji.substitute(LAM, &minus).unwrap();
            let sign = basis.parity(i).koszul(basis.parity(j));
            let res = eij.add(&sub.scale(&crate::exactpoly::rat_int(sign as i64))).unwrap();
            record_vec(
                &mut report,
                "skew-symmetry",
                format!("({},{})", basis.name(i), basis.name(j)),
                &res,
                &names,
            );
        }
    }
    report
}

/// Conformal Jacobi identity
/// `[x λ [y μ z]] − (−1)^{|x||y|}[y μ [x λ z]] = [[x λ y]_{λ+μ} z]`,
/// expanded exactly in `k[∂,λ,μ]`.
pub fn check_conformal_jacobi<T: LambdaTable + ?Sized>(t: &T) -> AxiomReport {
    let mut report = AxiomReport::new("conformal-jacobi");
    let action = SelfAction(t);
    let basis = t.basis();
    let d = basis.dim();
    let names: Vec<String> = basis.names().to_vec();
    let lpm = lam_plus_mu();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let Some(res) = jacobi_residual(t, &action, i, j, k, &lpm) else {
                    report.skipped += 1;
                    continue;
                };
                record_vec(
                    &mut report,
                    "conformal-jacobi",
                    format!("({},{},{})", basis.name(i), basis.name(j), basis.name(k)),
                    &res,
                    &names,
                );
            }
        }
    }
    report
}

/// Shared expansion of the Jacobi-shaped identity for an action `ρ` of an
/// algebra table `L`:
/// `ρ_λ(a, ρ_μ(b, x)) − (−1)^{|a||b|} ρ_μ(b, ρ_λ(a, x)) − ρ_{λ+μ}([a λ b], x)`.
pub(crate) fn jacobi_residual<L: LambdaTable + ?Sized, R: ActionTable + ?Sized>(
    alg: &L,
    rho: &R,
    a: usize,
    b: usize,
    x: usize,
    lpm: &FormalPoly,
) -> Option<VecPoly> {
    let mdim = rho.mod_basis().dim();
    let t1 = act_outer(rho, a, &act_outer(rho, b, &unit3(mdim, x), MU)?, LAM)?;
    let t2 = act_outer(rho, b, &act_outer(rho, a, &unit3(mdim, x), LAM)?, MU)?;
    let sign = alg.basis().parity(a).koszul(alg.basis().parity(b));
    let inner = alg.entry(a, b)?.lift(&VarSet::dlm()).unwrap();
    let rhs = act_first_poly(rho, &inner, x, lpm)?;
    Some(t1.sub(&t2.scale(&crate::exactpoly::rat_int(sign as i64))).unwrap().sub(&rhs).unwrap())
}

/// Poisson conformal superalgebra: a Lie table and a commutative
/// associative table on one basis.
#[derive(Clone, Debug)]
pub struct PoissonConformal {
    pub basis: SuperBasis,
    pub lie: LambdaBracketTable,
    pub assoc: LambdaBracketTable,
}

impl PoissonConformal {
    pub fn check(&self) -> AxiomReport {
        check_poisson_conformal(&self.lie, &self.assoc)
    }
}

/// Verify the Poisson conformal axioms on generator pairs/triples:
/// the Lie table passes skew and conformal Jacobi, the associative table is
/// conformally commutative and associative, and the Leibniz rule
/// `[a λ (b μ c)] = ([a λ b]_{λ+μ} c) + (−1)^{|a||b|}(b μ [a λ c])` holds.
pub fn check_poisson_conformal<L, A>(lie: &L, assoc: &A) -> AxiomReport
where
    L: LambdaTable + ?Sized,
    A: LambdaTable + ?Sized,
{
    let mut report = check_skew(lie);
    report.check = "poisson-conformal".into();
    report.merge(check_conformal_jacobi(lie));

    let basis = lie.basis();
    let d = basis.dim();
    let names: Vec<String> = basis.names().to_vec();
    let vs = VarSet::dl();
    let minus = FormalPoly::var(&vs, DEL)
        .unwrap()
        .neg()
        .sub(&FormalPoly::var(&vs, LAM).unwrap())
        .unwrap();
    let lpm = lam_plus_mu();
    let lie_a = SelfAction(lie);
    let assoc_a = SelfAction(assoc);

    for i in 0..d {
        for j in 0..d {
            // conformal commutativity of the product (no minus sign)
            match (assoc.entry(i, j), assoc.entry(j, i)) {
                (Some(eij), Some(eji)) => {
                    let sub = eji.substitute(LAM, &minus).unwrap();
                    let sign = basis.parity(i).koszul(basis.parity(j));
                    let res =
                        eij.sub(&sub.scale(&crate::exactpoly::rat_int(sign as i64))).unwrap();
                    record_vec(
                        &mut report,
                        "conformal-commutativity",
                        format!("({},{})", basis.name(i), basis.name(j)),
                        &res,
                        &names,
                    );
                }
                _ => report.skipped += 1,
            }
            for k in 0..d {
                // conformal associativity
                let assoc_res = (|| {
                    let inner = act_outer(&assoc_a, j, &unit3(d, k), MU)?;
                    let lhs = act_outer(&assoc_a, i, &inner, LAM)?;
                    let ab = assoc.entry(i, j)?.lift(&VarSet::dlm()).unwrap();
                    let rhs = act_first_poly(&assoc_a, &ab, k, &lpm)?;
                    Some(lhs.sub(&rhs).unwrap())
                })();
                match assoc_res {
                    Some(res) => record_vec(
                        &mut report,
                        "conformal-associativity",
                        format!("({},{},{})", basis.name(i), basis.name(j), basis.name(k)),
                        &res,
                        &names,
                    ),
                    None => report.skipped += 1,
                }
                // conformal Leibniz rule
                let leib_res = (|| {
                    let inner = act_outer(&assoc_a, j, &unit3(d, k), MU)?;
                    let lhs = act_outer(&lie_a, i, &inner, LAM)?;
                    let ab = lie.entry(i, j)?.lift(&VarSet::dlm()).unwrap();
                    let rhs1 = act_first_poly(&assoc_a, &ab, k, &lpm)?;
                    let inner2 = act_outer(&lie_a, i, &unit3(d, k), LAM)?;
                    let rhs2 = act_outer(&assoc_a, j, &inner2, MU)?;
                    let sign = basis.parity(i).koszul(basis.parity(j));
                    Some(
                        lhs.sub(&rhs1)
                            .unwrap()
                            .sub(&rhs2.scale(&crate::exactpoly::rat_int(sign as i64)))
                            .unwrap(),
                    )
                })();
                match leib_res {
                    Some(res) => record_vec(
                        &mut report,
                        "conformal-leibniz",
                        format!("({},{},{})", basis.name(i), basis.name(j), basis.name(k)),
                        &res,
                        &names,
                    ),
                    None => report.skipped += 1,
                }
            }
        }
    }
    report
}

/// Current Poisson conformal algebra of an ordinary Poisson superalgebra:
/// on generators `(a λ b) = ab` and `[a λ b] = {a,b}`, constant in `∂`.
pub fn build_current_poisson(p: &SuperAlgebra) -> Result<PoissonConformal> {
    let rep = crate::gdcore::check_poisson_super(p)?;
    if !rep.passed {
        return Err(Error::PrerequisiteFailed {
            check: "poisson",
            detail: format!("{} violation(s)", rep.violations.len()),
        });
    }
    let assoc = constant_table(&p.basis, p.circ.as_ref().unwrap())?;
    let lie = constant_table(&p.basis, p.bracket.as_ref().unwrap())?;
    Ok(PoissonConformal { basis: p.basis.clone(), lie, assoc })
}

fn constant_table(basis: &SuperBasis, t: &Tensor) -> Result<LambdaBracketTable> {
    let d = basis.dim();
    let vs = VarSet::dl();
    let mut entries = Vec::with_capacity(d);
    for i in 0..d {
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            let comps: Vec<FormalPoly> =
                (0..d).map(|k| FormalPoly::constant(&vs, t[i][j][k].clone())).collect();
            row.push(VecPoly::from_components(&vs, comps)?);
        }
        entries.push(row);
    }
    LambdaBracketTable::new(basis.clone(), entries)
}

/// Poisson conformal structure on `H ⊗ p` for a Poisson superalgebra `p`
/// with an even derivation `d`: `(a λ b) = ab` and
/// `[a λ b] = {a,b} + ∂·d(a)b + λ·d(ab)`.
///
/// The Lie table coincides with the quadratic bracket of the GD-superalgebra
/// carried by the same space via `a∘b = a·d(b)`, `[a,b] = {a,b}`.
pub fn build_lpd(p: &SuperAlgebra, d_mat: &[Vec<Rational>]) -> Result<PoissonConformal> {
    let rep = crate::gdcore::check_poisson_super(p)?;
    if !rep.passed {
        return Err(Error::PrerequisiteFailed {
            check: "poisson",
            detail: format!("{} violation(s)", rep.violations.len()),
        });
    }
    let der = crate::gdcore::check_derivation(p, d_mat)?;
    if !der.passed {
        return Err(Error::NotADerivation(format!("{} violation(s)", der.violations.len())));
    }
    let dim = p.dim();
    let circ = p.circ.as_ref().unwrap();
    let br = p.bracket.as_ref().unwrap();
    let apply_d = |v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, out_i) in out.iter_mut().enumerate() {
                *out_i += c * &d_mat[i][j];
            }
        }
        out
    };
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[i] = crate::exactpoly::rat_int(1);
        v
    };
    let vs = VarSet::dl();
    let del = FormalPoly::var(&vs, DEL)?;
    let lam = FormalPoly::var(&vs, LAM)?;
    let mut entries = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let da_b = SuperAlgebra::apply(circ, &apply_d(&unit(i)), &unit(j));
            let d_ab = apply_d(&SuperAlgebra::apply(circ, &unit(i), &unit(j)));
            let mut comps = Vec::with_capacity(dim);
            for k in 0..dim {
                let mut poly = FormalPoly::constant(&vs, br[i][j][k].clone());
                if !da_b[k].is_zero() {
                    poly = poly.add(&del.scale(&da_b[k]))?;
                }
                if !d_ab[k].is_zero() {
                    poly = poly.add(&lam.scale(&d_ab[k]))?;
                }
                comps.push(poly);
            }
            row.push(VecPoly::from_components(&vs, comps)?);
        }
        entries.push(row);
    }
    let lie = LambdaBracketTable::new(p.basis.clone(), entries)?;
    let assoc = constant_table(&p.basis, circ)?;
    Ok(PoissonConformal { basis: p.basis.clone(), lie, assoc })
}

/// Read the GD structure constants back off a table whose entries are
/// linear in `∂` and `λ`. Inverse of [`quadratic_bracket`].
pub fn gd_from_table(table: &LambdaBracketTable) -> Result<SuperAlgebra> {
    let d = table.basis.dim();
    let mut circ = crate::gdcore::zero_tensor(d);
    let mut bracket = crate::gdcore::zero_tensor(d);
    for i in 0..d {
        for j in 0..d {
            let sign = table.basis.parity(i).koszul(table.basis.parity(j));
            let e = &table.entries[i][j];
            for k in 0..d {
                let p = e.comp(k);
                for (exp, _) in p.terms() {
                    if exp.iter().sum::<u32>() > 1 {
                        return Err(Error::Usage(format!(
                            "entry [{} λ {}] is not linear in ∂ and λ",
                            table.basis.name(i),
                            table.basis.name(j)
                        )));
                    }
                }
                let c0 = p.coeff(&[0, 0]);
                let c_del = p.coeff(&[1, 0]);
                let c_lam = p.coeff(&[0, 1]);
                bracket[i][j][k] = c0;
                // the ∂-coefficient is (−1)^{|i||j|}(e_j ∘ e_i); λ adds e_i ∘ e_j
                circ[j][i][k] = crate::exactpoly::rat_int(sign as i64) * &c_del;
                circ[i][j][k] = &c_lam - &c_del;
            }
        }
    }
    SuperAlgebra::new(table.basis.clone(), Some(circ), Some(bracket))
}

/// Cocycle data: same shape as a representation table.
pub type CocycleTable = crate::confrep::ReprTable;

/// Verify the 1-cocycle identity
/// `φ_{λ+μ}([a λ b],x) = φ_λ(a,ρ_μ(b,x)) + ρ_λ(a,φ_μ(b,x))
///   − (−1)^{|a||b|}(φ_μ(b,ρ_λ(a,x)) + ρ_μ(b,φ_λ(a,x)))`.
pub fn check_cocycle<L, R, P>(lie: &L, rho: &R, phi: &P) -> AxiomReport
where
    L: LambdaTable + ?Sized,
    R: ActionTable + ?Sized,
    P: ActionTable + ?Sized,
{
    let mut report = AxiomReport::new("cocycle");
    let basis = lie.basis();
    let d = basis.dim();
    let mdim = rho.mod_basis().dim();
    let names: Vec<String> = rho.mod_basis().names().to_vec();
    let lpm = lam_plus_mu();
    for a in 0..d {
        for b in 0..d {
            let sign = basis.parity(a).koszul(basis.parity(b));
            for x in 0..mdim {
                let res = (|| {
                    let lhs = {
                        let ab = lie.entry(a, b)?.lift(&VarSet::dlm()).unwrap();
                        act_first_poly(phi, &ab, x, &lpm)?
                    };
                    let t1 = act_outer(phi, a, &act_outer(rho, b, &unit3(mdim, x), MU)?, LAM)?;
                    let t2 = act_outer(rho, a, &act_outer(phi, b, &unit3(mdim, x), MU)?, LAM)?;
                    let t3 = act_outer(phi, b, &act_outer(rho, a, &unit3(mdim, x), LAM)?, MU)?;
                    let t4 = act_outer(rho, b, &act_outer(phi, a, &unit3(mdim, x), LAM)?, MU)?;
                    let s = crate::exactpoly::rat_int(sign as i64);
                    Some(
                        lhs.sub(&t1)
                            .unwrap()
                            .sub(&t2)
                            .unwrap()
                            .add(&t3.scale(&s))
                            .unwrap()
                            .add(&t4.scale(&s))
                            .unwrap(),
                    )
                })();
                match res {
                    Some(r) => record_vec(
                        &mut report,
                        "cocycle",
                        format!(
                            "({},{};{})",
                            basis.name(a),
                            basis.name(b),
                            rho.mod_basis().name(x)
                        ),
                        &r,
                        &names,
                    ),
                    None => report.skipped += 1,
                }
            }
        }
    }
    report
}

/// The twisted action `ρ̂_λ(a,x) = [a λ x] + λ(a λ x)` of a Lie conformal
/// subalgebra (given by generator indices) on the whole Poisson conformal
/// algebra. The sub-list must be closed under the Lie table.
pub fn twisted_rep(p: &PoissonConformal, sub: &[usize]) -> Result<crate::confrep::ReprTable> {
    twisted_rep_tables(&p.lie, &p.assoc, sub)
}

/// Windowed variant of [`twisted_rep`]; entries outside the window stay `None`.
pub fn twisted_rep_tables<L, A>(lie: &L, assoc: &A, sub: &[usize]) -> Result<crate::confrep::ReprTable>
where
    L: LambdaTable + ?Sized,
    A: LambdaTable + ?Sized,
{
    let basis = lie.basis();
    for &a in sub {
        for &b in sub {
            if let Some(e) = lie.entry(a, b) {
                for k in 0..basis.dim() {
                    if !e.comp(k).is_zero() && !sub.contains(&k) {
                        return Err(Error::NotClosed(format!(
                            "[{} λ {}] involves {}",
                            basis.name(a),
                            basis.name(b),
                            basis.name(k)
                        )));
                    }
                }
            }
        }
    }
    let alg_basis = SuperBasis::mixed(
        sub.iter().map(|&i| (basis.name(i).to_string(), basis.parity(i))).collect(),
    )?;
    let vs = VarSet::dl();
    let lam = FormalPoly::var(&vs, LAM)?;
    let mut entries = Vec::with_capacity(sub.len());
    for &a in sub {
        let mut row = Vec::with_capacity(basis.dim());
        for x in 0..basis.dim() {
            let e = match (lie.entry(a, x), assoc.entry(a, x)) {
                (Some(l), Some(s)) => Some(l.add(&s.mul_poly(&lam)?)?),
                _ => None,
            };
            row.push(e);
        }
        entries.push(row);
    }
    crate::confrep::ReprTable::new_partial(alg_basis, basis.clone(), entries)
}

/// The cocycle `φ_λ(a,x) = λ(a λ x)` read off the associative product.
pub fn lambda_mult_cocycle<A>(assoc: &A, sub: &[usize]) -> Result<CocycleTable>
where
    A: LambdaTable + ?Sized,
{
    let basis = assoc.basis();
    let alg_basis = SuperBasis::mixed(
        sub.iter().map(|&i| (basis.name(i).to_string(), basis.parity(i))).collect(),
    )?;
    let vs = VarSet::dl();
    let lam = FormalPoly::var(&vs, LAM)?;
    let mut entries = Vec::with_capacity(sub.len());
    for &a in sub {
        let mut row = Vec::with_capacity(basis.dim());
        for x in 0..basis.dim() {
            row.push(match assoc.entry(a, x) {
                Some(s) => Some(s.mul_poly(&lam)?),
                None => None,
            });
        }
        entries.push(row);
    }
    crate::confrep::ReprTable::new_partial(alg_basis, basis.clone(), entries)
}

/// Regular action of a Lie table restricted to a sub-list on the full basis.
pub fn regular_action_tables<L>(lie: &L, sub: &[usize]) -> Result<crate::confrep::ReprTable>
where
    L: LambdaTable + ?Sized,
{
    let basis = lie.basis();
    let alg_basis = SuperBasis::mixed(
        sub.iter().map(|&i| (basis.name(i).to_string(), basis.parity(i))).collect(),
    )?;
    let entries: Vec<Vec<Option<VecPoly>>> =
        sub.iter().map(|&a| (0..basis.dim()).map(|x| lie.entry(a, x)).collect()).collect();
    crate::confrep::ReprTable::new_partial(alg_basis, basis.clone(), entries)
}

/// The truncated symbol algebra of the conformal Weyl algebra: generators
/// `x, x², …, x^cap` with `(x^n λ x^m) = x^{n+m}` and
/// `[x^n λ x^m] = (n∂ + (n+m)λ) x^{n+m−1}`, entries undefined beyond the cap.
pub fn gr_cend_window(cap: usize) -> (PartialTable, PartialTable) {
    assert!(cap >= 1);
    let labels: Vec<String> = (1..=cap).map(|n| format!("x^{n}")).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let basis = SuperBasis::even(&refs);
    let vs = VarSet::dl();
    let del = FormalPoly::var(&vs, DEL).unwrap();
    let lam = FormalPoly::var(&vs, LAM).unwrap();
    let mut lie = Vec::with_capacity(cap);
    let mut assoc = Vec::with_capacity(cap);
    for n in 1..=cap {
        let mut lrow = Vec::with_capacity(cap);
        let mut arow = Vec::with_capacity(cap);
        for m in 1..=cap {
            arow.push(if n + m <= cap {
                let mut v = VecPoly::zero(&vs, cap);
                v.set_comp(n + m - 1, FormalPoly::one(&vs));
                Some(v)
            } else {
                None
            });
            lrow.push(if n + m - 1 <= cap {
                let mut v = VecPoly::zero(&vs, cap);
                let poly = del
                    .scale(&crate::exactpoly::rat_int(n as i64))
                    .add(&lam.scale(&crate::exactpoly::rat_int((n + m) as i64)))
                    .unwrap();
                v.set_comp(n + m - 2, poly);
                Some(v)
            } else {
                None
            });
        }
        lie.push(lrow);
        assoc.push(arow);
    }
    (PartialTable { basis: basis.clone(), entries: lie }, PartialTable { basis, entries: assoc })
}
