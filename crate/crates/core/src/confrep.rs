//! Conformal representations: module axiom checks, the general conformal
//! matrix algebra `gc_{n|m}`, faithfulness tests, and the finite faithful
//! module built from the differential Poisson envelope.

use num_traits::Zero;

use crate::confalg::{
    jacobi_residual, quadratic_bracket, ActionTable, LambdaBracketTable, LambdaTable,
};
use crate::envelope::{build_pd_envelope, PdEnvelope, Truncation};
use crate::error::Error;
use crate::exactpoly::{rat_int, FormalPoly, Rational, VarSet, VecPoly, DEL, LAM, MU, XVAR};
use crate::gdcore::{AxiomReport, Parity, SuperAlgebra, SuperBasis};
use crate::linalg::kernel_of_columns;
use crate::Result;

/// Conformal representation table: for each algebra generator and module
/// generator, the value `ρ_λ(a, e_j)` over the module basis. Entries may be
/// `None` for windowed module data.
#[derive(Clone, Debug)]
pub struct ReprTable {
    alg_basis: SuperBasis,
    mod_basis: SuperBasis,
    entries: Vec<Vec<Option<VecPoly>>>,
}

impl ReprTable {
    pub fn new_partial(
        alg_basis: SuperBasis,
        mod_basis: SuperBasis,
        entries: Vec<Vec<Option<VecPoly>>>,
    ) -> Result<Self> {
        if entries.len() != alg_basis.dim() || entries.iter().any(|r| r.len() != mod_basis.dim()) {
            return Err(Error::DimensionMismatch("representation table".into()));
        }
        let vs = VarSet::dl();
        for (a, row) in entries.iter().enumerate() {
            for (u, e) in row.iter().enumerate() {
                if let Some(e) = e {
                    if e.vars() != &vs || e.dim() != mod_basis.dim() {
                        return Err(Error::DimensionMismatch(format!(
                            "entry ({a},{u}) has wrong shape"
                        )));
                    }
                    let want = alg_basis.parity(a).plus(mod_basis.parity(u));
                    for k in 0..mod_basis.dim() {
                        if !e.comp(k).is_zero() && mod_basis.parity(k) != want {
                            return Err(Error::ParityViolation(format!(
                                "ρ({},{}) has a {} component",
                                alg_basis.name(a),
                                mod_basis.name(u),
                                mod_basis.name(k)
                            )));
                        }
                    }
                }
            }
        }
        Ok(ReprTable { alg_basis, mod_basis, entries })
    }

    pub fn new_total(
        alg_basis: SuperBasis,
        mod_basis: SuperBasis,
        entries: Vec<Vec<VecPoly>>,
    ) -> Result<Self> {
        let entries = entries.into_iter().map(|row| row.into_iter().map(Some).collect()).collect();
        ReprTable::new_partial(alg_basis, mod_basis, entries)
    }

    pub fn entry_opt(&self, a: usize, u: usize) -> Option<&VecPoly> {
        self.entries[a][u].as_ref()
    }

    /// Render `ρ(a)` as a module-size matrix of polynomials in `(∂, λ)`,
    /// the column form of a conformal endomorphism.
    pub fn matrix_strings(&self, a: usize) -> Vec<Vec<String>> {
        let d = self.mod_basis.dim();
        let mut out = vec![vec!["·".to_string(); d]; d];
        for (j, e) in self.entries[a].iter().enumerate() {
            if let Some(e) = e {
                for (i, slot) in out.iter_mut().enumerate() {
                    slot[j] = format!("{}", e.comp(i));
                }
            }
        }
        out
    }
}

impl ActionTable for ReprTable {
    fn alg_basis(&self) -> &SuperBasis {
        &self.alg_basis
    }
    fn mod_basis(&self) -> &SuperBasis {
        &self.mod_basis
    }
    fn entry(&self, a: usize, u: usize) -> Option<VecPoly> {
        self.entries[a][u].clone()
    }
}

/// The regular representation of a bracket table on itself.
pub fn regular_repr(table: &LambdaBracketTable) -> ReprTable {
    let d = table.basis().dim();
    let entries: Vec<Vec<Option<VecPoly>>> =
        (0..d).map(|a| (0..d).map(|u| table.entry(a, u)).collect()).collect();
    ReprTable { alg_basis: table.basis().clone(), mod_basis: table.basis().clone(), entries }
}

/// Conformal module axiom
/// `ρ_λ(a,ρ_μ(b,x)) − (−1)^{|a||b|}ρ_μ(b,ρ_λ(a,x)) = ρ_{λ+μ}([a λ b],x)`,
/// expanded exactly in `k[∂,λ,μ]`.
pub fn check_module<L, R>(alg: &L, rho: &R) -> AxiomReport
where
    L: LambdaTable + ?Sized,
    R: ActionTable + ?Sized,
{
    let mut report = AxiomReport::new("module");
    let abasis = rho.alg_basis();
    let d = abasis.dim();
    let mdim = rho.mod_basis().dim();
    let names: Vec<String> = rho.mod_basis().names().to_vec();
    let vs3 = VarSet::dlm();
    let lpm =
        FormalPoly::var(&vs3, LAM).unwrap().add(&FormalPoly::var(&vs3, MU).unwrap()).unwrap();
    for a in 0..d {
        for b in 0..d {
            for x in 0..mdim {
                match jacobi_residual(alg, rho, a, b, x, &lpm) {
                    Some(res) => {
                        if !res.is_zero() {
                            report.record(
                                "module-jacobi",
                                format!(
                                    "({},{};{})",
                                    abasis.name(a),
                                    abasis.name(b),
                                    rho.mod_basis().name(x)
                                ),
                                res.display_with(&names),
                            );
                        }
                    }
                    None => report.skipped += 1,
                }
            }
        }
    }
    report
}

// --- gc_{n|m} ----------------------------------------------------------------

/// Element of the conformal matrix algebra `gc_{n|m}`, presented as an
/// `(n+m)×(n+m)` matrix over `k[∂,λ,μ,x]` with a block parity.
#[derive(Clone, Debug, PartialEq)]
pub struct GcElement {
    pub n: usize,
    pub m: usize,
    pub parity: Parity,
    pub entries: Vec<Vec<FormalPoly>>,
}

impl GcElement {
    fn zero(n: usize, m: usize, parity: Parity) -> GcElement {
        let vs = VarSet::dlmx();
        GcElement { n, m, parity, entries: vec![vec![FormalPoly::zero(&vs); n + m]; n + m] }
    }

    /// The monomial unit `x^k E_{ij}`.
    pub fn unit(n: usize, m: usize, k: u32, i: usize, j: usize) -> GcElement {
        let block = |r: usize| if r < n { Parity::Even } else { Parity::Odd };
        let parity = block(i).plus(block(j));
        let mut out = GcElement::zero(n, m, parity);
        let vs = VarSet::dlmx();
        out.entries[i][j] = FormalPoly::var(&vs, XVAR).unwrap().pow(k);
        out
    }

    pub fn size(&self) -> usize {
        self.n + self.m
    }

    fn map(&self, f: impl Fn(&FormalPoly) -> FormalPoly) -> GcElement {
        GcElement {
            n: self.n,
            m: self.m,
            parity: self.parity,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    fn subst_x(&self, expr: &FormalPoly) -> GcElement {
        self.map(|p| p.substitute(XVAR, expr).unwrap())
    }

    fn mul(&self, other: &GcElement) -> GcElement {
        let s = self.size();
        let vs = VarSet::dlmx();
        let mut out = GcElement::zero(self.n, self.m, self.parity.plus(other.parity));
        for i in 0..s {
            for j in 0..s {
                let mut acc = FormalPoly::zero(&vs);
                for k in 0..s {
                    if self.entries[i][k].is_zero() || other.entries[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]).unwrap()).unwrap();
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    fn add(&self, other: &GcElement) -> GcElement {
        let mut out = self.clone();
        for i in 0..self.size() {
            for j in 0..self.size() {
                out.entries[i][j] = out.entries[i][j].add(&other.entries[i][j]).unwrap();
            }
        }
        out
    }

    fn scale(&self, c: &Rational) -> GcElement {
        self.map(|p| p.scale(c))
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }

    /// Split by powers of `∂`: pairs `(p, N_p)` with `N_p` free of `∂`.
    fn split_del(&self) -> Vec<(u32, GcElement)> {
        let vs = VarSet::dlmx();
        let del_idx = vs.index_of(DEL).unwrap();
        let mut parts: std::collections::BTreeMap<u32, GcElement> = Default::default();
        for i in 0..self.size() {
            for j in 0..self.size() {
                for (e, c) in self.entries[i][j].terms() {
                    let p = e[del_idx];
                    let mut stripped = e.clone();
                    stripped[del_idx] = 0;
                    let part = parts
                        .entry(p)
                        .or_insert_with(|| GcElement::zero(self.n, self.m, self.parity));
                    let mut mono = FormalPoly::one(&vs);
                    for (vi, &pw) in stripped.iter().enumerate() {
                        if pw > 0 {
                            let name = vs.names()[vi].clone();
                            let v = FormalPoly::var(&vs, &name).unwrap();
                            mono = mono.mul(&v.pow(pw)).unwrap();
                        }
                    }
                    part.entries[i][j] = part.entries[i][j].add(&mono.scale(c)).unwrap();
                }
            }
        }
        parts.into_iter().collect()
    }
}

/// `[A λ B] = A(x)B(x+λ) − (−1)^{|A||B|}B(x)A(x−∂−λ)` for matrices over
/// `k[x]`; sesquilinearity handles `∂`-dependent arguments.
pub fn gc_bracket(a: &GcElement, b: &GcElement) -> Result<GcElement> {
    if a.size() != b.size() || a.n != b.n {
        return Err(Error::DimensionMismatch("gc elements of different shape".into()));
    }
    let vs = VarSet::dlmx();
    let lam = FormalPoly::var(&vs, LAM)?;
    Ok(gc_act_pure_left(a, &lam, b))
}

/// `[A ν M]` for `A` free of `∂` and `M = Σ ∂^p N_p`:
/// `Σ (∂+ν)^p (A(x)N_p(x+ν) − (−1)^{|A||M|} N_p(x) A(x−∂−ν))`.
fn gc_act_pure_left(a: &GcElement, nu: &FormalPoly, m: &GcElement) -> GcElement {
    let vs = VarSet::dlmx();
    let x = FormalPoly::var(&vs, XVAR).unwrap();
    let del = FormalPoly::var(&vs, DEL).unwrap();
    let sign = rat_int(a.parity.koszul(m.parity) as i64);
    let x_plus = x.add(nu).unwrap();
    let x_minus = x.sub(&del).unwrap().sub(nu).unwrap();
    let mut out = GcElement::zero(a.n, a.m, a.parity.plus(m.parity));
    for (p, np) in m.split_del() {
        let shift = del.add(nu).unwrap().pow(p);
        let t1 = a.mul(&np.subst_x(&x_plus));
        let t2 = np.mul(&a.subst_x(&x_minus)).scale(&-sign.clone());
        let term = t1.add(&t2).map(|q| q.mul(&shift).unwrap());
        out = out.add(&term);
    }
    out
}

/// `[K ν C]` for `C` free of `∂` and `K = Σ ∂^p K_p`:
/// `Σ (−ν)^p (K_p(x)C(x+ν) − (−1)^{|K||C|} C(x) K_p(x−∂−ν))`.
fn gc_act_pure_right(k: &GcElement, nu: &FormalPoly, c: &GcElement) -> GcElement {
    let vs = VarSet::dlmx();
    let x = FormalPoly::var(&vs, XVAR).unwrap();
    let del = FormalPoly::var(&vs, DEL).unwrap();
    let sign = rat_int(k.parity.koszul(c.parity) as i64);
    let x_plus = x.add(nu).unwrap();
    let x_minus = x.sub(&del).unwrap().sub(nu).unwrap();
    let mut out = GcElement::zero(k.n, k.m, k.parity.plus(c.parity));
    for (p, kp) in k.split_del() {
        let factor = nu.neg().pow(p);
        let t1 = kp.mul(&c.subst_x(&x_plus));
        let t2 = c.mul(&kp.subst_x(&x_minus)).scale(&-sign.clone());
        let term = t1.add(&t2).map(|q| q.mul(&factor).unwrap());
        out = out.add(&term);
    }
    out
}

/// Verify skew-symmetry and the conformal Jacobi identity of the
/// `gc_{n|m}` bracket on all monomial units `x^k E_{ij}` with `k ≤ cap`.
pub fn check_gc_jacobi(n: usize, m: usize, cap: u32) -> Result<AxiomReport> {
    if n + m == 0 {
        return Err(Error::DimensionMismatch("gc_{0|0} is empty".into()));
    }
    let mut report = AxiomReport::new("gc");
    let vs = VarSet::dlmx();
    let lam = FormalPoly::var(&vs, LAM)?;
    let mu = FormalPoly::var(&vs, MU)?;
    let lpm = lam.add(&mu)?;
    let size = n + m;
    let mut units = Vec::new();
    for k in 0..=cap {
        for i in 0..size {
            for j in 0..size {
                units.push((k, i, j, GcElement::unit(n, m, k, i, j)));
            }
        }
    }
    let label = |k: &u32, i: &usize, j: &usize| format!("x^{k}E[{i},{j}]");
    for (k1, i1, j1, a) in &units {
        for (k2, i2, j2, b) in &units {
            // skew: [A λ B] + (−1)^{|A||B|} ([B λ A] with λ ↦ −∂−λ) = 0
            let ab = gc_bracket(a, b)?;
            let ba = gc_bracket(b, a)?;
            let minus = FormalPoly::var(&vs, DEL)?.neg().sub(&lam)?;
            let swapped = ba.map(|p| p.substitute(LAM, &minus).unwrap());
            let sign = rat_int(a.parity.koszul(b.parity) as i64);
            let res = ab.add(&swapped.scale(&sign));
            if !res.is_zero() {
                report.record(
                    "gc-skew",
                    format!("({},{})", label(k1, i1, j1), label(k2, i2, j2)),
                    "nonzero matrix residual".into(),
                );
            }
            for (k3, i3, j3, c) in &units {
                // [A λ [B μ C]] − (−1)^{|A||B|}[B μ [A λ C]] − [[A λ B]_{λ+μ} C]
                let bc = gc_act_pure_left(b, &mu, c);
                let t1 = gc_act_pure_left(a, &lam, &bc);
                let ac = gc_act_pure_left(a, &lam, c);
                let t2 = gc_act_pure_left(b, &mu, &ac)
                    .scale(&rat_int(a.parity.koszul(b.parity) as i64));
                let ab = gc_bracket(a, b)?;
                let t3 = gc_act_pure_right(&ab, &lpm, c);
                let res = t1.add(&t2.scale(&rat_int(-1))).add(&t3.scale(&rat_int(-1)));
                if !res.is_zero() {
                    report.record(
                        "gc-jacobi",
                        format!(
                            "({},{},{})",
                            label(k1, i1, j1),
                            label(k2, i2, j2),
                            label(k3, i3, j3)
                        ),
                        "nonzero matrix residual".into(),
                    );
                    if report.violations.len() > 32 {
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

// --- finite faithful module --------------------------------------------------

/// The finite conformal module `U_{−1} ⊕ U_0/N` over the quadratic
/// conformal algebra of a special GD-superalgebra.
pub struct FfrModule {
    /// Names of the `U_{−1}` block (the algebra generators).
    pub umin1_names: Vec<String>,
    /// Monomial representatives of `U_0/N`, rendered with generator names.
    pub u0q_names: Vec<String>,
    /// Dimension of `N = {u ∈ U_0 : V·u = 0}` inside the window `U_0`.
    pub n_dim: usize,
    /// The action table on the concatenated basis.
    pub action: ReprTable,
    /// Module axiom report for the assembled table.
    pub module_report: AxiomReport,
}

impl FfrModule {
    pub fn rank(&self) -> usize {
        self.umin1_names.len() + self.u0q_names.len()
    }
}

/// Assemble the finite faithful conformal module from the truncated
/// differential Poisson envelope, running the construction at the given
/// window and at degree `R+1` and requiring the quotient data to agree.
///
/// On `u ∈ U_0` the action is `ρ̂_λ(a,u) = {a,u} + ∂·d(a)u + λ(d(au) + au)`
/// read in the quotient (the part below weight −1 is discarded with the
/// module quotient); on `u ∈ U_{−1} ≅ V` it is the quadratic λ-bracket.
pub fn build_ffr(algebra: &SuperAlgebra, trunc: Truncation) -> Result<FfrModule> {
    let env1 = build_pd_envelope(algebra, trunc)?;
    let bigger = Truncation {
        max_diff_order: trunc.max_diff_order,
        max_degree: trunc.max_degree + 1,
        max_bracket_depth: trunc.max_bracket_depth,
    };
    let env2 = build_pd_envelope(algebra, bigger)?;
    let m1 = assemble_ffr(algebra, &env1)?;
    let m2 = assemble_ffr(algebra, &env2)?;
    if m1.umin1_names != m2.umin1_names || m1.u0q_names != m2.u0q_names {
        return Err(Error::NotStabilized(format!(
            "module bases differ across windows: {:?} vs {:?}",
            m1.u0q_names, m2.u0q_names
        )));
    }
    if !tables_equal(&m1.action, &m2.action) {
        return Err(Error::NotStabilized("action tables differ across windows".into()));
    }
    if !m1.module_report.passed {
        return Err(Error::NotStabilized(format!(
            "module axiom residual on a stabilized build: {:?}",
            m1.module_report.violations.first()
        )));
    }
    let bound = algebra.dim() * algebra.dim();
    if m1.u0q_names.len() > bound {
        return Err(Error::DimensionMismatch(format!(
            "dim(U_0/N) = {} exceeds (dim V)² = {}",
            m1.u0q_names.len(),
            bound
        )));
    }
    Ok(m1)
}

fn tables_equal(a: &ReprTable, b: &ReprTable) -> bool {
    if a.alg_basis.dim() != b.alg_basis.dim() || a.mod_basis.dim() != b.mod_basis.dim() {
        return false;
    }
    for i in 0..a.alg_basis.dim() {
        for j in 0..a.mod_basis.dim() {
            if a.entries[i][j] != b.entries[i][j] {
                return false;
            }
        }
    }
    true
}

fn assemble_ffr(algebra: &SuperAlgebra, env: &PdEnvelope) -> Result<FfrModule> {
    let dim = algebra.dim();
    let quad = quadratic_bracket(algebra)?;
    let u0_dim = env.u0.quotient_basis.len();
    let gen_names = algebra.basis.names().to_vec();

    // U_0/N embeds into Hom(V, U_{−1}) by u ↦ (a ↦ a·u): choose quotient
    // representatives among the low-degree monomials by rank growth of the
    // stacked multiplication matrices. A dependency μ_u = Σ c_i μ_{rep_i}
    // certifies u ≡ Σ c_i rep_i (mod N) exactly.
    let mu = |j: usize| -> Option<Vec<Rational>> {
        let mut col = Vec::new();
        for a in 0..dim {
            col.extend(env.mult[a][j].as_ref()?.iter().cloned());
        }
        Some(col)
    };
    let mut u0q_cols: Vec<usize> = Vec::new();
    let mut chosen_mu: Vec<Vec<Rational>> = Vec::new();
    // class_coords[j]: expression of rep j over the chosen representatives
    let mut class_coords: Vec<Option<Vec<Rational>>> = vec![None; u0_dim];
    let mut n_dim = 0usize;
    for j in 0..u0_dim {
        let Some(m) = mu(j) else { continue };
        // solve m = Σ c_i chosen_mu[i]
        let mut cols: Vec<Vec<Rational>> = chosen_mu.clone();
        cols.push(m.iter().map(|x| -x.clone()).collect());
        let ker = kernel_of_columns(&cols);
        let dep = ker.iter().find(|k| !k[chosen_mu.len()].is_zero());
        match dep {
            Some(k) => {
                // u_j − Σ c_i rep_i ∈ N, one independent element per
                // dependent monomial
                let scale = k[chosen_mu.len()].clone();
                let coeffs: Vec<Rational> =
                    k[..chosen_mu.len()].iter().map(|c| c / &scale).collect();
                n_dim += 1;
                class_coords[j] = Some(coeffs);
            }
            None => {
                chosen_mu.push(m);
                class_coords[j] = Some({
                    let mut unit = vec![Rational::zero(); chosen_mu.len()];
                    unit[chosen_mu.len() - 1] = rat_int(1);
                    unit
                });
                u0q_cols.push(j);
            }
        }
    }
    // pad earlier class expressions to the final number of representatives
    let nreps = u0q_cols.len();
    for c in class_coords.iter_mut().flatten() {
        c.resize(nreps, Rational::zero());
    }
    let project = |v: &[Rational]| -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); nreps];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Some(expr) = &class_coords[j] else {
                return Err(Error::TruncationOverflow(format!(
                    "class of the U_0 monomial {} cannot be resolved in this window",
                    env.u0.quotient_basis[j].display(&gen_names)
                )));
            };
            for (i, e) in expr.iter().enumerate() {
                out[i] += c * e;
            }
        }
        Ok(out)
    };

    // module basis: U_{−1} block then U_0/N block
    let u0q_names: Vec<String> =
        u0q_cols.iter().map(|&j| env.u0.quotient_basis[j].display(&gen_names)).collect();
    let mut gens: Vec<(String, Parity)> = Vec::new();
    for i in 0..dim {
        gens.push((format!("[{}]", gen_names[i]), algebra.basis.parity(i)));
    }
    for (pos, &j) in u0q_cols.iter().enumerate() {
        let parity = env.u0.quotient_basis[j].parity(algebra.basis.parities());
        gens.push((format!("[{}]", u0q_names[pos]), parity));
    }
    let mod_basis = SuperBasis::mixed(gens)?;
    let total = mod_basis.dim();
    let vs = VarSet::dl();
    let del = FormalPoly::var(&vs, DEL)?;
    let lam = FormalPoly::var(&vs, LAM)?;

    let mut entries: Vec<Vec<Option<VecPoly>>> = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut row = Vec::with_capacity(total);
        // U_{−1} block: the quadratic bracket
        for u in 0..dim {
            let q = quad.entry_ref(a, u);
            let mut v = VecPoly::zero(&vs, total);
            for k in 0..dim {
                v.set_comp(k, q.comp(k).clone());
            }
            row.push(Some(v));
        }
        // U_0/N block: {a,u} + ∂·d(a)u + λ(d(au) + au)
        for &j in &u0q_cols {
            let missing = || {
                Error::TruncationOverflow(format!(
                    "action on the U_0 representative {} leaves the window; raise the degree or depth bounds",
                    env.u0.quotient_basis[j].display(&gen_names)
                ))
            };
            let brk_q = project(env.brk[a][j].as_ref().ok_or_else(missing)?)?;
            let dmult_q = project(env.dmult[a][j].as_ref().ok_or_else(missing)?)?;
            let dof_q = project(env.dof_mult[a][j].as_ref().ok_or_else(missing)?)?;
            let mult_v = env.mult[a][j].as_ref().ok_or_else(missing)?;
            let mut v = VecPoly::zero(&vs, total);
            for pos in 0..u0q_cols.len() {
                let mut p = FormalPoly::constant(&vs, brk_q[pos].clone());
                if !dmult_q[pos].is_zero() {
                    p = p.add(&del.scale(&dmult_q[pos]))?;
                }
                if !dof_q[pos].is_zero() {
                    p = p.add(&lam.scale(&dof_q[pos]))?;
                }
                v.set_comp(dim + pos, p);
            }
            for k in 0..dim {
                let c = &mult_v[k];
                if !c.is_zero() {
                    v.set_comp(k, lam.scale(c));
                }
            }
            row.push(Some(v));
        }
        entries.push(row);
    }
    let action = ReprTable::new_partial(algebra.basis.clone(), mod_basis, entries)?;
    let module_report = check_module(&quad, &action);
    Ok(FfrModule { umin1_names: gen_names, u0q_names, n_dim, action, module_report })
}

/// Outcome of the faithfulness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulReport {
    pub faithful: bool,
    /// For a faithful table: which module columns already separate the
    /// algebra. For an unfaithful one: a nonzero `Σ f_i(∂)·a_i` acting by zero.
    pub witness: String,
}

/// A representation is faithful iff no nonzero `Σ f_i(∂)·a_i` acts as zero;
/// by sesquilinearity this is a rank test over `k(λ)` of the matrix whose
/// rows are the flattened entries `ρ_λ(a_i, ·)`. Single module columns are
/// tried first as shortcut witnesses.
pub fn check_faithful(rho: &ReprTable) -> FaithfulReport {
    let dim = rho.alg_basis.dim();
    let mdim = rho.mod_basis.dim();
    if dim == 0 {
        return FaithfulReport { faithful: true, witness: "empty algebra".into() };
    }
    for u in 0..mdim {
        let rows: Vec<Vec<FormalPoly>> = (0..dim).map(|a| flatten_entries(rho, a, &[u])).collect();
        if poly_rank(&rows) == dim {
            return FaithfulReport {
                faithful: true,
                witness: format!("column {}", rho.mod_basis.name(u)),
            };
        }
    }
    let all: Vec<usize> = (0..mdim).collect();
    let rows: Vec<Vec<FormalPoly>> = (0..dim).map(|a| flatten_entries(rho, a, &all)).collect();
    if poly_rank(&rows) == dim {
        return FaithfulReport { faithful: true, witness: "full table".into() };
    }
    let witness = kernel_witness(rho, &rows);
    FaithfulReport { faithful: false, witness }
}

/// Whether the single module column `u` already separates the algebra:
/// `a ↦ ρ_λ(a, e_u)` is injective over `k(λ)`.
pub fn column_separates(rho: &ReprTable, u: usize) -> bool {
    let dim = rho.alg_basis.dim();
    let rows: Vec<Vec<FormalPoly>> = (0..dim).map(|a| flatten_entries(rho, a, &[u])).collect();
    poly_rank(&rows) == dim
}

/// Flatten `ρ_λ(a, e_u)` for the chosen module columns into polynomials in
/// `λ` indexed by (column, component, ∂-power).
fn flatten_entries(rho: &ReprTable, a: usize, cols: &[usize]) -> Vec<FormalPoly> {
    let vs = VarSet::dl();
    let del_idx = vs.index_of(DEL).unwrap();
    let lam_idx = vs.index_of(LAM).unwrap();
    let mut out = Vec::new();
    let max_del = 8usize;
    for &u in cols {
        let e =
            rho.entries[a][u].clone().unwrap_or_else(|| VecPoly::zero(&vs, rho.mod_basis.dim()));
        for k in 0..rho.mod_basis.dim() {
            let mut per_del: Vec<FormalPoly> = vec![FormalPoly::zero(&vs); max_del + 1];
            for (exp, c) in e.comp(k).terms() {
                let p = exp[del_idx] as usize;
                let lam_pow = FormalPoly::var(&vs, LAM).unwrap().pow(exp[lam_idx]);
                assert!(p <= max_del, "unexpectedly high ∂-power");
                per_del[p] = per_del[p].add(&lam_pow.scale(c)).unwrap();
            }
            out.extend(per_del);
        }
    }
    out
}

/// Rank over the rational function field `k(λ)` by division-free
/// elimination with polynomial cross-multiplication.
fn poly_rank(rows: &[Vec<FormalPoly>]) -> usize {
    let mut rows: Vec<Vec<FormalPoly>> = rows.to_vec();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut used = vec![false; rows.len()];
    for col in 0..ncols {
        let Some(p) = (0..rows.len()).find(|&r| !used[r] && !rows[r][col].is_zero()) else {
            continue;
        };
        used[p] = true;
        rank += 1;
        let pivot = rows[p][col].clone();
        let prow = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if used[r] || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in 0..ncols {
                let t1 = row[c].mul(&pivot).unwrap();
                let t2 = prow[c].mul(&f).unwrap();
                row[c] = t1.sub(&t2).unwrap();
            }
        }
    }
    rank
}

fn kernel_witness(rho: &ReprTable, rows: &[Vec<FormalPoly>]) -> String {
    // eliminate with an augmented identity of λ-polynomials; a row whose
    // data part vanishes carries the combination in its augmented part
    let vs = VarSet::dl();
    let dim = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut data: Vec<Vec<FormalPoly>> = rows.to_vec();
    let mut aug: Vec<Vec<FormalPoly>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { FormalPoly::one(&vs) } else { FormalPoly::zero(&vs) })
                .collect()
        })
        .collect();
    let mut used = vec![false; dim];
    for col in 0..ncols {
        let Some(p) = (0..dim).find(|&r| !used[r] && !data[r][col].is_zero()) else { continue };
        used[p] = true;
        let pivot = data[p][col].clone();
        let (prow, paug) = (data[p].clone(), aug[p].clone());
        for r in 0..dim {
            if used[r] || data[r][col].is_zero() {
                continue;
            }
            let f = data[r][col].clone();
            for c in 0..ncols {
                data[r][c] =
                    data[r][c].mul(&pivot).unwrap().sub(&prow[c].mul(&f).unwrap()).unwrap();
            }
            for c in 0..dim {
                aug[r][c] = aug[r][c].mul(&pivot).unwrap().sub(&paug[c].mul(&f).unwrap()).unwrap();
            }
        }
    }
    for r in 0..dim {
        if !used[r] && data[r].iter().all(|p| p.is_zero()) {
            // the augmented entries are g_i(λ); the acting element is
            // Σ g_i(−∂)·a_i
            let del = FormalPoly::var(&vs, DEL).unwrap().neg();
            let parts: Vec<String> = aug[r]
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_zero())
                .map(|(i, g)| {
                    let fd = g.substitute(LAM, &del).unwrap();
                    format!("({})·{}", fd, rho.alg_basis.name(i))
                })
                .collect();
            return parts.join(" + ");
        }
    }
    "no kernel element found".into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat_int;
    use crate::gdcore::zero_tensor;

    fn virasoro_source() -> SuperAlgebra {
        let basis = SuperBasis::even(&["v"]);
        let mut circ = zero_tensor(1);
        circ[0][0][0] = rat_int(1);
        SuperAlgebra::new(basis, Some(circ), Some(zero_tensor(1))).unwrap()
    }

    fn heisenberg3() -> SuperAlgebra {
        let basis = SuperBasis::even(&["x", "y", "z"]);
        let mut circ = zero_tensor(3);
        circ[0][0][0] = rat_int(1);
        circ[0][0][1] = rat_int(-1);
        circ[1][0][1] = rat_int(1);
        circ[0][1][1] = rat_int(-1);
        let mut br = zero_tensor(3);
        br[0][1][2] = rat_int(1);
        br[1][0][2] = rat_int(-1);
        SuperAlgebra::new(basis, Some(circ), Some(br)).unwrap()
    }

    #[test]
    fn regular_representation_of_virasoro_is_a_module() {
        let t = quadratic_bracket(&virasoro_source()).unwrap();
        let rho = regular_repr(&t);
        assert!(check_module(&t, &rho).passed);
    }

    #[test]
    fn zero_representation_is_a_module() {
        let t = quadratic_bracket(&heisenberg3()).unwrap();
        let basis = t.basis().clone();
        let vs = VarSet::dl();
        let entries = vec![vec![Some(VecPoly::zero(&vs, 1)); 1]; basis.dim()];
        let mod_basis = SuperBasis::even(&["m"]);
        let rho = ReprTable::new_partial(basis, mod_basis, entries).unwrap();
        assert!(check_module(&t, &rho).passed);
    }

    #[test]
    fn gc_bracket_examples() {
        // n|m = 1|0: [1 λ x] = λ, [1 λ 1] = 0, [x λ x] = x∂ + 2xλ
        let one = GcElement::unit(1, 0, 0, 0, 0);
        let x = GcElement::unit(1, 0, 1, 0, 0);
        let br = gc_bracket(&one, &x).unwrap();
        assert_eq!(format!("{}", br.entries[0][0]), "λ");
        let br2 = gc_bracket(&one, &one).unwrap();
        assert!(br2.is_zero());
        let br3 = gc_bracket(&x, &x).unwrap();
        assert_eq!(format!("{}", br3.entries[0][0]), "∂*x + 2*λ*x");
    }

    #[test]
    fn gc_1_0_passes_at_cap_2() {
        let rep = check_gc_jacobi(1, 0, 2).unwrap();
        assert!(rep.passed, "violations: {:?}", rep.violations);
    }

    #[test]
    fn gc_constants_reduce_to_matrix_commutator() {
        let rep = check_gc_jacobi(1, 1, 0).unwrap();
        assert!(rep.passed, "violations: {:?}", rep.violations);
    }

    #[test]
    fn ffr_on_virasoro() {
        let ffr = build_ffr(&virasoro_source(), Truncation::new(2, 4, 2).unwrap()).unwrap();
        assert!(ffr.rank() <= 2, "rank {}", ffr.rank());
        assert!(ffr.module_report.passed);
        assert!(ffr.u0q_names.len() <= 1);
        // the U_{−1}×U_{−1} block is the quadratic bracket
        let quad = quadratic_bracket(&virasoro_source()).unwrap();
        let block = ffr.action.entries[0][0].clone().unwrap();
        assert_eq!(block.comp(0), quad.entry_ref(0, 0).comp(0));
        // the column form of ρ(v) renders as a 2×2 matrix of polynomials
        let mat = ffr.action.matrix_strings(0);
        assert_eq!(mat.len(), 2);
        assert_eq!(mat[0][0], "∂ + 2*λ");
        // ρ̂_λ(v, [1]) = (∂+λ)[class of v'] + λ[v] — nonzero
        let e = ffr.action.entries[0][1].clone().unwrap();
        assert!(!e.is_zero());
        let fr = check_faithful(&ffr.action);
        assert!(fr.faithful);
        assert!(fr.witness.contains("column"));
    }

    #[test]
    fn ffr_on_zero_line() {
        // zero GD algebra of dim 1: ρ̂_λ(a, 1) = λ·a, faithful of rank 2
        let basis = SuperBasis::even(&["a"]);
        let alg = SuperAlgebra::new(basis, Some(zero_tensor(1)), Some(zero_tensor(1))).unwrap();
        let ffr = build_ffr(&alg, Truncation::new(2, 3, 1).unwrap()).unwrap();
        assert_eq!(ffr.rank(), 2);
        let e = ffr.action.entries[0][1].clone().unwrap();
        let names: Vec<String> = vec!["[a]".into(), "[1]".into()];
        assert_eq!(e.display_with(&names), "λ*[a]");
        assert!(check_faithful(&ffr.action).faithful);
    }

    #[test]
    fn ffr_on_odd_generator_commutator_algebra() {
        // e∘f = f with f odd; the commutator GD-structure runs through the
        // whole pipeline and the class of 1 separates the algebra
        let basis = SuperBasis::new(vec![
            ("e".to_string(), Parity::Even),
            ("f".to_string(), Parity::Odd),
        ])
        .unwrap();
        let mut circ = zero_tensor(2);
        circ[0][1][1] = rat_int(1);
        let nov = SuperAlgebra::new(basis, Some(circ), None).unwrap();
        let alg = crate::gdcore::commutator_gd(&nov).unwrap();
        let ffr = build_ffr(&alg, Truncation::new(2, 4, 2).unwrap()).unwrap();
        assert!(ffr.rank() <= 6);
        assert!(ffr.module_report.passed);
        let fr = check_faithful(&ffr.action);
        assert!(fr.faithful);
        let one = ffr.action.mod_basis().names().iter().position(|n| n == "[1]").unwrap();
        assert!(column_separates(&ffr.action, one));
    }

    #[test]
    fn zero_representation_of_nonzero_algebra_is_unfaithful() {
        let t = quadratic_bracket(&virasoro_source()).unwrap();
        let vs = VarSet::dl();
        let entries = vec![vec![Some(VecPoly::zero(&vs, 1)); 1]; 1];
        let rho =
            ReprTable::new_partial(t.basis().clone(), SuperBasis::even(&["m"]), entries).unwrap();
        let fr = check_faithful(&rho);
        assert!(!fr.faithful);
        assert!(fr.witness.contains('v'));
    }

    #[test]
    fn regular_rep_of_heisenberg_quadratic_has_central_kernel() {
        // z has zero ∘-products and zero brackets, so [z λ ·] ≡ 0 and the
        // regular representation cannot be faithful
        let t = quadratic_bracket(&heisenberg3()).unwrap();
        let rho = regular_repr(&t);
        assert!(check_module(&t, &rho).passed);
        let fr = check_faithful(&rho);
        assert!(!fr.faithful);
        assert!(fr.witness.contains('z'), "witness: {}", fr.witness);
    }

    #[test]
    fn regular_rep_of_novikov2_quadratic_is_faithful() {
        let basis = SuperBasis::even(&["v", "u"]);
        let mut circ = zero_tensor(2);
        circ[0][0][0] = rat_int(1);
        circ[0][0][1] = rat_int(1);
        circ[1][0][1] = rat_int(1);
        let alg = SuperAlgebra::new(basis, Some(circ), Some(zero_tensor(2))).unwrap();
        let t = quadratic_bracket(&alg).unwrap();
        let rho = regular_repr(&t);
        assert!(check_module(&t, &rho).passed);
        assert!(check_faithful(&rho).faithful);
    }
}
