//! First-order deformation of the standard Dieudonne module over
//! R = k[u,v]/m^2: the universal Hodge-filtration deformation and its
//! isotropy, the V-image congruence, the stratum ideal (u_ij), and the
//! tangent/foliation/fiber dimensions of the sharp moduli problem.
//!
//! The ring R has square-zero generators u_(i,j), 1 <= i <= n-m, and
//! v_(l,j), 1 <= l <= m, with 1 <= j <= m throughout. The stored column
//! index j corresponds to the ambient column n-m+j, and the stored row l
//! of a v-generator to the ambient row n+l; reports may print either form.
//! V acts R-linearly with its constant structure matrix: the ring
//! Frobenius factors through the residue field, so all twisting is
//! confined to how subspaces transport.

use std::collections::BTreeMap;

use crate::dieudonne::{self, DieudonneModule, MapKind};
use crate::error::{Error, Result};
use crate::gf::{DefRing, DefRingElt, FqElt, Gf};
use crate::linalg::{self, Row};

/// Stored-index name of the generator u_(i,j).
pub fn u_name(i: usize, j: usize) -> String {
    format!("u_{i}_{j}")
}

/// Stored-index name of the generator v_(l,j).
pub fn v_name(l: usize, j: usize) -> String {
    format!("v_{l}_{j}")
}

/// Renders a stored generator name with ambient indices, e.g. for
/// (n,m) = (4,2) the name "u_1_1" prints as "u_{1,3}".
pub fn ambient_label(name: &str, n: usize, m: usize) -> String {
    let parts: Vec<&str> = name.split('_').collect();
    if parts.len() == 3 {
        if let (Ok(row), Ok(col)) = (parts[1].parse::<usize>(), parts[2].parse::<usize>()) {
            match parts[0] {
                "u" => return format!("u_{{{},{}}}", row, col + n - m),
                "v" => return format!("v_{{{},{}}}", row + n, col + n - m),
                _ => {}
            }
        }
    }
    name.to_string()
}

/// A vector in the free R-module on e_1..e_{n+m}, f_1..f_{n+m}.
pub type RVec = Vec<DefRingElt>;

/// The deformation setup at one standard module: the module itself plus
/// the truncated ring with its nm generators.
#[derive(Debug, Clone)]
pub struct DeformationContext {
    module: DieudonneModule,
    ring: DefRing,
}

/// The universal first-order deformation of the Hodge filtration: the
/// Sigma-part generators and the Sigma-bar-part generators over R.
#[derive(Debug, Clone)]
pub struct UniversalDeformation {
    pub sigma: Vec<RVec>,
    pub sigma_bar: Vec<RVec>,
}

/// Residue of V applied to one Sigma-bar generator, after splitting off
/// the free summand spanned by the designated standard basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRow {
    /// Stored column index j in [1, m].
    pub j_stored: usize,
    /// Ambient column index n-m+j.
    pub j_ambient: usize,
    /// Map from 1-based e-coordinate (in the first twist) to coefficient.
    pub residue: BTreeMap<usize, DefRingElt>,
}

/// Solution-space dimensions of the tangent constraint system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TangentDims {
    pub total: usize,
    pub foliation: usize,
    pub fiber: usize,
}

pub fn deformation_context(n: usize, m: usize, gf: Gf) -> Result<DeformationContext> {
    let module = dieudonne::standard_fol_module(n, m, gf)?;
    let mut gens = Vec::new();
    for i in 1..=n - m {
        for j in 1..=m {
            gens.push(u_name(i, j));
        }
    }
    for l in 1..=m {
        for j in 1..=m {
            gens.push(v_name(l, j));
        }
    }
    let ring = DefRing::new(gf, gens);
    Ok(DeformationContext { module, ring })
}

impl DeformationContext {
    pub fn module(&self) -> &DieudonneModule {
        &self.module
    }

    pub fn ring(&self) -> &DefRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.module.n()
    }

    pub fn m(&self) -> usize {
        self.module.m()
    }

    fn dim(&self) -> usize {
        self.module.dim()
    }

    fn nm(&self) -> usize {
        self.n() + self.m()
    }

    pub fn zero_vec(&self) -> RVec {
        vec![self.ring.zero(); self.dim()]
    }

    fn e_unit(&self, i: usize) -> RVec {
        let mut v = self.zero_vec();
        v[i - 1] = self.ring.one();
        v
    }

    fn f_unit(&self, j: usize) -> RVec {
        let mut v = self.zero_vec();
        v[self.nm() + j - 1] = self.ring.one();
        v
    }

    fn add_scaled_gen(&self, target: &mut RVec, coord: usize, gen_name: &str, negate: bool) {
        let g = self
            .ring
            .generator(gen_name)
            .expect("generator registered at construction");
        let g = if negate { self.ring.neg(&g) } else { g };
        target[coord] = self.ring.add(&target[coord], &g);
    }

    /// The polarization pairing extended R-bilinearly.
    pub fn pair(&self, x: &RVec, y: &RVec) -> DefRingElt {
        let pm = self.module.pairing_matrix();
        let mut acc = self.ring.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let p = pm[i][j];
                if !p.is_zero() && !yj.is_zero() {
                    acc = self
                        .ring
                        .add(&acc, &self.ring.scale(p, &self.ring.mul(xi, yj)));
                }
            }
        }
        acc
    }

    /// V applied R-linearly via the constant structure matrix.
    pub fn v_apply(&self, x: &RVec) -> RVec {
        let vm = self.module.v_matrix();
        let mut out = self.zero_vec();
        for (row, out_row) in out.iter_mut().enumerate() {
            for (col, xc) in x.iter().enumerate() {
                let coef = vm[row][col];
                if !coef.is_zero() && !xc.is_zero() {
                    *out_row = self.ring.add(out_row, &self.ring.scale(coef, xc));
                }
            }
        }
        out
    }

    /// Builds the universal deformation. The Sigma-bar part is produced
    /// twice, from its closed form and as the annihilator of the Sigma
    /// part inside the f-span under the pairing; the two must coincide.
    pub fn universal_deformation(&self) -> Result<UniversalDeformation> {
        let (n, m) = (self.n(), self.m());
        let nm = self.nm();

        let mut sigma = Vec::new();
        for i in 1..=n - m {
            let mut g = self.e_unit(i);
            for j in 1..=m {
                self.add_scaled_gen(&mut g, (n - m + j) - 1, &u_name(i, j), false);
            }
            sigma.push(g);
        }
        for l in 1..=m {
            let mut g = self.e_unit(n + l);
            for j in 1..=m {
                self.add_scaled_gen(&mut g, (n - m + j) - 1, &v_name(l, j), false);
            }
            sigma.push(g);
        }

        let mut sigma_bar = Vec::new();
        for j in 1..=m {
            // f_{2m+1-j} - sum_i u_(i,j) f_{n+m+1-i} - sum_l v_(l,j) f_{m+1-l}
            let mut g = self.f_unit(2 * m + 1 - j);
            for i in 1..=n - m {
                self.add_scaled_gen(&mut g, nm + (nm + 1 - i) - 1, &u_name(i, j), true);
            }
            for l in 1..=m {
                self.add_scaled_gen(&mut g, nm + (m + 1 - l) - 1, &v_name(l, j), true);
            }
            sigma_bar.push(g);
        }

        let derived = self.annihilator_in_f_span(&sigma)?;
        let closed = self.rref_over_ring(
            sigma_bar
                .iter()
                .map(|g| g[nm..].to_vec())
                .collect::<Vec<_>>(),
        )?;
        if derived != closed {
            return Err(Error::Inconsistent(format!(
                "Sigma-bar generators: closed form and annihilator disagree for (n,m) = ({n},{m})"
            )));
        }

        // isotropy of the whole filtration over R
        for g in &sigma {
            for h in sigma.iter().chain(sigma_bar.iter()) {
                if !self.pair(g, h).is_zero() {
                    return Err(Error::Inconsistent(
                        "deformed filtration is not isotropic".to_string(),
                    ));
                }
            }
        }
        for g in &sigma_bar {
            for h in &sigma_bar {
                if !self.pair(g, h).is_zero() {
                    return Err(Error::Inconsistent(
                        "deformed filtration is not isotropic".to_string(),
                    ));
                }
            }
        }
        Ok(UniversalDeformation { sigma, sigma_bar })
    }

    /// Kernel of the pairing against the Sigma generators, inside the free
    /// R-module on the f-basis. Returns the canonical unit-pivot echelon
    /// form of the kernel generators (coordinates in the f-block only).
    fn annihilator_in_f_span(&self, sigma: &[RVec]) -> Result<Vec<Vec<DefRingElt>>> {
        let gf = self.module.gf();
        let nm = self.nm();
        // coefficient matrix over R: entry (g, j) = {sigma_g, f_j}
        let mut coef: Vec<Vec<DefRingElt>> = Vec::new();
        for g in sigma {
            let row: Vec<DefRingElt> = (1..=nm).map(|j| self.pair(g, &self.f_unit(j))).collect();
            coef.push(row);
        }
        // split into constant and nilpotent parts
        let b0: Vec<Row> = coef
            .iter()
            .map(|row| row.iter().map(|e| e.constant).collect())
            .collect();
        let kernel0 = linalg::kernel(gf, &b0, nm);
        if kernel0.len() != self.m() {
            return Err(Error::Inconsistent(format!(
                "annihilator has unexpected rank {} (expected {})",
                kernel0.len(),
                self.m()
            )));
        }
        // lift each constant kernel vector x0 to x0 + x1 with
        // B0 x1 = -(B1 x0), one correction per ring generator
        let mut lifted: Vec<Vec<DefRingElt>> = Vec::new();
        for x0 in &kernel0 {
            let mut rhs_per_gen: BTreeMap<String, Row> = BTreeMap::new();
            for (gi, row) in coef.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    for (gen, &c) in &entry.linear {
                        let contrib = gf.mul(c, x0[j]);
                        if contrib.is_zero() {
                            continue;
                        }
                        let slot = rhs_per_gen
                            .entry(gen.clone())
                            .or_insert_with(|| vec![FqElt::ZERO; coef.len()]);
                        slot[gi] = gf.add(slot[gi], contrib);
                    }
                }
            }
            let mut lift: Vec<DefRingElt> =
                x0.iter().map(|&c| self.ring.constant(c)).collect();
            for (gen, rhs) in rhs_per_gen {
                let neg_rhs: Row = rhs.iter().map(|&c| gf.neg(c)).collect();
                let Some(x1) = linalg::solve(gf, &b0, &neg_rhs) else {
                    return Err(Error::Inconsistent(
                        "annihilator lift is inconsistent".to_string(),
                    ));
                };
                for (slot, &c) in lift.iter_mut().zip(x1.iter()) {
                    if !c.is_zero() {
                        let g = self.ring.generator(&gen)?;
                        *slot = self.ring.add(slot, &self.ring.scale(c, &g));
                    }
                }
            }
            lifted.push(lift);
        }
        self.rref_over_ring(lifted)
    }

    /// Unit-pivot Gauss-Jordan over R. Valid whenever the reduction of the
    /// rows modulo the nilpotents has full rank, which makes the result a
    /// canonical form for the row module.
    fn rref_over_ring(&self, rows: Vec<Vec<DefRingElt>>) -> Result<Vec<Vec<DefRingElt>>> {
        let mut rows: Vec<Vec<DefRingElt>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .collect();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut out: Vec<Vec<DefRingElt>> = Vec::new();
        for col in 0..ncols {
            let Some(idx) = rows.iter().position(|r| !r[col].constant.is_zero()) else {
                continue;
            };
            let mut piv = rows.swap_remove(idx);
            let inv = self.ring.inv(&piv[col])?;
            for x in piv.iter_mut() {
                *x = self.ring.mul(x, &inv);
            }
            for r in rows.iter_mut().chain(out.iter_mut()) {
                let f = r[col].clone();
                if !f.is_zero() {
                    for (x, pv) in r.iter_mut().zip(piv.iter()) {
                        *x = self.ring.sub(x, &self.ring.mul(&f, pv));
                    }
                }
            }
            out.push(piv);
            rows.retain(|r| r.iter().any(|e| !e.is_zero()));
        }
        if !rows.is_empty() {
            return Err(Error::Inconsistent(
                "row module is not free over the truncated ring".to_string(),
            ));
        }
        Ok(out)
    }

    /// The 1-based e-indices of the free summand used as the congruence
    /// target: V(Q) at the point when 2m <= n, the twisted canonical piece
    /// when n < 2m.
    pub fn target_summand_indices(&self) -> Result<Vec<usize>> {
        let (n, m) = (self.n(), self.m());
        let target = if 2 * m <= n {
            dieudonne::vq_image(&self.module)?
        } else {
            self.module.twist(&dieudonne::canonical_m(&self.module)?)?
        };
        let Some((e_idx, f_idx)) = self.module.basis_indices(&target) else {
            return Err(Error::Inconsistent(
                "congruence target is not a span of standard basis vectors".to_string(),
            ));
        };
        if !f_idx.is_empty() {
            return Err(Error::Inconsistent(
                "congruence target has f-coordinates".to_string(),
            ));
        }
        Ok(e_idx)
    }

    /// For each Sigma-bar generator, V of it reduced modulo the free
    /// summand. The residues are checked against their closed form
    /// -sum_{i <= min(m,n-m)} u_(i,j) e_{n+m+1-i}
    /// -sum_{i > min(m,n-m)} u_(i,j) e_{n+1-i}, and carry no v-dependence.
    pub fn v_image_residues(&self) -> Result<Vec<ResidueRow>> {
        let (n, m) = (self.n(), self.m());
        let nm = self.nm();
        let deformation = self.universal_deformation()?;
        let summand = self.target_summand_indices()?;
        let mut out = Vec::new();
        for (idx, gen) in deformation.sigma_bar.iter().enumerate() {
            let j = idx + 1;
            let image = self.v_apply(gen);
            let mut residue: BTreeMap<usize, DefRingElt> = BTreeMap::new();
            for (coord, entry) in image.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                if coord >= nm {
                    return Err(Error::Inconsistent(
                        "V of a Sigma-bar generator has f-coordinates".to_string(),
                    ));
                }
                let e_index = coord + 1;
                if summand.contains(&e_index) {
                    continue; // reduced away by the free summand
                }
                residue.insert(e_index, entry.clone());
            }
            // closed form of the residue
            let cut = m.min(n - m);
            let mut expected: BTreeMap<usize, DefRingElt> = BTreeMap::new();
            for i in 1..=n - m {
                let coord = if i <= cut { nm + 1 - i } else { n + 1 - i };
                let g = self.ring.neg(&self.ring.generator(&u_name(i, j))?);
                expected.insert(coord, g);
            }
            if residue != expected {
                return Err(Error::Inconsistent(format!(
                    "V-image residue for column {j} differs from its closed form"
                )));
            }
            for entry in residue.values() {
                if entry.linear.keys().any(|g| g.starts_with('v')) {
                    return Err(Error::Inconsistent(format!(
                        "V-image residue for column {j} involves a v-generator"
                    )));
                }
            }
            out.push(ResidueRow {
                j_stored: j,
                j_ambient: n - m + j,
                residue,
            });
        }
        Ok(out)
    }

    /// The exact set of ring generators whose vanishing is equivalent to
    /// V of the deformed Sigma-bar part landing in the free summand:
    /// all (n-m)m u-generators. The residue support must consist of
    /// distinct standard basis vectors outside the summand (asserted), so
    /// the vanishing locus is read off coefficientwise.
    pub fn sfol_ideal(&self) -> Result<Vec<String>> {
        let residues = self.v_image_residues()?;
        let summand = self.target_summand_indices()?;
        let gf = self.module.gf();
        let neg_one = gf.neg(gf.one());
        let mut collected: Vec<String> = Vec::new();
        for row in &residues {
            let mut seen_coords = Vec::new();
            for (&coord, entry) in &row.residue {
                if summand.contains(&coord) || seen_coords.contains(&coord) {
                    return Err(Error::Inconsistent(
                        "residue support not independent modulo the summand".to_string(),
                    ));
                }
                seen_coords.push(coord);
                if !entry.constant.is_zero() || entry.linear.len() != 1 {
                    return Err(Error::Inconsistent(
                        "residue coefficient is not a single generator".to_string(),
                    ));
                }
                let (gen, &coef) = entry.linear.iter().next().expect("one entry");
                if coef != neg_one {
                    return Err(Error::Inconsistent(
                        "residue coefficient is not minus one".to_string(),
                    ));
                }
                collected.push(gen.clone());
            }
        }
        collected.sort();
        collected.dedup();
        let mut expected: Vec<String> = Vec::new();
        for i in 1..=self.n() - self.m() {
            for j in 1..=self.m() {
                expected.push(u_name(i, j));
            }
        }
        expected.sort();
        if collected != expected {
            return Err(Error::Inconsistent(format!(
                "stratum ideal generators {collected:?} differ from the full u set"
            )));
        }
        Ok(collected)
    }

    /// Builds the constraint system phi|_{P_0} = psi mod W on the pair
    /// (phi, psi) at the standard module, with P, P_0 and H_0 computed
    /// from the module, and returns the dimensions of the full solution
    /// space, of its psi = 0 slice, and of its phi = 0 slice.
    pub fn tangent_system(&self) -> Result<TangentDims> {
        let md = &self.module;
        let gf = md.gf();
        let (n, m) = (self.n(), self.m());
        let dim = md.dim();

        let omega = md.hodge_filtration()?;
        let p_space = md.sigma_part(&omega)?;
        let h0 = md.map_kernel(MapKind::V);
        let h0_sigma = md.sigma_part(&h0)?;
        let p0_rows = linalg::intersect(gf, p_space.rows(), h0.rows(), dim);

        if p_space.dim() != n || h0_sigma.dim() != n || p0_rows.len() != n - m {
            return Err(Error::Inconsistent(format!(
                "unexpected dimensions: P = {}, H_0(Sigma) = {}, P_0 = {}",
                p_space.dim(),
                h0_sigma.dim(),
                p0_rows.len()
            )));
        }

        // quotient coordinates for H(Sigma)/P: the non-pivot e-columns of P
        let p_pivots = linalg::pivot_columns(p_space.rows());
        let nm = self.nm();
        let q_cols: Vec<usize> = (0..nm).filter(|c| !p_pivots.contains(c)).collect();
        if q_cols.len() != m {
            return Err(Error::Inconsistent(
                "H(Sigma)/P does not have dimension m".to_string(),
            ));
        }
        let q_p = |v: &Row| -> Row {
            let reduced = linalg::reduce(gf, v, p_space.rows());
            q_cols.iter().map(|&c| reduced[c]).collect()
        };

        // complement basis of P_0 inside H_0(Sigma)
        let mut complement: Vec<Row> = Vec::new();
        for b in h0_sigma.rows() {
            let r = linalg::reduce(gf, b, &p0_rows);
            if !linalg::is_zero_row(&r) {
                complement.push(r);
            }
        }
        let complement = linalg::rref(gf, complement);
        if complement.len() != m {
            return Err(Error::Inconsistent(
                "H_0(Sigma)/P_0 does not have dimension m".to_string(),
            ));
        }
        let complement_q: Vec<Row> = complement.iter().map(|c| q_p(c)).collect();

        // unknowns: Phi (m x n) then Psi (m x (n-m)), row-major
        let phi_vars = m * n;
        let psi_vars = m * (n - m);
        let unknowns = phi_vars + psi_vars;
        let phi_at = |q: usize, s: usize| q * n + s;
        let psi_at = |u: usize, t: usize| phi_vars + u * (n - m) + t;

        let mut equations: Vec<Row> = Vec::new();
        for (t, x_t) in p0_rows.iter().enumerate() {
            // coordinates of x_t in the echelon basis of P
            let lambdas: Vec<FqElt> = p_pivots.iter().map(|&pc| x_t[pc]).collect();
            for q in 0..m {
                let mut eq = vec![FqElt::ZERO; unknowns];
                for (s, &lam) in lambdas.iter().enumerate() {
                    eq[phi_at(q, s)] = lam;
                }
                for (u, cq) in complement_q.iter().enumerate() {
                    eq[psi_at(u, t)] = gf.sub(eq[psi_at(u, t)], cq[q]);
                }
                equations.push(eq);
            }
        }

        let kernel_dim = |extra_unit_vars: &[usize]| -> usize {
            let mut eqs = equations.clone();
            for &var in extra_unit_vars {
                let mut eq = vec![FqElt::ZERO; unknowns];
                eq[var] = gf.one();
                eqs.push(eq);
            }
            linalg::kernel(gf, &eqs, unknowns).len()
        };

        let total = kernel_dim(&[]);
        let psi_all: Vec<usize> = (phi_vars..unknowns).collect();
        let phi_all: Vec<usize> = (0..phi_vars).collect();
        Ok(TangentDims {
            total,
            foliation: kernel_dim(&psi_all),
            fiber: kernel_dim(&phi_all),
        })
    }
}
