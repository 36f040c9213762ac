//! The explicit Dieudonne module at a point of the minimal sharp-locus
//! stratum: structure matrices for F and V, the polarization pairing,
//! subspace calculus across Frobenius twists, the canonical-filtration
//! lattice recursion, and the Hasse matrix.
//!
//! Coordinates: the 2(n+m)-dimensional space D_0 has the ordered basis
//! e_1..e_{n+m} (type Sigma), f_1..f_{n+m} (type Sigma-bar). Twists of D_0
//! share the coordinate layout; a subspace carries its twist index and the
//! explicit `twist` operation applies the field Frobenius entrywise. All
//! structure matrices have prime-field entries, so ranks and spans computed
//! over GF(p^2) agree with those over any field extension.

use crate::error::{Error, Result};
use crate::gf::{FqElt, Gf};
use crate::linalg::{self, Row};

/// Which semilinear structure map to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// F: D_0^(p) -> D_0, lowers the twist index by one.
    F,
    /// V: D_0 -> D_0^(p), raises the twist index by one.
    V,
}

/// A subspace of a twist of D_0, stored as reduced-echelon generator rows;
/// the echelon form is the canonical representative, so equality of
/// subspaces is equality of values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    twist: usize,
    rows: Vec<Row>,
}

impl Subspace {
    pub fn twist(&self) -> usize {
        self.twist
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// The pair (a, b) naming the lattice D(a,b) = Span{e_1..e_a, f_1..f_b}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticePair {
    pub a: usize,
    pub b: usize,
}

/// One step of the closed-form lattice recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeStep {
    /// Image under F.
    F,
    /// Full preimage under V.
    VInv,
}

/// The standard Dieudonne module of signature (n,m) at the minimal
/// sharp-locus stratum, with its F, V and pairing matrices.
#[derive(Debug, Clone)]
pub struct DieudonneModule {
    n: usize,
    m: usize,
    gf: Gf,
    f_matrix: Vec<Row>,
    v_matrix: Vec<Row>,
    pairing: Vec<Row>,
}

/// Builds the standard module of signature (n,m), transcribing the three
/// structure tables (including signs) and the anti-diagonal pairing
/// {e_i, f_{n+m+1-i}} = 1.
pub fn standard_fol_module(n: usize, m: usize, gf: Gf) -> Result<DieudonneModule> {
    if m < 1 || m >= n {
        return Err(Error::BadSignature {
            n,
            m,
            requirement: "1 <= m < n",
        });
    }
    let nm = n + m;
    let dim = 2 * nm;
    let zero_mat = || vec![vec![FqElt::ZERO; dim]; dim];

    // column = source basis index, row = target basis index;
    // e_i -> column/row i-1, f_j -> column/row nm+j-1.
    let e = |i: usize| i - 1;
    let f = |j: usize| nm + j - 1;

    let mut fm = zero_mat();
    let one = gf.one();
    let neg_one = gf.neg(one);
    // F(e_i^(p)): 0 on [1,n-m]; -f_{i-n+m} on [n-m+1,n]; 0 on [n+1,n+m]
    for i in n - m + 1..=n {
        fm[f(i + m - n)][e(i)] = neg_one;
    }
    // F(f_j^(p)): -e_j on [1,m]; 0 on [m+1,2m]; -e_{j-m} on [2m+1,n+m]
    for j in 1..=m {
        fm[e(j)][f(j)] = neg_one;
    }
    for j in 2 * m + 1..=nm {
        fm[e(j - m)][f(j)] = neg_one;
    }

    let mut vm = zero_mat();
    // V(e_i): 0 on [1,n]; f_{i-n+m}^(p) on [n+1,n+m]
    for i in n + 1..=nm {
        vm[f(i - n + m)][e(i)] = one;
    }
    // V(f_j): 0 on [1,m]; e_{j-m}^(p) on [m+1,n]; e_j^(p) on [n+1,n+m]
    for j in m + 1..=n {
        vm[e(j - m)][f(j)] = one;
    }
    for j in n + 1..=nm {
        vm[e(j)][f(j)] = one;
    }

    let mut pm = zero_mat();
    for i in 1..=nm {
        pm[e(i)][f(nm + 1 - i)] = one;
        pm[f(nm + 1 - i)][e(i)] = neg_one;
    }

    Ok(DieudonneModule {
        n,
        m,
        gf,
        f_matrix: fm,
        v_matrix: vm,
        pairing: pm,
    })
}

impl DieudonneModule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    /// Dimension 2(n+m) of every twist of D_0.
    pub fn dim(&self) -> usize {
        2 * (self.n + self.m)
    }

    pub fn f_matrix(&self) -> &[Row] {
        &self.f_matrix
    }

    pub fn v_matrix(&self) -> &[Row] {
        &self.v_matrix
    }

    pub fn pairing_matrix(&self) -> &[Row] {
        &self.pairing
    }

    /// Entry of the structure matrix for `which` at (target, source),
    /// 0-based coordinates.
    pub fn matrix_of(&self, which: MapKind) -> &[Row] {
        match which {
            MapKind::F => &self.f_matrix,
            MapKind::V => &self.v_matrix,
        }
    }

    /// The polarization pairing of two coordinate vectors in the same twist.
    pub fn pair(&self, x: &Row, y: &Row) -> FqElt {
        let mut acc = FqElt::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let p = self.pairing[i][j];
                if !p.is_zero() && !yj.is_zero() {
                    acc = self.gf.add(acc, self.gf.mul(xi, self.gf.mul(p, yj)));
                }
            }
        }
        acc
    }

    pub fn span(&self, twist: usize, gens: Vec<Row>) -> Result<Subspace> {
        if twist > 2 {
            return Err(Error::TwistOutOfRange(twist));
        }
        Ok(Subspace {
            twist,
            rows: linalg::rref(&self.gf, gens),
        })
    }

    pub fn zero_space(&self, twist: usize) -> Result<Subspace> {
        self.span(twist, Vec::new())
    }

    pub fn full_space(&self, twist: usize) -> Result<Subspace> {
        self.span(twist, linalg::identity(&self.gf, self.dim()))
    }

    /// Span of the named standard basis vectors: e-indices then f-indices,
    /// both 1-based.
    pub fn basis_span(
        &self,
        twist: usize,
        e_indices: &[usize],
        f_indices: &[usize],
    ) -> Result<Subspace> {
        let nm = self.n + self.m;
        let mut gens = Vec::new();
        for &i in e_indices {
            let mut r = vec![FqElt::ZERO; self.dim()];
            r[i - 1] = self.gf.one();
            gens.push(r);
        }
        for &j in f_indices {
            let mut r = vec![FqElt::ZERO; self.dim()];
            r[nm + j - 1] = self.gf.one();
            gens.push(r);
        }
        self.span(twist, gens)
    }

    /// D(a,b) = Span{e_1..e_a, f_1..f_b} in the requested twist.
    pub fn lattice_subspace(&self, pair: LatticePair, twist: usize) -> Result<Subspace> {
        let nm = self.n + self.m;
        if pair.a > nm || pair.b > nm {
            return Err(Error::LatticePairOutOfRange {
                a: pair.a,
                b: pair.b,
                max: nm,
            });
        }
        let e_indices: Vec<usize> = (1..=pair.a).collect();
        let f_indices: Vec<usize> = (1..=pair.b).collect();
        self.basis_span(twist, &e_indices, &f_indices)
    }

    /// Image of a subspace under F or V, with the twist index adjusted
    /// (-1 for F, +1 for V).
    pub fn map_image(&self, which: MapKind, src: &Subspace) -> Result<Subspace> {
        let twist = match which {
            MapKind::F => src
                .twist
                .checked_sub(1)
                .ok_or(Error::TwistMismatch { got: src.twist, expected: 1 })?,
            MapKind::V => {
                if src.twist + 1 > 2 {
                    return Err(Error::TwistOutOfRange(src.twist + 1));
                }
                src.twist + 1
            }
        };
        let mat = self.matrix_of(which);
        let gens: Vec<Row> = src
            .rows
            .iter()
            .map(|g| linalg::mat_vec(&self.gf, mat, g))
            .collect();
        self.span(twist, gens)
    }

    /// Kernel of F (a subspace of the first twist) or of V (of twist zero).
    pub fn map_kernel(&self, which: MapKind) -> Subspace {
        let twist = match which {
            MapKind::F => 1,
            MapKind::V => 0,
        };
        let rows = linalg::kernel(&self.gf, self.matrix_of(which), self.dim());
        Subspace { twist, rows }
    }

    /// Full preimage { x : V(x) in tgt }; `tgt` must live one twist above
    /// the result.
    pub fn map_preimage(&self, which: MapKind, tgt: &Subspace) -> Result<Subspace> {
        if which != MapKind::V {
            return Err(Error::Inconsistent(
                "preimage is only defined for V".to_string(),
            ));
        }
        let twist = tgt
            .twist
            .checked_sub(1)
            .ok_or(Error::TwistMismatch { got: tgt.twist, expected: 1 })?;
        // kernel of x -> (V x reduced modulo tgt)
        let dim = self.dim();
        let cols: Vec<Row> = (0..dim)
            .map(|k| {
                let mut unit = vec![FqElt::ZERO; dim];
                unit[k] = self.gf.one();
                let img = linalg::mat_vec(&self.gf, &self.v_matrix, &unit);
                linalg::reduce(&self.gf, &img, &tgt.rows)
            })
            .collect();
        let mat: Vec<Row> = (0..dim)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let rows = linalg::kernel(&self.gf, &mat, dim);
        Ok(Subspace { twist, rows })
    }

    /// Applies the field Frobenius entrywise and raises the twist index.
    pub fn twist(&self, sub: &Subspace) -> Result<Subspace> {
        if sub.twist + 1 > 2 {
            return Err(Error::TwistOutOfRange(sub.twist + 1));
        }
        let rows = sub
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| self.gf.frob(x)).collect())
            .collect();
        Ok(Subspace {
            twist: sub.twist + 1,
            rows: linalg::rref(&self.gf, rows),
        })
    }

    /// Inverse of [`DieudonneModule::twist`].
    pub fn untwist(&self, sub: &Subspace) -> Result<Subspace> {
        let twist = sub
            .twist
            .checked_sub(1)
            .ok_or(Error::TwistMismatch { got: sub.twist, expected: 1 })?;
        let rows = sub
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| self.gf.frob(x)).collect())
            .collect();
        Ok(Subspace {
            twist,
            rows: linalg::rref(&self.gf, rows),
        })
    }

    pub fn contains(&self, outer: &Subspace, inner: &Subspace) -> Result<bool> {
        if outer.twist != inner.twist {
            return Err(Error::TwistMismatch {
                got: inner.twist,
                expected: outer.twist,
            });
        }
        Ok(inner
            .rows
            .iter()
            .all(|r| linalg::is_zero_row(&linalg::reduce(&self.gf, r, &outer.rows))))
    }

    /// The Hodge filtration omega, recovered as the untwist of ker F.
    pub fn hodge_filtration(&self) -> Result<Subspace> {
        self.untwist(&self.map_kernel(MapKind::F))
    }

    /// (Sigma-dimension, Sigma-bar-dimension) of a graded subspace.
    pub fn type_profile(&self, sub: &Subspace) -> Result<(usize, usize)> {
        let nm = self.n + self.m;
        let mut e_dim = 0;
        let mut f_dim = 0;
        for (idx, row) in sub.rows.iter().enumerate() {
            let has_e = row[..nm].iter().any(|x| !x.is_zero());
            let has_f = row[nm..].iter().any(|x| !x.is_zero());
            match (has_e, has_f) {
                (true, false) => e_dim += 1,
                (false, true) => f_dim += 1,
                _ => return Err(Error::NotGraded(idx)),
            }
        }
        Ok((e_dim, f_dim))
    }

    /// True when the Sigma and Sigma-bar dimensions agree.
    pub fn is_balanced(&self, sub: &Subspace) -> Result<bool> {
        let (e_dim, f_dim) = self.type_profile(sub)?;
        Ok(e_dim == f_dim)
    }

    /// The Sigma part of a graded subspace (rows supported on e-coordinates).
    pub fn sigma_part(&self, sub: &Subspace) -> Result<Subspace> {
        self.type_profile(sub)?; // reject non-graded input
        let nm = self.n + self.m;
        let rows: Vec<Row> = sub
            .rows
            .iter()
            .filter(|r| r[..nm].iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        Ok(Subspace {
            twist: sub.twist,
            rows,
        })
    }

    /// The Sigma-bar part of a graded subspace.
    pub fn sigma_bar_part(&self, sub: &Subspace) -> Result<Subspace> {
        self.type_profile(sub)?;
        let nm = self.n + self.m;
        let rows: Vec<Row> = sub
            .rows
            .iter()
            .filter(|r| r[nm..].iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        Ok(Subspace {
            twist: sub.twist,
            rows,
        })
    }

    /// If the subspace is spanned by standard basis vectors, returns their
    /// (e-indices, f-indices), 1-based.
    pub fn basis_indices(&self, sub: &Subspace) -> Option<(Vec<usize>, Vec<usize>)> {
        let nm = self.n + self.m;
        let mut e_idx = Vec::new();
        let mut f_idx = Vec::new();
        for row in &sub.rows {
            let support: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, _)| i)
                .collect();
            if support.len() != 1 || row[support[0]] != self.gf.one() {
                return None;
            }
            if support[0] < nm {
                e_idx.push(support[0] + 1);
            } else {
                f_idx.push(support[0] - nm + 1);
            }
        }
        Some((e_idx, f_idx))
    }
}

/// Closed-form step of the lattice recursion: F sends D(a,b) to
/// D(a^-, b^-) and V-preimage sends it to D(a^+, b^+), by the piecewise
/// tables below (valid for every pair in range).
pub fn lattice_step(
    n: usize,
    m: usize,
    pair: LatticePair,
    which: LatticeStep,
) -> Result<LatticePair> {
    let nm = n + m;
    let (a, b) = (pair.a, pair.b);
    if a > nm || b > nm {
        return Err(Error::LatticePairOutOfRange { a, b, max: nm });
    }
    let next = match which {
        LatticeStep::F => {
            let a_minus = if b <= m {
                b
            } else if b <= 2 * m {
                m
            } else {
                b - m
            };
            let b_minus = if a <= n - m {
                0
            } else if a <= n {
                a - (n - m)
            } else {
                m
            };
            LatticePair {
                a: a_minus,
                b: b_minus,
            }
        }
        LatticeStep::VInv => {
            let a_plus = if b <= m {
                n
            } else if b <= 2 * m {
                b + n - m
            } else {
                nm
            };
            let b_plus = if a <= n - m {
                a + m
            } else if a <= n {
                n
            } else {
                a
            };
            LatticePair { a: a_plus, b: b_plus }
        }
    };
    Ok(next)
}

/// The unique r >= 1 with r/(r+1) < m/n <= (r+1)/(r+2); defined exactly
/// when n < 2m. Uniqueness is verified by scanning.
pub fn r_of(n: usize, m: usize) -> Result<usize> {
    if m < 1 || m >= n {
        return Err(Error::BadSignature {
            n,
            m,
            requirement: "1 <= m < n",
        });
    }
    if n >= 2 * m {
        return Err(Error::RUndefined { n, m });
    }
    let in_window =
        |r: usize| -> bool { r * n < m * (r + 1) && m * (r + 2) <= n * (r + 1) };
    let hits: Vec<usize> = (1..=2 * n).filter(|&r| in_window(r)).collect();
    match hits.as_slice() {
        [r] => Ok(*r),
        _ => Err(Error::Inconsistent(format!(
            "expected a unique r for (n,m) = ({n},{m}), found {hits:?}"
        ))),
    }
}

/// One recorded step of the canonical word evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordStep {
    /// Word applied so far, e.g. "F^3 V^-1 (0)".
    pub word: String,
    pub pair: LatticePair,
}

/// Result of evaluating V^{-2r} F^{2r+1} V^{-1}(0) by both engines.
#[derive(Debug, Clone)]
pub struct CanonicalWord {
    pub r: usize,
    pub lattice_result: LatticePair,
    pub matrix_result: Subspace,
    /// Lattice-engine trace: every intermediate pair in evaluation order,
    /// starting from V^{-1}(0).
    pub trace: Vec<WordStep>,
}

/// Evaluates the canonical-filtration word V^{-2r} F^{2r+1} V^{-1}(0)
/// twice: by the closed-form lattice recursion and by the matrix engine on
/// the standard module. The engines must agree, and the common value must
/// be D(2m, rn-(r-1)m).
pub fn canonical_word(n: usize, m: usize, gf: Gf) -> Result<CanonicalWord> {
    let r = r_of(n, m)?;
    let module = standard_fol_module(n, m, gf)?;

    // lattice engine
    let mut pair = lattice_step(n, m, LatticePair { a: 0, b: 0 }, LatticeStep::VInv)?;
    let mut trace = vec![WordStep {
        word: "V^-1 (0)".to_string(),
        pair,
    }];
    for k in 1..=2 * r + 1 {
        pair = lattice_step(n, m, pair, LatticeStep::F)?;
        trace.push(WordStep {
            word: format!("F^{k} V^-1 (0)"),
            pair,
        });
    }
    for k in 1..=2 * r {
        pair = lattice_step(n, m, pair, LatticeStep::VInv)?;
        trace.push(WordStep {
            word: format!("V^-{k} F^{} V^-1 (0)", 2 * r + 1),
            pair,
        });
    }

    // matrix engine: interleave explicit twists so F and V-preimage always
    // see a source in the twist they expect
    let mut sub = module.map_preimage(MapKind::V, &module.zero_space(1)?)?;
    for _ in 0..2 * r + 1 {
        sub = module.map_image(MapKind::F, &module.twist(&sub)?)?;
    }
    for _ in 0..2 * r {
        sub = module.map_preimage(MapKind::V, &module.twist(&sub)?)?;
    }

    let expected = module.lattice_subspace(pair, 0)?;
    if sub != expected {
        return Err(Error::Inconsistent(format!(
            "canonical word engines disagree for (n,m) = ({n},{m}): lattice gives D({},{}), matrix engine gives a {}-dimensional subspace",
            pair.a,
            pair.b,
            sub.dim()
        )));
    }
    let closed = LatticePair {
        a: 2 * m,
        b: r * n - (r - 1) * m,
    };
    if pair != closed {
        return Err(Error::Inconsistent(format!(
            "canonical word evaluates to D({},{}), expected D({},{})",
            pair.a, pair.b, closed.a, closed.b
        )));
    }
    Ok(CanonicalWord {
        r,
        lattice_result: pair,
        matrix_result: sub,
        trace,
    })
}

/// The Sigma part of the designated canonical-filtration piece: the piece
/// F V^{-1}(0) when 2m <= n, and V^{-2r} F^{2r+1} V^{-1}(0) when n < 2m.
/// Always a subspace of D_0 (twist zero).
pub fn canonical_m(module: &DieudonneModule) -> Result<Subspace> {
    let (n, m) = (module.n, module.m);
    if 2 * m <= n {
        let ker_v = module.map_kernel(MapKind::V);
        let piece = module.map_image(MapKind::F, &module.twist(&ker_v)?)?;
        module.sigma_part(&piece)
    } else {
        let word = canonical_word(n, m, module.gf)?;
        module.sigma_part(&word.matrix_result)
    }
}

/// Image of V restricted to Q = Span{f_{m+1}..f_{2m}}, checked against its
/// closed form (e^(p) indices [1,m] when 2m <= n, else [1,n-m] and
/// [n+1,2m]) and against containment in the twist of the canonical piece,
/// with equality exactly when 2m <= n.
pub fn vq_image(module: &DieudonneModule) -> Result<Subspace> {
    let (n, m) = (module.n, module.m);
    let q_indices: Vec<usize> = (m + 1..=2 * m).collect();
    let q = module.basis_span(0, &[], &q_indices)?;
    let image = module.map_image(MapKind::V, &q)?;

    let expected_e: Vec<usize> = if 2 * m <= n {
        (1..=m).collect()
    } else {
        (1..=n - m).chain(n + 1..=2 * m).collect()
    };
    let expected = module.basis_span(1, &expected_e, &[])?;
    if image != expected {
        return Err(Error::Inconsistent(format!(
            "V(Q) differs from its closed form for (n,m) = ({n},{m})"
        )));
    }

    let m_piece = module.twist(&canonical_m(module)?)?;
    if !module.contains(&m_piece, &image)? {
        return Err(Error::Inconsistent(format!(
            "V(Q) not contained in the twisted canonical piece for (n,m) = ({n},{m})"
        )));
    }
    let equal = m_piece == image;
    if equal != (2 * m <= n) {
        return Err(Error::Inconsistent(format!(
            "V(Q) equality with the canonical piece should hold iff 2m <= n; (n,m) = ({n},{m})"
        )));
    }
    Ok(image)
}

/// The m-by-m Hasse matrix of V_P^(p) composed with V_Q, written in the
/// basis f_{m+1}..f_{2m} of Q and its double twist. Zero exactly when
/// 2m <= n.
pub fn hasse_matrix(module: &DieudonneModule) -> Vec<Vec<FqElt>> {
    let (n, m) = (module.n, module.m);
    let nm = n + m;
    let gf = module.gf;
    let mut out = vec![vec![FqElt::ZERO; m]; m];
    for (col, j) in (m + 1..=2 * m).enumerate() {
        let mut unit = vec![FqElt::ZERO; module.dim()];
        unit[nm + j - 1] = gf.one();
        let once = linalg::mat_vec(&gf, &module.v_matrix, &unit);
        // V^(p) has the same coordinate matrix: the entries lie in the
        // prime field.
        let twice = linalg::mat_vec(&gf, &module.v_matrix, &once);
        for (row, i) in (m + 1..=2 * m).enumerate() {
            out[row][col] = twice[nm + i - 1];
        }
    }
    out
}

pub fn matrix_is_zero(mat: &[Vec<FqElt>]) -> bool {
    mat.iter().flatten().all(|x| x.is_zero())
}
