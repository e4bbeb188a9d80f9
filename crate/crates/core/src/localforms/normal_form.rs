use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Poly, Rational};
use crate::morphism::{Morphism, RankTriple};

use super::{jet_invert, morphism_to_jetmap, JetMap};

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRankReport {
    pub constant: bool,
    pub triple: RankTriple,
    /// A minor that is a nonzero polynomial although it vanishes at the
    /// point, when the rank is not constant.
    pub witness: Option<String>,
}

/// Constant rank near `b`: every minor one size above the rank at `b`, of
/// `F`, `H` and the full Jacobian, is the zero polynomial. Since minors
/// are polynomials on all of `R^n'`, vanishing identically is the same as
/// vanishing near `b`.
pub fn constant_rank_check(m: &Morphism, b: &[Rational]) -> Result<ConstantRankReport> {
    let triple = m.rank_at(b)?;
    let jb = m.jacobian();
    let full = jb.assemble(m.src().0);
    let checks = [
        ("F", &jb.f, triple.reduced),
        ("H", &jb.h, triple.formal),
        ("J", &full, triple.total),
    ];
    for (name, mat, r) in checks {
        if let Some((rows, cols, det)) = mat.nonvanishing_minor(r + 1) {
            let names = crate::series::var_names("u", m.src().0);
            let witness = format!(
                "{}-minor of {name} on rows {:?}, columns {:?} is {}",
                r + 1,
                rows.iter().map(|i| i + 1).collect_vec(),
                cols.iter().map(|i| i + 1).collect_vec(),
                det.render(&names)
            );
            return Ok(ConstantRankReport {
                constant: false,
                triple,
                witness: Some(witness),
            });
        }
    }
    Ok(ConstantRankReport {
        constant: true,
        triple,
        witness: None,
    })
}

/// Jet-level constant-rank normal form at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub triple: RankTriple,
    /// Target chart change, from `(a, 0)` to the origin.
    pub theta_tgt: JetMap,
    /// Source chart change, from `(b, 0)` to the origin.
    pub theta_src: JetMap,
    /// `theta_tgt . phi_b . theta_src^{-1}`, of the shape
    /// `(u_1..u_r1, g, z_1..z_r2; z_{r2+1}..z_{r2+r3}, h)`.
    pub conjugated: JetMap,
}

impl NormalForm {
    pub fn r1(&self) -> usize {
        self.triple.reduced
    }
    pub fn r2(&self) -> usize {
        self.triple.mixed()
    }
    pub fn r3(&self) -> usize {
        self.triple.formal
    }
}

/// Normal form of a constant-rank morphism at `b`, modulo degree
/// `order + 1`.
///
/// The reduced map is straightened first: a nonsingular minor of `F`
/// gives source coordinates in which `r1` components are coordinates, and
/// the remaining reduced components, which then depend on those alone,
/// are subtracted in the target. A second source change then makes the
/// first `r1` x-components, `r2` further x-components and `r3`
/// y-components into coordinates, and a permutation of the target puts
/// everything in place.
pub fn rank_normal_form(m: &Morphism, b: &[Rational], order: usize) -> Result<NormalForm> {
    let report = constant_rank_check(m, b)?;
    if !report.constant {
        return Err(Error::NotConstantRank(report.witness.unwrap_or_default()));
    }
    let triple = report.triple;
    let (n1, k1) = m.src();
    let (n, k) = m.tgt();
    let (ms, mt) = (n1 + k1, n + k);
    let (r1, r2, r3) = (triple.reduced, triple.mixed(), triple.formal);
    let phi_b = morphism_to_jetmap(m, b, order)?;
    let order = phi_b.order();
    let zs = vec![Rational::zero(); ms];
    let zt = vec![Rational::zero(); mt];

    let centered =
        JetMap::from_shifted(m.src(), m.tgt(), zs.clone(), phi_b.centered_polys(), order)?;
    let jb = m.jacobian();
    let fb = jb.f.eval(b)?;
    let hb = jb.h.eval(b)?;

    // source straightening of the reduced map
    let (i1, c1) = fb
        .first_nonsingular_minor(r1)
        .ok_or_else(|| internal("no nonsingular minor of F"))?;
    let mut sigma = Vec::with_capacity(ms);
    for &i in &i1 {
        sigma.push(reduced_part(&centered.centered_polys()[i], n1));
    }
    for c in (0..n1).filter(|c| !c1.contains(c)) {
        sigma.push(Poly::var(ms, c)?);
    }
    for j in 0..k1 {
        sigma.push(Poly::var(ms, n1 + j)?);
    }
    let sigma = JetMap::from_shifted(m.src(), m.src(), zs.clone(), sigma, order)?;
    let phi1 = JetMap::compose(&centered, &jet_invert(&sigma, order)?)?;

    // the other reduced components must be functions of v_1..v_r1
    let phi1_polys = phi1.centered_polys();
    let rest_rows: Vec<usize> = (0..n).filter(|i| !i1.contains(i)).collect();
    let first_r1: Vec<usize> = (0..r1).collect();
    let mut tau = (0..mt)
        .map(|i| Poly::var(mt, i))
        .collect::<Result<Vec<_>>>()?;
    for &i in &rest_rows {
        let red = reduced_part(&phi1_polys[i], n1);
        if !red.only_uses(&first_r1) {
            return Err(Error::NotConstantRank(format!(
                "reduced component x{} still depends on the free smooth directions",
                i + 1
            )));
        }
        let rename: Vec<usize> = (0..ms).map(|v| if v < r1 { i1[v] } else { 0 }).collect();
        tau[i] = &tau[i] - &red.rename(mt, &rename);
    }
    let tau = JetMap::from_shifted(m.tgt(), m.tgt(), zt.clone(), tau, order)?;
    let phi2 = JetMap::compose(&tau, &phi1)?;

    // pick the formal coordinates that become z_1..z_{r2+r3}
    let lin = phi2.linear_part();
    let g2 = lin.submatrix(&(0..n).collect_vec(), &(n1..ms).collect_vec());
    let (s_rows, c3) = hb
        .first_nonsingular_minor(r3)
        .ok_or_else(|| internal("no nonsingular minor of H"))?;
    let (r2_rows, c2) = mixed_minor(&g2, &hb, &rest_rows, &s_rows, &c3, r2)
        .ok_or_else(|| Error::NotConstantRank("no nonsingular mixed minor".into()))?;

    let phi2_polys = phi2.centered_polys();
    let mut psi = Vec::with_capacity(ms);
    for &i in &i1 {
        psi.push(phi2_polys[i].clone());
    }
    for v in r1..n1 {
        psi.push(Poly::var(ms, v)?);
    }
    for &i in &r2_rows {
        psi.push(phi2_polys[i].clone());
    }
    for &j in &s_rows {
        psi.push(phi2_polys[n + j].clone());
    }
    for j in (0..k1).filter(|j| !c2.contains(j) && !c3.contains(j)) {
        psi.push(Poly::var(ms, n1 + j)?);
    }
    let psi = JetMap::from_shifted(m.src(), m.src(), zs.clone(), psi, order)?;
    let psi_inv = jet_invert(&psi, order)?;

    // new target order: x in (I1, middle, R2), y in (S, rest)
    let middle: Vec<usize> = rest_rows
        .iter()
        .copied()
        .filter(|i| !r2_rows.contains(i))
        .collect();
    let mut perm: Vec<usize> = i1.iter().chain(&middle).chain(&r2_rows).copied().collect();
    perm.extend(s_rows.iter().map(|j| n + j));
    perm.extend((0..k).filter(|j| !s_rows.contains(j)).map(|j| n + j));
    let perm = JetMap::from_shifted(
        m.tgt(),
        m.tgt(),
        zt.clone(),
        perm.iter()
            .map(|&p| Poly::var(mt, p))
            .collect::<Result<_>>()?,
        order,
    )?;

    let center_src = JetMap::centering(m.src(), phi_b.src_base().to_vec(), order)?;
    let center_tgt = JetMap::centering(m.tgt(), phi_b.tgt_base().to_vec(), order)?;
    let theta_src = JetMap::compose(&psi, &JetMap::compose(&sigma, &center_src)?)?;
    let theta_tgt = JetMap::compose(&perm, &JetMap::compose(&tau, &center_tgt)?)?;
    let conjugated = JetMap::compose(&perm, &JetMap::compose(&phi2, &psi_inv)?)?;

    check_shape(&conjugated, r1, r2, r3)?;
    Ok(NormalForm {
        triple,
        theta_tgt,
        theta_src,
        conjugated,
    })
}

fn internal(msg: &str) -> Error {
    Error::NotConstantRank(msg.to_string())
}

/// Terms free of the formal variables (indices `>= n_smooth`).
pub(crate) fn reduced_part(p: &Poly, n_smooth: usize) -> Poly {
    Poly::from_terms(
        p.arity(),
        p.terms()
            .filter(|(m, _)| m.exps()[n_smooth..].iter().all(|&e| e == 0))
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Lexicographically first rows `R2` (among `rest_rows`) and columns `C2`
/// (outside `C3`) with `[[G2[R2]], [H[S]]]` nonsingular on `C2 + C3`.
fn mixed_minor(
    g2: &Matrix<Rational>,
    h: &Matrix<Rational>,
    rest_rows: &[usize],
    s_rows: &[usize],
    c3: &[usize],
    r2: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let free_cols: Vec<usize> = (0..h.cols()).filter(|c| !c3.contains(c)).collect();
    for rows in rest_rows.iter().copied().combinations(r2) {
        for cols in free_cols.iter().copied().combinations(r2) {
            let all_cols: Vec<usize> = cols.iter().chain(c3).copied().collect();
            let mut stacked = g2.submatrix(&rows, &all_cols).to_rows();
            stacked.extend(h.submatrix(s_rows, &all_cols).to_rows());
            let mat = Matrix::from_rows(stacked, all_cols.len());
            if !mat.det().is_zero() {
                return Some((rows, cols));
            }
        }
    }
    None
}

/// Checks the normal-form shape: x-components `u_1..u_r1, g, z_1..z_r2`,
/// y-components `z_{r2+1}..z_{r2+r3}, h`, with `g` and `h` in the formal
/// ideal, `g` linear only in `z_1..z_{r2+r3}` and `h` linear only in
/// `z_{r2+1}..z_{r2+r3}`.
fn check_shape(c: &JetMap, r1: usize, r2: usize, r3: usize) -> Result<()> {
    let (n1, k1) = c.src();
    let (n, k) = c.tgt();
    let ms = n1 + k1;
    let polys = c.centered_polys();
    let fail = |what: String| {
        Err(Error::NotConstantRank(format!(
            "normal form check failed: {what}"
        )))
    };
    let coord = |v: usize| Poly::var(ms, v).unwrap().truncate(c.order());
    for (l, p) in polys.iter().enumerate().take(r1) {
        if *p != coord(l) {
            return fail(format!("x{} is not u{}", l + 1, l + 1));
        }
    }
    for m in 0..r2 {
        if polys[n - r2 + m] != coord(n1 + m) {
            return fail(format!("x{} is not z{}", n - r2 + m + 1, m + 1));
        }
    }
    for m in 0..r3 {
        if polys[n + m] != coord(n1 + r2 + m) {
            return fail(format!("y{} is not z{}", m + 1, r2 + m + 1));
        }
    }
    let linear_in = |p: &Poly, j: usize| {
        p.terms().any(|(mono, _)| {
            let e = mono.exps();
            e[n1..].iter().sum::<u32>() == 1 && e[n1 + j] == 1
        })
    };
    let has_pure_smooth = |p: &Poly| {
        p.terms()
            .any(|(mono, _)| mono.exps()[n1..].iter().all(|&e| e == 0))
    };
    for (i, p) in polys.iter().enumerate().take(n - r2).skip(r1) {
        if has_pure_smooth(p) {
            return fail(format!("g for x{} is not in the formal ideal", i + 1));
        }
        if let Some(j) = (r2 + r3..k1).find(|&j| linear_in(p, j)) {
            return fail(format!("g for x{} is linear in z{}", i + 1, j + 1));
        }
    }
    for jj in r3..k {
        let p = &polys[n + jj];
        if has_pure_smooth(p) {
            return fail(format!("h for y{} is not in the formal ideal", jj + 1));
        }
        if let Some(j) = (0..k1)
            .filter(|j| *j < r2 || *j >= r2 + r3)
            .find(|&j| linear_in(p, j))
        {
            return fail(format!("h for y{} is linear in z{}", jj + 1, j + 1));
        }
    }
    Ok(())
}
