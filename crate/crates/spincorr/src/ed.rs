//! Sector-resolved sparse exact diagonalization of periodic spin-1/2 rings
//! (XXZ and transverse-field Ising), with ground-multiplet detection and
//! pair reduced density matrices.
//!
//! The XXZ chain conserves total Sz; the Ising chain conserves parity.
//! Hamiltonians are applied matrix-free per sector; small sectors fall back
//! to dense diagonalization. Reduced density matrices of degenerate ground
//! spaces are equal-weight mixtures over an orthonormal ground basis, which
//! reproduces the classical doublet mixtures of the polarized phases.

use crate::error::{Error, Result};
use crate::util::SplitMix64;
use crate::xstate::{SpinFunctions, XState};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

/// Dimension at or below which sectors are diagonalized densely.
const DENSE_MAX: usize = 512;
/// Residual threshold for accepted eigenpairs.
const RESIDUAL_TOL: f64 = 1e-9;
/// Default Lanczos iteration cap.
const MAX_LANCZOS_ITER: usize = 2000;
/// Eigenpairs requested per sector; covers every within-sector ground
/// degeneracy occurring in these models.
const PAIRS_PER_SECTOR: usize = 6;

/// Model selector with its control parameter. The exchange J is fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Xxz { delta: f64 },
    Tfim { g: f64 },
}

/// A periodic ring of spin-1/2 sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSpec {
    pub sites: usize,
    pub model: Model,
}

impl RingSpec {
    pub fn new(sites: usize, model: Model) -> Result<Self> {
        if !(2..=20).contains(&sites) {
            return Err(Error::InvalidArgument(format!(
                "site count {sites} outside 2..=20"
            )));
        }
        if matches!(model, Model::Tfim { .. }) && sites % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "Ising ring needs an even site count, got {sites}"
            )));
        }
        Ok(RingSpec { sites, model })
    }
}

/// Symmetry sector label: total up-spin count for XXZ, parity of the
/// down-spin count for TFIM, or the unrestricted space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    UpCount(usize),
    Parity(bool),
    Full,
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sector::UpCount(n) => write!(f, "n_up={n}"),
            Sector::Parity(even) => write!(f, "parity={}", if *even { "even" } else { "odd" }),
            Sector::Full => write!(f, "full"),
        }
    }
}

/// All sectors of the model's conserved quantity.
pub fn sectors(spec: &RingSpec) -> Vec<Sector> {
    match spec.model {
        Model::Xxz { .. } => (0..=spec.sites).map(Sector::UpCount).collect(),
        Model::Tfim { .. } => vec![Sector::Parity(true), Sector::Parity(false)],
    }
}

/// A sector-restricted Hamiltonian, applied matrix-free.
pub struct SectorOperator {
    spec: RingSpec,
    sector: Sector,
    basis: Arc<Vec<u32>>,
}

/// Builds the sector-restricted Hamiltonian operator.
pub fn build_hamiltonian(spec: &RingSpec, sector: Sector) -> Result<SectorOperator> {
    SectorOperator::new(spec, sector)
}

impl SectorOperator {
    pub fn new(spec: &RingSpec, sector: Sector) -> Result<Self> {
        match (&spec.model, sector) {
            (Model::Xxz { .. }, Sector::UpCount(n)) if n > spec.sites => {
                return Err(Error::SectorEmpty(sector.to_string()))
            }
            (Model::Xxz { .. }, Sector::UpCount(_))
            | (Model::Tfim { .. }, Sector::Parity(_))
            | (_, Sector::Full) => {}
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "sector {sector} does not match the model's conserved quantity"
                )))
            }
        }
        let l = spec.sites;
        let states: Vec<u32> = (0u32..(1 << l))
            .filter(|s| match sector {
                Sector::UpCount(n) => s.count_ones() as usize == n,
                Sector::Parity(even) => ((l as u32 - s.count_ones()) % 2 == 0) == even,
                Sector::Full => true,
            })
            .collect();
        if states.is_empty() {
            return Err(Error::SectorEmpty(sector.to_string()));
        }
        Ok(SectorOperator {
            spec: *spec,
            sector,
            basis: Arc::new(states),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn basis(&self) -> &Arc<Vec<u32>> {
        &self.basis
    }

    fn index_of(&self, state: u32) -> usize {
        self.basis.binary_search(&state).expect("state in sector")
    }

    /// y += H x, with y zeroed on entry.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        y.iter_mut().for_each(|v| *v = 0.0);
        let l = self.spec.sites;
        match self.spec.model {
            Model::Xxz { delta } => {
                for (idx, &s) in self.basis.iter().enumerate() {
                    let amp = x[idx];
                    let mut aligned = 0i32;
                    for i in 0..l {
                        let j = (i + 1) % l;
                        let bi = (s >> i) & 1;
                        let bj = (s >> j) & 1;
                        if bi == bj {
                            aligned += 1;
                        } else {
                            aligned -= 1;
                            // flip-flop term, amplitude -J
                            let flipped = s ^ ((1 << i) | (1 << j));
                            y[self.index_of(flipped)] -= amp;
                        }
                    }
                    y[idx] -= 0.5 * delta * aligned as f64 * amp;
                }
            }
            Model::Tfim { g } => {
                for (idx, &s) in self.basis.iter().enumerate() {
                    let amp = x[idx];
                    let sz_total = 2.0 * s.count_ones() as f64 - l as f64;
                    y[idx] -= g * sz_total * amp;
                    for i in 0..l {
                        let j = (i + 1) % l;
                        let flipped = s ^ ((1 << i) | (1 << j));
                        y[self.index_of(flipped)] -= amp;
                    }
                }
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; n];
        for col in 0..n {
            x[col] = 1.0;
            self.apply(&x, &mut y);
            for row in 0..n {
                m[(row, col)] = y[row];
            }
            x[col] = 0.0;
        }
        m
    }
}

/// One orthonormal member of the ground multiplet, stored on its sector
/// basis.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub sector: Sector,
    pub basis: Arc<Vec<u32>>,
    pub amplitudes: Vec<f64>,
}

/// Ground energy and an orthonormal basis of the ground space across all
/// sectors.
#[derive(Debug, Clone)]
pub struct GroundSolution {
    pub spec: RingSpec,
    pub energy: f64,
    pub states: Vec<GroundState>,
}

impl GroundSolution {
    pub fn degeneracy(&self) -> usize {
        self.states.len()
    }
}

fn sector_lowest(op: &SectorOperator, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = op.dim();
    let k = count.min(n);
    if n <= DENSE_MAX {
        let eig = op.to_dense().symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        Ok(order
            .iter()
            .take(k)
            .map(|&i| {
                (
                    eig.eigenvalues[i],
                    eig.eigenvectors.column(i).iter().cloned().collect(),
                )
            })
            .collect())
    } else {
        lanczos_lowest(|x, y| op.apply(x, y), n, k, MAX_LANCZOS_ITER)
    }
}

/// Lanczos with full reorthogonalization; restarts with a fresh orthogonal
/// start vector when an invariant subspace is exhausted, so degenerate
/// multiplets are resolved.
fn lanczos_lowest<F>(
    apply: F,
    dim: usize,
    k: usize,
    max_iter: usize,
) -> Result<Vec<(f64, Vec<f64>)>>
where
    F: Fn(&[f64], &mut [f64]),
{
    let mut vectors: Vec<DVector<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new(); // beta[i] couples vector i and i+1
    let mut rng = SplitMix64::new(0x9d5c_e011);

    let fresh_orthogonal =
        |vectors: &[DVector<f64>], rng: &mut SplitMix64| -> Option<DVector<f64>> {
            for _attempt in 0..8 {
                let mut v = DVector::from_fn(dim, |_, _| rng.next_f64() - 0.5);
                for u in vectors {
                    let proj = u.dot(&v);
                    v.axpy(-proj, u, 1.0);
                }
                let norm = v.norm();
                if norm > 1e-8 {
                    return Some(v / norm);
                }
            }
            None
        };

    vectors.push(fresh_orthogonal(&vectors, &mut rng).expect("nonzero start vector"));
    let mut hv = vec![0.0; dim];
    let mut iter = 0usize;

    loop {
        iter += 1;
        if iter > max_iter {
            return Err(Error::NoConvergence(max_iter));
        }
        let m = vectors.len();
        apply(vectors[m - 1].as_slice(), &mut hv);
        let mut w = DVector::from_column_slice(&hv);
        let alpha = vectors[m - 1].dot(&w);
        alphas.push(alpha);
        // full reorthogonalization, two passes
        for _ in 0..2 {
            for u in &vectors {
                let proj = u.dot(&w);
                w.axpy(-proj, u, 1.0);
            }
        }
        let beta = w.norm();

        let exhausted = beta < 1e-12;
        if exhausted {
            if m >= dim {
                betas.push(0.0);
            } else {
                match fresh_orthogonal(&vectors, &mut rng) {
                    Some(v) => {
                        betas.push(0.0);
                        vectors.push(v);
                    }
                    None => betas.push(0.0),
                }
            }
        } else {
            betas.push(beta);
            vectors.push(w / beta);
        }

        let check_now = m >= k && (m % 10 == 0 || m >= dim || (exhausted && vectors.len() == m));
        if check_now {
            if let Some(pairs) = ritz_if_converged(&apply, &vectors, &alphas, &betas, dim, k)? {
                return Ok(pairs);
            }
            if m >= dim {
                return Err(Error::NoConvergence(iter));
            }
        }
    }
}

/// Diagonalizes the projected tridiagonal matrix and returns the k lowest
/// Ritz pairs once their true residuals pass the tolerance.
fn ritz_if_converged<F>(
    apply: &F,
    vectors: &[DVector<f64>],
    alphas: &[f64],
    betas: &[f64],
    dim: usize,
    k: usize,
) -> Result<Option<Vec<(f64, Vec<f64>)>>>
where
    F: Fn(&[f64], &mut [f64]),
{
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = t.symmetric_eigen();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());

    // Cheap residual bound |beta_m y_m| before forming any Ritz vector.
    let beta_last = betas[m - 1];
    for &col in order.iter().take(k) {
        if (beta_last * eig.eigenvectors[(m - 1, col)]).abs() > 0.1 * RESIDUAL_TOL {
            return Ok(None);
        }
    }

    let mut pairs = Vec::with_capacity(k);
    let mut hv = vec![0.0; dim];
    for &col in order.iter().take(k) {
        let theta = eig.eigenvalues[col];
        let mut x = DVector::zeros(dim);
        for (i, v) in vectors.iter().take(m).enumerate() {
            x.axpy(eig.eigenvectors[(i, col)], v, 1.0);
        }
        let norm = x.norm();
        if norm < 1e-12 {
            return Ok(None);
        }
        x /= norm;
        apply(x.as_slice(), &mut hv);
        let mut residual = 0.0f64;
        for i in 0..dim {
            let r = hv[i] - theta * x[i];
            residual += r * r;
        }
        if residual.sqrt() > RESIDUAL_TOL {
            return Ok(None);
        }
        pairs.push((theta, x.as_slice().to_vec()));
    }
    Ok(Some(pairs))
}

/// Ground multiplet across all sectors. `degeneracy_tol` defaults to
/// 1e-9 * L, wide enough to absorb the exponentially small splittings of
/// the polarized phases.
pub fn ground_space(spec: &RingSpec, degeneracy_tol: Option<f64>) -> Result<GroundSolution> {
    let tol = degeneracy_tol.unwrap_or(1e-9 * spec.sites as f64);
    let per_sector: Vec<Result<(SectorOperator, Vec<(f64, Vec<f64>)>)>> = sectors(spec)
        .into_par_iter()
        .map(|sector| {
            let op = SectorOperator::new(spec, sector)?;
            let pairs = sector_lowest(&op, PAIRS_PER_SECTOR)?;
            Ok((op, pairs))
        })
        .collect();

    let mut candidates: Vec<(f64, GroundState)> = Vec::new();
    for entry in per_sector {
        let (op, pairs) = entry?;
        for (energy, amplitudes) in pairs {
            candidates.push((
                energy,
                GroundState {
                    sector: op.sector(),
                    basis: op.basis().clone(),
                    amplitudes,
                },
            ));
        }
    }
    let energy = candidates
        .iter()
        .map(|(e, _)| *e)
        .fold(f64::INFINITY, f64::min);
    let mut states: Vec<GroundState> = candidates
        .into_iter()
        .filter(|(e, _)| *e <= energy + tol)
        .map(|(_, s)| s)
        .collect();
    orthonormalize_within_sectors(&mut states);
    Ok(GroundSolution {
        spec: *spec,
        energy,
        states,
    })
}

/// Gram-Schmidt within each sector; cross-sector states are orthogonal by
/// construction. Drops numerically dependent vectors.
fn orthonormalize_within_sectors(states: &mut Vec<GroundState>) {
    let mut kept: Vec<GroundState> = Vec::with_capacity(states.len());
    for mut s in states.drain(..) {
        for prev in kept.iter().filter(|p| p.sector == s.sector) {
            let proj: f64 = prev
                .amplitudes
                .iter()
                .zip(&s.amplitudes)
                .map(|(a, b)| a * b)
                .sum();
            for (x, y) in s.amplitudes.iter_mut().zip(&prev.amplitudes) {
                *x -= proj * y;
            }
        }
        let norm: f64 = s.amplitudes.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for x in s.amplitudes.iter_mut() {
                *x /= norm;
            }
            kept.push(s);
        }
    }
    *states = kept;
}

/// Pair reduced density matrix at sites `i`, `j` of the equal-weight
/// ground-space mixture, validated against the X form.
pub fn pair_density(sol: &GroundSolution, i: usize, j: usize) -> Result<XState> {
    if i == j || i >= sol.spec.sites || j >= sol.spec.sites {
        return Err(Error::InvalidArgument(format!(
            "invalid site pair ({i}, {j}) for L = {}",
            sol.spec.sites
        )));
    }
    let mut rho = [[0.0f64; 4]; 4];
    let weight = 1.0 / sol.states.len() as f64;
    for state in &sol.states {
        let mask = !((1u32 << i) | (1u32 << j));
        let mut groups: HashMap<u32, [f64; 4]> = HashMap::new();
        for (&s, &amp) in state.basis.iter().zip(&state.amplitudes) {
            let bi = (s >> i) & 1;
            let bj = (s >> j) & 1;
            // basis order uu, ud, du, dd with bit set = up
            let cfg = ((1 - bi) * 2 + (1 - bj)) as usize;
            groups.entry(s & mask).or_default()[cfg] += amp;
        }
        for block in groups.values() {
            for r in 0..4 {
                for c in 0..4 {
                    rho[r][c] += weight * block[r] * block[c];
                }
            }
        }
    }
    let off_x = [
        rho[0][1], rho[0][2], rho[1][0], rho[2][0], rho[1][3], rho[3][1], rho[2][3], rho[3][2],
    ];
    for v in off_x {
        if v.abs() > 1e-10 {
            return Err(Error::SymmetryViolation(format!(
                "pair density has off-X element {v:e}"
            )));
        }
    }
    XState::new(
        rho[0][0],
        rho[1][1],
        rho[2][2],
        rho[3][3],
        0.5 * (rho[1][2] + rho[2][1]),
        0.5 * (rho[0][3] + rho[3][0]),
    )
}

/// Spin functions of the equal-weight ground mixture for the pair (i, j).
pub fn spin_correlators(sol: &GroundSolution, i: usize, j: usize) -> Result<SpinFunctions> {
    Ok(pair_density(sol, i, j)?.spin_functions())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xxz(l: usize, delta: f64) -> RingSpec {
        RingSpec::new(l, Model::Xxz { delta }).unwrap()
    }

    fn tfim(l: usize, g: f64) -> RingSpec {
        RingSpec::new(l, Model::Tfim { g }).unwrap()
    }

    /// Dense full-space diagonalization; the brute-force oracle.
    fn dense_ground_energy(spec: &RingSpec) -> f64 {
        let op = SectorOperator::new(spec, Sector::Full).unwrap();
        let eig = op.to_dense().symmetric_eigen();
        eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn xxz_two_site_matches_dense_oracle() {
        // L = 2 doubles the single bond: H = -(XX + YY + Delta ZZ).
        let spec = xxz(2, 1.0);
        let op = SectorOperator::new(&spec, Sector::Full).unwrap();
        assert_eq!(op.dim(), 4);
        let e0 = dense_ground_energy(&spec);
        let sol = ground_space(&spec, None).unwrap();
        assert!((sol.energy - e0).abs() < 1e-12);
        // triplet ground multiplet at E = -Delta
        assert!((sol.energy + 1.0).abs() < 1e-12);
        assert_eq!(sol.degeneracy(), 3);
    }

    #[test]
    fn tfim_two_site_classical_doublet() {
        let spec = tfim(2, 0.0);
        let sol = ground_space(&spec, None).unwrap();
        assert!((sol.energy + 2.0).abs() < 1e-12);
        assert_eq!(sol.degeneracy(), 2);
    }

    #[test]
    fn xxz_four_site_free_fermion_point() {
        let spec = xxz(4, 0.0);
        let e0 = dense_ground_energy(&spec);
        let sol = ground_space(&spec, None).unwrap();
        assert!((sol.energy - e0).abs() < 1e-10);
    }

    #[test]
    fn xxz_degeneracies() {
        let sol = ground_space(&xxz(8, 2.0), None).unwrap();
        assert_eq!(sol.degeneracy(), 2, "polarized doublet");
        let sol = ground_space(&xxz(8, 0.5), None).unwrap();
        assert_eq!(sol.degeneracy(), 1, "unique planar ground state");
        let sol = ground_space(&xxz(8, 1.0), None).unwrap();
        assert_eq!(sol.degeneracy(), 9, "SU(2) multiplet at the Heisenberg point");
    }

    #[test]
    fn hermiticity_random_vectors() {
        let spec = xxz(6, 0.7);
        let op = SectorOperator::new(&spec, Sector::UpCount(3)).unwrap();
        let n = op.dim();
        let mut rng = SplitMix64::new(42);
        let x: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
        let z: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
        let mut hx = vec![0.0; n];
        let mut hz = vec![0.0; n];
        op.apply(&x, &mut hx);
        op.apply(&z, &mut hz);
        let lhs: f64 = z.iter().zip(&hx).map(|(a, b)| a * b).sum();
        let rhs: f64 = x.iter().zip(&hz).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn lanczos_matches_dense_small_sizes() {
        // full-spectrum dense oracle tops out at L = 10 (dim 1024); the
        // dim-924 sector comparison below exercises the Lanczos path
        for l in [8usize, 10] {
            for delta in [-1.3, 0.4, 1.7] {
                let spec = xxz(l, delta);
                let e_dense = dense_ground_energy(&spec);
                let sol = ground_space(&spec, None).unwrap();
                assert!(
                    sol.energy <= e_dense + 1e-9,
                    "variational bound violated at L={l}, delta={delta}"
                );
                assert!((sol.energy - e_dense).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn lanczos_path_agrees_with_dense_oracle() {
        // Sz = 0 sector of L = 12 has dimension 924, above DENSE_MAX.
        let spec = xxz(12, -0.6);
        let op = SectorOperator::new(&spec, Sector::UpCount(6)).unwrap();
        assert!(op.dim() > DENSE_MAX);
        let pairs = lanczos_lowest(|x, y| op.apply(x, y), op.dim(), 3, MAX_LANCZOS_ITER).unwrap();
        let eig = op.to_dense().symmetric_eigen();
        let mut dense: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
        dense.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, (theta, _)) in pairs.iter().enumerate() {
            assert!((theta - dense[k]).abs() < 1e-9, "pair {k}");
        }
    }

    #[test]
    fn ground_states_orthonormal_with_small_residual() {
        let spec = xxz(8, 1.0);
        let sol = ground_space(&spec, None).unwrap();
        for (i, a) in sol.states.iter().enumerate() {
            for (j, b) in sol.states.iter().enumerate() {
                if a.sector != b.sector {
                    continue;
                }
                let dot: f64 = a
                    .amplitudes
                    .iter()
                    .zip(&b.amplitudes)
                    .map(|(x, y)| x * y)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10);
            }
        }
        for s in &sol.states {
            let op = SectorOperator::new(&spec, s.sector).unwrap();
            let mut hv = vec![0.0; op.dim()];
            op.apply(&s.amplitudes, &mut hv);
            let mut r2 = 0.0;
            for (h, x) in hv.iter().zip(&s.amplitudes) {
                let r = h - sol.energy * x;
                r2 += r * r;
            }
            assert!(r2.sqrt() < 1e-9);
        }
    }

    #[test]
    fn pair_density_classical_limits() {
        // XXZ polarized doublet: a = d = 1/2 mixture
        let sol = ground_space(&xxz(8, 2.0), None).unwrap();
        let x = pair_density(&sol, 0, 1).unwrap();
        assert!((x.a - 0.5).abs() < 1e-12 && (x.d - 0.5).abs() < 1e-12);
        assert!(x.b1.abs() < 1e-12 && x.z.abs() < 1e-12 && x.f.abs() < 1e-12);

        // TFIM g = 0: c1 = 1 doublet mixture
        let sol = ground_space(&tfim(8, 0.0), None).unwrap();
        let c = pair_density(&sol, 0, 1).unwrap().coeffs();
        assert!((c.c1 - 1.0).abs() < 1e-10);
        assert!(c.c2.abs() < 1e-10 && c.c3.abs() < 1e-10);
        assert!(c.c4.abs() < 1e-10 && c.c5.abs() < 1e-10);
    }

    #[test]
    fn heisenberg_point_su2_symmetric_correlators() {
        // Sublattice rotation maps Delta = -1 to the antiferromagnetic
        // Heisenberg model, whose singlet ground state gives
        // Gxx = Gyy = -Gzz on a nearest-neighbor bond.
        let sol = ground_space(&xxz(12, -1.0), None).unwrap();
        let s = spin_correlators(&sol, 0, 1).unwrap();
        assert!((s.gxx - s.gyy).abs() < 1e-10);
        assert!((s.gxx + s.gzz).abs() < 1e-10);
    }

    #[test]
    fn correlator_limits() {
        let sol = ground_space(&xxz(8, 2.0), None).unwrap();
        let s = spin_correlators(&sol, 0, 1).unwrap();
        assert!((s.gzz - 1.0).abs() < 1e-12);
        assert!(s.gxx.abs() < 1e-12 && s.gyy.abs() < 1e-12);

        let sol = ground_space(&tfim(8, 100.0), None).unwrap();
        let s = spin_correlators(&sol, 0, 1).unwrap();
        assert!((s.gz_i - 1.0).abs() < 1e-3, "paramagnetic limit");
    }

    #[test]
    fn translation_invariance() {
        let spec = xxz(10, 0.3);
        let sol = ground_space(&spec, None).unwrap();
        let reference = spin_correlators(&sol, 0, 1).unwrap();
        for i in 1..spec.sites {
            let s = spin_correlators(&sol, i, (i + 1) % spec.sites).unwrap();
            assert!((s.gzz - reference.gzz).abs() < 1e-10);
            assert!((s.gxx - reference.gxx).abs() < 1e-10);
            assert!((s.gz_i - reference.gz_i).abs() < 1e-10);
        }
    }

    #[test]
    fn empty_sector_rejected() {
        let spec = xxz(4, 0.0);
        assert!(matches!(
            SectorOperator::new(&spec, Sector::UpCount(9)),
            Err(Error::SectorEmpty(_))
        ));
    }

    #[test]
    fn xx_point_approaches_free_fermion_values() {
        // c1 -> 2/pi, c3 -> -4/pi^2 as L grows
        let sol = ground_space(&xxz(16, 0.0), None).unwrap();
        let c = pair_density(&sol, 0, 1).unwrap().coeffs();
        assert!((c.c1 - 2.0 / std::f64::consts::PI).abs() < 2e-2);
        assert!((c.c3 + 4.0 / (std::f64::consts::PI * std::f64::consts::PI)).abs() < 2e-2);
    }
}
