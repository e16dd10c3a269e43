##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Kinematic geometric phase of the mixed two-spin state
#             Eigen-branches of rho(t) are tracked along a trajectory by
#             maximal-overlap matching and brought to the parallel-transport
#             gauge; the phase sums sqrt(p(0) p(tau)) <p(0)|p(tau)> times the
#             connection factor over the branches with support. Also holds
#             the pure-state oracle, the product-of-overlaps cross-check and
#             a verbatim evaluator of the printed closed form.
##############################################################################

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, optimize

import milburnDynamics as md
from xxzErrors import DomainError

EPS_P = 1e-12
DEG_TOL = 1e-9
MIN_OVERLAP = 0.9
SUM_FLOOR = 1e-9
CONVERGENCE_TOL = 1e-6
ORTHOGONAL_TOL = 1e-9


@dataclass
class EigenBranch:
    '''One eigenvalue of rho followed along the trajectory, with its
       eigenvector in the parallel-transport gauge (vec[k] is a 4-vector)'''
    etas: np.ndarray
    p: np.ndarray
    vec: np.ndarray
    flagged: bool = False


@dataclass(frozen=True)
class GeomPhaseResult:
    etaEnd: float
    phase: Optional[float]
    nBranchesUsed: int
    converged: bool


def wrapPhase(phase):
    '''Reduce to (-pi, pi]'''
    phase = float(np.angle(np.exp(1j * phase)))
    return np.pi if phase <= -np.pi else phase


def phaseDistance(a, b):
    return abs(float(np.angle(np.exp(1j * (a - b)))))


def trajectoryEigensystem(traj):
    '''Raw eigenvalues (n, 4) and eigenvector columns (n, 4, 4)'''
    mats = np.asarray(traj.mats)
    return np.linalg.eigh(0.5 * (mats + np.conj(np.swapaxes(mats, 1, 2))))


def _clusters(values, tol=DEG_TOL):
    '''Groups of indices whose values lie within tol of a neighbour'''
    order = np.argsort(values, kind='stable')
    groups = [[int(order[0])]]
    for prev, i in zip(order[:-1], order[1:]):
        if values[i] - values[prev] < tol:
            groups[-1].append(int(i))
        else:
            groups.append([int(i)])
    return groups


def _polar(m):
    '''Unitary factor of m, the rotation closest to m'''
    u, _, vh = np.linalg.svd(m)
    return u @ vh


def _regaugeSplits(prevVals, prevVecs, newVals, newVecs):
    '''Rotate degenerate clusters of the previous step that split into
       separate eigenvalues onto the new eigenvectors they turn into'''
    prevVecs = prevVecs.copy()
    for group in _clusters(prevVals):
        if len(group) < 2:
            continue
        basis = prevVecs[:, group]
        weight = np.linalg.norm(basis.conj().T @ newVecs, axis=0)
        targets = np.sort(np.argsort(weight)[::-1][:len(group)])
        if np.ptp(newVals[targets]) < DEG_TOL:
            continue
        prevVecs[:, group] = basis @ _polar(basis.conj().T
                                            @ newVecs[:, targets])
    return prevVecs


def _matchStep(prevVecs, newVals, newVecs):
    '''Assign the new eigenvectors to the previous branches; returns the
       branch-ordered values and vectors'''
    groups = _clusters(newVals)
    cost = np.empty((4, 4))
    for group in groups:
        basis = newVecs[:, group]
        cost[group] = -np.linalg.norm(basis.conj().T @ prevVecs, axis=0)
    rows, cols = optimize.linear_sum_assignment(cost)
    slot = dict(zip(rows, cols))
    values = np.empty(4)
    vectors = np.empty((4, 4), dtype=complex)
    for group in groups:
        branches = [slot[i] for i in group]
        basis = newVecs[:, group]
        if len(group) > 1:
            basis = basis @ _polar(basis.conj().T @ prevVecs[:, branches])
        values[branches] = newVals[group]
        vectors[:, branches] = basis
    return values, vectors


def trackBranches(values, vectors):
    '''Follow raw eigenpairs, values (n, 4) and eigenvector columns
       (n, 4, 4), from step to step

       Returns the branch values (n, 4), the parallel-transport-aligned
       vectors (n, branch, component) and the matched vectors before any
       rephasing.
    '''
    values = np.asarray(values, dtype=float)
    vectors = np.asarray(vectors, dtype=complex)
    n = len(values)
    pBranch = np.empty((n, 4))
    aligned = np.empty((n, 4, 4), dtype=complex)
    raw = np.empty((n, 4, 4), dtype=complex)
    pBranch[0] = values[0]
    current = vectors[0].copy()
    aligned[0] = raw[0] = current.T
    for k in range(1, n):
        current = _regaugeSplits(pBranch[k - 1], current,
                                 values[k], vectors[k])
        aligned[k - 1] = current.T
        if k == 1:
            raw[0] = current.T
        newVals, newVecs = _matchStep(current, values[k], vectors[k])
        raw[k] = newVecs.T
        overlap = np.einsum('ij,ij->j', current.conj(), newVecs)
        worst = float(np.min(np.abs(overlap)))
        if worst < MIN_OVERLAP:
            raise DomainError('grid too coarse: eigenvector overlap %.3f at '
                              'step %d' % (worst, k))
        current = newVecs * (overlap.conj() / np.abs(overlap))[None, :]
        pBranch[k] = newVals
        aligned[k] = current.T
    return pBranch, aligned, raw


def branchesFromEigensystem(etas, values, vectors, epsP=EPS_P):
    pBranch, aligned, _ = trackBranches(values, vectors)
    return [EigenBranch(etas=np.asarray(etas), p=pBranch[:, j],
                        vec=aligned[:, j], flagged=bool(pBranch[0, j] < epsP))
            for j in range(4)]


def eigenBranches(traj, epsP=EPS_P):
    values, vectors = trajectoryEigensystem(traj)
    return branchesFromEigensystem(traj.etas, values, vectors, epsP)


def _connection(vec, times):
    '''Cumulative integral of <v|dv/dt> along one branch'''
    if len(times) < 2:
        return np.zeros(len(times), dtype=complex)
    dv = np.gradient(vec, times, axis=0)
    conn = np.einsum('ki,ki->k', vec.conj(), dv)
    return integrate.cumulative_trapezoid(conn, times, initial=0.0)


def _phaseSums(branches, times, epsP):
    '''Interference sum for every end index; returns (sums, counts)'''
    n = len(times)
    sums = np.zeros(n, dtype=complex)
    counts = np.zeros(n, dtype=int)
    for br in branches:
        if br.p[0] < epsP:
            continue
        live = br.p >= epsP
        weight = np.sqrt(np.clip(br.p[0] * br.p, 0.0, None))
        overlap = br.vec @ br.vec[0].conj()
        term = weight * overlap * np.exp(-_connection(br.vec, times))
        sums += np.where(live, term, 0.0)
        counts += live
    return sums, counts


def _phaseOf(total):
    return None if abs(total) < SUM_FLOOR else wrapPhase(np.angle(total))


def _tongFromBranches(branches, times, epsP):
    sums, counts = _phaseSums(branches, times, epsP)
    if counts[-1] == 0:
        raise DomainError('phase undefined: vanishing eigenvalue support')
    return _phaseOf(sums[-1]), int(counts[-1])


def tongPhaseFromBranches(branches, times, epsP=EPS_P):
    return _tongFromBranches(branches, np.asarray(times), epsP)[0]


def _refined(traj):
    return md.makeTrajectory(traj.params, float(traj.etas[-1]),
                             2 * len(traj) - 1, traj.method)


def _agree(a, b):
    if a is None or b is None:
        return a is None and b is None
    return phaseDistance(a, b) < CONVERGENCE_TOL


def tongPhase(traj, epsP=EPS_P):
    '''Geometric phase accumulated from eta = 0 to the last grid point;
       converged compares with the grid of half the density (or, for an
       even number of points, twice the density)'''
    times = traj.times
    phase, used = _tongFromBranches(eigenBranches(traj, epsP), times, epsP)
    n = len(traj)
    if n >= 3 and (n - 1) % 2 == 0:
        coarse = md.Trajectory(params=traj.params, etas=traj.etas[::2],
                               mats=traj.mats[::2], method=traj.method)
        other, _ = _tongFromBranches(eigenBranches(coarse, epsP),
                                     coarse.times, epsP)
    else:
        fine = _refined(traj)
        other, _ = _tongFromBranches(eigenBranches(fine, epsP),
                                     fine.times, epsP)
    return GeomPhaseResult(etaEnd=float(traj.etas[-1]), phase=phase,
                           nBranchesUsed=used, converged=_agree(phase, other))


def bargmannPhase(traj, epsP=EPS_P):
    '''Same phase from the product of consecutive overlaps of the matched
       but unrephased eigenvectors'''
    values, vectors = trajectoryEigensystem(traj)
    pBranch, _, raw = trackBranches(values, vectors)
    total = 0.0j
    for j in range(4):
        p = pBranch[:, j]
        if p[0] < epsP or p[-1] < epsP:
            continue
        vec = raw[:, j]
        steps = np.einsum('ki,ki->k', vec[:-1].conj(), vec[1:])
        transport = np.prod(steps.conj() / np.abs(steps))
        total += np.sqrt(p[0] * p[-1]) * np.vdot(vec[0], vec[-1]) * transport
    return _phaseOf(total)


def phaseProfile(traj, epsP=EPS_P, check=True):
    '''Phase for every end point of the trajectory from one tracking run;
       returns (phases, converged) with None for undefined rows'''
    branches = eigenBranches(traj, epsP)
    sums, counts = _phaseSums(branches, traj.times, epsP)
    if not np.all(counts > 0):
        raise DomainError('phase undefined: vanishing eigenvalue support')
    phases = [_phaseOf(s) for s in sums]
    if not check:
        return phases, [True] * len(phases)
    finePhases, _ = phaseProfile(_refined(traj), epsP, check=False)
    converged = [_agree(a, b) for a, b in zip(phases, finePhases[::2])]
    if not all(converged):
        warnings.warn('%d phase rows not converged under grid refinement'
                      % converged.count(False))
    return phases, converged


def pureStatePhaseOracle(p, etaEnd):
    '''Noiseless phase arg(cos eta_end): the dynamical factors cancel'''
    if p.alpha != 0:
        raise DomainError('the pure-state oracle needs alpha = 0')
    c = np.cos(etaEnd)
    if abs(c) < ORTHOGONAL_TOL:
        raise DomainError('Pancharatnam phase singular: orthogonal endpoint')
    return 0.0 if c > 0 else np.pi


def closedFormTerms(p, eta):
    '''Sub-expressions A, B, E, F, G, K of the printed closed-form phase,
       evaluated as typeset with complex square roots and logarithm'''
    J, a = p.coupling, p.alpha
    if J == 0:
        raise DomainError('closed-form phase divides by J')
    eta = complex(eta)
    growth = np.exp(6 * a * J * eta)
    cos2 = np.cos(2 * eta)
    root = np.sqrt(0.5 * (1 - cos2 + growth * (1 + cos2)))
    sq = np.sqrt(1 + 2 * J * eta * (eta / (2 * J) + 3 * a))
    poly = (-4 * eta / J - 12 * a + 9 * J * eta * a ** 2 * (1 + 4.5 * eta ** 2)
            + 9 * J ** 2 * a ** 3 * (-13 + 2 * eta ** 2)
            - 135 * J ** 3 * a ** 4 * eta + 1215 * J ** 4 * a ** 5)
    logPart = (1 - 9 * J ** 2 * a ** 2) ** 2 * (4 + 45 * J ** 2 * a ** 2) \
        * np.log(J * (eta + 3 * J * a) + sq)
    x = eta / J
    nest = 2 + J ** 2 * a * (81 * a - 2 * x * (5 + 3 * J ** 2
                                               * (7 * x - 27 * a) * a))
    nest = -4 + 9 * J ** 2 * a * (3 * a + x * nest)
    nest = 4 + 3 * J ** 2 * a * (-9 * a + x * nest)
    return dict(A=0.5 * (1 + np.exp(-4 * a * J * eta) * root),
                B=1j * np.sin(eta) * root
                + np.exp(3 * a * J * eta) * np.cos(eta),
                E=0.5 * growth * np.cos(eta) ** 2,
                F=-0.125j * (J * sq * poly + logPart),
                G=(-4 * cos2 + np.cos(4 * eta)
                   + 2 * np.exp(6 * J * a * eta)) / 16,
                K=1j * np.sqrt(1 + 6 * J * a * eta) / 1701 * nest)


def paperClosedFormPhase(p, eta):
    '''arg(sqrt(A) B exp(-(E + F + G + K))). Diagnostic only: it is not
       expected to match tongPhase.'''
    t = closedFormTerms(p, eta)
    value = np.sqrt(t['A']) * t['B'] \
        * np.exp(-(t['E'] + t['F'] + t['G'] + t['K']))
    return wrapPhase(np.angle(value))
