##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Milburn intrinsic-decoherence dynamics of the two-spin state
#             Three independent routes to the evolved density matrix:
#               - the spectral propagator in the energy eigenbasis
#               - the closed-form block solution for the |du> initial state
#               - fourth-order Runge-Kutta on the master equation
#             plus trajectories on uniform eta grids and the density-matrix
#             eigensystem of the central block.
##############################################################################

import enum
import math
from dataclasses import dataclass

import numpy as np

import complexMatrix as cm
import xxzModel
from xxzModel import Convention
from xxzErrors import DomainError, KernelError, UsageError

TRACE_TOL = 1e-10
NEG_EIG_TOL = 1e-9
OUTER_TOL = 1e-12
RK4_STABILITY = 0.5
RK4_TOTAL_STEPS = 20000


class Method(enum.Enum):
    ANALYTIC = 'analytic'
    CLOSED = 'closed'
    RK4 = 'rk4'

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise UsageError('unknown method %r (analytic|closed|rk4)' % text)


class DensityMatrix(object):
    '''Read-only 4x4 two-spin density matrix

       With validate=True the constructor enforces Hermiticity, unit trace
       and positivity within the library tolerances.
    '''

    __slots__ = ('mat',)

    def __init__(self, mat, validate=True):
        mat = np.array(cm.asCMat(mat), copy=True)
        if mat.shape != (4, 4):
            raise KernelError('a density matrix must be 4x4')
        if validate:
            herm = cm.hermiticityError(mat)
            if herm > cm.HERMITIAN_TOL:
                raise KernelError('density matrix not Hermitian (%.3e)'
                                  % herm)
            trace = np.trace(mat).real
            if abs(trace - 1.0) > TRACE_TOL:
                raise KernelError('density matrix trace %.15g != 1' % trace)
            lowest = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))[0]
            if lowest < -NEG_EIG_TOL:
                raise KernelError('density matrix not PSD (%.3e)' % lowest)
        mat.setflags(write=False)
        object.__setattr__(self, 'mat', mat)

    def __setattr__(self, name, value):
        raise AttributeError('DensityMatrix is immutable')

    def __repr__(self):
        return 'DensityMatrix(%r)' % (self.mat,)

    @property
    def u22(self):
        return float(self.mat[1, 1].real)

    @property
    def u33(self):
        return float(self.mat[2, 2].real)

    @property
    def u23(self):
        return complex(self.mat[1, 2])

    def trace(self):
        return complex(np.trace(self.mat))


@dataclass
class Trajectory:
    '''Density matrices sampled on a uniform eta grid starting at 0'''
    params: xxzModel.ModelParams
    etas: np.ndarray
    mats: np.ndarray
    method: Method = Method.ANALYTIC

    def __len__(self):
        return len(self.etas)

    @property
    def times(self):
        return xxzModel.tOfEta(self.params, self.etas)

    @property
    def states(self):
        return [DensityMatrix(m, validate=False) for m in self.mats]

    def state(self, index):
        return DensityMatrix(self.mats[index], validate=False)


def decoherenceRate(p):
    '''kappa in the damping term -kappa[H,[H,rho]]'''
    if p.convention is Convention.LITERAL:
        if p.alpha == 0:
            raise DomainError('singular rate: the literal master equation '
                              'needs alpha > 0')
        return 1.0 / (2.0 * p.alpha)
    return 0.5 * p.alpha


def initialState():
    '''|du><du|, the pure product state the evolution starts from'''
    mat = np.zeros((4, 4), dtype=complex)
    mat[2, 2] = 1.0
    return DensityMatrix(mat)


def _asMat(d):
    if isinstance(d, DensityMatrix):
        return d.mat
    return cm.asCMat(d)


def milburnGenerator(p, rho, ham=None, kappa=None):
    '''Right-hand side of the Milburn master equation at rho'''
    if ham is None:
        ham = xxzModel.buildHamiltonian(p)
    if kappa is None:
        kappa = decoherenceRate(p)
    rho = _asMat(rho)
    comm = cm.commutator(ham, rho)
    return -1j * comm - kappa * cm.commutator(ham, comm)


def _energyGaps(p):
    spec = xxzModel.spectrum(p)
    gaps = spec.energies[:, None] - spec.energies[None, :]
    return spec, gaps


def propagateAnalyticGrid(p, d0, ts):
    '''Spectral propagator evaluated at every time in `ts`; returns an
       (n, 4, 4) array'''
    spec, gaps = _energyGaps(p)
    kappa = decoherenceRate(p)
    vecs = spec.states
    rhoE = vecs.conj().T @ _asMat(d0) @ vecs
    ts = np.atleast_1d(np.asarray(ts, dtype=float))[:, None, None]
    factor = np.exp(-1j * gaps * ts - kappa * gaps ** 2 * ts)
    mats = vecs @ (rhoE * factor) @ vecs.conj().T
    mats = 0.5 * (mats + np.conj(np.swapaxes(mats, 1, 2)))
    # t = 0 returns the start exactly, not its basis round trip
    mats[ts[:, 0, 0] == 0] = _asMat(d0)
    return mats


def propagateAnalytic(p, d0, t):
    return DensityMatrix(propagateAnalyticGrid(p, d0, [t])[0])


def evolvedStateGrid(p, etas):
    '''Closed-form block solution on an array of eta values'''
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    decay = np.exp(-4.0 * p.alpha * p.coupling * etas)
    cos2, sin2 = np.cos(2 * etas), np.sin(2 * etas)
    mats = np.zeros((len(etas), 4, 4), dtype=complex)
    mats[:, 1, 1] = 0.5 * (1 - decay * cos2)
    mats[:, 2, 2] = 0.5 * (1 + decay * cos2)
    mats[:, 1, 2] = -0.5j * decay * sin2
    mats[:, 2, 1] = 0.5j * decay * sin2
    return mats


def evolvedStateClosedForm(p, eta):
    return DensityMatrix(evolvedStateGrid(p, [eta])[0])


def _maxGapSq(p):
    _, gaps = _energyGaps(p)
    return float(np.max(gaps ** 2))


def minimumRk4Steps(p, t):
    '''Fewest RK4 steps over time t that satisfy the stability guard'''
    kappa = decoherenceRate(p)
    return int(math.floor(abs(t) * _maxGapSq(p) * kappa / RK4_STABILITY)) + 1


def _rk4Step(f, rho, h):
    k1 = f(rho)
    k2 = f(rho + 0.5 * h * k1)
    k3 = f(rho + 0.5 * h * k2)
    k4 = f(rho + h * k3)
    rho = rho + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    # resymmetrize only; the trace is never renormalized
    return 0.5 * (rho + rho.conj().T)


def _rk4Path(p, rho, t, nSteps):
    '''Integrate rho over time t in nSteps equal RK4 steps'''
    if nSteps < 1:
        raise DomainError('n_steps must be >= 1, got %d' % nSteps)
    if t == 0:
        return rho
    h = t / float(nSteps)
    kappa = decoherenceRate(p)
    if abs(h) * _maxGapSq(p) * kappa >= RK4_STABILITY:
        raise DomainError('RK4 step too large for the damping term: use at '
                          'least %d steps' % minimumRk4Steps(p, t))
    ham = xxzModel.buildHamiltonian(p)

    def f(r):
        return milburnGenerator(p, r, ham, kappa)

    for _ in range(nSteps):
        rho = _rk4Step(f, rho, h)
    return rho


def propagateRk4(p, d0, t, nSteps):
    rho = np.array(_asMat(d0), dtype=complex)
    return DensityMatrix(_rk4Path(p, rho, t, nSteps))


def makeTrajectory(p, etaMax, nPoints, method=Method.ANALYTIC, d0=None,
                   rk4Steps=RK4_TOTAL_STEPS):
    '''Sample the evolution on nPoints equally spaced eta values in
       [0, etaMax] (both endpoints included)'''
    method = Method.parse(method)
    if nPoints < 2:
        raise DomainError('n_points must be >= 2, got %d' % nPoints)
    if not etaMax > 0:
        raise DomainError('eta_max must be > 0, got %g' % etaMax)
    etas = np.linspace(0.0, etaMax, nPoints)
    start = initialState() if d0 is None else d0
    if method is Method.CLOSED:
        if d0 is not None:
            raise DomainError('the closed form only covers the |du> '
                              'initial state')
        mats = evolvedStateGrid(p, etas)
    elif method is Method.ANALYTIC:
        mats = propagateAnalyticGrid(p, start, xxzModel.tOfEta(p, etas))
    else:
        ts = xxzModel.tOfEta(p, etas)
        substeps = int(math.ceil(rk4Steps / float(nPoints - 1)))
        mats = np.empty((nPoints, 4, 4), dtype=complex)
        rho = np.array(_asMat(start), dtype=complex)
        mats[0] = rho
        for k in range(1, nPoints):
            rho = _rk4Path(p, rho, ts[k] - ts[k - 1], substeps)
            mats[k] = rho
    return Trajectory(params=p, etas=etas, mats=mats, method=method)


def purity(d):
    mat = _asMat(d)
    return float(np.real(np.trace(mat @ mat)))


def blockEigensystem(d):
    '''Eigensystem of a state with support on {|ud>, |du>} only

       The two outer eigenvalues are exact zeros with eigenvectors |uu> and
       |dd>; the central 2x2 block is solved in closed form.
    '''
    mat = _asMat(d)
    outer = mat.copy()
    outer[1:3, 1:3] = 0.0
    if np.max(np.abs(outer)) > OUTER_TOL:
        raise KernelError('state is not block shaped: outer entries up to '
                          '%.3e' % np.max(np.abs(outer)))
    block = cm.eigHermitian(mat[1:3, 1:3])
    values = np.array([0.0, 0.0, block.values[0], block.values[1]])
    vectors = np.zeros((4, 4), dtype=complex)
    vectors[0, 0] = 1.0
    vectors[3, 1] = 1.0
    vectors[1:3, 2] = block.vectors[:, 0]
    vectors[1:3, 3] = block.vectors[:, 1]
    order = np.argsort(values, kind='stable')
    return cm.HermitianEig(values[order], vectors[:, order])


def _printedRoot(p, eta):
    growth = np.exp(6.0 * p.alpha * p.coupling * eta)
    cos2 = np.cos(2 * eta)
    return np.sqrt(0.5 * (1 - cos2 + growth * (1 + cos2)))


def printedBlockEigenvalues(p, eta):
    '''Nonzero eigenvalue pair (p3, p2) as typeset in the source model
       write-up; differs from the block eigenvalues whenever alpha > 0'''
    spread = np.exp(-4.0 * p.alpha * p.coupling * eta) * _printedRoot(p, eta)
    return 0.5 * (1 - spread), 0.5 * (1 + spread)


def printedBlockEigenvectors(p, eta):
    '''Unnormalized (|p2>, |p3>) as typeset; both lie along |ud> + |du>'''
    sym = np.array([0, 1, 1, 0], dtype=complex)
    front = np.exp(3.0 * p.alpha * p.coupling * eta) * np.cos(eta)
    back = 1j * np.sin(eta) * _printedRoot(p, eta)
    return (front + back) * sym, (front - back) * sym
