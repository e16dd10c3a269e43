##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Hilbert-Schmidt and Bures geometry of the evolving state
#             Distances, Uhlmann fidelity, the fidelity of separability and
#             the associated speeds, each closed form next to a numerical
#             oracle (finite differences, separable-state search).
#
#             The Hilbert-Schmidt "distance" closed form is an instantaneous
#             rate |d rho/dt|_HS with respect to laboratory time; the finite
#             distance between two states is hsDistance.
##############################################################################

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

import complexMatrix as cm
import entanglement
import milburnDynamics as md
import xxzModel
from xxzErrors import DomainError

UNIT_TOL = 1e-12
SIN_FLOOR = 1e-12
SAMPLE_BLOCK = 256
MAX_PRODUCTS = 4
REFINE_MAXITER = 200
REFINE_WEIGHT_FLOOR = 1e-2
BURES_NORM = 1.0 / np.sqrt(2.0 - np.sqrt(2.0))


@dataclass(frozen=True)
class GeometrySample:
    eta: float
    concurrence: float
    hsRate: float
    hsSpeed: float
    fidelitySep: float
    buresDistance: float
    buresSpeed: float
    phase: Optional[float] = None


def _unitInterval(x, name):
    '''Check x lies in [0, 1] up to round-off and clip it there'''
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < -UNIT_TOL) \
            or np.any(x > 1 + UNIT_TOL):
        raise DomainError('%s must lie in [0, 1], got %s' % (name, x))
    return np.clip(x, 0.0, 1.0)


def _out(value):
    value = np.asarray(value)
    return float(value) if value.ndim == 0 else value


def _decay(p, eta):
    return np.exp(-4.0 * p.alpha * p.coupling * np.asarray(eta, dtype=float))


def _rateScale(p):
    J, a = p.coupling, p.alpha
    return 2.0 * np.sqrt(2.0) * np.sqrt(J ** 2 * (4 * a ** 2 * J ** 2 + 1))


def _sinFactor(eta):
    sin2 = np.abs(np.sin(2 * np.asarray(eta, dtype=float)))
    if np.any(sin2 < SIN_FLOOR):
        raise DomainError('concurrence form undefined where sin(2 eta) = 0')
    return sin2


# Hilbert-Schmidt ###########################################################
def _asMat(d):
    return cm.asCMat(getattr(d, 'mat', d))


def hsDistance(d1, d2):
    diff = _asMat(d2) - _asMat(d1)
    return float(np.sqrt(max(0.0, cm.hsInner(diff, diff).real)))


def hsRateClosedForm(p, eta):
    return _out(_rateScale(p) * _decay(p, eta))


def hsRateFromConcurrence(p, c, eta):
    '''Rate written through C and its noiseless value |sin 2 eta|'''
    c = _unitInterval(c, 'concurrence')
    return _out(_rateScale(p) * c / _sinFactor(eta))


def hsRateNumeric(p, eta, deltaT=1e-6):
    '''Central difference |rho(t + d) - rho(t - d)|_HS / 2d on the spectral
       propagator, t = eta / 2J'''
    if not deltaT > 0:
        raise DomainError('delta_t must be > 0')
    t = float(xxzModel.tOfEta(p, eta))
    mats = md.propagateAnalyticGrid(p, md.initialState(),
                                    [t - deltaT, t + deltaT])
    return hsDistance(mats[0], mats[1]) / (2.0 * deltaT)


def hsSpeed(p, eta):
    '''|d/d eta| of the closed-form rate: 4 alpha |J| times the rate'''
    return _out(4.0 * p.alpha * abs(p.coupling) * _rateScale(p)
                * _decay(p, eta))


def hsSpeedFromConcurrence(p, c, eta):
    c = _unitInterval(c, 'concurrence')
    return _out(4.0 * p.alpha * abs(p.coupling) * _rateScale(p) * c
                / _sinFactor(eta))


# Fidelity ##################################################################
def _fidelityFromRoot(root, sigmas):
    '''(Tr sqrt(root sigma root))^2 for a stack of sigmas'''
    inner = root @ sigmas @ root
    inner = 0.5 * (inner + np.conj(np.swapaxes(inner, -1, -2)))
    values = cm.clampSpectrum(np.linalg.eigvalsh(inner))
    return np.clip(np.sum(np.sqrt(values), axis=-1) ** 2, 0.0, 1.0)


def fidelityUhlmann(a, b):
    '''Squared-trace Uhlmann fidelity, 1 for equal states'''
    a = _asMat(a)
    b = _asMat(b)
    return float(_fidelityFromRoot(cm.sqrtPsd(a), b[None])[0])


def fidelityOfSeparability(c):
    c = _unitInterval(c, 'concurrence')
    return _out(0.5 * (1 + np.sqrt(1 - c ** 2)))


def fidelityOfSeparabilityNoise(p, eta):
    return fidelityOfSeparability(entanglement.concurrenceClosedForm(p, eta))


def _blochStates(vectors):
    '''Single-qubit density matrices from Bloch vectors (..., 3)'''
    paulis = np.array([cm.SIGMAX, cm.SIGMAY, cm.SIGMAZ])
    return 0.5 * (cm.SIGMA0 + np.einsum('...k,kab->...ab', vectors, paulis))


def _productStates(blochA, blochB):
    a, b = _blochStates(blochA), _blochStates(blochB)
    prod = np.einsum('...ab,...cd->...acbd', a, b)
    return prod.reshape(prod.shape[:-4] + (4, 4))


def _separableBlock(rng):
    '''SAMPLE_BLOCK random separable states with their parameters'''
    gauss = rng.standard_normal((SAMPLE_BLOCK, MAX_PRODUCTS, 2, 3))
    bloch = gauss / np.linalg.norm(gauss, axis=-1, keepdims=True)
    nTerms = rng.integers(1, MAX_PRODUCTS + 1, size=SAMPLE_BLOCK)
    # exponential draws normalized over the active terms: flat simplex
    weights = rng.standard_exponential((SAMPLE_BLOCK, MAX_PRODUCTS))
    weights *= np.arange(MAX_PRODUCTS)[None, :] < nTerms[:, None]
    weights /= np.sum(weights, axis=1, keepdims=True)
    prods = _productStates(bloch[:, :, 0], bloch[:, :, 1])
    sigmas = np.einsum('nk,nkab->nab', weights, prods)
    return sigmas, bloch, weights


def _sampleSeparable(nSamples, seed):
    '''Seeded separable samples; the first m samples do not depend on
       nSamples'''
    if nSamples < 1:
        raise DomainError('n_samples must be >= 1, got %d' % nSamples)
    rng = np.random.default_rng(seed)
    blocks = [_separableBlock(rng)
              for _ in range(-(-nSamples // SAMPLE_BLOCK))]
    sigmas, bloch, weights = [np.concatenate(part)[:nSamples]
                              for part in zip(*blocks)]
    return sigmas, bloch, weights


def _paramsFromSample(bloch, weights):
    theta = np.arccos(np.clip(bloch[..., 2], -1.0, 1.0))
    phi = np.arctan2(bloch[..., 1], bloch[..., 0])
    # every term keeps some weight so the polish can revive it
    z = np.sqrt(weights + REFINE_WEIGHT_FLOOR)
    return np.concatenate([theta.ravel(), phi.ravel(), z])


def _sampleFromParams(x):
    nAngles = MAX_PRODUCTS * 2
    theta = x[:nAngles].reshape(MAX_PRODUCTS, 2)
    phi = x[nAngles:2 * nAngles].reshape(MAX_PRODUCTS, 2)
    z = x[2 * nAngles:]
    bloch = np.stack([np.sin(theta) * np.cos(phi),
                      np.sin(theta) * np.sin(phi),
                      np.cos(theta)], axis=-1)
    weights = z ** 2 / max(np.sum(z ** 2), 1e-300)
    prods = _productStates(bloch[:, 0], bloch[:, 1])
    return np.einsum('k,kab->ab', weights, prods)


def separableFidelityTrace(d, nSamples, seed):
    '''Running maximum of the fidelity between d and the raw separable
       samples, one entry per sample'''
    root = cm.sqrtPsd(_asMat(d))
    sigmas, _, _ = _sampleSeparable(nSamples, seed)
    return np.maximum.accumulate(_fidelityFromRoot(root, sigmas))


def _recordIndices(scores):
    '''Indices where the running maximum of scores strictly rises; the
       records of a prefix are a prefix of the records'''
    previous = np.concatenate(([-np.inf],
                               np.maximum.accumulate(scores)[:-1]))
    return np.flatnonzero(scores > previous)


def separableFidelitySearch(d, nSamples, seed, refine=True):
    '''Lower bound on the fidelity of separability of d

       Random separable mixtures of up to four product states are scored and
       every sample that raised the running maximum is polished by L-BFGS-B
       over the product angles and mixture weights. Polish starts only
       depend on the samples before them, so the bound never drops as
       nSamples grows. Every evaluated state is separable.
    '''
    root = cm.sqrtPsd(_asMat(d))
    sigmas, bloch, weights = _sampleSeparable(nSamples, seed)
    scores = _fidelityFromRoot(root, sigmas)
    best = float(np.max(scores))
    if not refine:
        return best

    def objective(x):
        return -float(_fidelityFromRoot(root, _sampleFromParams(x)[None])[0])

    for index in _recordIndices(scores):
        x0 = _paramsFromSample(bloch[index], weights[index])
        result = optimize.minimize(objective, x0, method='L-BFGS-B',
                                   options=dict(maxiter=REFINE_MAXITER))
        best = max(best, -float(result.fun))
    return best


# Bures #####################################################################
def buresDistanceRaw(f):
    f = _unitInterval(f, 'fidelity')
    return _out(np.sqrt(np.maximum(0.0, 2 - 2 * np.sqrt(f))))


def buresDistanceNormalized(c):
    c = _unitInterval(c, 'concurrence')
    inner = np.sqrt(2 + 2 * np.sqrt(1 - c ** 2))
    return _out(BURES_NORM * np.sqrt(np.maximum(0.0, 2 - inner)))


def buresDistanceNoise(p, eta):
    return buresDistanceNormalized(entanglement.concurrenceClosedForm(p, eta))


def buresSpeed(c):
    '''sqrt(F / 8) with F the fidelity of separability'''
    c = _unitInterval(c, 'concurrence')
    return _out(0.25 * np.sqrt(1 + np.sqrt(1 - c ** 2)))


def buresSpeedNoise(p, eta):
    return buresSpeed(entanglement.concurrenceClosedForm(p, eta))


def geometrySample(p, eta, d=None):
    '''Every geometry quantity at one eta; the concurrence is measured on d
       (the propagated state when d is None)'''
    if d is None:
        d = md.propagateAnalytic(p, md.initialState(),
                                 float(xxzModel.tOfEta(p, eta)))
    c = min(1.0, entanglement.concurrenceWootters(d).value)
    return GeometrySample(eta=float(eta), concurrence=c,
                          hsRate=hsRateClosedForm(p, eta),
                          hsSpeed=hsSpeed(p, eta),
                          fidelitySep=fidelityOfSeparability(c),
                          buresDistance=buresDistanceNormalized(c),
                          buresSpeed=buresSpeed(c))
