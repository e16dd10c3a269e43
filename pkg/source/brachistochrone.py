##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Quantum brachistochrone of the noisy two-spin evolution
#             Ratio of the Hilbert-Schmidt rate at maximal entanglement to
#             the maximal Hilbert-Schmidt speed, giving t_min = 1/(4 J alpha),
#             the state reached at t_min and a master-equation residual.
#
#             The ratio divides a rate per unit t by a speed per unit eta;
#             the printed arithmetic is kept as is.
##############################################################################

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

import milburnDynamics as md
import stateGeometry as sg
import xxzModel
from xxzErrors import DomainError

RESIDUAL_DELTA = 1e-6

SpeedScan = namedtuple('SpeedScan', ['eta', 'value', 'formulaValue'])


@dataclass(frozen=True)
class BrachistochroneResult:
    vHsMax: float
    lHsAtC1: float
    tMin: float
    etaAtTMin: float
    optimalState: md.DensityMatrix
    milburnResidual: float


def _root(p):
    return np.sqrt(4 * p.alpha ** 2 * p.coupling ** 2 + 1)


def vHsMax(p):
    '''Closed-form speed with C = 1 at eta = pi/4'''
    return 8 * p.coupling ** 2 * np.sqrt(2.0) * p.alpha * _root(p)


def lHsAtC1(p):
    return 2 * p.coupling * np.sqrt(2.0) * _root(p)


def tMin(p):
    if p.alpha == 0:
        raise DomainError('no finite optimum: brachistochrone time diverges '
                          'without decoherence')
    if p.coupling == 0:
        raise DomainError('no finite optimum: J = 0')
    return 1.0 / (4.0 * p.coupling * p.alpha)


def etaAtTMin(p):
    return float(xxzModel.etaOfT(p, tMin(p)))


def optimalState(p):
    '''State reached at t_min: the block solution at eta = 1/(2 alpha)'''
    return md.evolvedStateClosedForm(p, etaAtTMin(p))


def printedOptimalState(p):
    '''Optimal state exactly as typeset, with the two populations in the
       reverse order of the block solution'''
    tMin(p)
    decay = np.exp(-2.0 * p.coupling)
    angle = 1.0 / p.alpha
    mat = np.zeros((4, 4), dtype=complex)
    mat[1, 1] = 0.5 * (1 + decay * np.cos(angle))
    mat[2, 2] = 0.5 * (1 - decay * np.cos(angle))
    mat[1, 2] = -0.5j * decay * np.sin(angle)
    mat[2, 1] = 0.5j * decay * np.sin(angle)
    return md.DensityMatrix(mat)


def milburnResidual(p, t, delta=RESIDUAL_DELTA):
    '''|central-difference d rho/dt - master-equation right-hand side|_HS
       along the propagated |du> trajectory'''
    mats = md.propagateAnalyticGrid(p, md.initialState(),
                                    [t - delta, t, t + delta])
    numeric = (mats[2] - mats[0]) / (2.0 * delta)
    diff = numeric - md.milburnGenerator(p, mats[1])
    return float(np.sqrt(np.sum(np.abs(diff) ** 2)))


def solveBrachistochrone(p):
    t = tMin(p)
    return BrachistochroneResult(vHsMax=float(vHsMax(p)),
                                 lHsAtC1=float(lHsAtC1(p)),
                                 tMin=t, etaAtTMin=etaAtTMin(p),
                                 optimalState=optimalState(p),
                                 milburnResidual=milburnResidual(p, t))


def speedSupremumScan(p, etaMax=np.pi / 2, nPoints=20001):
    '''Largest closed-form speed on a dense grid over (0, etaMax]'''
    etas = np.linspace(0.0, etaMax, nPoints)[1:]
    speeds = sg.hsSpeed(p, etas)
    best = int(np.argmax(speeds))
    return SpeedScan(float(etas[best]), float(speeds[best]),
                     float(vHsMax(p)))
