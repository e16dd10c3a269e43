##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Wootters concurrence of the two-spin state
#             The square roots of the eigenvalues of rho (yy) rho* (yy) are
#             read off as singular values of sqrt(rho) (yy) conj(sqrt(rho)),
#             which keeps full precision for nearly pure states.
##############################################################################

from collections import namedtuple

import numpy as np

import complexMatrix as cm

YY = cm.kron(cm.SIGMAY, cm.SIGMAY)

ConcurrenceBreakdown = namedtuple('ConcurrenceBreakdown', ['lambdas', 'value'])


def _asMat(d):
    return cm.asCMat(getattr(d, 'mat', d))


def spinFlip(d):
    '''T = rho (yy) rho* (yy)'''
    rho = _asMat(d)
    return rho @ YY @ rho.conj() @ YY


def _breakdown(lambdas):
    lambdas = np.sort(lambdas, axis=-1)[..., ::-1]
    value = lambdas[..., 0] - np.sum(lambdas[..., 1:], axis=-1)
    return lambdas, np.maximum(0.0, value)


def concurrenceWootters(d):
    rho = _asMat(d)
    root = cm.sqrtPsd(rho)
    # R shares its spectrum with T and is Hermitian; used for the PSD guard
    cm.psdSpectrum(root @ YY @ rho.conj() @ YY @ root)
    lambdas = np.linalg.svd(root @ YY @ root.conj(), compute_uv=False)
    lambdas, value = _breakdown(lambdas)
    return ConcurrenceBreakdown(lambdas, float(value))


def concurrenceSeries(mats):
    '''Concurrence of every state in an (n, 4, 4) stack'''
    mats = np.asarray(mats, dtype=complex)
    roots = cm.sqrtPsdStack(mats)
    rFlip = roots @ YY @ np.conj(mats) @ YY @ roots
    cm.clampSpectrum(np.linalg.eigvalsh(
        0.5 * (rFlip + np.conj(np.swapaxes(rFlip, -1, -2)))))
    lambdas = np.linalg.svd(roots @ YY @ np.conj(roots), compute_uv=False)
    return _breakdown(lambdas)[1]


def concurrenceClosedForm(p, eta):
    '''C = exp(-4 alpha J eta) |sin 2 eta| for the |du> initial state'''
    eta = np.asarray(eta, dtype=float)
    decay = np.exp(-4.0 * p.alpha * p.coupling * eta)
    value = decay * np.abs(np.sin(2 * eta))
    return float(value) if value.ndim == 0 else value
