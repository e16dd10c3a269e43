##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Dense complex kernel for 2x2 and 4x4 Hermitian matrices
#             Products, commutators, Kronecker products, Hilbert-Schmidt
#             forms, Hermitian eigensystems and PSD square roots. Matrices
#             are plain numpy complex arrays; every function is pure.
##############################################################################

import warnings
from collections import namedtuple

import numpy as np

from xxzErrors import KernelError

HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-10
PSD_TOL = 1e-8
# Eigenvalues this small relative to the spectrum are exact zeros.
ZERO_EIG_REL = 1e-14

SIGMA0 = np.eye(2, dtype=complex)
SIGMAX = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMAY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMAZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = dict(x=SIGMAX, y=SIGMAY, z=SIGMAZ)

HermitianEig = namedtuple('HermitianEig', ['values', 'vectors'])
HermitianEig.__doc__ = '''Ascending eigenvalues and the matching orthonormal
eigenvectors stored as the columns of `vectors`'''


def asCMat(a):
    '''Return `a` as a complex square array of dimension 2 or 4'''
    mat = np.asarray(a, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] \
            or mat.shape[0] not in (2, 4):
        raise KernelError('expected a 2x2 or 4x4 matrix, got shape %s'
                          % (mat.shape,))
    return mat


def _sameDim(a, b):
    a, b = asCMat(a), asCMat(b)
    if a.shape != b.shape:
        raise KernelError('dimension mismatch: %d vs %d'
                          % (a.shape[0], b.shape[0]))
    return a, b


def identity(dim):
    return asCMat(np.eye(dim, dtype=complex))


def adjoint(a):
    return asCMat(a).conj().T


def matmul(a, b):
    a, b = _sameDim(a, b)
    return a @ b


def commutator(a, b):
    '''[a, b] = ab - ba'''
    a, b = _sameDim(a, b)
    return a @ b - b @ a


def kron(a, b):
    '''Kronecker product of two single-spin operators, ordered so that the
       result acts on {|uu>, |ud>, |du>, |dd>}'''
    a, b = asCMat(a), asCMat(b)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise KernelError('kron expects two 2x2 matrices')
    return np.kron(a, b)


def hsInner(a, b):
    '''Hilbert-Schmidt form Tr(a^dagger b)'''
    a, b = _sameDim(a, b)
    return complex(np.vdot(a, b))


def hermiticityError(a):
    a = asCMat(a)
    return float(np.max(np.abs(a - a.conj().T)))


def _eig2(a):
    '''Closed-form eigensystem of a 2x2 Hermitian matrix'''
    p, q = a[0, 0].real, a[1, 1].real
    b = a[0, 1]
    mean = 0.5 * (p + q)
    radius = np.hypot(0.5 * (p - q), abs(b))
    lower, upper = mean - radius, mean + radius
    if radius == 0.0:
        return HermitianEig(np.array([lower, upper]),
                            np.eye(2, dtype=complex))
    # pick the component form that avoids cancellation
    if p >= q:
        vec = np.array([upper - q, np.conj(b)], dtype=complex)
    else:
        vec = np.array([b, upper - p], dtype=complex)
    vec /= np.linalg.norm(vec)
    other = np.array([-np.conj(vec[1]), np.conj(vec[0])])
    return HermitianEig(np.array([lower, upper]),
                        np.column_stack([other, vec]))


def eigHermitian(a):
    '''Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
       matrix. Dimension 2 is solved in closed form, dimension 4 by LAPACK.'''
    a = asCMat(a)
    if hermiticityError(a) > HERMITIAN_TOL:
        raise KernelError('matrix is not Hermitian (error %.3e)'
                          % hermiticityError(a))
    herm = 0.5 * (a + a.conj().T)
    if herm.shape[0] == 2:
        return _eig2(herm)
    values, vectors = np.linalg.eigh(herm)
    return HermitianEig(values, vectors)


def clampSpectrum(values):
    values = np.asarray(values, dtype=float)
    scale = np.maximum(1.0, np.max(np.abs(values), axis=-1, keepdims=True))
    lowest = float(np.min(values))
    if lowest < -PSD_TOL:
        raise KernelError('not PSD: eigenvalue %.3e' % lowest)
    if np.any(values < -CLAMP_TOL * scale):
        warnings.warn('clamping eigenvalue %.3e to zero' % lowest)
    clamped = np.where(np.abs(values) <= ZERO_EIG_REL * scale, 0.0, values)
    return np.clip(clamped, 0.0, None)


def sqrtPsd(a):
    '''Principal square root of a Hermitian positive semidefinite matrix'''
    values, vectors = eigHermitian(a)
    roots = np.sqrt(clampSpectrum(values))
    return (vectors * roots) @ vectors.conj().T


def sqrtPsdStack(mats):
    '''sqrtPsd applied to every matrix of an (n, d, d) stack'''
    mats = np.asarray(mats, dtype=complex)
    herm = np.max(np.abs(mats - np.conj(np.swapaxes(mats, -1, -2))))
    if herm > HERMITIAN_TOL:
        raise KernelError('matrix is not Hermitian (error %.3e)' % herm)
    values, vectors = np.linalg.eigh(mats)
    roots = np.sqrt(clampSpectrum(values))
    return (vectors * roots[..., None, :]) @ \
        np.conj(np.swapaxes(vectors, -1, -2))


def psdSpectrum(a):
    '''Eigenvalues of a Hermitian PSD matrix after the round-off clamp'''
    return clampSpectrum(eigHermitian(a).values)
