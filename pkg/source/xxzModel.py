##############################################################################
#Version: 2.0
#Package: xxzgeom
#
#Description: Two-qubit XXZ Heisenberg model in a longitudinal field
#             Hamiltonian, its closed-form spectrum and the eta <-> t map
##############################################################################

import enum
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

import complexMatrix as cm
from xxzErrors import DomainError, UsageError


class Convention(enum.Enum):
    '''How the decoherence rate alpha enters the Milburn equation'''
    PAPER = 'paper'
    LITERAL = 'literal'

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            raise UsageError('unknown convention %r (paper|literal)' % text)


@dataclass(frozen=True)
class ModelParams:
    '''Coupling J, anisotropy gamma, field B, decoherence rate alpha'''
    coupling: float
    anisotropy: float = 0.0
    field: float = 0.0
    alpha: float = 0.0
    convention: Convention = Convention.PAPER

    def __post_init__(self):
        for name in ('coupling', 'anisotropy', 'field', 'alpha'):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise DomainError('%s must be finite, got %r' % (name, value))
            object.__setattr__(self, name, float(value))
        if self.alpha < 0:
            raise DomainError('alpha must be >= 0, got %g' % self.alpha)
        object.__setattr__(self, 'convention',
                           Convention.parse(self.convention))

    def replace(self, **changes):
        fields = dict(coupling=self.coupling, anisotropy=self.anisotropy,
                      field=self.field, alpha=self.alpha,
                      convention=self.convention)
        fields.update(changes)
        return ModelParams(**fields)


Spectrum = namedtuple('Spectrum', ['energies', 'states'])
Spectrum.__doc__ = '''Energies in basis order (E1..E4) with the eigenstates
as columns of `states`'''


def buildHamiltonian(p):
    '''4x4 Hamiltonian in the basis {|uu>, |ud>, |du>, |dd>}'''
    J, g, B = p.coupling, p.anisotropy, p.field
    ham = np.diag([g + 2 * B, -g, -g, g - 2 * B]).astype(complex)
    ham[1, 2] = ham[2, 1] = 2 * J
    return ham


def buildHamiltonianFromPaulis(p):
    '''Same Hamiltonian assembled from Pauli products:
       J(xx + yy) + gamma zz + B(z1 + z2)'''
    xx = cm.kron(cm.SIGMAX, cm.SIGMAX)
    yy = cm.kron(cm.SIGMAY, cm.SIGMAY)
    zz = cm.kron(cm.SIGMAZ, cm.SIGMAZ)
    zsum = cm.kron(cm.SIGMAZ, cm.SIGMA0) + cm.kron(cm.SIGMA0, cm.SIGMAZ)
    return p.coupling * (xx + yy) + p.anisotropy * zz + p.field * zsum


def spectrum(p):
    J, g, B = p.coupling, p.anisotropy, p.field
    energies = np.array([g + 2 * B, -g + 2 * J, -g - 2 * J, g - 2 * B])
    r = 1.0 / np.sqrt(2.0)
    states = np.array([[1, 0, 0, 0],
                       [0, r, r, 0],
                       [0, r, -r, 0],
                       [0, 0, 0, 1]], dtype=complex)
    return Spectrum(energies, states)


def etaOfT(p, t):
    return 2.0 * p.coupling * np.asarray(t, dtype=float)


def tOfEta(p, eta):
    if p.coupling == 0:
        raise DomainError('eta = 2Jt is undefined for J = 0')
    return np.asarray(eta, dtype=float) / (2.0 * p.coupling)
