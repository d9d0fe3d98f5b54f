"""Exact LLL reduction of integer lattices"""
import logging
from fractions import Fraction

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMRankError, DMShapeError

from core import conf
from core.exceptions import InputError


logger = logging.getLogger(__name__)


class IntLattice:
    """Lattice spanned by independent integer row vectors"""

    def __init__(self, basis):
        basis = [tuple(int(c) for c in row) for row in basis]
        if not basis:
            raise InputError('a lattice needs at least one basis vector')
        if len({len(row) for row in basis}) != 1:
            raise InputError('basis vectors differ in length')
        self.basis = basis

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def ambient_dimension(self):
        return len(self.basis[0])

    def as_matrix(self):
        return DomainMatrix([[ZZ(c) for c in row] for row in self.basis],
                            (self.dimension, self.ambient_dimension), ZZ)

    def gram_determinant(self):
        """det(B B^T), the squared covolume"""
        matrix = self.as_matrix()
        return int((matrix * matrix.transpose()).det())

    def __eq__(self, other):
        if not isinstance(other, IntLattice):
            return NotImplemented
        return self.basis == other.basis

    def __repr__(self):
        return 'IntLattice(%r)' % (self.basis,)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def gram_schmidt(basis):
    """Orthogonalized vectors and the mu coefficients, over the rationals"""
    stars, mu = [], []
    for i, row in enumerate(basis):
        star = [Fraction(c) for c in row]
        coefficients = []
        for j in range(i):
            m = _dot(row, stars[j]) / _dot(stars[j], stars[j])
            coefficients.append(m)
            star = [s - m * t for s, t in zip(star, stars[j])]
        stars.append(star)
        mu.append(coefficients)
    return stars, mu


def is_reduced(lattice, delta=None):
    """Check size reduction and the Lovasz condition exactly"""
    delta = Fraction(delta) if delta is not None else conf.lll_delta()
    stars, mu = gram_schmidt(lattice.basis)
    norms = [_dot(s, s) for s in stars]
    if any(abs(m) > Fraction(1, 2) for row in mu for m in row):
        return False
    return all(
        norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]
        for k in range(1, len(norms))
    )


def lll_reduce(lattice, delta=None):
    """LLL-reduced basis of the same lattice, exact throughout"""
    delta = Fraction(delta) if delta is not None else conf.lll_delta()
    if not Fraction(1, 4) < delta < 1:
        raise InputError('delta must lie strictly between 1/4 and 1')
    try:
        reduced = lattice.as_matrix().lll(
            delta=QQ(delta.numerator, delta.denominator)
        )
    except DMRankError:
        raise InputError('the basis vectors are linearly dependent')
    except DMShapeError:
        raise InputError('more basis vectors than coordinates')
    logger.debug('reduced a %d-dimensional lattice', lattice.dimension)
    return IntLattice([[int(c) for c in row]
                       for row in reduced.to_list()])
