import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from core.exceptions import InputError, OrbitIntegralityError
from core.specfiles import read_assignments, validated
from algnum.polynomials import format_polynomial, X
from sympy import Poly, QQ


_SEED_KEY = re.compile(r'^x(\d+)$')


@dataclass(frozen=True)
class RecursionSpec:
    """x_{n+1} = P(x_n) started from x_{seed_index} = seed

    coeffs holds a_0..a_d as Fractions with a_d > 0 and d >= 2.
    """
    coeffs: tuple
    seed: int
    seed_index: int = 0

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 3:
            raise InputError('P must have degree at least 2')
        if coeffs[-1] <= 0:
            raise InputError('P must have a positive leading coefficient')
        if self.seed_index < 0:
            raise InputError('seed index must be nonnegative')
        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'seed', int(self.seed))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    @property
    def subleading(self):
        return self.coeffs[-2]

    @property
    def shift(self):
        """a_{d-1} / (d a_d), the shift in the y-substitution"""
        return self.subleading / (self.degree * self.leading)

    @property
    def polynomial(self):
        return format_polynomial(self.coeffs)

    @property
    def denominator(self):
        return reduce(lambda a, b: a * b // gcd(a, b),
                      (c.denominator for c in self.coeffs), 1)

    def as_poly(self):
        return Poly(list(reversed(self.coeffs)), X, domain=QQ)

    def image(self, value, index):
        """Return P(value), which must be an integer

        index is the absolute orbit index of the image, used to report
        an integrality failure.
        """
        denominator = self.denominator
        numerator = 0
        for c in reversed(self.coeffs):
            numerator = numerator * value + int(c * denominator)
        result, remainder = divmod(numerator, denominator)
        if remainder:
            raise OrbitIntegralityError(
                'P(x_%d) = %s is not an integer'
                % (index - 1, Fraction(numerator, denominator)),
                index=index,
            )
        return result

    def __str__(self):
        return 'P = %s; x%d = %d' % (self.polynomial, self.seed_index,
                                     self.seed)


def parse_recursion(text, stage='parse'):
    """Read a recursion spec file

    Returns the RecursionSpec and the validated option keys (prec, count
    and the like) in a dict; unknown keys are rejected.
    """
    from recursion.serializers import (
        RecursionOptionsSerializer, RecursionSpecSerializer,
    )

    assignments = read_assignments(text)
    data, options = {}, {}
    for key, value in assignments.items():
        seed = _SEED_KEY.match(key)
        if key == 'P':
            data['polynomial'] = value
        elif seed:
            if 'seed' in data:
                raise InputError('more than one seed given', stage=stage)
            data['seed'] = value
            data['seed_index'] = int(seed.group(1))
        else:
            options[key] = value
    if 'polynomial' not in data or 'seed' not in data:
        raise InputError('a spec needs "P = ..." and "x0 = ..."',
                         stage=stage)
    spec = validated(RecursionSpecSerializer(data=data), stage=stage)
    options = validated(RecursionOptionsSerializer(data=options),
                        stage=stage)
    return RecursionSpec(**spec), dict(options)
