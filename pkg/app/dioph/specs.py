"""Exponential sums q_1 alpha_1^n + ... + q_k alpha_k^n + beta

A spec fixes the bases, the coefficients, the shift beta and the rate
theta of the inequality ||sum|| < theta^n, together with the number
field K holding all of them exactly.
"""
import logging
import re
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from algnum.fields import FieldElement, common_field, lift
from algnum.numbers import REFERENCE_PREC, AlgebraicNumber, escalate
from algnum.pisot import (
    INSIDE, degeneracy_order, is_root_of_unity, unit_circle_sides,
    weil_height,
)
from core.exceptions import InputError
from core.specfiles import read_assignments, validated
from numkernel.intervals import (
    IntervalReal, interval_exp, interval_ln, interval_nth_root,
)


logger = logging.getLogger(__name__)

ALL, POWERS_OF_2, RESIDUE = 'all', 'powers_of_2', 'residue'
POWER, SQRT, LOG = 'power', 'sqrt', 'log'

_RESIDUE = re.compile(r'^residue\s+(\d+)\s+mod\s+(\d+)$')
_BUDGET = re.compile(
    r'^(?:(?P<c>[0-9./]+)\s*\*\s*)?'
    r'(?:n\s*\^\s*(?P<e>-?[0-9./]+)|(?P<sqrt>sqrt\(n\))|(?P<log>log\(n\)))$'
)
_INDEXED = re.compile(r'^(alpha)\.(\d+)\.(minpoly|root)$|^(q)\.(\d+)$')
_NUMBER_KEY = re.compile(r'^(beta|theta)\.(minpoly|root)$')

SpecFile = namedtuple('SpecFile', ['alphas', 'qs', 'beta', 'theta', 'budget',
                                   'options'])


@dataclass(frozen=True)
class IndexFilter:
    """Which exponents n a scan visits"""
    kind: str = ALL
    residue: int = 0
    modulus: int = 1

    def __post_init__(self):
        if self.kind not in (ALL, POWERS_OF_2, RESIDUE):
            raise InputError('unknown index filter %r' % self.kind)
        if self.modulus < 1 or not 0 <= self.residue < self.modulus:
            raise InputError('residue %d mod %d is out of range'
                             % (self.residue, self.modulus))

    @classmethod
    def parse(cls, text):
        text = ' '.join(text.split())
        if text in (ALL, POWERS_OF_2):
            return cls(text)
        match = _RESIDUE.match(text)
        if not match:
            raise InputError(
                'n_filter must be all, powers_of_2 or "residue r mod m"'
            )
        return cls(RESIDUE, int(match.group(1)), int(match.group(2)))

    def indices(self, n_max):
        if self.kind == POWERS_OF_2:
            n = 1
            while n <= n_max:
                yield n
                n *= 2
        else:
            yield from range(self.residue, n_max + 1, self.modulus)

    def __str__(self):
        if self.kind == RESIDUE:
            return 'residue %d mod %d' % (self.residue, self.modulus)
        return self.kind


@dataclass(frozen=True)
class SublinearBudget:
    """Height budget f(n): c n^e with e < 1, c sqrt(n) or c log(n)"""
    family: str
    c: Fraction = Fraction(1)
    e: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.family not in (POWER, SQRT, LOG):
            raise InputError('unknown budget family %r' % self.family)
        if self.c <= 0:
            raise InputError('the budget constant must be positive')
        if self.family == POWER and self.e >= 1:
            raise InputError('c*n^e is sublinear only for e < 1')

    @classmethod
    def parse(cls, text):
        match = _BUDGET.match(text.strip())
        if not match:
            raise InputError(
                'budget must read c*n^e, c*sqrt(n) or c*log(n), got %r'
                % text
            )
        try:
            c = Fraction(match.group('c') or 1)
            if match.group('sqrt'):
                return cls(SQRT, c)
            if match.group('log'):
                return cls(LOG, c)
            return cls(POWER, c, Fraction(match.group('e')))
        except (ValueError, ZeroDivisionError):
            raise InputError('bad budget constant in %r' % text)

    def value(self, n, prec=REFERENCE_PREC):
        """Enclosure of f(n); f vanishes below n = 1"""
        if n < 1:
            return IntervalReal.exact(0, prec)
        ln_n = interval_ln(IntervalReal.exact(n, prec), prec)
        if self.family == SQRT:
            root = interval_nth_root(IntervalReal.exact(n, prec), 2, prec)
            return root * self.c
        if self.family == LOG:
            return ln_n * self.c
        return interval_exp(ln_n * self.e, prec) * self.c

    def __str__(self):
        if self.family == SQRT:
            return '%s*sqrt(n)' % self.c
        if self.family == LOG:
            return '%s*log(n)' % self.c
        return '%s*n^%s' % (self.c, self.e)


def _as_rational(value):
    """A Fraction for rationals (AlgebraicNumber or not), else None"""
    if isinstance(value, AlgebraicNumber):
        return value.rational_value() if value.is_rational() else None
    try:
        return Fraction(value)
    except (TypeError, ValueError):
        raise InputError('expected a rational or an algebraic number, '
                         'got %r' % (value,))


def _is_zero(q):
    if isinstance(q, FieldElement):
        return q.is_zero()
    return Fraction(q) == 0


def _outside_unit_disc(alpha):
    rows = unit_circle_sides(alpha.minpoly)
    index = alpha.locate([row.box for row in rows])
    return rows[index].side != INSIDE


def _in_unit_interval(theta):
    for prec in escalate(REFERENCE_PREC):
        value = theta.real_enclosure(prec)
        if value.certainly_gt(0) and value.certainly_lt(1):
            return True
        if value.upper() <= 0 or value.lower() >= 1:
            return False


@dataclass(frozen=True)
class ExpSumSpec:
    """sum q_i alpha_i^n + beta against theta^n, held exactly in field

    Build instances with ExpSumSpec.build, which checks the hypotheses
    and computes the common field.
    """
    alphas: tuple
    qs: tuple
    beta: object
    theta: object
    field: object
    images: tuple
    beta_image: object
    theta_image: object
    budget: object = None

    @classmethod
    def build(cls, alphas, qs, beta, theta, budget=None, degree_cap=None):
        """Check the hypotheses and place every number in one field

        qs are rationals or elements of a single number field; beta is a
        rational or a real AlgebraicNumber; theta is a rational or a real
        AlgebraicNumber in (0, 1).
        """
        alphas, qs = tuple(alphas), tuple(qs)
        if not alphas:
            raise InputError('an exponential sum needs at least one base')
        if len(alphas) != len(qs):
            raise InputError('%d bases but %d coefficients'
                             % (len(alphas), len(qs)))
        for i, alpha in enumerate(alphas, start=1):
            if alpha.is_zero():
                raise InputError('alpha_%d is zero' % i)
            if is_root_of_unity(alpha) is not None:
                raise InputError('alpha_%d is a root of unity' % i)
            if not _outside_unit_disc(alpha):
                raise InputError('|alpha_%d| < 1' % i)
        if any(_is_zero(q) for q in qs):
            raise InputError('coefficients must be nonzero')

        beta_rational = _as_rational(beta)
        if beta_rational is not None:
            beta = beta_rational
        elif not beta.is_real():
            raise InputError('beta must be real')
        theta_rational = _as_rational(theta)
        if theta_rational is not None:
            theta = theta_rational
            if not 0 < theta < 1:
                raise InputError('theta must lie in (0, 1)')
        elif not theta.is_real() or not _in_unit_interval(theta):
            raise InputError('theta must be a real number in (0, 1)')

        fields = list(dict.fromkeys(
            q.field for q in qs if isinstance(q, FieldElement)
        ))
        if len(fields) > 1:
            raise InputError('coefficients must share one field')
        extras = [x for x in (beta, theta) if isinstance(x, AlgebraicNumber)]
        numbers = [f.generator for f in fields] + list(alphas) + extras
        field, found = common_field(numbers, degree_cap)
        if fields:
            base, found = found[0], found[1:]
        images, found = found[:len(alphas)], found[len(alphas):]
        found = iter(found)

        def image_of(value):
            if isinstance(value, AlgebraicNumber):
                return next(found)
            return field.rational(value)

        beta_image = image_of(beta)
        theta_image = image_of(theta)
        qs = tuple(lift(q, base) if isinstance(q, FieldElement)
                   else field.rational(q) for q in qs)

        order = degeneracy_order(images)
        if order > 1:
            raise InputError(
                'the bases are degenerate: some ratio alpha_i / alpha_j is '
                'a root of unity (orders dividing %d)' % order
            )
        logger.debug('exponential sum with %d terms over %s',
                     len(alphas), field)
        return cls(alphas, qs, beta, theta, field, tuple(images),
                   beta_image, theta_image, budget)

    @property
    def k(self):
        return len(self.alphas)

    def exact_sum(self, n, powers=None):
        """The sum at n as an element of the field

        powers, when given, are the images alpha_i^n already computed.
        """
        if powers is None:
            powers = [image ** n for image in self.images]
        total = self.beta_image
        for q, power in zip(self.qs, powers):
            total = total + q * power
        return total

    def theta_power(self, n, prec):
        """Enclosure of theta^n"""
        work = prec + n.bit_length() + 8
        if isinstance(self.theta, AlgebraicNumber):
            base = self.theta.real_enclosure(work)
        else:
            base = IntervalReal.exact(self.theta, work)
        return base ** n

    def coefficient_heights(self, prec=REFERENCE_PREC):
        numbers = [AlgebraicNumber.from_rational(q.rational_value())
                   if q.is_rational() else q.to_algebraic() for q in self.qs]
        return [weil_height(number, prec) for number in numbers]

    def __str__(self):
        terms = ' + '.join('(%s)*alpha_%d^n' % (q, i)
                           for i, q in enumerate(self.qs, start=1))
        return '%s + %s vs theta^n, theta = %s' % (terms, self.beta,
                                                   self.theta)


def read_exp_sum(text, stage='parse'):
    """Validated contents of an exponential-sum spec file

    Returns a SpecFile whose hypotheses are not yet checked; unknown
    keys are rejected.
    """
    from dioph.serializers import ExpSumFileSerializer

    assignments = read_assignments(text)
    alphas, qs, data = {}, {}, {}
    for key, value in assignments.items():
        indexed = _INDEXED.match(key)
        number = _NUMBER_KEY.match(key)
        if indexed and indexed.group(1):
            index = int(indexed.group(2))
            alphas.setdefault(index, {})[indexed.group(3)] = value
        elif indexed:
            qs[int(indexed.group(5))] = value
        elif number:
            data.setdefault(number.group(1) + '_number',
                            {})[number.group(2)] = value
        else:
            data[key] = value
    if not alphas:
        raise InputError('a spec needs "alpha.1.minpoly = ..."', stage=stage)
    if sorted(alphas) != list(range(1, len(alphas) + 1)):
        raise InputError('alpha indices must run 1..k', stage=stage)
    if set(qs) - set(alphas):
        raise InputError('q.i given without alpha.i', stage=stage)
    data['alphas'] = [alphas[i] for i in sorted(alphas)]
    data['qs'] = [qs.get(i, '1') for i in sorted(alphas)]
    values = validated(ExpSumFileSerializer(data=data), stage=stage)

    def number(name):
        if name + '_number' in values:
            item = values[name + '_number']
            return AlgebraicNumber.from_minpoly(item['minpoly'],
                                                item.get('root'))
        return values.get(name, Fraction(0))

    if 'theta' not in values and 'theta_number' not in values:
        raise InputError('a spec needs "theta = ..."', stage=stage)
    try:
        return SpecFile(
            alphas=[AlgebraicNumber.from_minpoly(item['minpoly'],
                                                 item.get('root'))
                    for item in values['alphas']],
            qs=values['qs'],
            beta=number('beta'),
            theta=number('theta'),
            budget=values.get('budget'),
            options={key: values[key]
                     for key in ('n_max', 'n_filter', 'prec', 'workers')
                     if key in values},
        )
    except InputError as exc:
        raise exc.with_stage(stage)


def parse_exp_sum(text, stage='parse'):
    """Read an exponential-sum spec file

    Returns the ExpSumSpec and the validated options (n_max, n_filter,
    prec, workers) in a dict.
    """
    found = read_exp_sum(text, stage)
    try:
        spec = ExpSumSpec.build(found.alphas, found.qs, found.beta,
                                found.theta, budget=found.budget)
    except InputError as exc:
        raise exc.with_stage(stage)
    return spec, found.options
