from fractions import Fraction
from random import Random

from django.test import SimpleTestCase

from algnum.numbers import AlgebraicNumber
from algnum.polynomials import IntPolynomial
from algnum.roots import isolate_roots
from core.exceptions import InputError, PrecisionInsufficient
from growth.constants import KAPPA_SPEC, growth_constant
from lattice.relations import (
    NONE_WITHIN_BOUNDS, RELATION_FOUND, effective_bits, find_int_relation,
    guess_min_poly, required_bits, search_precision,
)
from lattice.serializers import RelationReportSerializer
from numkernel.intervals import IntervalReal, interval_ln, interval_nth_root
from recursion.specs import parse_recursion


def sample_root(value, prec, n=2):
    """Create an enclosure of the real n-th root of value"""
    return interval_nth_root(IntervalReal.exact(value, prec), n, prec)


def sample_golden(prec):
    """Create an enclosure of the golden ratio"""
    return (1 + sample_root(5, prec)) / 2


def sample_poly(text):
    """Create an integer polynomial from text"""
    return IntPolynomial.parse(text)


def sample_small_real_root(rng, degree, height):
    """Draw an irreducible polynomial with a real root in (-2, 2)

    Returns the primitive polynomial and that root, or None when the
    draw has no such root.
    """
    coeffs = [rng.randint(-height, height) for _ in range(degree)]
    coeffs.append(rng.choice([-1, 1]) * rng.randint(1, height))
    poly = IntPolynomial(tuple(coeffs)).primitive()
    if poly.degree != degree or not poly.is_irreducible():
        return None
    for box in isolate_roots(poly, 64):
        if box.is_real() and abs(box.re.mid()) < 2:
            return poly, AlgebraicNumber.from_minpoly(poly, box.re.mid())
    return None


class GuessMinPolyTests(SimpleTestCase):

    def test_square_root_of_two(self):
        """Test that x^2 - 2 is recovered from 200 bits"""
        report = guess_min_poly(sample_root(2, 200), max_deg=4,
                                max_height=10 ** 15)
        self.assertEqual(report.verdict, RELATION_FOUND)
        self.assertEqual(report.polynomial, sample_poly('x^2 - 2'))
        self.assertEqual(report.found, [-2, 0, 1])
        self.assertEqual(report.degree_bound, 4)

    def test_golden_ratio(self):
        """Test that x^2 - x - 1 is recovered from 200 bits"""
        report = guess_min_poly(sample_golden(200), max_deg=4,
                                max_height=10 ** 15)
        self.assertEqual(report.polynomial, sample_poly('x^2 - x - 1'))
        data = RelationReportSerializer(report).data
        self.assertEqual(data['polynomial'], 'x^2 - x - 1')
        self.assertEqual(data['verdict'], RELATION_FOUND)

    def test_known_algebraic_numbers(self):
        """Test that small minimal polynomials are always found"""
        for text, approx in (('x^3 - 2', 1), ('x^3 - x - 1', 1),
                             ('3x^2 - 5', 1), ('x^4 - 10x^2 + 1', 3)):
            poly = sample_poly(text)
            number = AlgebraicNumber.from_minpoly(poly, Fraction(approx))
            report = guess_min_poly(number.real_enclosure(256), max_deg=4,
                                    max_height=100,
                                    refine=number.real_enclosure)
            self.assertEqual(report.verdict, RELATION_FOUND, msg=text)
            self.assertEqual(report.polynomial, poly, msg=text)

    def test_random_dyadics(self):
        """Test that random 200-bit dyadics have no small polynomial"""
        rng = Random(20240611)
        for _ in range(20):
            value = Fraction(rng.getrandbits(200) | 1, 2 ** 200)
            report = guess_min_poly(IntervalReal.exact(value, 200),
                                    max_deg=3, max_height=1000)
            self.assertEqual(report.verdict, NONE_WITHIN_BOUNDS)
            self.assertIsNone(report.polynomial)
            self.assertEqual(report.height_bound_searched, 1000)

    def test_recursion_constants_have_no_small_polynomial(self):
        """Test that gamma, kappa and zeta give none within degree 8 and
        height 10^15 at 700 bits"""
        specs = (
            parse_recursion('P = x^2 - x + 1; x0 = 2')[0],
            KAPPA_SPEC,
            parse_recursion('P = x^2 - 1; x0 = 2')[0],
        )
        for spec in specs:
            alpha = growth_constant(spec, 700).alpha
            report = guess_min_poly(alpha, max_deg=8, max_height=10 ** 15)
            self.assertEqual(report.verdict, NONE_WITHIN_BOUNDS, str(spec))
            self.assertEqual(report.degree_bound, 8)
            self.assertEqual(report.height_bound_searched, 10 ** 15)

    def test_no_false_relation_near_rationals(self):
        """Test that rationals shifted by noise below the lattice scale
        never come back as minimal polynomials"""
        rng = Random(1000)
        prec = 128
        for _ in range(1000):
            q = rng.randint(2, 1000)
            p = rng.randint(q // 2 + 1, q - 1)
            noise = rng.choice([-1, 1]) * Fraction(1, 2 ** (prec - 4))
            value = IntervalReal.exact(Fraction(p, q) + noise, prec)
            report = guess_min_poly(value, max_deg=3, max_height=1000)
            self.assertEqual(report.verdict, NONE_WITHIN_BOUNDS, (p, q))

    def test_random_polynomials_are_recovered(self):
        """Test that random irreducible polynomials of degree <= 5 and
        height <= 10^6 are found from the guarded precision"""
        rng = Random(5)
        height = 10 ** 6
        bits = search_precision(5, height)
        checked = 0
        while checked < 25:
            drawn = sample_small_real_root(rng, rng.randint(2, 5), height)
            if drawn is None:
                continue
            poly, number = drawn
            report = guess_min_poly(number.real_enclosure(bits), max_deg=5,
                                    max_height=height,
                                    refine=number.real_enclosure)
            self.assertEqual(report.verdict, RELATION_FOUND, str(poly))
            self.assertEqual(report.polynomial, poly)
            checked += 1

    def test_guard_refuses_short_input(self):
        """Test that too little precision is refused, not searched"""
        self.assertEqual(required_bits(4, 10 ** 15), 200)
        with self.assertRaises(PrecisionInsufficient):
            guess_min_poly(sample_root(2, 64), max_deg=4,
                           max_height=10 ** 15)

    def test_wide_enclosure_counts_its_width(self):
        """Test that effective bits follow the enclosure width"""
        self.assertEqual(effective_bits(IntervalReal.exact(3, 90)), 90)
        wide = IntervalReal.from_bounds(1, 1 + Fraction(1, 2 ** 40), 200)
        self.assertLess(effective_bits(wide), 41)


class FindIntRelationTests(SimpleTestCase):

    def test_golden_ratio_powers(self):
        """Test 1 + phi - phi^2 = 0"""
        phi = sample_golden(128)
        one = IntervalReal.exact(1, 128)
        report = find_int_relation([one, phi, phi * phi],
                                   max_height=10 ** 6)
        self.assertEqual(report.verdict, RELATION_FOUND)
        self.assertEqual(report.found, [1, 1, -1])

    def test_logarithms(self):
        """Test 2 ln 2 - ln 4 = 0"""
        ln2 = interval_ln(IntervalReal.exact(2, 128), 128)
        ln4 = interval_ln(IntervalReal.exact(4, 128), 128)
        report = find_int_relation([ln2, ln4], max_height=10 ** 6)
        self.assertEqual(report.found, [2, -1])
        data = RelationReportSerializer(report).data
        self.assertIsNone(data['polynomial'])
        self.assertIsNone(data['degree_bound'])

    def test_independent_quantities(self):
        """Test that 1 and sqrt 2 have no relation of height 10^6"""
        report = find_int_relation(
            [IntervalReal.exact(1, 128), sample_root(2, 128)],
            max_height=10 ** 6,
        )
        self.assertEqual(report.verdict, NONE_WITHIN_BOUNDS)
        self.assertIsNone(report.found)

    def test_too_few_quantities(self):
        """Test that a single quantity is an input error"""
        with self.assertRaises(InputError):
            find_int_relation([IntervalReal.exact(1, 64)])
