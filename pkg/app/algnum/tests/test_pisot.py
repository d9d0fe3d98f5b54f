from fractions import Fraction

from django.test import SimpleTestCase

from algnum.numbers import AlgebraicNumber
from algnum.pisot import (
    NOT_PISOT, PISOT, classify_pisot, is_root_of_unity, power_trace,
    pseudo_pisot_tuple, quadratic_pisot_unit_check,
    quadratic_pisot_unit_flags, reduce_degenerate, weil_height,
)
from algnum.polynomials import IntPolynomial
from algnum.roots import ComplexBox, isolate_roots
from algnum.serializers import PisotVerdictSerializer, PseudoPisotSerializer
from core.exceptions import InputError
from numkernel.intervals import (
    IntervalReal, dist_nearest_int, interval_ln, interval_nth_root,
)


def sample_poly(text):
    """Create an integer polynomial from text"""
    return IntPolynomial.parse(text)


def sample_number(text, approx=None):
    """Create the root of text nearest to approx"""
    if approx is not None and not isinstance(approx, tuple):
        approx = Fraction(approx)
    return AlgebraicNumber.from_minpoly(sample_poly(text), approx)


def sample_golden():
    """Create the golden ratio"""
    return sample_number('x^2 - x - 1', 2)


def sample_lucas(n):
    """Return the n-th Lucas number"""
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


class ClassifyPisotTests(SimpleTestCase):

    def test_pisot_polynomials(self):
        """Test the Pisot suite"""
        for text in ('x^2 - x - 1', 'x^2 - 3x + 1', 'x^3 - x - 1', 'x - 4'):
            verdict = classify_pisot(sample_poly(text))
            self.assertEqual(verdict.verdict, PISOT, msg=text)

    def test_non_pisot_polynomials(self):
        """Test polynomials with a conjugate of modulus >= 1"""
        reasons = {
            'x^2 - 2': '2 roots outside the unit circle',
            'x^3 - 2': '3 roots outside the unit circle',
            'x^4 - 2x^3 - 2x + 1': 'a conjugate lies on the unit circle',
            'x^2 + x - 1': 'the root outside the unit circle is not a '
                           'positive real',
        }
        for text, reason in reasons.items():
            verdict = classify_pisot(sample_poly(text))
            self.assertEqual(verdict.verdict, NOT_PISOT, msg=text)
            self.assertEqual(verdict.reason, reason, msg=text)

    def test_not_an_algebraic_integer(self):
        """Test that a non-monic polynomial is not Pisot"""
        verdict = classify_pisot(sample_poly('2x^2 - 1'))
        self.assertEqual(verdict.verdict, NOT_PISOT)
        self.assertEqual(verdict.reason, 'not an algebraic integer')

    def test_reducible_rejected(self):
        """Test that a reducible polynomial is an input error"""
        with self.assertRaises(InputError):
            classify_pisot(sample_poly('x^2 - 1'))

    def test_witness(self):
        """Test the dominant root and the other modulus of the golden ratio"""
        verdict = classify_pisot(sample_poly('x^2 - x - 1'), 100)
        root5 = interval_nth_root(IntervalReal.exact(5, 128), 2, 128)
        self.assertTrue(verdict.dominant.overlaps((1 + root5) / 2))
        self.assertTrue(verdict.max_other.overlaps((root5 - 1) / 2))
        data = PisotVerdictSerializer(verdict).data
        self.assertEqual(data['verdict'], PISOT)
        self.assertTrue(PisotVerdictSerializer(data=data).is_valid())

    def test_pisot_powers_near_integers(self):
        """Test that powers of a Pisot number round to their traces"""
        phi = sample_golden()
        dominant = phi.real_enclosure(128)
        for n in range(2, 40):
            nearest = dist_nearest_int(dominant ** n)
            self.assertEqual(nearest.nearest, power_trace(phi, n))


class PseudoPisotTests(SimpleTestCase):

    def test_golden_ratio_singleton(self):
        """Test that (phi) is pseudo-Pisot with conjugate sum 1"""
        verdict = pseudo_pisot_tuple([sample_golden()])
        self.assertTrue(verdict.pseudo_pisot)
        self.assertTrue(verdict.pisot)
        self.assertEqual(verdict.total, 1)
        self.assertEqual(len(verdict.conjugates), 1)

    def test_square_root_of_two(self):
        """Test that (sqrt 2) is not pseudo-Pisot"""
        verdict = pseudo_pisot_tuple([sample_number('x^2 - 2', 1)])
        self.assertFalse(verdict.pseudo_pisot)
        self.assertEqual(verdict.total, 0)

    def test_half_power_pair(self):
        """Test ((1/2) phi^16, 1/2): the sum is 1104"""
        power = sample_number('4x^2 - 4414x + 1', 1103)
        half = AlgebraicNumber.from_rational(Fraction(1, 2))
        verdict = pseudo_pisot_tuple([power, half])
        self.assertTrue(verdict.pseudo_pisot)
        self.assertFalse(verdict.pisot)
        self.assertEqual(verdict.total, 1104)
        self.assertTrue(verdict.max_modulus.certainly_lt(Fraction(1, 1000)))
        data = PseudoPisotSerializer(verdict).data
        self.assertEqual(data['total'], 1104)
        self.assertTrue(PseudoPisotSerializer(data=data).is_valid())

    def test_pisot_singleton_property(self):
        """Test that every Pisot integer forms a pseudo-Pisot singleton"""
        for text, approx in (('x^3 - x - 1', '1.3'), ('x^2 - 3x + 1', 3),
                             ('x - 4', 4), ('x^3 - 2x^2 + x - 1', 2)):
            number = sample_number(text, approx)
            self.assertEqual(classify_pisot(number.minpoly).verdict, PISOT)
            self.assertTrue(pseudo_pisot_tuple([number]).pseudo_pisot)

    def test_bad_tuples(self):
        """Test that zero and repeated entries are rejected"""
        with self.assertRaises(InputError):
            pseudo_pisot_tuple([AlgebraicNumber.from_rational(0)])
        with self.assertRaises(InputError):
            pseudo_pisot_tuple([sample_golden(), sample_golden()])


class TraceTests(SimpleTestCase):

    def test_lucas_numbers(self):
        """Test that traces of golden ratio powers are Lucas numbers"""
        phi = sample_golden()
        self.assertEqual(power_trace(phi, 4), 7)
        for n in range(1, 9):
            trace = power_trace(phi, 2 ** n)
            self.assertEqual(trace, sample_lucas(2 ** n))
            self.assertEqual(trace % 2, 1)
        self.assertEqual([power_trace(phi, n) for n in (2, 4, 8, 16)],
                         [3, 7, 47, 2207])

    def test_square_root_of_two(self):
        """Test Tr(sqrt 2 ^ 2) = 4 and odd powers vanish"""
        root2 = sample_number('x^2 - 2', 1)
        self.assertEqual(power_trace(root2, 2), 4)
        self.assertEqual(power_trace(root2, 7), 0)
        self.assertEqual(power_trace(root2, 0), 2)

    def test_trace_matches_conjugate_powers(self):
        """Test the exact trace against summed conjugate enclosures"""
        cases = (('x^3 - x - 1', 1), ('x^4 - 3x + 1', 1),
                 ('2x^2 - 3x + 5', (Fraction(3, 4), Fraction(3, 2))))
        for text, approx in cases:
            number = sample_number(text, approx)
            boxes = isolate_roots(number.minpoly, 128)
            for n in range(0, 30, 7):
                total = ComplexBox.exact(0, 128)
                for box in boxes:
                    total = total + box ** n
                trace = power_trace(number, n)
                self.assertTrue(total.re.contains(trace), msg=(text, n))
                self.assertTrue(total.im.contains(0), msg=(text, n))

    def test_negative_exponent_rejected(self):
        """Test that negative exponents are input errors"""
        with self.assertRaises(InputError):
            power_trace(sample_golden(), -1)


class RootOfUnityTests(SimpleTestCase):

    def test_orders(self):
        """Test -1, a primitive sixth root and the golden ratio"""
        self.assertEqual(
            is_root_of_unity(AlgebraicNumber.from_rational(-1)), 2
        )
        self.assertEqual(is_root_of_unity(AlgebraicNumber.from_rational(1)),
                         1)
        sixth = sample_number('x^2 - x + 1', (Fraction(1, 2), Fraction(1)))
        self.assertEqual(is_root_of_unity(sixth), 6)
        self.assertIsNone(is_root_of_unity(sample_golden()))
        i = sample_number('x^2 + 1', (Fraction(0), Fraction(1)))
        self.assertEqual(is_root_of_unity(i), 4)

    def test_zero_rejected(self):
        """Test that zero is an input error"""
        with self.assertRaises(InputError):
            is_root_of_unity(AlgebraicNumber.from_rational(0))


class ReduceDegenerateTests(SimpleTestCase):

    def test_opposite_bases(self):
        """Test (phi, -phi): class 0 doubles, class 1 cancels"""
        reduction = reduce_degenerate(
            [sample_golden(), sample_number('x^2 + x - 1', -2)], [1, 1]
        )
        self.assertEqual(reduction.modulus, 2)
        even, odd = reduction.classes
        self.assertEqual(even.coefficients, [2])
        self.assertEqual(even.bases[0].minpoly(),
                         sample_poly('x^2 - 3x + 1'))
        self.assertEqual(odd.coefficients, [])
        self.assertEqual(odd.bases, [])

    def test_non_degenerate_unchanged(self):
        """Test that a non-degenerate tuple keeps its terms"""
        reduction = reduce_degenerate(
            [sample_golden(), sample_number('x^2 - 2', 1)], [1, 3]
        )
        self.assertEqual(reduction.modulus, 1)
        (only,) = reduction.classes
        self.assertEqual(only.coefficients, [1, 3])
        self.assertEqual(only.bases[0].minpoly(), sample_poly('x^2 - x - 1'))
        self.assertEqual(only.bases[1].minpoly(), sample_poly('x^2 - 2'))

    def test_cube_root_of_unity_ratio(self):
        """Test (zeta_3 sqrt 3, sqrt 3): classes modulo 3"""
        rotated = sample_number(
            'x^4 + 3x^2 + 9', (Fraction(-866, 1000), Fraction(3, 2))
        )
        root3 = sample_number('x^2 - 3', 2)
        reduction = reduce_degenerate([rotated, root3], [1, 1])
        self.assertEqual(reduction.modulus, 3)
        for item in reduction.classes:
            self.assertEqual(len(item.bases), 1)
            self.assertEqual(item.bases[0].minpoly(), sample_poly('x^2 - 27'))
        self.assertEqual(reduction.classes[0].coefficients, [2])

    def test_values_preserved(self):
        """Test that each residue class reproduces the original sum"""
        phi = sample_golden()
        minus_phi = sample_number('x^2 + x - 1', -2)
        reduction = reduce_degenerate([phi, minus_phi], [1, 1])
        prec = 96
        a, b = phi.enclosure(prec), minus_phi.enclosure(prec)
        for n in range(12):
            item = reduction.classes[n % reduction.modulus]
            m = n // reduction.modulus
            reduced = ComplexBox.exact(0, prec)
            for c, base in zip(item.coefficients, item.bases):
                reduced = reduced + (c * base ** m).embed(prec)
            original = a ** n + b ** n
            self.assertTrue(original.overlaps(reduced), msg=n)

    def test_length_mismatch(self):
        """Test that lists of different lengths are rejected"""
        with self.assertRaises(InputError):
            reduce_degenerate([sample_golden()], [1, 2])


class HeightTests(SimpleTestCase):

    def test_rational_heights(self):
        """Test h(2) = h(1/2) = ln 2"""
        ln2 = interval_ln(IntervalReal.exact(2, 128), 128)
        for value in (2, Fraction(1, 2)):
            height = weil_height(AlgebraicNumber.from_rational(value), 100)
            self.assertTrue(height.overlaps(ln2))

    def test_golden_ratio_height(self):
        """Test h(phi) = (ln phi)/2"""
        root5 = interval_nth_root(IntervalReal.exact(5, 128), 2, 128)
        expected = interval_ln((1 + root5) / 2, 128) / 2
        height = weil_height(sample_golden(), 100)
        self.assertTrue(height.overlaps(expected))
        self.assertTrue(str(height).startswith('0.2406'))

    def test_zero_rejected(self):
        """Test that the height of zero is an input error"""
        with self.assertRaises(InputError):
            weil_height(AlgebraicNumber.from_rational(0))


class QuadraticPisotUnitTests(SimpleTestCase):

    def test_readings(self):
        """Test the strict and absolute readings of the unit condition"""
        square = sample_number('x^2 - 3x + 1', 3)
        self.assertTrue(quadratic_pisot_unit_check(square))
        self.assertEqual(quadratic_pisot_unit_flags(sample_golden()),
                         {'strict': False, 'absolute': True})
        self.assertFalse(quadratic_pisot_unit_check(sample_golden()))
        root2 = sample_number('x^2 - 2', 1)
        self.assertEqual(quadratic_pisot_unit_flags(root2),
                         {'strict': False, 'absolute': False})
