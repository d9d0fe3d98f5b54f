from fractions import Fraction

from django.test import SimpleTestCase

from algnum.numbers import AlgebraicNumber
from algnum.polynomials import IntPolynomial
from core.exceptions import InputError, MultiplicativeDependence
from dioph.analysis import (
    analyze_hit, check_independence, expand_poly_power_sum,
    split_torsion_terms,
)
from dioph.scanner import scan_hits
from dioph.serializers import HitAnalysisSerializer, TorsionSplitSerializer
from dioph.specs import POWERS_OF_2, ExpSumSpec, IndexFilter


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


def sample_hit(spec, n):
    """Scan spec at n alone and return the hit"""
    hits = scan_hits(spec, n, IndexFilter.parse('residue %d mod %d'
                                                % (n, n + 1))).hits
    return hits[0]


class AnalyzeHitTests(SimpleTestCase):

    def test_golden_hit(self):
        """Test that the hit at n = 16 is pseudo-Pisot with sum 1104"""
        spec = ExpSumSpec.build(
            [sample_golden()], [Fraction(1, 2)], Fraction(1, 2),
            sample_number('x^2 + x - 1', '0.6'),
        )
        hit = scan_hits(spec, 16, IndexFilter(POWERS_OF_2)).hits[-1]
        self.assertEqual(hit.n, 16)
        report = analyze_hit(spec, hit)
        self.assertTrue(report.pseudo_pisot.pseudo_pisot)
        self.assertFalse(report.pseudo_pisot.pisot)
        self.assertEqual(report.trace_sum, 1104)
        self.assertTrue(report.trace_integral)
        self.assertEqual(report.trace_prediction, 1104)
        self.assertTrue(report.trace_agrees)
        self.assertEqual(report.alpha_integral, [True])
        self.assertEqual(report.coefficient_integral, [False])
        self.assertFalse(report.integral_case)
        self.assertTrue(report.conjugates[0].others_inside)
        data = HitAnalysisSerializer(report).data
        self.assertEqual(data['trace_sum'], 1104)
        self.assertTrue(data['pseudo_pisot']['pseudo_pisot'])
        self.assertTrue(HitAnalysisSerializer(data=data).is_valid())

    def test_integer_powers(self):
        """Test that a hit of 2^n is trivially Pisot"""
        spec = ExpSumSpec.build([AlgebraicNumber.from_rational(2)], [1], 0,
                                Fraction(1, 2))
        report = analyze_hit(spec, sample_hit(spec, 10))
        self.assertTrue(report.pseudo_pisot.pisot)
        self.assertEqual(report.trace_sum, 1024)
        self.assertEqual(report.alpha_integral, [True])
        self.assertEqual(report.coefficient_units, [True])
        self.assertTrue(report.integral_case)
        self.assertTrue(report.conjugates[0].others_inside)
        self.assertIsNone(report.conjugates[0].max_other)

    def test_irrational_shift(self):
        """Test that an algebraic beta leaves no trace prediction"""
        spec = ExpSumSpec.build([sample_golden()], [1],
                                sample_number('x^2 - 2', 1), Fraction(1, 2))
        result = scan_hits(spec, 40)
        for hit in result.hits:
            report = analyze_hit(spec, hit)
            self.assertIsNone(report.trace_prediction)
            self.assertIsNone(report.trace_agrees)
        self.assertLess(result.n0, 40)


class ExpandPolyPowerSumTests(SimpleTestCase):

    def test_one_base(self):
        """Test that x^2 + x at phi gives the bases phi^2 and phi"""
        spec = expand_poly_power_sum({(2,): 1, (1,): 1}, [sample_golden()],
                                     Fraction(1, 2))
        self.assertEqual([a.minpoly for a in spec.alphas],
                         [sample_poly('x^2 - 3x + 1'),
                          sample_poly('x^2 - x - 1')])
        self.assertEqual(list(spec.qs), [1, 1])
        self.assertEqual(spec.beta, 0)

    def test_constant_term_becomes_beta(self):
        """Test that 2x^3 - x + 1/2 at phi keeps its coefficients"""
        spec = expand_poly_power_sum(
            {(3,): 2, (1,): -1, (0,): Fraction(1, 2)}, [sample_golden()],
            Fraction(1, 2),
        )
        self.assertEqual([a.minpoly for a in spec.alphas],
                         [sample_poly('x^2 - 4x - 1'),
                          sample_poly('x^2 - x - 1')])
        self.assertEqual(list(spec.qs), [2, -1])
        self.assertEqual(spec.beta, Fraction(1, 2))

    def test_two_bases(self):
        """Test that xy + 3 at (sqrt 2, sqrt 3) has the base sqrt 6"""
        spec = expand_poly_power_sum(
            {(1, 1): 1, (0, 0): 3},
            [sample_number('x^2 - 2', 1), sample_number('x^2 - 3', 1)],
            Fraction(1, 2),
        )
        self.assertEqual(spec.k, 1)
        self.assertEqual(spec.alphas[0], sample_number('x^2 - 6', 2))
        self.assertEqual(spec.beta, 3)

    def test_dependent_bases(self):
        """Test that 2 and 4 are rejected with the relation 2^2 = 4"""
        with self.assertRaises(MultiplicativeDependence) as caught:
            expand_poly_power_sum(
                {(1, 1): 1},
                [AlgebraicNumber.from_rational(2),
                 AlgebraicNumber.from_rational(4)],
                Fraction(1, 2),
            )
        self.assertEqual(caught.exception.relation, [2, -1])
        self.assertEqual(caught.exception.as_dict()['relation'], [2, -1])

    def test_dependence_through_a_root_of_unity(self):
        """Test that phi and -phi are dependent with relation order 2"""
        with self.assertRaises(MultiplicativeDependence) as caught:
            expand_poly_power_sum(
                {(1, 0): 1, (0, 1): 1},
                [sample_golden(), sample_number('x^2 + x - 1', -2)],
                Fraction(1, 2),
            )
        self.assertEqual(caught.exception.relation, [2, -2])

    def test_bad_monomials(self):
        """Test exponent tuples of the wrong length and constant input"""
        golden = sample_golden()
        with self.assertRaises(InputError):
            expand_poly_power_sum({(1, 1): 1}, [golden], Fraction(1, 2))
        with self.assertRaises(InputError):
            expand_poly_power_sum({(0,): 5}, [golden], Fraction(1, 2))
        with self.assertRaises(InputError):
            expand_poly_power_sum({(-1,): 1}, [golden], Fraction(1, 2))


class CheckIndependenceTests(SimpleTestCase):

    def test_golden_ratio_and_its_square(self):
        """Test that phi and phi^2 are rejected with phi^2 / phi^2 = 1"""
        with self.assertRaises(MultiplicativeDependence) as caught:
            expand_poly_power_sum(
                {(1, 0): 1, (0, 1): 1},
                [sample_golden(), sample_number('x^2 - 3x + 1', 3)],
                Fraction(1, 2),
            )
        self.assertEqual(caught.exception.relation, [2, -1])

    def test_unimodular_ratio_of_infinite_order(self):
        """Test that 2 + i and 2 - i share a modulus but stay
        independent"""
        check_independence([sample_number('x^2 - 4x + 5', (2, 1)),
                            sample_number('x^2 - 4x + 5', (2, -1))])

    def test_unimodular_ratio_of_finite_order(self):
        """Test that (1 + i) / (1 - i) = i gives the relation (4, -4)"""
        with self.assertRaises(MultiplicativeDependence) as caught:
            check_independence([sample_number('x^2 - 2x + 2', (1, 1)),
                                sample_number('x^2 - 2x + 2', (1, -1))])
        self.assertEqual(caught.exception.relation, [4, -4])

    def test_distinct_moduli(self):
        """Test that phi and sqrt 2 are independent"""
        check_independence([sample_golden(), sample_number('x^2 - 2', 1)])


class SplitTorsionTermsTests(SimpleTestCase):

    def test_sign_alternation(self):
        """Test that (1/4)(-1)^n folds into beta = 1 and 1/2"""
        split = split_torsion_terms(
            [sample_number('x + 1'), sample_golden()],
            [Fraction(1, 4), Fraction(1, 2)], Fraction(3, 4),
        )
        self.assertEqual(split.modulus, 2)
        self.assertEqual(split.alphas, [sample_golden()])
        self.assertEqual(split.qs, [Fraction(1, 2)])
        self.assertEqual([c.beta for c in split.classes],
                         [1, Fraction(1, 2)])
        data = TorsionSplitSerializer(split).data
        self.assertEqual(data['modulus'], 2)
        self.assertEqual([c['beta'] for c in data['classes']], [1, '1/2'])

    def test_without_roots_of_unity(self):
        """Test that a tuple without roots of unity is one class"""
        split = split_torsion_terms([sample_golden()], [1], Fraction(1, 3))
        self.assertEqual(split.modulus, 1)
        self.assertEqual([c.beta for c in split.classes], [Fraction(1, 3)])

    def test_complex_shift_rejected(self):
        """Test that i^n cannot be folded into a real beta"""
        with self.assertRaises(InputError):
            split_torsion_terms(
                [sample_number('x^2 + 1', (Fraction(0), Fraction(1)))],
                [1], 0,
            )
