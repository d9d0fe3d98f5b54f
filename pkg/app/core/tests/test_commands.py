import json
import os
import shutil
import tempfile
from fractions import Fraction
from io import StringIO
from unittest.mock import patch

from django.apps import apps
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from rest_framework.settings import api_settings

from core.serializers import (
    AlphaReportSerializer, ClassificationReportSerializer,
)
from dioph.specs import ExpSumSpec
from numkernel.intervals import (
    IntervalReal, interval_nth_root, parse_enclosure,
)


GOLDEN_SPEC = """
alpha.1.minpoly = x^2 - x - 1
alpha.1.root = 1.618
q.1 = 1/2
beta = 1/2
theta.minpoly = x^2 + x - 1
theta.root = 0.618
n_max = 64
n_filter = powers_of_2
"""

SQRT2 = '1.41421356237309504880168872420969807856967187537695'


def sample_spec_file(test, text):
    """Write text to a spec file removed after the test"""
    directory = tempfile.mkdtemp()
    test.addCleanup(shutil.rmtree, directory)
    path = os.path.join(directory, 'sample.spec')
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)
    return path


def sample_run(name, *args):
    """Run a command without meta and parse its JSON document"""
    out = StringIO()
    call_command(name, *args, '--no-meta', stdout=out)
    return json.loads(out.getvalue())


def sample_cap(**changes):
    """Settings override of GROWTHLAB entries"""
    return override_settings(GROWTHLAB=dict(settings.GROWTHLAB, **changes))


class CommandTestCase(SimpleTestCase):

    def assertFails(self, code, name, *args):
        """Assert that a command fails with code and return its error"""
        out = StringIO()
        with self.assertRaises(CommandError) as caught:
            call_command(name, *args, '--no-meta', stdout=out)
        self.assertEqual(caught.exception.returncode, code)
        return json.loads(out.getvalue())['error']


class OrbitCommandTests(CommandTestCase):

    def test_sylvester(self):
        """Test that five steps of Sylvester's sequence are printed"""
        path = sample_spec_file(self, 'P = x^2 - x + 1\nx0 = 2\n')
        document = sample_run('orbit', path, '--count', '5')
        self.assertEqual(document['command'], 'orbit')
        self.assertEqual(document['report']['orbit']['terms'],
                         [2, 3, 7, 43, 1807, 3263443])
        self.assertEqual(document['report']['spec']['polynomial'],
                         'x^2 - x + 1')
        self.assertEqual(document['config'], {'count': 5})
        self.assertNotIn('meta', document)

    def test_integrality_error(self):
        """Test that P = x^2/3 exits with code 2 at the first image"""
        path = sample_spec_file(self, 'P = x^2/3; x0 = 1')
        error = self.assertFails(2, 'orbit', path)
        self.assertEqual(error['type'], 'orbit-integrality')
        self.assertEqual(error['index'], 1)
        self.assertEqual(error['stage'], 'orbit')

    def test_doubly_exponential_powers_of_two(self):
        """Test that 2x^3 from 1 gives 2^((3^n - 1)/2)"""
        path = sample_spec_file(self, 'P = 2*x^3; x0 = 1')
        document = sample_run('orbit', path, '--count', '3')
        self.assertEqual(document['report']['orbit']['terms'],
                         [1, 2, 16, 8192])

    def test_flag_beats_spec_file(self):
        """Test the precedence flag over spec-file key over default"""
        path = sample_spec_file(self, 'P = x^2 - x + 1; x0 = 2; count = 2')
        document = sample_run('orbit', path)
        self.assertEqual(len(document['report']['orbit']['terms']), 3)
        document = sample_run('orbit', path, '--count', '4')
        self.assertEqual(document['config'], {'count': 4})
        path = sample_spec_file(self, 'P = x^2 - x + 1; x0 = 2')
        document = sample_run('orbit', path)
        self.assertEqual(document['config'], {'count': 10})

    def test_output_is_deterministic(self):
        """Test that identical runs print identical bytes without meta"""
        path = sample_spec_file(self, 'P = x^2 - x + 1; x0 = 2')
        outputs = []
        for _ in range(2):
            out = StringIO()
            call_command('orbit', path, '--no-meta', stdout=out)
            outputs.append(out.getvalue())
        self.assertEqual(outputs[0], outputs[1])
        out = StringIO()
        call_command('orbit', path, stdout=out)
        meta = json.loads(out.getvalue())['meta']
        self.assertIn('sympy', meta['versions'])
        self.assertIn('generated_at', meta)

    def test_pretty_table(self):
        """Test the path/value rendering"""
        path = sample_spec_file(self, 'P = x^2 - x + 1; x0 = 2')
        out = StringIO()
        call_command('orbit', path, '--count', '5', '--pretty',
                     '--no-meta', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertIn(['report.orbit.terms[5]', '3263443'],
                      [line.split() for line in lines])
        self.assertTrue(any(line.startswith('command ') for line in lines))

    def test_missing_file(self):
        """Test that an unreadable spec file is an input error"""
        error = self.assertFails(2, 'orbit', '/nonexistent/sample.spec')
        self.assertEqual(error['type'], 'input-error')


class ClassifyCommandTests(CommandTestCase):

    def test_golden_ratio(self):
        """Test x^2 - 2 from x1 = 3: alpha = phi and alpha^2 is Pisot"""
        path = sample_spec_file(self, 'P = x^2 - 2; x1 = 3')
        report = sample_run('classify', path, '--m-cap', '1')['report']
        self.assertEqual(report['minpoly_candidate']['polynomial'],
                         'x^2 - x - 1')
        self.assertIsNone(report['transcendence_evidence'])
        self.assertEqual(report['torsion']['h'], 2)
        self.assertTrue(report['torsion']['real'])
        self.assertEqual(report['alpha_h_minpoly'], 'x^2 - 3*x + 1')
        self.assertEqual(report['pisot_alpha_h']['verdict'], 'pisot')
        self.assertTrue(report['rational_scale'])
        self.assertEqual(report['rational_scale_case'],
                         'quadratic-pisot-unit')
        self.assertEqual(report['moreover']['least_m'], 0)
        self.assertEqual(report['moreover']['rows'][0]['minpoly'],
                         'x^2 - x - 1')
        serializer = ClassificationReportSerializer(data=report)
        self.assertTrue(serializer.is_valid(), serializer.errors)

    def test_power_of_two_recursion(self):
        """Test 2x^3 from 1: alpha = sqrt 2, alpha^2 = 2 and the m = 1
        number is 4"""
        path = sample_spec_file(self, 'P = 2*x^3; x0 = 1')
        report = sample_run('classify', path, '--m-cap', '1')['report']
        self.assertEqual(report['minpoly_candidate']['polynomial'],
                         'x^2 - 2')
        self.assertEqual(report['torsion']['h'], 2)
        self.assertEqual(report['torsion_claim'],
                         {'claimed_h': 2, 'matches': True})
        self.assertEqual(report['alpha_h_minpoly'], 'x - 2')
        self.assertEqual(report['pisot_alpha_h']['verdict'], 'pisot')
        self.assertFalse(report['rational_scale'])
        self.assertIsNone(report['rational_scale_case'])
        moreover = report['moreover']
        self.assertTrue(moreover['applies'])
        self.assertEqual(moreover['least_m'], 0)
        self.assertEqual([row['minpoly'] for row in moreover['rows']],
                         ['x - 2', 'x - 4'])
        self.assertTrue(moreover['rows'][1]['scaled_pseudo_pisot'])

    def test_sylvester_has_no_small_minimal_polynomial(self):
        """Test that Sylvester's constant yields transcendence evidence"""
        path = sample_spec_file(self, 'P = x^2 - x + 1; x0 = 2')
        document = sample_run('classify', path)
        report = document['report']
        self.assertIsNone(report['minpoly_candidate'])
        evidence = report['transcendence_evidence']
        self.assertEqual(evidence['verdict'], 'none-within-bounds')
        self.assertEqual(evidence['degree_bound'], 8)
        self.assertEqual(evidence['height_bound_searched'], 10 ** 15)
        self.assertIsNone(report['torsion'])
        self.assertIsNone(report['pisot_alpha_h'])
        self.assertEqual(document['config']['prec'], 256)
        serializer = ClassificationReportSerializer(data=report)
        self.assertTrue(serializer.is_valid(), serializer.errors)

    def test_stage_is_reported(self):
        """Test that a fixed point fails in the growth stage"""
        path = sample_spec_file(self, 'P = x^2; x0 = 1')
        error = self.assertFails(2, 'classify', path)
        self.assertEqual(error['type'], 'divergence-not-established')
        self.assertEqual(error['stage'], 'growth')


class ScanCommandTests(CommandTestCase):

    def test_golden_powers_of_two(self):
        """Test hits at the requested powers of two, each pseudo-Pisot"""
        path = sample_spec_file(self, GOLDEN_SPEC)
        document = sample_run('scan', path)
        report = document['report']
        self.assertEqual([hit['n'] for hit in report['scan']['hits']],
                         [1, 2, 4, 8, 16, 32, 64])
        self.assertTrue(all(a['pseudo_pisot']['pseudo_pisot']
                            for a in report['analyses']))
        self.assertEqual(report['analyses'][4]['trace_sum'], 1104)
        self.assertEqual(document['config']['n_filter'], 'powers_of_2')
        self.assertEqual(document['config']['n_max'], 64)

    def test_flags_override_the_file(self):
        """Test --n-max and --n-filter over the spec-file keys"""
        path = sample_spec_file(self, GOLDEN_SPEC)
        document = sample_run('scan', path, '--n-max', '12',
                              '--n-filter', 'all')
        self.assertEqual([hit['n'] for hit in document['report']['scan']
                          ['hits']], [0, 1, 2, 4, 5, 7, 8, 10, 11])
        self.assertEqual(document['report']['scan']['n0'], 12)

    def test_undecided_points_exit_zero(self):
        """Test that an unresolved boundary is reported, not an error"""
        path = sample_spec_file(self, GOLDEN_SPEC)
        wide = IntervalReal.from_bounds(0, 1, 64)
        with sample_cap(PREC_CAP=256), \
                patch.object(ExpSumSpec, 'theta_power', return_value=wide):
            document = sample_run('scan', path, '--n-max', '1',
                                  '--n-filter', 'all', '--prec', '64')
        scan = document['report']['scan']
        self.assertEqual([u['n'] for u in scan['undecided']], [0, 1])
        self.assertEqual(scan['hits'], [])

    def test_irrational_shift(self):
        """Test that phi^n + sqrt(2)/2 has no hit past the reported n0"""
        path = sample_spec_file(self, '\n'.join([
            'alpha.1.minpoly = x^2 - x - 1', 'alpha.1.root = 1.618',
            'q.1 = 1', 'beta.minpoly = 2x^2 - 1', 'beta.root = 0.707',
            'theta = 1/2',
        ]))
        document = sample_run('scan', path, '--n-max', '500',
                              '--n-filter', 'all')
        scan = document['report']['scan']
        self.assertEqual([hit['n'] for hit in scan['hits']], [0, 1, 3])
        self.assertEqual(scan['undecided'], [])
        self.assertEqual(scan['n0'], 4)
        self.assertEqual(scan['scanned'], 501)
        self.assertFalse([hit for hit in scan['hits']
                          if hit['n'] >= scan['n0']])

    def test_split_torsion(self):
        """Test that (1/4)(-1)^n is folded into one beta per parity"""
        path = sample_spec_file(self, '\n'.join([
            'alpha.1.minpoly = x + 1', 'q.1 = 1/4',
            'alpha.2.minpoly = x^2 - x - 1', 'alpha.2.root = 1.6',
            'q.2 = 1/2', 'beta = 3/4', 'theta = 1/2',
        ]))
        document = sample_run('scan', path, '--split-torsion',
                              '--n-max', '6')
        report = document['report']
        self.assertEqual(report['split']['modulus'], 2)
        self.assertEqual([c['beta'] for c in report['split']['classes']],
                         [1, '1/2'])
        self.assertEqual([c['scan']['n_filter'] for c in report['classes']],
                         ['residue 0 mod 2', 'residue 1 mod 2'])
        self.assertEqual([c['spec']['beta'] for c in report['classes']],
                         [1, '1/2'])
        self.assertTrue(document['config']['split_torsion'])

    def test_split_torsion_rejects_a_filter(self):
        """Test that --split-torsion cannot be combined with a filter"""
        path = sample_spec_file(self, GOLDEN_SPEC)
        error = self.assertFails(2, 'scan', path, '--split-torsion')
        self.assertEqual(error['stage'], 'parse')

    def test_bad_filter_flag(self):
        """Test that an unknown filter is an input error"""
        path = sample_spec_file(self, GOLDEN_SPEC)
        self.assertFails(2, 'scan', path, '--n-filter', 'odd')


class AlphaCommandTests(CommandTestCase):

    def test_golden_ratio(self):
        """Test that x^2 - 2 from x1 = 3 encloses (1 + sqrt 5)/2"""
        path = sample_spec_file(self, 'P = x^2 - 2; x1 = 3')
        report = sample_run('alpha', path, '--prec', '256',
                            '--residual-range', '1..6')['report']
        alpha = parse_enclosure(report['growth']['alpha'], 320)
        golden = (interval_nth_root(IntervalReal.exact(5, 320), 2, 320)
                  + 1) / 2
        self.assertTrue(alpha.overlaps(golden))
        self.assertLessEqual(alpha.width(), Fraction(1, 2 ** 200))
        self.assertIsNone(report['kappa'])
        self.assertIsNone(report['kappa_agrees'])
        self.assertEqual(report['direct_root']['index'], 6)
        residuals = report['residuals']
        self.assertEqual(residuals['n0'], 1)
        self.assertEqual([row['index'] for row in residuals['rows']],
                         [1, 2, 3, 4, 5, 6])
        self.assertIsNone(report['truncated_from'])
        serializer = AlphaReportSerializer(data=report)
        self.assertTrue(serializer.is_valid(), serializer.errors)

    def test_kappa_cross_check(self):
        """Test that the log-series, direct root and product agree"""
        path = sample_spec_file(self, 'P = x^2 + 1; x0 = 1')
        report = sample_run('alpha', path, '--prec', '512', '--n', '20',
                            '--residual-range', '1..4')['report']
        self.assertTrue(report['kappa_agrees'])
        self.assertLess(Fraction(report['direct_root_gap']),
                        Fraction(1, 10 ** 50))
        kappa = parse_enclosure(report['kappa']['value'], 600)
        alpha = parse_enclosure(report['growth']['alpha'], 600)
        self.assertTrue(kappa.overlaps(alpha))

    def test_residuals_are_cut_at_the_precision_cap(self):
        """Test that 2x^3 residuals vanish and stop below the cap"""
        path = sample_spec_file(self, 'P = 2*x^3; x0 = 1')
        with sample_cap(PREC_CAP=4000):
            report = sample_run('alpha', path, '--residual-range',
                                '0..12')['report']
        self.assertIn(report['truncated_from'], (7, 8))
        rows = report['residuals']['rows']
        self.assertEqual(rows[0]['index'], 0)
        self.assertEqual(rows[-1]['index'], report['truncated_from'] - 1)
        for row in rows:
            self.assertTrue(parse_enclosure(row['residual'], 64)
                            .contains(0), row['index'])
        self.assertEqual(report['residual_range'], '0..12')

    def test_sylvester_fitted_constant(self):
        """Test that the last Sylvester rows keep |r_n| gamma^(2^n) small"""
        path = sample_spec_file(self, 'P = x^2 - x + 1; x0 = 2')
        report = sample_run('alpha', path, '--residual-range',
                            '0..12')['report']
        self.assertIsNone(report['truncated_from'])
        residuals = report['residuals']
        self.assertLessEqual(residuals['n0'], 2)
        self.assertLess(Fraction(residuals['c_fit']), 1)
        for row in residuals['rows']:
            self.assertLess(Fraction(row['scaled']), 1, row['index'])

    def test_bad_range(self):
        """Test that a reversed residual range is rejected"""
        path = sample_spec_file(self, 'P = x^2 - 2; x1 = 3')
        error = self.assertFails(2, 'alpha', path, '--residual-range',
                                 '5..2')
        self.assertEqual(error['stage'], 'parse')


class AlgebraCommandTests(CommandTestCase):

    def test_pisot(self):
        """Test Pisot verdicts for x^3 - x - 1 and x^3 - 2"""
        report = sample_run('pisot', 'x^3 - x - 1')['report']
        self.assertEqual(report['verdict']['verdict'], 'pisot')
        report = sample_run('pisot', 'x^3 - 2')['report']
        self.assertEqual(report['verdict']['verdict'], 'not-pisot')

    def test_pisot_reducible(self):
        """Test that a reducible polynomial is an input error"""
        error = self.assertFails(2, 'pisot', 'x^2 - 1')
        self.assertEqual(error['stage'], 'pisot')

    def test_trace(self):
        """Test that Tr(phi^16) is the Lucas number 2207"""
        report = sample_run('trace', 'x^2 - x - 1', '16')['report']
        self.assertEqual(report['trace'], 2207)
        self.assertEqual(report['n'], 16)
        self.assertFails(2, 'trace', 'x^2 - 1', '3')

    def test_torsion(self):
        """Test h = 4 for the Gaussian field and the degree cap"""
        report = sample_run('torsion', 'x^2 + 1')['report']
        self.assertEqual(report['h'], 4)
        self.assertFalse(report['lower_bound'])
        self.assertFails(4, 'torsion', 'x^2 + 1', '--degree-cap', '1')

    def test_minpoly(self):
        """Test that 50 digits of sqrt 2 give x^2 - 2"""
        report = sample_run('minpoly', SQRT2, '--max-deg', '2',
                            '--max-height', '10')['report']
        self.assertEqual(report['verdict'], 'relation-found')
        self.assertEqual(report['polynomial'], 'x^2 - 2')

    def test_minpoly_needs_digits(self):
        """Test that three digits cannot support the default search"""
        error = self.assertFails(3, 'minpoly', '1.41')
        self.assertEqual(error['type'], 'precision-insufficient')


class InstalledAppsTests(SimpleTestCase):

    def test_no_user_or_content_type_apps(self):
        """Test that reports render without the auth and contenttypes
        apps"""
        self.assertFalse(apps.is_installed('django.contrib.auth'))
        self.assertFalse(apps.is_installed('django.contrib.contenttypes'))
        self.assertIsNone(api_settings.UNAUTHENTICATED_USER)
        document = sample_run('trace', 'x^2 - x - 1', '10')
        self.assertEqual(document['command'], 'trace')
