import re
from fractions import Fraction

from rest_framework import serializers

from algnum.numbers import AlgebraicNumber
from algnum.serializers import (
    BoxField, PolynomialField, PseudoPisotSerializer,
)
from core import conf
from core.exceptions import InputError
from dioph.specs import IndexFilter, SublinearBudget
from numkernel.serializers import (
    EnclosureField, LowerBoundField, RationalField,
)


_COMPLEX = re.compile(
    r'^(?P<re>[-+]?[0-9./]+)\s*(?P<sign>[-+])\s*(?P<im>[0-9./]*)\s*i$'
)


class ApproximationField(serializers.Field):
    """Root approximation: "1.618" or "-0.5+0.866i" """
    default_error_messages = {
        'invalid': 'Expected a decimal or a complex such as "-0.5+0.87i".',
    }

    def to_representation(self, value):
        if isinstance(value, tuple):
            re_part, im_part = value
            return '%s%s%si' % (re_part, '-' if im_part < 0 else '+',
                                abs(im_part))
        return str(value)

    def to_internal_value(self, data):
        text = str(data).replace(' ', '')
        try:
            if not text.endswith('i'):
                return Fraction(text)
            match = _COMPLEX.match(text)
            if not match:
                self.fail('invalid')
            im_part = Fraction(match.group('im') or 1)
            if match.group('sign') == '-':
                im_part = -im_part
            return Fraction(match.group('re')), im_part
        except (ValueError, ZeroDivisionError):
            self.fail('invalid')


class AlgebraicInputSerializer(serializers.Serializer):
    """A root of minpoly near root"""
    minpoly = PolynomialField()
    root = ApproximationField(required=False)


class ExpSumFileSerializer(serializers.Serializer):
    """Validate the keys of an exponential-sum spec file"""
    alphas = AlgebraicInputSerializer(many=True)
    qs = serializers.ListField(child=RationalField())
    beta = RationalField(required=False)
    beta_number = AlgebraicInputSerializer(required=False)
    theta = RationalField(required=False)
    theta_number = AlgebraicInputSerializer(required=False)
    n_max = serializers.IntegerField(min_value=0, required=False)
    n_filter = serializers.CharField(required=False)
    budget = serializers.CharField(required=False)
    prec = serializers.IntegerField(min_value=16, required=False)
    workers = serializers.IntegerField(min_value=1, required=False)

    def validate_n_max(self, value):
        cap = conf.get('SCAN_N_MAX')
        if value > cap:
            raise serializers.ValidationError('n_max is capped at %d' % cap)
        return value

    def validate_n_filter(self, value):
        try:
            return IndexFilter.parse(value)
        except InputError as exc:
            raise serializers.ValidationError(exc.message)

    def validate_budget(self, value):
        try:
            return SublinearBudget.parse(value)
        except InputError as exc:
            raise serializers.ValidationError(exc.message)

    def validate(self, attrs):
        unknown = set(self.initial_data) - set(self.fields)
        if unknown:
            raise serializers.ValidationError(
                'unknown keys: %s' % ', '.join(sorted(unknown))
            )
        for name in ('beta', 'theta'):
            if name in attrs and name + '_number' in attrs:
                raise serializers.ValidationError(
                    'give %s either as a rational or by minpoly and root'
                    % name
                )
        return attrs


class AlgebraicNumberSerializer(serializers.Serializer):
    minpoly = PolynomialField()
    root = BoxField(source='box')


class NumberValueField(serializers.Field):
    """A rational, or {"minpoly", "root"} for an irrational number"""

    def to_representation(self, value):
        if isinstance(value, AlgebraicNumber):
            if value.is_rational():
                value = value.rational_value()
            else:
                return AlgebraicNumberSerializer(value).data
        return RationalField().to_representation(value)

    def to_internal_value(self, data):
        if isinstance(data, dict):
            nested = AlgebraicNumberSerializer(data=data)
            nested.is_valid(raise_exception=True)
            return nested.validated_data
        return RationalField().to_internal_value(data)


class ExpSumSpecSerializer(serializers.Serializer):
    """Echo of an exponential sum with its common field"""
    alphas = AlgebraicNumberSerializer(many=True)
    qs = serializers.ListField(child=serializers.CharField())
    beta = NumberValueField()
    theta = NumberValueField()
    field = PolynomialField(source='field.defining')
    budget = serializers.CharField(allow_null=True)


class HitSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=0)
    value = EnclosureField()
    dist = EnclosureField()
    nearest = serializers.IntegerField()
    height_ok = serializers.BooleanField()


class UndecidedSerializer(serializers.Serializer):
    """An index whose distance could not be separated from theta^n"""
    n = serializers.IntegerField(min_value=0)
    dist = EnclosureField(allow_null=True)
    theta_power = EnclosureField()
    prec = serializers.IntegerField(min_value=1)


class ScanResultSerializer(serializers.Serializer):
    """Hits, undecided indices and the behaviour after the last hit"""
    n_max = serializers.IntegerField(min_value=0)
    n_filter = serializers.CharField()
    scanned = serializers.IntegerField(min_value=0)
    hits = HitSerializer(many=True)
    undecided = UndecidedSerializer(many=True)
    n0 = serializers.IntegerField(allow_null=True)
    dist_lower_bound = LowerBoundField(allow_null=True)


class ConjugateReportSerializer(serializers.Serializer):
    others_inside = serializers.BooleanField()
    max_other = EnclosureField(allow_null=True)


class HitAnalysisSerializer(serializers.Serializer):
    """What a hit says about integrality and the pseudo-Pisot property"""
    n = serializers.IntegerField(min_value=0)
    alpha_integral = serializers.ListField(child=serializers.BooleanField())
    coefficient_integral = serializers.ListField(
        child=serializers.BooleanField()
    )
    coefficient_units = serializers.ListField(
        child=serializers.BooleanField()
    )
    conjugates = ConjugateReportSerializer(many=True)
    pseudo_pisot = PseudoPisotSerializer()
    trace_sum = RationalField()
    trace_integral = serializers.BooleanField()
    trace_prediction = RationalField(allow_null=True)
    trace_agrees = serializers.BooleanField(allow_null=True)
    integral_case = serializers.BooleanField()


class SplitClassSerializer(serializers.Serializer):
    residue = serializers.IntegerField(min_value=0)
    beta = NumberValueField()


class TorsionSplitSerializer(serializers.Serializer):
    """Root-of-unity bases folded into beta per residue class"""
    modulus = serializers.IntegerField(min_value=1)
    alphas = AlgebraicNumberSerializer(many=True)
    qs = serializers.ListField(child=serializers.CharField())
    classes = SplitClassSerializer(many=True)
