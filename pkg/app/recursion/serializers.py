from rest_framework import serializers

from core.exceptions import InputError
from algnum.polynomials import format_polynomial, parse_rational_polynomial
from numkernel.serializers import EnclosureField


class RationalPolynomialField(serializers.Field):
    """Polynomial in x with rational coefficients, e.g. "x^2 - x + 1" """

    def to_representation(self, value):
        return format_polynomial(value)

    def to_internal_value(self, data):
        try:
            return parse_rational_polynomial(str(data))
        except InputError as exc:
            raise serializers.ValidationError(exc.message)


class RecursionSpecSerializer(serializers.Serializer):
    """Serialize a recursion spec"""
    polynomial = RationalPolynomialField(source='coeffs')
    seed = serializers.IntegerField()
    seed_index = serializers.IntegerField(min_value=0, default=0)

    def validate_polynomial(self, value):
        if len(value) < 3:
            raise serializers.ValidationError('degree must be at least 2')
        if value[-1] <= 0:
            raise serializers.ValidationError(
                'leading coefficient must be positive'
            )
        return value


class RecursionOptionsSerializer(serializers.Serializer):
    """Optional keys a recursion spec file may set"""
    count = serializers.IntegerField(min_value=1, required=False)
    prec = serializers.IntegerField(min_value=16, required=False)
    probe = serializers.IntegerField(min_value=1, max_value=10 ** 4,
                                     required=False)
    n = serializers.IntegerField(min_value=0, required=False)
    max_deg = serializers.IntegerField(min_value=1, max_value=11,
                                       required=False)
    max_height = serializers.IntegerField(min_value=1, required=False)
    m_cap = serializers.IntegerField(min_value=0, required=False)
    residual_range = serializers.RegexField(r'^\d+\.\.\d+$',
                                            required=False)

    def validate(self, attrs):
        unknown = set(self.initial_data) - set(self.fields)
        if unknown:
            raise serializers.ValidationError(
                'unknown keys: %s' % ', '.join(sorted(unknown))
            )
        return attrs


class OrbitSerializer(serializers.Serializer):
    """Serialize an orbit"""
    seed_index = serializers.IntegerField(min_value=0)
    terms = serializers.ListField(child=serializers.IntegerField())
    divergence_verified_from = serializers.IntegerField(allow_null=True)


class YSequenceSerializer(serializers.Serializer):
    seed_index = serializers.IntegerField(min_value=0)
    y = serializers.ListField(child=EnclosureField())
