from rest_framework import serializers

from algnum.numbers import REFERENCE_PREC
from algnum.pisot import NOT_PISOT, PISOT
from algnum.polynomials import IntPolynomial
from algnum.roots import ComplexBox
from core.exceptions import InputError
from numkernel.intervals import format_enclosure, parse_enclosure
from numkernel.serializers import EnclosureField, RationalField


class PolynomialField(serializers.Field):
    """Integer polynomial in x, e.g. "x^3 - 2" """

    def to_representation(self, value):
        return str(value)

    def to_internal_value(self, data):
        if isinstance(data, IntPolynomial):
            return data
        try:
            return IntPolynomial.parse(str(data))
        except InputError as exc:
            raise serializers.ValidationError(exc.message)


class BoxField(serializers.Field):
    """Complex box as a [re, im] pair of enclosures"""

    def to_representation(self, value):
        return [format_enclosure(value.re), format_enclosure(value.im)]

    def to_internal_value(self, data):
        if isinstance(data, ComplexBox):
            return data
        try:
            re, im = data
            return ComplexBox(parse_enclosure(str(re), REFERENCE_PREC),
                              parse_enclosure(str(im), REFERENCE_PREC))
        except (TypeError, ValueError):
            raise serializers.ValidationError(
                'Expected a pair of enclosures [re, im].'
            )


class ConjugatesSerializer(serializers.Serializer):
    """Certified boxes around every root of a polynomial"""
    polynomial = PolynomialField()
    prec = serializers.IntegerField(min_value=1)
    roots = serializers.ListField(child=BoxField())


class PisotVerdictSerializer(serializers.Serializer):
    verdict = serializers.ChoiceField(choices=(PISOT, NOT_PISOT))
    reason = serializers.CharField()
    dominant = EnclosureField(allow_null=True)
    max_other = EnclosureField(allow_null=True)


class PseudoPisotSerializer(serializers.Serializer):
    """Pseudo-Pisot verdict of a tuple with its outside conjugates"""
    pseudo_pisot = serializers.BooleanField()
    pisot = serializers.BooleanField()
    total = RationalField()
    integral = serializers.BooleanField()
    conjugates = serializers.ListField(child=BoxField())
    max_modulus = EnclosureField(allow_null=True)
    reason = serializers.CharField()


class TraceSerializer(serializers.Serializer):
    polynomial = PolynomialField()
    n = serializers.IntegerField(min_value=0)
    trace = RationalField()


class TorsionSerializer(serializers.Serializer):
    """Torsion order of a Galois closure with its certificates"""
    generators = serializers.ListField(child=PolynomialField())
    h = serializers.IntegerField(min_value=2)
    lower_bound = serializers.BooleanField()
    closure_degree = serializers.IntegerField(min_value=1)
    defining = PolynomialField()
    real = serializers.BooleanField()
    certificates = serializers.DictField(child=serializers.CharField())
    unresolved = serializers.ListField(child=serializers.IntegerField())
