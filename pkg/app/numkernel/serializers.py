import math
from fractions import Fraction

from rest_framework import serializers

from core import conf
from core.exceptions import DomainError
from numkernel.intervals import (
    IntervalReal, format_enclosure, parse_enclosure,
)


class EnclosureField(serializers.Field):
    """Renders an IntervalReal as "<mid>±<radius>" and reads it back"""
    default_error_messages = {
        'invalid': 'Expected an enclosure such as "1.618±3e-17".',
    }

    def __init__(self, prec=None, **kwargs):
        self.prec = prec
        super().__init__(**kwargs)

    def to_representation(self, value):
        return format_enclosure(value)

    def to_internal_value(self, data):
        if isinstance(data, IntervalReal):
            return data
        prec = self.prec or conf.get('DEFAULT_PREC')
        try:
            return parse_enclosure(str(data), prec)
        except DomainError:
            self.fail('invalid')


class RationalField(serializers.Field):
    """Exact rational written as "p/q" or an integer"""
    default_error_messages = {
        'invalid': 'Expected a rational such as "-3/7".',
    }

    def to_representation(self, value):
        value = Fraction(value)
        if value.denominator == 1:
            return value.numerator
        return str(value)

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        try:
            return Fraction(str(data).strip())
        except (ValueError, ZeroDivisionError):
            self.fail('invalid')


class DyadicBoundField(serializers.Field):
    """A power of two written as "2^-270" """
    default_error_messages = {
        'invalid': 'Expected a power of two such as "2^-270".',
    }

    def to_representation(self, value):
        value = Fraction(value)
        if value.numerator == 1:
            return '2^-%d' % (value.denominator.bit_length() - 1)
        return '2^%d' % (value.numerator.bit_length() - 1)

    def to_internal_value(self, data):
        text = str(data).replace(' ', '')
        if not text.startswith('2^'):
            self.fail('invalid')
        try:
            return Fraction(2) ** int(text[2:])
        except ValueError:
            self.fail('invalid')


class UpperBoundField(serializers.Field):
    """Nonnegative bound rounded up to three digits, e.g. "1.25e-7" """
    default_error_messages = {
        'invalid': 'Expected a decimal bound such as "1.25e-7".',
    }

    def to_representation(self, value):
        value = Fraction(value)
        if value <= 0:
            return '0'
        exponent = 0
        while value >= 10 ** (exponent + 1):
            exponent += 1
        while value < Fraction(10) ** exponent:
            exponent -= 1
        mantissa = math.ceil(value / Fraction(10) ** (exponent - 2))
        if mantissa == 1000:
            mantissa, exponent = 100, exponent + 1
        return '%d.%02de%d' % (mantissa // 100, mantissa % 100, exponent)

    def to_internal_value(self, data):
        try:
            value = Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            self.fail('invalid')
        if value < 0:
            self.fail('invalid')
        return value


class LowerBoundField(UpperBoundField):
    """Nonnegative bound rounded down to three digits, e.g. "3.33e-1" """

    def to_representation(self, value):
        value = Fraction(value)
        if value <= 0:
            return '0'
        exponent = 0
        while value >= 10 ** (exponent + 1):
            exponent += 1
        while value < Fraction(10) ** exponent:
            exponent -= 1
        mantissa = math.floor(value / Fraction(10) ** (exponent - 2))
        return '%d.%02de%d' % (mantissa // 100, mantissa % 100, exponent)


class NearestIntegerSerializer(serializers.Serializer):
    """Distance to the nearest integer with the chosen integer"""
    dist = EnclosureField()
    nearest = serializers.IntegerField()
    tie = serializers.BooleanField()
