from rest_framework import serializers

from growth.constants import DIRECT_ROOT, LOG_SERIES, PRODUCT_FORMULA
from numkernel.serializers import (
    DyadicBoundField, EnclosureField, UpperBoundField,
)


class GrowthResultSerializer(serializers.Serializer):
    """Serialize a certified growth constant"""
    alpha = EnclosureField()
    log_alpha = EnclosureField()
    terms_used = serializers.IntegerField(min_value=0)
    tail_bound = DyadicBoundField()
    method = serializers.ChoiceField(
        choices=(LOG_SERIES, DIRECT_ROOT, PRODUCT_FORMULA)
    )
    start_index = serializers.IntegerField(min_value=0)


class DirectRootSerializer(serializers.Serializer):
    value = EnclosureField()
    index = serializers.IntegerField(min_value=0)
    caveat = serializers.CharField()


class KappaResultSerializer(serializers.Serializer):
    value = EnclosureField()
    partial = EnclosureField()
    factors = serializers.IntegerField(min_value=0)
    tail_bound = DyadicBoundField()


class ResidualRowSerializer(serializers.Serializer):
    """One index of the asymptotic check"""
    index = serializers.IntegerField(min_value=0)
    residual = EnclosureField()
    scaled = UpperBoundField()
    identity_holds = serializers.BooleanField()
    scaled_dist = EnclosureField()
    scaled_dist_bound = UpperBoundField()
    floor_reading = serializers.BooleanField(allow_null=True)
    nearest_reading = serializers.BooleanField()


class AsymptoticReportSerializer(serializers.Serializer):
    """Residual rows with the fitted constant and the rounding index"""
    n0 = serializers.IntegerField(allow_null=True)
    c_fit = UpperBoundField()
    rows = ResidualRowSerializer(many=True)
