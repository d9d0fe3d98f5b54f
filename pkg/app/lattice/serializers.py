from rest_framework import serializers

from algnum.serializers import PolynomialField
from lattice.relations import NONE_WITHIN_BOUNDS, RELATION_FOUND


class RelationReportSerializer(serializers.Serializer):
    """Serialize the outcome of a relation or minimal polynomial search"""
    verdict = serializers.ChoiceField(
        choices=(RELATION_FOUND, NONE_WITHIN_BOUNDS)
    )
    found = serializers.ListField(child=serializers.IntegerField(),
                                  allow_null=True)
    polynomial = PolynomialField(allow_null=True)
    height_bound_searched = serializers.IntegerField(min_value=1)
    degree_bound = serializers.IntegerField(min_value=1, allow_null=True)
    precision_used = serializers.IntegerField(min_value=0)
