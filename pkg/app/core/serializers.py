from rest_framework import serializers

from algnum.serializers import (
    PisotVerdictSerializer, PolynomialField, TorsionSerializer,
)
from core.classification import (
    INTEGER, NO_CANDIDATE, OTHER_ALGEBRAIC, QUADRATIC_PISOT_UNIT,
)
from growth.serializers import (
    AsymptoticReportSerializer, DirectRootSerializer, GrowthResultSerializer,
    KappaResultSerializer,
)
from lattice.serializers import RelationReportSerializer
from numkernel.serializers import UpperBoundField
from recursion.serializers import RecursionSpecSerializer


class TorsionClaimSerializer(serializers.Serializer):
    claimed_h = serializers.IntegerField(min_value=1)
    matches = serializers.BooleanField()


class MoreoverRowSerializer(serializers.Serializer):
    """One m of the a_d^{(d-2)/(d-1)} alpha^(d^m) check"""
    m = serializers.IntegerField(min_value=0)
    minpoly = PolynomialField()
    verdict = PisotVerdictSerializer()
    scaled_minpoly = PolynomialField()
    scaled_pseudo_pisot = serializers.BooleanField()


class MoreoverSerializer(serializers.Serializer):
    applies = serializers.BooleanField()
    least_m = serializers.IntegerField(min_value=0, allow_null=True)
    rows = MoreoverRowSerializer(many=True)


class ClassificationReportSerializer(serializers.Serializer):
    """Serialize the transcendence-or-Pisot classification of alpha"""
    spec = RecursionSpecSerializer()
    alpha = GrowthResultSerializer()
    minpoly_candidate = RelationReportSerializer(allow_null=True)
    transcendence_evidence = RelationReportSerializer(allow_null=True)
    torsion = TorsionSerializer(allow_null=True)
    torsion_claim = TorsionClaimSerializer(allow_null=True)
    alpha_h_minpoly = PolynomialField(allow_null=True)
    pisot_alpha_h = PisotVerdictSerializer(allow_null=True)
    rational_scale = serializers.BooleanField()
    rational_scale_case = serializers.ChoiceField(
        choices=(INTEGER, QUADRATIC_PISOT_UNIT, OTHER_ALGEBRAIC,
                 NO_CANDIDATE),
        allow_null=True,
    )
    moreover = MoreoverSerializer(allow_null=True)

    def validate(self, attrs):
        found = attrs.get('minpoly_candidate')
        evidence = attrs.get('transcendence_evidence')
        if (found is None) == (evidence is None):
            raise serializers.ValidationError(
                'exactly one of minpoly_candidate and '
                'transcendence_evidence must be set'
            )
        if found is None and attrs.get('pisot_alpha_h') is not None:
            raise serializers.ValidationError(
                'pisot_alpha_h needs a minimal polynomial candidate'
            )
        return attrs


class MetaSerializer(serializers.Serializer):
    generated_at = serializers.DateTimeField()
    versions = serializers.DictField(child=serializers.CharField())


class ReportDocumentSerializer(serializers.Serializer):
    """The one JSON document a command writes"""
    command = serializers.CharField()
    report = serializers.DictField()
    config = serializers.DictField()
    meta = MetaSerializer(required=False)


class ErrorDocumentSerializer(serializers.Serializer):
    error = serializers.DictField()


class AlphaReportSerializer(serializers.Serializer):
    """Growth constant with its cross-checks and residual rows"""
    spec = RecursionSpecSerializer()
    growth = GrowthResultSerializer()
    direct_root = DirectRootSerializer()
    direct_root_gap = UpperBoundField()
    kappa = KappaResultSerializer(allow_null=True)
    kappa_agrees = serializers.BooleanField(allow_null=True)
    residual_range = serializers.RegexField(r'^\d+\.\.\d+$')
    residuals = AsymptoticReportSerializer()
    truncated_from = serializers.IntegerField(allow_null=True)
