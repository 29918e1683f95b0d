from django.conf import settings
from rest_framework import serializers

from pytypes.oracle import MAX_SEED
from services.credit import parse_ranking_code
from services.exceptions import CreditError


class RankingCodeField(serializers.CharField):
    def to_internal_value(self, data):
        text = super().to_internal_value(data)
        try:
            code = parse_ranking_code(text)
        except CreditError as e:
            raise serializers.ValidationError(str(e))
        if len(code) > settings.AINDEX_MAX_AUTHORS:
            raise serializers.ValidationError(
                f"Ranking code has {len(code)} authors; the limit is {settings.AINDEX_MAX_AUTHORS}"
            )
        return code


class CreditQuerySerializer(serializers.Serializer):
    code = RankingCodeField()
    stddev = serializers.BooleanField(default=False)


class TableQuerySerializer(serializers.Serializer):
    max_n = serializers.IntegerField(min_value=1, max_value=100, default=10)
    precision = serializers.IntegerField(min_value=1, max_value=15, default=4)
    stddev = serializers.BooleanField(default=False)


class CompareQuerySerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1, max_value=1000, default=5)


class OracleQuerySerializer(serializers.Serializer):
    code = RankingCodeField()
    samples = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED, required=False)

    def validate_samples(self, value):
        limit = settings.AINDEX_DEFAULT_SAMPLES * 10
        if value > limit:
            raise serializers.ValidationError(f"At most {limit} samples per request")
        return value

    def validate(self, attrs):
        attrs.setdefault('samples', settings.AINDEX_DEFAULT_SAMPLES)
        attrs.setdefault('seed', settings.AINDEX_DEFAULT_SEED)
        return attrs
