"""
Credit API views.

Endpoints (all GET, mounted under /api/v1/):
- health/   - liveness probe
- credit/   - per-author a-index shares, optionally with moments
- table/    - rounded unequal-contribution table
- compare/  - fractional, harmonic and axiomatic shares as tidy rows
- sample/   - Monte-Carlo moments against the closed forms
- volume/   - rejection estimate of the polytope volume
"""

import logging

from django.conf import settings
from django.http import JsonResponse
from django.utils.decorators import method_decorator
from django.views.decorators.csrf import csrf_exempt
from rest_framework import status
from rest_framework.views import APIView

from pytypes.oracle import SampleConfig
from services.credit import (
    comparison_rows,
    credit_payload,
    group_structure,
    render_table1,
    table1_stddev,
)
from services.oracle import compare_with_closed_form, estimate_moments, estimate_volume
from utils import finite_or_none
from utils.constants import APP_NAME, APP_VERSION
from utils.response import ResponseMixin

from .serializers import (
    CompareQuerySerializer,
    CreditQuerySerializer,
    OracleQuerySerializer,
    TableQuerySerializer,
)

logger = logging.getLogger(__name__)


def health_check(request):
    return JsonResponse({"status": "ok", "service": APP_NAME, "version": APP_VERSION})


class CreditAPIView(APIView, ResponseMixin):
    """Base for the read-only computations: validate the query, then compute."""

    permission_classes = []
    authentication_classes = []
    query_serializer_class = None
    failure_message = "Computation failed"

    def get(self, request):
        serializer = self.query_serializer_class(data=request.query_params)
        if not serializer.is_valid():
            return self.response(
                message="Invalid query parameters",
                error=serializer.errors,
                status_code=status.HTTP_400_BAD_REQUEST,
            )

        try:
            return self.response(data=self.compute(**serializer.validated_data))
        except Exception as e:
            return self.error_response(e, self.failure_message)

    def compute(self, **params):
        raise NotImplementedError


@method_decorator(csrf_exempt, name="dispatch")
class CreditView(CreditAPIView):
    query_serializer_class = CreditQuerySerializer
    failure_message = "Failed to compute credit shares"

    def compute(self, code, stddev):
        return credit_payload(code, with_stddev=stddev)


@method_decorator(csrf_exempt, name="dispatch")
class TableView(CreditAPIView):
    query_serializer_class = TableQuerySerializer
    failure_message = "Failed to render the credit table"

    def compute(self, max_n, precision, stddev):
        rows = table1_stddev(max_n, precision) if stddev else render_table1(max_n, precision)
        return {
            "max_n": max_n,
            "precision": precision,
            "quantity": "stddev" if stddev else "share",
            # Strings keep the rounded digits exactly as printed.
            "rows": [[str(value) for value in row] for row in rows],
        }


@method_decorator(csrf_exempt, name="dispatch")
class CompareView(CreditAPIView):
    query_serializer_class = CompareQuerySerializer
    failure_message = "Failed to compare counting schemes"

    def compute(self, n):
        return comparison_rows(n)


@method_decorator(csrf_exempt, name="dispatch")
class SampleView(CreditAPIView):
    query_serializer_class = OracleQuerySerializer
    failure_message = "Sampling failed"

    def compute(self, code, samples, seed):
        groups = group_structure(code)
        config = SampleConfig(groups=groups, num_samples=samples, seed=seed)
        estimate = estimate_moments(
            config, chunk_size=settings.AINDEX_CHUNK_SIZE, workers=settings.AINDEX_WORKERS
        )
        comparison = compare_with_closed_form(groups, estimate)
        return {
            "groups": list(groups.counts),
            "samples": estimate.num_samples,
            "seed": seed,
            "mean": list(estimate.mean),
            "stddev": list(estimate.stddev),
            "standard_error": list(estimate.standard_error_of_mean),
            "closed_mean": list(comparison.closed_mean),
            "closed_stddev": list(comparison.closed_stddev),
            "delta_se": [finite_or_none(value) for value in comparison.delta_se],
            "max_abs_delta_se": finite_or_none(comparison.max_abs_delta_se),
        }


@method_decorator(csrf_exempt, name="dispatch")
class VolumeView(CreditAPIView):
    query_serializer_class = OracleQuerySerializer
    failure_message = "Volume estimation failed"

    def compute(self, code, samples, seed):
        groups = group_structure(code)
        result = estimate_volume(
            groups,
            num_samples=samples,
            seed=seed,
            chunk_size=settings.AINDEX_CHUNK_SIZE,
            workers=settings.AINDEX_WORKERS,
        )
        return {
            "groups": list(groups.counts),
            "samples": result.num_samples,
            "seed": seed,
            "accepted": result.accepted,
            "estimate": result.estimate,
            "standard_error": result.standard_error,
            "closed_form": result.closed_form,
            "delta_se": finite_or_none(result.delta_se),
        }
