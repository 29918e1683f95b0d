import json
import logging

from django.utils.decorators import method_decorator
from django.views.decorators.csrf import csrf_exempt
from rest_framework import status
from rest_framework.views import APIView

from services.aggregator import author_credit_report, conservation_check, load_publications, report_rows
from utils.response import ResponseMixin

logger = logging.getLogger(__name__)


@method_decorator(csrf_exempt, name="dispatch")
class PublicationReportView(APIView, ResponseMixin):
    """
    POST /api/v1/publications/report/

    Body: JSON array of ``{pub_id, authors, ranking_code, weight?}`` records.
    Returns the per-author report and the per-scheme conservation totals.
    """
    permission_classes = []
    authentication_classes = []

    def post(self, request):
        if not isinstance(request.data, list):
            return self.response(
                message="Request body must be a JSON array of publication records",
                error={"detail": "Expected a list"},
                status_code=status.HTTP_400_BAD_REQUEST,
            )

        try:
            records = load_publications(json.dumps(request.data), "json")
            report = author_credit_report(records)
        except Exception as e:
            return self.error_response(e, "Failed to aggregate publications")

        return self.response(
            data={
                "publications": len(records),
                "authors": report_rows(report),
                "conservation": conservation_check(records, report),
            },
        )
