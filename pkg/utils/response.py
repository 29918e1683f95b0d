import logging
from typing import Any, Dict, List, Union

from rest_framework import status as drf_status
from rest_framework.response import Response

from services.exceptions import CreditError, PublicationFormatError

logger = logging.getLogger(__name__)


class ResponseMixin:

    """
    Standard response envelope for the API views:
    ``{"status": "success"|"error", "message"?, "data"?, "error"?}``.
    """

    def response(
        self,
        data: Any = None,
        message: str = "",
        error: Union[Dict, List, str, None] = None,
        status_code: int = drf_status.HTTP_200_OK,
    ) -> Response:
        response_data = {
            "status": "success" if error is None else "error",
        }

        if message:
            response_data["message"] = message

        if data is not None:
            response_data["data"] = data

        if error is not None:
            response_data['error'] = error

        return Response(data=response_data, status=status_code)

    def error_response(self, exc: Exception, message: str) -> Response:
        """
        Map an exception onto the envelope: input problems become 400 with
        the diagnostic, anything else is logged and becomes 500.
        """
        if isinstance(exc, PublicationFormatError):
            return self.response(
                message=message,
                error={"detail": str(exc), "rows": [
                    {"row": row, "message": text} for row, text in exc.diagnostics
                ]},
                status_code=drf_status.HTTP_400_BAD_REQUEST,
            )

        if isinstance(exc, CreditError):
            return self.response(
                message=message,
                error={"detail": str(exc)},
                status_code=drf_status.HTTP_400_BAD_REQUEST,
            )

        logger.exception(f"{message}: {str(exc)}")
        return self.response(
            message=message,
            error={"detail": "Internal error"},
            status_code=drf_status.HTTP_500_INTERNAL_SERVER_ERROR,
        )
