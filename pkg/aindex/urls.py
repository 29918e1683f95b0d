"""
URL configuration for the aindex project.

All endpoints live under /api/v1/; see credit/urls.py and publications/urls.py.
"""

from django.urls import include, path

urlpatterns = [
    path("api/v1/", include("credit.urls")),
    path("api/v1/publications/", include("publications.urls")),
]
