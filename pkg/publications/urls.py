from django.urls import path

from .views import PublicationReportView

urlpatterns = [
    path('report/', PublicationReportView.as_view(), name='publication-report'),
]
