from django.urls import path

from .views import CompareView, CreditView, SampleView, TableView, VolumeView, health_check

urlpatterns = [
    path("health/", health_check, name="health_check"),
    path("credit/", CreditView.as_view(), name="credit"),
    path("table/", TableView.as_view(), name="table"),
    path("compare/", CompareView.as_view(), name="compare"),
    path("sample/", SampleView.as_view(), name="sample"),
    path("volume/", VolumeView.as_view(), name="volume"),
]
