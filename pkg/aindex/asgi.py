"""
ASGI entry point for the aindex credit service.
"""

import os

from django.core.asgi import get_asgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'aindex.settings')

application = get_asgi_application()
