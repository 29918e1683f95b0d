"""
WSGI entry point for the aindex credit service (gunicorn, Vercel).
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'aindex.settings')

application = get_wsgi_application()

app = application
