"""
Django settings for the aindex credit service.

Every tunable is read from the environment (a local ``.env`` is loaded first),
so the same code serves the CLI, the HTTP API and the test-suite.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def _env_flag(name: str, default: str = 'False') -> bool:
    return os.getenv(name, default).lower() in ['true', '1', 'yes']


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "aindex-insecure-development-key")

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = _env_flag("DJANGO_DEBUG")

ALLOWED_HOSTS = ['*']

CORS_ALLOW_ALL_ORIGINS = True


# Application definition

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.staticfiles',

    'corsheaders',
    'rest_framework',

    'credit',
    'publications',
]

MIDDLEWARE = [
    'corsheaders.middleware.CorsMiddleware',
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'aindex.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'aindex.wsgi.application'


# Nothing is persisted; the database only satisfies contrib.auth.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


STATIC_URL = 'static/'

STATIC_ROOT = os.path.join(BASE_DIR, 'staticfiles_build', 'static')

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# REST Framework settings

REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "DEFAULT_PARSER_CLASSES": [
        "rest_framework.parsers.JSONParser",
    ],
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "UNAUTHENTICATED_USER": None,
}


# Credit computations

AINDEX_DEFAULT_SEED = int(os.getenv("AINDEX_DEFAULT_SEED", "42"))
AINDEX_DEFAULT_PRECISION = int(os.getenv("AINDEX_DEFAULT_PRECISION", "4"))
AINDEX_DEFAULT_SAMPLES = int(os.getenv("AINDEX_DEFAULT_SAMPLES", "100000"))
AINDEX_CHUNK_SIZE = int(os.getenv("AINDEX_CHUNK_SIZE", "50000"))
AINDEX_WORKERS = int(os.getenv("AINDEX_WORKERS", "1"))
AINDEX_MAX_AUTHORS = int(os.getenv("AINDEX_MAX_AUTHORS", "5000"))


# Logging goes to stderr; stdout carries command output.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'standard': {
            'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'standard',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.getenv("AINDEX_LOG_LEVEL", "WARNING"),
    },
}
