"""
Django settings for the qudit teleportation lab.

The project has no HTTP surface and no database models; Django provides the
app registry, the management-command runner and the test runner.
"""

import os

import environ

env = environ.Env(DEBUG=(bool, False))

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

environ.Env.read_env(os.path.join(BASE_DIR, ".env"))


# SECURITY WARNING: nothing is served, the key only satisfies Django's checks
SECRET_KEY = env("SECRET_KEY", default="teleport-lab-insecure-key")

DEBUG = env("DEBUG")

ALLOWED_HOSTS: list = []

# Application definition

INSTALLED_APPS: list = []

EXTERNAL_APPS = [
    "corelin",
    "channel",
    "protocol",
    "metrics",
    "extensions",
    "cli",
]

INSTALLED_APPS += EXTERNAL_APPS

MIDDLEWARE: list = []

# No models; the test runner still expects a default alias
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": ":memory:",
    }
}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Logging

TELEPORT_LOG_LEVEL = env("TELEPORT_LOG_LEVEL", default="WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": TELEPORT_LOG_LEVEL,
    },
}

# Simulation Settings
TELEPORT_DEFAULT_SEED = env.int("TELEPORT_DEFAULT_SEED", default=42)
TELEPORT_MC_SAMPLES = env.int("TELEPORT_MC_SAMPLES", default=100000)
TELEPORT_MC_SHARD_SIZE = env.int("TELEPORT_MC_SHARD_SIZE", default=10000)
TELEPORT_VANISHED_PROBABILITY = env.float(
    "TELEPORT_VANISHED_PROBABILITY", default=1e-14
)  # outcomes at or below this are reported as vanished
