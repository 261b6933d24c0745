''' ganlink settings and configuration '''
from environs import Env

env = Env()

# experiment defaults, overridden per command with --config/--seed/--out
GANLINK_CONFIG = env('GANLINK_CONFIG', 'default.cfg')
GANLINK_OUTPUT_DIR = env('GANLINK_OUTPUT_DIR', 'results')
# overrides the seed of the config file when set; --seed overrides both
GANLINK_SEED = env.int('GANLINK_SEED', None)
# wallclock is the only field of metrics.jsonl that differs between reruns
GANLINK_RECORD_WALLCLOCK = env.bool('GANLINK_RECORD_WALLCLOCK', True)

# celery
CELERY_BROKER = env('CELERY_BROKER', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = env('CELERY_RESULT_BACKEND', 'redis://localhost:6379/0')
CELERY_ACCEPT_CONTENT = ['application/json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = env('SECRET_KEY', 'ganlink-local-only')

DEBUG = env.bool('DEBUG', True)

INSTALLED_APPS = [
    'ganlink',
]

# everything is persisted to files under the output directory
DATABASES = {}

LOG_LEVEL = env('LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'ganlink': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
        },
    },
}

TIME_ZONE = 'UTC'

USE_TZ = True
