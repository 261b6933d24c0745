''' background tasks '''
import os
from celery import Celery

from ganlink import settings

# set the default Django settings module for the 'celery' program.
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ganlink.settings')
app = Celery(
    'tasks',
    broker=settings.CELERY_BROKER,
    backend=settings.CELERY_RESULT_BACKEND,
)
app.conf.update(
    accept_content=settings.CELERY_ACCEPT_CONTENT,
    task_serializer=settings.CELERY_TASK_SERIALIZER,
    result_serializer=settings.CELERY_RESULT_SERIALIZER,
)
app.autodiscover_tasks(['ganlink'], related_name='runner')
