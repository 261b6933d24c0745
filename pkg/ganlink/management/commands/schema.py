''' print every config key with its default '''
from django.core.management.base import BaseCommand

from ganlink.config import render_schema


class Command(BaseCommand):
    ''' the generated config schema, itself a valid config file '''
    help = 'Print the config schema with descriptions and defaults'
    requires_system_checks = []

    def handle(self, *args, **options):
        self.stdout.write(render_schema(), ending='')
