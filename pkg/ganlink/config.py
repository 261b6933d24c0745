''' the experiment config file: [section] headers and key = value lines '''
import os

from ganlink.e2e import ExperimentConfig
from ganlink.forms import SECTION_FORMS


class ConfigError(ValueError):
    ''' a config file that can't be turned into an experiment '''
    def __init__(self, message, line=None, path=None):
        location = ''
        if path:
            location = '%s:%s: ' % (path, line) if line else '%s: ' % path
        elif line:
            location = 'line %d: ' % line
        super().__init__(location + message)
        self.line = line
        self.path = path


def read_sections(text, path=None):
    ''' {section: {key: (value, line)}}; fully qualified keys may go anywhere '''
    sections = {name: {} for name in SECTION_FORMS}
    section = None
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].split(';', 1)[0].strip()
        if not line:
            continue
        if line.startswith('['):
            if not line.endswith(']'):
                raise ConfigError('Malformed section header "%s"' % line,
                                  number, path)
            section = line[1:-1].strip()
            if section not in SECTION_FORMS:
                raise ConfigError('Unknown section [%s]' % section, number, path)
            continue
        if '=' not in line:
            raise ConfigError('Expected "key = value", got "%s"' % line,
                              number, path)

        key, value = (part.strip() for part in line.split('=', 1))
        target = section
        if '.' in key:
            target, key = key.split('.', 1)
            if target not in SECTION_FORMS:
                raise ConfigError('Unknown section "%s" in key "%s.%s"' % (
                    target, target, key), number, path)
        elif target is None:
            raise ConfigError('Key "%s" is outside any section' % key,
                              number, path)
        if key not in SECTION_FORMS[target].base_fields:
            raise ConfigError('Unknown key "%s.%s"' % (target, key),
                              number, path)
        if key in sections[target]:
            raise ConfigError('Duplicate key "%s.%s"' % (target, key),
                              number, path)
        sections[target][key] = (value, number)
    return sections


def build_config(sections, path=None):
    ''' validate every section with its form and assemble the config '''
    channel = sections['channel']
    if 'samples_per_symbol' in channel and \
            'samples_per_symbol' not in sections['gan']:
        sections['gan']['samples_per_symbol'] = channel['samples_per_symbol']

    built = {}
    for name, form_class in SECTION_FORMS.items():
        values = {key: value for key, (value, _) in sections[name].items()}
        form = form_class(values)
        if not form.is_valid():
            field, errors = next(iter(form.errors.items()))
            line = sections[name].get(field, (None, None))[1]
            raise ConfigError('%s.%s: %s' % (name, field, errors[0]),
                              line, path)
        built[name] = form.build()

    config = ExperimentConfig(
        channel=built['channel'],
        gan=built['gan'],
        transceiver=built['transceiver'],
        pretrain=built['pretrain'],
        **built['experiment']
    )
    try:
        return config.validate()
    except ValueError as err:
        raise ConfigError(str(err), path=path) from err


def parse_config(path):
    ''' read, check and assemble an experiment config file '''
    if not os.path.isfile(path):
        raise ConfigError('Config file not found', path=path)
    with open(path) as config_file:
        text = config_file.read()
    return build_config(read_sections(text, path), path)


def parse_config_text(text):
    ''' parse_config for a string '''
    return build_config(read_sections(text))


def render_schema():
    ''' every key with its description and default, as a valid config file '''
    lines = ['# generated from the config forms; every value is the default']
    for name, form_class in SECTION_FORMS.items():
        lines += ['', '[%s]' % name]
        for key, field in form_class.base_fields.items():
            lines.append('# %s' % field.help_text)
            initial = field.initial
            if isinstance(initial, bool):
                initial = str(initial).lower()
            lines.append('%s = %s' % (key, initial))
    return '\n'.join(lines) + '\n'
