''' bring channels into the namespace '''
import importlib

from .settings import CHANNELS
from .abstract_channel import AbstractChannel, ChannelConfig, ChannelException


def load_channel(name, config=None):
    ''' instantiate a channel implementation by name '''
    if name not in CHANNELS:
        raise ChannelException('Unknown channel "%s" (expected one of %s)' % (
            name, ', '.join(CHANNELS)))
    channel = importlib.import_module('ganlink.channel.%s' % name)
    return channel.Channel(config or ChannelConfig())
