''' named float32 tensors on disk, with a magic header and a CRC32 trailer

Layout, little endian:
    b"GANAE001"
    u32 tensor count
    per tensor: u16 name length, utf-8 name, u8 rank, u32 dims, f32 data
    u32 CRC32 of everything above
'''
from collections import OrderedDict
import logging
import os
import struct
import zlib

import numpy as np

from ganlink.nn import Activation, DenseNet, Layer

logger = logging.getLogger(__name__)

MAGIC_PREFIX = b'GANAE'
MAGIC = MAGIC_PREFIX + b'001'
# magic, tensor count and CRC
MIN_SIZE = len(MAGIC) + 8


class CheckpointError(IOError):
    ''' a file that is not a complete, intact checkpoint '''
    def __init__(self, message, kind):
        super().__init__(message)
        self.kind = kind


def encode_tensors(tensors):
    ''' the checkpoint bytes for an ordered mapping of name -> array '''
    parts = [MAGIC, struct.pack('<I', len(tensors))]
    for name, tensor in tensors.items():
        data = np.ascontiguousarray(tensor, dtype='<f4')
        encoded_name = name.encode('utf8')
        parts.append(struct.pack('<H', len(encoded_name)))
        parts.append(encoded_name)
        parts.append(struct.pack('<B', data.ndim))
        parts.append(struct.pack('<%dI' % data.ndim, *data.shape))
        parts.append(data.tobytes())
    body = b''.join(parts)
    return body + struct.pack('<I', zlib.crc32(body))


class _Reader:
    def __init__(self, data):
        self.data = data
        self.offset = 0

    def take(self, size):
        if self.offset + size > len(self.data):
            raise CheckpointError('Checkpoint is truncated', 'truncated')
        chunk = self.data[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def unpack(self, fmt):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def decode_tensors(data):
    ''' reverse of encode_tensors; raises CheckpointError naming the failure

    Magic and version come first, then the CRC over everything before the
    trailer; the tensor table is only read from bytes that passed it.
    '''
    if len(data) < len(MAGIC):
        raise CheckpointError('Checkpoint is truncated', 'truncated')
    if data[:len(MAGIC_PREFIX)] != MAGIC_PREFIX:
        raise CheckpointError('Not a checkpoint (bad magic bytes)', 'magic')
    if data[:len(MAGIC)] != MAGIC:
        raise CheckpointError('Unsupported checkpoint version %r' % \
                data[len(MAGIC_PREFIX):len(MAGIC)].decode('ascii', 'replace'),
                'version')
    if len(data) < MIN_SIZE:
        raise CheckpointError('Checkpoint is truncated', 'truncated')

    stored, = struct.unpack('<I', data[-4:])
    if zlib.crc32(data[:-4]) != stored:
        raise CheckpointError(
            'CRC mismatch: checkpoint is corrupt or truncated', 'crc')

    reader = _Reader(data[:-4])
    reader.take(len(MAGIC))
    tensors = OrderedDict()
    count, = reader.unpack('<I')
    for _ in range(count):
        length, = reader.unpack('<H')
        name = reader.take(length).decode('utf8', 'replace')
        rank, = reader.unpack('<B')
        shape = reader.unpack('<%dI' % rank)
        # python ints, so a huge shape can't wrap around
        size = 4
        for dim in shape:
            size *= dim
        tensors[name] = np.frombuffer(
            reader.take(size), dtype='<f4').reshape(shape).copy()
    if reader.offset != len(reader.data):
        raise CheckpointError('Trailing bytes after the tensor table', 'truncated')
    return tensors


def save_checkpoint(path, tensors):
    ''' write to a temporary file, then rename over path '''
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    temporary = '%s.tmp' % path
    with open(temporary, 'wb') as checkpoint_file:
        checkpoint_file.write(encode_tensors(tensors))
        checkpoint_file.flush()
        os.fsync(checkpoint_file.fileno())
    os.replace(temporary, path)
    logger.debug('wrote %d tensors to %s', len(tensors), path)


def load_checkpoint(path):
    ''' name -> float32 array, in the order they were saved '''
    try:
        with open(path, 'rb') as checkpoint_file:
            data = checkpoint_file.read()
    except OSError as err:
        raise CheckpointError('Can\'t read %s: %s' % (path, err), 'io') from err
    return decode_tensors(data)


def network_tensors(name, net):
    ''' <name>.<i>.weight, <name>.<i>.bias and <name>.activations '''
    tensors = OrderedDict()
    for index, layer in enumerate(net.layers):
        tensors['%s.%d.weight' % (name, index)] = layer.weights
        tensors['%s.%d.bias' % (name, index)] = layer.biases
    tensors['%s.activations' % name] = np.array(
        [layer.activation.code for layer in net.layers], dtype=np.float64)
    return tensors


def network_from_tensors(tensors, name):
    ''' rebuild a DenseNet stored by network_tensors '''
    key = '%s.activations' % name
    if key not in tensors:
        raise CheckpointError('No network "%s" in checkpoint' % name, 'missing')
    layers = []
    for index, code in enumerate(tensors[key]):
        layers.append(Layer(
            weights=tensors['%s.%d.weight' % (name, index)].astype(np.float64),
            biases=tensors['%s.%d.bias' % (name, index)].astype(np.float64),
            activation=Activation.from_code(int(code)),
        ))
    return DenseNet(layers)


def save_networks(path, networks, extra=None):
    ''' several named networks plus optional extra tensors in one file '''
    tensors = OrderedDict()
    for name, net in networks.items():
        if net is not None:
            tensors.update(network_tensors(name, net))
    tensors.update(extra or {})
    save_checkpoint(path, tensors)


def load_networks(path, names):
    ''' the named networks of a checkpoint, None for any that are absent '''
    tensors = load_checkpoint(path)
    return {
        name: network_from_tensors(tensors, name) \
                if '%s.activations' % name in tensors else None
        for name in names
    }
