''' the autoencoder endpoints: message -> samples -> message posterior '''
from dataclasses import dataclass

import numpy as np

from ganlink.nn import Activation, DenseNet, ShapeError, chain, onehot


class InputError(ValueError):
    ''' a message outside the alphabet '''


@dataclass
class TransceiverConfig:
    ''' alphabet size and network widths '''
    messages: int = 8
    hidden_width: int = 96
    # number of received blocks the receiver looks at, centred on the symbol
    rx_context: int = 1

    @property
    def bits(self):
        ''' bits carried per message '''
        return int(np.log2(self.messages))

    def validate(self):
        ''' messages a power of two, context odd '''
        if self.messages < 2 or self.messages & (self.messages - 1):
            raise ValueError('messages must be a power of two, got %d' % \
                    self.messages)
        if self.hidden_width < 1:
            raise ValueError('hidden_width must be positive')
        if self.rx_context < 1 or self.rx_context % 2 == 0:
            raise ValueError('rx_context must be odd')
        return self


def build_transmitter(config, samples_per_symbol, rng):
    ''' one-hot(S) -> ReLU -> ReLU -> bounded(n) '''
    hidden = config.hidden_width
    return DenseNet.build(chain(
        config.messages,
        [hidden, hidden, samples_per_symbol],
        [Activation.RELU, Activation.RELU, Activation.BOUNDED],
    ), rng)


def build_receiver(config, samples_per_symbol, rng):
    ''' n (times context) -> ReLU -> ReLU -> softmax(S) '''
    hidden = config.hidden_width
    return DenseNet.build(chain(
        samples_per_symbol * config.rx_context,
        [hidden, hidden, config.messages],
        [Activation.RELU, Activation.RELU, Activation.SOFTMAX],
    ), rng)


def message_indices(messages, alphabet_size):
    ''' 0-based indices for messages in {1..S} '''
    messages = np.asarray(messages)
    if messages.size and (not np.issubdtype(messages.dtype, np.integer) or \
            messages.min() < 1 or messages.max() > alphabet_size):
        raise InputError('Messages must be integers in 1..%d' % alphabet_size)
    return messages.astype(np.int64) - 1


def tx_blocks(net, messages):
    ''' one n-sample block per message (any message array shape), with cache '''
    alphabet_size = net.input_width
    indices = message_indices(messages, alphabet_size)
    encoded = onehot(indices.reshape(-1), alphabet_size)
    blocks, cache = net.forward(encoded)
    return blocks.reshape(indices.shape + (net.output_width,)), cache


def tx_encode(net, messages):
    ''' the transmitted sample stream for a message sequence '''
    blocks, _ = tx_blocks(net, np.asarray(messages).reshape(-1))
    return blocks.reshape(-1)


def context_blocks(blocks, context):
    ''' concatenate each block with its neighbours, circular per sequence '''
    if context == 1:
        return blocks
    half = context // 2
    shifted = [np.roll(blocks, half - offset, axis=-2) \
            for offset in range(context)]
    return np.concatenate(shifted, axis=-1)


def context_blocks_backward(grad, context):
    ''' adjoint of context_blocks: fold neighbour gradients back per block '''
    if context == 1:
        return grad
    half = context // 2
    parts = np.split(grad, context, axis=-1)
    return sum(np.roll(part, offset - half, axis=-2) \
            for offset, part in enumerate(parts))


def rx_decode(net, received):
    ''' posterior probabilities for one block or a batch of blocks '''
    received = np.asarray(received, dtype=np.float64)
    if received.shape[-1] != net.input_width:
        raise ShapeError('Received block of length %d, receiver expects %d' % (
            received.shape[-1], net.input_width))
    return net(received)


def decide(probabilities):
    ''' 1-based argmax; ties go to the lowest message '''
    return np.argmax(probabilities, axis=-1) + 1
