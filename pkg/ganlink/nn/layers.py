''' layer descriptions and their activation functions '''
from dataclasses import dataclass
from enum import Enum

import numpy as np


class ShapeError(ValueError):
    ''' array dimensions that don't fit together '''


class Activation(Enum):
    ''' the activations the dense engine knows about '''
    RELU = 'relu'
    LINEAR = 'linear'
    SOFTMAX = 'softmax'
    BOUNDED = 'bounded'

    @property
    def code(self):
        ''' stable integer for checkpoint storage '''
        return list(Activation).index(self)

    @classmethod
    def from_code(cls, code):
        ''' reverse of code '''
        return list(Activation)[int(code)]


@dataclass(frozen=True)
class LayerSpec:
    ''' one affine transform followed by an activation '''
    input_width: int
    output_width: int
    activation: Activation = Activation.RELU

    def __post_init__(self):
        if self.input_width < 1 or self.output_width < 1:
            raise ShapeError('Layer widths must be positive: %d -> %d' % (
                self.input_width, self.output_width))


def validate_specs(specs):
    ''' widths chain and softmax only comes last '''
    if not specs:
        raise ShapeError('A network needs at least one layer')
    for previous, spec in zip(specs, specs[1:]):
        if previous.output_width != spec.input_width:
            raise ShapeError('Layer widths do not chain: %d then %d' % (
                previous.output_width, spec.input_width))
    for spec in specs[:-1]:
        if spec.activation == Activation.SOFTMAX:
            raise ShapeError('Softmax may only be the final layer')


def chain(input_width, widths, activations):
    ''' LayerSpecs for consecutive output widths '''
    specs = []
    for width, activation in zip(widths, activations):
        specs.append(LayerSpec(input_width, width, activation))
        input_width = width
    return specs


def activate(pre_activation, activation):
    ''' apply the activation to the last axis '''
    if activation == Activation.RELU:
        return np.maximum(pre_activation, 0.0)
    if activation == Activation.LINEAR:
        return pre_activation
    if activation == Activation.BOUNDED:
        # logistic sigmoid, written to stay finite for large |z|
        return np.exp(-np.logaddexp(0.0, -pre_activation))
    shifted = pre_activation - pre_activation.max(axis=-1, keepdims=True)
    exponent = np.exp(shifted)
    return exponent / exponent.sum(axis=-1, keepdims=True)


def activation_backward(grad_output, pre_activation, output, activation):
    ''' gradient w.r.t. the pre-activation, given the gradient at the output '''
    if activation == Activation.RELU:
        # subgradient 0 at exactly 0
        return grad_output * (pre_activation > 0.0)
    if activation == Activation.LINEAR:
        return grad_output
    if activation == Activation.BOUNDED:
        return grad_output * output * (1.0 - output)
    inner = (grad_output * output).sum(axis=-1, keepdims=True)
    return output * (grad_output - inner)
