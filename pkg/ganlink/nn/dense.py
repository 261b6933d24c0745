''' the dense feed-forward engine: evaluation and reverse-mode gradients '''
import copy
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .layers import Activation, LayerSpec, ShapeError
from .layers import activate, activation_backward, validate_specs


class UsageError(RuntimeError):
    ''' an operation called out of order or with missing state '''


@dataclass
class Layer:
    ''' weights are output_width x input_width '''
    weights: np.ndarray
    biases: np.ndarray
    activation: Activation

    @property
    def spec(self):
        ''' the shape of this layer '''
        output_width, input_width = self.weights.shape
        return LayerSpec(input_width, output_width, self.activation)


@dataclass
class ForwardCache:
    ''' everything backward needs from one forward call '''
    net_id: int
    version: int
    single: bool
    inputs: List[np.ndarray] = field(default_factory=list)
    pre_activations: List[np.ndarray] = field(default_factory=list)
    outputs: List[np.ndarray] = field(default_factory=list)


class DenseNet:
    ''' an ordered stack of affine layers with activations '''
    def __init__(self, layers):
        validate_specs([layer.spec for layer in layers])
        self.layers = list(layers)
        # bumped on every parameter change so old caches are detectable
        self.version = 0

    @classmethod
    def build(cls, specs, rng):
        ''' glorot-uniform weights, zero biases '''
        validate_specs(specs)
        layers = []
        for spec in specs:
            limit = np.sqrt(6.0 / (spec.input_width + spec.output_width))
            weights = rng.uniform(
                (spec.output_width, spec.input_width), -limit, limit)
            layers.append(Layer(
                weights=weights,
                biases=np.zeros(spec.output_width),
                activation=spec.activation,
            ))
        return cls(layers)

    @property
    def specs(self):
        ''' layer shapes, first to last '''
        return [layer.spec for layer in self.layers]

    @property
    def input_width(self):
        ''' width of the first layer '''
        return self.layers[0].weights.shape[1]

    @property
    def output_width(self):
        ''' width of the last layer '''
        return self.layers[-1].weights.shape[0]

    def parameters(self):
        ''' weights and biases, layer by layer '''
        params = []
        for layer in self.layers:
            params += [layer.weights, layer.biases]
        return params

    def set_parameters(self, params):
        ''' replace all parameters, in the order of parameters() '''
        if len(params) != 2 * len(self.layers):
            raise ShapeError('Expected %d parameter arrays, got %d' % (
                2 * len(self.layers), len(params)))
        for index, layer in enumerate(self.layers):
            weights, biases = params[2 * index], params[2 * index + 1]
            if weights.shape != layer.weights.shape or \
                    biases.shape != layer.biases.shape:
                raise ShapeError('Parameter shapes differ in layer %d' % index)
            layer.weights = np.array(weights, dtype=np.float64)
            layer.biases = np.array(biases, dtype=np.float64)
        self.version += 1

    def copy(self):
        ''' an independent deep copy '''
        return copy.deepcopy(self)

    def forward(self, inputs):
        ''' evaluate a vector or a batch of row vectors '''
        inputs = np.asarray(inputs, dtype=np.float64)
        single = inputs.ndim == 1
        activations = inputs[np.newaxis, :] if single else inputs
        if activations.ndim != 2 or activations.shape[1] != self.input_width:
            raise ShapeError('Input of shape %s does not fit width %d' % (
                inputs.shape, self.input_width))

        cache = ForwardCache(id(self), self.version, single)
        for layer in self.layers:
            cache.inputs.append(activations)
            pre_activation = activations @ layer.weights.T + layer.biases
            activations = activate(pre_activation, layer.activation)
            cache.pre_activations.append(pre_activation)
            cache.outputs.append(activations)

        return (activations[0] if single else activations), cache

    def __call__(self, inputs):
        return self.forward(inputs)[0]

    def backward(self, cache, grad_output):
        ''' parameter gradients (summed over the batch) and input gradients '''
        if cache is None or not cache.inputs:
            raise UsageError('backward needs the cache of a forward call')
        if cache.net_id != id(self) or cache.version != self.version:
            raise UsageError('Stale forward cache: the network has changed')

        grad = np.asarray(grad_output, dtype=np.float64)
        if cache.single:
            grad = grad[np.newaxis, :]
        if grad.shape != cache.outputs[-1].shape:
            raise ShapeError('Output gradient of shape %s, expected %s' % (
                grad.shape, cache.outputs[-1].shape))

        grads = [None] * (2 * len(self.layers))
        for index in reversed(range(len(self.layers))):
            layer = self.layers[index]
            grad = activation_backward(
                grad,
                cache.pre_activations[index],
                cache.outputs[index],
                layer.activation)
            grads[2 * index] = grad.T @ cache.inputs[index]
            grads[2 * index + 1] = grad.sum(axis=0)
            grad = grad @ layer.weights

        return grads, (grad[0] if cache.single else grad)


def forward(net, inputs):
    ''' evaluate net on inputs, keeping the cache for backward '''
    return net.forward(inputs)


def backward(net, cache, grad_output):
    ''' reverse-mode gradients for the scalar loss behind grad_output '''
    return net.backward(cache, grad_output)
