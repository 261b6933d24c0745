''' the Adam optimizer with bias correction '''
from dataclasses import dataclass
from typing import List

import numpy as np

from .layers import ShapeError


class NumericError(ArithmeticError):
    ''' a loss or gradient that isn't finite '''
    def __init__(self, message, step=None):
        super().__init__(message if step is None else \
                '%s (step %d)' % (message, step))
        self.step = step


@dataclass
class AdamState:
    ''' moment estimates for one set of parameters '''
    first_moment: List[np.ndarray]
    second_moment: List[np.ndarray]
    step_count: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    @classmethod
    def fresh(cls, params, **hyper):
        ''' zero moments shaped like params '''
        return cls(
            first_moment=[np.zeros_like(p) for p in params],
            second_moment=[np.zeros_like(p) for p in params],
            **hyper
        )


def adam_step(state, params, grads, learning_rate):
    ''' one Adam update; returns the new params and advances state '''
    if learning_rate <= 0:
        raise ValueError('Learning rate must be positive: %r' % learning_rate)
    if len(params) != len(grads) or len(params) != len(state.first_moment):
        raise ShapeError('Parameter, gradient and state counts differ')
    for param, grad, moment in zip(params, grads, state.first_moment):
        if param.shape != grad.shape or param.shape != moment.shape:
            raise ShapeError('Gradient shape %s for parameter %s' % (
                grad.shape, param.shape))
    # nothing changes unless every gradient is usable
    if not all(np.all(np.isfinite(grad)) for grad in grads):
        raise NumericError('Nonfinite gradient', step=state.step_count + 1)

    state.step_count += 1
    correction1 = 1.0 - state.beta1 ** state.step_count
    correction2 = 1.0 - state.beta2 ** state.step_count
    updated = []
    for index, (param, grad) in enumerate(zip(params, grads)):
        first = state.beta1 * state.first_moment[index] + \
                (1.0 - state.beta1) * grad
        second = state.beta2 * state.second_moment[index] + \
                (1.0 - state.beta2) * grad * grad
        state.first_moment[index] = first
        state.second_moment[index] = second
        step = (first / correction1) / \
                (np.sqrt(second / correction2) + state.epsilon)
        updated.append(param - learning_rate * step)
    return updated, state


class Adam:
    ''' keeps the state for one network and applies updates to it '''
    def __init__(self, net, beta1=0.9, beta2=0.999, epsilon=1e-8):
        self.net = net
        self.state = AdamState.fresh(
            net.parameters(), beta1=beta1, beta2=beta2, epsilon=epsilon)

    @property
    def step_count(self):
        ''' number of updates applied so far '''
        return self.state.step_count

    def step(self, grads, learning_rate):
        ''' update the network in place '''
        params, _ = adam_step(
            self.state, self.net.parameters(), grads, learning_rate)
        self.net.set_parameters(params)
        return self.net
