''' cross entropy between label and predicted probability vectors '''
import numpy as np

from .layers import ShapeError

# keeps -log(p) finite; a perfect miss costs -log(1e-12) ~ 27.6
LOG_CLAMP = 1e-12


def _check(label, prediction):
    label = np.asarray(label, dtype=np.float64)
    prediction = np.asarray(prediction, dtype=np.float64)
    if label.shape != prediction.shape:
        raise ShapeError('Label shape %s does not match prediction %s' % (
            label.shape, prediction.shape))
    return label, prediction


def cross_entropy(label, prediction):
    ''' -sum(label * log(prediction)) over the last axis '''
    label, prediction = _check(label, prediction)
    return -(label * np.log(np.maximum(prediction, LOG_CLAMP))).sum(axis=-1)


def cross_entropy_gradient(label, prediction):
    ''' derivative w.r.t. prediction; zero where the clamp is active '''
    label, prediction = _check(label, prediction)
    safe = np.maximum(prediction, LOG_CLAMP)
    return np.where(prediction > LOG_CLAMP, -label / safe, 0.0)


def mean_cross_entropy(labels, predictions):
    ''' batch average and its gradient w.r.t. each prediction row '''
    losses = cross_entropy(labels, predictions)
    grads = cross_entropy_gradient(labels, predictions) / len(losses)
    return losses.mean(), grads


def onehot(indices, width):
    ''' rows of zeros with a one at each (0-based) index '''
    indices = np.asarray(indices, dtype=np.int64)
    encoded = np.zeros(indices.shape + (width,))
    np.put_along_axis(encoded, indices[..., np.newaxis], 1.0, axis=-1)
    return encoded
