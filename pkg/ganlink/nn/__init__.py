''' bring the dense engine into the namespace '''
from .layers import Activation, LayerSpec, ShapeError, chain
from .dense import DenseNet, Layer, UsageError, forward, backward
from .losses import cross_entropy, cross_entropy_gradient
from .losses import mean_cross_entropy, onehot
from .adam import Adam, AdamState, NumericError, adam_step
