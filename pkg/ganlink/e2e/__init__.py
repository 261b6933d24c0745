''' bring the optimization loop into the namespace '''
from .pretrain import PretrainConfig, PretrainResult, TrainingError
from .pretrain import pretrain_transceiver, model_step, model_ser
from .measurement import Transmission, Evaluation
from .measurement import transmit_and_measure, evaluate_transmission
from .calibration import calibrate_noise
from .experiment import ExperimentConfig, ExperimentState, ExperimentReport
from .experiment import reserved_rows
from .experiment import ExperimentRecorder, IterationError
from .experiment import surrogate_gradients, transceiver_update_through_generator
from .experiment import receiver_only_update, measured_rows, initialize_state
from .experiment import run_iteration, run_baseline, run_experiment
