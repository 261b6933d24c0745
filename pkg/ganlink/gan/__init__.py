''' bring the conditional GAN into the namespace '''
from .dataset import ConditioningDataset, TransceiverRows
from .dataset import build_conditioning_dataset, build_experiment_dataset
from .dataset import transceiver_rows
from .networks import GanPair, LABEL_REAL, LABEL_FAKE
from .networks import build_gan_pair, build_generator, build_discriminator
from .networks import draw_noise, generator_forward, generator_backward
from .networks import discriminator_inputs
from .training import GanConfig, GanTrainer, adversarial_losses
from .training import discriminator_loss, generator_loss, g_lr_schedule
from .training import gan_train_step, train_gan, discriminator_accuracy
from .validation import FidelityReport, energy_distance, validate_generator
