''' k = 0 initialization on the link model, on its own '''
import os

from ganlink import checkpoint
from ganlink.e2e import pretrain_transceiver
from ganlink.management.base import ExperimentCommand
from ganlink.utils.rng import Rng


class Command(ExperimentCommand):
    ''' pretrain a transceiver and save it as pretrained.ckpt '''
    help = 'Pretrain the transmitter and receiver on the simplified link model'

    def run(self, config, out_dir, options):
        result = pretrain_transceiver(
            config.channel, config.pretrain.steps,
            Rng(config.seed).child('pretrain'),
            config.transceiver, config.pretrain)
        path = os.path.join(out_dir, 'pretrained.ckpt')
        checkpoint.save_networks(path, {
            'transmitter': result.transmitter,
            'receiver': result.receiver,
        })
        return {
            'checkpoint': path,
            'ser': result.ser,
            'first_loss': result.losses[0],
            'last_loss': result.losses[-1],
        }
