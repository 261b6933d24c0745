''' redraw the figures of a finished or interrupted run '''
import glob
import os

from ganlink import checkpoint
from ganlink.management.base import ExperimentCommand
from ganlink.report import read_metrics, render_report
from ganlink.runner import tx_waveforms


class Command(ExperimentCommand):
    ''' read metrics.jsonl and checkpoints from --out, write the report '''
    help = 'Render metrics.csv and the svg figures from a run directory'
    needs_config = False

    def run(self, config, out_dir, options):
        history = read_metrics(os.path.join(out_dir, 'metrics.jsonl'))
        paths = sorted(glob.glob(os.path.join(out_dir, 'checkpoints', '*.ckpt')))
        confusions, waveforms = None, None
        if paths:
            first = checkpoint.load_checkpoint(paths[0])
            last = checkpoint.load_checkpoint(paths[-1])
            confusions = [first['confusion'], last['confusion']]
            waveforms = tx_waveforms(
                checkpoint.network_from_tensors(last, 'transmitter'))
        written = render_report(history, out_dir, confusions, waveforms)
        return {'written': written}
