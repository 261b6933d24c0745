''' metrics files, PCA projection and the svg figures of a run '''
import csv
import json
import logging
import os

import numpy as np
import matplotlib as mpl
mpl.use('Agg')
import matplotlib.pyplot as plt # pylint: disable=wrong-import-position

from ganlink.nn import ShapeError, UsageError
from ganlink.transceiver import MetricsRecord, error_probabilities

logger = logging.getLogger(__name__)

# confusion cells at or below this probability are left blank
DISPLAY_THRESHOLD = 0.01
CSV_FIELDS = ['k', 'ser', 'ber', 'q2_db', 'gan_d_loss', 'gan_g_loss',
              'wallclock_s', 'seed', 'symbols', 'bit_errors']

mpl.rcParams.update({
    'svg.hashsalt': 'ganlink',
    'font.size': 10,
    'axes.grid': True,
    'grid.alpha': 0.3,
    'figure.figsize': (6.0, 4.0),
})


class MetricsWriter:
    ''' appends one flushed json line per record; k must keep increasing '''
    def __init__(self, path, append=False):
        self.path = path
        self.last_k = None
        if append and os.path.exists(path):
            records = read_metrics(path)
            self.last_k = records[-1].k if records else None
        else:
            directory = os.path.dirname(os.path.abspath(path))
            os.makedirs(directory, exist_ok=True)
            open(path, 'w').close()

    def write(self, record):
        ''' add a record to the end of the file '''
        if self.last_k is not None and record.k <= self.last_k:
            raise UsageError('Metrics k must increase: %d after %d' % (
                record.k, self.last_k))
        with open(self.path, 'a') as metrics_file:
            metrics_file.write(json.dumps(record.serialize()) + '\n')
            metrics_file.flush()
        self.last_k = record.k


def read_metrics(path):
    ''' every complete line of a metrics file; a torn last line is skipped '''
    records = []
    with open(path) as metrics_file:
        for line in metrics_file:
            if not line.endswith('\n'):
                logger.warning('ignoring incomplete last line of %s', path)
                break
            if line.strip():
                records.append(MetricsRecord.from_line(json.loads(line)))
    return records


def write_metrics_csv(history, path):
    ''' the same rows as metrics.jsonl, as a table '''
    with open(path, 'w', newline='') as csv_file:
        writer = csv.DictWriter(csv_file, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for record in history:
            writer.writerow(record.serialize())


def pca_project(blocks):
    ''' coordinates of each block on the top two principal components '''
    blocks = np.asarray(blocks, dtype=np.float64)
    if blocks.ndim != 2 or len(blocks) < 3:
        raise ShapeError('PCA needs at least 3 blocks, got shape %s' % (
            blocks.shape,))
    centered = blocks - blocks.mean(axis=0)
    points = np.zeros((len(blocks), 2))
    if not np.any(np.abs(centered) > 1e-15):
        return points

    # singular values come out in decreasing order
    _, _, components = np.linalg.svd(centered, full_matrices=False)
    components = components[:2]
    # fix the sign so the largest loading of each axis is positive
    signs = np.sign(components[np.arange(len(components)),
                               np.argmax(np.abs(components), axis=1)])
    components = components * signs[:, np.newaxis]
    points[:, :len(components)] = centered @ components.T
    return points


def visible_cells(confusion, threshold=DISPLAY_THRESHOLD):
    ''' (sent, decided) pairs, 1-based, whose probability exceeds threshold '''
    probabilities = error_probabilities(confusion)
    rows, columns = np.nonzero(probabilities > threshold)
    return list(zip((rows + 1).tolist(), (columns + 1).tolist()))


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
    return path


def plot_ber(history, path):
    ''' log-scale BER against the iteration, one marker per record '''
    fig, ax = plt.subplots()
    iterations = [record.k for record in history]
    ber = np.array([record.ber for record in history], dtype=np.float64)
    ax.semilogy(iterations, np.where(ber > 0, ber, np.nan), 'o-')
    ax.set_xlabel('optimization iteration k')
    ax.set_ylabel('BER')
    ax.set_xticks(iterations)
    return _save(fig, path)


def plot_confusion(confusion, path, title=None):
    ''' heat map of P(decided | sent), blank below the display threshold '''
    probabilities = error_probabilities(confusion)
    size = len(probabilities)
    fig, ax = plt.subplots(figsize=(4.5, 4.0))
    shown = np.ma.masked_less_equal(probabilities, DISPLAY_THRESHOLD)
    image = ax.imshow(shown, cmap='viridis', vmin=0.0, vmax=1.0,
                      extent=(0.5, size + 0.5, size + 0.5, 0.5))
    for sent, decided in visible_cells(confusion):
        ax.text(decided, sent, '%.2f' % probabilities[sent - 1, decided - 1],
                ha='center', va='center', fontsize=7, color='w')
    ax.set_xlabel('decided message')
    ax.set_ylabel('sent message')
    ax.set_xticks(range(1, size + 1))
    ax.set_yticks(range(1, size + 1))
    ax.grid(False)
    if title:
        ax.set_title(title)
    fig.colorbar(image, ax=ax)
    return _save(fig, path)


def plot_constellation(waveforms, path):
    ''' PCA scatter of the transmitted waveform of every message '''
    points = pca_project(waveforms)
    fig, ax = plt.subplots(figsize=(4.5, 4.0))
    ax.scatter(points[:, 0], points[:, 1])
    for index, (x, y) in enumerate(points):
        ax.annotate(str(index + 1), (x, y), textcoords='offset points',
                    xytext=(4, 4))
    ax.set_xlabel('principal component 1')
    ax.set_ylabel('principal component 2')
    return _save(fig, path)


def render_report(history, out_dir, confusions=None, waveforms=None,
                  summary=None):
    ''' metrics files and figures for a run; returns the written paths '''
    if not history:
        raise UsageError('Nothing to report: the history is empty')
    os.makedirs(out_dir, exist_ok=True)
    path = lambda name: os.path.join(out_dir, name)

    writer = MetricsWriter(path('metrics.jsonl'))
    for record in history:
        writer.write(record)
    written = [writer.path]
    write_metrics_csv(history, path('metrics.csv'))
    written.append(path('metrics.csv'))
    written.append(plot_ber(history, path('ber_vs_iteration.svg')))

    if confusions:
        first, last = confusions[0], confusions[-1]
        written.append(plot_confusion(
            first, path('confusion_k0.svg'), 'k = 0'))
        written.append(plot_confusion(
            last, path('confusion_final.svg'), 'k = %d' % history[-1].k))
    if waveforms is not None:
        if len(waveforms) >= 3:
            written.append(plot_constellation(waveforms, path('constellation.svg')))
        else:
            logger.warning('%d waveforms are too few for a constellation plot',
                           len(waveforms))
    if summary is not None:
        with open(path('summary.json'), 'w') as summary_file:
            json.dump(summary, summary_file, indent=2, sort_keys=True)
        written.append(path('summary.json'))
    logger.info('wrote %d report files to %s', len(written), out_dir)
    return written
