''' validating experiment config sections with django forms '''
from django import forms

from ganlink.channel import CHANNELS, ChannelConfig
from ganlink.e2e import ExperimentConfig, PretrainConfig
from ganlink.gan import GanConfig
from ganlink.transceiver import TransceiverConfig

DEFAULTS = ExperimentConfig()
CHANNEL = DEFAULTS.channel
GAN = DEFAULTS.gan
TRANSCEIVER = DEFAULTS.transceiver
PRETRAIN = DEFAULTS.pretrain


def _flag(initial, help_text):
    return forms.BooleanField(required=False, initial=initial,
                              help_text=help_text)


class SectionForm(forms.Form):
    ''' one [section] of the config file; unset keys keep their initial value '''
    config_class = None

    def __init__(self, values=None, **kwargs):
        data = {name: field.initial for name, field in self.base_fields.items()}
        data.update(values or {})
        super().__init__(data, **kwargs)

    def build(self):
        ''' the config dataclass for the cleaned values '''
        return self.config_class(**self.cleaned_data)


# pylint: disable=missing-class-docstring
class ExperimentForm(SectionForm):
    config_class = dict

    iterations = forms.IntegerField(
        min_value=1, initial=DEFAULTS.iterations,
        help_text='outer optimization iterations K')
    sequences = forms.IntegerField(
        min_value=1, initial=DEFAULTS.sequences,
        help_text='sequences N sent per iteration')
    messages_per_sequence = forms.IntegerField(
        min_value=5, initial=DEFAULTS.messages_per_sequence,
        help_text='messages w per sequence')
    q = forms.IntegerField(
        min_value=1, initial=DEFAULTS.q,
        help_text='measured rows reserved for the transceiver update '
                  '(capped at 10% of N * w)')
    inner_transceiver_steps = forms.IntegerField(
        min_value=1, initial=DEFAULTS.inner_transceiver_steps,
        help_text='Adam updates of Tx/Rx through the generator per iteration')
    transceiver_lr = forms.FloatField(
        min_value=0, initial=DEFAULTS.transceiver_lr,
        help_text='learning rate of the transceiver updates')
    baseline_steps = forms.IntegerField(
        min_value=0, initial=DEFAULTS.baseline_steps,
        help_text='Adam updates of the receiver-only baseline')
    seed = forms.IntegerField(
        min_value=0, max_value=2 ** 64 - 1, initial=DEFAULTS.seed,
        help_text='seed for every random stream of the run')
    calibrate_noise = _flag(
        DEFAULTS.calibrate_noise,
        'set the receiver noise so the k = 0 BER is in the target range')
    target_ber_low = forms.FloatField(
        initial=DEFAULTS.target_ber_low,
        help_text='lower end of the k = 0 BER range')
    target_ber_high = forms.FloatField(
        initial=DEFAULTS.target_ber_high,
        help_text='upper end of the k = 0 BER range')
    channel_name = forms.ChoiceField(
        choices=[(name, name) for name in CHANNELS],
        initial=DEFAULTS.channel_name, help_text='the link to measure')

    def clean(self):
        cleaned_data = super().clean()
        low = cleaned_data.get('target_ber_low')
        high = cleaned_data.get('target_ber_high')
        if low is not None and high is not None and not 0 < low < high < 0.5:
            self.add_error('target_ber_high',
                           'need 0 < target_ber_low < target_ber_high < 0.5')
        return cleaned_data


class ChannelForm(SectionForm):
    config_class = ChannelConfig

    samples_per_symbol = forms.IntegerField(
        min_value=1, initial=CHANNEL.samples_per_symbol,
        help_text='samples per symbol n')
    dac_rate = forms.FloatField(
        min_value=0, initial=CHANNEL.dac_rate, help_text='DAC rate, Sa/s')
    lpf_bandwidth = forms.FloatField(
        min_value=0, initial=CHANNEL.lpf_bandwidth,
        help_text='low-pass bandwidth, Hz (below dac_rate / 2)')
    fiber_length = forms.FloatField(
        min_value=0, initial=CHANNEL.fiber_length, help_text='fibre length, m')
    dispersion_coefficient = forms.FloatField(
        initial=CHANNEL.dispersion_coefficient,
        help_text='dispersion D, s/m^2 (17e-6 is 17 ps/(nm km))')
    wavelength = forms.FloatField(
        min_value=0, initial=CHANNEL.wavelength, help_text='carrier wavelength, m')
    dac_bits = forms.IntegerField(
        min_value=1, max_value=16, initial=CHANNEL.dac_bits,
        help_text='DAC resolution')
    adc_bits = forms.IntegerField(
        min_value=1, max_value=16, initial=CHANNEL.adc_bits,
        help_text='ADC resolution')
    modulator_vpi_normalization = forms.FloatField(
        min_value=0, initial=CHANNEL.modulator_vpi_normalization,
        help_text='MZM drive scale, E = sin(pi/2 u / vpi)')
    receiver_noise_sigma = forms.FloatField(
        min_value=0, initial=CHANNEL.receiver_noise_sigma,
        help_text='thermal noise sigma after the photodiode')
    adc_clip_sigmas = forms.FloatField(
        min_value=0, initial=CHANNEL.adc_clip_sigmas,
        help_text='ADC full scale in signal standard deviations')
    seed = forms.IntegerField(
        min_value=0, max_value=2 ** 64 - 1, initial=CHANNEL.seed,
        help_text='seed of the link noise')

    def clean(self):
        cleaned_data = super().clean()
        rate = cleaned_data.get('dac_rate')
        bandwidth = cleaned_data.get('lpf_bandwidth')
        if rate and bandwidth is not None and bandwidth >= rate / 2:
            self.add_error('lpf_bandwidth', 'lpf_bandwidth %g Hz is not below '
                           'the Nyquist frequency %g Hz' % (bandwidth, rate / 2))
        return cleaned_data


class TransceiverForm(SectionForm):
    config_class = TransceiverConfig

    messages = forms.IntegerField(
        min_value=2, initial=TRANSCEIVER.messages,
        help_text='alphabet size S, a power of two')
    hidden_width = forms.IntegerField(
        min_value=1, initial=TRANSCEIVER.hidden_width,
        help_text='width of the two hidden layers of Tx and Rx')
    rx_context = forms.IntegerField(
        min_value=1, initial=TRANSCEIVER.rx_context,
        help_text='received blocks the receiver sees (odd)')

    def clean_messages(self):
        messages = self.cleaned_data['messages']
        if messages & (messages - 1):
            raise forms.ValidationError('messages must be a power of two')
        return messages

    def clean_rx_context(self):
        context = self.cleaned_data['rx_context']
        if context % 2 == 0:
            raise forms.ValidationError('rx_context must be odd')
        return context


class GanForm(SectionForm):
    config_class = GanConfig

    memory = forms.IntegerField(
        min_value=1, initial=GAN.memory, help_text='channel memory m in symbols (odd)')
    samples_per_symbol = forms.IntegerField(
        min_value=1, initial=GAN.samples_per_symbol,
        help_text='follows channel.samples_per_symbol unless set')
    batch_size = forms.IntegerField(
        min_value=1, initial=GAN.batch_size, help_text='batch size B')
    total_steps = forms.IntegerField(
        min_value=1, initial=GAN.total_steps, help_text='training steps per iteration')
    d_updates_per_step = forms.IntegerField(
        min_value=1, initial=GAN.d_updates_per_step,
        help_text='discriminator updates before each generator update')
    d_learning_rate = forms.FloatField(
        min_value=0, initial=GAN.d_learning_rate,
        help_text='discriminator learning rate')
    g_lr_start = forms.FloatField(
        min_value=0, initial=GAN.g_lr_start, help_text='first generator learning rate')
    g_lr_end = forms.FloatField(
        min_value=0, initial=GAN.g_lr_end, help_text='last generator learning rate')
    g_lr_interval = forms.IntegerField(
        min_value=1, initial=GAN.g_lr_interval,
        help_text='steps between generator learning rate reductions')
    warm_start = _flag(
        GAN.warm_start, 'continue from the previous iteration\'s networks')
    log_interval = forms.IntegerField(
        min_value=1, initial=GAN.log_interval, help_text='steps between log lines')
    validation_draws = forms.IntegerField(
        min_value=1, initial=GAN.validation_draws,
        help_text='draws per validation window when validating the generator')

    def clean_memory(self):
        memory = self.cleaned_data['memory']
        if memory % 2 == 0:
            raise forms.ValidationError('m must be odd, got %d' % memory)
        return memory

    def clean(self):
        cleaned_data = super().clean()
        start = cleaned_data.get('g_lr_start')
        end = cleaned_data.get('g_lr_end')
        if start is not None and end is not None and not start >= end > 0:
            self.add_error('g_lr_end', 'need g_lr_start >= g_lr_end > 0')
        return cleaned_data


class PretrainForm(SectionForm):
    config_class = PretrainConfig

    steps = forms.IntegerField(
        min_value=1, initial=PRETRAIN.steps, help_text='updates on the link model')
    sequence_length = forms.IntegerField(
        min_value=1, initial=PRETRAIN.sequence_length,
        help_text='messages per simulated sequence')
    batch_sequences = forms.IntegerField(
        min_value=1, initial=PRETRAIN.batch_sequences,
        help_text='sequences per update')
    learning_rate = forms.FloatField(
        min_value=0, initial=PRETRAIN.learning_rate, help_text='Adam learning rate')
    noise_sigma = forms.FloatField(
        min_value=0, initial=PRETRAIN.noise_sigma,
        help_text='noise of the link model (differs from the link on purpose)')
    dispersion_scale = forms.FloatField(
        min_value=0, initial=PRETRAIN.dispersion_scale,
        help_text='fraction of the fibre dispersion in the link model')
    ser_target = forms.FloatField(
        min_value=0, max_value=1, initial=PRETRAIN.ser_target,
        help_text='pretraining fails above this SER')
    eval_sequences = forms.IntegerField(
        min_value=1, initial=PRETRAIN.eval_sequences,
        help_text='sequences used to measure the pretraining SER')


SECTION_FORMS = {
    'experiment': ExperimentForm,
    'channel': ChannelForm,
    'transceiver': TransceiverForm,
    'gan': GanForm,
    'pretrain': PretrainForm,
}
