''' bring the transceiver into the namespace '''
from .networks import TransceiverConfig, InputError
from .networks import build_transmitter, build_receiver, message_indices
from .networks import tx_blocks, tx_encode, context_blocks, context_blocks_backward
from .networks import rx_decode, decide
from .metrics import BitMapping, ErrorCounts, MetricsRecord, DomainError
from .metrics import confusion_matrix, error_probabilities, mapping_cost
from .metrics import optimize_bit_mapping, compute_ber
from .metrics import q2_from_ber, ber_from_q2
