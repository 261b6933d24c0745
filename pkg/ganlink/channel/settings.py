''' channels that can be loaded by name '''

CHANNELS = ['imdd', 'awgn', 'identity']
