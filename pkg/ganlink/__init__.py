''' end-to-end IM/DD transceiver learning through a GAN channel model '''
