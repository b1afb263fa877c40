"""Source-filter warping augmentation for speech.

Adult speech is made more child-like by warping the harmonic source and
the spectral envelope of each STFT frame with separate coefficients, then
resynthesizing with Griffin-Lim. VTLP and a Griffin-Lim-only round trip
are provided as baselines.
"""

__version__ = "0.1.0"

# the `stft` function stays in `sfwarp.stft` so the submodule is not shadowed

from .envelope import SourceFilterPair, decompose, envelope_of, estimate_envelope, recombine
from .pipeline import (
    AugmentConfig,
    DrawnCoefficients,
    augment,
    augment_gl_only,
    augment_sfw,
    augment_vtlp,
    draw_coefficients,
)
from .reconstruct import GriffinLimConfig, griffin_lim
from .signal_io import Waveform, WavFormatError, read_wav, write_wav
from .stft import (
    ComplexSpectrogram,
    FramingParams,
    PowerSpectrogram,
    istft,
    magnitude_with_phase,
    power,
)
from .warp import warp_frame, warp_spectrogram
