"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: config problems exit 2, data problems
exit 3, numeric failures exit 4.
"""


class Seq2VecError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(Seq2VecError):
    """Bad configuration file, flag, or parameter combination."""


class DataError(Seq2VecError):
    """Input data is missing, malformed, or inconsistent."""


class WavError(DataError):
    """Problem decoding a WAV byte stream."""


class MalformedWavError(WavError):
    """The RIFF/WAVE container structure is invalid or truncated."""


class UnsupportedEncodingError(WavError):
    """The WAV is structurally valid but not linear PCM."""


class UnsupportedChannelsError(WavError):
    """The WAV has a channel count other than one."""


class UnsupportedBitDepthError(WavError):
    """The WAV sample width is not 16 bit."""


class UnsupportedSampleRateError(WavError):
    """The WAV sample rate is outside what the pipeline accepts."""


class ContainerError(DataError):
    """Problem reading or writing a serialized model container."""


class ChecksumError(ContainerError):
    """Stored checksum does not match the payload."""


class VersionError(ContainerError):
    """Container format version is not supported by this build."""


class KindMismatchError(ContainerError):
    """Container holds a different model kind than the caller expected."""


class NumericError(Seq2VecError):
    """A numeric computation failed."""


class DivergenceError(NumericError):
    """Training produced a non-finite loss or gradient."""
