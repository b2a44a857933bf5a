"""seq2vec: fixed-length representations of variable-length audio sequences.

A GRU encoder reads each feature sequence in reverse and compresses it into
one vector; a mirrored decoder learns to reconstruct the sequence from that
vector, so the vector has to carry the whole sequence. The package also
ships the surrounding pipeline: WAV decoding, MFCC extraction, a
bag-of-audio-words baseline, SVM and GRU classifiers, metrics, and a CLI.
"""

from .audio_features import (
    AudioClip,
    BoawCodebook,
    FeatureSequence,
    Standardizer,
    apply_standardizer,
    boaw_encode,
    decode_wav,
    encode_wav,
    extract_mfcc,
    fit_boaw_codebook,
    fit_standardizer,
)
from .evaluation import (
    LdaProjection,
    confusion,
    export_plot_csv,
    lda_project,
    macro_f1,
    unweighted_accuracy,
)
from .gru_core import (
    AffineParams,
    GruLayerParams,
    gradient_check,
    gru_cell_forward,
    gru_sequence_forward,
)
from .seq2seq import (
    EncoderDecoderModel,
    ReconstructionResult,
    decode_teacher_forced,
    encode,
    init_encoder_decoder,
    masked_mse,
    parse_shape,
    reconstruct,
)
from .training import (
    AutoencoderTrainConfig,
    ClassifierTrainConfig,
    GruClassifierModel,
    SvmModel,
    TrainHistory,
    classifier_predict,
    pad_batch,
    svm_predict,
    train_autoencoder,
    train_gru_classifier,
    train_svm,
    upsample_balanced,
)

__version__ = "0.1.0"

__all__ = [
    "AudioClip",
    "AffineParams",
    "AutoencoderTrainConfig",
    "BoawCodebook",
    "ClassifierTrainConfig",
    "EncoderDecoderModel",
    "FeatureSequence",
    "GruClassifierModel",
    "GruLayerParams",
    "LdaProjection",
    "ReconstructionResult",
    "Standardizer",
    "SvmModel",
    "TrainHistory",
    "apply_standardizer",
    "boaw_encode",
    "classifier_predict",
    "confusion",
    "decode_teacher_forced",
    "decode_wav",
    "encode",
    "encode_wav",
    "export_plot_csv",
    "extract_mfcc",
    "fit_boaw_codebook",
    "fit_standardizer",
    "gradient_check",
    "gru_cell_forward",
    "gru_sequence_forward",
    "init_encoder_decoder",
    "lda_project",
    "macro_f1",
    "masked_mse",
    "pad_batch",
    "parse_shape",
    "reconstruct",
    "svm_predict",
    "train_autoencoder",
    "train_gru_classifier",
    "train_svm",
    "unweighted_accuracy",
    "upsample_balanced",
]
