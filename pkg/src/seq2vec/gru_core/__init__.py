"""Exact GRU and affine computation with a finite-difference checker."""

from .affine import AffineParams, affine_backward, affine_forward, init_affine
from .gradcheck import GradientCheckReport, gradient_check
from .gru import (
    GruCellCache,
    GruLayerCache,
    GruLayerParams,
    gru_backward,
    gru_cell_backward,
    gru_cell_forward,
    gru_layer_backward,
    gru_layer_forward,
    gru_sequence_forward,
    init_gru_layer,
    sigmoid,
)

__all__ = [
    "AffineParams",
    "GradientCheckReport",
    "GruCellCache",
    "GruLayerCache",
    "GruLayerParams",
    "affine_backward",
    "affine_forward",
    "gradient_check",
    "gru_backward",
    "gru_cell_backward",
    "gru_cell_forward",
    "gru_layer_backward",
    "gru_layer_forward",
    "gru_sequence_forward",
    "init_affine",
    "init_gru_layer",
    "sigmoid",
]
