from .adam import Adam
from .mlp import (
    ForwardCache,
    Mlp,
    backward,
    forward,
    forward_cache,
    init_mlp,
    pack_params,
    unpack_params,
)

__all__ = [
    "Adam",
    "ForwardCache",
    "Mlp",
    "backward",
    "forward",
    "forward_cache",
    "init_mlp",
    "pack_params",
    "unpack_params",
]
