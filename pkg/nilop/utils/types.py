import typing as tp

import numpy as np
from jaxtyping import Int64

Vector = Int64[np.ndarray, "dim"]
Matrix = Int64[np.ndarray, "rows cols"]
SquareMatrix = Int64[np.ndarray, "dim dim"]

# (c0 : c1) point of the projective line over F_p
ProjectivePoint = tuple[int, ...]

ArrayLike = tp.Union[np.ndarray, tp.Sequence[tp.Sequence[int]]]
