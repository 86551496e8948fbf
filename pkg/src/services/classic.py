"""Classic full-matrix priority derivation: eigenvector and geometric-mean methods."""
import logging
from typing import Optional

import numpy as np

from src.models.pairwise import PcMatrix, PriorityVector
from src.services.consistency import reciprocity_warnings
from src.services.linalg import power_iteration

logger = logging.getLogger(__name__)


def ev_method(matrix: PcMatrix, tol: Optional[float] = None, max_iter: Optional[int] = None) -> PriorityVector:
    """
    Principal eigenvector of M rescaled to sum to 1.

    Reciprocity is not required; a warning is attached when it fails.

    Raises:
        ConvergenceError: If power iteration does not converge
    """
    eigenvalue, vector = power_iteration(matrix.to_array(), tol=tol, max_iter=max_iter)
    logger.debug("Principal eigenvalue %.12g for n=%d", eigenvalue, matrix.n)
    vector = vector / vector.sum()
    return PriorityVector(
        values=tuple(float(v) for v in vector),
        method="ev",
        warnings=reciprocity_warnings(matrix),
    )


def gm_method(matrix: PcMatrix) -> PriorityVector:
    """Row geometric means of M rescaled to sum to 1, computed in log space."""
    logs = np.log(matrix.to_array()).mean(axis=1)
    # the shift cancels in the rescaling
    p = np.exp(logs - logs.max())
    p = p / p.sum()
    return PriorityVector(
        values=tuple(float(v) for v in p),
        method="gm",
        warnings=reciprocity_warnings(matrix),
    )
