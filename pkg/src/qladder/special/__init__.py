"""q-series primitives"""

from .qseries import (
    QParam,
    TruncatedProduct,
    as_q,
    dq_difference,
    eval_phi11,
    eval_phi21,
    jackson_qintegral,
    little_q_laguerre_monic,
    q_binomial,
    q_laguerre_monic,
    qpoch_finite,
    qpoch_infinite,
    stieltjes_wigert_monic,
    theta_product,
    theta_sum,
)

__all__ = [
    "QParam",
    "TruncatedProduct",
    "as_q",
    "dq_difference",
    "eval_phi11",
    "eval_phi21",
    "jackson_qintegral",
    "little_q_laguerre_monic",
    "q_binomial",
    "q_laguerre_monic",
    "qpoch_finite",
    "qpoch_infinite",
    "stieltjes_wigert_monic",
    "theta_product",
    "theta_sum",
]
