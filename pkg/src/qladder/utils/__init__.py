"""Utility functions

``qladder.utils.config`` is imported directly: it depends on the weights
package, which itself imports from here.
"""

from .logging import RunLog, setup_logger
from .precision import PrecisionContext, agree, run_escalated

__all__ = ["PrecisionContext", "RunLog", "agree", "run_escalated", "setup_logger"]
