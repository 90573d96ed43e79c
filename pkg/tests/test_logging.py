"""Tests for logger setup and residual traces"""

import logging

from qladder.utils.logging import RunLog, setup_logger


def test_setup_logger_console_only():
    logger = setup_logger("qladder.test_console", level=logging.DEBUG)
    assert logger.level == logging.DEBUG
    assert len(logger.handlers) == 1
    # repeated setup replaces handlers
    logger = setup_logger("qladder.test_console")
    assert len(logger.handlers) == 1


def test_setup_logger_writes_file(tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    logger = setup_logger("qladder.test_file", log_file=str(log_file))
    assert len(logger.handlers) == 2
    logger.info("orbit certified")
    for handler in logger.handlers:
        handler.flush()
    assert "orbit certified" in log_file.read_text()


def test_runlog_metrics():
    run_log = RunLog(run_name="qp3")
    run_log.log_metrics({"residual": 1e-40, "gap": 1e-35}, step=1)
    run_log.log_metric("residual", 1e-38, step=2)
    assert run_log.get_metric("residual")["steps"] == [1, 2]
    assert run_log.get_latest("residual") == 1e-38
    assert run_log.get_worst("residual") == 1e-38
    assert run_log.get_latest("missing") is None
    assert run_log.get_worst("missing") is None
    summary = run_log.summary()
    assert "qp3" in summary
    assert "residual:" in summary
    assert "gap:" in summary


def test_runlog_file(tmp_path):
    run_log = RunLog(log_dir=str(tmp_path), run_name="lattice")
    run_log.log_metric("residual", 2.5e-41, step=3)
    assert run_log.log_file.parent == tmp_path
    assert run_log.log_file.name.startswith("lattice_")
    assert "step=3, residual=2.500000e-41" in run_log.log_file.read_text()
