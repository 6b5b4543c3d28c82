"""Unit tests for the qhpolytope.logger module."""

import logging
import sys

import numpy as np
import pytest
from rich.logging import RichHandler

from qhpolytope.logger import (
    ROOT_LOGGER,
    configure_for_testing,
    get_logger,
    log_function_call,
    setup_logging,
)


@pytest.fixture
def restore_logging():
    yield
    configure_for_testing()


@pytest.mark.unit
class TestSetupLogging:
    """Handler wiring of setup_logging."""

    def test_namespace(self):
        assert get_logger("solver.fiber").name == f"{ROOT_LOGGER}.solver.fiber"

    def test_console_writes_to_stderr(self, restore_logging):
        setup_logging(level="INFO")
        (handler,) = logging.getLogger(ROOT_LOGGER).handlers
        assert handler.stream is sys.stderr
        assert handler.level == logging.INFO

    def test_rich_console(self, restore_logging):
        setup_logging(format_type="rich")
        (handler,) = logging.getLogger(ROOT_LOGGER).handlers
        assert isinstance(handler, RichHandler)
        assert handler.console.stderr

    def test_repeated_setup_does_not_stack_handlers(self, restore_logging):
        setup_logging()
        setup_logging()
        assert len(logging.getLogger(ROOT_LOGGER).handlers) == 1

    def test_unknown_level_falls_back_to_warning(self, restore_logging):
        setup_logging(level="chatty")
        (handler,) = logging.getLogger(ROOT_LOGGER).handlers
        assert handler.level == logging.WARNING

    def test_file_handler(self, tmp_path, restore_logging):
        log_file = tmp_path / "nested" / "run.log"
        setup_logging(console=False, file_path=str(log_file))
        get_logger("lab").debug("written")
        for handler in logging.getLogger(ROOT_LOGGER).handlers:
            handler.flush()
        assert "written" in log_file.read_text(encoding="utf-8")


@pytest.mark.unit
class TestCallLogging:
    def test_arrays_logged_by_shape(self, caplog):
        with caplog.at_level(logging.DEBUG, logger=f"{ROOT_LOGGER}.calls"):
            log_function_call("solve_fiber", target=np.zeros((3, 3), dtype=complex), restarts=4)
        (record,) = caplog.records
        assert "ndarray(3, 3)<complex128>" in record.getMessage()
        assert "restarts=4" in record.getMessage()

    def test_silent_above_debug(self, caplog):
        with caplog.at_level(logging.INFO, logger=f"{ROOT_LOGGER}.calls"):
            log_function_call("classify", x=(0.5, -0.5))
        assert not caplog.records
