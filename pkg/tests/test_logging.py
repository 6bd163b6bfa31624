import logging

import pytest
from structlog.testing import capture_logs

from app.logging import get_logger, setup_logging
from app.logging.audit import audit_log
from app.logging.performance import Stopwatch, performance_log, timed


class TestAuditLog:
    """Test suite for decision-trail events."""

    def test_event_fields(self):
        with capture_logs() as logs:
            audit_log("pair_labeled", pair_id="pair00001", details={"label": 1})
        assert logs == [
            {
                "event": "audit_event",
                "log_level": "info",
                "action": "pair_labeled",
                "pair_id": "pair00001",
                "details": {"label": 1},
            }
        ]

    def test_absent_fields_are_dropped(self):
        with capture_logs() as logs:
            audit_log("model_saved", artifact="m.elsm")
        assert "pair_id" not in logs[0]
        assert logs[0]["artifact"] == "m.elsm"
        assert logs[0]["details"] == {}


class TestPerformanceLog:
    """Test suite for timing records."""

    def test_rounds_duration(self):
        with capture_logs() as logs:
            performance_log("oracle_evaluate_pair", 12.345678, True, {"pair_id": "p"})
        assert logs[0]["event"] == "performance_metric"
        assert logs[0]["duration_ms"] == 12.346
        assert logs[0]["success"] is True

    def test_stopwatch(self):
        watch = Stopwatch()
        with watch.measure():
            sum(range(1000))
        assert watch.elapsed_ms > 0.0

    def test_timed_marks_failure(self):
        with capture_logs() as logs:
            with pytest.raises(ValueError):
                with timed("train_epoch", epoch=3):
                    raise ValueError("diverged")
        assert logs[0]["success"] is False
        assert logs[0]["details"] == {"epoch": 3}

    def test_timed_success(self):
        with capture_logs() as logs:
            with timed("bench"):
                pass
        assert logs[0]["success"] is True


class TestSetup:
    def test_level_applies_to_root_logger(self):
        setup_logging("WARNING", "production")
        assert logging.getLogger().level == logging.WARNING
        setup_logging("DEBUG")
        assert logging.getLogger().level == logging.DEBUG

    def test_get_logger_binds(self):
        with capture_logs() as logs:
            get_logger("app.test").info("Frame loaded", frame="a.rf")
        assert logs[0]["frame"] == "a.rf"
