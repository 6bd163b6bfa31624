from typing import Any, Dict, Optional

import structlog


def audit_log(
    action: str,
    pair_id: Optional[str] = None,
    artifact: Optional[str] = None,
    details: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Log a decision-trail event.

    Args:
        action: What happened (e.g. 'pair_labeled', 'model_saved', 'frame_selected')
        pair_id: Frame pair the event concerns
        artifact: File written or read (labels CSV, model, report)
        details: Evidence behind the event (NCCs, thresholds, probabilities)
    """

    audit_entry = {
        "action": action,
        "pair_id": pair_id,
        "artifact": artifact,
        "details": details or {},
    }

    # Remove None values to keep logs clean
    audit_entry = {k: v for k, v in audit_entry.items() if v is not None}

    audit_logger = structlog.get_logger("elasto_audit")
    audit_logger.info("audit_event", **audit_entry)
