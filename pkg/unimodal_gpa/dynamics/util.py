import logging

_LOGGER = logging.getLogger(__name__)

MAX_LOGGED_ITEMS = 12


def summarize_for_logging(value):
    """Return a shortened copy of a nested structure for debug logging."""
    if isinstance(value, dict):
        items = list(value.items())
        summary = {k: summarize_for_logging(v) for k, v in items[:MAX_LOGGED_ITEMS]}
        if len(items) > MAX_LOGGED_ITEMS:
            summary["..."] = f"{len(items) - MAX_LOGGED_ITEMS} more"
        return summary
    if isinstance(value, (list, tuple)):
        summary = [summarize_for_logging(v) for v in value[:MAX_LOGGED_ITEMS]]
        if len(value) > MAX_LOGGED_ITEMS:
            summary.append(f"... {len(value) - MAX_LOGGED_ITEMS} more")
        return summary
    return value


def word_text(symbols) -> str:
    return "".join(str(x) for x in symbols)
