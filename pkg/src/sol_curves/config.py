import os

DEFAULT_JET_ORDER = 8
JET_ORDER_ENV = "SOL_CURVES_JET_ORDER"


def jet_order() -> int:
    """Working jet order; SOL_CURVES_JET_ORDER may raise it above 8."""
    raw = os.environ.get(JET_ORDER_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_JET_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise ValueError(f"{JET_ORDER_ENV} must be an integer, got {raw!r}") from None
    if order < DEFAULT_JET_ORDER:
        raise ValueError(f"{JET_ORDER_ENV} must be >= {DEFAULT_JET_ORDER}, got {order}")
    return order
