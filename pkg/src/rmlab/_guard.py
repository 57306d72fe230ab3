import os

from .errors import SizeGuardExceeded

ENV_VAR = "RML_GUARD_OVERRIDE"

# Default number of items an exhaustive routine may visit.
DEFAULT_LIMIT = 1 << 24


def limit(default=DEFAULT_LIMIT):
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return max(default, int(raw))
        except ValueError:
            pass
    return default


def check(count, what, default=DEFAULT_LIMIT, exc=SizeGuardExceeded):
    lim = limit(default)
    if count > lim:
        raise exc(f"{what}: {count} items exceeds guard {lim} (set {ENV_VAR} to raise it)")
