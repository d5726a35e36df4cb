import os

# Size guards for the exhaustive probes. Each can be overridden from the environment.
WINDOW_GUARD = int(os.environ.get('CA_WINDOW_GUARD', 2 ** 24))
TORUS_GUARD = int(os.environ.get('CA_TORUS_GUARD', 2 ** 20))
PREIMAGE_GUARD = int(os.environ.get('CA_PREIMAGE_GUARD', 2 ** 20))
ORBIT_GUARD = int(os.environ.get('CA_ORBIT_GUARD', 2 ** 20))

# Windows evaluated per numpy batch during enumeration
CHUNK_SIZE = int(os.environ.get('CA_CHUNK_SIZE', 2 ** 15))

LOG_LEVEL = os.environ.get('CA_LOG_LEVEL', 'WARNING')


def resolve_guard(guard, default):
    """
    Pick the explicit guard if one was given, otherwise the configured default

    Args:
        guard: explicit override or None
        default: configured value

    Returns:
        Integer guard
    """
    if guard is None:
        return default
    return int(guard)
