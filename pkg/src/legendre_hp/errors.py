class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagreed.

    Never expected in practice; it signals a bug, and the CLI maps it to exit
    code 3.
    """
