class ConsistencyError(RuntimeError):
    """An exact identity or cross-check that must hold was violated.

    Raised only for internal mathematical inconsistencies (never for user
    input errors); the CLI maps it to exit code 2.
    """
