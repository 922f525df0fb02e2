class InputError(ValueError):
    """Rejected input: a precondition of the public API does not hold.

    The CLI maps this to exit code 2.
    """
