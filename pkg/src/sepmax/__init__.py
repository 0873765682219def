"""sepmax: FPT approximation schemes for p-separable submodular maximization."""

__version__ = "0.1.0"

__all__ = [
    "__version__",
]
