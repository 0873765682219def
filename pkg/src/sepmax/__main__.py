"""Allow running as `python -m sepmax`."""

from sepmax.cli import app

if __name__ == "__main__":
    app()
