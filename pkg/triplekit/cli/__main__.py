"""Allow running as: python -m triplekit.cli"""

from triplekit.cli.main import app

if __name__ == "__main__":
    app()
