"""Run the command line with python -m lcgalois."""

from lcgalois.cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
