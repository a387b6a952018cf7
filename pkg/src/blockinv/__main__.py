"""Module entry point: python -m blockinv ..."""

from .cli import main

raise SystemExit(main())
